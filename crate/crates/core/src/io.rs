//! JSON file formats for simplicial sets, categories, partial monoids,
//! groupoids and simplicial groupoids.
//!
//! Every format has one canonical serialized form: maps are written with
//! sorted keys, arrays keep their order, output is pretty-printed with a
//! trailing newline. Loading and saving a canonical file reproduces it byte
//! for byte.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::category::{FinCategory, Morphism};
use crate::error::{Error, Result};
use crate::groupoid::FinGroupoid;
use crate::monoid::PartialMonoid;
use crate::sgpd::TruncatedSGpd;
use crate::sset::{SetMap, TruncatedSSet};

type CellMap = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetFile {
    pub truncation: usize,
    pub levels: Vec<Vec<String>>,
    /// `"n,i"` to the table of `d_i` on level `n`.
    pub face: BTreeMap<String, CellMap>,
    /// `"n,i"` to the table of `s_i` on level `n`.
    pub degeneracy: BTreeMap<String, CellMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identity: BTreeMap<String, String>,
    /// `"g,f"` to `g ∘ f`.
    pub compose: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identity: BTreeMap<String, String>,
    pub compose: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub unit: String,
    /// `"a,b"` to `a·b`; absent pairs are undefined.
    pub product: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorEntry {
    pub objects: CellMap,
    pub morphisms: CellMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SGpdFile {
    pub truncation: usize,
    pub levels: Vec<GroupoidFile>,
    pub face: BTreeMap<String, FunctorEntry>,
    pub degeneracy: BTreeMap<String, FunctorEntry>,
}

fn key(n: usize, i: usize) -> String {
    format!("{n},{i}")
}

fn table_to_map(names_from: &[String], names_to: &[String], f: &SetMap) -> CellMap {
    f.values().iter().enumerate().map(|(c, &v)| (names_from[c].clone(), names_to[v].clone())).collect()
}

fn map_to_table(
    map: Option<&CellMap>,
    from: &[String],
    to_index: &HashMap<&str, usize>,
    what: &str,
) -> Result<SetMap> {
    let map = map.ok_or_else(|| Error::Malformed(format!("missing table {what}")))?;
    if map.len() != from.len() {
        return Err(Error::Malformed(format!("table {what} has {} entries, expected {}", map.len(), from.len())));
    }
    let values = from
        .iter()
        .map(|c| {
            let image = map.get(c).ok_or_else(|| Error::Malformed(format!("table {what} misses cell {c}")))?;
            to_index
                .get(image.as_str())
                .copied()
                .ok_or_else(|| Error::Malformed(format!("table {what} sends {c} to unknown cell {image}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SetMap::new(values, to_index.len())
}

fn check_keys<V>(map: &BTreeMap<String, V>, expected: &[String], what: &str) -> Result<()> {
    if let Some(extra) = map.keys().find(|k| !expected.contains(k)) {
        return Err(Error::Malformed(format!("unexpected {what} key {extra}")));
    }
    Ok(())
}

fn index_of(names: &[String]) -> HashMap<&str, usize> {
    names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}

impl SSetFile {
    pub fn from_sset(x: &TruncatedSSet) -> Self {
        let mut face = BTreeMap::new();
        let mut degeneracy = BTreeMap::new();
        for n in 1..=x.truncation() {
            for i in 0..=n {
                face.insert(key(n, i), table_to_map(x.cells(n), x.cells(n - 1), x.face(n, i)));
            }
        }
        for n in 0..x.truncation() {
            for i in 0..=n {
                degeneracy.insert(key(n, i), table_to_map(x.cells(n), x.cells(n + 1), x.degeneracy(n, i)));
            }
        }
        Self { truncation: x.truncation(), levels: x.levels().to_vec(), face, degeneracy }
    }

    pub fn to_sset(&self) -> Result<TruncatedSSet> {
        if self.levels.len() != self.truncation + 1 {
            return Err(Error::Malformed(format!(
                "truncation {} needs {} levels, found {}",
                self.truncation,
                self.truncation + 1,
                self.levels.len()
            )));
        }
        let top = self.truncation;
        let index: Vec<HashMap<&str, usize>> = self.levels.iter().map(|l| index_of(l)).collect();
        let face_keys: Vec<String> = (1..=top).flat_map(|n| (0..=n).map(move |i| key(n, i))).collect();
        let degen_keys: Vec<String> = (0..top).flat_map(|n| (0..=n).map(move |i| key(n, i))).collect();
        check_keys(&self.face, &face_keys, "face")?;
        check_keys(&self.degeneracy, &degen_keys, "degeneracy")?;
        let mut face = vec![Vec::new()];
        for n in 1..=top {
            face.push(
                (0..=n)
                    .map(|i| map_to_table(self.face.get(&key(n, i)), &self.levels[n], &index[n - 1], &format!("d_{i} at level {n}")))
                    .collect::<Result<_>>()?,
            );
        }
        let degeneracy = (0..top)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        map_to_table(self.degeneracy.get(&key(n, i)), &self.levels[n], &index[n + 1], &format!("s_{i} at level {n}"))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        TruncatedSSet::from_tables(self.levels.clone(), face, degeneracy)
    }
}

fn reject_commas<'a>(names: impl IntoIterator<Item = &'a String>, what: &str) -> Result<()> {
    for n in names {
        if n.contains(',') {
            return Err(Error::Malformed(format!("{what} name {n:?} contains a comma")));
        }
    }
    Ok(())
}

fn category_parts(c: &FinCategory) -> (Vec<MorphismEntry>, BTreeMap<String, String>, BTreeMap<String, String>) {
    let name = |f: usize| c.morphisms()[f].name.clone();
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| MorphismEntry { id: m.name.clone(), src: c.objects()[m.src].clone(), tgt: c.objects()[m.tgt].clone() })
        .collect();
    let identity = c.objects().iter().enumerate().map(|(o, n)| (n.clone(), name(c.identity(o)))).collect();
    let compose = c.composition_table().iter().map(|(&(g, f), &h)| (format!("{},{}", name(g), name(f)), name(h))).collect();
    (morphisms, identity, compose)
}

fn build_category(
    objects: &[String],
    morphisms: &[MorphismEntry],
    identity: &BTreeMap<String, String>,
    compose: &BTreeMap<String, String>,
) -> Result<FinCategory> {
    reject_commas(morphisms.iter().map(|m| &m.id), "morphism")?;
    let obj = index_of(objects);
    let ids: Vec<String> = morphisms.iter().map(|m| m.id.clone()).collect();
    let mor = index_of(&ids);
    if obj.len() != objects.len() || mor.len() != ids.len() {
        return Err(Error::Malformed("object and morphism names must be unique".into()));
    }
    let find = |table: &HashMap<&str, usize>, s: &str, what: &str| {
        table.get(s).copied().ok_or_else(|| Error::Malformed(format!("unknown {what} {s}")))
    };
    let ms = morphisms
        .iter()
        .map(|m| Ok(Morphism { name: m.id.clone(), src: find(&obj, &m.src, "object")?, tgt: find(&obj, &m.tgt, "object")? }))
        .collect::<Result<Vec<_>>>()?;
    check_keys(identity, objects, "identity")?;
    let id = objects
        .iter()
        .map(|o| find(&mor, identity.get(o).ok_or_else(|| Error::Malformed(format!("no identity for {o}")))?, "morphism"))
        .collect::<Result<Vec<_>>>()?;
    let mut table = HashMap::new();
    for (k, h) in compose {
        let (g, f) = k.split_once(',').ok_or_else(|| Error::Malformed(format!("compose key {k} is not \"g,f\"")))?;
        table.insert((find(&mor, g, "morphism")?, find(&mor, f, "morphism")?), find(&mor, h, "morphism")?);
    }
    FinCategory::new(objects.to_vec(), ms, id, table)
}

impl CategoryFile {
    pub fn from_category(c: &FinCategory) -> Self {
        let (morphisms, identity, compose) = category_parts(c);
        Self { objects: c.objects().to_vec(), morphisms, identity, compose }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        build_category(&self.objects, &self.morphisms, &self.identity, &self.compose)
    }
}

impl GroupoidFile {
    pub fn from_groupoid(g: &FinGroupoid) -> Self {
        let (morphisms, identity, compose) = category_parts(g);
        let name = |f: usize| g.morphisms()[f].name.clone();
        let inverse = (0..g.morphism_count()).map(|f| (name(f), name(g.inverse(f)))).collect();
        Self { objects: g.objects().to_vec(), morphisms, identity, compose, inverse }
    }

    pub fn to_groupoid(&self) -> Result<FinGroupoid> {
        let c = build_category(&self.objects, &self.morphisms, &self.identity, &self.compose)?;
        let ids: Vec<String> = self.morphisms.iter().map(|m| m.id.clone()).collect();
        check_keys(&self.inverse, &ids, "inverse")?;
        let mor = index_of(&ids);
        let inverse = ids
            .iter()
            .map(|f| {
                let inv = self.inverse.get(f).ok_or_else(|| Error::Malformed(format!("no inverse for {f}")))?;
                mor.get(inv.as_str()).copied().ok_or_else(|| Error::Malformed(format!("unknown morphism {inv}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FinGroupoid::new(c, inverse)
    }
}

impl MonoidFile {
    pub fn from_monoid(m: &PartialMonoid) -> Self {
        let product =
            m.defined_pairs().into_iter().map(|(a, b, c)| (format!("{},{}", m.element(a), m.element(b)), m.element(c).to_string())).collect();
        Self { elements: m.elements().to_vec(), unit: m.element(m.unit()).to_string(), product }
    }

    pub fn to_monoid(&self) -> Result<PartialMonoid> {
        reject_commas(&self.elements, "element")?;
        let idx = index_of(&self.elements);
        if idx.len() != self.elements.len() {
            return Err(Error::Malformed("element names must be unique".into()));
        }
        let find = |s: &str| idx.get(s).copied().ok_or_else(|| Error::Malformed(format!("unknown element {s}")));
        let products = self
            .product
            .iter()
            .map(|(k, c)| {
                let (a, b) = k.split_once(',').ok_or_else(|| Error::Malformed(format!("product key {k} is not \"a,b\"")))?;
                Ok((find(a)?, find(b)?, find(c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PartialMonoid::new(self.elements.clone(), find(&self.unit)?, &products)
    }
}

impl SGpdFile {
    pub fn from_sgpd(y: &TruncatedSGpd) -> Self {
        let (ob, mor) = (y.objects(), y.morphisms());
        let entry = |n: usize, m: usize, f: &SetMap, g: &SetMap| FunctorEntry {
            objects: table_to_map(ob.cells(n), ob.cells(m), f),
            morphisms: table_to_map(mor.cells(n), mor.cells(m), g),
        };
        let mut face = BTreeMap::new();
        let mut degeneracy = BTreeMap::new();
        for n in 1..=y.truncation() {
            for i in 0..=n {
                face.insert(key(n, i), entry(n, n - 1, ob.face(n, i), mor.face(n, i)));
            }
        }
        for n in 0..y.truncation() {
            for i in 0..=n {
                degeneracy.insert(key(n, i), entry(n, n + 1, ob.degeneracy(n, i), mor.degeneracy(n, i)));
            }
        }
        Self {
            truncation: y.truncation(),
            levels: y.levels().iter().map(GroupoidFile::from_groupoid).collect(),
            face,
            degeneracy,
        }
    }

    pub fn to_sgpd(&self) -> Result<TruncatedSGpd> {
        let levels = self.levels.iter().map(GroupoidFile::to_groupoid).collect::<Result<Vec<_>>>()?;
        let split = |pick: fn(&FunctorEntry) -> &CellMap, names: fn(&GroupoidFile) -> Vec<String>| SSetFile {
            truncation: self.truncation,
            levels: self.levels.iter().map(names).collect(),
            face: self.face.iter().map(|(k, v)| (k.clone(), pick(v).clone())).collect(),
            degeneracy: self.degeneracy.iter().map(|(k, v)| (k.clone(), pick(v).clone())).collect(),
        };
        let ob = split(|e| &e.objects, |g| g.objects.clone()).to_sset()?;
        let mor = split(|e| &e.morphisms, |g| g.morphisms.iter().map(|m| m.id.clone()).collect()).to_sset()?;
        TruncatedSGpd::new(levels, ob, mor)
    }
}

/// Canonical text of any format.
pub fn to_canonical<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn sset_to_string(x: &TruncatedSSet) -> String {
    to_canonical(&SSetFile::from_sset(x)).expect("serializable")
}

pub fn sset_from_str(text: &str) -> Result<TruncatedSSet> {
    from_text::<SSetFile>(text)?.to_sset()
}

pub fn category_to_string(c: &FinCategory) -> String {
    to_canonical(&CategoryFile::from_category(c)).expect("serializable")
}

pub fn category_from_str(text: &str) -> Result<FinCategory> {
    from_text::<CategoryFile>(text)?.to_category()
}

pub fn monoid_to_string(m: &PartialMonoid) -> String {
    to_canonical(&MonoidFile::from_monoid(m)).expect("serializable")
}

pub fn monoid_from_str(text: &str) -> Result<PartialMonoid> {
    from_text::<MonoidFile>(text)?.to_monoid()
}

pub fn groupoid_to_string(g: &FinGroupoid) -> String {
    to_canonical(&GroupoidFile::from_groupoid(g)).expect("serializable")
}

pub fn groupoid_from_str(text: &str) -> Result<FinGroupoid> {
    from_text::<GroupoidFile>(text)?.to_groupoid()
}

pub fn sgpd_to_string(y: &TruncatedSGpd) -> String {
    to_canonical(&SGpdFile::from_sgpd(y)).expect("serializable")
}

pub fn sgpd_from_str(text: &str) -> Result<TruncatedSGpd> {
    from_text::<SGpdFile>(text)?.to_sgpd()
}

/// A loaded file of any supported format.
#[derive(Clone, Debug)]
pub enum Document {
    SSet(TruncatedSSet),
    Category(FinCategory),
    Groupoid(FinGroupoid),
    Monoid(PartialMonoid),
    SGpd(TruncatedSGpd),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SSet(_) => "simplicial set",
            Document::Category(_) => "category",
            Document::Groupoid(_) => "groupoid",
            Document::Monoid(_) => "partial monoid",
            Document::SGpd(_) => "simplicial groupoid",
        }
    }
}

/// Detect the format from its top-level fields and load it.
pub fn document_from_str(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
    if obj.contains_key("elements") {
        return Ok(Document::Monoid(monoid_from_str(text)?));
    }
    if obj.contains_key("levels") {
        let nested = obj["levels"].as_array().and_then(|l| l.first()).is_some_and(|l| l.is_object());
        return if nested { Ok(Document::SGpd(sgpd_from_str(text)?)) } else { Ok(Document::SSet(sset_from_str(text)?)) };
    }
    if obj.contains_key("inverse") {
        return Ok(Document::Groupoid(groupoid_from_str(text)?));
    }
    if obj.contains_key("objects") {
        return Ok(Document::Category(category_from_str(text)?));
    }
    Err(Error::Malformed("unrecognized file format".into()))
}

pub fn read_text(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

/// Write `contents` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path.file_name().ok_or_else(|| Error::Malformed(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::nerve;
    use crate::monoid::truncated_free_monoid;
    use crate::sgpd::s_construction;
    use crate::sset::standard_simplex;

    #[test]
    fn sset_round_trip() {
        let x = standard_simplex(2, 3);
        let text = sset_to_string(&x);
        let y = sset_from_str(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(sset_to_string(&y), text);
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn unknown_fields_and_missing_entries_are_rejected() {
        let x = standard_simplex(1, 1);
        let mut v: serde_json::Value = serde_json::from_str(&sset_to_string(&x)).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(sset_from_str(&v.to_string()).is_err());
        let mut w: serde_json::Value = serde_json::from_str(&sset_to_string(&x)).unwrap();
        w["face"]["1,0"].as_object_mut().unwrap().remove("01");
        assert!(matches!(sset_from_str(&w.to_string()), Err(Error::Malformed(_))));
    }

    #[test]
    fn category_and_monoid_round_trip() {
        let c = crate::category::FinCategory::chain(2);
        let text = category_to_string(&c);
        assert_eq!(category_from_str(&text).unwrap(), c);
        let m = truncated_free_monoid(2);
        let text = monoid_to_string(&m);
        assert_eq!(monoid_from_str(&text).unwrap(), m);
        assert_eq!(monoid_to_string(&monoid_from_str(&text).unwrap()), text);
    }

    #[test]
    fn commas_are_rejected() {
        let text = r#"{"elements": ["e", "a,b"], "unit": "e", "product": {}}"#;
        assert!(monoid_from_str(text).is_err());
    }

    #[test]
    fn sgpd_round_trip() {
        let y = s_construction(3, 2).unwrap();
        let text = sgpd_to_string(&y);
        let z = sgpd_from_str(&text).unwrap();
        assert_eq!(z, y);
        assert_eq!(sgpd_to_string(&z), text);
    }

    #[test]
    fn documents_are_detected() {
        let x = nerve(&crate::category::FinCategory::chain(1), 2);
        assert!(matches!(document_from_str(&sset_to_string(&x)).unwrap(), Document::SSet(_)));
        let g = crate::groupoid::FinGroupoid::codiscrete(vec!["x".into(), "y".into()]);
        assert!(matches!(document_from_str(&groupoid_to_string(&g)).unwrap(), Document::Groupoid(_)));
        assert!(matches!(
            document_from_str(&sgpd_to_string(&s_construction(2, 1).unwrap())).unwrap(),
            Document::SGpd(_)
        ));
    }
}
