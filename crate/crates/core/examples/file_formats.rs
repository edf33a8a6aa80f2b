//! Saving and loading every file format, and the canonical form.

use edgewise::category::{nerve, FinCategory};
use edgewise::io;
use edgewise::monoid::truncated_free_monoid;
use edgewise::sgpd::s_construction;

fn main() -> edgewise::error::Result<()> {
    let dir = std::env::temp_dir().join(format!("edgewise-formats-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let c = FinCategory::chain(1);
    let texts = [
        ("chain.json", io::category_to_string(&c)),
        ("nerve.json", io::sset_to_string(&nerve(&c, 2))),
        ("monoid.json", io::monoid_to_string(&truncated_free_monoid(2))),
        ("s.json", io::sgpd_to_string(&s_construction(2, 1)?)),
    ];
    for (name, text) in &texts {
        let path = dir.join(name);
        io::write_atomic(&path, text)?;
        let doc = io::document_from_str(&io::read_text(&path)?)?;
        let again = match &doc {
            io::Document::SSet(x) => io::sset_to_string(x),
            io::Document::Category(c) => io::category_to_string(c),
            io::Document::Groupoid(g) => io::groupoid_to_string(g),
            io::Document::Monoid(m) => io::monoid_to_string(m),
            io::Document::SGpd(y) => io::sgpd_to_string(y),
        };
        println!("{name}: {}, {} bytes, round trip exact: {}", doc.kind(), text.len(), &again == text);
    }
    println!("{}", texts[2].1);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
