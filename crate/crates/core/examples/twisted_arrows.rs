//! The subdivision of a nerve is the nerve of the twisted arrow category.

use edgewise::category::{canonical_tw_iso, twisted_arrow, FinCategory};
use edgewise::iso::iso_check;
use edgewise::monoid::{delooping, PartialMonoid};

fn main() -> edgewise::error::Result<()> {
    let cases = [
        ("[1]", FinCategory::chain(1)),
        ("[2]", FinCategory::chain(2)),
        ("B(Z/2)", delooping(&PartialMonoid::cyclic(2))?),
        ("[1] x [1]", FinCategory::product(&FinCategory::chain(1), &FinCategory::chain(1))),
    ];
    for (name, a) in cases {
        let tw = twisted_arrow(&a)?;
        println!("Tw({name}): {} objects, {} morphisms", tw.object_count(), tw.morphism_count());
        let f = canonical_tw_iso(&a, 3)?;
        let verdict = iso_check(&f);
        println!("  esd N({name}) -> N Tw({name}) levels {:?}: iso {}", f.source.level_sizes(), verdict.is_iso());
    }
    let tw1 = twisted_arrow(&FinCategory::chain(1))?;
    for m in tw1.morphisms() {
        println!("  {}: {} -> {}", m.name, tw1.objects()[m.src], tw1.objects()[m.tgt]);
    }
    Ok(())
}
