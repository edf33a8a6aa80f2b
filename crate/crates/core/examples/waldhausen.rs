//! The S-construction of finite pointed sets as a simplicial groupoid.

use edgewise::segal::Mode;
use edgewise::sgpd::{s_construction, sgpd_segal_check, sgpd_two_segal_check};

fn main() -> edgewise::error::Result<()> {
    for card in 1..=3 {
        let s = s_construction(card, 3)?;
        println!("c = {card}: components per level {:?}", s.component_counts());
        let two = sgpd_two_segal_check(&s, Mode::Full, "S");
        let seg = sgpd_segal_check(&s, "S");
        let sd = sgpd_segal_check(&s.esd()?, "esd S");
        println!("  2-Segal {}, Segal {}, esd Segal {}", two.summary.verdict, seg.summary.verdict, sd.summary.verdict);
        let first = seg.failures().next();
        if let Some(e) = first {
            println!("  Segal fails at {:?}: {}", e.indices, e.witness.as_ref().unwrap());
        }
    }
    Ok(())
}
