//! 2-Segal against Segal-after-subdivision, on a positive and a negative
//! example.

use edgewise::generate::{random_coskeletal_sset, CoskeletalSpec};
use edgewise::monoid::{bar, truncated_free_monoid};
use edgewise::theorem::theorem_verify;

fn main() -> edgewise::error::Result<()> {
    let x = bar(&truncated_free_monoid(1), 7)?;
    let cosk = random_coskeletal_sset(&CoskeletalSpec::new(2, 2, 5), 2)?;
    for (name, x) in [("B(truncated free monoid)", x), ("coskeleton", cosk)] {
        let r = theorem_verify(&x, name)?;
        println!("{name}");
        println!("  2-Segal {} / esd Segal {} / Segal {}", r.two_segal.summary.verdict, r.esd_segal.summary.verdict, r.segal.summary.verdict);
        for m in &r.matched {
            println!("  beta^{}_{} of esd: {}   gamma^{}_{{{},{}}}: {}", m.m, m.j, m.segal_of_esd, 2 * m.m + 1, m.m - m.j, m.m + m.j + 1, m.two_segal);
        }
        for e in r.retracts.iter().filter(|e| !e.reversed) {
            println!("  retract (n, k) = ({}, {}): holds {}", e.n, e.k, e.holds());
        }
        println!("  violations: {}", r.violations.len());
    }
    Ok(())
}
