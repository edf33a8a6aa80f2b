//! Seeded random instances through the theorem checker.

use edgewise::theorem::{fuzz_theorem, FuzzMix};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    for mix in [FuzzMix::Categories, FuzzMix::PartialMonoids, FuzzMix::Coskeletal] {
        let s = fuzz_theorem(40, seed, mix);
        println!(
            "{mix:?}: {} instances, 2-Segal {}, esd Segal {}, Segal {}, violations {}",
            s.instances,
            s.two_segal_passes,
            s.esd_segal_passes,
            s.segal_passes,
            s.violations.len()
        );
    }
}
