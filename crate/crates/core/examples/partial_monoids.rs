//! Bar constructions of partial monoids: 2-Segal, usually not Segal, and
//! subdivided into the nerve of the span category.

use edgewise::iso::iso_check;
use edgewise::monoid::{bar, canonical_partial_iso, span_category, truncated_free_monoid, validate_partial_monoid};
use edgewise::segal::{segal_check, two_segal_check, Mode};

fn main() -> edgewise::error::Result<()> {
    let m = truncated_free_monoid(1);
    assert!(validate_partial_monoid(&m).is_empty());
    let x = bar(&m, 7)?;
    println!("B({:?}) level sizes {:?}", m.elements(), x.level_sizes());

    let segal = segal_check(&x, "B(M)");
    for e in segal.failures().take(3) {
        println!("Segal fails at {:?}: {}", e.indices, e.witness.as_ref().unwrap());
    }
    println!("Segal: {} of {} fail", segal.summary.failed, segal.summary.checked);
    println!("2-Segal: {}", two_segal_check(&x, Mode::Full, "B(M)").summary.verdict);

    let spans = span_category(&m)?;
    for f in spans.morphisms() {
        println!("  span {}: {} -> {}", f.name, spans.objects()[f.src], spans.objects()[f.tgt]);
    }
    let iso = canonical_partial_iso(&m, 3)?;
    println!("esd B(M) = N C(M) through level 3: {}", iso_check(&iso).is_iso());

    let broken = m.with_undefined(0, 1);
    for v in validate_partial_monoid(&broken) {
        println!("mutant: {v}");
    }
    Ok(())
}
