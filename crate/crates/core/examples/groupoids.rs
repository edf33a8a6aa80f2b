//! Equivalences of finite groupoids and iso-comma groupoids.

use edgewise::groupoid::{groupoid_equivalence, iso_comma, FinGroupoid, Functor};

fn main() -> edgewise::error::Result<()> {
    let g = FinGroupoid::codiscrete(vec!["x".into(), "y".into(), "z".into()]);
    let (skeleton, inclusion) = g.skeleton();
    println!("{g:?} has {} components, skeleton {skeleton:?}", g.component_count());
    println!("skeleton inclusion is an equivalence: {:?}", groupoid_equivalence(&skeleton, &g, &inclusion));

    let id = Functor::identity(&g);
    let c = iso_comma(&g, &g, &g, &id, &id)?;
    println!("iso-comma of the identities: {:?}", c.groupoid);
    println!("first projection is an equivalence: {:?}", groupoid_equivalence(&c.groupoid, &g, &c.first_projection));
    Ok(())
}
