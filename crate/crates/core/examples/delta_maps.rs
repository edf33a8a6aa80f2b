//! Maps of the simplex category, their factorizations and the functor that
//! doubles an ordinal into its reverse joined with itself.

use edgewise::delta::{codegeneracy, coface, monotone_maps, SimplexMap};

fn show(f: &SimplexMap) -> String {
    format!("[{}] -> [{}] {:?}", f.dom_dim(), f.cod_dim(), f.values())
}

fn main() -> edgewise::error::Result<()> {
    let d1 = coface(1, 2)?;
    let s0 = codegeneracy(0, 1)?;
    println!("d^1 = {}", show(&d1));
    println!("s^0 = {}", show(&s0));
    println!("s^0 d^1 = {}", show(&s0.compose(&d1)?));

    let f = SimplexMap::new(vec![0, 0, 2, 3], 5)?;
    let (cofaces, codegeneracies) = f.epi_mono_factorize();
    println!("{} = cofaces {cofaces:?} after codegeneracies {codegeneracies:?}", show(&f));
    let g = SimplexMap::from_factorization(f.dom_dim(), &cofaces, &codegeneracies)?;
    assert_eq!(f, g);

    for f in monotone_maps(2, 3) {
        println!("{:<22} epsilon {}", show(&f), show(&f.epsilon()));
    }
    Ok(())
}
