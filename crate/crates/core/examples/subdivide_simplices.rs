//! Cell counts of the edgewise subdivision of the standard simplices, and
//! the drawing of the subdivided triangle.

use edgewise::diagram::esd_simplex_dot;
use edgewise::sset::standard_simplex;

fn main() -> edgewise::error::Result<()> {
    println!("k  vertices  nondegenerate cells by level");
    for k in 1..=4 {
        let sd = standard_simplex(k, 2 * k + 1).esd()?;
        let counts = (0..=k)
            .map(|n| sd.nondegenerate_cells(n).map(|c| c.len()))
            .collect::<Result<Vec<_>, _>>()?;
        println!("{k}  {:<8}  {counts:?}", sd.level_size(0));
    }
    print!("{}", esd_simplex_dot(2)?);
    Ok(())
}
