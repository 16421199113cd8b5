//! The transversal building of a singular direction in affine A2: a line
//! whose panels are the walls parallel to the direction.

use buildings::chamber::Building;
use buildings::coxeter::{CoxeterMatrix, CoxeterSystem};
use buildings::direction::Direction;

fn main() -> buildings::Result<()> {
    let b = Building::thin(CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3)?), 8)?;
    let d = Direction::new(&b, b.base(), &b.system().normal_form(&[0, 1, 2, 0, 1, 2])?, 3, 10)?;
    let eta = d.canonical_generators(&b)?;
    let gens: Vec<String> = eta.generators.iter().map(|t| t.to_string()).collect();
    println!(
        "canonical generators {gens:?}, matrix {:?} (0 = infinite)",
        eta.matrix()
    );

    let g = d.transversal_graph(&b, 3, 3)?;
    println!(
        "{} classes near the base, {} in the enlarged ball",
        g.vertices.len(),
        g.outer.len()
    );
    for (a, c) in &g.edges {
        println!("  {a} -- {c}");
    }
    println!("limits of rays from the base: {:?}", g.limits);
    print!("axioms: {}", d.check_transversal_building(&b, &g)?);
    Ok(())
}
