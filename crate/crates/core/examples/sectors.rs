//! Combinatorial sectors in the Coxeter complex of affine A2, compared with
//! the brute-force characterisation by rays.

use buildings::chamber::Building;
use buildings::coxeter::{CoxeterMatrix, CoxeterSystem};
use buildings::direction::Direction;

fn main() -> buildings::Result<()> {
    let b = Building::thin(CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3)?), 6)?;
    let d = Direction::new(&b, b.base(), &b.system().normal_form(&[0, 1, 2, 0, 1, 2])?, 3, 10)?;
    let classes = d.classes(&b, 2)?.transversal_chambers();
    let x = b.base();
    for xi in &classes {
        let q = d.sector(&b, x, xi, 3)?;
        let oracle = d.sector_oracle(&b, x, xi, 3)?;
        println!(
            "class {} (via {}): {} chambers, stabilized {}, oracle agrees {}",
            xi.id,
            xi.representative,
            q.chambers.len(),
            q.stabilized,
            q.chambers == oracle.chambers
        );
    }
    let min = d.sector_min(&b, x, &classes, 3)?;
    println!(
        "minimal sector at {x}: {} chambers, identity failures {}",
        min.slice.chambers.len(),
        min.identity_failures.len()
    );
    Ok(())
}
