//! Geodesic ray bundles in a tree and how the bundles from two chambers
//! differ inside growing balls.

use buildings::bundle::hyperbolicity_gate;
use buildings::chamber::Building;
use buildings::direction::Direction;

fn main() -> buildings::Result<()> {
    let b = Building::tree(3, 3, 6)?;
    let d = Direction::new(&b, b.base(), &b.system().normal_form(&[0, 1])?, 2, 10)?;
    println!("hyperbolic: {}", hyperbolicity_gate(&b)?);
    let classes = d.classes(&b, 3)?.transversal_chambers();

    let x = b.base();
    let geo = d.geo(&b, x, &classes, 4)?;
    let oracle = d.geo_oracle(&b, x, 4)?;
    println!(
        "Geo({x}) within 4: {} chambers, oracle agrees {}",
        geo.chambers.len(),
        geo.chambers == oracle.chambers
    );

    for y in b.ball(x, 2)?.into_iter().filter(|&y| y != x) {
        let p = d.sym_diff_profile(&b, x, y, &classes, &[2, 4, 6])?;
        let sizes: Vec<(usize, usize, usize)> = p
            .rows
            .iter()
            .map(|r| (r.radius, r.only_x.len(), r.only_y.len()))
            .collect();
        println!("  y = {y}: (R, |x\\y|, |y\\x|) = {sizes:?}, settled {}", p.settled());
    }
    Ok(())
}
