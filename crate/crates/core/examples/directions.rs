//! Boundary directions given by a period, their axes and the classes of
//! parallel rays they cut out of a ball.

use buildings::chamber::Building;
use buildings::coxeter::{CoxeterMatrix, CoxeterSystem};
use buildings::direction::Direction;

fn main() -> buildings::Result<()> {
    let tree = Building::tree(3, 3, 5)?;
    let end = Direction::new(&tree, tree.base(), &tree.system().normal_form(&[0, 1])?, 2, 10)?;
    let a2 = Building::thin(CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3)?), 5)?;
    let singular = Direction::new(&a2, a2.base(), &a2.system().normal_form(&[0, 1, 2, 0, 1, 2])?, 3, 10)?;
    let generic = Direction::new(&a2, a2.base(), &a2.system().normal_form(&[0, 1, 0, 2])?, 2, 10)?;

    for (name, b, d) in [
        ("tree end", &tree, &end),
        ("A2 singular", &a2, &singular),
        ("A2 generic", &a2, &generic),
    ] {
        let axis = d.axis(b)?;
        let head: Vec<String> = (0..4)
            .map(|k| axis.chamber(b, k).map(|c| c.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{name}: period {}, axis {} ...", d.period(), head.join(" "));
        for r in 1..=3 {
            let t = d.classes(b, r)?;
            println!(
                "  radius {r}: {} chambers in {} classes",
                t.chambers.len(),
                t.classes.len()
            );
        }
    }
    Ok(())
}
