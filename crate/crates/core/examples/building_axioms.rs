//! Axiom, gate and retraction checks on truncated buildings, plus a
//! corrupted chamber system that the checks reject.

use buildings::chamber::{Building, PairScope};
use buildings::coxeter::{CoxeterMatrix, CoxeterSystem};

fn main() -> buildings::Result<()> {
    let tree = Building::tree(3, 3, 4)?;
    let pentagon = Building::graph_product(vec![3; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 3)?;
    for (name, b) in [("tree(3,3)", &tree), ("pentagon q=3", &pentagon)] {
        let r = b.radius();
        println!(
            "{name}: {} chambers in the ball of radius {r}",
            b.ball(b.base(), r)?.len()
        );
        for (suite, report) in [
            ("axioms", b.verify_building_axioms(r, PairScope::All)?),
            ("gate", b.gate_check(r, PairScope::All)?),
            ("retraction", b.retraction_check(r, PairScope::All)?),
        ] {
            println!(
                "  {suite:<10} {} checked, {} violations",
                report.checked,
                report.violations.len()
            );
        }
    }

    // a hexagon whose 1-panels were scrambled
    let s3 = CoxeterSystem::new(CoxeterMatrix::from_fn(2, |_, _| 3)?);
    let panels = vec![
        vec![vec![0, 1], vec![2, 3], vec![4, 5]],
        vec![vec![0, 5], vec![1, 2], vec![3], vec![4]],
    ];
    let corrupt = Building::load_unverified(s3, 6, panels, 0, 3)?;
    let report = corrupt.verify_building_axioms(3, PairScope::All)?;
    println!(
        "corrupt hexagon: {} violations, first: {}",
        report.violations.len(),
        report.violations[0]
    );
    Ok(())
}
