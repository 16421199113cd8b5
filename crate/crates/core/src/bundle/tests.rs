use super::*;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement};

fn a2_tilde() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3).unwrap())
}

fn pentagon(r: usize) -> Building {
    Building::graph_product(vec![3; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], r).unwrap()
}

fn word(b: &Building, w: &[usize]) -> GroupElement {
    b.system().normal_form(w).unwrap()
}

fn classes(d: &Direction, b: &Building, r: usize) -> Vec<TransversalChamber> {
    let t = d.classes(b, r).unwrap();
    t.classes
        .iter()
        .enumerate()
        .map(|(id, c)| TransversalChamber {
            id,
            representative: c[0],
        })
        .collect()
}

#[test]
fn geo_matches_the_oracle() {
    let cases = [
        (Building::tree(3, 3, 8).unwrap(), vec![0, 1], 4),
        (Building::thin(a2_tilde(), 9).unwrap(), vec![0, 1, 2, 0, 1, 2], 3),
        (Building::thin(a2_tilde(), 9).unwrap(), vec![0, 1, 0, 2], 3),
        (pentagon(3), vec![0, 3], 3),
    ];
    for (b, u, r) in cases {
        let d = Direction::new(&b, b.base(), &word(&b, &u), 2, 10).unwrap();
        let cl = classes(&d, &b, 2);
        for &x in b.ball(b.base(), 1).unwrap().iter().step_by(2) {
            let g = d.geo(&b, x, &cl, r).unwrap();
            let o = d.geo_oracle(&b, x, r).unwrap();
            assert!(g.stabilized);
            assert!(o.indeterminate.is_empty());
            assert_eq!(g.chambers, o.chambers, "{u:?} at {x}");
            assert!(g.chambers.contains(&x));
        }
    }
}

#[test]
fn tree_bundles_are_rays() {
    let b = Building::tree(3, 3, 8).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1]), 2, 10).unwrap();
    let g = d.geo(&b, b.base(), &classes(&d, &b, 1), 5).unwrap();
    assert_eq!(g.chambers.len(), 6);
    let depths: BTreeSet<usize> = g.chambers.iter().map(|&c| b.distance(b.base(), c).unwrap()).collect();
    assert_eq!(depths, (0..=5).collect());
}

#[test]
fn apartment_bundle_is_the_trace_of_the_bundle() {
    let b = pentagon(4);
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 3]), 2, 10).unwrap();
    let cl = classes(&d, &b, 2);
    let x = b.ball(b.base(), 1).unwrap()[3];
    let chart = d.bundle_chart(&b, x, 3).unwrap();
    let ga = d.geo_apartment(&b, x, &chart, 3).unwrap();
    let g = d.geo(&b, x, &cl, 3).unwrap();
    let trace: BTreeSet<ChamberId> = g.chambers.iter().copied().filter(|&c| chart.contains(c)).collect();
    assert_eq!(ga, trace);
}

#[test]
fn apartment_bundles_are_monotone() {
    let b = Building::thin(a2_tilde(), 9).unwrap();
    for u in [vec![0, 1, 2, 0, 1, 2], vec![0, 1, 0, 2]] {
        let d = Direction::new(&b, b.base(), &word(&b, &u), 2, 10).unwrap();
        let x = b.base();
        let chart = d.bundle_chart(&b, x, 4).unwrap();
        let ga = d.geo_apartment(&b, x, &chart, 4).unwrap();
        for &y in ga.iter().filter(|&&y| b.distance(x, y).unwrap() <= 2) {
            let m = d.monotone_check(&b, x, y, &chart, 4).unwrap();
            assert!(m.missing.is_empty(), "{u:?} {y}");
            assert!(m.checked > 0);
        }
    }
}

#[test]
fn retracted_witnesses_stay_in_the_apartment_bundle() {
    let b = pentagon(4);
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 3]), 2, 10).unwrap();
    let x = b.base();
    let chart = d.bundle_chart(&b, x, 3).unwrap();
    let ga = d.geo_apartment(&b, x, &chart, 3).unwrap();
    for y in d.geo_oracle(&b, x, 3).unwrap().chambers {
        assert!(ga.contains(&chart.retraction(&b, x, y).unwrap()), "{y}");
    }
}

#[test]
fn symmetric_differences_settle() {
    let b = Building::tree(3, 3, 9).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1]), 2, 10).unwrap();
    let cl = classes(&d, &b, 2);
    let (x, y) = (b.base(), b.neighbours(b.base()).unwrap()[0].1);
    let p = d.sym_diff_profile(&b, x, y, &cl, &[1, 2, 3, 4]).unwrap();
    assert!(p.settled());
    let last = p.rows.last().unwrap();
    assert!(last.only_x.len() + last.only_y.len() <= 1);

    let b = pentagon(4);
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 3]), 2, 10).unwrap();
    let cl = classes(&d, &b, 2);
    let y = b.neighbours(b.base()).unwrap()[1].1;
    let p = d.sym_diff_profile(&b, b.base(), y, &cl, &[1, 2, 3, 4]).unwrap();
    assert!(p.settled(), "{p:?}");
}

#[test]
fn hyperbolic_gate() {
    assert!(hyperbolicity_gate(&pentagon(1)).unwrap());
    assert!(hyperbolicity_gate(&Building::tree(3, 3, 1).unwrap()).unwrap());
    assert!(!hyperbolicity_gate(&Building::thin(a2_tilde(), 1).unwrap()).unwrap());
}
