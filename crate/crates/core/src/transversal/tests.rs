use super::*;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem};

fn a2_tilde() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3).unwrap())
}

fn pentagon(r: usize) -> Building {
    Building::graph_product(vec![3; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], r).unwrap()
}

fn word(b: &Building, w: &[usize]) -> GroupElement {
    b.system().normal_form(w).unwrap()
}

fn degrees(g: &TransversalGraph) -> Vec<usize> {
    g.vertices
        .iter()
        .map(|v| g.edges.iter().filter(|&&(a, c)| a == v.id || c == v.id).count())
        .collect()
}

#[test]
fn a2_singular_transversal_is_a_line() {
    let b = Building::thin(a2_tilde(), 8).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1, 2, 0, 1, 2]), 3, 10).unwrap();
    let eta = d.canonical_generators(&b).unwrap();
    assert_eq!(eta.rank(), 2);
    assert_eq!(eta.matrix(), vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(eta.flagged, vec![(0, 1)]);
    let g = d.transversal_graph(&b, 3, 3).unwrap();
    assert_eq!(g.vertices.len(), 4);
    // A thin line: every class has at most two neighbours.
    assert!(degrees(&g).iter().all(|&k| k <= 2));
    assert_eq!(g.edges.len(), g.outer.len() - 1);
    let report = d.check_transversal_building(&b, &g).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.checked > 0);
}

#[test]
fn a2_generic_transversal_is_a_point() {
    let b = Building::thin(a2_tilde(), 8).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1, 0, 2]), 2, 10).unwrap();
    let g = d.transversal_graph(&b, 3, 1).unwrap();
    assert_eq!(g.eta.rank(), 0);
    assert_eq!(g.vertices.len(), 1);
    assert!(g.edges.is_empty());
    assert_eq!(g.limits, BTreeSet::from([0]));
    assert!(d.check_transversal_building(&b, &g).unwrap().passed());
}

#[test]
fn pentagon_transversal_is_a_tree_of_one_wall() {
    let b = pentagon(4);
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 3]), 3, 10).unwrap();
    let g = d.transversal_graph(&b, 2, 1).unwrap();
    assert_eq!(g.eta.rank(), 1);
    assert_eq!(g.eta.generators[0].element().letters(), vec![4]);
    assert_eq!(g.vertices.len(), 3);
    // One panel of a thickness-3 wall: the three classes are pairwise adjacent.
    let inner: BTreeSet<usize> = g.vertices.iter().map(|v| v.id).collect();
    let k = g
        .edges
        .iter()
        .filter(|(a, c)| inner.contains(a) && inner.contains(c))
        .count();
    assert_eq!(k, 3);
    let report = d.check_transversal_building(&b, &g).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn tree_transversal_has_one_class() {
    let b = Building::tree(3, 3, 6).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1]), 3, 8).unwrap();
    let g = d.transversal_graph(&b, 3, 1).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert_eq!(g.limits.len(), 1);
    assert!(d.check_transversal_building(&b, &g).unwrap().passed());
}

#[test]
fn delta_eta_is_a_reflection_count() {
    // In a thin building δη has length the number of walls through the
    // direction separating the two classes.
    let b = Building::thin(a2_tilde(), 8).unwrap();
    let d = Direction::new(&b, b.base(), &word(&b, &[0, 1, 2, 0, 1, 2]), 3, 10).unwrap();
    let g = d.transversal_graph(&b, 3, 0).unwrap();
    let walls: Vec<Reflection> = d
        .walls_eta(&b)
        .unwrap()
        .walls
        .into_iter()
        .map(|w| w.reflection)
        .collect();
    let w = b.system();
    for xi in &g.vertices {
        for zeta in &g.vertices {
            let got = d.weyl_distance_eta(&b, &g.eta, xi, zeta).unwrap();
            let a = b.delta(b.base(), xi.representative).unwrap();
            let c = b.delta(b.base(), zeta.representative).unwrap();
            let sep = walls.iter().filter(|r| w.separates(r, &a, &c)).count();
            assert_eq!(got.len(), sep);
        }
    }
}
