//! Cross-checks of the Coxeter word machinery against an independent oracle
//! built on braid moves and cancellations (Tits' solution of the word problem).

use buildings::coxeter::oracle::BraidOracle;
use buildings::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement, INFINITY};
use proptest::prelude::*;
use std::collections::{BTreeSet, HashMap};

fn sys(rank: usize, f: impl Fn(usize, usize) -> u32) -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::from_fn(rank, f).unwrap())
}

fn pentagon() -> CoxeterSystem {
    sys(5, |i, j| if j == i + 1 || (i == 0 && j == 4) { 2 } else { INFINITY })
}

fn zoo() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A2", sys(2, |_, _| 3)),
        ("Dinf", sys(2, |_, _| INFINITY)),
        (
            "B3",
            sys(3, |i, j| match (i, j) {
                (0, 1) => 4,
                (1, 2) => 3,
                _ => 2,
            }),
        ),
        (
            "H3",
            sys(3, |i, j| match (i, j) {
                (0, 1) => 5,
                (1, 2) => 3,
                _ => 2,
            }),
        ),
        ("A2~", sys(3, |_, _| 3)),
        (
            "G2~",
            sys(3, |i, j| match (i, j) {
                (0, 1) => 6,
                (1, 2) => 3,
                _ => 2,
            }),
        ),
        ("pentagon", pentagon()),
        (
            "triangle-237",
            sys(3, |i, j| match (i, j) {
                (0, 1) => 2,
                (0, 2) => 3,
                _ => 7,
            }),
        ),
    ]
}

fn el(w: &CoxeterSystem, word: &[usize]) -> GroupElement {
    w.normal_form(word).unwrap()
}

#[test]
fn balls_match_cayley_bfs() {
    for (name, w) in zoo() {
        let t = BraidOracle::new(&w);
        let ours: Vec<Vec<usize>> = w.ball(5).unwrap().iter().map(|g| g.letters()).collect();
        assert_eq!(ours, t.ball(5), "{name}");
    }
}

#[test]
fn growth_of_pentagon_group() {
    let w = pentagon();
    let ball = w.ball(6).unwrap();
    let mut counts = [0usize; 7];
    for g in &ball {
        counts[g.len()] += 1;
    }
    assert_eq!(counts, [1, 5, 15, 40, 105, 275, 720]);
}

#[test]
fn multiply_matches_oracle_on_radius_four_balls() {
    for (name, w) in zoo() {
        let t = BraidOracle::new(&w);
        let radius = if w.rank() == 5 { 3 } else { 4 };
        let ball = w.ball(radius).unwrap();
        let mut cache: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for a in &ball {
            for b in &ball {
                let mut cat = a.letters();
                cat.extend(b.letters());
                let expect = cache.entry(cat.clone()).or_insert_with(|| t.reduce(&cat)).clone();
                assert_eq!(w.multiply(a, b).unwrap().letters(), expect, "{name}: {a} * {b}");
            }
        }
    }
}

#[test]
fn spec_examples() {
    let s3 = sys(2, |_, _| 3);
    assert_eq!(el(&s3, &[0, 1, 0, 1]).letters(), vec![1, 0]);
    assert_eq!(s3.length(&el(&s3, &[0, 1, 0, 1])), 2);
    let st = el(&s3, &[0, 1]);
    assert_eq!(s3.multiply(&st, &el(&s3, &[0])).unwrap().letters(), vec![0, 1, 0]);
    let dinf = sys(2, |_, _| INFINITY);
    let sts = el(&dinf, &[0, 1, 0]);
    let n: Vec<Vec<usize>> = dinf.inversion_set(&sts).iter().map(|r| r.element().letters()).collect();
    assert_eq!(n, vec![vec![0], vec![0, 1, 0], vec![0, 1, 0, 1, 0]]);
}

#[test]
fn inversion_sets_match_definition() {
    for (name, w) in zoo() {
        let t = BraidOracle::new(&w);
        // every reflection in N(w) for ℓ(w) ≤ 4 has length ≤ 7
        let reflections: BTreeSet<Vec<usize>> = t
            .ball(3)
            .iter()
            .flat_map(|a| {
                (0..w.rank()).map(|s| {
                    let mut v = a.clone();
                    v.push(s);
                    v.extend(a.iter().rev());
                    t.reduce(&v)
                })
            })
            .collect();
        for g in w.ball(4).unwrap() {
            let expect: BTreeSet<Vec<usize>> = reflections
                .iter()
                .filter(|r| {
                    let mut v = (*r).clone();
                    v.extend(g.letters());
                    t.reduce(&v).len() < g.len()
                })
                .cloned()
                .collect();
            let ours: BTreeSet<Vec<usize>> = w.inversion_set(&g).iter().map(|r| r.element().letters()).collect();
            assert_eq!(ours, expect, "{name}: N({g})");
            assert_eq!(ours.len(), g.len());
            for r in &ours {
                assert!(w.is_reflection(&el(&w, r)));
            }
        }
    }
}

#[test]
fn conv_matches_gallery_enumeration() {
    for (name, w) in zoo() {
        let ball = w.ball(3).unwrap();
        for a in &ball {
            for b in &ball {
                let d = w.quotient_len(a, b);
                // every chamber on a minimal gallery: walk all reduced words of a⁻¹b
                let mut on_galleries = BTreeSet::new();
                let mut frontier = vec![(a.clone(), 0usize)];
                while let Some((z, k)) = frontier.pop() {
                    on_galleries.insert(z.clone());
                    for s in 0..w.rank() {
                        let zs = w.multiply(&z, &w.generator(s).unwrap()).unwrap();
                        if k + 1 + w.quotient_len(&zs, b) == d && w.quotient_len(a, &zs) == k + 1 {
                            frontier.push((zs, k + 1));
                        }
                    }
                }
                assert_eq!(w.conv(a, b).unwrap(), on_galleries, "{name}: conv({a},{b})");
            }
        }
    }
}

trait QuotientLen {
    fn quotient_len(&self, a: &GroupElement, b: &GroupElement) -> usize;
}

impl QuotientLen for CoxeterSystem {
    fn quotient_len(&self, a: &GroupElement, b: &GroupElement) -> usize {
        self.multiply(&self.inverse(a), b).unwrap().len()
    }
}

#[test]
fn straight_translation_in_affine_a2() {
    let w = sys(3, |_, _| 3);
    // Coxeter element squared
    let c2 = el(&w, &[0, 1, 2, 0, 1, 2]);
    assert_eq!(c2.len(), 6);
    assert!(w.is_straight_certificate(&c2, 4));
    let t = BraidOracle::new(&w);
    let mut word = Vec::new();
    for k in 1..=4 {
        word.extend(c2.letters());
        assert_eq!(t.reduce(&word).len(), 6 * k);
    }
}

fn word_strategy(rank: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent_and_agrees(word in word_strategy(5, 14)) {
        let w = pentagon();
        let g = el(&w, &word);
        prop_assert_eq!(el(&w, &g.letters()), g.clone());
        prop_assert_eq!(g.letters(), BraidOracle::new(&w).reduce(&word));
    }

    #[test]
    fn affine_words_agree_with_oracle(word in word_strategy(3, 10)) {
        let w = sys(3, |_, _| 3);
        prop_assert_eq!(el(&w, &word).letters(), BraidOracle::new(&w).reduce(&word));
    }

    #[test]
    fn wall_sides_match_distances(
        a in word_strategy(5, 10),
        b in word_strategy(5, 10),
        s in 0usize..5,
    ) {
        // u lies on the vs side of the wall between v and vs exactly when
        // that wall separates u from v
        let w = pentagon();
        let (u, v) = (el(&w, &a), el(&w, &b));
        let vs = w.multiply(&v, &w.generator(s).unwrap()).unwrap();
        let t = w.conjugate(&v, &w.generator(s).unwrap());
        let has = |x: &GroupElement| w.inversion_set(x).iter().any(|r| r.element() == &t);
        let ui = w.inverse(&u);
        let nearer = w.multiply(&ui, &vs).unwrap().len() < w.multiply(&ui, &v).unwrap().len();
        prop_assert_eq!(has(&u) != has(&v), nearer);
    }

    #[test]
    fn inversion_set_has_length_many(word in word_strategy(3, 20)) {
        let w = sys(3, |i, j| match (i, j) { (0, 1) => 6, (1, 2) => 3, _ => 2 });
        let g = el(&w, &word);
        let n: BTreeSet<_> = w.inversion_set(&g).into_iter().collect();
        prop_assert_eq!(n.len(), g.len());
        for t in &n {
            prop_assert!(w.multiply(t.element(), &g).unwrap().len() < g.len());
        }
    }

    #[test]
    fn wall_sides_two_colour(a in word_strategy(5, 8), b in word_strategy(5, 8), c in word_strategy(5, 8), r in word_strategy(5, 4)) {
        let w = pentagon();
        let (a, b, c) = (el(&w, &a), el(&w, &b), el(&w, &c));
        let rg = el(&w, &r);
        let t = w.reflection(&w.conjugate(&rg, &w.generator(r.first().copied().unwrap_or(0)).unwrap())).unwrap();
        let x = w.separates(&t, &a, &b) ^ w.separates(&t, &b, &c) ^ w.separates(&t, &a, &c);
        prop_assert!(!x);
        prop_assert_eq!(w.separates(&t, &a, &b), w.separates(&t, &b, &a));
        prop_assert!(!w.separates(&t, &a, &a));
    }

    #[test]
    fn conv_by_separating_walls(a in word_strategy(3, 6), b in word_strategy(3, 6)) {
        let w = sys(3, |_, _| 3);
        let (a, b) = (el(&w, &a), el(&w, &b));
        let conv = w.conv(&a, &b).unwrap();
        let conv_rev = w.conv(&b, &a).unwrap();
        prop_assert_eq!(&conv, &conv_rev);
        prop_assert!(conv.contains(&a) && conv.contains(&b));
        let g = w.multiply(&w.inverse(&a), &b).unwrap();
        // walls separating a and b are a·N(a⁻¹b)·a⁻¹
        let walls: Vec<_> = w
            .inversion_set(&g)
            .iter()
            .map(|t| w.reflection(&w.conjugate(&a, t.element())).unwrap())
            .collect();
        for z in w.ball(g.len() + a.len() + 2).unwrap() {
            let between = walls.iter().all(|t| w.separates(t, &a, &z) ^ w.separates(t, &z, &b));
            let on_gallery = w.multiply(&w.inverse(&a), &z).unwrap().len()
                + w.multiply(&w.inverse(&z), &b).unwrap().len() == g.len();
            prop_assert_eq!(on_gallery, conv.contains(&z));
            if on_gallery {
                prop_assert!(between);
            }
        }
    }
}
