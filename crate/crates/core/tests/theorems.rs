//! Small-scale sweeps of the equivalence theorems; the full-size versions
//! live in the acceptance target.

use rootcast::constructive::{abc_grid, check_lemma_conditions, find_rooting_witness, star_plus_line, LeafFn, Monoid};
use rootcast::potential::{
    combined_strict_check, is_subtree_monotone_on, is_symmetric_on, registered_potential, symmetry_verdict,
};
use rootcast::rootfind::naive_root;
use rootcast::verify::{check_consistency, check_monotonic, check_rooting, cstar_no_potential_demo, replay, Quantifier};
use rootcast::*;

fn m(s: &str) -> MeasureId {
    s.parse().unwrap()
}

fn trees(n_max: usize) -> impl Iterator<Item = Tree> {
    (2..=n_max).flat_map(|n| enumerate_trees(n).unwrap())
}

#[test]
fn registered_pairs_are_equivalent() {
    for name in ["degree", "closeness", "eccentricity", "all-subgraphs", "betweenness", "decay:alpha=0.5", "ecc-minus-closeness"] {
        let report = sweep(PropertyId::PotentialEquivalence, &m(name), &SweepConfig::exhaustive(6)).unwrap();
        assert!(report.pass, "{name}: {report:?}");
    }
}

#[test]
fn literal_height_minus_size_is_not_the_potential() {
    let p: PotentialId = "height-minus-inv-size".parse().unwrap();
    let broken = trees(6).any(|t| !potential::check_potential_equivalence(&m("ecc-minus-closeness"), &p, &t).unwrap());
    assert!(broken);
}

#[test]
fn symmetry_tracks_rooting() {
    for name in ["degree", "closeness", "eccentricity", "all-subgraphs", "betweenness", "decay:alpha=0.5"] {
        let measure = m(name);
        let p = registered_potential(&measure).unwrap();
        let roots = trees(7).all(|t| check_rooting(&measure, &t).unwrap());
        let symmetric = trees(7).all(|t| is_symmetric_on(&p, &t).unwrap());
        assert_eq!(roots, symmetric, "{name}");
    }
}

#[test]
fn degree_potential_is_asymmetric_on_the_four_vertex_path() {
    let v = symmetry_verdict(&PotentialId::Degree, &Tree::line(4)).unwrap();
    assert!(!v.holds);
}

#[test]
fn consistency_and_monotonicity() {
    for name in ["closeness", "eccentricity", "all-subgraphs"] {
        for t in trees(6) {
            assert!(check_consistency(&m(name), &t).unwrap(), "{name}");
            assert!(check_monotonic(&m(name), &t).unwrap(), "{name}");
        }
    }
    let emc = m("ecc-minus-closeness");
    let report = sweep(PropertyId::Consistency, &emc, &SweepConfig::exhaustive(6)).unwrap();
    assert!(!report.pass);
    assert!(report.counterexample.as_ref().unwrap().n <= 6);
    assert!(replay(&report).unwrap());
    let tree = edgelist::parse(&report.counterexample.unwrap().edges).unwrap();
    assert!(!check_monotonic(&emc, &tree).unwrap());
}

#[test]
fn exists_quantifier_is_weaker() {
    let emc = m("ecc-minus-closeness");
    let all = SweepConfig::exhaustive(6);
    let some = SweepConfig { quantifier: Quantifier::Exists, ..all.clone() };
    let strict = sweep(PropertyId::Consistency, &emc, &all).unwrap();
    let loose = sweep(PropertyId::Consistency, &emc, &some).unwrap();
    assert!(loose.pass || loose.counterexample.as_ref().unwrap().index >= strict.counterexample.as_ref().unwrap().index);
}

#[test]
fn subtree_monotone_potentials() {
    for name in ["closeness", "eccentricity", "all-subgraphs"] {
        let p: PotentialId = name.parse().unwrap();
        assert!(trees(6).all(|t| is_subtree_monotone_on(&p, &t).unwrap()), "{name}");
        assert!(trees(6).all(|t| combined_strict_check(&p, &t).unwrap()), "{name}");
    }
    let h = PotentialId::HeightInvSize;
    assert!(trees(7).all(|t| is_symmetric_on(&h, &t).unwrap()));
    assert!(!trees(6).all(|t| is_subtree_monotone_on(&h, &t).unwrap()));
}

#[test]
fn cstar_roots_without_a_potential() {
    let report = cstar_no_potential_demo(&SweepConfig::exhaustive(7)).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(report.detail.unwrap().contains("holds"));
}

#[test]
fn abc_lemma_and_sweeps() {
    let q = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
    let grid = abc_grid(&[q(1, 2), q(1, 1), q(2, 1), q(4, 1)]);
    assert!(!grid.is_empty());
    for spec in &grid {
        assert!(spec.satisfies_lemma());
        assert!(check_lemma_conditions(spec, 200, 1).unwrap().all_hold(), "{spec}");
    }
    for spec in grid.iter().step_by(5) {
        let measure = MeasureId::Potential(Box::new(spec.clone()));
        assert!(sweep(PropertyId::Rooting, &measure, &SweepConfig::exhaustive(5)).unwrap().pass);
        assert!(sweep(PropertyId::Consistency, &measure, &SweepConfig::exhaustive(5)).unwrap().pass);
    }
}

#[test]
fn lemma_checker_reports_witnesses() {
    let bad = ConstructiveSpec::new("shrinking", Monoid::Sum, LeafFn::Const(num_rational::BigRational::from_integer(0.into()))).unwrap();
    let report = check_lemma_conditions(&bad, 50, 2).unwrap();
    assert!(!report.all_hold());
    assert!(report.conditions.iter().any(|c| !c.holds() && c.witness.is_some()));
}

#[test]
fn infinitely_many_rootings_witness() {
    let q = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
    let specs = abc_grid(&[q(1, 2), q(1, 1), q(2, 1), q(4, 1)]);
    let w = find_rooting_witness(&specs, 1..=12, 1..=12).unwrap().expect("witness");
    assert_eq!(w.tree, star_plus_line(w.star_leaves, w.line_len));
    let star_side = |r: &[usize]| r.iter().all(|&x| x <= w.star_leaves);
    assert_ne!(star_side(&w.first_roots), star_side(&w.second_roots));
    for (spec, roots) in [(&w.first, &w.first_roots), (&w.second, &w.second_roots)] {
        assert_eq!(&naive_root(&w.tree, NaiveTarget::Spec(spec)).unwrap().roots, roots);
    }
}

#[test]
fn degree_spec_is_refused_by_algorithm1() {
    let err = find_root(&Tree::line(4), &builtin_spec("degree").unwrap()).unwrap_err();
    assert!(matches!(err, Error::NotSymmetric));
}
