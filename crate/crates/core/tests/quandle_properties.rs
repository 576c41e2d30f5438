use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use quandle_lab::analysis::{connectivity_degree, find_isomorphism, is_homomorphism, is_latin, orbits, type_of, LatinMode};
use quandle_lab::catalog::catalog;
use quandle_lab::group::{build_group, conjugacy_classes, GroupSpec};
use quandle_lab::oracles::{abelianization_rank_by_relations, connectivity_degree_by_definition, type_by_iteration};
use quandle_lab::quandle::{build, dual, iterate, translations, validate, QuandleSpec, QuandleTable};

fn tables() -> &'static [QuandleTable] {
    static CATALOG: OnceLock<Vec<QuandleTable>> = OnceLock::new();
    CATALOG.get_or_init(|| catalog().unwrap())
}

fn small_tables() -> Vec<usize> {
    (0..tables().len()).filter(|&i| tables()[i].size() <= 12).collect()
}

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0xC0FFEE), failure_persistence: None, ..Config::default() }
}

/// A catalog index with a random permutation of its carrier.
fn relabeling() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..tables().len()).prop_flat_map(|i| (Just(i), Just((0..tables()[i].size()).collect::<Vec<_>>()).prop_shuffle()))
}

fn relabel(t: &QuandleTable, sigma: &[usize]) -> QuandleTable {
    let mut rows = vec![vec![0; t.size()]; t.size()];
    for x in 0..t.size() {
        for y in 0..t.size() {
            rows[sigma[x]][sigma[y]] = sigma[t.op(x, y)];
        }
    }
    QuandleTable::from_rows("relabeled", rows).unwrap()
}

#[test]
fn catalog_tables_satisfy_the_axioms() {
    for t in tables() {
        let report = validate(t);
        assert!(report.is_quandle() && report.exhaustive, "{}: {report}", t.name());
    }
}

#[test]
fn large_tables_are_checked_on_samples() {
    let t = build(&QuandleSpec::Dihedral(101)).unwrap();
    let report = validate(&t);
    assert!(report.is_quandle());
    assert!(!report.exhaustive);
}

#[test]
fn dual_is_an_involution() {
    for t in tables() {
        assert!(dual(&dual(t).unwrap()).unwrap().same_table(t), "{}", t.name());
    }
}

#[test]
fn right_translations_fix_their_element() {
    for t in tables() {
        let d = dual(t).unwrap();
        for y in 0..t.size() {
            assert_eq!(translations(t, y).unwrap().0.apply(y), y);
            assert_eq!(d.op(y, y), y);
        }
    }
}

#[test]
fn latin_for_one_element_means_latin_for_all() {
    for t in tables() {
        let per_x: Vec<bool> = (0..t.size())
            .map(|x| {
                let mut seen = vec![false; t.size()];
                (0..t.size()).all(|y| !std::mem::replace(&mut seen[t.op(x, y)], true))
            })
            .collect();
        assert!(per_x.iter().all(|&b| b == per_x[0]), "{}", t.name());
        assert_eq!(per_x[0], is_latin(t, LatinMode::Oracle));
    }
}

#[test]
fn type_matches_iteration_oracle() {
    for t in tables() {
        assert_eq!(Some(type_of(t).unwrap()), type_by_iteration(t, 1_000), "{}", t.name());
    }
}

#[test]
fn connectivity_degree_matches_definition() {
    for t in tables().iter().filter(|t| t.size() <= 12) {
        let report = connectivity_degree(t).unwrap();
        assert_eq!(report.degree, connectivity_degree_by_definition(t), "{}", t.name());
        assert_eq!(report.connected, report.degree.is_some());
    }
}

#[test]
fn abelianization_rank_matches_relations() {
    for t in tables() {
        assert_eq!(orbits(t).unwrap().abelianization_rank, abelianization_rank_by_relations(t), "{}", t.name());
    }
}

#[test]
fn conjugacy_classes_are_inner_orbits() {
    let groups = (1..=12)
        .map(GroupSpec::Cyclic)
        .chain((1..=6).map(GroupSpec::DihedralGroup))
        .chain((1..=5).map(GroupSpec::Symmetric));
    for spec in groups {
        let g = build_group(&spec).unwrap();
        let conj = build(&QuandleSpec::Conj { group: spec.clone(), exponent: 1 }).unwrap();
        assert_eq!(conjugacy_classes(&g), orbits(&conj).unwrap().blocks, "{spec}");
        for y in 0..g.size() {
            for x in 0..g.size() {
                assert_eq!(conj.op(x, y), g.mul(g.mul(g.inv(y), x), y));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn iterates_add(idx in 0..tables().len(), a in 1usize..5, b in 1usize..5, x in 0usize..24, y in 0usize..24) {
        let t = &tables()[idx];
        let (x, y) = (x % t.size(), y % t.size());
        let ta = iterate(t, a).unwrap();
        let tb = iterate(t, b).unwrap();
        prop_assert_eq!(iterate(t, a + b).unwrap().op(x, y), tb.op(ta.op(x, y), y));
    }

    #[test]
    fn relabeled_copies_are_isomorphic((idx, sigma) in relabeling()) {
        let t = &tables()[idx];
        let copy = relabel(t, &sigma);
        let r = find_isomorphism(t, &copy, 1_000_000).unwrap();
        prop_assert!(r.found);
        prop_assert!(is_homomorphism(t, &copy, r.mapping.as_ref().unwrap()));
    }

    #[test]
    fn isomorphism_search_is_symmetric(i in prop::sample::select(small_tables()), j in prop::sample::select(small_tables())) {
        let (a, b) = (&tables()[i], &tables()[j]);
        let ab = find_isomorphism(a, b, 1_000_000).unwrap();
        let ba = find_isomorphism(b, a, 1_000_000).unwrap();
        prop_assert_eq!(ab.found, ba.found, "{} vs {}", a.name(), b.name());
    }
}
