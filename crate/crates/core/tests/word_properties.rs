use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use quandle_lab::catalog::catalog;
use quandle_lab::quandle::{dual, QuandleTable};
use quandle_lab::words::{compose, evaluate_with, normalize, presentation, QuandleWord, Sign, WordError};

struct Entry {
    table: QuandleTable,
    dual: QuandleTable,
}

fn entries() -> &'static [Entry] {
    static CATALOG: OnceLock<Vec<Entry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        catalog().unwrap().into_iter().map(|table| Entry { dual: dual(&table).unwrap(), table }).collect()
    })
}

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0xC0FFEE), failure_persistence: None, ..Config::default() }
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// Words over letters `0..n`, length up to 8.
fn word(n: usize) -> impl Strategy<Value = QuandleWord> {
    (0..n, prop::collection::vec((0..n, sign()), 0..8)).prop_map(|(base, tail)| QuandleWord::new(base, tail))
}

fn table_and_words() -> impl Strategy<Value = (usize, QuandleWord, QuandleWord, Sign)> {
    (0..entries().len()).prop_flat_map(|i| {
        let n = entries()[i].table.size();
        (Just(i), word(n), word(n), sign())
    })
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn compose_is_a_homomorphism((i, w1, w2, s) in table_and_words()) {
        let Entry { table, dual } = &entries()[i];
        let (a, b) = (evaluate_with(&w1, table, dual).unwrap(), evaluate_with(&w2, table, dual).unwrap());
        let expected = match s {
            Sign::Plus => table.op(a, b),
            Sign::Minus => dual.op(a, b),
        };
        prop_assert_eq!(evaluate_with(&compose(&w1, &w2, s), table, dual).unwrap(), expected);
    }

    #[test]
    fn normalize_is_idempotent_and_sound((i, w, _, _) in table_and_words()) {
        let Entry { table, dual } = &entries()[i];
        let n = normalize(&w);
        prop_assert!(n.is_canonical());
        prop_assert_eq!(&normalize(&n), &n);
        prop_assert!(n.len() <= w.len());
        prop_assert_eq!(evaluate_with(&n, table, dual).unwrap(), evaluate_with(&w, table, dual).unwrap());
    }

    #[test]
    fn display_round_trips(w in word(30)) {
        prop_assert_eq!(w.to_string().parse::<QuandleWord>().unwrap(), w);
    }
}

#[test]
fn presentations_are_bounded_and_deterministic() {
    for e in entries() {
        let n = e.table.size();
        let p = presentation(&e.table);
        assert_eq!(p.generators, n);
        assert!(p.relations.len() <= n * n.saturating_sub(1), "{}", e.table.name());
        assert_eq!(p, presentation(&e.table));
    }
}

#[test]
fn letters_beyond_the_carrier_are_rejected() {
    let e = &entries()[2];
    let w = QuandleWord::new(0, vec![(e.table.size(), Sign::Plus)]);
    assert!(matches!(evaluate_with(&w, &e.table, &e.dual), Err(WordError::LetterOutOfRange { .. })));
}
