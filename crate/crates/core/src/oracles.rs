//! Slow, definition-level reference computations used to cross-check the fast paths.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::quandle::QuandleTable;
use crate::words::presentation;

/// Least `k` such that every `y` is `x * z_1 * ... * z_k` for every `x`, by
/// iterating reachable sets; `None` when no such `k <= n` exists.
pub fn connectivity_degree_by_definition(t: &QuandleTable) -> Option<usize> {
    let n = t.size();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| y == x).collect()).collect();
    for k in 1..=n {
        for set in reach.iter_mut() {
            let mut next = vec![false; n];
            for v in (0..n).filter(|&v| set[v]) {
                for z in 0..n {
                    next[t.op(v, z)] = true;
                }
            }
            *set = next;
        }
        if reach.iter().all(|set| set.iter().all(|&b| b)) {
            return Some(k);
        }
    }
    None
}

/// Least `m >= 1` with `iterate(t, m)` trivial, by repeated right multiplication.
pub fn type_by_iteration(t: &QuandleTable, limit: u64) -> Option<u64> {
    let n = t.size();
    let mut current: Vec<usize> = (0..n * n).map(|i| i / n).collect();
    for m in 1..=limit {
        for x in 0..n {
            for y in 0..n {
                current[x * n + y] = t.op(current[x * n + y], y);
            }
        }
        if (0..n * n).all(|i| current[i] == i / n) {
            return Some(m);
        }
    }
    None
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c].clone() / pivot.clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= factor.clone() * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Free rank of the abelianized associated group, from its relation matrix:
/// each relation contributes the exponent-sum row of `e_lhs - rhs`.
pub fn abelianization_rank_by_relations(t: &QuandleTable) -> usize {
    let n = t.size();
    let rows: Vec<Vec<BigRational>> = presentation(t)
        .relations
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            row[r.lhs] += 1;
            for &(g, e) in r.rhs.syllables() {
                row[g] -= e;
            }
            row.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect()
        })
        .collect();
    if rows.is_empty() {
        return n;
    }
    n - rational_rank(rows)
}

/// Exhaustive isomorphism search over all bijections.
pub fn isomorphism_by_brute_force(a: &QuandleTable, b: &QuandleTable) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    (0..n)
        .permutations(n)
        .find(|phi| (0..n).all(|x| (0..n).all(|y| phi[a.op(x, y)] == b.op(phi[x], phi[y]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{build, QuandleSpec};
    use num_traits::One;

    fn one() -> BigRational {
        BigRational::one()
    }

    fn q(spec: &str) -> QuandleTable {
        build(&spec.parse::<QuandleSpec>().unwrap()).unwrap()
    }

    #[test]
    fn reference_degrees() {
        assert_eq!(connectivity_degree_by_definition(&q("dihedral:5")), Some(1));
        assert_eq!(connectivity_degree_by_definition(&q("trivial:1")), Some(1));
        assert_eq!(connectivity_degree_by_definition(&q("dihedral:4")), None);
    }

    #[test]
    fn reference_types() {
        assert_eq!(type_by_iteration(&q("dihedral:7"), 100), Some(2));
        assert_eq!(type_by_iteration(&q("conj:symmetric:3"), 100), Some(6));
        assert_eq!(type_by_iteration(&q("trivial:3"), 100), Some(1));
    }

    #[test]
    fn reference_ranks() {
        assert_eq!(abelianization_rank_by_relations(&q("trivial:3")), 3);
        assert_eq!(abelianization_rank_by_relations(&q("dihedral:3")), 1);
        assert_eq!(abelianization_rank_by_relations(&q("dihedral:6")), 2);
        assert_eq!(abelianization_rank_by_relations(&q("trivial:1")), 1);
        assert_eq!(rational_rank(vec![vec![one(), one()], vec![one(), one()]]), 1);
    }

    #[test]
    fn reference_isomorphisms() {
        assert!(isomorphism_by_brute_force(&q("dihedral:4"), &q("core:cyclic:4")).is_some());
        assert!(isomorphism_by_brute_force(&q("dihedral:3"), &q("trivial:3")).is_none());
    }
}
