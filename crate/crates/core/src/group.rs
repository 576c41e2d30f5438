//! Small finite groups stored as multiplication tables.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::table_io::{self, ParseError};

/// Largest `n` accepted by [`GroupSpec::Symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupLaw {
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLaw::Identity => "identity",
            GroupLaw::Inverse => "inverse",
            GroupLaw::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("group table {path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("table is not a group: {law} law fails at {witness:?}")]
    LawViolation { law: GroupLaw, witness: Vec<usize> },
    #[error("unrecognized group spec `{0}`")]
    BadSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    DihedralGroup(usize),
    Symmetric(usize),
    FromTable(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::DihedralGroup(n) => write!(f, "dihedral-group:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::FromTable(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `cyclic:N`, `dihedral-group:N` (alias `dih:N`), `symmetric:N`
    /// (alias `sym:N`), or `file:PATH`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| GroupError::BadSpec(s.to_string()))?;
        let num = || arg.parse::<usize>().map_err(|_| GroupError::BadSpec(s.to_string()));
        match kind {
            "cyclic" | "cyc" => Ok(GroupSpec::Cyclic(num()?)),
            "dihedral-group" | "dih" => Ok(GroupSpec::DihedralGroup(num()?)),
            "symmetric" | "sym" => Ok(GroupSpec::Symmetric(num()?)),
            "file" => Ok(GroupSpec::FromTable(PathBuf::from(arg))),
            _ => Err(GroupError::BadSpec(s.to_string())),
        }
    }
}

/// A finite group on `0..size`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    size: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    name: String,
}

impl GroupTable {
    /// Checks the identity, inverse and associativity laws and derives inverses.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(GroupError::InvalidParameter("table must be square and non-empty".into()));
        }
        if let Some((x, y)) = (0..size).cartesian_product(0..size).find(|&(x, y)| rows[x][y] >= size) {
            return Err(GroupError::InvalidParameter(format!("entry at ({x}, {y}) out of range")));
        }
        if identity >= size {
            return Err(GroupError::InvalidParameter(format!("identity {identity} out of range")));
        }
        let mul: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |x: usize, y: usize| mul[x * size + y];

        if let Some(x) = (0..size).find(|&x| at(identity, x) != x || at(x, identity) != x) {
            return Err(GroupError::LawViolation { law: GroupLaw::Identity, witness: vec![x] });
        }
        let mut inv = Vec::with_capacity(size);
        for x in 0..size {
            match (0..size).find(|&y| at(x, y) == identity && at(y, x) == identity) {
                Some(y) => inv.push(y),
                None => return Err(GroupError::LawViolation { law: GroupLaw::Inverse, witness: vec![x] }),
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = at(x, y);
                for z in 0..size {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(GroupError::LawViolation { law: GroupLaw::Associativity, witness: vec![x, y, z] });
                    }
                }
            }
        }
        Ok(Self { size, mul, identity, inv, name: name.into() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `y⁻¹ x y`.
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&z| (0..self.size).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn to_text(&self) -> String {
        table_io::serialize(self.size, &self.mul, Some(self.identity))
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, GroupError> {
        let parsed = table_io::parse(text, true).map_err(|source| GroupError::Parse { path: name.to_string(), source })?;
        Self::from_rows(name, parsed.rows, parsed.identity.expect("identity header is required"))
    }

    pub fn from_file(path: &Path) -> Result<Self, GroupError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| GroupError::Io { path: display.clone(), source })?;
        Self::parse(&display, &text)
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<GroupTable, GroupError> {
    match *spec {
        GroupSpec::Cyclic(n) => {
            if n == 0 {
                return Err(GroupError::InvalidParameter("cyclic group needs n >= 1".into()));
            }
            let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
            GroupTable::from_rows(format!("C{n}"), rows, 0)
        }
        GroupSpec::DihedralGroup(n) => {
            if n == 0 {
                return Err(GroupError::InvalidParameter("dihedral group needs n >= 1".into()));
            }
            // element r^k s^e is stored at k + n*e
            let decode = |x: usize| (x % n, x / n);
            let rows = (0..2 * n)
                .map(|x| {
                    (0..2 * n)
                        .map(|y| {
                            let (a, e) = decode(x);
                            let (b, f) = decode(y);
                            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                            k + n * ((e + f) % 2)
                        })
                        .collect()
                })
                .collect();
            GroupTable::from_rows(format!("D{n}"), rows, 0)
        }
        GroupSpec::Symmetric(n) => {
            if n == 0 || n > MAX_SYMMETRIC_DEGREE {
                return Err(GroupError::InvalidParameter(format!(
                    "symmetric group degree must be in 1..={MAX_SYMMETRIC_DEGREE}"
                )));
            }
            let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
            let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
            // (στ)(i) = σ(τ(i))
            let rows = perms
                .iter()
                .map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>())).collect())
                .collect();
            GroupTable::from_rows(format!("S{n}"), rows, 0)
        }
        GroupSpec::FromTable(ref path) => GroupTable::from_file(path),
    }
}

/// Orbits of the conjugation action, each sorted, ordered by least element.
pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.size()];
    let mut classes = Vec::new();
    for x in 0..g.size() {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..g.size()).map(|y| g.conjugate(x, y)).sorted().dedup().collect();
        class.sort_unstable();
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(classes: &[Vec<usize>]) -> Vec<usize> {
        classes.iter().map(Vec::len).sorted().collect()
    }

    #[test]
    fn cyclic_three() {
        let g = build_group(&GroupSpec::Cyclic(3)).unwrap();
        assert_eq!(g.identity(), 0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mul(i, j), (i + j) % 3);
            }
        }
    }

    #[test]
    fn symmetric_three_lex_order() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.size(), 6);
        // index 1 is the transposition (1 2) in image-tuple order [0, 2, 1]
        assert_eq!(g.mul(1, 1), 0);
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_four_center() {
        let g = build_group(&GroupSpec::DihedralGroup(4)).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.center().len(), 2);
    }

    #[test]
    fn class_sizes() {
        let s3 = build_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(sizes(&conjugacy_classes(&s3)), vec![1, 2, 3]);
        let c5 = build_group(&GroupSpec::Cyclic(5)).unwrap();
        assert_eq!(sizes(&conjugacy_classes(&c5)), vec![1; 5]);
        let d4 = build_group(&GroupSpec::DihedralGroup(4)).unwrap();
        assert_eq!(sizes(&conjugacy_classes(&d4)), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn classes_partition_elements() {
        let s4 = build_group(&GroupSpec::Symmetric(4)).unwrap();
        let mut all: Vec<usize> = conjugacy_classes(&s4).concat();
        all.sort_unstable();
        assert_eq!(all, (0..24).collect::<Vec<_>>());
    }

    #[test]
    fn symmetric_cap() {
        assert!(build_group(&GroupSpec::Symmetric(6)).is_err());
        assert_eq!(build_group(&GroupSpec::Symmetric(5)).unwrap().size(), 120);
    }

    #[test]
    fn law_violations_are_named() {
        let err = GroupTable::from_rows("bad", vec![vec![0, 1], vec![1, 1]], 0).unwrap_err();
        assert!(matches!(err, GroupError::LawViolation { law: GroupLaw::Inverse, .. }));
        let err = GroupTable::from_rows("bad", vec![vec![1, 0], vec![0, 1]], 0).unwrap_err();
        assert!(matches!(err, GroupError::LawViolation { law: GroupLaw::Identity, .. }));
        // unital, every element self-inverse, not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_rows("loop", rows, 0).unwrap_err();
        assert!(matches!(err, GroupError::LawViolation { law: GroupLaw::Associativity, .. }));
    }

    #[test]
    fn file_round_trip() {
        let g = build_group(&GroupSpec::DihedralGroup(3)).unwrap();
        let text = g.to_text();
        let back = GroupTable::parse("d3", &text).unwrap();
        assert_eq!(back.rows(), g.rows());
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn negative_powers() {
        let g = build_group(&GroupSpec::Cyclic(7)).unwrap();
        assert_eq!(g.pow(3, -1), 4);
        assert_eq!(g.pow(3, 0), 0);
        assert_eq!(g.pow(3, 5), 1);
    }

    #[test]
    fn spec_strings() {
        assert_eq!("sym:3".parse::<GroupSpec>().unwrap(), GroupSpec::Symmetric(3));
        assert_eq!("dihedral-group:4".parse::<GroupSpec>().unwrap(), GroupSpec::DihedralGroup(4));
        assert!("foo:3".parse::<GroupSpec>().is_err());
    }
}
