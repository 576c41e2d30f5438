//! Finite quandles as dense operation tables.
//!
//! Elements are the indices `0..n`; row `x`, column `y` of the table holds
//! `x * y`. A [`QuandleTable`] only guarantees that it is square with
//! in-range entries. Whether it actually satisfies the quandle axioms is
//! reported by [`validate`].

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::{build_group, GroupError, GroupSpec};
use crate::table_io::{self, ParseError};

/// Tables up to this size get an exhaustive distributivity check.
pub const EXHAUSTIVE_LIMIT: usize = 64;
/// Number of seeded random triples checked above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLED_TRIPLES: usize = 100_000;
/// Cap on witnesses reported per axiom.
pub const MAX_WITNESSES: usize = 16;
const SAMPLING_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Error)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    Structural(String),
    #[error("quandle table {path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("table `{name}` is not a quandle: {report}")]
    NotAQuandle { name: String, report: AxiomReport },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unrecognized quandle spec `{0}`")]
    BadSpec(String),
}

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, QuandleError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(QuandleError::Structural(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Self { image: inv }
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { image: self.image.iter().map(|&x| other.image[x]).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let step = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(self.len()), |acc, _| acc.then(&step))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fixed_points(&self) -> usize {
        self.image.iter().enumerate().filter(|&(i, &v)| i == v).count()
    }

    /// Disjoint cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Operation table of a finite binary structure on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuandleTable {
    size: usize,
    op: Vec<usize>,
    name: String,
}

impl QuandleTable {
    /// Structural checks only: square, non-empty, entries in range.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let size = rows.len();
        if size == 0 {
            return Err(QuandleError::Structural("table is empty".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(QuandleError::Structural(format!("row {x} has {} entries, expected {size}", row.len())));
            }
            if let Some(y) = row.iter().position(|&v| v >= size) {
                return Err(QuandleError::Structural(format!("entry ({x}, {y}) = {} out of range", row[y])));
            }
        }
        Ok(Self { size, op: rows.into_iter().flatten().collect(), name: name.into() })
    }

    pub fn from_fn(name: impl Into<String>, size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        Self::from_rows(name, (0..size).map(|x| (0..size).map(|y| f(x, y)).collect()).collect())
    }

    pub fn trivial(size: usize) -> Self {
        assert!(size > 0, "trivial quandle needs at least one element");
        Self { size, op: (0..size).flat_map(|x| std::iter::repeat_n(x, size)).collect(), name: format!("T{size}") }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.op[x * self.size..(x + 1) * self.size]
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.size).map(|x| self.op(x, y)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, x: usize, y: usize, value: usize) -> Result<Self, QuandleError> {
        if x >= self.size || y >= self.size || value >= self.size {
            return Err(QuandleError::Structural(format!("({x}, {y}) <- {value} out of range")));
        }
        let mut out = self.clone();
        out.op[x * self.size + y] = value;
        Ok(out)
    }

    /// Same numeric content, ignoring names.
    pub fn same_table(&self, other: &Self) -> bool {
        self.size == other.size && self.op == other.op
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| self.row(x).iter().all(|&v| v == x))
    }

    /// Right translation `R_y` as a permutation, if column `y` is bijective.
    pub fn right_translation(&self, y: usize) -> Result<Permutation, QuandleError> {
        Permutation::new(self.column(y))
    }

    pub fn to_text(&self) -> String {
        table_io::serialize(self.size, &self.op, None)
    }

    /// Parses the table file format; does not check the axioms.
    pub fn parse(name: &str, text: &str) -> Result<Self, QuandleError> {
        let parsed = table_io::parse(text, false).map_err(|source| QuandleError::Parse { path: name.to_string(), source })?;
        Self::from_rows(name, parsed.rows)
    }

    pub fn from_file(path: &Path) -> Result<Self, QuandleError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| QuandleError::Io { path: display.clone(), source })?;
        Self::parse(&display, &text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuandleSpec {
    Trivial(usize),
    Dihedral(usize),
    Conj { group: GroupSpec, exponent: i64 },
    Core(GroupSpec),
    FromTable(PathBuf),
}

impl fmt::Display for QuandleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuandleSpec::Trivial(n) => write!(f, "trivial:{n}"),
            QuandleSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            QuandleSpec::Conj { group, exponent: 1 } => write!(f, "conj:{group}"),
            QuandleSpec::Conj { group, exponent } => write!(f, "conj:{group}@{exponent}"),
            QuandleSpec::Core(group) => write!(f, "core:{group}"),
            QuandleSpec::FromTable(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for QuandleSpec {
    type Err = QuandleError;

    /// `trivial:N`, `dihedral:N`, `conj:GROUP[@M]`, `core:GROUP`, `file:PATH`,
    /// where `GROUP` uses the [`GroupSpec`] syntax, e.g. `conj:symmetric:3@-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuandleError::BadSpec(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "trivial" => Ok(QuandleSpec::Trivial(arg.parse().map_err(|_| bad())?)),
            "dihedral" => Ok(QuandleSpec::Dihedral(arg.parse().map_err(|_| bad())?)),
            "conj" => {
                let (group, exponent) = match arg.rsplit_once('@') {
                    Some((g, e)) => (g, e.parse().map_err(|_| bad())?),
                    None => (arg, 1),
                };
                Ok(QuandleSpec::Conj { group: group.parse()?, exponent })
            }
            "core" => Ok(QuandleSpec::Core(arg.parse()?)),
            "file" => Ok(QuandleSpec::FromTable(PathBuf::from(arg))),
            _ => Err(bad()),
        }
    }
}

/// Builds the table for `spec` and rejects it unless all three axioms hold.
pub fn build(spec: &QuandleSpec) -> Result<QuandleTable, QuandleError> {
    let table = match spec {
        QuandleSpec::Trivial(n) => {
            if *n == 0 {
                return Err(QuandleError::InvalidParameter("trivial quandle needs n >= 1".into()));
            }
            QuandleTable::trivial(*n)
        }
        QuandleSpec::Dihedral(n) => {
            let n = *n;
            if n == 0 {
                return Err(QuandleError::InvalidParameter("dihedral quandle needs n >= 1".into()));
            }
            QuandleTable::from_fn(format!("R{n}"), n, |i, j| (2 * j + n - i) % n)?
        }
        QuandleSpec::Conj { group, exponent } => {
            let g = build_group(group)?;
            let m = *exponent;
            let name = if m == 1 { format!("Conj({})", g.name()) } else { format!("Conj_{m}({})", g.name()) };
            let powers: Vec<(usize, usize)> = (0..g.size()).map(|y| (g.pow(y, -m), g.pow(y, m))).collect();
            QuandleTable::from_fn(name, g.size(), |x, y| {
                let (neg, pos) = powers[y];
                g.mul(g.mul(neg, x), pos)
            })?
        }
        QuandleSpec::Core(group) => {
            let g = build_group(group)?;
            QuandleTable::from_fn(format!("Core({})", g.name()), g.size(), |x, y| g.mul(g.mul(y, g.inv(x)), y))?
        }
        QuandleSpec::FromTable(path) => QuandleTable::from_file(path)?,
    };
    let report = validate(&table);
    if !report.is_quandle() {
        return Err(QuandleError::NotAQuandle { name: table.name().to_string(), report });
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum AxiomViolation {
    /// `x * x != x`.
    Idempotency { x: usize },
    /// Column `y` is not a bijection: `x1 * y == x2 * y`.
    RightInvertibility { y: usize, x1: usize, x2: usize },
    /// `(x * y) * z != (x * z) * (y * z)`.
    Distributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Idempotency { x } => write!(f, "Q1 fails at x={x}"),
            AxiomViolation::RightInvertibility { y, x1, x2 } => {
                write!(f, "Q2 fails in column {y}: {x1}*{y} = {x2}*{y}")
            }
            AxiomViolation::Distributivity { x, y, z } => write!(f, "Q3 fails at ({x}, {y}, {z})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    /// False when distributivity was checked on sampled triples only.
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn is_quandle(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("all axioms hold");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks Q1, then Q2, then Q3, collecting up to [`MAX_WITNESSES`] witnesses per axiom.
pub fn validate(t: &QuandleTable) -> AxiomReport {
    let n = t.size();
    let mut violations = Vec::new();

    violations.extend((0..n).filter(|&x| t.op(x, x) != x).take(MAX_WITNESSES).map(|x| AxiomViolation::Idempotency { x }));

    let mut q2 = 0;
    'columns: for y in 0..n {
        let mut preimage = vec![usize::MAX; n];
        for x in 0..n {
            let v = t.op(x, y);
            if preimage[v] != usize::MAX {
                violations.push(AxiomViolation::RightInvertibility { y, x1: preimage[v], x2: x });
                q2 += 1;
                if q2 == MAX_WITNESSES {
                    break 'columns;
                }
                continue 'columns;
            }
            preimage[v] = x;
        }
    }

    let mut q3 = 0;
    let mut check = |x: usize, y: usize, z: usize, out: &mut Vec<AxiomViolation>| {
        if t.op(t.op(x, y), z) != t.op(t.op(x, z), t.op(y, z)) {
            out.push(AxiomViolation::Distributivity { x, y, z });
            q3 += 1;
        }
        q3 < MAX_WITNESSES
    };
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    if exhaustive {
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !check(x, y, z, &mut violations) {
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !check(x, y, z, &mut violations) {
                break;
            }
        }
    }
    AxiomReport { violations, exhaustive }
}

fn require_columns(t: &QuandleTable) -> Result<Vec<Permutation>, QuandleError> {
    (0..t.size())
        .map(|y| {
            t.right_translation(y).map_err(|_| {
                let mut report = validate(t);
                report.violations.retain(|v| matches!(v, AxiomViolation::RightInvertibility { .. }));
                QuandleError::NotAQuandle { name: t.name().to_string(), report }
            })
        })
        .collect()
}

/// The dual operation: `dual(t).op(x, y) = z` where `t.op(z, y) = x`.
pub fn dual(t: &QuandleTable) -> Result<QuandleTable, QuandleError> {
    let inverse_columns: Vec<Permutation> = require_columns(t)?.iter().map(Permutation::inverse).collect();
    QuandleTable::from_fn(format!("dual({})", t.name()), t.size(), |x, y| inverse_columns[y].apply(x))
}

/// `(Q, *_n)`: `x *_n y = R_y^n(x)`, by `n` successive column applications.
pub fn iterate(t: &QuandleTable, n: usize) -> Result<QuandleTable, QuandleError> {
    if n == 0 {
        return Err(QuandleError::InvalidParameter("iteration count must be >= 1".into()));
    }
    let name = if n == 1 { t.name().to_string() } else { format!("Q_{n}({})", t.name()) };
    QuandleTable::from_fn(name, t.size(), |x, y| (0..n).fold(x, |acc, _| t.op(acc, y)))
}

/// Right translation `R_y` and left translation `L_y` (as a plain map).
pub fn translations(t: &QuandleTable, y: usize) -> Result<(Permutation, Vec<usize>), QuandleError> {
    if y >= t.size() {
        return Err(QuandleError::InvalidParameter(format!("element {y} out of range")));
    }
    Ok((t.right_translation(y)?, t.row(y).to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> QuandleTable {
        build(&QuandleSpec::Dihedral(n)).unwrap()
    }

    fn conj_s3() -> QuandleTable {
        build(&QuandleSpec::Conj { group: GroupSpec::Symmetric(3), exponent: 1 }).unwrap()
    }

    #[test]
    fn dihedral_three_first_row() {
        assert_eq!(dihedral(3).row(0), &[0, 2, 1]);
    }

    #[test]
    fn trivial_rows_constant() {
        let t = build(&QuandleSpec::Trivial(4)).unwrap();
        for x in 0..4 {
            assert!(t.row(x).iter().all(|&v| v == x));
        }
    }

    #[test]
    fn core_of_cyclic_is_dihedral() {
        let core = build(&QuandleSpec::Core(GroupSpec::Cyclic(4))).unwrap();
        assert!(core.same_table(&dihedral(4)));
    }

    #[test]
    fn validate_reports() {
        assert!(validate(&dihedral(3)).is_quandle());

        let broken = QuandleTable::trivial(2).with_entry(0, 0, 1).unwrap();
        let report = validate(&broken);
        assert!(report.violations.contains(&AxiomViolation::Idempotency { x: 0 }));

        let broken = dihedral(3).with_entry(0, 1, 0).unwrap();
        let report = validate(&broken);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::RightInvertibility { y: 1, .. })));
    }

    #[test]
    fn out_of_range_is_structural() {
        assert!(matches!(
            QuandleTable::from_rows("bad", vec![vec![0, 2], vec![1, 1]]),
            Err(QuandleError::Structural(_))
        ));
        assert!(dihedral(3).with_entry(0, 0, 3).is_err());
    }

    #[test]
    fn witness_cap() {
        // constant-zero table breaks every axiom many times over
        let t = QuandleTable::from_fn("zero", 20, |_, _| 0).unwrap();
        let report = validate(&t);
        let count = |f: fn(&AxiomViolation) -> bool| report.violations.iter().filter(|v| f(v)).count();
        assert_eq!(count(|v| matches!(v, AxiomViolation::Idempotency { .. })), MAX_WITNESSES);
        assert_eq!(count(|v| matches!(v, AxiomViolation::RightInvertibility { .. })), MAX_WITNESSES);
    }

    #[test]
    fn dual_examples() {
        let r5 = dihedral(5);
        assert!(dual(&r5).unwrap().same_table(&r5));
        let t3 = QuandleTable::trivial(3);
        assert!(dual(&t3).unwrap().same_table(&t3));

        let c = conj_s3();
        let d = dual(&c).unwrap();
        for y in 0..6 {
            let col = c.right_translation(y).unwrap();
            assert_eq!(d.column(y), col.inverse().image());
            for x in 0..6 {
                assert_eq!(d.op(c.op(x, y), y), x);
            }
        }
    }

    #[test]
    fn dual_rejects_non_bijective_columns() {
        let broken = dihedral(3).with_entry(0, 1, 0).unwrap();
        assert!(matches!(dual(&broken), Err(QuandleError::NotAQuandle { .. })));
    }

    #[test]
    fn iterate_examples() {
        let r3 = dihedral(3);
        assert!(iterate(&r3, 1).unwrap().same_table(&r3));
        assert!(iterate(&r3, 2).unwrap().same_table(&QuandleTable::trivial(3)));
        assert!(iterate(&conj_s3(), 6).unwrap().same_table(&QuandleTable::trivial(6)));
        assert!(iterate(&r3, 0).is_err());
    }

    #[test]
    fn conj_exponent_matches_iterate() {
        let s3 = GroupSpec::Symmetric(3);
        for m in 1..=4usize {
            let direct = build(&QuandleSpec::Conj { group: s3.clone(), exponent: m as i64 }).unwrap();
            assert!(direct.same_table(&iterate(&conj_s3(), m).unwrap()));
        }
        let neg = build(&QuandleSpec::Conj { group: s3, exponent: -1 }).unwrap();
        assert!(neg.same_table(&dual(&conj_s3()).unwrap()));
    }

    #[test]
    fn translation_examples() {
        let (right, _) = translations(&dihedral(3), 0).unwrap();
        assert_eq!(right.to_string(), "(0)(1 2)");
        let (right, _) = translations(&QuandleTable::trivial(5), 3).unwrap();
        assert!(right.is_identity());
        let (_, left) = translations(&dihedral(4), 0).unwrap();
        assert_eq!(left, vec![0, 2, 0, 2]);
        assert!(translations(&dihedral(4), 4).is_err());
    }

    #[test]
    fn conj_columns_are_inner_automorphisms() {
        let g = build_group(&GroupSpec::DihedralGroup(4)).unwrap();
        let q = build(&QuandleSpec::Conj { group: GroupSpec::DihedralGroup(4), exponent: 1 }).unwrap();
        for y in 0..g.size() {
            assert_eq!(q.column(y), (0..g.size()).map(|x| g.conjugate(x, y)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn large_tables_use_sampling() {
        let q = build(&QuandleSpec::Conj { group: GroupSpec::Symmetric(5), exponent: 1 }).unwrap();
        let report = validate(&q);
        assert!(report.is_quandle());
        assert!(!report.exhaustive);
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("dihedral:3".parse::<QuandleSpec>().unwrap(), QuandleSpec::Dihedral(3));
        assert_eq!(
            "conj:symmetric:3@-2".parse::<QuandleSpec>().unwrap(),
            QuandleSpec::Conj { group: GroupSpec::Symmetric(3), exponent: -2 }
        );
        assert_eq!("core:cyclic:5".parse::<QuandleSpec>().unwrap(), QuandleSpec::Core(GroupSpec::Cyclic(5)));
        assert!("dihedral:x".parse::<QuandleSpec>().is_err());
        for s in ["trivial:2", "conj:dihedral-group:3@2", "core:symmetric:4"] {
            assert_eq!(s.parse::<QuandleSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn build_rejects_non_quandle_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "2\n1 1\n0 0\n").unwrap();
        assert!(matches!(build(&QuandleSpec::FromTable(path)), Err(QuandleError::NotAQuandle { .. })));
    }
}
