//! The thirteen acceptance criteria, shared by `qf catalog run` and the acceptance test target.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::analysis::{connectivity_degree, embed, is_latin, orbits, type_of, LatinMode};
use crate::catalog::catalog;
use crate::gl2::probes::{
    count_trivial_components_pgl, is_admissible_pair, jordan_type_probe, noncommuting_return_pair, r3_probe, root_transport_probe,
    subquandle_order_test,
};
use crate::gl2::{
    path_residual, root_of_unity, sample_rng, two_step_path, witness_in_class, ClassLabel, Mat2, WitnessStatus, DEFAULT_SEED,
    ONE, TRACE_MUST_BE_ZERO,
};
use crate::oracles::{abelianization_rank_by_relations, connectivity_degree_by_definition};
use crate::quandle::{build, dual, iterate, validate, QuandleSpec, QuandleTable};
use crate::words::{compose, evaluate, normalize, psi_identity_word, verify_functor_identities, QuandleWord, Sign};

const ISO_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AcceptanceConfig {
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 13] = [
    "latin equivalence",
    "connectivity degree",
    "Q_n functor",
    "psi and sigma identities",
    "2-connectedness witnesses",
    "root-of-unity subquandles",
    "PGL trivial components",
    "Jordan type probe",
    "R_3 subquandles",
    "non-commuting return pairs",
    "word calculus",
    "abelianization rank",
    "conjugation by n-th roots",
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("exceeded the {}s runtime limit", limit.as_secs()))
}

fn dihedral_order(t: &QuandleTable) -> Option<usize> {
    t.name().strip_prefix('R')?.parse().ok()
}

fn latin_equivalence() -> Outcome {
    let start = Instant::now();
    let all = catalog().map_err(|e| e.to_string())?;
    ensure(all.len() >= 50, || format!("catalog has only {} quandles", all.len()))?;
    for t in &all {
        let fast = is_latin(t, LatinMode::Fast);
        ensure(fast == is_latin(t, LatinMode::Oracle), || format!("latin modes disagree on {}", t.name()))?;
        if let Some(n) = dihedral_order(t) {
            if n % 2 == 1 {
                ensure(fast, || format!("{} should be latin", t.name()))?;
            } else if n >= 4 {
                ensure(!fast, || format!("{} should not be latin", t.name()))?;
            }
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{} quandles, modes agree", all.len()))
}

fn connectivity() -> Outcome {
    let all = catalog().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for t in all.iter().filter(|t| t.size() <= 12) {
        let report = connectivity_degree(t).map_err(|e| e.to_string())?;
        let oracle = connectivity_degree_by_definition(t);
        ensure(report.degree == oracle, || format!("{}: degree {:?}, definition {:?}", t.name(), report.degree, oracle))?;
        checked += 1;
    }
    for n in 1..=12 {
        let r = build(&QuandleSpec::Dihedral(n)).map_err(|e| e.to_string())?;
        let degree = connectivity_degree(&r).map_err(|e| e.to_string())?.degree;
        let expected = if n % 2 == 1 { Some(1) } else { None };
        ensure(degree == expected, || format!("R{n}: degree {degree:?}"))?;
    }
    for n in 2..=8 {
        let t = QuandleTable::trivial(n);
        ensure(!connectivity_degree(&t).map_err(|e| e.to_string())?.connected, || format!("trivial:{n} is connected"))?;
    }
    Ok(format!("{checked} quandles match the definition"))
}

fn functor() -> Outcome {
    let all = catalog().map_err(|e| e.to_string())?;
    for t in &all {
        let err = |e: crate::quandle::QuandleError| format!("{}: {e}", t.name());
        for n in 1..=6 {
            let q = iterate(t, n).map_err(err)?;
            ensure(validate(&q).is_quandle(), || format!("Q_{n}({}) is not a quandle", t.name()))?;
        }
        let ty = usize::try_from(type_of(t).map_err(err)?).map_err(|e| e.to_string())?;
        ensure(iterate(t, ty).map_err(err)?.is_trivial(), || format!("Q_type({}) is not trivial", t.name()))?;
        for m in 1..=3 {
            let (x, y) = (iterate(t, m).map_err(err)?, iterate(t, m + ty).map_err(err)?);
            ensure(x.same_table(&y), || format!("Q_{m} and Q_{} differ on {}", m + ty, t.name()))?;
        }
    }
    Ok(format!("{} quandles, n <= 6", all.len()))
}

fn psi_sigma() -> Outcome {
    for n in 1..=8 {
        let w = psi_identity_word(n);
        ensure(w.is_identity(), || format!("psi identity for n = {n} reduces to {w}"))?;
    }
    let all = catalog().map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for t in all.iter().filter(|t| t.size() <= 12) {
        for n in 1..=4 {
            let report = verify_functor_identities(t, n).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("sigma_{n} fails on {} at {:?}", t.name(), report.sigma_failures.first()))?;
            pairs += report.sigma_pairs_checked;
        }
    }
    Ok(format!("psi n <= 8; sigma on {pairs} pairs"))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_connected(cfg: &AcceptanceConfig) -> Outcome {
    let start = Instant::now();
    let tol = 1e-9;
    let gl = |e: crate::gl2::GlError| e.to_string();
    let classes = [
        ClassLabel::diag_pair(c(2.0, 0.0), c(3.0, 0.0)).map_err(gl)?,
        ClassLabel::diag_pair(ONE, -ONE).map_err(gl)?,
        ClassLabel::jordan(ONE).map_err(gl)?,
    ];
    for cls in &classes {
        for i in 0..1000 {
            let a = crate::gl2::random_member(cls, &mut sample_rng(cfg.seed, i));
            let report = two_step_path(cls, &a, tol).map_err(gl)?;
            ensure(report.is_witness(), || format!("{cls} sample {i}: {:?}", report.status))?;
            let r = path_residual(&cls.base_point(), &report.matrices, &a, cls, tol);
            ensure(r <= 1e-8, || format!("{cls} sample {i}: residual {r:e}"))?;
        }
    }
    let m23 = &classes[0];
    let swapped = Mat2::real(3.0, 0.0, 0.0, 2.0);
    let direct = witness_in_class(&m23.base_point(), &swapped, m23, tol).map_err(gl)?;
    ensure(direct.refutation.as_deref() == Some(TRACE_MUST_BE_ZERO), || format!("D(3,2) length 1: {:?}", direct.refutation))?;
    let path = two_step_path(m23, &swapped, tol).map_err(gl)?;
    ensure(path.is_witness() && path.matrices.len() == 2, || "D(3,2) does not take exactly two steps".into())?;
    let singular = witness_in_class(&Mat2::real(1.0, 0.0, 0.0, -1.0), &Mat2::real(-1.0, 0.0, 1.0, 1.0), &classes[1], tol).map_err(gl)?;
    ensure(singular.status == WitnessStatus::NoWitness, || "singular target has a witness".into())?;
    let unipotent = witness_in_class(&Mat2::real(1.0, 2.0, 0.0, 1.0), &Mat2::real(1.0, 1.0, 0.0, 1.0), &classes[2], tol).map_err(gl)?;
    ensure(unipotent.status == WitnessStatus::NoWitness, || "unipotent target has a witness".into())?;
    within(Duration::from_secs(30), start)?;
    Ok("3000 paths verified; obstructions reproduced".into())
}

fn subquandles(cfg: &AcceptanceConfig) -> Outcome {
    let gl = |e: crate::gl2::GlError| e.to_string();
    let fifth = ClassLabel::diag_pair(root_of_unity(1, 5), ONE).map_err(gl)?;
    let r = subquandle_order_test(&fifth, 5, 200, cfg.seed, 1e-8).map_err(gl)?;
    ensure(r.predicted && r.passed, || format!("fifth roots: {}/{} samples agree", r.agreements, r.samples))?;
    let two = ClassLabel::diag_pair(c(2.0, 0.0), ONE).map_err(gl)?;
    let r2 = subquandle_order_test(&two, 3, 20, cfg.seed, 1e-8).map_err(gl)?;
    let deviation = r2.counterexample.as_ref().map_or(0.0, |ce| ce.deviation);
    ensure(!r2.predicted && deviation > 1e-3, || format!("ratio 2 counterexample deviation {deviation:e}"))?;
    Ok(format!("200 samples within {:.1e}; counterexample deviation {deviation:.3}", r.worst_deviation))
}

fn pgl_components(cfg: &AcceptanceConfig) -> Outcome {
    for n in 1..=8 {
        let r = count_trivial_components_pgl(n, 50, cfg.seed, 1e-8).map_err(|e| e.to_string())?;
        ensure(r.count == n as usize, || format!("n = {n}: counted {}", r.count))?;
        ensure(r.roots.iter().all(|x| x.samples >= 50), || format!("n = {n}: too few samples"))?;
        ensure(r.control_failed, || format!("n = {n}: control ratio did not fail"))?;
    }
    Ok("counts equal n for n = 1..8".into())
}

fn jordan_type() -> Outcome {
    for lambda in [ONE, c(0.0, 1.0), c(2.0, 0.0)] {
        for n in 1..=4 {
            for m in 1..=10 {
                let p = jordan_type_probe(lambda, n, m, 1e-10).map_err(|e| e.to_string())?;
                ensure(p.passed(1e-10), || format!("λ = {lambda}, n = {n}, m = {m}: residual {:e}", p.residual))?;
            }
        }
    }
    Ok("120 closed forms matched".into())
}

fn gaussian_integer(rng: &mut impl Rng) -> Complex64 {
    loop {
        let z = c(f64::from(rng.gen_range(-5i32..=5)), f64::from(rng.gen_range(-5i32..=5)));
        if z.norm() > 0.0 {
            return z;
        }
    }
}

fn r3_results(cfg: &AcceptanceConfig) -> Outcome {
    let gl = |e: crate::gl2::GlError| e.to_string();
    let w = r3_probe(&ClassLabel::diag_pair(ONE, -ONE).map_err(gl)?, 1e-10).map_err(gl)?;
    ensure(w.is_witness() && w.residual <= 1e-10, || format!("R_3 triple residual {:e}", w.residual))?;
    let mut refuted = 0;
    let mut i = 0;
    while refuted < 20 {
        let mut rng = sample_rng(cfg.seed, i);
        i += 1;
        let (l1, l2) = (gaussian_integer(&mut rng), gaussian_integer(&mut rng));
        if l1 == l2 || l1 == -l2 {
            continue;
        }
        let r = r3_probe(&ClassLabel::diag_pair(l1, l2).map_err(gl)?, 1e-10).map_err(gl)?;
        ensure(r.status == WitnessStatus::Refuted && r.exact, || format!("({l1}, {l2}) not refuted exactly"))?;
        refuted += 1;
    }
    let j = r3_probe(&ClassLabel::jordan(ONE).map_err(gl)?, 1e-10).map_err(gl)?;
    ensure(j.status == WitnessStatus::Refuted, || "Jordan class not refuted".into())?;
    let q = |s: &str| build(&s.parse::<QuandleSpec>().map_err(|e| e.to_string())?).map_err(|e| e.to_string());
    let r3 = q("dihedral:3")?;
    ensure(embed(&r3, &q("dihedral:6")?, ISO_BUDGET).map_err(|e| e.to_string())?.found, || "R_3 not found in R_6".into())?;
    let none = embed(&r3, &q("trivial:5")?, ISO_BUDGET).map_err(|e| e.to_string())?;
    ensure(!none.found && none.status == crate::analysis::IsoStatus::NotFound, || "R_3 found in trivial:5".into())?;
    Ok(format!("triple residual {:.1e}; 20 pairs refuted", w.residual))
}

fn return_pairs(cfg: &AcceptanceConfig) -> Outcome {
    let check = |l1: Complex64, l2: Complex64| -> Result<(), String> {
        let r = noncommuting_return_pair(l1, l2, 1e-8).map_err(|e| e.to_string())?;
        let (a, b) = (r.matrices[0], r.matrices[1]);
        let commutator = (a * b - b * a).max_norm();
        ensure(r.is_witness() && r.residual <= 1e-8 && commutator > 1e-6, || {
            format!("({l1}, {l2}): residual {:e}, commutator {commutator:e}", r.residual)
        })
    };
    let mut admissible = 0;
    let mut i = 0;
    while admissible < 20 {
        let mut rng = sample_rng(cfg.seed, i);
        i += 1;
        let (l1, l2) = (gaussian_integer(&mut rng), gaussian_integer(&mut rng));
        if !is_admissible_pair(l1, l2) {
            continue;
        }
        check(l1, l2)?;
        admissible += 1;
    }
    for (l1, l2) in [(1.0, 3.0), (3.0, 1.0), (3.0, -1.0), (4.0, 2.0)] {
        check(c(l1, 0.0), c(l2, 0.0))?;
    }
    Ok("20 admissible pairs and 4 excluded cases".into())
}

fn random_word(rng: &mut impl Rng, size: usize) -> QuandleWord {
    let len = rng.gen_range(0..=6);
    let tail = (0..len)
        .map(|_| (rng.gen_range(0..size), if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }))
        .collect();
    normalize(&QuandleWord::new(rng.gen_range(0..size), tail))
}

fn word_calculus(cfg: &AcceptanceConfig) -> Outcome {
    for spec in ["dihedral:5", "conj:symmetric:3"] {
        let t = build(&spec.parse::<QuandleSpec>().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let d = dual(&t).map_err(|e| e.to_string())?;
        for i in 0..1000 {
            let mut rng = sample_rng(cfg.seed, i);
            let (w1, w2) = (random_word(&mut rng, t.size()), random_word(&mut rng, t.size()));
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let ev = |w: &QuandleWord| evaluate(w, &t).map_err(|e| e.to_string());
            let (x, y) = (ev(&w1)?, ev(&w2)?);
            let expected = match sign {
                Sign::Plus => t.op(x, y),
                Sign::Minus => d.op(x, y),
            };
            let composed = compose(&w1, &w2, sign);
            ensure(ev(&composed)? == expected, || format!("{spec}: compose({w1}, {w2}) evaluates wrongly"))?;
            ensure(normalize(&composed) == composed, || format!("{spec}: normalize not idempotent on {composed}"))?;
        }
    }
    Ok("2000 word pairs".into())
}

fn abelianization() -> Outcome {
    let all = catalog().map_err(|e| e.to_string())?;
    let mut oracle_checked = 0;
    for t in &all {
        let orb = orbits(t).map_err(|e| e.to_string())?;
        ensure(orb.abelianization_rank == orb.blocks.len(), || format!("{}: rank differs from orbit count", t.name()))?;
        if t.size() <= 10 {
            let oracle = abelianization_rank_by_relations(t);
            ensure(oracle == orb.blocks.len(), || format!("{}: oracle rank {oracle}, orbits {}", t.name(), orb.blocks.len()))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("{} quandles; oracle on {oracle_checked}", all.len()))
}

fn root_transport(cfg: &AcceptanceConfig) -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        let r = root_transport_probe(n, 100, cfg.seed).map_err(|e| e.to_string())?;
        ensure(r.max_residual <= 1e-8, || format!("n = {n}: residual {:e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("400 pairs, worst residual {worst:.1e}"))
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: u32, cfg: &AcceptanceConfig) -> Option<CriterionResult> {
    let outcome = match id {
        1 => latin_equivalence(),
        2 => connectivity(),
        3 => functor(),
        4 => psi_sigma(),
        5 => two_connected(cfg),
        6 => subquandles(cfg),
        7 => pgl_components(cfg),
        8 => jordan_type(),
        9 => r3_results(cfg),
        10 => return_pairs(cfg),
        11 => word_calculus(cfg),
        12 => abelianization(),
        13 => root_transport(cfg),
        _ => return None,
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult { id, title: TITLES[id as usize - 1], passed, detail })
}

pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionResult> {
    (1..=TITLES.len() as u32).filter_map(|id| run_criterion(id, cfg)).collect()
}
