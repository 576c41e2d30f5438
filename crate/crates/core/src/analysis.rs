//! Decision procedures and invariants on finite quandles.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::quandle::{dual, Permutation, QuandleError, QuandleTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinMode {
    /// Bijectivity of the single left translation `L_0`.
    Fast,
    /// Bijectivity of every left translation.
    Oracle,
}

fn row_is_bijective(t: &QuandleTable, x: usize) -> bool {
    let mut seen = vec![false; t.size()];
    t.row(x).iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

pub fn is_latin(t: &QuandleTable, mode: LatinMode) -> bool {
    match mode {
        LatinMode::Fast => row_is_bijective(t, 0),
        LatinMode::Oracle => (0..t.size()).all(|x| row_is_bijective(t, x)),
    }
}

/// Whether every left translation is surjective.
pub fn is_one_connected(t: &QuandleTable) -> bool {
    // surjective self-maps of a finite set are bijective
    is_latin(t, LatinMode::Oracle)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbits {
    /// Sorted blocks, ordered by least element.
    pub blocks: Vec<Vec<usize>>,
    /// Rank of the abelianized associated group; one generator survives per block.
    pub abelianization_rank: usize,
}

impl Orbits {
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("element outside every block")
    }
}

/// Inner-automorphism orbits via union-find closure under `x ~ x*y` and `x ~ x*⁻¹y`.
pub fn orbits(t: &QuandleTable) -> Result<Orbits, QuandleError> {
    let d = dual(t)?;
    let n = t.size();
    let mut sets = DisjointSets::new(n);
    for x in 0..n {
        for y in 0..n {
            sets.union(x, t.op(x, y));
            sets.union(x, d.op(x, y));
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = sets.find(x);
        by_root[r].push(x);
    }
    let blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
    let abelianization_rank = blocks.len();
    Ok(Orbits { blocks, abelianization_rank })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    /// Largest over ordered pairs of the shortest right-multiplication word length.
    pub degree: Option<usize>,
    pub witness_pair: Option<(usize, usize)>,
}

/// Shortest `l >= 1` with `y = x * z_1 * ... * z_l`, for every `y` (None if unreachable).
pub fn word_distances(t: &QuandleTable, x: usize) -> Vec<Option<usize>> {
    let n = t.size();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::from([(x, 0usize)]);
    let mut visited = vec![false; n];
    visited[x] = true;
    while let Some((v, d)) = queue.pop_front() {
        for z in 0..n {
            let w = t.op(v, z);
            if !visited[w] {
                visited[w] = true;
                dist[w] = Some(d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    // x = x * x
    dist[x] = Some(1);
    dist
}

pub fn connectivity_degree(t: &QuandleTable) -> Result<ConnectivityReport, QuandleError> {
    if orbits(t)?.blocks.len() > 1 {
        return Ok(ConnectivityReport { connected: false, degree: None, witness_pair: None });
    }
    let mut best = (0usize, (0usize, 0usize));
    for x in 0..t.size() {
        for (y, d) in word_distances(t, x).into_iter().enumerate() {
            let d = d.expect("connected quandle reaches every element");
            if d > best.0 {
                best = (d, (x, y));
            }
        }
    }
    Ok(ConnectivityReport { connected: true, degree: Some(best.0), witness_pair: Some(best.1) })
}

/// Least `n` with `R_y^n = id` for all `y`: the lcm of the column orders.
pub fn type_of(t: &QuandleTable) -> Result<u64, QuandleError> {
    (0..t.size()).try_fold(1u64, |acc, y| Ok(num_integer::lcm(acc, t.right_translation(y)?.order())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsoStatus {
    Found,
    NotFound,
    /// Node budget ran out before the search space was exhausted.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub found: bool,
    pub status: IsoStatus,
    pub mapping: Option<Vec<usize>>,
    pub nodes_explored: u64,
}

impl IsoResult {
    fn not_found(nodes_explored: u64) -> Self {
        Self { found: false, status: IsoStatus::NotFound, mapping: None, nodes_explored }
    }
}

/// Per-element isomorphism invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Profile {
    orbit_size: usize,
    right_cycle_type: Vec<usize>,
    right_fixed_points: usize,
    left_image_size: usize,
}

fn profiles(t: &QuandleTable) -> Result<Vec<Profile>, QuandleError> {
    let orb = orbits(t)?;
    (0..t.size())
        .map(|x| {
            let r: Permutation = t.right_translation(x)?;
            let mut image = t.row(x).to_vec();
            image.sort_unstable();
            image.dedup();
            Ok(Profile {
                orbit_size: orb.blocks[orb.block_of(x)].len(),
                right_cycle_type: r.cycle_type(),
                right_fixed_points: r.fixed_points(),
                left_image_size: image.len(),
            })
        })
        .collect()
}

struct Search<'a> {
    src: &'a QuandleTable,
    dst: &'a QuandleTable,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(src: &'a QuandleTable, dst: &'a QuandleTable, candidates: Vec<Vec<usize>>, order: Vec<usize>, budget: u64) -> Self {
        Self {
            src,
            dst,
            candidates,
            order,
            map: vec![None; src.size()],
            used: vec![false; dst.size()],
            trail: Vec::new(),
            assigned: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn allowed(&self, x: usize, v: usize) -> bool {
        !self.used[v] && self.candidates[x].binary_search(&v).is_ok()
    }

    fn set(&mut self, x: usize, v: usize) {
        self.map[x] = Some(v);
        self.used[v] = true;
        self.trail.push(x);
        self.assigned.push(x);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let v = self.map[x].take().unwrap();
            self.used[v] = false;
            self.assigned.pop();
        }
    }

    /// Assign `x -> v` and everything it forces; false on contradiction.
    fn propagate(&mut self, x: usize, v: usize) -> bool {
        if !self.allowed(x, v) {
            return false;
        }
        self.set(x, v);
        let mut queue = VecDeque::from([x]);
        while let Some(a) = queue.pop_front() {
            let fa = self.map[a].unwrap();
            let mut i = 0;
            while i < self.assigned.len() {
                let b = self.assigned[i];
                let fb = self.map[b].unwrap();
                for (w, target) in [(self.src.op(a, b), self.dst.op(fa, fb)), (self.src.op(b, a), self.dst.op(fb, fa))] {
                    match self.map[w] {
                        Some(fw) if fw != target => return false,
                        Some(_) => {}
                        None => {
                            if !self.allowed(w, target) {
                                return false;
                            }
                            self.set(w, target);
                            queue.push_back(w);
                        }
                    }
                }
                i += 1;
            }
        }
        true
    }

    fn run(&mut self) -> Step {
        let Some(&x) = self.order.iter().find(|&&x| self.map[x].is_none()) else {
            return Step::Found;
        };
        let options = self.candidates[x].clone();
        for v in options {
            if self.used[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let mark = self.trail.len();
            if self.propagate(x, v) {
                match self.run() {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Step::Exhausted
    }

    fn finish(mut self) -> IsoResult {
        match self.run() {
            Step::Found => {
                let mapping: Vec<usize> = self.map.iter().map(|m| m.unwrap()).collect();
                assert!(is_homomorphism(self.src, self.dst, &mapping), "search produced a non-homomorphism");
                IsoResult { found: true, status: IsoStatus::Found, mapping: Some(mapping), nodes_explored: self.nodes }
            }
            Step::Exhausted => IsoResult::not_found(self.nodes),
            Step::OutOfBudget => IsoResult { found: false, status: IsoStatus::Inconclusive, mapping: None, nodes_explored: self.nodes },
        }
    }
}

/// Exhaustive check of `φ(x*y) = φ(x)*φ(y)`.
pub fn is_homomorphism(src: &QuandleTable, dst: &QuandleTable, mapping: &[usize]) -> bool {
    mapping.len() == src.size()
        && mapping.iter().all(|&v| v < dst.size())
        && (0..src.size()).all(|x| (0..src.size()).all(|y| mapping[src.op(x, y)] == dst.op(mapping[x], mapping[y])))
}

/// Backtracking isomorphism search with profile pruning and forced-image propagation.
pub fn find_isomorphism(a: &QuandleTable, b: &QuandleTable, budget: u64) -> Result<IsoResult, QuandleError> {
    if a.size() != b.size() {
        return Ok(IsoResult::not_found(0));
    }
    let (pa, pb) = (profiles(a)?, profiles(b)?);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(IsoResult::not_found(0));
    }
    let mut classes: HashMap<&Profile, Vec<usize>> = HashMap::new();
    for (v, p) in pb.iter().enumerate() {
        classes.entry(p).or_default().push(v);
    }
    let candidates: Vec<Vec<usize>> = pa.iter().map(|p| classes[p].clone()).collect();
    let mut order: Vec<usize> = (0..a.size()).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));
    Ok(Search::new(a, b, candidates, order, budget).finish())
}

/// Injective homomorphism `p -> q`.
pub fn embed(p: &QuandleTable, q: &QuandleTable, budget: u64) -> Result<IsoResult, QuandleError> {
    if p.size() > q.size() {
        return Ok(IsoResult::not_found(0));
    }
    let candidates = vec![(0..q.size()).collect::<Vec<_>>(); p.size()];
    let order = (0..p.size()).collect();
    Ok(Search::new(p, q, candidates, order, budget).finish())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub size: usize,
    pub latin: bool,
    pub orbits: usize,
    pub degree: Option<usize>,
    #[serde(rename = "type")]
    pub type_: u64,
    pub rank: usize,
}

pub fn analyze(t: &QuandleTable) -> Result<AnalysisReport, QuandleError> {
    let orb = orbits(t)?;
    Ok(AnalysisReport {
        name: t.name().to_string(),
        size: t.size(),
        latin: is_latin(t, LatinMode::Fast),
        orbits: orb.blocks.len(),
        degree: connectivity_degree(t)?.degree,
        type_: type_of(t)?,
        rank: orb.abelianization_rank,
    })
}
