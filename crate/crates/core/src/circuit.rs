//! The circuit graph `G_{n,k}`, its minimal circuits and the circuit
//! triangulation of the hypersimplex, together with its r-stable restriction.
//!
//! A node of `G_{n,k}` is a 0/1 vector with `k` ones. The edge labelled `i`
//! moves the 1 in entry `i` to entry `i+1` (indices mod `n`) when that entry
//! is 0. A closed walk must push the same number of 1s across every
//! boundary, so a circuit of length `n` uses every label exactly once.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hrep::window_indices;
use crate::polytope::linalg::det_bareiss;
use crate::stable::{LatticePoint, StableSubset};

type Mask = u64;

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got n={n}, k={k}"
        )));
    }
    if n > 63 {
        return Err(Error::InvalidArgument(format!(
            "circuits are limited to n <= 63, got {n}"
        )));
    }
    Ok(())
}

fn mask_of(v: &LatticePoint) -> Mask {
    v.0.iter()
        .enumerate()
        .filter(|(_, &x)| x == 1)
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn point_of(m: Mask, n: usize) -> LatticePoint {
    LatticePoint((0..n).map(|i| ((m >> i) & 1) as i64).collect())
}

/// Apply the move labelled `label` (1-based), if legal.
fn right_move(m: Mask, label: usize, n: usize) -> Option<Mask> {
    let i = label - 1;
    let j = label % n;
    (m >> i & 1 == 1 && m >> j & 1 == 0).then(|| m & !(1 << i) | 1 << j)
}

fn min_gap(m: Mask, n: usize) -> usize {
    let ones: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
    if ones.len() < 2 {
        return usize::MAX;
    }
    let mut g = ones[0] + n - ones[ones.len() - 1];
    for w in ones.windows(2) {
        g = g.min(w[1] - w[0]);
    }
    g
}

/// The labelled directed graph `G_{n,k}`.
#[derive(Debug, Clone)]
pub struct CircuitGraph {
    n: usize,
    k: usize,
    nodes: Vec<LatticePoint>,
    index: HashMap<Mask, usize>,
    edges: Vec<Vec<(usize, usize)>>,
}

pub fn build_circuit_graph(n: usize, k: usize) -> Result<CircuitGraph> {
    check_nk(n, k)?;
    let nodes: Vec<LatticePoint> = crate::stable::stable_vertices(n, k, 1)?;
    let masks: Vec<Mask> = nodes.iter().map(mask_of).collect();
    let index: HashMap<Mask, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let edges = masks
        .iter()
        .map(|&m| {
            (1..=n)
                .filter_map(|l| right_move(m, l, n).map(|t| (l, index[&t])))
                .collect()
        })
        .collect();
    Ok(CircuitGraph {
        n,
        k,
        nodes,
        index,
        edges,
    })
}

impl CircuitGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[LatticePoint] {
        &self.nodes
    }

    pub fn node_index(&self, v: &LatticePoint) -> Option<usize> {
        self.index.get(&mask_of(v)).copied()
    }

    /// `(label, target node)` pairs leaving `node`.
    pub fn out_edges(&self, node: usize) -> &[(usize, usize)] {
        &self.edges[node]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// A length-`n` circuit in `G_{n,k}`, rotated so that the last label is `n`.
/// Edge `labels[i]` leads from `vertices[i]` to `vertices[i+1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MinimalCircuit {
    labels: Vec<usize>,
    vertices: Vec<LatticePoint>,
    n: usize,
    k: usize,
}

impl MinimalCircuit {
    /// Validate a closed walk from `start` and put it in canonical form.
    pub fn from_walk(start: &LatticePoint, labels: &[usize]) -> Result<Self> {
        let n = start.dim();
        let k = start.0.iter().filter(|&&x| x == 1).count();
        check_nk(n, k)?;
        if start.0.iter().any(|&x| x != 0 && x != 1) {
            return Err(Error::InvalidArgument("start must be a 0/1 vector".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidArgument(format!(
                "a minimal circuit has {n} moves, got {}",
                labels.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &l in labels {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::InvalidArgument(format!(
                    "labels {labels:?} are not a permutation of [n]"
                )));
            }
        }
        let mut m = mask_of(start);
        let mut masks = Vec::with_capacity(n);
        for &l in labels {
            masks.push(m);
            m = right_move(m, l, n).ok_or_else(|| {
                Error::InvalidArgument(format!("move {l} is illegal in the walk"))
            })?;
        }
        if m != masks[0] {
            return Err(Error::InvalidArgument("walk does not close up".into()));
        }
        let shift = (labels.iter().position(|&l| l == n).expect("permutation") + 1) % n;
        let mut labels = labels.to_vec();
        labels.rotate_left(shift);
        masks.rotate_left(shift);
        Ok(MinimalCircuit {
            labels,
            vertices: masks.into_iter().map(|m| point_of(m, n)).collect(),
            n,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The permutation word `ω`, ending in `n`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn is_r_stable(&self, r: usize) -> bool {
        self.vertices
            .iter()
            .all(|v| min_gap(mask_of(v), self.n) >= r)
    }

    /// Determinant of the vertex differences after deleting the last
    /// coordinate; `±1` for a unimodular simplex.
    pub fn projected_determinant(&self) -> BigInt {
        let d = self.n - 1;
        let base = &self.vertices[0].0;
        let m: Vec<Vec<BigInt>> = self.vertices[1..]
            .iter()
            .map(|v| (0..d).map(|i| BigInt::from(v.0[i] - base[i])).collect())
            .collect();
        det_bareiss(m)
    }

    pub fn is_unimodular(&self) -> bool {
        self.projected_determinant().abs().is_one()
    }
}

fn search_circuits(n: usize, k: usize, r: usize) -> Result<Vec<MinimalCircuit>> {
    check_nk(n, k)?;
    let starts: Vec<Mask> = crate::stable::stable_vertices(n, k, r.max(1))?
        .iter()
        .map(mask_of)
        .filter(|&m| m & 1 == 1 && m >> (n - 1) & 1 == 0)
        .collect();
    let full: Mask = (1 << (n - 1)) - 1;
    let mut out = Vec::new();
    for start in starts {
        let mut path = Vec::with_capacity(n);
        let mut masks = Vec::with_capacity(n);
        dfs(n, r, start, start, 0, full, &mut path, &mut masks, &mut out);
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|(labels, masks)| MinimalCircuit {
            labels,
            vertices: masks.into_iter().map(|m| point_of(m, n)).collect(),
            n,
            k,
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    n: usize,
    r: usize,
    start: Mask,
    cur: Mask,
    used: Mask,
    full: Mask,
    path: &mut Vec<usize>,
    masks: &mut Vec<Mask>,
    out: &mut Vec<(Vec<usize>, Vec<Mask>)>,
) {
    masks.push(cur);
    if used == full {
        if right_move(cur, n, n) == Some(start) {
            let mut labels = path.clone();
            labels.push(n);
            out.push((labels, masks.clone()));
        }
        masks.pop();
        return;
    }
    for l in 1..n {
        if used >> (l - 1) & 1 == 1 {
            continue;
        }
        if let Some(next) = right_move(cur, l, n) {
            if r > 1 && min_gap(next, n) < r {
                continue;
            }
            path.push(l);
            dfs(
                n,
                r,
                start,
                next,
                used | 1 << (l - 1),
                full,
                path,
                masks,
                out,
            );
            path.pop();
        }
    }
    masks.pop();
}

/// All minimal circuits of `G_{n,k}`, sorted by permutation word. Their
/// simplices are the maximal cells of the circuit triangulation.
pub fn enumerate_minimal_circuits(n: usize, k: usize) -> Result<Vec<MinimalCircuit>> {
    search_circuits(n, k, 1)
}

/// Minimal circuits whose vertices are all r-stable, found directly by
/// pruning the search. Equal to `restrict_to_stable(enumerate_minimal_circuits(n, k), r)`.
pub fn enumerate_stable_circuits(n: usize, k: usize, r: usize) -> Result<Vec<MinimalCircuit>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if r > n / k.max(1) {
        return Ok(Vec::new());
    }
    search_circuits(n, k, r)
}

/// The circuits lying entirely in `Δ_{n,k}^{stab(r)}`.
pub fn restrict_to_stable(circuits: &[MinimalCircuit], r: usize) -> Vec<MinimalCircuit> {
    circuits
        .iter()
        .filter(|c| c.is_r_stable(r))
        .cloned()
        .collect()
}

/// Labelled 1s walking around the cycle; positions are 0-based.
struct Walker {
    n: usize,
    pos: Vec<usize>,
    occupied: Mask,
    labels: Vec<usize>,
}

impl Walker {
    fn new(n: usize, pos: Vec<usize>) -> Self {
        let occupied = pos.iter().fold(0, |m, &p| m | 1 << p);
        Walker {
            n,
            pos,
            occupied,
            labels: Vec::new(),
        }
    }

    fn step(&mut self, which: usize) -> Result<()> {
        let from = self.pos[which];
        let to = (from + 1) % self.n;
        if self.occupied >> to & 1 == 1 {
            return Err(Error::Mismatch(format!(
                "move into occupied entry {}",
                to + 1
            )));
        }
        self.occupied = self.occupied & !(1 << from) | 1 << to;
        self.pos[which] = to;
        self.labels.push(from + 1);
        Ok(())
    }

    fn finish(mut self, start: &LatticePoint, which: usize) -> Result<MinimalCircuit> {
        let target = mask_of(start);
        while self.occupied != target {
            if self.labels.len() >= self.n {
                return Err(Error::Mismatch(
                    "construction does not close after n moves".into(),
                ));
            }
            self.step(which)?;
        }
        MinimalCircuit::from_walk(start, &self.labels)
    }
}

fn residue(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// The r-stable circuit with exactly one vertex on `x_ℓ = 1`, for
/// `r = floor(n/k) - 1`.
///
/// The 1s start at `ℓ-1, ℓ-1-r, …, ℓ-1-(k-1)r` and are labelled `1_1, …, 1_k`
/// in that order. Move `1_1`; sweep `1_1, …, 1_k` a total of `r` times; then
/// move `1_1` until the start configuration comes back.
pub fn construct_circuit_hl(n: usize, k: usize, l: usize) -> Result<MinimalCircuit> {
    if !(1 < k && k + 1 < n) || n / k < 2 || l == 0 || l > n {
        return Err(Error::unsupported(
            n,
            k,
            (n / k).saturating_sub(1),
            "need 1 < k < n-1, floor(n/k) >= 2 and 1 <= ℓ <= n",
        ));
    }
    let r = n / k - 1;
    let pos: Vec<usize> = (0..k)
        .map(|s| residue(l as i64 - 2 - (s * r) as i64, n))
        .collect();
    let start = point_of(pos.iter().fold(0, |m, &p| m | 1 << p), n);
    let mut w = Walker::new(n, pos);
    w.step(0)?;
    for _ in 0..r {
        for s in 0..k {
            w.step(s)?;
        }
    }
    w.finish(&start, 0)
}

/// The r-stable circuit with all but one vertex on `Σ_{i=ℓ}^{ℓ+r-1} x_i = 1`.
///
/// The 1s start at `ℓ-1, ℓ-1+r, …, ℓ-1+(k-1)r`, labelled `1_1, …, 1_k`.
/// Sweep `1_k, 1_{k-1}, …, 1_1` a total of `r` times, then move `1_k` until
/// the start configuration comes back.
pub fn construct_circuit_window(n: usize, k: usize, r: usize, l: usize) -> Result<MinimalCircuit> {
    let in_range = k >= 1 && k < n && 1 < r && (r < n / k || n == k * r + 1);
    if !in_range || l == 0 || l > n {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "need 1 < r, r < floor(n/k) or n = kr+1, and 1 <= ℓ <= n",
        ));
    }
    let pos: Vec<usize> = (0..k)
        .map(|s| residue(l as i64 - 2 + (s * r) as i64, n))
        .collect();
    let start = point_of(pos.iter().fold(0, |m, &p| m | 1 << p), n);
    let mut w = Walker::new(n, pos);
    for _ in 0..r {
        for s in (0..k).rev() {
            w.step(s)?;
        }
    }
    w.finish(&start, k - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    /// at least `r-1` zeros between the two 1s
    RStable,
    /// exactly `r-2` zeros: `(r-1)`-stable but not r-stable
    AlmostStable,
    Neither,
}

/// A pair of cyclically consecutive 1s, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairInfo {
    pub pair: (usize, usize),
    pub separation: usize,
    pub class: PairClass,
}

/// Classify each pair of cyclically consecutive 1s of a 0/1 vector by the
/// number of 0s separating them.
pub fn classify_pairs(v: &LatticePoint, r: usize) -> Vec<PairInfo> {
    let n = v.dim();
    let ones: Vec<usize> = (0..n).filter(|&i| v.0[i] == 1).collect();
    if ones.len() < 2 {
        return Vec::new();
    }
    (0..ones.len())
        .map(|i| {
            let a = ones[i];
            let b = ones[(i + 1) % ones.len()];
            let separation = (b + n - a - 1) % n;
            let class = if separation + 1 >= r {
                PairClass::RStable
            } else if separation + 2 == r {
                PairClass::AlmostStable
            } else {
                PairClass::Neither
            };
            PairInfo {
                pair: (a + 1, b + 1),
                separation,
                class,
            }
        })
        .collect()
}

/// An r-supporting pair: `u` is r-stable, `ω` is `(r-1)`-stable but not
/// r-stable, and the two simplices share all vertices except the key vertex
/// of `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportingPair {
    pub u: MinimalCircuit,
    pub omega: MinimalCircuit,
    pub key_vertex: LatticePoint,
    /// start of the key vertex's unique `(r-1)`-stable-not-r-stable pair
    pub ell: usize,
    /// whether every shared vertex lies on `Σ_{i=ℓ}^{ℓ+r-1} x_i = 1`
    pub shared_on_window: bool,
}

fn sorted_masks_without(c: &MinimalCircuit, skip: usize) -> Vec<Mask> {
    let mut v: Vec<Mask> = c
        .vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, p)| mask_of(p))
        .collect();
    v.sort_unstable();
    v
}

/// All r-supporting pairs of `∇_{n,k}`, sorted by `(u, ω)`.
pub fn find_r_supporting_pairs(n: usize, k: usize, r: usize) -> Result<Vec<SupportingPair>> {
    check_nk(n, k)?;
    if r < 2 || r > n / k {
        return Err(Error::unsupported(n, k, r, "need 1 < r <= floor(n/k)"));
    }
    let upper = enumerate_stable_circuits(n, k, r)?;
    let lower: Vec<MinimalCircuit> = enumerate_stable_circuits(n, k, r - 1)?
        .into_iter()
        .filter(|c| !c.is_r_stable(r))
        .collect();

    let mut facets: HashMap<Vec<Mask>, Vec<usize>> = HashMap::new();
    for (i, u) in upper.iter().enumerate() {
        for skip in 0..n {
            facets
                .entry(sorted_masks_without(u, skip))
                .or_default()
                .push(i);
        }
    }

    let mut out = Vec::new();
    for omega in &lower {
        let bad: Vec<usize> = (0..n)
            .filter(|&i| min_gap(mask_of(&omega.vertices[i]), n) < r)
            .collect();
        let [key] = bad[..] else { continue };
        let Some(matches) = facets.get(&sorted_masks_without(omega, key)) else {
            continue;
        };
        let key_vertex = omega.vertices[key].clone();
        let almost: Vec<PairInfo> = classify_pairs(&key_vertex, r)
            .into_iter()
            .filter(|p| p.class == PairClass::AlmostStable)
            .collect();
        let [ref pair] = almost[..] else {
            return Err(Error::Mismatch(format!(
                "key vertex {:?} has {} almost-stable pairs",
                key_vertex.0,
                almost.len()
            )));
        };
        let ell = pair.pair.0;
        let window = window_indices(n, ell, r);
        let shared_on_window = omega
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != key)
            .all(|(_, v)| window.iter().map(|&i| v.0[i - 1]).sum::<i64>() == 1);
        for &ui in matches {
            out.push(SupportingPair {
                u: upper[ui].clone(),
                omega: omega.clone(),
                key_vertex: key_vertex.clone(),
                ell,
                shared_on_window,
            });
        }
    }
    out.sort_by(|a, b| (&a.u, &a.omega).cmp(&(&b.u, &b.omega)));
    Ok(out)
}

/// The k-subset behind a 0/1 vertex.
pub fn vertex_subset(v: &LatticePoint) -> Result<StableSubset> {
    StableSubset::from_characteristic(v)
}
