//! Lattice points in dilations `tP` of an H-polytope.
//!
//! The bounding box of `P` is found by interval propagation over the
//! constraints. Points of `tP` are then swept coordinate by coordinate. The
//! state after fixing `x_1..x_j` is the vector of partial sums of the
//! constraints that straddle position `j`; states with equal partial sums
//! have equal completions, so the sweep merges them. This turns the plain
//! box enumeration into a dynamic program without changing what is counted.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{HPolytope, HalfSpace};
use crate::error::{Error, Result};
use crate::stable::LatticePoint;

const SAT: i64 = i64::MIN;
const PROPAGATION_ROUNDS: usize = 256;

type Interval = (Option<BigRational>, Option<BigRational>);

/// Per-coordinate bounds of `P` derived by constraint propagation.
pub fn bounding_box(p: &HPolytope) -> Result<Vec<(BigRational, BigRational)>> {
    let d = p.dim();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let to_r = |x: &BigInt| BigRational::from_integer(x.clone());
    for h in p.halfspaces() {
        rows.push((h.normal().iter().map(to_r).collect(), to_r(h.offset())));
    }
    for e in p.equations() {
        rows.push((e.normal().iter().map(to_r).collect(), to_r(e.value())));
        rows.push((
            e.normal().iter().map(|x| -to_r(x)).collect(),
            -to_r(e.value()),
        ));
    }
    let mut bounds: Vec<Interval> = vec![(None, None); d];
    for _ in 0..PROPAGATION_ROUNDS {
        let mut changed = false;
        for (a, b) in &rows {
            for j in 0..d {
                if a[j].is_zero() {
                    continue;
                }
                // b - Σ_{i≠j} min(a_i x_i)
                let mut slack = Some(b.clone());
                for i in (0..d).filter(|&i| i != j && !a[i].is_zero()) {
                    let least = if a[i].is_positive() {
                        bounds[i].0.as_ref().map(|lo| &a[i] * lo)
                    } else {
                        bounds[i].1.as_ref().map(|hi| &a[i] * hi)
                    };
                    slack = match (slack, least) {
                        (Some(s), Some(l)) => Some(s - l),
                        _ => None,
                    };
                }
                let Some(slack) = slack else { continue };
                let bound = slack / &a[j];
                if a[j].is_positive() {
                    if bounds[j].1.as_ref().is_none_or(|hi| bound < *hi) {
                        bounds[j].1 = Some(bound);
                        changed = true;
                    }
                } else if bounds[j].0.as_ref().is_none_or(|lo| bound > *lo) {
                    bounds[j].0 = Some(bound);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    bounds
        .into_iter()
        .map(|(lo, hi)| match (lo, hi) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::Unbounded),
        })
        .collect()
}

struct Row {
    coef: Vec<i64>,
    lower: Option<i64>,
    upper: Option<i64>,
    first: usize,
    last: usize,
    min_rest: Vec<i64>,
    max_rest: Vec<i64>,
}

/// The constraint system of `tP` (or of its integral interior) in sweep form.
struct Sweep {
    dim: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    rows: Vec<Row>,
    /// rows with `first <= j <= last`
    active: Vec<Vec<usize>>,
    /// rows with `first <= j < last`, i.e. the key layout after level `j`
    open_after: Vec<Vec<usize>>,
    /// position of a row inside `open_after[j]`
    slot_after: Vec<Vec<usize>>,
    empty: bool,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn scaled(x: &BigInt, t: u64) -> Result<i64> {
    to_i64(x)?.checked_mul(t as i64).ok_or(Error::Overflow)
}

impl Sweep {
    fn new(p: &HPolytope, t: u64, strict: bool) -> Result<Self> {
        let d = p.dim();
        let bbox = bounding_box(p)?;
        let tr = BigRational::from_integer(BigInt::from(t));
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for (l, h) in &bbox {
            lo.push(to_i64(&(l * &tr).ceil().to_integer())?);
            hi.push(to_i64(&(h * &tr).floor().to_integer())?);
        }
        let mut empty = lo.iter().zip(&hi).any(|(l, h)| l > h);

        let mut raw: Vec<(Vec<i64>, Option<i64>, Option<i64>)> = Vec::new();
        for h in p.halfspaces() {
            let h: HalfSpace = if strict {
                h.dilate(t as i64).strict_integral()
            } else {
                h.dilate(t as i64)
            };
            let coef = h.normal().iter().map(to_i64).collect::<Result<Vec<_>>>()?;
            raw.push((coef, None, Some(to_i64(h.offset())?)));
        }
        for e in p.equations() {
            let coef = e.normal().iter().map(to_i64).collect::<Result<Vec<_>>>()?;
            let v = scaled(e.value(), t)?;
            raw.push((coef, Some(v), Some(v)));
        }

        let mut rows = Vec::new();
        for (coef, lower, upper) in raw {
            let Some(first) = coef.iter().position(|&c| c != 0) else {
                if lower.is_some_and(|l| l > 0) || upper.is_some_and(|u| u < 0) {
                    empty = true;
                }
                continue;
            };
            let last = coef.iter().rposition(|&c| c != 0).expect("nonzero row");
            let mut min_rest = vec![0i64; d];
            let mut max_rest = vec![0i64; d];
            let (mut mn, mut mx) = (0i64, 0i64);
            for j in (0..d).rev() {
                min_rest[j] = mn;
                max_rest[j] = mx;
                let a = lo[j].checked_mul(coef[j]).ok_or(Error::Overflow)?;
                let b = hi[j].checked_mul(coef[j]).ok_or(Error::Overflow)?;
                mn = mn.checked_add(a.min(b)).ok_or(Error::Overflow)?;
                mx = mx.checked_add(a.max(b)).ok_or(Error::Overflow)?;
            }
            rows.push(Row {
                coef,
                lower,
                upper,
                first,
                last,
                min_rest,
                max_rest,
            });
        }

        let active: Vec<Vec<usize>> = (0..d)
            .map(|j| {
                (0..rows.len())
                    .filter(|&r| rows[r].first <= j && j <= rows[r].last)
                    .collect()
            })
            .collect();
        let open_after: Vec<Vec<usize>> = (0..d)
            .map(|j| {
                (0..rows.len())
                    .filter(|&r| rows[r].first <= j && j < rows[r].last)
                    .collect()
            })
            .collect();
        let slot_after = open_after
            .iter()
            .map(|open| {
                let mut slots = vec![usize::MAX; rows.len()];
                for (s, &r) in open.iter().enumerate() {
                    slots[r] = s;
                }
                slots
            })
            .collect();
        Ok(Sweep {
            dim: d,
            lo,
            hi,
            rows,
            active,
            open_after,
            slot_after,
            empty,
        })
    }

    /// Apply `x_j = v` to the state `key` (layout of level `j - 1`).
    fn step(&self, j: usize, key: &[i64], v: i64, out: &mut Vec<i64>) -> bool {
        out.clear();
        out.resize(self.open_after[j].len(), 0);
        for &r in &self.active[j] {
            let row = &self.rows[r];
            let old = if row.first == j {
                0
            } else {
                key[self.slot_after[j - 1][r]]
            };
            if old == SAT {
                if j < row.last {
                    out[self.slot_after[j][r]] = SAT;
                }
                continue;
            }
            let p = old + row.coef[j] * v;
            let (mn, mx) = (p + row.min_rest[j], p + row.max_rest[j]);
            if row.upper.is_some_and(|u| mn > u) || row.lower.is_some_and(|l| mx < l) {
                return false;
            }
            if j < row.last {
                let surely = row.upper.is_none_or(|u| mx <= u) && row.lower.is_none_or(|l| mn >= l);
                out[self.slot_after[j][r]] = if surely { SAT } else { p };
            }
        }
        true
    }

    fn count(&self) -> u128 {
        if self.empty {
            return 0;
        }
        let mut states: HashMap<Vec<i64>, u128> = HashMap::new();
        states.insert(Vec::new(), 1);
        let mut buf = Vec::new();
        for j in 0..self.dim {
            let mut next: HashMap<Vec<i64>, u128> = HashMap::with_capacity(states.len());
            for (key, &c) in &states {
                for v in self.lo[j]..=self.hi[j] {
                    if self.step(j, key, v, &mut buf) {
                        *next.entry(buf.clone()).or_insert(0) += c;
                    }
                }
            }
            states = next;
            if states.is_empty() {
                return 0;
            }
        }
        states.values().sum()
    }

    fn find(&self) -> Option<Vec<i64>> {
        if self.empty {
            return None;
        }
        let mut dead: HashSet<(usize, Vec<i64>)> = HashSet::new();
        let mut point = Vec::with_capacity(self.dim);
        self.dfs(0, &[], &mut point, &mut dead, None)
            .then_some(point)
    }

    /// Depth-first search. With `sink` set, every point is collected and the
    /// search never stops early.
    fn dfs(
        &self,
        j: usize,
        key: &[i64],
        point: &mut Vec<i64>,
        dead: &mut HashSet<(usize, Vec<i64>)>,
        mut sink: Option<&mut Vec<Vec<i64>>>,
    ) -> bool {
        if j == self.dim {
            if let Some(s) = sink {
                s.push(point.clone());
            }
            return true;
        }
        if sink.is_none() && dead.contains(&(j, key.to_vec())) {
            return false;
        }
        let mut buf = Vec::new();
        let mut found = false;
        for v in self.lo[j]..=self.hi[j] {
            if !self.step(j, key, v, &mut buf) {
                continue;
            }
            point.push(v);
            let next = buf.clone();
            let hit = self.dfs(j + 1, &next, point, dead, sink.as_deref_mut());
            if hit {
                found = true;
                if sink.is_none() {
                    return true;
                }
            }
            point.pop();
        }
        if !found && sink.is_none() {
            dead.insert((j, key.to_vec()));
        }
        found
    }
}

/// `|tP ∩ Z^d|`, with `t = 0` giving 1.
pub fn count_lattice_points(p: &HPolytope, t: u64) -> Result<u128> {
    if t == 0 {
        return Ok(1);
    }
    Ok(Sweep::new(p, t, false)?.count())
}

/// Lattice points in the relative interior of `tP`: every halfspace strict,
/// equations exact. Needs integral constraint data.
pub fn count_interior_lattice_points(p: &HPolytope, t: u64) -> Result<u128> {
    if t == 0 {
        return Ok(0);
    }
    Ok(Sweep::new(p, t, true)?.count())
}

/// The lexicographically smallest lattice point in `relint(tP)`, if any.
pub fn find_interior_lattice_point(p: &HPolytope, t: u64) -> Result<Option<LatticePoint>> {
    if t == 0 {
        return Ok(None);
    }
    Ok(Sweep::new(p, t, true)?.find().map(LatticePoint))
}

/// Every lattice point of `tP` in lexicographic order. Only for small cases.
pub fn lattice_points(p: &HPolytope, t: u64) -> Result<Vec<LatticePoint>> {
    let sweep = Sweep::new(p, t, false)?;
    if sweep.empty {
        return Ok(Vec::new());
    }
    let mut all = Vec::new();
    let mut dead = HashSet::new();
    let mut point = Vec::new();
    sweep.dfs(0, &[], &mut point, &mut dead, Some(&mut all));
    Ok(all.into_iter().map(LatticePoint).collect())
}
