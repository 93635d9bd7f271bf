//! r-stable subsets of the cyclic index set `[n] = {1, ..., n}` and their
//! characteristic vectors.
//!
//! Indices are 1-based throughout the public API so that they line up with
//! the usual coordinate labels `x_1, ..., x_n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Length of the shortest path between `i` and `j` around the `n`-cycle.
pub fn circular_gap(i: usize, j: usize, n: usize) -> Result<usize> {
    if n == 0 || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidArgument(format!(
            "indices ({i}, {j}) must lie in [1, {n}]"
        )));
    }
    let d = i.abs_diff(j);
    Ok(d.min(n - d))
}

/// An integer point. Characteristic vectors are 0/1 points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zeros(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

/// A subset of the cyclic set `[n]`, stored sorted, together with its
/// stability level (the smallest circular gap between circularly consecutive
/// elements). Subsets with fewer than two elements have no level and are
/// r-stable for every r.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableSubset {
    n: usize,
    elements: Vec<usize>,
    level: Option<usize>,
}

impl StableSubset {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidArgument(format!(
                "element {bad} outside [1, {n}]"
            )));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("elements must be distinct".into()));
        }
        let level = stability_level(n, &elements);
        Ok(StableSubset { n, elements, level })
    }

    /// Support of a 0/1 vector.
    pub fn from_characteristic(v: &LatticePoint) -> Result<Self> {
        if let Some(bad) = v.0.iter().find(|&&x| x != 0 && x != 1) {
            return Err(Error::InvalidArgument(format!(
                "characteristic vectors are 0/1, found entry {bad}"
            )));
        }
        let n = v.dim();
        Self::new(
            n,
            v.0.iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .map(|(i, _)| i + 1),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stability_level(&self) -> Option<usize> {
        self.level
    }

    pub fn is_r_stable(&self, r: usize) -> bool {
        self.level.is_none_or(|l| l >= r)
    }

    pub fn characteristic_vector(&self) -> LatticePoint {
        let mut v = vec![0; self.n];
        for &e in &self.elements {
            v[e - 1] = 1;
        }
        LatticePoint(v)
    }

    /// Shift every element by `by` around the cycle.
    pub fn rotate(&self, by: usize) -> Self {
        let n = self.n;
        Self::new(n, self.elements.iter().map(|&e| (e - 1 + by) % n + 1))
            .expect("rotation preserves validity")
    }

    /// Apply `i -> n + 1 - i`.
    pub fn reflect(&self) -> Self {
        let n = self.n;
        Self::new(n, self.elements.iter().map(|&e| n + 1 - e))
            .expect("reflection preserves validity")
    }
}

fn stability_level(n: usize, sorted: &[usize]) -> Option<usize> {
    if sorted.len() < 2 {
        return None;
    }
    let wrap = (sorted[0], sorted[sorted.len() - 1]);
    sorted
        .windows(2)
        .map(|w| (w[0], w[1]))
        .chain(std::iter::once(wrap))
        .map(|(a, b)| {
            let d = a.abs_diff(b);
            d.min(n - d)
        })
        .min()
}

pub fn is_r_stable(s: &StableSubset, r: usize) -> bool {
    s.is_r_stable(r)
}

pub fn characteristic_vector(s: &StableSubset) -> LatticePoint {
    s.characteristic_vector()
}

/// All r-stable k-subsets of `[n]` in lexicographic order.
///
/// Requires `0 < k < n` and `1 <= r <= floor(n/k)`.
pub fn enumerate_stable_subsets(n: usize, k: usize, r: usize) -> Result<Vec<StableSubset>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got n={n}, k={k}"
        )));
    }
    if r == 0 || r > n / k {
        return Err(Error::EmptyFamily { n, k, r });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    extend_stable(n, k, r, 1, &mut current, &mut out);
    Ok(out)
}

fn extend_stable(
    n: usize,
    k: usize,
    r: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<StableSubset>,
) {
    if current.len() == k {
        // wrap-around gap from the last element back to the first
        let first = current[0];
        let last = current[k - 1];
        if k == 1 || first + n - last >= r {
            out.push(StableSubset::new(n, current.iter().copied()).expect("valid subset"));
        }
        return;
    }
    let remaining = k - current.len();
    // the remaining elements need (remaining - 1) * r further positions
    let max_start = n.saturating_sub((remaining - 1) * r);
    for e in from..=max_start {
        current.push(e);
        extend_stable(n, k, r, e + r, current, out);
        current.pop();
    }
}

/// Characteristic vectors of all r-stable k-subsets, in enumeration order.
pub fn stable_vertices(n: usize, k: usize, r: usize) -> Result<Vec<LatticePoint>> {
    Ok(enumerate_stable_subsets(n, k, r)?
        .iter()
        .map(StableSubset::characteristic_vector)
        .collect())
}
