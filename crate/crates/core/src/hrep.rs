//! Closed-form H-representations of r-stable hypersimplices and their
//! verification against the facet oracle.
//!
//! For `1 < k < n-1` and `1 <= r < floor(n/k)` the facets inside the
//! hyperplane `Σ x_i = k` are the `n` coordinate halfspaces `x_ℓ >= 0` and
//! the `n` cyclic windows `x_ℓ + … + x_{ℓ+r-1} <= 1`. When `n = kr + 1` the
//! polytope is a simplex cut out by the windows alone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{
    brute_force_facets, AffineEquation, AffineHull, HPolytope, HalfSpace, VPolytope,
};
use crate::stable::stable_vertices;

/// The cyclic window `{ℓ, …, ℓ+width-1}` of `[n]`, 1-based.
pub fn window_indices(n: usize, l: usize, width: usize) -> Vec<usize> {
    (0..width).map(|i| (l - 1 + i) % n + 1).collect()
}

/// `Σ_{i ∈ window(ℓ, width)} x_i <= 1`.
pub fn window_halfspace(n: usize, l: usize, width: usize) -> HalfSpace {
    HalfSpace::indicator(n, window_indices(n, l, width), 1)
}

/// `x_ℓ >= 0`.
pub fn positivity_halfspace(n: usize, l: usize) -> HalfSpace {
    HalfSpace::lower_indicator(n, [l], 0)
}

/// The closed-form facet family, kept split by type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetFamily {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub positivity: Vec<HalfSpace>,
    pub windows: Vec<HalfSpace>,
    pub equation: AffineEquation,
}

impl FacetFamily {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        check_theorem_range(n, k, r)?;
        Ok(FacetFamily {
            n,
            k,
            r,
            positivity: (1..=n).map(|l| positivity_halfspace(n, l)).collect(),
            windows: (1..=n).map(|l| window_halfspace(n, l, r)).collect(),
            equation: AffineEquation::coordinate_sum(n, k as i64),
        })
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        let hs = self
            .positivity
            .iter()
            .chain(&self.windows)
            .cloned()
            .collect();
        HPolytope::new(self.n, hs, vec![self.equation.clone()]).expect("dimensions agree")
    }
}

fn check_theorem_range(n: usize, k: usize, r: usize) -> Result<()> {
    if !(1 < k && k + 1 < n) {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "the facet theorem needs 1 < k < n-1",
        ));
    }
    if r == 0 || r >= n / k {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "the facet theorem needs 1 <= r < floor(n/k)",
        ));
    }
    Ok(())
}

/// Σ x_i = k together with the `2n` facets `x_ℓ >= 0` and the width-`r` windows.
pub fn closed_form_hrep(n: usize, k: usize, r: usize) -> Result<HPolytope> {
    Ok(FacetFamily::new(n, k, r)?.to_hpolytope())
}

/// The simplex `n = kr + 1`: the `n` width-`r` windows only.
pub fn simplex_case_hrep(n: usize, k: usize, r: usize) -> Result<HPolytope> {
    if k == 0 || r == 0 || n != k * r + 1 {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "the simplex case needs n = kr + 1",
        ));
    }
    let hs = (1..=n).map(|l| window_halfspace(n, l, r)).collect();
    HPolytope::new(n, hs, vec![AffineEquation::coordinate_sum(n, k as i64)])
}

/// `k = 1` and `k = n-1`: the standard simplex, which is all of `Δ_{n,k}`.
/// Only the irredundant half of the `[0,1]` box is kept.
pub fn standard_simplex_hrep(n: usize, k: usize) -> Result<HPolytope> {
    let hs = if k == 1 {
        (1..=n).map(|l| positivity_halfspace(n, l)).collect()
    } else if k + 1 == n {
        (1..=n).map(|l| HalfSpace::indicator(n, [l], 1)).collect()
    } else {
        return Err(Error::unsupported(
            n,
            k,
            0,
            "not a standard simplex: need k = 1 or k = n-1",
        ));
    };
    HPolytope::new(n, hs, vec![AffineEquation::coordinate_sum(n, k as i64)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HrepSource {
    StandardSimplex,
    ClosedForm,
    SimplexCase,
    Empirical,
}

/// The H-representation used for `(n, k, r)` and where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub source: HrepSource,
    pub empirical: bool,
    pub polytope: HPolytope,
}

fn check_family(n: usize, k: usize, r: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got n={n}, k={k}"
        )));
    }
    if r == 0 || r > n / k {
        return Err(Error::EmptyFamily { n, k, r });
    }
    Ok(())
}

/// Facets of `Δ_{n,k}^{stab(r)}` for any admissible triple. Outside the
/// proven cases the oracle output is returned and flagged as empirical.
pub fn facets(n: usize, k: usize, r: usize) -> Result<FacetReport> {
    check_family(n, k, r)?;
    let (source, polytope) = if k == 1 || k + 1 == n {
        (HrepSource::StandardSimplex, standard_simplex_hrep(n, k)?)
    } else if n == k * r + 1 {
        (HrepSource::SimplexCase, simplex_case_hrep(n, k, r)?)
    } else if r < n / k {
        (HrepSource::ClosedForm, closed_form_hrep(n, k, r)?)
    } else {
        let v = stable_polytope(n, k, r)?;
        let hull = AffineHull::of_points(v.vertices())?;
        let hs = brute_force_facets(&v)?;
        (
            HrepSource::Empirical,
            HPolytope::new(n, hs, hull.equations())?,
        )
    };
    Ok(FacetReport {
        n,
        k,
        r,
        source,
        empirical: source == HrepSource::Empirical,
        polytope,
    })
}

/// `Δ_{n,k}^{stab(r)}` as a V-polytope on `Σ x_i = k`.
pub fn stable_polytope(n: usize, k: usize, r: usize) -> Result<VPolytope> {
    let verts = stable_vertices(n, k, r)?;
    VPolytope::new(n, verts, Some(AffineEquation::coordinate_sum(n, k as i64)))
}

/// Outcome of checking an H-representation against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HrepCertificate {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub source: HrepSource,
    pub vertex_count: usize,
    pub dimension: usize,
    pub expected_facet_count: usize,
    pub closed_form_facet_count: usize,
    pub oracle_facet_count: usize,
    /// closed-form halfspaces the oracle did not produce
    pub missing_from_oracle: Vec<String>,
    /// oracle facets absent from the closed form
    pub missing_from_closed_form: Vec<String>,
    /// `(vertex, halfspace)` pairs where the vertex violates the halfspace
    pub violations: Vec<String>,
    /// width `r-1` windows that showed up as oracle facets
    pub narrow_window_facets: Vec<String>,
    pub passed: bool,
}

fn check_against_oracle(
    n: usize,
    k: usize,
    r: usize,
    source: HrepSource,
    closed: &HPolytope,
    expected_facet_count: usize,
) -> Result<HrepCertificate> {
    let v = stable_polytope(n, k, r)?;
    let hull = AffineHull::from_equations(n, closed.equations())?;
    let oracle = brute_force_facets(&v)?;
    let dimension = crate::polytope::affine_dimension(v.vertices())?;
    let canon = closed.canonical_halfspaces()?;

    let missing_from_oracle = canon
        .iter()
        .filter(|h| oracle.binary_search(h).is_err())
        .map(ToString::to_string)
        .collect();
    let missing_from_closed_form = oracle
        .iter()
        .filter(|h| canon.binary_search(h).is_err())
        .map(ToString::to_string)
        .collect();

    let mut violations = Vec::new();
    for p in v.vertices() {
        for h in closed.halfspaces() {
            if !h.contains(p) {
                violations.push(format!("{:?} violates {h}", p.0));
            }
        }
        for e in closed.equations() {
            if !e.holds_at(p) {
                violations.push(format!("{:?} violates {e}", p.0));
            }
        }
    }

    let mut narrow_window_facets = Vec::new();
    if r > 1 {
        for l in 1..=n {
            let w = window_halfspace(n, l, r - 1);
            if let Some(c) = hull.canonicalize(&w) {
                if oracle.binary_search(&c).is_ok() {
                    narrow_window_facets.push(w.to_string());
                }
            }
        }
    }

    let mut cert = HrepCertificate {
        n,
        k,
        r,
        source,
        vertex_count: v.vertices().len(),
        dimension,
        expected_facet_count,
        closed_form_facet_count: canon.len(),
        oracle_facet_count: oracle.len(),
        missing_from_oracle,
        missing_from_closed_form,
        violations,
        narrow_window_facets,
        passed: false,
    };
    cert.passed = cert.missing_from_oracle.is_empty()
        && cert.missing_from_closed_form.is_empty()
        && cert.violations.is_empty()
        && cert.narrow_window_facets.is_empty()
        && cert.oracle_facet_count == expected_facet_count
        && cert.dimension + 1 == n;
    Ok(cert)
}

/// Compare [`closed_form_hrep`] with the oracle facets of the vertex set.
pub fn verify_hrep(n: usize, k: usize, r: usize) -> Result<HrepCertificate> {
    let closed = closed_form_hrep(n, k, r)?;
    check_against_oracle(n, k, r, HrepSource::ClosedForm, &closed, 2 * n)
}

/// Compare [`simplex_case_hrep`] with the oracle facets.
pub fn verify_simplex_case(n: usize, k: usize, r: usize) -> Result<HrepCertificate> {
    let closed = simplex_case_hrep(n, k, r)?;
    check_against_oracle(n, k, r, HrepSource::SimplexCase, &closed, n)
}
