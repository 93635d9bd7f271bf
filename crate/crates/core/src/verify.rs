//! Grid verification: every closed-form statement checked against the
//! oracles for all admissible `(n, k, r)` up to a bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{
    construct_circuit_hl, construct_circuit_window, enumerate_stable_circuits, MinimalCircuit,
};
use crate::ehrhart::{
    codegree_and_alpha, gorenstein_report, interior_point, second_interior_point,
    stable_delta_vector, DeltaVector,
};
use crate::error::Result;
use crate::hrep::{verify_hrep, verify_simplex_case, window_indices};
use crate::polytope::{relint_contains, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub checks: Vec<Check>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub max_circuit_n: usize,
    /// cells of the facet theorem grid
    pub cells: Vec<CellReport>,
    /// cells with `n = kr + 1`
    pub simplex_cells: Vec<CellReport>,
    pub checks_run: usize,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_n: usize,
    /// circuit enumeration bound (the triangulation checks)
    pub max_circuit_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 8,
            max_circuit_n: 7,
        }
    }
}

/// `4 <= n <= max_n`, `1 < k < n-1`, `1 <= r < floor(n/k)`, sorted.
pub fn theorem_grid(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for k in 2..n - 1 {
            for r in 1..n / k {
                out.push((n, k, r));
            }
        }
    }
    out
}

/// `n = kr + 1` with `3 <= n <= max_n`, sorted.
pub fn simplex_grid(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 1..n {
            if (n - 1) % k == 0 {
                out.push((n, k, (n - 1) / k));
            }
        }
    }
    out
}

fn fmt_delta(d: &DeltaVector) -> String {
    let c: Vec<String> = d.coefficients().iter().map(ToString::to_string).collect();
    format!("({})", c.join(","))
}

/// Is `c` in the r-stable restricted family? Uses the enumerated family
/// when given, else the definition (a valid canonical circuit, r-stable).
fn in_family(c: &MinimalCircuit, family: Option<&[MinimalCircuit]>, r: usize) -> bool {
    match family {
        Some(f) => f.binary_search(c).is_ok(),
        None => c.is_r_stable(r),
    }
}

fn chain_checks(n: usize, k: usize, opts: VerifyOptions) -> Vec<CellReport> {
    let rs: Vec<usize> = (1..n / k).collect();
    let deltas: Vec<Result<DeltaVector>> =
        rs.iter().map(|&r| stable_delta_vector(n, k, r)).collect();
    rs.iter()
        .map(|&r| {
            let delta = &deltas[r - 1];
            let mut checks = Vec::new();

            let cert = verify_hrep(n, k, r);
            checks.push(Check::from_result(
                "facets",
                cert.as_ref().map_err(Clone::clone).map(|c| {
                    let ok = c.missing_from_oracle.is_empty()
                        && c.missing_from_closed_form.is_empty()
                        && c.violations.is_empty()
                        && c.oracle_facet_count == 2 * n;
                    (
                        ok,
                        format!(
                            "{} oracle facets, {} closed-form",
                            c.oracle_facet_count, c.closed_form_facet_count
                        ),
                    )
                }),
            ));
            checks.push(Check::from_result(
                "dimension",
                cert.as_ref()
                    .map_err(Clone::clone)
                    .map(|c| (c.dimension + 1 == n, format!("dimension {}", c.dimension))),
            ));
            if r > 1 {
                checks.push(Check::from_result(
                    "narrow-windows",
                    cert.as_ref().map_err(Clone::clone).map(|c| {
                        (
                            c.narrow_window_facets.is_empty(),
                            c.narrow_window_facets.join("; "),
                        )
                    }),
                ));
            }

            let (q, alpha) = codegree_and_alpha(n, k);
            checks.push(Check::from_result(
                "codegree",
                delta.as_ref().map_err(Clone::clone).map(|d| {
                    (
                        d.codegree() == q,
                        format!(
                            "delta {} codegree {} expected {q}",
                            fmt_delta(d),
                            d.codegree()
                        ),
                    )
                }),
            ));

            checks.push(Check::from_result(
                "interior-points",
                interior_checks(n, k, r, q, alpha),
            ));

            let report = delta
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|d| gorenstein_report(n, k, r, d.clone()));
            checks.push(Check::from_result(
                "gorenstein",
                report.as_ref().map_err(Clone::clone).map(|g| {
                    (
                        g.gorenstein == (n == k * r + k),
                        format!(
                            "gorenstein {} reflexive {} route {:?}",
                            g.gorenstein, g.reflexive, g.route
                        ),
                    )
                }),
            ));
            if let Ok(g) = &report {
                if g.gorenstein {
                    checks.push(Check::new(
                        "palindromic-unimodal",
                        g.palindromic && g.unimodal && g.interior_lattice_points == 1,
                        format!(
                            "palindromic {} unimodal {} interior points {}",
                            g.palindromic, g.unimodal, g.interior_lattice_points
                        ),
                    ));
                }
            }
            if r > 1 {
                let prev = &deltas[r - 2];
                let mono = match (delta, prev) {
                    (Ok(d), Ok(p)) => Ok((
                        d.dominated_by(p),
                        format!("{} <= {}", fmt_delta(d), fmt_delta(p)),
                    )),
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                };
                checks.push(Check::from_result("monotone", mono));
            }

            let need_family = n <= opts.max_circuit_n || r > 1;
            let family = if need_family {
                Some(enumerate_stable_circuits(n, k, r))
            } else {
                None
            };
            if n <= opts.max_circuit_n {
                let fam = family.as_ref().expect("enumerated");
                let tri = match (fam, delta) {
                    (Ok(f), Ok(d)) => Ok((
                        f.iter().all(MinimalCircuit::is_unimodular) && f.len() as u128 == d.sum(),
                        format!("{} circuits, normalized volume {}", f.len(), d.sum()),
                    )),
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                };
                checks.push(Check::from_result("triangulation", tri));
            }
            let fam_slice = match &family {
                Some(Ok(f)) => Some(f.as_slice()),
                _ => None,
            };
            if r > 1 {
                checks.push(Check::from_result(
                    "window-circuits",
                    window_checks(n, k, r, fam_slice),
                ));
            }
            if n / k >= 2 && r == n / k - 1 {
                checks.push(Check::from_result(
                    "hl-circuits",
                    hl_checks(n, k, r, fam_slice),
                ));
            }
            CellReport { n, k, r, checks }
        })
        .collect()
}

fn interior_checks(n: usize, k: usize, r: usize, q: usize, alpha: usize) -> Result<(bool, String)> {
    let qp = crate::ehrhart::projected_polytope(n, k, r)?.dilate(q as i64);
    let w = interior_point(n, k, r)?;
    let mut ok = relint_contains(&qp, &RationalVector::from(&w));
    let mut detail = format!("alpha {alpha} point {:?}", w.0);
    if alpha >= 2 {
        let w2 = second_interior_point(n, k, r)?;
        ok &= w2 != w && relint_contains(&qp, &RationalVector::from(&w2));
        detail.push_str(&format!(" second {:?}", w2.0));
    }
    Ok((ok, detail))
}

fn window_checks(
    n: usize,
    k: usize,
    r: usize,
    family: Option<&[MinimalCircuit]>,
) -> Result<(bool, String)> {
    for l in 1..=n {
        let c = construct_circuit_window(n, k, r, l)?;
        let w = window_indices(n, l, r);
        let on = c
            .vertices()
            .iter()
            .filter(|v| w.iter().map(|&i| v.0[i - 1]).sum::<i64>() == 1)
            .count();
        if !in_family(&c, family, r) || on + 1 != n {
            return Ok((
                false,
                format!(
                    "ℓ = {l}: {} vertices on the window, labels {:?}",
                    on,
                    c.labels()
                ),
            ));
        }
    }
    Ok((true, format!("{n} circuits")))
}

fn hl_checks(
    n: usize,
    k: usize,
    r: usize,
    family: Option<&[MinimalCircuit]>,
) -> Result<(bool, String)> {
    for l in 1..=n {
        let c = construct_circuit_hl(n, k, l)?;
        let hits = c.vertices().iter().filter(|v| v.0[l - 1] == 1).count();
        if !in_family(&c, family, r) || hits != 1 {
            return Ok((
                false,
                format!(
                    "ℓ = {l}: {hits} vertices with x_ℓ = 1, labels {:?}",
                    c.labels()
                ),
            ));
        }
    }
    Ok((true, format!("{n} circuits")))
}

fn simplex_check(n: usize, k: usize, r: usize) -> CellReport {
    let check = Check::from_result(
        "simplex-case",
        verify_simplex_case(n, k, r)
            .map(|c| (c.passed, format!("{} oracle facets", c.oracle_facet_count))),
    );
    CellReport {
        n,
        k,
        r,
        checks: vec![check],
    }
}

/// Run every check up to `opts.max_n`. Output order is the sorted
/// parameter order regardless of scheduling.
pub fn run_verify(opts: VerifyOptions) -> VerifyReport {
    let mut chains: Vec<(usize, usize)> = theorem_grid(opts.max_n)
        .iter()
        .map(|&(n, k, _)| (n, k))
        .collect();
    chains.dedup();
    let cells: Vec<CellReport> = chains
        .par_iter()
        .map(|&(n, k)| chain_checks(n, k, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let simplex_cells: Vec<CellReport> = simplex_grid(opts.max_n)
        .par_iter()
        .map(|&(n, k, r)| simplex_check(n, k, r))
        .collect();
    let all = cells.iter().chain(&simplex_cells).flat_map(|c| &c.checks);
    let checks_run = all.clone().count();
    let failures = all.filter(|c| !c.passed).count();
    VerifyReport {
        max_n: opts.max_n,
        max_circuit_n: opts.max_circuit_n,
        cells,
        simplex_cells,
        checks_run,
        failures,
        passed: failures == 0,
    }
}
