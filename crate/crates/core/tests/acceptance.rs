//! Acceptance suite. One line per criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use stabhull::circuit::{
    construct_circuit_hl, construct_circuit_window, enumerate_minimal_circuits,
    enumerate_stable_circuits, MinimalCircuit,
};
use stabhull::ehrhart::{
    codegree, codegree_by_search, interior_point, is_gorenstein, projected_polytope,
    second_interior_point, stable_delta_vector, DeltaVector,
};
use stabhull::hrep::{closed_form_hrep, simplex_case_hrep, stable_polytope, window_halfspace};
use stabhull::polytope::dd::{brute_force_facets, facets_of_points, is_facet_of};
use stabhull::polytope::hull::{affine_dimension, AffineHull};
use stabhull::polytope::lattice::{count_interior_lattice_points, find_interior_lattice_point};
use stabhull::polytope::{relint_contains, RationalVector};
use stabhull::stable::{stable_vertices, LatticePoint};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// `1 < k < n-1`, `1 <= r < floor(n/k)`, `4 <= n <= max_n`.
fn grid(max_n: usize) -> Vec<(usize, usize, usize)> {
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

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: stabhull::error::Result<T>, ctx: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn facet_theorem() -> Outcome {
    let cells = grid(10);
    for &(n, k, r) in &cells {
        let ctx = format!("({n},{k},{r})");
        let closed = lib(closed_form_hrep(n, k, r), &ctx)?;
        let canon = lib(closed.canonical_halfspaces(), &ctx)?;
        let v = lib(stable_polytope(n, k, r), &ctx)?;
        let oracle = lib(brute_force_facets(&v), &ctx)?;
        ensure(canon == oracle, || {
            format!("{ctx}: closed form and oracle differ")
        })?;
        ensure(oracle.len() == 2 * n, || {
            format!("{ctx}: {} facets", oracle.len())
        })?;
        for h in closed.halfspaces() {
            ensure(is_facet_of(h, v.vertices(), n - 1), || {
                format!("{ctx}: {h} is not a facet")
            })?;
        }
    }
    Ok(format!("{} cells", cells.len()))
}

fn dimension() -> Outcome {
    let cells = grid(10);
    for &(n, k, r) in &cells {
        let verts = lib(stable_vertices(n, k, r), format!("({n},{k},{r})"))?;
        let d = lib(affine_dimension(&verts), format!("({n},{k},{r})"))?;
        ensure(d == n - 1, || format!("({n},{k},{r}): dimension {d}"))?;
    }
    Ok(format!("{} cells", cells.len()))
}

fn narrow_windows() -> Outcome {
    let cells: Vec<_> = grid(10).into_iter().filter(|c| c.2 >= 2).collect();
    for &(n, k, r) in &cells {
        let ctx = format!("({n},{k},{r})");
        let v = lib(stable_polytope(n, k, r), &ctx)?;
        let oracle = lib(brute_force_facets(&v), &ctx)?;
        let hull = lib(AffineHull::of_points(v.vertices()), &ctx)?;
        for l in 1..=n {
            let w = window_halfspace(n, l, r - 1);
            let as_facet = hull
                .canonicalize(&w)
                .is_some_and(|c| oracle.binary_search(&c).is_ok());
            ensure(!as_facet, || format!("{ctx}: {w} is a facet"))?;
            ensure(!is_facet_of(&w, v.vertices(), n - 1), || {
                format!("{ctx}: {w} is tight on a facet")
            })?;
        }
    }
    Ok(format!("{} cells", cells.len()))
}

fn simplex_case() -> Outcome {
    let mut cells = 0;
    for n in 3..=13usize {
        for k in 1..n {
            if (n - 1) % k != 0 {
                continue;
            }
            let r = (n - 1) / k;
            let ctx = format!("({n},{k},{r})");
            let h = lib(simplex_case_hrep(n, k, r), &ctx)?;
            ensure(h.halfspaces().len() == n, || {
                format!("{ctx}: {} inequalities", h.halfspaces().len())
            })?;
            let v = lib(stable_polytope(n, k, r), &ctx)?;
            ensure(v.vertices().len() == n, || {
                format!("{ctx}: {} vertices", v.vertices().len())
            })?;
            let oracle = lib(brute_force_facets(&v), &ctx)?;
            ensure(lib(h.canonical_halfspaces(), &ctx)? == oracle, || {
                format!("{ctx}: facets differ")
            })?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn triangulation() -> Outcome {
    let c42 = lib(enumerate_minimal_circuits(4, 2), "(4,2)")?;
    let d42 = lib(stable_delta_vector(4, 2, 1), "(4,2)")?;
    ensure(c42.len() == 4 && d42.coefficients() == [1, 2, 1, 0], || {
        format!(
            "(4,2): {} circuits, delta {:?}",
            c42.len(),
            d42.coefficients()
        )
    })?;
    let c52 = lib(enumerate_minimal_circuits(5, 2), "(5,2)")?;
    ensure(c52.len() == 11, || format!("(5,2): {} circuits", c52.len()))?;

    let mut families = 0;
    for n in 3..=7usize {
        for k in 1..n {
            let all = lib(enumerate_minimal_circuits(n, k), format!("({n},{k})"))?;
            ensure(all.iter().all(MinimalCircuit::is_unimodular), || {
                format!("({n},{k}): not unimodular")
            })?;
            let unit = all.iter().all(|c| {
                let d = c.projected_determinant();
                d == BigInt::from(1) || d == BigInt::from(-1)
            });
            ensure(unit, || format!("({n},{k}): determinant not ±1"))?;
            for r in (1..n).take_while(|&r| k * r < n) {
                let ctx = format!("({n},{k},{r})");
                let fam = lib(enumerate_stable_circuits(n, k, r), &ctx)?;
                let by_def = all.iter().filter(|c| c.is_r_stable(r)).count();
                let vol = lib(stable_delta_vector(n, k, r), &ctx)?.sum();
                ensure(fam.len() == by_def && fam.len() as u128 == vol, || {
                    format!(
                        "{ctx}: {} circuits, {by_def} by definition, volume {vol}",
                        fam.len()
                    )
                })?;
                families += 1;
            }
        }
    }
    Ok(format!("{families} families"))
}

fn constructions() -> Outcome {
    let c = lib(construct_circuit_hl(9, 3, 5), "(9,3,5)")?;
    let fig: Vec<LatticePoint> = [
        [1, 3, 6],
        [1, 3, 7],
        [1, 4, 7],
        [2, 4, 7],
        [2, 4, 8],
        [2, 4, 9],
        [2, 5, 9],
        [2, 6, 9],
        [3, 6, 9],
    ]
    .iter()
    .map(|s| {
        let mut v = vec![0; 9];
        for &i in s {
            v[i - 1] = 1;
        }
        LatticePoint(v)
    })
    .collect();
    ensure(c.vertices() == &fig[..], || {
        format!("(9,3,5): labels {:?}", c.labels())
    })?;
    let fam = lib(enumerate_stable_circuits(9, 3, 2), "(9,3,2)")?;
    ensure(fam.binary_search(&c).is_ok(), || {
        "(9,3,5): not in the restricted family".into()
    })?;
    let on: Vec<usize> = (0..9).filter(|&i| c.vertices()[i].0[4] == 1).collect();
    ensure(on.len() == 1, || {
        format!("(9,3,5): {} vertices with x_5 = 1", on.len())
    })?;

    let mut built = 0;
    for (n, k, r) in grid(10) {
        let ctx = format!("({n},{k},{r})");
        let fam = lib(enumerate_stable_circuits(n, k, r), &ctx)?;
        if r >= 2 {
            for l in 1..=n {
                let c = lib(construct_circuit_window(n, k, r, l), format!("{ctx} ℓ={l}"))?;
                let w = window_halfspace(n, l, r);
                let tight = c.vertices().iter().filter(|v| w.is_tight(v)).count();
                ensure(fam.binary_search(&c).is_ok() && tight == n - 1, || {
                    format!("{ctx} ℓ={l}: {tight} vertices on the window")
                })?;
                built += 1;
            }
        }
        if r == n / k - 1 {
            for l in 1..=n {
                let c = lib(construct_circuit_hl(n, k, l), format!("{ctx} ℓ={l}"))?;
                let hits = c.vertices().iter().filter(|v| v.0[l - 1] == 1).count();
                ensure(fam.binary_search(&c).is_ok() && hits == 1, || {
                    format!("{ctx} ℓ={l}: {hits} vertices with x_ℓ = 1")
                })?;
                built += 1;
            }
        }
    }
    Ok(format!("the (9,3,5) circuit and {built} constructed circuits"))
}

fn codegrees() -> Outcome {
    let cells = grid(10);
    for &(n, k, r) in &cells {
        let ctx = format!("({n},{k},{r})");
        let d = lib(stable_delta_vector(n, k, r), &ctx)?;
        let by_search = lib(
            codegree_by_search(&lib(projected_polytope(n, k, r), &ctx)?),
            &ctx,
        )?;
        let q = n.div_ceil(k);
        ensure(codegree(&d) == q && by_search == q, || {
            format!(
                "{ctx}: codegree {} by delta, {by_search} by search, expected {q}",
                codegree(&d)
            )
        })?;
    }
    Ok(format!("{} cells", cells.len()))
}

fn interior_points() -> Outcome {
    let cells = grid(10);
    let mut seconds = 0;
    for &(n, k, r) in &cells {
        let ctx = format!("({n},{k},{r})");
        let q = n.div_ceil(k);
        let qp = lib(projected_polytope(n, k, r), &ctx)?.dilate(q as i64);
        let w = lib(interior_point(n, k, r), &ctx)?;
        ensure(relint_contains(&qp, &RationalVector::from(&w)), || {
            format!("{ctx}: {:?} not interior", w.0)
        })?;
        if k * q - n >= 2 {
            let w2 = lib(second_interior_point(n, k, r), &ctx)?;
            ensure(
                w2 != w && relint_contains(&qp, &RationalVector::from(&w2)),
                || format!("{ctx}: second point {:?}", w2.0),
            )?;
            seconds += 1;
        }
    }
    Ok(format!(
        "{} cells, {seconds} with a second point",
        cells.len()
    ))
}

/// Reflexivity of `qP - w` decided from the oracle facets of the projected
/// vertex set, independently of the closed-form description.
fn reflexive_by_oracle(n: usize, k: usize, r: usize) -> Result<bool, String> {
    let ctx = format!("({n},{k},{r})");
    let p = lib(projected_polytope(n, k, r), &ctx)?;
    let q = lib(codegree_by_search(&p), &ctx)?;
    let qp = p.dilate(q as i64);
    if lib(count_interior_lattice_points(&p, q as u64), &ctx)? != 1 {
        return Ok(false);
    }
    let w = lib(find_interior_lattice_point(&p, q as u64), &ctx)?
        .ok_or(format!("{ctx}: no interior point"))?;
    ensure(qp.contains(&w), || format!("{ctx}: interior point outside"))?;
    let shifted: Vec<LatticePoint> = lib(stable_vertices(n, k, r), &ctx)?
        .iter()
        .map(|v| LatticePoint((0..n - 1).map(|i| q as i64 * v.0[i] - w.0[i]).collect()))
        .collect();
    let facets = lib(facets_of_points(&shifted), &ctx)?;
    Ok(facets.iter().all(|h| *h.offset() == BigInt::from(1)))
}

fn gorenstein() -> Outcome {
    let cells = grid(12);
    for &(n, k, r) in &cells {
        let ctx = format!("({n},{k},{r})");
        let report = lib(is_gorenstein(n, k, r), &ctx)?;
        let oracle = reflexive_by_oracle(n, k, r)?;
        let closed = n == k * r + k;
        ensure(
            report.gorenstein == closed && oracle == closed && report.closed_form_verdict == closed,
            || {
                format!(
                    "{ctx}: report {}, oracle {oracle}, closed form {closed}",
                    report.gorenstein
                )
            },
        )?;
    }
    let witnesses = [
        ((4, 2, 1), true),
        ((6, 2, 2), true),
        ((6, 3, 1), true),
        ((8, 2, 3), true),
        ((12, 3, 3), true),
        ((5, 2, 1), false),
        ((7, 3, 1), false),
        ((9, 2, 3), false),
    ];
    for ((n, k, r), expect) in witnesses {
        let g = lib(is_gorenstein(n, k, r), format!("({n},{k},{r})"))?.gorenstein;
        ensure(g == expect, || format!("witness ({n},{k},{r}): {g}"))?;
    }
    Ok(format!(
        "{} cells, {} witnesses",
        cells.len(),
        witnesses.len()
    ))
}

fn unimodality() -> Outcome {
    let mut gorenstein_cells = 0;
    let mut pairs = 0;
    for n in 4..=12usize {
        for k in 2..n - 1 {
            let mut prev: Option<DeltaVector> = None;
            for r in 1..n / k {
                let ctx = format!("({n},{k},{r})");
                let d = lib(stable_delta_vector(n, k, r), &ctx)?;
                let c = d.coefficients();
                if n == k * r + k {
                    let deg = c.iter().rposition(|&x| x != 0).unwrap_or(0);
                    let body = &c[..=deg];
                    let palin = body.iter().eq(body.iter().rev());
                    let peak = body
                        .iter()
                        .enumerate()
                        .max_by_key(|&(i, x)| (*x, std::cmp::Reverse(i)))
                        .map_or(0, |p| p.0);
                    let unimodal = body[..=peak].windows(2).all(|w| w[0] <= w[1])
                        && body[peak..].windows(2).all(|w| w[0] >= w[1]);
                    ensure(palin && unimodal, || format!("{ctx}: delta {c:?}"))?;
                    gorenstein_cells += 1;
                }
                if let Some(p) = &prev {
                    let below = c.iter().zip(p.coefficients()).all(|(a, b)| a <= b);
                    ensure(below, || {
                        format!("{ctx}: {c:?} not below {:?}", p.coefficients())
                    })?;
                    pairs += 1;
                }
                prev = Some(d);
            }
        }
    }
    Ok(format!(
        "{gorenstein_cells} Gorenstein cells, {pairs} chain steps"
    ))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_stabhull"))
            .args(["verify", "--max-n", "8"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.success() && b.status.success(), || {
        format!("exit status {:?} / {:?}", a.status, b.status)
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
        "outputs differ".into()
    })?;
    Ok(format!("{} bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("facet theorem", facet_theorem),
        ("dimension", dimension),
        ("narrow windows are not facets", narrow_windows),
        ("simplex case", simplex_case),
        ("triangulation", triangulation),
        ("explicit constructions", constructions),
        ("codegree", codegrees),
        ("interior points", interior_points),
        ("gorenstein classification", gorenstein),
        ("unimodality and monotonicity", unimodality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
