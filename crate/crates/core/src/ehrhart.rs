//! Ehrhart δ-vectors, codegree, interior lattice points and the Gorenstein
//! property of r-stable hypersimplices.
//!
//! Everything is computed on the full-dimensional image `P_{n,k}^{stab(r)}`
//! in `R^{n-1}` obtained by deleting the last coordinate.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hrep::{self, window_indices};
use crate::polytope::{
    count_interior_lattice_points, count_lattice_points, find_interior_lattice_point,
    project_hpolytope_phi_inverse, relint_contains, AffineHull, HPolytope, HalfSpace,
    RationalVector, VPolytope,
};
use crate::stable::LatticePoint;

/// Coefficients of `δ(z)` in `Σ_t L(t) z^t = δ(z) / (1 - z)^{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaVector {
    coefficients: Vec<u128>,
    dimension: usize,
    degree: usize,
    codegree: usize,
}

impl DeltaVector {
    pub fn new(coefficients: Vec<u128>) -> Result<Self> {
        match coefficients.first() {
            None => return Err(Error::InvalidArgument("empty δ-vector".into())),
            Some(&c) if c != 1 => {
                return Err(Error::InvalidArgument(format!("δ_0 must be 1, got {c}")))
            }
            _ => {}
        }
        let dimension = coefficients.len() - 1;
        let degree = coefficients.iter().rposition(|&c| c != 0).expect("δ_0 = 1");
        Ok(DeltaVector {
            coefficients,
            dimension,
            degree,
            codegree: dimension + 1 - degree,
        })
    }

    pub fn coefficients(&self) -> &[u128] {
        &self.coefficients
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn codegree(&self) -> usize {
        self.codegree
    }

    /// Normalized volume.
    pub fn sum(&self) -> u128 {
        self.coefficients.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let s = self.degree;
        (0..=s).all(|i| self.coefficients[i] == self.coefficients[s - i])
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.coefficients[..=self.degree])
    }

    /// Coordinatewise `self <= other` (dimensions must agree).
    pub fn dominated_by(&self, other: &DeltaVector) -> bool {
        self.dimension == other.dimension
            && self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .all(|(a, b)| a <= b)
    }
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(xs: &[u128]) -> bool {
    let mut i = 1;
    while i < xs.len() && xs[i] >= xs[i - 1] {
        i += 1;
    }
    while i < xs.len() && xs[i] <= xs[i - 1] {
        i += 1;
    }
    i >= xs.len()
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// δ from the counts `L(0), …, L(d)`:
/// `δ_j = Σ_{i=0}^{j} (-1)^i C(d+1, i) L(j-i)`.
pub fn delta_from_counts(counts: &[u128]) -> Result<DeltaVector> {
    if counts.is_empty() {
        return Err(Error::InvalidArgument("need L(0..d)".into()));
    }
    let d = counts.len() - 1;
    let mut coeffs = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc: i128 = 0;
        for i in 0..=j {
            let l = i128::try_from(counts[j - i]).map_err(|_| Error::Overflow)?;
            let term = binomial(d + 1, i).checked_mul(l).ok_or(Error::Overflow)?;
            acc = if i % 2 == 0 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            }
            .ok_or(Error::Overflow)?;
        }
        if acc < 0 {
            return Err(Error::Inconsistent(format!(
                "negative δ_{j} = {acc}: counts are not an Ehrhart sequence"
            )));
        }
        coeffs.push(acc as u128);
    }
    DeltaVector::new(coeffs)
}

/// δ-vector of a full-dimensional lattice polytope given by halfspaces.
/// The halfspaces must have integer data and the vertices must be integral.
pub fn delta_vector(p: &HPolytope) -> Result<DeltaVector> {
    if !p.equations().is_empty() {
        return Err(Error::InvalidArgument(
            "δ-vector needs a full-dimensional polytope without equations".into(),
        ));
    }
    let d = p.dim();
    let counts = (0..=d as u64)
        .into_par_iter()
        .map(|t| count_lattice_points(p, t))
        .collect::<Result<Vec<u128>>>()?;
    delta_from_counts(&counts)
}

/// δ-vector of `conv(vertices)`, which must be full-dimensional.
pub fn delta_vector_of_vertices(p: &VPolytope) -> Result<DeltaVector> {
    let hull = AffineHull::of_points(p.vertices())?;
    if hull.dimension() != p.dim() {
        return Err(Error::Degenerate(format!(
            "dimension {} in R^{}",
            hull.dimension(),
            p.dim()
        )));
    }
    let facets = crate::polytope::brute_force_facets(p)?;
    delta_vector(&HPolytope::new(p.dim(), facets, Vec::new())?)
}

/// `P_{n,k}^{stab(r)}` in `R^{n-1}`. Errors when it is not full-dimensional.
pub fn projected_polytope(n: usize, k: usize, r: usize) -> Result<HPolytope> {
    let rep = hrep::facets(n, k, r)?;
    let p = &rep.polytope;
    if p.equations().len() != 1 || p.equations()[0].coordinate_sum_value().is_none() {
        return Err(Error::Degenerate(format!(
            "Δ_{{{n},{k}}}^{{stab({r})}} is not (n-1)-dimensional"
        )));
    }
    project_hpolytope_phi_inverse(p)
}

/// [`projected_polytope`] plus the valid inequalities `0 <= x_i <= 1` and
/// `k-1 <= Σ x_i <= k`. They change no lattice point of any dilate or its
/// interior, but they keep the counting box finite when the facets alone
/// (the simplex case, say) defeat interval propagation.
fn counting_polytope(n: usize, k: usize, r: usize) -> Result<HPolytope> {
    let p = projected_polytope(n, k, r)?;
    let d = n - 1;
    let mut hs = p.halfspaces().to_vec();
    for i in 0..d {
        hs.push(HalfSpace::indicator(d, [i + 1], 1));
        hs.push(HalfSpace::lower_indicator(d, [i + 1], 0));
    }
    hs.push(HalfSpace::indicator(d, 1..=d, k as i64));
    hs.push(HalfSpace::lower_indicator(d, 1..=d, k as i64 - 1));
    HPolytope::new(d, hs, Vec::new())
}

/// δ-vector of `P_{n,k}^{stab(r)}`.
pub fn stable_delta_vector(n: usize, k: usize, r: usize) -> Result<DeltaVector> {
    delta_vector(&counting_polytope(n, k, r)?)
}

/// `d + 1 - deg δ`.
pub fn codegree(d: &DeltaVector) -> usize {
    d.codegree()
}

/// The least `t >= 1` such that `relint(tP)` contains a lattice point.
pub fn codegree_by_search(p: &HPolytope) -> Result<usize> {
    for t in 1..=p.dim() as u64 + 1 {
        if find_interior_lattice_point(p, t)?.is_some() {
            return Ok(t as usize);
        }
    }
    Err(Error::Degenerate(
        "no interior lattice point up to t = d+1".into(),
    ))
}

/// `(q, α) = (⌈n/k⌉, kq - n)`.
pub fn codegree_and_alpha(n: usize, k: usize) -> (usize, usize) {
    let q = n.div_ceil(k);
    (q, k * q - n)
}

fn check_theorem_range(n: usize, k: usize, r: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got n={n}, k={k}"
        )));
    }
    if r == 0 || r >= n / k {
        return Err(Error::unsupported(n, k, r, "need 1 <= r < floor(n/k)"));
    }
    Ok(())
}

/// The 0/1 vector `χ{n - sR : s ∈ [k-1]}` with `R = floor(n/k) - 1`, with the
/// entries for `s = α+1, …, k-1` cleared.
fn alpha_vertex(n: usize, k: usize) -> Vec<i64> {
    let big_r = n / k - 1;
    let (_, alpha) = codegree_and_alpha(n, k);
    let mut v = vec![0i64; n];
    for s in 1..k {
        if s <= alpha {
            v[n - s * big_r - 1] = 1;
        }
    }
    v
}

/// Add 1 everywhere and drop the last entry. The last entry of the lifted
/// point would be `kq` minus the rest, which the projection forgets.
fn lift_to_interior(v: &[i64], n: usize) -> LatticePoint {
    LatticePoint(v[..n - 1].iter().map(|x| x + 1).collect())
}

/// A lattice point in `relint(q·P_{n,k}^{stab(r)})`, `q = ⌈n/k⌉`.
pub fn interior_point(n: usize, k: usize, r: usize) -> Result<LatticePoint> {
    check_theorem_range(n, k, r)?;
    let (_, alpha) = codegree_and_alpha(n, k);
    if alpha <= 1 {
        return Ok(LatticePoint(vec![1; n - 1]));
    }
    Ok(lift_to_interior(&alpha_vertex(n, k), n))
}

/// For `α >= 2`, a second lattice point in `relint(qP)`: the same recipe
/// applied to the cyclic left shift of the 0/1 vector.
pub fn second_interior_point(n: usize, k: usize, r: usize) -> Result<LatticePoint> {
    check_theorem_range(n, k, r)?;
    let (_, alpha) = codegree_and_alpha(n, k);
    if alpha < 2 {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "a second interior point needs α >= 2",
        ));
    }
    let mut v = alpha_vertex(n, k);
    v.rotate_left(1);
    Ok(lift_to_interior(&v, n))
}

/// `Q = q·P_{n,k}^{stab(r)} - (1, …, 1)` in `R^{n-1}`, written with the
/// four hyperplane families of its facets.
pub fn translated_q(n: usize, k: usize, r: usize) -> Result<HPolytope> {
    check_theorem_range(n, k, r)?;
    if !(1 < k && k + 1 < n) {
        return Err(Error::unsupported(n, k, r, "need 1 < k < n-1"));
    }
    let (q, alpha) = codegree_and_alpha(n, k);
    if alpha >= 2 {
        return Err(Error::unsupported(
            n,
            k,
            r,
            "Q is only built for α ∈ {0, 1}",
        ));
    }
    let (n_i, k_i, q_i, r_i) = (n as i64, k as i64, q as i64, r as i64);
    let d = n - 1;
    let mut hs = Vec::with_capacity(2 * n);
    for i in 1..=d {
        hs.push(HalfSpace::lower_indicator(d, [i], -1));
    }
    hs.push(HalfSpace::indicator(d, 1..=d, k_i * q_i - (n_i - 1)));
    for l in 1..=n {
        let t = window_indices(n, l, r);
        if t.contains(&n) {
            let comp = (1..n).filter(|i| !t.contains(i));
            hs.push(HalfSpace::lower_indicator(
                d,
                comp,
                (k_i - 1) * q_i - (n_i - r_i),
            ));
        } else {
            hs.push(HalfSpace::indicator(d, t, q_i - r_i));
        }
    }
    HPolytope::new(d, hs, Vec::new())
}

/// Every halfspace has a primitive normal and offset 1. The halfspaces
/// must be the facets; the origin must lie in the interior.
pub fn is_reflexive(q: &HPolytope) -> Result<bool> {
    if !q.equations().is_empty() {
        return Err(Error::InvalidArgument(
            "reflexivity needs a full-dimensional polytope".into(),
        ));
    }
    let origin = RationalVector::from(&LatticePoint::zeros(q.dim()));
    if !relint_contains(q, &origin) {
        return Err(Error::InvalidArgument(
            "the origin is not an interior point".into(),
        ));
    }
    Ok(q.halfspaces()
        .iter()
        .all(|h| h.normal_is_primitive() && *h.offset() == 1.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GorensteinRoute {
    /// `k = 1` or `k = n-1`
    StandardSimplex,
    /// `α >= 2`: two interior lattice points in `qP`
    TwoInteriorPoints,
    /// `α ∈ {0, 1}`: reflexivity of the translated dilate
    Reflexivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub route: GorensteinRoute,
    /// least dilation with an interior lattice point, found by search
    pub codegree: usize,
    /// `kq - n`; not defined for the standard simplices
    pub alpha: Option<usize>,
    pub interior_point: LatticePoint,
    pub second_interior_point: Option<LatticePoint>,
    /// `|relint(qP) ∩ Z^{n-1}|`
    pub interior_lattice_points: u128,
    /// whether `qP` minus the interior point is reflexive
    pub reflexive: bool,
    /// `n = kr + k` (always true for the standard simplices)
    pub closed_form_verdict: bool,
    pub gorenstein: bool,
    pub delta: DeltaVector,
    pub palindromic: bool,
    pub unimodal: bool,
}

/// Decide whether `P_{n,k}^{stab(r)}` is Gorenstein, computing the verdict
/// independently of the closed form and failing with a mismatch when they
/// disagree.
pub fn is_gorenstein(n: usize, k: usize, r: usize) -> Result<GorensteinReport> {
    check_gorenstein_range(n, k, r)?;
    let delta = stable_delta_vector(n, k, r)?;
    gorenstein_report(n, k, r, delta)
}

fn check_gorenstein_range(n: usize, k: usize, r: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k < n, got n={n}, k={k}"
        )));
    }
    if k == 1 || k + 1 == n {
        if r == 0 || r > n / k {
            return Err(Error::unsupported(n, k, r, "r out of range"));
        }
        return Ok(());
    }
    check_theorem_range(n, k, r)
}

/// [`is_gorenstein`] with the δ-vector already computed.
pub fn gorenstein_report(
    n: usize,
    k: usize,
    r: usize,
    delta: DeltaVector,
) -> Result<GorensteinReport> {
    check_gorenstein_range(n, k, r)?;
    let standard = k == 1 || k + 1 == n;
    let p = projected_polytope(n, k, r)?;
    let codegree = codegree_by_search(&p)?;
    // the standard simplex of dimension n-1 has codegree n
    let (q, alpha) = if standard {
        (n, None)
    } else {
        let (q, a) = codegree_and_alpha(n, k);
        (q, Some(a))
    };
    if codegree != q || delta.codegree() != q {
        return Err(Error::Mismatch(format!(
            "codegree of ({n},{k},{r}): search {codegree}, δ {}, expected {q}",
            delta.codegree()
        )));
    }
    let qp = p.dilate(q as i64);
    let interior_lattice_points = count_interior_lattice_points(&p, q as u64)?;

    let (route, interior, second) = if standard {
        let w = find_interior_lattice_point(&p, q as u64)?.expect("codegree found one");
        (GorensteinRoute::StandardSimplex, w, None)
    } else if alpha.is_some_and(|a| a >= 2) {
        let w = interior_point(n, k, r)?;
        let w2 = second_interior_point(n, k, r)?;
        (GorensteinRoute::TwoInteriorPoints, w, Some(w2))
    } else {
        (GorensteinRoute::Reflexivity, interior_point(n, k, r)?, None)
    };
    for w in std::iter::once(&interior).chain(&second) {
        if !relint_contains(&qp, &RationalVector::from(w)) {
            return Err(Error::Mismatch(format!(
                "{:?} is not interior to {q}P",
                w.0
            )));
        }
    }
    if second.as_ref() == Some(&interior) {
        return Err(Error::Mismatch("the two interior points coincide".into()));
    }

    let reflexive = is_reflexive(&qp.translate(&interior)?)?;
    let gorenstein = match route {
        GorensteinRoute::StandardSimplex => reflexive,
        GorensteinRoute::TwoInteriorPoints => false,
        GorensteinRoute::Reflexivity => {
            let translated = translated_q(n, k, r)?;
            if translated != qp.translate(&interior)? {
                return Err(Error::Mismatch(format!(
                    "the facet list of Q for ({n},{k},{r}) differs from qP - 1"
                )));
            }
            is_reflexive(&translated)?
        }
    };
    let closed_form_verdict = standard || n == k * r + k;
    if gorenstein != closed_form_verdict || gorenstein != reflexive {
        return Err(Error::Mismatch(format!(
            "Gorenstein verdicts for ({n},{k},{r}): computed {gorenstein}, reflexive {reflexive}, closed form {closed_form_verdict}"
        )));
    }
    Ok(GorensteinReport {
        n,
        k,
        r,
        route,
        codegree,
        alpha,
        interior_point: interior,
        second_interior_point: second,
        interior_lattice_points,
        reflexive,
        closed_form_verdict,
        gorenstein,
        palindromic: delta.is_palindromic(),
        unimodal: delta.is_unimodal(),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hrep::stable_polytope;
    use crate::polytope::project_phi_inverse;

    #[test]
    fn simplex_cases_are_unimodular_simplices() {
        // n = kr + 1: the hull of n affinely independent 0/1 points
        for (n, k, r) in [(5, 2, 2), (7, 3, 2), (7, 2, 3), (9, 4, 2)] {
            let d = stable_delta_vector(n, k, r).unwrap();
            assert_eq!(d.sum(), 1, "({n},{k},{r})");
            assert_eq!(d.codegree(), n);
        }
    }

    fn dv(c: &[u128]) -> DeltaVector {
        DeltaVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn delta_of_p42() {
        let d = stable_delta_vector(4, 2, 1).unwrap();
        assert_eq!(d.coefficients(), &[1, 2, 1, 0]);
        assert_eq!(d.codegree(), 2);
        assert_eq!(codegree(&d), 2);
        assert!(d.is_unimodal() && d.is_palindromic());
        assert_eq!(delta_from_counts(&[1, 6, 19, 44]).unwrap(), d);
    }

    #[test]
    fn delta_of_standard_simplex() {
        for n in 2..=7 {
            let d = stable_delta_vector(n, 1, 1).unwrap();
            let mut e = vec![0u128; n];
            e[0] = 1;
            assert_eq!(d.coefficients(), &e[..]);
            assert_eq!(d.codegree(), n);
        }
        // the unit segment first has an interior lattice point at t = 2
        assert_eq!(dv(&[1, 0]).codegree(), 2);
    }

    #[test]
    fn delta_from_vertices_agrees() {
        for (n, k, r) in [(5, 2, 1), (6, 2, 2), (7, 3, 1), (7, 2, 2)] {
            let proj = project_phi_inverse(&stable_polytope(n, k, r).unwrap()).unwrap();
            let d = delta_vector_of_vertices(&proj.polytope).unwrap();
            assert_eq!(d, stable_delta_vector(n, k, r).unwrap());
            // δ_1 = |P ∩ Z| - (d + 1): the only lattice points are the vertices
            assert_eq!(
                d.coefficients()[1] as usize,
                proj.polytope.vertices().len() - n
            );
        }
    }

    #[test]
    fn validation() {
        assert!(DeltaVector::new(vec![]).is_err());
        assert!(DeltaVector::new(vec![2, 1]).is_err());
        assert!(matches!(
            delta_from_counts(&[1, 1, 5]),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 2, 1, 0]));
        assert!(!is_unimodal(&[1, 0, 2]));
        assert!(is_unimodal(&[1, 0, 0, 0]));
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(!dv(&[1, 0, 2]).is_unimodal());
        assert!(!dv(&[1, 0, 2]).is_palindromic());
    }

    #[test]
    fn codegree_matches_search() {
        for (n, k, r) in [(4, 2, 1), (5, 2, 1), (7, 3, 1), (7, 2, 2), (8, 3, 1)] {
            let p = projected_polytope(n, k, r).unwrap();
            let d = delta_vector(&p).unwrap();
            assert_eq!(d.codegree(), codegree_by_search(&p).unwrap());
            assert_eq!(d.codegree(), n.div_ceil(k));
        }
    }

    #[test]
    fn interior_points() {
        assert_eq!(interior_point(6, 2, 2).unwrap(), LatticePoint(vec![1; 5]));
        assert_eq!(interior_point(5, 2, 1).unwrap(), LatticePoint(vec![1; 4]));
        assert_eq!(
            interior_point(7, 3, 1).unwrap(),
            LatticePoint(vec![1, 1, 1, 1, 2, 2])
        );
        let w2 = second_interior_point(7, 3, 1).unwrap();
        assert_eq!(w2, LatticePoint(vec![1, 1, 1, 2, 2, 1]));
        let qp = projected_polytope(7, 3, 1).unwrap().dilate(3);
        assert!(relint_contains(&qp, &RationalVector::from(&w2)));
        assert!(relint_contains(
            &qp,
            &RationalVector::from(&interior_point(7, 3, 1).unwrap())
        ));
        assert!(second_interior_point(6, 2, 2).is_err());
        assert!(interior_point(6, 2, 3).is_err());
    }

    #[test]
    fn translated_q_examples() {
        let q = translated_q(4, 2, 1).unwrap();
        assert_eq!(q.halfspaces().len(), 8);
        assert!(q.halfspaces().contains(&HalfSpace::from_i64(&[1, 1, 1], 1)));
        assert!(q
            .halfspaces()
            .contains(&HalfSpace::from_i64(&[-1, -1, -1], 1)));
        assert!(q.halfspaces().contains(&HalfSpace::from_i64(&[1, 0, 0], 1)));
        assert!(is_reflexive(&q).unwrap());
        assert!(is_reflexive(&translated_q(6, 2, 2).unwrap()).unwrap());
        assert!(!is_reflexive(&translated_q(8, 2, 2).unwrap()).unwrap());
        assert!(translated_q(7, 3, 1).is_err());
    }

    #[test]
    fn translated_q_matches_oracle_facets() {
        // compare with the facets of the translated vertex set
        for (n, k, r) in [(4, 2, 1), (5, 2, 1), (6, 2, 2), (8, 2, 2), (6, 3, 1)] {
            let (q, _) = codegree_and_alpha(n, k);
            let proj = project_phi_inverse(&stable_polytope(n, k, r).unwrap()).unwrap();
            let shifted: Vec<LatticePoint> = proj
                .polytope
                .vertices()
                .iter()
                .map(|v| LatticePoint(v.0.iter().map(|x| x * q as i64 - 1).collect()))
                .collect();
            let oracle = crate::polytope::dd::facets_of_points(&shifted).unwrap();
            let tq = translated_q(n, k, r).unwrap();
            assert_eq!(tq.halfspaces(), &oracle[..], "n={n} k={k} r={r}");
        }
    }

    #[test]
    fn reflexivity_needs_interior_origin() {
        let p = projected_polytope(4, 2, 1).unwrap();
        assert!(matches!(is_reflexive(&p), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn gorenstein_examples() {
        for (n, k, r, expected) in [
            (4, 2, 1, true),
            (6, 2, 2, true),
            (6, 3, 1, true),
            (5, 2, 1, false),
            (7, 3, 1, false),
            (6, 1, 3, true),
            (5, 4, 1, true),
        ] {
            let rep = is_gorenstein(n, k, r).unwrap();
            assert_eq!(rep.gorenstein, expected, "n={n} k={k} r={r}");
            if rep.gorenstein {
                assert_eq!(rep.interior_lattice_points, 1);
                assert!(rep.palindromic && rep.unimodal);
            } else {
                assert!(!rep.palindromic);
            }
        }
        let rep = is_gorenstein(7, 3, 1).unwrap();
        assert_eq!(rep.route, GorensteinRoute::TwoInteriorPoints);
        assert!(rep.interior_lattice_points >= 2);
    }

    #[test]
    fn monotone_along_the_chain() {
        for (n, k) in [(8, 2), (9, 2), (9, 3)] {
            let ds: Vec<DeltaVector> = (1..n / k)
                .map(|r| stable_delta_vector(n, k, r).unwrap())
                .collect();
            for w in ds.windows(2) {
                assert!(w[1].dominated_by(&w[0]));
            }
        }
    }
}
