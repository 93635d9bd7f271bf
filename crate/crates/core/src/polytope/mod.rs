//! Exact rational polytope kernel.
//!
//! Polytopes come in two flavours: [`VPolytope`] (vertex list) and
//! [`HPolytope`] (halfspaces `a·x <= b` plus affine equations). A polytope
//! that lives in a hyperplane such as `Σ x_i = k` keeps that equation
//! explicit. Halfspaces are only meaningful modulo the equations, so facet
//! sets are compared through [`AffineHull::canonicalize`].

pub mod dd;
pub mod hull;
pub mod lattice;
pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::stable::LatticePoint;

pub use dd::brute_force_facets;
pub use hull::{affine_dimension, AffineHull};
pub use lattice::{
    count_interior_lattice_points, count_lattice_points, find_interior_lattice_point,
};

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<&LatticePoint> for RationalVector {
    fn from(p: &LatticePoint) -> Self {
        RationalVector(p.0.iter().map(|&x| linalg::rat(x)).collect())
    }
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn dot_point(a: &[BigInt], p: &LatticePoint) -> BigInt {
    a.iter().zip(&p.0).map(|(ai, &x)| ai * x).sum()
}

/// `normal · x <= offset`, stored with `gcd(normal, offset) = 1`.
///
/// For a facet of a lattice polytope this makes the normal primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl HalfSpace {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        let g = linalg::gcd_all(normal.iter().chain(std::iter::once(&offset)));
        if g.is_zero() || g.is_one() {
            return HalfSpace { normal, offset };
        }
        HalfSpace {
            normal: normal.into_iter().map(|x| x / &g).collect(),
            offset: offset / &g,
        }
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Self::new(big(normal), BigInt::from(offset))
    }

    /// `Σ_{i ∈ support} x_i <= offset` in `R^dim`, with 1-based indices.
    pub fn indicator(dim: usize, support: impl IntoIterator<Item = usize>, offset: i64) -> Self {
        let mut a = vec![0i64; dim];
        for i in support {
            a[i - 1] = 1;
        }
        Self::from_i64(&a, offset)
    }

    /// `Σ_{i ∈ support} x_i >= bound`, stored as `-Σ x_i <= -bound`.
    pub fn lower_indicator(
        dim: usize,
        support: impl IntoIterator<Item = usize>,
        bound: i64,
    ) -> Self {
        let mut a = vec![0i64; dim];
        for i in support {
            a[i - 1] = -1;
        }
        Self::from_i64(&a, -bound)
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn value_at(&self, p: &LatticePoint) -> BigInt {
        dot_point(&self.normal, p)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.value_at(p) <= self.offset
    }

    pub fn is_tight(&self, p: &LatticePoint) -> bool {
        self.value_at(p) == self.offset
    }

    pub fn normal_is_primitive(&self) -> bool {
        linalg::gcd_all(&self.normal).is_one()
    }

    /// The same halfspace scaled by `t >= 0` (for dilations).
    pub fn dilate(&self, t: i64) -> Self {
        Self::new(self.normal.clone(), &self.offset * t)
    }

    /// The halfspace describing `P - v` when `self` describes `P`.
    pub fn translate(&self, v: &LatticePoint) -> Self {
        let shift = self.value_at(v);
        Self::new(self.normal.clone(), &self.offset - shift)
    }

    /// Strict version over the integers: `a·x < b` iff `a·x <= b - 1`.
    pub(crate) fn strict_integral(&self) -> Self {
        HalfSpace {
            normal: self.normal.clone(),
            offset: &self.offset - 1,
        }
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.normal)?;
        write!(f, " <= {}", self.offset)
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, a: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "x{}", i + 1)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

struct BigIntSer<'a>(&'a BigInt);

impl Serialize for BigIntSer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

struct BigVecSer<'a>(&'a [BigInt]);

impl Serialize for BigVecSer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(BigIntSer))
    }
}

impl Serialize for HalfSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HalfSpace", 2)?;
        st.serialize_field("normal", &BigVecSer(&self.normal))?;
        st.serialize_field("offset", &BigIntSer(&self.offset))?;
        st.end()
    }
}

/// `normal · x = value`, normalized so the entries are coprime and the first
/// nonzero normal entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineEquation {
    normal: Vec<BigInt>,
    value: BigInt,
}

impl AffineEquation {
    pub fn new(normal: Vec<BigInt>, value: BigInt) -> Self {
        let g = linalg::gcd_all(normal.iter().chain(std::iter::once(&value)));
        let flip = normal
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let mut g = if g.is_zero() { BigInt::one() } else { g };
        if flip {
            g = -g;
        }
        AffineEquation {
            normal: normal.into_iter().map(|x| x / &g).collect(),
            value: value / &g,
        }
    }

    /// `Σ x_i = value` in `R^dim`.
    pub fn coordinate_sum(dim: usize, value: i64) -> Self {
        Self::new(vec![BigInt::one(); dim], BigInt::from(value))
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn holds_at(&self, p: &LatticePoint) -> bool {
        dot_point(&self.normal, p) == self.value
    }

    /// If this is `Σ x_i = c`, returns `c`.
    pub fn coordinate_sum_value(&self) -> Option<&BigInt> {
        self.normal
            .iter()
            .all(|x| x.is_one())
            .then_some(&self.value)
    }

    pub fn dilate(&self, t: i64) -> Self {
        AffineEquation {
            normal: self.normal.clone(),
            value: &self.value * t,
        }
    }

    pub fn translate(&self, v: &LatticePoint) -> Self {
        let shift = dot_point(&self.normal, v);
        Self::new(self.normal.clone(), &self.value - shift)
    }
}

impl fmt::Display for AffineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.normal)?;
        write!(f, " = {}", self.value)
    }
}

impl Serialize for AffineEquation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineEquation", 2)?;
        st.serialize_field("normal", &BigVecSer(&self.normal))?;
        st.serialize_field("value", &BigIntSer(&self.value))?;
        st.end()
    }
}

/// Convex hull of a list of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    equation: Option<AffineEquation>,
}

impl VPolytope {
    pub fn new(
        dim: usize,
        vertices: Vec<LatticePoint>,
        equation: Option<AffineEquation>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "ambient dimension must be positive".into(),
            ));
        }
        if let Some(v) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::InvalidArgument(format!(
                "vertex of length {} in ambient dimension {dim}",
                v.dim()
            )));
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("vertices must be distinct".into()));
        }
        if let Some(eq) = &equation {
            if eq.dim() != dim {
                return Err(Error::InvalidArgument(
                    "equation has wrong dimension".into(),
                ));
            }
            if let Some(v) = vertices.iter().find(|v| !eq.holds_at(v)) {
                return Err(Error::Inconsistent(format!(
                    "vertex {:?} violates {eq}",
                    v.0
                )));
            }
        }
        Ok(VPolytope {
            dim,
            vertices,
            equation,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn equation(&self) -> Option<&AffineEquation> {
        self.equation.as_ref()
    }

    pub fn dilate(&self, t: i64) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| LatticePoint(v.0.iter().map(|x| x * t).collect()))
            .collect();
        VPolytope {
            dim: self.dim,
            vertices,
            equation: self.equation.as_ref().map(|e| e.dilate(t)),
        }
    }

    /// `P - v`.
    pub fn translate(&self, v: &LatticePoint) -> Result<Self> {
        check_dim(self.dim, v)?;
        let vertices = self
            .vertices
            .iter()
            .map(|p| LatticePoint(p.0.iter().zip(&v.0).map(|(a, b)| a - b).collect()))
            .collect();
        Ok(VPolytope {
            dim: self.dim,
            vertices,
            equation: self.equation.as_ref().map(|e| e.translate(v)),
        })
    }
}

fn check_dim(dim: usize, v: &LatticePoint) -> Result<()> {
    if v.dim() != dim {
        return Err(Error::InvalidArgument(format!(
            "point of length {} in ambient dimension {dim}",
            v.dim()
        )));
    }
    Ok(())
}

/// Intersection of halfspaces and affine equations. Halfspaces are kept
/// sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    equations: Vec<AffineEquation>,
}

impl HPolytope {
    pub fn new(
        dim: usize,
        mut halfspaces: Vec<HalfSpace>,
        equations: Vec<AffineEquation>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "ambient dimension must be positive".into(),
            ));
        }
        if halfspaces.iter().any(|h| h.dim() != dim) || equations.iter().any(|e| e.dim() != dim) {
            return Err(Error::InvalidArgument(
                "constraint dimension does not match ambient dimension".into(),
            ));
        }
        halfspaces.sort();
        halfspaces.dedup();
        Ok(HPolytope {
            dim,
            halfspaces,
            equations,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[AffineEquation] {
        &self.equations
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.equations.iter().all(|e| e.holds_at(p))
            && self.halfspaces.iter().all(|h| h.contains(p))
    }

    pub fn dilate(&self, t: i64) -> Self {
        HPolytope::new(
            self.dim,
            self.halfspaces.iter().map(|h| h.dilate(t)).collect(),
            self.equations.iter().map(|e| e.dilate(t)).collect(),
        )
        .expect("dilation preserves dimensions")
    }

    /// `P - v`: every offset drops by `normal · v`.
    pub fn translate(&self, v: &LatticePoint) -> Result<Self> {
        check_dim(self.dim, v)?;
        HPolytope::new(
            self.dim,
            self.halfspaces.iter().map(|h| h.translate(v)).collect(),
            self.equations.iter().map(|e| e.translate(v)).collect(),
        )
    }

    /// Halfspaces reduced modulo the equations and sorted.
    pub fn canonical_halfspaces(&self) -> Result<Vec<HalfSpace>> {
        let hull = AffineHull::from_equations(self.dim, &self.equations)?;
        let mut out: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .filter_map(|h| hull.canonicalize(h))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// True iff `x` satisfies every equation exactly and every halfspace strictly.
pub fn relint_contains(p: &HPolytope, x: &RationalVector) -> bool {
    if x.dim() != p.dim {
        return false;
    }
    p.equations
        .iter()
        .all(|e| linalg::dot_int_rat(&e.normal, &x.0) == BigRational::from_integer(e.value.clone()))
        && p.halfspaces.iter().all(|h| {
            linalg::dot_int_rat(&h.normal, &x.0) < BigRational::from_integer(h.offset.clone())
        })
}

pub fn translate_h(p: &HPolytope, v: &LatticePoint) -> Result<HPolytope> {
    p.translate(v)
}

pub fn translate_v(p: &VPolytope, v: &LatticePoint) -> Result<VPolytope> {
    p.translate(v)
}

/// Result of deleting the last coordinate of a polytope in `Σ x_i = level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiProjection {
    pub polytope: VPolytope,
    pub level: i64,
    pub ambient_dim: usize,
}

impl PhiProjection {
    /// Re-insert the deleted coordinate as `level - Σ y_i`.
    pub fn lift(&self, y: &LatticePoint) -> LatticePoint {
        let mut v = y.0.clone();
        v.push(self.level - y.sum());
        LatticePoint(v)
    }
}

fn sum_level(eq: Option<&AffineEquation>) -> Result<i64> {
    eq.and_then(AffineEquation::coordinate_sum_value)
        .and_then(ToPrimitive::to_i64)
        .ok_or_else(|| Error::InvalidArgument("polytope must carry the equation Σ x_i = c".into()))
}

/// Delete the last coordinate of every vertex of a polytope lying in
/// `Σ x_i = c`. This is a lattice isomorphism onto its image.
pub fn project_phi_inverse(p: &VPolytope) -> Result<PhiProjection> {
    let level = sum_level(p.equation())?;
    if p.dim < 2 {
        return Err(Error::InvalidArgument(
            "need ambient dimension at least 2".into(),
        ));
    }
    if let Some(v) = p.vertices.iter().find(|v| v.sum() != level) {
        return Err(Error::Inconsistent(format!(
            "vertex {:?} is off the hyperplane Σ x_i = {level}",
            v.0
        )));
    }
    let vertices = p
        .vertices
        .iter()
        .map(|v| LatticePoint(v.0[..p.dim - 1].to_vec()))
        .collect();
    Ok(PhiProjection {
        polytope: VPolytope::new(p.dim - 1, vertices, None)?,
        level,
        ambient_dim: p.dim,
    })
}

/// The H-side of [`project_phi_inverse`]: substitute `x_n = c - Σ_{i<n} x_i`.
pub fn project_hpolytope_phi_inverse(p: &HPolytope) -> Result<HPolytope> {
    let [eq] = p.equations() else {
        return Err(Error::InvalidArgument(
            "polytope must carry exactly the equation Σ x_i = c".into(),
        ));
    };
    let level = eq
        .coordinate_sum_value()
        .ok_or_else(|| Error::InvalidArgument("equation must be Σ x_i = c".into()))?
        .clone();
    let n = p.dim;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need ambient dimension at least 2".into(),
        ));
    }
    let mut halfspaces = Vec::with_capacity(p.halfspaces.len());
    for h in &p.halfspaces {
        let last = &h.normal[n - 1];
        let normal: Vec<BigInt> = h.normal[..n - 1].iter().map(|a| a - last).collect();
        let offset = &h.offset - last * &level;
        if normal.iter().all(Zero::is_zero) {
            if offset.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "{h} is infeasible on the hyperplane"
                )));
            }
            continue;
        }
        halfspaces.push(HalfSpace::new(normal, offset));
    }
    HPolytope::new(n - 1, halfspaces, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint(v.to_vec())
    }

    #[test]
    fn halfspace_normalization() {
        let h = HalfSpace::from_i64(&[2, -4], 6);
        assert_eq!(h, HalfSpace::from_i64(&[1, -2], 3));
        assert!(h.normal_is_primitive());
        assert_eq!(h.to_string(), "x1 - 2*x2 <= 3");
        // gcd with offset keeps semantics when the normal alone is not primitive
        let g = HalfSpace::from_i64(&[2, 2], 1);
        assert!(!g.normal_is_primitive());
    }

    #[test]
    fn equation_normalization() {
        let e = AffineEquation::new(big(&[-2, -2]), BigInt::from(-4));
        assert_eq!(e, AffineEquation::coordinate_sum(2, 2));
        assert_eq!(e.coordinate_sum_value(), Some(&BigInt::from(2)));
    }

    #[test]
    fn vpolytope_validation() {
        let eq = AffineEquation::coordinate_sum(3, 1);
        assert!(VPolytope::new(3, vec![pt(&[1, 0, 0]), pt(&[0, 1, 0])], Some(eq.clone())).is_ok());
        assert!(matches!(
            VPolytope::new(3, vec![pt(&[1, 1, 0])], Some(eq)),
            Err(Error::Inconsistent(_))
        ));
        assert!(VPolytope::new(2, vec![pt(&[1, 1]), pt(&[1, 1])], None).is_err());
    }

    #[test]
    fn phi_projection_examples() {
        let p = VPolytope::new(
            4,
            vec![pt(&[1, 0, 1, 0])],
            Some(AffineEquation::coordinate_sum(4, 2)),
        )
        .unwrap();
        let proj = project_phi_inverse(&p).unwrap();
        assert_eq!(proj.polytope.vertices(), &[pt(&[1, 0, 1])]);
        assert_eq!(proj.lift(&pt(&[1, 0, 1])), pt(&[1, 0, 1, 0]));
        let no_eq = VPolytope::new(2, vec![pt(&[1, 0])], None).unwrap();
        assert!(project_phi_inverse(&no_eq).is_err());
    }

    #[test]
    fn translate_by_zero_is_identity() {
        let h = HPolytope::new(
            2,
            vec![
                HalfSpace::from_i64(&[1, 0], 1),
                HalfSpace::from_i64(&[-1, -1], 0),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(h.translate(&pt(&[0, 0])).unwrap(), h);
        let moved = h.translate(&pt(&[1, 2])).unwrap();
        assert!(moved
            .halfspaces()
            .contains(&HalfSpace::from_i64(&[1, 0], 0)));
        assert!(moved
            .halfspaces()
            .contains(&HalfSpace::from_i64(&[-1, -1], 3)));
    }

    #[test]
    fn relint_of_segment() {
        let seg = HPolytope::new(
            1,
            vec![HalfSpace::from_i64(&[1], 3), HalfSpace::from_i64(&[-1], 0)],
            vec![],
        )
        .unwrap();
        assert!(relint_contains(&seg, &RationalVector::from(&pt(&[1]))));
        assert!(!relint_contains(&seg, &RationalVector::from(&pt(&[3]))));
        assert!(!relint_contains(&seg, &RationalVector::from(&pt(&[0]))));
    }
}
