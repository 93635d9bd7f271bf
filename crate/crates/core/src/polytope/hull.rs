//! Affine hulls and canonical forms of halfspaces modulo an affine subspace.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::linalg::{self, int_row, Matrix};
use super::{AffineEquation, HalfSpace};
use crate::error::{Error, Result};
use crate::stable::LatticePoint;

/// An affine subspace `{x : E x = c}` with `E` in reduced row echelon form
/// whose pivots are chosen from the right.
///
/// Choosing pivots from the right means the eliminated coordinates are the
/// trailing ones, so for the hyperplane `Σ x_i = k` the canonical form of a
/// halfspace is the one with a zero coefficient on `x_n`.
#[derive(Debug, Clone)]
pub struct AffineHull {
    ambient: usize,
    rows: Matrix,
    rhs: Vec<BigRational>,
    pivots: Vec<usize>,
}

impl AffineHull {
    pub fn from_equations(ambient: usize, eqs: &[AffineEquation]) -> Result<Self> {
        let rows: Matrix = eqs
            .iter()
            .map(|e| {
                let mut r: Vec<BigRational> = e
                    .normal()
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                r.push(BigRational::from_integer(e.value().clone()));
                r
            })
            .collect();
        Self::from_augmented(ambient, rows)
    }

    /// Affine hull of a nonempty point set.
    pub fn of_points(points: &[LatticePoint]) -> Result<Self> {
        let base = points
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty point list".into()))?;
        let n = base.dim();
        let diffs: Matrix = points[1..]
            .iter()
            .map(|p| {
                p.0.iter()
                    .zip(&base.0)
                    .map(|(a, b)| linalg::rat(a - b))
                    .collect()
            })
            .collect();
        let base_r = int_row(&base.0);
        let rows: Matrix = linalg::nullspace(&diffs, n)
            .into_iter()
            .map(|mut e| {
                let c: BigRational = e.iter().zip(&base_r).map(|(a, b)| a * b).sum();
                e.push(c);
                e
            })
            .collect();
        Self::from_augmented(n, rows)
    }

    fn from_augmented(ambient: usize, rows: Matrix) -> Result<Self> {
        // RREF on the column-reversed coefficient block so pivots land on the right
        let mut rev: Matrix = rows
            .iter()
            .map(|r| {
                let mut c: Vec<BigRational> = r[..ambient].iter().rev().cloned().collect();
                c.push(r[ambient].clone());
                c
            })
            .collect();
        let piv_rev = linalg::rref(&mut rev);
        if piv_rev.contains(&ambient) {
            return Err(Error::Inconsistent(
                "equations have no common solution".into(),
            ));
        }
        let rows: Matrix = rev
            .iter()
            .map(|r| r[..ambient].iter().rev().cloned().collect())
            .collect();
        let rhs = rev.iter().map(|r| r[ambient].clone()).collect();
        let pivots = piv_rev.iter().map(|&c| ambient - 1 - c).collect();
        Ok(AffineHull {
            ambient,
            rows,
            rhs,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.ambient - self.rows.len()
    }

    /// Coordinates that parametrize the subspace (the non-pivot columns).
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    pub fn equations(&self) -> Vec<AffineEquation> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(r, c)| {
                let mut v = r.clone();
                v.push(c.clone());
                let ints = linalg::primitive_integer(&v);
                let value = ints[self.ambient].clone();
                AffineEquation::new(ints[..self.ambient].to_vec(), value)
            })
            .collect()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        let x = int_row(&p.0);
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(r, c)| r.iter().zip(&x).map(|(a, b)| a * b).sum::<BigRational>() == *c)
    }

    /// The unique representative of `h` (up to positive scaling) whose normal
    /// vanishes on the pivot coordinates. Returns `None` when the normal is
    /// constant on the subspace.
    pub fn canonicalize(&self, h: &HalfSpace) -> Option<HalfSpace> {
        let mut a: Vec<BigRational> = h
            .normal()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut b = BigRational::from_integer(h.offset().clone());
        for ((row, c), &p) in self.rows.iter().zip(&self.rhs).zip(&self.pivots) {
            if a[p].is_zero() {
                continue;
            }
            let f = a[p].clone();
            for (x, e) in a.iter_mut().zip(row) {
                *x -= &f * e;
            }
            b -= &f * c;
        }
        if a.iter().all(Zero::is_zero) {
            return None;
        }
        a.push(b);
        let ints: Vec<BigInt> = linalg::primitive_integer(&a);
        let offset = ints[self.ambient].clone();
        Some(HalfSpace::new(ints[..self.ambient].to_vec(), offset))
    }
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dimension(points: &[LatticePoint]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "affine dimension of an empty list".into(),
        ));
    }
    Ok(AffineHull::of_points(points)?.dimension())
}
