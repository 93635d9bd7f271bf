//! Facet enumeration by the double description method.
//!
//! A `d`-polytope `conv(V)` has facets `a·x <= b` exactly at the extreme rays
//! `(a, b)` of the cone `{(a, b) : a·v - b <= 0 for all v ∈ V}`, apart from
//! the ray `(0, 1)`. The cone is built one vertex constraint at a time with
//! the combinatorial adjacency test. Arithmetic is checked `i128`; every ray
//! is kept primitive, so entries stay small for 0/1-type inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::hull::AffineHull;
use super::linalg::{self, int_row};
use super::{HalfSpace, VPolytope};
use crate::error::{Error, Result};
use crate::stable::LatticePoint;

/// The irredundant facet list of `conv(vertices)`, relative to its affine
/// hull, canonicalized by [`AffineHull::canonicalize`] and sorted.
pub fn brute_force_facets(p: &VPolytope) -> Result<Vec<HalfSpace>> {
    facets_of_points(p.vertices())
}

pub fn facets_of_points(points: &[LatticePoint]) -> Result<Vec<HalfSpace>> {
    if points.is_empty() {
        return Err(Error::Degenerate("no vertices".into()));
    }
    let hull = AffineHull::of_points(points)?;
    let d = hull.dimension();
    if d < 1 {
        return Err(Error::Degenerate(format!(
            "affine dimension {d}; facets need dimension at least 1"
        )));
    }
    let free = hull.free_coordinates();
    let projected: Vec<Vec<i64>> = points
        .iter()
        .map(|v| free.iter().map(|&c| v.0[c]).collect())
        .collect();
    let rays = full_dimensional_facets(&projected)?;
    let n = hull.ambient_dim();
    let mut out: Vec<HalfSpace> = rays
        .into_iter()
        .map(|(a, b)| {
            let mut normal = vec![BigInt::from(0); n];
            for (&c, x) in free.iter().zip(a) {
                normal[c] = BigInt::from(x);
            }
            let h = HalfSpace::new(normal, BigInt::from(b));
            hull.canonicalize(&h)
                .expect("facet normal is nonconstant on the hull")
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

type Bits = Vec<u64>;

fn bit_set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn intersect(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn popcount(a: &Bits) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

struct Ray {
    coords: Vec<i128>,
    zeros: Bits,
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Facets `(a, b)` of a full-dimensional point set in `Z^d`.
fn full_dimensional_facets(points: &[Vec<i64>]) -> Result<Vec<(Vec<i128>, i128)>> {
    let d = points[0].len();
    let dim = d + 1;
    let m = points.len();
    let words = m.div_ceil(64);
    let constraints: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<i128> = p.iter().map(|&x| x as i128).collect();
            row.push(-1);
            row
        })
        .collect();

    // greedy choice of d + 1 affinely independent points
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    let mut basis_rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
    for (i, p) in points.iter().enumerate() {
        let mut row = int_row(p);
        row.push(linalg::rat(-1));
        basis_rows.push(row);
        if linalg::rank(&basis_rows) == basis_rows.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < dim {
        return Err(Error::Degenerate(
            "point set is not full-dimensional".into(),
        ));
    }

    // initial simplicial cone: rays are the columns of -B^{-1}
    let inv = linalg::inverse(&basis_rows).expect("basis rows are independent");
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for i in 0..dim {
        let col: Vec<BigRational> = inv.iter().map(|r| -r[i].clone()).collect();
        let ints = linalg::primitive_integer(&col);
        let coords = ints
            .iter()
            .map(|x| x.to_i128().ok_or(Error::Overflow))
            .collect::<Result<Vec<i128>>>()?;
        let mut zeros = vec![0u64; words];
        for (j, &b) in basis.iter().enumerate() {
            if j != i {
                bit_set(&mut zeros, b);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    let mut in_basis = vec![false; m];
    for &b in &basis {
        in_basis[b] = true;
    }
    for j in (0..m).filter(|&j| !in_basis[j]) {
        let h = &constraints[j];
        let values = rays
            .iter()
            .map(|r| dot(h, &r.coords))
            .collect::<Result<Vec<i128>>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        if pos.is_empty() {
            for (r, &v) in rays.iter_mut().zip(&values) {
                if v == 0 {
                    bit_set(&mut r.zeros, j);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = intersect(&rays[p].zeros, &rays[q].zeros);
                if popcount(&common) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !is_subset(&common, &r.zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (values[p], values[q]);
                let mut coords = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(&xq, &xp)| {
                        let a = vp.checked_mul(xq).ok_or(Error::Overflow)?;
                        let b = vq.checked_mul(xp).ok_or(Error::Overflow)?;
                        a.checked_sub(b).ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<i128>>>()?;
                make_primitive(&mut coords);
                let mut zeros = common;
                bit_set(&mut zeros, j);
                fresh.push(Ray { coords, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            match v.signum() {
                0 => {
                    bit_set(&mut r.zeros, j);
                    next.push(r);
                }
                -1 => next.push(r),
                _ => {}
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut out: Vec<(Vec<i128>, i128)> = rays
        .into_iter()
        .filter(|r| r.coords[..d].iter().any(|&x| x != 0))
        .map(|r| {
            let b = r.coords[d];
            (r.coords[..d].to_vec(), b)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Halfspaces tight on at least `dim` affinely independent vertices: a
/// direct check that a candidate is a facet of `conv(points)`.
pub fn is_facet_of(h: &HalfSpace, points: &[LatticePoint], dim: usize) -> bool {
    if !points.iter().all(|p| h.contains(p)) {
        return false;
    }
    let tight: Vec<LatticePoint> = points.iter().filter(|p| h.is_tight(p)).cloned().collect();
    !tight.is_empty() && super::hull::affine_dimension(&tight).is_ok_and(|t| t + 1 == dim)
}
