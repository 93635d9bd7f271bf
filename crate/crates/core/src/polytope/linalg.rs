//! Exact linear algebra over `BigRational` and `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn int_row(row: &[i64]) -> Vec<BigRational> {
    row.iter().map(|&x| rat(x)).collect()
}

/// Reduced row echelon form in place; returns the pivot columns in row order.
/// Zero rows are dropped.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` where `M` has `ncols` columns.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Fraction-free (Bareiss) determinant.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Scale a rational vector by a positive factor so that it becomes an integer
/// vector with coprime entries. The zero vector maps to zeros.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
        .abs()
}

pub fn dot_int_rat(a: &[BigInt], x: &[BigRational]) -> BigRational {
    a.iter()
        .zip(x)
        .fold(BigRational::zero(), |acc, (ai, xi)| acc + xi * ai)
}
