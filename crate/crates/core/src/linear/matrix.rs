//! Exact matrix routines.
//!
//! Dense square problems (determinants, ranks, inverses of Gram matrices) use
//! fraction-free Bareiss elimination over `BigInt`, so every intermediate value
//! is an integer and each division is exact. Sparse row spaces (kernels, span
//! membership) use a fully reduced echelon basis over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Scales each row by the lcm of its denominators; rank and determinant up to a
/// nonzero factor are preserved.
pub fn integer_rows(rows: &[Vec<Rational>]) -> IntMatrix {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| (r * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free forward elimination; returns the rank and, for square input,
/// the determinant (zero when singular).
fn bareiss(mut a: IntMatrix) -> (usize, BigInt) {
    let rows = a.len();
    if rows == 0 {
        return (0, BigInt::one());
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    let det = if rows == cols && rank == rows {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub fn determinant(a: &IntMatrix) -> BigInt {
    assert!(a.iter().all(|r| r.len() == a.len()), "determinant of a non-square matrix");
    bareiss(a.clone()).1
}

pub fn rank(a: &IntMatrix) -> usize {
    bareiss(a.clone()).0
}

/// `det · A⁻¹` together with `det`, from fraction-free Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct ScaledInverse {
    pub det: BigInt,
    pub adj: IntMatrix,
}

impl ScaledInverse {
    /// Returns `None` when `a` is singular.
    pub fn new(a: &IntMatrix) -> Option<Self> {
        let n = a.len();
        let mut m: IntMatrix = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                assert_eq!(row.len(), n, "inverse of a non-square matrix");
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !m[r][k].is_zero())?;
            m.swap(p, k);
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        // every diagonal entry now equals `prev`
        let adj = m.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Self { det: prev, adj })
    }

    /// Exact solution of `A x = rhs`.
    pub fn solve(&self, rhs: &[Rational]) -> Vec<Rational> {
        let det = Rational::from_integer(self.det.clone());
        self.adj
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (a, b) in row.iter().zip(rhs) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += Rational::from_integer(a.clone()) * b;
                    }
                }
                acc / &det
            })
            .collect()
    }
}

pub type SparseVec = BTreeMap<usize, Rational>;

fn axpy(target: &mut SparseVec, scale: &Rational, v: &SparseVec) {
    for (j, c) in v {
        let entry = target.entry(*j).or_insert_with(Rational::zero);
        *entry += scale * c;
        if entry.is_zero() {
            target.remove(j);
        }
    }
}

/// A fully reduced echelon basis of a row space.
///
/// Each stored row has a pivot at its largest column with coefficient one, and
/// every other row is zero at that column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows ordered by increasing pivot.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Residual of `v` modulo the current span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        // pivots are the largest column of their rows, so sweep from the top down
        for (&p, row) in self.rows.iter().rev() {
            if let Some(c) = r.get(&p).cloned() {
                axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next_back() else {
            return false;
        };
        let inv = lead.recip();
        for c in r.values_mut() {
            *c *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Kernel of the linear map whose matrix has these rows, as vectors over
    /// `ncols` columns. One vector per free column.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        (0..ncols)
            .filter(|j| !self.rows.contains_key(j))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, Rational::one());
                for (&p, row) in &self.rows {
                    if let Some(c) = row.get(&free) {
                        v.insert(p, -c);
                    }
                }
                v
            })
            .collect()
    }
}

pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn brute_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * brute_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = vec![vec![2, -1, 0, 3], vec![1, 4, 2, 0], vec![0, 5, -2, 1], vec![3, 0, 1, 1]];
        let big = m(&a.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        assert_eq!(determinant(&big), BigInt::from(brute_det(&a)));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_of_rectangular() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn scaled_inverse_solves() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = ScaledInverse::new(&a).unwrap();
        let x = inv.solve(&[int(3), int(2)]);
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(ScaledInverse::new(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn echelon_kernel() {
        // x0 + x1 = 0, x1 - x2 = 0
        let mut e = Echelon::new();
        e.insert(&[(0, int(1)), (1, int(1))].into_iter().collect());
        e.insert(&[(1, int(1)), (2, int(-1))].into_iter().collect());
        let k = e.kernel(3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let x = |j| v.get(&j).cloned().unwrap_or_else(Rational::zero);
        assert_eq!(x(0) + x(1), int(0));
        assert_eq!(x(1) - x(2), int(0));
        assert!(!e.insert(&[(0, int(2)), (1, int(3)), (2, int(-1))].into_iter().collect()));
    }
}
