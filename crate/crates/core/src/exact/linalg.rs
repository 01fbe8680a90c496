//! Exact linear algebra over the rationals with fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{common_denominator, Scalar};

/// Row echelon form produced by fraction-free elimination.
pub struct Echelon {
    /// Nonzero echelon rows over the integers.
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Scales each rational row to integers and runs Bareiss elimination.
pub fn echelon(m: &[Vec<Scalar>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let l = common_denominator(r.iter());
            r.iter()
                .map(|c| (c * Scalar::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let (head, tail) = a.split_at_mut(row + 1);
        let prow = &head[row];
        let piv = prow[col].clone();
        for r in tail.iter_mut() {
            let factor = r[col].clone();
            for j in col + 1..ncols {
                let v = &piv * &r[j] - &factor * &prow[j];
                r[j] = v / &prev;
            }
            r[col] = BigInt::zero();
        }
        prev = piv;
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

/// Rank of a rational matrix with `ncols` columns.
pub fn rank(m: &[Vec<Scalar>], ncols: usize) -> usize {
    echelon(m, ncols).pivots.len()
}

impl Echelon {
    /// Kernel basis: one vector per free column, supported on columns up to it.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let n = self.ncols;
        let is_pivot = {
            let mut v = vec![false; n];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut out = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Scalar::zero(); n];
            x[free] = Scalar::one();
            for (k, &pc) in self.pivots.iter().enumerate().rev() {
                if pc > free {
                    continue;
                }
                let row = &self.rows[k];
                let mut acc = Scalar::zero();
                for j in pc + 1..n {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += Scalar::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Scalar::from_integer(row[pc].clone());
            }
            out.push(x);
        }
        out
    }
}

/// Exact basis of the right null space of `m` (`ncols` columns). Empty iff full column rank.
pub fn kernel_basis(m: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    echelon(m, ncols).kernel()
}

/// Solves `m x = rhs`; returns a particular solution and the kernel basis.
pub fn solve_affine(
    m: &[Vec<Scalar>],
    rhs: &[Scalar],
    ncols: usize,
) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let aug: Vec<Vec<Scalar>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(-b.clone());
            r
        })
        .collect();
    let e = echelon(&aug, ncols + 1);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let ker = e.kernel();
    // The free column `ncols` gives the particular solution; the others span the kernel.
    let mut homogeneous = Vec::new();
    let mut particular = None;
    for v in ker {
        if v[ncols].is_zero() {
            homogeneous.push(v[..ncols].to_vec());
        } else {
            let s = v[ncols].clone();
            particular = Some(v[..ncols].iter().map(|c| c / &s).collect::<Vec<_>>());
        }
    }
    particular.map(|p| (p, homogeneous))
}

/// Matrix-vector product.
pub fn apply(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| int(c)).collect())
            .collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(kernel_basis(&m, 3).is_empty());
    }

    #[test]
    fn row_of_ones() {
        let k = kernel_basis(&mat(&[&[1, 1]]), 2);
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn affine_solve() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        let (x, ker) = solve_affine(&m, &[int(3), int(1)], 2).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(ker.is_empty());
        assert!(solve_affine(&mat(&[&[1, 1], &[1, 1]]), &[int(0), int(1)], 2).is_none());
    }
}
