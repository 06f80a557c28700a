//! Exact dense matrices over the rationals.
//!
//! Two operations matter here and both must be exact: determinants (via
//! fraction-free Bareiss elimination on a common-denominator integer lift)
//! and ranks (via ordinary Gaussian elimination with deterministic pivoting:
//! always the surviving row with the smallest index).

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// A row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> RatMat {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    /// Builds from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMat> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row 0 has {ncols} entries but row {i} has {}",
                    row.len()
                )));
            }
        }
        Ok(RatMat { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        assert!(i < self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Exact determinant. Fails on non-square input.
    ///
    /// Each row is scaled to integers by its denominators' lcm, the integer
    /// matrix goes through Bareiss elimination (all intermediate divisions
    /// are exact), and the scale is divided back out at the end.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }

        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            m.push(
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect(),
            );
            scale *= lcm;
        }

        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }

        let det = Rat::from_bigints(m[n - 1][n - 1].clone() * BigInt::from(sign), scale)?;
        Ok(det)
    }

    /// Rank by Gaussian elimination; pivot selection is deterministic.
    #[allow(clippy::needless_range_loop)] // two rows of the same matrix are touched per step
    pub fn rank(&self) -> usize {
        let mut m = self.row_vecs();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip().expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..self.cols {
                    let delta = &factor * &m[rank][c];
                    let updated = &m[r][c] - &delta;
                    m[r][c] = updated;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    fn mat(rows: &[&[(i64, i64)]]) -> RatMat {
        RatMat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&(p, q)| r(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn cofactor_det(m: &RatMat) -> Rat {
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return Rat::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rat::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = RatMat::from_rows(
                (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m.get(i, c).clone())
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let term = m.get(0, j) * &cofactor_det(&minor);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    fn hilbert(n: usize) -> RatMat {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, r(1, (i + j + 1) as i64));
            }
        }
        m
    }

    #[test]
    fn hilbert_3_determinant() {
        let h = hilbert(3);
        assert_eq!(h.det().unwrap(), r(1, 2160));
        assert_eq!(cofactor_det(&h), r(1, 2160));
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(mat(&[&[(2, 1), (1, 1)], &[(7, 1), (4, 1)]]).det().unwrap(), r(1, 1));
        assert_eq!(
            mat(&[&[(1, 2), (1, 3)], &[(1, 3), (1, 4)]]).det().unwrap(),
            r(1, 72)
        );
        // Duplicate rows are singular.
        let s = mat(&[&[(1, 2), (1, 3)], &[(1, 2), (1, 3)]]);
        assert_eq!(s.det().unwrap(), Rat::zero());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn zero_leading_pivot_needs_a_swap() {
        let m = mat(&[
            &[(0, 1), (1, 1), (2, 1)],
            &[(3, 1), (0, 1), (1, 1)],
            &[(1, 1), (1, 1), (0, 1)],
        ]);
        assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn non_square_det_is_an_error() {
        let m = RatMat::zeros(2, 3);
        assert!(matches!(m.det(), Err(Error::NonSquare { rows: 2, cols: 3 })));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = mat(&[
            &[(1, 1), (2, 1), (3, 1)],
            &[(2, 1), (4, 1), (6, 1)],
            &[(1, 1), (0, 1), (1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det().unwrap(), Rat::zero());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| r(p, q))
    }

    fn small_mat(n: usize) -> impl Strategy<Value = RatMat> {
        proptest::collection::vec(small_rat(), n * n).prop_map(move |data| {
            RatMat::from_rows(data.chunks(n).map(<[Rat]>::to_vec).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(m in small_mat(4)) {
            prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn row_swap_negates_det_and_keeps_rank(m in small_mat(3), i in 0usize..3, j in 0usize..3) {
            let mut rows = m.row_vecs();
            rows.swap(i, j);
            let swapped = RatMat::from_rows(rows).unwrap();
            let expected = if i == j { m.det().unwrap() } else { -m.det().unwrap() };
            prop_assert_eq!(swapped.det().unwrap(), expected);
            prop_assert_eq!(swapped.rank(), m.rank());
        }

        #[test]
        fn duplicating_a_row_kills_the_determinant(m in small_mat(3), i in 0usize..3, j in 0usize..3) {
            prop_assume!(i != j);
            let mut rows = m.row_vecs();
            rows[i] = rows[j].clone();
            let dup = RatMat::from_rows(rows).unwrap();
            prop_assert_eq!(dup.det().unwrap(), Rat::zero());
            prop_assert!(dup.rank() < 3);
        }
    }
}
