use alloc::vec::Vec;

use super::{Field, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Ring> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { K::one() } else { K::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(K::zero(), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j)))
            })
        })
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(K::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Submatrix with the listed rows and columns kept, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn without_column(&self, c: usize) -> Self {
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &cols)
    }

    /// Exact determinant: cofactor expansion up to 4x4, fraction-free
    /// Bareiss elimination above.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    fn det_cofactor(&self) -> K {
        match self.rows {
            0 => K::one(),
            1 => self.get(0, 0).clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            n => {
                let rest: Vec<usize> = (1..n).collect();
                let mut acc: Option<K> = None;
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let term = a.mul(&self.select(&rest, &cols).det_cofactor());
                    let term = if j % 2 == 1 { term.neg() } else { term };
                    acc = Some(match acc {
                        None => term,
                        Some(s) => s.add(&term),
                    });
                }
                acc.unwrap_or_else(K::zero)
            }
        }
    }

    /// Bareiss elimination; every division is exact.
    pub fn det_bareiss(&self) -> K {
        let n = self.rows;
        if n == 0 {
            return K::one();
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev: Option<K> = None;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.data.swap(k * n + j, i * n + j);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return K::zero(),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot
                        .mul(m.get(i, j))
                        .sub(&m.get(i, k).mul(m.get(k, j)));
                    let v = match &prev {
                        Some(p) => v.exact_div(p).expect("Bareiss division is exact"),
                        None => v,
                    };
                    m.set(i, j, v);
                }
            }
            prev = Some(pivot);
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign_flip {
            d.neg()
        } else {
            d
        }
    }

    /// Transposed matrix of cofactors, so that `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        assert_eq!(n, self.cols, "adjugate of a non-square matrix");
        if n == 1 {
            return Self::from_fn(1, 1, |_, _| K::one());
        }
        Self::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = self.select(&rows, &cols).det();
            if (i + j) % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
    }
}

impl<K: Field> Matrix<K> {
    /// Solves `A x = b` for square invertible `A` by Gaussian elimination.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(n, b.len());
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                rhs.swap(k, p);
            }
            let inv = a.get(k, k).inv()?;
            for i in k + 1..n {
                let f = a.get(i, k).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(k, j)));
                    a.set(i, j, v);
                }
                rhs[i] = rhs[i].sub(&f.mul(&rhs[k]));
            }
        }
        let mut x: Vec<K> = alloc::vec![K::zero(); n];
        for k in (0..n).rev() {
            let s = (k + 1..n).fold(rhs[k].clone(), |acc, j| acc.sub(&a.get(k, j).mul(&x[j])));
            x[k] = s.div(a.get(k, k))?;
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<K> = (0..n).map(|i| if i == j { K::one() } else { K::zero() }).collect();
            cols.push(self.solve(&e)?);
        }
        Some(Self::from_fn(n, n, |i, j| cols[j][i].clone()))
    }
}

/// Signed maximal minors of an `n x (n+1)` matrix:
/// `C_i = (-1)^i det(M without column i)`, so that `M C = 0`.
pub fn nullspace_cofactor<K: Ring>(m: &Matrix<K>) -> Result<Vec<K>> {
    assert_eq!(m.cols(), m.rows() + 1, "expected an n x (n+1) matrix");
    let c: Vec<K> = (0..m.cols())
        .map(|i| {
            let d = m.without_column(i).det();
            if i % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
        .collect();
    if c.iter().all(Ring::is_zero) {
        return Err(Error::DegenerateDependence {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rational};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    #[test]
    fn identity_determinant() {
        for n in 0..7 {
            assert_eq!(Matrix::<Rational>::identity(n).det(), rat(1, 1));
        }
    }

    #[test]
    fn two_by_two() {
        assert_eq!(m(&[&[2, 3], &[5, 7]]).det(), rat(-1, 1));
    }

    #[test]
    fn bareiss_agrees_with_cofactor() {
        let a = m(&[&[2, 0, 1, 3], &[1, 1, 0, 2], &[0, 4, 1, 1], &[5, 2, 2, 0]]);
        assert_eq!(a.det_cofactor(), a.det_bareiss());
        let b = m(&[
            &[0, 1, 2, 3, 4],
            &[1, 0, 1, 2, 3],
            &[2, 1, 0, 1, 2],
            &[3, 2, 1, 0, 1],
            &[4, 3, 2, 1, 0],
        ]);
        // Distance matrix of five collinear points: det = (-1)^(n-1) (n-1) 2^(n-2).
        assert_eq!(b.det(), rat(32, 1));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(
            nullspace_cofactor(&m(&[&[1, 0, 0], &[0, 1, 0]])).unwrap(),
            [rat(0, 1), rat(0, 1), rat(1, 1)]
        );
        // 2x2 minors by hand: (1, -1, 1)
        assert_eq!(
            nullspace_cofactor(&m(&[&[1, 1, 0], &[0, 1, 1]])).unwrap(),
            [rat(1, 1), rat(-1, 1), rat(1, 1)]
        );
        assert!(matches!(
            nullspace_cofactor(&m(&[&[0, 0, 0], &[0, 0, 0]])),
            Err(Error::DegenerateDependence { .. })
        ));
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let prod = a.mul(&a.adjugate());
        let d = a.det();
        assert_eq!(prod, Matrix::identity(3).map(|v: &Rational| v * &d));
        assert_eq!(a.inverse().unwrap().mul(&a), Matrix::identity(3));
    }

    fn arb3() -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec(-9i64..10, 9).prop_map(|v| {
            Matrix::from_fn(3, 3, |i, j| rat(v[3 * i + j], 1))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn determinant_is_multiplicative(a in arb3(), b in arb3()) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
            prop_assert_eq!(a.det_bareiss(), a.det_cofactor());
        }
    }
}
