//! Dense matrices over an exact ring: products, fraction-free determinants and
//! characteristic polynomials by interpolation.

use super::poly::Poly;
use super::ring::{Field, Ring};
use rayon::prelude::*;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = o.add(&x.mul(a));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Bareiss fraction-free elimination. Exact in any integral domain.
    pub fn det(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.data.clone();
        let mut sign_neg = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return R::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign_neg = !sign_neg;
            }
            let akk = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    let v = akk.mul(&a[i * n + j]).sub(&aik.mul(&a[k * n + j]));
                    a[i * n + j] = v.exact_div(&prev).expect("Bareiss step is exact");
                }
                a[i * n + k] = R::zero();
            }
            prev = akk;
        }
        let d = a[n * n - 1].clone();
        if sign_neg {
            d.neg()
        } else {
            d
        }
    }

    /// `det(tI - M)`, monic of degree `n`. Evaluates `det(kI - M)` at
    /// `k = 0..=n` in parallel and interpolates exactly through Newton forward
    /// differences.
    pub fn charpoly(&self) -> Poly<R> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let values: Vec<R> = (0..=n)
            .into_par_iter()
            .map(|k| {
                let mut m = self.map(|x| x.neg());
                for i in 0..n {
                    let v = m.get(i, i).add(&R::from_i64(k as i64));
                    m.set(i, i, v);
                }
                m.det()
            })
            .collect();
        interpolate_at_naturals(&values)
    }
}

impl<F: Field> Matrix<F> {
    /// Solve `self * x = b` for one solution, `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len());
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<F>> = (0..rows)
            .map(|i| {
                let mut r: Vec<F> = (0..cols).map(|j| self.get(i, j).clone()).collect();
                r.push(b[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv();
            for x in a[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=cols {
                        let v = a[i][j].sub(&f.mul(&a[r][j]));
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut x = vec![F::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = a[i][cols].clone();
        }
        Some(x)
    }
}

/// The unique polynomial of degree `<= values.len() - 1` with `p(k) = values[k]`.
/// Coefficients must lie in the ring (true for integer-valued characteristic
/// polynomials, where every divided difference is exact).
pub fn interpolate_at_naturals<R: Ring>(values: &[R]) -> Poly<R> {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    for j in 0..n {
        newton.push(diffs[0].clone());
        for i in 0..n - j - 1 {
            diffs[i] = diffs[i + 1].sub(&diffs[i]);
        }
    }
    // p(x) = sum_j (newton[j] / j!) * x(x-1)...(x-j+1)
    let mut result = Poly::zero();
    let mut falling = Poly::one();
    let mut fact = R::one();
    for (j, d) in newton.iter().enumerate() {
        if j > 0 {
            fact = fact.mul(&R::from_i64(j as i64));
            falling = falling.mul(&Poly::new(vec![R::from_i64(-(j as i64 - 1)), R::one()]));
        }
        let c = d.exact_div(&fact).expect("integer-valued interpolation");
        result = result.add(&falling.scale(&c));
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gauss::GaussInt;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn int_matrix(n: usize, v: &[i64]) -> Matrix<BigInt> {
        Matrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]))
    }

    /// Cofactor expansion, used as an independent determinant.
    fn laplace<R: Ring>(m: &Matrix<R>) -> R {
        let n = m.rows();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |a, b| {
                m.get(a + 1, if b < j { b } else { b + 1 }).clone()
            });
            let term = m.get(0, j).mul(&laplace(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// det(tI - M) by cofactor expansion over polynomial entries.
    fn symbolic_charpoly(m: &Matrix<BigInt>) -> Poly<BigInt> {
        fn det(p: &[Vec<Poly<BigInt>>]) -> Poly<BigInt> {
            let n = p.len();
            if n == 0 {
                return Poly::one();
            }
            let mut acc = Poly::zero();
            for j in 0..n {
                let minor: Vec<Vec<Poly<BigInt>>> = p[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = p[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        let n = m.rows();
        let p: Vec<Vec<Poly<BigInt>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(-m.get(i, j).clone());
                        if i == j {
                            c.add(&Poly::monomial(BigInt::from(1), 1))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        det(&p)
    }

    #[test]
    fn small_charpoly() {
        let m = int_matrix(2, &[1, -1, 1, 0]);
        assert_eq!(m.charpoly(), Poly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn gaussian_determinant() {
        let i = GaussInt::i();
        let one = GaussInt::one();
        let m = Matrix::from_fn(2, 2, |a, b| if a == b { one.clone() } else { i.clone() });
        assert_eq!(m.det(), GaussInt::new(2, 0));
    }

    #[test]
    fn solve_consistent_and_not() {
        use num_rational::BigRational;
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = Matrix::from_fn(3, 2, |i, j| q([[1, 1], [1, -1], [2, 0]][i][j]));
        let x = a.solve(&[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(a.solve(&[q(3), q(1), q(5)]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace(n in 1usize..5, v in prop::collection::vec(-4i64..5, 16)) {
            let m = int_matrix(n, &v[..n * n]);
            prop_assert_eq!(m.det(), laplace(&m));
        }

        #[test]
        fn charpoly_matches_symbolic(n in 1usize..6, v in prop::collection::vec(-3i64..4, 25)) {
            let m = int_matrix(n, &v[..n * n]);
            prop_assert_eq!(m.charpoly(), symbolic_charpoly(&m));
        }
    }
}
