//! Dense univariate polynomials in `t` over an exact ring.

use super::ring::{Field, Ring};
use std::fmt;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![R::one()] }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&x| R::from_i64(x)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Multiplicity of `t` as a factor.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide out the largest power of `t`.
    pub fn strip_t(&self) -> Self {
        Poly { coeffs: self.coeffs[self.t_valuation()..].to_vec() }
    }

    /// `t^deg p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Long division. Succeeds when every quotient step divides exactly by the
    /// divisor's leading coefficient.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.lead()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut q = vec![R::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let f = c.exact_div(&lead)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&f.mul(dc));
            }
            q[k] = f;
        }
        Some((Poly::new(q), Poly::new(rem)))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// First `n` power-series coefficients of `self / den`. Needs an invertible
    /// constant term in `den` (exact division in `R`).
    pub fn series_div(&self, den: &Self, n: usize) -> Option<Vec<R>> {
        let d0 = den.coeffs.first()?.clone();
        let mut out: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc.sub(&den.coeffs[j].mul(&out[k - j]));
            }
            out.push(acc.exact_div(&d0)?);
        }
        Some(out)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> Poly<F> {
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv()),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("field division");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s[1..].contains(['+', '-']);
            let body = if compound { format!("({s})") } else { s.clone() };
            let (sign, mag) = match body.strip_prefix('-') {
                Some(rest) if !compound => ("-", rest.to_string()),
                _ => ("+", body.clone()),
            };
            let mag = match (k, mag.as_str()) {
                (0, _) => mag,
                (_, "1") => String::new(),
                _ => mag,
            };
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{mag}{var}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    #[test]
    fn trims_and_degree() {
        let p = P::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(P::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_round_trip() {
        let a = P::from_i64(&[1, -1, 1]);
        let b = P::from_i64(&[1, 0, 0, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        let (q, r) = prod.add(&P::from_i64(&[3])).div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert_eq!(r, P::from_i64(&[3]));
    }

    #[test]
    fn series_of_reciprocal() {
        // 1/(1 - t + t^2) = 1 + t - t^3 - t^4 + t^6 + ...
        let s = P::one().series_div(&P::from_i64(&[1, -1, 1]), 8).unwrap();
        let want: Vec<BigInt> = [1, 1, 0, -1, -1, 0, 1, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn strip_and_reverse() {
        let p = P::from_i64(&[0, 0, 1, 2, 3]);
        assert_eq!(p.t_valuation(), 2);
        assert_eq!(p.strip_t(), P::from_i64(&[1, 2, 3]));
        assert_eq!(p.strip_t().reversed(), P::from_i64(&[3, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(P::from_i64(&[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(P::from_i64(&[0, -2, 0, 1]).to_string(), "-2t + t^3");
    }
}
