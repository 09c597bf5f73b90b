//! Gaussian integers Z[i] and Gaussian rationals Q(i).

use super::ring::{Field, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part as `i128` when the value is real and fits.
    pub fn to_i128(&self) -> Option<i128> {
        if self.is_real() {
            self.re.to_i128()
        } else {
            None
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_complex(f, &self.re.to_string(), &self.im, self.im.is_zero(), self.re.is_zero())
    }
}

fn fmt_complex(
    f: &mut fmt::Formatter<'_>,
    re: &str,
    im: &impl fmt::Display,
    im_zero: bool,
    re_zero: bool,
) -> fmt::Result {
    let im_s = im.to_string();
    if im_zero {
        return write!(f, "{re}");
    }
    let im_part = match im_s.as_str() {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        s => format!("{s}i"),
    };
    if re_zero {
        write!(f, "{im_part}")
    } else if im_part.starts_with('-') {
        write!(f, "{re}{im_part}")
    } else {
        write!(f, "{re}+{im_part}")
    }
}

impl Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        GaussInt::new(v, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.mul(&o.conj());
        let re = <BigInt as Ring>::exact_div(&p.re, &n)?;
        let im = <BigInt as Ring>::exact_div(&p.im, &n)?;
        Some(GaussInt { re, im })
    }
    fn is_unit(&self) -> bool {
        num_traits::One::is_one(&self.norm())
    }
}

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_gauss(g: &GaussInt) -> Self {
        GaussRat {
            re: BigRational::from_integer(g.re.clone()),
            im: BigRational::from_integer(g.im.clone()),
        }
    }

    /// Back to Z[i] when both parts are integral.
    pub fn to_gauss(&self) -> Option<GaussInt> {
        (self.re.is_integer() && self.im.is_integer())
            .then(|| GaussInt { re: self.re.to_integer(), im: self.im.to_integer() })
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_complex(f, &self.re.to_string(), &self.im, self.im.is_zero(), self.re.is_zero())
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        GaussRat { re: BigRational::one(), im: BigRational::zero() }
    }
    fn from_i64(v: i64) -> Self {
        GaussRat { re: BigRational::from_integer(v.into()), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussRat { re: -&self.re, im: -&self.im }
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self.mul(&o.inv()))
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

/// Serialized form `[re, im]` with decimal strings, used by the JSON outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussJson(pub String, pub String);

impl From<&GaussRat> for GaussJson {
    fn from(g: &GaussRat) -> Self {
        GaussJson(g.re.to_string(), g.im.to_string())
    }
}

impl From<&GaussInt> for GaussJson {
    fn from(g: &GaussInt) -> Self {
        GaussJson(g.re.to_string(), g.im.to_string())
    }
}

/// Sign helper used when printing real parts.
pub fn is_negative(x: &BigInt) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_powers_cycle() {
        let i = GaussInt::i();
        let mut acc = GaussInt::one();
        for k in 0..9 {
            assert_eq!(acc, GaussInt::i_pow(k));
            acc = acc.mul(&i);
        }
        assert_eq!(GaussInt::i_pow(-1), GaussInt::new(0, -1));
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, -2);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&b), Some(a));
        assert_eq!(GaussInt::new(1, 0).exact_div(&GaussInt::new(1, 1)), None);
    }

    #[test]
    fn rational_inverse() {
        let x = GaussRat::from_gauss(&GaussInt::new(2, -3));
        assert_eq!(x.mul(&x.inv()), GaussRat::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussInt::new(2, 3).to_string(), "2+3i");
        assert_eq!(GaussInt::new(-2, -1).to_string(), "-2-i");
        assert_eq!(GaussInt::new(5, 0).to_string(), "5");
    }
}
