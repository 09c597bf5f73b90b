//! Transfer matrices at activity -1 for square and hexagonal cylinders and
//! tori, their traces and characteristic polynomials, and detection of
//! cyclotomic factors.

use crate::algebra::{Matrix, Poly};
use crate::complex::{self, ComplexError};
use crate::grid::{Family, GridError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of column states.
pub const DEFAULT_STATE_CAP: usize = 5000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransferError {
    #[error("{states} column states exceed the cap of {cap}")]
    Cap { states: usize, cap: usize },
    #[error("size parameters must be positive")]
    ZeroSize,
    #[error("no transfer matrix for family {0}")]
    Unsupported(&'static str),
    #[error("result does not fit in i128")]
    Overflow,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Square sparse integer matrix indexed by column states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub states: Vec<u64>,
    rows: Vec<Vec<(u32, i64)>>,
}

impl TransferMatrix {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i].iter().find(|e| e.0 as usize == j).map_or(0, |e| e.1)
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn to_matrix(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                m.set(i, j as usize, BigInt::from(v));
            }
        }
        m
    }

    /// `v * T^n` for a row vector.
    pub fn apply_power(&self, v: &[BigInt], n: usize) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for _ in 0..n {
            let mut w = vec![BigInt::from(0); self.dim()];
            for (i, x) in v.iter().enumerate() {
                if x.sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                for &(j, a) in &self.rows[i] {
                    w[j as usize] += x * a;
                }
            }
            v = w;
        }
        v
    }

    fn apply_power_i128(&self, v: &[i128], n: usize) -> Option<Vec<i128>> {
        let mut v = v.to_vec();
        for _ in 0..n {
            let mut w = vec![0i128; self.dim()];
            for (i, &x) in v.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for &(j, a) in &self.rows[i] {
                    let t = x.checked_mul(a as i128)?;
                    w[j as usize] = w[j as usize].checked_add(t)?;
                }
            }
            v = w;
        }
        Some(v)
    }

    /// `tr(T^n)`, exact.
    pub fn trace_power(&self, n: usize) -> BigInt {
        let d = self.dim();
        let small: Option<i128> = (0..d)
            .into_par_iter()
            .map(|s| {
                let mut e = vec![0i128; d];
                e[s] = 1;
                self.apply_power_i128(&e, n).map(|v| v[s])
            })
            .try_reduce(|| 0, |a, b| a.checked_add(b));
        if let Some(z) = small {
            return BigInt::from(z);
        }
        (0..d)
            .into_par_iter()
            .map(|s| {
                let mut e = vec![BigInt::from(0); d];
                e[s] = BigInt::from(1);
                self.apply_power(&e, n)[s].clone()
            })
            .sum()
    }

    /// Sparse product `self * o` on matching state spaces.
    pub fn compose(&self, o: &TransferMatrix) -> TransferMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = vec![0i64; o.dim()];
                for &(k, a) in r {
                    for &(j, b) in &o.rows[k as usize] {
                        acc[j as usize] += a * b;
                    }
                }
                acc.iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &v)| (j as u32, v)).collect()
            })
            .collect();
        TransferMatrix { states: self.states.clone(), rows }
    }
}

fn to_i128(z: BigInt) -> Result<i128, TransferError> {
    z.to_i128().ok_or(TransferError::Overflow)
}

fn sign(mask: u64) -> i64 {
    if mask.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Independent sets of the path on `m` vertices, as bitmasks.
pub fn path_states(m: usize) -> Vec<u64> {
    (0u64..1 << m).filter(|s| s & (s >> 1) == 0).collect()
}

/// Column states of the square torus: independent sets of the `m`-cycle,
/// with the degenerate one- and two-row columns.
pub fn cycle_states(m: usize) -> Vec<u64> {
    match m {
        1 => vec![0],
        2 => path_states(2),
        _ => path_states(m).into_iter().filter(|s| !(s & 1 == 1 && s >> (m - 1) & 1 == 1)).collect(),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), TransferError> {
    if n > cap {
        Err(TransferError::Cap { states: n, cap })
    } else {
        Ok(())
    }
}

fn disjoint_matrix(from: &[u64], to: &[u64], ok: impl Fn(u64, u64) -> bool + Sync) -> Vec<Vec<(u32, i64)>> {
    from.par_iter()
        .map(|&s| to.iter().enumerate().filter(|(_, &t)| ok(s, t)).map(|(j, &t)| (j as u32, sign(t))).collect())
        .collect()
}

/// T[s][t] = (-1)^|t| when s and t are disjoint, states the independent sets
/// of the `m`-path.
pub fn build_transfer_square(m: usize) -> Result<TransferMatrix, TransferError> {
    build_transfer_square_capped(m, DEFAULT_STATE_CAP)
}

pub fn build_transfer_square_capped(m: usize, cap: usize) -> Result<TransferMatrix, TransferError> {
    if m == 0 {
        return Err(TransferError::ZeroSize);
    }
    if m > 40 {
        return Err(TransferError::Cap { states: usize::MAX, cap });
    }
    let states = path_states(m);
    check_cap(states.len(), cap)?;
    let rows = disjoint_matrix(&states, &states, |s, t| s & t == 0);
    Ok(TransferMatrix { states, rows })
}

/// Square torus column transfer: cyclic column states.
pub fn build_transfer_square_torus(m: usize, cap: usize) -> Result<TransferMatrix, TransferError> {
    if m == 0 {
        return Err(TransferError::ZeroSize);
    }
    if m > 40 {
        return Err(TransferError::Cap { states: usize::MAX, cap });
    }
    let states = cycle_states(m);
    check_cap(states.len(), cap)?;
    let rows = disjoint_matrix(&states, &states, |s, t| s & t == 0);
    Ok(TransferMatrix { states, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HexVariant {
    Cyl,
    Torus,
}

/// States of hexagonal cylinder column `c` (1-based) with `m + 1` rows: the
/// column's vertical edges join rows `r, r + 1` with `r + c` even.
fn hex_column_states(m: usize, odd_column: bool) -> Vec<u64> {
    let rungs: u64 = (1..=m).filter(|r| (r + if odd_column { 1 } else { 0 }) % 2 == 0).fold(0, |a, r| a | 1 << (r - 1));
    (0u64..1 << (m + 1)).filter(|s| s & (s >> 1) & rungs == 0).collect()
}

/// Two-column transfer matrix for the hexagonal cylinder or torus. For the
/// cylinder the states are the odd columns' independent sets; for the torus
/// the columns run along the skew direction, which has no internal edges, and
/// every subset of the `m` rows is a state.
pub fn build_transfer_hex(m: usize, variant: HexVariant, cap: usize) -> Result<TransferMatrix, TransferError> {
    if m == 0 {
        return Err(TransferError::ZeroSize);
    }
    match variant {
        HexVariant::Cyl => {
            if m > 30 {
                return Err(TransferError::Cap { states: usize::MAX, cap });
            }
            let odd = hex_column_states(m, true);
            let even = hex_column_states(m, false);
            check_cap(odd.len().max(even.len()), cap)?;
            let a = TransferMatrix { states: odd.clone(), rows: disjoint_matrix(&odd, &even, |s, t| s & t == 0) };
            let b = TransferMatrix { states: even.clone(), rows: disjoint_matrix(&even, &odd, |s, t| s & t == 0) };
            Ok(a.compose(&b))
        }
        HexVariant::Torus => {
            if m > 30 {
                return Err(TransferError::Cap { states: usize::MAX, cap });
            }
            let all: Vec<u64> = (0u64..1 << m).collect();
            check_cap(all.len(), cap)?;
            let full = (1u64 << m) - 1;
            let shift = move |s: u64| ((s << 1) | (s >> (m - 1))) & full;
            let a = TransferMatrix { states: all.clone(), rows: disjoint_matrix(&all, &all, |s, t| s & t == 0 && shift(s) & t == 0) };
            let b = TransferMatrix { states: all.clone(), rows: disjoint_matrix(&all, &all, |s, t| s & t == 0) };
            Ok(a.compose(&b))
        }
    }
}

/// Z(C_{m,n}) = tr(T^n).
pub fn z_cylinder(m: usize, n: usize) -> Result<i128, TransferError> {
    if n == 0 {
        return Err(TransferError::ZeroSize);
    }
    to_i128(build_transfer_square(m)?.trace_power(n))
}

/// Z(S_{m,n}) from the empty virtual column, summed over final states.
pub fn z_rect(m: usize, n: usize) -> Result<i128, TransferError> {
    let t = build_transfer_square(m)?;
    let mut e = vec![BigInt::from(0); t.dim()];
    e[0] = BigInt::from(1);
    to_i128(t.apply_power(&e, n).into_iter().sum())
}

/// Z(T_{m,n}) = tr(T_cyc^n).
pub fn z_torus(m: usize, n: usize) -> Result<i128, TransferError> {
    if n == 0 {
        return Err(TransferError::ZeroSize);
    }
    to_i128(build_transfer_square_torus(m, DEFAULT_STATE_CAP)?.trace_power(n))
}

pub fn z_hex(m: usize, n: usize, variant: HexVariant) -> Result<i128, TransferError> {
    if n == 0 {
        return Err(TransferError::ZeroSize);
    }
    to_i128(build_transfer_hex(m, variant, DEFAULT_STATE_CAP)?.trace_power(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZMethod {
    Transfer,
    FrontierDp,
}

/// Z of a family member, by transfer matrix when the state space is at most
/// `cap` (and at most 162 states for the hexagonal cylinder), otherwise by the
/// frontier dynamic program.
pub fn partition_function(family: Family, m: usize, n: usize, cap: usize) -> Result<(i128, ZMethod), TransferError> {
    if m == 0 || n == 0 {
        return Err(TransferError::ZeroSize);
    }
    let by_transfer = match family {
        Family::SquareCyl => z_cylinder_capped(m, n, cap),
        Family::SquareRect => build_transfer_square_capped(m, cap).and_then(|_| z_rect(m, n)),
        Family::SquareTorus => build_transfer_square_torus(m, cap).and_then(|t| to_i128(t.trace_power(n))),
        Family::HexCyl if m <= 8 => build_transfer_hex(m, HexVariant::Cyl, cap).and_then(|t| to_i128(t.trace_power(n))),
        Family::HexTorus => build_transfer_hex(m, HexVariant::Torus, cap).and_then(|t| to_i128(t.trace_power(n))),
        _ => Err(TransferError::Unsupported(family.name())),
    };
    match by_transfer {
        Ok(z) => Ok((z, ZMethod::Transfer)),
        Err(TransferError::Cap { .. } | TransferError::Unsupported(_)) => {
            let g = family.build(m, n)?;
            Ok((complex::alternating_sum(&g)?, ZMethod::FrontierDp))
        }
        Err(e) => Err(e),
    }
}

fn z_cylinder_capped(m: usize, n: usize, cap: usize) -> Result<i128, TransferError> {
    to_i128(build_transfer_square_capped(m, cap)?.trace_power(n))
}

/// det(tI - T), monic.
pub fn char_poly(t: &TransferMatrix) -> Poly<BigInt> {
    t.to_matrix().charpoly()
}

/// det(I - tT): the characteristic polynomial with powers of `t` stripped and
/// coefficients reversed, constant term 1.
pub fn stripped_char_poly(t: &TransferMatrix) -> Poly<BigInt> {
    char_poly(t).strip_t().reversed()
}

fn mobius(n: usize) -> i32 {
    let (mut n, mut mu, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        -mu
    } else {
        mu
    }
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The d-th cyclotomic polynomial.
pub fn cyclotomic(d: usize) -> Poly<BigInt> {
    let (mut num, mut den) = (Poly::one(), Poly::one());
    for e in (1..=d).filter(|e| d % e == 0) {
        let f = Poly::monomial(BigInt::from(1), e).sub(&Poly::one());
        match mobius(d / e) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicReport {
    pub is_cyclotomic: bool,
    /// `(d, multiplicity)` for every Phi_d dividing the stripped polynomial.
    pub factors: Vec<(usize, u32)>,
    /// lcm of the orders found: all roots are N-th roots of unity when
    /// `is_cyclotomic`.
    pub n: Option<u64>,
    /// What is left after removing the cyclotomic factors, as ascending
    /// coefficients.
    pub remainder: Vec<String>,
    pub t_power: usize,
}

/// Remove t^k, then divide out Phi_d for every d up to `bound` whose degree
/// fits. The answer is positive when a unit remains.
pub fn cyclotomic_test(p: &Poly<BigInt>, bound: usize) -> CyclotomicReport {
    assert!(!p.is_zero(), "zero polynomial");
    let t_power = p.t_valuation();
    let mut rest = p.strip_t();
    let mut factors = Vec::new();
    let mut d = 1;
    while d <= bound && rest.degree().unwrap_or(0) > 0 {
        if totient(d) <= rest.degree().unwrap_or(0) {
            let phi = cyclotomic(d);
            let mut k = 0;
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                k += 1;
            }
            if k > 0 {
                factors.push((d, k));
            }
        }
        d += 1;
    }
    let is_cyclotomic = rest.degree() == Some(0) && rest.coeff(0).magnitude() == &num_bigint::BigUint::from(1u8);
    let n = is_cyclotomic.then(|| factors.iter().fold(1u64, |a, &(d, _)| a.lcm(&(d as u64))));
    CyclotomicReport { is_cyclotomic, factors, n, remainder: rest.coeffs().iter().map(ToString::to_string).collect(), t_power }
}

/// Conjectured value of Z(C_{m,n}) for odd `n`: -2 when 3 divides
/// gcd(m - 1, n), otherwise 1.
pub fn odd_cylinder_prediction(m: usize, n: usize) -> i128 {
    if (m - 1).gcd(&n) % 3 == 0 {
        -2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::alternating_sum;
    use crate::grid::*;
    use proptest::prelude::*;

    fn p(v: &[i64]) -> Poly<BigInt> {
        Poly::from_i64(v)
    }

    #[test]
    fn small_square_matrices() {
        let t = build_transfer_square(1).unwrap();
        assert_eq!((t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1)), (1, -1, 1, 0));
        assert_eq!(build_transfer_square(4).unwrap().dim(), 8);
        let t = build_transfer_square(3).unwrap();
        let full = t.states.iter().position(|&s| s == 0b101).unwrap();
        assert_eq!(t.row(full).len(), 2);
        let t = build_transfer_square(1).unwrap();
        assert_eq!(t.row(1), &[(0, 1)]);
    }

    #[test]
    fn cylinder_values() {
        assert_eq!(z_cylinder(4, 6), Ok(4));
        assert_eq!(z_cylinder(11, 4), Ok(-11));
        assert_eq!(z_cylinder(4, 9), Ok(-2));
    }

    #[test]
    fn rectangles() {
        // 1 empty set, 6 singletons, 8 pairs, 2 triples; the complex is a circle.
        assert_eq!(z_rect(3, 2), Ok(1));
        assert_eq!(z_rect(1, 1), Ok(0));
        let path: Vec<i128> = (1..=12).map(|n| z_rect(1, n).unwrap()).collect();
        assert_eq!(path, vec![0, -1, -1, 0, 1, 1, 0, -1, -1, 0, 1, 1]);
    }

    #[test]
    fn hexagonal_values() {
        assert_eq!(z_hex(3, 3, HexVariant::Cyl), Ok(-7));
        assert_eq!(z_hex(3, 3, HexVariant::Torus), Ok(-10));
        let fib = [1i128, 2, 3, 5, 8, 13, 21, 34, 55];
        for m in 1..=8 {
            let want = if m % 2 == 1 { fib[m] } else { -fib[m] };
            assert_eq!(z_hex(m, 2, HexVariant::Cyl), Ok(want), "m={m}");
        }
    }

    #[test]
    fn hex_torus_polynomials() {
        let sp = |m| stripped_char_poly(&build_transfer_hex(m, HexVariant::Torus, 100).unwrap());
        assert_eq!(sp(1), p(&[1, 1, 1]));
        assert_eq!(sp(2), p(&[1, 1, -1]));
        assert_eq!(sp(3), p(&[1, -1, 1]).mul(&p(&[1, -1, 2, 1])));
        let want = p(&[1, 1, -1]).mul(&p(&[1, -1]).pow(3)).mul(&p(&[1, 1]).pow(3)).mul(&p(&[1, 0, 1]));
        assert_eq!(sp(4), want);
    }

    #[test]
    fn two_by_two_charpoly() {
        assert_eq!(char_poly(&build_transfer_square(1).unwrap()), p(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_detection() {
        let q = p(&[1, -1, 1]).mul(&p(&[1, 0, -1])).mul(&p(&[1, 0, 0, 0, -1]));
        let r = cyclotomic_test(&q, 100);
        assert!(r.is_cyclotomic);
        assert_eq!(r.n, Some(12));
        assert_eq!(r.factors, vec![(1, 2), (2, 2), (4, 1), (6, 1)]);
        assert!(!cyclotomic_test(&p(&[-2, 1]), 10).is_cyclotomic);
        let hex3 = stripped_char_poly(&build_transfer_hex(3, HexVariant::Cyl, 100).unwrap());
        assert!(!cyclotomic_test(&hex3, 2 * 400).is_cyclotomic);
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
    }

    #[test]
    fn square_charpolys_are_cyclotomic() {
        for m in 1..=6 {
            let t = build_transfer_square(m).unwrap();
            let r = cyclotomic_test(&char_poly(&t), 2 * t.dim() * t.dim());
            assert!(r.is_cyclotomic, "m={m}");
        }
    }

    #[test]
    fn odd_cylinders() {
        for m in 1..=8 {
            for n in (1..=9).step_by(2) {
                assert_eq!(z_cylinder(m, n).unwrap(), odd_cylinder_prediction(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn coprime_tori() {
        for m in 1..=7usize {
            for n in 1..=7usize {
                if m.gcd(&n) == 1 {
                    assert_eq!(z_torus(m, n), Ok(1), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn method_choice() {
        assert_eq!(partition_function(Family::HexCyl, 3, 3, DEFAULT_STATE_CAP), Ok((-7, ZMethod::Transfer)));
        assert_eq!(partition_function(Family::HexCyl, 9, 1, DEFAULT_STATE_CAP).unwrap().1, ZMethod::FrontierDp);
        assert_eq!(partition_function(Family::SquareCyl, 4, 9, 3), Ok((-2, ZMethod::FrontierDp)));
        assert_eq!(partition_function(Family::Parallelogram, 3, 3, 100).unwrap().1, ZMethod::FrontierDp);
    }

    proptest! {
        #[test]
        fn transfer_matches_brute_force(m in 1usize..6, n in 1usize..6) {
            prop_assert_eq!(z_cylinder(m, n).unwrap(), alternating_sum(&build_square_cyl(m, n).unwrap()).unwrap());
            prop_assert_eq!(z_rect(m, n).unwrap(), alternating_sum(&build_square_rect(m, n).unwrap()).unwrap());
            prop_assert_eq!(z_torus(m, n).unwrap(), alternating_sum(&build_square_torus(m, n).unwrap()).unwrap());
        }

        #[test]
        fn hex_transfer_matches_brute_force(m in 1usize..5, n in 1usize..4) {
            prop_assert_eq!(z_hex(m, n, HexVariant::Cyl).unwrap(), alternating_sum(&build_hex_cyl(m, n).unwrap()).unwrap());
            prop_assert_eq!(z_hex(m, n, HexVariant::Torus).unwrap(), alternating_sum(&build_hex_torus(m, n).unwrap()).unwrap());
        }
    }
}
