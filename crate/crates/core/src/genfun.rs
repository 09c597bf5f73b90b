//! Gaussian-integer transfer matrices on the parallelogram strip and the
//! generating functions `G_{A,B}(t) = sum_n (T(m)^n)_{A,B} t^n`.
//!
//! Boundary sets `A`, `B` are sets of rows `1..=m`, stored as bitmasks with
//! row `j` on bit `j - 1`.

use crate::algebra::{GaussInt, GaussRat, Matrix, Poly, Ring};
use crate::complex::{alternating_sum, ComplexError};
use crate::grid::{build_parallelogram, fix_boundary, GridError};
use crate::transfer::cyclotomic_test;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_M_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenfunError {
    #[error("m = {m} exceeds the cap of {cap}")]
    Cap { m: usize, cap: usize },
    #[error("m must be positive")]
    ZeroSize,
    #[error("boundary row {row} outside 1..={m}")]
    BoundaryRow { row: usize, m: usize },
    #[error("series of length {len} is too short, need at least {need}")]
    Underdetermined { len: usize, need: usize },
    #[error("matrix powers and direct enumeration disagree at t^{index}: {matrix} vs {direct}")]
    Mismatch { index: usize, matrix: String, direct: String },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn check_m(m: usize, cap: usize) -> Result<(), GenfunError> {
    if m == 0 {
        Err(GenfunError::ZeroSize)
    } else if m > cap {
        Err(GenfunError::Cap { m, cap })
    } else {
        Ok(())
    }
}

/// Bitmask of a set of rows.
pub fn row_mask(rows: &[usize], m: usize) -> Result<u64, GenfunError> {
    rows.iter().try_fold(0u64, |acc, &row| {
        if row == 0 || row > m {
            Err(GenfunError::BoundaryRow { row, m })
        } else {
            Ok(acc | 1 << (row - 1))
        }
    })
}

pub fn mask_rows(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// `m + 1 - A`.
pub fn reflect(mask: u64, m: usize) -> u64 {
    mask_rows(mask).into_iter().fold(0, |acc, j| acc | 1 << (m - j))
}

fn weight(a: u64, b: u64) -> GaussInt {
    GaussInt::i_pow((a.count_ones() + b.count_ones()) as i64)
}

/// States of T(m): all subsets of [m], state `k` is the mask `k`.
pub fn tm_states(m: usize) -> Vec<u64> {
    (0..1u64 << m).collect()
}

/// States of T'(m): independent sets of the m-path, in increasing mask order.
pub fn tpm_states(m: usize) -> Vec<u64> {
    (0..1u64 << m).filter(|s| s & (s >> 1) == 0).collect()
}

/// T(m): `i^{|A|+|B|}` when `A` misses both `B` and `B + 1`.
pub fn build_tm(m: usize) -> Result<Matrix<GaussInt>, GenfunError> {
    build_tm_capped(m, DEFAULT_M_CAP)
}

pub fn build_tm_capped(m: usize, cap: usize) -> Result<Matrix<GaussInt>, GenfunError> {
    check_m(m, cap)?;
    let full = (1u64 << m) - 1;
    let s = tm_states(m);
    Ok(Matrix::from_fn(s.len(), s.len(), |i, j| {
        let (a, b) = (s[i], s[j]);
        if a & b == 0 && a & (b << 1) & full == 0 {
            weight(a, b)
        } else {
            GaussInt::zero()
        }
    }))
}

/// T'(m): `i^{|A|+|B|}` on disjoint independent sets of the m-path.
pub fn build_tpm(m: usize) -> Result<Matrix<GaussInt>, GenfunError> {
    build_tpm_capped(m, DEFAULT_M_CAP)
}

pub fn build_tpm_capped(m: usize, cap: usize) -> Result<Matrix<GaussInt>, GenfunError> {
    check_m(m, cap)?;
    let s = tpm_states(m);
    Ok(Matrix::from_fn(s.len(), s.len(), |i, j| if s[i] & s[j] == 0 { weight(s[i], s[j]) } else { GaussInt::zero() }))
}

/// `det(I - tM)`: the characteristic polynomial with its `t` factors removed,
/// reversed.
pub fn stripped_charpoly(mat: &Matrix<GaussInt>) -> Poly<GaussInt> {
    mat.charpoly().strip_t().reversed()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectraReport {
    pub m: usize,
    pub dim_t: usize,
    pub dim_tp: usize,
    /// Ascending coefficients of `det(I - tT(m))`.
    pub stripped: Vec<String>,
    pub matches: bool,
    /// Zero eigenvalues of T(m) beyond those of T'(m).
    pub extra_zeros: usize,
    /// `tr T(m)^n = tr T'(m)^n` for `n = 1..=trace_terms`.
    pub traces_match: bool,
    pub trace_terms: usize,
}

pub fn spectra_match(m: usize, trace_terms: usize) -> Result<SpectraReport, GenfunError> {
    let t = build_tm(m)?;
    let tp = build_tpm(m)?;
    let (ct, ctp) = (t.charpoly(), tp.charpoly());
    let (st, stp) = (ct.strip_t().reversed(), ctp.strip_t().reversed());
    let traces_match = trace_series(&t, trace_terms)[1..] == trace_series(&tp, trace_terms)[1..];
    Ok(SpectraReport {
        m,
        dim_t: t.rows(),
        dim_tp: tp.rows(),
        stripped: st.coeffs().iter().map(|c| c.to_string()).collect(),
        matches: st == stp,
        extra_zeros: ct.t_valuation().saturating_sub(ctp.t_valuation()),
        traces_match,
        trace_terms,
    })
}

/// `tr M^n` for `n = 0..=terms`.
pub fn trace_series(mat: &Matrix<GaussInt>, terms: usize) -> Vec<GaussInt> {
    let mut out = vec![GaussInt::from_i64(mat.rows() as i64)];
    let mut p = mat.clone();
    for _ in 1..=terms {
        out.push(p.trace());
        p = p.mul(mat);
    }
    out
}

/// `(M^n)_{a,b}` for `n = 0..=terms`, by repeated row-vector products.
pub fn entry_series(mat: &Matrix<GaussInt>, a: usize, b: usize, terms: usize) -> Vec<GaussInt> {
    let mut v = vec![GaussInt::zero(); mat.rows()];
    v[a] = GaussInt::one();
    let mut out = Vec::with_capacity(terms + 1);
    for k in 0..=terms {
        out.push(v[b].clone());
        if k < terms {
            v = mat.vec_mul(&v);
        }
    }
    out
}

/// Row `a` of every power, `rows[n][b] = (M^n)_{a,b}`.
pub fn row_series(mat: &Matrix<GaussInt>, a: usize, terms: usize) -> Vec<Vec<GaussInt>> {
    let mut v = vec![GaussInt::zero(); mat.rows()];
    v[a] = GaussInt::one();
    let mut out = Vec::with_capacity(terms + 1);
    for _ in 0..=terms {
        let next = mat.vec_mul(&v);
        out.push(std::mem::replace(&mut v, next));
    }
    out
}

/// Coefficients `0..=terms` of `G_{A,B}` from powers of T(m).
pub fn g_series_matrix(m: usize, a: u64, b: u64, terms: usize) -> Result<Vec<GaussInt>, GenfunError> {
    let t = build_tm(m)?;
    Ok(entry_series(&t, a as usize, b as usize, terms))
}

/// `Z(P_{m,j}(A,B))`: the alternating sum over configurations of the
/// `m x j` parallelogram with the prescribed boundary columns.
pub fn z_boundary(m: usize, j: usize, a: u64, b: u64) -> Result<i128, GenfunError> {
    let g = build_parallelogram(m, j)?;
    let Some(fixed) = fix_boundary(&g, &mask_rows(a), &mask_rows(b))? else {
        return Ok(0);
    };
    let z = alternating_sum(&fixed.graph)?;
    Ok(if fixed.forced_count % 2 == 0 { z } else { -z })
}

/// Coefficients `0..=terms` of `G_{A,B}` from the boundary-fixed strips:
/// `delta_{A,B}` at `t^0` and `(-i)^{|A|+|B|} Z(P_{m,n+1}(A,B))` at `t^n`.
pub fn g_series_direct(m: usize, a: u64, b: u64, terms: usize) -> Result<Vec<GaussInt>, GenfunError> {
    check_m(m, DEFAULT_M_CAP)?;
    let w = GaussInt::i_pow(-((a.count_ones() + b.count_ones()) as i64));
    let mut out = vec![if a == b { GaussInt::one() } else { GaussInt::zero() }];
    for n in 1..=terms {
        let z = z_boundary(m, n + 1, a, b)?;
        out.push(w.mul(&GaussInt::real(BigInt::from(z))));
    }
    Ok(out)
}

/// Both routes, compared term by term.
pub fn g_series(m: usize, a: u64, b: u64, terms: usize) -> Result<Vec<GaussInt>, GenfunError> {
    let full = (1u64 << m) - 1;
    for x in [a, b] {
        if x & !full != 0 {
            return Err(GenfunError::BoundaryRow { row: 64 - x.leading_zeros() as usize, m });
        }
    }
    let by_matrix = g_series_matrix(m, a, b, terms)?;
    let direct = g_series_direct(m, a, b, terms)?;
    if let Some(index) = (0..=terms).find(|&k| by_matrix[k] != direct[k]) {
        return Err(GenfunError::Mismatch { index, matrix: by_matrix[index].to_string(), direct: direct[index].to_string() });
    }
    Ok(by_matrix)
}

/// Polynomial from small integer coefficients, ascending.
pub fn gpoly(coeffs: &[i64]) -> Poly<GaussInt> {
    Poly::new(coeffs.iter().map(|&c| GaussInt::from_i64(c)).collect())
}

/// `1 - t^k`.
pub fn one_minus_tk(k: usize) -> Poly<GaussInt> {
    Poly::one().sub(&Poly::monomial(GaussInt::one(), k))
}

/// Reduced `num / den` over Q(i) with `den(0) = 1`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: Poly<GaussRat>,
    pub den: Poly<GaussRat>,
}

impl RationalFunction {
    /// Reduces and normalizes. Panics on a zero denominator or one vanishing
    /// at `t = 0`.
    pub fn new(num: Poly<GaussRat>, den: Poly<GaussRat>) -> Self {
        assert!(!den.coeff(0).is_zero(), "denominator must not vanish at t = 0");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) } else { (num, den) };
        let d0 = den.coeff(0);
        let inv = crate::algebra::Field::inv(&d0);
        num = num.scale(&inv);
        den = den.scale(&inv);
        RationalFunction { num, den }
    }

    pub fn from_gauss(num: &Poly<GaussInt>, den: &Poly<GaussInt>) -> Self {
        RationalFunction::new(num.map(GaussRat::from_gauss), den.map(GaussRat::from_gauss))
    }

    pub fn polynomial(p: &Poly<GaussInt>) -> Self {
        RationalFunction::from_gauss(p, &Poly::one())
    }

    pub fn series(&self, terms: usize) -> Vec<GaussRat> {
        self.num.series_div(&self.den, terms).expect("den(0) is a unit")
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalFunction::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&RationalFunction { num: o.num.neg(), den: o.den.clone() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Self {
        RationalFunction::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    /// Numerator and denominator over Z[i], when integral.
    pub fn to_gauss(&self) -> Option<(Poly<GaussInt>, Poly<GaussInt>)> {
        let conv = |p: &Poly<GaussRat>| p.coeffs().iter().map(GaussRat::to_gauss).collect::<Option<Vec<_>>>().map(Poly::new);
        Some((conv(&self.num)?, conv(&self.den)?))
    }

    pub fn to_json(&self) -> RationalJson {
        let f = |p: &Poly<GaussRat>| p.coeffs().iter().map(|c| c.to_string()).collect();
        RationalJson { num: f(&self.num), den: f(&self.den), factored: self.factored() }
    }

    /// `num / [Phi_d^k ...]` when the denominator has real integer
    /// coefficients.
    pub fn factored(&self) -> Option<String> {
        let (num, den) = self.to_gauss()?;
        if !den.coeffs().iter().all(GaussInt::is_real) {
            return None;
        }
        let den_z: Poly<BigInt> = Poly::new(den.coeffs().iter().map(|c| c.re.clone()).collect());
        if den_z.degree().unwrap_or(0) == 0 {
            return Some(num.to_string());
        }
        let rep = cyclotomic_test(&den_z, 64);
        let mut parts: Vec<String> =
            rep.factors.iter().map(|&(d, k)| if k == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{k}") }).collect();
        if !rep.is_cyclotomic {
            parts.push(format!("({})", rep.remainder.join(", ")));
        }
        Some(format!("({num}) / [{}]", parts.join(" ")))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
    pub factored: Option<String>,
}

/// Smallest rational function with numerator degree `<= max_num` and
/// denominator degree `<= max_den` reproducing the whole series. Every
/// candidate `(p, q)` is fitted on `p + q + 1` coefficients and must also
/// match at least two further coefficients; `Ok(None)` when nothing fits.
pub fn rational_fit(series: &[GaussInt], max_num: usize, max_den: usize) -> Result<Option<RationalFunction>, GenfunError> {
    let need = max_num + max_den + 2;
    if series.len() < need {
        return Err(GenfunError::Underdetermined { len: series.len(), need });
    }
    let s: Vec<GaussRat> = series.iter().map(GaussRat::from_gauss).collect();
    let at = |k: isize| if k < 0 { GaussRat::zero() } else { s[k as usize].clone() };
    for q in 0..=max_den {
        for p in 0..=max_num {
            if p + q + 3 > s.len() {
                continue;
            }
            let eqs: Vec<usize> = (p + 1..s.len()).collect();
            let a = Matrix::from_fn(eqs.len(), q, |r, c| at(eqs[r] as isize - c as isize - 1));
            let rhs: Vec<GaussRat> = eqs.iter().map(|&k| at(k as isize).neg()).collect();
            let Some(d) = (if q == 0 { rhs.iter().all(Ring::is_zero).then(Vec::new) } else { a.solve(&rhs) }) else {
                continue;
            };
            let mut den = vec![GaussRat::one()];
            den.extend(d);
            let den = Poly::new(den);
            let num = Poly::new(
                (0..=p)
                    .map(|k| (0..=q.min(k)).fold(GaussRat::zero(), |acc, j| acc.add(&den.coeff(j).mul(&s[k - j]))))
                    .collect(),
            );
            let f = RationalFunction::new(num, den);
            if f.series(s.len()) == s {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

/// Coefficients of `G` below `t^k`.
pub fn truncation(series: &[GaussInt], k: usize) -> Poly<GaussInt> {
    Poly::new(series[..k.min(series.len())].to_vec())
}

/// One closed form: `G_{A,B}` on `m` rows as a rational function.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub name: &'static str,
    pub m: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub expected: RationalFunction,
}

fn rf(num: Poly<GaussInt>, den: Poly<GaussInt>) -> RationalFunction {
    RationalFunction::from_gauss(&num, &den)
}

/// The generating functions with known closed forms for m = 4 and m = 6.
pub fn closed_forms() -> Vec<ClosedForm> {
    let cyc6 = gpoly(&[1, -1, 1]);
    let d34 = gpoly(&[1, 0, 0, 1]).mul(&one_minus_tk(4));
    let i = GaussInt::i();
    let g00_4 = rf(Poly::one(), cyc6.clone());
    let pair = rf(gpoly(&[1, 0, 1, 1]), d34.clone());
    let single = rf(gpoly(&[1, 0, 0, 1, 0, 1]), d34.clone());
    let adjacent = RationalFunction::polynomial(&Poly::one()).sub(&rf(Poly::monomial(GaussInt::one(), 5), d34.clone()));
    let t2 = RationalFunction::polynomial(&Poly::monomial(GaussInt::one(), 2));
    let one = RationalFunction::polynomial(&Poly::one());
    let d14 = one_minus_tk(14);
    let mut out = vec![
        ClosedForm { name: "G_{0,0}(4)", m: 4, a: vec![], b: vec![], expected: g00_4.clone() },
        ClosedForm { name: "G_{23,23}(4)", m: 4, a: vec![2, 3], b: vec![2, 3], expected: pair.clone() },
        ClosedForm { name: "G_{14,14}(4)", m: 4, a: vec![1, 4], b: vec![1, 4], expected: pair },
        ClosedForm { name: "G_{12,12}(4)", m: 4, a: vec![1, 2], b: vec![1, 2], expected: adjacent.clone() },
        ClosedForm { name: "G_{34,34}(4)", m: 4, a: vec![3, 4], b: vec![3, 4], expected: adjacent },
        ClosedForm { name: "G_{124,124}(4)", m: 4, a: vec![1, 2, 4], b: vec![1, 2, 4], expected: rf(gpoly(&[1, -1]), cyc6) },
        ClosedForm { name: "G_{1234,1234}(4)", m: 4, a: vec![1, 2, 3, 4], b: vec![1, 2, 3, 4], expected: one.add(&t2.mul(&g00_4)) },
        ClosedForm {
            name: "G_{0,4}(4)",
            m: 4,
            a: vec![],
            b: vec![4],
            expected: rf(Poly::monomial(i.clone(), 1), gpoly(&[1, 0, 0, 1])),
        },
        ClosedForm {
            name: "G_{236,236}(6)",
            m: 6,
            a: vec![2, 3, 6],
            b: vec![2, 3, 6],
            expected: rf(gpoly(&[1, 1, 0, 0, 0, -1, -1, -1, 0, 0, 0, 1, 1]).mul(&gpoly(&[1, -1])), d14.mul(&one_minus_tk(4))),
        },
        ClosedForm {
            name: "G_{2,236}(6)",
            m: 6,
            a: vec![2],
            b: vec![2, 3, 6],
            expected: rf(gpoly(&[0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1]), d14.clone()),
        },
        ClosedForm {
            name: "G_{0,236}(6)",
            m: 6,
            a: vec![],
            b: vec![2, 3, 6],
            expected: rf(gpoly(&[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1]).scale(&i.neg()), d14.clone()),
        },
        ClosedForm {
            name: "G_{0,0}(6)",
            m: 6,
            a: vec![],
            b: vec![],
            expected: rf(gpoly(&[1, 1]), d14.clone()).add(&rf(Poly::monomial(GaussInt::one(), 3).mul(&one_minus_tk(12)), d14.mul(&one_minus_tk(3)))),
        },
    ];
    for r in 1..=4 {
        let name = ["G_{1,1}(4)", "G_{2,2}(4)", "G_{3,3}(4)", "G_{4,4}(4)"][r - 1];
        out.push(ClosedForm { name, m: 4, a: vec![r], b: vec![r], expected: single.clone() });
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitOutcome {
    pub name: String,
    pub m: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub fitted: Option<RationalJson>,
    pub expected: RationalJson,
    pub matches: bool,
}

/// Fit every closed form from `terms + 1` matrix-power coefficients.
pub fn fit_closed_forms(terms: usize, max_num: usize, max_den: usize) -> Result<Vec<FitOutcome>, GenfunError> {
    closed_forms()
        .into_par_iter()
        .map(|cf| {
            let s = g_series_matrix(cf.m, row_mask(&cf.a, cf.m)?, row_mask(&cf.b, cf.m)?, terms)?;
            let fit = rational_fit(&s, max_num, max_den)?;
            Ok(FitOutcome {
                name: cf.name.to_string(),
                m: cf.m,
                matches: fit.as_ref() == Some(&cf.expected),
                fitted: fit.map(|f| f.to_json()),
                expected: cf.expected.to_json(),
                a: cf.a,
                b: cf.b,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub j: usize,
    pub holds: bool,
}

/// For every `A` holding three consecutive rows `j-1, j, j+1` and
/// `B = A \ {j}`, test `G_{A,A} + G_{B,B} = 2` on `terms + 1` coefficients.
pub fn boundary_identity_check(m: usize, terms: usize) -> Result<Vec<BoundaryPair>, GenfunError> {
    let t = build_tm(m)?;
    let mut jobs = Vec::new();
    for a in 0..1u64 << m {
        for j in 2..m {
            let triple = 0b111u64 << (j - 2);
            if a & triple == triple {
                jobs.push((a, j, a & !(1 << (j - 1))));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(a, j, b)| {
            let ga = entry_series(&t, a as usize, a as usize, terms);
            let gb = entry_series(&t, b as usize, b as usize, terms);
            let holds = ga.iter().zip(&gb).enumerate().all(|(k, (x, y))| x.add(y) == GaussInt::from_i64(if k == 0 { 2 } else { 0 }));
            BoundaryPair { a: mask_rows(a), b: mask_rows(b), j, holds }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionCheck {
    pub name: String,
    pub j_from: usize,
    pub j_to: usize,
    /// Values of `j` where the two sides differ.
    pub failures: Vec<usize>,
}

impl RecursionCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

type Term = (i128, usize, u64, u64);

/// Linear recursions among boundary-fixed alternating sums, checked
/// term by term against direct enumeration for `horizon` values of `j`.
pub fn recursion_checks(m: usize, horizon: usize) -> Result<Vec<RecursionCheck>, GenfunError> {
    let r = |rows: &[usize]| row_mask(rows, m);
    // (name, lhs (A,B), rhs terms (coef, shift, A, B), first j)
    let mut specs: Vec<(String, (u64, u64), Vec<Term>, usize)> = Vec::new();
    match m {
        4 => {
            for beta in 1..16u64 {
                specs.push((format!("Z(0,{:?})[j] = -Z(0,{:?})[j-3]", mask_rows(beta), mask_rows(beta)), (0, beta), vec![(-1, 3, 0, beta)], 5));
            }
            let f = r(&[4])?;
            specs.push(("Z(4,4)[j] = Z(4,4)[j-4] + Z(0,4)[j-4]".into(), (f, f), vec![(1, 4, f, f), (1, 4, 0, f)], 6));
            for rows in [[1, 4], [2, 3]] {
                let x = r(&rows)?;
                specs.push((
                    format!("Z({rows:?},{rows:?})[j] = Z(0,{rows:?})[j-1] + Z({rows:?},{rows:?})[j-4]"),
                    (x, x),
                    vec![(1, 1, 0, x), (1, 4, x, x)],
                    6,
                ));
            }
        }
        6 => {
            let a = r(&[2, 3, 6])?;
            let two = r(&[2])?;
            specs.push(("Z(2,236)[j] = -Z(0,236)[j-6]".into(), (two, a), vec![(-1, 6, 0, a)], 8));
            specs.push((
                "Z(236,236)[j] = Z(236,236)[j-4] - Z(0,236)[j-1] - Z(2,236)[j-4]".into(),
                (a, a),
                vec![(1, 4, a, a), (-1, 1, 0, a), (-1, 4, two, a)],
                6,
            ));
            specs.push(("Z(0,236)[j] = Z(0,236)[j-14]".into(), (0, a), vec![(1, 14, 0, a)], 16));
        }
        _ => return Ok(vec![]),
    }
    specs
        .into_par_iter()
        .map(|(name, (la, lb), rhs, j_from)| {
            let j_to = j_from + horizon - 1;
            let mut failures = Vec::new();
            for j in j_from..=j_to {
                let lhs = z_boundary(m, j, la, lb)?;
                let mut sum = 0i128;
                for &(c, s, a, b) in &rhs {
                    sum += c * z_boundary(m, j - s, a, b)?;
                }
                if lhs != sum {
                    failures.push(j);
                }
            }
            Ok(RecursionCheck { name, j_from, j_to, failures })
        })
        .collect()
}

/// The coefficients `tr T(4)^n` predicted by the partial-fraction expansion:
/// `16` at `n = 0`, then `i^n + (-i)^n + 2(-1)^n + 2 + s_n` with
/// `s_0 = 2, s_1 = 1, s_n = s_{n-1} - s_{n-2}`.
pub fn m4_trace_prediction(terms: usize) -> Vec<GaussInt> {
    let mut s = vec![2i64, 1];
    while s.len() <= terms {
        let k = s.len();
        s.push(s[k - 1] - s[k - 2]);
    }
    (0..=terms)
        .map(|n| {
            if n == 0 {
                return GaussInt::from_i64(16);
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            GaussInt::i_pow(n as i64).add(&GaussInt::i_pow(-(n as i64))).add(&GaussInt::from_i64(2 * sign + 2 + s[n]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn gi(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn t1_entries() {
        let t = build_tm(1).unwrap();
        assert_eq!(t.get(0, 0), &gi(1, 0));
        assert_eq!(t.get(0, 1), &gi(0, 1));
        assert_eq!(t.get(1, 0), &gi(0, 1));
        assert_eq!(t.get(1, 1), &gi(0, 0));
        assert_eq!(build_tpm(1).unwrap().rows(), 2);
        assert!(matches!(build_tm(9), Err(GenfunError::Cap { .. })));
    }

    #[test]
    fn intersecting_rows_vanish() {
        let t = build_tm(4).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                if a & b != 0 {
                    assert!(t.get(a, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn dimensions_follow_fibonacci() {
        let fib = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for m in 1..=8 {
            assert_eq!(tpm_states(m).len(), fib[m + 2]);
        }
    }

    #[test]
    fn charpolys_m4_m6() {
        let p4 = stripped_charpoly(&build_tpm(4).unwrap());
        let e4 = gpoly(&[1, -1, 1]).mul(&one_minus_tk(2)).mul(&one_minus_tk(4));
        assert_eq!(p4, e4);
        let p6 = stripped_charpoly(&build_tpm(6).unwrap());
        let e6 = one_minus_tk(4).pow(2).mul(&one_minus_tk(14)).div_exact(&gpoly(&[1, 1])).unwrap();
        assert_eq!(p6, e6);
        let rep = spectra_match(4, 20).unwrap();
        assert!(rep.matches && rep.traces_match);
        assert_eq!(rep.extra_zeros, 8);
    }

    #[test]
    fn integer_oracle_for_powers() {
        // T = D S D with D = diag(i^{|A|}); D^2 = diag((-1)^{|A|}).
        let m = 3;
        let full = 7u64;
        let size = 8usize;
        let s = |a: u64, b: u64| (a & b == 0 && a & (b << 1) & full == 0) as i64;
        let d2 = |a: u64| if a.count_ones() % 2 == 0 { 1 } else { -1 };
        let t = build_tm(m).unwrap();
        for a in 0..size {
            let mut v: Vec<i64> = (0..size).map(|b| s(a as u64, b as u64)).collect();
            let series = row_series(&t, a, 6);
            for (n, row) in series.iter().enumerate().skip(1) {
                for b in 0..size {
                    let w = GaussInt::i_pow((a.count_ones() + b.count_ones()) as i64);
                    assert_eq!(row[b], w.mul(&GaussInt::from_i64(v[b])), "n={n} a={a} b={b}");
                }
                v = (0..size).map(|b| (0..size).map(|k| v[k] * d2(k as u64) * s(k as u64, b as u64)).sum()).collect();
            }
        }
    }

    #[test]
    fn dual_route_small() {
        for m in 1..=3 {
            for a in 0..1u64 << m {
                for b in 0..1u64 << m {
                    g_series(m, a, b, 8).unwrap();
                }
            }
        }
    }

    #[test]
    fn g00_m4() {
        let s = g_series(4, 0, 0, 12).unwrap();
        let v: Vec<i64> = s.iter().map(|c| c.to_i128().unwrap().to_i64().unwrap()).collect();
        assert_eq!(v, [1, 1, 0, -1, -1, 0, 1, 1, 0, -1, -1, 0, 1]);
        let f = rational_fit(&s, 4, 4).unwrap().unwrap();
        assert_eq!(f, rf(Poly::one(), gpoly(&[1, -1, 1])));
        assert_eq!(f.den.degree(), Some(2));
    }

    #[test]
    fn truncations() {
        let g = |m, a: &[usize], b: &[usize], n| g_series_matrix(m, row_mask(a, m).unwrap(), row_mask(b, m).unwrap(), n).unwrap();
        let i = GaussInt::i();
        assert_eq!(truncation(&g(4, &[4], &[4], 10), 5), gpoly(&[1, 0, 0, 0, 1]));
        assert_eq!(truncation(&g(4, &[], &[4], 10), 4), Poly::monomial(i.clone(), 1));
        assert_eq!(truncation(&g(4, &[1, 4], &[1, 4], 10), 5), gpoly(&[1, 0, 1, 0, 1]));
        assert_eq!(truncation(&g(4, &[], &[1, 4], 10), 4), gpoly(&[0, -1]));
        assert_eq!(truncation(&g(6, &[2, 3, 6], &[2, 3, 6], 10), 5), gpoly(&[1, 0, -1, 0, 1]));
        assert_eq!(truncation(&g(6, &[], &[2, 3, 6], 20), 4), Poly::monomial(i.neg(), 1));
        assert_eq!(truncation(&g(6, &[], &[2, 3, 6], 20), 15), gpoly(&[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1]).scale(&i.neg()));
        assert_eq!(truncation(&g(6, &[2], &[2, 3, 6], 20), 7), Poly::monomial(GaussInt::one(), 4));
    }

    #[test]
    fn closed_forms_expand() {
        for cf in closed_forms() {
            let s = g_series_matrix(cf.m, row_mask(&cf.a, cf.m).unwrap(), row_mask(&cf.b, cf.m).unwrap(), 40).unwrap();
            let e = cf.expected.series(41);
            assert_eq!(s.iter().map(GaussRat::from_gauss).collect::<Vec<_>>(), e, "{}", cf.name);
        }
    }

    #[test]
    fn fit_rejects_short_series() {
        assert!(matches!(rational_fit(&vec![GaussInt::one(); 3], 2, 2), Err(GenfunError::Underdetermined { .. })));
        let noisy: Vec<GaussInt> = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23].iter().map(|&x| GaussInt::from_i64(x)).collect();
        assert!(rational_fit(&noisy, 2, 2).unwrap().is_none());
    }

    #[test]
    fn boundary_identity_m4() {
        let pairs = boundary_identity_check(4, 24).unwrap();
        assert!(pairs.iter().all(|p| p.holds));
        assert!(pairs.iter().any(|p| p.a == vec![1, 2, 3] && p.b == vec![1, 3]));
        let g = |a: &[usize]| {
            let x = row_mask(a, 4).unwrap();
            g_series_matrix(4, x, x, 30).unwrap()
        };
        let g00 = rf(Poly::one(), gpoly(&[1, -1, 1])).series(31);
        let t2 = |s: &[GaussRat], k: usize| if k < 2 { GaussRat::zero() } else { s[k - 2].clone() };
        let full = g(&[1, 2, 3, 4]);
        let x124 = g(&[1, 2, 4]);
        for k in 0..=30 {
            let d = GaussRat::from_i64((k == 0) as i64);
            assert_eq!(GaussRat::from_gauss(&full[k]), d.add(&t2(&g00, k)));
            assert_eq!(GaussRat::from_gauss(&x124[k]), d.sub(&t2(&g00, k)));
        }
    }

    #[test]
    fn m4_trace_series() {
        let t = build_tm(4).unwrap();
        assert_eq!(trace_series(&t, 30), m4_trace_prediction(30));
        let diag: Vec<GaussInt> = (0..=12).map(|n| (0..16).fold(GaussInt::zero(), |acc, a| acc.add(&entry_series(&t, a, a, 12)[n]))).collect();
        assert_eq!(diag, trace_series(&t, 12));
    }

    #[test]
    fn recursions_m4() {
        for c in recursion_checks(4, 20).unwrap() {
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn reflection_symmetry() {
        let t = build_tm(5).unwrap();
        for a in 0..32u64 {
            let r = reflect(a, 5);
            assert_eq!(entry_series(&t, a as usize, a as usize, 15), entry_series(&t, r as usize, r as usize, 15));
        }
    }
}
