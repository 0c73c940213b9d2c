//! Truncated q-series with exact rational coefficients, eta quotients, the
//! operators `U_d`, `V_d` and `T_{p^2}`, and the coefficientwise check of the
//! class number expression for the self-conjugate 7-core generating function.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::abacus::sc_t_core_counts;
use crate::arith::{self, kronecker};
use crate::class_numbers::{hurwitz_zero, shared_table};
use crate::error::{Error, Result};

/// Coefficients of `q^0, ..., q^N`; nothing beyond `N` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational64>,
}

impl QSeries {
    pub fn zero(precision: usize) -> Self {
        QSeries { coeffs: vec![Rational64::zero(); precision + 1] }
    }

    pub fn one(precision: usize) -> Self {
        let mut s = QSeries::zero(precision);
        s.coeffs[0] = Rational64::one();
        s
    }

    /// Series from coefficients `c_0..=c_N`, precision `N`.
    pub fn from_coeffs(coeffs: Vec<Rational64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        QSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        QSeries::from_coeffs(coeffs.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; panics past the precision.
    pub fn coeff(&self, n: usize) -> Rational64 {
        assert!(n <= self.precision(), "coefficient {n} beyond precision {}", self.precision());
        self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<Rational64> {
        self.coeffs.get(n).copied()
    }

    pub fn set(&mut self, n: usize, v: Rational64) {
        self.coeffs[n] = v;
    }

    pub fn truncate(&self, precision: usize) -> QSeries {
        assert!(precision <= self.precision());
        QSeries { coeffs: self.coeffs[..=precision].to_vec() }
    }

    pub fn scale(&self, k: Rational64) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }

    /// `q^k f`, precision `N + k`.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut coeffs = vec![Rational64::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        QSeries { coeffs }
    }

    /// `f | U_d`: `c(dn)`, precision `floor(N/d)`.
    pub fn u_op(&self, d: usize) -> QSeries {
        assert!(d >= 1);
        let p = self.precision() / d;
        QSeries { coeffs: (0..=p).map(|n| self.coeffs[d * n]).collect() }
    }

    /// `f | V_d`: `c(n)` moved to `q^{dn}`, precision `N d`.
    pub fn v_op(&self, d: usize) -> QSeries {
        assert!(d >= 1);
        let mut out = QSeries::zero(self.precision() * d);
        for (n, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[d * n] = c;
        }
        out
    }

    /// Weight `lambda + 1/2` Hecke operator at `p^2`:
    /// `c(p^2 n) + (((-1)^lambda n)/p) p^(lambda-1) c(n) + p^(2 lambda - 1) c(n/p^2)`,
    /// precision `floor(N/p^2)`.
    pub fn hecke_t_p2(&self, p: i64, lambda: u32) -> QSeries {
        assert!(arith::is_prime(p));
        assert!(lambda >= 1);
        let pp = (p * p) as usize;
        let prec = self.precision() / pp;
        let sign = if lambda % 2 == 0 { 1 } else { -1 };
        let mid = Rational64::from_integer(p.pow(lambda - 1));
        let last = Rational64::from_integer(p.pow(2 * lambda - 1));
        let coeffs = (0..=prec)
            .map(|n| {
                let mut v = self.coeffs[pp * n];
                v += Rational64::from_integer(kronecker(sign * n as i64, p)) * mid * self.coeffs[n];
                if n % pp == 0 {
                    v += last * self.coeffs[n / pp];
                }
                v
            })
            .collect();
        QSeries { coeffs }
    }

    /// First exponent where the two series differ, up to the smaller precision.
    pub fn first_difference(&self, other: &QSeries) -> Option<usize> {
        let p = self.precision().min(other.precision());
        (0..=p).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    /// Lines `exponent<TAB>numerator/denominator`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(s, "{n}\t{}/{}", c.numer(), c.denom());
        }
        s
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let p = self.precision().min(o.precision());
        QSeries { coeffs: (0..=p).map(|n| self.coeffs[n] + o.coeffs[n]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let p = self.precision().min(o.precision());
        QSeries { coeffs: (0..=p).map(|n| self.coeffs[n] - o.coeffs[n]).collect() }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let p = self.precision().min(o.precision());
        let mut coeffs = vec![Rational64::zero(); p + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(p + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(p + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

/// `q^alpha prod eta(m tau)^e` with `eta(tau) = q^(1/24) prod (1 - q^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub prefactor: Rational64,
    pub factors: Vec<(u32, i32)>,
}

impl EtaQuotient {
    pub fn new(prefactor: Rational64, factors: Vec<(u32, i32)>) -> Self {
        EtaQuotient { prefactor, factors }
    }

    /// Total leading q-power `alpha + sum m e / 24`.
    pub fn offset(&self) -> Rational64 {
        self.factors
            .iter()
            .fold(self.prefactor, |acc, &(m, e)| acc + Rational64::new(m as i64 * e as i64, 24))
    }

    /// Generating function of 2-cores, `q^(-1/8) eta(2 tau)^2 / eta(tau)`.
    pub fn two_cores() -> Self {
        EtaQuotient::new(Rational64::new(-1, 8), vec![(2, 2), (1, -1)])
    }

    /// Generating function of self-conjugate 3-cores,
    /// `q^(-1/3) eta(2t)^2 eta(3t) eta(12t) / (eta(t) eta(4t) eta(6t))`.
    pub fn sc_three_cores() -> Self {
        EtaQuotient::new(Rational64::new(-1, 3), vec![(2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)])
    }

    /// Generating function of 5-cores, `q^(-1) eta(5 tau)^5 / eta(tau)`.
    pub fn five_cores() -> Self {
        EtaQuotient::new(Rational64::from_integer(-1), vec![(5, 5), (1, -1)])
    }

    pub fn expand(&self, precision: usize) -> Result<QSeries> {
        eta_expand(self, precision)
    }
}

/// Expands an eta quotient whose total q-offset is a non-negative integer.
///
/// Writes `F = prod_j (1 - q^{m_j n})^{e_j}`; then `q F'/F = sum_k c_k q^k`
/// with `c_k = -sum_j e_j m_j sigma(k/m_j)` and `k f_k = sum_{i=1..k} c_i f_{k-i}`.
pub fn eta_expand(eq: &EtaQuotient, precision: usize) -> Result<QSeries> {
    let off = eq.offset();
    if !off.is_integer() {
        return Err(Error::FractionalExponent { num: *off.numer(), den: *off.denom() });
    }
    let off = off.to_integer();
    if off < 0 {
        return Err(Error::Precondition(format!("eta quotient has a pole of order {}", -off)));
    }
    let off = off as usize;
    if off > precision {
        return Ok(QSeries::zero(precision));
    }
    let len = precision - off;
    let mut logder = vec![0i128; len + 1];
    for &(m, e) in &eq.factors {
        let m = m as usize;
        let mut j = m;
        while j <= len {
            logder[j] -= e as i128 * m as i128 * arith::sigma((j / m) as i64) as i128;
            j += m;
        }
    }
    let mut f = vec![0i128; len + 1];
    f[0] = 1;
    for k in 1..=len {
        let mut acc: i128 = 0;
        for i in 1..=k {
            if logder[i] != 0 && f[k - i] != 0 {
                acc = logder[i]
                    .checked_mul(f[k - i])
                    .and_then(|v| acc.checked_add(v))
                    .ok_or(Error::Overflow("eta expansion"))?;
            }
        }
        if acc % k as i128 != 0 {
            return Err(Error::Inconsistent(format!("eta recurrence not integral at q^{k}")));
        }
        f[k] = acc / k as i128;
    }
    let mut coeffs = vec![Rational64::zero(); precision + 1];
    for (k, v) in f.into_iter().enumerate() {
        let v = i64::try_from(v).map_err(|_| Error::Overflow("eta coefficient"))?;
        coeffs[k + off] = Rational64::from_integer(v);
    }
    Ok(QSeries { coeffs })
}

/// `sum_{n in Z} q^{n^2}`.
pub fn theta(precision: usize) -> QSeries {
    let mut s = QSeries::zero(precision);
    let mut n = 0usize;
    while n * n <= precision {
        s.coeffs[n * n] = Rational64::from_integer(if n == 0 { 1 } else { 2 });
        n += 1;
    }
    s
}

pub fn theta_cubed(precision: usize) -> QSeries {
    let t = theta(precision);
    &(&t * &t) * &t
}

/// `sum_{D >= 0} H(D) q^D` with constant term `-1/12`.
pub fn hseries(precision: usize) -> QSeries {
    let table = shared_table(precision as i64);
    let mut s = QSeries::zero(precision);
    s.coeffs[0] = hurwitz_zero().to_rational();
    for d in 1..=precision {
        s.coeffs[d] = table.h(d as i64).to_rational();
    }
    s
}

/// `H | U_2 - 2 H | V_2` from a class number series of precision `>= 2N`.
pub fn h12_from(h: &QSeries, precision: usize) -> QSeries {
    assert!(h.precision() >= 2 * precision);
    let u = h.u_op(2).truncate(precision);
    // V_2 vanishes at odd exponents, so padding an odd precision is exact
    let v = h.truncate(precision / 2).v_op(2).pad(precision);
    &u - &v.scale(Rational64::from_integer(2))
}

impl QSeries {
    // Extends with zero coefficients; only valid when the tail is known to vanish.
    fn pad(&self, precision: usize) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision + 1, Rational64::zero());
        QSeries { coeffs }
    }
}

pub fn h12(precision: usize) -> QSeries {
    h12_from(&hseries(2 * precision), precision)
}

/// `(1/4) H_{1,2} | (U_14 - U_2 | V_7)` to precision `N`, from a class number
/// series of precision at least `28 N`.
pub fn central_rhs_from(h: &QSeries, precision: usize) -> QSeries {
    let h12 = h12_from(h, 14 * precision);
    let a = h12.u_op(14);
    let b = h12.u_op(2).truncate(precision / 7).v_op(7);
    let b = b.pad(precision);
    (&a.truncate(precision) - &b).scale(Rational64::new(1, 4))
}

pub fn central_rhs(precision: usize) -> QSeries {
    central_rhs_from(&hseries(28 * precision), precision)
}

/// `sum_n sc_7(n) q^{n+2}` from the lattice count.
pub fn sc7_series(precision: usize) -> QSeries {
    let mut s = QSeries::zero(precision);
    if precision >= 2 {
        let counts = sc_t_core_counts(7, precision - 2);
        for (n, c) in counts.into_iter().enumerate() {
            s.coeffs[n + 2] = Rational64::from_integer(c as i64);
        }
    }
    s
}

/// Outcome of comparing the lattice series with the class number expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub precision: usize,
    pub mismatch: Option<(usize, Rational64, Rational64)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn compare(lhs: &QSeries, rhs: &QSeries, precision: usize) -> IdentityReport {
    let mismatch = lhs
        .truncate(precision)
        .first_difference(&rhs.truncate(precision))
        .map(|n| (n, lhs.coeff(n), rhs.coeff(n)));
    IdentityReport { precision, mismatch }
}

/// Compares against a caller-supplied class number series (used to check the
/// harness itself with a perturbed series).
pub fn verify_central_identity_with(h: &QSeries, precision: usize) -> IdentityReport {
    compare(&sc7_series(precision), &central_rhs_from(h, precision), precision)
}

pub fn verify_central_identity(precision: usize) -> Result<IdentityReport> {
    if precision < 12 {
        return Err(Error::Precondition("precision must be at least 12".into()));
    }
    Ok(verify_central_identity_with(&hseries(28 * precision), precision))
}

/// `Theta^3 | T_{p^2}` against `(p + 1) Theta^3`, precision `N`.
pub fn verify_theta_hecke(p: i64, precision: usize) -> IdentityReport {
    let t3 = theta_cubed(precision * (p * p) as usize);
    let lhs = t3.hecke_t_p2(p, 1);
    let rhs = t3.truncate(precision).scale(Rational64::from_integer(p + 1));
    compare(&lhs, &rhs, precision)
}

/// `Theta^3` against `12 H_{1,2} | U_2`, precision `N`.
pub fn verify_theta_class_numbers(precision: usize) -> IdentityReport {
    let lhs = theta_cubed(precision);
    let rhs = h12(2 * precision).u_op(2).scale(Rational64::from_integer(12));
    compare(&lhs, &rhs, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count_sc_t_cores_brute, count_t_cores_brute};
    use crate::three_squares::{r3_frac, r3_int};

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn theta_examples() {
        let t = theta(10);
        assert_eq!(&t.coeffs()[..5], &[q(1, 1), q(2, 1), q(0, 1), q(0, 1), q(2, 1)]);
        let t3 = theta_cubed(300);
        assert_eq!(t3.coeff(21), q(48, 1));
        for n in 0..=300 {
            assert_eq!(t3.coeff(n), q(r3_int(n as i64), 1));
        }
    }

    #[test]
    fn hseries_examples() {
        let h = hseries(20);
        assert_eq!(h.coeff(3), q(1, 3));
        assert_eq!(h.coeff(1), q(0, 1));
        assert_eq!(h.coeff(4), q(1, 2));
        assert_eq!(h.coeff(0), q(-1, 12));
    }

    #[test]
    fn eta_quotients() {
        let c2 = EtaQuotient::two_cores().expand(200).unwrap();
        for n in 0..=200usize {
            let tri = (0..30).any(|j| j * (j + 1) / 2 == n);
            assert_eq!(c2.coeff(n), q(tri as i64, 1), "n={n}");
        }
        let sc3 = EtaQuotient::sc_three_cores().expand(30).unwrap();
        let c5 = EtaQuotient::five_cores().expand(25).unwrap();
        for n in 0..=25u64 {
            assert_eq!(c2.coeff(n as usize), q(count_t_cores_brute(n, 2).unwrap() as i64, 1));
            assert_eq!(sc3.coeff(n as usize), q(count_sc_t_cores_brute(n, 3).unwrap() as i64, 1));
            assert_eq!(c5.coeff(n as usize), q(count_t_cores_brute(n, 5).unwrap() as i64, 1));
        }
        let bad = EtaQuotient::new(q(0, 1), vec![(1, 1)]);
        assert!(matches!(eta_expand(&bad, 5), Err(Error::FractionalExponent { num: 1, den: 24 })));
        let smoke = EtaQuotient::new(q(-1, 1), vec![(1, 24)]).expand(5).unwrap();
        assert_eq!(smoke.coeff(0), q(1, 1));
        assert_eq!(smoke.coeff(1), q(-24, 1));
    }

    #[test]
    fn operators() {
        let f = QSeries::from_integers(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(f.v_op(3).u_op(3), f);
        assert_eq!(f.u_op(2), QSeries::from_integers(&[1, 3, 5, 7]));
        let z = QSeries::zero(100).hecke_t_p2(7, 1);
        assert_eq!(z, QSeries::zero(2));
    }

    #[test]
    fn theta_identities() {
        assert!(verify_theta_class_numbers(400).passed());
        for p in [3, 5, 7] {
            assert!(verify_theta_hecke(p, 100).passed(), "p={p}");
        }
    }

    #[test]
    fn central_identity_small() {
        let r = verify_central_identity(12).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_central_identity(120).unwrap();
        assert!(r.passed(), "{r:?}");
        let mut h = hseries(28 * 40);
        h.set(28 * 10, h.coeff(28 * 10) + q(1, 1));
        let r = verify_central_identity_with(&h, 40);
        assert_eq!(r.mismatch.map(|m| m.0), Some(10));
    }

    #[test]
    fn coefficients_match_r3_expression() {
        let rhs = central_rhs(150);
        for m in 2..=150i64 {
            let want = q(r3_int(7 * m) - r3_frac(m, 7), 48);
            assert_eq!(rhs.coeff(m as usize), want, "m={m}");
        }
    }
}
