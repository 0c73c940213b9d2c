//! Closed forms for 2-, 3- and 5-cores and self-conjugate 9-cores, the
//! elliptic curve coefficients the 9-core formula needs, and small searches
//! around progressions.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::abacus::{sc_t_core_counts, t_core_counts};
use crate::arith::{factorize, is_prime, is_square, isqrt, kronecker, sigma, sigma5, valuation};
use crate::error::{Error, Result};
use crate::qseries::EtaQuotient;

/// `1` when `n = j(j+1)/2`.
pub fn c2_closed(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    is_square(8 * n + 1) as i64
}

/// `1` when `n = j(3j + 2)` or `n = j(3j - 2)` with `j >= 0`.
///
/// Both shapes give `3n + 1` a perfect square, and every square
/// `3n + 1 = s^2` with `3 ∤ s` arises from one of them.
pub fn sc3_closed(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    let m = 3 * n + 1;
    (is_square(m) && isqrt(m) % 3 != 0) as i64
}

fn eta_coefficients(eq: &EtaQuotient, max_n: usize) -> Result<Vec<i64>> {
    let s = eq.expand(max_n)?;
    s.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Inconsistent("fractional eta coefficient".into()))
            }
        })
        .collect()
}

/// Agreement of the indicators with brute lattice counts and with the eta
/// quotient expansions.
#[derive(Clone, Debug, Serialize)]
pub struct SmallCoreReport {
    pub max_n: usize,
    pub c2_mismatch: Option<usize>,
    pub sc3_mismatch: Option<usize>,
}

impl SmallCoreReport {
    pub fn passed(&self) -> bool {
        self.c2_mismatch.is_none() && self.sc3_mismatch.is_none()
    }
}

pub fn compare_small_cores(max_n: usize) -> Result<SmallCoreReport> {
    let eta2 = eta_coefficients(&EtaQuotient::two_cores(), max_n)?;
    let eta3 = eta_coefficients(&EtaQuotient::sc_three_cores(), max_n)?;
    let lat2 = t_core_counts(2, max_n);
    let lat3 = sc_t_core_counts(3, max_n);
    let c2_mismatch = (0..=max_n).find(|&n| {
        let v = c2_closed(n as i64);
        eta2[n] != v || lat2[n] as i64 != v
    });
    let sc3_mismatch = (0..=max_n).find(|&n| {
        let v = sc3_closed(n as i64);
        eta3[n] != v || lat3[n] as i64 != v
    });
    Ok(SmallCoreReport { max_n, c2_mismatch, sc3_mismatch })
}

/// The vanishing progressions `sc3(4n+3) = c2(3n+2) = 0` and the sizes that
/// are simultaneously triangular and of the form `j(3j ± 2)`.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub max_n: i64,
    pub sc3_nonzero_at: Vec<i64>,
    pub c2_nonzero_at: Vec<i64>,
    pub common_sizes: Vec<i64>,
    pub common_size_failures: Vec<i64>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.sc3_nonzero_at.is_empty() && self.c2_nonzero_at.is_empty() && self.common_size_failures.is_empty()
    }
}

/// Counts come from the lattice walk, not from the indicators.
pub fn c2_sc3_vanishing_progressions(max_n: i64) -> VanishingReport {
    let top = (4 * max_n + 3).max(3 * max_n + 2) as usize;
    let c2 = t_core_counts(2, top);
    let sc3 = sc_t_core_counts(3, top);
    let sc3_nonzero_at = (0..=max_n).filter(|&n| sc3[(4 * n + 3) as usize] != 0).collect();
    let c2_nonzero_at = (0..=max_n).filter(|&n| c2[(3 * n + 2) as usize] != 0).collect();
    let common_sizes: Vec<i64> = (0..=max_n).filter(|&n| c2_closed(n) == 1 && sc3_closed(n) == 1).collect();
    let common_size_failures = common_sizes
        .iter()
        .copied()
        .filter(|&n| c2[n as usize] != 1 || sc3[n as usize] != 1)
        .collect();
    VanishingReport { max_n, sc3_nonzero_at, c2_nonzero_at, common_sizes, common_size_failures }
}

/// `c5(n) = sigma5(n + 1)`.
pub fn c5_closed(n: i64) -> i64 {
    sigma5(n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveLabel {
    E36a,
    E54a,
    E108a,
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveLabel::E36a => "36a",
            CurveLabel::E54a => "54a",
            CurveLabel::E108a => "108a",
        })
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticCurveModel {
    pub label: CurveLabel,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

/// Reduction of the model at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reduction {
    Good,
    Split,
    NonSplit,
    Additive,
}

impl EllipticCurveModel {
    pub fn new(label: CurveLabel) -> Self {
        let [a1, a2, a3, a4, a6] = match label {
            CurveLabel::E36a => [0, 0, 0, 0, 1],
            CurveLabel::E54a => [1, -1, 0, 12, 8],
            CurveLabel::E108a => [0, 0, 0, 0, 4],
        };
        EllipticCurveModel { label, a1, a2, a3, a4, a6 }
    }

    pub fn all() -> [EllipticCurveModel; 3] {
        [CurveLabel::E36a, CurveLabel::E54a, CurveLabel::E108a].map(EllipticCurveModel::new)
    }

    pub fn bad_primes(&self) -> [i64; 2] {
        [2, 3]
    }

    pub fn discriminant(&self) -> i64 {
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    fn equation(&self, x: i64, y: i64, p: i64) -> i64 {
        let lhs = y * y + self.a1 * x * y + self.a3 * y;
        let rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6;
        (lhs - rhs).rem_euclid(p)
    }

    /// Affine solutions over `F_p`, singular point included.
    pub fn affine_points(&self, p: i64) -> i64 {
        if p == 2 {
            let mut count = 0;
            for x in 0..2 {
                for y in 0..2 {
                    if self.equation(x, y, 2) == 0 {
                        count += 1;
                    }
                }
            }
            return count;
        }
        // y^2 + b y - c = 0 has 1 + ((b^2 + 4c)/p) roots
        let mut count = 0;
        for x in 0..p {
            let b = (self.a1 * x + self.a3).rem_euclid(p);
            let c = ((x * x % p) * x + self.a2 * (x * x % p) + self.a4 * x + self.a6).rem_euclid(p);
            let disc = (b * b + 4 * c).rem_euclid(p);
            count += 1 + kronecker(disc, p);
        }
        count
    }

    /// Reduction type, reading the tangent cone at the singular point.
    pub fn reduction(&self, p: i64) -> Reduction {
        if self.discriminant() % p != 0 {
            return Reduction::Good;
        }
        let singular = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).find(|&(x, y)| {
            let fx = (self.a1 * y - 3 * x * x - 2 * self.a2 * x - self.a4).rem_euclid(p);
            let fy = (2 * y + self.a1 * x + self.a3).rem_euclid(p);
            self.equation(x, y, p) == 0 && fx == 0 && fy == 0
        });
        let (x0, _) = singular.expect("bad reduction has a singular point");
        // tangent cone v^2 + a1 uv + c u^2
        let a1 = self.a1.rem_euclid(p);
        let c = (-(3 * x0 + self.a2)).rem_euclid(p);
        if p == 2 {
            if a1 == 0 {
                Reduction::Additive
            } else if c == 0 {
                Reduction::Split
            } else {
                Reduction::NonSplit
            }
        } else {
            let disc = (a1 * a1 - 4 * c).rem_euclid(p);
            match kronecker(disc, p) {
                0 => Reduction::Additive,
                1 => Reduction::Split,
                _ => Reduction::NonSplit,
            }
        }
    }
}

/// `a_p`: `p - #affine points` at good primes, and `1, -1, 0` for split,
/// non-split and additive reduction.
pub fn ap(curve: &EllipticCurveModel, p: i64) -> i64 {
    assert!(is_prime(p), "{p} is not prime");
    match curve.reduction(p) {
        Reduction::Good => p - curve.affine_points(p),
        Reduction::Split => 1,
        Reduction::NonSplit => -1,
        Reduction::Additive => 0,
    }
}

/// Prime coefficients tabulated once, extended multiplicatively.
#[derive(Clone, Debug)]
pub struct ApTable {
    pub curve: EllipticCurveModel,
    bound: i64,
    primes: Vec<(i64, i64)>,
}

impl ApTable {
    pub fn build(curve: EllipticCurveModel, bound: i64) -> Self {
        let primes = (2..=bound).filter(|&p| is_prime(p)).map(|p| (p, ap(&curve, p))).collect();
        ApTable { curve, bound, primes }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn ap(&self, p: i64) -> i64 {
        match self.primes.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.primes[i].1,
            Err(_) => ap(&self.curve, p),
        }
    }

    fn prime_power(&self, p: i64, k: u32) -> i64 {
        let a = self.ap(p);
        if self.curve.reduction(p) != Reduction::Good {
            return a.pow(k);
        }
        let (mut prev, mut cur) = (1i64, a);
        for _ in 1..k {
            let next = a * cur - p * prev;
            prev = cur;
            cur = next;
        }
        if k == 0 {
            1
        } else {
            cur
        }
    }

    pub fn an(&self, n: i64) -> i64 {
        assert!(n >= 1);
        factorize(n).into_iter().map(|(p, k)| self.prime_power(p, k)).product()
    }
}

pub fn an(curve: &EllipticCurveModel, n: i64) -> i64 {
    ApTable::build(*curve, 0).an(n)
}

/// Coefficient tables for the three curves.
#[derive(Clone, Debug)]
pub struct Sc9Tables {
    e36: ApTable,
    e54: ApTable,
    e108: ApTable,
}

impl Sc9Tables {
    pub fn build(max_n: i64) -> Self {
        let bound = 3 * max_n.max(0) + 10;
        let [a, b, c] = EllipticCurveModel::all();
        Sc9Tables { e36: ApTable::build(a, bound), e54: ApTable::build(b, bound), e108: ApTable::build(c, bound) }
    }
}

/// Which coefficient multiplies `sigma(k)` in the `n = 2 (mod 4)` branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OddPartWeight {
    /// `3 sigma(k)`, the weight the lattice counts confirm.
    Three,
    /// `sigma(k)` as printed, which gives `27 sc9(2) = -2`.
    Printed,
}

/// `27 sc9(n)` by the three-branch formula.
pub fn sc9_times_27(n: i64, tables: &Sc9Tables) -> i64 {
    sc9_times_27_weighted(n, tables, OddPartWeight::Three)
}

pub fn sc9_times_27_weighted(n: i64, tables: &Sc9Tables, weight: OddPartWeight) -> i64 {
    let m = 3 * n + 10;
    debug_assert!(m % 3 != 0);
    let curves = tables.e36.an(m) - tables.e108.an(m);
    match n.rem_euclid(4) {
        1 | 3 => sigma(m) + curves - tables.e54.an(m),
        0 => sigma(m) + curves - 3 * tables.e54.an(m),
        _ => {
            let odd = m >> valuation(m, 2);
            let w = if weight == OddPartWeight::Three { 3 } else { 1 };
            w * sigma(odd) + curves - 3 * tables.e54.an(m)
        }
    }
}

pub fn sc9_closed_with(n: i64, tables: &Sc9Tables) -> Result<Rational64> {
    if n < 0 {
        return Ok(Rational64::from_integer(0));
    }
    let v = sc9_times_27(n, tables);
    if v % 27 != 0 || v < 0 {
        return Err(Error::Inconsistent(format!("27 sc9({n}) evaluates to {v}")));
    }
    Ok(Rational64::new(v, 27))
}

pub fn sc9_closed(n: i64) -> Result<Rational64> {
    sc9_closed_with(n, &Sc9Tables::build(n))
}

/// One prime `p` in the construction with `3 n(p) + 10 = (3m + 10) p ell`.
#[derive(Clone, Debug, Serialize)]
pub struct RatioWitness {
    pub n: i64,
    pub p: i64,
    pub ratio: Rational64,
    pub predicted: Rational64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EllFamily {
    pub ell: i64,
    /// `sigma(A)/sigma5(A) * (1 + ell)/(ell - 1)` with `A = 3m + 10`.
    pub limit_candidate: Rational64,
    pub witnesses: Vec<RatioWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonConstancyReport {
    pub modulus: i64,
    pub residue: i64,
    pub bound: i64,
    pub families: Vec<EllFamily>,
    pub distinct_candidates: usize,
    pub scaling_holds: bool,
}

impl NonConstancyReport {
    pub fn conclusive(&self) -> bool {
        self.distinct_candidates >= 2
    }

    pub fn passed(&self) -> bool {
        self.conclusive() && self.scaling_holds
    }
}

fn sigma_ratio(m: i64) -> Option<Rational64> {
    let s5 = sigma5(m);
    (s5 != 0).then(|| Rational64::new(sigma(m), s5))
}

/// Searches progressions `n = m (mod M)` for primes `ell` with `(ell/5) = -1`
/// and primes `p = ell^-1 (mod 3M)`, keeping `n(p) <= bound`.
pub fn sigma5_nonconstancy_probe(modulus: i64, residue: i64, bound: i64) -> Result<NonConstancyReport> {
    if modulus < 1 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let residue = residue.rem_euclid(modulus);
    let base = 3 * residue + 10;
    let three_m = 3 * modulus;
    let top = 3 * bound + 10;
    let mut families = Vec::new();
    let mut scaling_holds = true;
    let base_ratio = sigma_ratio(base);
    for ell in (2..=top / base).filter(|&l| is_prime(l)) {
        if kronecker(ell, 5) != -1 || base % ell == 0 || modulus % ell == 0 || three_m % ell == 0 {
            continue;
        }
        let inv = (1..three_m).find(|&x| (x * ell) % three_m == 1).unwrap_or(1 % three_m);
        let Some(base_ratio) = base_ratio else { continue };
        let limit_candidate = base_ratio * Rational64::new(1 + ell, ell - 1);
        let mut witnesses = Vec::new();
        let mut p = if inv < 2 { inv + three_m } else { inv };
        while base * p * ell <= top {
            if p != ell && is_prime(p) && num_integer::gcd(p, 5 * base) == 1 {
                let big = base * p * ell;
                let n = (big - 10) / 3;
                debug_assert_eq!(n.rem_euclid(modulus), residue);
                if let Some(ratio) = sigma_ratio(big) {
                    let predicted = limit_candidate * Rational64::new(p + 1, p + kronecker(p, 5));
                    scaling_holds &= predicted == ratio;
                    witnesses.push(RatioWitness { n, p, ratio, predicted });
                }
            }
            p += three_m;
        }
        if !witnesses.is_empty() {
            families.push(EllFamily { ell, limit_candidate, witnesses });
        }
    }
    let distinct_candidates = families.iter().map(|f| f.limit_candidate).collect::<BTreeSet<_>>().len();
    Ok(NonConstancyReport { modulus, residue, bound, families, distinct_candidates, scaling_holds })
}

/// `(c3(n), sc5(n))` from lattice counts.
pub fn c3_sc5_counts(n: i64) -> (i64, i64) {
    if n < 0 {
        return (0, 0);
    }
    let n = n as usize;
    (t_core_counts(3, n)[n] as i64, sc_t_core_counts(5, n)[n] as i64)
}

/// A progression on which one count is a fixed nonzero integer multiple of
/// the other over the whole sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SurvivingProgression {
    pub modulus: usize,
    pub residue: usize,
    pub relation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsificationReport {
    pub max_modulus: usize,
    pub max_n: usize,
    pub survivors: Vec<SurvivingProgression>,
    pub both_vanish: Vec<(usize, usize)>,
}

impl FalsificationReport {
    pub fn passed(&self) -> bool {
        self.survivors.is_empty()
    }
}

fn integer_multiple(num: &[i64], den: &[i64]) -> Option<i64> {
    let pivot = den.iter().position(|&d| d != 0)?;
    if num[pivot] % den[pivot] != 0 {
        return None;
    }
    let k = num[pivot] / den[pivot];
    (k != 0 && num.iter().zip(den).all(|(&a, &b)| a == k * b)).then_some(k)
}

/// Looks for `c3 = k sc5` or `sc5 = k c3` (`k` a nonzero integer) holding on
/// every `n <= max_n` of some progression with modulus at most `max_modulus`.
pub fn c3_sc5_falsification(max_modulus: usize, max_n: usize) -> FalsificationReport {
    let c3: Vec<i64> = t_core_counts(3, max_n).into_iter().map(|v| v as i64).collect();
    let sc5: Vec<i64> = sc_t_core_counts(5, max_n).into_iter().map(|v| v as i64).collect();
    let mut survivors = Vec::new();
    let mut both_vanish = Vec::new();
    for modulus in 1..=max_modulus {
        for residue in 0..modulus {
            let a: Vec<i64> = (residue..=max_n).step_by(modulus).map(|n| c3[n]).collect();
            let b: Vec<i64> = (residue..=max_n).step_by(modulus).map(|n| sc5[n]).collect();
            if a.iter().all(|&v| v == 0) && b.iter().all(|&v| v == 0) {
                both_vanish.push((modulus, residue));
                continue;
            }
            if let Some(k) = integer_multiple(&a, &b) {
                survivors.push(SurvivingProgression { modulus, residue, relation: format!("c3 = {k} sc5") });
            } else if let Some(k) = integer_multiple(&b, &a) {
                survivors.push(SurvivingProgression { modulus, residue, relation: format!("sc5 = {k} c3") });
            }
        }
    }
    FalsificationReport { max_modulus, max_n, survivors, both_vanish }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count_sc_t_cores_brute, count_t_cores_brute};

    #[test]
    fn indicator_examples() {
        assert_eq!(c2_closed(3), 1);
        assert_eq!(c2_closed(2), 0);
        assert_eq!(sc3_closed(5), 1);
        assert_eq!(sc3_closed(1), 1);
        assert_eq!(sc3_closed(0), 1);
        for n in 0..=30u64 {
            assert_eq!(c2_closed(n as i64) as u64, count_t_cores_brute(n, 2).unwrap(), "n={n}");
            assert_eq!(sc3_closed(n as i64) as u64, count_sc_t_cores_brute(n, 3).unwrap(), "n={n}");
        }
    }

    #[test]
    fn indicators_against_eta() {
        let r = compare_small_cores(600).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn vanishing() {
        let r = c2_sc3_vanishing_progressions(2000);
        assert!(r.passed(), "{r:?}");
        assert!(r.common_sizes.contains(&1));
    }

    #[test]
    fn five_cores() {
        assert_eq!(c5_closed(0), 1);
        assert_eq!(c5_closed(1), 1);
        let lat = t_core_counts(5, 300);
        for n in 0..=300 {
            assert_eq!(c5_closed(n as i64), lat[n] as i64, "n={n}");
        }
    }

    #[test]
    fn curve_coefficients() {
        let [e36, e54, e108] = EllipticCurveModel::all();
        assert_eq!(e36.affine_points(5), 5);
        assert_eq!(ap(&e36, 5), 0);
        assert_eq!(ap(&e36, 7), -4);
        assert_eq!(ap(&e36, 2), 0);
        assert_eq!(ap(&e36, 3), 0);
        assert_eq!(ap(&e108, 2), 0);
        assert_eq!(ap(&e54, 3), 0);
        assert_eq!(e54.reduction(2), Reduction::NonSplit);
        assert_eq!(ap(&e54, 2), -1);
        for c in EllipticCurveModel::all() {
            for p in (5..400).filter(|&p| is_prime(p)) {
                let a = ap(&c, p);
                assert!(a * a <= 4 * p, "{} p={p}", c.label);
            }
            // the point count at bad primes gives the same values
            for p in [2, 3] {
                assert_eq!(ap(&c, p), p - c.affine_points(p), "{} p={p}", c.label);
            }
        }
        let t = ApTable::build(e36, 100);
        assert_eq!(t.an(1), 1);
        assert_eq!(t.an(6), t.an(2) * t.an(3));
        assert_eq!(t.an(35), t.ap(5) * t.ap(7));
        assert_eq!(t.an(49), t.ap(7) * t.ap(7) - 7);
    }

    #[test]
    fn nine_cores() {
        let tables = Sc9Tables::build(250);
        let lat = sc_t_core_counts(9, 250);
        assert_eq!(sc9_times_27_weighted(2, &tables, OddPartWeight::Printed), -2);
        assert_eq!(lat[0], 1);
        assert_eq!(lat[1], 1);
        for n in 0..=250 {
            let v = sc9_closed_with(n as i64, &tables).unwrap();
            assert_eq!(v, Rational64::from_integer(lat[n] as i64), "n={n}");
        }
    }

    #[test]
    fn probe_trivial_progression() {
        let r = sigma5_nonconstancy_probe(1, 0, 10_000).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = sigma5_nonconstancy_probe(4, 1, 10_000).unwrap();
        assert!(r.scaling_holds);
    }

    #[test]
    fn small_counts() {
        assert_eq!(c3_sc5_counts(0), (1, 1));
        assert_eq!(c3_sc5_counts(2).0, 2);
        let r = c3_sc5_falsification(24, 5000);
        assert!(r.passed(), "{:?}", r.survivors);
    }
}
