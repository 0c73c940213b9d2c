//! Hurwitz class numbers by enumerating reduced forms, together with the
//! classical formulas they are checked against (Dirichlet's sum for
//! fundamental discriminants and Cohen's conductor lift).

use std::fmt;
use std::io::{Read, Write};
use std::ops::{Add, Mul, Neg, Sub};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Rational64;

use crate::arith::{self, isqrt};
use crate::error::{Error, Result};

pub use crate::arith::{kronecker, mobius, sigma, sigma5};

/// A class number stored as `12 H`, which is always an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HurwitzValue {
    twelve_h: i64,
}

impl HurwitzValue {
    pub const ZERO: HurwitzValue = HurwitzValue { twelve_h: 0 };

    pub fn from_twelfths(twelve_h: i64) -> Self {
        HurwitzValue { twelve_h }
    }

    /// Exact conversion; fails unless `12 q` is an integer.
    pub fn from_rational(q: Rational64) -> Result<Self> {
        let t = q * Rational64::from_integer(12);
        if !t.is_integer() {
            return Err(Error::Inconsistent(format!("{q} is not a multiple of 1/12")));
        }
        Ok(HurwitzValue { twelve_h: t.to_integer() })
    }

    pub fn twelfths(self) -> i64 {
        self.twelve_h
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.twelve_h, 12)
    }

    pub fn numerator(self) -> i64 {
        *self.to_rational().numer()
    }

    pub fn denominator(self) -> i64 {
        *self.to_rational().denom()
    }

    pub fn is_integer(self) -> bool {
        self.twelve_h % 12 == 0
    }
}

impl fmt::Display for HurwitzValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl Add for HurwitzValue {
    type Output = HurwitzValue;
    fn add(self, o: HurwitzValue) -> HurwitzValue {
        HurwitzValue { twelve_h: self.twelve_h + o.twelve_h }
    }
}

impl Sub for HurwitzValue {
    type Output = HurwitzValue;
    fn sub(self, o: HurwitzValue) -> HurwitzValue {
        HurwitzValue { twelve_h: self.twelve_h - o.twelve_h }
    }
}

impl Neg for HurwitzValue {
    type Output = HurwitzValue;
    fn neg(self) -> HurwitzValue {
        HurwitzValue { twelve_h: -self.twelve_h }
    }
}

impl Mul<i64> for HurwitzValue {
    type Output = HurwitzValue;
    fn mul(self, k: i64) -> HurwitzValue {
        HurwitzValue { twelve_h: self.twelve_h * k }
    }
}

/// True when `-d` is a negative discriminant (`d > 0`, `d = 0, 3 mod 4`).
pub fn is_discriminant(d: i64) -> bool {
    d > 0 && (d % 4 == 0 || d % 4 == 3)
}

// Weight of a reduced form in twelfths.
fn form_weight(a: i64, b: i64, c: i64) -> i64 {
    if b == 0 && a == c {
        6
    } else if b == a && a == c {
        4
    } else {
        12
    }
}

// Visits every reduced form [a, b, c] of discriminant -d.
fn for_each_reduced(d: i64, mut visit: impl FnMut(i64, i64, i64)) {
    if !is_discriminant(d) {
        return;
    }
    let amax = isqrt(d / 3);
    for a in 1..=amax {
        // b^2 = -d (mod 4) forces b = d (mod 2)
        let mut b = if (a + d) % 2 == 0 { -a } else { -a + 1 };
        while b <= a {
            let num = b * b + d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let boundary = b.abs() == a || a == c;
                if c >= a && (!boundary || b >= 0) {
                    visit(a, b, c);
                }
            }
            b += 2;
        }
    }
}

/// The reduced forms of discriminant `-d`.
pub fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for_each_reduced(d, |a, b, c| out.push((a, b, c)));
    out
}

/// `H(d)` for integral `d > 0` by direct enumeration; 0 off the discriminants.
pub fn hurwitz_int(d: i64) -> HurwitzValue {
    let mut acc = 0;
    for_each_reduced(d, |a, b, c| acc += form_weight(a, b, c));
    HurwitzValue { twelve_h: acc }
}

/// `H(d)` with the convention `H(x) = 0` for non-integral or non-positive `x`.
pub fn hurwitz(d: Rational64) -> HurwitzValue {
    if !d.is_integer() {
        return HurwitzValue::ZERO;
    }
    hurwitz_int(d.to_integer())
}

/// `H(num / den)`.
pub fn hurwitz_frac(num: i64, den: i64) -> HurwitzValue {
    if den == 0 || num % den != 0 {
        return HurwitzValue::ZERO;
    }
    hurwitz_int(num / den)
}

/// The constant-term value `-1/12` used in the class number generating
/// function; it is not a count.
pub fn hurwitz_zero() -> HurwitzValue {
    HurwitzValue { twelve_h: -1 }
}

/// Weighted count of reduced forms with `p` not dividing `gcd(a, b, c)`.
pub fn hurwitz_p_primitive(p: i64, d: i64) -> HurwitzValue {
    assert!(arith::is_prime(p), "{p} is not prime");
    let mut acc = 0;
    for_each_reduced(d, |a, b, c| {
        if arith::gcd3(a, b, c) % p != 0 {
            acc += form_weight(a, b, c);
        }
    });
    HurwitzValue { twelve_h: acc }
}

/// `-(1/|D|) sum_{m < |D|} (D/m) m` for a fundamental discriminant `D = -d`.
pub fn dirichlet_class_number(d: i64) -> Result<HurwitzValue> {
    if !arith::is_fundamental_discriminant(-d) {
        return Err(Error::NotFundamental(-d));
    }
    let s: i64 = (1..d).map(|m| kronecker(-d, m) * m).sum();
    HurwitzValue::from_rational(Rational64::new(-s, d))
}

/// `sum_{e | f} mu(e) (-d/e) sigma(f/e)`, the multiplier taking `H(d)` to `H(d f^2)`.
pub fn conductor_factor(d: i64, f: i64) -> i64 {
    arith::divisors(f).into_iter().map(|e| mobius(e) * kronecker(-d, e) * sigma(f / e)).sum()
}

/// `H(d f^2)` from `H(d)` for `-d` fundamental.
pub fn cohen_lift(d: i64, f: i64) -> Result<HurwitzValue> {
    if !arith::is_fundamental_discriminant(-d) {
        return Err(Error::NotFundamental(-d));
    }
    if f < 1 {
        return Err(Error::Precondition(format!("conductor must be positive, got {f}")));
    }
    Ok(hurwitz_int(d) * conductor_factor(d, f))
}

/// The difference of conductor factors at `7^r` and `7^(r-1)`, together with
/// the closed form `7^(r-1) (7 + (delta/7))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SevenPowerDifference {
    pub r: u32,
    pub delta: i64,
    pub by_sum: i64,
    pub closed_form: i64,
}

impl SevenPowerDifference {
    pub fn agrees(&self) -> bool {
        self.by_sum == self.closed_form
    }
}

pub fn c_r_delta(r: u32, delta: i64) -> Result<SevenPowerDifference> {
    if r < 1 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let part = |e: u32| -> i64 {
        let m = 7i64.pow(e);
        arith::divisors(m).into_iter().map(|d| mobius(d) * kronecker(-delta, d) * sigma(m / d)).sum()
    };
    let by_sum = part(r) - part(r - 1);
    let closed_form = 7i64.pow(r - 1) * (7 + kronecker(delta, 7));
    Ok(SevenPowerDifference { r, delta, by_sum, closed_form })
}

/// `12 H(d)` and `12 H_7(d)` for every `d <= max_d`, built in one pass over
/// reduced forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTable {
    max_d: i64,
    twelve_h: Vec<i64>,
    twelve_h7: Vec<i64>,
}

const CACHE_MAGIC: &[u8; 8] = b"HURW12H1";

impl HurwitzTable {
    pub fn build(max_d: i64) -> Self {
        let max_d = max_d.max(0);
        let len = max_d as usize + 1;
        let mut h = vec![0i64; len];
        let mut h7 = vec![0i64; len];
        // 4ac - b^2 <= max_d with |b| <= a <= c forces 3a^2 <= max_d.
        let amax = isqrt(max_d / 3);
        for a in 1..=amax {
            for b in -a..=a {
                let mut c = a;
                loop {
                    let d = 4 * a * c - b * b;
                    if d > max_d {
                        break;
                    }
                    let boundary = b.abs() == a || a == c;
                    if !boundary || b >= 0 {
                        let w = form_weight(a, b, c);
                        h[d as usize] += w;
                        if arith::gcd3(a, b, c) % 7 != 0 {
                            h7[d as usize] += w;
                        }
                    }
                    c += 1;
                }
            }
        }
        HurwitzTable { max_d, twelve_h: h, twelve_h7: h7 }
    }

    pub fn max_d(&self) -> i64 {
        self.max_d
    }

    /// `H(d)`, falling back to direct enumeration beyond the table.
    pub fn h(&self, d: i64) -> HurwitzValue {
        if d <= 0 {
            HurwitzValue::ZERO
        } else if d <= self.max_d {
            HurwitzValue { twelve_h: self.twelve_h[d as usize] }
        } else {
            hurwitz_int(d)
        }
    }

    /// `H(num/den)`, zero when the argument is not an integer.
    pub fn h_frac(&self, num: i64, den: i64) -> HurwitzValue {
        if den == 0 || num % den != 0 {
            HurwitzValue::ZERO
        } else {
            self.h(num / den)
        }
    }

    pub fn h7(&self, d: i64) -> HurwitzValue {
        if d <= 0 {
            HurwitzValue::ZERO
        } else if d <= self.max_d {
            HurwitzValue { twelve_h: self.twelve_h7[d as usize] }
        } else {
            hurwitz_p_primitive(7, d)
        }
    }

    /// Writes the `12 H` column: 8 magic bytes, `max_d` as u64 LE, then
    /// `max_d + 1` values as i64 LE.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + 8 * self.twelve_h.len());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&(self.max_d as u64).to_le_bytes());
        for v in &self.twelve_h {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    /// Reads a cache written by [`write_cache`](Self::write_cache). The
    /// 7-primitive column is rebuilt from the stored values through
    /// `H_7(d) = H(d) - H(d/49)`.
    pub fn read_cache(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        if bytes.len() < 16 || &bytes[..8] != CACHE_MAGIC {
            return Err(Error::Io(format!("{}: not a class number cache", path.display())));
        }
        let max_d = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as i64;
        let len = max_d as usize + 1;
        if bytes.len() != 16 + 8 * len {
            return Err(Error::Io(format!("{}: truncated cache", path.display())));
        }
        let twelve_h: Vec<i64> = bytes[16..]
            .chunks_exact(8)
            .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let twelve_h7 = (0..len)
            .map(|d| if d % 49 == 0 { twelve_h[d] - twelve_h[d / 49] } else { twelve_h[d] })
            .collect();
        Ok(HurwitzTable { max_d, twelve_h, twelve_h7 })
    }
}

static SHARED: OnceLock<RwLock<Arc<HurwitzTable>>> = OnceLock::new();

/// A process-wide table covering at least `max_d`; grown (rebuilt) on demand
/// and otherwise shared read-only.
pub fn shared_table(max_d: i64) -> Arc<HurwitzTable> {
    let lock = SHARED.get_or_init(|| RwLock::new(Arc::new(HurwitzTable::build(1 << 12))));
    {
        let cur = lock.read().unwrap();
        if cur.max_d >= max_d {
            return Arc::clone(&cur);
        }
    }
    let mut w = lock.write().unwrap();
    if w.max_d < max_d {
        let target = max_d.max(2 * w.max_d);
        *w = Arc::new(HurwitzTable::build(target));
    }
    Arc::clone(&w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(num: i64, den: i64) -> Rational64 {
        Rational64::new(num, den)
    }

    #[test]
    fn small_values() {
        assert_eq!(hurwitz_int(3).to_rational(), h(1, 3));
        assert_eq!(hurwitz_int(4).to_rational(), h(1, 2));
        assert_eq!(hurwitz(h(5, 7)), HurwitzValue::ZERO);
        assert_eq!(hurwitz_int(7).to_rational(), h(1, 1));
        assert_eq!(hurwitz_int(84).to_rational(), h(4, 1));
        assert_eq!(hurwitz_int(20).to_rational(), h(2, 1));
        // [1,0,3] and [2,2,2]
        assert_eq!(hurwitz_int(12).to_rational(), h(4, 3));
        assert_eq!(hurwitz_int(1), HurwitzValue::ZERO);
        assert_eq!(hurwitz_int(0), HurwitzValue::ZERO);
        assert_eq!(hurwitz_zero().to_rational(), h(-1, 12));
        assert_eq!(reduced_forms(12), vec![(1, 0, 3), (2, 2, 2)]);
    }

    #[test]
    fn seven_primitive() {
        assert_eq!(hurwitz_p_primitive(7, 84), hurwitz_int(84));
        assert_eq!(hurwitz_p_primitive(7, 147), hurwitz_int(147) - hurwitz_int(3));
        for d in 1..3000 {
            if is_discriminant(d) {
                assert_eq!(hurwitz_p_primitive(7, d), hurwitz_int(d) - hurwitz_frac(d, 49), "d={d}");
            }
        }
    }

    #[test]
    fn dirichlet_formula() {
        assert_eq!(dirichlet_class_number(4).unwrap().to_rational(), h(1, 2));
        assert_eq!(dirichlet_class_number(3).unwrap().to_rational(), h(1, 3));
        assert_eq!(dirichlet_class_number(7).unwrap().to_rational(), h(1, 1));
        assert!(matches!(dirichlet_class_number(12), Err(Error::NotFundamental(-12))));
    }

    #[test]
    fn cohen_examples() {
        assert_eq!(cohen_lift(3, 1).unwrap(), hurwitz_int(3));
        assert_eq!(cohen_lift(3, 2).unwrap(), hurwitz_int(12));
        assert_eq!(cohen_lift(3, 2).unwrap().to_rational(), h(4, 3));
        assert_eq!(cohen_lift(4, 3).unwrap(), hurwitz_int(36));
    }

    #[test]
    fn seven_power_difference() {
        let c = c_r_delta(1, 4).unwrap();
        assert_eq!(c.by_sum, 8 - kronecker(-4, 7) - 1);
        assert!(c.agrees());
        let c1 = c_r_delta(1, 3).unwrap();
        let c2 = c_r_delta(2, 3).unwrap();
        assert_eq!(c2.by_sum, 7 * c1.by_sum);
        assert_eq!(c_r_delta(1, 7).unwrap().by_sum, 7);
        for delta in [3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 84] {
            for r in 1..6 {
                assert!(c_r_delta(r, delta).unwrap().agrees(), "r={r} delta={delta}");
            }
        }
    }

    #[test]
    fn table_matches_direct() {
        let t = HurwitzTable::build(2000);
        for d in 0..=2100 {
            assert_eq!(t.h(d), hurwitz_int(d), "d={d}");
            assert_eq!(t.h7(d), hurwitz_p_primitive(7, d), "d={d}");
        }
    }

    #[test]
    fn cache_round_trip() {
        let t = HurwitzTable::build(5000);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.bin");
        t.write_cache(&path).unwrap();
        let back = HurwitzTable::read_cache(&path).unwrap();
        assert_eq!(back, t);
    }
}
