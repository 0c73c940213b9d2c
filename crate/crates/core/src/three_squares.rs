//! Sums of three squares: the representation count `r3`, Gauss's class
//! number formula for it, and the classes of triples that index
//! self-conjugate 7-cores.

use std::fmt;

use num_rational::Rational64;

use crate::arith::{isqrt, is_square, kronecker};
use crate::class_numbers::{hurwitz_int, HurwitzTable};
use crate::error::{Error, Result};

/// An integer point with its norm `x^2 + y^2 + z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Triple {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Triple { x, y, z }
    }

    pub fn norm(&self) -> i64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Sorted absolute values, the key of the signed-permutation class.
    pub fn class_key(&self) -> KClass {
        let mut v = [self.x.abs(), self.y.abs(), self.z.abs()];
        v.sort_unstable();
        KClass { rep: Triple::new(v[0], v[1], v[2]) }
    }
}

impl From<(i64, i64, i64)> for Triple {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        Triple { x, y, z }
    }
}

/// A class of triples under permutations and sign changes, stored as
/// `0 <= x <= y <= z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass {
    rep: Triple,
}

impl KClass {
    pub fn representative(&self) -> Triple {
        self.rep
    }

    pub fn norm(&self) -> i64 {
        self.rep.norm()
    }

    /// Number of signed permutations of the representative.
    pub fn orbit_size(&self) -> i64 {
        let v = [self.rep.x, self.rep.y, self.rep.z];
        let nonzero = v.iter().filter(|&&c| c != 0).count() as u32;
        let perms = if v[0] == v[1] && v[1] == v[2] {
            1
        } else if v[0] == v[1] || v[1] == v[2] {
            3
        } else {
            6
        };
        perms * 2i64.pow(nonzero)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.rep.x, self.rep.y, self.rep.z)
    }
}

/// `r3(m)` by enumerating `x, y >= 0` and testing the remainder.
pub fn r3_int(m: i64) -> i64 {
    if m < 0 {
        return 0;
    }
    if m == 0 {
        return 1;
    }
    let mult = |c: i64| if c == 0 { 1 } else { 2 };
    let mut total = 0;
    for x in 0..=isqrt(m) {
        let rest = m - x * x;
        for y in 0..=isqrt(rest) {
            let zz = rest - y * y;
            if is_square(zz) {
                total += mult(x) * mult(y) * mult(isqrt(zz));
            }
        }
    }
    total
}

/// `r3(m)`, zero for non-integral or negative `m`.
pub fn r3(m: Rational64) -> i64 {
    if !m.is_integer() {
        return 0;
    }
    r3_int(m.to_integer())
}

/// `r3(num / den)`.
pub fn r3_frac(num: i64, den: i64) -> i64 {
    if den == 0 || num % den != 0 {
        0
    } else {
        r3_int(num / den)
    }
}

/// `r3(0..=max)` tabulated in one sweep over the ball.
#[derive(Clone, Debug)]
pub struct R3Table {
    counts: Vec<i64>,
}

impl R3Table {
    pub fn build(max: i64) -> Self {
        let max = max.max(0);
        let mut counts = vec![0i64; max as usize + 1];
        let mult = |c: i64| if c == 0 { 1 } else { 2 };
        let r = isqrt(max);
        for x in 0..=r {
            for y in 0..=r {
                let xy = x * x + y * y;
                if xy > max {
                    break;
                }
                for z in 0..=r {
                    let m = xy + z * z;
                    if m > max {
                        break;
                    }
                    counts[m as usize] += mult(x) * mult(y) * mult(z);
                }
            }
        }
        R3Table { counts }
    }

    pub fn max(&self) -> i64 {
        self.counts.len() as i64 - 1
    }

    pub fn get(&self, m: i64) -> i64 {
        if m < 0 {
            0
        } else if m <= self.max() {
            self.counts[m as usize]
        } else {
            r3_int(m)
        }
    }

    pub fn get_frac(&self, num: i64, den: i64) -> i64 {
        if den == 0 || num % den != 0 {
            0
        } else {
            self.get(num / den)
        }
    }
}

/// Gauss's formula for `r3(m)` in terms of class numbers.
pub fn gauss_r3_with(m: i64, h: &dyn Fn(i64) -> i64) -> i64 {
    // h returns 12 H(d)
    if m < 0 {
        return 0;
    }
    if m == 0 {
        return 1;
    }
    let mut m = m;
    while m % 4 == 0 {
        m /= 4;
    }
    match m % 8 {
        1 | 2 | 5 | 6 => h(4 * m),
        3 => 2 * h(m),
        _ => 0,
    }
}

pub fn gauss_r3(m: i64) -> i64 {
    gauss_r3_with(m, &|d| hurwitz_int(d).twelfths())
}

pub fn gauss_r3_table(m: i64, table: &HurwitzTable) -> i64 {
    gauss_r3_with(m, &|d| table.h(d).twelfths())
}

fn r3_difference_to_count(num: i64) -> Result<i64> {
    if num % 48 != 0 || num < 0 {
        return Err(Error::Inconsistent(format!(
            "r3 combination {num} is not a non-negative multiple of 48"
        )));
    }
    Ok(num / 48)
}

/// `(r3(7n + 14) - r3((n + 2)/7)) / 48`.
pub fn sc7_via_r3(n: i64) -> Result<i64> {
    r3_difference_to_count(r3_int(7 * n + 14) - r3_frac(n + 2, 7))
}

pub fn sc7_via_r3_table(n: i64, table: &R3Table) -> Result<i64> {
    r3_difference_to_count(table.get(7 * n + 14) - table.get_frac(n + 2, 7))
}

/// The same count with the symbol supplied by the caller:
/// `((7 + symbol) r3((n+2)/7) - 7 r3((n+2)/343)) / 48` for `n = -2 (mod 7)`.
pub fn sc7_via_r3_seven(n: i64, symbol: i64) -> Result<i64> {
    if (n + 2) % 7 != 0 {
        return Err(Error::Precondition(format!("{n} is not -2 mod 7")));
    }
    r3_difference_to_count((7 + symbol) * r3_frac(n + 2, 7) - 7 * r3_frac(n + 2, 343))
}

/// Triples of norm `7n + 14` with no coordinate divisible by 7, grouped
/// into signed-permutation classes (sorted by representative).
pub fn k_classes(n: i64) -> Vec<KClass> {
    let norm = 7 * n + 14;
    let mut out = Vec::new();
    if norm <= 0 {
        return out;
    }
    for x in 1..=isqrt(norm / 3) {
        if x % 7 == 0 {
            continue;
        }
        let rest = norm - x * x;
        for y in x..=isqrt(rest / 2) {
            if y % 7 == 0 {
                continue;
            }
            let zz = rest - y * y;
            if is_square(zz) {
                let z = isqrt(zz);
                if z >= y && z % 7 != 0 {
                    out.push(KClass { rep: Triple::new(x, y, z) });
                }
            }
        }
    }
    out
}

/// All integer triples of norm `m` with `7 ∤ xyz`, counted directly.
pub fn restricted_r3(m: i64) -> i64 {
    if m <= 0 {
        return 0;
    }
    let r = isqrt(m);
    let mut total = 0;
    for x in -r..=r {
        if x % 7 == 0 {
            continue;
        }
        let rest = m - x * x;
        let ry = isqrt(rest);
        for y in -ry..=ry {
            if y % 7 == 0 {
                continue;
            }
            let zz = rest - y * y;
            if is_square(zz) {
                let z = isqrt(zz);
                if z % 7 != 0 {
                    total += if z == 0 { 1 } else { 2 };
                }
            }
        }
    }
    total
}

/// Orbit sizes of the classes summed, next to the direct count.
pub fn orbit_check(n: i64) -> (i64, i64) {
    let from_classes = k_classes(n).iter().map(KClass::orbit_size).sum();
    (from_classes, restricted_r3(7 * n + 14))
}

/// Both sides of `r3(7m) = 8 r3(m/7) - ((-m/7)/7) r3(m/7) - 7 r3(m/343)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeRecursionCheck {
    pub m: i64,
    pub lhs: i64,
    pub rhs: i64,
}

impl HeckeRecursionCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn hecke_r3_recursion_check(m: i64) -> Result<HeckeRecursionCheck> {
    if m % 7 != 0 || m <= 0 {
        return Err(Error::Precondition(format!("{m} is not a positive multiple of 7")));
    }
    let k = m / 7;
    let lhs = r3_int(7 * m);
    let rhs = 8 * r3_int(k) - kronecker(-k, 7) * r3_int(k) - 7 * r3_frac(m, 343);
    Ok(HeckeRecursionCheck { m, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r3_examples() {
        assert_eq!(r3_int(0), 1);
        assert_eq!(r3_int(1), 6);
        assert_eq!(r3_int(21), 48);
        assert_eq!(r3_int(14), 48);
        assert_eq!(r3_int(7), 0);
        assert_eq!(r3(Rational64::new(1, 2)), 0);
        assert_eq!(r3_int(-3), 0);
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_r3(1), 6);
        assert_eq!(gauss_r3(7), 0);
        assert_eq!(gauss_r3(3), 8);
        for m in 1..3000 {
            assert_eq!(gauss_r3(m), r3_int(m), "m={m}");
        }
    }

    #[test]
    fn table_matches_direct() {
        let t = R3Table::build(3000);
        for m in 0..=3100 {
            assert_eq!(t.get(m), r3_int(m));
        }
    }

    #[test]
    fn sc7_small() {
        assert_eq!(sc7_via_r3(1).unwrap(), 1);
        assert_eq!(sc7_via_r3(0).unwrap(), 1);
        assert_eq!(sc7_via_r3(2).unwrap(), 0);
    }

    #[test]
    fn classes() {
        let k = k_classes(1);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].representative(), Triple::new(1, 2, 4));
        assert_eq!(k[0].orbit_size(), 48);
        for n in 0..200 {
            let (a, b) = orbit_check(n);
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn hecke_recursion_instances() {
        for m in [7, 21, 343, 7 * 5, 7 * 49, 7 * 11 * 7] {
            assert!(hecke_r3_recursion_check(m).unwrap().holds(), "m={m}");
        }
        assert!(hecke_r3_recursion_check(5).is_err());
    }
}
