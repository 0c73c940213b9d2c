//! Closed formulas for the number of self-conjugate 7-cores (and 4-cores)
//! in terms of class numbers, each paired with a check against the lattice
//! count.

use num_rational::Rational64;

use crate::abacus::{count_sc_t_cores_lattice, count_t_cores_lattice};
use crate::arith::{self, kronecker};
use crate::class_numbers::{conductor_factor, shared_table, HurwitzValue};
use crate::error::{Error, Result};
use crate::three_squares;

/// The discriminant `D_n` and weight `nu_n` attached to `n`, with the
/// 2-adic reduction that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DnNu {
    pub n: i64,
    pub d: i64,
    pub nu: Rational64,
    /// Largest `ell` with `4^ell | n + 2`.
    pub ell: u32,
    /// Number of distinct primes dividing `(7n + 14) / 4^ell`.
    pub r_count: u32,
    /// `(n + 2)/4^ell - 2`, the argument the values were read from.
    pub base: i64,
    /// Set when the reduction lands on `-1`, below the range of partition
    /// sizes; the values are then those of the literal case split at `-1`.
    pub domain_gap: bool,
}

fn base_values(m: i64) -> (i64, Rational64) {
    match m.rem_euclid(4) {
        0 | 1 => (28 * m + 56, Rational64::new(1, 4)),
        3 => {
            let nu = if m.rem_euclid(8) == 3 { Rational64::new(1, 2) } else { Rational64::from_integer(0) };
            (7 * m + 14, nu)
        }
        _ => unreachable!("base case is never 2 mod 4"),
    }
}

pub fn dn_nu(n: i64) -> Result<DnNu> {
    if n < 0 {
        return Err(Error::Precondition(format!("n = {n} is negative")));
    }
    let mut ell = 0u32;
    let mut m = n + 2;
    while m % 4 == 0 {
        m /= 4;
        ell += 1;
    }
    // for n = 0, 1, 3 mod 4, n + 2 is not divisible by 4 and ell = 0
    let base = m - 2;
    let (d, nu) = base_values(base);
    let r_count = arith::omega(7 * m);
    Ok(DnNu { n, d, nu, ell, r_count, base, domain_gap: base < 0 })
}

fn hv(v: HurwitzValue) -> Rational64 {
    v.to_rational()
}

/// `(H(28n+56) - H((4n+8)/7) - 2H(7n+14) + 2H((n+2)/7)) / 4`.
pub fn sc7_four_class_numbers(n: i64) -> Rational64 {
    let t = shared_table(28 * n + 56);
    let combo = t.h(28 * n + 56) - t.h_frac(4 * n + 8, 7) - t.h(7 * n + 14) * 2 + t.h_frac(n + 2, 7) * 2;
    hv(combo) / Rational64::from_integer(4)
}

/// `nu_n H_7(D_n)`.
pub fn sc7_single_h7(n: i64) -> Result<Rational64> {
    let dn = dn_nu(n)?;
    let t = shared_table(dn.d);
    Ok(dn.nu * hv(t.h7(dn.d)))
}

/// The three-branch formula for odd `n` with `n != -2 (mod 7)`.
pub fn sc7_odd_formula(n: i64) -> Result<Rational64> {
    if n <= 0 || n % 2 == 0 || (n + 2) % 7 == 0 {
        return Err(Error::Precondition(format!("{n} must be positive, odd and not -2 mod 7")));
    }
    let t = shared_table(28 * n + 56);
    Ok(match n % 8 {
        1 | 5 => hv(t.h(28 * n + 56)) / Rational64::from_integer(4),
        3 => hv(t.h(7 * n + 14)) / Rational64::from_integer(2),
        _ => Rational64::from_integer(0),
    })
}

/// Single class number formula, dispatching on `n mod 4` and the power of
/// 7 dividing `n + 2`; negative arguments count nothing.
pub fn sc7_single_h(n: i64) -> Result<Rational64> {
    if n < 0 {
        return Ok(Rational64::from_integer(0));
    }
    if n % 4 == 2 {
        return sc7_single_h((n + 2) / 4 - 2);
    }
    if (n + 2) % 49 == 0 {
        return Ok(sc7_single_h((n + 2) / 49 - 2)? * Rational64::from_integer(7));
    }
    let dn = dn_nu(n)?;
    let t = shared_table(dn.d);
    if (n + 2) % 7 == 0 {
        let reduced = dn.d / 49;
        let factor = 7 + kronecker(reduced, 7);
        Ok(Rational64::from_integer(factor) * dn.nu * hv(t.h(reduced)))
    } else {
        Ok(dn.nu * hv(t.h(dn.d)))
    }
}

fn dirichlet_sum(d: i64) -> i64 {
    (1..d).map(|m| kronecker(-d, m) * m).sum()
}

/// The Dirichlet-sum expression, valid for `n + 2` squarefree.
pub fn sc7_dirichlet_sum(n: i64) -> Result<Rational64> {
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} is not positive")));
    }
    if !arith::is_squarefree(n + 2) {
        return Err(Error::Precondition(format!("n + 2 = {} is not squarefree", n + 2)));
    }
    let dn = dn_nu(n)?;
    let scale = -dn.nu / Rational64::from_integer(dn.d);
    if (n + 2) % 7 != 0 {
        Ok(scale * Rational64::from_integer(dirichlet_sum(dn.d)))
    } else {
        let reduced = dn.d / 49;
        let factor = 49 * (7 + kronecker(reduced, 7));
        Ok(scale * Rational64::from_integer(factor * dirichlet_sum(reduced)))
    }
}

/// A lifted size together with its closed-form count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lift {
    pub base: i64,
    pub ell: u32,
    pub r: u32,
    pub f: i64,
    /// `(base + 2) 4^ell f^2 49^r - 2`.
    pub target: i64,
    pub value: i64,
}

/// `sc_7((n+2) 4^ell f^2 49^r - 2) = 7^r sc_7(n) sum_{d | f} mu(d) (-D_n/d) sigma(f/d)`,
/// with `sc_7(n)` taken from the single class number formula.
pub fn sc7_lift(n: i64, ell: u32, r: u32, f: i64) -> Result<Lift> {
    if n < 1 || !arith::is_squarefree(n + 2) {
        return Err(Error::Precondition(format!("n + 2 = {} is not squarefree", n + 2)));
    }
    if f < 1 || num_integer::gcd(f, 14) != 1 {
        return Err(Error::Precondition(format!("f = {f} must be positive and prime to 14")));
    }
    let dn = dn_nu(n)?;
    let base = sc7_single_h7(n)?;
    if !base.is_integer() {
        return Err(Error::Inconsistent(format!("non-integral count {base} at n = {n}")));
    }
    let target = (n + 2)
        .checked_mul(4i64.pow(ell))
        .and_then(|v| v.checked_mul(f * f))
        .and_then(|v| v.checked_mul(49i64.pow(r)))
        .ok_or(Error::Overflow("lift size"))?
        - 2;
    let value = 7i64.pow(r) * base.to_integer() * conductor_factor(dn.d, f);
    Ok(Lift { base: n, ell, r, f, target, value })
}

/// `H(32n + 20) / 2`, valid when `8n + 5` is squarefree.
pub fn c4_class_number(n: i64) -> Result<Rational64> {
    if n < 0 || !arith::is_squarefree(8 * n + 5) {
        return Err(Error::Precondition(format!("8n + 5 = {} is not squarefree", 8 * n + 5)));
    }
    let t = shared_table(32 * n + 20);
    Ok(hv(t.h(32 * n + 20)) / Rational64::from_integer(2))
}

/// `2 sc_7(8n+1)` and `c_4(7n+2)`, with whether the hypotheses
/// `n != 4 (mod 7)` and `56n + 21` squarefree hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgressionSides {
    pub n: i64,
    pub lhs: u64,
    pub rhs: u64,
    pub hypotheses: bool,
}

impl ProgressionSides {
    /// Equality is only claimed under the hypotheses.
    pub fn holds(&self) -> bool {
        !self.hypotheses || self.lhs == self.rhs
    }
}

pub fn progression_hypotheses(n: i64) -> bool {
    n % 7 != 4 && arith::is_squarefree(56 * n + 21)
}

pub fn progression_identity(n: i64) -> ProgressionSides {
    let lhs = 2 * count_sc_t_cores_lattice((8 * n + 1) as u64, 7);
    let rhs = count_t_cores_lattice((7 * n + 2) as u64, 4);
    ProgressionSides { n, lhs, rhs, hypotheses: progression_hypotheses(n) }
}

/// The same comparison for every `n <= max_n`, sharing one table per side.
pub fn progression_sweep(max_n: i64) -> Vec<ProgressionSides> {
    let sc7 = crate::abacus::sc_t_core_counts(7, (8 * max_n + 1) as usize);
    let c4 = crate::abacus::t_core_counts(4, (7 * max_n + 2) as usize);
    (0..=max_n)
        .map(|n| ProgressionSides {
            n,
            lhs: 2 * sc7[(8 * n + 1) as usize],
            rhs: c4[(7 * n + 2) as usize],
            hypotheses: progression_hypotheses(n),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftPrime {
    Two,
    Seven,
}

/// `sc_7((n+2) 4^ell - 2) = sc_7(n)` or `sc_7((n+2) 49^ell - 2) = 7^ell sc_7(n)`,
/// both sides by lattice counting.
pub fn size_lift_holds(n: i64, ell: u32, which: LiftPrime) -> Result<bool> {
    if n < 0 {
        return Err(Error::Precondition(format!("n = {n} is negative")));
    }
    let (q, mult) = match which {
        LiftPrime::Two => (4i64, 1u64),
        LiftPrime::Seven => (49i64, 7u64.pow(ell)),
    };
    let big = (n + 2) * q.pow(ell) - 2;
    Ok(count_sc_t_cores_lattice(big as u64, 7) == mult * count_sc_t_cores_lattice(n as u64, 7))
}

/// The representation count formula at `n = -2 (mod 7)` with the symbol
/// `((D_n/49)/7)`.
pub fn sc7_via_r3_seven(n: i64) -> Result<i64> {
    let dn = dn_nu(n)?;
    let symbol = if dn.d % 49 == 0 { kronecker(dn.d / 49, 7) } else { 0 };
    three_squares::sc7_via_r3_seven(n, symbol)
}
