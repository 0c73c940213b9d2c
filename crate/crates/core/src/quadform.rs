//! Positive definite binary quadratic forms: reduction, classes, genus
//! fingerprints, and the map from self-conjugate 7-cores to forms through
//! sums of three squares.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::abacus::{abacus_from_partition, list_from_abacus, sc7_families, sc7_list_triple};
use crate::arith::{self, fundamental_part};
use crate::class_numbers::reduced_forms;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::sc7::dn_nu;
use crate::three_squares::Triple;

/// `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn content(&self) -> i64 {
        arith::gcd3(self.a, self.b, self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn primitive_part(&self) -> QuadForm {
        let g = self.content();
        QuadForm::new(self.a / g, self.b / g, self.c / g)
    }

    pub fn scaled(&self, k: i64) -> QuadForm {
        QuadForm::new(k * self.a, k * self.b, k * self.c)
    }

    pub fn eval(&self, u: i64, v: i64) -> i64 {
        self.a * u * u + self.b * u * v + self.c * v * v
    }

    /// `f(p x + q y, r x + s y)`.
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> QuadForm {
        let (a, b, c) = (self.a, self.b, self.c);
        QuadForm::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }

    pub fn reduce(&self) -> Result<QuadForm> {
        reduce(self)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// The reduced representative of the class of a positive definite form.
pub fn reduce(f: &QuadForm) -> Result<QuadForm> {
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite { a: f.a, b: f.b, c: f.c });
    }
    let d = f.discriminant();
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        if b <= -a || b > a {
            let k = (a - b).div_euclid(2 * a);
            b += 2 * a * k;
            c = (b * b - d) / (4 * a);
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return Ok(QuadForm::new(a, b, c));
    }
}

/// Reduced forms of discriminant `d < 0`, primitive or not.
pub fn class_list(d: i64) -> Result<Vec<QuadForm>> {
    if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::Precondition(format!("{d} is not a negative discriminant")));
    }
    Ok(reduced_forms(-d).into_iter().map(|(a, b, c)| QuadForm::new(a, b, c)).collect())
}

/// `[1, 0, -d/4]` or `[1, 1, (1-d)/4]`.
pub fn principal_form(d: i64) -> QuadForm {
    if d.rem_euclid(4) == 0 {
        QuadForm::new(1, 0, -d / 4)
    } else {
        QuadForm::new(1, 1, (1 - d) / 4)
    }
}

pub fn p_primitive(f: &QuadForm, p: i64) -> bool {
    f.content() % p != 0
}

/// The power of `p` in the content equals the power of `p` in the
/// conductor of the discriminant.
pub fn p_totally_imprimitive(f: &QuadForm, p: i64) -> bool {
    let (_, conductor) = fundamental_part(f.discriminant());
    arith::valuation(f.content(), p) == arith::valuation(conductor, p)
}

/// Unit values of a primitive form modulo one prime power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalValues {
    pub prime: i64,
    pub exponent: u32,
    /// Unit residues modulo `prime` (odd primes) or modulo `2^exponent`;
    /// for odd primes a unit is represented modulo `p^k` exactly when its
    /// residue modulo `p` is.
    pub residues: Vec<i64>,
}

/// The units represented by a form modulo `|D|`, stored prime power by prime
/// power (the value set modulo `|D|` is the product of the local sets), with
/// the content kept alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenusLabel {
    pub discriminant: i64,
    pub content: i64,
    pub local: Vec<LocalValues>,
}

impl GenusLabel {
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(self).expect("label serializes"));
        hex::encode(h.finalize())
    }
}

fn unit_values_mod(f: &QuadForm, m: i64) -> Vec<i64> {
    let mut seen = vec![false; m as usize];
    for u in 0..m {
        for v in 0..m {
            let x = f.eval(u, v).rem_euclid(m);
            seen[x as usize] = true;
        }
    }
    (0..m).filter(|&x| seen[x as usize] && x.gcd(&m) == 1).collect()
}

pub fn genus_of(f: &QuadForm) -> GenusLabel {
    let g = f.content();
    let prim = f.primitive_part();
    let d = prim.discriminant();
    let mut local = Vec::new();
    for (p, k) in arith::factorize(d) {
        let modulus = if p == 2 { 1i64 << k } else { p };
        local.push(LocalValues { prime: p, exponent: k, residues: unit_values_mod(&prim, modulus) });
    }
    GenusLabel { discriminant: f.discriminant(), content: g, local }
}

/// Unit values modulo `|D|` by evaluating over the full box
/// `0 <= u, v < |D|`; the slow definition `genus_of` is checked against.
pub fn unit_values_full(f: &QuadForm) -> BTreeSet<i64> {
    let m = f.primitive_part().discriminant().abs();
    unit_values_mod(&f.primitive_part(), m).into_iter().collect()
}

/// Expands a label back into the unit residues modulo `|D/content^2|`.
pub fn expand_label(label: &GenusLabel) -> BTreeSet<i64> {
    let m: i64 = label.local.iter().map(|l| l.prime.pow(l.exponent)).product();
    (0..m)
        .filter(|&x| {
            x.gcd(&m) == 1
                && label.local.iter().all(|l| {
                    let r = if l.prime == 2 { x % (1 << l.exponent) } else { x % l.prime };
                    l.residues.binary_search(&r).is_ok()
                })
        })
        .collect()
}

/// Two vectors `m`, `n` with `m x n = w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VectorPair {
    pub m: [i64; 3],
    pub n: [i64; 3],
}

pub fn cross(m: [i64; 3], n: [i64; 3]) -> [i64; 3] {
    [m[1] * n[2] - m[2] * n[1], m[2] * n[0] - m[0] * n[2], m[0] * n[1] - m[1] * n[0]]
}

impl VectorPair {
    pub fn cross(&self) -> [i64; 3] {
        cross(self.m, self.n)
    }
}

/// Completes a primitive vector: row operations take `w` to `e_1`; the
/// other two rows of the accumulated unimodular matrix then have cross
/// product `w` (up to the sign fixed at the end).
pub fn complete_primitive_vector(w: [i64; 3]) -> Result<VectorPair> {
    if arith::gcd3(w[0], w[1], w[2]) != 1 {
        return Err(Error::NotPrimitive(w[0], w[1], w[2]));
    }
    let mut v = w;
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    loop {
        let nonzero: Vec<usize> = (0..3).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let pivot = *nonzero.iter().min_by_key(|&&i| (v[i].abs(), i)).unwrap();
        for &j in &nonzero {
            if j != pivot {
                let q = v[j].div_euclid(v[pivot]);
                v[j] -= q * v[pivot];
                for col in 0..3 {
                    u[j][col] -= q * u[pivot][col];
                }
            }
        }
    }
    let i = (0..3).find(|&i| v[i] != 0).unwrap();
    u.swap(0, i);
    v.swap(0, i);
    if v[0] < 0 {
        u[0] = u[0].map(|x| -x);
    }
    let (m, mut n) = (u[1], u[2]);
    if cross(m, n) != w {
        n = n.map(|x| -x);
    }
    let pair = VectorPair { m, n };
    if pair.cross() != w {
        return Err(Error::Inconsistent(format!("completion of {w:?} failed")));
    }
    Ok(pair)
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `|m u + n v|^2` for a completion of the primitive part of `w`, scaled by
/// the content of `w`; discriminant `-4|w|^2`. Returned reduced.
pub fn triple_to_form(w: Triple) -> Result<QuadForm> {
    let g = arith::gcd3(w.x, w.y, w.z);
    if g == 0 {
        return Err(Error::Precondition("zero vector".into()));
    }
    let pair = complete_primitive_vector([w.x / g, w.y / g, w.z / g])?;
    let f = QuadForm::new(dot(pair.m, pair.m), 2 * dot(pair.m, pair.n), dot(pair.n, pair.n));
    reduce(&f.scaled(g))
}

/// Self-conjugate 7-core -> abacus -> residue list -> triple -> form.
pub fn phi(p: &Partition) -> Result<QuadForm> {
    if !p.is_self_conjugate() {
        return Err(Error::NotSelfConjugate);
    }
    let abacus = abacus_from_partition(p, 7)?;
    let list = list_from_abacus(&abacus);
    let (x, y, z) = sc7_list_triple(&list);
    triple_to_form(Triple::new(x, y, z))
}

/// Per-size record of the image of `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormMapReport {
    pub n: i64,
    pub discriminant: i64,
    pub sc7: u64,
    pub vacuous: bool,
    pub image_classes: Vec<String>,
    pub fiber_sizes: Vec<u64>,
    pub expected_fiber: String,
    pub genus_fingerprints: Vec<String>,
    pub genus_size: usize,
    pub class_count: usize,
    pub genus_count: usize,
    pub single_genus: bool,
    pub covers_genus: bool,
    pub non_principal: bool,
    pub no_zero_coordinate: bool,
    pub seven_primitive: bool,
    pub two_totally_imprimitive: bool,
    pub fiber_ok: bool,
    pub ell: u32,
    pub r_count: u32,
    pub domain_gap: bool,
    pub passed: bool,
}

pub fn verify_form_map(n: i64) -> Result<FormMapReport> {
    if n < 0 {
        return Err(Error::Precondition(format!("n = {n} is negative")));
    }
    let disc = -28 * n - 56;
    let dn = dn_nu(n)?;
    let families = sc7_families(n as u64);
    let mut fibers: BTreeMap<QuadForm, u64> = BTreeMap::new();
    let mut no_zero = true;
    for fam in &families {
        let p = fam.partition();
        let (x, y, z) = sc7_list_triple(&list_from_abacus(&abacus_from_partition(&p, 7)?));
        no_zero &= x != 0 && y != 0 && z != 0;
        let f = phi(&p)?;
        if f.discriminant() != disc {
            return Err(Error::Inconsistent(format!("{f} has discriminant {}", f.discriminant())));
        }
        *fibers.entry(f).or_default() += 1;
    }
    let classes = class_list(disc)?;
    let labels: BTreeMap<QuadForm, GenusLabel> = classes.iter().map(|f| (*f, genus_of(f))).collect();
    let image_labels: BTreeSet<&GenusLabel> = fibers.keys().map(|f| &labels[f]).collect();
    let principal = genus_of(&principal_form(disc));
    let all_labels: BTreeSet<&GenusLabel> = labels.values().collect();

    let expected = dn.nu * Rational64::from_integer(1 << dn.r_count);
    let fiber_sizes: Vec<u64> = fibers.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let vacuous = families.is_empty();
    let single_genus = image_labels.len() <= 1;
    let covers_genus = match image_labels.iter().next() {
        Some(label) if single_genus => classes.iter().all(|f| &labels[f] != *label || fibers.contains_key(f)),
        _ => vacuous,
    };
    let genus_size = image_labels.iter().next().map_or(0, |l| labels.values().filter(|m| m == l).count());
    let non_principal = !image_labels.contains(&principal);
    let seven_primitive = fibers.keys().all(|f| p_primitive(f, 7));
    let two_totally_imprimitive = fibers.keys().all(|f| p_totally_imprimitive(f, 2));
    let fiber_ok = fiber_sizes.iter().all(|&s| Rational64::from_integer(s as i64) == expected);
    let passed = vacuous
        || (single_genus
            && covers_genus
            && non_principal
            && no_zero
            && seven_primitive
            && two_totally_imprimitive
            && fiber_ok);
    Ok(FormMapReport {
        n,
        discriminant: disc,
        sc7: families.len() as u64,
        vacuous,
        image_classes: fibers.keys().map(|f| f.to_string()).collect(),
        fiber_sizes,
        expected_fiber: expected.to_string(),
        genus_fingerprints: image_labels.iter().map(|l| l.fingerprint()).collect(),
        genus_size,
        class_count: classes.len(),
        genus_count: all_labels.len(),
        single_genus,
        covers_genus,
        non_principal,
        no_zero_coordinate: no_zero,
        seven_primitive,
        two_totally_imprimitive,
        fiber_ok,
        ell: dn.ell,
        r_count: dn.r_count,
        domain_gap: dn.domain_gap,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce(&QuadForm::new(1, 0, 21)).unwrap(), QuadForm::new(1, 0, 21));
        assert_eq!(reduce(&QuadForm::new(21, 0, 1)).unwrap(), QuadForm::new(1, 0, 21));
        assert_eq!(reduce(&QuadForm::new(2, 2, 11)).unwrap(), QuadForm::new(2, 2, 11));
        assert_eq!(reduce(&QuadForm::new(2, -2, 2)).unwrap(), QuadForm::new(2, 2, 2));
        assert!(reduce(&QuadForm::new(1, 3, 1)).is_err());
        assert!(reduce(&QuadForm::new(-1, 0, -1)).is_err());
    }

    #[test]
    fn class_lists() {
        let c = class_list(-84).unwrap();
        assert_eq!(c.iter().filter(|f| f.is_primitive()).count(), 4);
        assert_eq!(class_list(-3).unwrap(), vec![QuadForm::new(1, 1, 1)]);
        assert_eq!(class_list(-4).unwrap(), vec![QuadForm::new(1, 0, 1)]);
    }

    #[test]
    fn genus_examples() {
        let p = genus_of(&principal_form(-84));
        assert_eq!(principal_form(-84), QuadForm::new(1, 0, 21));
        let g = genus_of(&QuadForm::new(2, 2, 11));
        let h = genus_of(&QuadForm::new(3, 0, 7));
        assert_ne!(p, g);
        assert_ne!(p, h);
        assert_ne!(g, h);
        for d in [-84i64, -56, -140, -120, -231 * 4, -300, -63, -27] {
            for f in class_list(d).unwrap() {
                assert_eq!(expand_label(&genus_of(&f)), unit_values_full(&f), "{f}");
            }
        }
    }

    #[test]
    fn completion() {
        let p = complete_primitive_vector([1, 0, 0]).unwrap();
        assert_eq!(p, VectorPair { m: [0, 1, 0], n: [0, 0, 1] });
        for w in [[1, 2, 4], [3, 1, 5], [-3, 2, -1], [0, 5, 7], [6, 10, 15]] {
            assert_eq!(complete_primitive_vector(w).unwrap().cross(), w);
        }
        assert!(complete_primitive_vector([2, 4, 6]).is_err());
    }

    #[test]
    fn triple_forms() {
        let f = triple_to_form(Triple::new(1, 2, 4)).unwrap();
        assert_eq!(f.discriminant(), -84);
        assert_eq!(triple_to_form(Triple::new(-1, 2, 4)).unwrap().discriminant(), -84);
        let g = triple_to_form(Triple::new(3, 6, 9)).unwrap();
        assert_eq!(g.discriminant(), -4 * 126);
        assert_eq!(g.content(), 3);
    }

    #[test]
    fn phi_small() {
        let f = phi(&Partition::new(vec![1])).unwrap();
        assert_eq!(f.discriminant(), -84);
        let f0 = phi(&Partition::empty()).unwrap();
        assert_eq!(f0.discriminant(), -56);
        assert!(phi(&Partition::new(vec![2])).is_err());
        let r = verify_form_map(1).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.fiber_sizes, vec![1]);
        assert!(verify_form_map(7).unwrap().vacuous);
    }
}
