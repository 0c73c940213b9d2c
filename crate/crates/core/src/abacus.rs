//! Abaci, extended t-residue diagrams and the lattice parametrisation of
//! t-cores.
//!
//! A t-core is encoded three ways here:
//!
//! * its abacus: bead counts `(m_0, ..., m_{t-1})` on `t` rods,
//! * its residue list `N = [n_0, ..., n_{t-1}]`, `sum n_j = 0`, with
//!   `|partition| = t|N|^2/2 + B.N` for `B = [0, 1, ..., t-1]`,
//! * the partition itself.
//!
//! The list is read off the extended residue diagram (`list_from_partition`)
//! or off the abacus (`list_from_abacus`); the two routes are checked against
//! each other in the tests.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// `B_j = lambda_j - j + s` for `j = 1..=s`, `s` the number of parts.
pub fn structure_numbers(p: &Partition) -> Vec<i64> {
    let s = p.len() as i64;
    p.parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 - (i as i64 + 1) + s)
        .collect()
}

/// Bead positions `(row, column)` (rows 1-based) of the abacus of `p`,
/// whether or not `p` is a t-core.
pub fn bead_positions(p: &Partition, t: u32) -> BTreeSet<(i64, u32)> {
    let t = t as i64;
    structure_numbers(p)
        .into_iter()
        .map(|b| (b.div_euclid(t) + 1, b.rem_euclid(t) as u32))
        .collect()
}

/// True when every rod of the abacus of `p` holds its beads in rows
/// `1..=m_j` with no gaps.
pub fn beads_top_justified(p: &Partition, t: u32) -> bool {
    let beads = bead_positions(p, t);
    (0..t).all(|c| {
        let rows: Vec<i64> = beads.iter().filter(|&&(_, col)| col == c).map(|&(r, _)| r).collect();
        rows.iter().enumerate().all(|(i, &r)| r == i as i64 + 1)
    })
}

/// Bead counts on `t` rods; rods are top-justified, so the counts determine
/// the t-core.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Abacus {
    t: u32,
    columns: Vec<i64>,
}

impl Abacus {
    pub fn new(columns: Vec<i64>) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::Precondition("an abacus needs at least two rods".into()));
        }
        if columns.iter().any(|&m| m < 0) {
            return Err(Error::Precondition(format!("negative bead count in {columns:?}")));
        }
        Ok(Abacus { t: columns.len() as u32, columns })
    }

    pub fn zero(t: u32) -> Self {
        Abacus { t, columns: vec![0; t as usize] }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn columns(&self) -> &[i64] {
        &self.columns
    }

    pub fn beads(&self) -> i64 {
        self.columns.iter().sum()
    }

    /// `(m_0, ..., m_{t-1}) -> (m_{t-1} + 1, m_0, ..., m_{t-2})`: adds a zero
    /// part, so the partition is unchanged.
    pub fn rotate(&self) -> Abacus {
        let t = self.columns.len();
        let mut cols = Vec::with_capacity(t);
        cols.push(self.columns[t - 1] + 1);
        cols.extend_from_slice(&self.columns[..t - 1]);
        Abacus { t: self.t, columns: cols }
    }

    /// Inverse of [`rotate`](Self::rotate); `None` when rod 0 is empty.
    pub fn unrotate(&self) -> Option<Abacus> {
        if self.columns[0] == 0 {
            return None;
        }
        let mut cols = self.columns[1..].to_vec();
        cols.push(self.columns[0] - 1);
        Some(Abacus { t: self.t, columns: cols })
    }

    /// The representative with an empty rod 0 (and fewest beads).
    pub fn canonical(&self) -> Abacus {
        let mut a = self.clone();
        while let Some(b) = a.unrotate() {
            a = b;
        }
        a
    }

    pub fn is_canonical(&self) -> bool {
        self.columns[0] == 0
    }

    pub fn to_partition(&self) -> Partition {
        let t = self.t as i64;
        let mut beads: Vec<i64> = Vec::with_capacity(self.beads() as usize);
        for (c, &m) in self.columns.iter().enumerate() {
            for row in 1..=m {
                beads.push(t * (row - 1) + c as i64);
            }
        }
        beads.sort_unstable_by(|a, b| b.cmp(a));
        let s = beads.len() as i64;
        let parts = beads
            .iter()
            .enumerate()
            .map(|(i, &b)| (b + i as i64 + 1 - s) as u64)
            .collect();
        Partition::new(parts)
    }
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Canonical abacus of a t-core.
pub fn abacus_from_partition(p: &Partition, t: u32) -> Result<Abacus> {
    if t < 2 {
        return Err(Error::Precondition("abacus needs t >= 2".into()));
    }
    if !beads_top_justified(p, t) {
        return Err(Error::NotCore { t });
    }
    let mut columns = vec![0i64; t as usize];
    for (_, c) in bead_positions(p, t) {
        columns[c as usize] += 1;
    }
    Ok(Abacus { t, columns }.canonical())
}

pub fn rotate(a: &Abacus) -> Abacus {
    a.rotate()
}

/// The vector `N = [n_0, ..., n_{t-1}]` with zero sum attached to a t-core.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueList {
    entries: Vec<i64>,
}

impl ResidueList {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Precondition("a residue list needs t >= 2 entries".into()));
        }
        let sum: i64 = entries.iter().sum();
        if sum != 0 {
            return Err(Error::ListSum { sum });
        }
        Ok(ResidueList { entries })
    }

    pub fn zero(t: u32) -> Self {
        ResidueList { entries: vec![0; t as usize] }
    }

    pub fn t(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `t|N|^2/2 + B.N`.
    pub fn size(&self) -> i64 {
        let t = self.t() as i64;
        let norm: i64 = self.entries.iter().map(|n| n * n).sum();
        let dot: i64 = self.entries.iter().enumerate().map(|(j, n)| j as i64 * n).sum();
        // t * norm is always even because sum n_j = 0 makes norm even.
        t * norm / 2 + dot
    }

    /// `n_l = -n_{t-1-l}` for all `l`.
    pub fn is_antisymmetric(&self) -> bool {
        let t = self.entries.len();
        (0..t).all(|l| self.entries[l] == -self.entries[t - 1 - l])
    }
}

impl fmt::Display for ResidueList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Reads the list off the extended t-residue diagram.
///
/// Row `j` (1-based) ends in the exposed cell `(j, lambda_j)`, where rows past
/// the last part end in column 0. That cell carries label
/// `(lambda_j - j) mod t` and lies in region `floor((lambda_j - j)/t) + 1`;
/// `n_i` is the largest region holding an exposed cell labelled `i`. Rows
/// `s+1..=s+t` already realise every label, and deeper rows only reach lower
/// regions.
pub fn list_from_partition(p: &Partition, t: u32) -> Result<ResidueList> {
    if t < 2 {
        return Err(Error::Precondition("residue lists need t >= 2".into()));
    }
    if !p.is_t_core(t) {
        return Err(Error::NotCore { t });
    }
    let ti = t as i64;
    let s = p.len();
    let mut best = vec![i64::MIN; t as usize];
    for j in 1..=(s + t as usize) {
        let lambda = p.parts().get(j - 1).copied().unwrap_or(0) as i64;
        let content = lambda - j as i64;
        let label = content.rem_euclid(ti) as usize;
        let region = content.div_euclid(ti) + 1;
        best[label] = best[label].max(region);
    }
    ResidueList::new(best)
}

/// Reads the list off an abacus with `s` beads: with `l + s = alpha t + beta`,
/// rod `beta` carries `n_l + alpha` beads.
pub fn list_from_abacus(a: &Abacus) -> ResidueList {
    let t = a.t() as i64;
    let s = a.beads();
    let entries = (0..t)
        .map(|l| {
            let (alpha, beta) = ((l + s).div_euclid(t), (l + s).rem_euclid(t));
            a.columns()[beta as usize] - alpha
        })
        .collect();
    ResidueList { entries }
}

/// The abacus with the fewest beads that realises `list`; rod `beta_l`
/// receives `n_l + alpha_l` beads where `l + s = alpha_l t + beta_l`.
pub fn abacus_from_list(list: &ResidueList) -> Abacus {
    let t = list.t() as i64;
    let n = list.entries();
    let mut s = 0i64;
    loop {
        if (0..t).all(|l| n[l as usize] + (l + s).div_euclid(t) >= 0) {
            let mut columns = vec![0i64; t as usize];
            for l in 0..t {
                columns[(l + s).rem_euclid(t) as usize] = n[l as usize] + (l + s).div_euclid(t);
            }
            return Abacus { t: t as u32, columns };
        }
        s += 1;
    }
}

pub fn partition_from_list(list: &ResidueList) -> Partition {
    abacus_from_list(list).to_partition()
}

// Walks every list of length t (all entries free, zero sum) with size <= max_n.
// Completing the square gives 2t * size = sum_j (t n_j + j)^2 - sum_j j^2,
// which bounds each coordinate by the remaining budget.
fn walk_lists(t: u32, max_n: i64, visit: &mut dyn FnMut(i64, &[i64])) {
    let ti = t as i64;
    let offset: i64 = (0..ti).map(|j| j * j).sum();
    let budget = 2 * ti * max_n + offset;
    let mut buf = vec![0i64; t as usize];

    fn rec(
        j: usize,
        t: i64,
        partial: i64,
        budget: i64,
        total: i64,
        offset: i64,
        buf: &mut [i64],
        visit: &mut dyn FnMut(i64, &[i64]),
    ) {
        let last = t as usize - 1;
        if j == last {
            let n = -partial;
            let w = t * n + j as i64;
            if w * w <= budget {
                buf[j] = n;
                let used = total - budget + w * w;
                visit((used - offset) / (2 * t), buf);
            }
            return;
        }
        let r = crate::arith::isqrt(budget);
        let lo = (-r - j as i64).div_euclid(t) + if (-r - j as i64).rem_euclid(t) == 0 { 0 } else { 1 };
        let hi = (r - j as i64).div_euclid(t);
        for n in lo..=hi {
            let w = t * n + j as i64;
            let rem = budget - w * w;
            if rem < 0 {
                continue;
            }
            buf[j] = n;
            rec(j + 1, t, partial + n, rem, total, offset, buf, visit);
        }
    }

    if max_n < 0 {
        return;
    }
    rec(0, ti, 0, budget, budget, offset, &mut buf, visit);
}

// Walks antisymmetric lists through their free coordinates n_0..n_{h-1},
// h = floor(t/2): 4t * size = sum_l (2t n_l + 2l - t + 1)^2 - sum_l (2l - t + 1)^2.
fn walk_antisymmetric(t: u32, max_n: i64, visit: &mut dyn FnMut(i64, &[i64])) {
    let ti = t as i64;
    let h = (t / 2) as usize;
    let shift = |l: usize| 2 * l as i64 - ti + 1;
    let offset: i64 = (0..h).map(|l| shift(l) * shift(l)).sum();
    if max_n < 0 {
        return;
    }
    let budget = 4 * ti * max_n + offset;
    let mut free = vec![0i64; h];

    fn rec(
        l: usize,
        h: usize,
        t: i64,
        budget: i64,
        used: i64,
        offset: i64,
        free: &mut [i64],
        visit: &mut dyn FnMut(i64, &[i64]),
    ) {
        if l == h {
            visit((used - offset) / (4 * t), free);
            return;
        }
        let c = 2 * l as i64 - t + 1;
        let r = crate::arith::isqrt(budget);
        let lo = (-r - c).div_euclid(2 * t) + if (-r - c).rem_euclid(2 * t) == 0 { 0 } else { 1 };
        let hi = (r - c).div_euclid(2 * t);
        for n in lo..=hi {
            let w = 2 * t * n + c;
            if w * w > budget {
                continue;
            }
            free[l] = n;
            rec(l + 1, h, t, budget - w * w, used + w * w, offset, free, visit);
        }
    }
    rec(0, h, ti, budget, 0, offset, &mut free, visit);
}

/// Expands the free coordinates of an antisymmetric list to the full list.
pub fn antisymmetric_list(t: u32, free: &[i64]) -> ResidueList {
    let t = t as usize;
    let mut entries = vec![0i64; t];
    for (l, &n) in free.iter().enumerate() {
        entries[l] = n;
        entries[t - 1 - l] = -n;
    }
    ResidueList { entries }
}

/// Calls `visit` on every t-core list of size at most `max_n`.
pub fn for_each_list(t: u32, max_n: i64, mut visit: impl FnMut(&ResidueList)) {
    assert!(t >= 2);
    walk_lists(t, max_n, &mut |_, v| visit(&ResidueList { entries: v.to_vec() }));
}

/// Calls `visit` on every antisymmetric (self-conjugate) list of size at most `max_n`.
pub fn for_each_sc_list(t: u32, max_n: i64, mut visit: impl FnMut(&ResidueList)) {
    assert!(t >= 2);
    walk_antisymmetric(t, max_n, &mut |_, free| visit(&antisymmetric_list(t, free)));
}

/// `c_t(0..=max_n)` by counting lattice points.
pub fn t_core_counts(t: u32, max_n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_n + 1];
    if t == 1 {
        counts[0] = 1;
        return counts;
    }
    walk_lists(t, max_n as i64, &mut |size, _| counts[size as usize] += 1);
    counts
}

/// `sc_t(0..=max_n)` by counting antisymmetric lattice points.
pub fn sc_t_core_counts(t: u32, max_n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_n + 1];
    if t == 1 {
        counts[0] = 1;
        return counts;
    }
    walk_antisymmetric(t, max_n as i64, &mut |size, _| counts[size as usize] += 1);
    counts
}

pub fn count_t_cores_lattice(n: u64, t: u32) -> u64 {
    t_core_counts(t, n as usize)[n as usize]
}

pub fn count_sc_t_cores_lattice(n: u64, t: u32) -> u64 {
    sc_t_core_counts(t, n as usize)[n as usize]
}

/// The six shapes of canonical abaci of self-conjugate 7-cores, keyed by the
/// bead count `s mod 7` (`s = 7r, 7r+1, 7r+2, 7r+3, 7r+5, 7r+6`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyType {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl FamilyType {
    pub const ALL: [FamilyType; 6] =
        [FamilyType::I, FamilyType::II, FamilyType::III, FamilyType::IV, FamilyType::V, FamilyType::VI];

    /// Largest admissible `(a, b)` for a given `r`.
    fn param_bounds(self, r: i64) -> (i64, i64) {
        match self {
            FamilyType::I | FamilyType::II => (2 * r, 2 * r),
            FamilyType::III => (2 * r + 1, 2 * r),
            FamilyType::IV | FamilyType::V => (2 * r + 1, 2 * r + 1),
            FamilyType::VI => (2 * r + 2, 2 * r + 1),
        }
    }

    /// Residue of the bead count mod 7.
    pub fn bead_residue(self) -> i64 {
        match self {
            FamilyType::I => 0,
            FamilyType::II => 1,
            FamilyType::III => 2,
            FamilyType::IV => 3,
            FamilyType::V => 5,
            FamilyType::VI => 6,
        }
    }
}

impl fmt::Display for FamilyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyType::I => "I",
            FamilyType::II => "II",
            FamilyType::III => "III",
            FamilyType::IV => "IV",
            FamilyType::V => "V",
            FamilyType::VI => "VI",
        };
        f.write_str(s)
    }
}

/// One canonical abacus `(0, ...)` of a self-conjugate 7-core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScAbacusFamily {
    pub family_type: FamilyType,
    pub a: i64,
    pub b: i64,
    pub r: i64,
}

impl ScAbacusFamily {
    pub fn new(family_type: FamilyType, a: i64, b: i64, r: i64) -> Result<Self> {
        let (amax, bmax) = family_type.param_bounds(r);
        if r < 0 || !(0..=amax).contains(&a) || !(0..=bmax).contains(&b) {
            return Err(Error::Precondition(format!(
                "type {family_type} parameters out of range: a={a}, b={b}, r={r}"
            )));
        }
        Ok(ScAbacusFamily { family_type, a, b, r })
    }

    pub fn abacus(&self) -> Abacus {
        let (a, b, r) = (self.a, self.b, self.r);
        let cols = match self.family_type {
            FamilyType::I => [0, a, b, r, 2 * r - b, 2 * r - a, 2 * r],
            FamilyType::II => [0, 2 * r + 1, a, b, r, 2 * r - b, 2 * r - a],
            FamilyType::III => [0, a, 2 * r + 1 - a, 2 * r + 1, b, r, 2 * r - b],
            FamilyType::IV => [0, a, b, 2 * r + 1 - b, 2 * r + 1 - a, 2 * r + 1, r],
            FamilyType::V => [0, r + 1, 2 * r + 2, a, b, 2 * r + 1 - b, 2 * r + 1 - a],
            FamilyType::VI => [0, a, r + 1, 2 * r + 2 - a, 2 * r + 2, b, 2 * r + 1 - b],
        };
        Abacus { t: 7, columns: cols.to_vec() }
    }

    pub fn list(&self) -> ResidueList {
        list_from_abacus(&self.abacus())
    }

    pub fn size(&self) -> i64 {
        self.list().size()
    }

    pub fn partition(&self) -> Partition {
        self.abacus().to_partition()
    }

    /// The sum-of-three-squares representation `x^2 + y^2 + z^2 = 7n + 14`
    /// attached to each family.
    pub fn triple(&self) -> (i64, i64, i64) {
        let (a, b, r) = (self.a, self.b, self.r);
        let s = 7 * r;
        match self.family_type {
            FamilyType::I => (s + 3, s + 2 - 7 * a, s + 1 - 7 * b),
            FamilyType::II => (s + 4, s + 2 - 7 * a, s + 1 - 7 * b),
            FamilyType::III => (s + 5, s + 4 - 7 * a, s + 1 - 7 * b),
            FamilyType::IV => (s + 6, s + 5 - 7 * a, s + 4 - 7 * b),
            FamilyType::V => (s + 8, s + 5 - 7 * a, s + 4 - 7 * b),
            FamilyType::VI => (s + 9, s + 8 - 7 * a, s + 4 - 7 * b),
        }
    }
}

pub fn family_to_triple(fam: &ScAbacusFamily) -> (i64, i64, i64) {
    fam.triple()
}

/// Every family instance whose 7-core has size `n`.
pub fn sc7_families(n: u64) -> Vec<ScAbacusFamily> {
    let target = 7 * n as i64 + 14;
    let mut out = Vec::new();
    for ty in FamilyType::ALL {
        let mut r = 0i64;
        while (7 * r + 3) * (7 * r + 3) <= target {
            let (amax, bmax) = ty.param_bounds(r);
            for a in 0..=amax {
                for b in 0..=bmax {
                    let fam = ScAbacusFamily { family_type: ty, a, b, r };
                    if fam.size() == n as i64 {
                        out.push(fam);
                    }
                }
            }
            r += 1;
        }
    }
    out
}

/// Sum-of-three-squares triple of a self-conjugate 7-core list:
/// `7|N| + 14 = (3 - 7n_0)^2 + (2 - 7n_1)^2 + (1 - 7n_2)^2`.
pub fn sc7_list_triple(list: &ResidueList) -> (i64, i64, i64) {
    assert_eq!(list.t(), 7);
    let n = list.entries();
    (3 - 7 * n[0], 2 - 7 * n[1], 1 - 7 * n[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, Partition};

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn structure_number_examples() {
        assert_eq!(structure_numbers(&p(&[3, 2, 1])), vec![5, 3, 1]);
        // lambda_1 - 1 + s = 1 - 1 + 1
        assert_eq!(structure_numbers(&p(&[1])), vec![1]);
        assert_eq!(structure_numbers(&p(&[4, 4, 2, 1])), vec![7, 6, 3, 1]);
    }

    #[test]
    fn abacus_examples() {
        let a = abacus_from_partition(&p(&[3, 2, 1]), 4).unwrap();
        assert_eq!(a.columns(), &[0, 2, 0, 1]);
        assert_eq!(abacus_from_partition(&Partition::empty(), 5).unwrap(), Abacus::zero(5));
        let a = abacus_from_partition(&p(&[1]), 7).unwrap();
        assert_eq!(a.columns(), &[0, 1, 0, 0, 0, 0, 0]);
        assert!(abacus_from_partition(&p(&[3, 2, 1]), 3).is_err());
    }

    #[test]
    fn rotation_examples() {
        let a = Abacus::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(a.rotate().columns(), &[7, 0, 1, 2, 3, 4, 5]);
        assert_eq!(Abacus::zero(7).rotate().columns(), &[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(a.rotate().canonical(), a);
        assert_eq!(a.rotate().rotate().to_partition(), a.to_partition());
    }

    #[test]
    fn list_examples() {
        let l = list_from_partition(&p(&[3, 2, 1]), 4).unwrap();
        assert_eq!(l.entries()[2], 1);
        assert_eq!(l.size(), 6);
        assert!(l.is_antisymmetric());
        assert_eq!(list_from_partition(&Partition::empty(), 6).unwrap(), ResidueList::zero(6));
        assert_eq!(list_from_partition(&p(&[1]), 7).unwrap().size(), 1);
        assert_eq!(partition_from_list(&ResidueList::zero(5)), Partition::empty());
        assert!(matches!(ResidueList::new(vec![1, 1, -1]), Err(Error::ListSum { sum: 1 })));
    }

    #[test]
    fn residue_and_abacus_routes_agree() {
        for t in 2..=9u32 {
            for n in 0..=18 {
                for q in enumerate_partitions(n).unwrap().filter(|q| q.is_t_core(t)) {
                    let via_diagram = list_from_partition(&q, t).unwrap();
                    let a = abacus_from_partition(&q, t).unwrap();
                    assert_eq!(list_from_abacus(&a), via_diagram);
                    assert_eq!(list_from_abacus(&a.rotate().rotate()), via_diagram);
                    assert_eq!(a.to_partition(), q);
                }
            }
        }
    }

    #[test]
    fn type_one_list_gives_prescribed_size() {
        for (a, b, r) in [(0, 0, 0), (1, 2, 1), (2, 0, 1), (3, 4, 2)] {
            let list = ResidueList::new(vec![-r, a - r, b - r, 0, r - b, r - a, r]).unwrap();
            let (x, y, z) = (7 * r + 3, 7 * r + 2 - 7 * a, 7 * r + 1 - 7 * b);
            let part = partition_from_list(&list);
            assert_eq!(7 * part.size() as i64 + 14, x * x + y * y + z * z);
            let fam = ScAbacusFamily::new(FamilyType::I, a, b, r).unwrap();
            assert_eq!(fam.list(), list);
        }
    }

    #[test]
    fn four_core_round_trip() {
        for n in 0..=25 {
            for q in enumerate_partitions(n).unwrap().filter(|q| q.is_t_core(4)) {
                let l = list_from_partition(&q, 4).unwrap();
                assert_eq!(partition_from_list(&l), q);
            }
        }
    }

    #[test]
    fn lattice_small_values() {
        for t in 2..=9 {
            assert_eq!(count_t_cores_lattice(0, t), 1);
            assert_eq!(count_sc_t_cores_lattice(0, t), 1);
        }
        assert_eq!(count_t_cores_lattice(2, 4), 2);
        assert_eq!(count_sc_t_cores_lattice(1, 7), 1);
    }

    #[test]
    fn families_small_n() {
        let f = sc7_families(1);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].partition(), p(&[1]));
        let f0 = sc7_families(0);
        assert_eq!(f0.len(), 1);
        assert_eq!(f0[0].triple(), (3, 2, 1));
        let f = ScAbacusFamily::new(FamilyType::II, 0, 0, 0).unwrap();
        assert_eq!(f.triple(), (4, 2, 1));
        assert_eq!(f.size(), 1);
        assert!(ScAbacusFamily::new(FamilyType::I, 3, 0, 1).is_err());
    }

    #[test]
    fn family_bead_counts_avoid_residue_four() {
        for n in 0..=120 {
            for fam in sc7_families(n) {
                let s = fam.abacus().beads();
                assert_eq!(s.rem_euclid(7), fam.family_type.bead_residue());
                assert_ne!(s.rem_euclid(7), 4);
                assert!(fam.abacus().is_canonical());
            }
        }
    }

    #[test]
    fn lattice_agrees_with_brute_force() {
        use crate::partitions::{count_sc_t_cores_brute, count_t_cores_brute};
        for t in 2..=9u32 {
            let c = t_core_counts(t, 22);
            let sc = sc_t_core_counts(t, 22);
            for n in 0..=22u64 {
                assert_eq!(c[n as usize], count_t_cores_brute(n, t).unwrap(), "c_{t}({n})");
                assert_eq!(sc[n as usize], count_sc_t_cores_brute(n, t).unwrap(), "sc_{t}({n})");
            }
        }
    }

    #[test]
    fn families_count_sc7_cores() {
        let sc = sc_t_core_counts(7, 300);
        for n in 0..=300u64 {
            let fams = sc7_families(n);
            assert_eq!(fams.len() as u64, sc[n as usize], "n={n}");
            for f in &fams {
                let (x, y, z) = f.triple();
                assert_eq!(x * x + y * y + z * z, 7 * n as i64 + 14);
                let (u, v, w) = sc7_list_triple(&f.list());
                let mut lhs = [u.abs(), v.abs(), w.abs()];
                let mut rhs = [x.abs(), y.abs(), z.abs()];
                lhs.sort_unstable();
                rhs.sort_unstable();
                assert_eq!(lhs, rhs);
                assert!(f.partition().is_self_conjugate());
            }
        }
    }
}
