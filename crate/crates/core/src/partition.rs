//! Strict partitions, orbit representatives and finite index windows.
//!
//! A [`PartitionIndex`] `p = (p_1 > p_2 > … > p_d)` labels the antisymmetrized
//! monomial `a_p = det(z_i^{p_j})`; the normalized vectors `e_p = a_p/√(d!)`
//! form an orthonormal basis of the antisymmetric part of `L²(T^d)`, and the
//! ones with `p_d ≥ 0` span its Hardy subspace. An [`OrbitRep`] is a weakly
//! decreasing tuple labelling one `Σ_d`-orbit of Laurent exponents.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension. Entry evaluation sums over `d!` permutations.
pub const MAX_D: usize = 7;

/// Strictly decreasing integer tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PartitionIndex(Vec<i64>);

impl PartitionIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_D {
            return Err(Error::Dimension(format!(
                "partition length {} outside 1..={MAX_D}",
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotStrict(entries));
        }
        Ok(PartitionIndex(entries))
    }

    /// `δ = (d−1, …, 1, 0)`, the index of the constant function.
    pub fn delta(d: usize) -> Self {
        PartitionIndex((0..d as i64).rev().collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn top(&self) -> i64 {
        self.0[0]
    }

    pub fn bottom(&self) -> i64 {
        *self.0.last().unwrap()
    }

    /// Member of the Hardy (analytic) index set: last entry `≥ 0`.
    pub fn is_analytic(&self) -> bool {
        self.bottom() >= 0
    }

    /// Adds `r` to every entry (multiplication by `p^r` on the torus).
    pub fn shift_diag(&self, r: i64) -> PartitionIndex {
        PartitionIndex(self.0.iter().map(|x| x + r).collect())
    }

    /// Splits `p` into `(p_d, p − (p_d,…,p_d))`; the base ends in `0`.
    pub fn regrade(&self) -> (i64, PartitionIndex) {
        let q = self.bottom();
        (q, self.shift_diag(-q))
    }

    /// `p + f_j` with `f_j` = `j` ones followed by zeros. Always strict.
    pub fn add_leading_ones(&self, j: usize, times: i64) -> PartitionIndex {
        let mut e = self.0.clone();
        for x in e.iter_mut().take(j) {
            *x += times;
        }
        PartitionIndex(e)
    }

    /// `p − times·f_j` when the result is still a strict partition.
    pub fn sub_leading_ones(&self, j: usize, times: i64) -> Option<PartitionIndex> {
        let mut e = self.0.clone();
        for x in e.iter_mut().take(j) {
            *x -= times;
        }
        if e.windows(2).all(|w| w[0] > w[1]) {
            Some(PartitionIndex(e))
        } else {
            None
        }
    }
}

impl<'de> Deserialize<'de> for PartitionIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        PartitionIndex::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PartitionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Outcome of antisymmetrizing an integer tuple: `a_t = sign · a_partition`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPartition {
    pub sign: i8,
    pub partition: Option<PartitionIndex>,
}

impl SignedPartition {
    pub fn zero() -> Self {
        SignedPartition {
            sign: 0,
            partition: None,
        }
    }
}

/// Sorts `t` into strictly decreasing order, returning the parity of the
/// sorting permutation, or sign `0` if two entries collide.
pub fn antisymmetrize(t: &[i64], d: usize) -> Result<SignedPartition> {
    if t.len() != d {
        return Err(Error::Dimension(format!(
            "tuple of length {} in dimension {d}",
            t.len()
        )));
    }
    Ok(antisymmetrize_slice(t))
}

pub(crate) fn antisymmetrize_slice(t: &[i64]) -> SignedPartition {
    let mut v = t.to_vec();
    let mut odd = false;
    // insertion sort, descending; each adjacent swap is a transposition
    for i in 1..v.len() {
        let mut k = i;
        while k > 0 && v[k - 1] < v[k] {
            v.swap(k - 1, k);
            odd = !odd;
            k -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return SignedPartition::zero();
    }
    SignedPartition {
        sign: if odd { -1 } else { 1 },
        partition: Some(PartitionIndex(v)),
    }
}

/// Weakly decreasing integer tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrbitRep(Vec<i64>);

impl OrbitRep {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_D {
            return Err(Error::Dimension(format!(
                "orbit length {} outside 1..={MAX_D}",
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(entries));
        }
        Ok(OrbitRep(entries))
    }

    /// Representative of the orbit of an arbitrary tuple.
    pub fn of(t: &[i64]) -> OrbitRep {
        let mut v = t.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        OrbitRep(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn zero(d: usize) -> OrbitRep {
        OrbitRep(vec![0; d])
    }

    /// `max |m_k|`: how far the orbit reaches from the origin.
    pub fn height(&self) -> i64 {
        self.0[0].abs().max(self.0.last().unwrap().abs())
    }

    /// Representative of `−m` (the orbit of the conjugate monomial).
    pub fn negated(&self) -> OrbitRep {
        OrbitRep(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn is_analytic(&self) -> bool {
        *self.0.last().unwrap() >= 0
    }
}

impl<'de> Deserialize<'de> for OrbitRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        OrbitRep::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Every distinct rearrangement of `m`, each exactly once, in
/// lexicographically increasing order.
pub fn orbit_permutations(m: &OrbitRep) -> Vec<Vec<i64>> {
    let mut cur: Vec<i64> = m.0.iter().rev().copied().collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A permutation of `0..d` together with its sign.
#[derive(Clone, Debug)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: i8,
}

/// All `d!` permutations of `0..d` with signs, cached per dimension.
pub fn signed_permutations(d: usize) -> &'static [SignedPerm] {
    static CACHE: [OnceLock<Vec<SignedPerm>>; MAX_D + 1] = [const { OnceLock::new() }; MAX_D + 1];
    assert!((1..=MAX_D).contains(&d), "dimension {d} outside 1..={MAX_D}");
    CACHE[d].get_or_init(|| {
        let mut out = Vec::new();
        heap_permutations(d, &mut (0..d).collect::<Vec<_>>(), &mut out);
        out
    })
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, out: &mut Vec<SignedPerm>) {
    if k <= 1 {
        let inversions = (0..a.len())
            .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i] > a[j])
            .count();
        out.push(SignedPerm {
            perm: a.clone(),
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        });
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, a, out);
}

/// Which half of the index set a window keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Part {
    All,
    Analytic,
    NonAnalytic,
}

impl Part {
    pub fn contains(self, p: &PartitionIndex) -> bool {
        match self {
            Part::All => true,
            Part::Analytic => p.is_analytic(),
            Part::NonAnalytic => !p.is_analytic(),
        }
    }
}

/// Finite set of strict partitions with `min_bottom ≤ p_d` and
/// `p_1 ≤ max_top`, in graded lexicographic order (by `p_1`, then
/// lexicographically), optionally restricted to one half of the index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    d: usize,
    max_top: i64,
    min_bottom: i64,
    part: Part,
    members: Vec<PartitionIndex>,
}

/// The JSON form of a window: `{"d":…, "maxTop":…, "minBottom":…}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WindowBounds {
    pub d: usize,
    pub max_top: i64,
    pub min_bottom: i64,
}

impl Window {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_top(&self) -> i64 {
        self.max_top
    }

    pub fn min_bottom(&self) -> i64 {
        self.min_bottom
    }

    pub fn part(&self) -> Part {
        self.part
    }

    pub fn members(&self) -> &[PartitionIndex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Analytic window: `min_bottom = 0`.
    pub fn is_analytic(&self) -> bool {
        self.min_bottom == 0
    }

    pub fn bounds(&self) -> WindowBounds {
        WindowBounds {
            d: self.d,
            max_top: self.max_top,
            min_bottom: self.min_bottom,
        }
    }

    pub fn index_of(&self, p: &PartitionIndex) -> Option<usize> {
        self.members.binary_search(p).ok()
    }

    pub fn contains(&self, p: &PartitionIndex) -> bool {
        self.index_of(p).is_some()
    }

    /// The same window restricted to `part`.
    pub fn restrict(&self, part: Part) -> Window {
        Window {
            d: self.d,
            max_top: self.max_top,
            min_bottom: self.min_bottom,
            part,
            members: self
                .members
                .iter()
                .filter(|p| part.contains(p))
                .cloned()
                .collect(),
        }
    }

    /// Every member lies in `part`.
    pub fn within(&self, part: Part) -> bool {
        self.members.iter().all(|p| part.contains(p))
    }
}

/// All strict partitions of length `d` with `min_bottom ≤ p_d` and
/// `p_1 ≤ max_top`, in graded lexicographic order. An empty bound range
/// yields an empty window.
pub fn enumerate_window(d: usize, max_top: i64, min_bottom: i64) -> Result<Window> {
    if !(2..=MAX_D).contains(&d) {
        return Err(Error::Dimension(format!("d = {d} outside 2..={MAX_D}")));
    }
    let mut members = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fill(d, max_top, min_bottom, &mut cur, &mut members);
    members.sort();
    Ok(Window {
        d,
        max_top,
        min_bottom,
        part: Part::All,
        members,
    })
}

impl TryFrom<WindowBounds> for Window {
    type Error = Error;
    fn try_from(b: WindowBounds) -> Result<Window> {
        enumerate_window(b.d, b.max_top, b.min_bottom)
    }
}

fn fill(d: usize, hi: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<PartitionIndex>) {
    let remaining = d - cur.len();
    if remaining == 0 {
        out.push(PartitionIndex(cur.clone()));
        return;
    }
    // the remaining entries need room for remaining-1 smaller values ≥ lo
    let floor = lo + remaining as i64 - 1;
    let mut x = hi;
    while x >= floor {
        cur.push(x);
        fill(d, x - 1, lo, cur, out);
        cur.pop();
        x -= 1;
    }
}
