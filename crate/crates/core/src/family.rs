//! Ground-set arithmetic.
//!
//! Sets over `[n] = {1, ..., n}` are stored as 128-bit masks with element `x`
//! at bit `x - 1`. The derived ordering on [`ElementSet`] is therefore the
//! numeric order of the mask, which is colexicographic order on the sets.
//! Every [`SetFamily`] keeps its members sorted and unique in that order.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the ground set, 1-indexed.
pub type Element = u32;

/// Largest supported ground-set size.
pub const CAPACITY: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundParams {
    pub n: usize,
    pub d: usize,
    pub s: usize,
}

impl GroundParams {
    pub fn new(n: usize, d: usize, s: usize) -> Result<Self> {
        if n > CAPACITY {
            return Err(Error::InvalidParams(format!(
                "n = {n} exceeds capacity {CAPACITY}"
            )));
        }
        if d + 1 > n {
            return Err(Error::InvalidParams(format!(
                "need d + 1 <= n, got d = {d}, n = {n}"
            )));
        }
        if s > d {
            return Err(Error::InvalidParams(format!(
                "need s <= d, got s = {s}, d = {d}"
            )));
        }
        Ok(GroundParams { n, d, s })
    }

    /// Member size `d + 1`.
    pub fn k(&self) -> usize {
        self.d + 1
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::range(1, self.n as Element)
    }
}

/// A subset of the ground set.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for x in elements {
            if x == 0 || x as usize > CAPACITY {
                return Err(Error::OutOfRange {
                    element: x,
                    n: CAPACITY,
                });
            }
            bits |= 1u128 << (x - 1);
        }
        Ok(ElementSet(bits))
    }

    pub fn singleton(x: Element) -> Self {
        debug_assert!(x >= 1 && x as usize <= CAPACITY);
        ElementSet(1u128 << (x - 1))
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: Element, hi: Element) -> Self {
        if lo > hi || hi == 0 {
            return ElementSet::EMPTY;
        }
        let lo = lo.max(1);
        let upper = if hi as usize >= CAPACITY {
            u128::MAX
        } else {
            (1u128 << hi) - 1
        };
        let lower = (1u128 << (lo - 1)) - 1;
        ElementSet(upper & !lower)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: Element) -> bool {
        x >= 1 && (x as usize) <= CAPACITY && self.0 >> (x - 1) & 1 == 1
    }

    pub fn with(self, x: Element) -> Self {
        self | ElementSet::singleton(x)
    }

    pub fn without(self, x: Element) -> Self {
        self - ElementSet::singleton(x)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: ElementSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn min_element(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_element(self) -> Option<Element> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros())
    }

    /// True when every element lies in `1..=n`.
    pub fn fits(self, n: usize) -> bool {
        n >= CAPACITY || self.0 >> n == 0
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: Self) -> Self {
        ElementSet(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

/// Ascending iterator over the elements of a set.
#[derive(Clone)]
pub struct Elements(u128);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl FromIterator<Element> for ElementSet {
    /// Panics on elements outside `1..=CAPACITY`; use
    /// [`ElementSet::from_elements`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |acc, x| acc.with(x))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Element>::deserialize(deserializer)?;
        ElementSet::from_elements(raw).map_err(serde::de::Error::custom)
    }
}

/// A canonical (sorted, duplicate-free) collection of sets over `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    pub fn empty(n: usize) -> Self {
        SetFamily {
            n,
            members: Vec::new(),
        }
    }

    /// Canonicalizes `sets`, rejecting members with elements outside `[n]`.
    pub fn new(n: usize, sets: Vec<ElementSet>) -> Result<Self> {
        canonicalize(n, sets)
    }

    /// Builds a family from members already in strictly increasing order.
    pub(crate) fn from_sorted(n: usize, members: Vec<ElementSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n)));
        SetFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<ElementSet> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn position(&self, set: ElementSet) -> Option<usize> {
        self.members.binary_search(&set).ok()
    }

    /// Common cardinality of all members; `None` for an empty or mixed family.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == k).then_some(k)
    }

    /// Errors with the first member whose size differs from `k`.
    pub fn require_uniform(&self, k: usize) -> Result<()> {
        match self.members.iter().find(|m| m.len() != k) {
            Some(&set) => Err(Error::NotUniform {
                set,
                size: set.len(),
                expected: k,
            }),
            None => Ok(()),
        }
    }

    /// Members satisfying `keep`, still canonical.
    pub fn filter(&self, mut keep: impl FnMut(ElementSet) -> bool) -> SetFamily {
        SetFamily::from_sorted(
            self.n,
            self.members.iter().copied().filter(|&m| keep(m)).collect(),
        )
    }

    /// Number of members containing `x`.
    pub fn degree(&self, x: Element) -> usize {
        self.members.iter().filter(|m| m.contains(x)).count()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ", self.n)?;
        f.debug_list().entries(self.members.iter()).finish()
    }
}

/// Serializes as the bare list of members.
impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Sorts and deduplicates `sets` into a family over `[n]`.
pub fn canonicalize(n: usize, mut sets: Vec<ElementSet>) -> Result<SetFamily> {
    if n > CAPACITY {
        return Err(Error::InvalidParams(format!(
            "n = {n} exceeds capacity {CAPACITY}"
        )));
    }
    if let Some(bad) = sets.iter().find(|s| !s.fits(n)) {
        return Err(Error::OutOfRange {
            element: bad.max_element().unwrap_or(0),
            n,
        });
    }
    sets.sort_unstable();
    sets.dedup();
    Ok(SetFamily { n, members: sets })
}

/// Exact binomial coefficient `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> Result<u64> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc = C(a, i) here; multiply first so the division is exact.
        acc = acc * u128::from(a - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow(format!("C({a}, {b})")));
        }
    }
    Ok(acc as u64)
}

/// `C(a, b)` for signed arguments, zero when `a < 0`, `b < 0` or `b > a`.
pub fn binomial_signed(a: i64, b: i64) -> Result<u64> {
    if a < 0 || b < 0 {
        return Ok(0);
    }
    binomial(a as u64, b as u64)
}

/// All `k`-subsets of `ground` in colexicographic order.
pub fn k_subsets(ground: ElementSet, k: usize) -> SetFamily {
    let n = ground.max_element().unwrap_or(0) as usize;
    SetFamily::from_sorted(n, KSubsets::new(ground, k).collect())
}

/// Streaming colex enumeration of the `k`-subsets of a set.
pub struct KSubsets {
    elements: Vec<Element>,
    idx: Vec<usize>,
    done: bool,
}

impl KSubsets {
    pub fn new(ground: ElementSet, k: usize) -> Self {
        let elements = ground.to_vec();
        let done = k > elements.len();
        KSubsets {
            elements,
            idx: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for KSubsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let out = self
            .idx
            .iter()
            .fold(ElementSet::EMPTY, |acc, &i| acc.with(self.elements[i]));
        // Colex successor: bump the lowest index that has room, reset the ones below it.
        let k = self.idx.len();
        let mut j = 0;
        loop {
            if j == k {
                self.done = true;
                break;
            }
            let limit = if j + 1 < k {
                self.idx[j + 1]
            } else {
                self.elements.len()
            };
            if self.idx[j] + 1 < limit {
                self.idx[j] += 1;
                for (i, slot) in self.idx[..j].iter_mut().enumerate() {
                    *slot = i;
                }
                break;
            }
            j += 1;
        }
        Some(out)
    }
}
