//! Witness validity, `s`-witness verification and VC-dimension checks.
//!
//! A witness for a member `F` is a subset `B ⊆ F` that is never realized as
//! an intersection `F ∩ F'` with any member `F'` (including `F` itself).
//! For a `(d+1)`-uniform family, `VC ≤ d` holds exactly when every member has
//! some witness, since the only candidates for a shattered `(d+1)`-set are
//! the members themselves.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{binomial, ElementSet, KSubsets, SetFamily};

/// Families at least this large are checked member-parallel.
const PARALLEL_THRESHOLD: usize = 512;

/// Chosen witness `B_F` for each member `F`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessAssignment {
    entries: BTreeMap<ElementSet, ElementSet>,
}

impl WitnessAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: ElementSet, witness: ElementSet) {
        self.entries.insert(set, witness);
    }

    pub fn get(&self, set: ElementSet) -> Option<ElementSet> {
        self.entries.get(&set).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(member, witness)` pairs in canonical member order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementSet, ElementSet)> + '_ {
        self.entries.iter().map(|(&f, &b)| (f, b))
    }

    /// Distinct witness values `𝓑`, canonical order.
    pub fn bases(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self.entries.values().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Members whose witness is `base`.
    pub fn fiber(&self, base: ElementSet) -> Vec<ElementSet> {
        self.iter()
            .filter(|&(_, b)| b == base)
            .map(|(f, _)| f)
            .collect()
    }

    /// Keeps only the entries for members of `family`.
    pub fn restrict_to(&self, family: &SetFamily) -> WitnessAssignment {
        WitnessAssignment {
            entries: self
                .entries
                .iter()
                .filter(|(f, _)| family.contains(**f))
                .map(|(&f, &b)| (f, b))
                .collect(),
        }
    }
}

impl FromIterator<(ElementSet, ElementSet)> for WitnessAssignment {
    fn from_iter<I: IntoIterator<Item = (ElementSet, ElementSet)>>(iter: I) -> Self {
        WitnessAssignment {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessEntry {
    set: ElementSet,
    witness: ElementSet,
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    witnesses: Vec<WitnessEntry>,
}

impl Serialize for WitnessAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WitnessFile {
            witnesses: self
                .iter()
                .map(|(set, witness)| WitnessEntry { set, witness })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WitnessAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = WitnessFile::deserialize(deserializer)?;
        let mut out = WitnessAssignment::new();
        for e in file.witnesses {
            if out.entries.insert(e.set, e.witness).is_some() {
                return Err(serde::de::Error::custom(format!(
                    "duplicate witness entry for {}",
                    e.set
                )));
            }
        }
        Ok(out)
    }
}

/// Outcome of [`verify_s_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    Valid(WitnessAssignment),
    /// The first member (canonical order) with no valid witness of the requested size.
    Invalid { failing: ElementSet },
}

impl WitnessVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessVerdict::Valid(_))
    }

    pub fn assignment(&self) -> Option<&WitnessAssignment> {
        match self {
            WitnessVerdict::Valid(a) => Some(a),
            WitnessVerdict::Invalid { .. } => None,
        }
    }

    pub fn into_assignment(self) -> Option<WitnessAssignment> {
        match self {
            WitnessVerdict::Valid(a) => Some(a),
            WitnessVerdict::Invalid { .. } => None,
        }
    }
}

/// Why a supplied assignment fails to certify an `s`-witness family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum AssignmentDefect {
    MissingMember { set: ElementSet },
    UnknownMember { set: ElementSet },
    WrongSize { set: ElementSet, witness: ElementSet, expected: usize },
    NotSubset { set: ElementSet, witness: ElementSet },
    /// `set ∩ other == witness`.
    Realized { set: ElementSet, witness: ElementSet, other: ElementSet },
}

impl AssignmentDefect {
    pub fn set(&self) -> ElementSet {
        match *self {
            AssignmentDefect::MissingMember { set }
            | AssignmentDefect::UnknownMember { set }
            | AssignmentDefect::WrongSize { set, .. }
            | AssignmentDefect::NotSubset { set, .. }
            | AssignmentDefect::Realized { set, .. } => set,
        }
    }
}

/// First member of `members` realizing `witness` as its intersection with `set`.
fn blocker(members: &[ElementSet], set: ElementSet, witness: ElementSet) -> Option<ElementSet> {
    members.iter().copied().find(|&g| set & g == witness)
}

fn check_membership(family: &SetFamily, set: ElementSet, witness: ElementSet) -> Result<()> {
    if !family.contains(set) {
        return Err(Error::NotAMember(set));
    }
    if !witness.is_subset(set) {
        return Err(Error::NotASubset { set, witness });
    }
    Ok(())
}

/// True iff no member `F'` satisfies `set ∩ F' = witness`.
pub fn valid_witness(family: &SetFamily, set: ElementSet, witness: ElementSet) -> Result<bool> {
    check_membership(family, set, witness)?;
    Ok(blocker(family.members(), set, witness).is_none())
}

fn witnesses_of(members: &[ElementSet], set: ElementSet, s: usize) -> impl Iterator<Item = ElementSet> + '_ {
    KSubsets::new(set, s).filter(move |&b| blocker(members, set, b).is_none())
}

/// All valid size-`s` witnesses of `set`, canonical order.
pub fn find_witnesses(family: &SetFamily, set: ElementSet, s: usize) -> Result<SetFamily> {
    check_membership(family, set, ElementSet::EMPTY)?;
    Ok(SetFamily::from_sorted(
        family.n(),
        witnesses_of(family.members(), set, s).collect(),
    ))
}

/// Decides whether `family` is an `s`-witness family, choosing the
/// canonically-first valid witness for every member.
pub fn verify_s_witness(family: &SetFamily, s: usize) -> Result<WitnessVerdict> {
    if let Some(k) = family.uniformity() {
        if s >= k && !family.is_empty() {
            // B = F is always realized by F ∩ F.
            return Ok(WitnessVerdict::Invalid {
                failing: family.members()[0],
            });
        }
    } else if !family.is_empty() {
        let k = family.members()[0].len();
        family.require_uniform(k)?;
    }
    let members = family.members();
    let pick = |&f: &ElementSet| (f, witnesses_of(members, f, s).next());
    let chosen: Vec<(ElementSet, Option<ElementSet>)> = if members.len() >= PARALLEL_THRESHOLD {
        members.par_iter().map(pick).collect()
    } else {
        members.iter().map(pick).collect()
    };
    let mut out = WitnessAssignment::new();
    for (f, b) in chosen {
        match b {
            Some(b) => out.insert(f, b),
            None => return Ok(WitnessVerdict::Invalid { failing: f }),
        }
    }
    Ok(WitnessVerdict::Valid(out))
}

/// Checks a supplied assignment against `family`, returning the first defect.
pub fn check_assignment(
    family: &SetFamily,
    assignment: &WitnessAssignment,
    s: usize,
) -> Option<AssignmentDefect> {
    for &f in family {
        if assignment.get(f).is_none() {
            return Some(AssignmentDefect::MissingMember { set: f });
        }
    }
    for (set, witness) in assignment.iter() {
        if !family.contains(set) {
            return Some(AssignmentDefect::UnknownMember { set });
        }
        if !witness.is_subset(set) {
            return Some(AssignmentDefect::NotSubset { set, witness });
        }
        if witness.len() != s {
            return Some(AssignmentDefect::WrongSize {
                set,
                witness,
                expected: s,
            });
        }
        if let Some(other) = blocker(family.members(), set, witness) {
            return Some(AssignmentDefect::Realized {
                set,
                witness,
                other,
            });
        }
    }
    None
}

/// The definition applied directly to a list of distinct sets: every member
/// has some size-`s` subset that no intersection realizes.
pub fn is_s_witness_family(members: &[ElementSet], s: usize) -> bool {
    members
        .iter()
        .all(|&f| witnesses_of(members, f, s).next().is_some())
}

/// True iff every two members share an element.
pub fn is_intersecting(family: &SetFamily) -> bool {
    let m = family.members();
    m.iter()
        .enumerate()
        .all(|(i, &a)| m[i..].iter().all(|&b| a.intersects(b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VcReport {
    pub vc_at_most_d: bool,
    /// A member all of whose subsets are realized as intersections.
    pub violating_member: Option<ElementSet>,
    pub exact_vc: Option<VcValue>,
}

/// Result of a capped exact VC computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum VcValue {
    Exact(usize),
    /// Every size up to the cap was shattered; the true value may be larger.
    AtLeast(usize),
}

/// Whether `s` is shattered by `members`.
pub fn is_shattered(members: &[ElementSet], s: ElementSet) -> bool {
    let k = s.len();
    if k >= 128 || members.len() < (1usize << k.min(63)) {
        return false;
    }
    let mut traces: Vec<u128> = members.iter().map(|&f| (f & s).bits()).collect();
    traces.sort_unstable();
    traces.dedup();
    traces.len() == 1usize << k
}

/// Checks `VC(family) ≤ d` for a `(d+1)`-uniform family.
pub fn vc_at_most_d(family: &SetFamily, d: usize) -> Result<VcReport> {
    family.require_uniform(d + 1)?;
    let members = family.members();
    let violating = members
        .iter()
        .copied()
        .find(|&f| is_shattered(members, f));
    Ok(VcReport {
        vc_at_most_d: violating.is_none(),
        violating_member: violating,
        exact_vc: None,
    })
}

/// Largest `|S| ≤ cap` with `S ⊆ [n]` shattered by the family.
///
/// Shattering is closed under subsets, so the levels are scanned upward and
/// the scan stops at the first size with no shattered set. The empty family
/// shatters nothing and reports `Exact(0)`.
pub fn exact_vc(family: &SetFamily, cap: usize) -> VcValue {
    let members = family.members();
    let ground = crate::family::ElementSet::range(1, family.n() as u32);
    let mut best = 0;
    for k in 1..=cap {
        if k > family.n() || !KSubsets::new(ground, k).any(|s| is_shattered(members, s)) {
            return VcValue::Exact(best);
        }
        best = k;
    }
    VcValue::AtLeast(cap)
}

/// Frankl–Pach upper bound `C(n, d)` for families with `VC ≤ d`.
pub fn frankl_pach_bound(n: usize, d: usize) -> Result<u64> {
    binomial(n as u64, d as u64)
}
