//! Generators for stars, the two-star family and complete uniform families.
//!
//! Every generator that emits a witness assignment re-checks it against the
//! family before returning.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{binomial, k_subsets, Element, ElementSet, GroundParams, KSubsets, SetFamily};
use crate::witness::{check_assignment, verify_s_witness, WitnessAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionKind {
    Star { center: Element },
    TwoStar { m: Element },
    FullUniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub params: GroundParams,
    #[serde(flatten)]
    pub kind: ConstructionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub family: SetFamily,
    /// `None` only for a complete family that is not an `s`-witness family.
    pub assignment: Option<WitnessAssignment>,
    /// Two-star instance where one of the single-star blocks is empty.
    pub degenerate: bool,
}

pub fn construct(spec: &ConstructionSpec) -> Result<Construction> {
    match spec.kind {
        ConstructionKind::Star { center } => {
            let (family, assignment) = star(&spec.params, center)?;
            Ok(Construction {
                family,
                assignment: Some(assignment),
                degenerate: false,
            })
        }
        ConstructionKind::TwoStar { m } => {
            let t = two_star(&spec.params, m)?;
            Ok(Construction {
                degenerate: t.is_degenerate(),
                family: t.family,
                assignment: Some(t.assignment),
            })
        }
        ConstructionKind::FullUniform => {
            let family = full_uniform(&spec.params);
            let assignment = verify_s_witness(&family, spec.params.s)?.into_assignment();
            Ok(Construction {
                family,
                assignment,
                degenerate: false,
            })
        }
    }
}

/// First `k` elements of `set` in ascending order, which is its
/// colex-first `k`-subset.
fn smallest(set: ElementSet, k: usize) -> ElementSet {
    set.iter().take(k).collect()
}

fn recheck(family: &SetFamily, assignment: &WitnessAssignment, s: usize, what: &str) -> Result<()> {
    match check_assignment(family, assignment, s) {
        None => Ok(()),
        Some(defect) => Err(Error::Invariant(format!(
            "{what} emitted an invalid witness assignment: {defect:?}"
        ))),
    }
}

/// All `(d+1)`-sets containing `center`, with witness = first `s` elements
/// of `F ∖ {center}`.
pub fn star(params: &GroundParams, center: Element) -> Result<(SetFamily, WitnessAssignment)> {
    let GroundParams { n, d, s } = *params;
    if center == 0 || center as usize > n {
        return Err(Error::InvalidParams(format!(
            "star center {center} outside [1, {n}]"
        )));
    }
    if n < d + 1 + s {
        return Err(Error::InvalidParams(format!(
            "star needs n >= d + 1 + s, got n = {n}, d = {d}, s = {s}"
        )));
    }
    let rest = params.ground().without(center);
    let members: Vec<ElementSet> = KSubsets::new(rest, d)
        .map(|a| a.with(center))
        .collect();
    let family = SetFamily::new(n, members)?;
    let assignment: WitnessAssignment = family
        .iter()
        .map(|&f| (f, smallest(f.without(center), s)))
        .collect();
    recheck(&family, &assignment, s, "star")?;
    Ok((family, assignment))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStar {
    pub family: SetFamily,
    pub assignment: WitnessAssignment,
    pub m: Element,
    /// `{1} ∪ A` with `|A ∩ [3, m]| ≥ s`.
    pub a1: usize,
    /// `{2} ∪ A` with `|A ∩ [3, m]| < s`.
    pub a2: usize,
    /// `{1, 2} ∪ A'` with `|A'| = d - 1`.
    pub a12: usize,
}

impl TwoStar {
    pub fn is_degenerate(&self) -> bool {
        self.a1 == 0 || self.a2 == 0
    }
}

/// The non-star family `𝓐₁ ∪ 𝓐₂ ∪ 𝓐₁₂` of size `C(n-1, d)` for `d/2 < s ≤ d-1`.
///
/// Members of `𝓐₂` get the first `min(s, |A ∩ [m+1, n]|)` elements of
/// `A ∩ [m+1, n]`, filled up from `A ∩ [3, m]`. This always puts at least
/// `d - s + 1` elements of `[m+1, n]` into the witness, which is what keeps
/// it away from every `𝓐₁` member.
pub fn two_star(params: &GroundParams, m: Element) -> Result<TwoStar> {
    let GroundParams { n, d, s } = *params;
    if 2 * s <= d {
        return Err(Error::InvalidParams(format!(
            "two_star needs d/2 < s, got d = {d}, s = {s}"
        )));
    }
    if s + 1 > d {
        return Err(Error::InvalidParams(format!(
            "two_star needs s <= d - 1, got d = {d}, s = {s}"
        )));
    }
    if n < s + 3 {
        return Err(Error::InvalidParams(format!(
            "two_star needs n >= s + 3, got n = {n}, s = {s}"
        )));
    }
    let m_us = m as usize;
    if m_us < s + 2 || m_us + 1 > n {
        return Err(Error::InvalidParams(format!(
            "two_star needs s + 2 <= m <= n - 1, got m = {m}, s = {s}, n = {n}"
        )));
    }

    let low = ElementSet::range(3, m);
    let high = ElementSet::range(m + 1, n as Element);
    let tail = ElementSet::range(3, n as Element);

    let mut members = Vec::new();
    let mut witnesses = Vec::new();
    let (mut a1, mut a2, mut a12) = (0, 0, 0);
    for a in KSubsets::new(tail, d) {
        let in_low = a & low;
        if in_low.len() >= s {
            members.push(a.with(1));
            witnesses.push(smallest(in_low, s));
            a1 += 1;
        } else {
            let in_high = a & high;
            let take = smallest(in_high, s);
            let fill = smallest(in_low, s - take.len());
            members.push(a.with(2));
            witnesses.push(take | fill);
            a2 += 1;
        }
    }
    for a in KSubsets::new(tail, d - 1) {
        members.push(a.with(1).with(2));
        witnesses.push(smallest(a, s));
        a12 += 1;
    }
    let assignment: WitnessAssignment = members.iter().copied().zip(witnesses).collect();
    let family = SetFamily::new(n, members)?;
    if family.len() != a1 + a2 + a12 {
        return Err(Error::Invariant("two_star blocks overlap".into()));
    }
    recheck(&family, &assignment, s, "two_star")?;
    Ok(TwoStar {
        family,
        assignment,
        m,
        a1,
        a2,
        a12,
    })
}

/// All `(d+1)`-subsets of `[n]`.
pub fn full_uniform(params: &GroundParams) -> SetFamily {
    let mut f = k_subsets(params.ground(), params.k());
    if f.n() != params.n {
        f = SetFamily::from_sorted(params.n, f.into_members());
    }
    f
}

/// Smallest element common to all members. The empty family returns
/// `Some(1)`: every element is vacuously common.
pub fn is_star(family: &SetFamily) -> Option<Element> {
    if family.is_empty() {
        return Some(1);
    }
    let common = family
        .iter()
        .fold(ElementSet::range(1, family.n() as Element), |acc, &f| acc & f);
    common.min_element()
}

/// First pair `(x, y)`, `x < y`, in colex order such that every member meets `{x, y}`.
pub fn covered_by_two_stars(family: &SetFamily) -> Option<(Element, Element)> {
    let n = family.n() as Element;
    (2..=n)
        .flat_map(|y| (1..y).map(move |x| (x, y)))
        .find(|&(x, y)| {
            let pair = ElementSet::singleton(x).with(y);
            family.iter().all(|f| f.intersects(pair))
        })
}

/// Size `C(n-1, d)` of a full star.
pub fn star_size(params: &GroundParams) -> Result<u64> {
    binomial(params.n as u64 - 1, params.d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{is_intersecting, verify_s_witness};

    fn p(n: usize, d: usize, s: usize) -> GroundParams {
        GroundParams::new(n, d, s).unwrap()
    }

    fn set(xs: &[Element]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn star_sizes() {
        let (f, _) = star(&p(6, 2, 1), 1).unwrap();
        assert_eq!(f.len(), 10);
        let (f, _) = star(&p(7, 3, 1), 7).unwrap();
        assert_eq!(f.len(), 20);
        assert!(f.iter().all(|m| m.contains(7)));
    }

    #[test]
    fn star_zero_witness_is_empty() {
        let (f, a) = star(&p(6, 2, 0), 3).unwrap();
        assert!(a.iter().all(|(_, b)| b.is_empty()));
        assert!(is_intersecting(&f));
        assert!(verify_s_witness(&f, 0).unwrap().is_valid());
    }

    #[test]
    fn star_rejects_bad_params() {
        assert!(star(&p(6, 2, 1), 0).is_err());
        assert!(star(&p(6, 2, 1), 7).is_err());
        assert!(star(&p(4, 2, 2), 1).is_err());
    }

    #[test]
    fn two_star_8_3_2_4() {
        let t = two_star(&p(8, 3, 2), 4).unwrap();
        assert_eq!(t.family.len(), 35);
        assert_eq!(t.a1 + t.a2, 20);
        assert_eq!(t.a12, 15);
        assert!(!t.is_degenerate());
        assert!(verify_s_witness(&t.family, 2).unwrap().is_valid());
        assert_eq!(is_star(&t.family), None);
        assert_eq!(covered_by_two_stars(&t.family), Some((1, 2)));
    }

    #[test]
    fn two_star_m_at_top() {
        let t = two_star(&p(8, 3, 2), 7).unwrap();
        assert_eq!(t.family.len(), 35);
        for (f, b) in t.assignment.iter() {
            if f.contains(2) && !f.contains(1) && f.contains(8) {
                assert!(b.contains(8), "{f} -> {b}");
            }
        }
    }

    #[test]
    fn two_star_minimal_n() {
        let t = two_star(&p(5, 3, 2), 4).unwrap();
        assert_eq!(t.family.len(), 4);
        assert!(t.family.contains(set(&[1, 3, 4, 5])));
        assert!(verify_s_witness(&t.family, 2).unwrap().is_valid());
    }

    #[test]
    fn two_star_generalized_a2_rule() {
        // d = 4, s = 3, m = 5: A = {6,7,8,9} has |A ∩ [m+1, n]| = 4 > s.
        let t = two_star(&p(9, 4, 3), 5).unwrap();
        let b = t.assignment.get(set(&[2, 6, 7, 8, 9])).unwrap();
        assert_eq!(b, set(&[6, 7, 8]));
    }

    #[test]
    fn two_star_param_errors() {
        assert!(two_star(&p(8, 4, 2), 5).is_err());
        assert!(two_star(&p(8, 3, 3), 6).is_err());
        assert!(two_star(&p(8, 3, 2), 3).is_err());
        assert!(two_star(&p(8, 3, 2), 8).is_err());
    }

    #[test]
    fn full_uniform_examples() {
        assert_eq!(full_uniform(&p(6, 2, 1)).len(), 20);
        let f4 = full_uniform(&p(4, 2, 1));
        assert_eq!(f4.len(), 4);
        assert!(verify_s_witness(&f4, 1).unwrap().is_valid());
        assert_eq!(full_uniform(&p(5, 4, 1)).len(), 1);
    }

    #[test]
    fn is_star_examples() {
        let (f, _) = star(&p(6, 2, 1), 3).unwrap();
        assert_eq!(is_star(&f), Some(3));
        assert_eq!(is_star(&SetFamily::empty(5)), Some(1));
    }

    #[test]
    fn two_star_cover_examples() {
        let f4 = full_uniform(&p(4, 2, 1));
        assert_eq!(covered_by_two_stars(&f4), Some((1, 2)));
        let disjoint =
            SetFamily::new(9, vec![set(&[1, 2, 3]), set(&[4, 5, 6]), set(&[7, 8, 9])]).unwrap();
        assert_eq!(covered_by_two_stars(&disjoint), None);
    }
}
