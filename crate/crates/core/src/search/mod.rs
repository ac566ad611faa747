//! Exact maximum `s`-witness families at small `n`.
//!
//! Two independent engines are provided. `Exhaustive` walks subfamilies by
//! decreasing size and checks each one against the definition; it is the
//! oracle. `BranchAndBound` runs an include/exclude DFS over the candidate
//! members in colex order, keeping per-member witness masks. Because the
//! property is hereditary, a partial family in which some member has lost
//! every witness is pruned with all its extensions.

mod bnb;
mod exhaustive;
mod state;
mod sweep;
mod three_star;

use serde::{Deserialize, Serialize};

pub use sweep::{sweep, SweepRow};
pub use three_star::three_star_search;

use crate::constructions::covered_by_two_stars;
use crate::error::{Error, Result};
use crate::family::{binomial, ElementSet, GroundParams, KSubsets, SetFamily};
use crate::witness::{check_assignment, WitnessAssignment};

/// Largest candidate pool the exhaustive oracle accepts.
pub const EXHAUSTIVE_MAX_CANDIDATES: u64 = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    #[serde(rename = "bnb")]
    BranchAndBound,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::BranchAndBound => "bnb",
        }
    }
}

/// Side conditions of the three-star question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeStarConstraints {
    /// Every member must meet this set.
    pub cover: ElementSet,
    /// Every witness must avoid this set.
    pub witness_avoid: ElementSet,
    /// Reject families that meet every member with some pair `{x, y}`.
    pub forbid_two_star_cover: bool,
    /// Size the family must reach, `C(n-1, d)` in the question.
    pub target_size: u64,
    /// Also require the layered shape: each `d`-subset of `[4, n]` appears
    /// with exactly one of 1, 2, 3; each `(d-1)`-subset with exactly two of
    /// the pairs; each `(d-2)`-subset with `{1, 2, 3}`.
    pub stratified: bool,
}

impl ThreeStarConstraints {
    /// The four conditions of the question for `params`.
    pub fn for_params(params: &GroundParams) -> Result<Self> {
        let triple = ElementSet::range(1, 3);
        Ok(ThreeStarConstraints {
            cover: triple,
            witness_avoid: triple,
            forbid_two_star_cover: true,
            target_size: binomial(params.n as u64 - 1, params.d as u64)?,
            stratified: false,
        })
    }

    /// Checks the non-hereditary conditions on a finished family.
    pub fn accepts(&self, members: &[ElementSet], n: usize) -> bool {
        if members.len() as u64 != self.target_size {
            return false;
        }
        if self.forbid_two_star_cover {
            let fam = SetFamily::from_sorted(n, sorted(members));
            if covered_by_two_stars(&fam).is_some() {
                return false;
            }
        }
        !self.stratified || is_stratified(members, n, self.target_size)
    }
}

/// The layered shape over `[4, n]` described on [`ThreeStarConstraints::stratified`].
pub fn is_stratified(members: &[ElementSet], n: usize, target: u64) -> bool {
    use std::collections::BTreeMap;
    let triple = ElementSet::range(1, 3);
    let mut labels: BTreeMap<ElementSet, Vec<ElementSet>> = BTreeMap::new();
    for &f in members {
        labels.entry(f - triple).or_default().push(f & triple);
    }
    let d = match members.first() {
        Some(f) => f.len() - 1,
        None => return target == 0,
    };
    let tail = ElementSet::range(4, n as u32);
    let layer_ok = |size: usize, want: usize, label_size: usize| {
        KSubsets::new(tail, size).all(|a| {
            labels
                .get(&a)
                .is_some_and(|l| l.len() == want && l.iter().all(|t| t.len() == label_size))
        })
    };
    let expected = [(d, 1, 1), (d.wrapping_sub(1), 2, 2), (d.wrapping_sub(2), 1, 3)];
    let layers_ok = expected
        .iter()
        .filter(|(size, _, _)| *size <= d)
        .all(|&(size, want, lsize)| layer_ok(size, want, lsize));
    let total: usize = labels.values().map(Vec::len).sum();
    layers_ok && total as u64 == target && members.iter().all(|f| f.intersects(triple))
}

fn sorted(members: &[ElementSet]) -> Vec<ElementSet> {
    let mut v = members.to_vec();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub params: GroundParams,
    pub mode: SearchMode,
    pub constraints: Option<ThreeStarConstraints>,
    pub node_limit: u64,
    /// Stop as soon as a family of at least this size is found.
    pub target: Option<u64>,
    /// Worker threads for branch-and-bound; 1 runs a single sequential DFS.
    pub threads: usize,
}

impl SearchProblem {
    pub fn new(params: GroundParams, mode: SearchMode) -> Self {
        SearchProblem {
            params,
            mode,
            constraints: None,
            node_limit: u64::MAX,
            target: None,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub best_size: u64,
    pub family: SetFamily,
    pub assignment: WitnessAssignment,
    /// Schedule-dependent when `threads > 1` and the node limit is hit.
    pub nodes_explored: u64,
    /// The search space was exhausted; `best_size` is the exact optimum.
    pub complete: bool,
    /// The node limit stopped the search.
    pub node_limited: bool,
    /// A family satisfying the constraints was found (constrained searches only).
    pub found: Option<bool>,
}

/// Maximum `s`-witness family (or a constrained family of the target size).
pub fn max_s_witness(problem: &SearchProblem) -> Result<SearchResult> {
    if problem.node_limit == 0 {
        return Err(Error::Usage("node_limit must be at least 1".into()));
    }
    let raw = match problem.mode {
        SearchMode::Exhaustive => exhaustive::run(problem)?,
        SearchMode::BranchAndBound => bnb::run(problem)?,
    };
    certify(problem, raw)
}

/// What an engine hands back before certification.
pub(crate) struct RawOutcome {
    pub members: Vec<ElementSet>,
    pub nodes: u64,
    pub complete: bool,
    pub node_limited: bool,
    pub found: Option<bool>,
}

/// Candidate members: `(d+1)`-sets meeting the cover set, if any.
pub(crate) fn candidates(problem: &SearchProblem) -> Vec<ElementSet> {
    let params = &problem.params;
    let cover = problem.constraints.map(|c| c.cover);
    KSubsets::new(params.ground(), params.k())
        .filter(|f| cover.is_none_or(|c| f.intersects(c)))
        .collect()
}

/// Attaches a canonical-first witness assignment and re-verifies it.
pub(crate) fn certify(problem: &SearchProblem, raw: RawOutcome) -> Result<SearchResult> {
    let GroundParams { n, s, .. } = problem.params;
    let avoid = problem
        .constraints
        .map_or(ElementSet::EMPTY, |c| c.witness_avoid);
    let family = SetFamily::new(n, raw.members)?;
    let mut assignment = WitnessAssignment::new();
    for &f in &family {
        let b = KSubsets::new(f - avoid, s)
            .find(|&b| family.iter().all(|&g| f & g != b))
            .ok_or_else(|| Error::Invariant(format!("search certificate: {f} has no witness")))?;
        assignment.insert(f, b);
    }
    if let Some(defect) = check_assignment(&family, &assignment, s) {
        return Err(Error::Invariant(format!("search certificate: {defect:?}")));
    }
    if let (Some(c), Some(true)) = (problem.constraints, raw.found) {
        if !c.accepts(family.members(), n) {
            return Err(Error::Invariant("search certificate violates constraints".into()));
        }
    }
    Ok(SearchResult {
        best_size: family.len() as u64,
        family,
        assignment,
        nodes_explored: raw.nodes,
        complete: raw.complete,
        node_limited: raw.node_limited,
        found: raw.found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::full_uniform;

    fn solve(n: usize, d: usize, s: usize, mode: SearchMode) -> SearchResult {
        let params = GroundParams::new(n, d, s).unwrap();
        max_s_witness(&SearchProblem::new(params, mode)).unwrap()
    }

    #[test]
    fn ekr_at_six() {
        let r = solve(6, 2, 0, SearchMode::BranchAndBound);
        assert_eq!(r.best_size, 10);
        assert!(r.complete);
        assert!(crate::witness::is_intersecting(&r.family));
    }

    #[test]
    fn small_n_beats_star_bound() {
        for mode in [SearchMode::Exhaustive, SearchMode::BranchAndBound] {
            let r = solve(4, 2, 1, mode);
            assert_eq!(r.best_size, 4);
            assert_eq!(r.family, full_uniform(&GroundParams::new(4, 2, 1).unwrap()));
        }
    }

    #[test]
    fn pairs_of_five() {
        assert_eq!(solve(5, 1, 1, SearchMode::Exhaustive).best_size, 4);
        assert_eq!(solve(5, 1, 1, SearchMode::BranchAndBound).best_size, 4);
    }

    #[test]
    fn node_limit_marks_incomplete() {
        let params = GroundParams::new(6, 2, 1).unwrap();
        let mut p = SearchProblem::new(params, SearchMode::BranchAndBound);
        p.node_limit = 10;
        let r = max_s_witness(&p).unwrap();
        assert!(!r.complete);
        assert!(crate::witness::verify_s_witness(&r.family, 1).unwrap().is_valid());
        p.node_limit = 0;
        assert!(max_s_witness(&p).is_err());
    }

    #[test]
    fn exhaustive_refuses_large_pools() {
        let params = GroundParams::new(7, 2, 1).unwrap();
        assert!(max_s_witness(&SearchProblem::new(params, SearchMode::Exhaustive)).is_err());
    }

    #[test]
    fn target_stops_early() {
        let params = GroundParams::new(6, 2, 0).unwrap();
        let mut p = SearchProblem::new(params, SearchMode::BranchAndBound);
        p.target = Some(5);
        let r = max_s_witness(&p).unwrap();
        assert!(r.best_size >= 5);
        assert!(!r.complete);
    }
}
