//! Subfamilies by decreasing size, each checked against the definition.

use super::{candidates, RawOutcome, SearchProblem, EXHAUSTIVE_MAX_CANDIDATES};
use crate::error::{Error, Result};
use crate::family::{ElementSet, KSubsets};

/// Every member has a size-`s` subset outside `avoid` that no member meets it in.
fn is_witness_family(members: &[ElementSet], s: usize, avoid: ElementSet) -> bool {
    members.iter().all(|&f| {
        KSubsets::new(f - avoid, s).any(|b| members.iter().all(|&g| f & g != b))
    })
}

pub(super) fn run(problem: &SearchProblem) -> Result<RawOutcome> {
    let cands = candidates(problem);
    let total = cands.len();
    if total as u64 > EXHAUSTIVE_MAX_CANDIDATES {
        return Err(Error::Usage(format!(
            "exhaustive mode needs at most {EXHAUSTIVE_MAX_CANDIDATES} candidates, got {total}"
        )));
    }
    let s = problem.params.s;
    let avoid = problem
        .constraints
        .map_or(ElementSet::EMPTY, |c| c.witness_avoid);
    let indices = ElementSet::range(1, total as u32);
    let mut nodes = 0u64;
    let mut members = Vec::with_capacity(total);
    for k in (0..=total).rev() {
        if let Some(c) = problem.constraints {
            if k as u64 != c.target_size {
                continue;
            }
        }
        for pick in KSubsets::new(indices, k) {
            if nodes == problem.node_limit {
                return Ok(RawOutcome {
                    members: Vec::new(),
                    nodes,
                    complete: false,
                    node_limited: true,
                    found: problem.constraints.map(|_| false),
                });
            }
            nodes += 1;
            members.clear();
            members.extend(pick.iter().map(|i| cands[i as usize - 1]));
            if !is_witness_family(&members, s, avoid) {
                continue;
            }
            if let Some(c) = problem.constraints {
                if !c.accepts(&members, problem.params.n) {
                    continue;
                }
            }
            // Sizes are visited in decreasing order, so the first hit is a maximum.
            return Ok(RawOutcome {
                members: members.clone(),
                nodes,
                complete: true,
                node_limited: false,
                found: problem.constraints.map(|_| true),
            });
        }
    }
    Ok(RawOutcome {
        members: Vec::new(),
        nodes,
        complete: true,
        node_limited: false,
        found: problem.constraints.map(|_| false),
    })
}
