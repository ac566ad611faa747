//! Layered search for the three-star question.
//!
//! Members are built over `[4, n]` in three layers: every `(d-2)`-subset `A`
//! gives `A ∪ {1, 2, 3}`; every `(d-1)`-subset gets two of the pairs of
//! `{1, 2, 3}`; every `d`-subset gets one of 1, 2, 3. The DFS branches on the
//! labels of the upper two layers and prunes with the incremental witness
//! state, witnesses being forbidden to use 1, 2, 3.

use super::state::WitnessState;
use super::{certify, RawOutcome, SearchMode, SearchProblem, SearchResult, ThreeStarConstraints};
use crate::error::{Error, Result};
use crate::family::{ElementSet, GroundParams, KSubsets};

/// One branching decision: the alternative member groups for a subset of `[4, n]`.
struct Decision {
    options: Vec<Vec<ElementSet>>,
}

struct Walk<'a> {
    decisions: &'a [Decision],
    constraints: ThreeStarConstraints,
    n: usize,
    limit: u64,
    nodes: u64,
    limited: bool,
    state: WitnessState,
    found: Option<Vec<ElementSet>>,
}

impl Walk<'_> {
    fn run(&mut self, i: usize) {
        if self.found.is_some() || self.limited {
            return;
        }
        if self.nodes == self.limit {
            self.limited = true;
            return;
        }
        self.nodes += 1;
        if i == self.decisions.len() {
            if self.constraints.accepts(self.state.members(), self.n) {
                self.found = Some(self.state.members().to_vec());
            }
            return;
        }
        // Relabeling 1, 2, 3 preserves every condition, so the first label is fixed.
        let options = if i == 0 { 1 } else { self.decisions[i].options.len() };
        for o in 0..options {
            let group = &self.decisions[i].options[o];
            let mut pushed = 0;
            for &g in group {
                if !self.state.push(g) {
                    break;
                }
                pushed += 1;
            }
            if pushed == group.len() {
                self.run(i + 1);
            }
            for _ in 0..pushed {
                self.state.pop();
            }
            if self.found.is_some() || self.limited {
                return;
            }
        }
    }
}

fn check_range(params: &GroundParams) -> Result<()> {
    let GroundParams { n, d, s } = *params;
    if 2 * s <= d || s + 2 > d {
        return Err(Error::InvalidParams(format!(
            "three-star search needs d/2 < s <= d - 2, got d = {d}, s = {s}"
        )));
    }
    if n < d + 3 {
        return Err(Error::InvalidParams(format!(
            "three-star search needs n >= d + 3, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// Searches the layered families for one meeting all four conditions of the
/// question. `found = Some(false)` with `complete` means no layered family exists.
pub fn three_star_search(params: &GroundParams, node_limit: u64) -> Result<SearchResult> {
    if node_limit == 0 {
        return Err(Error::Usage("node_limit must be at least 1".into()));
    }
    check_range(params)?;
    let GroundParams { n, d, s } = *params;
    let mut constraints = ThreeStarConstraints::for_params(params)?;
    constraints.stratified = true;
    let problem = SearchProblem {
        params: *params,
        mode: SearchMode::BranchAndBound,
        constraints: Some(constraints),
        node_limit,
        target: Some(constraints.target_size),
        threads: 1,
    };

    let triple = ElementSet::range(1, 3);
    let tail = ElementSet::range(4, n as u32);
    let mut decisions = Vec::new();
    for a in KSubsets::new(tail, d) {
        decisions.push(Decision {
            options: triple.iter().map(|x| vec![a.with(x)]).collect(),
        });
    }
    for a in KSubsets::new(tail, d - 1) {
        // Option `x` leaves out the pair avoiding `x`.
        decisions.push(Decision {
            options: triple
                .iter()
                .map(|x| {
                    let mut group: Vec<ElementSet> = KSubsets::new(triple, 2)
                        .filter(|p| p.contains(x))
                        .map(|p| a | p)
                        .collect();
                    group.sort_unstable();
                    group
                })
                .collect(),
        });
    }

    let mut state = WitnessState::new(d + 1, s, triple)?;
    let base_ok = KSubsets::new(tail, d - 2).all(|a| state.push(a | triple));
    if !base_ok {
        return certify(
            &problem,
            RawOutcome {
                members: Vec::new(),
                nodes: 1,
                complete: true,
                node_limited: false,
                found: Some(false),
            },
        );
    }
    let mut walk = Walk {
        decisions: &decisions,
        constraints,
        n,
        limit: node_limit,
        nodes: 0,
        limited: false,
        state,
        found: None,
    };
    walk.run(0);
    let found = walk.found.is_some();
    certify(
        &problem,
        RawOutcome {
            members: walk.found.unwrap_or_default(),
            nodes: walk.nodes,
            complete: !walk.limited,
            node_limited: walk.limited,
            found: Some(found),
        },
    )
}
