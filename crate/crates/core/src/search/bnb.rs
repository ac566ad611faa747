use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::state::WitnessState;
use super::{candidates, RawOutcome, SearchProblem, ThreeStarConstraints};
use crate::error::{Error, Result};
use crate::family::ElementSet;

/// Candidates decided before the work is split into independent subtrees.
const SPLIT_DEPTH: usize = 6;

struct Budget {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn tick(&self) -> bool {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

struct Dfs<'a> {
    cands: &'a [ElementSet],
    n: usize,
    constraints: Option<ThreeStarConstraints>,
    target: Option<u64>,
    budget: &'a Budget,
    state: WitnessState,
    best: Option<Vec<ElementSet>>,
    best_size: usize,
    stop: bool,
}

impl Dfs<'_> {
    /// Families are recorded at leaves only, so every family is reached at a
    /// unique point of the include-first traversal whatever way the tree is split.
    fn run(&mut self, i: usize) {
        if self.stop || !self.budget.tick() {
            self.stop = true;
            return;
        }
        let size = self.state.len();
        if i == self.cands.len() {
            self.leaf();
            return;
        }
        let bound = size + (self.cands.len() - i);
        if self.best.is_some() && bound <= self.best_size {
            return;
        }
        if let Some(c) = self.constraints {
            if (bound as u64) < c.target_size {
                return;
            }
            if size as u64 >= c.target_size {
                // Constrained searches look for families of exactly the target size.
                self.leaf();
                return;
            }
        }
        if self.state.push(self.cands[i]) {
            self.run(i + 1);
            self.state.pop();
            if self.stop {
                return;
            }
        }
        self.run(i + 1);
    }

    fn leaf(&mut self) {
        let size = self.state.len();
        if self.best.is_some() && size <= self.best_size {
            return;
        }
        if let Some(c) = self.constraints {
            if !c.accepts(self.state.members(), self.n) {
                return;
            }
        }
        self.best_size = size;
        self.best = Some(self.state.members().to_vec());
        let reached = match (self.constraints, self.target) {
            (Some(_), _) => true,
            (None, Some(t)) => size as u64 >= t,
            (None, None) => false,
        };
        if reached {
            self.stop = true;
        }
    }
}

/// A subtree root: members fixed by the prefix and the next undecided index.
struct Task {
    members: Vec<ElementSet>,
    next: usize,
}

fn split(state: &mut WitnessState, cands: &[ElementSet], start: usize, depth: usize, out: &mut Vec<Task>, budget: &Budget) {
    if !budget.tick() {
        return;
    }
    if depth == 0 || start == cands.len() {
        out.push(Task {
            members: state.members().to_vec(),
            next: start,
        });
        return;
    }
    if state.push(cands[start]) {
        split(state, cands, start + 1, depth - 1, out, budget);
        state.pop();
    }
    split(state, cands, start + 1, depth - 1, out, budget);
}

pub(super) fn run(problem: &SearchProblem) -> Result<RawOutcome> {
    let params = problem.params;
    let cands = candidates(problem);
    let avoid = problem
        .constraints
        .map_or(ElementSet::EMPTY, |c| c.witness_avoid);
    let fresh = || WitnessState::new(params.k(), params.s, avoid);
    let budget = Budget {
        limit: problem.node_limit,
        used: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };

    // Relabeling the ground set preserves the property and the size, so an
    // unconstrained optimum can be assumed to contain {1, ..., d+1}.
    let mut root = fresh()?;
    let mut start = 0;
    if problem.constraints.is_none() && !cands.is_empty() {
        if !root.push(cands[0]) {
            return Err(Error::Invariant("single member is not a witness family".into()));
        }
        start = 1;
    }

    let make_dfs = |state: WitnessState| Dfs {
        cands: &cands,
        n: params.n,
        constraints: problem.constraints,
        target: problem.target,
        budget: &budget,
        state,
        best: None,
        best_size: 0,
        stop: false,
    };

    let best = if problem.threads <= 1 {
        let mut dfs = make_dfs(root);
        dfs.run(start);
        dfs.best
    } else {
        let mut tasks = Vec::new();
        split(&mut root, &cands, start, SPLIT_DEPTH, &mut tasks, &budget);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(problem.threads)
            .build()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
        let results: Vec<Option<Vec<ElementSet>>> = pool.install(|| {
            tasks
                .par_iter()
                .map(|task| -> Result<Option<Vec<ElementSet>>> {
                    let mut state = fresh()?;
                    for &m in &task.members {
                        let ok = state.push(m);
                        debug_assert!(ok);
                    }
                    let mut dfs = make_dfs(state);
                    dfs.run(task.next);
                    Ok(dfs.best)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        // Earliest task wins ties, matching the sequential traversal order.
        let results: Vec<Vec<ElementSet>> = results.into_iter().flatten().collect();
        let first_reaching = results.iter().position(|r| reaches(problem, r));
        match first_reaching {
            Some(i) => Some(results[i].clone()),
            None => results
                .into_iter()
                .fold(None, |best: Option<Vec<ElementSet>>, r| match best {
                    Some(b) if b.len() >= r.len() => Some(b),
                    _ => Some(r),
                }),
        }
    };

    let limited = budget.exhausted.load(Ordering::Relaxed);
    let stopped_early = best.as_ref().is_some_and(|b| reaches(problem, b));
    let found = problem.constraints.map(|_| best.is_some());
    Ok(RawOutcome {
        members: best.unwrap_or_else(|| match problem.constraints {
            Some(_) => Vec::new(),
            None => cands.first().copied().into_iter().collect(),
        }),
        nodes: budget.used.load(Ordering::Relaxed).min(problem.node_limit),
        complete: !limited && !stopped_early,
        node_limited: limited && !stopped_early,
        found,
    })
}

/// The family ends the search: constrained searches stop at the first
/// accepted family, targeted ones at the first family of the target size.
fn reaches(problem: &SearchProblem, members: &[ElementSet]) -> bool {
    match (problem.constraints, problem.target) {
        (Some(_), _) => true,
        (None, Some(t)) => members.len() as u64 >= t,
        (None, None) => false,
    }
}
