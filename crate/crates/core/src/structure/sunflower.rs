use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{ElementSet, SetFamily};

/// `r` members whose pairwise intersections all equal `core`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sunflower {
    pub core: ElementSet,
    /// Indices into the searched member list, ascending.
    pub petal_indices: Vec<usize>,
}

/// Finds an `r`-sunflower in `family`, if one exists.
///
/// Cores are tried by ascending size, then in canonical order. Only pairwise
/// intersections of members can be cores. For each core the petals are
/// picked first-fit from the members containing it, with exact backtracking.
pub fn find_sunflower(family: &SetFamily, r: usize) -> Result<Option<Sunflower>> {
    if r < 2 {
        return Err(Error::Usage(format!("sunflower needs r >= 2, got {r}")));
    }
    Ok(find_in(family.members(), r))
}

pub(crate) fn find_in(members: &[ElementSet], r: usize) -> Option<Sunflower> {
    debug_assert!(r >= 2);
    if members.len() < r {
        return None;
    }
    let mut cores: Vec<ElementSet> = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            cores.push(a & b);
        }
    }
    cores.sort_unstable_by_key(|c| (c.len(), *c));
    cores.dedup();

    for core in cores {
        let link: Vec<(usize, ElementSet)> = members
            .iter()
            .enumerate()
            .filter(|(_, m)| core.is_subset(**m))
            .map(|(i, &m)| (i, m - core))
            .collect();
        if link.len() < r {
            continue;
        }
        let mut chosen = Vec::with_capacity(r);
        if pick_disjoint(&link, r, &mut chosen) {
            return Some(Sunflower {
                core,
                petal_indices: chosen,
            });
        }
    }
    None
}

/// Chooses `need` entries of `pool` with pairwise disjoint remainders.
fn pick_disjoint(pool: &[(usize, ElementSet)], need: usize, chosen: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    for (pos, &(idx, rest)) in pool.iter().enumerate() {
        if pool.len() - pos < need {
            return false;
        }
        let next: Vec<(usize, ElementSet)> = pool[pos + 1..]
            .iter()
            .copied()
            .filter(|&(_, other)| other.is_disjoint(rest))
            .collect();
        if next.len() + 1 < need {
            continue;
        }
        chosen.push(idx);
        if pick_disjoint(&next, need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// True iff the sets at `indices` form a sunflower with the given core.
pub fn is_sunflower(members: &[ElementSet], indices: &[usize], core: ElementSet) -> bool {
    indices.len() >= 2
        && indices.iter().enumerate().all(|(i, &a)| {
            indices[i + 1..]
                .iter()
                .all(|&b| members[a] & members[b] == core)
        })
}
