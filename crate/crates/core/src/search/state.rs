//! Incremental witness bookkeeping for the searches.
//!
//! Each member keeps a bitmask over its size-`s` subsets (colex rank within
//! the member) that are still unrealized. Adding a member `G` clears, for
//! every present `F` with `|F ∩ G| = s`, the bit of `F ∩ G` in both masks.
//! Masks only shrink along a branch; undo replays a trail.

use crate::error::{Error, Result};
use crate::family::{ElementSet, KSubsets};

pub(crate) struct WitnessState {
    s: usize,
    /// Elements a witness may not use.
    avoid: ElementSet,
    /// `choose[a][b]` for `a, b ≤ d + 1`.
    choose: Vec<Vec<u32>>,
    members: Vec<ElementSet>,
    masks: Vec<u128>,
    trail: Vec<(usize, u128)>,
    marks: Vec<usize>,
}

impl WitnessState {
    pub fn new(k: usize, s: usize, avoid: ElementSet) -> Result<Self> {
        let mut choose = vec![vec![0u32; k + 2]; k + 2];
        for a in 0..=k + 1 {
            choose[a][0] = 1;
            for b in 1..=a {
                choose[a][b] = choose[a - 1][b - 1].saturating_add(choose[a - 1][b]);
            }
        }
        if s > k || choose[k][s] > 128 {
            return Err(Error::InvalidParams(format!(
                "search needs C(d+1, s) <= 128, got C({k}, {s})"
            )));
        }
        Ok(WitnessState {
            s,
            avoid,
            choose,
            members: Vec::new(),
            masks: Vec::new(),
            trail: Vec::new(),
            marks: Vec::new(),
        })
    }

    /// Colex rank of `sub` among the `|sub|`-subsets of `set`.
    fn rank(&self, set: ElementSet, sub: ElementSet) -> u32 {
        sub.iter()
            .enumerate()
            .map(|(j, x)| {
                let below = (set.bits() & ((1u128 << (x - 1)) - 1)).count_ones() as usize;
                self.choose[below][j + 1]
            })
            .sum()
    }

    /// Candidate witnesses of `g` before any intersection is realized.
    pub fn initial_mask(&self, g: ElementSet) -> u128 {
        KSubsets::new(g - self.avoid, self.s).fold(0u128, |m, b| m | 1u128 << self.rank(g, b))
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Adds `g` if every member (including `g`) keeps a witness. On failure
    /// the state is unchanged.
    pub fn push(&mut self, g: ElementSet) -> bool {
        let start = self.trail.len();
        let mut own = self.initial_mask(g);
        for pos in 0..self.members.len() {
            let f = self.members[pos];
            let meet = f & g;
            if meet.len() != self.s {
                continue;
            }
            own &= !(1u128 << self.rank(g, meet));
            let bit = 1u128 << self.rank(f, meet);
            let old = self.masks[pos];
            if old & bit == 0 {
                continue;
            }
            let new = old & !bit;
            debug_assert_eq!(new & !old, 0, "witness masks only shrink");
            self.trail.push((pos, old));
            self.masks[pos] = new;
            if new == 0 || own == 0 {
                self.rollback(start);
                return false;
            }
        }
        if own == 0 {
            self.rollback(start);
            return false;
        }
        self.marks.push(start);
        self.members.push(g);
        self.masks.push(own);
        true
    }

    pub fn pop(&mut self) {
        let start = self.marks.pop().expect("pop on empty witness state");
        self.members.pop();
        self.masks.pop();
        self.rollback(start);
    }

    fn rollback(&mut self, to: usize) {
        while self.trail.len() > to {
            let (pos, old) = self.trail.pop().unwrap();
            self.masks[pos] = old;
        }
    }
}
