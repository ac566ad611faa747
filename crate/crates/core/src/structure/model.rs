//! Sunflower contraction of a witness fiber into a small intersecting model.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::sunflower;
use crate::error::{Error, Result};
use crate::family::{binomial_signed, Element, ElementSet, GroundParams, SetFamily};
use crate::witness::WitnessAssignment;

/// One contraction: the petals were removed and the core inserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementStep {
    pub core: ElementSet,
    pub petals: Vec<ElementSet>,
    /// The core was already in the model, so insertion was a no-op.
    pub core_was_present: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelResult {
    pub base: ElementSet,
    /// Members `F` with `B_F = base`.
    pub fiber: Vec<ElementSet>,
    /// `𝓐_B`: intersecting, `(d+2)`-sunflower-free, sets of size `≤ d+1-s` avoiding `base`.
    pub model: SetFamily,
    /// `α_B`, the smallest model set size.
    pub alpha: usize,
    /// Defined iff `alpha == 1`; then `{x_B}` is in the model.
    pub x_b: Option<Element>,
    /// Model was collapsed to `{{x_B}}`.
    pub collapsed: bool,
    pub trace: Vec<ReplacementStep>,
}

/// `Σ_{k=1}^{d+1-s} k! (d+1)^k`, the sunflower-free size bound for a model.
pub fn model_size_bound(d: usize, s: usize) -> Result<u64> {
    let overflow = || Error::Overflow(format!("model size bound for d = {d}, s = {s}"));
    let base = d as u64 + 1;
    let mut total: u64 = 0;
    let mut fact: u64 = 1;
    let mut power: u64 = 1;
    for k in 1..=(d + 1).saturating_sub(s) as u64 {
        fact = fact.checked_mul(k).ok_or_else(overflow)?;
        power = power.checked_mul(base).ok_or_else(overflow)?;
        let term = fact.checked_mul(power).ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Runs the contraction for one witness base.
///
/// Starts from `{F ∖ B : B_F = B}` and replaces `(d+2)`-sunflowers by their
/// cores until none remain, then re-checks the model properties against the
/// whole family. With `collapse_singleton`, a model containing a singleton
/// `{x}` is replaced by `{{x}}`.
pub fn reduce_to_model(
    base: ElementSet,
    family: &SetFamily,
    assignment: &WitnessAssignment,
    params: &GroundParams,
    collapse_singleton: bool,
) -> Result<ModelResult> {
    let GroundParams { d, s, .. } = *params;
    let fiber: Vec<ElementSet> = assignment
        .fiber(base)
        .into_iter()
        .filter(|f| family.contains(*f))
        .collect();
    if fiber.is_empty() {
        return Err(Error::InvalidAssignment(format!(
            "{base} is not the witness of any member"
        )));
    }
    for &f in &fiber {
        if !base.is_subset(f) {
            return Err(Error::InvalidAssignment(format!("{base} is not a subset of {f}")));
        }
        if let Some(&g) = family.iter().find(|&&g| f & g == base) {
            return Err(Error::InvalidAssignment(format!(
                "{base} is realized as {f} ∩ {g}"
            )));
        }
    }

    let mut current: BTreeSet<ElementSet> = fiber.iter().map(|&f| f - base).collect();
    let initial = current.len();
    if let Some((a, b)) = disjoint_pair(&current) {
        return Err(Error::InvalidAssignment(format!(
            "fiber of {base} is not intersecting: {a} ∩ {b} = ∅"
        )));
    }

    let mut trace = Vec::new();
    loop {
        let members: Vec<ElementSet> = current.iter().copied().collect();
        let Some(sf) = sunflower::find_in(&members, d + 2) else {
            break;
        };
        if sf.core.is_empty() {
            return Err(Error::InvalidAssignment(format!(
                "empty-core sunflower in model of {base}"
            )));
        }
        let petals: Vec<ElementSet> = sf.petal_indices.iter().map(|&i| members[i]).collect();
        for p in &petals {
            current.remove(p);
        }
        let core_was_present = !current.insert(sf.core);
        trace.push(ReplacementStep {
            core: sf.core,
            petals,
            core_was_present,
        });
        if trace.len() > initial {
            return Err(Error::Invariant(format!(
                "contraction of {base} did not terminate within {initial} steps"
            )));
        }
    }

    let model = SetFamily::from_sorted(family.n(), current.into_iter().collect());
    check_model(base, &fiber, &model, family, d, s)?;

    let alpha = model.iter().map(|a| a.len()).min().unwrap_or(0);
    let x_b = if alpha == 1 {
        model.iter().find(|a| a.len() == 1).and_then(|a| a.min_element())
    } else {
        None
    };
    let (model, collapsed) = match x_b {
        Some(x) if collapse_singleton && model.len() > 1 => (
            SetFamily::from_sorted(family.n(), vec![ElementSet::singleton(x)]),
            true,
        ),
        _ => (model, false),
    };
    Ok(ModelResult {
        base,
        fiber,
        model,
        alpha,
        x_b,
        collapsed,
        trace,
    })
}

fn disjoint_pair(sets: &BTreeSet<ElementSet>) -> Option<(ElementSet, ElementSet)> {
    let v: Vec<ElementSet> = sets.iter().copied().collect();
    v.iter().enumerate().find_map(|(i, &a)| {
        v[i..]
            .iter()
            .find(|&&b| a.is_disjoint(b))
            .map(|&b| (a, b))
    })
}

/// Modeling properties (1)–(4) plus the shape constraints on model sets.
fn check_model(
    base: ElementSet,
    fiber: &[ElementSet],
    model: &SetFamily,
    family: &SetFamily,
    d: usize,
    s: usize,
) -> Result<()> {
    let fail = |what: &str, sets: Vec<ElementSet>| {
        Err(Error::Invariant(format!(
            "model of {base}: {what}: {}",
            sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )))
    };
    for &a in model {
        if a.is_empty() || a.len() + s > d + 1 || a.intersects(base) {
            return fail("set has wrong shape", vec![a]);
        }
    }
    let m = model.members();
    for (i, &a) in m.iter().enumerate() {
        if let Some(&b) = m[i..].iter().find(|&&b| a.is_disjoint(b)) {
            return fail("not intersecting", vec![a, b]);
        }
    }
    for &f in fiber {
        if !m.iter().any(|a| a.is_subset(f)) {
            return fail("fiber member covers no model set", vec![f]);
        }
    }
    for &f in family.iter().filter(|f| base.is_subset(**f)) {
        if let Some(&a) = m.iter().find(|a| a.is_disjoint(f)) {
            return fail("member containing the base misses a model set", vec![f, a]);
        }
    }
    if sunflower::find_in(m, d + 2).is_some() {
        return fail("model still has a sunflower", m.to_vec());
    }
    let bound = model_size_bound(d, s)?;
    if model.len() as u64 > bound {
        return Err(Error::Invariant(format!(
            "model of {base} has {} sets, bound is {bound}",
            model.len()
        )));
    }
    Ok(())
}

/// `𝓕_B`: members containing `A ∪ B` for some `A` in the model.
pub fn family_f_b(base: ElementSet, model: &SetFamily, family: &SetFamily) -> SetFamily {
    family.filter(|f| model.iter().any(|&a| (a | base).is_subset(f)))
}

/// `Σ_{A} C(n - s - |A|, d + 1 - s - |A|)`, the count bound on `𝓕_B`.
pub fn family_f_b_bound(model: &SetFamily, params: &GroundParams) -> Result<u64> {
    let GroundParams { n, d, s } = *params;
    model.iter().try_fold(0u64, |acc, a| {
        let t = binomial_signed(
            n as i64 - s as i64 - a.len() as i64,
            d as i64 + 1 - s as i64 - a.len() as i64,
        )?;
        acc.checked_add(t)
            .ok_or_else(|| Error::Overflow("F_B bound".into()))
    })
}

/// Models for every distinct witness base, split by `α_B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// One entry per base of `𝓑`, canonical base order; singleton models collapsed.
    pub models: Vec<ModelResult>,
}

impl Classification {
    /// `𝓑₁` with `x_B`.
    pub fn b1(&self) -> BTreeMap<ElementSet, Element> {
        self.models
            .iter()
            .filter_map(|m| m.x_b.map(|x| (m.base, x)))
            .collect()
    }

    /// `𝓑_{≥2}`.
    pub fn b_ge2(&self) -> impl Iterator<Item = &ModelResult> {
        self.models.iter().filter(|m| m.alpha >= 2)
    }

    pub fn bases(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.models.iter().map(|m| m.base)
    }

    pub fn get(&self, base: ElementSet) -> Option<&ModelResult> {
        self.models
            .binary_search_by_key(&base, |m| m.base)
            .ok()
            .map(|i| &self.models[i])
    }
}

pub fn classify_bases(
    family: &SetFamily,
    assignment: &WitnessAssignment,
    params: &GroundParams,
) -> Result<Classification> {
    let bases: Vec<ElementSet> = assignment
        .restrict_to(family)
        .bases();
    let models = bases
        .par_iter()
        .map(|&b| reduce_to_model(b, family, assignment, params, true))
        .collect::<Result<Vec<_>>>()?;
    Ok(Classification { models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{star, two_star};
    use crate::witness::verify_s_witness;

    fn set(xs: &[Element]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn p(n: usize, d: usize, s: usize) -> GroundParams {
        GroundParams::new(n, d, s).unwrap()
    }

    #[test]
    fn bound_values() {
        // d = 2, s = 1: 1!·3 + 2!·9 = 21.
        assert_eq!(model_size_bound(2, 1).unwrap(), 21);
        // d = 3, s = 2: 1!·4 + 2!·16 = 36.
        assert_eq!(model_size_bound(3, 2).unwrap(), 36);
        assert_eq!(model_size_bound(2, 2).unwrap(), 3);
    }

    #[test]
    fn contracts_four_petals() {
        let family = SetFamily::new(
            6,
            vec![set(&[1, 2, 3]), set(&[1, 2, 4]), set(&[1, 2, 5]), set(&[1, 2, 6])],
        )
        .unwrap();
        let assignment: WitnessAssignment = family.iter().map(|&f| (f, set(&[1]))).collect();
        let r = reduce_to_model(set(&[1]), &family, &assignment, &p(6, 2, 1), false).unwrap();
        assert_eq!(r.model.members(), &[set(&[2])]);
        assert_eq!(r.alpha, 1);
        assert_eq!(r.x_b, Some(2));
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.trace[0].core, set(&[2]));
        assert_eq!(r.trace[0].petals.len(), 4);
    }

    #[test]
    fn single_fiber_member_is_untouched() {
        let (family, assignment) = star(&p(6, 2, 1), 1).unwrap();
        let f0 = set(&[1, 5, 6]);
        let b = assignment.get(f0).unwrap();
        assert_eq!(assignment.fiber(b), vec![f0]);
        let r = reduce_to_model(b, &family, &assignment, &p(6, 2, 1), true).unwrap();
        assert_eq!(r.model.members(), &[f0 - b]);
        assert!(r.trace.is_empty());
        assert_eq!(r.alpha, 2);
    }

    #[test]
    fn star_models_satisfy_invariants() {
        let params = p(8, 2, 1);
        let (family, assignment) = star(&params, 1).unwrap();
        let bound = model_size_bound(2, 1).unwrap();
        for b in assignment.bases() {
            let r = reduce_to_model(b, &family, &assignment, &params, false).unwrap();
            assert!(r.model.len() as u64 <= bound);
            assert_eq!(r.alpha, r.model.iter().map(|a| a.len()).min().unwrap());
            assert_eq!(r.x_b.is_some(), r.alpha == 1);
            if let Some(x) = r.x_b {
                assert!(r.model.contains(ElementSet::singleton(x)));
            }
        }
    }

    #[test]
    fn rejects_unused_base() {
        let (family, assignment) = star(&p(6, 2, 1), 1).unwrap();
        assert!(matches!(
            reduce_to_model(set(&[1]), &family, &assignment, &p(6, 2, 1), true),
            Err(Error::InvalidAssignment(_))
        ));
    }

    #[test]
    fn rejects_realized_witness() {
        let family = SetFamily::new(5, vec![set(&[1, 2, 3]), set(&[1, 4, 5])]).unwrap();
        let assignment: WitnessAssignment =
            family.iter().map(|&f| (f, set(&[1]))).collect();
        assert!(matches!(
            reduce_to_model(set(&[1]), &family, &assignment, &p(5, 2, 1), true),
            Err(Error::InvalidAssignment(_))
        ));
    }

    #[test]
    fn f_b_of_star() {
        let (family, _) = star(&p(6, 2, 1), 1).unwrap();
        let model = SetFamily::new(6, vec![set(&[2])]).unwrap();
        let fb = family_f_b(set(&[1]), &model, &family);
        assert_eq!(fb.len(), 4);
        assert!(fb.iter().all(|f| f.contains(1) && f.contains(2)));
        assert!(family_f_b(set(&[1]), &SetFamily::empty(6), &family).is_empty());
        assert!(fb.len() as u64 <= family_f_b_bound(&model, &p(6, 2, 1)).unwrap());
    }

    #[test]
    fn classification_partitions_members() {
        let params = p(8, 3, 2);
        let t = two_star(&params, 4).unwrap();
        let c = classify_bases(&t.family, &t.assignment, &params).unwrap();
        let total: usize = c.models.iter().map(|m| m.fiber.len()).sum();
        assert_eq!(total, t.family.len());
        for m in &c.models {
            let fb = family_f_b(m.base, &m.model, &t.family);
            assert!(m.fiber.iter().all(|f| fb.contains(*f)));
        }
    }

    #[test]
    fn single_member_alpha() {
        let params = p(6, 2, 1);
        let family = SetFamily::new(6, vec![set(&[1, 2, 3])]).unwrap();
        let a = verify_s_witness(&family, 1).unwrap().into_assignment().unwrap();
        let c = classify_bases(&family, &a, &params).unwrap();
        assert_eq!(c.models.len(), 1);
        assert_eq!(c.models[0].alpha, 2);
    }
}
