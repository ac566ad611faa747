//! The map `F ↦ F ∖ {x_B}` on `𝓕₁` and the d-sets it provably misses.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::model::{classify_bases, family_f_b, Classification};
use crate::error::{Error, Result};
use crate::family::{binomial, binomial_signed, Element, ElementSet, GroundParams, KSubsets, SetFamily};
use crate::witness::WitnessAssignment;

/// Image data for one base of `𝓑₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseImage {
    pub base: ElementSet,
    pub x_b: Element,
    /// `𝓕_B` computed from the collapsed model `{{x_B}}`.
    pub f_b: SetFamily,
    /// `𝓔_B = {F ∖ {x_B} : F ∈ 𝓕_B}`.
    pub e_b: SetFamily,
}

/// `|𝒰(B, B')|` for one ordered pair of `𝒫`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub base: ElementSet,
    pub other: ElementSet,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub per_base: Vec<BaseImage>,
    /// `𝓕₁ = ∪ 𝓕_B` over `𝓑₁`.
    pub f1: SetFamily,
    /// `𝓔 = ∪ 𝓔_B`.
    pub e: SetFamily,
    /// Ordered pairs of `𝒫` with their `𝒰(B, B')` sizes.
    pub pairs: Vec<PairCount>,
    pub u: SetFamily,
    /// `C(n, d)`.
    pub bound: u64,
    /// `C(n, d) - |𝓕₁| - |𝒰|`.
    pub slack: u64,
    /// `C(n-2s-2, d-2s)`, asserted per pair when `2s ≤ d`.
    pub pair_lower_bound: Option<u64>,
}

/// `𝒰(B, B')`: d-sets containing `B ∪ B'` and avoiding both excluded points.
pub fn u_pair(base: ElementSet, x: Element, other: ElementSet, y: Element, params: &GroundParams) -> Vec<ElementSet> {
    let fixed = base | other;
    let excluded = fixed.with(x).with(y);
    if fixed.len() > params.d || fixed.contains(x) || fixed.contains(y) {
        return Vec::new();
    }
    KSubsets::new(params.ground() - excluded, params.d - fixed.len())
        .map(|c| c | fixed)
        .collect()
}

/// Shared per-base images, built once and reused by the stability report.
pub(crate) struct Images {
    pub classification: Classification,
    pub b1: BTreeMap<ElementSet, Element>,
    pub per_base: Vec<BaseImage>,
}

impl Images {
    pub fn build(family: &SetFamily, assignment: &WitnessAssignment, params: &GroundParams) -> Result<Self> {
        let classification = classify_bases(family, assignment, params)?;
        let b1 = classification.b1();
        let per_base = b1
            .iter()
            .map(|(&base, &x)| {
                let collapsed = SetFamily::from_sorted(family.n(), vec![ElementSet::singleton(x)]);
                let f_b = family_f_b(base, &collapsed, family);
                let e_b = SetFamily::from_sorted(
                    family.n(),
                    sorted(f_b.iter().map(|f| f.without(x))),
                );
                BaseImage { base, x_b: x, f_b, e_b }
            })
            .collect();
        Ok(Images {
            classification,
            b1,
            per_base,
        })
    }

    /// Ordered pairs `(B, B')` of `𝓑₁` with `x_B ≠ x_{B'}`, `x_B ∉ B'`, `x_{B'} ∉ B`.
    pub fn pairs(&self) -> Vec<(ElementSet, Element, ElementSet, Element)> {
        let mut out = Vec::new();
        for (&b, &x) in &self.b1 {
            for (&c, &y) in &self.b1 {
                if x != y && !c.contains(x) && !b.contains(y) {
                    out.push((b, x, c, y));
                }
            }
        }
        out
    }
}

fn sorted(it: impl Iterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn violation(check: &'static str, counterexample: Vec<ElementSet>) -> Error {
    Error::LemmaViolation {
        check,
        counterexample,
    }
}

/// Builds `𝓔`, `𝒫` and `𝒰` and asserts the injection properties:
/// (1) a member containing `E ∈ 𝓔_B` is `E ∪ {x_B}`; (2) images of bases
/// with different `x_B` are disjoint; (3) `𝒰 ∩ 𝓔 = ∅`; plus `|𝓔| = |𝓕₁|`
/// and `|𝓕₁| + |𝒰| ≤ C(n, d)`.
pub fn build_injection(
    family: &SetFamily,
    assignment: &WitnessAssignment,
    params: &GroundParams,
) -> Result<InjectionReport> {
    let images = Images::build(family, assignment, params)?;
    report_from(&images, family, params)
}

pub(crate) fn report_from(images: &Images, family: &SetFamily, params: &GroundParams) -> Result<InjectionReport> {
    let GroundParams { n, d, s } = *params;

    for img in &images.per_base {
        for &e in &img.e_b {
            let full = e.with(img.x_b);
            if let Some(&f) = family.iter().find(|&&f| e.is_subset(f) && f != full) {
                return Err(violation("injection item 1", vec![img.base, e, f]));
            }
        }
    }

    let mut owner: BTreeMap<ElementSet, (Element, ElementSet)> = BTreeMap::new();
    for img in &images.per_base {
        for &e in &img.e_b {
            match owner.get(&e) {
                Some(&(x, b)) if x != img.x_b => {
                    return Err(violation("injection item 2", vec![b, img.base, e]));
                }
                Some(_) => {}
                None => {
                    owner.insert(e, (img.x_b, img.base));
                }
            }
        }
    }

    let f1 = SetFamily::from_sorted(
        n,
        sorted(images.per_base.iter().flat_map(|i| i.f_b.iter().copied())),
    );
    let e = SetFamily::from_sorted(n, owner.keys().copied().collect());

    let pair_lower_bound = if 2 * s <= d {
        Some(binomial_signed(
            n as i64 - 2 * s as i64 - 2,
            d as i64 - 2 * s as i64,
        )?)
    } else {
        None
    };

    let mut u: BTreeSet<ElementSet> = BTreeSet::new();
    let mut pairs = Vec::new();
    for (b, x, c, y) in images.pairs() {
        let sets = u_pair(b, x, c, y, params);
        if let Some(&hit) = sets.iter().find(|s| e.contains(**s)) {
            return Err(violation("injection item 3", vec![b, c, hit]));
        }
        if let Some(lb) = pair_lower_bound {
            if (sets.len() as u64) < lb {
                return Err(violation("pair count lower bound", vec![b, c]));
            }
        }
        pairs.push(PairCount {
            base: b,
            other: c,
            size: sets.len() as u64,
        });
        u.extend(sets);
    }
    let u = SetFamily::from_sorted(n, u.into_iter().collect());

    if e.len() != f1.len() {
        let doubled: Vec<ElementSet> = f1
            .iter()
            .copied()
            .filter(|f| {
                images
                    .per_base
                    .iter()
                    .filter(|i| i.f_b.contains(*f))
                    .map(|i| i.x_b)
                    .collect::<BTreeSet<_>>()
                    .len()
                    > 1
            })
            .collect();
        return Err(violation("injectivity |E| = |F1|", doubled));
    }

    let bound = binomial(n as u64, d as u64)?;
    let used = (f1.len() + u.len()) as u64;
    if used > bound {
        return Err(violation("|F1| + |U| <= C(n, d)", Vec::new()));
    }

    Ok(InjectionReport {
        per_base: images.per_base.clone(),
        f1,
        e,
        pairs,
        u,
        bound,
        slack: bound - used,
        pair_lower_bound,
    })
}
