//! Star-approximation diagnostics.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::injection::{u_pair, Images};
use crate::error::{Error, Result};
use crate::family::{binomial, Element, ElementSet, GroundParams, SetFamily};
use crate::witness::WitnessAssignment;

/// Most frequent element (smallest on ties) and `|𝓕 △ 𝓕*|` for the full star at it.
pub fn best_star(family: &SetFamily, params: &GroundParams) -> Result<(Element, u64)> {
    if family.is_empty() {
        return Err(Error::Usage("best_star needs a non-empty family".into()));
    }
    let (x, deg) = (1..=params.n as Element)
        .map(|x| (x, family.degree(x)))
        .fold((1, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let star = binomial(params.n as u64 - 1, params.d as u64)?;
    let diff = (family.len() - deg) as u64 + (star - deg as u64);
    Ok((x, diff))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    /// `argmax_x |𝓑₁(x)|`; absent when `𝓑₁` is empty.
    pub x0: Option<Element>,
    /// `|𝓑₁| - |𝓑₁(x₀)|`.
    pub m: u64,
    /// `|𝓕* ∖ 𝓕|`.
    pub l: u64,
    /// Bases containing `x₀`.
    pub s1: Vec<ElementSet>,
    /// Bases of `𝓑_{≥2}` avoiding `x₀`.
    pub s2: Vec<ElementSet>,
    pub b1_x0: Vec<ElementSet>,
    /// Bases of `𝓑₁` with `x_B ≠ x₀` and `x₀ ∉ B`.
    pub b1_prime: Vec<ElementSet>,
    pub f1_x0_size: u64,
    pub f1_prime_minus_star_size: u64,
    pub u_prime: SetFamily,
    pub u_prime_size: u64,
    /// `C(n-1, d)`.
    pub bound: u64,
    /// `C(n-1, d) - |𝓕₁(x₀)| - |𝓕₁' ∖ 𝓕*| - |𝒰'|`.
    pub inj2_slack: u64,
    /// `𝓑₁` was empty, so every `x₀`-derived field is empty.
    pub degenerate: bool,
}

pub fn stability_report(
    family: &SetFamily,
    assignment: &WitnessAssignment,
    params: &GroundParams,
) -> Result<StabilityReport> {
    let images = Images::build(family, assignment, params)?;
    let GroundParams { n, d, .. } = *params;
    let bound = binomial(n as u64 - 1, d as u64)?;

    let mut per_x: BTreeMap<Element, usize> = BTreeMap::new();
    for &x in images.b1.values() {
        *per_x.entry(x).or_default() += 1;
    }
    let Some((x0, top)) = per_x
        .iter()
        .fold(None, |best: Option<(Element, usize)>, (&x, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((x, c)),
        })
    else {
        return Ok(StabilityReport {
            x0: None,
            m: 0,
            l: 0,
            s1: Vec::new(),
            s2: Vec::new(),
            b1_x0: Vec::new(),
            b1_prime: Vec::new(),
            f1_x0_size: 0,
            f1_prime_minus_star_size: 0,
            u_prime: SetFamily::empty(n),
            u_prime_size: 0,
            bound,
            inj2_slack: bound,
            degenerate: true,
        });
    };
    let m = (images.b1.len() - top) as u64;
    let l = bound - family.degree(x0) as u64;

    let (mut s1, mut s2, mut b1_x0, mut b1_prime) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for model in &images.classification.models {
        let b = model.base;
        if b.contains(x0) {
            s1.push(b);
        } else if model.alpha >= 2 {
            s2.push(b);
        } else if model.x_b == Some(x0) {
            b1_x0.push(b);
        } else {
            b1_prime.push(b);
        }
    }
    check_partition(&images, x0, &s1, &s2, &b1_x0, &b1_prime)?;

    let in_block = |block: &[ElementSet]| {
        let set: BTreeSet<ElementSet> = block.iter().copied().collect();
        images
            .per_base
            .iter()
            .filter(move |img| set.contains(&img.base))
    };

    let mut f1_x0 = BTreeSet::new();
    let mut img_x0 = BTreeSet::new();
    for img in in_block(&b1_x0) {
        for &f in &img.f_b {
            f1_x0.insert(f);
            img_x0.insert(f.without(img.x_b));
        }
    }
    let mut f1_prime_out = BTreeSet::new();
    let mut img_prime = BTreeSet::new();
    for img in in_block(&b1_prime) {
        for &f in img.f_b.iter().filter(|f| !f.contains(x0)) {
            f1_prime_out.insert(f);
            img_prime.insert(f.without(img.x_b));
        }
    }

    let prime: BTreeSet<ElementSet> = b1_prime.iter().copied().collect();
    let mut u_prime = BTreeSet::new();
    for (b, x, c, y) in images.pairs() {
        if x == x0 && prime.contains(&c) {
            u_prime.extend(u_pair(b, x, c, y, params));
        }
    }

    let violation = |check: &'static str, counterexample: Vec<ElementSet>| Error::LemmaViolation {
        check,
        counterexample,
    };
    if let Some(&e) = u_prime.iter().find(|e| e.contains(x0)) {
        return Err(violation("U' avoids x0", vec![e]));
    }
    for (a, b, name) in [
        (&img_x0, &img_prime, "images of F1(x0) and F1' \\ F* are disjoint"),
        (&img_x0, &u_prime, "image of F1(x0) misses U'"),
        (&img_prime, &u_prime, "image of F1' \\ F* misses U'"),
    ] {
        if let Some(&e) = a.intersection(b).next() {
            return Err(violation(name, vec![e]));
        }
    }
    if let Some(&e) = img_x0.iter().chain(&img_prime).find(|e| e.contains(x0) || e.len() != d) {
        return Err(violation("images lie in C([n] \\ {x0}, d)", vec![e]));
    }

    let used = (f1_x0.len() + f1_prime_out.len() + u_prime.len()) as u64;
    if used > bound {
        return Err(violation(
            "|F1(x0)| + |F1' \\ F*| + |U'| <= C(n-1, d)",
            Vec::new(),
        ));
    }

    let u_prime_size = u_prime.len() as u64;
    Ok(StabilityReport {
        x0: Some(x0),
        m,
        l,
        s1,
        s2,
        b1_x0,
        b1_prime,
        f1_x0_size: f1_x0.len() as u64,
        f1_prime_minus_star_size: f1_prime_out.len() as u64,
        u_prime: SetFamily::from_sorted(n, u_prime.into_iter().collect()),
        u_prime_size,
        bound,
        inj2_slack: bound - used,
        degenerate: false,
    })
}

/// The four blocks must partition `𝓑` and agree with their definitions.
fn check_partition(
    images: &Images,
    x0: Element,
    s1: &[ElementSet],
    s2: &[ElementSet],
    b1_x0: &[ElementSet],
    b1_prime: &[ElementSet],
) -> Result<()> {
    let all: BTreeSet<ElementSet> = images.classification.bases().collect();
    let mut seen = BTreeSet::new();
    for &b in s1.iter().chain(s2).chain(b1_x0).chain(b1_prime) {
        if !seen.insert(b) {
            return Err(Error::LemmaViolation {
                check: "base blocks are disjoint",
                counterexample: vec![b],
            });
        }
    }
    if seen != all {
        return Err(Error::Invariant("base blocks do not cover B".into()));
    }
    let bad = b1_x0
        .iter()
        .find(|b| b.contains(x0) || images.b1.get(*b) != Some(&x0))
        .or_else(|| {
            b1_prime
                .iter()
                .find(|b| b.contains(x0) || images.b1.get(*b).is_none_or(|&x| x == x0))
        });
    match bad {
        Some(&b) => Err(Error::LemmaViolation {
            check: "B1 blocks match their definitions",
            counterexample: vec![b],
        }),
        None => Ok(()),
    }
}
