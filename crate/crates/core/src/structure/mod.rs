//! Structural analysis of an `s`-witness family with a fixed witness assignment:
//! sunflower contraction into per-base models, the injection into `d`-sets and
//! the star-approximation report.

mod injection;
mod model;
mod stability;
mod sunflower;

pub use injection::{build_injection, u_pair, BaseImage, InjectionReport, PairCount};
pub use model::{
    classify_bases, family_f_b, family_f_b_bound, model_size_bound, reduce_to_model, Classification,
    ModelResult, ReplacementStep,
};
pub use stability::{best_star, stability_report, StabilityReport};
pub use sunflower::{find_sunflower, is_sunflower, Sunflower};
