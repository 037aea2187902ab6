//! Social power dynamics on trust networks.
//!
//! A group repeatedly discusses issues. Within an issue, opinions pool
//! linearly through a row-stochastic influence matrix until they agree;
//! between issues, every individual resets its self-weight to the influence
//! it actually had on the outcome. Over many issues the self-weights — the
//! *social power* of each individual — settle, and their ordering is the
//! ordering of the network's dominant left eigenvector.
//!
//! On a star-shaped network all power drains to the centre. This crate
//! simulates those dynamics and analyses, in closed form, how little trust a
//! strategically placed newcomer (or a pair of dissenting insiders) needs
//! before the centre stops being the most powerful individual.
//!
//! The crate splits into:
//!
//! - [`network`]: validated interaction matrices, connectivity and star
//!   checks, dominant left eigenvectors;
//! - [`dynamics`]: the per-issue consensus process and the between-issue
//!   self-weight map, iterated to equilibrium;
//! - [`topology`]: constructors for the star and its five perturbations;
//! - [`analysis`]: closed-form eigenvectors and the dominance-threshold
//!   catalogue;
//! - [`harness`]: parameter sweeps, crossover search, randomized
//!   cross-verification and reproducible experiment export.
//!
//! Node labels are 1-based everywhere in the API (node 1 is a star's
//! centre); slice positions are `label - 1`.
//!
//! ```
//! use socialpower::prelude::*;
//!
//! // a five-node star whose centre trusts subject 4 the most
//! let c = star(&[0.2, 0.2, 0.4, 0.2])?;
//! assert_eq!(c.star_center(), Some(1));
//!
//! // power drains to the centre as issues are discussed
//! let traj = iterate_to_equilibrium(&c, &SelfWeights::uniform(5), 1e-12, 1_000_000)?;
//! assert!(traj.final_state().as_slice()[0] > 0.99);
//! # Ok::<(), socialpower::Error>(())
//! ```

// index loops over small dense matrices read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod dynamics;
mod error;
pub mod harness;
pub mod network;
pub mod topology;

pub use error::Error;

/// The most commonly used items in one import.
pub mod prelude {
    pub use crate::analysis::{
        gamma_closed_form, optimal_placement, power_ordering, threshold_report, AttackKind,
        PowerOrdering, ThresholdReport, Verdict,
    };
    pub use crate::dynamics::{
        build_influence_matrix, degroot_consensus, df_map, iterate_to_equilibrium,
        iterate_to_equilibrium_with, self_appraisal_update, InfluenceMatrix, IssueTrajectory,
        IterateOptions, SelfWeights,
    };
    pub use crate::harness::{
        find_crossover, run_paper_experiments, run_sweep, verify_variation, EquilibriumMethod,
        Grid, SweepConfig, SweptParameter,
    };
    pub use crate::network::{
        validate, DominantLeftEigenvector, InteractionMatrix, ValidationReport,
    };
    pub use crate::topology::{
        coordinated_double, dissenting_subjects, leadership_group, single_attack, star,
        uncoordinated_double, VariationKind, VariationSpec,
    };
    pub use crate::Error;
}

pub mod guide;
