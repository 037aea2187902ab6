//! The two-timescale self-weight dynamics.
//!
//! Within one issue the network runs plain consensus averaging over the
//! influence matrix `W(s) = X(s) + (I - X(s)) C`, where `X(s)` is the
//! diagonal of the current self-weights. Between issues every individual
//! sets its next self-weight to the influence it actually exerted, which is
//! the dominant left eigenvector of `W(s)`. That update is equivalent to the
//! nonlinear map
//!
//! ```text
//! F(x) = e_i                                   if x = e_i for some i
//! F(x) = alpha(x) * (gamma_i / (1 - x_i))_i    otherwise
//! ```
//!
//! with `gamma` the dominant left eigenvector of `C` and `alpha` the
//! normalising constant. [`iterate_to_equilibrium`] runs the cheap map route
//! (one eigenvector solve for `C`, then O(n) per issue);
//! [`self_appraisal_update`] runs the per-issue eigenvector route and is
//! kept as the independent cross-check of the same update.

use std::io::Write;

use crate::error::Error;
use crate::network::{
    damped_left_power_iteration, DominantLeftEigenvector, InteractionMatrix, DEFAULT_EIG_TOL,
    EIG_MAX_ITER,
};

/// Tolerance on `|sum(x) - 1|` for self-weight vectors.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Default stopping tolerance for issue iteration.
pub const DEFAULT_DF_TOL: f64 = 1e-12;

/// Default issue cap for [`iterate_to_equilibrium`].
pub const DEFAULT_MAX_ISSUES: usize = 1_000_000;

// Residual for per-issue eigenvector solves; tighter than DEFAULT_EIG_TOL so
// this route stays within 1e-10 of the map route it cross-checks.
const W_EIG_TOL: f64 = 1e-13;

/// A point on the n-simplex: entries in `[0, 1]` summing to one. Entry `i`
/// is individual `i+1`'s self-weight (its social power).
#[derive(Debug, Clone, PartialEq)]
pub struct SelfWeights {
    x: Vec<f64>,
}

impl SelfWeights {
    pub fn new(x: Vec<f64>) -> Result<Self, Error> {
        if x.len() < 2 {
            return Err(Error::Weights(format!(
                "need at least 2 entries, got {}",
                x.len()
            )));
        }
        if x.iter().any(|&v| !v.is_finite() || !(0.0..=1.0).contains(&v)) {
            return Err(Error::Weights("entries must lie in [0, 1]".into()));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Weights(format!(
                "entries must sum to 1, got {sum}"
            )));
        }
        Ok(Self { x })
    }

    /// The barycentre `(1/n, ..., 1/n)` of the simplex.
    pub fn uniform(n: usize) -> Self {
        Self {
            x: vec![1.0 / n as f64; n],
        }
    }

    /// The vertex `e_node` (1-based node label).
    pub fn vertex(n: usize, node: usize) -> Self {
        let mut x = vec![0.0; n];
        x[node - 1] = 1.0;
        Self { x }
    }

    /// Returns the 1-based node label when this is exactly a simplex vertex
    /// (some entry equals 1), `None` otherwise. The comparison is exact:
    /// near-vertex interior points follow the smooth branch of the map.
    pub fn is_vertex(&self) -> Option<usize> {
        self.x.iter().position(|&v| v == 1.0).map(|i| i + 1)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.x
    }
}

/// The per-issue influence matrix `W = X + (I - X) C`: row-stochastic, with
/// diagonal `x` and row `i` elsewhere equal to `(1 - x_i)` times row `i` of
/// `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceMatrix {
    n: usize,
    w: Vec<f64>, // row-major
}

impl InfluenceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.w[i * self.n..(i + 1) * self.n]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    /// Dominant left eigenvector of `W`, normalised to sum one. Requires the
    /// self-weights used to build `W` not to be a vertex (otherwise `W` is
    /// reducible and the iteration may stall).
    pub fn dominant_left_eigenvector(
        &self,
        tol: f64,
    ) -> Result<DominantLeftEigenvector, Error> {
        let zeta = damped_left_power_iteration(&self.w, self.n, tol, EIG_MAX_ITER)?;
        DominantLeftEigenvector::from_positive(zeta)
    }
}

/// Builds `W = X + (I - X) C` for the current self-weights.
pub fn build_influence_matrix(c: &InteractionMatrix, x: &SelfWeights) -> InfluenceMatrix {
    let n = c.n();
    assert_eq!(n, x.n(), "matrix and self-weights must have equal length");
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        let xi = x.as_slice()[i];
        let scale = 1.0 - xi;
        for j in 0..n {
            w[i * n + j] = if i == j { xi } else { scale * c.entry(i, j) };
        }
    }
    InfluenceMatrix { n, w }
}

/// Result of running consensus averaging on one issue.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusOutcome {
    /// The common value the opinions settle on.
    pub value: f64,
    /// Final spread `max_i y_i - min_i y_i` (at most the requested tolerance).
    pub spread: f64,
    /// Averaging rounds performed.
    pub rounds: usize,
    /// Opinion vectors per round, present only when recording was requested.
    pub trajectory: Option<Vec<Vec<f64>>>,
}

/// Iterates `y <- W y` until the opinion spread is at most `tol`, returning
/// the consensus value (the midpoint of the final opinion range). The value
/// equals `zeta^T y0` for the dominant left eigenvector `zeta` of `W`, to
/// within the spread tolerance, because `zeta^T y` is invariant along the
/// iteration.
///
/// Opinion trajectories are recorded only when `record_trajectory` is set.
pub fn degroot_consensus(
    w: &InfluenceMatrix,
    y0: &[f64],
    tol: f64,
    t_max: usize,
    record_trajectory: bool,
) -> Result<ConsensusOutcome, Error> {
    assert_eq!(w.n(), y0.len(), "matrix and opinions must have equal length");
    assert!(tol > 0.0, "tolerance must be positive");
    let n = w.n();
    let mut y = y0.to_vec();
    let mut trajectory = record_trajectory.then(|| vec![y.clone()]);
    let mut spread = f64::INFINITY;
    for t in 0..=t_max {
        let (min, max) = y
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        spread = max - min;
        if spread <= tol {
            return Ok(ConsensusOutcome {
                value: 0.5 * (min + max),
                spread,
                rounds: t,
                trajectory,
            });
        }
        let mut next = vec![0.0; n];
        for i in 0..n {
            let row = w.row(i);
            next[i] = row.iter().zip(&y).map(|(&wij, &yj)| wij * yj).sum();
        }
        y = next;
        if let Some(tr) = trajectory.as_mut() {
            tr.push(y.clone());
        }
    }
    Err(Error::Convergence {
        residual: spread,
        iterations: t_max,
    })
}

/// One self-appraisal step through the influence matrix: returns `x` itself
/// at a vertex, otherwise the dominant left eigenvector of
/// `build_influence_matrix(c, x)`. Equivalent to [`df_map`] with the
/// eigenvector of `C`; kept as the independent route for cross-checking.
pub fn self_appraisal_update(
    c: &InteractionMatrix,
    x: &SelfWeights,
) -> Result<SelfWeights, Error> {
    if x.is_vertex().is_some() {
        return Ok(x.clone());
    }
    let w = build_influence_matrix(c, x);
    let zeta = w.dominant_left_eigenvector(W_EIG_TOL)?;
    SelfWeights::new(zeta.into_vec())
}

/// The self-weight update map. Vertices are fixed points; elsewhere the next
/// weight of individual `i` is proportional to `gamma_i / (1 - x_i)`.
pub fn df_map(gamma: &DominantLeftEigenvector, x: &SelfWeights) -> SelfWeights {
    assert_eq!(
        gamma.n(),
        x.n(),
        "eigenvector and self-weights must have equal length"
    );
    if x.is_vertex().is_some() {
        return x.clone();
    }
    let weights: Vec<f64> = gamma
        .as_slice()
        .iter()
        .zip(x.as_slice())
        .map(|(&g, &xi)| g / (1.0 - xi))
        .collect();
    let alpha: f64 = 1.0 / weights.iter().sum::<f64>();
    SelfWeights {
        x: weights.into_iter().map(|w| alpha * w).collect(),
    }
}

/// Options for [`iterate_to_equilibrium_with`].
#[derive(Debug, Clone, Copy)]
pub struct IterateOptions {
    /// Stop once `||x(s+1) - x(s)||_inf` is at most this.
    pub tol: f64,
    /// Issue cap.
    pub max_issues: usize,
    /// Record every `record_stride`-th state (the initial and final states
    /// are always recorded). Use 1 to keep the whole orbit.
    pub record_stride: usize,
    /// Residual tolerance for the one-off eigenvector solve of `C`.
    pub gamma_tol: f64,
}

impl Default for IterateOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_DF_TOL,
            max_issues: DEFAULT_MAX_ISSUES,
            record_stride: 1,
            gamma_tol: DEFAULT_EIG_TOL,
        }
    }
}

/// The recorded orbit of the self-weight map over a sequence of issues.
#[derive(Debug, Clone, PartialEq)]
pub struct IssueTrajectory {
    /// Recorded states, oldest first; the last entry is the final state.
    pub states: Vec<SelfWeights>,
    /// Issue number of each recorded state (`0` is the initial condition).
    pub recorded_issues: Vec<usize>,
    /// Whether the stopping tolerance was met before the issue cap.
    pub converged: bool,
    /// `||F(x_final) - x_final||_inf` at the final state.
    pub final_residual: f64,
    /// Issues actually run.
    pub issues_run: usize,
}

impl IssueTrajectory {
    pub fn final_state(&self) -> &SelfWeights {
        self.states.last().expect("trajectory holds at least x(0)")
    }

    /// Writes the trajectory in CSV form: header `s,x_1,...,x_n`, one row
    /// per recorded issue.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.final_state().n();
        let header: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
        writeln!(out, "s,{}", header.join(","))?;
        for (s, state) in self.recorded_issues.iter().zip(&self.states) {
            let row: Vec<String> = state.as_slice().iter().map(|v| format!("{v}")).collect();
            writeln!(out, "{s},{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Runs the self-weight map from `x0` until successive issues differ by at
/// most `tol` in the infinity norm, recording every state. The initial
/// condition must not be a simplex vertex.
///
/// The final state `x` satisfies `||F(x) - x||_inf <= tol` whenever
/// `converged` is set: the stopping test is evaluated at the state that is
/// returned.
pub fn iterate_to_equilibrium(
    c: &InteractionMatrix,
    x0: &SelfWeights,
    tol: f64,
    max_issues: usize,
) -> Result<IssueTrajectory, Error> {
    iterate_to_equilibrium_with(
        c,
        x0,
        &IterateOptions {
            tol,
            max_issues,
            ..IterateOptions::default()
        },
    )
}

/// As [`iterate_to_equilibrium`], with control over recording and the
/// eigenvector tolerance.
pub fn iterate_to_equilibrium_with(
    c: &InteractionMatrix,
    x0: &SelfWeights,
    opts: &IterateOptions,
) -> Result<IssueTrajectory, Error> {
    assert_eq!(c.n(), x0.n(), "matrix and self-weights must have equal length");
    assert!(opts.tol > 0.0, "tolerance must be positive");
    assert!(opts.record_stride > 0, "record stride must be positive");
    if x0.is_vertex().is_some() {
        return Err(Error::VertexStart);
    }
    let gamma = c.dominant_left_eigenvector(opts.gamma_tol)?;

    let mut states = vec![x0.clone()];
    let mut recorded_issues = vec![0usize];
    let mut x = x0.clone();
    let mut converged = false;
    let mut residual = f64::INFINITY;
    let mut issues_run = 0usize;

    for s in 0..opts.max_issues {
        let next = df_map(&gamma, &x);
        residual = x
            .as_slice()
            .iter()
            .zip(next.as_slice())
            .map(|(a, b)| (b - a).abs())
            .fold(0.0, f64::max);
        if residual <= opts.tol {
            // x is within tol of its own image; report x itself so the
            // fixed-point residual of the final state is the one tested.
            converged = true;
            issues_run = s;
            break;
        }
        x = next;
        issues_run = s + 1;
        if issues_run.is_multiple_of(opts.record_stride) {
            states.push(x.clone());
            recorded_issues.push(issues_run);
        }
    }

    if recorded_issues.last() != Some(&issues_run) {
        states.push(x.clone());
        recorded_issues.push(issues_run);
    }
    Ok(IssueTrajectory {
        states,
        recorded_issues,
        converged,
        final_residual: residual,
        issues_run,
    })
}
