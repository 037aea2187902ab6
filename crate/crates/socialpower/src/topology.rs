//! Constructors for the star topology and its five perturbations.
//!
//! All of them start from a star with centre node 1 and add either new
//! individuals (attackers) riding on a subject, new edges between subjects
//! (dissent), or a second star merged at the centres (a leadership group).
//! The `beta` weights are the trust placed on the newly formed edges; every
//! theorem about who ends up socially dominant is a condition on them.
//!
//! Node labels follow the convention used throughout the crate: the centre
//! is node 1, original subjects come next, attackers take the top labels.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::network::InteractionMatrix;

/// Tolerance on weight sums when checking a spec.
const SPEC_SUM_TOL: f64 = 1e-12;

/// The topology families a [`VariationSpec`] can describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariationKind {
    /// Pure star: centre node 1, subjects 2..=n.
    Star,
    /// One attacker (node n) riding on subject n-1.
    SingleAttack,
    /// Two attackers (nodes n-1, n) riding on the same subject n-2.
    CoordinatedDouble,
    /// Two attackers (nodes n-1, n) riding on distinct subjects n-3 and n-2.
    UncoordinatedDouble,
    /// No attackers; subjects n-1 and n form edges with each other.
    DissentingSubjects,
    /// Two stars (sizes n and m) merged by edges between their centres.
    LeadershipGroup,
}

impl VariationKind {
    pub fn name(self) -> &'static str {
        match self {
            VariationKind::Star => "Star",
            VariationKind::SingleAttack => "SingleAttack",
            VariationKind::CoordinatedDouble => "CoordinatedDouble",
            VariationKind::UncoordinatedDouble => "UncoordinatedDouble",
            VariationKind::DissentingSubjects => "DissentingSubjects",
            VariationKind::LeadershipGroup => "LeadershipGroup",
        }
    }
}

/// A parameterised description of one topology.
///
/// `center_row` holds the centre's outgoing weights to the *original star
/// subjects* in increasing label order, excluding the structural zeros (the
/// diagonal and any attacker columns):
///
/// | kind                  | subjects  | `center_row` length | sums to    |
/// |-----------------------|-----------|---------------------|------------|
/// | `Star`                | 2..=n     | n - 1               | 1          |
/// | `SingleAttack`        | 2..=n-1   | n - 2               | 1          |
/// | `CoordinatedDouble`   | 2..=n-2   | n - 3               | 1          |
/// | `UncoordinatedDouble` | 2..=n-2   | n - 3               | 1          |
/// | `DissentingSubjects`  | 2..=n     | n - 1               | 1          |
/// | `LeadershipGroup`     | 2..=n     | n - 1               | 1 - beta1  |
///
/// For `LeadershipGroup`, `center_row_2` holds node n+1's weights to its own
/// subjects n+2..=n+m (length m - 1, summing to `1 - beta2`); both centre
/// rows must already account for the merge edges so that the assembled rows
/// are stochastic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationSpec {
    pub kind: VariationKind,
    pub n: usize,
    pub m: Option<usize>,
    pub center_row: Vec<f64>,
    pub center_row_2: Option<Vec<f64>>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
}

fn check_open_unit(name: &str, value: f64) -> Result<f64, Error> {
    if !value.is_finite() || value <= 0.0 || value >= 1.0 {
        return Err(Error::Spec(format!(
            "{name} must lie strictly inside (0, 1), got {value}"
        )));
    }
    Ok(value)
}

fn check_weights(name: &str, weights: &[f64], expected_len: usize, target_sum: f64) -> Result<(), Error> {
    if weights.len() != expected_len {
        return Err(Error::Spec(format!(
            "{name} must have {expected_len} entries, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
        return Err(Error::Spec(format!(
            "{name} entries must be finite and strictly positive"
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - target_sum).abs() > SPEC_SUM_TOL {
        return Err(Error::Spec(format!(
            "{name} must sum to {target_sum}, got {sum}"
        )));
    }
    Ok(())
}

impl VariationSpec {
    pub fn star(center_row: Vec<f64>) -> Self {
        Self {
            kind: VariationKind::Star,
            n: center_row.len() + 1,
            m: None,
            center_row,
            center_row_2: None,
            beta1: None,
            beta2: None,
        }
    }

    pub fn single_attack(n: usize, center_row: Vec<f64>, beta1: f64) -> Self {
        Self {
            kind: VariationKind::SingleAttack,
            n,
            m: None,
            center_row,
            center_row_2: None,
            beta1: Some(beta1),
            beta2: None,
        }
    }

    pub fn coordinated_double(n: usize, center_row: Vec<f64>, beta1: f64, beta2: f64) -> Self {
        Self {
            kind: VariationKind::CoordinatedDouble,
            n,
            m: None,
            center_row,
            center_row_2: None,
            beta1: Some(beta1),
            beta2: Some(beta2),
        }
    }

    pub fn uncoordinated_double(n: usize, center_row: Vec<f64>, beta1: f64, beta2: f64) -> Self {
        Self {
            kind: VariationKind::UncoordinatedDouble,
            n,
            m: None,
            center_row,
            center_row_2: None,
            beta1: Some(beta1),
            beta2: Some(beta2),
        }
    }

    pub fn dissenting_subjects(n: usize, center_row: Vec<f64>, beta1: f64, beta2: f64) -> Self {
        Self {
            kind: VariationKind::DissentingSubjects,
            n,
            m: None,
            center_row,
            center_row_2: None,
            beta1: Some(beta1),
            beta2: Some(beta2),
        }
    }

    /// Leadership-group spec from post-merge rows: `center_row` must sum to
    /// `1 - beta1` and `center_row_2` to `1 - beta2`.
    pub fn leadership_group(
        n: usize,
        m: usize,
        center_row: Vec<f64>,
        center_row_2: Vec<f64>,
        beta1: f64,
        beta2: f64,
    ) -> Self {
        Self {
            kind: VariationKind::LeadershipGroup,
            n,
            m: Some(m),
            center_row,
            center_row_2: Some(center_row_2),
            beta1: Some(beta1),
            beta2: Some(beta2),
        }
    }

    /// Leadership-group spec from the *pre-merge* star rows (each summing to
    /// one): rescales them uniformly by `1 - beta1` and `1 - beta2` to make
    /// room for the merge edges.
    pub fn leadership_group_rescaled(
        n: usize,
        m: usize,
        premerge_row: &[f64],
        premerge_row_2: &[f64],
        beta1: f64,
        beta2: f64,
    ) -> Self {
        let center_row = premerge_row.iter().map(|w| w * (1.0 - beta1)).collect();
        let center_row_2 = premerge_row_2.iter().map(|w| w * (1.0 - beta2)).collect();
        Self::leadership_group(n, m, center_row, center_row_2, beta1, beta2)
    }

    /// Total node count of the constructed matrix (`n`, or `n + m` for a
    /// leadership group).
    pub fn total_nodes(&self) -> usize {
        match self.kind {
            VariationKind::LeadershipGroup => self.n + self.m.unwrap_or(0),
            _ => self.n,
        }
    }

    fn beta(&self, which: &str, value: Option<f64>) -> Result<f64, Error> {
        let v = value.ok_or_else(|| {
            Error::Spec(format!("{} requires {which}", self.kind.name()))
        })?;
        check_open_unit(which, v)
    }

    fn forbid(&self, which: &str, value: Option<f64>) -> Result<(), Error> {
        if value.is_some() {
            return Err(Error::Spec(format!(
                "{} does not take {which}",
                self.kind.name()
            )));
        }
        Ok(())
    }

    /// Checks every structural constraint of this variation spec.
    pub fn check(&self) -> Result<(), Error> {
        match self.kind {
            VariationKind::Star => {
                if self.n < 3 {
                    return Err(Error::Spec("star needs n >= 3".into()));
                }
                self.forbid("beta1", self.beta1)?;
                self.forbid("beta2", self.beta2)?;
                check_weights("center_row", &self.center_row, self.n - 1, 1.0)?;
            }
            VariationKind::SingleAttack => {
                if self.n < 4 {
                    return Err(Error::Spec("single attack needs n >= 4".into()));
                }
                self.beta("beta1", self.beta1)?;
                self.forbid("beta2", self.beta2)?;
                check_weights("center_row", &self.center_row, self.n - 2, 1.0)?;
            }
            VariationKind::CoordinatedDouble => {
                if self.n < 5 {
                    return Err(Error::Spec("coordinated double attack needs n >= 5".into()));
                }
                let b1 = self.beta("beta1", self.beta1)?;
                let b2 = self.beta("beta2", self.beta2)?;
                if b1 + b2 >= 1.0 {
                    return Err(Error::Spec(format!(
                        "beta1 + beta2 must be < 1 (the attacked subject keeps positive trust in the centre), got {}",
                        b1 + b2
                    )));
                }
                check_weights("center_row", &self.center_row, self.n - 3, 1.0)?;
            }
            VariationKind::UncoordinatedDouble => {
                if self.n < 5 {
                    return Err(Error::Spec(
                        "uncoordinated double attack needs n >= 5".into(),
                    ));
                }
                self.beta("beta1", self.beta1)?;
                self.beta("beta2", self.beta2)?;
                check_weights("center_row", &self.center_row, self.n - 3, 1.0)?;
            }
            VariationKind::DissentingSubjects => {
                if self.n < 4 {
                    return Err(Error::Spec("dissenting subjects needs n >= 4".into()));
                }
                self.beta("beta1", self.beta1)?;
                self.beta("beta2", self.beta2)?;
                check_weights("center_row", &self.center_row, self.n - 1, 1.0)?;
            }
            VariationKind::LeadershipGroup => {
                let m = self
                    .m
                    .ok_or_else(|| Error::Spec("leadership group requires m".into()))?;
                if self.n < 3 || m < 3 {
                    return Err(Error::Spec("leadership group needs n >= 3 and m >= 3".into()));
                }
                let b1 = self.beta("beta1", self.beta1)?;
                let b2 = self.beta("beta2", self.beta2)?;
                check_weights("center_row", &self.center_row, self.n - 1, 1.0 - b1)?;
                let row2 = self
                    .center_row_2
                    .as_ref()
                    .ok_or_else(|| Error::Spec("leadership group requires center_row_2".into()))?;
                check_weights("center_row_2", row2, m - 1, 1.0 - b2)?;
            }
        }
        if self.kind != VariationKind::LeadershipGroup {
            if self.m.is_some() {
                return Err(Error::Spec(format!(
                    "{} does not take m",
                    self.kind.name()
                )));
            }
            if self.center_row_2.is_some() {
                return Err(Error::Spec(format!(
                    "{} does not take center_row_2",
                    self.kind.name()
                )));
            }
        }
        Ok(())
    }

    /// Builds the validated interaction matrix described by this spec.
    pub fn build(&self) -> Result<InteractionMatrix, Error> {
        match self.kind {
            VariationKind::Star => star(&self.center_row),
            VariationKind::SingleAttack => single_attack(self),
            VariationKind::CoordinatedDouble => coordinated_double(self),
            VariationKind::UncoordinatedDouble => uncoordinated_double(self),
            VariationKind::DissentingSubjects => dissenting_subjects(self),
            VariationKind::LeadershipGroup => leadership_group(self),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let spec: Self = serde_json::from_str(s)?;
        Ok(spec)
    }
}

fn require_kind(spec: &VariationSpec, kind: VariationKind) -> Result<(), Error> {
    if spec.kind != kind {
        return Err(Error::Spec(format!(
            "expected a {} spec, got {}",
            kind.name(),
            spec.kind.name()
        )));
    }
    spec.check()
}

/// Star matrix: row 1 carries `center_row` over the subjects, every other
/// row is `e_1`.
pub fn star(center_row: &[f64]) -> Result<InteractionMatrix, Error> {
    let spec = VariationSpec::star(center_row.to_vec());
    spec.check()?;
    let n = spec.n;
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &w) in center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    for row in rows.iter_mut().skip(1) {
        row[0] = 1.0;
    }
    InteractionMatrix::from_rows(rows)
}

/// Single attack: subject n-1 splits its trust `(1 - beta, beta)` between
/// the centre and the attacker n; the attacker trusts only its subject.
pub fn single_attack(spec: &VariationSpec) -> Result<InteractionMatrix, Error> {
    require_kind(spec, VariationKind::SingleAttack)?;
    let n = spec.n;
    let beta = spec.beta1.expect("checked");
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &w) in spec.center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    for row in rows.iter_mut().take(n - 2).skip(1) {
        row[0] = 1.0;
    }
    rows[n - 2][0] = 1.0 - beta;
    rows[n - 2][n - 1] = beta;
    rows[n - 1][n - 2] = 1.0;
    InteractionMatrix::from_rows(rows)
}

/// Coordinated double attack: subject n-2 splits its trust
/// `(1 - beta1 - beta2, beta1, beta2)` between the centre and the two
/// attackers n-1, n, which both trust only that subject.
pub fn coordinated_double(spec: &VariationSpec) -> Result<InteractionMatrix, Error> {
    require_kind(spec, VariationKind::CoordinatedDouble)?;
    let n = spec.n;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &w) in spec.center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    for row in rows.iter_mut().take(n - 3).skip(1) {
        row[0] = 1.0;
    }
    rows[n - 3][0] = 1.0 - b1 - b2;
    rows[n - 3][n - 2] = b1;
    rows[n - 3][n - 1] = b2;
    rows[n - 2][n - 3] = 1.0;
    rows[n - 1][n - 3] = 1.0;
    InteractionMatrix::from_rows(rows)
}

/// Uncoordinated double attack: attacker n-1 rides on subject n-3 with
/// weight `beta1`, attacker n on subject n-2 with weight `beta2`.
pub fn uncoordinated_double(spec: &VariationSpec) -> Result<InteractionMatrix, Error> {
    require_kind(spec, VariationKind::UncoordinatedDouble)?;
    let n = spec.n;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &w) in spec.center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    for row in rows.iter_mut().take(n - 4).skip(1) {
        row[0] = 1.0;
    }
    rows[n - 4][0] = 1.0 - b1;
    rows[n - 4][n - 2] = b1;
    rows[n - 3][0] = 1.0 - b2;
    rows[n - 3][n - 1] = b2;
    rows[n - 2][n - 4] = 1.0;
    rows[n - 1][n - 3] = 1.0;
    InteractionMatrix::from_rows(rows)
}

/// Two dissenting subjects: n-1 trusts n with `beta1`, n trusts n-1 with
/// `beta2`; both keep the remainder on the centre. No new nodes.
pub fn dissenting_subjects(spec: &VariationSpec) -> Result<InteractionMatrix, Error> {
    require_kind(spec, VariationKind::DissentingSubjects)?;
    let n = spec.n;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let mut rows = vec![vec![0.0; n]; n];
    for (j, &w) in spec.center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    for row in rows.iter_mut().take(n - 2).skip(1) {
        row[0] = 1.0;
    }
    rows[n - 2][0] = 1.0 - b1;
    rows[n - 2][n - 1] = b1;
    rows[n - 1][0] = 1.0 - b2;
    rows[n - 1][n - 2] = b2;
    InteractionMatrix::from_rows(rows)
}

/// Leadership group: two stars on nodes 1..=n and n+1..=n+m joined by the
/// centre-to-centre weights `beta1` (node 1 on node n+1) and `beta2` (node
/// n+1 on node 1). The caller supplies post-merge centre rows; see
/// [`VariationSpec::leadership_group_rescaled`] for the uniform-rescale
/// convenience.
pub fn leadership_group(spec: &VariationSpec) -> Result<InteractionMatrix, Error> {
    require_kind(spec, VariationKind::LeadershipGroup)?;
    let n = spec.n;
    let m = spec.m.expect("checked");
    let total = n + m;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let row2 = spec.center_row_2.as_ref().expect("checked");
    let mut rows = vec![vec![0.0; total]; total];
    for (j, &w) in spec.center_row.iter().enumerate() {
        rows[0][j + 1] = w;
    }
    rows[0][n] = b1;
    for row in rows.iter_mut().take(n).skip(1) {
        row[0] = 1.0;
    }
    rows[n][0] = b2;
    for (j, &w) in row2.iter().enumerate() {
        rows[n][n + 1 + j] = w;
    }
    for row in rows.iter_mut().take(total).skip(n + 1) {
        row[n] = 1.0;
    }
    InteractionMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SECTION_V_SINGLE: [f64; 6] = [0.15, 0.15, 0.2, 0.05, 0.15, 0.3];
    const SECTION_V_DISSENT: [f64; 7] = [0.1, 0.1, 0.2, 0.05, 0.05, 0.2, 0.3];

    #[test]
    fn star_is_detected_and_exact() {
        let weights = vec![0.3, 0.1, 0.1, 0.2, 0.1, 0.2];
        let c = star(&weights).unwrap();
        assert_eq!(c.star_center(), Some(1));
        assert_eq!(c.row(0), &[0.0, 0.3, 0.1, 0.1, 0.2, 0.1, 0.2]);
        for i in 1..7 {
            let mut expect = [0.0; 7];
            expect[0] = 1.0;
            assert_eq!(c.row(i), &expect[..]);
        }
    }

    #[test]
    fn star_rejects_bad_weights() {
        assert!(star(&[1.2, -0.2]).is_err());
        assert!(star(&[0.5, 0.4]).is_err());
        assert!(star(&[1.0]).is_err()); // n = 2
    }

    #[test]
    fn single_attack_matches_hand_built_matrix() {
        let spec = VariationSpec::single_attack(8, SECTION_V_SINGLE.to_vec(), 0.5);
        let c = single_attack(&spec).unwrap();
        assert_eq!(c.row(0), &[0.0, 0.15, 0.15, 0.2, 0.05, 0.15, 0.3, 0.0]);
        let mut row7 = [0.0; 8];
        row7[0] = 0.5;
        row7[7] = 0.5;
        assert_eq!(c.row(6), &row7[..]);
        let mut row8 = [0.0; 8];
        row8[6] = 1.0;
        assert_eq!(c.row(7), &row8[..]);
        assert_eq!(c.star_center(), None);
    }

    #[test]
    fn single_attack_rejects_boundary_beta() {
        for beta in [0.0, 1.0, -0.1, 1.1] {
            let spec = VariationSpec::single_attack(8, SECTION_V_SINGLE.to_vec(), beta);
            assert!(spec.build().is_err(), "beta = {beta} must be rejected");
        }
    }

    #[test]
    fn coordinated_double_matches_hand_built_matrix() {
        let row = vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.4];
        let spec = VariationSpec::coordinated_double(9, row, 0.3, 0.3);
        let c = coordinated_double(&spec).unwrap();
        let mut row7 = [0.0; 9];
        row7[0] = 1.0 - 0.3 - 0.3;
        row7[7] = 0.3;
        row7[8] = 0.3;
        assert_eq!(c.row(6), &row7[..]);
        for attacker in [7, 8] {
            let mut expect = [0.0; 9];
            expect[6] = 1.0;
            assert_eq!(c.row(attacker), &expect[..]);
        }
        assert_eq!(c.star_center(), None);
    }

    #[test]
    fn coordinated_double_rejects_beta_sum_at_least_one() {
        let row = vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.4];
        let spec = VariationSpec::coordinated_double(9, row, 0.6, 0.5);
        assert!(matches!(spec.build(), Err(Error::Spec(_))));
    }

    #[test]
    fn uncoordinated_double_matches_hand_built_matrix() {
        let row = vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.4];
        let spec = VariationSpec::uncoordinated_double(9, row, 0.4, 0.7);
        let c = uncoordinated_double(&spec).unwrap();
        let mut row6 = [0.0; 9];
        row6[0] = 1.0 - 0.4;
        row6[7] = 0.4;
        assert_eq!(c.row(5), &row6[..]);
        let mut row7 = [0.0; 9];
        row7[0] = 1.0 - 0.7;
        row7[8] = 0.7;
        assert_eq!(c.row(6), &row7[..]);
        let mut row8 = [0.0; 9];
        row8[5] = 1.0;
        assert_eq!(c.row(7), &row8[..]);
        let mut row9 = [0.0; 9];
        row9[6] = 1.0;
        assert_eq!(c.row(8), &row9[..]);
    }

    #[test]
    fn uncoordinated_double_swap_symmetry() {
        // equal betas and a centre row symmetric in the two attacked
        // subjects: swapping the two attack branches permutes the matrix
        // onto itself
        let row = vec![0.2, 0.2, 0.3, 0.3];
        let spec = VariationSpec::uncoordinated_double(7, row, 0.4, 0.4);
        let c = uncoordinated_double(&spec).unwrap();
        let n = 7;
        // swap nodes n-3 <-> n-2 and n-1 <-> n (0-based 3<->4, 5<->6)
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(3, 4);
        perm.swap(5, 6);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(c.entry(i, j), c.entry(perm[i], perm[j]));
            }
        }
    }

    #[test]
    fn dissenting_subjects_matches_hand_built_matrix() {
        let spec =
            VariationSpec::dissenting_subjects(8, SECTION_V_DISSENT.to_vec(), 0.5, 0.49);
        let c = dissenting_subjects(&spec).unwrap();
        assert_eq!(c.row(0), &[0.0, 0.1, 0.1, 0.2, 0.05, 0.05, 0.2, 0.3]);
        let mut row7 = [0.0; 8];
        row7[0] = 0.5;
        row7[7] = 0.5;
        assert_eq!(c.row(6), &row7[..]);
        let mut row8 = [0.0; 8];
        row8[0] = 1.0 - 0.49;
        row8[6] = 0.49;
        assert_eq!(c.row(7), &row8[..]);
        assert_eq!(c.star_center(), None);
    }

    #[test]
    fn leadership_group_merges_two_stars() {
        let spec = VariationSpec::leadership_group_rescaled(
            4,
            4,
            &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            0.2,
            0.2,
        );
        let c = leadership_group(&spec).unwrap();
        assert_eq!(c.n(), 8);
        assert!((c.entry(0, 4) - 0.2).abs() < 1e-15);
        assert!((c.entry(4, 0) - 0.2).abs() < 1e-15);
        for j in 1..4 {
            assert!((c.entry(0, j) - 0.8 / 3.0).abs() < 1e-15);
        }
        assert_eq!(c.star_center(), None);
        let report = c.validation_report();
        assert!(report.all_passed());
    }

    #[test]
    fn leadership_group_rejects_unadjusted_rows() {
        // rows that still sum to 1 leave no room for the merge edges
        let spec = VariationSpec::leadership_group(
            4,
            4,
            vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            0.2,
            0.2,
        );
        assert!(matches!(spec.build(), Err(Error::Spec(_))));
    }

    #[test]
    fn every_variation_validates_and_is_not_a_star() {
        let specs = vec![
            VariationSpec::single_attack(8, SECTION_V_SINGLE.to_vec(), 0.5),
            VariationSpec::coordinated_double(9, vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.4], 0.3, 0.2),
            VariationSpec::uncoordinated_double(9, vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.4], 0.4, 0.7),
            VariationSpec::dissenting_subjects(8, SECTION_V_DISSENT.to_vec(), 0.5, 0.49),
            VariationSpec::leadership_group_rescaled(
                4,
                3,
                &[0.5, 0.3, 0.2],
                &[0.6, 0.4],
                0.25,
                0.4,
            ),
        ];
        for spec in specs {
            let c = spec.build().unwrap();
            let report = c.validation_report();
            assert!(report.all_passed(), "{:?}: {report}", spec.kind);
            assert_eq!(report.star_center, None, "{:?}", spec.kind);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = VariationSpec::single_attack(8, SECTION_V_SINGLE.to_vec(), 0.5);
        let back = VariationSpec::from_json_str(&spec.to_json_string()).unwrap();
        assert_eq!(spec, back);
        // matrix JSON round-trip reproduces the construction exactly
        let c = spec.build().unwrap();
        let again = InteractionMatrix::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let spec = VariationSpec::single_attack(8, SECTION_V_SINGLE.to_vec(), 0.5);
        assert!(matches!(coordinated_double(&spec), Err(Error::Spec(_))));
    }
}
