//! Closed-form dominance analysis of the topology variations.
//!
//! For each variation the stationarity conditions `gamma^T C = gamma^T`
//! collapse to a handful of scalar relations, so the dominant left
//! eigenvector — and with it the equilibrium power ordering — has a closed
//! form in the `beta` weights. [`gamma_closed_form`] evaluates it without
//! any iteration. The `threshold_*` functions turn the closed form into the
//! catalogue of dominance statements (keyed `Thm2.i` through `Thm6.iii.*`),
//! each a strict inequality between a parameter expression and its critical
//! value.
//!
//! Statement keys ending in `.feasible`, `.aux` or `.printed` are one-way
//! diagnostics, not equivalences; everything else holds if and only if the
//! corresponding eigenvector comparison holds, which is what
//! [`gamma_ordering_claims`] exposes for auditing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::network::DominantLeftEigenvector;
use crate::topology::{VariationKind, VariationSpec};

/// Margin inside which a verdict is reported as a tie.
pub const VERDICT_TIE_EPS: f64 = 1e-9;

/// Margin inside which top-ranked powers form a leader tie set.
pub const LEADER_TIE_EPS: f64 = 1e-9;

/// Direction of the strict inequality a statement asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

/// One threshold statement evaluated at concrete parameters. `holds` is the
/// strict comparison `lhs <relation> critical`; `tie` flags lhs within
/// [`VERDICT_TIE_EPS`] of the critical value (the theorems' equality
/// clauses).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub lhs: f64,
    pub critical: f64,
    pub relation: Relation,
    pub tie: bool,
}

fn verdict(lhs: f64, relation: Relation, critical: f64) -> Verdict {
    let holds = match relation {
        Relation::Less => lhs < critical,
        Relation::Greater => lhs > critical,
    };
    Verdict {
        holds,
        lhs,
        critical,
        relation,
        tie: (lhs - critical).abs() <= VERDICT_TIE_EPS,
    }
}

/// The full set of dominance verdicts for one variation at fixed parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub variation: VariationSpec,
    pub verdicts: BTreeMap<String, Verdict>,
    /// 1-based labels of the predicted leaders (a set when tied), from the
    /// closed-form eigenvector ordering.
    pub predicted_leader: Vec<usize>,
}

impl ThresholdReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Descending power ordering of a positive vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerOrdering {
    /// 1-based node labels sorted by descending value; equal values keep
    /// ascending label order.
    pub ranking: Vec<usize>,
    /// All labels within [`LEADER_TIE_EPS`] of the maximum.
    pub leader: Vec<usize>,
    /// The values the ordering was computed from.
    pub values: Vec<f64>,
}

/// Ranks nodes by descending value (equilibrium power or eigenvector
/// entries) and extracts the leading tie set.
pub fn power_ordering(values: &[f64]) -> PowerOrdering {
    let mut ranking: Vec<usize> = (1..=values.len()).collect();
    ranking.sort_by(|&a, &b| {
        values[b - 1]
            .partial_cmp(&values[a - 1])
            .expect("values are ordered")
            .then(a.cmp(&b))
    });
    let top = values[ranking[0] - 1];
    let leader = (1..=values.len())
        .filter(|&node| top - values[node - 1] <= LEADER_TIE_EPS)
        .collect();
    PowerOrdering {
        ranking,
        leader,
        values: values.to_vec(),
    }
}

/// Evaluates the dominant left eigenvector of the variation's matrix
/// symbolically, without iteration, normalised to sum one. Agrees with
/// [`crate::network::InteractionMatrix::dominant_left_eigenvector`] on the
/// built matrix to solver precision.
pub fn gamma_closed_form(spec: &VariationSpec) -> Result<DominantLeftEigenvector, Error> {
    spec.check()?;
    let row = &spec.center_row;
    let mut g = vec![1.0f64];
    match spec.kind {
        VariationKind::Star => {
            g.extend(row.iter().copied());
        }
        VariationKind::SingleAttack => {
            let beta = spec.beta1.expect("checked");
            let c_last = *row.last().expect("checked");
            g.extend(row[..row.len() - 1].iter().copied());
            let g_sub = c_last / (1.0 - beta);
            g.push(g_sub);
            g.push(beta * g_sub);
        }
        VariationKind::CoordinatedDouble => {
            let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
            let c_last = *row.last().expect("checked");
            g.extend(row[..row.len() - 1].iter().copied());
            let g_sub = c_last / (1.0 - b1 - b2);
            g.push(g_sub);
            g.push(b1 * g_sub);
            g.push(b2 * g_sub);
        }
        VariationKind::UncoordinatedDouble => {
            let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
            let len = row.len();
            let (c_a, c_b) = (row[len - 2], row[len - 1]);
            g.extend(row[..len - 2].iter().copied());
            let g_a = c_a / (1.0 - b1);
            let g_b = c_b / (1.0 - b2);
            g.push(g_a);
            g.push(g_b);
            g.push(b1 * g_a);
            g.push(b2 * g_b);
        }
        VariationKind::DissentingSubjects => {
            let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
            let len = row.len();
            let (c_a, c_b) = (row[len - 2], row[len - 1]);
            g.extend(row[..len - 2].iter().copied());
            let denom = 1.0 - b1 * b2;
            g.push((c_a + b2 * c_b) / denom);
            g.push((c_b + b1 * c_a) / denom);
        }
        VariationKind::LeadershipGroup => {
            let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
            g.extend(row.iter().copied());
            let g_center2 = b1 / b2;
            g.push(g_center2);
            for &w in spec.center_row_2.as_ref().expect("checked") {
                g.push(w * g_center2);
            }
        }
    }
    DominantLeftEigenvector::from_positive(g)
}

fn report(
    spec: &VariationSpec,
    verdicts: BTreeMap<String, Verdict>,
) -> Result<ThresholdReport, Error> {
    let gamma = gamma_closed_form(spec)?;
    Ok(ThresholdReport {
        variation: spec.clone(),
        verdicts,
        predicted_leader: power_ordering(gamma.as_slice()).leader,
    })
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Single attack (statements `Thm2.*`): the attacker `beta` is measured
/// against the centre's trust in the attacked subject.
pub fn threshold_single(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    if spec.kind != VariationKind::SingleAttack {
        return Err(Error::Spec(format!(
            "threshold_single expects a SingleAttack spec, got {}",
            spec.kind.name()
        )));
    }
    spec.check()?;
    let beta = spec.beta1.expect("checked");
    let row = &spec.center_row;
    let c_sub = *row.last().expect("checked");

    let mut v = BTreeMap::new();
    // inner subjects never pass the centre, the attacker never passes its subject
    v.insert(
        "Thm2.i".into(),
        verdict(
            max_of(row[..row.len() - 1].iter().copied().chain([beta])),
            Relation::Less,
            1.0,
        ),
    );
    // centre keeps strict dominance
    v.insert("Thm2.ii".into(), verdict(beta, Relation::Less, 1.0 - c_sub));
    // attacker itself passes the centre
    v.insert(
        "Thm2.iii".into(),
        verdict(beta, Relation::Greater, 1.0 / (1.0 + c_sub)),
    );
    report(spec, v)
}

/// Coordinated double attack (statements `Thm3.*`): only the combined trust
/// `beta1 + beta2` matters for dethroning the centre.
pub fn threshold_coordinated(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    if spec.kind != VariationKind::CoordinatedDouble {
        return Err(Error::Spec(format!(
            "threshold_coordinated expects a CoordinatedDouble spec, got {}",
            spec.kind.name()
        )));
    }
    spec.check()?;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let row = &spec.center_row;
    let c_sub = *row.last().expect("checked");

    let mut v = BTreeMap::new();
    v.insert(
        "Thm3.i".into(),
        verdict(
            max_of(row[..row.len() - 1].iter().copied().chain([b1, b2])),
            Relation::Less,
            1.0,
        ),
    );
    v.insert(
        "Thm3.ii".into(),
        verdict(b1 + b2, Relation::Less, 1.0 - c_sub),
    );
    // attacker n-1 passes the centre
    v.insert(
        "Thm3.iii.1".into(),
        verdict(b1, Relation::Greater, (1.0 - b2) / (1.0 + c_sub)),
    );
    // attacker n passes the centre
    v.insert(
        "Thm3.iii.2".into(),
        verdict(b2, Relation::Greater, (1.0 - b1) / (1.0 + c_sub)),
    );
    // ordering between the two attackers follows the betas
    v.insert("Thm3.iv".into(), verdict(b1, Relation::Greater, b2));
    report(spec, v)
}

/// Uncoordinated double attack (statements `Thm4.*`): each branch has its
/// own independent threshold.
pub fn threshold_uncoordinated(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    if spec.kind != VariationKind::UncoordinatedDouble {
        return Err(Error::Spec(format!(
            "threshold_uncoordinated expects an UncoordinatedDouble spec, got {}",
            spec.kind.name()
        )));
    }
    spec.check()?;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let row = &spec.center_row;
    let len = row.len();
    let (c_a, c_b) = (row[len - 2], row[len - 1]);

    let mut v = BTreeMap::new();
    v.insert(
        "Thm4.i".into(),
        verdict(
            max_of(row[..len - 2].iter().copied().chain([b1, b2])),
            Relation::Less,
            1.0,
        ),
    );
    // the two branch conditions for the centre, reported independently
    v.insert("Thm4.ii.1".into(), verdict(b1, Relation::Less, 1.0 - c_a));
    v.insert("Thm4.ii.2".into(), verdict(b2, Relation::Less, 1.0 - c_b));
    v.insert(
        "Thm4.iii.1".into(),
        verdict(b1, Relation::Greater, 1.0 / (1.0 + c_a)),
    );
    v.insert(
        "Thm4.iii.2".into(),
        verdict(b2, Relation::Greater, 1.0 / (1.0 + c_b)),
    );
    // which attacked subject ends up higher
    v.insert(
        "Thm4.iv".into(),
        verdict((1.0 - b2) / (1.0 - b1), Relation::Greater, c_b / c_a),
    );
    report(spec, v)
}

/// Two dissenting subjects (statements `Thm5.*`).
///
/// The `.feasible` keys are the necessity pre-checks (no valid counterpart
/// weight exists below them); the `.aux` keys are the alternative
/// satisfiability bounds; `.printed` evaluates the textbook form of
/// statement (iv), kept for audit only. The `Thm5.iv` verdict itself comes
/// from the closed-form eigenvector comparison, which the numeric oracle
/// confirms.
pub fn threshold_dissent(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    if spec.kind != VariationKind::DissentingSubjects {
        return Err(Error::Spec(format!(
            "threshold_dissent expects a DissentingSubjects spec, got {}",
            spec.kind.name()
        )));
    }
    spec.check()?;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let row = &spec.center_row;
    let len = row.len();
    let (c_a, c_b) = (row[len - 2], row[len - 1]); // centre's trust in n-1, n
    let inner: f64 = row[..len - 2].iter().sum();

    let mut v = BTreeMap::new();
    v.insert(
        "Thm5.i".into(),
        verdict(max_of(row[..len - 2].iter().copied()), Relation::Less, 1.0),
    );
    // subject n passes the centre
    v.insert(
        "Thm5.ii".into(),
        verdict(b1, Relation::Greater, (1.0 - c_b) / (c_a + b2)),
    );
    v.insert("Thm5.ii.feasible".into(), verdict(b2, Relation::Greater, inner));
    v.insert(
        "Thm5.ii.aux".into(),
        verdict(b1, Relation::Greater, (1.0 - c_b) / (1.0 + c_a)),
    );
    // subject n-1 passes the centre
    v.insert(
        "Thm5.iii".into(),
        verdict(b2, Relation::Greater, (1.0 - c_a) / (c_b + b1)),
    );
    v.insert("Thm5.iii.feasible".into(), verdict(b1, Relation::Greater, inner));
    v.insert(
        "Thm5.iii.aux".into(),
        verdict(b2, Relation::Greater, (1.0 - c_a) / (1.0 + c_b)),
    );
    // subject n-1 ahead of subject n, from the closed-form eigenvector
    v.insert(
        "Thm5.iv".into(),
        verdict(c_a + b2 * c_b, Relation::Greater, c_b + b1 * c_a),
    );
    v.insert(
        "Thm5.iv.printed".into(),
        verdict(b2, Relation::Greater, b1 * c_b + c_a * (c_b - 1.0)),
    );
    report(spec, v)
}

/// Leadership group (statements `Thm6.*`): the trust ratio between the two
/// centres decides everything, including cross-group comparisons per
/// subject.
pub fn threshold_leadership(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    if spec.kind != VariationKind::LeadershipGroup {
        return Err(Error::Spec(format!(
            "threshold_leadership expects a LeadershipGroup spec, got {}",
            spec.kind.name()
        )));
    }
    spec.check()?;
    let (b1, b2) = (spec.beta1.expect("checked"), spec.beta2.expect("checked"));
    let n = spec.n;
    let row = &spec.center_row;
    let row2 = spec.center_row_2.as_ref().expect("checked");

    let mut v = BTreeMap::new();
    v.insert(
        "Thm6.i".into(),
        verdict(
            max_of(row.iter().chain(row2.iter()).copied()),
            Relation::Less,
            1.0,
        ),
    );
    // centre 1 ahead of centre n+1
    v.insert("Thm6.ii".into(), verdict(b2, Relation::Greater, b1));
    // each foreign subject against centre 1
    for (idx, &w) in row2.iter().enumerate() {
        let label = n + 2 + idx;
        v.insert(
            format!("Thm6.iii.k{label}"),
            verdict(w * (b1 / b2), Relation::Greater, 1.0),
        );
    }
    // each own subject against centre n+1
    for (idx, &w) in row.iter().enumerate() {
        let label = 2 + idx;
        v.insert(
            format!("Thm6.iii.i{label}"),
            verdict(w * (b2 / b1), Relation::Greater, 1.0),
        );
    }
    report(spec, v)
}

/// Evaluates the threshold catalogue for any of the five variations.
pub fn threshold_report(spec: &VariationSpec) -> Result<ThresholdReport, Error> {
    match spec.kind {
        VariationKind::Star => Err(Error::Spec(
            "a pure star has no threshold statements; perturb it first".into(),
        )),
        VariationKind::SingleAttack => threshold_single(spec),
        VariationKind::CoordinatedDouble => threshold_coordinated(spec),
        VariationKind::UncoordinatedDouble => threshold_uncoordinated(spec),
        VariationKind::DissentingSubjects => threshold_dissent(spec),
        VariationKind::LeadershipGroup => threshold_leadership(spec),
    }
}

/// The eigenvector comparison a statement is equivalent to, evaluated at a
/// concrete `gamma`. `margin` is the smallest gap among the compared pairs;
/// comparisons inside the margin are the theorems' tie cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaClaim {
    pub holds: bool,
    pub margin: f64,
}

fn claim_greater(gamma: &DominantLeftEigenvector, a: usize, b: usize) -> GammaClaim {
    let (ga, gb) = (gamma.value(a), gamma.value(b));
    GammaClaim {
        holds: ga > gb,
        margin: (ga - gb).abs(),
    }
}

fn claim_all(parts: impl IntoIterator<Item = GammaClaim>) -> GammaClaim {
    let mut holds = true;
    let mut margin = f64::INFINITY;
    for part in parts {
        holds &= part.holds;
        margin = margin.min(part.margin);
    }
    GammaClaim { holds, margin }
}

/// For every verdict key that is an if-and-only-if statement, the
/// eigenvector ordering it must match. Keys flagged `.feasible`, `.aux` or
/// `.printed` have no entry here.
pub fn gamma_ordering_claims(
    spec: &VariationSpec,
    gamma: &DominantLeftEigenvector,
) -> Result<BTreeMap<String, GammaClaim>, Error> {
    spec.check()?;
    let n = spec.n;
    let mut claims = BTreeMap::new();
    let gt = |a, b| claim_greater(gamma, a, b);
    match spec.kind {
        VariationKind::Star => {
            return Err(Error::Spec(
                "a pure star has no threshold statements; perturb it first".into(),
            ))
        }
        VariationKind::SingleAttack => {
            claims.insert(
                "Thm2.i".into(),
                claim_all((2..=n - 2).map(|i| gt(1, i)).chain([gt(n - 1, n)])),
            );
            claims.insert("Thm2.ii".into(), claim_all((2..=n).map(|j| gt(1, j))));
            claims.insert("Thm2.iii".into(), gt(n, 1));
        }
        VariationKind::CoordinatedDouble => {
            claims.insert(
                "Thm3.i".into(),
                claim_all(
                    (2..=n - 3)
                        .map(|i| gt(1, i))
                        .chain([gt(n - 2, n - 1), gt(n - 2, n)]),
                ),
            );
            claims.insert("Thm3.ii".into(), claim_all((2..=n).map(|j| gt(1, j))));
            claims.insert("Thm3.iii.1".into(), gt(n - 1, 1));
            claims.insert("Thm3.iii.2".into(), gt(n, 1));
            claims.insert("Thm3.iv".into(), gt(n - 1, n));
        }
        VariationKind::UncoordinatedDouble => {
            claims.insert(
                "Thm4.i".into(),
                claim_all(
                    (2..=n - 4)
                        .map(|i| gt(1, i))
                        .chain([gt(n - 3, n - 1), gt(n - 2, n)]),
                ),
            );
            claims.insert("Thm4.ii.1".into(), gt(1, n - 3));
            claims.insert("Thm4.ii.2".into(), gt(1, n - 2));
            claims.insert("Thm4.iii.1".into(), gt(n - 1, 1));
            claims.insert("Thm4.iii.2".into(), gt(n, 1));
            claims.insert("Thm4.iv".into(), gt(n - 3, n - 2));
        }
        VariationKind::DissentingSubjects => {
            claims.insert("Thm5.i".into(), claim_all((2..=n - 2).map(|i| gt(1, i))));
            claims.insert("Thm5.ii".into(), gt(n, 1));
            claims.insert("Thm5.iii".into(), gt(n - 1, 1));
            claims.insert("Thm5.iv".into(), gt(n - 1, n));
        }
        VariationKind::LeadershipGroup => {
            let m = spec.m.expect("checked");
            claims.insert(
                "Thm6.i".into(),
                claim_all(
                    (2..=n)
                        .map(|i| gt(1, i))
                        .chain((n + 2..=n + m).map(|k| gt(n + 1, k))),
                ),
            );
            claims.insert("Thm6.ii".into(), gt(1, n + 1));
            for k in n + 2..=n + m {
                claims.insert(format!("Thm6.iii.k{k}"), gt(k, 1));
            }
            for i in 2..=n {
                claims.insert(format!("Thm6.iii.i{i}"), gt(i, n + 1));
            }
        }
    }
    Ok(claims)
}

/// Which attack the placement is being optimised for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackKind {
    SingleAttack,
    CoordinatedDouble,
}

/// The subject an attacker (or attacker pair) should ride on to dethrone the
/// centre with the least trust: the subject the centre itself trusts most.
/// `center_row` is the unperturbed star's weight row over subjects 2, 3, ...;
/// returns the 1-based subject label, lowest label on ties. The critical
/// trust the attack then needs is `1 - max(center_row)` in total.
pub fn optimal_placement(center_row: &[f64], _kind: AttackKind) -> usize {
    let mut best = 0usize;
    for (idx, &w) in center_row.iter().enumerate() {
        if w > center_row[best] {
            best = idx;
        }
    }
    best + 2
}
