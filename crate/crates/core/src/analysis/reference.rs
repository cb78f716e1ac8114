//! Published density matrices as templates in `(μ, ν)`, diffed against the
//! operators this crate computes. The templates are transcribed as printed,
//! typos included, and are only ever used as comparison targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::format_g9;
use crate::error::{Error, Result};
use crate::horizon::{build_reduced_with, default_dressed, Family, ModeAmplitudes};
use crate::numkernel::DenseMatrix;
use crate::qstate::QubitLabel;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceMatrix {
    /// GHZ, all three parties, weight-ordered basis.
    GhzAbc,
    GhzBc,
    GhzAc,
    GhzAb,
    /// W, all three parties, weight-ordered basis.
    WAbc,
    WAc,
    WAb,
    /// W₁, all three parties, weight-ordered basis.
    W1Abc,
    W1Ac,
}

impl ReferenceMatrix {
    pub const ALL: [ReferenceMatrix; 9] = [
        ReferenceMatrix::GhzAbc,
        ReferenceMatrix::GhzBc,
        ReferenceMatrix::GhzAc,
        ReferenceMatrix::GhzAb,
        ReferenceMatrix::WAbc,
        ReferenceMatrix::WAc,
        ReferenceMatrix::WAb,
        ReferenceMatrix::W1Abc,
        ReferenceMatrix::W1Ac,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ReferenceMatrix::GhzAbc => "ghz_abc",
            ReferenceMatrix::GhzBc => "ghz_bc",
            ReferenceMatrix::GhzAc => "ghz_ac",
            ReferenceMatrix::GhzAb => "ghz_ab",
            ReferenceMatrix::WAbc => "w_abc",
            ReferenceMatrix::WAc => "w_ac",
            ReferenceMatrix::WAb => "w_ab",
            ReferenceMatrix::W1Abc => "w1_abc",
            ReferenceMatrix::W1Ac => "w1_ac",
        }
    }

    pub fn family(self) -> Family {
        match self {
            ReferenceMatrix::GhzAbc
            | ReferenceMatrix::GhzBc
            | ReferenceMatrix::GhzAc
            | ReferenceMatrix::GhzAb => Family::Ghz,
            ReferenceMatrix::WAbc | ReferenceMatrix::WAc | ReferenceMatrix::WAb => Family::W,
            ReferenceMatrix::W1Abc | ReferenceMatrix::W1Ac => Family::W1,
        }
    }

    /// The party traced out to get the pair, if any.
    pub fn traced(self) -> Option<QubitLabel> {
        match self {
            ReferenceMatrix::GhzBc => Some(QubitLabel::a()),
            ReferenceMatrix::GhzAc | ReferenceMatrix::WAc | ReferenceMatrix::W1Ac => {
                Some(QubitLabel::b())
            }
            ReferenceMatrix::GhzAb | ReferenceMatrix::WAb => Some(QubitLabel::c()),
            _ => None,
        }
    }

    pub fn for_family(family: Family) -> Vec<ReferenceMatrix> {
        Self::ALL
            .into_iter()
            .filter(|r| r.family() == family)
            .collect()
    }

    /// The printed matrix with `(μ, ν)` substituted.
    pub fn evaluate(self, mu: f64, nu: f64) -> DenseMatrix {
        let (m2, n2) = (mu * mu, nu * nu);
        let (m3, m4, n4) = (m2 * mu, m2 * m2, n2 * n2);
        let r2 = std::f64::consts::SQRT_2;
        let (n, scale, entries): (usize, f64, Vec<(usize, usize, f64)>) = match self {
            ReferenceMatrix::GhzAbc => (
                8,
                0.5,
                vec![
                    (0, 0, m4),
                    (0, 7, m2),
                    (1, 1, m2 * n2),
                    (2, 2, m2 * n2),
                    (4, 4, n4),
                    (7, 0, m2),
                    (7, 7, 1.0),
                ],
            ),
            ReferenceMatrix::GhzBc => (
                4,
                0.5,
                vec![(0, 0, m4), (1, 1, m2 * n2), (2, 2, m2 * n2), (3, 3, n4)],
            ),
            ReferenceMatrix::GhzAc | ReferenceMatrix::GhzAb => (
                4,
                0.5,
                vec![
                    (0, 0, m4 + m2 * n2),
                    (1, 1, m2 * n2),
                    (2, 2, n4),
                    (3, 3, 1.0),
                ],
            ),
            ReferenceMatrix::WAbc => (
                8,
                1.0 / 3.0,
                vec![
                    (1, 1, m2),
                    (1, 2, m2),
                    (1, 3, m3),
                    (2, 1, m2),
                    (2, 2, m2),
                    (2, 3, m3),
                    (3, 1, m3),
                    (3, 2, m3),
                    (3, 3, m4),
                    (4, 4, 2.0 * n2),
                    (4, 5, mu * n2),
                    (4, 6, mu * n2),
                    (5, 4, mu * n2),
                    (5, 5, m2 * n2),
                    (6, 4, mu * n2),
                    (6, 6, m2 * n2),
                    (7, 7, n4),
                ],
            ),
            ReferenceMatrix::WAc | ReferenceMatrix::WAb => (
                4,
                1.0 / 3.0,
                vec![
                    (0, 0, m2),
                    (1, 1, m2 + n2 + n4),
                    (1, 2, m3 + mu * n2),
                    (2, 1, m3 + mu * n2),
                    (2, 2, m4 + m2 * n2),
                    (3, 3, m2 * n2 + n4),
                ],
            ),
            ReferenceMatrix::W1Abc => (
                8,
                0.25,
                vec![
                    (1, 1, 2.0 * m2),
                    (1, 2, r2 * m2),
                    (1, 3, r2 * m3),
                    (2, 1, r2 * m2),
                    (2, 2, m2),
                    (3, 1, r2 * m3),
                    (3, 2, m3),
                    (3, 3, m4),
                    (4, 4, 3.0 * n2),
                    (4, 5, mu * n2),
                    (4, 6, r2 * mu * n2),
                    (5, 4, 2.0 * mu * n2),
                    (5, 5, m2 * n2),
                    (6, 4, r2 * mu * n2),
                    (6, 6, m2 * n2),
                    (7, 7, n4),
                ],
            ),
            ReferenceMatrix::W1Ac => (
                4,
                0.25,
                vec![
                    (0, 0, m2),
                    (1, 1, 2.0 * m2 + 3.0 * n2),
                    (1, 2, r2 * m3 + r2 * mu * n2),
                    (2, 1, r2 * m3 + r2 * mu * n2),
                    (2, 2, m4 + m2 * n2),
                    (3, 3, m2 * n2 + n4),
                ],
            ),
        };
        let mut data = vec![0.0; n * n];
        for (r, c, v) in entries {
            data[r * n + c] = scale * v;
        }
        DenseMatrix::from_real(n, n, &data).expect("finite template")
    }

    /// The operator computed from first principles, in the same basis as
    /// the printed one.
    pub fn computed(self, amps: ModeAmplitudes) -> Result<DenseMatrix> {
        let traced = self.traced();
        let rho = build_reduced_with(self.family(), &default_dressed(), traced.as_ref(), amps)?;
        if rho.num_qubits() == 3 {
            rho.permute_to_weight_order()
        } else {
            Ok(rho.matrix().clone())
        }
    }
}

impl fmt::Display for ReferenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ReferenceMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown reference matrix `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub target: String,
    pub mu: f64,
    pub nu: f64,
    pub max_abs_entry_diff: f64,
    /// Zero-based `[row, column]` of the largest difference.
    pub worst_entry: [usize; 2],
    pub trace_of_reference: f64,
    /// Whether the printed matrix equals its transpose.
    pub symmetric: bool,
    pub notes: String,
}

pub fn compare_with_reference(
    target: ReferenceMatrix,
    amps: ModeAmplitudes,
) -> Result<DiscrepancyReport> {
    let printed = target.evaluate(amps.mu, amps.nu);
    let computed = target.computed(amps)?;
    let n = printed.rows();

    let mut worst = (0.0, [0, 0]);
    for r in 0..n {
        for c in 0..n {
            let d = (printed.get(r, c) - computed.get(r, c)).norm();
            if d > worst.0 {
                worst = (d, [r, c]);
            }
        }
    }
    let trace = printed.trace()?.re;
    let mut asymmetric = Vec::new();
    for r in 0..n {
        for c in (r + 1)..n {
            if (printed.get(r, c) - printed.get(c, r)).norm() > SYMMETRY_TOL {
                asymmetric.push(format!("({r},{c})/({c},{r})"));
            }
        }
    }

    let mut notes = Vec::new();
    if worst.0 > SYMMETRY_TOL {
        let [r, c] = worst.1;
        notes.push(format!(
            "largest deviation at ({r},{c}): printed {}, computed {}",
            format_g9(printed.get(r, c).re),
            format_g9(computed.get(r, c).re)
        ));
    } else {
        notes.push("printed matrix agrees with the computed operator".into());
    }
    if (trace - 1.0).abs() > SYMMETRY_TOL {
        notes.push(format!(
            "printed trace is {} (off by {})",
            format_g9(trace),
            format_g9(trace - 1.0)
        ));
    }
    if !asymmetric.is_empty() {
        notes.push(format!(
            "printed matrix is not symmetric at {}",
            asymmetric.join(", ")
        ));
    }

    Ok(DiscrepancyReport {
        target: target.id().to_string(),
        mu: amps.mu,
        nu: amps.nu,
        max_abs_entry_diff: worst.0,
        worst_entry: worst.1,
        trace_of_reference: trace,
        symmetric: asymmetric.is_empty(),
        notes: notes.join("; "),
    })
}

/// Reports for every printed matrix belonging to `family`.
pub fn compare_family(family: Family, amps: ModeAmplitudes) -> Result<Vec<DiscrepancyReport>> {
    ReferenceMatrix::for_family(family)
        .into_iter()
        .map(|t| compare_with_reference(t, amps))
        .collect()
}

pub fn report_to_json(reports: &[DiscrepancyReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
