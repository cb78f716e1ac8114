//! Black-hole models and the Kruskal-mode dressing of exposed qubits.
//!
//! Near the horizon a qubit's vacuum becomes a two-mode squeezed state over
//! an accessible mode `q` and an inaccessible partner `q̄`:
//!
//! ```text
//! |0⟩ -> μ|0⟩|0⟩ + ν|1⟩|1⟩        |1⟩ -> |1⟩|0⟩
//! ```
//!
//! with `μ² = 1/(1 + e^{-x})`, `ν² = 1/(1 + e^{x})`. The exponent `x` is
//! `ω/T` for Schwarzschild and `8π(M − D)ω` for the GHS dilaton hole.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{make_ghz, make_w, make_w1, DensityOp, PureState, QubitLabel, STATE_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchwarzschildParam {
    Mass(f64),
    Temperature(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlackHoleModel {
    Schwarzschild(SchwarzschildParam),
    /// GHS dilaton hole. `dilaton >= mass` is accepted but flagged as unphysical.
    Dilaton {
        mass: f64,
        dilaton: f64,
    },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl BlackHoleModel {
    pub fn schwarzschild_mass(mass: f64) -> Result<Self> {
        Ok(Self::Schwarzschild(SchwarzschildParam::Mass(positive(
            "mass", mass,
        )?)))
    }

    pub fn schwarzschild_temperature(temperature: f64) -> Result<Self> {
        Ok(Self::Schwarzschild(SchwarzschildParam::Temperature(
            positive("temperature", temperature)?,
        )))
    }

    pub fn dilaton(mass: f64, dilaton: f64) -> Result<Self> {
        let mass = positive("mass", mass)?;
        if !(dilaton.is_finite() && dilaton >= 0.0) {
            return Err(Error::Domain(format!(
                "dilaton must be non-negative and finite, got {dilaton}"
            )));
        }
        Ok(Self::Dilaton { mass, dilaton })
    }

    /// `D = Q² / (2M)`.
    pub fn dilaton_from_charge(mass: f64, charge: f64) -> Result<Self> {
        let mass = positive("mass", mass)?;
        if !charge.is_finite() {
            return Err(Error::Domain(format!(
                "charge must be finite, got {charge}"
            )));
        }
        Self::dilaton(mass, charge * charge / (2.0 * mass))
    }

    /// Outside the `D < M` regime of the dilaton solution.
    pub fn is_unphysical(&self) -> bool {
        matches!(self, Self::Dilaton { mass, dilaton } if dilaton >= mass)
    }

    /// The logistic exponent `x` at frequency `omega`.
    pub fn exponent(&self, omega: f64) -> f64 {
        match *self {
            Self::Schwarzschild(SchwarzschildParam::Temperature(t)) => omega / t,
            Self::Schwarzschild(SchwarzschildParam::Mass(m)) => 8.0 * PI * m * omega,
            Self::Dilaton { mass, dilaton } => 8.0 * PI * (mass - dilaton) * omega,
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Self::Schwarzschild(_) => ModelKind::Schwarzschild,
            Self::Dilaton { .. } => ModelKind::Dilaton,
        }
    }
}

/// `T = 1/(8πM)` in units with `G = ħ = c = k_B = 1`.
pub fn hawking_temperature(model: &BlackHoleModel) -> Result<f64> {
    match *model {
        BlackHoleModel::Schwarzschild(SchwarzschildParam::Mass(m)) => Ok(1.0 / (8.0 * PI * m)),
        BlackHoleModel::Schwarzschild(SchwarzschildParam::Temperature(t)) => Ok(t),
        BlackHoleModel::Dilaton { .. } => Err(Error::Unsupported(
            "Hawking temperature is only defined here for the Schwarzschild model".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeAmplitudes {
    pub mu: f64,
    pub nu: f64,
}

impl ModeAmplitudes {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) || !(0.0..=1.0).contains(&nu) {
            return Err(Error::Domain(format!(
                "amplitudes out of range: μ={mu}, ν={nu}"
            )));
        }
        if (mu * mu + nu * nu - 1.0).abs() > STATE_TOL {
            return Err(Error::Domain(format!(
                "μ² + ν² = {} ≠ 1",
                mu * mu + nu * nu
            )));
        }
        Ok(Self { mu, nu })
    }

    pub fn from_mu(mu: f64) -> Result<Self> {
        Self::new(mu, (1.0 - mu * mu).max(0.0).sqrt())
    }

    /// Flat space: no mode mixing.
    pub fn flat() -> Self {
        Self { mu: 1.0, nu: 0.0 }
    }

    /// Each square is a logistic, so `e^{±x}` saturating to `inf` or `0`
    /// simply pins the pair to `(1, 0)` or `(0, 1)`.
    pub fn from_exponent(x: f64) -> Self {
        let mu2 = 1.0 / (1.0 + (-x).exp());
        let nu2 = 1.0 / (1.0 + x.exp());
        Self {
            mu: mu2.sqrt(),
            nu: nu2.sqrt(),
        }
    }
}

pub fn mode_amplitudes(model: &BlackHoleModel, omega: f64) -> Result<ModeAmplitudes> {
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::Domain(format!(
            "frequency must be non-negative and finite, got {omega}"
        )));
    }
    let amps = ModeAmplitudes::from_exponent(model.exponent(omega));
    debug_assert!((amps.mu * amps.mu + amps.nu * amps.nu - 1.0).abs() <= STATE_TOL);
    Ok(amps)
}

/// Replaces every qubit in `parties` by the pair `(q, q̄)`, `q̄` placed
/// immediately after `q`.
pub fn dress_state(
    state: &PureState,
    parties: &[QubitLabel],
    amps: ModeAmplitudes,
) -> Result<PureState> {
    for p in parties {
        if !state.labels().contains(p) {
            return Err(Error::Label(p.to_string()));
        }
    }
    let n = state.num_qubits();
    let dressed: Vec<bool> = state.labels().iter().map(|l| parties.contains(l)).collect();
    let mut labels = Vec::with_capacity(n + parties.len());
    for (l, &d) in state.labels().iter().zip(&dressed) {
        labels.push(l.clone());
        if d {
            labels.push(l.barred());
        }
    }
    let width = labels.len();
    let (mu, nu) = (Complex64::new(amps.mu, 0.0), Complex64::new(amps.nu, 0.0));

    let mut out = vec![Complex64::new(0.0, 0.0); 1 << width];
    let mut terms: Vec<(usize, Complex64)> = Vec::new();
    for (index, &amp) in state.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        terms.clear();
        terms.push((0, amp));
        for (q, &is_dressed) in dressed.iter().enumerate() {
            let bit = index >> (n - 1 - q) & 1;
            if !is_dressed {
                for t in terms.iter_mut() {
                    t.0 = t.0 << 1 | bit;
                }
            } else if bit == 1 {
                for t in terms.iter_mut() {
                    t.0 = t.0 << 2 | 0b10;
                }
            } else {
                let mut next = Vec::with_capacity(terms.len() * 2);
                for &(idx, a) in &terms {
                    next.push((idx << 2, a * mu));
                    next.push((idx << 2 | 0b11, a * nu));
                }
                terms = next;
            }
        }
        for &(idx, a) in &terms {
            out[idx] += a;
        }
    }

    let norm = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > STATE_TOL {
        return Err(Error::Contract(format!(
            "dressing changed the norm to {norm}; amplitudes are not normalized"
        )));
    }
    PureState::new(labels, out.into_iter().map(|z| z / norm).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ghz,
    W,
    W1,
}

impl Family {
    pub fn state(self) -> PureState {
        match self {
            Family::Ghz => make_ghz(),
            Family::W => make_w(),
            Family::W1 => make_w1(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::W1 => "w1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(Family::Ghz),
            "w" => Ok(Family::W),
            "w1" => Ok(Family::W1),
            other => Err(Error::Config(format!("unknown state family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Schwarzschild,
    Dilaton,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "schwarzschild" => Ok(ModelKind::Schwarzschild),
            "dilaton" => Ok(ModelKind::Dilaton),
            other => Err(Error::Config(format!("unknown black-hole model `{other}`"))),
        }
    }
}

/// Model parameters as supplied by a user (JSON or CLI flags).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(rename = "type")]
    pub kind: Option<ModelKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilaton: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<f64>,
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<BlackHoleModel> {
        let kind = self
            .kind
            .ok_or_else(|| Error::Config("model type is required".into()))?;
        match kind {
            ModelKind::Schwarzschild => {
                if self.dilaton.is_some() || self.charge.is_some() {
                    return Err(Error::Config(
                        "dilaton/charge do not apply to the Schwarzschild model".into(),
                    ));
                }
                match (self.mass, self.temperature) {
                    (Some(m), None) => BlackHoleModel::schwarzschild_mass(m),
                    (None, Some(t)) => BlackHoleModel::schwarzschild_temperature(t),
                    (Some(_), Some(_)) => Err(Error::Config(
                        "give either mass or temperature for Schwarzschild, not both".into(),
                    )),
                    (None, None) => Err(Error::Config(
                        "Schwarzschild needs a mass or a temperature".into(),
                    )),
                }
            }
            ModelKind::Dilaton => {
                if self.temperature.is_some() {
                    return Err(Error::Config(
                        "the dilaton model is parametrized by mass and dilaton, not temperature"
                            .into(),
                    ));
                }
                let mass = self
                    .mass
                    .ok_or_else(|| Error::Config("dilaton model needs a mass".into()))?;
                match (self.dilaton, self.charge) {
                    (Some(d), None) => BlackHoleModel::dilaton(mass, d),
                    (None, Some(q)) => BlackHoleModel::dilaton_from_charge(mass, q),
                    (Some(_), Some(_)) => Err(Error::Config(
                        "give either dilaton or charge, not both".into(),
                    )),
                    (None, None) => Err(Error::Config(
                        "dilaton model needs a dilaton or a charge".into(),
                    )),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub family: Family,
    pub model: BlackHoleModel,
    pub omega: f64,
    pub dressed: Vec<QubitLabel>,
    pub trace: Option<QubitLabel>,
}

impl Scenario {
    /// Bob and Cliff near the horizon, Alice in the flat region.
    pub fn new(family: Family, model: BlackHoleModel, omega: f64) -> Self {
        Self {
            family,
            model,
            omega,
            dressed: default_dressed(),
            trace: None,
        }
    }

    pub fn tracing(mut self, party: QubitLabel) -> Self {
        self.trace = Some(party);
        self
    }

    pub fn amplitudes(&self) -> Result<ModeAmplitudes> {
        mode_amplitudes(&self.model, self.omega)
    }
}

pub fn default_dressed() -> Vec<QubitLabel> {
    vec![QubitLabel::b(), QubitLabel::c()]
}

/// Dresses the family state, traces out the barred modes, then traces out
/// `trace` if given.
pub fn build_reduced(sc: &Scenario) -> Result<DensityOp> {
    build_reduced_with(sc.family, &sc.dressed, sc.trace.as_ref(), sc.amplitudes()?)
}

pub fn build_reduced_with(
    family: Family,
    dressed: &[QubitLabel],
    trace: Option<&QubitLabel>,
    amps: ModeAmplitudes,
) -> Result<DensityOp> {
    let base = family.state();
    let keep: Vec<QubitLabel> = match trace {
        Some(t) => {
            if !base.labels().contains(t) {
                return Err(Error::Label(t.to_string()));
            }
            base.labels().iter().filter(|l| *l != t).cloned().collect()
        }
        None => base.labels().to_vec(),
    };
    dress_state(&base, dressed, amps)?.reduced_density(&keep)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub family: Family,
    pub model: ModelSpec,
    pub omega: f64,
    #[serde(default = "default_dressed_names")]
    pub dressed: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
}

fn default_dressed_names() -> Vec<String> {
    vec!["B".into(), "C".into()]
}

impl ScenarioDoc {
    pub fn to_scenario(&self) -> Result<Scenario> {
        Ok(Scenario {
            family: self.family,
            model: self.model.to_model()?,
            omega: self.omega,
            dressed: self
                .dressed
                .iter()
                .map(|s| QubitLabel::new(s.as_str()))
                .collect(),
            trace: self.trace.as_deref().map(QubitLabel::new),
        })
    }
}
