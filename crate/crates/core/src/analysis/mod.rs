//! Parameter sweeps, closed-form formulas, reference-matrix diffs and figure
//! reproduction.

mod closed_form;
mod figures;
mod reference;

pub use closed_form::{
    closed_form_concurrence_w, closed_form_fidelity_w, closed_form_tangle_ghz, exact_concurrence_w,
    exact_fidelity_w,
};
pub use figures::{
    figure_specs, reproduce_figure, reproduce_figure_with, FigureSpec, FIGURE_POINTS,
};
pub use reference::{
    compare_family, compare_with_reference, report_to_json, DiscrepancyReport, ReferenceMatrix,
};

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{concurrence, one_tangle, residual_tangle};
use crate::error::{Error, Result};
use crate::horizon::{build_reduced_with, default_dressed, Family, ModelSpec, Scenario};
use crate::qstate::{DensityOp, QubitLabel};
use crate::teleport::teleportation_fidelity;

/// Upper bound on the number of grid points in one sweep.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    Omega,
    Temperature,
    Dilaton,
    Charge,
    Mass,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Omega => "omega",
            AxisName::Temperature => "temperature",
            AxisName::Dilaton => "dilaton",
            AxisName::Charge => "charge",
            AxisName::Mass => "mass",
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega" => Ok(AxisName::Omega),
            "temperature" | "temp" => Ok(AxisName::Temperature),
            "dilaton" => Ok(AxisName::Dilaton),
            "charge" => Ok(AxisName::Charge),
            "mass" => Ok(AxisName::Mass),
            other => Err(Error::Config(format!("unknown axis `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(name: AxisName, start: f64, stop: f64, step: f64) -> Result<Self> {
        let axis = Self {
            name,
            start,
            stop,
            step,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// `points` evenly spaced values from `start` to `stop` inclusive.
    pub fn with_points(name: AxisName, start: f64, stop: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Config("an axis needs at least two points".into()));
        }
        Self::new(name, start, stop, (stop - start) / (points - 1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(Error::Config(format!(
                "axis {} has non-finite bounds",
                self.name
            )));
        }
        if self.step <= 0.0 {
            return Err(Error::Config(format!(
                "axis {} needs a positive step, got {}",
                self.name, self.step
            )));
        }
        if self.start > self.stop {
            return Err(Error::Config(format!(
                "axis {} starts at {} which is after its stop {}",
                self.name, self.start, self.stop
            )));
        }
        if (self.stop - self.start) / self.step >= MAX_GRID_POINTS as f64 {
            return Err(Error::Config(format!(
                "axis {} has more than {MAX_GRID_POINTS} points",
                self.name
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        let span = (self.stop - self.start) / self.step;
        (span * (1.0 + 1e-12) + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `i`-th point, computed from the index so errors do not accumulate.
    /// A last point within rounding of `stop` is snapped to it.
    pub fn point(&self, i: usize) -> f64 {
        let v = self.start + i as f64 * self.step;
        if (v - self.stop).abs() <= 1e-9 * self.step {
            self.stop
        } else {
            v
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// `name:start:stop:step`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Config(format!(
                "axis `{s}` must look like name:start:stop:step"
            )));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{t}` in axis `{s}`")))
        };
        Axis::new(
            parts[0].parse()?,
            num(parts[1])?,
            num(parts[2])?,
            num(parts[3])?,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axis1: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<Axis>,
}

impl SweepGrid {
    pub fn new(axis1: Axis, axis2: Option<Axis>) -> Result<Self> {
        let grid = Self { axis1, axis2 };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(a2) = &self.axis2 {
            a2.validate()?;
            if a2.name == self.axis1.name {
                return Err(Error::Config(format!("axis {} is given twice", a2.name)));
            }
        }
        if self.len() > MAX_GRID_POINTS {
            return Err(Error::Config(format!(
                "grid has {} points, more than {MAX_GRID_POINTS}",
                self.len()
            )));
        }
        Ok(())
    }

    fn len2(&self) -> usize {
        self.axis2.map_or(1, |a| a.len())
    }

    pub fn len(&self) -> usize {
        self.axis1.len().saturating_mul(self.len2())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major: `axis1` is the slow index.
    pub fn point(&self, k: usize) -> (f64, Option<f64>) {
        let n2 = self.len2();
        let (i, j) = (k / n2, k % n2);
        (self.axis1.point(i), self.axis2.map(|a| a.point(j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Concurrence,
    OneTangle,
    ResidualTangle,
    NValue,
    Fidelity,
    Useful,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::OneTangle => "one_tangle",
            Measure::ResidualTangle => "residual_tangle",
            Measure::NValue => "n_value",
            Measure::Fidelity => "fidelity",
            Measure::Useful => "useful",
        }
    }

    /// Whether the measure is defined on the reduced pair rather than on the
    /// full three-party operator.
    pub fn needs_pair(self) -> bool {
        !matches!(self, Measure::OneTangle | Measure::ResidualTangle)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "concurrence" => Ok(Measure::Concurrence),
            "one_tangle" => Ok(Measure::OneTangle),
            "residual_tangle" | "tangle" => Ok(Measure::ResidualTangle),
            "n_value" | "n" => Ok(Measure::NValue),
            "fidelity" => Ok(Measure::Fidelity),
            "useful" => Ok(Measure::Useful),
            other => Err(Error::Config(format!("unknown measure `{other}`"))),
        }
    }
}

pub fn parse_measures(list: &str) -> Result<Vec<Measure>> {
    let mut out: Vec<Measure> = Vec::new();
    for part in list.split(',').filter(|p| !p.trim().is_empty()) {
        let m: Measure = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no measures requested".into()));
    }
    Ok(out)
}

/// Everything about a scenario except the swept coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTemplate {
    pub family: Family,
    pub model: ModelSpec,
    /// Required unless one of the axes is `omega`.
    pub omega: Option<f64>,
    pub dressed: Vec<QubitLabel>,
    pub trace: Option<QubitLabel>,
    /// Pivot party for tangle measures.
    pub pivot: QubitLabel,
}

impl SweepTemplate {
    pub fn new(family: Family, model: ModelSpec) -> Self {
        Self {
            family,
            model,
            omega: None,
            dressed: default_dressed(),
            trace: None,
            pivot: QubitLabel::a(),
        }
    }

    pub fn tracing(mut self, party: QubitLabel) -> Self {
        self.trace = Some(party);
        self
    }

    pub fn at_omega(mut self, omega: f64) -> Self {
        self.omega = Some(omega);
        self
    }

    fn apply(
        &self,
        axis: AxisName,
        value: f64,
        spec: &mut ModelSpec,
        omega: &mut Option<f64>,
    ) -> Result<()> {
        let slot = match axis {
            AxisName::Omega => omega,
            AxisName::Temperature => &mut spec.temperature,
            AxisName::Dilaton => &mut spec.dilaton,
            AxisName::Charge => &mut spec.charge,
            AxisName::Mass => &mut spec.mass,
        };
        if slot.is_some() {
            return Err(Error::Config(format!(
                "axis {axis} conflicts with a fixed {axis} value"
            )));
        }
        *slot = Some(value);
        Ok(())
    }

    /// The scenario at one grid coordinate.
    pub fn scenario_at(&self, grid: &SweepGrid, x1: f64, x2: Option<f64>) -> Result<Scenario> {
        let mut spec = self.model;
        let mut omega = self.omega;
        self.apply(grid.axis1.name, x1, &mut spec, &mut omega)?;
        if let (Some(a2), Some(v)) = (grid.axis2, x2) {
            self.apply(a2.name, v, &mut spec, &mut omega)?;
        }
        let omega = omega.ok_or_else(|| Error::Config("omega must be fixed or swept".into()))?;
        Ok(Scenario {
            family: self.family,
            model: spec.to_model()?,
            omega,
            dressed: self.dressed.clone(),
            trace: self.trace.clone(),
        })
    }

    /// Checks that axes, model and measures fit together, using the first grid
    /// point as a probe.
    pub fn validate(&self, grid: &SweepGrid, measures: &[Measure]) -> Result<()> {
        grid.validate()?;
        for m in measures {
            if m.needs_pair() && self.trace.is_none() {
                return Err(Error::Config(format!(
                    "{m} is a two-party measure; choose a party to trace out"
                )));
            }
            if !m.needs_pair() && self.trace.is_some() {
                return Err(Error::Config(format!(
                    "{m} needs all three parties; do not trace one out"
                )));
            }
        }
        let (x1, x2) = grid.point(0);
        self.scenario_at(grid, x1, x2).map(|_| ())
    }

    /// Scenarios for every grid point in row-major order.
    pub fn scenarios(&self, grid: &SweepGrid) -> Result<Vec<Scenario>> {
        grid.validate()?;
        (0..grid.len())
            .map(|k| {
                let (x1, x2) = grid.point(k);
                self.scenario_at(grid, x1, x2)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub axis1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<f64>,
    pub mu: f64,
    pub nu: f64,
    /// `useful` is stored as 1 or 0.
    pub measures: BTreeMap<Measure, f64>,
    pub unphysical_regime: bool,
}

impl MeasureRecord {
    pub fn get(&self, m: Measure) -> Option<f64> {
        self.measures.get(&m).copied()
    }
}

fn evaluate(
    rho: &DensityOp,
    pivot: &QubitLabel,
    measures: &[Measure],
) -> Result<BTreeMap<Measure, f64>> {
    let mut out = BTreeMap::new();
    let fidelity = if measures
        .iter()
        .any(|m| matches!(m, Measure::NValue | Measure::Fidelity | Measure::Useful))
    {
        Some(teleportation_fidelity(rho)?)
    } else {
        None
    };
    let tangle = if measures.contains(&Measure::ResidualTangle) {
        Some(residual_tangle(rho, pivot)?)
    } else {
        None
    };
    for &m in measures {
        let v = match m {
            Measure::Concurrence => concurrence(rho)?,
            Measure::OneTangle => match &tangle {
                Some(t) => t.one_tangle,
                None => one_tangle(rho, pivot)?,
            },
            Measure::ResidualTangle => tangle.expect("computed above").residual,
            Measure::NValue => fidelity.expect("computed above").n_value,
            Measure::Fidelity => fidelity.expect("computed above").fidelity,
            Measure::Useful => f64::from(u8::from(fidelity.expect("computed above").useful)),
        };
        out.insert(m, v);
    }
    Ok(out)
}

/// Evaluates `measures` at one scenario.
pub fn measure_scenario(
    sc: &Scenario,
    pivot: &QubitLabel,
    measures: &[Measure],
) -> Result<(crate::horizon::ModeAmplitudes, BTreeMap<Measure, f64>)> {
    let amps = sc.amplitudes()?;
    let rho = build_reduced_with(sc.family, &sc.dressed, sc.trace.as_ref(), amps)?;
    Ok((amps, evaluate(&rho, pivot, measures)?))
}

/// One record per grid point, row-major. Points are evaluated in parallel
/// on the current rayon pool; the output order does not depend on it.
pub fn run_sweep(
    template: &SweepTemplate,
    grid: &SweepGrid,
    measures: &[Measure],
) -> Result<Vec<MeasureRecord>> {
    template.validate(grid, measures)?;
    (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (x1, x2) = grid.point(k);
            let sc = template.scenario_at(grid, x1, x2)?;
            let (amps, values) = measure_scenario(&sc, &template.pivot, measures)?;
            Ok(MeasureRecord {
                axis1: x1,
                axis2: x2,
                mu: amps.mu,
                nu: amps.nu,
                measures: values,
                unphysical_regime: sc.model.is_unphysical(),
            })
        })
        .collect()
}

/// `%.9g`-style formatting: 9 significant digits, trailing zeros removed.
pub fn format_g9(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "axis1,axis2,mu,nu,measure,value,unphysical";

/// Long format: one row per record and measure, in `measures` order.
pub fn write_csv<W: Write>(
    out: &mut W,
    records: &[MeasureRecord],
    measures: &[Measure],
) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let a2 = r.axis2.map(format_g9).unwrap_or_default();
        for m in measures {
            if let Some(v) = r.get(*m) {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    format_g9(r.axis1),
                    a2,
                    format_g9(r.mu),
                    format_g9(r.nu),
                    m,
                    format_g9(v),
                    r.unphysical_regime
                )?;
            }
        }
    }
    Ok(())
}

pub fn csv_string(records: &[MeasureRecord], measures: &[Measure]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records, measures).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn records_to_json(records: &[MeasureRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horizon::ModelKind;

    fn schwarzschild() -> ModelSpec {
        ModelSpec {
            kind: Some(ModelKind::Schwarzschild),
            ..Default::default()
        }
    }

    fn dilaton(mass: f64) -> ModelSpec {
        ModelSpec {
            kind: Some(ModelKind::Dilaton),
            mass: Some(mass),
            ..Default::default()
        }
    }

    #[test]
    fn axis_points_and_validation() {
        let a: Axis = "omega:0:1:0.5".parse().unwrap();
        assert_eq!(a.points(), vec![0.0, 0.5, 1.0]);
        let b = Axis::with_points(AxisName::Temperature, 1.0, 10.0, 200).unwrap();
        assert_eq!(b.len(), 200);
        assert_eq!(b.point(0), 1.0);
        assert_eq!(b.point(199), 10.0);
        let c = Axis::with_points(AxisName::Omega, 0.0, 0.3, 4).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.point(3), 0.3);
        assert!(matches!(
            "omega:1:0:0.1".parse::<Axis>(),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            "omega:0:1:0".parse::<Axis>(),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            "omega:0:1:-1".parse::<Axis>(),
            Err(Error::Config(_))
        ));
        assert!(matches!("omega:0:1".parse::<Axis>(), Err(Error::Config(_))));
        assert!(matches!(
            "spin:0:1:1".parse::<Axis>(),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            "omega:0:1e7:1".parse::<Axis>(),
            Err(Error::Config(_))
        ));
        let single: Axis = "mass:2:2:1".parse().unwrap();
        assert_eq!(single.points(), vec![2.0]);
    }

    #[test]
    fn grid_too_large() {
        let a: Axis = "omega:0:999:1".parse().unwrap();
        let b: Axis = "temperature:1:1001:1".parse().unwrap();
        assert!(matches!(SweepGrid::new(a, Some(b)), Err(Error::Config(_))));
    }

    #[test]
    fn w_fidelity_sweep() {
        let grid = SweepGrid::new(
            "omega:0:1:0.5".parse().unwrap(),
            Some("temperature:1:2:1".parse().unwrap()),
        )
        .unwrap();
        let tpl = SweepTemplate::new(Family::W, schwarzschild()).tracing(QubitLabel::b());
        let recs = run_sweep(&tpl, &grid, &[Measure::Fidelity]).unwrap();
        assert_eq!(recs.len(), 6);
        assert_eq!((recs[1].axis1, recs[1].axis2), (0.0, Some(2.0)));
        assert_eq!((recs[2].axis1, recs[2].axis2), (0.5, Some(1.0)));
        for r in &recs {
            assert!(r.get(Measure::Fidelity).unwrap() > 2.0 / 3.0);
            assert!(!r.unphysical_regime);
        }
    }

    #[test]
    fn ghz_tangle_sweep() {
        let grid = SweepGrid::new(
            "omega:0:5:1".parse().unwrap(),
            Some("temperature:0.5:3:0.5".parse().unwrap()),
        )
        .unwrap();
        let tpl = SweepTemplate::new(Family::Ghz, schwarzschild());
        for r in run_sweep(&tpl, &grid, &[Measure::ResidualTangle]).unwrap() {
            assert!((r.get(Measure::ResidualTangle).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn dilaton_unphysical_flag() {
        let grid = SweepGrid::new(
            "dilaton:0.5:2:0.25".parse().unwrap(),
            Some("omega:0:1:0.5".parse().unwrap()),
        )
        .unwrap();
        let tpl = SweepTemplate::new(Family::W, dilaton(1.0)).tracing(QubitLabel::b());
        for r in run_sweep(&tpl, &grid, &[Measure::Concurrence]).unwrap() {
            assert_eq!(r.unphysical_regime, r.axis1 >= 1.0, "{r:?}");
        }
    }

    #[test]
    fn axis_model_mismatch() {
        let grid = SweepGrid::new(
            "dilaton:0:1:0.5".parse().unwrap(),
            Some("omega:0:1:0.5".parse().unwrap()),
        )
        .unwrap();
        let tpl = SweepTemplate::new(Family::W, schwarzschild()).tracing(QubitLabel::b());
        assert!(matches!(
            run_sweep(&tpl, &grid, &[Measure::Fidelity]),
            Err(Error::Config(_))
        ));
        let grid = SweepGrid::new("temperature:1:2:1".parse().unwrap(), None).unwrap();
        assert!(matches!(
            run_sweep(&tpl, &grid, &[Measure::Fidelity]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn measure_party_count_is_checked() {
        let grid = SweepGrid::new("omega:0:1:0.5".parse().unwrap(), None).unwrap();
        let mut spec = schwarzschild();
        spec.temperature = Some(1.0);
        let tpl = SweepTemplate::new(Family::W, spec);
        assert!(matches!(
            run_sweep(&tpl, &grid, &[Measure::Fidelity]),
            Err(Error::Config(_))
        ));
        let tpl = tpl.tracing(QubitLabel::b());
        assert!(matches!(
            run_sweep(&tpl, &grid, &[Measure::ResidualTangle]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn g9_formatting() {
        assert_eq!(format_g9(0.0), "0");
        assert_eq!(format_g9(1.0), "1");
        assert_eq!(format_g9(0.5), "0.5");
        assert_eq!(format_g9(2.0 / 3.0), "0.666666667");
        assert_eq!(format_g9(7.0 / 9.0), "0.777777778");
        assert_eq!(format_g9(123456789.0), "123456789");
        assert_eq!(format_g9(1234567890.0), "1.23456789e+09");
        assert_eq!(format_g9(1.5e-7), "1.5e-07");
        assert_eq!(format_g9(0.0001), "0.0001");
        assert_eq!(format_g9(-0.25), "-0.25");
        assert_eq!(format_g9(900.0), "900");
    }

    #[test]
    fn csv_layout() {
        let grid = SweepGrid::new("omega:0:1:1".parse().unwrap(), None).unwrap();
        let mut spec = schwarzschild();
        spec.temperature = Some(1.0);
        let tpl = SweepTemplate::new(Family::W, spec).tracing(QubitLabel::b());
        let ms = [Measure::Fidelity, Measure::Useful];
        let recs = run_sweep(&tpl, &grid, &ms).unwrap();
        let csv = csv_string(&recs, &ms);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,,0.707106781,0.707106781,fidelity,"));
        assert!(lines[2].ends_with("useful,1,false"));
        assert!(!csv.contains('\r'));
    }
}
