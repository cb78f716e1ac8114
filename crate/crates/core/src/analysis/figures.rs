//! Grids behind figures 2 to 10. Each figure sweeps `ω` against one model
//! parameter; ranges follow the figure captions with 200 points per axis.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{run_sweep, write_csv, Axis, AxisName, Measure, SweepGrid, SweepTemplate};
use crate::error::{Error, Result};
use crate::horizon::{Family, ModelKind, ModelSpec};
use crate::qstate::QubitLabel;

pub const FIGURE_POINTS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct FigureSpec {
    /// File stem prefix, e.g. `fig5` or `fig2a`.
    pub name: String,
    pub family: Family,
    pub kind: ModelKind,
    pub omega: (f64, f64),
    pub param: (AxisName, f64, f64),
    pub measure: Measure,
}

impl FigureSpec {
    fn new(
        name: &str,
        family: Family,
        kind: ModelKind,
        omega: (f64, f64),
        param: (AxisName, f64, f64),
        measure: Measure,
    ) -> Self {
        Self {
            name: name.into(),
            family,
            kind,
            omega,
            param,
            measure,
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}_{}.csv", self.name, self.measure)
    }

    /// Dilaton figures fix `M = 1`. Pair measures trace out Bob.
    pub fn template(&self) -> SweepTemplate {
        let model = ModelSpec {
            kind: Some(self.kind),
            mass: (self.kind == ModelKind::Dilaton).then_some(1.0),
            ..Default::default()
        };
        let tpl = SweepTemplate::new(self.family, model);
        if self.measure.needs_pair() {
            tpl.tracing(QubitLabel::b())
        } else {
            tpl
        }
    }

    pub fn grid(&self, points: usize) -> Result<SweepGrid> {
        let (name, lo, hi) = self.param;
        SweepGrid::new(
            Axis::with_points(AxisName::Omega, self.omega.0, self.omega.1, points)?,
            Some(Axis::with_points(name, lo, hi, points)?),
        )
    }
}

/// The CSVs making up figure `id`. Figure 2 has a Schwarzschild (`a`) and a
/// dilaton (`b`) panel; the temperature axis starts at 0.05 since `T = 0`
/// is outside the model.
pub fn figure_specs(id: u32) -> Result<Vec<FigureSpec>> {
    use AxisName::{Charge, Dilaton, Temperature};
    use Family::{Ghz, W, W1};
    use Measure::{Concurrence, Fidelity, ResidualTangle};
    use ModelKind::{Dilaton as Dil, Schwarzschild as Sch};
    let unit = (0.0, 1.0);
    let specs = match id {
        2 => vec![
            FigureSpec::new(
                "fig2a",
                Ghz,
                Sch,
                (0.0, 900.0),
                (Temperature, 0.05, 10.0),
                ResidualTangle,
            ),
            FigureSpec::new(
                "fig2b",
                Ghz,
                Dil,
                (0.0, 50.0),
                (Charge, 0.0, 20.0),
                ResidualTangle,
            ),
        ],
        3 => vec![FigureSpec::new(
            "fig3",
            W,
            Sch,
            unit,
            (Temperature, 1.0, 10.0),
            Concurrence,
        )],
        4 => vec![FigureSpec::new(
            "fig4",
            W,
            Dil,
            unit,
            (Dilaton, 1.0, 10.0),
            Concurrence,
        )],
        5 => vec![FigureSpec::new(
            "fig5",
            W,
            Sch,
            unit,
            (Temperature, 1.0, 10.0),
            Fidelity,
        )],
        6 => vec![FigureSpec::new(
            "fig6",
            W,
            Dil,
            unit,
            (Dilaton, 1.0, 10.0),
            Fidelity,
        )],
        7 => vec![FigureSpec::new(
            "fig7",
            W1,
            Sch,
            unit,
            (Temperature, 1.0, 5.0),
            Concurrence,
        )],
        8 => vec![FigureSpec::new(
            "fig8",
            W1,
            Dil,
            unit,
            (Dilaton, 0.1, 10.0),
            Concurrence,
        )],
        9 => vec![FigureSpec::new(
            "fig9",
            W1,
            Sch,
            unit,
            (Temperature, 1.0, 5.0),
            Fidelity,
        )],
        10 => vec![FigureSpec::new(
            "fig10",
            W1,
            Dil,
            unit,
            (Dilaton, 0.1, 10.0),
            Fidelity,
        )],
        other => {
            return Err(Error::Config(format!(
                "no figure {other}; choose one of 2 to 10"
            )))
        }
    };
    Ok(specs)
}

pub fn reproduce_figure(id: u32, outdir: &Path) -> Result<Vec<PathBuf>> {
    reproduce_figure_with(id, outdir, FIGURE_POINTS)
}

/// As [`reproduce_figure`] with `points` per axis.
pub fn reproduce_figure_with(id: u32, outdir: &Path, points: usize) -> Result<Vec<PathBuf>> {
    let specs = figure_specs(id)?;
    fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let mut written = Vec::new();
    for spec in specs {
        let measures = [spec.measure];
        let records = run_sweep(&spec.template(), &spec.grid(points)?, &measures)?;
        let path = outdir.join(spec.file_name());
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut out = BufWriter::new(file);
        write_csv(&mut out, &records, &measures)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
