use std::io::Write;

use crate::error::{Error, Result};
use crate::extraction::report::{normalized_envelope, ConditionReport};
use crate::extraction::FitReport;
use crate::geometry::link_distances;
use crate::propagation::{free_space_loss, pl_3gpp_uma, Frequency};
use crate::stochastic::empirical::{histogram_density, percentile_sorted, sorted};
use crate::stochastic::special::normal_cdf_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Pdf,
    Cdf,
    Pathloss,
}

impl std::str::FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pdf" => Ok(PlotKind::Pdf),
            "cdf" => Ok(PlotKind::Cdf),
            "pathloss" => Ok(PlotKind::Pathloss),
            _ => Err(Error::Domain(format!("unknown plot kind {s:?} (pdf|cdf|pathloss)"))),
        }
    }
}

const PDF_BINS: usize = 40;
const CDF_POINTS: usize = 200;

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Writes plottable columns for one kind of figure.
///
/// `pdf` and `cdf` emit `quantity,condition,model,x,empirical,fitted` for the
/// shadowing samples and the normalized fading envelope; `pathloss` emits
/// `altitude_m,condition,measured,local_mean,fitted,fspl,uma_3gpp`.
pub fn plot_data<W: Write>(report: &FitReport, kind: PlotKind, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match kind {
        PlotKind::Pathloss => pathloss_rows(report, &mut w)?,
        PlotKind::Pdf | PlotKind::Cdf => {
            w.write_record(["quantity", "condition", "model", "x", "empirical", "fitted"])
                .map_err(csv_err)?;
            for c in &report.conditions {
                distribution_rows(report, c, kind, &mut w)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

type Model<'a> = (String, Box<dyn Fn(f64) -> f64 + 'a>);

fn distribution_rows<W: Write>(
    report: &FitReport,
    c: &ConditionReport,
    kind: PlotKind,
    w: &mut csv::Writer<W>,
) -> Result<()> {
    let curves = &report.curves;
    if curves.altitude_m.is_empty() {
        return Err(Error::Parse("report carries no curves".into()));
    }
    let cond = c.state.to_string();
    let sh = c.shadowing.params;
    let sf = curves.select(&curves.sf_db, c.state);
    let (env, _) = normalized_envelope(&curves.select(&curves.ff_db, c.state))?;

    let sf_models: Vec<Model> = vec![(
        "gaussian".into(),
        match kind {
            PlotKind::Pdf => Box::new(move |x| sh.pdf(x)),
            _ => Box::new(move |x| normal_cdf_pair((x - sh.mean_db) / sh.sigma_db).0),
        },
    )];
    let env_models: Vec<Model> = c
        .fast_fading
        .ranking
        .iter()
        .map(|r| {
            let d = r.distribution;
            let f: Box<dyn Fn(f64) -> f64> = match kind {
                PlotKind::Pdf => Box::new(move |x| d.pdf(x)),
                _ => Box::new(move |x| d.cdf(x)),
            };
            (r.family.to_string(), f)
        })
        .collect();

    for (quantity, samples, models) in [("shadowing_db", sf, sf_models), ("envelope", env, env_models)] {
        let s = sorted(&samples)?;
        let points: Vec<(f64, f64)> = match kind {
            PlotKind::Pdf => {
                // heavy right tail: cut the envelope histogram at its 99th percentile
                let hi = if quantity == "envelope" {
                    percentile_sorted(&s, 0.99)
                } else {
                    s[s.len() - 1]
                };
                let lo = if quantity == "envelope" { 0.0 } else { s[0] };
                if hi > lo {
                    histogram_density(&s, lo, hi, PDF_BINS)
                } else {
                    Vec::new()
                }
            }
            _ => {
                let step = (s.len() / CDF_POINTS).max(1);
                (0..s.len())
                    .step_by(step)
                    .map(|i| (s[i], (i + 1) as f64 / s.len() as f64))
                    .collect()
            }
        };
        for (name, f) in &models {
            for &(x, emp) in &points {
                w.write_record([quantity, &cond, name, &f6(x), &f6(emp), &f6(f(x))])
                    .map_err(csv_err)?;
            }
        }
    }
    Ok(())
}

fn pathloss_rows<W: Write>(report: &FitReport, w: &mut csv::Writer<W>) -> Result<()> {
    let c = &report.curves;
    if c.altitude_m.is_empty() {
        return Err(Error::Parse("report carries no curves".into()));
    }
    let freq = Frequency::from_hz(report.frequency_hz)?;
    w.write_record(["altitude_m", "condition", "measured", "local_mean", "fitted", "fspl", "uma_3gpp"])
        .map_err(csv_err)?;
    for i in 0..c.altitude_m.len() {
        let h = c.altitude_m[i];
        let state = c.states[i];
        let (_, d3d) = link_distances(&report.scenario, h)?;
        w.write_record([
            f6(h),
            state.to_string(),
            f6(c.loss_db[i]),
            f6(c.large_scale_db[i]),
            f6(c.pl0_db[i]),
            f6(free_space_loss(d3d, freq)?),
            f6(pl_3gpp_uma(d3d, freq.ghz(), h, state)?),
        ])
        .map_err(csv_err)?;
    }
    Ok(())
}
