use std::io::Write as _;

use serde_json::{json, Value};

use hypercoh::geometry::{fd_check_metric, metric_density, FD_TOLERANCE};
use hypercoh::moments::{verify_moments, weight_case, MomentFilter};
use hypercoh::special::{hyper_even_pcq, hyper_odd_psq, hyper_pfq};
use hypercoh::statistics::{
    mandel_limit_at_origin, mandel_q, mean_occupation, sample_photon_counts, summarize_counts,
    thermal_normal_moment, thermal_partition, thermal_raw_moment, ThermalSpec,
};
use hypercoh::{exec::map_ordered, ParamSet, Parity, StateSpec};

use crate::config::RunConfig;
use crate::report::{Cell, Report, Row};
use crate::CliError;

/// A report plus the exit code the process should finish with.
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

const METRIC_FD_STEP: f64 = 1e-5;

fn params_json(params: &ParamSet) -> Value {
    json!({ "a": params.a(), "b": params.b() })
}

/// Exit code of the first failing row, 0 if none failed.
fn first_row_failure(results: &[Result<Vec<Cell>, hypercoh::Error>]) -> i32 {
    results
        .iter()
        .find_map(|r| r.as_ref().err())
        .map_or(0, |e| CliError::Lib(e.clone()).exit_code())
}

fn into_rows(results: Vec<Result<Vec<Cell>, hypercoh::Error>>, x: &[f64]) -> Vec<Row> {
    results
        .into_iter()
        .zip(x)
        .map(|(r, &x)| match r {
            Ok(cells) => Row::ok(cells),
            Err(e) => Row { cells: vec![Cell::Num(x)], error: Some(e.to_string()) },
        })
        .collect()
}

pub fn eval(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.param_set()?;
    let xs = cfg.xs()?;
    let tol = cfg.tol_or(1e-12)?;
    let results = map_ordered(cfg.exec, &xs, |&x| {
        let f = hyper_pfq(&params, x, tol)?.value;
        let c = hyper_even_pcq(&params, x, tol)?.value;
        let s = hyper_odd_psq(&params, x, tol)?.value;
        Ok(vec![Cell::Num(x), Cell::Num(f), Cell::Num(c), Cell::Num(s), Cell::Num(f - c - s)])
    });
    let exit = first_row_failure(&results);
    Ok(Outcome {
        report: Report {
            command: "eval",
            params: params_json(&params),
            columns: vec!["x", "F", "C", "S", "F_minus_C_minus_S"],
            rows: into_rows(results, &xs),
            max_rel_error: None,
        },
        exit,
    })
}

pub fn mandel_scan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.param_set()?;
    let xs = cfg.xs()?;
    let q_and_n = |parity: Parity, x: f64| -> Result<(f64, f64), hypercoh::Error> {
        if x == 0.0 {
            // the odd state is undefined at the origin; report its limit
            let n = if parity == Parity::Odd { 1.0 } else { 0.0 };
            return Ok((mandel_limit_at_origin(parity), n));
        }
        let m = mandel_q(&StateSpec::with_x(params.clone(), parity, x)?)?;
        Ok((m.q_value, m.mean_n))
    };
    let results = map_ordered(cfg.exec, &xs, |&x| {
        let (qe, ne) = q_and_n(Parity::Even, x)?;
        let (qo, no) = q_and_n(Parity::Odd, x)?;
        Ok(vec![Cell::Num(x), Cell::Num(qe), Cell::Num(qo), Cell::Num(ne), Cell::Num(no)])
    });
    let exit = first_row_failure(&results);
    Ok(Outcome {
        report: Report {
            command: "mandel-scan",
            params: params_json(&params),
            columns: vec!["x", "Q_even", "Q_odd", "N_even", "N_odd"],
            rows: into_rows(results, &xs),
            max_rel_error: None,
        },
        exit,
    })
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.param_set()?;
    let tol = cfg.tol_or(1e-7)?;
    let n_max = cfg.nmax.unwrap_or(20);
    let filter = match cfg.parity_or(Parity::Full) {
        Parity::Full => MomentFilter::All,
        Parity::Even => MomentFilter::Even,
        Parity::Odd => MomentFilter::Odd,
    };
    let case = weight_case(&params).map_err(CliError::Lib)?;
    let report = verify_moments(&case, n_max, tol, filter, cfg.exec).map_err(CliError::Lib)?;
    let rows = report
        .entries
        .iter()
        .map(|e| {
            Row::ok(vec![Cell::Int(u64::from(e.n)), Cell::Num(e.target), Cell::Num(e.value), Cell::Num(e.rel_error)])
        })
        .collect();
    let exit = if report.max_rel_error <= tol { 0 } else { 4 };
    Ok(Outcome {
        report: Report {
            command: "verify-moments",
            params: json!({ "a": params.a(), "b": params.b(), "case": case.tag.name(), "tol": tol }),
            columns: vec!["n", "target", "value", "rel_error"],
            rows,
            max_rel_error: Some(report.max_rel_error),
        },
        exit,
    })
}

pub fn sample(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.param_set()?;
    let parity = cfg.parity_or(Parity::Full);
    let x = match cfg.xs()?.as_slice() {
        [x] => *x,
        xs => return Err(CliError::Config(format!("sample needs exactly one x value, got {}", xs.len()))),
    };
    let n_samples = cfg.samples.unwrap_or(1_000_000);
    let seed = cfg.seed.unwrap_or(0);
    let state = StateSpec::with_x(params.clone(), parity, x).map_err(CliError::Lib)?;
    let counts = sample_photon_counts(&state, n_samples, seed, cfg.exec).map_err(CliError::Lib)?;
    if let Some(path) = &cfg.samples_out {
        let mut buf = String::with_capacity(counts.len() * 3);
        for c in &counts {
            buf.push_str(&c.to_string());
            buf.push('\n');
        }
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(buf.as_bytes()))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let summary = summarize_counts(&counts, parity).map_err(CliError::Lib)?;
    let analytic = mandel_q(&state).map_err(CliError::Lib)?;
    let z_score = (summary.q - analytic.q_value) / summary.q_std_error;
    let row = Row::ok(vec![
        Cell::Num(x),
        Cell::Int(summary.n_samples as u64),
        Cell::Num(summary.mean),
        Cell::Num(summary.mean_std_error),
        Cell::Num(summary.variance),
        Cell::Num(summary.q),
        Cell::Num(summary.q_std_error),
        Cell::Num(analytic.mean_n),
        Cell::Num(analytic.q_value),
        Cell::Num(z_score),
        Cell::Int(summary.parity_violations as u64),
    ]);
    let exit = if summary.parity_violations == 0 { 0 } else { 4 };
    Ok(Outcome {
        report: Report {
            command: "sample",
            params: json!({
                "a": params.a(),
                "b": params.b(),
                "parity": parity,
                "seed": seed,
            }),
            columns: vec![
                "x",
                "n_samples",
                "mean",
                "mean_std_error",
                "variance",
                "Q",
                "Q_std_error",
                "mean_exact",
                "Q_exact",
                "z_score",
                "parity_violations",
            ],
            rows: vec![row],
            max_rel_error: None,
        },
        exit,
    })
}

pub fn thermal(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let beta = cfg.beta.ok_or_else(|| CliError::Config("thermal needs --beta".into()))?;
    let omega = cfg.omega.unwrap_or(1.0);
    let spec = ThermalSpec::new(beta, omega).map_err(CliError::Lib)?;
    let r_max = cfg.nmax.unwrap_or(6);
    let n_bar = mean_occupation(&spec);
    let z = thermal_partition(&spec);
    let mut factorial = 1.0;
    let mut max_rel = 0.0f64;
    let rows = (0..=r_max)
        .map(|r| {
            if r > 0 {
                factorial *= f64::from(r);
            }
            let moment = thermal_normal_moment(&spec, r);
            let oracle = factorial * n_bar.powi(r as i32);
            let rel = if oracle == 0.0 { (moment - oracle).abs() } else { (moment / oracle - 1.0).abs() };
            max_rel = max_rel.max(rel);
            Row::ok(vec![
                Cell::Int(u64::from(r)),
                Cell::Num(moment),
                Cell::Num(oracle),
                Cell::Num(rel),
                Cell::Num(thermal_raw_moment(&spec, r)),
                Cell::Num(z),
            ])
        })
        .collect();
    let tol = cfg.tol_or(1e-12)?;
    Ok(Outcome {
        report: Report {
            command: "thermal",
            params: json!({ "beta": beta, "omega": omega, "mean_occupation": n_bar, "partition": z }),
            columns: vec!["r", "normal_moment", "factorial_form", "rel_error", "raw_moment", "partition"],
            rows,
            max_rel_error: Some(max_rel),
        },
        exit: if max_rel <= tol { 0 } else { 4 },
    })
}

pub fn metric(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.param_set()?;
    if params.p() != 1 || params.q() != 0 {
        return Err(CliError::Config(format!("metric is defined for the 1F0 family, got --params {params}")));
    }
    let a = params.a()[0];
    let xs = cfg.xs()?;
    let results = map_ordered(cfg.exec, &xs, |&x| {
        let even = metric_density(Parity::Even, a, x)?.density;
        let odd = metric_density(Parity::Odd, a, x)?.density;
        let fd = if x > METRIC_FD_STEP && x + METRIC_FD_STEP < 1.0 {
            let de = fd_check_metric(Parity::Even, a, x, METRIC_FD_STEP)?.deviation;
            let dodd = fd_check_metric(Parity::Odd, a, x, METRIC_FD_STEP)?.deviation;
            Cell::Num(de.max(dodd))
        } else {
            Cell::Missing
        };
        Ok(vec![Cell::Num(x), Cell::Num(even), Cell::Num(odd), fd])
    });
    let mut exit = first_row_failure(&results);
    let fd_exceeded = results.iter().flatten().any(|cells| matches!(cells[3], Cell::Num(d) if d > FD_TOLERANCE));
    if exit == 0 && fd_exceeded {
        exit = 4;
    }
    Ok(Outcome {
        report: Report {
            command: "metric",
            params: params_json(&params),
            columns: vec!["x", "density_even", "density_odd", "fd_deviation"],
            rows: into_rows(results, &xs),
            max_rel_error: None,
        },
        exit,
    })
}
