use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use plancherel::asymptotics::{
    bulk_ladder, edge_ladder, first_row_samples, BulkScalingSpec, Convergence, CurveFamily, EdgeScalingSpec,
};
use plancherel::dynamics::{sample_m_theta, simulate_batch, InitialCondition};
use plancherel::io::ArtifactHeader;
use plancherel::kernels::{
    discrete_bessel_ratio, extended_kernel_contour, extended_kernel_series, ContourSpec, KernelRow,
};
use plancherel::partitions::poissonized_weight;
use plancherel::rng::StreamId;
use plancherel::rsk::{shape_process_along, PoissonRealization, RskMode};
use plancherel::verify::{Suite, SuiteReport, Verdict};
use plancherel::{parse_range, AdmissibleCurve, PlanarConfiguration, Trajectory, YoungDiagram};

use crate::args::*;
use crate::output::{config_echo, extension, write_json, Clock, Document, Target};
use crate::{usage, Outcome};

fn header<T: Serialize>(command: &str, seed: Option<u64>, args: &T, format: Format) -> ArtifactHeader {
    let mut cfg = config_echo(args);
    cfg.insert("format".into(), extension(format).into());
    ArtifactHeader::new(command, seed, cfg)
}

fn format_or(g: &Global, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
    let f = g.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(usage(format!("{command} cannot write {}", extension(f))));
    }
    Ok(f)
}

fn curve_of(curve: &Option<String>, theta: Option<f64>) -> Result<AdmissibleCurve> {
    match (curve, theta) {
        (Some(c), None) => c.parse().map_err(|e| usage(format!("--curve: {e}"))),
        (None, Some(t)) => AdmissibleCurve::hyperbola(t).map_err(|e| usage(format!("--theta: {e}"))),
        (None, None) => Err(usage("one of --curve or --theta is required")),
        (Some(_), Some(_)) => Err(usage("--curve and --theta are mutually exclusive")),
    }
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|_| usage(format!("--{flag}: cannot parse {p:?}"))))
        .collect()
}

pub fn run(g: &Global, command: &Command) -> Result<Outcome> {
    let clock = Clock::start();
    let (artifacts, outcome) = match command {
        Command::Sample(a) => (sample(g, a)?, Outcome::Done),
        Command::Simulate(a) => (simulate(g, a)?, Outcome::Done),
        Command::Rsk(a) => (rsk(g, a)?, Outcome::Done),
        Command::Kernel(a) => (kernel(g, a)?, Outcome::Done),
        Command::Limits(a) => (limits(g, a)?, Outcome::Done),
        Command::Verify(a) => verify(g, a)?,
    };
    clock.finish(&artifacts)?;
    Ok(outcome)
}

fn files(target: &Target) -> Vec<PathBuf> {
    target.path().map(|p| vec![p.to_path_buf()]).unwrap_or_default()
}

#[derive(Serialize)]
struct ShapeRow {
    shape: String,
    size: usize,
    count: u64,
    frequency: f64,
    exact: f64,
}

#[derive(Serialize)]
struct Rows<T> {
    rows: Vec<T>,
}

fn sample(g: &Global, a: &SampleArgs) -> Result<Vec<PathBuf>> {
    if !(a.theta > 0.0 && a.theta.is_finite()) {
        return Err(usage("--theta must be positive"));
    }
    if a.n == 0 {
        return Err(usage("--n must be positive"));
    }
    let format = format_or(g, Format::Csv, &[Format::Csv, Format::Json], "sample")?;
    let counts = (0..a.n as u64)
        .into_par_iter()
        .try_fold(BTreeMap::new, |mut m: BTreeMap<YoungDiagram, u64>, i| {
            let d = sample_m_theta(a.theta, &mut StreamId::new(g.seed, i).rng())?;
            *m.entry(d).or_default() += 1;
            Ok::<_, plancherel::Error>(m)
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_default() += v;
            }
            Ok(x)
        })?;
    let mut rows = counts
        .into_iter()
        .map(|(d, count)| {
            Ok(ShapeRow {
                shape: d.to_string(),
                size: d.size(),
                count,
                frequency: count as f64 / a.n as f64,
                exact: poissonized_weight(a.theta, &d)?,
            })
        })
        .collect::<plancherel::Result<Vec<_>>>()?;
    rows.sort_by(|x, y| y.count.cmp(&x.count).then(x.size.cmp(&y.size)).then(x.shape.cmp(&y.shape)));
    let h = header("sample", Some(g.seed), a, format);
    let target = Target::resolve(g.out.as_deref(), &format!("sample.{}", extension(format)));
    let mut out = target.open()?;
    match format {
        Format::Csv => plancherel::io::write_csv_rows(&mut out, &h, &rows)?,
        _ => write_json(&mut out, &Document { header: &h, body: Rows { rows } })?,
    }
    out.flush()?;
    Ok(files(&target))
}

#[derive(Serialize)]
struct EventRow<'a> {
    trajectory: usize,
    t: f64,
    state: &'a YoungDiagram,
    size: usize,
}

/// JSONL: artifact header line, then each trajectory as its own header line
/// followed by its events. CSV: one row per state including the initial one.
fn write_trajectories(
    g: &Global,
    h: &ArtifactHeader,
    format: Format,
    name: &str,
    curve: &str,
    source: &str,
    trs: &[Trajectory],
) -> Result<Vec<PathBuf>> {
    let target = Target::resolve(g.out.as_deref(), &format!("{name}.{}", extension(format)));
    let mut out = target.open()?;
    match format {
        Format::Jsonl => {
            serde_json::to_writer(&mut out, h)?;
            out.write_all(b"\n")?;
            for tr in trs {
                let th = tr.header(curve, Some(source));
                tr.write_jsonl(&mut out, &th)?;
            }
        }
        _ => {
            let mut rows = Vec::new();
            for (i, tr) in trs.iter().enumerate() {
                rows.push(EventRow {
                    trajectory: i,
                    t: tr.initial_time,
                    state: &tr.initial_state,
                    size: tr.initial_state.size(),
                });
                for (t, s) in &tr.events {
                    rows.push(EventRow {
                        trajectory: i,
                        t: *t,
                        state: s,
                        size: s.size(),
                    });
                }
            }
            h.write_comment(&mut out)?;
            let mut w = csv_writer(&mut out);
            w.write_record(["trajectory", "t", "state", "size"])?;
            for r in rows {
                w.write_record([r.trajectory.to_string(), r.t.to_string(), r.state.to_string(), r.size.to_string()])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(files(&target))
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(out)
}

fn check_times(t0: f64, t1: f64) -> Result<()> {
    if !(t0 < t1) {
        return Err(usage(format!("need --t0 < --t1, got {t0} and {t1}")));
    }
    Ok(())
}

fn simulate(g: &Global, a: &SimulateArgs) -> Result<Vec<PathBuf>> {
    let curve = curve_of(&a.curve, a.theta)?;
    check_times(a.t0, a.t1)?;
    if a.n_trajectories == 0 {
        return Err(usage("--n-trajectories must be positive"));
    }
    let initial = match &a.initial {
        Some(s) => InitialCondition::Given(s.parse().map_err(|e| usage(format!("--initial: {e}")))?),
        None => InitialCondition::DrawFromMTheta,
    };
    let format = format_or(g, Format::Jsonl, &[Format::Jsonl, Format::Csv], "simulate")?;
    let trs = simulate_batch(&curve, a.t0, a.t1, &initial, g.seed, 0, a.n_trajectories)?;
    let h = header("simulate", Some(g.seed), a, format);
    write_trajectories(g, &h, format, "simulate", &curve.to_string(), "dynamics", &trs)
}

fn rsk(g: &Global, a: &RskArgs) -> Result<Vec<PathBuf>> {
    let curve = curve_of(&a.curve, a.theta)?;
    check_times(a.t0, a.t1)?;
    let mode = match a.mode {
        ModeArg::Incremental => RskMode::Incremental,
        ModeArg::FromScratch => RskMode::FromScratch,
    };
    let format = format_or(g, Format::Jsonl, &[Format::Jsonl, Format::Csv], "rsk")?;
    let (trs, seed) = match &a.points {
        Some(path) => {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let pi = PlanarConfiguration::read_csv(BufReader::new(f))?;
            (vec![shape_process_along(&pi, &curve, a.t0, a.t1, mode)?], None)
        }
        None => {
            let n = a.n_trajectories.unwrap_or(1);
            if n == 0 {
                return Err(usage("--n-trajectories must be positive"));
            }
            let trs = (0..n as u64)
                .into_par_iter()
                .map(|i| PoissonRealization::new(StreamId::new(g.seed, i)).shape_process(&curve, a.t0, a.t1, mode))
                .collect::<plancherel::Result<Vec<_>>>()?;
            (trs, Some(g.seed))
        }
    };
    let h = header("rsk", seed, a, format);
    write_trajectories(g, &h, format, "rsk", &curve.to_string(), "rsk", &trs)
}

fn kernel(g: &Global, a: &KernelArgs) -> Result<Vec<PathBuf>> {
    let grid = parse_range(&a.grid).map_err(|e| usage(format!("--grid: {e}")))?;
    let theta_t = a.theta_t.unwrap_or(a.theta);
    for th in [a.theta, theta_t] {
        if !(th > 0.0 && th.is_finite()) {
            return Err(usage("θ must be positive"));
        }
    }
    let equal = a.s == a.t && a.theta == theta_t;
    let method = a.method.unwrap_or(if equal { MethodArg::Ratio } else { MethodArg::Series });
    if method == MethodArg::Ratio && !equal {
        return Err(usage("--method ratio needs equal times and a single θ"));
    }
    let format = format_or(g, Format::Csv, &[Format::Csv, Format::Json], "kernel")?;
    let pairs: Vec<_> = grid.iter().flat_map(|&x| grid.iter().map(move |&y| (x, y))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(x, y)| {
            let v = match method {
                MethodArg::Ratio => discrete_bessel_ratio(a.theta, x, y)?,
                MethodArg::Series => extended_kernel_series(a.theta, theta_t, a.s, a.t, x, y)?,
                MethodArg::Contour => {
                    extended_kernel_contour(a.theta, theta_t, a.s, a.t, x, y, ContourSpec::default_for(a.s, a.t))?.0
                }
            };
            Ok(KernelRow::new(a.s, x, a.t, y, v))
        })
        .collect::<plancherel::Result<Vec<_>>>()?;
    let h = header("kernel", None, a, format);
    let target = Target::resolve(g.out.as_deref(), &format!("kernel.{}", extension(format)));
    let mut out = target.open()?;
    match format {
        Format::Csv => {
            h.write_comment(&mut out)?;
            plancherel::kernels::write_kernel_table(&mut out, &rows)?;
        }
        _ => write_json(&mut out, &Document { header: &h, body: Rows { rows } })?,
    }
    out.flush()?;
    Ok(files(&target))
}

fn limits(g: &Global, a: &LimitsArgs) -> Result<Vec<PathBuf>> {
    let thetas: Vec<f64> = parse_list("thetas", &a.thetas)?;
    let taus: Vec<f64> = parse_list("taus", &a.taus)?;
    if thetas.is_empty() || taus.is_empty() {
        return Err(usage("--thetas and --taus must be non-empty"));
    }
    if thetas.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(usage("--thetas must be positive"));
    }
    let format = format_or(g, Format::Csv, &[Format::Csv, Format::Json], "limits")?;
    let name = match a.kind {
        LimitKind::Bulk => "limits-bulk",
        LimitKind::Edge => "limits-edge",
        LimitKind::FirstRow => "limits-first-row",
    };
    let target = Target::resolve(g.out.as_deref(), &format!("{name}.{}", extension(format)));
    if a.plot && target.path().is_none() {
        return Err(usage("--plot needs a file output (--out or $PLANCHEREL_OUT_DIR)"));
    }
    let seeded = a.kind == LimitKind::FirstRow;
    let h = header("limits", seeded.then_some(g.seed), a, format);
    let mut out = target.open()?;
    match a.kind {
        LimitKind::Bulk | LimitKind::Edge => {
            let conv: Convergence = if a.kind == LimitKind::Bulk {
                if !(a.c.abs() < 2.0) {
                    return Err(usage("--c must lie in (-2, 2)"));
                }
                let xs: Vec<i64> = parse_list("xs", a.xs.as_deref().unwrap_or("-1,0,1,2"))?;
                bulk_ladder(&BulkScalingSpec::grid(a.c, thetas[0], &xs, &taus), &thetas)?
            } else {
                let xs: Vec<f64> = parse_list("xs", a.xs.as_deref().unwrap_or("-2,-1,0,1"))?;
                edge_ladder(&EdgeScalingSpec::grid(thetas[0], &xs, &taus), &thetas)?
            };
            for (t, w) in thetas.iter().zip(conv.worst()) {
                eprintln!("theta={t} worst={w:e}");
            }
            match format {
                Format::Csv => {
                    h.write_comment(&mut out)?;
                    conv.write_csv(&mut out)?;
                }
                _ => write_json(&mut out, &Document { header: &h, body: &conv })?,
            }
        }
        LimitKind::FirstRow => {
            let family: CurveFamily = a.family.parse().map_err(|e| usage(format!("--family: {e}")))?;
            if a.n_trajectories < 2 {
                return Err(usage("--n-trajectories must be at least 2"));
            }
            let samples = thetas
                .iter()
                .enumerate()
                .map(|(k, &th)| first_row_samples(family, th, &taus, g.seed, (k * a.n_trajectories) as u64, a.n_trajectories))
                .collect::<plancherel::Result<Vec<_>>>()?;
            match format {
                Format::Csv => {
                    h.write_comment(&mut out)?;
                    let mut w = csv_writer(&mut out);
                    w.write_record(["theta", "trajectory", "tau", "sample"])?;
                    for s in &samples {
                        for (i, row) in s.samples.iter().enumerate() {
                            for (tau, v) in s.taus.iter().zip(row) {
                                w.write_record([s.theta.to_string(), i.to_string(), tau.to_string(), v.to_string()])?;
                            }
                        }
                    }
                    w.flush()?;
                }
                _ => write_json(&mut out, &Document { header: &h, body: Rows { rows: samples } })?,
            }
        }
    }
    out.flush()?;
    drop(out);
    let mut made = files(&target);
    if a.plot {
        let script = target.sibling("gp").expect("file target");
        fs::write(&script, gnuplot(a.kind, target.path().expect("file target"), format))?;
        made.push(script);
    }
    Ok(made)
}

fn gnuplot(kind: LimitKind, data: &std::path::Path, format: Format) -> String {
    let file = data.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\n");
    if format != Format::Csv {
        s += "# the data file is JSON; rerun limits with --format csv to plot it\n";
    }
    match kind {
        LimitKind::Bulk | LimitKind::Edge => {
            s += "set logscale xy\nset xlabel 'theta'\nset ylabel 'abs error'\n";
            s += &format!("plot '{file}' using 1:6 with points pt 7 title 'entrywise error'\n");
        }
        LimitKind::FirstRow => {
            s += "set xlabel 'L'\nset ylabel 'density'\n";
            s += &format!("plot '{file}' using 4:(1) smooth kdensity title 'first row'\n");
        }
    }
    s += "pause mouse close\n";
    s
}

#[derive(Serialize)]
struct VerdictFile<'a> {
    suite: String,
    pass: bool,
    worst_z: Option<f64>,
    header: &'a ArtifactHeader,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    suites: Vec<Verdict>,
}

fn verify(g: &Global, a: &VerifyArgs) -> Result<(Vec<PathBuf>, Outcome)> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|e| usage(format!("--suite: {e}")))?]
    };
    let format = format_or(g, Format::Json, &[Format::Json], "verify")?;
    let target = Target::resolve(g.out.as_deref(), &format!("verify-{}.json", a.suite));
    let h = header("verify", Some(g.seed), a, format);
    let mut made = Vec::new();
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        let r = s.run(g.seed)?;
        eprintln!(
            "suite {}: {}{}",
            r.suite,
            if r.pass { "pass" } else { "FAIL" },
            r.worst_z.map(|z| format!(" worst |z| = {z:.3}")).unwrap_or_default()
        );
        if let Some(path) = target.sibling(&format!("{}.csv", s.name())) {
            let mut f = Target::File(path.clone()).open()?;
            h.write_comment(&mut f)?;
            r.write_csv(&mut f)?;
            f.flush()?;
            made.push(path);
        }
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    let worst_z = reports.iter().filter_map(|r| r.worst_z).reduce(f64::max);
    let file = VerdictFile {
        suite: a.suite.clone(),
        pass,
        worst_z,
        header: &h,
        suites: if reports.len() > 1 {
            reports.iter().map(SuiteReport::verdict).collect()
        } else {
            Vec::new()
        },
    };
    if let Target::File(_) = target {
        write_json(target.open()?, &file)?;
        made.push(target.path().expect("file target").to_path_buf());
    }
    let line = serde_json::to_string(&serde_json::json!({"suite": file.suite, "pass": pass, "worst_z": worst_z}))?;
    println!("{line}");
    Ok((made, if pass { Outcome::Done } else { Outcome::SuiteFailed }))
}
