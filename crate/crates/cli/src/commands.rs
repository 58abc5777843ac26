use std::io::Write;
use std::path::Path;

use fibwalk::analytics::closed_form::{homogeneous_params, homogeneous_x0};
use fibwalk::fibcore::TauTable;
use fibwalk::oracle::{
    is_absorbing, proportion_stderr, simulate as run_simulation, solve_arrivals_direct, solve_time_direct, SimConfig,
};
use fibwalk::{
    analyze as run_analysis, expected_arrivals, expected_time, report_from_arrivals, Error, Method, MethodTag, WalkSpec64,
};

use crate::report::{Report, Value};
use crate::spec_doc::{read_spec, SpecDocument};
use crate::{AnalyzeArgs, CliError, SimulateArgs, TablesArgs, VerifyArgs};

/// Tolerance for the continuant row of `verify` on homogeneous specs.
pub const CONTINUANT_TOL: f64 = 1e-12;

/// Relative size of the perturbation applied by `--inject-fault`.
const FAULT_SIZE: f64 = 1e-3;

fn load(path: &Path, start: Option<usize>) -> Result<(SpecDocument, WalkSpec64, usize), CliError> {
    let doc = read_spec(path)?;
    let spec = doc.to_spec()?;
    let start = start.or(doc.start).unwrap_or(0);
    spec.check_state(start)?;
    Ok((doc, spec, start))
}

fn title(doc: &SpecDocument, what: &str, start: usize) -> String {
    match &doc.name {
        Some(name) => format!("{what}: {name} (N = {}, start {start})", doc.p.len() - 1),
        None => format!("{what} (N = {}, start {start})", doc.p.len() - 1),
    }
}

fn require_absorbing(spec: &WalkSpec64, start: usize) -> Result<(), CliError> {
    if is_absorbing(spec, start) {
        Ok(())
    } else {
        Err(Error::Divergent.into())
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// NaN counts as a breach.
fn exceeds(value: f64, tol: f64) -> bool {
    value.is_nan() || value > tol
}

pub fn analyze(args: &AnalyzeArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let (doc, spec, start) = load(&args.spec, args.start)?;
    require_absorbing(&spec, start)?;
    let a = run_analysis(&spec, start, Method::from(args.method))?;

    let mut report = Report::new(title(&doc, "analyze", start), &["j", "x", "f", "g", "m"]);
    for j in 0..spec.len() {
        report.row(vec![j.into(), a.arrivals.x[j].into(), a.visits[j].into(), a.absorption.g[j].into(), a.time.m[j].into()]);
    }
    report.note("start", start);
    report.note("u", a.absorption.u);
    report.note("leak_left", a.absorption.leak_left);
    report.note("leak_right", a.absorption.leak_right);
    let tags = [&a.arrivals.method, &a.time.method];
    let method = if tags.iter().all(|t| t.method == Method::Fibonacci) { Method::Fibonacci } else { Method::Direct };
    report.note("method", method.to_string());
    let reasons: Vec<&str> = tags.iter().filter_map(|t: &&MethodTag| t.fallback.as_deref()).collect();
    if let Some(reason) = reasons.first() {
        let _ = writeln!(err, "fibwalk: note: fibonacci path unavailable, used the direct solver: {reason}");
        report.note("fallback", *reason);
    }
    Ok(report.render(args.format))
}

pub fn simulate(args: &SimulateArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let (doc, spec, start) = load(&args.spec, args.start)?;
    // every trial of a walk that is never absorbed would run to max_steps
    require_absorbing(&spec, start)?;
    let config = SimConfig::new(args.trials, args.seed).with_max_steps(args.max_steps).with_workers(args.workers);
    let sim = run_simulation(&spec, start, config);

    let mut report = Report::new(title(&doc, "simulate", start), &["j", "g", "g_se", "x", "x_se"]);
    for j in 0..spec.len() {
        let g = sim.absorb_fraction(j);
        report.row(vec![
            j.into(),
            g.into(),
            proportion_stderr(g, sim.trials).into(),
            sim.visit_means[j].into(),
            sim.visit_stderr[j].into(),
        ]);
    }
    let u = sim.absorb_total_fraction();
    let (left, right) = (sim.exit_left_fraction(), sim.exit_right_fraction());
    report.note("start", start);
    report.note("trials", sim.trials);
    report.note("seed", sim.seed);
    report.note("u", u);
    report.note("u_se", proportion_stderr(u, sim.trials));
    report.note("leak_left", left);
    report.note("leak_left_se", proportion_stderr(left, sim.trials));
    report.note("leak_right", right);
    report.note("leak_right_se", proportion_stderr(right, sim.trials));
    report.note("mean_steps", sim.mean_steps);
    report.note("mean_steps_se", sim.stderr_steps);
    report.note("truncated", sim.truncated);
    if sim.truncated > 0 {
        let _ = writeln!(
            err,
            "fibwalk: warning: {} trials hit --max-steps {} and are left out of mean_steps",
            sim.truncated, args.max_steps
        );
    }
    Ok(report.render(args.format))
}

/// One compared quantity in `verify`.
struct Check {
    name: String,
    direct: f64,
    fibonacci: Option<f64>,
    continuant: Option<f64>,
    /// Simulated value and its standard error.
    simulated: Option<(f64, f64)>,
}

impl Check {
    fn new(name: String, direct: f64, fibonacci: Option<f64>) -> Self {
        Self { name, direct, fibonacci, continuant: None, simulated: None }
    }

    fn z(&self) -> Option<f64> {
        let (value, se) = self.simulated?;
        let diff = (value - self.direct).abs();
        Some(if se > 0.0 {
            diff / se
        } else if diff <= 1e-9 * self.direct.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        })
    }
}

pub fn verify(args: &VerifyArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let (doc, spec, start) = load(&args.spec, args.start)?;
    require_absorbing(&spec, start)?;
    let n = spec.last();

    let dx = solve_arrivals_direct(&spec, start)?;
    let dr = report_from_arrivals(&spec, &dx);
    let dm = solve_time_direct(&spec)?;

    let fib = match (expected_arrivals(&spec, start, Method::Fibonacci), expected_time(&spec, start, Method::Fibonacci)) {
        (Ok(x), Ok(m)) => Ok((report_from_arrivals(&spec, &x), x, m)),
        (Err(Error::Degenerate(why)), _) | (_, Err(Error::Degenerate(why))) => Err(why),
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    if let Err(why) = &fib {
        let _ = writeln!(err, "fibwalk: note: skipping the fibonacci path: {why}");
    }
    let fib = fib.as_ref().ok();

    let config = SimConfig::new(args.trials, args.seed).with_max_steps(args.max_steps).with_workers(args.workers);
    let sim = run_simulation(&spec, start, config);
    let trials = sim.trials;

    let mut checks = Vec::new();
    for j in 0..=n {
        let mut c = Check::new(format!("x[{j}]"), dx.x[j], fib.map(|f| f.1.x[j]));
        c.simulated = Some((sim.visit_means[j], sim.visit_stderr[j]));
        checks.push(c);
    }
    if start == 0 {
        if let Some((p, q)) = homogeneous_params(&spec, 1e-12) {
            checks[0].continuant = Some(homogeneous_x0(p, q, n));
        }
    }
    for j in 0..=n {
        let mut c = Check::new(format!("g[{j}]"), dr.g[j], fib.map(|f| f.0.g[j]));
        c.simulated = Some((sim.absorb_fraction(j), proportion_stderr(dr.g[j], trials)));
        checks.push(c);
    }
    let proportion = |name: &str, direct: f64, fibonacci: Option<f64>, simulated: f64| {
        let mut c = Check::new(name.to_string(), direct, fibonacci);
        c.simulated = Some((simulated, proportion_stderr(direct, trials)));
        c
    };
    checks.push(proportion("leak_left", dr.leak_left, fib.map(|f| f.0.leak_left), sim.exit_left_fraction()));
    checks.push(proportion("leak_right", dr.leak_right, fib.map(|f| f.0.leak_right), sim.exit_right_fraction()));
    checks.push(proportion("u", dr.u, fib.map(|f| f.0.u), sim.absorb_total_fraction()));
    for j in 0..=n {
        let mut c = Check::new(format!("m[{j}]"), dm.m[j], fib.map(|f| f.2.m[j]));
        if j == start && sim.truncated == 0 {
            c.simulated = Some((sim.mean_steps, sim.stderr_steps));
        }
        checks.push(c);
    }

    if let Some(target) = &args.inject_fault {
        let check = checks
            .iter_mut()
            .find(|c| &c.name == target)
            .ok_or_else(|| CliError::Usage(format!("--inject-fault: no quantity named {target}")))?;
        let value =
            check.fibonacci.as_mut().ok_or_else(|| CliError::Usage("--inject-fault needs the fibonacci path".to_string()))?;
        *value = *value * (1.0 + FAULT_SIZE) + FAULT_SIZE;
    }

    let mut report = Report::new(
        title(&doc, "verify", start),
        &["quantity", "direct", "fibonacci", "continuant", "rel_dev", "simulated", "stderr", "z", "status"],
    );
    let mut offenders = Vec::new();
    let (mut max_dev, mut max_cont, mut max_z) = (0.0f64, 0.0f64, 0.0f64);
    for c in &checks {
        let dev = c.fibonacci.map(|f| rel_dev(f, c.direct));
        let cont = c.continuant.map(|v| rel_dev(v, c.direct));
        let z = c.z();
        let mut bad = Vec::new();
        if let Some(d) = dev.filter(|&d| exceeds(d, args.tol_analytic)) {
            bad.push("fibonacci");
            offenders.push(format!("{}: fibonacci deviates from direct by {d:.3e} > {:e}", c.name, args.tol_analytic));
        }
        if let Some(d) = cont.filter(|&d| exceeds(d, CONTINUANT_TOL)) {
            bad.push("continuant");
            offenders.push(format!("{}: continuant form deviates from direct by {d:.3e} > {CONTINUANT_TOL:e}", c.name));
        }
        if let Some(z) = z.filter(|&z| exceeds(z, args.tol_sigma)) {
            bad.push("simulation");
            offenders.push(format!("{}: simulation is {z:.2} standard errors from direct > {}", c.name, args.tol_sigma));
        }
        max_dev = max_dev.max(dev.unwrap_or(0.0));
        max_cont = max_cont.max(cont.unwrap_or(0.0));
        max_z = max_z.max(z.unwrap_or(0.0));
        let status = if bad.is_empty() { "ok".to_string() } else { format!("BREACH: {}", bad.join("+")) };
        report.row(vec![
            c.name.as_str().into(),
            c.direct.into(),
            c.fibonacci.into(),
            c.continuant.into(),
            dev.into(),
            c.simulated.map(|s| s.0).into(),
            c.simulated.map(|s| s.1).into(),
            z.into(),
            status.into(),
        ]);
    }
    report.note("start", start);
    report.note("trials", trials);
    report.note("seed", sim.seed);
    report.note("fibonacci", if fib.is_some() { "ran" } else { "skipped" });
    report.note("max_rel_dev", max_dev);
    if checks.iter().any(|c| c.continuant.is_some()) {
        report.note("max_continuant_dev", max_cont);
    }
    report.note("max_z", max_z);
    report.note("tol_analytic", args.tol_analytic);
    report.note("tol_sigma", args.tol_sigma);
    report.note("truncated", sim.truncated);
    report.note("verdict", if offenders.is_empty() { "pass" } else { "fail" });
    let text = report.render(args.format);
    if offenders.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Breach { report: text, offenders })
    }
}

pub fn tables(args: &TablesArgs) -> String {
    let table = TauTable::build(usize::from(args.order));
    let grid = table.grid();
    let width = grid[0].len();
    let labels: Vec<String> = std::iter::once("row".to_string()).chain((1..=width).map(|j| j.to_string())).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut report = Report::new(format!("tau table of order {}", args.order), &labels);
    for (i, row) in grid.iter().enumerate() {
        let index = if table.order() == 0 { 0 } else { i + 1 };
        let cells = row.iter().map(|c| Value::Text(if args.ascii { c.ascii() } else { c.to_string() }));
        report.row(std::iter::once(Value::from(index)).chain(cells).collect());
    }
    report.note("order", table.order());
    report.note("columns", width);
    report.render(args.format)
}
