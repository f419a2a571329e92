//! Subcommand implementations. Each returns its table together with the
//! outcome that decides the exit status once the table is written.

use duomode_core::gaussian::{fermion_ratio, lhopital_limit};
use duomode_core::montecarlo::{estimate_contrast, sampling_grid};
use duomode_core::verify::{run_suite, Fault, SuiteConfig};
use duomode_core::{
    contrast, families::FamilyParams, run_sweep, DetectorBin, RowStatus, SweepParameter, SweepSpec, Vector,
};

use crate::args::{parse_list, parse_outputs, parse_vector, Command, LimitsArgs, ScanArgs, SimulateArgs, StateArgs, SweepKind, VerifyArgs};
use crate::table::{format_number, Cell, Table};
use crate::{CliError, EXIT_NUMERICAL, EXIT_VIOLATION};

pub type Outcome = Result<(), CliError>;

pub fn execute(command: &Command) -> Result<(Table, Outcome), CliError> {
    match command {
        Command::Scan(a) => scan(a),
        Command::Verify(a) => verify(a),
        Command::Limits(a) => limits(a),
        Command::Simulate(a) => simulate(a),
    }
}

fn fmt_vec(v: &Vector) -> String {
    let parts: Vec<String> = v.as_slice().iter().map(|x| format_number(*x)).collect();
    format!("[{}]", parts.join(";"))
}

fn state_and_meta(args: &StateArgs) -> Result<(duomode_core::TwoParticleState, String), CliError> {
    let state = args.build()?;
    let meta = format!("state={}", state.to_json());
    Ok((state, meta))
}

pub fn scan(a: &ScanArgs) -> Result<(Table, Outcome), CliError> {
    let (state, state_meta) = state_and_meta(&a.state)?;
    let dim = state.config().dimension();
    let direction = match &a.direction {
        Some(s) => parse_vector(s, "--direction")?,
        None => Vector::axis(dim, 0),
    };
    let outputs = parse_outputs(&a.outputs)?;
    let (parameter, param_meta) = match a.sweep {
        SweepKind::Separation => {
            let detector = match &a.detector {
                Some(s) => parse_vector(s, "--detector")?,
                None => Vector::zeros(dim),
            };
            (
                SweepParameter::Separation { direction, detector },
                format!("sweep=separation direction={} detector={}", fmt_vec(&direction), fmt_vec(&detector)),
            )
        }
        SweepKind::Position => (
            SweepParameter::Position { direction },
            format!("sweep=position direction={}", fmt_vec(&direction)),
        ),
    };
    let spec = SweepSpec::new(state, parameter, a.start, a.stop, a.steps, outputs.clone())?;
    let rows = run_sweep(&spec)?;

    let names: Vec<&str> = outputs.iter().map(|o| o.name()).collect();
    let meta = format!(
        "duomode scan {param_meta} start={} stop={} steps={} outputs={} seed=none {state_meta}",
        format_number(a.start),
        format_number(a.stop),
        a.steps,
        names.join(";"),
    );
    let label = match a.sweep {
        SweepKind::Separation => "delta",
        SweepKind::Position => "t",
    };
    let mut header = vec![label.to_string(), "status".to_string()];
    header.extend(names.iter().map(|s| s.to_string()));
    let mut table = Table::new(meta, header);
    let mut truncated = 0usize;
    for row in &rows {
        truncated += usize::from(row.truncation_warning);
        let mut cells = vec![Cell::Num(row.parameter), Cell::Text(row.status.label().into())];
        for v in &row.values {
            cells.push(match v {
                Some(x) if x.is_finite() => Cell::Num(*x),
                Some(_) => Cell::Text("singular".into()),
                None => Cell::Text(
                    if row.status == RowStatus::Ok {
                        "singular"
                    } else {
                        row.status.label()
                    }
                    .into(),
                ),
            });
        }
        table.push(cells);
    }
    let outcome = if truncated > 0 {
        Err(CliError::Flagged {
            code: EXIT_NUMERICAL,
            message: format!("{truncated} rows lost norm mass to grid truncation"),
        })
    } else {
        Ok(())
    };
    Ok((table, outcome))
}

pub fn verify(a: &VerifyArgs) -> Result<(Table, Outcome), CliError> {
    if a.families == 0 {
        return Err(CliError::Usage("--families must be positive".into()));
    }
    let cfg = SuiteConfig {
        families: a.families,
        seed: a.seed,
        fermion_beta_cap: a.beta_cap,
        params: FamilyParams {
            dimension: a.dimension,
            ..FamilyParams::default()
        },
        fault: a.inject_fault.then_some(Fault::FlipFermionNormSign),
    };
    let results = run_suite(&cfg)?;
    let meta = format!(
        "duomode verify families={} seed={} beta_cap={} dimension={} fault={}",
        a.families,
        a.seed,
        format_number(a.beta_cap),
        a.dimension,
        if a.inject_fault { "flip_fermion_norm_sign" } else { "none" },
    );
    let header = ["check", "evaluated", "violations", "worst_margin", "tolerance", "status"];
    let mut table = Table::new(meta, header.iter().map(|s| s.to_string()).collect());
    let mut failed = Vec::new();
    for r in &results {
        if !r.passed() {
            failed.push(r.check.name());
        }
        table.push(vec![
            Cell::Text(r.check.name().into()),
            Cell::Int(r.evaluated as u64),
            Cell::Int(r.violations as u64),
            if r.worst_margin.is_finite() {
                Cell::Num(r.worst_margin)
            } else {
                Cell::Text("none".into())
            },
            Cell::Num(r.check.tolerance()),
            Cell::Text(if r.passed() { "pass" } else { "fail" }.into()),
        ]);
    }
    let outcome = if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Flagged {
            code: EXIT_VIOLATION,
            message: format!("violated invariants: {}", failed.join(", ")),
        })
    };
    Ok((table, outcome))
}

pub fn limits(a: &LimitsArgs) -> Result<(Table, Outcome), CliError> {
    let r = parse_vector(&a.r, "--r")?;
    let directions: Vec<Vector> = match &a.directions {
        Some(s) => s
            .split(';')
            .map(|d| parse_vector(d, "--directions"))
            .collect::<Result<_, _>>()?,
        None => (0..r.dim()).map(|k| Vector::axis(r.dim(), k)).collect(),
    };
    let ts = parse_list(&a.t, "--t")?;
    if ts.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(CliError::Usage("--t values must be positive".into()));
    }
    let meta = format!(
        "duomode limits r={} q={} hbar={} directions={} t_over_q={} seed=none",
        fmt_vec(&r),
        format_number(a.q),
        format_number(a.hbar),
        directions.iter().map(fmt_vec).collect::<Vec<_>>().join(""),
        ts.iter().map(|t| format_number(*t)).collect::<Vec<_>>().join(";"),
    );
    let header = ["direction", "t", "F", "limit", "residual", "residual_over_t2"];
    let mut table = Table::new(meta, header.iter().map(|s| s.to_string()).collect());
    for u in &directions {
        let limit = lhopital_limit(u, &r, a.q, a.hbar)?;
        for &t_rel in &ts {
            let t = t_rel * a.q;
            let f = fermion_ratio(&u.scale(t), &r, a.q, a.hbar)?;
            let residual = (f - limit).abs();
            table.push(vec![
                Cell::Text(fmt_vec(u)),
                Cell::Num(t),
                Cell::Num(f),
                Cell::Num(limit),
                Cell::Num(residual),
                Cell::Num(residual / (t * t)),
            ]);
        }
    }
    Ok((table, Ok(())))
}

pub fn simulate(a: &SimulateArgs) -> Result<(Table, Outcome), CliError> {
    let (state, state_meta) = state_and_meta(&a.state)?;
    let dim = state.config().dimension();
    let center = match &a.bin_center {
        Some(s) => parse_vector(s, "--bin-center")?,
        None => Vector::zeros(dim),
    };
    if a.replications == 0 {
        return Err(CliError::Usage("--replications must be positive".into()));
    }
    let bin = DetectorBin::cube(center, a.half_width)?;
    let mode_grid = state.mode_grid()?;
    let position_grid = sampling_grid(&state, &bin)?;
    let analytic = contrast(&state, &center, &mode_grid)?;
    let meta = format!(
        "duomode simulate bin_center={} half_width={} n={} seed={} replications={} {state_meta}",
        fmt_vec(&center),
        format_number(a.half_width),
        a.n,
        a.seed,
        a.replications,
    );
    let header = [
        "replication", "seed", "c_hat", "sigma", "c_analytic", "z", "n", "pair_count", "f_count", "g_count",
    ];
    let mut table = Table::new(meta, header.iter().map(|s| s.to_string()).collect());
    for i in 0..a.replications {
        let seed = a.seed.wrapping_add(i as u64);
        let est = estimate_contrast(&state, &bin, a.n, seed, &position_grid, &mode_grid)?;
        let z = if est.standard_error > 0.0 {
            Cell::Num((est.contrast - analytic) / est.standard_error)
        } else {
            Cell::Text("singular".into())
        };
        table.push(vec![
            Cell::Int(i as u64),
            Cell::Int(seed),
            Cell::Num(est.contrast),
            Cell::Num(est.standard_error),
            Cell::Num(analytic),
            z,
            Cell::Int(a.n as u64),
            Cell::Int(est.pair.in_bin_count),
            Cell::Int(est.f_only.in_bin_count),
            Cell::Int(est.g_only.in_bin_count),
        ]);
    }
    Ok((table, Ok(())))
}
