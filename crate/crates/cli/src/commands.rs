//! Subcommand implementations. Each returns the report to print and the
//! process exit code, or a [`CliError`] carrying its own code.

use std::fs;
use std::path::Path;

use gleason_core::density::{purity, spectral_mixture, DensityOperator};
use gleason_core::frame::{
    classify, from_density, reconstruct_form, reconstruct_from_samples, signature, FrameFunction,
    FrameOracle, ORACLE_CONSISTENCY_TOL,
};
use gleason_core::greechie::{
    check_realization, convex_decomposition, enumerate_two_valued_states, is_polytope_vertex,
    max_block_overlap, quantum_feasibility, validate_state, Certificate, Decomposition,
    Feasibility, RealizationViolation, StateViolation,
};
use gleason_core::Error as CoreError;

use crate::greechie_format::{parse_greechie, GreechieFile};
use crate::matrix_format::{looks_like_matrix, parse_matrix, parse_probe_table};
use crate::report::{entry, record, Report, Value};
use crate::CliError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 5;

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, exit: EXIT_OK }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GreechieAction {
    Check,
    TwoValued,
    Decompose,
    Feasibility,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_form(path: &Path) -> Result<FrameFunction, CliError> {
    Ok(FrameFunction::new(parse_matrix(&read(path)?)?.to_sym()?))
}

pub fn density_to_frame(path: &Path, tol: f64) -> Result<Outcome, CliError> {
    let m = parse_matrix(&read(path)?)?.to_sym()?;
    let rho = DensityOperator::with_tol(m, tol)?;
    let f = from_density(&rho);
    let p = purity(&rho);
    let mut r = Report::new("density-to-frame");
    r.input("path", path.display().to_string())
        .verdict("form", f.form())
        .verdict("frame_function", format!("f(x) = {}", f.expanded(6)))
        .verdict("weight", f.weight())
        .verdict("pure", p.is_pure)
        .verdict("tr_rho_sq", p.tr_rho_sq);
    Ok(Outcome::ok(r))
}

/// Reconstructs from a form file or a probe table.
pub fn reconstruct(path: &Path, tol: f64, command: &str) -> Result<Outcome, CliError> {
    let text = read(path)?;
    let mut r = Report::new(command);
    r.input("path", path.display().to_string());
    let frame = if looks_like_matrix(&text) {
        let given = FrameFunction::new(parse_matrix(&text)?.to_sym()?);
        r.input("source", "form matrix").input("form", given.form());
        let oracle = FrameOracle::from_frame(&given);
        let rebuilt = reconstruct_form(&oracle).map_err(|e| match e {
            CoreError::NotAFrameFunction { .. } => CliError::Inconsistent(e.to_string()),
            other => other.into(),
        });
        rebuilt?
    } else {
        let (probes, values) = parse_probe_table(&text)?;
        r.input("source", "probe table").input("probes", probes.len());
        let fit = reconstruct_from_samples(&probes, &values)?;
        if fit.max_deviation > ORACLE_CONSISTENCY_TOL {
            return Err(CliError::Inconsistent(format!(
                "largest probe residual {:e}",
                fit.max_deviation
            )));
        }
        r.verdict("probe_residual", fit.max_deviation)
            .verdict("underdetermined", fit.rank_deficient);
        fit.frame
    };
    Ok(describe_form(r, &frame, tol))
}

fn describe_form(mut r: Report, f: &FrameFunction, tol: f64) -> Outcome {
    let sig = signature(f, tol);
    r.verdict("rho", f.form())
        .verdict("weight", f.weight())
        .verdict(
            "signature",
            record(vec![
                entry("positive", sig.positive),
                entry("negative", sig.negative),
                entry("zero", sig.zero),
            ]),
        );
    match classify(f, tol) {
        Ok(k) => r.verdict("classification", k),
        Err(_) => r.verdict("classification", "indefinite"),
    };
    match DensityOperator::with_tol(f.form().clone(), tol) {
        Ok(rho) => {
            let mixture: Vec<Value> = spectral_mixture(&rho)
                .into_iter()
                .map(|(w, v)| {
                    record(vec![entry("weight", w), entry("state", v.components().to_vec())])
                })
                .collect();
            r.verdict("quantum", true).verdict("spectral_mixture", Value::List(mixture));
            Outcome::ok(r)
        }
        Err(e) => {
            let min = gleason_core::numerics::eigh(f.form()).min_eigenvalue();
            r.verdict("quantum", false)
                .verdict(
                    "diagnostics",
                    record(vec![
                        entry("reason", e.to_string()),
                        entry("trace", f.weight()),
                        entry("min_eigenvalue", min),
                    ]),
                );
            Outcome { report: r, exit: EXIT_VALIDATION }
        }
    }
}

pub fn signature_cmd(path: &Path, tol: f64) -> Result<Outcome, CliError> {
    let f = read_form(path)?;
    let sig = signature(&f, tol);
    let mut r = Report::new("signature");
    r.input("path", path.display().to_string())
        .verdict("form", f.form())
        .verdict("weight", f.weight())
        .verdict("positive", sig.positive)
        .verdict("negative", sig.negative)
        .verdict("zero", sig.zero);
    match classify(&f, tol) {
        Ok(k) => r.verdict("classification", k),
        Err(_) => r.verdict("classification", "indefinite"),
    };
    Ok(Outcome::ok(r))
}

fn state_violation(v: &StateViolation) -> Value {
    match v {
        StateViolation::OutOfRange { atom, value } => {
            format!("atom {atom} has value {value} outside [0, 1]").into()
        }
        StateViolation::BlockSum { block, sum, deficit } => {
            format!("block {block} sums to {sum} (deficit {deficit:e})").into()
        }
    }
}

fn realization_violation(file: &GreechieFile, v: &RealizationViolation) -> Value {
    match v {
        RealizationViolation::NotUnit { atom, norm } => format!("atom {atom} has norm {norm}").into(),
        RealizationViolation::NotOrthogonal { block, first, second, overlap } => format!(
            "block {block} [{}]: {first} . {second} = {overlap:e}",
            file.diagram.block_names(*block).join(" ")
        )
        .into(),
        RealizationViolation::BlockTooLarge { block, size, dim } => {
            format!("block {block} has {size} atoms in dimension {dim}").into()
        }
    }
}

fn require_state(file: &GreechieFile) -> Result<(), CliError> {
    let p = file
        .probabilities
        .as_ref()
        .ok_or_else(|| CliError::Validation("this command needs `prob` lines".into()))?;
    let check = validate_state(&file.diagram, p)?;
    if !check.is_valid() {
        let msgs: Vec<String> = check
            .violations()
            .iter()
            .map(|v| match state_violation(v) {
                Value::Text(s) => s,
                _ => unreachable!(),
            })
            .collect();
        return Err(CliError::Validation(format!("not a state: {}", msgs.join("; "))));
    }
    Ok(())
}

fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::KernelRank { rank, dim, zero_atoms } => record(vec![
            entry("kind", "kernel-rank"),
            entry("rank", *rank),
            entry("dim", *dim),
            entry("zero_atoms", zero_atoms.join(" ")),
            entry(
                "argument",
                format!(
                    "the zero-probability atoms span a rank-{rank} subspace of R^{dim}; \
                     a positive operator vanishing on them is 0, contradicting unit trace"
                ),
            ),
        ]),
        Certificate::Residual { atom, expected, achieved } => record(vec![
            entry("kind", "residual"),
            entry("atom", atom.as_str()),
            entry("expected", *expected),
            entry("achieved", *achieved),
            entry("argument", "the Born-rule constraints have no common solution"),
        ]),
        Certificate::Trace { trace } => record(vec![
            entry("kind", "trace"),
            entry("trace", *trace),
            entry("argument", "the constraints force a trace other than 1"),
        ]),
        Certificate::NotPositive { min_eigenvalue } => record(vec![
            entry("kind", "not-positive"),
            entry("min_eigenvalue", *min_eigenvalue),
            entry("argument", "the only operator meeting the constraints is indefinite"),
        ]),
    }
}

pub fn greechie(action: GreechieAction, path: &Path) -> Result<Outcome, CliError> {
    let file = parse_greechie(&read(path)?)?;
    let d = &file.diagram;
    let mut r = Report::new(match action {
        GreechieAction::Check => "greechie check",
        GreechieAction::TwoValued => "greechie two-valued",
        GreechieAction::Decompose => "greechie decompose",
        GreechieAction::Feasibility => "greechie feasibility",
    });
    r.input("path", path.display().to_string())
        .input("atoms", d.num_atoms())
        .input("blocks", d.blocks().len());

    match action {
        GreechieAction::Check => {
            let mut ok = true;
            if let Some(p) = &file.probabilities {
                let v = validate_state(d, p)?;
                ok &= v.is_valid();
                r.verdict("state_valid", v.is_valid()).verdict(
                    "state_violations",
                    Value::List(v.violations().iter().map(state_violation).collect()),
                );
            }
            if let Some(real) = &file.realization {
                let v = check_realization(d, real)?;
                ok &= v.is_valid();
                r.verdict("realization_valid", v.is_valid())
                    .verdict("dim", real.dim())
                    .verdict("max_block_overlap", max_block_overlap(d, real)?)
                    .verdict(
                        "realization_violations",
                        Value::List(
                            v.violations().iter().map(|x| realization_violation(&file, x)).collect(),
                        ),
                    );
            }
            Ok(Outcome { report: r, exit: if ok { EXIT_OK } else { EXIT_VALIDATION } })
        }
        GreechieAction::TwoValued => {
            let states = enumerate_two_valued_states(d);
            r.verdict("count", states.len()).verdict(
                "states",
                Value::List(states.iter().map(|s| s.true_atoms(d).join(" ").into()).collect()),
            );
            Ok(Outcome::ok(r))
        }
        GreechieAction::Decompose => {
            require_state(&file)?;
            let p = file.probabilities.as_ref().unwrap();
            r.verdict("extremal", is_polytope_vertex(d, p)?);
            match convex_decomposition(d, p)? {
                Decomposition::Decomposable(parts) => {
                    let items = parts
                        .iter()
                        .map(|(w, s)| {
                            record(vec![entry("weight", *w), entry("true_atoms", s.true_atoms(d).join(" "))])
                        })
                        .collect();
                    r.verdict("decomposable", true).verdict("decomposition", Value::List(items));
                    Ok(Outcome::ok(r))
                }
                Decomposition::NotDecomposable => {
                    r.verdict("decomposable", false)
                        .verdict("two_valued_states", enumerate_two_valued_states(d).len());
                    Ok(Outcome { report: r, exit: EXIT_INFEASIBLE })
                }
            }
        }
        GreechieAction::Feasibility => {
            require_state(&file)?;
            let real = file
                .realization
                .as_ref()
                .ok_or_else(|| CliError::Validation("this command needs `vec` lines".into()))?;
            let check = check_realization(d, real)?;
            if !check.is_valid() {
                let msgs: Vec<String> = check
                    .violations()
                    .iter()
                    .map(|v| match realization_violation(&file, v) {
                        Value::Text(s) => s,
                        _ => unreachable!(),
                    })
                    .collect();
                return Err(CliError::Validation(format!(
                    "not a realization: {}",
                    msgs.join("; ")
                )));
            }
            match quantum_feasibility(d, real, file.probabilities.as_ref().unwrap())? {
                Feasibility::Realizable(rho) => {
                    r.verdict("realizable", true).verdict("rho", rho.matrix());
                    Ok(Outcome::ok(r))
                }
                Feasibility::NotRealizable(c) => {
                    r.verdict("realizable", false).verdict("certificate", certificate(&c));
                    Ok(Outcome { report: r, exit: EXIT_INFEASIBLE })
                }
            }
        }
    }
}
