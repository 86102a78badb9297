//! Worked examples replayed from the bundled fixtures. Each case loads its
//! inputs from disk, so editing a fixture makes the matching case fail.

use std::path::{Path, PathBuf};

use gleason_core::density::{spectral_mixture, DensityOperator};
use gleason_core::frame::{classify, from_density, reconstruct_density, FrameFunction, FrameOracle};
use gleason_core::greechie::{
    check_realization, convex_decomposition, enumerate_two_valued_states, is_polytope_vertex,
    max_block_overlap, quantum_feasibility, validate_state, Certificate, Decomposition,
    Feasibility,
};
use gleason_core::numerics::SymMatrix;

use crate::commands::read;
use crate::greechie_format::{parse_greechie, GreechieFile};
use crate::matrix_format::parse_matrix;

pub struct Case {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&Path) -> Result<(), String>,
}

impl Case {
    pub fn run(&self, fixtures: &Path) -> Result<(), String> {
        (self.run)(fixtures)
    }
}

pub fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn cases() -> &'static [Case] {
    &[
        Case { name: "pure-state", summary: "|x1><x1| gives f(x) = x1^2", run: pure_state },
        Case { name: "bell-states", summary: "the four Bell states give their quadratic forms", run: bell_states },
        Case { name: "bell-mixture", summary: "0.3 Psi+ + 0.7 Phi+ as a frame function", run: bell_mixture },
        Case {
            name: "nonorthogonal-mixture",
            summary: "mixing x1 and (x1+x2)/sqrt2 equally has weights 1/2 +- sqrt(1/8)",
            run: nonorthogonal_mixture,
        },
        Case { name: "reconstruct-seventh", summary: "(1/7)[3x1^2 + 2(x2-x3)^2] recovered from its values", run: seventh },
        Case { name: "reconstruct-twelfth", summary: "a full-rank 3x3 form recovered from its values", run: twelfth },
        Case { name: "fig1a-two-valued", summary: "n disjoint spin-1/2 contexts carry 2^n two-valued states", run: fig1a_two_valued },
        Case { name: "fig1a-not-realizable", summary: "a sharp measure on two tilted contexts has no density operator", run: fig1a_not_realizable },
        Case { name: "fig1b-most-ignorant", summary: "all atoms at 1/2 is realized by I/2", run: fig1b },
        Case { name: "pentagon-embedding", summary: "the pentagon vectors are orthogonal within every block", run: pentagon_embedding },
        Case { name: "pentagon-not-realizable", summary: "the 1/2-on-a measure has no density operator in R^3", run: pentagon_not_realizable },
        Case { name: "pentagon-extremal", summary: "the 1/2-on-a measure is extremal and not a mixture of two-valued states", run: pentagon_extremal },
    ]
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn load_matrix(dir: &Path, name: &str) -> Result<SymMatrix, String> {
    let text = read(&dir.join(name)).map_err(|e| e.to_string())?;
    parse_matrix(&text).and_then(|m| m.to_sym()).map_err(|e| format!("{name}: {e}"))
}

fn load_density(dir: &Path, name: &str) -> Result<DensityOperator, String> {
    DensityOperator::new(load_matrix(dir, name)?).map_err(|e| format!("{name}: {e}"))
}

fn load_greechie(dir: &Path, name: &str) -> Result<GreechieFile, String> {
    let text = read(&dir.join(name)).map_err(|e| e.to_string())?;
    parse_greechie(&text).map_err(|e| format!("{name}: {e}"))
}

/// Deterministic unit vectors spread over the sphere.
fn probe_vectors(dim: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|k| {
            let v: Vec<f64> = (0..dim)
                .map(|i| ((k as f64 + 1.0) * (0.7548776662 + 0.5698402910 * i as f64) + i as f64).sin())
                .collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
        .collect()
}

fn agree_on_probes(
    f: &FrameFunction,
    expected: impl Fn(&[f64]) -> f64,
    tol: f64,
) -> Result<(), String> {
    for x in probe_vectors(f.dim(), 200) {
        let got = f.evaluate(&x).map_err(|e| e.to_string())?;
        let want = expected(&x);
        ensure((got - want).abs() <= tol, || format!("f({x:?}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn pure_state(dir: &Path) -> Result<(), String> {
    let f = from_density(&load_density(dir, "pure_x1.mat")?);
    let s = f.expanded(6);
    ensure(s == "x1^2", || format!("expanded form is `{s}`"))?;
    agree_on_probes(&f, |x| x[0] * x[0], 1e-12)
}

fn bell_states(dir: &Path) -> Result<(), String> {
    let cases: [(&str, fn(&[f64]) -> f64); 4] = [
        ("bell_psi_plus.mat", |x| 0.5 * (x[0] + x[3]).powi(2)),
        ("bell_psi_minus.mat", |x| 0.5 * (x[0] - x[3]).powi(2)),
        ("bell_phi_plus.mat", |x| 0.5 * (x[1] + x[2]).powi(2)),
        ("bell_phi_minus.mat", |x| 0.5 * (x[1] - x[2]).powi(2)),
    ];
    for (file, formula) in cases {
        let f = from_density(&load_density(dir, file)?);
        agree_on_probes(&f, formula, 1e-12).map_err(|e| format!("{file}: {e}"))?;
    }
    Ok(())
}

fn bell_mixture(dir: &Path) -> Result<(), String> {
    let rho = load_density(dir, "bell_mixture.mat")?;
    let f = from_density(&rho);
    agree_on_probes(
        &f,
        |x| 0.5 * (0.3 * (x[0] + x[3]).powi(2) + 0.7 * (x[1] + x[2]).powi(2)),
        1e-12,
    )?;
    let w: Vec<f64> = spectral_mixture(&rho).iter().map(|(w, _)| *w).collect();
    ensure(w.len() == 2 && (w[0] - 0.7).abs() <= 1e-12 && (w[1] - 0.3).abs() <= 1e-12, || {
        format!("spectral weights {w:?}")
    })
}

fn nonorthogonal_mixture(dir: &Path) -> Result<(), String> {
    let rho = load_density(dir, "nonorthogonal_mixture.mat")?;
    let w: Vec<f64> = spectral_mixture(&rho).iter().map(|(w, _)| *w).collect();
    let r = (1.0f64 / 8.0).sqrt();
    ensure(w.len() == 2 && (w[0] - (0.5 + r)).abs() <= 1e-10 && (w[1] - (0.5 - r)).abs() <= 1e-10, || {
        format!("spectral weights {w:?}")
    })
}

fn check_reconstruction(
    dir: &Path,
    file: &str,
    expected: [[f64; 3]; 3],
    rank: usize,
) -> Result<DensityOperator, String> {
    let f = FrameFunction::new(load_matrix(dir, file)?);
    let oracle = FrameOracle::new(3, |x: &[f64]| f.form().quadratic_form(x));
    let rho = reconstruct_density(&oracle).map_err(|e| e.to_string())?;
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let got = rho.matrix()[(i, j)];
            ensure((got - want).abs() <= 1e-12, || format!("rho[{i}][{j}] = {got}, expected {want}"))?;
        }
    }
    let k = classify(&from_density(&rho), 1e-9).map_err(|e| e.to_string())?;
    ensure(k == rank, || format!("classification {k}, expected {rank}"))?;
    Ok(rho)
}

fn seventh(dir: &Path) -> Result<(), String> {
    let (a, b) = (3.0 / 7.0, 2.0 / 7.0);
    let rho = check_reconstruction(dir, "form_seventh.mat", [[a, 0.0, 0.0], [0.0, b, -b], [0.0, -b, b]], 2)?;
    let w: Vec<f64> = spectral_mixture(&rho).iter().map(|(w, _)| *w).collect();
    ensure(
        w.len() == 2 && (w[0] - 4.0 / 7.0).abs() <= 1e-12 && (w[1] - 3.0 / 7.0).abs() <= 1e-12,
        || format!("spectral weights {w:?}"),
    )
}

fn twelfth(dir: &Path) -> Result<(), String> {
    let t = 1.0 / 12.0;
    let expected = [[7.0 * t, -3.0 * t, 0.0], [-3.0 * t, 4.0 * t, -t], [0.0, -t, t]];
    check_reconstruction(dir, "form_twelfth.mat", expected, 3).map(|_| ())
}

fn fig1a_two_valued(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "fig1a_n3.gd")?;
    let n = enumerate_two_valued_states(&g.diagram).len();
    ensure(n == 8, || format!("{n} two-valued states, expected 8"))
}

fn fig1a_not_realizable(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "fig1a_n2.gd")?;
    match feasibility(&g)? {
        Feasibility::NotRealizable(_) => Ok(()),
        Feasibility::Realizable(rho) => Err(format!("realized by {:?}", rho.matrix().to_rows())),
    }
}

fn feasibility(g: &GreechieFile) -> Result<Feasibility, String> {
    let p = g.probabilities.as_ref().ok_or("no probabilities")?;
    let r = g.realization.as_ref().ok_or("no vectors")?;
    quantum_feasibility(&g.diagram, r, p).map_err(|e| e.to_string())
}

fn fig1b(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "fig1b_n2.gd")?;
    match feasibility(&g)? {
        Feasibility::Realizable(rho) => {
            let gap = rho.matrix().max_abs_diff(&SymMatrix::from_diagonal(&[0.5, 0.5]));
            ensure(gap <= 1e-10, || format!("rho differs from I/2 by {gap:e}"))
        }
        Feasibility::NotRealizable(c) => Err(format!("not realizable: {c:?}")),
    }
}

fn pentagon_embedding(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "pentagon.gd")?;
    let r = g.realization.as_ref().ok_or("no vectors")?;
    let v = check_realization(&g.diagram, r).map_err(|e| e.to_string())?;
    ensure(v.is_valid(), || format!("{:?}", v.violations()))?;
    let overlap = max_block_overlap(&g.diagram, r).map_err(|e| e.to_string())?;
    ensure(overlap <= 1e-9, || format!("largest in-block overlap {overlap:e}"))?;
    let p = g.probabilities.as_ref().ok_or("no probabilities")?;
    let s = validate_state(&g.diagram, p).map_err(|e| e.to_string())?;
    ensure(s.is_valid(), || format!("{:?}", s.violations()))
}

fn pentagon_not_realizable(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "pentagon.gd")?;
    match feasibility(&g)? {
        Feasibility::NotRealizable(Certificate::KernelRank { rank: 3, dim: 3, .. }) => Ok(()),
        other => Err(format!("{other:?}")),
    }
}

fn pentagon_extremal(dir: &Path) -> Result<(), String> {
    let g = load_greechie(dir, "pentagon.gd")?;
    let p = g.probabilities.as_ref().ok_or("no probabilities")?;
    let n = enumerate_two_valued_states(&g.diagram).len();
    ensure(n == 11, || format!("{n} two-valued states, expected 11"))?;
    ensure(is_polytope_vertex(&g.diagram, p).map_err(|e| e.to_string())?, || {
        "not a vertex of the state polytope".into()
    })?;
    match convex_decomposition(&g.diagram, p).map_err(|e| e.to_string())? {
        Decomposition::NotDecomposable => Ok(()),
        Decomposition::Decomposable(parts) => Err(format!("decomposed into {} states", parts.len())),
    }
}

/// Runs every case (or just `only`), printing one line each. Returns the
/// number of failures.
pub fn run(fixtures: &Path, only: Option<&str>) -> Result<usize, String> {
    let selected: Vec<&Case> = cases().iter().filter(|c| only.is_none_or(|n| n == c.name)).collect();
    if selected.is_empty() {
        return Err(format!("no demo case named `{}`", only.unwrap_or_default()));
    }
    let mut failures = 0;
    for case in selected {
        match case.run(fixtures) {
            Ok(()) => println!("PASS {}", case.name),
            Err(why) => {
                failures += 1;
                println!("FAIL {}: {why}", case.name);
            }
        }
    }
    Ok(failures)
}
