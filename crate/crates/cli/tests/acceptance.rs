//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test -p gleason-cli --test acceptance`.

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::PathBuf;

use gleason_core::density::{mix, pure_state, spectral_mixture, DensityOperator, StateVector};
use gleason_core::frame::{from_density, reconstruct_density, signature, FrameOracle};
use gleason_core::greechie::{
    builtin_spin_half_family, builtin_wright_pentagon, check_realization, enumerate_two_valued_states,
    is_polytope_vertex, max_block_overlap, quantum_feasibility, spin_half_ignorant_measure,
    spin_half_sharp_measure, validate_state, Certificate, Feasibility, GreechieDiagram,
};
use gleason_core::numerics::{orthonormalize, rank, SymMatrix};
use gleason_cli::greechie_format::parse_greechie;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = random_vector(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.1 && norm <= 1.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A random density operator of random rank, normalized from a Gram matrix.
fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DensityOperator {
    let r = rng.gen_range(1..=n);
    let g: Vec<Vec<f64>> = (0..r).map(|_| random_unit(rng, n)).collect();
    let weights: Vec<f64> = (0..r).map(|_| rng.gen_range(0.05..1.0)).collect();
    let m = SymMatrix::from_upper_fn(n, |i, j| g.iter().zip(&weights).map(|(v, w)| w * v[i] * v[j]).sum());
    let t = m.trace();
    DensityOperator::new(m.scale(1.0 / t)).expect("Gram matrices are positive")
}

fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    loop {
        let vs: Vec<Vec<f64>> = (0..n).map(|_| random_vector(rng, n)).collect();
        if let Ok(b) = orthonormalize(&vs) {
            return b;
        }
    }
}

fn golden_seventh() -> Check {
    let f = |x: &[f64]| (3.0 * x[0] * x[0] + 2.0 * (x[1] - x[2]).powi(2)) / 7.0;
    let rho = reconstruct_density(&FrameOracle::new(3, f)).map_err(|e| e.to_string())?;
    let want = SymMatrix::from_rows(&[[3.0, 0.0, 0.0], [0.0, 2.0, -2.0], [0.0, -2.0, 2.0]])
        .unwrap()
        .scale(1.0 / 7.0);
    let gap = rho.matrix().max_abs_diff(&want);
    ensure(gap <= 1e-12, || format!("entrywise gap {gap:e}"))?;
    let mut w: Vec<f64> = spectral_mixture(&rho).iter().map(|(w, _)| *w).collect();
    w.sort_by(f64::total_cmp);
    ensure(
        w.len() == 2 && (w[0] - 3.0 / 7.0).abs() <= 1e-12 && (w[1] - 4.0 / 7.0).abs() <= 1e-12,
        || format!("weights {w:?}"),
    )?;
    Ok(format!("gap {gap:.1e}, weights {:.15} {:.15}", w[0], w[1]))
}

fn golden_twelfth() -> Check {
    let f = |x: &[f64]| (4.0 * x[0] * x[0] + 3.0 * (x[0] - x[1]).powi(2) + (x[1] - x[2]).powi(2)) / 12.0;
    let rho = reconstruct_density(&FrameOracle::new(3, f)).map_err(|e| e.to_string())?;
    let want = SymMatrix::from_rows(&[[7.0, -3.0, 0.0], [-3.0, 4.0, -1.0], [0.0, -1.0, 1.0]])
        .unwrap()
        .scale(1.0 / 12.0);
    let gap = rho.matrix().max_abs_diff(&want);
    ensure(gap <= 1e-12, || format!("entrywise gap {gap:e}"))?;
    Ok(format!("gap {gap:.1e}"))
}

fn bell_frames(rng: &mut ChaCha8Rng) -> Check {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let cases: [([f64; 4], fn(&[f64]) -> f64); 4] = [
        ([h, 0.0, 0.0, h], |x| 0.5 * (x[0] + x[3]).powi(2)),
        ([h, 0.0, 0.0, -h], |x| 0.5 * (x[0] - x[3]).powi(2)),
        ([0.0, h, h, 0.0], |x| 0.5 * (x[1] + x[2]).powi(2)),
        ([0.0, h, -h, 0.0], |x| 0.5 * (x[1] - x[2]).powi(2)),
    ];
    let frames: Vec<_> = cases
        .iter()
        .map(|(v, _)| from_density(&pure_state(&StateVector::new(v.to_vec()).unwrap())))
        .collect();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = random_unit(rng, 4);
        for (f, (_, formula)) in frames.iter().zip(&cases) {
            let gap = (f.evaluate(&x).map_err(|e| e.to_string())? - formula(&x)).abs();
            worst = worst.max(gap);
        }
    }
    ensure(worst <= 1e-12, || format!("largest deviation {worst:e}"))?;
    Ok(format!("largest deviation {worst:.1e}"))
}

fn nonorthogonal_mixture(rng: &mut ChaCha8Rng) -> Check {
    let e1 = pure_state(&StateVector::new(vec![1.0, 0.0, 0.0]).unwrap());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let e12 = pure_state(&StateVector::new(vec![h, h, 0.0]).unwrap());
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a: f64 = rng.gen_range(0.01..0.99);
        let b = 1.0 - a;
        let rho = mix(&[(a, e1.clone()), (b, e12.clone())]).map_err(|e| e.to_string())?;
        let w: Vec<f64> = spectral_mixture(&rho).iter().map(|(w, _)| *w).collect();
        let r = (0.25 - a * b / 2.0).sqrt();
        ensure(w.len() == 2, || format!("a = {a}: {} components", w.len()))?;
        worst = worst.max((w[0] - (0.5 + r)).abs()).max((w[1] - (0.5 - r)).abs());
    }
    ensure(worst <= 1e-10, || format!("largest deviation {worst:e}"))?;
    Ok(format!("largest deviation {worst:.1e}"))
}

fn weight_additivity(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for n in 3..=5 {
        for _ in 0..100 {
            let f = from_density(&random_density(rng, n));
            let basis = random_basis(rng, n);
            let mut total = 0.0;
            for e in &basis {
                total += f.evaluate(e).map_err(|e| e.to_string())?;
            }
            worst = worst.max((total - 1.0).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("largest |sum - 1| {worst:e}"))?;
    Ok(format!("largest |sum - 1| {worst:.1e}"))
}

fn round_trip(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for k in 0..200 {
        let n = 2 + k % 5;
        let rho = random_density(rng, n);
        let f = from_density(&rho);
        let back = reconstruct_density(&FrameOracle::from_frame(&f)).map_err(|e| e.to_string())?;
        worst = worst.max(back.matrix().max_abs_diff(rho.matrix()));
    }
    ensure(worst <= 1e-10, || format!("largest entry gap {worst:e}"))?;
    Ok(format!("largest entry gap {worst:.1e}"))
}

fn sylvester(rng: &mut ChaCha8Rng) -> Check {
    for k in 0..100 {
        let n = 2 + k % 5;
        // A = Q diag(l) Q^T with eigenvalues bounded away from zero or exactly zero
        let q = random_basis(rng, n);
        let l: Vec<f64> = (0..n)
            .map(|_| match rng.gen_range(0..3) {
                0 => 0.0,
                1 => rng.gen_range(0.2..2.0),
                _ => -rng.gen_range(0.2..2.0),
            })
            .collect();
        let a = SymMatrix::from_upper_fn(n, |i, j| (0..n).map(|m| l[m] * q[m][i] * q[m][j]).sum());
        // S = U diag(s) V^T, singular values in [0.5, 2]
        let (u, v) = (random_basis(rng, n), random_basis(rng, n));
        let s: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
        let mut sm = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                sm[i * n + j] = (0..n).map(|m| u[m][i] * s[m] * v[m][j]).sum();
            }
        }
        let b = a.congruence(&sm).map_err(|e| e.to_string())?;
        let (sa, sb) = (
            signature(&gleason_core::frame::FrameFunction::new(a), 1e-9),
            signature(&gleason_core::frame::FrameFunction::new(b), 1e-9),
        );
        ensure(sa == sb, || format!("pair {k}: {sa} vs {sb}"))?;
    }
    Ok("100 pairs".into())
}

fn pentagon_embedding() -> Check {
    let (d, r, p) = builtin_wright_pentagon();
    let v = check_realization(&d, &r).map_err(|e| e.to_string())?;
    ensure(v.is_valid(), || format!("{:?}", v.violations()))?;
    let overlap = max_block_overlap(&d, &r).map_err(|e| e.to_string())?;
    ensure(overlap <= 1e-9, || format!("overlap {overlap:e}"))?;
    let s = validate_state(&d, &p).map_err(|e| e.to_string())?;
    ensure(s.is_valid(), || format!("{:?}", s.violations()))?;
    let values = p.aligned(&d).map_err(|e| e.to_string())?;
    for (b, block) in d.blocks().iter().enumerate() {
        let sum: f64 = block.iter().map(|&i| values[i]).sum();
        ensure(sum == 1.0, || format!("block {b} sums to {sum:e}"))?;
    }
    Ok(format!("max overlap {overlap:.1e}"))
}

fn pentagon_not_realizable() -> Check {
    let (d, r, p) = builtin_wright_pentagon();
    let rank_cert = match quantum_feasibility(&d, &r, &p).map_err(|e| e.to_string())? {
        Feasibility::NotRealizable(Certificate::KernelRank { rank, .. }) => rank,
        other => return Err(format!("{other:?}")),
    };
    let bs: Vec<&[f64]> = ["b0", "b1", "b2", "b3", "b4"].iter().map(|b| r.get(b).unwrap()).collect();
    let gram = SymMatrix::from_upper_fn(5, |i, j| bs[i].iter().zip(bs[j]).map(|(x, y)| x * y).sum());
    let gram_rank = rank(&gram, 1e-9);
    ensure(rank_cert == 3 && gram_rank == 3, || {
        format!("certificate rank {rank_cert}, Gram rank {gram_rank}")
    })?;
    Ok("kernel rank 3, Gram rank 3".into())
}

fn fig1_feasibility() -> Check {
    let (d, r) = builtin_spin_half_family(2, &[0.0, FRAC_PI_4]).map_err(|e| e.to_string())?;
    let gap = match quantum_feasibility(&d, &r, &spin_half_ignorant_measure(2)).map_err(|e| e.to_string())? {
        Feasibility::Realizable(rho) => rho.matrix().max_abs_diff(&SymMatrix::from_diagonal(&[0.5, 0.5])),
        other => return Err(format!("ignorant measure: {other:?}")),
    };
    ensure(gap <= 1e-10, || format!("rho differs from I/2 by {gap:e}"))?;
    let sharp = quantum_feasibility(&d, &r, &spin_half_sharp_measure(2)).map_err(|e| e.to_string())?;
    ensure(!sharp.is_realizable(), || format!("sharp measure: {sharp:?}"))?;
    Ok(format!("I/2 gap {gap:.1e}; sharp measure not realizable"))
}

fn fixture_diagrams() -> Result<Vec<(String, gleason_cli::greechie_format::GreechieFile)>, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gd"))
        .collect();
    paths.sort();
    for p in paths {
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        let text = fs::read_to_string(&p).map_err(|e| e.to_string())?;
        out.push((name.clone(), parse_greechie(&text).map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(out)
}

fn brute_force(d: &GreechieDiagram) -> Vec<Vec<bool>> {
    let n = d.num_atoms();
    let mut found = Vec::new();
    for mask in 0u32..(1 << n) {
        let truth: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if d.blocks().iter().all(|b| b.iter().filter(|&&i| truth[i]).count() == 1) {
            found.push(truth);
        }
    }
    found.sort();
    found
}

fn enumeration() -> Check {
    let expected = [("fig1a_n2.gd", 4), ("fig1a_n3.gd", 8), ("fig1b_n2.gd", 4), ("pentagon.gd", 11)];
    let files = fixture_diagrams()?;
    let mut summary = Vec::new();
    for (name, file) in &files {
        let d = &file.diagram;
        if d.num_atoms() > 12 {
            continue;
        }
        let ours: Vec<Vec<bool>> = enumerate_two_valued_states(d).iter().map(|s| s.truth().to_vec()).collect();
        ensure(ours == brute_force(d), || format!("{name}: enumeration differs from brute force"))?;
        if let Some((_, n)) = expected.iter().find(|(f, _)| f == name) {
            ensure(ours.len() == *n, || format!("{name}: {} states, expected {n}", ours.len()))?;
        }
        summary.push(format!("{name} {}", ours.len()));
    }
    for n in 1..=6 {
        let angles: Vec<f64> = (0..n).map(|k| k as f64 * 0.3).collect();
        let (d, _) = builtin_spin_half_family(n, &angles).map_err(|e| e.to_string())?;
        let count = enumerate_two_valued_states(&d).len();
        ensure(count == 1 << n && count == brute_force(&d).len(), || {
            format!("family n = {n}: {count} states")
        })?;
    }
    ensure(summary.len() == expected.len(), || format!("checked {summary:?}"))?;
    Ok(summary.join(", "))
}

fn extremality() -> Check {
    let (d, _, p) = builtin_wright_pentagon();
    ensure(is_polytope_vertex(&d, &p).map_err(|e| e.to_string())?, || "Wright measure is not a vertex".into())?;
    let mut checked = 0;
    for (name, file) in fixture_diagrams()? {
        for s in enumerate_two_valued_states(&file.diagram) {
            let a = s.to_assignment(&file.diagram);
            ensure(is_polytope_vertex(&file.diagram, &a).map_err(|e| e.to_string())?, || {
                format!("{name}: two-valued state {:?} is not a vertex", s.true_atoms(&file.diagram))
            })?;
            checked += 1;
        }
    }
    for n in 1..=4 {
        let angles: Vec<f64> = (0..n).map(|k| k as f64 * 0.3).collect();
        let (d, _) = builtin_spin_half_family(n, &angles).map_err(|e| e.to_string())?;
        let half = spin_half_ignorant_measure(n);
        ensure(!is_polytope_vertex(&d, &half).map_err(|e| e.to_string())?, || {
            format!("all-1/2 measure on n = {n} is a vertex")
        })?;
    }
    Ok(format!("Wright measure and {checked} two-valued states are vertices; all-1/2 is not"))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c65_6173_6f6e);
    let results: Vec<(&str, Check)> = vec![
        ("golden reconstruction, 1/7 form", golden_seventh()),
        ("golden reconstruction, 1/12 form", golden_twelfth()),
        ("Bell frame functions", bell_frames(&mut rng)),
        ("nonorthogonal mixture eigenvalues", nonorthogonal_mixture(&mut rng)),
        ("weight additivity", weight_additivity(&mut rng)),
        ("density round trip", round_trip(&mut rng)),
        ("Sylvester invariance", sylvester(&mut rng)),
        ("pentagon embedding", pentagon_embedding()),
        ("pentagon not realizable", pentagon_not_realizable()),
        ("spin-1/2 families: realizability", fig1_feasibility()),
        ("two-valued enumeration vs brute force", enumeration()),
        ("extremality", extremality()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
