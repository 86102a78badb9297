//! Frame functions as quadratic forms `f(x) = xᵀ A x`.
//!
//! A frame function of weight `W` sums to `W` over every orthonormal basis;
//! for a quadratic form that weight is `tr A`. In dimension 3 and up every
//! bounded frame function of weight 1 is of this form with `A` a density
//! operator. In dimension 2 that fails: an oracle handed to
//! [`reconstruct_density`] there is only accepted if it passes the
//! quadratic-form consistency probes.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::DensityOperator;
use crate::error::NotQuantum;
use crate::numerics::{eigh, norm, solve_least_squares, SymMatrix};
use crate::{Error, Result, DEFAULT_TOL};

/// Maximum `|f(x) − xᵀρx|` on the random consistency probes.
pub const ORACLE_CONSISTENCY_TOL: f64 = 1e-7;
const CONSISTENCY_PROBES: usize = 10;
const PROBE_SEED: u64 = 0x6c65_6173_6f6e;

/// A quadratic form read as a probability assignment on rays.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFunction {
    form: SymMatrix,
}

/// Inertia `(P, N, Z)` of a quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl core::fmt::Display for Signature {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// A black-box frame function on unit vectors of a fixed dimension.
pub struct FrameOracle<'a> {
    dim: usize,
    evaluator: Box<dyn Fn(&[f64]) -> f64 + 'a>,
}

impl<'a> FrameOracle<'a> {
    pub fn new(dim: usize, evaluator: impl Fn(&[f64]) -> f64 + 'a) -> Self {
        FrameOracle { dim, evaluator: Box::new(evaluator) }
    }

    /// Oracle that evaluates a known form.
    pub fn from_frame(f: &'a FrameFunction) -> Self {
        Self::new(f.dim(), move |x| f.form.quadratic_form(x))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn call(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }
}

impl core::fmt::Debug for FrameOracle<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FrameOracle").field("dim", &self.dim).finish_non_exhaustive()
    }
}

impl FrameFunction {
    /// Any symmetric form; non-quantum forms are allowed here.
    pub fn new(form: SymMatrix) -> Self {
        FrameFunction { form }
    }

    pub fn form(&self) -> &SymMatrix {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// `W = tr A`.
    pub fn weight(&self) -> f64 {
        self.form.trace()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.form.check_dim(x.len())?;
        let len = norm(x);
        if (len - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotUnit { norm: len });
        }
        Ok(self.form.quadratic_form(x))
    }

    /// The density operator with this form, if the form is one.
    pub fn to_density(&self) -> Result<DensityOperator> {
        DensityOperator::new(self.form.clone()).map_err(|e| match e {
            Error::BadTrace { .. } | Error::NotPositiveSemidefinite { .. } => {
                Error::NotQuantum(Box::new(NotQuantum {
                    form: self.form.clone(),
                    trace: self.form.trace(),
                    min_eigenvalue: eigh(&self.form).min_eigenvalue(),
                }))
            }
            other => other,
        })
    }

    /// Polynomial rendering, e.g. `0.5 x1^2 + x1 x4 + 0.5 x4^2`.
    pub fn expanded(&self, precision: usize) -> alloc::string::String {
        use alloc::format;
        use alloc::string::String;
        let n = self.dim();
        let mut terms: Vec<(f64, String)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { self.form.get(i, i) } else { 2.0 * self.form.get(i, j) };
                if c.abs() <= 1e-15 {
                    continue;
                }
                let mono = if i == j {
                    format!("x{}^2", i + 1)
                } else {
                    format!("x{} x{}", i + 1, j + 1)
                };
                terms.push((c, mono));
            }
        }
        if terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (c, mono)) in terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if *c < 0.0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if (mag - 1.0).abs() > 1e-15 {
                out.push_str(&trim_number(&format!("{mag:.precision$}")));
                out.push(' ');
            }
            out.push_str(mono);
        }
        out
    }
}

fn trim_number(s: &str) -> alloc::string::String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').into()
    } else {
        s.into()
    }
}

/// The frame function `x ↦ ⟨ρx, x⟩`.
pub fn from_density(rho: &DensityOperator) -> FrameFunction {
    FrameFunction { form: rho.matrix().clone() }
}

/// Recovers the form of an oracle by polarization.
///
/// `Aᵢᵢ = f(eᵢ)` and `Aᵢⱼ = f((eᵢ+eⱼ)/√2) − (f(eᵢ)+f(eⱼ))/2`, which is the
/// exact solution of the linear system `f(x) = xᵀAx` on that probe set.
/// The result is then checked against ten pseudo-random unit vectors; a
/// deviation above [`ORACLE_CONSISTENCY_TOL`] means the oracle is not a
/// quadratic form.
pub fn reconstruct_form(oracle: &FrameOracle<'_>) -> Result<FrameFunction> {
    let n = oracle.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall { dim: n });
    }
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut probe = alloc::vec![0.0; n];
    let diag: Vec<f64> = (0..n)
        .map(|i| {
            probe.iter_mut().for_each(|p| *p = 0.0);
            probe[i] = 1.0;
            oracle.call(&probe)
        })
        .collect();
    let form = SymMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            return diag[i];
        }
        probe.iter_mut().for_each(|p| *p = 0.0);
        probe[i] = h;
        probe[j] = h;
        oracle.call(&probe) - 0.5 * (diag[i] + diag[j])
    });
    if form.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut deviation: f64 = 0.0;
    for _ in 0..CONSISTENCY_PROBES {
        let x = random_unit_vector(&mut rng, n);
        deviation = deviation.max((oracle.call(&x) - form.quadratic_form(&x)).abs());
    }
    if !(deviation <= ORACLE_CONSISTENCY_TOL) {
        return Err(Error::NotAFrameFunction { deviation });
    }
    Ok(FrameFunction { form })
}

/// [`reconstruct_form`] followed by density-operator validation.
pub fn reconstruct_density(oracle: &FrameOracle<'_>) -> Result<DensityOperator> {
    reconstruct_form(oracle)?.to_density()
}

/// Least-squares fit of a form to sampled values `f(probeₖ) = valueₖ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleFit {
    pub frame: FrameFunction,
    /// Largest `|xₖᵀAxₖ − valueₖ|` over the samples.
    pub max_deviation: f64,
    /// The probes do not determine the form; the minimum-norm fit is returned.
    pub rank_deficient: bool,
}

/// Fits a form to noisy or overdetermined samples.
///
/// Probes are rays: each is normalized before use. The unknowns are the
/// `n(n+1)/2` upper-triangle entries, off-diagonal ones scaled by `√2` so
/// that the minimum-norm solution is the one of least Frobenius norm.
pub fn reconstruct_from_samples(probes: &[Vec<f64>], values: &[f64]) -> Result<SampleFit> {
    let n = probes.first().ok_or(Error::EmptyInput)?.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if values.len() != probes.len() {
        return Err(Error::DimensionMismatch { expected: probes.len(), found: values.len() });
    }
    let s2 = core::f64::consts::SQRT_2;
    let mut rows = Vec::with_capacity(probes.len());
    let mut units = Vec::with_capacity(probes.len());
    for p in probes {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.len() });
        }
        let len = norm(p);
        if len == 0.0 || !len.is_finite() {
            return Err(Error::ZeroVector);
        }
        let x: Vec<f64> = p.iter().map(|v| v / len).collect();
        let mut row = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                row.push(if i == j { x[i] * x[i] } else { s2 * x[i] * x[j] });
            }
        }
        rows.push(row);
        units.push(x);
    }
    let ls = solve_least_squares(&rows, values)?;
    let mut k = 0;
    let mut upper = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            upper[i * n + j] = if i == j { ls.solution[k] } else { ls.solution[k] / s2 };
            k += 1;
        }
    }
    let form = SymMatrix::from_upper_fn(n, |i, j| upper[i * n + j]);
    let max_deviation = units
        .iter()
        .zip(values)
        .map(|(x, v)| (form.quadratic_form(x) - v).abs())
        .fold(0.0, f64::max);
    Ok(SampleFit { frame: FrameFunction { form }, max_deviation, rank_deficient: ls.rank_deficient })
}

/// Sign counts of the eigenvalues; `|λ| <= tol` counts as zero.
pub fn signature(f: &FrameFunction, tol: f64) -> Signature {
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    for l in eigh(&f.form).eigenvalues {
        if l > tol {
            sig.positive += 1;
        } else if l < -tol {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

/// Index of the canonical type `diag(1,…,1,0,…,0)` congruent to a
/// positive-semidefinite form, i.e. its rank. There are `n + 1` such types.
pub fn classify(f: &FrameFunction, tol: f64) -> Result<usize> {
    let sig = signature(f, tol);
    if sig.negative > 0 {
        return Err(Error::NotPositive { negative: sig.negative });
    }
    Ok(sig.positive)
}

fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len = norm(&v);
        if len > 1e-3 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}
