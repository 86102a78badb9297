use alloc::vec::Vec;

use super::lstsq::matrix_rank;
use super::matrix::{dot, norm};
use crate::{Error, Result, DEFAULT_TOL};

/// Modified Gram–Schmidt with one reorthogonalization pass.
///
/// Fails with [`Error::LinearlyDependent`] when the input rank (relative to
/// the largest input norm) is below the number of vectors.
pub fn orthonormalize(vectors: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let count = vectors.len();
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let rank = matrix_rank(vectors, DEFAULT_TOL * scale.max(f64::MIN_POSITIVE))?;
    if rank < count {
        return Err(Error::LinearlyDependent { rank, count });
    }

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(count);
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let len = norm(&w);
        w.iter_mut().for_each(|x| *x /= len);
        basis.push(w);
    }
    Ok(basis)
}
