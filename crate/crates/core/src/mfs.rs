//! Assembly and solution of the local single-body MFS collocation system
//! `A q = w`, with `A(i,j) = phi_kappa(x_i - y_j)`.

use crate::densela::{pinv_factor, PinvOperator};
use crate::geometry2d::Discretization;
use crate::specfun::Kernel;
use crate::{CMat, Result, C64};
use faer::Mat;

/// The dense local MFS system with its cached truncated-SVD pseudo-inverse.
#[derive(Debug, Clone)]
pub struct LocalSystem {
    /// Collocation matrix, m x n with m > n by construction.
    pub a: CMat,
    /// Truncated-SVD pseudo-inverse of `a`, factored once and reused.
    pub pinv: PinvOperator,
    pub kernel: Kernel,
}

/// Field of a set of monopole sources at a target point.
pub fn eval_monopole_field(
    k: &Kernel,
    sources: &[crate::Point],
    strengths: &[C64],
    target: crate::Point,
) -> Result<C64> {
    debug_assert_eq!(sources.len(), strengths.len());
    let mut acc = C64::new(0.0, 0.0);
    for (y, q) in sources.iter().zip(strengths.iter()) {
        acc += k.eval(target, *y)? * q;
    }
    Ok(acc)
}

/// Assemble the dense collocation matrix and factor its pseudo-inverse.
///
/// A coincident source/collocation pair surfaces as a singularity error.
pub fn build_local_system(disc: &Discretization, k: &Kernel, rel_cutoff: f64) -> Result<LocalSystem> {
    let m = disc.n_colloc();
    let n = disc.n_sources();
    let mut a = Mat::<C64>::zeros(m, n);
    for j in 0..n {
        for i in 0..m {
            a[(i, j)] = k.eval(disc.colloc[i], disc.mfs_sources[j])?;
        }
    }
    let pinv = pinv_factor(&a, rel_cutoff)?;
    Ok(LocalSystem { a, pinv, kernel: *k })
}

/// Solve the local Dirichlet problem: `q = A^dagger w`, with the relative
/// residual `||A q - w|| / ||w||` reported (0 for w = 0).
pub fn solve_local_dirichlet(sys: &LocalSystem, w: &[C64]) -> Result<(Vec<C64>, f64)> {
    let q = sys.pinv.apply(w);
    let wnorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if wnorm == 0.0 {
        return Ok((q, 0.0));
    }
    let aq = &sys.a * faer::ColRef::from_slice(&q);
    let rnorm = w
        .iter()
        .enumerate()
        .map(|(i, wi)| (aq[i] - wi).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((q, rnorm / wnorm))
}
