//! Adjacency eigenvalues of self-loop graphs, the shifted spectrum, and the
//! trace identities used as residual checks.

use thiserror::Error;

use crate::graph::SelfLoopGraph;

/// Default tolerance for downstream equality detection.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge within {MAX_SWEEPS} sweeps (off-norm {0:e})")]
    NoConvergence(f64),
}

/// Adjacency eigenvalues sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.values[0]
    }

    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        *self.values.last().expect("spectrum is nonempty")
    }
}

/// Eigenvalues shifted by sigma/n, both in lambda-descending order and
/// reordered by descending absolute value.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedSpectrum {
    mu: Vec<f64>,
    abs_order: Vec<f64>,
    shift: f64,
}

impl ShiftedSpectrum {
    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn abs_order(&self) -> &[f64] {
        &self.abs_order
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// |mu| of largest magnitude.
    pub fn abs_max(&self) -> f64 {
        self.abs_order[0].abs()
    }

    /// |mu| of smallest magnitude.
    pub fn abs_min(&self) -> f64 {
        self.abs_order.last().expect("spectrum is nonempty").abs()
    }
}

/// Absolute residuals of the trace identities: sum of eigenvalues vs sigma,
/// sum of squares vs 2m+sigma, and shifted sum of squares vs 2m+sigma-sigma^2/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceResiduals {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl TraceResiduals {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3)
    }
}

/// All eigenvalues of A(G_S) via cyclic Jacobi rotations, descending.
///
/// Convergence: off-diagonal Frobenius norm below tol-scaled matrix norm,
/// with the threshold floored at 1e-13 relative so equality detection
/// downstream sees near machine precision.
pub fn eigenvalues(g: &SelfLoopGraph, tol: f64) -> Result<Spectrum, SpectralError> {
    let n = g.order();
    let mut a = g.adjacency_matrix().to_f64();
    let mut values = jacobi_eigenvalues(&mut a, n, tol)?;
    values.sort_unstable_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    Ok(Spectrum { values })
}

fn jacobi_eigenvalues(a: &mut [f64], n: usize, tol: f64) -> Result<Vec<f64>, SpectralError> {
    if n == 1 {
        return Ok(vec![a[0]]);
    }
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol.min(1e-13) * frob.max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = off_diag_norm(a, n);
        if off < threshold {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle from the standard 2x2 symmetric Schur decomposition.
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let off = off_diag_norm(a, n);
    if off < threshold {
        Ok((0..n).map(|i| a[i * n + i]).collect())
    } else {
        Err(SpectralError::NoConvergence(off))
    }
}

fn off_diag_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Shifts the spectrum by sigma/n and derives the |mu|-descending order.
/// Ties in magnitude keep the more-positive value first.
pub fn shifted_spectrum(spec: &Spectrum, n: usize, sigma: usize) -> ShiftedSpectrum {
    assert_eq!(spec.len(), n, "spectrum length must match order");
    assert!(sigma <= n);
    let shift = sigma as f64 / n as f64;
    let mu: Vec<f64> = spec.values().iter().map(|l| l - shift).collect();
    let mut abs_order = mu.clone();
    abs_order.sort_unstable_by(|x, y| {
        y.abs()
            .partial_cmp(&x.abs())
            .expect("finite")
            .then(y.partial_cmp(x).expect("finite"))
    });
    ShiftedSpectrum {
        mu,
        abs_order,
        shift,
    }
}

/// Residuals of the first/second moment identities for a spectrum computed
/// from `g`.
pub fn trace_residuals(g: &SelfLoopGraph, spec: &Spectrum) -> TraceResiduals {
    let n = g.order() as f64;
    let m = g.edge_count() as f64;
    let sigma = g.loop_count() as f64;
    let sum: f64 = spec.values().iter().sum();
    let sum_sq: f64 = spec.values().iter().map(|l| l * l).sum();
    let shift = sigma / n;
    let shifted_sq: f64 = spec.values().iter().map(|l| (l - shift) * (l - shift)).sum();
    TraceResiduals {
        r1: (sum - sigma).abs(),
        r2: (sum_sq - (2.0 * m + sigma)).abs(),
        r3: (shifted_sq - (2.0 * m + sigma - sigma * sigma / n)).abs(),
    }
}

/// Largest eigenvalue magnitude; equals lambda_1 since A(G_S) is nonnegative.
pub fn spectral_radius(g: &SelfLoopGraph) -> Result<f64, SpectralError> {
    let spec = eigenvalues(g, DEFAULT_TOL)?;
    Ok(spec
        .values()
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs())))
}
