//! Exact negative-eigenvalue counting for finitely many interactions: the
//! dense M-matrix signature formula for δ, the sign count for δ', the
//! Bargmann-type bound and the weighted trace identity.

use thiserror::Error;

use crate::linalg::{dense_inertia, Inertia, SymDense};
use crate::model::{HamiltonianConfig, InteractionKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NegSpecError {
    #[error("alpha entries must be nonzero (drop zero-strength points)")]
    ZeroAlpha,
    #[error("beta entries must be nonzero")]
    ZeroBetaStrength,
    #[error("kappa count came out negative: inertia bug")]
    NegativeResult,
    #[error("bound inapplicable: no negative strength part and no negative potential part")]
    Inapplicable,
    #[error("trace identity requires all alpha negative")]
    NonNegativeAlpha,
    #[error("operation requires a finite {0:?} configuration")]
    WrongConfig(InteractionKind),
}

/// Dense matrix with entries (j,j) = 1/α_j + x_j and (j,k) = x_{min(j,k)}.
#[derive(Debug, Clone, PartialEq)]
pub struct MMatrix {
    pub matrix: SymDense,
}

/// Build the M-matrix for positions `xs` and nonzero strengths `alphas`.
pub fn build_m_matrix(xs: &[f64], alphas: &[f64]) -> Result<MMatrix, NegSpecError> {
    assert_eq!(xs.len(), alphas.len());
    if alphas.iter().any(|&a| a == 0.0) {
        return Err(NegSpecError::ZeroAlpha);
    }
    let n = xs.len();
    let mut m = SymDense::zeros(n);
    for j in 0..n {
        for k in 0..=j {
            if j == k {
                m.set(j, j, 1.0 / alphas[j] + xs[j]);
            } else {
                m.set(j, k, xs[k.min(j)]);
            }
        }
    }
    Ok(MMatrix { matrix: m })
}

fn kappa_plus_of_slice(v: &[f64]) -> usize {
    v.iter().filter(|&&a| a > 0.0).count()
}

/// κ₋ of the finite-δ Hamiltonian: κ₊(M) − κ₊(α). Zero-strength entries are
/// stripped together with their points before building M.
pub fn kappa_minus_delta(xs: &[f64], alphas: &[f64]) -> Result<usize, NegSpecError> {
    let kept: Vec<(f64, f64)> = xs
        .iter()
        .zip(alphas)
        .filter(|(_, &a)| a != 0.0)
        .map(|(&x, &a)| (x, a))
        .collect();
    if kept.is_empty() {
        return Ok(0);
    }
    let (xk, ak): (Vec<f64>, Vec<f64>) = kept.into_iter().unzip();
    let m = build_m_matrix(&xk, &ak)?;
    let Inertia { kappa_plus, .. } = dense_inertia(&m.matrix);
    let plus_alpha = kappa_plus_of_slice(&ak);
    if kappa_plus < plus_alpha {
        return Err(NegSpecError::NegativeResult);
    }
    Ok(kappa_plus - plus_alpha)
}

/// κ₋ from a finite δ configuration.
pub fn kappa_minus_delta_config(config: &HamiltonianConfig) -> Result<usize, NegSpecError> {
    if config.kind != InteractionKind::Delta {
        return Err(NegSpecError::WrongConfig(InteractionKind::Delta));
    }
    let (xs, alphas) = config
        .finite_data()
        .ok_or(NegSpecError::WrongConfig(InteractionKind::Delta))?;
    kappa_minus_delta(&xs, &alphas)
}

/// Strict upper bound ∫|q⁻| + Σ α_k⁻ x_k for κ₋ of a self-adjoint δ
/// Hamiltonian. Errors with `Inapplicable` when both negative parts vanish.
pub fn bargmann_bound(config: &HamiltonianConfig) -> Result<f64, NegSpecError> {
    if config.kind != InteractionKind::Delta {
        return Err(NegSpecError::WrongConfig(InteractionKind::Delta));
    }
    let (xs, alphas) = config
        .finite_data()
        .ok_or(NegSpecError::WrongConfig(InteractionKind::Delta))?;
    let q_part = config.potential.negative_part_integral();
    let alpha_part: f64 = xs
        .iter()
        .zip(&alphas)
        .map(|(&x, &a)| if a < 0.0 { -a * x } else { 0.0 })
        .sum();
    if q_part == 0.0 && alpha_part == 0.0 {
        return Err(NegSpecError::Inapplicable);
    }
    Ok(q_part + alpha_part)
}

/// κ₋ of the δ' Hamiltonian: the number of strictly negative β (β = +∞
/// counts as nonnegative).
pub fn kappa_minus_delta_prime(betas: &[f64]) -> Result<usize, NegSpecError> {
    if betas.iter().any(|&b| b == 0.0) {
        return Err(NegSpecError::ZeroBetaStrength);
    }
    Ok(betas.iter().filter(|&&b| b < 0.0).count())
}

/// Outcome of the trace identity tr(Λ^{1/2} M_X Λ^{1/2}) = Σ |α_k| x_k for
/// all-negative strengths, with Λ = diag(|α_k|) and M_X the all-positions
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
}

pub fn trace_identity_check(xs: &[f64], alphas: &[f64]) -> Result<TraceCheck, NegSpecError> {
    assert_eq!(xs.len(), alphas.len());
    if alphas.iter().any(|&a| a >= 0.0) {
        return Err(NegSpecError::NonNegativeAlpha);
    }
    let n = xs.len();
    // M_X with entries x_{min(j,k)}
    let mut mx = SymDense::zeros(n);
    for j in 0..n {
        for k in 0..=j {
            mx.set(j, k, xs[k.min(j)]);
        }
    }
    // Λ^{1/2} M_X Λ^{1/2} computed entrywise; one square root of the product
    // keeps the diagonal weights |α_j| exact
    let mut weighted = SymDense::zeros(n);
    for j in 0..n {
        for k in 0..=j {
            let w = (alphas[j].abs() * alphas[k].abs()).sqrt();
            weighted.set(j, k, w * mx.get(j, k));
        }
    }
    let lhs = weighted.trace();
    let rhs: f64 = xs.iter().zip(alphas).map(|(&x, &a)| a.abs() * x).sum();
    Ok(TraceCheck { lhs, rhs, abs_diff: (lhs - rhs).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_matrix_entries() {
        let m = build_m_matrix(&[2.0], &[-1.0]).unwrap().matrix;
        assert_eq!(m.get(0, 0), 1.0);
        let m = build_m_matrix(&[0.5], &[-1.0]).unwrap().matrix;
        assert_eq!(m.get(0, 0), -0.5);
        let m = build_m_matrix(&[1.0, 2.0], &[-1.0, 3.0]).unwrap().matrix;
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(1, 0), 1.0);
        assert!((m.get(1, 1) - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_alpha_rejected() {
        assert_eq!(build_m_matrix(&[1.0], &[0.0]).unwrap_err(), NegSpecError::ZeroAlpha);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_minus_delta(&[2.0], &[-1.0]).unwrap(), 1);
        assert_eq!(kappa_minus_delta(&[0.5], &[-1.0]).unwrap(), 0);
        // det M = -1 < 0 so κ₊(M) = 1 = κ₊(α)
        assert_eq!(kappa_minus_delta(&[1.0, 2.0], &[-1.0, 3.0]).unwrap(), 0);
    }

    #[test]
    fn zero_strengths_are_stripped() {
        assert_eq!(kappa_minus_delta(&[1.0, 2.0], &[0.0, -1.0]).unwrap(), 1);
        assert_eq!(kappa_minus_delta(&[5.0], &[0.0]).unwrap(), 0);
    }

    #[test]
    fn kappa_bounded_by_negative_count() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..10.0)).collect();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            xs.dedup();
            let alphas: Vec<f64> = (0..xs.len())
                .map(|_| {
                    let v: f64 = rng.gen_range(-5.0..5.0);
                    if v.abs() < 1e-3 {
                        1.0
                    } else {
                        v
                    }
                })
                .collect();
            let k = kappa_minus_delta(&xs, &alphas).unwrap();
            let negs = alphas.iter().filter(|&&a| a < 0.0).count();
            assert!(k <= negs);
        }
    }

    #[test]
    fn bargmann_examples() {
        let c = HamiltonianConfig::finite_delta(vec![2.0], vec![-1.0]);
        let b = bargmann_bound(&c).unwrap();
        assert_eq!(b, 2.0);
        assert!(kappa_minus_delta(&[2.0], &[-1.0]).unwrap() < 2);

        let c = HamiltonianConfig::finite_delta(vec![1.0, 2.0], vec![-1.0, -2.0]);
        assert_eq!(bargmann_bound(&c).unwrap(), 5.0);

        let c = HamiltonianConfig::finite_delta(vec![1.0, 2.0], vec![1.0, 2.0]);
        assert_eq!(bargmann_bound(&c).unwrap_err(), NegSpecError::Inapplicable);
    }

    #[test]
    fn delta_prime_count() {
        assert_eq!(kappa_minus_delta_prime(&[1.0, -2.0, 3.0, -4.0]).unwrap(), 2);
        assert_eq!(kappa_minus_delta_prime(&[1.0, 2.0, 3.0]).unwrap(), 0);
        assert_eq!(kappa_minus_delta_prime(&[]).unwrap(), 0);
        assert_eq!(kappa_minus_delta_prime(&[f64::INFINITY, -1.0]).unwrap(), 1);
        assert_eq!(
            kappa_minus_delta_prime(&[0.0]).unwrap_err(),
            NegSpecError::ZeroBetaStrength
        );
    }

    #[test]
    fn trace_identity_examples() {
        let t = trace_identity_check(&[1.0, 2.0], &[-1.0, -2.0]).unwrap();
        assert_eq!(t.lhs, 5.0);
        assert_eq!(t.rhs, 5.0);
        let t = trace_identity_check(&[3.0], &[-2.0]).unwrap();
        assert_eq!(t.rhs, 6.0);
        assert!(t.abs_diff < 1e-12);
        let t = trace_identity_check(&[1.0, 1.5, 4.0], &[-0.1, -0.2, -0.3]).unwrap();
        assert!((t.rhs - 1.6).abs() < 1e-12);
        assert!(t.abs_diff < 1e-10 * t.rhs.abs());
        assert!(trace_identity_check(&[1.0], &[2.0]).is_err());
    }
}
