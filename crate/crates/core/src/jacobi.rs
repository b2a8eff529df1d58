//! Jacobi matrices attached to point-interaction Hamiltonians: entrywise
//! builders for the δ and δ' cases, the shift factorization of the δ' matrix,
//! the string-sequence image, matrix inertia and truncation sweeps.

use thiserror::Error;

use crate::linalg::{self, Inertia};
use crate::model::{HamiltonianConfig, InteractionKind, Support, SymbolicSequence};

pub type InertiaTriple = Inertia;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JacobiError {
    #[error("sequence data exhausted at index {needed} (have {have})")]
    InsufficientSequence { needed: usize, have: usize },
    #[error("gaps must be positive")]
    NonPositiveSpacing,
    #[error("string image requires all beta positive and finite")]
    NonPositiveBeta,
    #[error("matrix dimension must be even for the factorization, got {0}")]
    OddDimension(usize),
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i.abs_diff(j) == 1 {
            self.offdiag[i.min(j)]
        } else {
            0.0
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(self.offdiag.iter())
            .fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Signature of `matrix - shift·I`.
pub fn inertia(matrix: &SymTridiagonal, shift: f64) -> InertiaTriple {
    linalg::tridiagonal_inertia(&matrix.diag, &matrix.offdiag, shift)
}

fn gather(seq: &SymbolicSequence, upto: usize) -> Result<Vec<f64>, JacobiError> {
    let mut out = Vec::with_capacity(upto);
    for k in 1..=upto as u64 {
        match seq.eval(k) {
            Some(v) => out.push(v),
            None => {
                return Err(JacobiError::InsufficientSequence {
                    needed: upto,
                    have: (k - 1) as usize,
                })
            }
        }
    }
    Ok(out)
}

fn gather_gaps(support: &Support, upto: usize) -> Result<Vec<f64>, JacobiError> {
    let mut out = Vec::with_capacity(upto);
    for k in 1..=upto as u64 {
        match support.gap(k) {
            Some(d) if d > 0.0 => out.push(d),
            Some(_) => return Err(JacobiError::NonPositiveSpacing),
            None => {
                return Err(JacobiError::InsufficientSequence {
                    needed: upto,
                    have: (k - 1) as usize,
                })
            }
        }
    }
    Ok(out)
}

/// n×n truncation of the δ Jacobi matrix:
/// diag_k = r_k⁻²(α_k + 1/d_k + 1/d_{k+1}), off_k = (r_k r_{k+1} d_{k+1})⁻¹,
/// r_k = √(d_k + d_{k+1}).
pub fn build_delta_jacobi(
    support: &Support,
    alpha: &SymbolicSequence,
    n: usize,
) -> Result<SymTridiagonal, JacobiError> {
    let d = gather_gaps(support, n + 1)?;
    let a = gather(alpha, n)?;
    Ok(build_delta_jacobi_from(&d, &a, n))
}

/// Same builder over explicit gap/strength data (d has length >= n+1).
pub fn build_delta_jacobi_from(d: &[f64], alpha: &[f64], n: usize) -> SymTridiagonal {
    assert!(d.len() >= n + 1 && alpha.len() >= n);
    // r_k² = d_k + d_{k+1} is used unsquared and the off-diagonal takes one
    // square root of the product, keeping rational data exact
    let r2 = |k: usize| d[k - 1] + d[k];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..=n {
        diag.push((alpha[k - 1] + 1.0 / d[k - 1] + 1.0 / d[k]) / r2(k));
        if k < n {
            off.push(1.0 / ((r2(k) * r2(k + 1)).sqrt() * d[k]));
        }
    }
    SymTridiagonal { diag, offdiag: off }
}

/// n×n truncation of the δ' Jacobi matrix. With m = pair index:
/// diag_1 = d_1⁻², diag_{2m} = d_m⁻¹/β_m + d_m⁻², diag_{2m+1} = d_{m+1}⁻¹/β_m + d_{m+1}⁻²;
/// off_{2m-1} = d_m⁻², off_{2m} = d_m^{-1/2} d_{m+1}^{-1/2} / β_m.
/// β_m = +∞ contributes 1/β_m = 0 (Neumann decoupling).
pub fn build_delta_prime_jacobi(
    support: &Support,
    beta: &SymbolicSequence,
    n: usize,
) -> Result<SymTridiagonal, JacobiError> {
    let d = gather_gaps(support, n.div_ceil(2))?;
    let b = gather(beta, n / 2)?;
    Ok(build_delta_prime_jacobi_from(&d, &b, n))
}

/// Same builder over explicit data (d of length >= ⌈n/2⌉, beta >= ⌊n/2⌋).
pub fn build_delta_prime_jacobi_from(d: &[f64], beta: &[f64], n: usize) -> SymTridiagonal {
    assert!(d.len() >= n.div_ceil(2) && beta.len() >= n / 2);
    let inv_beta = |m: usize| {
        let b = beta[m - 1];
        if b.is_infinite() {
            0.0
        } else {
            1.0 / b
        }
    };
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..=n {
        if i == 1 {
            diag.push(1.0 / (d[0] * d[0]));
        } else if i % 2 == 0 {
            let m = i / 2;
            let dm = d[m - 1];
            diag.push(inv_beta(m) / dm + 1.0 / (dm * dm));
        } else {
            let m = (i - 1) / 2;
            let dn = d[m]; // d_{m+1}
            diag.push(inv_beta(m) / dn + 1.0 / (dn * dn));
        }
        if i < n {
            if i % 2 == 1 {
                let m = (i + 1) / 2;
                off.push(1.0 / (d[m - 1] * d[m - 1]));
            } else {
                let m = i / 2;
                off.push(inv_beta(m) / (d[m - 1].sqrt() * d[m].sqrt()));
            }
        }
    }
    SymTridiagonal { diag, offdiag: off }
}

/// Shift direction of the unilateral shift U in the factorization
/// B = R⁻¹(I+U) D⁻¹ (I+U*) R⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftConvention {
    /// U has ones on the first subdiagonal (U e_j = e_{j+1}).
    RowShift,
    /// U has ones on the first superdiagonal.
    ColumnShift,
}

/// Diagonal factors of the δ' factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationParts {
    /// R: √d_m, each repeated twice.
    pub r: Vec<f64>,
    /// D: alternating d_m, β_m.
    pub d: Vec<f64>,
    pub shift_convention: ShiftConvention,
    /// max |reconstruction - direct| / max(1, max|direct|).
    pub residual: f64,
}

fn reconstruct(r: &[f64], dd: &[f64], n: usize, conv: ShiftConvention) -> Vec<Vec<f64>> {
    // M = (I+U) D⁻¹ (I+U*): tridiagonal with diag e_i + e_{i-1}, off e_i,
    // where e_i = 1/dd_i (RowShift); ColumnShift transposes the shift, giving
    // diag e_i + e_{i+1}, off e_{i+1}
    let e = |i: usize| -> f64 {
        let v = dd[i];
        if v.is_infinite() {
            0.0
        } else {
            1.0 / v
        }
    };
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let core = match conv {
                ShiftConvention::RowShift => {
                    if i == j {
                        e(i) + if i > 0 { e(i - 1) } else { 0.0 }
                    } else if i.abs_diff(j) == 1 {
                        e(i.min(j))
                    } else {
                        0.0
                    }
                }
                ShiftConvention::ColumnShift => {
                    if i == j {
                        e(i) + if i + 1 < n { e(i + 1) } else { 0.0 }
                    } else if i.abs_diff(j) == 1 {
                        e(i.max(j))
                    } else {
                        0.0
                    }
                }
            };
            m[i][j] = core / (r[i] * r[j]);
        }
    }
    m
}

fn residual_against(direct: &SymTridiagonal, rebuilt: &[Vec<f64>]) -> f64 {
    let n = direct.dim();
    let scale = direct.max_abs().max(1.0);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((rebuilt[i][j] - direct.entry(i, j)).abs());
        }
    }
    worst / scale
}

/// Factor the n×n δ' matrix (n even) as R⁻¹(I+U)D⁻¹(I+U*)R⁻¹, determining
/// the shift convention empirically at n = 4 and reporting the max-entry
/// reconstruction residual (relative to the largest entry).
pub fn factor_delta_prime(
    support: &Support,
    beta: &SymbolicSequence,
    n: usize,
) -> Result<FactorizationParts, JacobiError> {
    if n % 2 != 0 || n == 0 {
        return Err(JacobiError::OddDimension(n));
    }
    let pairs = n / 2;
    let gaps = gather_gaps(support, pairs)?;
    let betas = gather(beta, pairs)?;
    factor_delta_prime_from(&gaps, &betas, n)
}

/// Same over explicit data (gaps and betas of length >= n/2).
pub fn factor_delta_prime_from(
    gaps: &[f64],
    betas: &[f64],
    n: usize,
) -> Result<FactorizationParts, JacobiError> {
    if n % 2 != 0 || n == 0 {
        return Err(JacobiError::OddDimension(n));
    }
    let pairs = n / 2;
    if gaps.iter().take(pairs).any(|&d| d <= 0.0) {
        return Err(JacobiError::NonPositiveSpacing);
    }
    let mut r = Vec::with_capacity(n);
    let mut dd = Vec::with_capacity(n);
    for m in 0..pairs {
        let s = gaps[m].sqrt();
        r.push(s);
        r.push(s);
        dd.push(gaps[m]);
        dd.push(betas[m]);
    }

    // pick the convention at a small probe size
    let probe_n = n.min(4);
    let direct_probe = build_delta_prime_jacobi_from(gaps, betas, probe_n);
    let convention = {
        let row = residual_against(
            &direct_probe,
            &reconstruct(&r[..probe_n], &dd[..probe_n], probe_n, ShiftConvention::RowShift),
        );
        let col = residual_against(
            &direct_probe,
            &reconstruct(&r[..probe_n], &dd[..probe_n], probe_n, ShiftConvention::ColumnShift),
        );
        if row <= col {
            ShiftConvention::RowShift
        } else {
            ShiftConvention::ColumnShift
        }
    };

    let direct = build_delta_prime_jacobi_from(gaps, betas, n);
    let rebuilt = reconstruct(&r, &dd, n, convention);
    let residual = residual_against(&direct, &rebuilt);
    Ok(FactorizationParts { r, d: dd, shift_convention: convention, residual })
}

/// Interleaved string data: lengths l = (d_1, β_1, d_2, β_2, ...) and masses
/// m = (d_1, d_1, d_2, d_2, ...). Requires every β positive and finite.
pub fn krein_string_map(
    support: &Support,
    beta: &SymbolicSequence,
) -> Result<(Vec<f64>, Vec<f64>), JacobiError> {
    let n = support
        .len()
        .ok_or(JacobiError::InsufficientSequence { needed: usize::MAX, have: 0 })?;
    let gaps = gather_gaps(support, n)?;
    let betas = gather(beta, n)?;
    if betas.iter().any(|&b| b <= 0.0 || !b.is_finite()) {
        return Err(JacobiError::NonPositiveBeta);
    }
    let mut l = Vec::with_capacity(2 * n);
    let mut m = Vec::with_capacity(2 * n);
    for k in 0..n {
        l.push(gaps[k]);
        l.push(betas[k]);
        m.push(gaps[k]);
        m.push(gaps[k]);
    }
    Ok((l, m))
}

/// One row of a truncation sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub kappa_minus: usize,
}

/// κ₋ of the n×n truncations over `n_list`, with a stabilization flag:
/// the trailing half of the list must agree.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub stabilized: bool,
    /// The stabilized κ₋ when `stabilized` holds.
    pub value: Option<usize>,
}

/// Truncation sweep of κ₋ over the configured Jacobi matrix. Finite
/// configurations are extended past their last point with unit gaps and
/// no-op strengths (α = 0 for δ, β = +∞ decoupling entries for δ'), which
/// leaves the operator — and so κ₋ — unchanged.
pub fn truncation_sweep(
    config: &HamiltonianConfig,
    n_list: &[usize],
) -> Result<SweepResult, JacobiError> {
    let max_n = n_list.iter().copied().max().unwrap_or(0);
    let (d, s): (Vec<f64>, Vec<f64>) = if let Some((xs, ss)) = config.finite_data() {
        let mut gaps = Vec::with_capacity(max_n + 2);
        let mut prev = 0.0;
        for &x in &xs {
            gaps.push(x - prev);
            prev = x;
        }
        let pad = match config.kind {
            InteractionKind::Delta => 0.0,
            InteractionKind::DeltaPrime => f64::INFINITY,
        };
        let mut strengths = ss;
        while gaps.len() < max_n + 2 {
            gaps.push(1.0);
        }
        while strengths.len() < max_n + 2 {
            strengths.push(pad);
        }
        (gaps, strengths)
    } else {
        (gather_gaps(&config.support, max_n + 2)?, gather(&config.strengths, max_n + 2)?)
    };

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let matrix = match config.kind {
            InteractionKind::Delta => build_delta_jacobi_from(&d, &s, n),
            InteractionKind::DeltaPrime => build_delta_prime_jacobi_from(&d, &s, n),
        };
        let i = inertia(&matrix, 0.0);
        rows.push(SweepRow { n, kappa_minus: i.kappa_minus });
    }

    let tail = rows.len().div_ceil(2);
    let trailing = &rows[rows.len() - tail..];
    let stabilized = !trailing.is_empty()
        && trailing.iter().all(|r| r.kappa_minus == trailing[0].kappa_minus);
    let value = if stabilized { Some(trailing[0].kappa_minus) } else { None };
    Ok(SweepResult { rows, stabilized, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PiecewisePotential;

    fn unit_support() -> Support {
        Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 })
    }

    #[test]
    fn delta_matrix_unit_gaps_zero_alpha() {
        let alpha = SymbolicSequence::PowerLaw { c: 0.0, p: 0.0 };
        let b = build_delta_jacobi(&unit_support(), &alpha, 3).unwrap();
        assert_eq!(b.diag, vec![1.0, 1.0, 1.0]);
        assert_eq!(b.offdiag, vec![0.5, 0.5]);
    }

    #[test]
    fn delta_matrix_single_entry() {
        // d = (1,1), α = (-3): diag_1 = (−3 + 1 + 1)/2
        let b = build_delta_jacobi_from(&[1.0, 1.0], &[-3.0], 1);
        assert_eq!(b.diag, vec![-0.5]);
    }

    #[test]
    fn delta_matrix_uses_r_scaling() {
        // d = (1,3): r_1 = 2, diag_1 = (α + 1 + 1/3)/4
        let b = build_delta_jacobi_from(&[1.0, 3.0], &[0.0], 1);
        assert!((b.diag[0] - (1.0 + 1.0 / 3.0) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn delta_prime_matrix_unit_data() {
        let beta = SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 };
        let b = build_delta_prime_jacobi(&unit_support(), &beta, 4).unwrap();
        assert_eq!(b.diag, vec![1.0, 2.0, 2.0, 2.0]);
        assert_eq!(b.offdiag, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn delta_prime_matrix_neumann_entries() {
        let b = build_delta_prime_jacobi_from(&[1.0, 1.0, 1.0], &[f64::INFINITY, 1.0], 3);
        assert_eq!(b.diag, vec![1.0, 1.0, 1.0]);
        assert_eq!(b.offdiag, vec![1.0, 0.0]);
    }

    #[test]
    fn delta_prime_anchor_entry() {
        let b = build_delta_prime_jacobi_from(&[2.0, 1.0], &[1.0, 1.0], 1);
        assert_eq!(b.diag, vec![0.25]);
    }

    #[test]
    fn inertia_examples() {
        let m = SymTridiagonal { diag: vec![1.0, 1.0], offdiag: vec![0.0] };
        let i = inertia(&m, 0.0);
        assert_eq!((i.kappa_minus, i.kappa_zero, i.kappa_plus), (0, 0, 2));
        let m = SymTridiagonal { diag: vec![-0.5], offdiag: vec![] };
        assert_eq!(inertia(&m, 0.0).kappa_minus, 1);
        let m = SymTridiagonal { diag: vec![0.0, 0.0], offdiag: vec![1.0] };
        let i = inertia(&m, 0.0);
        assert_eq!((i.kappa_minus, i.kappa_zero, i.kappa_plus), (1, 0, 1));
    }

    #[test]
    fn factorization_unit_case() {
        let beta = SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 };
        let parts = factor_delta_prime(&unit_support(), &beta, 4).unwrap();
        assert!(parts.residual < 1e-12, "residual {}", parts.residual);
        assert_eq!(parts.d, vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(parts.r, vec![1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn factorization_n2_shape() {
        let beta = SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 };
        let parts = factor_delta_prime(&unit_support(), &beta, 2).unwrap();
        assert_eq!(parts.d, vec![1.0, 1.0]);
        assert_eq!(parts.r, vec![1.0, 1.0]);
        assert!(parts.residual < 1e-12);
    }

    #[test]
    fn factorization_random_reconstruction() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let pairs = 100;
            let gaps: Vec<f64> = (0..pairs).map(|_| rng.gen_range(0.1..10.0)).collect();
            let betas: Vec<f64> = (0..pairs)
                .map(|_| {
                    let mag = rng.gen_range(0.1..10.0);
                    if rng.gen_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect();
            let parts = factor_delta_prime_from(&gaps, &betas, 2 * pairs).unwrap();
            assert!(parts.residual < 1e-12, "residual {}", parts.residual);
        }
    }

    #[test]
    fn factorization_kappa_counts_negative_betas() {
        // κ₋ of the even truncation equals the number of negative β
        let gaps = vec![1.0, 0.5, 2.0, 1.0];
        let betas = vec![-1.0, 2.0, -3.0, 0.5];
        let b = build_delta_prime_jacobi_from(&gaps, &betas, 8);
        let i = inertia(&b, 0.0);
        assert_eq!(i.kappa_minus, 2);
    }

    #[test]
    fn string_map_examples() {
        let s = Support::points(vec![1.0, 3.0]);
        let beta = SymbolicSequence::finite(vec![3.0, 4.0]);
        let (l, m) = krein_string_map(&s, &beta).unwrap();
        assert_eq!(l, vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(m, vec![1.0, 1.0, 2.0, 2.0]);

        let s = Support::points(vec![1.0]);
        let beta = SymbolicSequence::finite(vec![1.0]);
        let (l, m) = krein_string_map(&s, &beta).unwrap();
        assert_eq!(l, vec![1.0, 1.0]);
        assert_eq!(m, vec![1.0, 1.0]);

        let s = Support::points(vec![1.0]);
        let beta = SymbolicSequence::finite(vec![-1.0]);
        assert_eq!(krein_string_map(&s, &beta), Err(JacobiError::NonPositiveBeta));
    }

    #[test]
    fn sweep_zero_alpha_stays_zero() {
        let config = HamiltonianConfig::delta(
            unit_support(),
            SymbolicSequence::PowerLaw { c: 0.0, p: 0.0 },
            PiecewisePotential::zero(),
        );
        let ns: Vec<usize> = (2..=32).collect();
        let sweep = truncation_sweep(&config, &ns).unwrap();
        assert!(sweep.stabilized);
        assert_eq!(sweep.value, Some(0));
        assert!(sweep.rows.iter().all(|r| r.kappa_minus == 0));
    }

    #[test]
    fn sweep_single_attractive_delta() {
        let config = HamiltonianConfig::finite_delta(vec![2.0], vec![-1.0]);
        let ns: Vec<usize> = (2..=64).collect();
        let sweep = truncation_sweep(&config, &ns).unwrap();
        assert!(sweep.stabilized);
        assert_eq!(sweep.value, Some(1));
    }

    #[test]
    fn sweep_delta_prime_counts_betas() {
        let config = HamiltonianConfig::finite_delta_prime(vec![1.0, 2.0], vec![-1.0, 3.0]);
        let ns: Vec<usize> = (2..=64).collect();
        let sweep = truncation_sweep(&config, &ns).unwrap();
        assert!(sweep.stabilized);
        assert_eq!(sweep.value, Some(1));
    }

    #[test]
    fn nonnegative_alpha_gives_zero_kappa() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.gen_range(1..=24);
            let d: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.05..5.0)).collect();
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
            let b = build_delta_jacobi_from(&d, &a, n);
            assert_eq!(inertia(&b, 0.0).kappa_minus, 0);
        }
    }
}
