//! Matrix inertia kernels: Sturm-sequence counts for symmetric tridiagonal
//! matrices and a Bunch–Kaufman factorization for dense symmetric ones, each
//! with a spectral-decomposition fallback near singular pivots.

use nalgebra::DMatrix;

/// Relative pivot tolerance: pivots below `PIVOT_RTOL · max|entry|` count as
/// zero and trigger the eigendecomposition fallback.
pub const PIVOT_RTOL: f64 = 1e-12;

/// Signature (κ₋, κ₀, κ₊) of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub kappa_minus: usize,
    pub kappa_zero: usize,
    pub kappa_plus: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.kappa_minus + self.kappa_zero + self.kappa_plus
    }
}

fn classify_eigenvalues(eigs: impl Iterator<Item = f64>, tol: f64) -> Inertia {
    let mut out = Inertia { kappa_minus: 0, kappa_zero: 0, kappa_plus: 0 };
    for e in eigs {
        if e.abs() <= tol {
            out.kappa_zero += 1;
        } else if e < 0.0 {
            out.kappa_minus += 1;
        } else {
            out.kappa_plus += 1;
        }
    }
    out
}

/// Inertia of a symmetric tridiagonal matrix shifted by `-shift·I`.
///
/// Runs the LDLᵀ Sturm recurrence; a pivot below the relative tolerance
/// abandons the count and defers to the symmetric eigendecomposition.
pub fn tridiagonal_inertia(diag: &[f64], offdiag: &[f64], shift: f64) -> Inertia {
    let n = diag.len();
    assert!(offdiag.len() + 1 == n || (n == 0 && offdiag.is_empty()));
    if n == 0 {
        return Inertia { kappa_minus: 0, kappa_zero: 0, kappa_plus: 0 };
    }
    let scale = diag
        .iter()
        .map(|d| (d - shift).abs())
        .chain(offdiag.iter().map(|e| e.abs()))
        .fold(0.0, f64::max);
    let tol = PIVOT_RTOL * scale.max(1.0);

    let mut minus = 0;
    let mut plus = 0;
    let mut q = diag[0] - shift;
    for i in 0..n {
        if q.abs() < tol {
            return tridiagonal_inertia_by_eigen(diag, offdiag, shift, tol);
        }
        if q < 0.0 {
            minus += 1;
        } else {
            plus += 1;
        }
        if i + 1 < n {
            q = (diag[i + 1] - shift) - offdiag[i] * offdiag[i] / q;
        }
    }
    Inertia { kappa_minus: minus, kappa_zero: 0, kappa_plus: plus }
}

fn tridiagonal_inertia_by_eigen(diag: &[f64], offdiag: &[f64], shift: f64, tol: f64) -> Inertia {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i] - shift;
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eigs = m.symmetric_eigenvalues();
    classify_eigenvalues(eigs.iter().cloned(), tol)
}

/// Eigenvalues of a symmetric tridiagonal matrix by Sturm bisection,
/// ascending. Independent of `tridiagonal_inertia`'s LDLᵀ path in the sense
/// that it never divides by a pivot (guarded recurrence).
pub fn tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    // Gershgorin enclosure
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    let count_below = |lambda: f64| -> usize {
        let guard = 1e-300;
        let mut count = 0;
        let mut q = diag[0] - lambda;
        for i in 0..n {
            if q.abs() < guard {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
            if i + 1 < n {
                q = (diag[i + 1] - lambda) - offdiag[i] * offdiag[i] / q;
            }
        }
        count
    };

    (1..=n)
        .map(|k| {
            let mut a = lo;
            let mut b = hi;
            for _ in 0..120 {
                let mid = 0.5 * (a + b);
                if !(a < mid && mid < b) {
                    break;
                }
                if count_below(mid) >= k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymDense {
    pub n: usize,
    data: Vec<f64>,
}

impl SymDense {
    pub fn zeros(n: usize) -> SymDense {
        SymDense { n, data: vec![0.0; n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Inertia of a dense symmetric matrix via Bunch–Kaufman (partial pivoting,
/// 1×1 and 2×2 pivots), falling back to the symmetric eigendecomposition
/// when a pivot falls under the relative tolerance.
pub fn dense_inertia(m: &SymDense) -> Inertia {
    let n = m.n;
    if n == 0 {
        return Inertia { kappa_minus: 0, kappa_zero: 0, kappa_plus: 0 };
    }
    let tol = PIVOT_RTOL * m.max_abs().max(1.0);
    match bunch_kaufman_inertia(m, tol) {
        Some(inertia) => inertia,
        None => {
            let eigs = m.to_dmatrix().symmetric_eigenvalues();
            classify_eigenvalues(eigs.iter().cloned(), tol)
        }
    }
}

/// Inertia via the symmetric eigendecomposition (validation route).
pub fn dense_inertia_by_eigen(m: &SymDense) -> Inertia {
    let tol = PIVOT_RTOL * m.max_abs().max(1.0);
    let eigs = m.to_dmatrix().symmetric_eigenvalues();
    classify_eigenvalues(eigs.iter().cloned(), tol)
}

fn bunch_kaufman_inertia(m: &SymDense, tol: f64) -> Option<Inertia> {
    // working copy; elimination proceeds on the trailing submatrix
    let n = m.n;
    let mut a = vec![0.0; n * n];
    a.copy_from_slice(&m.data[..]);
    let idx = |i: usize, j: usize| i * n + j;

    const ALPHA: f64 = 0.6403882032022076; // (1 + sqrt(17)) / 8

    let mut minus = 0usize;
    let mut plus = 0usize;
    let mut k = 0usize;
    let mut perm: Vec<usize> = (0..n).collect();

    let swap_rows_cols = |a: &mut Vec<f64>, perm: &mut Vec<usize>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for c in 0..n {
            a.swap(idx(i, c), idx(j, c));
        }
        for r in 0..n {
            a.swap(idx(r, i), idx(r, j));
        }
        perm.swap(i, j);
    };

    while k < n {
        if k == n - 1 {
            let p = a[idx(k, k)];
            if p.abs() < tol {
                return None;
            }
            if p < 0.0 {
                minus += 1;
            } else {
                plus += 1;
            }
            break;
        }

        // largest off-diagonal magnitude in column k below the diagonal
        let mut r = k + 1;
        let mut lambda = 0.0;
        for i in (k + 1)..n {
            let v = a[idx(i, k)].abs();
            if v > lambda {
                lambda = v;
                r = i;
            }
        }
        let akk = a[idx(k, k)].abs();

        let use_1x1_at_k = lambda == 0.0 || akk >= ALPHA * lambda;
        let mut pivot2 = false;
        if !use_1x1_at_k {
            // inspect column r
            let mut sigma = 0.0f64;
            for i in k..n {
                if i != r {
                    sigma = sigma.max(a[idx(i, r)].abs());
                }
            }
            if akk * sigma >= ALPHA * lambda * lambda {
                // keep 1×1 pivot at k
            } else if a[idx(r, r)].abs() >= ALPHA * sigma {
                swap_rows_cols(&mut a, &mut perm, k, r);
            } else {
                pivot2 = true;
                swap_rows_cols(&mut a, &mut perm, k + 1, r);
            }
        }

        if !pivot2 {
            let p = a[idx(k, k)];
            if p.abs() < tol {
                return None;
            }
            if p < 0.0 {
                minus += 1;
            } else {
                plus += 1;
            }
            for i in (k + 1)..n {
                let l = a[idx(i, k)] / p;
                if l == 0.0 {
                    continue;
                }
                for j in (k + 1)..=i {
                    let update = l * a[idx(k, j)];
                    a[idx(i, j)] -= update;
                    a[idx(j, i)] = a[idx(i, j)];
                }
            }
            k += 1;
        } else {
            // 2×2 pivot on rows/cols (k, k+1)
            let p11 = a[idx(k, k)];
            let p12 = a[idx(k, k + 1)];
            let p22 = a[idx(k + 1, k + 1)];
            let det = p11 * p22 - p12 * p12;
            if det.abs() < tol * tol {
                return None;
            }
            // inertia of the 2×2 block
            if det < 0.0 {
                minus += 1;
                plus += 1;
            } else if p11 + p22 < 0.0 {
                minus += 2;
            } else {
                plus += 2;
            }
            // eliminate below: L = A[i, k..k+2] · P⁻¹
            let inv11 = p22 / det;
            let inv12 = -p12 / det;
            let inv22 = p11 / det;
            for i in (k + 2)..n {
                let b1 = a[idx(i, k)];
                let b2 = a[idx(i, k + 1)];
                let l1 = b1 * inv11 + b2 * inv12;
                let l2 = b1 * inv12 + b2 * inv22;
                for j in (k + 2)..=i {
                    let update = l1 * a[idx(k, j)] + l2 * a[idx(k + 1, j)];
                    a[idx(i, j)] -= update;
                    a[idx(j, i)] = a[idx(i, j)];
                }
            }
            k += 2;
        }
    }
    Some(Inertia { kappa_minus: minus, kappa_zero: 0, kappa_plus: plus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn tridiagonal_positive_diag() {
        let i = tridiagonal_inertia(&[1.0, 1.0], &[0.0], 0.0);
        assert_eq!(i, Inertia { kappa_minus: 0, kappa_zero: 0, kappa_plus: 2 });
    }

    #[test]
    fn tridiagonal_single_negative() {
        let i = tridiagonal_inertia(&[-0.5], &[], 0.0);
        assert_eq!(i, Inertia { kappa_minus: 1, kappa_zero: 0, kappa_plus: 0 });
    }

    #[test]
    fn tridiagonal_zero_diag_pair() {
        // eigenvalues ±1
        let i = tridiagonal_inertia(&[0.0, 0.0], &[1.0], 0.0);
        assert_eq!(i, Inertia { kappa_minus: 1, kappa_zero: 0, kappa_plus: 1 });
    }

    #[test]
    fn tridiagonal_shift() {
        // diag (1,1), off 0, shift 2: both eigenvalues negative
        let i = tridiagonal_inertia(&[1.0, 1.0], &[0.0], 2.0);
        assert_eq!(i.kappa_minus, 2);
    }

    #[test]
    fn tridiagonal_exact_zero_eigenvalue() {
        // [[1,1],[1,1]] has eigenvalues 0 and 2
        let i = tridiagonal_inertia(&[1.0, 1.0], &[1.0], 0.0);
        assert_eq!(i, Inertia { kappa_minus: 0, kappa_zero: 1, kappa_plus: 1 });
    }

    #[test]
    fn tridiagonal_eigs_free_laplacian() {
        // second difference matrix, known spectrum 2 - 2cos(jπ/(n+1))
        let n = 12;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let eigs = tridiagonal_eigenvalues(&diag, &off);
        for (j, e) in eigs.iter().enumerate() {
            let expect = 2.0 - 2.0 * (std::f64::consts::PI * (j + 1) as f64 / (n as f64 + 1.0)).cos();
            assert!((e - expect).abs() < 1e-9, "eig {j}: {e} vs {expect}");
        }
    }

    #[test]
    fn dense_matches_eigen_on_randoms() {
        let mut rng = StdRng::seed_from_u64(11);
        for trial in 0..60 {
            let n = rng.gen_range(1..=20);
            let mut m = SymDense::zeros(n);
            for i in 0..n {
                for j in 0..=i {
                    m.set(i, j, rng.gen_range(-3.0..3.0));
                }
            }
            let a = dense_inertia(&m);
            let b = dense_inertia_by_eigen(&m);
            assert_eq!(a, b, "trial {trial} n {n}");
        }
    }

    #[test]
    fn dense_known_signature() {
        let mut m = SymDense::zeros(3);
        m.set(0, 0, -2.0);
        m.set(1, 1, 5.0);
        m.set(2, 2, 1.0);
        m.set(0, 1, 0.1);
        m.set(1, 2, -0.2);
        let i = dense_inertia(&m);
        assert_eq!(i, Inertia { kappa_minus: 1, kappa_zero: 0, kappa_plus: 2 });
    }

    #[test]
    fn dense_singular_falls_back() {
        // rank-1 matrix: signature (0, 2, 1)
        let mut m = SymDense::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                if j <= i {
                    m.set(i, j, 1.0);
                }
            }
        }
        let i = dense_inertia(&m);
        assert_eq!(i, Inertia { kappa_minus: 0, kappa_zero: 2, kappa_plus: 1 });
    }

    #[test]
    fn tridiag_inertia_matches_eigen_on_randoms() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..80 {
            let n = rng.gen_range(1..=32);
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let off: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let shift = rng.gen_range(-1.0..1.0);
            let a = tridiagonal_inertia(&diag, &off, shift);
            let shifted: Vec<f64> = diag.iter().map(|d| d - shift).collect();
            let eigs = tridiagonal_eigenvalues(&shifted, &off);
            let tol = 1e-12
                * shifted
                    .iter()
                    .chain(off.iter())
                    .fold(1.0f64, |acc, v| acc.max(v.abs()));
            let b = classify_eigenvalues(eigs.into_iter(), tol.max(1e-9));
            assert_eq!((a.kappa_minus, a.kappa_plus), (b.kappa_minus, b.kappa_plus));
        }
    }
}
