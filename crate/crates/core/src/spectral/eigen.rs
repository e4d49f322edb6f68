//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL iteration.

use super::{DenseSymmetric, SpectralError};

/// Maximum QL sweeps spent on a single eigenvalue.
pub const MAX_SWEEPS_PER_EIGENVALUE: usize = 30;

/// Symmetric tridiagonal matrix: `diagonal` has length n, `off_diagonal` n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

/// All eigenvalues of a symmetric matrix in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Order of the source matrix.
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().take_while(|&&x| x < threshold).count()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.eigenvalues
    }
}

/// Reduces `m` to tridiagonal form by Householder reflections
/// `H = I - beta v v^T` applied from both sides to the trailing block.
pub fn tridiagonalize(m: &DenseSymmetric) -> SymTridiag {
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut off_diagonal = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let col = |a: &[f64], i: usize| a[i * n + k];
        let norm = (k + 1..n).map(|i| col(&a, i).powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            off_diagonal[k] = 0.0;
            continue;
        }
        let x0 = col(&a, k + 1);
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = col(&a, i);
        }
        v[k + 1] -= alpha;
        let vtv: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vtv == 0.0 {
            off_diagonal[k] = x0;
            continue;
        }
        let beta = 2.0 / vtv;

        // p = beta * A22 v ; q = p - (beta/2)(v^T p) v ; A22 -= v q^T + q v^T
        for i in k + 1..n {
            let row = &a[i * n..(i + 1) * n];
            p[i] = beta * (k + 1..n).map(|j| row[j] * v[j]).sum::<f64>();
        }
        let kappa = 0.5 * beta * (k + 1..n).map(|i| v[i] * p[i]).sum::<f64>();
        for i in k + 1..n {
            p[i] -= kappa * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..=i {
                let upd = v[i] * p[j] + p[i] * v[j];
                a[i * n + j] -= upd;
                if i != j {
                    a[j * n + i] = a[i * n + j];
                }
            }
        }
        off_diagonal[k] = alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
            a[k * n + i] = 0.0;
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha;
    }
    if n >= 2 {
        off_diagonal[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    let diagonal = (0..n).map(|i| a[i * n + i]).collect();
    SymTridiag {
        diagonal,
        off_diagonal,
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-style shifts. Returns them ascending.
pub fn tridiagonal_eigenvalues(t: &SymTridiag) -> Result<Vec<f64>, SpectralError> {
    let n = t.diagonal.len();
    let mut d = t.diagonal.clone();
    // e[i] couples d[i] and d[i+1]; trailing slot is scratch.
    let mut e = t.off_diagonal.clone();
    e.push(0.0);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS_PER_EIGENVALUE {
                return Err(SpectralError::NoConvergence { order: n });
            }
            sweeps += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Full ascending spectrum of a symmetric matrix.
pub fn eigenvalues_symmetric(m: &DenseSymmetric) -> Result<Spectrum, SpectralError> {
    if m.order() == 0 {
        return Err(SpectralError::EmptyMatrix);
    }
    let t = tridiagonalize(m);
    let eigenvalues = tridiagonal_eigenvalues(&t)?;
    Ok(Spectrum { eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(n: usize, f: impl Fn(usize, usize) -> f64) -> DenseSymmetric {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i.min(j), i.max(j));
            }
        }
        DenseSymmetric::from_row_major(n, data).unwrap()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn one_by_one() {
        let s = eigenvalues_symmetric(&dense(1, |_, _| 3.5)).unwrap();
        assert_eq!(s.eigenvalues(), &[3.5]);
    }

    #[test]
    fn diagonal_matrix_sorted() {
        let m = dense(4, |i, j| if i == j { [3.0, -1.0, 2.0, 0.5][i] } else { 0.0 });
        let s = eigenvalues_symmetric(&m).unwrap();
        assert_close(s.eigenvalues(), &[-1.0, 0.5, 2.0, 3.0], 1e-14);
    }

    #[test]
    fn tridiagonal_toeplitz_closed_form() {
        // tridiag(-1, 2, -1) of order n: 2 - 2 cos(j pi / (n+1))
        let n = 12;
        let m = dense(n, |i, j| match j - i {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let s = eigenvalues_symmetric(&m).unwrap();
        let want: Vec<f64> = (1..=n)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        assert_close(s.eigenvalues(), &want, 1e-12);
    }

    #[test]
    fn householder_preserves_trace_and_frobenius() {
        let n = 7;
        let m = dense(n, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + if i == j { 1.5 } else { 0.0 });
        let t = tridiagonalize(&m);
        let trace: f64 = (0..n).map(|i| m.get(i, i)).sum();
        assert!((t.diagonal.iter().sum::<f64>() - trace).abs() < 1e-12);
        let fro: f64 = m.as_slice().iter().map(|x| x * x).sum();
        let tfro: f64 = t.diagonal.iter().map(|x| x * x).sum::<f64>()
            + 2.0 * t.off_diagonal.iter().map(|x| x * x).sum::<f64>();
        assert!((fro - tfro).abs() < 1e-10);
    }

    #[test]
    fn zero_matrix() {
        let s = eigenvalues_symmetric(&dense(5, |_, _| 0.0)).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0; 5]);
    }

    #[test]
    fn empty_matrix_rejected() {
        let m = DenseSymmetric::from_row_major(0, vec![]).unwrap();
        assert!(matches!(eigenvalues_symmetric(&m), Err(SpectralError::EmptyMatrix)));
    }
}
