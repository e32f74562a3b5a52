//! Eigendecomposition of chain Hamiltonians: a numeric path for arbitrary
//! chains and the closed-form five-site eigensystem for the symmetric case
//! (all odd TMEs equal to Ω₁, all even TMEs equal to Ω₂).

use nalgebra::{DMatrix, DVector};

use crate::chain::HamiltonianSnapshot;
use crate::error::{Error, Result};

/// Full orthonormal eigensystem, eigenvalues ascending, eigenvectors as
/// matching columns with the first nonzero component of each made positive.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.eigenvectors.column(k).into_owned()
    }

    /// Absolute tolerance used to recognize the zero eigenvalue.
    pub fn zero_tolerance(&self) -> f64 {
        let max_abs = self.eigenvalues.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
        1e-10 * max_abs.max(1.0)
    }

    /// Index of the zero-energy (dark) eigenvalue: the minimum `|E|`, which
    /// must lie within the zero tolerance.
    pub fn zero_index(&self) -> Result<usize> {
        let (idx, min_abs) = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &e)| (i, e.abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("eigensystem is non-empty");
        if min_abs > self.zero_tolerance() {
            return Err(Error::ProtocolState(format!(
                "no zero eigenvalue: min |E| = {min_abs:.3e}"
            )));
        }
        Ok(idx)
    }
}

/// Flips eigenvector signs so the first component that is nonzero (relative
/// to the vector's largest entry) is positive.
fn fix_column_signs(vectors: &mut DMatrix<f64>) {
    let n = vectors.nrows();
    for k in 0..vectors.ncols() {
        let col = vectors.column(k);
        let max_abs = col.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if max_abs == 0.0 {
            continue;
        }
        let lead = col.iter().find(|x| x.abs() > 1e-12 * max_abs);
        if let Some(&lead) = lead {
            if lead < 0.0 {
                for i in 0..n {
                    vectors[(i, k)] = -vectors[(i, k)];
                }
            }
        }
    }
}

/// Cyclic Jacobi sweeps on `VᵀHV`, accumulated into `V`. The QR-based solver
/// can leave eigenvectors rotated within nearly-degenerate clusters (residuals
/// ~1e-10 instead of machine precision); starting from its output, one or two
/// sweeps restore residuals to roundoff.
fn jacobi_polish(h: &DMatrix<f64>, values: &mut DVector<f64>, vectors: &mut DMatrix<f64>) {
    let n = h.nrows();
    let mut m = vectors.transpose() * h * &*vectors;
    let scale = h.amax().max(f64::MIN_POSITIVE);
    for _ in 0..4 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= f64::EPSILON * scale {
                    continue;
                }
                let tau = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = vectors[(k, p)];
                    let vkq = vectors[(k, q)];
                    vectors[(k, p)] = c * vkp - s * vkq;
                    vectors[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    for i in 0..n {
        values[i] = m[(i, i)];
    }
}

fn sorted_system(values: DVector<f64>, vectors: DMatrix<f64>) -> EigenSystem {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| values[i]));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        eigenvectors.set_column(k, &vectors.column(i));
    }
    fix_column_signs(&mut eigenvectors);
    EigenSystem {
        eigenvalues,
        eigenvectors,
    }
}

/// Numerically diagonalizes a chain Hamiltonian.
pub fn diagonalize(h: &HamiltonianSnapshot) -> EigenSystem {
    let dense = h.to_matrix();
    let se = dense.clone().symmetric_eigen();
    let mut values = se.eigenvalues;
    let mut vectors = se.eigenvectors;
    jacobi_polish(&dense, &mut values, &mut vectors);
    sorted_system(values, vectors)
}

/// Closed-form eigensystem of the five-site chain with uniform alternating
/// TMEs `(Ω₁, Ω₂)`: energies `0`, `±√(Ω₁² − Ω₁Ω₂ + Ω₂²)`,
/// `±√(Ω₁² + Ω₁Ω₂ + Ω₂²)`.
pub fn symmetric5_eigensystem(omega1: f64, omega2: f64) -> Result<EigenSystem> {
    if !(omega1.is_finite() && omega2.is_finite()) || omega1 < 0.0 || omega2 < 0.0 {
        return Err(Error::Domain(format!(
            "TMEs must be finite and >= 0, got ({omega1}, {omega2})"
        )));
    }
    if omega1 == 0.0 && omega2 == 0.0 {
        return Err(Error::Degenerate(
            "both TMEs zero: eigensystem fully degenerate".into(),
        ));
    }
    let (o1, o2) = (omega1, omega2);
    let g = (o1 * o1 - o1 * o2 + o2 * o2).sqrt();
    let big_g = (o1 * o1 + o1 * o2 + o2 * o2).sqrt();
    let n0 = (o1.powi(4) + o1 * o1 * o2 * o2 + o2.powi(4)).sqrt();

    let d0 = [o2 * o2 / n0, 0.0, -o1 * o2 / n0, 0.0, o1 * o1 / n0];
    let dpm = |s: f64| {
        // |D_±⟩ with s = ±1
        let d = 2.0 * g;
        [-o1 / d, -s * g / d, (o1 - o2) / d, s * g / d, o2 / d]
    };
    let d2pm = |s: f64| {
        // |D_2±⟩ with s = ±1
        let d = 2.0 * big_g;
        [o1 / d, s * big_g / d, (o1 + o2) / d, s * big_g / d, o2 / d]
    };

    let values = DVector::from_row_slice(&[-big_g, -g, 0.0, g, big_g]);
    let cols = [d2pm(-1.0), dpm(-1.0), d0, dpm(1.0), d2pm(1.0)];
    let mut vectors = DMatrix::zeros(5, 5);
    for (k, col) in cols.iter().enumerate() {
        vectors.set_column(k, &DVector::from_row_slice(col));
    }
    fix_column_signs(&mut vectors);
    Ok(EigenSystem {
        eigenvalues: values,
        eigenvectors: vectors,
    })
}

/// Distance from the zero eigenvalue to the nearest nonzero one, the gap in
/// the adiabaticity denominator.
pub fn gap_to_nearest(eigs: &EigenSystem) -> Result<f64> {
    let tol = eigs.zero_tolerance();
    eigs.zero_index()?;
    eigs.eigenvalues()
        .iter()
        .map(|e| e.abs())
        .filter(|&a| a > tol)
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::ProtocolState("spectrum is fully degenerate".into()))
}
