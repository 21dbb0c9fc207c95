//! The invariant Hermitian form of the twisted construction, unitarity and
//! kernel checks, and a block-recursive signature computation with an
//! eigenvalue oracle alongside.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, mismatch, Error, Result};
use crate::klm::QuotientData;
use crate::linalg::{
    c64, ensure_finite, ensure_hermitian, get_block, hermitian_eigen, hermitian_inertia,
    hermitian_residual, identity, inertia_of_values, inverse, kernel_basis, max_principal_angle,
    set_block, spectral_norm, CMatrix, Inertia, SubspaceBasis, Tolerances, C64,
};

/// A matrix together with its measured Hermiticity defect.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    pub matrix: CMatrix,
    pub hermiticity_residual: f64,
}

impl HermitianForm {
    pub fn new(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        ensure_hermitian(&matrix, tol)?;
        Ok(Self::unchecked(matrix))
    }

    /// Records the residual without enforcing it.
    pub fn unchecked(matrix: CMatrix) -> Self {
        let hermiticity_residual = hermitian_residual(&matrix);
        Self {
            matrix,
            hermiticity_residual,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Square root with argument in `(−π/2, π/2]`, so `√−1 = i` regardless of
/// the sign of a zero imaginary part.
pub fn principal_sqrt(z: C64) -> C64 {
    let (r, mut theta) = z.to_polar();
    if theta <= -std::f64::consts::PI {
        theta = std::f64::consts::PI;
    }
    if z.im == 0.0 && z.re < 0.0 {
        theta = std::f64::consts::PI;
    }
    C64::from_polar(r.sqrt(), theta / 2.0)
}

/// Block `(j, k)` is `c_{jk} H (g_j^{-1} − λ_{jk} I)(g_k − I)` with
/// `c_{jk} = λ^{-1/2}` for `j ≤ k`, `λ^{1/2}` for `j > k`, and `λ_{jk} = λ`
/// on the diagonal, 1 off it.
///
/// With `allow_non_unit`, `|λ| ≠ 1` and a non-Hermitian `H` are accepted
/// and nothing about the result is asserted.
pub fn build_h_tilde(
    g: &[CMatrix],
    h: &CMatrix,
    lambda: C64,
    allow_non_unit: bool,
) -> Result<HermitianForm> {
    let tol = Tolerances::default();
    if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda.norm() == 0.0 {
        return Err(invalid!(
            "lambda = {lambda} must be a nonzero finite number"
        ));
    }
    let checked = !allow_non_unit;
    if checked && (lambda.norm() - 1.0).abs() > 1e-9 {
        return Err(invalid!(
            "|lambda| = {} is not 1; pass the non-unit flag to build anyway",
            lambda.norm()
        ));
    }
    if checked {
        ensure_hermitian(h, &tol)?;
    }
    let n = g.len();
    if n == 0 {
        return Err(invalid!("need at least one g"));
    }
    let d = h.nrows();
    for (j, m) in g.iter().enumerate() {
        if m.shape() != (d, d) || !h.is_square() {
            return Err(mismatch!(
                "g_{} is {}x{}, H is {}x{}",
                j + 1,
                m.nrows(),
                m.ncols(),
                h.nrows(),
                h.ncols()
            ));
        }
        ensure_finite(m, "g")?;
    }
    let root = principal_sqrt(lambda);
    let root_inv = c64(1.0, 0.0) / root;
    let id = identity(d);
    let g_inv: Vec<CMatrix> = g.iter().map(inverse).collect::<Result<_>>()?;
    let mut out = CMatrix::zeros(n * d, n * d);
    #[allow(clippy::needless_range_loop)]
    for j in 0..n {
        for k in 0..n {
            let shift = if j == k { lambda } else { c64(1.0, 0.0) };
            let coeff = if j <= k { root_inv } else { root };
            let block = h * (&g_inv[j] - &id * shift) * (&g[k] - &id) * coeff;
            set_block(&mut out, d, j, k, &block);
        }
    }
    let form = HermitianForm::unchecked(out);
    if checked && form.hermiticity_residual > tol.residual_rel {
        return Err(invalid!(
            "induced form is not Hermitian (residual {:.3e}); are the g_j unitary relative to H?",
            form.hermiticity_residual
        ));
    }
    Ok(form)
}

/// `max ‖m† H m − H‖_F / ‖H‖_F`.
pub fn check_unitary(mats: &[CMatrix], h: &CMatrix) -> Result<f64> {
    let scale = h.norm();
    let mut worst = 0.0_f64;
    for m in mats {
        if m.shape() != h.shape() {
            return Err(mismatch!(
                "matrix {}x{} against form {}x{}",
                m.nrows(),
                m.ncols(),
                h.nrows(),
                h.ncols()
            ));
        }
        let r = (m.adjoint() * h * m - h).norm();
        worst = worst.max(if scale > 0.0 { r / scale } else { r });
    }
    Ok(worst)
}

/// `(‖H K‖_F, ‖H L‖_F) / ‖H‖_F`.
pub fn annihilation_check(h: &CMatrix, k: &SubspaceBasis, l: &SubspaceBasis) -> Result<(f64, f64)> {
    let scale = h.norm().max(f64::MIN_POSITIVE);
    let apply = |w: &SubspaceBasis| -> Result<f64> {
        if w.ambient_dim() != h.ncols() {
            return Err(mismatch!(
                "subspace of C^{} against {}x{} form",
                w.ambient_dim(),
                h.nrows(),
                h.ncols()
            ));
        }
        Ok((h * w.basis()).norm() / scale)
    };
    Ok((apply(k)?, apply(l)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelComparison {
    pub kernel_dim: usize,
    pub subspace_dim: usize,
    /// Largest principal angle; absent when the dimensions differ.
    pub max_angle: Option<f64>,
    pub pass: bool,
}

/// Compares `ker H` with `span(w)`: equal dimensions and principal angles
/// at most `1e-6`.
pub fn kernel_equals_kl(
    h: &CMatrix,
    w: &SubspaceBasis,
    tol: &Tolerances,
) -> Result<KernelComparison> {
    if w.ambient_dim() != h.ncols() {
        return Err(mismatch!(
            "subspace of C^{} against {}x{} form",
            w.ambient_dim(),
            h.nrows(),
            h.ncols()
        ));
    }
    let ker = kernel_basis(h, tol)?;
    let max_angle = max_principal_angle(&ker, w);
    Ok(KernelComparison {
        kernel_dim: ker.dim(),
        subspace_dim: w.dim(),
        max_angle,
        pass: max_angle.is_some_and(|a| a <= 1e-6),
    })
}

/// `Q† H Q` on the complement chart of the quotient.
pub fn quotient_form(h: &CMatrix, qd: &QuotientData) -> Result<HermitianForm> {
    let w = qd.invariant();
    if w.ambient_dim() != h.ncols() || !h.is_square() {
        return Err(mismatch!(
            "quotient of C^{} against {}x{} form",
            w.ambient_dim(),
            h.nrows(),
            h.ncols()
        ));
    }
    let scale = h.norm();
    let leak = (h * w.basis()).norm();
    if scale > 0.0 && leak > 1e-6 * scale {
        return Err(Error::NotInvariant(format!(
            "the form does not annihilate the subspace (‖H W‖/‖H‖ = {:.3e})",
            leak / scale
        )));
    }
    let q = qd.complement().basis();
    Ok(HermitianForm::unchecked(q.adjoint() * h * q))
}

/// One elimination step of [`signature_recursive`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureStep {
    /// Size of the leading block.
    pub block_size: usize,
    /// Number of nonzero eigenvalues kept as pivot.
    pub nonzero: usize,
    pub pivot_inertia: Inertia,
    /// `‖u₀† A_{1,rest}‖_F` relative to the global scale: the coupling of the
    /// leading block's kernel to the rest.
    pub off_kernel_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub p: usize,
    pub q: usize,
    pub z: usize,
    pub steps: Vec<SignatureStep>,
    pub fallback_used: bool,
    /// Why the recursion handed over to the oracle, if it did.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_reason: Option<String>,
    pub oracle: Inertia,
}

impl SignatureReport {
    pub fn inertia(&self) -> Inertia {
        Inertia {
            p: self.p,
            q: self.q,
            z: self.z,
        }
    }

    pub fn matches_oracle(&self) -> bool {
        self.inertia() == self.oracle
    }
}

/// Direct eigenvalue inertia.
pub fn signature_oracle(h: &CMatrix, tol: &Tolerances) -> Result<Inertia> {
    hermitian_inertia(h, tol)
}

/// Block-by-block congruence diagonalization.
///
/// Each step diagonalizes the leading `N×N` block, keeps its nonzero
/// eigenvectors as an invertible pivot, checks that its kernel directions do
/// not couple to the rest, and replaces the remainder by its Schur
/// complement. When the coupling check fails or the pivot is badly
/// conditioned, the inertia of the untouched remainder is taken from the
/// oracle instead.
pub fn signature_recursive(h: &CMatrix, block: usize, tol: &Tolerances) -> Result<SignatureReport> {
    ensure_hermitian(h, tol)?;
    let dim = h.nrows();
    if block == 0 || !dim.is_multiple_of(block) {
        return Err(invalid!(
            "matrix size {dim} is not a multiple of block size {block}"
        ));
    }
    let oracle = signature_oracle(h, tol)?;
    let scale = spectral_norm(h);
    let coupling_tau = tol.rank_rel * scale * dim as f64;
    let pivot_floor = tol.rank_rel.sqrt() * scale;

    let mut acc = Inertia::default();
    let mut steps = Vec::new();
    let mut fallback_reason = None;
    let mut rest = (h + h.adjoint()).scale(0.5);

    while rest.nrows() > 0 {
        let size = rest.nrows();
        let lead = get_block(&rest, block, 0, 0);
        let (values, vectors) = hermitian_eigen(&lead);
        let block_top = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tau = tol.rank_rel * block_top.max(scale);
        let kept: Vec<usize> = (0..block).filter(|&c| values[c].abs() > tau).collect();
        let dropped: Vec<usize> = (0..block).filter(|&c| values[c].abs() <= tau).collect();
        let pivot_inertia = Inertia {
            p: kept.iter().filter(|&&c| values[c] > 0.0).count(),
            q: kept.iter().filter(|&&c| values[c] < 0.0).count(),
            z: dropped.len(),
        };

        let tail = size - block;
        let coupling = rest.view((0, block), (block, tail)).into_owned();
        let u0 = columns(&vectors, &dropped);
        let off = if tail == 0 || dropped.is_empty() {
            0.0
        } else {
            (u0.adjoint() * &coupling).norm()
        };
        let off_rel = if scale > 0.0 { off / scale } else { off };
        steps.push(SignatureStep {
            block_size: block,
            nonzero: kept.len(),
            pivot_inertia,
            off_kernel_residual: off_rel,
        });

        let weakest = kept
            .iter()
            .map(|&c| values[c].abs())
            .fold(f64::INFINITY, f64::min);
        if off > coupling_tau {
            fallback_reason = Some(format!(
                "kernel of leading block couples to the remainder (residual {off_rel:.3e})"
            ));
        } else if tail > 0 && !kept.is_empty() && weakest < pivot_floor {
            fallback_reason = Some(format!(
                "ill-conditioned pivot (smallest kept eigenvalue {weakest:.3e})"
            ));
        }
        if fallback_reason.is_some() {
            let (vals, _) = hermitian_eigen(&rest);
            acc = acc + inertia_of_values(&vals, scale, tol);
            break;
        }

        acc.p += pivot_inertia.p;
        acc.q += pivot_inertia.q;
        if tail == 0 {
            break;
        }
        let trailing = rest.view((block, block), (tail, tail)).into_owned();
        rest = if kept.is_empty() {
            trailing
        } else {
            let u1 = columns(&vectors, &kept);
            let w = u1.adjoint() * &coupling;
            let mut scaled = w.clone();
            for (r, &c) in kept.iter().enumerate() {
                let inv = 1.0 / values[c];
                let mut row = scaled.row_mut(r);
                row *= c64(inv, 0.0);
            }
            let schur = trailing - w.adjoint() * scaled;
            (&schur + schur.adjoint()).scale(0.5)
        };
    }

    let z = dim - acc.p - acc.q;
    Ok(SignatureReport {
        p: acc.p,
        q: acc.q,
        z,
        steps,
        fallback_used: fallback_reason.is_some(),
        fallback_reason,
        oracle,
    })
}

fn columns(m: &CMatrix, idx: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(m.nrows(), idx.len());
    for (k, &c) in idx.iter().enumerate() {
        out.set_column(k, &m.column(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;
    use nalgebra::DVector;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn one(v: C64) -> CMatrix {
        CMatrix::from_element(1, 1, v)
    }

    fn diag(v: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_iterator(
            v.len(),
            v.iter().map(|&x| c64(x, 0.0)),
        ))
    }

    #[test]
    fn sqrt_branch() {
        assert!((principal_sqrt(c64(-1.0, 0.0)) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((principal_sqrt(c64(-1.0, -0.0)) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((principal_sqrt(c64(4.0, 0.0)) - c64(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn h_tilde_single_point() {
        let f = build_h_tilde(
            &[one(c64(0.0, 1.0))],
            &one(c64(1.0, 0.0)),
            c64(-1.0, 0.0),
            false,
        )
        .unwrap();
        assert!((f.matrix[(0, 0)] - c64(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn h_tilde_of_identities_vanishes() {
        let f = build_h_tilde(&[identity(2), identity(2)], &identity(2), unit(0.3), false).unwrap();
        assert_eq!(f.matrix, CMatrix::zeros(4, 4));
    }

    #[test]
    fn h_tilde_at_lambda_one() {
        let g = [one(unit(0.5)), one(unit(1.4))];
        let f = build_h_tilde(&g, &one(c64(1.0, 0.0)), c64(1.0, 0.0), false).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let expect = (1.0 / g[j][(0, 0)] - 1.0) * (g[k][(0, 0)] - 1.0);
                assert!((f.matrix[(j, k)] - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn h_tilde_rejects_non_unit_lambda() {
        let g = [one(unit(0.5))];
        assert!(build_h_tilde(&g, &one(c64(1.0, 0.0)), c64(2.0, 0.0), false).is_err());
        assert!(build_h_tilde(&g, &one(c64(1.0, 0.0)), c64(2.0, 0.0), true).is_ok());
    }

    #[test]
    fn unitary_check() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u =
            CMatrix::from_row_slice(2, 2, &[c64(s, 0.0), c64(0.0, s), c64(0.0, s), c64(s, 0.0)]);
        assert!(check_unitary(&[u], &identity(2)).unwrap() < 1e-12);
        assert!(check_unitary(&[one(unit(0.8))], &one(c64(1.0, 0.0))).unwrap() < 1e-15);
        assert!(check_unitary(&[diag(&[2.0, 1.0])], &identity(2)).unwrap() > 0.1);
    }

    #[test]
    fn recursive_on_block_diagonal() {
        let h = diag(&[2.0, -1.0, 0.0, 3.0, -4.0, 5.0]);
        let r = signature_recursive(&h, 2, &tol()).unwrap();
        assert_eq!(r.inertia(), Inertia { p: 3, q: 2, z: 1 });
        assert!(!r.fallback_used);
        assert!(r.matches_oracle());
        assert_eq!(r.steps.len(), 3);
    }

    #[test]
    fn recursive_falls_back_on_coupled_kernel() {
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
        );
        let r = signature_recursive(&h, 1, &tol()).unwrap();
        assert!(r.fallback_used);
        assert_eq!(r.inertia(), Inertia { p: 1, q: 1, z: 0 });
        assert!(r.matches_oracle());
    }

    #[test]
    fn recursive_rejects_bad_input() {
        assert!(signature_recursive(&identity(3), 2, &tol()).is_err());
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
        );
        assert!(signature_recursive(&m, 1, &tol()).is_err());
    }

    #[test]
    fn report_serializes() {
        let r = signature_recursive(&diag(&[1.0, -1.0]), 1, &tol()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["p", "q", "z", "steps", "fallback_used", "oracle"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
