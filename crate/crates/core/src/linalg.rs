//! Dense complex linear algebra shared by every construction.
//!
//! Matrices are `nalgebra` dense matrices over `Complex64`. Rank decisions
//! are made from singular values against a relative threshold, and every
//! subspace is carried as an orthonormal column basis; only spans matter to
//! callers.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, mismatch, Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Environment variable that overrides [`Tolerances::residual_rel`].
pub const TOL_ENV: &str = "BRAIDFORGE_TOL";

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Unit-modulus complex number `exp(i * angle)`.
#[inline]
pub fn unit(angle: f64) -> C64 {
    C64::from_polar(1.0, angle)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative Frobenius residual accepted for identities and Hermiticity.
    pub residual_rel: f64,
    /// Relative singular-value / eigenvalue threshold for rank decisions.
    pub rank_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_rel: 1e-9,
            rank_rel: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(residual_rel: f64, rank_rel: f64) -> Result<Self> {
        for (name, v) in [("residual_rel", residual_rel), ("rank_rel", rank_rel)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(invalid!("{name} must lie in (0, 1), got {v}"));
            }
        }
        Ok(Self {
            residual_rel,
            rank_rel,
        })
    }

    /// Defaults, with `residual_rel` taken from `BRAIDFORGE_TOL` when set.
    pub fn from_env() -> Result<Self> {
        let mut tol = Self::default();
        if let Ok(raw) = std::env::var(TOL_ENV) {
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{TOL_ENV}={raw:?} is not a number")))?;
            tol = Self::new(v, tol.rank_rel)?;
        }
        Ok(tol)
    }
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(invalid!("{what} has non-finite entries"))
    }
}

pub fn ensure_square(m: &CMatrix, what: &str) -> Result<()> {
    if m.nrows() == m.ncols() && m.nrows() > 0 {
        Ok(())
    } else {
        Err(mismatch!(
            "{what} must be square and non-empty, got {}x{}",
            m.nrows(),
            m.ncols()
        ))
    }
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}

/// `‖a − b‖_F / ‖b‖_F`, falling back to the absolute residual when `b = 0`.
pub fn relative_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let diff = (a - b).norm();
    let scale = b.norm();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    ensure_square(m, "matrix to invert")?;
    let inv = m
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
    ensure_finite(&inv, "inverse").map_err(|_| Error::Singular("inverse overflowed".into()))?;
    Ok(inv)
}

/// Integer power; negative exponents go through the inverse.
pub fn matrix_power(m: &CMatrix, k: i64) -> Result<CMatrix> {
    let base = if k < 0 { inverse(m)? } else { m.clone() };
    let mut acc = identity(m.nrows());
    for _ in 0..k.unsigned_abs() {
        acc = &acc * &base;
    }
    Ok(acc)
}

/// Principal square root by the Denman-Beavers iteration.
fn principal_sqrt_unchecked(m: &CMatrix) -> Result<CMatrix> {
    let mut y = m.clone();
    let mut z = identity(m.nrows());
    for _ in 0..100 {
        let y_next = (&y + inverse(&z)?).scale(0.5);
        let z_next = (&z + inverse(&y)?).scale(0.5);
        let step = frobenius(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if step <= 1e-15 * frobenius(&y) {
            return Ok(y);
        }
    }
    Err(invalid!("square root iteration did not converge"))
}

/// Principal logarithm by inverse scaling and squaring. The argument must
/// have no eigenvalue on the closed negative real axis; the square-root
/// iteration fails to converge otherwise.
pub fn principal_log(m: &CMatrix) -> Result<CMatrix> {
    ensure_square(m, "matrix logarithm argument")?;
    ensure_finite(m, "matrix logarithm argument")?;
    let id = identity(m.nrows());
    let mut a = m.clone();
    let mut halvings = 0;
    while frobenius(&(&a - &id)) > 0.25 {
        if halvings == 60 {
            return Err(invalid!("logarithm scaling did not reach the identity"));
        }
        a = principal_sqrt_unchecked(&a)?;
        halvings += 1;
    }
    let e = &a - &id;
    let mut power = e.clone();
    let mut log = CMatrix::zeros(m.nrows(), m.ncols());
    for term in 1..200 {
        let sign = if term % 2 == 1 { 1.0 } else { -1.0 };
        let add = power.scale(sign / term as f64);
        log += &add;
        if frobenius(&add) <= 1e-18 * frobenius(&log).max(1e-300) {
            break;
        }
        power = &power * &e;
    }
    Ok(log.scale(2f64.powi(halvings)))
}

/// Principal `k`-th root `exp(log(m) / k)`; negative `k` gives the root of
/// the inverse. `k = 1` returns `m` unchanged.
pub fn principal_root(m: &CMatrix, k: i64) -> Result<CMatrix> {
    if k == 0 {
        return Err(invalid!("root index must be nonzero"));
    }
    if k == 1 {
        return Ok(m.clone());
    }
    let out = (principal_log(m)? / c64(k as f64, 0.0)).exp();
    ensure_finite(&out, "matrix root")?;
    let back = relative_residual(&matrix_power(&out, k)?, m);
    if back.is_nan() || back > 1e-8 {
        return Err(invalid!("k-th root lost accuracy (residual {back:.2e})"));
    }
    Ok(out)
}

/// `m ⊕ m ⊕ … ⊕ m` with `copies` summands.
pub fn direct_sum_repeat(m: &CMatrix, copies: usize) -> CMatrix {
    let (r, c) = m.shape();
    let mut out = CMatrix::zeros(r * copies, c * copies);
    for k in 0..copies {
        out.view_mut((k * r, k * c), (r, c)).copy_from(m);
    }
    out
}

/// Copies `b` into block `(row, col)` of a matrix partitioned into `size`×`size` blocks.
pub fn set_block(m: &mut CMatrix, size: usize, row: usize, col: usize, b: &CMatrix) {
    m.view_mut((row * size, col * size), (size, size))
        .copy_from(b);
}

pub fn get_block(m: &CMatrix, size: usize, row: usize, col: usize) -> CMatrix {
    m.view((row * size, col * size), (size, size)).into_owned()
}

/// `‖h − h†‖_F / ‖h‖_F` (0 for the zero matrix).
pub fn hermitian_residual(h: &CMatrix) -> f64 {
    let scale = h.norm();
    if scale == 0.0 {
        return 0.0;
    }
    (h - h.adjoint()).norm() / scale
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues of a general square matrix from its complex Schur form,
/// sorted by argument.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    ensure_square(m, "eigenvalue argument")?;
    let schur = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| invalid!("Schur iteration did not converge"))?;
    let (_, t) = schur.unpack();
    let mut ev: Vec<C64> = t.diagonal().iter().copied().collect();
    ev.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    Ok(ev)
}

/// An orthonormal basis of a subspace of `C^ambient_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: CMatrix,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: CMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: identity(ambient_dim),
        }
    }

    /// Span of the columns of `m` (orthonormalized, rank-revealing).
    pub fn span_of(m: &CMatrix, tol: &Tolerances) -> Result<Self> {
        ensure_finite(m, "spanning set")?;
        Ok(column_space(m, 0.0, tol))
    }

    /// Wraps columns that are already orthonormal.
    pub fn from_orthonormal(basis: CMatrix, tol: &Tolerances) -> Result<Self> {
        let k = basis.ncols();
        if k > basis.nrows() {
            return Err(mismatch!(
                "{k} columns cannot be orthonormal in dimension {}",
                basis.nrows()
            ));
        }
        let gram = basis.adjoint() * &basis;
        let dev = (gram - identity(k)).norm();
        if dev > tol.residual_rel * (k.max(1) as f64).sqrt() {
            return Err(invalid!(
                "columns are not orthonormal (‖B†B − I‖ = {dev:.3e})"
            ));
        }
        Ok(Self {
            ambient_dim: basis.nrows(),
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> CMatrix {
        self.basis
    }

    /// Orthogonal projector `B B†`.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }
}

fn check_tol(tol: &Tolerances) -> Result<()> {
    Tolerances::new(tol.residual_rel, tol.rank_rel).map(|_| ())
}

/// Orthonormal basis of the numerical null space of `m`.
///
/// A singular value is zero iff `σ ≤ rank_rel · σ_max · max(rows, cols)`.
pub fn kernel_basis(m: &CMatrix, tol: &Tolerances) -> Result<SubspaceBasis> {
    kernel_basis_scaled(m, 0.0, tol)
}

/// As [`kernel_basis`], with `σ_max` floored at `scale`.
///
/// Use this when `m` is a difference such as `g − I`, whose natural size is
/// that of `g` rather than of the (possibly roundoff-level) difference.
pub fn kernel_basis_scaled(m: &CMatrix, scale: f64, tol: &Tolerances) -> Result<SubspaceBasis> {
    check_tol(tol)?;
    ensure_finite(m, "matrix")?;
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(SubspaceBasis::zero(0));
    }
    // Pad wide matrices with zero rows so the SVD returns a full right basis.
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = tol.rank_rel * sigma_max.max(scale) * rows.max(cols) as f64;
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= threshold)
        .collect();
    let mut basis = CMatrix::zeros(cols, picked.len());
    for (out, &k) in picked.iter().enumerate() {
        let row = v_t.row(k);
        for r in 0..cols {
            basis[(r, out)] = row[r].conj();
        }
    }
    Ok(SubspaceBasis {
        ambient_dim: cols,
        basis,
    })
}

/// Orthonormal basis of the column space of `m`, with the same rank rule as
/// [`kernel_basis_scaled`].
pub fn column_space(m: &CMatrix, scale: f64, tol: &Tolerances) -> SubspaceBasis {
    let (rows, cols) = m.shape();
    if cols == 0 || rows == 0 {
        return SubspaceBasis::zero(rows);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = tol.rank_rel * sigma_max.max(scale) * rows.max(cols) as f64;
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > threshold)
        .collect();
    let mut basis = CMatrix::zeros(rows, picked.len());
    for (out, &k) in picked.iter().enumerate() {
        basis.set_column(out, &u.column(k));
    }
    SubspaceBasis {
        ambient_dim: rows,
        basis,
    }
}

/// Numerical rank with the kernel rule.
pub fn rank(m: &CMatrix, tol: &Tolerances) -> usize {
    column_space(m, 0.0, tol).dim()
}

/// Inertia triple of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Inertia {
    pub p: usize,
    pub q: usize,
    pub z: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.p + self.q + self.z
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;
    fn add(self, rhs: Self) -> Self {
        Inertia {
            p: self.p + rhs.p,
            q: self.q + rhs.q,
            z: self.z + rhs.z,
        }
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "p={} q={} z={}", self.p, self.q, self.z)
    }
}

/// Real eigenvalues of a Hermitian matrix (of its Hermitian part, to be exact).
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    if h.is_empty() {
        return Vec::new();
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigendecomposition `(values, unitary vectors)` of the Hermitian part of `h`.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

pub fn ensure_hermitian(h: &CMatrix, tol: &Tolerances) -> Result<()> {
    ensure_square(h, "Hermitian matrix")?;
    ensure_finite(h, "Hermitian matrix")?;
    let r = hermitian_residual(h);
    if r > tol.residual_rel {
        return Err(invalid!(
            "matrix is not Hermitian: ‖h − h†‖/‖h‖ = {r:.3e} exceeds {:.1e}",
            tol.residual_rel
        ));
    }
    Ok(())
}

/// Counts eigenvalues above `τ`, below `−τ`, and the rest, with
/// `τ = rank_rel · max|eigenvalue|`.
pub fn hermitian_inertia(h: &CMatrix, tol: &Tolerances) -> Result<Inertia> {
    hermitian_inertia_scaled(h, 0.0, tol)
}

/// As [`hermitian_inertia`] with `max|eigenvalue|` floored at `scale`.
pub fn hermitian_inertia_scaled(h: &CMatrix, scale: f64, tol: &Tolerances) -> Result<Inertia> {
    check_tol(tol)?;
    ensure_hermitian(h, tol)?;
    Ok(inertia_of_values(&hermitian_eigenvalues(h), scale, tol))
}

pub(crate) fn inertia_of_values(values: &[f64], scale: f64, tol: &Tolerances) -> Inertia {
    let top = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tau = tol.rank_rel * top.max(scale);
    let p = values.iter().filter(|&&v| v > tau).count();
    let q = values.iter().filter(|&&v| v < -tau).count();
    Inertia {
        p,
        q,
        z: values.len() - p - q,
    }
}

/// `x† h x`.
pub fn congruence(h: &CMatrix, x: &CMatrix) -> Result<CMatrix> {
    ensure_square(h, "form")?;
    if h.nrows() != x.nrows() {
        return Err(mismatch!(
            "form is {}x{} but transform has {} rows",
            h.nrows(),
            h.ncols(),
            x.nrows()
        ));
    }
    Ok(x.adjoint() * h * x)
}

/// Orthonormal basis of `span(a) + span(b)`.
pub fn subspace_sum(
    a: &SubspaceBasis,
    b: &SubspaceBasis,
    tol: &Tolerances,
) -> Result<SubspaceBasis> {
    check_tol(tol)?;
    if a.ambient_dim != b.ambient_dim {
        return Err(mismatch!(
            "ambient dimensions {} and {}",
            a.ambient_dim,
            b.ambient_dim
        ));
    }
    let n = a.ambient_dim;
    let k = a.dim() + b.dim();
    if k == 0 {
        return Ok(SubspaceBasis::zero(n));
    }
    let mut stacked = CMatrix::zeros(n, k);
    stacked.view_mut((0, 0), (n, a.dim())).copy_from(&a.basis);
    stacked
        .view_mut((0, a.dim()), (n, b.dim()))
        .copy_from(&b.basis);
    // Orthonormal inputs: σ_max ≥ 1, so floor the scale at 1.
    Ok(column_space(&stacked, 1.0, tol))
}

/// Orthonormal basis of the orthogonal complement of `w`.
pub fn orthogonal_complement(w: &SubspaceBasis) -> SubspaceBasis {
    let n = w.ambient_dim;
    if w.dim() == 0 {
        return SubspaceBasis::full(n);
    }
    if w.dim() >= n {
        return SubspaceBasis::zero(n);
    }
    let tol = Tolerances::default();
    let mut q =
        kernel_basis_scaled(&w.basis.adjoint(), 1.0, &tol).expect("orthonormal basis is finite");
    q.ambient_dim = n;
    q
}

/// Largest principal angle between two subspaces of equal dimension, in
/// radians. `None` when the dimensions differ.
pub fn max_principal_angle(a: &SubspaceBasis, b: &SubspaceBasis) -> Option<f64> {
    if a.ambient_dim != b.ambient_dim || a.dim() != b.dim() {
        return None;
    }
    if a.dim() == 0 {
        return Some(0.0);
    }
    let cross = a.basis.adjoint() * &b.basis;
    // acos loses half the digits near zero angle, asin near a right angle.
    let sine = singular_values(&(&b.basis - &a.basis * &cross))
        .first()
        .copied()
        .unwrap_or(0.0)
        .clamp(0.0, 1.0);
    if sine < std::f64::consts::FRAC_1_SQRT_2 {
        return Some(sine.asin());
    }
    let cosine = singular_values(&cross).last().copied().unwrap_or(0.0);
    Some(cosine.clamp(0.0, 1.0).acos())
}

/// `‖Pᗮ m W‖_F / max(‖m W‖_F, ε)`: how far `m` moves `span(w)` out of itself.
pub fn invariance_residual(m: &CMatrix, w: &SubspaceBasis) -> Result<f64> {
    if m.ncols() != w.ambient_dim || m.nrows() != w.ambient_dim {
        return Err(mismatch!(
            "matrix {}x{} against subspace of C^{}",
            m.nrows(),
            m.ncols(),
            w.ambient_dim
        ));
    }
    if w.dim() == 0 {
        return Ok(0.0);
    }
    let image = m * &w.basis;
    let leak = &image - &w.basis * (w.basis.adjoint() * &image);
    Ok(leak.norm() / image.norm().max(f64::EPSILON))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_root_inverts_power() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                unit(0.3),
                c64(0.4, 0.1),
                c64(0.0, 0.2),
                c64(0.0, 0.0),
                unit(1.1),
                c64(0.5, 0.0),
                c64(0.1, 0.0),
                c64(0.0, 0.0),
                unit(-2.0),
            ],
        );
        for k in [-3i64, -2, 2, 3, 5] {
            let r = principal_root(&m, k).unwrap();
            assert!(
                relative_residual(&matrix_power(&r, k).unwrap(), &m) < 1e-12,
                "k={k}"
            );
        }
        assert_eq!(principal_root(&m, 1).unwrap(), m);
        assert!(principal_root(&m, 0).is_err());
    }

    #[test]
    fn principal_root_of_scalar_is_principal_branch() {
        let r = principal_root(&CMatrix::from_element(1, 1, unit(3.0)), 3).unwrap();
        assert!((r[(0, 0)] - unit(1.0)).norm() < 1e-13);
        let neg = CMatrix::from_element(1, 1, c64(-1.0, 0.0));
        assert!(principal_root(&neg, 2).is_err());
    }

    #[test]
    fn eigenvalues_of_a_triangular_matrix() {
        let m =
            CMatrix::from_row_slice(2, 2, &[unit(1.0), c64(3.0, 0.0), c64(0.0, 0.0), unit(-2.0)]);
        let ev = eigenvalues(&m).unwrap();
        assert!((ev[0] - unit(-2.0)).norm() < 1e-12 && (ev[1] - unit(1.0)).norm() < 1e-12);
    }

    #[test]
    fn log_of_identity_is_zero() {
        assert!(frobenius(&principal_log(&identity(4)).unwrap()) < 1e-15);
    }

    fn real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c64(x, 0.0)))
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = kernel_basis(&CMatrix::zeros(2, 2), &tol()).unwrap();
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(kernel_basis(&identity(3), &tol()).unwrap().dim(), 0);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let k = kernel_basis(&m, &tol()).unwrap();
        assert_eq!(k.dim(), 1);
        let expected = SubspaceBasis::span_of(&real(2, 1, &[1.0, -1.0]), &tol()).unwrap();
        assert!(max_principal_angle(&k, &expected).unwrap() < 1e-12);
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = real(1, 3, &[1.0, 0.0, 0.0]);
        let k = kernel_basis(&m, &tol()).unwrap();
        assert_eq!(k.dim(), 2);
        assert!((&m * k.basis()).norm() < 1e-14);
    }

    #[test]
    fn kernel_rejects_nan() {
        let mut m = identity(2);
        m[(0, 1)] = c64(f64::NAN, 0.0);
        assert!(matches!(
            kernel_basis(&m, &tol()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn scaled_kernel_sees_roundoff_difference() {
        let mut d = CMatrix::zeros(1, 1);
        d[(0, 0)] = c64(1e-17, 0.0);
        assert_eq!(kernel_basis(&d, &tol()).unwrap().dim(), 0);
        assert_eq!(kernel_basis_scaled(&d, 1.0, &tol()).unwrap().dim(), 1);
    }

    #[test]
    fn inertia_examples() {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(2.0, 0.0),
            c64(-3.0, 0.0),
            c64(0.0, 0.0),
        ]));
        assert_eq!(
            hermitian_inertia(&d, &tol()).unwrap(),
            Inertia { p: 1, q: 1, z: 1 }
        );
        assert_eq!(
            hermitian_inertia(&identity(4), &tol()).unwrap(),
            Inertia { p: 4, q: 0, z: 0 }
        );
        let swap = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(
            hermitian_inertia(&swap, &tol()).unwrap(),
            Inertia { p: 1, q: 1, z: 0 }
        );
    }

    #[test]
    fn inertia_rejects_non_hermitian() {
        let m = real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(hermitian_inertia(&m, &tol()).is_err());
    }

    #[test]
    fn congruence_examples() {
        let h = real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let x = real(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert_eq!(
            congruence(&h, &x).unwrap(),
            real(2, 2, &[4.0, 0.0, 0.0, -9.0])
        );
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u =
            CMatrix::from_row_slice(2, 2, &[c64(s, 0.0), c64(0.0, s), c64(0.0, s), c64(s, 0.0)]);
        assert!(relative_residual(&congruence(&identity(2), &u).unwrap(), &identity(2)) < 1e-15);
        assert!(congruence(&identity(2), &identity(3)).is_err());
    }

    #[test]
    fn sums_and_complements() {
        let e1 = SubspaceBasis::span_of(&real(3, 1, &[1.0, 0.0, 0.0]), &tol()).unwrap();
        let e2 = SubspaceBasis::span_of(&real(3, 1, &[0.0, 1.0, 0.0]), &tol()).unwrap();
        let e12 = SubspaceBasis::span_of(&real(3, 1, &[1.0, 1.0, 0.0]), &tol()).unwrap();
        assert_eq!(subspace_sum(&e1, &e2, &tol()).unwrap().dim(), 2);
        assert_eq!(subspace_sum(&e1, &e12, &tol()).unwrap().dim(), 2);
        let same = subspace_sum(&e1, &SubspaceBasis::zero(3), &tol()).unwrap();
        assert!(max_principal_angle(&same, &e1).unwrap() < 1e-12);
        assert!(subspace_sum(&e1, &SubspaceBasis::zero(2), &tol()).is_err());

        assert_eq!(orthogonal_complement(&SubspaceBasis::full(3)).dim(), 0);
        assert_eq!(orthogonal_complement(&SubspaceBasis::zero(3)).dim(), 3);
        let diag = SubspaceBasis::span_of(&real(2, 1, &[1.0, 1.0]), &tol()).unwrap();
        let anti = SubspaceBasis::span_of(&real(2, 1, &[1.0, -1.0]), &tol()).unwrap();
        let comp = orthogonal_complement(&diag);
        assert!(max_principal_angle(&comp, &anti).unwrap() < 1e-12);
    }

    #[test]
    fn principal_angles_small_and_right() {
        let e1 = SubspaceBasis::span_of(&real(2, 1, &[1.0, 0.0]), &tol()).unwrap();
        let tilted = SubspaceBasis::span_of(&real(2, 1, &[1.0, 1e-10]), &tol()).unwrap();
        let angle = max_principal_angle(&e1, &tilted).unwrap();
        assert!((angle - 1e-10).abs() < 1e-20, "{angle:e}");
        let e2 = SubspaceBasis::span_of(&real(2, 1, &[0.0, 1.0]), &tol()).unwrap();
        let right = max_principal_angle(&e1, &e2).unwrap();
        assert!((right - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn power_and_inverse() {
        let m = real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(
            matrix_power(&m, 3).unwrap(),
            real(2, 2, &[1.0, 3.0, 0.0, 1.0])
        );
        assert!(
            relative_residual(
                &matrix_power(&m, -2).unwrap(),
                &real(2, 2, &[1.0, -2.0, 0.0, 1.0])
            ) < 1e-15
        );
        assert!(matches!(
            inverse(&CMatrix::zeros(2, 2)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerances::new(0.0, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, 1.5).is_err());
        assert!(Tolerances::new(1e-6, 1e-12).is_ok());
    }
}
