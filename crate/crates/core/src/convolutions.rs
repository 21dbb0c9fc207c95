//! Matrix constructions: the Long-Moody braid matrices, the
//! Dettweiler-Reiter free-generator matrices, their twisted combination and
//! the exponent-`k` variant, Haraoka's multiplicative middle convolution of
//! pure-braid anti-representations, the additive residue matrices, and the
//! basis matrix relating the two sides.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, mismatch, Error, Result};
use crate::hermitian::build_h_tilde;
use crate::linalg::{
    c64, direct_sum_repeat, ensure_finite, identity, inverse, matrix_power, principal_root,
    set_block, singular_values, CMatrix, Tolerances, C64,
};
use crate::reps::{PureBraidAntiRep, SemidirectRep};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionParams {
    pub lambda: C64,
    /// Exponent of the free-group action; 1 is the Artin action.
    pub k: i64,
}

impl ConvolutionParams {
    pub fn new(lambda: C64, k: i64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda.norm() == 0.0 {
            return Err(invalid!(
                "lambda = {lambda} must be a nonzero finite number"
            ));
        }
        if k == 0 {
            return Err(invalid!("action exponent k must be nonzero"));
        }
        Ok(Self { lambda, k })
    }

    pub fn artin(lambda: C64) -> Result<Self> {
        Self::new(lambda, 1)
    }
}

/// Scalar in front of the `g_m^k − 1` entries left of the pivot in the
/// exponent-`k` construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WadaRowScaling {
    #[default]
    Lambda,
    LambdaPowK,
}

fn check_lambda(lambda: C64) -> Result<()> {
    ConvolutionParams::artin(lambda).map(|_| ())
}

fn check_blocks(mats: &[CMatrix], what: &str) -> Result<usize> {
    let first = mats.first().ok_or_else(|| invalid!("{what}: empty list"))?;
    let d = first.nrows();
    for (k, m) in mats.iter().enumerate() {
        if m.shape() != (d, d) || d == 0 {
            return Err(mismatch!(
                "{what}[{}] is {}x{}, expected {d}x{d}",
                k + 1,
                m.nrows(),
                m.ncols()
            ));
        }
        ensure_finite(m, what)?;
    }
    Ok(d)
}

/// `s_i^{⊕n} · diag(I, R_i, I)` with `R_i = [[0, g_i^k], [I, I − g_{i+1}^k]]`
/// occupying block rows/columns `i, i+1`.
fn lm_sigma_pow(rep: &SemidirectRep, i: usize, k: i64) -> Result<CMatrix> {
    let n = rep.n();
    let s = rep.s_at(i)?;
    let d = rep.dim();
    let gi = matrix_power(rep.g_at(i)?, k)?;
    let gi1 = matrix_power(rep.g_at(i + 1)?, k)?;
    let mut block = identity(n * d);
    let a = i - 1;
    set_block(&mut block, d, a, a, &CMatrix::zeros(d, d));
    set_block(&mut block, d, a, a + 1, &gi);
    set_block(&mut block, d, a + 1, a, &identity(d));
    set_block(&mut block, d, a + 1, a + 1, &(identity(d) - gi1));
    Ok(direct_sum_repeat(s, n) * block)
}

/// Long-Moody image of `σ_i`.
pub fn lm_sigma(rep: &SemidirectRep, i: usize) -> Result<CMatrix> {
    lm_sigma_pow(rep, i, 1)
}

/// Identity except block row `j` (1-based):
/// `(λ(g_1 − 1), …, λ(g_{j−1} − 1), λ g_j, g_{j+1} − 1, …, g_n − 1)`.
pub fn dr_matrix(g: &[CMatrix], lambda: C64, j: usize) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_blocks(g, "g")?;
    if j == 0 || j > g.len() {
        return Err(Error::IndexOutOfRange(format!(
            "row {j} outside 1..={}",
            g.len()
        )));
    }
    Ok(dr_row_matrix(g, lambda, lambda, j))
}

fn dr_row_matrix(g: &[CMatrix], left_scale: C64, pivot_scale: C64, j: usize) -> CMatrix {
    let n = g.len();
    let d = g[0].nrows();
    let id = identity(d);
    let mut out = identity(n * d);
    for (col, gm) in g.iter().enumerate() {
        let m = col + 1;
        let block = match m.cmp(&j) {
            std::cmp::Ordering::Less => (gm - &id) * left_scale,
            std::cmp::Ordering::Equal => gm * pivot_scale,
            std::cmp::Ordering::Greater => gm - &id,
        };
        set_block(&mut out, d, j - 1, col, &block);
    }
    out
}

/// Twisted Long-Moody construction: `x_j ↦ dr_matrix(g, λ, j)`,
/// `σ_i ↦ lm_sigma(ρ, i)`. For `k ≠ 1` this is [`wada_lm`] with the default
/// row scaling.
///
/// When the input carries a Hermitian form and `|λ| = 1`, the output
/// carries the induced form.
pub fn twisted_lm(rep: &SemidirectRep, params: &ConvolutionParams) -> Result<SemidirectRep> {
    let params = ConvolutionParams::new(params.lambda, params.k)?;
    if params.k != 1 {
        return wada_lm(rep, &params, WadaRowScaling::Lambda);
    }
    if rep.is_anti() {
        return Err(invalid!(
            "the twisted construction takes a homomorphism, not its opposite"
        ));
    }
    let g: Vec<CMatrix> = (1..=rep.n())
        .map(|j| dr_row_matrix(rep.g(), params.lambda, params.lambda, j))
        .collect();
    let mut s = BTreeMap::new();
    for &i in rep.s().keys() {
        s.insert(i, lm_sigma(rep, i)?);
    }
    let out = SemidirectRep::new(g, s, 1)?;
    match rep.hermitian() {
        Some(h) if (params.lambda.norm() - 1.0).abs() <= 1e-9 => {
            let form = build_h_tilde(rep.g(), h, params.lambda, false)?;
            out.with_hermitian(form.matrix)
        }
        _ => Ok(out),
    }
}

/// The `k`-th powers of the exponent-`k` free-generator images: the
/// free-generator rows built from `g_m^k` in place of `g_m`.
pub fn wada_power_matrices(
    rep: &SemidirectRep,
    params: &ConvolutionParams,
    scaling: WadaRowScaling,
) -> Result<Vec<CMatrix>> {
    let params = ConvolutionParams::new(params.lambda, params.k)?;
    let k = params.k;
    let gk: Vec<CMatrix> = rep
        .g()
        .iter()
        .map(|g| matrix_power(g, k))
        .collect::<Result<_>>()?;
    let left = match scaling {
        WadaRowScaling::Lambda => params.lambda,
        WadaRowScaling::LambdaPowK => params.lambda.powi(k as i32),
    };
    Ok((1..=rep.n())
        .map(|j| dr_row_matrix(&gk, left, params.lambda, j))
        .collect())
}

/// Exponent-`k` construction. Each braid block uses `g_m^k`, and `x_j` maps
/// to the principal `k`-th root of the matching [`wada_power_matrices`]
/// entry, so the image of `x_j^k` is that entry. The output is tagged with
/// action exponent `k`.
pub fn wada_lm(
    rep: &SemidirectRep,
    params: &ConvolutionParams,
    scaling: WadaRowScaling,
) -> Result<SemidirectRep> {
    let params = ConvolutionParams::new(params.lambda, params.k)?;
    let k = params.k;
    if rep.is_anti() {
        return Err(invalid!(
            "the twisted construction takes a homomorphism, not its opposite"
        ));
    }
    let g = wada_power_matrices(rep, &params, scaling)?
        .iter()
        .map(|m| principal_root(m, k))
        .collect::<Result<Vec<_>>>()?;
    let mut s = BTreeMap::new();
    for &i in rep.s().keys() {
        s.insert(i, lm_sigma_pow(rep, i, k)?);
    }
    SemidirectRep::new(g, s, k)
}

/// Where the `λ M` pivot of `N_{0j}` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotReading {
    /// `λ M_{0j}` in block column `j`, as in the Dettweiler-Reiter matrix.
    AtJ,
    /// `λ M_{0,j−1}` in block column `j − 1`, the row shifted one place left.
    Shifted,
}

/// Middle diagonal blocks and row fillers of `N'_{ij}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiddleReading {
    /// Diagonal `M_{0i}^{-1} M_{ij} M_{0j}`,
    /// fillers `(M_{0j} M_{ij} − M_{0i}^{-1} M_{ij} M_{0j})(1 − M_{0k})`.
    Displayed,
    /// As `Displayed` but with `M_{1i}^{-1}` in the fillers; undefined for `i = 1`.
    LiteralM1i,
    /// Diagonal `M_{0i}^{-1} M_{ij} M_{0i}`,
    /// fillers `(M_{0j} M_{ij} − M_{0i}^{-1} M_{ij} M_{0i})(1 − M_{0k})`.
    Conjugated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HaraokaReading {
    pub pivot: PivotReading,
    pub middle: MiddleReading,
}

impl Default for HaraokaReading {
    fn default() -> Self {
        Self {
            pivot: PivotReading::AtJ,
            middle: MiddleReading::Conjugated,
        }
    }
}

impl HaraokaReading {
    pub fn all() -> Vec<HaraokaReading> {
        let mut out = Vec::new();
        for middle in [
            MiddleReading::Displayed,
            MiddleReading::LiteralM1i,
            MiddleReading::Conjugated,
        ] {
            for pivot in [PivotReading::AtJ, PivotReading::Shifted] {
                out.push(HaraokaReading { pivot, middle });
            }
        }
        out
    }
}

/// `N_{0j}`: identity except block row `j`.
pub fn haraoka_n0j(m0: &[CMatrix], lambda: C64, j: usize, pivot: PivotReading) -> Result<CMatrix> {
    check_lambda(lambda)?;
    check_blocks(m0, "M_0")?;
    let n = m0.len();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("row {j} outside 1..={n}")));
    }
    let d = m0[0].nrows();
    let id = identity(d);
    let pivot_col = match pivot {
        PivotReading::AtJ => j,
        PivotReading::Shifted => j - 1,
    };
    let mut out = identity(n * d);
    for (col, m) in m0.iter().enumerate() {
        let c = col + 1;
        let block = if c < pivot_col {
            (m - &id) * lambda
        } else if c == pivot_col {
            m * lambda
        } else {
            m - &id
        };
        set_block(&mut out, d, j - 1, col, &block);
    }
    Ok(out)
}

/// `N_{ij}` for `1 ≤ i < j ≤ n`: `M_{ij}^{⊕(i−1)} ⊕ N'_{ij} ⊕ M_{ij}^{⊕(n−j)}`.
pub fn haraoka_nij(
    m: &PureBraidAntiRep,
    i: usize,
    j: usize,
    middle: MiddleReading,
) -> Result<CMatrix> {
    let n = m.n();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= i < j <= {n}, got ({i}, {j})"
        )));
    }
    let d = m.dim();
    let id = identity(d);
    let mij = m.get(i, j)?;
    let m0i = m.get(0, i)?;
    let m0j = m.get(0, j)?;
    let m0i_inv = m.get_inv(0, i)?;

    let mut out = CMatrix::zeros(n * d, n * d);
    for b in (1..i).chain(j + 1..=n) {
        set_block(&mut out, d, b - 1, b - 1, mij);
    }
    let (a, z) = (i - 1, j - 1);
    set_block(&mut out, d, a, a, &(m0j * mij));
    set_block(&mut out, d, a, z, &(m0j * mij * (&id - m0j)));
    set_block(&mut out, d, z, a, &(mij * (&id - m0i)));
    set_block(&mut out, d, z, z, &(mij - mij * m0j + m0j * mij * m0i));

    if j > i + 1 {
        let (diag, subtracted) = match middle {
            MiddleReading::Displayed => {
                let x = m0i_inv * mij * m0j;
                (x.clone(), x)
            }
            MiddleReading::LiteralM1i => {
                if i == 1 {
                    return Err(invalid!("reading not applicable: the inverse of M_11 is requested, which does not exist"));
                }
                (m0i_inv * mij * m0j, m.get_inv(1, i)? * mij * m0j)
            }
            MiddleReading::Conjugated => {
                let x = m0i_inv * mij * m0i;
                (x.clone(), x)
            }
        };
        let head = m0j * mij - subtracted;
        let tail = mij * (&id - m0i);
        for k in i + 1..j {
            let one_minus = &id - m.get(0, k)?;
            set_block(&mut out, d, k - 1, k - 1, &diag);
            set_block(&mut out, d, a, k - 1, &(&head * &one_minus));
            set_block(&mut out, d, z, k - 1, &(&tail * &one_minus));
        }
    }
    Ok(out)
}

/// Haraoka's convolution: an anti-representation of dimension `N·n`.
pub fn haraoka_convolution(
    m: &PureBraidAntiRep,
    lambda: C64,
    reading: HaraokaReading,
) -> Result<PureBraidAntiRep> {
    let n = m.n();
    let m0 = m.first_row();
    let mut out = BTreeMap::new();
    for j in 1..=n {
        out.insert((0, j), haraoka_n0j(&m0, lambda, j, reading.pivot)?);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.insert((i, j), haraoka_nij(m, i, j, reading.middle)?);
        }
    }
    PureBraidAntiRep::new(n, out, m.is_anti())
}

/// Additive residue matrix: zero except block row `j`,
/// `(A_{01}, …, A_{0j} + λ I, …, A_{0n})`.
pub fn additive_b0j(a0: &[CMatrix], lambda: C64, j: usize) -> Result<CMatrix> {
    let d = check_blocks(a0, "A_0")?;
    let n = a0.len();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("row {j} outside 1..={n}")));
    }
    let mut out = CMatrix::zeros(n * d, n * d);
    for (col, a) in a0.iter().enumerate() {
        let block = if col + 1 == j {
            a + identity(d) * lambda
        } else {
            a.clone()
        };
        set_block(&mut out, d, j - 1, col, &block);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    pub p: CMatrix,
    /// `λ ≠ 1` and every `1 − M_{0k}` invertible.
    pub invertible: bool,
}

/// Block upper-triangular `P` with `P_{mk} = (1 − λ)(1 − M_{0k})` for `m ≤ k`.
pub fn basis_matrix_p(m0: &[CMatrix], lambda: C64) -> Result<BasisMatrix> {
    let d = check_blocks(m0, "M_0")?;
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(invalid!("lambda must be finite"));
    }
    let n = m0.len();
    let tol = Tolerances::default();
    let scale = c64(1.0, 0.0) - lambda;
    let mut p = CMatrix::zeros(n * d, n * d);
    let mut invertible = scale.norm() > tol.rank_rel;
    for (col, m) in m0.iter().enumerate() {
        let block = identity(d) - m;
        let sv = singular_values(&block);
        let top = sv[0].max(1.0);
        if *sv.last().expect("non-empty") <= tol.rank_rel * top * d as f64 {
            invertible = false;
        }
        let scaled = block * scale;
        for row in 0..=col {
            set_block(&mut p, d, row, col, &scaled);
        }
    }
    Ok(BasisMatrix { p, invertible })
}

/// `P N P^{-1}`.
pub fn basis_change(n_mat: &CMatrix, p: &CMatrix) -> Result<CMatrix> {
    if n_mat.shape() != p.shape() || !p.is_square() {
        return Err(mismatch!(
            "N is {}x{}, P is {}x{}",
            n_mat.nrows(),
            n_mat.ncols(),
            p.nrows(),
            p.ncols()
        ));
    }
    let p_inv = inverse(p)?;
    Ok(p * n_mat * p_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{relative_residual, unit};
    use crate::reps::{
        check_braid_relations, check_semidirect_compat, restrict_to_pure, scalar_seed, Convention,
    };

    fn one(v: C64) -> CMatrix {
        CMatrix::from_element(1, 1, v)
    }

    fn scalars(data: &[C64], rows: usize) -> CMatrix {
        CMatrix::from_row_slice(rows, rows, data)
    }

    #[test]
    fn lm_of_trivial_and_scalar_seed() {
        let trivial = scalar_seed(2, c64(1.0, 0.0), &[c64(1.0, 0.0)], true).unwrap();
        let s = lm_sigma(&trivial, 1).unwrap();
        assert_eq!(
            s,
            scalars(
                &[c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
                2
            )
        );

        let t = unit(std::f64::consts::FRAC_PI_3);
        let rep = scalar_seed(3, t, &[c64(1.0, 0.0); 2], true).unwrap();
        let s = lm_sigma(&rep, 1).unwrap();
        let z = c64(0.0, 0.0);
        let o = c64(1.0, 0.0);
        assert_eq!(s, scalars(&[z, t, z, o, o - t, z, z, z, o], 3));
    }

    #[test]
    fn dr_examples() {
        let g = vec![identity(2), identity(2)];
        assert_eq!(dr_matrix(&g, c64(1.0, 0.0), 2).unwrap(), identity(4));
        let (a, b, lam) = (c64(0.3, 0.2), c64(-1.5, 0.7), c64(0.1, 2.0));
        let m = dr_matrix(&[one(a), one(b)], lam, 1).unwrap();
        assert_eq!(
            m,
            scalars(&[lam * a, b - 1.0, c64(0.0, 0.0), c64(1.0, 0.0)], 2)
        );
        assert!(dr_matrix(&[one(a)], c64(0.0, 0.0), 1).is_err());
        assert!(dr_matrix(&[one(a)], lam, 2).is_err());
    }

    #[test]
    fn twisted_lm_of_scalar_seed() {
        let t = unit(0.9);
        let rep = scalar_seed(2, t, &[c64(1.0, 0.0)], true).unwrap();
        let out = twisted_lm(&rep, &ConvolutionParams::artin(c64(1.0, 0.0)).unwrap()).unwrap();
        let g1 = &out.g()[0];
        assert_eq!(g1[(0, 0)], t);
        assert_eq!(g1[(0, 1)], t - 1.0);
        assert!(out.hermitian().is_some());
        let rep3 = scalar_seed(3, t, &[unit(0.4); 2], true).unwrap();
        let out = twisted_lm(&rep3, &ConvolutionParams::artin(unit(1.7)).unwrap()).unwrap();
        assert!(check_semidirect_compat(&out).unwrap() < 1e-12);
        assert!(check_braid_relations(&out).unwrap() < 1e-12);
    }

    #[test]
    fn wada_k1_is_twisted_lm() {
        let rep = scalar_seed(3, unit(0.9), &[unit(0.4); 2], true).unwrap();
        let p = ConvolutionParams::artin(unit(2.2)).unwrap();
        let a = twisted_lm(&rep, &p).unwrap().without_hermitian();
        let b = wada_lm(&rep, &p, WadaRowScaling::Lambda).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wada_output_is_compatible_with_exponent_action() {
        let rep = scalar_seed(3, unit(0.9), &[unit(0.4); 2], true).unwrap();
        for k in [-2i64, 2, 3] {
            let out = wada_lm(
                &rep,
                &ConvolutionParams::new(unit(2.2), k).unwrap(),
                WadaRowScaling::Lambda,
            )
            .unwrap();
            assert!(
                crate::reps::check_compat_with_exponent(&out, k).unwrap() < 1e-9,
                "k={k}"
            );
            assert!(check_braid_relations(&out).unwrap() < 1e-9);
        }
    }

    #[test]
    fn wada_braid_block() {
        let t = unit(0.6);
        let rep = scalar_seed(2, t, &[c64(1.0, 0.0)], true).unwrap();
        let out = wada_lm(
            &rep,
            &ConvolutionParams::new(unit(0.1), 2).unwrap(),
            WadaRowScaling::Lambda,
        )
        .unwrap();
        let s = &out.s()[&1];
        assert_eq!(s[(0, 0)], c64(0.0, 0.0));
        assert!((s[(0, 1)] - t * t).norm() < 1e-15);
        assert_eq!(s[(1, 0)], c64(1.0, 0.0));
        assert!((s[(1, 1)] - (1.0 - t * t)).norm() < 1e-15);
        assert_eq!(out.action_exponent(), 2);
    }

    #[test]
    fn n0j_is_dr_matrix() {
        let m0 = vec![one(unit(0.2)), one(unit(1.2)), one(unit(2.5))];
        for j in 1..=3 {
            assert_eq!(
                haraoka_n0j(&m0, unit(0.7), j, PivotReading::AtJ).unwrap(),
                dr_matrix(&m0, unit(0.7), j).unwrap()
            );
        }
    }

    #[test]
    fn n12_scalar_block() {
        let (a, b, c) = (unit(0.3), unit(1.1), unit(-0.8));
        let mut m = BTreeMap::new();
        m.insert((0, 1), one(a));
        m.insert((0, 2), one(b));
        m.insert((1, 2), one(c));
        let rep = PureBraidAntiRep::new(2, m, true).unwrap();
        let n = haraoka_nij(&rep, 1, 2, MiddleReading::Conjugated).unwrap();
        let expect = scalars(
            &[
                b * c,
                b * c * (1.0 - b),
                c * (1.0 - a),
                c - c * b + b * c * a,
            ],
            2,
        );
        assert!(relative_residual(&n, &expect) < 1e-15);
    }

    #[test]
    fn identity_inputs_give_identity() {
        let rep = scalar_seed(3, c64(1.0, 0.0), &[c64(1.0, 0.0); 2], true).unwrap();
        let m = restrict_to_pure(&rep, Convention::InverseTilde).unwrap();
        for reading in HaraokaReading::all() {
            if reading.middle == MiddleReading::LiteralM1i || reading.pivot == PivotReading::Shifted
            {
                continue;
            }
            let out = haraoka_convolution(&m, c64(1.0, 0.0), reading).unwrap();
            for x in out.matrices().values() {
                assert_eq!(x, &identity(3));
            }
        }
    }

    #[test]
    fn literal_reading_needs_m1i() {
        let rep = scalar_seed(3, unit(0.5), &[unit(0.2); 2], true).unwrap();
        let m = restrict_to_pure(&rep, Convention::InverseTilde).unwrap();
        assert!(haraoka_nij(&m, 1, 3, MiddleReading::LiteralM1i).is_err());
        assert!(haraoka_nij(&m, 1, 2, MiddleReading::LiteralM1i).is_ok());
    }

    #[test]
    fn additive_examples() {
        let a = vec![one(c64(2.0, 0.0)), one(c64(3.0, 0.0))];
        let b = additive_b0j(&a, c64(0.0, 0.0), 2).unwrap();
        assert_eq!(
            b,
            scalars(
                &[c64(0.0, 0.0), c64(0.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0)],
                2
            )
        );
        let b = additive_b0j(&a[..1], c64(0.5, 1.0), 1).unwrap();
        assert_eq!(b[(0, 0)], c64(2.5, 1.0));
    }

    #[test]
    fn basis_matrix_examples() {
        let m = unit(0.4);
        let lam = unit(1.0);
        let p = basis_matrix_p(&[one(m)], lam).unwrap();
        assert!((p.p[(0, 0)] - (1.0 - lam) * (1.0 - m)).norm() < 1e-15);
        assert!(p.invertible);
        let zero = one(c64(0.0, 0.0));
        let p = basis_matrix_p(&[zero.clone(), zero.clone(), zero], c64(0.0, 0.0)).unwrap();
        let o = c64(1.0, 0.0);
        let z = c64(0.0, 0.0);
        assert_eq!(p.p, scalars(&[o, o, o, z, o, o, z, z, o], 3));
        assert!(!basis_matrix_p(&[one(m)], c64(1.0, 0.0)).unwrap().invertible);
        assert!(
            !basis_matrix_p(&[one(c64(1.0, 0.0))], lam)
                .unwrap()
                .invertible
        );
    }

    #[test]
    fn basis_change_identity() {
        let n = scalars(
            &[c64(1.0, 2.0), c64(0.0, 1.0), c64(3.0, 0.0), c64(-1.0, 0.0)],
            2,
        );
        assert!(relative_residual(&basis_change(&n, &identity(2)).unwrap(), &n) < 1e-15);
        assert!(basis_change(&n, &CMatrix::zeros(2, 2)).is_err());
    }
}
