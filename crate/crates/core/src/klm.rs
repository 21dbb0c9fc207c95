//! The subspaces `K` and `L` of the twisted construction, quotients by
//! `K + L`, the Katz-Long-Moody representation, and iterated towers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::convolutions::{twisted_lm, ConvolutionParams};
use crate::error::{invalid, mismatch, Error, Result};
use crate::hermitian::{
    annihilation_check, kernel_equals_kl, quotient_form, signature_recursive, SignatureReport,
};
use crate::linalg::{
    identity, invariance_residual, kernel_basis_scaled, orthogonal_complement, spectral_norm,
    subspace_sum, CMatrix, SubspaceBasis, Tolerances,
};
use crate::reps::{
    check_braid_relations, check_semidirect_compat, commutant_dimension, SemidirectRep,
};

/// Largest invariance residual accepted before a quotient is refused.
pub const QUOTIENT_INVARIANCE_LIMIT: f64 = 1e-6;

/// An invariant subspace `W` and an orthonormal chart `Q` of its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientData {
    w: SubspaceBasis,
    q: SubspaceBasis,
}

impl QuotientData {
    pub fn new(w: SubspaceBasis) -> Self {
        let q = orthogonal_complement(&w);
        Self { w, q }
    }

    pub fn invariant(&self) -> &SubspaceBasis {
        &self.w
    }

    pub fn complement(&self) -> &SubspaceBasis {
        &self.q
    }

    /// `(dim W, dim quotient)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.w.dim(), self.q.dim())
    }
}

/// `⊕_j ker(g_j − I)`, each kernel placed in block slot `j`.
pub fn subspace_k(g: &[CMatrix], tol: &Tolerances) -> Result<SubspaceBasis> {
    let n = g.len();
    let d = g
        .first()
        .map(|m| m.nrows())
        .ok_or_else(|| invalid!("empty list of g"))?;
    let mut cols = Vec::new();
    for (slot, m) in g.iter().enumerate() {
        if m.shape() != (d, d) {
            return Err(mismatch!(
                "g_{} is {}x{}, expected {d}x{d}",
                slot + 1,
                m.nrows(),
                m.ncols()
            ));
        }
        let scale = spectral_norm(m).max(1.0);
        let ker = kernel_basis_scaled(&(m - identity(d)), scale, tol)?;
        for c in 0..ker.dim() {
            let mut v = CMatrix::zeros(n * d, 1);
            v.view_mut((slot * d, 0), (d, 1))
                .copy_from(&ker.basis().column(c));
            cols.push(v);
        }
    }
    let mut basis = CMatrix::zeros(n * d, cols.len());
    for (c, v) in cols.iter().enumerate() {
        basis.set_column(c, &v.column(0));
    }
    SubspaceBasis::from_orthonormal(basis, tol)
}

/// `ker(G_1 G_2 ⋯ G_n − I)`.
pub fn subspace_l(big_g: &[CMatrix], tol: &Tolerances) -> Result<SubspaceBasis> {
    let d = big_g
        .first()
        .map(|m| m.nrows())
        .ok_or_else(|| invalid!("empty list of G"))?;
    let mut prod = identity(d);
    for (j, m) in big_g.iter().enumerate() {
        if m.shape() != (d, d) {
            return Err(mismatch!(
                "G_{} is {}x{}, expected {d}x{d}",
                j + 1,
                m.nrows(),
                m.ncols()
            ));
        }
        prod *= m;
    }
    let scale = spectral_norm(&prod).max(1.0);
    kernel_basis_scaled(&(prod - identity(d)), scale, tol)
}

/// `max_j ‖G_j L − L‖_F`: how far each `G_j` is from fixing `L` pointwise.
pub fn l_pointwise_residual(big_g: &[CMatrix], l: &SubspaceBasis) -> f64 {
    big_g
        .iter()
        .map(|m| (m * l.basis() - l.basis()).norm())
        .fold(0.0, f64::max)
}

/// `Q† m Q` for each matrix, after checking that `W` is invariant.
pub fn quotient_action(mats: &[CMatrix], qd: &QuotientData) -> Result<Vec<CMatrix>> {
    let q = qd.q.basis();
    mats.iter()
        .map(|m| {
            let r = invariance_residual(m, &qd.w)?;
            if r > QUOTIENT_INVARIANCE_LIMIT {
                return Err(Error::NotInvariant(format!(
                    "invariance residual {r:.3e} exceeds {QUOTIENT_INVARIANCE_LIMIT:.0e}"
                )));
            }
            Ok(q.adjoint() * m * q)
        })
        .collect()
}

/// Everything produced by one Katz-Long-Moody step.
#[derive(Debug, Clone)]
pub struct KlmOutput {
    /// The twisted construction before quotienting.
    pub lifted: SemidirectRep,
    pub k: SubspaceBasis,
    pub l: SubspaceBasis,
    pub quotient: QuotientData,
    /// The quotient representation; `None` when the quotient is zero.
    pub rep: Option<SemidirectRep>,
    /// Largest invariance residual of a lifted generator against `K + L`.
    pub invariance_residual: f64,
    /// Reported, not enforced.
    pub l_pointwise_residual: f64,
}

/// Twisted construction followed by the quotient by `K + L`.
pub fn klm(rep: &SemidirectRep, params: &ConvolutionParams, tol: &Tolerances) -> Result<KlmOutput> {
    let lifted = twisted_lm(rep, params)?;
    let k = subspace_k(rep.g(), tol)?;
    let l = subspace_l(lifted.g(), tol)?;
    let w = subspace_sum(&k, &l, tol)?;
    let quotient = QuotientData::new(w);
    let images = lifted.generator_images();
    let mut worst = 0.0_f64;
    for m in &images {
        worst = worst.max(invariance_residual(m, quotient.invariant())?);
    }
    let l_pointwise = l_pointwise_residual(lifted.g(), &l);
    let out_rep = if quotient.dims().1 == 0 {
        None
    } else {
        let g = quotient_action(lifted.g(), &quotient)?;
        let s_mats: Vec<CMatrix> = lifted.s().values().cloned().collect();
        let s_q = quotient_action(&s_mats, &quotient)?;
        let s: BTreeMap<usize, CMatrix> = lifted.s().keys().copied().zip(s_q).collect();
        let q_rep = SemidirectRep::new(g, s, lifted.action_exponent())?;
        match lifted.hermitian() {
            Some(h) => match quotient_form(h, &quotient) {
                Ok(form) => Some(q_rep.with_hermitian(form.matrix)?),
                Err(_) => Some(q_rep),
            },
            None => Some(q_rep),
        }
    };
    Ok(KlmOutput {
        lifted,
        k,
        l,
        quotient,
        rep: out_rep,
        invariance_residual: worst,
        l_pointwise_residual: l_pointwise,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TowerOptions {
    /// Quotient by `K + L` at each level; otherwise iterate the twisted
    /// construction alone.
    pub quotient: bool,
    /// Refuse to build a level whose lifted dimension exceeds this.
    pub max_dim: usize,
    /// Commutant dimensions are computed only up to this size.
    pub max_commutant_dim: usize,
    /// Signatures are computed only up to this size.
    pub max_signature_dim: usize,
}

impl Default for TowerOptions {
    fn default() -> Self {
        Self {
            quotient: true,
            max_dim: 4096,
            max_commutant_dim: 24,
            max_signature_dim: 512,
        }
    }
}

/// Per-level record of a tower.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub level: usize,
    pub lambda: [f64; 2],
    pub lifted_dim: usize,
    pub k_dim: usize,
    pub l_dim: usize,
    pub dim: usize,
    pub compat_residual: Option<f64>,
    pub braid_residual: Option<f64>,
    pub invariance_residual: f64,
    pub l_pointwise_residual: f64,
    pub annihilation: Option<(f64, f64)>,
    pub kernel_matches: Option<bool>,
    pub commutant_dim: Option<usize>,
    pub signature: Option<SignatureReport>,
}

#[derive(Debug, Clone)]
pub struct Tower {
    pub levels: Vec<TowerLevel>,
    /// Representation at each completed level (the seed is not included).
    pub reps: Vec<SemidirectRep>,
    /// Set when a level had a zero-dimensional result and the tower stopped.
    pub degenerate: bool,
}

/// Iterates the construction `depth` times with `lambdas[level]`.
pub fn tower(
    seed: &SemidirectRep,
    lambdas: &[crate::linalg::C64],
    depth: usize,
    options: &TowerOptions,
    tol: &Tolerances,
) -> Result<Tower> {
    if depth == 0 {
        return Err(invalid!("depth must be at least 1"));
    }
    if lambdas.len() < depth {
        return Err(invalid!(
            "depth {depth} needs {depth} lambdas, got {}",
            lambdas.len()
        ));
    }
    let mut current = seed.clone();
    let mut levels = Vec::new();
    let mut reps = Vec::new();
    let mut degenerate = false;
    for (level, &lambda) in lambdas.iter().enumerate().take(depth) {
        let lifted_dim = current.dim() * current.n();
        if lifted_dim > options.max_dim {
            return Err(Error::ResourceGuard(format!(
                "level {} would have dimension {lifted_dim}, above the limit {}",
                level + 1,
                options.max_dim
            )));
        }
        let params = ConvolutionParams::new(lambda, current.action_exponent())?;
        let (next, record) = if options.quotient {
            let out = klm(&current, &params, tol)?;
            let (annihilation, kernel_matches, signature) = match out.lifted.hermitian() {
                Some(h) => {
                    let ann = annihilation_check(h, &out.k, &out.l)?;
                    let ker = kernel_equals_kl(h, out.quotient.invariant(), tol)?;
                    let sig = if lifted_dim <= options.max_signature_dim {
                        Some(signature_recursive(h, current.dim(), tol)?)
                    } else {
                        None
                    };
                    (Some(ann), Some(ker.pass), sig)
                }
                None => (None, None, None),
            };
            let record = TowerLevel {
                level: level + 1,
                lambda: [lambda.re, lambda.im],
                lifted_dim,
                k_dim: out.k.dim(),
                l_dim: out.l.dim(),
                dim: out.quotient.dims().1,
                compat_residual: None,
                braid_residual: None,
                invariance_residual: out.invariance_residual,
                l_pointwise_residual: out.l_pointwise_residual,
                annihilation,
                kernel_matches,
                commutant_dim: None,
                signature,
            };
            (out.rep, record)
        } else {
            let lifted = twisted_lm(&current, &params)?;
            let signature = match lifted.hermitian() {
                Some(h) if lifted_dim <= options.max_signature_dim => {
                    Some(signature_recursive(h, current.dim(), tol)?)
                }
                _ => None,
            };
            let record = TowerLevel {
                level: level + 1,
                lambda: [lambda.re, lambda.im],
                lifted_dim,
                k_dim: 0,
                l_dim: 0,
                dim: lifted_dim,
                compat_residual: None,
                braid_residual: None,
                invariance_residual: 0.0,
                l_pointwise_residual: 0.0,
                annihilation: None,
                kernel_matches: None,
                commutant_dim: None,
                signature,
            };
            (Some(lifted), record)
        };
        let mut record = record;
        match next {
            Some(rep) => {
                record.compat_residual = Some(check_semidirect_compat(&rep)?);
                if rep.has_full_braid() {
                    record.braid_residual = Some(check_braid_relations(&rep)?);
                }
                if rep.dim() <= options.max_commutant_dim {
                    record.commutant_dim = Some(commutant_dimension(&rep.generator_images(), tol)?);
                }
                levels.push(record);
                reps.push(rep.clone());
                current = rep;
            }
            None => {
                levels.push(record);
                degenerate = true;
                break;
            }
        }
    }
    Ok(Tower {
        levels,
        reps,
        degenerate,
    })
}
