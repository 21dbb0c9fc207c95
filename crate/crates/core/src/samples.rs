//! Seeded generators of test inputs: scalar seeds, first-level towers,
//! unitary free representations with prescribed fixed vectors, and random
//! Hermitian matrices with controlled rank.

use std::collections::BTreeMap;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::convolutions::{twisted_lm, ConvolutionParams};
use crate::error::Result;
use crate::linalg::{c64, identity, CMatrix, C64};
use crate::reps::{random_phase, random_unitary, scalar_seed, SemidirectRep};

/// Deterministic generator for every sampler in this module.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rep together with the `λ` it should be convolved with.
#[derive(Debug, Clone)]
pub struct Case {
    pub rep: SemidirectRep,
    pub lambda: C64,
    pub label: String,
}

/// Scalar seed with random unit `t`, one random unit `s` shared by every
/// braid generator (the braid relation forces them equal), and random `λ`.
pub fn scalar_case<R: Rng>(rng: &mut R, n: usize) -> Result<Case> {
    let t = random_phase(rng);
    let s = random_phase(rng);
    let lambda = random_phase(rng);
    Ok(Case {
        rep: scalar_seed(n, t, &vec![s; n - 1], true)?,
        lambda,
        label: format!("scalar n={n}"),
    })
}

/// Twisted construction of a random scalar seed: dimension `n`,
/// noncommuting generators, unitary relative to the induced form.
pub fn tower_case<R: Rng>(rng: &mut R, n: usize) -> Result<Case> {
    let base = scalar_case(rng, n)?;
    let inner = random_phase(rng);
    let rep = twisted_lm(&base.rep, &ConvolutionParams::artin(inner)?)?;
    Ok(Case {
        rep,
        lambda: base.lambda,
        label: format!("tower n={n} N={n}"),
    })
}

/// Unitary with `1` among its eigenvalues (multiplicity `fixed`).
pub fn unitary_with_fixed_vectors<R: Rng>(rng: &mut R, dim: usize, fixed: usize) -> CMatrix {
    let u = random_unitary(dim, rng);
    let phases = DVector::from_fn(dim, |k, _| {
        if k < fixed {
            c64(1.0, 0.0)
        } else {
            random_phase(rng)
        }
    });
    &u * CMatrix::from_diagonal(&phases) * u.adjoint()
}

/// Random unitary free rep whose `g_1` fixes a vector, so `K ≠ 0`.
pub fn free_rep_with_k<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Result<SemidirectRep> {
    let mut g = vec![unitary_with_fixed_vectors(rng, dim, 1)];
    for _ in 1..n {
        g.push(random_unitary(dim, rng));
    }
    SemidirectRep::new(g, BTreeMap::new(), 1)?.with_hermitian(identity(dim))
}

/// Random unitary free rep with `g_1 ⋯ g_n` having eigenvalue `1/λ`, which
/// makes `ker(G_1 ⋯ G_n − 1)` nonzero for the twisted construction at `λ`.
pub fn free_rep_with_l<R: Rng>(
    rng: &mut R,
    n: usize,
    dim: usize,
    lambda: C64,
) -> Result<SemidirectRep> {
    let mut g: Vec<CMatrix> = (0..n - 1).map(|_| random_unitary(dim, rng)).collect();
    let prefix = g.iter().fold(identity(dim), |acc, m| acc * m);
    let v = random_unitary(dim, rng);
    let phases = DVector::from_fn(dim, |k, _| {
        if k == 0 {
            c64(1.0, 0.0) / lambda
        } else {
            random_phase(rng)
        }
    });
    let target = &v * CMatrix::from_diagonal(&phases) * v.adjoint();
    g.push(prefix.adjoint() * target);
    SemidirectRep::new(g, BTreeMap::new(), 1)?.with_hermitian(identity(dim))
}

/// Gaussian Hermitian matrix.
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im)
    });
    (&a + a.adjoint()).scale(0.5)
}

/// Hermitian matrix of the given rank and signature: `X† D X` with `D`
/// diagonal (`pos` ones, `neg` minus ones, rest zero) and `X` random.
pub fn random_hermitian_with_inertia<R: Rng>(
    rng: &mut R,
    dim: usize,
    pos: usize,
    neg: usize,
) -> CMatrix {
    let d = DVector::from_fn(dim, |k, _| {
        if k < pos {
            c64(1.0, 0.0)
        } else if k < pos + neg {
            c64(-1.0, 0.0)
        } else {
            c64(0.0, 0.0)
        }
    });
    let x = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im)
    });
    let h = x.adjoint() * CMatrix::from_diagonal(&d) * &x;
    (&h + h.adjoint()).scale(0.5)
}

/// Hermitian matrix whose leading `block×block` block is singular but
/// whose block kernel is decoupled from the rest.
pub fn hermitian_with_singular_leading_block<R: Rng>(
    rng: &mut R,
    blocks: usize,
    block: usize,
) -> CMatrix {
    let dim = blocks * block;
    let mut h = random_hermitian(rng, dim);
    // Zero the first row/column of the leading block in a rotated basis.
    let u = random_unitary(block, rng);
    let mut rot = identity(dim);
    rot.view_mut((0, 0), (block, block)).copy_from(&u);
    for k in 0..dim {
        h[(0, k)] = c64(0.0, 0.0);
        h[(k, 0)] = c64(0.0, 0.0);
    }
    rot.adjoint() * h * rot
}
