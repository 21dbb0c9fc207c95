//! Representations of `F_n ⋊ B` and anti-representations of `P_{n+1}`.
//!
//! A [`SemidirectRep`] stores the images `g_j` of the free generators and
//! `s_i` of the braid generators it knows about. A [`PureBraidAntiRep`]
//! stores matrices `M_{ij}`, `0 ≤ i < j ≤ n`, indexed by the generators of
//! the pure braid group on points `0..n`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::braidwords::{
    pure_braid_generator, tilde_pure_braid_generator, wada_act, BraidWord, FreeWord, MixedWord,
    Token,
};
use crate::error::{invalid, mismatch, Error, Result};
use crate::linalg::{
    c64, ensure_finite, ensure_square, identity, inverse, kernel_basis_scaled, relative_residual,
    singular_values, CMatrix, Tolerances, C64,
};

/// How `M_{ij}` (`i ≥ 1`) is read off a semidirect representation.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `M_{ij} = ρ(σ_i ⋯ σ_{j−2} σ_{j−1}² σ_{j−2}^{-1} ⋯ σ_i^{-1})`.
    Direct,
    /// `M_{ij} = ρ(σ_i^{-1} ⋯ σ_{j−2}^{-1} σ_{j−1}² σ_{j−2} ⋯ σ_i)`, the inverse
    /// of the generator built from `σ_m^{-1}`.
    #[default]
    InverseTilde,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Direct, Convention::InverseTilde];

    /// The braid word in `B_n` whose image is `M_{ij}`.
    pub fn word(self, i: usize, j: usize, n: usize) -> Result<BraidWord> {
        match self {
            Convention::Direct => pure_braid_generator(i, j, n),
            Convention::InverseTilde => Ok(tilde_pure_braid_generator(i, j, n)?.inverse()),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Convention::Direct => "direct",
            Convention::InverseTilde => "inverse-tilde",
        }
    }
}

fn check_invertible(m: &CMatrix, what: &str, tol: &Tolerances) -> Result<CMatrix> {
    ensure_square(m, what)?;
    ensure_finite(m, what)?;
    let sv = singular_values(m);
    let (top, bottom) = (sv[0], *sv.last().expect("non-empty"));
    if bottom <= tol.rank_rel * top * m.nrows() as f64 {
        return Err(Error::Singular(format!("{what} is not invertible")));
    }
    inverse(m).map_err(|_| Error::Singular(format!("{what} is not invertible")))
}

/// A representation of `F_n ⋊ B` with `B` generated by the `σ_i` in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemidirectRep {
    n: usize,
    dim: usize,
    g: Vec<CMatrix>,
    g_inv: Vec<CMatrix>,
    s: BTreeMap<usize, CMatrix>,
    s_inv: BTreeMap<usize, CMatrix>,
    action_exponent: i64,
    hermitian: Option<CMatrix>,
    anti: bool,
}

impl SemidirectRep {
    /// Validates shapes, finiteness and invertibility of every generator image.
    pub fn new(g: Vec<CMatrix>, s: BTreeMap<usize, CMatrix>, action_exponent: i64) -> Result<Self> {
        let tol = Tolerances::default();
        let n = g.len();
        if n == 0 {
            return Err(invalid!(
                "a representation needs at least one free generator"
            ));
        }
        if action_exponent == 0 {
            return Err(invalid!("action exponent k must be nonzero"));
        }
        let dim = g[0].nrows();
        let mut g_inv = Vec::with_capacity(n);
        for (j, m) in g.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(mismatch!(
                    "g_{} is {}x{}, expected {dim}x{dim}",
                    j + 1,
                    m.nrows(),
                    m.ncols()
                ));
            }
            g_inv.push(check_invertible(m, &format!("g_{}", j + 1), &tol)?);
        }
        let mut s_inv = BTreeMap::new();
        for (&i, m) in &s {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "s_{i} outside 1..={}",
                    n - 1
                )));
            }
            if m.shape() != (dim, dim) {
                return Err(mismatch!(
                    "s_{i} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                ));
            }
            s_inv.insert(i, check_invertible(m, &format!("s_{i}"), &tol)?);
        }
        Ok(Self {
            n,
            dim,
            g,
            g_inv,
            s,
            s_inv,
            action_exponent,
            hermitian: None,
            anti: false,
        })
    }

    /// Same as [`SemidirectRep::new`] with every `s_1 … s_{n−1}` given.
    pub fn with_full_braid(g: Vec<CMatrix>, s: Vec<CMatrix>, action_exponent: i64) -> Result<Self> {
        let map = s.into_iter().enumerate().map(|(i, m)| (i + 1, m)).collect();
        let rep = Self::new(g, map, action_exponent)?;
        if rep.s.len() + 1 != rep.n {
            return Err(invalid!(
                "expected {} braid generators, got {}",
                rep.n - 1,
                rep.s.len()
            ));
        }
        Ok(rep)
    }

    /// Attaches a Hermitian matrix relative to which the rep is claimed unitary.
    pub fn with_hermitian(mut self, h: CMatrix) -> Result<Self> {
        if h.shape() != (self.dim, self.dim) {
            return Err(mismatch!(
                "H is {}x{}, rep dimension is {}",
                h.nrows(),
                h.ncols(),
                self.dim
            ));
        }
        ensure_finite(&h, "H")?;
        self.hermitian = Some(h);
        Ok(self)
    }

    pub fn without_hermitian(mut self) -> Self {
        self.hermitian = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g(&self) -> &[CMatrix] {
        &self.g
    }

    /// `g_j` for 1-based `j`.
    pub fn g_at(&self, j: usize) -> Result<&CMatrix> {
        j.checked_sub(1)
            .and_then(|k| self.g.get(k))
            .ok_or_else(|| Error::IndexOutOfRange(format!("g_{j} outside 1..={}", self.n)))
    }

    pub fn s(&self) -> &BTreeMap<usize, CMatrix> {
        &self.s
    }

    pub fn s_at(&self, i: usize) -> Result<&CMatrix> {
        self.s
            .get(&i)
            .ok_or_else(|| invalid!("s_{i} is not in the braid subgroup of this representation"))
    }

    pub fn has_full_braid(&self) -> bool {
        self.s.len() + 1 == self.n
    }

    pub fn action_exponent(&self) -> i64 {
        self.action_exponent
    }

    pub fn hermitian(&self) -> Option<&CMatrix> {
        self.hermitian.as_ref()
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    /// All generator images: `g_1 … g_n` then `s_i` in index order.
    pub fn generator_images(&self) -> Vec<CMatrix> {
        self.g.iter().chain(self.s.values()).cloned().collect()
    }

    fn letter(&self, token: Token) -> Result<(CMatrix, u64)> {
        let (m, exp) = match token {
            Token::Free(l) => {
                let k = l.index - 1;
                let m = if l.exp > 0 {
                    &self.g[k]
                } else {
                    &self.g_inv[k]
                };
                (m.clone(), l.exp)
            }
            Token::Braid(l) => {
                let m = if l.exp > 0 {
                    self.s.get(&l.index)
                } else {
                    self.s_inv.get(&l.index)
                };
                let m = m.ok_or_else(|| {
                    invalid!(
                        "s_{} is not in the braid subgroup of this representation",
                        l.index
                    )
                })?;
                (m.clone(), l.exp)
            }
        };
        Ok((m, exp.unsigned_abs()))
    }

    /// Image of a word; letters multiply left to right (right to left for
    /// an anti-representation).
    pub fn evaluate(&self, w: &MixedWord) -> Result<CMatrix> {
        if w.n() != self.n {
            return Err(mismatch!(
                "word over n = {} evaluated in a rep with n = {}",
                w.n(),
                self.n
            ));
        }
        let mut acc = identity(self.dim);
        for &t in w.tokens() {
            let (m, times) = self.letter(t)?;
            for _ in 0..times {
                acc = if self.anti { &m * &acc } else { &acc * &m };
            }
        }
        Ok(acc)
    }

    pub fn evaluate_braid(&self, w: &BraidWord) -> Result<CMatrix> {
        self.evaluate(&w.to_mixed())
    }

    pub fn evaluate_free(&self, w: &FreeWord) -> Result<CMatrix> {
        self.evaluate(&w.to_mixed())
    }

    /// The opposite object: `w ↦ ρ(w^{-1})`, with the variance flipped.
    pub fn op_transform(&self) -> SemidirectRep {
        SemidirectRep {
            n: self.n,
            dim: self.dim,
            g: self.g_inv.clone(),
            g_inv: self.g.clone(),
            s: self.s_inv.clone(),
            s_inv: self.s.clone(),
            action_exponent: self.action_exponent,
            hermitian: self.hermitian.clone(),
            anti: !self.anti,
        }
    }
}

/// `max_{i, j} ‖s_i g_j s_i^{-1} − ρ(θ_{σ_i}(x_j))‖_F / ‖g_j‖_F`, using the
/// rep's own action exponent.
pub fn check_semidirect_compat(rep: &SemidirectRep) -> Result<f64> {
    check_compat_with_exponent(rep, rep.action_exponent)
}

/// As [`check_semidirect_compat`] with an explicit action exponent.
pub fn check_compat_with_exponent(rep: &SemidirectRep, k: i64) -> Result<f64> {
    let hom = if rep.anti {
        rep.op_transform()
    } else {
        rep.clone()
    };
    let mut worst = 0.0_f64;
    for (&i, s) in &hom.s {
        let s_inv = &hom.s_inv[&i];
        for j in 1..=hom.n {
            let lhs = s * &hom.g[j - 1] * s_inv;
            let image = wada_act(k, i, 1, &FreeWord::generator(hom.n, j)?)?;
            let rhs = hom.evaluate_free(&image)?;
            let r = (&lhs - &rhs).norm() / hom.g[j - 1].norm();
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// Largest relative residual of far commutation and the braid relation
/// among the `s_i`.
pub fn check_braid_relations(rep: &SemidirectRep) -> Result<f64> {
    if !rep.has_full_braid() {
        return Err(invalid!(
            "braid relations need every s_1..s_{}; this rep has {:?}",
            rep.n.saturating_sub(1),
            rep.s.keys().collect::<Vec<_>>()
        ));
    }
    braid_relation_residual(&rep.s.values().cloned().collect::<Vec<_>>())
}

/// Braid-relation residual of a list `s_1 … s_{n−1}` of matrices.
pub fn braid_relation_residual(s: &[CMatrix]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            if s[a].shape() != s[b].shape() {
                return Err(mismatch!("braid generator images of different sizes"));
            }
            let r = if b == a + 1 {
                relative_residual(&(&s[a] * &s[b] * &s[a]), &(&s[b] * &s[a] * &s[b]))
            } else {
                relative_residual(&(&s[a] * &s[b]), &(&s[b] * &s[a]))
            };
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// `σ_{ij}^{exp}` for `0 ≤ i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureLetter {
    pub i: usize,
    pub j: usize,
    pub exp: i64,
}

impl PureLetter {
    pub fn new(i: usize, j: usize, exp: i64) -> Self {
        Self { i, j, exp }
    }

    pub fn inverse(self) -> Self {
        Self {
            exp: -self.exp,
            ..self
        }
    }
}

pub fn invert_pure_word(w: &[PureLetter]) -> Vec<PureLetter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Matrices `M_{ij}` for the pure braid group on points `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureBraidAntiRep {
    n: usize,
    dim: usize,
    m: BTreeMap<(usize, usize), CMatrix>,
    m_inv: BTreeMap<(usize, usize), CMatrix>,
    anti: bool,
}

impl PureBraidAntiRep {
    /// Requires every pair `0 ≤ i < j ≤ n` to be present and invertible.
    pub fn new(n: usize, m: BTreeMap<(usize, usize), CMatrix>, anti: bool) -> Result<Self> {
        let tol = Tolerances::default();
        if n == 0 {
            return Err(invalid!("need n >= 1"));
        }
        let dim = m
            .get(&(0, 1))
            .map(|x| x.nrows())
            .ok_or_else(|| invalid!("missing M_01"))?;
        let mut m_inv = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..=n {
                let x = m.get(&(i, j)).ok_or_else(|| invalid!("missing M_{i}{j}"))?;
                if x.shape() != (dim, dim) {
                    return Err(mismatch!(
                        "M_{i}{j} is {}x{}, expected {dim}x{dim}",
                        x.nrows(),
                        x.ncols()
                    ));
                }
                m_inv.insert((i, j), check_invertible(x, &format!("M_{i}{j}"), &tol)?);
            }
        }
        if m.len() != m_inv.len() {
            return Err(Error::IndexOutOfRange(format!(
                "keys outside 0 <= i < j <= {n}"
            )));
        }
        Ok(Self {
            n,
            dim,
            m,
            m_inv,
            anti,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn matrices(&self) -> &BTreeMap<(usize, usize), CMatrix> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&CMatrix> {
        self.m.get(&(i, j)).ok_or_else(|| {
            Error::IndexOutOfRange(format!("no generator ({i}, {j}) for n = {}", self.n))
        })
    }

    pub fn get_inv(&self, i: usize, j: usize) -> Result<&CMatrix> {
        self.m_inv.get(&(i, j)).ok_or_else(|| {
            Error::IndexOutOfRange(format!("no generator ({i}, {j}) for n = {}", self.n))
        })
    }

    /// `M_{01}, …, M_{0n}`.
    pub fn first_row(&self) -> Vec<CMatrix> {
        (1..=self.n).map(|j| self.m[&(0, j)].clone()).collect()
    }

    /// Image of a word in the `σ_{ij}`: the product of letter images in
    /// reversed order when `anti` is set, in order otherwise.
    pub fn evaluate(&self, w: &[PureLetter]) -> Result<CMatrix> {
        let mut acc = identity(self.dim);
        for l in w {
            let m = if l.exp > 0 {
                self.get(l.i, l.j)?
            } else {
                self.get_inv(l.i, l.j)?
            };
            for _ in 0..l.exp.unsigned_abs() {
                acc = if self.anti { m * &acc } else { &acc * m };
            }
        }
        Ok(acc)
    }

    /// Inverts every generator image and flips the variance.
    pub fn op_transform(&self) -> PureBraidAntiRep {
        PureBraidAntiRep {
            n: self.n,
            dim: self.dim,
            m: self.m_inv.clone(),
            m_inv: self.m.clone(),
            anti: !self.anti,
        }
    }

    /// Conjugates every generator: `M ↦ P M P^{-1}`.
    pub fn conjugate(&self, p: &CMatrix) -> Result<PureBraidAntiRep> {
        if p.shape() != (self.dim, self.dim) {
            return Err(mismatch!(
                "conjugator is {}x{}, rep dimension is {}",
                p.nrows(),
                p.ncols(),
                self.dim
            ));
        }
        let p_inv = inverse(p)?;
        let m = self.m.iter().map(|(&k, x)| (k, p * x * &p_inv)).collect();
        PureBraidAntiRep::new(self.n, m, self.anti)
    }
}

/// Evaluates a word with the anti-homomorphism rule regardless of the flag.
pub fn evaluate_anti(rep: &PureBraidAntiRep, w: &[PureLetter]) -> Result<CMatrix> {
    rep.evaluate_reversed(w)
}

impl PureBraidAntiRep {
    fn evaluate_reversed(&self, w: &[PureLetter]) -> Result<CMatrix> {
        let mut acc = identity(self.dim);
        for l in w {
            let m = if l.exp > 0 {
                self.get(l.i, l.j)?
            } else {
                self.get_inv(l.i, l.j)?
            };
            for _ in 0..l.exp.unsigned_abs() {
                acc = m * &acc;
            }
        }
        Ok(acc)
    }
}

/// `M_{0j} = g_j` and `M_{ij} = ρ(word(i, j))` for `i ≥ 1`, as an
/// anti-representation labelled by the generators built from `σ_m^{-1}`.
pub fn restrict_to_pure(rep: &SemidirectRep, convention: Convention) -> Result<PureBraidAntiRep> {
    if !rep.has_full_braid() {
        return Err(invalid!(
            "restriction to the pure braid group needs every s_1..s_{}",
            rep.n - 1
        ));
    }
    let hom = if rep.anti {
        rep.op_transform()
    } else {
        rep.clone()
    };
    let n = hom.n;
    let mut m = BTreeMap::new();
    for j in 1..=n {
        m.insert((0, j), hom.g[j - 1].clone());
    }
    for i in 1..=n {
        for j in i + 1..=n {
            m.insert((i, j), hom.evaluate_braid(&convention.word(i, j, n)?)?);
        }
    }
    PureBraidAntiRep::new(n, m, true)
}

/// Dimension of `{X : XM = MX for every M}`; 1 certifies irreducibility.
pub fn commutant_dimension(mats: &[CMatrix], tol: &Tolerances) -> Result<usize> {
    let d = mats
        .first()
        .map(|m| m.nrows())
        .ok_or_else(|| invalid!("empty matrix list"))?;
    for m in mats {
        if m.shape() != (d, d) {
            return Err(mismatch!("commutant needs square matrices of one size"));
        }
        ensure_finite(m, "matrix")?;
    }
    let id = identity(d);
    let mut stacked = CMatrix::zeros(mats.len() * d * d, d * d);
    for (k, m) in mats.iter().enumerate() {
        let scale = m.norm().max(f64::MIN_POSITIVE);
        let mn = m.unscale(scale);
        let op = id.kronecker(&mn) - mn.transpose().kronecker(&id);
        stacked
            .view_mut((k * d * d, 0), (d * d, d * d))
            .copy_from(&op);
    }
    // Reduce the tall stack to a square triangular factor before the SVD.
    let r = if stacked.nrows() > stacked.ncols() {
        stacked.qr().r()
    } else {
        stacked
    };
    Ok(kernel_basis_scaled(&r, 1.0, tol)?.dim())
}

/// One-dimensional rep: every `g_j = t`, `s_i` as given, `H = [1]`.
///
/// With `strict`, all values must have unit modulus.
pub fn scalar_seed(n: usize, t: C64, s: &[C64], strict: bool) -> Result<SemidirectRep> {
    if n == 0 {
        return Err(invalid!("need n >= 1"));
    }
    if s.len() + 1 != n {
        return Err(invalid!(
            "expected {} braid scalars, got {}",
            n - 1,
            s.len()
        ));
    }
    for (name, v) in std::iter::once(("t", t)).chain(s.iter().map(|&v| ("s", v))) {
        if !(v.re.is_finite() && v.im.is_finite()) || v.norm() == 0.0 {
            return Err(invalid!("{name} = {v} must be a nonzero finite number"));
        }
        if strict && (v.norm() - 1.0).abs() > 1e-9 {
            return Err(invalid!("{name} = {v} must have unit modulus"));
        }
    }
    let one = |v: C64| DMatrix::from_element(1, 1, v);
    SemidirectRep::with_full_braid(vec![one(t); n], s.iter().map(|&v| one(v)).collect(), 1)?
        .with_hermitian(one(c64(1.0, 0.0)))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c64(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// Random unit-modulus complex number.
pub fn random_phase<R: Rng>(rng: &mut R) -> C64 {
    crate::linalg::unit(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// `n` random unitary `g_j` with no braid generators and `H = I`.
pub fn random_unitary_free_rep(n: usize, dim: usize, seed: u64) -> Result<SemidirectRep> {
    if n == 0 || dim == 0 {
        return Err(invalid!("need n >= 1 and N >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = (0..n).map(|_| random_unitary(dim, &mut rng)).collect();
    SemidirectRep::new(g, BTreeMap::new(), 1)?.with_hermitian(identity(dim))
}
