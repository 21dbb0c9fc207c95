//! Numerical comparison of the two sides of the correspondence between the
//! twisted Long-Moody construction and Haraoka's convolution, word-identity
//! checks for pure-braid anti-representations, and adjudication between the
//! candidate readings of the convolution formulas.

use serde::{Deserialize, Serialize};

use crate::convolutions::{
    haraoka_n0j, haraoka_nij, twisted_lm, ConvolutionParams, HaraokaReading, MiddleReading,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::{relative_residual, CMatrix, Tolerances, C64};
use crate::reps::{
    evaluate_anti, invert_pure_word, restrict_to_pure, Convention, PureBraidAntiRep, PureLetter,
    SemidirectRep,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    /// `+∞` when the reading is not defined for this pair.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub dim: usize,
    pub convention: Convention,
    pub reading: HaraokaReading,
    pub residuals: Vec<PairResidual>,
    pub max_residual: f64,
    pub pass: bool,
    /// First pair `(i, j)` that fails while `(i + 1, j)` passes, scanning
    /// `j` upward and `i` downward from `j − 1`.
    pub induction_break: Option<(usize, usize)>,
}

fn pair_residual(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    let r = relative_residual(lhs, rhs);
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

/// Compares `N_{ij}` from Haraoka's convolution of the restriction of `rep`
/// with the image of the matching word under the twisted construction.
pub fn verify_main_theorem(
    rep: &SemidirectRep,
    lambda: C64,
    convention: Convention,
    reading: HaraokaReading,
    tol: &Tolerances,
) -> Result<CorrespondenceReport> {
    let n = rep.n();
    let m = restrict_to_pure(rep, convention)?;
    let lifted = twisted_lm(rep, &ConvolutionParams::artin(lambda)?)?;
    let m0 = m.first_row();
    let mut residuals = Vec::new();
    for j in 1..=n {
        let nj = haraoka_n0j(&m0, lambda, j, reading.pivot)?;
        residuals.push(PairResidual {
            i: 0,
            j,
            residual: pair_residual(&lifted.g()[j - 1], &nj),
        });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let residual = match haraoka_nij(&m, i, j, reading.middle) {
                Ok(nij) => {
                    let lij = lifted.evaluate_braid(&convention.word(i, j, n)?)?;
                    pair_residual(&lij, &nij)
                }
                Err(Error::InvalidInput(_)) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            residuals.push(PairResidual { i, j, residual });
        }
    }
    let max_residual = residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
    let ok = |i: usize, j: usize| {
        residuals
            .iter()
            .find(|r| r.i == i && r.j == j)
            .is_some_and(|r| r.residual <= tol.residual_rel)
    };
    let mut induction_break = None;
    'outer: for j in 2..=n {
        for i in (1..j).rev() {
            let predecessor = i + 1 == j || ok(i + 1, j);
            if predecessor && !ok(i, j) {
                induction_break = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(CorrespondenceReport {
        n,
        dim: rep.dim(),
        convention,
        reading,
        residuals,
        max_residual,
        pass: max_residual <= tol.residual_rel,
        induction_break,
    })
}

/// Two words that should have equal images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordPair {
    pub left: Vec<PureLetter>,
    pub right: Vec<PureLetter>,
}

impl WordPair {
    pub fn new(left: Vec<PureLetter>, right: Vec<PureLetter>) -> Self {
        Self { left, right }
    }
}

fn generators(n: usize) -> Vec<PureLetter> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..=n {
            out.push(PureLetter::new(i, j, 1));
        }
    }
    out
}

/// Candidate identities: every commutation `ab = ba`, every cyclic
/// rotation `abc = bca = cab` of increasing triples, and `w w^{-1} = 1`.
pub fn candidate_pairs(n: usize) -> Vec<WordPair> {
    let gens = generators(n);
    let mut out = Vec::new();
    for (x, &a) in gens.iter().enumerate() {
        out.push(WordPair::new(vec![a, a.inverse()], vec![]));
        for &b in &gens[x + 1..] {
            out.push(WordPair::new(vec![a, b], vec![b, a]));
        }
    }
    for (x, &a) in gens.iter().enumerate() {
        for (y, &b) in gens.iter().enumerate().skip(x + 1) {
            for &c in &gens[y + 1..] {
                out.push(WordPair::new(vec![a, b, c], vec![b, c, a]));
                out.push(WordPair::new(vec![a, b, c], vec![c, a, b]));
                out.push(WordPair::new(vec![a, c, b], vec![c, b, a]));
                out.push(WordPair::new(vec![a, c, b], vec![b, a, c]));
            }
        }
    }
    out
}

/// Keeps the candidates whose two sides agree under `reference` to
/// `1e-10`, and conjugated versions `u w u^{-1}` of each by every generator.
pub fn certified_pairs(reference: &PureBraidAntiRep, tol: &Tolerances) -> Result<Vec<WordPair>> {
    let limit = 1e-10_f64.max(tol.residual_rel * 1e-1);
    let mut base = Vec::new();
    for pair in candidate_pairs(reference.n()) {
        if pair_agreement(reference, &pair)? <= limit {
            base.push(pair);
        }
    }
    let mut out = base.clone();
    for pair in &base {
        if pair.right.is_empty() {
            continue;
        }
        for u in generators(reference.n()) {
            let wrap = |w: &[PureLetter]| {
                let mut v = vec![u];
                v.extend_from_slice(w);
                v.push(u.inverse());
                v
            };
            out.push(WordPair::new(wrap(&pair.left), wrap(&pair.right)));
        }
    }
    Ok(out)
}

fn pair_agreement(rep: &PureBraidAntiRep, pair: &WordPair) -> Result<f64> {
    let l = evaluate_anti(rep, &pair.left)?;
    let r = evaluate_anti(rep, &pair.right)?;
    Ok(pair_residual(&l, &r))
}

/// Confirms each pair under the reference, then returns the largest
/// disagreement of the pairs under `m`.
pub fn verify_antirep_words(
    m: &PureBraidAntiRep,
    pairs: &[WordPair],
    reference: Option<&PureBraidAntiRep>,
) -> Result<f64> {
    if let Some(reference) = reference {
        for pair in pairs {
            if pair_agreement(reference, pair)? > 1e-8 {
                return Err(invalid!(
                    "word pair {:?} is not an identity of the reference representation",
                    pair
                ));
            }
        }
    }
    let mut worst = 0.0_f64;
    for pair in pairs {
        worst = worst.max(pair_agreement(m, pair)?);
    }
    Ok(worst)
}

/// Word `w · w^{-1}` pair helper for ad-hoc checks.
pub fn cancellation_pair(w: &[PureLetter]) -> WordPair {
    let mut left = w.to_vec();
    left.extend(invert_pure_word(w));
    WordPair::new(left, vec![])
}

/// One candidate's outcome across a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadingOutcome {
    pub convention: Convention,
    pub reading: HaraokaReading,
    pub max_residual: f64,
    pub pass: bool,
    /// Smallest failing instance `(n, N, i, j, residual)`, ordered by `n`,
    /// then `N`, then pair.
    pub minimal_failure: Option<(usize, usize, usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Unique {
        convention: Convention,
        reading: HaraokaReading,
    },
    None,
    Multiple(Vec<(Convention, HaraokaReading)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adjudication {
    pub outcomes: Vec<ReadingOutcome>,
    pub verdict: Verdict,
}

/// Runs [`verify_main_theorem`] for every convention and reading in
/// `candidates` over `suite` (pairs of rep and `λ`).
pub fn adjudicate(
    suite: &[(SemidirectRep, C64)],
    candidates: &[(Convention, HaraokaReading)],
    tol: &Tolerances,
) -> Result<Adjudication> {
    let mut outcomes = Vec::new();
    for &(convention, reading) in candidates {
        let mut max_residual = 0.0_f64;
        let mut minimal_failure: Option<(usize, usize, usize, usize, f64)> = None;
        for (rep, lambda) in suite {
            let report = verify_main_theorem(rep, *lambda, convention, reading, tol)?;
            max_residual = max_residual.max(report.max_residual);
            for r in report
                .residuals
                .iter()
                .filter(|r| r.residual > tol.residual_rel)
            {
                let cand = (report.n, report.dim, r.i, r.j, r.residual);
                let better = match minimal_failure {
                    None => true,
                    Some(cur) => (cand.0, cand.1, cand.2, cand.3) < (cur.0, cur.1, cur.2, cur.3),
                };
                if better {
                    minimal_failure = Some(cand);
                }
            }
        }
        outcomes.push(ReadingOutcome {
            convention,
            reading,
            max_residual,
            pass: max_residual <= tol.residual_rel,
            minimal_failure,
        });
    }
    let passing: Vec<(Convention, HaraokaReading)> = outcomes
        .iter()
        .filter(|o| o.pass)
        .map(|o| (o.convention, o.reading))
        .collect();
    let verdict = match passing.as_slice() {
        [] => Verdict::None,
        [(convention, reading)] => Verdict::Unique {
            convention: *convention,
            reading: *reading,
        },
        _ => Verdict::Multiple(passing),
    };
    Ok(Adjudication { outcomes, verdict })
}

/// Every convention crossed with every reading.
pub fn all_candidates() -> Vec<(Convention, HaraokaReading)> {
    let mut out = Vec::new();
    for c in Convention::ALL {
        for r in HaraokaReading::all() {
            out.push((c, r));
        }
    }
    out
}

/// The candidates built only from the formulas as printed (no
/// conjugated middle block).
pub fn printed_candidates() -> Vec<(Convention, HaraokaReading)> {
    all_candidates()
        .into_iter()
        .filter(|(_, r)| r.middle != MiddleReading::Conjugated)
        .collect()
}

/// Adjudication over every candidate.
pub fn adjudicate_readings(
    suite: &[(SemidirectRep, C64)],
    tol: &Tolerances,
) -> Result<Adjudication> {
    adjudicate(suite, &all_candidates(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolutions::PivotReading;
    use crate::linalg::{c64, unit};
    use crate::reps::scalar_seed;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn scalar_seed_passes_under_default() {
        let rep = scalar_seed(
            3,
            unit(std::f64::consts::FRAC_PI_3),
            &[c64(1.0, 0.0); 2],
            true,
        )
        .unwrap();
        let report = verify_main_theorem(
            &rep,
            unit(std::f64::consts::PI / 5.0),
            Convention::default(),
            HaraokaReading::default(),
            &tol(),
        )
        .unwrap();
        assert!(report.pass, "{report:?}");
        for r in report.residuals.iter().filter(|r| r.i == 0) {
            assert_eq!(r.residual, 0.0);
        }
        assert!(report.induction_break.is_none());
    }

    #[test]
    fn trivial_suite_separates_only_undefined_and_shifted_readings() {
        let rep = scalar_seed(3, c64(1.0, 0.0), &[c64(1.0, 0.0); 2], true).unwrap();
        let suite = vec![(rep, c64(1.0, 0.0))];
        let adj = adjudicate_readings(&suite, &tol()).unwrap();
        for o in &adj.outcomes {
            let expected = o.reading.middle != MiddleReading::LiteralM1i
                && o.reading.pivot == PivotReading::AtJ;
            assert_eq!(o.pass, expected, "{o:?}");
        }
    }

    #[test]
    fn identical_words_agree() {
        let rep = restrict_to_pure(
            &scalar_seed(2, unit(0.3), &[unit(0.5)], true).unwrap(),
            Convention::default(),
        )
        .unwrap();
        let w = vec![PureLetter::new(0, 1, 1), PureLetter::new(1, 2, -1)];
        assert_eq!(
            verify_antirep_words(&rep, &[WordPair::new(w.clone(), w.clone())], None).unwrap(),
            0.0
        );
        assert!(verify_antirep_words(&rep, &[cancellation_pair(&w)], None).unwrap() < 1e-14);
    }
}
