//! Words in the braid group `B_n`, the free group `F_n`, and `F_n ⋊ B_n`.
//!
//! Words are symbolic: the only normalization is free reduction (adjacent
//! letters with the same generator are merged, zero exponents dropped).
//! Indices are 1-based throughout, matching the usual `σ_1, …, σ_{n−1}` and
//! `x_1, …, x_n` labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `σ_index^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    pub index: usize,
    pub exp: i64,
}

/// `x_index^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeLetter {
    pub index: usize,
    pub exp: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Token {
    Free(FreeLetter),
    Braid(BraidLetter),
}

/// Appends `(index, exp)` to a letter list, merging with the last letter.
fn push_reduced<L: Copy>(
    out: &mut Vec<L>,
    letter: L,
    key: impl Fn(&L) -> (usize, i64),
    make: impl Fn(usize, i64) -> L,
) {
    let (idx, exp) = key(&letter);
    if exp == 0 {
        return;
    }
    if let Some(last) = out.last() {
        let (li, le) = key(last);
        if li == idx {
            out.pop();
            if le + exp != 0 {
                out.push(make(idx, le + exp));
            }
            return;
        }
    }
    out.push(letter);
}

fn check_index(what: &str, index: usize, max: usize) -> Result<()> {
    if index == 0 || index > max {
        Err(Error::IndexOutOfRange(format!(
            "{what} index {index} outside 1..={max}"
        )))
    } else {
        Ok(())
    }
}

/// A word in `σ_1, …, σ_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn empty(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: usize, letters: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut w = Self::empty(strands);
        for (index, exp) in letters {
            w.push(index, exp)?;
        }
        Ok(w)
    }

    pub fn generator(strands: usize, index: usize) -> Result<Self> {
        Self::new(strands, [(index, 1)])
    }

    pub fn push(&mut self, index: usize, exp: i64) -> Result<()> {
        check_index("braid", index, self.strands.saturating_sub(1))?;
        push_reduced(
            &mut self.letters,
            BraidLetter { index, exp },
            |l| (l.index, l.exp),
            |index, exp| BraidLetter { index, exp },
        );
        Ok(())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(invalid!(
                "cannot multiply words on {} and {} strands",
                self.strands,
                other.strands
            ));
        }
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.index, l.exp)?;
        }
        Ok(w)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| BraidLetter {
                    index: l.index,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn to_mixed(&self) -> MixedWord {
        MixedWord {
            n: self.strands,
            tokens: self.letters.iter().copied().map(Token::Braid).collect(),
        }
    }

    /// Parses `"s1 s2^-1"`; free letters are rejected.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mixed = MixedWord::parse(strands, text)?;
        let mut w = Self::empty(strands);
        for t in mixed.tokens {
            match t {
                Token::Braid(b) => w.push(b.index, b.exp)?,
                Token::Free(_) => {
                    return Err(Error::Parse(format!("free letter in braid word {text:?}")))
                }
            }
        }
        Ok(w)
    }
}

/// A freely reduced word in `x_1, …, x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<FreeLetter>,
}

impl FreeWord {
    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn new(rank: usize, letters: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut w = Self::empty(rank);
        for (index, exp) in letters {
            w.push(index, exp)?;
        }
        Ok(w)
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        Self::new(rank, [(index, 1)])
    }

    pub fn push(&mut self, index: usize, exp: i64) -> Result<()> {
        check_index("free", index, self.rank)?;
        push_reduced(
            &mut self.letters,
            FreeLetter { index, exp },
            |l| (l.index, l.exp),
            |index, exp| FreeLetter { index, exp },
        );
        Ok(())
    }

    fn push_word(&mut self, other: &FreeWord) {
        for l in &other.letters {
            push_reduced(
                &mut self.letters,
                *l,
                |l| (l.index, l.exp),
                |index, exp| FreeLetter { index, exp },
            );
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| FreeLetter {
                    index: l.index,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn to_mixed(&self) -> MixedWord {
        MixedWord {
            n: self.rank,
            tokens: self.letters.iter().copied().map(Token::Free).collect(),
        }
    }

    /// Substitutes `image(j)` for each generator `x_j` and reduces.
    fn substitute(&self, image: impl Fn(usize) -> FreeWord) -> FreeWord {
        let mut out = FreeWord::empty(self.rank);
        for l in &self.letters {
            let img = image(l.index);
            let piece = if l.exp > 0 { img } else { img.inverse() };
            for _ in 0..l.exp.unsigned_abs() {
                out.push_word(&piece);
            }
        }
        out
    }
}

/// A word in `F_n ⋊ B_n`: free and braid letters interleaved.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedWord {
    n: usize,
    tokens: Vec<Token>,
}

impl MixedWord {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            tokens: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn push(&mut self, token: Token) -> Result<()> {
        match token {
            Token::Free(l) => check_index("free", l.index, self.n)?,
            Token::Braid(l) => check_index("braid", l.index, self.n.saturating_sub(1))?,
        }
        let key = |t: &Token| match *t {
            Token::Free(l) => (2 * l.index, l.exp),
            Token::Braid(l) => (2 * l.index + 1, l.exp),
        };
        let make = move |k: usize, exp: i64| {
            if k.is_multiple_of(2) {
                Token::Free(FreeLetter { index: k / 2, exp })
            } else {
                Token::Braid(BraidLetter { index: k / 2, exp })
            }
        };
        push_reduced(&mut self.tokens, token, key, make);
        Ok(())
    }

    pub fn free(&mut self, index: usize, exp: i64) -> Result<&mut Self> {
        self.push(Token::Free(FreeLetter { index, exp }))?;
        Ok(self)
    }

    pub fn braid(&mut self, index: usize, exp: i64) -> Result<&mut Self> {
        self.push(Token::Braid(BraidLetter { index, exp }))?;
        Ok(self)
    }

    pub fn concat(&self, other: &MixedWord) -> Result<MixedWord> {
        if self.n != other.n {
            return Err(invalid!(
                "cannot multiply words with n = {} and n = {}",
                self.n,
                other.n
            ));
        }
        let mut w = self.clone();
        for t in &other.tokens {
            w.push(*t)?;
        }
        Ok(w)
    }

    pub fn inverse(&self) -> MixedWord {
        MixedWord {
            n: self.n,
            tokens: self
                .tokens
                .iter()
                .rev()
                .map(|t| match *t {
                    Token::Free(l) => Token::Free(FreeLetter { exp: -l.exp, ..l }),
                    Token::Braid(l) => Token::Braid(BraidLetter { exp: -l.exp, ..l }),
                })
                .collect(),
        }
    }

    /// Parses whitespace-separated tokens `s<i>[^e]` and `x<j>[^e]`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut w = Self::empty(n);
        for raw in text.split_whitespace() {
            let (head, exp) = match raw.split_once('^') {
                Some((h, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in token {raw:?}")))?;
                    (h, e)
                }
                None => (raw, 1),
            };
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in token {raw:?}")));
            }
            let mut chars = head.chars();
            let kind = chars.next();
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in token {raw:?}")))?;
            let token = match kind {
                Some('s') => Token::Braid(BraidLetter { index, exp }),
                Some('x') => Token::Free(FreeLetter { index, exp }),
                _ => {
                    return Err(Error::Parse(format!(
                        "token {raw:?} must start with 's' or 'x'"
                    )))
                }
            };
            w.push(token).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(w)
    }
}

fn fmt_letter(f: &mut fmt::Formatter<'_>, prefix: char, index: usize, exp: i64) -> fmt::Result {
    if exp == 1 {
        write!(f, "{prefix}{index}")
    } else {
        write!(f, "{prefix}{index}^{exp}")
    }
}

fn fmt_tokens(f: &mut fmt::Formatter<'_>, tokens: impl Iterator<Item = Token>) -> fmt::Result {
    let mut first = true;
    for t in tokens {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        match t {
            Token::Free(l) => fmt_letter(f, 'x', l.index, l.exp)?,
            Token::Braid(l) => fmt_letter(f, 's', l.index, l.exp)?,
        }
    }
    Ok(())
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tokens(f, self.tokens.iter().copied())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tokens(f, self.letters.iter().copied().map(Token::Braid))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tokens(f, self.letters.iter().copied().map(Token::Free))
    }
}

/// Image of `x_j` under `σ_i^{sign}` for the exponent-`k` action.
fn generator_image(rank: usize, k: i64, i: usize, sign: i64, j: usize) -> FreeWord {
    let word = |letters: &[(usize, i64)]| {
        FreeWord::new(rank, letters.iter().copied()).expect("indices checked")
    };
    match (sign > 0, j) {
        (true, j) if j == i => word(&[(i + 1, 1)]),
        (true, j) if j == i + 1 => word(&[(i + 1, -k), (i, 1), (i + 1, k)]),
        (false, j) if j == i => word(&[(i, k), (i + 1, 1), (i, -k)]),
        (false, j) if j == i + 1 => word(&[(i, 1)]),
        (_, j) => word(&[(j, 1)]),
    }
}

/// Exponent-`k` action of `σ_i^{sign}` on a free word
/// (`x_i ↦ x_{i+1}`, `x_{i+1} ↦ x_{i+1}^{-k} x_i x_{i+1}^k`).
pub fn wada_act(k: i64, i: usize, sign: i64, w: &FreeWord) -> Result<FreeWord> {
    if k == 0 {
        return Err(invalid!("action exponent k must be nonzero"));
    }
    if sign != 1 && sign != -1 {
        return Err(invalid!("sign must be +1 or -1, got {sign}"));
    }
    check_index("braid", i, w.rank.saturating_sub(1))?;
    Ok(w.substitute(|j| generator_image(w.rank, k, i, sign, j)))
}

/// Artin action of `σ_i^{sign}` on a free word.
pub fn artin_act(i: usize, sign: i64, w: &FreeWord) -> Result<FreeWord> {
    wada_act(1, i, sign, w)
}

/// Action of a whole braid word (rightmost letter acts first).
pub fn act_by_word(k: i64, b: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    if b.strands != w.rank {
        return Err(invalid!(
            "braid on {} strands acting on F_{}",
            b.strands,
            w.rank
        ));
    }
    let mut out = w.clone();
    for l in b.letters.iter().rev() {
        let sign = l.exp.signum();
        for _ in 0..l.exp.unsigned_abs() {
            out = wada_act(k, l.index, sign, &out)?;
        }
    }
    Ok(out)
}

/// `σ_i ⋯ σ_{j−2} σ_{j−1}² (σ_i ⋯ σ_{j−2})^{-1}` in `B_n`.
pub fn pure_braid_generator(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    pure_word(i, j, n, 1)
}

/// The same shape built from `σ_m^{-1}`:
/// `σ_i^{-1} ⋯ σ_{j−2}^{-1} σ_{j−1}^{-2} σ_{j−2} ⋯ σ_i`.
pub fn tilde_pure_braid_generator(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    pure_word(i, j, n, -1)
}

fn pure_word(i: usize, j: usize, n: usize, sign: i64) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOutOfRange(format!(
            "pure generator needs 1 <= i < j <= n, got i = {i}, j = {j}, n = {n}"
        )));
    }
    let conj: Vec<(usize, i64)> = (i..j - 1).map(|m| (m, sign)).collect();
    let mut w = BraidWord::new(n, conj.iter().copied())?;
    w.push(j - 1, 2 * sign)?;
    for &(m, e) in conj.iter().rev() {
        w.push(m, -e)?;
    }
    Ok(w)
}

/// Image of the word in the symmetric group: entry `p−1` is the final
/// position of the strand starting at `p`.
pub fn permutation_of(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (1..=w.strands).collect();
    for l in &w.letters {
        if l.exp % 2 != 0 {
            at.swap(l.index - 1, l.index);
        }
    }
    let mut perm = vec![0; w.strands];
    for (pos, &strand) in at.iter().enumerate() {
        perm[strand - 1] = pos + 1;
    }
    perm
}

pub fn is_pure(w: &BraidWord) -> bool {
    permutation_of(w)
        .iter()
        .enumerate()
        .all(|(p, &q)| q == p + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(rank: usize, letters: &[(usize, i64)]) -> FreeWord {
        FreeWord::new(rank, letters.iter().copied()).unwrap()
    }

    #[test]
    fn artin_examples() {
        let x1 = FreeWord::generator(2, 1).unwrap();
        let x2 = FreeWord::generator(2, 2).unwrap();
        assert_eq!(artin_act(1, 1, &x1).unwrap(), x2);
        assert_eq!(
            artin_act(1, 1, &x2).unwrap(),
            fw(2, &[(2, -1), (1, 1), (2, 1)])
        );
        let x5 = FreeWord::generator(5, 5).unwrap();
        assert_eq!(artin_act(2, 1, &x5).unwrap(), x5);
        let back = artin_act(1, -1, &artin_act(1, 1, &x2).unwrap()).unwrap();
        assert_eq!(back, x2);
        assert!(matches!(
            artin_act(2, 1, &x1),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn wada_examples() {
        let x1 = FreeWord::generator(2, 1).unwrap();
        let x2 = FreeWord::generator(2, 2).unwrap();
        assert_eq!(
            wada_act(2, 1, 1, &x2).unwrap(),
            fw(2, &[(2, -2), (1, 1), (2, 2)])
        );
        assert_eq!(wada_act(5, 1, 1, &x1).unwrap(), x2);
        assert!(wada_act(0, 1, 1, &x1).is_err());
    }

    #[test]
    fn reduction_merges_and_cancels() {
        assert!(fw(2, &[(1, 2), (1, -2)]).is_empty());
        assert_eq!(fw(3, &[(1, 1), (2, 1), (2, -1), (1, 1)]), fw(3, &[(1, 2)]));
    }

    #[test]
    fn pure_generators() {
        assert_eq!(pure_braid_generator(1, 2, 2).unwrap().to_string(), "s1^2");
        assert_eq!(
            pure_braid_generator(1, 3, 3).unwrap().to_string(),
            "s1 s2^2 s1^-1"
        );
        assert_eq!(
            tilde_pure_braid_generator(1, 2, 2).unwrap().to_string(),
            "s1^-2"
        );
        assert_eq!(
            tilde_pure_braid_generator(1, 3, 3).unwrap().to_string(),
            "s1^-1 s2^-2 s1"
        );
        for n in 2..=6 {
            for i in 1..n {
                for j in i + 1..=n {
                    assert!(is_pure(&pure_braid_generator(i, j, n).unwrap()));
                    assert!(is_pure(&tilde_pure_braid_generator(i, j, n).unwrap()));
                }
            }
        }
        assert!(pure_braid_generator(2, 2, 3).is_err());
        assert!(pure_braid_generator(1, 4, 3).is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(
            permutation_of(&BraidWord::generator(2, 1).unwrap()),
            vec![2, 1]
        );
        assert!(is_pure(&BraidWord::new(2, [(1, 2)]).unwrap()));
        let w = BraidWord::new(3, [(1, 1), (2, 1)]).unwrap();
        assert_eq!(permutation_of(&w), vec![3, 1, 2]);
    }

    #[test]
    fn inversion() {
        let w = BraidWord::new(3, [(1, 1), (2, 1)]).unwrap();
        assert_eq!(w.inverse().to_string(), "s2^-1 s1^-1");
        assert_eq!(w.inverse().inverse(), w);
        assert!(BraidWord::empty(3).inverse().is_empty());
        let m = MixedWord::parse(3, "s1 x2^3 s2^-1").unwrap();
        assert_eq!(m.inverse().to_string(), "s2 x2^-3 s1^-1");
        assert!(m.concat(&m.inverse()).unwrap().is_empty());
    }

    #[test]
    fn text_round_trip() {
        let m = MixedWord::parse(3, "s1 s2^-1 x3").unwrap();
        assert_eq!(m.to_string(), "s1 s2^-1 x3");
        assert_eq!(MixedWord::parse(3, &m.to_string()).unwrap(), m);
        assert!(matches!(MixedWord::parse(3, "y1"), Err(Error::Parse(_))));
        assert!(matches!(MixedWord::parse(3, "s3"), Err(Error::Parse(_))));
        assert!(matches!(MixedWord::parse(3, "x1^0"), Err(Error::Parse(_))));
        assert!(BraidWord::parse(3, "s1 x1").is_err());
    }

    #[test]
    fn act_by_word_is_left_action() {
        let n = 3;
        let x1 = FreeWord::generator(n, 1).unwrap();
        let ab = BraidWord::new(n, [(1, 1), (2, 1)]).unwrap();
        let via_word = act_by_word(1, &ab, &x1).unwrap();
        let stepwise = artin_act(1, 1, &artin_act(2, 1, &x1).unwrap()).unwrap();
        assert_eq!(via_word, stepwise);
    }
}
