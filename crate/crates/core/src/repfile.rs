//! JSON interchange format for representations and matrices.
//!
//! Complex entries are `[re, im]` pairs and matrices are row-major nested
//! arrays. Floats are written in shortest round-trip form, so parsing an
//! emitted file and emitting it again is byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{c64, CMatrix, C64};
use crate::reps::{PureBraidAntiRep, SemidirectRep};

pub const SCHEMA_VERSION: &str = "1";

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    Semidirect,
    PureAnti,
    Hermitian,
    Matrices,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub schema_version: String,
    pub kind: RepKind,
    pub n: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<JsonMatrix>>,
    /// Braid generator images keyed by index (`"1"`, `"2"`, …).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<BTreeMap<String, JsonMatrix>>,
    /// Pure-braid generator images keyed `"i,j"`.
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<BTreeMap<String, JsonMatrix>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, JsonMatrix>>,
    #[serde(default = "default_k")]
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anti: Option<bool>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

fn default_k() -> i64 {
    1
}

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(m: &JsonMatrix, what: &str) -> Result<CMatrix> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if rows == 0 || cols == 0 {
        return Err(invalid!("{what} is empty"));
    }
    if m.iter().any(|r| r.len() != cols) {
        return Err(invalid!("{what} has ragged rows"));
    }
    let out = CMatrix::from_fn(rows, cols, |r, c| c64(m[r][c][0], m[r][c][1]));
    crate::linalg::ensure_finite(&out, what)?;
    Ok(out)
}

fn square(m: &JsonMatrix, size: usize, what: &str) -> Result<CMatrix> {
    let out = matrix_from_json(m, what)?;
    if out.shape() != (size, size) {
        return Err(invalid!(
            "{what} is {}x{}, expected {size}x{size}",
            out.nrows(),
            out.ncols()
        ));
    }
    Ok(out)
}

impl RepFile {
    fn blank(kind: RepKind, n: usize, dim: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind,
            n,
            dim,
            g: None,
            s: None,
            m: None,
            h: None,
            matrices: None,
            k: 1,
            anti: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_semidirect(rep: &SemidirectRep) -> Self {
        let mut f = Self::blank(RepKind::Semidirect, rep.n(), rep.dim());
        f.g = Some(rep.g().iter().map(matrix_to_json).collect());
        f.s = Some(
            rep.s()
                .iter()
                .map(|(i, m)| (i.to_string(), matrix_to_json(m)))
                .collect(),
        );
        f.h = rep.hermitian().map(matrix_to_json);
        f.k = rep.action_exponent();
        f
    }

    pub fn from_pure(rep: &PureBraidAntiRep) -> Self {
        let mut f = Self::blank(RepKind::PureAnti, rep.n(), rep.dim());
        f.m = Some(
            rep.matrices()
                .iter()
                .map(|((i, j), m)| (format!("{i},{j}"), matrix_to_json(m)))
                .collect(),
        );
        f.anti = Some(rep.is_anti());
        f
    }

    pub fn from_hermitian(h: &CMatrix, block: usize) -> Self {
        let n = h.nrows().checked_div(block).unwrap_or(0);
        let mut f = Self::blank(RepKind::Hermitian, n, block);
        f.h = Some(matrix_to_json(h));
        f
    }

    pub fn from_matrices(n: usize, dim: usize, mats: &BTreeMap<String, CMatrix>) -> Self {
        let mut f = Self::blank(RepKind::Matrices, n, dim);
        f.matrices = Some(
            mats.iter()
                .map(|(k, m)| (k.clone(), matrix_to_json(m)))
                .collect(),
        );
        f
    }

    pub fn with_metadata(mut self, key: &str, value: serde_json::Value) -> Self {
        self.metadata.insert(key.into(), value);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: RepFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {:?}",
                f.schema_version
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("finite values serialize");
        s.push('\n');
        s
    }

    fn expect_kind(&self, kind: RepKind) -> Result<()> {
        if self.kind != kind {
            return Err(invalid!(
                "file holds kind {:?}, expected {:?}",
                self.kind,
                kind
            ));
        }
        Ok(())
    }

    pub fn to_semidirect(&self) -> Result<SemidirectRep> {
        self.expect_kind(RepKind::Semidirect)?;
        let g = self
            .g
            .as_ref()
            .ok_or_else(|| invalid!("semidirect file without g"))?;
        if g.len() != self.n {
            return Err(invalid!("n = {} but {} g matrices", self.n, g.len()));
        }
        let g = g
            .iter()
            .enumerate()
            .map(|(j, m)| square(m, self.dim, &format!("g_{}", j + 1)))
            .collect::<Result<Vec<_>>>()?;
        let mut s = BTreeMap::new();
        for (key, m) in self.s.iter().flatten() {
            let i: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("braid key {key:?} is not an index")))?;
            s.insert(i, square(m, self.dim, &format!("s_{i}"))?);
        }
        let rep = SemidirectRep::new(g, s, self.k)?;
        match &self.h {
            Some(h) => rep.with_hermitian(square(h, self.dim, "H")?),
            None => Ok(rep),
        }
    }

    pub fn to_pure(&self) -> Result<PureBraidAntiRep> {
        self.expect_kind(RepKind::PureAnti)?;
        let mats = self
            .m
            .as_ref()
            .ok_or_else(|| invalid!("pure_anti file without M"))?;
        let mut m = BTreeMap::new();
        for (key, x) in mats {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| Error::Parse(format!("key {key:?} is not \"i,j\"")))?;
            m.insert((i, j), square(x, self.dim, &format!("M_{i}{j}"))?);
        }
        PureBraidAntiRep::new(self.n, m, self.anti.unwrap_or(true))
    }

    pub fn hermitian_matrix(&self) -> Result<CMatrix> {
        let h = self.h.as_ref().ok_or_else(|| invalid!("file has no H"))?;
        let m = matrix_from_json(h, "H")?;
        if !m.is_square() {
            return Err(invalid!("H must be square"));
        }
        Ok(m)
    }

    pub fn named_matrices(&self) -> Result<BTreeMap<String, CMatrix>> {
        self.matrices
            .iter()
            .flatten()
            .map(|(k, m)| Ok((k.clone(), matrix_from_json(m, k)?)))
            .collect()
    }
}

/// Parses `"re,im"` (or a bare real number).
pub fn parse_complex(text: &str) -> Result<C64> {
    let bad = || {
        Error::Parse(format!(
            "{text:?} is not a complex number of the form re,im"
        ))
    };
    let (re, im) = match text.split_once(',') {
        Some((a, b)) => (
            a.trim().parse::<f64>().map_err(|_| bad())?,
            b.trim().parse::<f64>().map_err(|_| bad())?,
        ),
        None => (text.trim().parse::<f64>().map_err(|_| bad())?, 0.0),
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(c64(re, im))
}
