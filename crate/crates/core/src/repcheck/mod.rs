//! Checks of the 9×9 representation of `G`: the cyclic algebra model,
//! the conjugation formula and the printed matrices for `x_0` and `τ`.

pub mod cyclic;

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use cyclic::{AlgebraElement, CyclicAlgebra};

use crate::algebra::{GaloisField, LaurentPoly, Matrix};

/// The bundled matrix fixture.
pub const APPENDIX_JSON: &str = include_str!("../../../../data/matrices/appendix.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepcheckError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed matrix file: {0}")]
    Parse(String),
    #[error("checksum mismatch: file records {recorded}, entries hash to {actual}")]
    Checksum { recorded: String, actual: String },
    #[error("bad shape: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AppendixFile {
    format: u32,
    x0_constant: Vec<Vec<u8>>,
    x0_inverse_y: Vec<Vec<u8>>,
    tau: Vec<Vec<u8>>,
    sha256: String,
}

/// The printed matrices, `x_0 = A + (1/Y) B` and `τ`.
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub x0: Matrix<LaurentPoly>,
    pub tau: Matrix<LaurentPoly>,
    pub sha256: String,
}

fn check_shape(name: &str, m: &[Vec<u8>]) -> Result<(), RepcheckError> {
    if m.len() != 9 || m.iter().any(|r| r.len() != 9) || m.iter().flatten().any(|&v| v > 2) {
        return Err(RepcheckError::Shape(format!("{name} must be 9x9 with entries in 0..3")));
    }
    Ok(())
}

impl RepMatrices {
    pub fn bundled() -> Result<Self, RepcheckError> {
        Self::from_json(APPENDIX_JSON)
    }

    pub fn load(path: &Path) -> Result<Self, RepcheckError> {
        let text = std::fs::read_to_string(path).map_err(|e| RepcheckError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, RepcheckError> {
        let f: AppendixFile = serde_json::from_str(text).map_err(|e| RepcheckError::Parse(e.to_string()))?;
        if f.format != 1 {
            return Err(RepcheckError::Parse(format!("unknown format {}", f.format)));
        }
        for (n, m) in [("x0_constant", &f.x0_constant), ("x0_inverse_y", &f.x0_inverse_y), ("tau", &f.tau)] {
            check_shape(n, m)?;
        }
        let digits: String = [&f.x0_constant, &f.x0_inverse_y, &f.tau].iter().flat_map(|m| m.iter().flatten()).map(|d| char::from(b'0' + d)).collect();
        let actual = hex::encode(Sha256::digest(digits.as_bytes()));
        if actual != f.sha256 {
            return Err(RepcheckError::Checksum { recorded: f.sha256, actual });
        }
        let field = GaloisField::gf27();
        let entry = |r: usize, c: usize| LaurentPoly::from_int_terms(&field, &[(0, f.x0_constant[r][c] as i64), (-1, f.x0_inverse_y[r][c] as i64)]);
        let x0 = Matrix::from_rows((0..9).map(|r| (0..9).map(|c| entry(r, c)).collect()).collect()).map_err(|e| RepcheckError::Shape(e.to_string()))?;
        let tau = Matrix::from_rows(f.tau.iter().map(|row| row.iter().map(|&v| LaurentPoly::from_int_terms(&field, &[(0, v as i64)])).collect()).collect())
            .map_err(|e| RepcheckError::Shape(e.to_string()))?;
        Ok(RepMatrices { x0, tau, sha256: f.sha256 })
    }

    /// `x_i = τ^i x_0 τ^{-i}`; `None` if `τ` is not invertible.
    pub fn generators(&self) -> Option<Vec<Matrix<LaurentPoly>>> {
        let inv = self.tau.inverse().ok()?;
        let mut out = Vec::with_capacity(13);
        let (mut t, mut ti) = (Matrix::identity(9, self.tau.get(0, 0)), Matrix::identity(9, self.tau.get(0, 0)));
        for _ in 0..13 {
            out.push(t.mul(&self.x0).ok()?.mul(&ti).ok()?);
            t = t.mul(&self.tau).ok()?;
            ti = ti.mul(&inv).ok()?;
        }
        Some(out)
    }
}

/// One line of a report. `expected` is `None` for informational checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCheck {
    pub name: String,
    pub expected: Option<bool>,
    pub holds: bool,
    /// First entry where the two sides differ.
    pub first_difference: Option<(usize, usize)>,
}

impl RepCheck {
    fn identity(name: String, expected: Option<bool>, m: &Matrix<LaurentPoly>) -> Self {
        let id = Matrix::identity(9, m.get(0, 0));
        let first_difference = m.first_difference(&id);
        RepCheck { name, expected, holds: first_difference.is_none(), first_difference }
    }

    fn equal(name: String, expected: Option<bool>, a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>) -> Self {
        let first_difference = a.first_difference(b);
        RepCheck { name, expected, holds: first_difference.is_none(), first_difference }
    }

    fn flag(name: String, expected: Option<bool>, holds: bool) -> Self {
        RepCheck { name, expected, holds, first_difference: None }
    }

    pub fn as_expected(&self) -> bool {
        self.expected.is_none_or(|e| e == self.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepcheckReport {
    pub sha256: String,
    pub checks: Vec<RepCheck>,
}

impl RepcheckReport {
    pub fn all_as_expected(&self) -> bool {
        self.checks.iter().all(RepCheck::as_expected)
    }

    pub fn get(&self, name: &str) -> Option<&RepCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn product(ms: &[&Matrix<LaurentPoly>]) -> Matrix<LaurentPoly> {
    let mut acc = Matrix::identity(9, ms[0].get(0, 0));
    for m in ms {
        acc = acc.mul(m).expect("square matrices of equal size");
    }
    acc
}

/// The relator triples `(i, i+1, i+4)` of `G`.
pub fn relator_triples() -> Vec<[usize; 3]> {
    (0..13).map(|i| [i, (i + 1) % 13, (i + 4) % 13]).collect()
}

/// Relator triples rewritten in the generators `a_m = x_{2m}`.
pub fn transported_triples() -> Vec<[usize; 3]> {
    let half = (0..13).find(|&h| (2 * h) % 13 == 1).expect("2 is invertible mod 13");
    relator_triples().iter().map(|t| t.map(|n| (half * n) % 13)).collect()
}

/// Checks on the printed matrices.
pub fn verify_paper_matrices(m: &RepMatrices) -> RepcheckReport {
    let mut checks = vec![
        RepCheck::identity("x0^3 = I".into(), Some(true), &m.x0.pow(3)),
        RepCheck::identity("tau^13 = I".into(), Some(true), &m.tau.pow(13)),
    ];
    match m.generators() {
        Some(x) => {
            for [a, b, c] in relator_triples() {
                checks.push(RepCheck::identity(format!("x{a}*x{b}*x{c} = I"), Some(true), &product(&[&x[a], &x[b], &x[c]])));
            }
            checks.push(RepCheck::identity("x0*x1*x5 = I".into(), Some(false), &product(&[&x[0], &x[1], &x[5]])));
        }
        None => checks.push(RepCheck::flag("tau invertible".into(), Some(true), false)),
    }
    RepcheckReport { sha256: m.sha256.clone(), checks }
}

/// Checks on the algebra side, and the comparison with the printed data.
pub fn verify_algebra(m: &RepMatrices) -> RepcheckReport {
    let a = CyclicAlgebra::new();
    let mut failing = Vec::new();
    for k in 0..13 {
        for i in 0..3 {
            for j in 0..3 {
                if !a.conj_formula_check(i, j, k) {
                    failing.push(format!("({i},{j},{k})"));
                }
            }
        }
    }
    let mut formula = RepCheck::flag("conjugation formula, 117 triples".into(), Some(true), failing.is_empty());
    if !failing.is_empty() {
        formula.name = format!("{} (failing {})", formula.name, failing.join(" "));
    }
    let y = a.scalar(&LaurentPoly::y(a.field()));
    let conj: Vec<Matrix<LaurentPoly>> = (0..13).map(|k| a.conj_matrix(k)).collect();
    let mut checks = vec![
        formula,
        RepCheck::flag("alpha_k^3 = Y for all k".into(), Some(true), (0..13).all(|k| a.pow(&a.alpha(k), 3) == y)),
        RepCheck::flag("conj(alpha_k)^3 = I for all k".into(), Some(true), conj.iter().all(|c| c.pow(3).is_identity())),
        RepCheck::identity("theta conjugation^13 = I".into(), Some(true), &a.theta_conj_matrix().pow(13)),
    ];
    for [p, q, r] in relator_triples() {
        checks.push(RepCheck::identity(format!("conj(alpha_{p})*conj(alpha_{q})*conj(alpha_{r}) = I"), Some(true), &product(&[&conj[p], &conj[q], &conj[r]])));
    }
    // the same relators read through a_m = x_{2m}, with α_m attached to a_m
    for [p, q, r] in transported_triples() {
        checks.push(RepCheck::identity(format!("a-labeling: conj(alpha_{p})*conj(alpha_{q})*conj(alpha_{r}) = I"), None, &product(&[&conj[p], &conj[q], &conj[r]])));
    }
    checks.push(RepCheck::equal("printed x0 = conj(alpha_0)".into(), None, &m.x0, &conj[0]));
    checks.push(RepCheck::equal("printed tau = (z -> theta^-1 z theta)".into(), None, &m.tau, &a.theta_conj_matrix()));
    RepcheckReport { sha256: m.sha256.clone(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads_and_is_checksummed() {
        let m = RepMatrices::bundled().unwrap();
        assert_eq!(m.sha256.len(), 64);
        let tampered = APPENDIX_JSON.replacen("[ 1, 1, 1, 0, 2, 2, 0, 1, 1 ]", "[ 1, 1, 1, 0, 2, 2, 0, 1, 2 ]", 1);
        assert_ne!(tampered, APPENDIX_JSON);
        assert!(matches!(RepMatrices::from_json(&tampered), Err(RepcheckError::Checksum { .. })));
    }

    #[test]
    fn printed_matrices() {
        let r = verify_paper_matrices(&RepMatrices::bundled().unwrap());
        assert!(r.get("tau^13 = I").unwrap().holds);
        assert!(!r.get("x0*x1*x5 = I").unwrap().holds);
        assert_eq!(r.checks.len(), 2 + 13 + 1);
    }

    #[test]
    fn transport_is_derived() {
        let t = transported_triples();
        // x_0 x_1 x_4 = a_0 a_7 a_2
        assert_eq!(t[0], [0, 7, 2]);
        assert!(t.iter().all(|tr| tr.iter().all(|&m| m < 13)));
    }
}
