//! Truncated representations `π_{ζ,±}` on `span{ψ_0, ..., ψ_{N-1}}` and the
//! one-dimensional characters. Both serve as numeric oracles for the
//! symbolic engine.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, FreeElement, Generator};
use crate::matrix::relators;

/// Tolerance for a single-relator residual.
pub const PRIMITIVE_TOL: f64 = 1e-12;
/// Tolerance for composite expressions.
pub const COMPOSITE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("|zeta| = {0} exceeds 1")]
    ZetaOutOfRange(f64),
    #[error("|q0| = {0} is not in (0, 1)")]
    ParameterOutOfRange(f64),
    #[error("truncation dimension {0} is below 4")]
    DimensionTooSmall(usize),
    #[error("|a|^2 + z0^2 - 1 = {0:e} violates the character constraint")]
    CharacterConstraint(f64),
    #[error("unknown sign {0:?}; expected + or -")]
    BadSign(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(RepError::BadSign(other.to_string())),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone)]
pub struct TruncatedRep {
    zeta: Complex64,
    sign: Sign,
    q0: Complex64,
    dim: usize,
    alpha: CMatrix,
    beta: CMatrix,
    z: CMatrix,
}

impl TruncatedRep {
    /// Builds `π_{ζ,±}` with the hard cutoff `α ψ_{N-1} = 0`.
    pub fn new(zeta: Complex64, sign: Sign, q0: Complex64, dim: usize) -> Result<Self, RepError> {
        if zeta.norm() > 1.0 {
            return Err(RepError::ZetaOutOfRange(zeta.norm()));
        }
        let r = q0.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(RepError::ParameterOutOfRange(r));
        }
        if dim < 4 {
            return Err(RepError::DimensionTooSmall(dim));
        }
        let r2 = r * r;
        let alpha = CMatrix::from_fn(dim, dim, |i, j| {
            if i == j + 1 {
                zeta * (1.0 - r2.powi(j as i32 + 1)).sqrt()
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let qb = q0.conj();
        let beta = CMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                zeta * qb.powi(i as i32)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let zval = sign.value() * (1.0 - zeta.norm_sqr()).max(0.0).sqrt();
        let z = CMatrix::identity(dim, dim) * Complex64::new(zval, 0.0);
        Ok(Self {
            zeta,
            sign,
            q0,
            dim,
            alpha,
            beta,
            z,
        })
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn q0(&self) -> Complex64 {
        self.q0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, g: Generator) -> CMatrix {
        match g {
            Generator::Alpha => self.alpha.clone(),
            Generator::AlphaStar => self.alpha.adjoint(),
            Generator::Beta => self.beta.clone(),
            Generator::BetaStar => self.beta.adjoint(),
            Generator::Z => self.z.clone(),
        }
    }

    /// `g ψ_n = c ψ_{n'}` as `Some((n', c))`, or `None` when `g ψ_n = 0`.
    fn act(&self, g: Generator, n: usize) -> Option<(usize, Complex64)> {
        match g {
            Generator::Alpha => (n + 1 < self.dim).then(|| (n + 1, self.alpha[(n + 1, n)])),
            Generator::AlphaStar => (n > 0).then(|| (n - 1, self.alpha[(n, n - 1)].conj())),
            Generator::Beta => Some((n, self.beta[(n, n)])),
            Generator::BetaStar => Some((n, self.beta[(n, n)].conj())),
            Generator::Z => Some((n, self.z[(n, n)])),
        }
    }

    /// Every generator is a weighted shift, so a word is one too; each basis
    /// vector is pushed through the letters right to left.
    pub fn eval_word(&self, w: &[Generator]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut state = Some((j, Complex64::new(1.0, 0.0)));
            for &g in w.iter().rev() {
                state = state.and_then(|(n, c)| self.act(g, n).map(|(m, d)| (m, c * d)));
            }
            if let Some((i, c)) = state {
                out[(i, j)] = c;
            }
        }
        out
    }

    pub fn eval_free(&self, x: &FreeElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            let c = c.eval(self.q0).expect("q0 is nonzero by construction");
            out += self.eval_word(w) * c;
        }
        out
    }

    pub fn eval(&self, x: &AlgebraElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (mono, c) in x.terms() {
            let c = c.eval(self.q0).expect("q0 is nonzero by construction");
            out += self.eval_word(&mono.to_word()) * c;
        }
        out
    }

    /// Residual of every relator on `span{ψ_0..ψ_{N-2}}`, plus the norm of
    /// its action on `ψ_{N-1}`.
    pub fn relation_residuals(&self) -> Vec<RelatorResidual> {
        relators()
            .into_iter()
            .map(|r| {
                let m = self.eval_free(&r.value);
                RelatorResidual {
                    name: r.name,
                    interior: interior_norm(&m, self.dim - 1),
                    boundary: m.column(self.dim - 1).norm(),
                }
            })
            .collect()
    }

    /// Closed form of the `r6` defect on `ψ_{N-1}`: `|ζ|^2 (1 - |q0|^{2N})`.
    pub fn expected_r6_defect(&self) -> f64 {
        self.zeta.norm_sqr() * (1.0 - self.q0.norm_sqr().powi(self.dim as i32))
    }

    pub fn report(&self) -> RepReport {
        let residuals = self.relation_residuals();
        let r6 = residuals.iter().find(|r| r.name == "r6").expect("r6 exists").boundary;
        let expected = self.expected_r6_defect();
        let interior_ok = residuals.iter().all(|r| r.interior <= PRIMITIVE_TOL);
        let defect_ok = (r6 - expected).abs() <= PRIMITIVE_TOL;
        RepReport {
            zeta: [self.zeta.re, self.zeta.im],
            sign: self.sign,
            q: [self.q0.re, self.q0.im],
            dim: self.dim,
            residuals,
            r6_boundary_defect: r6,
            r6_boundary_expected: expected,
            pass: interior_ok && defect_ok,
        }
    }
}

/// Frobenius norm of the first `cols` columns of `m`.
pub fn interior_norm(m: &CMatrix, cols: usize) -> f64 {
    m.columns(0, cols.min(m.ncols())).norm()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelatorResidual {
    pub name: String,
    pub interior: f64,
    pub boundary: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepReport {
    pub zeta: [f64; 2],
    pub sign: Sign,
    pub q: [f64; 2],
    pub dim: usize,
    pub residuals: Vec<RelatorResidual>,
    pub r6_boundary_defect: f64,
    pub r6_boundary_expected: f64,
    pub pass: bool,
}

/// A character `χ` with `χ(β) = 0`, `χ(α) = a`, `χ(z) = z0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacterPoint {
    #[serde(serialize_with = "serialize_complex")]
    pub a: Complex64,
    pub z0: f64,
}

fn serialize_complex<S: serde::Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

impl CharacterPoint {
    pub fn new(a: Complex64, z0: f64) -> Result<Self, RepError> {
        let defect = a.norm_sqr() + z0 * z0 - 1.0;
        if defect.abs() > PRIMITIVE_TOL {
            return Err(RepError::CharacterConstraint(defect));
        }
        Ok(Self { a, z0 })
    }

    pub fn generator(&self, g: Generator) -> Complex64 {
        match g {
            Generator::Alpha => self.a,
            Generator::AlphaStar => self.a.conj(),
            Generator::Beta | Generator::BetaStar => Complex64::new(0.0, 0.0),
            Generator::Z => Complex64::new(self.z0, 0.0),
        }
    }

    fn word(&self, w: &[Generator]) -> Complex64 {
        w.iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &g| acc * self.generator(g))
    }

    pub fn eval_free(&self, x: &FreeElement, q0: Complex64) -> Complex64 {
        x.terms()
            .map(|(w, c)| c.eval(q0).expect("q0 is checked by the caller") * self.word(w))
            .sum()
    }

    pub fn eval(&self, x: &AlgebraElement, q0: Complex64) -> Complex64 {
        x.terms()
            .map(|(m, c)| c.eval(q0).expect("q0 is checked by the caller") * self.word(&m.to_word()))
            .sum()
    }

    /// Largest relator value under `χ`.
    pub fn validate(&self, q0: Complex64) -> CharacterReport {
        let values: Vec<(String, f64)> = relators()
            .into_iter()
            .map(|r| (r.name, self.eval_free(&r.value, q0).norm()))
            .collect();
        let max = values.iter().map(|(_, v)| *v).fold(0.0, f64::max);
        CharacterReport {
            point: *self,
            max_residual: max,
            pass: max <= PRIMITIVE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterReport {
    pub point: CharacterPoint,
    pub max_residual: f64,
    pub pass: bool,
}

/// At `ζ = 0` the representation collapses to `±` the character
/// `(a, z0) = (0, ±1)` times the identity; returns the largest deviation
/// over the given elements.
pub fn zeta_zero_consistency(sign: Sign, q0: Complex64, dim: usize, xs: &[AlgebraElement]) -> Result<f64, RepError> {
    let rep = TruncatedRep::new(Complex64::new(0.0, 0.0), sign, q0, dim)?;
    let chi = CharacterPoint::new(Complex64::new(0.0, 0.0), sign.value())?;
    let id = CMatrix::identity(dim, dim);
    Ok(xs
        .iter()
        .map(|x| (rep.eval(x) - &id * chi.eval(x, q0)).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            TruncatedRep::new(c(1.1, 0.0), Sign::Plus, c(0.5, 0.0), 8),
            Err(RepError::ZetaOutOfRange(_))
        ));
        assert!(matches!(
            TruncatedRep::new(c(0.5, 0.0), Sign::Plus, c(1.0, 0.0), 8),
            Err(RepError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            TruncatedRep::new(c(0.5, 0.0), Sign::Plus, c(0.0, 0.0), 8),
            Err(RepError::ParameterOutOfRange(_))
        ));
        assert_eq!(
            TruncatedRep::new(c(0.5, 0.0), Sign::Plus, c(0.5, 0.0), 3).unwrap_err(),
            RepError::DimensionTooSmall(3)
        );
    }

    #[test]
    fn generator_examples() {
        let zeta = c(0.6, 0.3);
        let rep = TruncatedRep::new(zeta, Sign::Plus, c(0.5, 0.2), 8).unwrap();
        let beta = rep.generator(Generator::Beta);
        assert!((beta[(0, 0)] - zeta).norm() < 1e-15);
        let alpha_star = rep.generator(Generator::AlphaStar);
        assert!(alpha_star.column(0).norm() < 1e-15);
        let z = rep.generator(Generator::Z);
        let expected = (1.0 - zeta.norm_sqr()).sqrt();
        assert!((z - CMatrix::identity(8, 8) * c(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn signs_coincide_on_unit_circle() {
        let zeta = Complex64::from_polar(1.0, 0.4);
        let p = TruncatedRep::new(zeta, Sign::Plus, c(0.3, 0.1), 6).unwrap();
        let m = TruncatedRep::new(zeta, Sign::Minus, c(0.3, 0.1), 6).unwrap();
        for g in Generator::ALL {
            assert_eq!(p.generator(g), m.generator(g));
        }
    }

    #[test]
    fn residuals_and_boundary_defect() {
        let rep = TruncatedRep::new(c(0.7, 0.1), Sign::Plus, c(0.5, 0.0), 32).unwrap();
        let report = rep.report();
        assert!(report.pass, "{report:?}");
        let r7 = report.residuals.iter().find(|r| r.name == "r7").unwrap();
        assert!(r7.boundary < PRIMITIVE_TOL);
    }

    #[test]
    fn character_examples() {
        for (a, z0) in [(c(1.0, 0.0), 0.0), (c(0.0, 0.0), 1.0), (c(0.6, 0.0), 0.8)] {
            let chi = CharacterPoint::new(a, z0).unwrap();
            assert!(chi.validate(c(0.5, 0.0)).pass);
        }
        assert!(matches!(
            CharacterPoint::new(c(0.6, 0.0), 0.6),
            Err(RepError::CharacterConstraint(_))
        ));
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("+".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("minus".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("x".parse::<Sign>().is_err());
    }
}
