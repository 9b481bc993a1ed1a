//! Verification targets shared by the CLI and the acceptance suite.

use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{normalize, q_inverse_morphism, AlgebraElement};
use crate::chains::{boundary_b, chern, operator_b, ChainElement, Proportionality};
use crate::matrix::{build_e, build_e_free, idempotency_certificate, relators, MatrixA, Mode};
use crate::reps::{zeta_zero_consistency, CharacterPoint, Sign, TruncatedRep, COMPOSITE_TOL, PRIMITIVE_TOL};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Idempotent,
    Selfadjoint,
    Prop1,
    Prop2,
    Cycle,
    Rep,
    Characters,
    Isomorphism,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Idempotent,
        Target::Selfadjoint,
        Target::Prop1,
        Target::Prop2,
        Target::Cycle,
        Target::Rep,
        Target::Characters,
        Target::Isomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Idempotent => "idempotent",
            Target::Selfadjoint => "selfadjoint",
            Target::Prop1 => "prop1",
            Target::Prop2 => "prop2",
            Target::Cycle => "cycle",
            Target::Rep => "rep",
            Target::Characters => "characters",
            Target::Isomorphism => "isomorphism",
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown target {s:?}"))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    fn new(target: Target, checks: Vec<Check>, data: Value) -> Self {
        Self {
            target: target.name().to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            data,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.target, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

/// Parameters for the numeric targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams {
    pub zeta: Complex64,
    pub sign: Sign,
    pub q0: Complex64,
    pub dim: usize,
}

impl Default for RepParams {
    fn default() -> Self {
        Self {
            zeta: Complex64::new(0.7, 0.1),
            sign: Sign::Plus,
            q0: Complex64::new(0.5, 0.0),
            dim: 32,
        }
    }
}

pub fn run(target: Target, params: &RepParams) -> Result<Report, String> {
    match target {
        Target::Idempotent => idempotent(),
        Target::Selfadjoint => Ok(selfadjoint()),
        Target::Prop1 => prop1(),
        Target::Prop2 => prop2(),
        Target::Cycle => cycle(),
        Target::Rep => rep(params),
        Target::Characters => characters(params),
        Target::Isomorphism => Ok(isomorphism()),
    }
}

fn idempotent() -> Result<Report, String> {
    let e = MatrixA::e(Mode::Quotient);
    let defect = e
        .mat_mul(&e)
        .and_then(|sq| sq.mat_sub(&e))
        .map_err(|err| err.to_string())?;
    let cert = idempotency_certificate().map_err(|err| err.to_string())?;
    let checks = vec![
        Check::new("e^2 - e = 0 in the quotient", defect.is_zero(), "exact normal forms"),
        Check::new(
            "entries of 4(e^2 - e) lie in the relator span",
            cert.entries_in_span,
            format!("{} nonzero entries", cert.entries.len()),
        ),
        Check::new(
            "relators lie in the span of the entries",
            cert.relators_in_span,
            format!("{} relators", cert.relators.len()),
        ),
    ];
    Ok(Report::new(
        Target::Idempotent,
        checks,
        serde_json::to_value(&cert).expect("serializes"),
    ))
}

fn selfadjoint() -> Report {
    let q = build_e();
    let f = build_e_free();
    let checks = vec![
        Check::new("e* = e in the quotient", q.adjoint() == q, "entrywise"),
        Check::new("e* = e in the free algebra", f.adjoint() == f, "entrywise"),
    ];
    Report::new(Target::Selfadjoint, checks, Value::Null)
}

fn numeric_norm(x: &ChainElement, q0: Complex64) -> Result<f64, String> {
    let s = x.specialize_numeric(q0).map_err(|e| e.to_string())?;
    Ok(s.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max))
}

/// Shared body of the two vanishing statements: `x` vanishes exactly on
/// `|q| = 1` and nowhere else.
fn vanishing_checks(x: &ChainElement, label: &str) -> Result<(Vec<Check>, Value), String> {
    let (k, cofactor) = x.split_unit_circle_factor();
    let unit = x.specialize_unit_circle();
    let mut checks = vec![
        Check::new(
            &format!("{label} is nonzero"),
            !x.is_zero(),
            format!("{} terms", x.len()),
        ),
        Check::new(
            &format!("{label} has the factor (1 - q*qb)"),
            k >= 1,
            format!(
                "(1 - q*qb)^{k} * cofactor with content {}",
                crate::scalars::render_rational(&cofactor.content())
            ),
        ),
        Check::new(
            "cofactor has a coefficient that vanishes nowhere",
            cofactor.has_nowhere_vanishing_coefficient(),
            "single-monomial coefficient present",
        ),
        Check::new(
            "unit-circle specialization is exactly 0",
            unit.is_zero(),
            format!("{} terms", unit.len()),
        ),
    ];
    let mut samples = Vec::new();
    for (q0, expect_zero) in [
        (Complex64::new(0.5, 0.0), false),
        (Complex64::new(0.3, 0.2), false),
        (Complex64::new(0.0, 1.0), true),
        (Complex64::from_polar(1.0, 0.7), true),
    ] {
        let norm = numeric_norm(x, q0)?;
        let pass = if expect_zero {
            norm <= PRIMITIVE_TOL
        } else {
            norm > PRIMITIVE_TOL
        };
        checks.push(Check::new(
            &format!(
                "q0 = {}{:+}i gives {}",
                q0.re,
                q0.im,
                if expect_zero { "0" } else { "nonzero" }
            ),
            pass,
            format!("max |coeff| = {norm:e}"),
        ));
        samples.push(json!({"q": [q0.re, q0.im], "max_abs": norm}));
    }
    let data = json!({
        "power": k,
        "content": crate::scalars::render_rational(&cofactor.content()),
        "rendered": x.render_text(),
        "samples": samples,
    });
    Ok((checks, data))
}

fn prop1() -> Result<Report, String> {
    let ch1 = chern(1).map_err(|e| e.to_string())?;
    let (checks, data) = vanishing_checks(&ch1, "ch1")?;
    Ok(Report::new(Target::Prop1, checks, data))
}

fn prop2() -> Result<Report, String> {
    let ch2 = chern(2).map_err(|e| e.to_string())?;
    let bch2 = boundary_b(&ch2).map_err(|e| e.to_string())?;
    let (checks, data) = vanishing_checks(&bch2, "b ch2")?;
    Ok(Report::new(Target::Prop2, checks, data))
}

/// Constant expected between `b ch_2` and `B ch_1` with the literal
/// `1/(m+1)` in the cyclic average.
pub const EXPECTED_KAPPA: (i64, i64) = (1, 2);

fn cycle() -> Result<Report, String> {
    let err = |e: crate::chains::ChainError| e.to_string();
    let ch0 = chern(0).map_err(err)?;
    let ch1 = chern(1).map_err(err)?;
    let ch2 = chern(2).map_err(err)?;
    let b_ch1 = boundary_b(&ch1).map_err(err)?;
    let b_ch2 = boundary_b(&ch2).map_err(err)?;
    let big_b_ch0 = operator_b(&ch0);
    let big_b_ch1 = operator_b(&ch1);
    let bb1 = boundary_b(&b_ch1).map_err(err)?;
    let bb2 = boundary_b(&b_ch2).map_err(err)?;
    let expected = Scalar::ratio(EXPECTED_KAPPA.0, EXPECTED_KAPPA.1);

    let proportionality = b_ch2.proportionality(&big_b_ch1);
    let (kappa_pass, kappa_text, kappa_value) = match &proportionality {
        Proportionality::Factor(k) => (true, format!("b ch2 = {k} * B ch1"), Value::String(k.to_string())),
        Proportionality::BothZero => (true, "both sides vanish".to_string(), Value::Null),
        Proportionality::NotProportional => (false, "not proportional".to_string(), Value::Null),
    };
    let kappa_matches = matches!(&proportionality, Proportionality::Factor(k) if *k == expected);
    let checks = vec![
        Check::new("b ch1 = 0", b_ch1.is_zero(), format!("{} terms", b_ch1.len())),
        Check::new("B ch0 = 0", big_b_ch0.is_zero(), format!("{} terms", big_b_ch0.len())),
        Check::new("b b ch1 = 0 and b b ch2 = 0", bb1.is_zero() && bb2.is_zero(), "exact"),
        Check::new("b ch2 is a scalar multiple of B ch1", kappa_pass, kappa_text),
    ];
    let data = json!({
        "kappa": kappa_value,
        "kappa_expected": expected.to_string(),
        "kappa_matches_expected": kappa_matches,
        "b_ch2_terms": b_ch2.len(),
        "B_ch1_terms": big_b_ch1.len(),
    });
    Ok(Report::new(Target::Cycle, checks, data))
}

fn rep(params: &RepParams) -> Result<Report, String> {
    let rep = TruncatedRep::new(params.zeta, params.sign, params.q0, params.dim).map_err(|e| e.to_string())?;
    let report = rep.report();
    let worst = report.residuals.iter().map(|r| r.interior).fold(0.0, f64::max);
    let checks = vec![
        Check::new(
            "relator residuals on the interior subspace",
            worst <= PRIMITIVE_TOL,
            format!("max residual {worst:e}"),
        ),
        Check::new(
            "r6 boundary defect matches |zeta|^2 (1 - |q0|^(2N))",
            (report.r6_boundary_defect - report.r6_boundary_expected).abs() <= PRIMITIVE_TOL,
            format!("{:e} vs {:e}", report.r6_boundary_defect, report.r6_boundary_expected),
        ),
    ];
    Ok(Report::new(
        Target::Rep,
        checks,
        serde_json::to_value(&report).expect("serializes"),
    ))
}

fn characters(params: &RepParams) -> Result<Report, String> {
    let points = [
        (Complex64::new(1.0, 0.0), 0.0),
        (Complex64::new(0.0, 0.0), 1.0),
        (Complex64::new(0.6, 0.0), 0.8),
        (Complex64::new(0.0, 0.6), -0.8),
        (Complex64::from_polar(0.28, 1.1), 0.96),
    ];
    let mut checks = Vec::new();
    let mut data = Vec::new();
    for (a, z0) in points {
        let chi = CharacterPoint::new(a, z0).map_err(|e| e.to_string())?;
        let r = chi.validate(params.q0);
        checks.push(Check::new(
            &format!("character a = {}{:+}i, z0 = {}", a.re, a.im, z0),
            r.pass,
            format!("max relator value {:e}", r.max_residual),
        ));
        data.push(serde_json::to_value(&r).expect("serializes"));
    }
    let probes: Vec<AlgebraElement> = relators()
        .iter()
        .map(|r| r.value.clone())
        .chain(build_e_free().entries().map(|(_, x)| x.clone()))
        .map(|x| normalize(&x))
        .collect();
    for sign in [Sign::Plus, Sign::Minus] {
        let dev = zeta_zero_consistency(sign, params.q0, 8, &probes).map_err(|e| e.to_string())?;
        checks.push(Check::new(
            &format!("zeta = 0, sign {sign}: representation equals the character (0, {sign}1)"),
            dev <= COMPOSITE_TOL,
            format!("max deviation {dev:e}"),
        ));
    }
    Ok(Report::new(Target::Characters, checks, Value::Array(data)))
}

fn isomorphism() -> Report {
    let checks = relators()
        .into_iter()
        .map(|r| {
            let image = q_inverse_morphism(&r.value);
            Check::new(
                &format!("image of {}", r.name),
                image.is_zero(),
                format!("normal form {image}"),
            )
        })
        .collect();
    Report::new(Target::Isomorphism, checks, Value::Null)
}
