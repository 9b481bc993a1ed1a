//! Chains in `A ⊗ Ā^{⊗m}` and the operators of the reduced (b, B) bicomplex.
//!
//! `Ā = A / C·I` is represented by the zero-scalar-part representative, so
//! slots `1..=m` never hold the identity monomial and chain equality is
//! structural.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{render_coefficient_term, AlgebraElement, NormalMonomial};
use crate::matrix::{build_e, e_minus_half, Mat4};
use crate::scalars::{Scalar, ScalarError, UnitCircleScalar};

/// Largest `n` accepted by [`chern`] unless a bound is passed explicitly.
pub const DEFAULT_CHERN_BOUND: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("the boundary b is not defined on degree-0 chains")]
    DegreeZero,
    #[error("ch_{n} exceeds the configured bound {bound}")]
    DegreeBound { n: usize, bound: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("partial trace needs at least one factor")]
    NoFactors,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficient types a chain can carry.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, rhs: &Self);
    fn render(&self) -> String;
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for UnitCircleScalar {
    fn is_zero(&self) -> bool {
        UnitCircleScalar::is_zero(self)
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Complex64 {
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn render(&self) -> String {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{:?}{}{:?}i", self.re, sign, self.im.abs())
    }
}

pub type Slots = Vec<NormalMonomial>;

#[derive(Clone, PartialEq)]
pub struct Chain<C> {
    degree: usize,
    terms: BTreeMap<Slots, C>,
}

pub type ChainElement = Chain<Scalar>;

#[derive(Debug, Serialize)]
struct ChainJson {
    degree: usize,
    terms: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
struct TermJson {
    slots: Vec<String>,
    coeff: String,
}

impl<C: Coeff> Chain<C> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slots, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[NormalMonomial]) -> Option<&C> {
        self.terms.get(slots)
    }

    /// Adds `c` at `slots`. Terms with the identity in a reduced slot vanish.
    pub fn add_term(&mut self, slots: Slots, c: C) {
        assert_eq!(slots.len(), self.degree + 1, "slot count must match the degree");
        if c.is_zero() || slots[1..].iter().any(NormalMonomial::is_identity) {
            return;
        }
        match self.terms.entry(slots) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().accumulate(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (s, c) in other.terms {
            self.add_term(s, c);
        }
        self
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Chain<D> {
        let mut out = Chain::zero(self.degree);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c));
        }
        out
    }

    /// Canonical JSON: `{degree, terms: [{slots, coeff}]}` sorted by slots.
    pub fn to_json(&self) -> String {
        let doc = ChainJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson {
                    slots: s.iter().map(ToString::to_string).collect(),
                    coeff: c.render(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("chain serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("round trip")
    }
}

fn render_slots(s: &[NormalMonomial]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊗ ")
}

impl<C: Coeff> fmt::Debug for Chain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Chain(degree {}) {{", self.degree)?;
        for (s, c) in &self.terms {
            writeln!(f, "  ({}) {}", c.render(), render_slots(s))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Chain<UnitCircleScalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_generic(self, f)
    }
}

impl fmt::Display for Chain<Complex64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_generic(self, f)
    }
}

fn render_generic<C: Coeff>(x: &Chain<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_zero() {
        return f.write_str("0");
    }
    let lines: Vec<String> = x
        .terms
        .iter()
        .map(|(s, c)| format!("({}) {}", c.render(), render_slots(s)))
        .collect();
    f.write_str(&lines.join("\n"))
}

/// Result of comparing two chains up to a scalar factor.
#[derive(Debug, Clone, PartialEq)]
pub enum Proportionality {
    BothZero,
    /// `lhs = factor * rhs`.
    Factor(Scalar),
    NotProportional,
}

impl ChainElement {
    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ChainError> {
        if self.degree != rhs.degree {
            return Err(ChainError::DegreeMismatch(self.degree, rhs.degree));
        }
        Ok(self.clone().merge(rhs.clone()))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ChainError> {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    /// Concatenates slot tuples; `rhs`'s slot 0 becomes a reduced slot.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Chain::zero(self.degree + rhs.degree + 1);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                let mut s = s1.clone();
                s.extend_from_slice(s2);
                out.add_term(s, c1 * c2);
            }
        }
        out
    }

    pub fn specialize_unit_circle(&self) -> Chain<UnitCircleScalar> {
        self.map_coeffs(Scalar::unit_circle)
    }

    pub fn specialize_numeric(&self, q0: Complex64) -> Result<Chain<Complex64>, ChainError> {
        let mut out = Chain::zero(self.degree);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c.eval(q0)?);
        }
        Ok(out)
    }

    /// Positive rational `g` with every coefficient in `g * Z[q^±, qb^±]`
    /// and no larger such `g`.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            for (_, r) in c.terms() {
                num = num.gcd(r.numer());
                den = den.lcm(r.denom());
            }
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// `(k, cofactor)` with `self = (1 - q*qb)^k * cofactor` and `k` maximal.
    pub fn split_unit_circle_factor(&self) -> (u32, ChainElement) {
        let k = self
            .terms
            .values()
            .map(|c| c.split_unit_circle_factor().0)
            .min()
            .unwrap_or(0);
        let divisor = (Scalar::one() - Scalar::qqb()).pow(k);
        let cofactor = self.map_coeffs(|c| c.checked_div(&divisor).expect("k is a common factor"));
        (k, cofactor)
    }

    /// True when some coefficient is a single monomial `c q^a qb^b`, which
    /// vanishes at no nonzero `q`.
    pub fn has_nowhere_vanishing_coefficient(&self) -> bool {
        self.terms.values().any(Scalar::is_unit)
    }

    /// Compares `self` with `factor * rhs`.
    pub fn proportionality(&self, rhs: &ChainElement) -> Proportionality {
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => return Proportionality::BothZero,
            (false, false) => {}
            _ => return Proportionality::NotProportional,
        }
        if self.degree != rhs.degree {
            return Proportionality::NotProportional;
        }
        let (slots, c) = self.terms.iter().next().expect("nonzero");
        let Some(d) = rhs.terms.get(slots) else {
            return Proportionality::NotProportional;
        };
        let Some(factor) = c.checked_div(d) else {
            return Proportionality::NotProportional;
        };
        if &rhs.scale(&factor) == self {
            Proportionality::Factor(factor)
        } else {
            Proportionality::NotProportional
        }
    }

    /// Renders with the content and the `(1 - q*qb)` power pulled out.
    pub fn render_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (k, cofactor) = self.split_unit_circle_factor();
        let content = cofactor.content();
        let cofactor = cofactor.scale(&Scalar::constant(content.recip()));
        let mut prefix = Vec::new();
        if !content.is_one() {
            prefix.push(crate::scalars::render_rational(&content));
        }
        match k {
            0 => {}
            1 => prefix.push("(1 - q*qb)".to_string()),
            _ => prefix.push(format!("(1 - q*qb)^{k}")),
        }
        let mut out = String::new();
        let indent = if prefix.is_empty() { "" } else { "  " };
        if !prefix.is_empty() {
            out.push_str(&prefix.join("*"));
            out.push_str(" * {\n");
        }
        for (i, (s, c)) in cofactor.terms.iter().enumerate() {
            let (neg, body) = render_coefficient_term(c, Some(render_slots(s)));
            let sign = match (i, neg) {
                (0, false) => "  ",
                (_, false) => "+ ",
                (_, true) => "- ",
            };
            out.push_str(indent);
            out.push_str(sign);
            out.push_str(&body);
            out.push('\n');
        }
        if !prefix.is_empty() {
            out.push_str("}\n");
        }
        out.trim_end().to_string()
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

type Sparse = Vec<(NormalMonomial, Scalar)>;

fn sparse(x: &AlgebraElement, reduced: bool) -> Sparse {
    x.terms()
        .filter(|(m, _)| !(reduced && m.is_identity()))
        .map(|(m, c)| (*m, c.clone()))
        .collect()
}

/// Multilinear expansion of `factors[0] ⊗ ... ⊗ factors[m]` into `out`,
/// scaled by `scale`. Slots `>= 1` are projected to `Ā`.
fn expand_into(out: &mut ChainElement, factors: &[&Sparse], scale: &Scalar) {
    fn rec(out: &mut ChainElement, factors: &[&Sparse], slots: &mut Slots, acc: &Scalar) {
        let depth = slots.len();
        if depth == factors.len() {
            out.add_term(slots.clone(), acc.clone());
            return;
        }
        for (m, c) in factors[depth] {
            slots.push(*m);
            rec(out, factors, slots, &(acc * c));
            slots.pop();
        }
    }
    let mut slots = Vec::with_capacity(factors.len());
    rec(out, factors, &mut slots, scale);
}

/// `factors[0] ⊗ [factors[1]] ⊗ ... ⊗ [factors[m]]` with the identity part of
/// every factor after the first removed.
pub fn tensor_project(factors: &[AlgebraElement]) -> Result<ChainElement, ChainError> {
    if factors.is_empty() {
        return Err(ChainError::NoFactors);
    }
    let sp: Vec<Sparse> = factors.iter().enumerate().map(|(i, f)| sparse(f, i > 0)).collect();
    let refs: Vec<&Sparse> = sp.iter().collect();
    let mut out = Chain::zero(factors.len() - 1);
    expand_into(&mut out, &refs, &Scalar::one());
    Ok(out)
}

/// `<F^0 ⊗ ... ⊗ F^m>`: contraction of matrix indices around the cycle
/// `F^0_{i0 i1} ⊗ F^1_{i1 i2} ⊗ ... ⊗ F^m_{im i0}`. Index paths are
/// distributed over the current rayon pool.
pub fn partial_trace(factors: &[Mat4<AlgebraElement>]) -> Result<ChainElement, ChainError> {
    if factors.is_empty() {
        return Err(ChainError::NoFactors);
    }
    let degree = factors.len() - 1;
    // sp[s][i][j]: entry (i, j) of factor s, projected when s >= 1
    let sp: Vec<Vec<Vec<Sparse>>> = factors
        .iter()
        .enumerate()
        .map(|(s, f)| {
            (0..4)
                .map(|i| (0..4).map(|j| sparse(f.get(i, j), s > 0)).collect())
                .collect()
        })
        .collect();

    fn walk<'a>(
        sp: &'a [Vec<Vec<Sparse>>],
        start: usize,
        current: usize,
        path: &mut Vec<&'a Sparse>,
        out: &mut ChainElement,
    ) {
        let s = path.len();
        if s + 1 == sp.len() {
            let last = &sp[s][current][start];
            if !last.is_empty() {
                path.push(last);
                expand_into(out, path, &Scalar::one());
                path.pop();
            }
            return;
        }
        for next in 0..4 {
            let entry = &sp[s][current][next];
            if entry.is_empty() {
                continue;
            }
            path.push(entry);
            walk(sp, start, next, path, out);
            path.pop();
        }
    }

    let pieces: Vec<ChainElement> = (0..4usize)
        .into_par_iter()
        .map(|start| {
            let mut out = Chain::zero(degree);
            let mut path = Vec::with_capacity(degree + 1);
            walk(&sp, start, start, &mut path, &mut out);
            out
        })
        .collect();
    Ok(pieces.into_iter().fold(Chain::zero(degree), Chain::merge))
}

/// `ch_n(e) = <(e - 1/2) ⊗ e^{⊗2n}>` for `n <= bound`.
pub fn chern_bounded(n: usize, bound: usize) -> Result<ChainElement, ChainError> {
    if n > bound {
        return Err(ChainError::DegreeBound { n, bound });
    }
    let e = build_e();
    let mut factors = vec![e_minus_half()];
    factors.extend(std::iter::repeat_n(e, 2 * n));
    partial_trace(&factors)
}

pub fn chern(n: usize) -> Result<ChainElement, ChainError> {
    chern_bounded(n, DEFAULT_CHERN_BOUND)
}

#[derive(Default)]
struct ProductCache {
    map: HashMap<(NormalMonomial, NormalMonomial), Sparse>,
}

impl ProductCache {
    fn get(&mut self, a: NormalMonomial, b: NormalMonomial) -> &Sparse {
        self.map.entry((a, b)).or_insert_with(|| {
            let p = AlgebraElement::monomial(a, Scalar::one()).mul(&AlgebraElement::monomial(b, Scalar::one()));
            sparse(&p, false)
        })
    }
}

/// Hochschild boundary
/// `b(a0 ⊗ ... ⊗ am) = sum_{j<m} (-1)^j (... ⊗ a_j a_{j+1} ⊗ ...) + (-1)^m (am a0 ⊗ a1 ⊗ ... ⊗ a_{m-1})`.
pub fn boundary_b(x: &ChainElement) -> Result<ChainElement, ChainError> {
    let m = x.degree;
    if m == 0 {
        return Err(ChainError::DegreeZero);
    }
    let mut cache = ProductCache::default();
    let mut out = Chain::zero(m - 1);
    for (slots, c) in &x.terms {
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let coeff = c * &Scalar::from_int(sign);
            let (product, rest): (Sparse, Vec<Sparse>) = if j < m {
                let p = cache.get(slots[j], slots[j + 1]).clone();
                let mut rest: Vec<Sparse> = Vec::with_capacity(m);
                for (i, mono) in slots.iter().enumerate() {
                    if i == j || i == j + 1 {
                        continue;
                    }
                    rest.push(vec![(*mono, Scalar::one())]);
                }
                (p, rest)
            } else {
                let p = cache.get(slots[m], slots[0]).clone();
                let rest = slots[1..m].iter().map(|mono| vec![(*mono, Scalar::one())]).collect();
                (p, rest)
            };
            let insert_at = if j < m { j } else { 0 };
            let mut factors: Vec<Sparse> = rest;
            let product = if insert_at > 0 {
                product.into_iter().filter(|(mono, _)| !mono.is_identity()).collect()
            } else {
                product
            };
            factors.insert(insert_at, product);
            let refs: Vec<&Sparse> = factors.iter().collect();
            expand_into(&mut out, &refs, &coeff);
        }
    }
    Ok(out)
}

/// Signed cyclic average `1/(m+1) sum_j (-1)^{mj} a_j ⊗ ... ⊗ a_{j-1}`.
pub fn cyclic_a(x: &ChainElement) -> ChainElement {
    let m = x.degree;
    let weight = Scalar::ratio(1, m as i64 + 1);
    let mut out = Chain::zero(m);
    for (slots, c) in &x.terms {
        for j in 0..=m {
            let sign = if (m * j).is_multiple_of(2) { 1 } else { -1 };
            let mut rotated = Vec::with_capacity(m + 1);
            rotated.extend_from_slice(&slots[j..]);
            rotated.extend_from_slice(&slots[..j]);
            out.add_term(rotated, c * &weight.scale(&BigRational::from_integer(sign.into())));
        }
    }
    out
}

/// `B0(a0 ⊗ ... ⊗ am) = I ⊗ a0 ⊗ ... ⊗ am`.
pub fn operator_b0(x: &ChainElement) -> ChainElement {
    let mut out = Chain::zero(x.degree + 1);
    for (slots, c) in &x.terms {
        let mut s = Vec::with_capacity(slots.len() + 1);
        s.push(NormalMonomial::IDENTITY);
        s.extend_from_slice(slots);
        out.add_term(s, c.clone());
    }
    out
}

/// Connes boundary `B = B0 A`.
pub fn operator_b(x: &ChainElement) -> ChainElement {
    operator_b0(&cyclic_a(x))
}

/// Specialization of chain coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Specialization {
    UnitCircle,
    Numeric(Complex64),
}

/// A chain after specialization.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecializedChain {
    UnitCircle(Chain<UnitCircleScalar>),
    Numeric(Chain<Complex64>),
}

impl SpecializedChain {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecializedChain::UnitCircle(c) => c.is_zero(),
            SpecializedChain::Numeric(c) => c.is_zero(),
        }
    }

    /// Largest coefficient modulus (0 for unit-circle chains that vanish).
    pub fn max_abs(&self) -> f64 {
        match self {
            SpecializedChain::UnitCircle(c) => c
                .terms()
                .map(|(_, x)| {
                    x.terms()
                        .map(|(_, r)| num::ToPrimitive::to_f64(&r.abs()).unwrap_or(f64::NAN))
                        .sum()
                })
                .fold(0.0, f64::max),
            SpecializedChain::Numeric(c) => c.terms().map(|(_, x)| x.norm()).fold(0.0, f64::max),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            SpecializedChain::UnitCircle(c) => c.to_json(),
            SpecializedChain::Numeric(c) => c.to_json(),
        }
    }
}

impl fmt::Display for SpecializedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecializedChain::UnitCircle(c) => c.fmt(f),
            SpecializedChain::Numeric(c) => c.fmt(f),
        }
    }
}

pub fn specialize_chain(x: &ChainElement, mode: Specialization) -> Result<SpecializedChain, ChainError> {
    Ok(match mode {
        Specialization::UnitCircle => SpecializedChain::UnitCircle(x.specialize_unit_circle()),
        Specialization::Numeric(q0) => SpecializedChain::Numeric(x.specialize_numeric(q0)?),
    })
}
