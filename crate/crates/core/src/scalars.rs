//! Exact coefficient ring `Q[q, 1/q, qb, 1/qb]`.
//!
//! `q` and `qb` are independent commuting symbols; complex conjugation of the
//! deformation parameter is the exponent swap `q <-> qb`. The specialization
//! `|q| = 1` is the quotient by `q*qb - 1`, realized by [`UnitCircleScalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot evaluate a Laurent polynomial at q = 0")]
    ZeroParameter,
}

/// Exponent pair `(a, b)` of the monomial `q^a qb^b`.
pub type Exponent = (i32, i32);

/// Laurent polynomial in `q`, `qb` with rational coefficients.
///
/// Canonical: no stored coefficient is zero, so structural equality is ring
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Exponent, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn qb() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `q*qb`, the symbolic `|q|^2`.
    pub fn qqb() -> Self {
        Self::monomial(BigRational::one(), 1, 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(rational(num, den))
    }

    pub fn monomial(c: BigRational, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    /// `q^a qb^b` with coefficient one.
    pub fn q_pow(a: i32, b: i32) -> Self {
        Self::monomial(BigRational::one(), a, b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Single-term scalars are exactly the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse_unit(&self) -> Option<Scalar> {
        if !self.is_unit() {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -a, -b))
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Swap `q <-> qb`.
    pub fn conj(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// Substitute `q -> 1/q`, `qb -> 1/qb`.
    pub fn invert_parameter(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(&(a, b), c)| ((-a, -b), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q -> q0`, `qb -> conj(q0)`.
    pub fn eval(&self, q0: Complex64) -> Result<Complex64, ScalarError> {
        if q0 == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::ZeroParameter);
        }
        let qb0 = q0.conj();
        Ok(self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (&(a, b), c)| {
            let coeff = c.to_f64().unwrap_or(f64::NAN);
            acc + q0.powi(a) * qb0.powi(b) * coeff
        }))
    }

    /// Reduce modulo `q*qb = 1`.
    pub fn unit_circle(&self) -> UnitCircleScalar {
        let mut out = UnitCircleScalar::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a - b, c.clone());
        }
        out
    }

    fn min_max(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms.keys();
        let &(a0, b0) = it.next()?;
        let (mut lo, mut hi) = ((a0, b0), (a0, b0));
        for &(a, b) in it {
            lo = (lo.0.min(a), lo.1.min(b));
            hi = (hi.0.max(a), hi.1.max(b));
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn checked_div(&self, divisor: &Scalar) -> Option<Scalar> {
        if divisor.is_zero() {
            return None;
        }
        let Some((lo_x, hi_x)) = self.min_max() else {
            return Some(Scalar::zero());
        };
        let (lo_d, hi_d) = divisor.min_max()?;
        // Any quotient term must lie in this box (degree bounds in an integral domain).
        let lo = (lo_x.0 - lo_d.0, lo_x.1 - lo_d.1);
        let hi = (hi_x.0 - hi_d.0, hi_x.1 - hi_d.1);
        let (&(da, db), dc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quotient = Scalar::zero();
        while let Some((&(ra, rb), rc)) = rem.terms.iter().next_back() {
            let (ta, tb) = (ra - da, rb - db);
            if ta < lo.0 || ta > hi.0 || tb < lo.1 || tb > hi.1 {
                return None;
            }
            let t = Scalar::monomial(rc / dc, ta, tb);
            rem -= &(&t * divisor);
            quotient += &t;
        }
        Some(quotient)
    }

    /// Splits off the largest power of `(1 - q*qb)`: returns `(k, cofactor)`
    /// with `self = (1 - q*qb)^k * cofactor`. Zero yields `(0, 0)`.
    pub fn split_unit_circle_factor(&self) -> (u32, Scalar) {
        if self.is_zero() {
            return (0, Scalar::zero());
        }
        let factor = Scalar::one() - Scalar::qqb();
        let mut k = 0;
        let mut cur = self.clone();
        while cur.unit_circle().is_zero() {
            match cur.checked_div(&factor) {
                Some(next) => {
                    cur = next;
                    k += 1;
                }
                None => break,
            }
        }
        (k, cur)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

pub(crate) fn render_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_power(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Joins signed terms as `t1 + t2 - t3`. Each item is `(negative, body)`.
pub(crate) fn join_signed<I: IntoIterator<Item = (bool, String)>>(items: I) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in items.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_term(c: &BigRational, powers: Vec<String>) -> (bool, String) {
    let abs = c.abs();
    let body = if powers.is_empty() {
        render_rational(&abs)
    } else if abs.is_one() {
        powers.join("*")
    } else {
        format!("{}*{}", render_rational(&abs), powers.join("*"))
    };
    (c.is_negative(), body)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(&(a, b), c)| {
            let powers = [render_power("q", a), render_power("qb", b)]
                .into_iter()
                .flatten()
                .collect();
            render_term(c, powers)
        });
        f.write_str(&join_signed(items))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::constant(c)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $assign:ident) => {
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(mut self, rhs: &Scalar) -> Scalar {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(mut self, rhs: Scalar) -> Scalar {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        &self * rhs
    }
}

/// Image of a [`Scalar`] in `Q[q, 1/q]` after imposing `q*qb = 1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UnitCircleScalar {
    terms: BTreeMap<i32, BigRational>,
}

impl UnitCircleScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, a: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(a, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, a: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    /// Evaluate at `q = exp(i*phase)`.
    pub fn eval_phase(&self, phase: f64) -> Complex64 {
        let q0 = Complex64::from_polar(1.0, phase);
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (&a, c)| {
            acc + q0.powi(a) * c.to_f64().unwrap_or(f64::NAN)
        })
    }
}

impl fmt::Debug for UnitCircleScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitCircleScalar({self})")
    }
}

impl fmt::Display for UnitCircleScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self
            .terms
            .iter()
            .map(|(&a, c)| render_term(c, render_power("q", a).into_iter().collect()));
        f.write_str(&join_signed(items))
    }
}

impl AddAssign<&UnitCircleScalar> for UnitCircleScalar {
    fn add_assign(&mut self, rhs: &UnitCircleScalar) {
        for (&a, c) in &rhs.terms {
            self.add_term(a, c.clone());
        }
    }
}

impl Add<&UnitCircleScalar> for &UnitCircleScalar {
    type Output = UnitCircleScalar;
    fn add(self, rhs: &UnitCircleScalar) -> UnitCircleScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &UnitCircleScalar {
    type Output = UnitCircleScalar;
    fn neg(self) -> UnitCircleScalar {
        UnitCircleScalar {
            terms: self.terms.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }
}

impl Sub<&UnitCircleScalar> for &UnitCircleScalar {
    type Output = UnitCircleScalar;
    fn sub(self, rhs: &UnitCircleScalar) -> UnitCircleScalar {
        self + &(-rhs)
    }
}

impl Mul<&UnitCircleScalar> for &UnitCircleScalar {
    type Output = UnitCircleScalar;
    fn mul(self, rhs: &UnitCircleScalar) -> UnitCircleScalar {
        let mut out = UnitCircleScalar::zero();
        for (&a1, c1) in &self.terms {
            for (&a2, c2) in &rhs.terms {
                out.add_term(a1 + a2, c1 * c2);
            }
        }
        out
    }
}
