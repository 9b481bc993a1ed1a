//! 4x4 matrices over the algebra and the instanton idempotent `e`.

use std::fmt;

use num::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{normalize, AlgebraElement, Free, FreeElement, Generator, Letter};
use crate::scalars::{rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("mixed-mode matrix arithmetic ({left:?} with {right:?})")]
    ModeMismatch { left: Mode, right: Mode },
    #[error("the ansatz parameter must be a rational constant, got {0}")]
    NonConstantParameter(String),
    #[error("the ansatz parameter must differ from -1")]
    ParameterMinusOne,
    #[error("span check failed: {0}")]
    SpanFailure(String),
}

/// Ring operations needed by [`Mat4`].
pub trait Entry: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn adjoint(&self) -> Self;
}

impl Entry for AlgebraElement {
    fn zero() -> Self {
        AlgebraElement::zero()
    }
    fn one() -> Self {
        AlgebraElement::one()
    }
    fn is_zero(&self) -> bool {
        AlgebraElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        AlgebraElement::mul(self, rhs)
    }
    fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement::scale(self, c)
    }
    fn adjoint(&self) -> Self {
        AlgebraElement::adjoint(self)
    }
}

impl<L: Letter> Entry for Free<L> {
    fn zero() -> Self {
        Free::zero()
    }
    fn one() -> Self {
        Free::one()
    }
    fn is_zero(&self) -> bool {
        Free::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Scalar) -> Self {
        Free::scale(self, c)
    }
    fn adjoint(&self) -> Self {
        Free::adjoint(self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat4<T> {
    rows: [[T; 4]; 4],
}

impl<T: Entry> Mat4<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(mut f: F) -> Self {
        Self {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Entry::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| ((i, j), x)))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].add(&rhs.rows[i][j]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].sub(&rhs.rows[i][j]))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..4).fold(T::zero(), |acc, k| {
                let (a, b) = (&self.rows[i][k], &rhs.rows[k][j]);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].scale(c))
    }

    /// Conjugate transpose with entrywise adjoint.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].adjoint())
    }

    pub fn trace(&self) -> T {
        (0..4).fold(T::zero(), |acc, i| acc.add(&self.rows[i][i]))
    }

    pub fn map<U: Entry, F: Fn(&T) -> U>(&self, f: F) -> Mat4<U> {
        Mat4::from_fn(|i, j| f(&self.rows[i][j]))
    }
}

impl<T: Entry> fmt::Debug for Mat4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat4[")?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quotient,
    Free,
}

/// A 4x4 matrix in either the quotient algebra or the free algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixA {
    Quotient(Mat4<AlgebraElement>),
    Free(Mat4<FreeElement>),
}

impl MatrixA {
    pub fn e(mode: Mode) -> Self {
        match mode {
            Mode::Quotient => MatrixA::Quotient(build_e()),
            Mode::Free => MatrixA::Free(build_e_free()),
        }
    }

    pub fn identity(mode: Mode) -> Self {
        match mode {
            Mode::Quotient => MatrixA::Quotient(Mat4::identity()),
            Mode::Free => MatrixA::Free(Mat4::identity()),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            MatrixA::Quotient(_) => Mode::Quotient,
            MatrixA::Free(_) => Mode::Free,
        }
    }

    fn zip(
        &self,
        rhs: &Self,
        q: impl Fn(&Mat4<AlgebraElement>, &Mat4<AlgebraElement>) -> Mat4<AlgebraElement>,
        f: impl Fn(&Mat4<FreeElement>, &Mat4<FreeElement>) -> Mat4<FreeElement>,
    ) -> Result<Self, MatrixError> {
        match (self, rhs) {
            (MatrixA::Quotient(a), MatrixA::Quotient(b)) => Ok(MatrixA::Quotient(q(a, b))),
            (MatrixA::Free(a), MatrixA::Free(b)) => Ok(MatrixA::Free(f(a, b))),
            _ => Err(MatrixError::ModeMismatch {
                left: self.mode(),
                right: rhs.mode(),
            }),
        }
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip(rhs, Mat4::mul, Mat4::mul)
    }

    pub fn mat_add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip(rhs, Mat4::add, Mat4::add)
    }

    pub fn mat_sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip(rhs, Mat4::sub, Mat4::sub)
    }

    pub fn adjoint(&self) -> Self {
        match self {
            MatrixA::Quotient(a) => MatrixA::Quotient(a.adjoint()),
            MatrixA::Free(a) => MatrixA::Free(a.adjoint()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        match self {
            MatrixA::Quotient(a) => MatrixA::Quotient(a.scale(c)),
            MatrixA::Free(a) => MatrixA::Free(a.scale(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MatrixA::Quotient(a) => a.is_zero(),
            MatrixA::Free(a) => a.is_zero(),
        }
    }
}

fn free_gen(g: Generator) -> FreeElement {
    Free::letter(g)
}

/// `2e`, the integral form of the projection.
pub fn twice_e_free() -> Mat4<FreeElement> {
    use Generator::*;
    let one = FreeElement::one();
    let z = free_gen(Z);
    let p = &one + &z;
    let m = &one - &z;
    let zero = FreeElement::zero();
    let neg_q_bs = free_gen(BetaStar).scale(&-Scalar::q());
    let neg_qb_b = free_gen(Beta).scale(&-Scalar::qb());
    let rows = [
        [p.clone(), zero.clone(), free_gen(Alpha), free_gen(Beta)],
        [zero.clone(), p, neg_q_bs, free_gen(AlphaStar)],
        [free_gen(AlphaStar), neg_qb_b, m.clone(), zero.clone()],
        [free_gen(BetaStar), free_gen(Alpha), zero, m],
    ];
    Mat4 { rows }
}

pub fn build_e_free() -> Mat4<FreeElement> {
    twice_e_free().scale(&Scalar::ratio(1, 2))
}

pub fn build_e() -> Mat4<AlgebraElement> {
    build_e_free().map(normalize)
}

/// `e - 1/2`, the slot-zero factor of every Chern character component.
pub fn e_minus_half() -> Mat4<AlgebraElement> {
    build_e().sub(&Mat4::identity().scale(&Scalar::ratio(1, 2)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relator {
    pub name: String,
    pub value: FreeElement,
}

fn parse_free(text: &str) -> FreeElement {
    crate::parse::parse_expr(text).expect("built-in relator text parses")
}

/// The seven defining relators followed by the adjoints of the first four.
pub fn relators() -> Vec<Relator> {
    let base = [
        ("r1", "z*al - al*z"),
        ("r2", "z*be - be*z"),
        ("r3", "be*al - qb*al*be"),
        ("r4", "be**al - q*al*be*"),
        ("r5", "be*be* - be**be"),
        ("r6", "al**al + q*qb*be**be + z^2 - I"),
        ("r7", "al*al* + be*be* + z^2 - I"),
    ];
    let mut out: Vec<Relator> = base
        .iter()
        .map(|(name, text)| Relator {
            name: name.to_string(),
            value: parse_free(text),
        })
        .collect();
    for i in 0..4 {
        let adj = out[i].value.adjoint();
        out.push(Relator {
            name: format!("{}*", out[i].name),
            value: adj,
        });
    }
    out
}

/// A vector expressed as a combination of labelled generators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Combination {
    pub target: String,
    pub value: String,
    pub in_span: bool,
    pub terms: Vec<CombinationTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinationTerm {
    pub source: String,
    pub coeff: String,
}

/// Solves `target = sum_i x_i generators[i]` over the Laurent ring using
/// elimination with unit pivots only. `Ok(None)` means "not in the span";
/// an error means a generator had no invertible coefficient to pivot on.
pub fn solve_in_span<L: Letter>(generators: &[Free<L>], target: &Free<L>) -> Result<Option<Vec<Scalar>>, MatrixError> {
    struct Row<L: Letter> {
        pivot: Vec<L>,
        vector: Free<L>,
        combo: Vec<Scalar>,
    }
    let k = generators.len();
    let axpy = |acc: &mut Vec<Scalar>, c: &Scalar, x: &[Scalar]| {
        for (a, b) in acc.iter_mut().zip(x) {
            *a -= &(c * b);
        }
    };
    let mut rows: Vec<Row<L>> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let mut v = g.clone();
        let mut combo = vec![Scalar::zero(); k];
        combo[i] = Scalar::one();
        for r in &rows {
            let c = v.coeff(&r.pivot);
            if !c.is_zero() {
                v -= &r.vector.scale(&c);
                axpy(&mut combo, &c, &r.combo);
            }
        }
        if v.is_zero() {
            continue;
        }
        let Some((pivot, inv)) = v
            .terms()
            .find_map(|(w, c)| c.inverse_unit().map(|inv| (w.clone(), inv)))
        else {
            return Err(MatrixError::SpanFailure(format!("no unit pivot in {v}")));
        };
        rows.push(Row {
            pivot,
            vector: v.scale(&inv),
            combo: combo.iter().map(|c| c * &inv).collect(),
        });
    }
    let mut rem = target.clone();
    let mut x = vec![Scalar::zero(); k];
    for r in &rows {
        let c = rem.coeff(&r.pivot);
        if !c.is_zero() {
            rem -= &r.vector.scale(&c);
            for (a, b) in x.iter_mut().zip(&r.combo) {
                *a += &(&c * b);
            }
        }
    }
    if !rem.is_zero() {
        return Ok(None);
    }
    // Recombine from scratch so the certificate never rests on the elimination.
    let mut check = Free::zero();
    for (c, g) in x.iter().zip(generators) {
        check += &g.scale(c);
    }
    if &check != target {
        return Err(MatrixError::SpanFailure("certificate does not recombine".into()));
    }
    Ok(Some(x))
}

fn combination(target: String, value: &FreeElement, labels: &[String], solution: Option<Vec<Scalar>>) -> Combination {
    let in_span = solution.is_some();
    let terms = solution
        .unwrap_or_default()
        .into_iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| CombinationTerm {
            source: l.clone(),
            coeff: c.to_string(),
        })
        .collect();
    Combination {
        target,
        value: value.to_string(),
        in_span,
        terms,
    }
}

/// Evidence that `4(e^2 - e)` in the free algebra and the relator set span
/// the same Laurent-linear space.
#[derive(Debug, Clone, Serialize)]
pub struct IdempotencyCertificate {
    pub entries_in_span: bool,
    pub relators_in_span: bool,
    /// Each nonzero entry of `4(e^2 - e)` as a combination of relators.
    pub entries: Vec<Combination>,
    /// Each defining relator as a combination of entries and their adjoints.
    pub relators: Vec<Combination>,
}

/// `4(e^2 - e) = M^2 - 2M` with `M = 2e`, computed without relations.
pub fn idempotency_defect_free() -> Mat4<FreeElement> {
    let m = twice_e_free();
    m.mul(&m).sub(&m.scale(&Scalar::from_int(2)))
}

pub fn idempotency_certificate() -> Result<IdempotencyCertificate, MatrixError> {
    let defect = idempotency_defect_free();
    let rels = relators();
    let rel_values: Vec<FreeElement> = rels.iter().map(|r| r.value.clone()).collect();
    let rel_labels: Vec<String> = rels.iter().map(|r| r.name.clone()).collect();

    let mut entries = Vec::new();
    for ((i, j), x) in defect.entries() {
        if x.is_zero() {
            continue;
        }
        let sol = solve_in_span(&rel_values, x)?;
        entries.push(combination(format!("E[{},{}]", i + 1, j + 1), x, &rel_labels, sol));
    }

    let mut sources = Vec::new();
    let mut source_labels = Vec::new();
    for ((i, j), x) in defect.entries() {
        if x.is_zero() {
            continue;
        }
        sources.push(x.clone());
        source_labels.push(format!("E[{},{}]", i + 1, j + 1));
        sources.push(x.adjoint());
        source_labels.push(format!("E[{},{}]*", i + 1, j + 1));
    }
    let mut relators_out = Vec::new();
    for r in rels.iter().take(7) {
        let sol = solve_in_span(&sources, &r.value)?;
        relators_out.push(combination(r.name.clone(), &r.value, &source_labels, sol));
    }
    Ok(IdempotencyCertificate {
        entries_in_span: entries.iter().all(|c| c.in_span),
        relators_in_span: relators_out.iter().all(|c| c.in_span),
        entries,
        relators: relators_out,
    })
}

/// Alphabet of the pre-quotient ansatz: the algebra letters plus a
/// self-adjoint letter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnsatzLetter {
    Gen(Generator),
    T,
}

impl Letter for AnsatzLetter {
    fn star(self) -> Self {
        match self {
            AnsatzLetter::Gen(g) => AnsatzLetter::Gen(g.star()),
            AnsatzLetter::T => AnsatzLetter::T,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            AnsatzLetter::Gen(g) => g.symbol(),
            AnsatzLetter::T => "t",
        }
    }
}

pub type AnsatzElement = Free<AnsatzLetter>;

/// Block ansatz `[[Q1, Q], [Q*, Q3]]` after the self-adjointness and rank
/// constraints, with `Q1 = diag(t, pi t)`, `Q3 = diag(c - t, pi (c - t))`,
/// `c = 2 / (1 + pi)` and `Q = [[al, be], [-q be*, pi al*]]`.
pub fn generalized_ansatz_e(pi: &Scalar) -> Result<Mat4<AnsatzElement>, MatrixError> {
    use Generator::*;
    let pi_value: BigRational = pi
        .as_constant()
        .ok_or_else(|| MatrixError::NonConstantParameter(pi.to_string()))?;
    if pi_value == rational(-1, 1) {
        return Err(MatrixError::ParameterMinusOne);
    }
    let c = Scalar::constant(rational(2, 1) / (rational(1, 1) + &pi_value));
    let letter = |g| AnsatzElement::letter(AnsatzLetter::Gen(g));
    let t = AnsatzElement::letter(AnsatzLetter::T);
    let c_minus_t = &AnsatzElement::scalar(c) - &t;
    let zero = AnsatzElement::zero();
    let rows = [
        [t.clone(), zero.clone(), letter(Alpha), letter(Beta)],
        [
            zero.clone(),
            t.scale(pi),
            letter(BetaStar).scale(&-Scalar::q()),
            letter(AlphaStar).scale(pi),
        ],
        [
            letter(AlphaStar),
            letter(Beta).scale(&-Scalar::qb()),
            c_minus_t.clone(),
            zero.clone(),
        ],
        [letter(BetaStar), letter(Alpha).scale(pi), zero, c_minus_t.scale(pi)],
    ];
    Ok(Mat4 { rows })
}

/// Renames the ansatz into the algebra letters: `t -> t_image`,
/// `al -> al/2`, `be -> be/2`.
pub fn rename_ansatz(e: &Mat4<AnsatzElement>, t_image: &FreeElement) -> Mat4<FreeElement> {
    let half = Scalar::ratio(1, 2);
    e.map(|x| {
        x.substitute(|l| match l {
            AnsatzLetter::T => t_image.clone(),
            AnsatzLetter::Gen(Generator::Z) => Free::letter(Generator::Z),
            AnsatzLetter::Gen(g) => Free::letter(g).scale(&half),
        })
    })
}

/// `ch_0 = <e - 1/2>`, the trace of `e - 1/2` (degree zero needs no projection).
pub fn ch0_of<T: Entry>(e: &Mat4<T>) -> T {
    e.sub(&Mat4::identity().scale(&Scalar::ratio(1, 2))).trace()
}
