//! The free *-algebra on `al`, `be`, `z` and its quotient `A_q`.
//!
//! Words are reduced by a fixed length-two rewrite system:
//!
//! 1. `z x -> x z` for every letter `x != z`
//! 2. `be be* -> be* be`
//! 3. `be al -> qb al be`, `be* al -> q al be*`, `be al* -> qb^-1 al* be`,
//!    `be* al* -> q^-1 al* be*`
//! 4. `al al* -> I - be* be - z^2`, `al* al -> I - q qb be* be - z^2`
//!
//! Irreducible words are exactly the normal monomials
//! `al*^k be*^m be^n z^l` (or `al^-k ...` for negative `k`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::scalars::{join_signed, Scalar};

/// Letter of a free *-algebra.
pub trait Letter: Copy + Ord + fmt::Debug {
    fn star(self) -> Self;
    fn symbol(self) -> &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Alpha,
    AlphaStar,
    Beta,
    BetaStar,
    /// Self-adjoint; `z = z*` is built into the alphabet.
    Z,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::Alpha,
        Generator::AlphaStar,
        Generator::Beta,
        Generator::BetaStar,
        Generator::Z,
    ];

    pub fn is_alpha(self) -> bool {
        matches!(self, Generator::Alpha | Generator::AlphaStar)
    }

    /// Position in the normal-form ordering `al/al* < be* < be < z`.
    pub fn rank(self) -> u8 {
        match self {
            Generator::Alpha | Generator::AlphaStar => 0,
            Generator::BetaStar => 1,
            Generator::Beta => 2,
            Generator::Z => 3,
        }
    }
}

impl Letter for Generator {
    fn star(self) -> Self {
        match self {
            Generator::Alpha => Generator::AlphaStar,
            Generator::AlphaStar => Generator::Alpha,
            Generator::Beta => Generator::BetaStar,
            Generator::BetaStar => Generator::Beta,
            Generator::Z => Generator::Z,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Generator::Alpha => "al",
            Generator::AlphaStar => "al*",
            Generator::Beta => "be",
            Generator::BetaStar => "be*",
            Generator::Z => "z",
        }
    }
}

pub type Word<L> = Vec<L>;

/// Finite `Scalar`-linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Free<L: Letter> {
    terms: BTreeMap<Word<L>, Scalar>,
}

pub type FreeWord = Word<Generator>;
pub type FreeElement = Free<Generator>;

impl<L: Letter> Default for Free<L> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Letter> Free<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Scalar::one())
    }

    pub fn letter(l: L) -> Self {
        Self::word(vec![l], Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::word(Vec::new(), c)
    }

    pub fn word(w: Word<L>, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Word<L>, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<L>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[L]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word<L>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.iter().rev().map(|l| l.star()).collect(), c.conj())),
        )
    }

    /// Extends the letter map `f` to an algebra homomorphism.
    pub fn substitute<M: Letter, F: Fn(L) -> Free<M>>(&self, f: F) -> Free<M> {
        let mut out = Free::zero();
        for (w, c) in &self.terms {
            let mut acc = Free::scalar(c.clone());
            for &l in w {
                acc = &acc * &f(l);
            }
            out += &acc;
        }
        out
    }

    /// Maximum word length (0 for the zero element).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl<L: Letter> fmt::Debug for Free<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Free({self})")
    }
}

pub(crate) fn render_coefficient_term(c: &Scalar, body: Option<String>) -> (bool, String) {
    if c.is_unit() {
        let (_, rc) = c.terms().next().expect("unit has one term");
        let negative = num::Signed::is_negative(rc);
        let abs = if negative { -c } else { c.clone() };
        let body = match body {
            None => abs.to_string(),
            Some(b) if abs.is_one() => b,
            Some(b) => format!("{abs}*{b}"),
        };
        (negative, body)
    } else {
        let body = match body {
            None => format!("({c})"),
            Some(b) => format!("({c})*{b}"),
        };
        (false, body)
    }
}

impl<L: Letter> fmt::Display for Free<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(w, c)| {
            let body = if w.is_empty() {
                None
            } else {
                Some(w.iter().map(|l| l.symbol()).collect::<Vec<_>>().join("*"))
            };
            render_coefficient_term(c, body)
        });
        f.write_str(&join_signed(items))
    }
}

impl<L: Letter> AddAssign<&Free<L>> for Free<L> {
    fn add_assign(&mut self, rhs: &Free<L>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<L: Letter> SubAssign<&Free<L>> for Free<L> {
    fn sub_assign(&mut self, rhs: &Free<L>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl<L: Letter> Add<&Free<L>> for &Free<L> {
    type Output = Free<L>;
    fn add(self, rhs: &Free<L>) -> Free<L> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<L: Letter> Sub<&Free<L>> for &Free<L> {
    type Output = Free<L>;
    fn sub(self, rhs: &Free<L>) -> Free<L> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<L: Letter> Neg for &Free<L> {
    type Output = Free<L>;
    fn neg(self) -> Free<L> {
        self.scale(&Scalar::from_int(-1))
    }
}

impl<L: Letter> Mul<&Free<L>> for &Free<L> {
    type Output = Free<L>;
    fn mul(self, rhs: &Free<L>) -> Free<L> {
        let mut out = Free::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }
}

/// Basis element `al*^k be*^m be^n z^l` (`al^-k ...` when `k < 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NormalMonomial {
    pub k: i32,
    pub m: u32,
    pub n: u32,
    pub l: u32,
}

impl NormalMonomial {
    pub const IDENTITY: NormalMonomial = NormalMonomial { k: 0, m: 0, n: 0, l: 0 };

    pub fn new(k: i32, m: u32, n: u32, l: u32) -> Self {
        Self { k, m, n, l }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Word length `|k| + m + n + l`.
    pub fn degree(&self) -> u32 {
        self.k.unsigned_abs() + self.m + self.n + self.l
    }

    pub fn to_word(&self) -> FreeWord {
        let alpha = if self.k >= 0 {
            Generator::AlphaStar
        } else {
            Generator::Alpha
        };
        let mut w = Vec::with_capacity(self.degree() as usize);
        w.extend(std::iter::repeat_n(alpha, self.k.unsigned_abs() as usize));
        w.extend(std::iter::repeat_n(Generator::BetaStar, self.m as usize));
        w.extend(std::iter::repeat_n(Generator::Beta, self.n as usize));
        w.extend(std::iter::repeat_n(Generator::Z, self.l as usize));
        w
    }

    /// Reads an irreducible word; `None` if the word is not in normal form.
    pub fn from_word(w: &[Generator]) -> Option<Self> {
        let mut i = 0;
        let run = |i: &mut usize, g: Generator| {
            let start = *i;
            while *i < w.len() && w[*i] == g {
                *i += 1;
            }
            (*i - start) as u32
        };
        let a = run(&mut i, Generator::Alpha);
        let k = if a > 0 {
            -(a as i32)
        } else {
            run(&mut i, Generator::AlphaStar) as i32
        };
        let m = run(&mut i, Generator::BetaStar);
        let n = run(&mut i, Generator::Beta);
        let l = run(&mut i, Generator::Z);
        (i == w.len()).then_some(Self { k, m, n, l })
    }
}

fn power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let alpha = if self.k >= 0 { "al*" } else { "al" };
        let parts: Vec<String> = [
            power(alpha, self.k.unsigned_abs()),
            power("be*", self.m),
            power("be", self.n),
            power("z", self.l),
        ]
        .into_iter()
        .flatten()
        .collect();
        f.write_str(&parts.join("*"))
    }
}

/// One rewrite at the pair `(x, y)`, or `None` if the pair is irreducible.
pub fn rewrite_pair(x: Generator, y: Generator) -> Option<Vec<(Scalar, FreeWord)>> {
    use Generator::*;
    let one = Scalar::one;
    let out = match (x, y) {
        (Z, y) if y != Z => vec![(one(), vec![y, Z])],
        (Beta, BetaStar) => vec![(one(), vec![BetaStar, Beta])],
        (Beta, Alpha) => vec![(Scalar::qb(), vec![Alpha, Beta])],
        (BetaStar, Alpha) => vec![(Scalar::q(), vec![Alpha, BetaStar])],
        (Beta, AlphaStar) => vec![(Scalar::q_pow(0, -1), vec![AlphaStar, Beta])],
        (BetaStar, AlphaStar) => vec![(Scalar::q_pow(-1, 0), vec![AlphaStar, BetaStar])],
        (Alpha, AlphaStar) => vec![
            (one(), vec![]),
            (Scalar::from_int(-1), vec![BetaStar, Beta]),
            (Scalar::from_int(-1), vec![Z, Z]),
        ],
        (AlphaStar, Alpha) => vec![
            (one(), vec![]),
            (-Scalar::qqb(), vec![BetaStar, Beta]),
            (Scalar::from_int(-1), vec![Z, Z]),
        ],
        _ => return None,
    };
    Some(out)
}

/// Positions `i` where the pair `(w[i], w[i+1])` is a redex.
pub fn redexes(w: &[Generator]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| rewrite_pair(w[i], w[i + 1]).is_some())
        .collect()
}

/// Termination measure: (number of alpha letters, number of order inversions).
pub fn rewrite_measure(w: &[Generator]) -> (usize, usize) {
    let alphas = w.iter().filter(|g| g.is_alpha()).count();
    let mut inversions = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].rank() > w[j].rank() {
                inversions += 1;
            }
        }
    }
    (alphas, inversions)
}

/// Applies the rule at position `pos`; `None` if there is no redex there.
pub fn rewrite_at(w: &[Generator], pos: usize) -> Option<Vec<(Scalar, FreeWord)>> {
    let rhs = rewrite_pair(*w.get(pos)?, *w.get(pos + 1)?)?;
    Some(
        rhs.into_iter()
            .map(|(c, mid)| {
                let mut out = Vec::with_capacity(w.len() + 1);
                out.extend_from_slice(&w[..pos]);
                out.extend(mid);
                out.extend_from_slice(&w[pos + 2..]);
                (c, out)
            })
            .collect(),
    )
}

/// Outcome of a rewriting run.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub value: AlgebraElement,
    pub steps: usize,
}

/// Rewrites to normal form, letting `choose` pick which redex to contract
/// (it receives the list of redex positions, never empty).
pub fn normalize_with<F: FnMut(&[usize]) -> usize>(x: &FreeElement, mut choose: F) -> Normalized {
    let mut pending: BTreeMap<FreeWord, Scalar> = BTreeMap::new();
    for (w, c) in x.terms() {
        pending.insert(w.clone(), c.clone());
    }
    let mut out = AlgebraElement::zero();
    let mut steps = 0;
    while let Some((w, c)) = pending.pop_first() {
        let positions = redexes(&w);
        if positions.is_empty() {
            let mono = NormalMonomial::from_word(&w).expect("irreducible words are normal monomials");
            out.add_term(mono, c);
            continue;
        }
        let pos = positions[choose(&positions) % positions.len()];
        steps += 1;
        for (rc, rw) in rewrite_at(&w, pos).expect("redex position") {
            let coeff = &c * &rc;
            match pending.entry(rw) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &coeff;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }
    Normalized { value: out, steps }
}

/// Leftmost-innermost normalization into `A_q`.
pub fn normalize(x: &FreeElement) -> AlgebraElement {
    normalize_with(x, |_| 0).value
}

/// Element of `A_q` in the normal-monomial basis.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<NormalMonomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(NormalMonomial::IDENTITY, Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(NormalMonomial::IDENTITY, c)
    }

    pub fn monomial(mono: NormalMonomial, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(mono, c);
        out
    }

    pub fn generator(g: Generator) -> Self {
        let mono = NormalMonomial::from_word(&[g]).expect("single letters are normal");
        Self::monomial(mono, Scalar::one())
    }

    pub fn alpha() -> Self {
        Self::generator(Generator::Alpha)
    }

    pub fn alpha_star() -> Self {
        Self::generator(Generator::AlphaStar)
    }

    pub fn beta() -> Self {
        Self::generator(Generator::Beta)
    }

    pub fn beta_star() -> Self {
        Self::generator(Generator::BetaStar)
    }

    pub fn z() -> Self {
        Self::generator(Generator::Z)
    }

    pub fn from_terms<I: IntoIterator<Item = (NormalMonomial, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &NormalMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: NormalMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x * c)))
    }

    /// Coefficient of the identity monomial.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(&NormalMonomial::IDENTITY)
    }

    /// Canonical representative in `A_q / C I` (scalar part removed).
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&NormalMonomial::IDENTITY);
        out
    }

    /// The same combination read as unreduced words.
    pub fn to_free(&self) -> FreeElement {
        Free::from_terms(self.terms.iter().map(|(m, c)| (m.to_word(), c.clone())))
    }

    pub fn adjoint(&self) -> Self {
        normalize(&self.to_free().adjoint())
    }

    /// Largest `|k|` among the terms.
    pub fn alpha_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.k.unsigned_abs()).max().unwrap_or(0)
    }

    fn mul_generator(&self, g: Generator) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            for (rc, rm) in monomial_times_generator(*mono, g) {
                out.add_term(rm, c * &rc);
            }
        }
        out
    }

    /// Right multiplication by an unreduced word.
    pub fn mul_word(&self, w: &[Generator]) -> Self {
        w.iter().fold(self.clone(), |acc, &g| acc.mul_generator(g))
    }

    pub fn mul(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero();
        for (mono, c) in &rhs.terms {
            out += &self.mul_word(&mono.to_word()).scale(c);
        }
        out
    }

    /// Image under `al -> al*`, `be -> -q be`, `z -> z` with coefficients
    /// sent through `q -> 1/q`; see [`q_inverse_morphism`].
    pub fn q_inverse_image(&self) -> AlgebraElement {
        q_inverse_morphism(&self.to_free())
    }
}

/// Closed form of `mono * g` following the rewrite rules.
fn monomial_times_generator(mono: NormalMonomial, g: Generator) -> Vec<(Scalar, NormalMonomial)> {
    let NormalMonomial { k, m, n, l } = mono;
    let (mi, ni) = (m as i32, n as i32);
    match g {
        Generator::Z => vec![(Scalar::one(), NormalMonomial { l: l + 1, ..mono })],
        Generator::Beta => vec![(Scalar::one(), NormalMonomial { n: n + 1, ..mono })],
        Generator::BetaStar => vec![(Scalar::one(), NormalMonomial { m: m + 1, ..mono })],
        Generator::Alpha => {
            let c = Scalar::q_pow(mi, ni);
            if k <= 0 {
                vec![(c, NormalMonomial { k: k - 1, ..mono })]
            } else {
                // al*^k al = al*^(k-1) (I - q qb be* be - z^2)
                vec![
                    (c.clone(), NormalMonomial { k: k - 1, ..mono }),
                    (-(&c * &Scalar::qqb()), NormalMonomial::new(k - 1, m + 1, n + 1, l)),
                    (-c, NormalMonomial::new(k - 1, m, n, l + 2)),
                ]
            }
        }
        Generator::AlphaStar => {
            let c = Scalar::q_pow(-mi, -ni);
            if k >= 0 {
                vec![(c, NormalMonomial { k: k + 1, ..mono })]
            } else {
                // al^j al* = al^(j-1) (I - be* be - z^2)
                vec![
                    (c.clone(), NormalMonomial { k: k + 1, ..mono }),
                    (-c.clone(), NormalMonomial::new(k + 1, m + 1, n + 1, l)),
                    (-c, NormalMonomial::new(k + 1, m, n, l + 2)),
                ]
            }
        }
    }
}

/// Generator images of the `q -> 1/q` isomorphism.
pub fn q_inverse_generator_image(g: Generator) -> AlgebraElement {
    match g {
        Generator::Alpha => AlgebraElement::alpha_star(),
        Generator::AlphaStar => AlgebraElement::alpha(),
        Generator::Beta => AlgebraElement::beta().scale(&-Scalar::q()),
        Generator::BetaStar => AlgebraElement::beta_star().scale(&-Scalar::qb()),
        Generator::Z => AlgebraElement::z(),
    }
}

/// Maps an element written with parameter `q'` into `A_q` via `q' = 1/q`,
/// `al -> al*`, `be -> -q be`, `z -> z`, and normalizes. Relators of the
/// source algebra map to zero.
pub fn q_inverse_morphism(x: &FreeElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (w, c) in x.terms() {
        let mut acc = AlgebraElement::scalar(c.invert_parameter());
        for &g in w {
            acc = acc.mul(&q_inverse_generator_image(g));
        }
        out += &acc;
    }
    out
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(mono, c)| {
            let body = (!mono.is_identity()).then(|| mono.to_string());
            if body.is_none() && c.is_one() {
                return (false, "I".to_string());
            }
            render_coefficient_term(c, body)
        });
        f.write_str(&join_signed(items))
    }
}

impl AddAssign<&AlgebraElement> for AlgebraElement {
    fn add_assign(&mut self, rhs: &AlgebraElement) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&AlgebraElement> for AlgebraElement {
    fn sub_assign(&mut self, rhs: &AlgebraElement) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::Generator::*;
    use super::*;

    fn word(w: &[Generator]) -> FreeElement {
        Free::word(w.to_vec(), Scalar::one())
    }

    fn nm(k: i32, m: u32, n: u32, l: u32) -> NormalMonomial {
        NormalMonomial::new(k, m, n, l)
    }

    #[test]
    fn beta_alpha_commutes_with_qb() {
        let x = normalize(&word(&[Beta, Alpha]));
        assert_eq!(x, AlgebraElement::monomial(nm(-1, 0, 1, 0), Scalar::qb()));
    }

    #[test]
    fn alpha_alpha_star_sphere_relation() {
        let x = normalize(&word(&[Alpha, AlphaStar]));
        let expected = AlgebraElement::from_terms([
            (nm(0, 0, 0, 0), Scalar::one()),
            (nm(0, 1, 1, 0), Scalar::from_int(-1)),
            (nm(0, 0, 0, 2), Scalar::from_int(-1)),
        ]);
        assert_eq!(x, expected);
        assert_eq!(x.scalar_part(), Scalar::one());
        assert_eq!(x.to_string(), "I - z^2 - be**be");
    }

    #[test]
    fn alpha_star_alpha_sphere_relation() {
        let x = normalize(&word(&[AlphaStar, Alpha]));
        let expected = AlgebraElement::from_terms([
            (nm(0, 0, 0, 0), Scalar::one()),
            (nm(0, 1, 1, 0), -Scalar::qqb()),
            (nm(0, 0, 0, 2), Scalar::from_int(-1)),
        ]);
        assert_eq!(x, expected);
    }

    #[test]
    fn beta_alpha_alpha_star_both_associations() {
        let expected = AlgebraElement::from_terms([
            (nm(0, 0, 1, 0), Scalar::one()),
            (nm(0, 1, 2, 0), Scalar::from_int(-1)),
            (nm(0, 0, 1, 2), Scalar::from_int(-1)),
        ]);
        assert_eq!(normalize(&word(&[Beta, Alpha, AlphaStar])), expected);
        let ba = normalize(&word(&[Beta, Alpha]));
        let aa = normalize(&word(&[Alpha, AlphaStar]));
        assert_eq!(ba.mul(&AlgebraElement::alpha_star()), expected);
        assert_eq!(AlgebraElement::beta().mul(&aa), expected);
    }

    #[test]
    fn z_is_central_and_beta_star_alpha() {
        assert_eq!(
            AlgebraElement::z().mul(&AlgebraElement::alpha()),
            AlgebraElement::monomial(nm(-1, 0, 0, 1), Scalar::one())
        );
        assert_eq!(
            AlgebraElement::beta_star().mul(&AlgebraElement::alpha()),
            AlgebraElement::monomial(nm(-1, 1, 0, 0), Scalar::q())
        );
        let x = AlgebraElement::beta().scale(&Scalar::q());
        assert_eq!(AlgebraElement::one().mul(&x), x);
    }

    #[test]
    fn adjoint_is_antimultiplicative() {
        let ba = word(&[Beta, Alpha]);
        assert_eq!(ba.adjoint(), word(&[AlphaStar, BetaStar]));
        let x = Free::word(vec![Alpha, BetaStar], Scalar::q());
        assert_eq!(x.adjoint(), Free::word(vec![Beta, AlphaStar], Scalar::qb()));
        assert_eq!(normalize(&ba).adjoint(), normalize(&ba.adjoint()));
    }

    #[test]
    fn scalar_part_reads_identity() {
        let x = AlgebraElement::from_terms([
            (nm(0, 0, 0, 0), Scalar::ratio(1, 2)),
            (nm(0, 0, 0, 1), Scalar::ratio(1, 2)),
        ]);
        assert_eq!(x.scalar_part(), Scalar::ratio(1, 2));
        assert!(AlgebraElement::beta().scalar_part().is_zero());
    }

    #[test]
    fn normal_words_round_trip() {
        for mono in [nm(0, 0, 0, 0), nm(3, 1, 2, 0), nm(-2, 0, 1, 4), nm(0, 2, 0, 1)] {
            assert_eq!(NormalMonomial::from_word(&mono.to_word()), Some(mono));
            assert!(redexes(&mono.to_word()).is_empty());
        }
        assert_eq!(NormalMonomial::from_word(&[Z, Alpha]), None);
    }

    #[test]
    fn every_rule_lowers_the_measure() {
        for &x in &Generator::ALL {
            for &y in &Generator::ALL {
                if let Some(rhs) = rewrite_pair(x, y) {
                    let before = rewrite_measure(&[x, y]);
                    for (_, w) in rhs {
                        assert!(rewrite_measure(&w) < before, "{x:?}{y:?} -> {w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_rendering() {
        assert_eq!(nm(0, 0, 0, 0).to_string(), "I");
        assert_eq!(nm(2, 1, 3, 1).to_string(), "al*^2*be**be^3*z");
        assert_eq!(nm(-1, 0, 0, 2).to_string(), "al*z^2");
        let x = AlgebraElement::monomial(nm(-1, 1, 0, 0), Scalar::q());
        assert_eq!(x.to_string(), "q*al*be*");
    }

    #[test]
    fn q_inverse_fixes_z() {
        assert_eq!(q_inverse_morphism(&word(&[Z])), AlgebraElement::z());
    }
}
