//! Tensor-expression DSL for writing expected chains by hand.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := ['[' scalar ']' '*'] factor ('@' factor)*
//! factor := name | '(' expr ')'
//! name   := I | z | al | al* | be | be*
//! ```
//!
//! `@` is the tensor product; bracketed scalars use the engine's scalar
//! syntax. Every factor after the first lands in a reduced slot.

#![allow(dead_code)]

pub mod gen;

use qsphere::algebra::{AlgebraElement, Generator};
use qsphere::chains::{tensor_project, ChainElement};
use qsphere::parse::parse_scalar;
use qsphere::scalars::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) {
        assert_eq!(self.peek(), Some(c), "expected '{}' at {}", c as char, self.pos);
        self.pos += 1;
    }

    fn expr(&mut self) -> ChainElement {
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term().scale(&Scalar::from_int(sign));
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()).expect("degrees agree");
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()).expect("degrees agree");
                }
                _ => return acc,
            }
        }
    }

    fn term(&mut self) -> ChainElement {
        let mut coeff = Scalar::one();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let start = self.pos;
            while self.src[self.pos] != b']' {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            coeff = parse_scalar(text).expect("scalar parses");
            self.pos += 1;
            self.expect(b'*');
        }
        let mut acc = self.factor();
        while self.peek() == Some(b'@') {
            self.pos += 1;
            acc = acc.tensor(&self.factor());
        }
        acc.scale(&coeff)
    }

    fn factor(&mut self) -> ChainElement {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let x = self.expr();
            self.expect(b')');
            return x;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let mut name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        if self.src.get(self.pos) == Some(&b'*') {
            self.pos += 1;
            name.push('*');
        }
        let x = match name.as_str() {
            "I" => AlgebraElement::one(),
            "z" => AlgebraElement::generator(Generator::Z),
            "al" => AlgebraElement::generator(Generator::Alpha),
            "al*" => AlgebraElement::generator(Generator::AlphaStar),
            "be" => AlgebraElement::generator(Generator::Beta),
            "be*" => AlgebraElement::generator(Generator::BetaStar),
            other => panic!("unknown slot name {other:?} at {start}"),
        };
        tensor_project(&[x]).unwrap()
    }
}

pub fn chain(src: &str) -> ChainElement {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let x = p.expr();
    assert_eq!(p.peek(), None, "trailing input at {}", p.pos);
    x
}

pub const CH1: &str = "[1/8 - 1/8*q*qb]*( z@(be@be* - be*@be) + be*@(z@be - be@z) + be@(be*@z - z@be*) )";

pub const C_Z: &str = "
    [1 - q^2*qb^2]*(be@be*@be@be* - be*@be@be*@be)
  + [1 - q*qb]*( z@z@(be@be* - be*@be) + (be@z@z@be* - be*@z@z@be)
               + (be@be* - be*@be)@z@z + z@(be@be* - be*@be)@z
               - z@(be@z@be* - be*@z@be) - (be@z@be* - be*@z@be)@z )
  + (al@al* - [q*qb]*al*@al)@(be@be* - be*@be)
  + (be@be* - be*@be)@(al@al* - [q*qb]*al*@al)
  + (be@al - [qb]*al@be)@(al*@be* - [q]*be*@al*)
  + (al*@be* - [q]*be*@al*)@(be@al - [qb]*al@be)
  + (al*@be - [qb]*be@al*)@([q]*al@be* - be*@al)
  + ([q]*al@be* - be*@al)@(al*@be - [qb]*be@al*)";

pub const C_ALPHA: &str = "
    (z@al* - al*@z)@(be*@be - be@be*)
  + [q*qb]*(be*@be - be@be*)@(z@al* - al*@z)
  + [qb]*(z@be - be@z)@(al*@be* - [q]*be*@al*)
  + (al*@be* - [q]*be*@al*)@(z@be - be@z)
  + [q]*(be*@z - z@be*)@(al*@be - [qb]*be@al*)
  + (al*@be - [qb]*be@al*)@(be*@z - z@be*)";

pub const C_ALPHA_STAR: &str = "
    [q*qb]*(z@al - al@z)@(be@be* - be*@be)
  + (be@be* - be*@be)@(z@al - al@z)
  + (be*@z - z@be*)@(be@al - [qb]*al@be)
  + [q]*(be@al - [qb]*al@be)@(be*@z - z@be*)
  + (z@be - be@z)@(be*@al - [q]*al@be*)
  + [qb]*(be*@al - [q]*al@be*)@(z@be - be@z)";

pub const C_BETA: &str = "
    [1 - q^2*qb^2]*( (be*@z - z@be*)@be@be* + be*@be@(be*@z - z@be*) )
  + [1 - q*qb]*( be*@z@z@z - z@be*@z@z + z@z@be*@z - z@z@z@be* )
  + (be*@z - z@be*)@(al@al* - [q*qb]*al*@al)
  + (al@al* - [q*qb]*al*@al)@(be*@z - z@be*)
  + (al@z - z@al)@(al*@be* - [q]*be*@al*)
  + [qb]*(al*@be* - [q]*be*@al*)@(al@z - z@al)
  + (be*@al - [q]*al@be*)@(al*@z - z@al*)
  + [qb]*(al*@z - z@al*)@(be*@al - [q]*al@be*)";

pub const C_BETA_STAR: &str = "
    [1 - q^2*qb^2]*( (z@be - be@z)@be*@be + be@be*@(z@be - be@z) )
  + [1 - q*qb]*( - be@z@z@z + z@be@z@z - z@z@be@z + z@z@z@be )
  + (z@be - be@z)@(al@al* - [q*qb]*al*@al)
  + (al@al* - [q*qb]*al*@al)@(z@be - be@z)
  + [q]*(z@al* - al*@z)@(be@al - [qb]*al@be)
  + (be@al - [qb]*al@be)@(z@al* - al*@z)
  + [q]*(al*@be - [qb]*be@al*)@(z@al - al@z)
  + (z@al - al@z)@(al*@be - [qb]*be@al*)";

pub const B_CH2: &str = "[1/16 - 1/16*q*qb]*( I@z@(be@be* - be*@be) + I@be@(be*@z - z@be*) + I@be*@(z@be - be@z) )";

pub fn printed_ch1() -> ChainElement {
    chain(CH1)
}

/// The five `c_x` components, keyed by the slot-0 generator they follow.
pub fn printed_components() -> Vec<(&'static str, ChainElement)> {
    vec![
        ("z", chain(C_Z)),
        ("al", chain(C_ALPHA)),
        ("al*", chain(C_ALPHA_STAR)),
        ("be", chain(C_BETA)),
        ("be*", chain(C_BETA_STAR)),
    ]
}

pub fn printed_ch2() -> ChainElement {
    let mut total: Option<ChainElement> = None;
    for (name, c) in printed_components() {
        let term = chain(name).tensor(&c);
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term).unwrap(),
        });
    }
    total.unwrap().scale(&Scalar::ratio(1, 32))
}

pub fn printed_b_ch2() -> ChainElement {
    chain(B_CH2)
}
