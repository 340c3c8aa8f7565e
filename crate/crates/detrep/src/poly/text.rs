//! Text grammar for forms and field elements.
//!
//! Grammar (highest precedence first): `^` with a nonnegative integer
//! exponent, unary `-`, then `*` and `/` (division only by nonzero
//! constants), then binary `+`/`-`. Names resolve to the declared
//! variables, then to the field constants `mu` and `i`. The printer emits
//! terms in ascending `(e2, e1)` order and round-trips exactly.

use super::form::TernaryForm;
use super::PolyError;
use crate::field::{ComplexExtElement, Field, Rational};
use num::{BigInt, One, Signed};
use std::collections::BTreeMap;

type Cx = ComplexExtElement;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b'+' => {
                out.push((Tok::Plus, pos));
                pos += 1;
            }
            b'-' => {
                out.push((Tok::Minus, pos));
                pos += 1;
            }
            b'*' => {
                out.push((Tok::Star, pos));
                pos += 1;
            }
            b'/' => {
                out.push((Tok::Slash, pos));
                pos += 1;
            }
            b'^' => {
                out.push((Tok::Caret, pos));
                pos += 1;
            }
            b'(' => {
                out.push((Tok::LParen, pos));
                pos += 1;
            }
            b')' => {
                out.push((Tok::RParen, pos));
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let n: BigInt = digits.parse().map_err(|_| PolyError::Parse {
                    pos: start,
                    msg: format!("invalid integer literal `{digits}`"),
                })?;
                out.push((Tok::Int(Rational::from_integer(n)), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((Tok::Name(text[start..pos].to_string()), start));
            }
            _ => {
                return Err(PolyError::Parse {
                    pos,
                    msg: format!("unexpected character `{}`", text[pos..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

/// Polynomial in the three variables with exact complex-extension
/// coefficients — the evaluation domain of the parser before demotion.
#[derive(Clone, Debug)]
struct Sparse {
    terms: BTreeMap<[u32; 3], Cx>,
}

impl Sparse {
    fn zero() -> Self {
        Sparse {
            terms: BTreeMap::new(),
        }
    }
    fn constant(c: Cx) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.terms.insert([0, 0, 0], c);
        }
        s
    }
    fn variable(axis: usize) -> Self {
        let mut exp = [0u32; 3];
        exp[axis] = 1;
        let mut s = Self::zero();
        s.terms.insert(exp, Cx::one());
        s
    }
    fn add_term(&mut self, exp: [u32; 3], c: Cx) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(
                    [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]],
                    ca.mul(cb),
                );
            }
        }
        out
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Cx::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    fn as_constant(&self) -> Option<Cx> {
        if self.terms.is_empty() {
            return Some(Cx::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&[0, 0, 0]) {
                return Some(c.clone());
            }
        }
        None
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Sparse, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let at = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    let c = rhs.as_constant().ok_or(PolyError::Parse {
                        pos: at,
                        msg: "division is only defined by constants".into(),
                    })?;
                    let inv = c.inv().ok_or(PolyError::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    })?;
                    acc = acc.mul(&Sparse::constant(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse, PolyError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Sparse, PolyError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            let at = self.pos();
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(r)) if r.denom().is_one() && !r.is_negative() => {
                    let n = r.numer().clone();
                    u32::try_from(n).map_err(|_| PolyError::Parse {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?
                }
                _ => {
                    return Err(PolyError::Parse {
                        pos: at,
                        msg: "exponent must be a nonnegative integer".into(),
                    })
                }
            };
            if matches!(self.peek(), Some(Tok::Caret)) {
                return self.err("chained exponentiation is not allowed");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse, PolyError> {
        let at = self.pos();
        match self.bump() {
            Some(Tok::Int(r)) => Ok(Sparse::constant(Cx::from_rational(r))),
            Some(Tok::Name(name)) => {
                if let Some(axis) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Sparse::variable(axis));
                }
                match name.as_str() {
                    "mu" => Ok(Sparse::constant(
                        Cx::generator_mu().expect("complex field contains mu"),
                    )),
                    "i" => Ok(Sparse::constant(
                        Cx::imaginary_unit().expect("complex field contains i"),
                    )),
                    _ => Err(PolyError::Parse {
                        pos: at,
                        msg: format!("unknown name `{name}`"),
                    }),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(PolyError::Parse {
                        pos: at,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(t) => Err(PolyError::Parse {
                pos: at,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(PolyError::Parse {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn parse_sparse(text: &str, vars: &[&str]) -> Result<Sparse, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        vars,
        end: text.len(),
    };
    let s = p.expr()?;
    if p.idx != p.toks.len() {
        return p.err("trailing input after expression");
    }
    Ok(s)
}

/// Parses a homogeneous form over the declared ordered variables. The
/// constants `mu` and `i` are accepted when the target field contains them.
pub fn parse_form<F: Field>(text: &str, vars: &[&str]) -> Result<TernaryForm<F>, PolyError> {
    let sparse = parse_sparse(text, vars)?;
    let mut degree: Option<u32> = None;
    let mut pairs = Vec::new();
    for (exp, c) in sparse.terms.iter() {
        let d: u32 = exp.iter().sum();
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(PolyError::Degree(format!(
                    "expression mixes degrees {prev} and {d}"
                )))
            }
            _ => {}
        }
        let coeff = F::from_complex(c).ok_or_else(|| {
            PolyError::Coefficient(format!("`{}` outside the declared field", c.render()))
        })?;
        pairs.push((*exp, coeff));
    }
    TernaryForm::new(pairs)
}

/// Parses a constant expression over `mu` and `i` into the full extension.
pub fn parse_element(text: &str) -> Result<ComplexExtElement, PolyError> {
    let sparse = parse_sparse(text, &[])?;
    sparse.as_constant().ok_or(PolyError::Degree(
        "expected a constant element, found variables".into(),
    ))
}

fn monomial_text(exp: &[u32; 3], vars: &[&str]) -> String {
    let mut parts = Vec::new();
    for (axis, &e) in exp.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[axis].to_string()),
            _ => parts.push(format!("{}^{}", vars[axis], e)),
        }
    }
    parts.join("*")
}

/// Splits a coefficient into a display sign and magnitude text. The sign
/// choice uses the distinguished embedding (display only — the magnitude is
/// exact either way); texts with operator structure are parenthesized.
fn coeff_display<F: Field>(c: &F) -> (bool, String) {
    let mut key = c.approx();
    if key == 0.0 {
        key = c.approx_im();
    }
    let negative = key < 0.0;
    let shown = if negative { c.neg() } else { c.clone() };
    let text = shown.render();
    let needs_parens = text
        .chars()
        .any(|ch| matches!(ch, ' ' | '+' | '-' | '*' | '/'));
    if needs_parens {
        (negative, format!("({text})"))
    } else {
        (negative, text)
    }
}

/// Canonical text of a form: terms ordered by ascending `(e2, e1)`,
/// magnitude-one coefficients elided on nonconstant monomials.
pub fn print_form<F: Field>(form: &TernaryForm<F>, vars: &[&str]) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (exp, c) in form.sorted_terms() {
        let (negative, text) = coeff_display(&c);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = monomial_text(&exp, vars);
        let magnitude_one = if negative { c.neg() } else { c.clone() } == F::one();
        if mono.is_empty() {
            out.push_str(&text);
        } else if magnitude_one {
            out.push_str(&mono);
        } else {
            out.push_str(&text);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Canonical text of a field element (delegates to the field renderer).
pub fn print_element<F: Field>(c: &F) -> String {
    c.render()
}

/// Convenience: the standard variable names of the pipeline.
pub const XVARS: [&str; 3] = ["x0", "x1", "x2"];
