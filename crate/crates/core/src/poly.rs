//! Sparse multivariate polynomials over Q and their text format.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := var ['^' nat]
//! coeff  := ['-'] nat ['/' nat]
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Poly {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn monomial(exp: Exponent, c: BigRational) -> Poly {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, BigRational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Single term with nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&a, x)| acc * pow_rat(x, a))
            })
            .sum()
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * BigRational::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.extend(std::iter::repeat_n(0, extra));
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables that do not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Poly> {
        if self.terms.keys().any(|e| e[nvars..].iter().any(|&a| a != 0)) {
            return None;
        }
        Some(Poly {
            nvars,
            terms: self.terms.iter().map(|(e, c)| (e[..nvars].to_vec(), c.clone())).collect(),
        })
    }

    /// Componentwise minimum of the exponents (the largest monomial factor).
    pub fn monomial_content(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![0; self.nvars] };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    /// Divides by the monomial `x^m`, which must divide every term.
    pub fn div_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Terms in display order: total degree descending, then exponent
    /// descending lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| display_order(b.0, a.0));
        v
    }

    /// Renders in the grammar accepted by [`parse_poly`].
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&a, _)| a > 0)
                .map(|(&a, n)| if a == 1 { n.as_ref().to_string() } else { format!("{}^{a}", n.as_ref()) })
                .collect();
            if factors.is_empty() {
                let _ = write!(s, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

fn display_order(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

/// Default variable names `prefix1 .. prefixN`.
pub fn numbered_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '/' => out.push((start, Tok::Slash)),
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            _ if c.is_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
                continue;
            }
            _ => return Err(Error::Parse { pos: start, msg: format!("unexpected character `{c}`") }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a natural number"),
        }
    }

    fn factor(&mut self, exp: &mut Exponent) -> Result<()> {
        let name = match self.peek() {
            Some(Tok::Ident(name)) => name.clone(),
            _ => return self.err("expected a variable"),
        };
        let Some(idx) = self.vars.iter().position(|v| *v == name) else {
            return Err(Error::UnknownVariable(name));
        };
        self.pos += 1;
        let mut power = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("malformed exponent"),
            };
            power = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
            self.pos += 1;
        }
        exp[idx] = exp[idx].checked_add(power).ok_or(Error::ExponentOverflow)?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Exponent, BigRational)> {
        let mut coeff = BigRational::one();
        let mut exp = vec![0u32; self.vars.len()];
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            coeff = -coeff;
        }
        if let Some(Tok::Num(_)) = self.peek() {
            let num = self.nat()?;
            let mut c = BigRational::from_integer(num);
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let den = self.nat()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                c /= BigRational::from_integer(den);
            }
            coeff *= c;
            if self.peek() != Some(&Tok::Star) {
                return Ok((exp, coeff));
            }
            self.pos += 1;
        }
        self.factor(&mut exp)?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            self.factor(&mut exp)?;
        }
        Ok((exp, coeff))
    }

    fn poly(&mut self) -> Result<Poly> {
        if self.toks.is_empty() {
            return self.err("empty input");
        }
        let mut p = Poly::zero(self.vars.len());
        let (e, c) = self.term()?;
        p.add_term(e, c);
        loop {
            let sign = match self.peek() {
                None => break,
                Some(Tok::Plus) => BigRational::one(),
                Some(Tok::Minus) => -BigRational::one(),
                Some(_) => return self.err("expected `+` or `-`"),
            };
            self.pos += 1;
            let (e, c) = self.term()?;
            p.add_term(e, c * sign);
        }
        Ok(p)
    }
}

/// Parses a polynomial over the declared variables. Repeated monomials are
/// merged by adding coefficients.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.chars().count(), vars };
    parser.poly()
}
