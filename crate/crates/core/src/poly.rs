//! Sparse graded multivariate polynomials over a [`FieldConfig`].
//!
//! Polynomials are immutable values holding a shared ring handle and a term
//! list kept strictly decreasing in the ring's monomial order, with no zero
//! coefficients; equality is structural. The text syntax (`x^2*y + 2*z^3`)
//! is shared by the CLI, golden files and error messages.

use crate::field::{FieldConfig, FieldElement};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A monic monomial: exponent vector plus cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial { exps, degree }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
            degree: 0,
        }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial::new(self.exps.iter().map(|&e| e * k).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum OrderKind {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic.
    Lex,
}

/// A monomial order: grevlex or lex, refined by a variable priority
/// permutation (`priority[0]` is the greatest variable index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(num_vars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            priority: (0..num_vars).collect(),
        }
    }

    pub fn lex(num_vars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..num_vars).collect(),
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            assert!(v < priority.len() && !seen[v], "priority is not a permutation");
            seen[v] = true;
        }
        MonomialOrder { kind, priority }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // last position (in priority order) where they differ:
                // the smaller exponent wins
                for &v in self.priority.iter().rev() {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Lex => {
                for &v in self.priority.iter() {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Ring metadata: coefficient field, variable names and the monomial order.
/// Immutable after construction; shared by every polynomial via `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FieldConfig,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: FieldConfig, vars: Vec<String>) -> Ring {
        let order = MonomialOrder::grevlex(vars.len());
        Self::with_order(field, vars, order)
    }

    pub fn with_order(field: FieldConfig, vars: Vec<String>, order: MonomialOrder) -> Ring {
        assert!(!vars.is_empty(), "ring needs at least one variable");
        assert_eq!(order.priority.len(), vars.len());
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vars.len(), "duplicate variable names");
        Arc::new(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A sparse polynomial: terms sorted strictly decreasing in the ring order.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::one(ring.num_vars()), c)],
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::from_term(ring, Monomial::var(ring.num_vars(), i), ring.field().one())
    }

    pub fn from_term(ring: &Ring, m: Monomial, c: FieldElement) -> Self {
        assert_eq!(m.exponents().len(), ring.num_vars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(m, c)],
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs; sorts and merges.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, FieldElement)>) -> Self {
        let mut terms = terms;
        let order = ring.order().clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = ring.field().add(lc, &c);
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: Arc::clone(ring),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomial ring mismatch"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`. Order is preserved, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        self.mul_term(m, &self.ring.field().one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// `f^p` via the Frobenius: every coefficient to the `p`-th power, every
    /// exponent multiplied by `p`. Valid in characteristic `p` only, which is
    /// the only characteristic this crate supports.
    pub fn pth_power(&self) -> Polynomial {
        let field = self.ring.field();
        let p = field.characteristic() as u16;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.pow(p), field.frobenius(c)))
            .collect();
        // monomial order is preserved under raising exponents to a common power
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Kronecker pairing: sum over shared monomials of the coefficient
    /// products. Bilinear, symmetric.
    pub fn kronecker_pairing(&self, other: &Polynomial) -> FieldElement {
        self.check_ring(other);
        let field = self.ring.field();
        let order = self.ring.order();
        let mut acc = field.zero();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => i += 1,
                Ordering::Less => j += 1,
                Ordering::Equal => {
                    acc = field.add(&acc, &field.mul(ca, cb));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn coefficient_of(&self, m: &Monomial) -> FieldElement {
        for (tm, tc) in &self.terms {
            if tm == m {
                return tc.clone();
            }
        }
        self.ring.field().zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Total degree; `None` is the "minus infinity" degree of the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Scale so the leading coefficient is 1. No-op on zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field().inv(c).expect("nonzero leading coeff");
                self.scale(&inv)
            }
        }
    }
}

/// All `C(c+m-1, m-1)` monic monomials of degree `c` in `m` variables,
/// sorted decreasing in the ring's monomial order.
pub fn monomials_of_degree(ring: &Ring, c: u32) -> Vec<Monomial> {
    let m = ring.num_vars();
    let mut out = Vec::new();
    let mut current = vec![0u16; m];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining as u16;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[pos] = e as u16;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, c);
    let order = ring.order();
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

/// Display in the shared text syntax: `x^2*y + 2*z^3`, coefficients in the
/// field serialization. Canonical residues mean no '-' ever appears.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = self.ring.field().one();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = format_monomial(self.ring.vars(), m);
            match (*c == one, mono.as_str()) {
                (true, "1") => write!(f, "1")?,
                (true, s) => write!(f, "{}", s)?,
                (false, "1") => write!(f, "{}", c.serialize())?,
                (false, s) => write!(f, "{}*{}", c.serialize(), s)?,
            }
        }
        Ok(())
    }
}

pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Int(u64),
    Ident(String),
    Bracket(Vec<u32>),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'[' => {
                self.pos += 1;
                let mut entries = Vec::new();
                loop {
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                        self.pos += 1;
                    }
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if self.pos == start {
                        return Err(self.err("expected digit in coefficient vector"));
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    entries.push(
                        text.parse::<u32>()
                            .map_err(|_| self.err("coefficient too large"))?,
                    );
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                        self.pos += 1;
                    }
                    match self.src.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
                Ok(Tok::Bracket(entries))
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(
                    text.parse::<u64>().map_err(|_| self.err("integer too large"))?,
                ))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Tok::Ident(
                    std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .to_string(),
                ))
            }
            other => Err(self.err(format!("unexpected character '{}'", other as char))),
        }
    }
}

/// Parse the text syntax: terms joined by `+`/`-`, `*` for products, `^` for
/// powers; coefficients are decimal residues or bracketed vectors.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(text);
    let field = ring.field();
    let mut terms: Vec<(Monomial, FieldElement)> = Vec::new();
    let mut tok = lx.next()?;
    if tok == Tok::End {
        return Err(lx.err("empty polynomial"));
    }
    loop {
        // sign
        let mut negative = false;
        loop {
            match tok {
                Tok::Plus => tok = lx.next()?,
                Tok::Minus => {
                    negative = !negative;
                    tok = lx.next()?;
                }
                _ => break,
            }
        }
        // one term: product of factors
        let mut coeff = field.one();
        let mut exps = vec![0u16; ring.num_vars()];
        let mut saw_factor = false;
        loop {
            match &tok {
                Tok::Int(n) => {
                    coeff = field.mul(&coeff, &field.from_u64(*n));
                    saw_factor = true;
                    tok = lx.next()?;
                }
                Tok::Bracket(v) => {
                    if v.len() != field.extension_degree() {
                        return Err(lx.err(format!(
                            "coefficient vector has {} entries, field has degree {}",
                            v.len(),
                            field.extension_degree()
                        )));
                    }
                    coeff = field.mul(&coeff, &field.from_coeffs(v));
                    saw_factor = true;
                    tok = lx.next()?;
                }
                Tok::Ident(name) => {
                    let idx = ring
                        .var_index(name)
                        .ok_or_else(|| lx.err(format!("unknown variable '{}'", name)))?;
                    let mut power = 1u64;
                    tok = lx.next()?;
                    if tok == Tok::Caret {
                        match lx.next()? {
                            Tok::Int(n) => {
                                power = n;
                                tok = lx.next()?;
                            }
                            _ => return Err(lx.err("expected integer exponent after '^'")),
                        }
                    }
                    if power > u64::from(u16::MAX) {
                        return Err(lx.err("exponent too large"));
                    }
                    exps[idx] += power as u16;
                    saw_factor = true;
                }
                _ => break,
            }
            if tok == Tok::Star {
                tok = lx.next()?;
                continue;
            }
            match tok {
                Tok::Int(_) | Tok::Ident(_) | Tok::Bracket(_) | Tok::Caret => {
                    return Err(lx.err("expected '*', '+', '-' or end of input"))
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(lx.err("expected a term"));
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        terms.push((Monomial::new(exps), coeff));
        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => continue,
            _ => return Err(lx.err("expected '+', '-' or end of input")),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parse a single monic monomial (e.g. `x*y^2` or `1`).
pub fn parse_monomial(ring: &Ring, text: &str) -> Result<Monomial, ParseError> {
    let p = parse_polynomial(ring, text)?;
    let err = || ParseError {
        col: 1,
        msg: "expected a single monic monomial".to_string(),
    };
    if p.num_terms() != 1 {
        return Err(err());
    }
    let (m, c) = &p.terms()[0];
    if *c != ring.field().one() {
        return Err(err());
    }
    Ok(m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn f3_xyz() -> Ring {
        PolyRing::new(
            FieldConfig::prime(3).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        )
    }

    fn parse(ring: &Ring, s: &str) -> Polynomial {
        parse_polynomial(ring, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let ring = f3_xyz();
        let a = parse(&ring, "x*y + z^2");
        let b = parse(&ring, "x*y - z^2");
        assert_eq!(a.mul(&b), parse(&ring, "x^2*y^2 - z^4"));
    }

    #[test]
    fn add_zero_is_identity() {
        let ring = f3_xyz();
        let f = parse(&ring, "2*x^2 + y*z");
        assert_eq!(f.add(&Polynomial::zero(&ring)), f);
    }

    #[test]
    fn char_2_square() {
        let ring = PolyRing::new(
            FieldConfig::prime(2).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let f = parse(&ring, "x*y + z^2");
        assert_eq!(f.mul(&f), parse(&ring, "x^2*y^2 + z^4"));
        assert_eq!(f.pth_power(), parse(&ring, "x^2*y^2 + z^4"));
    }

    #[test]
    fn kronecker_basics() {
        let ring = f3_xyz();
        let x = parse(&ring, "x");
        let y = parse(&ring, "y");
        assert_eq!(x.kronecker_pairing(&x), ring.field().one());
        assert!(x.kronecker_pairing(&y).is_zero());
        let f = parse(&ring, "x*y + z^2");
        assert_eq!(f.kronecker_pairing(&parse(&ring, "x*y")), ring.field().one());
    }

    #[test]
    fn kronecker_bilinear_expansion_f5() {
        let ring = PolyRing::new(
            FieldConfig::prime(5).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let f = parse(&ring, "2*x*y + z^2");
        let g = parse(&ring, "x*y + 2*z^2");
        assert_eq!(f.kronecker_pairing(&g), ring.field().from_u64(4));
    }

    #[test]
    fn pth_power_matches_repeated_multiplication() {
        let cfg = FieldConfig::new(3, 2).unwrap();
        let ring = PolyRing::new(cfg, vec!["x".into(), "y".into()]);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..100 {
            let terms: Vec<(Monomial, FieldElement)> = (0..5)
                .map(|_| {
                    let e0 = rng.random_range(0..4u16);
                    let e1 = rng.random_range(0..4u16);
                    (Monomial::new(vec![e0, e1]), ring.field().random_element(&mut rng))
                })
                .collect();
            let f = Polynomial::from_terms(&ring, terms);
            assert_eq!(f.pth_power(), f.pow(3));
        }
    }

    #[test]
    fn pth_power_zero_and_extension_scalar() {
        let ring = f3_xyz();
        assert!(Polynomial::zero(&ring).pth_power().is_zero());

        let cfg = FieldConfig::new(3, 2).unwrap();
        let ring2 = PolyRing::new(cfg, vec!["x".into()]);
        let a = ring2.field().gen();
        let f = Polynomial::from_term(&ring2, Monomial::var(1, 0), a.clone());
        let cube = f.pth_power();
        let expected = Polynomial::from_term(
            &ring2,
            Monomial::new(vec![3]),
            ring2.field().pow(&a, 3),
        );
        assert_eq!(cube, expected);
        assert_eq!(cube, f.pow(3));
    }

    #[test]
    fn monomial_enumeration() {
        let ring = f3_xyz();
        let ms = monomials_of_degree(&ring, 2);
        assert_eq!(ms.len(), 6);
        // grevlex descending for x > y > z
        let names: Vec<String> = ms.iter().map(|m| format_monomial(ring.vars(), m)).collect();
        assert_eq!(names, vec!["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
        assert_eq!(monomials_of_degree(&ring, 0).len(), 1);
        let ring4 = PolyRing::new(
            FieldConfig::prime(3).unwrap(),
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert_eq!(monomials_of_degree(&ring4, 3).len(), 20);
    }

    #[test]
    fn coefficient_extraction() {
        let ring = f3_xyz();
        let f = parse(&ring, "x*y + z^2");
        assert_eq!(f.coefficient_of(&parse_monomial(&ring, "z^2").unwrap()), ring.field().one());
        assert!(f.coefficient_of(&parse_monomial(&ring, "x^2").unwrap()).is_zero());
        let sq = f.mul(&f);
        assert_eq!(
            sq.coefficient_of(&parse_monomial(&ring, "x*y*z^2").unwrap()),
            ring.field().from_u64(2)
        );
    }

    #[test]
    fn homogeneity_and_degree() {
        let ring = f3_xyz();
        assert!(parse(&ring, "x*y + z^2").is_homogeneous());
        assert_eq!(parse(&ring, "x*y + z^2").degree(), Some(2));
        assert!(!parse(&ring, "x + y^2").is_homogeneous());
        let z = Polynomial::zero(&ring);
        assert!(z.is_homogeneous());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn kronecker_symmetric_bilinear_random() {
        let ring = f3_xyz();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let rand_poly = |rng: &mut ChaCha12Rng| {
            let terms: Vec<(Monomial, FieldElement)> = (0..4)
                .map(|_| {
                    let exps: Vec<u16> = (0..3).map(|_| rng.random_range(0..3u16)).collect();
                    (Monomial::new(exps), ring.field().random_element(rng))
                })
                .collect();
            Polynomial::from_terms(&ring, terms)
        };
        let field = ring.field();
        for _ in 0..100 {
            let f = rand_poly(&mut rng);
            let g = rand_poly(&mut rng);
            let h = rand_poly(&mut rng);
            assert_eq!(f.kronecker_pairing(&g), g.kronecker_pairing(&f));
            assert_eq!(
                f.add(&g).kronecker_pairing(&h),
                field.add(&f.kronecker_pairing(&h), &g.kronecker_pairing(&h))
            );
        }
    }

    #[test]
    fn kronecker_frobenius_compatibility() {
        // (u^p o v^p) = (u o v)^p for monomials of equal degree
        let ring = f3_xyz();
        let field = ring.field();
        for u in monomials_of_degree(&ring, 3) {
            for v in monomials_of_degree(&ring, 3) {
                let up = Polynomial::from_term(&ring, u.clone(), field.one()).pth_power();
                let vp = Polynomial::from_term(&ring, v.clone(), field.one()).pth_power();
                let lhs = up.kronecker_pairing(&vp);
                let rhs = field.frobenius(
                    &Polynomial::from_term(&ring, u.clone(), field.one())
                        .kronecker_pairing(&Polynomial::from_term(&ring, v.clone(), field.one())),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frobenius_is_ring_map_on_polys() {
        let ring = f3_xyz();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let rand_poly = |rng: &mut ChaCha12Rng| {
            let terms: Vec<(Monomial, FieldElement)> = (0..4)
                .map(|_| {
                    let exps: Vec<u16> = (0..3).map(|_| rng.random_range(0..3u16)).collect();
                    (Monomial::new(exps), ring.field().random_element(rng))
                })
                .collect();
            Polynomial::from_terms(&ring, terms)
        };
        for _ in 0..50 {
            let f = rand_poly(&mut rng);
            let g = rand_poly(&mut rng);
            assert_eq!(f.mul(&g).pth_power(), f.pth_power().mul(&g.pth_power()));
            assert_eq!(f.add(&g).pth_power(), f.pth_power().add(&g.pth_power()));
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let ring = f3_xyz();
        for s in ["x^2*y + 2*z^3", "x*y + z^2", "2", "0", "x", "2*x^2*y^2 + x + 1"] {
            let f = parse(&ring, s);
            let g = parse(&ring, &f.to_string());
            assert_eq!(f, g);
        }
        // extension coefficients
        let cfg = FieldConfig::new(3, 2).unwrap();
        let ring2 = PolyRing::new(cfg, vec!["x".into(), "y".into()]);
        let f = parse_polynomial(&ring2, "[1,2]*x^2 + [0,1]*y + [2,0]").unwrap();
        let g = parse_polynomial(&ring2, &f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_errors_carry_position() {
        let ring = f3_xyz();
        let err = parse_polynomial(&ring, "x + w").unwrap_err();
        assert!(err.msg.contains("unknown variable"));
        assert!(err.col >= 5);
        assert!(parse_polynomial(&ring, "").is_err());
        assert!(parse_polynomial(&ring, "x ^").is_err());
        assert!(parse_polynomial(&ring, "x y").is_err());
    }

    #[test]
    fn grevlex_vs_lex() {
        let ring = f3_xyz();
        let ord = ring.order();
        let xy = parse_monomial(&ring, "x*y").unwrap();
        let z2 = parse_monomial(&ring, "z^2").unwrap();
        // grevlex x>y>z: xy > z^2
        assert_eq!(ord.cmp(&xy, &z2), Ordering::Greater);
        let lex = MonomialOrder::lex(3);
        assert_eq!(lex.cmp(&xy, &z2), Ordering::Greater);
        // priority z > y > x flips it
        let zfirst = MonomialOrder::with_priority(OrderKind::Lex, vec![2, 1, 0]);
        assert_eq!(zfirst.cmp(&xy, &z2), Ordering::Less);
        // lex ignores total degree
        let x = parse_monomial(&ring, "x").unwrap();
        let y3 = parse_monomial(&ring, "y^3").unwrap();
        assert_eq!(lex.cmp(&x, &y3), Ordering::Greater);
        assert_eq!(ord.cmp(&x, &y3), Ordering::Less);
    }
}
