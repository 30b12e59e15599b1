//! Multivariate polynomials over ℚ in `x0..x{n-1}` and optionally one
//! parameter `t`, plus the expression parser used by input files.
//!
//! Terms are kept in graded lexicographic order with
//! `x0 > x1 > ... > x{n-1} > t`; the leading term is the largest.
//! The parameter has projective degree zero: homogeneity audits ignore it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::qlinalg::Rational;

/// Largest exponent literal accepted by [`parse_poly`].
pub const MAX_EXPONENT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent overflow at byte {pos} (limit {MAX_EXPONENT})")]
    ExponentOverflow { pos: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("all input polynomials are zero")]
    AllZero,
}

/// Exponent vector; the parameter, when present, is the last slot.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, rhs: &Self) -> Self {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    has_param: bool,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, has_param: bool) -> Self {
        MultiPoly {
            nvars,
            has_param,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, nvars: usize, has_param: bool) -> Self {
        let mut p = Self::zero(nvars, has_param);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.width()), c);
        }
        p
    }

    pub fn one(nvars: usize, has_param: bool) -> Self {
        Self::constant(Rational::one(), nvars, has_param)
    }

    /// The coordinate `x_i`.
    pub fn var(i: usize, nvars: usize, has_param: bool) -> Self {
        assert!(i < nvars, "variable x{i} out of range");
        Self::monomial_term(i, nvars, has_param)
    }

    /// The parameter `t`.
    pub fn param(nvars: usize) -> Self {
        Self::monomial_term(nvars, nvars, true)
    }

    fn monomial_term(slot: usize, nvars: usize, has_param: bool) -> Self {
        let mut p = Self::zero(nvars, has_param);
        let mut e = vec![0; p.width()];
        e[slot] = 1;
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms(nvars: usize, has_param: bool, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars, has_param);
        for (e, c) in terms {
            assert_eq!(e.len(), p.width(), "exponent vector has wrong length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn has_param(&self) -> bool {
        self.has_param
    }

    /// Number of exponent slots, counting the parameter.
    pub fn width(&self) -> usize {
        self.nvars + self.has_param as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn lead_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn same_ring(&self, rhs: &Self) -> bool {
        self.nvars == rhs.nvars && self.has_param == rhs.has_param
    }

    pub fn ring_label(&self) -> String {
        if self.has_param {
            format!("{} vars + t", self.nvars)
        } else {
            format!("{} vars", self.nvars)
        }
    }

    fn check_ring(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.same_ring(rhs) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.ring_label(),
                right: rhs.ring_label(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        Ok(self * rhs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.has_param);
        }
        MultiPoly {
            nvars: self.nvars,
            has_param: self.has_param,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars, self.has_param);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `∂/∂(slot)`; slot `nvars` is the parameter.
    pub fn partial_derivative(&self, slot: usize) -> Self {
        assert!(slot < self.width(), "derivative slot {slot} out of range");
        let mut out = Self::zero(self.nvars, self.has_param);
        for (m, c) in &self.terms {
            let e = m.0[slot];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[slot] -= 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Evaluates at a full point (parameter value last when present).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.width(), "evaluation point has wrong length");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `t = t0`, returning a polynomial without parameter.
    pub fn specialize_param(&self, t0: &Rational) -> Self {
        if !self.has_param {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars, false);
        for (m, c) in &self.terms {
            let e = m.0[self.nvars] as usize;
            out.add_term(Monomial(m.0[..self.nvars].to_vec()), c * num_traits::pow(t0.clone(), e));
        }
        out
    }

    /// Same polynomial viewed in the ring with a parameter.
    pub fn with_param(&self) -> Self {
        if self.has_param {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            has_param: true,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sets `x_var = 0` and removes the variable, renumbering the rest.
    pub fn restrict_to_zero(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable x{var} out of range");
        let mut out = Self::zero(self.nvars - 1, self.has_param);
        for (m, c) in &self.terms {
            if m.0[var] != 0 {
                continue;
            }
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Common degree in the `x` variables, ignoring `t`; `None` for the
    /// zero polynomial or a non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.0[..self.nvars].iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Degree in one slot (zero for the zero polynomial).
    pub fn degree_in(&self, slot: usize) -> u32 {
        self.terms.keys().map(|m| m.0[slot]).max().unwrap_or(0)
    }

    /// Coefficient of `slot^k` as a polynomial free of that slot.
    pub fn coeff_in(&self, slot: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.has_param);
        for (m, c) in &self.terms {
            if m.0[slot] == k {
                let mut m2 = m.clone();
                m2.0[slot] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    fn slot_power(&self, slot: usize, k: u32) -> Self {
        let mut e = vec![0; self.width()];
        e[slot] = k;
        Self::from_terms(self.nvars, self.has_param, [(e, Rational::one())])
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(self.same_ring(d), "variable count mismatch in division");
        let (dm, dc) = d.lead_term().expect("division by the zero polynomial");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.has_param);
        while let Some((lm, lc)) = rem.lead_term() {
            let m = lm.div(&dm)?;
            let c = lc / &dc;
            let mut step = Self::zero(self.nvars, self.has_param);
            step.terms.insert(m.clone(), c.clone());
            rem = &rem - &(&step * d);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rational::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        assert!(self.same_ring(rhs), "variable count mismatch in gcd");
        gcd_rec(self, rhs).monic()
    }

    fn occurring_slot(&self) -> Option<usize> {
        (0..self.width()).find(|&s| self.degree_in(s) > 0)
    }

    fn content_in(&self, slot: usize) -> Self {
        let d = self.degree_in(slot);
        (0..=d)
            .map(|k| self.coeff_in(slot, k))
            .filter(|c| !c.is_zero())
            .fold(Self::zero(self.nvars, self.has_param), |acc, c| gcd_rec(&acc, &c))
    }

    fn primitive_in(&self, slot: usize) -> Self {
        let c = self.content_in(slot);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `g` with respect to `slot`.
    fn pseudo_rem(&self, g: &Self, slot: usize) -> Self {
        let dg = g.degree_in(slot);
        let lg = g.coeff_in(slot, dg);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(slot) >= dg {
            let dr = r.degree_in(slot);
            let lr = r.coeff_in(slot, dr);
            let shift = self.slot_power(slot, dr - dg);
            r = &(&r * &lg) - &(&(&lr * &shift) * g);
        }
        r
    }
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.nvars, a.has_param);
    }
    let slot = a
        .occurring_slot()
        .into_iter()
        .chain(b.occurring_slot())
        .min()
        .expect("non-constant polynomial has a variable");
    if a.degree_in(slot) == 0 {
        return gcd_rec(a, &b.content_in(slot));
    }
    if b.degree_in(slot) == 0 {
        return gcd_rec(&a.content_in(slot), b);
    }
    let ca = a.content_in(slot);
    let cb = b.content_in(slot);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(slot) >= pb.degree_in(slot) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = f.pseudo_rem(&g, slot);
        if r.is_zero() {
            break;
        }
        if r.degree_in(slot) == 0 {
            g = MultiPoly::one(a.nvars, a.has_param);
            break;
        }
        f = g;
        g = r.primitive_in(slot);
    }
    &c * &g.primitive_in(slot)
}

/// Splits off the common factor of a list of polynomials.
///
/// Returns the monic gcd `g` and the quotients `p_i / g`.
pub fn content_and_primitive(ps: &[MultiPoly]) -> Result<(MultiPoly, Vec<MultiPoly>), PolyError> {
    let first = ps.iter().find(|p| !p.is_zero()).ok_or(PolyError::AllZero)?;
    let g = ps
        .iter()
        .fold(MultiPoly::zero(first.nvars, first.has_param), |acc, p| {
            if acc.is_zero() {
                p.clone()
            } else if p.is_zero() {
                acc
            } else {
                gcd_rec(&acc, p)
            }
        })
        .monic();
    let reduced = ps
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides every entry"))
        .collect();
    Ok((g, reduced))
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(rhs), "variable count mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(rhs), "variable count mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            has_param: self.has_param,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(rhs), "variable count mismatch in product");
        let mut out = MultiPoly::zero(self.nvars, self.has_param);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let is_unit = m.total_degree() == 0;
            if i == 0 {
                if neg {
                    // A bare "-x0" is not in the grammar, so keep the literal.
                    if is_unit || !a.is_one() {
                        write!(f, "-{a}")?;
                    } else {
                        write!(f, "-1")?;
                    }
                    if !is_unit {
                        write!(f, "*")?;
                    }
                } else if is_unit || !a.is_one() {
                    write!(f, "{a}")?;
                    if !is_unit {
                        write!(f, "*")?;
                    }
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
                if is_unit || !a.is_one() {
                    write!(f, "{a}")?;
                    if !is_unit {
                        write!(f, "*")?;
                    }
                }
            }
            let mut first = true;
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if slot == self.nvars {
                    write!(f, "t")?;
                } else {
                    write!(f, "x{slot}")?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Param,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str, nvars: usize, has_param: bool) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits parse");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &src[start..i];
                let unknown = || PolyError::UnknownVariable {
                    pos: start,
                    name: name.to_string(),
                };
                let tok = if name == "t" {
                    if !has_param {
                        return Err(unknown());
                    }
                    Tok::Param
                } else if let Some(idx) = name.strip_prefix('x') {
                    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(unknown());
                    }
                    match idx.parse::<usize>() {
                        Ok(k) if k < nvars => Tok::Var(k),
                        _ => return Err(unknown()),
                    }
                } else {
                    return Err(unknown());
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                return Err(PolyError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{}`", src[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    has_param: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let Some(Tok::Int(k)) = self.peek().cloned() else {
                return self.err("expected an unsigned integer exponent after `^`");
            };
            self.pos += 1;
            let k = u32::try_from(&k)
                .ok()
                .filter(|k| *k <= MAX_EXPONENT)
                .ok_or(PolyError::ExponentOverflow { pos: at })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly, PolyError> {
        let (n, h) = (self.nvars, self.has_param);
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Int(v)) => {
                        self.pos += 1;
                        self.rational_tail(-v)
                    }
                    _ => self.err("a leading `-` must be followed by an integer literal (write -1*x0, not -x0)"),
                }
            }
            Some(Tok::Int(v)) => {
                self.pos += 1;
                self.rational_tail(v)
            }
            Some(Tok::Var(k)) => {
                self.pos += 1;
                Ok(MultiPoly::var(k, n, h))
            }
            Some(Tok::Param) => {
                self.pos += 1;
                Ok(MultiPoly::param(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn rational_tail(&mut self, num: BigInt) -> Result<MultiPoly, PolyError> {
        let mut value = Rational::from_integer(num);
        if let Some(Tok::Slash) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(d)) if !d.is_zero() => {
                    self.pos += 1;
                    value /= Rational::from_integer(d);
                }
                Some(Tok::Int(_)) => return self.err("zero denominator"),
                _ => return self.err("expected an unsigned integer denominator after `/`"),
            }
        }
        Ok(MultiPoly::constant(value, self.nvars, self.has_param))
    }
}

/// Parses a polynomial expression in `x0..x{nvars-1}` (and `t` when
/// `has_param`).
///
/// Grammar, whitespace-insensitive:
/// ```text
/// expr     := term (('+'|'-') term)*
/// term     := factor ('*' factor)*
/// factor   := base ('^' uint)?
/// base     := rational | var | '(' expr ')'
/// var      := 'x' uint | 't'
/// rational := int ('/' uint)?
/// ```
/// `int` may carry a leading minus; implicit multiplication is rejected.
pub fn parse_poly(src: &str, nvars: usize, has_param: bool) -> Result<MultiPoly, PolyError> {
    let toks = tokenize(src, nvars, has_param)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        nvars,
        has_param,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("expected an operator (implicit multiplication is not allowed)");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{rat, ratio};

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n, false).unwrap()
    }

    #[test]
    fn parses_examples() {
        let f = parse_poly("x1 + t*x2", 6, true).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&[0, 1, 0, 0, 0, 0, 0]), rat(1));
        assert_eq!(f.coeff(&[0, 0, 1, 0, 0, 0, 1]), rat(1));
        assert!(p("0", 3).is_zero());
        assert_eq!(p("(x0+x1)^2 - x0^2 - 2*x0*x1", 2), p("x1^2", 2));
        assert_eq!(p("-3/4*x0 - -1", 1).coeff(&[0]), rat(1));
        assert_eq!(p("-3/4*x0", 1).coeff(&[1]), ratio(-3, 4));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_poly("x0 +", 2, false),
            Err(PolyError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x3", 2, false),
            Err(PolyError::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_poly("t", 2, false),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("y", 2, false),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("2x0", 2, false),
            Err(PolyError::UnknownVariable { .. }) | Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("2 x0", 2, false),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x0^99999999999", 2, false),
            Err(PolyError::ExponentOverflow { pos: 3 })
        ));
        assert!(matches!(
            parse_poly("x0^2000", 2, false),
            Err(PolyError::ExponentOverflow { .. })
        ));
        assert!(matches!(parse_poly("-x0", 2, false), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", 2, false), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("(x0", 2, false), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn printing_is_canonical() {
        let f = p("x1 - x0^2*x1 + 3 - 1/2*x0", 2);
        assert_eq!(f.to_string(), "-1*x0^2*x1 - 1/2*x0 + x1 + 3");
        assert_eq!(p(&f.to_string(), 2), f);
        let g = parse_poly("t*x2 + x1", 3, true).unwrap();
        assert_eq!(g.to_string(), "x2*t + x1");
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x0^2*x1", 3).partial_derivative(0), p("2*x0*x1", 3));
        assert!(p("x0+x1", 3).partial_derivative(2).is_zero());
        assert_eq!(&p("x0+x1", 2) * &p("x0-x1", 2), p("x0^2-x1^2", 2));
    }

    #[test]
    fn mismatched_rings_are_errors() {
        let a = p("x0", 2);
        let b = p("x0", 3);
        assert!(matches!(a.checked_add(&b), Err(PolyError::VariableMismatch { .. })));
        assert!(a.checked_mul(&a).is_ok());
    }

    #[test]
    fn content_examples() {
        let (g, r) = content_and_primitive(&[p("x1*x0", 3), p("x1*x2", 3)]).unwrap();
        assert_eq!(g, p("x1", 3));
        assert_eq!(r, vec![p("x0", 3), p("x2", 3)]);
        let (g, r) = content_and_primitive(&[p("x0", 3), p("x1", 3)]).unwrap();
        assert_eq!(g, p("1", 3));
        assert_eq!(r, vec![p("x0", 3), p("x1", 3)]);
        // 2x0 and 4x0: gcd x0 after unit normalization, quotients in ratio 1:2.
        let (g, r) = content_and_primitive(&[p("2*x0", 3), p("4*x0", 3)]).unwrap();
        assert_eq!(g, p("x0", 3));
        assert_eq!(r, vec![p("2", 3), p("4", 3)]);
        assert_eq!(content_and_primitive(&[p("0", 2)]), Err(PolyError::AllZero));
    }

    #[test]
    fn gcd_multivariate() {
        let a = p("(x0+x1*x2)*(x0-x2)^2*(x1+1)", 3);
        let b = p("(x0+x1*x2)*(x0-x2)*(x1-1)", 3);
        assert_eq!(a.gcd(&b), p("(x0+x1*x2)*(x0-x2)", 3));
        let c = p("x0^2+x1^2", 2);
        assert_eq!(c.gcd(&p("x0+x1", 2)), p("1", 2));
    }

    #[test]
    fn gcd_with_parameter() {
        let a = parse_poly("(x0 + t*x1)*(x1 - t)", 2, true).unwrap();
        let b = parse_poly("(x0 + t*x1)*x0", 2, true).unwrap();
        assert_eq!(a.gcd(&b), parse_poly("x0 + t*x1", 2, true).unwrap());
    }

    #[test]
    fn specialization_and_restriction() {
        let f = parse_poly("x0 + t*x1 + t^2", 2, true).unwrap();
        assert_eq!(f.specialize_param(&rat(2)), p("x0 + 2*x1 + 4", 2));
        assert_eq!(p("x0*x2 + x1 + x2", 3).restrict_to_zero(2), p("x1", 2));
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(parse_poly("x0*t + x1", 2, true).unwrap().homogeneous_degree(), Some(1));
    }
}
