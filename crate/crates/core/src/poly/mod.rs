//! Sparse exact multivariate polynomials over the rationals.
//!
//! Terms live in a BTreeMap keyed by graded-lexicographic monomial order, so
//! equality is structural and iteration order is canonical.

mod div;
pub(crate) mod gcd;
mod text;

pub use div::{divides, exact_div, pseudo_rem};
pub use gcd::{content_wrt, gcd, gcd_many, primitive_part_wrt};
pub use text::{parse_polynomial, ParseError};

use crate::context::Ctx;
use crate::rat::Rational;
use num::{BigInt, Integer, One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector; length always equals the context's indeterminate count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(smallvec::smallvec![0; n])
    }

    pub fn var(n: usize, idx: usize) -> Self {
        let mut m = Self::one(n);
        m.0[idx] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn from_int(ctx: &Ctx, c: i64) -> Self {
        Self::constant(ctx, crate::rat::rat_i64(c))
    }

    pub fn var(ctx: &Ctx, idx: usize) -> Self {
        assert!(idx < ctx.len(), "indeterminate index out of range");
        let mut p = Self::zero(ctx);
        p.terms.insert(Monomial::var(ctx.len(), idx), Rational::one());
        p
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Self {
        Self::var(ctx, ctx.index_of(name).expect("unknown indeterminate"))
    }

    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn same_ctx(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "mixed indeterminate contexts"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_of(&Monomial::one(self.ctx.len()))
    }

    /// Greatest term in graded-lex order; None for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |m| m.degree() as i64)
    }

    /// Degree in one indeterminate; -1 for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> i64 {
        if self.terms.is_empty() {
            return -1;
        }
        self.terms
            .keys()
            .map(|m| m.exp(idx) as i64)
            .max()
            .unwrap()
    }

    /// Indices of indeterminates with positive degree, ascending.
    pub fn active_indets(&self) -> Vec<usize> {
        let n = self.ctx.len();
        let mut seen = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same_ctx(other);
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.same_ctx(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_ctx(other);
        let mut out = Self::zero(&self.ctx);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                out.add_term(ms.mul(mb), cs * cb);
            }
        }
        out
    }

    pub fn mul_rational(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Self::constant(&self.ctx, Rational::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficients as polynomials in the remaining indeterminates:
    /// `p = sum coeffs[i] * v^i`, `coeffs.len() == degree_in(v) + 1`.
    /// The zero polynomial yields an empty vector.
    pub fn coefficients_wrt(&self, v: usize) -> Vec<Polynomial> {
        let d = self.degree_in(v);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![Self::zero(&self.ctx); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_wrt(ctx: &Ctx, v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Self::zero(ctx);
        for (i, c) in coeffs.iter().enumerate() {
            debug_assert!(c.degree_in(v) <= 0, "coefficient involves the carrier");
            for (m, cc) in &c.terms {
                let mut m2 = m.clone();
                m2.0[v] = m2.0[v].checked_add(i as u16).expect("exponent overflow");
                out.add_term(m2, cc.clone());
            }
        }
        out
    }

    pub fn leading_coefficient_wrt(&self, v: usize) -> Polynomial {
        let d = self.degree_in(v);
        if d < 0 {
            return Self::zero(&self.ctx);
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.exp(v) as i64 == d {
                let mut m2 = m.clone();
                m2.0[v] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Substitutes rationals for a subset of indeterminates.
    pub fn evaluate(&self, assignment: &BTreeMap<usize, Rational>) -> Polynomial {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero(&self.ctx);
        // Power cache per assigned indeterminate.
        let mut pows: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (idx, val) in assignment {
            let d = self.degree_in(*idx).max(0) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(Rational::one());
            for i in 1..=d {
                let prev = v[i - 1].clone();
                v.push(prev * val);
            }
            pows.insert(*idx, v);
        }
        for (m, c) in &self.terms {
            let mut c2 = c.clone();
            let mut m2 = m.clone();
            for (idx, pw) in &pows {
                let e = m.exp(*idx) as usize;
                if e > 0 {
                    c2 *= &pw[e];
                    m2.0[*idx] = 0;
                }
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// Full evaluation to a scalar; panics if any active indeterminate is unassigned.
    pub fn evaluate_full(&self, assignment: &BTreeMap<usize, Rational>) -> Rational {
        self.evaluate(assignment)
            .as_constant()
            .expect("evaluation left free indeterminates")
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[v] = e - 1;
                out.add_term(m2, c * crate::rat::rat_i64(e as i64));
            }
        }
        out
    }

    /// Renames indeterminate `v` to `w` (exponents merge if both present).
    pub fn substitute_var(&self, v: usize, w: usize) -> Polynomial {
        assert_ne!(v, w);
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[v];
            m2.0[v] = 0;
            m2.0[w] = m2.0[w].checked_add(e).expect("exponent overflow");
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Substitutes a polynomial for indeterminate `v`.
    pub fn substitute(&self, v: usize, value: &Polynomial) -> Polynomial {
        self.same_ctx(value);
        let coeffs = self.coefficients_wrt(v);
        if coeffs.is_empty() {
            return self.clone();
        }
        // Horner on the coefficient list.
        let mut acc = coeffs.last().unwrap().clone();
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Same polynomial over an extended context whose names start with this
    /// context's names.
    pub fn lift_to(&self, ext: &Ctx) -> Polynomial {
        let n = self.ctx.len();
        assert!(ext.len() >= n && ext.names()[..n] == self.ctx.names()[..n]);
        let mut out = Polynomial::zero(ext);
        for (m, c) in &self.terms {
            let mut e: SmallVec<[u16; 8]> = m.0.clone();
            e.resize(ext.len(), 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of `lift_to`: fails if any exponent outside the prefix is set.
    pub fn restrict_to(&self, base: &Ctx) -> Option<Polynomial> {
        let n = base.len();
        assert!(self.ctx.len() >= n && self.ctx.names()[..n] == base.names()[..n]);
        let mut out = Polynomial::zero(base);
        for (m, c) in &self.terms {
            if m.0[n..].iter().any(|&e| e > 0) {
                return None;
            }
            let e: SmallVec<[u16; 8]> = m.0[..n].iter().copied().collect();
            out.terms.insert(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// `(unit, q)` with `self = unit * q`, where `q` has coprime integer
    /// coefficients and positive leading (graded-lex) coefficient.
    /// The zero polynomial yields `(1, 0)`.
    pub fn integer_normalize(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        // num_gcd > 0 since some coefficient is nonzero.
        let mut unit = Rational::new(num_gcd, den_lcm);
        let mut q = self.mul_rational(&unit.recip());
        if q.leading().unwrap().1.is_negative() {
            q = q.neg();
            unit = -unit;
        }
        (unit, q)
    }

    /// Canonical representative up to nonzero rational constants.
    pub fn canonical(&self) -> Polynomial {
        self.integer_normalize().1
    }

    /// Largest coefficient magnitude (numerator bits + denominator bits), a
    /// cheap size measure for strategy choices.
    pub fn coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

/// Deterministic total order: graded-lex on term sequences from the top.
/// Used for canonical output ordering, not algebra.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
