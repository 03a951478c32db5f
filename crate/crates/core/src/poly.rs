//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! A [`Poly`] stores its ring context (variable names plus field) and a term
//! list sorted descending under grevlex with no zero coefficients, so equal
//! polynomials have identical representations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// A polynomial ring context: coefficient field plus ordered variable names.
#[derive(Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars
    }
}
impl<F: Field> Eq for PolyRing<F> {}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    /// Variable names must be distinct and match `[a-zA-Z][a-zA-Z0-9_]*`.
    pub fn new(field: F, vars: Vec<String>) -> Result<Arc<PolyRing<F>>> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::Syntax(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Syntax(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field and same variable list (pointer equality short-circuits).
    pub fn compatible(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// Extends the ring by fresh variables (same field).
    pub fn extend(self: &Arc<Self>, extra: &[String]) -> Result<Arc<PolyRing<F>>> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().cloned());
        PolyRing::new(self.field.clone(), vars)
    }

    /// A variable name built from `base` that does not collide with any
    /// existing variable: underscores are appended until it is fresh.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        name
    }
}

/// Builds the zero polynomial in `ring`.
pub fn zero<F: Field>(ring: &Arc<PolyRing<F>>) -> Poly<F> {
    Poly {
        ring: ring.clone(),
        terms: Vec::new(),
    }
}

/// Builds the constant polynomial `c`.
pub fn constant<F: Field>(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Poly<F> {
    let mut terms = Vec::new();
    if !ring.field.is_zero(&c) {
        terms.push((Monomial::one(ring.nvars()), c));
    }
    Poly {
        ring: ring.clone(),
        terms,
    }
}

/// Builds the `i`-th variable as a polynomial.
pub fn var<F: Field>(ring: &Arc<PolyRing<F>>, i: usize) -> Poly<F> {
    Poly {
        ring: ring.clone(),
        terms: vec![(Monomial::var(ring.nvars(), i, 1), ring.field.one())],
    }
}

/// Builds a single-term polynomial.
pub fn term<F: Field>(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Poly<F> {
    assert_eq!(m.arity(), ring.nvars());
    let mut terms = Vec::new();
    if !ring.field.is_zero(&c) {
        terms.push((m, c));
    }
    Poly {
        ring: ring.clone(),
        terms,
    }
}

/// Sparse polynomial; see the module docs for the representation invariants.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::compatible(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    /// Normalizing constructor: merges duplicate monomials, drops zeros, sorts.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, raw: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        let field = ring.field.clone();
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in raw {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity mismatch");
            match acc.remove(&m) {
                Some(prev) => {
                    let s = field.add(&prev, &c);
                    if !field.is_zero(&s) {
                        acc.insert(m, s);
                    }
                }
                None => {
                    if !field.is_zero(&c) {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = acc.into_iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F::Elem> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Leading term under `order`. Storage is grevlex descending, so grevlex
    /// is a constant-time lookup and other orders scan.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        if self.terms.is_empty() {
            return None;
        }
        if *order == MonomialOrder::GrevLex {
            let (m, c) = &self.terms[0];
            return Some((m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    fn check_ring(&self, other: &Poly<F>) -> Result<()> {
        if PolyRing::compatible(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "operands live in different rings ({:?} vs {:?})",
                self.ring.vars, other.ring.vars
            )))
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Result<Poly<F>> {
        self.check_ring(other)?;
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        Ok(Poly::from_terms(&self.ring, raw))
    }

    pub fn sub(&self, other: &Poly<F>) -> Result<Poly<F>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly<F> {
        let f = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), f.mul(k, c)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Poly<F> {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), f.mul(tc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Result<Poly<F>> {
        self.check_ring(other)?;
        let f = self.ring.field.clone();
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.remove(&m) {
                    Some(prev) => {
                        let s = f.add(&prev, &c);
                        if !f.is_zero(&s) {
                            acc.insert(m, s);
                        }
                    }
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = acc.into_iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Poly<F> {
        let mut result = constant(&self.ring, self.ring.field.one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Divides every coefficient by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Poly<F> {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.field.inv(lc);
                self.scale(&inv)
            }
        }
    }

    /// Substitutes `images[i]` for variable `i`; the images live in `target`.
    pub fn substitute(&self, target: &Arc<PolyRing<F>>, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "expected {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("field mismatch in substitution".into()));
        }
        for img in images {
            if !PolyRing::compatible(img.ring(), target) {
                return Err(Error::RingMismatch(
                    "image polynomial not in target ring".into(),
                ));
            }
        }
        // cache powers of each image as needed
        let mut powers: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|img| vec![constant(target, target.field.one()), img.clone()])
            .collect();
        let mut result = zero(target);
        for (m, c) in &self.terms {
            let mut acc = constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i])?;
                    cache.push(next);
                }
                acc = acc.mul(&cache[e as usize])?;
            }
            result = result.add(&acc)?;
        }
        Ok(result)
    }

    /// Re-expresses the polynomial in `target` with variable `i` of this ring
    /// sent to variable `map[i]` of the target.
    pub fn remap_indices(&self, target: &Arc<PolyRing<F>>, map: &[usize]) -> Result<Poly<F>> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("field mismatch in remap".into()));
        }
        if map.len() != self.ring.nvars() {
            return Err(Error::RingMismatch("index map arity mismatch".into()));
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[map[i]] += e;
                }
            }
            raw.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Poly::from_terms(target, raw))
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Every variable actually used must exist in `target`.
    pub fn embed(&self, target: &Arc<PolyRing<F>>) -> Result<Poly<F>> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("field mismatch in embed".into()));
        }
        let mut index_map: Vec<Option<usize>> = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            index_map.push(target.var_index(v));
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match index_map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::UnknownVariable(self.ring.vars[i].clone()));
                    }
                }
            }
            raw.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Poly::from_terms(target, raw))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = field.display_parts(c);
            let mono = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        self.ring.vars[j].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[j], e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if i == 0 {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = qring(&["x", "y"]);
        let x = var(&r, 0);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["u", "v"]);
        let u = var(&r, 0);
        let v = var(&r, 1);
        let prod = u.sub(&v).unwrap().mul(&u.add(&v).unwrap()).unwrap();
        let expect = u.pow(2).sub(&v.pow(2)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn binomial_cube() {
        // (u - v)^3 = u^3 - 3u^2 v + 3u v^2 - v^3
        let r = qring(&["u", "v"]);
        let u = var(&r, 0);
        let v = var(&r, 1);
        let cube = u.sub(&v).unwrap().pow(3);
        let f = Rationals;
        let expect = Poly::from_terms(
            &r,
            vec![
                (Monomial::from_exponents(vec![3, 0]), f.from_int(1)),
                (Monomial::from_exponents(vec![2, 1]), f.from_int(-3)),
                (Monomial::from_exponents(vec![1, 2]), f.from_int(3)),
                (Monomial::from_exponents(vec![0, 3]), f.from_int(-1)),
            ],
        );
        assert_eq!(cube, expect);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let r1 = qring(&["x"]);
        let r2 = qring(&["y"]);
        let x = var(&r1, 0);
        let y = var(&r2, 0);
        assert!(matches!(x.add(&y), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn embed_by_name() {
        let small = qring(&["t"]);
        let big = qring(&["u", "t"]);
        let t = var(&small, 0);
        let embedded = t.pow(3).embed(&big).unwrap();
        assert_eq!(embedded, var(&big, 1).pow(3));
    }
}
