//! Ideals in polynomial and quotient rings, and the decision procedures
//! built on them: normal-form membership, Rabinowitsch radical membership,
//! elimination, nil-ideal and idempotency tests, subalgebra membership.
//!
//! An ideal always carries its ambient: a polynomial ring together with a
//! (possibly empty) relation ideal. Every Gröbner basis is taken over the
//! union of the ideal's generators and the ambient relations, so membership
//! answers are uniformly "modulo the ambient".

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::order::MonomialOrder;
use crate::poly::{self, Poly, PolyRing};

/// A polynomial ring together with a relation ideal; `relations = ∅` is the
/// free case. Elements of the quotient are represented by polynomials and
/// compared through normal forms.
#[derive(Debug)]
pub struct QuotientRing<F: Field> {
    ring: Arc<PolyRing<F>>,
    relations: Vec<Poly<F>>,
    rel_gb: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(ring: Arc<PolyRing<F>>, relations: Vec<Poly<F>>) -> Result<Arc<QuotientRing<F>>> {
        for r in &relations {
            if !PolyRing::compatible(r.ring(), &ring) {
                return Err(Error::RingMismatch(
                    "relation not in the stated ring".into(),
                ));
            }
        }
        Ok(Arc::new(QuotientRing {
            ring,
            relations,
            rel_gb: OnceLock::new(),
        }))
    }

    /// The free case: no relations.
    pub fn free(ring: Arc<PolyRing<F>>) -> Arc<QuotientRing<F>> {
        QuotientRing::new(ring, Vec::new()).expect("no relations to check")
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn compatible(a: &Arc<QuotientRing<F>>, b: &Arc<QuotientRing<F>>) -> bool {
        Arc::ptr_eq(a, b) || (PolyRing::compatible(&a.ring, &b.ring) && a.relations == b.relations)
    }

    /// Cached grevlex basis of the relation ideal.
    pub fn relations_gb(&self) -> &Arc<GroebnerBasis<F>> {
        self.rel_gb.get_or_init(|| {
            Arc::new(
                GroebnerBasis::new(&self.ring, &self.relations, MonomialOrder::GrevLex)
                    .expect("relations were checked at construction"),
            )
        })
    }

    /// Canonical representative modulo the relations.
    pub fn nf(&self, f: &Poly<F>) -> Result<Poly<F>> {
        self.relations_gb().normal_form(f)
    }

    pub fn is_zero_mod(&self, f: &Poly<F>) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }

    /// `1 = 0` in the quotient.
    pub fn is_zero_ring(&self) -> bool {
        self.relations_gb().is_unit()
    }

    /// Nilpotency in the quotient, decided by Rabinowitsch against the
    /// relation ideal.
    pub fn is_nilpotent(&self, f: &Poly<F>) -> Result<bool> {
        radical_contains_raw(&self.ring, &self.relations, f)
    }

    /// `NF(e^2 - e) = 0` against the relations.
    pub fn is_idempotent(&self, e: &Poly<F>) -> Result<bool> {
        if !PolyRing::compatible(e.ring(), &self.ring) {
            return Err(Error::RingMismatch(
                "idempotency test of foreign element".into(),
            ));
        }
        self.is_zero_mod(&e.mul(e)?.sub(e)?)
    }
}

/// Rabinowitsch: `f ∈ √(gens)` iff `1 ∈ (gens) + (1 - z f)` in one extra
/// variable.
pub(crate) fn radical_contains_raw<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Poly<F>],
    f: &Poly<F>,
) -> Result<bool> {
    if !PolyRing::compatible(f.ring(), ring) {
        return Err(Error::RingMismatch(
            "radical membership of foreign element".into(),
        ));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let z = ring.fresh_name("z_rab");
    let ext = ring.extend(&[z])?;
    let zvar = poly::var(&ext, ext.nvars() - 1);
    let mut ext_gens = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        ext_gens.push(g.embed(&ext)?);
    }
    let one = poly::constant(&ext, ext.field().one());
    ext_gens.push(one.sub(&zvar.mul(&f.embed(&ext)?)?)?);
    let gb = GroebnerBasis::new(&ext, &ext_gens, MonomialOrder::GrevLex)?;
    Ok(gb.is_unit())
}

/// Generator-set combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Power(u32),
}

/// A finitely generated ideal within its ambient quotient ring.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ambient: Arc<QuotientRing<F>>,
    gens: Vec<Poly<F>>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ambient: Arc<QuotientRing<F>>, gens: Vec<Poly<F>>) -> Result<Ideal<F>> {
        for g in &gens {
            if !PolyRing::compatible(g.ring(), ambient.ring()) {
                return Err(Error::RingMismatch("generator not in ambient ring".into()));
            }
        }
        Ok(Ideal {
            ambient,
            gens,
            cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn zero(ambient: Arc<QuotientRing<F>>) -> Ideal<F> {
        Ideal::new(ambient, Vec::new()).expect("no generators to check")
    }

    pub fn unit(ambient: Arc<QuotientRing<F>>) -> Ideal<F> {
        let one = poly::constant(ambient.ring(), ambient.ring().field().one());
        Ideal::new(ambient, vec![one]).expect("constant is in the ring")
    }

    pub fn ambient(&self) -> &Arc<QuotientRing<F>> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    /// Generators of the ideal together with the ambient relations; this is
    /// what every basis is computed from.
    pub fn total_gens(&self) -> Vec<Poly<F>> {
        let mut all = self.gens.clone();
        all.extend(self.ambient.relations().iter().cloned());
        all
    }

    /// Cached reduced basis per order, over the total generator set.
    pub fn gb(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(gb) = cache.get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::new(
            self.ambient.ring(),
            &self.total_gens(),
            order.clone(),
        )?);
        cache.insert(order.clone(), gb.clone());
        Ok(gb)
    }

    pub fn nf(&self, f: &Poly<F>) -> Result<Poly<F>> {
        self.gb(&MonomialOrder::GrevLex)?.normal_form(f)
    }

    /// Ideal membership modulo the ambient relations.
    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }

    /// Radical membership modulo the ambient relations (Rabinowitsch). The
    /// cached reduced basis seeds the extended computation, so repeated
    /// queries against the same ideal stay cheap.
    pub fn radical_contains(&self, f: &Poly<F>) -> Result<bool> {
        let base = self.gb(&MonomialOrder::GrevLex)?;
        radical_contains_raw(self.ambient.ring(), base.generators(), f)
    }

    /// Smallest `n ≤ bound` with `f^n` in the ideal, by iterated normal
    /// forms. `None` when the bound is exhausted.
    pub fn radical_exponent(&self, f: &Poly<F>, bound: u32) -> Result<Option<u32>> {
        let gb = self.gb(&MonomialOrder::GrevLex)?;
        let mut power = gb.normal_form(f)?;
        if power.is_zero() {
            return Ok(Some(1));
        }
        for n in 2..=bound {
            power = gb.normal_form(&power.mul(f)?)?;
            if power.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    fn check_ambient(&self, other: &Ideal<F>) -> Result<()> {
        if QuotientRing::compatible(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(
                "ideals live in different ambient rings".into(),
            ))
        }
    }

    /// Sum, product, or power at the generator-set level.
    pub fn combine(&self, op: IdealOp, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ambient(other)?;
        let gens = match op {
            IdealOp::Sum => {
                let mut g = self.gens.clone();
                g.extend(other.gens.iter().cloned());
                g
            }
            IdealOp::Product => pairwise_products(&self.gens, &other.gens)?,
            IdealOp::Power(n) => {
                if n == 0 {
                    return Ok(Ideal::unit(self.ambient.clone()));
                }
                let mut acc = self.gens.clone();
                for _ in 1..n {
                    acc = pairwise_products(&acc, &self.gens)?;
                }
                acc
            }
        };
        Ideal::new(self.ambient.clone(), gens)
    }

    /// Intersection via the auxiliary-variable trick:
    /// `I ∩ J = (t·I + (1−t)·J + relations) ∩ k[x]`.
    pub fn intersection(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ambient(other)?;
        let ring = self.ambient.ring();
        let tname = ring.fresh_name("t_sect");
        // the auxiliary variable goes first so a block order eliminates it
        let mut vars = vec![tname];
        vars.extend(ring.vars().iter().cloned());
        let ext = PolyRing::new(ring.field().clone(), vars)?;
        let t = poly::var(&ext, 0);
        let one = poly::constant(&ext, ext.field().one());
        let one_minus_t = one.sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.embed(&ext)?)?);
        }
        for h in &other.gens {
            gens.push(one_minus_t.mul(&h.embed(&ext)?)?);
        }
        for r in self.ambient.relations() {
            gens.push(r.embed(&ext)?);
        }
        let eliminated = eliminate_block_raw(&ext, &gens, 1)?;
        let back: Result<Vec<Poly<F>>> = eliminated.iter().map(|g| g.embed(ring)).collect();
        Ideal::new(self.ambient.clone(), back?)
    }

    /// Elimination ideal: generators free of the dropped variables, equal to
    /// the intersection with the subring on the remaining ones.
    pub fn eliminate(&self, drop: &[String]) -> Result<Ideal<F>> {
        let ring = self.ambient.ring();
        for name in drop {
            if ring.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        if drop.is_empty() {
            return Ok(self.clone());
        }
        // permute the dropped variables to the front
        let mut vars: Vec<String> = drop.to_vec();
        for v in ring.vars() {
            if !drop.contains(v) {
                vars.push(v.clone());
            }
        }
        let permuted = PolyRing::new(ring.field().clone(), vars)?;
        let gens: Result<Vec<Poly<F>>> = self
            .total_gens()
            .iter()
            .map(|g| g.embed(&permuted))
            .collect();
        let eliminated = eliminate_block_raw(&permuted, &gens?, drop.len())?;
        let back: Result<Vec<Poly<F>>> = eliminated.iter().map(|g| g.embed(ring)).collect();
        Ideal::new(self.ambient.clone(), back?)
    }

    /// Every element nilpotent in the ambient quotient; since nilpotents form
    /// an ideal it suffices to test the generators.
    pub fn is_nil(&self) -> Result<bool> {
        for g in &self.gens {
            if !self.ambient.is_nilpotent(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the reduced grevlex basis (over the total generators)
    /// consists of monomials.
    pub fn is_monomial(&self) -> Result<bool> {
        let gb = self.gb(&MonomialOrder::GrevLex)?;
        Ok(gb.generators().iter().all(|g| g.is_monomial()))
    }
}

fn pairwise_products<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let p = x.mul(y)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Gröbner basis under the block elimination order, filtered to the
/// generators free of the first `block` variables.
pub(crate) fn eliminate_block_raw<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Poly<F>],
    block: usize,
) -> Result<Vec<Poly<F>>> {
    let gb = GroebnerBasis::new(ring, gens, MonomialOrder::elimination(block))?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.free_of_block(block)))
        .cloned()
        .collect())
}

/// Tag-variable subalgebra membership: `f` lies in the subalgebra of the
/// ambient quotient generated by `gens` iff its normal form against
/// `relations + (w_i - g_i)` under an order eliminating the ring variables is
/// free of them. On success the representation is returned in a fresh ring
/// whose variables are the tags `w1..wm`.
pub fn subalgebra_membership<F: Field>(
    f: &Poly<F>,
    gens: &[Poly<F>],
    ambient: &Arc<QuotientRing<F>>,
) -> Result<Option<Poly<F>>> {
    let ring = ambient.ring();
    if !PolyRing::compatible(f.ring(), ring) {
        return Err(Error::RingMismatch(
            "subalgebra membership of foreign element".into(),
        ));
    }
    for g in gens {
        if !PolyRing::compatible(g.ring(), ring) {
            return Err(Error::RingMismatch(
                "subalgebra generator in foreign ring".into(),
            ));
        }
    }
    let mut tags = Vec::with_capacity(gens.len());
    {
        let mut taken: Vec<String> = ring.vars().to_vec();
        for i in 0..gens.len() {
            let mut name = format!("w{}", i + 1);
            while taken.contains(&name) {
                name.push('_');
            }
            taken.push(name.clone());
            tags.push(name);
        }
    }
    let ext = ring.extend(&tags)?;
    let nring = ring.nvars();
    let mut ext_gens: Vec<Poly<F>> = Vec::new();
    for r in ambient.relations() {
        ext_gens.push(r.embed(&ext)?);
    }
    for (i, g) in gens.iter().enumerate() {
        let w = poly::var(&ext, nring + i);
        ext_gens.push(w.sub(&g.embed(&ext)?)?);
    }
    let gb = GroebnerBasis::new(&ext, &ext_gens, MonomialOrder::elimination(nring))?;
    let nf = gb.normal_form(&f.embed(&ext)?)?;
    if nf.terms().iter().all(|(m, _)| m.free_of_block(nring)) {
        let tag_ring = PolyRing::new(ring.field().clone(), tags)?;
        Ok(Some(nf.embed(&tag_ring)?))
    } else {
        Ok(None)
    }
}

/// Independent oracle for intersections of monomial ideals: pairwise lcms.
#[cfg(test)]
pub(crate) fn monomial_intersection_oracle<F: Field>(
    ambient: &Arc<QuotientRing<F>>,
    a: &[Poly<F>],
    b: &[Poly<F>],
) -> Ideal<F> {
    let ring = ambient.ring();
    let field = ring.field().clone();
    let mut gens: Vec<Poly<F>> = Vec::new();
    for x in a {
        for y in b {
            let (mx, _) = x.terms().first().expect("monomial");
            let (my, _) = y.terms().first().expect("monomial");
            let l = poly::term(ring, mx.lcm(my), field.one());
            if !gens.contains(&l) {
                gens.push(l);
            }
        }
    }
    Ideal::new(ambient.clone(), gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::poly_parse;

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn free_ideal(ambient: &Arc<QuotientRing<Rationals>>, gens: &[&str]) -> Ideal<Rationals> {
        let parsed = gens
            .iter()
            .map(|t| poly_parse(t, ambient.ring()).unwrap())
            .collect();
        Ideal::new(ambient.clone(), parsed).unwrap()
    }

    #[test]
    fn combine_examples() {
        let amb = QuotientRing::free(qring(&["x", "y"]));
        let ix = free_ideal(&amb, &["x"]);
        let iy = free_ideal(&amb, &["y"]);
        let sum = ix.combine(IdealOp::Sum, &iy).unwrap();
        assert_eq!(sum.gens().len(), 2);

        let ixy = free_ideal(&amb, &["x", "y"]);
        let prod = ixy.combine(IdealOp::Product, &ixy).unwrap();
        let expect: Vec<_> = ["x^2", "x*y", "y^2"]
            .iter()
            .map(|t| poly_parse(t, amb.ring()).unwrap())
            .collect();
        assert_eq!(prod.gens(), expect.as_slice());

        let amb_uv = QuotientRing::free(qring(&["u", "v"]));
        let iuv = free_ideal(&amb_uv, &["u^2", "v^2"]);
        let sq = iuv.combine(IdealOp::Power(2), &iuv).unwrap();
        let expect: Vec<_> = ["u^4", "u^2*v^2", "v^4"]
            .iter()
            .map(|t| poly_parse(t, amb_uv.ring()).unwrap())
            .collect();
        assert_eq!(sq.gens(), expect.as_slice());

        let unit = iuv.combine(IdealOp::Power(0), &iuv).unwrap();
        assert!(unit.gb(&MonomialOrder::GrevLex).unwrap().is_unit());
    }

    #[test]
    fn intersection_examples() {
        let amb = QuotientRing::free(qring(&["x", "y"]));
        let ix = free_ideal(&amb, &["x"]);
        let iy = free_ideal(&amb, &["y"]);
        let meet = ix.intersection(&iy).unwrap();
        assert!(meet
            .contains(&poly_parse("x*y", amb.ring()).unwrap())
            .unwrap());
        assert!(!meet
            .contains(&poly_parse("x", amb.ring()).unwrap())
            .unwrap());

        let i2 = free_ideal(&amb, &["x^2"]);
        let nested = i2.intersection(&ix).unwrap();
        assert!(nested
            .contains(&poly_parse("x^2", amb.ring()).unwrap())
            .unwrap());
        assert!(!nested
            .contains(&poly_parse("x", amb.ring()).unwrap())
            .unwrap());

        // (x, y) ∩ (x, y-1) = (x, y^2 - y); check both inclusions by membership
        let a = free_ideal(&amb, &["x", "y"]);
        let b = free_ideal(&amb, &["x", "y - 1"]);
        let meet = a.intersection(&b).unwrap();
        for gen in ["x", "y^2 - y"] {
            assert!(meet
                .contains(&poly_parse(gen, amb.ring()).unwrap())
                .unwrap());
        }
        let expected = free_ideal(&amb, &["x", "y^2 - y"]);
        for gen in meet.gens() {
            assert!(expected.contains(gen).unwrap());
        }
    }

    #[test]
    fn intersection_of_monomial_ideals_matches_lcm_oracle() {
        let amb = QuotientRing::free(qring(&["x", "y", "z"]));
        let a = free_ideal(&amb, &["x^2", "y*z"]);
        let b = free_ideal(&amb, &["x*y", "z^3"]);
        let meet = a.intersection(&b).unwrap();
        let oracle = monomial_intersection_oracle(&amb, a.gens(), b.gens());
        for g in oracle.gens() {
            assert!(meet.contains(g).unwrap());
        }
        for g in meet.gens() {
            assert!(oracle.contains(g).unwrap());
        }
    }

    #[test]
    fn elimination_examples() {
        let amb = QuotientRing::free(qring(&["t", "x"]));
        let i = free_ideal(&amb, &["t*x - 1"]);
        let e = i.eliminate(&["t".to_string()]).unwrap();
        assert!(e.gens().is_empty());

        let amb2 = QuotientRing::free(qring(&["t", "x", "y"]));
        let i2 = free_ideal(&amb2, &["x - t^2", "y - t^3"]);
        let e2 = i2.eliminate(&["t".to_string()]).unwrap();
        let cusp = poly_parse("x^3 - y^2", amb2.ring()).unwrap();
        assert_eq!(e2.gens(), std::slice::from_ref(&cusp));

        let same = i2.eliminate(&[]).unwrap();
        assert_eq!(same.gens(), i2.gens());

        assert!(matches!(
            i2.eliminate(&["zz".to_string()]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn radical_membership_cusp_vs_node() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let cusp = free_ideal(&amb, &["u^2 - v^2", "u^3 - v^3"]);
        let f = poly_parse("u - v", amb.ring()).unwrap();
        assert!(cusp.radical_contains(&f).unwrap());
        // membership implies radical membership
        assert!(cusp
            .radical_contains(&poly_parse("u^2 - v^2", amb.ring()).unwrap())
            .unwrap());

        // the node: the zero set contains (1, -1) where u - v = 2 ≠ 0
        let node = free_ideal(&amb, &["u^2 - v^2", "u^3 - u - v^3 + v"]);
        assert!(!node.radical_contains(&f).unwrap());
    }

    #[test]
    fn radical_exponent_examples() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let cusp = free_ideal(&amb, &["u^2 - v^2", "u^3 - v^3"]);
        let f = poly_parse("u - v", amb.ring()).unwrap();
        // (u-v)^3 is the first power inside; independently verified
        assert_eq!(cusp.radical_exponent(&f, 32).unwrap(), Some(3));
        assert_eq!(
            cusp.radical_exponent(&poly_parse("u^2 - v^2", amb.ring()).unwrap(), 32)
                .unwrap(),
            Some(1)
        );

        let eps_ring = qring(&["e"]);
        let amb_eps = QuotientRing::free(eps_ring);
        let sq = free_ideal(&amb_eps, &["e^2"]);
        let e = poly_parse("e", amb_eps.ring()).unwrap();
        assert_eq!(sq.radical_exponent(&e, 32).unwrap(), Some(2));
        assert_eq!(sq.radical_exponent(&e, 1).unwrap(), None);
    }

    #[test]
    fn nil_ideal_examples() {
        // (0) is nil
        let amb = QuotientRing::free(qring(&["x"]));
        assert!(Ideal::zero(amb).is_nil().unwrap());

        // (ε) in Q[ε]/(ε²) is nil
        let ring = qring(&["e"]);
        let rel = poly_parse("e^2", &ring).unwrap();
        let amb = QuotientRing::new(ring, vec![rel]).unwrap();
        let i = free_ideal(&amb, &["e"]);
        assert!(i.is_nil().unwrap());

        // Δ(s) in (Q[s]/(s²−1)) ⊗ (Q[s]/(s²−1)) is not nilpotent
        let ring = qring(&["s", "s_r"]);
        let rels = vec![
            poly_parse("s^2 - 1", &ring).unwrap(),
            poly_parse("s_r^2 - 1", &ring).unwrap(),
        ];
        let amb = QuotientRing::new(ring, rels).unwrap();
        let i = free_ideal(&amb, &["s - s_r"]);
        assert!(!i.is_nil().unwrap());
    }

    #[test]
    fn nil_ideals_closed_under_sum() {
        let ring = qring(&["e", "d"]);
        let rels = vec![
            poly_parse("e^2", &ring).unwrap(),
            poly_parse("d^3", &ring).unwrap(),
        ];
        let amb = QuotientRing::new(ring, rels).unwrap();
        let a = free_ideal(&amb, &["e"]);
        let b = free_ideal(&amb, &["d"]);
        let sum = a.combine(IdealOp::Sum, &b).unwrap();
        assert_eq!(
            sum.is_nil().unwrap(),
            a.is_nil().unwrap() && b.is_nil().unwrap()
        );
        let c = free_ideal(&amb, &["e + 1"]);
        assert!(!a.combine(IdealOp::Sum, &c).unwrap().is_nil().unwrap());
    }

    #[test]
    fn idempotents_in_the_split_tensor() {
        let ring = qring(&["s", "s_r"]);
        let rels = vec![
            poly_parse("s^2 - 1", &ring).unwrap(),
            poly_parse("s_r^2 - 1", &ring).unwrap(),
        ];
        let amb = QuotientRing::new(ring, rels).unwrap();
        let one = poly_parse("1", amb.ring()).unwrap();
        assert!(amb.is_idempotent(&one).unwrap());
        let e = poly_parse("1/2 - 1/2*s*s_r", amb.ring()).unwrap();
        assert!(amb.is_idempotent(&e).unwrap());

        let dual = QuotientRing::new(
            qring(&["e"]),
            vec![poly_parse("e^2", &qring(&["e"])).unwrap()],
        )
        .unwrap();
        let eps = poly_parse("e", dual.ring()).unwrap();
        assert!(!dual.is_idempotent(&eps).unwrap());
    }

    #[test]
    fn subalgebra_membership_examples() {
        let amb = QuotientRing::free(qring(&["t"]));
        let gens = vec![
            poly_parse("t^2", amb.ring()).unwrap(),
            poly_parse("t^3", amb.ring()).unwrap(),
        ];
        // f = g1 yields the first tag
        let rep = subalgebra_membership(&gens[0], &gens, &amb)
            .unwrap()
            .unwrap();
        assert_eq!(rep.to_string(), "w1");
        // t itself is unreachable: odd degree one
        let t = poly_parse("t", amb.ring()).unwrap();
        assert!(subalgebra_membership(&t, &gens, &amb).unwrap().is_none());
        // t^5 = t^2 * t^3
        let t5 = poly_parse("t^5", amb.ring()).unwrap();
        let rep = subalgebra_membership(&t5, &gens, &amb).unwrap().unwrap();
        assert_eq!(rep.to_string(), "w1*w2");
    }

    #[test]
    fn membership_is_independent_of_the_generating_set() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let a = free_ideal(&amb, &["u^2 - v^2", "u^3 - v^3"]);
        // same ideal, redundant generators
        let b = free_ideal(
            &amb,
            &["u^2 - v^2", "u^3 - v^3", "u^5 - u^2*v^3 - v^2*u^3 + v^5"],
        );
        for probe in ["u - v", "u^2 - v^2", "u^4 - v^4", "u*v", "1"] {
            let f = poly_parse(probe, amb.ring()).unwrap();
            assert_eq!(a.contains(&f).unwrap(), b.contains(&f).unwrap());
        }
    }
}
