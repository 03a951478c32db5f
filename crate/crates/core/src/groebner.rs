//! Buchberger's algorithm with the coprimality and chain criteria, sugar
//! pair selection, and full interreduction to the unique reduced basis.
//!
//! The engine can optionally track cofactors: every basis element (and any
//! normal form) is then expressible as an explicit combination of the source
//! generators, which is what dependence certificates and the determinant
//! trick need.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{self, Poly, PolyRing};

/// Counters for one basis computation.
#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_skipped_coprime: usize,
    pub pairs_skipped_chain: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

/// Process-wide counters, aggregated into CLI reports. Deterministic under
/// the single-threaded runners.
pub mod global_stats {
    use super::*;

    static COMPUTATIONS: AtomicU64 = AtomicU64::new(0);
    static PAIRS: AtomicU64 = AtomicU64::new(0);
    static MAX_BASIS: AtomicU64 = AtomicU64::new(0);

    #[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
    pub struct Snapshot {
        pub computations: u64,
        pub pairs_considered: u64,
        pub max_basis_size: u64,
    }

    pub fn reset() {
        COMPUTATIONS.store(0, AtomicOrdering::SeqCst);
        PAIRS.store(0, AtomicOrdering::SeqCst);
        MAX_BASIS.store(0, AtomicOrdering::SeqCst);
    }

    pub fn snapshot() -> Snapshot {
        Snapshot {
            computations: COMPUTATIONS.load(AtomicOrdering::SeqCst),
            pairs_considered: PAIRS.load(AtomicOrdering::SeqCst),
            max_basis_size: MAX_BASIS.load(AtomicOrdering::SeqCst),
        }
    }

    pub(super) fn record(stats: &GbStats) {
        COMPUTATIONS.fetch_add(1, AtomicOrdering::SeqCst);
        PAIRS.fetch_add(stats.pairs_considered as u64, AtomicOrdering::SeqCst);
        MAX_BASIS.fetch_max(stats.basis_size as u64, AtomicOrdering::SeqCst);
    }
}

/// Working polynomial: terms sorted descending under the engine order.
#[derive(Clone, Debug)]
struct WorkPoly<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
    sugar: u64,
    rep: Option<Vec<Poly<F>>>,
}

impl<F: Field> WorkPoly<F> {
    fn lt(&self) -> &(Monomial, F::Elem) {
        &self.terms[0]
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn sort_under<C>(mut terms: Vec<(Monomial, C)>, order: &MonomialOrder) -> Vec<(Monomial, C)> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

/// `p - c * m * g` on term lists sorted descending under `order`.
fn sub_mul<F: Field>(
    field: &F,
    order: &MonomialOrder,
    p: &[(Monomial, F::Elem)],
    g: &[(Monomial, F::Elem)],
    m: &Monomial,
    c: &F::Elem,
) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.neg(&field.mul(&g[j].1, c))));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&p[i].1, &field.mul(&g[j].1, c));
                if !field.is_zero(&v) {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(p[i..].iter().cloned());
    for (gm, gc) in &g[j..] {
        out.push((gm.mul(m), field.neg(&field.mul(gc, c))));
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// A reduced Gröbner basis together with its source generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    order: MonomialOrder,
    gens: Vec<Poly<F>>,
    source: Vec<Poly<F>>,
    cofactors: Option<Vec<Vec<Poly<F>>>>,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    /// Computes the reduced basis for the ideal generated by `gens`.
    /// The empty generating set yields the empty basis of the zero ideal.
    pub fn new(
        ring: &Arc<PolyRing<F>>,
        gens: &[Poly<F>],
        order: MonomialOrder,
    ) -> Result<GroebnerBasis<F>> {
        Self::compute(ring, gens, order, false)
    }

    /// Same, but additionally expresses every basis element as an explicit
    /// combination of the source generators.
    pub fn with_cofactors(
        ring: &Arc<PolyRing<F>>,
        gens: &[Poly<F>],
        order: MonomialOrder,
    ) -> Result<GroebnerBasis<F>> {
        Self::compute(ring, gens, order, true)
    }

    fn compute(
        ring: &Arc<PolyRing<F>>,
        gens: &[Poly<F>],
        order: MonomialOrder,
        track: bool,
    ) -> Result<GroebnerBasis<F>> {
        for g in gens {
            if !PolyRing::compatible(g.ring(), ring) {
                return Err(Error::RingMismatch(
                    "generator not in the stated ring".into(),
                ));
            }
        }
        let field = ring.field().clone();
        let mut stats = GbStats::default();
        let nsource = gens.len();
        let unit_rep = |k: usize| -> Option<Vec<Poly<F>>> {
            if !track {
                return None;
            }
            let mut rep = vec![poly::zero(ring); nsource];
            rep[k] = poly::constant(ring, field.one());
            Some(rep)
        };

        let mut basis: Vec<WorkPoly<F>> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let add_to_basis =
            |basis: &mut Vec<WorkPoly<F>>, pairs: &mut Vec<Pair>, mut wp: WorkPoly<F>| {
                // keep the basis monic; scale the representation alongside
                let lc = wp.lt().1.clone();
                if !field.is_one(&lc) {
                    let inv = field.inv(&lc);
                    for t in &mut wp.terms {
                        t.1 = field.mul(&t.1, &inv);
                    }
                    if let Some(rep) = &mut wp.rep {
                        for r in rep.iter_mut() {
                            *r = r.scale(&inv);
                        }
                    }
                }
                let idx = basis.len();
                for (k, other) in basis.iter().enumerate() {
                    let lcm = other.lt().0.lcm(&wp.lt().0);
                    let sugar = (other.sugar + lcm.total_degree() - other.lt().0.total_degree())
                        .max(wp.sugar + lcm.total_degree() - wp.lt().0.total_degree());
                    pairs.push(Pair {
                        i: k,
                        j: idx,
                        lcm,
                        sugar,
                    });
                }
                basis.push(wp);
            };

        for (k, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let wp = WorkPoly {
                terms: sort_under(g.terms().to_vec(), &order),
                sugar: g.total_degree().unwrap_or(0),
                rep: unit_rep(k),
            };
            add_to_basis(&mut basis, &mut pairs, wp);
        }

        while !pairs.is_empty() {
            // sugar strategy with a deterministic total tie-break
            let best = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    a.sugar
                        .cmp(&b.sugar)
                        .then(a.lcm.total_degree().cmp(&b.lcm.total_degree()))
                        .then(a.lcm.cmp(&b.lcm))
                        .then(a.i.cmp(&b.i))
                        .then(a.j.cmp(&b.j))
                })
                .map(|(idx, _)| idx)
                .unwrap();
            let pair = pairs.swap_remove(best);
            stats.pairs_considered += 1;

            let (lti, _) = basis[pair.i].lt();
            let (ltj, _) = basis[pair.j].lt();

            // Buchberger's first criterion: coprime leading monomials
            if lti.coprime(ltj) {
                stats.pairs_skipped_coprime += 1;
                continue;
            }

            // Buchberger's second (chain) criterion: some k with LT(k)
            // dividing the lcm and both companion pairs already treated
            let chain = (0..basis.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && basis[k].lt().0.divides(&pair.lcm)
                    && !pairs.iter().any(|p| {
                        (p.i == pair.i.min(k) && p.j == pair.i.max(k))
                            || (p.i == pair.j.min(k) && p.j == pair.j.max(k))
                    })
            });
            if chain {
                stats.pairs_skipped_chain += 1;
                continue;
            }

            // S-polynomial of the (monic) pair
            let mi = basis[pair.i].lt().0.divide_into(&pair.lcm).unwrap();
            let mj = basis[pair.j].lt().0.divide_into(&pair.lcm).unwrap();
            let spoly_terms = {
                let lhs: Vec<(Monomial, F::Elem)> = basis[pair.i]
                    .terms
                    .iter()
                    .map(|(m, c)| (m.mul(&mi), c.clone()))
                    .collect();
                sub_mul(
                    &field,
                    &order,
                    &lhs,
                    &basis[pair.j].terms,
                    &mj,
                    &field.one(),
                )
            };
            let rep = if track {
                let mut rep = vec![poly::zero(ring); nsource];
                let ri = basis[pair.i].rep.as_ref().unwrap();
                let rj = basis[pair.j].rep.as_ref().unwrap();
                for (k, r) in rep.iter_mut().enumerate() {
                    let a = ri[k].mul_term(&mi, &field.one());
                    let b = rj[k].mul_term(&mj, &field.one());
                    *r = a.sub(&b)?;
                }
                Some(rep)
            } else {
                None
            };
            let spoly = WorkPoly {
                terms: spoly_terms,
                sugar: pair.sugar,
                rep,
            };

            let reduced = reduce_work(&field, &order, spoly, &basis, track, ring)?;
            if reduced.is_zero() {
                stats.zero_reductions += 1;
            } else {
                add_to_basis(&mut basis, &mut pairs, reduced);
            }
        }

        // minimal basis: drop elements whose LT is divisible by another LT
        let mut order_idx: Vec<usize> = (0..basis.len()).collect();
        order_idx.sort_by(|&a, &b| order.cmp(&basis[a].lt().0, &basis[b].lt().0));
        let mut minimal: Vec<WorkPoly<F>> = Vec::new();
        for idx in order_idx {
            let lm = &basis[idx].lt().0;
            if !minimal.iter().any(|h| h.lt().0.divides(lm)) {
                minimal.push(basis[idx].clone());
            }
        }

        // interreduce tails until stable
        loop {
            let mut changed = false;
            for i in 0..minimal.len() {
                let target = minimal[i].clone();
                let others: Vec<WorkPoly<F>> = minimal
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, w)| w.clone())
                    .collect();
                let reduced = reduce_work(&field, &order, target, &others, track, ring)?;
                if reduced.terms != minimal[i].terms {
                    changed = true;
                }
                minimal[i] = reduced;
            }
            if !changed {
                break;
            }
        }
        minimal.retain(|w| !w.is_zero());
        minimal.sort_by(|a, b| order.cmp(&b.lt().0, &a.lt().0));

        stats.basis_size = minimal.len();
        global_stats::record(&stats);

        let mut out_gens = Vec::with_capacity(minimal.len());
        let mut out_cof = if track { Some(Vec::new()) } else { None };
        for w in &minimal {
            out_gens.push(Poly::from_terms(ring, w.terms.clone()));
            if let Some(cof) = &mut out_cof {
                cof.push(w.rep.clone().unwrap());
            }
        }

        Ok(GroebnerBasis {
            ring: ring.clone(),
            order,
            gens: out_gens,
            source: gens.to_vec(),
            cofactors: out_cof,
            stats,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn source(&self) -> &[Poly<F>] {
        &self.source
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// For every basis element, its combination over the source generators.
    /// Present only when built via [`GroebnerBasis::with_cofactors`].
    pub fn basis_cofactors(&self) -> Option<&[Vec<Poly<F>>]> {
        self.cofactors.as_deref()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].as_constant().is_some()
    }

    fn work_basis(&self) -> Vec<WorkPoly<F>> {
        self.gens
            .iter()
            .map(|g| WorkPoly {
                terms: sort_under(g.terms().to_vec(), &self.order),
                sugar: g.total_degree().unwrap_or(0),
                rep: None,
            })
            .collect()
    }

    /// Fully reduced normal form. `NF(f) = 0` iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Poly<F>) -> Result<Poly<F>> {
        if !PolyRing::compatible(f.ring(), &self.ring) {
            return Err(Error::RingMismatch("normal form of foreign element".into()));
        }
        let field = self.ring.field().clone();
        let wp = WorkPoly {
            terms: sort_under(f.terms().to_vec(), &self.order),
            sugar: f.total_degree().unwrap_or(0),
            rep: None,
        };
        let basis = self.work_basis();
        let reduced = reduce_work(&field, &self.order, wp, &basis, false, &self.ring)?;
        Ok(Poly::from_terms(&self.ring, reduced.terms))
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Normal form plus the quotients against the basis elements:
    /// `f = Σ q_i · basis_i + nf`.
    pub fn normal_form_with_quotients(&self, f: &Poly<F>) -> Result<(Poly<F>, Vec<Poly<F>>)> {
        if !PolyRing::compatible(f.ring(), &self.ring) {
            return Err(Error::RingMismatch("normal form of foreign element".into()));
        }
        let field = self.ring.field().clone();
        let basis = self.work_basis();
        let mut quots: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); basis.len()];
        let mut p = sort_under(f.terms().to_vec(), &self.order);
        let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((lm, lc)) = p.first().cloned() {
            let mut hit = None;
            for (k, g) in basis.iter().enumerate() {
                if g.lt().0.divides(&lm) {
                    hit = Some(k);
                    break;
                }
            }
            match hit {
                Some(k) => {
                    let m = basis[k].lt().0.divide_into(&lm).unwrap();
                    let c = field.div(&lc, &basis[k].lt().1);
                    p = sub_mul(&field, &self.order, &p, &basis[k].terms, &m, &c);
                    quots[k].push((m, c));
                }
                None => {
                    remainder.push(p.remove(0));
                }
            }
        }
        let nf = Poly::from_terms(&self.ring, remainder);
        let quots = quots
            .into_iter()
            .map(|q| Poly::from_terms(&self.ring, q))
            .collect();
        Ok((nf, quots))
    }

    /// If `f` lies in the ideal, returns cofactors `c_j` over the source
    /// generators with `f = Σ c_j · source_j`. Requires cofactor tracking.
    pub fn express_over_source(&self, f: &Poly<F>) -> Result<Option<Vec<Poly<F>>>> {
        let reps = self
            .cofactors
            .as_ref()
            .expect("express_over_source requires with_cofactors");
        let (nf, quots) = self.normal_form_with_quotients(f)?;
        if !nf.is_zero() {
            return Ok(None);
        }
        let mut out = vec![poly::zero(&self.ring); self.source.len()];
        for (i, q) in quots.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (j, r) in reps[i].iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                out[j] = out[j].add(&q.mul(r)?)?;
            }
        }
        Ok(Some(out))
    }
}

fn reduce_work<F: Field>(
    field: &F,
    order: &MonomialOrder,
    mut p: WorkPoly<F>,
    basis: &[WorkPoly<F>],
    track: bool,
    ring: &Arc<PolyRing<F>>,
) -> Result<WorkPoly<F>> {
    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut sugar = p.sugar;
    while let Some((lm, lc)) = p.terms.first().cloned() {
        let mut hit = None;
        for (k, g) in basis.iter().enumerate() {
            if g.lt().0.divides(&lm) {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => {
                let m = basis[k].lt().0.divide_into(&lm).unwrap();
                let c = field.div(&lc, &basis[k].lt().1);
                p.terms = sub_mul(field, order, &p.terms, &basis[k].terms, &m, &c);
                sugar = sugar.max(basis[k].sugar + m.total_degree());
                if track {
                    let gr = basis[k].rep.as_ref().expect("tracked basis");
                    let pr = p.rep.as_mut().expect("tracked poly");
                    for (r, g) in pr.iter_mut().zip(gr) {
                        let delta = g.mul_term(&m, &c);
                        *r = r.sub(&delta)?;
                    }
                }
            }
            None => {
                remainder.push(p.terms.remove(0));
            }
        }
    }
    let _ = ring;
    Ok(WorkPoly {
        terms: remainder,
        sugar,
        rep: p.rep,
    })
}
