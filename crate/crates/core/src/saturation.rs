//! Membership oracles for the two saturations of a tensor square: an exact
//! decision for the radical-based one and a sound three-valued decision for
//! the integral-closure-based one.
//!
//! The layered closure test: radical rejection is definitive (the closure is
//! contained in the radical), monomial ideals in a free ambient are decided
//! exactly through the Newton polyhedron, and everything else is a bounded
//! search for an explicit integral dependence equation. Yes and No answers
//! always carry machine-checkable certificates; Unknown carries the bound.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::TensorSquare;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::linprog::{self, LpResult};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{self, Poly};

/// Default bound for the radical-exponent certificate attached to
/// weak-normalization answers.
pub const RADICAL_EXPONENT_BOUND: u32 = 32;

/// Default bound for the integral-dependence search.
pub const DEPENDENCE_BOUND: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => write!(f, "Yes"),
            Verdict::No => write!(f, "No"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// An explicit monic dependence `x^n + a_1 x^{n-1} + ⋯ + a_n ≡ 0` with each
/// `a_i` given as a combination of generators of the `i`-th power of the
/// ideal.
#[derive(Clone, Debug)]
pub struct DependenceCertificate<F: Field> {
    pub degree: u32,
    /// `a_1 .. a_n`.
    pub coefficients: Vec<Poly<F>>,
    /// For each `i`, the pairs `(generator of I^i, cofactor)` whose
    /// combination is `a_i`.
    pub combinations: Vec<Vec<(Poly<F>, Poly<F>)>>,
}

impl<F: Field> DependenceCertificate<F> {
    /// Re-checks the certificate from scratch: the combinations reproduce the
    /// coefficients and the monic equation vanishes modulo the ambient.
    pub fn verify(&self, x: &Poly<F>, ideal: &Ideal<F>) -> Result<bool> {
        let ring = ideal.ambient().ring();
        for (a, combo) in self.coefficients.iter().zip(&self.combinations) {
            let mut acc = poly::zero(ring);
            for (gen, cof) in combo {
                acc = acc.add(&gen.mul(cof)?)?;
            }
            if &acc != a {
                return Ok(false);
            }
        }
        let mut equation = x.pow(self.degree);
        for (i, a) in self.coefficients.iter().enumerate() {
            let power = self.degree - 1 - i as u32;
            equation = equation.add(&a.mul(&x.pow(power))?)?;
        }
        ideal.ambient().is_zero_mod(&equation)
    }
}

/// Payloads attached to three-valued answers.
#[derive(Clone, Debug)]
pub enum Certificate<F: Field> {
    /// Smallest exponent with `Δ(x)^n` in the kernel ideal.
    RadicalExponent { exponent: u32 },
    /// Radical membership holds but the exponent exceeded the bound.
    ExponentBeyondBound { bound: u32 },
    /// Radical membership fails, so closure membership fails.
    RadicalRejection,
    /// Explicit monic dependence equation.
    Dependence(DependenceCertificate<F>),
    /// Newton-polyhedron witness per monomial: convex multipliers over the
    /// generator exponents.
    NewtonWitness {
        witnesses: Vec<(Poly<F>, Vec<BigRational>)>,
    },
    /// Exact monomial rejection: the exponent lies outside the Newton
    /// polyhedron, with Farkas multipliers for the infeasible system.
    NewtonRejection {
        monomial: Poly<F>,
        farkas: Vec<BigRational>,
    },
    /// Bounded search exhausted.
    BoundExhausted { bound: u32 },
}

/// Three-valued answer with its certificate.
#[derive(Clone, Debug)]
pub struct Verdict3<F: Field> {
    pub answer: Verdict,
    pub certificate: Certificate<F>,
}

/// Weak-normalization membership: `Δ(x)` lies in the radical of the kernel
/// ideal. Exact and complete; the attached exponent is a certificate when it
/// is within [`RADICAL_EXPONENT_BOUND`].
pub fn wn_member<F: Field>(square: &TensorSquare<F>, x: &Poly<F>) -> Result<(bool, Option<u32>)> {
    let d = square.diagonal(x)?;
    if !square.phi_kernel().radical_contains(&d)? {
        return Ok((false, None));
    }
    let exponent = square
        .phi_kernel()
        .radical_exponent(&d, RADICAL_EXPONENT_BOUND)?;
    Ok((true, exponent))
}

/// Searches for a monic dependence equation of degree exactly `n` of `x` over
/// `ideal`, modulo the ambient relations. The equation exists iff `x^n` lies
/// in the ideal generated by `x^{n-i} · m` for `m` ranging over generators of
/// the `i`-th powers; cofactors are recovered from the membership certificate.
pub fn dependence_search<F: Field>(
    x: &Poly<F>,
    ideal: &Ideal<F>,
    n: u32,
) -> Result<Option<DependenceCertificate<F>>> {
    if n == 0 {
        return Ok(None);
    }
    let ring = ideal.ambient().ring();
    if !crate::poly::PolyRing::compatible(x.ring(), ring) {
        return Err(Error::RingMismatch(
            "dependence search of foreign element".into(),
        ));
    }
    // generators x^{n-i} * m for m over gens(I^i), i = 1..n, then relations
    let mut sources: Vec<Poly<F>> = Vec::new();
    let mut labels: Vec<(u32, Poly<F>)> = Vec::new(); // (i, generator of I^i)
    let mut power_gens = ideal.gens().to_vec();
    for i in 1..=n {
        if i > 1 {
            let mut next = Vec::new();
            for p in &power_gens {
                for q in ideal.gens() {
                    let prod = p.mul(q)?;
                    if !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            power_gens = next;
        }
        let xpow = x.pow(n - i);
        for m in &power_gens {
            sources.push(xpow.mul(m)?);
            labels.push((i, m.clone()));
        }
    }
    let nlabeled = sources.len();
    sources.extend(ideal.ambient().relations().iter().cloned());

    // decide membership with an untracked basis first; cofactor tracking is
    // only paid for on success
    let target = x.pow(n);
    let plain = GroebnerBasis::new(ring, &sources, MonomialOrder::GrevLex)?;
    if !plain.contains(&target)? {
        return Ok(None);
    }
    let gb = GroebnerBasis::with_cofactors(ring, &sources, MonomialOrder::GrevLex)?;
    let Some(cofactors) = gb.express_over_source(&target)? else {
        return Ok(None);
    };

    // a_i := -Σ cofactor · m over the generators of I^i; contributions through
    // the ambient relations vanish modulo the ambient and are dropped
    let mut coefficients = vec![poly::zero(ring); n as usize];
    let mut combinations: Vec<Vec<(Poly<F>, Poly<F>)>> = vec![Vec::new(); n as usize];
    for (k, cof) in cofactors.iter().take(nlabeled).enumerate() {
        if cof.is_zero() {
            continue;
        }
        let (i, m) = &labels[k];
        let idx = (*i - 1) as usize;
        let neg = cof.neg();
        coefficients[idx] = coefficients[idx].add(&m.mul(&neg)?)?;
        combinations[idx].push((m.clone(), neg));
    }
    let cert = DependenceCertificate {
        degree: n,
        coefficients,
        combinations,
    };
    debug_assert!(cert.verify(x, ideal)?);
    Ok(Some(cert))
}

/// Newton-polyhedron membership for monomial ideals: the exponent vector lies
/// in `conv(exponents) + ℝ₊^d`, decided by exact linear feasibility.
pub fn monomial_closure_member<F: Field>(exponent: &Monomial, ideal: &Ideal<F>) -> Result<bool> {
    Ok(newton_member(exponent, &monomial_exponents(ideal)?).is_some())
}

fn monomial_exponents<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Monomial>> {
    if !ideal.ambient().is_free() {
        return Err(Error::NotMonomial(
            "ambient carries relations; the ideal is not a monomial ideal of a free ring".into(),
        ));
    }
    let mut out = Vec::with_capacity(ideal.gens().len());
    for g in ideal.gens() {
        if !g.is_monomial() {
            return Err(Error::NotMonomial(format!(
                "generator `{g}` is not a monomial"
            )));
        }
        out.push(g.terms()[0].0.clone());
    }
    if out.is_empty() {
        return Err(Error::NotMonomial(
            "zero ideal has no Newton polyhedron".into(),
        ));
    }
    Ok(out)
}

/// Feasibility of `a ∈ conv(gens) + ℝ₊^d` as a linear system in the convex
/// multipliers; returns them on success.
fn newton_member(a: &Monomial, gens: &[Monomial]) -> Option<Vec<BigRational>> {
    match newton_lp(a, gens) {
        LpResult::Feasible(lambda) => Some(lambda),
        LpResult::Infeasible(_) => None,
    }
}

fn newton_lp(a: &Monomial, gens: &[Monomial]) -> LpResult {
    let m = gens.len();
    let d = a.arity();
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    // λ_j ≥ 0
    for j in 0..m {
        let mut row = vec![q(0); m];
        row[j] = q(-1);
        rows.push(row);
        rhs.push(q(0));
    }
    // Σ λ_j = 1 as two inequalities
    rows.push(vec![q(1); m]);
    rhs.push(q(1));
    rows.push(vec![q(-1); m]);
    rhs.push(q(-1));
    // Σ λ_j e_j[i] ≤ a[i]
    for i in 0..d {
        let row: Vec<BigRational> = gens.iter().map(|e| q(e.exponents()[i] as i64)).collect();
        rows.push(row);
        rhs.push(q(a.exponents()[i] as i64));
    }
    linprog::feasible(&rows, &rhs)
}

/// Closure membership for `d` over `ideal`, with the layered strategy
/// described in the module docs. The monomial branch answers No only in a
/// free ambient: with relations present the Newton test stays sound for Yes
/// but rejections fall through to the bounded search, because nilpotents of
/// the quotient can lie in the closure without touching the polyhedron.
pub fn closure_member<F: Field>(d: &Poly<F>, ideal: &Ideal<F>, bound: u32) -> Result<Verdict3<F>> {
    // radical rejection is definitive
    if !ideal.radical_contains(d)? {
        return Ok(Verdict3 {
            answer: Verdict::No,
            certificate: Certificate::RadicalRejection,
        });
    }

    // plain ideal membership gives the degree-1 equation
    if let Some(cert) = dependence_search(d, ideal, 1)? {
        return Ok(Verdict3 {
            answer: Verdict::Yes,
            certificate: Certificate::Dependence(cert),
        });
    }

    // monomial branch
    if ideal.is_monomial()? {
        let gens: Vec<Monomial> = ideal
            .gb(&MonomialOrder::GrevLex)?
            .generators()
            .iter()
            .filter(|g| g.is_monomial())
            .map(|g| g.terms()[0].0.clone())
            .collect();
        if !gens.is_empty() {
            let ring = ideal.ambient().ring();
            let one = ring.field().one();
            let as_poly = |m: &Monomial| -> Poly<F> { poly::term(ring, m.clone(), one.clone()) };
            let nf = ideal.ambient().nf(d)?;
            let mut witnesses = Vec::new();
            let mut rejection = None;
            for (m, _) in nf.terms() {
                match newton_lp(m, &gens) {
                    LpResult::Feasible(lambda) => witnesses.push((as_poly(m), lambda)),
                    LpResult::Infeasible(farkas) => {
                        rejection = Some((as_poly(m), farkas));
                        break;
                    }
                }
            }
            match rejection {
                None => {
                    return Ok(Verdict3 {
                        answer: Verdict::Yes,
                        certificate: Certificate::NewtonWitness { witnesses },
                    });
                }
                Some((monomial, farkas)) if ideal.ambient().is_free() => {
                    return Ok(Verdict3 {
                        answer: Verdict::No,
                        certificate: Certificate::NewtonRejection { monomial, farkas },
                    });
                }
                Some(_) => {} // fall through to the bounded search
            }
        }
    }

    // bounded dependence search; degree 1 was already tried
    for n in 2..=bound {
        if let Some(cert) = dependence_search(d, ideal, n)? {
            return Ok(Verdict3 {
                answer: Verdict::Yes,
                certificate: Certificate::Dependence(cert),
            });
        }
    }
    Ok(Verdict3 {
        answer: Verdict::Unknown,
        certificate: Certificate::BoundExhausted { bound },
    })
}

/// Lipschitz-saturation membership: `Δ(x)` against the closure of the kernel
/// ideal of the square.
pub fn lip_member<F: Field>(
    square: &TensorSquare<F>,
    x: &Poly<F>,
    bound: u32,
) -> Result<Verdict3<F>> {
    let d = square.diagonal(x)?;
    closure_member(&d, square.phi_kernel(), bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraMorphism, PresentedAlgebra, Sequence};
    use crate::field::Rationals;
    use crate::ideal::QuotientRing;
    use crate::parse::poly_parse;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn cusp_square() -> TensorSquare<Rationals> {
        let r = PresentedAlgebra::base_field("R", Rationals);
        let a = PresentedAlgebra::new(
            "A",
            Rationals,
            vec!["a".into(), "b".into()],
            vec![poly_parse("a^3 - b^2", &qring(&["a", "b"])).unwrap()],
        )
        .unwrap();
        let b = PresentedAlgebra::new("B", Rationals, vec!["t".into()], vec![]).unwrap();
        let tau = AlgebraMorphism::new(r, a.clone(), vec![]).unwrap();
        let g = AlgebraMorphism::new(
            a,
            b.clone(),
            vec![
                poly_parse("t^2", b.poly_ring()).unwrap(),
                poly_parse("t^3", b.poly_ring()).unwrap(),
            ],
        )
        .unwrap();
        TensorSquare::build(&Sequence::new(tau, g).unwrap()).unwrap()
    }

    fn node_square() -> TensorSquare<Rationals> {
        let r = PresentedAlgebra::base_field("R", Rationals);
        let a = PresentedAlgebra::new(
            "A",
            Rationals,
            vec!["a".into(), "b".into()],
            vec![poly_parse("b^2 - a^3 - a^2", &qring(&["a", "b"])).unwrap()],
        )
        .unwrap();
        let b = PresentedAlgebra::new("B", Rationals, vec!["t".into()], vec![]).unwrap();
        let tau = AlgebraMorphism::new(r, a.clone(), vec![]).unwrap();
        let g = AlgebraMorphism::new(
            a,
            b.clone(),
            vec![
                poly_parse("t^2 - 1", b.poly_ring()).unwrap(),
                poly_parse("t^3 - t", b.poly_ring()).unwrap(),
            ],
        )
        .unwrap();
        TensorSquare::build(&Sequence::new(tau, g).unwrap()).unwrap()
    }

    #[test]
    fn wn_membership_on_cusp_and_node() {
        let cusp = cusp_square();
        let t = poly_parse("t", cusp.seq().top().poly_ring()).unwrap();
        let (member, exponent) = wn_member(&cusp, &t).unwrap();
        assert!(member);
        // (t - t_r)^3 is the first power in the kernel; independently verified
        assert_eq!(exponent, Some(3));

        // images of the mid generators are members with exponent 1
        for img in cusp.seq().g().images() {
            let (member, exponent) = wn_member(&cusp, img).unwrap();
            assert!(member);
            assert_eq!(exponent, Some(1));
        }

        let node = node_square();
        let t = poly_parse("t", node.seq().top().poly_ring()).unwrap();
        let (member, _) = wn_member(&node, &t).unwrap();
        assert!(!member);
    }

    #[test]
    fn dependence_search_examples() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let i = Ideal::new(
            amb.clone(),
            vec![
                poly_parse("u^2", amb.ring()).unwrap(),
                poly_parse("v^2", amb.ring()).unwrap(),
            ],
        )
        .unwrap();

        // x ∈ I gives the degree-1 equation with a_1 = -x
        let x = poly_parse("u^2", amb.ring()).unwrap();
        let cert = dependence_search(&x, &i, 1).unwrap().unwrap();
        assert_eq!(cert.degree, 1);
        assert_eq!(cert.coefficients[0], x.neg());
        assert!(cert.verify(&x, &i).unwrap());

        // (uv)^2 = u^2 v^2 ∈ I^2
        let uv = poly_parse("u*v", amb.ring()).unwrap();
        assert!(dependence_search(&uv, &i, 1).unwrap().is_none());
        let cert = dependence_search(&uv, &i, 2).unwrap().unwrap();
        assert_eq!(cert.degree, 2);
        assert!(cert.verify(&uv, &i).unwrap());

        // u admits no equation of degree ≤ 4
        let u = poly_parse("u", amb.ring()).unwrap();
        for n in 1..=4 {
            assert!(dependence_search(&u, &i, n).unwrap().is_none());
        }
    }

    #[test]
    fn newton_polyhedron_examples() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let i = Ideal::new(
            amb.clone(),
            vec![
                poly_parse("u^2", amb.ring()).unwrap(),
                poly_parse("v^2", amb.ring()).unwrap(),
            ],
        )
        .unwrap();
        let m = |a: u32, b: u32| Monomial::from_exponents(vec![a, b]);
        assert!(monomial_closure_member(&m(2, 0), &i).unwrap());
        assert!(monomial_closure_member(&m(1, 1), &i).unwrap());
        assert!(!monomial_closure_member(&m(1, 0), &i).unwrap());

        let bad = Ideal::new(
            amb.clone(),
            vec![poly_parse("u^2 - v^2", amb.ring()).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            monomial_closure_member(&m(1, 1), &bad),
            Err(Error::NotMonomial(_))
        ));
    }

    #[test]
    fn lip_membership_layers() {
        let cusp = cusp_square();
        // mid-generator images enter with the degree-1 equation
        for img in cusp.seq().g().images() {
            let v = lip_member(&cusp, img, DEPENDENCE_BOUND).unwrap();
            assert_eq!(v.answer, Verdict::Yes);
            match v.certificate {
                Certificate::Dependence(c) => assert_eq!(c.degree, 1),
                other => panic!("expected a dependence certificate, got {other:?}"),
            }
        }

        // node: radical rejection
        let node = node_square();
        let t = poly_parse("t", node.seq().top().poly_ring()).unwrap();
        let v = lip_member(&node, &t, DEPENDENCE_BOUND).unwrap();
        assert_eq!(v.answer, Verdict::No);
        assert!(matches!(v.certificate, Certificate::RadicalRejection));

        // cusp: t is weakly normal but no dependence equation of degree ≤ 6
        // exists, so the answer must stay Unknown
        let t = poly_parse("t", cusp.seq().top().poly_ring()).unwrap();
        let v = lip_member(&cusp, &t, DEPENDENCE_BOUND).unwrap();
        assert_eq!(v.answer, Verdict::Unknown);
        assert!(matches!(
            v.certificate,
            Certificate::BoundExhausted { bound: 6 }
        ));
    }

    #[test]
    fn closure_member_exact_on_monomial_ideals() {
        let amb = QuotientRing::free(qring(&["u", "v"]));
        let i = Ideal::new(
            amb.clone(),
            vec![
                poly_parse("u^2", amb.ring()).unwrap(),
                poly_parse("v^2", amb.ring()).unwrap(),
            ],
        )
        .unwrap();
        let uv = poly_parse("u*v", amb.ring()).unwrap();
        let v = closure_member(&uv, &i, DEPENDENCE_BOUND).unwrap();
        assert_eq!(v.answer, Verdict::Yes);

        let u = poly_parse("u", amb.ring()).unwrap();
        let v = closure_member(&u, &i, DEPENDENCE_BOUND).unwrap();
        assert_eq!(v.answer, Verdict::No);
        assert!(matches!(v.certificate, Certificate::NewtonRejection { .. }));
    }
}
