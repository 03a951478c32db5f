//! The theorem surface: classification of commuting squares
//! (Maranesi / strong Lipman / Lipman), hypothesis predicates on morphisms
//! (surjective, integral, radicial, unramified, retraction-certified purity),
//! and the contraction / quotient / idempotency verifiers over finite test
//! sets.
//!
//! Contraction is verified pointwise on supplied elements, not by computing
//! preimages as sets: membership transfer is exactly what the theorems
//! predict per element. The one-directional image law (top membership forces
//! bottom membership of the image) is unconditional; the reverse direction is
//! build-breaking only when the square's hypothesis flags match one of the
//! contraction theorems.

use std::sync::Arc;

use crate::algebra::{
    build_bridge, kernel_of_morphism, tensor_over, AlgebraMorphism, Bridge, PresentedAlgebra,
    Sequence, TensorProduct, TensorSquare,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::ideal::{subalgebra_membership, Ideal, QuotientRing};
use crate::order::MonomialOrder;
use crate::poly::{self, Poly, PolyRing};
use crate::saturation::{
    closure_member, lip_member, wn_member, Certificate, Verdict, Verdict3, RADICAL_EXPONENT_BOUND,
};

/// The six-morphism commutative square: two sequences joined by `fR`, `fA`,
/// `f`, together with the derived tensor squares and bridge. Both small
/// squares are checked to commute at construction.
#[derive(Debug, Clone)]
pub struct DiagramSquare<F: Field> {
    top: Sequence<F>,
    bottom: Sequence<F>,
    f_r: AlgebraMorphism<F>,
    f_a: AlgebraMorphism<F>,
    f: AlgebraMorphism<F>,
    retraction: Option<AlgebraMorphism<F>>,
    top_square: TensorSquare<F>,
    bottom_square: TensorSquare<F>,
    bridge: Bridge<F>,
}

impl<F: Field> DiagramSquare<F> {
    pub fn build(
        top: Sequence<F>,
        bottom: Sequence<F>,
        f_r: AlgebraMorphism<F>,
        f_a: AlgebraMorphism<F>,
        f: AlgebraMorphism<F>,
        retraction: Option<AlgebraMorphism<F>>,
    ) -> Result<DiagramSquare<F>> {
        let ok_endpoints = PresentedAlgebra::compatible(f_r.from_algebra(), top.base())
            && PresentedAlgebra::compatible(f_r.to_algebra(), bottom.base())
            && PresentedAlgebra::compatible(f_a.from_algebra(), top.mid())
            && PresentedAlgebra::compatible(f_a.to_algebra(), bottom.mid())
            && PresentedAlgebra::compatible(f.from_algebra(), top.top())
            && PresentedAlgebra::compatible(f.to_algebra(), bottom.top());
        if !ok_endpoints {
            return Err(Error::InvalidMorphism(
                "vertical morphisms do not connect the two rows".into(),
            ));
        }
        for (name, m) in [("fR", &f_r), ("fA", &f_a), ("f", &f)] {
            if !m.validate()? {
                return Err(Error::InvalidMorphism(format!(
                    "{name} is not well-defined"
                )));
            }
        }
        if let Some(h) = &retraction {
            if !PresentedAlgebra::compatible(h.from_algebra(), bottom.top())
                || !PresentedAlgebra::compatible(h.to_algebra(), top.top())
            {
                return Err(Error::CompositionMismatch(
                    "retraction must map the bottom top-algebra back to the top one".into(),
                ));
            }
            if !h.validate()? {
                return Err(Error::InvalidMorphism(
                    "retraction is not well-defined".into(),
                ));
            }
        }

        // both small squares commute
        let left_a = AlgebraMorphism::compose(bottom.tau(), &f_r)?;
        let right_a = AlgebraMorphism::compose(&f_a, top.tau())?;
        if !left_a.equals(&right_a)? {
            return Err(Error::NonCommuting("tau' ∘ fR ≠ fA ∘ tau".into()));
        }
        let left_b = AlgebraMorphism::compose(bottom.g(), &f_a)?;
        let right_b = AlgebraMorphism::compose(&f, top.g())?;
        if !left_b.equals(&right_b)? {
            return Err(Error::NonCommuting("g' ∘ fA ≠ f ∘ g".into()));
        }

        let top_square = TensorSquare::build(&top)?;
        let bottom_square = TensorSquare::build(&bottom)?;
        let bridge = build_bridge(&top_square, &bottom_square, &f)?;

        Ok(DiagramSquare {
            top,
            bottom,
            f_r,
            f_a,
            f,
            retraction,
            top_square,
            bottom_square,
            bridge,
        })
    }

    pub fn top(&self) -> &Sequence<F> {
        &self.top
    }
    pub fn bottom(&self) -> &Sequence<F> {
        &self.bottom
    }
    pub fn f_r(&self) -> &AlgebraMorphism<F> {
        &self.f_r
    }
    pub fn f_a(&self) -> &AlgebraMorphism<F> {
        &self.f_a
    }
    pub fn f(&self) -> &AlgebraMorphism<F> {
        &self.f
    }
    pub fn retraction(&self) -> Option<&AlgebraMorphism<F>> {
        self.retraction.as_ref()
    }
    pub fn top_square(&self) -> &TensorSquare<F> {
        &self.top_square
    }
    pub fn bottom_square(&self) -> &TensorSquare<F> {
        &self.bottom_square
    }
    pub fn bridge(&self) -> &Bridge<F> {
        &self.bridge
    }

    /// The kernel ideal of the top square pushed into the bottom tensor ring:
    /// the ideal generated by the `f̄`-images of its generators.
    pub fn extended_kernel(&self) -> Result<Ideal<F>> {
        let mut gens = Vec::new();
        for g in self.top_square.phi_kernel().gens() {
            let img = self.bridge.fbar().apply(g)?;
            if !img.is_zero() && !gens.contains(&img) {
                gens.push(img);
            }
        }
        Ideal::new(self.bottom_square.tensor_rr().ambient().clone(), gens)
    }

    /// `ker p` for the bridge projection, as an ideal of `B' ⊗_R B'`.
    pub fn p_kernel(&self) -> Result<Ideal<F>> {
        let bottom_structure = self.bottom.structure()?;
        self.bridge.p_kernel(&bottom_structure)
    }
}

/// Surjectivity: every target generator lies in the subalgebra generated by
/// the images.
pub fn is_surjective<F: Field>(psi: &AlgebraMorphism<F>) -> Result<bool> {
    let target = psi.to_algebra();
    for i in 0..target.nvars() {
        let v = poly::var(target.poly_ring(), i);
        if subalgebra_membership(&v, psi.images(), target.quotient())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integrality status of one target generator.
#[derive(Clone, Debug)]
pub struct GeneratorIntegrality<F: Field> {
    pub generator: String,
    pub status: Verdict,
    /// Monic equation in `X` (the generator) over the tag variables `w_i`
    /// (the images), when integrality was certified.
    pub equation: Option<Poly<F>>,
    pub degree: Option<u32>,
}

/// Semi-decision for integrality: each target generator must satisfy a monic
/// equation over the image subalgebra. The relation ideal between generator
/// and images is computed exactly by elimination; a monic certificate shows
/// up as a pure power of the generator among the reduced leading terms. `No`
/// is returned only on provable transcendence (zero relation ideal); absent a
/// monic leading power the answer stays `Unknown`.
pub fn is_integral<F: Field>(
    psi: &AlgebraMorphism<F>,
) -> Result<(Verdict, Vec<GeneratorIntegrality<F>>)> {
    let target = psi.to_algebra();
    let field = target.field().clone();

    // degenerate zero ring: every predicate holds
    if target.quotient().is_zero_ring() {
        let items = target
            .vars()
            .iter()
            .map(|v| GeneratorIntegrality {
                generator: v.clone(),
                status: Verdict::Yes,
                equation: None,
                degree: None,
            })
            .collect();
        return Ok((Verdict::Yes, items));
    }

    let mut items = Vec::new();
    let mut saw_unknown = false;
    let mut saw_no = false;
    for (k, var_name) in target.vars().iter().enumerate() {
        let mut names = vec!["X".to_string()];
        names.extend((1..=psi.images().len()).map(|i| format!("w{i}")));
        let free = PresentedAlgebra::new(
            format!("graph({var_name})"),
            field.clone(),
            names,
            Vec::new(),
        )?;
        let mut images = vec![poly::var(target.poly_ring(), k)];
        images.extend(psi.images().iter().cloned());
        let graph = AlgebraMorphism::new(free.clone(), target.clone(), images)?;
        let relations = kernel_of_morphism(&graph)?;
        if relations.gens().is_empty() {
            items.push(GeneratorIntegrality {
                generator: var_name.clone(),
                status: Verdict::No,
                equation: None,
                degree: None,
            });
            saw_no = true;
            continue;
        }
        let order = MonomialOrder::elimination(1);
        let gb = GroebnerBasis::new(free.poly_ring(), relations.gens(), order.clone())?;
        let mut monic: Option<(u32, Poly<F>)> = None;
        for b in gb.generators() {
            let (lt, _) = b.leading(&order).expect("basis elements are nonzero");
            let exps = lt.exponents();
            if exps[0] > 0 && exps[1..].iter().all(|&e| e == 0) {
                let d = exps[0];
                if monic.as_ref().map_or(true, |(best, _)| d < *best) {
                    monic = Some((d, b.clone()));
                }
            }
        }
        match monic {
            Some((d, eq)) => items.push(GeneratorIntegrality {
                generator: var_name.clone(),
                status: Verdict::Yes,
                equation: Some(eq),
                degree: Some(d),
            }),
            None => {
                items.push(GeneratorIntegrality {
                    generator: var_name.clone(),
                    status: Verdict::Unknown,
                    equation: None,
                    degree: None,
                });
                saw_unknown = true;
            }
        }
    }
    let overall = if saw_no {
        Verdict::No
    } else if saw_unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };
    Ok((overall, items))
}

/// The diagonal kernel of `T ⊗_S T → T`: the tensor presentation together
/// with the ideal generated by the generator diagonals.
fn diagonal_kernel<F: Field>(psi: &AlgebraMorphism<F>) -> Result<(TensorProduct<F>, Ideal<F>)> {
    let tensor = tensor_over(psi.from_algebra(), psi.to_algebra(), psi)?;
    let n = psi.to_algebra().nvars();
    let ring = tensor.algebra().poly_ring();
    let mut gens = Vec::new();
    for j in 0..n {
        let d = poly::var(ring, j).sub(&poly::var(ring, n + j))?;
        let d = tensor.algebra().quotient().nf(&d)?;
        if !d.is_zero() && !gens.contains(&d) {
            gens.push(d);
        }
    }
    let ideal = Ideal::new(tensor.ambient().clone(), gens)?;
    Ok((tensor, ideal))
}

/// Radicial test: every generator diagonal `t⊗1 - 1⊗t` is nilpotent in
/// `T ⊗_S T`, i.e. the kernel of the multiplication map is nil.
pub fn is_radicial<F: Field>(psi: &AlgebraMorphism<F>) -> Result<bool> {
    if !psi.validate()? {
        return Err(Error::InvalidMorphism(
            "radicial test of an invalid morphism".into(),
        ));
    }
    let (_, kernel) = diagonal_kernel(psi)?;
    kernel.is_nil()
}

/// The idempotent generator extracted from an unramified diagonal kernel.
#[derive(Clone, Debug)]
pub struct IdempotentWitness<F: Field> {
    /// Canonical representative of `e'` in the tensor ring.
    pub element: Poly<F>,
    /// `e'^2 = e'` and `e' · Δ(t) = Δ(t)` re-checked for every generator.
    pub verified: bool,
}

/// Unramified test: the diagonal kernel equals its own square. When it does,
/// the determinant trick extracts an idempotent generator, which is
/// re-verified and reported.
pub fn is_unramified<F: Field>(
    psi: &AlgebraMorphism<F>,
) -> Result<(bool, Option<IdempotentWitness<F>>)> {
    if !psi.validate()? {
        return Err(Error::InvalidMorphism(
            "unramified test of an invalid morphism".into(),
        ));
    }
    let (tensor, kernel) = diagonal_kernel(psi)?;
    let ambient = tensor.algebra().quotient();
    let ring = tensor.algebra().poly_ring();
    let field = ring.field().clone();
    let n_gens = kernel.gens().to_vec();
    if n_gens.is_empty() {
        // zero kernel: trivially unramified with e' = 0
        return Ok((
            true,
            Some(IdempotentWitness {
                element: poly::zero(ring),
                verified: true,
            }),
        ));
    }

    // sources: generators of N², then the ambient relations
    let mut labels: Vec<(usize, usize)> = Vec::new();
    let mut sources: Vec<Poly<F>> = Vec::new();
    for a in 0..n_gens.len() {
        for b in a..n_gens.len() {
            sources.push(n_gens[a].mul(&n_gens[b])?);
            labels.push((a, b));
        }
    }
    let nlabeled = sources.len();
    sources.extend(ambient.relations().iter().cloned());
    let gb = GroebnerBasis::with_cofactors(ring, &sources, MonomialOrder::GrevLex)?;

    // membership of each generator in N²; collect C with n_j = Σ_k C[j][k] n_k
    // and entries inside N
    let mut c: Vec<Vec<Poly<F>>> = Vec::new();
    for n_j in &n_gens {
        match gb.express_over_source(n_j)? {
            None => return Ok((false, None)),
            Some(cof) => {
                let mut row = vec![poly::zero(ring); n_gens.len()];
                for (idx, q) in cof.iter().take(nlabeled).enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let (a, b) = labels[idx];
                    row[a] = row[a].add(&q.mul(&n_gens[b])?)?;
                }
                c.push(row);
            }
        }
    }

    // determinant trick: e = 1 - det(I - C) is an idempotent generator
    let size = n_gens.len();
    let mut i_minus_c: Vec<Vec<Poly<F>>> = Vec::with_capacity(size);
    for (j, row) in c.iter().enumerate() {
        let mut out_row = Vec::with_capacity(size);
        for (k, entry) in row.iter().enumerate() {
            let delta = if j == k {
                poly::constant(ring, field.one())
            } else {
                poly::zero(ring)
            };
            out_row.push(delta.sub(entry)?);
        }
        i_minus_c.push(out_row);
    }
    let det = poly_det(&i_minus_c, ring)?;
    let one = poly::constant(ring, field.one());
    let e = ambient.nf(&one.sub(&det)?)?;

    let mut verified = ambient.is_idempotent(&e)?;
    if verified {
        for n_j in &n_gens {
            let drift = e.mul(n_j)?.sub(n_j)?;
            if !ambient.is_zero_mod(&drift)? {
                verified = false;
                break;
            }
        }
    }
    Ok((
        true,
        Some(IdempotentWitness {
            element: e,
            verified,
        }),
    ))
}

/// Laplace expansion along the first row; fine at the sizes that occur here.
fn poly_det<F: Field>(m: &[Vec<Poly<F>>], ring: &Arc<PolyRing<F>>) -> Result<Poly<F>> {
    let n = m.len();
    if n == 0 {
        return Ok(poly::constant(ring, ring.field().one()));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = poly::zero(ring);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = poly_det(&minor, ring)?;
        let signed = if col % 2 == 0 { sub } else { sub.neg() };
        acc = acc.add(&entry.mul(&signed)?)?;
    }
    Ok(acc)
}

/// Verification-only purity certificate: `h ∘ ψ = id` on the source.
pub fn has_retraction<F: Field>(psi: &AlgebraMorphism<F>, h: &AlgebraMorphism<F>) -> Result<bool> {
    if !PresentedAlgebra::compatible(h.from_algebra(), psi.to_algebra())
        || !PresentedAlgebra::compatible(h.to_algebra(), psi.from_algebra())
    {
        return Err(Error::CompositionMismatch(
            "retraction endpoints do not invert the morphism".into(),
        ));
    }
    if !h.validate()? {
        return Ok(false);
    }
    let composed = AlgebraMorphism::compose(h, psi)?;
    composed.equals(&AlgebraMorphism::identity(psi.from_algebra()))
}

/// Hypothesis flags for one vertical morphism.
#[derive(Clone, Debug)]
pub struct MorphismFlags {
    pub surjective: bool,
    pub radicial: bool,
    pub unramified: bool,
    pub integral: Verdict,
    /// `Some(true)` means a retraction was supplied and verified.
    pub retraction_certified: Option<bool>,
}

/// One closure membership performed while deciding the Lipman condition.
#[derive(Clone, Debug)]
pub struct ClosureCheck<F: Field> {
    pub direction: &'static str,
    pub generator: Poly<F>,
    pub verdict: Verdict3<F>,
}

/// Everything `classify` knows about a square.
#[derive(Clone, Debug)]
pub struct ClassificationReport<F: Field> {
    pub commutes: bool,
    pub maranesi: bool,
    pub strong_lipman: bool,
    pub lipman: Verdict,
    pub lipman_details: Vec<ClosureCheck<F>>,
    pub f_r: MorphismFlags,
    pub f_a: MorphismFlags,
    pub f: MorphismFlags,
    pub ker_p_nil: bool,
    /// `e'` for an unramified base morphism, when extraction succeeded.
    pub idempotent_witness: Option<IdempotentWitness<F>>,
}

fn flags_for<F: Field>(
    psi: &AlgebraMorphism<F>,
    retraction: Option<&AlgebraMorphism<F>>,
) -> Result<(MorphismFlags, Option<IdempotentWitness<F>>)> {
    let (unramified, witness) = is_unramified(psi)?;
    let retraction_certified = match retraction {
        Some(h) => Some(has_retraction(psi, h)?),
        None => None,
    };
    Ok((
        MorphismFlags {
            surjective: is_surjective(psi)?,
            radicial: is_radicial(psi)?,
            unramified,
            integral: is_integral(psi)?.0,
            retraction_certified,
        },
        witness,
    ))
}

/// Classification: Maranesi by two-way radical membership of generator sets,
/// strong Lipman by two-way ideal membership, Lipman by two-way bounded
/// closure membership.
pub fn classify<F: Field>(
    square: &DiagramSquare<F>,
    bound: u32,
) -> Result<ClassificationReport<F>> {
    let extended = square.extended_kernel()?;
    let bottom_kernel = square.bottom_square().phi_kernel();

    let mut strong = true;
    let mut maranesi = true;
    for g in bottom_kernel.gens() {
        if !extended.contains(g)? {
            strong = false;
        }
        if !extended.radical_contains(g)? {
            maranesi = false;
        }
    }
    for e in extended.gens() {
        if !bottom_kernel.contains(e)? {
            strong = false;
        }
        if !bottom_kernel.radical_contains(e)? {
            maranesi = false;
        }
    }

    let mut lipman_details = Vec::new();
    let lipman = if strong {
        Verdict::Yes
    } else {
        let mut answer = Verdict::Yes;
        for g in bottom_kernel.gens() {
            let v = closure_member(g, &extended, bound)?;
            merge_verdict(&mut answer, v.answer);
            lipman_details.push(ClosureCheck {
                direction: "kernel in closure of extension",
                generator: g.clone(),
                verdict: v,
            });
        }
        for e in extended.gens() {
            let v = closure_member(e, bottom_kernel, bound)?;
            merge_verdict(&mut answer, v.answer);
            lipman_details.push(ClosureCheck {
                direction: "extension in closure of kernel",
                generator: e.clone(),
                verdict: v,
            });
        }
        answer
    };

    let (f_r_flags, f_r_witness) = flags_for(&square.f_r, None)?;
    let (f_a_flags, _) = flags_for(&square.f_a, None)?;
    let (f_flags, _) = flags_for(&square.f, square.retraction())?;
    let ker_p_nil = square.p_kernel()?.is_nil()?;
    let idempotent_witness = if f_r_flags.unramified {
        f_r_witness
    } else {
        None
    };

    Ok(ClassificationReport {
        commutes: true,
        maranesi,
        strong_lipman: strong,
        lipman,
        lipman_details,
        f_r: f_r_flags,
        f_a: f_a_flags,
        f: f_flags,
        ker_p_nil,
        idempotent_witness,
    })
}

fn merge_verdict(acc: &mut Verdict, v: Verdict) {
    *acc = match (*acc, v) {
        (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
        (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
        _ => Verdict::Yes,
    };
}

/// Membership mode for contraction checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Wn,
    Lip,
}

/// One element's memberships on both rows.
#[derive(Clone, Debug)]
pub struct Transfer<F: Field> {
    pub element: Poly<F>,
    pub image: Poly<F>,
    pub top: Verdict3<F>,
    pub bottom: Verdict3<F>,
}

/// Pointwise contraction report for a square.
#[derive(Clone, Debug)]
pub struct ContractionReport<F: Field> {
    pub mode: Mode,
    pub classification: ClassificationReport<F>,
    pub matched_theorems: Vec<String>,
    pub transfers: Vec<Transfer<F>>,
    /// Indices of transfers violating the unconditional image law.
    pub image_law_violations: Vec<usize>,
    /// Indices with certified bottom membership but certified top rejection.
    pub contraction_failures: Vec<usize>,
    pub build_breaking: bool,
}

fn wn_verdict3<F: Field>(square: &TensorSquare<F>, x: &Poly<F>) -> Result<Verdict3<F>> {
    let (member, exponent) = wn_member(square, x)?;
    Ok(if member {
        Verdict3 {
            answer: Verdict::Yes,
            certificate: match exponent {
                Some(n) => Certificate::RadicalExponent { exponent: n },
                None => Certificate::ExponentBeyondBound {
                    bound: RADICAL_EXPONENT_BOUND,
                },
            },
        }
    } else {
        Verdict3 {
            answer: Verdict::No,
            certificate: Certificate::RadicalRejection,
        }
    })
}

/// Theorems whose hypothesis flags are met by the classified square. A
/// contraction failure is build-breaking exactly when this list is nonempty.
pub fn matched_theorems<F: Field>(report: &ClassificationReport<F>, mode: Mode) -> Vec<String> {
    let mut out = Vec::new();
    let retraction = report.f.retraction_certified == Some(true);
    let f_integral = report.f.integral == Verdict::Yes;
    match mode {
        Mode::Wn => {
            if report.maranesi && report.f_r.radicial && retraction {
                out.push("maranesi + radicial base + universally injective f".to_string());
            }
            if report.maranesi && retraction && report.ker_p_nil {
                out.push("maranesi + universally injective f + nil ker p".to_string());
            }
            if report.maranesi && f_integral && report.ker_p_nil {
                out.push("maranesi + integral f + nil ker p".to_string());
            }
            if report.maranesi && report.f_r.radicial && f_integral {
                out.push("maranesi + radicial base + integral f".to_string());
            }
            if report.f_r.radicial && report.f_a.radicial && report.f.surjective {
                out.push("radicial base + radicial middle + surjective f".to_string());
            }
            if report.f_r.unramified && report.f_a.radicial && report.f.surjective {
                out.push("unramified base + radicial middle + surjective f".to_string());
            }
        }
        Mode::Lip => {
            if report.lipman == Verdict::Yes && retraction && report.ker_p_nil {
                out.push("lipman + universally injective f + nil ker p".to_string());
            }
            if report.lipman == Verdict::Yes && f_integral && report.ker_p_nil {
                out.push("lipman + integral f + nil ker p".to_string());
            }
            if report.lipman == Verdict::Yes && report.f_r.radicial && f_integral {
                out.push("lipman + radicial base + integral f".to_string());
            }
            if report.lipman == Verdict::Yes
                && report.f_r.unramified
                && report.f_a.radicial
                && report.f.surjective
            {
                out.push("lipman + unramified base + radicial middle + surjective f".to_string());
            }
        }
    }
    out
}

/// Per-element membership transfer across a square. Unknown verdicts are
/// reported, never treated as failures.
pub fn contraction_check<F: Field>(
    square: &DiagramSquare<F>,
    mode: Mode,
    test_set: &[Poly<F>],
    bound: u32,
) -> Result<ContractionReport<F>> {
    let classification = classify(square, bound)?;
    contraction_check_classified(square, classification, mode, test_set, bound)
}

/// Same, reusing an already-computed classification (the classification of a
/// square does not depend on the test set).
pub fn contraction_check_classified<F: Field>(
    square: &DiagramSquare<F>,
    classification: ClassificationReport<F>,
    mode: Mode,
    test_set: &[Poly<F>],
    bound: u32,
) -> Result<ContractionReport<F>> {
    let theorems = matched_theorems(&classification, mode);

    let mut transfers = Vec::with_capacity(test_set.len());
    let mut image_law_violations = Vec::new();
    let mut contraction_failures = Vec::new();
    for (idx, x) in test_set.iter().enumerate() {
        let image = square.f().apply(x)?;
        let (top, bottom) = match mode {
            Mode::Wn => (
                wn_verdict3(square.top_square(), x)?,
                wn_verdict3(square.bottom_square(), &image)?,
            ),
            Mode::Lip => (
                lip_member(square.top_square(), x, bound)?,
                lip_member(square.bottom_square(), &image, bound)?,
            ),
        };
        if top.answer == Verdict::Yes && bottom.answer == Verdict::No {
            image_law_violations.push(idx);
        }
        if bottom.answer == Verdict::Yes && top.answer == Verdict::No {
            contraction_failures.push(idx);
        }
        transfers.push(Transfer {
            element: x.clone(),
            image,
            top,
            bottom,
        });
    }

    let build_breaking = !image_law_violations.is_empty()
        || (!theorems.is_empty() && !contraction_failures.is_empty());
    Ok(ContractionReport {
        mode,
        classification,
        matched_theorems: theorems,
        transfers,
        image_law_violations,
        contraction_failures,
        build_breaking,
    })
}

/// One row of a quotient or idempotency comparison.
#[derive(Clone, Debug)]
pub struct MembershipPair<F: Field> {
    pub element: Poly<F>,
    pub original: bool,
    pub derived: bool,
}

/// Membership-level verification that the radical saturation commutes with
/// quotients: memberships in `B` and in `B/IB` must agree on the test set.
#[derive(Clone, Debug)]
pub struct QuotientReport<F: Field> {
    pub pairs: Vec<MembershipPair<F>>,
    /// Top membership without bottom membership: violates the forward law.
    pub forward_failures: Vec<usize>,
    /// Bottom membership without top membership: violates the isomorphism.
    pub reverse_failures: Vec<usize>,
    /// The quotient row collapsed to the zero ring; memberships there are
    /// trivially true and transfer checks are skipped.
    pub degenerate: bool,
    pub build_breaking: bool,
}

/// Builds the quotient sequence `R → A/I → B/IB` and compares memberships.
pub fn quotient_check<F: Field>(
    seq: &Sequence<F>,
    ideal_in_mid: &Ideal<F>,
    test_set: &[Poly<F>],
) -> Result<QuotientReport<F>> {
    if !QuotientRing::compatible(ideal_in_mid.ambient(), seq.mid().quotient()) {
        return Err(Error::RingMismatch(
            "quotient ideal does not live in the middle algebra".into(),
        ));
    }
    let top_square = TensorSquare::build(seq)?;

    // A/I
    let mut mid_rels = seq.mid().relations().to_vec();
    for g in ideal_in_mid.gens() {
        if !mid_rels.contains(g) {
            mid_rels.push(g.clone());
        }
    }
    let mid_bar = PresentedAlgebra::new(
        format!("{}/I", seq.mid().name()),
        seq.mid().field().clone(),
        seq.mid().vars().to_vec(),
        mid_rels,
    )?;

    // B/IB
    let mut top_rels = seq.top().relations().to_vec();
    for g in ideal_in_mid.gens() {
        let image = seq.g().apply(g)?;
        if !image.is_zero() && !top_rels.contains(&image) {
            top_rels.push(image);
        }
    }
    let top_bar = PresentedAlgebra::new(
        format!("{}/IB", seq.top().name()),
        seq.top().field().clone(),
        seq.top().vars().to_vec(),
        top_rels,
    )?;

    let pi_bar = AlgebraMorphism::new(
        seq.top().clone(),
        top_bar.clone(),
        (0..seq.top().nvars())
            .map(|i| poly::var(top_bar.poly_ring(), i))
            .collect(),
    )?;
    let g_bar = AlgebraMorphism::new(
        mid_bar.clone(),
        top_bar.clone(),
        seq.g()
            .images()
            .iter()
            .map(|p| p.embed(top_bar.poly_ring()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let pi = AlgebraMorphism::new(
        seq.mid().clone(),
        mid_bar.clone(),
        (0..seq.mid().nvars())
            .map(|i| poly::var(mid_bar.poly_ring(), i))
            .collect(),
    )?;
    let tau_bar = AlgebraMorphism::compose(&pi, seq.tau())?;
    let quotient_seq = Sequence::new(tau_bar, g_bar)?;
    let bottom_square = TensorSquare::build(&quotient_seq)?;

    let degenerate = top_bar.quotient().is_zero_ring() || seq.top().quotient().is_zero_ring();

    let mut pairs = Vec::with_capacity(test_set.len());
    let mut forward = Vec::new();
    let mut reverse = Vec::new();
    for (idx, x) in test_set.iter().enumerate() {
        let (original, _) = wn_member(&top_square, x)?;
        let image = pi_bar.apply(x)?;
        let (derived, _) = wn_member(&bottom_square, &image)?;
        if !degenerate {
            if original && !derived {
                forward.push(idx);
            }
            if derived && !original {
                reverse.push(idx);
            }
        }
        pairs.push(MembershipPair {
            element: x.clone(),
            original,
            derived,
        });
    }
    let build_breaking = !forward.is_empty() || !reverse.is_empty();
    Ok(QuotientReport {
        pairs,
        forward_failures: forward,
        reverse_failures: reverse,
        degenerate,
        build_breaking,
    })
}

/// Idempotency at membership level: adjoining certified members to the middle
/// algebra must not change the membership answers.
#[derive(Clone, Debug)]
pub struct IdempotencyReport<F: Field> {
    pub pairs: Vec<MembershipPair<F>>,
    /// Membership over the enlarged algebra without membership over the
    /// original one.
    pub enlargement_failures: Vec<usize>,
    /// Original membership lost over the enlarged algebra.
    pub monotonicity_failures: Vec<usize>,
    pub build_breaking: bool,
}

/// Presents the subalgebra generated by the images of the middle algebra and
/// the supplied certified members via tag variables and a morphism kernel,
/// then compares memberships.
pub fn idempotency_check<F: Field>(
    seq: &Sequence<F>,
    wn_gens: &[Poly<F>],
    test_set: &[Poly<F>],
) -> Result<IdempotencyReport<F>> {
    let square = TensorSquare::build(seq)?;
    for w in wn_gens {
        let (member, _) = wn_member(&square, w)?;
        if !member {
            return Err(Error::InvalidWitness(format!(
                "`{w}` is not a member of the radical saturation"
            )));
        }
    }

    // A'' generated by the g-images of A's variables plus the witnesses
    let mut generators: Vec<Poly<F>> = seq.g().images().to_vec();
    for w in wn_gens {
        generators.push(seq.top().quotient().nf(w)?);
    }
    let tag_names: Vec<String> = (1..=generators.len()).map(|i| format!("w{i}")).collect();
    let free = PresentedAlgebra::new(
        format!("{}''(free)", seq.mid().name()),
        seq.mid().field().clone(),
        tag_names.clone(),
        Vec::new(),
    )?;
    let onto = AlgebraMorphism::new(free.clone(), seq.top().clone(), generators.clone())?;
    let kernel = kernel_of_morphism(&onto)?;
    let enlarged = PresentedAlgebra::new(
        format!("{}''", seq.mid().name()),
        seq.mid().field().clone(),
        tag_names,
        kernel.gens().to_vec(),
    )?;
    let g2 = AlgebraMorphism::new(enlarged.clone(), seq.top().clone(), generators)?;

    // τ'' : R → A'' sends each base generator through τ, rewritten in the
    // first block of tags (which present the images of A's variables)
    let mid_to_tags: Vec<usize> = (0..seq.mid().nvars()).collect();
    let tau2_images: Result<Vec<Poly<F>>> = seq
        .tau()
        .images()
        .iter()
        .map(|p| p.remap_indices(enlarged.poly_ring(), &mid_to_tags))
        .collect();
    let tau2 = AlgebraMorphism::new(seq.base().clone(), enlarged.clone(), tau2_images?)?;
    let enlarged_seq = Sequence::new(tau2, g2)?;
    let enlarged_square = TensorSquare::build(&enlarged_seq)?;

    let mut pairs = Vec::with_capacity(test_set.len());
    let mut enlargement = Vec::new();
    let mut monotonicity = Vec::new();
    for (idx, x) in test_set.iter().enumerate() {
        let (original, _) = wn_member(&square, x)?;
        let (derived, _) = wn_member(&enlarged_square, x)?;
        if derived && !original {
            enlargement.push(idx);
        }
        if original && !derived {
            monotonicity.push(idx);
        }
        pairs.push(MembershipPair {
            element: x.clone(),
            original,
            derived,
        });
    }
    let build_breaking = !enlargement.is_empty() || !monotonicity.is_empty();
    Ok(IdempotencyReport {
        pairs,
        enlargement_failures: enlargement,
        monotonicity_failures: monotonicity,
        build_breaking,
    })
}
