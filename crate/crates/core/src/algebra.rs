//! Finitely presented algebras, morphisms between them, sequences
//! `R → A → B`, tensor squares with the diagonal map, and morphism kernels.
//!
//! A tensor product `B ⊗_S B` is presented in doubled variables: each
//! variable `y` of `B` appears once as `y` (left factor) and once as `y_r`
//! (right factor), and the identifications `h(y) - h(y_r)` for the images `h`
//! of the generators of `S` are added to the relations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{eliminate_block_raw, Ideal, QuotientRing};
use crate::poly::{self, Poly, PolyRing};

/// A quotient of a polynomial ring by a finite relation ideal. The base field
/// itself is the algebra with no variables and no relations.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra<F: Field> {
    name: String,
    quotient: Arc<QuotientRing<F>>,
}

impl<F: Field> PresentedAlgebra<F> {
    pub fn new(
        name: impl Into<String>,
        field: F,
        vars: Vec<String>,
        relations: Vec<Poly<F>>,
    ) -> Result<Arc<PresentedAlgebra<F>>> {
        let ring = PolyRing::new(field, vars)?;
        let quotient = QuotientRing::new(ring, relations)?;
        Ok(Arc::new(PresentedAlgebra {
            name: name.into(),
            quotient,
        }))
    }

    pub fn from_quotient(
        name: impl Into<String>,
        quotient: Arc<QuotientRing<F>>,
    ) -> Arc<PresentedAlgebra<F>> {
        Arc::new(PresentedAlgebra {
            name: name.into(),
            quotient,
        })
    }

    /// The base field as an algebra: no variables, no relations.
    pub fn base_field(name: impl Into<String>, field: F) -> Arc<PresentedAlgebra<F>> {
        PresentedAlgebra::new(name, field, Vec::new(), Vec::new()).expect("empty presentation")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quotient(&self) -> &Arc<QuotientRing<F>> {
        &self.quotient
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing<F>> {
        self.quotient.ring()
    }

    pub fn field(&self) -> &F {
        self.poly_ring().field()
    }

    pub fn vars(&self) -> &[String] {
        self.poly_ring().vars()
    }

    pub fn nvars(&self) -> usize {
        self.poly_ring().nvars()
    }

    pub fn relations(&self) -> &[Poly<F>] {
        self.quotient.relations()
    }

    /// Structural compatibility: same ring and same relation list. Names do
    /// not matter.
    pub fn compatible(a: &Arc<PresentedAlgebra<F>>, b: &Arc<PresentedAlgebra<F>>) -> bool {
        Arc::ptr_eq(a, b) || QuotientRing::compatible(&a.quotient, &b.quotient)
    }
}

/// A generator-image map between presented algebras. Well-definedness (every
/// source relation maps to zero) is checked by [`AlgebraMorphism::validate`],
/// not at construction.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism<F: Field> {
    from: Arc<PresentedAlgebra<F>>,
    to: Arc<PresentedAlgebra<F>>,
    images: Vec<Poly<F>>,
}

impl<F: Field> AlgebraMorphism<F> {
    pub fn new(
        from: Arc<PresentedAlgebra<F>>,
        to: Arc<PresentedAlgebra<F>>,
        images: Vec<Poly<F>>,
    ) -> Result<AlgebraMorphism<F>> {
        if images.len() != from.nvars() {
            return Err(Error::InvalidMorphism(format!(
                "{} images supplied for {} source variables",
                images.len(),
                from.nvars()
            )));
        }
        if from.field() != to.field() {
            return Err(Error::InvalidMorphism("coefficient fields differ".into()));
        }
        let images: Result<Vec<Poly<F>>> = images.iter().map(|p| p.embed(to.poly_ring())).collect();
        Ok(AlgebraMorphism {
            from,
            to,
            images: images?,
        })
    }

    pub fn identity(alg: &Arc<PresentedAlgebra<F>>) -> AlgebraMorphism<F> {
        let images = (0..alg.nvars())
            .map(|i| poly::var(alg.poly_ring(), i))
            .collect();
        AlgebraMorphism {
            from: alg.clone(),
            to: alg.clone(),
            images,
        }
    }

    pub fn from_algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.from
    }

    pub fn to_algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.to
    }

    pub fn images(&self) -> &[Poly<F>] {
        &self.images
    }

    /// Applies the morphism and returns the canonical representative in the
    /// target quotient.
    pub fn apply(&self, f: &Poly<F>) -> Result<Poly<F>> {
        if !PolyRing::compatible(f.ring(), self.from.poly_ring()) {
            return Err(Error::RingMismatch(
                "element does not live in the morphism source".into(),
            ));
        }
        let raw = f.substitute(self.to.poly_ring(), &self.images)?;
        self.to.quotient.nf(&raw)
    }

    /// Well-definedness: every source relation maps to zero in the target
    /// quotient.
    pub fn validate(&self) -> Result<bool> {
        for r in self.from.relations() {
            if !self.apply(r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `second ∘ first`.
    pub fn compose(
        second: &AlgebraMorphism<F>,
        first: &AlgebraMorphism<F>,
    ) -> Result<AlgebraMorphism<F>> {
        if !PresentedAlgebra::compatible(&first.to, &second.from) {
            return Err(Error::CompositionMismatch(format!(
                "target `{}` does not match source `{}`",
                first.to.name(),
                second.from.name()
            )));
        }
        let images: Result<Vec<Poly<F>>> = first.images.iter().map(|p| second.apply(p)).collect();
        Ok(AlgebraMorphism {
            from: first.from.clone(),
            to: second.to.clone(),
            images: images?,
        })
    }

    /// Pointwise equality on generators, modulo target relations.
    pub fn equals(&self, other: &AlgebraMorphism<F>) -> Result<bool> {
        if !PresentedAlgebra::compatible(&self.from, &other.from)
            || !PresentedAlgebra::compatible(&self.to, &other.to)
        {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            let diff = a.sub(&b.embed(self.to.poly_ring())?)?;
            if !self.to.quotient.is_zero_mod(&diff)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Kernel of a morphism between presented algebras, computed by eliminating
/// the target variables from the graph ideal `J + (x_i - F_i)` and reducing
/// the result modulo the source relations.
pub fn kernel_of_morphism<F: Field>(psi: &AlgebraMorphism<F>) -> Result<Ideal<F>> {
    let source = psi.from_algebra();
    let target = psi.to_algebra();
    let tn = target.nvars();
    let sn = source.nvars();

    // combined ring: target variables first (they get eliminated), then a
    // fresh copy of each source variable
    let mut names: Vec<String> = target.vars().to_vec();
    let mut source_pos = Vec::with_capacity(sn);
    for v in source.vars() {
        let mut candidate = v.clone();
        while names.contains(&candidate) {
            candidate.push('_');
        }
        source_pos.push(names.len());
        names.push(candidate);
    }
    let combined = PolyRing::new(source.field().clone(), names)?;

    let mut gens: Vec<Poly<F>> = Vec::new();
    for r in target.relations() {
        gens.push(r.embed(&combined)?);
    }
    for (i, img) in psi.images().iter().enumerate() {
        let xvar = poly::var(&combined, source_pos[i]);
        gens.push(xvar.sub(&img.embed(&combined)?)?);
    }

    let eliminated = eliminate_block_raw(&combined, &gens, tn)?;

    // map back to the source ring and reduce modulo the source relations
    let mut back_map = vec![0usize; combined.nvars()];
    for (i, &pos) in source_pos.iter().enumerate() {
        back_map[pos] = i;
    }
    let mut kernel_gens = Vec::new();
    for g in eliminated {
        let back = g.remap_indices(source.poly_ring(), &back_map)?;
        let reduced = source.quotient().nf(&back)?;
        if !reduced.is_zero() && !kernel_gens.contains(&reduced) {
            kernel_gens.push(reduced);
        }
    }
    Ideal::new(source.quotient().clone(), kernel_gens)
}

/// A sequence of ring morphisms `R → A → B`.
#[derive(Debug, Clone)]
pub struct Sequence<F: Field> {
    base: Arc<PresentedAlgebra<F>>,
    mid: Arc<PresentedAlgebra<F>>,
    top: Arc<PresentedAlgebra<F>>,
    tau: AlgebraMorphism<F>,
    g: AlgebraMorphism<F>,
}

impl<F: Field> Sequence<F> {
    pub fn new(tau: AlgebraMorphism<F>, g: AlgebraMorphism<F>) -> Result<Sequence<F>> {
        if !PresentedAlgebra::compatible(tau.to_algebra(), g.from_algebra()) {
            return Err(Error::InvalidSequence(
                "tau and g are not composable".into(),
            ));
        }
        if !tau.validate()? {
            return Err(Error::InvalidSequence("tau is not well-defined".into()));
        }
        if !g.validate()? {
            return Err(Error::InvalidSequence("g is not well-defined".into()));
        }
        Ok(Sequence {
            base: tau.from_algebra().clone(),
            mid: g.from_algebra().clone(),
            top: g.to_algebra().clone(),
            tau,
            g,
        })
    }

    pub fn base(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.base
    }
    pub fn mid(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.mid
    }
    pub fn top(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.top
    }
    pub fn tau(&self) -> &AlgebraMorphism<F> {
        &self.tau
    }
    pub fn g(&self) -> &AlgebraMorphism<F> {
        &self.g
    }

    /// The structure morphism `R → B`, i.e. `g ∘ tau`.
    pub fn structure(&self) -> Result<AlgebraMorphism<F>> {
        AlgebraMorphism::compose(&self.g, &self.tau)
    }
}

/// The doubled-variable suffix for right tensor factors.
pub const RIGHT_SUFFIX: &str = "_r";

/// A presented tensor product `B ⊗_S B` with its two embeddings.
#[derive(Debug, Clone)]
pub struct TensorProduct<F: Field> {
    algebra: Arc<PresentedAlgebra<F>>,
    left: AlgebraMorphism<F>,
    right: AlgebraMorphism<F>,
}

impl<F: Field> TensorProduct<F> {
    pub fn algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.algebra
    }
    pub fn left(&self) -> &AlgebraMorphism<F> {
        &self.left
    }
    pub fn right(&self) -> &AlgebraMorphism<F> {
        &self.right
    }
    pub fn ambient(&self) -> &Arc<QuotientRing<F>> {
        self.algebra.quotient()
    }
}

/// Presents `B ⊗_base B` in doubled variables, where `structure : base → B`
/// gives the identification relations `h(y) - h(y_r)` for each base variable.
pub fn tensor_over<F: Field>(
    base: &Arc<PresentedAlgebra<F>>,
    b: &Arc<PresentedAlgebra<F>>,
    structure: &AlgebraMorphism<F>,
) -> Result<TensorProduct<F>> {
    if !PresentedAlgebra::compatible(structure.from_algebra(), base)
        || !PresentedAlgebra::compatible(structure.to_algebra(), b)
    {
        return Err(Error::InvalidMorphism(
            "structure morphism endpoints do not match the tensor factors".into(),
        ));
    }
    if !structure.validate()? {
        return Err(Error::InvalidMorphism(
            "structure morphism is not well-defined".into(),
        ));
    }
    let n = b.nvars();
    let mut names: Vec<String> = b.vars().to_vec();
    for v in b.vars() {
        let doubled = format!("{v}{RIGHT_SUFFIX}");
        if names.contains(&doubled) {
            return Err(Error::InvalidMorphism(format!(
                "doubled variable name `{doubled}` collides with an existing variable"
            )));
        }
        names.push(doubled);
    }
    let ring = PolyRing::new(b.field().clone(), names)?;

    let left_map: Vec<usize> = (0..n).collect();
    let right_map: Vec<usize> = (n..2 * n).collect();

    let mut relations: Vec<Poly<F>> = Vec::new();
    for r in b.relations() {
        relations.push(r.remap_indices(&ring, &left_map)?);
    }
    for r in b.relations() {
        relations.push(r.remap_indices(&ring, &right_map)?);
    }
    for h in structure.images() {
        let ident = h
            .remap_indices(&ring, &left_map)?
            .sub(&h.remap_indices(&ring, &right_map)?)?;
        if !ident.is_zero() && !relations.contains(&ident) {
            relations.push(ident);
        }
    }

    let name = format!("{}(x){}/{}", b.name(), b.name(), base.name());
    let algebra = PresentedAlgebra::from_quotient(name, QuotientRing::new(ring, relations)?);

    let left_images: Vec<Poly<F>> = left_map
        .iter()
        .map(|&i| poly::var(algebra.poly_ring(), i))
        .collect();
    let right_images: Vec<Poly<F>> = right_map
        .iter()
        .map(|&i| poly::var(algebra.poly_ring(), i))
        .collect();
    let left = AlgebraMorphism::new(b.clone(), algebra.clone(), left_images)?;
    let right = AlgebraMorphism::new(b.clone(), algebra.clone(), right_images)?;
    Ok(TensorProduct {
        algebra,
        left,
        right,
    })
}

/// The tensor-square data of one sequence `R → A → B`: presentations of
/// `B ⊗_R B` and `B ⊗_A B`, the canonical morphism `φ` between them, and the
/// kernel ideal of `φ` generated by the diagonal images of `A`'s generators.
#[derive(Debug, Clone)]
pub struct TensorSquare<F: Field> {
    seq: Sequence<F>,
    tensor_rr: TensorProduct<F>,
    tensor_aa: TensorProduct<F>,
    phi: AlgebraMorphism<F>,
    phi_kernel: Ideal<F>,
}

impl<F: Field> TensorSquare<F> {
    /// Builds the square. The diagonal images of the base generators are
    /// asserted to vanish in `B ⊗_R B`, not assumed.
    pub fn build(seq: &Sequence<F>) -> Result<TensorSquare<F>> {
        let structure = seq.structure()?;
        let tensor_rr = tensor_over(seq.base(), seq.top(), &structure)?;
        let tensor_aa = tensor_over(seq.mid(), seq.top(), seq.g())?;

        let phi_images: Vec<Poly<F>> = (0..tensor_aa.algebra().nvars())
            .map(|i| poly::var(tensor_aa.algebra().poly_ring(), i))
            .collect();
        let phi = AlgebraMorphism::new(
            tensor_rr.algebra().clone(),
            tensor_aa.algebra().clone(),
            phi_images,
        )?;
        if !phi.validate()? {
            return Err(Error::InvalidSequence(
                "canonical morphism between the tensor squares is not well-defined".into(),
            ));
        }

        let diag = |x: &Poly<F>| -> Result<Poly<F>> {
            let l = tensor_rr.left().apply(x)?;
            let r = tensor_rr.right().apply(x)?;
            tensor_rr.algebra().quotient().nf(&l.sub(&r)?)
        };

        let mut kernel_gens: Vec<Poly<F>> = Vec::new();
        for a_img in seq.g().images() {
            let d = diag(a_img)?;
            if !d.is_zero() && !kernel_gens.contains(&d) {
                kernel_gens.push(d);
            }
        }
        for r_img in structure.images() {
            let d = diag(r_img)?;
            if !d.is_zero() {
                return Err(Error::InvalidSequence(format!(
                    "diagonal of base-generator image `{r_img}` does not vanish in the tensor square"
                )));
            }
        }
        let phi_kernel = Ideal::new(tensor_rr.ambient().clone(), kernel_gens)?;

        Ok(TensorSquare {
            seq: seq.clone(),
            tensor_rr,
            tensor_aa,
            phi,
            phi_kernel,
        })
    }

    pub fn seq(&self) -> &Sequence<F> {
        &self.seq
    }
    pub fn tensor_rr(&self) -> &TensorProduct<F> {
        &self.tensor_rr
    }
    pub fn tensor_aa(&self) -> &TensorProduct<F> {
        &self.tensor_aa
    }
    pub fn phi(&self) -> &AlgebraMorphism<F> {
        &self.phi
    }
    pub fn phi_kernel(&self) -> &Ideal<F> {
        &self.phi_kernel
    }

    /// `Δ(x) = x⊗1 - 1⊗x`, canonical in `B ⊗_R B`.
    pub fn diagonal(&self, x: &Poly<F>) -> Result<Poly<F>> {
        let l = self.tensor_rr.left().apply(x)?;
        let r = self.tensor_rr.right().apply(x)?;
        self.tensor_rr.algebra().quotient().nf(&l.sub(&r)?)
    }
}

/// The bridge of the big commutative diagram: the intermediate tensor product
/// `B' ⊗_R B'`, the canonical projection `p` onto `B' ⊗_{R'} B'`, the doubled
/// morphism `f ⊗ f`, and their composite `f̄ = p ∘ (f ⊗ f)`.
#[derive(Debug, Clone)]
pub struct Bridge<F: Field> {
    mid: TensorProduct<F>,
    p: AlgebraMorphism<F>,
    f_tensor: AlgebraMorphism<F>,
    fbar: AlgebraMorphism<F>,
}

impl<F: Field> Bridge<F> {
    pub fn mid(&self) -> &TensorProduct<F> {
        &self.mid
    }
    pub fn p(&self) -> &AlgebraMorphism<F> {
        &self.p
    }
    pub fn f_tensor(&self) -> &AlgebraMorphism<F> {
        &self.f_tensor
    }
    pub fn fbar(&self) -> &AlgebraMorphism<F> {
        &self.fbar
    }

    /// `ker p` as an ideal of `B' ⊗_R B'`: it is generated by the images of
    /// the diagonals of the bottom base generators.
    pub fn p_kernel(&self, bottom_structure: &AlgebraMorphism<F>) -> Result<Ideal<F>> {
        let ring = self.mid.algebra().poly_ring();
        let n = bottom_structure.to_algebra().nvars();
        let left_map: Vec<usize> = (0..n).collect();
        let right_map: Vec<usize> = (n..2 * n).collect();
        let mut gens = Vec::new();
        for s in bottom_structure.images() {
            let d = s
                .remap_indices(ring, &left_map)?
                .sub(&s.remap_indices(ring, &right_map)?)?;
            let d = self.mid.algebra().quotient().nf(&d)?;
            if !d.is_zero() && !gens.contains(&d) {
                gens.push(d);
            }
        }
        Ideal::new(self.mid.ambient().clone(), gens)
    }
}

/// Builds the bridge between the tensor squares of the two rows of a
/// commuting diagram, given the connecting morphism `f : B → B'`. The
/// identity `f̄ ∘ Δ = Δ' ∘ f` is asserted on every generator of `B`.
pub fn build_bridge<F: Field>(
    top: &TensorSquare<F>,
    bottom: &TensorSquare<F>,
    f: &AlgebraMorphism<F>,
) -> Result<Bridge<F>> {
    if !PresentedAlgebra::compatible(f.from_algebra(), top.seq().top())
        || !PresentedAlgebra::compatible(f.to_algebra(), bottom.seq().top())
    {
        return Err(Error::InvalidMorphism(
            "bridge morphism endpoints do not match the rows".into(),
        ));
    }
    if !f.validate()? {
        return Err(Error::InvalidMorphism(
            "bridge morphism is not well-defined".into(),
        ));
    }

    // B' ⊗_R B', structured over the top base through f ∘ g ∘ τ
    let top_structure = top.seq().structure()?;
    let mid_structure = AlgebraMorphism::compose(f, &top_structure)?;
    let mid = tensor_over(top.seq().base(), bottom.seq().top(), &mid_structure)?;

    // f ⊗ f : B ⊗_R B → B' ⊗_R B'
    let bn = bottom.seq().top().nvars();
    let left_map: Vec<usize> = (0..bn).collect();
    let right_map: Vec<usize> = (bn..2 * bn).collect();
    let mut images = Vec::with_capacity(2 * f.images().len());
    for img in f.images() {
        images.push(img.remap_indices(mid.algebra().poly_ring(), &left_map)?);
    }
    for img in f.images() {
        images.push(img.remap_indices(mid.algebra().poly_ring(), &right_map)?);
    }
    let f_tensor = AlgebraMorphism::new(
        top.tensor_rr().algebra().clone(),
        mid.algebra().clone(),
        images,
    )?;
    if !f_tensor.validate()? {
        return Err(Error::NonCommuting(
            "doubled morphism is not well-defined on the top tensor square".into(),
        ));
    }

    // p is the identity on variables; it is well-defined exactly when the
    // outer square commutes
    let p_images: Vec<Poly<F>> = (0..bottom.tensor_rr().algebra().nvars())
        .map(|i| poly::var(bottom.tensor_rr().algebra().poly_ring(), i))
        .collect();
    let p = AlgebraMorphism::new(
        mid.algebra().clone(),
        bottom.tensor_rr().algebra().clone(),
        p_images,
    )?;
    if !p.validate()? {
        return Err(Error::NonCommuting(
            "canonical projection between base rings is not well-defined; the outer square does not commute".into(),
        ));
    }

    let fbar = AlgebraMorphism::compose(&p, &f_tensor)?;

    // commutativity of the big diagram on generators
    for i in 0..top.seq().top().nvars() {
        let y = poly::var(top.seq().top().poly_ring(), i);
        let lhs = fbar.apply(&top.diagonal(&y)?)?;
        let rhs = bottom.diagonal(&f.apply(&y)?)?;
        if lhs != rhs {
            return Err(Error::NonCommuting(format!(
                "bridge does not intertwine the diagonals at `{}`",
                top.seq().top().vars()[i]
            )));
        }
    }

    Ok(Bridge {
        mid,
        p,
        f_tensor,
        fbar,
    })
}
