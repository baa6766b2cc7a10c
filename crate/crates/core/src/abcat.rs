//! The backend-neutral category contract.
//!
//! Objects are formal finite direct sums of indecomposables (Krull-Schmidt
//! normal form); each backend realizes them concretely and provides exact
//! hom, kernel, cokernel and enumeration primitives. All theorem-level
//! machinery is written against [`Backend`] only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of one indecomposable (up to isomorphism) in a backend's list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct IndId(pub u16);

/// Formal direct sum: a sorted multiset of indecomposables. Empty = zero
/// object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ObjectExpr {
    summands: Vec<IndId>,
}

impl ObjectExpr {
    pub fn new(mut summands: Vec<IndId>) -> Self {
        summands.sort();
        ObjectExpr { summands }
    }

    pub fn zero() -> Self {
        ObjectExpr { summands: Vec::new() }
    }

    pub fn single(id: IndId) -> Self {
        ObjectExpr { summands: vec![id] }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[IndId] {
        &self.summands
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn plus(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut v = self.summands.clone();
        v.extend_from_slice(&other.summands);
        ObjectExpr::new(v)
    }

    /// Bitmask of the distinct indecomposables occurring.
    pub fn support(&self) -> u64 {
        self.summands.iter().fold(0u64, |m, id| m | (1u64 << id.0))
    }

    /// True iff every summand's id appears in `members_mask`, i.e. the
    /// object lies in the additive closure of that member set.
    pub fn supported_in(&self, members_mask: u64) -> bool {
        self.support() & !members_mask == 0
    }
}

/// The abelian-backend contract. All operations are exact and pure.
pub trait Backend: Sync {
    type Obj: Clone + PartialEq + Send + Sync;
    type Mor: Clone + PartialEq + Send + Sync;

    fn name(&self) -> String;
    fn indecomposables(&self) -> Vec<IndId>;
    fn label(&self, id: IndId) -> String;
    fn parse_ind(&self, s: &str) -> Result<IndId>;

    fn realize(&self, x: &ObjectExpr) -> Self::Obj;
    fn decompose(&self, o: &Self::Obj) -> ObjectExpr;
    /// Composition length of a formal object.
    fn length(&self, x: &ObjectExpr) -> usize;

    /// The bounded universe all exhaustive checks quantify over. Default:
    /// every multiplicity-free direct sum of indecomposables.
    fn universe(&self) -> Vec<ObjectExpr> {
        let inds = self.indecomposables();
        assert!(inds.len() <= 20, "universe too large to enumerate");
        let mut out = Vec::with_capacity(1 << inds.len());
        for mask in 0u32..(1 << inds.len()) {
            let s = inds
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, id)| *id)
                .collect();
            out.push(ObjectExpr::new(s));
        }
        out
    }

    fn obj_is_zero(&self, o: &Self::Obj) -> bool;
    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn zero_mor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn negate(&self, f: &Self::Mor) -> Self::Mor;
    /// g after f.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn is_zero_mor(&self, f: &Self::Mor) -> bool;

    /// Independent generators of Hom(a, b): a field basis for linear
    /// backends, independent generators with orders for abelian groups.
    /// Empty iff Hom = 0.
    fn hom_basis(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    /// Number of elements of Hom(a, b).
    fn hom_measure(&self, a: &Self::Obj, b: &Self::Obj) -> u128;
    /// Is f in the subgroup generated by `gens` (all parallel morphisms)?
    fn span_contains(&self, gens: &[Self::Mor], f: &Self::Mor) -> bool {
        self.span_coords(gens, f).is_some()
    }
    /// Integer coefficients expressing f over `gens`, when possible.
    fn span_coords(&self, gens: &[Self::Mor], f: &Self::Mor) -> Option<Vec<u64>>;
    /// Does the subgroup generated by `gens` equal all of Hom(a, b)?
    fn span_is_full(&self, a: &Self::Obj, b: &Self::Obj, gens: &[Self::Mor]) -> bool;

    fn kernel(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor);
    fn cokernel(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor);
    /// (image object, epi onto it, mono into the target); the composite
    /// equals f entrywise.
    fn image(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor, Self::Mor);

    fn is_mono(&self, f: &Self::Mor) -> bool {
        self.obj_is_zero(&self.kernel(f).0)
    }
    fn is_epi(&self, f: &Self::Mor) -> bool {
        self.obj_is_zero(&self.cokernel(f).0)
    }

    /// g with mono∘g = f (unique when it exists).
    fn lift_through_mono(&self, mono: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    /// g with g∘epi = f (unique when it exists).
    fn descend_through_epi(&self, epi: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;

    /// Generators of the subgroup {λ ∈ Hom(w, src f) : f∘λ ∈ span(triv_gens)}.
    /// With empty triv_gens this is the subgroup of λ with f∘λ = 0.
    fn left_preimage_gens(
        &self,
        f: &Self::Mor,
        w: &Self::Obj,
        triv_gens: &[Self::Mor],
    ) -> Vec<Self::Mor>;
    /// Generators of {λ ∈ Hom(tgt f, w) : λ∘f ∈ span(triv_gens)}.
    fn right_preimage_gens(
        &self,
        f: &Self::Mor,
        w: &Self::Obj,
        triv_gens: &[Self::Mor],
    ) -> Vec<Self::Mor>;

    /// (sum, injections, projections) with the biproduct identities.
    fn direct_sum(&self, parts: &[Self::Obj]) -> (Self::Obj, Vec<Self::Mor>, Vec<Self::Mor>);

    /// One mono per subobject, complete within the backend's enumeration
    /// bound.
    fn subobjects(&self, o: &Self::Obj) -> Result<Vec<(Self::Obj, Self::Mor)>>;
}

/// The joint morphism ⊕ src(f_i) → target, restricting to f_i on the i-th
/// summand. With no maps this is the zero map out of the zero object.
pub fn joint_map_from<B: Backend>(b: &B, target: &B::Obj, maps: &[B::Mor]) -> B::Mor {
    let sources: Vec<B::Obj> = maps.iter().map(|f| b.source(f)).collect();
    let (sum, _injs, projs) = b.direct_sum(&sources);
    let mut h = b.zero_mor(&sum, target);
    for (f, pr) in maps.iter().zip(projs.iter()) {
        h = b.add(&h, &b.compose(f, pr));
    }
    h
}

/// The joint morphism source → ⊕ tgt(f_i).
pub fn joint_map_into<B: Backend>(b: &B, source: &B::Obj, maps: &[B::Mor]) -> B::Mor {
    let targets: Vec<B::Obj> = maps.iter().map(|f| b.target(f)).collect();
    let (sum, injs, _projs) = b.direct_sum(&targets);
    let mut h = b.zero_mor(source, &sum);
    for (f, inj) in maps.iter().zip(injs.iter()) {
        h = b.add(&h, &b.compose(inj, f));
    }
    h
}

pub struct Square<B: Backend> {
    pub corner: B::Obj,
    pub to_a: B::Mor,
    pub to_b: B::Mor,
}

/// Pullback of f: A → C, g: B → C as the kernel of f∘pA − g∘pB on A⊕B.
pub fn pullback<B: Backend>(b: &B, f: &B::Mor, g: &B::Mor) -> Square<B> {
    let a = b.source(f);
    let bb = b.source(g);
    let (_, _injs, projs) = b.direct_sum(&[a, bb]);
    let h = b.add(&b.compose(f, &projs[0]), &b.negate(&b.compose(g, &projs[1])));
    let (p, k) = b.kernel(&h);
    Square { corner: p, to_a: b.compose(&projs[0], &k), to_b: b.compose(&projs[1], &k) }
}

/// Pushout of f: C → A, g: C → B, dual to [`pullback`]. The returned maps
/// go A → corner and B → corner.
pub fn pushout<B: Backend>(b: &B, f: &B::Mor, g: &B::Mor) -> Square<B> {
    let a = b.target(f);
    let bb = b.target(g);
    let (_, injs, _projs) = b.direct_sum(&[a, bb]);
    let h = b.add(&b.compose(&injs[0], f), &b.negate(&b.compose(&injs[1], g)));
    let (q, c) = b.cokernel(&h);
    Square { corner: q, to_a: b.compose(&c, &injs[0]), to_b: b.compose(&c, &injs[1]) }
}

/// A verified short exact sequence sub ↪ mid ↠ quo.
#[derive(Clone)]
pub struct Ses<B: Backend> {
    pub i: B::Mor,
    pub p: B::Mor,
}

/// Check p∘i = 0, i = ker p, p = coker i, and length additivity.
pub fn validate_ses<B: Backend>(b: &B, i: &B::Mor, p: &B::Mor) -> Result<Ses<B>> {
    if !b.is_zero_mor(&b.compose(p, i)) {
        return Err(Error::Precondition("SES: p∘i != 0".into()));
    }
    if !b.is_mono(i) {
        return Err(Error::Precondition("SES: i is not mono".into()));
    }
    if !b.is_epi(p) {
        return Err(Error::Precondition("SES: p is not epi".into()));
    }
    // im(i) = ker(p): mutual factorization of the two monos
    let (_, k) = b.kernel(p);
    if b.lift_through_mono(i, &k).is_none() || b.lift_through_mono(&k, i).is_none() {
        return Err(Error::Precondition("SES: i is not a kernel of p".into()));
    }
    // p = coker(i) up to iso
    let (_, c) = b.cokernel(i);
    match b.descend_through_epi(&c, p) {
        Some(q) if b.is_mono(&q) && b.is_epi(&q) => {}
        _ => return Err(Error::Precondition("SES: p is not a cokernel of i".into())),
    }
    let ls = b.length(&b.decompose(&b.source(i)));
    let lm = b.length(&b.decompose(&b.target(i)));
    let lq = b.length(&b.decompose(&b.target(p)));
    if ls + lq != lm {
        return Err(Error::Precondition(format!(
            "SES: length {} + {} != {}",
            ls, lq, lm
        )));
    }
    Ok(Ses { i: i.clone(), p: p.clone() })
}

/// Universal-property check for a pullback square, with test morphisms
/// quantified over the given tester objects (indecomposables suffice by
/// additivity).
pub fn check_pullback_universal<B: Backend>(
    b: &B,
    f: &B::Mor,
    g: &B::Mor,
    sq: &Square<B>,
    testers: &[B::Obj],
) -> bool {
    // square commutes
    if b.compose(f, &sq.to_a) != b.compose(g, &sq.to_b) {
        return false;
    }
    let a = b.source(f);
    let bb = b.source(g);
    let (_, _injs, projs) = b.direct_sum(&[a, bb]);
    let h = b.add(&b.compose(f, &projs[0]), &b.negate(&b.compose(g, &projs[1])));
    // mono P → A⊕B recovered from the projections
    let (sum, injs2, _) = b.direct_sum(&[b.source(f), b.source(g)]);
    let _ = sum;
    let k = b.add(&b.compose(&injs2[0], &sq.to_a), &b.compose(&injs2[1], &sq.to_b));
    for w in testers {
        // pairs (u, v) with f∘u = g∘v, as elements λ of Hom(W, A⊕B) with h∘λ = 0
        for lam in b.left_preimage_gens(&h, w, &[]) {
            let Some(wmap) = b.lift_through_mono(&k, &lam) else {
                return false;
            };
            let u = b.compose(&projs[0], &lam);
            let v = b.compose(&projs[1], &lam);
            if b.compose(&sq.to_a, &wmap) != u || b.compose(&sq.to_b, &wmap) != v {
                return false;
            }
        }
    }
    true
}

/// Universal-property check for a pushout square, dual to
/// [`check_pullback_universal`]: cotesters receive pairs (u, v) with
/// u∘f = v∘g, which must descend uniquely through the corner.
pub fn check_pushout_universal<B: Backend>(
    b: &B,
    f: &B::Mor,
    g: &B::Mor,
    sq: &Square<B>,
    testers: &[B::Obj],
) -> bool {
    if b.compose(&sq.to_a, f) != b.compose(&sq.to_b, g) {
        return false;
    }
    let a = b.target(f);
    let bb = b.target(g);
    let (_, injs, projs) = b.direct_sum(&[a, bb]);
    let h = b.add(&b.compose(&injs[0], f), &b.negate(&b.compose(&injs[1], g)));
    // epi A⊕B → corner recovered from the two legs
    let c = b.add(&b.compose(&sq.to_a, &projs[0]), &b.compose(&sq.to_b, &projs[1]));
    for w in testers {
        // pairs (u, v) with u∘f = v∘g, as elements ρ of Hom(A⊕B, W) with ρ∘h = 0
        for rho in b.right_preimage_gens(&h, w, &[]) {
            let Some(wmap) = b.descend_through_epi(&c, &rho) else {
                return false;
            };
            let u = b.compose(&rho, &injs[0]);
            let v = b.compose(&rho, &injs[1]);
            if b.compose(&wmap, &sq.to_a) != u || b.compose(&wmap, &sq.to_b) != v {
                return false;
            }
        }
    }
    true
}
