//! Torsion pairs, additive classes, extension products and Serre
//! subcategories, all generic over a [`Backend`].
//!
//! A class is stored by its indecomposable members; membership of an object
//! means every Krull-Schmidt summand is a member. Universal statements are
//! quantified over the backend's bounded universe.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::abcat::{joint_map_from, joint_map_into, validate_ses, Backend, IndId, ObjectExpr};
use crate::error::{Error, Result};

/// Additive full subcategory given by its indecomposable members.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ClassSpec {
    members: Vec<IndId>,
}

impl ClassSpec {
    pub fn new(mut members: Vec<IndId>) -> Self {
        members.sort();
        members.dedup();
        ClassSpec { members }
    }

    pub fn zero() -> Self {
        ClassSpec::default()
    }

    pub fn everything<B: Backend>(b: &B) -> Self {
        ClassSpec::new(b.indecomposables())
    }

    pub fn from_mask(mask: u64) -> Self {
        ClassSpec::new((0..64).filter(|i| mask >> i & 1 == 1).map(|i| IndId(i as u16)).collect())
    }

    pub fn members(&self) -> &[IndId] {
        &self.members
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0u64, |m, id| m | 1 << id.0)
    }

    pub fn contains_ind(&self, id: IndId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Every summand of x is a member.
    pub fn contains(&self, x: &ObjectExpr) -> bool {
        x.supported_in(self.mask())
    }

    pub fn intersect(&self, other: &ClassSpec) -> ClassSpec {
        ClassSpec::from_mask(self.mask() & other.mask())
    }

    pub fn is_subset_of(&self, other: &ClassSpec) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn labels<B: Backend>(&self, b: &B) -> Vec<String> {
        self.members.iter().map(|&id| b.label(id)).collect()
    }
}

pub fn expr_label<B: Backend>(b: &B, x: &ObjectExpr) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        x.summands().iter().map(|&id| b.label(id)).collect::<Vec<_>>().join("⊕")
    }
}

/// Cached (subobject, quotient) decomposition pairs per universe object.
/// One entry per subobject of the realized object, deduplicated up to
/// isomorphism of the (sub, quot) pair.
#[derive(Default)]
pub struct Profiles {
    map: RwLock<HashMap<ObjectExpr, Arc<Vec<(ObjectExpr, ObjectExpr)>>>>,
}

impl Profiles {
    pub fn new() -> Self {
        Profiles::default()
    }

    pub fn get<B: Backend>(&self, b: &B, x: &ObjectExpr) -> Result<Arc<Vec<(ObjectExpr, ObjectExpr)>>> {
        if let Some(hit) = self.map.read().unwrap().get(x) {
            return Ok(hit.clone());
        }
        let obj = b.realize(x);
        let mut set = BTreeSet::new();
        for (sub, mono) in b.subobjects(&obj)? {
            let (quot, _) = b.cokernel(&mono);
            set.insert((b.decompose(&sub), b.decompose(&quot)));
        }
        let entry = Arc::new(set.into_iter().collect::<Vec<_>>());
        self.map.write().unwrap().insert(x.clone(), entry.clone());
        Ok(entry)
    }
}

/// Largest subobject of x built from maps out of the class: the image of the
/// joint morphism from all hom-basis elements of all members.
pub fn trace<B: Backend>(b: &B, x: &B::Obj, class: &ClassSpec) -> (B::Obj, B::Mor) {
    let maps: Vec<B::Mor> = class
        .members()
        .iter()
        .flat_map(|&id| b.hom_basis(&b.realize(&ObjectExpr::single(id)), x))
        .collect();
    let joint = joint_map_from(b, x, &maps);
    let (im, _, mono) = b.image(&joint);
    (im, mono)
}

/// Largest quotient of x mapping into the class: the image of the joint
/// morphism into all members, with its epi part.
pub fn reject<B: Backend>(b: &B, x: &B::Obj, class: &ClassSpec) -> (B::Obj, B::Mor) {
    let maps: Vec<B::Mor> = class
        .members()
        .iter()
        .flat_map(|&id| b.hom_basis(x, &b.realize(&ObjectExpr::single(id))))
        .collect();
    let joint = joint_map_into(b, x, &maps);
    let (im, epi, _) = b.image(&joint);
    (im, epi)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TorsionPair {
    pub t: ClassSpec,
    pub f: ClassSpec,
}

impl Serialize for ClassSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionPairReport {
    pub ok: bool,
    /// member pairs (t, f) with Hom(t, f) ≠ 0
    pub hom_failures: Vec<(String, String)>,
    /// universe objects whose canonical sequence does not land in (T, F)
    pub seq_failures: Vec<String>,
}

pub struct CanonicalSeq<B: Backend> {
    pub t_part: B::Obj,
    pub mono: B::Mor,
    pub f_part: B::Obj,
    pub epi: B::Mor,
}

/// The sequence trace(X,T) ↪ X ↠ X/trace, with no membership checks.
pub fn canonical_seq<B: Backend>(b: &B, x: &B::Obj, t: &ClassSpec) -> CanonicalSeq<B> {
    let (t_part, mono) = trace(b, x, t);
    let (f_part, epi) = b.cokernel(&mono);
    CanonicalSeq { t_part, mono, f_part, epi }
}

/// Canonical sequence validated against a torsion pair: exactness plus
/// membership of both ends, and agreement of the quotient with reject(X,F).
pub fn canonical_ses<B: Backend>(
    b: &B,
    x: &B::Obj,
    pair: &TorsionPair,
) -> Result<CanonicalSeq<B>> {
    let seq = canonical_seq(b, x, &pair.t);
    let sub_expr = b.decompose(&seq.t_part);
    let quot_expr = b.decompose(&seq.f_part);
    if !pair.t.contains(&sub_expr) {
        return Err(Error::Precondition(format!("trace {:?} not in T", sub_expr)));
    }
    if !pair.f.contains(&quot_expr) {
        return Err(Error::Precondition(format!("quotient {:?} not in F", quot_expr)));
    }
    validate_ses(b, &seq.mono, &seq.epi)?;
    let (rej, _) = reject(b, x, &pair.f);
    if b.decompose(&rej) != quot_expr {
        return Err(Error::TheoremViolation(
            "canonical quotient disagrees with reject".into(),
        ));
    }
    Ok(seq)
}

pub fn is_torsion_pair<B: Backend>(
    b: &B,
    t: &ClassSpec,
    f: &ClassSpec,
    universe: &[ObjectExpr],
) -> TorsionPairReport {
    let mut hom_failures = Vec::new();
    for &ti in t.members() {
        for &fi in f.members() {
            if !b.hom_basis(&b.realize(&ObjectExpr::single(ti)), &b.realize(&ObjectExpr::single(fi))).is_empty()
            {
                hom_failures.push((b.label(ti), b.label(fi)));
            }
        }
    }
    let pair = TorsionPair { t: t.clone(), f: f.clone() };
    let seq_failures: Vec<String> = universe
        .par_iter()
        .filter_map(|x| {
            let obj = b.realize(x);
            canonical_ses(b, &obj, &pair).err().map(|_| expr_label(b, x))
        })
        .collect();
    TorsionPairReport { ok: hom_failures.is_empty() && seq_failures.is_empty(), hom_failures, seq_failures }
}

/// All torsion pairs, by the double-orthogonality filter over member subsets
/// followed by full verification of every survivor.
pub fn enumerate_torsion_pairs<B: Backend>(b: &B) -> Result<Vec<TorsionPair>> {
    let inds = b.indecomposables();
    assert!(inds.len() <= 32, "subset enumeration bound");
    // hom_to[i] = mask of j with Hom(i, j) ≠ 0
    let hom_to: Vec<u64> = inds
        .iter()
        .map(|&i| {
            let ri = b.realize(&ObjectExpr::single(i));
            inds.iter()
                .filter(|&&j| !b.hom_basis(&ri, &b.realize(&ObjectExpr::single(j))).is_empty())
                .fold(0u64, |m, &j| m | 1 << j.0)
        })
        .collect();
    let universe = b.universe();
    let full: u64 = inds.iter().fold(0, |m, &i| m | 1 << i.0);
    let mut out = Vec::new();
    for tmask in 0u64..(1 << inds.len()) {
        // F = right orthogonal of T
        let fmask = inds
            .iter()
            .filter(|&&j| inds.iter().all(|&i| tmask >> i.0 & 1 == 0 || hom_to[i.0 as usize] >> j.0 & 1 == 0))
            .fold(0u64, |m, &j| m | 1 << j.0);
        // T must be the left orthogonal of F
        let tback = inds
            .iter()
            .filter(|&&i| hom_to[i.0 as usize] & fmask == 0)
            .fold(0u64, |m, &i| m | 1 << i.0);
        if tback != tmask {
            continue;
        }
        let t = ClassSpec::from_mask(tmask & full);
        let f = ClassSpec::from_mask(fmask & full);
        let report = is_torsion_pair(b, &t, &f, &universe);
        if !report.ok {
            return Err(Error::TheoremViolation(format!(
                "double-orthogonal pair failed verification: {:?} / {:?}: {:?}",
                t.labels(b),
                f.labels(b),
                report
            )));
        }
        out.push(TorsionPair { t, f });
    }
    Ok(out)
}

/// X ∈ A∗B: some subobject lies in add(A) with quotient in add(B).
pub fn ext_product_contains<B: Backend>(
    b: &B,
    profiles: &Profiles,
    a: &ClassSpec,
    bb: &ClassSpec,
    x: &ObjectExpr,
) -> Result<bool> {
    Ok(profiles
        .get(b, x)?
        .iter()
        .any(|(sub, quot)| a.contains(sub) && bb.contains(quot)))
}

/// Indecomposable members of A∗B.
pub fn ext_product_members<B: Backend>(
    b: &B,
    profiles: &Profiles,
    a: &ClassSpec,
    bb: &ClassSpec,
) -> Result<ClassSpec> {
    let mut members = Vec::new();
    for id in b.indecomposables() {
        if ext_product_contains(b, profiles, a, bb, &ObjectExpr::single(id))? {
            members.push(id);
        }
    }
    Ok(ClassSpec::new(members))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClosureReport {
    pub under_subobjects: bool,
    pub under_quotients: bool,
    pub under_extensions: bool,
}

pub fn closure_checks<B: Backend>(
    b: &B,
    class: &ClassSpec,
    profiles: &Profiles,
    universe: &[ObjectExpr],
) -> Result<ClosureReport> {
    let mut under_subobjects = true;
    let mut under_quotients = true;
    for &m in class.members() {
        for (sub, quot) in profiles.get(b, &ObjectExpr::single(m))?.iter() {
            under_subobjects &= class.contains(sub);
            under_quotients &= class.contains(quot);
        }
    }
    let mut under_extensions = true;
    for x in universe {
        if class.contains(x) {
            continue;
        }
        if profiles.get(b, x)?.iter().any(|(s, q)| class.contains(s) && class.contains(q)) {
            under_extensions = false;
        }
    }
    Ok(ClosureReport { under_subobjects, under_quotients, under_extensions })
}

pub fn is_serre<B: Backend>(
    b: &B,
    class: &ClassSpec,
    profiles: &Profiles,
    universe: &[ObjectExpr],
) -> Result<bool> {
    let r = closure_checks(b, class, profiles, universe)?;
    Ok(r.under_subobjects && r.under_quotients && r.under_extensions)
}

/// trace(X, S), verified as the S-kernel of the identity: every morphism
/// from a member of S into X factors through it.
pub fn s_coreflection<B: Backend>(
    b: &B,
    x: &B::Obj,
    s: &ClassSpec,
) -> Result<(B::Obj, B::Mor)> {
    let (sub, mono) = trace(b, x, s);
    for &m in s.members() {
        let w = b.realize(&ObjectExpr::single(m));
        for f in b.hom_basis(&w, x) {
            if b.lift_through_mono(&mono, &f).is_none() {
                return Err(Error::TheoremViolation(
                    "coreflection misses a morphism from the subcategory".into(),
                ));
            }
        }
    }
    Ok((sub, mono))
}

/// reject(X, S), verified as the S-cokernel of the identity: every morphism
/// from X into a member of S factors through it.
pub fn s_reflection<B: Backend>(
    b: &B,
    x: &B::Obj,
    s: &ClassSpec,
) -> Result<(B::Obj, B::Mor)> {
    let (quot, epi) = reject(b, x, s);
    for &m in s.members() {
        let w = b.realize(&ObjectExpr::single(m));
        for f in b.hom_basis(x, &w) {
            if b.descend_through_epi(&epi, &f).is_none() {
                return Err(Error::TheoremViolation(
                    "reflection misses a morphism into the subcategory".into(),
                ));
            }
        }
    }
    Ok((quot, epi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typea::{Interval, TypeABackend};

    fn cls(bk: &TypeABackend, names: &[&str]) -> ClassSpec {
        ClassSpec::new(names.iter().map(|s| bk.parse_ind(s).unwrap()).collect())
    }

    #[test]
    fn remark_torsion_pair_and_counterexample() {
        let bk = TypeABackend::new(2, 2).unwrap();
        let universe = bk.universe();
        let r = is_torsion_pair(&bk, &cls(&bk, &["1", "12"]), &cls(&bk, &["2"]), &universe);
        assert!(r.ok, "{:?}", r);
        let r = is_torsion_pair(&bk, &cls(&bk, &["1"]), &cls(&bk, &["12"]), &universe);
        assert!(!r.ok);
        assert!(r.seq_failures.iter().any(|s| s == "2"));
        // the two degenerate pairs
        let all = ClassSpec::everything(&bk);
        assert!(is_torsion_pair(&bk, &ClassSpec::zero(), &all, &universe).ok);
        assert!(is_torsion_pair(&bk, &all, &ClassSpec::zero(), &universe).ok);
    }

    #[test]
    fn catalan_counts_small() {
        for (n, want) in [(1usize, 2usize), (2, 5), (3, 14)] {
            let bk = TypeABackend::new(n, 2).unwrap();
            assert_eq!(enumerate_torsion_pairs(&bk).unwrap().len(), want, "n={}", n);
        }
    }

    #[test]
    fn trace_examples() {
        let bk = TypeABackend::new(2, 2).unwrap();
        let x = bk.realize_interval(Interval { a: 1, b: 2 });
        // Hom(1, 12) = 0 so the trace along add{1} vanishes
        let (tr, _) = trace(&bk, &x, &cls(&bk, &["1"]));
        assert!(bk.obj_is_zero(&tr));
        // trace along everything is all of x
        let (tr, _) = trace(&bk, &x, &ClassSpec::everything(&bk));
        assert_eq!(bk.decompose(&tr), bk.decompose(&x));
        // trace is idempotent
        let (tr2, _) = trace(&bk, &tr, &ClassSpec::everything(&bk));
        assert_eq!(bk.decompose(&tr2), bk.decompose(&tr));
    }

    #[test]
    fn closure_and_ext_product() {
        let bk = TypeABackend::new(2, 2).unwrap();
        let profiles = Profiles::new();
        let universe = bk.universe();
        let r = closure_checks(&bk, &cls(&bk, &["12", "2"]), &profiles, &universe).unwrap();
        assert!(!r.under_quotients);
        let r = closure_checks(&bk, &cls(&bk, &["2", "1"]), &profiles, &universe).unwrap();
        assert!(!r.under_extensions);
        let r = closure_checks(&bk, &ClassSpec::everything(&bk), &profiles, &universe).unwrap();
        assert!(r.under_subobjects && r.under_quotients && r.under_extensions);
        // 12 is an extension of 1 by 2
        let prod =
            ext_product_members(&bk, &profiles, &cls(&bk, &["2"]), &cls(&bk, &["1"])).unwrap();
        assert!(prod.contains_ind(bk.parse_ind("12").unwrap()));
        // A∗0 = add(A)
        let a = cls(&bk, &["2"]);
        assert_eq!(ext_product_members(&bk, &profiles, &a, &ClassSpec::zero()).unwrap(), a);
    }

    #[test]
    fn serre_reflections() {
        let bk = TypeABackend::new(2, 2).unwrap();
        let s = cls(&bk, &["1"]);
        let x = bk.realize_interval(Interval { a: 1, b: 2 });
        let (sub, _) = s_coreflection(&bk, &x, &s).unwrap();
        assert!(bk.obj_is_zero(&sub));
        let (quot, epi) = s_reflection(&bk, &x, &s).unwrap();
        assert_eq!(bk.decompose(&quot), ObjectExpr::single(bk.parse_ind("1").unwrap()));
        assert!(bk.is_epi(&epi));
        // S = 0 gives zero coreflection and reflection
        let (c0, _) = s_coreflection(&bk, &x, &ClassSpec::zero()).unwrap();
        let (r0, _) = s_reflection(&bk, &x, &ClassSpec::zero()).unwrap();
        assert!(bk.obj_is_zero(&c0) && bk.obj_is_zero(&r0));
    }
}
