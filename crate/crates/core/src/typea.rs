//! Modules over the path algebra of the linear quiver 1 → 2 → ⋯ → n.
//!
//! Indecomposables are the interval modules [a,b] (top a, socle b). The
//! combinatorial calculus (hom and ext dimensions, subobject and quotient
//! lists) is cross-checked at construction against the matrix oracle that
//! solves the intertwiner equations from scratch; a backend refuses to exist
//! if the two disagree.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::abcat::{joint_map_from, joint_map_into, validate_ses, Backend, IndId, ObjectExpr};
use crate::error::{Error, Result};
use crate::linrep::{Engine, GradedRep, RepMor};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Interval {
    /// top vertex, 1-based
    pub a: usize,
    /// socle vertex
    pub b: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArrowKind {
    /// [a,b] → [a−1,b]
    AscendingMono,
    /// [a,b] → [a,b−1]
    DescendingEpi,
}

pub struct ArQuiver {
    pub vertices: Vec<Interval>,
    /// (source index, target index, kind)
    pub arrows: Vec<(usize, usize, ArrowKind)>,
}

type HomCache = RwLock<HashMap<(GradedRep, GradedRep), Arc<Vec<RepMor>>>>;

pub struct TypeABackend {
    pub n: usize,
    pub p: u32,
    pub engine: Engine,
    intervals: Vec<Interval>,
    id_by_ab: HashMap<(usize, usize), IndId>,
    hom_cache: HomCache,
}

impl TypeABackend {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        assert!(n >= 1 && n <= 6, "combinatorial calculus is validated for n ≤ 6");
        let mut intervals = Vec::new();
        let mut id_by_ab = HashMap::new();
        for a in 1..=n {
            for b in a..=n {
                id_by_ab.insert((a, b), IndId(intervals.len() as u16));
                intervals.push(Interval { a, b });
            }
        }
        let backend = TypeABackend {
            n,
            p,
            engine: Engine::new(n, p),
            intervals,
            id_by_ab,
            hom_cache: RwLock::new(HashMap::new()),
        };
        backend.self_test()?;
        Ok(backend)
    }

    /// Cross-check of the interval calculus against the matrix oracle, run
    /// once per construction.
    fn self_test(&self) -> Result<()> {
        for &i1 in &self.intervals {
            for &i2 in &self.intervals {
                let want_hom = self.interval_hom_dim(i1, i2);
                let r1 = self.realize_interval(i1);
                let r2 = self.realize_interval(i2);
                let got_hom = self.engine.hom_basis(&r1, &r2).len();
                if want_hom != got_hom {
                    return Err(Error::TheoremViolation(format!(
                        "hom self-test: {:?} -> {:?}: rule {} vs oracle {}",
                        i1, i2, want_hom, got_hom
                    )));
                }
                let want_ext = self.interval_ext_dim(i1, i2);
                let got_ext = self.ext_oracle_dim(i1, i2);
                if want_ext != got_ext {
                    return Err(Error::TheoremViolation(format!(
                        "ext self-test: Ext({:?},{:?}): rule {} vs resolution {}",
                        i1, i2, want_ext, got_ext
                    )));
                }
                if want_ext == 1 {
                    // the nonsplit middle must yield a genuine SES
                    // 0 → I2 → mid → I1 → 0
                    let mid = self.ext_middle(i1, i2)?;
                    let ins: Vec<RepMor> = mid
                        .iter()
                        .map(|&m| self.only_hom(&r2, &self.realize_interval(m)))
                        .collect::<Result<_>>()?;
                    let mut outs: Vec<RepMor> = mid
                        .iter()
                        .map(|&m| self.only_hom(&self.realize_interval(m), &r1))
                        .collect::<Result<_>>()?;
                    if outs.len() == 2 {
                        outs[1] = self.engine.negate(&outs[1]);
                    }
                    let incl = joint_map_into(self, &r2, &ins);
                    let surj = joint_map_from(self, &r1, &outs);
                    validate_ses(self, &incl, &surj).map_err(|e| {
                        Error::TheoremViolation(format!(
                            "ext self-test SES for Ext({:?},{:?}): {}",
                            i1, i2, e
                        ))
                    })?;
                }
            }
        }
        Ok(())
    }

    fn only_hom(&self, a: &GradedRep, b: &GradedRep) -> Result<RepMor> {
        let basis = self.engine.hom_basis(a, b);
        if basis.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "expected 1-dimensional hom, got {}",
                basis.len()
            )));
        }
        Ok(basis.into_iter().next().unwrap())
    }

    pub fn interval(&self, id: IndId) -> Interval {
        self.intervals[id.0 as usize]
    }

    pub fn id_of(&self, iv: Interval) -> IndId {
        self.id_by_ab[&(iv.a, iv.b)]
    }

    /// 1 iff Hom([a,b],[c,d]) ≠ 0, i.e. c ≤ a ≤ d ≤ b.
    pub fn interval_hom_dim(&self, i1: Interval, i2: Interval) -> usize {
        usize::from(i2.a <= i1.a && i1.a <= i2.b && i2.b <= i1.b)
    }

    /// dim Ext¹(I1, I2) for I1 = [a,b], I2 = [c,d]: 1 iff a < c ≤ b+1 ≤ d.
    /// The unique nonsplit middle is [a,d] ⊕ [c,b], where the second bar is
    /// empty exactly when c = b+1.
    pub fn interval_ext_dim(&self, i1: Interval, i2: Interval) -> usize {
        usize::from(i1.a < i2.a && i2.a <= i1.b + 1 && i1.b + 1 <= i2.b)
    }

    /// Summands of the nonsplit middle when interval_ext_dim(i1, i2) = 1.
    pub fn ext_middle(&self, i1: Interval, i2: Interval) -> Result<Vec<Interval>> {
        if self.interval_ext_dim(i1, i2) != 1 {
            return Err(Error::Precondition(format!("Ext({:?},{:?}) = 0", i1, i2)));
        }
        let mut mid = vec![Interval { a: i1.a, b: i2.b }];
        if i2.a <= i1.b {
            mid.push(Interval { a: i2.a, b: i1.b });
        }
        Ok(mid)
    }

    /// dim Ext¹(I1, I2) from the projective resolution
    /// 0 → [b+1,n] → [a,n] → [a,b] → 0 of I1 = [a,b], using only oracle hom
    /// dimensions.
    fn ext_oracle_dim(&self, i1: Interval, i2: Interval) -> usize {
        let r2 = self.realize_interval(i2);
        let hom = |iv: Interval| self.engine.hom_basis(&self.realize_interval(iv), &r2).len() as i64;
        let p0 = hom(Interval { a: i1.a, b: self.n });
        let p1 = if i1.b < self.n { hom(Interval { a: i1.b + 1, b: self.n }) } else { 0 };
        let h = hom(i1);
        let e = p1 - p0 + h;
        assert!(e >= 0);
        e as usize
    }

    /// Subobjects of [a,b]: the intervals [c,b], a ≤ c ≤ b (zero excluded).
    pub fn interval_subs(&self, iv: Interval) -> Vec<Interval> {
        (iv.a..=iv.b).map(|c| Interval { a: c, b: iv.b }).collect()
    }

    /// Quotients of [a,b]: the intervals [a,d], a ≤ d ≤ b (zero excluded).
    pub fn interval_quots(&self, iv: Interval) -> Vec<Interval> {
        (iv.a..=iv.b).map(|d| Interval { a: iv.a, b: d }).collect()
    }

    pub fn ar_quiver(&self) -> ArQuiver {
        let vertices = self.intervals.clone();
        let idx = |iv: Interval| self.id_of(iv).0 as usize;
        let mut arrows = Vec::new();
        for &iv in &vertices {
            if iv.a > 1 {
                arrows.push((idx(iv), idx(Interval { a: iv.a - 1, b: iv.b }), ArrowKind::AscendingMono));
            }
            if iv.b > iv.a {
                arrows.push((idx(iv), idx(Interval { a: iv.a, b: iv.b - 1 }), ArrowKind::DescendingEpi));
            }
        }
        ArQuiver { vertices, arrows }
    }

    pub fn realize_interval(&self, iv: Interval) -> GradedRep {
        self.engine.canonical_rep(&[(iv.a - 1, iv.b - 1)])
    }

    /// The canonical nonzero morphism between intervals with Hom ≠ 0,
    /// factoring epi [a,b] ↠ [a,d] then mono [a,d] ↪ [c,d].
    pub fn nonzero_hom(&self, i1: Interval, i2: Interval) -> Result<RepMor> {
        if self.interval_hom_dim(i1, i2) == 0 {
            return Err(Error::Precondition(format!("Hom({:?},{:?}) = 0", i1, i2)));
        }
        self.only_hom(&self.realize_interval(i1), &self.realize_interval(i2))
    }

    fn bars_of(&self, x: &ObjectExpr) -> Vec<(usize, usize)> {
        x.summands()
            .iter()
            .map(|&id| {
                let iv = self.interval(id);
                (iv.a - 1, iv.b - 1)
            })
            .collect()
    }
}

impl Backend for TypeABackend {
    type Obj = GradedRep;
    type Mor = RepMor;

    fn name(&self) -> String {
        format!("mod(kA_{}) over GF({})", self.n, self.p)
    }

    fn indecomposables(&self) -> Vec<IndId> {
        (0..self.intervals.len() as u16).map(IndId).collect()
    }

    fn label(&self, id: IndId) -> String {
        let iv = self.interval(id);
        if self.n <= 9 {
            (iv.a..=iv.b).map(|v| v.to_string()).collect()
        } else {
            format!("[{},{}]", iv.a, iv.b)
        }
    }

    fn parse_ind(&self, s: &str) -> Result<IndId> {
        let s = s.trim();
        let parse_pair = |a: &str, b: &str| -> Result<(usize, usize)> {
            let a = a.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad interval: {}", s)))?;
            let b = b.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad interval: {}", s)))?;
            Ok((a, b))
        };
        let (a, b) = if let Some(body) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let (x, y) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad interval: {}", s)))?;
            parse_pair(x, y)?
        } else if let Some((x, y)) = s.split_once("..") {
            parse_pair(x, y)?
        } else if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) && self.n <= 9 {
            // stack notation: consecutive vertices top to socle, e.g. "12"
            let digits: Vec<usize> = s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            for w in digits.windows(2) {
                if w[1] != w[0] + 1 {
                    return Err(Error::Parse(format!("non-contiguous stack: {}", s)));
                }
            }
            (digits[0], *digits.last().unwrap())
        } else {
            return Err(Error::Parse(format!("bad interval: {}", s)));
        };
        if !(1 <= a && a <= b && b <= self.n) {
            return Err(Error::Parse(format!("interval out of range for n={}: {}", self.n, s)));
        }
        Ok(self.id_of(Interval { a, b }))
    }

    fn realize(&self, x: &ObjectExpr) -> GradedRep {
        self.engine.canonical_rep(&self.bars_of(x))
    }

    fn decompose(&self, o: &GradedRep) -> ObjectExpr {
        let ids = self
            .engine
            .decompose_bars(o)
            .into_iter()
            .map(|(a, b)| self.id_of(Interval { a: a + 1, b: b + 1 }))
            .collect();
        ObjectExpr::new(ids)
    }

    fn length(&self, x: &ObjectExpr) -> usize {
        x.summands().iter().map(|&id| self.interval(id).len()).sum()
    }

    fn obj_is_zero(&self, o: &GradedRep) -> bool {
        o.is_zero()
    }

    fn source(&self, f: &RepMor) -> GradedRep {
        f.src.clone()
    }

    fn target(&self, f: &RepMor) -> GradedRep {
        f.dst.clone()
    }

    fn zero_mor(&self, a: &GradedRep, b: &GradedRep) -> RepMor {
        self.engine.zero_mor(a, b)
    }

    fn identity(&self, a: &GradedRep) -> RepMor {
        self.engine.identity(a)
    }

    fn add(&self, f: &RepMor, g: &RepMor) -> RepMor {
        self.engine.add(f, g)
    }

    fn negate(&self, f: &RepMor) -> RepMor {
        self.engine.negate(f)
    }

    fn compose(&self, g: &RepMor, f: &RepMor) -> RepMor {
        self.engine.compose(g, f)
    }

    fn is_zero_mor(&self, f: &RepMor) -> bool {
        f.is_zero()
    }

    fn hom_basis(&self, a: &GradedRep, b: &GradedRep) -> Vec<RepMor> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.hom_cache.read().unwrap().get(&key) {
            return hit.as_ref().clone();
        }
        let basis = Arc::new(self.engine.hom_basis(a, b));
        self.hom_cache.write().unwrap().insert(key, basis.clone());
        basis.as_ref().clone()
    }

    fn hom_measure(&self, a: &GradedRep, b: &GradedRep) -> u128 {
        (self.p as u128)
            .checked_pow(self.hom_basis(a, b).len() as u32)
            .expect("hom measure overflow")
    }

    fn span_coords(&self, gens: &[RepMor], f: &RepMor) -> Option<Vec<u64>> {
        self.engine.span_coords(gens, f)
    }

    fn span_is_full(&self, a: &GradedRep, b: &GradedRep, gens: &[RepMor]) -> bool {
        self.engine.span_rank(gens) == self.hom_basis(a, b).len()
    }

    fn kernel(&self, f: &RepMor) -> (GradedRep, RepMor) {
        self.engine.kernel(f)
    }

    fn cokernel(&self, f: &RepMor) -> (GradedRep, RepMor) {
        self.engine.cokernel(f)
    }

    fn image(&self, f: &RepMor) -> (GradedRep, RepMor, RepMor) {
        self.engine.image(f)
    }

    fn lift_through_mono(&self, mono: &RepMor, f: &RepMor) -> Option<RepMor> {
        self.engine.lift_through_mono(mono, f)
    }

    fn descend_through_epi(&self, epi: &RepMor, f: &RepMor) -> Option<RepMor> {
        self.engine.descend_through_epi(epi, f)
    }

    fn left_preimage_gens(&self, f: &RepMor, w: &GradedRep, triv: &[RepMor]) -> Vec<RepMor> {
        self.engine.left_preimage_gens(f, w, triv)
    }

    fn right_preimage_gens(&self, f: &RepMor, w: &GradedRep, triv: &[RepMor]) -> Vec<RepMor> {
        self.engine.right_preimage_gens(f, w, triv)
    }

    fn direct_sum(&self, parts: &[GradedRep]) -> (GradedRep, Vec<RepMor>, Vec<RepMor>) {
        self.engine.direct_sum(parts)
    }

    fn subobjects(&self, o: &GradedRep) -> Result<Vec<(GradedRep, RepMor)>> {
        self.engine.subobjects(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indecomposable_counts() {
        assert_eq!(TypeABackend::new(1, 2).unwrap().intervals.len(), 1);
        assert_eq!(TypeABackend::new(2, 2).unwrap().intervals.len(), 3);
        assert_eq!(TypeABackend::new(3, 2).unwrap().intervals.len(), 6);
    }

    #[test]
    fn self_test_passes_for_small_n_both_primes() {
        for n in 1..=4 {
            for p in [2, 3] {
                TypeABackend::new(n, p).unwrap();
            }
        }
    }

    #[test]
    fn irreducible_quiver_morphisms() {
        let bk = TypeABackend::new(2, 2).unwrap();
        let s2 = Interval { a: 2, b: 2 };
        let m12 = Interval { a: 1, b: 2 };
        let s1 = Interval { a: 1, b: 1 };
        // alpha: 2 -> 12 is mono, beta: 12 -> 1 is epi
        let alpha = bk.nonzero_hom(s2, m12).unwrap();
        let beta = bk.nonzero_hom(m12, s1).unwrap();
        assert!(bk.is_mono(&alpha));
        assert!(bk.is_epi(&beta));
        // 0 -> 2 -> 12 -> 1 -> 0
        validate_ses(&bk, &alpha, &beta).unwrap();
        let (k, _) = bk.kernel(&beta);
        assert_eq!(bk.decompose(&k), ObjectExpr::single(bk.id_of(s2)));
        assert_eq!(bk.interval_hom_dim(s1, m12), 0);
        assert_eq!(bk.interval_hom_dim(s1, s2), 0);
    }

    #[test]
    fn sub_and_quot_lists() {
        let bk = TypeABackend::new(3, 2).unwrap();
        let iv = Interval { a: 1, b: 2 };
        assert_eq!(bk.interval_subs(iv), vec![Interval { a: 1, b: 2 }, Interval { a: 2, b: 2 }]);
        assert_eq!(bk.interval_quots(iv), vec![Interval { a: 1, b: 1 }, Interval { a: 1, b: 2 }]);
        // oracle agreement: 3 subobjects of [1,2] including zero
        let subs = bk.subobjects(&bk.realize_interval(iv)).unwrap();
        assert_eq!(subs.len(), 3);
        // 5 subobjects of simple ⊕ simple over GF(2)
        let x = ObjectExpr::new(vec![bk.id_of(Interval { a: 1, b: 1 }); 2]);
        assert_eq!(bk.subobjects(&bk.realize(&x)).unwrap().len(), 5);
    }

    #[test]
    fn ar_quiver_counts_and_classes() {
        let bk = TypeABackend::new(3, 2).unwrap();
        let q = bk.ar_quiver();
        assert_eq!(q.vertices.len(), 6);
        assert_eq!(q.arrows.len(), 6);
        let bk2 = TypeABackend::new(1, 2).unwrap();
        let q1 = bk2.ar_quiver();
        assert_eq!((q1.vertices.len(), q1.arrows.len()), (1, 0));
    }

    #[test]
    fn labels_and_parsing() {
        let bk = TypeABackend::new(3, 2).unwrap();
        let id = bk.id_of(Interval { a: 1, b: 2 });
        assert_eq!(bk.label(id), "12");
        assert_eq!(bk.parse_ind("12").unwrap(), id);
        assert_eq!(bk.parse_ind("[1,2]").unwrap(), id);
        assert_eq!(bk.parse_ind("1..2").unwrap(), id);
        assert!(bk.parse_ind("13").is_err());
        assert!(bk.parse_ind("[0,2]").is_err());
    }

    #[test]
    fn pullback_of_epi_along_identity() {
        use crate::abcat::pullback;
        let bk = TypeABackend::new(2, 2).unwrap();
        let beta = bk.nonzero_hom(Interval { a: 1, b: 2 }, Interval { a: 1, b: 1 }).unwrap();
        let idm = bk.identity(&bk.realize_interval(Interval { a: 1, b: 1 }));
        let sq = pullback(&bk, &beta, &idm);
        assert_eq!(bk.decompose(&sq.corner), ObjectExpr::single(bk.id_of(Interval { a: 1, b: 2 })));
    }
}
