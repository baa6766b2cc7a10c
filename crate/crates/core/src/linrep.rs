//! Concrete representations of the linearly ordered quiver 0 → 1 → … → s−1
//! over GF(p), with exact slotwise linear algebra.
//!
//! Both the type-A module backend and the chain-complex backend sit on this
//! engine: objects are graded vector spaces with one structure map between
//! consecutive slots, morphisms are slotwise matrices commuting with the
//! structure maps. Indecomposables are the interval ("bar") modules, and
//! decomposition multiplicities come from the composite-rank formula, so no
//! basis adaptation is ever needed.

use crate::error::{Error, Result};
use crate::exactla::{all_subspaces, subspaces_containing, Mat, Subspace};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedRep {
    pub p: u32,
    pub dims: Vec<usize>,
    /// maps[s]: slot s → slot s+1, as a dims[s+1] × dims[s] matrix
    pub maps: Vec<Mat>,
}

impl GradedRep {
    pub fn zero(slots: usize, p: u32) -> Self {
        GradedRep {
            p,
            dims: vec![0; slots],
            maps: (0..slots.saturating_sub(1)).map(|_| Mat::zero(0, 0, p)).collect(),
        }
    }

    pub fn slots(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Composite map slot a → slot b (identity when a = b).
    pub fn composite(&self, a: usize, b: usize) -> Mat {
        assert!(a <= b && b < self.slots());
        let mut m = Mat::identity(self.dims[a], self.p);
        for s in a..b {
            m = self.maps[s].mul(&m);
        }
        m
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RepMor {
    pub src: GradedRep,
    pub dst: GradedRep,
    /// comps[s]: dst.dims[s] × src.dims[s]
    pub comps: Vec<Mat>,
}

impl RepMor {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    fn flatten(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for m in &self.comps {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    v.push(m.get(i, j));
                }
            }
        }
        v
    }
}

/// Engine over a fixed number of slots and a fixed prime.
#[derive(Clone, Debug)]
pub struct Engine {
    pub slots: usize,
    pub p: u32,
    /// per-slot dimension bound for subobject enumeration
    pub sub_dim_cap: usize,
}

impl Engine {
    pub fn new(slots: usize, p: u32) -> Self {
        Engine { slots, p, sub_dim_cap: 6 }
    }

    /// Canonical model of a sorted multiset of bars (a, b), 0-based slots,
    /// a ≤ b < slots.
    pub fn canonical_rep(&self, bars: &[(usize, usize)]) -> GradedRep {
        let p = self.p;
        let dims: Vec<usize> =
            (0..self.slots).map(|s| bars.iter().filter(|&&(a, b)| a <= s && s <= b).count()).collect();
        let mut maps = Vec::new();
        for s in 0..self.slots.saturating_sub(1) {
            let mut m = Mat::zero(dims[s + 1], dims[s], p);
            let mut col = 0usize;
            let mut row_of = vec![usize::MAX; bars.len()];
            let mut row = 0usize;
            for (k, &(a, b)) in bars.iter().enumerate() {
                if a <= s + 1 && s + 1 <= b {
                    row_of[k] = row;
                    row += 1;
                }
            }
            for (k, &(a, b)) in bars.iter().enumerate() {
                if a <= s && s <= b {
                    if row_of[k] != usize::MAX {
                        m.set(row_of[k], col, 1);
                    }
                    col += 1;
                }
            }
            maps.push(m);
        }
        GradedRep { p, dims, maps }
    }

    /// Bar multiset of an arbitrary representation, by the composite-rank
    /// inclusion–exclusion formula.
    pub fn decompose_bars(&self, rep: &GradedRep) -> Vec<(usize, usize)> {
        let s = self.slots;
        let rank = |a: i64, b: i64| -> i64 {
            if a < 0 || b >= s as i64 || a > b {
                return 0;
            }
            rep.composite(a as usize, b as usize).rank() as i64
        };
        let mut bars = Vec::new();
        for a in 0..s as i64 {
            for b in a..s as i64 {
                let m = rank(a, b) - rank(a - 1, b) - rank(a, b + 1) + rank(a - 1, b + 1);
                debug_assert!(m >= 0, "negative bar multiplicity");
                for _ in 0..m {
                    bars.push((a as usize, b as usize));
                }
            }
        }
        bars
    }

    pub fn zero_mor(&self, a: &GradedRep, b: &GradedRep) -> RepMor {
        let comps =
            (0..self.slots).map(|s| Mat::zero(b.dims[s], a.dims[s], self.p)).collect();
        RepMor { src: a.clone(), dst: b.clone(), comps }
    }

    pub fn identity(&self, a: &GradedRep) -> RepMor {
        let comps = (0..self.slots).map(|s| Mat::identity(a.dims[s], self.p)).collect();
        RepMor { src: a.clone(), dst: a.clone(), comps }
    }

    pub fn add(&self, f: &RepMor, g: &RepMor) -> RepMor {
        assert_eq!(f.src, g.src);
        assert_eq!(f.dst, g.dst);
        let comps = f.comps.iter().zip(&g.comps).map(|(a, b)| a.add(b)).collect();
        RepMor { src: f.src.clone(), dst: f.dst.clone(), comps }
    }

    pub fn negate(&self, f: &RepMor) -> RepMor {
        RepMor {
            src: f.src.clone(),
            dst: f.dst.clone(),
            comps: f.comps.iter().map(|m| m.neg()).collect(),
        }
    }

    /// g after f.
    pub fn compose(&self, g: &RepMor, f: &RepMor) -> RepMor {
        assert_eq!(f.dst, g.src, "composition mismatch");
        let comps = g.comps.iter().zip(&f.comps).map(|(b, a)| b.mul(a)).collect();
        RepMor { src: f.src.clone(), dst: g.dst.clone(), comps }
    }

    /// Basis of the space of intertwiners a → b.
    pub fn hom_basis(&self, a: &GradedRep, b: &GradedRep) -> Vec<RepMor> {
        let p = self.p;
        let slot_sizes: Vec<usize> = (0..self.slots).map(|s| b.dims[s] * a.dims[s]).collect();
        let offsets: Vec<usize> = slot_sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let unknowns: usize = slot_sizes.iter().sum();
        if unknowns == 0 {
            return Vec::new();
        }
        // constraints: F_{s+1}·Ma_s = Mb_s·F_s for every consecutive pair
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for s in 0..self.slots - 1 {
            let ma = &a.maps[s];
            let mb = &b.maps[s];
            for i in 0..b.dims[s + 1] {
                for j in 0..a.dims[s] {
                    let mut row = vec![0u32; unknowns];
                    // Σ_k F_{s+1}[i,k]·Ma[k,j]
                    for k in 0..a.dims[s + 1] {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let idx = offsets[s + 1] + i * a.dims[s + 1] + k;
                            row[idx] = (row[idx] + c) % p;
                        }
                    }
                    // − Σ_k Mb[i,k]·F_s[k,j]
                    for k in 0..b.dims[s] {
                        let c = mb.get(i, k);
                        if c != 0 {
                            let idx = offsets[s] + k * a.dims[s] + j;
                            row[idx] = (row[idx] + p - c) % p;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let constraint = Mat::from_rows(rows, unknowns, p);
        let ns = constraint.nullspace();
        (0..ns.cols)
            .map(|col| {
                let v = ns.col(col);
                let comps = (0..self.slots)
                    .map(|s| {
                        let mut m = Mat::zero(b.dims[s], a.dims[s], p);
                        for i in 0..b.dims[s] {
                            for j in 0..a.dims[s] {
                                m.set(i, j, v[offsets[s] + i * a.dims[s] + j]);
                            }
                        }
                        m
                    })
                    .collect();
                RepMor { src: a.clone(), dst: b.clone(), comps }
            })
            .collect()
    }

    pub fn kernel(&self, f: &RepMor) -> (GradedRep, RepMor) {
        let p = self.p;
        let bases: Vec<Mat> = f.comps.iter().map(|m| m.nullspace()).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let mut maps = Vec::new();
        for s in 0..self.slots - 1 {
            let img = f.src.maps[s].mul(&bases[s]);
            let x = bases[s + 1].solve(&img).expect("kernel not preserved by structure map");
            maps.push(x);
        }
        let krep = GradedRep { p, dims, maps };
        let mono = RepMor { src: krep.clone(), dst: f.src.clone(), comps: bases };
        (krep, mono)
    }

    pub fn image(&self, f: &RepMor) -> (GradedRep, RepMor, RepMor) {
        let p = self.p;
        // column-space bases of each component
        let bases: Vec<Mat> = f
            .comps
            .iter()
            .map(|m| {
                let sp = Subspace::from_columns(m);
                sp.basis.transpose()
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let mut maps = Vec::new();
        for s in 0..self.slots - 1 {
            let pushed = f.dst.maps[s].mul(&bases[s]);
            let x = bases[s + 1].solve(&pushed).expect("image not preserved by structure map");
            maps.push(x);
        }
        let irep = GradedRep { p, dims, maps };
        let epi_comps: Vec<Mat> = bases
            .iter()
            .zip(&f.comps)
            .map(|(b, m)| b.solve(m).expect("image basis must span component image"))
            .collect();
        let epi = RepMor { src: f.src.clone(), dst: irep.clone(), comps: epi_comps };
        let mono = RepMor { src: irep.clone(), dst: f.dst.clone(), comps: bases };
        (irep, epi, mono)
    }

    pub fn cokernel(&self, f: &RepMor) -> (GradedRep, RepMor) {
        let p = self.p;
        let mut projs = Vec::new();
        let mut lifts = Vec::new();
        let mut dims = Vec::new();
        for s in 0..self.slots {
            let im = Subspace::from_columns(&f.comps[s]);
            let n = f.dst.dims[s];
            let mut rref = im.basis.clone();
            let pivots = rref.rref();
            let non_pivots: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
            // projection: reduce each unit vector modulo the image, keep
            // non-pivot coordinates
            let mut proj = Mat::zero(non_pivots.len(), n, p);
            for j in 0..n {
                let mut v = vec![0u32; n];
                v[j] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let c = v[pc];
                    if c != 0 {
                        for t in 0..n {
                            v[t] = ((v[t] as u64 + (p - c) as u64 * rref.get(r, t) as u64)
                                % p as u64) as u32;
                        }
                    }
                }
                for (i, &np) in non_pivots.iter().enumerate() {
                    proj.set(i, j, v[np]);
                }
            }
            let mut lift = Mat::zero(n, non_pivots.len(), p);
            for (i, &np) in non_pivots.iter().enumerate() {
                lift.set(np, i, 1);
            }
            dims.push(non_pivots.len());
            projs.push(proj);
            lifts.push(lift);
        }
        let mut maps = Vec::new();
        for s in 0..self.slots - 1 {
            maps.push(projs[s + 1].mul(&f.dst.maps[s]).mul(&lifts[s]));
        }
        let qrep = GradedRep { p, dims, maps };
        let epi = RepMor { src: f.dst.clone(), dst: qrep.clone(), comps: projs };
        (qrep, epi)
    }

    pub fn lift_through_mono(&self, mono: &RepMor, f: &RepMor) -> Option<RepMor> {
        assert_eq!(mono.dst, f.dst);
        let mut comps = Vec::new();
        for s in 0..self.slots {
            comps.push(mono.comps[s].solve(&f.comps[s])?);
        }
        let g = RepMor { src: f.src.clone(), dst: mono.src.clone(), comps };
        if self.compose(mono, &g) == *f && self.intertwines(&g) {
            Some(g)
        } else {
            None
        }
    }

    pub fn descend_through_epi(&self, epi: &RepMor, f: &RepMor) -> Option<RepMor> {
        assert_eq!(epi.src, f.src);
        let mut comps = Vec::new();
        for s in 0..self.slots {
            // G·E = F  ⟺  Eᵀ·Gᵀ = Fᵀ
            let gt = epi.comps[s].transpose().solve(&f.comps[s].transpose())?;
            comps.push(gt.transpose());
        }
        let g = RepMor { src: epi.dst.clone(), dst: f.dst.clone(), comps };
        if self.compose(&g, epi) == *f && self.intertwines(&g) {
            Some(g)
        } else {
            None
        }
    }

    fn intertwines(&self, f: &RepMor) -> bool {
        (0..self.slots - 1).all(|s| {
            f.comps[s + 1].mul(&f.src.maps[s]) == f.dst.maps[s].mul(&f.comps[s])
        })
    }

    pub fn span_coords(&self, gens: &[RepMor], f: &RepMor) -> Option<Vec<u64>> {
        let fv = f.flatten();
        if fv.is_empty() || gens.is_empty() {
            return if f.is_zero() { Some(vec![0; gens.len()]) } else { None };
        }
        let cols: Vec<Vec<u32>> = gens.iter().map(|g| g.flatten()).collect();
        let mut m = Mat::zero(fv.len(), gens.len(), self.p);
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        let b = Mat::from_rows(fv.iter().map(|&v| vec![v]).collect(), 1, self.p);
        m.solve(&b).map(|x| (0..gens.len()).map(|i| x.get(i, 0) as u64).collect())
    }

    pub fn span_rank(&self, gens: &[RepMor]) -> usize {
        if gens.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<u32>> = gens.iter().map(|g| g.flatten()).collect();
        let cols = rows[0].len();
        if cols == 0 {
            return 0;
        }
        Mat::from_rows(rows, cols, self.p).rank()
    }

    /// Generators of {λ: W → src f | f∘λ ∈ span(triv)}.
    pub fn left_preimage_gens(
        &self,
        f: &RepMor,
        w: &GradedRep,
        triv: &[RepMor],
    ) -> Vec<RepMor> {
        let lam_basis = self.hom_basis(w, &f.src);
        self.preimage_filter(lam_basis, triv, |lam| self.compose(f, lam))
    }

    /// Generators of {λ: tgt f → W | λ∘f ∈ span(triv)}.
    pub fn right_preimage_gens(
        &self,
        f: &RepMor,
        w: &GradedRep,
        triv: &[RepMor],
    ) -> Vec<RepMor> {
        let lam_basis = self.hom_basis(&f.dst, w);
        self.preimage_filter(lam_basis, triv, |lam| self.compose(lam, f))
    }

    fn preimage_filter(
        &self,
        lam_basis: Vec<RepMor>,
        triv: &[RepMor],
        push: impl Fn(&RepMor) -> RepMor,
    ) -> Vec<RepMor> {
        if lam_basis.is_empty() {
            return Vec::new();
        }
        let p = self.p;
        let pushed: Vec<Vec<u32>> = lam_basis.iter().map(|l| push(l).flatten()).collect();
        let tcols: Vec<Vec<u32>> = triv.iter().map(|t| t.flatten()).collect();
        let m = pushed[0].len();
        // [C | -T] x = 0, keep the C-part of nullspace vectors
        let mut a = Mat::zero(m, lam_basis.len() + tcols.len(), p);
        for (j, c) in pushed.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                a.set(i, j, v);
            }
        }
        for (j, c) in tcols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                a.set(i, lam_basis.len() + j, (p - v % p) % p);
            }
        }
        let ns = a.nullspace();
        let mut out = Vec::new();
        for col in 0..ns.cols {
            let v = ns.col(col);
            if v[..lam_basis.len()].iter().all(|&x| x == 0) {
                continue;
            }
            let mut acc = self.zero_mor(&lam_basis[0].src, &lam_basis[0].dst);
            for (i, lam) in lam_basis.iter().enumerate() {
                if v[i] != 0 {
                    acc = self.add(&acc, &self.scale(lam, v[i]));
                }
            }
            out.push(acc);
        }
        out
    }

    pub fn scale(&self, f: &RepMor, c: u32) -> RepMor {
        RepMor {
            src: f.src.clone(),
            dst: f.dst.clone(),
            comps: f.comps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn direct_sum(&self, parts: &[GradedRep]) -> (GradedRep, Vec<RepMor>, Vec<RepMor>) {
        let p = self.p;
        let dims: Vec<usize> =
            (0..self.slots).map(|s| parts.iter().map(|r| r.dims[s]).sum()).collect();
        let mut maps = Vec::new();
        for s in 0..self.slots.saturating_sub(1) {
            let mut m = Mat::zero(dims[s + 1], dims[s], p);
            let mut ro = 0;
            let mut co = 0;
            for r in parts {
                for i in 0..r.dims[s + 1] {
                    for j in 0..r.dims[s] {
                        m.set(ro + i, co + j, r.maps[s].get(i, j));
                    }
                }
                ro += r.dims[s + 1];
                co += r.dims[s];
            }
            maps.push(m);
        }
        let sum = GradedRep { p, dims: dims.clone(), maps };
        let mut injs = Vec::new();
        let mut projs = Vec::new();
        let mut offsets = vec![vec![0usize; self.slots]];
        for r in parts {
            let last = offsets.last().unwrap().clone();
            offsets.push((0..self.slots).map(|s| last[s] + r.dims[s]).collect());
        }
        for (k, r) in parts.iter().enumerate() {
            let mut icomps = Vec::new();
            let mut pcomps = Vec::new();
            for s in 0..self.slots {
                let mut inj = Mat::zero(dims[s], r.dims[s], p);
                let mut proj = Mat::zero(r.dims[s], dims[s], p);
                for i in 0..r.dims[s] {
                    inj.set(offsets[k][s] + i, i, 1);
                    proj.set(i, offsets[k][s] + i, 1);
                }
                icomps.push(inj);
                pcomps.push(proj);
            }
            injs.push(RepMor { src: r.clone(), dst: sum.clone(), comps: icomps });
            projs.push(RepMor { src: sum.clone(), dst: r.clone(), comps: pcomps });
        }
        (sum, injs, projs)
    }

    /// Every subrepresentation (invariant tuple of subspaces), as
    /// (subobject, inclusion). Errors out above the per-slot dimension cap.
    pub fn subobjects(&self, rep: &GradedRep) -> Result<Vec<(GradedRep, RepMor)>> {
        if rep.dims.iter().any(|&d| d > self.sub_dim_cap) {
            return Err(Error::BoundExceeded(format!(
                "subobject enumeration needs per-slot dim ≤ {}, got {:?}",
                self.sub_dim_cap, rep.dims
            )));
        }
        let p = self.p;
        let mut partials: Vec<Vec<Subspace>> = all_subspaces(rep.dims[0], p)
            .into_iter()
            .map(|s| vec![s])
            .collect();
        for s in 0..self.slots - 1 {
            let mut next = Vec::new();
            for tuple in partials {
                let cur = tuple.last().unwrap();
                // image of the current subspace under the structure map
                let basis_cols = cur.basis.transpose();
                let img = Subspace::from_columns(&rep.maps[s].mul(&basis_cols));
                for up in subspaces_containing(&img) {
                    if up.ambient_dim != rep.dims[s + 1] {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t.push(up);
                    next.push(t);
                }
            }
            partials = next;
            if partials.len() > 2_000_000 {
                return Err(Error::BoundExceeded("too many subobject candidates".into()));
            }
        }
        let mut out = Vec::new();
        for tuple in partials {
            let bases: Vec<Mat> = tuple.iter().map(|s| s.basis.transpose()).collect();
            let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
            let mut maps = Vec::new();
            let mut ok = true;
            for s in 0..self.slots - 1 {
                let img = rep.maps[s].mul(&bases[s]);
                match bases[s + 1].solve(&img) {
                    Some(x) => maps.push(x),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let sub = GradedRep { p, dims, maps };
            let mono = RepMor { src: sub.clone(), dst: rep.clone(), comps: bases };
            out.push((sub, mono));
        }
        Ok(out)
    }
}
