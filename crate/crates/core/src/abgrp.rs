//! Finite abelian groups of order dividing a fixed bound N.
//!
//! Objects are multisets of prime-power cyclic factors, morphisms integer
//! matrices with entries reduced modulo the target orders. Every hom-group
//! splits into blocks per prime of N, and each p-block is small enough
//! (p-parts of N are at most 9) that subgroup closures, membership tests
//! and factorization searches are done by direct enumeration.

use std::collections::{BTreeSet, HashMap};

use crate::abcat::{Backend, IndId, ObjectExpr};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbGroup {
    /// cyclic factor orders, each a prime power > 1, in fixed positional
    /// order (not sorted)
    pub orders: Vec<i64>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup { orders: Vec::new() }
    }

    pub fn card(&self) -> i64 {
        self.orders.iter().product()
    }

    fn zero_elem(&self) -> Vec<i64> {
        vec![0; self.orders.len()]
    }

    fn add_elem(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| (x + y).rem_euclid(m))
            .collect()
    }

    pub fn scale_elem(&self, a: &[i64], k: i64) -> Vec<i64> {
        a.iter().zip(&self.orders).map(|(&x, &m)| (x * k).rem_euclid(m)).collect()
    }

    fn elem_order(&self, a: &[i64]) -> i64 {
        let mut k = 1;
        let mut cur = a.to_vec();
        while cur.iter().any(|&x| x != 0) {
            cur = self.add_elem(&cur, a);
            k += 1;
        }
        k
    }

    /// All elements, lexicographic over the factor coordinates.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for v in 0..m {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct GrpMor {
    pub src: AbGroup,
    pub dst: AbGroup,
    /// row-major, dst.orders.len() × src.orders.len(), entries reduced mod
    /// the row's target order
    pub a: Vec<i64>,
}

impl GrpMor {
    fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.src.orders.len() + j]
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.dst.orders.len())
            .map(|i| {
                let mut acc = 0i64;
                for (j, &xj) in x.iter().enumerate() {
                    acc = (acc + self.get(i, j) * xj).rem_euclid(self.dst.orders[i]);
                }
                acc
            })
            .collect()
    }

    fn is_valid(&self) -> bool {
        for (i, &di) in self.dst.orders.iter().enumerate() {
            for (j, &sj) in self.src.orders.iter().enumerate() {
                if (self.get(i, j) * sj).rem_euclid(di) != 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_of(order: i64) -> i64 {
    factorize(order)[0].0
}

/// Finite abelian groups whose order divides `n`.
pub struct AbGrpBackend {
    pub n: i64,
    primes: Vec<(i64, u32)>,
    /// indecomposable cyclic orders, grouped by prime, powers ascending
    inds: Vec<i64>,
}

impl AbGrpBackend {
    pub fn new(n: i64) -> Result<Self> {
        if n < 2 || n > 4000 {
            return Err(Error::Precondition(format!("order bound {} out of range", n)));
        }
        let primes = factorize(n);
        let mut inds = Vec::new();
        for &(p, e) in &primes {
            let mut q = 1;
            for _ in 0..e {
                q *= p;
                inds.push(q);
            }
        }
        Ok(AbGrpBackend { n, primes, inds })
    }

    pub fn order_of(&self, id: IndId) -> i64 {
        self.inds[id.0 as usize]
    }

    pub fn id_of_order(&self, order: i64) -> Result<IndId> {
        self.inds
            .iter()
            .position(|&o| o == order)
            .map(|i| IndId(i as u16))
            .ok_or_else(|| Error::Parse(format!("not a cyclic factor within bounds: {}", order)))
    }

    /// True iff every prime of |M| lies in P.
    pub fn in_t(&self, primes: &[i64], m: &AbGroup) -> bool {
        m.orders.iter().all(|&o| primes.contains(&prime_of(o)))
    }

    /// True iff no prime of |M| lies in P.
    pub fn in_f(&self, primes: &[i64], m: &AbGroup) -> bool {
        m.orders.iter().all(|&o| !primes.contains(&prime_of(o)))
    }

    /// Largest subgroup whose element orders only involve primes of P,
    /// with its inclusion.
    pub fn primary_part(&self, primes: &[i64], m: &AbGroup) -> (AbGroup, GrpMor) {
        let keep: Vec<usize> = (0..m.orders.len())
            .filter(|&i| primes.contains(&prime_of(m.orders[i])))
            .collect();
        let sub = AbGroup { orders: keep.iter().map(|&i| m.orders[i]).collect() };
        let mut a = vec![0i64; m.orders.len() * keep.len()];
        for (j, &i) in keep.iter().enumerate() {
            a[i * keep.len() + j] = 1;
        }
        (sub.clone(), GrpMor { src: sub, dst: m.clone(), a })
    }

    /// Independent generators of Hom(A, B) with their orders: one map per
    /// factor pair, of order gcd of the two orders.
    pub fn hom_group(&self, a: &AbGroup, b: &AbGroup) -> Vec<(GrpMor, i64)> {
        let mut out = Vec::new();
        for i in 0..b.orders.len() {
            for j in 0..a.orders.len() {
                let g = gcd(a.orders[j], b.orders[i]);
                if g > 1 {
                    let mut m = vec![0i64; a.orders.len() * b.orders.len()];
                    m[i * a.orders.len() + j] = b.orders[i] / g;
                    out.push((GrpMor { src: a.clone(), dst: b.clone(), a: m }, g));
                }
            }
        }
        out
    }

    /// Row/column indices of the p-primary block.
    fn p_rows_cols(&self, f: &GrpMor, p: i64) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..f.dst.orders.len()).filter(|&i| f.dst.orders[i] % p == 0).collect();
        let cols = (0..f.src.orders.len()).filter(|&j| f.src.orders[j] % p == 0).collect();
        (rows, cols)
    }

    fn p_block(&self, f: &GrpMor, p: i64) -> Vec<i64> {
        let (rows, cols) = self.p_rows_cols(f, p);
        let mut out = Vec::with_capacity(rows.len() * cols.len());
        for &i in &rows {
            for &j in &cols {
                out.push(f.get(i, j));
            }
        }
        out
    }

    fn p_block_add(&self, dst: &AbGroup, p: i64, a: &[i64], b: &[i64], cols: usize) -> Vec<i64> {
        let rows: Vec<usize> =
            (0..dst.orders.len()).filter(|&i| dst.orders[i] % p == 0).collect();
        let mut out = vec![0i64; a.len()];
        for (bi, &i) in rows.iter().enumerate() {
            for c in 0..cols {
                out[bi * cols + c] = (a[bi * cols + c] + b[bi * cols + c]).rem_euclid(dst.orders[i]);
            }
        }
        out
    }

    /// BFS closure of the subgroup generated by the p-blocks of `gens`
    /// inside Hom_p, with one coefficient vector per element (coefficients
    /// mod p^cap).
    fn span_closure_p(&self, gens: &[GrpMor], p: i64, cap_mod: i64) -> HashMap<Vec<i64>, Vec<i64>> {
        if gens.is_empty() {
            return HashMap::new();
        }
        let dst = &gens[0].dst;
        let cols = gens[0].src.orders.iter().filter(|&&o| o % p == 0).count();
        let blocks: Vec<Vec<i64>> = gens.iter().map(|g| self.p_block(g, p)).collect();
        let zero = vec![0i64; blocks[0].len()];
        let mut map: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        map.insert(zero.clone(), vec![0i64; gens.len()]);
        let mut frontier = vec![zero];
        while let Some(cur) = frontier.pop() {
            let coeffs = map[&cur].clone();
            for (k, blk) in blocks.iter().enumerate() {
                let nxt = self.p_block_add(dst, p, &cur, blk, cols);
                if !map.contains_key(&nxt) {
                    let mut c2 = coeffs.clone();
                    c2[k] = (c2[k] + 1).rem_euclid(cap_mod);
                    map.insert(nxt.clone(), c2);
                    frontier.push(nxt);
                }
            }
        }
        map
    }

    fn hom_dim_p(&self, a: &AbGroup, b: &AbGroup, p: i64) -> i64 {
        let mut size = 1i64;
        for &bi in &b.orders {
            if bi % p != 0 {
                continue;
            }
            for &aj in &a.orders {
                if aj % p == 0 {
                    size *= gcd(aj, bi);
                }
            }
        }
        size
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// x ≡ r_i (mod m_i) for pairwise coprime moduli.
fn crt(pairs: &[(i64, i64)]) -> i64 {
    let mut x = 0i64;
    let mut m = 1i64;
    for &(r, mi) in pairs {
        // solve x + m·t ≡ r (mod mi)
        let mut t = 0;
        while (x + m * t).rem_euclid(mi) != r.rem_euclid(mi) {
            t += 1;
        }
        x += m * t;
        m *= mi;
    }
    x.rem_euclid(m)
}

/// Decomposition of a small abelian p-group, given as an element list with
/// an ambient addition: returns independent generators with their orders,
/// largest first.
fn p_group_basis(
    elems: &[Vec<i64>],
    p: i64,
    add: &dyn Fn(&[i64], &[i64]) -> Vec<i64>,
    zero: &[i64],
) -> Vec<(Vec<i64>, i64)> {
    let order_of = |x: &[i64]| -> i64 {
        let mut k = 1i64;
        let mut cur = x.to_vec();
        while cur != zero {
            cur = add(&cur, x);
            k += 1;
        }
        k
    };
    let orders: Vec<i64> = elems.iter().map(|e| order_of(e)).collect();
    // isomorphism type from order counts: n_k = p^{Σ min(e_i, k)}
    let mut exps = Vec::new();
    let mut k = 1i64;
    let mut prev = 1i64;
    loop {
        let pk = p.pow(k as u32);
        let nk = orders.iter().filter(|&&o| pk % o == 0).count() as i64;
        if nk == prev {
            break;
        }
        // Σ min(e_i, k) − Σ min(e_i, k−1) = #{i: e_i ≥ k}
        let mut cnt = 0;
        let mut q = nk / prev;
        while q > 1 {
            q /= p;
            cnt += 1;
        }
        exps.push((k, cnt));
        prev = nk;
        k += 1;
    }
    // target multiset of generator orders, largest first
    let mut gen_orders = Vec::new();
    let height = exps.len() as i64;
    for lvl in (1..=height).rev() {
        let at_lvl = exps[lvl as usize - 1].1;
        let above = if lvl == height { 0 } else { gen_orders.len() };
        for _ in 0..(at_lvl - above as i64) {
            gen_orders.push(p.pow(lvl as u32));
        }
    }
    if gen_orders.is_empty() {
        return Vec::new();
    }
    // search a tuple of elements of those exact orders generating directly
    let closure_size = |gens: &[&Vec<i64>]| -> usize {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        set.insert(zero.to_vec());
        let mut frontier = vec![zero.to_vec()];
        while let Some(cur) = frontier.pop() {
            for g in gens {
                let nxt = add(&cur, g);
                if set.insert(nxt.clone()) {
                    frontier.push(nxt);
                }
            }
        }
        set.len()
    };
    let want: i64 = gen_orders.iter().product();
    let candidates: Vec<Vec<&Vec<i64>>> = gen_orders
        .iter()
        .map(|&go| elems.iter().zip(&orders).filter(|(_, &o)| o == go).map(|(e, _)| e).collect())
        .collect();
    let mut picks: Vec<usize> = vec![0; gen_orders.len()];
    loop {
        let tuple: Vec<&Vec<i64>> = picks.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if closure_size(&tuple) as i64 == want {
            return tuple.into_iter().cloned().zip(gen_orders).collect();
        }
        // advance the multi-index
        let mut pos = 0;
        loop {
            picks[pos] += 1;
            if picks[pos] < candidates[pos].len() {
                break;
            }
            picks[pos] = 0;
            pos += 1;
            assert!(pos < picks.len(), "no independent generator tuple found");
        }
    }
}

impl AbGrpBackend {
    /// Basis of a subgroup of `ambient` given by its element set, as
    /// (AbGroup, inclusion).
    fn subgroup_to_object(&self, ambient: &AbGroup, elems: &[Vec<i64>]) -> (AbGroup, GrpMor) {
        let zero = ambient.zero_elem();
        let mut basis: Vec<(Vec<i64>, i64)> = Vec::new();
        for &(p, _) in &self.primes {
            let p_elems: Vec<Vec<i64>> = elems
                .iter()
                .filter(|e| {
                    let o = ambient.elem_order(e);
                    o > 1 && o % p == 0 && factorize(o).len() == 1
                })
                .cloned()
                .chain(std::iter::once(zero.clone()))
                .collect();
            let add = |a: &[i64], b: &[i64]| ambient.add_elem(a, b);
            basis.extend(p_group_basis(&p_elems, p, &add, &zero));
        }
        let sub = AbGroup { orders: basis.iter().map(|&(_, o)| o).collect() };
        let mut a = vec![0i64; ambient.orders.len() * basis.len()];
        for (j, (e, _)) in basis.iter().enumerate() {
            for (i, &v) in e.iter().enumerate() {
                a[i * basis.len() + j] = v;
            }
        }
        (sub.clone(), GrpMor { src: sub, dst: ambient.clone(), a })
    }

    /// The subgroup generated by the images of the source generators.
    fn image_elems(&self, f: &GrpMor) -> Vec<Vec<i64>> {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        set.insert(f.dst.zero_elem());
        let gens: Vec<Vec<i64>> = (0..f.src.orders.len())
            .map(|j| {
                let mut e = f.src.zero_elem();
                e[j] = 1;
                f.apply(&e)
            })
            .collect();
        let mut frontier: Vec<Vec<i64>> = vec![f.dst.zero_elem()];
        while let Some(cur) = frontier.pop() {
            for g in &gens {
                let nxt = f.dst.add_elem(&cur, g);
                if set.insert(nxt.clone()) {
                    frontier.push(nxt);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Coordinates of every element of the subgroup generated by `basis`
    /// (with the given addition) in terms of the basis.
    fn coord_map(
        &self,
        basis: &[(Vec<i64>, i64)],
        add: &dyn Fn(&[i64], &[i64]) -> Vec<i64>,
        zero: &[i64],
    ) -> HashMap<Vec<i64>, Vec<i64>> {
        let mut map = HashMap::new();
        map.insert(zero.to_vec(), vec![0i64; basis.len()]);
        let mut frontier = vec![zero.to_vec()];
        while let Some(cur) = frontier.pop() {
            let coords = map[&cur].clone();
            for (k, (g, o)) in basis.iter().enumerate() {
                let nxt = add(&cur, g);
                if !map.contains_key(&nxt) {
                    let mut c2 = coords.clone();
                    c2[k] = (c2[k] + 1).rem_euclid(*o);
                    map.insert(nxt.clone(), c2);
                    frontier.push(nxt);
                }
            }
        }
        map
    }

    /// Smallest representative of x + im, for a fixed element list of im.
    fn coset_rep(&self, g: &AbGroup, x: &[i64], im: &[Vec<i64>]) -> Vec<i64> {
        im.iter().map(|m| g.add_elem(x, m)).min().unwrap()
    }
}

impl Backend for AbGrpBackend {
    type Obj = AbGroup;
    type Mor = GrpMor;

    fn name(&self) -> String {
        format!("abelian groups of order dividing {}", self.n)
    }

    fn indecomposables(&self) -> Vec<IndId> {
        (0..self.inds.len() as u16).map(IndId).collect()
    }

    fn label(&self, id: IndId) -> String {
        format!("Z/{}", self.order_of(id))
    }

    fn parse_ind(&self, s: &str) -> Result<IndId> {
        let t = s.trim();
        let t = t.strip_prefix("Z/").or_else(|| t.strip_prefix("ℤ/")).unwrap_or(t);
        let order: i64 = t.parse().map_err(|_| Error::Parse(format!("bad cyclic order: {}", s)))?;
        self.id_of_order(order)
    }

    /// Every multiset of cyclic factors with product dividing n.
    fn universe(&self) -> Vec<ObjectExpr> {
        let mut per_prime: Vec<Vec<Vec<IndId>>> = Vec::new();
        for &(p, e) in &self.primes {
            // multisets of powers of p with exponent sum ≤ e
            let mut lists: Vec<(u32, Vec<IndId>)> = vec![(0, Vec::new())];
            for k in (1..=e).rev() {
                let id = self.id_of_order(p.pow(k)).unwrap();
                let mut grown = Vec::new();
                for (used, l) in &lists {
                    let mut cur = l.clone();
                    let mut u = *used;
                    loop {
                        grown.push((u, cur.clone()));
                        u += k;
                        if u > e {
                            break;
                        }
                        cur.push(id);
                    }
                }
                lists = grown;
            }
            per_prime.push(lists.into_iter().map(|(_, l)| l).collect());
        }
        let mut out = vec![Vec::new()];
        for lists in per_prime {
            let mut next = Vec::new();
            for base in &out {
                for l in &lists {
                    let mut b: Vec<IndId> = base.clone();
                    b.extend_from_slice(l);
                    next.push(b);
                }
            }
            out = next;
        }
        out.into_iter().map(ObjectExpr::new).collect()
    }

    fn realize(&self, x: &ObjectExpr) -> AbGroup {
        AbGroup { orders: x.summands().iter().map(|&id| self.order_of(id)).collect() }
    }

    fn decompose(&self, o: &AbGroup) -> ObjectExpr {
        ObjectExpr::new(o.orders.iter().map(|&ord| self.id_of_order(ord).unwrap()).collect())
    }

    fn length(&self, x: &ObjectExpr) -> usize {
        x.summands()
            .iter()
            .map(|&id| factorize(self.order_of(id))[0].1 as usize)
            .sum()
    }

    fn obj_is_zero(&self, o: &AbGroup) -> bool {
        o.orders.is_empty()
    }

    fn source(&self, f: &GrpMor) -> AbGroup {
        f.src.clone()
    }

    fn target(&self, f: &GrpMor) -> AbGroup {
        f.dst.clone()
    }

    fn zero_mor(&self, a: &AbGroup, b: &AbGroup) -> GrpMor {
        GrpMor { src: a.clone(), dst: b.clone(), a: vec![0; a.orders.len() * b.orders.len()] }
    }

    fn identity(&self, a: &AbGroup) -> GrpMor {
        let n = a.orders.len();
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = 1 % a.orders[i];
        }
        GrpMor { src: a.clone(), dst: a.clone(), a: m }
    }

    fn add(&self, f: &GrpMor, g: &GrpMor) -> GrpMor {
        assert_eq!((&f.src, &f.dst), (&g.src, &g.dst));
        let cols = f.src.orders.len();
        let a = f
            .a
            .iter()
            .zip(&g.a)
            .enumerate()
            .map(|(idx, (&x, &y))| (x + y).rem_euclid(f.dst.orders[idx / cols.max(1)]))
            .collect();
        GrpMor { src: f.src.clone(), dst: f.dst.clone(), a }
    }

    fn negate(&self, f: &GrpMor) -> GrpMor {
        let cols = f.src.orders.len();
        let a = f
            .a
            .iter()
            .enumerate()
            .map(|(idx, &x)| (-x).rem_euclid(f.dst.orders[idx / cols.max(1)]))
            .collect();
        GrpMor { src: f.src.clone(), dst: f.dst.clone(), a }
    }

    fn compose(&self, g: &GrpMor, f: &GrpMor) -> GrpMor {
        assert_eq!(f.dst, g.src, "composition mismatch");
        let (m, k, n) = (g.dst.orders.len(), f.dst.orders.len(), f.src.orders.len());
        let mut a = vec![0i64; m * n];
        for i in 0..m {
            for j in 0..n {
                let mut acc = 0i64;
                for t in 0..k {
                    acc = (acc + g.get(i, t) * f.get(t, j)).rem_euclid(g.dst.orders[i]);
                }
                a[i * n + j] = acc;
            }
        }
        GrpMor { src: f.src.clone(), dst: g.dst.clone(), a }
    }

    fn is_zero_mor(&self, f: &GrpMor) -> bool {
        f.a.iter().all(|&x| x == 0)
    }

    fn hom_basis(&self, a: &AbGroup, b: &AbGroup) -> Vec<GrpMor> {
        self.hom_group(a, b).into_iter().map(|(m, _)| m).collect()
    }

    fn hom_measure(&self, a: &AbGroup, b: &AbGroup) -> u128 {
        self.hom_group(a, b).iter().map(|&(_, o)| o as u128).product()
    }

    fn span_coords(&self, gens: &[GrpMor], f: &GrpMor) -> Option<Vec<u64>> {
        if gens.is_empty() {
            return self.is_zero_mor(f).then(Vec::new);
        }
        let mut per_gen: Vec<Vec<(i64, i64)>> = vec![Vec::new(); gens.len()];
        for &(p, e) in &self.primes {
            let cap_mod = p.pow(e);
            let closure = self.span_closure_p(gens, p, cap_mod);
            let coeffs = closure.get(&self.p_block(f, p))?;
            for (k, &c) in coeffs.iter().enumerate() {
                // a coefficient is only constrained at primes where the
                // generator has content
                if self.p_block(&gens[k], p).iter().any(|&x| x != 0) {
                    per_gen[k].push((c, cap_mod));
                }
            }
        }
        Some(per_gen.into_iter().map(|pairs| crt(&pairs) as u64).collect())
    }

    fn span_is_full(&self, a: &AbGroup, b: &AbGroup, gens: &[GrpMor]) -> bool {
        for &(p, e) in &self.primes {
            let want = self.hom_dim_p(a, b, p);
            let got = if gens.is_empty() {
                1
            } else {
                self.span_closure_p(gens, p, p.pow(e)).len() as i64
            };
            if got != want {
                return false;
            }
        }
        true
    }

    fn kernel(&self, f: &GrpMor) -> (AbGroup, GrpMor) {
        let zero = f.dst.zero_elem();
        let elems: Vec<Vec<i64>> =
            f.src.elements().into_iter().filter(|x| f.apply(x) == zero).collect();
        self.subgroup_to_object(&f.src, &elems)
    }

    fn cokernel(&self, f: &GrpMor) -> (AbGroup, GrpMor) {
        let im = self.image_elems(f);
        let g = &f.dst;
        let zero_rep = self.coset_rep(g, &g.zero_elem(), &im);
        let reps: BTreeSet<Vec<i64>> =
            g.elements().iter().map(|x| self.coset_rep(g, x, &im)).collect();
        let reps: Vec<Vec<i64>> = reps.into_iter().collect();
        let add = |a: &[i64], b: &[i64]| self.coset_rep(g, &g.add_elem(a, b), &im);
        let mut basis: Vec<(Vec<i64>, i64)> = Vec::new();
        for &(p, _) in &self.primes {
            let order_of = |x: &[i64]| {
                let mut k = 1i64;
                let mut cur = x.to_vec();
                while cur != zero_rep {
                    cur = add(&cur, x);
                    k += 1;
                }
                k
            };
            let p_elems: Vec<Vec<i64>> = reps
                .iter()
                .filter(|r| {
                    let o = order_of(r);
                    o > 1 && o % p == 0 && factorize(o).len() == 1
                })
                .cloned()
                .chain(std::iter::once(zero_rep.clone()))
                .collect();
            basis.extend(p_group_basis(&p_elems, p, &add, &zero_rep));
        }
        let quot = AbGroup { orders: basis.iter().map(|&(_, o)| o).collect() };
        let coords = self.coord_map(&basis, &add, &zero_rep);
        let mut a = vec![0i64; quot.orders.len() * g.orders.len()];
        for j in 0..g.orders.len() {
            let mut e = g.zero_elem();
            e[j] = 1;
            let c = &coords[&self.coset_rep(g, &e, &im)];
            for (i, &v) in c.iter().enumerate() {
                a[i * g.orders.len() + j] = v.rem_euclid(quot.orders[i]);
            }
        }
        let epi = GrpMor { src: g.clone(), dst: quot.clone(), a };
        debug_assert!(epi.is_valid());
        (quot, epi)
    }

    fn image(&self, f: &GrpMor) -> (AbGroup, GrpMor, GrpMor) {
        let elems = self.image_elems(f);
        let (im, mono) = self.subgroup_to_object(&f.dst, &elems);
        // coordinates of each image element in the subgroup basis
        let basis: Vec<(Vec<i64>, i64)> = (0..im.orders.len())
            .map(|j| {
                let mut e = im.zero_elem();
                e[j] = 1;
                (mono.apply(&e), im.orders[j])
            })
            .collect();
        let add = |a: &[i64], b: &[i64]| f.dst.add_elem(a, b);
        let coords = self.coord_map(&basis, &add, &f.dst.zero_elem());
        let n = f.src.orders.len();
        let mut a = vec![0i64; im.orders.len() * n];
        for j in 0..n {
            let mut e = f.src.zero_elem();
            e[j] = 1;
            let c = &coords[&f.apply(&e)];
            for (i, &v) in c.iter().enumerate() {
                a[i * n + j] = v.rem_euclid(im.orders[i]);
            }
        }
        let epi = GrpMor { src: f.src.clone(), dst: im.clone(), a };
        debug_assert!(epi.is_valid());
        debug_assert_eq!(self.compose(&mono, &epi), *f);
        (im, epi, mono)
    }

    fn lift_through_mono(&self, mono: &GrpMor, f: &GrpMor) -> Option<GrpMor> {
        assert_eq!(mono.dst, f.dst);
        let table: HashMap<Vec<i64>, Vec<i64>> = mono
            .src
            .elements()
            .into_iter()
            .map(|x| (mono.apply(&x), x))
            .collect();
        let n = f.src.orders.len();
        let mut a = vec![0i64; mono.src.orders.len() * n];
        for j in 0..n {
            let mut e = f.src.zero_elem();
            e[j] = 1;
            let x = table.get(&f.apply(&e))?;
            for (i, &v) in x.iter().enumerate() {
                a[i * n + j] = v;
            }
        }
        let g = GrpMor { src: f.src.clone(), dst: mono.src.clone(), a };
        (g.is_valid() && self.compose(mono, &g) == *f).then_some(g)
    }

    fn descend_through_epi(&self, epi: &GrpMor, f: &GrpMor) -> Option<GrpMor> {
        assert_eq!(epi.src, f.src);
        // one preimage per target generator
        let n = epi.dst.orders.len();
        let mut a = vec![0i64; f.dst.orders.len() * n];
        for j in 0..n {
            let mut want = epi.dst.zero_elem();
            want[j] = 1;
            let x = epi.src.elements().into_iter().find(|x| epi.apply(x) == want)?;
            let y = f.apply(&x);
            for (i, &v) in y.iter().enumerate() {
                a[i * n + j] = v;
            }
        }
        let g = GrpMor { src: epi.dst.clone(), dst: f.dst.clone(), a };
        (g.is_valid() && self.compose(&g, epi) == *f).then_some(g)
    }

    fn left_preimage_gens(&self, f: &GrpMor, w: &AbGroup, triv: &[GrpMor]) -> Vec<GrpMor> {
        let hom = self.hom_basis(w, &f.src);
        let mut out = Vec::new();
        for &(p, e) in &self.primes {
            let cap_mod = p.pow(e);
            let triv_set: BTreeSet<Vec<i64>> = if triv.is_empty() {
                let cols = w.orders.iter().filter(|&&o| o % p == 0).count();
                let rows = f.dst.orders.iter().filter(|&&o| o % p == 0).count();
                std::iter::once(vec![0i64; rows * cols]).collect()
            } else {
                self.span_closure_p(triv, p, cap_mod).into_keys().collect()
            };
            let lam_closure = self.span_closure_p(&hom, p, cap_mod);
            for (block, coeffs) in lam_closure {
                if block.iter().all(|&x| x == 0) {
                    continue;
                }
                // rebuild the p-primary morphism from its coefficients
                let mut lam = self.zero_mor(w, &f.src);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        let mut scaled = hom[k].clone();
                        let cols = w.orders.len();
                        for (idx, v) in scaled.a.iter_mut().enumerate() {
                            *v = (*v * c).rem_euclid(f.src.orders[idx / cols.max(1)]);
                        }
                        lam = Backend::add(self, &lam, &scaled);
                    }
                }
                if self.p_block(&lam, p) != block {
                    continue;
                }
                if triv_set.contains(&self.p_block(&self.compose(f, &lam), p)) {
                    out.push(lam);
                }
            }
        }
        out
    }

    fn right_preimage_gens(&self, f: &GrpMor, w: &AbGroup, triv: &[GrpMor]) -> Vec<GrpMor> {
        let hom = self.hom_basis(&f.dst, w);
        let mut out = Vec::new();
        for &(p, e) in &self.primes {
            let cap_mod = p.pow(e);
            let triv_set: BTreeSet<Vec<i64>> = if triv.is_empty() {
                let cols = f.src.orders.iter().filter(|&&o| o % p == 0).count();
                let rows = w.orders.iter().filter(|&&o| o % p == 0).count();
                std::iter::once(vec![0i64; rows * cols]).collect()
            } else {
                self.span_closure_p(triv, p, cap_mod).into_keys().collect()
            };
            let lam_closure = self.span_closure_p(&hom, p, cap_mod);
            for (block, coeffs) in lam_closure {
                if block.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut lam = self.zero_mor(&f.dst, w);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        let mut scaled = hom[k].clone();
                        let cols = f.dst.orders.len();
                        for (idx, v) in scaled.a.iter_mut().enumerate() {
                            *v = (*v * c).rem_euclid(w.orders[idx / cols.max(1)]);
                        }
                        lam = Backend::add(self, &lam, &scaled);
                    }
                }
                if self.p_block(&lam, p) != block {
                    continue;
                }
                if triv_set.contains(&self.p_block(&self.compose(&lam, f), p)) {
                    out.push(lam);
                }
            }
        }
        out
    }

    fn direct_sum(&self, parts: &[AbGroup]) -> (AbGroup, Vec<GrpMor>, Vec<GrpMor>) {
        let mut orders = Vec::new();
        for p in parts {
            orders.extend_from_slice(&p.orders);
        }
        let sum = AbGroup { orders };
        let total = sum.orders.len();
        let mut injs = Vec::new();
        let mut projs = Vec::new();
        let mut offset = 0;
        for part in parts {
            let k = part.orders.len();
            let mut inj = vec![0i64; total * k];
            let mut proj = vec![0i64; k * total];
            for i in 0..k {
                inj[(offset + i) * k + i] = 1 % sum.orders[offset + i];
                proj[i * total + offset + i] = 1 % part.orders[i];
            }
            injs.push(GrpMor { src: part.clone(), dst: sum.clone(), a: inj });
            projs.push(GrpMor { src: sum.clone(), dst: part.clone(), a: proj });
            offset += k;
        }
        (sum, injs, projs)
    }

    fn subobjects(&self, o: &AbGroup) -> Result<Vec<(AbGroup, GrpMor)>> {
        if o.card() > self.n {
            return Err(Error::BoundExceeded(format!("group of order {}", o.card())));
        }
        // per-prime subgroup lattices, combined by direct sum
        let mut per_prime: Vec<Vec<Vec<Vec<i64>>>> = Vec::new();
        for &(p, _) in &self.primes {
            let p_elems: Vec<Vec<i64>> = o
                .elements()
                .into_iter()
                .filter(|x| {
                    let ord = o.elem_order(x);
                    ord == 1 || (ord % p == 0 && factorize(ord).len() == 1)
                })
                .collect();
            let mut subs: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
            for mask in 0u32..(1 << p_elems.len()) {
                let gens: Vec<&Vec<i64>> = p_elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e)
                    .collect();
                let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
                set.insert(o.zero_elem());
                let mut frontier = vec![o.zero_elem()];
                while let Some(cur) = frontier.pop() {
                    for g in &gens {
                        let nxt = o.add_elem(&cur, g);
                        if set.insert(nxt.clone()) {
                            frontier.push(nxt);
                        }
                    }
                }
                subs.insert(set.into_iter().collect());
            }
            per_prime.push(subs.into_iter().collect());
        }
        let mut combos: Vec<Vec<Vec<i64>>> = vec![vec![o.zero_elem()]];
        for subs in per_prime {
            let mut next = Vec::new();
            for base in &combos {
                for s in &subs {
                    let mut sums = BTreeSet::new();
                    for a in base {
                        for b in s {
                            sums.insert(o.add_elem(a, b));
                        }
                    }
                    next.push(sums.into_iter().collect::<Vec<_>>());
                }
            }
            combos = next;
        }
        Ok(combos.into_iter().map(|elems| self.subgroup_to_object(o, &elems)).collect())
    }
}
