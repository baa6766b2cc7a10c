//! Exact dense linear algebra over prime fields GF(p).
//!
//! Everything here is plain row reduction on small dense matrices; entries
//! are kept reduced mod p at all times.

use crate::error::{Error, Result};

pub fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0 mod p
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    e: Vec<u32>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.e[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, p: u32) -> Self {
        Mat { rows, cols, p, e: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Mat::zero(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> Self {
        let n = rows.len();
        let mut m = Mat::zero(n, cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.e[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.e.iter_mut().zip(other.e.iter()) {
            *a = (*a + *b) % self.p;
        }
        m
    }

    pub fn neg(&self) -> Mat {
        let mut m = self.clone();
        for a in m.e.iter_mut() {
            *a = (self.p - *a) % self.p;
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Mat {
        let c = c % self.p;
        let mut m = self.clone();
        for a in m.e.iter_mut() {
            *a = (*a as u64 * c as u64 % self.p as u64) as u32;
        }
        m
    }

    /// self * other
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let p = self.p as u64;
        let mut m = Mat::zero(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (m.get(i, j) as u64 + a * other.get(k, j) as u64) % p;
                    m.e[i * other.cols + j] = v as u32;
                }
            }
        }
        m
    }

    /// [self | other] side by side.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// self on top of other.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zero(self.rows + other.rows, self.cols, self.p);
        m.e[..self.rows * self.cols].copy_from_slice(&self.e);
        m.e[self.rows * self.cols..].copy_from_slice(&other.e);
        m
    }

    pub fn submatrix_cols(&self, js: &[usize]) -> Mat {
        let mut m = Mat::zero(self.rows, js.len(), self.p);
        for i in 0..self.rows {
            for (jj, &j) in js.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(piv, j));
                    self.set(r, j, b);
                    self.set(piv, j, a);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = (self.get(r, j) as u64 * inv as u64 % p as u64) as u32;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let v = (self.get(i, j) as u64 + (p - f) as u64 * self.get(r, j) as u64)
                            % p as u64;
                        self.set(i, j, v as u32);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, returned as the columns of a matrix.
    pub fn nullspace(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(self.cols, free.len(), self.p);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc);
                if v != 0 {
                    basis.set(pc, k, self.p - v);
                }
            }
        }
        basis
    }

    /// Solve self * X = b columnwise; None if any column of b is outside the
    /// column space.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref();
        // any pivot in the b-part means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.cols, b.cols, self.p);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }
}

/// A subspace of GF(p)^n given by an rref row basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub p: u32,
    /// rows form the basis, in rref
    pub basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, p: u32) -> Self {
        Subspace { ambient_dim, p, basis: Mat::zero(0, ambient_dim, p) }
    }

    pub fn full(ambient_dim: usize, p: u32) -> Self {
        Subspace { ambient_dim, p, basis: Mat::identity(ambient_dim, p) }
    }

    /// Span of the given row vectors.
    pub fn from_span(rows: &Mat) -> Self {
        let mut m = rows.clone();
        let pivots = m.rref();
        let r = pivots.len();
        let mut basis = Mat::zero(r, rows.cols, rows.p);
        for i in 0..r {
            for j in 0..rows.cols {
                basis.set(i, j, m.get(i, j));
            }
        }
        Subspace { ambient_dim: rows.cols, p: rows.p, basis }
    }

    /// Span of the columns of m.
    pub fn from_columns(m: &Mat) -> Self {
        Self::from_span(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let vm = Mat::from_rows(vec![v.to_vec()], self.ambient_dim, self.p);
        let stacked = self.basis.vstack(&vm);
        stacked.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_span(&self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let p = self.p;
        // rows [a | a] for a in A, [b | 0] for b in B; rref; rows with zero
        // left half have right half spanning A ∩ B
        let a2 = self.basis.hstack(&self.basis);
        let b0 = other.basis.hstack(&Mat::zero(other.basis.rows, n, p));
        let mut m = a2.vstack(&b0);
        m.rref();
        let mut rows = Vec::new();
        for i in 0..m.rows {
            let left_zero = (0..n).all(|j| m.get(i, j) == 0);
            let right = (n..2 * n).map(|j| m.get(i, j)).collect::<Vec<_>>();
            if left_zero && right.iter().any(|&x| x != 0) {
                rows.push(right);
            }
        }
        Ok(Subspace::from_span(&Mat::from_rows(rows, n, p)))
    }

    /// Vectors lifting a basis of ambient/self.
    pub fn quotient_basis(&self) -> Vec<Vec<u32>> {
        // pivots of the rref basis; non-pivot unit vectors complete it
        let mut m = self.basis.clone();
        let pivots = m.rref();
        (0..self.ambient_dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut v = vec![0; self.ambient_dim];
                v[c] = 1;
                v
            })
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} (mod {}) vs {} (mod {})",
                self.ambient_dim, self.p, other.ambient_dim, other.p
            )));
        }
        Ok(())
    }
}

/// All subspaces of GF(p)^d, enumerated as rref row bases.
///
/// Feasible only for small d; callers must bound d themselves.
pub fn all_subspaces(d: usize, p: u32) -> Vec<Subspace> {
    let mut out = Vec::new();
    for r in 0..=d {
        enumerate_rref(d, r, p, &mut out);
    }
    out
}

fn enumerate_rref(d: usize, r: usize, p: u32, out: &mut Vec<Subspace>) {
    // choose pivot columns, then fill free entries
    let mut pivots = Vec::new();
    choose(0, d, r, &mut pivots, &mut |piv: &[usize]| {
        // free entries: row i may have nonzero entries at columns j > piv[i],
        // j not a pivot column
        let mut free_slots = Vec::new();
        for (i, &pc) in piv.iter().enumerate() {
            for j in pc + 1..d {
                if !piv.contains(&j) {
                    free_slots.push((i, j));
                }
            }
        }
        let total = (p as u64).checked_pow(free_slots.len() as u32).unwrap();
        for code in 0..total {
            let mut m = Mat::zero(r, d, p);
            for (i, &pc) in piv.iter().enumerate() {
                m.set(i, pc, 1);
            }
            let mut c = code;
            for &(i, j) in &free_slots {
                m.set(i, j, (c % p as u64) as u32);
                c /= p as u64;
            }
            out.push(Subspace { ambient_dim: d, p, basis: m });
        }
    });
}

fn choose(start: usize, d: usize, k: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == 0 {
        f(acc);
        return;
    }
    for c in start..=d.saturating_sub(k) {
        acc.push(c);
        choose(c + 1, d, k - 1, acc, f);
        acc.pop();
    }
}

/// All subspaces of the ambient containing `base`.
pub fn subspaces_containing(base: &Subspace) -> Vec<Subspace> {
    let n = base.ambient_dim;
    let p = base.p;
    let lift = base.quotient_basis();
    // subspaces of the quotient, lifted and summed with base
    let q = lift.len();
    let mut out = Vec::new();
    for s in all_subspaces(q, p) {
        let mut rows = Vec::new();
        for i in 0..s.dim() {
            let coords = s.basis.row(i);
            let mut v = vec![0u32; n];
            for (k, &c) in coords.iter().enumerate() {
                for j in 0..n {
                    v[j] = ((v[j] as u64 + c as u64 * lift[k][j] as u64) % p as u64) as u32;
                }
            }
            rows.push(v);
        }
        for i in 0..base.dim() {
            rows.push(base.basis.row(i));
        }
        out.push(Subspace::from_span(&Mat::from_rows(rows, n, p)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::zero(2, 2, 2).rank(), 0);
        assert_eq!(Mat::identity(3, 2).rank(), 3);
        let m = Mat::from_rows(vec![vec![1, 1], vec![1, 1]], 2, 2);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Mat::identity(2, 2).nullspace().cols, 0);
        assert_eq!(Mat::zero(2, 2, 2).nullspace().cols, 2);
        let m = Mat::from_rows(vec![vec![1, 1]], 2, 2);
        let ns = m.nullspace();
        assert_eq!(ns.cols, 1);
        assert_eq!(ns.col(0), vec![1, 1]);
    }

    #[test]
    fn subspace_ops_examples() {
        let p = 2;
        let a = Subspace::from_span(&Mat::from_rows(vec![vec![1, 0]], 2, p));
        let b = Subspace::from_span(&Mat::from_rows(vec![vec![1, 1]], 2, p));
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap().dim(), 1);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
    }

    #[test]
    fn solve_roundtrip() {
        let p = 3;
        let a = Mat::from_rows(vec![vec![1, 2], vec![2, 2], vec![0, 1]], 2, p);
        let x = Mat::from_rows(vec![vec![1], vec![2]], 1, p);
        let b = a.mul(&x);
        let sol = a.solve(&b).unwrap();
        assert_eq!(a.mul(&sol), b);
    }

    #[test]
    fn subspace_counts() {
        // GF(2)^2 has 5 subspaces, GF(2)^3 has 16
        assert_eq!(all_subspaces(2, 2).len(), 5);
        assert_eq!(all_subspaces(3, 2).len(), 16);
        // GF(3)^2: 1 + 4 + 1
        assert_eq!(all_subspaces(2, 3).len(), 6);
    }

    #[test]
    fn containing_enumeration() {
        let base = Subspace::from_span(&Mat::from_rows(vec![vec![1, 0, 0]], 3, 2));
        let ups = subspaces_containing(&base);
        assert_eq!(ups.len(), 5); // subspaces of GF(2)^2
        assert!(ups.iter().all(|s| s.contains_subspace(&base)));
    }
}
