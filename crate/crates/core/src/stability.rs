//! Slope stability functions on quiver modules: Φ(X) = θ·dim X / ℓ·dim X
//! with exact rational values, the induced torsion and torsion-free classes
//! at a threshold, and the seesaw trichotomy on short exact sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abcat::{Backend, ObjectExpr};
use crate::error::{Error, Result};
use crate::torsion::{expr_label, ClassSpec};
use crate::typea::{Interval, TypeABackend};

/// Exact rational with positive denominator, always reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Rat {
    pub num: i64,
    pub den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rat { num: s * num / g, den: s * den / g }
    }

    pub fn int(n: i64) -> Self {
        Rat { num: n, den: 1 }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// θ and ℓ weights per quiver vertex; ℓ strictly positive so every nonzero
/// object has a well-defined slope.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityFunction {
    pub theta: Vec<i64>,
    pub ell: Vec<i64>,
}

impl StabilityFunction {
    pub fn new(theta: Vec<i64>, ell: Vec<i64>) -> Result<Self> {
        if theta.len() != ell.len() {
            return Err(Error::DimensionMismatch("θ and ℓ weight counts differ".into()));
        }
        if ell.iter().any(|&l| l <= 0) {
            return Err(Error::Precondition("ℓ-weights must be strictly positive".into()));
        }
        Ok(StabilityFunction { theta, ell })
    }

    pub fn phi_dims(&self, dims: &[i64]) -> Option<Rat> {
        assert_eq!(dims.len(), self.theta.len());
        let num: i64 = dims.iter().zip(&self.theta).map(|(&d, &t)| d * t).sum();
        let den: i64 = dims.iter().zip(&self.ell).map(|(&d, &l)| d * l).sum();
        (den != 0).then(|| Rat::new(num, den))
    }

    /// Deterministic family of slope functions for property runs.
    pub fn sample(count: usize, n: usize, seed: u64) -> Vec<StabilityFunction> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let theta = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let ell = (0..n).map(|_| rng.gen_range(1..=3)).collect();
                StabilityFunction { theta, ell }
            })
            .collect()
    }

    /// Like [`Self::sample`] but with nonnegative θ, so all slopes are ≥ 0.
    pub fn sample_positive(count: usize, n: usize, seed: u64) -> Vec<StabilityFunction> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let theta = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                let ell = (0..n).map(|_| rng.gen_range(1..=3)).collect();
                StabilityFunction { theta, ell }
            })
            .collect()
    }
}

pub fn dim_vec(bk: &TypeABackend, x: &ObjectExpr) -> Vec<i64> {
    let mut dims = vec![0i64; bk.n];
    for &id in x.summands() {
        let iv = bk.interval(id);
        for v in iv.a..=iv.b {
            dims[v - 1] += 1;
        }
    }
    dims
}

pub fn phi(bk: &TypeABackend, sf: &StabilityFunction, x: &ObjectExpr) -> Option<Rat> {
    sf.phi_dims(&dim_vec(bk, x))
}

fn phi_interval(bk: &TypeABackend, sf: &StabilityFunction, iv: Interval) -> Rat {
    phi(bk, sf, &ObjectExpr::single(bk.id_of(iv))).expect("interval is nonzero")
}

/// The classes at threshold p: every quotient of a T-member has slope ≥ p
/// (> p when strict), every subobject of an F-member has slope < p (≤ p when
/// strict). Membership is decided per indecomposable via the interval
/// quotient and subobject lists.
pub fn stability_classes(
    bk: &TypeABackend,
    sf: &StabilityFunction,
    p: Rat,
    strict: bool,
) -> (ClassSpec, ClassSpec) {
    let mut t = Vec::new();
    let mut f = Vec::new();
    for id in bk.indecomposables() {
        let iv = bk.interval(id);
        let quots_ok = bk.interval_quots(iv).into_iter().all(|q| {
            let v = phi_interval(bk, sf, q);
            if strict {
                v > p
            } else {
                v >= p
            }
        });
        if quots_ok {
            t.push(id);
        }
        let subs_ok = bk.interval_subs(iv).into_iter().all(|s| {
            let v = phi_interval(bk, sf, s);
            if strict {
                v <= p
            } else {
                v < p
            }
        });
        if subs_ok {
            f.push(id);
        }
    }
    (ClassSpec::new(t), ClassSpec::new(f))
}

#[derive(Debug, Serialize)]
pub struct SeesawReport {
    pub sequences_checked: usize,
}

/// On every short exact sequence 0 → A → X → C → 0 with A, C nonzero drawn
/// from the subobject lattice of each universe object, exactly one of
/// Φ(A) < Φ(X) < Φ(C), all equal, or Φ(A) > Φ(X) > Φ(C) holds.
pub fn seesaw_check(
    bk: &TypeABackend,
    sf: &StabilityFunction,
    universe: &[ObjectExpr],
) -> Result<SeesawReport> {
    let mut checked = 0usize;
    for x in universe {
        let xo = bk.realize(x);
        if xo.is_zero() {
            continue;
        }
        let vx = phi(bk, sf, x).unwrap();
        for (sub, mono) in bk.subobjects(&xo)? {
            if sub.is_zero() {
                continue;
            }
            let (quot, _) = bk.cokernel(&mono);
            if quot.is_zero() {
                continue;
            }
            let va = phi(bk, sf, &bk.decompose(&sub)).unwrap();
            let vc = phi(bk, sf, &bk.decompose(&quot)).unwrap();
            let ok = (va < vx && vx < vc) || (va == vx && vx == vc) || (va > vx && vx > vc);
            if !ok {
                return Err(Error::TheoremViolation(format!(
                    "seesaw failed on {}: Φ(sub) = {}, Φ(X) = {}, Φ(quot) = {}",
                    expr_label(bk, x),
                    va,
                    vx,
                    vc
                )));
            }
            checked += 1;
        }
    }
    Ok(SeesawReport { sequences_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pretor::{is_pretorsion, no_namer};

    fn ka2() -> TypeABackend {
        TypeABackend::new(2, 2).unwrap()
    }

    fn cls(bk: &TypeABackend, names: &[&str]) -> ClassSpec {
        ClassSpec::new(names.iter().map(|s| bk.parse_ind(s).unwrap()).collect())
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::int(1) > Rat::new(1, 2));
        assert_eq!(Rat::new(3, 6).to_string(), "1/2");
    }

    #[test]
    fn slope_values() {
        let bk = ka2();
        let sf = StabilityFunction::new(vec![1, 0], vec![1, 1]).unwrap();
        let one = |s: &str| ObjectExpr::single(bk.parse_ind(s).unwrap());
        assert_eq!(phi(&bk, &sf, &one("1")), Some(Rat::int(1)));
        assert_eq!(phi(&bk, &sf, &one("2")), Some(Rat::int(0)));
        assert_eq!(phi(&bk, &sf, &one("12")), Some(Rat::new(1, 2)));
        assert_eq!(phi(&bk, &sf, &ObjectExpr::zero()), None);
        assert!(StabilityFunction::new(vec![1], vec![0]).is_err());
    }

    #[test]
    fn classes_at_thresholds() {
        let bk = ka2();
        let sf = StabilityFunction::new(vec![1, 0], vec![1, 1]).unwrap();
        let (t1, f1) = stability_classes(&bk, &sf, Rat::int(1), false);
        assert_eq!(t1, cls(&bk, &["1"]));
        assert_eq!(f1, cls(&bk, &["2", "12"]));
        let (th, fh) = stability_classes(&bk, &sf, Rat::new(1, 2), false);
        assert_eq!(th, cls(&bk, &["1", "12"]));
        assert_eq!(fh, cls(&bk, &["2"]));
        // constant slope puts everything in T and nothing in F
        let c = StabilityFunction::new(vec![1, 1], vec![1, 1]).unwrap();
        let (tc, fc) = stability_classes(&bk, &c, Rat::int(1), false);
        assert_eq!(tc, ClassSpec::everything(&bk));
        assert_eq!(fc, ClassSpec::zero());
    }

    #[test]
    fn threshold_pair_is_pretorsion() {
        let bk = ka2();
        let universe = bk.universe();
        let sf = StabilityFunction::new(vec![1, 0], vec![1, 1]).unwrap();
        // T at 1/2 against F below 1: trivial class add{12}
        let t = stability_classes(&bk, &sf, Rat::new(1, 2), false).0;
        let f = stability_classes(&bk, &sf, Rat::int(1), false).1;
        assert_eq!(t.intersect(&f), cls(&bk, &["12"]));
        let rep = is_pretorsion(&bk, &t, &f, &universe, &no_namer::<TypeABackend>, true);
        assert!(rep.ok, "{:?} {:?}", rep.hom_failures, rep.seq_failures);
    }

    #[test]
    fn seesaw_holds_on_samples() {
        let bk = TypeABackend::new(3, 2).unwrap();
        let universe = bk.universe();
        for sf in StabilityFunction::sample(4, 3, 11) {
            let rep = seesaw_check(&bk, &sf, &universe).unwrap();
            assert!(rep.sequences_checked > 0);
        }
    }
}
