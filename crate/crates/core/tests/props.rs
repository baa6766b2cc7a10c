//! Randomized properties of the exact linear algebra layer and the sampled
//! complex generator.

use pretor_core::abcat::Backend;
use pretor_core::chaincx::ChainBackend;
use pretor_core::exactla::Mat;
use pretor_core::stability::Rat;
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

fn mat(max_dim: usize) -> impl Strategy<Value = Mat> {
    (small_prime(), 1..=max_dim, 1..=max_dim).prop_flat_map(|(p, r, c)| {
        proptest::collection::vec(proptest::collection::vec(0..p, c), r)
            .prop_map(move |rows| Mat::from_rows(rows, c, p))
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in mat(5)) {
        prop_assert_eq!(m.rank() + m.nullspace().cols, m.cols);
    }

    #[test]
    fn nullspace_is_annihilated(m in mat(5)) {
        let ns = m.nullspace();
        let prod = m.mul(&ns);
        prop_assert_eq!(prod.rank(), 0);
    }

    #[test]
    fn solve_roundtrip(m in mat(5), seed in proptest::collection::vec(0u32..7, 1..=5)) {
        // b = m·x0 is always consistent and the solution reproduces b
        let p = m.p;
        let x0 = Mat::from_rows(seed.iter().take(m.cols).map(|&v| vec![v % p]).collect(), 1, p);
        if x0.rows == m.cols {
            let b = m.mul(&x0);
            let x = m.solve(&b).expect("consistent system");
            prop_assert_eq!(m.mul(&x), b);
        }
    }

    #[test]
    fn rational_order_is_total_and_consistent(
        a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)
    ) {
        let (x, y, z) = (Rat::new(a.0, a.1), Rat::new(b.0, b.1), Rat::new(c.0, c.1));
        if x < y && y < z {
            prop_assert!(x < z);
        }
        prop_assert_eq!(x == y, a.0 * b.1 == b.0 * a.1);
    }

    #[test]
    fn sampled_complexes_are_valid_and_deterministic(seed in 0u64..1000, count in 1usize..20) {
        let bk = ChainBackend::new(0, 4, 2).unwrap();
        let xs = bk.sample_complexes(count, seed, 3);
        prop_assert_eq!(xs.len(), count);
        let again = bk.sample_complexes(count, seed, 3);
        for (x, y) in xs.iter().zip(&again) {
            prop_assert_eq!(bk.decompose(x), bk.decompose(y));
        }
    }
}
