use fibersym_core::exactla::{rat, MatrixQ};
use fibersym_core::surfaces::SurfaceModel;
use fibersym_core::wang::{primitive_betti, EtaClass, FiberedFourManifold};
use proptest::prelude::*;

/// Random unimodular-ish integer monodromies on the torus: products of
/// elementary matrices, optionally with a Jordan-type perturbation.
fn monodromy() -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..8).prop_map(|ops| {
        let mut m = MatrixQ::identity(5);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let mut e = MatrixQ::identity(5);
            e.set(i, j, rat(k));
            m = &m * &e;
        }
        m
    })
}

fn invertible() -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(-2i64..=2, 25).prop_filter_map("singular", |v| {
        let rows: Vec<Vec<i64>> = v.chunks(5).map(<[i64]>::to_vec).collect();
        let p = &MatrixQ::from_i64(&rows) + &MatrixQ::identity(5);
        (p.determinant().unwrap() != rat(0)).then_some(p)
    })
}

fn manifold(f: MatrixQ) -> FiberedFourManifold {
    FiberedFourManifold::new(SurfaceModel::torus4(), f).unwrap()
}

proptest! {
    #[test]
    fn chi_and_gap(f in monodromy()) {
        let r = primitive_betti(&manifold(f), None).unwrap();
        prop_assert_eq!(r.chi_p, 2 - r.b[1] as i64 + r.b[3] as i64);
        prop_assert_eq!(r.p_plus[2] - r.p_minus[2], 1);
        prop_assert_eq!((r.b[0], r.b[4], r.p_plus[0], r.p_minus[0]), (1, 0, 1, 0));
        prop_assert_eq!((r.p_plus[1], r.p_minus[1]), (r.b[1] as i64, r.b[3] as i64));
    }

    #[test]
    fn eta_cases_keep_the_gap(f in monodromy(), seed in prop::collection::vec(-1i64..=1, 5)) {
        let m = manifold(f);
        let base = primitive_betti(&m, None).unwrap();
        let k = base.jordan_sizes.len();
        let eta = EtaClass::from_i64(&seed[..k]);
        let r = primitive_betti(&m, Some(&eta)).unwrap();
        prop_assert_eq!(r.p_plus[2] - r.p_minus[2], 1);
        let s = base.jordan_sizes.iter().filter(|&&n| n == 1).count();
        prop_assert_eq!(k - s, base.nu2);
        if seed[s..k].iter().all(|&x| x == 0) {
            prop_assert_eq!(r, base);
        } else {
            prop_assert_eq!(r.p_plus[2], base.p_plus[2] - 1);
        }
    }

    #[test]
    fn conjugation_invariance(f in monodromy(), p in invertible()) {
        let a = primitive_betti(&manifold(f.clone()), None).unwrap();
        let b = primitive_betti(&manifold(f.conjugate_by(&p).unwrap()), None).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transpose_invariance(f in monodromy()) {
        let a = primitive_betti(&manifold(f.clone()), None).unwrap();
        let b = primitive_betti(&manifold(f.transpose()), None).unwrap();
        prop_assert_eq!(a, b);
    }
}
