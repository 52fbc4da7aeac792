use proptest::prelude::*;
use quasitile::golden::{GoldenInt, TAU};
use quasitile::lattice6::*;

fn d6_point() -> impl Strategy<Value = LatticePoint6> {
    prop::array::uniform6(-6i64..=6).prop_map(|mut v| {
        if v.iter().sum::<i64>() % 2 != 0 {
            v[0] += 1;
        }
        LatticePoint6(v)
    })
}

/// Float reference for `B`, written out from its defining formula.
fn b_ref() -> [[f64; 6]; 6] {
    let t = TAU;
    let rows = [
        [0.0, 1.0, -1.0, -t, 0.0, t],
        [1.0, t, t, 0.0, -1.0, 0.0],
        [t, 0.0, 0.0, 1.0, t, 1.0],
        [0.0, t, -t, 1.0, 0.0, -1.0],
        [t, -1.0, -1.0, 0.0, -t, 0.0],
        [-1.0, 0.0, 0.0, t, -1.0, t],
    ];
    let s = (1.0 / (2.0 * (t + 2.0))).sqrt();
    rows.map(|r| r.map(|x| x * s))
}

#[test]
fn exact_matrix_matches_float_reference() {
    let b = b_ref();
    let f = projection_f64();
    for i in 0..6 {
        for j in 0..6 {
            assert!((b[i][j] - f[i][j]).abs() < 1e-12);
        }
    }
}

#[test]
fn gram_is_nu_squared_identity() {
    let g = gram_scaled();
    for (i, row) in g.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(x, if i == j { NU_SQ } else { GoldenInt::ZERO });
        }
    }
    assert!(verify_projection().passed);
    assert!(verify_inflation_reduction().passed);
}

#[test]
fn inflation_reduction_float_oracle() {
    // B·(I_D6)·Bᵀ in floating point
    let b = b_ref();
    let i = INFLATION_DOUBLED.map(|r| r.map(|x| x as f64 / 2.0));
    for r in 0..6 {
        for c in 0..6 {
            let mut s = 0.0;
            for k in 0..6 {
                for l in 0..6 {
                    s += b[r][k] * i[k][l] * b[c][l];
                }
            }
            let want = match (r == c, r < 3) {
                (false, _) => 0.0,
                (true, true) => TAU,
                (true, false) => -1.0 / TAU,
            };
            assert!((s - want).abs() < 1e-12, "({r},{c}) = {s}");
        }
    }
}

proptest! {
    #[test]
    fn projection_preserves_norm(v in d6_point()) {
        // |v|² = |v∥|² + |v⊥|², scaled by ν²
        let total = project_par(&v).norm_sq_scaled() + project_perp(&v).norm_sq_scaled();
        prop_assert_eq!(total, NU_SQ * GoldenInt::from(v.norm_sq()));
    }

    #[test]
    fn inflation_scales_projections(v in d6_point()) {
        let w = inflate6(&v).unwrap();
        prop_assert!(w.is_d6());
        prop_assert_eq!(project_par(&w), project_par(&v).scale(GoldenInt::TAU));
        prop_assert_eq!(project_perp(&w), project_perp(&v).scale(GoldenInt::TAU_BAR));
        prop_assert_eq!(deflate6(&w).unwrap(), v);
        prop_assert_eq!(inflate6(&deflate6(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn module_coords_reconstruct(v in d6_point()) {
        let p = project_par(&v);
        let c = module_coords(&p).unwrap();
        let basis = module_basis();
        let back = basis[0].scale(c[0]) + basis[1].scale(c[1]) + basis[2].scale(c[2]);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn group_preserves_d6_and_commutes(v in d6_point(), k in 0usize..120) {
        let g = icosahedral_group()[k];
        let w = g.apply(&v);
        prop_assert!(w.is_d6());
        prop_assert_eq!(w.norm_sq(), v.norm_sq());
        prop_assert_eq!(project_par(&w).norm_sq_scaled(), project_par(&v).norm_sq_scaled());
        prop_assert_eq!(project_perp(&w).norm_sq_scaled(), project_perp(&v).norm_sq_scaled());
    }
}

#[test]
fn odd_points_are_rejected() {
    assert!(matches!(inflate6(&LatticePoint6::unit(0)), Err(LatticeError::NotD6(_))));
}

#[test]
fn group_is_closed() {
    let g = icosahedral_group();
    assert_eq!(g.len(), 120);
    let set: std::collections::BTreeSet<_> = g.iter().map(|x| (x.perm, x.signs)).collect();
    for a in g {
        assert!(set.contains(&(a.inverse().perm, a.inverse().signs)));
        for b in g.iter().step_by(7) {
            let c = a.compose(b);
            assert!(set.contains(&(c.perm, c.signs)));
        }
    }
    // element orders of the full icosahedral group
    let mut orders: Vec<usize> = g.iter().map(|x| x.order()).collect();
    orders.sort_unstable();
    orders.dedup();
    assert_eq!(orders, vec![1, 2, 3, 5, 6, 10]);
}

#[test]
fn axis_classification() {
    // eᵢ∥ is a 5-fold axis; root projections are 2-fold axes
    for i in 0..6 {
        assert_eq!(axis_fold(&project_par(&LatticePoint6::unit(i))), Some(5));
    }
    for r in roots() {
        assert_eq!(axis_fold(&project_par(r)), Some(2));
    }
    // ten 3-fold axes, two rotations of order 3 about each
    let count3 = icosahedral_group()
        .iter()
        .filter(|g| g.order() == 3)
        .count();
    assert_eq!(count3, 20);
}
