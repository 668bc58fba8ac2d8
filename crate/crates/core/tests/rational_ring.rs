use milnor_core::arith::{Field, LocalFieldCtx, PolyRing};
use milnor_core::rational_ring::{base_change_roundtrip, delta_kernel_check, RationalRing, ResidueValue};
use milnor_core::symbols::MilnorClass;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_text(c: &[i64]) -> String {
    let mut s = format!("{}", c[0]);
    for (i, a) in c.iter().enumerate().skip(1) {
        s += &format!(" + ({a})*t^{i}");
    }
    s
}

/// Unit content: some coefficient prime to p.
fn content_is_unit(c: &[i64], p: i64) -> bool {
    c.iter().any(|a| a.rem_euclid(p) != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_is_multiplicative(p in prop::sample::select(vec![3i64, 5]), f in prop::collection::vec(-30i64..30, 1..4), g in prop::collection::vec(-30i64..30, 1..4)) {
        let ctx = LocalFieldCtx::padic(p as u64, 6).unwrap();
        let r = RationalRing::new(&ctx, 1).unwrap();
        let ps = r.polys();
        let (a, b) = (ps.parse(&poly_text(&f)).unwrap(), ps.parse(&poly_text(&g)).unwrap());
        prop_assert_eq!(ps.s_member(&a), content_is_unit(&f, p));
        prop_assert_eq!(ps.s_member(&ps.mul(&a, &b)), ps.s_member(&a) && ps.s_member(&b));
    }

    #[test]
    fn residue_map_is_a_ring_map(f in prop::collection::vec(-30i64..30, 1..4), g in prop::collection::vec(-30i64..30, 1..4), d in prop::collection::vec(-30i64..30, 1..3)) {
        prop_assume!(content_is_unit(&d, 5));
        let ctx = LocalFieldCtx::padic(5, 6).unwrap();
        let r = RationalRing::new(&ctx, 1).unwrap();
        let den = poly_text(&d);
        let x = r.parse(&format!("({})/({den})", poly_text(&f))).unwrap();
        let y = r.parse(&poly_text(&g)).unwrap();
        let res = |z| match r.residue_map(z).unwrap() {
            ResidueValue::Univariate(v) => v,
            ResidueValue::Bivariate(_) => unreachable!(),
        };
        let k = milnor_core::bass_tate::Fqt::new(ctx.residue_field().clone());
        let (xy, xpy) = (r.mul(&x, &y), r.add(&x, &y));
        prop_assert!(k.equal(&res(&xy), &k.mul(&res(&x), &res(&y))));
        prop_assert!(k.equal(&res(&xpy), &k.add(&res(&x), &res(&y))));
        // the residue of a polynomial is its coefficientwise reduction
        let direct = k.from_poly(&k.poly_ring().from_coeffs(g.iter().map(|&a| ctx.residue_field().from_int(a)).collect()));
        prop_assert!(k.equal(&res(&y), &direct));
    }
}

#[test]
fn delta_kernel_on_constants_and_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ctx in [LocalFieldCtx::padic(3, 5).unwrap(), LocalFieldCtx::laurent(3, 5).unwrap()] {
        let r = RationalRing::new(&ctx, 1).unwrap();
        for _ in 0..5 {
            let (u, v) = (ctx.random_unit(&mut rng), ctx.random_unit(&mut rng));
            let s = MilnorClass::symbol(&r, vec![r.constant(&u), r.constant(&v)]).unwrap();
            assert!(delta_kernel_check(&r, &s).unwrap());
        }
        // {t + 3, 2}: t + 3 is a unit and 2 has residue ≠ 1
        let s = MilnorClass::symbol(&r, vec![r.parse("t + 3").unwrap(), r.parse("2").unwrap()]).unwrap();
        assert!(!delta_kernel_check(&r, &s).unwrap());
    }
}

#[test]
fn base_change_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let z3 = LocalFieldCtx::padic(3, 4).unwrap();
    let x2_1 = PolyRing::new(z3.clone()).from_coeffs(vec![z3.one(), z3.zero(), z3.one()]);
    assert!(base_change_roundtrip(&z3, &x2_1, 5, &mut rng).unwrap());
    let f2 = LocalFieldCtx::laurent(2, 4).unwrap();
    let x2_x_1 = PolyRing::new(f2.clone()).from_coeffs(vec![f2.one(); 3]);
    assert!(base_change_roundtrip(&f2, &x2_x_1, 5, &mut rng).unwrap());
}
