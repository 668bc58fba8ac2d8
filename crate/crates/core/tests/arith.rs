use milnor_core::arith::factor::{is_irreducible, poly_factor, roots};
use milnor_core::arith::hensel::principal_root;
use milnor_core::arith::padic::PadicNumber;
use milnor_core::arith::{Field, FiniteField, LocalFieldCtx, Poly, PolyRing, SimpleExtension};
use proptest::prelude::*;

fn orders() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_field_axioms(q in orders(), a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let f = FiniteField::of_order(q).unwrap();
        let (a, b, c) = (f.from_code(a % q).unwrap(), f.from_code(b % q).unwrap(), f.from_code(c % q).unwrap());
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if !a.is_zero() {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            // Lagrange: a^(q-1) = 1
            prop_assert!(f.is_one(&f.pow(&a, (q - 1) as u128)));
        }
        // Frobenius is additive
        let p = f.p() as u128;
        prop_assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
    }

    #[test]
    fn factorization_multiplies_back(q in prop::sample::select(vec![2u64, 3, 4, 5, 9]), codes in prop::collection::vec(0u64..100, 2..8)) {
        let f = FiniteField::of_order(q).unwrap();
        let ring = PolyRing::new(f.clone());
        let mut c: Vec<_> = codes.iter().map(|&x| f.from_code(x % q).unwrap()).collect();
        c.push(f.one());
        let g = ring.from_coeffs(c);
        let fac = poly_factor(&ring, &g).unwrap();
        let mut prod = ring.constant(fac.unit.clone());
        for (h, m) in &fac.factors {
            prop_assert!(is_irreducible(&ring, h));
            prop_assert!(ring.is_monic(h));
            prod = ring.mul(&prod, &ring.pow(h, *m as u64));
        }
        prop_assert!(ring.equal(&prod, &g));
        // roots agree with brute-force evaluation
        let brute: Vec<_> = f.elements().filter(|x| ring.eval(&g, x).is_zero()).collect();
        let mut found = roots(&ring, &g);
        found.sort_by_key(|x| x.code());
        let mut brute = brute;
        brute.sort_by_key(|x| x.code());
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn padic_matches_integers(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in -5000i64..5000, b in -5000i64..5000) {
        let n = 6;
        let m = (p as i128).pow(n);
        let x = PadicNumber::from_i64(p, n, a);
        let y = PadicNumber::from_i64(p, n, b);
        let modm = |v: i128| v.rem_euclid(m) as u64;
        prop_assert_eq!(x.add(&y).mod_pk(n), Some(modm(a as i128 + b as i128)));
        prop_assert_eq!(x.mul(&y).mod_pk(n), Some(modm(a as i128 * b as i128)));
        prop_assert_eq!(x.sub(&y).mod_pk(n), Some(modm(a as i128 - b as i128)));
        if a != 0 {
            let v = (0..).find(|k| a % (p as i64).pow(k + 1) != 0).unwrap() as i64;
            prop_assert_eq!(x.valuation(), Some(v));
        }
    }

    #[test]
    fn principal_roots(p in prop::sample::select(vec![3u64, 5, 7]), k in 2u64..6, a in 1i64..200) {
        prop_assume!(k % p != 0);
        let ctx = LocalFieldCtx::padic(p, 8).unwrap();
        let u = ctx.add(&ctx.one(), &ctx.mul(&ctx.from_int(p as i64), &ctx.from_int(a)));
        let r = principal_root(&ctx, &u, k, 8).unwrap();
        prop_assert!(ctx.equal(&ctx.pow(&r, k as u128), &u));
    }
}

#[test]
fn extension_norm_is_product_of_conjugates() {
    // F_4 = F_2[X]/(X² + X + 1): N(a) = a · a^2
    let f = FiniteField::new(2, 1).unwrap();
    let ring = PolyRing::new(f.clone());
    let pi = ring.from_coeffs(vec![f.one(), f.one(), f.one()]);
    let ext = SimpleExtension::new(f.clone(), pi);
    for code in 1..4u64 {
        let bits: Vec<_> = (0..2).map(|i| f.from_int(((code >> i) & 1) as i64)).collect();
        let a = ext.reduce(&ring.from_coeffs(bits));
        let conj = ext.pow(&a, 2);
        let prod = ext.mul(&a, &conj);
        assert_eq!(ext.as_base(&prod).unwrap(), ext.norm(&a));
    }
}

#[test]
fn resultant_matches_norm() {
    let f = FiniteField::new(5, 1).unwrap();
    let ring = PolyRing::new(f.clone());
    let pi = ring.from_coeffs(vec![f.from_int(2), f.zero(), f.one()]);
    let ext = SimpleExtension::new(f.clone(), pi.clone());
    let g: Poly<_> = ring.from_coeffs(vec![f.from_int(1), f.from_int(3)]);
    assert_eq!(ring.resultant(&pi, &g), ext.norm(&ext.reduce(&g)));
}
