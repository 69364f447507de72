use heun_atlas::belyi::{builtin_catalog, measured_fibers, mobius_equivalent, verify_covering};
use heun_atlas::charcount::{class_size_big, frobenius_count, mn_character};
use heun_atlas::exactalg::{poly_gcd, rat, squarefree_decomposition, Field, FieldElement, Poly, RatFun};
use heun_atlas::monodromy::count_triples;
use heun_atlas::patterns::{defect_of, enumerate_all, hurwitz_defect, partitions, BranchingPattern, Fiber};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|cs| Poly::from_ints(&cs))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn partition_of(n: u32) -> impl Strategy<Value = Vec<u32>> {
    let all = partitions(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn triple_of_degree(lo: u32, hi: u32) -> impl Strategy<Value = [Vec<u32>; 3]> {
    (lo..=hi).prop_flat_map(|n| (partition_of(n), partition_of(n), partition_of(n)).prop_map(|(a, b, c)| [a, b, c]))
}

fn marked_fiber(n: u32) -> impl Strategy<Value = Fiber> {
    (partition_of(n), any::<prop::sample::Index>(), any::<bool>()).prop_map(|(parts, idx, marked)| {
        let mark = marked.then(|| parts[idx.index(parts.len())]);
        Fiber::new(mark, parts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(5)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Poly::one(Field::Rational)), a.clone());
    }

    #[test]
    fn division_reconstructs(a in poly_strategy(7), d in nonzero_poly(4)) {
        let (q, r) = a.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.deg() < d.deg());
    }

    #[test]
    fn gcd_divides_and_absorbs_common_factor(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = poly_gcd(&ac, &bc).unwrap();
        prop_assert!(ac.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(bc.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&c.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn squarefree_decomposition_reassembles(a in nonzero_poly(3), b in nonzero_poly(2), c in nonzero_poly(2)) {
        let p = a.mul(&b.pow(2)).mul(&c.pow(3));
        let sq = squarefree_decomposition(&p).unwrap();
        prop_assert_eq!(sq.reassemble(Field::Rational), p);
        for (_, f) in &sq.factors {
            prop_assert!(poly_gcd(f, &f.derivative()).unwrap().is_constant());
        }
    }

    #[test]
    fn gaussian_field_is_a_field(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in 1i64..=9) {
        let x = FieldElement::new(Field::GAUSSIAN, rat(a, d), rat(b, 1)).unwrap();
        let y = FieldElement::new(Field::GAUSSIAN, rat(c, 1), rat(1, d)).unwrap();
        prop_assert_eq!(&(&x * &y) / &y, x.clone());
        prop_assert_eq!((&x * &x.conj()).as_rational().cloned(), Some(x.norm()));
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn pattern_text_round_trips(n in 2u32..=12, seeds in any::<[prop::sample::Index; 3]>()) {
        let fibers = {
            let all = partitions(n);
            seeds.map(|i| {
                let parts = all[i.index(all.len())].clone();
                let mark = (i.index(3) == 0).then(|| parts[0]);
                Fiber::new(mark, parts)
            })
        };
        let p = BranchingPattern::new(fibers).unwrap();
        let back = BranchingPattern::parse(&p.to_text()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn fiber_text_round_trips(f in (1u32..=10).prop_flat_map(marked_fiber)) {
        prop_assert_eq!(Fiber::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn defect_is_euler_characteristic_gap(parts in triple_of_degree(1, 10)) {
        let p = BranchingPattern::from_partitions(parts.clone()).unwrap();
        let n = p.degree() as i64;
        let points: i64 = parts.iter().map(|f| f.len() as i64).sum();
        prop_assert_eq!(hurwitz_defect(&p), points - n - 2);
        prop_assert_eq!(defect_of(&parts), hurwitz_defect(&p));
    }

    #[test]
    fn triple_count_matches_character_formula(parts in triple_of_degree(2, 7)) {
        let c = count_triples(&parts).unwrap();
        let f = frobenius_count(&parts[0], &parts[1], &parts[2]).unwrap();
        prop_assert_eq!(BigInt::from(c.raw_count), BigInt::from(f));
    }

    #[test]
    fn characters_are_orthonormal(n in 1u32..=8, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all = partitions(n);
        let (l1, l2) = (&all[i.index(all.len())], &all[j.index(all.len())]);
        let mut sum = BigInt::from(0);
        for mu in &all {
            let size = BigInt::from(class_size_big(mu));
            sum += size * mn_character(l1, mu).unwrap() * mn_character(l2, mu).unwrap();
        }
        let order: BigInt = (1..=n).map(BigInt::from).product();
        prop_assert_eq!(sum, if l1 == l2 { order } else { BigInt::from(0) });
    }
}

fn mobius(a: i64, b: i64, c: i64, d: i64) -> RatFun {
    RatFun::new(Poly::from_ints(&[b, a]), Poly::from_ints(&[d, c])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coverings_survive_reparametrization(idx in any::<prop::sample::Index>(), m in (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)) {
        let (a, b, c, d) = m;
        prop_assume!(a * d - b * c != 0);
        let cat: Vec<_> = builtin_catalog().into_iter().filter(|r| r.field == Field::Rational && r.degree <= 8).collect();
        let rec = &cat[idx.index(cat.len())];
        let moved = rec.map.compose(&mobius(a, b, c, d)).unwrap();
        prop_assert_eq!(moved.degree(), rec.map.degree());
        prop_assert_eq!(measured_fibers(&moved).unwrap(), measured_fibers(&rec.map).unwrap());
        prop_assert!(verify_covering(&moved, &rec.pattern).is_ok());
        if rec.degree <= 4 {
            prop_assert!(mobius_equivalent(&rec.map, &moved).unwrap());
        }
    }
}

#[test]
fn enumerated_patterns_have_zero_defect() {
    for (_, p) in enumerate_all() {
        assert_eq!(hurwitz_defect(&p), 0, "{p}");
    }
}
