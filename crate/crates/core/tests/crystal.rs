use enright::crystal::*;
use enright::qq::RatFunc;
use enright::rep::*;
use proptest::prelude::*;

fn slot(c: usize, tag: Tag, k: u64) -> Element {
    Element::basis(Slot::new(c, tag, k))
}

fn q(k: i64) -> RatFunc {
    RatFunc::q_pow(k)
}

fn test_shapes() -> Vec<ModuleShape> {
    let mut out = Vec::new();
    for r in -5..=3 {
        out.push(ModuleShape::verma(r));
    }
    for n in 0..=3 {
        out.push(ModuleShape::t(n));
    }
    out.push("M(0) + T(2)".parse().unwrap());
    out.push("M(1) + T(1) + M(-3)".parse().unwrap());
    out
}

#[test]
fn dvr_reduce_examples() {
    let shape: ModuleShape = "M(0) + M(0)".parse().unwrap();
    let x = slot(0, Tag::M, 0);
    let y = slot(1, Tag::M, 0);
    assert_eq!(dvr_reduce(&[x.scale(&q(1)), x.clone()], &shape).unwrap(), vec![x.clone()]);
    let r = dvr_reduce(&[x.add(&y.scale(&q(1))), y.clone()], &shape).unwrap();
    let lat = |gens: &[Element]| Lattice::from_weight_generators(&shape, 0, |_, s| gens.iter().map(|g| g.coords(s)).collect(), vec![Tail::Zero; 2]);
    assert!(lat(&r).equals(&lat(&[x.clone(), y.clone()])).unwrap());
    let gens = [x.scale(&q(-1)).add(&y), x.scale(&q(1))];
    let r = dvr_reduce(&gens, &shape).unwrap();
    let l = lat(&r);
    assert!(l.equals(&lat(&gens)).unwrap());
    assert!(!l.contains(&x).unwrap());
    // no small A-combination reaches x
    let small: Vec<RatFunc> = (0..3).flat_map(|j| (-2..=2).map(move |c| RatFunc::monomial(c.into(), j))).collect();
    for a in &small {
        for b in &small {
            assert_ne!(gens[0].scale(a).add(&gens[1].scale(b)), x);
        }
    }
    assert!(matches!(dvr_reduce(&[x, slot(0, Tag::M, 1)], &shape), Err(CrystalError::MixedWeights)));
}

#[test]
fn standard_membership() {
    let shape = ModuleShape::verma(-4);
    let l = Lattice::standard(&shape, 25);
    for k in [0, 3, 25, 40] {
        assert!(l.contains(&slot(0, Tag::M, k)).unwrap());
        assert!(!l.contains(&slot(0, Tag::M, k).scale(&q(-1))).unwrap());
    }
}

#[test]
fn standard_bases_pass() {
    for shape in test_shapes() {
        let cb = CrystalBasis::standard(&shape, 25);
        let report = verify_crystal_basis(&cb).unwrap();
        assert!(report.pass(), "{shape}: {report:?}");
        assert!(!report.lattice.window_only);
    }
    for n in 0..4 {
        let cb = CrystalBasis::standard(&ModuleShape::findim(n), 25);
        let report = verify_crystal_basis(&cb).unwrap();
        assert_eq!(report.lattice.sense, Sense::Integrable);
        assert!(report.pass(), "V({n}): {report:?}");
    }
}

#[test]
fn thin_lattice_fails_e_stability() {
    let shape = ModuleShape::verma(2);
    let l = Lattice::from_laws(&shape, 25, vec![Tail::Monomial(TailLaw::new(-1, 0))]);
    let report = verify_crystal_lattice(&l).unwrap();
    assert!(!report.e_stable.pass);
    assert!(report.f_stable.pass);
    let w = report.e_stable.witness.clone().unwrap();
    assert!(l.contains(&w).unwrap());
    assert!(!l.contains(&kashiwara(KashiwaraDir::ETilde, &w, &shape).unwrap()).unwrap());
    let cb = CrystalBasis::from_diagonal(l);
    assert!(!verify_crystal_basis(&cb).unwrap().pass());
}

#[test]
fn scaling_law() {
    let units = [RatFunc::one(), &RatFunc::one() + &q(1), RatFunc::from_int(2)];
    for shape in [ModuleShape::verma(-2), ModuleShape::t(1), "M(0) + T(2)".parse().unwrap()] {
        let l = Lattice::standard(&shape, 25);
        let thin = Lattice::from_laws(&shape, 25, vec![Tail::Monomial(TailLaw::new(-1, 0)); shape.strings().len()]);
        for base in [&l, &thin] {
            let base_ok = verify_crystal_lattice(base).unwrap().pass();
            for r in -2..=2 {
                for u in &units {
                    let c = &q(r) * u;
                    let s = base.scaled(&c);
                    assert_eq!(verify_crystal_lattice(&s).unwrap().pass(), base_ok);
                    let sub = base.contains_lattice(&s).unwrap();
                    let sup = s.contains_lattice(base).unwrap();
                    assert_eq!((sub, sup), (r >= 0, r <= 0), "r={r}");
                    assert_eq!(base.equals(&s).unwrap(), r == 0);
                }
            }
        }
        let q3 = CrystalBasis::from_diagonal(l.scaled(&q(3)));
        assert!(verify_crystal_basis(&q3).unwrap().pass());
    }
}

#[test]
fn transport_identity_and_scaling() {
    let shape = ModuleShape::verma(1);
    let cb = CrystalBasis::standard(&shape, 25);
    let t = transport_basis(&BqIso::identity(&shape), &cb).unwrap();
    assert!(t.basis.lattice.equals(&cb.lattice).unwrap());
    assert!(t.strong);
    let c = &q(2) * &(&RatFunc::one() + &q(1)).inv().unwrap();
    let iso = BqIso { source: shape.clone(), target: shape.clone(), images: vec![slot(0, Tag::M, 0).scale(&c)] };
    let t = transport_basis(&iso, &cb).unwrap();
    assert!(t.basis.lattice.equals(&cb.lattice.scaled(&c)).unwrap());
    assert!(verify_crystal_basis(&t.basis).unwrap().pass());
}

#[test]
fn transport_on_t_modules() {
    let n = 2;
    let shape = ModuleShape::t(n);
    let cb = CrystalBasis::standard(&shape, 25);
    // adding a multiple of f^(n+1) v to z does not commute with e'
    let shifted = slot(0, Tag::Z, 0).add(&slot(0, Tag::V, n + 1).scale(&(&RatFunc::one() + &q(1))));
    let iso = BqIso { source: shape.clone(), target: shape.clone(), images: vec![slot(0, Tag::V, 0), shifted] };
    assert!(matches!(transport_basis(&iso, &cb), Err(CrystalError::NotAnIsomorphism(_))));
    let u = &RatFunc::one() + &q(1);
    let iso = BqIso {
        source: shape.clone(),
        target: shape.clone(),
        images: vec![slot(0, Tag::V, 0).scale(&u), slot(0, Tag::Z, 0).scale(&u)],
    };
    let t = transport_basis(&iso, &cb).unwrap();
    assert!(t.strong);
    assert!(t.basis.lattice.equals(&cb.lattice).unwrap());
    assert!(verify_crystal_basis(&t.basis).unwrap().pass());
}

fn string_tops(cb: &CrystalBasis) -> Vec<i64> {
    let shape = cb.shape().clone();
    let mut tops: Vec<i64> = cb
        .reps
        .iter()
        .filter(|b| {
            let w = b.weight(&shape).unwrap();
            let e = kashiwara(KashiwaraDir::ETilde, b, &shape).unwrap();
            cb.classify(&e, w + 2).unwrap() == Class::Zero
        })
        .map(|b| b.weight(&shape).unwrap())
        .collect();
    tops.sort();
    tops
}

#[test]
fn mixing_components_keeps_string_data() {
    let shape: ModuleShape = "M(0) + M(0) + T(1)".parse().unwrap();
    let cb = CrystalBasis::standard(&shape, 12);
    let u = &RatFunc::one() + &q(1);
    let images = vec![
        slot(0, Tag::M, 0).add(&slot(1, Tag::M, 0).scale(&q(1))),
        slot(1, Tag::M, 0).scale(&u),
        slot(2, Tag::V, 0),
        slot(2, Tag::Z, 0),
    ];
    let iso = BqIso { source: shape.clone(), target: shape.clone(), images };
    let t = transport_basis(&iso, &cb).unwrap();
    assert!(t.strong);
    let report = verify_crystal_basis(&t.basis).unwrap();
    assert!(report.pass(), "{report:?}");
    assert!(report.lattice.window_only);
    assert_eq!(string_tops(&t.basis), string_tops(&cb));
    assert_eq!(string_tops(&cb), vec![-3, 0, 0, 1]);
    // the standard lattice is kept because the map is unimodular over A
    assert!(t.basis.lattice.equals(&cb.lattice).unwrap());
}

#[test]
fn strong_isomorphism_between_standard_bases() {
    for shape in test_shapes() {
        let cb = CrystalBasis::standard(&shape, 12);
        let t = transport_basis(&BqIso::identity(&shape), &cb).unwrap();
        assert!(t.strong);
        assert_eq!(string_tops(&t.basis), string_tops(&cb));
    }
}

fn verma_quotient(n: u64) -> (Lattice, Lattice, ModuleShape) {
    let ltilde = Lattice::standard(&ModuleShape::verma(n as i64), 25);
    let m_image = Lattice::from_laws(
        &ModuleShape::verma(n as i64),
        25,
        vec![Tail::Monomial(TailLaw::new(0, 0))],
    );
    // slots above n are the image of M(-n-2)
    let cap = m_image.intersect_subspace(
        |w| Ok(ModuleShape::verma(n as i64).weight_slots(w).into_iter().filter(|s| s.k > n).map(Element::basis).collect()),
        vec![Tail::Monomial(TailLaw::new(0, 0))],
    ).unwrap();
    (ltilde, cap, ModuleShape::findim(n))
}

#[test]
fn quotient_examples() {
    for n in [0u64, 2] {
        let (lt, cap, qshape) = verma_quotient(n);
        let ql = quotient_lattice(&lt, &cap, &qshape, |s| {
            if s.k <= n { Element::basis(Slot::new(0, Tag::U, s.k)) } else { Element::zero() }
        })
        .unwrap();
        assert!(ql.equals(&Lattice::standard(&qshape, 0)).unwrap());
        let dims: usize = ql.weights().map(|w| ql.rank_at(w).unwrap()).sum();
        assert_eq!(dims, n as usize + 1);
        assert!(verify_crystal_lattice(&ql).unwrap().pass());
    }
    let shape = ModuleShape::verma(1);
    let l = Lattice::standard(&shape, 10);
    let empty = ModuleShape::new(vec![]);
    let ql = quotient_lattice(&l, &l, &empty, |_| Element::zero()).unwrap();
    assert_eq!(ql.weights().count(), 0);
    let bigger = l.scaled(&q(-1));
    assert!(matches!(quotient_lattice(&l, &bigger, &empty, |_| Element::zero()), Err(CrystalError::NotContained)));
}

#[test]
fn dot_output() {
    let cb = CrystalBasis::standard(&ModuleShape::t(2), 3);
    let dot = to_dot(&cb).unwrap();
    assert!(dot.contains("(0, v, 0, 2)"));
    assert!(dot.contains("(0, z, 0, -4)"));
    assert!(dot.contains("f̃"));
    assert_eq!(dot, to_dot(&cb).unwrap());
}

#[test]
fn tail_intersections_cross_over() {
    let shape = ModuleShape::verma(0);
    let a = Lattice::from_laws(&shape, 5, vec![Tail::Monomial(TailLaw::new(1, -10))]);
    let b = Lattice::standard(&shape, 5);
    let meet = a.intersect(&b).unwrap();
    let join = a.sum(&b).unwrap();
    for k in 0..40u64 {
        let ord = (k as i64 - 10).max(0);
        let x = slot(0, Tag::M, k);
        assert!(meet.contains(&x.scale(&q(ord))).unwrap());
        assert!(!meet.contains(&x.scale(&q(ord - 1))).unwrap());
        let ord = (k as i64 - 10).min(0);
        assert!(join.contains(&x.scale(&q(ord))).unwrap());
        assert!(!join.contains(&x.scale(&q(ord - 1))).unwrap());
    }
}

fn gens_strategy() -> impl Strategy<Value = Vec<(i64, i64, i64, i64)>> {
    prop::collection::vec((-2i64..3, -2i64..3, -3i64..4, -3i64..4), 1..4)
}

fn to_elements(g: &[(i64, i64, i64, i64)]) -> Vec<Element> {
    g.iter()
        .map(|&(a, b, c, d)| {
            slot(0, Tag::M, 0)
                .scale(&RatFunc::laurent_i64(a, &[c, 1]))
                .add(&slot(1, Tag::M, 0).scale(&RatFunc::laurent_i64(b, &[d])))
        })
        .filter(|e| !e.is_zero())
        .collect()
}

proptest! {
    #[test]
    fn dvr_reduce_is_idempotent(g in gens_strategy()) {
        let shape: ModuleShape = "M(0) + M(0)".parse().unwrap();
        let gens = to_elements(&g);
        let once = dvr_reduce(&gens, &shape).unwrap();
        let twice = dvr_reduce(&once, &shape).unwrap();
        let lat = |gens: &[Element]| Lattice::from_weight_generators(&shape, 0, |_, s| gens.iter().map(|x| x.coords(s)).collect(), vec![Tail::Zero; 2]);
        prop_assert!(lat(&once).equals(&lat(&twice)).unwrap());
        prop_assert!(lat(&once).equals(&lat(&gens)).unwrap());
        for x in &gens {
            prop_assert!(lat(&once).contains(x).unwrap());
        }
    }

    #[test]
    fn lattice_equality_is_an_equivalence(g1 in gens_strategy(), g2 in gens_strategy(), g3 in gens_strategy()) {
        let shape: ModuleShape = "M(0) + M(0)".parse().unwrap();
        let lat = |g: &[(i64, i64, i64, i64)]| {
            let gens = to_elements(g);
            Lattice::from_weight_generators(&shape, 0, |_, s| gens.iter().map(|x| x.coords(s)).collect(), vec![Tail::Zero; 2])
        };
        let (a, b, c) = (lat(&g1), lat(&g2), lat(&g3));
        prop_assert!(a.equals(&a).unwrap());
        prop_assert_eq!(a.equals(&b).unwrap(), b.equals(&a).unwrap());
        if a.equals(&b).unwrap() && b.equals(&c).unwrap() {
            prop_assert!(a.equals(&c).unwrap());
        }
        let s = a.sum(&b).unwrap();
        prop_assert!(s.contains_lattice(&a).unwrap() && s.contains_lattice(&b).unwrap());
        let i = a.intersect(&b).unwrap();
        prop_assert!(a.contains_lattice(&i).unwrap() && b.contains_lattice(&i).unwrap());
    }
}
