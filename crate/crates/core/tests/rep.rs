use enright::qq::{q_factorial, q_int, RatFunc};
use enright::rep::*;
use proptest::prelude::*;

fn slot(c: usize, tag: Tag, k: u64) -> Element {
    Element::basis(Slot::new(c, tag, k))
}

fn f_pow(x: &Element, shape: &ModuleShape, p: u64) -> Element {
    let mut y = x.clone();
    for _ in 0..p {
        y = act(AlgebraGen::F, &y, shape).unwrap();
    }
    y
}

/// `e (f^k g)` by peeling one `f` at a time with `e f = f e + [wt]`.
fn brute_e_undivided(shape: &ModuleShape, c: usize, tag: Tag, k: u64) -> Element {
    let comp = shape.components[c];
    if k == 0 {
        return match (comp, tag) {
            (ComponentShape::T(n), Tag::Z) => f_pow(&slot(c, Tag::V, 0), shape, n).scale(&q_factorial(n as i64).inv().unwrap()),
            _ => Element::zero(),
        };
    }
    let below = f_pow(&slot(c, tag, 0), shape, k - 1);
    let wt = comp.slot_weight(tag, k - 1);
    act(AlgebraGen::F, &brute_e_undivided(shape, c, tag, k - 1), shape).unwrap().add(&below.scale(&q_int(wt)))
}

#[test]
fn e_action_matches_commutator_expansion() {
    let shapes = ["M(-4)", "M(3)", "M(0)", "T(0)", "T(2)", "V(5)"];
    for s in shapes {
        let shape: ModuleShape = s.parse().unwrap();
        let comp = shape.components[0];
        for &tag in comp.tags() {
            for k in 0..=comp.max_k().unwrap_or(7) {
                let expect = brute_e_undivided(&shape, 0, tag, k).scale(&q_factorial(k as i64).inv().unwrap());
                let got = act(AlgebraGen::E, &slot(0, tag, k), &shape).unwrap();
                assert_eq!(got, expect, "{s} {tag} k={k}");
            }
        }
    }
}

#[test]
fn documented_action_examples() {
    let v = ModuleShape::verma(-4);
    assert_eq!(act(AlgebraGen::E, &slot(0, Tag::M, 2), &v).unwrap(), Element::term(Slot::new(0, Tag::M, 1), q_int(-5)));
    assert!(act(AlgebraGen::E, &slot(0, Tag::M, 0), &v).unwrap().is_zero());
    let v5 = ModuleShape::verma(5);
    assert_eq!(
        act(AlgebraGen::EPrime, &slot(0, Tag::M, 3), &v5).unwrap(),
        Element::term(Slot::new(0, Tag::M, 2), RatFunc::q_pow(-2))
    );
    let fd = ModuleShape::findim(2);
    assert!(matches!(act(AlgebraGen::EPrime, &slot(0, Tag::U, 1), &fd), Err(RepError::EPrimeOnFinDim(0))));
    assert!(act(AlgebraGen::F, &slot(0, Tag::U, 2), &fd).unwrap().is_zero());
    assert!(matches!(act(AlgebraGen::F, &slot(3, Tag::M, 0), &v), Err(RepError::ComponentOutOfRange(3))));
    assert!(matches!(act(AlgebraGen::F, &slot(0, Tag::Z, 0), &v), Err(RepError::BadSlot(_))));
}

#[test]
fn casimir_on_verma_and_t() {
    let v = ModuleShape::verma(3);
    assert_eq!(act_casimir(&slot(0, Tag::M, 5), &v).unwrap(), slot(0, Tag::M, 5).scale(&casimir_value(3)));
    for n in 0..4u64 {
        let t = ModuleShape::t(n);
        let z = slot(0, Tag::Z, 0);
        let cn = casimir_value(n as i64);
        let shifted = |x: &Element| act_casimir(x, &t).unwrap().sub(&x.scale(&cn));
        let once = shifted(&z);
        let expect = slot(0, Tag::V, n + 1).scale(&q_int(n as i64 + 1));
        assert_eq!(once, expect);
        assert!(shifted(&once).is_zero());
        let mut y = z.clone();
        for _ in 0..n + 2 {
            y = act(AlgebraGen::E, &y, &t).unwrap();
        }
        assert!(y.is_zero(), "e^(n+2) z, n={n}");
    }
}

#[test]
fn delta_on_lowered_verma() {
    let n = 2;
    let shape = ModuleShape::verma(-n - 2);
    let m = slot(0, Tag::M, 0);
    let c = &(&RatFunc::q_pow(-n - 1) + &RatFunc::q_pow(n + 1)) - &RatFunc::from_int(2);
    assert_eq!(act_delta(&m, &shape).unwrap(), m.scale(&c));
    for k in 0..5 {
        let x = slot(0, Tag::M, k);
        assert_eq!(act_delta(&x, &shape).unwrap(), x.scale(&c));
    }
}

#[test]
fn b_decompose_examples() {
    let v = ModuleShape::verma(-1);
    let x = slot(0, Tag::M, 2).add(&slot(0, Tag::M, 0));
    let parts = b_decompose(&x, &v).unwrap();
    assert_eq!(parts, vec![(2, slot(0, Tag::M, 0)), (0, slot(0, Tag::M, 0))]);
    let t = ModuleShape::t(3);
    let fv = act(AlgebraGen::F, &slot(0, Tag::V, 0), &t).unwrap();
    assert_eq!(b_decompose(&fv, &t).unwrap(), vec![(1, slot(0, Tag::V, 0))]);
    assert!(b_decompose(&slot(0, Tag::U, 0), &ModuleShape::findim(1)).is_err());
}

#[test]
fn kashiwara_examples() {
    let v = ModuleShape::verma(7);
    assert_eq!(kashiwara(KashiwaraDir::FTilde, &slot(0, Tag::M, 4), &v).unwrap(), slot(0, Tag::M, 5));
    let t = ModuleShape::t(1);
    assert!(kashiwara(KashiwaraDir::ETilde, &slot(0, Tag::Z, 0), &t).unwrap().is_zero());
    let v2 = ModuleShape::verma(2);
    let top = kashiwara_pow(KashiwaraDir::FTilde, &slot(0, Tag::M, 0), &v2, 3).unwrap();
    assert_eq!(top, slot(0, Tag::M, 3));
    assert_eq!(divided_f(&slot(0, Tag::M, 0), &v2, 3).unwrap(), top);
    let fd = ModuleShape::findim(2);
    assert!(kashiwara(KashiwaraDir::FTilde, &slot(0, Tag::U, 2), &fd).unwrap().is_zero());
}

#[test]
fn kernels() {
    let v = ModuleShape::verma(-4);
    assert_eq!(ker_e(&v, -4).unwrap(), vec![slot(0, Tag::M, 0)]);
    let t = ModuleShape::t(1);
    let k = ker_e(&t, -3).unwrap();
    assert_eq!(k.len(), 1);
    assert!(k[0].coeff(&Slot::new(0, Tag::Z, 0)).is_zero());
    assert!(!k[0].coeff(&Slot::new(0, Tag::V, 2)).is_zero());
    let kp = ker_e_prime(&t, -3).unwrap();
    assert_eq!(kp, vec![slot(0, Tag::Z, 0)]);
}

#[test]
fn f_power_maps_kernels() {
    for n in 0..=6u64 {
        for shape in ["M(N)", "T(N)", "M(N) + M(-N-2)", "T(N) + M(N)"] {
            let ni = n as i64;
            let s = shape.replace("-N-2", &(-ni - 2).to_string()).replace('N', &n.to_string());
            let shape: ModuleShape = s.parse().unwrap();
            let lower_ker = ker_e(&shape, -ni - 2).unwrap();
            for x in ker_e(&shape, ni).unwrap() {
                let y = kashiwara_pow(KashiwaraDir::FTilde, &x, &shape, n + 1).unwrap();
                assert!(act(AlgebraGen::E, &y, &shape).unwrap().is_zero(), "{s}");
                assert!(!lower_ker.is_empty());
                assert_eq!(kashiwara_pow(KashiwaraDir::ETilde, &y, &shape, n + 1).unwrap(), x);
            }
        }
    }
}

#[test]
fn e_prime_on_f_powers() {
    let shapes = ["M(3)", "M(-2)", "T(1)", "T(0)"];
    for s in shapes {
        let shape: ModuleShape = s.parse().unwrap();
        for &tag in shape.components[0].tags() {
            let m = slot(0, tag, 0);
            let ep_m = act(AlgebraGen::EPrime, &m, &shape).unwrap();
            for p in 1..=8u64 {
                let lhs = act(AlgebraGen::EPrime, &f_pow(&m, &shape, p), &shape).unwrap();
                let ratio = &(&RatFunc::one() - &RatFunc::q_pow(-2 * p as i64)) / &(&RatFunc::one() - &RatFunc::q_pow(-2));
                let rhs = f_pow(&ep_m, &shape, p)
                    .scale(&RatFunc::q_pow(-2 * p as i64))
                    .add(&f_pow(&m, &shape, p - 1).scale(&ratio));
                assert_eq!(lhs, rhs, "{s} {tag} p={p}");
            }
        }
    }
}

#[test]
fn completion_examples() {
    assert!(is_complete_module(&ModuleShape::verma(-1)));
    assert!(is_complete_module(&ModuleShape::t(5)));
    assert!(!is_complete_module(&ModuleShape::verma(-3)));
    assert!(!is_complete_module(&ModuleShape::findim(0)));
    let c = completion_module(&ModuleShape::verma(-1)).unwrap();
    assert_eq!(c.target, ModuleShape::verma(-1));
    let c = completion_module(&ModuleShape::verma(-3)).unwrap();
    assert_eq!(c.target, ModuleShape::verma(1));
    assert_eq!(c.embed(&slot(0, Tag::M, 0)), slot(0, Tag::M, 2));
    // the embedding intertwines f and e
    for k in 0..5 {
        for g in [AlgebraGen::E, AlgebraGen::F, AlgebraGen::T] {
            let x = slot(0, Tag::M, k);
            let lhs = c.embed(&act(g, &x, &c.source).unwrap());
            let rhs = act(g, &c.embed(&x), &c.target).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn shape_text_and_json() {
    let s: ModuleShape = "M(-3) + T(2)+V(1)".parse().unwrap();
    assert_eq!(s.to_string(), "M(-3) + T(2) + V(1)");
    let j = serde_json::to_string(&s).unwrap();
    assert_eq!(j, r#"[{"kind":"M","parameter":-3},{"kind":"T","parameter":2},{"kind":"V","parameter":1}]"#);
    assert_eq!(serde_json::from_str::<ModuleShape>(&j).unwrap(), s);
    assert!("T(-1)".parse::<ModuleShape>().is_err());
    assert!("X(2)".parse::<ModuleShape>().is_err());
    let e = slot(1, Tag::Z, 3).scale(&q_int(2));
    let j = serde_json::to_string(&e).unwrap();
    assert_eq!(j, r#"[{"component":1,"tag":"z","k":3,"coeff":"(q^2 + 1) / q"}]"#);
    assert_eq!(serde_json::from_str::<Element>(&j).unwrap(), e);
}

fn shape_strategy() -> impl Strategy<Value = ModuleShape> {
    let comp = prop_oneof![
        (-5i64..5).prop_map(ComponentShape::Verma),
        (0u64..4).prop_map(ComponentShape::T),
        (0u64..4).prop_map(ComponentShape::FinDim),
    ];
    prop::collection::vec(comp, 1..4).prop_map(ModuleShape::new)
}

fn element_in(shape: ModuleShape) -> impl Strategy<Value = (ModuleShape, Element)> {
    let strings = shape.strings();
    let term = (0..strings.len(), 0u64..6, -3i64..3, prop::collection::vec(-3i64..4, 1..3));
    prop::collection::vec(term, 1..4).prop_map(move |ts| {
        let mut e = Element::zero();
        for (si, k, low, cs) in ts {
            let (c, tag) = strings[si];
            let k = shape.components[c].max_k().map_or(k, |top| k.min(top));
            e.add_term(Slot::new(c, tag, k), RatFunc::laurent_i64(low, &cs));
        }
        (shape.clone(), e)
    })
}

fn shape_and_element() -> impl Strategy<Value = (ModuleShape, Element)> {
    shape_strategy().prop_flat_map(element_in)
}

fn bq_shape_and_element() -> impl Strategy<Value = (ModuleShape, Element)> {
    shape_strategy()
        .prop_map(|s| ModuleShape::new(s.components.into_iter().filter(|c| !c.is_findim()).collect()))
        .prop_filter("nonempty", |s| !s.is_empty())
        .prop_flat_map(element_in)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn defining_relations((shape, x) in shape_and_element()) {
        use AlgebraGen::*;
        let q2 = RatFunc::q_pow(2);
        let te = act_word(&[T, E, TInv], &x, &shape).unwrap();
        prop_assert_eq!(te, act(E, &x, &shape).unwrap().scale(&q2));
        let tf = act_word(&[T, F, TInv], &x, &shape).unwrap();
        prop_assert_eq!(tf, act(F, &x, &shape).unwrap().scale(&q2.inv().unwrap()));
        let comm = act_word(&[E, F], &x, &shape).unwrap().sub(&act_word(&[F, E], &x, &shape).unwrap());
        let d = &RatFunc::q() - &RatFunc::q_pow(-1);
        let rhs = act(T, &x, &shape).unwrap().sub(&act(TInv, &x, &shape).unwrap()).scale(&d.inv().unwrap());
        prop_assert_eq!(comm, rhs);
    }

    #[test]
    fn casimir_is_central((shape, x) in shape_and_element()) {
        for g in [AlgebraGen::E, AlgebraGen::F, AlgebraGen::T] {
            let a = act_casimir(&act(g, &x, &shape).unwrap(), &shape).unwrap();
            let b = act(g, &act_casimir(&x, &shape).unwrap(), &shape).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn kashiwara_algebra_relation((shape, x) in bq_shape_and_element()) {
        use AlgebraGen::*;
        let lhs = act_word(&[EPrime, F], &x, &shape).unwrap();
        let rhs = act_word(&[F, EPrime], &x, &shape).unwrap().scale(&RatFunc::q_pow(-2)).add(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn b_decompose_reassembles((shape, x) in bq_shape_and_element()) {
        let parts = b_decompose(&x, &shape).unwrap();
        let mut sum = Element::zero();
        for (k, u) in &parts {
            prop_assert!(act(AlgebraGen::EPrime, u, &shape).unwrap().is_zero());
            sum = sum.add(&divided_f(u, &shape, *k).unwrap());
        }
        prop_assert_eq!(sum, x.clone());
        let back = kashiwara(KashiwaraDir::ETilde, &kashiwara(KashiwaraDir::FTilde, &x, &shape).unwrap(), &shape).unwrap();
        prop_assert_eq!(back, x);
    }
}
