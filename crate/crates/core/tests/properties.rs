use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use coxsym::diagram::{
    abelianization_rank, classify, components, finite_order, odd_components, parse_diagram, CoxeterMatrix, GroupClass,
    Label,
};
use coxsym::enumerator::{enumerate, parabolic_index};
use coxsym::exactfield::{field_context, gram, FieldContext, FieldElem};
use coxsym::presentation::{coxeter_presentation, parse_presentation, Letter, Presentation, Word};
use coxsym::rootorbit::orbit_size;
use coxsym::symgen::{analyze, check_two_relation_consistency, strictness, verify_isomorphism, Limits};

fn ctx_strategy() -> impl Strategy<Value = Arc<FieldContext>> {
    prop::sample::select(vec![4u32, 6, 8, 10, 12, 14, 20, 30]).prop_map(FieldContext::new)
}

fn elem(ctx: &Arc<FieldContext>, coeffs: &[(i64, i64)]) -> FieldElem {
    let c = coeffs.iter().take(ctx.degree()).map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
    FieldElem::from_poly(ctx, c)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(ctx in ctx_strategy(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (elem(&ctx, &a), elem(&ctx, &b), elem(&ctx, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn sign_is_multiplicative_and_matches_floats(ctx in ctx_strategy(), a in coeffs(), b in coeffs()) {
        let (a, b) = (elem(&ctx, &a), elem(&ctx, &b));
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        prop_assert_eq!((-a.clone()).sign(), -a.sign());
        let f = a.to_f64();
        if f.abs() > 1e-6 {
            prop_assert_eq!(a.sign(), if f > 0.0 { 1 } else { -1 });
        }
    }
}

fn label() -> impl Strategy<Value = Label> {
    prop::sample::select(vec![
        Label::Finite(2),
        Label::Finite(2),
        Label::Finite(2),
        Label::Finite(3),
        Label::Finite(3),
        Label::Finite(4),
        Label::Finite(5),
        Label::Finite(6),
        Label::Infinite,
    ])
}

fn diagram(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (1..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(label(), n * (n - 1) / 2).prop_map(move |ls| {
            let mut m = CoxeterMatrix::commuting(n);
            let mut it = ls.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    m.set_label(i, j, it.next().unwrap());
                }
            }
            m
        })
    })
}

fn finite_diagram(max_rank: usize, max_order: u128) -> impl Strategy<Value = CoxeterMatrix> {
    diagram(max_rank).prop_filter("finite and small", move |m| {
        classify(m).class == GroupClass::Finite && finite_order(m).is_some_and(|o| o <= max_order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagram_text_round_trips(m in diagram(6)) {
        prop_assert_eq!(parse_diagram(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn partitions_are_consistent(m in diagram(6)) {
        let odd = odd_components(&m);
        prop_assert!(odd.refines(&components(&m)));
        prop_assert_eq!(abelianization_rank(&m), odd.len());
        prop_assert_eq!(strictness(&m, 0), odd.len() == 1);
    }

    #[test]
    fn signature_and_class_are_permutation_invariant(
        m in diagram(5),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()
    ) {
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < m.rank()).collect();
        let pm = m.permuted(&perm);
        let s1 = gram(&m, &field_context(&m)).signature();
        let s2 = gram(&pm, &field_context(&pm)).signature();
        prop_assert_eq!(s1, s2);
        prop_assert_eq!(classify(&m).class, classify(&pm).class);
        prop_assert_eq!(s1.pos + s1.neg + s1.zero, m.rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn analysis_agrees_with_orbits_and_orders(m in finite_diagram(5, 4000), k in 0usize..5) {
        let k = k % m.rank();
        let r = analyze(&m, k, &Limits::default()).unwrap();
        let pi = r.pi();
        prop_assert_eq!(pi.degree(), r.m);
        prop_assert!(pi.is_transitive());
        prop_assert_eq!(orbit_size(&m, k, 100_000).unwrap().size, r.m);
        prop_assert!(check_two_relation_consistency(&m, k, &pi).passed());
        let wp = finite_order(&m.restrict(&r.parabolic.nodes.iter().map(|i| i - 1).collect::<Vec<_>>())).unwrap();
        let wx = finite_order(&m.restrict(&r.centralizer.nodes.iter().map(|i| i - 1).collect::<Vec<_>>())).unwrap();
        prop_assert_eq!(r.m as u128 * wx, wp);
        prop_assert_eq!(r.strict, r.r == 1);
    }

    #[test]
    fn parabolic_index_times_order(m in finite_diagram(5, 4000), mask in 0u32..32) {
        let j: Vec<usize> = (0..m.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let t = parabolic_index(&m, &j, 1_000_000).unwrap();
        let wj = finite_order(&m.restrict(&j)).unwrap();
        prop_assert_eq!(t.index() as u128 * wj, finite_order(&m).unwrap());
        prop_assert!(t.verify(&coxeter_presentation(&m), &j.iter().map(|&i| Word::gen(i)).collect::<Vec<_>>()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn symmetric_presentation_defines_w(m in finite_diagram(4, 1200), k in 0usize..4) {
        let k = k % m.rank();
        let c = verify_isomorphism(&m, k, &Limits::default());
        prop_assert!(c.passed(), "{}", c);
    }
}

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..10)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter { gen: g, inv })))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..5).prop_flat_map(|n| {
        prop::collection::vec(word(n), 0..6).prop_map(move |rs| {
            let names = (0..n).map(|i| format!("g{i}")).collect();
            let rs = rs.into_iter().filter(|w| !w.is_empty()).collect();
            Presentation::new(names, rs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn emit_parse_is_a_fixed_point(p in presentation()) {
        let native = p.to_native();
        let q = parse_presentation(&native).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.to_native(), native);
        let json = p.to_json();
        prop_assert_eq!(serde_json::from_str::<Presentation>(&json).unwrap(), p);
    }

    #[test]
    fn words_are_freely_reduced(w in word(3), v in word(3)) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.concat(&v).inverse(), v.inverse().concat(&w.inverse()));
        for pair in w.letters().windows(2) {
            prop_assert!(pair[0] != pair[1].inverse());
        }
    }

    #[test]
    fn enumeration_is_deterministic(m in finite_diagram(4, 2000)) {
        let p = coxeter_presentation(&m);
        let a = enumerate(&p, &[], 100_000).unwrap();
        let b = enumerate(&p, &[], 100_000).unwrap();
        prop_assert_eq!(a.digest(), b.digest());
        prop_assert_eq!(a.index() as u128, finite_order(&m).unwrap());
    }
}
