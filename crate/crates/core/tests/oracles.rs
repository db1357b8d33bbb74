//! Library results against oracles built here from scratch: explicit
//! permutation models of the classical groups, floating-point eigenvalues
//! of the Gram matrix, and the angle-sum rule for triangle groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use coxsym::diagram::{classify, named_type, CoxeterMatrix, GroupClass, Label};
use coxsym::enumerator::order_via_parabolic_chain;
use coxsym::exactfield::{field_context, gram};
use coxsym::symgen::{analyze, Limits};

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // first a, then b
    a.iter().map(|&x| b[x]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn closure(gens: &[Perm], degree: usize) -> HashSet<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

fn swap(degree: usize, pairs: &[(usize, usize)]) -> Perm {
    let mut p: Perm = (0..degree).collect();
    for &(a, b) in pairs {
        p.swap(a, b);
    }
    p
}

/// Simple reflections as permutations, in the library's node numbering.
/// Signed permutations act on 2n points: `i` and `n + i` stand for `±(i+1)`.
fn model(kind: char, n: usize) -> (Vec<Perm>, usize) {
    match kind {
        'A' => ((0..n).map(|i| swap(n + 1, &[(i, i + 1)])).collect(), n + 1),
        'B' => {
            let d = 2 * n;
            let mut g: Vec<Perm> = (0..n - 1).map(|i| swap(d, &[(i, i + 1), (n + i, n + i + 1)])).collect();
            g.push(swap(d, &[(n - 1, 2 * n - 1)]));
            (g, d)
        }
        'D' => {
            let d = 2 * n;
            let mut g: Vec<Perm> = (0..n - 1).map(|i| swap(d, &[(i, i + 1), (n + i, n + i + 1)])).collect();
            g.push(swap(d, &[(n - 2, 2 * n - 1), (n - 1, 2 * n - 2)]));
            (g, d)
        }
        'I' => {
            let s1: Perm = (0..n).map(|i| (n - i) % n).collect();
            let s2: Perm = (0..n).map(|i| (n + 1 - i) % n).collect();
            (vec![s1, s2], n)
        }
        _ => unreachable!(),
    }
}

fn type_of(kind: char, n: usize) -> CoxeterMatrix {
    match kind {
        'I' => named_type(&format!("I2({n})")).unwrap(),
        _ => named_type(&format!("{kind}{n}")).unwrap(),
    }
}

struct Facts {
    order: usize,
    conjugates: usize,
    closure_is_whole: bool,
}

fn permutation_facts(gens: &[Perm], degree: usize, k: usize) -> Facts {
    let whole = closure(gens, degree);
    let others: Vec<Perm> = gens.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
    let wp = closure(&others, degree);
    let t = &gens[k];
    let conj: BTreeSet<Perm> = wp.iter().map(|w| compose(&compose(&inverse(w), t), w)).collect();
    let conj: Vec<Perm> = conj.into_iter().collect();
    Facts { order: whole.len(), conjugates: conj.len(), closure_is_whole: closure(&conj, degree).len() == whole.len() }
}

fn cases() -> Vec<(char, usize)> {
    let mut v = vec![];
    v.extend((1..=5).map(|n| ('A', n)));
    v.extend((2..=4).map(|n| ('B', n)));
    v.extend((4..=5).map(|n| ('D', n)));
    v.extend([5, 6, 8, 12].map(|m| ('I', m)));
    v
}

#[test]
fn index_order_and_strictness_match_permutation_models() {
    for (kind, n) in cases() {
        let (gens, degree) = model(kind, n);
        let m = type_of(kind, n);
        assert_eq!(m.rank(), gens.len(), "{kind}{n}");
        for k in 0..gens.len() {
            let f = permutation_facts(&gens, degree, k);
            let r = analyze(&m, k, &Limits::default()).unwrap();
            assert_eq!(r.m, f.conjugates, "{kind}{n} node {}", k + 1);
            assert_eq!(r.strict, f.closure_is_whole, "{kind}{n} node {}", k + 1);
            assert_eq!(r.pi().degree(), f.conjugates);
            assert_eq!(order_via_parabolic_chain(&m).unwrap(), f.order as u128, "{kind}{n}");
        }
    }
}

#[test]
fn permutation_models_satisfy_the_coxeter_relations() {
    // Guards the oracle itself: generator products have order m_ij.
    for (kind, n) in cases() {
        let (gens, degree) = model(kind, n);
        let m = type_of(kind, n);
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let p = if i == j { gens[i].clone() } else { compose(&gens[i], &gens[j]) };
                let id: Perm = (0..degree).collect();
                let mut q = p.clone();
                let mut order = 1;
                while q != id {
                    q = compose(&q, &p);
                    order += 1;
                }
                let want = if i == j { 2 } else { m.label(i, j).finite().unwrap() };
                assert_eq!(order, want as usize, "{kind}{n} ({i},{j})");
            }
        }
    }
}

#[test]
fn orders_match_closed_formulas() {
    let fact = |n: u128| (1..=n).product::<u128>();
    for n in 1..=7u128 {
        assert_eq!(order_via_parabolic_chain(&named_type(&format!("A{n}")).unwrap()).unwrap(), fact(n + 1));
    }
    for n in 2..=6u128 {
        assert_eq!(order_via_parabolic_chain(&named_type(&format!("B{n}")).unwrap()).unwrap(), (1 << n) * fact(n));
    }
    for n in 4..=6u128 {
        assert_eq!(
            order_via_parabolic_chain(&named_type(&format!("D{n}")).unwrap()).unwrap(),
            (1 << (n - 1)) * fact(n)
        );
    }
    for (t, o) in
        [("E6", 51840u128), ("E7", 2903040), ("F4", 1152), ("G2", 12), ("H3", 120), ("H4", 14400), ("I2(7)", 14)]
    {
        assert_eq!(order_via_parabolic_chain(&named_type(t).unwrap()).unwrap(), o, "{t}");
    }
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
#[allow(clippy::needless_range_loop)]
fn eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

fn float_gram(m: &CoxeterMatrix) -> Vec<Vec<f64>> {
    let n = m.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match m.label(i, j) {
                    Label::Finite(1) => 1.0,
                    Label::Finite(l) => -(std::f64::consts::PI / l as f64).cos(),
                    Label::Infinite => -1.0,
                })
                .collect()
        })
        .collect()
}

#[test]
fn signature_matches_float_eigenvalues() {
    let names = [
        "A4", "B5", "D6", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(9)", "~A3", "~B4", "~C3", "~D5", "~E6", "~E7",
        "~E8", "~F4", "~G2", "H5", "I2(inf)",
    ];
    let extra = [
        "rank 3; edge 1 2 7; edge 2 3 3",
        "rank 3; edge 1 2 inf; edge 2 3 inf; edge 1 3 inf",
        "rank 4; edge 1 2 5; edge 2 3 3; edge 3 4 5",
        "rank 4; edge 1 2 3; edge 2 3 3; edge 3 4 3; edge 4 1 3; edge 1 3 3",
    ];
    let ms: Vec<CoxeterMatrix> = names
        .iter()
        .map(|t| named_type(t).unwrap())
        .chain(extra.iter().map(|s| coxsym::diagram::parse_diagram(s).unwrap()))
        .collect();
    for m in ms {
        let ev = eigenvalues(float_gram(&m));
        let pos = ev.iter().filter(|&&x| x > 1e-9).count();
        let neg = ev.iter().filter(|&&x| x < -1e-9).count();
        let zero = ev.len() - pos - neg;
        let s = gram(&m, &field_context(&m)).signature();
        assert_eq!((s.pos, s.neg, s.zero), (pos, neg, zero), "{m}");
    }
}

/// Rank-3 diagram with labels p = m_12, q = m_23, r = m_13 (0 for ∞).
fn triangle(p: u32, q: u32, r: u32) -> CoxeterMatrix {
    let lab = |x: u32| if x == 0 { Label::Infinite } else { Label::Finite(x) };
    let mut m = CoxeterMatrix::commuting(3);
    m.set_label(0, 1, lab(p));
    m.set_label(1, 2, lab(q));
    m.set_label(0, 2, lab(r));
    m
}

#[test]
fn triangle_groups_follow_the_angle_sum() {
    use num_rational::Ratio;
    let labels = [0u32, 2, 3, 4, 5, 6, 7, 8, 10, 12];
    for &p in &labels {
        for &q in &labels {
            for &r in &labels {
                let inv = |x: u32| if x == 0 { Ratio::new(0, 1) } else { Ratio::new(1, x as i64) };
                let sum = inv(p) + inv(q) + inv(r);
                let any_inf = [p, q, r].contains(&0);
                let want = if sum > Ratio::new(1, 1) {
                    GroupClass::Finite
                } else if sum == Ratio::new(1, 1) {
                    GroupClass::Affine
                } else if any_inf {
                    GroupClass::NonCompactHyperbolic
                } else {
                    GroupClass::CompactHyperbolic
                };
                assert_eq!(classify(&triangle(p, q, r)).class, want, "({p},{q},{r})");
            }
        }
    }
}
