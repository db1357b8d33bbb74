//! The geometric representation `ρ` and its contragredient `ρ*`.
//!
//! Vectors are rows of coordinates in the simple-root basis and the group
//! acts on the right, `v ↦ v·ρ(s_i)`. The matrix of `ρ(s_i)` is the
//! identity except for column `i`, which holds `−2b_ji` off the diagonal
//! and `−1` at `(i,i)`, where `b_ij = B(α_i, α_j) = −cos(π/m_ij)`. With this
//! convention `B`-invariance reads `ρ(s)·G·ρ(s)ᵀ = G`. Covectors are rows in
//! the dual basis and `ρ*(s_i) = ρ(s_i)ᵀ` acts on them on the right too.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{components, CoxeterMatrix, Label};
use crate::exactfield::{field_context, gram, FieldContext, FieldElem, GramMatrix};
use crate::presentation::Word;
use crate::symgen::CheckResult;

/// Default cap on orbit sizes.
pub const DEFAULT_ORBIT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("orbit exceeded {limit} vectors (it may be infinite)")]
    Exceeded { limit: usize },
    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
}

/// Coordinates in `Π = {α_1..α_n}` (or the dual basis for covectors).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<FieldElem>);

impl RootVector {
    pub fn basis(ctx: &Arc<FieldContext>, n: usize, i: usize) -> Self {
        let mut v = vec![FieldElem::zero(ctx); n];
        v[i] = FieldElem::one(ctx);
        RootVector(v)
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Square matrix over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let entries =
            (0..n * n).map(|x| if x / n == x % n { FieldElem::one(ctx) } else { FieldElem::zero(ctx) }).collect();
        Matrix { n, entries }
    }

    pub fn from_gram(g: &GramMatrix) -> Self {
        let n = g.rank();
        Matrix { n, entries: (0..n * n).map(|x| g.entry(x / n, x % n).clone()).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Matrix { n, entries: (0..n * n).map(|x| self.get(x % n, x / n).clone()).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let ctx = self.entries[0].context().clone();
        let mut out = Matrix { n, entries: vec![FieldElem::zero(&ctx); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let ctx = self.entries[0].context().clone();
        (0..e).fold(Matrix::identity(&ctx, self.n), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n)
            .all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &RootVector) -> RootVector {
        let ctx = self.entries[0].context().clone();
        let mut out = vec![FieldElem::zero(&ctx); self.n];
        for (i, x) in v.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = &*o + &(x * m);
                }
            }
        }
        RootVector(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionKind {
    Geometric,
    Contragredient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionMatrix {
    pub matrix: Matrix,
    pub kind: ReflectionKind,
}

/// `ρ(s_i)` for the diagram `m`, entries in `ctx`.
pub fn reflection_matrix(m: &CoxeterMatrix, i: usize, ctx: &Arc<FieldContext>) -> ReflectionMatrix {
    let g = gram(m, ctx);
    ReflectionMatrix { matrix: rho_from_gram(&g, i), kind: ReflectionKind::Geometric }
}

/// `ρ*(s_i) = ρ(s_i)ᵀ`.
pub fn contragredient_matrix(m: &CoxeterMatrix, i: usize, ctx: &Arc<FieldContext>) -> ReflectionMatrix {
    ReflectionMatrix { matrix: reflection_matrix(m, i, ctx).matrix.transpose(), kind: ReflectionKind::Contragredient }
}

fn rho_from_gram(g: &GramMatrix, i: usize) -> Matrix {
    let n = g.rank();
    let ctx = g.entry(0, 0).context().clone();
    let mut r = Matrix::identity(&ctx, n);
    let minus_two = FieldElem::from_int(&ctx, -2);
    for j in 0..n {
        let v = if j == i { FieldElem::from_int(&ctx, -1) } else { &minus_two * g.entry(j, i) };
        r.set(j, i, v);
    }
    r
}

/// Everything needed to act with `W` on roots and coroots.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub matrix: CoxeterMatrix,
    pub ctx: Arc<FieldContext>,
    pub gram: GramMatrix,
    rho: Vec<Matrix>,
}

impl Geometry {
    pub fn new(m: &CoxeterMatrix) -> Self {
        Self::with_context(m, &field_context(m))
    }

    pub fn with_context(m: &CoxeterMatrix, ctx: &Arc<FieldContext>) -> Self {
        let g = gram(m, ctx);
        let rho = (0..m.rank()).map(|i| rho_from_gram(&g, i)).collect();
        Geometry { matrix: m.clone(), ctx: ctx.clone(), gram: g, rho }
    }

    /// Replaces `ρ(s_i)`; only useful for negative controls.
    pub fn with_reflection(mut self, i: usize, r: Matrix) -> Self {
        self.rho[i] = r;
        self
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn rho_star(&self, i: usize) -> Matrix {
        self.rho[i].transpose()
    }

    /// `ρ(x_1)···ρ(x_r)` for a word in node indices.
    pub fn word_matrix(&self, w: &Word) -> Matrix {
        w.letters().iter().fold(Matrix::identity(&self.ctx, self.rank()), |acc, l| acc.mul(&self.rho[l.gen]))
    }

    /// `B(u, v) = u·G·vᵀ`.
    pub fn form(&self, u: &RootVector, v: &RootVector) -> FieldElem {
        let mut acc = FieldElem::zero(&self.ctx);
        for (i, a) in u.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.0.iter().enumerate() {
                if !b.is_zero() {
                    acc = &acc + &(&(a * self.gram.entry(i, j)) * b);
                }
            }
        }
        acc
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::basis(&self.ctx, self.rank(), i)
    }

    /// Orbit of `start` under the reflections in `gens`, breadth first.
    // The field context's cached bounds sit behind a mutex but never enter Hash or Eq.
    #[allow(clippy::mutable_key_type)]
    pub fn orbit(&self, start: &RootVector, gens: &[usize], limit: usize) -> Result<Vec<RootVector>, OrbitError> {
        let mut seen: HashSet<RootVector> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut q = VecDeque::from([start.clone()]);
        while let Some(v) = q.pop_front() {
            for &i in gens {
                let w = self.rho[i].apply(&v);
                if seen.insert(w.clone()) {
                    if out.len() >= limit {
                        return Err(OrbitError::Exceeded { limit });
                    }
                    out.push(w.clone());
                    q.push_back(w);
                }
            }
        }
        Ok(out)
    }
}

/// The `W'`-orbit of `α_k`, `W'` generated by every other node.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub size: usize,
    pub vectors: Vec<RootVector>,
}

impl Orbit {
    /// One vector per line, coordinates as polynomials in `θ`.
    pub fn dump(&self) -> String {
        self.vectors.iter().map(|v| format!("{v}\n")).collect()
    }
}

pub fn orbit_size(m: &CoxeterMatrix, k: usize, limit: usize) -> Result<Orbit, OrbitError> {
    if k >= m.rank() {
        return Err(OrbitError::NodeOutOfRange { node: k + 1, rank: m.rank() });
    }
    let geo = Geometry::new(m);
    let gens: Vec<usize> = (0..m.rank()).filter(|&i| i != k).collect();
    let vectors = geo.orbit(&geo.simple_root(k), &gens, limit)?;
    Ok(Orbit { size: vectors.len(), vectors })
}

/// `β* = Σ_{i≠k} b_ik α_i* + α_k*`.
pub fn beta_star(m: &CoxeterMatrix, k: usize, ctx: &Arc<FieldContext>) -> RootVector {
    let g = gram(m, ctx);
    RootVector((0..m.rank()).map(|i| g.entry(i, k).clone()).collect())
}

fn check_eigen(geo: &Geometry, k: usize) -> CheckResult {
    const NAME: &str = "eigenspaces";
    let n = geo.rank();
    let rk = geo.rho(k);
    let ak = geo.simple_root(k);
    if rk.apply(&ak) != ak.neg() {
        return CheckResult::fail(NAME, format!("rho(s_{}) does not negate alpha_{}", k + 1, k + 1));
    }
    for j in (0..n).filter(|&j| j != k) {
        // α_j − b_jk α_k spans α_k^⊥ as j runs over the other nodes.
        let aj = geo.simple_root(j);
        let mut v = aj.clone();
        v.0[k] = -geo.gram.entry(j, k);
        if !geo.form(&v, &ak).is_zero() {
            return CheckResult::fail(NAME, format!("vector {} is not orthogonal to alpha_{}", j + 1, k + 1));
        }
        if rk.apply(&v) != v {
            return CheckResult::fail(
                NAME,
                format!("rho(s_{}) moves the orthogonal vector built from alpha_{}", k + 1, j + 1),
            );
        }
    }
    let rs = rk.transpose();
    let beta = RootVector((0..n).map(|i| geo.gram.entry(i, k).clone()).collect());
    if rs.apply(&beta) != beta.neg() {
        return CheckResult::fail(NAME, format!("rho*(s_{}) does not negate beta*", k + 1));
    }
    for i in (0..n).filter(|&i| i != k) {
        let a = RootVector::basis(&geo.ctx, n, i);
        if !rs.apply(&a).sub(&a).is_zero() {
            return CheckResult::fail(NAME, format!("rho*(s_{}) moves alpha*_{}", k + 1, i + 1));
        }
    }
    CheckResult::pass(NAME, format!("E+ = alpha_{0}^perp and E*- = <beta*> for s_{0}", k + 1))
}

/// The eigenspace identities for `s_k` in `ρ` and `ρ*`.
pub fn eigen_checks(m: &CoxeterMatrix, k: usize, ctx: &Arc<FieldContext>) -> CheckResult {
    check_eigen(&Geometry::with_context(m, ctx), k)
}

pub fn eigen_checks_on(geo: &Geometry, k: usize) -> CheckResult {
    check_eigen(geo, k)
}

/// Checks that `ρ*(w)` fixes `β*` for every word (in node indices).
pub fn fixed_vector_check(m: &CoxeterMatrix, k: usize, words: &[Word], ctx: &Arc<FieldContext>) -> CheckResult {
    const NAME: &str = "beta_star_fixed";
    let geo = Geometry::with_context(m, ctx);
    let beta = beta_star(m, k, ctx);
    for w in words {
        // ρ*(x_1···x_r) acts as ρ(x_1)ᵀ···ρ(x_r)ᵀ on the right.
        let image = w.letters().iter().fold(beta.clone(), |v, l| geo.rho(l.gen).transpose().apply(&v));
        if image != beta {
            let letters: Vec<String> = w.letters().iter().map(|l| format!("s_{}", l.gen + 1)).collect();
            return CheckResult::fail(NAME, format!("{} moves beta*", letters.join(" ")));
        }
    }
    CheckResult::pass(NAME, format!("{} words fix beta*", words.len()))
}

/// `ρ(s_i)² = 1`, `ρ(s_i)·G·ρ(s_i)ᵀ = G`, and `(ρ(s_i)ρ(s_j))^{m_ij} = 1`.
pub fn invariant_checks(geo: &Geometry) -> CheckResult {
    const NAME: &str = "geometry_invariants";
    let n = geo.rank();
    let g = Matrix::from_gram(&geo.gram);
    for i in 0..n {
        let r = geo.rho(i);
        if !r.mul(r).is_identity() {
            return CheckResult::fail(NAME, format!("rho(s_{}) does not square to 1", i + 1));
        }
        if r.mul(&g).mul(&r.transpose()) != g {
            return CheckResult::fail(NAME, format!("rho(s_{}) does not preserve B", i + 1));
        }
        for j in i + 1..n {
            if let Label::Finite(e) = geo.matrix.label(i, j) {
                if !r.mul(geo.rho(j)).pow(e).is_identity() {
                    return CheckResult::fail(NAME, format!("(rho(s_{}) rho(s_{}))^{} is not 1", i + 1, j + 1, e));
                }
            }
        }
    }
    CheckResult::pass(NAME, format!("involutions, B-invariance and braid relations for rank {n}"))
}

/// Long/short labelling of simple roots for a crystallographic diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootLengths {
    long: Vec<bool>,
}

impl RootLengths {
    pub fn all_equal(n: usize) -> Self {
        RootLengths { long: vec![true; n] }
    }

    /// Lengths propagated from `seed`, declared long. Edges labelled 4 or 6
    /// join roots of different lengths; edges labelled 3 join roots of equal
    /// length. Components that are not crystallographic, and components not
    /// containing `seed`, are taken to have a single root length.
    pub fn from_seed(m: &CoxeterMatrix, seed: usize) -> Self {
        let n = m.rank();
        let mut long = vec![true; n];
        let parts = components(m);
        let Some(block) = parts.block_of(seed) else {
            return RootLengths { long };
        };
        let crystallographic = block.iter().all(|&i| {
            block.iter().all(|&j| {
                i == j
                    || matches!(
                        m.label(i, j),
                        Label::Finite(2) | Label::Finite(3) | Label::Finite(4) | Label::Finite(6)
                    )
            })
        });
        if !crystallographic {
            return RootLengths { long };
        }
        let mut set = vec![None; n];
        set[seed] = Some(true);
        let mut stack = vec![seed];
        while let Some(v) = stack.pop() {
            let lv = set[v].unwrap();
            for w in m.neighbours(v) {
                let lw = match m.label(v, w) {
                    Label::Finite(3) => lv,
                    _ => !lv,
                };
                match set[w] {
                    None => {
                        set[w] = Some(lw);
                        stack.push(w);
                    }
                    Some(x) if x != lw => return RootLengths::all_equal(n),
                    Some(_) => {}
                }
            }
        }
        for &i in block {
            long[i] = set[i].unwrap_or(true);
        }
        RootLengths { long }
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.long[i]
    }

    /// Restriction to the nodes kept by a deletion (`kept[new] = old`).
    pub fn restrict(&self, kept: &[usize]) -> Self {
        RootLengths { long: kept.iter().map(|&o| self.long[o]).collect() }
    }
}

/// Number of long roots of a finite root system: the union of the
/// `W`-orbits of the long simple roots.
#[allow(clippy::mutable_key_type)]
pub fn long_root_count(m: &CoxeterMatrix, lengths: &RootLengths, limit: usize) -> Result<usize, OrbitError> {
    let geo = Geometry::new(m);
    let gens: Vec<usize> = (0..m.rank()).collect();
    let mut roots: HashSet<RootVector> = HashSet::new();
    for i in (0..m.rank()).filter(|&i| lengths.is_long(i)) {
        let a = geo.simple_root(i);
        if roots.contains(&a) {
            continue;
        }
        roots.extend(geo.orbit(&a, &gens, limit)?);
    }
    Ok(roots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{delete_node, named_type, parse_diagram};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ty(s: &str) -> CoxeterMatrix {
        named_type(s).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reflection_examples() {
        let a2 = ty("A2");
        let ctx = field_context(&a2);
        let r = reflection_matrix(&a2, 0, &ctx).matrix;
        let vals: Vec<_> = (0..4).map(|x| r.get(x / 2, x % 2).to_rational().unwrap()).collect();
        assert_eq!(vals, vec![q(-1, 1), q(0, 1), q(1, 1), q(1, 1)]);
        let m = parse_diagram("rank 2").unwrap();
        let ctx = field_context(&m);
        let r = reflection_matrix(&m, 0, &ctx).matrix;
        assert_eq!(r.get(0, 0).to_rational(), Some(q(-1, 1)));
        assert!(r.get(1, 0).is_zero() && r.get(0, 1).is_zero());
        let b2 = ty("B2");
        let ctx = field_context(&b2);
        let r = reflection_matrix(&b2, 1, &ctx).matrix;
        let x = r.get(0, 1);
        assert_eq!(x.sign(), 1);
        assert_eq!((x * x).to_rational(), Some(q(2, 1)));
        let rs = contragredient_matrix(&b2, 1, &ctx);
        assert_eq!(rs.kind, ReflectionKind::Contragredient);
        assert_eq!(rs.matrix.get(1, 0), x);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_size(&ty("A4"), 3, 1000).unwrap().size, 4);
        assert_eq!(orbit_size(&ty("H4"), 0, 1000).unwrap().size, 12);
        assert_eq!(orbit_size(&ty("~E6"), 6, 1000).unwrap().size, 72);
        assert_eq!(orbit_size(&ty("~A2"), 0, 1000).unwrap().size, 6);
        let inf = parse_diagram("rank 3; edge 1 2 inf; edge 2 3 3").unwrap();
        assert!(matches!(orbit_size(&inf, 2, 50), Err(OrbitError::Exceeded { limit: 50 })));
    }

    #[test]
    fn beta_star_examples() {
        let a2 = ty("A2");
        let ctx = field_context(&a2);
        let b = beta_star(&a2, 1, &ctx);
        assert_eq!(b.0[0].to_rational(), Some(q(-1, 2)));
        assert_eq!(b.0[1].to_rational(), Some(q(1, 1)));
        let m = parse_diagram("rank 3; edge 1 2 3").unwrap();
        let ctx = field_context(&m);
        assert_eq!(beta_star(&m, 2, &ctx), RootVector::basis(&ctx, 3, 2));
        let b2 = ty("B2");
        let ctx = field_context(&b2);
        let b = beta_star(&b2, 1, &ctx);
        let c4 = crate::exactfield::cos_pi_over(Label::Finite(4), &ctx).unwrap();
        assert_eq!(b.0[0], -c4);
    }

    #[test]
    fn eigen_and_invariants() {
        for s in ["A3", "B3", "H3", "F4", "G2", "I2(inf)", "~A2", "H5"] {
            let m = ty(s);
            let ctx = field_context(&m);
            for k in 0..m.rank() {
                assert!(eigen_checks(&m, k, &ctx).passed(), "{s} {k}");
            }
            assert!(invariant_checks(&Geometry::new(&m)).passed(), "{s}");
        }
        let m = ty("A3");
        let geo = Geometry::new(&m);
        let bad = geo.rho(1).clone();
        let geo = geo.with_reflection(0, bad);
        assert!(!eigen_checks_on(&geo, 0).passed());
        assert!(!invariant_checks(&geo).passed());
    }

    #[test]
    fn fixed_vectors() {
        let f4 = ty("F4");
        let ctx = field_context(&f4);
        let words = [Word::gen(0), Word::gen(1)];
        assert!(fixed_vector_check(&f4, 3, &words, &ctx).passed());
        assert!(fixed_vector_check(&f4, 3, &[], &ctx).passed());
        assert!(!fixed_vector_check(&f4, 3, &[Word::gen(2)], &ctx).passed());
    }

    #[test]
    fn long_roots() {
        // C_n: node n long.
        for n in 2..=5 {
            let c = ty(&format!("C{n}"));
            let l = RootLengths::from_seed(&c, n - 1);
            assert_eq!(long_root_count(&c, &l, 10_000).unwrap(), 2 * n, "C{n}");
            let l = RootLengths::from_seed(&c, 0);
            assert_eq!(long_root_count(&c, &l, 10_000).unwrap(), 2 * n * (n - 1), "B{n}");
        }
        let f4 = ty("F4");
        assert_eq!(long_root_count(&f4, &RootLengths::from_seed(&f4, 0), 10_000).unwrap(), 24);
        let a2 = ty("A2");
        assert_eq!(long_root_count(&a2, &RootLengths::from_seed(&a2, 0), 100).unwrap(), 6);
        let h3 = ty("H3");
        assert_eq!(long_root_count(&h3, &RootLengths::from_seed(&h3, 0), 1000).unwrap(), 30);
    }

    #[test]
    fn affine_orbits_are_long_roots() {
        for s in ["~A3", "~B4", "~C3", "~D5", "~E6", "~F4", "~G2"] {
            let m = ty(s);
            let k = m.rank() - 1;
            let del = delete_node(&m, k).unwrap();
            let lengths = RootLengths::from_seed(&m, k).restrict(&del.kept);
            let want = long_root_count(&del.matrix, &lengths, 10_000).unwrap();
            assert_eq!(orbit_size(&m, k, 10_000).unwrap().size, want, "{s}");
        }
    }
}
