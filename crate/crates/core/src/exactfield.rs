//! Exact arithmetic in `Q(θ)`, `θ = 2cos(π/L)`, where `L` is the lcm of
//! the finite Coxeter labels of a diagram (and 2).
//!
//! All geometry of the reflection representation lives in this field.
//! Elements are polynomials in `θ` of degree below `d = [Q(θ):Q]`, with
//! rational coefficients, reduced modulo the monic integer minimal
//! polynomial of `θ`. Signs are decided by an exact zero test followed by
//! fixed-point interval evaluation on dyadic bounds for `θ`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CoxeterMatrix, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cos(pi/{m}) does not lie in Q(2cos(pi/{l}))")]
    NotEmbeddable { m: u32, l: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact quotient by a monic divisor.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// Cyclotomic polynomial `Φ_n`, low degree first.
fn cyclotomic(n: u32) -> Poly {
    // Φ_d for the divisors d of n, smallest first.
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut phis: Vec<Poly> = Vec::with_capacity(divisors.len());
    for (x, &d) in divisors.iter().enumerate() {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        for (y, &e) in divisors[..x].iter().enumerate() {
            if d % e == 0 {
                num = poly_div_exact(&num, &phis[y]);
            }
        }
        phis.push(num);
    }
    phis.pop().expect("n >= 1")
}

/// Minimal polynomial of `2cos(2π/n)` for `n ≥ 3`, obtained by writing the
/// palindromic `x^{-h} Φ_n(x)` as a polynomial in `y = x + 1/x`.
fn real_cyclotomic(n: u32) -> Poly {
    let phi = cyclotomic(n);
    let h = (phi.len() - 1) / 2;
    // c[j] = x^j + x^-j as a polynomial in y.
    let mut c: Vec<Poly> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for j in 1..h {
        let mut next = vec![BigInt::zero(); j + 2];
        for (i, v) in c[j].iter().enumerate() {
            next[i + 1] += v;
        }
        for (i, v) in c[j - 1].iter().enumerate() {
            next[i] -= v;
        }
        c.push(next);
    }
    let mut out = vec![BigInt::zero(); h + 1];
    out[0] = phi[h].clone();
    for j in 1..=h {
        for (i, v) in c[j].iter().enumerate() {
            out[i] += &phi[h + j] * v;
        }
    }
    trim(&mut out);
    out
}

/// Immutable description of `Q(θ)` shared by all its elements.
#[derive(Debug)]
pub struct FieldContext {
    l: u32,
    /// Monic minimal polynomial of `θ`, low degree first.
    minpoly: Poly,
    /// Rational interval containing `θ` and no other root of `minpoly`.
    lo: BigRational,
    hi: BigRational,
    /// Sign of `minpoly` just below `θ`.
    lo_sign: Sign,
    /// Tightest dyadic bounds computed so far.
    dyadic: Mutex<Dyadic>,
}

/// `lo / 2^bits <= θ <= hi / 2^bits`.
#[derive(Debug, Clone)]
struct Dyadic {
    bits: u32,
    lo: BigInt,
    hi: BigInt,
}

const START_BITS: u32 = 64;

impl FieldContext {
    pub fn new(l: u32) -> Arc<Self> {
        assert!(l >= 2 && l.is_multiple_of(2), "L must be even");
        let minpoly = real_cyclotomic(2 * l);
        let n = 2 * l as i64;
        let theta = 2.0 * (std::f64::consts::PI / l as f64).cos();
        // Every other conjugate 2cos(2πk/n), gcd(k,n)=1, lies strictly below θ.
        let gap = (2..=n / 2)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| theta - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .fold(f64::INFINITY, f64::min);
        let eps = if gap.is_finite() { gap / 4.0 } else { 0.25 };
        let to_q = |x: f64| BigRational::from_float(x).expect("finite float");
        let (lo, hi) = (to_q(theta - eps), to_q(theta + eps));
        let scale = BigRational::from(BigInt::one() << START_BITS);
        let dy = Dyadic {
            bits: START_BITS,
            lo: (&lo * &scale).floor().to_integer(),
            hi: (&hi * &scale).ceil().to_integer(),
        };
        let lo_sign = sign_at(&minpoly, &dy.lo, START_BITS);
        assert!(
            lo_sign != Sign::NoSign && lo_sign == -sign_at(&minpoly, &dy.hi, START_BITS),
            "failed to isolate 2cos(pi/{l})"
        );
        Arc::new(FieldContext { l, minpoly, lo, hi, lo_sign, dyadic: Mutex::new(dy) })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Rational isolating interval of `θ`.
    pub fn theta_interval(&self) -> (BigRational, BigRational) {
        (self.lo.clone(), self.hi.clone())
    }

    /// Integers `lo <= θ·2^bits <= hi` with `hi - lo <= 1` (or the initial
    /// isolating interval when that is already tighter).
    fn theta_bounds(&self, bits: u32) -> (BigInt, BigInt) {
        let mut dy = self.dyadic.lock().expect("field context lock");
        if bits <= dy.bits {
            let shift = dy.bits - bits;
            let lo = dy.lo.clone() >> shift;
            let hi = -((-dy.hi.clone()) >> shift);
            return (lo, hi);
        }
        let shift = bits - dy.bits;
        let mut lo = dy.lo.clone() << shift;
        let mut hi = dy.hi.clone() << shift;
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1u32;
            let s = sign_at(&self.minpoly, &mid, bits);
            if s == Sign::NoSign {
                lo = mid.clone();
                hi = mid;
            } else if s == self.lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *dy = Dyadic { bits, lo: lo.clone(), hi: hi.clone() };
        (lo, hi)
    }
}

/// Sign of `p(x / 2^bits)` for an integer polynomial `p`.
fn sign_at(p: &[BigInt], x: &BigInt, bits: u32) -> Sign {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for (k, c) in p[..d].iter().rev().enumerate() {
        acc = acc * x + (c << (bits as usize * (k + 1)));
    }
    acc.sign()
}

/// Field context for a diagram: `L = lcm(2, finite labels)`.
pub fn field_context(m: &CoxeterMatrix) -> Arc<FieldContext> {
    let l = m.finite_labels().fold(2u32, |a, b| a.lcm(&b));
    FieldContext::new(l)
}

/// Element of `Q(θ)` in the power basis.
#[derive(Clone)]
pub struct FieldElem {
    coeffs: Vec<BigRational>,
    ctx: Arc<FieldContext>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.ctx.l, other.ctx.l);
        self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElem {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FieldElem { coeffs: vec![BigRational::zero(); ctx.degree()], ctx: ctx.clone() }
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: BigRational) -> Self {
        let mut e = Self::zero(ctx);
        e.coeffs[0] = q;
        e
    }

    pub fn from_int(ctx: &Arc<FieldContext>, v: i64) -> Self {
        Self::from_rational(ctx, BigRational::from(BigInt::from(v)))
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    /// `θ = 2cos(π/L)`.
    pub fn theta(ctx: &Arc<FieldContext>) -> Self {
        Self::from_poly(ctx, vec![BigRational::zero(), BigRational::one()])
    }

    /// Reduces an arbitrary polynomial in `θ` into the power basis.
    pub fn from_poly(ctx: &Arc<FieldContext>, mut p: Vec<BigRational>) -> Self {
        let d = ctx.degree();
        while p.len() > d {
            let c = p.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let base = p.len() - d;
            for (j, mj) in ctx.minpoly[..d].iter().enumerate() {
                p[base + j] -= &c * BigRational::from(mj.clone());
            }
        }
        p.resize(d, BigRational::zero());
        FieldElem { coeffs: p, ctx: ctx.clone() }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElem { coeffs: self.coeffs.iter().map(|c| c * q).collect(), ctx: self.ctx.clone() }
    }

    pub fn half(&self) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let q = |v: &[BigInt]| v.iter().map(|c| BigRational::from(c.clone())).collect::<Vec<_>>();
        // Invariant: r0 = s0·a (mod f), r1 = s1·a (mod f).
        let mut r0 = q(&self.ctx.minpoly);
        let mut r1 = self.coeffs.clone();
        rtrim(&mut r1);
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (quot, rem) = rdivmod(&r0, &r1);
            let s2 = rsub(&s0, &rmul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!(r1.len() == 1 && r1[0].is_zero()), "minpoly not irreducible");
        }
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(&self.ctx, s))
    }

    /// Sign of the real number obtained from `θ ↦ 2cos(π/L)`.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.to_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        // Clear denominators, then evaluate in fixed point with outward
        // rounding, doubling the precision until the interval excludes 0.
        // θ is irrational here, so a nonzero element never evaluates to 0.
        let den = self.coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.ctx.theta_bounds(bits);
            let unit = BigInt::one() << bits;
            let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
            for c in ints.iter().rev() {
                let prods = [&a * &lo, &a * &hi, &b * &lo, &b * &hi];
                let mn = prods.iter().min().unwrap();
                let mx = prods.iter().max().unwrap();
                let shifted = c << bits;
                a = mn.div_floor(&unit) + &shifted;
                b = mx.div_ceil(&unit) + &shifted;
            }
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Floating-point value, for display only.
    pub fn to_f64(&self) -> f64 {
        let t = 2.0 * (std::f64::consts::PI / self.ctx.l as f64).cos();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn rtrim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(&mut out);
    out
}

fn rsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rtrim(&mut out);
    out
}

fn rdivmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    rem.truncate(db.max(1));
    rtrim(&mut rem);
    rtrim(&mut q);
    (q, rem)
}

impl fmt::Display for FieldElem {
    /// Polynomial in `θ`, e.g. `1/2 - θ + 3/4θ^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("θ")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        FieldElem { coeffs, ctx: self.ctx.clone() }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        FieldElem { coeffs, ctx: self.ctx.clone() }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let d = self.coeffs.len();
        let mut p = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        FieldElem::from_poly(&self.ctx, p)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { coeffs: self.coeffs.iter().map(|c| -c).collect(), ctx: self.ctx.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $f(self, rhs: FieldElem) -> FieldElem { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $f(self, rhs: &FieldElem) -> FieldElem { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// `2cos(π/m)`; `2` for `m = ∞`.
pub fn two_cos_pi_over(m: Label, ctx: &Arc<FieldContext>) -> Result<FieldElem, FieldError> {
    let m = match m {
        Label::Infinite => return Ok(FieldElem::from_int(ctx, 2)),
        Label::Finite(m) => m,
    };
    if m == 0 || !ctx.l.is_multiple_of(m) {
        return Err(FieldError::NotEmbeddable { m, l: ctx.l });
    }
    // 2cos(jπ/L) = C_j(θ) with C_0 = 2, C_1 = θ, C_{j+1} = θC_j − C_{j−1}.
    let theta = FieldElem::theta(ctx);
    let mut prev = FieldElem::from_int(ctx, 2);
    let mut cur = theta.clone();
    for _ in 1..ctx.l / m {
        let next = &(&theta * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `cos(π/m)`, with `cos(π/∞) = 1`.
pub fn cos_pi_over(m: Label, ctx: &Arc<FieldContext>) -> Result<FieldElem, FieldError> {
    Ok(two_cos_pi_over(m, ctx)?.half())
}

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.zero)
    }
}

/// Symmetric matrix over `Q(θ)`; for [`gram`] the entries are
/// `B(α_i, α_j) = −cos(π/m_ij)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl GramMatrix {
    pub fn from_entries(n: usize, entries: Vec<FieldElem>) -> Self {
        assert_eq!(entries.len(), n * n);
        GramMatrix { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    /// Exact inertia by division-free symmetric elimination. When no
    /// diagonal pivot is left, row and column `j` are added to `i` (a
    /// congruence) to create one.
    pub fn signature(&self) -> Signature {
        let n = self.n;
        let mut a: Vec<Vec<FieldElem>> = (0..n).map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect()).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
        let mut flipped = false;
        while !active.is_empty() {
            let pivot = active.iter().position(|&i| !a[i][i].is_zero());
            let Some(pi) = pivot else {
                let pair = active
                    .iter()
                    .enumerate()
                    .find_map(|(x, &i)| active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
                let Some((i, j)) = pair else {
                    sig.zero += active.len();
                    break;
                };
                for &c in &active {
                    let v = &a[i][c] + &a[j][c];
                    a[i][c] = v;
                }
                for &r in &active {
                    let v = &a[r][i] + &a[r][j];
                    a[r][i] = v;
                }
                continue;
            };
            let p = active.remove(pi);
            let d = a[p][p].clone();
            // The remaining block is d times the true Schur complement.
            let negative = d.sign() < 0;
            if negative != flipped {
                sig.neg += 1;
            } else {
                sig.pos += 1;
            }
            flipped ^= negative;
            let rows: Vec<(usize, FieldElem)> = active.iter().map(|&r| (r, a[r][p].clone())).collect();
            for &(r, ref arp) in &rows {
                for &c in &active {
                    let mut v = &d * &a[r][c];
                    if !arp.is_zero() && !a[p][c].is_zero() {
                        v = &v - &(arp * &a[p][c]);
                    }
                    a[r][c] = v;
                }
            }
        }
        sig
    }
}

/// Gram matrix `B(α_i, α_j) = −cos(π/m_ij)` over `ctx`.
pub fn gram(m: &CoxeterMatrix, ctx: &Arc<FieldContext>) -> GramMatrix {
    let n = m.rank();
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            if i == j {
                FieldElem::one(ctx)
            } else {
                -cos_pi_over(m.label(i, j), ctx).expect("context built from this diagram")
            }
        })
        .collect();
    GramMatrix { n, entries }
}
