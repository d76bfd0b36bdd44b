//! Sparse Lie algebras over `QLaurent` driven by structure-constant rules.
//!
//! One generic engine (`bracket`, `form`, the identity checkers) runs over
//! every [`AlgebraSpec`] in the catalogue:
//!
//! | name            | basis                                   |
//! |-----------------|-----------------------------------------|
//! | `vq`            | `E[k,l]` (`E[0,0] = 0`), `c1`, `c2`     |
//! | `gl-inf`        | `Eij[m,n]`                              |
//! | `A`             | `G[a,m]` (= `Eij[m+a,m-a]`)             |
//! | `A-star`        | `G[a,m]`, `K1`                          |
//! | `hat-A`         | `(G[a,m])@t^i`, `K2`                    |
//! | `hat-A-star`    | `(G[a,m])@t^i`, `(K1)@t^i`, `K2`        |
//! | `tilde-A`       | `(G[a,m])@t^i`, `K1`, `K2`              |
//! | `A-plus-K1`     | `A ⊕ ℂK1` (direct sum)                  |
//! | `hat-A-plus-K1` | `hat-A ⊕ ℂK1` (direct sum)              |

use std::fmt;

use rand::Rng;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::qcoeff::QLaurent;

/// Basis keys of every algebra in the catalogue.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    /// `E_{k,l}` of the q-difference algebra.
    E(i64, i64),
    /// Elementary matrix `E_{m,n}` of `gl_∞`.
    Eij(i64, i64),
    /// `G_{α,m} = E_{m+α,m-α}` of `𝒜`.
    G(i64, i64),
    /// `inner ⊗ t^i`.
    Loop(Box<BasisKey>, i64),
    C1,
    C2,
    K1,
    K2,
}

impl BasisKey {
    pub fn loop_of(inner: BasisKey, i: i64) -> Self {
        BasisKey::Loop(Box::new(inner), i)
    }

    /// `Some((inner, i))` for loop keys.
    pub fn as_loop(&self) -> Option<(&BasisKey, i64)> {
        match self {
            BasisKey::Loop(inner, i) => Some((inner, *i)),
            _ => None,
        }
    }

    /// True for the keys that are identically zero (`E[0,0]`, possibly looped).
    pub fn is_null(&self) -> bool {
        match self {
            BasisKey::E(0, 0) => true,
            BasisKey::Loop(inner, _) => inner.is_null(),
            _ => false,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::E(k, l) => write!(f, "E[{k},{l}]"),
            BasisKey::Eij(m, n) => write!(f, "Eij[{m},{n}]"),
            BasisKey::G(a, m) => write!(f, "G[{a},{m}]"),
            BasisKey::Loop(inner, i) => write!(f, "({inner})@t^{i}"),
            BasisKey::C1 => write!(f, "c1"),
            BasisKey::C2 => write!(f, "c2"),
            BasisKey::K1 => write!(f, "K1"),
            BasisKey::K2 => write!(f, "K2"),
        }
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type LieElem = LinComb<BasisKey>;

/// The element for a single key; `E[0,0]` (and its loops) normalize to zero.
pub fn key_elem(key: BasisKey) -> LieElem {
    if key.is_null() {
        LieElem::new()
    } else {
        LieElem::basis(key)
    }
}

/// `c · key` with the same normalization as [`key_elem`].
pub fn key_term(key: BasisKey, c: QLaurent) -> LieElem {
    if key.is_null() {
        LieElem::new()
    } else {
        LieElem::term(key, c)
    }
}

pub type BracketRule = fn(&BasisKey, &BasisKey) -> LieElem;
pub type ScalarRule = fn(&BasisKey, &BasisKey) -> QLaurent;
pub type KeySampler = fn(&mut dyn RngCore, i64) -> BasisKey;

/// A named algebra: structure constants, optional invariant form and
/// optional 2-cocycle, all as pure functions of key pairs.
#[derive(Clone, Copy)]
pub struct AlgebraSpec {
    pub name: &'static str,
    pub accepts: fn(&BasisKey) -> bool,
    pub is_central: fn(&BasisKey) -> bool,
    pub bracket_rule: BracketRule,
    pub form_rule: Option<ScalarRule>,
    pub cocycle_rule: Option<ScalarRule>,
    pub key_sampler: KeySampler,
    /// All non-null keys with every index in `[-w, w]`.
    pub enumerate: fn(i64) -> Vec<BasisKey>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({})", self.name)
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    pub fn lookup(name: &str) -> Result<AlgebraSpec> {
        CATALOGUE
            .iter()
            .chain(DIRECT_SUMS.iter())
            .find(|a| a.name == name)
            .copied()
            .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
    }

    pub fn check_key(&self, key: &BasisKey) -> Result<()> {
        if (self.accepts)(key) {
            Ok(())
        } else {
            Err(Error::KeyKind {
                algebra: self.name.to_string(),
                key: key.to_string(),
            })
        }
    }

    pub fn check_elem(&self, x: &LieElem) -> Result<()> {
        x.keys().try_for_each(|k| self.check_key(k))
    }

    pub fn sample_key(&self, rng: &mut dyn RngCore, w: i64) -> BasisKey {
        (self.key_sampler)(rng, w)
    }
}

/// The seven instances of the construction, in a fixed order.
pub const CATALOGUE: [AlgebraSpec; 7] = [VQ, GL_INF, A, A_STAR, HAT_A, HAT_A_STAR, TILDE_A];

/// Direct sums `g ⊕ ℂK1` used as the domains of the trivializing isomorphisms.
pub const DIRECT_SUMS: [AlgebraSpec; 2] = [A_PLUS_K1, HAT_A_PLUS_K1];

fn delta(a: i64, b: i64) -> bool {
    a == b
}

fn rand_idx(rng: &mut dyn RngCore, w: i64) -> i64 {
    rng.gen_range(-w..=w)
}

// ---------------------------------------------------------------- vq

fn vq_accepts(k: &BasisKey) -> bool {
    matches!(k, BasisKey::E(a, b) if (*a, *b) != (0, 0)) || matches!(k, BasisKey::C1 | BasisKey::C2)
}

fn vq_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let (BasisKey::E(k, l), BasisKey::E(r, s)) = (x, y) else {
        return LieElem::new();
    };
    let (k, l, r, s) = (*k, *l, *r, *s);
    let e = r * l - s * k;
    let mut out = key_term(BasisKey::E(k + r, l + s), QLaurent::q_diff(e, -e));
    if k == -r && l == -s {
        out.add_term(BasisKey::C1, QLaurent::from_int(k));
        out.add_term(BasisKey::C2, QLaurent::from_int(l));
    }
    out
}

fn vq_sample(rng: &mut dyn RngCore, w: i64) -> BasisKey {
    match rng.gen_range(0..16) {
        0 => BasisKey::C1,
        1 => BasisKey::C2,
        _ => loop {
            let (k, l) = (rand_idx(rng, w), rand_idx(rng, w));
            if (k, l) != (0, 0) {
                return BasisKey::E(k, l);
            }
        },
    }
}

fn vq_enumerate(w: i64) -> Vec<BasisKey> {
    let mut out: Vec<BasisKey> = grid2(w)
        .filter(|&(k, l)| (k, l) != (0, 0))
        .map(|(k, l)| BasisKey::E(k, l))
        .collect();
    out.extend([BasisKey::C1, BasisKey::C2]);
    out
}

pub const VQ: AlgebraSpec = AlgebraSpec {
    name: "vq",
    accepts: vq_accepts,
    is_central: |k| matches!(k, BasisKey::C1 | BasisKey::C2),
    bracket_rule: vq_bracket,
    form_rule: None,
    cocycle_rule: None,
    key_sampler: vq_sample,
    enumerate: vq_enumerate,
};

fn grid2(w: i64) -> impl Iterator<Item = (i64, i64)> {
    (-w..=w).flat_map(move |a| (-w..=w).map(move |b| (a, b)))
}

// ---------------------------------------------------------------- gl_∞

fn gl_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let (BasisKey::Eij(m, n), BasisKey::Eij(p, q)) = (x, y) else {
        return LieElem::new();
    };
    let mut out = LieElem::new();
    if n == p {
        out.add_term(BasisKey::Eij(*m, *q), QLaurent::one());
    }
    if q == m {
        out.add_term(BasisKey::Eij(*p, *n), QLaurent::from_int(-1));
    }
    out
}

/// Trace form `tr(E_{m,n} E_{p,q}) = δ_{m,q} δ_{n,p}`.
pub fn gl_form(x: &BasisKey, y: &BasisKey) -> QLaurent {
    match (x, y) {
        (BasisKey::Eij(m, n), BasisKey::Eij(p, q)) if m == q && n == p => QLaurent::one(),
        _ => QLaurent::zero(),
    }
}

/// `ψ(E_{m,n}, E_{n,m}) = 1 = -ψ(E_{n,m}, E_{m,n})` for `m ≤ 0 < n`, zero otherwise.
pub fn gl_cocycle(x: &BasisKey, y: &BasisKey) -> QLaurent {
    match (x, y) {
        (BasisKey::Eij(m, n), BasisKey::Eij(p, q)) if m == q && n == p => {
            if *m <= 0 && *n >= 1 {
                QLaurent::one()
            } else if *n <= 0 && *m >= 1 {
                QLaurent::from_int(-1)
            } else {
                QLaurent::zero()
            }
        }
        _ => QLaurent::zero(),
    }
}

pub const GL_INF: AlgebraSpec = AlgebraSpec {
    name: "gl-inf",
    accepts: |k| matches!(k, BasisKey::Eij(..)),
    is_central: |_| false,
    bracket_rule: gl_bracket,
    form_rule: Some(gl_form),
    cocycle_rule: Some(gl_cocycle),
    key_sampler: |rng, w| BasisKey::Eij(rand_idx(rng, w), rand_idx(rng, w)),
    enumerate: |w| grid2(w).map(|(m, n)| BasisKey::Eij(m, n)).collect(),
};

// ---------------------------------------------------------------- 𝒜

/// `[G_{α,m}, G_{β,n}] = δ_{α+β,m-n} G_{α+β,α+n} - δ_{α+β,n-m} G_{α+β,n-α}`.
pub fn a_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let (BasisKey::G(al, m), BasisKey::G(be, n)) = (x, y) else {
        return LieElem::new();
    };
    let (al, m, be, n) = (*al, *m, *be, *n);
    let mut out = LieElem::new();
    if delta(al + be, m - n) {
        out.add_term(BasisKey::G(al + be, al + n), QLaurent::one());
    }
    if delta(al + be, n - m) {
        out.add_term(BasisKey::G(al + be, n - al), QLaurent::from_int(-1));
    }
    out
}

/// `⟨G_{α,m}, G_{β,n}⟩ = δ_{α+β,0} δ_{m,n}`; zero against anything else.
pub fn a_form(x: &BasisKey, y: &BasisKey) -> QLaurent {
    match (x, y) {
        (BasisKey::G(al, m), BasisKey::G(be, n)) if al + be == 0 && m == n => QLaurent::one(),
        _ => QLaurent::zero(),
    }
}

/// `ψ(G_{α,m}, G_{β,n}) = α δ_{α+β,0} δ_{m,n}`.
pub fn a_cocycle(x: &BasisKey, y: &BasisKey) -> QLaurent {
    match (x, y) {
        (BasisKey::G(al, m), BasisKey::G(be, n)) if al + be == 0 && m == n => {
            QLaurent::from_int(*al)
        }
        _ => QLaurent::zero(),
    }
}

/// `G_{α,m} ↦ E_{m+α,m-α}`.
pub fn g_to_eij(alpha: i64, m: i64) -> BasisKey {
    BasisKey::Eij(m + alpha, m - alpha)
}

/// Inverse of [`g_to_eij`]; `E_{m,n}` lies in `𝒜` only when `m + n` is even.
pub fn eij_to_g(m: i64, n: i64) -> Result<BasisKey> {
    if (m + n).rem_euclid(2) != 0 {
        return Err(Error::KeyKind {
            algebra: "A".into(),
            key: BasisKey::Eij(m, n).to_string(),
        });
    }
    Ok(BasisKey::G((m - n) / 2, (m + n) / 2))
}

fn g_sample(rng: &mut dyn RngCore, w: i64) -> BasisKey {
    BasisKey::G(rand_idx(rng, w), rand_idx(rng, w))
}

fn g_enumerate(w: i64) -> Vec<BasisKey> {
    grid2(w).map(|(a, m)| BasisKey::G(a, m)).collect()
}

pub const A: AlgebraSpec = AlgebraSpec {
    name: "A",
    accepts: |k| matches!(k, BasisKey::G(..)),
    is_central: |_| false,
    bracket_rule: a_bracket,
    form_rule: Some(a_form),
    cocycle_rule: Some(a_cocycle),
    key_sampler: g_sample,
    enumerate: g_enumerate,
};

// ---------------------------------------------------------------- 𝒜* = 𝒜 ⊕ ℂK1 via ψ

/// `[a + λK1, b + μK1] = [a,b] + ψ(a,b) K1`.
pub fn a_star_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let mut out = a_bracket(x, y);
    out.add_term(BasisKey::K1, a_cocycle(x, y));
    out
}

fn g_or_k1_sample(rng: &mut dyn RngCore, w: i64) -> BasisKey {
    if rng.gen_range(0..12) == 0 {
        BasisKey::K1
    } else {
        g_sample(rng, w)
    }
}

fn g_and_k1_enumerate(w: i64) -> Vec<BasisKey> {
    let mut out = g_enumerate(w);
    out.push(BasisKey::K1);
    out
}

pub const A_STAR: AlgebraSpec = AlgebraSpec {
    name: "A-star",
    accepts: |k| matches!(k, BasisKey::G(..) | BasisKey::K1),
    is_central: |k| matches!(k, BasisKey::K1),
    bracket_rule: a_star_bracket,
    form_rule: Some(a_form),
    cocycle_rule: None,
    key_sampler: g_or_k1_sample,
    enumerate: g_and_k1_enumerate,
};

pub const A_PLUS_K1: AlgebraSpec = AlgebraSpec {
    name: "A-plus-K1",
    accepts: |k| matches!(k, BasisKey::G(..) | BasisKey::K1),
    is_central: |k| matches!(k, BasisKey::K1),
    bracket_rule: a_bracket,
    form_rule: None,
    cocycle_rule: None,
    key_sampler: g_or_k1_sample,
    enumerate: g_and_k1_enumerate,
};

// ---------------------------------------------------------------- affinizations

/// `x ⊗ t^i` extended linearly; central `K2` is not looped.
pub fn tensor_t(x: &LieElem, i: i64) -> LieElem {
    x.map_keys(|k| key_elem(BasisKey::loop_of(k.clone(), i)))
}

fn loop_g(k: &BasisKey) -> bool {
    matches!(k, BasisKey::Loop(inner, _) if matches!(**inner, BasisKey::G(..)))
}

fn loop_g_or_k1(k: &BasisKey) -> bool {
    matches!(k, BasisKey::Loop(inner, _) if matches!(**inner, BasisKey::G(..) | BasisKey::K1))
}

/// `[a⊗t^i, b⊗t^j] = [a,b]⊗t^{i+j} + i⟨a,b⟩δ_{i+j,0} K2`.
pub fn hat_a_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let (Some((a, i)), Some((b, j))) = (x.as_loop(), y.as_loop()) else {
        return LieElem::new();
    };
    let mut out = tensor_t(&a_bracket(a, b), i + j);
    if i + j == 0 {
        out.add_term(BasisKey::K2, &QLaurent::from_int(i) * &a_form(a, b));
    }
    out
}

/// `[a*⊗t^i, b*⊗t^j] = [a*,b*]⊗t^{i+j} + i⟨a*,b*⟩δ_{i+j,0} K2` over `𝒜*`.
pub fn hat_a_star_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let (Some((a, i)), Some((b, j))) = (x.as_loop(), y.as_loop()) else {
        return LieElem::new();
    };
    let mut out = tensor_t(&a_star_bracket(a, b), i + j);
    if i + j == 0 {
        out.add_term(BasisKey::K2, &QLaurent::from_int(i) * &a_form(a, b));
    }
    out
}

/// `[a⊗t^i, b⊗t^j] = [a,b]⊗t^{i+j} + ψ(a,b)δ_{i+j+1,0} K1 + i⟨a,b⟩δ_{i+j,0} K2`.
pub fn tilde_a_bracket(x: &BasisKey, y: &BasisKey) -> LieElem {
    let mut out = hat_a_bracket(x, y);
    if let (Some((a, i)), Some((b, j))) = (x.as_loop(), y.as_loop()) {
        if i + j + 1 == 0 {
            out.add_term(BasisKey::K1, a_cocycle(a, b));
        }
    }
    out
}

/// `ψ₂(a⊗t^i, b⊗t^j) = ψ(a,b) δ_{i+j+1,0}`, zero on `K2`.
pub fn hat_a_cocycle(x: &BasisKey, y: &BasisKey) -> QLaurent {
    match (x.as_loop(), y.as_loop()) {
        (Some((a, i)), Some((b, j))) if i + j + 1 == 0 => a_cocycle(a, b),
        _ => QLaurent::zero(),
    }
}

fn loop_sample(rng: &mut dyn RngCore, w: i64, extra: &[BasisKey], k1_loops: bool) -> BasisKey {
    let roll = rng.gen_range(0..16usize);
    if roll < extra.len() {
        return extra[roll].clone();
    }
    let inner = if k1_loops && roll == 15 {
        BasisKey::K1
    } else {
        g_sample(rng, w)
    };
    BasisKey::loop_of(inner, rand_idx(rng, w))
}

fn loop_enumerate(w: i64, extra: &[BasisKey], k1_loops: bool) -> Vec<BasisKey> {
    let mut out: Vec<BasisKey> = (-w..=w)
        .flat_map(|i| g_enumerate(w).into_iter().map(move |g| BasisKey::loop_of(g, i)))
        .collect();
    if k1_loops {
        out.extend((-w..=w).map(|i| BasisKey::loop_of(BasisKey::K1, i)));
    }
    out.extend(extra.iter().cloned());
    out
}

pub const HAT_A: AlgebraSpec = AlgebraSpec {
    name: "hat-A",
    accepts: |k| loop_g(k) || matches!(k, BasisKey::K2),
    is_central: |k| matches!(k, BasisKey::K2),
    bracket_rule: hat_a_bracket,
    form_rule: None,
    cocycle_rule: Some(hat_a_cocycle),
    key_sampler: |rng, w| loop_sample(rng, w, &[BasisKey::K2], false),
    enumerate: |w| loop_enumerate(w, &[BasisKey::K2], false),
};

pub const HAT_A_STAR: AlgebraSpec = AlgebraSpec {
    name: "hat-A-star",
    accepts: |k| loop_g_or_k1(k) || matches!(k, BasisKey::K2),
    is_central: |k| {
        matches!(k, BasisKey::K2)
            || matches!(k, BasisKey::Loop(inner, _) if matches!(**inner, BasisKey::K1))
    },
    bracket_rule: hat_a_star_bracket,
    form_rule: None,
    cocycle_rule: None,
    key_sampler: |rng, w| loop_sample(rng, w, &[BasisKey::K2], true),
    enumerate: |w| loop_enumerate(w, &[BasisKey::K2], true),
};

pub const TILDE_A: AlgebraSpec = AlgebraSpec {
    name: "tilde-A",
    accepts: |k| loop_g(k) || matches!(k, BasisKey::K1 | BasisKey::K2),
    is_central: |k| matches!(k, BasisKey::K1 | BasisKey::K2),
    bracket_rule: tilde_a_bracket,
    form_rule: None,
    cocycle_rule: None,
    key_sampler: |rng, w| loop_sample(rng, w, &[BasisKey::K1, BasisKey::K2], false),
    enumerate: |w| loop_enumerate(w, &[BasisKey::K1, BasisKey::K2], false),
};

pub const HAT_A_PLUS_K1: AlgebraSpec = AlgebraSpec {
    name: "hat-A-plus-K1",
    accepts: |k| loop_g(k) || matches!(k, BasisKey::K1 | BasisKey::K2),
    is_central: |k| matches!(k, BasisKey::K1 | BasisKey::K2),
    bracket_rule: hat_a_bracket,
    form_rule: None,
    cocycle_rule: None,
    key_sampler: |rng, w| loop_sample(rng, w, &[BasisKey::K1, BasisKey::K2], false),
    enumerate: |w| loop_enumerate(w, &[BasisKey::K1, BasisKey::K2], false),
};

// ---------------------------------------------------------------- generic engine

/// Key-level bracket with central keys short-circuited.
pub fn bracket_keys(alg: &AlgebraSpec, x: &BasisKey, y: &BasisKey) -> LieElem {
    if (alg.is_central)(x) || (alg.is_central)(y) {
        return LieElem::new();
    }
    (alg.bracket_rule)(x, y)
}

/// Bilinear extension of the algebra's bracket rule.
pub fn bracket(alg: &AlgebraSpec, x: &LieElem, y: &LieElem) -> Result<LieElem> {
    alg.check_elem(x)?;
    alg.check_elem(y)?;
    Ok(bracket_unchecked(alg, x, y))
}

pub(crate) fn bracket_unchecked(alg: &AlgebraSpec, x: &LieElem, y: &LieElem) -> LieElem {
    let mut out = LieElem::new();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let br = bracket_keys(alg, a, b);
            if !br.is_zero() {
                out.add_scaled(&br, &(c * d));
            }
        }
    }
    out
}

/// Bilinear extension of a scalar-valued key rule.
pub fn bilinear(rule: ScalarRule, x: &LieElem, y: &LieElem) -> QLaurent {
    let mut acc = QLaurent::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let v = rule(a, b);
            if !v.is_zero() {
                acc += &(&(c * d) * &v);
            }
        }
    }
    acc
}

/// The invariant form of `alg`, extended bilinearly.
pub fn form(alg: &AlgebraSpec, x: &LieElem, y: &LieElem) -> Result<QLaurent> {
    let rule = alg.form_rule.ok_or_else(|| Error::NoForm(alg.name.to_string()))?;
    alg.check_elem(x)?;
    alg.check_elem(y)?;
    Ok(bilinear(rule, x, y))
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] == 0`.
pub fn check_jacobi(alg: &AlgebraSpec, x: &LieElem, y: &LieElem, z: &LieElem) -> bool {
    jacobi_sum(alg, x, y, z).is_zero()
}

pub fn jacobi_sum(alg: &AlgebraSpec, x: &LieElem, y: &LieElem, z: &LieElem) -> LieElem {
    let t1 = bracket_unchecked(alg, x, &bracket_unchecked(alg, y, z));
    let t2 = bracket_unchecked(alg, y, &bracket_unchecked(alg, z, x));
    let t3 = bracket_unchecked(alg, z, &bracket_unchecked(alg, x, y));
    t1.plus(&t2).plus(&t3)
}

/// `[x,y] + [y,x] == 0`.
pub fn check_antisymmetry(alg: &AlgebraSpec, x: &LieElem, y: &LieElem) -> bool {
    bracket_unchecked(alg, x, y)
        .plus(&bracket_unchecked(alg, y, x))
        .is_zero()
}

/// `⟨[x,y],z⟩ == ⟨x,[y,z]⟩`. Algebras without a form fail the check.
pub fn check_invariance(alg: &AlgebraSpec, x: &LieElem, y: &LieElem, z: &LieElem) -> bool {
    let Some(rule) = alg.form_rule else {
        return false;
    };
    let lhs = bilinear(rule, &bracket_unchecked(alg, x, y), z);
    let rhs = bilinear(rule, x, &bracket_unchecked(alg, y, z));
    lhs == rhs
}

/// `⟨x,y⟩ == ⟨y,x⟩`.
pub fn check_form_symmetry(alg: &AlgebraSpec, x: &LieElem, y: &LieElem) -> bool {
    match alg.form_rule {
        Some(rule) => bilinear(rule, x, y) == bilinear(rule, y, x),
        None => false,
    }
}

/// `σ_r(G_{α,m}) = G_{α,m+r}`, `σ_r(K1) = K1`, extended to loops so that it
/// also acts as `τ_r` on the affinizations.
pub fn sigma(r: i64, key: &BasisKey) -> BasisKey {
    match key {
        BasisKey::G(a, m) => BasisKey::G(*a, m + r),
        BasisKey::Loop(inner, i) => BasisKey::loop_of(sigma(r, inner), *i),
        other => other.clone(),
    }
}

pub fn sigma_elem(r: i64, x: &LieElem) -> LieElem {
    x.map_keys(|k| key_elem(sigma(r, k)))
}

/// Linear embedding `𝒜 → gl_∞`.
pub fn embed_a_in_gl(x: &LieElem) -> LieElem {
    x.map_keys(|k| match k {
        BasisKey::G(a, m) => key_elem(g_to_eij(*a, *m)),
        _ => LieElem::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: i64, l: i64) -> LieElem {
        key_elem(BasisKey::E(k, l))
    }
    fn g(a: i64, m: i64) -> LieElem {
        key_elem(BasisKey::G(a, m))
    }
    fn gt(a: i64, m: i64, i: i64) -> LieElem {
        key_elem(BasisKey::loop_of(BasisKey::G(a, m), i))
    }

    #[test]
    fn e00_is_zero() {
        assert!(e(0, 0).is_zero());
        assert!(gt(0, 0, 1).len() == 1);
        assert!(key_elem(BasisKey::loop_of(BasisKey::E(0, 0), 2)).is_zero());
    }

    #[test]
    fn vq_bracket_examples() {
        let b = bracket(&VQ, &e(1, 0), &e(0, 1)).unwrap();
        assert_eq!(b, key_term(BasisKey::E(1, 1), QLaurent::q_diff(-1, 1)));

        let b = bracket(&VQ, &e(1, 2), &e(-1, -2)).unwrap();
        let mut want = key_elem(BasisKey::C1);
        want.add_term(BasisKey::C2, QLaurent::from_int(2));
        assert_eq!(b, want);
    }

    #[test]
    fn a_bracket_matches_gl() {
        let b = bracket(&A, &g(1, 2), &g(0, 1)).unwrap();
        assert_eq!(b, g(1, 2));
        let bg = bracket(&GL_INF, &key_elem(BasisKey::Eij(3, 1)), &key_elem(BasisKey::Eij(1, 1))).unwrap();
        assert_eq!(bg, key_elem(BasisKey::Eij(3, 1)));
        assert_eq!(embed_a_in_gl(&b), bg);
    }

    #[test]
    fn tilde_a_bracket_example() {
        let b = bracket(&TILDE_A, &gt(1, 0, 2), &gt(-1, 0, -3)).unwrap();
        let mut want = gt(0, 1, -1).minus(&gt(0, -1, -1));
        want.add_term(BasisKey::K1, QLaurent::one());
        assert_eq!(b, want);
    }

    #[test]
    fn form_examples() {
        assert!(form(&A, &g(1, 2), &g(-1, 2)).unwrap().is_one());
        assert!(form(&A, &g(1, 2), &g(-1, 3)).unwrap().is_zero());
        assert!(form(&A_STAR, &key_elem(BasisKey::K1), &g(0, 0)).unwrap().is_zero());
        assert!(matches!(form(&VQ, &e(1, 0), &e(0, 1)), Err(Error::NoForm(_))));
    }

    #[test]
    fn key_kind_mismatch() {
        assert!(matches!(bracket(&VQ, &g(1, 0), &e(1, 0)), Err(Error::KeyKind { .. })));
        assert!(eij_to_g(1, 2).is_err());
        assert_eq!(eij_to_g(3, 1).unwrap(), BasisKey::G(1, 2));
    }

    #[test]
    fn jacobi_examples() {
        assert!(check_jacobi(&VQ, &e(1, 1), &e(2, -1), &e(-3, 0)));
        assert!(check_jacobi(&VQ, &e(1, 1), &e(1, 1), &e(2, 3)));
        assert!(check_jacobi(&TILDE_A, &gt(1, 0, 1), &gt(-1, 0, -1), &gt(0, 1, 0)));
    }

    #[test]
    fn invariance_examples() {
        assert!(check_invariance(&A, &g(1, 2), &g(0, 1), &g(-1, 2)));
        let lhs = form(&A, &bracket(&A, &g(1, 2), &g(0, 1)).unwrap(), &g(-1, 2)).unwrap();
        assert!(lhs.is_one());
        assert!(check_invariance(&A, &g(2, 0), &g(-1, 1), &g(-1, 1)));
        assert!(check_invariance(&A, &g(4, 4), &g(3, -2), &g(1, 1)));
    }

    #[test]
    fn vq_delta_term() {
        for k in -4..=4 {
            for l in -4..=4 {
                if (k, l) == (0, 0) {
                    continue;
                }
                let b = bracket(&VQ, &e(k, l), &e(-k, -l)).unwrap();
                let mut want = LieElem::new();
                want.add_term(BasisKey::C1, QLaurent::from_int(k));
                want.add_term(BasisKey::C2, QLaurent::from_int(l));
                assert_eq!(b, want);
            }
        }
    }

    #[test]
    fn catalogue_lookup() {
        for alg in CATALOGUE {
            assert_eq!(AlgebraSpec::lookup(alg.name).unwrap(), alg);
        }
        assert!(AlgebraSpec::lookup("sl2").is_err());
    }
}
