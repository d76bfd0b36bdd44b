//! Cocycles, trivializing maps, the isomorphisms `f`, `f₂`, and the covariant
//! algebra of the loop algebra over `𝒜*` with its isomorphism to the
//! q-difference algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::liealg::{
    a_cocycle, bracket_unchecked, gl_cocycle, hat_a_cocycle, key_elem,
    sigma_elem, AlgebraSpec, BasisKey, LieElem, ScalarRule, A, A_PLUS_K1, A_STAR, GL_INF, HAT_A,
    HAT_A_PLUS_K1, HAT_A_STAR, TILDE_A,
};
use crate::parse::KeySyntax;
use crate::qcoeff::{rat, QLaurent};

/// A skew bilinear form on a home algebra, given on key pairs.
#[derive(Clone, Copy, Debug)]
pub struct Cocycle {
    pub name: &'static str,
    pub home: AlgebraSpec,
    pub rule: ScalarRule,
}

impl Cocycle {
    pub fn eval(&self, x: &LieElem, y: &LieElem) -> QLaurent {
        crate::liealg::bilinear(self.rule, x, y)
    }
}

/// `ψ(G_{α,m}, G_{β,n}) = α δ_{α+β,0} δ_{m,n}` on `𝒜`.
pub const PSI_A: Cocycle = Cocycle {
    name: "psi",
    home: A,
    rule: a_cocycle,
};

/// The cocycle of `gl_∞`.
pub const PSI_GL: Cocycle = Cocycle {
    name: "psi-gl",
    home: GL_INF,
    rule: gl_cocycle,
};

/// `ψ₂(a⊗t^i, b⊗t^j) = ψ(a,b) δ_{i+j+1,0}` on the affinization.
pub const PSI_2: Cocycle = Cocycle {
    name: "psi2",
    home: HAT_A,
    rule: hat_a_cocycle,
};

pub fn cocycle_by_name(name: &str) -> Result<Cocycle> {
    [PSI_A, PSI_GL, PSI_2]
        .into_iter()
        .find(|c| c.name == name || c.home.name == name)
        .ok_or_else(|| Error::Param(format!("no cocycle named `{name}`")))
}

/// Skew-symmetry on all three pairs plus the cyclic cocycle identity.
pub fn check_cocycle(psi: &Cocycle, x: &LieElem, y: &LieElem, z: &LieElem) -> bool {
    let skew = |a: &LieElem, b: &LieElem| (psi.eval(a, b) + psi.eval(b, a)).is_zero();
    if !(skew(x, y) && skew(y, z) && skew(z, x) && skew(x, x)) {
        return false;
    }
    let br = |a: &LieElem, b: &LieElem| bracket_unchecked(&psi.home, a, b);
    let sum = psi.eval(x, &br(y, z)) + psi.eval(y, &br(z, x)) + psi.eval(z, &br(x, y));
    sum.is_zero()
}

/// A linear functional with `ψ(x,y) = μ([x,y])`.
#[derive(Clone, Copy, Debug)]
pub struct TrivializingMap {
    pub name: &'static str,
    pub home: AlgebraSpec,
    pub mu: fn(&BasisKey) -> QLaurent,
}

impl TrivializingMap {
    pub fn eval(&self, x: &LieElem) -> QLaurent {
        x.eval_linear(self.mu)
    }
}

fn half(m: i64) -> QLaurent {
    QLaurent::from_rational(rat(m, 2))
}

/// `μ(G_{α,m}) = ½ δ_{α,0} m`.
pub fn mu_a(k: &BasisKey) -> QLaurent {
    match k {
        BasisKey::G(0, m) => half(*m),
        _ => QLaurent::zero(),
    }
}

/// `μ₂(G_{α,m}⊗t^i) = ½ δ_{α,0} δ_{i+1,0} m`, zero on `K2`.
pub fn mu_2(k: &BasisKey) -> QLaurent {
    match k.as_loop() {
        Some((BasisKey::G(0, m), -1)) => half(*m),
        _ => QLaurent::zero(),
    }
}

pub const MU_A: TrivializingMap = TrivializingMap {
    name: "mu",
    home: A,
    mu: mu_a,
};

pub const MU_2: TrivializingMap = TrivializingMap {
    name: "mu2",
    home: HAT_A,
    mu: mu_2,
};

/// `ψ(x,y) = μ([x,y])` exactly.
pub fn check_trivial(psi: &Cocycle, mu: &TrivializingMap, x: &LieElem, y: &LieElem) -> bool {
    psi.eval(x, y) == mu.eval(&bracket_unchecked(&psi.home, x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Which trivializing isomorphism to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `f: 𝒜 ⊕ ℂK1 → 𝒜*`.
    A,
    /// `f₂: Â ⊕ ℂK1 → Ã`.
    HatA,
}

impl Extension {
    pub fn domain(self) -> AlgebraSpec {
        match self {
            Extension::A => A_PLUS_K1,
            Extension::HatA => HAT_A_PLUS_K1,
        }
    }

    pub fn codomain(self) -> AlgebraSpec {
        match self {
            Extension::A => A_STAR,
            Extension::HatA => TILDE_A,
        }
    }

    pub fn mu(self) -> TrivializingMap {
        match self {
            Extension::A => MU_A,
            Extension::HatA => MU_2,
        }
    }
}

/// `(a, λK1) ↦ a + (μ(a) + λ)K1`, or its inverse `a + λK1 ↦ (a, (λ - μ(a))K1)`.
pub fn extension_iso_f(ext: Extension, dir: Direction, x: &LieElem) -> Result<LieElem> {
    let alg = match dir {
        Direction::Forward => ext.domain(),
        Direction::Inverse => ext.codomain(),
    };
    alg.check_elem(x)?;
    let m = ext.mu().eval(x);
    let mut out = x.clone();
    match dir {
        Direction::Forward => out.add_term(BasisKey::K1, m),
        Direction::Inverse => out.add_term(BasisKey::K1, -m),
    }
    Ok(out)
}

/// `f([u,v]) = [f(u), f(v)]` with the direct-sum bracket on the left.
pub fn check_extension_hom(ext: Extension, u: &LieElem, v: &LieElem) -> Result<bool> {
    let lhs = extension_iso_f(ext, Direction::Forward, &bracket_unchecked(&ext.domain(), u, v))?;
    let fu = extension_iso_f(ext, Direction::Forward, u)?;
    let fv = extension_iso_f(ext, Direction::Forward, v)?;
    Ok(lhs == bracket_unchecked(&ext.codomain(), &fu, &fv))
}

// ---------------------------------------------------------------- covariant algebra

/// Canonical basis of the covariant algebra: `Ḡ(α,m)` is the class of
/// `G_{α,0}⊗t^m`, `c1bar` the class of `K1⊗1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CovKey {
    Gbar(i64, i64),
    C1bar,
    K2,
}

impl fmt::Display for CovKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovKey::Gbar(a, m) => write!(f, "Gbar[{a},{m}]"),
            CovKey::C1bar => write!(f, "c1bar"),
            CovKey::K2 => write!(f, "K2"),
        }
    }
}

impl fmt::Debug for CovKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl KeySyntax for CovKey {
    fn atom(name: &str, args: &[i64]) -> Option<std::result::Result<LinComb<Self>, String>> {
        let key = match (name, args) {
            ("Gbar", [a, m]) => CovKey::Gbar(*a, *m),
            ("c1bar", []) => CovKey::C1bar,
            ("K2", []) => CovKey::K2,
            ("Gbar", _) => return Some(Err("`Gbar` takes two indices".into())),
            ("c1bar" | "K2", _) => return Some(Err(format!("`{name}` takes no indices"))),
            _ => return None,
        };
        Some(Ok(LinComb::basis(key)))
    }
}

pub type CovariantElem = LinComb<CovKey>;

fn reduce_key(k: &BasisKey) -> Result<CovariantElem> {
    match k {
        BasisKey::K2 => Ok(CovariantElem::basis(CovKey::K2)),
        BasisKey::Loop(inner, m) => match **inner {
            BasisKey::G(a, p) => Ok(CovariantElem::term(
                CovKey::Gbar(a, *m),
                QLaurent::q_pow(-p * m),
            )),
            BasisKey::K1 if *m == 0 => Ok(CovariantElem::basis(CovKey::C1bar)),
            BasisKey::K1 => Ok(CovariantElem::new()),
            _ => Err(kind_err(k)),
        },
        _ => Err(kind_err(k)),
    }
}

fn kind_err(k: &BasisKey) -> Error {
    Error::KeyKind {
        algebra: "hat-A-star".into(),
        key: k.to_string(),
    }
}

/// Canonical form of a loop element: `G_{α,p}⊗t^m ↦ q^{-pm} Ḡ(α,m)`,
/// `K1⊗t^m ↦ δ_{m,0} c1bar`, `K2 ↦ K2`.
pub fn covariant_reduce(x: &LieElem) -> Result<CovariantElem> {
    let mut out = CovariantElem::new();
    for (k, c) in x.iter() {
        out.add_scaled(&reduce_key(k)?, c);
    }
    Ok(out)
}

/// The section `Ḡ(α,m) ↦ G_{α,0}⊗t^m`, `c1bar ↦ K1⊗1`, `K2 ↦ K2`.
pub fn covariant_lift(x: &CovariantElem) -> LieElem {
    x.map_keys(|k| {
        key_elem(match k {
            CovKey::Gbar(a, m) => BasisKey::loop_of(BasisKey::G(*a, 0), *m),
            CovKey::C1bar => BasisKey::loop_of(BasisKey::K1, 0),
            CovKey::K2 => BasisKey::K2,
        })
    })
}

/// Values of `r` for which `[σ_r(G_{α,p}), G_{β,p'}]` in `𝒜*` or the form
/// term can be nonzero.
fn contributing_r(alpha: i64, p: i64, beta: i64, pp: i64) -> Vec<i64> {
    let mut rs = vec![alpha + beta - p + pp, pp - p - alpha - beta, pp - p];
    rs.sort_unstable();
    rs.dedup();
    rs
}

fn sum_bracket_keys(x: &BasisKey, y: &BasisKey) -> CovariantElem {
    let (Some((BasisKey::G(al, p), m)), Some((BasisKey::G(be, pp), _))) = (x.as_loop(), y.as_loop())
    else {
        return CovariantElem::new();
    };
    let mut out = CovariantElem::new();
    let yx = key_elem(y.clone());
    for r in contributing_r(*al, *p, *be, *pp) {
        let sx = sigma_elem(r, &key_elem(x.clone()));
        let br = bracket_unchecked(&HAT_A_STAR, &sx, &yx);
        let red = covariant_reduce(&br).expect("bracket stays in the loop algebra");
        out.add_scaled(&red, &QLaurent::q_pow(m * r));
    }
    out
}

/// Bracket by the defining sum over `r`, evaluated on the lifts.
pub fn covariant_bracket_sum(x: &CovariantElem, y: &CovariantElem) -> CovariantElem {
    let (lx, ly) = (covariant_lift(x), covariant_lift(y));
    let mut out = CovariantElem::new();
    for (a, c) in lx.iter() {
        for (b, d) in ly.iter() {
            out.add_scaled(&sum_bracket_keys(a, b), &(c * d));
        }
    }
    out
}

fn closed_keys(x: &CovKey, y: &CovKey) -> CovariantElem {
    let (CovKey::Gbar(al, m), CovKey::Gbar(be, n)) = (x, y) else {
        return CovariantElem::new();
    };
    let (al, m, be, n) = (*al, *m, *be, *n);
    let e = m * be - n * al;
    let mut out = CovariantElem::new();
    if !(al + be == 0 && m + n == 0) {
        out.add_term(CovKey::Gbar(al + be, m + n), QLaurent::q_diff(e, -e));
    }
    if al + be == 0 && m + n == 0 {
        out.add_term(CovKey::C1bar, QLaurent::from_int(al));
        out.add_term(CovKey::K2, QLaurent::from_int(m));
    }
    out
}

/// Closed form `(q^{mβ-nα} - q^{nα-mβ}) Ḡ(α+β,m+n) + α δ δ c1bar + m δ δ K2`.
pub fn covariant_bracket(x: &CovariantElem, y: &CovariantElem) -> CovariantElem {
    let mut out = CovariantElem::new();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_scaled(&closed_keys(a, b), &(c * d));
        }
    }
    out
}

/// `θ: E_{α,m} ↦ Ḡ(α,m)`, `c1 ↦ c1bar`, `c2 ↦ K2`.
pub fn vq_covariant_iso(x: &LieElem) -> Result<CovariantElem> {
    crate::liealg::VQ.check_elem(x)?;
    Ok(x.map_keys(|k| match k {
        BasisKey::E(a, m) => CovariantElem::basis(CovKey::Gbar(*a, *m)),
        BasisKey::C1 => CovariantElem::basis(CovKey::C1bar),
        BasisKey::C2 => CovariantElem::basis(CovKey::K2),
        _ => CovariantElem::new(),
    }))
}

/// `θ[x,y] = [θx, θy]`, with the right side by the defining sum and by the
/// closed form; both must agree.
pub fn check_theta_hom(x: &LieElem, y: &LieElem) -> Result<bool> {
    let lhs = vq_covariant_iso(&crate::liealg::bracket(&crate::liealg::VQ, x, y)?)?;
    let (tx, ty) = (vq_covariant_iso(x)?, vq_covariant_iso(y)?);
    Ok(lhs == covariant_bracket(&tx, &ty) && lhs == covariant_bracket_sum(&tx, &ty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_lincomb;

    fn g(a: i64, m: i64) -> LieElem {
        key_elem(BasisKey::G(a, m))
    }
    fn gt(a: i64, m: i64, i: i64) -> LieElem {
        key_elem(BasisKey::loop_of(BasisKey::G(a, m), i))
    }
    fn gb(a: i64, m: i64) -> CovariantElem {
        CovariantElem::basis(CovKey::Gbar(a, m))
    }

    #[test]
    fn cocycle_examples() {
        assert!(check_cocycle(&PSI_A, &g(1, 0), &g(-1, 1), &g(0, 1)));
        assert!(check_cocycle(&PSI_A, &g(2, 3), &g(-2, 3), &g(0, 0)));
        assert!(check_cocycle(&PSI_A, &g(2, 3), &g(2, 3), &g(0, 1)));
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(PSI_A.eval(&g(2, 3), &g(-2, 3)), QLaurent::from_int(2));
        assert!(check_trivial(&PSI_A, &MU_A, &g(2, 3), &g(-2, 3)));
        assert!(check_trivial(&PSI_A, &MU_A, &g(1, 1), &g(1, 1)));
        assert!(check_trivial(&PSI_2, &MU_2, &gt(0, 2, -1), &gt(0, 2, 0)));
    }

    #[test]
    fn f_examples() {
        let x = extension_iso_f(Extension::A, Direction::Forward, &g(0, 4)).unwrap();
        let mut want = g(0, 4);
        want.add_term(BasisKey::K1, QLaurent::from_int(2));
        assert_eq!(x, want);
        let mut y = g(1, 0);
        y.add_term(BasisKey::K1, QLaurent::one());
        assert_eq!(extension_iso_f(Extension::A, Direction::Forward, &y).unwrap(), y);
        let back = extension_iso_f(Extension::A, Direction::Inverse, &x).unwrap();
        assert_eq!(back, g(0, 4));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            covariant_reduce(&gt(1, 2, 3)).unwrap(),
            CovariantElem::term(CovKey::Gbar(1, 3), QLaurent::q_pow(-6))
        );
        let k1 = key_elem(BasisKey::loop_of(BasisKey::K1, 5));
        assert!(covariant_reduce(&k1).unwrap().is_zero());
        assert_eq!(covariant_reduce(&gt(4, 0, -2)).unwrap(), gb(4, -2));
        assert!(covariant_reduce(&key_elem(BasisKey::E(1, 1))).is_err());
    }

    #[test]
    fn bracket_examples() {
        let b = covariant_bracket(&gb(1, 1), &gb(-1, -1));
        assert_eq!(b, parse_lincomb::<CovKey>("c1bar + K2").unwrap());
        assert_eq!(covariant_bracket_sum(&gb(1, 1), &gb(-1, -1)), b);
        let b = covariant_bracket_sum(&gb(1, 0), &gb(0, 1));
        assert_eq!(b, CovariantElem::term(CovKey::Gbar(1, 1), QLaurent::q_diff(-1, 1)));
        for m in -3..=3 {
            for n in -3..=3 {
                let want = if m + n == 0 {
                    CovariantElem::term(CovKey::K2, QLaurent::from_int(m))
                } else {
                    CovariantElem::new()
                };
                assert_eq!(covariant_bracket_sum(&gb(0, m), &gb(0, n)), want);
            }
        }
    }

    #[test]
    fn theta_examples() {
        let e = |k, l| key_elem(BasisKey::E(k, l));
        assert!(check_theta_hom(&e(1, 0), &e(0, 1)).unwrap());
        assert!(check_theta_hom(&e(1, 1), &e(-1, -1)).unwrap());
        let mut c = key_elem(BasisKey::C1);
        c.add_term(BasisKey::C2, QLaurent::from_int(2));
        assert_eq!(
            vq_covariant_iso(&c).unwrap(),
            parse_lincomb::<CovKey>("c1bar + 2*K2").unwrap()
        );
    }
}
