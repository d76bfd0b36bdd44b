//! Two-variable formal distributions on finite exponent windows.
//!
//! A [`DistWindow`] stores the coefficients of `x1^a x2^b` for `(a, b)` in a
//! rectangle. Operations that read outside the rectangle (polynomial
//! multiplication, `∂/∂x2`) return the smaller rectangle on which the result
//! is still exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{bracket_unchecked, key_elem, tensor_t, AlgebraSpec, BasisKey, LieElem, A, TILDE_A, VQ};
use crate::lincomb::Linear;
use crate::qcoeff::QLaurent;

/// Inclusive rectangle of exponents `a` (of `x1`) and `b` (of `x2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub a: (i64, i64),
    pub b: (i64, i64),
}

impl Window {
    pub fn new(a: (i64, i64), b: (i64, i64)) -> Self {
        Self { a, b }
    }

    pub fn is_empty(&self) -> bool {
        self.a.0 > self.a.1 || self.b.0 > self.b.1
    }

    pub fn contains(&self, a: i64, b: i64) -> bool {
        (self.a.0..=self.a.1).contains(&a) && (self.b.0..=self.b.1).contains(&b)
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.a.0..=self.a.1).flat_map(move |a| (self.b.0..=self.b.1).map(move |b| (a, b)))
    }

    pub fn intersect(&self, o: &Window) -> Window {
        Window {
            a: (self.a.0.max(o.a.0), self.a.1.min(o.a.1)),
            b: (self.b.0.max(o.b.0), self.b.1.min(o.b.1)),
        }
    }
}

/// Coefficients of a two-variable series, exact on `window`.
#[derive(Clone, PartialEq)]
pub struct DistWindow<C> {
    window: Window,
    coeffs: BTreeMap<(i64, i64), C>,
}

impl<C: Linear> DistWindow<C> {
    pub fn zero(window: Window) -> Self {
        Self {
            window,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_fn(window: Window, mut f: impl FnMut(i64, i64) -> C) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let mut coeffs = BTreeMap::new();
        for (a, b) in window.points() {
            let c = f(a, b);
            if !c.is_zero() {
                coeffs.insert((a, b), c);
            }
        }
        Ok(Self { window, coeffs })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Coefficient of `x1^a x2^b`, or `None` outside the valid window.
    pub fn get(&self, a: i64, b: i64) -> Option<C> {
        if !self.window.contains(a, b) {
            return None;
        }
        Some(self.coeffs.get(&(a, b)).cloned().unwrap_or_else(C::zero))
    }

    fn at(&self, a: i64, b: i64) -> C {
        self.get(a, b).expect("inside window")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.coeffs.iter()
    }

    /// Sum on the common window.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &QLaurent::one())
    }

    pub fn add_scaled(&self, other: &Self, c: &QLaurent) -> Result<Self> {
        let w = self.window.intersect(&other.window);
        Self::from_fn(w, |a, b| {
            let mut x = self.at(a, b);
            x.add_assign_scaled(&other.at(a, b), c);
            x
        })
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (*k, v.scaled(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            window: self.window,
            coeffs,
        }
    }

    /// Multiplication by `x1^da x2^db`.
    pub fn shift(&self, da: i64, db: i64) -> Self {
        Self {
            window: Window::new(
                (self.window.a.0 + da, self.window.a.1 + da),
                (self.window.b.0 + db, self.window.b.1 + db),
            ),
            coeffs: self.coeffs.iter().map(|((a, b), v)| ((a + da, b + db), v.clone())).collect(),
        }
    }

    /// Multiplication by a polynomial in `x1, x2`; the window loses the
    /// polynomial's degree in each variable at its low end.
    pub fn mul_poly(&self, p: &Poly) -> Result<Self> {
        let (d1, d2) = p.degrees();
        let w = Window::new(
            (self.window.a.0 + d1 as i64, self.window.a.1),
            (self.window.b.0 + d2 as i64, self.window.b.1),
        );
        if w.is_empty() {
            return Err(Error::WindowTooSmall(format!(
                "polynomial of bidegree ({d1},{d2}) leaves no interior"
            )));
        }
        Self::from_fn(w, |a, b| {
            let mut acc = C::zero();
            for ((i, j), c) in &p.terms {
                acc.add_assign_scaled(&self.at(a - *i as i64, b - *j as i64), c);
            }
            acc
        })
    }

    /// `x2 ∂/∂x2`.
    pub fn x2_ddx2(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((_, b), _)| *b != 0)
            .map(|((a, b), v)| ((*a, *b), v.scaled(&QLaurent::from_int(*b))))
            .collect();
        Self {
            window: self.window,
            coeffs,
        }
    }

    /// `∂/∂x2`; the window moves down by one in `b`.
    pub fn ddx2(&self) -> Self {
        self.x2_ddx2().shift(0, -1)
    }

    pub fn map<D: Linear>(&self, mut f: impl FnMut(&C) -> D) -> DistWindow<D> {
        DistWindow {
            window: self.window,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }
}

impl DistWindow<QLaurent> {
    /// Scalar series times a fixed element.
    pub fn tensor(&self, x: &LieElem) -> DistWindow<LieElem> {
        self.map(|c| x.scale(c))
    }
}

impl<C: Linear + fmt::Display> fmt::Debug for DistWindow<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistWindow {:?} {{", self.window)?;
        for ((a, b), c) in &self.coeffs {
            write!(f, " x1^{a} x2^{b}: {c};")?;
        }
        write!(f, " }}")
    }
}

/// Polynomial in `x1, x2` with nonnegative exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), QLaurent>,
}

impl Poly {
    pub fn one() -> Self {
        Self {
            terms: [((0, 0), QLaurent::one())].into_iter().collect(),
        }
    }

    /// `x1 - c x2`.
    pub fn linear(c: QLaurent) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), QLaurent::one());
        if !c.is_zero() {
            terms.insert((0, 1), -c);
        }
        Self { terms }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut terms: BTreeMap<(u32, u32), QLaurent> = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            for ((k, l), d) in &o.terms {
                let e = terms.entry((i + k, j + l)).or_default();
                *e += &(c * d);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { terms }
    }

    pub fn degrees(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(d1, d2), (i, j)| (d1.max(*i), d2.max(*j)))
    }
}

// ---------------------------------------------------------------- deltas

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaVariant {
    /// `δ(z) = Σ z^n`.
    Plain,
    /// `x1^{-1} δ(z)`.
    X1invPrefixed,
    /// `x2 ∂/∂x2 δ(z)`.
    X2Ddx2,
    /// `∂/∂x2 x1^{-1} δ(z)`.
    Ddx2X1inv,
}

impl DeltaVariant {
    /// For `x1^a`: the summation index `n`, the matching `x2` exponent and
    /// the integer factor from differentiation.
    fn locate(self, a: i64) -> (i64, i64, i64) {
        match self {
            DeltaVariant::Plain => (-a, -a, 1),
            DeltaVariant::X1invPrefixed => (-a - 1, -a - 1, 1),
            DeltaVariant::X2Ddx2 => (-a, -a, -a),
            DeltaVariant::Ddx2X1inv => (-a - 1, -a - 2, -a - 1),
        }
    }
}

/// `δ(scale · x2/x1)` with one of the variant prefactors.
#[derive(Clone, Debug, PartialEq)]
pub struct Delta {
    pub scale: QLaurent,
    pub variant: DeltaVariant,
}

impl Delta {
    pub fn new(scale: QLaurent, variant: DeltaVariant) -> Self {
        Self { scale, variant }
    }

    pub fn q(s: i64, variant: DeltaVariant) -> Self {
        Self::new(QLaurent::q_pow(s), variant)
    }

    /// For `x1^a`, the unique `x2` exponent carrying a nonzero coefficient and that coefficient.
    fn column(&self, a: i64) -> (i64, QLaurent) {
        let (n, b, k) = self.variant.locate(a);
        let c = self.scale.pow(n).expect("delta scale must be an invertible monomial");
        (b, c.scaled(&QLaurent::from_int(k)))
    }

    pub fn coeff(&self, a: i64, b: i64) -> QLaurent {
        let (bb, c) = self.column(a);
        if bb == b {
            c
        } else {
            QLaurent::zero()
        }
    }

    pub fn window(&self, w: Window) -> Result<DistWindow<QLaurent>> {
        if self.scale.as_monomial().is_none() {
            return Err(Error::Param("delta scale must be a monomial".into()));
        }
        DistWindow::from_fn(w, |a, b| self.coeff(a, b))
    }
}

/// `delta(scale, variant)` materialized on `w`.
pub fn delta(scale: &QLaurent, variant: DeltaVariant, w: Window) -> Result<DistWindow<QLaurent>> {
    Delta::new(scale.clone(), variant).window(w)
}

// ---------------------------------------------------------------- generating functions

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `E_k(x) = Σ E_{k,l} x^{-l-1}`.
    E { k: i64 },
    /// `Ê_k(x) = Σ E_{k,l} x^{-l}`.
    Ehat { k: i64 },
    /// `Ẽ_{k,m}(x) = Ê_k(q^m x)`.
    Etilde { k: i64, m: i64 },
    /// `a(x) = Σ (a⊗t^i) x^{-i-1}` for `a` in `𝒜`.
    Loop { a: LieElem },
}

/// A one-variable generating function, possibly with a rescaled argument `F(c·x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenFunSpec {
    pub family: Family,
    pub arg_scale: QLaurent,
}

impl GenFunSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            arg_scale: QLaurent::one(),
        }
    }

    pub fn e(k: i64) -> Self {
        Self::new(Family::E { k })
    }

    pub fn ehat(k: i64) -> Self {
        Self::new(Family::Ehat { k })
    }

    pub fn etilde(k: i64, m: i64) -> Self {
        Self::new(Family::Etilde { k, m })
    }

    pub fn gloop(k: i64, m: i64) -> Self {
        Self::new(Family::Loop {
            a: key_elem(BasisKey::G(k, m)),
        })
    }

    pub fn looped(a: LieElem) -> Self {
        Self::new(Family::Loop { a })
    }

    /// The same family with argument `c·x`.
    pub fn at_scaled(mut self, c: QLaurent) -> Self {
        self.arg_scale = &self.arg_scale * &c;
        self
    }

    pub fn algebra(&self) -> AlgebraSpec {
        match self.family {
            Family::Loop { .. } => TILDE_A,
            _ => VQ,
        }
    }

    /// Exponent of `x` carrying mode `l`.
    pub fn exponent_of_mode(&self, l: i64) -> i64 {
        match self.family {
            Family::E { .. } | Family::Loop { .. } => -l - 1,
            Family::Ehat { .. } | Family::Etilde { .. } => -l,
        }
    }

    pub fn mode_of_exponent(&self, e: i64) -> i64 {
        match self.family {
            Family::E { .. } | Family::Loop { .. } => -e - 1,
            Family::Ehat { .. } | Family::Etilde { .. } => -e,
        }
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: i64) -> LieElem {
        let base = match &self.family {
            Family::E { k } => key_elem(BasisKey::E(*k, -e - 1)),
            Family::Ehat { k } => key_elem(BasisKey::E(*k, -e)),
            Family::Etilde { k, m } => {
                crate::liealg::key_term(BasisKey::E(*k, -e), QLaurent::q_pow(m * e))
            }
            Family::Loop { a } => tensor_t(a, -e - 1),
        };
        if self.arg_scale.is_one() || base.is_zero() {
            return base;
        }
        base.scale(&self.arg_scale.pow(e).expect("argument scale must be a monomial"))
    }
}

/// `[f(x1), g(x2)]` on the exponent window `w`, entry `(a,b)` being the
/// bracket of the `x^a` coefficient of `f` with the `x^b` coefficient of `g`.
pub fn commutator_window(
    alg: &AlgebraSpec,
    f: &GenFunSpec,
    g: &GenFunSpec,
    w: Window,
) -> Result<DistWindow<LieElem>> {
    for fam in [f, g] {
        if fam.algebra() != *alg {
            return Err(Error::KeyKind {
                algebra: alg.name.to_string(),
                key: format!("{:?}", fam.family),
            });
        }
    }
    let fs: BTreeMap<i64, LieElem> = (w.a.0..=w.a.1).map(|a| (a, f.coeff(a))).collect();
    let gs: BTreeMap<i64, LieElem> = (w.b.0..=w.b.1).map(|b| (b, g.coeff(b))).collect();
    DistWindow::from_fn(w, |a, b| bracket_unchecked(alg, &fs[&a], &gs[&b]))
}

/// `F(x2) · D(x1, x2)` for a delta `D`, exact on all of `w` since each `x1`
/// power meets a single term of the delta.
pub fn gf_times_delta(f: &GenFunSpec, d: &Delta, w: Window) -> Result<DistWindow<LieElem>> {
    DistWindow::from_fn(w, |a, b| {
        let (bd, c) = d.column(a);
        f.coeff(b - bd).scale(&c)
    })
}

// ---------------------------------------------------------------- identities

pub const IDENTITIES: [&str; 5] = ["loop-fields", "vq-fields", "vq-hat-fields", "vq-tilde-fields", "loop-shifted"];

/// Short names accepted in place of the ones in [`IDENTITIES`].
pub const IDENTITY_ALIASES: [(&str, &str); 5] = [
    ("eq2.5", "loop-fields"),
    ("eq3.8", "vq-fields"),
    ("eq4.2", "vq-hat-fields"),
    ("eq4.3", "vq-tilde-fields"),
    ("eq4.4", "loop-shifted"),
];

/// Resolves an identity name or alias.
pub fn identity_name(name: &str) -> Result<&'static str> {
    IDENTITIES
        .iter()
        .find(|n| **n == name)
        .copied()
        .or_else(|| IDENTITY_ALIASES.iter().find(|(a, _)| *a == name).map(|(_, n)| *n))
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

/// Parameter names each identity takes.
pub fn identity_params(name: &str) -> Result<&'static [&'static str]> {
    match identity_name(name)? {
        "vq-fields" | "vq-hat-fields" => Ok(&["k", "r"]),
        "loop-fields" | "vq-tilde-fields" | "loop-shifted" => Ok(&["k", "m", "r", "n"]),
        _ => Err(Error::UnknownIdentity(name.to_string())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub i: i64,
    pub j: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GfReport {
    pub identity: String,
    pub params: BTreeMap<String, i64>,
    pub window: (i64, i64),
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl GfReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn get_params(name: &str, params: &BTreeMap<String, i64>) -> Result<Vec<i64>> {
    let names = identity_params(name)?;
    if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::Param(format!("`{name}` takes no parameter `{extra}`")));
    }
    names
        .iter()
        .map(|n| {
            params
                .get(*n)
                .copied()
                .ok_or_else(|| Error::Param(format!("`{name}` needs `{n}`")))
        })
        .collect()
}

fn central_term(
    d: &Delta,
    coef: i64,
    key: BasisKey,
    w: Window,
) -> Result<DistWindow<LieElem>> {
    Ok(d.window(w)?
        .tensor(&crate::liealg::key_term(key, QLaurent::from_int(coef))))
}

/// Left and right sides of a named identity on the exponent window derived
/// from the mode range `modes` of both variables.
pub fn identity_sides(
    name: &str,
    params: &BTreeMap<String, i64>,
    modes: (i64, i64),
) -> Result<(GenFunSpec, GenFunSpec, DistWindow<LieElem>, DistWindow<LieElem>)> {
    let p = get_params(name, params)?;
    let name = identity_name(name)?;
    if modes.0 > modes.1 {
        return Err(Error::WindowTooSmall(format!("mode range {}..{} is empty", modes.0, modes.1)));
    }
    use DeltaVariant::*;
    let (f, g) = match name {
        "loop-fields" | "loop-shifted" => (GenFunSpec::gloop(p[0], p[1]), GenFunSpec::gloop(p[2], p[3])),
        "vq-fields" => (GenFunSpec::e(p[0]), GenFunSpec::e(p[1])),
        "vq-hat-fields" => (GenFunSpec::ehat(p[0]), GenFunSpec::ehat(p[1])),
        "vq-tilde-fields" => (GenFunSpec::etilde(p[0], p[1]), GenFunSpec::etilde(p[2], p[3])),
        _ => unreachable!(),
    };
    let span = |s: &GenFunSpec| {
        let (x, y) = (s.exponent_of_mode(modes.0), s.exponent_of_mode(modes.1));
        (x.min(y), x.max(y))
    };
    let w = Window::new(span(&f), span(&g));
    let lhs = commutator_window(&f.algebra(), &f, &g, w)?;
    let kr = p[0] == -p[p.len() / 2];
    let mut rhs = DistWindow::zero(w);
    let mut add = |t: DistWindow<LieElem>, c: i64| -> Result<()> {
        rhs = rhs.add_scaled(&t, &QLaurent::from_int(c))?;
        Ok(())
    };
    match name {
        "loop-fields" => {
            let (a, b) = (key_elem(BasisKey::G(p[0], p[1])), key_elem(BasisKey::G(p[2], p[3])));
            let ab = bracket_unchecked(&A, &a, &b);
            let d = Delta::q(0, X1invPrefixed);
            add(gf_times_delta(&GenFunSpec::looped(ab), &d, w)?, 1)?;
            let psi = crate::central::PSI_A.eval(&a, &b);
            add(d.window(w)?.tensor(&crate::liealg::key_term(BasisKey::K1, psi)), 1)?;
            let form = crate::liealg::bilinear(crate::liealg::a_form, &a, &b);
            let dd = Delta::q(0, Ddx2X1inv);
            add(dd.window(w)?.tensor(&crate::liealg::key_term(BasisKey::K2, form)), 1)?;
        }
        "vq-fields" => {
            let (k, r) = (p[0], p[1]);
            let e1 = GenFunSpec::e(k + r).at_scaled(QLaurent::q_pow(k));
            add(gf_times_delta(&e1, &Delta::q(k + r, X1invPrefixed), w)?.scale(&QLaurent::q_pow(k)), 1)?;
            let e2 = GenFunSpec::e(k + r).at_scaled(QLaurent::q_pow(-k));
            add(gf_times_delta(&e2, &Delta::q(-k - r, X1invPrefixed), w)?.scale(&QLaurent::q_pow(-k)), -1)?;
            if kr {
                // x1^{-1} x2^{-1} δ(x2/x1): the x1^{-1} δ coefficients moved down one power of x2.
                let shifted = Window::new(w.a, (w.b.0 + 1, w.b.1 + 1));
                add(central_term(&Delta::q(0, X1invPrefixed), k, BasisKey::C1, shifted)?.shift(0, -1), 1)?;
                add(central_term(&Delta::q(0, Ddx2X1inv), 1, BasisKey::C2, w)?, 1)?;
            }
        }
        "vq-hat-fields" => {
            let (k, r) = (p[0], p[1]);
            let e1 = GenFunSpec::ehat(k + r).at_scaled(QLaurent::q_pow(k));
            add(gf_times_delta(&e1, &Delta::q(k + r, Plain), w)?, 1)?;
            let e2 = GenFunSpec::ehat(k + r).at_scaled(QLaurent::q_pow(-k));
            add(gf_times_delta(&e2, &Delta::q(-k - r, Plain), w)?, -1)?;
            if kr {
                add(central_term(&Delta::q(0, Plain), k, BasisKey::C1, w)?, 1)?;
                add(central_term(&Delta::q(0, X2Ddx2), 1, BasisKey::C2, w)?, 1)?;
            }
        }
        "vq-tilde-fields" => {
            let (k, m, r, n) = (p[0], p[1], p[2], p[3]);
            let e1 = GenFunSpec::etilde(k + r, n + k);
            add(gf_times_delta(&e1, &Delta::q(-m + n + k + r, Plain), w)?, 1)?;
            let e2 = GenFunSpec::etilde(k + r, n - k);
            add(gf_times_delta(&e2, &Delta::q(-m + n - k - r, Plain), w)?, -1)?;
            if kr {
                add(central_term(&Delta::q(n - m, Plain), k, BasisKey::C1, w)?, 1)?;
                add(central_term(&Delta::q(n - m, X2Ddx2), 1, BasisKey::C2, w)?, 1)?;
            }
        }
        "loop-shifted" => {
            let (k, m, r, n) = (p[0], p[1], p[2], p[3]);
            let d = Delta::q(0, X1invPrefixed);
            if -m + n + k + r == 0 {
                add(gf_times_delta(&GenFunSpec::gloop(k + r, n + k), &d, w)?, 1)?;
            }
            if -m + n - k - r == 0 {
                add(gf_times_delta(&GenFunSpec::gloop(k + r, n - k), &d, w)?, -1)?;
            }
            if kr && n == m {
                add(central_term(&d, k, BasisKey::K1, w)?, 1)?;
                add(central_term(&Delta::q(0, Ddx2X1inv), 1, BasisKey::K2, w)?, 1)?;
            }
        }
        _ => unreachable!(),
    }
    Ok((f, g, lhs, rhs))
}

/// Compares both sides of a named identity mode by mode for modes in `modes`.
pub fn check_gf_identity(
    name: &str,
    params: &BTreeMap<String, i64>,
    modes: (i64, i64),
) -> Result<GfReport> {
    let (f, g, lhs, rhs) = identity_sides(name, params, modes)?;
    let w = lhs.window().intersect(&rhs.window());
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (a, b) in w.points() {
        checked += 1;
        let (l, r) = (lhs.at(a, b), rhs.at(a, b));
        if l != r {
            mismatches.push(Mismatch {
                i: f.mode_of_exponent(a),
                j: g.mode_of_exponent(b),
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    }
    Ok(GfReport {
        identity: name.to_string(),
        params: params.clone(),
        window: modes,
        checked,
        mismatches,
    })
}

// ---------------------------------------------------------------- quasi-locality

/// `(x1 - q^{-m+n+k+r} x2)(x1 - q^{-m+n-k-r} x2)(x1 - q^{n-m} x2)^2`.
pub fn quasi_locality_poly(k: i64, m: i64, r: i64, n: i64) -> Poly {
    let l = |s: i64| Poly::linear(QLaurent::q_pow(s));
    l(-m + n + k + r)
        .mul(&l(-m + n - k - r))
        .mul(&l(n - m))
        .mul(&l(n - m))
}

#[derive(Clone, Debug, Serialize)]
pub struct QlReport {
    pub params: (i64, i64, i64, i64),
    pub window: (i64, i64),
    pub states: usize,
    pub checked: usize,
    /// `(state index, i, j)` of nonzero interior entries, `i`, `j` the modes.
    pub failures: Vec<(usize, i64, i64)>,
}

impl QlReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Multiplies `[Ẽ_{k,m}(x1), Ẽ_{r,n}(x2)]`, acting on each state, by the
/// quartic polynomial and checks every interior coefficient vanishes.
pub fn check_quasi_locality<S, F>(
    (k, m, r, n): (i64, i64, i64, i64),
    states: &[S],
    act: F,
    modes: (i64, i64),
) -> Result<QlReport>
where
    S: Linear,
    F: Fn(&LieElem, &S) -> Result<S>,
{
    if modes.1 - modes.0 < 4 {
        return Err(Error::WindowTooSmall(
            "quasi-locality needs at least five modes per variable".into(),
        ));
    }
    let f = GenFunSpec::etilde(k, m);
    let g = GenFunSpec::etilde(r, n);
    let w = Window::new((-modes.1, -modes.0), (-modes.1, -modes.0));
    let comm = commutator_window(&VQ, &f, &g, w)?;
    let poly = quasi_locality_poly(k, m, r, n);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (idx, s) in states.iter().enumerate() {
        let mut acted = BTreeMap::new();
        for (a, b) in w.points() {
            acted.insert((a, b), act(&comm.at(a, b), s)?);
        }
        let on_state = DistWindow::from_fn(w, |a, b| acted[&(a, b)].clone())?;
        let prod = on_state.mul_poly(&poly)?;
        for (a, b) in prod.window().points() {
            checked += 1;
            if !prod.at(a, b).is_zero() {
                failures.push((idx, f.mode_of_exponent(a), g.mode_of_exponent(b)));
            }
        }
    }
    Ok(QlReport {
        params: (k, m, r, n),
        window: modes,
        states: states.len(),
        checked,
        failures,
    })
}

/// The mode family of `Ẽ_{k,m+r}` equals that of `Ẽ_{k,m}` at argument `q^r x`.
pub fn check_equivariance(k: i64, m: i64, r: i64, modes: (i64, i64)) -> bool {
    let lhs = GenFunSpec::etilde(k, m + r);
    let rhs = GenFunSpec::etilde(k, m).at_scaled(QLaurent::q_pow(r));
    (modes.0..=modes.1).all(|l| {
        let e = lhs.exponent_of_mode(l);
        lhs.coeff(e) == rhs.coeff(e)
    })
}
