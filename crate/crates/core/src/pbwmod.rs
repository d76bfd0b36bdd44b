//! Induced modules by PBW straightening.
//!
//! A state is a combination of `z_1 z_2 ... z_n v` with the creation keys
//! sorted ascending and `v` a bottom vector. Acting by a generator commutes
//! it into place, collecting bracket corrections, until it either joins the
//! monomial (creation), reaches the bottom (annihilator), or scales by a
//! level (central).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::liealg::{
    bracket_keys, key_elem, AlgebraSpec, BasisKey, LieElem, HAT_A, TILDE_A, VQ,
};
use crate::parse::{parse_scalar, parse_scalar_env, parse_state as parse_state_terms, Env, StateTerm};
use crate::qcoeff::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Creation,
    Annihilator,
    Central,
}

/// How the algebra splits into creation and bottom-side generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    /// `E_{k,l}` with `l < 0` create; `l ≥ 0` act on the bottom.
    VqNonneg,
    /// `a⊗t^i` with `i < 0` create; `i ≥ 0` act on the bottom.
    LoopNonneg,
}

impl Splitting {
    pub fn for_algebra(alg: &AlgebraSpec) -> Result<Self> {
        if *alg == VQ {
            Ok(Splitting::VqNonneg)
        } else if *alg == HAT_A || *alg == TILDE_A {
            Ok(Splitting::LoopNonneg)
        } else {
            Err(Error::Spec(format!("no induction splitting for `{}`", alg.name)))
        }
    }

    /// Index deciding the role: `l` for `E_{k,l}`, `i` for loops.
    fn grade(self, key: &BasisKey) -> Option<i64> {
        match (self, key) {
            (Splitting::VqNonneg, BasisKey::E(_, l)) => Some(*l),
            (Splitting::LoopNonneg, BasisKey::Loop(_, i)) => Some(*i),
            _ => None,
        }
    }

    /// Creation order: grade ascending, then key order.
    pub fn cmp_creation(self, a: &BasisKey, b: &BasisKey) -> Ordering {
        self.grade(a).cmp(&self.grade(b)).then_with(|| match (a, b) {
            (BasisKey::E(k, _), BasisKey::E(r, _)) => k.cmp(r),
            (BasisKey::Loop(x, _), BasisKey::Loop(y, _)) => x.cmp(y),
            _ => a.cmp(b),
        })
    }
}

/// Scalars by which `c1`/`K1` and `c2`/`K2` act.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levels {
    pub l1: QLaurent,
    pub l2: QLaurent,
}

impl Levels {
    pub fn new(l1: QLaurent, l2: QLaurent) -> Self {
        Self { l1, l2 }
    }

    pub fn ints(l1: i64, l2: i64) -> Self {
        Self::new(QLaurent::from_int(l1), QLaurent::from_int(l2))
    }
}

/// A module for the bottom-side subalgebra.
pub trait BottomModule: Send + Sync {
    type V: Ord + Clone + Hash + fmt::Display + fmt::Debug + Send + Sync;

    /// Image of `v` under an annihilator-side key.
    fn apply(&self, key: &BasisKey, v: &Self::V) -> Vec<(Self::V, QLaurent)>;

    /// Largest `l` (or `i`) with a possibly nonzero action, if known.
    fn cutoff(&self) -> Option<i64>;

    /// The vector written `v[i]` in state expressions.
    fn basis_vector(&self, i: usize) -> Result<Self::V>;
}

/// Basis vector `v[i]` of a matrix bottom; prints as `v` for `i = 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bv(pub usize);

impl fmt::Display for Bv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "v"),
            i => write!(f, "v[{i}]"),
        }
    }
}

pub type Matrix = Vec<Vec<QLaurent>>;

fn mat_zero(d: usize) -> Matrix {
    vec![vec![QLaurent::zero(); d]; d]
}

fn mat_is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(|c| c.is_zero()))
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = mat_zero(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    out[i][j] += &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

fn mat_axpy(acc: &mut Matrix, c: &QLaurent, m: &Matrix) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (x, y) in ra.iter_mut().zip(rm) {
            *x += &(c * y);
        }
    }
}

/// `E[k,l]` with `k` free: the matrix entries are scalar expressions in `k`.
#[derive(Debug)]
struct Family {
    var: String,
    l: i64,
    entries: Vec<Vec<String>>,
    cache: RwLock<HashMap<i64, Matrix>>,
}

impl Family {
    fn instantiate(&self, k: i64) -> Result<Matrix> {
        if let Some(m) = self.cache.read().expect("cache lock").get(&k) {
            return Ok(m.clone());
        }
        let env: Env = [(self.var.clone(), k)].into_iter().collect();
        let m = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_scalar_env(s, &env)).collect())
            .collect::<Result<Matrix>>()?;
        self.cache.write().expect("cache lock").entry(k).or_insert_with(|| m.clone());
        Ok(m)
    }
}

/// Finite-dimensional bottom given by matrices; unlisted keys act as zero.
#[derive(Debug)]
pub struct MatrixBottom {
    pub dim: usize,
    pub cutoff_t: Option<i64>,
    table: BTreeMap<BasisKey, Matrix>,
    families: Vec<Family>,
}

impl MatrixBottom {
    /// One-dimensional bottom on which every bottom-side key acts as zero.
    pub fn trivial(cutoff_t: Option<i64>) -> Self {
        Self {
            dim: 1,
            cutoff_t,
            table: BTreeMap::new(),
            families: Vec::new(),
        }
    }

    pub fn with_entry(mut self, key: BasisKey, m: Matrix) -> Result<Self> {
        self.check_shape(&m)?;
        self.table.insert(key, m);
        Ok(self)
    }

    /// Adds a family `E[var,l]` whose entries are expressions in `var`.
    pub fn with_family(mut self, var: &str, l: i64, entries: Vec<Vec<String>>) -> Result<Self> {
        if entries.len() != self.dim || entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Spec(format!("family E[{var},{l}] is not {0}x{0}", self.dim)));
        }
        let fam = Family {
            var: var.to_string(),
            l,
            entries,
            cache: RwLock::new(HashMap::new()),
        };
        for k in [-1, 0, 1] {
            fam.instantiate(k)
                .map_err(|e| Error::Spec(format!("family E[{var},{l}]: {e}")))?;
        }
        self.families.push(fam);
        Ok(self)
    }

    fn check_shape(&self, m: &Matrix) -> Result<()> {
        if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Spec(format!("matrix is not {0}x{0}", self.dim)));
        }
        Ok(())
    }

    /// The matrix of a single key (zero beyond the table).
    pub fn matrix(&self, key: &BasisKey) -> Matrix {
        if let Some(m) = self.table.get(key) {
            return m.clone();
        }
        if let BasisKey::E(k, l) = key {
            if let Some(f) = self.families.iter().find(|f| f.l == *l) {
                return f.instantiate(*k).expect("family validated at load");
            }
        }
        mat_zero(self.dim)
    }
}

impl BottomModule for MatrixBottom {
    type V = Bv;

    fn apply(&self, key: &BasisKey, v: &Bv) -> Vec<(Bv, QLaurent)> {
        let m = self.matrix(key);
        (0..self.dim)
            .filter(|i| !m[*i][v.0].is_zero())
            .map(|i| (Bv(i), m[i][v.0].clone()))
            .collect()
    }

    fn cutoff(&self) -> Option<i64> {
        self.cutoff_t
    }

    fn basis_vector(&self, i: usize) -> Result<Bv> {
        if i < self.dim {
            Ok(Bv(i))
        } else {
            Err(Error::Spec(format!("bottom has dimension {}, no v[{i}]", self.dim)))
        }
    }
}

/// Word of bottom-side keys applied to a free vector `v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub Vec<BasisKey>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.0 {
            write!(f, "[{k}]")?;
        }
        write!(f, "v")
    }
}

/// Bottom left symbolic: keys of grade above `cutoff` kill it, the rest are
/// recorded as a word. Used to track which bottom operator survives.
#[derive(Clone, Debug)]
pub struct SymbolicBottom {
    pub cutoff: i64,
}

impl BottomModule for SymbolicBottom {
    type V = Word;

    fn apply(&self, key: &BasisKey, v: &Word) -> Vec<(Word, QLaurent)> {
        match key {
            BasisKey::E(_, l) if *l > self.cutoff => Vec::new(),
            _ => {
                let mut w = Vec::with_capacity(v.0.len() + 1);
                w.push(key.clone());
                w.extend(v.0.iter().cloned());
                vec![(Word(w), QLaurent::one())]
            }
        }
    }

    fn cutoff(&self) -> Option<i64> {
        Some(self.cutoff)
    }

    fn basis_vector(&self, i: usize) -> Result<Word> {
        if i == 0 {
            Ok(Word(Vec::new()))
        } else {
            Err(Error::Spec("symbolic bottom has only `v`".into()))
        }
    }
}

/// A PBW basis vector `mono[0] mono[1] ... bottom`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PbwBasis<V> {
    pub mono: Vec<BasisKey>,
    pub bottom: V,
}

impl<V: fmt::Display> fmt::Display for PbwBasis<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.mono {
            write!(f, "{k} ")?;
        }
        write!(f, "{}", self.bottom)
    }
}

pub type PbwState<V> = LinComb<PbwBasis<V>>;

type Memo<V> = RwLock<HashMap<(BasisKey, PbwBasis<V>), PbwState<V>>>;

/// Algebra, splitting, bottom and levels of an induced module.
pub struct InductionSpec<B: BottomModule> {
    pub algebra: AlgebraSpec,
    pub splitting: Splitting,
    pub bottom: B,
    pub levels: Levels,
    memo: Option<Memo<B::V>>,
}

impl<B: BottomModule> fmt::Debug for InductionSpec<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InductionSpec({}, {:?})", self.algebra.name, self.levels)
    }
}

impl<B: BottomModule> InductionSpec<B> {
    pub fn new(algebra: AlgebraSpec, bottom: B, levels: Levels) -> Result<Self> {
        Ok(Self {
            splitting: Splitting::for_algebra(&algebra)?,
            algebra,
            bottom,
            levels,
            memo: None,
        })
    }

    /// Caches generator-on-basis results. The cache is write-once per entry.
    pub fn memoized(mut self) -> Self {
        self.memo = Some(RwLock::new(HashMap::new()));
        self
    }

    pub fn role(&self, key: &BasisKey) -> Role {
        if (self.algebra.is_central)(key) {
            return Role::Central;
        }
        match self.splitting.grade(key) {
            Some(g) if g < 0 => Role::Creation,
            _ => Role::Annihilator,
        }
    }

    fn level(&self, key: &BasisKey) -> QLaurent {
        match key {
            BasisKey::C1 | BasisKey::K1 => self.levels.l1.clone(),
            BasisKey::C2 | BasisKey::K2 => self.levels.l2.clone(),
            _ => QLaurent::zero(),
        }
    }

    /// The state `v` for a bottom vector.
    pub fn vector(&self, v: B::V) -> PbwState<B::V> {
        PbwState::basis(PbwBasis {
            mono: Vec::new(),
            bottom: v,
        })
    }

    /// `keys[0] keys[1] ... v`, applied right to left.
    pub fn monomial(&self, keys: &[BasisKey], v: B::V) -> Result<PbwState<B::V>> {
        let mut s = self.vector(v);
        for k in keys.iter().rev() {
            s = self.act(&key_elem(k.clone()), &s)?;
        }
        Ok(s)
    }

    pub fn from_terms(&self, terms: &[StateTerm]) -> Result<PbwState<B::V>> {
        let mut out = PbwState::new();
        for t in terms {
            let v = self.bottom.basis_vector(t.bottom)?;
            out.add_scaled(&self.monomial(&t.keys, v)?, &t.coef);
        }
        Ok(out)
    }

    /// Parses a state such as `E[2,-1] E[1,-2] v`.
    pub fn parse_state(&self, text: &str) -> Result<PbwState<B::V>> {
        self.from_terms(&parse_state_terms(text)?)
    }

    /// Action of an element of the algebra.
    pub fn act(&self, x: &LieElem, w: &PbwState<B::V>) -> Result<PbwState<B::V>> {
        self.algebra.check_elem(x)?;
        Ok(self.act_elem(x, w))
    }

    pub(crate) fn act_elem(&self, x: &LieElem, w: &PbwState<B::V>) -> PbwState<B::V> {
        let mut out = PbwState::new();
        for (k, c) in x.iter() {
            for (b, d) in w.iter() {
                out.add_scaled(&self.act_basis(k, b), &(c * d));
            }
        }
        out
    }

    fn act_key_state(&self, key: &BasisKey, w: &PbwState<B::V>) -> PbwState<B::V> {
        let mut out = PbwState::new();
        for (b, d) in w.iter() {
            out.add_scaled(&self.act_basis(key, b), d);
        }
        out
    }

    fn act_basis(&self, key: &BasisKey, b: &PbwBasis<B::V>) -> PbwState<B::V> {
        let Some(memo) = &self.memo else {
            return self.act_basis_raw(key, &b.mono, &b.bottom);
        };
        let id = (key.clone(), b.clone());
        if let Some(s) = memo.read().expect("memo lock").get(&id) {
            return s.clone();
        }
        let s = self.act_basis_raw(key, &b.mono, &b.bottom);
        memo.write().expect("memo lock").entry(id).or_insert_with(|| s.clone());
        s
    }

    fn act_basis_raw(&self, key: &BasisKey, mono: &[BasisKey], v: &B::V) -> PbwState<B::V> {
        match self.role(key) {
            Role::Central => {
                let c = self.level(key);
                PbwState::term(
                    PbwBasis {
                        mono: mono.to_vec(),
                        bottom: v.clone(),
                    },
                    c,
                )
            }
            Role::Creation => self.insert(key, mono, v),
            Role::Annihilator => self.annihilate(key, mono, v),
        }
    }

    /// `(Σ c_k k) · mono · v` for a bracket correction.
    fn act_on_tail(&self, x: &LieElem, mono: &[BasisKey], v: &B::V) -> PbwState<B::V> {
        let mut out = PbwState::new();
        for (k, c) in x.iter() {
            out.add_scaled(&self.act_basis_raw(k, mono, v), c);
        }
        out
    }

    /// `y z_1 ... z_n v` for a creation key `y`.
    fn insert(&self, y: &BasisKey, mono: &[BasisKey], v: &B::V) -> PbwState<B::V> {
        if mono.is_empty() || self.splitting.cmp_creation(y, &mono[0]) != Ordering::Greater {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(y.clone());
            m.extend_from_slice(mono);
            return PbwState::basis(PbwBasis {
                mono: m,
                bottom: v.clone(),
            });
        }
        // y z1 R = z1 (y R) + [y, z1] R
        let moved = self.insert(y, &mono[1..], v);
        let mut out = self.act_key_state(&mono[0], &moved);
        let br = bracket_keys(&self.algebra, y, &mono[0]);
        if !br.is_zero() {
            out.add_scaled(&self.act_on_tail(&br, &mono[1..], v), &QLaurent::one());
        }
        out
    }

    /// `x z_1 ... z_n v` for an annihilator-side key `x`.
    fn annihilate(&self, x: &BasisKey, mono: &[BasisKey], v: &B::V) -> PbwState<B::V> {
        if mono.is_empty() {
            return self
                .bottom
                .apply(x, v)
                .into_iter()
                .map(|(u, c)| {
                    (
                        PbwBasis {
                            mono: Vec::new(),
                            bottom: u,
                        },
                        c,
                    )
                })
                .collect();
        }
        // x z1 R = z1 (x R) + [x, z1] R
        let inner = self.annihilate(x, &mono[1..], v);
        let mut out = self.act_key_state(&mono[0], &inner);
        let br = bracket_keys(&self.algebra, x, &mono[0]);
        if !br.is_zero() {
            out.add_scaled(&self.act_on_tail(&br, &mono[1..], v), &QLaurent::one());
        }
        out
    }

    /// `x.(y.w) - y.(x.w) = [x,y].w`.
    pub fn check_module_axiom(&self, x: &LieElem, y: &LieElem, w: &PbwState<B::V>) -> Result<bool> {
        let xy = self.act(x, &self.act(y, w)?)?;
        let yx = self.act(y, &self.act(x, w)?)?;
        let br = crate::liealg::bracket(&self.algebra, x, y)?;
        Ok(xy.minus(&yx) == self.act(&br, w)?)
    }

    /// `Σ |l|` of creation factors (Σ -i for loops).
    pub fn depth(&self, b: &PbwBasis<B::V>) -> i64 {
        b.mono
            .iter()
            .filter_map(|k| self.splitting.grade(k))
            .map(|g| g.abs())
            .sum()
    }

    pub fn max_depth(&self, w: &PbwState<B::V>) -> i64 {
        w.keys().map(|b| self.depth(b)).max().unwrap_or(0)
    }

    /// `t = depth(w) + t₀ + 1`, verified by acting with `E_{k,l}` for every
    /// sampled `k` and `t ≤ l ≤ t + margin`.
    pub fn restrictedness_bound(&self, w: &PbwState<B::V>, ks: &[i64], margin: i64) -> Result<i64> {
        if self.splitting != Splitting::VqNonneg {
            return Err(Error::Spec("restrictedness bound needs a Vq module".into()));
        }
        let t0 = self
            .bottom
            .cutoff()
            .ok_or_else(|| Error::Spec("bottom has no declared cutoff".into()))?;
        let t = self.max_depth(w) + t0 + 1;
        for &k in ks {
            for l in t..=t + margin {
                if (k, l) == (0, 0) {
                    continue;
                }
                let r = self.act(&key_elem(BasisKey::E(k, l)), w)?;
                if !r.is_zero() {
                    return Err(Error::Verification(format!("E[{k},{l}] does not annihilate: {r}")));
                }
            }
        }
        Ok(t)
    }
}

// ---------------------------------------------------------------- bottom files

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    fn text(&self) -> String {
        match self {
            ScalarJson::Int(i) => i.to_string(),
            ScalarJson::Text(s) => s.clone(),
        }
    }

    fn value(&self) -> Result<QLaurent> {
        match self {
            ScalarJson::Int(i) => Ok(QLaurent::from_int(*i)),
            ScalarJson::Text(s) => parse_scalar(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct LevelsJson {
    pub l1: ScalarJson,
    pub l2: ScalarJson,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ActionJson {
    pub key: String,
    pub matrix: Vec<Vec<ScalarJson>>,
}

/// `{algebra, levels: {l1, l2}, cutoff_t, dim, action: [{key, matrix}]}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct BottomFile {
    pub algebra: String,
    pub levels: LevelsJson,
    #[serde(default)]
    pub cutoff_t: Option<i64>,
    pub dim: usize,
    #[serde(default)]
    pub action: Vec<ActionJson>,
}

/// `E[k,0]` with an identifier first index.
fn family_key(key: &str) -> Option<(String, i64)> {
    let inner = key.trim().strip_prefix("E[")?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    let a = a.trim();
    if a.is_empty() || !a.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
        return None;
    }
    Some((a.to_string(), b.trim().parse().ok()?))
}

impl BottomFile {
    pub fn build(&self) -> Result<InductionSpec<MatrixBottom>> {
        let alg = AlgebraSpec::lookup(&self.algebra)?;
        if self.dim == 0 {
            return Err(Error::Spec("dim must be positive".into()));
        }
        let mut bottom = MatrixBottom {
            dim: self.dim,
            cutoff_t: self.cutoff_t,
            table: BTreeMap::new(),
            families: Vec::new(),
        };
        for entry in &self.action {
            if let Some((var, l)) = family_key(&entry.key) {
                let texts = entry.matrix.iter().map(|r| r.iter().map(ScalarJson::text).collect()).collect();
                bottom = bottom.with_family(&var, l, texts)?;
                continue;
            }
            let x = crate::parse::parse_element(&entry.key)?;
            let (key, c) = match x.iter().next() {
                Some((k, c)) if x.len() == 1 && c.is_one() => (k.clone(), c.clone()),
                _ => return Err(Error::Spec(format!("`{}` is not a single key", entry.key))),
            };
            debug_assert!(c.is_one());
            alg.check_key(&key)?;
            let m = entry
                .matrix
                .iter()
                .map(|r| r.iter().map(ScalarJson::value).collect())
                .collect::<Result<Matrix>>()?;
            bottom = bottom.with_entry(key, m)?;
        }
        let levels = Levels::new(self.levels.l1.value()?, self.levels.l2.value()?);
        let spec = InductionSpec::new(alg, bottom, levels)?;
        for k in spec.bottom.table.keys() {
            if spec.role(k) != Role::Annihilator {
                return Err(Error::Spec(format!("{k} does not act on the bottom")));
            }
        }
        Ok(spec)
    }
}

pub fn load_bottom_json(text: &str) -> Result<InductionSpec<MatrixBottom>> {
    let file: BottomFile =
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("bad bottom file: {e}")))?;
    file.build()
}

// ---------------------------------------------------------------- presets

pub const PRESETS: [&str; 4] = ["verma", "vacuum", "vacuum-hat", "ind"];

/// Verma module over `Ṽ_q`: one-dimensional bottom, `E_{k,l}v = 0` for `l ≥ 0`.
pub fn verma(levels: Levels) -> InductionSpec<MatrixBottom> {
    InductionSpec::new(VQ, MatrixBottom::trivial(Some(0)), levels).expect("Vq splits")
}

/// Vacuum module of `g̃` over `𝒜`.
pub fn vacuum(levels: Levels) -> InductionSpec<MatrixBottom> {
    InductionSpec::new(TILDE_A, MatrixBottom::trivial(Some(-1)), levels).expect("tilde-A splits")
}

/// Vacuum module of `ĝ` over `𝒜`; only `ℓ2` is used.
pub fn vacuum_hat(l2: QLaurent) -> InductionSpec<MatrixBottom> {
    InductionSpec::new(HAT_A, MatrixBottom::trivial(Some(-1)), Levels::new(QLaurent::zero(), l2))
        .expect("hat-A splits")
}

/// Two-dimensional bottom with cutoff 1: `E_{k,0} ↦ diag(q^{-k} - q^k, 0)`,
/// `E_{k,1} ↦ e_{12}`, everything above acting as zero. Needs `ℓ1 = 0`.
pub fn ind_two_dim(l2: QLaurent) -> InductionSpec<MatrixBottom> {
    let s = |x: &str| x.to_string();
    let bottom = MatrixBottom {
        dim: 2,
        cutoff_t: Some(1),
        table: BTreeMap::new(),
        families: Vec::new(),
    }
    .with_family("k", 0, vec![vec![s("q^-k - q^k"), s("0")], vec![s("0"), s("0")]])
    .and_then(|b| b.with_family("k", 1, vec![vec![s("0"), s("1")], vec![s("0"), s("0")]]))
    .expect("valid preset");
    InductionSpec::new(VQ, bottom, Levels::new(QLaurent::zero(), l2)).expect("Vq splits")
}

/// A preset by name, with levels overriding the defaults.
pub fn preset(name: &str, l1: Option<QLaurent>, l2: Option<QLaurent>) -> Result<InductionSpec<MatrixBottom>> {
    let one = QLaurent::one();
    match name {
        "verma" => Ok(verma(Levels::new(l1.unwrap_or_default(), l2.unwrap_or(one)))),
        "vacuum" => Ok(vacuum(Levels::new(l1.unwrap_or(one.clone()), l2.unwrap_or(one)))),
        "vacuum-hat" => Ok(vacuum_hat(l2.unwrap_or(one))),
        "ind" => {
            let mut s = ind_two_dim(l2.unwrap_or(one));
            if let Some(l1) = l1 {
                s.levels.l1 = l1;
            }
            Ok(s)
        }
        other => Err(Error::Spec(format!("unknown preset `{other}`"))),
    }
}

// ---------------------------------------------------------------- bottom consistency

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub x: String,
    pub y: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BottomReport {
    pub consistent: bool,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl InductionSpec<MatrixBottom> {
    fn rho(&self, x: &LieElem) -> Matrix {
        let d = self.bottom.dim;
        let mut out = mat_zero(d);
        for (k, c) in x.iter() {
            match self.role(k) {
                Role::Central => {
                    let lv = c * &self.level(k);
                    for (i, row) in out.iter_mut().enumerate() {
                        row[i] += &lv;
                    }
                }
                Role::Annihilator => mat_axpy(&mut out, c, &self.bottom.matrix(k)),
                Role::Creation => {}
            }
        }
        out
    }

    /// Checks `ρ([X,Y]) = [ρX, ρY]` on bottom-side keys with indices in
    /// `[-w, w]`, and that keys above the cutoff act as zero.
    pub fn check_bottom_consistency(&self, w: i64) -> BottomReport {
        let keys: Vec<BasisKey> = (self.algebra.enumerate)(w)
            .into_iter()
            .filter(|k| self.role(k) == Role::Annihilator)
            .collect();
        let mut violations = Vec::new();
        let mut notes = Vec::new();
        if let Some(t) = self.bottom.cutoff_t {
            for k in &keys {
                if self.splitting.grade(k).is_some_and(|g| g > t) && !mat_is_zero(&self.bottom.matrix(k)) {
                    violations.push(Violation {
                        x: k.to_string(),
                        y: String::new(),
                        detail: format!("acts nonzero above cutoff {t}"),
                    });
                }
            }
        }
        let mats: Vec<Matrix> = keys.iter().map(|k| self.bottom.matrix(k)).collect();
        let mut pairs = 0;
        for i in 0..keys.len() {
            for j in (i + 1)..keys.len() {
                pairs += 1;
                let br = bracket_keys(&self.algebra, &keys[i], &keys[j]);
                let lhs = self.rho(&br);
                let mut rhs = mat_mul(&mats[i], &mats[j]);
                mat_axpy(&mut rhs, &QLaurent::from_int(-1), &mat_mul(&mats[j], &mats[i]));
                if lhs != rhs {
                    violations.push(Violation {
                        x: keys[i].to_string(),
                        y: keys[j].to_string(),
                        detail: format!("bracket {br} acts differently from the commutator"),
                    });
                }
            }
        }
        if self.splitting == Splitting::VqNonneg && !self.levels.l1.is_zero() {
            notes.push(format!(
                "[E[k,0], E[-k,0]] = k*c1 has trace k*dim*l1 on a {}-dimensional bottom, so l1 = 0 is forced",
                self.bottom.dim
            ));
        }
        BottomReport {
            consistent: violations.is_empty(),
            pairs_checked: pairs,
            violations,
            notes,
        }
    }
}

// ---------------------------------------------------------------- support lemma

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub holds: bool,
    /// The predicted surviving term, or `0`.
    pub predicted: String,
    pub result: String,
}

/// Straightens `E_{k',t+j} E_{k1,-j1}^{i1} v` over a symbolic bottom with
/// cutoff `t` and checks the result is a multiple of `E_{k'+i1 k1, t} v`
/// when `j = i1 j1` and zero when `j > i1 j1`. Returns the report and the state.
pub fn check_support_lemma(
    t: i64,
    kp: i64,
    k1: i64,
    j1: i64,
    i1: i64,
    j: i64,
) -> Result<(SupportReport, PbwState<Word>)> {
    if t < 1 || j1 < 1 || i1 < 0 || j < i1 * j1 {
        return Err(Error::Param(
            "need t >= 1, j1 >= 1, i1 >= 0 and j >= i1*j1".into(),
        ));
    }
    let spec = InductionSpec::new(VQ, SymbolicBottom { cutoff: t }, Levels::ints(1, 1))?;
    let keys: Vec<BasisKey> = std::iter::once(BasisKey::E(kp, t + j))
        .chain(std::iter::repeat_n(BasisKey::E(k1, -j1), i1 as usize))
        .collect();
    let w = spec.monomial(&keys, Word(Vec::new()))?;
    let target = PbwBasis {
        mono: Vec::new(),
        bottom: Word(vec![BasisKey::E(kp + i1 * k1, t)]),
    };
    let (holds, predicted) = if j > i1 * j1 {
        (w.is_zero(), "0".to_string())
    } else {
        (w.keys().all(|b| *b == target), format!("c * {target}"))
    };
    Ok((
        SupportReport {
            holds,
            predicted,
            result: w.to_string(),
        },
        w,
    ))
}

// ---------------------------------------------------------------- phi

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub levels: (String, String),
    pub states: usize,
    pub generators: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The vacuum module of `ĝ` carrying the twisted `g̃`-action
/// `a⊗t^i ↦ a⊗t^i - μ(a)δ_{i+1,0}ℓ1`, `K1 ↦ ℓ1`, `K2 ↦ ℓ2`.
pub struct TwistedVacuum {
    pub hat: InductionSpec<MatrixBottom>,
    pub l1: QLaurent,
}

impl TwistedVacuum {
    pub fn new(l1: QLaurent, l2: QLaurent) -> Self {
        Self {
            hat: vacuum_hat(l2).memoized(),
            l1,
        }
    }

    pub fn act(&self, x: &LieElem, w: &PbwState<Bv>) -> Result<PbwState<Bv>> {
        TILDE_A.check_elem(x)?;
        let mut out = PbwState::new();
        for (k, c) in x.iter() {
            let part = match k {
                BasisKey::K1 => w.scale(&self.l1),
                BasisKey::K2 => w.scale(&self.hat.levels.l2),
                _ => {
                    let mut s = self.hat.act_elem(&key_elem(k.clone()), w);
                    let shift = &crate::central::mu_2(k) * &self.l1;
                    s.add_scaled(w, &-shift);
                    s
                }
            };
            out.add_scaled(&part, c);
        }
        Ok(out)
    }

    /// `φ(z_1 ... z_n 1) = z_1.(... (z_n.1))` under the twisted action.
    pub fn phi(&self, w: &PbwState<Bv>) -> Result<PbwState<Bv>> {
        let mut out = PbwState::new();
        for (b, c) in w.iter() {
            let mut s = self.hat.vector(Bv(0));
            for k in b.mono.iter().rev() {
                s = self.act(&key_elem(k.clone()), &s)?;
            }
            out.add_scaled(&s, c);
        }
        Ok(out)
    }
}

/// All creation monomials of degree `1..=d` in the generators `gens ⊗ t^{-m}`.
pub fn vacuum_monomials(gens: &[BasisKey], d: i64) -> Vec<Vec<BasisKey>> {
    let mut letters: Vec<(i64, BasisKey)> = Vec::new();
    for m in 1..=d {
        for g in gens {
            letters.push((m, BasisKey::loop_of(g.clone(), -m)));
        }
    }
    let mut out = Vec::new();
    fn rec(
        letters: &[(i64, BasisKey)],
        start: usize,
        budget: i64,
        cur: &mut Vec<BasisKey>,
        out: &mut Vec<Vec<BasisKey>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for idx in start..letters.len() {
            let (m, k) = &letters[idx];
            if *m <= budget {
                cur.push(k.clone());
                rec(letters, idx, budget - m, cur, out);
                cur.pop();
            }
        }
    }
    rec(&letters, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Checks `φ(X·w) = X.φ(w)` for every state built from `gens` up to degree
/// `d` and every generator in `xs`.
pub fn phi_intertwiner_check(
    l1: QLaurent,
    l2: QLaurent,
    gens: &[BasisKey],
    d: i64,
    xs: &[BasisKey],
    exec: crate::exec::Exec,
) -> Result<PhiReport> {
    let tilde = vacuum(Levels::new(l1.clone(), l2.clone())).memoized();
    let tw = TwistedVacuum::new(l1.clone(), l2.clone());
    let mut states = vec![tilde.vector(Bv(0))];
    for mono in vacuum_monomials(gens, d) {
        states.push(tilde.monomial(&mono, Bv(0))?);
    }
    let failures = Mutex::new(Vec::new());
    let per_state = exec.map(&states, |w| -> Result<usize> {
        let pw = tw.phi(w)?;
        let mut n = 0;
        for x in xs {
            let xe = key_elem(x.clone());
            let lhs = tw.phi(&tilde.act(&xe, w)?)?;
            let rhs = tw.act(&xe, &pw)?;
            n += 1;
            if lhs != rhs {
                failures
                    .lock()
                    .expect("failures lock")
                    .push(format!("X = {x}, w = {w}: {lhs} != {rhs}"));
            }
        }
        Ok(n)
    });
    let checked = per_state.into_iter().sum::<Result<usize>>()?;
    Ok(PhiReport {
        levels: (l1.to_string(), l2.to_string()),
        states: states.len(),
        generators: xs.len(),
        checked,
        failures: failures.into_inner().expect("failures lock"),
    })
}
