//! Seeded property sweeps over the catalogue.
//!
//! Trial `i` draws from its own ChaCha stream `(seed, i)`, so reports do not
//! depend on how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::central::{self, Direction, Extension};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::liealg::{self, key_elem, AlgebraSpec, BasisKey, LieElem};
use crate::pbwmod::{Bv, InductionSpec, MatrixBottom, PbwState, Role};
use crate::qcoeff::{rat, QLaurent};

pub const TARGETS: [&str; 6] = ["jacobi", "cocycle", "trivial", "invariance", "iso", "module-axiom"];

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub target: String,
    pub algebra: String,
    pub window: i64,
    pub trials: usize,
    pub seed: u64,
    pub checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// A basis key, or now and then a two-term combination with a `c·q^e` coefficient.
pub fn sample_elem(alg: &AlgebraSpec, rng: &mut ChaCha8Rng, w: i64) -> LieElem {
    let mut x = key_elem(alg.sample_key(rng, w));
    if rng.gen_range(0..4) == 0 {
        let c = QLaurent::monomial(rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)), rng.gen_range(-2..=2));
        x.add_scaled(&key_elem(alg.sample_key(rng, w)), &c);
    }
    x
}

/// A state built by applying up to `len` creation keys with grades in
/// `[-w, -1]` to a random bottom vector, depth at most `max_depth`.
pub fn sample_state(
    spec: &InductionSpec<MatrixBottom>,
    rng: &mut ChaCha8Rng,
    w: i64,
    len: usize,
    max_depth: i64,
) -> Result<PbwState<Bv>> {
    let v = Bv(rng.gen_range(0..spec.bottom.dim));
    let n = rng.gen_range(0..=len);
    let mut keys = Vec::new();
    let mut depth = 0;
    for _ in 0..n {
        let k = loop {
            let k = spec.algebra.sample_key(rng, w);
            if spec.role(&k) == Role::Creation {
                break k;
            }
        };
        let g = match &k {
            BasisKey::E(_, l) => -l,
            BasisKey::Loop(_, i) => -i,
            _ => 0,
        };
        if depth + g > max_depth {
            continue;
        }
        depth += g;
        keys.push(k);
    }
    spec.monomial(&keys, v)
}

type Trial = Box<dyn Fn(&mut ChaCha8Rng) -> Result<Option<String>> + Sync + Send>;

fn trial_for(target: &str, alg: AlgebraSpec, w: i64) -> Result<Trial> {
    let bad_target = || Error::Param(format!("target `{target}` does not apply to `{}`", alg.name));
    Ok(match target {
        "jacobi" => Box::new(move |rng| {
            let (x, y, z) = (sample_elem(&alg, rng, w), sample_elem(&alg, rng, w), sample_elem(&alg, rng, w));
            let ok = liealg::check_antisymmetry(&alg, &x, &y) && liealg::check_jacobi(&alg, &x, &y, &z);
            Ok((!ok).then(|| format!("x = {x}; y = {y}; z = {z}")))
        }),
        "cocycle" => {
            let psi = central::cocycle_by_name(alg.name).map_err(|_| bad_target())?;
            Box::new(move |rng| {
                let h = psi.home;
                let (x, y, z) = (sample_elem(&h, rng, w), sample_elem(&h, rng, w), sample_elem(&h, rng, w));
                let ok = central::check_cocycle(&psi, &x, &y, &z);
                Ok((!ok).then(|| format!("x = {x}; y = {y}; z = {z}")))
            })
        }
        "trivial" => {
            let (psi, mu) = match alg.name {
                "A" => (central::PSI_A, central::MU_A),
                "hat-A" => (central::PSI_2, central::MU_2),
                _ => return Err(bad_target()),
            };
            Box::new(move |rng| {
                let (x, y) = (sample_elem(&alg, rng, w), sample_elem(&alg, rng, w));
                let ok = central::check_trivial(&psi, &mu, &x, &y);
                Ok((!ok).then(|| format!("x = {x}; y = {y}")))
            })
        }
        "invariance" => {
            if alg.form_rule.is_none() {
                return Err(Error::NoForm(alg.name.to_string()));
            }
            Box::new(move |rng| {
                let (x, y, z) = (sample_elem(&alg, rng, w), sample_elem(&alg, rng, w), sample_elem(&alg, rng, w));
                let ok = liealg::check_form_symmetry(&alg, &x, &y) && liealg::check_invariance(&alg, &x, &y, &z);
                Ok((!ok).then(|| format!("x = {x}; y = {y}; z = {z}")))
            })
        }
        "iso" => match alg.name {
            "vq" => Box::new(move |rng| {
                let (x, y) = (sample_elem(&alg, rng, w), sample_elem(&alg, rng, w));
                let ok = central::check_theta_hom(&x, &y)?;
                Ok((!ok).then(|| format!("x = {x}; y = {y}")))
            }),
            "A" | "A-plus-K1" | "hat-A" | "hat-A-plus-K1" => {
                let ext = if alg.name.starts_with("hat") { Extension::HatA } else { Extension::A };
                let dom = ext.domain();
                Box::new(move |rng| {
                    let (x, y) = (sample_elem(&dom, rng, w), sample_elem(&dom, rng, w));
                    let fx = central::extension_iso_f(ext, Direction::Forward, &x)?;
                    let back = central::extension_iso_f(ext, Direction::Inverse, &fx)?;
                    let ok = back == x && central::check_extension_hom(ext, &x, &y)?;
                    Ok((!ok).then(|| format!("x = {x}; y = {y}")))
                })
            }
            _ => return Err(bad_target()),
        },
        "module-axiom" => return Err(Error::Param("module-axiom needs an induction spec".into())),
        other => return Err(Error::Param(format!("unknown fuzz target `{other}`"))),
    })
}

fn summarize(
    target: &str,
    alg: &str,
    w: i64,
    trials: usize,
    seed: u64,
    results: Vec<Result<Option<String>>>,
) -> Result<FuzzReport> {
    let mut failures = 0;
    let mut first = None;
    for r in results {
        if let Some(msg) = r? {
            failures += 1;
            first.get_or_insert(msg);
        }
    }
    Ok(FuzzReport {
        target: target.to_string(),
        algebra: alg.to_string(),
        window: w,
        trials,
        seed,
        checked: trials,
        failures,
        first_counterexample: first,
    })
}

/// Runs `trials` seeded checks of `target` on `algebra` with key indices in `[-w, w]`.
pub fn run_fuzz(
    target: &str,
    algebra: &str,
    w: i64,
    trials: usize,
    seed: u64,
    exec: Exec,
    spec: Option<&InductionSpec<MatrixBottom>>,
) -> Result<FuzzReport> {
    let alg = AlgebraSpec::lookup(algebra)?;
    if target == "module-axiom" {
        let spec = spec.ok_or_else(|| Error::Param("module-axiom needs an induction spec".into()))?;
        if spec.algebra != alg {
            return Err(Error::Param(format!(
                "spec is over `{}`, not `{algebra}`",
                spec.algebra.name
            )));
        }
        return run_module_fuzz(spec, w, trials, seed, exec);
    }
    let trial = trial_for(target, alg, w)?;
    let idx: Vec<usize> = (0..trials).collect();
    let results = exec.map(&idx, |&i| trial(&mut trial_rng(seed, i)));
    summarize(target, algebra, w, trials, seed, results)
}

/// Module axiom on random `(x, y, w)` with states of depth at most 5.
pub fn run_module_fuzz(
    spec: &InductionSpec<MatrixBottom>,
    w: i64,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<FuzzReport> {
    let alg = spec.algebra;
    let idx: Vec<usize> = (0..trials).collect();
    let results = exec.map(&idx, |&i| {
        let rng = &mut trial_rng(seed, i);
        let x = sample_elem(&alg, rng, w);
        let y = sample_elem(&alg, rng, w);
        let st = sample_state(spec, rng, w, 3, 5)?;
        let ok = spec.check_module_axiom(&x, &y, &st)?;
        Ok((!ok).then(|| format!("x = {x}; y = {y}; w = {st}")))
    });
    summarize("module-axiom", alg.name, w, trials, seed, results)
}
