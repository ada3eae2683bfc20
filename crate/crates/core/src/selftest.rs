//! Desk-scale invariant suites, runnable from the CLI.
//!
//! Operator suites take the single-node Demazure kernel as a function
//! pointer so a deliberately broken kernel can be plugged in to confirm the
//! suites notice.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::charring::{demazure_i, CharPoly, FiniteWeight};
use crate::crystal::{b44_closed_form, b44_lambda, example_b44};
use crate::decomp::{decompose, freudenthal_character, recompose, weyl_character, MultiplicityMap};
use crate::error::{Error, Result};
use crate::limits::{convergence_report, standard_sequence};
use crate::minaff::{
    check_word_identities, kr_character, minaff_character, minaff_data, positive_real_roots, rho_check,
};
use crate::rootsys::{build_algebra, AffineWeight, AlgebraData, ExtWeylWord, Kind, Letter, Rational};

/// A single-node Demazure kernel.
pub type DemazureFn = fn(&AlgebraData, usize, &CharPoly) -> Result<CharPoly>;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> std::result::Result<usize, String>) -> SuiteResult {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    match r {
        Ok(checks) => SuiteResult { name, checks, failure: None, elapsed },
        Err(e) => SuiteResult { name, checks: 0, failure: Some(e), elapsed },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A kernel with the sign of the `<alpha_i^vee, mu> <= -2` branch flipped.
pub fn sign_flipped_demazure(data: &AlgebraData, i: usize, f: &CharPoly) -> Result<CharPoly> {
    let mut out = CharPoly::zero();
    for (w, c) in f.iter() {
        let d = demazure_i(data, i, &CharPoly::term(w.clone(), c))?;
        let d = if data.pairing(i, w) <= -2 { d.scale(-1)? } else { d };
        out = out.add(&d)?;
    }
    Ok(out)
}

/// A random element of `Z[P_hat]` with small support.
pub fn random_charpoly(rng: &mut impl Rng, rank: usize) -> CharPoly {
    let len = rng.gen_range(1..=6);
    let terms = (0..len).map(|_| {
        let fw = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
        let w = AffineWeight::new(fw, rng.gen_range(0..=3), Rational::new(rng.gen_range(-4..=4), 2));
        let mut c = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        (w, c)
    });
    CharPoly::from_terms(terms).expect("small coefficients")
}

pub fn apply_word(data: &AlgebraData, dfn: DemazureFn, w: &ExtWeylWord, f: &CharPoly) -> Result<CharPoly> {
    let mut out = f.clone();
    for l in w.letters.iter().rev() {
        out = match *l {
            Letter::S(i) => dfn(data, i, &out)?,
            Letter::Tau => out.demazure_tau(data)?,
        };
    }
    Ok(out)
}

fn levels_preserved(image: &CharPoly, f: &CharPoly) -> bool {
    let levels = |g: &CharPoly| g.support().map(|w| w.level).collect::<BTreeSet<_>>();
    levels(image).is_subset(&levels(f))
}

/// Idempotence, `s_i`-invariance of images, linearity over `s_i`-invariants,
/// tau commutation and
/// compatibility with specialization, on `samples` random inputs.
pub fn operator_suite(data: &AlgebraData, dfn: DemazureFn, samples: usize, seed: u64) -> std::result::Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let err = |e: Error| e.to_string();
    let mut checks = 0;
    for _ in 0..samples {
        let f = random_charpoly(&mut rng, data.rank);
        let g = random_charpoly(&mut rng, data.rank);
        for i in 0..=data.rank {
            let d = dfn(data, i, &f).map_err(err)?;
            ensure(dfn(data, i, &d).map_err(err)? == d, || format!("D_{i} is not idempotent on {f:?}"))?;
            ensure(d.reflect(data, i) == d, || format!("image of D_{i} is not s_{i}-invariant"))?;
            let sym = g.add(&g.reflect(data, i)).map_err(err)?;
            let lhs = dfn(data, i, &sym.mul(&f).map_err(err)?).map_err(err)?;
            ensure(lhs == sym.mul(&d).map_err(err)?, || format!("D_{i} is not linear over s_{i}-invariants"))?;
            ensure(levels_preserved(&d, &f), || format!("D_{i} changed the level"))?;
            if i > 0 {
                let lhs = d.specialize().map_err(err)?;
                let rhs = f.specialize().map_err(err)?.demazure(data, i).map_err(err)?;
                ensure(lhs == rhs, || format!("specialization does not commute with D_{i}"))?;
            }
            if data.kind == Kind::B {
                let lhs = dfn(data, i, &f).map_err(err)?.demazure_tau(data).map_err(err)?;
                let rhs = dfn(data, data.tau_node(i), &f.demazure_tau(data).map_err(err)?).map_err(err)?;
                ensure(lhs == rhs, || format!("D_tau D_{i} != D_tau(i) D_tau"))?;
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// Two reduced words for the longest element give the same operator.
pub fn braid_suite(data: &AlgebraData, dfn: DemazureFn, samples: usize, seed: u64) -> std::result::Result<usize, String> {
    let (w1, w2) = (data.longest_element_word(), data.longest_element_word_alt());
    ensure(w1 != w2 || data.rank == 1, || "the two stored words coincide".into())?;
    ensure(data.is_reduced_word(&w1) && data.is_reduced_word(&w2), || "stored words are not reduced".into())?;
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let f = random_charpoly(&mut rng, data.rank);
        let a = apply_word(data, dfn, &w1, &f).map_err(|e| e.to_string())?;
        let b = apply_word(data, dfn, &w2, &f).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("D_{{w0}} depends on the reduced word for {f:?}"))?;
    }
    Ok(samples)
}

fn all_lambdas(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=max).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn small_algebras() -> Vec<AlgebraData> {
    [(Kind::B, 2), (Kind::B, 3), (Kind::C, 2), (Kind::C, 3)]
        .into_iter()
        .map(|(k, n)| build_algebra(k, n).expect("supported"))
        .collect()
}

fn structure_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    for kind in [Kind::B, Kind::C] {
        for n in 2..=6 {
            let data = build_algebra(kind, n).map_err(|e| e.to_string())?;
            checks += check_word_identities(&data).map_err(|e| e.to_string())?;
            for lam in all_lambdas(n, 1) {
                minaff_data(&data, &lam).map_err(|e| e.to_string())?;
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// Full pipeline on every `lambda` with entries `<= max`; every run performs
/// the always-on character checks inside `minaff_character` and `decompose`.
pub fn character_suite(max: i64) -> std::result::Result<usize, String> {
    let mut checks = 0;
    for data in small_algebras() {
        for lam in all_lambdas(data.rank, max) {
            let ch = minaff_character(&data, &lam).map_err(|e| format!("{}{} {lam:?}: {e}", data.kind, data.rank))?;
            let m = decompose(&data, &ch).map_err(|e| format!("{}{} {lam:?}: {e}", data.kind, data.rank))?;
            ensure(m.get(&lam) == 1, || format!("{lam:?} does not occur exactly once"))?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn oracle_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    let mut rng = StdRng::seed_from_u64(7);
    for data in small_algebras() {
        for mu in all_lambdas(data.rank, 2) {
            let w = weyl_character(&data, &mu).map_err(|e| e.to_string())?;
            let f = freudenthal_character(&data, &mu).map_err(|e| e.to_string())?;
            ensure(*w == f, || format!("Weyl and Freudenthal characters of {mu:?} differ"))?;
            checks += 1;
        }
        for _ in 0..5 {
            let pick = |rng: &mut StdRng| (0..data.rank).map(|_| rng.gen_range(0..=2)).collect::<Vec<i64>>();
            let expect: MultiplicityMap = [(pick(&mut rng), 1), (pick(&mut rng), 2)].into_iter().collect();
            let f = recompose(&data, &expect).map_err(|e| e.to_string())?;
            ensure(decompose(&data, &f).map_err(|e| e.to_string())? == expect, || "decompose round trip failed".into())?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn kr_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    for data in small_algebras() {
        for i in 1..=data.rank {
            for m in 0..=2 {
                let ch = kr_character(&data, i, m).map_err(|e| e.to_string())?;
                let mut top = vec![0; data.rank];
                top[i - 1] = m;
                ensure(ch.coeff(&FiniteWeight(top)) == 1, || format!("KR top weight at node {i}, m = {m}"))?;
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn rho_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    for data in small_algebras() {
        let roots = positive_real_roots(&data, 2);
        for lam in all_lambdas(data.rank, 2) {
            for a in &roots {
                rho_check(&data, &lam, a).map_err(|e| e.to_string())?;
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn crystal_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    for n in [3, 4] {
        let data = build_algebra(Kind::B, n).map_err(|e| e.to_string())?;
        for (m1, m2, m4) in [(0, 0, 0), (1, 1, 1), (1, 0, 1), (0, 1, 1)] {
            let crystal = example_b44(n, m1, m2, m4).map_err(|e| e.to_string())?;
            let ch = minaff_character(&data, &b44_lambda(n, m1, m2, m4)).map_err(|e| e.to_string())?;
            let dem = decompose(&data, &ch).map_err(|e| e.to_string())?;
            ensure(crystal == dem, || format!("B{n} ({m1},{m2},{m4}): crystal and Demazure routes differ"))?;
            ensure(dem == b44_closed_form(n, m1, m2, m4).map_err(|e| e.to_string())?, || "closed form differs".into())?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn limit_suite() -> std::result::Result<usize, String> {
    let mut checks = 0;
    for kind in [Kind::B, Kind::C] {
        let data = build_algebra(kind, 2).map_err(|e| e.to_string())?;
        for j in [BTreeSet::new(), BTreeSet::from([1])] {
            let r = convergence_report(&data, &j, &standard_sequence(&data, &j, 5), 3).map_err(|e| e.to_string())?;
            ensure(r.stable_from(3), || format!("{kind}2 J={j:?}: limit not reached by k = 3"))?;
            checks += r.rows.len();
        }
    }
    Ok(checks)
}

/// Runs every suite with the given Demazure kernel.
pub fn run_with(dfn: DemazureFn) -> Vec<SuiteResult> {
    let algebras: Vec<AlgebraData> = [(Kind::A, 2), (Kind::B, 2), (Kind::B, 3), (Kind::C, 2), (Kind::C, 3)]
        .into_iter()
        .map(|(k, n)| build_algebra(k, n).expect("supported"))
        .collect();
    vec![
        timed("operators", || algebras.iter().map(|d| operator_suite(d, dfn, 20, 11)).sum()),
        timed("braid", || algebras.iter().map(|d| braid_suite(d, dfn, 20, 13)).sum()),
        timed("structure", structure_suite),
        timed("characters", || character_suite(3)),
        timed("oracles", oracle_suite),
        timed("kr", kr_suite),
        timed("rho", rho_suite),
        timed("crystal", crystal_suite),
        timed("limits", limit_suite),
    ]
}

pub fn run() -> Vec<SuiteResult> {
    run_with(demazure_i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flipped_kernel_is_caught() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert!(braid_suite(&b2, sign_flipped_demazure, 20, 13).is_err());
        assert!(braid_suite(&b2, demazure_i, 20, 13).is_ok());
    }

    #[test]
    fn operator_suite_passes() {
        let b3 = build_algebra(Kind::B, 3).unwrap();
        assert!(operator_suite(&b3, demazure_i, 5, 1).is_ok());
    }
}
