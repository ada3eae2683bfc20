//! Irreducible characters of the simple Lie algebra and decomposition of
//! W-invariant characters into them.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Ratio;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::charring::{CharPoly, FiniteChar, FiniteWeight};
use crate::error::{Error, Result};
use crate::rootsys::{AlgebraData, Kind, Rational};

/// Multiplicities of irreducible components, keyed by dominant highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityMap {
    pub entries: BTreeMap<Vec<i64>, i64>,
}

impl MultiplicityMap {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, mu: &[i64]) -> i64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    /// `[{"weight":[..],"mult":m}, ...]` in lexicographic weight order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(|(w, m)| json!({ "weight": w, "mult": m })).collect())
    }
}

impl FromIterator<(Vec<i64>, i64)> for MultiplicityMap {
    fn from_iter<I: IntoIterator<Item = (Vec<i64>, i64)>>(iter: I) -> Self {
        let mut entries = BTreeMap::new();
        for (w, m) in iter {
            *entries.entry(w).or_insert(0) += m;
        }
        entries.retain(|_, m| *m != 0);
        MultiplicityMap { entries }
    }
}

fn check_dominant(data: &AlgebraData, mu: &[i64]) -> Result<()> {
    if mu.len() != data.rank {
        return Err(Error::Input(format!("weight {mu:?} has the wrong length for rank {}", data.rank)));
    }
    if !data.is_dominant_fw(mu) {
        return Err(Error::Domain(format!("weight {mu:?} is not dominant")));
    }
    Ok(())
}

type CacheKey = (Kind, usize, Vec<i64>);

fn cache() -> &'static RwLock<FxHashMap<CacheKey, Arc<FiniteChar>>> {
    static CACHE: OnceLock<RwLock<FxHashMap<CacheKey, Arc<FiniteChar>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `ch V(mu) = D_{w0}(e^mu)`, memoized.
pub fn weyl_character(data: &AlgebraData, mu: &[i64]) -> Result<Arc<FiniteChar>> {
    check_dominant(data, mu)?;
    let key = (data.kind, data.rank, mu.to_vec());
    if let Some(ch) = cache().read().unwrap().get(&key) {
        return Ok(ch.clone());
    }
    let ch = Arc::new(
        CharPoly::monomial(crate::AffineWeight::finite(mu.to_vec()))
            .demazure_word(data, &data.longest_element_word())?
            .specialize()?,
    );
    Ok(cache().write().unwrap().entry(key).or_insert(ch).clone())
}

/// `ch V(mu)` by Freudenthal's recursion, independent of the Demazure
/// operators.
pub fn freudenthal_character(data: &AlgebraData, mu: &[i64]) -> Result<FiniteChar> {
    check_dominant(data, mu)?;
    let rho = data.rho();
    let plus_rho = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top_rho = plus_rho(mu);
    let top_norm = data.form_fw(&top_rho, &top_rho);
    let roots_fw: Vec<Vec<i64>> = data.pos_roots.iter().map(|b| data.root_to_fw(b)).collect();

    let mut mult: FxHashMap<Vec<i64>, i64> = FxHashMap::default();
    mult.insert(mu.to_vec(), 1);
    let mut layer = vec![mu.to_vec()];
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for w in &layer {
            for i in 1..=data.rank {
                let v: Vec<i64> = w.iter().zip(data.simple_root_fw(i)).map(|(a, b)| a - b).collect();
                if !mult.contains_key(&v) && !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        let mut found = Vec::new();
        for nu in next {
            let nu_rho = plus_rho(&nu);
            let denom = top_norm - data.form_fw(&nu_rho, &nu_rho);
            if denom <= Rational::from(0) {
                continue;
            }
            let mut sum = Rational::from(0);
            for a in &roots_fw {
                let mut up = nu.clone();
                loop {
                    for (u, x) in up.iter_mut().zip(a) {
                        *u += x;
                    }
                    match mult.get(&up) {
                        Some(&m) => sum += data.form_fw(&up, a) * m,
                        None => break,
                    }
                }
            }
            let m = sum * 2 / denom;
            if !m.is_integer() {
                return Err(Error::InvariantViolation(format!("non-integral Freudenthal multiplicity {m} at {nu:?}")));
            }
            let m = m.to_integer();
            if m > 0 {
                found.push((nu, m));
            }
        }
        layer = found.iter().map(|(w, _)| w.clone()).collect();
        mult.extend(found);
    }
    FiniteChar::from_terms(mult.into_iter().map(|(w, m)| (FiniteWeight(w), m)))
}

/// Weyl's dimension formula.
pub fn weyl_dim(data: &AlgebraData, mu: &[i64]) -> Result<i64> {
    check_dominant(data, mu)?;
    let mut dim = Ratio::<i128>::from(1);
    for beta in &data.pos_roots {
        let co = data.coroot(beta)?;
        let num: i128 = co.iter().zip(mu).map(|(&c, &m)| c as i128 * (m as i128 + 1)).sum();
        let den: i128 = co.iter().map(|&c| c as i128).sum();
        dim *= Ratio::new(num, den);
    }
    if !dim.is_integer() {
        return Err(Error::InvariantViolation(format!("Weyl dimension of {mu:?} is not an integer")));
    }
    i64::try_from(dim.to_integer()).map_err(|_| Error::Overflow)
}

fn height_key(data: &AlgebraData, w: &[i64]) -> Rational {
    data.height(w)
}

/// Peels off irreducible characters from the top.
pub fn decompose(data: &AlgebraData, f: &FiniteChar) -> Result<MultiplicityMap> {
    if let Some((w, _)) = f.iter().find(|(w, _)| w.0.len() != data.rank) {
        return Err(Error::Input(format!("weight {:?} has the wrong length for rank {}", w.0, data.rank)));
    }
    if !f.is_w_invariant(data) {
        return Err(Error::NotACharacter("input is not W-invariant".into()));
    }
    // Only dominant weights need tracking once invariance is known.
    let mut residual: FxHashMap<Vec<i64>, i64> =
        f.iter().filter(|(w, _)| data.is_dominant_fw(&w.0)).map(|(w, c)| (w.0.clone(), c)).collect();
    let mut out = BTreeMap::new();
    while let Some(top) = residual
        .keys()
        .max_by(|a, b| height_key(data, a).cmp(&height_key(data, b)).then_with(|| a.cmp(b)))
        .cloned()
    {
        let c = residual[&top];
        if c < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {c} at {top:?}")));
        }
        for (w, m) in weyl_character(data, &top)?.iter() {
            if !data.is_dominant_fw(&w.0) {
                continue;
            }
            let slot = residual.entry(w.0.clone()).or_insert(0);
            *slot = m.checked_mul(c).and_then(|x| slot.checked_sub(x)).ok_or(Error::Overflow)?;
            if *slot == 0 {
                residual.remove(&w.0);
            }
        }
        if residual.contains_key(&top) {
            return Err(Error::NotACharacter(format!("peeling {top:?} left a residue")));
        }
        out.insert(top, c);
    }
    let mults = MultiplicityMap { entries: out };
    let mut dim_sum = 0i64;
    for (mu, m) in &mults.entries {
        dim_sum = weyl_dim(data, mu)?.checked_mul(*m).and_then(|x| x.checked_add(dim_sum)).ok_or(Error::Overflow)?;
    }
    let coeff_sum = f.coefficient_sum()?;
    if dim_sum != coeff_sum {
        return Err(Error::InvariantViolation(format!(
            "sum of mult * dim is {dim_sum} but the character has total {coeff_sum}"
        )));
    }
    Ok(mults)
}

/// `sum_mu m_mu ch V(mu)`.
pub fn recompose(data: &AlgebraData, mults: &MultiplicityMap) -> Result<FiniteChar> {
    let mut acc = FiniteChar::zero();
    for (mu, &m) in &mults.entries {
        acc = acc.add(&weyl_character(data, mu)?.scale(m)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_algebra;

    fn fw(v: &[i64]) -> FiniteWeight {
        FiniteWeight(v.to_vec())
    }

    #[test]
    fn small_weyl_characters() {
        let a1 = build_algebra(Kind::A, 1).unwrap();
        let ch = weyl_character(&a1, &[3]).unwrap();
        let expect = FiniteChar::from_terms([3, 1, -1, -3].map(|m| (fw(&[m]), 1))).unwrap();
        assert_eq!(*ch, expect);
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let spin = weyl_character(&b2, &[0, 1]).unwrap();
        assert_eq!(spin.len(), 4);
        assert_eq!(weyl_dim(&b2, &[1, 0]).unwrap(), 5);
        assert_eq!(weyl_dim(&b2, &[0, 0]).unwrap(), 1);
        assert_eq!(weyl_dim(&a1, &[4]).unwrap(), 5);
        assert!(matches!(weyl_character(&b2, &[-1, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn freudenthal_a2_adjoint() {
        let a2 = build_algebra(Kind::A, 2).unwrap();
        let ch = freudenthal_character(&a2, &[1, 1]).unwrap();
        assert_eq!(ch.coeff(&fw(&[0, 0])), 2);
        assert_eq!(ch, *weyl_character(&a2, &[1, 1]).unwrap());
        assert_eq!(freudenthal_character(&a2, &[0, 0]).unwrap(), FiniteChar::monomial(fw(&[0, 0])));
    }

    #[test]
    fn decompose_sums() {
        let c2 = build_algebra(Kind::C, 2).unwrap();
        let f = weyl_character(&c2, &[2, 1]).unwrap().add(&weyl_character(&c2, &[0, 1]).unwrap().scale(2).unwrap()).unwrap();
        let m = decompose(&c2, &f).unwrap();
        assert_eq!(m, [(vec![2, 1], 1), (vec![0, 1], 2)].into_iter().collect());
        assert_eq!(recompose(&c2, &m).unwrap(), f);
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let a2 = build_algebra(Kind::A, 2).unwrap();
        let lonely = FiniteChar::monomial(fw(&[1, 0]));
        assert!(matches!(decompose(&a2, &lonely), Err(Error::NotACharacter(_))));
        let diff = weyl_character(&a2, &[1, 0]).unwrap().scale(-1).unwrap();
        assert!(matches!(decompose(&a2, &diff), Err(Error::NotACharacter(_))));
        // invariant but with the wrong multiplicity at an inner weight
        let bad = weyl_character(&a2, &[1, 1]).unwrap().sub(&FiniteChar::term(fw(&[0, 0]), 3)).unwrap();
        assert!(matches!(decompose(&a2, &bad), Err(Error::NotACharacter(_))));
    }

    #[test]
    fn json_shape() {
        let m: MultiplicityMap = [(vec![1, 0], 1), (vec![0, 0], 2)].into_iter().collect();
        assert_eq!(m.to_json(), json!([{"weight":[0,0],"mult":2},{"weight":[1,0],"mult":1}]));
    }
}
