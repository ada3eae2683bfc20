//! Sparse integer group rings `Z[P_hat]` and `Z[P]` with Demazure operators.
//!
//! `D_i` is evaluated monomial by monomial through its closed string form:
//! for `e^mu` with `k = <alpha_i^vee, mu>`,
//!
//! - `k >= 0`:  `e^mu + e^(mu - alpha_i) + ... + e^(mu - k alpha_i)`
//! - `k == -1`: `0`
//! - `k <= -2`: `-(e^(mu + alpha_i) + ... + e^(mu + (-k-1) alpha_i))`
//!
//! Each monomial expands independently, so the support is split across
//! threads and the partial sums are merged by integer addition.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{add_into, expand_sum, Exec};
use crate::rootsys::{AffineWeight, AlgebraData, ExtWeylWord, Letter, Rational};

/// A weight that the Weyl group generators can act on.
pub trait Weight: Clone + Eq + Hash + Ord + Send + Sync + fmt::Debug {
    /// `<alpha_i^vee, self>`.
    fn coroot(&self, data: &AlgebraData, i: usize) -> i64;
    /// `self + k alpha_i`.
    fn shift(&mut self, data: &AlgebraData, i: usize, k: i64);
    fn plus(&self, other: &Self) -> Self;
    /// Whether node `i` acts on this kind of weight.
    fn has_node(data: &AlgebraData, i: usize) -> bool;
}

/// A finite weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeight(pub Vec<i64>);

impl Weight for FiniteWeight {
    fn coroot(&self, _data: &AlgebraData, i: usize) -> i64 {
        self.0[i - 1]
    }

    fn shift(&mut self, data: &AlgebraData, i: usize, k: i64) {
        for (a, s) in self.0.iter_mut().zip(data.simple_root_fw(i)) {
            *a += k * s;
        }
    }

    fn plus(&self, other: &Self) -> Self {
        FiniteWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn has_node(data: &AlgebraData, i: usize) -> bool {
        (1..=data.rank).contains(&i)
    }
}

impl Weight for AffineWeight {
    fn coroot(&self, data: &AlgebraData, i: usize) -> i64 {
        data.pairing(i, self)
    }

    fn shift(&mut self, data: &AlgebraData, i: usize, k: i64) {
        data.shift_by_root(self, i, k);
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn has_node(data: &AlgebraData, i: usize) -> bool {
        i <= data.rank
    }
}

/// A finitely supported formal sum `sum c_w e^w` with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<W: Weight> {
    terms: FxHashMap<W, i64>,
}

/// `Z[P + Z Lambda_0 + Q delta]`.
pub type CharPoly = Poly<AffineWeight>;
/// `Z[P]`.
pub type FiniteChar = Poly<FiniteWeight>;

impl<W: Weight> Default for Poly<W> {
    fn default() -> Self {
        Poly { terms: FxHashMap::default() }
    }
}

impl<W: Weight> Poly<W> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: W) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: W, coeff: i64) -> Self {
        let mut terms = FxHashMap::default();
        if coeff != 0 {
            terms.insert(w, coeff);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (W, i64)>>(iter: I) -> Result<Self> {
        let mut terms = FxHashMap::default();
        for (w, c) in iter {
            add_into(&mut terms, w, c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Poly { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &W) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    /// Terms in canonical (lexicographic weight) order.
    pub fn sorted_terms(&self) -> Vec<(&W, i64)> {
        let mut v: Vec<(&W, i64)> = self.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coefficient_sum(&self) -> Result<i64> {
        self.terms.values().try_fold(0i64, |acc, &c| acc.checked_add(c)).ok_or(Error::Overflow)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        for (w, &c) in &other.terms {
            add_into(&mut terms, w.clone(), c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Poly { terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let mut terms = FxHashMap::default();
        for (w, &c) in &self.terms {
            terms.insert(w.clone(), c.checked_mul(k).ok_or(Error::Overflow)?);
        }
        Ok(Poly { terms })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        let (outer, inner) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let left: Vec<(&W, i64)> = outer.iter().collect();
        let right: Vec<(&W, i64)> = inner.iter().collect();
        let terms = expand_sum(&left, exec, |(a, ca), emit| {
            for (b, cb) in &right {
                emit(a.plus(b), ca.checked_mul(*cb).ok_or(Error::Overflow)?)?;
            }
            Ok(())
        })?;
        Ok(Poly { terms })
    }

    /// Multiplication by `e^w`.
    pub fn translate(&self, w: &W) -> Self {
        Poly { terms: self.terms.iter().map(|(v, &c)| (v.plus(w), c)).collect() }
    }

    /// The Weyl group action `s_i(e^mu) = e^(s_i mu)`.
    pub fn reflect(&self, data: &AlgebraData, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, &c)| {
                let k = w.coroot(data, i);
                let mut v = w.clone();
                v.shift(data, i, -k);
                (v, c)
            })
            .collect();
        Poly { terms }
    }

    /// True if `s_i f = f` for every node `i` in `nodes`.
    pub fn is_invariant_under(&self, data: &AlgebraData, nodes: impl IntoIterator<Item = usize>) -> bool {
        nodes.into_iter().all(|i| {
            self.terms.iter().all(|(w, &c)| {
                let k = w.coroot(data, i);
                if k == 0 {
                    return true;
                }
                let mut v = w.clone();
                v.shift(data, i, -k);
                self.coeff(&v) == c
            })
        })
    }

    pub fn demazure(&self, data: &AlgebraData, i: usize) -> Result<Self> {
        self.demazure_with(data, i, Exec::default())
    }

    pub fn demazure_with(&self, data: &AlgebraData, i: usize, exec: Exec) -> Result<Self> {
        if !W::has_node(data, i) {
            return Err(Error::Domain(format!("node {i} does not act on this weight lattice")));
        }
        let input: Vec<(&W, i64)> = self.iter().collect();
        let terms = expand_sum(&input, exec, |(w, c), emit| {
            let k = w.coroot(data, i);
            if k >= 0 {
                let mut cur = (*w).clone();
                for _ in 0..k {
                    let next = {
                        let mut n = cur.clone();
                        n.shift(data, i, -1);
                        n
                    };
                    emit(std::mem::replace(&mut cur, next), *c)?;
                }
                emit(cur, *c)?;
            } else if k <= -2 {
                let mut cur = (*w).clone();
                for _ in 1..=(-k - 1) {
                    cur.shift(data, i, 1);
                    emit(cur.clone(), -*c)?;
                }
            }
            Ok(())
        })?;
        Ok(Poly { terms })
    }

    /// Applies the word `s_{i_1} ... s_{i_k}` as `D_{i_1} o ... o D_{i_k}`.
    /// Tau letters are handled by the caller-specific wrappers.
    fn demazure_indices(&self, data: &AlgebraData, word: &ExtWeylWord, exec: Exec, tau: impl Fn(&Self) -> Result<Self>) -> Result<Self> {
        let mut out = self.clone();
        for letter in word.letters.iter().rev() {
            out = match *letter {
                Letter::S(i) => out.demazure_with(data, i, exec)?,
                Letter::Tau => tau(&out)?,
            };
        }
        Ok(out)
    }
}

impl CharPoly {
    /// `D_tau(e^xi) = e^(tau xi)` (type B only).
    pub fn demazure_tau(&self, data: &AlgebraData) -> Result<Self> {
        let mut terms = FxHashMap::default();
        for (w, &c) in &self.terms {
            terms.insert(data.tau_apply(w)?, c);
        }
        Ok(Poly { terms })
    }

    pub fn demazure_word(&self, data: &AlgebraData, word: &ExtWeylWord) -> Result<Self> {
        self.demazure_word_with(data, word, Exec::default())
    }

    pub fn demazure_word_with(&self, data: &AlgebraData, word: &ExtWeylWord, exec: Exec) -> Result<Self> {
        self.demazure_indices(data, word, exec, |f| f.demazure_tau(data))
    }

    /// Sets `e^Lambda_0 = e^delta = 1`.
    pub fn specialize(&self) -> Result<FiniteChar> {
        let mut terms = FxHashMap::default();
        for (w, &c) in &self.terms {
            add_into(&mut terms, FiniteWeight(w.fw.clone()), c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Poly { terms })
    }

    /// Sets `e^delta = 1`, keeping the level.
    pub fn forget_delta(&self) -> Result<Self> {
        let mut terms = FxHashMap::default();
        for (w, &c) in &self.terms {
            add_into(&mut terms, w.mod_delta(), c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Poly { terms })
    }

    /// Splits the specialization by the `delta` coefficient.
    pub fn graded_slices(&self) -> Result<BTreeMap<Rational, FiniteChar>> {
        let mut slices: BTreeMap<Rational, FxHashMap<FiniteWeight, i64>> = BTreeMap::new();
        for (w, &c) in &self.terms {
            add_into(slices.entry(w.delta).or_default(), FiniteWeight(w.fw.clone()), c)?;
        }
        Ok(slices
            .into_iter()
            .map(|(d, mut t)| {
                t.retain(|_, c| *c != 0);
                (d, Poly { terms: t })
            })
            .filter(|(_, p)| !p.is_empty())
            .collect())
    }

    /// Canonical JSON: `[{"fw":[..],"level":k,"delta":"p/q","coeff":c}, ...]`, sorted.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(w, c)| {
                    json!({
                        "fw": w.fw,
                        "level": w.level,
                        "delta": format!("{}/{}", w.delta.numer(), w.delta.denom()),
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Input(format!("malformed character JSON: {what}"));
        let arr = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let fw = t["fw"]
                .as_array()
                .ok_or_else(|| bad("fw"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("fw entry")))
                .collect::<Result<Vec<_>>>()?;
            let level = t["level"].as_i64().ok_or_else(|| bad("level"))?;
            let delta = parse_rational(t["delta"].as_str().ok_or_else(|| bad("delta"))?).ok_or_else(|| bad("delta"))?;
            let coeff = t["coeff"].as_i64().ok_or_else(|| bad("coeff"))?;
            terms.push((AffineWeight::new(fw, level, delta), coeff));
        }
        Self::from_terms(terms)
    }
}

impl FiniteChar {
    pub fn demazure_word(&self, data: &AlgebraData, word: &ExtWeylWord) -> Result<Self> {
        self.demazure_word_with(data, word, Exec::default())
    }

    pub fn demazure_word_with(&self, data: &AlgebraData, word: &ExtWeylWord, exec: Exec) -> Result<Self> {
        self.demazure_indices(data, word, exec, |_| {
            Err(Error::Domain("tau does not act on finite characters".into()))
        })
    }

    /// Invariance under the finite Weyl group.
    pub fn is_w_invariant(&self, data: &AlgebraData) -> bool {
        self.is_invariant_under(data, 1..=data.rank)
    }

    /// `[{"weight":[..],"coeff":c}, ...]`, sorted.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(w, c)| json!({ "weight": w.0, "coeff": c }))
                .collect(),
        )
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            let n: i64 = n.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from(s.trim().parse::<i64>().ok()?)),
    }
}

/// `D_i f` on the affine group ring.
pub fn demazure_i(data: &AlgebraData, i: usize, f: &CharPoly) -> Result<CharPoly> {
    f.demazure(data, i)
}

pub fn demazure_tau(data: &AlgebraData, f: &CharPoly) -> Result<CharPoly> {
    f.demazure_tau(data)
}

pub fn demazure_word(data: &AlgebraData, w: &ExtWeylWord, f: &CharPoly) -> Result<CharPoly> {
    f.demazure_word(data, w)
}

pub fn specialize(f: &CharPoly) -> Result<FiniteChar> {
    f.specialize()
}

pub fn graded_slices(f: &CharPoly) -> Result<BTreeMap<Rational, FiniteChar>> {
    f.graded_slices()
}
