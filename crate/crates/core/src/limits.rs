//! Truncated power series in `e^{-beta}`, `beta in Q+`, and the limit of
//! normalized minimal-affinization characters.
//!
//! For `J` a set of nodes the limit is compared with
//!
//! ```text
//! prod_{alpha in D+ \ D+^J} 1/(1 - e^-alpha) * prod_{alpha in D+ \ D+^{1,J}} 1/(1 - e^-alpha)
//! ```
//!
//! coefficient by coefficient up to a height cap.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{map_jobs, Exec};
use crate::minaff::{minaff_character_with, validate_lambda};
use crate::rootsys::AlgebraData;

/// `sum_beta c_beta e^{-beta}` with every `beta` of height at most `height_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub height_cap: usize,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl TruncatedSeries {
    pub fn coeff(&self, beta: &[i64]) -> i64 {
        self.terms.get(beta).copied().unwrap_or(0)
    }

    /// Drops every term above height `h`.
    pub fn restrict(&self, h: usize) -> TruncatedSeries {
        let h = h.min(self.height_cap);
        TruncatedSeries {
            height_cap: h,
            terms: self.terms.iter().filter(|(b, _)| height(b) <= h).map(|(b, &c)| (b.clone(), c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(b, c)| json!({ "beta": b, "coeff": c })).collect())
    }
}

fn height(beta: &[i64]) -> usize {
    beta.iter().sum::<i64>() as usize
}

/// Every `beta in Z_{>=0}^n` with height at most `h`, ordered by height.
pub fn q_plus_up_to(rank: usize, h: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; rank]];
    let mut layer = out.clone();
    for _ in 0..h {
        let mut next = BTreeSet::new();
        for b in &layer {
            for i in 0..rank {
                let mut c = b.clone();
                c[i] += 1;
                next.insert(c);
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn validate_j(data: &AlgebraData, j: &BTreeSet<usize>) -> Result<()> {
    match j.iter().find(|&&i| i == 0 || i > data.rank) {
        Some(i) => Err(Error::Input(format!("node {i} is not in 1..={}", data.rank))),
        None => Ok(()),
    }
}

/// The roots whose geometric series appear in the product, with repetition.
pub fn product_roots(data: &AlgebraData, j: &BTreeSet<usize>) -> Result<Vec<Vec<i64>>> {
    validate_j(data, j)?;
    let sets = data.root_sets(j);
    let mut out: Vec<Vec<i64>> = sets.pos.iter().filter(|r| !sets.d_j.contains(r)).cloned().collect();
    out.extend(sets.pos.iter().filter(|r| !sets.d1_j.contains(r)).cloned());
    Ok(out)
}

/// Expansion of the limit product up to height `h`.
pub fn product_formula(data: &AlgebraData, j: &BTreeSet<usize>, h: usize) -> Result<TruncatedSeries> {
    let roots = product_roots(data, j)?;
    let betas = q_plus_up_to(data.rank, h);
    let mut terms: BTreeMap<Vec<i64>, i64> = betas.iter().map(|b| (b.clone(), 0)).collect();
    terms.insert(vec![0; data.rank], 1);
    // Multiply by 1/(1 - e^-alpha) one root at a time: c'[b] = c[b] + c'[b - alpha],
    // visiting b by increasing height so c'[b - alpha] is already final.
    for alpha in &roots {
        for b in &betas {
            let prev: Vec<i64> = b.iter().zip(alpha).map(|(x, a)| x - a).collect();
            if prev.iter().any(|&x| x < 0) {
                continue;
            }
            let add = terms[&prev];
            let slot = terms.get_mut(b).unwrap();
            *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(TruncatedSeries { height_cap: h, terms })
}

/// `e^{-lambda} ch L(lambda)` re-indexed by `beta = lambda - mu` and
/// truncated at height `h`.
pub fn normalized_char(data: &AlgebraData, lambda: &[i64], h: usize) -> Result<TruncatedSeries> {
    normalized_char_with(data, lambda, h, Exec::default())
}

pub fn normalized_char_with(data: &AlgebraData, lambda: &[i64], h: usize, exec: Exec) -> Result<TruncatedSeries> {
    let ch = minaff_character_with(data, lambda, exec)?;
    let mut terms = BTreeMap::new();
    for (mu, c) in ch.iter() {
        let beta = data
            .root_difference(lambda, &mu.0)
            .filter(|b| b.iter().all(|&x| x >= 0))
            .ok_or_else(|| Error::InvariantViolation(format!("weight {:?} is not in lambda - Q+", mu.0)))?;
        if height(&beta) <= h {
            terms.insert(beta, c);
        }
    }
    Ok(TruncatedSeries { height_cap: h, terms })
}

/// `lambda^k = k * sum_{i not in J} varpi_i` for `k = 1..=k_max`.
pub fn standard_sequence(data: &AlgebraData, j: &BTreeSet<usize>, k_max: i64) -> Vec<Vec<i64>> {
    (1..=k_max)
        .map(|k| (1..=data.rank).map(|i| if j.contains(&i) { 0 } else { k }).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub beta: Vec<i64>,
    pub product_coeff: i64,
    /// Coefficient for each `lambda^k`, `k = 1, 2, ...`.
    pub per_k: Vec<i64>,
    /// Least `k` from which the coefficient agrees with the product to the
    /// end of the sequence.
    pub stabilized_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub j: BTreeSet<usize>,
    pub height_cap: usize,
    pub lambdas: Vec<Vec<i64>>,
    pub rows: Vec<ReportRow>,
}

impl ConvergenceReport {
    /// True if every coefficient agrees with the product for all `k >= k0`.
    pub fn stable_from(&self, k0: usize) -> bool {
        self.rows.iter().all(|r| r.stabilized_at.is_some_and(|s| s <= k0))
    }

    /// Rows that have not reached the product value by the end of the sequence.
    pub fn unstable_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.stabilized_at.is_none())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "J": self.j,
            "height": self.height_cap,
            "lambdas": self.lambdas,
            "rows": self.rows.iter().map(|r| json!({
                "beta": r.beta,
                "product_coeff": r.product_coeff,
                "per_k": r.per_k,
                "stabilized_at": r.stabilized_at,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn convergence_report(
    data: &AlgebraData,
    j: &BTreeSet<usize>,
    lambda_seq: &[Vec<i64>],
    h: usize,
) -> Result<ConvergenceReport> {
    validate_j(data, j)?;
    for (k, lam) in lambda_seq.iter().enumerate() {
        validate_lambda(data, lam)?;
        if let Some(&i) = j.iter().find(|&&i| lam[i - 1] != 0) {
            return Err(Error::Input(format!("lambda^{} is nonzero on node {i} of J", k + 1)));
        }
        if k > 0 {
            let prev = &lambda_seq[k - 1];
            if let Some(i) = (1..=data.rank).find(|i| !j.contains(i) && lam[i - 1] <= prev[i - 1]) {
                return Err(Error::Input(format!("lambda^k is not strictly increasing on node {i}")));
            }
        }
    }
    let product = product_formula(data, j, h)?;
    let series: Vec<TruncatedSeries> = map_jobs(lambda_seq, Exec::default(), |lam| {
        normalized_char_with(data, lam, h, Exec::Sequential)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let rows = q_plus_up_to(data.rank, h)
        .into_iter()
        .map(|beta| {
            let product_coeff = product.coeff(&beta);
            let per_k: Vec<i64> = series.iter().map(|s| s.coeff(&beta)).collect();
            let tail = per_k.iter().rev().take_while(|&&c| c == product_coeff).count();
            let stabilized_at = (tail > 0).then(|| per_k.len() - tail + 1);
            ReportRow { beta, product_coeff, per_k, stabilized_at }
        })
        .collect();
    Ok(ConvergenceReport { j: j.clone(), height_cap: h, lambdas: lambda_seq.to_vec(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_algebra, Kind};

    #[test]
    fn b2_product_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let p = product_formula(&b2, &BTreeSet::new(), 4).unwrap();
        assert_eq!(p.coeff(&[0, 0]), 1);
        assert_eq!(p.coeff(&[1, 0]), 1);
        assert_eq!(p.coeff(&[1, 2]), 4);
        let p2 = product_formula(&b2, &BTreeSet::new(), 2).unwrap();
        assert_eq!(p.restrict(2), p2);
    }

    #[test]
    fn q_plus_counts() {
        // compositions of at most 3 into 2 parts
        assert_eq!(q_plus_up_to(2, 3).len(), 10);
    }

    #[test]
    fn normalized_examples() {
        let a2 = build_algebra(Kind::A, 2).unwrap();
        let s = normalized_char(&a2, &[0, 0], 3).unwrap();
        assert_eq!(s.terms, [(vec![0, 0], 1)].into());
        let s = normalized_char(&a2, &[2, 2], 2).unwrap();
        assert_eq!(s.coeff(&[0, 0]), 1);
        assert_eq!(s.coeff(&[1, 0]), 1);
    }

    #[test]
    fn hypotheses_are_checked() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let j: BTreeSet<usize> = [1].into();
        assert!(matches!(convergence_report(&b2, &j, &[vec![1, 1]], 2), Err(Error::Input(_))));
        let none = BTreeSet::new();
        assert!(matches!(
            convergence_report(&b2, &none, &[vec![2, 2], vec![2, 3]], 2),
            Err(Error::Input(_))
        ));
        assert!(matches!(product_formula(&b2, &[3].into(), 2), Err(Error::Input(_))));
    }

    #[test]
    fn degenerate_full_j() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let all: BTreeSet<usize> = [1, 2].into();
        let r = convergence_report(&b2, &all, &[vec![0, 0]], 3).unwrap();
        assert_eq!(product_formula(&b2, &all, 3).unwrap().terms, [(vec![0, 0], 1)].into());
        assert!(r.stable_from(1));
    }
}
