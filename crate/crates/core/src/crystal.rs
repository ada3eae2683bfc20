//! Tableau crystals of type `A_k`, the signature rule on tensor products,
//! and the subsets `F_w T` generated by ordered powers of lowering operators.
//!
//! A tensor product is evaluated by flattening it into a word of letters and
//! running the usual bracketing on that word. Each tableau is read in the
//! Far-Eastern order (columns right to left, each column top to bottom).

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::decomp::MultiplicityMap;
use crate::error::{Error, Result};
use crate::rootsys::{build_algebra, Kind};

/// A letter position `(factor, row, col)`.
type Pos = (usize, usize, usize);

/// Order convention for `b_1 (x) b_2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TensorRule {
    /// Kashiwara's convention: `f_i` prefers the left factor,
    /// `f_1([1] (x) [1]) = [2] (x) [1]`.
    #[default]
    Kashiwara,
    /// The mirrored convention: `f_1([1] (x) [1]) = [1] (x) [2]`.
    AntiKashiwara,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    E,
    F,
}

/// A semistandard tableau of rectangular shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// The highest weight tableau: row `r` is filled with `r`.
    pub fn highest(rows: usize, cols: usize) -> Self {
        Tableau { rows: (1..=rows).map(|r| vec![r as u8; cols]).collect() }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_semistandard(&self, k: usize) -> bool {
        let c = self.n_cols();
        self.rows.iter().all(|r| r.len() == c && r.iter().all(|&v| v >= 1 && v as usize <= k + 1))
            && self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
            && self.rows.windows(2).all(|p| p[0].iter().zip(&p[1]).all(|(a, b)| a < b))
    }

    fn reading_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_cols()).rev().flat_map(move |c| (0..self.n_rows()).map(move |r| (r, c)))
    }

    pub fn to_json(&self) -> Value {
        json!(self.rows)
    }
}

/// `b_1 (x) ... (x) b_p`, factors in the order written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrystalElem {
    pub factors: Vec<Tableau>,
}

impl CrystalElem {
    pub fn new(factors: Vec<Tableau>) -> Self {
        CrystalElem { factors }
    }

    pub fn single(t: Tableau) -> Self {
        CrystalElem { factors: vec![t] }
    }

    pub fn tensor(&self, other: &CrystalElem) -> CrystalElem {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        CrystalElem { factors }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.factors.iter().map(Tableau::to_json).collect())
    }
}

/// A finite set of crystal elements together with how it was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrystalSet {
    pub elems: BTreeSet<CrystalElem>,
    pub provenance: Vec<String>,
}

impl CrystalSet {
    pub fn singleton(b: CrystalElem, what: impl Into<String>) -> Self {
        CrystalSet { elems: [b].into(), provenance: vec![what.into()] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `{u (x) b : b in self}`.
    pub fn tensor_left(&self, u: &CrystalElem) -> CrystalSet {
        let mut provenance = self.provenance.clone();
        provenance.push("tensor on the left".into());
        CrystalSet { elems: self.elems.iter().map(|b| u.tensor(b)).collect(), provenance }
    }

    /// `{b (x) c : b in self, c in other}`.
    pub fn tensor(&self, other: &CrystalSet) -> CrystalSet {
        let elems = self.elems.iter().flat_map(|b| other.elems.iter().map(move |c| b.tensor(c))).collect();
        let mut provenance = self.provenance.clone();
        provenance.push(format!("tensor with [{}]", other.provenance.join("; ")));
        CrystalSet { elems, provenance }
    }
}

/// Crystal operations for `A_k` under a fixed tensor rule.
#[derive(Clone, Copy, Debug)]
pub struct Crystal {
    pub k: usize,
    pub rule: TensorRule,
}

impl Crystal {
    pub fn new(k: usize) -> Self {
        Crystal { k, rule: TensorRule::default() }
    }

    pub fn with_rule(k: usize, rule: TensorRule) -> Self {
        Crystal { k, rule }
    }

    /// Letter positions `(factor, row, col)` in signature order.
    fn word(&self, b: &CrystalElem) -> Vec<Pos> {
        let order: Vec<usize> = match self.rule {
            TensorRule::Kashiwara => (0..b.factors.len()).collect(),
            TensorRule::AntiKashiwara => (0..b.factors.len()).rev().collect(),
        };
        order
            .into_iter()
            .flat_map(|f| b.factors[f].reading_positions().map(move |(r, c)| (f, r, c)))
            .collect()
    }

    /// Unbracketed `-` positions (left to right) and `+` positions.
    fn signature(&self, b: &CrystalElem, i: usize) -> (Vec<Pos>, Vec<Pos>) {
        let (lo, hi) = (i as u8, i as u8 + 1);
        let mut minus = Vec::new();
        let mut plus: Vec<Pos> = Vec::new();
        for pos in self.word(b) {
            let v = b.factors[pos.0].rows[pos.1][pos.2];
            if v == lo {
                plus.push(pos);
            } else if v == hi && plus.pop().is_none() {
                minus.push(pos);
            }
        }
        (minus, plus)
    }

    pub fn epsilon(&self, b: &CrystalElem, i: usize) -> usize {
        self.signature(b, i).0.len()
    }

    pub fn phi(&self, b: &CrystalElem, i: usize) -> usize {
        self.signature(b, i).1.len()
    }

    /// `e_i b` or `f_i b`; `None` stands for 0.
    pub fn kashiwara(&self, b: &CrystalElem, i: usize, dir: Dir) -> Option<CrystalElem> {
        assert!((1..=self.k).contains(&i), "node {i} out of range for A_{}", self.k);
        let (minus, plus) = self.signature(b, i);
        let ((f, r, c), new) = match dir {
            Dir::E => (*minus.last()?, i as u8),
            Dir::F => (*plus.first()?, i as u8 + 1),
        };
        let mut out = b.clone();
        out.factors[f].rows[r][c] = new;
        Some(out)
    }

    pub fn e(&self, b: &CrystalElem, i: usize) -> Option<CrystalElem> {
        self.kashiwara(b, i, Dir::E)
    }

    pub fn f(&self, b: &CrystalElem, i: usize) -> Option<CrystalElem> {
        self.kashiwara(b, i, Dir::F)
    }

    /// Letter content `c_1..c_{k+1}`.
    pub fn content(&self, b: &CrystalElem) -> Vec<i64> {
        let mut c = vec![0i64; self.k + 1];
        for t in &b.factors {
            for &v in t.rows.iter().flatten() {
                c[v as usize - 1] += 1;
            }
        }
        c
    }

    /// Weight in fundamental-weight coordinates of `A_k`.
    pub fn weight(&self, b: &CrystalElem) -> Vec<i64> {
        let c = self.content(b);
        (0..self.k).map(|i| c[i] - c[i + 1]).collect()
    }

    /// `a` with `wt(b) = wt(highest) - sum a_j alpha_j`.
    pub fn depth(&self, b: &CrystalElem) -> Vec<i64> {
        let c = self.content(b);
        let mut h = vec![0i64; self.k + 1];
        for t in &b.factors {
            for (r, row) in t.rows.iter().enumerate() {
                h[r] += row.len() as i64;
            }
        }
        let mut acc = 0;
        (0..self.k)
            .map(|j| {
                acc += h[j] - c[j];
                acc
            })
            .collect()
    }

    /// All semistandard tableaux of shape `rows x cols` over `1..=k+1`.
    pub fn rect_crystal(&self, rows: usize, cols: usize) -> Result<CrystalSet> {
        if rows == 0 || rows > self.k + 1 {
            return Err(Error::Input(format!("a {rows}-row rectangle does not fit A_{}", self.k)));
        }
        let mut out = BTreeSet::new();
        let mut t = Tableau { rows: vec![vec![0u8; cols]; rows] };
        fill(&mut t, 0, self.k as u8 + 1, &mut out);
        let expect = hook_content_count(self.k + 1, rows, cols);
        if out.len() as u128 != expect {
            return Err(Error::InvariantViolation(format!(
                "enumerated {} tableaux, hook-content formula gives {expect}",
                out.len()
            )));
        }
        Ok(CrystalSet {
            elems: out.into_iter().map(CrystalElem::single).collect(),
            provenance: vec![format!("B({cols} Lambda_{rows}) of A_{}", self.k)],
        })
    }

    /// `{f_{i_1}^{s_1} ... f_{i_k}^{s_k} b : s_j >= 0, b in T}`.
    pub fn f_word_set(&self, t: &CrystalSet, word: &[usize]) -> CrystalSet {
        let mut cur = t.elems.clone();
        for &i in word.iter().rev() {
            let mut next = BTreeSet::new();
            for b in &cur {
                let mut x = Some(b.clone());
                while let Some(y) = x {
                    x = self.f(&y, i);
                    next.insert(y);
                }
            }
            cur = next;
        }
        let mut provenance = t.provenance.clone();
        provenance.push(format!("F{word:?}"));
        CrystalSet { elems: cur, provenance }
    }

    /// Elements `b` with `e_i^{bound} b = 0` for every constrained node.
    pub fn classically_highest(&self, s: &CrystalSet, bounds: &BTreeMap<usize, usize>) -> CrystalSet {
        let elems = s
            .elems
            .iter()
            .filter(|b| bounds.iter().all(|(&i, &bound)| self.epsilon(b, i) < bound))
            .cloned()
            .collect();
        let mut provenance = s.provenance.clone();
        provenance.push(format!("highest for {bounds:?}"));
        CrystalSet { elems, provenance }
    }
}

fn fill(t: &mut Tableau, cell: usize, max: u8, out: &mut BTreeSet<Tableau>) {
    let (rows, cols) = (t.n_rows(), t.n_cols());
    if cell == rows * cols {
        out.insert(t.clone());
        return;
    }
    let (r, c) = (cell / cols, cell % cols);
    let mut lo = 1u8;
    if c > 0 {
        lo = lo.max(t.rows[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(t.rows[r - 1][c] + 1);
    }
    let hi = max - (rows - 1 - r) as u8;
    for v in lo..=hi {
        t.rows[r][c] = v;
        fill(t, cell + 1, max, out);
    }
}

/// Number of semistandard tableaux of shape `rows x cols` with entries in
/// `1..=m`.
pub fn hook_content_count(m: usize, rows: usize, cols: usize) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for r in 0..rows {
        for c in 0..cols {
            num *= (m + c - r) as u128;
            den *= ((cols - c) + (rows - r) - 1) as u128;
        }
    }
    num / den
}

/// `lambda` for `B_n` matching the labels `m_1, m_2, m_4` of the example
/// below. For `n = 3` the node carrying `m_4` is the spin node, where the
/// same crystal corresponds to `2 m_4`.
pub fn b44_lambda(n: usize, m1: i64, m2: i64, m4: i64) -> Vec<i64> {
    let mut l = vec![0i64; n];
    l[0] = m1;
    l[1] = m2;
    l[2] = if n == 3 { 2 * m4 } else { m4 };
    l
}

/// Maps a depth `(a_1, a_2, a_3)` in the `A_3` subdiagram `{1, 2, 0}` of
/// affine `B_n` to the finite weight `(m_1 + m_4) varpi_1 - a_1 alpha_1 -
/// a_2 alpha_2 + a_3 theta`.
fn b44_weight(data: &crate::AlgebraData, m1: i64, m4: i64, a: &[i64]) -> Vec<i64> {
    let mut w = vec![0i64; data.rank];
    w[0] = m1 + m4;
    for (j, &aj) in a.iter().take(2).enumerate() {
        for (x, s) in w.iter_mut().zip(data.simple_root_fw(j + 1)) {
            *x -= aj * s;
        }
    }
    for (x, t) in w.iter_mut().zip(data.theta_fw()) {
        *x += a[2] * t;
    }
    w
}

/// The closed-form family `x <= m_2, y <= m_1, y + z <= m_4`.
pub fn b44_closed_form(n: usize, m1: i64, m2: i64, m4: i64) -> Result<MultiplicityMap> {
    let data = build_algebra(Kind::B, n)?;
    let mut v = Vec::new();
    for x in 0..=m2 {
        for y in 0..=m1 {
            for z in 0..=(m4 - y) {
                v.push((b44_weight(&data, m1, m4, &[y + z, z, x + z]), 1));
            }
        }
    }
    Ok(v.into_iter().collect())
}

fn u(rows: usize, cols: i64) -> CrystalElem {
    CrystalElem::single(Tableau::highest(rows, cols as usize))
}

/// `F_{s_3}(u_{m2 Lambda_3} (x) F_{s_2 s_1}(u_{m4 Lambda_1}))`.
fn b44_tail(cr: &Crystal, m2: i64, m4: i64) -> CrystalSet {
    let inner = cr.f_word_set(&CrystalSet::singleton(u(1, m4), "u(m4 Lambda_1)"), &[2, 1]);
    cr.f_word_set(&inner.tensor_left(&u(3, m2)), &[3])
}

/// Elements `b` of the tail with `e_1^{m1+1} b = 0` and `e_2 b = 0`.
pub fn b44_w_set(cr: &Crystal, m1: i64, m2: i64, m4: i64) -> CrystalSet {
    let bounds: BTreeMap<usize, usize> = [(1, m1 as usize + 1), (2, 1)].into();
    cr.classically_highest(&b44_tail(cr, m2, m4), &bounds)
}

/// The explicit tableaux `T_x (x) R_{y,z}` for `x <= m_2, y <= m_1,
/// y + z <= m_4`. Under [`TensorRule::Kashiwara`] these have the same
/// weights as [`b44_w_set`] but are not always the same elements.
pub fn b44_w_family(m1: i64, m2: i64, m4: i64) -> BTreeSet<CrystalElem> {
    let mut out = BTreeSet::new();
    for x in 0..=m2 {
        let mut t = Tableau::highest(3, m2 as usize);
        for c in (m2 - x) as usize..m2 as usize {
            t.rows[2][c] = 4;
        }
        for y in 0..=m1.min(m4) {
            for z in 0..=(m4 - y) {
                let mut r = vec![1u8; (m4 - y - z) as usize];
                r.extend(std::iter::repeat_n(2u8, y as usize));
                r.extend(std::iter::repeat_n(4u8, z as usize));
                out.insert(CrystalElem::new(vec![t.clone(), Tableau { rows: vec![r] }]));
            }
        }
    }
    out
}

/// The example `Z = u_{m1 Lambda_1} (x) F_{s_3}(u_{m2 Lambda_3} (x)
/// F_{s_2 s_1}(u_{m4 Lambda_1}))` in `A_3` crystals: counts its classically
/// highest elements by weight and checks them against the closed form.
pub fn example_b44(n: usize, m1: i64, m2: i64, m4: i64) -> Result<MultiplicityMap> {
    example_b44_with(n, m1, m2, m4, TensorRule::default())
}

pub fn example_b44_with(n: usize, m1: i64, m2: i64, m4: i64, rule: TensorRule) -> Result<MultiplicityMap> {
    if n < 3 {
        return Err(Error::Input(format!("the example needs n >= 3, got {n}")));
    }
    if m1 < 0 || m2 < 0 || m4 < 0 {
        return Err(Error::Input("m1, m2, m4 must be nonnegative".into()));
    }
    let data = build_algebra(Kind::B, n)?;
    let cr = Crystal::with_rule(3, rule);
    let z = b44_tail(&cr, m2, m4).tensor_left(&u(1, m1));
    let bounds: BTreeMap<usize, usize> = [(1, 1), (2, 1)].into();
    let high = cr.classically_highest(&z, &bounds);

    let mut counted = Vec::with_capacity(high.len());
    for b in &high.elems {
        let w = b44_weight(&data, m1, m4, &cr.depth(b));
        if !data.is_dominant_fw(&w) {
            return Err(Error::Consistency(format!("classically highest element maps to non-dominant {w:?}")));
        }
        counted.push((w, 1));
    }
    let counted: MultiplicityMap = counted.into_iter().collect();

    let closed = b44_closed_form(n, m1, m2, m4)?;
    if counted != closed {
        return Err(Error::Consistency(format!(
            "crystal count {:?} differs from the closed form {:?}",
            counted.entries, closed.entries
        )));
    }
    Ok(counted)
}
