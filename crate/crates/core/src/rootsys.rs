//! Finite and untwisted affine root data for types A, B and C.
//!
//! Conventions:
//! - Finite nodes are `1..=n`, the affine node is `0`. Internal vectors are
//!   0-based, so `fw[i - 1]` is the coefficient of the i-th fundamental weight.
//! - `cartan[i][j] = <alpha_i^vee, alpha_j>` with the usual Bourbaki/Kac node
//!   order: in `B_n` the short simple root is `alpha_n`, in `C_n` the long
//!   one is `alpha_n`.
//! - The invariant form is normalized by `(theta, theta) = 2`.
//! - Weights are stored in fundamental-weight coordinates, roots in
//!   simple-root coordinates.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

/// Largest rank accepted by [`AlgebraData::build`].
pub const MAX_RANK: usize = 16;

pub(crate) fn rat_to_int(r: Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::B => 'B',
            Kind::C => 'C',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            "C" | "c" => Ok(Kind::C),
            other => Err(Error::Config(format!("unsupported type {other:?} (expected A, B or C)"))),
        }
    }
}

/// An element of `P + Z Lambda_0 + Q delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    /// Coefficients of the fundamental weights.
    pub fw: Vec<i64>,
    /// Coefficient of `Lambda_0`, i.e. `<K, xi>`.
    pub level: i64,
    /// Coefficient of `delta`.
    pub delta: Rational,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight { fw: vec![0; rank], level: 0, delta: Rational::zero() }
    }

    pub fn new(fw: Vec<i64>, level: i64, delta: Rational) -> Self {
        AffineWeight { fw, level, delta }
    }

    /// A finite weight viewed at level 0 with no `delta` part.
    pub fn finite(fw: Vec<i64>) -> Self {
        AffineWeight { fw, level: 0, delta: Rational::zero() }
    }

    pub fn lambda0(rank: usize) -> Self {
        AffineWeight { fw: vec![0; rank], level: 1, delta: Rational::zero() }
    }

    pub fn delta(rank: usize) -> Self {
        AffineWeight { fw: vec![0; rank], level: 0, delta: Rational::one() }
    }

    /// `varpi_i`; `varpi_0` is zero.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        if i > 0 {
            w.fw[i - 1] = 1;
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.fw.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        AffineWeight {
            fw: self.fw.iter().zip(&other.fw).map(|(a, b)| a + b).collect(),
            level: self.level + other.level,
            delta: self.delta + other.delta,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AffineWeight {
            fw: self.fw.iter().zip(&other.fw).map(|(a, b)| a - b).collect(),
            level: self.level - other.level,
            delta: self.delta - other.delta,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        AffineWeight {
            fw: self.fw.iter().map(|a| a * k).collect(),
            level: self.level * k,
            delta: self.delta * k,
        }
    }

    /// Same weight with the `delta` coefficient dropped.
    pub fn mod_delta(&self) -> Self {
        AffineWeight { fw: self.fw.clone(), level: self.level, delta: Rational::zero() }
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fw: Vec<String> = self.fw.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + {}L0 + ({})d", fw.join(","), self.level, self.delta)
    }
}

/// The real affine root `beta + s delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealRoot {
    /// Finite part in simple-root coordinates (may be negative).
    pub beta: Vec<i64>,
    pub s: i64,
}

impl RealRoot {
    pub fn new(beta: Vec<i64>, s: i64) -> Self {
        RealRoot { beta, s }
    }
}

/// A letter of a word in the extended affine Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Simple reflection `s_i`, `i` in `0..=n`.
    S(usize),
    /// The diagram automorphism exchanging nodes 0 and 1 (type B only).
    Tau,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::Tau => write!(f, "tau"),
        }
    }
}

/// A word `g_1 g_2 ... g_k`; acting on a weight it applies `g_k` first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtWeylWord {
    pub letters: Vec<Letter>,
}

impl ExtWeylWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ExtWeylWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        ExtWeylWord { letters: indices.iter().map(|&i| Letter::S(i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of simple reflections; equals the length when the word is reduced.
    pub fn reflection_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::S(_))).count()
    }

    pub fn has_tau(&self) -> bool {
        self.letters.contains(&Letter::Tau)
    }

    /// Every letter is an involution, so the inverse is the reversed word.
    pub fn inverse(&self) -> Self {
        ExtWeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ExtWeylWord { letters }
    }
}

impl fmt::Display for ExtWeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The diagram automorphism as a matrix acting on `(fw_1..fw_n, level, delta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMatrix {
    /// `rows[r][c]`; column `c` is the image of the `c`-th basis vector.
    pub rows: Vec<Vec<Rational>>,
}

impl TauMatrix {
    fn apply_coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    fn apply(&self, xi: &AffineWeight) -> Result<AffineWeight> {
        let n = xi.fw.len();
        let mut v: Vec<Rational> = xi.fw.iter().map(|&c| Rational::from(c)).collect();
        v.push(Rational::from(xi.level));
        v.push(xi.delta);
        let out = self.apply_coords(&v);
        let fw = out[..n]
            .iter()
            .map(|r| rat_to_int(*r).ok_or_else(|| Error::InvariantViolation("tau left the weight lattice".into())))
            .collect::<Result<Vec<_>>>()?;
        let level = rat_to_int(out[n]).ok_or_else(|| Error::InvariantViolation("tau gave a fractional level".into()))?;
        Ok(AffineWeight { fw, level, delta: out[n + 1] })
    }
}

/// The four root subsets used by the limit formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSets {
    pub pos: Vec<Vec<i64>>,
    /// Positive roots with every simple-root coefficient at most 1.
    pub d1: Vec<Vec<i64>>,
    /// Positive roots supported on `J`.
    pub d_j: Vec<Vec<i64>>,
    /// Positive roots with coefficient at most 1 outside `J`.
    pub d1_j: Vec<Vec<i64>>,
}

/// Immutable Cartan and root data for one type and rank.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub kind: Kind,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub inv_cartan: Vec<Vec<Rational>>,
    /// `(alpha_i, alpha_i)`.
    pub root_len_sq: Vec<Rational>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub pos_roots: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    /// `theta^vee` in simple-coroot coordinates.
    pub theta_covec: Vec<i64>,
    pub w0_word: ExtWeylWord,
    /// `(varpi_i, varpi_j)`.
    pub fw_gram: Vec<Vec<Rational>>,
    pos_coroots: Vec<Vec<i64>>,
    simple_fw: Vec<Vec<i64>>,
    theta_fw: Vec<i64>,
    tau: Option<TauMatrix>,
}

pub fn build_algebra(kind: Kind, rank: usize) -> Result<AlgebraData> {
    AlgebraData::build(kind, rank)
}

fn invert_exact(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v: Vec<Rational> = row.iter().map(|&x| Rational::from(x)).collect();
            v.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

impl AlgebraData {
    pub fn build(kind: Kind, rank: usize) -> Result<Self> {
        let n = rank;
        let min_rank = if kind == Kind::A { 1 } else { 2 };
        if n < min_rank || n > MAX_RANK {
            return Err(Error::Config(format!("rank {n} unsupported for type {kind} (need {min_rank}..={MAX_RANK})")));
        }

        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            if i + 1 < n {
                cartan[i][i + 1] = -1;
                cartan[i + 1][i] = -1;
            }
        }
        let two = Rational::from(2);
        let (d, root_len_sq): (Vec<i64>, Vec<Rational>) = match kind {
            Kind::A => (vec![1; n], vec![two; n]),
            Kind::B => {
                cartan[n - 1][n - 2] = -2;
                let mut d = vec![2; n];
                d[n - 1] = 1;
                let mut len = vec![two; n];
                len[n - 1] = Rational::one();
                (d, len)
            }
            Kind::C => {
                cartan[n - 2][n - 1] = -2;
                let mut d = vec![1; n];
                d[n - 1] = 2;
                let mut len = vec![Rational::one(); n];
                len[n - 1] = two;
                (d, len)
            }
        };

        for i in 0..n {
            for j in 0..n {
                if d[i] * cartan[i][j] != d[j] * cartan[j][i] {
                    return Err(Error::Config("diag(d) * C is not symmetric".into()));
                }
            }
        }
        if d.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            return Err(Error::Config("d is not coprime".into()));
        }

        let inv_cartan = invert_exact(&cartan).ok_or_else(|| Error::Config("singular Cartan matrix".into()))?;
        for i in 0..n {
            for j in 0..n {
                let s: Rational = (0..n).map(|k| inv_cartan[i][k] * cartan[k][j]).sum();
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                if s != expect {
                    return Err(Error::Config("inverse Cartan check failed".into()));
                }
            }
        }

        let simple_fw: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| cartan[i][j]).collect()).collect();
        let fw_gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| inv_cartan[j][i] * root_len_sq[j] / 2).collect())
            .collect();

        let mut data = AlgebraData {
            kind,
            rank,
            cartan,
            d,
            inv_cartan,
            root_len_sq,
            pos_roots: Vec::new(),
            theta: Vec::new(),
            theta_covec: Vec::new(),
            w0_word: ExtWeylWord::empty(),
            fw_gram,
            pos_coroots: Vec::new(),
            simple_fw,
            theta_fw: Vec::new(),
            tau: None,
        };

        data.pos_roots = data.generate_positive_roots();
        let expected = match kind {
            Kind::A => n * (n + 1) / 2,
            Kind::B | Kind::C => n * n,
        };
        if data.pos_roots.len() != expected {
            return Err(Error::Config(format!("found {} positive roots, expected {expected}", data.pos_roots.len())));
        }
        data.theta = data.pos_roots.last().cloned().expect("nonempty root system");
        data.pos_coroots = data
            .pos_roots
            .iter()
            .map(|b| data.coroot_of(b))
            .collect::<Result<Vec<_>>>()?;
        if data.root_norm_sq(&data.theta) != two {
            return Err(Error::Config("(theta, theta) != 2".into()));
        }
        data.theta_covec = data.coroot_of(&data.theta)?;
        data.theta_fw = data.root_to_fw(&data.theta);

        data.w0_word = data.longest_word_by(false);
        if data.w0_word.len() != data.pos_roots.len() || !data.is_reduced_word(&data.w0_word) {
            return Err(Error::Config("longest element word is not reduced".into()));
        }

        if kind == Kind::B {
            let tau = data.build_tau()?;
            data.tau = Some(tau);
        }
        Ok(data)
    }

    fn generate_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 1..=n {
                let k = self.finite_root_pairing(i, &beta);
                let mut r = beta.clone();
                r[i - 1] -= k;
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
        pos
    }

    fn build_tau(&self) -> Result<TauMatrix> {
        let n = self.rank;
        let one = Rational::one();
        let mut rows = vec![vec![Rational::zero(); n + 2]; n + 2];
        // alpha_1 + theta in fw coordinates; tau(xi) = xi - a_1 (alpha_1 + theta) + a_1 delta on finite xi
        let shift: Vec<i64> = (0..n).map(|r| self.simple_fw[0][r] + self.theta_fw[r]).collect();
        for j in 0..n {
            let a1 = self.inv_cartan[0][j];
            for r in 0..n {
                let e = if r == j { one } else { Rational::zero() };
                rows[r][j] = e - a1 * shift[r];
            }
            rows[n + 1][j] = a1;
        }
        // Lambda_0 -> varpi_1 + Lambda_0 - (varpi_1, varpi_1)/2 delta
        rows[0][n] = one;
        rows[n][n] = one;
        rows[n + 1][n] = -self.fw_gram[0][0] / 2;
        rows[n + 1][n + 1] = one;

        let tau = TauMatrix { rows };
        for c in 0..n + 2 {
            let mut e = vec![Rational::zero(); n + 2];
            e[c] = one;
            if tau.apply_coords(&tau.apply_coords(&e)) != e {
                return Err(Error::Config("tau is not an involution".into()));
            }
        }
        let alpha0 = self.simple_root_weight(0);
        if tau.apply(&self.simple_root_weight(1))? != alpha0 || tau.apply(&alpha0)? != self.simple_root_weight(1) {
            return Err(Error::Config("tau does not exchange alpha_0 and alpha_1".into()));
        }
        Ok(tau)
    }

    /// Dominance chase from `-rho`; `prefer_last` picks the largest eligible
    /// index at every step instead of the smallest, giving a second reduced word.
    fn longest_word_by(&self, prefer_last: bool) -> ExtWeylWord {
        let mut mu = vec![-1i64; self.rank];
        let mut letters = Vec::new();
        loop {
            let mut eligible = (1..=self.rank).filter(|&i| mu[i - 1] < 0);
            let next = if prefer_last { eligible.next_back() } else { eligible.next() };
            match next {
                Some(i) => {
                    mu = self.reflect_fw(i, &mu);
                    letters.push(Letter::S(i));
                }
                None => break,
            }
        }
        ExtWeylWord::new(letters)
    }

    pub fn longest_element_word(&self) -> ExtWeylWord {
        self.w0_word.clone()
    }

    /// A second reduced word for `w_0`, distinct from [`Self::longest_element_word`]
    /// whenever the rank exceeds 1.
    pub fn longest_element_word_alt(&self) -> ExtWeylWord {
        self.longest_word_by(true)
    }

    pub fn tau_matrix(&self) -> Option<&TauMatrix> {
        self.tau.as_ref()
    }

    // ---- finite helpers -------------------------------------------------

    /// `<alpha_i^vee, beta>` for a finite root-lattice element in simple-root coordinates.
    pub fn finite_root_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        self.cartan[i - 1].iter().zip(beta).map(|(c, b)| c * b).sum()
    }

    /// Simple root `alpha_i` (`i >= 1`) in fundamental-weight coordinates.
    pub fn simple_root_fw(&self, i: usize) -> &[i64] {
        &self.simple_fw[i - 1]
    }

    pub fn theta_fw(&self) -> &[i64] {
        &self.theta_fw
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_fw(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|r| (0..self.rank).map(|j| self.cartan[r][j] * beta[j]).sum()).collect()
    }

    /// Converts fundamental-weight coordinates to (rational) simple-root coordinates.
    pub fn fw_to_root(&self, fw: &[i64]) -> Vec<Rational> {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|j| self.inv_cartan[r][j] * fw[j]).sum())
            .collect()
    }

    /// Simple-root coordinates of `lambda - mu`, if they are all integers.
    pub fn root_difference(&self, lambda: &[i64], mu: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.fw_to_root(&diff).into_iter().map(rat_to_int).collect()
    }

    /// Height of a weight: sum of its simple-root coordinates.
    pub fn height(&self, fw: &[i64]) -> Rational {
        self.fw_to_root(fw).into_iter().sum()
    }

    /// `(x, y)` for finite weights in fundamental-weight coordinates.
    pub fn form_fw(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y[j] != 0 {
                    s += self.fw_gram[i][j] * (x[i] * y[j]);
                }
            }
        }
        s
    }

    /// `(beta, beta)` for simple-root coordinates.
    pub fn root_norm_sq(&self, beta: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.root_len_sq[i] / 2 * (self.cartan[i][j] * beta[i] * beta[j]);
            }
        }
        s
    }

    fn coroot_of(&self, beta: &[i64]) -> Result<Vec<i64>> {
        let norm = self.root_norm_sq(beta);
        beta.iter()
            .zip(&self.root_len_sq)
            .map(|(&b, &l)| {
                rat_to_int(l / norm * b).ok_or_else(|| Error::InvariantViolation(format!("non-integral coroot for {beta:?}")))
            })
            .collect()
    }

    /// Index into `pos_roots` and sign, if `beta` is a root.
    pub fn root_index(&self, beta: &[i64]) -> Option<(usize, i64)> {
        if let Some(k) = self.pos_roots.iter().position(|r| r.as_slice() == beta) {
            return Some((k, 1));
        }
        let neg: Vec<i64> = beta.iter().map(|c| -c).collect();
        self.pos_roots.iter().position(|r| *r == neg).map(|k| (k, -1))
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        self.root_index(beta).is_some()
    }

    /// `beta^vee` in simple-coroot coordinates.
    pub fn coroot(&self, beta: &[i64]) -> Result<Vec<i64>> {
        let (k, sign) = self
            .root_index(beta)
            .ok_or_else(|| Error::Domain(format!("{beta:?} is not a root of {}{}", self.kind, self.rank)))?;
        Ok(self.pos_coroots[k].iter().map(|c| c * sign).collect())
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn is_dominant_fw(&self, fw: &[i64]) -> bool {
        fw.iter().all(|&c| c >= 0)
    }

    /// `s_i` on a finite weight, `i >= 1`.
    pub fn reflect_fw(&self, i: usize, fw: &[i64]) -> Vec<i64> {
        let k = fw[i - 1];
        fw.iter().zip(&self.simple_fw[i - 1]).map(|(a, b)| a - k * b).collect()
    }

    // ---- affine weights --------------------------------------------------

    /// `alpha_i` as an affine weight; `alpha_0 = delta - theta`.
    pub fn simple_root_weight(&self, i: usize) -> AffineWeight {
        if i == 0 {
            AffineWeight::new(self.theta_fw.iter().map(|c| -c).collect(), 0, Rational::one())
        } else {
            AffineWeight::finite(self.simple_fw[i - 1].clone())
        }
    }

    /// `<theta^vee, xi_bar>`.
    pub fn theta_pairing(&self, fw: &[i64]) -> i64 {
        self.theta_covec.iter().zip(fw).map(|(a, b)| a * b).sum()
    }

    /// `<alpha_i^vee, xi>` for `i` in `0..=n`.
    pub fn pairing(&self, i: usize, xi: &AffineWeight) -> i64 {
        if i == 0 {
            xi.level - self.theta_pairing(&xi.fw)
        } else {
            xi.fw[i - 1]
        }
    }

    /// `xi + k alpha_i`, in place.
    pub fn shift_by_root(&self, xi: &mut AffineWeight, i: usize, k: i64) {
        if i == 0 {
            for (a, t) in xi.fw.iter_mut().zip(&self.theta_fw) {
                *a -= k * t;
            }
            xi.delta += k;
        } else {
            for (a, s) in xi.fw.iter_mut().zip(&self.simple_fw[i - 1]) {
                *a += k * s;
            }
        }
    }

    /// `s_i(xi) = xi - <alpha_i^vee, xi> alpha_i`.
    pub fn reflect(&self, i: usize, xi: &AffineWeight) -> AffineWeight {
        let k = self.pairing(i, xi);
        let mut out = xi.clone();
        if k != 0 {
            self.shift_by_root(&mut out, i, -k);
        }
        out
    }

    /// Node permutation induced by tau.
    pub fn tau_node(&self, i: usize) -> usize {
        match i {
            0 => 1,
            1 => 0,
            other => other,
        }
    }

    pub fn tau_apply(&self, xi: &AffineWeight) -> Result<AffineWeight> {
        match &self.tau {
            Some(t) => t.apply(xi),
            None => Err(Error::UnsupportedAutomorphism(self.kind.letter())),
        }
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i > self.rank {
            Err(Error::Domain(format!("node {i} out of range 0..={}", self.rank)))
        } else {
            Ok(())
        }
    }

    /// Applies `g_1 g_2 ... g_k` to `xi` (so `g_k` acts first).
    pub fn act_word(&self, w: &ExtWeylWord, xi: &AffineWeight) -> Result<AffineWeight> {
        let mut out = xi.clone();
        for letter in w.letters.iter().rev() {
            out = match *letter {
                Letter::S(i) => {
                    self.check_node(i)?;
                    self.reflect(i, &out)
                }
                Letter::Tau => self.tau_apply(&out)?,
            };
        }
        Ok(out)
    }

    // ---- real roots -------------------------------------------------------

    pub fn simple_real_root(&self, i: usize) -> RealRoot {
        if i == 0 {
            RealRoot::new(self.theta.iter().map(|c| -c).collect(), 1)
        } else {
            let mut beta = vec![0; self.rank];
            beta[i - 1] = 1;
            RealRoot::new(beta, 0)
        }
    }

    pub fn is_positive_real_root(&self, alpha: &RealRoot) -> bool {
        alpha.s > 0 || (alpha.s == 0 && alpha.beta.iter().all(|&c| c >= 0) && alpha.beta.iter().any(|&c| c > 0))
    }

    /// `s_i` applied to a real root.
    pub fn reflect_real_root(&self, i: usize, alpha: &RealRoot) -> RealRoot {
        let k = if i == 0 {
            -(1..=self.rank)
                .map(|j| self.theta_covec[j - 1] * self.finite_root_pairing(j, &alpha.beta))
                .sum::<i64>()
        } else {
            self.finite_root_pairing(i, &alpha.beta)
        };
        let mut out = alpha.clone();
        if k != 0 {
            if i == 0 {
                for (b, t) in out.beta.iter_mut().zip(&self.theta) {
                    *b += k * t;
                }
                out.s -= k;
            } else {
                out.beta[i - 1] -= k;
            }
        }
        out
    }

    /// `<alpha^vee, xi>` for `alpha = beta + s delta`.
    pub fn real_coroot_pairing(&self, alpha: &RealRoot, xi: &AffineWeight) -> Result<Rational> {
        let co = self.coroot(&alpha.beta)?;
        let finite: i64 = co.iter().zip(&xi.fw).map(|(a, b)| a * b).sum();
        let norm = self.root_norm_sq(&alpha.beta);
        Ok(Rational::from(finite) + Rational::from(2 * alpha.s * xi.level) / norm)
    }

    /// Pushes every tau to the right end of the word, returning the plain
    /// affine Weyl group part and the number of tau letters moved.
    pub fn strip_tau(&self, w: &ExtWeylWord) -> Option<(Vec<usize>, usize)> {
        let mut flipped = false;
        let mut taus = 0;
        let mut out = Vec::with_capacity(w.len());
        for l in &w.letters {
            match *l {
                Letter::Tau => {
                    if self.kind != Kind::B {
                        return None;
                    }
                    flipped = !flipped;
                    taus += 1;
                }
                Letter::S(i) => {
                    if i > self.rank {
                        return None;
                    }
                    out.push(if flipped { self.tau_node(i) } else { i });
                }
            }
        }
        Some((out, taus))
    }

    /// True iff the word is reduced in the extended affine Weyl group
    /// (tau letters do not count towards the length).
    pub fn is_reduced_word(&self, w: &ExtWeylWord) -> bool {
        let Some((indices, _)) = self.strip_tau(w) else {
            return false;
        };
        for (j, &i) in indices.iter().enumerate() {
            let mut root = self.simple_real_root(i);
            for &prev in indices[..j].iter().rev() {
                root = self.reflect_real_root(prev, &root);
            }
            if !self.is_positive_real_root(&root) {
                return false;
            }
        }
        true
    }

    pub fn root_sets(&self, j_set: &BTreeSet<usize>) -> RootSets {
        let pos = self.pos_roots.clone();
        let d1 = pos.iter().filter(|r| r.iter().all(|&c| c <= 1)).cloned().collect();
        let d_j = pos
            .iter()
            .filter(|r| r.iter().enumerate().all(|(k, &c)| c == 0 || j_set.contains(&(k + 1))))
            .cloned()
            .collect();
        let d1_j = pos
            .iter()
            .filter(|r| r.iter().enumerate().all(|(k, &c)| c <= 1 || j_set.contains(&(k + 1))))
            .cloned()
            .collect();
        RootSets { pos, d1, d_j, d1_j }
    }

    /// Dominant for every affine node (ignores `delta`, which no pairing sees).
    pub fn is_affine_dominant(&self, xi: &AffineWeight) -> bool {
        (0..=self.rank).all(|i| self.pairing(i, xi) >= 0)
    }

    /// Reduces `xi` to the dominant chamber by reflecting at any node with a
    /// negative pairing. Returns the dominant weight `Lambda` and the reduced
    /// word `w` with `w(Lambda) = xi`. Requires a positive level.
    pub fn to_dominant(&self, xi: &AffineWeight) -> Result<(AffineWeight, ExtWeylWord)> {
        if xi.level <= 0 && xi.fw.iter().any(|&c| c != 0) {
            return Err(Error::Domain(format!("{xi} has non-positive level; no dominant representative")));
        }
        let mut cur = xi.clone();
        let mut letters = Vec::new();
        while let Some(i) = (0..=self.rank).find(|&i| self.pairing(i, &cur) < 0) {
            cur = self.reflect(i, &cur);
            letters.push(Letter::S(i));
        }
        Ok((cur, ExtWeylWord::new(letters)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn a2_data() {
        let a2 = build_algebra(Kind::A, 2).unwrap();
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.d, vec![1, 1]);
        assert_eq!(a2.theta, vec![1, 1]);
    }

    #[test]
    fn b2_data() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert_eq!(b2.cartan[0][1], -1);
        assert_eq!(b2.cartan[1][0], -2);
        assert_eq!(b2.d, vec![2, 1]);
        assert_eq!(b2.theta, vec![1, 2]);
        assert_eq!(b2.theta_fw(), &[0, 2]);
        assert_eq!(b2.theta_covec, vec![1, 1]);
        assert_eq!(b2.root_norm_sq(&b2.theta), r(2, 1));
        assert_eq!(b2.pos_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn c2_data() {
        let c2 = build_algebra(Kind::C, 2).unwrap();
        assert_eq!(c2.cartan[0][1], -2);
        assert_eq!(c2.cartan[1][0], -1);
        assert_eq!(c2.d, vec![1, 2]);
    }

    #[test]
    fn bad_configs() {
        assert!(matches!(build_algebra(Kind::B, 1), Err(Error::Config(_))));
        assert!(matches!(build_algebra(Kind::C, 0), Err(Error::Config(_))));
        assert!(matches!(build_algebra(Kind::A, 0), Err(Error::Config(_))));
        assert!(build_algebra(Kind::A, 1).is_ok());
        assert!("D".parse::<Kind>().is_err());
    }

    #[test]
    fn root_counts_and_coroots() {
        for kind in [Kind::A, Kind::B, Kind::C] {
            for n in 2..=6 {
                let data = build_algebra(kind, n).unwrap();
                for beta in &data.pos_roots {
                    // coroots are integral by construction; check the pairing <beta^vee, beta> = 2
                    let co = data.coroot(beta).unwrap();
                    let fw = data.root_to_fw(beta);
                    assert_eq!(co.iter().zip(&fw).map(|(a, b)| a * b).sum::<i64>(), 2);
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert_eq!(b2.pairing(1, &AffineWeight::fundamental(2, 1)), 1);
        assert_eq!(b2.pairing(0, &AffineWeight::lambda0(2)), 1);
        assert_eq!(b2.pairing(0, &AffineWeight::fundamental(2, 2)), -1);
        let mut xi = AffineWeight::fundamental(2, 2);
        xi.delta = r(7, 2);
        assert_eq!(b2.pairing(0, &xi), -1);
    }

    #[test]
    fn reflect_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let w1 = AffineWeight::fundamental(2, 1);
        let expect = w1.sub(&b2.simple_root_weight(1));
        assert_eq!(b2.reflect(1, &w1), expect);
        let l0 = AffineWeight::lambda0(2);
        let expect = l0.add(&AffineWeight::finite(b2.theta_fw().to_vec())).sub(&AffineWeight::delta(2));
        assert_eq!(b2.reflect(0, &l0), expect);
        let w2 = AffineWeight::fundamental(2, 2);
        assert_eq!(b2.reflect(1, &w2), w2);
    }

    #[test]
    fn tau_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert_eq!(b2.fw_gram[0][0], r(1, 1));
        let img = b2.tau_apply(&AffineWeight::lambda0(2)).unwrap();
        assert_eq!(img, AffineWeight::new(vec![1, 0], 1, r(-1, 2)));
        assert_eq!(b2.tau_apply(&AffineWeight::delta(2)).unwrap(), AffineWeight::delta(2));
        let c2 = build_algebra(Kind::C, 2).unwrap();
        assert_eq!(c2.tau_apply(&AffineWeight::lambda0(2)), Err(Error::UnsupportedAutomorphism('C')));
    }

    #[test]
    fn tau_conjugates_reflections() {
        for n in 2..=5 {
            let data = build_algebra(Kind::B, n).unwrap();
            let xi = AffineWeight::new((0..n as i64).map(|k| 3 - k).collect(), 2, r(1, 2));
            for i in 0..=n {
                let lhs = data.tau_apply(&data.reflect(i, &xi)).unwrap();
                let rhs = data.reflect(data.tau_node(i), &data.tau_apply(&xi).unwrap());
                assert_eq!(lhs, rhs, "B{n} node {i}");
            }
            for i in 2..=n {
                assert_eq!(data.tau_apply(&data.simple_root_weight(i)).unwrap(), data.simple_root_weight(i));
            }
        }
    }

    #[test]
    fn longest_words() {
        let a1 = build_algebra(Kind::A, 1).unwrap();
        assert_eq!(a1.longest_element_word(), ExtWeylWord::from_indices(&[1]));
        let a2 = build_algebra(Kind::A, 2).unwrap();
        assert_eq!(a2.longest_element_word().len(), 3);
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert_eq!(b2.longest_element_word().len(), 4);
        assert_ne!(b2.longest_element_word(), b2.longest_element_word_alt());
        assert!(b2.is_reduced_word(&b2.longest_element_word_alt()));
    }

    #[test]
    fn reduced_word_checks() {
        let b3 = build_algebra(Kind::B, 3).unwrap();
        assert!(!b3.is_reduced_word(&ExtWeylWord::from_indices(&[1, 1])));
        assert!(b3.is_reduced_word(&ExtWeylWord::from_indices(&[0, 1, 2])));
        // w_0 followed by anything finite is not reduced
        let mut w = b3.longest_element_word();
        w.letters.push(Letter::S(2));
        assert!(!b3.is_reduced_word(&w));
        let c3 = build_algebra(Kind::C, 3).unwrap();
        assert!(!c3.is_reduced_word(&ExtWeylWord::new(vec![Letter::Tau])));
    }

    #[test]
    fn root_set_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let sets = b2.root_sets(&BTreeSet::new());
        assert_eq!(sets.pos.len(), 4);
        assert_eq!(sets.d1, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(sets.d_j.is_empty());
        assert_eq!(sets.d1_j, sets.d1);
        let all: BTreeSet<usize> = [1, 2].into();
        assert_eq!(b2.root_sets(&all).d1_j, sets.pos);
        let a4 = build_algebra(Kind::A, 4).unwrap();
        let s = a4.root_sets(&BTreeSet::new());
        assert_eq!(s.d1, s.pos);
    }

    #[test]
    fn real_coroot_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let w1 = AffineWeight::fundamental(2, 1);
        assert_eq!(b2.real_coroot_pairing(&RealRoot::new(vec![1, 0], 0), &w1).unwrap(), r(1, 1));
        let l0 = AffineWeight::lambda0(2);
        assert_eq!(b2.real_coroot_pairing(&b2.simple_real_root(0), &l0).unwrap(), r(1, 1));
        let xi = AffineWeight::new(vec![0, 2], 1, r(0, 1));
        assert_eq!(b2.real_coroot_pairing(&RealRoot::new(vec![-1, -2], 1), &xi).unwrap(), r(-1, 1));
        assert!(matches!(b2.real_coroot_pairing(&RealRoot::new(vec![2, 0], 0), &xi), Err(Error::Domain(_))));
    }

    #[test]
    fn to_dominant_roundtrip() {
        let c3 = build_algebra(Kind::C, 3).unwrap();
        let xi = AffineWeight::new(vec![-3, 0, 0], 2, r(0, 1));
        let (lam, w) = c3.to_dominant(&xi).unwrap();
        assert!(c3.is_affine_dominant(&lam));
        assert!(c3.is_reduced_word(&w));
        assert_eq!(c3.act_word(&w, &lam).unwrap(), xi);
    }
}
