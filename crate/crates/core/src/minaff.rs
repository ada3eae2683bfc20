//! Characters of minimal affinizations via nested Demazure operators.
//!
//! For a dominant `lambda` we build affine weights `xi_1..xi_n`, Weyl group
//! words `w_1..w_n` and dominant caps `Lambda^i = (w_1 ... w_i)^{-1} xi_i`,
//! and evaluate
//!
//! ```text
//! D_{w0 w_1}( e^{Lambda^1} D_{w_2}( e^{Lambda^2} ... D_{w_n}( e^{Lambda^n} ) ... ) )
//! ```
//!
//! at `e^{Lambda_0} = e^delta = 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::charring::{CharPoly, FiniteChar, FiniteWeight};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rootsys::{rat_to_int, AffineWeight, AlgebraData, ExtWeylWord, Kind, Letter, Rational, RealRoot};

/// Auxiliary data of the type C recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCAux {
    /// `{1 <= i < n : lambda_i > 0}`.
    pub j: BTreeSet<usize>,
    /// `flat[i - 1]` is `i^flat` for `i` in `1..=n`.
    pub flat: Vec<usize>,
    /// `p[i]` for `i` in `0..=n`.
    pub p: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinAffData {
    pub lambda: Vec<i64>,
    pub xi: Vec<AffineWeight>,
    pub words: Vec<ExtWeylWord>,
    pub caps: Vec<AffineWeight>,
    pub type_c: Option<TypeCAux>,
}

pub fn validate_lambda(data: &AlgebraData, lambda: &[i64]) -> Result<()> {
    if lambda.len() != data.rank {
        return Err(Error::Input(format!(
            "lambda has {} entries, expected {}",
            lambda.len(),
            data.rank
        )));
    }
    if let Some(x) = lambda.iter().find(|&&x| x < 0) {
        return Err(Error::Input(format!("lambda entries must be nonnegative, got {x}")));
    }
    Ok(())
}

pub fn type_c_aux(data: &AlgebraData, lambda: &[i64]) -> TypeCAux {
    let n = data.rank;
    let j: BTreeSet<usize> = (1..n).filter(|&i| lambda[i - 1] > 0).collect();
    let mut hat = j.clone();
    hat.insert(0);
    let flat: Vec<usize> = (1..=n)
        .map(|i| if j.contains(&i) { *hat.range(..i).next_back().unwrap() } else { i })
        .collect();
    let mut p = vec![0i64; n + 1];
    // p at max(J_hat) is 0; walk J downwards so p_i is known before p_{i^flat}.
    for &i in j.iter().rev() {
        p[flat[i - 1]] = (lambda[i - 1] + p[i]).rem_euclid(2);
    }
    TypeCAux { j, flat, p }
}

pub fn xi_weights(data: &AlgebraData, lambda: &[i64]) -> Result<Vec<AffineWeight>> {
    validate_lambda(data, lambda)?;
    let n = data.rank;
    let mut out = Vec::with_capacity(n);
    match data.kind {
        Kind::A => {
            for i in 1..=n {
                out.push(AffineWeight::fundamental(n, i).add(&AffineWeight::lambda0(n)).scale(lambda[i - 1]));
            }
        }
        Kind::B => {
            for i in 1..n {
                out.push(AffineWeight::fundamental(n, i).add(&AffineWeight::lambda0(n)).scale(lambda[i - 1]));
            }
            let ln = lambda[n - 1];
            let mut xi = AffineWeight::fundamental(n, n).scale(ln);
            xi.level = Integer::div_ceil(&ln, &2);
            out.push(xi);
        }
        Kind::C => {
            let aux = type_c_aux(data, lambda);
            for i in 1..=n {
                let fl = aux.flat[i - 1];
                let (pf, pi) = (aux.p[fl], aux.p[i]);
                let mut fw = vec![0i64; n];
                if fl > 0 {
                    fw[fl - 1] += pf;
                }
                fw[i - 1] += lambda[i - 1] - pi;
                let lvl = Rational::from(data.d[i - 1] * (lambda[i - 1] - pi + pf)) / 2;
                let level = rat_to_int(lvl).ok_or_else(|| {
                    Error::InvariantViolation(format!("xi_{i} has non-integral level {lvl}"))
                })?;
                out.push(AffineWeight::new(fw, level, Rational::from(0)));
            }
        }
    }
    let sum = out.iter().fold(AffineWeight::zero(n), |acc, x| acc.add(x));
    let positive = sum.level > 0 || lambda.iter().all(|&x| x == 0);
    if sum.fw != lambda || sum.delta != Rational::from(0) || !positive {
        return Err(Error::InvariantViolation(format!("sum of xi is {sum}, expected lambda + k Lambda_0 with k > 0")));
    }
    Ok(out)
}

pub fn standard_words(data: &AlgebraData) -> Vec<ExtWeylWord> {
    (1..=data.rank)
        .map(|i| {
            let mut letters: Vec<Letter> = (1..i).rev().map(Letter::S).collect();
            match data.kind {
                Kind::A => letters.clear(),
                Kind::B => letters.push(Letter::Tau),
                Kind::C => letters.push(Letter::S(0)),
            }
            ExtWeylWord::new(letters)
        })
        .collect()
}

/// `w_{[1,i]} = w_1 w_2 ... w_i`.
pub fn prefix_word(words: &[ExtWeylWord], i: usize) -> ExtWeylWord {
    words[..i].iter().fold(ExtWeylWord::empty(), |acc, w| acc.concat(w))
}

pub fn lambda_caps(data: &AlgebraData, xi: &[AffineWeight], words: &[ExtWeylWord]) -> Result<Vec<AffineWeight>> {
    let mut caps = Vec::with_capacity(xi.len());
    for i in 1..=xi.len() {
        let cap = data.act_word(&prefix_word(words, i).inverse(), &xi[i - 1])?;
        if !data.is_affine_dominant(&cap) {
            return Err(Error::InvariantViolation(format!("Lambda^{i} = {cap} is not dominant")));
        }
        caps.push(cap);
    }
    Ok(caps)
}

/// The caps predicted in closed form, modulo `delta` (delta set to 0).
pub fn lambda_caps_closed_form(data: &AlgebraData, lambda: &[i64]) -> Result<Vec<AffineWeight>> {
    validate_lambda(data, lambda)?;
    let n = data.rank;
    Ok(match data.kind {
        Kind::A => xi_weights(data, lambda)?,
        Kind::B => {
            let mut caps: Vec<AffineWeight> = (1..n).map(|i| AffineWeight::lambda0(n).scale(lambda[i - 1])).collect();
            let ln = lambda[n - 1];
            let mut last = AffineWeight::fundamental(n, n).scale(ln.rem_euclid(2));
            last.level = Integer::div_ceil(&ln, &2);
            caps.push(last);
            caps
        }
        Kind::C => {
            let aux = type_c_aux(data, lambda);
            let mut caps = Vec::with_capacity(n);
            for i in 1..n {
                let fl = aux.flat[i - 1];
                let mut fw = vec![0i64; n];
                if i > fl {
                    fw[i - fl - 1] += aux.p[fl];
                }
                let level = rat_to_int(Rational::from(lambda[i - 1] - aux.p[i] + aux.p[fl]) / 2)
                    .ok_or_else(|| Error::InvariantViolation(format!("closed-form Lambda^{i} has half-integral level")))?;
                caps.push(AffineWeight::new(fw, level, Rational::from(0)));
            }
            caps.push(AffineWeight::fundamental(n, n).add(&AffineWeight::lambda0(n)).scale(lambda[n - 1]));
            caps
        }
    })
}

pub fn minaff_data(data: &AlgebraData, lambda: &[i64]) -> Result<MinAffData> {
    let xi = xi_weights(data, lambda)?;
    let words = standard_words(data);
    let caps = lambda_caps(data, &xi, &words)?;
    let type_c = (data.kind == Kind::C).then(|| type_c_aux(data, lambda));
    Ok(MinAffData { lambda: lambda.to_vec(), xi, words, caps, type_c })
}

/// Nested evaluation `D_{w_1}(e^{caps_1} D_{w_2}(... D_{w_p}(e^{caps_p})))`.
/// With `drop_delta` the delta coordinate is discarded after every step,
/// which is harmless when only the specialization is needed.
fn nested(data: &AlgebraData, caps: &[AffineWeight], words: &[ExtWeylWord], drop_delta: bool, exec: Exec) -> Result<CharPoly> {
    let trim = |f: CharPoly| if drop_delta { f.forget_delta() } else { Ok(f) };
    let p = caps.len();
    let Some(last) = caps.last() else {
        return Ok(CharPoly::zero());
    };
    let mut g = CharPoly::monomial(if drop_delta { last.mod_delta() } else { last.clone() });
    for i in (1..p).rev() {
        g = trim(g.demazure_word_with(data, &words[i], exec)?)?;
        let shift = if drop_delta { caps[i - 1].mod_delta() } else { caps[i - 1].clone() };
        g = g.translate(&shift);
    }
    trim(g.demazure_word_with(data, &words[0], exec)?)
}

/// Character of the generalized Demazure module attached to `caps` and
/// `words`.
pub fn gen_demazure_character(
    data: &AlgebraData,
    caps: &[AffineWeight],
    words: &[ExtWeylWord],
    validate: bool,
) -> Result<CharPoly> {
    if caps.len() != words.len() || caps.is_empty() {
        return Err(Error::Input("caps and words must be nonempty and of equal length".into()));
    }
    for (i, c) in caps.iter().enumerate() {
        if c.rank() != data.rank {
            return Err(Error::Input(format!("cap {} has the wrong rank", i + 1)));
        }
        if !data.is_affine_dominant(c) {
            return Err(Error::Domain(format!("cap {} = {c} is not dominant", i + 1)));
        }
    }
    if validate {
        let full = prefix_word(words, words.len());
        if !data.is_reduced_word(&full) {
            return Err(Error::Factorization(format!("{full} is not reduced")));
        }
    }
    nested(data, caps, words, false, Exec::default())
}

/// Checks the properties every minimal-affinization character must have.
pub fn check_character(data: &AlgebraData, lambda: &[i64], f: &FiniteChar) -> Result<()> {
    if !f.is_w_invariant(data) {
        return Err(Error::InvariantViolation("character is not W-invariant".into()));
    }
    let top = f.coeff(&FiniteWeight(lambda.to_vec()));
    if top != 1 {
        return Err(Error::InvariantViolation(format!("coefficient of e^lambda is {top}, expected 1")));
    }
    for (mu, _) in f.iter() {
        let ok = data.root_difference(lambda, &mu.0).is_some_and(|d| d.iter().all(|&x| x >= 0));
        if !ok {
            return Err(Error::InvariantViolation(format!("support weight {:?} is not below lambda", mu.0)));
        }
    }
    Ok(())
}

pub fn minaff_character(data: &AlgebraData, lambda: &[i64]) -> Result<FiniteChar> {
    minaff_character_with(data, lambda, Exec::default())
}

pub fn minaff_character_with(data: &AlgebraData, lambda: &[i64], exec: Exec) -> Result<FiniteChar> {
    let md = minaff_data(data, lambda)?;
    let g = nested(data, &md.caps, &md.words, true, exec)?;
    let ch = g.specialize()?.demazure_word_with(data, &data.longest_element_word(), exec)?;
    check_character(data, lambda, &ch)?;
    Ok(ch)
}

/// The same character before specialization, with the `delta` grading kept.
pub fn minaff_affine_character(data: &AlgebraData, lambda: &[i64]) -> Result<CharPoly> {
    let md = minaff_data(data, lambda)?;
    let g = nested(data, &md.caps, &md.words, false, Exec::default())?;
    g.demazure_word(data, &data.longest_element_word())
}

/// Slices of the character by raw `delta` exponent.
pub fn minaff_graded(data: &AlgebraData, lambda: &[i64]) -> Result<BTreeMap<Rational, FiniteChar>> {
    let g = minaff_affine_character(data, lambda)?;
    let slices = g.graded_slices()?;
    let total = slices.values().try_fold(FiniteChar::zero(), |acc, s| acc.add(s))?;
    check_character(data, lambda, &total)?;
    for s in slices.values() {
        if !s.is_w_invariant(data) {
            return Err(Error::InvariantViolation("graded slice is not W-invariant".into()));
        }
    }
    Ok(slices)
}

/// KR-module level `ceil((alpha_i, alpha_i) m / 2)`.
fn kr_level(data: &AlgebraData, i: usize, m: i64) -> i64 {
    let l = data.root_len_sq[i - 1] * Rational::from(m);
    (l / 2).ceil().to_integer()
}

/// Character of the Demazure module `D(-m varpi_i + l Lambda_0)`.
pub fn kr_demazure_route(data: &AlgebraData, i: usize, m: i64) -> Result<FiniteChar> {
    let n = data.rank;
    let xi = AffineWeight::new(
        AffineWeight::fundamental(n, i).fw.iter().map(|x| -x * m).collect(),
        kr_level(data, i, m),
        Rational::from(0),
    );
    let (lam, w) = data.to_dominant(&xi)?;
    CharPoly::monomial(lam.mod_delta()).demazure_word(data, &w)?.specialize()
}

/// For a short node and odd `m = 2k + 1`:
/// `D_{w0 w_{[1,i]}}(e^{varpi_i + (k+1) Lambda_0})`.
pub fn kr_factorized_route(data: &AlgebraData, i: usize, m: i64) -> Result<Option<FiniteChar>> {
    let short = data.root_len_sq[i - 1] < data.root_len_sq.iter().copied().max().unwrap();
    if !short || m % 2 == 0 || data.kind == Kind::A {
        return Ok(None);
    }
    let n = data.rank;
    let k = (m - 1) / 2;
    let mut top = AffineWeight::fundamental(n, i);
    top.level = k + 1;
    let words = standard_words(data);
    let w = data.longest_element_word().concat(&prefix_word(&words, i));
    Ok(Some(CharPoly::monomial(top).demazure_word(data, &w)?.specialize()?))
}

/// Character of the Kirillov-Reshetikhin module `W(m varpi_i)`, computed
/// through every available route; disagreement is an error.
pub fn kr_character(data: &AlgebraData, i: usize, m: i64) -> Result<FiniteChar> {
    let n = data.rank;
    if !(1..=n).contains(&i) {
        return Err(Error::Input(format!("node {i} is out of range 1..={n}")));
    }
    if m < 0 {
        return Err(Error::Input(format!("m must be nonnegative, got {m}")));
    }
    let mut lambda = vec![0i64; n];
    lambda[i - 1] = m;
    let a = minaff_character(data, &lambda)?;
    if m == 0 {
        return Ok(a);
    }
    let b = kr_demazure_route(data, i, m)?;
    if a != b {
        return Err(Error::Consistency(format!(
            "KR routes disagree for node {i}, m = {m}: {} vs {} terms",
            a.len(),
            b.len()
        )));
    }
    if let Some(c) = kr_factorized_route(data, i, m)? {
        if c != a {
            return Err(Error::Consistency(format!("KR factorized route disagrees for node {i}, m = {m}")));
        }
    }
    Ok(a)
}

/// `rho(beta + s delta) = sum_k max(0, -<alpha^vee, xi_k>)`.
pub fn rho_exponent(data: &AlgebraData, lambda: &[i64], alpha: &RealRoot) -> Result<i64> {
    let xi = xi_weights(data, lambda)?;
    let mut total = Rational::from(0);
    for x in &xi {
        let v = data.real_coroot_pairing(alpha, x)?;
        if v < Rational::from(0) {
            total -= v;
        }
    }
    rat_to_int(total).ok_or_else(|| Error::InvariantViolation(format!("rho({alpha:?}) = {total} is not an integer")))
}

/// Closed forms for `rho` on positive real roots.
pub fn rho_closed_form(data: &AlgebraData, lambda: &[i64], alpha: &RealRoot) -> Result<i64> {
    validate_lambda(data, lambda)?;
    if !data.is_root(&alpha.beta) {
        return Err(Error::Domain(format!("{:?} is not a root", alpha.beta)));
    }
    if !data.is_positive_real_root(alpha) {
        return Err(Error::Domain("rho closed forms need a positive real root".into()));
    }
    let n = data.rank;
    let neg: Vec<i64> = alpha.beta.iter().map(|x| -x).collect();
    if alpha.s != 1 || neg.iter().any(|&c| c < 0) || neg.iter().all(|&c| c <= 1) {
        return Ok(0);
    }
    // Here -beta is a positive root with some coefficient 2.
    let p = neg.iter().position(|&c| c > 0).unwrap() + 1;
    let q = neg.iter().position(|&c| c == 2).unwrap() + 1;
    let sum_from_q: i64 = (q..n).map(|k| lambda[k - 1]).sum();
    let bad = || Error::InvariantViolation(format!("unexpected root shape {neg:?}"));
    match data.kind {
        Kind::A => Err(bad()),
        Kind::B => {
            // -beta = alpha_{p,n} + alpha_{q,n}
            let expect: Vec<i64> = (1..=n).map(|k| if k < p { 0 } else if k < q { 1 } else { 2 }).collect();
            if neg != expect || p >= q {
                return Err(bad());
            }
            Ok(sum_from_q + lambda[n - 1] / 2)
        }
        Kind::C => {
            // -beta = alpha_{p,n} + alpha_{q,n-1}
            let expect: Vec<i64> =
                (1..=n).map(|k| if k < p { 0 } else if k < q || k == n { 1 } else { 2 }).collect();
            if neg != expect || q >= n {
                return Err(bad());
            }
            if p == q {
                Ok(sum_from_q / 2)
            } else if sum_from_q % 2 == 1 && (p..q).all(|k| lambda[k - 1] == 0) {
                Ok(sum_from_q - 1)
            } else {
                Ok(sum_from_q)
            }
        }
    }
}

/// Evaluates `rho` by definition and by closed form and insists they agree.
pub fn rho_check(data: &AlgebraData, lambda: &[i64], alpha: &RealRoot) -> Result<i64> {
    let direct = rho_exponent(data, lambda, alpha)?;
    let closed = rho_closed_form(data, lambda, alpha)?;
    if direct != closed {
        return Err(Error::Consistency(format!(
            "rho({:?} + {} delta) for lambda {lambda:?}: definition gives {direct}, closed form {closed}",
            alpha.beta, alpha.s
        )));
    }
    Ok(direct)
}

/// All positive real roots `beta + s delta` with `s <= s_max`.
pub fn positive_real_roots(data: &AlgebraData, s_max: i64) -> Vec<RealRoot> {
    let mut out: Vec<RealRoot> = data.pos_roots.iter().map(|b| RealRoot::new(b.clone(), 0)).collect();
    for s in 1..=s_max {
        for b in &data.pos_roots {
            out.push(RealRoot::new(b.clone(), s));
            out.push(RealRoot::new(b.iter().map(|x| -x).collect(), s));
        }
    }
    out
}

/// Checks the action of `w_{[1,i]}` on the weights `Lambda_0`, `varpi_j +
/// Lambda_0` (types B and C) and that `w_1 ... w_n` is reduced. Returns the
/// number of identities verified.
pub fn check_word_identities(data: &AlgebraData) -> Result<usize> {
    let n = data.rank;
    let words = standard_words(data);
    let full = prefix_word(&words, n);
    let total: usize = words.iter().map(|w| w.reflection_count()).sum();
    if !data.is_reduced_word(&full) || full.reflection_count() != total {
        return Err(Error::Factorization(format!("{full} is not reduced")));
    }
    let l0 = AffineWeight::lambda0(n);
    let fund = |j: usize| if j == 0 { AffineWeight::zero(n) } else { AffineWeight::fundamental(n, j) };
    let mut checked = 1;
    let fail = |what: String| Err(Error::InvariantViolation(what));
    for i in 1..=n {
        let w = prefix_word(&words, i);
        match data.kind {
            Kind::A => {}
            Kind::B => {
                let mut expect = fund(i).add(&l0);
                if i == n {
                    expect = expect.add(&fund(n));
                }
                if data.act_word(&w, &l0)?.mod_delta() != expect {
                    return fail(format!("w_[1,{i}](Lambda_0) is not {expect}"));
                }
                let spin = fund(n).add(&l0);
                if data.act_word(&w, &spin)? != spin {
                    return fail(format!("w_[1,{i}] does not fix varpi_n + Lambda_0"));
                }
                checked += 2;
            }
            Kind::C => {
                for j in 0..=n {
                    let start = fund(j).add(&l0);
                    let got = data.act_word(&w, &start)?;
                    let ok = if j < i { got.mod_delta() == fund(i - j).add(&fund(i)).add(&l0) } else { got == start };
                    if !ok {
                        return fail(format!("w_[1,{i}](varpi_{j} + Lambda_0) = {got}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_algebra;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn xi_examples() {
        let a3 = build_algebra(Kind::A, 3).unwrap();
        let xi = xi_weights(&a3, &[1, 0, 2]).unwrap();
        assert_eq!(xi[0], AffineWeight::new(vec![1, 0, 0], 1, r(0)));
        assert_eq!(xi[2], AffineWeight::new(vec![0, 0, 2], 2, r(0)));

        let b2 = build_algebra(Kind::B, 2).unwrap();
        let xi = xi_weights(&b2, &[0, 2]).unwrap();
        assert_eq!(xi[0], AffineWeight::zero(2));
        assert_eq!(xi[1], AffineWeight::new(vec![0, 2], 1, r(0)));

        let c2 = build_algebra(Kind::C, 2).unwrap();
        let aux = type_c_aux(&c2, &[1, 0]);
        assert_eq!(aux.flat, vec![0, 2]);
        assert_eq!(aux.p, vec![1, 0, 0]);
        let xi = xi_weights(&c2, &[1, 0]).unwrap();
        assert_eq!(xi[0], AffineWeight::new(vec![1, 0], 1, r(0)));
        assert_eq!(xi[1], AffineWeight::zero(2));
    }

    #[test]
    fn words_examples() {
        let b3 = build_algebra(Kind::B, 3).unwrap();
        let w = standard_words(&b3);
        assert_eq!(w[0].letters, vec![Letter::Tau]);
        assert_eq!(w[2].letters, vec![Letter::S(2), Letter::S(1), Letter::Tau]);
        let c2 = build_algebra(Kind::C, 2).unwrap();
        let w = standard_words(&c2);
        assert_eq!(w[1].letters, vec![Letter::S(1), Letter::S(0)]);
        let a2 = build_algebra(Kind::A, 2).unwrap();
        assert!(standard_words(&a2).iter().all(|w| w.is_empty()));
    }

    #[test]
    fn caps_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let md = minaff_data(&b2, &[0, 2]).unwrap();
        assert_eq!(md.caps[1].mod_delta(), AffineWeight::lambda0(2));
        let c2 = build_algebra(Kind::C, 2).unwrap();
        let md = minaff_data(&c2, &[1, 0]).unwrap();
        assert_eq!(md.caps[0].mod_delta(), AffineWeight::new(vec![1, 0], 1, r(0)));
    }

    #[test]
    fn small_characters() {
        let a2 = build_algebra(Kind::A, 2).unwrap();
        let ch = minaff_character(&a2, &[1, 1]).unwrap();
        assert_eq!(ch.coefficient_sum().unwrap(), 8);
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert_eq!(minaff_character(&b2, &[0, 0]).unwrap(), FiniteChar::monomial(FiniteWeight(vec![0, 0])));
        // the spin KR module of B2 at m = 1 is the 4-dimensional spin module
        assert_eq!(minaff_character(&b2, &[0, 1]).unwrap().coefficient_sum().unwrap(), 4);
        // the vector representation does not grow
        assert_eq!(minaff_character(&b2, &[1, 0]).unwrap().coefficient_sum().unwrap(), 5);
    }

    #[test]
    fn rho_examples() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        let alpha = RealRoot::new(vec![-1, -2], 1);
        assert_eq!(rho_check(&b2, &[1, 2], &alpha).unwrap(), 1);
        let c3 = build_algebra(Kind::C, 3).unwrap();
        let alpha = RealRoot::new(vec![-1, -2, -1], 1);
        assert_eq!(rho_check(&c3, &[0, 1, 0], &alpha).unwrap(), 0);
        assert_eq!(rho_check(&c3, &[0, 1, 0], &RealRoot::new(vec![1, 0, 0], 2)).unwrap(), 0);
    }

    #[test]
    fn word_identities() {
        for kind in [Kind::A, Kind::B, Kind::C] {
            for n in 2..=4 {
                check_word_identities(&build_algebra(kind, n).unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn bad_input() {
        let b2 = build_algebra(Kind::B, 2).unwrap();
        assert!(matches!(minaff_character(&b2, &[1]), Err(Error::Input(_))));
        assert!(matches!(minaff_character(&b2, &[-1, 0]), Err(Error::Input(_))));
        assert!(matches!(kr_character(&b2, 3, 1), Err(Error::Input(_))));
    }
}
