use affinize::decomp::{decompose, weyl_character, weyl_dim};
use affinize::minaff::{
    gen_demazure_character, kr_character, kr_demazure_route, minaff_affine_character, minaff_character,
    minaff_character_with, minaff_data, minaff_graded,
};
use affinize::rootsys::AffineWeight;
use affinize::{build_algebra, CharPoly, Error, Exec, ExtWeylWord, FiniteWeight, Kind};

#[test]
fn type_a_is_the_evaluation_module() {
    for n in 1..=4 {
        let a = build_algebra(Kind::A, n).unwrap();
        let lam: Vec<i64> = (0..n as i64).map(|i| (i % 3) + 1).collect();
        assert_eq!(minaff_character(&a, &lam).unwrap(), *weyl_character(&a, &lam).unwrap());
    }
}

#[test]
fn b3_examples() {
    let b3 = build_algebra(Kind::B, 3).unwrap();
    let m = decompose(&b3, &minaff_character(&b3, &[1, 1, 2]).unwrap()).unwrap();
    assert_eq!(m.len(), 6);
    assert!(m.entries.values().all(|&x| x == 1));
    let m = decompose(&b3, &minaff_character(&b3, &[1, 1, 1]).unwrap()).unwrap();
    assert_eq!(m.entries.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 0, 1], vec![1, 1, 1]]);
}

#[test]
fn kr_b2_node_two() {
    let b2 = build_algebra(Kind::B, 2).unwrap();
    let ch = kr_character(&b2, 2, 1).unwrap();
    assert_eq!(ch, *weyl_character(&b2, &[0, 1]).unwrap());
    let m = decompose(&b2, &kr_character(&b2, 2, 2).unwrap()).unwrap();
    assert_eq!(m, [(vec![0, 2], 1), (vec![0, 0], 1)].into_iter().collect());
    let m = decompose(&b2, &kr_character(&b2, 1, 2).unwrap()).unwrap();
    assert_eq!(m.get(&[2, 0]), 1);
    assert_eq!(kr_demazure_route(&b2, 2, 3).unwrap(), kr_character(&b2, 2, 3).unwrap());
}

#[test]
fn graded_slices_sum_to_the_character() {
    for (kind, n, lam) in [(Kind::B, 2, vec![1, 2]), (Kind::C, 3, vec![1, 0, 1]), (Kind::A, 2, vec![2, 1])] {
        let data = build_algebra(kind, n).unwrap();
        let slices = minaff_graded(&data, &lam).unwrap();
        let total = slices.values().fold(affinize::FiniteChar::zero(), |acc, s| acc.add(s).unwrap());
        assert_eq!(total, minaff_character(&data, &lam).unwrap());
        assert_eq!(minaff_affine_character(&data, &lam).unwrap().specialize().unwrap(), total);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let b3 = build_algebra(Kind::B, 3).unwrap();
    let lam = [2, 1, 2];
    let seq = minaff_character_with(&b3, &lam, Exec::Sequential).unwrap();
    let par = minaff_character_with(&b3, &lam, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.sorted_terms(), par.sorted_terms());
    let f = CharPoly::monomial(AffineWeight::new(vec![3, -1, 2], 2, 0.into()));
    let w = b3.longest_element_word();
    assert_eq!(f.demazure_word_with(&b3, &w, Exec::Sequential).unwrap(), f.demazure_word_with(&b3, &w, Exec::Parallel).unwrap());
}

#[test]
fn generalized_demazure_examples() {
    let b2 = build_algebra(Kind::B, 2).unwrap();
    // one factor, empty word: just the monomial
    let cap = AffineWeight::new(vec![1, 0], 1, 0.into());
    let f = gen_demazure_character(&b2, std::slice::from_ref(&cap), &[ExtWeylWord::empty()], false).unwrap();
    assert_eq!(f, CharPoly::monomial(cap));
    let md = minaff_data(&b2, &[1, 1]).unwrap();
    let f = gen_demazure_character(&b2, &md.caps, &md.words, true).unwrap();
    let ch = f.specialize().unwrap().demazure_word(&b2, &b2.longest_element_word()).unwrap();
    assert_eq!(ch, minaff_character(&b2, &[1, 1]).unwrap());
    assert!(gen_demazure_character(&b2, &md.caps, &md.words[..1], true).is_err());
}

#[test]
fn dimensions_and_errors() {
    let c3 = build_algebra(Kind::C, 3).unwrap();
    let ch = minaff_character(&c3, &[1, 1, 1]).unwrap();
    let m = decompose(&c3, &ch).unwrap();
    let dims: i64 = m.entries.iter().map(|(mu, k)| k * weyl_dim(&c3, mu).unwrap()).sum();
    assert_eq!(dims, ch.coefficient_sum().unwrap());
    assert!(ch.coeff(&FiniteWeight(vec![1, 1, 1])) == 1);
    assert!(matches!(minaff_character(&c3, &[1, -1, 0]), Err(Error::Input(_))));
    assert!(matches!(minaff_character(&c3, &[1, 1]), Err(Error::Input(_))));
    assert!(matches!(build_algebra(Kind::B, 1), Err(Error::Config(_))));
}
