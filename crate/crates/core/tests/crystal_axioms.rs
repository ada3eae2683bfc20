use affinize::crystal::{Crystal, CrystalElem, CrystalSet, Tableau, TensorRule};
use proptest::prelude::*;

fn elems(cr: &Crystal, shapes: &[(usize, usize)]) -> Vec<CrystalElem> {
    let mut acc = CrystalSet::singleton(CrystalElem::new(vec![]), "unit");
    for &(r, c) in shapes {
        acc = acc.tensor(&cr.rect_crystal(r, c).unwrap());
    }
    acc.elems.into_iter().collect()
}

// Pairwise tensor rule, written from the two-factor formulas rather than
// the flattened signature.
fn pairwise_f(cr: &Crystal, b: &CrystalElem, i: usize) -> Option<CrystalElem> {
    let (head, tail) = b.factors.split_at(1);
    let (b1, b2) = (CrystalElem::new(head.to_vec()), CrystalElem::new(tail.to_vec()));
    if tail.is_empty() {
        return cr.f(&b1, i);
    }
    let on_left = match cr.rule {
        TensorRule::Kashiwara => cr.phi(&b1, i) > cr.epsilon(&b2, i),
        TensorRule::AntiKashiwara => cr.phi(&b2, i) <= cr.epsilon(&b1, i),
    };
    if on_left {
        cr.f(&b1, i).map(|x| x.tensor(&b2))
    } else {
        pairwise_f(cr, &b2, i).map(|x| b1.tensor(&x))
    }
}

fn pairwise_epsilon(cr: &Crystal, b: &CrystalElem, i: usize) -> i64 {
    let (head, tail) = b.factors.split_at(1);
    let (b1, b2) = (CrystalElem::new(head.to_vec()), CrystalElem::new(tail.to_vec()));
    if tail.is_empty() {
        return cr.epsilon(&b1, i) as i64;
    }
    let e2 = pairwise_epsilon(cr, &b2, i);
    let (e1, w1, w2) = (cr.epsilon(&b1, i) as i64, cr.weight(&b1)[i - 1], cr.weight(&b2)[i - 1]);
    match cr.rule {
        TensorRule::Kashiwara => e1.max(e2 - w1),
        TensorRule::AntiKashiwara => e2.max(e1 - w2),
    }
}

#[test]
fn flattened_rule_matches_pairwise_formulas() {
    for rule in [TensorRule::Kashiwara, TensorRule::AntiKashiwara] {
        let cr = Crystal::with_rule(3, rule);
        for b in elems(&cr, &[(1, 1), (2, 1), (1, 2)]) {
            for i in 1..=3 {
                assert_eq!(cr.f(&b, i), pairwise_f(&cr, &b, i), "{rule:?} f_{i} on {b:?}");
                assert_eq!(cr.epsilon(&b, i) as i64, pairwise_epsilon(&cr, &b, i), "{rule:?} eps_{i} on {b:?}");
            }
        }
    }
}

#[test]
fn conventions_on_two_boxes() {
    let one = CrystalElem::single(Tableau { rows: vec![vec![1]] });
    let b = one.tensor(&one);
    let two = |l: u8, r: u8| CrystalElem::new(vec![Tableau { rows: vec![vec![l]] }, Tableau { rows: vec![vec![r]] }]);
    assert_eq!(Crystal::new(1).f(&b, 1), Some(two(2, 1)));
    assert_eq!(Crystal::with_rule(1, TensorRule::AntiKashiwara).f(&b, 1), Some(two(1, 2)));
}

#[test]
fn rectangle_counts() {
    let cr = Crystal::new(3);
    assert_eq!(cr.rect_crystal(1, 1).unwrap().len(), 4);
    assert_eq!(cr.rect_crystal(2, 1).unwrap().len(), 6);
    assert_eq!(cr.rect_crystal(2, 2).unwrap().len(), 20);
    assert!(cr.rect_crystal(5, 1).is_err());
    assert!(cr.rect_crystal(2, 2).unwrap().elems.iter().all(|b| b.factors[0].is_semistandard(3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crystal_axioms(pick in 0usize..10_000, i in 1usize..=3, anti in any::<bool>()) {
        let rule = if anti { TensorRule::AntiKashiwara } else { TensorRule::Kashiwara };
        let cr = Crystal::with_rule(3, rule);
        let all = elems(&cr, &[(2, 1), (1, 2)]);
        let b = &all[pick % all.len()];
        let wt = cr.weight(b)[i - 1];
        prop_assert_eq!(cr.phi(b, i) as i64 - cr.epsilon(b, i) as i64, wt);
        if let Some(fb) = cr.f(b, i) {
            prop_assert_eq!(cr.e(&fb, i), Some(b.clone()));
            prop_assert_eq!(cr.weight(&fb)[i - 1], wt - 2);
            prop_assert_eq!(cr.epsilon(&fb, i), cr.epsilon(b, i) + 1);
        } else {
            prop_assert_eq!(cr.phi(b, i), 0);
        }
        if let Some(eb) = cr.e(b, i) {
            prop_assert_eq!(cr.f(&eb, i), Some(b.clone()));
        }
    }

    #[test]
    fn tensor_associativity(a in 0usize..4, b in 0usize..6, c in 0usize..4, i in 1usize..=3) {
        let cr = Crystal::new(3);
        let boxes: Vec<_> = cr.rect_crystal(1, 1).unwrap().elems.into_iter().collect();
        let cols: Vec<_> = cr.rect_crystal(2, 1).unwrap().elems.into_iter().collect();
        let (x, y, z) = (&boxes[a], &cols[b], &boxes[c]);
        let left = x.tensor(y).tensor(z);
        let right = x.tensor(&y.tensor(z));
        prop_assert_eq!(cr.f(&left, i), cr.f(&right, i));
        prop_assert_eq!(pairwise_f(&cr, &left, i), cr.f(&right, i));
    }
}
