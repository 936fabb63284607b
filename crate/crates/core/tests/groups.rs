mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use quandlekit::abgrp::{
    clauwens_relators, quotient_invariants, subgroup_generated, tensor_square, AbHom, FinAbGroup,
    DEFAULT_SUBGROUP_CAP,
};
use quandlekit::permgrp::{closure, Perm, PermError, PermGroup};
use quandlekit::quandle::AffineQuandle;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #[test]
    fn compose_is_associative(a in perm(8), b in perm(8), c in perm(8)) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn inverse_is_two_sided(a in perm(8)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn closure_order_divides_factorial(a in perm(5), b in perm(5)) {
        let g = closure(5, &[a.clone(), b.clone()], 1000).unwrap();
        prop_assert_eq!(factorial(5) % g.len(), 0);
        let grp = PermGroup::new(5, vec![a, b]).unwrap();
        if grp.is_doubly_transitive() {
            prop_assert!(grp.is_transitive());
        }
    }

    #[test]
    fn tensor_is_biadditive(
        moduli in prop::collection::vec(1i64..5, 1..3),
        seed in any::<u64>(),
    ) {
        let g = FinAbGroup::new(moduli).unwrap();
        let t = tensor_square(&g);
        let tg = t.group();
        let n = g.order() as usize;
        let pick = |k: u64| g.element((seed.wrapping_mul(k + 1) % n as u64) as usize);
        let (x, x2, y) = (pick(1), pick(2), pick(3));
        prop_assert_eq!(
            t.pure_tensor(&g.add(&x, &x2), &y),
            tg.add(&t.pure_tensor(&x, &y), &t.pure_tensor(&x2, &y))
        );
        prop_assert_eq!(
            t.pure_tensor(&y, &g.add(&x, &x2)),
            tg.add(&t.pure_tensor(&y, &x), &t.pure_tensor(&y, &x2))
        );
    }

    #[test]
    fn quotient_matches_coset_count(
        moduli in prop::collection::vec(2i64..7, 1..4),
        gens in prop::collection::vec(prop::collection::vec(0i64..7, 3), 0..3),
    ) {
        let g = FinAbGroup::new(moduli).unwrap();
        prop_assume!(g.order() <= 4096);
        let gens: Vec<Vec<i64>> = gens.iter().map(|v| g.reduce(&v[..g.rank()])).collect();
        let s = subgroup_generated(&g, &gens, DEFAULT_SUBGROUP_CAP).unwrap();
        let inv = quotient_invariants(&g, &s);
        let q: u64 = inv.iter().product();
        prop_assert_eq!(q * s.order() as u64, g.order());
        for w in inv.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // brute-force coset count
        let cosets: HashSet<Vec<i64>> = g.elements().map(|x| s.coset_min(&x)).collect();
        prop_assert_eq!(cosets.len() as u64, q);
    }
}

#[test]
fn compose_by_hand() {
    // (0 1 2)∘(0 1): 0 ↦ 1 ↦ 2, 1 ↦ 0 ↦ 1, 2 ↦ 2 ↦ 0
    let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
    assert_eq!(c.compose(&t).unwrap().images(), &[2, 1, 0]);
    assert!(t.compose(&t).unwrap().is_identity());
    assert_eq!(c.inverse(), Perm::from_cycles(3, &[&[0, 2, 1]]).unwrap());
}

#[test]
fn closure_examples() {
    let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
    let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    assert_eq!(closure(3, std::slice::from_ref(&t), 10).unwrap().len(), 2);
    assert_eq!(closure(3, &[t, c], 10).unwrap().len(), 6);
    let ten: Vec<usize> = (0..10).collect();
    let big = Perm::from_cycles(10, &[&ten]).unwrap();
    assert_eq!(closure(10, &[big], 5), Err(PermError::CapExceeded { cap: 5 }));
}

#[test]
fn transitivity_examples() {
    let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let g = PermGroup::new(3, vec![c]).unwrap();
    assert!(g.is_transitive() && !g.is_doubly_transitive());
    assert!(PermGroup::symmetric(3).is_doubly_transitive());
    let q = common::order4();
    assert!(q.quandle().lmlt().is_doubly_transitive());
    assert_eq!(q.quandle().left_section(0).cycle_structure(), vec![3, 1]);
    let r3 = AffineQuandle::cyclic(3, 2).unwrap();
    assert_eq!(r3.quandle().lmlt().orbit(0).unwrap().len(), 3);
}

#[test]
fn abelian_examples() {
    let z6 = FinAbGroup::cyclic(6);
    assert_eq!(z6.add(&[4], &[5]), vec![3]);
    let g = FinAbGroup::new(vec![2, 4]).unwrap();
    assert_eq!(g.elem_order(&[1, 2]), 2);
    assert_eq!(FinAbGroup::cyclic(9).elem_order(&[3]), 3);
    assert!(AbHom::scalar(&FinAbGroup::cyclic(5), 2).is_automorphism());
    assert!(!AbHom::scalar(&FinAbGroup::cyclic(4), 2).is_automorphism());
    let l2 = AbHom::scalar(&FinAbGroup::cyclic(5), 2);
    assert_eq!(l2.pow(2).unwrap(), AbHom::scalar(&FinAbGroup::cyclic(5), 4));
    let z3 = FinAbGroup::cyclic(3);
    assert_eq!(AbHom::identity(&z3).sub(&AbHom::scalar(&z3, 2)).unwrap(), AbHom::scalar(&z3, 2));
    let q = common::order4();
    assert!(q.alpha().pow(3).unwrap() == AbHom::identity(q.base()));
}

#[test]
fn tensor_examples() {
    assert_eq!(tensor_square(&FinAbGroup::elementary(2, 2)).group().order(), 16);
    let t6 = tensor_square(&FinAbGroup::cyclic(6));
    assert_eq!(t6.group().order(), 6);
    assert_eq!(t6.pure_tensor(&[2], &[3]), vec![0]);
    let t = tensor_square(&FinAbGroup::new(vec![2, 3]).unwrap());
    assert_eq!(t.group().moduli(), &[2, 1, 1, 3]);
    // α = identity on Z_2 gives the zero relator
    let z2 = FinAbGroup::cyclic(2);
    let r = clauwens_relators(&tensor_square(&z2), &AbHom::identity(&z2)).unwrap();
    assert_eq!(r, vec![vec![0]]);
    // Z_5 with λ_2: 1⊗1 − 1⊗2 = −(1⊗1), all of Z_5
    let z5 = FinAbGroup::cyclic(5);
    let r = clauwens_relators(&tensor_square(&z5), &AbHom::scalar(&z5, 2)).unwrap();
    assert_eq!(r, vec![vec![4]]);
    let s = subgroup_generated(tensor_square(&z5).group(), &r, DEFAULT_SUBGROUP_CAP).unwrap();
    assert_eq!(s.order(), 5);
}

#[test]
fn subgroup_examples() {
    let z6 = FinAbGroup::cyclic(6);
    let s = subgroup_generated(&z6, &[vec![4]], 100).unwrap();
    assert_eq!(s.elements(), &[vec![0], vec![2], vec![4]]);
    assert_eq!(subgroup_generated(&z6, &[vec![0]], 100).unwrap().order(), 1);
    let z4 = FinAbGroup::cyclic(4);
    assert_eq!(quotient_invariants(&z4, &subgroup_generated(&z4, &[vec![2]], 100).unwrap()), vec![2]);
    assert!(quotient_invariants(&z4, &subgroup_generated(&z4, &[vec![1]], 100).unwrap()).is_empty());
}

#[test]
fn automorphisms_preserve_element_set() {
    for g in common::abelian_groups(16) {
        for a in common::automorphisms(&g) {
            let mut img = a.image_table();
            img.sort_unstable();
            assert_eq!(img, (0..g.order() as usize).collect::<Vec<_>>());
        }
    }
}
