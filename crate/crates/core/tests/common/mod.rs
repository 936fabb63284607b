#![allow(dead_code)]

use std::collections::BTreeSet;

use quandlekit::abgrp::{AbHom, FinAbGroup};
use quandlekit::cocycle::ConstantCocycle;
use quandlekit::fingroup::FiniteGroup;
use quandlekit::quandle::{AffineQuandle, Quandle};

pub fn r3() -> Quandle {
    Quandle::dihedral(3)
}

pub fn order4() -> AffineQuandle {
    let g = FinAbGroup::elementary(2, 2);
    let a = AbHom::endo(g.clone(), vec![vec![1, 1], vec![1, 0]]).unwrap();
    AffineQuandle::new(g, a).unwrap()
}

/// The displayed table for the order-4 quandle; rows and columns in the
/// order 0, e1, e1+e2, e2 and entries 1 or `a`.
pub fn beta_a(a: usize) -> ConstantCocycle {
    let shape = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]];
    // position in the displayed order -> element index (first coordinate least significant)
    let idx = [0usize, 1, 3, 2];
    let mut v = vec![vec![0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            v[idx[r]][idx[c]] = if shape[r][c] == 1 { a } else { 0 };
        }
    }
    ConstantCocycle::unchecked(4, &v, usize::MAX).unwrap()
}

/// Every automorphism of `g`, by scanning all matrices.
pub fn automorphisms(g: &FinAbGroup) -> Vec<AbHom> {
    let k = g.rank();
    let d = g.moduli().to_vec();
    let cells: Vec<i64> = (0..k * k).map(|c| d[c / k]).collect();
    let total: i64 = cells.iter().product();
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut m = vec![vec![0; k]; k];
        for (c, &r) in cells.iter().enumerate() {
            m[c / k][c % k] = code % r;
            code /= r;
        }
        if let Ok(h) = AbHom::endo(g.clone(), m) {
            if h.is_automorphism() {
                out.push(h);
            }
        }
    }
    out
}

/// Abelian groups of order at most `max`, one per invariant-factor list.
pub fn abelian_groups(max: i64) -> Vec<FinAbGroup> {
    let lists: Vec<Vec<i64>> = vec![
        vec![2, 2],
        vec![2, 4],
        vec![2, 2, 2],
        vec![3, 3],
        vec![2, 6],
        vec![2, 8],
        vec![4, 4],
        vec![2, 2, 4],
        vec![2, 2, 2, 2],
    ];
    let mut out: Vec<FinAbGroup> = (2..=max).map(FinAbGroup::cyclic).collect();
    out.extend(lists.into_iter().map(|l| FinAbGroup::new(l).unwrap()).filter(|g| g.order() as i64 <= max));
    out
}

/// Connected affine quandles of order at most `max`, one per group and cycle
/// types of `α` and `1 − α`.
pub fn connected_affine_corpus(max: i64) -> Vec<AffineQuandle> {
    let mut out = Vec::new();
    for g in abelian_groups(max) {
        let mut seen = BTreeSet::new();
        let id = AbHom::identity(&g);
        for a in automorphisms(&g) {
            let one_minus = id.sub(&a).unwrap();
            if !one_minus.is_automorphism() {
                continue;
            }
            let perm = |h: &AbHom| quandlekit::permgrp::Perm::from_images(h.image_table()).unwrap().cycle_structure();
            if seen.insert((perm(&a), perm(&one_minus))) {
                out.push(AffineQuandle::new(g.clone(), a).unwrap());
            }
        }
    }
    out
}

/// Coefficient groups of order at most 6.
pub fn small_groups() -> Vec<FiniteGroup> {
    ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3"].iter().map(|d| FiniteGroup::from_descriptor(d).unwrap()).collect()
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
