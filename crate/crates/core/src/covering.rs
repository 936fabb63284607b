//! Extensions `X ×_β S`, congruences and quotients, coverings and their
//! equivalence.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::cocycle::{cohomologous, CocycleError, ConstantCocycle};
use crate::fingroup::FiniteGroup;
use crate::permgrp::Perm;
use crate::quandle::{Quandle, QuandleError};

/// Exhaustive congruence and isomorphism searches stop above this order.
pub const MAX_SEARCH_ORDER: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("invalid dynamical cocycle: {0:?}")]
    InvalidCocycle(DynViolation),
    #[error("partition is not compatible with the operation")]
    NotCompatible,
    #[error("congruence blocks have different sizes")]
    NotUniform,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("search limited to order {MAX_SEARCH_ORDER}")]
    BudgetExceeded,
    #[error("shapes do not match")]
    Shape,
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynViolation {
    /// `β(xy, xz, β(x,y,s)(t)) β(x,z,s) ≠ β(x,yz,s) β(y,z,t)`.
    Cocycle { x: usize, y: usize, z: usize, s: usize, t: usize },
    /// `β(x,x,s)(s) ≠ s`.
    Quandle { x: usize, s: usize },
}

/// `β(x, y, s) ∈ Sym(S)` for `x, y ∈ X`, `s ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalCocycle {
    n: usize,
    m: usize,
    values: Vec<Perm>,
}

impl DynamicalCocycle {
    pub fn new(n: usize, m: usize, values: Vec<Perm>) -> Result<DynamicalCocycle, CoveringError> {
        if values.len() != n * n * m || values.iter().any(|p| p.degree() != m) {
            return Err(CoveringError::Shape);
        }
        Ok(DynamicalCocycle { n, m, values })
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(usize, usize, usize) -> Perm) -> Result<DynamicalCocycle, CoveringError> {
        let mut values = Vec::with_capacity(n * n * m);
        for x in 0..n {
            for y in 0..n {
                for s in 0..m {
                    values.push(f(x, y, s));
                }
            }
        }
        DynamicalCocycle::new(n, m, values)
    }

    /// `β(x, y, s) = β(x, y)` acting on `S` through [`FiniteGroup::action`].
    pub fn from_constant(beta: &ConstantCocycle, g: &FiniteGroup) -> DynamicalCocycle {
        let n = beta.size();
        let m = g.action_degree();
        let perms: Vec<Perm> = (0..g.order()).map(|a| g.action(a)).collect();
        DynamicalCocycle::from_fn(n, m, |x, y, _| perms[beta.get(x, y)].clone()).expect("consistent shape")
    }

    pub fn trivial(n: usize, m: usize) -> DynamicalCocycle {
        DynamicalCocycle { n, m, values: vec![Perm::identity(m); n * n * m] }
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn fiber_size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, s: usize) -> &Perm {
        &self.values[(x * self.n + y) * self.m + s]
    }

    pub fn is_constant(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| (1..self.m).all(|s| self.get(x, y, s) == self.get(x, y, 0))))
    }

    pub fn check(&self, q: &Quandle) -> Result<(), DynViolation> {
        let (n, m) = (self.n, self.m);
        for x in 0..n {
            for s in 0..m {
                if self.get(x, x, s).apply(s) != s {
                    return Err(DynViolation::Quandle { x, s });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for s in 0..m {
                        for t in 0..m {
                            let bt = self.get(x, y, s).apply(t);
                            for r in 0..m {
                                let lhs = self.get(q.op(x, y), q.op(x, z), bt).apply(self.get(x, z, s).apply(r));
                                let rhs = self.get(x, q.op(y, z), s).apply(self.get(y, z, t).apply(r));
                                if lhs != rhs {
                                    return Err(DynViolation::Cocycle { x, y, z, s, t });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `X ×_β S` with `(x,s)·(y,t) = (xy, β(x,y,s)(t))`; `(x,s)` has index `x·|S| + s`.
#[derive(Clone, Debug)]
pub struct Extension {
    base: Quandle,
    cocycle: DynamicalCocycle,
    total: Quandle,
}

pub fn extend(base: &Quandle, beta: &DynamicalCocycle) -> Result<Extension, CoveringError> {
    if beta.base_size() != base.size() {
        return Err(CoveringError::Shape);
    }
    beta.check(base).map_err(CoveringError::InvalidCocycle)?;
    let (n, m) = (base.size(), beta.fiber_size());
    let mut rows = vec![vec![0; n * m]; n * m];
    for x in 0..n {
        for s in 0..m {
            for y in 0..n {
                for t in 0..m {
                    rows[x * m + s][y * m + t] = base.op(x, y) * m + beta.get(x, y, s).apply(t);
                }
            }
        }
    }
    let total = Quandle::from_table(&rows)?;
    Ok(Extension { base: base.clone(), cocycle: beta.clone(), total })
}

/// Extension by a constant cocycle, acting on `S` through [`FiniteGroup::action`].
pub fn extend_constant(base: &Quandle, g: &FiniteGroup, beta: &ConstantCocycle) -> Result<Extension, CoveringError> {
    extend(base, &DynamicalCocycle::from_constant(beta, g))
}

impl Extension {
    pub fn base(&self) -> &Quandle {
        &self.base
    }

    pub fn cocycle(&self) -> &DynamicalCocycle {
        &self.cocycle
    }

    pub fn total(&self) -> &Quandle {
        &self.total
    }

    pub fn fiber_size(&self) -> usize {
        self.cocycle.fiber_size()
    }

    pub fn projection(&self) -> Vec<usize> {
        (0..self.total.size()).map(|i| i / self.fiber_size()).collect()
    }

    pub fn fibers(&self) -> Congruence {
        Congruence::from_labels(&self.projection())
    }
}

/// A partition of a quandle's elements. Blocks are sorted and ordered by
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<Vec<usize>>,
}

impl Congruence {
    /// Elements with equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut seen: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match seen.iter_mut().find(|(k, _)| *k == l) {
                Some((_, b)) => b.push(i),
                None => seen.push((l, vec![i])),
            }
        }
        Congruence { blocks: seen.into_iter().map(|(_, b)| b).collect() }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Congruence, CoveringError> {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n || labels[x] != usize::MAX {
                    return Err(CoveringError::Shape);
                }
                labels[x] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(CoveringError::Shape);
        }
        Ok(Congruence::from_labels(&labels))
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence { blocks: (0..n).map(|x| vec![x]).collect() }
    }

    pub fn full(n: usize) -> Congruence {
        Congruence { blocks: vec![(0..n).collect()] }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut l = vec![0; self.size()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                l[x] = i;
            }
        }
        l
    }

    pub fn is_uniform(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// The block of `a▷b` depends only on the blocks of `a` and `b`.
    pub fn is_compatible(&self, q: &Quandle) -> bool {
        let l = self.labels();
        let k = self.blocks.len();
        let mut cell = vec![usize::MAX; k * k];
        for a in 0..q.size() {
            for b in 0..q.size() {
                let c = &mut cell[l[a] * k + l[b]];
                let v = l[q.op(a, b)];
                if *c != usize::MAX && *c != v {
                    return false;
                }
                *c = v;
            }
        }
        true
    }
}

/// The partition by equal left sections.
pub fn ker_left_section(q: &Quandle) -> Congruence {
    let mut labels = vec![0; q.size()];
    for x in 0..q.size() {
        labels[x] = (0..=x).find(|&y| q.left_section(y) == q.left_section(x)).expect("x itself");
    }
    Congruence::from_labels(&labels)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The smallest congruence containing the given pairs.
pub fn congruence_generated(q: &Quandle, pairs: &[(usize, usize)]) -> Congruence {
    let n = q.size();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut work: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((a, b)) = work.pop_front() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            continue;
        }
        parent[ra.max(rb)] = ra.min(rb);
        for c in 0..n {
            work.push_back((q.op(c, a), q.op(c, b)));
            work.push_back((q.op(a, c), q.op(b, c)));
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Congruence::from_labels(&labels)
}

/// Every congruence, from principal congruences closed under joins.
pub fn all_congruences(q: &Quandle) -> Result<Vec<Congruence>, CoveringError> {
    let n = q.size();
    if n > MAX_SEARCH_ORDER {
        return Err(CoveringError::BudgetExceeded);
    }
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(n));
    let principal: BTreeSet<Congruence> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|p| congruence_generated(q, &[p])).collect();
    let mut frontier: Vec<Congruence> = principal.iter().cloned().collect();
    found.extend(principal.iter().cloned());
    while let Some(c) = frontier.pop() {
        for p in &principal {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for b in c.blocks().iter().chain(p.blocks()) {
                pairs.extend(b.windows(2).map(|w| (w[0], w[1])));
            }
            let j = congruence_generated(q, &pairs);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// `Y/α` with a cocycle `β` and the verified isomorphism `Y → (Y/α) ×_β S`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub quandle: Quandle,
    pub cocycle: DynamicalCocycle,
    /// `y ↦ ([y], h_[y](y))` as indices of the extension.
    pub isomorphism: Vec<usize>,
}

/// Block bijections `h_B` enumerate each block in increasing order.
pub fn quotient(y: &Quandle, cong: &Congruence) -> Result<Quotient, CoveringError> {
    if cong.size() != y.size() {
        return Err(CoveringError::Shape);
    }
    if !cong.is_compatible(y) {
        return Err(CoveringError::NotCompatible);
    }
    if !cong.is_uniform() {
        return Err(CoveringError::NotUniform);
    }
    let blocks = cong.blocks();
    let (k, m) = (blocks.len(), blocks[0].len());
    let label = cong.labels();
    let mut pos = vec![0; y.size()];
    for b in blocks {
        for (i, &e) in b.iter().enumerate() {
            pos[e] = i;
        }
    }
    let rows: Vec<Vec<usize>> =
        (0..k).map(|a| (0..k).map(|b| label[y.op(blocks[a][0], blocks[b][0])]).collect()).collect();
    let quandle = Quandle::from_table(&rows)?;
    // β([x],[y],s)(t) = h_[xy](h_[x]⁻¹(s) ▷ h_[y]⁻¹(t))
    let cocycle = DynamicalCocycle::from_fn(k, m, |a, b, s| {
        let images = (0..m).map(|t| pos[y.op(blocks[a][s], blocks[b][t])]).collect();
        Perm::from_images(images).expect("left translation restricted to a block")
    })?;
    let ext = extend(&quandle, &cocycle)?;
    let isomorphism: Vec<usize> = (0..y.size()).map(|e| label[e] * m + pos[e]).collect();
    if !y.is_homomorphism(ext.total(), &isomorphism) {
        return Err(CoveringError::NotHomomorphism);
    }
    Ok(Quotient { quandle, cocycle, isomorphism })
}

/// A surjective homomorphism under which elements with equal images have
/// equal left sections.
pub fn is_covering(y: &Quandle, x: &Quandle, map: &[usize]) -> Result<bool, CoveringError> {
    if !y.is_homomorphism(x, map) {
        return Err(CoveringError::NotHomomorphism);
    }
    let image: HashSet<usize> = map.iter().copied().collect();
    if image.len() != x.size() {
        return Err(CoveringError::NotSurjective);
    }
    for a in 0..y.size() {
        for b in a + 1..y.size() {
            if map[a] == map[b] && y.left_section(a) != y.left_section(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An isomorphism `φ: Y → Y′` with `p′∘φ = p`, searched in lexicographic order.
pub fn fiber_isomorphism(
    y1: &Quandle,
    p1: &[usize],
    y2: &Quandle,
    p2: &[usize],
) -> Result<Option<Vec<usize>>, CoveringError> {
    if y1.size() > MAX_SEARCH_ORDER || y2.size() > MAX_SEARCH_ORDER {
        return Err(CoveringError::BudgetExceeded);
    }
    if y1.size() != y2.size() || p1.len() != y1.size() || p2.len() != y2.size() {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; y1.size()];
    let mut used = vec![false; y2.size()];
    Ok(fiber_search(y1, p1, y2, p2, 0, &mut map, &mut used).then_some(map))
}

fn fiber_search(
    y1: &Quandle,
    p1: &[usize],
    y2: &Quandle,
    p2: &[usize],
    a: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if a == y1.size() {
        return true;
    }
    for img in 0..y2.size() {
        if used[img] || p2[img] != p1[a] {
            continue;
        }
        map[a] = img;
        let ok = (0..=a).all(|b| {
            [(a, b), (b, a)].iter().all(|&(s, t)| {
                let r = y1.op(s, t);
                r > a || map[r] == y2.op(map[s], map[t])
            })
        });
        if ok {
            used[img] = true;
            if fiber_search(y1, p1, y2, p2, a + 1, map, used) {
                return true;
            }
            used[img] = false;
        }
    }
    map[a] = usize::MAX;
    false
}

/// Equivalence of two coverings of the same base.
pub fn coverings_equivalent(y1: &Quandle, p1: &[usize], y2: &Quandle, p2: &[usize]) -> Result<bool, CoveringError> {
    Ok(fiber_isomorphism(y1, p1, y2, p2)?.is_some())
}

/// Equivalence of constant-cocycle extensions, decided on the cocycles.
pub fn constant_extensions_equivalent(
    x: &Quandle,
    g: &FiniteGroup,
    beta1: &ConstantCocycle,
    beta2: &ConstantCocycle,
) -> Result<bool, CoveringError> {
    Ok(cohomologous(x, g, beta1, beta2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_extension_is_direct_product() {
        let x = Quandle::dihedral(3);
        let e = extend(&x, &DynamicalCocycle::trivial(3, 2)).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(e.total().op(a, b), x.op(a / 2, b / 2) * 2 + b % 2);
            }
        }
        assert!(is_covering(e.total(), &x, &e.projection()).unwrap());
        assert!(!e.total().is_connected());
        let k = ker_left_section(e.total());
        assert_eq!(k.blocks().len(), 3);
        let back = quotient(e.total(), &e.fibers()).unwrap();
        assert_eq!(back.quandle, x);
        let one = extend(&x, &DynamicalCocycle::trivial(3, 1)).unwrap();
        assert_eq!(one.total(), &x);
    }

    #[test]
    fn product_with_r3_is_not_a_covering() {
        let x = Quandle::dihedral(3);
        let beta =
            DynamicalCocycle::from_fn(3, 3, |_, _, s| Perm::from_images((0..3).map(|t| x.op(s, t)).collect()).unwrap())
                .unwrap();
        assert!(!beta.is_constant());
        let e = extend(&x, &beta).unwrap();
        assert!(!is_covering(e.total(), &x, &e.projection()).unwrap());
    }

    #[test]
    fn quandle_condition_witness() {
        let x = Quandle::trivial();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let beta = DynamicalCocycle::new(1, 2, vec![swap.clone(), swap]).unwrap();
        assert_eq!(extend(&x, &beta).unwrap_err(), CoveringError::InvalidCocycle(DynViolation::Quandle { x: 0, s: 0 }));
    }

    #[test]
    fn congruences_of_r3() {
        let x = Quandle::dihedral(3);
        let all = all_congruences(&x).unwrap();
        assert_eq!(all, vec![Congruence::identity(3), Congruence::full(3)]);
        assert_eq!(quotient(&x, &Congruence::full(3)).unwrap().quandle.size(), 1);
        assert_eq!(quotient(&x, &Congruence::identity(3)).unwrap().quandle, x);
        let bad = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(quotient(&x, &bad).unwrap_err(), CoveringError::NotCompatible);
    }
}
