//! Finite groups given by Cayley tables.
//!
//! Every constructor puts the identity at index 0. Coefficient groups for
//! cocycles and the groups underlying coset quandles both live here.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::abgrp::{AbError, FinAbGroup};
use crate::permgrp::{closure, Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("Cayley table is not square or has entries out of range")]
    Shape,
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order {0} is too large for this operation")]
    TooLarge(usize),
    #[error("unknown group element label {0:?}")]
    UnknownLabel(String),
    #[error("cannot parse group descriptor {0:?}")]
    Parse(String),
    #[error(transparent)]
    Abelian(#[from] AbError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Largest symmetric group we are willing to tabulate.
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

#[derive(Clone)]
pub struct FiniteGroup {
    descriptor: String,
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.descriptor, self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.labels == other.labels
    }
}

impl FiniteGroup {
    /// Validates a Cayley table `table[a][b] = a·b` and re-indexes so the identity is 0.
    pub fn from_table(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
        descriptor: &str,
    ) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(GroupError::Shape);
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return Err(GroupError::NoInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        // swap e and 0
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let mut labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(GroupError::Shape);
        }
        labels.swap(0, e);
        Ok(FiniteGroup::assemble(descriptor.to_string(), n, mul, labels))
    }

    fn assemble(descriptor: String, n: usize, mul: Vec<usize>, labels: Vec<String>) -> FiniteGroup {
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("validated group");
        }
        FiniteGroup { descriptor, n, mul, inv, labels, perms: None }
    }

    /// The group formed by a list of permutations closed under composition.
    /// Elements are sorted, so the identity comes first.
    pub fn from_perms(mut elements: Vec<Perm>, descriptor: &str) -> Result<FiniteGroup, GroupError> {
        elements.sort();
        elements.dedup();
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut mul = vec![0; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = *index.get(&pa.compose(pb)?).ok_or(GroupError::Shape)?;
            }
        }
        if n == 0 || !elements[0].is_identity() {
            return Err(GroupError::NoIdentity);
        }
        let labels = elements.iter().map(label_of_perm).collect();
        let mut g = FiniteGroup::assemble(descriptor.to_string(), n, mul, labels);
        g.perms = Some(elements);
        Ok(g)
    }

    pub fn from_perm_group(g: &PermGroup) -> Result<FiniteGroup, GroupError> {
        let elems = closure(g.degree(), g.generators(), g.enumeration_cap())?;
        FiniteGroup::from_perms(elems, &format!("perm group of degree {}", g.degree()))
    }

    /// `Sym(m)`, elements in lexicographic order of their image lists.
    pub fn symmetric(m: usize) -> Result<FiniteGroup, GroupError> {
        if m > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::TooLarge(factorial(m)));
        }
        let elems = closure(m, PermGroup::symmetric(m).generators(), usize::MAX)?;
        FiniteGroup::from_perms(elems, &format!("S{m}"))
    }

    pub fn from_abelian(g: &FinAbGroup) -> FiniteGroup {
        let n = g.order() as usize;
        let elems: Vec<_> = g.elements().collect();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = g.index_of(&g.add(&elems[a], &elems[b]));
            }
        }
        let labels = elems
            .iter()
            .map(|x| match x.len() {
                0 => "0".to_string(),
                1 => x[0].to_string(),
                _ => format!("({})", x.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
            })
            .collect();
        let descriptor = if g.rank() == 0 { "trivial".to_string() } else { g.to_string() };
        FiniteGroup::assemble(descriptor, n, mul, labels)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_abelian(&FinAbGroup::cyclic(n as i64))
    }

    /// `S<m>`, `Sym<m>` or `Sym(<m>)` for symmetric groups; anything else is read
    /// as an abelian descriptor such as `Z 2 x Z 2`.
    pub fn from_descriptor(desc: &str) -> Result<FiniteGroup, GroupError> {
        let t: String = desc.chars().filter(|c| !c.is_whitespace()).collect();
        let sym = t
            .strip_prefix("Sym")
            .or_else(|| t.strip_prefix('S'))
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'));
        if let Some(m) = sym {
            let m: usize = m.parse().map_err(|_| GroupError::Parse(desc.to_string()))?;
            return FiniteGroup::symmetric(m);
        }
        Ok(FiniteGroup::from_abelian(&desc.parse::<FinAbGroup>()?))
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `σ a σ⁻¹`.
    pub fn conj(&self, sigma: usize, a: usize) -> usize {
        self.mul(self.mul(sigma, a), self.inv(sigma))
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Result<usize, GroupError> {
        let compact = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let want = compact(label);
        self.labels
            .iter()
            .position(|l| compact(l) == want)
            .ok_or_else(|| GroupError::UnknownLabel(label.to_string()))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest element of the conjugacy class of `a`.
    pub fn class_rep(&self, a: usize) -> usize {
        (0..self.n).map(|s| self.conj(s, a)).min().expect("nonempty group")
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.n).map(|s| self.conj(s, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }

    /// Left regular representation `λ(a): h ↦ a·h`.
    pub fn regular_rep(&self, a: usize) -> Perm {
        Perm::from_images((0..self.n).map(|h| self.mul(a, h)).collect()).expect("group row")
    }

    /// The natural permutation of a group built from permutations, otherwise
    /// the left regular representation.
    pub fn action(&self, a: usize) -> Perm {
        match &self.perms {
            Some(p) => p[a].clone(),
            None => self.regular_rep(a),
        }
    }

    /// Number of points the group acts on through [`FiniteGroup::action`].
    pub fn action_degree(&self) -> usize {
        match &self.perms {
            Some(p) => p[0].degree(),
            None => self.n,
        }
    }

    /// Index of a permutation in a group built from permutations.
    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.binary_search(p).ok()
    }

    /// True when `map` (given on indices) is a bijective homomorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &m in map {
            if m >= self.n || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        (0..self.n).all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// Parses a whitespace-separated Cayley table: first `n`, then `n` rows.
    pub fn parse_table_text(text: &str, descriptor: &str) -> Result<FiniteGroup, GroupError> {
        let table = crate::quandle::parse_square_table(text).map_err(|_| GroupError::Shape)?;
        FiniteGroup::from_table(&table, None, descriptor)
    }
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn label_of_perm(p: &Perm) -> String {
    let parts: Vec<String> = p.images().iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "[0,1,2]");
        assert!(!s3.is_abelian());
        let classes = s3.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert!(FiniteGroup::symmetric(7).is_err());
    }

    #[test]
    fn descriptors() {
        assert_eq!(FiniteGroup::from_descriptor("S3").unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_descriptor("Sym(4)").unwrap().order(), 24);
        let v = FiniteGroup::from_descriptor("Z2 x Z2").unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert_eq!(v.label(3), "(1,1)");
        assert_eq!(v.index_of_label("(1, 1)").unwrap(), 3);
        assert!(FiniteGroup::from_descriptor("Sx").is_err());
    }

    #[test]
    fn table_reindexes_identity() {
        // Z_2 written with the identity at index 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]], None, "Z2").unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.label(0), "1");
        assert_eq!(
            FiniteGroup::from_table(&[vec![1, 1], vec![1, 1]], None, "x").unwrap_err(),
            GroupError::NoIdentity
        );
    }

    #[test]
    fn regular_rep_is_homomorphism() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let lhs = s3.regular_rep(s3.mul(a, b));
                let rhs = s3.regular_rep(a).compose(&s3.regular_rep(b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugation_and_powers() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for a in 0..6 {
            assert_eq!(s3.pow(a, s3.elem_order(a) as i64), 0);
            assert_eq!(s3.mul(a, s3.pow(a, -1)), 0);
        }
        let id: Vec<usize> = (0..6).collect();
        assert!(s3.is_automorphism(&id));
        let conj: Vec<usize> = (0..6).map(|a| s3.conj(1, a)).collect();
        assert!(s3.is_automorphism(&conj));
    }
}
