//! Fundamental groups of affine quandles through `S(G,α) = (G⊗G)/I(G,α)`,
//! and the group `F(G,α) = Z × G × S(G,α)`.

use thiserror::Error;

use crate::abgrp::{
    clauwens_relators, quotient_invariants, subgroup_generated, tensor_square, AbError, AbHom, Elem, FinAbGroup,
    SubgroupData, TensorSquare, DEFAULT_SUBGROUP_CAP,
};
use crate::quandle::{affine_is_connected, AffineQuandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("affine quandle is not connected")]
    NotConnected,
    #[error("integer component overflowed")]
    Overflow,
    #[error(transparent)]
    Abelian(#[from] AbError),
}

#[derive(Clone, Debug)]
pub struct ClauwensData {
    base: FinAbGroup,
    alpha: AbHom,
    alpha_order: u64,
    tensor: TensorSquare,
    relators: Vec<Elem>,
    subgroup: SubgroupData,
    invariants: Vec<u64>,
}

/// Computes `G⊗G`, `I(G,α)` and the invariant factors of `S(G,α)`.
pub fn s_group(base: &FinAbGroup, alpha: &AbHom) -> Result<ClauwensData, Pi1Error> {
    s_group_with_cap(base, alpha, DEFAULT_SUBGROUP_CAP)
}

/// As [`s_group`], refusing when `I(G,α)` has more than `cap` elements.
pub fn s_group_with_cap(base: &FinAbGroup, alpha: &AbHom, cap: usize) -> Result<ClauwensData, Pi1Error> {
    let tensor = tensor_square(base);
    let relators = clauwens_relators(&tensor, alpha)?;
    let subgroup = subgroup_generated(tensor.group(), &relators, cap)?;
    let invariants = quotient_invariants(tensor.group(), &subgroup);
    let alpha_order = alpha.order().ok_or(AbError::NotAutomorphism)?;
    Ok(ClauwensData {
        base: base.clone(),
        alpha: alpha.clone(),
        alpha_order,
        tensor,
        relators,
        subgroup,
        invariants,
    })
}

/// Element `(k, x, a)` of `F(G,α)`; `a` is the smallest representative of its coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FElement {
    pub k: i64,
    pub x: Elem,
    pub a: Elem,
}

impl ClauwensData {
    pub fn base(&self) -> &FinAbGroup {
        &self.base
    }

    pub fn alpha(&self) -> &AbHom {
        &self.alpha
    }

    pub fn tensor(&self) -> &TensorSquare {
        &self.tensor
    }

    pub fn relators(&self) -> &[Elem] {
        &self.relators
    }

    pub fn subgroup(&self) -> &SubgroupData {
        &self.subgroup
    }

    pub fn tensor_order(&self) -> u64 {
        self.tensor.group().order()
    }

    pub fn i_order(&self) -> usize {
        self.subgroup.order()
    }

    /// Invariant factors of `S(G,α)`; empty when it is trivial.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn s_order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn s_is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Coset representative of a tensor-square element.
    pub fn reduce(&self, t: &[i64]) -> Elem {
        self.subgroup.coset_min(t)
    }

    /// `x ⊗ y` reduced modulo `I(G,α)`.
    pub fn tensor_class(&self, x: &[i64], y: &[i64]) -> Elem {
        self.reduce(&self.tensor.pure_tensor(x, y))
    }

    fn alpha_pow(&self, m: i64) -> Result<AbHom, Pi1Error> {
        Ok(self.alpha.pow(m.rem_euclid(self.alpha_order as i64))?)
    }

    pub fn f_identity(&self) -> FElement {
        FElement { k: 0, x: self.base.zero(), a: self.tensor.group().zero() }
    }

    pub fn f_element(&self, k: i64, x: &[i64], a: &[i64]) -> Result<FElement, Pi1Error> {
        self.base.check(x)?;
        self.tensor.group().check(a)?;
        Ok(FElement { k, x: x.to_vec(), a: self.reduce(a) })
    }

    /// `(k,x,a)(m,y,b) = (k+m, α^m(x)+y, a+b+α^m(x)⊗y)`.
    pub fn f_multiply(&self, p: &FElement, q: &FElement) -> Result<FElement, Pi1Error> {
        let k = p.k.checked_add(q.k).ok_or(Pi1Error::Overflow)?;
        let ax = self.alpha_pow(q.k)?.apply(&p.x);
        let t = self.tensor.group();
        let a = t.add(&t.add(&p.a, &q.a), &self.tensor.pure_tensor(&ax, &q.x));
        Ok(FElement { k, x: self.base.add(&ax, &q.x), a: self.reduce(&a) })
    }

    pub fn f_inverse(&self, p: &FElement) -> Result<FElement, Pi1Error> {
        let k = p.k.checked_neg().ok_or(Pi1Error::Overflow)?;
        let ax = self.alpha_pow(k)?.apply(&p.x);
        let t = self.tensor.group();
        let a = t.sub(&self.tensor.pure_tensor(&ax, &ax), &p.a);
        Ok(FElement { k, x: self.base.neg(&ax), a: self.reduce(&a) })
    }
}

/// Invariant factors of the fundamental group of a connected affine quandle.
pub fn pi1_affine(q: &AffineQuandle) -> Result<Vec<u64>, Pi1Error> {
    if !affine_is_connected(q.base(), q.alpha()).map_err(|_| Pi1Error::Abelian(AbError::NotAutomorphism))? {
        return Err(Pi1Error::NotConnected);
    }
    Ok(s_group(q.base(), q.alpha())?.invariants().to_vec())
}

pub fn is_simply_connected_affine(q: &AffineQuandle) -> Result<bool, Pi1Error> {
    Ok(pi1_affine(q)?.is_empty())
}
