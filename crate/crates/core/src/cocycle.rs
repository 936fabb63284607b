//! Constant quandle cocycles `β: X×X → G`, normalization, the pair maps
//! `f`, `g`, `h` on `X×X` with their orbits, and the second constant
//! cohomology set `H²_c(X, G)`.

use std::collections::{BTreeSet, HashSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::fingroup::{FiniteGroup, GroupError};
use crate::permgrp::Perm;
use crate::quandle::{AffineQuandle, Quandle};

/// Coefficient groups above this order are refused by the conjugacy bucketing.
pub const MAX_COEFF_ORDER: usize = 10_000;
/// Default number of search nodes for cocycle enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("value table has the wrong shape or contains unknown group elements")]
    Shape,
    #[error("quandle is not latin")]
    NotLatin,
    #[error("base point {0} out of range")]
    BadBasePoint(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("not a cocycle: {0}")]
    InvalidCocycle(Violation),
    #[error("malformed cocycle document: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `β(x,x) ≠ 1`.
    Diagonal { x: usize },
    /// `β(xy,xz)β(x,z) ≠ β(x,yz)β(y,z)`.
    Triple { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Diagonal { x } => write!(f, "beta({x},{x}) is not the identity"),
            Violation::Triple { x, y, z } => write!(f, "cocycle condition fails at ({x}, {y}, {z})"),
        }
    }
}

/// Values `β(x,y)` stored row-major as group element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstantCocycle {
    n: usize,
    values: Vec<usize>,
}

impl ConstantCocycle {
    pub fn trivial(n: usize) -> ConstantCocycle {
        ConstantCocycle { n, values: vec![0; n * n] }
    }

    /// Validates shape and both cocycle conditions.
    pub fn new(q: &Quandle, g: &FiniteGroup, values: &[Vec<usize>]) -> Result<ConstantCocycle, CocycleError> {
        let beta = ConstantCocycle::unchecked(q.size(), values, g.order())?;
        beta.check(q, g).map_err(CocycleError::InvalidCocycle)?;
        Ok(beta)
    }

    /// Shape checks only.
    pub fn unchecked(n: usize, values: &[Vec<usize>], order: usize) -> Result<ConstantCocycle, CocycleError> {
        if values.len() != n || values.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= order)) {
            return Err(CocycleError::Shape);
        }
        Ok(ConstantCocycle { n, values: values.concat() })
    }

    pub(crate) fn from_flat(n: usize, values: Vec<usize>) -> ConstantCocycle {
        ConstantCocycle { n, values }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.n + y]
    }

    pub fn values(&self) -> Vec<Vec<usize>> {
        self.values.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Diagonal points first, then triples in lexicographic order.
    pub fn check(&self, q: &Quandle, g: &FiniteGroup) -> Result<(), Violation> {
        let n = self.n;
        if q.size() != n {
            return Err(Violation::Diagonal { x: 0 });
        }
        if let Some(x) = (0..n).find(|&x| self.get(x, x) != 0) {
            return Err(Violation::Diagonal { x });
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = g.mul(self.get(q.op(x, y), q.op(x, z)), self.get(x, z));
                    let rhs = g.mul(self.get(x, q.op(y, z)), self.get(y, z));
                    if lhs != rhs {
                        return Err(Violation::Triple { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_cocycle(&self, q: &Quandle, g: &FiniteGroup) -> bool {
        self.check(q, g).is_ok()
    }

    /// `β(xy,xz) = β(x,yz)` exactly when `β(x,z) = β(y,z)`.
    pub fn weak_cocycle_check(&self, q: &Quandle) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let a = self.get(q.op(x, y), q.op(x, z)) == self.get(x, q.op(y, z));
                    let b = self.get(x, z) == self.get(y, z);
                    a == b
                })
            })
        })
    }

    /// `β_u(x,y) = β((xy)/u, u)⁻¹ β(x,y) β(y/u, u)`.
    pub fn normalize(&self, q: &Quandle, g: &FiniteGroup, u: usize) -> Result<ConstantCocycle, CocycleError> {
        if !q.is_latin() {
            return Err(CocycleError::NotLatin);
        }
        if u >= self.n {
            return Err(CocycleError::BadBasePoint(u));
        }
        let n = self.n;
        let mut values = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = g.inv(self.get(q.rdiv(q.op(x, y), u), u));
                let c = self.get(q.rdiv(y, u), u);
                values[x * n + y] = g.mul(g.mul(a, self.get(x, y)), c);
            }
        }
        Ok(ConstantCocycle { n, values })
    }

    pub fn is_normalized(&self, u: usize) -> bool {
        (0..self.n).all(|x| self.get(x, u) == 0)
    }

    /// `σ β σ⁻¹` pointwise.
    pub fn conjugate(&self, g: &FiniteGroup, sigma: usize) -> ConstantCocycle {
        ConstantCocycle { n: self.n, values: self.values.iter().map(|&v| g.conj(sigma, v)).collect() }
    }

    /// `γ(xy) β(x,y) γ(y)⁻¹`.
    pub fn twist(&self, q: &Quandle, g: &FiniteGroup, gamma: &[usize]) -> ConstantCocycle {
        let n = self.n;
        let mut values = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                values[x * n + y] = g.mul(g.mul(gamma[q.op(x, y)], self.get(x, y)), g.inv(gamma[y]));
            }
        }
        ConstantCocycle { n, values }
    }

    /// The smallest conjugate in the order of value vectors.
    pub fn canonical_conjugate(&self, g: &FiniteGroup) -> ConstantCocycle {
        (0..g.order()).map(|s| self.conjugate(g, s)).min().expect("nonempty group")
    }

    /// Image under the left regular representation, as a cocycle into `Sym(|G|)`.
    pub fn embed(&self, g: &FiniteGroup, sym: &FiniteGroup) -> Result<ConstantCocycle, CocycleError> {
        let images = (0..g.order())
            .map(|a| sym.index_of_perm(&g.regular_rep(a)).ok_or(CocycleError::Shape))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConstantCocycle { n: self.n, values: self.values.iter().map(|&v| images[v]).collect() })
    }

    pub fn to_json(&self, g: &FiniteGroup, quandle_ref: &str) -> Value {
        let rows: Vec<Vec<&str>> =
            self.values.chunks(self.n).map(|r| r.iter().map(|&v| g.label(v)).collect()).collect();
        json!({ "quandle": quandle_ref, "coeff": g.descriptor(), "values": rows })
    }

    /// Reads the `values` array of a cocycle document; entries are element labels.
    pub fn from_json(q: &Quandle, g: &FiniteGroup, doc: &Value) -> Result<ConstantCocycle, CocycleError> {
        let rows = doc
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| CocycleError::Parse("missing values array".into()))?;
        let mut table = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row.as_array().ok_or_else(|| CocycleError::Parse("row is not an array".into()))?;
            let mut out = Vec::with_capacity(cells.len());
            for c in cells {
                let label = match c {
                    Value::String(s) => s.clone(),
                    Value::Number(k) => k.to_string(),
                    _ => return Err(CocycleError::Parse(format!("bad entry {c}"))),
                };
                out.push(g.index_of_label(&label)?);
            }
            table.push(out);
        }
        ConstantCocycle::new(q, g, &table)
    }
}

/// A witness that two cocycles are cohomologous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cohomology {
    /// Normalized forms are conjugate by this element.
    Conjugator(usize),
    /// `β′(x,y) = γ(xy) β(x,y) γ(y)⁻¹`.
    Gamma(Vec<usize>),
}

/// Decides whether `β ∼ β′`. Latin quandles go through normalization at 0,
/// anything else through a direct search for `γ`.
pub fn cohomologous(
    q: &Quandle,
    g: &FiniteGroup,
    beta: &ConstantCocycle,
    beta2: &ConstantCocycle,
) -> Result<Option<Cohomology>, CocycleError> {
    if q.is_latin() {
        let a = beta.normalize(q, g, 0)?;
        let b = beta2.normalize(q, g, 0)?;
        return Ok((0..g.order()).find(|&s| a.conjugate(g, s) == b).map(Cohomology::Conjugator));
    }
    Ok(find_gamma(q, g, beta, beta2).map(Cohomology::Gamma))
}

/// Since `γ(xy) = β′(x,y) γ(y) β(x,y)⁻¹`, the value of `γ` at one point of an
/// orbit of the left multiplication group fixes it on the whole orbit, and
/// different orbits do not interact.
pub fn find_gamma(q: &Quandle, g: &FiniteGroup, beta: &ConstantCocycle, beta2: &ConstantCocycle) -> Option<Vec<usize>> {
    let n = q.size();
    let mut gamma = vec![usize::MAX; n];
    for root in 0..n {
        if gamma[root] != usize::MAX {
            continue;
        }
        let mut found = false;
        for start in 0..g.order() {
            let mut local = gamma.clone();
            local[root] = start;
            let mut stack = vec![root];
            let mut orbit = vec![root];
            let mut ok = true;
            while let (true, Some(y)) = (ok, stack.pop()) {
                for x in 0..n {
                    let want = g.mul(g.mul(beta2.get(x, y), local[y]), g.inv(beta.get(x, y)));
                    let xy = q.op(x, y);
                    if local[xy] == usize::MAX {
                        local[xy] = want;
                        stack.push(xy);
                        orbit.push(xy);
                    } else if local[xy] != want {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                gamma = local;
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    debug_assert!(beta.twist(q, g, &gamma) == *beta2);
    Some(gamma)
}

// ---------------------------------------------------------------------------
// pair maps

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairMapKind {
    F,
    G,
    H,
    /// Inverse of `h`.
    K,
}

impl PairMapKind {
    pub fn parse(s: &str) -> Option<PairMapKind> {
        match s {
            "f" => Some(PairMapKind::F),
            "g" => Some(PairMapKind::G),
            "h" => Some(PairMapKind::H),
            "k" => Some(PairMapKind::K),
            _ => None,
        }
    }
}

/// Pairs `(x,y)` are encoded as `x·n + y`.
#[inline]
pub fn pair_index(n: usize, x: usize, y: usize) -> usize {
    x * n + y
}

#[inline]
pub fn pair_of(n: usize, i: usize) -> (usize, usize) {
    (i / n, i % n)
}

/// Evaluates one of the pair maps at `(x, y)` with base point `u`.
pub fn apply_pair_map(q: &Quandle, u: usize, kind: PairMapKind, x: usize, y: usize) -> (usize, usize) {
    match kind {
        PairMapKind::F => (q.op(x, q.rdiv(y, u)), q.op(x, u)),
        PairMapKind::G => (q.op(u, x), q.op(u, y)),
        PairMapKind::H => (q.op(q.rdiv(y, q.ldiv(x, u)), x), y),
        PairMapKind::K => (q.rdiv(u, q.ldiv(q.rdiv(q.op(x, y), u), y)), y),
    }
}

/// The pair map as a permutation of degree `n²`.
pub fn pair_map(q: &Quandle, u: usize, kind: PairMapKind) -> Result<Perm, CocycleError> {
    check_latin(q, u)?;
    let n = q.size();
    let images = (0..n * n)
        .map(|i| {
            let (x, y) = pair_of(n, i);
            let (a, b) = apply_pair_map(q, u, kind, x, y);
            pair_index(n, a, b)
        })
        .collect();
    Perm::from_images(images).map_err(|_| CocycleError::NotLatin)
}

fn check_latin(q: &Quandle, u: usize) -> Result<(), CocycleError> {
    if !q.is_latin() {
        return Err(CocycleError::NotLatin);
    }
    if u >= q.size() {
        return Err(CocycleError::BadBasePoint(u));
    }
    Ok(())
}

/// Orbits of a set of permutations on `0..degree`. Blocks are sorted and
/// listed by smallest element, which is also the block representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn from_generators(degree: usize, gens: &[Perm]) -> OrbitPartition {
        let mut block_of = vec![usize::MAX; degree];
        let mut blocks = Vec::new();
        for start in 0..degree {
            if block_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            block_of[start] = id;
            let mut block = vec![start];
            let mut i = 0;
            while i < block.len() {
                let p = block[i];
                for gen in gens {
                    let q = gen.apply(p);
                    if block_of[q] == usize::MAX {
                        block_of[q] = id;
                        block.push(q);
                    }
                }
                i += 1;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn representative(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// The action of `map` on blocks, if `map` sends blocks onto blocks.
    pub fn induced_action(&self, map: &Perm) -> Option<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                let target = self.block_of[map.apply(b[0])];
                b.iter().all(|&p| self.block_of[map.apply(p)] == target).then_some(target)
            })
            .collect()
    }
}

/// Orbits on `X×X` of the group generated by the chosen pair maps.
pub fn orbit_partition(q: &Quandle, u: usize, kinds: &[PairMapKind]) -> Result<OrbitPartition, CocycleError> {
    let gens = kinds.iter().map(|&k| pair_map(q, u, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitPartition::from_generators(q.size() * q.size(), &gens))
}

/// Orbit of a single pair.
pub fn orbit_of_pair(q: &Quandle, u: usize, kinds: &[PairMapKind], x: usize, y: usize) -> Result<Vec<(usize, usize)>, CocycleError> {
    let part = orbit_partition(q, u, kinds)?;
    let n = q.size();
    let b = part.block_of(pair_index(n, x, y));
    Ok(part.blocks()[b].iter().map(|&i| pair_of(n, i)).collect())
}

/// The `g`-orbits of `X×X` with the distinguished families: the orbit of
/// `(u,u)`, the orbits of `f`-fixed points `(x, xu)`, and the orbits covering
/// the fiber of the product map over `u`.
#[derive(Clone, Debug)]
pub struct GOrbits {
    pub partition: OrbitPartition,
    pub base_block: usize,
    pub f_fixed_family: Vec<usize>,
    pub u_family: Vec<usize>,
    /// Action of `f` and `h` on the `g`-orbits.
    pub f_action: Vec<usize>,
    pub h_action: Vec<usize>,
}

pub fn g_orbits(q: &Quandle, u: usize) -> Result<GOrbits, CocycleError> {
    let n = q.size();
    let partition = orbit_partition(q, u, &[PairMapKind::G])?;
    let base_block = partition.block_of(pair_index(n, u, u));
    let f_fixed: BTreeSet<usize> = (0..n).map(|x| partition.block_of(pair_index(n, x, q.op(x, u)))).collect();
    let u_fam: BTreeSet<usize> = (0..n * n)
        .filter(|&i| {
            let (x, y) = pair_of(n, i);
            q.op(x, y) == u && (x, y) != (u, u)
        })
        .map(|i| partition.block_of(i))
        .collect();
    let f = pair_map(q, u, PairMapKind::F)?;
    let h = pair_map(q, u, PairMapKind::H)?;
    let f_action = partition.induced_action(&f).expect("f commutes with g");
    let h_action = partition.induced_action(&h).expect("h commutes with g");
    Ok(GOrbits {
        partition,
        base_block,
        f_fixed_family: f_fixed.into_iter().collect(),
        u_family: u_fam.into_iter().collect(),
        f_action,
        h_action,
    })
}

/// Length of the `f`-orbit of `(x, y)`, by iterating `f`.
pub fn f_orbit_length(q: &Quandle, u: usize, x: usize, y: usize) -> Result<usize, CocycleError> {
    check_latin(q, u)?;
    let mut p = apply_pair_map(q, u, PairMapKind::F, x, y);
    let mut len = 1;
    while p != (x, y) {
        p = apply_pair_map(q, u, PairMapKind::F, p.0, p.1);
        len += 1;
    }
    Ok(len)
}

/// `f_k(x,y)`: `φ^{k/2}(x)` for even `k` and `φ^{(k+1)/2}(y/u)` for odd `k`,
/// where `φ = L_x L_{y/u}`.
pub fn f_sequence_term(q: &Quandle, u: usize, x: usize, y: usize, k: usize) -> usize {
    let w = q.rdiv(y, u);
    let phi = |t: usize| q.op(x, q.op(w, t));
    let (mut t, reps) = if k.is_multiple_of(2) { (x, k / 2) } else { (w, k.div_ceil(2)) };
    for _ in 0..reps {
        t = phi(t);
    }
    t
}

/// Orbit length from the sequence: the least `k > 0` with `f_k = x` and `f_{k−1} = y/u`.
pub fn f_orbit_length_by_sequence(q: &Quandle, u: usize, x: usize, y: usize) -> Result<usize, CocycleError> {
    check_latin(q, u)?;
    let w = q.rdiv(y, u);
    let bound = q.size() * q.size();
    (1..=bound)
        .find(|&k| f_sequence_term(q, u, x, y, k) == x && f_sequence_term(q, u, x, y, k - 1) == w)
        .ok_or(CocycleError::BudgetExceeded)
}

/// Affine form of `f_k` with base point 0: `x + Σ_{j=1..k} (−1)^j α^j(x − y/0)`.
pub fn affine_f_term(aq: &AffineQuandle, x: usize, y: usize, k: usize) -> usize {
    let a = aq.base();
    let q = aq.quandle();
    let ex = a.element(x);
    let z = a.sub(&ex, &a.element(q.rdiv(y, 0)));
    let mut acc = ex;
    let mut t = z;
    for j in 1..=k {
        t = aq.alpha().apply(&t);
        acc = if j % 2 == 0 { a.add(&acc, &t) } else { a.sub(&acc, &t) };
    }
    a.index_of(&acc)
}

/// Least `m > 0` with `Σ_{j=1..m} (−1)^j α^j(x − y/0) = 0`.
pub fn affine_f_orbit_length(aq: &AffineQuandle, x: usize, y: usize) -> usize {
    let bound = 2 * aq.quandle().size() * aq.quandle().size();
    (1..=bound).find(|&m| affine_f_term(aq, x, y, m) == x).expect("finite orbit")
}

/// `h(x,y) = (y + x, y)` on an affine quandle with base point 0.
pub fn affine_h(aq: &AffineQuandle, x: usize, y: usize) -> (usize, usize) {
    let a = aq.base();
    (a.index_of(&a.add(&a.element(y), &a.element(x))), y)
}

// ---------------------------------------------------------------------------
// enumeration

/// Equations `v[a]·v[b] = v[c]·v[d]` over variables taking values in a group.
struct Solver<'a> {
    g: &'a FiniteGroup,
    cons: Vec<[usize; 4]>,
    watch: Vec<Vec<usize>>,
    val: Vec<usize>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> Solver<'a> {
    fn new(g: &'a FiniteGroup, nvars: usize, cons: Vec<[usize; 4]>, budget: u64) -> Solver<'a> {
        let mut watch = vec![Vec::new(); nvars];
        for (i, c) in cons.iter().enumerate() {
            let distinct: BTreeSet<usize> = c.iter().copied().collect();
            for v in distinct {
                watch[v].push(i);
            }
        }
        Solver { g, cons, watch, val: vec![UNSET; nvars], trail: Vec::new(), nodes: 0, budget }
    }

    /// Assigns and propagates forced values; false on contradiction.
    fn assign(&mut self, var: usize, value: usize) -> bool {
        let mut queue = vec![(var, value)];
        while let Some((v, x)) = queue.pop() {
            if self.val[v] != UNSET {
                if self.val[v] != x {
                    return false;
                }
                continue;
            }
            self.val[v] = x;
            self.trail.push(v);
            for &ci in &self.watch[v] {
                let c = self.cons[ci];
                let unknown: Vec<usize> = (0..4).filter(|&i| self.val[c[i]] == UNSET).collect();
                let g = self.g;
                let at = |i: usize| self.val[c[i]];
                match unknown.as_slice() {
                    [] => {
                        if g.mul(at(0), at(1)) != g.mul(at(2), at(3)) {
                            return false;
                        }
                    }
                    [i] => {
                        let forced = match i {
                            0 => g.mul(g.mul(at(2), at(3)), g.inv(at(1))),
                            1 => g.mul(g.inv(at(0)), g.mul(at(2), at(3))),
                            2 => g.mul(g.mul(at(0), at(1)), g.inv(at(3))),
                            _ => g.mul(g.inv(at(2)), g.mul(at(0), at(1))),
                        };
                        queue.push((c[*i], forced));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            self.val[v] = UNSET;
        }
    }

    fn search(&mut self, order: &[usize], emit: &mut dyn FnMut(&[usize])) -> Result<(), CocycleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CocycleError::BudgetExceeded);
        }
        let Some(&var) = order.iter().find(|&&v| self.val[v] == UNSET) else {
            emit(&self.val);
            return Ok(());
        };
        for value in 0..self.g.order() {
            let mark = self.trail.len();
            if self.assign(var, value) {
                self.search(order, emit)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Solves the cocycle equations with one variable per block of `part`. Blocks
/// listed in `fixed` are set to the identity.
fn solve_blocks(
    q: &Quandle,
    g: &FiniteGroup,
    part: &OrbitPartition,
    fixed: &BTreeSet<usize>,
    budget: u64,
) -> Result<Vec<ConstantCocycle>, CocycleError> {
    let n = q.size();
    let var = |x: usize, y: usize| part.block_of(pair_index(n, x, y));
    let mut seen = HashSet::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c = [var(q.op(x, y), q.op(x, z)), var(x, z), var(x, q.op(y, z)), var(y, z)];
                if c[0] == c[2] && c[1] == c[3] {
                    continue;
                }
                seen.insert(c);
            }
        }
    }
    let mut cons: Vec<[usize; 4]> = seen.into_iter().collect();
    cons.sort_unstable();
    let mut solver = Solver::new(g, part.len(), cons, budget);
    for &b in fixed {
        if !solver.assign(b, 0) {
            return Ok(Vec::new());
        }
    }
    let mut order: Vec<usize> = (0..part.len()).collect();
    order.sort_by_key(|&b| (part.blocks()[b].len(), part.representative(b)));
    let mut out = Vec::new();
    solver.search(&order, &mut |vals| {
        let values: Vec<usize> = (0..n * n).map(|i| vals[part.block_of(i)]).collect();
        let beta = ConstantCocycle::from_flat(n, values);
        if beta.is_cocycle(q, g) {
            out.push(beta);
        }
    })?;
    out.sort();
    Ok(out)
}

/// Every `u`-normalized cocycle, found among maps constant on the orbits of `⟨f,g,h⟩`.
pub fn normalized_cocycles(q: &Quandle, g: &FiniteGroup, u: usize, budget: u64) -> Result<Vec<ConstantCocycle>, CocycleError> {
    let part = orbit_partition(q, u, &[PairMapKind::F, PairMapKind::G, PairMapKind::H])?;
    let n = q.size();
    let fixed: BTreeSet<usize> = (0..n)
        .flat_map(|x| [pair_index(n, x, x), pair_index(n, x, u)])
        .map(|i| part.block_of(i))
        .collect();
    solve_blocks(q, g, &part, &fixed, budget)
}

/// All of `Z²_c(X, G)`, with no normalization.
pub fn all_cocycles(q: &Quandle, g: &FiniteGroup, budget: u64) -> Result<Vec<ConstantCocycle>, CocycleError> {
    let n = q.size();
    let part = OrbitPartition::from_generators(n * n, &[]);
    let fixed: BTreeSet<usize> = (0..n).map(|x| pair_index(n, x, x)).collect();
    solve_blocks(q, g, &part, &fixed, budget)
}

/// Representatives of `H²_c(X, G)` computed at base point `u`.
#[derive(Clone, Debug)]
pub struct H2c {
    pub base_point: usize,
    /// Number of `u`-normalized cocycles found.
    pub normalized: usize,
    /// One canonical `u`-normalized representative per class, sorted, trivial first.
    pub classes: Vec<ConstantCocycle>,
}

impl H2c {
    pub fn is_trivial(&self) -> bool {
        self.classes.len() == 1
    }
}

pub fn h2c(q: &Quandle, g: &FiniteGroup, u: usize, budget: u64) -> Result<H2c, CocycleError> {
    check_latin(q, u)?;
    if g.order() > MAX_COEFF_ORDER {
        return Err(CocycleError::BudgetExceeded);
    }
    let cocycles = normalized_cocycles(q, g, u, budget)?;
    let classes: BTreeSet<ConstantCocycle> = cocycles.iter().map(|b| b.canonical_conjugate(g)).collect();
    Ok(H2c { base_point: u, normalized: cocycles.len(), classes: classes.into_iter().collect() })
}

pub fn h2c_is_trivial(q: &Quandle, g: &FiniteGroup) -> Result<bool, CocycleError> {
    Ok(h2c(q, g, 0, DEFAULT_NODE_BUDGET)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::{AbHom, FinAbGroup};

    fn r3() -> Quandle {
        Quandle::dihedral(3)
    }

    fn order4() -> AffineQuandle {
        let g = FinAbGroup::elementary(2, 2);
        let a = AbHom::endo(g.clone(), vec![vec![1, 1], vec![1, 0]]).unwrap();
        AffineQuandle::new(g, a).unwrap()
    }

    #[test]
    fn pair_maps_on_r3() {
        let q = r3();
        assert_eq!(apply_pair_map(&q, 0, PairMapKind::F, 1, 2), (1, 2));
        assert_eq!(apply_pair_map(&q, 0, PairMapKind::G, 1, 2), (2, 1));
        assert_eq!(apply_pair_map(&q, 0, PairMapKind::H, 1, 2), (0, 2));
        let h = pair_map(&q, 0, PairMapKind::H).unwrap();
        let k = pair_map(&q, 0, PairMapKind::K).unwrap();
        assert!(h.compose(&k).unwrap().is_identity());
    }

    #[test]
    fn h_inverse_on_order4() {
        let q = order4().into_quandle();
        for u in 0..4 {
            let h = pair_map(&q, u, PairMapKind::H).unwrap();
            let k = pair_map(&q, u, PairMapKind::K).unwrap();
            assert!(k.compose(&h).unwrap().is_identity());
        }
    }

    #[test]
    fn cq_witness() {
        let q = r3();
        let g = FiniteGroup::cyclic(2);
        let mut v = vec![vec![0; 3]; 3];
        v[1][1] = 1;
        assert_eq!(
            ConstantCocycle::new(&q, &g, &v).unwrap_err(),
            CocycleError::InvalidCocycle(Violation::Diagonal { x: 1 })
        );
        assert!(ConstantCocycle::trivial(3).is_cocycle(&q, &g));
    }

    #[test]
    fn r3_sym2() {
        let q = r3();
        let g = FiniteGroup::symmetric(2).unwrap();
        let all = all_cocycles(&q, &g, DEFAULT_NODE_BUDGET).unwrap();
        // every cocycle is a γ-twist of a constant conjugate of 1
        assert!(!all.is_empty());
        for b in &all {
            assert!(b.weak_cocycle_check(&q));
            let n = b.normalize(&q, &g, 0).unwrap();
            assert!(n.is_trivial());
            assert!(cohomologous(&q, &g, b, &ConstantCocycle::trivial(3)).unwrap().is_some());
            assert!(find_gamma(&q, &g, b, &ConstantCocycle::trivial(3)).is_some());
        }
        let h = h2c(&q, &g, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn g_orbit_sizes_r3() {
        let q = r3();
        let part = orbit_partition(&q, 0, &[PairMapKind::G]).unwrap();
        assert_eq!(part.blocks()[part.block_of(pair_index(3, 1, 2))].len(), 2);
        assert_eq!(part.blocks()[part.block_of(0)].len(), 1);
        let fam = g_orbits(&q, 0).unwrap();
        assert_eq!(fam.base_block, part.block_of(0));
    }

    #[test]
    fn f_orbit_forms_agree() {
        let aq = order4();
        let q = aq.quandle();
        for x in 0..4 {
            for y in 0..4 {
                let a = f_orbit_length(q, 0, x, y).unwrap();
                assert_eq!(a, f_orbit_length_by_sequence(q, 0, x, y).unwrap());
                assert_eq!(a, affine_f_orbit_length(&aq, x, y));
                assert_eq!(a == 1, y == q.op(x, 0));
                assert!(a == 1 || a == 3);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let q = r3();
        let g = FiniteGroup::symmetric(3).unwrap();
        let b = ConstantCocycle::trivial(3);
        let doc = b.to_json(&g, "r3.txt");
        assert_eq!(ConstantCocycle::from_json(&q, &g, &doc).unwrap(), b);
    }
}
