//! Finite abelian groups `Z_{d_1} x ... x Z_{d_k}`, homomorphisms between them
//! as integer matrices, tensor squares, enumerated subgroups and quotients.
//!
//! Groups keep the moduli they were built with; only [`quotient_invariants`]
//! canonicalizes (via Smith normal form).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::{gcd, lcm, Integer};
use thiserror::Error;

/// Default bound on the number of elements enumerated by [`subgroup_generated`].
pub const DEFAULT_SUBGROUP_CAP: usize = 1_000_000;

/// Element of a [`FinAbGroup`]: one residue per cyclic factor.
pub type Elem = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbError {
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("element {elem:?} does not belong to {group}")]
    OutOfRange { elem: Elem, group: String },
    #[error("matrix has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("column {column} does not define a homomorphism (order of image does not divide {modulus})")]
    IllDefined { column: usize, modulus: i64 },
    #[error("map is not an endomorphism")]
    NotEndomorphism,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("cannot parse group descriptor {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    moduli: Vec<i64>,
}

impl FinAbGroup {
    /// Moduli of 1 are allowed and give trivial factors (they show up in tensor squares).
    pub fn new(moduli: Vec<i64>) -> Result<FinAbGroup, AbError> {
        if let Some(&d) = moduli.iter().find(|&&d| d < 1) {
            return Err(AbError::BadModulus(d));
        }
        Ok(FinAbGroup { moduli })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup { moduli: Vec::new() }
    }

    pub fn cyclic(n: i64) -> FinAbGroup {
        FinAbGroup::new(vec![n]).expect("positive modulus")
    }

    /// `Z_p^k`.
    pub fn elementary(p: i64, k: usize) -> FinAbGroup {
        FinAbGroup::new(vec![p; k]).expect("positive modulus")
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&d| d as u64).product()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    /// The i-th standard generator (zero if its modulus is 1).
    pub fn basis(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1 % self.moduli[i];
        e
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.moduli).all(|(&a, &d)| 0 <= a && a < d)
    }

    pub fn check(&self, x: &[i64]) -> Result<(), AbError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AbError::OutOfRange { elem: x.to_vec(), group: self.to_string() })
        }
    }

    /// Reduces an arbitrary integer vector into canonical residues.
    pub fn reduce(&self, x: &[i64]) -> Elem {
        x.iter().zip(&self.moduli).map(|(&a, &d)| a.rem_euclid(d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((&a, &b), &d)| (a + b).rem_euclid(d))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Elem {
        x.iter().zip(&self.moduli).map(|(&a, &d)| (-a).rem_euclid(d)).collect()
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((&a, &b), &d)| (a - b).rem_euclid(d))
            .collect()
    }

    pub fn scale(&self, n: i64, x: &[i64]) -> Elem {
        x.iter()
            .zip(&self.moduli)
            .map(|(&a, &d)| ((n as i128 * a as i128).rem_euclid(d as i128)) as i64)
            .collect()
    }

    /// Smallest `n > 0` with `n·x = 0`.
    pub fn elem_order(&self, x: &[i64]) -> u64 {
        x.iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&a, &d)| lcm(acc, (d / gcd(d, a)) as u64))
    }

    /// Mixed-radix index; the first component is least significant.
    pub fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&a, &d) in x.iter().zip(&self.moduli).rev() {
            idx = idx * d as usize + a as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Elem {
        self.moduli
            .iter()
            .map(|&d| {
                let a = (idx % d as usize) as i64;
                idx /= d as usize;
                a
            })
            .collect()
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    pub fn is_elementary_abelian(&self) -> Option<i64> {
        let p = *self.moduli.first()?;
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        (prime && self.moduli.iter().all(|&d| d == p)).then_some(p)
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.moduli.iter().map(|d| format!("Z {d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for FinAbGroup {
    type Err = AbError;

    /// Accepts `Z 2 x Z 4`, `Z2xZ4`, `Z_2 x Z_4`, `Z2^3` and `trivial`.
    fn from_str(s: &str) -> Result<FinAbGroup, AbError> {
        let bad = || AbError::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() || t.eq_ignore_ascii_case("trivial") || t == "1" || t == "0" {
            return Ok(FinAbGroup::trivial());
        }
        let mut moduli = Vec::new();
        for part in t.split(['x', 'X', '*']) {
            let compact: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            let body = compact.strip_prefix('Z').ok_or_else(bad)?;
            let body = body.strip_prefix('_').unwrap_or(body);
            let (d, k) = match body.split_once('^') {
                Some((d, k)) => (d, k.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let d: i64 = d.parse().map_err(|_| bad())?;
            moduli.extend(std::iter::repeat_n(d, k));
        }
        FinAbGroup::new(moduli)
    }
}

/// A homomorphism given by an integer matrix acting on column vectors.
///
/// Row `i` is reduced modulo the `i`-th target modulus. The constructor rejects
/// matrices whose columns do not respect the source orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<AbHom, AbError> {
        let (want_rows, want_cols) = (target.rank(), source.rank());
        let cols = matrix.first().map_or(want_cols, Vec::len);
        if matrix.len() != want_rows || matrix.iter().any(|r| r.len() != want_cols) {
            return Err(AbError::Shape { rows: matrix.len(), cols, want_rows, want_cols });
        }
        let matrix: Vec<Vec<i64>> = matrix
            .iter()
            .zip(target.moduli())
            .map(|(row, &t)| row.iter().map(|&a| a.rem_euclid(t)).collect())
            .collect();
        for (j, &d) in source.moduli().iter().enumerate() {
            for (i, &t) in target.moduli().iter().enumerate() {
                if (d as i128 * matrix[i][j] as i128) % t as i128 != 0 {
                    return Err(AbError::IllDefined { column: j, modulus: d });
                }
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn endo(group: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<AbHom, AbError> {
        AbHom::new(group.clone(), group, matrix)
    }

    pub fn identity(group: &FinAbGroup) -> AbHom {
        AbHom::scalar(group, 1)
    }

    /// `x ↦ n·x`, written `λ_n` on cyclic groups.
    pub fn scalar(group: &FinAbGroup, n: i64) -> AbHom {
        let k = group.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { n } else { 0 }).collect())
            .collect();
        AbHom::endo(group.clone(), matrix).expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Elem {
        self.matrix
            .iter()
            .zip(self.target.moduli())
            .map(|(row, &t)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(t as i128) as i64
            })
            .collect()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Bijectivity, checked by enumerating the images of all elements.
    pub fn is_automorphism(&self) -> bool {
        if !self.is_endomorphism() {
            return false;
        }
        let g = &self.source;
        let mut seen = vec![false; g.order() as usize];
        for x in g.elements() {
            let i = g.index_of(&self.apply(&x));
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// Images of all elements, by index.
    pub fn image_table(&self) -> Vec<usize> {
        self.source.elements().map(|x| self.target.index_of(&self.apply(&x))).collect()
    }

    fn same_shape(&self, other: &AbHom) -> Result<(), AbError> {
        if self.source != other.source || self.target != other.target {
            return Err(AbError::NotEndomorphism);
        }
        Ok(())
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AbError> {
        self.same_shape(other)?;
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        AbHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom, AbError> {
        self.same_shape(other)?;
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
            .collect();
        AbHom::new(self.source.clone(), self.target.clone(), m)
    }

    /// `self ∘ other` (`other` first).
    pub fn compose(&self, other: &AbHom) -> Result<AbHom, AbError> {
        if other.target != self.source {
            return Err(AbError::NotEndomorphism);
        }
        let rows = self.target.rank();
        let cols = other.source.rank();
        let mid = self.source.rank();
        let m = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let s: i128 = (0..mid)
                            .map(|k| self.matrix[i][k] as i128 * other.matrix[k][j] as i128)
                            .sum();
                        s.rem_euclid(self.target.moduli()[i] as i128) as i64
                    })
                    .collect()
            })
            .collect();
        AbHom::new(other.source.clone(), self.target.clone(), m)
    }

    /// Inverse of an automorphism, read off from the element table.
    pub fn inverse(&self) -> Result<AbHom, AbError> {
        if !self.is_automorphism() {
            return Err(AbError::NotAutomorphism);
        }
        let g = &self.source;
        let table = self.image_table();
        let mut inv = vec![0usize; table.len()];
        for (i, &j) in table.iter().enumerate() {
            inv[j] = i;
        }
        let k = g.rank();
        let mut m = vec![vec![0i64; k]; k];
        for j in 0..k {
            let pre = g.element(inv[g.index_of(&g.basis(j))]);
            for i in 0..k {
                m[i][j] = pre[i];
            }
        }
        AbHom::endo(g.clone(), m)
    }

    /// `self^n`; negative `n` requires an automorphism.
    pub fn pow(&self, n: i64) -> Result<AbHom, AbError> {
        if !self.is_endomorphism() {
            return Err(AbError::NotEndomorphism);
        }
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = AbHom::identity(&self.source);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            sq = sq.compose(&sq)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order in `End(G)`, if it is an automorphism.
    pub fn order(&self) -> Option<u64> {
        if !self.is_automorphism() {
            return None;
        }
        let id = AbHom::identity(&self.source);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.compose(self).ok()?;
            k += 1;
        }
        Some(k)
    }
}

/// `G ⊗ G` for `G = ⊕ Z_{d_i}`: the factor at position `(i, j)` is `Z_{gcd(d_i, d_j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    base: FinAbGroup,
    group: FinAbGroup,
}

impl TensorSquare {
    pub fn base(&self) -> &FinAbGroup {
        &self.base
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.base.rank() + j
    }

    /// `x ⊗ y = Σ x_i y_j · e_(i,j)`.
    pub fn pure_tensor(&self, x: &[i64], y: &[i64]) -> Elem {
        let k = self.base.rank();
        let mut out = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                let m = self.group.moduli()[i * k + j] as i128;
                out[i * k + j] = ((x[i] as i128 * y[j] as i128).rem_euclid(m)) as i64;
            }
        }
        out
    }
}

pub fn tensor_square(g: &FinAbGroup) -> TensorSquare {
    let d = g.moduli();
    let moduli = d.iter().flat_map(|&a| d.iter().map(move |&b| gcd(a, b))).collect();
    TensorSquare { base: g.clone(), group: FinAbGroup::new(moduli).expect("gcd of positives") }
}

/// Generators `e_i ⊗ e_j − e_j ⊗ α(e_i)` of `I(G, α)`, in order `(i, j)` row-major.
///
/// `(x, y) ↦ x ⊗ y − y ⊗ α(x)` is biadditive, so these `k²` elements generate the
/// same subgroup as all of its values.
pub fn clauwens_relators(t: &TensorSquare, alpha: &AbHom) -> Result<Vec<Elem>, AbError> {
    let g = t.base();
    if alpha.source() != g || !alpha.is_automorphism() {
        return Err(AbError::NotAutomorphism);
    }
    let tg = t.group();
    let k = g.rank();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        let ei = g.basis(i);
        let ai = alpha.apply(&ei);
        for j in 0..k {
            let ej = g.basis(j);
            out.push(tg.sub(&t.pure_tensor(&ei, &ej), &t.pure_tensor(&ej, &ai)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SubgroupData {
    ambient: FinAbGroup,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
    members: HashSet<usize>,
}

impl SubgroupData {
    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Elements sorted by ambient index.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.members.contains(&self.ambient.index_of(x))
    }

    /// Lexicographically smallest element of the coset `x + H`.
    pub fn coset_min(&self, x: &[i64]) -> Elem {
        self.elements
            .iter()
            .map(|h| self.ambient.add(x, h))
            .min()
            .expect("subgroup contains zero")
    }
}

/// Enumerates `⟨gens⟩` by closure, failing once more than `cap` elements appear.
pub fn subgroup_generated(g: &FinAbGroup, gens: &[Elem], cap: usize) -> Result<SubgroupData, AbError> {
    for x in gens {
        g.check(x)?;
    }
    let mut members: HashSet<usize> = HashSet::new();
    let mut elements = vec![g.zero()];
    members.insert(g.index_of(&g.zero()));
    let mut frontier = 0;
    // abelian: closing the set under "+ generator" gives the subgroup
    while frontier < elements.len() {
        let x = elements[frontier].clone();
        frontier += 1;
        for s in gens {
            let y = g.add(&x, s);
            if members.insert(g.index_of(&y)) {
                if elements.len() >= cap {
                    return Err(AbError::CapExceeded { cap });
                }
                elements.push(y);
            }
        }
    }
    elements.sort_by_key(|x| g.index_of(x));
    Ok(SubgroupData { ambient: g.clone(), generators: gens.to_vec(), elements, members })
}

/// Diagonal of the Smith normal form of an integer matrix, as a divisibility chain
/// of absolute values (zero rows and columns dropped).
///
/// Pivot is always the nonzero entry of least absolute value (first in row-major
/// order on ties).
pub fn smith_diagonal(matrix: &[Vec<i64>]) -> Vec<u64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> =
        matrix.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&a[i][t], &p);
                if q != 0 {
                    for j in t..cols {
                        let v = a[t][j];
                        a[i][j] -= q * v;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&a[t][j], &p);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        if a[t][t] == 0 {
            break;
        }
        diag.push(a[t][t].unsigned_abs() as u64);
    }
    // diag(a, b) ~ diag(gcd, lcm) restores the divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (x, y) = (diag[i], diag[j]);
            diag[i] = gcd(x, y);
            diag[j] = lcm(x, y);
        }
    }
    diag
}

/// Invariant factors of `g / ⟨gens⟩` from the relation matrix `[diag(moduli) | gens]`.
pub fn quotient_invariants_of(g: &FinAbGroup, gens: &[Elem]) -> Vec<u64> {
    let k = g.rank();
    let mut m = vec![vec![0i64; k + gens.len()]; k];
    for i in 0..k {
        m[i][i] = g.moduli()[i];
        for (c, x) in gens.iter().enumerate() {
            m[i][k + c] = x[i];
        }
    }
    smith_diagonal(&m).into_iter().filter(|&d| d != 1).collect()
}

/// Invariant factors of `g / s` (empty for the trivial group).
pub fn quotient_invariants(g: &FinAbGroup, s: &SubgroupData) -> Vec<u64> {
    quotient_invariants_of(g, s.generators())
}
