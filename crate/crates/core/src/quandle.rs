//! Finite quandles as Cayley tables, the standard constructions and the
//! structural predicates (latin, connected, doubly transitive, semiregular).

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::abgrp::{AbError, AbHom, FinAbGroup};
use crate::fingroup::FiniteGroup;
use crate::permgrp::{closure, Perm, PermError, PermGroup};

/// Brute-force isomorphism search is only attempted up to this order.
pub const MAX_ISO_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("table is not square or has entries out of range")]
    Shape,
    #[error("not a left quasigroup: {x}*{y} = {x}*{z}")]
    NotLeftQuasigroup { x: usize, y: usize, z: usize },
    #[error("not left distributive at ({x}, {y}, {z})")]
    NotLeftDistributive { x: usize, y: usize, z: usize },
    #[error("not idempotent at {x}")]
    NotIdempotent { x: usize },
    #[error("quandle is not latin")]
    NotLatin,
    #[error("quandle is not connected")]
    NotConnected,
    #[error("element set is not closed under conjugation")]
    NotClosedUnderConjugation,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("subgroup is not fixed by the automorphism")]
    SubgroupNotFixed,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("isomorphism search limited to order {MAX_ISO_ORDER}")]
    TooLarge,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Abelian(#[from] AbError),
}

#[derive(Clone)]
pub struct Quandle {
    n: usize,
    table: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Option<Vec<usize>>,
    sections: Vec<Perm>,
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}
impl Eq for Quandle {}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle(order {})", self.n)
    }
}

impl Quandle {
    /// Validates the axioms in the order left quasigroup, left distributivity,
    /// idempotence; the error names the smallest witness.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Quandle, QuandleError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(QuandleError::Shape);
        }
        for (x, row) in table.iter().enumerate() {
            for y in 0..n {
                for z in y + 1..n {
                    if row[y] == row[z] {
                        return Err(QuandleError::NotLeftQuasigroup { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                        return Err(QuandleError::NotLeftDistributive { x, y, z });
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| table[x][x] != x) {
            return Err(QuandleError::NotIdempotent { x });
        }
        Ok(Quandle::build(n, table.concat()))
    }

    fn build(n: usize, table: Vec<usize>) -> Quandle {
        let mut ldiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                ldiv[x * n + table[x * n + y]] = y;
            }
        }
        let mut rdiv = vec![usize::MAX; n * n];
        let mut latin = true;
        'outer: for y in 0..n {
            for z in 0..n {
                let x = table[z * n + y];
                if rdiv[x * n + y] != usize::MAX {
                    latin = false;
                    break 'outer;
                }
                rdiv[x * n + y] = z;
            }
        }
        let sections = (0..n)
            .map(|x| Perm::from_images(table[x * n..(x + 1) * n].to_vec()).expect("validated row"))
            .collect();
        Quandle { n, table, ldiv, rdiv: latin.then_some(rdiv), sections }
    }

    pub fn trivial() -> Quandle {
        Quandle::projection(1)
    }

    pub fn projection(n: usize) -> Quandle {
        let table = (0..n).flat_map(|_| 0..n).collect();
        Quandle::build(n, table)
    }

    /// Dihedral quandle `R_n`: `x▷y = 2x − y mod n`.
    pub fn dihedral(n: usize) -> Quandle {
        let table = (0..n).flat_map(|x| (0..n).map(move |y| (2 * x + n - y) % n)).collect();
        Quandle::build(n, table)
    }

    /// `x▷y = x y x⁻¹`, elements indexed in the order given.
    pub fn conjugation(elements: &[Perm]) -> Result<Quandle, QuandleError> {
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for x in elements {
            let xi = x.inverse();
            for y in elements {
                let c = x.compose(&y.compose(&xi)?)?;
                table.push(*index.get(&c).ok_or(QuandleError::NotClosedUnderConjugation)?);
            }
        }
        let rows: Vec<Vec<usize>> = table.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        Quandle::from_table(&rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x\y`, the unique `z` with `x▷z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    pub fn left_divide(&self, x: usize, y: usize) -> usize {
        self.ldiv(x, y)
    }

    /// `x/y`, the unique `z` with `z▷y = x`.
    pub fn right_divide(&self, x: usize, y: usize) -> Result<usize, QuandleError> {
        self.rdiv.as_ref().map(|r| r[x * self.n + y]).ok_or(QuandleError::NotLatin)
    }

    /// Unchecked right division; panics unless the quandle is latin.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv.as_ref().expect("latin quandle")[x * self.n + y]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn left_section(&self, x: usize) -> &Perm {
        &self.sections[x]
    }

    pub fn left_sections(&self) -> &[Perm] {
        &self.sections
    }

    pub fn is_latin(&self) -> bool {
        self.rdiv.is_some()
    }

    pub fn lmlt(&self) -> PermGroup {
        PermGroup::new(self.n, self.sections.clone()).expect("sections share the degree")
    }

    pub fn lmlt_order(&self, cap: usize) -> Result<usize, QuandleError> {
        Ok(closure(self.n, &self.sections, cap)?.len())
    }

    pub fn is_connected(&self) -> bool {
        self.lmlt().is_transitive()
    }

    pub fn is_doubly_transitive(&self) -> bool {
        self.lmlt().is_doubly_transitive()
    }

    /// The common length of all nontrivial cycles of all left sections, if there is one.
    /// Returns `Some(1)` when every section is the identity.
    pub fn semiregular(&self) -> Option<usize> {
        let mut s = None;
        for p in &self.sections {
            for len in p.cycle_structure() {
                if len == 1 {
                    continue;
                }
                match s {
                    None => s = Some(len),
                    Some(t) if t != len => return None,
                    _ => {}
                }
            }
        }
        Some(s.unwrap_or(1))
    }

    pub fn is_semiregular(&self) -> bool {
        self.semiregular().is_some()
    }

    /// Smallest subset containing `gens` and closed under `▷` and `\`.
    pub fn generated_subquandle(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut members = Vec::new();
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [self.op(a, b), self.op(b, a), self.ldiv(a, b), self.ldiv(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// The subquandle on a closed subset, re-indexed in increasing order.
    pub fn subquandle(&self, subset: &[usize]) -> Result<Quandle, QuandleError> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows = subset
            .iter()
            .map(|&x| {
                subset
                    .iter()
                    .map(|&y| pos.get(&self.op(x, y)).copied().ok_or(QuandleError::Shape))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        Quandle::from_table(&rows)
    }

    /// Is `map` a homomorphism into `other`?
    pub fn is_homomorphism(&self, other: &Quandle, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&m| m < other.n)
            && (0..self.n).all(|x| (0..self.n).all(|y| map[self.op(x, y)] == other.op(map[x], map[y])))
    }

    /// Searches for an isomorphism `self → other`; the first one in lexicographic order.
    pub fn isomorphism(&self, other: &Quandle) -> Result<Option<Vec<usize>>, QuandleError> {
        if self.n > MAX_ISO_ORDER || other.n > MAX_ISO_ORDER {
            return Err(QuandleError::TooLarge);
        }
        if self.n != other.n {
            return Ok(None);
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        Ok(self.iso_search(other, 0, &mut map, &mut used).then_some(map))
    }

    fn iso_search(&self, other: &Quandle, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == self.n {
            return true;
        }
        for img in 0..self.n {
            if used[img] {
                continue;
            }
            map[x] = img;
            let ok = (0..=x).all(|a| {
                [(a, x), (x, a)].iter().all(|&(p, q)| {
                    let r = self.op(p, q);
                    r > x || map[r] == other.op(map[p], map[q])
                })
            });
            if ok {
                used[img] = true;
                if self.iso_search(other, x + 1, map, used) {
                    return true;
                }
                used[img] = false;
            }
        }
        map[x] = usize::MAX;
        false
    }

    /// Table text format: the order on the first line, then the rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.table.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Quandle, QuandleError> {
        Quandle::from_table(&parse_square_table(text)?)
    }

    pub fn load(path: &Path) -> Result<Quandle, QuandleError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| QuandleError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Quandle::parse(&text)
    }

    /// Loads every `*.txt` table in a directory, sorted by file name.
    pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, Quandle)>, QuandleError> {
        let io = |e: std::io::Error| QuandleError::Io { path: dir.display().to_string(), msg: e.to_string() };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        paths.sort();
        paths.into_iter().map(|p| Quandle::load(&p).map(|q| (p, q))).collect()
    }
}

/// Reads `n` followed by `n` rows of `n` whitespace-separated integers.
pub fn parse_square_table(text: &str) -> Result<Vec<Vec<usize>>, QuandleError> {
    let mut nums = text.split_whitespace().map(|t| {
        t.parse::<usize>().map_err(|_| QuandleError::Parse(format!("bad entry {t:?}")))
    });
    let n = nums.next().ok_or_else(|| QuandleError::Parse("empty input".into()))??;
    if n == 0 {
        return Err(QuandleError::Parse("order must be positive".into()));
    }
    let cells = nums.collect::<Result<Vec<usize>, _>>()?;
    if cells.len() != n * n {
        return Err(QuandleError::Parse(format!("expected {} entries, found {}", n * n, cells.len())));
    }
    Ok(cells.chunks(n).map(<[usize]>::to_vec).collect())
}

/// `Q(A, α)` with `x▷y = (1−α)(x) + α(y)`; elements are indexed as in [`FinAbGroup::index_of`].
#[derive(Clone, Debug)]
pub struct AffineQuandle {
    base: FinAbGroup,
    alpha: AbHom,
    quandle: Quandle,
}

impl AffineQuandle {
    pub fn new(base: FinAbGroup, alpha: AbHom) -> Result<AffineQuandle, QuandleError> {
        if alpha.source() != &base || alpha.target() != &base || !alpha.is_automorphism() {
            return Err(QuandleError::NotAutomorphism);
        }
        let elems: Vec<_> = base.elements().collect();
        let n = elems.len();
        let mut table = vec![0; n * n];
        for (x, ex) in elems.iter().enumerate() {
            for (y, ey) in elems.iter().enumerate() {
                let v = base.add(ex, &alpha.apply(&base.sub(ey, ex)));
                table[x * n + y] = base.index_of(&v);
            }
        }
        Ok(AffineQuandle { base, alpha, quandle: Quandle::build(n, table) })
    }

    /// `Q(Z_m, λ_n)`.
    pub fn cyclic(m: i64, n: i64) -> Result<AffineQuandle, QuandleError> {
        let g = FinAbGroup::cyclic(m);
        let a = AbHom::scalar(&g, n);
        AffineQuandle::new(g, a)
    }

    pub fn base(&self) -> &FinAbGroup {
        &self.base
    }

    pub fn alpha(&self) -> &AbHom {
        &self.alpha
    }

    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    pub fn into_quandle(self) -> Quandle {
        self.quandle
    }

    pub fn is_connected(&self) -> bool {
        affine_is_connected(&self.base, &self.alpha).unwrap_or(false)
    }
}

/// Connectedness of `Q(A, α)` read off from `1 − α`.
pub fn affine_is_connected(base: &FinAbGroup, alpha: &AbHom) -> Result<bool, QuandleError> {
    if !alpha.is_automorphism() || alpha.source() != base {
        return Err(QuandleError::NotAutomorphism);
    }
    Ok(AbHom::identity(base).sub(alpha)?.is_automorphism())
}

/// `G/H` with `xH▷yH = x α(x⁻¹y) H`. Cosets are ordered by their smallest element,
/// so `H` itself is coset 0.
#[derive(Clone, Debug)]
pub struct CosetQuandle {
    group: FiniteGroup,
    subgroup: Vec<usize>,
    alpha: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    quandle: Quandle,
}

impl CosetQuandle {
    /// `alpha` is given by the images of the element indices of `group`.
    pub fn new(group: FiniteGroup, subgroup: &[usize], alpha: Vec<usize>) -> Result<CosetQuandle, QuandleError> {
        let n = group.order();
        if !group.is_automorphism(&alpha) {
            return Err(QuandleError::NotAutomorphism);
        }
        let mut h: Vec<usize> = subgroup.to_vec();
        h.sort_unstable();
        h.dedup();
        let mut in_h = vec![false; n];
        for &x in &h {
            if x >= n {
                return Err(QuandleError::NotSubgroup);
            }
            in_h[x] = true;
        }
        if !in_h[0] || h.iter().any(|&a| h.iter().any(|&b| !in_h[group.mul(a, group.inv(b))])) {
            return Err(QuandleError::NotSubgroup);
        }
        if h.iter().any(|&x| alpha[x] != x) {
            return Err(QuandleError::SubgroupNotFixed);
        }
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&k| group.mul(x, k)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let m = cosets.len();
        let mut table = vec![usize::MAX; m * m];
        for i in 0..m {
            for j in 0..m {
                for &x in &cosets[i] {
                    for &y in &cosets[j] {
                        let v = coset_of[group.mul(x, alpha[group.mul(group.inv(x), y)])];
                        let cell = &mut table[i * m + j];
                        if *cell != usize::MAX && *cell != v {
                            return Err(QuandleError::SubgroupNotFixed);
                        }
                        *cell = v;
                    }
                }
            }
        }
        let rows: Vec<Vec<usize>> = table.chunks(m).map(<[usize]>::to_vec).collect();
        let quandle = Quandle::from_table(&rows)?;
        Ok(CosetQuandle { group, subgroup: h, alpha, cosets, coset_of, quandle })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Quandle {
        Quandle::from_table(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn dihedral_three() {
        // x▷y = 2y − x mod 3, checked cell by cell
        let q = r3();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.op(x, y), (2 * y + 3 - x) % 3);
            }
        }
        assert_eq!(q, Quandle::dihedral(3));
        assert_eq!(q.right_divide(0, 1).unwrap(), 2);
        assert!(q.is_latin() && q.is_connected() && q.is_doubly_transitive());
        assert_eq!(q.lmlt_order(100).unwrap(), 6);
        assert_eq!(q.semiregular(), Some(2));
    }

    #[test]
    fn axiom_witnesses() {
        assert_eq!(Quandle::from_table(&[vec![0]]).unwrap().size(), 1);
        assert_eq!(
            Quandle::from_table(&[vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]]).unwrap_err(),
            QuandleError::NotLeftQuasigroup { x: 0, y: 0, z: 1 }
        );
        assert_eq!(
            Quandle::from_table(&[vec![1, 0], vec![1, 0]]).unwrap_err(),
            QuandleError::NotIdempotent { x: 0 }
        );
        // rows are permutations and idempotent, but L_0 is not an automorphism
        let bad = [vec![0, 2, 1], vec![2, 1, 0], vec![0, 1, 2]];
        assert!(matches!(Quandle::from_table(&bad), Err(QuandleError::NotLeftDistributive { .. })));
    }

    #[test]
    fn projection_and_divisions() {
        let p = Quandle::projection(2);
        assert!(!p.is_connected());
        assert_eq!(p.right_divide(0, 1), Err(QuandleError::NotLatin));
        assert_eq!(p.lmlt_order(10).unwrap(), 1);
        let q = r3();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.left_divide(x, q.op(x, y)), y);
                assert_eq!(q.op(q.right_divide(x, y).unwrap(), y), x);
            }
        }
    }

    #[test]
    fn conjugation_of_transpositions() {
        let t = |a, b| Perm::from_cycles(3, &[&[a, b]]).unwrap();
        let q = Quandle::conjugation(&[t(0, 1), t(0, 2), t(1, 2)]).unwrap();
        assert!(q.isomorphism(&r3()).unwrap().is_some());
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            Quandle::conjugation(&[t(0, 1), c]).unwrap_err(),
            QuandleError::NotClosedUnderConjugation
        );
        assert_eq!(Quandle::conjugation(&[Perm::identity(3)]).unwrap().size(), 1);
    }

    #[test]
    fn affine_constructions() {
        let q = AffineQuandle::cyclic(3, 2).unwrap();
        assert_eq!(q.quandle().op(0, 1), 2);
        assert_eq!(q.quandle().op(1, 0), 2);
        assert_eq!(q.quandle().left_section(0), &Perm::from_images(q.alpha().image_table()).unwrap());
        let g = FinAbGroup::elementary(2, 2);
        let alpha = AbHom::endo(g.clone(), vec![vec![1, 1], vec![1, 0]]).unwrap();
        let q4 = AffineQuandle::new(g.clone(), alpha).unwrap();
        assert!(q4.quandle().is_doubly_transitive());
        assert_eq!(q4.quandle().left_section(0).cycle_structure(), vec![3, 1]);
        assert_eq!(q4.quandle().semiregular(), Some(3));
        let id = AffineQuandle::new(g.clone(), AbHom::identity(&g)).unwrap();
        assert_eq!(id.quandle(), &Quandle::projection(4));
        assert!(AffineQuandle::cyclic(4, 2).is_err());
        assert!(AffineQuandle::cyclic(5, 2).unwrap().is_connected());
        assert!(!AffineQuandle::cyclic(4, 3).unwrap().is_connected());
        assert!(AffineQuandle::cyclic(9, 2).unwrap().is_connected());
    }

    #[test]
    fn coset_quandles() {
        let g = FiniteGroup::from_abelian(&FinAbGroup::elementary(3, 2));
        let ab = FinAbGroup::elementary(3, 2);
        let swap: Vec<usize> = ab.elements().map(|x| ab.index_of(&[x[1], x[0]])).collect();
        let diag: Vec<usize> = (0..3).map(|i| ab.index_of(&[i, i])).collect();
        let c = CosetQuandle::new(g.clone(), &diag, swap.clone()).unwrap();
        assert_eq!(c.quandle().size(), 3);
        let principal = CosetQuandle::new(g.clone(), &[0], swap.clone()).unwrap();
        assert_eq!(principal.quandle().size(), 9);
        let whole: Vec<usize> = (0..9).collect();
        assert_eq!(CosetQuandle::new(g.clone(), &whole, (0..9).collect()).unwrap().quandle().size(), 1);
        let axis: Vec<usize> = (0..3).map(|i| ab.index_of(&[i, 0])).collect();
        assert_eq!(CosetQuandle::new(g, &axis, swap).unwrap_err(), QuandleError::SubgroupNotFixed);
    }

    #[test]
    fn text_round_trip() {
        let q = AffineQuandle::cyclic(5, 2).unwrap().into_quandle();
        assert_eq!(Quandle::parse(&q.to_text()).unwrap(), q);
        assert!(matches!(Quandle::parse("2\n0 1\n"), Err(QuandleError::Parse(_))));
        assert!(matches!(Quandle::parse(""), Err(QuandleError::Parse(_))));
    }
}
