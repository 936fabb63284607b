//! Permutations of `0..n` and the groups they generate.
//!
//! Groups are handled by plain breadth-first closure; nothing here needs
//! stabilizer chains at the sizes this crate works with.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default upper bound on the number of elements enumerated by [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation of 0..{degree}: {images:?}")]
    NotAPermutation { degree: usize, images: Vec<usize> },
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A permutation stored as its image list: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotAPermutation { degree: n, images });
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `from_cycles(3, &[&[0, 1, 2]])`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::Parse(format!("point {p} repeated in cycles")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// The disjoint cycles, each starting at its smallest point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles (fixed points count as 1), sorted descending.
    pub fn cycle_structure(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Size of the cycle through `point`.
    pub fn orbit_len(&self, point: usize) -> usize {
        let mut len = 1;
        let mut p = self.images[point];
        while p != point {
            p = self.images[p];
            len += 1;
        }
        len
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [", self.degree())?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Perm {
    type Err = PermError;

    /// Parses the one-line form `3: [1,0,2]`.
    fn from_str(s: &str) -> Result<Perm, PermError> {
        let bad = || PermError::Parse(s.to_string());
        let (deg, rest) = s.split_once(':').ok_or_else(bad)?;
        let degree: usize = deg.trim().parse().map_err(|_| bad())?;
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let images: Vec<usize> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?
        };
        if images.len() != degree {
            return Err(bad());
        }
        Perm::from_images(images)
    }
}

fn check_degrees(degree: usize, gens: &[Perm]) -> Result<(), PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    Ok(())
}

/// All elements of `⟨gens⟩`, sorted, or `CapExceeded` once more than `cap` are found.
///
/// `degree` is needed for the empty generator list, which yields `{id}`.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>, PermError> {
    check_degrees(degree, gens)?;
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    if seen.len() > cap {
        return Err(PermError::CapExceeded { cap });
    }
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose_unchecked(&p);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Smallest set containing `point` and closed under every generator.
pub fn orbit(degree: usize, gens: &[Perm], point: usize) -> Result<BTreeSet<usize>, PermError> {
    check_degrees(degree, gens)?;
    if point >= degree {
        return Err(PermError::PointOutOfRange { point, degree });
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![point];
    seen.insert(point);
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    Ok(seen)
}

/// A permutation group given by generators, with a lazily requested element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Option<Vec<Perm>>,
    enumeration_cap: usize,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, PermError> {
        check_degrees(degree, &generators)?;
        Ok(PermGroup { degree, generators, elements: None, enumeration_cap: DEFAULT_CLOSURE_CAP })
    }

    pub fn with_cap(mut self, cap: usize) -> PermGroup {
        self.enumeration_cap = cap;
        self
    }

    /// The full symmetric group on `degree` points, generated by a transposition and an n-cycle.
    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Perm::from_cycles(degree, &[&cycle]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn enumeration_cap(&self) -> usize {
        self.enumeration_cap
    }

    /// Enumerates and caches the element set.
    pub fn enumerate(&mut self) -> Result<&[Perm], PermError> {
        if self.elements.is_none() {
            self.elements = Some(closure(self.degree, &self.generators, self.enumeration_cap)?);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    pub fn order(&mut self) -> Result<usize, PermError> {
        Ok(self.enumerate()?.len())
    }

    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>, PermError> {
        orbit(self.degree, &self.generators, point)
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Transitivity on ordered pairs of distinct points, via the orbit of `(0, 1)`.
    pub fn is_doubly_transitive(&self) -> bool {
        let n = self.degree;
        if n < 2 {
            return false;
        }
        let target = n * (n - 1);
        let mut seen = vec![false; n * n];
        let mut stack = vec![(0usize, 1usize)];
        seen[1] = true;
        let mut count = 1;
        while let Some((a, b)) = stack.pop() {
            for g in &self.generators {
                let (c, d) = (g.apply(a), g.apply(b));
                if !seen[c * n + d] {
                    seen[c * n + d] = true;
                    count += 1;
                    stack.push((c, d));
                }
            }
        }
        count == target
    }
}
