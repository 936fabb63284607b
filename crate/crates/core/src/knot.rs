//! Knot diagrams from signed Gauss codes, quandle colorings and the
//! conjugacy cocycle invariant.
//!
//! Arcs are cut at under-passages. With under-passages `u_0, …, u_{k−1}` in
//! traversal order, arc `a` runs from `u_{a−1}` to `u_a`; so at `u_a` the
//! incoming under-arc is `a` and the outgoing one is `a+1 mod k`.
//!
//! Coloring rule: at a positive crossing `out = over ▷ in`, at a negative
//! one `out = over \ in`. The weight of a crossing is `β(over, z)^ε` with
//! `z` the under-color that the over-arc acts on (`in` when positive, `out`
//! when negative), and `φ = B(τ_k)⋯B(τ_1)` multiplies the weights in
//! traversal order of the under-passages, the first one rightmost.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cocycle::{ConstantCocycle, Violation};
use crate::fingroup::FiniteGroup;
use crate::quandle::Quandle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("malformed Gauss code: {0}")]
    MalformedCode(String),
    #[error("crossing {0} has inconsistent signs")]
    InconsistentSigns(u32),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(Violation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub label: u32,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Token {
    over: bool,
    label: u32,
    sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    tokens: Vec<Token>,
    /// Crossings in traversal order of their under-passages.
    crossings: Vec<Crossing>,
}

/// Which way a crossing relation is read. `Mirrored` swaps `▷` and `\`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Mirrored,
}

pub fn parse_gauss(code: &str) -> Result<KnotDiagram, KnotError> {
    let trimmed = code.trim();
    if trimmed.eq_ignore_ascii_case("unknot") {
        return Ok(KnotDiagram { tokens: Vec::new(), crossings: Vec::new() });
    }
    let raw: Vec<&str> = trimmed.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    if raw.is_empty() {
        return Err(KnotError::MalformedCode("empty code".into()));
    }
    let tokens = raw.iter().map(|t| parse_token(t)).collect::<Result<Vec<_>, _>>()?;
    KnotDiagram::from_tokens(tokens)
}

fn parse_token(t: &str) -> Result<Token, KnotError> {
    let bad = || KnotError::MalformedCode(format!("bad token {t:?}"));
    let mut chars = t.chars();
    let over = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('O') => true,
        Some('U') => false,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let sign = match rest.chars().last() {
        Some('+') => 1,
        Some('-') => -1,
        _ => return Err(bad()),
    };
    let label: u32 = rest[..rest.len() - 1].parse().map_err(|_| bad())?;
    Ok(Token { over, label, sign })
}

impl KnotDiagram {
    fn from_tokens(tokens: Vec<Token>) -> Result<KnotDiagram, KnotError> {
        let mut seen: HashMap<u32, (usize, usize, i8)> = HashMap::new();
        for t in &tokens {
            let e = seen.entry(t.label).or_insert((0, 0, t.sign));
            if t.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
            if e.2 != t.sign {
                return Err(KnotError::InconsistentSigns(t.label));
            }
        }
        if let Some((l, _)) = seen.iter().find(|(_, &(o, u, _))| o != 1 || u != 1) {
            return Err(KnotError::MalformedCode(format!("crossing {l} must occur once over and once under")));
        }
        let k = seen.len();
        let mut over_arc: HashMap<u32, usize> = HashMap::new();
        let mut unders = 0;
        for t in &tokens {
            if t.over {
                over_arc.insert(t.label, unders % k);
            } else {
                unders += 1;
            }
        }
        let crossings = tokens
            .iter()
            .filter(|t| !t.over)
            .enumerate()
            .map(|(a, t)| Crossing {
                label: t.label,
                over: over_arc[&t.label],
                under_in: a,
                under_out: (a + 1) % k,
                sign: t.sign,
            })
            .collect();
        Ok(KnotDiagram { tokens, crossings })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.crossings.len().max(1)
    }

    /// Same knot with the traversal started `shift` tokens later.
    pub fn rotate(&self, shift: usize) -> KnotDiagram {
        if self.tokens.is_empty() {
            return self.clone();
        }
        let mut tokens = self.tokens.clone();
        let len = tokens.len();
        tokens.rotate_left(shift % len);
        KnotDiagram::from_tokens(tokens).expect("rotation keeps a valid code")
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> KnotDiagram {
        let tokens = self.tokens.iter().map(|t| Token { over: !t.over, label: t.label, sign: -t.sign }).collect();
        KnotDiagram::from_tokens(tokens).expect("mirror keeps a valid code")
    }

    pub fn to_code(&self) -> String {
        if self.tokens.is_empty() {
            return "unknot".into();
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| format!("{}{}{}", if t.over { 'O' } else { 'U' }, t.label, if t.sign > 0 { '+' } else { '-' }))
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}

impl FromStr for KnotDiagram {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

fn relation(q: &Quandle, c: &Crossing, conv: Convention, over: usize, inc: usize) -> usize {
    let positive = (c.sign > 0) == (conv == Convention::Standard);
    if positive {
        q.op(over, inc)
    } else {
        q.ldiv(over, inc)
    }
}

/// Every coloring, as arc colors, in lexicographic order.
pub fn colorings(k: &KnotDiagram, q: &Quandle) -> Vec<Vec<usize>> {
    colorings_with(k, q, Convention::Standard)
}

pub fn colorings_with(k: &KnotDiagram, q: &Quandle, conv: Convention) -> Vec<Vec<usize>> {
    let arcs = k.arc_count();
    let mut out = Vec::new();
    let mut colors = vec![usize::MAX; arcs];
    color_search(k, q, conv, 0, &mut colors, &mut out);
    out
}

fn color_search(k: &KnotDiagram, q: &Quandle, conv: Convention, a: usize, colors: &mut [usize], out: &mut Vec<Vec<usize>>) {
    if a == colors.len() {
        out.push(colors.to_vec());
        return;
    }
    for c in 0..q.size() {
        colors[a] = c;
        let ok = k.crossings().iter().all(|x| {
            let (o, i, w) = (colors[x.over], colors[x.under_in], colors[x.under_out]);
            o == usize::MAX || i == usize::MAX || w == usize::MAX || relation(q, x, conv, o, i) == w
        });
        if ok {
            color_search(k, q, conv, a + 1, colors, out);
        }
    }
    colors[a] = usize::MAX;
}

fn is_monochromatic(c: &[usize]) -> bool {
    c.windows(2).all(|w| w[0] == w[1])
}

/// Number of colorings that use more than one color.
pub fn col_count(k: &KnotDiagram, q: &Quandle) -> usize {
    colorings(k, q).iter().filter(|c| !is_monochromatic(c)).count()
}

/// `φ(K, 𝒞)` for one coloring.
pub fn coloring_weight(k: &KnotDiagram, q: &Quandle, g: &FiniteGroup, beta: &ConstantCocycle, colors: &[usize]) -> usize {
    let mut phi = g.identity();
    for c in k.crossings() {
        let over = colors[c.over];
        let b = if c.sign > 0 {
            beta.get(over, colors[c.under_in])
        } else {
            g.inv(beta.get(over, colors[c.under_out]))
        };
        debug_assert!(c.sign < 0 || q.op(over, colors[c.under_in]) == colors[c.under_out]);
        phi = g.mul(b, phi);
    }
    phi
}

/// The multiset `{[φ(K,𝒞)]}` over all colorings, monochromatic ones included,
/// as `(class representative, multiplicity)` sorted by representative.
pub fn cocycle_invariant(
    k: &KnotDiagram,
    q: &Quandle,
    g: &FiniteGroup,
    beta: &ConstantCocycle,
) -> Result<Vec<(usize, usize)>, KnotError> {
    beta.check(q, g).map_err(KnotError::InvalidCocycle)?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for c in colorings(k, q) {
        *counts.entry(g.class_rep(coloring_weight(k, q, g, beta, &c))).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

/// The invariant with class representatives replaced by their labels.
pub fn invariant_labels(g: &FiniteGroup, inv: &[(usize, usize)]) -> Vec<(String, usize)> {
    inv.iter().map(|&(c, n)| (g.label(c).to_string(), n)).collect()
}

pub fn is_trivial_invariant(inv: &[(usize, usize)]) -> bool {
    inv.iter().all(|&(c, _)| c == 0)
}
