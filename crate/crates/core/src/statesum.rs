//! Bracket values by Kauffman-state expansion and the bracket multiset.
//!
//! Each crossing reads its coefficients at the pair of colors on its left
//! side, `(under, over)`:
//!
//! | kind     | pair                    | oriented   | disoriented |
//! |----------|-------------------------|------------|-------------|
//! | positive | `(in_left, out_left)`   | `A`        | `B`         |
//! | negative | `(out_left, in_left)`   | `A^-1`     | `B^-1`      |
//! | singular | `(in_left, out_left)`   | `P`        | `S`         |
//!
//! The oriented smoothing joins `in_left` to `out_left` and `in_right` to
//! `out_right`; the disoriented one joins the two inputs and the two outputs.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::bracket::{Coef, PsyBracket};
use crate::coloring::{check_mode, enumerate_colorings, Coloring};
use crate::diagram::{CrossingKind, Diagram, Mode};
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Oriented,
    Disoriented,
}

/// One Kauffman state: a smoothing per crossing, in word order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KauffmanState {
    pub choices: Vec<Smoothing>,
}

impl KauffmanState {
    /// State number `bits`; crossing 0 is the most significant bit and a
    /// set bit means disoriented.
    pub fn from_bits(bits: u64, crossings: usize) -> Self {
        let choices = (0..crossings)
            .map(|c| if bits >> (crossings - 1 - c) & 1 == 1 { Smoothing::Disoriented } else { Smoothing::Oriented })
            .collect();
        KauffmanState { choices }
    }

    pub fn all(crossings: usize) -> impl Iterator<Item = KauffmanState> {
        (0..1u64 << crossings).map(move |b| KauffmanState::from_bits(b, crossings))
    }
}

/// Number of circles after smoothing every crossing of `d` as `state` says.
pub fn circle_count(d: &Diagram, state: &KauffmanState) -> usize {
    let mut uf = UnionFind::<usize>::new(d.semiarc_count());
    for (c, s) in d.crossings().iter().zip(&state.choices) {
        match s {
            Smoothing::Oriented => {
                uf.union(c.in_left, c.out_left);
                uf.union(c.in_right, c.out_right);
            }
            Smoothing::Disoriented => {
                uf.union(c.in_left, c.in_right);
                uf.union(c.out_left, c.out_right);
            }
        }
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}

/// Coefficient index pair of every crossing under a coloring.
pub fn coefficient_pairs(d: &Diagram, coloring: &Coloring) -> Vec<(usize, usize)> {
    d.crossings()
        .iter()
        .map(|c| match c.kind {
            CrossingKind::Positive | CrossingKind::Singular => (coloring.color(c.in_left), coloring.color(c.out_left)),
            CrossingKind::Negative => (coloring.color(c.out_left), coloring.color(c.in_left)),
        })
        .collect()
}

fn smoothing_coefficient<R: Ring>(
    br: &PsyBracket<R>,
    kind: CrossingKind,
    s: Smoothing,
    (x, y): (usize, usize),
) -> R::Elem {
    match (kind, s) {
        (CrossingKind::Positive, Smoothing::Oriented) => br.a(x, y),
        (CrossingKind::Positive, Smoothing::Disoriented) => br.b(x, y),
        (CrossingKind::Negative, Smoothing::Oriented) => br.a_inv(x, y),
        (CrossingKind::Negative, Smoothing::Disoriented) => br.b_inv(x, y),
        (CrossingKind::Singular, Smoothing::Oriented) => br.p(x, y),
        (CrossingKind::Singular, Smoothing::Disoriented) => br.s(x, y),
    }
}

/// Label of the coefficient used by a crossing under a smoothing, e.g. `A^-1`.
pub fn coefficient_label(kind: CrossingKind, s: Smoothing) -> String {
    let c = match (kind, s) {
        (CrossingKind::Singular, Smoothing::Oriented) => Coef::P,
        (CrossingKind::Singular, Smoothing::Disoriented) => Coef::S,
        (_, Smoothing::Oriented) => Coef::A,
        (_, Smoothing::Disoriented) => Coef::B,
    };
    match kind {
        CrossingKind::Negative => format!("{}^-1", c.label()),
        _ => c.label().to_string(),
    }
}

/// One line of a state expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTerm<E> {
    pub state: KauffmanState,
    /// Product of the smoothing coefficients.
    pub product: E,
    pub circles: usize,
    /// `product * delta^circles`.
    pub contribution: E,
}

struct Shadow<'a> {
    diagram: &'a Diagram,
    kinds: Vec<CrossingKind>,
    pairs: Vec<(usize, usize)>,
}

impl Shadow<'_> {
    fn terms<R: Ring>(&self, br: &PsyBracket<R>) -> Vec<StateTerm<R::Elem>> {
        let r = br.ring();
        KauffmanState::all(self.kinds.len())
            .map(|state| {
                let product = state
                    .choices
                    .iter()
                    .zip(self.kinds.iter().zip(&self.pairs))
                    .fold(r.one(), |acc, (&s, (&k, &xy))| r.mul(acc, smoothing_coefficient(br, k, s, xy)));
                let circles = circle_count(self.diagram, &state);
                let delta_k = r.pow(br.delta(), circles as i64).expect("non-negative power");
                StateTerm { state, product, circles, contribution: r.mul(product, delta_k) }
            })
            .collect()
    }

    fn writhe_factor<R: Ring>(&self, br: &PsyBracket<R>) -> R::Elem {
        let p = self.kinds.iter().filter(|&&k| k == CrossingKind::Positive).count() as i64;
        let n = self.kinds.iter().filter(|&&k| k == CrossingKind::Negative).count() as i64;
        br.ring().pow(br.w(), n - p).expect("w is a unit")
    }

    fn value<R: Ring>(&self, br: &PsyBracket<R>) -> R::Elem {
        let r = br.ring();
        let sum = self.terms(br).iter().fold(r.zero(), |acc, t| r.add(acc, t.contribution));
        r.mul(sum, self.writhe_factor(br))
    }
}

fn shadow<'a>(d: &'a Diagram, coloring: &Coloring) -> Shadow<'a> {
    Shadow { diagram: d, kinds: d.crossings().iter().map(|c| c.kind).collect(), pairs: coefficient_pairs(d, coloring) }
}

/// Weight of a single state: coefficient product times `delta^k`.
pub fn state_coefficient<R: Ring>(
    d: &Diagram,
    coloring: &Coloring,
    br: &PsyBracket<R>,
    state: &KauffmanState,
) -> R::Elem {
    let r = br.ring();
    let pairs = coefficient_pairs(d, coloring);
    let product = d
        .crossings()
        .iter()
        .zip(&state.choices)
        .zip(pairs)
        .fold(r.one(), |acc, ((c, &s), xy)| r.mul(acc, smoothing_coefficient(br, c.kind, s, xy)));
    let k = circle_count(d, state);
    r.mul(product, r.pow(br.delta(), k as i64).expect("non-negative power"))
}

/// Every state of a colored diagram with its weight, in state order.
pub fn state_breakdown<R: Ring>(d: &Diagram, coloring: &Coloring, br: &PsyBracket<R>) -> Vec<StateTerm<R::Elem>> {
    shadow(d, coloring).terms(br)
}

/// The bracket value: sum over all states, times `w^(n-p)`.
pub fn bracket_value<R: Ring>(d: &Diagram, coloring: &Coloring, br: &PsyBracket<R>) -> R::Elem {
    shadow(d, coloring).value(br)
}

/// The state sum on the wiring of `shadow` with caller-chosen crossing kinds
/// and 0-based coefficient index pairs, one per crossing.
pub fn bracket_value_precolored<R: Ring>(
    shadow: &Diagram,
    kinds: &[CrossingKind],
    pairs: &[(usize, usize)],
    br: &PsyBracket<R>,
) -> Result<R::Elem> {
    Ok(precolored(shadow, kinds, pairs, br)?.value(br))
}

/// State expansion on a pre-colored wiring, see [`bracket_value_precolored`].
pub fn state_breakdown_precolored<R: Ring>(
    shadow: &Diagram,
    kinds: &[CrossingKind],
    pairs: &[(usize, usize)],
    br: &PsyBracket<R>,
) -> Result<Vec<StateTerm<R::Elem>>> {
    Ok(precolored(shadow, kinds, pairs, br)?.terms(br))
}

fn precolored<'a, R: Ring>(
    d: &'a Diagram,
    kinds: &[CrossingKind],
    pairs: &[(usize, usize)],
    br: &PsyBracket<R>,
) -> Result<Shadow<'a>> {
    let c = d.crossings().len();
    if kinds.len() != c || pairs.len() != c {
        return Err(Error::Domain(format!(
            "wiring has {c} crossings but {} kinds and {} index pairs were given",
            kinds.len(),
            pairs.len()
        )));
    }
    let n = br.size();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(Error::Domain(format!("index pair ({}, {}) outside 1..{n}", x + 1, y + 1)));
    }
    Ok(Shadow { diagram: d, kinds: kinds.to_vec(), pairs: pairs.to_vec() })
}

/// A multiset of ring values, rendered as a polynomial in `u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantMultiset {
    counts: BTreeMap<u32, usize>,
}

impl InvariantMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: u32) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn counts(&self) -> &BTreeMap<u32, usize> {
        &self.counts
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Total multiplicity.
    pub fn cardinality(&self) -> usize {
        self.counts.values().sum()
    }
}

impl FromIterator<u32> for InvariantMultiset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut m = InvariantMultiset::new();
        for v in iter {
            m.insert(v);
        }
        m
    }
}

impl fmt::Display for InvariantMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> =
            self.counts.iter().map(|(v, &m)| if m == 1 { format!("u^{v}") } else { format!("{m}u^{v}") }).collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_bracket_mode(d: &Diagram, br: &PsyBracket<impl Ring>) -> Result<()> {
    check_mode(d, br.base())?;
    if d.mode() == Mode::Pseudo {
        if let Some(x) = br.pi_witness() {
            return Err(Error::Precondition(format!(
                "pseudo diagrams need a pI-adequate bracket (delta P_{0}{0} + S_{0}{0} != 1)",
                x + 1
            )));
        }
    }
    Ok(())
}

/// Bracket value of every coloring, in coloring order.
pub fn per_coloring_values(d: &Diagram, br: &PsyBracket<FiniteRing>) -> Result<Vec<(Coloring, u32)>> {
    check_bracket_mode(d, br)?;
    let colorings = enumerate_colorings(d, br.base())?.colorings;
    Ok(colorings
        .into_par_iter()
        .map(|c| {
            let v = bracket_value(d, &c, br);
            (c, v)
        })
        .collect())
}

/// The psyquandle bracket multiset over all colorings.
pub fn bracket_multiset(d: &Diagram, br: &PsyBracket<FiniteRing>) -> Result<InvariantMultiset> {
    Ok(per_coloring_values(d, br)?.into_iter().map(|(_, v)| v).collect())
}
