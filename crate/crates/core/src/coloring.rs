//! Psyquandle colorings of closed braid diagrams.
//!
//! Colors follow the sideways rule: at every crossing, the pair of semiarcs
//! on the left side, `(x, y)` with `x` on the under strand and `y` on the
//! over strand, determines the right side as under `x ut y` and over
//! `y ot x`. With both strands pointing up this reads:
//!
//! * positive: `(x, y) = (in_left, out_left)`, `out_right = x ut y`, `in_right = y ot x`;
//! * negative: `(x, y) = (out_left, in_left)`, `in_right = x ut y`, `out_right = y ot x`;
//! * singular: as positive with `ub`, `ob` in place of `ut`, `ot`.
//!
//! Right-invertibility makes the outputs a function of the inputs, so a
//! coloring is fixed by its bottom row.

use crate::diagram::{Crossing, CrossingKind, Diagram, Mode};
use crate::error::{Error, Result};
use crate::psyquandle::Psyquandle;

/// A color (0-based element) for every semiarc, indexed by semiarc id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, semiarc: usize) -> usize {
        self.colors[semiarc]
    }

    /// Colors on the bottom row, left to right.
    pub fn seed(&self, d: &Diagram) -> Vec<usize> {
        d.bottom().iter().map(|&s| self.colors[s]).collect()
    }

    /// 1-based colors in semiarc order.
    pub fn render(&self) -> String {
        let v: Vec<String> = self.colors.iter().map(|c| (c + 1).to_string()).collect();
        v.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomsetResult {
    pub colorings: Vec<Coloring>,
}

impl HomsetResult {
    pub fn count(&self) -> usize {
        self.colorings.len()
    }
}

pub(crate) fn check_mode(d: &Diagram, x: &Psyquandle) -> Result<()> {
    if d.mode() == Mode::Pseudo {
        if let Some(w) = x.pi_witness() {
            return Err(Error::Precondition(format!(
                "pseudo diagrams need a pI-adequate psyquandle ({0} ub {0} != {0} ob {0})",
                w + 1
            )));
        }
    }
    Ok(())
}

/// Outputs `(out_left, out_right)` of a crossing from its inputs.
#[inline]
pub fn propagate(x: &Psyquandle, kind: CrossingKind, left: usize, right: usize) -> (usize, usize) {
    match kind {
        CrossingKind::Positive => {
            let over_out = x.ot_inv(right, left);
            (over_out, x.ut(left, over_out))
        }
        CrossingKind::Singular => {
            let out = x.ob_inv(right, left);
            (out, x.ub(left, out))
        }
        CrossingKind::Negative => {
            let under_out = x.ut_inv(right, left);
            (under_out, x.ot(left, under_out))
        }
    }
}

/// Whether the four colors around a crossing satisfy the crossing relation.
pub fn crossing_ok(x: &Psyquandle, c: &Crossing, color: impl Fn(usize) -> usize) -> bool {
    let (il, ir, ol, or) = (color(c.in_left), color(c.in_right), color(c.out_left), color(c.out_right));
    match c.kind {
        CrossingKind::Positive => ir == x.ot(ol, il) && or == x.ut(il, ol),
        CrossingKind::Singular => ir == x.ob(ol, il) && or == x.ub(il, ol),
        CrossingKind::Negative => ir == x.ut(ol, il) && or == x.ot(il, ol),
    }
}

/// Propagates a bottom-row seed upward; `Some` iff the top row closes up.
pub fn coloring_from_seed(d: &Diagram, x: &Psyquandle, seed: &[usize]) -> Option<Coloring> {
    let mut colors = vec![usize::MAX; d.semiarc_count()];
    let mut row = seed.to_vec();
    for (c, l) in d.crossings().iter().zip(d.word().letters()) {
        let (a, b) = (l.index - 1, l.index);
        let (ol, or) = propagate(x, c.kind, row[a], row[b]);
        colors[c.out_left] = ol;
        colors[c.out_right] = or;
        row[a] = ol;
        row[b] = or;
    }
    if row != seed {
        return None;
    }
    for (j, &s) in d.bottom().iter().enumerate() {
        colors[s] = seed[j];
    }
    Some(Coloring { colors })
}

/// Every coloring, in lexicographic order of the bottom row.
pub fn enumerate_colorings(d: &Diagram, x: &Psyquandle) -> Result<HomsetResult> {
    check_mode(d, x)?;
    let (n, k) = (x.size(), d.strands());
    let mut colorings = Vec::new();
    let mut seed = vec![0; k];
    loop {
        if let Some(c) = coloring_from_seed(d, x, &seed) {
            colorings.push(c);
        }
        if !odometer(&mut seed, n) {
            break;
        }
    }
    Ok(HomsetResult { colorings })
}

/// The psyquandle counting invariant.
pub fn counting_invariant(d: &Diagram, x: &Psyquandle) -> Result<usize> {
    Ok(enumerate_colorings(d, x)?.count())
}

/// Largest number of full assignments the brute-force oracle will try.
pub const BRUTE_FORCE_GUARD: u64 = 10_000_000;

/// Tests every assignment of colors to semiarcs against every crossing.
/// Colorings come out in lexicographic order of the full assignment.
pub fn brute_force_colorings(d: &Diagram, x: &Psyquandle) -> Result<HomsetResult> {
    check_mode(d, x)?;
    let (n, m) = (x.size(), d.semiarc_count());
    let space = (n as u64).checked_pow(m as u32).filter(|&s| s <= BRUTE_FORCE_GUARD);
    if space.is_none() {
        return Err(Error::Guard(format!("{n}^{m} assignments exceed {BRUTE_FORCE_GUARD}")));
    }
    let mut colorings = Vec::new();
    let mut colors = vec![0; m];
    loop {
        if d.crossings().iter().all(|c| crossing_ok(x, c, |s| colors[s])) {
            colorings.push(Coloring { colors: colors.clone() });
        }
        if !odometer(&mut colors, n) {
            break;
        }
    }
    Ok(HomsetResult { colorings })
}

/// Advances a little-endian-last counter; false once it wraps around.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;
    use crate::fixtures;

    fn diagram(text: &str, strands: usize, mode: Mode) -> Diagram {
        BraidWord::parse(text, strands, mode).unwrap().close()
    }

    #[test]
    fn unknot_has_one_coloring_per_element() {
        let d = diagram("", 1, Mode::Singular);
        for q in [fixtures::ex1(), fixtures::z9_psyquandle()] {
            assert_eq!(counting_invariant(&d, &q).unwrap(), q.size());
            assert_eq!(brute_force_colorings(&d, &q).unwrap().count(), q.size());
        }
    }

    #[test]
    fn pseudo_trefoils_with_z9() {
        let q = fixtures::z9_psyquandle();
        for w in ["s1 s1 t1", "s1 t1 t1", "t1 t1 t1"] {
            assert_eq!(counting_invariant(&diagram(w, 2, Mode::Pseudo), &q).unwrap(), 2, "{w}");
        }
    }

    #[test]
    fn singular_trefoil_with_z6() {
        let d = diagram("s1 s1 t1", 2, Mode::Singular);
        let h = enumerate_colorings(&d, &fixtures::z6_psyquandle()).unwrap();
        let seeds: Vec<_> = h.colorings.iter().map(|c| c.seed(&d)).collect();
        // 0-based seeds: (1,1), (2,2), (3,3)
        assert_eq!(seeds, vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn pseudo_mode_requires_pi_adequacy() {
        let q = fixtures::non_pi_psyquandle();
        let d = diagram("t1", 2, Mode::Pseudo);
        assert!(matches!(enumerate_colorings(&d, &q), Err(Error::Precondition(_))));
        assert!(enumerate_colorings(&d.word().with_mode(Mode::Singular).close(), &q).is_ok());
    }

    #[test]
    fn negative_crossing_round_trip() {
        // propagating through s_i then s_i- returns the inputs
        for q in [fixtures::ex1(), fixtures::z6_psyquandle(), fixtures::z5_psyquandle()] {
            for a in 0..q.size() {
                for b in 0..q.size() {
                    let (c, d) = propagate(&q, CrossingKind::Positive, a, b);
                    assert_eq!(propagate(&q, CrossingKind::Negative, c, d), (a, b));
                    let (c, d) = propagate(&q, CrossingKind::Negative, a, b);
                    assert_eq!(propagate(&q, CrossingKind::Positive, c, d), (a, b));
                }
            }
        }
    }

    #[test]
    fn propagation_agrees_with_oracle() {
        for q in [fixtures::ex1(), fixtures::z9_psyquandle(), fixtures::z6_psyquandle()] {
            for (w, k) in [("s1 s1 t1", 2), ("s1 s2- t1", 3), ("s1- t1 s1 t1", 2), ("t2 s1", 3)] {
                let d = diagram(w, k, Mode::Singular);
                let mut a = enumerate_colorings(&d, &q).unwrap().colorings;
                let b = brute_force_colorings(&d, &q).unwrap().colorings;
                a.sort();
                assert_eq!(a, b, "{w}");
            }
        }
    }

    #[test]
    fn brute_force_guard() {
        let d = diagram("s1 s1 s1 s1 s1 s1 s1 s1 s1 s1 s1 s1", 2, Mode::Singular);
        assert!(matches!(brute_force_colorings(&d, &fixtures::ex1()), Err(Error::Guard(_))));
    }
}
