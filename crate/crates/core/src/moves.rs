//! Braid-word templates for the moves of singular and pseudo isotopy.
//!
//! Each function returns the two words related by one move, both built from
//! the same context word `w` with the move's local pattern inserted at
//! letter position `pos`. Invariants must agree on the two sides.

use crate::diagram::{BraidWord, CrossingKind, Letter};
use crate::error::{Error, Result};

/// Inserts `left` and `right` at `pos` of `w`, giving the two sides of a move.
pub fn insert_pair(w: &BraidWord, pos: usize, left: &[Letter], right: &[Letter]) -> Result<(BraidWord, BraidWord)> {
    if pos > w.letters().len() {
        return Err(Error::Domain(format!("position {pos} past the end of `{w}`")));
    }
    let build = |mid: &[Letter]| {
        let (a, b) = w.letters().split_at(pos);
        BraidWord::new(w.strands(), [a, mid, b].concat(), w.mode())
    };
    Ok((build(left)?, build(right)?))
}

/// Reidemeister II: `w` against `w` with `s_i s_i-` (or `s_i- s_i`) inserted.
pub fn reidemeister_two(w: &BraidWord, pos: usize, i: usize, negative_first: bool) -> Result<(BraidWord, BraidWord)> {
    let pair = if negative_first { [Letter::neg(i), Letter::pos(i)] } else { [Letter::pos(i), Letter::neg(i)] };
    insert_pair(w, pos, &[], &pair)
}

/// Reidemeister III: `s_i s_{i+1} s_i` against `s_{i+1} s_i s_{i+1}`.
pub fn reidemeister_three(w: &BraidWord, pos: usize, i: usize) -> Result<(BraidWord, BraidWord)> {
    insert_pair(
        w,
        pos,
        &[Letter::pos(i), Letter::pos(i + 1), Letter::pos(i)],
        &[Letter::pos(i + 1), Letter::pos(i), Letter::pos(i + 1)],
    )
}

/// Far commutation `a b` against `b a`; the generators must be at least two apart.
pub fn distant_commutation(w: &BraidWord, pos: usize, a: Letter, b: Letter) -> Result<(BraidWord, BraidWord)> {
    if a.index.abs_diff(b.index) < 2 {
        return Err(Error::Domain(format!("{a} and {b} are adjacent generators")));
    }
    insert_pair(w, pos, &[a, b], &[b, a])
}

/// `t_i s_i` against `s_i t_i`, or the same with `s_i-`.
pub fn mixed_commutation(w: &BraidWord, pos: usize, i: usize, negative: bool) -> Result<(BraidWord, BraidWord)> {
    let s = if negative { Letter::neg(i) } else { Letter::pos(i) };
    let t = Letter::sing(i);
    insert_pair(w, pos, &[t, s], &[s, t])
}

/// `s_i s_{i+1} t_i` against `t_{i+1} s_i s_{i+1}`; the mirror form is
/// `t_i s_{i+1} s_i` against `s_{i+1} s_i t_{i+1}`.
pub fn singular_exchange(w: &BraidWord, pos: usize, i: usize, mirror: bool) -> Result<(BraidWord, BraidWord)> {
    let (s, s1) = (Letter::pos(i), Letter::pos(i + 1));
    if mirror {
        insert_pair(w, pos, &[Letter::sing(i), s1, s], &[s1, s, Letter::sing(i + 1)])
    } else {
        insert_pair(w, pos, &[s, s1, Letter::sing(i)], &[Letter::sing(i + 1), s, s1])
    }
}

/// Adds a strand and appends a crossing of `kind` between it and the last
/// strand: Markov stabilization for classical kinds, the pI move for
/// singular ones.
pub fn stabilize(w: &BraidWord, kind: CrossingKind) -> BraidWord {
    let k = w.strands();
    let mut letters = w.letters().to_vec();
    letters.push(Letter { kind, index: k });
    BraidWord::new(k + 1, letters, w.mode()).expect("index k on k+1 strands")
}

/// Conjugation by the first letter: moves it to the end.
pub fn rotate(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters().to_vec();
    if !letters.is_empty() {
        letters.rotate_left(1);
    }
    BraidWord::new(w.strands(), letters, w.mode()).expect("same generators")
}
