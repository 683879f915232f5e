//! Structures from the literature, used by tests, the acceptance suite and
//! the shipped `data/` files.
//!
//! Names follow the modulus of the bracket each psyquandle is paired with.

use crate::bracket::PsyBracket;
use crate::psyquandle::Psyquandle;
use crate::ring::FiniteRing;

fn rows<const N: usize>(r: [[usize; N]; N]) -> Vec<Vec<usize>> {
    r.iter().map(|row| row.to_vec()).collect()
}

fn residues<const N: usize>(r: [[u32; N]; N]) -> Vec<Vec<u32>> {
    r.iter().map(|row| row.to_vec()).collect()
}

/// Three-element psyquandle.
pub fn ex1() -> Psyquandle {
    Psyquandle::from_rows(
        &rows([[1, 1, 1], [3, 3, 3], [2, 2, 2]]),
        &rows([[1, 1, 1], [2, 3, 3], [3, 2, 2]]),
        &rows([[1, 1, 1], [3, 2, 2], [2, 3, 3]]),
        &rows([[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
    )
    .expect("valid psyquandle")
}

/// A `Z_5` bracket over [`ex1`].
pub fn ex2_bracket() -> PsyBracket {
    PsyBracket::from_tables(
        ex1(),
        FiniteRing::new(5).unwrap(),
        residues([[1, 3, 3], [2, 4, 3], [1, 2, 4]]),
        residues([[2, 1, 1], [1, 2, 4], [3, 1, 2]]),
        residues([[1, 3, 3], [2, 3, 3], [1, 3, 3]]),
        residues([[1, 1, 1], [1, 2, 3], [3, 3, 2]]),
    )
    .expect("valid bracket")
}

/// The pI-adequate two-element psyquandle used with the `Z_9` bracket.
pub fn z9_psyquandle() -> Psyquandle {
    Psyquandle::from_rows(
        &rows([[2, 2], [1, 1]]),
        &rows([[2, 2], [1, 1]]),
        &rows([[1, 1], [2, 2]]),
        &rows([[1, 1], [2, 2]]),
    )
    .expect("valid psyquandle")
}

/// pI-adequate bracket over [`z9_psyquandle`]; `delta = 2`, `w = 1`.
pub fn z9_bracket() -> PsyBracket {
    PsyBracket::from_tables(
        z9_psyquandle(),
        FiniteRing::new(9).unwrap(),
        residues([[1, 1], [8, 1]]),
        residues([[8, 8], [1, 8]]),
        residues([[4, 4], [5, 4]]),
        residues([[2, 5], [4, 2]]),
    )
    .expect("valid bracket")
}

pub fn z6_psyquandle() -> Psyquandle {
    Psyquandle::from_rows(
        &rows([[2, 2, 1], [1, 1, 2], [3, 3, 3]]),
        &rows([[2, 2, 2], [1, 1, 1], [3, 3, 3]]),
        &rows([[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
        &rows([[1, 1, 2], [2, 2, 1], [3, 3, 3]]),
    )
    .expect("valid psyquandle")
}

/// `Z_6` bracket over [`z6_psyquandle`]. The printed `B` table carries a
/// stray header row `5 5 5`; only the body rows are used.
pub fn z6_bracket() -> PsyBracket {
    PsyBracket::from_tables(
        z6_psyquandle(),
        FiniteRing::new(6).unwrap(),
        residues([[1, 1, 1], [1, 1, 1], [5, 5, 1]]),
        residues([[5, 5, 5], [5, 5, 5], [1, 1, 5]]),
        residues([[5, 5, 5], [5, 5, 5], [1, 1, 1]]),
        residues([[1, 1, 1], [1, 1, 1], [5, 5, 5]]),
    )
    .expect("valid bracket")
}

/// Psyquandle of the `Z_5` bracket used for 2-bouquet graphs.
pub fn z5_psyquandle() -> Psyquandle {
    Psyquandle::from_rows(
        &rows([[1, 1, 2], [2, 2, 1], [3, 3, 3]]),
        &rows([[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
        &rows([[2, 2, 2], [1, 1, 1], [3, 3, 3]]),
        &rows([[2, 2, 1], [1, 1, 2], [3, 3, 3]]),
    )
    .expect("valid psyquandle")
}

pub fn z5_bracket() -> PsyBracket {
    PsyBracket::from_tables(
        z5_psyquandle(),
        FiniteRing::new(5).unwrap(),
        residues([[1, 1, 1], [1, 1, 2], [3, 3, 1]]),
        residues([[1, 1, 1], [1, 1, 2], [3, 3, 1]]),
        residues([[1, 1, 2], [4, 1, 4], [1, 1, 2]]),
        residues([[1, 1, 1], [4, 1, 2], [3, 3, 2]]),
    )
    .expect("valid bracket")
}

/// A three-element psyquandle that is not pI-adequate: `2 ub 2 = 3`, `2 ob 2 = 1`.
pub fn non_pi_psyquandle() -> Psyquandle {
    Psyquandle::from_rows(
        &rows([[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
        &rows([[1, 1, 1], [2, 2, 2], [3, 3, 3]]),
        &rows([[1, 1, 2], [3, 3, 3], [2, 2, 1]]),
        &rows([[1, 3, 1], [3, 1, 3], [2, 2, 2]]),
    )
    .expect("valid psyquandle")
}

/// Every bracket fixture paired with a short name.
pub fn all_brackets() -> Vec<(&'static str, PsyBracket)> {
    vec![("ex2", ex2_bracket()), ("z9", z9_bracket()), ("z6", z6_bracket()), ("z5", z5_bracket())]
}
