//! Seeded random words and the move-invariance harness shared by the
//! integration tests and the acceptance suite.
#![allow(dead_code)]

use psyq::diagram::{BraidWord, CrossingKind, Letter, Mode};
use psyq::moves;
use psyq::{bracket_multiset, fixtures, PsyBracket};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// The seed from `PSYQ_SEED`, or the pinned default.
pub fn seed() -> u64 {
    std::env::var("PSYQ_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_letter(rng: &mut impl Rng, strands: usize) -> Letter {
    let index = rng.gen_range(1..strands);
    let kind = match rng.gen_range(0..3) {
        0 => CrossingKind::Positive,
        1 => CrossingKind::Negative,
        _ => CrossingKind::Singular,
    };
    Letter { kind, index }
}

/// A word on `strands` strands with at most `max_len` letters.
pub fn random_word(rng: &mut impl Rng, strands: usize, max_len: usize, mode: Mode) -> BraidWord {
    let len = if strands < 2 { 0 } else { rng.gen_range(0..=max_len) };
    let letters = (0..len).map(|_| random_letter(rng, strands)).collect();
    BraidWord::new(strands, letters, mode).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    ReidemeisterTwo,
    ReidemeisterThree,
    DistantCommutation,
    MixedCommutation,
    SingularExchange,
    MarkovPositive,
    MarkovNegative,
    Tau,
}

impl Move {
    pub const CLASSICAL: [Move; 7] = [
        Move::ReidemeisterTwo,
        Move::ReidemeisterThree,
        Move::DistantCommutation,
        Move::MixedCommutation,
        Move::SingularExchange,
        Move::MarkovPositive,
        Move::MarkovNegative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Move::ReidemeisterTwo => "RII",
            Move::ReidemeisterThree => "RIII",
            Move::DistantCommutation => "commute",
            Move::MixedCommutation => "pII",
            Move::SingularExchange => "pIII",
            Move::MarkovPositive => "Markov+",
            Move::MarkovNegative => "Markov-",
            Move::Tau => "tau",
        }
    }

    /// A random instance: two words related by this move, each of at most
    /// four strands and with a context word of at most eight letters.
    pub fn instance(self, rng: &mut impl Rng, mode: Mode) -> (BraidWord, BraidWord) {
        let min = match self {
            Move::ReidemeisterTwo | Move::MixedCommutation => 2,
            Move::ReidemeisterThree | Move::SingularExchange => 3,
            Move::DistantCommutation => 4,
            Move::MarkovPositive | Move::MarkovNegative | Move::Tau => 1,
        };
        let max = match self {
            Move::MarkovPositive | Move::MarkovNegative | Move::Tau => 3,
            _ => 4,
        };
        let k = rng.gen_range(min..=max);
        let w = random_word(rng, k, 8, mode);
        let pos = rng.gen_range(0..=w.letters().len());
        match self {
            Move::ReidemeisterTwo => moves::reidemeister_two(&w, pos, rng.gen_range(1..k), rng.gen()).unwrap(),
            Move::ReidemeisterThree => moves::reidemeister_three(&w, pos, rng.gen_range(1..k - 1)).unwrap(),
            Move::DistantCommutation => loop {
                let (a, b) = (random_letter(rng, k), random_letter(rng, k));
                if a.index.abs_diff(b.index) >= 2 {
                    break moves::distant_commutation(&w, pos, a, b).unwrap();
                }
            },
            Move::MixedCommutation => moves::mixed_commutation(&w, pos, rng.gen_range(1..k), rng.gen()).unwrap(),
            Move::SingularExchange => moves::singular_exchange(&w, pos, rng.gen_range(1..k - 1), rng.gen()).unwrap(),
            Move::MarkovPositive => (w.clone(), moves::stabilize(&w, CrossingKind::Positive)),
            Move::MarkovNegative => (w.clone(), moves::stabilize(&w, CrossingKind::Negative)),
            Move::Tau => (w.clone(), moves::stabilize(&w, CrossingKind::Singular)),
        }
    }
}

/// A move case whose two sides disagree.
#[derive(Debug)]
pub struct Counterexample {
    pub left: BraidWord,
    pub right: BraidWord,
    pub values: (String, String),
}

/// Runs `cases` random instances of `mv` and returns the first disagreement.
pub fn check_move(mv: Move, br: &PsyBracket, mode: Mode, cases: usize, salt: u64) -> Option<Counterexample> {
    let mut rng = rng(salt);
    for _ in 0..cases {
        let (left, right) = mv.instance(&mut rng, mode);
        let a = bracket_multiset(&left.close(), br).unwrap();
        let b = bracket_multiset(&right.close(), br).unwrap();
        if a != b {
            return Some(Counterexample { left, right, values: (a.to_string(), b.to_string()) });
        }
    }
    None
}

/// Every fixture with the modes it supports.
pub fn move_fixtures() -> Vec<(&'static str, PsyBracket, Mode)> {
    let mut out: Vec<_> = fixtures::all_brackets().into_iter().map(|(n, b)| (n, b, Mode::Singular)).collect();
    out.push(("z9", fixtures::z9_bracket(), Mode::Pseudo));
    out
}
