mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{move_fixtures, Move};
use psyq::{bracket_multiset, Mode};

fn all_moves() -> Vec<Move> {
    let mut v = Move::CLASSICAL.to_vec();
    v.push(Move::Tau);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn moves_preserve_multisets(
        fixture in 0usize..5,
        mv in prop::sample::select(all_moves()),
        seed in any::<u64>(),
    ) {
        let (name, br, mode) = &move_fixtures()[fixture];
        prop_assume!(mv != Move::Tau || *mode == Mode::Pseudo);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = mv.instance(&mut rng, *mode);
        let left = bracket_multiset(&a.close(), br).unwrap();
        let right = bracket_multiset(&b.close(), br).unwrap();
        prop_assert_eq!(left, right, "{} {}: `{}` vs `{}`", name, mv.name(), a, b);
    }
}

#[test]
fn tau_changes_multisets_without_pi() {
    // Without the pI condition the singular stabilization is not an
    // invariance move, so some case must tell the two sides apart.
    let found = psyq::search_brackets(&psyq::SearchSpec::new(psyq::fixtures::z9_psyquandle(), 3)).unwrap();
    let br = found.brackets.into_iter().find(|b| !b.is_pi_adequate() && b.delta() != 0).unwrap();
    assert!(common::check_move(Move::Tau, &br, Mode::Singular, 200, 7).is_some());
}
