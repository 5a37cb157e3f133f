mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use terncode_core::{canonical_certificate, LinearCode, TritMatrix};

use common::props;

fn check(r: Result<(), String>) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn self_orthogonal_weights_divisible_by_three(n in 1usize..=12, seed: u64) {
        check(props::weight_divisibility(n, seed))?;
    }

    #[test]
    fn dual_is_an_involution(n in 1usize..=16, seed: u64) {
        check(props::dual_involution(n, seed))?;
    }

    #[test]
    fn shortening_undoes_lengthening(n in 2usize..=7, seed: u64) {
        check(props::shorten_lengthen_round_trip(n, seed))?;
    }

    #[test]
    fn rref_is_idempotent(n in 1usize..=20, rows in 0usize..8, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = TritMatrix::new(n, (0..rows).map(|_| common::random_vector(n, &mut rng)).collect()).unwrap();
        let once = m.rref();
        prop_assert_eq!(once.rref(), once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn nullspace_is_orthogonal_with_full_rank(n in 1usize..=20, rows in 0usize..8, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = TritMatrix::new(n, (0..rows).map(|_| common::random_vector(n, &mut rng)).collect()).unwrap();
        let ker = m.nullspace();
        prop_assert_eq!(ker.row_count() + m.rank(), n);
        for v in ker.rows() {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn generator_choice_does_not_matter(n in 2usize..=10, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_self_orthogonal(n, n / 2, &mut rng);
        // random invertible recombination of the rows, plus a redundant row
        let mut rows = Vec::new();
        while LinearCode::from_rows(n, rows.clone()).unwrap() != code {
            let mut v = terncode_core::TritVector::zero(n);
            for r in code.rows() {
                v = v + r.scale(terncode_core::Gf3::new(rand::Rng::gen_range(&mut rng, 0..3)));
            }
            rows.push(v);
        }
        let rebuilt = LinearCode::from_rows(n, rows).unwrap();
        prop_assert_eq!(&rebuilt, &code);
        prop_assert_eq!(canonical_certificate(&rebuilt).unwrap(), canonical_certificate(&code).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn b_and_twice_b_are_equivalent(n in 2usize..=10, seed: u64) {
        check(props::b_and_2b_agree(n, seed).map(|_| ()))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificate_is_monomial_invariant(n in 3usize..=10, seed: u64) {
        check(props::monomial_invariance(n, seed))?;
    }
}
