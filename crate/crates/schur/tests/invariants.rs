use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

use schur::curve_model::{eta_word, word_to_z, z_to_word, CurveSpec};
use schur::laurent_oracle::{Budget, Seed};
use schur::psi_engine::{segment_word, OrientationMode, PsiContext};
use schur::quiver::ExchangeMatrix;
use schur::root_lattice::{CartanSpec, RootVector, Word};

fn ctx() -> PsiContext {
    PsiContext::two_complete(OrientationMode::Corrected)
}

/// Words over {1,2,3} with no letter repeated twice in a row.
fn word(max_len: usize) -> impl Strategy<Value = Word> {
    (0u8..3, prop::collection::vec(any::<bool>(), 0..max_len)).prop_map(|(first, turns)| {
        let mut letters = vec![first + 1];
        for t in turns {
            let last = *letters.last().unwrap();
            let others: Vec<u8> = (1..=3).filter(|&l| l != last).collect();
            letters.push(others[t as usize]);
        }
        Word::new(letters).unwrap()
    })
}

fn coprime_pair(bound: i64) -> impl Strategy<Value = (i64, i64)> {
    (-bound..=bound, -bound..=bound).prop_filter("coprime", |&(b, c)| (b, c) != (0, 0) && b.gcd(&c) == 1)
}

fn root(n: usize) -> impl Strategy<Value = RootVector> {
    prop::collection::vec(-50i64..=50, n).prop_map(|v| RootVector::from_i64(&v))
}

fn skew_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    prop::collection::vec(-4i64..=4, 3).prop_map(|v| {
        ExchangeMatrix::new(&[vec![0, v[0], v[1]], vec![-v[0], 0, v[2]], vec![-v[1], -v[2], 0]]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn segment_words_are_odd_palindromes((b, c) in coprime_pair(60)) {
        let w = segment_word(b, c).unwrap();
        let l = w.letters();
        prop_assert_eq!(l.len() % 2, 1);
        prop_assert!(l.iter().eq(l.iter().rev()));
        prop_assert_eq!(segment_word(-b, -c).unwrap(), w.reversed());
        let generic = b != 0 && c != 0 && b + c != 0;
        if generic {
            let count = |x: u8| l.iter().filter(|&&y| y == x).count() as i64;
            prop_assert_eq!(count(3), b.abs() - 1);
            prop_assert_eq!(count(1), c.abs() - 1);
            prop_assert_eq!(count(2), (b + c).abs() - 1);
        }
    }

    #[test]
    fn reflections_are_involutions(x in root(3), i in 1u8..=3, c in 2i64..=4) {
        let cartan = CartanSpec::uniform_rank3(c);
        prop_assert_eq!(cartan.reflect(i, &cartan.reflect(i, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn words_preserve_the_pairing(x in root(3), y in root(3), w in word(10)) {
        let cartan = CartanSpec::uniform_rank3(2);
        let sx = cartan.apply_word(&w, &x).unwrap();
        let sy = cartan.apply_word(&w, &y).unwrap();
        prop_assert_eq!(cartan.pairing(&sx, &sy).unwrap(), cartan.pairing(&x, &y).unwrap());
    }

    #[test]
    fn conjugates_reflect_their_root(w in word(8), i in 1u8..=3) {
        let cartan = CartanSpec::uniform_rank3(2);
        let mut letters = w.letters().to_vec();
        letters.push(i);
        letters.extend(w.letters().iter().rev());
        let expected = cartan.word_on_simple(w.letters(), i).unwrap().positive_representative().unwrap();
        prop_assert!(cartan.is_reflection(&letters));
        prop_assert_eq!(cartan.reflection_root_of_word(&letters).unwrap(), expected);
    }

    #[test]
    fn matrix_mutation_is_an_involution(b in skew_matrix(), k in 1u8..=3) {
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn seed_mutation_is_an_involution(w in word(2), k in 1u8..=3) {
        let seed = Seed::<3>::initial(ExchangeMatrix::two_complete()).unwrap().run_word(&w, Budget::default()).unwrap().seed;
        let back = seed.mutate(k, Budget::default()).unwrap().mutate(k, Budget::default()).unwrap();
        prop_assert_eq!(back.cluster, seed.cluster);
        prop_assert_eq!(back.matrix, seed.matrix);
    }

    #[test]
    fn psi_matches_the_recurrence(w in word(20)) {
        let c = ctx();
        let psi = c.psi(&w).unwrap();
        prop_assert!(psi.0.iter().all(|x| *x >= BigInt::from(0)) && !psi.is_zero());
        prop_assert_eq!(&psi, &c.tropical_last(&w).unwrap());
        let refl = c.psi_reflection_word(&w).unwrap();
        let m = c.cartan().word_matrix(refl.letters()).unwrap();
        let sq: Vec<Vec<BigInt>> = (0..3).map(|r| (0..3).map(|col| (0..3).map(|k| &m[r][k] * &m[k][col]).sum()).collect()).collect();
        prop_assert!((0..3).all(|r| (0..3).all(|col| sq[r][col] == BigInt::from((r == col) as i64))));
    }

    #[test]
    fn words_round_trip_through_z(w in word(16)) {
        let c = ctx();
        let z = word_to_z(&c, &w).unwrap();
        prop_assert_eq!(z_to_word(&c, &z).unwrap(), w);
    }

    #[test]
    fn z_round_trips_through_words(a in -4i64..=4, (b, c) in coprime_pair(12)) {
        let ctx = ctx();
        let z = CurveSpec::new(a, b, c).unwrap();
        let w = z_to_word(&ctx, &z).unwrap();
        prop_assert_eq!(word_to_z(&ctx, &w).unwrap(), z);
        let eta = eta_word(&ctx, &z).unwrap();
        let l = eta.letters();
        prop_assert!(l.iter().eq(l.iter().rev()));
        prop_assert_eq!(ctx.cartan().reflection_root_of_word(l).unwrap(), ctx.psi(&w).unwrap());
    }

    #[test]
    fn mutation_keeps_the_seed_two_complete(w in word(14)) {
        let b = ExchangeMatrix::two_complete().mutate_word(&w).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    prop_assert!(b.get(i, j).abs() >= BigInt::from(2));
                    prop_assert_eq!(b.get(i, j).clone(), -b.get(j, i));
                }
            }
        }
    }
}
