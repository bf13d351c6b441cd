//! Randomized invariants: field axioms for the cyclotomic scalars and the
//! structural identities of braid-word sums.

use nichols_core::braid::{reduced_word, BraidSum, BraidWord, Perm};
use nichols_core::cyclotomic::CycNum;
use num_rational::BigRational;
use proptest::prelude::*;

fn cyc_strategy(order: u64) -> impl Strategy<Value = CycNum> {
    // small integer combinations of root powers with occasional denominators
    (
        proptest::collection::vec((-3i64..=3, 0..order as i64), 0..3),
        1i64..=4,
    )
        .prop_map(move |(terms, den)| {
            let mut acc = CycNum::zero(order);
            for (c, e) in terms {
                let t = CycNum::root_of_unity(order, e).scale(&BigRational::new(
                    c.into(),
                    den.into(),
                ));
                acc = acc.add(&t);
            }
            acc
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(
        a in cyc_strategy(12),
        b in cyc_strategy(12),
        c in cyc_strategy(12),
    ) {
        // distributivity and commutativity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        // associativity
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // inverse contract
        if !a.is_zero() {
            prop_assert!(a.inv().unwrap().mul(&a).is_one());
        }
        // subtraction against addition
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn embed_preserves_operations(
        a in cyc_strategy(6),
        b in cyc_strategy(6),
    ) {
        let ea = a.embed(24).unwrap();
        let eb = b.embed(24).unwrap();
        prop_assert_eq!(a.add(&b).embed(24).unwrap(), ea.add(&eb));
        prop_assert_eq!(a.mul(&b).embed(24).unwrap(), ea.mul(&eb));
        // embedding is faithful: restriction recovers the value
        prop_assert_eq!(ea.restrict(6), Some(a));
    }

    #[test]
    fn reduced_words_multiply_back(perm_seed in proptest::collection::vec(0usize..720, 1..2), n in 2usize..6) {
        // pick a permutation deterministically from the seed
        let all = Perm::all(n);
        let p = &all[perm_seed[0] % all.len()];
        let w = reduced_word(p);
        prop_assert_eq!(w.letters.len(), p.length());
        // multiplying the transpositions back yields the permutation
        let mut q = Perm::identity(n);
        for &i in &w.letters {
            q = q.compose(&Perm::transposition(n, i));
        }
        prop_assert_eq!(&q, p);
    }

    #[test]
    fn braid_sum_reversal_is_involutive(letters in proptest::collection::vec(1usize..4, 0..6)) {
        let w = BraidWord::new(letters, 4);
        let s = BraidSum::from_word(w).add(&BraidSum::unit(4).scale(2));
        prop_assert_eq!(s.reversed().reversed(), s.clone());
        // shifting distributes over products
        let t = BraidSum::from_word(BraidWord::new(vec![1, 2], 4));
        prop_assert_eq!(
            s.mul(&t).shifted(2),
            s.shifted(2).mul(&t.shifted(2))
        );
    }
}
