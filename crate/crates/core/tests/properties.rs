use homlab_core::eval::identity_value;
use homlab_core::lie_suite::{random_alpha, random_skew, sample_rng};
use homlab_core::{builtin, linearize, type_profile, FiniteHomMagma, Prime, TypeTag};
use proptest::prelude::*;

const P: u32 = 7;

/// Magma on two or three non-zero elements plus an absorbing zero.
fn magma() -> impl Strategy<Value = FiniteHomMagma> {
    (2usize..=3).prop_flat_map(|d| {
        let size = d + 1;
        (prop::collection::vec(0..size, d * d), prop::collection::vec(0..size, d)).prop_map(move |(cells, twist)| {
            let mut table = vec![vec![d; size]; size];
            for i in 0..d {
                for j in 0..d {
                    table[i][j] = cells[i * d + j];
                }
            }
            let mut alpha = twist;
            alpha.push(d);
            FiniteHomMagma::new(size, table, alpha, None, Some(d)).unwrap()
        })
    })
}

fn vector() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..P, 3)
}

fn axpy(x: &[u32], l: u32, y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(a, b)| (a + l * b) % P).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearization_keeps_the_associative_profile(m in magma()) {
        let p = Prime::new(P.into()).unwrap();
        let on_magma = type_profile(&m).satisfied;
        let on_algebra: Vec<TypeTag> =
            type_profile(&linearize(&m, p)).satisfied.into_iter().filter(|t| TypeTag::all_assoc().any(|a| a == *t)).collect();
        prop_assert_eq!(on_magma.into_iter().collect::<Vec<_>>(), on_algebra);
    }

    #[test]
    fn identity_values_are_trilinear(
        seed in any::<u64>(),
        x in vector(), y in vector(), z in vector(), w in vector(),
        l in 0..P, slot in 0usize..3,
    ) {
        let p = Prime::new(P.into()).unwrap();
        let mut rng = sample_rng(seed, 0);
        let alpha = random_alpha(&mut rng, p, 3);
        let a = random_skew(&mut rng, p, 3, alpha).unwrap();
        for tag in TypeTag::all() {
            let id = builtin(tag);
            let mut args = [x.clone(), y.clone(), z.clone()];
            let base = identity_value(&a, &id, &args[0], &args[1], &args[2]).unwrap();
            args[slot] = w.clone();
            let other = identity_value(&a, &id, &args[0], &args[1], &args[2]).unwrap();
            args[slot] = axpy(&[x.clone(), y.clone(), z.clone()][slot], l, &w);
            let mixed = identity_value(&a, &id, &args[0], &args[1], &args[2]).unwrap();
            prop_assert_eq!(mixed, axpy(&base, l, &other), "{} in slot {}", tag, slot);
        }
    }
}
