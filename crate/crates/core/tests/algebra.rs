use nichols_core::braided::{bracket, chi, jacobi_residual, leibniz_residual, BraidedElement, MultiDegree, Word};
use nichols_core::diagram::GeneralizedDynkinDiagram;
use nichols_core::engine::{skew_derive, NicholsEngine};
use nichols_core::scalars::{Cyclotomic, RootOfUnity};
use proptest::prelude::*;

/// A random braiding of rank `1..=3` over `ζ_M`, `M ∈ 2..=6`, with every `p_ii ≠ 1`.
fn arb_diagram() -> impl Strategy<Value = GeneralizedDynkinDiagram> {
    (2u32..=6, 1usize..=3).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(0..m as i64, n), n).prop_map(move |mut e| {
            for (i, row) in e.iter_mut().enumerate() {
                if row[i] == 0 {
                    row[i] = 1;
                }
            }
            GeneralizedDynkinDiagram::new(m, e).expect("diagonal labels are nontrivial")
        })
    })
}

fn arb_letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..rank, 0..=max_len)
}

/// A homogeneous element: integer combination of rearrangements of one word.
fn homogeneous(d: &GeneralizedDynkinDiagram, letters: &[usize], coeffs: &[i64]) -> BraidedElement {
    let n = letters.len().max(1);
    let terms = coeffs.iter().enumerate().map(|(k, c)| {
        let mut w = letters.to_vec();
        w.rotate_left(k % n);
        if k % 2 == 1 {
            w.reverse();
        }
        (Word::from_letters(w), Cyclotomic::from_integer(d.modulus(), *c))
    });
    BraidedElement::from_terms(d.rank(), d.modulus(), terms)
}

fn setup() -> impl Strategy<Value = (GeneralizedDynkinDiagram, [Vec<usize>; 3], [Vec<i64>; 3])> {
    arb_diagram().prop_flat_map(|d| {
        let r = d.rank();
        let coeffs = || proptest::collection::vec(-2i64..=2, 1..=2);
        (
            Just(d),
            [arb_letters(r, 2), arb_letters(r, 2), arb_letters(r, 2)],
            [coeffs(), coeffs(), coeffs()],
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chi_is_bimultiplicative(d in arb_diagram(), a in proptest::collection::vec(0u32..4, 3), b in proptest::collection::vec(0u32..4, 3), c in proptest::collection::vec(0u32..4, 3)) {
        let n = d.rank();
        let deg = |v: &[u32]| MultiDegree(v[..n].to_vec());
        let (a, b, c) = (deg(&a), deg(&b), deg(&c));
        prop_assert_eq!(chi(&d, &(&a + &b), &c), chi(&d, &a, &c) * chi(&d, &b, &c));
        prop_assert_eq!(chi(&d, &a, &(&b + &c)), chi(&d, &a, &b) * chi(&d, &a, &c));
    }

    #[test]
    fn bracket_degree_is_sum((d, [u, v, _], [cu, cv, _]) in setup()) {
        let u = homogeneous(&d, &u, &cu);
        let v = homogeneous(&d, &v, &cv);
        let b = bracket(&d, &u, &v).unwrap();
        prop_assert!(b.is_homogeneous());
        if let (Some(bd), Some(ud), Some(vd)) = (b.degree(), u.degree(), v.degree()) {
            prop_assert_eq!(bd, &(ud + vd));
        }
    }

    #[test]
    fn jacobi_and_leibniz_vanish((d, [u, v, w], [cu, cv, cw]) in setup()) {
        let u = homogeneous(&d, &u, &cu);
        let v = homogeneous(&d, &v, &cv);
        let w = homogeneous(&d, &w, &cw);
        prop_assert!(jacobi_residual(&d, &u, &v, &w).unwrap().is_zero());
        prop_assert!(leibniz_residual(&d, &u, &v, &w).unwrap().is_zero());
    }

    /// `∂_i(uv) = ∂_i(u)·v + χ(e_i, deg u)⁻¹ u·∂_i(v)`.
    #[test]
    fn skew_derivation_is_twisted((d, [u, v, _], _) in setup(), i in 0usize..3) {
        let i = i % d.rank();
        let (m, n) = (d.modulus(), d.rank());
        let deg_u = Word::from_letters(u.clone()).degree(n);
        let u = BraidedElement::from_word(n, m, Word::from_letters(u));
        let v = BraidedElement::from_word(n, m, Word::from_letters(v));
        let lhs = skew_derive(&d, i, &u.multiply(&v));
        let twist = chi(&d, &MultiDegree::unit(n, i), &deg_u).inv();
        let rhs = &skew_derive(&d, i, &u).multiply(&v) + &u.multiply(&skew_derive(&d, i, &v)).scale_root(twist);
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn zero_test_matches_direct_recursion(d in arb_diagram(), letters in arb_letters(3, 5), coeffs in proptest::collection::vec(-2i64..=2, 1..=3)) {
        let letters: Vec<usize> = letters.into_iter().map(|l| l % d.rank()).collect();
        let u = homogeneous(&d, &letters, &coeffs);
        let engine = NicholsEngine::new(d, Some(5)).unwrap();
        prop_assert_eq!(engine.zero_test(&u).unwrap(), engine.zero_test_direct(&u).unwrap());
    }
}

#[test]
fn generator_powers_vanish_at_the_label_order() {
    for m in 2..=5u32 {
        let d = GeneralizedDynkinDiagram::new(m, vec![vec![1]]).unwrap();
        let engine = NicholsEngine::new(d, Some(m)).unwrap();
        let power = |k: usize| BraidedElement::from_word(1, m, Word::from_letters(vec![0; k]));
        assert!(!engine.zero_test(&power(m as usize - 1)).unwrap(), "x^{} at M={m}", m - 1);
        assert!(engine.zero_test(&power(m as usize)).unwrap(), "x^{m} at M={m}");
    }
}

#[test]
fn chi_matches_braiding_on_generators() {
    let d = GeneralizedDynkinDiagram::new(6, vec![vec![1, 2], vec![5, 3]]).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(chi(&d, &MultiDegree::unit(2, i), &MultiDegree::unit(2, j)), d.p(i, j));
        }
    }
    assert_eq!(chi(&d, &MultiDegree(vec![1, 1]), &MultiDegree(vec![1, 1])), RootOfUnity::new(11, 6).unwrap());
}
