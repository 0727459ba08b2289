mod common;

use nichols_core::diagram::{CartanFamily, CartanPreset};
use nichols_core::roots::{
    closed_form_presets, closed_form_value, positive_roots, verify, RootError, RootSystemData,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn preset(s: &str) -> CartanPreset {
    s.parse().unwrap()
}

#[test]
fn positive_root_counts() {
    use CartanFamily::*;
    for n in 1..=8usize {
        assert_eq!(positive_roots(&CartanPreset::new(A, n).unwrap()).len(), n * (n + 1) / 2);
    }
    for n in 2..=8usize {
        assert_eq!(positive_roots(&CartanPreset::new(B, n).unwrap()).len(), n * n);
        assert_eq!(positive_roots(&CartanPreset::new(C, n).unwrap()).len(), n * n);
    }
    for n in 4..=8usize {
        assert_eq!(positive_roots(&CartanPreset::new(D, n).unwrap()).len(), n * (n - 1));
    }
    for (p, count) in [("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6)] {
        assert_eq!(positive_roots(&preset(p)).len(), count, "{p}");
    }
}

#[test]
fn heights_follow_the_self_braiding() {
    for n in 2..=7 {
        assert_eq!(RootSystemData::new(preset("A2"), n).unwrap().root_height(&[1, 1]), Some(n));
    }
    // the root 2α_i + α_j of B2 whose self-braiding is q²
    let b2 = RootSystemData::new(preset("B2"), 6).unwrap();
    let long: Vec<u32> = b2.roots().iter().zip(b2.heights()).filter(|(r, _)| r.contains(&2)).map(|(_, h)| *h).collect();
    assert_eq!(long, [3]);
    let g2 = RootSystemData::new(preset("G2"), 6).unwrap();
    let mut hs = g2.heights().to_vec();
    hs.sort_unstable();
    assert_eq!(hs, [2, 2, 2, 6, 6, 6]);
}

#[test]
fn degenerate_orders_are_rejected() {
    assert!(matches!(RootSystemData::new(preset("B2"), 2), Err(RootError::Diagram(_))));
    assert!(RootSystemData::new(preset("G2"), 3).is_err());
    assert!(RootSystemData::new(preset("A2"), 1).is_err());
}

#[test]
fn enumeration_matches_oracle_on_small_presets() {
    for n in 2..=3u32 {
        for rank in 2..=4 {
            let d = RootSystemData::new(CartanPreset::new(CartanFamily::A, rank).unwrap(), n).unwrap();
            let heights = vec![n as u64; rank * (rank + 1) / 2];
            let counted = common::enumerate_dim_l(&common::a_supports(rank), &heights, &common::a_edges(rank));
            assert_eq!(d.moebius_oracle().unwrap(), BigInt::from(counted), "A{rank}@N={n}");
        }
    }
    let d4 = RootSystemData::new(preset("D4"), 3).unwrap();
    let counted = common::enumerate_dim_l(&common::d4_supports(), &[3; 12], &common::d4_edges());
    assert_eq!(d4.moebius_oracle().unwrap(), BigInt::from(counted));
}

#[test]
fn dtype_recursion_matches_oracle() {
    for rank in 4..=7usize {
        for n in 2..=4u32 {
            let d = RootSystemData::new(CartanPreset::new(CartanFamily::D, rank).unwrap(), n).unwrap();
            assert_eq!(d.dtype_recursion().unwrap(), d.moebius_oracle().unwrap(), "D{rank}@N={n}");
        }
    }
    assert!(matches!(RootSystemData::new(preset("A3"), 2).unwrap().dtype_recursion(), Err(RootError::NotDType(_))));
    assert!(matches!(RootSystemData::new(preset("D4"), 2).unwrap().path_recursion(), Err(RootError::NotAPath(_))));
}

#[test]
fn verify_reports() {
    let r = verify(preset("A3"), 2, true).unwrap();
    assert!(r.agree);
    for v in [&r.methods.recursion, &r.methods.closed_form, &r.methods.engine] {
        assert_eq!(v.as_ref(), Some(&BigInt::from(62)));
    }
    let r = verify(preset("E8"), 2, false).unwrap();
    assert!(r.agree, "{r}");
    assert_eq!(r.methods.engine, None);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["N"], 2);
    assert!(json["methods"]["oracle"].is_string());
}

#[test]
fn g2_at_two_is_an_engine_exception() {
    let r = verify(preset("G2"), 2, true).unwrap();
    assert_eq!(r.methods.oracle, BigInt::from(63));
    assert_eq!(r.methods.closed_form, Some(BigInt::from(63)));
    assert_eq!(r.methods.engine, Some(BigInt::from(7)));
    assert!(!r.agree);
    assert_eq!(r.errata.len(), 1);
    assert_eq!(r.errata[0].method, "engine");
}

fn arb_cell() -> impl Strategy<Value = (CartanPreset, u32)> {
    let presets = closed_form_presets();
    (0..presets.len(), 2u32..=9).prop_map(move |(i, n)| (presets[i], n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Σ_S f(S) over nonempty S is dim B − 1, and every f(S) ≥ 0.
    #[test]
    fn oracle_bookkeeping((p, n) in arb_cell()) {
        let Ok(d) = RootSystemData::new(p, n) else { return Ok(()) };
        let counts = d.subset_counts().unwrap();
        let total: BigInt = counts.iter().filter(|c| !c.set.is_empty()).map(|c| c.f.clone()).sum();
        prop_assert_eq!(total, d.dim_nichols() - BigInt::one());
        prop_assert!(counts.iter().all(|c| c.f >= BigInt::zero()));
        prop_assert!(d.moebius_oracle().unwrap() <= d.dim_nichols() - BigInt::one());
    }

    #[test]
    fn closed_form_and_recursions_match_oracle((p, n) in arb_cell()) {
        let Ok(d) = RootSystemData::new(p, n) else { return Ok(()) };
        let oracle = d.moebius_oracle().unwrap();
        let cf = closed_form_value(p, n).unwrap();
        prop_assert!(cf.is_integer());
        prop_assert_eq!(cf.to_integer(), oracle.clone());
        if let Ok(left) = d.path_recursion() {
            prop_assert_eq!(&left, &oracle);
            prop_assert_eq!(d.path_recursion_mirrored().unwrap(), left);
        }
    }
}

#[test]
fn rank_two_presets_have_no_disconnected_loss() {
    for p in ["A2", "B2", "C2", "G2"] {
        for n in 2..=7 {
            if let Ok(d) = RootSystemData::new(preset(p), n) {
                assert_eq!(d.moebius_oracle().unwrap(), d.dim_nichols() - 1, "{p}@N={n}");
            }
        }
    }
}
