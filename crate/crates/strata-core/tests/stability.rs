//! Stability constants, certified membership posets, and the degree-5
//! del Pezzo lattice calculators, pinned against hand checks and seeded
//! random sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata_core::stability::{
    build_p, cremona, dp_apply_word, dp_is_ample, dp_minus_one_curves, dp_normalize, dp_pairing,
    gp_unobstructed, n_alpha, rr_unobstructed, stability_range, weyl_group, CertificateClause,
    CurveContext, DPClass, NAlphaOutcome, PBounds, PFlavor, StabilityError, StabilityOutcome,
    POINTED_CONNECTIVITY_SHIFT,
};

fn ctx(d: i64, n: &[u64]) -> CurveContext {
    CurveContext::new(0, d, n.to_vec(), 3).unwrap()
}

#[test]
fn stability_constants_for_scaled_quintic_classes() {
    // base class: the basic clause is infeasible, general position gives M = 1
    match stability_range(&ctx(5, &[2, 2, 2])) {
        StabilityOutcome::Infeasible {
            m,
            failed_condition,
        } => {
            assert_eq!(m, -1);
            assert_eq!(failed_condition, None);
        }
        other => panic!("expected the basic clause to be infeasible, got {other:?}"),
    }
    let range = stability_range(&ctx(5, &[2, 2, 2]).with_general_position())
        .range()
        .cloned()
        .expect("general position is feasible");
    assert_eq!((range.m, range.i), (1, 1));
    assert_eq!(range.connectivity.slope, 1);
    assert_eq!(range.connectivity.intercept, -2);
    assert_eq!(range.connectivity.eval(4), 2);

    let pointed = stability_range(&ctx(5, &[2, 2, 2]).with_general_position().with_pointed());
    assert_eq!(
        pointed.range().unwrap().connectivity.intercept,
        -2 + POINTED_CONNECTIVITY_SHIFT
    );

    // multiples of the class move both constants linearly
    for k in 2..=4i64 {
        let scaled = CurveContext::new(0, 5 * k, vec![2 * k as u64; 3], 3)
            .unwrap()
            .with_general_position();
        let range = stability_range(&scaled).range().cloned().unwrap();
        assert_eq!((range.m, range.i), (k, k));
    }

    // once the degree clears the multiplicities the basic clause opens up
    let basic = stability_range(&ctx(9, &[2, 2, 2])).range().cloned().unwrap();
    assert_eq!((basic.m, basic.i), (3, 3));
    assert_eq!(basic.connectivity.slope, 3);

    // genus lowers the codimension constant but not the slope
    let elliptic = CurveContext::new(1, 9, vec![2, 2, 2], 3).unwrap();
    let range = stability_range(&elliptic).range().cloned().unwrap();
    assert_eq!((range.m, range.i), (3, 1));
    assert_eq!(range.connectivity.intercept, -4);

    // a lopsided class reports which positivity condition failed
    match stability_range(&ctx(4, &[4, 1, 1]).with_general_position()) {
        StabilityOutcome::Infeasible {
            failed_condition, ..
        } => assert_eq!(failed_condition, Some(2)),
        other => panic!("expected infeasible, got {other:?}"),
    }
}

#[test]
fn unobstructedness_windows_are_monotone() {
    let c = ctx(5, &[2, 2, 2]);
    assert!(rr_unobstructed(&c, 0, 6));
    assert!(!rr_unobstructed(&c, 0, 7));
    for m0 in 0..=6u64 {
        for ml in 0..=6u64 {
            if rr_unobstructed(&c, m0, ml) {
                assert!(m0 == 0 || rr_unobstructed(&c, m0 - 1, ml));
                assert!(ml == 0 || rr_unobstructed(&c, m0, ml - 1));
            }
        }
    }

    let gp = ctx(7, &[2, 2, 2]).with_general_position();
    for m0 in 0..=3u64 {
        for a in 0..=3u64 {
            for b in 0..=3u64 {
                for e in 0..=3u64 {
                    let check = gp_unobstructed(&gp, m0, &[a, b, e]).unwrap();
                    if check.h1_bound > 0 {
                        assert!(!check.ok, "a positive obstruction bound closes the window");
                    }
                    if check.ok && m0 > 0 {
                        assert!(gp_unobstructed(&gp, m0 - 1, &[a, b, e]).unwrap().ok);
                    }
                }
            }
        }
    }
    assert!(matches!(
        gp_unobstructed(&ctx(7, &[2, 2, 2]), 0, &[1, 1, 1]),
        Err(StabilityError::GeneralPositionRequired)
    ));
}

#[test]
fn certified_membership_poset_for_the_septic_class() {
    let c = ctx(7, &[2, 2, 2]);
    let i = stability_range(&c).range().unwrap().i;
    assert_eq!(i, 1);
    let p = build_p(&c, i, PFlavor::Plain, &PBounds::default()).unwrap();
    assert_eq!(p.universe.len(), 5670);
    assert_eq!(p.member_count(), 189);
    assert!(p.certificate.holds());
    assert_eq!(p.certificate.clauses.len(), 3);
    for clause in &p.certificate.clauses {
        assert!(clause.pass, "{:?}", clause.clause);
        assert!(clause.failure.is_none());
    }
    assert!(matches!(
        p.certificate.clauses[0].clause,
        CertificateClause::DownwardClosure
    ));
    assert_eq!(p.certificate.clauses[0].checked, 1_035_909);

    // membership flags, kappa coverage and lookups stay consistent
    for (idx, t) in p.universe.iter().enumerate() {
        if p.kappas[idx] <= i {
            assert!(p.members[idx]);
        }
        assert_eq!(p.is_member(t), Some(p.members[idx]));
    }

    // the construction is deterministic
    let q = build_p(&c, i, PFlavor::Plain, &PBounds::default()).unwrap();
    assert_eq!(p.universe, q.universe);
    assert_eq!(p.members, q.members);
    assert_eq!(p.kappas, q.kappas);
}

#[test]
fn general_position_certificate_reports_the_obstruction() {
    let c = CurveContext::new(0, 10, vec![4, 4, 4], 3)
        .unwrap()
        .with_general_position();
    let range = stability_range(&c).range().cloned().unwrap();
    assert_eq!((range.m, range.i), (2, 2));
    let p = build_p(&c, range.i, PFlavor::GeneralPosition, &PBounds::default()).unwrap();
    assert_eq!(p.universe.len(), 15274);
    assert_eq!(p.member_count(), 85);
    assert!(!p.certificate.holds());
    // the coverage clause fails: a type with small kappa still exceeds the
    // per-direction budget after trading line letters for bottom letters
    let b = &p.certificate.clauses[1];
    assert!(matches!(b.clause, CertificateClause::KappaCoverage));
    assert!(!b.pass);
    let msg = b.failure.as_ref().expect("a failing clause names a witness");
    assert!(msg.contains("4*l1<=1*l1+3*0"), "{msg}");
    assert!(p.certificate.clauses[0].pass);
    assert!(p.certificate.clauses[2].pass);
}

#[test]
fn minus_one_curves_meet_in_pairs() {
    let curves = dp_minus_one_curves();
    assert_eq!(curves.len(), 10);
    let mut disjoint_pairs = 0;
    for (i, a) in curves.iter().enumerate() {
        assert_eq!(dp_pairing(a, a), -1);
        let disjoint_from = curves
            .iter()
            .filter(|b| *b != a && dp_pairing(a, b) == 0)
            .count();
        assert_eq!(disjoint_from, 6);
        for b in curves.iter().skip(i + 1) {
            let p = dp_pairing(a, b);
            assert!(p == 0 || p == 1);
            if p == 0 {
                disjoint_pairs += 1;
            }
        }
    }
    assert_eq!(disjoint_pairs, 30);

    let anti = DPClass::anticanonical();
    assert!(dp_is_ample(&anti));
    assert_eq!(dp_pairing(&anti, &anti), 5);
    for c in &curves {
        assert_eq!(dp_pairing(&anti, c), 1);
    }
    assert!(!dp_is_ample(&DPClass::new(1, [1, 1, 0, 0])));
}

#[test]
fn normalization_holds_on_seeded_ample_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let anti = DPClass::anticanonical();
    let mut seen = 0usize;
    while seen < 1000 {
        let d = rng.gen_range(1..=36i64);
        let n = [
            rng.gen_range(0..=12i64),
            rng.gen_range(0..=12i64),
            rng.gen_range(0..=12i64),
            rng.gen_range(0..=12i64),
        ];
        let a = DPClass::new(d, n);
        if !dp_is_ample(&a) {
            continue;
        }
        seen += 1;

        let norm = dp_normalize(&a).unwrap();
        let c = norm.class;
        assert!(c.n.windows(2).all(|w| w[0] >= w[1]), "{a} -> {c}");
        let distinct = (0..4).all(|x| (x + 1..4).all(|y| c.n[x] != c.n[y]));
        for i in 0..3 {
            for j in (i + 1)..3 {
                let bound = c.n[i] + c.n[j] + c.n[3];
                assert!(bound <= c.d, "{a} -> {c}");
                if distinct {
                    assert!(bound < c.d, "{a} -> {c}");
                }
            }
        }
        assert_eq!(dp_apply_word(&a, &norm.witness), c, "witness replays");
        let again = dp_normalize(&c).unwrap();
        assert_eq!(again.class, c);
        assert!(again.witness.is_empty());
        assert!(dp_is_ample(&c));
        assert_eq!(dp_pairing(&a, &anti), dp_pairing(&c, &anti));
        assert_eq!(dp_pairing(&a, &a), dp_pairing(&c, &c));

        // Cremona on a random triple is a pairing-preserving involution
        let omit = rng.gen_range(0..4usize);
        let mut triple = [0usize; 3];
        let mut k = 0;
        for idx in 0..4 {
            if idx != omit {
                triple[k] = idx;
                k += 1;
            }
        }
        let image = cremona(&a, triple).unwrap();
        assert_eq!(cremona(&image, triple).unwrap(), a);
        assert_eq!(dp_pairing(&image, &image), dp_pairing(&a, &a));
        assert_eq!(dp_pairing(&image, &anti), dp_pairing(&a, &anti));
        assert_eq!(cremona(&anti, triple).unwrap(), anti);
    }
    assert!(matches!(
        dp_normalize(&DPClass::new(1, [1, 1, 1, 1])),
        Err(StabilityError::NotAmple { .. })
    ));
    assert!(matches!(
        cremona(&anti, [0, 0, 2]),
        Err(StabilityError::BadCremonaTriple { .. })
    ));
}

#[test]
fn weyl_orbit_constants() {
    let weyl = weyl_group();
    assert_eq!(weyl.len(), 120);
    let mut mats: Vec<_> = weyl.iter().map(|w| w.matrix).collect();
    mats.sort();
    mats.dedup();
    assert_eq!(mats.len(), 120, "elements are pairwise distinct");

    let anti = DPClass::anticanonical();
    let a = DPClass::new(8, [4, 3, 2, 1]);
    for w in weyl.iter().step_by(7) {
        assert_eq!(w.apply(&anti), anti);
        let b = w.apply(&a);
        assert_eq!(dp_pairing(&b, &b), dp_pairing(&a, &a));
        assert_eq!(dp_apply_word(&a, &w.word), b, "the word tracks the matrix");
    }

    match n_alpha(&a).unwrap() {
        NAlphaOutcome::Feasible { n, class, argmax } => {
            assert_eq!(n, 3);
            assert_eq!(dp_apply_word(&a, &argmax), class);
            let slope = class.d - class.n.iter().sum::<i64>() + class.n.iter().max().unwrap();
            assert_eq!(slope, 3);
        }
        NAlphaOutcome::Infeasible => panic!("expected a feasible orbit image"),
    }
    // the anticanonical orbit is a fixed point with slope zero
    assert!(matches!(n_alpha(&anti).unwrap(), NAlphaOutcome::Infeasible));
    assert!(matches!(
        n_alpha(&DPClass::new(1, [1, 1, 1, 1])),
        Err(StabilityError::NotAmple { .. })
    ));
    // relabeling the points does not change the orbit maximum
    match (
        n_alpha(&a).unwrap(),
        n_alpha(&DPClass::new(8, [1, 2, 4, 3])).unwrap(),
    ) {
        (NAlphaOutcome::Feasible { n: n1, .. }, NAlphaOutcome::Feasible { n: n2, .. }) => {
            assert_eq!(n1, n2)
        }
        other => panic!("both orbits should be feasible: {other:?}"),
    }
}
