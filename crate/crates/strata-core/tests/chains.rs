//! Saturation as a closure operator and the cover/essential catalogue over
//! the blowup family, checked exhaustively on small depth windows and on
//! randomized depth vectors.

use proptest::prelude::*;
use strata_core::chains::{
    blowup_chain, chain_join, chain_leq, chain_to_word, covers_above, crosscut_join,
    enumerate_saturated_chains, essential_above, is_essential_pair, is_saturated, render_word,
    saturate, word_to_depths, Chain, DepthFunction,
};
use strata_core::lattice::{build_blowup_poset, BlowupPoset};

/// Every monotone depth vector on the poset with entries up to `max`.
fn depth_functions_up_to(bp: &BlowupPoset, max: u32) -> Vec<DepthFunction> {
    let lat = bp.lattice();
    let n = lat.len();
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    'outer: loop {
        if let Ok(g) = DepthFunction::new(lat, v.clone()) {
            out.push(g);
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            if i == lat.top() {
                i += 1;
                continue;
            }
            if v[i] < max {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
    out
}

#[test]
fn saturation_is_a_closure_operator() {
    for r in 1..=3 {
        let bp = build_blowup_poset(r, 3).unwrap();
        let lat = bp.lattice();
        let all = depth_functions_up_to(&bp, 3);
        for g in &all {
            let s = saturate(lat, g);
            assert!(g.pointwise_leq(s.depths()), "extensive at {g:?}");
            assert_eq!(&saturate(lat, s.depths()), &s, "idempotent at {g:?}");
            assert!(is_saturated(lat, s.depths()));
            assert_eq!(
                s.total_depth(),
                g.total_depth(),
                "saturation keeps the maximum depth"
            );
        }
        for g in &all {
            for h in &all {
                if g.pointwise_leq(h) {
                    assert!(
                        chain_leq(&saturate(lat, g), &saturate(lat, h)),
                        "monotone at {g:?} <= {h:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn saturation_is_left_adjoint_to_inclusion() {
    for r in 1..=3 {
        let bp = build_blowup_poset(r, 3).unwrap();
        let lat = bp.lattice();
        let chains = enumerate_saturated_chains(lat, 3);
        for g in depth_functions_up_to(&bp, 3) {
            let s = saturate(lat, &g);
            for c in &chains {
                assert_eq!(
                    chain_leq(&s, c),
                    g.pointwise_leq(c.depths()),
                    "adjunction at {g:?} against {c:?}"
                );
            }
        }
    }
}

#[test]
fn essential_catalogue_over_line_chains() {
    // over a pure line chain there are exactly two covers (raise the line
    // letter, or trade one of them for a bottom letter) and their join
    for r in 1..=3 {
        let bp = build_blowup_poset(r, 3).unwrap();
        let lat = bp.lattice();
        for i in 1..=r {
            for d in 1..=3u32 {
                let w = blowup_chain(&bp, 0, i, d);
                let got: Vec<Chain> = essential_above(lat, &w, d + 1)
                    .unwrap()
                    .into_iter()
                    .map(|(c, _)| c)
                    .collect();
                let mut expected = vec![
                    blowup_chain(&bp, 0, i, d + 1),
                    blowup_chain(&bp, 1, i, d - 1),
                    blowup_chain(&bp, 1, i, d),
                ];
                expected.sort();
                assert_eq!(got, expected, "r={r} i={i} d={d}");
            }
        }
    }
}

#[test]
fn essential_catalogue_over_the_trivial_chain() {
    // the atoms are the line singletons; any two of them join to a single
    // bottom letter, which therefore appears exactly when r >= 2
    for r in 1..=3usize {
        let bp = build_blowup_poset(r, 3).unwrap();
        let lat = bp.lattice();
        let got: Vec<Chain> = essential_above(lat, &Chain::trivial(lat), 1)
            .unwrap()
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        let mut expected: Vec<Chain> = (1..=r).map(|i| blowup_chain(&bp, 0, i, 1)).collect();
        if r >= 2 {
            expected.push(blowup_chain(&bp, 1, 1, 0));
        }
        expected.sort();
        assert_eq!(got, expected, "r={r}");
    }
}

#[test]
fn essentials_agree_with_the_pair_test() {
    let bp = build_blowup_poset(3, 3).unwrap();
    let lat = bp.lattice();
    let chains = enumerate_saturated_chains(lat, 4);
    for w in &chains {
        let essentials = essential_above(lat, w, w.total_depth() + 1).unwrap();
        for (x, witness) in &essentials {
            assert!(is_essential_pair(lat, w, x).unwrap());
            assert!(!witness.is_empty());
            let mut join = witness[0].clone();
            for s in &witness[1..] {
                join = chain_join(lat, &join, s);
            }
            assert_eq!(&join, x, "witness joins back to its element");
        }
        // anything inside the budget window but not listed is not essential
        for x in &chains {
            if chain_leq(w, x) && w != x && x.total_depth() <= w.total_depth() + 1 {
                assert_eq!(
                    essentials.iter().any(|(e, _)| e == x),
                    is_essential_pair(lat, w, x).unwrap(),
                    "{w:?} vs {x:?}"
                );
            }
        }
    }
}

#[test]
fn join_is_the_least_upper_bound() {
    let bp = build_blowup_poset(2, 3).unwrap();
    let lat = bp.lattice();
    let small = enumerate_saturated_chains(lat, 3);
    let window = enumerate_saturated_chains(lat, 6);
    for a in &small {
        for b in &small {
            let j = chain_join(lat, a, b);
            assert!(chain_leq(a, &j) && chain_leq(b, &j));
            assert_eq!(j.total_depth(), a.total_depth().max(b.total_depth()));
            assert_eq!(j, chain_join(lat, b, a));
            for c in &window {
                if chain_leq(a, c) && chain_leq(b, c) {
                    assert!(chain_leq(&j, c), "join of {a:?}, {b:?} not below {c:?}");
                }
            }
        }
    }
}

#[test]
fn crosscut_join_is_the_largest_essential_inside_an_interval() {
    let bp = build_blowup_poset(2, 3).unwrap();
    let lat = bp.lattice();
    let chains = enumerate_saturated_chains(lat, 4);
    for w in &chains {
        for x in &chains {
            if !chain_leq(w, x) {
                continue;
            }
            let cc = crosscut_join(lat, w, x).unwrap();
            assert!(chain_leq(w, &cc) && chain_leq(&cc, x));
            assert!(is_essential_pair(lat, w, &cc).unwrap());
            assert_eq!(&cc == x, is_essential_pair(lat, w, x).unwrap());
            for (e, _) in essential_above(lat, w, x.total_depth()).unwrap() {
                if chain_leq(&e, x) {
                    assert!(chain_leq(&e, &cc));
                }
            }
        }
    }
}

#[test]
fn words_and_depths_are_mutually_inverse() {
    for r in 1..=3 {
        let bp = build_blowup_poset(r, 4).unwrap();
        let lat = bp.lattice();
        for c in enumerate_saturated_chains(lat, 4) {
            let word = chain_to_word(lat, c.depths()).unwrap();
            assert_eq!(word, c.word());
            assert_eq!(word_to_depths(lat, &word).unwrap(), c);
        }
    }
}

#[test]
fn words_render_largest_letter_first() {
    let bp = build_blowup_poset(2, 3).unwrap();
    let lat = bp.lattice();
    assert_eq!(render_word(lat, blowup_chain(&bp, 1, 1, 2).word()), "2*l1+1*0");
    assert_eq!(render_word(lat, blowup_chain(&bp, 0, 2, 3).word()), "3*l2");
    assert_eq!(render_word(lat, blowup_chain(&bp, 2, 1, 0).word()), "2*0");
    assert_eq!(render_word(lat, Chain::trivial(lat).word()), "trivial");
}

#[test]
fn covers_never_overshoot_the_depth_budget() {
    let bp = build_blowup_poset(3, 3).unwrap();
    let lat = bp.lattice();
    for c in enumerate_saturated_chains(lat, 3) {
        let covers = covers_above(lat, &c, c.total_depth() + 1).unwrap();
        for s in &covers {
            assert!(chain_leq(&c, s) && &c != s);
            assert!(s.total_depth() <= c.total_depth() + 1);
            // nothing else in the cover set sits strictly between
            for t in &covers {
                assert!(t == s || !(chain_leq(t, s) && t != s));
            }
        }
        // widening the budget adds no new covers
        assert_eq!(covers, covers_above(lat, &c, c.total_depth() + 3).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_depth_vectors_saturate_consistently(raw in proptest::collection::vec(0u32..6, 4)) {
        let bp = build_blowup_poset(3, 3).unwrap();
        let lat = bp.lattice();
        // force monotonicity by lifting each line to at least the bottom value
        let mut v = vec![0u32; 5];
        v[0] = raw[0];
        for i in 1..=3 {
            v[i] = v[0].max(raw[i]);
        }
        let g = DepthFunction::new(lat, v).unwrap();
        let s = saturate(lat, &g);
        prop_assert!(g.pointwise_leq(s.depths()));
        prop_assert!(is_saturated(lat, s.depths()));
        prop_assert_eq!(s.total_depth(), g.total_depth());
        let letters: u32 = s.word().iter().map(|&(_, m)| m).sum();
        prop_assert_eq!(letters, s.total_depth());
    }

    #[test]
    fn random_pairs_join_above_both(a in (0u32..4, 0usize..3, 0u32..4), b in (0u32..4, 0usize..3, 0u32..4)) {
        let bp = build_blowup_poset(3, 3).unwrap();
        let lat = bp.lattice();
        let ca = blowup_chain(&bp, a.0, a.1 + 1, a.2);
        let cb = blowup_chain(&bp, b.0, b.1 + 1, b.2);
        let j = chain_join(lat, &ca, &cb);
        prop_assert!(chain_leq(&ca, &j) && chain_leq(&cb, &j));
        prop_assert_eq!(j.total_depth(), ca.total_depth().max(cb.total_depth()));
    }
}
