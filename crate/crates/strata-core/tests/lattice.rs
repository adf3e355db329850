//! Cross checks of the poset layer against closed forms: Mobius numbers of
//! the blowup family and of Boolean lattices, chain heights versus rank
//! weights, and the defining Mobius recursion restated as a row-sum
//! identity.

use strata_core::lattice::{
    boolean_lattice, build_blowup_poset, interval_elements, maximal_chain_lengths, mobius,
};

#[test]
fn blowup_mobius_closed_form() {
    for r in 1..=6 {
        let q = build_blowup_poset(r, 3).unwrap();
        let lat = q.lattice();
        let (bottom, top) = (q.bottom_index(), q.top_index());
        assert_eq!(mobius(lat, bottom, top).unwrap(), r as i64 - 1);
        assert_eq!(mobius(lat, bottom, bottom).unwrap(), 1);
        for i in 1..=r {
            let line = q.line_index(i);
            assert_eq!(mobius(lat, bottom, line).unwrap(), -1);
            assert_eq!(mobius(lat, line, top).unwrap(), -1);
        }
    }
}

#[test]
fn mobius_row_sums_vanish() {
    let q = build_blowup_poset(4, 3).unwrap();
    let lat = q.lattice();
    for lo in 0..lat.len() {
        for hi in 0..lat.len() {
            if !lat.leq(lo, hi) {
                continue;
            }
            let mut sum = 0i64;
            for z in interval_elements(lat, lo, hi, false, false).unwrap() {
                sum += mobius(lat, lo, z).unwrap();
            }
            assert_eq!(sum, i64::from(lo == hi), "interval [{lo}, {hi}]");
        }
    }
}

#[test]
fn boolean_mobius_alternates_with_corank() {
    for atoms in 0..=5u32 {
        let b = boolean_lattice(atoms);
        let bottom = b.bottom().unwrap();
        let top = b.top();
        let expect = if atoms % 2 == 0 { 1 } else { -1 };
        assert_eq!(mobius(&b, bottom, top).unwrap(), expect);
        assert_eq!(maximal_chain_lengths(&b, bottom, top).unwrap(), atoms);
    }
    // every subinterval of a Boolean lattice is Boolean on the mask
    // difference, so the sign is read off the popcount
    let b = boolean_lattice(4);
    for lo in 0..b.len() {
        for hi in 0..b.len() {
            if b.leq(lo, hi) {
                let k = (hi & !lo).count_ones();
                let expect = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(mobius(&b, lo, hi).unwrap(), expect, "[{lo:#b}, {hi:#b}]");
            }
        }
    }
}

#[test]
fn rank_weight_equals_chain_height_to_the_top() {
    for r in 1..=4 {
        let q = build_blowup_poset(r, 5).unwrap();
        let lat = q.lattice();
        for x in 0..lat.len() {
            let height = maximal_chain_lengths(lat, x, q.top_index()).unwrap();
            assert_eq!(u64::from(height), q.rank_weight(x));
        }
    }
}

#[test]
fn interval_openness_flags() {
    let q = build_blowup_poset(3, 3).unwrap();
    let lat = q.lattice();
    let closed = interval_elements(lat, 0, lat.top(), false, false).unwrap();
    assert_eq!(closed, vec![0, 1, 2, 3, 4]);
    let open = interval_elements(lat, 0, lat.top(), true, true).unwrap();
    assert_eq!(open, vec![1, 2, 3]);
    assert!(interval_elements(lat, 1, 2, false, false).is_err());
    assert!(mobius(lat, 2, 1).is_err());
}

#[test]
fn gamma_weights_scale_with_the_ambient_dimension() {
    for v in 3..=6u32 {
        let q = build_blowup_poset(2, v).unwrap();
        assert_eq!(q.gamma_weight(q.bottom_index()), u64::from(2 * v));
        assert_eq!(q.gamma_weight(q.line_index(1)), u64::from(2 * (v - 1)));
        assert_eq!(q.gamma_weight(q.top_index()), 0);
        assert_eq!(q.ambient_dim(), v);
    }
    assert!(build_blowup_poset(0, 3).is_err());
    assert!(build_blowup_poset(2, 2).is_err());
}
