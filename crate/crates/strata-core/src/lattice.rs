//! Finite bounded meet-semilattices and plain finite posets.
//!
//! The central instance is the blowup poset `Q_r`: a bottom stratum `0`,
//! pairwise incomparable lines `l_1, .., l_r` and the ambient space `V` on
//! top, together with the even codimension weights (gamma) and the rank
//! weights that the census arithmetic consumes. Interval listing, Mobius
//! numbers and longest-chain lengths work over anything implementing
//! [`FinitePoset`], because chain-poset intervals show up later as plain
//! posets without any meet structure.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

/// Errors from lattice construction and interval queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// An element index was out of range for the element set.
    BadIndex { index: usize, len: usize },
    /// The element set was empty.
    Empty,
    /// A meet table row has the wrong length.
    RaggedTable { row: usize },
    /// meet(x, x) != x at the witness element.
    NotIdempotent { x: usize },
    /// meet(x, y) != meet(y, x) at the witness pair.
    NotCommutative { x: usize, y: usize },
    /// meet(meet(x, y), z) != meet(x, meet(y, z)) at the witness triple.
    NotAssociative { x: usize, y: usize, z: usize },
    /// meet(x, top) != x at the witness element.
    TopNotUnit { x: usize },
    /// The requested interval endpoints do not satisfy lo <= hi.
    NotComparable { lo: usize, hi: usize },
    /// An explicit order relation is missing x <= x.
    NotReflexive { x: usize },
    /// An explicit order relation has x <= y and y <= x for distinct x, y.
    NotAntisymmetric { x: usize, y: usize },
    /// An explicit order relation has x <= y <= z but not x <= z.
    NotTransitive { x: usize, y: usize, z: usize },
    /// Blowup poset parameters outside r >= 1, v >= 3.
    BadBlowupParameters { r: usize, v: u32 },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::BadIndex { index, len } => {
                write!(f, "element index {index} out of range for {len} elements")
            }
            LatticeError::Empty => write!(f, "lattice must have at least one element"),
            LatticeError::RaggedTable { row } => {
                write!(f, "meet table row {row} has the wrong length")
            }
            LatticeError::NotIdempotent { x } => write!(f, "meet table not idempotent at {x}"),
            LatticeError::NotCommutative { x, y } => {
                write!(f, "meet table not commutative at ({x}, {y})")
            }
            LatticeError::NotAssociative { x, y, z } => {
                write!(f, "meet table not associative at ({x}, {y}, {z})")
            }
            LatticeError::TopNotUnit { x } => {
                write!(f, "top element is not a unit for meet at {x}")
            }
            LatticeError::NotComparable { lo, hi } => {
                write!(f, "interval endpoints not ordered: {lo} <= {hi} fails")
            }
            LatticeError::NotReflexive { x } => write!(f, "relation not reflexive at {x}"),
            LatticeError::NotAntisymmetric { x, y } => {
                write!(f, "relation not antisymmetric at ({x}, {y})")
            }
            LatticeError::NotTransitive { x, y, z } => {
                write!(f, "relation not transitive at ({x}, {y}, {z})")
            }
            LatticeError::BadBlowupParameters { r, v } => {
                write!(f, "blowup poset needs r >= 1 and v >= 3, got r = {r}, v = {v}")
            }
        }
    }
}

impl core::error::Error for LatticeError {}

/// Read access to a finite poset through element indices `0..len()`.
///
/// Implementations must provide a genuine partial order; the constructors in
/// this module validate that up front so queries can trust it.
pub trait FinitePoset {
    fn len(&self) -> usize;

    /// Whether `x <= y`. Both indices must be in range.
    fn leq(&self, x: usize, y: usize) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite meet-semilattice with a top element, held as a validated total
/// meet table. The order is the one induced by the table:
/// `x <= y` exactly when `meet(x, y) = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    names: Vec<String>,
    top: usize,
    /// Row-major `len * len` meet table.
    meet: Vec<usize>,
    bottom: Option<usize>,
}

impl MeetSemilattice {
    /// Builds a semilattice from element names, the top index and a total
    /// meet table, validating idempotence, commutativity, associativity and
    /// the top-unit law by full table scans.
    pub fn new(
        names: Vec<String>,
        top: usize,
        table: &[Vec<usize>],
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if top >= n {
            return Err(LatticeError::BadIndex { index: top, len: n });
        }
        if table.len() != n {
            return Err(LatticeError::RaggedTable { row: table.len() });
        }
        let mut meet = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(LatticeError::RaggedTable { row });
            }
            for &value in entries {
                if value >= n {
                    return Err(LatticeError::BadIndex { index: value, len: n });
                }
                meet.push(value);
            }
        }
        let at = |x: usize, y: usize| meet[x * n + y];
        for x in 0..n {
            if at(x, x) != x {
                return Err(LatticeError::NotIdempotent { x });
            }
            if at(x, top) != x {
                return Err(LatticeError::TopNotUnit { x });
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if at(x, y) != at(y, x) {
                    return Err(LatticeError::NotCommutative { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(LatticeError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        // With the laws above, x <= y :<=> meet(x, y) = x is automatically a
        // partial order with maximum top, so no further order validation is
        // needed. A bottom exists iff some element meets everything to itself.
        let bottom = (0..n).find(|&b| (0..n).all(|y| at(b, y) == b));
        Ok(MeetSemilattice {
            names,
            top,
            meet,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    /// Indices of all non-top elements, ascending.
    pub fn non_top_elements(&self) -> impl Iterator<Item = usize> + '_ {
        let top = self.top;
        (0..self.len()).filter(move |&x| x != top)
    }
}

impl FinitePoset for MeetSemilattice {
    fn len(&self) -> usize {
        self.names.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        MeetSemilattice::leq(self, x, y)
    }
}

/// A plain finite poset given by an explicit validated order relation.
///
/// Used wherever an interval of the chain poset has to be treated as a poset
/// in its own right, for Mobius recursion and order complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// Row-major incidence of the reflexive relation `x <= y`.
    rel: Vec<bool>,
}

impl Poset {
    /// Builds a poset from a relation closure, validating reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_relation(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                rel[x * n + y] = leq(x, y);
            }
        }
        let at = |x: usize, y: usize| rel[x * n + y];
        for x in 0..n {
            if !at(x, x) {
                return Err(LatticeError::NotReflexive { x });
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if at(x, y) && at(y, x) {
                    return Err(LatticeError::NotAntisymmetric { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && at(x, y) {
                    for z in 0..n {
                        if y != z && at(y, z) && !at(x, z) {
                            return Err(LatticeError::NotTransitive { x, y, z });
                        }
                    }
                }
            }
        }
        Ok(Poset { n, rel })
    }
}

impl FinitePoset for Poset {
    fn len(&self) -> usize {
        self.n
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.n + y]
    }
}

/// The blowup poset `Q_r` with its gamma and rank weight tables.
///
/// Element indexing is fixed: index 0 is the bottom stratum `0`, indices
/// `1..=r` are the lines `l_1, .., l_r`, and index `r + 1` is the top `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupPoset {
    lattice: MeetSemilattice,
    r: usize,
    ambient_dim: u32,
    gamma_weights: Vec<u64>,
    rank_weights: Vec<u64>,
}

/// Builds the blowup poset on `r` lines inside an ambient space of complex
/// dimension `v`: the order is `0 < l_i < V` with the lines pairwise
/// incomparable, `meet(l_i, l_j) = 0` for `i != j`, and the weight tables
/// `gamma(0) = 2v`, `gamma(l_i) = 2(v - 1)`, `gamma(V) = 0`,
/// `rank(0) = 2`, `rank(l_i) = 1`, `rank(V) = 0`.
pub fn build_blowup_poset(r: usize, v: u32) -> Result<BlowupPoset, LatticeError> {
    if r == 0 || v < 3 {
        return Err(LatticeError::BadBlowupParameters { r, v });
    }
    let n = r + 2;
    let top = r + 1;
    let mut names = Vec::with_capacity(n);
    names.push(String::from("0"));
    for i in 1..=r {
        names.push(format!("l{i}"));
    }
    names.push(String::from("V"));
    let meet_of = |x: usize, y: usize| -> usize {
        if x == y {
            x
        } else if x == top {
            y
        } else if y == top {
            x
        } else {
            // Distinct non-top elements: a line meets anything else in 0.
            0
        }
    };
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| meet_of(x, y)).collect())
        .collect();
    let lattice = MeetSemilattice::new(names, top, &table)?;
    debug_assert_eq!(lattice.bottom(), Some(0));
    let mut gamma_weights = vec![0u64; n];
    let mut rank_weights = vec![0u64; n];
    gamma_weights[0] = 2 * u64::from(v);
    rank_weights[0] = 2;
    for i in 1..=r {
        gamma_weights[i] = 2 * (u64::from(v) - 1);
        rank_weights[i] = 1;
    }
    Ok(BlowupPoset {
        lattice,
        r,
        ambient_dim: v,
        gamma_weights,
        rank_weights,
    })
}

impl BlowupPoset {
    pub fn lattice(&self) -> &MeetSemilattice {
        &self.lattice
    }

    /// Number of lines.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Complex dimension of the ambient space.
    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    /// Index of the bottom stratum `0`.
    pub fn bottom_index(&self) -> usize {
        0
    }

    /// Index of the line `l_i` for `i` in `1..=r`.
    pub fn line_index(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.r);
        i
    }

    pub fn top_index(&self) -> usize {
        self.r + 1
    }

    pub fn is_line(&self, x: usize) -> bool {
        x >= 1 && x <= self.r
    }

    pub fn gamma_weight(&self, x: usize) -> u64 {
        self.gamma_weights[x]
    }

    pub fn rank_weight(&self, x: usize) -> u64 {
        self.rank_weights[x]
    }

    pub fn gamma_weights(&self) -> &[u64] {
        &self.gamma_weights
    }

    pub fn rank_weights(&self) -> &[u64] {
        &self.rank_weights
    }
}

impl FinitePoset for BlowupPoset {
    fn len(&self) -> usize {
        self.lattice.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.lattice.leq(x, y)
    }
}

fn check_interval<P: FinitePoset + ?Sized>(
    p: &P,
    lo: usize,
    hi: usize,
) -> Result<(), LatticeError> {
    let n = p.len();
    if lo >= n {
        return Err(LatticeError::BadIndex { index: lo, len: n });
    }
    if hi >= n {
        return Err(LatticeError::BadIndex { index: hi, len: n });
    }
    if !p.leq(lo, hi) {
        return Err(LatticeError::NotComparable { lo, hi });
    }
    Ok(())
}

/// All `z` with `lo <= z <= hi`, honoring the openness flags, ascending by
/// element index.
pub fn interval_elements<P: FinitePoset + ?Sized>(
    p: &P,
    lo: usize,
    hi: usize,
    open_lo: bool,
    open_hi: bool,
) -> Result<Vec<usize>, LatticeError> {
    check_interval(p, lo, hi)?;
    Ok((0..p.len())
        .filter(|&z| {
            p.leq(lo, z)
                && p.leq(z, hi)
                && !(open_lo && z == lo)
                && !(open_hi && z == hi)
        })
        .collect())
}

/// The Mobius number of the closed interval `[lo, hi]`, computed by the
/// defining recursion: the sum of `mobius(lo, z)` over `lo <= z <= hi` is 1
/// when `lo = hi` and 0 otherwise.
pub fn mobius<P: FinitePoset + ?Sized>(p: &P, lo: usize, hi: usize) -> Result<i64, LatticeError> {
    check_interval(p, lo, hi)?;
    let zs = interval_elements(p, lo, hi, false, false)?;
    // Process elements in an order compatible with the partial order so every
    // strictly smaller value is available when needed.
    let mut order: Vec<usize> = (0..zs.len()).collect();
    order.sort_by_key(|&i| zs.iter().filter(|&&w| p.leq(w, zs[i])).count());
    let mut mu = vec![0i64; zs.len()];
    for &i in &order {
        let z = zs[i];
        if z == lo {
            mu[i] = 1;
        } else {
            let mut below = 0i64;
            for (j, &w) in zs.iter().enumerate() {
                if w != z && p.leq(w, z) {
                    below += mu[j];
                }
            }
            mu[i] = -below;
        }
    }
    let hi_pos = zs.iter().position(|&z| z == hi).expect("hi is in its own interval");
    Ok(mu[hi_pos])
}

/// The length (number of strict steps) of the longest chain from `lo` up to
/// `hi`.
pub fn maximal_chain_lengths<P: FinitePoset + ?Sized>(
    p: &P,
    lo: usize,
    hi: usize,
) -> Result<u32, LatticeError> {
    check_interval(p, lo, hi)?;
    let zs = interval_elements(p, lo, hi, false, false)?;
    let mut order: Vec<usize> = (0..zs.len()).collect();
    order.sort_by_key(|&i| zs.iter().filter(|&&w| p.leq(w, zs[i])).count());
    let mut longest = vec![0u32; zs.len()];
    for &i in &order {
        let z = zs[i];
        if z == lo {
            longest[i] = 0;
        } else {
            let mut best = 0;
            for (j, &w) in zs.iter().enumerate() {
                if w != z && p.leq(w, z) {
                    best = best.max(longest[j] + 1);
                }
            }
            longest[i] = best;
        }
    }
    let hi_pos = zs.iter().position(|&z| z == hi).expect("hi is in its own interval");
    Ok(longest[hi_pos])
}

/// The Boolean lattice on `atoms` atoms, elements indexed by bitmask with
/// meet given by intersection. Used as a reference instance in checks.
pub fn boolean_lattice(atoms: u32) -> MeetSemilattice {
    assert!(atoms <= 6, "reference Boolean lattices are meant to be small");
    let n = 1usize << atoms;
    let names: Vec<String> = (0..n).map(|mask| format!("b{mask:0width$b}", width = atoms as usize)).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| x & y).collect()).collect();
    MeetSemilattice::new(names, n - 1, &table).expect("intersection satisfies the semilattice laws")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_poset_shape_and_weights() {
        let q = build_blowup_poset(3, 3).unwrap();
        assert_eq!(q.lattice().len(), 5);
        assert_eq!(q.lattice().bottom(), Some(0));
        assert_eq!(q.lattice().top(), 4);
        for i in 1..=3 {
            assert!(q.leq(0, i));
            assert!(q.leq(i, q.top_index()));
            assert_eq!(q.gamma_weight(i), 4);
            assert_eq!(q.rank_weight(i), 1);
        }
        assert_eq!(q.gamma_weight(0), 6);
        assert_eq!(q.rank_weight(0), 2);
        assert_eq!(q.gamma_weight(q.top_index()), 0);
        assert!(!q.leq(1, 2));
        assert!(!q.leq(2, 1));
        assert_eq!(q.lattice().meet(1, 2), 0);

        let q14 = build_blowup_poset(2, 4).unwrap();
        assert_eq!(q14.gamma_weight(1), 6);
        assert_eq!(q14.gamma_weight(0), 8);
    }

    #[test]
    fn blowup_poset_rejects_bad_parameters() {
        assert!(matches!(
            build_blowup_poset(0, 3),
            Err(LatticeError::BadBlowupParameters { .. })
        ));
        assert!(matches!(
            build_blowup_poset(2, 2),
            Err(LatticeError::BadBlowupParameters { .. })
        ));
    }

    #[test]
    fn interval_listing() {
        let q = build_blowup_poset(3, 3).unwrap();
        let open = interval_elements(q.lattice(), 0, 4, true, true).unwrap();
        assert_eq!(open, vec![1, 2, 3]);
        let closed = interval_elements(q.lattice(), 0, 1, false, false).unwrap();
        assert_eq!(closed, vec![0, 1]);
        let q2 = build_blowup_poset(2, 3).unwrap();
        assert_eq!(
            interval_elements(q2.lattice(), 0, 3, false, false).unwrap().len(),
            4
        );
        assert!(matches!(
            interval_elements(q.lattice(), 1, 2, false, false),
            Err(LatticeError::NotComparable { .. })
        ));
    }

    #[test]
    fn mobius_examples() {
        for r in 1..=4 {
            let q = build_blowup_poset(r, 3).unwrap();
            assert_eq!(mobius(q.lattice(), 0, q.top_index()).unwrap(), r as i64 - 1);
            assert_eq!(mobius(q.lattice(), 1, 1).unwrap(), 1);
        }
        let b3 = boolean_lattice(3);
        assert_eq!(mobius(&b3, 0, b3.top()).unwrap(), -1);
        let b4 = boolean_lattice(4);
        assert_eq!(mobius(&b4, 0, b4.top()).unwrap(), 1);
    }

    #[test]
    fn mobius_row_sums_vanish() {
        let q = build_blowup_poset(3, 3).unwrap();
        let b3 = boolean_lattice(3);
        for lat in [q.lattice(), &b3] {
            for lo in 0..lat.len() {
                for hi in 0..lat.len() {
                    if lat.leq(lo, hi) {
                        let mut sum = 0;
                        for z in interval_elements(lat, lo, hi, false, false).unwrap() {
                            sum += mobius(lat, lo, z).unwrap();
                        }
                        assert_eq!(sum, i64::from(lo == hi));
                    }
                }
            }
        }
    }

    #[test]
    fn chain_lengths() {
        let q = build_blowup_poset(2, 3).unwrap();
        assert_eq!(maximal_chain_lengths(q.lattice(), 0, 3).unwrap(), 2);
        assert_eq!(maximal_chain_lengths(q.lattice(), 1, 1).unwrap(), 0);
        let b4 = boolean_lattice(4);
        assert_eq!(maximal_chain_lengths(&b4, 0, b4.top()).unwrap(), 4);
    }

    #[test]
    fn poset_validation() {
        assert!(Poset::from_relation(3, |x, y| x <= y).is_ok());
        assert!(matches!(
            Poset::from_relation(2, |_, _| true),
            Err(LatticeError::NotAntisymmetric { .. })
        ));
        assert!(matches!(
            Poset::from_relation(2, |x, y| x == y && x == 0),
            Err(LatticeError::NotReflexive { .. })
        ));
        // 0 <= 1 <= 2 without 0 <= 2 fails transitivity.
        assert!(matches!(
            Poset::from_relation(3, |x, y| x == y || (x + 1 == y)),
            Err(LatticeError::NotTransitive { .. })
        ));
    }

    #[test]
    fn meet_table_validation_witnesses() {
        // A table where top is not a unit.
        let names = vec![String::from("a"), String::from("b")];
        let bad = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            MeetSemilattice::new(names.clone(), 1, &bad),
            Err(LatticeError::NotIdempotent { x: 1 })
        ));
        let good = vec![vec![0, 0], vec![0, 1]];
        let lat = MeetSemilattice::new(names, 1, &good).unwrap();
        assert_eq!(lat.bottom(), Some(0));
        assert!(lat.leq(0, 1));
    }
}
