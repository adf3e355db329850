//! Depth functions and the chain poset over a meet-semilattice.
//!
//! A depth function assigns a multiplicity to every non-top element of the
//! lattice, compatibly with the order. Saturation is the closure operator
//! that makes a depth function meet-preserving; its fixed points are the
//! chains, which admit an equivalent word form: the weakly increasing list
//! of lattice elements `f(1) <= f(2) <= ..` recovered from the up-sets
//! `{q : g(q) >= n}`. On the blowup poset the words are exactly the
//! `m_0*0 + m_l*l_j` expressions.
//!
//! The order on chains is pointwise comparison of depths, making the trivial
//! chain the smallest element. Covers, essential elements above a chain and
//! the crosscut join are all computed by explicit enumeration inside a
//! caller-supplied depth budget.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;

use crate::lattice::{BlowupPoset, LatticeError, MeetSemilattice, Poset};

/// Errors from chain construction and chain-poset queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    /// A depth vector length does not match the lattice size.
    ArityMismatch { expected: usize, got: usize },
    /// The slot for the top element must stay zero.
    TopDepthNonzero,
    /// Depths decrease along the order at the witness pair.
    OrderIncompatible { lower: usize, upper: usize },
    /// The operation requires a saturated depth function.
    NotSaturated,
    /// The depth budget cannot even accommodate the input chain.
    BudgetTooSmall { budget: u32, required: u32 },
    /// The requested pair of chains is not ordered.
    NotComparable,
    /// A word contains two incomparable letters.
    WordNotChain { a: usize, b: usize },
    /// A word letter is out of range or equal to the top element.
    BadLetter { index: usize },
    /// Subset enumeration over this many covers is not supported.
    CoverSetTooLarge { count: usize },
    /// An underlying poset construction failed.
    Lattice(LatticeError),
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::ArityMismatch { expected, got } => {
                write!(f, "depth vector has {got} entries, lattice has {expected} elements")
            }
            ChainError::TopDepthNonzero => write!(f, "top element must have depth zero"),
            ChainError::OrderIncompatible { lower, upper } => {
                write!(f, "depths not order-compatible at {lower} <= {upper}")
            }
            ChainError::NotSaturated => write!(f, "depth function is not saturated"),
            ChainError::BudgetTooSmall { budget, required } => {
                write!(f, "depth budget {budget} is below the chain's total depth {required}")
            }
            ChainError::NotComparable => write!(f, "chains are not comparable"),
            ChainError::WordNotChain { a, b } => {
                write!(f, "word letters {a} and {b} are incomparable")
            }
            ChainError::BadLetter { index } => write!(f, "invalid word letter {index}"),
            ChainError::CoverSetTooLarge { count } => {
                write!(f, "refusing to enumerate subsets of {count} covers")
            }
            ChainError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ChainError {}

impl From<LatticeError> for ChainError {
    fn from(e: LatticeError) -> Self {
        ChainError::Lattice(e)
    }
}

/// An order-compatible assignment of multiplicities to the non-top lattice
/// elements, stored as a dense vector indexed like the lattice (the top slot
/// is kept at zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DepthFunction {
    depths: Vec<u32>,
}

impl DepthFunction {
    /// Validates arity, the zero top slot and order-compatibility
    /// (`q <= q'` forces `depths[q] <= depths[q']` among non-top elements).
    pub fn new(lat: &MeetSemilattice, depths: Vec<u32>) -> Result<Self, ChainError> {
        if depths.len() != lat.len() {
            return Err(ChainError::ArityMismatch {
                expected: lat.len(),
                got: depths.len(),
            });
        }
        if depths[lat.top()] != 0 {
            return Err(ChainError::TopDepthNonzero);
        }
        for x in lat.non_top_elements() {
            for y in lat.non_top_elements() {
                if x != y && lat.leq(x, y) && depths[x] > depths[y] {
                    return Err(ChainError::OrderIncompatible { lower: x, upper: y });
                }
            }
        }
        Ok(DepthFunction { depths })
    }

    /// The all-zero depth function.
    pub fn trivial(lat: &MeetSemilattice) -> Self {
        DepthFunction {
            depths: vec![0; lat.len()],
        }
    }

    /// Internal constructor for enumeration loops that produce vectors which
    /// are order-compatible by construction.
    pub(crate) fn from_raw_unchecked(depths: Vec<u32>) -> Self {
        DepthFunction { depths }
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn value(&self, x: usize) -> u32 {
        self.depths[x]
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    /// Maximum depth over all elements; equals the word length for chains.
    pub fn total_depth(&self) -> u32 {
        self.depths.iter().copied().max().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.depths.iter().all(|&d| d == 0)
    }

    /// Pointwise sum, used when two configurations collide at a point.
    pub fn pointwise_sum(&self, other: &DepthFunction) -> DepthFunction {
        assert_eq!(self.len(), other.len(), "depth arity mismatch");
        DepthFunction {
            depths: self
                .depths
                .iter()
                .zip(&other.depths)
                .map(|(&a, &b)| a.checked_add(b).expect("depth overflow"))
                .collect(),
        }
    }

    pub fn pointwise_max(&self, other: &DepthFunction) -> DepthFunction {
        assert_eq!(self.len(), other.len(), "depth arity mismatch");
        DepthFunction {
            depths: self
                .depths
                .iter()
                .zip(&other.depths)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn pointwise_min(&self, other: &DepthFunction) -> DepthFunction {
        assert_eq!(self.len(), other.len(), "depth arity mismatch");
        DepthFunction {
            depths: self
                .depths
                .iter()
                .zip(&other.depths)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    /// Pointwise order on depth functions; this is the chain order once both
    /// sides are saturated.
    pub fn pointwise_leq(&self, other: &DepthFunction) -> bool {
        assert_eq!(self.len(), other.len(), "depth arity mismatch");
        self.depths.iter().zip(&other.depths).all(|(&a, &b)| a <= b)
    }
}

// The derived ordering would compare vectors purely lexicographically; lists
// and map keys throughout the crate instead use (total depth, depths) so
// shallower functions always come first. This is a canonical storage order,
// not the chain order, which is `pointwise_leq`.
impl Ord for DepthFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_depth()
            .cmp(&other.total_depth())
            .then_with(|| self.depths.cmp(&other.depths))
    }
}

impl PartialOrd for DepthFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A saturated depth function together with its derived word form.
///
/// The word lists `(element, multiplicity)` groups in increasing element
/// order, so on the blowup poset a chain reads `[(0, m_0), (l_j, m_l)]`.
/// Values of this type are only produced by operations that guarantee
/// saturation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    g: DepthFunction,
    word: Vec<(usize, u32)>,
}

impl Chain {
    pub fn trivial(lat: &MeetSemilattice) -> Self {
        Chain {
            g: DepthFunction::trivial(lat),
            word: Vec::new(),
        }
    }

    pub fn depths(&self) -> &DepthFunction {
        &self.g
    }

    /// Word form as run-length pairs, ascending along the lattice order.
    pub fn word(&self) -> &[(usize, u32)] {
        &self.word
    }

    pub fn total_depth(&self) -> u32 {
        self.g.total_depth()
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    /// Multiplicity of one lattice element in the word form.
    pub fn word_multiplicity(&self, x: usize) -> u32 {
        self.word
            .iter()
            .find(|&&(e, _)| e == x)
            .map_or(0, |&(_, m)| m)
    }
}

// Same storage-order convention as for DepthFunction, refined by the word so
// chains of equal total depth list in increasing letter order.
impl Ord for Chain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_depth()
            .cmp(&other.total_depth())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.g.cmp(&other.g))
    }
}

impl PartialOrd for Chain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn assert_arity(lat: &MeetSemilattice, g: &DepthFunction) {
    assert_eq!(
        g.len(),
        lat.len(),
        "depth function arity does not match the lattice"
    );
}

pub(crate) fn saturate_slice_in_place(lat: &MeetSemilattice, depths: &mut [u32]) {
    saturate_in_place(lat, depths);
}

fn saturate_in_place(lat: &MeetSemilattice, depths: &mut [u32]) {
    loop {
        let mut changed = false;
        for p in lat.non_top_elements() {
            for q in lat.non_top_elements() {
                let m = lat.meet(p, q);
                let v = depths[p].min(depths[q]);
                if depths[m] < v {
                    depths[m] = v;
                    changed = true;
                }
            }
        }
        for x in lat.non_top_elements() {
            for y in lat.non_top_elements() {
                if x != y && lat.leq(x, y) && depths[y] < depths[x] {
                    depths[y] = depths[x];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Whether a depth function is already meet-preserving. For an
/// order-compatible function this is exactly the fixed-point condition
/// `g(p /\ q) >= min(g(p), g(q))` over all non-top pairs.
pub fn is_saturated(lat: &MeetSemilattice, g: &DepthFunction) -> bool {
    assert_arity(lat, g);
    let d = g.depths();
    for p in lat.non_top_elements() {
        for q in lat.non_top_elements() {
            if d[lat.meet(p, q)] < d[p].min(d[q]) {
                return false;
            }
        }
    }
    true
}

fn word_of_saturated(lat: &MeetSemilattice, depths: &[u32]) -> Vec<(usize, u32)> {
    let max = depths.iter().copied().max().unwrap_or(0);
    let mut word: Vec<(usize, u32)> = Vec::new();
    for n in 1..=max {
        // The up-set at level n is meet-closed for a saturated function, so
        // folding with meet lands on its minimum.
        let mut min: Option<usize> = None;
        for x in lat.non_top_elements() {
            if depths[x] >= n {
                min = Some(match min {
                    None => x,
                    Some(m) => lat.meet(m, x),
                });
            }
        }
        let letter = min.expect("levels up to the maximum depth are nonempty");
        debug_assert!(depths[letter] >= n, "saturation guarantees a principal up-set");
        match word.last_mut() {
            Some((e, m)) if *e == letter => *m += 1,
            _ => word.push((letter, 1)),
        }
    }
    word
}

pub(crate) fn chain_from_saturated(lat: &MeetSemilattice, depths: Vec<u32>) -> Chain {
    let word = word_of_saturated(lat, &depths);
    let g = DepthFunction::from_raw_unchecked(depths);
    debug_assert!(is_saturated(lat, &g));
    Chain { g, word }
}

/// The least meet-preserving depth function above `g`, computed by the
/// fixed-point iteration that repeatedly raises `g(p /\ q)` to
/// `min(g(p), g(q))` and re-enforces order-compatibility.
pub fn saturate(lat: &MeetSemilattice, g: &DepthFunction) -> Chain {
    assert_arity(lat, g);
    let mut depths = g.depths().to_vec();
    saturate_in_place(lat, &mut depths);
    chain_from_saturated(lat, depths)
}

/// The word form of a depth function, failing if it is not saturated.
pub fn chain_to_word(
    lat: &MeetSemilattice,
    g: &DepthFunction,
) -> Result<Vec<(usize, u32)>, ChainError> {
    if !is_saturated(lat, g) {
        return Err(ChainError::NotSaturated);
    }
    Ok(word_of_saturated(lat, g.depths()))
}

/// Rebuilds the depth function of a word: `g(q)` counts the letters `<= q`.
/// The letters must be pairwise comparable non-top elements, otherwise the
/// word does not describe a chain.
pub fn word_to_depths(
    lat: &MeetSemilattice,
    word: &[(usize, u32)],
) -> Result<Chain, ChainError> {
    for &(e, _) in word {
        if e >= lat.len() || e == lat.top() {
            return Err(ChainError::BadLetter { index: e });
        }
    }
    for (i, &(a, _)) in word.iter().enumerate() {
        for &(b, _) in &word[i + 1..] {
            if a != b && !lat.leq(a, b) && !lat.leq(b, a) {
                return Err(ChainError::WordNotChain { a, b });
            }
        }
    }
    let mut depths = vec![0u32; lat.len()];
    for q in lat.non_top_elements() {
        let mut total = 0u32;
        for &(e, m) in word {
            if lat.leq(e, q) {
                total = total.checked_add(m).expect("depth overflow");
            }
        }
        depths[q] = total;
    }
    let g = DepthFunction::from_raw_unchecked(depths);
    debug_assert!(is_saturated(lat, &g), "chain words produce saturated depths");
    Ok(saturate(lat, &g))
}

/// The chain `m_0 * 0 + m_l * l_line` on a blowup poset.
pub fn blowup_chain(bp: &BlowupPoset, m0: u32, line: usize, ml: u32) -> Chain {
    assert!(
        ml == 0 || (line >= 1 && line <= bp.r()),
        "line index out of range"
    );
    let mut word = Vec::new();
    if m0 > 0 {
        word.push((bp.bottom_index(), m0));
    }
    if ml > 0 {
        word.push((bp.line_index(line), ml));
    }
    word_to_depths(bp.lattice(), &word).expect("blowup words are chains")
}

/// Whether `a <= b` in the chain order, i.e. pointwise on depths.
pub fn chain_leq(a: &Chain, b: &Chain) -> bool {
    a.depths().pointwise_leq(b.depths())
}

/// Least upper bound in the chain poset: saturation of the pointwise max.
pub fn chain_join(lat: &MeetSemilattice, a: &Chain, b: &Chain) -> Chain {
    saturate(lat, &a.depths().pointwise_max(b.depths()))
}

/// All order-compatible depth vectors with `lo <= g` pointwise and every
/// entry at most `hi[x]`, produced by recursive assignment along a linear
/// extension so that incompatible vectors are never generated.
fn order_compatible_in_box(
    lat: &MeetSemilattice,
    lo: &[u32],
    hi: &[u32],
) -> Vec<Vec<u32>> {
    let mut elems: Vec<usize> = lat.non_top_elements().collect();
    elems.sort_by_key(|&x| lat.non_top_elements().filter(|&y| lat.leq(y, x)).count());
    let mut out = Vec::new();
    let mut current = vec![0u32; lat.len()];
    fn rec(
        lat: &MeetSemilattice,
        elems: &[usize],
        pos: usize,
        lo: &[u32],
        hi: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == elems.len() {
            out.push(current.clone());
            return;
        }
        let x = elems[pos];
        let mut min = lo[x];
        for &y in &elems[..pos] {
            if y != x && lat.leq(y, x) {
                min = min.max(current[y]);
            }
        }
        for v in min..=hi[x] {
            current[x] = v;
            rec(lat, elems, pos + 1, lo, hi, current, out);
        }
        current[x] = 0;
    }
    rec(lat, &elems, 0, lo, hi, &mut current, &mut out);
    out
}

/// All saturated chains with total depth at most `max_total`, in canonical
/// order. Includes the trivial chain.
pub fn enumerate_saturated_chains(lat: &MeetSemilattice, max_total: u32) -> Vec<Chain> {
    let lo = vec![0u32; lat.len()];
    let hi: Vec<u32> = (0..lat.len())
        .map(|x| if x == lat.top() { 0 } else { max_total })
        .collect();
    let mut chains: Vec<Chain> = order_compatible_in_box(lat, &lo, &hi)
        .into_iter()
        .filter(|d| {
            let g = DepthFunction::from_raw_unchecked(d.clone());
            is_saturated(lat, &g)
        })
        .map(|d| chain_from_saturated(lat, d))
        .collect();
    chains.sort();
    chains
}

fn strictly_above_candidates(
    lat: &MeetSemilattice,
    base: &Chain,
    budget: u32,
) -> Vec<Chain> {
    let lo = base.depths().depths().to_vec();
    let hi: Vec<u32> = (0..lat.len())
        .map(|x| if x == lat.top() { 0 } else { budget })
        .collect();
    order_compatible_in_box(lat, &lo, &hi)
        .into_iter()
        .filter(|d| d != base.depths().depths())
        .filter(|d| {
            let g = DepthFunction::from_raw_unchecked(d.clone());
            is_saturated(lat, &g)
        })
        .map(|d| chain_from_saturated(lat, d))
        .collect()
}

/// All covers of `c` in the chain poset whose total depth stays within the
/// budget, by enumerating the saturated elements strictly above `c` and
/// keeping the minimal ones.
pub fn covers_above(
    lat: &MeetSemilattice,
    c: &Chain,
    depth_budget: u32,
) -> Result<Vec<Chain>, ChainError> {
    if depth_budget < c.total_depth() {
        return Err(ChainError::BudgetTooSmall {
            budget: depth_budget,
            required: c.total_depth(),
        });
    }
    let above = strictly_above_candidates(lat, c, depth_budget);
    let mut covers: Vec<Chain> = above
        .iter()
        .filter(|e| {
            !above
                .iter()
                .any(|f| f != *e && chain_leq(f, e))
        })
        .cloned()
        .collect();
    covers.sort();
    Ok(covers)
}

/// All joins of nonempty subsets of `covers_above(c, depth_budget)`,
/// deduplicated, each with its witnessing subset of covers. When one chain
/// arises from several subsets the witness is the first in the
/// (size, lexicographic) subset order.
pub fn essential_above(
    lat: &MeetSemilattice,
    c: &Chain,
    depth_budget: u32,
) -> Result<Vec<(Chain, Vec<Chain>)>, ChainError> {
    let covers = covers_above(lat, c, depth_budget)?;
    let k = covers.len();
    if k > 20 {
        return Err(ChainError::CoverSetTooLarge { count: k });
    }
    let mut masks: Vec<u32> = (1u32..(1u32 << k)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let mut seen: BTreeMap<Chain, Vec<Chain>> = BTreeMap::new();
    for mask in masks {
        let mut join: Option<Chain> = None;
        let mut witness = Vec::new();
        for (i, cover) in covers.iter().enumerate() {
            if mask & (1 << i) != 0 {
                witness.push(cover.clone());
                join = Some(match join {
                    None => cover.clone(),
                    Some(j) => chain_join(lat, &j, cover),
                });
            }
        }
        let join = join.expect("mask is nonempty");
        seen.entry(join).or_insert(witness);
    }
    Ok(seen.into_iter().collect())
}

/// Whether `x` is essential over `w`: equal to `w`, or a join of covers of
/// `w`. Fails when the two chains are not ordered.
pub fn is_essential_pair(
    lat: &MeetSemilattice,
    w: &Chain,
    x: &Chain,
) -> Result<bool, ChainError> {
    if !chain_leq(w, x) {
        return Err(ChainError::NotComparable);
    }
    if w == x {
        return Ok(true);
    }
    // Joins never raise the total depth beyond their arguments, so the total
    // depth of x bounds everything that could produce x.
    let essentials = essential_above(lat, w, x.total_depth())?;
    Ok(essentials.iter().any(|(e, _)| e == x))
}

/// Join of all covers `s` of `w` with `s <= x`; this is the largest
/// essential element over `w` inside the interval `[w, x]`. Returns `w`
/// itself when no cover fits (i.e. when `w = x`).
pub fn crosscut_join(
    lat: &MeetSemilattice,
    w: &Chain,
    x: &Chain,
) -> Result<Chain, ChainError> {
    if !chain_leq(w, x) {
        return Err(ChainError::NotComparable);
    }
    let covers = covers_above(lat, w, x.total_depth())?;
    let mut join = w.clone();
    for s in covers.iter().filter(|s| chain_leq(s, x)) {
        join = chain_join(lat, &join, s);
    }
    Ok(join)
}

/// The closed interval `[w, x]` of the chain poset as an explicit poset,
/// with its elements in canonical order.
pub fn chain_interval_poset(
    lat: &MeetSemilattice,
    w: &Chain,
    x: &Chain,
) -> Result<(Vec<Chain>, Poset), ChainError> {
    if !chain_leq(w, x) {
        return Err(ChainError::NotComparable);
    }
    let mut elems: Vec<Chain> = order_compatible_in_box(
        lat,
        w.depths().depths(),
        x.depths().depths(),
    )
    .into_iter()
    .filter(|d| {
        let g = DepthFunction::from_raw_unchecked(d.clone());
        is_saturated(lat, &g)
    })
    .map(|d| chain_from_saturated(lat, d))
    .collect();
    elems.sort();
    let poset = Poset::from_relation(elems.len(), |i, j| chain_leq(&elems[i], &elems[j]))?;
    Ok((elems, poset))
}

/// Renders a word in the conventional display order, largest letters first:
/// `2*l1+1*0`. The empty word renders as `trivial`.
pub fn render_word(lat: &MeetSemilattice, word: &[(usize, u32)]) -> String {
    if word.is_empty() {
        return String::from("trivial");
    }
    let parts: Vec<String> = word
        .iter()
        .rev()
        .map(|&(e, m)| format!("{m}*{}", lat.name(e)))
        .collect();
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_blowup_poset;

    fn depth(lat: &MeetSemilattice, d: &[u32]) -> DepthFunction {
        DepthFunction::new(lat, d.to_vec()).unwrap()
    }

    #[test]
    fn saturate_fills_in_pairwise_meets() {
        let q3 = build_blowup_poset(3, 3).unwrap();
        // l1 and l2 at depth 1 force the bottom stratum and then every line.
        let g = depth(q3.lattice(), &[0, 1, 1, 0, 0]);
        let c = saturate(q3.lattice(), &g);
        assert_eq!(c.depths().depths(), &[1, 1, 1, 1, 0]);

        let q2 = build_blowup_poset(2, 3).unwrap();
        let g = depth(q2.lattice(), &[0, 3, 1, 0]);
        let c = saturate(q2.lattice(), &g);
        assert_eq!(c.depths().depths(), &[1, 3, 1, 0]);

        // Already saturated inputs come back unchanged.
        let again = saturate(q2.lattice(), c.depths());
        assert_eq!(again, c);
    }

    #[test]
    fn words_of_blowup_chains() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let c = blowup_chain(&q2, 2, 1, 3);
        assert_eq!(c.depths().depths(), &[2, 5, 2, 0]);
        assert_eq!(c.word(), &[(0, 2), (1, 3)]);
        assert_eq!(render_word(q2.lattice(), c.word()), "3*l1+2*0");

        let pure = blowup_chain(&q2, 0, 1, 2);
        assert_eq!(pure.word(), &[(1, 2)]);
        assert_eq!(render_word(q2.lattice(), pure.word()), "2*l1");

        let trivial = Chain::trivial(q2.lattice());
        assert_eq!(trivial.word(), &[]);
        assert_eq!(render_word(q2.lattice(), trivial.word()), "trivial");

        let raw = depth(q2.lattice(), &[0, 1, 1, 0]);
        assert_eq!(chain_to_word(q2.lattice(), &raw), Err(ChainError::NotSaturated));
    }

    #[test]
    fn word_round_trip() {
        let q3 = build_blowup_poset(3, 3).unwrap();
        for c in enumerate_saturated_chains(q3.lattice(), 3) {
            let back = word_to_depths(q3.lattice(), c.word()).unwrap();
            assert_eq!(back, c);
        }
        assert!(matches!(
            word_to_depths(q3.lattice(), &[(1, 1), (2, 1)]),
            Err(ChainError::WordNotChain { .. })
        ));
        assert!(matches!(
            word_to_depths(q3.lattice(), &[(4, 1)]),
            Err(ChainError::BadLetter { index: 4 })
        ));
    }

    #[test]
    fn chain_order_examples() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let d2 = blowup_chain(&q2, 0, 1, 2);
        let d3 = blowup_chain(&q2, 0, 1, 3);
        assert!(chain_leq(&d2, &d3));
        assert!(!chain_leq(&d3, &d2));
        let other = blowup_chain(&q2, 0, 2, 2);
        assert!(!chain_leq(&d2, &other));
        assert!(!chain_leq(&other, &d2));
        let trivial = Chain::trivial(q2.lattice());
        assert!(chain_leq(&trivial, &d2));
    }

    #[test]
    fn join_examples() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let l1 = blowup_chain(&q2, 0, 1, 1);
        let l2 = blowup_chain(&q2, 0, 2, 1);
        let j = chain_join(q2.lattice(), &l1, &l2);
        assert_eq!(j.depths().depths(), &[1, 1, 1, 0]);

        let trivial = Chain::trivial(q2.lattice());
        assert_eq!(chain_join(q2.lattice(), &l1, &trivial), l1);

        for d in 1..4 {
            let a = blowup_chain(&q2, 0, 1, d + 1);
            let b = blowup_chain(&q2, 1, 1, d - 1);
            let expected = blowup_chain(&q2, 1, 1, d);
            assert_eq!(chain_join(q2.lattice(), &a, &b), expected);
        }
    }

    #[test]
    fn cover_examples() {
        let q3 = build_blowup_poset(3, 3).unwrap();
        let trivial = Chain::trivial(q3.lattice());
        let covers = covers_above(q3.lattice(), &trivial, 2).unwrap();
        let atoms: Vec<Chain> = (1..=3).map(|j| blowup_chain(&q3, 0, j, 1)).collect();
        assert_eq!(covers, atoms);

        let q1 = build_blowup_poset(1, 3).unwrap();
        let covers = covers_above(q1.lattice(), &Chain::trivial(q1.lattice()), 2).unwrap();
        assert_eq!(covers, vec![blowup_chain(&q1, 0, 1, 1)]);

        let q2 = build_blowup_poset(2, 3).unwrap();
        for d in 1..4 {
            let c = blowup_chain(&q2, 0, 1, d);
            let covers = covers_above(q2.lattice(), &c, d + 2).unwrap();
            let mut expected = vec![
                blowup_chain(&q2, 0, 1, d + 1),
                blowup_chain(&q2, 1, 1, d - 1),
            ];
            expected.sort();
            assert_eq!(covers, expected);
        }

        assert!(matches!(
            covers_above(q2.lattice(), &blowup_chain(&q2, 0, 1, 3), 2),
            Err(ChainError::BudgetTooSmall { budget: 2, required: 3 })
        ));
    }

    #[test]
    fn essential_examples() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        for d in 1..4 {
            let c = blowup_chain(&q2, 0, 1, d);
            let ess = essential_above(q2.lattice(), &c, d + 2).unwrap();
            let mut got: Vec<Chain> = ess.iter().map(|(e, _)| e.clone()).collect();
            got.sort();
            let mut expected = vec![
                blowup_chain(&q2, 0, 1, d + 1),
                blowup_chain(&q2, 1, 1, d - 1),
                blowup_chain(&q2, 1, 1, d),
            ];
            expected.sort();
            assert_eq!(got, expected);
            // The two-cover join carries both covers as its witness.
            let join = blowup_chain(&q2, 1, 1, d);
            let (_, witness) = ess.iter().find(|(e, _)| *e == join).unwrap();
            assert_eq!(witness.len(), 2);
        }

        let q3 = build_blowup_poset(3, 3).unwrap();
        let trivial = Chain::trivial(q3.lattice());
        let ess = essential_above(q3.lattice(), &trivial, 2).unwrap();
        let got: Vec<Chain> = ess.iter().map(|(e, _)| e.clone()).collect();
        let zero_chain = saturate(q3.lattice(), &depth(q3.lattice(), &[1, 1, 1, 1, 0]));
        let mut expected: Vec<Chain> = (1..=3).map(|j| blowup_chain(&q3, 0, j, 1)).collect();
        expected.push(zero_chain);
        expected.sort();
        assert_eq!(got, expected);

        let q1 = build_blowup_poset(1, 3).unwrap();
        let ess = essential_above(q1.lattice(), &Chain::trivial(q1.lattice()), 2).unwrap();
        assert_eq!(ess.len(), 1);
        assert_eq!(ess[0].0, blowup_chain(&q1, 0, 1, 1));
    }

    #[test]
    fn essential_pair_examples() {
        let q3 = build_blowup_poset(3, 3).unwrap();
        let trivial = Chain::trivial(q3.lattice());
        for j in 1..=3 {
            let lj = blowup_chain(&q3, 0, j, 1);
            assert!(is_essential_pair(q3.lattice(), &trivial, &lj).unwrap());
        }
        let q2 = build_blowup_poset(2, 3).unwrap();
        for d in 1..3 {
            let lo = blowup_chain(&q2, 0, 1, d);
            let hi = blowup_chain(&q2, 0, 1, d + 2);
            assert!(!is_essential_pair(q2.lattice(), &lo, &hi).unwrap());
            assert!(is_essential_pair(q2.lattice(), &lo, &lo).unwrap());
        }
        let a = blowup_chain(&q2, 0, 1, 1);
        let b = blowup_chain(&q2, 0, 2, 1);
        assert_eq!(
            is_essential_pair(q2.lattice(), &a, &b),
            Err(ChainError::NotComparable)
        );
    }

    #[test]
    fn interval_poset_shape() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let w = Chain::trivial(q2.lattice());
        let x = blowup_chain(&q2, 1, 1, 1);
        let (elems, poset) = chain_interval_poset(q2.lattice(), &w, &x).unwrap();
        // trivial, l1, l2, the 0-chain, 2*l1 and x itself.
        assert_eq!(elems.len(), 6);
        let wi = elems.iter().position(|c| *c == w).unwrap();
        let xi = elems.iter().position(|c| *c == x).unwrap();
        use crate::lattice::FinitePoset;
        for i in 0..elems.len() {
            assert!(poset.leq(wi, i));
            assert!(poset.leq(i, xi));
        }
    }
}
