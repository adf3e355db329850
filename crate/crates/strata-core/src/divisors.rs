//! Labeled configurations of depth functions on an abstract curve.
//!
//! A configuration assigns a depth function to finitely many opaque point
//! labels, optionally with a distinguished basepoint slot. No curve geometry
//! is kept: every quantity in scope depends only on the labeled multiset.
//! This module provides pointwise saturation, the multiplicity counts `m_q`,
//! the extension of weight functions on the lattice to configurations, and
//! the derived rank / gamma / support values in absolute and relative form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{saturate, Chain, DepthFunction};
use crate::lattice::{BlowupPoset, MeetSemilattice};

/// Errors from configuration construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorError {
    /// A depth function has the wrong arity for the lattice.
    ArityMismatch { expected: usize, got: usize },
    /// Multiplicities are not defined at the top element.
    TopElement,
    /// Extension weights must vanish at the top element.
    TopWeightNonzero,
    /// A weight vector has the wrong arity for the lattice.
    WeightArity { expected: usize, got: usize },
    /// The lower configuration of a pair has a label the upper lacks.
    LabelMismatch { label: u32 },
    /// A pair fails the pointwise order at the given label.
    NotPointwiseOrdered { label: u32 },
    /// One side of a pair has a basepoint and the other does not.
    PointednessMismatch,
    /// A pair fails the pointwise order at the basepoint.
    BasepointNotOrdered,
}

impl fmt::Display for DivisorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorError::ArityMismatch { expected, got } => {
                write!(f, "depth function has {got} entries, lattice has {expected}")
            }
            DivisorError::TopElement => write!(f, "multiplicity is undefined at the top element"),
            DivisorError::TopWeightNonzero => {
                write!(f, "extension weights must be zero at the top element")
            }
            DivisorError::WeightArity { expected, got } => {
                write!(f, "weight vector has {got} entries, lattice has {expected}")
            }
            DivisorError::LabelMismatch { label } => {
                write!(f, "label {label} appears below but not above")
            }
            DivisorError::NotPointwiseOrdered { label } => {
                write!(f, "configurations not ordered at label {label}")
            }
            DivisorError::PointednessMismatch => {
                write!(f, "pair mixes pointed and unpointed configurations")
            }
            DivisorError::BasepointNotOrdered => {
                write!(f, "configurations not ordered at the basepoint")
            }
        }
    }
}

impl core::error::Error for DivisorError {}

/// A finite set of labeled depth functions, optionally with a basepoint.
///
/// Labels with trivial depth functions are dropped on construction; only the
/// basepoint slot may hold a trivial function. The support is therefore the
/// number of stored non-basepoint labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledConfiguration {
    points: BTreeMap<u32, DepthFunction>,
    basepoint: Option<DepthFunction>,
}

impl LabeledConfiguration {
    pub fn new(
        lat: &MeetSemilattice,
        points: BTreeMap<u32, DepthFunction>,
        basepoint: Option<DepthFunction>,
    ) -> Result<Self, DivisorError> {
        for g in points.values().chain(basepoint.iter()) {
            if g.len() != lat.len() {
                return Err(DivisorError::ArityMismatch {
                    expected: lat.len(),
                    got: g.len(),
                });
            }
        }
        let points = points.into_iter().filter(|(_, g)| !g.is_trivial()).collect();
        Ok(LabeledConfiguration { points, basepoint })
    }

    /// The empty configuration, pointed or not.
    pub fn empty(pointed_at: Option<DepthFunction>) -> Self {
        LabeledConfiguration {
            points: BTreeMap::new(),
            basepoint: pointed_at,
        }
    }

    /// Labels a list of chains with consecutive numbers starting at zero.
    pub fn from_chains(lat: &MeetSemilattice, chains: &[Chain]) -> Self {
        let points = chains
            .iter()
            .inspect(|c| debug_assert_eq!(c.depths().len(), lat.len()))
            .enumerate()
            .map(|(i, c)| (i as u32, c.depths().clone()))
            .filter(|(_, g)| !g.is_trivial())
            .collect();
        LabeledConfiguration {
            points,
            basepoint: None,
        }
    }

    pub fn with_basepoint(mut self, g: DepthFunction) -> Self {
        self.basepoint = Some(g);
        self
    }

    pub fn points(&self) -> &BTreeMap<u32, DepthFunction> {
        &self.points
    }

    pub fn basepoint(&self) -> Option<&DepthFunction> {
        self.basepoint.as_ref()
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    /// Number of non-basepoint labels.
    pub fn support(&self) -> u64 {
        self.points.len() as u64
    }

    /// All stored depth functions, basepoint last.
    fn slots(&self) -> impl Iterator<Item = &DepthFunction> {
        self.points.values().chain(self.basepoint.iter())
    }
}

/// An ordered pair of configurations `lower <= upper` over the same labels.
///
/// Labels missing from the lower side are read as trivial there, so the
/// constraint is that every lower label also appears above, with pointwise
/// smaller depths, and that both sides agree on pointedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativePair {
    lower: LabeledConfiguration,
    upper: LabeledConfiguration,
}

impl RelativePair {
    pub fn new(
        lower: LabeledConfiguration,
        upper: LabeledConfiguration,
    ) -> Result<Self, DivisorError> {
        if lower.is_pointed() != upper.is_pointed() {
            return Err(DivisorError::PointednessMismatch);
        }
        for (&label, lo) in &lower.points {
            match upper.points.get(&label) {
                None => return Err(DivisorError::LabelMismatch { label }),
                Some(hi) => {
                    if !lo.pointwise_leq(hi) {
                        return Err(DivisorError::NotPointwiseOrdered { label });
                    }
                }
            }
        }
        if let (Some(lo), Some(hi)) = (&lower.basepoint, &upper.basepoint) {
            if !lo.pointwise_leq(hi) {
                return Err(DivisorError::BasepointNotOrdered);
            }
        }
        Ok(RelativePair { lower, upper })
    }

    pub fn lower(&self) -> &LabeledConfiguration {
        &self.lower
    }

    pub fn upper(&self) -> &LabeledConfiguration {
        &self.upper
    }
}

/// Saturates every label (and the basepoint) independently.
pub fn saturate_config(
    lat: &MeetSemilattice,
    x: &LabeledConfiguration,
) -> LabeledConfiguration {
    LabeledConfiguration {
        points: x
            .points
            .iter()
            .map(|(&l, g)| (l, saturate(lat, g).depths().clone()))
            .collect(),
        basepoint: x
            .basepoint
            .as_ref()
            .map(|g| saturate(lat, g).depths().clone()),
    }
}

fn word_of(lat: &MeetSemilattice, g: &DepthFunction) -> Vec<(usize, u32)> {
    saturate(lat, g).word().to_vec()
}

/// Total multiplicity of the element `q` over all labels, basepoint
/// included: the number of occurrences of `q` in the word form of each
/// label's saturation.
pub fn multiplicity(
    lat: &MeetSemilattice,
    x: &LabeledConfiguration,
    q: usize,
) -> Result<u64, DivisorError> {
    if q == lat.top() {
        return Err(DivisorError::TopElement);
    }
    let mut total = 0u64;
    for g in x.slots() {
        for (e, m) in word_of(lat, g) {
            if e == q {
                total += u64::from(m);
            }
        }
    }
    Ok(total)
}

/// Extends a weight function on the lattice to configurations by summing the
/// weights of all word letters over all labels (basepoint included),
/// computed on the saturation. The weight at the top element must be zero so
/// the sum is finite.
pub fn extend_function(
    lat: &MeetSemilattice,
    h: &[u64],
    x: &LabeledConfiguration,
) -> Result<u64, DivisorError> {
    if h.len() != lat.len() {
        return Err(DivisorError::WeightArity {
            expected: lat.len(),
            got: h.len(),
        });
    }
    if h[lat.top()] != 0 {
        return Err(DivisorError::TopWeightNonzero);
    }
    let mut total = 0u64;
    for g in x.slots() {
        for (e, m) in word_of(lat, g) {
            total += h[e] * u64::from(m);
        }
    }
    Ok(total)
}

/// Rank of a configuration over a blowup poset: the extension of the rank
/// weights (2 at the bottom stratum, 1 at each line).
pub fn rank_of(bp: &BlowupPoset, x: &LabeledConfiguration) -> u64 {
    extend_function(bp.lattice(), bp.rank_weights(), x)
        .expect("rank weights vanish at the top")
}

/// Codimension weight of a configuration: the extension of gamma, which is
/// `2v` at the bottom stratum and `2(v-1)` at each line.
pub fn gamma_of(bp: &BlowupPoset, x: &LabeledConfiguration) -> u64 {
    extend_function(bp.lattice(), bp.gamma_weights(), x)
        .expect("gamma weights vanish at the top")
}

/// Number of non-basepoint labels.
pub fn supp_of(x: &LabeledConfiguration) -> u64 {
    x.support()
}

/// Relative rank `rank(upper) - rank(lower)`.
pub fn rank_of_pair(bp: &BlowupPoset, pair: &RelativePair) -> i64 {
    rank_of(bp, pair.upper()) as i64 - rank_of(bp, pair.lower()) as i64
}

/// Relative gamma `gamma(upper) - gamma(lower)`.
pub fn gamma_of_pair(bp: &BlowupPoset, pair: &RelativePair) -> i64 {
    gamma_of(bp, pair.upper()) as i64 - gamma_of(bp, pair.lower()) as i64
}

/// Relative support: the number of non-basepoint labels where the upper
/// configuration strictly exceeds the lower one.
pub fn supp_of_pair(pair: &RelativePair) -> u64 {
    pair.upper()
        .points
        .iter()
        .filter(|(label, hi)| match pair.lower().points.get(label) {
            Some(lo) => lo != *hi,
            None => true,
        })
        .count() as u64
}

/// The scaled energy `j_den * m_0 + j_num * m_l` of a single chain over a
/// blowup poset, where `m_l` sums the line multiplicities. With the scale
/// `J = j_num / j_den` this is `j_den * (m_0 + J * m_l)`.
pub fn e_scaled(bp: &BlowupPoset, c: &Chain, j_num: u64, j_den: u64) -> u64 {
    assert!(j_num <= j_den && j_den > 0, "scale must satisfy 0 < J <= 1");
    let mut m0 = 0u64;
    let mut ml = 0u64;
    for &(e, m) in c.word() {
        if e == bp.bottom_index() {
            m0 += u64::from(m);
        } else if bp.is_line(e) {
            ml += u64::from(m);
        }
    }
    j_den * m0 + j_num * ml
}

/// Energy defect of merging two chains at a point:
/// `E(a) + E(b) - E(saturate(a + b))` in the same scaled units as
/// [`e_scaled`]. Merging two depth functions at one point adds them before
/// saturating; the defect measures how much energy that collision releases.
/// It is nonnegative for every pair of chains when `1/2 <= J <= 1`: a
/// cross-line collision converts line letters into bottom letters, and each
/// conversion trades `2 * j_num` for `j_den`.
pub fn e_merge_defect(bp: &BlowupPoset, a: &Chain, b: &Chain, j_num: u64, j_den: u64) -> i64 {
    let merged = saturate(bp.lattice(), &a.depths().pointwise_sum(b.depths()));
    let separate = e_scaled(bp, a, j_num, j_den) + e_scaled(bp, b, j_num, j_den);
    separate as i64 - e_scaled(bp, &merged, j_num, j_den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::blowup_chain;
    use crate::lattice::build_blowup_poset;

    fn config(bp: &BlowupPoset, chains: &[Chain]) -> LabeledConfiguration {
        LabeledConfiguration::from_chains(bp.lattice(), chains)
    }

    #[test]
    fn saturation_is_pointwise() {
        let q3 = build_blowup_poset(3, 3).unwrap();
        let raw = DepthFunction::new(q3.lattice(), alloc::vec![0, 1, 1, 0, 0]).unwrap();
        let mut points = BTreeMap::new();
        points.insert(7u32, raw);
        points.insert(9u32, blowup_chain(&q3, 0, 1, 2).depths().clone());
        let x = LabeledConfiguration::new(q3.lattice(), points, None).unwrap();
        let sat = saturate_config(q3.lattice(), &x);
        assert_eq!(sat.points()[&7].depths(), &[1, 1, 1, 1, 0]);
        assert_eq!(sat.points()[&9], *blowup_chain(&q3, 0, 1, 2).depths());
        assert_eq!(saturate_config(q3.lattice(), &sat), sat);
    }

    #[test]
    fn multiplicities_sum_over_labels() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let one = config(&q2, &[blowup_chain(&q2, 2, 1, 3)]);
        assert_eq!(multiplicity(q2.lattice(), &one, 0).unwrap(), 2);
        assert_eq!(multiplicity(q2.lattice(), &one, 1).unwrap(), 3);
        assert_eq!(multiplicity(q2.lattice(), &one, 2).unwrap(), 0);

        let two = config(
            &q2,
            &[blowup_chain(&q2, 0, 1, 1), blowup_chain(&q2, 0, 1, 2)],
        );
        assert_eq!(multiplicity(q2.lattice(), &two, 1).unwrap(), 3);

        let empty = config(&q2, &[]);
        assert_eq!(multiplicity(q2.lattice(), &empty, 1).unwrap(), 0);
        assert_eq!(
            multiplicity(q2.lattice(), &empty, q2.top_index()),
            Err(DivisorError::TopElement)
        );
    }

    #[test]
    fn extension_examples() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let zero_chain = config(&q2, &[blowup_chain(&q2, 1, 1, 0)]);
        assert_eq!(rank_of(&q2, &zero_chain), 2);
        let line = config(&q2, &[blowup_chain(&q2, 0, 1, 1)]);
        assert_eq!(gamma_of(&q2, &line), 4);
        let empty = config(&q2, &[]);
        assert_eq!(rank_of(&q2, &empty), 0);
        assert_eq!(gamma_of(&q2, &empty), 0);

        let mut bad = alloc::vec![0u64; 4];
        bad[q2.top_index()] = 1;
        assert_eq!(
            extend_function(q2.lattice(), &bad, &empty),
            Err(DivisorError::TopWeightNonzero)
        );
    }

    #[test]
    fn extension_is_additive_over_labels() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let a = blowup_chain(&q2, 1, 1, 2);
        let b = blowup_chain(&q2, 0, 2, 3);
        let joint = config(&q2, &[a.clone(), b.clone()]);
        let left = config(&q2, &[a]);
        let right = config(&q2, &[b]);
        assert_eq!(
            rank_of(&q2, &joint),
            rank_of(&q2, &left) + rank_of(&q2, &right)
        );
        assert_eq!(
            gamma_of(&q2, &joint),
            gamma_of(&q2, &left) + gamma_of(&q2, &right)
        );
    }

    #[test]
    fn relative_values() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let lower = config(&q2, &[]);
        let upper = config(&q2, &[blowup_chain(&q2, 0, 1, 1)]);
        let pair = RelativePair::new(lower, upper).unwrap();
        assert_eq!(rank_of_pair(&q2, &pair), 1);
        assert_eq!(supp_of_pair(&pair), 1);

        // Divisor of lines with per-line multiplicities n = (2, 1).
        let w = config(
            &q2,
            &[blowup_chain(&q2, 0, 1, 2), blowup_chain(&q2, 0, 2, 1)],
        );
        let x = config(
            &q2,
            &[blowup_chain(&q2, 1, 1, 2), blowup_chain(&q2, 1, 2, 2)],
        );
        let pair = RelativePair::new(w.clone(), x.clone()).unwrap();
        let m0 = multiplicity(q2.lattice(), &x, 0).unwrap() as i64;
        let ml: i64 = (1..=2)
            .map(|j| multiplicity(q2.lattice(), &x, j).unwrap() as i64)
            .sum();
        assert_eq!(rank_of_pair(&q2, &pair), 2 * m0 + ml - 3);

        let bad = RelativePair::new(x, w);
        assert!(matches!(bad, Err(DivisorError::NotPointwiseOrdered { .. })));
    }

    #[test]
    fn pointed_supp_ignores_basepoint() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let base_lo = Chain::trivial(q2.lattice()).depths().clone();
        let base_hi = blowup_chain(&q2, 0, 1, 1).depths().clone();
        let lower = LabeledConfiguration::empty(Some(base_lo));
        let upper = LabeledConfiguration::empty(Some(base_hi));
        let pair = RelativePair::new(lower, upper).unwrap();
        assert_eq!(supp_of_pair(&pair), 0);
        assert_eq!(rank_of_pair(&q2, &pair), 1);
    }

    #[test]
    fn merge_defect_is_zero_on_a_line_and_positive_across() {
        let q2 = build_blowup_poset(2, 3).unwrap();
        let l1 = blowup_chain(&q2, 0, 1, 1);
        let l2 = blowup_chain(&q2, 0, 2, 1);
        // Same line: depths add without creating new meets.
        assert_eq!(e_merge_defect(&q2, &l1, &l1, 1, 1), 0);
        // Different lines: the sum saturates to the 0-chain, releasing
        // (2J - 1) * min(m_l) of energy; at J = 1 that is 1.
        assert_eq!(e_merge_defect(&q2, &l1, &l2, 1, 1), 1);
        assert_eq!(e_merge_defect(&q2, &l1, &l2, 4, 5), 3);
        let e1 = e_scaled(&q2, &l1, 4, 5);
        assert_eq!(e1, 4);
    }
}
