//! Combinatorial types of labeled configurations and their census.
//!
//! A combinatorial type forgets the labels of a configuration and keeps the
//! multiset of per-point data: single depth functions for absolute types,
//! ordered pairs `lower <= upper` for relative types, plus an optional
//! distinguished basepoint entry. Two orders matter here: the merge order
//! `<=+`, where a finer type dominates a coarser one if its entries can be
//! merged to cover them, and its saturated companion, the transitive closure
//! of merge steps interleaved with saturation. On top of the orders sit the
//! kappa bookkeeping, bounded enumeration of saturated types, and the census
//! records (gamma, rank, supp, kappa, Mobius numbers and stalk Betti
//! vectors) that drive the page-one tallies.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{
    chain_interval_poset, is_essential_pair, is_saturated, saturate, Chain, ChainError,
    DepthFunction,
};
use crate::divisors::{LabeledConfiguration, RelativePair};
use crate::homalg::{mu_stalk, HomalgError};
use crate::lattice::{mobius, BlowupPoset, MeetSemilattice};

/// Errors from type construction, comparison and census assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    /// The two types disagree on relative/pointed flavor.
    FlavorMismatch,
    /// A depth function has the wrong arity for the lattice.
    ArityMismatch { expected: usize, got: usize },
    /// An entry pair fails `lower <= upper`.
    EntryNotOrdered,
    /// The operation requires saturated types.
    NotSaturated,
    /// The operation is only defined for relative types.
    AbsoluteType,
    /// A type passed to a universe-relative query is not in the universe.
    OutsideUniverse,
    /// A stalk group has torsion, so Betti vectors cannot be combined by
    /// the free graded tensor rule.
    TorsionInStalk,
    /// A chain-level operation failed.
    Chain(ChainError),
    /// A homology computation failed.
    Homalg(HomalgError),
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::FlavorMismatch => write!(f, "types have different flavors"),
            TypeError::ArityMismatch { expected, got } => {
                write!(f, "entry has {got} depth slots, lattice has {expected}")
            }
            TypeError::EntryNotOrdered => write!(f, "entry pair is not pointwise ordered"),
            TypeError::NotSaturated => write!(f, "operation requires saturated types"),
            TypeError::AbsoluteType => write!(f, "operation requires a relative type"),
            TypeError::OutsideUniverse => write!(f, "type lies outside the given universe"),
            TypeError::TorsionInStalk => {
                write!(f, "stalk has torsion; free tensor combination is invalid")
            }
            TypeError::Chain(e) => write!(f, "{e}"),
            TypeError::Homalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TypeError {}

impl From<ChainError> for TypeError {
    fn from(e: ChainError) -> Self {
        TypeError::Chain(e)
    }
}

impl From<HomalgError> for TypeError {
    fn from(e: HomalgError) -> Self {
        TypeError::Homalg(e)
    }
}

impl From<crate::lattice::LatticeError> for TypeError {
    fn from(e: crate::lattice::LatticeError) -> Self {
        TypeError::Chain(ChainError::Lattice(e))
    }
}

/// One anonymous point of a type: a pair of depth functions
/// `lower <= upper`. Absolute types use a trivial lower part everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeEntry {
    pub lower: DepthFunction,
    pub upper: DepthFunction,
}

impl TypeEntry {
    pub fn is_diagonal(&self) -> bool {
        self.lower == self.upper
    }

    fn is_saturated(&self, lat: &MeetSemilattice) -> bool {
        is_saturated(lat, &self.lower) && is_saturated(lat, &self.upper)
    }
}

/// A multiset of entries in canonical sorted order, with flavor flags and an
/// optional basepoint entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CombinatorialType {
    relative: bool,
    entries: Vec<TypeEntry>,
    basepoint: Option<TypeEntry>,
}

impl CombinatorialType {
    /// An absolute type from a multiset of depth functions; trivial entries
    /// are dropped.
    pub fn new_absolute(
        lat: &MeetSemilattice,
        entries: Vec<DepthFunction>,
        basepoint: Option<DepthFunction>,
    ) -> Result<Self, TypeError> {
        let trivial = DepthFunction::trivial(lat);
        let mut built = Vec::with_capacity(entries.len());
        for g in entries {
            check_arity(lat, &g)?;
            if g.is_trivial() {
                continue;
            }
            built.push(TypeEntry {
                lower: trivial.clone(),
                upper: g,
            });
        }
        built.sort();
        let basepoint = match basepoint {
            None => None,
            Some(g) => {
                check_arity(lat, &g)?;
                Some(TypeEntry {
                    lower: trivial.clone(),
                    upper: g,
                })
            }
        };
        Ok(CombinatorialType {
            relative: false,
            entries: built,
            basepoint,
        })
    }

    /// A relative type from a multiset of ordered pairs; entries with a
    /// trivial upper part are dropped (their lower part is forced trivial by
    /// the order). The basepoint pair may be trivial or diagonal.
    pub fn new_relative(
        lat: &MeetSemilattice,
        entries: Vec<(DepthFunction, DepthFunction)>,
        basepoint: Option<(DepthFunction, DepthFunction)>,
    ) -> Result<Self, TypeError> {
        let mut built = Vec::with_capacity(entries.len());
        for (lower, upper) in entries {
            check_arity(lat, &lower)?;
            check_arity(lat, &upper)?;
            if !lower.pointwise_leq(&upper) {
                return Err(TypeError::EntryNotOrdered);
            }
            if upper.is_trivial() {
                continue;
            }
            built.push(TypeEntry { lower, upper });
        }
        built.sort();
        let basepoint = match basepoint {
            None => None,
            Some((lower, upper)) => {
                check_arity(lat, &lower)?;
                check_arity(lat, &upper)?;
                if !lower.pointwise_leq(&upper) {
                    return Err(TypeError::EntryNotOrdered);
                }
                Some(TypeEntry { lower, upper })
            }
        };
        Ok(CombinatorialType {
            relative: true,
            entries: built,
            basepoint,
        })
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    pub fn entries(&self) -> &[TypeEntry] {
        &self.entries
    }

    pub fn basepoint(&self) -> Option<&TypeEntry> {
        self.basepoint.as_ref()
    }

    /// Number of non-basepoint entries.
    pub fn point_count(&self) -> usize {
        self.entries.len()
    }

    /// All entries including the basepoint, basepoint last.
    pub fn all_entries(&self) -> impl Iterator<Item = &TypeEntry> {
        self.entries.iter().chain(self.basepoint.iter())
    }

    pub fn is_saturated(&self, lat: &MeetSemilattice) -> bool {
        self.all_entries().all(|e| e.is_saturated(lat))
    }

    /// Whether any non-basepoint entry is diagonal (`lower = upper`).
    pub fn has_diagonal_entry(&self) -> bool {
        self.entries.iter().any(TypeEntry::is_diagonal)
    }
}

fn check_arity(lat: &MeetSemilattice, g: &DepthFunction) -> Result<(), TypeError> {
    if g.len() != lat.len() {
        return Err(TypeError::ArityMismatch {
            expected: lat.len(),
            got: g.len(),
        });
    }
    Ok(())
}

/// The type of a configuration: forget labels, keep the multiset.
pub fn type_of(lat: &MeetSemilattice, x: &LabeledConfiguration) -> CombinatorialType {
    CombinatorialType::new_absolute(
        lat,
        x.points().values().cloned().collect(),
        x.basepoint().cloned(),
    )
    .expect("stored configurations have the right arity")
}

/// The relative type of an ordered pair of configurations. Labels present
/// only above contribute entries with a trivial lower part.
pub fn type_of_pair(lat: &MeetSemilattice, pair: &RelativePair) -> CombinatorialType {
    let trivial = DepthFunction::trivial(lat);
    let entries = pair
        .upper()
        .points()
        .iter()
        .map(|(label, hi)| {
            let lo = pair
                .lower()
                .points()
                .get(label)
                .cloned()
                .unwrap_or_else(|| trivial.clone());
            (lo, hi.clone())
        })
        .collect();
    let basepoint = pair.upper().basepoint().map(|hi| {
        let lo = pair
            .lower()
            .basepoint()
            .cloned()
            .unwrap_or_else(|| trivial.clone());
        (lo, hi.clone())
    });
    CombinatorialType::new_relative(lat, entries, basepoint)
        .expect("relative pairs are validated on construction")
}

/// Saturates every entry of a type componentwise. The entry count never
/// changes: saturation keeps nontrivial entries nontrivial.
pub fn saturate_type(lat: &MeetSemilattice, t: &CombinatorialType) -> CombinatorialType {
    let sat = |e: &TypeEntry| TypeEntry {
        lower: saturate(lat, &e.lower).depths().clone(),
        upper: saturate(lat, &e.upper).depths().clone(),
    };
    let mut entries: Vec<TypeEntry> = t.entries.iter().map(sat).collect();
    entries.sort();
    CombinatorialType {
        relative: t.relative,
        entries,
        basepoint: t.basepoint.as_ref().map(sat),
    }
}

fn check_same_flavor(s: &CombinatorialType, t: &CombinatorialType) -> Result<(), TypeError> {
    if s.relative != t.relative || s.is_pointed() != t.is_pointed() {
        return Err(TypeError::FlavorMismatch);
    }
    Ok(())
}

/// Componentwise sum of a subset of entries, as a (lower, upper) pair of
/// depth vectors.
fn subset_sums(entries: &[TypeEntry], arity: usize) -> Vec<(DepthFunction, DepthFunction)> {
    let n = entries.len();
    let zero = DepthFunction::from_raw_unchecked(vec![0; arity]);
    let mut sums: Vec<(DepthFunction, DepthFunction)> = Vec::with_capacity(1 << n);
    sums.push((zero.clone(), zero));
    for mask in 1usize..(1 << n) {
        let i = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let lo = sums[prev].0.pointwise_sum(&entries[i].lower);
        let hi = sums[prev].1.pointwise_sum(&entries[i].upper);
        sums.push((lo, hi));
    }
    sums
}

/// Searches for a partition of the source entries, one block per target,
/// such that every (target, block) passes the predicate. Blocks may be
/// empty. This is the assignment search shared by the merge order and its
/// saturated one-step relation.
fn exists_partition(
    source_count: usize,
    target_count: usize,
    mut ok: impl FnMut(usize, usize) -> bool,
) -> bool {
    let full = (1usize << source_count) - 1;
    // reachable[mask]: the sources in mask can be distributed over the
    // targets processed so far.
    let mut reachable = vec![false; full + 1];
    reachable[0] = true;
    for j in 0..target_count {
        let mut ok_masks: Vec<usize> = Vec::new();
        for m in 0..=full {
            if ok(j, m) {
                ok_masks.push(m);
            }
        }
        if ok_masks.is_empty() {
            return false;
        }
        let mut next = vec![false; full + 1];
        for used in 0..=full {
            if !reachable[used] {
                continue;
            }
            for &m in &ok_masks {
                if m & used == 0 {
                    next[used | m] = true;
                }
            }
        }
        reachable = next;
    }
    reachable[full]
}

/// Decides the merge order `S <=+ T`: some assignment of the entries of `T`
/// to the entries of `S` (pointed types also allow merging into the
/// basepoint, and basepoints map to basepoints) makes every entry of `S`
/// componentwise dominated by the sum of its assigned entries.
pub fn leq_plus(s: &CombinatorialType, t: &CombinatorialType) -> Result<bool, TypeError> {
    check_same_flavor(s, t)?;
    if s.entries.is_empty() && t.entries.is_empty() && !s.is_pointed() {
        return Ok(true);
    }
    let arity = s
        .all_entries()
        .chain(t.all_entries())
        .map(|e| e.lower.len())
        .next()
        .unwrap_or(0);
    let sums = subset_sums(&t.entries, arity);
    let bp_targets = usize::from(s.is_pointed());
    Ok(exists_partition(
        t.entries.len(),
        s.entries.len() + bp_targets,
        |j, mask| {
            let (lo_sum, hi_sum) = &sums[mask];
            if j < s.entries.len() {
                let sj = &s.entries[j];
                sj.lower.pointwise_leq(lo_sum) && sj.upper.pointwise_leq(hi_sum)
            } else {
                // Basepoint target: the basepoint of T always contributes.
                let sj = s.basepoint.as_ref().expect("pointed flavor checked");
                let tb = t.basepoint.as_ref().expect("pointed flavor checked");
                let lo = lo_sum.pointwise_sum(&tb.lower);
                let hi = hi_sum.pointwise_sum(&tb.upper);
                sj.lower.pointwise_leq(&lo) && sj.upper.pointwise_leq(&hi)
            }
        },
    ))
}

/// Whether `saturate(min(target, cap)) == target` pointwise; `scratch` is
/// reused across calls to avoid allocation in enumeration loops.
fn sat_min_hits(
    lat: &MeetSemilattice,
    cap: &DepthFunction,
    target: &DepthFunction,
    scratch: &mut Vec<u32>,
) -> bool {
    scratch.clear();
    scratch.extend(
        cap.depths()
            .iter()
            .zip(target.depths())
            .map(|(&c, &t)| c.min(t)),
    );
    crate::chains::saturate_slice_in_place(lat, scratch);
    scratch == target.depths()
}

/// One step of the saturated merge order: `S` and `T` are saturated, and
/// some type `A <=+ T` saturates to `S`. By the closure properties of
/// saturation this holds exactly when an assignment exists for which every
/// entry of `S` is recovered as the saturation of its capped assigned sum.
pub fn one_step_leq_plus_sat(
    lat: &MeetSemilattice,
    s: &CombinatorialType,
    t: &CombinatorialType,
) -> Result<bool, TypeError> {
    check_same_flavor(s, t)?;
    if !s.is_saturated(lat) || !t.is_saturated(lat) {
        return Err(TypeError::NotSaturated);
    }
    if s.entries.is_empty() && t.entries.is_empty() && !s.is_pointed() {
        return Ok(true);
    }
    let arity = lat.len();
    let sums = subset_sums(&t.entries, arity);
    let bp_targets = usize::from(s.is_pointed());
    let mut scratch: Vec<u32> = Vec::with_capacity(arity);
    Ok(exists_partition(
        t.entries.len(),
        s.entries.len() + bp_targets,
        |j, mask| {
            let (lo_sum, hi_sum) = &sums[mask];
            if j < s.entries.len() {
                let sj = &s.entries[j];
                sat_min_hits(lat, lo_sum, &sj.lower, &mut scratch)
                    && sat_min_hits(lat, hi_sum, &sj.upper, &mut scratch)
            } else {
                let sj = s.basepoint.as_ref().expect("pointed flavor checked");
                let tb = t.basepoint.as_ref().expect("pointed flavor checked");
                let lo = lo_sum.pointwise_sum(&tb.lower);
                let hi = hi_sum.pointwise_sum(&tb.upper);
                sat_min_hits(lat, &lo, &sj.lower, &mut scratch)
                    && sat_min_hits(lat, &hi, &sj.upper, &mut scratch)
            }
        },
    ))
}

/// Result of a universe-relative saturated-order query: whether the
/// relation holds, and if so a witness chain of universe indices from the
/// smaller type to the larger one along one-step relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOrderWitness {
    pub holds: bool,
    pub chain: Vec<usize>,
}

/// Decides the saturated merge order `S <=+,sat T` as the transitive
/// closure of the one-step relation restricted to the given universe, by
/// breadth-first search. Both types must belong to the universe.
pub fn leq_plus_sat(
    lat: &MeetSemilattice,
    s: &CombinatorialType,
    t: &CombinatorialType,
    universe: &[CombinatorialType],
) -> Result<SatOrderWitness, TypeError> {
    let si = universe
        .iter()
        .position(|u| u == s)
        .ok_or(TypeError::OutsideUniverse)?;
    let ti = universe
        .iter()
        .position(|u| u == t)
        .ok_or(TypeError::OutsideUniverse)?;
    let mut parent: Vec<Option<usize>> = vec![None; universe.len()];
    let mut visited = vec![false; universe.len()];
    visited[si] = true;
    let mut frontier = vec![si];
    while !frontier.is_empty() && !visited[ti] {
        let mut next = Vec::new();
        for &u in &frontier {
            for (v, candidate) in universe.iter().enumerate() {
                if !visited[v]
                    && check_same_flavor(&universe[u], candidate).is_ok()
                    && one_step_leq_plus_sat(lat, &universe[u], candidate)?
                {
                    visited[v] = true;
                    parent[v] = Some(u);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    if !visited[ti] {
        return Ok(SatOrderWitness {
            holds: false,
            chain: Vec::new(),
        });
    }
    let mut chain = vec![ti];
    let mut cur = ti;
    while let Some(p) = parent[cur] {
        chain.push(p);
        cur = p;
    }
    chain.reverse();
    Ok(SatOrderWitness { holds: true, chain })
}

/// Adjacency lists of the one-step saturated-order digraph over a universe
/// of saturated types (edge `u -> v` when `u` is one step below `v`).
/// Self-loops are omitted.
pub fn one_step_digraph(
    lat: &MeetSemilattice,
    universe: &[CombinatorialType],
) -> Result<Vec<Vec<usize>>, TypeError> {
    let n = universe.len();
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            if u != v
                && check_same_flavor(&universe[u], &universe[v]).is_ok()
                && one_step_leq_plus_sat(lat, &universe[u], &universe[v])?
            {
                adj[u].push(v);
            }
        }
    }
    Ok(adj)
}

/// All unordered pairs of distinct universe members that are mutually
/// related in the saturated merge order; an empty result certifies
/// antisymmetry over the universe. Computed from the strongly connected
/// components of the one-step digraph.
pub fn mutually_related_pairs(
    lat: &MeetSemilattice,
    universe: &[CombinatorialType],
) -> Result<Vec<(usize, usize)>, TypeError> {
    let adj = one_step_digraph(lat, universe)?;
    let components = strongly_connected_components(&adj);
    let mut pairs = Vec::new();
    for comp in components {
        for (a, &x) in comp.iter().enumerate() {
            for &y in &comp[a + 1..] {
                pairs.push((x.min(y), x.max(y)));
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Tarjan's algorithm, iterative to keep stack depth independent of the
/// universe size. Components come back sorted internally.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut counter = 0usize;
    let mut components = Vec::new();
    // Explicit DFS frames: (vertex, next child position).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, child)) = frames.last() {
            if child < adj[v].len() {
                frames.last_mut().expect("frame exists").1 += 1;
                let w = adj[v][child];
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component members are on the stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    components
}

/// Bounds for census enumeration: the number of points and the total depth
/// allowed for each entry's upper part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeBounds {
    pub max_points: usize,
    pub max_entry_depth: u32,
}

/// Which kind of types to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeFlavor {
    Absolute,
    Relative,
    Pointed,
}

/// All saturated types within the bounds, in canonical order, duplicates
/// impossible by construction. Relative and pointed flavors enumerate
/// strict entry pairs `lower < upper`; the pointed basepoint entry may be
/// diagonal or trivial. With `essential_only` every entry pair (basepoint
/// included) must be an essential pair of chains.
pub fn enumerate_saturated_types(
    lat: &MeetSemilattice,
    bounds: TypeBounds,
    flavor: TypeFlavor,
    essential_only: bool,
) -> Result<Vec<CombinatorialType>, TypeError> {
    let chains = crate::chains::enumerate_saturated_chains(lat, bounds.max_entry_depth);
    let trivial = Chain::trivial(lat);

    // Candidate entries in canonical order.
    let mut entry_pool: Vec<TypeEntry> = Vec::new();
    match flavor {
        TypeFlavor::Absolute => {
            for c in &chains {
                if !c.is_trivial() {
                    entry_pool.push(TypeEntry {
                        lower: trivial.depths().clone(),
                        upper: c.depths().clone(),
                    });
                }
            }
        }
        TypeFlavor::Relative | TypeFlavor::Pointed => {
            for w in &chains {
                for x in &chains {
                    if w != x && crate::chains::chain_leq(w, x) {
                        entry_pool.push(TypeEntry {
                            lower: w.depths().clone(),
                            upper: x.depths().clone(),
                        });
                    }
                }
            }
        }
    }
    entry_pool.sort();
    if essential_only {
        let mut kept = Vec::with_capacity(entry_pool.len());
        for e in entry_pool {
            let w = saturate(lat, &e.lower);
            let x = saturate(lat, &e.upper);
            if is_essential_pair(lat, &w, &x)? {
                kept.push(e);
            }
        }
        entry_pool = kept;
    }

    // Basepoint pool for the pointed flavor: any ordered (possibly
    // diagonal, possibly trivial) pair.
    let mut basepoint_pool: Vec<TypeEntry> = Vec::new();
    if matches!(flavor, TypeFlavor::Pointed) {
        for w in &chains {
            for x in &chains {
                if crate::chains::chain_leq(w, x) {
                    basepoint_pool.push(TypeEntry {
                        lower: w.depths().clone(),
                        upper: x.depths().clone(),
                    });
                }
            }
        }
        basepoint_pool.sort();
        if essential_only {
            let mut kept = Vec::with_capacity(basepoint_pool.len());
            for e in basepoint_pool {
                let w = saturate(lat, &e.lower);
                let x = saturate(lat, &e.upper);
                if is_essential_pair(lat, &w, &x)? {
                    kept.push(e);
                }
            }
            basepoint_pool = kept;
        }
    }

    // Multisets as nondecreasing index sequences.
    let mut multisets: Vec<Vec<TypeEntry>> = Vec::new();
    let mut current: Vec<TypeEntry> = Vec::new();
    fn pick(
        pool: &[TypeEntry],
        start: usize,
        room: usize,
        current: &mut Vec<TypeEntry>,
        out: &mut Vec<Vec<TypeEntry>>,
    ) {
        out.push(current.clone());
        if room == 0 {
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i].clone());
            pick(pool, i, room - 1, current, out);
            current.pop();
        }
    }
    pick(
        &entry_pool,
        0,
        bounds.max_points,
        &mut current,
        &mut multisets,
    );

    let relative = !matches!(flavor, TypeFlavor::Absolute);
    let mut out = Vec::new();
    for entries in multisets {
        match flavor {
            TypeFlavor::Pointed => {
                for bp in &basepoint_pool {
                    out.push(CombinatorialType {
                        relative,
                        entries: entries.clone(),
                        basepoint: Some(bp.clone()),
                    });
                }
            }
            _ => out.push(CombinatorialType {
                relative,
                entries,
                basepoint: None,
            }),
        }
    }
    out.sort();
    Ok(out)
}

/// Relative gamma, rank and strict-support of one entry, evaluated on the
/// word multiplicities of both sides.
fn entry_sums(bp: &BlowupPoset, e: &TypeEntry) -> (i64, i64) {
    let weight = |g: &DepthFunction, table: &[u64]| -> i64 {
        saturate(bp.lattice(), g)
            .word()
            .iter()
            .map(|&(q, m)| table[q] as i64 * i64::from(m))
            .sum()
    };
    let gamma = weight(&e.upper, bp.gamma_weights()) - weight(&e.lower, bp.gamma_weights());
    let rank = weight(&e.upper, bp.rank_weights()) - weight(&e.lower, bp.rank_weights());
    (gamma, rank)
}

/// The census exponent `kappa = gamma - rank - supp` of a relative type,
/// where all three terms sum over entries (gamma and rank include the
/// basepoint; supp counts strict non-basepoint entries only).
pub fn kappa_of(bp: &BlowupPoset, t: &CombinatorialType) -> Result<i64, TypeError> {
    if !t.is_relative() {
        return Err(TypeError::AbsoluteType);
    }
    let mut gamma = 0i64;
    let mut rank = 0i64;
    for e in t.all_entries() {
        let (g, r) = entry_sums(bp, e);
        gamma += g;
        rank += r;
    }
    let supp = t.entries.iter().filter(|e| !e.is_diagonal()).count() as i64;
    Ok(gamma - rank - supp)
}

/// Per-degree Betti numbers of the combined stalk over all strict entries,
/// with the accumulated degree shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkData {
    pub betti: Vec<u64>,
    pub shift: u32,
}

/// One census row for a saturated relative type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRecord {
    pub ty: CombinatorialType,
    pub gamma: u64,
    pub rank: u64,
    pub supp: u64,
    pub kappa: i64,
    pub config_dim_real: u64,
    pub essential: bool,
    pub mobius: i64,
    pub mu: Option<StalkData>,
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Assembles the census row of a saturated relative type: the additive
/// invariants, the essentiality flag, the product of per-entry Mobius
/// numbers, and optionally the stalk Betti vector combined across strict
/// entries by the graded tensor rule (which requires, and checks, that
/// every per-entry stalk is torsion-free). The basepoint entry enters gamma
/// and rank but not supp, Mobius or the stalk.
pub fn stratum_record(
    bp: &BlowupPoset,
    t: &CombinatorialType,
    with_mu: bool,
) -> Result<StratumRecord, TypeError> {
    if !t.is_relative() {
        return Err(TypeError::AbsoluteType);
    }
    if !t.is_saturated(bp.lattice()) {
        return Err(TypeError::NotSaturated);
    }
    let lat = bp.lattice();
    let mut gamma = 0i64;
    let mut rank = 0i64;
    for e in t.all_entries() {
        let (g, r) = entry_sums(bp, e);
        gamma += g;
        rank += r;
    }
    debug_assert!(gamma >= 0 && rank >= 0, "pairs are ordered, so both are monotone");
    let supp = t.entries.iter().filter(|e| !e.is_diagonal()).count() as u64;
    let kappa = gamma - rank - supp as i64;

    let mut essential = true;
    for e in t.all_entries() {
        let w = saturate(lat, &e.lower);
        let x = saturate(lat, &e.upper);
        if !is_essential_pair(lat, &w, &x)? {
            essential = false;
            break;
        }
    }

    let mut mobius_product = 1i64;
    for e in &t.entries {
        let w = saturate(lat, &e.lower);
        let x = saturate(lat, &e.upper);
        let (elems, interval) = chain_interval_poset(lat, &w, &x)?;
        let wi = elems.iter().position(|z| *z == w).expect("w in [w, x]");
        let xi = elems.iter().position(|z| *z == x).expect("x in [w, x]");
        mobius_product *= mobius(&interval, wi, xi)?;
    }

    let mu = if with_mu {
        let mut betti = vec![1u64];
        let mut shift = 0u32;
        for e in &t.entries {
            if e.is_diagonal() {
                continue;
            }
            let w = saturate(lat, &e.lower);
            let x = saturate(lat, &e.upper);
            let stalk = mu_stalk(lat, &[(w, x)])?;
            if stalk.cohomology.groups.iter().any(|g| !g.torsion.is_empty()) {
                return Err(TypeError::TorsionInStalk);
            }
            let vec: Vec<u64> = stalk.cohomology.groups.iter().map(|g| g.betti).collect();
            betti = convolve(&betti, &vec);
            shift += stalk.shift;
        }
        Some(StalkData { betti, shift })
    } else {
        None
    };

    Ok(StratumRecord {
        ty: t.clone(),
        gamma: gamma as u64,
        rank: rank as u64,
        supp,
        kappa,
        config_dim_real: 2 * supp,
        essential,
        mobius: mobius_product,
        mu,
    })
}
