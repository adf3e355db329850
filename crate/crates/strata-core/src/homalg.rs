//! Exact integral (co)homology of order complexes and interval pairs.
//!
//! Everything runs through one pipeline: build the nerve of a finite poset,
//! assemble boundary matrices, reduce them to Smith normal form over
//! overflow-checked `i64`, and read off Betti numbers and invariant factors.
//! Cohomology is derived from homology by universal coefficients so there is
//! a single reduction path to trust. On top sit the stalk computation for an
//! ordered pair of chain tuples and the independent Euler-versus-Mobius
//! comparison used to cross-validate both code paths.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{chain_interval_poset, chain_leq, Chain, ChainError};
use crate::lattice::{mobius, FinitePoset, LatticeError, MeetSemilattice, Poset};

/// Errors from complex construction and homology computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomalgError {
    /// A simplex references a vertex outside the ambient index range.
    BadVertex { index: usize, count: usize },
    /// A simplex repeats a vertex.
    DegenerateSimplex,
    /// The claimed subcomplex contains a simplex the ambient complex lacks.
    NotSubcomplex,
    /// Integer overflow during matrix reduction.
    Overflow,
    /// The input relation is not antisymmetric at the witness pair.
    NotAntisymmetric { x: usize, y: usize },
    /// The input relation is not transitive at the witness triple.
    NotTransitive { x: usize, y: usize, z: usize },
    /// A chain-level precondition failed.
    Chain(ChainError),
    /// A poset-level operation failed.
    Lattice(LatticeError),
}

impl fmt::Display for HomalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomalgError::BadVertex { index, count } => {
                write!(f, "vertex {index} out of range for {count} vertices")
            }
            HomalgError::DegenerateSimplex => write!(f, "simplex repeats a vertex"),
            HomalgError::NotSubcomplex => write!(f, "not a subcomplex of the ambient complex"),
            HomalgError::Overflow => write!(f, "integer overflow during Smith reduction"),
            HomalgError::NotAntisymmetric { x, y } => {
                write!(f, "relation not antisymmetric at ({x}, {y})")
            }
            HomalgError::NotTransitive { x, y, z } => {
                write!(f, "relation not transitive at ({x}, {y}, {z})")
            }
            HomalgError::Chain(e) => write!(f, "{e}"),
            HomalgError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HomalgError {}

impl From<ChainError> for HomalgError {
    fn from(e: ChainError) -> Self {
        HomalgError::Chain(e)
    }
}

impl From<LatticeError> for HomalgError {
    fn from(e: LatticeError) -> Self {
        HomalgError::Lattice(e)
    }
}

/// A finite abstract simplicial complex over vertices `0..vertex_count`.
///
/// The simplex list is face-closed, duplicate-free and canonically sorted
/// (by dimension, then lexicographically); constructors establish this from
/// any generating list of simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by the given simplices: validates the
    /// vertices, then closes under faces and deduplicates.
    pub fn from_simplices(
        vertex_count: usize,
        generators: &[Vec<usize>],
    ) -> Result<Self, HomalgError> {
        let mut closure: BTreeSet<Vec<usize>> = BTreeSet::new();
        for simplex in generators {
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(HomalgError::DegenerateSimplex);
                }
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= vertex_count) {
                return Err(HomalgError::BadVertex {
                    index: v,
                    count: vertex_count,
                });
            }
            if sorted.is_empty() {
                continue;
            }
            // Every nonempty subset is a face; enumerate by bitmask.
            let k = sorted.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| sorted[i])
                    .collect();
                closure.insert(face);
            }
        }
        let mut simplices: Vec<Vec<usize>> = closure.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Dimension of the complex, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// The full subcomplex of simplices avoiding one vertex.
    pub fn vertex_deleted(&self, v: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertex_count: self.vertex_count,
            simplices: self
                .simplices
                .iter()
                .filter(|s| !s.contains(&v))
                .cloned()
                .collect(),
        }
    }

    fn contains_all_of(&self, other: &SimplicialComplex) -> bool {
        let set: BTreeSet<&Vec<usize>> = self.simplices.iter().collect();
        other.simplices.iter().all(|s| set.contains(s))
    }

    /// Euler characteristic from simplex counts alone.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }
}

/// The nerve of a finite poset: one vertex per element, one simplex per
/// chain. The relation is revalidated first because implementations of
/// [`FinitePoset`] assembled on the fly (products, intervals) are exactly
/// where ordering bugs would hide.
pub fn order_complex<P: FinitePoset + ?Sized>(p: &P) -> Result<SimplicialComplex, HomalgError> {
    let n = p.len();
    for x in 0..n {
        for y in (x + 1)..n {
            if p.leq(x, y) && p.leq(y, x) {
                return Err(HomalgError::NotAntisymmetric { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && p.leq(x, y) {
                for z in 0..n {
                    if y != z && p.leq(y, z) && !p.leq(x, z) {
                        return Err(HomalgError::NotTransitive { x, y, z });
                    }
                }
            }
        }
    }
    // Chains are generated in strictly increasing poset order, so each one is
    // found exactly once.
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn grow<P: FinitePoset + ?Sized>(
        p: &P,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut sorted = stack.clone();
        sorted.sort_unstable();
        out.push(sorted);
        let &last = stack.last().expect("grow is called with a nonempty chain");
        for y in 0..p.len() {
            if y != last && p.leq(last, y) {
                stack.push(y);
                grow(p, stack, out);
                stack.pop();
            }
        }
    }
    for x in 0..n {
        stack.push(x);
        grow(p, &mut stack, &mut simplices);
        stack.pop();
    }
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(SimplicialComplex {
        vertex_count: n,
        simplices,
    })
}

/// One homology group: free rank plus the invariant factors above 1, in
/// divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: u64,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology (or cohomology) groups indexed by degree `0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn group(&self, d: usize) -> HomologyGroup {
        self.groups.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Alternating sum of Betti numbers; torsion does not contribute.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(d, g)| {
                let b = g.betti as i64;
                if d % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }

    fn trim(mut self) -> Self {
        while matches!(self.groups.last(), Some(g) if g.is_zero()) {
            self.groups.pop();
        }
        self
    }
}

fn checked_add(a: i64, b: i64) -> Result<i64, HomalgError> {
    a.checked_add(b).ok_or(HomalgError::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64, HomalgError> {
    a.checked_mul(b).ok_or(HomalgError::Overflow)
}

/// Smith normal form: returns the nonzero diagonal entries (absolute values,
/// each dividing the next). The pivot is always a minimal-magnitude entry,
/// which keeps intermediate values small for the incidence matrices here.
fn smith_normal_form(mut m: Vec<Vec<i64>>) -> Result<Vec<i64>, HomalgError> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    'outer: while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        // Clear the pivot column and row; any nonzero remainder becomes the
        // new, strictly smaller pivot, so this terminates.
        for i in (t + 1)..rows {
            if m[i][t] != 0 {
                let q = m[i][t] / m[t][t];
                for j in t..cols {
                    let delta = checked_mul(q, m[t][j])?;
                    m[i][j] = checked_add(m[i][j], -delta)?;
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    continue 'outer;
                }
            }
        }
        for j in (t + 1)..cols {
            if m[t][j] != 0 {
                let q = m[t][j] / m[t][t];
                for row in m.iter_mut().skip(t) {
                    let delta = checked_mul(q, row[t])?;
                    row[j] = checked_add(row[j], -delta)?;
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'outer;
                }
            }
        }
        // Divisibility fix-up: fold any non-divisible entry into the pivot
        // row and re-run; the pivot magnitude strictly drops toward the gcd.
        for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if m[i][j] % m[t][t] != 0 {
                    for k in t..cols {
                        m[t][k] = checked_add(m[t][k], m[i][k])?;
                    }
                    continue 'outer;
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    Ok(diag)
}

/// The chain-group basis of a (relative) complex: simplices of `K`
/// outside `L`, grouped by dimension.
struct RelativeBasis {
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

fn relative_basis(k: &SimplicialComplex, l: Option<&SimplicialComplex>) -> RelativeBasis {
    let excluded: BTreeSet<&Vec<usize>> = l
        .map(|l| l.simplices.iter().collect())
        .unwrap_or_default();
    let dim = k.dim().map_or(0, |d| d + 1);
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
    for s in &k.simplices {
        if !excluded.contains(s) {
            by_dim[s.len() - 1].push(s.clone());
        }
    }
    let index = by_dim
        .iter()
        .map(|sims| {
            sims.iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();
    RelativeBasis { by_dim, index }
}

/// Boundary matrix from degree `d` to degree `d - 1` over the given basis;
/// faces outside the basis (i.e. in the subcomplex) are dropped.
fn boundary_matrix(basis: &RelativeBasis, d: usize) -> Vec<Vec<i64>> {
    let sources = &basis.by_dim[d];
    let target_count = if d == 0 { 0 } else { basis.by_dim[d - 1].len() };
    let mut mat = vec![vec![0i64; sources.len()]; target_count];
    if d == 0 {
        return mat;
    }
    for (col, s) in sources.iter().enumerate() {
        for (i, _) in s.iter().enumerate() {
            let mut face = s.clone();
            face.remove(i);
            if let Some(&row) = basis.index[d - 1].get(&face) {
                mat[row][col] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    mat
}

fn mat_is_zero_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<bool, HomalgError> {
    // a: (m x n), b: (n x p); check a * b = 0.
    if a.is_empty() || b.is_empty() {
        return Ok(true);
    }
    let p = b[0].len();
    for row in a {
        for j in 0..p {
            let mut acc = 0i64;
            for (k, &av) in row.iter().enumerate() {
                acc = checked_add(acc, checked_mul(av, b[k][j])?)?;
            }
            if acc != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn homology_of_basis(basis: &RelativeBasis) -> Result<HomologySummary, HomalgError> {
    let top = basis.by_dim.len();
    if top == 0 {
        return Ok(HomologySummary::default());
    }
    let matrices: Vec<Vec<Vec<i64>>> = (0..top).map(|d| boundary_matrix(basis, d)).collect();
    for d in 1..top {
        assert!(
            mat_is_zero_product(&matrices[d - 1], &matrices[d])?,
            "boundary composed with boundary must vanish"
        );
    }
    let reductions: Vec<Vec<i64>> = matrices
        .into_iter()
        .map(smith_normal_form)
        .collect::<Result<_, _>>()?;
    let mut groups = Vec::with_capacity(top);
    for d in 0..top {
        let n_d = basis.by_dim[d].len() as u64;
        let rank_d = reductions[d].len() as u64;
        let rank_up = if d + 1 < top {
            reductions[d + 1].len() as u64
        } else {
            0
        };
        let betti = n_d - rank_d - rank_up;
        let torsion = if d + 1 < top {
            reductions[d + 1]
                .iter()
                .filter(|&&f| f > 1)
                .map(|&f| f as u64)
                .collect()
        } else {
            Vec::new()
        };
        groups.push(HomologyGroup { betti, torsion });
    }
    Ok(HomologySummary { groups }.trim())
}

/// Integral homology of a complex (unreduced: a point has one degree-0
/// group of rank 1).
pub fn homology(k: &SimplicialComplex) -> Result<HomologySummary, HomalgError> {
    homology_of_basis(&relative_basis(k, None))
}

/// Integral homology of the pair `(K, L)`; fails unless `L` is a subcomplex
/// of `K`.
pub fn relative_homology(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<HomologySummary, HomalgError> {
    if !k.contains_all_of(l) {
        return Err(HomalgError::NotSubcomplex);
    }
    homology_of_basis(&relative_basis(k, Some(l)))
}

/// Universal coefficients: the degree-k cohomology is the free part of the
/// degree-k homology plus the torsion of degree k - 1. For the complexes
/// here the top homology is torsion-free, so no degree is pushed past the
/// dimension.
pub fn cohomology_from_homology(h: &HomologySummary) -> HomologySummary {
    let n = h.groups.len();
    let mut groups = Vec::with_capacity(n);
    for d in 0..n {
        let betti = h.groups[d].betti;
        let torsion = if d > 0 {
            h.groups[d - 1].torsion.clone()
        } else {
            Vec::new()
        };
        groups.push(HomologyGroup { betti, torsion });
    }
    if let Some(last) = h.groups.last() {
        if !last.torsion.is_empty() {
            groups.push(HomologyGroup {
                betti: 0,
                torsion: last.torsion.clone(),
            });
        }
    }
    HomologySummary { groups }.trim()
}

/// Relative Euler characteristic `chi(K) - chi(L)` from simplex counts.
pub fn relative_euler_characteristic(k: &SimplicialComplex, l: &SimplicialComplex) -> i64 {
    k.euler_characteristic() - l.euler_characteristic()
}

/// The stalk of the interval sheaf at an ordered tuple of chain pairs: the
/// relative cohomology of the pair of nerves of the product over all strict
/// coordinates of the half-open intervals `(w_i, x_i]`, against the
/// subcomplex missing the product top. Diagonal coordinates are unit tensor
/// factors and are skipped; the shift records how many strict coordinates
/// contributed a degree shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuStalk {
    pub cohomology: HomologySummary,
    pub shift: u32,
}

impl MuStalk {
    /// All groups zero in every degree.
    pub fn is_zero(&self) -> bool {
        self.cohomology.is_zero()
    }

    /// Euler characteristic including the sign of the shift.
    pub fn shifted_euler(&self) -> i64 {
        let raw = self.cohomology.euler_characteristic();
        if self.shift % 2 == 0 {
            raw
        } else {
            -raw
        }
    }
}

fn unit_stalk() -> MuStalk {
    MuStalk {
        cohomology: HomologySummary {
            groups: vec![HomologyGroup {
                betti: 1,
                torsion: Vec::new(),
            }],
        },
        shift: 0,
    }
}

/// Indices of a homotopy core of a finite poset: repeatedly removes beat
/// points, elements whose strict up-set has a minimum or whose strict
/// down-set has a maximum. Each removal is a strong deformation retract of
/// the order complex, so every (co)homology group computed over the core
/// agrees with the full nerve while the chain count can drop by orders of
/// magnitude on wide product posets.
fn poset_core(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = leq(i, j);
        }
    }
    let mut alive: Vec<usize> = (0..n).collect();
    'outer: loop {
        for (pos, &v) in alive.iter().enumerate() {
            let up: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&w| w != v && m[v][w])
                .collect();
            if up.iter().any(|&u| up.iter().all(|&w| m[u][w])) {
                alive.remove(pos);
                continue 'outer;
            }
            let down: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&w| w != v && m[w][v])
                .collect();
            if down.iter().any(|&d| down.iter().all(|&w| m[w][d])) {
                alive.remove(pos);
                continue 'outer;
            }
        }
        break;
    }
    alive
}

/// Euler characteristic of the order complex of a finite strict poset by
/// signed chain counting, without materializing the nerve: with
/// `g(v) = 1 - sum of g(w) over w strictly above v`, summing `g` over all
/// elements gives the alternating simplex count.
fn nerve_euler_characteristic(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<i64, HomalgError> {
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for w in 0..n {
            if v != w && leq(v, w) {
                above[v].push(w);
            }
        }
    }
    // Anything above v has a strictly smaller up-set, so ascending up-set
    // size is a valid evaluation order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| above[v].len());
    let mut g = vec![0i64; n];
    let mut total = 0i64;
    for &v in &order {
        let mut acc = 1i64;
        for &w in &above[v] {
            acc = checked_add(acc, -g[w])?;
        }
        g[v] = acc;
        total = checked_add(total, acc)?;
    }
    Ok(total)
}

pub fn mu_stalk(
    lat: &MeetSemilattice,
    pairs: &[(Chain, Chain)],
) -> Result<MuStalk, HomalgError> {
    let mut strict: Vec<&(Chain, Chain)> = Vec::new();
    for pair in pairs {
        if !chain_leq(&pair.0, &pair.1) {
            return Err(HomalgError::Chain(ChainError::NotComparable));
        }
        if pair.0 != pair.1 {
            strict.push(pair);
        }
    }
    if strict.is_empty() {
        return Ok(unit_stalk());
    }
    // Per-coordinate half-open intervals (w, x].
    let mut coords: Vec<Vec<Chain>> = Vec::new();
    for (w, x) in &strict {
        let (elems, _) = chain_interval_poset(lat, w, x)?;
        coords.push(elems.into_iter().filter(|z| z != w).collect());
    }
    // Cartesian product, componentwise order, top = (x_1, .., x_k).
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for coord in &coords {
        let mut next = Vec::with_capacity(tuples.len() * coord.len());
        for t in &tuples {
            for i in 0..coord.len() {
                let mut t = t.clone();
                t.push(i);
                next.push(t);
            }
        }
        tuples = next;
    }
    let tuple_leq = |a: &[usize], b: &[usize]| {
        a.iter()
            .zip(b)
            .enumerate()
            .all(|(c, (&i, &j))| chain_leq(&coords[c][i], &coords[c][j]))
    };
    let top_tuple: Vec<usize> = strict
        .iter()
        .enumerate()
        .map(|(c, (_, x))| {
            coords[c]
                .iter()
                .position(|z| z == x)
                .expect("the upper endpoint lies in its half-open interval")
        })
        .collect();
    let top = tuples
        .iter()
        .position(|t| *t == top_tuple)
        .expect("the top tuple is a product element");
    // Dismantle the punctured product to its homotopy core, then re-attach
    // the top so the relative pair keeps the same homology with far fewer
    // simplices.
    let rest: Vec<usize> = (0..tuples.len()).filter(|&i| i != top).collect();
    let core = poset_core(rest.len(), |i, j| {
        tuple_leq(&tuples[rest[i]], &tuples[rest[j]])
    });
    let mut kept: Vec<usize> = core.into_iter().map(|i| rest[i]).collect();
    kept.push(top);
    let product = Poset::from_relation(kept.len(), |i, j| {
        tuple_leq(&tuples[kept[i]], &tuples[kept[j]])
    })?;
    let nerve = order_complex(&product)?;
    let without_top = nerve.vertex_deleted(kept.len() - 1);
    let h = relative_homology(&nerve, &without_top)?;
    Ok(MuStalk {
        cohomology: cohomology_from_homology(&h),
        shift: strict.len() as u32,
    })
}

/// Both sides of the stalk Euler number identity, computed independently:
/// the signed relative Euler characteristic of the interval pair, and the
/// Mobius number of the closed interval `[w, x]` in the chain poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerVsMobius {
    pub euler: i64,
    pub mobius: i64,
    pub equal: bool,
}

pub fn euler_vs_mobius(
    lat: &MeetSemilattice,
    w: &Chain,
    x: &Chain,
) -> Result<EulerVsMobius, HomalgError> {
    if !chain_leq(w, x) {
        return Err(HomalgError::Chain(ChainError::NotComparable));
    }
    let euler = if w == x {
        1
    } else {
        let (elems, _) = chain_interval_poset(lat, w, x)?;
        let half_open: Vec<Chain> = elems.into_iter().filter(|z| z != w).collect();
        let open: Vec<&Chain> = half_open.iter().filter(|z| *z != x).collect();
        let chi_half = nerve_euler_characteristic(half_open.len(), |i, j| {
            chain_leq(&half_open[i], &half_open[j])
        })?;
        let chi_open =
            nerve_euler_characteristic(open.len(), |i, j| chain_leq(open[i], open[j]))?;
        // One strict coordinate means one degree shift, hence the sign.
        -(chi_half - chi_open)
    };
    let (elems, interval) = chain_interval_poset(lat, w, x)?;
    let wi = elems.iter().position(|z| z == w).expect("w lies in [w, x]");
    let xi = elems.iter().position(|z| z == x).expect("x lies in [w, x]");
    let mobius = mobius(&interval, wi, xi)?;
    Ok(EulerVsMobius {
        euler,
        mobius,
        equal: euler == mobius,
    })
}
