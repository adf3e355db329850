//! Numerical stability ranges and their certified hypotheses.
//!
//! Everything here is integer arithmetic layered on top of the chain and
//! type machinery: unobstructedness windows for linear systems on a curve,
//! the slope and intercept of the induced connectivity range, and a builder
//! for the bounded poset of relative types whose closure and coverage
//! hypotheses are verified exhaustively over an enumerated universe. The
//! last third implements the rank-five Picard lattice of the plane blown up
//! at four points: intersection pairing, ampleness against the ten
//! exceptional classes, the quadratic Cremona involution, normalization to
//! a degree-minimal representative, and the orbit maximum of the stability
//! slope under the generated Weyl group.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{
    blowup_chain, enumerate_saturated_chains, essential_above, render_word, saturate, Chain,
    DepthFunction,
};
use crate::lattice::{build_blowup_poset, BlowupPoset, MeetSemilattice};
use crate::types::{
    kappa_of, one_step_leq_plus_sat, CombinatorialType, TypeEntry, TypeError,
};

/// Errors from stability computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityError {
    /// A curve context needs at least one line multiplicity.
    NoLines,
    /// The ambient dimension must be at least 3.
    AmbientDimTooSmall { v: u32 },
    /// The operation needs the general-position flag on the context.
    GeneralPositionRequired,
    /// The operation needs the pointed flag on the context.
    PointedRequired,
    /// Placing the baseline multiplicities needs more points than the
    /// universe bounds allow.
    BoundsTooTight { needed: usize, allowed: usize },
    /// A Cremona triple must have three distinct indices below 4.
    BadCremonaTriple { triple: [usize; 3] },
    /// The class is not ample, so normalization is undefined.
    NotAmple { class: DPClass },
    /// A type-level operation failed.
    Type(TypeError),
}

impl fmt::Display for StabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityError::NoLines => write!(f, "context has no line multiplicities"),
            StabilityError::AmbientDimTooSmall { v } => {
                write!(f, "ambient dimension {v} is below 3")
            }
            StabilityError::GeneralPositionRequired => {
                write!(f, "operation needs the general-position flag")
            }
            StabilityError::PointedRequired => write!(f, "operation needs the pointed flag"),
            StabilityError::BoundsTooTight { needed, allowed } => {
                write!(f, "baseline needs {needed} points, bounds allow {allowed}")
            }
            StabilityError::BadCremonaTriple { triple } => {
                write!(
                    f,
                    "Cremona triple [{}, {}, {}] is not three distinct indices below 4",
                    triple[0], triple[1], triple[2]
                )
            }
            StabilityError::NotAmple { class } => {
                write!(
                    f,
                    "class ({}; {}, {}, {}, {}) is not ample",
                    class.d, class.n[0], class.n[1], class.n[2], class.n[3]
                )
            }
            StabilityError::Type(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StabilityError {}

impl From<TypeError> for StabilityError {
    fn from(e: TypeError) -> Self {
        StabilityError::Type(e)
    }
}

/// The numeric data of one stability problem: maps of degree `d` from a
/// genus-`g` curve, with prescribed multiplicities `n_i` along the `r`
/// exceptional lines of a blown-up projective space of dimension `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveContext {
    genus: u32,
    degree: i64,
    multiplicities: Vec<u64>,
    ambient_dim: u32,
    pointed: bool,
    general_position: bool,
}

impl CurveContext {
    pub fn new(
        genus: u32,
        degree: i64,
        multiplicities: Vec<u64>,
        ambient_dim: u32,
    ) -> Result<Self, StabilityError> {
        if multiplicities.is_empty() {
            return Err(StabilityError::NoLines);
        }
        if ambient_dim < 3 {
            return Err(StabilityError::AmbientDimTooSmall { v: ambient_dim });
        }
        Ok(CurveContext {
            genus,
            degree,
            multiplicities,
            ambient_dim,
            pointed: false,
            general_position: false,
        })
    }

    /// Marks the context as pointed (one marked point on the curve).
    pub fn with_pointed(mut self) -> Self {
        self.pointed = true;
        self
    }

    /// Asserts that the blown-up points are in general position.
    pub fn with_general_position(mut self) -> Self {
        self.general_position = true;
        self
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position
    }

    /// `n_j` for 1-based `j`, reading zero beyond the actual lines. The
    /// general-position clauses quantify over `j <= v` with this padding.
    fn padded(&self, j: usize) -> i64 {
        if j >= 1 && j <= self.multiplicities.len() {
            self.multiplicities[j - 1] as i64
        } else {
            0
        }
    }

    fn mult_sum(&self) -> i64 {
        self.multiplicities.iter().map(|&n| n as i64).sum()
    }
}

/// Whether a configuration with total multiplicities `m0` and `ml` is
/// unobstructed on degree grounds alone: `d - m0 - ml >= 2g - 1`.
pub fn rr_unobstructed(ctx: &CurveContext, m0: u64, ml: u64) -> bool {
    ctx.degree - m0 as i64 - ml as i64 >= 2 * ctx.genus as i64 - 1
}

/// Outcome of the general-position unobstructedness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GpCheck {
    pub ok: bool,
    /// Clamped sum bounding the obstruction space; zero when `ok` holds
    /// with room to spare. Termwise-negative contributions are read as no
    /// contribution.
    pub h1_bound: u64,
}

/// General-position test: for every hyperplane direction `j <= v` the
/// multiplicities away from line `j` must satisfy
/// `sum_{i != j} m_i <= d - m0 + 2 - 2g`, with lines padded by zero when
/// there are fewer than `v` of them. Requires the general-position flag.
pub fn gp_unobstructed(
    ctx: &CurveContext,
    m0: u64,
    mvec: &[u64],
) -> Result<GpCheck, StabilityError> {
    if !ctx.general_position {
        return Err(StabilityError::GeneralPositionRequired);
    }
    assert_eq!(
        mvec.len(),
        ctx.multiplicities.len(),
        "one multiplicity per line"
    );
    let d = ctx.degree;
    let g2 = 2 * ctx.genus as i64;
    let total: i64 = mvec.iter().map(|&m| m as i64).sum();
    let rhs = d - m0 as i64 + 2 - g2;
    let mut ok = true;
    let mut h1_bound = 0i64;
    for j in 1..=ctx.ambient_dim as usize {
        let excluded = if j <= mvec.len() {
            mvec[j - 1] as i64
        } else {
            0
        };
        let away = total - excluded;
        if away > rhs {
            ok = false;
        }
        h1_bound += (away - (d + 2 - g2)).max(0);
    }
    Ok(GpCheck {
        ok,
        h1_bound: h1_bound as u64,
    })
}

/// Expected complex dimension of the section space once `m0` and `ml`
/// multiplicity conditions are imposed: `v(d + 1 - g) - v*m0 - (v-1)*ml`.
/// May be negative; reported as-is.
pub fn expected_section_dim(ctx: &CurveContext, m0: u64, ml: u64) -> i64 {
    let v = ctx.ambient_dim as i64;
    v * (ctx.degree + 1 - ctx.genus as i64) - v * m0 as i64 - (v - 1) * ml as i64
}

/// `k -> slope * k + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineFn {
    pub slope: i64,
    pub intercept: i64,
}

impl AffineFn {
    pub fn eval(&self, k: i64) -> i64 {
        self.slope * k + self.intercept
    }
}

/// Additional connectivity drop for pointed contexts. The pointed range is
/// one step narrower than the absolute one; the offset is exposed rather
/// than folded silently into the formulas.
pub const POINTED_CONNECTIVITY_SHIFT: i64 = -1;

/// The constants of a feasible stability range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityRange {
    /// Slope of the range: the comparison maps are isomorphisms below
    /// `connectivity(k)`.
    pub m: i64,
    /// Connectivity bound used by the poset builder.
    pub i: i64,
    pub connectivity: AffineFn,
}

/// Result state of `stability_range`: infeasibility is an answer, not an
/// error, because orbit scans need to step over infeasible images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityOutcome {
    Feasible(StabilityRange),
    /// The slope is non-positive, or positivity failed at the recorded
    /// 1-based direction `j`.
    Infeasible {
        m: i64,
        failed_condition: Option<usize>,
    },
}

impl StabilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, StabilityOutcome::Feasible(_))
    }

    pub fn range(&self) -> Option<&StabilityRange> {
        match self {
            StabilityOutcome::Feasible(r) => Some(r),
            StabilityOutcome::Infeasible { .. } => None,
        }
    }
}

/// Stability constants of a context. The basic clause uses
/// `M = d - sum n_i`; under general position the best line is added back,
/// `M = d - sum n_i + max_j n_j`, guarded by the positivity conditions
/// `d > sum n_i - n_j` for every `j <= v` (zero-padded when `r < v`; lines
/// beyond the first `v` never enter the clause). The connectivity range is
/// `k -> M*k - 2g - 2`, shifted by one for pointed contexts.
pub fn stability_range(ctx: &CurveContext) -> StabilityOutcome {
    let d = ctx.degree;
    let g2 = 2 * ctx.genus as i64;
    let sum = ctx.mult_sum();
    let v = ctx.ambient_dim as usize;
    let (m, i, failed) = if ctx.general_position {
        let mx = (1..=v).map(|j| ctx.padded(j)).max().expect("v >= 3");
        let mn = (1..=v).map(|j| ctx.padded(j)).min().expect("v >= 3");
        let failed = (1..=v).find(|&j| d <= sum - ctx.padded(j));
        (d - sum + mx, d - sum - g2 + mn, failed)
    } else {
        (d - sum, d - sum - g2, None)
    };
    if m <= 0 || failed.is_some() {
        return StabilityOutcome::Infeasible {
            m,
            failed_condition: failed,
        };
    }
    let intercept = -g2 - 2 + if ctx.pointed {
        POINTED_CONNECTIVITY_SHIFT
    } else {
        0
    };
    StabilityOutcome::Feasible(StabilityRange {
        m,
        i,
        connectivity: AffineFn {
            slope: m,
            intercept,
        },
    })
}

/// Which membership formula cuts out the poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PFlavor {
    /// Total relative multiplicity at most the bound.
    Plain,
    /// The away-from-one-line sums must each be at most the bound.
    GeneralPosition,
    /// Plain formula over one extra marked line carried by a basepoint
    /// with word multiplicity at most one there.
    Pointed,
}

/// Size of the enumerated universe backing a membership certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PBounds {
    /// Most labeled points in a configuration, basepoint excluded.
    pub max_points: usize,
    /// Total depth added across all points on top of the baseline.
    pub max_rel_depth: u32,
}

impl Default for PBounds {
    fn default() -> Self {
        PBounds {
            max_points: 3,
            max_rel_depth: 4,
        }
    }
}

/// The three verified hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateClause {
    /// No one-step relation leads from a non-member into a member, so the
    /// member set is downward closed in the saturated merge order.
    DownwardClosure,
    /// Every type with kappa at most the bound is a member, and every
    /// all-diagonal type is a member.
    KappaCoverage,
    /// Every essential successor of a member entry keeps the configuration
    /// unobstructed under the flavor's test.
    SuccessorUnobstructed,
}

impl fmt::Display for CertificateClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CertificateClause::DownwardClosure => "downward-closure",
            CertificateClause::KappaCoverage => "kappa-coverage",
            CertificateClause::SuccessorUnobstructed => "successor-unobstructed",
        };
        write!(f, "{name}")
    }
}

/// One exhaustively checked clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseReport {
    pub clause: CertificateClause,
    pub pass: bool,
    /// Number of individual checks performed.
    pub checked: u64,
    /// Description of the first failing check, with the offending types.
    pub failure: Option<String>,
}

/// Verification record for one poset build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub clauses: Vec<ClauseReport>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// A bounded poset of saturated relative types with a decidable membership
/// predicate and its certificate.
#[derive(Debug, Clone)]
pub struct PosetP {
    pub blowup: BlowupPoset,
    pub flavor: PFlavor,
    /// The connectivity bound `I` defining membership.
    pub bound: i64,
    /// All enumerated saturated types, canonically sorted.
    pub universe: Vec<CombinatorialType>,
    /// Membership flags parallel to `universe`.
    pub members: Vec<bool>,
    /// Kappa values parallel to `universe`.
    pub kappas: Vec<i64>,
    pub certificate: Certificate,
}

impl PosetP {
    pub fn member_count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// Membership of a type, or `None` when it is outside the universe.
    pub fn is_member(&self, t: &CombinatorialType) -> Option<bool> {
        self.universe
            .binary_search(t)
            .ok()
            .map(|i| self.members[i])
    }
}

/// Builds the bounded poset of relative types for a context and verifies
/// its three hypotheses over the enumerated universe.
///
/// The universe distributes each baseline multiplicity `n_i` over labeled
/// points on line `i` in every possible way, optionally adds fresh points
/// with trivial lower part, and pairs each point with a saturated upper
/// chain within the total extra-depth budget. The pointed flavor works
/// over one extra marked line whose single baseline unit sits at a
/// distinguished basepoint. A type is a member when its relative
/// multiplicity formula stays at or below `bound`; all-diagonal types are
/// members unconditionally so the poset keeps its minimal elements even
/// for negative bounds.
pub fn build_p(
    ctx: &CurveContext,
    bound: i64,
    flavor: PFlavor,
    bounds: &PBounds,
) -> Result<PosetP, StabilityError> {
    match flavor {
        PFlavor::GeneralPosition if !ctx.general_position => {
            return Err(StabilityError::GeneralPositionRequired)
        }
        PFlavor::Pointed if !ctx.pointed => return Err(StabilityError::PointedRequired),
        _ => {}
    }
    let r = ctx.multiplicities.len();
    let pointed = matches!(flavor, PFlavor::Pointed);
    let r_eff = r + usize::from(pointed);
    let blowup = build_blowup_poset(r_eff, ctx.ambient_dim).map_err(TypeError::from)?;

    let needed = ctx.multiplicities.iter().filter(|&&n| n > 0).count();
    if needed > bounds.max_points {
        return Err(StabilityError::BoundsTooTight {
            needed,
            allowed: bounds.max_points,
        });
    }

    let universe = enumerate_universe(ctx, &blowup, flavor, bounds)?;
    let lat = blowup.lattice();

    let mut members = Vec::with_capacity(universe.len());
    let mut kappas = Vec::with_capacity(universe.len());
    for t in &universe {
        members.push(is_p_member(ctx, &blowup, flavor, bound, t));
        kappas.push(kappa_of(&blowup, t)?);
    }

    let mut clauses = Vec::with_capacity(3);

    // (a) one-step edges never enter the member set from outside
    let mut checked = 0u64;
    let mut failure = None;
    'closure: for (si, s) in universe.iter().enumerate() {
        if members[si] {
            continue;
        }
        for (ti, t) in universe.iter().enumerate() {
            if !members[ti] {
                continue;
            }
            checked += 1;
            if one_step_leq_plus_sat(lat, s, t)? {
                failure = Some(format!(
                    "non-member {} sits one step below member {}",
                    describe_type(lat, s),
                    describe_type(lat, t)
                ));
                break 'closure;
            }
        }
    }
    clauses.push(ClauseReport {
        clause: CertificateClause::DownwardClosure,
        pass: failure.is_none(),
        checked,
        failure,
    });

    // (b) small kappa and all-diagonal types are all inside
    let mut checked = 0u64;
    let mut failure = None;
    for (i, t) in universe.iter().enumerate() {
        checked += 1;
        if kappas[i] <= bound && !members[i] {
            failure = Some(format!(
                "type {} has kappa {} <= {} but is not a member",
                describe_type(lat, t),
                kappas[i],
                bound
            ));
            break;
        }
        if is_all_diagonal(t) && !members[i] {
            failure = Some(format!(
                "minimal type {} is not a member",
                describe_type(lat, t)
            ));
            break;
        }
    }
    clauses.push(ClauseReport {
        clause: CertificateClause::KappaCoverage,
        pass: failure.is_none(),
        checked,
        failure,
    });

    // (c) essential successors of member entries stay unobstructed
    let mut checked = 0u64;
    let mut failure = None;
    'successors: for (ti, t) in universe.iter().enumerate() {
        if !members[ti] {
            continue;
        }
        let ups: Vec<Chain> = t.all_entries().map(|e| saturate(lat, &e.upper)).collect();
        let m0_abs: u64 = ups.iter().map(|c| c.word_multiplicity(0) as u64).sum();
        let line_abs: Vec<u64> = (1..=r_eff)
            .map(|i| ups.iter().map(|c| c.word_multiplicity(i) as u64).sum())
            .collect();
        for x in &ups {
            let successors =
                essential_above(lat, x, x.total_depth() + 1).map_err(TypeError::from)?;
            for (y, _covers) in &successors {
                let m0 = m0_abs - x.word_multiplicity(0) as u64 + y.word_multiplicity(0) as u64;
                let lines: Vec<u64> = (1..=r_eff)
                    .map(|i| {
                        line_abs[i - 1] - x.word_multiplicity(i) as u64
                            + y.word_multiplicity(i) as u64
                    })
                    .collect();
                let ok = match flavor {
                    PFlavor::GeneralPosition => gp_unobstructed(ctx, m0, &lines)?.ok,
                    PFlavor::Plain | PFlavor::Pointed => {
                        rr_unobstructed(ctx, m0, lines.iter().sum())
                    }
                };
                checked += 1;
                if !ok {
                    failure = Some(format!(
                        "member {} entry {} has obstructed successor {}",
                        describe_type(lat, t),
                        render_word(lat, x.word()),
                        render_word(lat, y.word())
                    ));
                    break 'successors;
                }
            }
        }
    }
    clauses.push(ClauseReport {
        clause: CertificateClause::SuccessorUnobstructed,
        pass: failure.is_none(),
        checked,
        failure,
    });

    Ok(PosetP {
        blowup,
        flavor,
        bound,
        universe,
        members,
        kappas,
        certificate: Certificate { clauses },
    })
}

fn is_all_diagonal(t: &CombinatorialType) -> bool {
    t.all_entries().all(TypeEntry::is_diagonal)
}

/// Relative word multiplicities of a type: bottom element and per-line,
/// uppers minus lowers.
fn relative_mults(lat: &MeetSemilattice, r_eff: usize, t: &CombinatorialType) -> (i64, Vec<i64>) {
    let mut m0 = 0i64;
    let mut lines = vec![0i64; r_eff];
    for e in t.all_entries() {
        let up = saturate(lat, &e.upper);
        let lo = saturate(lat, &e.lower);
        m0 += up.word_multiplicity(0) as i64 - lo.word_multiplicity(0) as i64;
        for (i, slot) in lines.iter_mut().enumerate() {
            *slot +=
                up.word_multiplicity(i + 1) as i64 - lo.word_multiplicity(i + 1) as i64;
        }
    }
    (m0, lines)
}

fn is_p_member(
    ctx: &CurveContext,
    blowup: &BlowupPoset,
    flavor: PFlavor,
    bound: i64,
    t: &CombinatorialType,
) -> bool {
    if is_all_diagonal(t) {
        return true;
    }
    let (m0, lines) = relative_mults(blowup.lattice(), blowup.r(), t);
    match flavor {
        PFlavor::Plain | PFlavor::Pointed => m0 + lines.iter().sum::<i64>() <= bound,
        PFlavor::GeneralPosition => {
            let total: i64 = lines.iter().sum();
            (1..=ctx.ambient_dim as usize).all(|j| {
                let excluded = if j <= lines.len() { lines[j - 1] } else { 0 };
                m0 + total - excluded <= bound
            })
        }
    }
}

/// Nonincreasing partitions of `n` into parts of size at least one. `n = 0`
/// yields the single empty partition.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = n.min(max_part);
        for p in (1..=top).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

fn enumerate_universe(
    ctx: &CurveContext,
    blowup: &BlowupPoset,
    flavor: PFlavor,
    bounds: &PBounds,
) -> Result<Vec<CombinatorialType>, StabilityError> {
    let lat = blowup.lattice();
    let r = ctx.multiplicities.len();
    let pointed = matches!(flavor, PFlavor::Pointed);
    let marked = if pointed { Some(r + 1) } else { None };

    let max_part = ctx.multiplicities.iter().copied().max().unwrap_or(0) as u32;
    let pool_cap = max_part.max(u32::from(pointed)) + bounds.max_rel_depth;
    let pool = enumerate_saturated_chains(lat, pool_cap);
    // ordinary points never touch the marked line
    let point_pool: Vec<&Chain> = pool
        .iter()
        .filter(|c| marked.map_or(true, |m| c.word_multiplicity(m) == 0))
        .collect();

    let bp_lower = marked.map(|m| blowup_chain(blowup, 0, m, 1));
    let bp_pool: Vec<&Chain> = match (&bp_lower, marked) {
        (Some(lower), Some(m)) => pool
            .iter()
            .filter(|c| {
                lower.depths().pointwise_leq(c.depths()) && c.word_multiplicity(m) <= 1
            })
            .collect(),
        _ => Vec::new(),
    };

    // every way to split each n_i over points of line i
    let per_line: Vec<Vec<Vec<u64>>> = ctx
        .multiplicities
        .iter()
        .map(|&n| partitions(n))
        .collect();

    let mut layouts: Vec<Vec<DepthFunction>> = Vec::new();
    let mut current: Vec<DepthFunction> = Vec::new();
    fn layout_rec(
        blowup: &BlowupPoset,
        per_line: &[Vec<Vec<u64>>],
        line: usize,
        max_points: usize,
        current: &mut Vec<DepthFunction>,
        out: &mut Vec<Vec<DepthFunction>>,
    ) {
        if line == per_line.len() {
            out.push(current.clone());
            return;
        }
        for parts in &per_line[line] {
            if current.len() + parts.len() > max_points {
                continue;
            }
            let before = current.len();
            for &p in parts {
                current.push(
                    blowup_chain(blowup, 0, line + 1, p as u32)
                        .depths()
                        .clone(),
                );
            }
            layout_rec(blowup, per_line, line + 1, max_points, current, out);
            current.truncate(before);
        }
    }
    layout_rec(
        blowup,
        &per_line,
        0,
        bounds.max_points,
        &mut current,
        &mut layouts,
    );

    let trivial = DepthFunction::trivial(lat);
    let mut set: BTreeSet<CombinatorialType> = BTreeSet::new();
    for layout in &layouts {
        for extras in 0..=(bounds.max_points - layout.len()) {
            let mut lowers: Vec<(DepthFunction, bool)> =
                layout.iter().map(|g| (g.clone(), false)).collect();
            lowers.extend((0..extras).map(|_| (trivial.clone(), true)));
            assign_uppers(
                lat,
                &lowers,
                &point_pool,
                bp_lower.as_ref(),
                &bp_pool,
                bounds.max_rel_depth,
                &mut Vec::new(),
                &mut set,
            )?;
        }
    }
    Ok(set.into_iter().collect())
}

/// Recursively pairs each lower part with a dominating saturated chain
/// within the shared extra-depth budget, then closes with the basepoint
/// choice when one is forced.
#[allow(clippy::too_many_arguments)]
fn assign_uppers(
    lat: &MeetSemilattice,
    lowers: &[(DepthFunction, bool)],
    point_pool: &[&Chain],
    bp_lower: Option<&Chain>,
    bp_pool: &[&Chain],
    budget: u32,
    chosen: &mut Vec<(DepthFunction, DepthFunction)>,
    set: &mut BTreeSet<CombinatorialType>,
) -> Result<(), StabilityError> {
    if chosen.len() == lowers.len() {
        match bp_lower {
            None => {
                let t = CombinatorialType::new_relative(lat, chosen.clone(), None)?;
                set.insert(t);
            }
            Some(lower) => {
                for c in bp_pool {
                    let slack = c.total_depth() - lower.total_depth();
                    if slack > budget {
                        continue;
                    }
                    let t = CombinatorialType::new_relative(
                        lat,
                        chosen.clone(),
                        Some((lower.depths().clone(), c.depths().clone())),
                    )?;
                    set.insert(t);
                }
            }
        }
        return Ok(());
    }
    let (lower, is_extra) = &lowers[chosen.len()];
    for c in point_pool {
        if !lower.pointwise_leq(c.depths()) {
            continue;
        }
        if *is_extra && c.is_trivial() {
            continue;
        }
        let slack = c.total_depth() - lower.total_depth();
        if slack > budget {
            continue;
        }
        chosen.push((lower.clone(), c.depths().clone()));
        assign_uppers(
            lat,
            lowers,
            point_pool,
            bp_lower,
            bp_pool,
            budget - slack,
            chosen,
            set,
        )?;
        chosen.pop();
    }
    Ok(())
}

fn describe_entry(lat: &MeetSemilattice, e: &TypeEntry) -> String {
    let lo = saturate(lat, &e.lower);
    let hi = saturate(lat, &e.upper);
    format!(
        "{}<={}",
        render_word(lat, lo.word()),
        render_word(lat, hi.word())
    )
}

/// Renders a type as its canonical list of `lower<=upper` words, basepoint
/// last. Used in certificate messages and reports.
pub fn describe_type(lat: &MeetSemilattice, t: &CombinatorialType) -> String {
    let mut parts: Vec<String> = t
        .entries()
        .iter()
        .map(|e| describe_entry(lat, e))
        .collect();
    if let Some(e) = t.basepoint() {
        parts.push(format!("bp:{}", describe_entry(lat, e)));
    }
    format!("[{}]", parts.join(", "))
}

/// A divisor class `d*H - n_1*E_1 - .. - n_4*E_4` on the plane blown up at
/// four points, written by its coefficients `(d; n_1..n_4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DPClass {
    pub d: i64,
    pub n: [i64; 4],
}

impl DPClass {
    pub fn new(d: i64, n: [i64; 4]) -> Self {
        DPClass { d, n }
    }

    /// The anticanonical class `(3; 1, 1, 1, 1)`.
    pub fn anticanonical() -> Self {
        DPClass { d: 3, n: [1; 4] }
    }
}

impl fmt::Display for DPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}, {}, {}, {})",
            self.d, self.n[0], self.n[1], self.n[2], self.n[3]
        )
    }
}

/// Intersection pairing `d d' - sum n_i n_i'` of signature `(1, 4)`.
pub fn dp_pairing(a: &DPClass, b: &DPClass) -> i64 {
    a.d * b.d - a.n.iter().zip(&b.n).map(|(x, y)| x * y).sum::<i64>()
}

/// The ten classes of self-intersection -1: the four exceptional curves
/// `E_i` and the six strict transforms of lines `H - E_i - E_j`.
pub fn dp_minus_one_curves() -> Vec<DPClass> {
    let mut out = Vec::with_capacity(10);
    for i in 0..4 {
        let mut n = [0i64; 4];
        n[i] = -1;
        out.push(DPClass { d: 0, n });
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut n = [0i64; 4];
            n[i] = 1;
            n[j] = 1;
            out.push(DPClass { d: 1, n });
        }
    }
    out
}

/// Ampleness via the effective cone: positive pairing against every one of
/// the ten -1-classes.
pub fn dp_is_ample(a: &DPClass) -> bool {
    dp_minus_one_curves().iter().all(|c| dp_pairing(a, c) > 0)
}

/// Quadratic Cremona transformation centered on three of the four points
/// (0-based indices): `d' = 2d - n_i - n_j - n_k`, each multiplicity in the
/// triple is replaced by `d` minus the other two, the fourth is fixed. An
/// involution preserving the pairing.
pub fn cremona(a: &DPClass, triple: [usize; 3]) -> Result<DPClass, StabilityError> {
    let [i, j, k] = triple;
    if i >= 4 || j >= 4 || k >= 4 || i == j || i == k || j == k {
        return Err(StabilityError::BadCremonaTriple { triple });
    }
    let mut out = *a;
    out.d = 2 * a.d - a.n[i] - a.n[j] - a.n[k];
    out.n[i] = a.d - a.n[j] - a.n[k];
    out.n[j] = a.d - a.n[i] - a.n[k];
    out.n[k] = a.d - a.n[i] - a.n[j];
    Ok(out)
}

/// Generators of the Weyl action: the three adjacent multiplicity swaps
/// and the Cremona transformation on the first three points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DpGen {
    /// Swap multiplicities at 0-based positions `i` and `i + 1`, `i < 3`.
    Transpose(u8),
    Cremona,
}

pub fn dp_apply(a: &DPClass, g: DpGen) -> DPClass {
    match g {
        DpGen::Transpose(i) => {
            assert!(i < 3, "adjacent transposition index");
            let mut b = *a;
            b.n.swap(i as usize, i as usize + 1);
            b
        }
        DpGen::Cremona => cremona(a, [0, 1, 2]).expect("fixed triple is valid"),
    }
}

/// Applies a generator word left to right.
pub fn dp_apply_word(a: &DPClass, word: &[DpGen]) -> DPClass {
    word.iter().fold(*a, |c, &g| dp_apply(&c, g))
}

/// A degree-minimal representative together with the generator word that
/// reaches it from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpNormalized {
    pub class: DPClass,
    pub witness: Vec<DpGen>,
}

/// Sorts the multiplicities descending and applies Cremona on the top
/// three while that lowers the degree. The output satisfies
/// `n_i + n_j + n_4 <= d` for distinct `i, j` among the top three, and
/// strictly so whenever no two disjoint -1-curves have equal degree
/// against the class; both facts are asserted, since a violation would be
/// a bug rather than bad input.
pub fn dp_normalize(a: &DPClass) -> Result<DpNormalized, StabilityError> {
    if !dp_is_ample(a) {
        return Err(StabilityError::NotAmple { class: *a });
    }
    let mut cur = *a;
    let mut witness = Vec::new();
    loop {
        loop {
            let mut swapped = false;
            for i in 0..3u8 {
                if cur.n[i as usize] < cur.n[i as usize + 1] {
                    cur = dp_apply(&cur, DpGen::Transpose(i));
                    witness.push(DpGen::Transpose(i));
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        if cur.n[0] + cur.n[1] + cur.n[2] <= cur.d {
            break;
        }
        // degree strictly drops, so the loop terminates
        cur = dp_apply(&cur, DpGen::Cremona);
        witness.push(DpGen::Cremona);
        debug_assert!(dp_is_ample(&cur), "the Weyl action preserves ampleness");
    }

    let curves = dp_minus_one_curves();
    let degrees: Vec<i64> = curves.iter().map(|c| dp_pairing(&cur, c)).collect();
    let mut distinct_on_disjoint = true;
    for s in 0..curves.len() {
        for t in (s + 1)..curves.len() {
            if dp_pairing(&curves[s], &curves[t]) == 0 && degrees[s] == degrees[t] {
                distinct_on_disjoint = false;
            }
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let sum = cur.n[i] + cur.n[j] + cur.n[3];
            assert!(sum <= cur.d, "normalization bound violated at ({i}, {j})");
            if distinct_on_disjoint {
                assert!(sum < cur.d, "strict normalization bound violated at ({i}, {j})");
            }
        }
    }
    Ok(DpNormalized { class: cur, witness })
}

type Mat5 = [[i64; 5]; 5];

fn gen_matrix(g: DpGen) -> Mat5 {
    let mut m = [[0i64; 5]; 5];
    match g {
        DpGen::Transpose(i) => {
            let i = i as usize;
            for (k, row) in m.iter_mut().enumerate() {
                row[k] = 1;
            }
            m[i + 1][i + 1] = 0;
            m[i + 2][i + 2] = 0;
            m[i + 1][i + 2] = 1;
            m[i + 2][i + 1] = 1;
        }
        DpGen::Cremona => {
            m[0] = [2, -1, -1, -1, 0];
            m[1] = [1, 0, -1, -1, 0];
            m[2] = [1, -1, 0, -1, 0];
            m[3] = [1, -1, -1, 0, 0];
            m[4] = [0, 0, 0, 0, 1];
        }
    }
    m
}

fn mat_mul(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = [[0i64; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// One element of the generated Weyl group: its matrix in the
/// `(d; n_1..n_4)` coordinates and a generator word realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Mat5,
    pub word: Vec<DpGen>,
}

impl WeylElement {
    pub fn apply(&self, a: &DPClass) -> DPClass {
        let v = [a.d, a.n[0], a.n[1], a.n[2], a.n[3]];
        let mut w = [0i64; 5];
        for (i, row) in self.matrix.iter().enumerate() {
            w[i] = row.iter().zip(&v).map(|(m, x)| m * x).sum();
        }
        DPClass {
            d: w[0],
            n: [w[1], w[2], w[3], w[4]],
        }
    }
}

/// The group generated by the three swaps and the Cremona involution, in
/// breadth-first order from the identity with shortest witnessing words.
/// It has 120 elements.
pub fn weyl_group() -> Vec<WeylElement> {
    let gens = [
        DpGen::Transpose(0),
        DpGen::Transpose(1),
        DpGen::Transpose(2),
        DpGen::Cremona,
    ];
    let mut identity = [[0i64; 5]; 5];
    for (k, row) in identity.iter_mut().enumerate() {
        row[k] = 1;
    }
    let mut seen: BTreeSet<Mat5> = BTreeSet::new();
    seen.insert(identity);
    let mut out = vec![WeylElement {
        matrix: identity,
        word: Vec::new(),
    }];
    let mut frontier = 0;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for &g in &gens {
            let m = mat_mul(&gen_matrix(g), &cur.matrix);
            if seen.insert(m) {
                let mut word = cur.word.clone();
                word.push(g);
                out.push(WeylElement { matrix: m, word });
            }
        }
    }
    out
}

/// Outcome of the orbit scan: the best feasible slope, or infeasibility
/// when no image of the class admits one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NAlphaOutcome {
    Feasible {
        n: i64,
        /// The orbit image attaining the maximum.
        class: DPClass,
        /// Generator word reaching that image; the first maximizer in
        /// breadth-first group order, so the result is deterministic.
        argmax: Vec<DpGen>,
    },
    Infeasible,
}

/// Maximum of the general-position slope `d - sum n_i + max_j n_j` over
/// the Weyl orbit of an ample class, restricted to images satisfying the
/// positivity conditions `d > sum n_i - n_j` for every point and a
/// positive slope. Constant on orbits by construction.
pub fn n_alpha(a: &DPClass) -> Result<NAlphaOutcome, StabilityError> {
    if !dp_is_ample(a) {
        return Err(StabilityError::NotAmple { class: *a });
    }
    let mut best: Option<(i64, DPClass, Vec<DpGen>)> = None;
    for el in weyl_group() {
        let b = el.apply(a);
        let sum: i64 = b.n.iter().sum();
        let mx = b.n.iter().copied().max().expect("four multiplicities");
        let m = b.d - sum + mx;
        let feasible = m > 0 && b.n.iter().all(|&nj| b.d > sum - nj);
        if feasible && best.as_ref().map_or(true, |(bm, _, _)| m > *bm) {
            best = Some((m, b, el.word.clone()));
        }
    }
    Ok(match best {
        Some((n, class, argmax)) => NAlphaOutcome::Feasible { n, class, argmax },
        None => NAlphaOutcome::Infeasible,
    })
}
