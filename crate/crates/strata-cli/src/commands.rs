//! One report builder per subcommand. Each builder echoes a canonical
//! command line into the report header (independent of how the arguments
//! were actually spelled) so identical inputs produce identical bytes.

use anyhow::{bail, Context};

use strata_core::chains::{covers_above, enumerate_saturated_chains, essential_above, render_word};
use strata_core::lattice::build_blowup_poset;
use strata_core::stability::{
    describe_type, dp_is_ample, dp_normalize, n_alpha, stability_range, CurveContext, DPClass,
    DpGen, NAlphaOutcome, StabilityOutcome,
};
use strata_core::types::{
    enumerate_saturated_types, stratum_record, CombinatorialType, TypeBounds, TypeFlavor,
};

use crate::report::{Report, Row};
use crate::suites::{run_suite, SuiteConfig, SUITE_NAMES};

/// Table of all saturated chains up to the depth bound, with the covers and
/// essential elements sitting one letter above each.
pub fn cmd_chains(r: usize, dimv: u32, max_depth: u32) -> anyhow::Result<Report> {
    let bp = build_blowup_poset(r, dimv)?;
    let lat = bp.lattice();
    let mut report = Report::new(format!(
        "strata chains --r {r} --dimv {dimv} --max-depth {max_depth}"
    ));
    for c in enumerate_saturated_chains(lat, max_depth) {
        let budget = c.total_depth() + 1;
        let covers: Vec<String> = covers_above(lat, &c, budget)?
            .iter()
            .map(|s| render_word(lat, s.word()))
            .collect();
        let essentials: Vec<String> = essential_above(lat, &c, budget)?
            .iter()
            .map(|(e, _)| render_word(lat, e.word()))
            .collect();
        report.rows.push(Row::Chain {
            word: render_word(lat, c.word()),
            total: c.total_depth(),
            covers,
            essentials,
        });
    }
    Ok(report)
}

fn flavor_name(flavor: TypeFlavor) -> &'static str {
    match flavor {
        TypeFlavor::Absolute => "absolute",
        TypeFlavor::Relative => "relative",
        TypeFlavor::Pointed => "pointed",
    }
}

/// Census of essential saturated types: one row per stratum with its
/// additive invariants, optionally filtered by kappa and extended with the
/// stalk Betti data.
#[allow(clippy::too_many_arguments)]
pub fn cmd_census(
    r: usize,
    dimv: u32,
    flavor: TypeFlavor,
    max_points: usize,
    max_depth: u32,
    kappa_max: Option<i64>,
    with_mu: bool,
) -> anyhow::Result<Report> {
    let bp = build_blowup_poset(r, dimv)?;
    let lat = bp.lattice();
    let mut command = format!(
        "strata census --r {r} --dimv {dimv} --flavor {} --max-points {max_points} --max-depth {max_depth}",
        flavor_name(flavor)
    );
    if let Some(k) = kappa_max {
        command.push_str(&format!(" --kappa-max {k}"));
    }
    if with_mu {
        command.push_str(" --with-mu");
    }
    let mut report = Report::new(command);

    let bounds = TypeBounds {
        max_points,
        max_entry_depth: max_depth,
    };
    for t in enumerate_saturated_types(lat, bounds, flavor, true)? {
        if t.point_count() == 0 {
            continue;
        }
        // The row invariants are defined on relative types; absolute strata
        // are the special case with trivial lower parts.
        let rel = if t.is_relative() {
            t
        } else {
            CombinatorialType::new_relative(
                lat,
                t.entries()
                    .iter()
                    .map(|e| (e.lower.clone(), e.upper.clone()))
                    .collect(),
                t.basepoint().map(|e| (e.lower.clone(), e.upper.clone())),
            )?
        };
        let rec = stratum_record(&bp, &rel, with_mu)?;
        if kappa_max.is_some_and(|k| rec.kappa > k) {
            continue;
        }
        report.rows.push(Row::Census {
            ty: describe_type(lat, &rel),
            points: rel.point_count() as u64,
            gamma: rec.gamma,
            rank: rec.rank,
            supp: rec.supp,
            kappa: rec.kappa,
            config_dim_real: rec.config_dim_real,
            mobius: rec.mobius,
            mu_shift: rec.mu.as_ref().map(|m| m.shift),
            mu_betti: rec.mu.map(|m| m.betti),
        });
    }
    Ok(report)
}

/// Stability constants of one numeric context: always the basic clause,
/// plus the general-position clause when requested.
pub fn cmd_stability(
    genus: u32,
    d: i64,
    n: &[u64],
    dimv: u32,
    general_position: bool,
    pointed: bool,
) -> anyhow::Result<Report> {
    let n_list = n
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut command =
        format!("strata stability --genus {genus} --d {d} --n {n_list} --dimv {dimv}");
    if general_position {
        command.push_str(" --general-position");
    }
    if pointed {
        command.push_str(" --pointed");
    }
    let mut report = Report::new(command);

    let push_flavor = |report: &mut Report, label: &str, gp: bool| -> anyhow::Result<()> {
        let mut ctx = CurveContext::new(genus, d, n.to_vec(), dimv)?;
        if gp {
            ctx = ctx.with_general_position();
        }
        if pointed {
            ctx = ctx.with_pointed();
        }
        let row = match stability_range(&ctx) {
            StabilityOutcome::Feasible(range) => Row::Stability {
                flavor: String::from(label),
                genus,
                degree: d,
                multiplicities: n.to_vec(),
                pointed,
                feasible: true,
                m: range.m,
                i: Some(range.i),
                connectivity_slope: Some(range.connectivity.slope),
                connectivity_intercept: Some(range.connectivity.intercept),
                failed_condition: None,
            },
            StabilityOutcome::Infeasible { m, failed_condition } => Row::Stability {
                flavor: String::from(label),
                genus,
                degree: d,
                multiplicities: n.to_vec(),
                pointed,
                feasible: false,
                m,
                i: None,
                connectivity_slope: None,
                connectivity_intercept: None,
                failed_condition: failed_condition.map(|j| j as u32),
            },
        };
        report.rows.push(row);
        Ok(())
    };
    push_flavor(&mut report, "basic", false)?;
    if general_position {
        push_flavor(&mut report, "general-position", true)?;
    }
    Ok(report)
}

/// Parses `d,n1,n2,n3,n4`; separators may be commas or semicolons, and
/// parentheses or spaces around the numbers are ignored.
pub fn parse_alpha(input: &str) -> anyhow::Result<DPClass> {
    let cleaned: String = input
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ' '))
        .collect();
    let parts: Vec<&str> = cleaned
        .split([',', ';'])
        .filter(|p| !p.is_empty())
        .collect();
    if parts.len() != 5 {
        bail!(
            "class `{input}` should have five components d,n1,n2,n3,n4, found {}",
            parts.len()
        );
    }
    let mut values = [0i64; 5];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .with_context(|| format!("component `{part}` of class `{input}` is not an integer"))?;
    }
    Ok(DPClass::new(
        values[0],
        [values[1], values[2], values[3], values[4]],
    ))
}

fn render_dp_word(word: &[DpGen]) -> String {
    if word.is_empty() {
        return String::from("id");
    }
    word.iter()
        .map(|g| match g {
            DpGen::Transpose(i) => match i {
                0 => "s12",
                1 => "s23",
                _ => "s34",
            },
            DpGen::Cremona => "cr",
        })
        .collect::<Vec<_>>()
        .join(".")
}

/// Which Picard-lattice question to answer for a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpOp {
    /// Positivity against the ten -1-curves.
    Ample,
    /// Degree-minimal Weyl representative with its generator word.
    Normalize,
    /// Best feasible slope over the Weyl orbit.
    Nalpha,
}

impl DpOp {
    fn name(self) -> &'static str {
        match self {
            DpOp::Ample => "ample",
            DpOp::Normalize => "normalize",
            DpOp::Nalpha => "nalpha",
        }
    }
}

/// One-row report on a degree-5 del Pezzo divisor class. An infeasible
/// orbit scan is an ordinary answer; only malformed or out-of-domain input
/// is an error.
pub fn cmd_delpezzo(alpha: &DPClass, op: DpOp) -> anyhow::Result<Report> {
    let a = *alpha;
    let mut report = Report::new(format!(
        "strata delpezzo --alpha {},{},{},{},{} {}",
        a.d,
        a.n[0],
        a.n[1],
        a.n[2],
        a.n[3],
        op.name()
    ));
    let row = match op {
        DpOp::Ample => Row::DelPezzo {
            op: String::from(op.name()),
            class: a.to_string(),
            ample: Some(dp_is_ample(&a)),
            normalized: None,
            witness: None,
            feasible: None,
            n: None,
        },
        DpOp::Normalize => {
            let norm = dp_normalize(&a)?;
            Row::DelPezzo {
                op: String::from(op.name()),
                class: a.to_string(),
                ample: None,
                normalized: Some(norm.class.to_string()),
                witness: Some(render_dp_word(&norm.witness)),
                feasible: None,
                n: None,
            }
        }
        DpOp::Nalpha => match n_alpha(&a)? {
            NAlphaOutcome::Feasible { n, class, argmax } => Row::DelPezzo {
                op: String::from(op.name()),
                class: a.to_string(),
                ample: None,
                normalized: Some(class.to_string()),
                witness: Some(render_dp_word(&argmax)),
                feasible: Some(true),
                n: Some(n),
            },
            NAlphaOutcome::Infeasible => Row::DelPezzo {
                op: String::from(op.name()),
                class: a.to_string(),
                ample: None,
                normalized: None,
                witness: None,
                feasible: Some(false),
                n: None,
            },
        },
    };
    report.rows.push(row);
    Ok(report)
}

/// Runs one named suite, or all of them in canonical order. Suites are
/// independent, so they are distributed over a thread pool; the check order
/// in the report does not depend on the scheduling.
pub fn cmd_verify(suite: &str, cfg: &SuiteConfig, jobs: usize) -> anyhow::Result<Report> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        bail!(
            "unknown suite `{suite}`; known suites: all, {}",
            SUITE_NAMES.join(", ")
        );
    };
    let mut report = Report::new(format!(
        "strata verify --suite {suite} --max-r {} --seed {} --samples {}",
        cfg.max_r, cfg.seed, cfg.samples
    ));
    report.seed = Some(cfg.seed);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building the worker pool")?;
    let per_suite: Vec<Vec<crate::report::Check>> = pool.install(|| {
        use rayon::prelude::*;
        names
            .par_iter()
            .map(|name| run_suite(name, cfg).expect("names are pre-validated"))
            .collect()
    });
    report.checks = per_suite.into_iter().flatten().collect();
    Ok(report)
}
