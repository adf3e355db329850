//! The verification suites behind `strata verify`: every invariant from the
//! core library restated as a named, countable check that reports its first
//! counterexample instead of panicking.
//!
//! Each suite is a pure function of the configuration, so reports are
//! byte-identical across runs and across scheduling. Sweep widths follow the
//! configured line bound; the seeded suites draw from a fixed-seed generator
//! recorded in the report header.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strata_core::chains::{
    blowup_chain, chain_interval_poset, chain_join, chain_leq, chain_to_word, covers_above,
    crosscut_join, enumerate_saturated_chains, essential_above, is_essential_pair, is_saturated,
    render_word, saturate, word_to_depths, Chain, DepthFunction,
};
use strata_core::divisors::{
    e_merge_defect, e_scaled, extend_function, gamma_of, gamma_of_pair, multiplicity, rank_of,
    rank_of_pair, supp_of, supp_of_pair, LabeledConfiguration, RelativePair,
};
use strata_core::homalg::{euler_vs_mobius, mu_stalk, MuStalk};
use strata_core::lattice::{
    boolean_lattice, build_blowup_poset, interval_elements, maximal_chain_lengths, mobius,
    BlowupPoset, MeetSemilattice,
};
use strata_core::stability::{
    build_p, dp_apply_word, dp_is_ample, dp_minus_one_curves, dp_normalize, dp_pairing, gp_unobstructed,
    n_alpha, rr_unobstructed, stability_range, weyl_group, cremona, CurveContext, DPClass,
    NAlphaOutcome, PBounds, PFlavor, StabilityError, StabilityOutcome, POINTED_CONNECTIVITY_SHIFT,
};
use strata_core::types::{
    enumerate_saturated_types, kappa_of, leq_plus, leq_plus_sat, mutually_related_pairs,
    one_step_digraph, one_step_leq_plus_sat, type_of_pair, TypeBounds, TypeFlavor,
};

use crate::report::Check;

/// Sweep bounds shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    /// Largest number of lines in the exhaustive sweeps.
    pub max_r: usize,
    /// Seed of the randomized checks.
    pub seed: u64,
    /// Sample count of the randomized checks.
    pub samples: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_r: 3,
            seed: 17,
            samples: 1000,
        }
    }
}

/// Canonical suite order; `verify --suite all` runs them in this order.
pub const SUITE_NAMES: &[&str] = &[
    "lattice",
    "closure",
    "chain-order",
    "essential-catalogue",
    "extension",
    "superadditivity",
    "kappa",
    "type-order",
    "mu-vanishing",
    "mobius-euler",
    "stability-constants",
    "build-p",
    "delpezzo",
];

/// Runs one suite by name; `None` means the name is unknown. Check names
/// come back prefixed with the suite name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<Vec<Check>> {
    let checks = match name {
        "lattice" => suite_lattice(cfg),
        "closure" => suite_closure(cfg),
        "chain-order" => suite_chain_order(cfg),
        "essential-catalogue" => suite_essential_catalogue(cfg),
        "extension" => suite_extension(cfg),
        "superadditivity" => suite_superadditivity(cfg),
        "kappa" => suite_kappa(cfg),
        "type-order" => suite_type_order(cfg),
        "mu-vanishing" => suite_mu_vanishing(cfg),
        "mobius-euler" => suite_mobius_euler(cfg),
        "stability-constants" => suite_stability_constants(cfg),
        "build-p" => suite_build_p(cfg),
        "delpezzo" => suite_delpezzo(cfg),
        _ => return None,
    };
    Some(
        checks
            .into_iter()
            .map(|mut c| {
                c.name = format!("{name}/{}", c.name);
                c
            })
            .collect(),
    )
}

type DynError = Box<dyn std::error::Error>;

/// Counts comparisons and keeps the first failure description.
#[derive(Default)]
struct Tally {
    checked: u64,
    fail: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.fail.is_none() {
            self.fail = Some(detail());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, ctx: impl FnOnce() -> String) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, want {want:?}", ctx()));
    }
}

/// Runs one check body; an early error counts as a failure with the error
/// text as the counterexample, so a suite always reports every check.
fn run_check(name: &str, body: impl FnOnce(&mut Tally) -> Result<(), DynError>) -> Check {
    let mut t = Tally::default();
    let outcome = body(&mut t);
    let (pass, counterexample) = match (outcome, t.fail) {
        (Ok(()), None) => (true, None),
        (Ok(()), Some(f)) => (false, Some(f)),
        (Err(e), f) => (false, Some(f.unwrap_or_else(|| e.to_string()))),
    };
    Check {
        name: String::from(name),
        pass,
        checked: t.checked,
        counterexample,
    }
}

fn word(lat: &MeetSemilattice, c: &Chain) -> String {
    render_word(lat, c.word())
}

fn pair_label(lat: &MeetSemilattice, w: &Chain, x: &Chain) -> String {
    format!("{}<={}", word(lat, w), word(lat, x))
}

/// Every monotone depth vector on the poset with entries up to `max`, in
/// odometer order.
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

fn strict_pairs(lat: &MeetSemilattice, max_total: u32) -> Vec<(Chain, Chain)> {
    let chains = enumerate_saturated_chains(lat, max_total);
    let mut out = Vec::new();
    for w in &chains {
        for x in &chains {
            if w != x && chain_leq(w, x) {
                out.push((w.clone(), x.clone()));
            }
        }
    }
    out
}

fn suite_lattice(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("mobius-closed-form", |t| {
            for r in 1..=cfg.max_r.max(6) {
                let q = build_blowup_poset(r, 3)?;
                let lat = q.lattice();
                let (bottom, top) = (q.bottom_index(), q.top_index());
                t.eq(mobius(lat, bottom, top)?, r as i64 - 1, || format!("mu(0,V) at r={r}"));
                t.eq(mobius(lat, bottom, bottom)?, 1, || format!("mu(0,0) at r={r}"));
                for i in 1..=r {
                    let line = q.line_index(i);
                    t.eq(mobius(lat, bottom, line)?, -1, || format!("mu(0,l{i}) at r={r}"));
                    t.eq(mobius(lat, line, top)?, -1, || format!("mu(l{i},V) at r={r}"));
                }
            }
            Ok(())
        }),
        run_check("mobius-row-sums", |t| {
            let q = build_blowup_poset(4, 3)?;
            let lat = q.lattice();
            for lo in 0..lat.len() {
                for hi in 0..lat.len() {
                    if !lat.leq(lo, hi) {
                        continue;
                    }
                    let mut sum = 0i64;
                    for z in interval_elements(lat, lo, hi, false, false)? {
                        sum += mobius(lat, lo, z)?;
                    }
                    t.eq(sum, i64::from(lo == hi), || format!("row sum on [{lo},{hi}]"));
                }
            }
            Ok(())
        }),
        run_check("boolean-alternation", |t| {
            for atoms in 0..=5u32 {
                let b = boolean_lattice(atoms);
                let bottom = b.bottom().expect("boolean lattices are bounded");
                let expect = if atoms % 2 == 0 { 1 } else { -1 };
                t.eq(mobius(&b, bottom, b.top())?, expect, || format!("{atoms} atoms"));
                t.eq(maximal_chain_lengths(&b, bottom, b.top())?, atoms, || {
                    format!("height on {atoms} atoms")
                });
            }
            let b = boolean_lattice(4);
            for lo in 0..b.len() {
                for hi in 0..b.len() {
                    if b.leq(lo, hi) {
                        let k = (hi & !lo).count_ones();
                        let expect = if k % 2 == 0 { 1 } else { -1 };
                        t.eq(mobius(&b, lo, hi)?, expect, || format!("mask interval [{lo:#b},{hi:#b}]"));
                    }
                }
            }
            Ok(())
        }),
        run_check("rank-is-chain-height", |t| {
            for r in 1..=cfg.max_r.max(4) {
                let q = build_blowup_poset(r, 5)?;
                let lat = q.lattice();
                for x in 0..lat.len() {
                    let height = maximal_chain_lengths(lat, x, q.top_index())?;
                    t.eq(u64::from(height), q.rank_weight(x), || format!("element {x} at r={r}"));
                }
            }
            Ok(())
        }),
        run_check("weights-and-degenerate-input", |t| {
            for v in 3..=6u32 {
                let q = build_blowup_poset(2, v)?;
                t.eq(q.gamma_weight(q.bottom_index()), u64::from(2 * v), || format!("gamma(0) at v={v}"));
                t.eq(q.gamma_weight(q.line_index(1)), u64::from(2 * (v - 1)), || {
                    format!("gamma(l1) at v={v}")
                });
                t.eq(q.gamma_weight(q.top_index()), 0, || format!("gamma(V) at v={v}"));
            }
            t.check(build_blowup_poset(0, 3).is_err(), || String::from("r=0 accepted"));
            t.check(build_blowup_poset(2, 2).is_err(), || String::from("v=2 accepted"));
            Ok(())
        }),
    ]
}

fn suite_closure(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("extensive-idempotent", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                for g in depth_functions_up_to(&bp, 3) {
                    let s = saturate(lat, &g);
                    t.check(g.pointwise_leq(s.depths()), || format!("not extensive at {g:?}"));
                    t.check(&saturate(lat, s.depths()) == &s, || format!("not idempotent at {g:?}"));
                    t.check(is_saturated(lat, s.depths()), || format!("output unsaturated at {g:?}"));
                    t.eq(s.total_depth(), g.total_depth(), || format!("max depth moved at {g:?}"));
                }
            }
            Ok(())
        }),
        run_check("monotone", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let all = depth_functions_up_to(&bp, 3);
                let sats: Vec<Chain> = all.iter().map(|g| saturate(lat, g)).collect();
                for (i, g) in all.iter().enumerate() {
                    for (j, h) in all.iter().enumerate() {
                        if g.pointwise_leq(h) {
                            t.check(chain_leq(&sats[i], &sats[j]), || {
                                format!("r={r}: {g:?} <= {h:?} but saturations are not")
                            });
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("adjoint-to-inclusion", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let chains = enumerate_saturated_chains(lat, 6);
                for g in depth_functions_up_to(&bp, 3) {
                    let s = saturate(lat, &g);
                    for c in &chains {
                        t.eq(chain_leq(&s, c), g.pointwise_leq(c.depths()), || {
                            format!("r={r}: adjunction at {g:?} against {}", word(lat, c))
                        });
                    }
                }
            }
            Ok(())
        }),
        run_check("seeded-vectors", |t| {
            let bp = build_blowup_poset(cfg.max_r.max(1), 3)?;
            let lat = bp.lattice();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.samples {
                // lift the lines to at least the bottom value so the raw
                // vector is monotone by construction
                let mut v = vec![0u32; lat.len()];
                v[0] = rng.gen_range(0..6);
                for i in 1..lat.len() - 1 {
                    v[i] = v[0].max(rng.gen_range(0..6));
                }
                let g = DepthFunction::new(lat, v)?;
                let s = saturate(lat, &g);
                t.check(g.pointwise_leq(s.depths()), || format!("not extensive at {g:?}"));
                t.check(is_saturated(lat, s.depths()), || format!("output unsaturated at {g:?}"));
                let letters: u32 = s.word().iter().map(|&(_, m)| m).sum();
                t.eq(letters, s.total_depth(), || format!("letter count at {g:?}"));
            }
            Ok(())
        }),
    ]
}

fn suite_chain_order(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("join-least-upper-bound", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            let small = enumerate_saturated_chains(lat, 3);
            let window = enumerate_saturated_chains(lat, 6);
            for a in &small {
                for b in &small {
                    let j = chain_join(lat, a, b);
                    t.check(chain_leq(a, &j) && chain_leq(b, &j), || {
                        format!("join below an argument: {} v {}", word(lat, a), word(lat, b))
                    });
                    t.eq(j.total_depth(), a.total_depth().max(b.total_depth()), || {
                        format!("join depth of {} v {}", word(lat, a), word(lat, b))
                    });
                    t.check(j == chain_join(lat, b, a), || {
                        format!("join not commutative at {} v {}", word(lat, a), word(lat, b))
                    });
                    for c in &window {
                        if chain_leq(a, c) && chain_leq(b, c) {
                            t.check(chain_leq(&j, c), || {
                                format!(
                                    "{} v {} = {} not below {}",
                                    word(lat, a),
                                    word(lat, b),
                                    word(lat, &j),
                                    word(lat, c)
                                )
                            });
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("word-depth-roundtrip", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 4)?;
                let lat = bp.lattice();
                for c in enumerate_saturated_chains(lat, 4) {
                    let w = chain_to_word(lat, c.depths())?;
                    t.check(w == c.word(), || format!("word of {}", word(lat, &c)));
                    t.check(word_to_depths(lat, &w)? == c, || {
                        format!("depths of {}", word(lat, &c))
                    });
                }
            }
            Ok(())
        }),
        run_check("covers-minimal-in-budget", |t| {
            let bp = build_blowup_poset(cfg.max_r.max(1), 3)?;
            let lat = bp.lattice();
            for c in enumerate_saturated_chains(lat, 3) {
                let covers = covers_above(lat, &c, c.total_depth() + 1)?;
                for s in &covers {
                    t.check(chain_leq(&c, s) && &c != s, || {
                        format!("non-strict cover {} of {}", word(lat, s), word(lat, &c))
                    });
                    t.check(s.total_depth() <= c.total_depth() + 1, || {
                        format!("cover {} overshoots {}", word(lat, s), word(lat, &c))
                    });
                    for other in &covers {
                        t.check(other == s || !(chain_leq(other, s) && other != s), || {
                            format!("{} sits under cover {}", word(lat, other), word(lat, s))
                        });
                    }
                }
                t.check(covers == covers_above(lat, &c, c.total_depth() + 3)?, || {
                    format!("budget widening changed covers of {}", word(lat, &c))
                });
            }
            Ok(())
        }),
        run_check("crosscut-largest-essential", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            let chains = enumerate_saturated_chains(lat, 4);
            for w in &chains {
                for x in &chains {
                    if !chain_leq(w, x) {
                        continue;
                    }
                    let cc = crosscut_join(lat, w, x)?;
                    t.check(chain_leq(w, &cc) && chain_leq(&cc, x), || {
                        format!("crosscut outside [{}]", pair_label(lat, w, x))
                    });
                    t.check(is_essential_pair(lat, w, &cc)?, || {
                        format!("crosscut of [{}] not essential", pair_label(lat, w, x))
                    });
                    t.eq(&cc == x, is_essential_pair(lat, w, x)?, || {
                        format!("crosscut tops out on [{}]", pair_label(lat, w, x))
                    });
                }
            }
            Ok(())
        }),
        run_check("word-rendering", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            t.eq(word(lat, &blowup_chain(&bp, 1, 1, 2)), String::from("2*l1+1*0"), || {
                String::from("two line letters over one bottom letter")
            });
            t.eq(word(lat, &blowup_chain(&bp, 2, 1, 0)), String::from("2*0"), || {
                String::from("pure bottom word")
            });
            t.eq(word(lat, &Chain::trivial(lat)), String::from("trivial"), || {
                String::from("empty word")
            });
            Ok(())
        }),
    ]
}

fn suite_essential_catalogue(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("line-families", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                for i in 1..=r {
                    for d in 1..=3u32 {
                        let w = blowup_chain(&bp, 0, i, d);
                        let got: Vec<Chain> = essential_above(lat, &w, d + 1)?
                            .into_iter()
                            .map(|(c, _)| c)
                            .collect();
                        let mut expected = vec![
                            blowup_chain(&bp, 0, i, d + 1),
                            blowup_chain(&bp, 1, i, d - 1),
                            blowup_chain(&bp, 1, i, d),
                        ];
                        expected.sort();
                        t.eq(
                            got.iter().map(|c| word(lat, c)).collect::<Vec<_>>(),
                            expected.iter().map(|c| word(lat, c)).collect::<Vec<_>>(),
                            || format!("essentials over {d}*l{i} at r={r}"),
                        );
                    }
                }
            }
            Ok(())
        }),
        run_check("trivial-family", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let got: Vec<Chain> = essential_above(lat, &Chain::trivial(lat), 1)?
                    .into_iter()
                    .map(|(c, _)| c)
                    .collect();
                let mut expected: Vec<Chain> = (1..=r).map(|i| blowup_chain(&bp, 0, i, 1)).collect();
                if r >= 2 {
                    expected.push(blowup_chain(&bp, 1, 1, 0));
                }
                expected.sort();
                t.eq(
                    got.iter().map(|c| word(lat, c)).collect::<Vec<_>>(),
                    expected.iter().map(|c| word(lat, c)).collect::<Vec<_>>(),
                    || format!("essentials over the trivial chain at r={r}"),
                );
            }
            Ok(())
        }),
        run_check("matches-pair-test", |t| {
            let bp = build_blowup_poset(cfg.max_r.max(1), 3)?;
            let lat = bp.lattice();
            let chains = enumerate_saturated_chains(lat, 4);
            for w in &chains {
                let essentials = essential_above(lat, w, w.total_depth() + 1)?;
                for (x, witness) in &essentials {
                    t.check(is_essential_pair(lat, w, x)?, || {
                        format!("listed pair fails the test: {}", pair_label(lat, w, x))
                    });
                    let mut join = witness.first().cloned().ok_or("empty cover witness")?;
                    for s in &witness[1..] {
                        join = chain_join(lat, &join, s);
                    }
                    t.check(&join == x, || {
                        format!("witness does not join back for {}", pair_label(lat, w, x))
                    });
                }
                for x in &chains {
                    if chain_leq(w, x) && w != x && x.total_depth() <= w.total_depth() + 1 {
                        t.eq(
                            essentials.iter().any(|(e, _)| e == x),
                            is_essential_pair(lat, w, x)?,
                            || format!("listing vs test on {}", pair_label(lat, w, x)),
                        );
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn suite_extension(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("rank-is-interval-height", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let trivial = Chain::trivial(lat);
                for c in enumerate_saturated_chains(lat, 3) {
                    let x = LabeledConfiguration::from_chains(lat, core::slice::from_ref(&c));
                    let (elems, poset) = chain_interval_poset(lat, &trivial, &c)?;
                    let lo = elems.iter().position(|z| z == &trivial).ok_or("no bottom")?;
                    let hi = elems.iter().position(|z| z == &c).ok_or("no top")?;
                    let height = maximal_chain_lengths(&poset, lo, hi)?;
                    t.eq(rank_of(&bp, &x), u64::from(height), || {
                        format!("rank of {} at r={r}", word(lat, &c))
                    });
                }
            }
            Ok(())
        }),
        run_check("weights-add-over-labels", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            let a = blowup_chain(&bp, 2, 1, 1);
            let b = blowup_chain(&bp, 0, 2, 1);
            let x = LabeledConfiguration::from_chains(lat, &[a.clone(), b.clone()]);
            t.eq(rank_of(&bp, &x), 2 * 2 + 1 + 1, || String::from("rank over two labels"));
            t.eq(gamma_of(&bp, &x), 2 * 6 + 4 + 4, || String::from("gamma over two labels"));
            t.eq(supp_of(&x), 2, || String::from("supp over two labels"));
            t.eq(multiplicity(lat, &x, bp.bottom_index())?, 2, || {
                String::from("bottom multiplicity")
            });
            t.eq(multiplicity(lat, &x, bp.line_index(1))?, 1, || {
                String::from("line 1 multiplicity")
            });
            let xa = LabeledConfiguration::from_chains(lat, core::slice::from_ref(&a));
            let xb = LabeledConfiguration::from_chains(lat, core::slice::from_ref(&b));
            let h: Vec<u64> = vec![5, 3, 2, 0];
            t.eq(
                extend_function(lat, &h, &x)?,
                extend_function(lat, &h, &xa)? + extend_function(lat, &h, &xb)?,
                || String::from("extension additive over disjoint labels"),
            );
            t.eq(
                extend_function(lat, &h, &LabeledConfiguration::empty(None))?,
                0,
                || String::from("extension of the empty configuration"),
            );
            let bad: Vec<u64> = vec![5, 3, 2, 1];
            t.check(extend_function(lat, &bad, &x).is_err(), || {
                String::from("nonzero top weight accepted")
            });
            Ok(())
        }),
        run_check("relative-pairs-subtract", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            let lower = LabeledConfiguration::from_chains(
                lat,
                &[blowup_chain(&bp, 0, 1, 1), blowup_chain(&bp, 0, 2, 2)],
            );
            let upper = LabeledConfiguration::from_chains(
                lat,
                &[blowup_chain(&bp, 0, 1, 1), blowup_chain(&bp, 1, 2, 2)],
            );
            let pair = RelativePair::new(lower, upper)?;
            t.eq(rank_of_pair(&bp, &pair), 2, || String::from("relative rank"));
            t.eq(gamma_of_pair(&bp, &pair), 6, || String::from("relative gamma"));
            t.eq(supp_of_pair(&pair), 1, || String::from("relative supp"));
            let lo = LabeledConfiguration::from_chains(lat, &[blowup_chain(&bp, 0, 1, 1)])
                .with_basepoint(blowup_chain(&bp, 0, 2, 1).depths().clone());
            let hi = LabeledConfiguration::from_chains(lat, &[blowup_chain(&bp, 0, 1, 1)])
                .with_basepoint(blowup_chain(&bp, 0, 2, 2).depths().clone());
            let pair = RelativePair::new(lo, hi)?;
            t.eq(supp_of_pair(&pair), 0, || {
                String::from("basepoint-only motion has empty strict support")
            });
            t.eq(rank_of_pair(&bp, &pair), 1, || String::from("basepoint-only rank"));
            Ok(())
        }),
    ]
}

fn suite_superadditivity(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("merge-defect-nonnegative", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let chains = enumerate_saturated_chains(lat, 3);
                for (num, den) in [(3u64, 5u64), (4, 5), (1, 1), (1, 2)] {
                    for a in &chains {
                        for b in &chains {
                            t.check(e_merge_defect(&bp, a, b, num, den) >= 0, || {
                                format!(
                                    "negative defect at J={num}/{den} merging {} with {}",
                                    word(lat, a),
                                    word(lat, b)
                                )
                            });
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("conversion-cost-closed-form", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let a = blowup_chain(&bp, 0, 1, 1);
            let b = blowup_chain(&bp, 0, 2, 1);
            t.eq(e_merge_defect(&bp, &a, &b, 1, 1), 1, || {
                String::from("cross-line collision at J=1")
            });
            t.eq(e_merge_defect(&bp, &a, &b, 1, 2), 0, || {
                String::from("cross-line collision at J=1/2")
            });
            t.eq(e_merge_defect(&bp, &a, &a, 1, 1), 0, || {
                String::from("same-line merge has no collision")
            });
            t.eq(e_scaled(&bp, &a, 3, 5), 3, || String::from("scaled energy of one line letter"));
            t.eq(e_scaled(&bp, &blowup_chain(&bp, 2, 1, 3), 3, 5), 2 * 5 + 3 * 3, || {
                String::from("scaled energy of a mixed word")
            });
            Ok(())
        }),
    ]
}

fn config_kappa(bp: &BlowupPoset, pts: &[Chain]) -> i64 {
    let x = LabeledConfiguration::from_chains(bp.lattice(), pts);
    gamma_of(bp, &x) as i64 - rank_of(bp, &x) as i64 - supp_of(&x) as i64
}

fn suite_kappa(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("rank-at-most-kappa", |t| {
            // equivalently 2*rank + supp <= gamma, over one to three points
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let chains: Vec<Chain> = enumerate_saturated_chains(bp.lattice(), 3)
                    .into_iter()
                    .filter(|c| !c.is_trivial())
                    .collect();
                let n = chains.len();
                let probe = |t: &mut Tally, pts: &[Chain]| {
                    let x = LabeledConfiguration::from_chains(bp.lattice(), pts);
                    let rank = rank_of(&bp, &x) as i64;
                    t.check(rank <= config_kappa(&bp, pts), || {
                        let words: Vec<String> =
                            pts.iter().map(|c| word(bp.lattice(), c)).collect();
                        format!("r={r}: rank above kappa at {{{}}}", words.join(", "))
                    });
                };
                for i in 0..n {
                    probe(t, core::slice::from_ref(&chains[i]));
                    for j in i..n {
                        probe(t, &[chains[i].clone(), chains[j].clone()]);
                        for k in j..n {
                            probe(t, &[chains[i].clone(), chains[j].clone(), chains[k].clone()]);
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("grows-along-covers", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                for c in enumerate_saturated_chains(lat, 3) {
                    let below = config_kappa(&bp, core::slice::from_ref(&c));
                    for up in covers_above(lat, &c, c.total_depth() + 1)? {
                        let above = config_kappa(&bp, core::slice::from_ref(&up));
                        t.check(above >= below + 1, || {
                            format!(
                                "kappa steps {below} -> {above} on {}",
                                pair_label(lat, &c, &up)
                            )
                        });
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn suite_type_order(cfg: &SuiteConfig) -> Vec<Check> {
    let bounds = TypeBounds {
        max_points: 2,
        max_entry_depth: 2,
    };
    vec![
        run_check("antisymmetry", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let universe = enumerate_saturated_types(lat, bounds, TypeFlavor::Relative, false)?;
                let pairs = mutually_related_pairs(lat, &universe)?;
                t.checked += universe.len() as u64;
                t.check(pairs.is_empty(), || {
                    format!(
                        "r={r}: mutually related types at universe indices {:?}",
                        pairs.first()
                    )
                });
            }
            Ok(())
        }),
        run_check("witness-paths", |t| {
            let bp = build_blowup_poset(1, 3)?;
            let lat = bp.lattice();
            let universe = enumerate_saturated_types(lat, bounds, TypeFlavor::Relative, false)?;
            let adj = one_step_digraph(lat, &universe)?;
            let edges: Vec<(usize, usize)> = adj
                .iter()
                .enumerate()
                .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
                .collect();
            t.check(!edges.is_empty(), || String::from("the universe is an antichain"));
            for &(u, v) in edges.iter().step_by(edges.len() / 24 + 1) {
                let w = leq_plus_sat(lat, &universe[u], &universe[v], &universe)?;
                t.check(w.holds, || format!("edge {u} -> {v} lost by the search"));
                for pair in w.chain.windows(2) {
                    t.check(
                        one_step_leq_plus_sat(lat, &universe[pair[0]], &universe[pair[1]])?,
                        || format!("witness path of {u} -> {v} breaks at {pair:?}"),
                    );
                }
                t.check(
                    !leq_plus_sat(lat, &universe[v], &universe[u], &universe)?.holds,
                    || format!("edge {u} -> {v} runs both ways"),
                );
            }
            Ok(())
        }),
        run_check("raising-collision-steps", |t| {
            let bp = build_blowup_poset(2, 3)?;
            let lat = bp.lattice();
            let triv = Chain::trivial(lat);
            let entry = |w: &Chain, x: &Chain| -> Result<_, DynError> {
                let lower = LabeledConfiguration::from_chains(lat, core::slice::from_ref(w));
                let upper = LabeledConfiguration::from_chains(lat, core::slice::from_ref(x));
                Ok(type_of_pair(lat, &RelativePair::new(lower, upper)?))
            };
            let one = entry(&triv, &blowup_chain(&bp, 0, 1, 1))?;
            let two = entry(&triv, &blowup_chain(&bp, 0, 1, 2))?;
            t.check(leq_plus(&one, &two)?, || String::from("raising refused"));
            t.check(!leq_plus(&two, &one)?, || String::from("raising reversed"));
            t.check(one_step_leq_plus_sat(lat, &one, &two)?, || {
                String::from("raising is not a single step")
            });
            let collided = entry(&triv, &blowup_chain(&bp, 1, 1, 0))?;
            let separate = {
                let lower = LabeledConfiguration::empty(None);
                let upper = LabeledConfiguration::from_chains(
                    lat,
                    &[blowup_chain(&bp, 0, 1, 1), blowup_chain(&bp, 0, 2, 1)],
                );
                type_of_pair(lat, &RelativePair::new(lower, upper)?)
            };
            t.check(!leq_plus(&collided, &separate)?, || {
                String::from("collision accepted without saturation")
            });
            t.check(one_step_leq_plus_sat(lat, &collided, &separate)?, || {
                String::from("collision refused with saturation")
            });
            t.check(!one_step_leq_plus_sat(lat, &separate, &collided)?, || {
                String::from("collision runs backwards")
            });
            Ok(())
        }),
    ]
}

/// Betti vector of a stalk with trailing zeros dropped.
fn betti_vec(s: &MuStalk) -> Vec<u64> {
    let mut v: Vec<u64> = s.cohomology.groups.iter().map(|g| g.betti).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
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

fn has_torsion(s: &MuStalk) -> bool {
    s.cohomology.groups.iter().any(|g| !g.torsion.is_empty())
}

fn suite_mu_vanishing(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("single-pairs-track-essentiality", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                for (w, x) in strict_pairs(lat, 4) {
                    let stalk = mu_stalk(lat, &[(w.clone(), x.clone())])?;
                    t.check(!has_torsion(&stalk), || {
                        format!("torsion in the stalk of {}", pair_label(lat, &w, &x))
                    });
                    if is_essential_pair(lat, &w, &x)? {
                        let nonzero = betti_vec(&stalk).iter().filter(|&&b| b != 0).count();
                        t.eq(nonzero, 1, || {
                            format!("degrees supporting {}", pair_label(lat, &w, &x))
                        });
                    } else {
                        t.check(stalk.is_zero(), || {
                            format!("non-essential pair {} has a stalk", pair_label(lat, &w, &x))
                        });
                    }
                }
            }
            Ok(())
        }),
        run_check("two-point-products", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let pairs = strict_pairs(lat, 4);
                let singles: Vec<MuStalk> = pairs
                    .iter()
                    .map(|(w, x)| mu_stalk(lat, &[(w.clone(), x.clone())]))
                    .collect::<Result<_, _>>()?;
                for i in 0..pairs.len() {
                    if pairs[i].1.total_depth() > 3 {
                        continue;
                    }
                    for j in i..pairs.len() {
                        if pairs[i].1.total_depth() + pairs[j].1.total_depth() > 4 {
                            continue;
                        }
                        let joint = mu_stalk(lat, &[pairs[i].clone(), pairs[j].clone()])?;
                        let label = || {
                            format!(
                                "support {} x {}",
                                pair_label(lat, &pairs[i].0, &pairs[i].1),
                                pair_label(lat, &pairs[j].0, &pairs[j].1)
                            )
                        };
                        t.check(!has_torsion(&joint), || format!("torsion on {}", label()));
                        t.eq(joint.shift, singles[i].shift + singles[j].shift, || {
                            format!("shift on {}", label())
                        });
                        t.eq(
                            betti_vec(&joint),
                            convolve(&betti_vec(&singles[i]), &betti_vec(&singles[j])),
                            || format!("tensor rule on {}", label()),
                        );
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn suite_mobius_euler(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("interval-identity", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                let chains = enumerate_saturated_chains(lat, 4);
                for w in &chains {
                    for x in &chains {
                        if chain_leq(w, x) {
                            let cross = euler_vs_mobius(lat, w, x)?;
                            t.check(cross.equal, || {
                                format!(
                                    "euler {} vs mobius {} on {}",
                                    cross.euler,
                                    cross.mobius,
                                    pair_label(lat, w, x)
                                )
                            });
                        }
                    }
                }
            }
            Ok(())
        }),
        run_check("stalk-shifted-euler-is-mobius", |t| {
            for r in 1..=cfg.max_r {
                let bp = build_blowup_poset(r, 3)?;
                let lat = bp.lattice();
                for (w, x) in strict_pairs(lat, 4) {
                    let stalk = mu_stalk(lat, &[(w.clone(), x.clone())])?;
                    let cross = euler_vs_mobius(lat, &w, &x)?;
                    t.eq(stalk.shifted_euler(), cross.mobius, || {
                        format!("shifted euler on {}", pair_label(lat, &w, &x))
                    });
                }
            }
            Ok(())
        }),
        run_check("two-point-euler-multiplies", |t| {
            let bp = build_blowup_poset(cfg.max_r.max(1), 3)?;
            let lat = bp.lattice();
            let pairs = strict_pairs(lat, 4);
            let mobius_of: Vec<i64> = pairs
                .iter()
                .map(|(w, x)| euler_vs_mobius(lat, w, x).map(|c| c.mobius))
                .collect::<Result<_, _>>()?;
            for i in 0..pairs.len() {
                if pairs[i].1.total_depth() > 3 {
                    continue;
                }
                for j in i..pairs.len() {
                    if pairs[i].1.total_depth() + pairs[j].1.total_depth() > 4 {
                        continue;
                    }
                    let joint = mu_stalk(lat, &[pairs[i].clone(), pairs[j].clone()])?;
                    t.eq(joint.shifted_euler(), mobius_of[i] * mobius_of[j], || {
                        format!(
                            "product euler on {} x {}",
                            pair_label(lat, &pairs[i].0, &pairs[i].1),
                            pair_label(lat, &pairs[j].0, &pairs[j].1)
                        )
                    });
                }
            }
            Ok(())
        }),
    ]
}

fn suite_stability_constants(_cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("intro-quintic", |t| {
            let basic = CurveContext::new(0, 5, vec![2, 2, 2], 3)?;
            match stability_range(&basic) {
                StabilityOutcome::Infeasible { m, failed_condition } => {
                    t.eq(m, -1, || String::from("basic slope of (5; 2,2,2)"));
                    t.eq(failed_condition, None, || {
                        String::from("basic infeasibility reason")
                    });
                }
                StabilityOutcome::Feasible(_) => {
                    t.check(false, || String::from("basic clause feasible on (5; 2,2,2)"));
                }
            }
            let gp = CurveContext::new(0, 5, vec![2, 2, 2], 3)?.with_general_position();
            let range = stability_range(&gp);
            let r = range.range().ok_or("general position infeasible on (5; 2,2,2)")?;
            t.eq(r.m, 1, || String::from("general-position slope"));
            t.eq(r.i, 1, || String::from("general-position bound"));
            t.eq(r.connectivity.slope, 1, || String::from("connectivity slope"));
            t.eq(r.connectivity.intercept, -2, || String::from("connectivity intercept"));
            t.eq(r.connectivity.eval(4), 2, || String::from("connectivity at k=4"));
            let pointed = CurveContext::new(0, 5, vec![2, 2, 2], 3)?
                .with_general_position()
                .with_pointed();
            let pr = stability_range(&pointed);
            let pr = pr.range().ok_or("pointed flavor infeasible on (5; 2,2,2)")?;
            t.eq(pr.connectivity.intercept, -2 + POINTED_CONNECTIVITY_SHIFT, || {
                String::from("pointed connectivity intercept")
            });
            t.eq(POINTED_CONNECTIVITY_SHIFT, -1, || String::from("pointed offset"));
            Ok(())
        }),
        run_check("scaled-family", |t| {
            for k in 2..=4i64 {
                let gp = CurveContext::new(0, 5 * k, vec![2 * k as u64; 3], 3)?
                    .with_general_position();
                let range = stability_range(&gp);
                let r = range
                    .range()
                    .ok_or_else(|| format!("scale {k} infeasible under general position"))?;
                t.eq(r.m, k, || format!("slope at scale {k}"));
                t.eq(r.i, k, || format!("bound at scale {k}"));
                t.eq(r.connectivity.intercept, -2, || format!("intercept at scale {k}"));
                let basic = CurveContext::new(0, 5 * k, vec![2 * k as u64; 3], 3)?;
                t.check(!stability_range(&basic).is_feasible(), || {
                    format!("basic clause feasible at scale {k}")
                });
            }
            Ok(())
        }),
        run_check("higher-degree-and-genus", |t| {
            let nonic = CurveContext::new(0, 9, vec![2, 2, 2], 3)?;
            let r = stability_range(&nonic);
            let r = r.range().ok_or("basic clause infeasible on (9; 2,2,2)")?;
            t.eq((r.m, r.i), (3, 3), || String::from("nonic constants"));
            t.eq(r.connectivity.intercept, -2, || String::from("nonic intercept"));
            let elliptic = CurveContext::new(1, 9, vec![2, 2, 2], 3)?;
            let r = stability_range(&elliptic);
            let r = r.range().ok_or("basic clause infeasible on genus-1 (9; 2,2,2)")?;
            t.eq((r.m, r.i), (3, 1), || String::from("genus-1 constants"));
            t.eq(r.connectivity.intercept, -4, || String::from("genus-1 intercept"));
            Ok(())
        }),
        run_check("positivity-failure-direction", |t| {
            let ctx = CurveContext::new(0, 4, vec![4, 1, 1], 3)?.with_general_position();
            match stability_range(&ctx) {
                StabilityOutcome::Infeasible { failed_condition, .. } => {
                    t.eq(failed_condition, Some(2), || {
                        String::from("first failing direction on (4; 4,1,1)")
                    });
                }
                StabilityOutcome::Feasible(_) => {
                    t.check(false, || String::from("(4; 4,1,1) accepted under general position"));
                }
            }
            Ok(())
        }),
        run_check("unobstructedness-windows", |t| {
            let ctx = CurveContext::new(0, 5, vec![2, 2, 2], 3)?;
            t.check(rr_unobstructed(&ctx, 0, 6), || String::from("(0,6) rejected"));
            t.check(!rr_unobstructed(&ctx, 0, 7), || String::from("(0,7) accepted"));
            for m0 in 0..=6u64 {
                for ml in 0..=6u64 {
                    if rr_unobstructed(&ctx, m0 + 1, ml) {
                        t.check(rr_unobstructed(&ctx, m0, ml), || {
                            format!("window not monotone at ({m0}, {ml})")
                        });
                    }
                }
            }
            let gp = CurveContext::new(0, 5, vec![2, 2, 2], 3)?.with_general_position();
            let check = gp_unobstructed(&gp, 0, &[2, 2, 2])?;
            t.check(check.ok, || String::from("(5; 2,2,2) obstructed at the baseline"));
            t.eq(check.h1_bound, 0, || String::from("baseline obstruction bound"));
            let unflagged = CurveContext::new(0, 5, vec![2, 2, 2], 3)?;
            t.check(
                matches!(
                    gp_unobstructed(&unflagged, 0, &[2, 2, 2]),
                    Err(StabilityError::GeneralPositionRequired)
                ),
                || String::from("general-position test ran without the flag"),
            );
            Ok(())
        }),
    ]
}

fn suite_build_p(_cfg: &SuiteConfig) -> Vec<Check> {
    let expected_members: BTreeMap<i64, usize> = [(7, 189), (9, 2268), (11, 5670)].into();
    vec![
        run_check("certificates-hold", |t| {
            for d in [7i64, 9, 11] {
                let ctx = CurveContext::new(0, d, vec![2, 2, 2], 3)?;
                let bound = d - 6;
                let p = build_p(&ctx, bound, PFlavor::Plain, &PBounds::default())?;
                t.eq(p.universe.len(), 5670, || format!("universe size at d={d}"));
                t.eq(p.member_count(), expected_members[&d], || {
                    format!("member count at d={d}")
                });
                t.eq(p.certificate.clauses.len(), 3, || format!("clause count at d={d}"));
                for clause in &p.certificate.clauses {
                    t.check(clause.pass, || {
                        format!(
                            "clause {} failed at d={d}: {}",
                            clause.clause,
                            clause.failure.clone().unwrap_or_default()
                        )
                    });
                }
            }
            Ok(())
        }),
        run_check("membership-recomputes", |t| {
            // the plain membership formula is the added word-letter count,
            // so it can be recomputed here without the builder
            let ctx = CurveContext::new(0, 7, vec![2, 2, 2], 3)?;
            let p = build_p(&ctx, 1, PFlavor::Plain, &PBounds::default())?;
            let lat = p.blowup.lattice();
            for (i, ty) in p.universe.iter().enumerate() {
                let mut added = 0i64;
                let mut all_diagonal = true;
                for e in ty.all_entries() {
                    let lo = saturate(lat, &e.lower);
                    let hi = saturate(lat, &e.upper);
                    added += i64::from(hi.total_depth()) - i64::from(lo.total_depth());
                    if lo != hi {
                        all_diagonal = false;
                    }
                }
                let expect = all_diagonal || added <= p.bound;
                t.eq(p.members[i], expect, || {
                    format!("membership of universe type {i}")
                });
                t.eq(p.kappas[i], kappa_of(&p.blowup, ty)?, || {
                    format!("stored kappa of universe type {i}")
                });
                if p.kappas[i] <= p.bound {
                    t.check(p.members[i], || {
                        format!("kappa-covered type {i} missing from the member set")
                    });
                }
            }
            Ok(())
        }),
        run_check("deterministic-rebuild", |t| {
            let ctx = CurveContext::new(0, 7, vec![2, 2, 2], 3)?;
            let a = build_p(&ctx, 1, PFlavor::Plain, &PBounds::default())?;
            let b = build_p(&ctx, 1, PFlavor::Plain, &PBounds::default())?;
            t.check(a.universe == b.universe, || String::from("universe order changed"));
            t.check(a.members == b.members, || String::from("membership changed"));
            t.check(a.certificate == b.certificate, || String::from("certificate changed"));
            Ok(())
        }),
        run_check("general-position-reports-gap", |t| {
            // the scaled class is known to break kappa coverage; the value
            // of this check is that the certificate says so rather than
            // glossing over it
            let ctx = CurveContext::new(0, 10, vec![4, 4, 4], 3)?.with_general_position();
            let p = build_p(&ctx, 2, PFlavor::GeneralPosition, &PBounds::default())?;
            t.eq(p.universe.len(), 15274, || String::from("general-position universe size"));
            t.eq(p.member_count(), 85, || String::from("general-position member count"));
            t.check(!p.certificate.holds(), || {
                String::from("kappa coverage unexpectedly holds on (10; 4,4,4)")
            });
            t.check(p.certificate.clauses[0].pass, || {
                String::from("downward closure broke on (10; 4,4,4)")
            });
            t.check(!p.certificate.clauses[1].pass, || {
                String::from("kappa coverage passed on (10; 4,4,4)")
            });
            let failure = p.certificate.clauses[1].failure.clone().unwrap_or_default();
            t.check(failure.contains("4*l1<=1*l1+3*0"), || {
                format!("unexpected coverage counterexample: {failure}")
            });
            t.check(p.certificate.clauses[2].pass, || {
                String::from("successor clause broke on (10; 4,4,4)")
            });
            Ok(())
        }),
    ]
}

fn suite_delpezzo(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run_check("minus-one-curves", |t| {
            let curves = dp_minus_one_curves();
            t.eq(curves.len(), 10, || String::from("curve count"));
            let mut disjoint = 0usize;
            for (i, a) in curves.iter().enumerate() {
                t.eq(dp_pairing(a, a), -1, || format!("self-intersection of curve {i}"));
                for b in curves.iter().skip(i + 1) {
                    let p = dp_pairing(a, b);
                    t.check(p == 0 || p == 1, || format!("pairing {p} between curves"));
                    if p == 0 {
                        disjoint += 1;
                    }
                }
            }
            t.eq(disjoint, 30, || String::from("disjoint pair count"));
            let k = DPClass::anticanonical();
            t.check(dp_is_ample(&k), || String::from("anticanonical not ample"));
            t.eq(dp_pairing(&k, &k), 5, || String::from("anticanonical self-intersection"));
            for c in &curves {
                t.eq(dp_pairing(&k, c), 1, || format!("anticanonical degree of {c}"));
            }
            t.check(!dp_is_ample(&DPClass::new(1, [1, 1, 0, 0])), || {
                String::from("a line through two points is not ample")
            });
            Ok(())
        }),
        run_check("weyl-order", |t| {
            let group = weyl_group();
            t.eq(group.len(), 120, || String::from("group order"));
            let probe = DPClass::new(8, [4, 3, 2, 1]);
            let k = DPClass::anticanonical();
            for el in group.iter().step_by(7) {
                t.check(el.apply(&k) == k, || String::from("anticanonical moved"));
                let img = el.apply(&probe);
                t.eq(dp_pairing(&img, &img), dp_pairing(&probe, &probe), || {
                    String::from("pairing not preserved")
                });
                t.check(dp_apply_word(&probe, &el.word) == img, || {
                    String::from("word and matrix disagree")
                });
            }
            Ok(())
        }),
        run_check("normalize-seeded", |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let curves = dp_minus_one_curves();
            let mut produced = 0u32;
            while produced < cfg.samples {
                let a = DPClass::new(
                    rng.gen_range(1..=36),
                    [
                        rng.gen_range(0..=12),
                        rng.gen_range(0..=12),
                        rng.gen_range(0..=12),
                        rng.gen_range(0..=12),
                    ],
                );
                if !dp_is_ample(&a) {
                    continue;
                }
                produced += 1;
                let norm = dp_normalize(&a)?;
                let c = norm.class;
                for w in c.n.windows(2) {
                    t.check(w[0] >= w[1], || format!("{c} not sorted"));
                }
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| c.n[i] != c.n[j]));
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        let sum = c.n[i] + c.n[j] + c.n[3];
                        t.check(sum <= c.d, || format!("bound broken on {c} at ({i},{j})"));
                        if distinct {
                            t.check(sum < c.d, || {
                                format!("strict bound broken on distinct {c} at ({i},{j})")
                            });
                        }
                    }
                }
                t.check(dp_apply_word(&a, &norm.witness) == c, || {
                    format!("witness does not reach {c} from {a}")
                });
                t.eq(dp_pairing(&c, &c), dp_pairing(&a, &a), || {
                    format!("self-intersection moved from {a}")
                });
                let again = dp_normalize(&c)?;
                t.check(again.class == c && again.witness.is_empty(), || {
                    format!("{c} not a normal form")
                });
                for curve in &curves {
                    t.check(dp_pairing(&c, curve) > 0, || {
                        format!("normalization of {a} left the ample cone")
                    });
                }
            }
            t.check(
                matches!(
                    dp_normalize(&DPClass::new(1, [1, 1, 0, 0])),
                    Err(StabilityError::NotAmple { .. })
                ),
                || String::from("non-ample input accepted"),
            );
            Ok(())
        }),
        run_check("cremona-involution", |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            let k = DPClass::anticanonical();
            for _ in 0..64 {
                let a = DPClass::new(
                    rng.gen_range(-9..=9),
                    [
                        rng.gen_range(-9..=9),
                        rng.gen_range(-9..=9),
                        rng.gen_range(-9..=9),
                        rng.gen_range(-9..=9),
                    ],
                );
                let mut idx = [0usize; 3];
                loop {
                    for slot in &mut idx {
                        *slot = rng.gen_range(0..4);
                    }
                    if idx[0] != idx[1] && idx[0] != idx[2] && idx[1] != idx[2] {
                        break;
                    }
                }
                let once = cremona(&a, idx)?;
                t.check(cremona(&once, idx)? == a, || format!("not an involution at {a}, {idx:?}"));
                t.eq(dp_pairing(&once, &once), dp_pairing(&a, &a), || {
                    format!("pairing moved at {a}, {idx:?}")
                });
                t.check(cremona(&k, idx)? == k, || format!("anticanonical moved by {idx:?}"));
            }
            t.check(
                matches!(
                    cremona(&k, [0, 0, 1]),
                    Err(StabilityError::BadCremonaTriple { .. })
                ),
                || String::from("degenerate triple accepted"),
            );
            Ok(())
        }),
        run_check("orbit-slope", |t| {
            let a = DPClass::new(8, [4, 3, 2, 1]);
            match n_alpha(&a)? {
                NAlphaOutcome::Feasible { n, class, argmax } => {
                    t.eq(n, 3, || String::from("orbit slope of (8; 4,3,2,1)"));
                    t.check(dp_apply_word(&a, &argmax) == class, || {
                        String::from("argmax word misses its class")
                    });
                    let sum: i64 = class.n.iter().sum();
                    let mx = class.n.iter().copied().max().unwrap_or(0);
                    t.eq(class.d - sum + mx, n, || String::from("slope of the argmax class"));
                }
                NAlphaOutcome::Infeasible => {
                    t.check(false, || String::from("(8; 4,3,2,1) scanned as infeasible"));
                }
            }
            let relabeled = n_alpha(&DPClass::new(8, [1, 2, 4, 3]))?;
            t.check(
                matches!(relabeled, NAlphaOutcome::Feasible { n: 3, .. }),
                || String::from("orbit slope not label-invariant"),
            );
            t.check(
                matches!(n_alpha(&DPClass::anticanonical())?, NAlphaOutcome::Infeasible),
                || String::from("anticanonical slope feasible"),
            );
            t.check(
                matches!(
                    n_alpha(&DPClass::new(1, [1, 1, 0, 0])),
                    Err(StabilityError::NotAmple { .. })
                ),
                || String::from("non-ample class scanned"),
            );
            Ok(())
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("no-such-suite", &SuiteConfig::default()).is_none());
    }

    #[test]
    fn names_cover_every_suite() {
        let cfg = SuiteConfig {
            max_r: 1,
            seed: 17,
            samples: 4,
        };
        for name in SUITE_NAMES {
            if matches!(*name, "build-p" | "type-order" | "mu-vanishing" | "mobius-euler") {
                continue; // covered by the acceptance run, too slow for a unit test
            }
            let checks = run_suite(name, &cfg).expect("listed suite exists");
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.name.starts_with(&format!("{name}/")), "{}", c.name);
            }
        }
    }
}
