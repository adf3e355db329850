//! The report data model shared by every subcommand, and its two
//! serializations: canonical schema-versioned JSON and flat CSV.
//!
//! A report is a deterministic function of the effective command line (minus
//! scheduling flags like `--jobs`), which is echoed back in `command` so a
//! reader can reproduce any file from its own header. Rows are the payload
//! tables; checks are pass/fail verdicts from the verification suites.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Tool {
        Tool {
            name: String::from("strata"),
            version: String::from(env!("CARGO_PKG_VERSION")),
        }
    }
}

/// One verdict from a verification suite. A failing check always carries
/// the first counterexample the sweep encountered.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of individual comparisons behind the verdict.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Row {
    #[serde(rename_all = "camelCase")]
    Chain {
        word: String,
        total: u32,
        covers: Vec<String>,
        essentials: Vec<String>,
    },
    #[serde(rename_all = "camelCase")]
    Census {
        ty: String,
        points: u64,
        gamma: u64,
        rank: u64,
        supp: u64,
        kappa: i64,
        config_dim_real: u64,
        mobius: i64,
        #[serde(skip_serializing_if = "Option::is_none")]
        mu_shift: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        mu_betti: Option<Vec<u64>>,
    },
    #[serde(rename_all = "camelCase")]
    Stability {
        flavor: String,
        genus: u32,
        degree: i64,
        multiplicities: Vec<u64>,
        pointed: bool,
        feasible: bool,
        m: i64,
        #[serde(skip_serializing_if = "Option::is_none")]
        i: Option<i64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        connectivity_slope: Option<i64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        connectivity_intercept: Option<i64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        failed_condition: Option<u32>,
    },
    #[serde(rename_all = "camelCase")]
    DelPezzo {
        op: String,
        class: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        ample: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        normalized: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        feasible: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        n: Option<i64>,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    /// Canonical echo of the effective command line.
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool::current(),
            command,
            seed: None,
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports are plain data");
        s.push('\n');
        s
    }

    /// Flat table form: the rows table when there are rows, otherwise the
    /// checks table. All rows of one report share a kind, so the header is
    /// read off the first row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["name", "pass", "checked", "counterexample"])
                .expect("in-memory write");
            for c in &self.checks {
                w.write_record([
                    c.name.as_str(),
                    bool_cell(c.pass),
                    &c.checked.to_string(),
                    c.counterexample.as_deref().unwrap_or(""),
                ])
                .expect("in-memory write");
            }
        } else {
            w.write_record(self.rows[0].csv_header())
                .expect("in-memory write");
            for row in &self.rows {
                w.write_record(row.csv_cells()).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

fn bool_cell(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn join_cell<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn opt_cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl Row {
    fn csv_header(&self) -> &'static [&'static str] {
        match self {
            Row::Chain { .. } => &["word", "total", "covers", "essentials"],
            Row::Census { .. } => &[
                "ty",
                "points",
                "gamma",
                "rank",
                "supp",
                "kappa",
                "configDimReal",
                "mobius",
                "muShift",
                "muBetti",
            ],
            Row::Stability { .. } => &[
                "flavor",
                "genus",
                "degree",
                "multiplicities",
                "pointed",
                "feasible",
                "m",
                "i",
                "connectivitySlope",
                "connectivityIntercept",
                "failedCondition",
            ],
            Row::DelPezzo { .. } => &[
                "op",
                "class",
                "ample",
                "normalized",
                "witness",
                "feasible",
                "n",
            ],
        }
    }

    fn csv_cells(&self) -> Vec<String> {
        match self {
            Row::Chain {
                word,
                total,
                covers,
                essentials,
            } => vec![
                word.clone(),
                total.to_string(),
                join_cell(covers),
                join_cell(essentials),
            ],
            Row::Census {
                ty,
                points,
                gamma,
                rank,
                supp,
                kappa,
                config_dim_real,
                mobius,
                mu_shift,
                mu_betti,
            } => vec![
                ty.clone(),
                points.to_string(),
                gamma.to_string(),
                rank.to_string(),
                supp.to_string(),
                kappa.to_string(),
                config_dim_real.to_string(),
                mobius.to_string(),
                opt_cell(mu_shift),
                mu_betti.as_deref().map(join_cell).unwrap_or_default(),
            ],
            Row::Stability {
                flavor,
                genus,
                degree,
                multiplicities,
                pointed,
                feasible,
                m,
                i,
                connectivity_slope,
                connectivity_intercept,
                failed_condition,
            } => vec![
                flavor.clone(),
                genus.to_string(),
                degree.to_string(),
                join_cell(multiplicities),
                bool_cell(*pointed).to_string(),
                bool_cell(*feasible).to_string(),
                m.to_string(),
                opt_cell(i),
                opt_cell(connectivity_slope),
                opt_cell(connectivity_intercept),
                opt_cell(failed_condition),
            ],
            Row::DelPezzo {
                op,
                class,
                ample,
                normalized,
                witness,
                feasible,
                n,
            } => vec![
                op.clone(),
                class.clone(),
                opt_cell(ample),
                opt_cell(normalized),
                opt_cell(witness),
                opt_cell(feasible),
                opt_cell(n),
            ],
        }
    }
}
