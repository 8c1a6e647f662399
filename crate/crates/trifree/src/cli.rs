//! Subcommands of the `trifree` binary. Each command returns its
//! machine-readable output and whether every check it ran passed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use trifree_core::bounds::{
    brute_turan_touching, covers_at_least, p_fun, p_lower_construction, plan_maxgl, plan_maxgsmall,
    turan_touching_bound, verify_identity_grid, verify_identity_random, verify_lemma_maxf, verify_point_identities,
    Strategy, VerifyReport, BRUTE_TOUCHING_CAP, KAPPA0_DEFAULT,
};
use trifree_core::decomposition::{audit, decompose_capped, PACKING_ENUM_CAP};
use trifree_core::extremal::{build, edge_formula, family_table, figure2_data, is_valid, thresholds, variants};
use trifree_core::extremal::{ExtremalSpec, Family};
use trifree_core::packing::{local_search, max_packing_exact};

use crate::format::{graph_to_string, read_graph, write_text, GraphFormat};
use crate::report::{census_csv, figure2_csv};
use crate::{census, graph6, run_plan, IoError};

#[derive(Parser, Debug)]
#[command(name = "trifree", version, about = "Graphs without k+1 vertex-disjoint triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one of the four extremal graphs.
    Construct(ConstructArgs),
    /// Exhaustive maximum edge count per k for n <= 8.
    Census(CensusArgs),
    /// Maximum triangle packing of a graph file.
    Pack(PackArgs),
    /// Triangle-class decomposition and its edge-count audit.
    Decompose(DecomposeArgs),
    /// Numeric checks of the bound functions.
    Verify(VerifyArgs),
    /// Edge counts of all families for every k, as CSV.
    Figure2(Figure2Args),
    /// Family transitions in k, closed form and exact.
    Thresholds(ThresholdsArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Size of the first independent part for E2 and E4.
    #[arg(long)]
    pub variant: Option<usize>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: GraphFormat,
    /// Write the graph here; otherwise it is embedded in the summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k_lo: Option<usize>,
    #[arg(long)]
    pub k_hi: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PackMode {
    Exact,
    Local,
}

#[derive(Args, Debug)]
pub struct PackArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub input_format: Option<GraphFormat>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: PackMode,
    /// Packing triangles touched by one rotation (1 or 2).
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub input_format: Option<GraphFormat>,
    /// Maximum packings to enumerate before giving up.
    #[arg(long, default_value_t = PACKING_ENUM_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: VerifyCheck,
}

#[derive(Args, Debug, Clone)]
pub struct SamplingArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate F(n,k) in full when it has at most this many points.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 10_000)]
    pub block: u64,
    #[arg(long, default_value_t = 256)]
    pub chunk: i64,
    #[arg(long)]
    pub k_lo: Option<i64>,
    #[arg(long)]
    pub k_hi: Option<i64>,
    /// Run below the size where the bound is claimed.
    #[arg(long)]
    pub report_only: bool,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SamplingArgs {
    fn strategy(&self) -> Strategy {
        let k_range = match (self.k_lo, self.k_hi) {
            (None, None) => None,
            (lo, hi) => Some((lo.unwrap_or(0), hi.unwrap_or(i64::MAX))),
        };
        Strategy {
            budget: self.budget,
            samples: self.samples,
            seed: self.seed,
            block: self.block,
            chunk: self.chunk,
            k_range,
            report_only: self.report_only,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum VerifyCheck {
    /// Maximum of the two-class profile function over n' in from..=n, all k.
    Maxf {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        from: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
    },
    /// The small-regime bound against the family maximum.
    Maxgsmall(SamplingArgs),
    /// The large-regime bound against the family maximum.
    Maxgl {
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = KAPPA0_DEFAULT)]
        kappa0: i64,
    },
    /// The profile identity suite.
    Identities {
        #[arg(long, default_value_t = 6)]
        grid: i64,
        #[arg(long, default_value_t = 4)]
        shift: i64,
        #[arg(long, default_value_t = 100_000)]
        random: u64,
        #[arg(long, default_value_t = 100)]
        coord: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 150)]
        points_n: i64,
    },
    /// Brute-force touching Turán number against its formula.
    Turan {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        a: usize,
    },
    /// The lower construction for the touching bound.
    Plower {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        a: usize,
    },
}

#[derive(Args, Debug)]
pub struct Figure2Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ThresholdsArgs {
    #[arg(long)]
    pub n: usize,
    /// Include the per-k family table.
    #[arg(long)]
    pub table: bool,
}

/// What a command printed and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

fn emit(text: String, out: Option<&PathBuf>, passed: bool) -> Result<Outcome, IoError> {
    match out {
        Some(p) => {
            write_text(p, &text)?;
            Ok(Outcome { output: to_json(&json!({ "written": p.display().to_string(), "passed": passed })), passed })
        }
        None => Ok(Outcome { output: text, passed }),
    }
}

fn validity(f: Family) -> &'static str {
    match f {
        Family::E1 => "3k <= n",
        Family::E2 => "4k + 2 <= n",
        Family::E3 => "3k <= n and 2k < n",
        Family::E4 => "3k <= n and (6k + 4 >= n or 3k + 2 >= n)",
    }
}

pub fn cmd_construct(a: &ConstructArgs) -> Result<Outcome, IoError> {
    let mut spec = ExtremalSpec::new(a.family, a.n, a.k);
    spec.variant = a.variant;
    let g = build(&spec)?;
    let formula = edge_formula(a.family, a.n, a.k)?;
    let text = graph_to_string(&g, a.format);
    let mut summary = json!({
        "family": a.family,
        "n": a.n,
        "k": a.k,
        "variant": a.variant,
        "variants": variants(a.family, a.n, a.k),
        "edges": g.edge_count(),
        "formula_edges": formula,
        "valid_range": validity(a.family),
    });
    match &a.out {
        Some(p) => {
            write_text(p, &text)?;
            summary["written"] = json!(p.display().to_string());
        }
        None => summary["graph"] = json!(text.trim_end()),
    }
    let passed = g.edge_count() as u64 == formula;
    Ok(Outcome { output: to_json(&summary), passed })
}

pub fn cmd_census(a: &CensusArgs) -> Result<Outcome, IoError> {
    let lo = a.k_lo.unwrap_or(0);
    let hi = a.k_hi.unwrap_or(usize::MAX);
    let rows: Vec<_> = census(a.n, a.threads)?.into_iter().filter(|r| (lo..=hi).contains(&r.k)).collect();
    let passed = rows.iter().all(|r| {
        r.brute_max_edges >= r.e_max
            && r.agrees_with_moon != Some(false)
            && (r.k != 0 || r.brute_max_edges == census::mantel(r.n))
    });
    let text = match a.format {
        TableFormat::Csv => census_csv(&rows)?,
        TableFormat::Json => to_json(&rows),
    };
    emit(text, a.out.as_ref(), passed)
}

pub fn cmd_pack(a: &PackArgs) -> Result<Outcome, IoError> {
    let g = read_graph(&a.input, a.input_format)?;
    let out = match a.mode {
        PackMode::Exact => {
            let r = max_packing_exact(&g)?;
            json!({ "mode": "exact", "n": g.n(), "edges": g.edge_count(), "size": r.size, "exact": r.exact, "triangles": r.triangles })
        }
        PackMode::Local => {
            let r = local_search(&g, a.seed, a.radius)?;
            json!({
                "mode": "local",
                "n": g.n(),
                "edges": g.edge_count(),
                "seed": a.seed,
                "radius": a.radius,
                "size": r.packing.len(),
                "exact": false,
                "triangles": r.packing,
                "matching": r.matching,
                "trace": r.trace,
            })
        }
    };
    Ok(Outcome { output: to_json(&out), passed: true })
}

pub fn cmd_decompose(a: &DecomposeArgs) -> Result<Outcome, IoError> {
    let g = read_graph(&a.input, a.input_format)?;
    let d = decompose_capped(&g, a.cap)?;
    let rep = audit(&g, &d)?;
    let passed = rep.passed();
    Ok(Outcome { output: to_json(&json!({ "decomposition": d, "audit": rep })), passed })
}

fn report_outcome(reports: &[VerifyReport]) -> Outcome {
    let passed = reports.iter().all(VerifyReport::passed);
    Outcome { output: to_json(&json!({ "passed": passed, "reports": reports })), passed }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, IoError> {
    match &a.check {
        VerifyCheck::Maxf { n, from, k } => {
            let (mut cases, mut failed, mut min_slack) = (0u64, Vec::new(), None::<i64>);
            for nn in from.unwrap_or(*n)..=*n {
                let ks: Vec<i64> = match k {
                    Some(k) => vec![*k],
                    None => (0..=(nn - 2).div_euclid(3)).collect(),
                };
                for kk in ks {
                    let r = verify_lemma_maxf(nn, kk)?;
                    cases += 1;
                    if let Some(s) = r.min_slack {
                        min_slack = Some(min_slack.map_or(s, |m| m.min(s)));
                    }
                    if !r.passed() && failed.len() < 20 {
                        failed.push(r);
                    }
                }
            }
            let passed = failed.is_empty();
            let out =
                json!({ "name": "maxf", "passed": passed, "cases": cases, "min_slack": min_slack, "failed": failed });
            Ok(Outcome { output: to_json(&out), passed })
        }
        VerifyCheck::Maxgsmall(s) => {
            let plan = plan_maxgsmall(s.n, s.strategy())?;
            Ok(report_outcome(&[run_plan(&plan, s.threads)?]))
        }
        VerifyCheck::Maxgl { sampling: s, kappa0 } => {
            let plan = plan_maxgl(s.n, *kappa0, s.strategy())?;
            Ok(report_outcome(&[run_plan(&plan, s.threads)?]))
        }
        VerifyCheck::Identities { grid, shift, random, coord, seed, points_n } => Ok(report_outcome(&[
            verify_identity_grid(*grid, *shift),
            verify_identity_random(*random, *coord, *seed),
            verify_point_identities(*points_n),
        ])),
        VerifyCheck::Turan { h, a } => {
            if *h > BRUTE_TOUCHING_CAP {
                return Err(IoError::TooLarge(format!("brute force needs h <= {BRUTE_TOUCHING_CAP}")));
            }
            let brute = brute_turan_touching(*h, *a)?;
            let formula = turan_touching_bound(*h as i64, *a as i64)?;
            let passed = brute == formula;
            let out = json!({ "name": "turan", "h": h, "a": a, "brute": brute, "formula": formula, "passed": passed });
            Ok(Outcome { output: to_json(&out), passed })
        }
        VerifyCheck::Plower { h, a } => {
            let c = p_lower_construction(*h, *a)?;
            let p = p_fun(*h as i64, *a as i64)?;
            let edges = c.graph.edge_count() as i64;
            // exact cover search is only cheap on small graphs
            let free = (*h <= 15).then(|| covers_at_least(&c.graph, &c.marked, 3).map(|x| !x)).transpose()?;
            let passed = edges == p && free != Some(false);
            let out = json!({
                "name": "plower",
                "h": h,
                "a": a,
                "edges": edges,
                "p": p,
                "no_cover_of_three_marked": free,
                "graph6": graph6::encode(&c.graph),
                "passed": passed,
            });
            Ok(Outcome { output: to_json(&out), passed })
        }
    }
}

pub fn cmd_figure2(a: &Figure2Args) -> Result<Outcome, IoError> {
    emit(figure2_csv(&figure2_data(a.n)?)?, a.out.as_ref(), true)
}

pub fn cmd_thresholds(a: &ThresholdsArgs) -> Result<Outcome, IoError> {
    let out = if a.table { to_json(&family_table(a.n)?) } else { to_json(&thresholds(a.n)) };
    Ok(Outcome { output: out, passed: true })
}

pub fn run(cli: &Cli) -> Result<Outcome, IoError> {
    match &cli.command {
        Command::Construct(a) => {
            if !is_valid(a.family, a.n, a.k) {
                return Err(trifree_core::Error::InvalidRange(format!(
                    "{} needs {}, got n={}, k={}",
                    a.family,
                    validity(a.family),
                    a.n,
                    a.k
                ))
                .into());
            }
            cmd_construct(a)
        }
        Command::Census(a) => cmd_census(a),
        Command::Pack(a) => cmd_pack(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Figure2(a) => cmd_figure2(a),
        Command::Thresholds(a) => cmd_thresholds(a),
    }
}
