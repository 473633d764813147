//! Command-line front end: root data, verification and classification of
//! structure files, constructions, condition tables and exhaustive sweeps.

pub mod file;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use flagdirac::classification::{trivializing_b, DEFAULT_CAP};
use flagdirac::dirac_model::classify_blocks;
use flagdirac::involutivity::{table_verdicts, TripleVerdict};
use flagdirac::tables;
use flagdirac::{
    b_normal_form, construct_with_real_index, enumerate_assignments, is_involutive_oracle,
    real_index, structure_constants, subspace_report, CartanSpec, DiracStructure,
    EnumerationFilter, Grid, OracleVerdict, RootSystem, DEFAULT_TOL,
};
use serde_json::{json, Value};

pub use file::{CaseEntry, Coefficient, StructureFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_INVOLUTIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Core(#[from] flagdirac::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "flagdirac",
    version,
    about = "Invariant Dirac structures on maximal flag manifolds"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots with heights, sum triples and the height histogram
    Roots { spec: CartanSpec },
    /// Decide involutivity of a structure file
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Build a structure with the given (even) real index
    Construct {
        spec: CartanSpec,
        #[arg(long)]
        real_index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-root plane family, B-field normal form and subspace dimensions
    Classify { file: PathBuf },
    /// Print a condition table or a generated listing
    Tables {
        which: Which,
        /// Only this real index (sl2 and sl3 listings)
        #[arg(long)]
        real_index: Option<usize>,
    },
    /// Run both deciders over every assignment from a case grid
    Sweep {
        spec: CartanSpec,
        /// Exit with status 3 on any disagreement
        #[arg(long)]
        check_agreement: bool,
        #[arg(long)]
        real_index: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1, -1])]
        eps: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-2, -1, 1, 2])]
        ratios: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1, 1, 2])]
        xs: Vec<i64>,
        #[arg(long = "a-values", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1, 0, 1])]
        a_values: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// How many disagreements to list
        #[arg(long, default_value_t = 10)]
        show: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Table,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Integrability,
    Involutivity,
    #[value(name = "real-index-0")]
    RealIndex0,
    #[value(name = "real-index-2")]
    RealIndex2,
    #[value(name = "real-index-4")]
    RealIndex4,
    #[value(name = "real-index-6")]
    RealIndex6,
    Sl2,
    Sl3,
}

/// What a command prints and how the process should exit.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            code: EXIT_OK,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Roots { spec } => Ok(cmd_roots(*spec)),
        Command::Verify { file, method } => cmd_verify(&load(file)?, *method),
        Command::Construct {
            spec,
            real_index,
            out,
        } => cmd_construct(*spec, *real_index, out.as_deref()),
        Command::Classify { file } => cmd_classify(&load(file)?),
        Command::Tables { which, real_index } => Ok(cmd_tables(*which, *real_index)),
        Command::Sweep {
            spec,
            check_agreement,
            real_index,
            eps,
            ratios,
            xs,
            a_values,
            cap,
            show,
        } => {
            let grid = Grid::from_values(eps, ratios, xs, a_values);
            let filter = EnumerationFilter {
                real_index: *real_index,
                agreement: None,
                cap: Some(*cap),
            };
            cmd_sweep(*spec, grid, filter, *check_agreement, *show)
        }
    }
}

pub fn load(path: &Path) -> Result<DiracStructure, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let file = StructureFile::parse(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })?;
    Ok(file.to_structure()?)
}

fn build(spec: CartanSpec) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(spec))
}

pub fn cmd_roots(spec: CartanSpec) -> Outcome {
    let rs = build(spec);
    let triples = rs.sum_triples();
    let hist = rs.height_histogram();
    let mut text = format!(
        "{spec}: {} positive roots, {} sum triples\n",
        rs.len(),
        triples.len()
    );
    for (i, r) in rs.roots().iter().enumerate() {
        let _ = writeln!(text, "  {r}  height {}", rs.height_of(i));
    }
    if !triples.is_empty() {
        text.push_str("sum triples:\n");
    }
    for t in &triples {
        let _ = writeln!(
            text,
            "  {} + {} = {}",
            rs.root(t.alpha),
            rs.root(t.beta),
            rs.root(t.sum)
        );
    }
    let d: Vec<String> = hist
        .iter()
        .enumerate()
        .map(|(i, n)| format!("d{}={n}", i + 1))
        .collect();
    let _ = writeln!(text, "heights: {}", d.join(" "));
    let json = json!({
        "algebra": spec,
        "roots": rs.roots().iter().enumerate()
            .map(|(i, r)| json!({"root": r.to_string(), "height": rs.height_of(i)}))
            .collect::<Vec<_>>(),
        "sum_triples": triples.iter()
            .map(|t| [t.alpha, t.beta, t.sum].map(|i| rs.root(i).to_string()))
            .collect::<Vec<_>>(),
        "height_histogram": hist,
    });
    Outcome::ok(text, json)
}

fn triple_name(rs: &RootSystem, v: &TripleVerdict) -> [String; 3] {
    [v.triple.alpha, v.triple.beta, v.triple.sum].map(|i| rs.root(i).to_string())
}

pub fn cmd_verify(l: &DiracStructure, method: Method) -> Result<Outcome, CliError> {
    let rs = l.root_system();
    let sc = structure_constants(rs);
    let table = table_verdicts(l, Some(&sc), DEFAULT_TOL);
    let table_ok = table.iter().all(|v| v.involutive);
    let oracle: Option<OracleVerdict> =
        (method != Method::Table).then(|| is_involutive_oracle(l, &sc, DEFAULT_TOL));
    let report = subspace_report(l);
    let ri = real_index(l);

    let mut text = format!("algebra {}\n", rs.spec());
    let mut rows = Vec::new();
    for (i, v) in table.iter().enumerate() {
        let [a, b, s] = triple_name(rs, v);
        let cases = v.cases.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let _ = writeln!(text, "{a} + {b} = {s}: ({})", cases.join(", "));
        let mut row = json!({"triple": [a, b, s], "cases": cases});
        if method != Method::Oracle {
            let _ = writeln!(
                text,
                "  table: {} [{}]",
                verdict_word(v.involutive),
                v.condition_id()
            );
            row["table"] = json!({"involutive": v.involutive, "condition": v.condition_id()});
        }
        if let Some(o) = &oracle {
            let w = &o.per_triple[i];
            let _ = writeln!(text, "  oracle: {}", verdict_word(w.is_none()));
            row["oracle"] = json!({"involutive": w.is_none(), "witness": w});
        }
        let witness = oracle
            .as_ref()
            .and_then(|o| o.per_triple[i].as_ref())
            .or(v.witness.as_ref());
        if let Some(w) = witness {
            let _ = writeln!(text, "  witness: {}", w.describe(rs));
        }
        rows.push(row);
    }
    let _ = writeln!(
        text,
        "real index {ri}, order {}, type {}",
        report.order, report.r#type
    );

    let involutive = match (method, &oracle) {
        (Method::Table, _) => table_ok,
        (_, Some(o)) if method == Method::Oracle => o.involutive,
        (_, Some(o)) => o.involutive && table_ok,
        (_, None) => unreachable!("oracle runs unless the method is table"),
    };
    let disagree =
        method == Method::Both && oracle.as_ref().is_some_and(|o| o.involutive != table_ok);
    if disagree {
        text.push_str("deciders disagree\n");
    }
    let _ = writeln!(
        text,
        "involutive: {}",
        if involutive { "yes" } else { "no" }
    );
    let code = if disagree {
        EXIT_DISAGREEMENT
    } else if involutive {
        EXIT_OK
    } else {
        EXIT_NOT_INVOLUTIVE
    };
    let json = json!({
        "algebra": rs.spec(),
        "method": format!("{method:?}").to_lowercase(),
        "involutive": involutive,
        "deciders_agree": !disagree,
        "real_index": ri,
        "order": report.order,
        "type": report.r#type,
        "triples": rows,
    });
    Ok(Outcome { text, json, code })
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "involutive"
    } else {
        "not involutive"
    }
}

pub fn cmd_construct(
    spec: CartanSpec,
    target: usize,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    if !target.is_multiple_of(2) {
        return Err(CliError::Usage(format!("real index {target} is odd")));
    }
    let rs = build(spec);
    let max = 2 * rs.len();
    let l = construct_with_real_index(rs, target / 2).map_err(|_| {
        CliError::Usage(format!("real index {target} outside 0..={max} for {spec}"))
    })?;
    let file = StructureFile::from_structure(&l);
    let body = file.to_json();
    if let Some(path) = out {
        std::fs::write(path, &body).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
    }
    let mut text = String::new();
    let rs = l.root_system();
    for (i, c) in l.cases().iter().enumerate() {
        let _ = writeln!(text, "{}  {c}", rs.root(i));
    }
    let _ = writeln!(text, "real index {}", real_index(&l));
    if let Some(path) = out {
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let json = serde_json::to_value(&file).expect("serializable");
    Ok(Outcome::ok(text, json))
}

pub fn cmd_classify(l: &DiracStructure) -> Result<Outcome, CliError> {
    let rs = l.root_system();
    let report = subspace_report(l);
    let mut text = String::new();
    let mut roots = Vec::new();
    for (i, c) in l.cases().iter().enumerate() {
        let [u, v] = c.blocks();
        let family = classify_blocks(&u, &v, DEFAULT_TOL)?;
        let nf = b_normal_form(c);
        let b = trivializing_b(c);
        let _ = writeln!(
            text,
            "{}  {c}  family ({})  normal form ({}) {}  via b = {b}",
            rs.root(i),
            family.label(),
            nf.label(),
            nf.representative()
        );
        roots.push(json!({
            "root": rs.root(i).to_string(),
            "case": CaseEntry::from_case(c),
            "family": family.label(),
            "normal_form": nf,
            "b": b,
        }));
    }
    let omega: Vec<String> = report
        .omega_delta
        .iter()
        .map(|w| w.map_or_else(|| "-".to_string(), |x| format!("{x}")))
        .collect();
    let _ = writeln!(
        text,
        "real index {}, order {}, type {}\ndim E {}, dim E∩Ē {}, dim E+Ē {}, dim K {}\nω_Δ per root: {}",
        report.real_index,
        report.order,
        report.r#type,
        report.dim_e,
        report.dim_e_cap_ebar,
        report.dim_e_plus_ebar,
        report.dim_k,
        omega.join(" ")
    );
    let json = json!({"algebra": rs.spec(), "roots": roots, "report": report});
    Ok(Outcome::ok(text, json))
}

fn generated_json(t: &tables::GeneratedTable, only: Option<usize>) -> Value {
    let m: BTreeMap<String, Vec<String>> = t
        .iter()
        .filter(|(k, _)| only.is_none_or(|o| o == **k))
        .map(|(k, rows)| (k.to_string(), rows.iter().map(|r| r.to_string()).collect()))
        .collect();
    json!(m)
}

pub fn cmd_tables(which: Which, only: Option<usize>) -> Outcome {
    match which {
        Which::Integrability => Outcome::ok(
            tables::render_integrability(),
            json!({
                "rows": tables::INTEGRABILITY,
                "signs": tables::INTEGRABILITY_SIGNS,
                "extra": tables::INTEGRABILITY_EXTRA,
            }),
        ),
        Which::Involutivity => Outcome::ok(
            tables::render_involutivity(),
            json!(tables::INVOLUTIVITY
                .iter()
                .map(|r| json!({"alpha": r[0], "beta": r[1], "sum": r[2], "condition": r[3]}))
                .collect::<Vec<_>>()),
        ),
        Which::RealIndex0 | Which::RealIndex2 | Which::RealIndex4 | Which::RealIndex6 => {
            let k = match which {
                Which::RealIndex0 => 0,
                Which::RealIndex2 => 2,
                Which::RealIndex4 => 4,
                _ => 6,
            };
            Outcome::ok(
                tables::render_real_index(k),
                json!(tables::real_index_rows(k)),
            )
        }
        Which::Sl2 => {
            let t = tables::sl2_table();
            Outcome::ok(
                tables::render_generated("sl2", &t, only),
                generated_json(&t, only),
            )
        }
        Which::Sl3 => {
            let t = tables::sl3_table();
            Outcome::ok(
                tables::render_generated("sl3", &t, only),
                generated_json(&t, only),
            )
        }
    }
}

pub fn cmd_sweep(
    spec: CartanSpec,
    grid: Grid,
    filter: EnumerationFilter,
    check_agreement: bool,
    show: usize,
) -> Result<Outcome, CliError> {
    let rs = build(spec);
    let options = grid.options().len();
    let en = enumerate_assignments(Arc::clone(&rs), grid, filter)?;
    let items = en.collect_parallel();

    // real index -> (assignments, involutive by both deciders)
    let mut counts: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut disagreements = Vec::new();
    for e in &items {
        let c = counts.entry(e.real_index).or_default();
        c.0 += 1;
        if e.oracle.involutive && e.table_involutive() {
            c.1 += 1;
        }
        if !e.agree() {
            disagreements.push(e);
        }
    }
    let n = items.len();
    let agreeing = n - disagreements.len();
    let rate = if n == 0 {
        100.0
    } else {
        100.0 * agreeing as f64 / n as f64
    };

    let mut text = format!(
        "{spec}: {} sum triples, {options} options per root, {} assignments in grid\n",
        rs.sum_triples().len(),
        en.total()
    );
    for (k, (total, inv)) in &counts {
        let _ = writeln!(
            text,
            "real index {k}: {total} assignments, {inv} involutive"
        );
    }
    let _ = writeln!(text, "agreement: {agreeing}/{n} ({rate:.2}%)");
    let shown: Vec<Value> = disagreements
        .iter()
        .take(show)
        .map(|e| {
            let cases: Vec<String> = e.structure.cases().iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                text,
                "  disagreement: ({}) oracle {} table {}",
                cases.join(", "),
                e.oracle.involutive,
                e.table_involutive()
            );
            json!({
                "index": e.index.to_string(),
                "structure": StructureFile::from_structure(&e.structure),
                "oracle": e.oracle.involutive,
                "table": e.table_involutive(),
            })
        })
        .collect();
    let json = json!({
        "algebra": spec,
        "grid_options": options,
        "grid_total": en.total().to_string(),
        "evaluated": n,
        "by_real_index": counts.iter()
            .map(|(k, (t, i))| json!({"real_index": k, "assignments": t, "involutive": i}))
            .collect::<Vec<_>>(),
        "agreeing": agreeing,
        "disagreements": shown,
    });
    let code = if check_agreement && !disagreements.is_empty() {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    };
    Ok(Outcome { text, json, code })
}
