//! Command-line front end: verify conditions, certify ranks, compute
//! extremal statistics, and expand forms, over graphs given as JSON
//! files or bundled constructions (`builtin:g53`, `builtin:g55`,
//! `builtin:g64`, `builtin:q55`).
//!
//! Exit codes: 0 on success (all conditions pass, certificate valid,
//! search completed), 1 on a semantic failure (a condition or
//! certificate that does not hold), 2 on usage, parse, or guard errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use zarank::builtin::BuiltinId;
use zarank::certificate::{certify_sos_rank, verify_q55};
use zarank::conditions::{
    is_generalized_cycle_free, CheckConfig, ConditionReport, OppositeScope, Subject, Violation,
};
use zarank::form::{build_form, expand, BiquadraticForm, SosDecomposition};
use zarank::graph::{AugmentedGraph, Cell};
use zarank::report::{Report, ReportKind};
use zarank::search::{compute, SearchConfig, Statistic};

#[derive(Parser)]
#[command(
    name = "zarank",
    version,
    about = "Search engine and certificate checker for augmented Zarankiewicz numbers \
             and sum-of-squares ranks of triply simple biquadratic forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the full JSON report envelope instead of readable text.
    #[arg(long, global = true)]
    json: bool,
    /// RNG seed to record in the report envelope.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Stop searching after this many nodes and report partial results.
    #[arg(long = "budget-nodes", global = true, value_name = "NODES")]
    budget_nodes: Option<u64>,
    /// Stop searching after this many seconds and report partial results.
    #[arg(long = "budget-seconds", global = true, value_name = "SECONDS")]
    budget_seconds: Option<f64>,
    /// Which cells count toward a 2-edge's opposite-cell restriction.
    #[arg(long = "opposite-scope", global = true, value_enum, default_value_t)]
    opposite_scope: ScopeArg,
    /// Disable row-permutation pruning in the 1-edge search layer.
    #[arg(long = "no-symmetry", global = true)]
    no_symmetry: bool,
    /// Admit row- and column-degenerate 2-edges as search candidates.
    #[arg(long = "degenerate-2edges", global = true)]
    degenerate_2edges: bool,
    /// Worker threads for searches over extremal 1-edge classes
    /// (capped by the ZRK_THREADS environment variable).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Maximum number of witnesses to report.
    #[arg(long = "max-witnesses", global = true, default_value_t = 8)]
    max_witnesses: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the generalized cycle-free conditions of a graph.
    Verify {
        /// Graph JSON file, or builtin:{g53,g55,g64,q55}.
        input: String,
    },
    /// Produce a sum-of-squares rank certificate for a graph.
    Certify {
        /// Graph JSON file, or builtin:{g53,g55,g64,q55}; the q55
        /// builtin yields its dedicated fifteen-square report.
        input: String,
    },
    /// Compute an extremal statistic with witnesses.
    Compute {
        #[arg(value_enum)]
        statistic: StatisticArg,
        m: u8,
        n: u8,
    },
    /// Expand a graph (or a decomposition file) into its biquadratic form.
    Expand {
        /// Graph or decomposition JSON file, or builtin:{g53,g55,g64,q55}.
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ScopeArg {
    /// Only 1-edges and halves of 2-edges count (the literal reading).
    #[default]
    OneAndTwoEdges,
    /// Any occupied cell counts, 3-edge halves included.
    AnyEdge,
}

impl From<ScopeArg> for OppositeScope {
    fn from(s: ScopeArg) -> OppositeScope {
        match s {
            ScopeArg::OneAndTwoEdges => OppositeScope::OneAndTwoEdges,
            ScopeArg::AnyEdge => OppositeScope::AnyEdge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatisticArg {
    Z,
    Zl,
    Z3l,
    Z3a,
}

impl From<StatisticArg> for Statistic {
    fn from(s: StatisticArg) -> Statistic {
        match s {
            StatisticArg::Z => Statistic::Z,
            StatisticArg::Zl => Statistic::Zl,
            StatisticArg::Z3l => Statistic::Z3l,
            StatisticArg::Z3a => Statistic::Z3a,
        }
    }
}

/// A usage-level failure: bad input, unreadable file, malformed JSON,
/// or a guard violation. Always maps to exit code 2.
struct UsageError(String);

impl Cli {
    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            opposite_scope: self.opposite_scope.into(),
            allow_degenerate_2edges: self.degenerate_2edges,
            symmetry_reduction: !self.no_symmetry,
            node_budget: self.budget_nodes,
            time_budget: self.budget_seconds.map(Duration::from_secs_f64),
            threads: self.threads,
            max_witnesses: self.max_witnesses,
            extra_condition: None,
        }
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            opposite_scope: self.opposite_scope.into(),
        }
    }
}

/// What `expand` was given: a graph (builtin or file) or a bare
/// decomposition file.
enum ExpandInput {
    Graph(AugmentedGraph, Option<BuiltinId>),
    Decomposition(SosDecomposition),
}

fn load_builtin(name: &str) -> Result<(AugmentedGraph, Option<BuiltinId>), UsageError> {
    let id: BuiltinId = name.parse().map_err(|e| UsageError(format!("{e}")))?;
    Ok((id.graph(), Some(id)))
}

fn read_input_file(path: &str) -> Result<String, UsageError> {
    std::fs::read_to_string(PathBuf::from(path))
        .map_err(|e| UsageError(format!("cannot read {path}: {e}")))
}

fn load_graph(input: &str) -> Result<(AugmentedGraph, Option<BuiltinId>), UsageError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return load_builtin(name);
    }
    let text = read_input_file(input)?;
    let graph: AugmentedGraph = serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("cannot parse graph {input}: {e}")))?;
    Ok((graph, None))
}

fn load_expand_input(input: &str) -> Result<ExpandInput, UsageError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let (g, id) = load_builtin(name)?;
        return Ok(ExpandInput::Graph(g, id));
    }
    let text = read_input_file(input)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("cannot parse {input}: {e}")))?;
    if value.is_array() {
        let d: SosDecomposition = serde_json::from_value(value)
            .map_err(|e| UsageError(format!("cannot parse decomposition {input}: {e}")))?;
        Ok(ExpandInput::Decomposition(d))
    } else {
        let g: AugmentedGraph = serde_json::from_value(value)
            .map_err(|e| UsageError(format!("cannot parse graph {input}: {e}")))?;
        Ok(ExpandInput::Graph(g, None))
    }
}

fn cells_line(cells: &[Cell]) -> String {
    cells
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn subject_line(subject: &Option<Subject>) -> String {
    match subject {
        None => String::new(),
        Some(Subject::TwoEdge { edge }) => {
            let [a, b] = edge.halves();
            format!(" on 2-edge {a}+{b}")
        }
        Some(Subject::ThreeEdge { edge }) => {
            let [a, b, c] = edge.cells();
            format!(" on 3-edge {a}+{b}+{c}")
        }
    }
}

fn violation_line(v: &Violation) -> String {
    match v {
        Violation::FourCycle { rows, cols } => format!(
            "rows {} and {} share columns {} and {}",
            rows[0], rows[1], cols[0], cols[1]
        ),
        Violation::OppositeCellsOccupied {
            opposite, occupied, ..
        } => format!(
            "opposite cells {} and {} have {} occupied: {}",
            opposite[0],
            opposite[1],
            occupied.len(),
            cells_line(occupied)
        ),
        Violation::OppositeCellsCoEdged {
            opposite,
            three_edge,
            ..
        } => {
            let [a, b, c] = three_edge.cells();
            format!(
                "opposite cells {} and {} are both halves of 3-edge {a}+{b}+{c}",
                opposite[0], opposite[1]
            )
        }
        Violation::SaturatedThreeEdge { occupied, .. } => format!(
            "all six cells of the spanned pattern are occupied: {}",
            cells_line(occupied)
        ),
        Violation::ExtensionCell { cell, .. } => format!(
            "pattern is saturated and occupied cell {cell} lies outside the spanned rows and columns"
        ),
        Violation::DuplicateCell { cell, uses } => {
            format!("cell {cell} is used by {uses} edges")
        }
    }
}

fn builtin_header(id: Option<BuiltinId>) -> String {
    let Some(id) = id else {
        return String::new();
    };
    let mut out = String::new();
    if let Some(labels) = id.row_labels() {
        let mapping = labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{}={}", i + 1, l))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "rows doubling as K4 edge labels: {mapping}");
    }
    out
}

fn graph_summary(g: &AugmentedGraph) -> String {
    format!(
        "{}x{} grid, {} 1-edges, {} 2-edges, {} 3-edges",
        g.m(),
        g.n(),
        g.e1().len(),
        g.e2().len(),
        g.e3().len()
    )
}

fn emit(report: &Report, json: bool, human: &str) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{human}");
    }
}

fn cmd_verify(cli: &Cli, input: &str) -> Result<u8, UsageError> {
    let (graph, builtin) = load_graph(input)?;
    let reports = is_generalized_cycle_free(&graph, &cli.check_config());
    let failed: Vec<&ConditionReport> = reports.iter().filter(|r| !r.passed).collect();
    let passed = failed.is_empty();

    let claims = if passed {
        vec![format!(
            "{input} satisfies all generalized cycle-free conditions"
        )]
    } else {
        vec![]
    };
    let report = Report::new(ReportKind::Verify, &reports, claims).with_seed(cli.seed);

    let mut human = String::new();
    let _ = writeln!(human, "graph {input}: {}", graph_summary(&graph));
    human.push_str(&builtin_header(builtin));
    for r in &reports {
        let status = if r.passed { "pass" } else { "FAIL" };
        let vacuous = if r.vacuous { " (vacuously)" } else { "" };
        let _ = writeln!(
            human,
            "{status}  {}{}{}",
            r.condition.name(),
            subject_line(&r.subject),
            vacuous
        );
        if let Some(v) = &r.witness {
            let _ = writeln!(human, "      {}", violation_line(v));
        }
    }
    let _ = writeln!(
        human,
        "result: {} ({} of {} checks failed)",
        if passed { "PASS" } else { "FAIL" },
        failed.len(),
        reports.len()
    );

    emit(&report, cli.json, &human);
    Ok(if passed { 0 } else { 1 })
}

fn cmd_certify(cli: &Cli, input: &str) -> Result<u8, UsageError> {
    let (graph, builtin) = load_graph(input)?;
    if builtin == Some(BuiltinId::Q55) {
        let q = verify_q55();
        let claims = if q.valid {
            vec![
                "the bundled 5x5 form has a 15-square decomposition of independent rank 15"
                    .to_string(),
                "its 1-edge and 2-edge vectors span a 14-dimensional subspace".to_string(),
            ]
        } else {
            vec![]
        };
        let report = Report::new(ReportKind::Certify, &q, claims).with_seed(cli.seed);
        let mut human = String::new();
        let _ = writeln!(human, "fifteen-square form over the 5x5 grid:");
        let _ = writeln!(human, "  squares: {}", q.square_count);
        let _ = writeln!(
            human,
            "  expansion equality: {}",
            if q.expansion_equal { "exact" } else { "BROKEN" }
        );
        let _ = writeln!(human, "  independent rank: {}", q.independent_rank);
        let _ = writeln!(human, "  base subspace dimension: {}", q.base_rank);
        let _ = writeln!(
            human,
            "  with the shared 3-edge vector stacked: {} ({})",
            q.stacked_rank,
            if q.extra_vector_outside_base {
                "outside the base span"
            } else {
                "inside the base span"
            }
        );
        let _ = writeln!(
            human,
            "  3-edge halves share one vector: {}",
            if q.forced_equalities { "yes" } else { "NO" }
        );
        let _ = writeln!(
            human,
            "report: {}",
            if q.valid { "VALID" } else { "INVALID" }
        );
        emit(&report, cli.json, &human);
        return Ok(if q.valid { 0 } else { 1 });
    }

    let cert = certify_sos_rank(&graph, &cli.check_config());
    let claims = match cert.claimed_rank {
        Some(rank) => vec![format!("sum-of-squares rank of {input} is {rank}")],
        None => vec![],
    };
    let report = Report::new(ReportKind::Certify, &cert, claims).with_seed(cli.seed);

    let failed: Vec<String> = cert
        .condition_reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{}{}", r.condition.name(), subject_line(&r.subject)))
        .collect();
    let mut human = String::new();
    let _ = writeln!(human, "graph {input}: {}", graph_summary(&graph));
    human.push_str(&builtin_header(builtin));
    if failed.is_empty() {
        let _ = writeln!(
            human,
            "conditions: all {} passed",
            cert.condition_reports.len()
        );
    } else {
        let _ = writeln!(human, "conditions: {} FAILED:", failed.len());
        for f in &failed {
            let _ = writeln!(human, "  {f}");
        }
    }
    match cert.decomposition_rank {
        Some(rank) => {
            let _ = writeln!(
                human,
                "decomposition rank: {rank} (edge count {})",
                cert.edge_count
            );
        }
        None => {
            let _ = writeln!(human, "decomposition rank: not computable");
        }
    }
    let _ = writeln!(
        human,
        "expansion: {}",
        if cert.expansion_verified {
            "verified exactly"
        } else {
            "NOT verified"
        }
    );
    match cert.claimed_rank {
        Some(rank) => {
            let _ = writeln!(human, "certificate: VALID, sum-of-squares rank = {rank}");
        }
        None => {
            let _ = writeln!(human, "certificate: INVALID (no rank claim)");
        }
    }
    let _ = writeln!(human, "graph hash: sha256:{}", cert.graph_hash);

    emit(&report, cli.json, &human);
    Ok(if cert.valid { 0 } else { 1 })
}

fn cmd_compute(cli: &Cli, statistic: Statistic, m: u8, n: u8) -> Result<u8, UsageError> {
    let cfg = cli.search_config();
    let result = compute(statistic, m, n, &cfg).map_err(|e| UsageError(e.to_string()))?;

    let claims = if result.exhaustive {
        vec![format!("{statistic}({m},{n}) = {}", result.value)]
    } else {
        vec![format!(
            "{statistic}({m},{n}) >= {} (budget exhausted before completion)",
            result.value
        )]
    };
    let report = Report::new(ReportKind::Search, &result, claims).with_seed(cli.seed);

    let mut human = String::new();
    let _ = writeln!(
        human,
        "{statistic}({m},{n}) = {}{}",
        result.value,
        if result.exhaustive {
            " (exhaustive)"
        } else {
            " (lower bound; budget exhausted)"
        }
    );
    let _ = writeln!(human, "nodes explored: {}", result.nodes_explored);
    if !result.flags.is_empty() {
        let _ = writeln!(human, "flags: {}", result.flags.join(", "));
    }
    for note in &result.config.notes {
        let _ = writeln!(human, "note: {note}");
    }
    let _ = writeln!(human, "witnesses: {}", result.witnesses.len());
    for (i, w) in result.witnesses.iter().enumerate() {
        let _ = writeln!(
            human,
            "  {}. {}",
            i + 1,
            zarank::graph::to_canonical_json(w)
        );
    }

    emit(&report, cli.json, &human);
    Ok(0)
}

fn cmd_expand(cli: &Cli, input: &str) -> Result<u8, UsageError> {
    let (form, builtin): (BiquadraticForm, Option<BuiltinId>) = match load_expand_input(input)? {
        ExpandInput::Graph(graph, builtin) => {
            let form = build_form(&graph)
                .map_err(|e| UsageError(format!("cannot expand {input}: {e}")))?;
            (form, builtin)
        }
        ExpandInput::Decomposition(d) => (expand(&d), None),
    };

    let report = Report::new(ReportKind::Expand, &form, vec![]).with_seed(cli.seed);
    let mut human = String::new();
    human.push_str(&builtin_header(builtin));
    let _ = writeln!(human, "{}", form.render_text());

    emit(&report, cli.json, &human);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { input } => cmd_verify(&cli, input),
        Command::Certify { input } => cmd_certify(&cli, input),
        Command::Compute { statistic, m, n } => cmd_compute(&cli, (*statistic).into(), *m, *n),
        Command::Expand { input } => cmd_expand(&cli, input),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
