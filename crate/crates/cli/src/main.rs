mod report;

use std::fs;
use std::io::BufWriter;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphpoly_core::bis_reduction::{count_is, BisParams, BipartiteVcOracle, BruteBipartiteOracle, ConditionedOracle};
use graphpoly_core::csp::{classify, count_affine, count_bruteforce, Classification, CspJson, BRUTEFORCE_VARIABLES};
use graphpoly_core::forest::{forest_poly_bruteforce, tutte_y1};
use graphpoly_core::graph::{
    add_apex, fatten, named_graph, parse_graph, partition_edges, stretch, substitute_gadget, write_graph,
    ApexLabels, NAMED_GRAPHS,
};
use graphpoly_core::oracles::{forests_bruteforce, is_bruteforce, pm_bruteforce, vc_bruteforce, OracleBudget};
use graphpoly_core::pm_reduction::{
    count_pm, BruteForceOracle, ForestOracle, FrontierOracle, PmReductionParams, SeriesParallelOracle,
};
use graphpoly_core::rational::{fmt_rational, parse_rational};
use graphpoly_core::transcript::OracleTranscript;
use graphpoly_core::verify::{run_suite, Suite};
use graphpoly_core::{Error, Multigraph, WeightAssignment};

use report::{RunReport, Verdict};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "graphpoly", version, about = "Exact forest/Tutte evaluation and counting reductions")]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GraphArg {
    /// Graph file or built-in name: k2, k3, k4, c4, p3, p4, k33, petersen.
    #[arg(value_name = "GRAPH")]
    positional: Option<String>,
    /// Same as the positional argument.
    #[arg(long = "graph", value_name = "GRAPH", conflicts_with = "positional")]
    flag: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forest polynomial by enumeration.
    ForestPoly {
        #[command(flatten)]
        graph: GraphArg,
        /// Use one variable with this name on every edge.
        #[arg(long, default_value = "x", conflicts_with = "labels")]
        var: String,
        /// Use the edge labels from the graph file as variables instead.
        #[arg(long)]
        labels: bool,
    },
    /// Tutte polynomial on the line y = 1.
    Tutte {
        #[command(flatten)]
        graph: GraphArg,
        /// Evaluation point, an exact rational other than 1.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Graph transformations; the result is written in the text graph format.
    Transform {
        #[command(subcommand)]
        kind: TransformKind,
    },
    /// Run a counting reduction and compare with brute force.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Boolean constraint tools.
    Csp {
        #[command(subcommand)]
        kind: CspKind,
    },
    /// Brute-force ground-truth counts.
    Oracle {
        /// What to count.
        kind: OracleKind,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Run a property suite.
    Verify {
        /// apex, stretch, gadget, eq6, kron, csp or all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum TransformKind {
    /// Join a new vertex to every vertex.
    Apex {
        #[command(flatten)]
        graph: GraphArg,
        /// Label apex edges z_v instead of a single z.
        #[arg(long)]
        per_vertex: bool,
    },
    /// Replace every edge copy by a path of k edges.
    Stretch {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: u32,
    },
    /// Give every edge record a new multiplicity.
    Fatten {
        #[command(flatten)]
        graph: GraphArg,
        /// Multiplicity per edge, comma separated.
        #[arg(long, value_delimiter = ',')]
        mults: Vec<u32>,
    },
    /// Replace every edge by parallel 4-paths, blockwise.
    Gadget {
        #[command(flatten)]
        graph: GraphArg,
        /// Edges per block.
        #[arg(long)]
        d: usize,
        /// Gadget size per block, comma separated.
        #[arg(long, value_delimiter = ',')]
        ell: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ForestOracleKind {
    Sp,
    Frontier,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VcOracleKind {
    Brute,
    Conditioned,
}

#[derive(Subcommand, Debug)]
enum ReduceKind {
    /// Perfect matchings through a forest oracle on simple graphs.
    Pm {
        #[command(flatten)]
        graph: GraphArg,
        /// Edges per interpolation class.
        #[arg(long = "C", alias = "c", default_value_t = 2)]
        block_size: usize,
        /// Tutte point the simple-graph oracle answers at.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        x: String,
        /// Stretch length, odd.
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, value_enum, default_value = "sp")]
        oracle: ForestOracleKind,
        /// Write every oracle query as JSON lines.
        #[arg(long)]
        transcript: Option<String>,
    },
    /// Independent sets through a bipartite vertex-cover oracle.
    Bis {
        #[command(flatten)]
        graph: GraphArg,
        /// Edges per block.
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_enum, default_value = "conditioned")]
        oracle: VcOracleKind,
        /// Write every oracle query as JSON lines.
        #[arg(long)]
        transcript: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CspKind {
    /// Report whether every relation is affine.
    Classify {
        #[arg(long)]
        input: String,
    },
    /// Count satisfying assignments.
    Count {
        #[arg(long)]
        input: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Pm,
    Is,
    Vc,
    Forests,
}

fn load_graph(arg: &GraphArg) -> Result<(String, Multigraph), Error> {
    let name = arg
        .flag
        .as_ref()
        .or(arg.positional.as_ref())
        .ok_or_else(|| Error::InvalidArgument("no graph given".into()))?;
    if Path::new(name).is_file() {
        return Ok((name.clone(), parse_graph(&fs::read_to_string(name)?)?));
    }
    named_graph(name).map(|g| (name.clone(), g)).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "`{name}` is neither a file nor a built-in graph ({})",
            NAMED_GRAPHS.join(", ")
        ))
    })
}

fn write_transcript(t: &OracleTranscript, path: &str) -> Result<(), Error> {
    t.write_jsonl(BufWriter::new(fs::File::create(path)?))
}

fn compare(report: &mut RunReport, answer: &str, brute: Result<String, Error>) -> Result<(), Error> {
    match brute {
        Ok(b) => {
            report.answer("brute force", &b);
            report.verdict = Some(if b == answer { Verdict::Agree } else { Verdict::Disagree });
        }
        Err(e) if e.is_budget() => {
            report.note(format!("brute-force check skipped: {e}"));
            report.verdict = Some(Verdict::Unchecked);
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<RunReport, Error> {
    let budget = OracleBudget::default();
    match &cli.command {
        Command::ForestPoly { graph, var, labels } => {
            let (name, g) = load_graph(graph)?;
            let mut report = RunReport::start("forest-poly");
            report.param("graph", name);
            let w = if *labels {
                WeightAssignment::from_labels(&g)
            } else {
                report.param("variable", var);
                WeightAssignment::uniform_symbol(&g, var)
            };
            let r = forest_poly_bruteforce(&g, &w)?;
            report.answer("polynomial", &r.poly);
            if let Ok(coeffs) = r.poly.univariate_coeffs() {
                let c: Vec<String> = coeffs.iter().map(fmt_rational).collect();
                report.answer("coefficients", format!("[{}]", c.join(", ")));
            }
            report.answer("forests", &r.forest_count);
            Ok(report)
        }
        Command::Tutte { graph, x } => {
            let (name, g) = load_graph(graph)?;
            let x = parse_rational(x)?;
            let mut report = RunReport::start("tutte");
            report.param("graph", name).param("x", fmt_rational(&x)).param("y", 1);
            report.answer("T(G; x, 1)", fmt_rational(&tutte_y1(&g, &x)?));
            Ok(report)
        }
        Command::Transform { kind } => transform(kind),
        Command::Reduce { kind } => reduce(kind, &budget),
        Command::Csp { kind } => csp(kind),
        Command::Oracle { kind, graph } => {
            let (name, g) = load_graph(graph)?;
            let mut report = RunReport::start(format!("oracle {}", format!("{kind:?}").to_lowercase()));
            report.param("graph", name);
            let count = match kind {
                OracleKind::Pm => pm_bruteforce(&g, &budget)?,
                OracleKind::Is => is_bruteforce(&g, &budget)?,
                OracleKind::Vc => vc_bruteforce(&g, &budget)?,
                OracleKind::Forests => forests_bruteforce(&g, &budget)?,
            };
            report.answer("count", count);
            Ok(report)
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let mut report = RunReport::start(format!("verify {suite}"));
            report.param("seed", seed);
            let mut all_pass = true;
            for r in run_suite(suite, *seed)? {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                report.answer(r.suite.name(), format!("{status} ({} checks)", r.checks));
                for c in r.failures.iter().take(5) {
                    report.note(format!(
                        "{}: {} | expected {} got {} | instance: {}",
                        r.suite, c.check, c.expected, c.got, c.instance
                    ));
                }
                all_pass &= r.passed();
            }
            report.verdict = Some(if all_pass { Verdict::Pass } else { Verdict::Fail });
            Ok(report)
        }
    }
}

fn transform(kind: &TransformKind) -> Result<RunReport, Error> {
    let (label, graph) = match kind {
        TransformKind::Apex { graph, .. } => ("apex", graph),
        TransformKind::Stretch { graph, .. } => ("stretch", graph),
        TransformKind::Fatten { graph, .. } => ("fatten", graph),
        TransformKind::Gadget { graph, .. } => ("gadget", graph),
    };
    let (name, g) = load_graph(graph)?;
    let mut report = RunReport::start(format!("transform {label}"));
    report.param("graph", name);
    let out = match kind {
        TransformKind::Apex { per_vertex, .. } => {
            let labels = if *per_vertex { ApexLabels::PerVertex } else { ApexLabels::Uniform };
            add_apex(&g, labels)?.0
        }
        TransformKind::Stretch { k, .. } => {
            report.param("k", k);
            stretch(&g, *k)?
        }
        TransformKind::Fatten { mults, .. } => {
            report.param("mults", format!("{mults:?}"));
            fatten(&g, mults)?
        }
        TransformKind::Gadget { d, ell, .. } => {
            report.param("d", d).param("ell", format!("{ell:?}"));
            substitute_gadget(&g, &partition_edges(&g, *d)?, ell)?
        }
    };
    report.answer("vertices", out.vertex_count());
    report.answer("edges", out.total_edge_count());
    report.answer("graph", write_graph(&out).trim_end().replace('\n', "; "));
    Ok(report)
}

fn reduce(kind: &ReduceKind, budget: &OracleBudget) -> Result<RunReport, Error> {
    match kind {
        ReduceKind::Pm {
            graph,
            block_size,
            x,
            k,
            oracle,
            transcript,
        } => {
            let (name, g) = load_graph(graph)?;
            let x = parse_rational(x)?;
            let params = PmReductionParams::new(*block_size, x, *k)?;
            let sp = SeriesParallelOracle::default();
            let frontier = FrontierOracle::default();
            let brute = BruteForceOracle::default();
            let simple: &dyn ForestOracle = match oracle {
                ForestOracleKind::Sp => &sp,
                ForestOracleKind::Frontier => &frontier,
                ForestOracleKind::Brute => &brute,
            };
            let mut report = RunReport::start("reduce pm");
            report
                .param("graph", name)
                .param("C", params.block_size)
                .param("x", fmt_rational(&params.x))
                .param("k", params.k)
                .param("t", fmt_rational(&params.t))
                .param("z0", fmt_rational(&params.z0))
                .param("oracle", simple.name());
            let r = count_pm(&g, &params, simple)?;
            if r.odd_vertex_count {
                report.note("odd vertex count: there are no perfect matchings");
            }
            let answer = r.count.to_string();
            report.answer("perfect matchings", &answer);
            report.queries = Some(r.transcript.len() as u64);
            if let Some(path) = transcript {
                write_transcript(&r.transcript, path)?;
                report.transcript = Some(path.clone());
            }
            compare(&mut report, &answer, pm_bruteforce(&g, budget).map(|c| c.to_string()))?;
            Ok(report)
        }
        ReduceKind::Bis {
            graph,
            d,
            oracle,
            transcript,
        } => {
            let (name, g) = load_graph(graph)?;
            let params = BisParams::new(*d)?;
            let brute = BruteBipartiteOracle::default();
            let vc: &dyn BipartiteVcOracle = match oracle {
                VcOracleKind::Brute => &brute,
                VcOracleKind::Conditioned => &ConditionedOracle,
            };
            let mut report = RunReport::start("reduce bis");
            report.param("graph", name).param("d", d).param("oracle", vc.name());
            let r = count_is(&g, &params, vc)?;
            let answer = r.count.to_string();
            report.answer("independent sets", &answer);
            report.answer("blocks", r.partition.block_count());
            report.queries = Some(r.queries);
            if let Some(path) = transcript {
                write_transcript(&r.transcript, path)?;
                report.transcript = Some(path.clone());
            }
            compare(&mut report, &answer, is_bruteforce(&g, budget).map(|c| c.to_string()))?;
            Ok(report)
        }
    }
}

fn csp(kind: &CspKind) -> Result<RunReport, Error> {
    match kind {
        CspKind::Classify { input } => {
            let file = CspJson::parse(&fs::read_to_string(input)?)?;
            let mut report = RunReport::start("csp classify");
            report.param("input", input);
            match classify(&file.relations()?) {
                Classification::AllAffine => {
                    report.answer("class", "all affine");
                }
                Classification::ContainsNonAffine {
                    witness,
                    relation,
                    size_constant,
                } => {
                    report
                        .answer("class", "contains non-affine")
                        .answer("witness", format!("relation {witness} {:?}", relation.to_bitstrings()))
                        .answer("size constant (arity proxy)", size_constant);
                }
            }
            Ok(report)
        }
        CspKind::Count { input } => {
            let inst = CspJson::parse(&fs::read_to_string(input)?)?.instance()?;
            let mut report = RunReport::start("csp count");
            report.param("input", input).param("variables", inst.n);
            let affine = classify(&inst.relations) == Classification::AllAffine;
            let brute = count_bruteforce(&inst);
            if affine {
                let count = count_affine(&inst)?.to_string();
                report.param("method", "gaussian elimination");
                report.answer("models", &count);
                compare(&mut report, &count, brute.map(|c| c.to_string()))?;
            } else {
                if inst.n > BRUTEFORCE_VARIABLES {
                    report.note("non-affine relations present; only enumeration is available");
                }
                report.param("method", "enumeration");
                report.answer("models", brute?);
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(mut report) => {
            report.finish();
            print!("{}", report.render(cli.json));
            if cli.json {
                println!();
            }
            if report.failed() {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_budget() {
                EXIT_BUDGET
            } else if matches!(e, Error::Inconsistent(_)) {
                EXIT_VERIFY
            } else {
                EXIT_USAGE
            };
            ExitCode::from(code)
        }
    }
}
