use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use llcurve::bundle::{
    automorphism_dim, canonical_form, line_equivalent, packet_dim, sl2_equivalent, tuples_equivalent,
};
use llcurve::curve::curve_report;
use llcurve::graph::counting::counting_report;
use llcurve::graph::enumerate::enumerate_graphs;
use llcurve::graph::flip::{flip, reduce_genus, Flag};
use llcurve::graph::{to_dot, GraphFile, TrivalentGraph};
use llcurve::io::{
    bundle_from_json, canonical_form_to_json, incidence_to_dot, load_graph, matrix_to_json, nest_to_dot,
    read_json, rep_from_json, rep_to_json, scalar_to_json, to_pretty, write_text, AnyGluing,
};
use llcurve::reps::{
    evaluate, forgetful, on_schottky_locus, schottky_section, schottky_unique, verify_relation,
};
use llcurve::suite::{run_suite, SuiteConfig};
use llcurve::surface::{circle_words, SurfaceWord};
use llcurve::Error;

#[derive(Parser)]
#[command(name = "llcurve", version, about = "Trivalent graphs, nodal curves, bundles and flat SL(2) connections")]
struct Cli {
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Graph,
    Nest,
    Incidence,
    Words,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate trivalent graph classes of a genus into a directory.
    Graphs {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Canonical and bicanonical data of the graph's curve.
    CurveInfo {
        #[arg(long)]
        graph: PathBuf,
        /// Smooth the node at this edge first.
        #[arg(long)]
        merged: Option<usize>,
    },
    /// The nest of a flagged graph.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Delete an edge and smooth its endpoints.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
    },
    /// Flag, loop and nest counts for a genus.
    Counts {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Gauge-quotient operations on edge gluings.
    Bundle {
        #[arg(value_enum)]
        action: BundleAction,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        bundle2: Option<PathBuf>,
    },
    /// Check or evaluate a surface group representation.
    Rep {
        #[arg(value_enum)]
        action: RepAction,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
    /// The Schottky section of a rank-2 bundle.
    Schottky {
        #[arg(value_enum)]
        action: SchottkyAction,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Run every property check up to a genus.
    Verify {
        #[arg(long)]
        genus_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        gauge_samples: Option<usize>,
        #[arg(long)]
        packet_samples: Option<usize>,
        #[arg(long)]
        schottky_samples: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT (or circle-word JSON) export.
    Export {
        #[arg(long, value_enum)]
        kind: ExportKind,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        edge: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BundleAction {
    Canon,
    Equiv,
    Packet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepAction {
    Verify,
    Eval,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchottkyAction {
    Section,
    Verify,
    Roundtrip,
}

enum Failure {
    Core(Error),
    Usage(String),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::Io { .. }) => 4,
            Failure::Core(_) | Failure::Usage(_) => 2,
            Failure::Property(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Property(s) => write!(f, "property failure: {s}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LLCURVE_LOG", "warn")).init();
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        log::warn!("thread pool: {e}");
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => write_text(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_bundle(g: &TrivalentGraph, path: &Path) -> Result<AnyGluing, Error> {
    bundle_from_json(g, &read_json::<Value>(path)?)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{flag} is required here")))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Graphs { genus, out, format } => cmd_graphs(genus, &out, format),
        Command::CurveInfo { graph, merged } => {
            let g = load_graph(&graph)?;
            emit(&to_pretty(&curve_report(&g, merged)?), None)
        }
        Command::Flip { graph, edge, format } => {
            let f = Flag::new(load_graph(&graph)?, edge)?;
            let nest = flip(&f);
            match format {
                Format::Dot => emit(&nest_to_dot(&nest), None),
                Format::Json => {
                    let members: Vec<Value> = nest
                        .flags
                        .iter()
                        .map(|m| json!({"graph": GraphFile::from_graph(&m.graph), "edge": m.edge, "loop": m.is_loop()}))
                        .collect();
                    emit(&to_pretty(&json!({"loop_flag": f.is_loop(), "nest": members})), None)
                }
            }
        }
        Command::Reduce { graph, edge } => {
            let f = Flag::new(load_graph(&graph)?, edge)?;
            let r = reduce_genus(&f)?;
            let (a, b) = r.marked;
            emit(&to_pretty(&json!({"graph": GraphFile::from_graph(&r.graph), "marked": [a, b]})), None)
        }
        Command::Counts { genus, format } => {
            let report = counting_report(genus)?;
            match format {
                Format::Json => emit(&to_pretty(&report), None),
                Format::Dot => emit(&incidence_to_dot(&report), None),
            }
        }
        Command::Bundle { action, graph, bundle, bundle2 } => cmd_bundle(action, &graph, &bundle, bundle2.as_deref()),
        Command::Rep { action, rep, word } => cmd_rep(action, &rep, word.as_deref()),
        Command::Schottky { action, graph, bundle } => cmd_schottky(action, &graph, &bundle),
        Command::Verify { genus_max, seed, timing, gauge_samples, packet_samples, schottky_samples, out } => {
            let mut config = SuiteConfig::new(genus_max, seed);
            config.timing = timing;
            if let Some(n) = gauge_samples {
                config.gauge_samples = n;
            }
            if let Some(n) = packet_samples {
                config.packet_samples = n;
            }
            if let Some(n) = schottky_samples {
                config.schottky_samples = n;
            }
            let report = run_suite(&config)?;
            emit(&to_pretty(&report), out.as_deref())?;
            match report.first_failure() {
                None => Ok(()),
                Some(v) => Err(Failure::Property(format!(
                    "{} ({})",
                    v.property,
                    v.witness.as_deref().unwrap_or("no witness")
                ))),
            }
        }
        Command::Export { kind, graph, edge, genus, out } => {
            let text = match kind {
                ExportKind::Graph => to_dot(&load_graph(&need(graph, "--graph")?)?, "G", edge),
                ExportKind::Nest => {
                    let f = Flag::new(load_graph(&need(graph, "--graph")?)?, need(edge, "--edge")?)?;
                    nest_to_dot(&flip(&f))
                }
                ExportKind::Incidence => incidence_to_dot(&counting_report(need(genus, "--genus")?)?),
                ExportKind::Words => to_pretty(&circle_words(&load_graph(&need(graph, "--graph")?)?).to_file()),
            };
            emit(&text, out.as_deref())
        }
    }
}

fn cmd_graphs(genus: usize, out: &Path, format: Format) -> Outcome {
    let graphs = enumerate_graphs(genus)?;
    std::fs::create_dir_all(out)
        .map_err(|e| Error::Io { path: out.display().to_string(), message: e.to_string() })?;
    let mut index = Vec::with_capacity(graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        let name = match format {
            Format::Json => format!("genus{genus}_{i:03}.json"),
            Format::Dot => format!("genus{genus}_{i:03}.dot"),
        };
        let text = match format {
            Format::Json => to_pretty(&GraphFile::from_graph(g)),
            Format::Dot => to_dot(g, &format!("genus{genus}_{i:03}"), None),
        };
        write_text(&out.join(&name), &text)?;
        index.push(json!({
            "index": i,
            "file": name,
            "loops": g.loop_edges().len(),
            "automorphisms": g.automorphism_count(),
        }));
    }
    log::info!("wrote {} graph classes of genus {genus}", graphs.len());
    write_text(&out.join("index.json"), &to_pretty(&json!({"genus": genus, "graphs": index})))?;
    Ok(())
}

fn cmd_bundle(action: BundleAction, graph: &Path, bundle: &Path, bundle2: Option<&Path>) -> Outcome {
    let g = load_graph(graph)?;
    let a = load_bundle(&g, bundle)?;
    let result = match action {
        BundleAction::Canon => match &a {
            AnyGluing::Scalar(x) => {
                let mut v = canonical_form_to_json(&canonical_form(&g, x)?, scalar_to_json);
                v["rank"] = json!(1);
                v
            }
            AnyGluing::Matrix(m) => {
                let mut v = canonical_form_to_json(&canonical_form(&g, m)?, matrix_to_json);
                v["rank"] = json!(2);
                v
            }
        },
        BundleAction::Equiv => {
            let b = load_bundle(&g, need(bundle2, "--bundle2")?)?;
            let equivalent = match (&a, &b) {
                (AnyGluing::Scalar(x), AnyGluing::Scalar(y)) => line_equivalent(&g, x, y)?,
                (AnyGluing::Matrix(x), AnyGluing::Matrix(y)) => sl2_equivalent(&g, x, y)?,
                _ => return Err(Error::DimensionMismatch("bundles have different ranks".into()).into()),
            };
            json!({"equivalent": equivalent})
        }
        BundleAction::Packet => match &a {
            AnyGluing::Scalar(_) => {
                return Err(Error::DimensionMismatch("packet dimension needs a rank-2 bundle".into()).into())
            }
            AnyGluing::Matrix(m) => {
                let packet = packet_dim(&g, m)?;
                let aut = automorphism_dim(&g, m)?;
                json!({
                    "packet_dim": packet,
                    "automorphism_dim": aut,
                    "difference": packet as i64 - aut as i64,
                    "expected": 3 * g.genus() as i64 - 3,
                })
            }
        },
    };
    emit(&to_pretty(&result), None)
}

fn cmd_rep(action: RepAction, rep: &Path, word: Option<&str>) -> Outcome {
    let rho = rep_from_json(&read_json::<Value>(rep)?)?;
    match action {
        RepAction::Verify => {
            let relation = verify_relation(&rho);
            let report = json!({"genus": rho.genus, "relation": relation, "schottky_locus": on_schottky_locus(&rho)});
            emit(&to_pretty(&report), None)?;
            if relation {
                Ok(())
            } else {
                Err(Failure::Property("surface relation fails".into()))
            }
        }
        RepAction::Eval => {
            let w: SurfaceWord = need(word, "--word")?.parse()?;
            let m = evaluate(&rho, &w)?;
            let trace = m.trace();
            let report = json!({
                "word": w.to_string(),
                "matrix": matrix_to_json(&m),
                "trace": [scalar_to_json(&trace.re), scalar_to_json(&trace.im)],
            });
            emit(&to_pretty(&report), None)
        }
    }
}

fn cmd_schottky(action: SchottkyAction, graph: &Path, bundle: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let a = match load_bundle(&g, bundle)? {
        AnyGluing::Matrix(m) => m,
        AnyGluing::Scalar(_) => {
            return Err(Error::DimensionMismatch("the Schottky section needs a rank-2 bundle".into()).into())
        }
    };
    let form = canonical_form(&g, &a)?;
    let rho = schottky_section(&form);
    let cw = circle_words(&g);
    match action {
        SchottkyAction::Section => emit(&to_pretty(&rep_to_json(&rho)), None),
        SchottkyAction::Roundtrip => {
            let back = forgetful(&rho, &cw)?;
            let round_trip = tuples_equivalent(&back.tuple, &form.tuple);
            emit(&to_pretty(&json!({"round_trip": round_trip})), None)?;
            if round_trip {
                Ok(())
            } else {
                Err(Failure::Property("forgetful(section(B)) differs from B".into()))
            }
        }
        SchottkyAction::Verify => {
            let relation = verify_relation(&rho);
            let locus = on_schottky_locus(&rho);
            let round_trip = tuples_equivalent(&forgetful(&rho, &cw)?.tuple, &form.tuple);
            let unique = schottky_unique(&g, &form)?;
            let report = json!({"relation": relation, "schottky_locus": locus, "round_trip": round_trip, "unique": unique});
            emit(&to_pretty(&report), None)?;
            if relation && locus && round_trip && unique {
                Ok(())
            } else {
                Err(Failure::Property("Schottky section check failed".into()))
            }
        }
    }
}
