use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use psm_core::analysis::{capture_free_paths, enumerate_paths, required_capabilities, Path};
use psm_core::dsl::{parse, parse_vocabulary, SourceFile};
use psm_core::{
    build, export_dot, export_json, import_json, normalize, paper_vocabulary, BuildOptions,
    NodeId, PsmGraph, Term,
};

#[derive(Parser)]
#[command(name = "psm", version, about = "Build and query phenomenon-signal model graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph of a scenario file
    Build {
        file: PathBuf,
        /// Write the graph as JSON here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz rendering
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Drop nodes that cannot reach an action
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = BuildOptions::default().max_iterations)]
        max_iterations: usize,
    },
    /// Parse and validate a scenario file
    Check { file: PathBuf },
    /// Print the normal form of a term
    Eval {
        term: String,
        /// Scenario or vocabulary file; defaults to the intersection vocabulary
        #[arg(long)]
        vocab: Option<PathBuf>,
    },
    /// List paths to a node of a built graph
    Paths {
        graph: PathBuf,
        /// Target term, or a bare action name such as 00
        #[arg(long)]
        to: String,
        /// Start term; defaults to the graph's seeds
        #[arg(long)]
        from: Option<String>,
        /// Only paths whose interior nodes are all structural
        #[arg(long)]
        capture_free: bool,
    },
    /// Captures, facts and signals an action depends on
    Capabilities {
        graph: PathBuf,
        #[arg(long)]
        action: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Build {
            file,
            output,
            dot,
            prune,
            max_iterations,
        } => {
            let Some(sc) = load_scenario(&file)? else {
                return Ok(ExitCode::from(1));
            };
            let opts = BuildOptions {
                prune,
                max_iterations,
                ..Default::default()
            };
            let g = build(&sc, &opts)?;
            let json = export_json(&g);
            match &output {
                Some(path) => {
                    fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
                    println!(
                        "{} nodes, {} edges after {} rounds",
                        g.node_count(),
                        g.edge_count(),
                        g.meta.iterations
                    );
                }
                None => print!("{json}"),
            }
            if let Some(path) = &dot {
                fs::write(path, export_dot(&g))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file } => Ok(match load_scenario(&file)? {
            Some(sc) => {
                println!(
                    "{}: {} indicators, {} rules, {} signals, {} seeds",
                    sc.name,
                    sc.vocabulary.indicators().len(),
                    sc.rules.len(),
                    sc.signals.len(),
                    sc.seeds.len()
                );
                ExitCode::SUCCESS
            }
            None => ExitCode::from(1),
        }),
        Command::Eval { term, vocab } => {
            let vocab = match vocab {
                Some(path) => {
                    let src = read_source(&path)?;
                    match parse_vocabulary(&src) {
                        Ok(v) => v,
                        Err(diags) => {
                            for d in diags {
                                eprintln!("{}", d.render(&src));
                            }
                            return Ok(ExitCode::from(1));
                        }
                    }
                }
                None => paper_vocabulary(),
            };
            let t: Term = term.parse().map_err(|e| anyhow!("{e}"))?;
            println!("{}", normalize(&t, &vocab));
            Ok(ExitCode::SUCCESS)
        }
        Command::Paths {
            graph,
            to,
            from,
            capture_free,
        } => {
            let g = load_graph(&graph)?;
            let target = lookup(&g, &to)?;
            let paths = if capture_free {
                if from.is_some() {
                    bail!("--capture-free always starts from the seeds");
                }
                capture_free_paths(&g, &target)?
            } else {
                let starts = match &from {
                    Some(f) => vec![lookup(&g, f)?],
                    None => g.meta.seeds.clone(),
                };
                enumerate_paths(&g, &starts, &target)?
            };
            for p in &paths {
                println!("{}", render_path(&g, p));
            }
            println!("{} path(s)", paths.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Capabilities { graph, action } => {
            let g = load_graph(&graph)?;
            let id = lookup(&g, &action)?;
            let report = required_capabilities(&g, &id)?;
            for (title, terms) in [
                ("captures", &report.required_captures),
                ("facts", &report.required_facts),
                ("signals", &report.required_signals),
            ] {
                println!("{title}:");
                print_terms(terms);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_source(path: &PathBuf) -> Result<SourceFile> {
    SourceFile::read(path).with_context(|| format!("reading {}", path.display()))
}

/// Parses a scenario, printing diagnostics. `None` if there were errors.
fn load_scenario(path: &PathBuf) -> Result<Option<psm_core::Scenario>> {
    let src = read_source(path)?;
    let (sc, diags) = parse(&src);
    for d in &diags {
        eprintln!("{}", d.render(&src));
    }
    Ok(sc)
}

fn load_graph(path: &PathBuf) -> Result<PsmGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    import_json(&text).with_context(|| format!("loading {}", path.display()))
}

/// A term literal, or a bare action name such as `0B`.
fn lookup(g: &PsmGraph, spec: &str) -> Result<NodeId> {
    let spec = spec.trim();
    let term: Term = match spec.parse() {
        Ok(t) => t,
        Err(e) if !spec.contains(':') && !spec.contains(char::is_whitespace) => {
            format!("\"{spec}\"").parse().map_err(|_| anyhow!("{e}"))?
        }
        Err(e) => return Err(anyhow!("{e}")),
    };
    g.id_of(&term)
        .cloned()
        .ok_or_else(|| anyhow!("no node `{term}` in the graph"))
}

fn render_path(g: &PsmGraph, p: &Path) -> String {
    let mut out = g.nodes()[&p.nodes[0]].term.to_string();
    for (edge, node) in p.edges.iter().zip(&p.nodes[1..]) {
        let e = &g.edges()[*edge];
        out.push_str(&format!(
            "  --{}#{}-->  {}",
            e.rule,
            e.application,
            g.nodes()[node].term
        ));
    }
    out
}

fn print_terms(terms: &BTreeSet<Term>) {
    for t in terms {
        println!("  {t}");
    }
}
