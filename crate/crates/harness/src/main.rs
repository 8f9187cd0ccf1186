use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use forge_core::formations::{by_name, Formation, SigmaPartition};
use forge_core::lattice::set_lattice_bound;
use forge_core::schmidt::corpus_graph;
use forge_core::Execution;
use forge_harness::checks::{self, CheckId};
use forge_harness::compute::compute;
use forge_harness::corpus::Corpus;
use forge_harness::report::Verdict;
use forge_harness::search::{discrepancies, search};
use forge_harness::spec::{GroupSpec, RawSpec};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "forge",
    version,
    about = "Verify subnormality theorems on a corpus of finite groups"
)]
struct Cli {
    /// Largest group order whose subgroup lattice is enumerated.
    #[arg(long, global = true, env = "FORGE_LATTICE_BOUND", default_value_t = 200)]
    lattice_bound: usize,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over a corpus and print a JSON report.
    Verify {
        /// A check id, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long)]
        formation: Option<String>,
        /// σ as blocks separated by `/`, e.g. "2,3/5".
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated corpus labels to keep.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print one invariant of one group.
    Compute {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        group: String,
        /// Subgroup generators: JSON list of element indices or image lists.
        #[arg(long)]
        arg: Option<String>,
        #[arg(long, default_value = "nilpotent")]
        formation: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// List corpus groups where S_F, C_F and Z_F differ.
    Search {
        #[arg(long)]
        formation: String,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Print the N-critical graph of a corpus.
    Graph {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Print a group as raw generators.
    Export {
        #[arg(long)]
        group: String,
        #[arg(long)]
        note: Option<String>,
    },
    /// List the check ids.
    Checks,
}

/// Bad input, reported with exit code 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn parse_sigma(sigma: Option<&str>) -> Result<Option<SigmaPartition>, InputError> {
    Ok(sigma.map(SigmaPartition::parse).transpose()?)
}

fn formation(name: Option<&str>, sigma: Option<&str>) -> Result<Option<Formation>, InputError> {
    let sigma = parse_sigma(sigma)?;
    Ok(match (name, sigma) {
        (Some(n), s) => Some(by_name(n, s.as_ref())?),
        (None, Some(s)) => Some(Formation::sigma_nilpotent(s)),
        (None, None) => None,
    })
}

fn load_corpus(path: Option<&PathBuf>) -> Result<Corpus, InputError> {
    Ok(match path {
        Some(p) => Corpus::load(p)?,
        None => Corpus::shipped(),
    })
}

fn run(cli: Cli) -> Result<bool, InputError> {
    set_lattice_bound(cli.lattice_bound);
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Verify {
            check,
            formation: name,
            sigma,
            corpus,
            groups,
            output,
        } => {
            let ids: Vec<CheckId> = if check.eq_ignore_ascii_case("all") {
                CheckId::all().collect()
            } else {
                vec![CheckId::parse(&check).ok_or_else(|| anyhow!("unknown check `{check}`"))?]
            };
            let f = formation(name.as_deref(), sigma.as_deref())?;
            let mut corpus = load_corpus(corpus.as_ref())?;
            if !groups.is_empty() {
                corpus = corpus.filter(&groups);
            }
            let report = checks::run(&ids, f.as_ref(), &corpus, exec)?;
            let text = report.to_json();
            match output {
                Some(path) => {
                    std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?
                }
                None => println!("{text}"),
            }
            for r in report.failures() {
                eprintln!(
                    "FAIL {} {} {} {}",
                    r.check,
                    r.formation.as_deref().unwrap_or("-"),
                    r.group,
                    r.witness
                );
            }
            eprintln!(
                "{} records: {} pass, {} fail, {} skip, {} info",
                report.records.len(),
                report.count(Verdict::Pass),
                report.count(Verdict::Fail),
                report.count(Verdict::Skip),
                report.count(Verdict::Info)
            );
            Ok(report.passed())
        }
        Command::Compute {
            invariant,
            group,
            arg,
            formation: name,
            sigma,
        } => {
            let f = formation(Some(&name), sigma.as_deref())?.expect("a name was given");
            let spec = GroupSpec::parse(&group)?;
            let g = spec.build()?.with_label(spec.label());
            let value = compute(&invariant, &g, &f, arg.as_deref())?;
            let out = json!({"invariant": invariant, "group": g.label(), "formation": f.name(), "value": value});
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Search {
            formation: name,
            sigma,
            corpus,
        } => {
            let f = formation(Some(&name), sigma.as_deref())?.expect("a name was given");
            let corpus = load_corpus(corpus.as_ref())?;
            let report = search(&f, &corpus, exec);
            println!("{}", report.to_json());
            eprintln!("discrepancies: {:?}", discrepancies(&report));
            Ok(true)
        }
        Command::Graph { corpus } => {
            let corpus = load_corpus(corpus.as_ref())?;
            let graph = corpus_graph(&corpus.groups(), exec)?;
            let provenance: Vec<_> = graph
                .edges()
                .into_iter()
                .map(|(p, q)| json!({"edge": [p, q], "groups": graph.provenance(p, q)}))
                .collect();
            let out = json!({
                "vertices": graph.vertices(),
                "adjacency": graph.adjacency(),
                "edges": provenance,
                "components": checks::component_sigma(&graph).to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Export { group, note } => {
            let spec = GroupSpec::parse(&group)?;
            let g = spec.build()?.with_label(spec.label());
            let mut raw = RawSpec::of(&g)?;
            raw.note = note;
            println!("{}", serde_json::to_string(&raw)?);
            Ok(true)
        }
        Command::Checks => {
            for id in CheckId::all() {
                let formations: Vec<String> = id.default_formations().iter().map(Formation::name).collect();
                println!("{:<12} {}", id.id(), formations.join(" "));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
