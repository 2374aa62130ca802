use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use onemap::augment::kite_augment;
use onemap::decomposition::decompose;
use onemap::format::{write_embedding, write_graph, write_witness};
use onemap::generators::{
    fixture, gen_optimal_1planar, gen_outer_optimal, grid, random_1planar_embedding, sparse_ic,
    FixtureName, FixtureObject,
};
use onemap::registry::{Input, Registry};
use onemap::search::SearchBudget;
use onemap::separated::separated_embedding;
use onemap::witness::{embedding_to_witness, half_square, witness_to_embedding};
use onemap::{embedding::validate_1planar, OnePlanarEmbedding, SimpleGraph, Verdict};

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "onemap",
    version,
    about = "1-planar embeddings and 4-map graph witnesses"
)]
struct Cli {
    /// Search limits, e.g. `vertices=12,edges=40,candidates=1000000,seconds=30`.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<SearchBudget>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a .gr, .emb or .map file.
    Check {
        property: Option<String>,
        file: Option<PathBuf>,
        /// List the registered properties.
        #[arg(long)]
        list: bool,
    },
    /// Convert between embeddings, witnesses and graphs.
    Transform {
        /// to-witness, to-embedding, kite-augment, separate, half-square or planarize
        op: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a generated graph, embedding or witness.
    Generate {
        /// optimal-1planar, outer-optimal, random, grid, sparse-ic or fixture
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the separation pairs of a graph and the components at each.
    Decompose { file: PathBuf },
}

fn parse_budget(s: &str) -> Result<SearchBudget, String> {
    let mut b = SearchBudget::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{part}'"))?;
        let bad = |_| format!("bad value '{v}' for {k}");
        match k.trim() {
            "vertices" => b.max_vertices = v.trim().parse().map_err(bad)?,
            "edges" => b.max_edges = v.trim().parse().map_err(bad)?,
            "candidates" => b.max_candidates = v.trim().parse().map_err(bad)?,
            "seconds" => {
                b.time_limit = Some(Duration::from_secs_f64(
                    v.trim()
                        .parse()
                        .map_err(|_| format!("bad value '{v}' for seconds"))?,
                ))
            }
            other => return Err(format!("unknown budget key '{other}'")),
        }
    }
    Ok(b)
}

/// An error that maps to exit code 2.
struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<Input, Invalid> {
    let text = fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    Input::parse(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Invalid> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Invalid(format!("{}: {e}", p.display()))),
        None => {
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn check(property: &str, file: &Path, budget: SearchBudget) -> Result<u8, Invalid> {
    let registry = Registry::standard();
    let check = registry.get(property)?;
    let input = read_input(file)?;
    let cert = check.run(&input, budget)?;
    emit(&cert.render(), None)?;
    Ok(match cert.verdict {
        Verdict::Accept => ACCEPT,
        Verdict::Reject => REJECT,
        Verdict::Indeterminate => BUDGET,
    })
}

fn valid_embedding(input: Input) -> Result<OnePlanarEmbedding, Invalid> {
    let e = match input {
        Input::Embedding(e) => e,
        other => {
            return Err(Invalid(format!(
                "expected an embedding file, got a {} file",
                other.kind()
            )))
        }
    };
    let v = validate_1planar(&e);
    if !v.is_accept() {
        let why: Vec<_> = v
            .violations
            .iter()
            .map(|x| format!("{} {}", x.rule, x.location))
            .collect();
        return Err(Invalid(format!(
            "embedding is not 1-planar: {}",
            why.join("; ")
        )));
    }
    Ok(e)
}

fn transform(op: &str, input: &Path, output: Option<&Path>) -> Result<u8, Invalid> {
    let input = read_input(input)?;
    let text = match op {
        "to-witness" => write_witness(&embedding_to_witness(&valid_embedding(input)?)?),
        "to-embedding" => match input {
            Input::Witness(w) => write_embedding(&witness_to_embedding(&w)),
            other => {
                return Err(Invalid(format!(
                    "to-embedding reads a witness file, got a {} file",
                    other.kind()
                )))
            }
        },
        "kite-augment" => write_embedding(&kite_augment(&valid_embedding(input)?)?),
        // Parallel copies do not fit a simple graph, so the result is the
        // witness with one point per copy.
        "separate" => {
            write_witness(&separated_embedding(&valid_embedding(input)?)?.flattened_witness())
        }
        "half-square" => match input {
            Input::Witness(w) => write_graph(&half_square(&w)),
            other => {
                return Err(Invalid(format!(
                    "half-square reads a witness file, got a {} file",
                    other.kind()
                )))
            }
        },
        "planarize" => {
            let e = valid_embedding(input)?;
            let rot = e.rotation().to_vec();
            let edges = rot.iter().enumerate().flat_map(|(i, l)| {
                l.iter()
                    .filter(move |&&w| w > i + 1)
                    .map(move |&w| (i + 1, w))
            });
            let g = SimpleGraph::new(rot.len(), edges)?;
            write_embedding(&OnePlanarEmbedding::planar(g, rot))
        }
        other => return Err(Invalid(format!("unknown transform '{other}'"))),
    };
    emit(&text, output)?;
    Ok(ACCEPT)
}

fn numbers(family: &str, params: &[String], want: usize) -> Result<Vec<usize>, Invalid> {
    if params.len() != want {
        return Err(Invalid(format!(
            "{family} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    params
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Invalid(format!("'{p}' is not a non-negative integer")))
        })
        .collect()
}

fn generate(family: &str, params: &[String], output: Option<&Path>) -> Result<u8, Invalid> {
    let text = match family {
        "optimal-1planar" => write_graph(&gen_optimal_1planar(numbers(family, params, 1)?[0])?),
        "outer-optimal" => write_graph(&gen_outer_optimal(numbers(family, params, 1)?[0])?),
        "grid" => {
            let p = numbers(family, params, 2)?;
            if p[0] == 0 || p[1] == 0 {
                return Err(Invalid("grid needs positive sides".into()));
            }
            write_graph(&grid(p[0], p[1]))
        }
        "sparse-ic" => write_embedding(&sparse_ic(numbers(family, params, 1)?[0])?),
        "random" => {
            let p = numbers(family, params, 3)?;
            write_embedding(&random_1planar_embedding(p[0], p[1], p[2] as u64)?)
        }
        "fixture" => {
            if params.len() != 1 {
                return Err(Invalid("fixture takes a name".into()));
            }
            match fixture(params[0].parse::<FixtureName>()?)? {
                FixtureObject::Graph(g) => write_graph(&g),
                FixtureObject::Embedding(e) => write_embedding(&e),
                FixtureObject::Witness(w) => write_witness(&w),
            }
        }
        other => return Err(Invalid(format!("unknown family '{other}'"))),
    };
    emit(&text, output)?;
    Ok(ACCEPT)
}

fn decompose_cmd(file: &Path) -> Result<u8, Invalid> {
    let g = match read_input(file)? {
        Input::Graph(g) => g,
        Input::Embedding(e) => e.graph().clone(),
        Input::Witness(_) => {
            return Err(Invalid("decompose reads a graph or embedding file".into()))
        }
    };
    let ds = decompose(&g)?;
    let mut out = format!("pairs {}\n", ds.len());
    for d in &ds {
        let _ = writeln!(
            out,
            "pair {} {} components {}",
            d.pair.u,
            d.pair.v,
            d.components.len()
        );
        for (i, c) in d.components.iter().enumerate() {
            let labels: Vec<_> = c.labels.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "component {} labels {}", i + 1, labels.join(" "));
            out.push_str(&write_graph(&c.graph));
        }
    }
    emit(&out, None)?;
    Ok(ACCEPT)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INVALID } else { ACCEPT };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = cli.budget.unwrap_or_default();
    let result = match &cli.command {
        Command::Check { list: true, .. } => {
            let registry = Registry::standard();
            let mut out = String::new();
            for name in registry.names() {
                let c = registry.get(name).expect("listed");
                let _ = writeln!(out, "{name}\t{}\t{}", c.input(), c.describe());
            }
            emit(&out, None).map(|_| ACCEPT)
        }
        Command::Check {
            property: Some(p),
            file: Some(f),
            ..
        } => check(p, f, budget),
        Command::Check { .. } => Err(Invalid("check needs a property and a file".into())),
        Command::Transform { op, input, output } => transform(op, input, output.as_deref()),
        Command::Generate {
            family,
            params,
            output,
        } => generate(family, params, output.as_deref()),
        Command::Decompose { file } => decompose_cmd(file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INVALID)
        }
    }
}
