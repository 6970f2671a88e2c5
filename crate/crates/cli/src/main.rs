use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use domdraw::{
    check_valid, dominance_dimension, fips, fpt_min_fips, md_tree, parse_edge_list, render_svg,
    write_edge_list, Dag, Drawing, FipReport, Generator, Index, MdNode, Reachability,
    SearchLimits, SvgOptions,
};
use serde_json::json;

/// Weak dominance drawings with the minimum number of falsely implied paths.
#[derive(Parser)]
#[command(name = "domdraw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args)]
struct Input {
    /// Edge-list file (`-` for stdin).
    #[arg(required_unless_present = "generate", conflicts_with = "generate")]
    input: Option<PathBuf>,
    /// Generate the graph instead: chain:n, antichain:n, crown:n, random:n,p[,seed].
    #[arg(long = "gen", value_name = "SPEC")]
    generate: Option<String>,
    /// Seed for `random:n,p` specs that omit one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Limits {
    /// Largest prime-node width searched exhaustively.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(2..))]
    max_k: u64,
}

impl Limits {
    fn search(&self) -> SearchLimits {
        SearchLimits {
            max_k: self.max_k as usize,
            ..SearchLimits::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in edge-list format.
    Gen {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the modular decomposition tree and k.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Compute a minimum-fip drawing.
    Draw {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        dims: u64,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
        /// Also write an SVG of the drawing (2 dimensions only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Enumerate the fips of a drawing.
    Fips {
        #[command(flatten)]
        input: Input,
        /// Drawing JSON, or the output of `draw`.
        #[arg(long)]
        drawing: PathBuf,
        /// Comma-separated per-vertex costs (default 1 each).
        #[arg(long, value_delimiter = ',')]
        costs: Option<Vec<u64>>,
        #[command(flatten)]
        output: Output,
    },
    /// Smallest number of dimensions admitting a drawing without fips.
    Dimension {
        #[command(flatten)]
        input: Input,
        /// Largest dimension count to try.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        dims: u64,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Answer reachability queries from a drawing.
    Query {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        drawing: PathBuf,
        /// Source and target vertex.
        #[arg(long, num_args = 2, value_names = ["U", "V"], required_unless_present = "sweep")]
        pair: Option<Vec<usize>>,
        /// Query every ordered pair and report statistics.
        #[arg(long, conflicts_with = "pair")]
        sweep: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Render a 2-dimensional drawing as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        drawing: PathBuf,
        /// Grid spacing in pixels.
        #[arg(long, default_value_t = 40.0)]
        cell: f64,
        /// Mark fips with dashed segments.
        #[arg(long)]
        show_fips: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("DOMDRAW_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 3 when a search bound was hit, 2 for every other input problem.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<domdraw::Error>() {
        Some(
            domdraw::Error::KTooLarge { .. }
            | domdraw::Error::SearchBound { .. }
            | domdraw::Error::ExploreBudget { .. },
        ) => 3,
        _ => 2,
    }
}

fn generator(spec: &str, seed: u64) -> anyhow::Result<Generator> {
    let spec = match spec.strip_prefix("random:") {
        Some(args) if args.split(',').count() == 2 => format!("{spec},{seed}"),
        _ => spec.to_string(),
    };
    spec.parse::<Generator>().map_err(anyhow::Error::msg)
}

fn load_graph(input: &Input) -> anyhow::Result<Dag> {
    if let Some(spec) = &input.generate {
        return Ok(generator(spec, input.seed)?.generate()?);
    }
    let path = input.input.as_deref().expect("clap enforces an input");
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(parse_edge_list(&text)?)
}

/// Accepts a bare drawing or any JSON object with a `drawing` field.
fn load_drawing(path: &Path, g: &Dag) -> anyhow::Result<Drawing> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let value = match value.get("drawing") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let drawing: Drawing = serde_json::from_value(value)
        .with_context(|| format!("{} is not a drawing", path.display()))?;
    check_valid(g, &drawing)?;
    Ok(drawing)
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn no_svg(format: Format) -> anyhow::Result<()> {
    if format == Format::Svg {
        bail!("--format svg is only available for `draw` and `render`");
    }
    Ok(())
}

fn tree_text(node: &MdNode, depth: usize, out: &mut String) {
    let kind = serde_json::to_value(node.kind).expect("serializable");
    let _ = writeln!(
        out,
        "{:indent$}{} {:?}",
        "",
        kind.as_str().unwrap_or("?"),
        node.members,
        indent = depth * 2
    );
    for c in &node.children {
        tree_text(c, depth + 1, out);
    }
}

fn orders_text(d: &Drawing) -> String {
    let mut s = String::new();
    for (i, order) in d.orders().iter().enumerate() {
        let ids: Vec<String> = order.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "dim {i}: {}", ids.join(" "));
    }
    s
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen { spec, seed, out } => {
            let g = generator(&spec, seed)?.generate()?;
            emit(&out, &write_edge_list(&g))
        }
        Command::Decompose { input, output } => {
            no_svg(output.format)?;
            let g = load_graph(&input)?;
            let tree = md_tree(&Reachability::new(&g));
            let text = match output.format {
                Format::Json => to_json(&json!({ "k": tree.k(), "tree": tree.root }))?,
                _ => {
                    let mut s = format!("k = {}\n", tree.k());
                    tree_text(&tree.root, 0, &mut s);
                    s
                }
            };
            emit(&output.out, &text)
        }
        Command::Draw {
            input,
            dims,
            limits,
            output,
            svg,
        } => {
            let g = load_graph(&input)?;
            let r = Reachability::new(&g);
            let res = fpt_min_fips(&g, dims as usize, &limits.search())?;
            let svg_text = || -> anyhow::Result<String> {
                let report: FipReport = fips(&r, &res.drawing, None)?;
                let opts = SvgOptions {
                    fips: report.fips,
                    ..SvgOptions::default()
                };
                Ok(render_svg(&res.drawing, &g, &opts)?)
            };
            if let Some(path) = &svg {
                emit(&Some(path.clone()), &svg_text()?)?;
            }
            let text = match output.format {
                Format::Json => to_json(&res)?,
                Format::Svg => svg_text()?,
                Format::Text => format!(
                    "cost: {}\nk: {}\nd: {}\nexplored: {}\n{}",
                    res.cost,
                    res.k,
                    res.d,
                    res.explored,
                    orders_text(&res.drawing)
                ),
            };
            emit(&output.out, &text)
        }
        Command::Fips {
            input,
            drawing,
            costs,
            output,
        } => {
            no_svg(output.format)?;
            let g = load_graph(&input)?;
            let d = load_drawing(&drawing, &g)?;
            let report: FipReport = fips(&Reachability::new(&g), &d, costs.as_deref())?;
            let text = match output.format {
                Format::Json => to_json(&report)?,
                _ => {
                    let mut s = format!("count: {}\ncost: {}\n", report.count, report.cost);
                    for (u, v) in &report.fips {
                        let _ = writeln!(s, "{u} {v}");
                    }
                    s
                }
            };
            emit(&output.out, &text)
        }
        Command::Dimension {
            input,
            dims,
            limits,
            output,
        } => {
            no_svg(output.format)?;
            let g = load_graph(&input)?;
            let dim = dominance_dimension(&g, dims as usize, &limits.search())?;
            let text = match (output.format, dim) {
                (Format::Json, _) => to_json(&json!({ "dimension": dim, "d_max": dims }))?,
                (_, Some(d)) => format!("{d}\n"),
                (_, None) => format!("unknown above {dims}\n"),
            };
            emit(&output.out, &text)
        }
        Command::Query {
            input,
            drawing,
            pair,
            sweep,
            output,
        } => {
            no_svg(output.format)?;
            let g = load_graph(&input)?;
            let d = load_drawing(&drawing, &g)?;
            let index = Index::build(&g, &d)?;
            let text = if sweep {
                let stats = index.sweep_stats();
                match output.format {
                    Format::Json => to_json(&stats)?,
                    _ => format!(
                        "queries: {}\ncertificates: {}\nfallbacks: {}\nfallback_fips: {}\n",
                        stats.queries,
                        stats.negative_certificates,
                        stats.fallbacks,
                        stats.fallback_fips
                    ),
                }
            } else {
                let pair = pair.expect("clap enforces a pair");
                let res = index.query(pair[0], pair[1])?;
                match output.format {
                    Format::Json => to_json(&res)?,
                    _ => {
                        let answer = serde_json::to_value(res.answer)?;
                        let method = serde_json::to_value(res.method)?;
                        format!(
                            "{} ({})\n",
                            answer.as_str().unwrap_or("?"),
                            method.as_str().unwrap_or("?")
                        )
                    }
                }
            };
            emit(&output.out, &text)
        }
        Command::Render {
            input,
            drawing,
            cell,
            show_fips,
            out,
        } => {
            let g = load_graph(&input)?;
            let d = load_drawing(&drawing, &g)?;
            let mut opts = SvgOptions {
                cell,
                ..SvgOptions::default()
            };
            if show_fips {
                let report: FipReport = fips(&Reachability::new(&g), &d, None)?;
                opts.fips = report.fips;
            }
            emit(&out, &render_svg(&d, &g, &opts)?)
        }
    }
}
