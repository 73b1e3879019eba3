//! `sftd` — topological comparison of scalar functions on shared domains.
//!
//! Subcommands:
//!
//! * `compare` — cross-barcode + divergence of two functions, with localized
//!   birth/death sites, JSON report, points CSV, and SVG barcode.
//! * `barcode` — plain sublevel persistence of one function.
//! * `gradcheck` — numerical validation of the analytic subgradients.
//! * `synth` — deterministic generators for benchmark fields and graphs.
//! * `eigmap` — pairwise divergence heatmap of Laplacian eigenvectors.
//! * `bottleneck` — bottleneck distance between two saved barcodes.
//!
//! Every command is deterministic given its flags (and seed, where one
//! exists). Failures print a message to standard error and exit with code 2;
//! a failing `gradcheck` exits with code 1.

mod report;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use sftd_core::cross::f_cross_barcode_field;
use sftd_core::cross::f_cross_barcode_graph;
use sftd_core::cubical::{cubical_persistence, CubicalSpec};
use sftd_core::divergence::{
    sftd_field, sftd_gradient_field, sftd_gradient_graph, sftd_graph, SftdConfig, SparseGradient,
};
use sftd_core::flag::{flag_persistence, FlagComplexSpec};
use sftd_core::io;
use sftd_core::metrics::bottleneck_distance;
use sftd_core::synth::{
    gaussian_minima_field, laplacian_eigenvectors, lattice_defect_field, sftd_heatmap,
    spheres_bridge_field, watts_strogatz, Bridge, SplitRng,
};
use sftd_core::{Barcode64, FiltrationMatrix64, GraphField64, ScalarField64};

use report::{BarcodeReport, CompareReport};
use svg::SvgBar;

/// Maps a complex vertex index to domain coordinates for report output.
type SiteOf = Box<dyn Fn(usize) -> Option<Vec<usize>>>;

/// `println!` that tolerates a closed pipe (e.g. piping into `head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "sftd",
    version,
    about = "Topological comparison of scalar functions on graphs and lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-barcode and divergence of two functions on one domain
    Compare(CompareArgs),
    /// Sublevel persistence barcode of a single function
    Barcode(BarcodeArgs),
    /// Check analytic subgradients against central finite differences
    Gradcheck(GradcheckArgs),
    /// Generate synthetic fields and graphs
    #[command(subcommand)]
    Synth(SynthCommand),
    /// Pairwise divergence heatmap over Laplacian eigenvectors
    Eigmap(EigmapArgs),
    /// Bottleneck distance between two saved barcode reports
    Bottleneck(BottleneckArgs),
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Compare(args) => cmd_compare(&args)?,
        Command::Barcode(args) => cmd_barcode(&args)?,
        Command::Gradcheck(args) => {
            if !cmd_gradcheck(&args)? {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Synth(args) => cmd_synth(&args)?,
        Command::Eigmap(args) => cmd_eigmap(&args)?,
        Command::Bottleneck(args) => cmd_bottleneck(&args)?,
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Shared input handling

/// Either two lattice fields or two functions on one graph.
#[derive(Args)]
struct PairInput {
    /// First field, .npy or .csv (lattice mode)
    #[arg(long)]
    f: Option<PathBuf>,
    /// Second field (lattice mode)
    #[arg(long)]
    g: Option<PathBuf>,
    /// Edge list, one `i,j` line per edge (graph mode)
    #[arg(long)]
    edges: Option<PathBuf>,
    /// First function's vertex values, one per line (graph mode)
    #[arg(long)]
    fvals: Option<PathBuf>,
    /// Second function's vertex values (graph mode)
    #[arg(long)]
    gvals: Option<PathBuf>,
}

enum Pair {
    Fields(ScalarField64, ScalarField64),
    Graphs(GraphField64, GraphField64),
}

impl PairInput {
    fn load(&self) -> Result<Pair> {
        match (&self.f, &self.g, &self.edges, &self.fvals, &self.gvals) {
            (Some(f), Some(g), None, None, None) => Ok(Pair::Fields(
                io::load_field(f).with_context(|| format!("loading {}", f.display()))?,
                io::load_field(g).with_context(|| format!("loading {}", g.display()))?,
            )),
            (None, None, Some(edges), Some(fvals), Some(gvals)) => Ok(Pair::Graphs(
                io::load_graph_field(edges, fvals)
                    .with_context(|| format!("loading {}", fvals.display()))?,
                io::load_graph_field(edges, gvals)
                    .with_context(|| format!("loading {}", gvals.display()))?,
            )),
            _ => bail!("provide either --f/--g (fields) or --edges/--fvals/--gvals (graphs)"),
        }
    }

    fn echo(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (key, path) in [
            ("f", &self.f),
            ("g", &self.g),
            ("edges", &self.edges),
            ("fvals", &self.fvals),
            ("gvals", &self.gvals),
        ] {
            if let Some(path) = path {
                map.insert(key.to_string(), json!(path.display().to_string()));
            }
        }
        serde_json::Value::Object(map)
    }
}

impl Pair {
    fn ndim(&self) -> usize {
        match self {
            Pair::Fields(f, _) => f.ndim(),
            Pair::Graphs(..) => 1,
        }
    }

    fn domain_echo(&self) -> serde_json::Value {
        match self {
            Pair::Fields(f, _) => json!({"kind": "lattice", "shape": f.shape()}),
            Pair::Graphs(f, _) => {
                json!({"kind": "graph", "vertices": f.vertex_count(), "edges": f.edges().len()})
            }
        }
    }
}

fn max_degree(dims: &[usize]) -> Result<usize> {
    dims.iter()
        .copied()
        .max()
        .context("--dims must list at least one degree")
}

fn svg_bars(barcode: &Barcode64) -> Vec<SvgBar> {
    barcode
        .finite()
        .iter()
        .map(|b| SvgBar {
            degree: b.degree,
            birth: b.birth,
            death: Some(b.death),
        })
        .chain(barcode.essential().iter().map(|b| SvgBar {
            degree: b.degree,
            birth: b.birth,
            death: None,
        }))
        .collect()
}

// ---------------------------------------------------------------------------
// compare

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: PairInput,
    /// Homology degrees to report, comma separated
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// Exponent on interval lengths (>= 1)
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Lead the summary with the symmetrized divergence
    #[arg(long)]
    sym: bool,
    /// JSON report destination
    #[arg(long)]
    out: PathBuf,
    /// Optional CSV of localized birth/death sites
    #[arg(long)]
    points: Option<PathBuf>,
    /// Optional SVG barcode rendering
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let pair = args.input.load()?;
    let config = SftdConfig {
        degrees: args.dims.clone(),
        p: args.p,
        symmetric: false,
    };
    let top = max_degree(&args.dims)?;
    let start = Instant::now();
    let (cross, fg, gf) = match &pair {
        Pair::Fields(f, g) => (
            f_cross_barcode_field(f, g, top)?,
            sftd_field(f, g, &config)?,
            sftd_field(g, f, &config)?,
        ),
        Pair::Graphs(f, g) => (
            f_cross_barcode_graph(f, g, top)?,
            sftd_graph(f, g, &config)?,
            sftd_graph(g, f, &config)?,
        ),
    };
    let timing_ms = start.elapsed().as_millis() as u64;

    let (dims, essential) =
        report::barcode_sections(cross.barcode(), &args.dims, |v| cross.site_of(v));
    let sftd = report::sftd_section(&fg, &gf);
    let sym_total = sftd.sym.total;
    let report = CompareReport {
        config: json!({
            "command": "compare",
            "inputs": args.input.echo(),
            "domain": pair.domain_echo(),
            "dims": args.dims,
            "p": args.p,
            "sym": args.sym,
        }),
        dims,
        essential,
        sftd,
        timing_ms,
    };
    report::write_json(&args.out, &report)?;
    if let Some(path) = &args.points {
        fs::write(path, report::points_csv(&cross.localize(), pair.ndim()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::barcode_svg(&svg_bars(cross.barcode()), true))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.sym {
        outln!("sftd sym {sym_total} | fg {} | gf {}", fg.total, gf.total);
    } else {
        outln!("sftd fg {} | gf {} | sym {sym_total}", fg.total, gf.total);
    }
    outln!("wrote {}", args.out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// barcode

#[derive(Args)]
struct BarcodeArgs {
    /// Field input, .npy or .csv (lattice mode)
    #[arg(long)]
    f: Option<PathBuf>,
    /// Edge list (graph mode)
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Vertex values (graph mode)
    #[arg(long)]
    fvals: Option<PathBuf>,
    /// Homology degrees to report
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// JSON destination; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG rendering
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn cmd_barcode(args: &BarcodeArgs) -> Result<()> {
    let top = max_degree(&args.dims)?;
    let start = Instant::now();
    let (barcode, site_of, domain): (Barcode64, SiteOf, _) = match (
        &args.f,
        &args.edges,
        &args.fvals,
    ) {
        (Some(path), None, None) => {
            let field =
                io::load_field(path).with_context(|| format!("loading {}", path.display()))?;
            let barcode = cubical_persistence(&CubicalSpec {
                field: &field,
                max_dim: top,
            })?;
            let domain = json!({"kind": "lattice", "shape": field.shape()});
            let coords = move |v: usize| Some(field.coords(v));
            (barcode, Box::new(coords), domain)
        }
        (None, Some(edges), Some(fvals)) => {
            let graph = io::load_graph_field(edges, fvals)
                .with_context(|| format!("loading {}", fvals.display()))?;
            let matrix = FiltrationMatrix64::from_vertex_function(&graph);
            let barcode = flag_persistence(&FlagComplexSpec {
                matrix: &matrix,
                max_dim: top,
            })?;
            let domain = json!({"kind": "graph", "vertices": graph.vertex_count(), "edges": graph.edges().len()});
            (barcode, Box::new(|v: usize| Some(vec![v])), domain)
        }
        _ => bail!("provide either --f (field) or --edges/--fvals (graph)"),
    };
    let timing_ms = start.elapsed().as_millis() as u64;

    let (dims, essential) = report::barcode_sections(&barcode, &args.dims, site_of);
    let report = BarcodeReport {
        config: json!({
            "command": "barcode",
            "f": args.f.as_ref().map(|p| p.display().to_string()),
            "edges": args.edges.as_ref().map(|p| p.display().to_string()),
            "fvals": args.fvals.as_ref().map(|p| p.display().to_string()),
            "domain": domain,
            "dims": args.dims,
        }),
        dims,
        essential,
        timing_ms,
    };
    match &args.out {
        Some(path) => {
            report::write_json(path, &report)?;
            outln!(
                "{} finite, {} essential bars; wrote {}",
                barcode.finite().len(),
                barcode.essential().len(),
                path.display()
            );
        }
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::barcode_svg(&svg_bars(&barcode), false))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gradcheck

#[derive(Args)]
struct GradcheckArgs {
    #[command(flatten)]
    input: PairInput,
    /// Homology degrees entering the divergence
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// Exponent on interval lengths
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Check the symmetrized divergence
    #[arg(long)]
    sym: bool,
    /// Central-difference step
    #[arg(long, default_value_t = 1e-5)]
    eps: f64,
    /// Number of perturbed configurations to test
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Seed for the perturbations
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional JSON report destination
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_gradcheck(args: &GradcheckArgs) -> Result<bool> {
    ensure!(
        args.eps > 0.0 && args.eps.is_finite(),
        "--eps must be positive"
    );
    let pair = args.input.load()?;
    let config = SftdConfig {
        degrees: args.dims.clone(),
        p: args.p,
        symmetric: args.sym,
    };
    let (base_f, base_g): (Vec<f64>, Vec<f64>) = match &pair {
        Pair::Fields(f, g) => (f.values().to_vec(), g.values().to_vec()),
        Pair::Graphs(f, g) => (f.values().to_vec(), g.values().to_vec()),
    };
    let evaluate = |fv: Vec<f64>, gv: Vec<f64>| -> Result<f64> {
        Ok(match &pair {
            Pair::Fields(f, _) => {
                let ff = ScalarField64::new(f.shape().to_vec(), fv)?;
                let gg = ScalarField64::new(f.shape().to_vec(), gv)?;
                sftd_field(&ff, &gg, &config)?.total
            }
            Pair::Graphs(f, _) => {
                sftd_graph(&f.with_values(fv)?, &f.with_values(gv)?, &config)?.total
            }
        })
    };
    let gradient = |fv: Vec<f64>, gv: Vec<f64>| -> Result<SparseGradient<f64>> {
        Ok(match &pair {
            Pair::Fields(f, _) => {
                let ff = ScalarField64::new(f.shape().to_vec(), fv)?;
                let gg = ScalarField64::new(f.shape().to_vec(), gv)?;
                sftd_gradient_field(&ff, &gg, &config)?.1
            }
            Pair::Graphs(f, _) => {
                sftd_gradient_graph(&f.with_values(fv)?, &f.with_values(gv)?, &config)?.1
            }
        })
    };

    // Exact ties in the inputs make the divergence non-differentiable there,
    // so every trial evaluates at a jittered, generic configuration; the
    // report records whether the inputs needed that jitter.
    let mut all: Vec<f64> = base_f.iter().chain(&base_g).copied().collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let jittered = all.windows(2).any(|w| w[0] == w[1]);
    let spread = all.last().unwrap() - all.first().unwrap();
    let mut delta = spread.max(1.0) * 1e-3;
    let gap_floor = 20.0 * args.eps;

    let source = SplitRng::new(args.seed);
    let mut max_rel = 0.0f64;
    let mut checks = 0usize;
    for trial in 0..args.trials {
        let mut rng = source.stream(trial as u64);
        let (pf, pg) = {
            let mut attempts = 0usize;
            loop {
                let mut jitter = |base: &[f64]| -> Vec<f64> {
                    base.iter()
                        .map(|v| v + rng.random_range(-delta..delta))
                        .collect()
                };
                let pf = jitter(&base_f);
                let pg = jitter(&base_g);
                let mut union: Vec<f64> = pf.iter().chain(&pg).copied().collect();
                union.sort_by(|a, b| a.partial_cmp(b).unwrap());
                if union.windows(2).all(|w| w[1] - w[0] >= gap_floor) {
                    break (pf, pg);
                }
                attempts += 1;
                ensure!(
                    attempts < 10_000,
                    "could not reach a generic configuration; inputs too degenerate"
                );
                if attempts.is_multiple_of(1_000) {
                    delta *= 2.0;
                }
            }
        };
        let grad = gradient(pf.clone(), pg.clone())?;

        let mut targets: Vec<(bool, usize)> = Vec::new();
        for (is_f, map) in [(true, &grad.wrt_f), (false, &grad.wrt_g)] {
            let mut keys: Vec<usize> = map.keys().copied().collect();
            while keys.len() > 4 {
                let drop = rng.random_range(0..keys.len());
                keys.swap_remove(drop);
            }
            targets.extend(keys.into_iter().map(|k| (is_f, k)));
            // One probe where the analytic gradient claims to vanish.
            let len = if is_f { pf.len() } else { pg.len() };
            for _ in 0..10 {
                let idx = rng.random_range(0..len);
                if !map.contains_key(&idx) {
                    targets.push((is_f, idx));
                    break;
                }
            }
        }
        for (is_f, idx) in targets {
            let analytic = if is_f {
                grad.wrt_f.get(&idx).copied().unwrap_or(0.0)
            } else {
                grad.wrt_g.get(&idx).copied().unwrap_or(0.0)
            };
            let probe = |offset: f64| -> Result<f64> {
                let mut fv = pf.clone();
                let mut gv = pg.clone();
                if is_f {
                    fv[idx] += offset;
                } else {
                    gv[idx] += offset;
                }
                evaluate(fv, gv)
            };
            let fd = (probe(args.eps)? - probe(-args.eps)?) / (2.0 * args.eps);
            let rel = (fd - analytic).abs() / analytic.abs().max(1.0);
            max_rel = max_rel.max(rel);
            checks += 1;
        }
    }

    let pass = max_rel <= 1e-4;
    let verdict = json!({
        "pass": pass,
        "max_rel_error": max_rel,
        "checks": checks,
        "trials": args.trials,
        "jittered": jittered,
        "perturbation": delta,
        "eps": args.eps,
        "p": args.p,
        "dims": args.dims,
        "sym": args.sym,
    });
    if let Some(path) = &args.out {
        report::write_json(path, &verdict)?;
    }
    outln!(
        "gradcheck {}: max relative error {max_rel:e} over {checks} checks{}",
        if pass { "PASS" } else { "FAIL" },
        if jittered { " (inputs jittered)" } else { "" },
    );
    Ok(pass)
}

// ---------------------------------------------------------------------------
// synth

#[derive(Subcommand)]
enum SynthCommand {
    /// Sum-of-Gaussian-wells field
    Minima(MinimaArgs),
    /// Square wall lattice with optional defects
    Lattice(LatticeArgs),
    /// Concentric sphere shells joined by one bridge
    Spheres(SpheresArgs),
    /// Watts-Strogatz small-world edge list
    WsGraph(WsGraphArgs),
}

#[derive(Args)]
struct MinimaArgs {
    /// Lattice extents, comma separated
    #[arg(long, value_delimiter = ',', default_value = "64,64")]
    shape: Vec<usize>,
    /// Explicit centers as `r,c;r,c;...`; random when omitted
    #[arg(long)]
    centers: Option<String>,
    /// Number of random centers when --centers is omitted
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[arg(long, default_value_t = 1.0)]
    depth: f64,
    #[arg(long, default_value_t = 3.0)]
    sigma: f64,
    /// Seed for random center placement
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output field (.npy or .csv)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long, value_delimiter = ',', default_value = "10,10")]
    shape: Vec<usize>,
    /// Wall pitch
    #[arg(long, default_value_t = 3)]
    cell: usize,
    /// Defective cells as `r,c;r,c;...`
    #[arg(long)]
    defects: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SpheresArgs {
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long, default_value_t = 0.15)]
    r_inner: f64,
    #[arg(long, default_value_t = 0.35)]
    r_outer: f64,
    #[arg(long, default_value_t = 0.05)]
    shell: f64,
    #[arg(long, value_enum, default_value_t = BridgeArg::Above)]
    bridge: BridgeArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BridgeArg {
    Above,
    Below,
}

impl From<BridgeArg> for Bridge {
    fn from(arg: BridgeArg) -> Bridge {
        match arg {
            BridgeArg::Above => Bridge::Above,
            BridgeArg::Below => Bridge::Below,
        }
    }
}

#[derive(Args)]
struct WsGraphArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    /// Ring-lattice degree (even)
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Rewiring probability
    #[arg(long, default_value_t = 0.3)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge list (.csv)
    #[arg(long)]
    out: PathBuf,
}

/// Parses `a,b;c,d;...` into coordinate tuples.
fn parse_coord_list(text: &str, arity: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (at, chunk) in text.split(';').enumerate() {
        let coords: Vec<usize> = chunk
            .split(',')
            .map(|c| c.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("malformed coordinate tuple {chunk:?} (entry {at})"))?;
        ensure!(
            coords.len() == arity,
            "tuple {chunk:?} has {} coordinates, expected {arity}",
            coords.len()
        );
        out.push(coords);
    }
    Ok(out)
}

fn cmd_synth(command: &SynthCommand) -> Result<()> {
    match command {
        SynthCommand::Minima(args) => {
            let centers = match &args.centers {
                Some(text) => parse_coord_list(text, args.shape.len())?,
                None => {
                    let mut rng = SplitRng::new(args.seed).stream(0);
                    let mut centers: Vec<Vec<usize>> = Vec::new();
                    let mut attempts = 0;
                    while centers.len() < args.count {
                        let candidate: Vec<usize> = args
                            .shape
                            .iter()
                            .map(|&extent| rng.random_range(0..extent))
                            .collect();
                        if !centers.contains(&candidate) {
                            centers.push(candidate);
                        }
                        attempts += 1;
                        ensure!(
                            attempts < 10_000,
                            "cannot place {} distinct centers",
                            args.count
                        );
                    }
                    centers
                }
            };
            let field = gaussian_minima_field(&args.shape, &centers, args.depth, args.sigma)?;
            io::save_field(&args.out, &field)?;
        }
        SynthCommand::Lattice(args) => {
            let defects: Vec<(usize, usize)> = match &args.defects {
                Some(text) => parse_coord_list(text, 2)?
                    .into_iter()
                    .map(|c| (c[0], c[1]))
                    .collect(),
                None => Vec::new(),
            };
            let field = lattice_defect_field(&args.shape, args.cell, &defects)?;
            io::save_field(&args.out, &field)?;
        }
        SynthCommand::Spheres(args) => {
            let field = spheres_bridge_field(
                args.grid,
                args.r_inner,
                args.r_outer,
                args.shell,
                args.bridge.into(),
            )?;
            io::save_field(&args.out, &field)?;
        }
        SynthCommand::WsGraph(args) => {
            let mut rng = SplitRng::new(args.seed).stream(0);
            let edges = watts_strogatz(args.n, args.k, args.beta, &mut rng)?;
            let edges: Vec<(u32, u32)> = edges
                .into_iter()
                .map(|(i, j)| (i as u32, j as u32))
                .collect();
            io::save_edges(&args.out, &edges)?;
        }
    }
    let out = match command {
        SynthCommand::Minima(a) => &a.out,
        SynthCommand::Lattice(a) => &a.out,
        SynthCommand::Spheres(a) => &a.out,
        SynthCommand::WsGraph(a) => &a.out,
    };
    outln!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// eigmap

#[derive(Args)]
struct EigmapArgs {
    /// Edge list of the graph
    #[arg(long)]
    edges: PathBuf,
    /// Degrees summed into each heatmap entry
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Use only the first K eigenvectors
    #[arg(long)]
    limit: Option<usize>,
    /// Heatmap CSV destination
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG rendering
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn cmd_eigmap(args: &EigmapArgs) -> Result<()> {
    let (n, edges) = io::load_edges(&args.edges, None)
        .with_context(|| format!("loading {}", args.edges.display()))?;
    let pairs = laplacian_eigenvectors::<f64>(n, &edges)?;
    let keep = args.limit.unwrap_or(pairs.len()).min(pairs.len());
    let functions: Vec<Vec<f64>> = pairs.into_iter().take(keep).map(|p| p.1).collect();
    let map = sftd_heatmap(n, &edges, &functions, &args.dims, args.p)?;

    let mut text = String::new();
    for row in &map {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(path) = &args.svg {
        fs::write(path, svg::heatmap_svg(&map))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    outln!("wrote {} ({keep}x{keep} heatmap)", args.out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// bottleneck

#[derive(Args)]
struct BottleneckArgs {
    /// First barcode report (JSON)
    #[arg(long)]
    a: PathBuf,
    /// Second barcode report (JSON)
    #[arg(long)]
    b: PathBuf,
    /// Homology degree to compare; missing degrees read as empty diagrams
    #[arg(long, default_value_t = 0)]
    dim: usize,
}

fn cmd_bottleneck(args: &BottleneckArgs) -> Result<()> {
    let a = report::diagram_from_report(&args.a, args.dim)?;
    let b = report::diagram_from_report(&args.b, args.dim)?;
    outln!("{}", bottleneck_distance(&a, &b));
    Ok(())
}
