use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use tightspan::closure::{ganter_hasse, poset_statistics, ElementSet, GanterOptions, HasseDiagram, DEFAULT_NODE_CAP};
use tightspan::exactgeom::{
    face_f_vector, face_lattice_closure, fan_closure, format_rational, hull, Encoding, Fan, PointConfig,
};
use tightspan::matroid::{
    connected_components, corank_valuation, is_loopfree, matroid_closure, matroidal_witness, parse_census,
    rank_of, CensusOrder, EdgeWitness, Matroid, Valuation,
};
use tightspan::subdivision::{coordinatize, regular_subdivision, ExtendedTightSpan, HeightFunction, Subdivision};
use tightspan::troplin::{bergman_fan, fvector_report, tropical_linear_space, TropicalLinearSpace, ValuatedMatroid};

#[derive(Parser)]
#[command(name = "tightspan", version, about = "Hasse diagrams of closure systems, tight spans and tropical linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format. `dot` applies to the lattice commands only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Abort an enumeration after this many closed sets (exit code 2).
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    /// Count cell dimensions modulo the whole lineality space.
    #[arg(long, global = true, value_enum, default_value_t = Toggle::On)]
    quotient: Toggle,
    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaArg {
    /// every boundary facet (the tight span of interior cells)
    All,
    /// the faces `x_i = 0` of a 0/1 configuration
    Loops,
    /// no excluded faces
    None,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    #[default]
    Vertex,
    Facet,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    #[default]
    Lex,
    Revlex,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum ScanValuation {
    /// trivial valuation: the Bergman fan
    #[default]
    Bergman,
    /// corank lift on the uniform matroid of the same rank
    Corank,
}

#[derive(Subcommand)]
enum Command {
    /// Face lattice of the hull of a point configuration.
    FaceLattice {
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        encoding: EncodingArg,
    },
    /// Face lattice of a polyhedral fan.
    FanLattice { fan: PathBuf },
    /// Lattice of flats of a matroid.
    Flats { matroid: PathBuf },
    /// Regular subdivision from points and heights, with a matroidality verdict.
    Subdivide { points: PathBuf, heights: PathBuf },
    /// Coordinatized extended tight span of a regular subdivision.
    Tightspan {
        points: PathBuf,
        heights: PathBuf,
        #[arg(long, value_enum, default_value_t = GammaArg::None)]
        gamma: GammaArg,
        /// JSON list of point-index sets; replaces --gamma.
        #[arg(long)]
        gamma_file: Option<PathBuf>,
    },
    /// Tropical linear space of a valuated matroid.
    Tls {
        matroid: PathBuf,
        /// Valuation JSON; when omitted the values are read from the
        /// matroid file (as written by corank-lift).
        valuation: Option<PathBuf>,
    },
    /// Bergman fan of a loop-free matroid.
    Bergman { matroid: PathBuf },
    /// Corank valuation of a matroid on the uniform matroid of its rank.
    CorankLift { matroid: PathBuf },
    /// One f-vector report per census line.
    FvectorScan {
        census: PathBuf,
        /// Ground set size for bare bitstring lines.
        #[arg(long)]
        n: Option<usize>,
        /// Rank for bare bitstring lines.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t)]
        valuation: ScanValuation,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.common, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<tightspan::Error>() {
        Some(tightspan::Error::NodeCap { .. }) => 2,
        _ => 1,
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn run(cli: &Cli) -> Result<Output> {
    let c = &cli.common;
    let opts = GanterOptions { node_cap: c.node_cap, ..GanterOptions::default() };
    let quotient = c.quotient == Toggle::On;
    if c.format == Format::Dot
        && !matches!(cli.command, Command::FaceLattice { .. } | Command::FanLattice { .. } | Command::Flats { .. })
    {
        bail!("--format=dot is only available for face-lattice, fan-lattice and flats");
    }
    Ok(match &cli.command {
        Command::FaceLattice { polytope, encoding } => {
            let config = PointConfig::from_json(&read(polytope)?)?;
            let h = hull(&config);
            let enc = match encoding {
                EncodingArg::Vertex => Encoding::Vertex,
                EncodingArg::Facet => Encoding::Facet,
            };
            let (diagram, _) = ganter_hasse(&face_lattice_closure(&h, enc), opts)?;
            let f = face_f_vector(&config, &h, &diagram, enc);
            lattice_output(c.format, &diagram, json!({"f_vector": f}))?
        }
        Command::FanLattice { fan } => {
            let fan = Fan::from_json(&read(fan)?)?;
            let (diagram, _) = ganter_hasse(&fan_closure(&fan), opts)?;
            let top = ElementSet::full(diagram.width());
            let mut f = Vec::new();
            for node in diagram.nodes().iter().filter(|n| **n != top) {
                let d = fan.cone_dim(node);
                if f.len() <= d {
                    f.resize(d + 1, 0);
                }
                f[d] += 1;
            }
            lattice_output(c.format, &diagram, json!({"f_vector": f, "lineality_dim": fan.lineality_dim()}))?
        }
        Command::Flats { matroid } => {
            let m = Matroid::from_json(&read(matroid)?)?;
            let (diagram, _) = ganter_hasse(&matroid_closure(&m), GanterOptions { skip_minimality: true, ..opts })?;
            let by_rank = poset_statistics(&diagram, |_, f| rank_of(&m, f) as i64);
            lattice_output(c.format, &diagram, json!({"flats_by_rank": by_rank}))?
        }
        Command::Subdivide { points, heights } => {
            let sub = load_subdivision(points, heights)?;
            let matroidal = zero_one_constant_sum(sub.config()).then(|| matroidal_witness(&sub));
            let mut j = sub.to_json();
            let obj = j.as_object_mut().expect("object");
            match &matroidal {
                None => {
                    obj.insert("matroidal".into(), Value::Null);
                }
                Some(w) => {
                    obj.insert("matroidal".into(), Value::Bool(w.is_none()));
                    obj.insert("witness".into(), w.as_ref().map_or(Value::Null, witness_json));
                }
            }
            match c.format {
                Format::Pretty => pretty_subdivision(&sub, matroidal.as_ref()).into(),
                _ => line(&j).into(),
            }
        }
        Command::Tightspan { points, heights, gamma, gamma_file } => {
            let sub = load_subdivision(points, heights)?;
            let gamma_sets = match gamma_file {
                Some(path) => {
                    let raw: Vec<Vec<usize>> = serde_json::from_str(&read(path)?)?;
                    let n = sub.config().len();
                    if let Some(bad) = raw.iter().flatten().find(|&&i| i >= n) {
                        bail!("gamma refers to point {bad}, but there are only {n} points");
                    }
                    raw.into_iter().map(|g| ElementSet::from_indices(n, g)).collect()
                }
                None => match gamma {
                    GammaArg::None => Vec::new(),
                    GammaArg::All => sub.boundary_facets().to_vec(),
                    GammaArg::Loops => coordinate_faces(sub.config()),
                },
            };
            let span = coordinatize(&sub, &gamma_sets, opts)?;
            match c.format {
                Format::Pretty => pretty_span(&span, quotient).into(),
                _ => line(&span.to_json(quotient)).into(),
            }
        }
        Command::Tls { matroid, valuation } => {
            let text = read(matroid)?;
            let m = Matroid::from_json(&text)?;
            let v = match valuation {
                Some(path) => Valuation::from_json(&m, &read(path)?)?,
                None => Valuation::from_json(&m, &text).context("no valuation file and no values in the matroid file")?,
            };
            let tls = tropical_linear_space(&ValuatedMatroid::new(v)?, opts)?;
            tls_output(c.format, &tls, quotient).into()
        }
        Command::Bergman { matroid } => {
            let m = Matroid::from_json(&read(matroid)?)?;
            let tls = bergman_fan(&m, opts)?;
            tls_output(c.format, &tls, quotient).into()
        }
        Command::CorankLift { matroid } => {
            let m = Matroid::from_json(&read(matroid)?)?;
            let v = corank_valuation(&m);
            let mut j = v.matroid().to_json();
            let obj = j.as_object_mut().expect("object");
            obj.insert("values".into(), v.to_json()["values"].clone());
            line(&j).into()
        }
        Command::FvectorScan { census, n, r, order, valuation, jobs } => {
            let order = match order {
                OrderArg::Lex => CensusOrder::Lex,
                OrderArg::Revlex => CensusOrder::Revlex,
            };
            let text = read(census)?;
            let items: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
                .collect();
            let pool = rayon::ThreadPoolBuilder::new().num_threads((*jobs).max(1)).build()?;
            let results: Vec<ScanLine> = pool.install(|| {
                items
                    .par_iter()
                    .map(|&(no, l)| scan_line(no, l, *n, *r, order, *valuation, opts, quotient))
                    .collect()
            });
            let ok = results.iter().filter(|s| s.ok).count();
            let capped = results.iter().any(|s| s.capped);
            let mut out = String::new();
            for s in &results {
                match c.format {
                    Format::Pretty => out.push_str(&s.pretty),
                    _ => out.push_str(&line(&s.json)),
                }
            }
            let summary = json!({"summary": {"lines": results.len(), "ok": ok, "failed": results.len() - ok}});
            match c.format {
                Format::Pretty => {
                    out.push_str(&format!("{} lines, {} ok, {} failed\n", results.len(), ok, results.len() - ok))
                }
                _ => out.push_str(&line(&summary)),
            }
            Output { text: out, code: if capped { 2 } else { 0 } }
        }
    })
}

fn load_subdivision(points: &Path, heights: &Path) -> Result<Subdivision> {
    let config = PointConfig::from_json(&read(points)?)?;
    let h = HeightFunction::from_json(&read(heights)?)?;
    Ok(regular_subdivision(&config, &h)?)
}

fn zero_one_constant_sum(config: &PointConfig) -> bool {
    let zero = tightspan::exactgeom::rat(0);
    let one = tightspan::exactgeom::rat(1);
    let sums: Vec<usize> = config
        .points()
        .iter()
        .map(|p| if p.iter().all(|x| *x == zero || *x == one) { p.iter().filter(|x| **x == one).count() } else { usize::MAX })
        .collect();
    sums.iter().all(|&s| s != usize::MAX && s == sums[0])
}

/// Point sets `{p : p_i = 0}` that are nonempty proper subsets.
fn coordinate_faces(config: &PointConfig) -> Vec<ElementSet> {
    let zero = tightspan::exactgeom::rat(0);
    let n = config.len();
    (0..config.dim())
        .map(|i| ElementSet::from_indices(n, (0..n).filter(|&p| config.point(p)[i] == zero)))
        .filter(|s| !s.is_empty() && !s.is_full())
        .collect()
}

fn witness_json(w: &EdgeWitness) -> Value {
    json!({
        "cell": w.cell,
        "endpoints": [w.endpoints.0, w.endpoints.1],
        "direction": w.direction.iter().map(format_rational).collect::<Vec<_>>(),
    })
}

fn lattice_output(format: Format, diagram: &HasseDiagram, extra: Value) -> Result<Output> {
    Ok(match format {
        Format::Dot => diagram.to_dot(None).into(),
        Format::Json => {
            let mut j = json!({"hasse": diagram.to_json()});
            for (k, v) in extra.as_object().ok_or_else(|| anyhow!("internal: extra fields"))? {
                j[k] = v.clone();
            }
            line(&j).into()
        }
        Format::Pretty => {
            let mut s = format!("{} closed sets, {} covering arcs\n", diagram.node_count(), diagram.arc_count());
            let heights = diagram.heights();
            let top = heights.iter().copied().max().unwrap_or(0);
            for level in 0..=top {
                let sets: Vec<String> = diagram
                    .nodes()
                    .iter()
                    .zip(&heights)
                    .filter(|(_, &h)| h == level)
                    .map(|(n, _)| set_str(&n.to_vec()))
                    .collect();
                s.push_str(&format!("level {level}: {}\n", sets.join(" ")));
            }
            for (k, v) in extra.as_object().into_iter().flatten() {
                s.push_str(&format!("{k}: {v}\n"));
            }
            s.into()
        }
    })
}

fn set_str(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn vec_str(v: &[usize]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn pretty_subdivision(sub: &Subdivision, matroidal: Option<&Option<EdgeWitness>>) -> String {
    let mut s = String::new();
    s.push_str(&format!("{} maximal cells\n", sub.maximal_cells().len()));
    for (i, c) in sub.maximal_cells().iter().enumerate() {
        s.push_str(&format!("  cell {i}: {}\n", set_str(&c.to_vec())));
    }
    s.push_str(&format!("{} boundary facets\n", sub.boundary_facets().len()));
    for (b, f) in sub.boundary_facets().iter().zip(sub.carrier_facet()) {
        s.push_str(&format!("  {} on facet {f}\n", set_str(&b.to_vec())));
    }
    match matroidal {
        None => s.push_str("matroidal: not a 0/1 configuration of constant sum\n"),
        Some(None) => s.push_str("matroidal: true\n"),
        Some(Some(w)) => s.push_str(&format!("matroidal: false ({w})\n")),
    }
    s
}

fn pretty_span(span: &ExtendedTightSpan, quotient: bool) -> String {
    let mut s = String::new();
    for (i, v) in span.dual_vertices.iter().enumerate() {
        s.push_str(&format!("vertex {i}: ({})\n", v.iter().map(format_rational).collect::<Vec<_>>().join(",")));
    }
    for (i, r) in span.dual_rays.iter().enumerate() {
        s.push_str(&format!("ray {i}: ({})\n", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
    s.push_str(&format!("lineality dim: {}\n", span.lineality_dim()));
    for c in &span.cells {
        s.push_str(&format!("cell dim {}: vertices {} rays {}\n", c.dim, set_str(&c.vertices), set_str(&c.rays)));
    }
    s.push_str(&format!("f-vector: {}\n", vec_str(&span.f_vector(quotient))));
    s.push_str(&format!("bounded f-vector: {}\n", vec_str(&span.bounded_f_vector(quotient))));
    s
}

fn tls_output(format: Format, tls: &TropicalLinearSpace, quotient: bool) -> String {
    match format {
        Format::Pretty => pretty_report(tls, quotient),
        _ => line(&tls.to_json(quotient)),
    }
}

fn pretty_report(tls: &TropicalLinearSpace, quotient: bool) -> String {
    let r = fvector_report(tls, quotient);
    let bounds: Vec<usize> = r.speyer_bounds.iter().map(|&b| b as usize).collect();
    format!(
        "n = {}, r = {}, dim = {}, lineality dim = {}\nf-vector: {}\nbounded f-vector: {}\nSpeyer bounds: {} ({})\n",
        r.n,
        r.r,
        tls.dim(),
        r.lineality_dim,
        vec_str(&r.f_vector),
        vec_str(&r.bounded_f_vector),
        vec_str(&bounds),
        if r.all_within_bound() { "within" } else { "EXCEEDED" }
    )
}

struct ScanLine {
    ok: bool,
    capped: bool,
    json: Value,
    pretty: String,
}

#[allow(clippy::too_many_arguments)]
fn scan_line(
    no: usize,
    text: &str,
    n: Option<usize>,
    r: Option<usize>,
    order: CensusOrder,
    valuation: ScanValuation,
    opts: GanterOptions,
    quotient: bool,
) -> ScanLine {
    let result = (|| -> Result<(Matroid, TropicalLinearSpace)> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let (n, r, bits) = match (tokens.as_slice(), n, r) {
            ([bits], Some(n), Some(r)) => (n, r, *bits),
            ([bits], _, _) => bail!("bare census line {bits:?} needs --n and --r"),
            ([n, r, bits], _, _) => (
                n.parse().with_context(|| format!("bad n {n:?}"))?,
                r.parse().with_context(|| format!("bad r {r:?}"))?,
                *bits,
            ),
            _ => bail!("expected a bitstring or \"n r bitstring\""),
        };
        let m = parse_census(bits, n, r, order)?;
        let tls = match valuation {
            ScanValuation::Bergman => {
                if !is_loopfree(&m) {
                    bail!("matroid has loops {:?}", tightspan::matroid::loops(&m).to_vec());
                }
                bergman_fan(&m, opts)?
            }
            ScanValuation::Corank => tropical_linear_space(&ValuatedMatroid::new(corank_valuation(&m))?, opts)?,
        };
        Ok((m, tls))
    })();
    match result {
        Ok((m, tls)) => {
            let report = fvector_report(&tls, quotient);
            let components = connected_components(&m).len();
            let mut json = serde_json::to_value(&report).expect("serializable");
            json["line"] = json!(no);
            json["ok"] = json!(true);
            json["census"] = json!(m.to_census(order));
            json["dim"] = json!(tls.dim());
            json["components"] = json!(components);
            let pretty = format!(
                "line {no}: n={} r={} dim={} components={} f={} bounded={} bounds={}{}\n",
                report.n,
                report.r,
                tls.dim(),
                components,
                vec_str(&report.f_vector),
                vec_str(&report.bounded_f_vector),
                vec_str(&report.speyer_bounds.iter().map(|&b| b as usize).collect::<Vec<_>>()),
                if report.all_within_bound() { "" } else { " EXCEEDED" }
            );
            ScanLine { ok: true, capped: false, json, pretty }
        }
        Err(e) => {
            let capped = exit_code(&e) == 2;
            let msg = format!("{e:#}");
            ScanLine {
                ok: false,
                capped,
                pretty: format!("line {no}: error: {msg}\n"),
                json: json!({"line": no, "ok": false, "error": msg}),
            }
        }
    }
}
