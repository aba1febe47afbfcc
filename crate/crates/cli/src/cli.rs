//! Subcommands of the `cubispin` binary.
//!
//! Machine output is JSON on standard out, diagnostics go to standard error.
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubispin_core::invariants::{crossing_steps, determinant, fox_colorings, project_diagram, Diagram};
use cubispin_core::lattice::{reduce_arc, Lattice1Knot, LatticeArc, ReducedArc};
use cubispin_core::moves::{apply_m2, enumerate_m2, is_weakly_minimal, m1_subdivide, M2Move, Witness};
use cubispin_core::search::{KnottedArc, SearchConstraints, SearchMode, DEFAULT_SPLIT_DEPTH};
use cubispin_core::spin::{
    area_formula, build_cspin, build_rcspin, decompose_pieces, reduced_area_formula, upper_bound_formula, SpunSurface,
};
use cubispin_core::surface::{homothety_factor, CubicalSurface, UnitSquare};
use serde_json::{json, Value};

use crate::export::{export, MeshFormat, Projection};
use crate::formats::{self, ArcInput, FormatError, SCHEMA};
use crate::runner::{self, RunnerConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default worker count for `search` when `--jobs` is absent.
pub const JOBS_ENV: &str = "CUBISPIN_JOBS";

#[derive(Parser, Debug)]
#[command(name = "cubispin", version, about = "Cubical spun 2-knots in the 2-skeleton of the unit cubulation of R^4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cubical arcs.
    #[command(subcommand)]
    Arc(ArcCmd),
    /// Spun surfaces built from arcs.
    #[command(subcommand)]
    Spun(SpunCmd),
    /// Square complexes.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Subdivision and face-boundary moves.
    #[command(subcommand)]
    Moves(MovesCmd),
    /// Knot invariants of a lattice 1-knot.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Constrained enumeration of knotted arcs.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Subcommand, Debug)]
enum ArcCmd {
    /// Check an arc file and print its statistics.
    Validate {
        #[arg(long)]
        arc: PathBuf,
    },
    /// Reduce a λ = 1 arc (half steps at both ends).
    Reduce {
        #[arg(long)]
        arc: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SpinInput {
    /// Arc file; a reduced arc gives the reduced spin.
    #[arg(long)]
    arc: PathBuf,
    /// Reduce a plain arc first and build the reduced spin.
    #[arg(long)]
    reduced: bool,
}

#[derive(Subcommand, Debug)]
enum SpunCmd {
    /// Build the spun surface and write its squares.
    Build {
        #[command(flatten)]
        input: SpinInput,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Closed-form area; with `--both` also the square count of the built surface.
    Area {
        #[command(flatten)]
        input: SpinInput,
        #[arg(long)]
        both: bool,
    },
    /// Pieces of the spun surface merged along runs of equal direction.
    Decompose {
        #[command(flatten)]
        input: SpinInput,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
    Obj,
    Off,
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Check that a square set is an embedded 2-sphere (exit 1 if not).
    Validate {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Write the surface as JSON, or projected to R^3 as OBJ or OFF.
    Export {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, value_enum, default_value = "obj")]
        format: ExportFormat,
        /// Coordinate to forget, 1..=4.
        #[arg(long, default_value_t = 4, conflicts_with = "matrix")]
        drop_axis: usize,
        /// Rational 3x4 matrix "a,b,c,d;e,f,g,h;i,j,k,l".
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum MovesCmd {
    /// Every face-boundary move candidate with its area change and applicability.
    List {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Apply the move with the given index from `moves list`, or subdivide.
    Apply {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, required_unless_present = "subdivide", conflicts_with = "subdivide")]
        index: Option<usize>,
        /// Subdivide every square into m^2 squares.
        #[arg(long)]
        subdivide: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exit 0 when no single move lowers the area, 1 otherwise.
    WeakMinimal {
        #[arg(long)]
        surface: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct KnotInput {
    #[arg(long)]
    knot: Option<PathBuf>,
    /// Arc file, closed in the plane z = 0.
    #[arg(long)]
    arc: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    /// Crossings, writhe, determinant and Fox coloring counts.
    Invariants {
        #[command(flatten)]
        input: KnotInput,
        /// Extra odd primes for Fox colorings, besides 3, 5 and 7.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Height-2 runs crossing over height-1 strands.
    CrossingSteps {
        #[command(flatten)]
        input: KnotInput,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    max_height: i64,
    #[arg(long)]
    max_zsum: i64,
    #[arg(long)]
    max_len: usize,
    /// Footprint `WxD` in lattice columns.
    #[arg(long = "box", value_parser = parse_box)]
    footprint: (i64, i64),
    #[arg(long, env = JOBS_ENV, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Wall-time budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Cap on search-tree nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SPLIT_DEPTH)]
    split_depth: usize,
    /// Include wall time in the JSON report (otherwise it goes to standard error).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Enumerate every admissible arc and report the knotted ones.
    Certify {
        #[command(flatten)]
        args: SearchArgs,
    },
    /// Knotted arc of least reduced spun area.
    Min {
        #[command(flatten)]
        args: SearchArgs,
    },
}

fn parse_box(s: &str) -> Result<(i64, i64), String> {
    let (w, d) = s.split_once(['x', 'X']).ok_or("expected WxD")?;
    let w: i64 = w.trim().parse().map_err(|_| "bad width")?;
    let d: i64 = d.trim().parse().map_err(|_| "bad depth")?;
    if w < 1 || d < 1 {
        return Err("footprint sides must be positive".into());
    }
    Ok((w, d))
}

/// A failed command: exit code and message for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::usage(e)
    }
}

/// Successful output: JSON or raw text, and the exit code.
struct Output {
    body: Body,
    code: i32,
}

enum Body {
    Json(Value),
    Text(String),
    Nothing,
}

impl Output {
    fn json(v: Value) -> Output {
        Output {
            body: Body::Json(v),
            code: EXIT_OK,
        }
    }

    fn with_code(mut self, code: i32) -> Output {
        self.code = code;
        self
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if shown {
                let _ = out.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(text.as_bytes());
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, err) {
        Ok(o) => {
            let written = match o.body {
                Body::Json(v) => out.write_all(formats::to_pretty(&v).as_bytes()),
                Body::Text(t) => out.write_all(t.as_bytes()),
                Body::Nothing => Ok(()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, err: &mut dyn Write) -> Result<Output, Failure> {
    match cmd {
        Command::Arc(c) => arc_cmd(c),
        Command::Spun(c) => spun_cmd(c),
        Command::Surface(c) => surface_cmd(c),
        Command::Moves(c) => moves_cmd(c),
        Command::Knot(c) => knot_cmd(c),
        Command::Search(c) => search_cmd(c, err),
    }
}

fn emit(value: Value, output: Option<&Path>) -> Result<Output, Failure> {
    match output {
        Some(path) => {
            formats::write_text(path, &formats::to_pretty(&value))?;
            Ok(Output {
                body: Body::Nothing,
                code: EXIT_OK,
            })
        }
        None => Ok(Output::json(value)),
    }
}

fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("file records serialise")
}

fn xyz_rows(arc: &LatticeArc) -> Vec<[i64; 3]> {
    arc.vertices().iter().map(|v| [v.x(), v.y(), v.z()]).collect()
}

fn arc_cmd(cmd: ArcCmd) -> Result<Output, Failure> {
    match cmd {
        ArcCmd::Validate { arc } => {
            let v = match formats::read_arc(&arc)? {
                ArcInput::Plain(a) => json!({
                    "schema": SCHEMA,
                    "valid": true,
                    "kind": "arc",
                    "denominator": a.denominator(),
                    "vertex_count": a.len(),
                    "nonzero_vertices": a.len() - 2,
                    "edge_count": a.edge_count(),
                    "z_sum": formats::rational_json(&a.z_sum()),
                    "length": formats::rational_json(&a.length()),
                    "max_height": a.max_height(),
                }),
                ArcInput::Reduced(r) => json!({
                    "schema": SCHEMA,
                    "valid": true,
                    "kind": "reduced_arc",
                    "denominator": ReducedArc::DENOMINATOR,
                    "vertex_count": r.len(),
                    "nonzero_vertices": r.len() - 2,
                    "edge_count": r.len() - 1,
                    "z_sum": formats::rational_json(&r.z_sum()),
                    "length": formats::rational_json(&r.length()),
                }),
            };
            Ok(Output::json(v))
        }
        ArcCmd::Reduce { arc, output } => {
            let a = plain_arc(&arc)?;
            let r = reduce_arc(&a).map_err(Failure::usage)?;
            emit(to_value(&formats::reduced_arc_file(&r)), output.as_deref())
        }
    }
}

fn plain_arc(path: &Path) -> Result<LatticeArc, Failure> {
    match formats::read_arc(path)? {
        ArcInput::Plain(a) => Ok(a),
        ArcInput::Reduced(_) => Err(Failure::usage(format!("{} holds a reduced arc; a plain arc is needed", path.display()))),
    }
}

fn build(input: &SpinInput) -> Result<SpunSurface, Failure> {
    let spun = match formats::read_arc(&input.arc)? {
        ArcInput::Plain(a) if input.reduced => build_rcspin(&reduce_arc(&a).map_err(Failure::usage)?),
        ArcInput::Plain(a) => build_cspin(&a),
        ArcInput::Reduced(r) => build_rcspin(&r),
    };
    spun.map_err(Failure::usage)
}

fn spun_cmd(cmd: SpunCmd) -> Result<Output, Failure> {
    match cmd {
        SpunCmd::Build { input, output } => {
            let spun = build(&input)?;
            emit(to_value(&formats::surface_file(spun.surface())), output.as_deref())
        }
        SpunCmd::Area { input, both } => {
            let (formula, upper) = match formats::read_arc(&input.arc)? {
                ArcInput::Plain(a) if input.reduced => {
                    let r = reduce_arc(&a).map_err(Failure::usage)?;
                    (json!(reduced_area_formula(&r)), upper_bound_formula(&a))
                }
                ArcInput::Plain(a) => (formats::rational_json(&area_formula(&a)), upper_bound_formula(&a)),
                ArcInput::Reduced(r) => (json!(reduced_area_formula(&r)), None),
            };
            let mut v = json!({ "schema": SCHEMA, "formula": formula });
            if let Some(u) = upper {
                v["upper_bound"] = json!(u);
            }
            if both {
                let count = build(&input)?.area();
                v["count"] = json!(count);
                v["equal"] = json!(formula == json!(count));
            }
            Ok(Output::json(v))
        }
        SpunCmd::Decompose { input } => {
            let spun = build(&input)?;
            let pieces: Vec<Value> = decompose_pieces(&spun)
                .iter()
                .map(|p| {
                    json!({
                        "label": p.label,
                        "kind": p.kind.name(),
                        "edges": [p.edges.start, p.edges.end],
                        "area": p.area,
                    })
                })
                .collect();
            Ok(Output::json(json!({
                "schema": SCHEMA,
                "pieces": pieces,
                "total": spun.area(),
            })))
        }
    }
}

fn surface_json(s: &CubicalSurface) -> Value {
    let r = s.report();
    json!({
        "schema": SCHEMA,
        "denominator": s.denominator(),
        "area": s.area(),
        "sphere": r.sphere,
        "closed": r.closed,
        "manifold": r.manifold,
        "connected": r.connected,
        "vertices": r.vertex_count,
        "edges": r.edge_count,
        "euler_characteristic": r.euler_characteristic,
        "bad_edges": r.bad_edges.iter().take(20).map(|(e, d)| json!({
            "endpoints": e.endpoints(),
            "degree": d,
        })).collect::<Vec<_>>(),
        "bad_vertices": r.bad_vertices.iter().take(20).collect::<Vec<_>>(),
        "homothety_factor": homothety_factor(s).factor,
    })
}

fn surface_cmd(cmd: SurfaceCmd) -> Result<Output, Failure> {
    match cmd {
        SurfaceCmd::Validate { surface } => {
            let s = formats::read_surface(&surface)?;
            let code = if s.is_sphere() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Output::json(surface_json(&s)).with_code(code))
        }
        SurfaceCmd::Export {
            surface,
            format,
            drop_axis,
            matrix,
            output,
        } => {
            let s = formats::read_surface(&surface)?;
            let text = match format {
                ExportFormat::Json => formats::to_pretty(&formats::surface_file(&s)),
                ExportFormat::Obj | ExportFormat::Off => {
                    let projection = match matrix {
                        Some(m) => Projection::parse_matrix(&m),
                        None => Projection::drop_axis(drop_axis),
                    }
                    .map_err(Failure::usage)?;
                    let f = if matches!(format, ExportFormat::Obj) { MeshFormat::Obj } else { MeshFormat::Off };
                    export(&s, &projection, f)
                }
            };
            match output {
                Some(path) => {
                    formats::write_text(&path, &text)?;
                    Ok(Output {
                        body: Body::Nothing,
                        code: EXIT_OK,
                    })
                }
                None => Ok(Output {
                    body: Body::Text(text),
                    code: EXIT_OK,
                }),
            }
        }
    }
}

fn squares_json<'a>(squares: impl IntoIterator<Item = &'a UnitSquare>) -> Vec<Value> {
    squares.into_iter().map(|s| to_value(&formats::square_record(s))).collect()
}

fn move_json(index: usize, m: &M2Move) -> Value {
    json!({
        "index": index,
        "cube": {
            "base": m.cube.base(),
            "axes": m.cube.axes().map(|a| a + 1),
        },
        "p": m.p(),
        "delta_area": m.delta_area(),
        "applicable": m.applicable,
        "patch_a": squares_json(&m.patch_a),
        "patch_b": squares_json(&m.patch_b),
    })
}

fn moves_cmd(cmd: MovesCmd) -> Result<Output, Failure> {
    match cmd {
        MovesCmd::List { surface } => {
            let s = formats::read_surface(&surface)?;
            let moves = enumerate_m2(&s);
            Ok(Output::json(json!({
                "schema": SCHEMA,
                "area": s.area(),
                "moves": moves.iter().enumerate().map(|(i, m)| move_json(i, m)).collect::<Vec<_>>(),
            })))
        }
        MovesCmd::Apply {
            surface,
            index,
            subdivide,
            output,
        } => {
            let s = formats::read_surface(&surface)?;
            if let Some(m) = subdivide {
                if m < 1 {
                    return Err(Failure::usage("--subdivide must be at least 1"));
                }
                return emit(to_value(&formats::surface_file(&m1_subdivide(&s, m))), output.as_deref());
            }
            let index = index.expect("clap requires --index or --subdivide");
            let moves = enumerate_m2(&s);
            let mv = moves
                .get(index)
                .ok_or_else(|| Failure::usage(format!("move index {index} out of range ({} moves)", moves.len())))?;
            match apply_m2(&s, mv) {
                Ok(t) => emit(to_value(&formats::surface_file(&t)), output.as_deref()),
                Err(e) => Err(Failure {
                    code: EXIT_NEGATIVE,
                    message: format!("move {index} is not applicable: {e}"),
                }),
            }
        }
        MovesCmd::WeakMinimal { surface } => {
            let s = formats::read_surface(&surface)?;
            if !s.is_sphere() {
                return Err(Failure::usage(format!("{} is not an embedded 2-sphere", surface.display())));
            }
            let w = is_weakly_minimal(&s);
            let witness = match &w.witness {
                None => Value::Null,
                Some(Witness::Homothety(k)) => json!({ "homothety": k }),
                Some(Witness::Move(m)) => {
                    let index = enumerate_m2(&s).iter().position(|x| x == m);
                    json!({ "move": move_json(index.unwrap_or(usize::MAX), m) })
                }
            };
            let v = json!({
                "schema": SCHEMA,
                "area": s.area(),
                "weakly_minimal": w.verdict,
                "homothety_factor": homothety_factor(&s).factor,
                "cubes_checked": w.cubes_checked,
                "witness": witness,
            });
            Ok(Output::json(v).with_code(if w.verdict { EXIT_OK } else { EXIT_NEGATIVE }))
        }
    }
}

fn read_knot(input: &KnotInput) -> Result<Lattice1Knot, Failure> {
    match (&input.knot, &input.arc) {
        (Some(k), _) => Ok(formats::read_knot(k)?),
        (None, Some(a)) => {
            let arc = match formats::read_arc(a)? {
                ArcInput::Plain(arc) => arc,
                ArcInput::Reduced(r) => r.unreduce(),
            };
            if arc.denominator() != 1 {
                return Err(Failure::usage("only arcs with denominator 1 can be closed into a lattice knot"));
            }
            Lattice1Knot::close_arc(&arc).map_err(Failure::usage)
        }
        (None, None) => Err(Failure::usage("one of --knot or --arc is required")),
    }
}

fn diagram_json(d: &Diagram) -> Value {
    json!({
        "direction": [d.direction.p, d.direction.r, d.direction.q],
        "crossings": d.crossing_count(),
        "writhe": d.writhe(),
        "arcs": d.arcs,
    })
}

fn knot_cmd(cmd: KnotCmd) -> Result<Output, Failure> {
    match cmd {
        KnotCmd::Invariants { input, primes } => {
            let knot = read_knot(&input)?;
            let d = project_diagram(&knot).map_err(Failure::usage)?;
            let det = determinant(&d).map_err(Failure::usage)?;
            let mut all = vec![3, 5, 7];
            all.extend(primes);
            all.sort_unstable();
            all.dedup();
            let mut fox = serde_json::Map::new();
            for p in all {
                let n = fox_colorings(&d, p).map_err(Failure::usage)?;
                fox.insert(p.to_string(), json!(n.to_string()));
            }
            Ok(Output::json(json!({
                "schema": SCHEMA,
                "vertices": knot.len(),
                "diagram": diagram_json(&d),
                "determinant": det.to_string(),
                "fox_colorings": fox,
                "knotted": det != 1,
            })))
        }
        KnotCmd::CrossingSteps { input } => {
            let knot = read_knot(&input)?;
            let steps: Vec<Value> = crossing_steps(&knot)
                .iter()
                .map(|s| {
                    json!({
                        "run": s.run,
                        "flank": [s.flank.0, s.flank.1],
                        "under": s.under,
                        "under_strand": s.under_strand,
                        "vertex_count": s.vertex_count(),
                    })
                })
                .collect();
            let mut union: Vec<usize> = crossing_steps(&knot).iter().flat_map(|s| s.vertices()).collect();
            union.sort_unstable();
            union.dedup();
            Ok(Output::json(json!({
                "schema": SCHEMA,
                "steps": steps,
                "union_vertex_count": union.len(),
            })))
        }
    }
}

fn knotted_json(k: &KnottedArc) -> Value {
    json!({
        "arc": k.arc,
        "determinant": k.determinant.to_string(),
        "zsum": k.zsum,
        "vertex_count": k.vertex_count,
        "nonzero_vertices": k.nonzero_vertices,
        "cycle_len": k.cycle_len,
        "reduced_area": k.reduced_area,
        "cspin_area": k.cspin_area,
    })
}

fn search_cmd(cmd: SearchCmd, err: &mut dyn Write) -> Result<Output, Failure> {
    let (args, mode, require_knotted) = match cmd {
        SearchCmd::Certify { args } => (args, SearchMode::Certify, false),
        SearchCmd::Min { args } => (args, SearchMode::Minimize, true),
    };
    let c = SearchConstraints {
        max_height: args.max_height,
        max_zsum: args.max_zsum,
        max_len: args.max_len,
        footprint: args.footprint,
        require_knotted,
    };
    c.validate().map_err(Failure::usage)?;
    let time_budget = match args.time_budget {
        Some(t) if !(t > 0.0 && t.is_finite()) => return Err(Failure::usage("--time-budget must be positive")),
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    if args.node_budget == Some(0) {
        return Err(Failure::usage("--node-budget must be positive"));
    }
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs must be positive"));
    }
    let cfg = RunnerConfig {
        jobs: args.jobs,
        split_depth: args.split_depth.max(1),
        checkpoint: args.checkpoint.clone(),
        time_budget,
        node_budget: args.node_budget,
    };
    let report = runner::run(&c, mode, &cfg).map_err(Failure::usage)?;
    let wall = report.wall_time_ms.unwrap_or(0);
    let _ = writeln!(
        err,
        "search: {} arcs, {} nodes, {}/{} subtasks, {} ms",
        report.cycles_enumerated, report.nodes, report.subtasks_done, report.subtasks_total, wall
    );
    let mut v = json!({
        "schema": SCHEMA,
        "mode": if mode == SearchMode::Certify { "certify" } else { "min" },
        "constraints": {
            "max_height": c.max_height,
            "max_zsum": c.max_zsum,
            "max_len": c.max_len,
            "footprint": [c.footprint.0, c.footprint.1],
            "require_knotted": c.require_knotted,
        },
        "cycles_enumerated": report.cycles_enumerated,
        "nodes": report.nodes,
        "knotted_found": report.knotted_found.iter().map(knotted_json).collect::<Vec<_>>(),
        "min_reduced_area": report.min_reduced_area,
        "assumptions": report.assumptions,
        "subtasks_total": report.subtasks_total,
        "subtasks_done": report.subtasks_done,
        "complete": report.complete,
    });
    if args.timing {
        v["wall_time_ms"] = json!(wall);
    }
    if !report.complete {
        let _ = writeln!(err, "search: budget exhausted; rerun with the same --checkpoint to resume");
        return Ok(Output::json(v).with_code(EXIT_BUDGET));
    }
    if mode == SearchMode::Minimize {
        match report.knotted_found.first() {
            Some(best) => {
                let arc = best.lattice_arc();
                let cspin = build_cspin(&arc).map_err(Failure::usage)?.area();
                let rcspin = build_rcspin(&reduce_arc(&arc).map_err(Failure::usage)?).map_err(Failure::usage)?.area();
                v["best"] = json!({
                    "arc": xyz_rows(&arc),
                    "cspin_area": cspin,
                    "rcspin_area": rcspin,
                });
            }
            None => {
                let _ = writeln!(err, "search: no knotted arc within the constraints");
                return Ok(Output::json(v).with_code(EXIT_NEGATIVE));
            }
        }
    }
    Ok(Output::json(v))
}
