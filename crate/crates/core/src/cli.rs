//! The `chaingeo` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chain::{
    is_antiisomorphism, is_isomorphism, is_jordan_isomorphism, jordan_induced_map, ChainGeometry,
    CrossRatio, JordanMap, CHAIN_POINT_BUDGET,
};
use crate::error::{Error, Result};
use crate::grassmann::{all_subspaces, is_complementary, to_subspace, Subspace};
use crate::lie::{
    apollonius, apollonius_all_orientations, in_contact, lie_form, render_svg, to_pentacyclic,
    CycleJson, DrawStyle, LieCycle, Scene, Solution, UnorientedCircle,
};
use crate::pline::{ProjPoint, ProjectiveLine};
use crate::ring::{make_matrix_ring, parse_ring, Elem, FiniteRing};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "chaingeo",
    version,
    about = "Oriented circle geometry and chain geometries over finite rings"
)]
struct Cli {
    /// Machine-readable JSON output (errors included).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Oriented circles, points and spears in the plane.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Finite rings.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Projective lines over finite rings.
    #[command(subcommand)]
    Pline(PlineCommand),
    /// Chain geometries.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Lines over matrix rings as Grassmannians.
    #[command(subcommand)]
    Grassmann(GrassmannCommand),
    /// Built-in verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
enum LieCommand {
    /// Pentacyclic coordinates of every cycle in a scene.
    Coords { scene: PathBuf },
    /// Oriented contact between two cycles of a scene.
    Contact {
        scene: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Cycles touching the three cycles of a scene.
    Apollonius {
        scene: PathBuf,
        /// Treat the inputs as unoriented circles and try every orientation.
        #[arg(long)]
        all_orientations: bool,
        /// Also draw inputs and solutions to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    /// Size, units, radical and algebra structure of a ring.
    Info {
        spec: String,
        /// Include the full addition and multiplication tables.
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum PlineCommand {
    /// Points of the projective line, in index order.
    Points { spec: String },
    /// The distant graph.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Points with the same distant neighbourhood as R(1,0).
    Radical { spec: String },
}

#[derive(Subcommand, Debug)]
enum ChainCommand {
    /// All chains.
    List {
        spec: String,
        /// The embedded field; must match the ring's algebra structure.
        #[arg(long)]
        field: String,
    },
    /// Cross ratio of four point indices.
    CrossRatio {
        spec: String,
        /// Four point indices, comma separated.
        #[arg(long, value_parser = parse_quadruple)]
        points: [usize; 4],
    },
    /// Check a ring map given as a JSON array of element indices.
    JordanCheck {
        spec: String,
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GrassmannCommand {
    /// Compare the line over M_n(K) with the n-subspaces of K^2n.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Run every check and print a table.
    All,
}

fn parse_quadruple(s: &str) -> std::result::Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<usize>| format!("expected 4 indices, got {}", v.len()))
}

/// What a subcommand produced: text for humans, JSON for `--json`.
struct Output {
    text: String,
    json: Value,
    success: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            success: true,
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                );
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            1
        }
    }
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Lie(c) => lie(c),
        Command::Ring(RingCommand::Info { spec, tables }) => ring_info(spec, *tables),
        Command::Pline(c) => pline(c),
        Command::Chain(c) => chain(c),
        Command::Grassmann(GrassmannCommand::Check { n, field }) => grassmann_check(*n, field),
        Command::Verify(VerifyCommand::All) => verify_all(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_scene(path: &Path) -> Result<Vec<LieCycle>> {
    Scene::from_json(&read(path)?)?.cycles()
}

fn cycle_json(c: &LieCycle) -> Value {
    serde_json::to_value(CycleJson::from(c)).expect("cycle serialises")
}

fn lie(command: &LieCommand) -> Result<Output> {
    match command {
        LieCommand::Coords { scene } => {
            let cycles = load_scene(scene)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, c) in cycles.iter().enumerate() {
                let q = to_pentacyclic(c).coords();
                text.push_str(&format!(
                    "{i}: {c}\n   ({})\n",
                    q.iter()
                        .map(|x| format!("{x}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                rows.push(json!({"cycle": cycle_json(c), "coords": q}));
            }
            Ok(Output::ok(text, json!({ "cycles": rows })))
        }
        LieCommand::Contact { scene, i, j } => {
            let cycles = load_scene(scene)?;
            let get = |k: usize| {
                cycles.get(k).ok_or_else(|| {
                    Error::Domain(format!("scene has {} cycles, no index {k}", cycles.len()))
                })
            };
            let (x, y) = (get(*i)?, get(*j)?);
            let contact = in_contact(x, y);
            let form = lie_form(
                &to_pentacyclic(x).normalized(),
                &to_pentacyclic(y).normalized(),
            );
            Ok(Output::ok(
                format!(
                    "{}\n",
                    if contact {
                        "in contact"
                    } else {
                        "not in contact"
                    }
                ),
                json!({"i": i, "j": j, "contact": contact, "form": form}),
            ))
        }
        LieCommand::Apollonius {
            scene,
            all_orientations,
            svg,
        } => {
            let cycles = load_scene(scene)?;
            if cycles.len() != 3 {
                return Err(Error::Domain(format!(
                    "Apollonius needs exactly 3 cycles, the scene has {}",
                    cycles.len()
                )));
            }
            let (solutions, degeneracy) = if *all_orientations {
                let circles = cycles
                    .iter()
                    .map(|c| match c {
                        LieCycle::Circle(c) => Ok(UnorientedCircle {
                            center: c.center(),
                            radius: c.radius().abs(),
                        }),
                        other => Err(Error::Domain(format!(
                            "--all-orientations needs circles, got a {}",
                            other.kind()
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let r = apollonius_all_orientations(&[circles[0], circles[1], circles[2]])?;
                let deg: Vec<Value> = r
                    .degeneracies
                    .iter()
                    .map(|(signs, d)| json!({"orientations": signs, "degeneracy": d}))
                    .collect();
                (r.solutions, Value::Array(deg))
            } else {
                let r = apollonius(&cycles[0], &cycles[1], &cycles[2])?;
                (r.solutions, json!(r.degeneracy))
            };
            if let Some(path) = svg {
                write_svg(path, &cycles, &solutions)?;
            }
            let mut text = format!("{} solutions\n", solutions.len());
            for s in &solutions {
                let mut flags = Vec::new();
                if s.double {
                    flags.push("double");
                }
                if s.is_degenerate() {
                    flags.push("degenerate");
                }
                let flags = if flags.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", flags.join(", "))
                };
                text.push_str(&format!("  {}{flags}\n", s.cycle));
            }
            if !degeneracy.is_null() && degeneracy != json!([]) {
                text.push_str(&format!("degenerate configuration: {degeneracy}\n"));
            }
            let sols: Vec<Value> = solutions
                .iter()
                .map(|s| {
                    json!({
                        "cycle": cycle_json(&s.cycle),
                        "double": s.double,
                        "degenerate": s.is_degenerate(),
                    })
                })
                .collect();
            Ok(Output::ok(
                text,
                json!({"solutions": sols, "degeneracy": degeneracy}),
            ))
        }
    }
}

fn write_svg(path: &Path, inputs: &[LieCycle], solutions: &[Solution]) -> Result<()> {
    let mut cycles = inputs.to_vec();
    cycles.extend(solutions.iter().map(|s| s.cycle));
    let styles: Vec<DrawStyle> = (0..cycles.len())
        .map(|i| DrawStyle {
            stroke: if i < inputs.len() { "black" } else { "#c0392b" }.into(),
        })
        .collect();
    std::fs::write(path, render_svg(&cycles, &styles))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn ring(spec: &str) -> Result<Arc<FiniteRing>> {
    Ok(Arc::new(parse_ring(spec)?))
}

fn labels(r: &FiniteRing, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| r.label(x).to_string()).collect()
}

fn ring_info(spec: &str, tables: bool) -> Result<Output> {
    let r = ring(spec)?;
    let units = r.units();
    let radical = r.jacobson_radical();
    let algebra = r
        .algebra()
        .map(|a| json!({"field": a.field().name(), "dimension": a.dim()}));
    let mut v = json!({
        "name": r.name(),
        "size": r.size(),
        "commutative": r.is_commutative(),
        "field": r.is_field(),
        "local": r.is_local(),
        "units": units.len(),
        "radical": labels(&r, &radical),
        "radical_size": radical.len(),
        "algebra": algebra,
    });
    if tables {
        v["tables"] = serde_json::to_value(r.tables()).expect("tables serialise");
    }
    let mut text = format!(
        "ring        {}\nsize        {}\nunits       {}\nradical     {} {{{}}}\ncommutative {}\nfield       {}\nlocal       {}\n",
        r.name(),
        r.size(),
        units.len(),
        radical.len(),
        labels(&r, &radical).join(", "),
        r.is_commutative(),
        r.is_field(),
        r.is_local(),
    );
    match r.algebra() {
        Some(a) => text.push_str(&format!(
            "algebra     dimension {} over {}\n",
            a.dim(),
            a.field().name()
        )),
        None => text.push_str("algebra     none\n"),
    }
    if tables {
        text.push_str(&format!("elements    {}\n", r.labels().join(", ")));
    }
    Ok(Output::ok(text, v))
}

fn point_json(line: &ProjectiveLine, i: usize, p: &ProjPoint) -> Value {
    json!({"index": i, "label": line.label(p), "pair": [p.a.0, p.b.0]})
}

fn pline(command: &PlineCommand) -> Result<Output> {
    match command {
        PlineCommand::Points { spec } => {
            let line = ProjectiveLine::new(ring(spec)?)?;
            let mut text = format!("{} points\n", line.len());
            let mut pts = Vec::new();
            for (i, p) in line.points().iter().enumerate() {
                text.push_str(&format!("{i:>4}  {}\n", line.label(p)));
                pts.push(point_json(&line, i, p));
            }
            Ok(Output::ok(
                text,
                json!({"ring": line.ring().name(), "points": pts}),
            ))
        }
        PlineCommand::Graph { spec, format } => {
            let line = ProjectiveLine::new(ring(spec)?)?;
            let g = line.distant_graph();
            let v = g.to_json();
            let text = match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => {
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            };
            Ok(Output::ok(text, v))
        }
        PlineCommand::Radical { spec } => {
            let line = ProjectiveLine::new(ring(spec)?)?;
            let mut text = String::new();
            let mut pts = Vec::new();
            for p in line.radical_points() {
                let i = line.index_of(&p)?;
                text.push_str(&format!("{i:>4}  {}\n", line.label(&p)));
                pts.push(point_json(&line, i, &p));
            }
            Ok(Output::ok(text, json!({"points": pts})))
        }
    }
}

fn chain(command: &ChainCommand) -> Result<Output> {
    match command {
        ChainCommand::List { spec, field } => {
            let r = ring(spec)?;
            let k = parse_ring(field)?;
            let alg = r.require_algebra()?;
            if !k.is_field() || k.size() != alg.field().size() {
                return Err(Error::Domain(format!(
                    "{} is an algebra over {}, not over {}",
                    r.name(),
                    alg.field().name(),
                    k.name()
                )));
            }
            let g = ChainGeometry::new(ProjectiveLine::new(r)?)?;
            let line = g.line();
            let chains = g.all_chains()?;
            let mut text = format!("{} chains\n", chains.len());
            let mut rows = Vec::new();
            for c in &chains {
                let idx: Vec<usize> = c
                    .points()
                    .iter()
                    .map(|p| line.index_of(p))
                    .collect::<Result<_>>()?;
                let names: Vec<String> = c.points().iter().map(|p| line.label(p)).collect();
                text.push_str(&format!("  {}\n", names.join(" ")));
                rows.push(json!({"points": idx, "labels": names}));
            }
            Ok(Output::ok(text, json!({"chains": rows})))
        }
        ChainCommand::CrossRatio { spec, points } => {
            let g = ChainGeometry::new(ProjectiveLine::new(ring(spec)?)?)?;
            let line = g.line();
            let pts = points
                .iter()
                .map(|&i| {
                    if i < line.len() {
                        Ok(line.point(i))
                    } else {
                        Err(Error::Domain(format!(
                            "the line has {} points, no index {i}",
                            line.len()
                        )))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let cr = g.cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])?;
            let on_chain = g
                .chain_through(&pts[0], &pts[1], &pts[2])?
                .contains(&pts[3]);
            let (text, class) = match &cr {
                CrossRatio::Affine(class) => {
                    let names = labels(g.ring(), class);
                    (format!("{{{}}}", names.join(", ")), json!(names))
                }
                CrossRatio::NonAffine => ("non-affine".to_string(), Value::Null),
            };
            Ok(Output::ok(
                format!("cross ratio  {text}\ncommon chain {on_chain}\n"),
                json!({
                    "points": points,
                    "class": class,
                    "meets_field": cr.meets_field(g.ring()),
                    "on_common_chain": on_chain,
                }),
            ))
        }
        ChainCommand::JordanCheck { spec, map } => jordan_check(spec, map),
    }
}

fn jordan_check(spec: &str, map_path: &Path) -> Result<Output> {
    let r = ring(spec)?;
    let raw: Vec<u64> = serde_json::from_str(&read(map_path)?)
        .map_err(|e| Error::Domain(format!("map must be a JSON array of element indices: {e}")))?;
    if raw.len() != r.size() || raw.iter().any(|&x| x as usize >= r.size()) {
        return Err(Error::Domain(format!(
            "map must list {} element indices below {}",
            r.size(),
            r.size()
        )));
    }
    let table: Vec<Elem> = raw.iter().map(|&x| Elem::from(x as usize)).collect();
    let jordan = is_jordan_isomorphism(&r, &r, &table);
    let iso = is_isomorphism(&r, &r, &table);
    let anti = is_antiisomorphism(&r, &r, &table);
    let mut v = json!({
        "jordan": jordan,
        "isomorphism": iso,
        "antiisomorphism": anti,
    });
    let mut text = format!(
        "jordan isomorphism  {jordan}\nisomorphism         {iso}\nantiisomorphism     {anti}\n"
    );
    if jordan {
        let line = ProjectiveLine::new(r.clone())?;
        let jm = JordanMap::new(r.clone(), r.clone(), table)?;
        let induced = jordan_induced_map(&jm, &line, &line)?;
        let bijective = induced.is_bijective(line.len());
        let distant = induced.preserves_distant(&line, &line);
        v["induced"] = json!({
            "images": induced.images,
            "bijective": bijective,
            "preserves_distant": distant,
        });
        text.push_str(&format!(
            "induced map         bijective {bijective}, preserves distant {distant}\n"
        ));
        if r.algebra().is_some() && line.len() <= CHAIN_POINT_BUDGET {
            let g = ChainGeometry::new(line)?;
            let chains = g.all_chains()?;
            let onto = induced.maps_chains_onto(g.line(), g.line(), &chains, &chains)?;
            v["induced"]["maps_chains_onto"] = json!(onto);
            text.push_str(&format!("chains mapped onto  {onto}\n"));
        }
    }
    Ok(Output::ok(text, v))
}

fn grassmann_check(n: usize, field: &str) -> Result<Output> {
    let k = parse_ring(field)?;
    if !k.is_field() {
        return Err(Error::Domain(format!("{} is not a field", k.name())));
    }
    let m = if n == 1 {
        Arc::new(k.clone())
    } else {
        Arc::new(make_matrix_ring(&k, n)?)
    };
    let line = ProjectiveLine::new(m)?;
    let image: Vec<Subspace> = line
        .points()
        .iter()
        .map(|p| to_subspace(&line, p))
        .collect::<Result<_>>()?;
    let mut distinct = image.clone();
    distinct.sort();
    distinct.dedup();
    let field = Arc::new(k);
    let all = all_subspaces(&field, 2 * n, n);
    let bijective = distinct.len() == image.len() && distinct == all;
    let (mut distant, mut complementary, mut mismatches) = (0usize, 0usize, 0usize);
    for i in 0..image.len() {
        for j in i + 1..image.len() {
            let d = line.distant_idx(i, j);
            let c = is_complementary(&image[i], &image[j])?;
            distant += usize::from(d);
            complementary += usize::from(c);
            mismatches += usize::from(d != c);
        }
    }
    let success = bijective && mismatches == 0;
    let text = format!(
        "points               {}\nsubspaces            {}\nbijective            {bijective}\ndistant pairs        {distant}\ncomplementary pairs  {complementary}\nmismatches           {mismatches}\n",
        line.len(),
        all.len()
    );
    Ok(Output {
        text,
        json: json!({
            "points": line.len(),
            "subspaces": all.len(),
            "bijective": bijective,
            "distant_pairs": distant,
            "complementary_pairs": complementary,
            "mismatches": mismatches,
        }),
        success,
    })
}

fn verify_all() -> Result<Output> {
    let reports = verify::run_all();
    let success = reports.iter().all(|r| r.passed);
    Ok(Output {
        text: verify::format_table(&reports),
        json: json!({"checks": reports, "passed": success}),
        success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("chaingeo").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["pline", "graph", "Z4", "--bogus"]).0, 2);
        assert_eq!(run_args(&["nonsense"]).0, 2);
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = run_args(&["ring", "info", "Z(4"]);
        assert_eq!(code, 1);
        assert!(err.contains("position"));
        let (code, out, _) = run_args(&["--json", "ring", "info", "GF(6)"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "parse");
    }

    #[test]
    fn ring_info_dual_numbers() {
        let (code, out, _) = run_args(&["--json", "ring", "info", "GF(2)[e]"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["size"], 4);
        assert_eq!(v["units"], 2);
        assert_eq!(v["radical_size"], 2);
    }

    #[test]
    fn octahedron_graph_json() {
        let (code, out, _) = run_args(&["pline", "graph", "Z4", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 12);
        assert_eq!(
            out,
            run_args(&["pline", "graph", "Z4", "--format", "json"]).1
        );
    }

    #[test]
    fn cross_ratio_needs_four_points() {
        assert_eq!(
            run_args(&["chain", "cross-ratio", "GF(3)[e]", "--points", "0,1,2"]).0,
            2
        );
    }

    #[test]
    fn grassmann_over_gf2() {
        let (code, out, _) = run_args(&[
            "--json",
            "grassmann",
            "check",
            "--n",
            "2",
            "--field",
            "GF(2)",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["points"], 35);
        assert_eq!(v["distant_pairs"], 280);
        assert_eq!(v["complementary_pairs"], 280);
    }
}
