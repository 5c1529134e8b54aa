//! The `q4d` command line. [`run`] does all the work and returns the exit
//! code with captured output, so tests never spawn a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use q4d_core::algebra::AbelianGroup;
use q4d_core::braid::BraidWord;
use q4d_core::constructions::{lens_diagram, mutual_braid_move, spun_diagram, sum, SumMode};
use q4d_core::cover::{
    branched_cover_homology_with, cyclic_genus_bound, lift_surface_group, lifted_names, riemann_hurwitz_genus,
    PermutationRep, TreePolicy,
};
use q4d_core::format::{parse_braid_word, parse_diagram, parse_rho, write_diagram, write_rho};
use q4d_core::heegaard::extract_heegaard;
use q4d_core::presentation::{link_group, sphere_group, tangle_group};
use q4d_core::surface::build_surface_complex;
use q4d_core::tangle::FourPlaneDiagram;
use q4d_core::validate::{validate_diagram, CheckKind, Outcome};
use q4d_core::Error;

mod json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "q4d", version, about = "Exact computations on 4-plane diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Diagram file (.q4d).
    diagram: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Policy {
    Bfs,
    BfsReversed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Necessary conditions (a)-(c) and the Tietze heuristic (d).
    Validate(Common),
    /// Central surface: Euler characteristic, genus, orientability, counts.
    Surface(Common),
    /// Extended Heegaard diagram and H1 of the 3-manifold.
    Heegaard {
        #[command(flatten)]
        common: Common,
        /// Spine order as four 1-based tangle indices, e.g. 1,2,3,4.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
        order: Vec<usize>,
    },
    /// Sphere, tangle and pairwise link group presentations.
    Presentations(Common),
    /// Lagrangians and homology H0..H5 of a branched cover.
    Cover {
        #[command(flatten)]
        common: Common,
        /// Representation file (.rho).
        #[arg(long)]
        rho: PathBuf,
        /// Spanning-tree policy for the lifted surface.
        #[arg(long, value_enum, default_value_t = Policy::Bfs)]
        tree: Policy,
    },
    /// Riemann-Hurwitz genus of the cover surface, with the cyclic bound.
    Rh {
        #[command(flatten)]
        common: Common,
        /// Representation file (.rho).
        #[arg(long)]
        rho: PathBuf,
    },
    /// Generate a diagram.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Apply a move to a diagram.
    Move {
        #[command(subcommand)]
        what: Move,
    },
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// Spin of the plat closure of a braid.
    Spun {
        /// Strand count of the braid (even).
        #[arg(long)]
        strands: usize,
        /// Braid word such as "s2 s2 s2".
        #[arg(short, long, default_value = "", allow_hyphen_values = true)]
        word: String,
        /// Wrap the diagram text in a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Lens space L(p,1).
    Lens {
        /// Order of the first homology.
        #[arg(short)]
        p: usize,
        /// Wrap the diagram text in a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Distant or connected sum of two diagrams.
    Sum {
        first: PathBuf,
        second: PathBuf,
        /// Merge the last puncture of the first diagram with the first of
        /// the second (plat inputs only).
        #[arg(long)]
        connected: bool,
        /// Wrap the diagram text in a JSON report.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Move {
    /// Append the same braid to all four tangles.
    Braid {
        #[command(flatten)]
        common: Common,
        /// Braid word on 2b strands.
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        /// Representation to transport along the move.
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Where to write the transported representation.
        #[arg(long, requires = "rho")]
        rho_out: Option<PathBuf>,
    },
}

/// Exit code plus what would go to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    /// Parse errors are usage errors; every other library error means the
    /// input was well-formed but mathematically rejected.
    fn from_core(context: &str, e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) {
            EXIT_USAGE
        } else {
            EXIT_INVALID
        };
        Failure {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

type CmdResult = std::result::Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Report { code, stdout, stderr };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Report {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Report {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Validate(c) => validate(&c),
        Command::Surface(c) => surface(&c),
        Command::Heegaard { common, order } => heegaard(&common, &order),
        Command::Presentations(c) => presentations(&c),
        Command::Cover { common, rho, tree } => cover(&common, &rho, tree),
        Command::Rh { common, rho } => rh(&common, &rho),
        Command::Gen { what } => generate(what),
        Command::Move {
            what:
                Move::Braid {
                    common,
                    word,
                    rho,
                    rho_out,
                },
        } => braid_move(&common, &word, rho.as_deref(), rho_out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FourPlaneDiagram, Failure> {
    parse_diagram(&read(path)?).map_err(|e| Failure::from_core(&path.display().to_string(), e))
}

fn load_rho(path: &Path, d: &FourPlaneDiagram) -> Result<PermutationRep, Failure> {
    parse_rho(&read(path)?, d.punctures()).map_err(|e| Failure::from_core(&path.display().to_string(), e))
}

fn core<T>(r: q4d_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let code = if matches!(e, Error::Parse { .. }) {
            EXIT_USAGE
        } else {
            EXIT_INVALID
        };
        Failure {
            code,
            message: e.to_string(),
        }
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    json::render(v)
}

fn validate(c: &Common) -> CmdResult {
    let d = load(&c.diagram)?;
    let r = core(validate_diagram(&d))?;
    let code = if r.passed() { EXIT_OK } else { EXIT_INVALID };
    if c.json {
        let checks = r
            .checks
            .iter()
            .map(|k| json::CheckJson {
                label: k.label.to_string(),
                kind: match k.kind {
                    CheckKind::Necessary => "necessary",
                    CheckKind::Heuristic => "heuristic",
                },
                name: k.name.clone(),
                outcome: match k.outcome {
                    Outcome::Pass => "pass",
                    Outcome::Fail => "fail",
                    Outcome::Skipped => "skipped",
                },
                detail: k.detail.clone(),
            })
            .collect();
        let rep = json::ValidateReport {
            command: "validate",
            bridges: r.bridges,
            passed: r.passed(),
            checks,
        };
        return Ok((code, to_json(&rep)));
    }
    let verdict = if r.passed() { "valid" } else { "INVALID" };
    Ok((code, format!("{r}{verdict}: {} bridges\n", r.bridges)))
}

fn surface(c: &Common) -> CmdResult {
    let d = load(&c.diagram)?;
    let s = core(build_surface_complex(&d))?;
    let homology = s.homology();
    if c.json {
        let rep = json::SurfaceReport {
            command: "surface",
            bridges: s.bridges,
            vertices: s.vertex_count(),
            edges: s.edges.len(),
            faces: s.faces.len(),
            euler_characteristic: s.euler_characteristic,
            components: s.components,
            orientable: s.orientable,
            genus: s.genus,
            pair_counts: s.pair_counts,
            triple_counts: s.triple_counts,
            homology: json::groups(&homology),
        };
        return Ok((EXIT_OK, to_json(&rep)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "bridges: {}", s.bridges);
    let _ = writeln!(
        out,
        "cells: {} vertices, {} edges, {} faces",
        s.vertex_count(),
        s.edges.len(),
        s.faces.len()
    );
    let _ = writeln!(out, "euler characteristic: {}", s.euler_characteristic);
    let _ = writeln!(out, "components: {}", s.components);
    let _ = writeln!(out, "orientable: {}", s.orientable);
    let _ = writeln!(out, "genus: {}", s.genus);
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let _ = writeln!(out, "c{}{}: {}", i + 1, j + 1, s.pair_counts[i][j]);
    }
    for (i, t) in s.triple_counts.iter().enumerate() {
        let _ = writeln!(out, "s{}: {t}", i + 1);
    }
    let _ = writeln!(out, "homology: {}", join(&homology));
    Ok((EXIT_OK, out))
}

fn join(gs: &[AbelianGroup]) -> String {
    gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

fn heegaard(c: &Common, order: &[usize]) -> CmdResult {
    if order.len() != 4 {
        return Err(Failure::usage("--order must be a permutation of 1,2,3,4"));
    }
    let mut spine = [0usize; 4];
    for (k, &o) in order.iter().enumerate() {
        if !(1..=4).contains(&o) || order[..k].contains(&o) {
            return Err(Failure::usage("--order must be a permutation of 1,2,3,4"));
        }
        spine[k] = o - 1;
    }
    let d = load(&c.diagram)?;
    let h = core(extract_heegaard(&d, spine))?;
    let one_based = spine.map(|i| i + 1);
    if c.json {
        let rep = json::HeegaardReport {
            command: "heegaard",
            order: one_based,
            h1: json::group(&h.h1),
            euler_characteristic: h.surface.euler_characteristic,
            orientable: h.surface.orientable,
            genus: h.surface.genus,
            alpha: h.alpha.iter().map(Into::into).collect(),
            beta: h.beta.iter().map(Into::into).collect(),
            q: json::matrix(&h.q),
            q_modulus: h.q_modulus,
        };
        return Ok((EXIT_OK, to_json(&rep)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "H1: {}", h.h1);
    let _ = writeln!(out, "order: {one_based:?}");
    let _ = writeln!(
        out,
        "surface: euler characteristic {}, genus {}, {}",
        h.surface.euler_characteristic,
        h.surface.genus,
        if h.surface.orientable {
            "orientable"
        } else {
            "non-orientable"
        }
    );
    for (name, curves) in [("alpha", &h.alpha), ("beta", &h.beta)] {
        for (k, cv) in curves.iter().enumerate() {
            let _ = writeln!(out, "{name}{}: {:?}", k + 1, cv.punctures);
        }
    }
    match h.q_modulus {
        Some(m) => {
            let _ = writeln!(out, "Q (mod {m}):");
        }
        None => {
            let _ = writeln!(out, "Q:");
        }
    }
    for row in json::matrix(&h.q) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    Ok((EXIT_OK, out))
}

fn presentations(c: &Common) -> CmdResult {
    let d = load(&c.diagram)?;
    let sphere = sphere_group(d.bridges());
    let tangles: Vec<_> = d.tangles().iter().map(tangle_group).collect();
    let mut links = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        links.push(([i + 1, j + 1], core(link_group(d.tangle(i), d.tangle(j)))?));
    }
    if c.json {
        let rep = json::PresentationsReport {
            command: "presentations",
            sphere: (&sphere).into(),
            tangles: tangles.iter().map(Into::into).collect(),
            links: links
                .iter()
                .map(|(pair, g)| json::LinkJson {
                    pair: *pair,
                    group: g.into(),
                })
                .collect(),
        };
        return Ok((EXIT_OK, to_json(&rep)));
    }
    let mut out = String::new();
    let _ = write!(out, "# sphere\n{}\n", sphere.to_text());
    for (k, g) in tangles.iter().enumerate() {
        let _ = write!(out, "# tangle {}\n{}\n", k + 1, g.to_text());
    }
    for ([i, j], g) in &links {
        let _ = write!(out, "# link {i} {j}\n{}\n", g.to_text());
    }
    Ok((EXIT_OK, out))
}

fn cover(c: &Common, rho_path: &Path, tree: Policy) -> CmdResult {
    let d = load(&c.diagram)?;
    let rho = load_rho(rho_path, &d)?;
    let policy = match tree {
        Policy::Bfs => TreePolicy::BreadthFirst,
        Policy::BfsReversed => TreePolicy::BreadthFirstReversed,
    };
    let h = core(branched_cover_homology_with(&d, &rho, policy))?;
    let names = lifted_names(d.punctures(), rho.sheets());
    let basis: Option<Vec<String>> = h
        .data
        .abelianization
        .basis_generators
        .as_ref()
        .map(|b| b.iter().map(|&g| names[g].clone()).collect());
    if c.json {
        let rep = json::CoverReport {
            command: "cover",
            sheets: rho.sheets(),
            genus: h.data.genus,
            basis_generators: basis,
            lagrangians: h.data.lagrangians.iter().map(json::lattice).collect(),
            ranks: h.complex.ranks().to_vec(),
            h: json::groups(&h.homology),
        };
        return Ok((EXIT_OK, to_json(&rep)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "sheets: {}", rho.sheets());
    let _ = writeln!(out, "cover surface genus: {}", h.data.genus);
    if let Some(b) = &basis {
        let _ = writeln!(out, "H1 basis: {}", b.join(" "));
    }
    for (k, l) in h.data.lagrangians.iter().enumerate() {
        let _ = writeln!(out, "L{}:", k + 1);
        for v in json::lattice(l) {
            let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "  ({})", cells.join(", "));
        }
    }
    let _ = writeln!(out, "chain ranks: {:?}", h.complex.ranks());
    for (k, g) in h.homology.iter().enumerate() {
        let _ = writeln!(out, "H{k}: {g}");
    }
    Ok((EXIT_OK, out))
}

fn rh(c: &Common, rho_path: &Path) -> CmdResult {
    let d = load(&c.diagram)?;
    let rho = load_rho(rho_path, &d)?;
    let b = d.bridges();
    let genus = core(riemann_hurwitz_genus(b, &rho))?;
    let lifted = core(lift_surface_group(b, &rho))?.abelianization().group;
    let agree = lifted.torsion.is_empty() && lifted.free_rank == 2 * genus;
    let bound = cyclic_genus_bound(b, rho.sheets());
    let code = if agree { EXIT_OK } else { EXIT_INVALID };
    if c.json {
        let rep = json::RhReport {
            command: "rh",
            bridges: b,
            sheets: rho.sheets(),
            genus,
            lifted_rank: lifted.free_rank,
            agree,
            cyclic_bound: bound,
        };
        return Ok((code, to_json(&rep)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "genus: {genus}");
    let _ = writeln!(out, "lifted surface group abelianization: {lifted}");
    let _ = writeln!(out, "cyclic bound: {bound}");
    if !agree {
        let _ = writeln!(out, "MISMATCH: formula and lifted rank disagree");
    }
    Ok((code, out))
}

fn emit(d: &FourPlaneDiagram, rho: Option<&PermutationRep>, as_json: bool, command: &'static str) -> String {
    if as_json {
        return to_json(&json::DiagramReport {
            command,
            label: d.label().map(str::to_string),
            bridges: d.bridges(),
            diagram: write_diagram(d),
            rho: rho.map(write_rho),
        });
    }
    write_diagram(d)
}

fn word(text: &str, strands: usize) -> Result<BraidWord, Failure> {
    parse_braid_word(text, strands).map_err(|e| Failure::from_core("braid word", e))
}

fn generate(what: Gen) -> CmdResult {
    let (d, json) = match what {
        Gen::Spun { strands, word: w, json } => {
            if strands == 0 || !strands.is_multiple_of(2) {
                return Err(Failure::usage("--strands must be a positive even number"));
            }
            (core(spun_diagram(&word(&w, strands)?))?, json)
        }
        Gen::Lens { p, json } => {
            if p == 0 {
                return Err(Failure::usage("-p must be positive"));
            }
            (core(lens_diagram(p))?, json)
        }
        Gen::Sum {
            first,
            second,
            connected,
            json,
        } => {
            let mode = if connected {
                SumMode::Connected
            } else {
                SumMode::Distant
            };
            (core(sum(&load(&first)?, &load(&second)?, mode))?, json)
        }
    };
    Ok((EXIT_OK, emit(&d, None, json, "gen")))
}

fn braid_move(c: &Common, w: &str, rho_path: Option<&Path>, rho_out: Option<&Path>) -> CmdResult {
    let d = load(&c.diagram)?;
    let w = word(w, d.punctures())?;
    let rho = rho_path.map(|p| load_rho(p, &d)).transpose()?;
    let (moved, rho) = core(mutual_braid_move(&d, &w, rho.as_ref()))?;
    if let (Some(path), Some(r)) = (rho_out, &rho) {
        std::fs::write(path, write_rho(r)).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok((EXIT_OK, emit(&moved, rho.as_ref(), c.json, "move")))
}
