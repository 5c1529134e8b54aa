//! Report shapes for `--json`. Field order is declaration order, so output is
//! byte-stable for a given input.

use std::io;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use q4d_core::algebra::{AbelianGroup, FPGroup, IntegerMatrix, Lattice};
use q4d_core::heegaard::Curve;

/// One top-level field per line; everything nested stays on that line.
#[derive(Default)]
struct LineFormatter {
    depth: usize,
}

impl Formatter for LineFormatter {
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth += 1;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth -= 1;
        w.write_all(b"]")
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth += 1;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth -= 1;
        if self.depth == 0 {
            w.write_all(b"\n}")
        } else {
            w.write_all(b"}")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.depth == 1 {
            w.write_all(b"\n  ")?;
        }
        Ok(())
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn render<T: Serialize>(v: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, LineFormatter::default());
    v.serialize(&mut ser).expect("reports serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Integers that fit in `i64` are numbers, anything larger a decimal string.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

/// `[free_rank, [torsion...]]`.
pub fn group(g: &AbelianGroup) -> Value {
    Value::Array(vec![
        Value::from(g.free_rank),
        Value::Array(g.torsion.iter().map(int).collect()),
    ])
}

pub fn groups(gs: &[AbelianGroup]) -> Vec<Value> {
    gs.iter().map(group).collect()
}

pub fn matrix(m: &IntegerMatrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(int).collect()).collect()
}

/// Basis vectors, one per column of the lattice basis.
pub fn lattice(l: &Lattice) -> Vec<Vec<Value>> {
    l.basis_vectors().iter().map(|v| v.iter().map(int).collect()).collect()
}

#[derive(Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub abelianization: Value,
}

impl From<&FPGroup> for Presentation {
    fn from(g: &FPGroup) -> Self {
        Presentation {
            generators: g.generators().to_vec(),
            relators: g.relators().iter().map(|r| r.render(g.generators())).collect(),
            abelianization: group(&g.abelianization().group),
        }
    }
}

#[derive(Serialize)]
pub struct CurveJson {
    pub punctures: Vec<usize>,
    pub edges: Vec<(usize, bool)>,
}

impl From<&Curve> for CurveJson {
    fn from(c: &Curve) -> Self {
        CurveJson {
            punctures: c.punctures.clone(),
            edges: c.edges.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub label: String,
    pub kind: &'static str,
    pub name: String,
    pub outcome: &'static str,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub bridges: usize,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize)]
pub struct SurfaceReport {
    pub command: &'static str,
    pub bridges: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub components: usize,
    pub orientable: bool,
    pub genus: usize,
    pub pair_counts: [[usize; 4]; 4],
    pub triple_counts: [usize; 4],
    pub homology: Vec<Value>,
}

#[derive(Serialize)]
pub struct HeegaardReport {
    pub command: &'static str,
    pub order: [usize; 4],
    #[serde(rename = "H1")]
    pub h1: Value,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub genus: usize,
    pub alpha: Vec<CurveJson>,
    pub beta: Vec<CurveJson>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Value>>,
    pub q_modulus: Option<u32>,
}

#[derive(Serialize)]
pub struct LinkJson {
    pub pair: [usize; 2],
    #[serde(flatten)]
    pub group: Presentation,
}

#[derive(Serialize)]
pub struct PresentationsReport {
    pub command: &'static str,
    pub sphere: Presentation,
    pub tangles: Vec<Presentation>,
    pub links: Vec<LinkJson>,
}

#[derive(Serialize)]
pub struct CoverReport {
    pub command: &'static str,
    pub sheets: usize,
    pub genus: usize,
    pub basis_generators: Option<Vec<String>>,
    pub lagrangians: Vec<Vec<Vec<Value>>>,
    pub ranks: Vec<usize>,
    #[serde(rename = "H")]
    pub h: Vec<Value>,
}

#[derive(Serialize)]
pub struct RhReport {
    pub command: &'static str,
    pub bridges: usize,
    pub sheets: usize,
    pub genus: usize,
    pub lifted_rank: usize,
    pub agree: bool,
    pub cyclic_bound: usize,
}

#[derive(Serialize)]
pub struct DiagramReport {
    pub command: &'static str,
    pub label: Option<String>,
    pub bridges: usize,
    pub diagram: String,
    pub rho: Option<String>,
}
