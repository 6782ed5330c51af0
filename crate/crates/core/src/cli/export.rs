//! Grid CSV files and OBJ meshes.
//!
//! CSV: header `u,v,x0,x1,x2,x3`, one row per node, `u` outermost.
//! OBJ: `v` records in the same node order, then one quad `f` per cell.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::numerics::{Axis, Grid2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Obj,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "obj" => Ok(Self::Obj),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

/// How a point of R^4 becomes three mesh coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projection {
    DropX0,
    DropX3,
    /// Orthographic along a direction, onto its orthogonal complement with
    /// the basis obtained by Gram-Schmidt on `e0, ..., e3`.
    Ortho(Vec4),
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop-x0" | "drop_x0" => Ok(Self::DropX0),
            "drop-x3" | "drop_x3" => Ok(Self::DropX3),
            _ => {
                let dir = s
                    .strip_prefix("ortho:")
                    .ok_or_else(|| Error::UnknownFormat(format!("projection {s:?}")))?;
                let c: Vec<f64> = dir
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::UnknownFormat(format!("projection {s:?}")))?;
                match c[..] {
                    [a, b, c, d] => {
                        let w = Vec4::new(a, b, c, d);
                        if !(w.euclid_norm() > 0.0) || !w.is_finite() {
                            return Err(Error::BadInput("projection direction must be a nonzero vector".into()));
                        }
                        Ok(Self::Ortho(w))
                    }
                    _ => Err(Error::UnknownFormat(format!("projection {s:?} needs four components"))),
                }
            }
        }
    }
}

fn dot(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

fn ortho_basis(w: Vec4) -> [[f64; 4]; 3] {
    let w = w.to_array();
    let n = dot(w, w).sqrt();
    let mut basis = vec![w.map(|x| x / n)];
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        for b in &basis {
            let d = dot(e, *b);
            for i in 0..4 {
                e[i] -= d * b[i];
            }
        }
        let len = dot(e, e).sqrt();
        if len > 1e-8 {
            basis.push(e.map(|x| x / len));
        }
        if basis.len() == 4 {
            break;
        }
    }
    [basis[1], basis[2], basis[3]]
}

impl Projection {
    pub fn apply(&self, p: Vec4) -> [f64; 3] {
        match self {
            Self::DropX0 => [p.x1, p.x2, p.x3],
            Self::DropX3 => [p.x0, p.x1, p.x2],
            Self::Ortho(w) => ortho_basis(*w).map(|b| dot(b, p.to_array())),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    u: f64,
    v: f64,
    x0: f64,
    x1: f64,
    x2: f64,
    x3: f64,
}

/// Nodes of a grid in `u`-major order. Unlike [`Grid2D`] it accepts 2x2
/// grids, which carry no derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeTable {
    pub u: Axis,
    pub v: Axis,
    pub points: Vec<Vec4>,
}

impl From<&Grid2D<Vec4>> for NodeTable {
    fn from(g: &Grid2D<Vec4>) -> Self {
        Self { u: g.u, v: g.v, points: g.values().to_vec() }
    }
}

impl NodeTable {
    pub fn into_grid(self) -> Result<Grid2D<Vec4>> {
        Grid2D::new(self.u, self.v, self.points)
    }

    /// CSV text.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (k, p) in self.points.iter().enumerate() {
            let (i, j) = (k / self.v.n, k % self.v.n);
            let row = Row { u: self.u.at(i), v: self.v.at(j), x0: p.x0, x1: p.x1, x2: p.x2, x3: p.x3 };
            w.serialize(row).expect("in-memory CSV write");
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
    }

    /// OBJ mesh with `nu * nv` vertices and `(nu - 1)(nv - 1)` quads.
    pub fn to_obj(&self, projection: Projection) -> String {
        let mut s = String::new();
        for p in &self.points {
            let [x, y, z] = projection.apply(*p);
            writeln!(s, "v {x} {y} {z}").expect("write to String");
        }
        let nv = self.v.n;
        let idx = |i: usize, j: usize| i * nv + j + 1;
        for i in 0..self.u.n - 1 {
            for j in 0..nv - 1 {
                writeln!(s, "f {} {} {} {}", idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1))
                    .expect("write to String");
            }
        }
        s
    }

    /// Parses CSV text, recovering both axes from the node coordinates.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = r
            .headers()
            .map_err(|e| Error::BadInput(format!("grid CSV: {e}")))?
            .iter()
            .map(str::to_string)
            .collect();
        if header != ["u", "v", "x0", "x1", "x2", "x3"] {
            return Err(Error::BadInput(format!("grid CSV header must be u,v,x0,x1,x2,x3, got {}", header.join(","))));
        }
        let rows: Vec<Row> = r
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::BadInput(format!("grid CSV: {e}")))?;
        let first_u = rows.first().ok_or_else(|| Error::BadInput("grid CSV has no rows".into()))?.u;
        let nv = rows.iter().take_while(|r| r.u == first_u).count();
        if rows.len() % nv != 0 {
            return Err(Error::BadGrid(format!("{} rows do not form full rows of {nv}", rows.len())));
        }
        let nu = rows.len() / nv;
        let u = Axis::from_nodes(&(0..nu).map(|i| rows[i * nv].u).collect::<Vec<_>>())?;
        let v = Axis::from_nodes(&rows[..nv].iter().map(|r| r.v).collect::<Vec<_>>())?;
        for (k, row) in rows.iter().enumerate() {
            if row.u != rows[(k / nv) * nv].u || row.v != rows[k % nv].v {
                return Err(Error::BadGrid(format!("row {} breaks the u-major node order", k + 2)));
            }
        }
        Ok(Self { u, v, points: rows.iter().map(|r| Vec4::new(r.x0, r.x1, r.x2, r.x3)).collect() })
    }
}

/// Node grid as CSV text.
pub fn grid_csv(g: &Grid2D<Vec4>) -> String {
    NodeTable::from(g).to_csv()
}

/// Scalar fields over a grid as CSV text, with `u,v` leading.
pub fn fields_csv(u: Axis, v: Axis, names: &[&str], value: impl Fn(usize, usize) -> Vec<f64>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = ["u", "v"].into_iter().chain(names.iter().copied()).collect();
    w.write_record(&header).expect("in-memory CSV write");
    for i in 0..u.n {
        for j in 0..v.n {
            let vals = value(i, j);
            let rec: Vec<String> = [u.at(i), v.at(j)].into_iter().chain(vals).map(|x| x.to_string()).collect();
            w.write_record(&rec).expect("in-memory CSV write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

/// Parses a grid CSV into a grid of at least 3x3 nodes.
pub fn parse_grid_csv(text: &str) -> Result<Grid2D<Vec4>> {
    NodeTable::parse_csv(text)?.into_grid()
}

/// OBJ mesh of a grid.
pub fn grid_obj(g: &Grid2D<Vec4>, projection: Projection) -> String {
    NodeTable::from(g).to_obj(projection)
}
