//! Conforming structured triangulations of axis-aligned rectangles, with
//! red/green local refinement.
//!
//! Meshes are immutable after construction. Every grid cell is split along
//! the bottom-left to top-right diagonal, so results are deterministic.

use crate::error::{Error, Result};
use crate::geom::{tri_rect_overlap_area, Rect, GEOM_EPS};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Mesh edge: sorted vertex pair plus adjacent triangles.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    /// Endpoint vertex indices, `v[0] < v[1]`.
    pub v: [usize; 2],
    /// Adjacent triangle indices; `None` for one side of a boundary edge.
    pub tris: [Option<usize>; 2],
}

/// Conforming triangulation of a rectangle.
#[derive(Debug)]
pub struct Mesh {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    /// Edge ids per triangle, local order (0,1), (1,2), (2,0).
    tri_edges: Vec<[usize; 3]>,
    boundary_vertex: Vec<bool>,
    bounds: Rect,
}

impl Mesh {
    /// Uniform triangulation of `rect` with `nx` by `ny` cells, two triangles
    /// per cell.
    pub fn build_uniform(nx: usize, ny: usize, rect: Rect) -> Result<Mesh> {
        if nx == 0 || ny == 0 {
            return Err(Error::invalid("cell counts must be at least 1"));
        }
        if rect.is_degenerate() {
            return Err(Error::invalid("degenerate mesh rectangle"));
        }
        let vid = |i: usize, j: usize| j * (nx + 1) + i;
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                let x = rect.x0 + rect.width() * (i as f64) / (nx as f64);
                let y = rect.y0 + rect.height() * (j as f64) / (ny as f64);
                vertices.push([x, y]);
            }
        }
        let mut triangles = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (v00, v10) = (vid(i, j), vid(i + 1, j));
                let (v01, v11) = (vid(i, j + 1), vid(i + 1, j + 1));
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
        Mesh::from_raw(vertices, triangles)
    }

    /// Build a mesh from raw vertex and triangle lists, validating all mesh
    /// invariants (positive areas, conformity, tiling of the bounding
    /// rectangle).
    pub fn from_raw(vertices: Vec<[f64; 2]>, triangles: Vec<[usize; 3]>) -> Result<Mesh> {
        if triangles.is_empty() {
            return Err(Error::invalid("mesh has no triangles"));
        }
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &vertices {
            x0 = x0.min(v[0]);
            x1 = x1.max(v[0]);
            y0 = y0.min(v[1]);
            y1 = y1.max(v[1]);
        }
        let bounds = Rect::new(x0, x1, y0, y1);

        let mut total_area = 0.0;
        for (t, tri) in triangles.iter().enumerate() {
            let a = signed_area(&vertices, tri);
            if a <= 0.0 {
                return Err(Error::invalid(format!(
                    "triangle {t} has non-positive signed area {a}"
                )));
            }
            total_area += a;
        }
        if (total_area - bounds.area()).abs() > 1e-12 * bounds.area() {
            return Err(Error::invalid(format!(
                "triangles do not tile the bounding rectangle: area {total_area} vs {}",
                bounds.area()
            )));
        }

        // Edge table.
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut tri_edges = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            let mut ids = [0usize; 3];
            for (le, (a, b)) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
                .into_iter()
                .enumerate()
            {
                let key = (a.min(b), a.max(b));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push(Edge {
                        v: [key.0, key.1],
                        tris: [None, None],
                    });
                    edges.len() - 1
                });
                let e = &mut edges[id];
                if e.tris[0].is_none() {
                    e.tris[0] = Some(t);
                } else if e.tris[1].is_none() {
                    e.tris[1] = Some(t);
                } else {
                    return Err(Error::invalid(format!(
                        "edge ({}, {}) is shared by more than two triangles",
                        key.0, key.1
                    )));
                }
                ids[le] = id;
            }
            tri_edges.push(ids);
        }

        // Conformity: an edge with a single adjacent triangle must lie on the
        // bounding rectangle, otherwise there is a hanging vertex inside.
        let mut boundary_vertex = vec![false; vertices.len()];
        for e in &edges {
            if e.tris[1].is_none() {
                let (a, b) = (vertices[e.v[0]], vertices[e.v[1]]);
                if !on_rect_boundary(&a, &bounds) || !on_rect_boundary(&b, &bounds) {
                    return Err(Error::invalid(format!(
                        "non-conforming mesh: interior edge ({:?}, {:?}) has a single \
                         adjacent triangle",
                        a, b
                    )));
                }
                boundary_vertex[e.v[0]] = true;
                boundary_vertex[e.v[1]] = true;
            }
        }

        // No vertex may sit at the midpoint of an existing edge.
        let vkey = |p: &[f64; 2]| (p[0].to_bits(), p[1].to_bits());
        let vset: HashMap<(u64, u64), usize> =
            vertices.iter().enumerate().map(|(i, p)| (vkey(p), i)).collect();
        for e in &edges {
            let (a, b) = (vertices[e.v[0]], vertices[e.v[1]]);
            let mid = edge_midpoint(&a, &b);
            if vset.contains_key(&vkey(&mid)) {
                return Err(Error::invalid(format!(
                    "non-conforming mesh: vertex at {:?} hangs on edge ({:?}, {:?})",
                    mid, a, b
                )));
            }
        }

        Ok(Mesh {
            vertices,
            triangles,
            edges,
            tri_edges,
            boundary_vertex,
            bounds,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex(&self, v: usize) -> [f64; 2] {
        self.vertices[v]
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn tri_coords(&self, t: usize) -> [[f64; 2]; 3] {
        let tri = self.triangles[t];
        [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]]
    }

    pub fn tri_area(&self, t: usize) -> f64 {
        signed_area(&self.vertices, &self.triangles[t])
    }

    pub fn tri_centroid(&self, t: usize) -> [f64; 2] {
        let c = self.tri_coords(t);
        [
            (c[0][0] + c[1][0] + c[2][0]) / 3.0,
            (c[0][1] + c[1][1] + c[2][1]) / 3.0,
        ]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tri_edge_ids(&self, t: usize) -> [usize; 3] {
        self.tri_edges[t]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    /// Bounding rectangle (the meshed domain).
    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    pub fn total_area(&self) -> f64 {
        (0..self.n_triangles()).map(|t| self.tri_area(t)).sum()
    }

    /// True iff every triangle intersecting a rectangle's interior is fully
    /// contained in its closure, for each rectangle.
    pub fn element_region_consistency(&self, rects: &[Rect]) -> bool {
        for rect in rects {
            for t in 0..self.n_triangles() {
                let coords = self.tri_coords(t);
                let overlap = tri_rect_overlap_area(&coords, rect);
                if overlap > GEOM_EPS {
                    let inside = coords.iter().all(|p| rect.contains(p[0], p[1]));
                    if !inside {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Triangles contained in the closed rectangle.
    pub fn elements_in(&self, rect: &Rect) -> Vec<usize> {
        (0..self.n_triangles())
            .filter(|&t| self.tri_coords(t).iter().all(|p| rect.contains(p[0], p[1])))
            .collect()
    }

    /// Red-refine every triangle inside `region`, restoring conformity with
    /// green bisections of the neighbors. Triangles collecting two or more
    /// split edges are promoted to red.
    pub fn refine_region(&self, region: Rect) -> Result<Mesh> {
        if !self.element_region_consistency(&[region]) {
            return Err(Error::invalid(
                "refinement region is not aligned with mesh edges",
            ));
        }
        let mut red = vec![false; self.n_triangles()];
        for t in 0..self.n_triangles() {
            red[t] = self.tri_coords(t).iter().all(|p| region.contains(p[0], p[1]));
        }
        let mut split = vec![false; self.edges.len()];
        for t in 0..self.n_triangles() {
            if red[t] {
                for e in self.tri_edges[t] {
                    split[e] = true;
                }
            }
        }
        // Promote triangles with two or more split edges until stable.
        loop {
            let mut changed = false;
            for t in 0..self.n_triangles() {
                if red[t] {
                    continue;
                }
                let n = self.tri_edges[t].iter().filter(|&&e| split[e]).count();
                if n >= 2 {
                    red[t] = true;
                    for e in self.tri_edges[t] {
                        if !split[e] {
                            split[e] = true;
                            changed = true;
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut vertices = self.vertices.clone();
        let mut midpoint = vec![usize::MAX; self.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if split[e] {
                let m = edge_midpoint(&self.vertices[edge.v[0]], &self.vertices[edge.v[1]]);
                midpoint[e] = vertices.len();
                vertices.push(m);
            }
        }

        let mut triangles = Vec::with_capacity(self.n_triangles() * 2);
        for t in 0..self.n_triangles() {
            let [a, b, c] = self.triangles[t];
            let eids = self.tri_edges[t];
            if red[t] {
                let mab = midpoint[eids[0]];
                let mbc = midpoint[eids[1]];
                let mca = midpoint[eids[2]];
                triangles.push([a, mab, mca]);
                triangles.push([mab, b, mbc]);
                triangles.push([mca, mbc, c]);
                triangles.push([mab, mbc, mca]);
            } else {
                let splits: Vec<usize> =
                    (0..3).filter(|&le| split[eids[le]]).collect();
                match splits.len() {
                    0 => triangles.push([a, b, c]),
                    1 => {
                        // bisect toward the vertex opposite the split edge
                        let le = splits[0];
                        let m = midpoint[eids[le]];
                        let (p, q, r) = match le {
                            0 => (a, b, c),
                            1 => (b, c, a),
                            _ => (c, a, b),
                        };
                        triangles.push([p, m, r]);
                        triangles.push([m, q, r]);
                    }
                    _ => unreachable!("promotion loop left a triangle with >=2 split edges"),
                }
            }
        }
        Mesh::from_raw(vertices, triangles)
    }

    /// Plain-text dump: `vertices N triangles M` header, then vertex and
    /// triangle lines.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "vertices {} triangles {}",
            self.n_vertices(),
            self.n_triangles()
        );
        for v in &self.vertices {
            let _ = writeln!(s, "{} {}", v[0], v[1]);
        }
        for t in &self.triangles {
            let _ = writeln!(s, "{} {} {}", t[0], t[1], t[2]);
        }
        s
    }
}

fn signed_area(vertices: &[[f64; 2]], tri: &[usize; 3]) -> f64 {
    let (a, b, c) = (vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

fn on_rect_boundary(p: &[f64; 2], rect: &Rect) -> bool {
    (p[0] - rect.x0).abs() <= GEOM_EPS
        || (p[0] - rect.x1).abs() <= GEOM_EPS
        || (p[1] - rect.y0).abs() <= GEOM_EPS
        || (p[1] - rect.y1).abs() <= GEOM_EPS
}

/// Shared midpoint formula so refinement-created vertices match bit-exactly.
fn edge_midpoint(a: &[f64; 2], b: &[f64; 2]) -> [f64; 2] {
    [(a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5]
}
