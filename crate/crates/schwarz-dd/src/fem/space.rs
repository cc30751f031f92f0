//! Lagrange finite element spaces of degree 1-3 on a mesh or submesh.
//!
//! A space is defined over a subset of mesh elements. Degrees of freedom are
//! keyed by mesh entities (vertex, edge node, cell node) so that spaces over
//! different element sets or degrees on the same mesh can exchange values.
//! Numbering is deterministic: elements are scanned in ascending order and
//! new keys are assigned in order of first appearance.

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use std::collections::HashMap;
use std::sync::Arc;

/// Identity of a Lagrange node on the mesh.
///
/// Edge nodes are parameterized from the endpoint with the smaller vertex
/// index: node `Edge(e, m)` of a degree-`d` space sits at fraction `m/d`
/// along the edge. This makes the numbering orientation-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKey {
    Vertex(usize),
    Edge(usize, u8),
    Cell(usize),
}

/// Lagrange space of degree `degree` over `elems`.
#[derive(Debug, Clone)]
pub struct FeSpace {
    mesh: Arc<Mesh>,
    degree: usize,
    elems: Vec<usize>,
    /// Position of a mesh element in `elems`, or `usize::MAX`.
    elem_pos: Vec<usize>,
    /// Per element (by position), the space dof for each local node.
    elem_dofs: Vec<Vec<usize>>,
    /// Per element (by position), the lattice index triple of each local node.
    elem_lattice: Vec<Vec<[u8; 3]>>,
    dof_key: Vec<NodeKey>,
    dof_coord: Vec<[f64; 2]>,
    dof_boundary: Vec<bool>,
    key_to_dof: HashMap<NodeKey, usize>,
    /// When true, functions in this space vanish on the submesh boundary and
    /// interpolation into it forces boundary dofs to zero.
    zero_boundary: bool,
}

impl FeSpace {
    /// Space over the whole mesh with homogeneous Dirichlet boundary.
    pub fn global(mesh: &Arc<Mesh>, degree: usize) -> Result<Arc<FeSpace>> {
        let all: Vec<usize> = (0..mesh.n_triangles()).collect();
        FeSpace::on_elements(mesh, all, degree, true)
    }

    /// Space over a subset of elements. The Dirichlet mask covers the
    /// boundary of the element subset.
    pub fn on_elements(
        mesh: &Arc<Mesh>,
        mut elems: Vec<usize>,
        degree: usize,
        zero_boundary: bool,
    ) -> Result<Arc<FeSpace>> {
        if !(1..=3).contains(&degree) {
            return Err(Error::invalid(format!(
                "unsupported polynomial degree {degree} (expected 1..=3)"
            )));
        }
        if elems.is_empty() {
            return Err(Error::invalid("finite element space over no elements"));
        }
        elems.sort_unstable();
        elems.dedup();
        if *elems.last().unwrap() >= mesh.n_triangles() {
            return Err(Error::invalid("element index out of range"));
        }

        let mut elem_pos = vec![usize::MAX; mesh.n_triangles()];
        for (pos, &t) in elems.iter().enumerate() {
            elem_pos[t] = pos;
        }

        let d = degree as u8;
        let mut key_to_dof: HashMap<NodeKey, usize> = HashMap::new();
        let mut dof_key = Vec::new();
        let mut dof_coord = Vec::new();
        let mut elem_dofs = Vec::with_capacity(elems.len());
        let mut elem_lattice = Vec::with_capacity(elems.len());

        for &t in &elems {
            let tri = mesh.triangle(t);
            let eids = mesh.tri_edge_ids(t);
            let mut dofs = Vec::with_capacity(n_local(degree));
            let mut lats = Vec::with_capacity(n_local(degree));
            let mut push = |key: NodeKey, lat: [u8; 3], coord: [f64; 2]| {
                let id = *key_to_dof.entry(key).or_insert_with(|| {
                    dof_key.push(key);
                    dof_coord.push(coord);
                    dof_key.len() - 1
                });
                dofs.push(id);
                lats.push(lat);
            };

            for c in 0..3 {
                let mut lat = [0u8; 3];
                lat[c] = d;
                push(NodeKey::Vertex(tri[c]), lat, mesh.vertex(tri[c]));
            }
            for (le, (a, b)) in [(0usize, 1usize), (1, 2), (2, 0)].into_iter().enumerate() {
                if degree < 2 {
                    continue;
                }
                let (ga, gb) = (tri[a], tri[b]);
                let (lo, hi) = if ga < gb { (a, b) } else { (b, a) };
                let (plo, phi) = (mesh.vertex(tri[lo]), mesh.vertex(tri[hi]));
                for m in 1..d {
                    let mut lat = [0u8; 3];
                    lat[lo] = d - m;
                    lat[hi] = m;
                    let f = m as f64 / d as f64;
                    let coord = [
                        plo[0] + f * (phi[0] - plo[0]),
                        plo[1] + f * (phi[1] - plo[1]),
                    ];
                    push(NodeKey::Edge(eids[le], m), lat, coord);
                }
            }
            if degree == 3 {
                let c = mesh.tri_centroid(t);
                push(NodeKey::Cell(t), [1, 1, 1], c);
            }
            elem_dofs.push(dofs);
            elem_lattice.push(lats);
        }

        // Submesh boundary: edges with exactly one adjacent member element.
        let mut dof_boundary = vec![false; dof_key.len()];
        for (eid, edge) in mesh.edges().iter().enumerate() {
            let members = edge
                .tris
                .iter()
                .filter(|t| t.is_some_and(|t| elem_pos[t] != usize::MAX))
                .count();
            if members == 1 {
                for &v in &edge.v {
                    if let Some(&dof) = key_to_dof.get(&NodeKey::Vertex(v)) {
                        dof_boundary[dof] = true;
                    }
                }
                for m in 1..d {
                    if let Some(&dof) = key_to_dof.get(&NodeKey::Edge(eid, m)) {
                        dof_boundary[dof] = true;
                    }
                }
            }
        }

        Ok(Arc::new(FeSpace {
            mesh: Arc::clone(mesh),
            degree,
            elems,
            elem_pos,
            elem_dofs,
            elem_lattice,
            dof_key,
            dof_coord,
            dof_boundary,
            key_to_dof,
            zero_boundary,
        }))
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_dofs(&self) -> usize {
        self.dof_key.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    /// Position of mesh element `t` in this space, if it is a member.
    pub fn elem_position(&self, t: usize) -> Option<usize> {
        let p = self.elem_pos[t];
        (p != usize::MAX).then_some(p)
    }

    pub fn elem_dofs_at(&self, pos: usize) -> &[usize] {
        &self.elem_dofs[pos]
    }

    pub fn elem_lattice_at(&self, pos: usize) -> &[[u8; 3]] {
        &self.elem_lattice[pos]
    }

    pub fn dof_coord(&self, dof: usize) -> [f64; 2] {
        self.dof_coord[dof]
    }

    pub fn dof_key(&self, dof: usize) -> NodeKey {
        self.dof_key[dof]
    }

    pub fn is_boundary_dof(&self, dof: usize) -> bool {
        self.dof_boundary[dof]
    }

    pub fn zero_boundary(&self) -> bool {
        self.zero_boundary
    }

    /// Clone of this space with a different boundary-mask semantic.
    pub fn with_zero_boundary(&self, zero_boundary: bool) -> Arc<FeSpace> {
        let mut s = self.clone();
        s.zero_boundary = zero_boundary;
        Arc::new(s)
    }

    pub fn dof_of_key(&self, key: NodeKey) -> Option<usize> {
        self.key_to_dof.get(&key).copied()
    }

    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| !self.dof_boundary[d]).collect()
    }

    /// Map every dof of `self` to the dof with the same node key in `other`.
    /// Requires the same mesh and degree.
    pub fn map_dofs_to(&self, other: &FeSpace) -> Result<Vec<usize>> {
        if !Arc::ptr_eq(&self.mesh, &other.mesh) || self.degree != other.degree {
            return Err(Error::invalid(
                "dof mapping requires the same mesh and degree",
            ));
        }
        self.dof_key
            .iter()
            .map(|k| {
                other.dof_of_key(*k).ok_or_else(|| {
                    Error::invalid("dof mapping target does not cover this space")
                })
            })
            .collect()
    }

    /// Geometry of element at `pos`: coordinates, barycentric gradients and
    /// area.
    pub fn elem_geometry(&self, pos: usize) -> ElemGeometry {
        let t = self.elems[pos];
        let c = self.mesh.tri_coords(t);
        ElemGeometry::new(c)
    }
}

/// Per-element affine geometry: barycentric gradients are constant.
#[derive(Debug, Clone, Copy)]
pub struct ElemGeometry {
    pub coords: [[f64; 2]; 3],
    /// Gradient of each barycentric coordinate.
    pub grad_bary: [[f64; 2]; 3],
    pub area: f64,
}

impl ElemGeometry {
    pub fn new(c: [[f64; 2]; 3]) -> Self {
        let det = (c[1][0] - c[0][0]) * (c[2][1] - c[0][1])
            - (c[2][0] - c[0][0]) * (c[1][1] - c[0][1]);
        let area = 0.5 * det;
        let g = |a: [f64; 2], b: [f64; 2]| [(a[1] - b[1]) / det, (b[0] - a[0]) / det];
        ElemGeometry {
            coords: c,
            grad_bary: [g(c[1], c[2]), g(c[2], c[0]), g(c[0], c[1])],
            area,
        }
    }

    pub fn point(&self, bary: [f64; 3]) -> [f64; 2] {
        [
            bary[0] * self.coords[0][0] + bary[1] * self.coords[1][0] + bary[2] * self.coords[2][0],
            bary[0] * self.coords[0][1] + bary[1] * self.coords[1][1] + bary[2] * self.coords[2][1],
        ]
    }

    pub fn barycentric(&self, x: f64, y: f64) -> [f64; 3] {
        let c = self.coords;
        let det = 2.0 * self.area;
        let l0 = ((c[1][0] - x) * (c[2][1] - y) - (c[2][0] - x) * (c[1][1] - y)) / det;
        let l1 = ((c[2][0] - x) * (c[0][1] - y) - (c[0][0] - x) * (c[2][1] - y)) / det;
        [l0, l1, 1.0 - l0 - l1]
    }
}

pub fn n_local(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// 1D Lagrange factor on the principal lattice:
/// `P_m(t) = prod_{r<m} (d t - r) / (m - r)`, returned with its derivative
/// with respect to `t`.
fn lagrange_factor(d: f64, m: u8, t: f64) -> (f64, f64) {
    let mut val = 1.0;
    let mut dval = 0.0;
    for r in 0..m {
        let denom = (m - r) as f64;
        let term = (d * t - r as f64) / denom;
        dval = dval * term + val * d / denom;
        val *= term;
    }
    (val, dval)
}

/// Evaluate the nodal basis function with lattice index `lat` at barycentric
/// `bary`, for a degree-`degree` space. Returns the value and the gradient
/// with respect to the three barycentric coordinates.
pub fn basis_value(degree: usize, lat: [u8; 3], bary: [f64; 3]) -> (f64, [f64; 3]) {
    let d = degree as f64;
    let (p0, dp0) = lagrange_factor(d, lat[0], bary[0]);
    let (p1, dp1) = lagrange_factor(d, lat[1], bary[1]);
    let (p2, dp2) = lagrange_factor(d, lat[2], bary[2]);
    (p0 * p1 * p2, [dp0 * p1 * p2, p0 * dp1 * p2, p0 * p1 * dp2])
}

/// Values and physical gradients of all local basis functions of an element.
pub fn eval_basis_all(
    degree: usize,
    lattice: &[[u8; 3]],
    geom: &ElemGeometry,
    bary: [f64; 3],
    values: &mut Vec<f64>,
    grads: &mut Vec<[f64; 2]>,
) {
    values.clear();
    grads.clear();
    for &lat in lattice {
        let (v, dl) = basis_value(degree, lat, bary);
        values.push(v);
        let gx = dl[0] * geom.grad_bary[0][0]
            + dl[1] * geom.grad_bary[1][0]
            + dl[2] * geom.grad_bary[2][0];
        let gy = dl[0] * geom.grad_bary[0][1]
            + dl[1] * geom.grad_bary[1][1]
            + dl[2] * geom.grad_bary[2][1];
        grads.push([gx, gy]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;

    fn unit_mesh(n: usize) -> Arc<Mesh> {
        Arc::new(Mesh::build_uniform(n, n, Rect::unit_square()).unwrap())
    }

    #[test]
    fn dof_counts_match_lagrange_nodes() {
        let mesh = unit_mesh(4);
        // P1: vertices; P2: vertices + edges; P3: vertices + 2 edges + cells
        let n_v = mesh.n_vertices();
        let n_e = mesh.edges().len();
        let n_t = mesh.n_triangles();
        for (deg, expect) in [(1, n_v), (2, n_v + n_e), (3, n_v + 2 * n_e + n_t)] {
            let s = FeSpace::global(&mesh, deg).unwrap();
            assert_eq!(s.n_dofs(), expect, "degree {deg}");
        }
    }

    #[test]
    fn nodal_basis_is_kronecker_delta() {
        let mesh = unit_mesh(2);
        for deg in 1..=3 {
            let s = FeSpace::global(&mesh, deg).unwrap();
            for pos in 0..s.elems().len() {
                let geom = s.elem_geometry(pos);
                let lats = s.elem_lattice_at(pos);
                let d = deg as f64;
                for (i, lat_i) in lats.iter().enumerate() {
                    let node_bary =
                        [lat_i[0] as f64 / d, lat_i[1] as f64 / d, lat_i[2] as f64 / d];
                    for (j, lat_j) in lats.iter().enumerate() {
                        let (v, _) = basis_value(deg, *lat_j, node_bary);
                        let expect = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (v - expect).abs() < 1e-12,
                            "deg {deg} elem {pos} basis {j} at node {i}: {v}"
                        );
                    }
                }
                let _ = geom;
            }
        }
    }

    #[test]
    fn partition_of_unity_of_basis() {
        let mesh = unit_mesh(3);
        for deg in 1..=3 {
            let s = FeSpace::global(&mesh, deg).unwrap();
            let geom = s.elem_geometry(0);
            let lats = s.elem_lattice_at(0);
            let mut vals = Vec::new();
            let mut grads = Vec::new();
            eval_basis_all(deg, lats, &geom, [0.3, 0.45, 0.25], &mut vals, &mut grads);
            let sum: f64 = vals.iter().sum();
            assert!((sum - 1.0).abs() < 1e-13);
            let gsum: f64 = grads.iter().map(|g| g[0].abs() + g[1].abs()).sum::<f64>()
                - grads.iter().map(|g| g[0].abs() + g[1].abs()).sum::<f64>();
            assert!(gsum.abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_dofs_on_submesh() {
        let mesh = unit_mesh(4);
        // left half [0, 0.5] x [0, 1]
        let elems = mesh.elements_in(&Rect::new(0.0, 0.5, 0.0, 1.0));
        let s = FeSpace::on_elements(&mesh, elems, 2, false).unwrap();
        for dof in 0..s.n_dofs() {
            let [x, y] = s.dof_coord(dof);
            let expect = x < 1e-12 || (x - 0.5).abs() < 1e-12 || y < 1e-12 || (y - 1.0).abs() < 1e-12;
            assert_eq!(s.is_boundary_dof(dof), expect, "dof at ({x}, {y})");
        }
    }

    #[test]
    fn shared_edge_nodes_consistent_between_elements() {
        let mesh = unit_mesh(2);
        let s = FeSpace::global(&mesh, 3).unwrap();
        // every edge dof must be referenced by each adjacent element at the
        // same coordinate
        for pos in 0..s.elems().len() {
            for (k, &dof) in s.elem_dofs_at(pos).iter().enumerate() {
                let lat = s.elem_lattice_at(pos)[k];
                let geom = s.elem_geometry(pos);
                let bary = [lat[0] as f64 / 3.0, lat[1] as f64 / 3.0, lat[2] as f64 / 3.0];
                let p = geom.point(bary);
                let c = s.dof_coord(dof);
                assert!(
                    (p[0] - c[0]).abs() < 1e-12 && (p[1] - c[1]).abs() < 1e-12,
                    "elem {pos} local {k}"
                );
            }
        }
    }
}
