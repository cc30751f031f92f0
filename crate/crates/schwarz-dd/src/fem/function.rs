//! Finite element functions: a coefficient vector bound to a space.

use crate::error::{Error, Result};
use crate::fem::space::{basis_value, eval_basis_all, FeSpace};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FeFunction {
    space: Arc<FeSpace>,
    coeffs: Vec<f64>,
}

impl FeFunction {
    pub fn zero(space: &Arc<FeSpace>) -> Self {
        FeFunction {
            space: Arc::clone(space),
            coeffs: vec![0.0; space.n_dofs()],
        }
    }

    pub fn from_coeffs(space: &Arc<FeSpace>, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), space.n_dofs());
        FeFunction {
            space: Arc::clone(space),
            coeffs,
        }
    }

    pub fn space(&self) -> &Arc<FeSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Value at a barycentric point of the element at `pos`.
    pub fn eval_in_element(&self, pos: usize, bary: [f64; 3]) -> f64 {
        let dofs = self.space.elem_dofs_at(pos);
        let lats = self.space.elem_lattice_at(pos);
        let deg = self.space.degree();
        let mut v = 0.0;
        for (k, &dof) in dofs.iter().enumerate() {
            let (b, _) = basis_value(deg, lats[k], bary);
            v += self.coeffs[dof] * b;
        }
        v
    }

    /// Value and gradient at a barycentric point of the element at `pos`.
    pub fn eval_grad_in_element(&self, pos: usize, bary: [f64; 3]) -> (f64, [f64; 2]) {
        let dofs = self.space.elem_dofs_at(pos);
        let lats = self.space.elem_lattice_at(pos);
        let geom = self.space.elem_geometry(pos);
        let mut vals = Vec::with_capacity(dofs.len());
        let mut grads = Vec::with_capacity(dofs.len());
        eval_basis_all(self.space.degree(), lats, &geom, bary, &mut vals, &mut grads);
        let mut v = 0.0;
        let mut g = [0.0, 0.0];
        for (k, &dof) in dofs.iter().enumerate() {
            let c = self.coeffs[dof];
            v += c * vals[k];
            g[0] += c * grads[k][0];
            g[1] += c * grads[k][1];
        }
        (v, g)
    }

    /// Evaluate at an arbitrary point by scanning the space's elements.
    /// Intended for tests and interpolation fallback, not inner loops.
    pub fn eval_at(&self, x: f64, y: f64) -> Result<f64> {
        let pos = self
            .find_element(x, y)
            .ok_or(Error::OutsideSupport { x, y })?;
        let geom = self.space.elem_geometry(pos);
        Ok(self.eval_in_element(pos, geom.barycentric(x, y)))
    }

    fn find_element(&self, x: f64, y: f64) -> Option<usize> {
        const EPS: f64 = 1e-10;
        (0..self.space.elems().len()).find(|&pos| {
            let geom = self.space.elem_geometry(pos);
            let b = geom.barycentric(x, y);
            b.iter().all(|&l| l >= -EPS)
        })
    }
}

/// Nodal interpolation of `source` onto `target`: each target dof takes the
/// source value at its node. Boundary dofs are forced to zero when the
/// target space carries a homogeneous mask. Fails if a target node lies
/// outside the source's support.
pub fn interpolate(source: &FeFunction, target: &Arc<FeSpace>) -> Result<FeFunction> {
    let same_mesh = Arc::ptr_eq(source.space().mesh(), target.mesh());
    let mut coeffs = vec![0.0; target.n_dofs()];
    for dof in 0..target.n_dofs() {
        if target.zero_boundary() && target.is_boundary_dof(dof) {
            continue;
        }
        let [x, y] = target.dof_coord(dof);
        let value = if same_mesh {
            // topological owner: an element of the source containing the node
            let owner = owner_element(source.space(), target, dof);
            match owner {
                Some(pos) => {
                    let geom = source.space().elem_geometry(pos);
                    source.eval_in_element(pos, geom.barycentric(x, y))
                }
                None => source.eval_at(x, y)?,
            }
        } else {
            source.eval_at(x, y)?
        };
        coeffs[dof] = value;
    }
    Ok(FeFunction::from_coeffs(target, coeffs))
}

/// Find a source element containing the target dof's node, via mesh topology.
fn owner_element(source: &FeSpace, target: &FeSpace, dof: usize) -> Option<usize> {
    use crate::fem::space::NodeKey::*;
    let mesh = target.mesh();
    match target.dof_key(dof) {
        Cell(t) => source.elem_position(t),
        Edge(e, _) => mesh.edges()[e]
            .tris
            .iter()
            .flatten()
            .find_map(|&t| source.elem_position(t)),
        Vertex(v) => {
            // any source element incident to the vertex; scan source elements
            // adjacent through the edge table of one incident triangle is not
            // available directly, so test membership of all triangles at v
            // through the target's own elements first, then fall back.
            let direct = target
                .elems()
                .iter()
                .find(|&&t| mesh.triangle(t).contains(&v) && source.elem_position(t).is_some())
                .and_then(|&t| source.elem_position(t));
            direct.or_else(|| {
                source
                    .elems()
                    .iter()
                    .position(|&t| mesh.triangle(t).contains(&v))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;
    use crate::mesh::Mesh;

    fn unit_mesh(n: usize) -> Arc<Mesh> {
        Arc::new(Mesh::build_uniform(n, n, Rect::unit_square()).unwrap())
    }

    fn interpolant(space: &Arc<FeSpace>, f: impl Fn(f64, f64) -> f64) -> FeFunction {
        let coeffs = (0..space.n_dofs())
            .map(|d| {
                let [x, y] = space.dof_coord(d);
                f(x, y)
            })
            .collect();
        FeFunction::from_coeffs(space, coeffs)
    }

    #[test]
    fn evaluation_reproduces_nodal_values() {
        let mesh = unit_mesh(3);
        for deg in 1..=3 {
            let s = FeSpace::on_elements(
                &mesh,
                (0..mesh.n_triangles()).collect(),
                deg,
                false,
            )
            .unwrap();
            let u = interpolant(&s, |x, y| 1.0 + 2.0 * x - 0.5 * y);
            for dof in (0..s.n_dofs()).step_by(3) {
                let [x, y] = s.dof_coord(dof);
                let v = u.eval_at(x, y).unwrap();
                assert!((v - (1.0 + 2.0 * x - 0.5 * y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interpolate_same_space_is_identity() {
        let mesh = unit_mesh(4);
        let s = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 1, false).unwrap();
        let u = interpolant(&s, |x, y| x * x + y);
        let v = interpolate(&u, &s).unwrap();
        for (a, b) in u.coeffs().iter().zip(v.coeffs()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn interpolate_p2_to_p1_samples_vertices() {
        let mesh = unit_mesh(4);
        let s2 = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 2, false).unwrap();
        let s1 = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 1, false).unwrap();
        // P2 reproduces x^2 exactly, so the P1 coefficients are x^2 at vertices
        let u2 = interpolant(&s2, |x, _| x * x);
        let u1 = interpolate(&u2, &s1).unwrap();
        let dof = (0..s1.n_dofs())
            .find(|&d| {
                let [x, y] = s1.dof_coord(d);
                (x - 0.25).abs() < 1e-14 && (y - 0.5).abs() < 1e-14
            })
            .unwrap();
        assert!((u1.coeffs()[dof] - 0.0625).abs() < 1e-14);
    }

    #[test]
    fn interpolate_is_projection() {
        let mesh = unit_mesh(3);
        let s2 = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 2, false).unwrap();
        let s1 = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 1, false).unwrap();
        let u = interpolant(&s2, |x, y| (3.0 * x).sin() * y);
        let once = interpolate(&u, &s1).unwrap();
        let twice = interpolate(&once, &s1).unwrap();
        for (a, b) in once.coeffs().iter().zip(twice.coeffs()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn interpolate_masks_boundary_when_homogeneous() {
        let mesh = unit_mesh(4);
        let elems = mesh.elements_in(&Rect::new(0.0, 0.5, 0.0, 1.0));
        let sub_h = FeSpace::on_elements(&mesh, elems, 1, true).unwrap();
        let s1 = FeSpace::on_elements(&mesh, (0..mesh.n_triangles()).collect(), 1, false).unwrap();
        let u = interpolant(&s1, |_, _| 1.0);
        let v = interpolate(&u, &sub_h).unwrap();
        for dof in 0..sub_h.n_dofs() {
            let expect = if sub_h.is_boundary_dof(dof) { 0.0 } else { 1.0 };
            assert_eq!(v.coeffs()[dof], expect);
        }
    }

    #[test]
    fn eval_outside_support_rejected() {
        let mesh = unit_mesh(2);
        let elems = mesh.elements_in(&Rect::new(0.0, 0.5, 0.0, 1.0));
        let s = FeSpace::on_elements(&mesh, elems, 1, false).unwrap();
        let u = FeFunction::zero(&s);
        assert!(u.eval_at(0.9, 0.5).is_err());
    }
}
