//! PDE problem data: bilinear form coefficients and source term.

/// Right-hand-side source field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceTerm {
    Zero,
    Constant(f64),
    /// `8 pi^2 sin(2 pi x) sin(2 pi y)`, the manufactured load whose exact
    /// solution on the unit square is `sin(2 pi x) sin(2 pi y)`.
    SineProduct,
}

impl SourceTerm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            SourceTerm::Zero => 0.0,
            SourceTerm::Constant(c) => *c,
            SourceTerm::SineProduct => {
                let two_pi = 2.0 * std::f64::consts::PI;
                8.0 * std::f64::consts::PI.powi(2) * (two_pi * x).sin() * (two_pi * y).sin()
            }
        }
    }
}

/// Second-order linear elliptic problem
/// `-diffusion * lap(u) + convection . grad(u) = source`, with homogeneous
/// Dirichlet boundary conditions. The bilinear form is
/// `a(u, v) = int diffusion grad(u).grad(v) + (convection . grad(u)) v`.
#[derive(Debug, Clone, Copy)]
pub struct Problem {
    pub diffusion: f64,
    pub convection: [f64; 2],
    pub source: SourceTerm,
}

impl Problem {
    /// Poisson problem with the sine-product load.
    pub fn poisson() -> Self {
        Problem {
            diffusion: 1.0,
            convection: [0.0, 0.0],
            source: SourceTerm::SineProduct,
        }
    }

    /// Convection-diffusion with `b = [-60, 0]` and unit load.
    pub fn convection_diffusion() -> Self {
        Problem {
            diffusion: 1.0,
            convection: [-60.0, 0.0],
            source: SourceTerm::Constant(1.0),
        }
    }

    pub fn has_convection(&self) -> bool {
        self.convection[0] != 0.0 || self.convection[1] != 0.0
    }

    /// Exact solution, when this is the manufactured Poisson problem.
    pub fn exact_solution(&self) -> Option<fn(f64, f64) -> f64> {
        if self.source == SourceTerm::SineProduct && !self.has_convection() && self.diffusion == 1.0
        {
            Some(|x, y| {
                let two_pi = 2.0 * std::f64::consts::PI;
                (two_pi * x).sin() * (two_pi * y).sin()
            })
        } else {
            None
        }
    }
}
