//! Symmetric triangle quadrature, exact for polynomials of degree six.
//!
//! One fixed rule is used for all assembly and residual evaluation: the
//! 12-point degree-6 rule of Dunavant. Weights are normalized to sum to one,
//! so an integral over a triangle is `area * sum(w_q * f(x_q))`. Degree six
//! covers every polynomial integrand produced by P1-P3 elements with
//! constant-coefficient diffusion and convection.

/// Barycentric coordinates and weight for one quadrature point.
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint {
    pub bary: [f64; 3],
    pub weight: f64,
}

const W1: f64 = 0.050_844_906_370_207;
const A1: f64 = 0.063_089_014_491_502;
const W2: f64 = 0.116_786_275_726_379;
const A2: f64 = 0.249_286_745_170_910;
const W3: f64 = 0.082_851_075_618_374;
const B3: f64 = 0.310_352_451_033_784;
const C3: f64 = 0.053_145_049_844_817;

/// The 12-point degree-6 rule. All points are strictly interior.
pub const TRI_RULE: [QuadPoint; 12] = {
    let g1 = 1.0 - 2.0 * A1;
    let g2 = 1.0 - 2.0 * A2;
    let d3 = 1.0 - B3 - C3;
    [
        QuadPoint { bary: [g1, A1, A1], weight: W1 },
        QuadPoint { bary: [A1, g1, A1], weight: W1 },
        QuadPoint { bary: [A1, A1, g1], weight: W1 },
        QuadPoint { bary: [g2, A2, A2], weight: W2 },
        QuadPoint { bary: [A2, g2, A2], weight: W2 },
        QuadPoint { bary: [A2, A2, g2], weight: W2 },
        QuadPoint { bary: [B3, C3, d3], weight: W3 },
        QuadPoint { bary: [C3, B3, d3], weight: W3 },
        QuadPoint { bary: [B3, d3, C3], weight: W3 },
        QuadPoint { bary: [C3, d3, B3], weight: W3 },
        QuadPoint { bary: [d3, B3, C3], weight: W3 },
        QuadPoint { bary: [d3, C3, B3], weight: W3 },
    ]
};

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    /// Exact value of the barycentric monomial integral over a triangle of
    /// area `a`: int lam0^i lam1^j lam2^k = 2a * i! j! k! / (i+j+k+2)!.
    fn exact_bary_monomial(i: u32, j: u32, k: u32, area: f64) -> f64 {
        2.0 * area * factorial(i) * factorial(j) * factorial(k) / factorial(i + j + k + 2)
    }

    #[test]
    fn weights_sum_to_one() {
        let s: f64 = TRI_RULE.iter().map(|q| q.weight).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_degree_six_monomials() {
        // reference triangle has area 1/2
        for i in 0..=6u32 {
            for j in 0..=(6 - i) {
                for k in 0..=(6 - i - j) {
                    if i + j + k > 6 {
                        continue;
                    }
                    let approx: f64 = TRI_RULE
                        .iter()
                        .map(|q| {
                            q.weight
                                * q.bary[0].powi(i as i32)
                                * q.bary[1].powi(j as i32)
                                * q.bary[2].powi(k as i32)
                        })
                        .sum::<f64>()
                        * 0.5;
                    let exact = exact_bary_monomial(i, j, k, 0.5);
                    assert!(
                        (approx - exact).abs() < 1e-15 + 1e-13 * exact.abs(),
                        "monomial ({i},{j},{k}): {approx} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn points_strictly_interior() {
        for q in TRI_RULE.iter() {
            for &b in &q.bary {
                assert!(b > 1e-3 && b < 1.0);
            }
            let s: f64 = q.bary.iter().sum();
            assert!((s - 1.0).abs() < 1e-14);
        }
    }
}
