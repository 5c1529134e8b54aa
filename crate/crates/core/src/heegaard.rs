//! Extended Heegaard diagrams read off a 4-plane diagram, and `H₁` of the
//! embedded 3-manifold.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::perm::orbits;
use crate::algebra::{cokernel_invariants, kernel_lattice, AbelianGroup, IntegerMatrix, Permutation};
use crate::error::{Error, Result};
use crate::surface::{build_surface_complex, SurfaceComplex};
use crate::tangle::FourPlaneDiagram;

/// Closed curve in the strand graph alternating between two tangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    /// Punctures in traversal order, starting from the least one.
    pub punctures: Vec<usize>,
    /// `(edge, traversed forward)` in traversal order.
    pub edges: Vec<(usize, bool)>,
}

impl Curve {
    /// Integral 1-chain of the curve.
    pub fn chain(&self, edge_count: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); edge_count];
        for &(e, fwd) in &self.edges {
            v[e] += if fwd { 1 } else { -1 };
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct ExtendedHeegaardDiagram {
    /// Spine order `(i, j, k, ℓ)`, 0-based.
    pub order: [usize; 4],
    /// Surface built from the reordered spine.
    pub surface: SurfaceComplex,
    /// Components of `T_i ∪ T̄_k`.
    pub alpha: Vec<Curve>,
    /// Components of `T_j ∪ T̄_ℓ`.
    pub beta: Vec<Curve>,
    /// Signed counts of common punctures, `alpha × beta`; reduced mod 2
    /// when the surface is non-orientable.
    pub q: IntegerMatrix,
    pub q_modulus: Option<u32>,
    pub h1: AbelianGroup,
}

impl ExtendedHeegaardDiagram {
    /// gcd of the entries of `Q`.
    pub fn q_gcd(&self) -> BigInt {
        let mut g = BigInt::zero();
        for r in 0..self.q.rows() {
            for c in 0..self.q.cols() {
                g = g.gcd(self.q.get(r, c));
            }
        }
        g
    }
}

fn trace_curves(surface: &SurfaceComplex, m: &[Permutation; 4], first: usize, second: usize) -> Vec<Curve> {
    let n = surface.vertex_count();
    orbits(n, &[&m[first], &m[second]])
        .into_iter()
        .map(|orbit| {
            let start = orbit[0];
            let mut punctures = Vec::new();
            let mut edges = Vec::new();
            let mut v = start;
            loop {
                for color in [first, second] {
                    punctures.push(v);
                    let e = surface.edge_at(color, v);
                    edges.push((e, surface.edges[e].ends.0 == v));
                    v = m[color].apply(v);
                }
                if v == start {
                    break;
                }
            }
            Curve { punctures, edges }
        })
        .collect()
}

/// For each vertex, the counterclockwise successor of every edge color
/// under the coherent face orientation.
fn rotations(surface: &SurfaceComplex, face_signs: &[i8]) -> Vec<[usize; 4]> {
    let mut next = vec![[usize::MAX; 4]; surface.vertex_count()];
    for (f, face) in surface.faces.iter().enumerate() {
        let k = face.boundary.len();
        for idx in 0..k {
            let (e_in, fwd_in) = face.boundary[idx];
            let (e_out, _) = face.boundary[(idx + 1) % k];
            let ein = &surface.edges[e_in];
            let v = if fwd_in { ein.ends.1 } else { ein.ends.0 };
            let (c_in, c_out) = (ein.tangle, surface.edges[e_out].tangle);
            if face_signs[f] > 0 {
                next[v][c_out] = c_in;
            } else {
                next[v][c_in] = c_out;
            }
        }
    }
    next
}

/// Color of the edge by which `curve` leaves puncture `p`.
fn outgoing_at(surface: &SurfaceComplex, curve: &Curve, p: usize) -> Option<usize> {
    curve.edges.iter().find_map(|&(e, fwd)| {
        let edge = &surface.edges[e];
        let tail = if fwd { edge.ends.0 } else { edge.ends.1 };
        (tail == p).then_some(edge.tangle)
    })
}

pub fn extract_heegaard(d: &FourPlaneDiagram, order: [usize; 4]) -> Result<ExtendedHeegaardDiagram> {
    let mut seen = [false; 4];
    for &i in &order {
        if i >= 4 || seen[i] {
            return Err(Error::InvalidTangle {
                tangle: 0,
                message: format!("{order:?} is not a permutation of the spine"),
            });
        }
        seen[i] = true;
    }
    let p = d.permuted(order);
    let surface = build_surface_complex(&p)?;
    let m = p.matchings().expect("surface built from matchings");
    let alpha = trace_curves(&surface, &m, 0, 2);
    let beta = trace_curves(&surface, &m, 1, 3);
    let edge_count = surface.edges.len();

    // H₁(Y) = Z₁ / (B₁ + curve chains), in coordinates on the cycle lattice
    let cycles = kernel_lattice(&surface.boundary_1());
    let mut gens = surface.boundary_2().columns();
    gens.extend(alpha.iter().chain(&beta).map(|c| c.chain(edge_count)));
    let mut cols = Vec::with_capacity(gens.len());
    for g in &gens {
        cols.push(cycles.coordinates(g).ok_or(Error::NotSublattice)?);
    }
    let h1 = cokernel_invariants(&IntegerMatrix::from_columns(cycles.rank(), &cols));

    let mut q = IntegerMatrix::zeros(alpha.len(), beta.len());
    let mut alpha_of = vec![0; surface.vertex_count()];
    let mut beta_of = vec![0; surface.vertex_count()];
    for (r, c) in alpha.iter().enumerate() {
        for &v in &c.punctures {
            alpha_of[v] = r;
        }
    }
    for (s, c) in beta.iter().enumerate() {
        for &v in &c.punctures {
            beta_of[v] = s;
        }
    }
    let q_modulus = match &surface.face_signs {
        Some(signs) => {
            let next = rotations(&surface, signs);
            for v in 0..surface.vertex_count() {
                let (r, s) = (alpha_of[v], beta_of[v]);
                let a_out = outgoing_at(&surface, &alpha[r], v).expect("curve leaves each puncture");
                let b_out = outgoing_at(&surface, &beta[s], v).expect("curve leaves each puncture");
                let sign = if next[v][a_out] == b_out { 1 } else { -1 };
                let val = q.get(r, s) + sign;
                q.set(r, s, val);
            }
            None
        }
        None => {
            for v in 0..surface.vertex_count() {
                let (r, s) = (alpha_of[v], beta_of[v]);
                let val = (q.get(r, s) + 1) % 2;
                q.set(r, s, val);
            }
            Some(2)
        }
    };

    Ok(ExtendedHeegaardDiagram {
        order,
        surface,
        alpha,
        beta,
        q,
        q_modulus,
        h1,
    })
}

/// `H₁(Y)` of the embedded 3-manifold.
pub fn h1_3manifold(d: &FourPlaneDiagram) -> Result<AbelianGroup> {
    Ok(extract_heegaard(d, [0, 1, 2, 3])?.h1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn diagram(b: usize, words: [&[i64]; 4]) -> FourPlaneDiagram {
        FourPlaneDiagram::from_braids(b, words.map(|w| BraidWord::from_signed(2 * b, w).unwrap())).unwrap()
    }

    #[test]
    fn one_bridge_is_s3() {
        let h = extract_heegaard(&diagram(1, [&[], &[], &[], &[]]), [0, 1, 2, 3]).unwrap();
        assert_eq!((h.alpha.len(), h.beta.len()), (1, 1));
        assert_eq!(h.alpha[0].punctures.len(), 2);
        assert!(h.h1.is_trivial());
        assert_eq!(h.q.get(0, 0).magnitude().to_string(), "0");
    }

    #[test]
    fn two_bridge_torus_is_s3() {
        let d = diagram(2, [&[], &[2], &[], &[2]]);
        let h = extract_heegaard(&d, [0, 1, 2, 3]).unwrap();
        assert_eq!(h.surface.genus, 1);
        assert!(h.h1.is_trivial());
    }
}
