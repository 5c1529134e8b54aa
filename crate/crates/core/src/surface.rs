//! Central surface of a 4-plane diagram as a cell complex: punctures are
//! vertices, tangle strands are edges, and each component of a consecutive
//! pair `T_i ∪ T̄_{i+1}` bounds a face.

use std::collections::VecDeque;

use num_bigint::BigInt;

use crate::algebra::perm::orbits;
use crate::algebra::{AbelianGroup, ChainComplex, IntegerMatrix, Permutation};
use crate::error::{Error, Result};
use crate::tangle::FourPlaneDiagram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// 0-based tangle index.
    pub tangle: usize,
    /// Endpoints, smaller first; the edge is oriented from `ends.0` to `ends.1`.
    pub ends: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Consecutive tangles `(i, i+1 mod 4)` whose union bounds the face.
    pub pair: (usize, usize),
    /// Boundary cycle as `(edge, traversed forward)`.
    pub boundary: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    pub bridges: usize,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub euler_characteristic: i64,
    pub components: usize,
    pub orientable: bool,
    /// Total genus when orientable, otherwise the cross-cap number.
    pub genus: usize,
    /// `c_ij` for all pairs; the diagonal holds `b`.
    pub pair_counts: [[usize; 4]; 4],
    /// `s_i`: components of the triple omitting `T_i`.
    pub triple_counts: [usize; 4],
    /// Coherent face orientation signs, when one exists.
    pub face_signs: Option<Vec<i8>>,
    /// Alternating vertex signs, when the strand graph is bipartite.
    pub vertex_signs: Option<Vec<i8>>,
    edge_at: [Vec<usize>; 4],
}

impl SurfaceComplex {
    pub fn from_matchings(bridges: usize, m: &[Permutation; 4]) -> Self {
        let n = 2 * bridges;
        let mut edges = Vec::with_capacity(2 * n);
        let mut edge_at: [Vec<usize>; 4] = Default::default();
        for (t, mt) in m.iter().enumerate() {
            edge_at[t] = vec![usize::MAX; n];
            for a in 0..n {
                let b = mt.apply(a);
                if a < b {
                    edge_at[t][a] = edges.len();
                    edge_at[t][b] = edges.len();
                    edges.push(Edge {
                        tangle: t,
                        ends: (a, b),
                    });
                }
            }
        }

        let mut faces = Vec::new();
        for t in 0..4 {
            let u = (t + 1) % 4;
            for orbit in orbits(n, &[&m[t], &m[u]]) {
                let start = orbit[0];
                let mut boundary = Vec::new();
                let mut v = start;
                loop {
                    for color in [t, u] {
                        let e = edge_at[color][v];
                        let forward = edges[e].ends.0 == v;
                        boundary.push((e, forward));
                        v = m[color].apply(v);
                    }
                    if v == start {
                        break;
                    }
                }
                faces.push(Face { pair: (t, u), boundary });
            }
        }

        let mut pair_counts = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                pair_counts[i][j] = orbits(n, &[&m[i], &m[j]]).len();
            }
        }
        let mut triple_counts = [0; 4];
        for (i, s) in triple_counts.iter_mut().enumerate() {
            let rest: Vec<&Permutation> = (0..4).filter(|&j| j != i).map(|j| &m[j]).collect();
            *s = orbits(n, &rest).len();
        }
        let components = orbits(n, &[&m[0], &m[1], &m[2], &m[3]]).len();
        let euler_characteristic = n as i64 - edges.len() as i64 + faces.len() as i64;

        let mut s = Self {
            bridges,
            edges,
            faces,
            euler_characteristic,
            components,
            orientable: false,
            genus: 0,
            pair_counts,
            triple_counts,
            face_signs: None,
            vertex_signs: None,
            edge_at,
        };
        let order: Vec<usize> = (0..s.faces.len()).collect();
        s.face_signs = s.propagate_orientation(&order);
        s.vertex_signs = s.bipartition();
        s.orientable = s.face_signs.is_some();
        let deficit = (2 * components as i64 - euler_characteristic) as usize;
        s.genus = if s.orientable { deficit / 2 } else { deficit };
        s
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.bridges
    }

    /// Edge of tangle `t` at vertex `v`.
    pub fn edge_at(&self, t: usize, v: usize) -> usize {
        self.edge_at[t][v]
    }

    /// Orients faces one connected region at a time, visiting seeds in the
    /// given order; adjacent faces must cross their shared edge in opposite
    /// directions. `None` when no coherent choice exists.
    pub fn propagate_orientation(&self, order: &[usize]) -> Option<Vec<i8>> {
        let mut incidences: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.edges.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &(e, fwd) in &face.boundary {
                incidences[e].push((f, if fwd { 1 } else { -1 }));
            }
        }
        let mut sign = vec![0i8; self.faces.len()];
        for &seed in order {
            if sign[seed] != 0 {
                continue;
            }
            sign[seed] = 1;
            let mut queue = VecDeque::from([seed]);
            while let Some(f) = queue.pop_front() {
                for &(e, fwd) in &self.faces[f].boundary {
                    let dir_f = if fwd { 1 } else { -1 };
                    for &(g, dir_g) in &incidences[e] {
                        if g == f {
                            continue;
                        }
                        let want = -sign[f] * dir_f * dir_g;
                        if sign[g] == 0 {
                            sign[g] = want;
                            queue.push_back(g);
                        } else if sign[g] != want {
                            return None;
                        }
                    }
                }
            }
        }
        Some(sign)
    }

    /// Two-coloring of the strand graph, `None` if it has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<i8>> {
        let n = self.vertex_count();
        let mut sign = vec![0i8; n];
        for seed in 0..n {
            if sign[seed] != 0 {
                continue;
            }
            sign[seed] = 1;
            let mut queue = VecDeque::from([seed]);
            while let Some(v) = queue.pop_front() {
                for t in 0..4 {
                    let e = &self.edges[self.edge_at[t][v]];
                    let w = if e.ends.0 == v { e.ends.1 } else { e.ends.0 };
                    if sign[w] == 0 {
                        sign[w] = -sign[v];
                        queue.push_back(w);
                    } else if sign[w] == sign[v] {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    /// `∂₁ : C₁ → C₀`.
    pub fn boundary_1(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.vertex_count(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            d.set(e.ends.0, j, BigInt::from(-1));
            d.set(e.ends.1, j, BigInt::from(1));
        }
        d
    }

    /// `∂₂ : C₂ → C₁`, with every face read along its stored boundary.
    pub fn boundary_2(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.edges.len(), self.faces.len());
        for (j, f) in self.faces.iter().enumerate() {
            for &(e, fwd) in &f.boundary {
                let v = d.get(e, j) + if fwd { 1 } else { -1 };
                d.set(e, j, v);
            }
        }
        d
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new(
            vec![self.vertex_count(), self.edges.len(), self.faces.len()],
            vec![self.boundary_1(), self.boundary_2()],
        )
        .expect("cellular boundary squares to zero")
    }

    pub fn homology(&self) -> Vec<AbelianGroup> {
        self.chain_complex().homology()
    }
}

pub fn build_surface_complex(d: &FourPlaneDiagram) -> Result<SurfaceComplex> {
    let m = d.matchings().ok_or_else(|| Error::InvalidTangle {
        tangle: 0,
        message: "relators do not determine endpoint matchings".into(),
    })?;
    Ok(SurfaceComplex::from_matchings(d.bridges(), &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn diagram(b: usize, words: [&[i64]; 4]) -> FourPlaneDiagram {
        FourPlaneDiagram::from_braids(b, words.map(|w| BraidWord::from_signed(2 * b, w).unwrap())).unwrap()
    }

    #[test]
    fn one_bridge_sphere() {
        let s = build_surface_complex(&diagram(1, [&[], &[], &[], &[]])).unwrap();
        assert_eq!(s.euler_characteristic, 2);
        assert!(s.orientable);
        assert_eq!(s.genus, 0);
        assert_eq!(s.homology()[1], AbelianGroup::trivial());
    }

    #[test]
    fn two_bridge_torus() {
        // slopes 0, ∞, 0, ∞ around the sphere: lens space L(1,1) data
        let s = build_surface_complex(&diagram(2, [&[], &[2], &[], &[2]])).unwrap();
        assert_eq!(s.euler_characteristic, 0);
        assert!(s.orientable);
        assert_eq!(s.genus, 1);
        assert_eq!(s.homology()[1], AbelianGroup::free(2));
    }

    #[test]
    fn orientability_verdicts_agree() {
        let s = build_surface_complex(&diagram(3, [&[], &[2, 4], &[3], &[1, 2]])).unwrap();
        assert_eq!(s.orientable, s.vertex_signs.is_some());
        let rev: Vec<usize> = (0..s.faces.len()).rev().collect();
        assert_eq!(s.propagate_orientation(&rev).is_some(), s.orientable);
    }
}
