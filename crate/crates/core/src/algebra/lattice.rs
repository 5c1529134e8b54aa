use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Subgroup of `ℤ^m` given by a basis; columns of `basis` are linearly
/// independent. Two lattices compare equal when they span the same
/// subgroup, regardless of the basis chosen.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntegerMatrix,
}

impl Lattice {
    pub fn zero(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            basis: IntegerMatrix::zeros(ambient_rank, 0),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            basis: IntegerMatrix::identity(ambient_rank),
        }
    }

    /// Lattice spanned by arbitrary (possibly dependent) vectors.
    pub fn span(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Self {
        let g = IntegerMatrix::from_columns(ambient_rank, vectors);
        Self::column_span(&g)
    }

    /// Lattice spanned by the columns of `g`.
    pub fn column_span(g: &IntegerMatrix) -> Self {
        let snf = smith_normal_form(g);
        // g·v has the same span as g, and its nonzero columns come first
        let gv = g * &snf.v;
        let idx: Vec<usize> = (0..snf.rank).collect();
        Self {
            ambient_rank: g.rows(),
            basis: hermite_columns(&gv.select_columns(&idx)),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Coefficients `x` with `basis · x = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank, "ambient rank mismatch");
        let snf = smith_normal_form(&self.basis);
        let uv = snf.u.mul_vec(v);
        let mut y = vec![BigInt::zero(); self.rank()];
        for (i, c) in uv.iter().enumerate() {
            if i < snf.rank {
                let d = snf.d.get(i, i);
                if !c.is_multiple_of(d) {
                    return None;
                }
                y[i] = c / d;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// True when `ℤ^m / self` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        smith_normal_form(&self.basis)
            .invariant_factors()
            .iter()
            .all(|d| d == &BigInt::from(1))
    }

    /// Matrix expressing each basis vector of `self` in the basis of the
    /// containing lattice `outer`.
    pub fn inclusion_matrix(&self, outer: &Self) -> Result<IntegerMatrix> {
        let mut cols = Vec::with_capacity(self.rank());
        for v in self.basis_vectors() {
            cols.push(outer.coordinates(&v).ok_or(Error::NotSublattice)?);
        }
        Ok(IntegerMatrix::from_columns(outer.rank(), &cols))
    }

    /// Image of the lattice under a linear map `ℤ^m → ℤ^k`.
    pub fn image(&self, map: &IntegerMatrix) -> Self {
        Self::column_span(&(map * &self.basis))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        lattice_intersect(self, other)
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }
}

impl Eq for Lattice {}

/// `{ v ∈ ℤ^cols : M v = 0 }`, a saturated sublattice.
pub fn kernel_lattice(m: &IntegerMatrix) -> Lattice {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    Lattice {
        ambient_rank: m.cols(),
        basis: hermite_columns(&snf.v.select_columns(&idx)),
    }
}

pub fn lattice_intersect(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    if a.ambient_rank != b.ambient_rank {
        return Err(Error::AmbientRankMismatch {
            left: a.ambient_rank,
            right: b.ambient_rank,
        });
    }
    if a.rank() == 0 || b.rank() == 0 {
        return Ok(Lattice::zero(a.ambient_rank));
    }
    // (x, y) with A x = B y
    let stacked = a.basis.hstack(&b.basis.neg());
    let kernel = kernel_lattice(&stacked);
    let top: Vec<usize> = (0..a.rank()).collect();
    let xs = kernel.basis.select_rows(&top);
    Ok(Lattice {
        ambient_rank: a.ambient_rank,
        basis: hermite_columns(&(&a.basis * &xs)),
    })
}

/// Column-style Hermite normal form of a full-column-rank matrix; gives each
/// lattice a canonical basis for reporting.
fn hermite_columns(m: &IntegerMatrix) -> IntegerMatrix {
    let mut h = m.clone();
    let rows = h.rows();
    let cols = h.cols();
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == cols {
            break;
        }
        // gcd-reduce row r across columns pivot_col..
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if !h.get(r, j).is_zero() && best.is_none_or(|b| h.get(r, j).abs() < h.get(r, b).abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(pivot_col, b);
            let mut done = true;
            for j in pivot_col + 1..cols {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let q = -h.get(r, j).div_floor(h.get(r, pivot_col));
                h.add_col_multiple(j, pivot_col, &q);
                if !h.get(r, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, pivot_col).is_zero() {
            continue;
        }
        if h.get(r, pivot_col).is_negative() {
            h.negate_col(pivot_col);
        }
        let p = h.get(r, pivot_col).clone();
        for j in 0..pivot_col {
            let q = -h.get(r, j).div_floor(&p);
            h.add_col_multiple(j, pivot_col, &q);
        }
        pivot_col += 1;
    }
    h
}
