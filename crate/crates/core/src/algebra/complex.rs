use num_traits::One;

use super::abelian::AbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Chain complex of free abelian groups `C_k → … → C_1 → C_0`.
/// `boundaries[i - 1]` is `d_i : ℤ^{r_i} → ℤ^{r_{i-1}}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::IllFormedComplex(format!(
                "{} ranks need {} boundary maps, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let i = k + 1;
            if d.rows() != ranks[i - 1] || d.cols() != ranks[i] {
                return Err(Error::IllFormedComplex(format!(
                    "d_{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i - 1],
                    ranks[i]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(Error::IllFormedComplex(format!("d_{} d_{} != 0", k, k + 1)));
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `d_i`, for `1 ≤ i ≤ top_degree`.
    pub fn boundary(&self, i: usize) -> &IntegerMatrix {
        &self.boundaries[i - 1]
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    pub fn homology(&self) -> Vec<AbelianGroup> {
        chain_homology(self)
    }
}

/// `H_i = ker d_i / im d_{i+1}` in every degree.
pub fn chain_homology(c: &ChainComplex) -> Vec<AbelianGroup> {
    let top = c.top_degree();
    let snfs: Vec<_> = c.boundaries.iter().map(smith_normal_form).collect();
    let rank_of = |i: usize| if i == 0 || i > top { 0 } else { snfs[i - 1].rank };
    (0..=top)
        .map(|i| {
            let torsion = if i < top {
                snfs[i]
                    .invariant_factors()
                    .into_iter()
                    .filter(|d| !d.is_one())
                    .collect()
            } else {
                Vec::new()
            };
            AbelianGroup {
                free_rank: c.ranks[i] - rank_of(i) - rank_of(i + 1),
                torsion,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_by_p() {
        let c = ChainComplex::new(vec![1, 1], vec![IntegerMatrix::from_rows(&[vec![5]])]).unwrap();
        assert_eq!(c.homology(), vec![AbelianGroup::cyclic(5), AbelianGroup::trivial()]);
    }

    #[test]
    fn zero_maps() {
        let ranks = vec![1, 0, 0, 0, 1];
        let maps = (1..ranks.len())
            .map(|i| IntegerMatrix::zeros(ranks[i - 1], ranks[i]))
            .collect();
        let h = ChainComplex::new(ranks, maps).unwrap().homology();
        assert_eq!(h[0], AbelianGroup::free(1));
        assert_eq!(h[4], AbelianGroup::free(1));
        assert!(h[1..4].iter().all(AbelianGroup::is_trivial));
    }

    #[test]
    fn rejects_nonzero_square() {
        let one = IntegerMatrix::from_rows(&[vec![1]]);
        assert!(ChainComplex::new(vec![1, 1, 1], vec![one.clone(), one]).is_err());
        assert!(ChainComplex::new(vec![1, 2], vec![IntegerMatrix::zeros(1, 1)]).is_err());
    }
}
