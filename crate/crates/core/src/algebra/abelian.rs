use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;

/// Finitely generated abelian group `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` in
/// invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            return Self::free(1);
        }
        Self::from_orders(0, &[BigInt::from(order)])
    }

    /// Canonicalizes an arbitrary list of cyclic orders (zeros count as free
    /// summands, ones are dropped).
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut diag = Vec::new();
        for o in orders {
            if o == &BigInt::from(0) {
                free += 1;
            } else if !o.is_one() && o != &BigInt::from(-1) {
                diag.push(o.clone());
            }
        }
        let n = diag.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        let snf = smith_normal_form(&m);
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        Self {
            free_rank: free,
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    /// True when every torsion coefficient is a multiple of `d`.
    pub fn torsion_divisible_by(&self, d: &BigInt) -> bool {
        self.torsion.iter().all(|t| t.is_multiple_of(d))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The group `ℤ^rows / colspan(M)`.
pub fn cokernel_invariants(m: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroup {
        free_rank: m.rows() - snf.rank,
        torsion,
    }
}
