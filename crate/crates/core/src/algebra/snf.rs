//! Smith normal form over ℤ with explicit transformation matrices.
//!
//! Pivots are chosen as the nonzero entry of least absolute value in the
//! active block, ties broken by row-major position, so the transforms are
//! reproducible run to run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal in
/// invariant-factor form (nonnegative, each entry dividing the next).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&d, t..rows, t..cols) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            clear_pivot_cross(&mut d, &mut u, &mut v, t);
            // cross is clear; enforce divisibility on the remaining block
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    SmithForm { u, d, v, rank }
}

/// Zeroes row `t` and column `t` outside the pivot, re-selecting the
/// smallest entry of the cross as pivot whenever a remainder survives.
fn clear_pivot_cross(d: &mut IntegerMatrix, u: &mut IntegerMatrix, v: &mut IntegerMatrix, t: usize) {
    let rows = d.rows();
    let cols = d.cols();
    loop {
        let pivot = d.get(t, t).clone();
        for i in t + 1..rows {
            if d.get(i, t).is_zero() {
                continue;
            }
            let q = -d.get(i, t).div_floor(&pivot);
            d.add_row_multiple(i, t, &q);
            u.add_row_multiple(i, t, &q);
        }
        for j in t + 1..cols {
            if d.get(t, j).is_zero() {
                continue;
            }
            let q = -d.get(t, j).div_floor(&pivot);
            d.add_col_multiple(j, t, &q);
            v.add_col_multiple(j, t, &q);
        }

        let col_rest = smallest_entry(d, t + 1..rows, t..t + 1);
        let row_rest = smallest_entry(d, t..t + 1, t + 1..cols);
        let next = match (col_rest, row_rest) {
            (None, None) => return,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => {
                if d.get(b.0, b.1).abs() < d.get(a.0, a.1).abs() {
                    b
                } else {
                    a
                }
            }
        };
        // every survivor is strictly smaller than the pivot
        if next.0 != t {
            d.swap_rows(t, next.0);
            u.swap_rows(t, next.0);
        }
        if next.1 != t {
            d.swap_cols(t, next.1);
            v.swap_cols(t, next.1);
        }
    }
}

fn smallest_entry(
    d: &IntegerMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let a = d.get(i, j);
            if a.is_zero() {
                continue;
            }
            let a = a.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntegerMatrix) -> Option<IntegerMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let snf = smith_normal_form(m);
    if snf.rank != m.rows() || (0..snf.rank).any(|i| snf.d.get(i, i) != &BigInt::from(1)) {
        return None;
    }
    // u m v = 1  =>  m^{-1} = v u
    Some(&snf.v * &snf.u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check_contract(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
        assert_eq!(s.u, IntegerMatrix::identity(2));
        assert_eq!(s.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check_contract(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let m = IntegerMatrix::zeros(3, 2);
        let s = check_contract(&m);
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntegerMatrix::identity(3));
        assert_eq!(s.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2,3) must become diag(1,6)
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check_contract(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntegerMatrix::from_rows(&[vec![2, 1], vec![5, 3]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(&m * &inv, IntegerMatrix::identity(2));
        assert!(unimodular_inverse(&IntegerMatrix::from_rows(&[vec![2]])).is_none());
    }
}
