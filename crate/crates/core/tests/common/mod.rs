#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use q4d_core::algebra::{lattice_intersect, smith_normal_form, AbelianGroup, IntegerMatrix, Lattice, Word};
use q4d_core::braid::BraidWord;
use q4d_core::constructions::mutual_braid_move;
use q4d_core::cover::{branched_cover_homology, check_extends, PermutationRep};
use q4d_core::format::{parse_diagram, parse_rho};
use q4d_core::heegaard::h1_3manifold;
use q4d_core::tangle::FourPlaneDiagram;

pub fn spun_trefoil() -> (FourPlaneDiagram, PermutationRep) {
    let d = parse_diagram(include_str!("../../fixtures/spun_trefoil.q4d")).unwrap();
    let rho = parse_rho(include_str!("../../fixtures/spun_trefoil.rho"), 12).unwrap();
    (d, rho)
}

// determinant over i128 by fraction-free elimination
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

pub fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// `UMV = D`, unimodular `U` and `V`, a divisibility chain on the diagonal,
/// and for shapes up to 5×5 agreement with the determinantal divisors.
pub fn smith_contract(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = IntegerMatrix::from_rows(rows);
    let s = smith_normal_form(&m);
    prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
    prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            prop_assert!(i == j || s.d.get(i, j).is_zero());
        }
    }
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| s.d.get(i, i).clone()).collect();
    for w in diag.windows(2) {
        prop_assert!(!w[0].is_negative());
        let divides = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        prop_assert!(divides);
    }
    if m.rows() <= 5 && m.cols() <= 5 {
        let mut prev = BigInt::one();
        for k in 1..=diag.len() {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let minor: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect())
                        .collect();
                    g = g.gcd(&BigInt::from(det(minor)));
                }
            }
            let expected = if prev.is_zero() { BigInt::zero() } else { &g / &prev };
            prop_assert_eq!(&diag[k - 1], &expected);
            prev = g;
        }
    }
    Ok(())
}

pub fn gens_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3)
}

fn enumerate(gens: &[Vec<i64>], k: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::from([vec![0; 4]]);
    for g in gens {
        let mut next = BTreeSet::new();
        for v in &out {
            for c in -k..=k {
                next.insert(v.iter().zip(g).map(|(a, b)| a + c * b).collect());
            }
        }
        out = next;
    }
    out
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Compares the intersection with small integer combinations of both
/// generating sets.
pub fn intersection_oracle(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let la = Lattice::span(4, &a.iter().map(|v| to_big(v)).collect::<Vec<_>>());
    let lb = Lattice::span(4, &b.iter().map(|v| to_big(v)).collect::<Vec<_>>());
    let i = lattice_intersect(&la, &lb).unwrap();
    let sa = enumerate(a, 3);
    let sb = enumerate(b, 3);
    for v in sa.intersection(&sb) {
        prop_assert!(i.contains(&to_big(v)));
    }
    for v in i.basis_vectors() {
        prop_assert!(la.contains(&v) && lb.contains(&v));
    }
    for v in &sa {
        prop_assert_eq!(lb.contains(&to_big(v)), i.contains(&to_big(v)));
    }
    Ok(())
}

pub fn word_strategy(gens: usize, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=len).prop_map(|ls| {
        Word::from_signed(
            &ls.iter()
                .map(|&(g, inv)| if inv { -(g as i64 + 1) } else { g as i64 + 1 })
                .collect::<Vec<_>>(),
        )
    })
}

pub fn braid_strategy(strands: usize, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..strands as i64, any::<bool>()), 0..=len).prop_map(move |ls| {
        BraidWord::from_signed(
            strands,
            &ls.iter().map(|&(i, inv)| if inv { -i } else { i }).collect::<Vec<_>>(),
        )
        .unwrap()
    })
}

/// Drops letters that do not fit on `strands` strands.
pub fn restrict(w: &BraidWord, strands: usize) -> BraidWord {
    let ls: Vec<i64> = w
        .letters()
        .iter()
        .filter(|l| l.index < strands)
        .map(|l| if l.inverse { -(l.index as i64) } else { l.index as i64 })
        .collect();
    BraidWord::from_signed(strands, &ls).unwrap()
}

pub fn assert_duality(h: &[AbelianGroup]) -> Result<(), TestCaseError> {
    let b: Vec<usize> = h.iter().map(|g| g.free_rank).collect();
    prop_assert_eq!(b.len(), 6);
    prop_assert_eq!((b[1], b[2]), (b[4], b[3]));
    Ok(())
}

/// `H₁(Y)` and the cover homology of the spun trefoil survive a mutual braid
/// move with the transported representation.
pub fn spun_trefoil_move_invariance(w: &BraidWord, base: &[AbelianGroup]) -> Result<(), TestCaseError> {
    let (d, rho) = spun_trefoil();
    let (moved, moved_rho) = mutual_braid_move(&d, w, Some(&rho)).unwrap();
    let moved_rho = moved_rho.unwrap();
    prop_assert!(check_extends(&moved_rho, &moved));
    prop_assert!(h1_3manifold(&moved).unwrap().is_trivial());
    let h = branched_cover_homology(&moved, &moved_rho).unwrap();
    assert_duality(&h.homology)?;
    prop_assert_eq!(h.homology.as_slice(), base);
    Ok(())
}
