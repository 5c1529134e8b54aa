use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abelian::AbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::{smith_normal_form, unimodular_inverse};
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Word in a free group, not reduced unless asked.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// Word from signed 1-shifted indices: `k > 0` is `x_{k-1}`, `k < 0` its inverse.
    pub fn from_signed(spec: &[i64]) -> Self {
        Self {
            letters: spec
                .iter()
                .map(|&k| {
                    assert_ne!(k, 0, "zero is not a signed generator");
                    Letter::new(k.unsigned_abs() as usize - 1, k < 0)
                })
                .collect(),
        }
    }

    pub fn generator(gen: usize) -> Self {
        Self {
            letters: vec![Letter::new(gen, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.letters.iter().any(|l| l.gen == gen)
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    /// Free reduction followed by cancellation between the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.free_reduce().letters;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Self {
            letters: w[lo..hi].to_vec(),
        }
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        Self { letters }
    }

    /// Canonical representative of the cyclic word up to inversion: two
    /// relators get the same key exactly when one is a cyclic permutation of
    /// the other or of its inverse, after cyclic reduction. Conjugates share
    /// a key since conjugation is undone by cyclic reduction.
    pub fn conjugacy_key(&self) -> Self {
        let w = self.cyclic_reduce();
        let inv = w.inverse();
        let mut best = w.clone();
        for cand in [&w, &inv] {
            for k in 0..cand.len() {
                let r = cand.rotate(k);
                if r < best {
                    best = r;
                }
            }
        }
        best
    }

    pub fn exponent_vector(&self, ngens: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); ngens];
        for l in &self.letters {
            v[l.gen] += l.exponent();
        }
        v
    }

    /// Replaces each generator by a word; inverse letters get the inverse word.
    pub fn substitute(&self, image: impl Fn(usize) -> Word) -> Self {
        let mut letters = Vec::new();
        for l in &self.letters {
            let w = image(l.gen);
            if l.inverse {
                letters.extend(w.inverse().letters);
            } else {
                letters.extend(w.letters);
            }
        }
        Self { letters }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", names[l.gen])
                } else {
                    names[l.gen].clone()
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("x{i}"))
            .collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Finite presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPGroup {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FPGroup {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let count = generators.len();
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&g| g >= count) {
                return Err(Error::GeneratorOutOfRange { index, count });
            }
        }
        Ok(Self { generators, relators })
    }

    /// Generators named `x0, x1, …`.
    pub fn numbered(count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((0..count).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Generators × relators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let n = self.generator_count();
        let cols: Vec<Vec<BigInt>> = self.relators.iter().map(|r| r.exponent_vector(n)).collect();
        IntegerMatrix::from_columns(n, &cols)
    }

    pub fn abelianization(&self) -> Abelianization {
        Abelianization::of(self)
    }

    /// Plain-text export:
    ///
    /// ```text
    /// generators: x0 x1 x2
    /// relators:
    /// x0 x1 x2
    /// ```
    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\nrelators:\n", self.generators.join(" "));
        for r in &self.relators {
            s.push_str(&r.render(&self.generators));
            s.push('\n');
        }
        s
    }
}

/// Abelianization with an explicit coordinate map on exponent-sum vectors.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: AbelianGroup,
    /// Unimodular `U` from the Smith form of the exponent matrix.
    pub change_of_basis: IntegerMatrix,
    /// `free_rank × generators`; sends an exponent vector to its free part.
    pub free_map: IntegerMatrix,
    /// Generators whose classes form a basis of the free part, when the
    /// free part is spanned by generator classes in that way; `free_map` is
    /// then expressed in this basis.
    pub basis_generators: Option<Vec<usize>>,
}

impl Abelianization {
    fn of(g: &FPGroup) -> Self {
        let m = g.exponent_matrix();
        let n = g.generator_count();
        let snf = smith_normal_form(&m);
        let torsion: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        let group = AbelianGroup {
            free_rank: n - snf.rank,
            torsion,
        };
        let free_rows: Vec<usize> = (snf.rank..n).collect();
        let snf_free = snf.u.select_rows(&free_rows);
        let (free_map, basis_generators) = match generator_basis(&snf_free) {
            Some((gens, inv)) => (&inv * &snf_free, Some(gens)),
            None => (snf_free, None),
        };
        Self {
            group,
            change_of_basis: snf.u,
            free_map,
            basis_generators,
        }
    }

    pub fn free_coordinates(&self, exponents: &[BigInt]) -> Vec<BigInt> {
        self.free_map.mul_vec(exponents)
    }
}

/// Greedily picks generators, in index order, whose free classes extend to a
/// basis. Returns the chosen generators and the inverse of their coordinate
/// matrix.
fn generator_basis(p: &IntegerMatrix) -> Option<(Vec<usize>, IntegerMatrix)> {
    let r = p.rows();
    let mut chosen: Vec<usize> = Vec::new();
    for g in 0..p.cols() {
        if chosen.len() == r {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(g);
        let sub = p.select_columns(&trial);
        let s = smith_normal_form(&sub);
        if s.rank == trial.len() && s.invariant_factors().iter().all(One::is_one) {
            chosen = trial;
        }
    }
    if chosen.len() < r {
        return None;
    }
    let inv = unimodular_inverse(&p.select_columns(&chosen))?;
    Some((chosen, inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &[i64]) -> Word {
        Word::from_signed(spec)
    }

    #[test]
    fn reduction() {
        assert!(w(&[1, -1]).free_reduce().is_empty());
        assert_eq!(w(&[2, 1, -1, 3]).free_reduce(), w(&[2, 3]));
        assert_eq!(w(&[1, 2, 3, -1]).cyclic_reduce(), w(&[2, 3]));
    }

    #[test]
    fn conjugacy_keys_agree() {
        let r = w(&[2, 3, 2, -3, -2, 4]);
        assert_eq!(r.conjugacy_key(), r.rotate(2).conjugacy_key());
        assert_eq!(r.conjugacy_key(), r.inverse().conjugacy_key());
        let conj = w(&[5]).concat(&r).concat(&w(&[-5]));
        assert_eq!(r.conjugacy_key(), conj.conjugacy_key());
        assert_ne!(r.conjugacy_key(), w(&[2, 3]).conjugacy_key());
    }

    #[test]
    fn small_abelianizations() {
        let g = FPGroup::numbered(1, vec![w(&[1, 1, 1])]).unwrap();
        assert_eq!(g.abelianization().group, AbelianGroup::cyclic(3));
        let h = FPGroup::numbered(2, vec![w(&[1, 2, -1, -2])]).unwrap();
        assert_eq!(h.abelianization().group, AbelianGroup::free(2));
    }

    #[test]
    fn generator_basis_is_found() {
        // <x0,x1,x2 | x0 x1 x2>: classes of x0, x1 form a basis
        let g = FPGroup::numbered(3, vec![w(&[1, 2, 3])]).unwrap();
        let ab = g.abelianization();
        assert_eq!(ab.basis_generators, Some(vec![0, 1]));
        assert_eq!(
            ab.free_coordinates(&w(&[3]).exponent_vector(3)),
            vec![BigInt::from(-1); 2]
        );
    }

    #[test]
    fn out_of_range_relator_rejected() {
        assert!(FPGroup::numbered(1, vec![w(&[2])]).is_err());
    }

    #[test]
    fn text_export() {
        let g = FPGroup::numbered(2, vec![w(&[1, -2])]).unwrap();
        assert_eq!(g.to_text(), "generators: x0 x1\nrelators:\nx0 x1^-1\n");
    }
}
