use std::fmt;

use crate::algebra::{Letter, Permutation, Word};
use crate::error::{Error, Result};

/// Artin generator `σ_index` (1-based) or its inverse. It crosses the
/// strands at 0-based positions `index - 1` and `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Self { index, inverse }
    }

    pub fn inv(self) -> Self {
        Self::new(self.index, !self.inverse)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::BraidIndexOutOfRange {
                    index: l.index,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// Word from signed indices: `3` is `σ₃`, `-3` is `σ₃⁻¹`.
    pub fn from_signed(strands: usize, spec: &[i64]) -> Result<Self> {
        let letters = spec
            .iter()
            .map(|&k| BraidLetter::new(k.unsigned_abs() as usize, k < 0))
            .collect();
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandCountMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Group inverse: reversed word with every letter inverted. As a plat
    /// this is the mirror tangle.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<BraidLetter> = Vec::new();
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }

    /// Underlying permutation: the point at position `p` before the braid
    /// ends up at position `perm.apply(p)`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let (a, b) = (l.index - 1, l.index);
            for x in images.iter_mut() {
                if *x == a {
                    *x = b;
                } else if *x == b {
                    *x = a;
                }
            }
        }
        Permutation::from_images(images).expect("transpositions compose to a bijection")
    }

    /// Image of each generator `x_0..x_{strands-1}` under the Artin action of
    /// the whole word, letters applied first to last.
    pub fn generator_images(&self) -> Vec<Word> {
        let mut images: Vec<Word> = (0..self.strands).map(Word::generator).collect();
        for &l in &self.letters {
            images = images
                .iter()
                .map(|w| w.substitute(|g| artin_letter(l, g)).free_reduce())
                .collect();
        }
        images
    }

    /// Artin image of `word`.
    pub fn act(&self, word: &Word) -> Word {
        let mut current = word.clone();
        for &l in &self.letters {
            current = current.substitute(|g| artin_letter(l, g)).free_reduce();
        }
        current
    }
}

/// Action of one Artin letter on generator `g`:
/// `σ_i : x_{i-1} ↦ x_{i-1} x_i x_{i-1}⁻¹, x_i ↦ x_{i-1}` and the inverse
/// `σ_i⁻¹ : x_{i-1} ↦ x_i, x_i ↦ x_i⁻¹ x_{i-1} x_i`.
fn artin_letter(l: BraidLetter, g: usize) -> Word {
    let (a, b) = (l.index - 1, l.index);
    let x = |k: usize| Letter::new(k, false);
    let xi = |k: usize| Letter::new(k, true);
    let letters = match (g == a, g == b, l.inverse) {
        (true, _, false) => vec![x(a), x(b), xi(a)],
        (_, true, false) => vec![x(a)],
        (true, _, true) => vec![x(b)],
        (_, true, true) => vec![xi(b), x(a), x(b)],
        _ => vec![x(g)],
    };
    Word::from_letters(letters)
}

/// Artin image of `word` under `w`.
pub fn artin_image(w: &BraidWord, word: &Word) -> Word {
    w.act(word)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("s{}{}", l.index, if l.inverse { "'" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_letter_action() {
        let s1 = BraidWord::from_signed(2, &[1]).unwrap();
        assert_eq!(s1.act(&Word::generator(0)), Word::from_signed(&[1, 2, -1]));
        assert_eq!(s1.act(&Word::generator(1)), Word::generator(0));
    }

    #[test]
    fn empty_braid_is_identity() {
        let w = Word::from_signed(&[1, -2, 3]);
        assert_eq!(BraidWord::identity(3).act(&w), w);
    }

    #[test]
    fn word_times_inverse_acts_trivially() {
        let w = BraidWord::from_signed(4, &[1, -2, 3, 3, -1]).unwrap();
        let id = w.concat(&w.inverse()).unwrap();
        for g in 0..4 {
            assert_eq!(id.act(&Word::generator(g)), Word::generator(g));
        }
    }

    #[test]
    fn sphere_relator_is_fixed() {
        let w = BraidWord::from_signed(4, &[2, -1, 3, 2]).unwrap();
        let sphere = Word::from_signed(&[1, 2, 3, 4]);
        assert_eq!(w.act(&sphere), sphere);
    }

    #[test]
    fn index_bounds() {
        assert!(BraidWord::from_signed(4, &[4]).is_err());
        assert!(BraidWord::from_signed(4, &[0]).is_err());
    }
}
