//! Presentations of the punctured sphere, tangle complements and pairwise
//! links, plus a Tietze simplifier.

use std::collections::BTreeMap;

use crate::algebra::{FPGroup, Letter, Word};
use crate::error::{Error, Result};
use crate::tangle::Tangle;

pub use crate::braid::artin_image;

/// `⟨x₀ … x_{2b-1} | x₀x₁⋯x_{2b-1}⟩`.
pub fn sphere_group(b: usize) -> FPGroup {
    let n = 2 * b;
    let rel = Word::from_letters((0..n).map(|i| Letter::new(i, false)).collect());
    FPGroup::numbered(n, vec![rel]).expect("sphere relator is in range")
}

/// Complement of a tangle: cap relators pushed through the braid, or the
/// supplied relators verbatim.
pub fn tangle_group(t: &Tangle) -> FPGroup {
    FPGroup::numbered(2 * t.bridges(), t.relators()).expect("tangle relators are in range")
}

/// Group of the link `T_i ∪ T̄_j`. The mirror tangle has the same relators
/// in the shared puncture generators, so the two lists are simply combined.
pub fn link_group(a: &Tangle, b: &Tangle) -> Result<FPGroup> {
    if a.bridges() != b.bridges() {
        return Err(Error::BridgeMismatch {
            expected: a.bridges(),
            found: b.bridges(),
        });
    }
    let mut rel = a.relators();
    rel.extend(b.relators());
    FPGroup::numbered(2 * a.bridges(), rel)
}

/// True when the two lists agree as multisets of relators up to cyclic
/// permutation, inversion and conjugation.
pub fn relators_equivalent(a: &[Word], b: &[Word]) -> bool {
    let key = |ws: &[Word]| {
        let mut k: Vec<Word> = ws.iter().map(Word::conjugacy_key).collect();
        k.sort();
        k
    };
    key(a) == key(b)
}

/// Limits for [`tietze_simplify`].
#[derive(Clone, Copy, Debug)]
pub struct TietzeBudget {
    pub max_steps: usize,
    pub max_total_length: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        Self {
            max_steps: 10_000,
            max_total_length: 200_000,
        }
    }
}

/// Eliminates generators that occur exactly once in some relator, preferring
/// the shortest such relator and then the highest-index generator. When no
/// such generator exists, applies the elementary Nielsen move that shortens
/// the relators most, if any does. Relators are kept cyclically reduced and
/// deduplicated up to conjugacy. Generator names are kept, so after a Nielsen
/// move a name no longer denotes the original element.
pub fn tietze_simplify(g: &FPGroup, budget: TietzeBudget) -> FPGroup {
    let n = g.generator_count();
    let mut alive = vec![true; n];
    let mut relators = tidy(g.relators().to_vec());
    for _ in 0..budget.max_steps {
        let Some((ri, gen)) = pick_elimination(&relators) else {
            match nielsen_step(&relators, &alive) {
                Some(next) => {
                    relators = tidy(next);
                    continue;
                }
                None => break,
            }
        };
        let r = relators.swap_remove(ri);
        let pos = r.letters().iter().position(|l| l.gen == gen).expect("generator occurs");
        // r = u g^e v  =>  g = (v u)^{-e}
        let rotated = r.rotate(pos);
        let rest = Word::from_letters(rotated.letters()[1..].to_vec());
        let value = if rotated.letters()[0].inverse {
            rest
        } else {
            rest.inverse()
        };
        let next: Vec<Word> = relators
            .iter()
            .map(|w| w.substitute(|k| if k == gen { value.clone() } else { Word::generator(k) }))
            .collect();
        let total: usize = next.iter().map(Word::len).sum();
        if total > budget.max_total_length {
            relators.push(r);
            break;
        }
        alive[gen] = false;
        relators = tidy(next);
    }

    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut renumber = BTreeMap::new();
    for (new, &old) in keep.iter().enumerate() {
        renumber.insert(old, new);
    }
    let names = keep.iter().map(|&i| g.generators()[i].clone()).collect();
    let rel = relators
        .iter()
        .map(|w| {
            Word::from_letters(
                w.letters()
                    .iter()
                    .map(|l| Letter::new(renumber[&l.gen], l.inverse))
                    .collect(),
            )
        })
        .collect();
    FPGroup::new(names, rel).expect("renumbered relators stay in range")
}

fn tidy(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.conjugacy_key()) {
            out.push(r);
        }
    }
    out
}

fn total_length(relators: &[Word]) -> usize {
    relators.iter().map(|r| r.cyclic_reduce().len()).sum()
}

/// Best strictly shortening substitution `x_i ↦ x_i x_j^{±1}` or
/// `x_i ↦ x_j^{±1} x_i`.
fn nielsen_step(relators: &[Word], alive: &[bool]) -> Option<Vec<Word>> {
    let live: Vec<usize> = (0..alive.len()).filter(|&i| alive[i]).collect();
    let mut best: Option<(usize, Vec<Word>)> = None;
    let current = total_length(relators);
    for &i in &live {
        for &j in &live {
            if i == j {
                continue;
            }
            for inverse in [false, true] {
                let y = Word::from_letters(vec![Letter::new(j, inverse)]);
                let xi = Word::generator(i);
                for image in [xi.concat(&y), y.concat(&xi)] {
                    let next: Vec<Word> = relators
                        .iter()
                        .map(|w| {
                            w.substitute(|k| if k == i { image.clone() } else { Word::generator(k) })
                                .cyclic_reduce()
                        })
                        .collect();
                    let len = total_length(&next);
                    if len < current && best.as_ref().is_none_or(|(l, _)| len < *l) {
                        best = Some((len, next));
                    }
                }
            }
        }
    }
    best.map(|(_, next)| next)
}

fn pick_elimination(relators: &[Word]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (ri, r) in relators.iter().enumerate() {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for l in r.letters() {
            *count.entry(l.gen).or_default() += 1;
        }
        let Some(gen) = count.iter().rev().find(|(_, &c)| c == 1).map(|(&g, _)| g) else {
            continue;
        };
        let better = match best {
            None => true,
            Some((len, g, _)) => r.len() < len || (r.len() == len && gen > g),
        };
        if better {
            best = Some((r.len(), gen, ri));
        }
    }
    best.map(|(_, gen, ri)| (ri, gen))
}

/// True when the presentation has no relators left, i.e. it is visibly free.
pub fn is_visibly_free(g: &FPGroup) -> bool {
    g.relators().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianGroup;
    use crate::braid::BraidWord;
    use crate::tangle::TrivialTangle;

    #[test]
    fn sphere_groups() {
        let g = sphere_group(1);
        assert_eq!(g.to_text(), "generators: x0 x1\nrelators:\nx0 x1\n");
        assert_eq!(g.abelianization().group, AbelianGroup::free(1));
        assert_eq!(
            tietze_simplify(&sphere_group(2), TietzeBudget::default()).generator_count(),
            3
        );
        let g6 = sphere_group(6);
        assert_eq!((g6.generator_count(), g6.relators().len()), (12, 1));
    }

    #[test]
    fn simple_tietze_moves() {
        let g = FPGroup::numbered(2, vec![Word::from_signed(&[2])]).unwrap();
        let s = tietze_simplify(&g, TietzeBudget::default());
        assert_eq!(s.generators(), ["x0".to_string()]);
        assert!(is_visibly_free(&s));
        let h = FPGroup::numbered(2, vec![Word::from_signed(&[1, 2])]).unwrap();
        let s = tietze_simplify(&h, TietzeBudget::default());
        assert_eq!(s.generator_count(), 1);
        assert!(is_visibly_free(&s));
    }

    #[test]
    fn trefoil_group_is_not_free() {
        // plat closure of σ₂³ on four strands
        let t = Tangle::Plat(TrivialTangle::new(2, BraidWord::from_signed(4, &[2, 2, 2]).unwrap()).unwrap());
        let u = Tangle::Plat(TrivialTangle::trivial(2));
        let g = link_group(&t, &u).unwrap();
        assert_eq!(g.abelianization().group, AbelianGroup::free(1));
        assert!(!is_visibly_free(&tietze_simplify(&g, TietzeBudget::default())));
    }

    #[test]
    fn one_bridge_tangle() {
        let t = Tangle::Plat(TrivialTangle::trivial(1));
        assert_eq!(tangle_group(&t).to_text(), "generators: x0 x1\nrelators:\nx0 x1\n");
        let l = link_group(&t, &t).unwrap();
        assert_eq!(l.abelianization().group, AbelianGroup::free(1));
    }
}
