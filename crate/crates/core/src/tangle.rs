//! Trivial tangles, 4-plane diagrams and endpoint matchings.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{FPGroup, Permutation, Word};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Plat of a braid on `2b` strands closed off by the standard caps
/// `(0 1)(2 3)…(2b-2 2b-1)` at the far end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrivialTangle {
    bridges: usize,
    braid: BraidWord,
}

impl TrivialTangle {
    pub fn new(bridges: usize, braid: BraidWord) -> Result<Self> {
        if braid.strands() != 2 * bridges {
            return Err(Error::StrandCountMismatch {
                expected: 2 * bridges,
                found: braid.strands(),
            });
        }
        Ok(Self { bridges, braid })
    }

    pub fn trivial(bridges: usize) -> Self {
        Self {
            bridges,
            braid: BraidWord::identity(2 * bridges),
        }
    }

    pub fn bridges(&self) -> usize {
        self.bridges
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn mirror(&self) -> Self {
        Self {
            bridges: self.bridges,
            braid: self.braid.inverse(),
        }
    }

    /// The cap relators `x_{2k} x_{2k+1}` pushed through the braid.
    pub fn relators(&self) -> Vec<Word> {
        (0..self.bridges)
            .map(|k| {
                let cap = Word::from_signed(&[2 * k as i64 + 1, 2 * k as i64 + 2]);
                self.braid.act(&cap)
            })
            .collect()
    }
}

/// A tangle given only through `b` relators of its complement group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelatorTangle {
    bridges: usize,
    relators: Vec<Word>,
}

impl RelatorTangle {
    /// Rejects relator lists whose abelianized group is not `ℤ^b`.
    pub fn new(bridges: usize, relators: Vec<Word>) -> Result<Self> {
        let invalid = |message: String| Error::InvalidTangle { tangle: 0, message };
        if relators.len() != bridges {
            return Err(invalid(format!(
                "expected {bridges} relators, found {}",
                relators.len()
            )));
        }
        let g = FPGroup::numbered(2 * bridges, relators.clone())?;
        let ab = g.abelianization().group;
        if ab.free_rank != bridges || !ab.torsion.is_empty() {
            return Err(invalid(format!("abelianization is {ab}, expected Z^{bridges}")));
        }
        Ok(Self { bridges, relators })
    }

    pub fn bridges(&self) -> usize {
        self.bridges
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Endpoint matching read off the relators, available when every
    /// relator has exponent sum `e_a + e_b` and these pairs are disjoint.
    pub fn matching(&self) -> Option<Permutation> {
        let n = 2 * self.bridges;
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for r in &self.relators {
            let v = r.exponent_vector(n);
            let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
            let [a, b] = support[..] else { return None };
            if !v[a].is_one() || !v[b].is_one() || used[a] || used[b] {
                return None;
            }
            used[a] = true;
            used[b] = true;
            images[a] = b;
            images[b] = a;
        }
        Permutation::from_images(images).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tangle {
    Plat(TrivialTangle),
    Relators(RelatorTangle),
}

impl Tangle {
    pub fn bridges(&self) -> usize {
        match self {
            Tangle::Plat(t) => t.bridges(),
            Tangle::Relators(t) => t.bridges(),
        }
    }

    pub fn relators(&self) -> Vec<Word> {
        match self {
            Tangle::Plat(t) => t.relators(),
            Tangle::Relators(t) => t.relators().to_vec(),
        }
    }

    pub fn matching(&self) -> Option<Permutation> {
        match self {
            Tangle::Plat(t) => Some(tangle_matching(t)),
            Tangle::Relators(t) => t.matching(),
        }
    }

    pub fn as_plat(&self) -> Option<&TrivialTangle> {
        match self {
            Tangle::Plat(t) => Some(t),
            Tangle::Relators(_) => None,
        }
    }
}

/// Spine `(T₁, T₂, T₃, T₄)` on a common set of `2b` punctures.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FourPlaneDiagram {
    bridges: usize,
    tangles: [Tangle; 4],
    label: Option<String>,
}

impl FourPlaneDiagram {
    pub fn new(bridges: usize, tangles: [Tangle; 4]) -> Result<Self> {
        for t in &tangles {
            if t.bridges() != bridges {
                return Err(Error::BridgeMismatch {
                    expected: bridges,
                    found: t.bridges(),
                });
            }
        }
        Ok(Self {
            bridges,
            tangles,
            label: None,
        })
    }

    pub fn from_braids(bridges: usize, braids: [BraidWord; 4]) -> Result<Self> {
        let [a, b, c, d] = braids;
        let t = |w: BraidWord| TrivialTangle::new(bridges, w).map(Tangle::Plat);
        Self::new(bridges, [t(a)?, t(b)?, t(c)?, t(d)?])
    }

    pub fn from_relators(bridges: usize, lists: [Vec<Word>; 4]) -> Result<Self> {
        let mut tangles = Vec::with_capacity(4);
        for (i, rel) in lists.into_iter().enumerate() {
            let t = RelatorTangle::new(bridges, rel).map_err(|e| match e {
                Error::InvalidTangle { message, .. } => Error::InvalidTangle { tangle: i + 1, message },
                other => other,
            })?;
            tangles.push(Tangle::Relators(t));
        }
        let tangles: [Tangle; 4] = tangles.try_into().expect("four tangles");
        Self::new(bridges, tangles)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn bridges(&self) -> usize {
        self.bridges
    }

    pub fn punctures(&self) -> usize {
        2 * self.bridges
    }

    /// Tangle `T_{i+1}` for 0-based `i`.
    pub fn tangle(&self, i: usize) -> &Tangle {
        &self.tangles[i]
    }

    pub fn tangles(&self) -> &[Tangle; 4] {
        &self.tangles
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_plat(&self) -> bool {
        self.tangles.iter().all(|t| matches!(t, Tangle::Plat(_)))
    }

    /// Braids of a plat diagram.
    pub fn braids(&self) -> Option<[BraidWord; 4]> {
        let mut out = Vec::with_capacity(4);
        for t in &self.tangles {
            out.push(t.as_plat()?.braid().clone());
        }
        out.try_into().ok()
    }

    /// Matchings of all four tangles, when each is known.
    pub fn matchings(&self) -> Option<[Permutation; 4]> {
        let v: Option<Vec<Permutation>> = self.tangles.iter().map(Tangle::matching).collect();
        v?.try_into().ok()
    }

    /// Reorders the spine to `(T_{order[0]+1}, …)`.
    pub fn permuted(&self, order: [usize; 4]) -> Self {
        Self {
            bridges: self.bridges,
            tangles: order.map(|i| self.tangles[i].clone()),
            label: self.label.clone(),
        }
    }
}

/// Endpoint pairing of a plat: the cap involution conjugated by the braid
/// permutation.
pub fn tangle_matching(t: &TrivialTangle) -> Permutation {
    let n = 2 * t.bridges();
    let perm = t.braid().permutation();
    let mut images = vec![0; n];
    for k in 0..t.bridges() {
        let (a, b) = (perm.apply(2 * k), perm.apply(2 * k + 1));
        images[a] = b;
        images[b] = a;
    }
    Permutation::from_images(images).expect("matching is a bijection")
}

/// Number of components of `T_i ∪ T̄_j`.
pub fn pair_components(a: &Tangle, b: &Tangle) -> Result<usize> {
    if a.bridges() != b.bridges() {
        return Err(Error::BridgeMismatch {
            expected: a.bridges(),
            found: b.bridges(),
        });
    }
    let no_matching = || Error::InvalidTangle {
        tangle: 0,
        message: "relators do not determine an endpoint matching".into(),
    };
    let ma = a.matching().ok_or_else(no_matching)?;
    let mb = b.matching().ok_or_else(no_matching)?;
    Ok(crate::algebra::perm::orbits(2 * a.bridges(), &[&ma, &mb]).len())
}

/// Exponent vector `e_a + e_b` of each matched pair; handy for comparing a
/// matching against relator abelianizations.
pub fn matching_vectors(m: &Permutation) -> Vec<Vec<BigInt>> {
    let n = m.degree();
    (0..n)
        .filter(|&a| a < m.apply(a))
        .map(|a| {
            let mut v = vec![BigInt::zero(); n];
            v[a] = BigInt::one();
            v[m.apply(a)] = BigInt::one();
            v
        })
        .collect()
}
