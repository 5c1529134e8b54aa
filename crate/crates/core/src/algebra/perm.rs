use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// Permutation of `{1..n}`, stored 0-based. Products act on the right:
/// `p.then(q)` sends `i` to `q(p(i))`, matching how sheets are followed
/// along a word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// From disjoint cycles written with 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!("point {p} outside 1..{n}")));
                }
                if used[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated")));
                }
                used[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn then(&self, q: &Self) -> Self {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Self {
            images: self.images.iter().map(|&i| q.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles as 0-based point lists, each starting at its least point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Number of disjoint cycles, fixed points included.
pub fn cycle_count(p: &Permutation) -> usize {
    p.cycles().len()
}

/// Orbits of the group generated by `gens` on `{0..n}`, as sorted point
/// lists ordered by least element.
pub fn orbits(n: usize, gens: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(n);
    for g in gens {
        assert_eq!(g.degree(), n, "degree mismatch");
        for i in 0..n {
            uf.union(i, g.apply(i));
        }
    }
    let labels = uf.into_labeling();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for (i, &root) in labels.iter().enumerate() {
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

pub fn is_transitive(n: usize, gens: &[&Permutation]) -> bool {
    n == 0 || orbits(n, gens).len() == 1
}
