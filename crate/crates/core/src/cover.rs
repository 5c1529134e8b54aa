//! Branched covers of `S⁵` along a bridge-quadrisected 3-manifold: lifting
//! presentations through a permutation representation, the Lagrangians of
//! the lifted sectors, and the chain complex computing the cover's homology.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;

use crate::algebra::perm::is_transitive;
use crate::algebra::{
    cycle_count, lattice_intersect, AbelianGroup, Abelianization, ChainComplex, FPGroup, IntegerMatrix, Lattice,
    Letter, Permutation, Word,
};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::presentation::{sphere_group, tangle_group};
use crate::tangle::FourPlaneDiagram;

/// `ρ(x_i) ∈ S_n` for every puncture. Sheets are 1-based in the public API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationRep {
    sheets: usize,
    images: Vec<Permutation>,
}

impl PermutationRep {
    /// Checks degrees and that the sphere relator maps to the identity.
    pub fn new(sheets: usize, images: Vec<Permutation>) -> Result<Self> {
        for p in &images {
            if p.degree() != sheets {
                return Err(Error::InvalidPermutation(format!(
                    "{p} has degree {}, expected {sheets}",
                    p.degree()
                )));
            }
        }
        let rep = Self { sheets, images };
        let sphere = Word::from_letters((0..rep.punctures()).map(|i| Letter::new(i, false)).collect());
        if !rep.evaluate(&sphere).is_identity() {
            return Err(Error::NotExtending("product of all images is not the identity".into()));
        }
        Ok(rep)
    }

    /// The one-sheeted representation.
    pub fn trivial(punctures: usize) -> Self {
        Self {
            sheets: 1,
            images: vec![Permutation::identity(1); punctures],
        }
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn punctures(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &Permutation {
        &self.images[i]
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// `ρ(w)`, acting on sheets on the right.
    pub fn evaluate(&self, w: &Word) -> Permutation {
        let mut p = Permutation::identity(self.sheets);
        for l in w.letters() {
            let q = &self.images[l.gen];
            p = if l.inverse { p.then(&q.inverse()) } else { p.then(q) };
        }
        p
    }

    pub fn is_transitive(&self) -> bool {
        let gens: Vec<&Permutation> = self.images.iter().collect();
        is_transitive(self.sheets, &gens)
    }

    /// Representation compatible with the diagram after a mutual braid move
    /// by `w`: `ρ' = ρ ∘ Φ_w⁻¹`.
    pub fn transport(&self, w: &BraidWord) -> Result<Self> {
        if w.strands() != self.punctures() {
            return Err(Error::StrandCountMismatch {
                expected: self.punctures(),
                found: w.strands(),
            });
        }
        let back = w.inverse().generator_images();
        let images = back.iter().map(|img| self.evaluate(img)).collect();
        Self::new(self.sheets, images)
    }
}

/// True when `ρ` kills the sphere relator and every tangle relator.
pub fn check_extends(rho: &PermutationRep, d: &FourPlaneDiagram) -> bool {
    if rho.punctures() != d.punctures() {
        return false;
    }
    let sphere = sphere_group(d.bridges()).relators()[0].clone();
    rho.evaluate(&sphere).is_identity()
        && d.tangles()
            .iter()
            .all(|t| t.relators().iter().all(|r| rho.evaluate(r).is_identity()))
}

/// Index of the lifted generator `x_i^sheet` (sheet 1-based), sheet-major.
pub fn lifted_index(punctures: usize, i: usize, sheet: usize) -> usize {
    (sheet - 1) * punctures + i
}

pub fn lifted_names(punctures: usize, sheets: usize) -> Vec<String> {
    (1..=sheets)
        .flat_map(|s| (0..punctures).map(move |i| format!("x{i}_{s}")))
        .collect()
}

/// Lift of `r` starting on `start_sheet` (1-based). A letter `x_i` read on
/// sheet `s` becomes `x_i^s` and moves to `ρ(x_i)(s)`; `x_i⁻¹` read on `s`
/// becomes `(x_i^t)⁻¹` with `t = ρ(x_i)⁻¹(s)` and moves to `t`.
pub fn lift_relator(r: &Word, rho: &PermutationRep, start_sheet: usize) -> Result<Word> {
    let n = rho.punctures();
    let mut s = start_sheet - 1;
    let mut letters = Vec::with_capacity(r.len());
    for l in r.letters() {
        let p = rho.image(l.gen);
        if l.inverse {
            let t = p.inverse().apply(s);
            letters.push(Letter::new(lifted_index(n, l.gen, t + 1), true));
            s = t;
        } else {
            letters.push(Letter::new(lifted_index(n, l.gen, s + 1), false));
            s = p.apply(s);
        }
    }
    if s != start_sheet - 1 {
        return Err(Error::OpenLift { sheet: start_sheet });
    }
    Ok(Word::from_letters(letters))
}

/// Order in which tree edges are scanned from each sheet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TreePolicy {
    /// Breadth-first over sheets, punctures in increasing order.
    #[default]
    BreadthFirst,
    /// Breadth-first over sheets, punctures in decreasing order.
    BreadthFirstReversed,
}

/// Presentation of the central surface of the branched cover.
#[derive(Clone, Debug)]
pub struct LiftedPresentation {
    pub punctures: usize,
    pub sheets: usize,
    /// Tree edges `(i, sheet)`: generator `x_i^sheet` runs from `sheet` to
    /// `ρ(x_i)(sheet)`.
    pub tree_edges: Vec<(usize, usize)>,
    /// For each sheet, the tree path from sheet 1 as a word in lifted generators.
    pub tree_paths: Vec<Word>,
    pub claw_relators: Vec<Word>,
    pub sphere_relators: Vec<Word>,
    pub branch_relators: Vec<Word>,
    /// Punctured surface of the unbranched cover: claw and sphere relators.
    pub punctured_group: FPGroup,
    /// Closed surface of the branched cover: branch relators added.
    pub group: FPGroup,
}

impl LiftedPresentation {
    pub fn abelianization(&self) -> Abelianization {
        self.group.abelianization()
    }
}

pub fn lift_surface_group(b: usize, rho: &PermutationRep) -> Result<LiftedPresentation> {
    lift_surface_group_with(b, rho, TreePolicy::BreadthFirst)
}

pub fn lift_surface_group_with(b: usize, rho: &PermutationRep, policy: TreePolicy) -> Result<LiftedPresentation> {
    let punctures = 2 * b;
    if rho.punctures() != punctures {
        return Err(Error::PunctureCountMismatch {
            expected: punctures,
            found: rho.punctures(),
        });
    }
    if !rho.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = rho.sheets();
    let order: Vec<usize> = match policy {
        TreePolicy::BreadthFirst => (0..punctures).collect(),
        TreePolicy::BreadthFirstReversed => (0..punctures).rev().collect(),
    };
    let mut paths: Vec<Option<Word>> = vec![None; n];
    paths[0] = Some(Word::new());
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for &i in &order {
            let t = rho.image(i).apply(s);
            if paths[t].is_none() {
                let step = Word::generator(lifted_index(punctures, i, s + 1));
                paths[t] = Some(paths[s].as_ref().expect("visited").concat(&step));
                tree_edges.push((i, s + 1));
                queue.push_back(t);
            }
        }
    }
    let tree_paths: Vec<Word> = paths.into_iter().map(|p| p.expect("transitive")).collect();
    let claw_relators: Vec<Word> = tree_edges
        .iter()
        .map(|&(i, s)| Word::generator(lifted_index(punctures, i, s)))
        .collect();

    let sphere = sphere_group(b).relators()[0].clone();
    let sphere_relators = (1..=n)
        .map(|s| lift_relator(&sphere, rho, s))
        .collect::<Result<Vec<_>>>()?;

    let mut branch_relators = Vec::new();
    for i in 0..punctures {
        for cycle in rho.image(i).cycles() {
            let letters = cycle
                .iter()
                .map(|&s| Letter::new(lifted_index(punctures, i, s + 1), false))
                .collect();
            branch_relators.push(Word::from_letters(letters));
        }
    }

    let mut relators = claw_relators.clone();
    relators.extend(sphere_relators.iter().cloned());
    let punctured_group = FPGroup::new(lifted_names(punctures, n), relators.clone())?;
    relators.extend(branch_relators.iter().cloned());
    let group = FPGroup::new(lifted_names(punctures, n), relators)?;
    Ok(LiftedPresentation {
        punctures,
        sheets: n,
        tree_edges,
        tree_paths,
        claw_relators,
        sphere_relators,
        branch_relators,
        punctured_group,
        group,
    })
}

/// `1 - n + ½ Σ (n - cyc(ρ(x_i)))`.
pub fn riemann_hurwitz_genus(b: usize, rho: &PermutationRep) -> Result<usize> {
    if rho.punctures() != 2 * b {
        return Err(Error::PunctureCountMismatch {
            expected: 2 * b,
            found: rho.punctures(),
        });
    }
    if !rho.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = rho.sheets() as i64;
    let branching: i64 = rho.images().iter().map(|p| n - cycle_count(p) as i64).sum();
    let twice = 2 - 2 * n + branching;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::NonIntegralGenus);
    }
    Ok((twice / 2) as usize)
}

/// Upper bound `1 - n + b(n - 1)` attained by cyclic covers.
pub fn cyclic_genus_bound(b: usize, n: usize) -> usize {
    (1 + b * (n - 1)).saturating_sub(n)
}

/// Lifted surface and sector data of a branched cover.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub genus: usize,
    pub surface: LiftedPresentation,
    pub abelianization: Abelianization,
    /// Presentations of the four lifted handlebodies.
    pub handlebodies: Vec<FPGroup>,
    /// `L_μ ⊂ H₁(Σ̃) ≅ ℤ^{2g}`.
    pub lagrangians: [Lattice; 4],
}

pub fn lagrangians(d: &FourPlaneDiagram, rho: &PermutationRep) -> Result<CoverData> {
    lagrangians_with(d, rho, TreePolicy::BreadthFirst)
}

pub fn lagrangians_with(d: &FourPlaneDiagram, rho: &PermutationRep, policy: TreePolicy) -> Result<CoverData> {
    if rho.punctures() != d.punctures() {
        return Err(Error::PunctureCountMismatch {
            expected: d.punctures(),
            found: rho.punctures(),
        });
    }
    if !check_extends(rho, d) {
        return Err(Error::NotExtending("some tangle relator has nontrivial image".into()));
    }
    let surface = lift_surface_group_with(d.bridges(), rho, policy)?;
    let genus = riemann_hurwitz_genus(d.bridges(), rho)?;
    let ab = surface.abelianization();
    if ab.group != AbelianGroup::free(2 * genus) {
        return Err(Error::NonIntegralGenus);
    }
    let ngens = surface.group.generator_count();

    let mut handlebodies = Vec::with_capacity(4);
    let mut lattices = Vec::with_capacity(4);
    for (mu, t) in d.tangles().iter().enumerate() {
        let mut lifted = Vec::new();
        let mut seen = BTreeSet::new();
        for r in tangle_group(t).relators() {
            for s in 1..=rho.sheets() {
                let w = lift_relator(r, rho, s)?;
                if seen.insert(w.conjugacy_key()) {
                    lifted.push(w);
                }
            }
        }
        let coords: Vec<Vec<BigInt>> = lifted
            .iter()
            .map(|w| ab.free_coordinates(&w.exponent_vector(ngens)))
            .collect();
        let l = Lattice::span(2 * genus, &coords);
        if l.rank() != genus {
            return Err(Error::LagrangianRank {
                sector: mu + 1,
                rank: l.rank(),
                genus,
            });
        }
        if !l.is_saturated() {
            return Err(Error::HandlebodyTorsion { sector: mu + 1 });
        }
        let mut rel = surface.group.relators().to_vec();
        rel.extend(lifted);
        handlebodies.push(FPGroup::new(surface.group.generators().to_vec(), rel)?);
        lattices.push(l);
    }

    Ok(CoverData {
        genus,
        surface,
        abelianization: ab,
        handlebodies,
        lagrangians: lattices.try_into().expect("four sectors"),
    })
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..16)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..4).filter(|&i| m & (1 << i) != 0).collect::<Vec<usize>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Intersection `∩_{i∈I} L_i`, full lattice for empty `I`.
fn intersection(ls: &[Lattice; 4], idx: &[usize], m: usize) -> Result<Lattice> {
    let mut acc = Lattice::full(m);
    for &i in idx {
        acc = lattice_intersect(&acc, &ls[i])?;
    }
    Ok(acc)
}

/// The complex `ℤ → ⊕_{|I|=3} → ⊕_{|I|=2} → ⊕_{|I|=1} → H₁(Σ̃) → ℤ` in
/// degrees 5 down to 0, with both end maps zero and
/// `δ(c)_{I∖{j}} = (-1)^{|{s∈I : s<j}|} c`.
pub fn quadrisection_complex(ls: &[Lattice; 4], genus: usize) -> Result<ChainComplex> {
    let m = 2 * genus;
    for (i, l) in ls.iter().enumerate() {
        if l.ambient_rank() != m {
            return Err(Error::AmbientRankMismatch {
                left: m,
                right: l.ambient_rank(),
            });
        }
        if l.rank() != genus {
            return Err(Error::LagrangianRank {
                sector: i + 1,
                rank: l.rank(),
                genus,
            });
        }
    }
    // level k holds the summands indexed by |I| = k; level 0 is H₁(Σ̃)
    let mut levels: Vec<Vec<(Vec<usize>, Lattice)>> = Vec::new();
    for k in 0..=3 {
        let mut v = Vec::new();
        for idx in subsets(k) {
            let l = intersection(ls, &idx, m)?;
            v.push((idx, l));
        }
        levels.push(v);
    }
    let level_rank = |k: usize| levels[k].iter().map(|(_, l)| l.rank()).sum::<usize>();

    let mut maps = Vec::new();
    // degree 1 → 0
    maps.push(IntegerMatrix::zeros(1, m));
    for k in 1..=3 {
        let rows = level_rank(k - 1);
        let cols = level_rank(k);
        let mut d = IntegerMatrix::zeros(rows, cols);
        let mut col0 = 0;
        for (idx, l) in &levels[k] {
            for (pos, &j) in idx.iter().enumerate() {
                let face: Vec<usize> = idx.iter().copied().filter(|&s| s != j).collect();
                let mut row0 = 0;
                let mut target = None;
                for (fidx, fl) in &levels[k - 1] {
                    if *fidx == face {
                        target = Some(fl);
                        break;
                    }
                    row0 += fl.rank();
                }
                let fl = target.expect("face present");
                let inc = l.inclusion_matrix(fl)?;
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                for r in 0..inc.rows() {
                    for c in 0..inc.cols() {
                        d.set(row0 + r, col0 + c, inc.get(r, c) * sign);
                    }
                }
            }
            col0 += l.rank();
        }
        maps.push(d);
    }
    // degree 5 → 4
    maps.push(IntegerMatrix::zeros(level_rank(3), 1));

    let ranks = vec![1, m, level_rank(1), level_rank(2), level_rank(3), 1];
    ChainComplex::new(ranks, maps)
}

/// Result of the full branched-cover pipeline.
#[derive(Clone, Debug)]
pub struct CoverHomology {
    pub data: CoverData,
    pub complex: ChainComplex,
    /// `H₀ … H₅`.
    pub homology: Vec<AbelianGroup>,
}

pub fn branched_cover_homology(d: &FourPlaneDiagram, rho: &PermutationRep) -> Result<CoverHomology> {
    branched_cover_homology_with(d, rho, TreePolicy::BreadthFirst)
}

pub fn branched_cover_homology_with(
    d: &FourPlaneDiagram,
    rho: &PermutationRep,
    policy: TreePolicy,
) -> Result<CoverHomology> {
    let data = lagrangians_with(d, rho, policy)?;
    let complex = quadrisection_complex(&data.lagrangians, data.genus)?;
    let homology = complex.homology();
    Ok(CoverHomology {
        data,
        complex,
        homology,
    })
}
