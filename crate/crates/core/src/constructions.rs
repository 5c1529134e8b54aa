//! Diagram families (spun knots, lens spaces) and operations on diagrams
//! (sums, mutual braid moves).

use crate::algebra::{Letter, Word};
use crate::braid::{BraidLetter, BraidWord};
use crate::cover::PermutationRep;
use crate::error::{Error, Result};
use crate::tangle::{FourPlaneDiagram, RelatorTangle, Tangle, TrivialTangle};

/// Braid whose plat realizes the non-crossing matching `partner` (an
/// involution on `0..partner.len()` without fixed points). Each resulting
/// relator is a conjugate of `x_a x_b` for a matched pair `a < b`.
pub fn crossingless_braid(partner: &[usize]) -> Result<BraidWord> {
    let n = partner.len();
    for (a, &b) in partner.iter().enumerate() {
        if b >= n || b == a || partner[b] != a {
            return Err(Error::InvalidTangle {
                tangle: 0,
                message: "matching is not a fixed-point-free involution".into(),
            });
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if (lo + 1..hi).any(|c| partner[c] < lo || partner[c] > hi) {
            return Err(Error::InvalidTangle {
                tangle: 0,
                message: format!("pair ({lo}, {hi}) crosses another pair"),
            });
        }
    }
    let mut letters = Vec::new();
    realize(0, partner, &mut letters);
    BraidWord::new(n, letters)
}

/// Standard caps on `offset..offset+target.len()` into `target` (local
/// indices). Inner pairs are built one slot to the right, then the partner
/// of the first point is carried across them.
fn realize(offset: usize, target: &[usize], out: &mut Vec<BraidLetter>) {
    if target.is_empty() {
        return;
    }
    let q = target[0];
    let inner: Vec<usize> = (1..q).map(|x| target[x] - 1).collect();
    let outer: Vec<usize> = (q + 1..target.len()).map(|x| target[x] - q - 1).collect();
    realize(offset + 2, &inner, out);
    realize(offset + q + 1, &outer, out);
    for j in offset + 2..=offset + q {
        out.push(BraidLetter::new(j, true));
    }
}

fn pairs_to_partner(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut p = vec![usize::MAX; n];
    for &(a, b) in pairs {
        p[a] = b;
        p[b] = a;
    }
    p
}

/// Knot braid letters acting on strands sitting at increasing `positions`
/// of a wider braid. Neighbouring strands that are not adjacent are brought
/// together by a band passing in front of the points between them.
fn embed_braid(w: &BraidWord, positions: &[usize], strands: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for l in w.letters() {
        let (a, c) = (positions[l.index - 1], positions[l.index]);
        let band: Vec<BraidLetter> = (a + 2..=c).rev().map(|j| BraidLetter::new(j, false)).collect();
        letters.extend(band.iter().copied());
        letters.push(BraidLetter::new(a + 1, l.inverse));
        letters.extend(band.iter().rev().map(|x| x.inv()));
    }
    BraidWord::new(strands, letters)
}

/// Where the two knot endpoints sit inside a ten-point block, and the four
/// auxiliary pairs.
type BlockLayout = ((usize, usize), [(usize, usize); 4]);

/// Layouts of the block attached to each knot cap after the first, for
/// tangles 1 to 4.
const SPUN_BLOCK: [BlockLayout; 4] = [
    ((0, 1), [(2, 9), (3, 4), (5, 6), (7, 8)]),
    ((0, 9), [(1, 2), (3, 4), (5, 8), (6, 7)]),
    ((4, 9), [(0, 3), (1, 2), (5, 6), (7, 8)]),
    ((0, 9), [(1, 8), (2, 7), (3, 6), (4, 5)]),
];

/// `(5b-4)`-bridge diagram of the 2-sphere spin of the knot given as the
/// plat closure of `k` (a braid on `2b` strands).
pub fn spun_diagram(k: &BraidWord) -> Result<FourPlaneDiagram> {
    let strands = k.strands();
    if strands == 0 || !strands.is_multiple_of(2) {
        return Err(Error::StrandCountMismatch {
            expected: strands + strands % 2,
            found: strands,
        });
    }
    let b = strands / 2;
    let bridges = 5 * b - 4;
    let n = 2 * bridges;
    let mut braids = Vec::with_capacity(4);
    for ((first, second), aux) in SPUN_BLOCK {
        let mut pairs = vec![(0, 1)];
        let mut positions = vec![0, 1];
        for blk in 1..b {
            let start = 2 + 10 * (blk - 1);
            positions.push(start + first);
            positions.push(start + second);
            pairs.push((start + first, start + second));
            pairs.extend(aux.iter().map(|&(x, y)| (start + x, start + y)));
        }
        let base = crossingless_braid(&pairs_to_partner(n, &pairs))?;
        braids.push(base.concat(&embed_braid(k, &positions, n)?)?);
    }
    let braids: [BraidWord; 4] = braids.try_into().expect("four tangles");
    Ok(FourPlaneDiagram::from_braids(bridges, braids)?.with_label(format!("spin of plat({k})")))
}

/// `2p`-bridge diagram of `L(p,1)` on a torus tiled by a `2p × 2` grid of
/// squares, glued with a shift of two columns. Punctures `0..2p` are the
/// bottom row left to right and `2p..4p` the top row right to left.
/// Tangles 2 and 4 are the horizontal edges, tangles 1 and 3 the vertical
/// ones; tangle 1 carries the shift.
pub fn lens_diagram(p: usize) -> Result<FourPlaneDiagram> {
    if p == 0 {
        return Err(Error::InvalidTangle {
            tangle: 0,
            message: "lens parameter must be positive".into(),
        });
    }
    let m = 2 * p;
    let n = 4 * p;
    let nested: Vec<(usize, usize)> = (0..m).map(|j| (j, n - 1 - j)).collect();
    let t3 = crossingless_braid(&pairs_to_partner(n, &nested))?;
    let mut shift = Vec::new();
    // once behind the top row, once in front, so that T1 ∪ T̄3 stays an unlink
    for inverse in [true, false] {
        shift.extend((m + 1..n).map(|j| BraidLetter::new(j, inverse)));
    }
    let t1 = t3.concat(&BraidWord::new(n, shift)?)?;

    let mut even = Vec::new();
    let mut odd = Vec::new();
    for blk in [0, m] {
        for j in (0..m).step_by(2) {
            even.push((blk + j, blk + j + 1));
        }
        for j in (1..m - 1).step_by(2) {
            odd.push((blk + j, blk + j + 1));
        }
        odd.push((blk, blk + m - 1));
    }
    let t2 = crossingless_braid(&pairs_to_partner(n, &even))?;
    let t4 = crossingless_braid(&pairs_to_partner(n, &odd))?;
    Ok(FourPlaneDiagram::from_braids(m, [t1, t2, t3, t4])?.with_label(format!("L({p},1)")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    Distant,
    Connected,
}

fn shift_word(w: &Word, by: usize) -> Word {
    Word::from_letters(w.letters().iter().map(|l| Letter::new(l.gen + by, l.inverse)).collect())
}

fn shift_braid(w: &BraidWord, by: usize, strands: usize) -> Result<BraidWord> {
    BraidWord::new(
        strands,
        w.letters()
            .iter()
            .map(|l| BraidLetter::new(l.index + by, l.inverse))
            .collect(),
    )
}

pub fn sum(d1: &FourPlaneDiagram, d2: &FourPlaneDiagram, mode: SumMode) -> Result<FourPlaneDiagram> {
    match mode {
        SumMode::Distant => distant_sum(d1, d2),
        SumMode::Connected => connected_sum(d1, d2),
    }
}

fn distant_sum(d1: &FourPlaneDiagram, d2: &FourPlaneDiagram) -> Result<FourPlaneDiagram> {
    let b = d1.bridges() + d2.bridges();
    let off = d1.punctures();
    if let (Some(w1), Some(w2)) = (d1.braids(), d2.braids()) {
        let mut out = Vec::with_capacity(4);
        for (a, c) in w1.iter().zip(&w2) {
            let lifted = BraidWord::new(2 * b, a.letters().to_vec())?;
            out.push(lifted.concat(&shift_braid(c, off, 2 * b)?)?);
        }
        return FourPlaneDiagram::from_braids(b, out.try_into().expect("four tangles"));
    }
    let lists = std::array::from_fn(|i| {
        let mut rel = d1.tangle(i).relators();
        rel.extend(d2.tangle(i).relators().iter().map(|r| shift_word(r, off)));
        rel
    });
    FourPlaneDiagram::from_relators(b, lists)
}

/// Connected sum along the last puncture of `d1` and the first of `d2`.
/// Works from plat data, where the product of the cap relators is the
/// sphere relator, and produces relator tangles.
fn connected_sum(d1: &FourPlaneDiagram, d2: &FourPlaneDiagram) -> Result<FourPlaneDiagram> {
    let (Some(_), Some(_)) = (d1.braids(), d2.braids()) else {
        return Err(Error::InvalidTangle {
            tangle: 0,
            message: "connected sum needs plat diagrams".into(),
        });
    };
    let (n1, n2) = (d1.punctures(), d2.punctures());
    let b = d1.bridges() + d2.bridges() - 1;
    let last = n1 - 1;
    // new labels: x0..x_{n1-2} keep theirs, y_j becomes x_{n1-2+j}
    let x_prefix = Word::from_letters((0..last).map(|i| Letter::new(i, false)).collect());
    let y_rest = Word::from_letters((1..n2).map(|j| Letter::new(last + j - 1, false)).collect());
    let sphere = x_prefix.concat(&y_rest);

    let mut lists: Vec<Vec<Word>> = Vec::with_capacity(4);
    for i in 0..4 {
        let m1 = d1.tangle(i).matching().expect("plat");
        let m2 = d2.tangle(i).matching().expect("plat");
        let r1 = d1.tangle(i).relators();
        let r2 = d2.tangle(i).relators();
        let a = m1.apply(last);
        let c = m2.apply(0);
        // x_last = (x0⋯x_{n1-2})⁻¹ and y0 = x_last⁻¹
        let keep1: Vec<Word> = r1
            .iter()
            .filter(|r| !strand_of(r, n1, a, last))
            .map(|r| {
                r.substitute(|g| {
                    if g == last {
                        x_prefix.inverse()
                    } else {
                        Word::generator(g)
                    }
                })
                .free_reduce()
            })
            .collect();
        let keep2: Vec<Word> = r2
            .iter()
            .filter(|r| !strand_of(r, n2, c, 0))
            .map(|r| {
                r.substitute(|g| {
                    if g == 0 {
                        x_prefix.clone()
                    } else {
                        Word::generator(last + g - 1)
                    }
                })
                .free_reduce()
            })
            .collect();
        let mut merged = sphere.clone();
        for r in keep1.iter().chain(&keep2).rev() {
            merged = merged.concat(&r.inverse());
        }
        let mut rel = keep1.clone();
        rel.extend(keep2);
        rel.push(merged.free_reduce());
        lists.push(rel);
    }
    let lists: [Vec<Word>; 4] = lists.try_into().expect("four tangles");
    FourPlaneDiagram::from_relators(b, lists)
}

fn strand_of(r: &Word, n: usize, a: usize, b: usize) -> bool {
    let v = r.exponent_vector(n);
    v[a] == 1.into() && v[b] == 1.into()
}

/// Appends `w` to every tangle braid at the sphere end, and transports `ρ`
/// so that it still extends over every tangle.
pub fn mutual_braid_move(
    d: &FourPlaneDiagram,
    w: &BraidWord,
    rho: Option<&PermutationRep>,
) -> Result<(FourPlaneDiagram, Option<PermutationRep>)> {
    if w.strands() != d.punctures() {
        return Err(Error::StrandCountMismatch {
            expected: d.punctures(),
            found: w.strands(),
        });
    }
    let tangles = d.tangles().clone().map(|t| match t {
        Tangle::Plat(p) => Tangle::Plat(
            TrivialTangle::new(d.bridges(), p.braid().concat(w).expect("strand counts checked"))
                .expect("strand counts checked"),
        ),
        Tangle::Relators(r) => Tangle::Relators(
            RelatorTangle::new(d.bridges(), r.relators().iter().map(|x| w.act(x)).collect())
                .expect("automorphisms preserve the abelianization rank"),
        ),
    });
    let mut moved = FourPlaneDiagram::new(d.bridges(), tangles)?;
    if let Some(l) = d.label() {
        moved = moved.with_label(l);
    }
    let rho = rho.map(|r| r.transport(w)).transpose()?;
    Ok((moved, rho))
}
