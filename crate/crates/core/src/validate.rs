//! Necessary conditions for a tuple of trivial tangles to be a 4-plane
//! diagram, plus a heuristic unlink test.

use std::fmt;

use crate::algebra::AbelianGroup;
use crate::error::Result;
use crate::presentation::{is_visibly_free, link_group, tietze_simplify, TietzeBudget};
use crate::surface::build_surface_complex;
use crate::tangle::FourPlaneDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Necessary, not sufficient.
    Necessary,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Not applicable, e.g. relators that do not determine a matching.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Check {
    /// `a`..`d`.
    pub label: char,
    pub kind: CheckKind,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub bridges: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// No necessary check failed. Heuristic checks do not count.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.kind == CheckKind::Heuristic || c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn check(&self, label: char) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.label == label)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "skip",
            };
            let kind = match c.kind {
                CheckKind::Necessary => "necessary",
                CheckKind::Heuristic => "heuristic",
            };
            writeln!(f, "({}) {tag} [{kind}] {}: {}", c.label, c.name, c.detail)?;
        }
        Ok(())
    }
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// Runs checks (a)–(c) and the Tietze heuristic (d) with the default budget.
pub fn validate_diagram(d: &FourPlaneDiagram) -> Result<ValidationReport> {
    validate_with(d, TietzeBudget::default())
}

pub fn validate_with(d: &FourPlaneDiagram, budget: TietzeBudget) -> Result<ValidationReport> {
    let b = d.bridges() as i64;
    let surface = build_surface_complex(d).ok();
    let mut checks = Vec::new();

    for i in 0..4 {
        let j = (i + 1) % 4;
        let name = format!("link group of T{} ∪ T{}", i + 1, j + 1);
        let ab = link_group(d.tangle(i), d.tangle(j))?.abelianization().group;
        let (outcome, detail) = match &surface {
            Some(s) => {
                let c = s.pair_counts[i][j];
                (
                    outcome(ab == AbelianGroup::free(c)),
                    format!("abelianization {ab}, expected Z^{c}"),
                )
            }
            None => (
                outcome(ab.torsion.is_empty()),
                format!("abelianization {ab}; component count unavailable"),
            ),
        };
        checks.push(Check {
            label: 'a',
            kind: CheckKind::Necessary,
            name,
            outcome,
            detail,
        });
    }

    for omit in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
        let name = format!("triple T{} T{} T{}", idx[0] + 1, idx[1] + 1, idx[2] + 1);
        let (outcome, detail) = match &surface {
            Some(s) => {
                let c = &s.pair_counts;
                let chi = 2 * b - 3 * b + (c[idx[0]][idx[1]] + c[idx[1]][idx[2]] + c[idx[0]][idx[2]]) as i64;
                let comps = s.triple_counts[omit] as i64;
                (outcome(chi == 2 * comps), format!("chi {chi}, components {comps}"))
            }
            None => (Outcome::Skipped, "no endpoint matching".into()),
        };
        checks.push(Check {
            label: 'b',
            kind: CheckKind::Necessary,
            name,
            outcome,
            detail,
        });
    }

    let (euler, detail) = match &surface {
        Some(s) => {
            let pairs: i64 = PAIRS.iter().map(|&(i, j)| s.pair_counts[i][j] as i64).sum();
            let triples: i64 = s.triple_counts.iter().map(|&x| x as i64).sum();
            let total = 2 * b - 4 * b + pairs - triples;
            (outcome(total == 0), format!("2b - 4b + sum c_ij - sum s_i = {total}"))
        }
        None => (Outcome::Skipped, "no endpoint matching".into()),
    };
    checks.push(Check {
        label: 'c',
        kind: CheckKind::Necessary,
        name: "Euler identity".into(),
        outcome: euler,
        detail,
    });

    for (i, j) in PAIRS {
        let name = format!("Tietze on T{} ∪ T{}", i + 1, j + 1);
        let simplified = tietze_simplify(&link_group(d.tangle(i), d.tangle(j))?, budget);
        let rank = simplified.generator_count();
        let (outcome, detail) = match (&surface, is_visibly_free(&simplified)) {
            (_, false) => (
                Outcome::Fail,
                format!("{rank} generators, {} relators left", simplified.relators().len()),
            ),
            (Some(s), true) => {
                let c = s.pair_counts[i][j];
                (outcome(rank == c), format!("free of rank {rank}, expected {c}"))
            }
            (None, true) => (Outcome::Pass, format!("free of rank {rank}")),
        };
        checks.push(Check {
            label: 'd',
            kind: CheckKind::Heuristic,
            name,
            outcome,
            detail,
        });
    }

    Ok(ValidationReport {
        bridges: d.bridges(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn diagram(b: usize, words: [&[i64]; 4]) -> FourPlaneDiagram {
        FourPlaneDiagram::from_braids(b, words.map(|w| BraidWord::from_signed(2 * b, w).unwrap())).unwrap()
    }

    #[test]
    fn one_bridge_passes() {
        let r = validate_diagram(&diagram(1, [&[], &[], &[], &[]])).unwrap();
        assert!(r.passed());
        assert_eq!(r.failures().count(), 0);
        assert_eq!(r.checks.len(), 15);
    }

    #[test]
    fn two_bridge_slopes() {
        // slope 0 and slope ∞ tangles
        for words in [
            [&[][..], &[2][..], &[][..], &[2][..]],
            [&[], &[], &[], &[]],
            [&[], &[], &[2], &[2]],
        ] {
            let r = validate_diagram(&diagram(2, words)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn knotted_pair_flagged() {
        let r = validate_diagram(&diagram(2, [&[2, 2, 2], &[], &[], &[]])).unwrap();
        assert!(r.check('d').any(|c| c.outcome == Outcome::Fail));
    }
}
