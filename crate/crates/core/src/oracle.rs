//! Naive reference implementations.
//!
//! Nothing here touches the bitset bound operators, the intersection-closure
//! enumeration, or the solver's family construction. Sets are plain sorted
//! `Vec<usize>` and every bound is found by direct double loops over
//! `Poset::leq`.

use crate::completion::{CompletedPoset, Cut};
use crate::error::{Error, Result};
use crate::poset::{Carrier, Poset, Subset};
use crate::solver::EquationInstance;

pub const MAX_BRUTE_ARITY: usize = 15;

/// All `x` with `a <= x` for every `a` in `set`.
pub fn upper_bounds(p: &Poset, set: &[usize]) -> Vec<usize> {
    (0..p.len()).filter(|&x| set.iter().all(|&a| p.leq(a, x))).collect()
}

/// All `x` with `x <= a` for every `a` in `set`.
pub fn lower_bounds(p: &Poset, set: &[usize]) -> Vec<usize> {
    (0..p.len()).filter(|&x| set.iter().all(|&a| p.leq(x, a))).collect()
}

pub fn closure(p: &Poset, set: &[usize]) -> Vec<usize> {
    lower_bounds(p, &upper_bounds(p, set))
}

fn members_of_mask(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn contains_all(big: &[usize], small: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

/// Every cut found by scanning all `2^n` subsets, in canonical order.
pub fn brute_cuts(p: &Poset) -> Result<Vec<Subset>> {
    let n = p.len();
    if n > MAX_BRUTE_ARITY {
        return Err(Error::ResourceCap {
            what: "brute-force arity",
            limit: MAX_BRUTE_ARITY,
            actual: n,
        });
    }
    let mut cuts: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| members_of_mask(n, mask))
        .filter(|a| closure(p, a) == *a)
        .collect();
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cuts.into_iter().map(|c| Subset::new(p, c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Sup,
    Inf,
}

/// Scans every cut of `c` for the least upper (greatest lower) bound of
/// `family` under inclusion.
pub fn brute_bound(c: &CompletedPoset, family: &[Cut], which: Bound) -> Result<Cut> {
    let all: Vec<Vec<usize>> = c.cuts().map(|k| k.as_subset().indices()).collect();
    let fam: Vec<Vec<usize>> = family.iter().map(|k| k.as_subset().indices()).collect();
    let bounds: Vec<usize> = (0..all.len())
        .filter(|&k| {
            fam.iter().all(|f| match which {
                Bound::Sup => contains_all(&all[k], f),
                Bound::Inf => contains_all(f, &all[k]),
            })
        })
        .collect();
    let best = bounds.iter().copied().find(|&k| {
        bounds.iter().all(|&o| match which {
            Bound::Sup => contains_all(&all[o], &all[k]),
            Bound::Inf => contains_all(&all[k], &all[o]),
        })
    });
    match best {
        Some(k) => Ok(c.cut(k)),
        None => Err(Error::NoBound(match which {
            Bound::Sup => "least upper",
            Bound::Inf => "greatest lower",
        })),
    }
}

/// Tries every cut `A` of the quotient completion and returns the one with
/// `(T_≈(A))^ul = F`, if any.
pub fn brute_solve(eq: &EquationInstance, target: &Subset) -> Result<Option<Cut>> {
    target.ensure_parent(eq.codomain())?;
    let y = eq.codomain();
    let f = target.indices();
    let t = eq.class_map();
    let mut found: Option<Cut> = None;
    for a in eq.quotient_completion().cuts() {
        let mut image: Vec<usize> = a.as_subset().indices().into_iter().map(|u| t.image(u)).collect();
        image.sort_unstable();
        image.dedup();
        if closure(y, &image) == f {
            if let Some(prev) = &found {
                let q = eq.quotient().order();
                return Err(Error::MultipleSolutions(
                    format!("{:?}", prev.as_subset().labels(q)),
                    format!("{:?}", a.as_subset().labels(q)),
                ));
            }
            found = Some(a);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{embed, macneille_completion};
    use crate::mapext::{PosetMap, Source};
    use crate::poset::{CarrierSet, RelationKind};
    use crate::solver::build_equation;
    use crate::Limits;

    fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
        Poset::build(labels.iter().copied(), covers, RelationKind::Covers).unwrap()
    }

    #[test]
    fn brute_cut_counts() {
        let chain = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(brute_cuts(&chain).unwrap().len(), 3);
        let anti = poset(&["a", "b"], &[]);
        let cuts = brute_cuts(&anti).unwrap();
        assert_eq!(cuts.len(), 4);
        assert!(cuts[0].is_empty());
        assert_eq!(brute_cuts(&poset(&["a"], &[])).unwrap().len(), 1);
    }

    #[test]
    fn brute_cuts_refuses_large_arity() {
        let names: Vec<String> = (0..16).map(|i| format!("x{i}")).collect();
        let p = Poset::build(names, &[] as &[(&str, &str)], RelationKind::Covers).unwrap();
        assert!(brute_cuts(&p).unwrap_err().is_resource_cap());
    }

    #[test]
    fn brute_bound_singleton() {
        let anti = poset(&["a", "b"], &[]);
        let c = macneille_completion(&anti, &Limits::default()).unwrap();
        let a = embed(&anti, 0).unwrap();
        assert_eq!(brute_bound(&c, &[a.clone()], Bound::Sup).unwrap(), a);
        assert_eq!(brute_bound(&c, &[a.clone()], Bound::Inf).unwrap(), a);
    }

    fn constant_instance() -> EquationInstance {
        let y = poset(&["p", "q"], &[("p", "q")]);
        let x = CarrierSet::new(["u", "v"]).unwrap();
        let map = PosetMap::from_labels(Source::Unordered(x), y, [("u", "p"), ("v", "p")]).unwrap();
        build_equation(map, &Limits::default()).unwrap()
    }

    #[test]
    fn brute_solve_constant_map() {
        let eq = constant_instance();
        let y = eq.codomain();
        let hit = brute_solve(&eq, &y.down_set(0).unwrap()).unwrap();
        assert_eq!(hit, Some(eq.quotient_completion().cut(0)));
        assert_eq!(brute_solve(&eq, &y.down_set(1).unwrap()).unwrap(), None);
    }

    #[test]
    fn brute_solve_identity() {
        let y = poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]);
        let x = CarrierSet::new(["a", "b", "c"]).unwrap();
        let map = PosetMap::from_labels(Source::Unordered(x), y.clone(), [("a", "a"), ("b", "b"), ("c", "c")]).unwrap();
        let eq = build_equation(map, &Limits::default()).unwrap();
        for f in brute_cuts(&y).unwrap() {
            let a = brute_solve(&eq, &f).unwrap().expect("identity hits every cut");
            assert_eq!(a.as_subset().indices(), f.indices());
        }
    }
}
