//! Cuts and the MacNeille completion of a finite poset.
//!
//! A cut is a subset `A` with `A^ul = A`. The completion is the set of all
//! cuts ordered by inclusion, with `x ↦ <x]` embedding the original poset.
//!
//! Cuts are enumerated as the intersection-closure of the principal
//! down-sets together with the full carrier: every cut equals
//! `⋂ { <b] : b ∈ A^u }`, and the empty intersection is the carrier itself.
//! The walk only ever visits cuts, so its cost tracks the size of the output
//! rather than `2^n`.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{show, Carrier, Poset, Subset};
use crate::Limits;

/// A subset satisfying `A^ul = A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut(Subset);

impl Cut {
    /// Validates `subset` against the cut condition.
    pub fn try_new(poset: &Poset, subset: Subset) -> Result<Cut> {
        if is_cut(poset, &subset)? {
            Ok(Cut(subset))
        } else {
            Err(Error::InvalidCut(show(poset, subset.bits())))
        }
    }

    pub fn as_subset(&self) -> &Subset {
        &self.0
    }

    pub fn into_subset(self) -> Subset {
        self.0
    }

    pub fn bits(&self) -> &BitSet {
        self.0.bits()
    }

    pub fn is_subset(&self, other: &Cut) -> Result<bool> {
        self.0.is_subset(&other.0)
    }
}

/// `A^ul`: the least cut containing `A`.
pub fn cut_closure(poset: &Poset, subset: &Subset) -> Result<Cut> {
    subset.ensure_parent(poset)?;
    let bits = poset.closure_bits(subset.bits());
    Ok(Cut(Subset::from_bits(poset, bits)?))
}

pub fn is_cut(poset: &Poset, subset: &Subset) -> Result<bool> {
    subset.ensure_parent(poset)?;
    Ok(&poset.closure_bits(subset.bits()) == subset.bits())
}

/// `<x]` as an element of the completion.
pub fn embed(poset: &Poset, x: usize) -> Result<Cut> {
    Ok(Cut(poset.down_set(x)?))
}

/// All cuts of a poset in canonical order, with the inclusion order and the
/// principal embedding.
#[derive(Debug, Clone)]
pub struct CompletedPoset {
    parent: Poset,
    cuts: Vec<BitSet>,
    lookup: HashMap<BitSet, usize>,
    order: Poset,
    embedding: Vec<usize>,
}

/// Computes the MacNeille completion.
///
/// Fails with [`Error::ResourceCap`] before enumerating if the arity exceeds
/// `limits.max_arity`, and as soon as more than `limits.max_cuts` cuts are
/// discovered.
pub fn macneille_completion(poset: &Poset, limits: &Limits) -> Result<CompletedPoset> {
    let n = poset.len();
    if n > limits.max_arity {
        return Err(Error::ResourceCap {
            what: "arity",
            limit: limits.max_arity,
            actual: n,
        });
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut work: Vec<BitSet> = Vec::new();
    let seeds = std::iter::once(BitSet::full(n)).chain((0..n).map(|b| poset.down(b).clone()));
    for s in seeds {
        if seen.insert(s.clone()) {
            work.push(s);
        }
    }
    while let Some(cut) = work.pop() {
        if seen.len() > limits.max_cuts {
            break;
        }
        for b in 0..n {
            // A cut is a down-set, so `b ∈ cut` gives `<b] ⊆ cut`.
            if cut.contains(b) {
                continue;
            }
            let next = cut.intersection(poset.down(b));
            if !seen.contains(&next) {
                seen.insert(next.clone());
                work.push(next);
            }
        }
    }
    if seen.len() > limits.max_cuts {
        return Err(Error::ResourceCap {
            what: "cut count",
            limit: limits.max_cuts,
            actual: seen.len(),
        });
    }
    Ok(CompletedPoset::from_cut_bits(poset.clone(), seen.into_iter().collect()))
}

impl CompletedPoset {
    /// Caller guarantees `cuts` is exactly the set of cuts of `parent`.
    pub(crate) fn from_cut_bits(parent: Poset, mut cuts: Vec<BitSet>) -> CompletedPoset {
        cuts.sort_by(|a, b| a.canonical_cmp(b));
        let lookup: HashMap<BitSet, usize> = cuts.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let m = cuts.len();
        let down = cuts
            .iter()
            .map(|cj| BitSet::from_indices(m, (0..m).filter(|&i| cuts[i].is_subset(cj))))
            .collect();
        let order = Poset::from_down_sets_unchecked((0..m).map(|i| format!("#{i}")).collect(), down);
        let embedding = (0..parent.len()).map(|x| lookup[parent.down(x)]).collect();
        CompletedPoset {
            parent,
            cuts,
            lookup,
            order,
            embedding,
        }
    }

    pub fn parent(&self) -> &Poset {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cut(&self, i: usize) -> Cut {
        Cut(Subset::from_bits_unchecked(self.parent.id(), self.cuts[i].clone()))
    }

    pub fn cut_bits(&self, i: usize) -> &BitSet {
        &self.cuts[i]
    }

    pub fn cuts(&self) -> impl Iterator<Item = Cut> + '_ {
        (0..self.len()).map(|i| self.cut(i))
    }

    pub fn index_of_bits(&self, bits: &BitSet) -> Option<usize> {
        self.lookup.get(bits).copied()
    }

    pub fn index_of(&self, cut: &Cut) -> Result<usize> {
        cut.as_subset().ensure_parent(&self.parent)?;
        self.index_of_bits(cut.bits())
            .ok_or_else(|| Error::InvalidCut(show(&self.parent, cut.bits())))
    }

    /// Inclusion order on cut indices, as a poset labelled `#0`, `#1`, ...
    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.leq(i, j)
    }

    /// Cut index of `<x]` for each parent element `x`.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Index of the least cut, `∅^ul`.
    pub fn least(&self) -> usize {
        0
    }

    /// Index of the full carrier.
    pub fn greatest(&self) -> usize {
        self.len() - 1
    }

    pub fn contains_empty_cut(&self) -> bool {
        self.cuts[0].is_empty()
    }

    /// Least upper bound of cut indices: `(⋃ family)^ul`.
    pub fn sup_indices(&self, family: &[usize]) -> usize {
        let mut union = BitSet::empty(self.parent.len());
        for &i in family {
            union.union_with(&self.cuts[i]);
        }
        self.lookup[&self.parent.closure_bits(&union)]
    }

    /// Greatest lower bound of cut indices: `⋂ family`.
    pub fn inf_indices(&self, family: &[usize]) -> usize {
        let mut inter = BitSet::full(self.parent.len());
        for &i in family {
            inter.intersect_with(&self.cuts[i]);
        }
        self.lookup[&inter]
    }

    fn indices_of(&self, family: &[Cut]) -> Result<Vec<usize>> {
        family.iter().map(|c| self.index_of(c)).collect()
    }
}

/// `(⋃ family)^ul`; the least cut for an empty family.
pub fn sup_cuts(completion: &CompletedPoset, family: &[Cut]) -> Result<Cut> {
    let idx = completion.indices_of(family)?;
    Ok(completion.cut(completion.sup_indices(&idx)))
}

/// `⋂ family`; the full carrier for an empty family.
pub fn inf_cuts(completion: &CompletedPoset, family: &[Cut]) -> Result<Cut> {
    let idx = completion.indices_of(family)?;
    Ok(completion.cut(completion.inf_indices(&idx)))
}

/// Outcome of [`verify_macneille`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacNeilleReport {
    /// Every tested family has a genuine least upper and greatest lower bound.
    pub completeness: bool,
    /// Whether `completeness` covered every family of cuts.
    pub completeness_exhaustive: bool,
    pub embedding_oie: bool,
    /// Existing suprema and infima of the parent map to those of the
    /// completion.
    pub preserves_bounds: bool,
    pub density: bool,
    /// The full carrier has no principal cut above it, so its inf-side
    /// density family is empty.
    pub density_top_caveat: bool,
    pub empty_cut_present: bool,
    pub failures: Vec<String>,
}

impl MacNeilleReport {
    pub fn all_pass(&self) -> bool {
        self.completeness && self.embedding_oie && self.preserves_bounds && self.density
    }
}

const EXHAUSTIVE_FAMILY_CUTS: usize = 12;
const EXHAUSTIVE_PARENT_ARITY: usize = 12;
const SAMPLED_FAMILIES: usize = 256;
const VERIFY_SEED: u64 = 0x5eed_ca11;

fn families(count: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<usize>>, bool) {
    if count <= EXHAUSTIVE_FAMILY_CUTS {
        let all = (0u32..1 << count)
            .map(|mask| (0..count).filter(|&i| mask & (1 << i) != 0).collect())
            .collect();
        return (all, true);
    }
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    out.extend((0..count).map(|i| vec![i]));
    if count <= 300 {
        for i in 0..count {
            for j in i + 1..count {
                out.push(vec![i, j]);
            }
        }
    }
    for _ in 0..SAMPLED_FAMILIES {
        let size = rng.gen_range(2..=count.min(8));
        out.push((0..size).map(|_| rng.gen_range(0..count)).collect());
    }
    (out, false)
}

/// Checks completeness, the embedding, and order density of a completion.
pub fn verify_macneille(c: &CompletedPoset) -> MacNeilleReport {
    let p = c.parent();
    let n = p.len();
    let m = c.len();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let name = |i: usize| show(p, c.cut_bits(i));

    let (fams, completeness_exhaustive) = families(m, &mut rng);
    let mut completeness = true;
    for fam in &fams {
        let mut union = BitSet::empty(n);
        let mut inter = BitSet::full(n);
        for &i in fam {
            union.union_with(c.cut_bits(i));
            inter.intersect_with(c.cut_bits(i));
        }
        let s = c.sup_indices(fam);
        let least = union.is_subset(c.cut_bits(s))
            && (0..m)
                .filter(|&k| union.is_subset(c.cut_bits(k)))
                .all(|k| c.leq(s, k));
        let t = c.inf_indices(fam);
        let greatest = c.cut_bits(t).is_subset(&inter)
            && (0..m)
                .filter(|&k| c.cut_bits(k).is_subset(&inter))
                .all(|k| c.leq(k, t));
        if !(least && greatest) {
            completeness = false;
            let names: Vec<String> = fam.iter().map(|&i| name(i)).collect();
            failures.push(format!("bounds of family [{}] are wrong", names.join(", ")));
        }
    }

    let emb = c.embedding();
    let mut embedding_oie = true;
    for x in 0..n {
        for y in 0..n {
            if x != y && emb[x] == emb[y] {
                embedding_oie = false;
                failures.push(format!("embedding not injective at {} and {}", p.label(x), p.label(y)));
            }
            if p.leq(x, y) != c.leq(emb[x], emb[y]) {
                embedding_oie = false;
                failures.push(format!("embedding misorders {} and {}", p.label(x), p.label(y)));
            }
        }
    }

    let subsets: Vec<BitSet> = if n <= EXHAUSTIVE_PARENT_ARITY {
        (0u32..1 << n)
            .map(|mask| BitSet::from_indices(n, (0..n).filter(|&i| mask & (1 << i) != 0)))
            .collect()
    } else {
        let mut v = vec![BitSet::empty(n)];
        for i in 0..n {
            for j in i..n {
                v.push(BitSet::from_indices(n, [i, j]));
            }
        }
        for _ in 0..SAMPLED_FAMILIES {
            let size = rng.gen_range(1..=n.min(8));
            v.push(BitSet::from_indices(n, (0..size).map(|_| rng.gen_range(0..n))));
        }
        v
    };
    let mut preserves_bounds = true;
    for s in &subsets {
        let images: Vec<usize> = s.iter().map(|x| emb[x]).collect();
        let ups = p.upper_bounds_bits(s);
        if let Some(sup) = ups.iter().find(|&u| ups.is_subset(p.up(u))) {
            if emb[sup] != c.sup_indices(&images) {
                preserves_bounds = false;
                failures.push(format!("supremum of {} not preserved", show(p, s)));
            }
        }
        let lows = p.lower_bounds_bits(s);
        if let Some(inf) = lows.iter().find(|&l| lows.is_subset(p.down(l))) {
            if emb[inf] != c.inf_indices(&images) {
                preserves_bounds = false;
                failures.push(format!("infimum of {} not preserved", show(p, s)));
            }
        }
    }

    let mut density = true;
    let mut density_top_caveat = false;
    for a in 0..m {
        let below: Vec<usize> = (0..n).filter(|&x| c.leq(emb[x], a)).map(|x| emb[x]).collect();
        if c.sup_indices(&below) != a {
            density = false;
            failures.push(format!("{} is not the sup of the principal cuts below it", name(a)));
        }
        let above: Vec<usize> = (0..n).filter(|&x| c.leq(a, emb[x])).map(|x| emb[x]).collect();
        if above.is_empty() {
            if a == c.greatest() {
                density_top_caveat = true;
            } else {
                density = false;
                failures.push(format!("{} has no principal cut above it", name(a)));
            }
        } else if c.inf_indices(&above) != a {
            density = false;
            failures.push(format!("{} is not the inf of the principal cuts above it", name(a)));
        }
    }

    MacNeilleReport {
        completeness,
        completeness_exhaustive,
        embedding_oie,
        preserves_bounds,
        density,
        density_top_caveat,
        empty_cut_present: c.contains_empty_cut(),
        failures,
    }
}
