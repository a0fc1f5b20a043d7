//! Property suites: cross-checks of every fast path against the oracles and
//! the algebraic identities of the bound operators, cuts, extensions, and the
//! solver.
//!
//! Each suite runs over one instance and returns the violations it found;
//! the `*_batch` drivers fan a suite out over seeded instance families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::completion::{macneille_completion, verify_macneille, CompletedPoset};
use crate::error::{Error, Result};
use crate::generators;
use crate::mapext::{check_lemma_a1_indices, check_prop_a1, CutMap, PosetMap};
use crate::oracle::{self, Bound};
use crate::poset::{show, Carrier, Poset, Subset};
use crate::solver::{build_equation, global_character, solve, EquationInstance};
use crate::Limits;

/// Subsets of the carrier are enumerated exhaustively up to this arity.
pub const EXHAUSTIVE_SUBSET_ARITY: usize = 16;
/// Families of cuts are enumerated exhaustively up to this many cuts.
pub const EXHAUSTIVE_FAMILY_CUTS: usize = 12;
const SAMPLES: usize = 512;

/// One failing case, ranked by instance size so the smallest can be shown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub size: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn new(suite: &'static str) -> Self {
        SuiteOutcome {
            suite,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The failure on the smallest instance.
    pub fn minimal_failure(&self) -> Option<&Failure> {
        self.failures.iter().min_by_key(|f| f.size)
    }

    pub fn record(&mut self, instance: &str, size: usize, violations: Vec<String>) {
        self.cases += 1;
        self.failures.extend(violations.into_iter().map(|message| Failure {
            instance: instance.to_string(),
            size,
            message,
        }));
    }

    pub fn record_result(&mut self, instance: &str, size: usize, result: Result<Vec<String>>) {
        match result {
            Ok(v) => self.record(instance, size, v),
            Err(e) => self.record(instance, size, vec![format!("error: {e}")]),
        }
    }
}

fn mask_bits(n: usize, mask: u64) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|&i| mask & (1 << i) != 0))
}

/// Every subset when `n` is small enough, otherwise a seeded sample plus all
/// singletons and pairs.
pub fn subsets_of(n: usize) -> Vec<BitSet> {
    if n <= EXHAUSTIVE_SUBSET_ARITY {
        return (0u64..1 << n).map(|m| mask_bits(n, m)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut out = vec![BitSet::empty(n), BitSet::full(n)];
    for i in 0..n {
        for j in i..n {
            out.push(BitSet::from_indices(n, [i, j]));
        }
    }
    out.extend((0..SAMPLES).map(|_| BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))));
    out
}

/// Index families over `count` cuts: all of them when `count` is small,
/// otherwise the empty family, singletons, pairs, and a seeded sample.
pub fn families_of(count: usize) -> Vec<Vec<usize>> {
    if count <= EXHAUSTIVE_FAMILY_CUTS {
        return (0u64..1 << count)
            .map(|m| (0..count).filter(|&i| m & (1 << i) != 0).collect())
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(count as u64);
    let mut out = vec![vec![]];
    for i in 0..count {
        for j in i..count {
            out.push(vec![i, j]);
        }
    }
    out.extend((0..SAMPLES).map(|_| {
        let k = rng.gen_range(3..=count.min(8));
        (0..k).map(|_| rng.gen_range(0..count)).collect()
    }));
    out
}

fn indices(bits: &BitSet) -> Vec<usize> {
    bits.iter().collect()
}

/// The bound-operator and cut identities on one poset, with `A^u` and `A^l`
/// cross-checked against the oracle's double loops.
pub fn cut_calculus(p: &Poset, limits: &Limits) -> Result<Vec<String>> {
    let n = p.len();
    let c = macneille_completion(p, limits)?;
    let full = BitSet::full(n);
    let min_set = BitSet::from_indices(n, p.minimum());
    let max_set = BitSet::from_indices(n, p.maximum());
    let mut v = Vec::new();
    let mut closures: HashSet<BitSet> = HashSet::new();
    let subsets = subsets_of(n);
    let exhaustive = n <= EXHAUSTIVE_SUBSET_ARITY;

    for a in &subsets {
        let name = || show(p, a);
        let au = p.upper_bounds_bits(a);
        let al = p.lower_bounds_bits(a);
        if indices(&au) != oracle::upper_bounds(p, &indices(a)) {
            v.push(format!("A^u disagrees with the oracle at {}", name()));
        }
        if indices(&al) != oracle::lower_bounds(p, &indices(a)) {
            v.push(format!("A^l disagrees with the oracle at {}", name()));
        }
        // A^u = X ⟺ A ⊆ {min} and A^l = X ⟺ A ⊆ {max}; without extrema
        // both sides reduce to A = ∅.
        if (au == full) != a.is_subset(&min_set) || (al == full) != a.is_subset(&max_set) {
            v.push(format!("full-bound characterization fails at {}", name()));
        }
        if a.is_empty() && !(au == full && al == full) {
            v.push("bounds of ∅ are not the full carrier".into());
        }
        let bounded_above = (0..n).any(|x| a.iter().all(|y| p.leq(y, x)));
        let bounded_below = (0..n).any(|x| a.iter().all(|y| p.leq(x, y)));
        if au.is_empty() == bounded_above || al.is_empty() == bounded_below {
            v.push(format!("empty-bound characterization fails at {}", name()));
        }
        for x in (0..n).filter(|&x| !a.contains(x)) {
            let mut b = a.clone();
            b.insert(x);
            if !p.upper_bounds_bits(&b).is_subset(&au) || !p.lower_bounds_bits(&b).is_subset(&al) {
                v.push(format!("bounds not antitone from {} to {}", name(), show(p, &b)));
            }
        }
        let aul = p.lower_bounds_bits(&au);
        let alu = p.upper_bounds_bits(&al);
        if !a.is_subset(&aul) || !a.is_subset(&alu) {
            v.push(format!("A not inside A^ul or A^lu at {}", name()));
        }
        if p.upper_bounds_bits(&aul) != au || p.lower_bounds_bits(&alu) != al {
            v.push(format!("A^ulu = A^u or A^lul = A^l fails at {}", name()));
        }
        if p.closure_bits(&aul) != aul {
            v.push(format!("A^ul is not a cut at {}", name()));
        }
        for k in 0..c.len() {
            let b = c.cut_bits(k);
            if a.is_subset(b) && !aul.is_subset(b) {
                v.push(format!("{} is not the least cut over {}", show(p, &aul), name()));
            }
            if b.is_subset(a) && !b.is_subset(&aul) {
                v.push(format!("cut {} inside {} escapes its closure", show(p, b), name()));
            }
        }
        let principals: Vec<usize> = a.iter().map(|x| c.embedding()[x]).collect();
        if c.cut_bits(c.sup_indices(&principals)) != &aul {
            v.push(format!("A^ul is not the sup of principal cuts at {}", name()));
        }
        closures.insert(aul);
    }
    if exhaustive {
        let cuts: HashSet<BitSet> = (0..c.len()).map(|k| c.cut_bits(k).clone()).collect();
        if closures != cuts {
            v.push("closures of all subsets differ from the cut set".into());
        }
    }

    for x in 0..n {
        let single = BitSet::from_indices(n, [x]);
        let up = p.upper_bounds_bits(&single);
        let down = p.lower_bounds_bits(&single);
        if &up != p.up(x) || &down != p.down(x) {
            v.push(format!("bounds of {{{}}} are not its principal sets", p.label(x)));
        }
        if &p.lower_bounds_bits(p.up(x)) != p.down(x) || &p.upper_bounds_bits(p.down(x)) != p.up(x) {
            v.push(format!("[x>^l = <x] or <x]^u = [x> fails at {}", p.label(x)));
        }
        if &p.closure_bits(&single) != p.down(x) || &p.upper_bounds_bits(&down) != p.up(x) {
            v.push(format!("x^ul = <x] or x^lu = [x> fails at {}", p.label(x)));
        }
    }

    for fam in families_of(c.len()) {
        let mut union = BitSet::empty(n);
        let mut inter = BitSet::full(n);
        for &k in &fam {
            union.union_with(c.cut_bits(k));
            inter.intersect_with(c.cut_bits(k));
        }
        let fam_name = || {
            let parts: Vec<String> = fam.iter().map(|&k| show(p, c.cut_bits(k))).collect();
            format!("[{}]", parts.join(", "))
        };
        let sup = c.cut_bits(c.sup_indices(&fam)).clone();
        let mut least_over_union = BitSet::full(n);
        for k in (0..c.len()).filter(|&k| union.is_subset(c.cut_bits(k))) {
            least_over_union.intersect_with(c.cut_bits(k));
        }
        if sup != p.closure_bits(&union) || sup != least_over_union {
            v.push(format!("sup of {} is not (⋃)^ul", fam_name()));
        }
        let inf = c.cut_bits(c.inf_indices(&fam)).clone();
        if inf != inter || p.closure_bits(&inter) != inter {
            v.push(format!("inf of {} is not ⋂", fam_name()));
        }
        let mut below: Vec<usize> = (0..c.len()).filter(|&k| c.cut_bits(k).is_subset(&inter)).collect();
        below.sort_unstable();
        if c.cut_bits(c.sup_indices(&below)) != &inter {
            v.push(format!("inf of {} is not the sup of the cuts below ⋂", fam_name()));
        }
    }
    Ok(v)
}

/// Completion against the brute-force enumeration, bounds against the
/// brute-force scan, and the completion's own verification report.
pub fn macneille(p: &Poset, limits: &Limits) -> Result<Vec<String>> {
    let c = macneille_completion(p, limits)?;
    let mut v = Vec::new();
    if p.len() <= oracle::MAX_BRUTE_ARITY {
        let brute = oracle::brute_cuts(p)?;
        let fast: Vec<Subset> = c.cuts().map(|k| k.into_subset()).collect();
        if brute != fast {
            v.push(format!(
                "enumeration found {} cuts, brute force {}",
                fast.len(),
                brute.len()
            ));
        }
    }
    for k in 0..c.len() {
        if &p.closure_bits(c.cut_bits(k)) != c.cut_bits(k) {
            v.push(format!("{} listed but not a cut", show(p, c.cut_bits(k))));
        }
    }
    let report = verify_macneille(&c);
    v.extend(report.failures.iter().cloned());
    if !report.all_pass() && report.failures.is_empty() {
        v.push("verification failed without a recorded reason".into());
    }
    for fam in families_of(c.len()) {
        let cuts: Vec<_> = fam.iter().map(|&k| c.cut(k)).collect();
        for (which, fast) in [(Bound::Sup, c.sup_indices(&fam)), (Bound::Inf, c.inf_indices(&fam))] {
            match oracle::brute_bound(&c, &cuts, which) {
                Ok(b) if b == c.cut(fast) => {}
                Ok(b) => v.push(format!(
                    "{which:?} of family {fam:?}: fast {} vs brute {}",
                    show(p, c.cut_bits(fast)),
                    show(p, b.bits())
                )),
                Err(e) => v.push(format!("{which:?} of family {fam:?}: {e}")),
            }
        }
    }
    Ok(v)
}

/// Whether every cut is principal and the embedding is an order embedding,
/// i.e. the completion is isomorphic to the poset itself.
pub fn self_complete(c: &CompletedPoset) -> bool {
    let p = c.parent();
    let n = p.len();
    let emb = c.embedding();
    let mut hit: HashSet<usize> = HashSet::new();
    hit.extend(emb.iter().copied());
    c.len() == n && hit.len() == n && (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == c.leq(emb[x], emb[y])))
}

/// Chains complete to themselves, antichains gain a bottom and a top, and
/// Boolean and divisor lattices are self-complete.
pub fn sizes(limits: &Limits) -> Result<Vec<String>> {
    let mut v = Vec::new();
    for n in 1..=10 {
        let c = macneille_completion(&generators::chain(n)?, limits)?;
        if c.len() != n || !self_complete(&c) {
            v.push(format!("chain({n}) completes to {} cuts", c.len()));
        }
        let c = macneille_completion(&generators::antichain(n)?, limits)?;
        let expected = if n == 1 { 1 } else { n + 2 };
        if c.len() != expected {
            v.push(format!("antichain({n}) completes to {} cuts, expected {expected}", c.len()));
        }
    }
    for k in 0..=4 {
        let c = macneille_completion(&generators::boolean(k)?, limits)?;
        if c.len() != 1 << k || !self_complete(&c) {
            v.push(format!("boolean({k}) is not self-complete ({} cuts)", c.len()));
        }
    }
    for m in 1..=60u64 {
        let c = macneille_completion(&generators::divisor(m)?, limits)?;
        if !self_complete(&c) {
            v.push(format!("divisor({m}) is not self-complete ({} cuts)", c.len()));
        }
    }
    Ok(v)
}

/// Checks the solver against exhaustive search for every right-hand side.
pub fn theorem41(eq: &EquationInstance) -> Result<Vec<String>> {
    let mut v = Vec::new();
    let y = eq.codomain();
    let yc = eq.codomain_completion();
    if !eq.class_map().is_oie()? {
        v.push("induced class map is not an order embedding".into());
    }
    for f in 0..yc.len() {
        let target = yc.cut(f).into_subset();
        let fname = || show(y, target.bits());
        let r = solve(eq, &target)?;
        let brute = match oracle::brute_solve(eq, &target) {
            Ok(b) => b,
            Err(e) => {
                v.push(format!("F = {}: {e}", fname()));
                continue;
            }
        };
        if r.solvable != brute.is_some() {
            v.push(format!(
                "F = {}: criterion says {}, exhaustive search says {}",
                fname(),
                r.solvable,
                brute.is_some()
            ));
        }
        if let (Some(a), Some(b)) = (r.solution, &brute) {
            if eq.quotient_completion().cut(a) != *b {
                v.push(format!("F = {}: solver and exhaustive search disagree on A", fname()));
            }
        }
        if r.solvable && !(r.solution_verified && r.extremes_agree) {
            v.push(format!("F = {}: solution fails verification", fname()));
        }
        if !r.inclusion_chain_holds {
            v.push(format!("F = {}: inclusion chain broken", fname()));
        }
        if !r.sandwich_holds {
            v.push(format!("F = {}: F is not sandwiched", fname()));
        }
    }
    Ok(v)
}

/// Compares the two surjectivity conditions with each other and with
/// exhaustive search.
pub fn theorem42(eq: &EquationInstance) -> Result<Vec<String>> {
    let mut v = Vec::new();
    let g = global_character(eq);
    if !g.agree {
        v.push(format!(
            "principal coverage is {} but surjectivity is {}",
            g.covers_codomain, g.surjective
        ));
    }
    let yc = eq.codomain_completion();
    let mut every_cut_hit = true;
    for f in 0..yc.len() {
        if oracle::brute_solve(eq, yc.cut(f).as_subset())?.is_none() {
            every_cut_hit = false;
        }
    }
    if every_cut_hit != g.surjective {
        v.push("surjectivity disagrees with exhaustive search".into());
    }
    if g.surjective && g.order_isomorphism != Some(true) {
        v.push("surjective extension is not an order isomorphism".into());
    }
    Ok(v)
}

/// The extension proposition on one map.
pub fn prop_a1(phi: &PosetMap, limits: &Limits) -> Result<Vec<String>> {
    let r = check_prop_a1(phi, limits)?;
    Ok([("monotone", &r.monotone), ("commutes", &r.commutes), ("oie_on_cuts", &r.oie_on_cuts)]
        .into_iter()
        .filter_map(|(part, o)| match o {
            crate::mapext::Outcome::Fail(msg) => Some(format!("{part}: {msg}")),
            _ => None,
        })
        .collect())
}

/// The inequality chain for an increasing map on every nonvoid family (or a
/// sample of them).
pub fn lemma_a1(mu: &CutMap<'_>) -> Result<Vec<String>> {
    let mut v = Vec::new();
    for fam in families_of(mu.source().len()).into_iter().filter(|f| !f.is_empty()) {
        let r = check_lemma_a1_indices(mu, &fam)?;
        if !r.holds() {
            v.push(format!("family {fam:?}: chain fails ({r:?})"));
        }
    }
    Ok(v)
}

/// The posets used by the cut-calculus and completion suites: chains and
/// antichains up to 8 elements, Boolean lattices up to rank 4, divisor
/// lattices of 1..=60, and `random_count` random posets with at most 8
/// elements.
pub fn standard_corpus(random_count: u64, base_seed: u64) -> Result<Vec<(String, Poset)>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("chain({n})"), generators::chain(n)?));
        out.push((format!("antichain({n})"), generators::antichain(n)?));
    }
    for k in 0..=4 {
        out.push((format!("boolean({k})"), generators::boolean(k)?));
    }
    for m in 1..=60 {
        out.push((format!("divisor({m})"), generators::divisor(m)?));
    }
    for i in 0..random_count {
        let (n, density, seed) = random_poset_params(base_seed + i);
        out.push((format!("random({n}, {density}, {seed})"), generators::random(n, density, seed)?));
    }
    Ok(out)
}

fn random_poset_params(seed: u64) -> (usize, u32, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (rng.gen_range(1..=8), rng.gen_range(0..=100), seed)
}

fn random_equation_params(seed: u64) -> (usize, usize, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe9);
    (rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen_range(0..=100))
}

/// `count` seeded equation instances with `|X|, |Y| <= 6`.
pub fn equation_batch(count: u64, base_seed: u64, limits: &Limits) -> Result<Vec<(String, EquationInstance)>> {
    (base_seed..base_seed + count)
        .map(|seed| {
            let (x, y, density) = random_equation_params(seed);
            let map = generators::random_equation(x, y, density, seed)?;
            Ok((format!("randeq({x}, {y}, {density}, {seed})"), build_equation(map, limits)?))
        })
        .collect()
}

pub fn run_cut_calculus(corpus: &[(String, Poset)], limits: &Limits) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cutcalc");
    for (name, p) in corpus {
        out.record_result(name, p.len(), cut_calculus(p, limits));
    }
    out
}

pub fn run_macneille(corpus: &[(String, Poset)], limits: &Limits) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("macneille");
    for (name, p) in corpus {
        out.record_result(name, p.len(), macneille(p, limits));
    }
    out
}

pub fn run_sizes(limits: &Limits) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("sizes");
    out.record_result("closed forms", 0, sizes(limits));
    out
}

pub fn run_theorem41(batch: &[(String, EquationInstance)]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("theorem41");
    for (name, eq) in batch {
        out.record_result(name, eq.domain().len() + eq.codomain().len(), theorem41(eq));
    }
    out
}

pub fn run_theorem42(batch: &[(String, EquationInstance)]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("theorem42");
    for (name, eq) in batch {
        out.record_result(name, eq.domain().len() + eq.codomain().len(), theorem42(eq));
    }
    out
}

pub fn run_prop_a1(maps: &[(String, PosetMap)], limits: &Limits) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("propa1");
    for (name, phi) in maps {
        out.record_result(name, phi.source().carrier().len(), prop_a1(phi, limits));
    }
    out
}

/// `count` seeded increasing maps between completions of random posets with
/// at most 6 elements each.
pub fn run_lemma_a1(count: u64, base_seed: u64, limits: &Limits) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("lemmaa1");
    for seed in base_seed..base_seed + count {
        let name = format!("seed {seed}");
        let result = (|| -> Result<(usize, Vec<String>)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e);
            let p = generators::random(rng.gen_range(1..=6), rng.gen_range(0..=100), seed)?;
            let q = generators::random(rng.gen_range(1..=6), rng.gen_range(0..=100), seed + 1)?;
            let pc = macneille_completion(&p, limits)?;
            let qc = macneille_completion(&q, limits)?;
            let image = generators::random_increasing_cut_map(&pc, &qc, seed);
            let mu = CutMap::new(&pc, &qc, image)?;
            if !mu.is_increasing() {
                return Err(Error::NotIncreasing(name.clone()));
            }
            Ok((p.len() + q.len(), lemma_a1(&mu)?))
        })();
        match result {
            Ok((size, v)) => out.record(&name, size, v),
            Err(e) => out.record(&name, 0, vec![format!("error: {e}")]),
        }
    }
    out
}

/// Seeded maps between random posets for the extension proposition,
/// including identities and, where the draw allows, order embeddings.
pub fn map_batch(count: u64, base_seed: u64) -> Result<Vec<(String, PosetMap)>> {
    let mut out = Vec::new();
    for seed in base_seed..base_seed + count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa1);
        let p = generators::random(rng.gen_range(1..=5), rng.gen_range(0..=100), seed)?;
        let q = generators::random(rng.gen_range(1..=5), rng.gen_range(0..=100), seed + 7)?;
        let assignment: Vec<usize> = (0..p.len()).map(|_| rng.gen_range(0..q.len())).collect();
        out.push((format!("random map {seed}"), PosetMap::new(crate::mapext::Source::Ordered(p.clone()), q, assignment)?));
        out.push((format!("identity {seed}"), PosetMap::identity(&p)));
        // Inclusion of an induced subposet is an order embedding.
        let keep = BitSet::from_indices(p.len(), (0..p.len()).filter(|_| rng.gen_bool(0.6)));
        if !keep.is_empty() {
            let sub = p.restrict(&keep);
            let assignment = keep.iter().collect();
            out.push((format!("inclusion {seed}"), PosetMap::new(crate::mapext::Source::Ordered(sub), p, assignment)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_cases() {
        let limits = Limits::default();
        let p = generators::boolean(2).unwrap();
        assert_eq!(cut_calculus(&p, &limits).unwrap(), Vec::<String>::new());
        assert_eq!(macneille(&p, &limits).unwrap(), Vec::<String>::new());
        let map = generators::gridfn(2, 2, generators::Stencil::Identity).unwrap();
        let eq = build_equation(map, &limits).unwrap();
        assert!(theorem41(&eq).unwrap().is_empty());
        assert!(theorem42(&eq).unwrap().is_empty());
        assert!(global_character(&eq).surjective);
    }

    #[test]
    fn family_enumeration_sizes() {
        assert_eq!(families_of(3).len(), 8);
        assert_eq!(subsets_of(4).len(), 16);
        assert!(families_of(20).iter().any(|f| f.is_empty()));
    }

    #[test]
    fn minimal_failure_prefers_small_instances() {
        let mut s = SuiteOutcome::new("x");
        s.record("big", 9, vec!["a".into()]);
        s.record("small", 2, vec!["b".into()]);
        assert_eq!(s.minimal_failure().unwrap().instance, "small");
        assert!(!s.passed());
    }

    #[test]
    fn corpus_has_expected_members() {
        let corpus = standard_corpus(5, 0).unwrap();
        assert_eq!(corpus.len(), 16 + 5 + 60 + 5);
        assert!(corpus.iter().all(|(_, p)| p.len() <= 16));
    }
}
