//! Deterministic instance families.
//!
//! Random families draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`, sampled through `rand` 0.8's uniform
//! distributions. Both crates document value stability for a fixed seed, so
//! a seed names the same instance on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::completion::CompletedPoset;
use crate::error::{Error, Result};
use crate::mapext::{PosetMap, Source};
use crate::poset::{CarrierSet, Poset, RelationKind};

/// Upper limit on the number of elements any generator produces.
pub const MAX_ELEMENTS: usize = 4096;

/// Monotone local update rules for the grid-function family. Each maps a
/// grid function with values in `0..v` to another one, point by point,
/// reading the point and its immediate neighbours (boundaries replicate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Identity,
    /// Maximum over the neighbourhood.
    Dilate,
    /// Minimum over the neighbourhood.
    Erode,
    /// Adds one level, saturating at the top.
    Raise,
    /// Floor of the neighbourhood mean.
    Smooth,
}

impl Stencil {
    pub const ALL: [Stencil; 5] = [
        Stencil::Identity,
        Stencil::Dilate,
        Stencil::Erode,
        Stencil::Raise,
        Stencil::Smooth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stencil::Identity => "identity",
            Stencil::Dilate => "dilate",
            Stencil::Erode => "erode",
            Stencil::Raise => "raise",
            Stencil::Smooth => "smooth",
        }
    }

    pub fn parse(name: &str) -> Result<Stencil> {
        Stencil::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::BadSpec(format!("unknown stencil `{name}`")))
    }

    fn apply(self, u: &[usize], levels: usize) -> Vec<usize> {
        let g = u.len();
        (0..g)
            .map(|i| {
                let left = u[i.saturating_sub(1)];
                let right = u[(i + 1).min(g - 1)];
                match self {
                    Stencil::Identity => u[i],
                    Stencil::Dilate => left.max(u[i]).max(right),
                    Stencil::Erode => left.min(u[i]).min(right),
                    Stencil::Raise => (u[i] + 1).min(levels - 1),
                    Stencil::Smooth => (left + u[i] + right) / 3,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Chain { n: usize },
    Antichain { n: usize },
    /// Subsets of a `k`-element set under inclusion.
    Boolean { k: usize },
    /// Divisors of `m` under divisibility.
    Divisor { m: u64 },
    /// Transitive closure of a random DAG: each pair `i < j` is an edge with
    /// probability `density` percent.
    Random { n: usize, density: u32, seed: u64 },
    /// Functions from `g` grid points to `v` levels, ordered pointwise, with
    /// the equation `u ↦ stencil(u)`.
    GridFn { g: usize, v: usize, stencil: Stencil },
    /// A random map from an `x`-element set into a random `y`-element poset.
    RandomEquation { x: usize, y: usize, density: u32, seed: u64 },
}

/// A generated poset, or a map defining an equation.
#[derive(Debug, Clone)]
pub enum Instance {
    Poset(Poset),
    Equation(PosetMap),
}

impl Instance {
    pub fn into_poset(self) -> Option<Poset> {
        match self {
            Instance::Poset(p) => Some(p),
            Instance::Equation(_) => None,
        }
    }

    pub fn into_equation(self) -> Option<PosetMap> {
        match self {
            Instance::Equation(m) => Some(m),
            Instance::Poset(_) => None,
        }
    }
}

fn check_count(what: &'static str, count: Option<usize>) -> Result<usize> {
    match count {
        Some(c) if c <= MAX_ELEMENTS => Ok(c),
        Some(c) => Err(Error::ResourceCap {
            what,
            limit: MAX_ELEMENTS,
            actual: c,
        }),
        None => Err(Error::ResourceCap {
            what,
            limit: MAX_ELEMENTS,
            actual: usize::MAX,
        }),
    }
}

fn positive(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::BadSpec(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn density_ok(density: u32) -> Result<()> {
    if density > 100 {
        Err(Error::BadSpec(format!("density {density} is not a percentage")))
    } else {
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    match *spec {
        GeneratorSpec::Chain { n } => chain(n).map(Instance::Poset),
        GeneratorSpec::Antichain { n } => antichain(n).map(Instance::Poset),
        GeneratorSpec::Boolean { k } => boolean(k).map(Instance::Poset),
        GeneratorSpec::Divisor { m } => divisor(m).map(Instance::Poset),
        GeneratorSpec::Random { n, density, seed } => random(n, density, seed).map(Instance::Poset),
        GeneratorSpec::GridFn { g, v, stencil } => gridfn(g, v, stencil).map(Instance::Equation),
        GeneratorSpec::RandomEquation { x, y, density, seed } => {
            random_equation(x, y, density, seed).map(Instance::Equation)
        }
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn chain(n: usize) -> Result<Poset> {
    positive("n", n)?;
    check_count("chain length", Some(n))?;
    Poset::from_fn(names(n), |i, j| i <= j)
}

pub fn antichain(n: usize) -> Result<Poset> {
    positive("n", n)?;
    check_count("antichain size", Some(n))?;
    Poset::from_fn(names(n), |i, j| i == j)
}

pub fn boolean(k: usize) -> Result<Poset> {
    let size = check_count("boolean lattice size", 1usize.checked_shl(k as u32).filter(|_| k < 64))?;
    let labels = (0..size).map(|mask| {
        let atoms: Vec<String> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| (b + 1).to_string()).collect();
        format!("{{{}}}", atoms.join(","))
    });
    Poset::from_fn(labels, |i, j| i & !j == 0)
}

pub fn divisor(m: u64) -> Result<Poset> {
    if m == 0 {
        return Err(Error::BadSpec("m must be at least 1".into()));
    }
    let mut divs: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            divs.push(d);
            if d != m / d {
                divs.push(m / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    check_count("divisor count", Some(divs.len()))?;
    Poset::from_fn(divs.iter().map(|d| d.to_string()), |i, j| divs[j] % divs[i] == 0)
}

fn random_in(rng: &mut ChaCha8Rng, n: usize, density: u32) -> Result<Poset> {
    let labels = names(n);
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..100) < density {
                pairs.push((&labels[i], &labels[j]));
            }
        }
    }
    Poset::build(labels.iter().cloned(), &pairs, RelationKind::Covers)
}

pub fn random(n: usize, density: u32, seed: u64) -> Result<Poset> {
    positive("n", n)?;
    density_ok(density)?;
    check_count("random poset size", Some(n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_in(&mut rng, n, density)
}

pub fn random_equation(x: usize, y: usize, density: u32, seed: u64) -> Result<PosetMap> {
    positive("x", x)?;
    positive("y", y)?;
    density_ok(density)?;
    check_count("domain size", Some(x))?;
    check_count("codomain size", Some(y))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codomain = random_in(&mut rng, y, density)?;
    let domain = CarrierSet::new((0..x).map(|i| format!("u{i}")))?;
    let assignment = (0..x).map(|_| rng.gen_range(0..y)).collect();
    PosetMap::new(Source::Unordered(domain), codomain, assignment)
}

fn grid_label(u: &[usize]) -> String {
    let parts: Vec<String> = u.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn gridfn(g: usize, v: usize, stencil: Stencil) -> Result<PosetMap> {
    positive("g", g)?;
    positive("v", v)?;
    let count = check_count(
        "grid function count",
        u32::try_from(g).ok().and_then(|g| v.checked_pow(g)),
    )?;
    // Index i spells its function in base v, most significant point first.
    let functions: Vec<Vec<usize>> = (0..count)
        .map(|mut i| {
            let mut u = vec![0; g];
            for slot in u.iter_mut().rev() {
                *slot = i % v;
                i /= v;
            }
            u
        })
        .collect();
    let labels: Vec<String> = functions.iter().map(|u| grid_label(u)).collect();
    let codomain = Poset::from_fn(labels.clone(), |i, j| {
        functions[i].iter().zip(&functions[j]).all(|(a, b)| a <= b)
    })?;
    let domain = CarrierSet::new(labels)?;
    let assignment = functions
        .iter()
        .map(|u| {
            stencil
                .apply(u, v)
                .iter()
                .fold(0, |acc, &level| acc * v + level)
        })
        .collect();
    PosetMap::new(Source::Unordered(domain), codomain, assignment)
}

/// A random increasing map between two completions, as cut indices.
///
/// Source cuts are visited in canonical order, which lists every cut after
/// all cuts it contains. Each gets a random image above the join of the
/// images already assigned below it.
pub fn random_increasing_cut_map(source: &CompletedPoset, target: &CompletedPoset, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut image: Vec<usize> = Vec::with_capacity(source.len());
    for i in 0..source.len() {
        let below: Vec<usize> = (0..i).filter(|&j| source.leq(j, i)).map(|j| image[j]).collect();
        let floor = target.sup_indices(&below);
        let choices: Vec<usize> = (0..target.len()).filter(|&k| target.leq(floor, k)).collect();
        image.push(choices[rng.gen_range(0..choices.len())]);
    }
    image
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::macneille_completion;
    use crate::mapext::CutMap;
    use crate::poset::Carrier;
    use crate::Limits;

    #[test]
    fn chain_and_antichain() {
        let c = chain(3).unwrap();
        assert_eq!(c.cover_pairs(), vec![(0, 1), (1, 2)]);
        let a = antichain(4).unwrap();
        assert_eq!(a.relation_pairs().len(), 4);
        assert!(matches!(chain(0), Err(Error::BadSpec(_))));
    }

    #[test]
    fn boolean_lattice() {
        let b = boolean(2).unwrap();
        assert_eq!(b.labels(), &["{}", "{1}", "{2}", "{1,2}"]);
        assert!(b.has_minimum() && b.has_maximum());
        assert_eq!(b.cover_pairs().len(), 4);
        assert!(boolean(20).unwrap_err().is_resource_cap());
        assert!(boolean(12).is_ok());
    }

    #[test]
    fn divisor_lattice() {
        let d = divisor(12).unwrap();
        assert_eq!(d.labels(), &["1", "2", "3", "4", "6", "12"]);
        assert!(d.leq(1, 3) && !d.leq(2, 3));
        assert_eq!(divisor(1).unwrap().len(), 1);
        assert!(matches!(divisor(0), Err(Error::BadSpec(_))));
    }

    #[test]
    fn random_is_reproducible() {
        let a = random(7, 40, 99).unwrap();
        let b = random(7, 40, 99).unwrap();
        assert_eq!(a, b);
        assert!(matches!(random(3, 101, 0), Err(Error::BadSpec(_))));
        let dense = random(5, 100, 1).unwrap();
        assert_eq!(dense, chain(5).unwrap());
        let sparse = random(5, 0, 1).unwrap();
        assert_eq!(sparse, antichain(5).unwrap());
    }

    #[test]
    fn gridfn_identity_small() {
        let map = gridfn(2, 2, Stencil::Identity).unwrap();
        assert_eq!(map.target().len(), 4);
        assert_eq!(map.target().labels(), &["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(map.assignment(), &[0, 1, 2, 3]);
        assert!(map.target().has_minimum() && map.target().has_maximum());
    }

    #[test]
    fn stencils_are_monotone() {
        for stencil in Stencil::ALL {
            let map = gridfn(3, 3, stencil).unwrap();
            let y = map.target();
            let as_poset = PosetMap::new(Source::Ordered(y.clone()), y.clone(), map.assignment().to_vec()).unwrap();
            assert!(as_poset.is_increasing().unwrap(), "{}", stencil.name());
        }
        assert_eq!(Stencil::parse("smooth").unwrap(), Stencil::Smooth);
        assert!(Stencil::parse("blur").is_err());
    }

    #[test]
    fn gridfn_cap() {
        assert!(gridfn(13, 2, Stencil::Identity).unwrap_err().is_resource_cap());
        assert!(gridfn(12, 2, Stencil::Identity).is_ok());
        assert!(gridfn(usize::MAX, 2, Stencil::Identity).unwrap_err().is_resource_cap());
    }

    #[test]
    fn random_cut_maps_are_increasing() {
        let limits = Limits::default();
        for seed in 0..20 {
            let p = random(5, 30, seed).unwrap();
            let q = random(4, 50, seed + 100).unwrap();
            let pc = macneille_completion(&p, &limits).unwrap();
            let qc = macneille_completion(&q, &limits).unwrap();
            let image = random_increasing_cut_map(&pc, &qc, seed);
            assert!(CutMap::new(&pc, &qc, image).unwrap().is_increasing());
        }
    }
}
