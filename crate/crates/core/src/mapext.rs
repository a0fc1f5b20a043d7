//! Maps into posets and their extension to completions.
//!
//! A map `φ : X → Y` extends to every subset of `X` by `φ^#(A) = (φ(A))^ul`,
//! a cut of `Y`. Restricting to the cuts of `X` gives a map between
//! completions, which is an order embedding whenever `φ` is one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::completion::{macneille_completion, CompletedPoset, Cut};
use crate::error::{Error, Result};
use crate::poset::{show, Carrier, CarrierSet, Poset, Subset};
use crate::Limits;

/// Domain of a [`PosetMap`].
#[derive(Debug, Clone)]
pub enum Source {
    Ordered(Poset),
    Unordered(CarrierSet),
}

impl Source {
    pub fn carrier(&self) -> &dyn Carrier {
        match self {
            Source::Ordered(p) => p,
            Source::Unordered(s) => s,
        }
    }

    pub fn poset(&self) -> Option<&Poset> {
        match self {
            Source::Ordered(p) => Some(p),
            Source::Unordered(_) => None,
        }
    }
}

/// A total map from a set or poset into a poset.
#[derive(Debug, Clone)]
pub struct PosetMap {
    source: Source,
    target: Poset,
    assignment: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Source, target: Poset, assignment: Vec<usize>) -> Result<PosetMap> {
        let n = source.carrier().len();
        if assignment.len() != n {
            let missing = source.carrier().labels().get(assignment.len()).cloned().unwrap_or_default();
            return Err(Error::NotTotal(missing));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source label, target label)` pairs. Every source
    /// element must appear exactly once.
    pub fn from_labels<S: AsRef<str>, T: AsRef<str>>(
        source: Source,
        target: Poset,
        pairs: impl IntoIterator<Item = (S, T)>,
    ) -> Result<PosetMap> {
        let n = source.carrier().len();
        let mut assignment: Vec<Option<usize>> = vec![None; n];
        for (s, t) in pairs {
            let i = source.carrier().index_of(s.as_ref())?;
            let j = target.index_of(t.as_ref())?;
            if assignment[i].replace(j).is_some() {
                return Err(Error::DuplicateLabel(s.as_ref().to_string()));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::NotTotal(source.carrier().label(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        PosetMap::new(source, target, assignment)
    }

    pub fn identity(poset: &Poset) -> PosetMap {
        PosetMap {
            source: Source::Ordered(poset.clone()),
            target: poset.clone(),
            assignment: (0..poset.len()).collect(),
        }
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `φ(A)` as bits of the target.
    pub fn image_bits(&self, bits: &BitSet) -> BitSet {
        BitSet::from_indices(self.target.len(), bits.iter().map(|x| self.assignment[x]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BitSet::empty(self.target.len());
        for &y in &self.assignment {
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    fn ordered_source(&self) -> Result<&Poset> {
        self.source.poset().ok_or(Error::SourceNotOrdered)
    }

    /// First pair `a <= b` with `φ(a) ≰ φ(b)`, if any.
    fn monotonicity_witness(&self) -> Result<Option<(usize, usize)>> {
        let src = self.ordered_source()?;
        Ok(src
            .relation_pairs()
            .into_iter()
            .find(|&(a, b)| !self.target.leq(self.assignment[a], self.assignment[b])))
    }

    pub fn is_increasing(&self) -> Result<bool> {
        Ok(self.monotonicity_witness()?.is_none())
    }

    /// Injective, with `a <= b ⟺ φ(a) <= φ(b)`.
    pub fn is_oie(&self) -> Result<bool> {
        let src = self.ordered_source()?;
        if !self.is_injective() {
            return Ok(false);
        }
        let n = src.len();
        Ok((0..n).all(|a| (0..n).all(|b| src.leq(a, b) == self.target.leq(self.assignment[a], self.assignment[b]))))
    }
}

pub fn is_increasing(phi: &PosetMap) -> Result<bool> {
    phi.is_increasing()
}

pub fn is_oie(phi: &PosetMap) -> Result<bool> {
    phi.is_oie()
}

/// A map together with the completion of its target, ready to be applied to
/// arbitrary source subsets.
#[derive(Debug, Clone)]
pub struct ExtendedMap {
    base: PosetMap,
    target_completion: CompletedPoset,
}

impl ExtendedMap {
    pub fn new(base: PosetMap, limits: &Limits) -> Result<ExtendedMap> {
        let target_completion = macneille_completion(&base.target, limits)?;
        Ok(ExtendedMap {
            base,
            target_completion,
        })
    }

    pub fn with_completion(base: PosetMap, target_completion: CompletedPoset) -> Result<ExtendedMap> {
        if target_completion.parent().id() != base.target.id() {
            return Err(Error::ParentMismatch);
        }
        Ok(ExtendedMap {
            base,
            target_completion,
        })
    }

    pub fn base(&self) -> &PosetMap {
        &self.base
    }

    pub fn target_completion(&self) -> &CompletedPoset {
        &self.target_completion
    }

    /// Index in the target completion of `(φ(A))^ul`.
    pub fn apply_bits(&self, bits: &BitSet) -> usize {
        let image = self.base.image_bits(bits);
        let closed = self.base.target.closure_bits(&image);
        self.target_completion
            .index_of_bits(&closed)
            .expect("closure of a subset is always a cut")
    }

    pub fn apply(&self, subset: &Subset) -> Result<Cut> {
        subset.ensure_parent(self.base.source.carrier())?;
        Ok(self.target_completion.cut(self.apply_bits(subset.bits())))
    }

    /// The extension restricted to the cuts of `source_completion`.
    pub fn restrict_to_cuts<'a>(&'a self, source_completion: &'a CompletedPoset) -> Result<CutMap<'a>> {
        let src = self.base.ordered_source()?;
        if source_completion.parent().id() != src.id() {
            return Err(Error::ParentMismatch);
        }
        let image = (0..source_completion.len())
            .map(|i| self.apply_bits(source_completion.cut_bits(i)))
            .collect();
        Ok(CutMap {
            source: source_completion,
            target: &self.target_completion,
            image,
        })
    }
}

/// `φ^#(A) = (φ(A))^ul` for any subset `A` of the source.
pub fn apply_extension(ext: &ExtendedMap, subset: &Subset) -> Result<Cut> {
    ext.apply(subset)
}

/// A map between two completions, given on cut indices.
#[derive(Debug, Clone)]
pub struct CutMap<'a> {
    source: &'a CompletedPoset,
    target: &'a CompletedPoset,
    image: Vec<usize>,
}

impl<'a> CutMap<'a> {
    pub fn new(source: &'a CompletedPoset, target: &'a CompletedPoset, image: Vec<usize>) -> Result<CutMap<'a>> {
        if image.len() != source.len() {
            return Err(Error::NotTotal(format!("#{}", image.len())));
        }
        if let Some(&bad) = image.iter().find(|&&j| j >= target.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(CutMap { source, target, image })
    }

    pub fn identity(c: &'a CompletedPoset) -> CutMap<'a> {
        CutMap {
            source: c,
            target: c,
            image: (0..c.len()).collect(),
        }
    }

    pub fn source(&self) -> &'a CompletedPoset {
        self.source
    }

    pub fn target(&self) -> &'a CompletedPoset {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing_witness().is_none()
    }

    fn increasing_witness(&self) -> Option<(usize, usize)> {
        let m = self.source.len();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.source.leq(i, j) && !self.target.leq(self.image[i], self.image[j]))
    }
}

/// Result of one check in a [`PropA1Report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

/// The three parts of the extension proposition, checked on one map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropA1Report {
    /// `A ⊆ B ⟹ φ^#(A) ⊆ φ^#(B)` over the source power set.
    pub monotone: Outcome,
    /// `φ^#(<x]) = <φ(x)]` for increasing `φ`.
    pub commutes: Outcome,
    /// `φ^#` restricted to source cuts is an order embedding, for OIE `φ`.
    pub oie_on_cuts: Outcome,
    pub exhaustive: bool,
}

impl PropA1Report {
    pub fn passed(&self) -> bool {
        !(self.monotone.is_fail() || self.commutes.is_fail() || self.oie_on_cuts.is_fail())
    }
}

const EXHAUSTIVE_SOURCE_ARITY: usize = 12;
const SAMPLED_SUBSETS: usize = 2048;

pub fn check_prop_a1(phi: &PosetMap, limits: &Limits) -> Result<PropA1Report> {
    let ext = ExtendedMap::new(phi.clone(), limits)?;
    let src = phi.source.carrier();
    let n = src.len();
    let tgt = &ext.target_completion;

    let exhaustive = n <= EXHAUSTIVE_SOURCE_ARITY;
    let subsets: Vec<BitSet> = if exhaustive {
        (0u32..1 << n)
            .map(|mask| BitSet::from_indices(n, (0..n).filter(|&i| mask & (1 << i) != 0)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        (0..SAMPLED_SUBSETS)
            .map(|_| BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))))
            .collect()
    };
    let mut monotone = Outcome::Pass;
    'outer: for a in &subsets {
        let fa = ext.apply_bits(a);
        for x in (0..n).filter(|&x| !a.contains(x)) {
            let mut b = a.clone();
            b.insert(x);
            if !tgt.leq(fa, ext.apply_bits(&b)) {
                monotone = Outcome::Fail(format!(
                    "extension of {} is not contained in that of {}",
                    show(src, a),
                    show(src, &b)
                ));
                break 'outer;
            }
        }
    }

    let Some(poset) = phi.source.poset() else {
        let na = || Outcome::NotApplicable("source is unordered".into());
        return Ok(PropA1Report {
            monotone,
            commutes: na(),
            oie_on_cuts: na(),
            exhaustive,
        });
    };

    let commutes = if phi.is_increasing()? {
        let bad = (0..n).find(|&x| ext.apply_bits(poset.down(x)) != tgt.embedding()[phi.image(x)]);
        match bad {
            Some(x) => Outcome::Fail(format!("square does not commute at {}", poset.label(x))),
            None => Outcome::Pass,
        }
    } else {
        Outcome::NotApplicable("map is not increasing".into())
    };

    let oie_on_cuts = if phi.is_oie()? {
        let src_completion = macneille_completion(poset, limits)?;
        let restricted = ext.restrict_to_cuts(&src_completion)?;
        let m = src_completion.len();
        let img = restricted.image();
        let mut outcome = Outcome::Pass;
        'pairs: for i in 0..m {
            for j in 0..m {
                let injective = i == j || img[i] != img[j];
                if !injective || src_completion.leq(i, j) != tgt.leq(img[i], img[j]) {
                    outcome = Outcome::Fail(format!(
                        "extension is not an embedding on cuts {} and {}",
                        show(poset, src_completion.cut_bits(i)),
                        show(poset, src_completion.cut_bits(j))
                    ));
                    break 'pairs;
                }
            }
        }
        outcome
    } else {
        Outcome::NotApplicable("map is not an order embedding".into())
    };

    Ok(PropA1Report {
        monotone,
        commutes,
        oie_on_cuts,
        exhaustive,
    })
}

/// The inequality chain `μ(inf E) ≤ inf μ(E) ≤ sup μ(E) ≤ μ(sup E)` for one
/// family, with cut indices into the respective completions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaA1Report {
    pub image_of_inf: usize,
    pub inf_of_images: usize,
    pub sup_of_images: usize,
    pub image_of_sup: usize,
    pub lower_holds: bool,
    pub middle_holds: bool,
    pub upper_holds: bool,
    pub lower_strict: bool,
    pub upper_strict: bool,
}

impl LemmaA1Report {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.middle_holds && self.upper_holds
    }
}

pub fn check_lemma_a1(mu: &CutMap<'_>, family: &[Cut]) -> Result<LemmaA1Report> {
    let idx = family
        .iter()
        .map(|c| mu.source.index_of(c))
        .collect::<Result<Vec<_>>>()?;
    check_lemma_a1_indices(mu, &idx)
}

/// As [`check_lemma_a1`], with the family given as source cut indices.
pub fn check_lemma_a1_indices(mu: &CutMap<'_>, family: &[usize]) -> Result<LemmaA1Report> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some((i, j)) = mu.increasing_witness() {
        let p = mu.source.parent();
        return Err(Error::NotIncreasing(format!(
            "{} ⊆ {} but their images are not ordered",
            show(p, mu.source.cut_bits(i)),
            show(p, mu.source.cut_bits(j))
        )));
    }
    let (src, tgt) = (mu.source, mu.target);
    let images: Vec<usize> = family.iter().map(|&i| mu.image[i]).collect();
    let image_of_inf = mu.image[src.inf_indices(family)];
    let image_of_sup = mu.image[src.sup_indices(family)];
    let inf_of_images = tgt.inf_indices(&images);
    let sup_of_images = tgt.sup_indices(&images);
    Ok(LemmaA1Report {
        image_of_inf,
        inf_of_images,
        sup_of_images,
        image_of_sup,
        lower_holds: tgt.leq(image_of_inf, inf_of_images),
        middle_holds: tgt.leq(inf_of_images, sup_of_images),
        upper_holds: tgt.leq(sup_of_images, image_of_sup),
        lower_strict: image_of_inf != inf_of_images,
        upper_strict: sup_of_images != image_of_sup,
    })
}
