//! Equations `T(A) = F` for a map `T : X → Y` into a finite poset, solved in
//! the order completions.
//!
//! `X` is split into the fibers of `T`; the classes carry the order pulled
//! back from `Y`, which makes the induced class map `T_≈` an order embedding.
//! Its extension `T^#` to the completions is again an embedding, so for each
//! cut `F` of `Y` there is at most one cut `A` of the quotient with
//! `T^#(A) = F`. [`solve`] decides existence by comparing the supremum of
//! the images below `F` with the infimum of the images above it, and builds
//! `A` when the two agree.

use std::collections::HashMap;

use crate::completion::{is_cut, macneille_completion, CompletedPoset, Cut};
use crate::error::{Error, Result};
use crate::mapext::{ExtendedMap, PosetMap, Source};
use crate::poset::{show, Carrier, Poset, Subset};
use crate::bitset::BitSet;
use crate::Limits;

/// The classes of `u ≈ v ⟺ T(u) = T(v)` with the pull-back order.
#[derive(Debug, Clone)]
pub struct QuotientPoset {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    order: Poset,
}

impl QuotientPoset {
    /// Classes in order of their smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// The classes as a poset. Each class is labelled by the JSON array of
    /// its members' labels.
    pub fn order(&self) -> &Poset {
        &self.order
    }
}

/// A map `T` with its quotient, the induced class map, and both completions.
#[derive(Debug, Clone)]
pub struct EquationInstance {
    map: PosetMap,
    quotient: QuotientPoset,
    class_map: ExtendedMap,
    quotient_completion: CompletedPoset,
    /// `T^#` on each quotient cut, as a codomain cut index.
    images: Vec<usize>,
}

/// Builds the quotient, the pull-back order, and both completions for `T`.
///
/// The source's own order, if any, is ignored; only its carrier matters.
pub fn build_equation(map: PosetMap, limits: &Limits) -> Result<EquationInstance> {
    let domain = map.source().carrier();
    let codomain = map.target();

    let mut by_image: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(domain.len());
    for x in 0..domain.len() {
        let y = map.image(x);
        let k = *by_image.entry(y).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(x);
        class_of.push(k);
    }
    let class_images: Vec<usize> = classes.iter().map(|c| map.image(c[0])).collect();
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&x| domain.label(x)).collect();
            serde_json::to_string(&names).expect("string arrays serialize")
        })
        .collect();
    let m = classes.len();
    let down = (0..m)
        .map(|j| BitSet::from_indices(m, (0..m).filter(|&i| codomain.leq(class_images[i], class_images[j]))))
        .collect();
    let order = Poset::from_down_sets_unchecked(labels, down);

    let class_map = PosetMap::new(Source::Ordered(order.clone()), codomain.clone(), class_images)?;
    let class_map = ExtendedMap::new(class_map, limits)?;
    let quotient_completion = macneille_completion(&order, limits)?;
    let images = (0..quotient_completion.len())
        .map(|i| class_map.apply_bits(quotient_completion.cut_bits(i)))
        .collect();

    Ok(EquationInstance {
        map,
        quotient: QuotientPoset {
            classes,
            class_of,
            order,
        },
        class_map,
        quotient_completion,
        images,
    })
}

impl EquationInstance {
    pub fn map(&self) -> &PosetMap {
        &self.map
    }

    pub fn domain(&self) -> &dyn Carrier {
        self.map.source().carrier()
    }

    pub fn codomain(&self) -> &Poset {
        self.map.target()
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.quotient
    }

    /// `T_≈` from classes to the codomain.
    pub fn class_map(&self) -> &PosetMap {
        self.class_map.base()
    }

    pub fn codomain_completion(&self) -> &CompletedPoset {
        self.class_map.target_completion()
    }

    pub fn quotient_completion(&self) -> &CompletedPoset {
        &self.quotient_completion
    }

    /// Codomain cut index of `T^#` applied to each quotient cut.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn t_sharp_index(&self, quotient_cut: usize) -> usize {
        self.images[quotient_cut]
    }
}

/// `T^#(A) = (T_≈(A))^ul` for a cut `A` of the quotient.
pub fn t_sharp(eq: &EquationInstance, cut: &Cut) -> Result<Cut> {
    let i = eq.quotient_completion.index_of(cut)?;
    Ok(eq.codomain_completion().cut(eq.images[i]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyFamilyFlags {
    /// No quotient cut maps below `F`.
    pub lower: bool,
    /// No quotient cut maps above `F`.
    pub upper: bool,
}

/// Where the instance departs from the no-minimum/no-maximum setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssumptionFlags {
    pub quotient_has_minimum: bool,
    pub quotient_has_maximum: bool,
    pub codomain_has_minimum: bool,
    pub codomain_has_maximum: bool,
    pub empty_cut_in_quotient_completion: bool,
    pub empty_cut_in_codomain_completion: bool,
}

impl AssumptionFlags {
    pub fn of(eq: &EquationInstance) -> AssumptionFlags {
        AssumptionFlags {
            quotient_has_minimum: eq.quotient.order.has_minimum(),
            quotient_has_maximum: eq.quotient.order.has_maximum(),
            codomain_has_minimum: eq.codomain().has_minimum(),
            codomain_has_maximum: eq.codomain().has_maximum(),
            empty_cut_in_quotient_completion: eq.quotient_completion.contains_empty_cut(),
            empty_cut_in_codomain_completion: eq.codomain_completion().contains_empty_cut(),
        }
    }

    /// True when every poset involved lacks a minimum and a maximum.
    pub fn standing_assumption_holds(&self) -> bool {
        !(self.quotient_has_minimum || self.quotient_has_maximum || self.codomain_has_minimum || self.codomain_has_maximum)
    }
}

/// Everything [`solve`] computed for one right-hand side `F`.
///
/// Cut indices refer to the quotient completion (`lower_family`,
/// `upper_family`, `solution`, `sup_of_lower`, `inf_of_upper`) or the
/// codomain completion (the rest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub target: usize,
    pub lower_family: Vec<usize>,
    pub upper_family: Vec<usize>,
    pub sup_of_images: usize,
    pub inf_of_images: usize,
    pub sup_of_lower: usize,
    pub inf_of_upper: usize,
    pub image_of_sup_of_lower: usize,
    pub image_of_inf_of_upper: usize,
    pub solvable: bool,
    pub solution: Option<usize>,
    /// `sup_of_lower == inf_of_upper`; meaningful when solvable.
    pub extremes_agree: bool,
    /// `T^#(solution) == F`.
    pub solution_verified: bool,
    /// sup of lower images ⊆ T^#(sup lower) ⊆ T^#(inf upper) ⊆ inf of upper images.
    pub inclusion_chain_holds: bool,
    /// sup of lower images ⊆ F ⊆ inf of upper images.
    pub sandwich_holds: bool,
    pub empty_family: EmptyFamilyFlags,
    pub assumptions: AssumptionFlags,
}

/// Decides `T^#(A) = F` and constructs `A` when it exists.
///
/// `target` must already be a cut of the codomain; it is rejected with
/// [`Error::InvalidCut`] otherwise, never closed silently.
pub fn solve(eq: &EquationInstance, target: &Subset) -> Result<SolveReport> {
    let y = eq.codomain();
    if !is_cut(y, target)? {
        return Err(Error::InvalidCut(show(y, target.bits())));
    }
    let yc = eq.codomain_completion();
    let xc = &eq.quotient_completion;
    let f = yc.index_of_bits(target.bits()).expect("validated cut");

    let lower_family: Vec<usize> = (0..xc.len()).filter(|&u| yc.leq(eq.images[u], f)).collect();
    let upper_family: Vec<usize> = (0..xc.len()).filter(|&v| yc.leq(f, eq.images[v])).collect();
    let lower_images: Vec<usize> = lower_family.iter().map(|&u| eq.images[u]).collect();
    let upper_images: Vec<usize> = upper_family.iter().map(|&v| eq.images[v]).collect();
    let sup_of_images = yc.sup_indices(&lower_images);
    let inf_of_images = yc.inf_indices(&upper_images);

    let sup_of_lower = xc.sup_indices(&lower_family);
    let inf_of_upper = xc.inf_indices(&upper_family);
    let image_of_sup_of_lower = eq.images[sup_of_lower];
    let image_of_inf_of_upper = eq.images[inf_of_upper];

    let solvable = sup_of_images == inf_of_images;
    let solution = solvable.then_some(sup_of_lower);
    let solution_verified = solution.is_some_and(|a| eq.images[a] == f);

    Ok(SolveReport {
        target: f,
        sup_of_images,
        inf_of_images,
        sup_of_lower,
        inf_of_upper,
        image_of_sup_of_lower,
        image_of_inf_of_upper,
        solvable,
        solution,
        extremes_agree: sup_of_lower == inf_of_upper,
        solution_verified,
        inclusion_chain_holds: yc.leq(sup_of_images, image_of_sup_of_lower)
            && yc.leq(image_of_sup_of_lower, image_of_inf_of_upper)
            && yc.leq(image_of_inf_of_upper, inf_of_images),
        sandwich_holds: yc.leq(sup_of_images, f) && yc.leq(f, inf_of_images),
        empty_family: EmptyFamilyFlags {
            lower: lower_family.is_empty(),
            upper: upper_family.is_empty(),
        },
        assumptions: AssumptionFlags::of(eq),
        lower_family,
        upper_family,
    })
}

/// Surjectivity of `T^#`, tested two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub image_size: usize,
    pub codomain_cut_count: usize,
    pub quotient_cut_count: usize,
    /// Every principal cut `<y]` is hit.
    pub covers_codomain: bool,
    /// Every codomain cut is hit.
    pub surjective: bool,
    pub agree: bool,
    /// Set when `surjective`: `T^#` is a bijection that preserves and
    /// reflects inclusion.
    pub order_isomorphism: Option<bool>,
    /// Codomain elements whose principal cut is not hit.
    pub uncovered: Vec<usize>,
}

pub fn global_character(eq: &EquationInstance) -> GlobalReport {
    let yc = eq.codomain_completion();
    let xc = &eq.quotient_completion;
    let mut hit = BitSet::empty(yc.len());
    for &i in &eq.images {
        hit.insert(i);
    }
    let uncovered: Vec<usize> = (0..eq.codomain().len())
        .filter(|&y| !hit.contains(yc.embedding()[y]))
        .collect();
    let covers_codomain = uncovered.is_empty();
    let surjective = hit.is_full();
    let order_isomorphism = surjective.then(|| {
        let m = xc.len();
        m == yc.len()
            && (0..m).all(|i| (0..m).all(|j| xc.leq(i, j) == yc.leq(eq.images[i], eq.images[j])))
    });
    GlobalReport {
        image_size: hit.count(),
        codomain_cut_count: yc.len(),
        quotient_cut_count: xc.len(),
        covers_codomain,
        surjective,
        agree: covers_codomain == surjective,
        order_isomorphism,
        uncovered,
    }
}
