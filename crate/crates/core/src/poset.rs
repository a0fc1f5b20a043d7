//! Finite posets, unordered carriers, subsets, and the upper/lower bound
//! operators.
//!
//! Every subset remembers the [`CarrierId`] of the carrier it was drawn from,
//! and binary operations refuse to mix subsets of different carriers. A
//! carrier's id is a fingerprint of its labels and relation, so two
//! independently built but identical posets are interchangeable.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::bitset::BitSet;
use crate::error::{Axiom, Error, Result};

/// Content fingerprint of a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CarrierId(u64);

/// Anything whose elements can be addressed by index and label.
pub trait Carrier {
    fn id(&self) -> CarrierId;
    fn labels(&self) -> &[String];
    fn index_of(&self, label: &str) -> Result<usize>;

    fn len(&self) -> usize {
        self.labels().len()
    }

    fn is_empty(&self) -> bool {
        self.labels().is_empty()
    }

    fn label(&self, i: usize) -> &str {
        &self.labels()[i]
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownElement(label.to_string()))
}

/// A plain set of distinct labels with no order relation.
#[derive(Debug, Clone)]
pub struct CarrierSet {
    id: CarrierId,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl CarrierSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = index_labels(&labels)?;
        let mut h = DefaultHasher::new();
        0u8.hash(&mut h);
        labels.hash(&mut h);
        Ok(CarrierSet {
            id: CarrierId(h.finish()),
            labels,
            index,
        })
    }
}

impl Carrier for CarrierSet {
    fn id(&self) -> CarrierId {
        self.id
    }
    fn labels(&self) -> &[String] {
        &self.labels
    }
    fn index_of(&self, label: &str) -> Result<usize> {
        lookup(&self.index, label)
    }
}

/// How the pairs handed to [`Poset::build`] are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// Generating pairs; the reflexive-transitive closure is taken.
    Covers,
    /// The complete relation, checked against the poset axioms as given.
    Full,
}

/// A finite partially ordered set.
///
/// The relation is stored twice, as principal down-sets `<a]` and principal
/// up-sets `[a>`, so both bound operators are a fold of word-wise
/// intersections.
#[derive(Debug, Clone)]
pub struct Poset {
    id: CarrierId,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.down == other.down
    }
}

impl Eq for Poset {}

impl Poset {
    pub fn build<S: AsRef<str>>(
        labels: impl IntoIterator<Item = impl Into<String>>,
        pairs: &[(S, S)],
        kind: RelationKind,
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((lookup(&index, a.as_ref())?, lookup(&index, b.as_ref())?));
        }
        match kind {
            RelationKind::Covers => {
                // up[i] grows into the set of everything reachable from i.
                let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
                for &(a, b) in &edges {
                    up[a].insert(b);
                }
                for k in 0..n {
                    let via = up[k].clone();
                    for row in up.iter_mut() {
                        if row.contains(k) {
                            row.union_with(&via);
                        }
                    }
                }
                for i in 0..n {
                    for j in up[i].iter() {
                        if j != i && up[j].contains(i) {
                            return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                        }
                    }
                }
                Ok(Self::from_up_sets(labels, index, up))
            }
            RelationKind::Full => {
                let mut up: Vec<BitSet> = (0..n).map(|_| BitSet::empty(n)).collect();
                for &(a, b) in &edges {
                    up[a].insert(b);
                }
                validate(&labels, &up)?;
                Ok(Self::from_up_sets(labels, index, up))
            }
        }
    }

    /// Builds a poset from a relation predicate `leq(i, j)`, validating all
    /// three axioms.
    pub fn from_fn(
        labels: impl IntoIterator<Item = impl Into<String>>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let up: Vec<BitSet> = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| leq(i, j))))
            .collect();
        validate(&labels, &up)?;
        Ok(Self::from_up_sets(labels, index, up))
    }

    /// Caller guarantees `down` describes a partial order and labels are
    /// distinct.
    pub(crate) fn from_down_sets_unchecked(labels: Vec<String>, down: Vec<BitSet>) -> Poset {
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n).map(|_| BitSet::empty(n)).collect();
        for (j, row) in down.iter().enumerate() {
            for i in row.iter() {
                up[i].insert(j);
            }
        }
        let index = index_labels(&labels).expect("labels must be distinct");
        Self::assemble(labels, index, down, up)
    }

    fn from_up_sets(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<BitSet>) -> Poset {
        let n = labels.len();
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::empty(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Self::assemble(labels, index, down, up)
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        down: Vec<BitSet>,
        up: Vec<BitSet>,
    ) -> Poset {
        let mut h = DefaultHasher::new();
        1u8.hash(&mut h);
        labels.hash(&mut h);
        down.hash(&mut h);
        Poset {
            id: CarrierId(h.finish()),
            labels,
            index,
            down,
            up,
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Bits of `<a]`.
    pub fn down(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    /// Bits of `[a>`.
    pub fn up(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{a}")))
        }
    }

    /// `<a] = {x | x <= a}`.
    pub fn down_set(&self, a: usize) -> Result<Subset> {
        self.check_element(a)?;
        Ok(Subset::from_bits_unchecked(self.id, self.down[a].clone()))
    }

    /// `[a> = {x | x >= a}`.
    pub fn up_set(&self, a: usize) -> Result<Subset> {
        self.check_element(a)?;
        Ok(Subset::from_bits_unchecked(self.id, self.up[a].clone()))
    }

    /// Intersection of `[a>` over `a` in `bits`; the full carrier when `bits`
    /// is empty.
    pub fn upper_bounds_bits(&self, bits: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.len());
        for a in bits.iter() {
            out.intersect_with(&self.up[a]);
        }
        out
    }

    pub fn lower_bounds_bits(&self, bits: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.len());
        for a in bits.iter() {
            out.intersect_with(&self.down[a]);
        }
        out
    }

    /// `A^u`.
    pub fn upper_bounds(&self, subset: &Subset) -> Result<Subset> {
        subset.ensure_parent(self)?;
        Ok(Subset::from_bits_unchecked(self.id, self.upper_bounds_bits(subset.bits())))
    }

    /// `A^l`.
    pub fn lower_bounds(&self, subset: &Subset) -> Result<Subset> {
        subset.ensure_parent(self)?;
        Ok(Subset::from_bits_unchecked(self.id, self.lower_bounds_bits(subset.bits())))
    }

    /// `A^ul`, the cut generated by `bits`.
    pub fn closure_bits(&self, bits: &BitSet) -> BitSet {
        self.lower_bounds_bits(&self.upper_bounds_bits(bits))
    }

    pub fn minimals(&self) -> Subset {
        let bits = BitSet::from_indices(self.len(), (0..self.len()).filter(|&i| self.down[i].count() == 1));
        Subset::from_bits_unchecked(self.id, bits)
    }

    pub fn maximals(&self) -> Subset {
        let bits = BitSet::from_indices(self.len(), (0..self.len()).filter(|&i| self.up[i].count() == 1));
        Subset::from_bits_unchecked(self.id, bits)
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].is_full())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].is_full())
    }

    pub fn has_minimum(&self) -> bool {
        self.minimum().is_some()
    }

    pub fn has_maximum(&self) -> bool {
        self.maximum().is_some()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut pairs = Vec::new();
        for b in 0..n {
            let mut strict = self.down[b].clone();
            strict.remove(b);
            let mut covers = strict.clone();
            for k in strict.iter() {
                let mut below_k = self.down[k].clone();
                below_k.remove(k);
                covers.difference_with(&below_k);
            }
            pairs.extend(covers.iter().map(|a| (a, b)));
        }
        pairs.sort_unstable();
        pairs
    }

    /// Every related pair `(a, b)` with `a <= b`, including the diagonal.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// Induced subposet on `keep`, relabelled in ascending index order.
    pub fn restrict(&self, keep: &BitSet) -> Poset {
        let idx: Vec<usize> = keep.iter().collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let m = idx.len();
        let down = idx
            .iter()
            .map(|&j| BitSet::from_indices(m, (0..m).filter(|&i| self.leq(idx[i], j))))
            .collect();
        Poset::from_down_sets_unchecked(labels, down)
    }
}

impl Carrier for Poset {
    fn id(&self) -> CarrierId {
        self.id
    }
    fn labels(&self) -> &[String] {
        &self.labels
    }
    fn index_of(&self, label: &str) -> Result<usize> {
        lookup(&self.index, label)
    }
}

fn validate(labels: &[String], up: &[BitSet]) -> Result<()> {
    let n = labels.len();
    let pair = |i: usize, j: usize| format!("({}, {})", labels[i], labels[j]);
    for i in 0..n {
        if !up[i].contains(i) {
            return Err(Error::NotAPartialOrder {
                axiom: Axiom::Reflexivity,
                witness: pair(i, i),
            });
        }
    }
    for i in 0..n {
        for j in up[i].iter() {
            if j != i && up[j].contains(i) {
                return Err(Error::NotAPartialOrder {
                    axiom: Axiom::Antisymmetry,
                    witness: pair(i, j),
                });
            }
        }
    }
    for i in 0..n {
        for j in up[i].iter() {
            if !up[j].is_subset(&up[i]) {
                let k = up[j].iter().find(|&k| !up[i].contains(k)).expect("witness");
                return Err(Error::NotAPartialOrder {
                    axiom: Axiom::Transitivity,
                    witness: format!("{} <= {} <= {}", labels[i], labels[j], labels[k]),
                });
            }
        }
    }
    Ok(())
}

/// A subset of a specific carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    parent: CarrierId,
    bits: BitSet,
}

impl Subset {
    pub(crate) fn from_bits_unchecked(parent: CarrierId, bits: BitSet) -> Subset {
        Subset { parent, bits }
    }

    pub fn from_bits<C: Carrier + ?Sized>(carrier: &C, bits: BitSet) -> Result<Subset> {
        if bits.universe() != carrier.len() {
            return Err(Error::ParentMismatch);
        }
        Ok(Subset::from_bits_unchecked(carrier.id(), bits))
    }

    pub fn new<C: Carrier + ?Sized>(carrier: &C, indices: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let n = carrier.len();
        let mut bits = BitSet::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::UnknownElement(format!("#{i}")));
            }
            bits.insert(i);
        }
        Ok(Subset::from_bits_unchecked(carrier.id(), bits))
    }

    pub fn from_labels<C: Carrier + ?Sized, S: AsRef<str>>(
        carrier: &C,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Subset> {
        let mut bits = BitSet::empty(carrier.len());
        for l in labels {
            bits.insert(carrier.index_of(l.as_ref())?);
        }
        Ok(Subset::from_bits_unchecked(carrier.id(), bits))
    }

    pub fn empty<C: Carrier + ?Sized>(carrier: &C) -> Subset {
        Subset::from_bits_unchecked(carrier.id(), BitSet::empty(carrier.len()))
    }

    pub fn full<C: Carrier + ?Sized>(carrier: &C) -> Subset {
        Subset::from_bits_unchecked(carrier.id(), BitSet::full(carrier.len()))
    }

    pub fn parent(&self) -> CarrierId {
        self.parent
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    pub fn ensure_parent<C: Carrier + ?Sized>(&self, carrier: &C) -> Result<()> {
        if self.parent == carrier.id() && self.bits.universe() == carrier.len() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    fn same_parent(&self, other: &Subset) -> Result<()> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }

    /// Member labels in index order.
    pub fn labels<'a, C: Carrier + ?Sized>(&self, carrier: &'a C) -> Vec<&'a str> {
        self.bits.iter().map(|i| carrier.label(i)).collect()
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.same_parent(other)?;
        Ok(Subset::from_bits_unchecked(self.parent, self.bits.union(&other.bits)))
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.same_parent(other)?;
        Ok(Subset::from_bits_unchecked(self.parent, self.bits.intersection(&other.bits)))
    }
}

/// Renders a subset as `{a,b,c}` for diagnostics.
pub fn show<C: Carrier + ?Sized>(carrier: &C, bits: &BitSet) -> String {
    let names: Vec<&str> = bits.iter().map(|i| carrier.label(i)).collect();
    format!("{{{}}}", names.join(","))
}
