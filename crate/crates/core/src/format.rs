//! JSON file formats (schema version 1).
//!
//! Posets are written with their cover relation, so a written file always
//! reads back to the same poset. Element-keyed maps keep carrier order on
//! output.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::completion::{CompletedPoset, MacNeilleReport};
use crate::error::Result;
use crate::mapext::{PosetMap, Source};
use crate::poset::{Carrier, CarrierSet, Poset, RelationKind, Subset};
use crate::solver::{EquationInstance, SolveReport};

pub const SCHEMA_VERSION: u32 = 1;

/// A string-keyed JSON object that keeps insertion order and rejects
/// duplicate keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMap<V>(pub Vec<(String, V)>);

impl<V: Serialize> Serialize for OrderedMap<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for OrderedMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct OrderedVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for OrderedVisitor<V> {
            type Value = OrderedMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut entries: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if entries.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    entries.push((k, v));
                }
                Ok(OrderedMap(entries))
            }
        }

        deserializer.deserialize_map(OrderedVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKindJson {
    #[default]
    Covers,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub relation_kind: RelationKindJson,
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset> {
        let kind = match self.relation_kind {
            RelationKindJson::Covers => RelationKind::Covers,
            RelationKindJson::Full => RelationKind::Full,
        };
        Poset::build(self.elements.iter().cloned(), &self.relation, kind)
    }
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            relation: p
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
            relation_kind: RelationKindJson::Covers,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetJson {
    pub elements: Vec<String>,
}

impl SetJson {
    pub fn to_set(&self) -> Result<CarrierSet> {
        CarrierSet::new(self.elements.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SourceJson {
    Poset(PosetJson),
    Set(SetJson),
}

impl SourceJson {
    pub fn to_source(&self) -> Result<Source> {
        Ok(match self {
            SourceJson::Poset(p) => Source::Ordered(p.to_poset()?),
            SourceJson::Set(s) => Source::Unordered(s.to_set()?),
        })
    }
}

fn map_entries(map: &PosetMap) -> OrderedMap<String> {
    let src = map.source().carrier();
    OrderedMap(
        (0..src.len())
            .map(|x| (src.label(x).to_string(), map.target().label(map.image(x)).to_string()))
            .collect(),
    )
}

/// `{"source": <poset|set>, "target": <poset>, "map": {src: tgt}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub source: SourceJson,
    pub target: PosetJson,
    pub map: OrderedMap<String>,
}

impl MapJson {
    pub fn to_map(&self) -> Result<PosetMap> {
        PosetMap::from_labels(self.source.to_source()?, self.target.to_poset()?, self.map.0.iter().map(|(a, b)| (a, b)))
    }
}

impl From<&PosetMap> for MapJson {
    fn from(m: &PosetMap) -> Self {
        let source = match m.source() {
            Source::Ordered(p) => SourceJson::Poset(p.into()),
            Source::Unordered(s) => SourceJson::Set(SetJson {
                elements: s.labels().to_vec(),
            }),
        };
        MapJson {
            source,
            target: m.target().into(),
            map: map_entries(m),
        }
    }
}

/// `{"domain": {"elements": [...]}, "codomain": <poset>, "map": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub domain: SetJson,
    pub codomain: PosetJson,
    pub map: OrderedMap<String>,
}

impl EquationJson {
    pub fn to_map(&self) -> Result<PosetMap> {
        PosetMap::from_labels(
            Source::Unordered(self.domain.to_set()?),
            self.codomain.to_poset()?,
            self.map.0.iter().map(|(a, b)| (a, b)),
        )
    }
}

impl From<&PosetMap> for EquationJson {
    fn from(m: &PosetMap) -> Self {
        EquationJson {
            domain: SetJson {
                elements: m.source().carrier().labels().to_vec(),
            },
            codomain: m.target().into(),
            map: map_entries(m),
        }
    }
}

/// `{"cut": [names]}` or `{"principal": name}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetJson {
    Cut(Vec<String>),
    Principal(String),
}

impl TargetJson {
    pub fn to_subset(&self, codomain: &Poset) -> Result<Subset> {
        match self {
            TargetJson::Cut(names) => Subset::from_labels(codomain, names),
            TargetJson::Principal(name) => codomain.down_set(codomain.index_of(name)?),
        }
    }
}

pub fn subset_names<C: Carrier + ?Sized>(carrier: &C, subset: &Subset) -> Vec<String> {
    subset.labels(carrier).into_iter().map(str::to_string).collect()
}

/// `{"parent": <poset>, "cuts": [[names]...], "embedding": {element: cutIndex}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedPosetJson {
    pub parent: PosetJson,
    pub cuts: Vec<Vec<String>>,
    pub embedding: OrderedMap<usize>,
}

impl From<&CompletedPoset> for CompletedPosetJson {
    fn from(c: &CompletedPoset) -> Self {
        let p = c.parent();
        CompletedPosetJson {
            parent: p.into(),
            cuts: c.cuts().map(|k| subset_names(p, k.as_subset())).collect(),
            embedding: OrderedMap(
                (0..p.len())
                    .map(|x| (p.label(x).to_string(), c.embedding()[x]))
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub completeness: bool,
    pub completeness_exhaustive: bool,
    pub embedding_oie: bool,
    pub preserves_bounds: bool,
    pub density: bool,
    pub density_top_caveat: bool,
    pub failures: Vec<String>,
}

impl From<&MacNeilleReport> for VerificationJson {
    fn from(r: &MacNeilleReport) -> Self {
        VerificationJson {
            completeness: r.completeness,
            completeness_exhaustive: r.completeness_exhaustive,
            embedding_oie: r.embedding_oie,
            preserves_bounds: r.preserves_bounds,
            density: r.density,
            density_top_caveat: r.density_top_caveat,
            failures: r.failures.clone(),
        }
    }
}

/// Output of `ordcomp complete`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionReportJson {
    pub schema_version: u32,
    pub completion: CompletedPosetJson,
    pub cut_count: usize,
    pub has_minimum: bool,
    pub has_maximum: bool,
    pub empty_cut_present: bool,
    pub verification: VerificationJson,
}

impl CompletionReportJson {
    pub fn new(c: &CompletedPoset, verification: &MacNeilleReport) -> Self {
        CompletionReportJson {
            schema_version: SCHEMA_VERSION,
            completion: c.into(),
            cut_count: c.len(),
            has_minimum: c.parent().has_minimum(),
            has_maximum: c.parent().has_maximum(),
            empty_cut_present: c.contains_empty_cut(),
            verification: verification.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptyFamilyJson {
    pub lower: bool,
    pub upper: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionJson {
    pub quotient_has_minimum: bool,
    pub quotient_has_maximum: bool,
    pub codomain_has_minimum: bool,
    pub codomain_has_maximum: bool,
    pub empty_cut_in_quotient_completion: bool,
    pub empty_cut_in_codomain_completion: bool,
    pub standing_assumption_holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveChecksJson {
    pub extremes_agree: bool,
    pub solution_verified: bool,
    pub inclusion_chain_holds: bool,
    pub sandwich_holds: bool,
}

/// A quotient cut written as its classes, each class as its domain elements.
pub type QuotientCutJson = Vec<Vec<String>>;

/// Output of `ordcomp solve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReportJson {
    pub schema_version: u32,
    pub target: Vec<String>,
    pub solvable: bool,
    pub solution: Option<QuotientCutJson>,
    /// Domain elements of the solution's classes.
    pub solution_elements: Option<Vec<String>>,
    pub lower_family: Vec<QuotientCutJson>,
    pub upper_family: Vec<QuotientCutJson>,
    pub sup_of_images: Vec<String>,
    pub inf_of_images: Vec<String>,
    pub empty_family_flags: EmptyFamilyJson,
    pub assumption_flags: AssumptionJson,
    pub checks: SolveChecksJson,
}

impl SolveReportJson {
    pub fn new(eq: &EquationInstance, r: &SolveReport) -> Self {
        let yc = eq.codomain_completion();
        let xc = eq.quotient_completion();
        let y = eq.codomain();
        let domain = eq.domain();
        let classes = eq.quotient().classes();
        let ycut = |i: usize| subset_names(y, yc.cut(i).as_subset());
        let xcut = |i: usize| -> QuotientCutJson {
            xc.cut_bits(i)
                .iter()
                .map(|k| classes[k].iter().map(|&x| domain.label(x).to_string()).collect())
                .collect()
        };
        let a = &r.assumptions;
        SolveReportJson {
            schema_version: SCHEMA_VERSION,
            target: ycut(r.target),
            solvable: r.solvable,
            solution: r.solution.map(xcut),
            solution_elements: r.solution.map(|s| {
                let mut xs: Vec<usize> = xc.cut_bits(s).iter().flat_map(|k| classes[k].iter().copied()).collect();
                xs.sort_unstable();
                xs.into_iter().map(|x| domain.label(x).to_string()).collect()
            }),
            lower_family: r.lower_family.iter().map(|&i| xcut(i)).collect(),
            upper_family: r.upper_family.iter().map(|&i| xcut(i)).collect(),
            sup_of_images: ycut(r.sup_of_images),
            inf_of_images: ycut(r.inf_of_images),
            empty_family_flags: EmptyFamilyJson {
                lower: r.empty_family.lower,
                upper: r.empty_family.upper,
            },
            assumption_flags: AssumptionJson {
                quotient_has_minimum: a.quotient_has_minimum,
                quotient_has_maximum: a.quotient_has_maximum,
                codomain_has_minimum: a.codomain_has_minimum,
                codomain_has_maximum: a.codomain_has_maximum,
                empty_cut_in_quotient_completion: a.empty_cut_in_quotient_completion,
                empty_cut_in_codomain_completion: a.empty_cut_in_codomain_completion,
                standing_assumption_holds: a.standing_assumption_holds(),
            },
            checks: SolveChecksJson {
                extremes_agree: r.extremes_agree,
                solution_verified: r.solution_verified,
                inclusion_chain_holds: r.inclusion_chain_holds,
                sandwich_holds: r.sandwich_holds,
            },
        }
    }
}

/// Parses JSON text, mapping syntax errors to a message.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::macneille_completion;
    use crate::generators;
    use crate::Limits;
    use proptest::prelude::*;

    #[test]
    fn poset_json_shape() {
        let p = generators::chain(3).unwrap();
        let text = serde_json::to_string(&PosetJson::from(&p)).unwrap();
        assert_eq!(
            text,
            r#"{"elements":["x0","x1","x2"],"relation":[["x0","x1"],["x1","x2"]],"relation_kind":"covers"}"#
        );
    }

    #[test]
    fn relation_kind_defaults_to_covers() {
        let j: PosetJson = parse(r#"{"elements":["a","b"],"relation":[["a","b"]]}"#).unwrap();
        assert_eq!(j.relation_kind, RelationKindJson::Covers);
        let full: PosetJson =
            parse(r#"{"elements":["a","b"],"relation":[["a","a"],["b","b"],["a","b"]],"relation_kind":"full"}"#).unwrap();
        assert_eq!(full.to_poset().unwrap(), j.to_poset().unwrap());
    }

    #[test]
    fn source_distinguishes_sets_from_posets() {
        let s: SourceJson = parse(r#"{"elements":["a"]}"#).unwrap();
        assert!(matches!(s, SourceJson::Set(_)));
        let p: SourceJson = parse(r#"{"elements":["a"],"relation":[]}"#).unwrap();
        assert!(matches!(p, SourceJson::Poset(_)));
    }

    #[test]
    fn duplicate_map_keys_are_rejected() {
        let err = parse::<OrderedMap<String>>(r#"{"a":"p","a":"q"}"#).unwrap_err();
        assert!(err.contains("duplicate key"));
    }

    #[test]
    fn target_forms() {
        let p = generators::chain(3).unwrap();
        let t: TargetJson = parse(r#"{"principal":"x1"}"#).unwrap();
        assert_eq!(t.to_subset(&p).unwrap().indices(), vec![0, 1]);
        let t: TargetJson = parse(r#"{"cut":["x0"]}"#).unwrap();
        assert_eq!(t.to_subset(&p).unwrap().indices(), vec![0]);
        let t: TargetJson = parse(r#"{"principal":"nope"}"#).unwrap();
        assert!(t.to_subset(&p).is_err());
    }

    #[test]
    fn completion_json_shape() {
        let p = generators::antichain(2).unwrap();
        let c = macneille_completion(&p, &Limits::default()).unwrap();
        let j = CompletedPosetJson::from(&c);
        assert_eq!(j.cuts, vec![vec![], vec!["x0".to_string()], vec!["x1".to_string()], vec!["x0".to_string(), "x1".to_string()]]);
        let text = serde_json::to_string(&j.embedding).unwrap();
        assert_eq!(text, r#"{"x0":1,"x1":2}"#);
    }

    #[test]
    fn equation_json_roundtrip() {
        let m = generators::random_equation(4, 4, 50, 3).unwrap();
        let j = EquationJson::from(&m);
        let back: EquationJson = parse(&serde_json::to_string(&j).unwrap()).unwrap();
        let m2 = back.to_map().unwrap();
        assert_eq!(m2.assignment(), m.assignment());
        assert_eq!(m2.target(), m.target());
    }

    proptest! {
        #[test]
        fn poset_json_roundtrips(n in 1usize..9, density in 0u32..=100, seed in any::<u64>()) {
            let p = generators::random(n, density, seed).unwrap();
            let text = serde_json::to_string(&PosetJson::from(&p)).unwrap();
            let back = parse::<PosetJson>(&text).unwrap().to_poset().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn map_json_roundtrips(seed in any::<u64>()) {
            let p = generators::random(4, 40, seed).unwrap();
            let q = generators::random(3, 40, seed ^ 1).unwrap();
            let assignment: Vec<usize> = (0..4).map(|i| (seed as usize >> i) % 3).collect();
            let m = PosetMap::new(Source::Ordered(p), q, assignment).unwrap();
            let text = serde_json::to_string(&MapJson::from(&m)).unwrap();
            let back = parse::<MapJson>(&text).unwrap().to_map().unwrap();
            prop_assert_eq!(back.assignment(), m.assignment());
        }
    }
}
