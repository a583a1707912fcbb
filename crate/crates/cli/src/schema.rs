//! JSON documents read and written by the command-line tool.
//!
//! Every rational is a string, `"p/q"` or `"n"`. Nothing is ever read from a
//! JSON number, so no value passes through floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use pairtile_core::{
    CoverageReport, EdgePair, Evidence, Lattice, PairJustification, PolygonalRegion, QuasiPeriodicSet, Rational2, Rule,
    TilingVerdict, TranslatedLattice, Witness, Q,
};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::failure::Failure;

/// Parses `"p/q"`, `"-p/q"` or `"n"`; no whitespace, signs on the
/// denominator, decimals or exponents.
pub fn parse_rational(s: &str) -> Option<Q> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return None;
    }
    let n = BigInt::from_str(num).ok()?;
    let d = match den {
        Some(d) if digits(d) => BigInt::from_str(d).ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// An exact rational carried as a JSON string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(r#"a rational string such as "3", "-1/2""#)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_str(V)
    }
}

/// `[x, y]`.
pub type Pt = [Rat; 2];

pub fn pt(p: &Rational2) -> Pt {
    [Rat(p.x.clone()), Rat(p.y.clone())]
}

pub fn point(p: &Pt) -> Rational2 {
    Rational2::new(p[0].0.clone(), p[1].0.clone())
}

/// An integer written as a JSON number when it fits in 64 bits, otherwise as
/// a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(&self.0),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                match parse_rational(v) {
                    Some(q) if q.is_integer() && !v.contains('/') => Ok(Int(q.to_integer())),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub polygons: Vec<Vec<Pt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    /// Generator columns.
    pub basis: [Pt; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Pt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDoc {
    pub basis: [Pt; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Pt>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub parts: Vec<PartDoc>,
}

/// A parsed region together with the vertex lists as written, so that errors
/// found later can point back at input positions.
#[derive(Clone, Debug)]
pub struct RegionInput {
    pub region: PolygonalRegion,
    pub raw: Vec<Vec<Rational2>>,
}

impl RegionDoc {
    pub fn of(region: &PolygonalRegion) -> Self {
        RegionDoc { polygons: region.components().iter().map(|c| c.vertices().iter().map(pt).collect()).collect() }
    }

    pub fn build(&self) -> Result<RegionInput, Failure> {
        let raw: Vec<Vec<Rational2>> = self.polygons.iter().map(|c| c.iter().map(point).collect()).collect();
        let region = PolygonalRegion::from_vertex_lists(raw.clone()).map_err(|e| Failure::invariant(&e, "", None))?;
        Ok(RegionInput { region, raw })
    }
}

fn lattice_from(basis: &[Pt; 2], prefix: &str) -> Result<Lattice, Failure> {
    Lattice::new(point(&basis[0]), point(&basis[1])).map_err(|e| Failure::invariant(&e, prefix, None))
}

impl LatticeDoc {
    pub fn of(lattice: &Lattice, offset: Option<&Rational2>) -> Self {
        let [g1, g2] = lattice.basis();
        LatticeDoc { basis: [pt(g1), pt(g2)], offset: offset.map(pt) }
    }

    pub fn build(&self) -> Result<TranslatedLattice, Failure> {
        let l = lattice_from(&self.basis, "")?;
        let o = self.offset.as_ref().map(point).unwrap_or_else(Rational2::zero);
        Ok(TranslatedLattice::new(l, &o))
    }
}

impl SetDoc {
    pub fn of(set: &QuasiPeriodicSet) -> Self {
        SetDoc {
            parts: set
                .parts()
                .iter()
                .map(|(t, m)| {
                    let [g1, g2] = t.lattice().basis();
                    PartDoc { basis: [pt(g1), pt(g2)], offset: Some(pt(t.offset())), multiplicity: *m }
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<QuasiPeriodicSet, Failure> {
        if self.parts.is_empty() {
            return Err(Failure::new(
                "InvariantViolation",
                "a quasi-periodic set needs at least one part",
                Some("parts".into()),
            ));
        }
        let mut parts = Vec::with_capacity(self.parts.len());
        for (i, p) in self.parts.iter().enumerate() {
            let l = lattice_from(&p.basis, &format!("parts[{i}]."))?;
            if p.multiplicity == 0 {
                return Err(Failure::new(
                    "InvariantViolation",
                    "multiplicity must be at least 1",
                    Some(format!("parts[{i}].multiplicity")),
                ));
            }
            let o = p.offset.as_ref().map(point).unwrap_or_else(Rational2::zero);
            parts.push((TranslatedLattice::new(l, &o), p.multiplicity));
        }
        QuasiPeriodicSet::new(parts).map_err(|e| Failure::invariant(&e, "", None))
    }
}

/// Contents of a lattice file: a (translated) lattice or a multiset of them.
#[derive(Clone, Debug)]
pub enum Translations {
    Lattice(Box<TranslatedLattice>),
    Set(QuasiPeriodicSet),
}

impl Translations {
    pub fn into_set(self) -> QuasiPeriodicSet {
        match self {
            Translations::Lattice(t) => QuasiPeriodicSet::new(vec![(*t, 1)]).expect("one part of multiplicity 1"),
            Translations::Set(s) => s,
        }
    }

    /// A single translated lattice of multiplicity 1, if that is what this is.
    pub fn single(&self) -> Option<TranslatedLattice> {
        match self {
            Translations::Lattice(t) => Some((**t).clone()),
            Translations::Set(s) => match s.parts() {
                [(t, 1)] => Some(t.clone()),
                _ => None,
            },
        }
    }
}

fn parse_doc<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Failure::parse(&inner, if path == "." { None } else { Some(path) })
    })?;
    de.end().map_err(|e| Failure::parse(&e, None))?;
    Ok(doc)
}

pub fn parse_region(text: &str) -> Result<RegionInput, Failure> {
    parse_doc::<RegionDoc>(text)?.build()
}

pub fn parse_translations(text: &str) -> Result<Translations, Failure> {
    let peek: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::parse(&e, None))?;
    if peek.get("parts").is_some() {
        Ok(Translations::Set(parse_doc::<SetDoc>(text)?.build()?))
    } else {
        Ok(Translations::Lattice(Box::new(parse_doc::<LatticeDoc>(text)?.build()?)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub e: Pt,
    pub tau: Pt,
    pub midpoints: [Pt; 2],
}

impl PairDoc {
    pub fn of(p: &EdgePair) -> Self {
        PairDoc { e: pt(&p.e), tau: pt(&p.tau), midpoints: [pt(&p.midpoints[0]), pt(&p.midpoints[1])] }
    }

    pub fn build(&self) -> EdgePair {
        let e = point(&self.e);
        EdgePair {
            length_sq: e.norm_sq(),
            e,
            tau: point(&self.tau),
            midpoints: [point(&self.midpoints[0]), point(&self.midpoints[1])],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleDoc {
    TauInLattice,
    EdgeRule { theta: Rat },
    HalfLatticeMidpoints,
    EdgeInLatticeWithHalfPoints { thetas: [Rat; 2] },
    Fails,
}

impl RuleDoc {
    pub fn of(r: &Rule) -> Self {
        match r {
            Rule::TauInLattice => RuleDoc::TauInLattice,
            Rule::EdgeRule { theta } => RuleDoc::EdgeRule { theta: Rat(theta.clone()) },
            Rule::HalfLatticeMidpoints => RuleDoc::HalfLatticeMidpoints,
            Rule::EdgeInLatticeWithHalfPoints { thetas } => {
                RuleDoc::EdgeInLatticeWithHalfPoints { thetas: [Rat(thetas[0].clone()), Rat(thetas[1].clone())] }
            }
            Rule::Fails => RuleDoc::Fails,
        }
    }

    pub fn build(&self) -> Rule {
        match self {
            RuleDoc::TauInLattice => Rule::TauInLattice,
            RuleDoc::EdgeRule { theta } => Rule::EdgeRule { theta: theta.0.clone() },
            RuleDoc::HalfLatticeMidpoints => Rule::HalfLatticeMidpoints,
            RuleDoc::EdgeInLatticeWithHalfPoints { thetas } => {
                Rule::EdgeInLatticeWithHalfPoints { thetas: [thetas[0].0.clone(), thetas[1].0.clone()] }
            }
            RuleDoc::Fails => Rule::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JustificationDoc {
    pub pair: PairDoc,
    pub rule: RuleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub tiles: bool,
    pub weight: Option<Int>,
    /// Index of the first failing pair.
    pub witness_pair: Option<usize>,
    pub justifications: Vec<JustificationDoc>,
    /// Translation applied to centre the region (edge-wise test only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Pt>,
    /// Independent coverage count, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<ReportDoc>,
}

impl VerdictDoc {
    pub fn of(v: &TilingVerdict) -> Self {
        VerdictDoc {
            tiles: v.tiles,
            weight: v.weight.clone().map(Int),
            witness_pair: v.failure_witness,
            justifications: v
                .justifications
                .iter()
                .map(|j| JustificationDoc { pair: PairDoc::of(&j.pair), rule: RuleDoc::of(&j.rule) })
                .collect(),
            center: None,
            oracle: None,
        }
    }

    pub fn build(&self) -> TilingVerdict {
        TilingVerdict {
            tiles: self.tiles,
            weight: self.weight.clone().map(|w| w.0),
            justifications: self
                .justifications
                .iter()
                .map(|j| PairJustification { pair: j.pair.build(), rule: j.rule.build() })
                .collect(),
            failure_witness: self.witness_pair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub point: Pt,
    pub count: u64,
    pub count_low: u64,
    pub count_high: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum EvidenceDoc {
    Exact { cells: usize },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub constant: bool,
    pub weight: Option<u64>,
    pub witness: Option<WitnessDoc>,
    pub evidence: EvidenceDoc,
}

impl ReportDoc {
    pub fn of(r: &CoverageReport) -> Self {
        ReportDoc {
            constant: r.constant,
            weight: r.weight,
            witness: r.witness.as_ref().map(|w| WitnessDoc {
                point: pt(&w.point),
                count: w.count,
                count_low: w.count_low,
                count_high: w.count_high,
            }),
            evidence: match r.evidence {
                Evidence::Exact { cells } => EvidenceDoc::Exact { cells },
                Evidence::Sampled { samples, seed } => EvidenceDoc::Sampled { samples, seed },
            },
        }
    }

    pub fn build(&self) -> CoverageReport {
        CoverageReport {
            constant: self.constant,
            weight: self.weight,
            witness: self.witness.as_ref().map(|w| Witness {
                point: point(&w.point),
                count: w.count,
                count_low: w.count_low,
                count_high: w.count_high,
            }),
            evidence: match self.evidence {
                EvidenceDoc::Exact { cells } => Evidence::Exact { cells },
                EvidenceDoc::Sampled { samples, seed } => Evidence::Sampled { samples, seed },
            },
        }
    }
}

pub fn parse_verdict(text: &str) -> Result<TilingVerdict, Failure> {
    Ok(parse_doc::<VerdictDoc>(text)?.build())
}

pub fn parse_report(text: &str) -> Result<CoverageReport, Failure> {
    Ok(parse_doc::<ReportDoc>(text)?.build())
}

/// Compact JSON; field order follows the document structs.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}
