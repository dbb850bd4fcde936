//! Scenario documents: `{"kind": ..., "payload": ...}` with every rational
//! written as a `"p/q"` string. Unknown fields are rejected.

use std::fmt;
use std::sync::Arc;

use negdep::{
    format_rational, parse_rational, DiscreteDistribution, RandomVariable, RandomVector, Rational,
    Space,
};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

/// A rational that travels as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational written as a \"p/q\" string")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Q, E> {
                parse_rational(s).map(Q).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

impl From<Rational> for Q {
    fn from(r: Rational) -> Q {
        Q(r)
    }
}

pub fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Check,
    Construct,
    Frechet,
    Aggregate,
    Share,
    Auction,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let s = match self {
            Kind::Check => "check",
            Kind::Construct => "construct",
            Kind::Frechet => "frechet",
            Kind::Aggregate => "aggregate",
            Kind::Share => "share",
            Kind::Auction => "auction",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    content = "payload",
    rename_all = "snake_case",
    deny_unknown_fields
)]
pub enum Scenario {
    Check(CheckPayload),
    Construct(ConstructPayload),
    Frechet(FrechetPayload),
    Aggregate(AggregatePayload),
    Share(SharePayload),
    Auction(AuctionPayload),
}

impl Scenario {
    pub fn kind(&self) -> Kind {
        match self {
            Scenario::Check(_) => Kind::Check,
            Scenario::Construct(_) => Kind::Construct,
            Scenario::Frechet(_) => Kind::Frechet,
            Scenario::Aggregate(_) => Kind::Aggregate,
            Scenario::Share(_) => Kind::Share,
            Scenario::Auction(_) => Kind::Auction,
        }
    }
}

/// A random vector: atom probabilities and one value table per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDoc {
    pub space: Vec<Q>,
    pub components: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawDoc {
    pub support: Vec<Q>,
    pub mass: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckPayload {
    pub vector: VectorDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructPayload {
    /// `X_i = Z 1_{A_i} + m_i`, `assignment[atom]` naming the block of each atom.
    BuildPcm {
        space: Vec<Q>,
        z: Vec<Q>,
        assignment: Vec<usize>,
        shifts: Vec<Q>,
    },
    DecomposePcm {
        vector: VectorDoc,
    },
    Comonotonic {
        marginals: Vec<LawDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<Vec<Q>>,
    },
    CounterMonotonicPair {
        first: LawDoc,
        second: LawDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<Vec<Q>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrechetPayload {
    pub marginals: Vec<LawDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AggregatePayload {
    pub n: usize,
    pub epsilon: Q,
    pub alpha: Q,
    /// Also search every coupling of the Bernoulli marginals.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharePayload {
    pub space: Vec<Q>,
    pub total: Vec<Q>,
    pub levels: Vec<Q>,
    /// Allocation to assess; absent means "construct an optimal one".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allocation: Option<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuctionPayload {
    pub n: usize,
    pub alpha: Q,
    pub space: Vec<Q>,
    pub grid: Vec<Q>,
}

/// Reads a scenario, or the scenario embedded in a report.
pub fn parse(text: &str) -> Result<Scenario, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let doc = match value.get("scenario") {
        Some(inner) if value.get("version").is_some() => inner.clone(),
        _ => value,
    };
    serde_json::from_value(doc).map_err(|e| {
        let msg = e.to_string();
        if msg.contains("invalid rational") {
            CliError::Parse(msg)
        } else {
            CliError::Schema(msg)
        }
    })
}

fn unwrap(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn input<T>(r: negdep::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Schema(e.to_string()))
}

pub fn space(probs: &[Q]) -> Result<Arc<Space>, CliError> {
    input(Space::new(unwrap(probs)))
}

pub fn variable(space: &Arc<Space>, values: &[Q]) -> Result<RandomVariable, CliError> {
    input(RandomVariable::new(space, unwrap(values)))
}

pub fn vector_on(space: &Arc<Space>, tables: &[Vec<Q>]) -> Result<RandomVector, CliError> {
    input(RandomVector::from_values(
        space,
        tables.iter().map(|t| unwrap(t)).collect(),
    ))
}

pub fn vector(doc: &VectorDoc) -> Result<RandomVector, CliError> {
    vector_on(&space(&doc.space)?, &doc.components)
}

pub fn law(doc: &LawDoc) -> Result<DiscreteDistribution, CliError> {
    input(DiscreteDistribution::new(
        unwrap(&doc.support),
        unwrap(&doc.mass),
    ))
}

pub fn rationals(v: &[Q]) -> Vec<Rational> {
    unwrap(v)
}

pub fn vector_doc(v: &RandomVector) -> VectorDoc {
    VectorDoc {
        space: qs(v.space().probs()),
        components: v.components().iter().map(|x| qs(x.values())).collect(),
    }
}

pub fn law_doc(f: &DiscreteDistribution) -> LawDoc {
    LawDoc {
        support: qs(f.support()),
        mass: qs(f.mass()),
    }
}
