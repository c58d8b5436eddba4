//! Finite topological spaces viewed as union-closed families of open sets.
//!
//! Finite spaces satisfy the descending chain condition on opens and are
//! Alexandroff, so every point has a least open neighborhood. The abundant
//! point is found by passing to the T0 quotient, taking an optimal class
//! `[x]` there (its least neighborhood is then the open singleton `{[x]}`),
//! and pulling the singleton-cover map `A -> A ∪ {[x]}` back to the original
//! space.
//!
//! Infinite spaces (for instance the up-ray topology on the naturals, where
//! no point is abundant) cannot be represented here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, SetFamily};
use crate::quotient::separating_quotient;
use crate::witness::{InjectionWitness, Method};

/// First reason a collection of sets fails to be a topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyViolation {
    NoPoints,
    EmptySetMissing,
    WholeSpaceMissing,
    UnknownPoint(String),
    UnionEscapes(Vec<String>, Vec<String>),
    IntersectionEscapes(Vec<String>, Vec<String>),
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[String]| format!("{{{}}}", s.join(","));
        match self {
            TopologyViolation::NoPoints => write!(f, "the point set is empty"),
            TopologyViolation::EmptySetMissing => write!(f, "the empty set is not open"),
            TopologyViolation::WholeSpaceMissing => write!(f, "the whole space is not open"),
            TopologyViolation::UnknownPoint(p) => write!(f, "{p:?} is not a declared point"),
            TopologyViolation::UnionEscapes(a, b) => {
                write!(f, "{} ∪ {} is not open", set(a), set(b))
            }
            TopologyViolation::IntersectionEscapes(a, b) => {
                write!(f, "{} ∩ {} is not open", set(a), set(b))
            }
        }
    }
}

/// A finite space `(X, τ)`. The opens form a family whose universe is `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopSpace {
    opens: SetFamily,
}

impl TopSpace {
    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn points(&self) -> &[String] {
        self.opens.labels()
    }

    pub fn point(&self, label: &str) -> Result<ElementId> {
        self.opens.require_element(label)
    }
}

/// Validate `sets` as the opens of a topology on `points`.
pub fn validate_topology<P, I, S, L>(points: P, sets: I) -> Result<TopSpace>
where
    P: IntoIterator,
    P::Item: AsRef<str>,
    I: IntoIterator<Item = S>,
    S: IntoIterator<Item = L>,
    L: AsRef<str>,
{
    let points: Vec<String> = points.into_iter().map(|p| p.as_ref().to_string()).collect();
    if points.is_empty() {
        return Err(Error::Topology(TopologyViolation::NoPoints));
    }
    let sets: Vec<Vec<String>> = sets
        .into_iter()
        .map(|s| s.into_iter().map(|l| l.as_ref().to_string()).collect())
        .collect();
    if let Some(p) = sets.iter().flatten().find(|l| !points.contains(l)) {
        return Err(Error::Topology(TopologyViolation::UnknownPoint(p.clone())));
    }
    let opens = SetFamily::from_sets(&sets);
    if !opens.contains_member(&ESet::empty()) {
        return Err(Error::Topology(TopologyViolation::EmptySetMissing));
    }
    let whole_declared = points.iter().all(|p| opens.element(p).is_some());
    if !whole_declared || !opens.contains_member(&opens.universe()) {
        return Err(Error::Topology(TopologyViolation::WholeSpaceMissing));
    }
    let m = opens.members();
    for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            if !opens.contains_member(&a.union(b)) {
                return Err(Error::Topology(TopologyViolation::UnionEscapes(
                    opens.labels_of(a),
                    opens.labels_of(b),
                )));
            }
            if !opens.contains_member(&a.intersection(b)) {
                return Err(Error::Topology(TopologyViolation::IntersectionEscapes(
                    opens.labels_of(a),
                    opens.labels_of(b),
                )));
            }
        }
    }
    Ok(TopSpace { opens })
}

/// Least open set containing `a`: the intersection of all opens containing it.
pub fn minimal_neighborhood(space: &TopSpace, a: ElementId) -> Result<ESet> {
    let opens = &space.opens;
    let nbhd = opens
        .members_with(a)
        .map(|i| opens.member(i).clone())
        .reduce(|x, y| x.intersection(&y))
        .ok_or_else(|| Error::Internal(format!("{} lies in no open set", opens.label(a))))?;
    if !opens.contains_member(&nbhd) {
        return Err(Error::Internal(format!(
            "least neighborhood {} of {} is not open",
            opens.show(&nbhd),
            opens.label(a)
        )));
    }
    Ok(nbhd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbundantPoint {
    pub point: ElementId,
    /// Points identified with `point` in the T0 quotient.
    pub class: Vec<ElementId>,
    /// Injection `τ_p^c -> τ_p`, valid in the original space.
    pub witness: InjectionWitness,
}

/// An abundant point of `τ` and an injection witnessing it.
pub fn abundant_point(space: &TopSpace) -> Result<AbundantPoint> {
    let opens = &space.opens;
    let q = separating_quotient(opens)?;
    let s = &q.quotient;
    let nbhd = s.neighborhoods();
    let chosen = s
        .elements()
        .filter(|&c| nbhd.is_optimal(c))
        .find(|&c| s.contains_member(&ESet::singleton(c.0)))
        .ok_or_else(|| {
            Error::Internal("no optimal point of the T0 quotient has an open singleton".into())
        })?;
    let ix = crate::abundance::intersection_ix(s, chosen);
    if ix != ESet::singleton(chosen.0) {
        return Err(Error::Internal(format!(
            "I_x of optimal class [{}] is {}",
            s.label(chosen),
            s.show(&ix)
        )));
    }

    let point = opens.require_element(s.label(chosen))?;
    let class = q
        .classes
        .iter()
        .find(|c| c[0] == point)
        .cloned()
        .ok_or_else(|| Error::Internal("chosen class has no representative".into()))?;
    let sx = ESet::singleton(chosen.0);
    let pairs = s
        .members_without(chosen)
        .map(|j| {
            let image = s.member(j).union(&sx);
            let k = s.position(&image).ok_or_else(|| {
                Error::Internal(format!("{} is not open in the T0 quotient", s.show(&image)))
            })?;
            Ok((q.preimage(opens, j), q.preimage(opens, k)))
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = InjectionWitness::new(point, Method::Cover, pairs).checked(opens)?;
    Ok(AbundantPoint {
        point,
        class,
        witness,
    })
}

/// Topology file: the family format plus the point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub points: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

pub fn parse_topology(text: &str) -> Result<TopSpace> {
    let file: TopologyFile = serde_json::from_str(text)?;
    validate_topology(&file.points, &file.sets)
}
