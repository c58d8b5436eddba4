//! α-tents, domination, and abundance in `F ∪ T` for families `F` that need
//! not be union-closed.
//!
//! An α-tent is a one-dimensional family with α minimal members (nodes) and
//! a greatest member (the apex). When `F* = F \ {∅}` dominates a union-closed
//! tent with α > 1, pick the minimal node `M` with the largest up-set in
//! `G = F* ∪ T` and a point `x ∈ M`. At most one node `N` avoids `x`, every
//! member of `G` avoiding `x` sits in `N↑ \ {apex}`, and pairing that with
//! `M↑ \ {apex}` gives the injection; `∅` (if present) goes to the apex.
//!
//! Finite tents always have a node with a largest up-set, so the case where
//! no such node exists does not arise here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, SetFamily};
use crate::poset::{cover_dag, maximal_members, minimal_members, minimal_of};
use crate::witness::{InjectionWitness, Method, WitnessDoc};

const TENT_THEOREM: &str = "the tent domination theorem";
const TENT_COROLLARY: &str = "the height-one tent corollary";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TentCertificate {
    pub tent: SetFamily,
    pub alpha: usize,
    /// Greatest member, `U_T`.
    pub apex: ESet,
    /// Minimal nodes in canonical order.
    pub nodes: Vec<ESet>,
    pub union_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TentRejection {
    Empty,
    NoGreatestMember { maximal: usize },
    WrongDimension(usize),
    NotUnionClosed(Vec<String>, Vec<String>),
}

impl fmt::Display for TentRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TentRejection::Empty => write!(f, "the family is empty"),
            TentRejection::NoGreatestMember { maximal } => {
                write!(f, "no greatest member ({maximal} maximal members)")
            }
            TentRejection::WrongDimension(d) => write!(f, "dimension is {d}, not 1"),
            TentRejection::NotUnionClosed(a, b) => write!(
                f,
                "{{{}}} ∪ {{{}}} is not a member",
                a.join(","),
                b.join(",")
            ),
        }
    }
}

pub fn is_alpha_tent(
    tent: &SetFamily,
    require_union_closed: bool,
) -> std::result::Result<TentCertificate, TentRejection> {
    if tent.is_empty() {
        return Err(TentRejection::Empty);
    }
    let maximal = maximal_members(tent);
    if maximal.len() != 1 {
        return Err(TentRejection::NoGreatestMember {
            maximal: maximal.len(),
        });
    }
    let dim = cover_dag(tent).dimension();
    if dim != 1 {
        return Err(TentRejection::WrongDimension(dim));
    }
    let nodes = minimal_members(tent);
    let violation = tent.union_violation();
    if require_union_closed {
        if let Some((a, b)) = &violation {
            return Err(TentRejection::NotUnionClosed(
                tent.labels_of(a),
                tent.labels_of(b),
            ));
        }
    }
    Ok(TentCertificate {
        tent: tent.clone(),
        alpha: nodes.len(),
        apex: maximal[0].clone(),
        nodes,
        union_closed: violation.is_none(),
    })
}

/// Every member of `family` contains some minimal node of the tent. On
/// failure returns a member containing none.
pub fn dominates(family: &SetFamily, cert: &TentCertificate) -> std::result::Result<(), ESet> {
    let nodes: Vec<ESet> = cert
        .nodes
        .iter()
        .filter_map(|n| cert.tent.translate(n, family))
        .collect();
    match family
        .members()
        .iter()
        .find(|a| !nodes.iter().any(|n| n.is_subset(a)))
    {
        Some(a) => Err(a.clone()),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TentOutcome {
    /// `F ∪ T`; every set below is over its universe.
    pub combined: SetFamily,
    pub element: ElementId,
    pub witness: InjectionWitness,
    /// Node with the largest up-set in `F* ∪ T`.
    pub m: ESet,
    /// The node avoiding `element`, if any.
    pub n: Option<ESet>,
    pub apex: ESet,
    pub alpha: usize,
}

impl TentOutcome {
    pub fn to_doc(&self) -> TentDoc {
        let c = &self.combined;
        TentDoc {
            witness: self.witness.to_doc(c),
            m: c.labels_of(&self.m),
            n: self.n.as_ref().map(|n| c.labels_of(n)),
            apex: c.labels_of(&self.apex),
            alpha: self.alpha,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentDoc {
    #[serde(flatten)]
    pub witness: WitnessDoc,
    #[serde(rename = "M")]
    pub m: Vec<String>,
    #[serde(rename = "N")]
    pub n: Option<Vec<String>>,
    pub apex: Vec<String>,
    pub alpha: usize,
}

/// An abundant element of `F ∪ T` with its injection, following the tent
/// construction. `F` need not be union-closed.
pub fn tent_abundant(family: &SetFamily, tent: &SetFamily) -> Result<TentOutcome> {
    let cert = is_alpha_tent(tent, true).map_err(|r| {
        Error::precondition(TENT_THEOREM, format!("requires a union-closed α-tent: {r}"))
    })?;
    if cert.alpha <= 1 {
        return Err(Error::precondition(
            TENT_THEOREM,
            format!("requires α > 1, found α = {}", cert.alpha),
        ));
    }
    let fstar = family.without_member(&ESet::empty());
    if let Err(a) = dominates(&fstar, &cert) {
        return Err(Error::precondition(
            TENT_THEOREM,
            format!(
                "F* must dominate the tent; {} contains no minimal node",
                fstar.show(&a)
            ),
        ));
    }

    let combined = family.merge(tent);
    let to_combined = |s: &ESet| {
        tent.translate(s, &combined)
            .ok_or_else(|| Error::Internal("tent label missing from F ∪ T".into()))
    };
    let apex = to_combined(&cert.apex)?;
    let mut nodes = cert
        .nodes
        .iter()
        .map(to_combined)
        .collect::<Result<Vec<_>>>()?;
    nodes.sort();
    let g: Vec<ESet> = combined
        .members()
        .iter()
        .filter(|m| !m.is_empty())
        .cloned()
        .collect();

    let mut min_g = minimal_of(&g);
    min_g.sort();
    if min_g != nodes {
        return Err(Error::Internal("min(F* ∪ T) differs from min T".into()));
    }

    let up = |s: &ESet| -> Vec<ESet> { g.iter().filter(|b| s.is_subset(b)).cloned().collect() };
    let mut m = &nodes[0];
    let mut best = up(m).len();
    for node in &nodes[1..] {
        let size = up(node).len();
        if size > best {
            best = size;
            m = node;
        }
    }
    let x = ElementId(
        m.min_index()
            .ok_or_else(|| Error::Internal("empty tent node".into()))?,
    );

    let avoiding: Vec<&ESet> = nodes.iter().filter(|n| !n.contains(x.0)).collect();
    if avoiding.len() > 1 {
        return Err(Error::Internal(format!(
            "{} avoids {} minimal nodes of a one-dimensional union-closed tent",
            combined.label(x),
            avoiding.len()
        )));
    }

    let mut pairs = Vec::new();
    let n = avoiding.first().map(|&n| n.clone());
    if let Some(n) = &n {
        let n_up: Vec<ESet> = up(n).into_iter().filter(|b| *b != apex).collect();
        let m_up: Vec<ESet> = up(m).into_iter().filter(|b| *b != apex).collect();
        if n_up.len() > m_up.len() {
            return Err(Error::Internal(format!(
                "|N↑ \\ apex| = {} exceeds |M↑ \\ apex| = {}",
                n_up.len(),
                m_up.len()
            )));
        }
        pairs.extend(n_up.into_iter().zip(m_up).filter(|(a, _)| !a.contains(x.0)));
    }
    if combined.contains_member(&ESet::empty()) {
        pairs.push((ESet::empty(), apex.clone()));
    }
    let witness = InjectionWitness::new(x, Method::Tent, pairs).checked(&combined)?;
    Ok(TentOutcome {
        element: x,
        witness,
        m: m.clone(),
        n,
        apex,
        alpha: cert.alpha,
        combined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryOutcome {
    /// `G ∪ {∅}`.
    pub family: SetFamily,
    pub element: ElementId,
    pub witness: InjectionWitness,
    /// Height-one member above every minimal member.
    pub h: ESet,
    /// Present when α > 1 and the tent construction was used.
    pub tent: Option<TentOutcome>,
}

/// For a union-closed `G` of nonempty sets with a height-one member above
/// every minimal member, an abundant element of `G ∪ {∅}`.
pub fn dcc_tent_corollary(g: &SetFamily) -> Result<CorollaryOutcome> {
    if g.is_empty() {
        return Err(Error::precondition(TENT_COROLLARY, "G is empty"));
    }
    if g.contains_member(&ESet::empty()) {
        return Err(Error::precondition(TENT_COROLLARY, "G must not contain ∅"));
    }
    if let Some((a, b)) = g.union_violation() {
        return Err(Error::precondition(
            TENT_COROLLARY,
            format!(
                "requires union-closed G; {} ∪ {} is missing",
                g.show(&a),
                g.show(&b)
            ),
        ));
    }
    let dag = cover_dag(g);
    let mins = minimal_members(g);
    let h = (0..g.len())
        .filter(|&i| dag.height(i) == 1)
        .map(|i| g.member(i))
        .find(|h| mins.iter().all(|m| m.is_subset(h)))
        .cloned()
        .ok_or_else(|| {
            Error::precondition(
                TENT_COROLLARY,
                "no height-one member contains every minimal member",
            )
        })?;
    let with_empty = g.with_member(ESet::empty());

    if mins.len() == 1 {
        let m = with_empty
            .position(&mins[0])
            .map(|i| with_empty.member(i).clone())
            .ok_or_else(|| Error::Internal("minimal member lost".into()))?;
        let x = ElementId(
            m.min_index()
                .ok_or_else(|| Error::Internal("∅ in G".into()))?,
        );
        let witness = InjectionWitness::new(x, Method::Tent, vec![(ESet::empty(), m)])
            .checked(&with_empty)?;
        return Ok(CorollaryOutcome {
            family: with_empty,
            element: x,
            witness,
            h,
            tent: None,
        });
    }

    let mut tent_members = mins.clone();
    tent_members.push(h.clone());
    let tent = SetFamily::from_masks(g.labels().to_vec(), tent_members);
    let out = tent_abundant(&with_empty, &tent)?;
    if out.combined != with_empty {
        return Err(Error::Internal("F ∪ T differs from G ∪ {∅}".into()));
    }
    Ok(CorollaryOutcome {
        family: with_empty,
        element: out.element,
        witness: out.witness.clone(),
        h,
        tent: Some(out),
    })
}
