//! Element classification (abundant, optimal, covert), `I_x`, basis sets and
//! the structured injection witnesses: covers, covert translations, the
//! dimension-two construction and the counting fallback.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, NeighborhoodMap, SetFamily};
use crate::poset::{cover_dag, minimal_of, CoverDag};
use crate::witness::{InjectionWitness, Method};

const COVER_LEMMA: &str = "the x-cover injection lemma requires a union-closed family";
const MIN_CHECK_LEMMA: &str = "the minimal-member covert check requires a union-closed family";
const DIM_LE1: &str = "the dimension-at-most-one proposition";
const DIM2_THEOREM: &str = "the dimension-two abundance theorem";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub element: String,
    pub index: usize,
    /// `|F_x|`
    pub count_in: usize,
    /// `|F_x^c|`
    pub count_out: usize,
    pub abundant: bool,
    pub optimal: bool,
    pub covert: bool,
    /// `{x} ∈ F`
    pub singleton_member: bool,
}

fn report(family: &SetFamily, nbhd: &NeighborhoodMap, x: ElementId) -> ElementReport {
    let count_in = nbhd.count_in(x);
    let count_out = nbhd.count_out(x);
    let singleton_member = family.contains_member(&ESet::singleton(x.0));
    ElementReport {
        element: family.label(x).to_string(),
        index: x.0,
        count_in,
        count_out,
        abundant: count_out <= count_in,
        optimal: nbhd.is_optimal(x),
        covert: !singleton_member && first_covert_blocker(family, x).is_none(),
        singleton_member,
    }
}

/// One report per element of `U_F`, in index order.
pub fn abundant_elements(family: &SetFamily) -> Vec<ElementReport> {
    let nbhd = family.neighborhoods();
    family
        .elements()
        .map(|x| report(family, &nbhd, x))
        .collect()
}

/// `|F_x^c| <= |F_x|`, the finite form of the injection definition.
pub fn is_abundant(family: &SetFamily, x: ElementId) -> bool {
    let count_in = family.count_with(x);
    family.len() - count_in <= count_in
}

/// Elements whose neighborhood `F_x` is inclusion-maximal.
pub fn optimal_elements(family: &SetFamily) -> Vec<ElementId> {
    let nbhd = family.neighborhoods();
    family.elements().filter(|&x| nbhd.is_optimal(x)).collect()
}

/// First `A ∈ F_x^c` (canonical order) with `A ∪ {x} ∉ F`.
fn first_covert_blocker(family: &SetFamily, x: ElementId) -> Option<ESet> {
    let sx = ESet::singleton(x.0);
    family
        .members_without(x)
        .map(|i| family.member(i))
        .find(|a| !family.contains_member(&a.union(&sx)))
        .cloned()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CovertVerdict {
    /// `{x} ∉ F` and `A -> A ∪ {x}` is well defined on `F_x^c`.
    Covert(InjectionWitness),
    /// `{x} ∈ F`, which the definition excludes.
    SingletonMember,
    /// This member of `F_x^c` has `A ∪ {x} ∉ F`.
    Blocked(ESet),
}

pub fn is_covert(family: &SetFamily, x: ElementId) -> Result<CovertVerdict> {
    let sx = ESet::singleton(x.0);
    if family.contains_member(&sx) {
        return Ok(CovertVerdict::SingletonMember);
    }
    if let Some(a) = first_covert_blocker(family, x) {
        return Ok(CovertVerdict::Blocked(a));
    }
    let pairs = family
        .members_without(x)
        .map(|i| {
            let a = family.member(i).clone();
            let b = a.union(&sx);
            (a, b)
        })
        .collect();
    InjectionWitness::new(x, Method::Covert, pairs)
        .checked(family)
        .map(CovertVerdict::Covert)
}

/// Checks `A ∪ {x} ∈ F` only along `min F_x^c`. For union-closed families
/// this agrees with the check over all of `F_x^c`.
pub fn covert_min_check(family: &SetFamily, x: ElementId) -> Result<bool> {
    if let Some((a, b)) = family.union_violation() {
        return Err(Error::precondition(
            MIN_CHECK_LEMMA,
            format!("{} ∪ {} is missing", family.show(&a), family.show(&b)),
        ));
    }
    let outside: Vec<ESet> = family
        .members_without(x)
        .map(|i| family.member(i).clone())
        .collect();
    let sx = ESet::singleton(x.0);
    Ok(minimal_of(&outside)
        .iter()
        .all(|a| family.contains_member(&a.union(&sx))))
}

fn x_covers_in(family: &SetFamily, dag: &CoverDag, x: ElementId, a: usize) -> Vec<usize> {
    dag.upper_covers(a)
        .iter()
        .copied()
        .filter(|&b| family.member(b).contains(x.0))
        .collect()
}

/// Members `B ∈ F_x` that cover `A` in `(F, ⊆)`, in canonical order.
pub fn x_covers(family: &SetFamily, x: ElementId, a: &ESet) -> Result<Vec<ESet>> {
    let ai = family.require_member(a)?;
    if a.contains(x.0) {
        return Err(Error::Domain {
            what: family.show(a),
            detail: format!("it contains {}, so it is not in F_x^c", family.label(x)),
        });
    }
    let dag = cover_dag(family);
    Ok(x_covers_in(family, &dag, x, ai)
        .into_iter()
        .map(|b| family.member(b).clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Injection(InjectionWitness),
    /// The first member of `F_x^c` with no `x`-cover.
    Uncovered(ESet),
}

/// Send each `A ∈ F_x^c` to its smallest `x`-cover. In a union-closed family
/// no member of `F_x` covers two members of `F_x^c`, so the map is injective
/// whenever it is total.
pub fn cover_injection(family: &SetFamily, x: ElementId) -> Result<CoverOutcome> {
    if let Some((a, b)) = family.union_violation() {
        return Err(Error::precondition(
            COVER_LEMMA,
            format!("{} ∪ {} is missing", family.show(&a), family.show(&b)),
        ));
    }
    let dag = cover_dag(family);
    let mut pairs = Vec::new();
    for a in family.members_without(x) {
        match x_covers_in(family, &dag, x, a).first() {
            Some(&b) => pairs.push((family.member(a).clone(), family.member(b).clone())),
            None => return Ok(CoverOutcome::Uncovered(family.member(a).clone())),
        }
    }
    InjectionWitness::new(x, Method::Cover, pairs)
        .checked(family)
        .map(CoverOutcome::Injection)
}

/// Check the hypotheses of the dimension-two construction for `x`.
fn dim2_hypotheses(family: &SetFamily, x: ElementId) -> Result<CoverDag> {
    if !family.is_nontrivial() {
        return Err(Error::precondition(DIM2_THEOREM, "the family is trivial"));
    }
    if let Some((a, b)) = family.union_violation() {
        return Err(Error::precondition(
            DIM2_THEOREM,
            format!(
                "requires a union-closed family; {} ∪ {} is missing",
                family.show(&a),
                family.show(&b)
            ),
        ));
    }
    if let Some((y, z)) = family.separating_violation() {
        return Err(Error::precondition(
            DIM2_THEOREM,
            format!(
                "requires a separating family ({} and {} lie in the same members); run `quotient` first",
                family.label(y),
                family.label(z)
            ),
        ));
    }
    let dag = cover_dag(family);
    if dag.dimension() != 2 {
        return Err(Error::precondition(
            DIM2_THEOREM,
            format!("requires dimension two, found {}", dag.dimension()),
        ));
    }
    if !family.neighborhoods().is_optimal(x) {
        return Err(Error::precondition(
            DIM2_THEOREM,
            format!(
                "requires an optimal element; {} is not optimal",
                family.label(x)
            ),
        ));
    }
    Ok(dag)
}

/// For a separating union-closed family of dimension two and an optimal `x`:
/// send `A ∈ F_x^c` to `U_F` when `U_F` covers `A`, otherwise to `A ∪ X` for
/// the smallest `X ∈ F_x` with `A ∪ X ≠ U_F`. Every image is checked to be an
/// `x`-cover of `A`.
pub fn dim2_witness(family: &SetFamily, x: ElementId) -> Result<InjectionWitness> {
    let dag = dim2_hypotheses(family, x)?;
    let universe = family.universe();
    let top = family.require_member(&universe)?;
    let mut pairs = Vec::new();
    for ai in family.members_without(x) {
        let a = family.member(ai);
        let b = if dag.is_cover(ai, top) {
            universe.clone()
        } else {
            family
                .members_with(x)
                .map(|i| a.union(family.member(i)))
                .find(|u| *u != universe)
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "no X in F_{} with {} ∪ X ≠ U",
                        family.label(x),
                        family.show(a)
                    ))
                })?
        };
        let bi = family
            .position(&b)
            .ok_or_else(|| Error::Internal(format!("{} is not a member", family.show(&b))))?;
        if !dag.is_cover(ai, bi) {
            return Err(Error::Internal(format!(
                "{} does not cover {}",
                family.show(&b),
                family.show(a)
            )));
        }
        pairs.push((a.clone(), b));
    }
    InjectionWitness::new(x, Method::Dim2, pairs).checked(family)
}

/// Classification for a union-closed family of dimension at most one, where
/// every element is abundant and misses at most one member.
pub fn dim_le1_report(family: &SetFamily) -> Result<Vec<ElementReport>> {
    if !family.is_nontrivial() {
        return Err(Error::precondition(DIM_LE1, "the family is trivial"));
    }
    if !family.is_union_closed() {
        return Err(Error::precondition(
            DIM_LE1,
            "requires a union-closed family",
        ));
    }
    let dim = cover_dag(family).dimension();
    if dim > 1 {
        return Err(Error::precondition(
            DIM_LE1,
            format!("requires dimension at most one, found {dim}"),
        ));
    }
    let reports = abundant_elements(family);
    if let Some(r) = reports.iter().find(|r| !r.abundant || r.count_out > 1) {
        return Err(Error::Internal(format!(
            "element {} misses {} members in a family of dimension {dim}",
            r.element, r.count_out
        )));
    }
    Ok(reports)
}

/// `I_x`, the intersection of all members containing `x`.
pub fn intersection_ix(family: &SetFamily, x: ElementId) -> ESet {
    family
        .members_with(x)
        .map(|i| family.member(i).clone())
        .reduce(|acc, m| acc.intersection(&m))
        .unwrap_or_else(|| ESet::singleton(x.0))
}

/// Members `B` that are not the union of two members both different from `B`.
pub fn basis_sets(family: &SetFamily) -> Vec<ESet> {
    let members = family.members();
    members
        .iter()
        .filter(|b| {
            let below: Vec<&ESet> = members.iter().filter(|m| m.is_strict_subset(b)).collect();
            !below
                .iter()
                .enumerate()
                .any(|(i, p)| below[i + 1..].iter().any(|q| p.union(q) == **b))
        })
        .cloned()
        .collect()
}

/// Pair `F_x^c` with `F_x`, both in canonical order.
pub fn padding_witness(family: &SetFamily, x: ElementId) -> Result<InjectionWitness> {
    let inside: Vec<usize> = family.members_with(x).collect();
    let outside: Vec<usize> = family.members_without(x).collect();
    if outside.len() > inside.len() {
        return Err(Error::NotAbundant {
            element: family.label(x).to_string(),
            count_in: inside.len(),
            count_out: outside.len(),
        });
    }
    let pairs = outside
        .iter()
        .zip(&inside)
        .map(|(&a, &b)| (family.member(a).clone(), family.member(b).clone()))
        .collect();
    InjectionWitness::new(x, Method::Padding, pairs).checked(family)
}

/// The most structured witness available: cover, then covert, then the
/// dimension-two construction, then padding.
pub fn best_witness(family: &SetFamily, x: ElementId) -> Result<InjectionWitness> {
    if family.is_union_closed() {
        if let CoverOutcome::Injection(w) = cover_injection(family, x)? {
            return Ok(w);
        }
    }
    if let CovertVerdict::Covert(w) = is_covert(family, x)? {
        return Ok(w);
    }
    match dim2_witness(family, x) {
        Ok(w) => return Ok(w),
        Err(Error::Precondition { .. }) => {}
        Err(e) => return Err(e),
    }
    padding_witness(family, x)
}
