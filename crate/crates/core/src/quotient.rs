//! The separating reduction: identify `x ~ y` when `F_x = F_y` and replace
//! each member `A` by its set of classes `[A]`.
//!
//! A class is named by its least original label. The member map
//! `A -> [A]` is an order isomorphism onto the quotient, commutes with unions
//! and intersections, and preserves abundance and optimality in both
//! directions; [`verify_quotient`] checks each of these on a concrete result.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abundance::is_abundant;
use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, SetFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    /// Equivalence classes of `U_F`, ordered by representative.
    pub classes: Vec<Vec<ElementId>>,
    /// Element of `F` -> element of the quotient.
    pub class_of: Vec<ElementId>,
    pub quotient: SetFamily,
    /// Member index in `F` -> member index in the quotient.
    pub forward: Vec<usize>,
    /// Inverse of `forward`.
    pub backward: Vec<usize>,
}

impl QuotientResult {
    /// `[A]` for an arbitrary set `A ⊆ U_F`.
    pub fn image(&self, set: &ESet) -> ESet {
        set.iter().map(|i| self.class_of[i].0).collect()
    }

    /// The unique member of `F` mapping to quotient member `i`.
    pub fn preimage(&self, family: &SetFamily, i: usize) -> ESet {
        family.member(self.backward[i]).clone()
    }

    pub fn is_identity(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn to_doc(&self, family: &SetFamily, checks: &QuotientReport) -> QuotientDoc {
        QuotientDoc {
            classes: self
                .classes
                .iter()
                .map(|c| ClassDoc {
                    name: format!("[{}]", family.label(c[0])),
                    elements: c.iter().map(|&x| family.label(x).to_string()).collect(),
                })
                .collect(),
            quotient: self.quotient.to_file().sets,
            bijection: self
                .forward
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    (
                        family.labels_of(family.member(i)),
                        self.quotient.labels_of(self.quotient.member(j)),
                    )
                })
                .collect(),
            checks: checks.clone(),
        }
    }
}

pub fn separating_quotient(family: &SetFamily) -> Result<QuotientResult> {
    let nbhd = family.neighborhoods();
    let mut groups: BTreeMap<&ESet, Vec<ElementId>> = BTreeMap::new();
    for x in family.elements() {
        groups.entry(nbhd.inside(x)).or_default().push(x);
    }
    let mut classes: Vec<Vec<ElementId>> = groups.into_values().collect();
    classes.sort_by_key(|c| c[0]);

    // Class k is provisionally indexed k; from_masks re-sorts by label but
    // representatives are already in label order, so the indices survive.
    let mut provisional = vec![ElementId(0); family.universe_size()];
    for (k, class) in classes.iter().enumerate() {
        for &x in class {
            provisional[x.0] = ElementId(k);
        }
    }
    let rep_labels: Vec<String> = classes
        .iter()
        .map(|c| family.label(c[0]).to_string())
        .collect();
    let images: Vec<ESet> = family
        .members()
        .iter()
        .map(|m| m.iter().map(|i| provisional[i].0).collect())
        .collect();
    let quotient = SetFamily::from_masks(rep_labels, images);
    if quotient.labels().len() != classes.len() {
        return Err(Error::Internal("quotient lost a class".into()));
    }
    let mut class_of = provisional;
    for c in class_of.iter_mut() {
        *c = quotient
            .element(family.label(classes[c.0][0]))
            .ok_or_else(|| Error::Internal("class label missing from quotient".into()))?;
    }
    let result_images: Vec<ESet> = family
        .members()
        .iter()
        .map(|m| m.iter().map(|i| class_of[i].0).collect())
        .collect();
    let forward: Vec<usize> = result_images
        .iter()
        .map(|img| {
            quotient
                .position(img)
                .ok_or_else(|| Error::Internal("image of a member is not in the quotient".into()))
        })
        .collect::<Result<_>>()?;
    if quotient.len() != family.len() {
        return Err(Error::Internal(format!(
            "quotient has {} members, expected {}",
            quotient.len(),
            family.len()
        )));
    }
    let mut backward = vec![usize::MAX; forward.len()];
    for (i, &j) in forward.iter().enumerate() {
        backward[j] = i;
    }
    Ok(QuotientResult {
        classes,
        class_of,
        quotient,
        forward,
        backward,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub order_isomorphism: bool,
    pub union_commutes: bool,
    pub intersection_commutes: bool,
    pub abundance_preserved: bool,
    pub optimality_preserved: bool,
    /// Not one of the preservation checks, but expected of every quotient.
    pub quotient_separating: bool,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.order_isomorphism
            && self.union_commutes
            && self.intersection_commutes
            && self.abundance_preserved
            && self.optimality_preserved
            && self.quotient_separating
    }
}

pub fn verify_quotient(family: &SetFamily, q: &QuotientResult) -> QuotientReport {
    let s = &q.quotient;
    let m = family.members();

    let bijective = q.forward.len() == m.len()
        && s.len() == m.len()
        && q.forward
            .iter()
            .enumerate()
            .all(|(i, &j)| q.backward.get(j) == Some(&i))
        && q.forward
            .iter()
            .enumerate()
            .all(|(i, &j)| q.image(&m[i]) == *s.member(j));
    let order_isomorphism = bijective
        && (0..m.len()).all(|i| {
            (0..m.len()).all(|j| {
                m[i].is_subset(&m[j]) == s.member(q.forward[i]).is_subset(s.member(q.forward[j]))
            })
        });

    let union_commutes = (0..m.len()).all(|i| {
        (i..m.len()).all(|j| q.image(&m[i].union(&m[j])) == q.image(&m[i]).union(&q.image(&m[j])))
    });

    // Pairwise, each F_x as a whole, and all of F.
    let mut intersection_commutes = (0..m.len()).all(|i| {
        (i..m.len()).all(|j| {
            q.image(&m[i].intersection(&m[j])) == q.image(&m[i]).intersection(&q.image(&m[j]))
        })
    });
    let collections = family
        .elements()
        .map(|x| family.members_with(x).collect::<Vec<_>>())
        .chain(std::iter::once((0..m.len()).collect()));
    for idx in collections {
        if idx.is_empty() {
            continue;
        }
        let direct = idx
            .iter()
            .map(|&i| m[i].clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap();
        let mapped = idx
            .iter()
            .map(|&i| q.image(&m[i]))
            .reduce(|a, b| a.intersection(&b))
            .unwrap();
        intersection_commutes &= q.image(&direct) == mapped;
    }

    let f_n = family.neighborhoods();
    let s_n = s.neighborhoods();
    let abundance_preserved = family
        .elements()
        .all(|x| is_abundant(family, x) == is_abundant(s, q.class_of[x.0]));
    let optimality_preserved = family
        .elements()
        .all(|x| f_n.is_optimal(x) == s_n.is_optimal(q.class_of[x.0]));

    QuotientReport {
        order_isomorphism,
        union_commutes,
        intersection_commutes,
        abundance_preserved,
        optimality_preserved,
        quotient_separating: s.is_separating(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub name: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub classes: Vec<ClassDoc>,
    pub quotient: Vec<Vec<String>>,
    pub bijection: Vec<(Vec<String>, Vec<String>)>,
    pub checks: QuotientReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::dimension;

    #[test]
    fn separating_input_gives_identity() {
        let k = fixtures::no_cover();
        let q = separating_quotient(&k).unwrap();
        assert!(q.is_identity());
        assert_eq!(q.quotient, k);
        assert!(verify_quotient(&k, &q).passed());
    }

    #[test]
    fn collapses_twins() {
        let f = SetFamily::from_sets([vec!["1", "2"], vec!["1", "2", "3"]]);
        let q = separating_quotient(&f).unwrap();
        let classes: Vec<Vec<&str>> = q
            .classes
            .iter()
            .map(|c| c.iter().map(|&x| f.label(x)).collect())
            .collect();
        assert_eq!(classes, vec![vec!["1", "2"], vec!["3"]]);
        assert_eq!(
            q.quotient,
            SetFamily::from_sets([vec!["1"], vec!["1", "3"]])
        );
        let r = verify_quotient(&f, &q);
        assert!(r.passed(), "{r:?}");
        assert!(is_abundant(&q.quotient, q.class_of[0]));
        assert!(is_abundant(&f, ElementId(0)));
        assert_eq!(dimension(&q.quotient), dimension(&f));
    }

    #[test]
    fn single_class() {
        let f = SetFamily::from_sets([vec!["a", "b"]]);
        let q = separating_quotient(&f).unwrap();
        assert_eq!(q.classes.len(), 1);
        assert_eq!(q.quotient, SetFamily::from_sets([vec!["a"]]));
    }

    #[test]
    fn identity_quotients_verify() {
        for f in [fixtures::optimal_not_abundant(), fixtures::dim_two()] {
            let q = separating_quotient(&f).unwrap();
            assert!(q.is_identity());
            assert!(verify_quotient(&f, &q).passed());
        }
        let d = fixtures::dim_two();
        let q = separating_quotient(&d).unwrap();
        let opt: Vec<&str> = crate::abundance::optimal_elements(&q.quotient)
            .into_iter()
            .map(|x| q.quotient.label(x))
            .collect();
        assert_eq!(opt, vec!["2", "3"]);
    }

    #[test]
    fn quotient_is_idempotent() {
        let f = SetFamily::from_sets([
            vec!["b", "a"],
            vec!["a", "b", "c", "d"],
            vec!["c", "d", "e"],
        ]);
        let q = separating_quotient(&f).unwrap();
        let qq = separating_quotient(&q.quotient).unwrap();
        assert!(qq.is_identity());
        assert_eq!(qq.quotient, q.quotient);
    }

    #[test]
    fn report_names_classes_in_brackets() {
        let f = SetFamily::from_sets([vec!["1", "2"], vec!["1", "2", "3"]]);
        let q = separating_quotient(&f).unwrap();
        let doc = q.to_doc(&f, &verify_quotient(&f, &q));
        assert_eq!(doc.classes[0].name, "[1]");
        assert_eq!(doc.classes[0].elements, vec!["1", "2"]);
        assert_eq!(
            doc.bijection[0],
            (vec!["1".into(), "2".into()], vec!["1".into()])
        );
    }
}
