use std::collections::BTreeSet;

use proptest::prelude::*;

use frankl_core::abundance::{abundant_elements, best_witness};
use frankl_core::family::parse_family;
use frankl_core::poset::{cover_dag, dimension};
use frankl_core::quotient::{separating_quotient, verify_quotient};
use frankl_core::{Error, ParseOptions, SetFamily};

const LABELS: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

fn family_strategy() -> impl Strategy<Value = SetFamily> {
    prop::collection::vec(prop::collection::btree_set(0..LABELS.len(), 0..5), 1..10)
        .prop_filter("nontrivial", |sets| sets.iter().any(|s| !s.is_empty()))
        .prop_map(|sets| {
            SetFamily::from_sets(sets.into_iter().map(|s| s.into_iter().map(|i| LABELS[i])))
        })
}

/// Members as plain label sets, for comparisons that avoid the bitmask code.
fn plain(f: &SetFamily) -> BTreeSet<BTreeSet<String>> {
    f.members()
        .iter()
        .map(|m| f.labels_of(m).into_iter().collect())
        .collect()
}

fn plain_union_closed(p: &BTreeSet<BTreeSet<String>>) -> bool {
    p.iter()
        .all(|a| p.iter().all(|b| p.contains(&a.union(b).cloned().collect())))
}

proptest! {
    #[test]
    fn closure_is_extensive_closed_and_idempotent(f in family_strategy()) {
        let c = f.union_closure().unwrap();
        prop_assert!(plain(&f).is_subset(&plain(&c)));
        prop_assert!(plain_union_closed(&plain(&c)));
        prop_assert_eq!(c.union_closure().unwrap(), c.clone());
        prop_assert_eq!(f.is_union_closed(), plain_union_closed(&plain(&f)));
    }

    #[test]
    fn closure_is_least(f in family_strategy(), extra in prop::collection::btree_set(0..LABELS.len(), 1..4)) {
        // Any union-closed superset of F contains the closure of F.
        let bigger = f.with_member(
            f.set_of(extra.iter().map(|&i| LABELS[i]).filter(|l| f.element(l).is_some()))
                .unwrap(),
        );
        let big_closed = bigger.union_closure().unwrap();
        prop_assert!(plain(&f.union_closure().unwrap()).is_subset(&plain(&big_closed)));
    }

    #[test]
    fn json_round_trip(f in family_strategy()) {
        let text = f.to_json();
        let back = parse_family(&text, &ParseOptions::default()).unwrap();
        prop_assert_eq!(back.duplicates, 0);
        prop_assert_eq!(&back.family, &f);
        prop_assert_eq!(back.family.to_json(), text);
    }

    #[test]
    fn reachability_is_strict_inclusion(f in family_strategy()) {
        let dag = cover_dag(&f);
        let m = f.members();
        for i in 0..m.len() {
            for j in 0..m.len() {
                prop_assert_eq!(dag.reaches(i, j), m[i].is_strict_subset(&m[j]));
            }
        }
        let longest = (0..m.len()).map(|i| dag.height(i)).max().unwrap();
        prop_assert_eq!(longest, dimension(&f));
    }

    #[test]
    fn quotient_checks_hold(f in family_strategy()) {
        let q = separating_quotient(&f).unwrap();
        let r = verify_quotient(&f, &q);
        prop_assert!(r.passed(), "{:?}", r);
        prop_assert_eq!(dimension(&q.quotient), dimension(&f));
    }

    #[test]
    fn witnesses_verify_or_refuse_by_count(f in family_strategy()) {
        let c = f.union_closure().unwrap();
        for r in abundant_elements(&c) {
            let x = c.require_element(&r.element).unwrap();
            match best_witness(&c, x) {
                Ok(w) => {
                    prop_assert!(r.abundant);
                    prop_assert!(w.verify(&c).is_ok());
                }
                Err(Error::NotAbundant { .. }) => prop_assert!(!r.abundant),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
