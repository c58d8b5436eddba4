//! Finite families of sets: canonical representation, the JSON family
//! format, and the elementary predicates (union-closed, separating) together
//! with the neighborhood map `x -> F_x`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eset::ESet;

/// Default largest universe accepted by [`parse_family`].
pub const DEFAULT_MAX_UNIVERSE: usize = 64;
/// Default member cap for [`SetFamily::union_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;
pub const MAX_UNIVERSE_ENV: &str = "FRANKL_MAX_UNIVERSE";

/// Index of an element in a family's universe. Indices follow the
/// lexicographic order of the labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub usize);

/// A finite family of distinct sets over the universe `U_F` (the union of its
/// members).
///
/// Members are kept in canonical order: by cardinality, then by mask value.
/// Labels are sorted lexicographically and a label's position is its
/// [`ElementId`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    labels: Vec<String>,
    members: Vec<ESet>,
}

impl SetFamily {
    /// Build from label lists. Duplicate sets collapse.
    pub fn from_sets<I, S, L>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        Self::from_sets_counting(sets).0
    }

    /// Like [`from_sets`](Self::from_sets) and also reports how many duplicate
    /// sets were dropped.
    pub fn from_sets_counting<I, S, L>(sets: I) -> (Self, usize)
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let mut interned: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut members = Vec::new();
        for set in sets {
            let mut mask = ESet::empty();
            for label in set {
                let label = label.as_ref();
                let idx = *interned.entry(label.to_string()).or_insert_with(|| {
                    labels.push(label.to_string());
                    labels.len() - 1
                });
                mask.insert(idx);
            }
            members.push(mask);
        }
        let raw = members.len();
        let family = Self::from_masks(labels, members);
        let dupes = raw - family.len();
        (family, dupes)
    }

    /// Canonicalize arbitrary masks over `labels`: labels that no member uses
    /// are dropped, the rest are re-indexed in lexicographic order, members
    /// are sorted and deduplicated.
    pub fn from_masks(labels: Vec<String>, members: Vec<ESet>) -> Self {
        let used = members.iter().fold(ESet::empty(), |acc, m| acc.union(m));
        let mut order: Vec<usize> = used.iter().collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut remap = vec![usize::MAX; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let identity =
            order.iter().enumerate().all(|(i, &o)| i == o) && order.len() == labels.len();
        let mut members: Vec<ESet> = if identity {
            members
        } else {
            members
                .iter()
                .map(|m| m.iter().map(|i| remap[i]).collect())
                .collect()
        };
        members.sort();
        members.dedup();
        let labels = order.into_iter().map(|i| labels[i].clone()).collect();
        SetFamily { labels, members }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(ElementId)
    }

    pub fn require_element(&self, label: &str) -> Result<ElementId> {
        self.element(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.labels.len()).map(ElementId)
    }

    pub fn members(&self) -> &[ESet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ESet {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    /// `U_F` as a mask.
    pub fn universe(&self) -> ESet {
        ESet::full(self.labels.len())
    }

    /// Nonempty with a nonempty universe.
    pub fn is_nontrivial(&self) -> bool {
        !self.members.is_empty() && !self.labels.is_empty()
    }

    /// Index of `set` in canonical member order.
    pub fn position(&self, set: &ESet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn contains_member(&self, set: &ESet) -> bool {
        self.position(set).is_some()
    }

    pub fn require_member(&self, set: &ESet) -> Result<usize> {
        self.position(set)
            .ok_or_else(|| Error::NotAMember(self.show(set)))
    }

    /// Build a mask from labels of this family's universe.
    pub fn set_of<L: AsRef<str>>(&self, labels: impl IntoIterator<Item = L>) -> Result<ESet> {
        labels
            .into_iter()
            .map(|l| self.require_element(l.as_ref()).map(|x| x.0))
            .collect()
    }

    /// Labels of a mask in index order.
    pub fn labels_of(&self, set: &ESet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Brace notation, e.g. `{1,2}`; the empty set prints as `{}`.
    pub fn show(&self, set: &ESet) -> String {
        let inner: Vec<&str> = set.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Re-express `set` (a mask over this family's labels) in `target`'s
    /// label space. `None` if some label is missing there.
    pub fn translate(&self, set: &ESet, target: &SetFamily) -> Option<ESet> {
        set.iter()
            .map(|i| target.element(&self.labels[i]).map(|x| x.0))
            .collect()
    }

    /// `self ∪ other`, matching elements by label.
    pub fn merge(&self, other: &SetFamily) -> SetFamily {
        let sets = self
            .members
            .iter()
            .map(|m| self.labels_of(m))
            .chain(other.members.iter().map(|m| other.labels_of(m)));
        SetFamily::from_sets(sets)
    }

    /// The family with `set` added (no-op if present). `set` must be over
    /// this family's universe.
    pub fn with_member(&self, set: ESet) -> SetFamily {
        let mut members = self.members.clone();
        members.push(set);
        SetFamily::from_masks(self.labels.clone(), members)
    }

    /// The family with `set` removed; the universe shrinks if needed.
    pub fn without_member(&self, set: &ESet) -> SetFamily {
        let members = self.members.iter().filter(|m| *m != set).cloned().collect();
        SetFamily::from_masks(self.labels.clone(), members)
    }

    /// Members containing `x`, as indices.
    pub fn members_with(&self, x: ElementId) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(move |&i| self.members[i].contains(x.0))
    }

    /// Members avoiding `x`, as indices.
    pub fn members_without(&self, x: ElementId) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(move |&i| !self.members[i].contains(x.0))
    }

    /// `|F_x|`.
    pub fn count_with(&self, x: ElementId) -> usize {
        self.members.iter().filter(|m| m.contains(x.0)).count()
    }

    pub fn is_union_closed(&self) -> bool {
        self.union_violation().is_none()
    }

    /// First pair `(A, B)` in canonical order with `A ∪ B ∉ F`.
    pub fn union_violation(&self) -> Option<(ESet, ESet)> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                let u = a.union(b);
                if u != *a && u != *b && !self.contains_member(&u) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    pub fn union_closure(&self) -> Result<SetFamily> {
        self.union_closure_capped(DEFAULT_CLOSURE_CAP)
    }

    /// Smallest union-closed family containing `self`.
    pub fn union_closure_capped(&self, cap: usize) -> Result<SetFamily> {
        let mut all: Vec<ESet> = self.members.clone();
        let mut seen: HashSet<ESet> = all.iter().cloned().collect();
        if seen.len() > cap {
            return Err(Error::SizeOverflow { cap });
        }
        // Each new set is joined with everything seen so far, so every pair is
        // examined once by the time the worklist drains.
        let mut next = 0;
        while next < all.len() {
            let a = all[next].clone();
            for j in 0..next {
                let u = a.union(&all[j]);
                if seen.insert(u.clone()) {
                    if seen.len() > cap {
                        return Err(Error::SizeOverflow { cap });
                    }
                    all.push(u);
                }
            }
            next += 1;
        }
        Ok(SetFamily::from_masks(self.labels.clone(), all))
    }

    pub fn is_separating(&self) -> bool {
        self.separating_violation().is_none()
    }

    /// Some `x ≠ y` with `F_x = F_y` (least `x`, then least `y`).
    pub fn separating_violation(&self) -> Option<(ElementId, ElementId)> {
        let nbhd = self.neighborhoods();
        let mut first: BTreeMap<&ESet, ElementId> = BTreeMap::new();
        for x in self.elements() {
            if let Some(&y) = first.get(nbhd.inside(x)) {
                return Some((y, x));
            }
            first.insert(nbhd.inside(x), x);
        }
        None
    }

    pub fn neighborhoods(&self) -> NeighborhoodMap {
        let mut inside = vec![ESet::empty(); self.labels.len()];
        for (i, m) in self.members.iter().enumerate() {
            for x in m.iter() {
                inside[x].insert(i);
            }
        }
        NeighborhoodMap {
            inside,
            member_count: self.members.len(),
        }
    }

    /// Canonical JSON: labels sorted, sets sorted by size then label tuple.
    pub fn to_file(&self) -> FamilyFile {
        let mut sets: Vec<Vec<String>> = self.members.iter().map(|m| self.labels_of(m)).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        FamilyFile {
            sets,
            universe: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("family serializes")
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.members.iter().map(|m| self.show(m)).collect();
        write!(f, "{{{}}}", sets.join(", "))
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The map `x -> F_x`. Each neighborhood is a mask over member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodMap {
    inside: Vec<ESet>,
    member_count: usize,
}

impl NeighborhoodMap {
    /// `F_x` as member indices.
    pub fn inside(&self, x: ElementId) -> &ESet {
        &self.inside[x.0]
    }

    /// `F_x^c` as member indices.
    pub fn outside(&self, x: ElementId) -> ESet {
        ESet::full(self.member_count).difference(&self.inside[x.0])
    }

    pub fn count_in(&self, x: ElementId) -> usize {
        self.inside[x.0].len()
    }

    pub fn count_out(&self, x: ElementId) -> usize {
        self.member_count - self.count_in(x)
    }

    pub fn member_count(&self) -> usize {
        self.member_count
    }

    /// `F_x ⊆ F_y`.
    pub fn is_contained(&self, x: ElementId, y: ElementId) -> bool {
        self.inside[x.0].is_subset(&self.inside[y.0])
    }

    /// `F_x` is inclusion-maximal among all neighborhoods.
    pub fn is_optimal(&self, x: ElementId) -> bool {
        (0..self.inside.len())
            .map(ElementId)
            .all(|y| !self.inside[x.0].is_strict_subset(&self.inside[y.0]))
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }
}

/// On-disk family format: `{"sets": [["1","2"], ...]}`. The optional
/// `universe` lists labels that must equal the union of the sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub sets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `{∅}`.
    pub allow_trivial: bool,
    pub max_universe: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            allow_trivial: false,
            max_universe: DEFAULT_MAX_UNIVERSE,
        }
    }
}

impl ParseOptions {
    /// Defaults, with the universe cap taken from `FRANKL_MAX_UNIVERSE` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = ParseOptions::default();
        if let Ok(v) = std::env::var(MAX_UNIVERSE_ENV) {
            opts.max_universe = v.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "{MAX_UNIVERSE_ENV}={v:?} is not a nonnegative integer"
                ))
            })?;
        }
        Ok(opts)
    }
}

#[derive(Clone, Debug)]
pub struct ParsedFamily {
    pub family: SetFamily,
    /// Duplicate sets dropped while parsing.
    pub duplicates: usize,
}

pub fn parse_family(text: &str, opts: &ParseOptions) -> Result<ParsedFamily> {
    let file: FamilyFile = serde_json::from_str(text)?;
    family_from_file(&file, opts)
}

pub fn family_from_file(file: &FamilyFile, opts: &ParseOptions) -> Result<ParsedFamily> {
    if file.sets.is_empty() {
        return Err(Error::InvalidFamily("the family has no members".into()));
    }
    if let Some(bad) = file.sets.iter().flatten().find(|l| l.is_empty()) {
        return Err(Error::Parse(format!(
            "empty element label in set list ({bad:?})"
        )));
    }
    let (family, duplicates) = SetFamily::from_sets_counting(&file.sets);
    if duplicates > 0 {
        log::warn!("dropped {duplicates} duplicate set(s)");
    }
    if let Some(declared) = &file.universe {
        let declared: BTreeSet<&str> = declared.iter().map(String::as_str).collect();
        let actual: BTreeSet<&str> = family.labels().iter().map(String::as_str).collect();
        if let Some(extra) = declared.difference(&actual).next() {
            return Err(Error::InvalidFamily(format!(
                "label {extra:?} is declared but no set contains it; the universe must equal the union of the members"
            )));
        }
        if let Some(missing) = actual.difference(&declared).next() {
            return Err(Error::InvalidFamily(format!(
                "label {missing:?} occurs in a set but is not declared in the universe"
            )));
        }
    }
    if family.universe_size() == 0 && !opts.allow_trivial {
        return Err(Error::InvalidFamily(
            "the family {∅} is trivial (pass allow_trivial to accept it)".into(),
        ));
    }
    if family.universe_size() > opts.max_universe {
        return Err(Error::UniverseTooLarge {
            size: family.universe_size(),
            cap: opts.max_universe,
        });
    }
    Ok(ParsedFamily { family, duplicates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn parse(text: &str) -> Result<ParsedFamily> {
        parse_family(text, &ParseOptions::default())
    }

    #[test]
    fn parses_covert_fixture() {
        let text = r#"{"sets": [["1","2","3","4"],["1","2","4"],["2","3","4"],["1","2"],["2","4"],["1","2","3"]]}"#;
        let p = parse(text).unwrap();
        assert_eq!(p.family.len(), 6);
        assert_eq!(p.family.labels(), &["1", "2", "3", "4"]);
        assert_eq!(p.duplicates, 0);
        assert!(!p.family.contains_member(&p.family.set_of(["3"]).unwrap()));
        assert_eq!(p.family, fixtures::covert_three());
    }

    #[test]
    fn singleton_family() {
        let p = parse(r#"{"sets": [["a"]]}"#).unwrap();
        assert_eq!(p.family.len(), 1);
        assert_eq!(p.family.labels(), &["a"]);
    }

    #[test]
    fn duplicates_collapse() {
        let p = parse(r#"{"sets": [["1"],["1"]]}"#).unwrap();
        assert_eq!(p.family.len(), 1);
        assert_eq!(p.duplicates, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            parse(r#"{"sets": []}"#),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            parse(r#"{"sets": [[]]}"#),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            parse(r#"{"sets": [["1"]], "universe": ["1","2"]}"#),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(parse(r#"{"sets": [[""]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse(r#"{"sets": 3}"#), Err(Error::Parse(_))));
        assert!(matches!(
            parse(r#"{"sets": [["1"]], "extra": 1}"#),
            Err(Error::Parse(_))
        ));
        let opts = ParseOptions {
            allow_trivial: true,
            ..Default::default()
        };
        let p = parse_family(r#"{"sets": [[]]}"#, &opts).unwrap();
        assert_eq!(p.family.len(), 1);
        assert!(!p.family.is_nontrivial());
    }

    #[test]
    fn universe_cap() {
        let sets: Vec<Vec<String>> = (0..70).map(|i| vec![format!("e{i:02}")]).collect();
        let text = serde_json::to_string(&FamilyFile {
            sets,
            universe: None,
        })
        .unwrap();
        assert!(matches!(
            parse(&text),
            Err(Error::UniverseTooLarge { size: 70, cap: 64 })
        ));
        let opts = ParseOptions {
            max_universe: 128,
            ..Default::default()
        };
        let f = parse_family(&text, &opts).unwrap().family;
        assert_eq!(f.universe_size(), 70);
        assert!(f.members().iter().any(|m| m.block_count() == 2));
        assert!(f.is_separating());
        assert!(!f.is_union_closed());
    }

    #[test]
    fn union_closed_checks() {
        assert!(fixtures::covert_three().is_union_closed());
        let f = SetFamily::from_sets([vec!["1"], vec!["2"]]);
        let (a, b) = f.union_violation().unwrap();
        assert_eq!((f.show(&a), f.show(&b)), ("{1}".into(), "{2}".into()));
        assert!(fixtures::no_cover().is_union_closed());
    }

    #[test]
    fn closure_examples() {
        let f = SetFamily::from_sets([vec!["1"], vec!["2"]]);
        let c = f.union_closure().unwrap();
        assert_eq!(
            c,
            SetFamily::from_sets([vec!["1"], vec!["2"], vec!["1", "2"]])
        );
        let g = fixtures::covert_three();
        assert_eq!(g.union_closure().unwrap(), g);
        let three = SetFamily::from_sets([vec!["1"], vec!["2"], vec!["3"]]);
        assert_eq!(three.union_closure().unwrap().len(), 7);
        assert!(matches!(
            three.union_closure_capped(5),
            Err(Error::SizeOverflow { cap: 5 })
        ));
    }

    #[test]
    fn separating_checks() {
        assert!(fixtures::optimal_not_abundant().is_separating());
        let f = SetFamily::from_sets([vec!["1", "2"]]);
        let (x, y) = f.separating_violation().unwrap();
        assert_eq!((f.label(x), f.label(y)), ("1", "2"));
    }

    #[test]
    fn neighborhood_examples() {
        let f = fixtures::covert_three();
        let n = f.neighborhoods();
        let three = f.require_element("3").unwrap();
        let inside: Vec<String> = n
            .inside(three)
            .iter()
            .map(|i| f.show(f.member(i)))
            .collect();
        let outside: Vec<String> = n
            .outside(three)
            .iter()
            .map(|i| f.show(f.member(i)))
            .collect();
        assert_eq!(inside, vec!["{1,2,3}", "{2,3,4}", "{1,2,3,4}"]);
        assert_eq!(outside, vec!["{1,2}", "{2,4}", "{1,2,4}"]);

        let a = SetFamily::from_sets([vec!["a"]]);
        let n = a.neighborhoods();
        assert_eq!(n.count_in(ElementId(0)), 1);
        assert!(n.outside(ElementId(0)).is_empty());

        let d = fixtures::dim_two();
        let n = d.neighborhoods();
        let two = d.require_element("2").unwrap();
        assert_eq!((n.count_in(two), n.count_out(two)), (5, 1));
    }

    #[test]
    fn canonical_json() {
        let f = SetFamily::from_sets([vec!["b", "a"], vec!["c"], vec![]]);
        assert_eq!(f.to_json(), r#"{"sets":[[],["c"],["a","b"]]}"#);
    }
}
