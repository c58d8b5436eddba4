//! The inclusion order on a family: cover relation (Hasse diagram), heights,
//! dimension (longest chain length), extremal members and up/down sets.

use std::fmt::Write as _;

use crate::error::Result;
use crate::eset::ESet;
use crate::family::SetFamily;

/// Transitive reduction of `(F, ⊆)`. Node `i` is member `i` of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDag {
    /// `(lower, upper)` with `lower ⊂_c upper`, sorted.
    edges: Vec<(usize, usize)>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    height: Vec<usize>,
    coheight: Vec<usize>,
}

impl CoverDag {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.height.len()
    }

    /// Members covered by node `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// Members covering node `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.below[upper].binary_search(&lower).is_ok()
    }

    /// Length of the longest chain ending at `i`.
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    /// Length of the longest chain starting at `i`.
    pub fn coheight(&self, i: usize) -> usize {
        self.coheight[i]
    }

    pub fn dimension(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    /// Whether `upper` is reachable from `lower` by one or more edges.
    pub fn reaches(&self, lower: usize, upper: usize) -> bool {
        let mut stack = vec![lower];
        let mut seen = vec![false; self.node_count()];
        while let Some(n) = stack.pop() {
            for &m in &self.above[n] {
                if m == upper {
                    return true;
                }
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        false
    }

    /// Graphviz text with nodes labelled in brace notation, edges pointing up.
    pub fn to_dot(&self, family: &SetFamily) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, m) in family.members().iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", family.show(m));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Hasse diagram of `(F, ⊆)`.
///
/// Canonical member order lists smaller sets first, so it is a linear
/// extension of inclusion. For each member, its strict subsets are scanned
/// largest first and kept only if they sit under no already-kept subset; the
/// kept ones are exactly its lower covers.
pub fn cover_dag(family: &SetFamily) -> CoverDag {
    let members = family.members();
    let m = members.len();
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); m];
    for b in 0..m {
        let mut kept: Vec<usize> = Vec::new();
        for a in (0..b).rev() {
            if !members[a].is_strict_subset(&members[b]) {
                continue;
            }
            if kept.iter().all(|&k| !members[a].is_subset(&members[k])) {
                kept.push(a);
            }
        }
        kept.sort_unstable();
        below[b] = kept;
    }
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut edges = Vec::new();
    for (b, lows) in below.iter().enumerate() {
        for &a in lows {
            above[a].push(b);
            edges.push((a, b));
        }
    }
    edges.sort_unstable();

    let mut height = vec![0usize; m];
    for b in 0..m {
        height[b] = below[b].iter().map(|&a| height[a] + 1).max().unwrap_or(0);
    }
    let mut coheight = vec![0usize; m];
    for a in (0..m).rev() {
        coheight[a] = above[a].iter().map(|&b| coheight[b] + 1).max().unwrap_or(0);
    }
    CoverDag {
        edges,
        below,
        above,
        height,
        coheight,
    }
}

/// Longest chain length, `|C| - 1`. Zero for empty and one-member families.
pub fn dimension(family: &SetFamily) -> usize {
    cover_dag(family).dimension()
}

/// Inclusion-minimal sets of an arbitrary collection, in input order.
pub fn minimal_of(sets: &[ESet]) -> Vec<ESet> {
    sets.iter()
        .filter(|a| !sets.iter().any(|b| b.is_strict_subset(a)))
        .cloned()
        .collect()
}

/// Inclusion-maximal sets of an arbitrary collection, in input order.
pub fn maximal_of(sets: &[ESet]) -> Vec<ESet> {
    sets.iter()
        .filter(|a| !sets.iter().any(|b| a.is_strict_subset(b)))
        .cloned()
        .collect()
}

pub fn minimal_members(family: &SetFamily) -> Vec<ESet> {
    minimal_of(family.members())
}

pub fn maximal_members(family: &SetFamily) -> Vec<ESet> {
    maximal_of(family.members())
}

/// `{B ∈ F : B ⊇ A}`.
pub fn up_set(family: &SetFamily, a: &ESet) -> Result<Vec<ESet>> {
    family.require_member(a)?;
    Ok(family
        .members()
        .iter()
        .filter(|b| a.is_subset(b))
        .cloned()
        .collect())
}

/// `{B ∈ F : B ⊆ A}`.
pub fn down_set(family: &SetFamily, a: &ESet) -> Result<Vec<ESet>> {
    family.require_member(a)?;
    Ok(family
        .members()
        .iter()
        .filter(|b| b.is_subset(a))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    fn shown_edges(f: &SetFamily) -> Vec<(String, String)> {
        cover_dag(f)
            .edges()
            .iter()
            .map(|&(a, b)| (f.show(f.member(a)), f.show(f.member(b))))
            .collect()
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = v
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn dim_two_hasse_diagram() {
        let f = fixtures::dim_two();
        let mut got = shown_edges(&f);
        got.sort();
        assert_eq!(
            got,
            pairs(&[
                ("{1,2}", "{1,2,3}"),
                ("{1,2,3}", "{1,2,3,4}"),
                ("{2,3}", "{1,2,3}"),
                ("{2,3}", "{2,3,4}"),
                ("{2,3,4}", "{1,2,3,4}"),
                ("{3,4}", "{2,3,4}"),
            ])
        );
    }

    #[test]
    fn chain_edges() {
        let f = SetFamily::from_sets([vec![], vec!["1"], vec!["1", "2"]]);
        let mut got = shown_edges(&f);
        got.sort();
        assert_eq!(got, pairs(&[("{}", "{1}"), ("{1}", "{1,2}")]));
    }

    #[test]
    fn optimal_not_abundant_hasse_diagram() {
        let f = fixtures::optimal_not_abundant();
        let mut got = shown_edges(&f);
        got.sort();
        assert_eq!(
            got,
            pairs(&[
                ("{1,2}", "{1,2,3}"),
                ("{2,3}", "{1,2,3}"),
                ("{1,3}", "{1,2,3}"),
                ("{2}", "{1,2}"),
                ("{2}", "{2,3}"),
                ("{3}", "{2,3}"),
                ("{3}", "{1,3}"),
                ("{}", "{2}"),
                ("{}", "{3}"),
            ])
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&fixtures::dim_two()), 2);
        assert_eq!(dimension(&fixtures::optimal_not_abundant()), 3);
        assert_eq!(dimension(&fixtures::no_cover()), 3);
        assert_eq!(dimension(&SetFamily::from_sets([vec!["a"]])), 0);
    }

    #[test]
    fn extremal_members() {
        let f = fixtures::covert_three();
        let three = f.require_element("3").unwrap();
        let out: Vec<ESet> = f
            .members_without(three)
            .map(|i| f.member(i).clone())
            .collect();
        let shown: Vec<String> = minimal_of(&out).iter().map(|s| f.show(s)).collect();
        assert_eq!(shown, vec!["{1,2}", "{2,4}"]);

        let s = SetFamily::from_sets([vec!["a"]]);
        assert_eq!(minimal_members(&s), maximal_members(&s));

        let k = fixtures::no_cover();
        let mins: Vec<String> = minimal_members(&k).iter().map(|s| k.show(s)).collect();
        assert_eq!(mins, vec!["{1,2}", "{2,3}", "{3,4}", "{1,5}", "{4,5}"]);
        assert_eq!(maximal_members(&k), vec![k.universe()]);
    }

    #[test]
    fn up_and_down_sets() {
        let g = fixtures::tent_family()
            .merge(&fixtures::two_tent())
            .without_member(&ESet::empty());
        let one = g.set_of(["1"]).unwrap();
        let up: Vec<String> = up_set(&g, &one)
            .unwrap()
            .iter()
            .map(|s| g.show(s))
            .collect();
        assert_eq!(up, vec!["{1}", "{1,2}", "{1,3}"]);

        let f = fixtures::no_cover();
        assert_eq!(up_set(&f, &f.universe()).unwrap(), vec![f.universe()]);
        let m = minimal_members(&f)[0].clone();
        assert_eq!(down_set(&f, &m).unwrap(), vec![m]);
        let bogus = f.set_of(["1"]).unwrap();
        assert!(matches!(up_set(&f, &bogus), Err(Error::NotAMember(_))));
        assert!(matches!(down_set(&f, &bogus), Err(Error::NotAMember(_))));
    }

    #[test]
    fn dot_export() {
        let f = SetFamily::from_sets([vec!["1"], vec!["1", "2"]]);
        let dot = cover_dag(&f).to_dot(&f);
        assert!(dot.contains("n0 [label=\"{1}\"]"));
        assert!(dot.contains("n0 -> n1;"));
    }
}
