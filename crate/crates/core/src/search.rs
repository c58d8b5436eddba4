//! Exhaustive and sampled enumeration of families over `[n]`, `n <= 5`.
//!
//! A family over `[n]` is a `2^n`-bit mask: bit `s` set means the subset with
//! bitmask `s` is a member. Everything the claims need (union-closure,
//! neighborhoods, optimality, abundance, covers, dimension) is recomputed
//! here directly on those masks, independently of the library's `SetFamily`
//! code paths, and the two are compared family by family.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abundance::{
    abundant_elements, cover_injection, covert_min_check, dim2_witness, dim_le1_report,
    intersection_ix, optimal_elements, CoverOutcome,
};
use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, SetFamily};
use crate::poset::dimension;
use crate::quotient::{separating_quotient, verify_quotient};
use crate::tent::tent_abundant;
use crate::topology::{abundant_point, minimal_neighborhood, validate_topology};

/// Largest universe handled by this module.
pub const MAX_N: usize = 5;
/// Largest universe enumerated exhaustively.
pub const MAX_EXHAUSTIVE_N: usize = 4;

/// Members of `P([n])` containing element `x`, as a family mask.
fn containing(n: usize, x: usize) -> u32 {
    (0..1u32 << n)
        .filter(|s| s >> x & 1 == 1)
        .fold(0, |acc, s| acc | 1 << s)
}

fn all_subsets_mask(n: usize) -> u32 {
    if n == 5 {
        u32::MAX
    } else {
        (1u32 << (1 << n)) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallFamily {
    n: u8,
    mask: u32,
}

impl SmallFamily {
    pub fn new(n: usize, mask: u32) -> Self {
        assert!(n <= MAX_N, "universe size {n} exceeds {MAX_N}");
        SmallFamily {
            n: n as u8,
            mask: mask & all_subsets_mask(n),
        }
    }

    /// Family over `[n]` from subset bitmasks.
    pub fn from_subsets(n: usize, subsets: impl IntoIterator<Item = u8>) -> Self {
        Self::new(n, subsets.into_iter().fold(0, |acc, s| acc | 1 << s))
    }

    /// Re-encode a labelled family whose labels are `1..=n`.
    pub fn from_family(n: usize, family: &SetFamily) -> Option<Self> {
        let mut mask = 0u32;
        for m in family.members() {
            let mut s = 0u8;
            for i in m.iter() {
                let v: usize = family.labels()[i].parse().ok()?;
                if v == 0 || v > n {
                    return None;
                }
                s |= 1 << (v - 1);
            }
            mask |= 1 << s;
        }
        Some(Self::new(n, mask))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn members(&self) -> impl Iterator<Item = u8> {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let s = m.trailing_zeros() as u8;
            m &= m - 1;
            Some(s)
        })
    }

    pub fn has(&self, s: u8) -> bool {
        self.mask >> s & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn universe(&self) -> u8 {
        self.members().fold(0, |acc, s| acc | s)
    }

    pub fn universe_size(&self) -> usize {
        self.universe().count_ones() as usize
    }

    pub fn is_nontrivial(&self) -> bool {
        self.universe() != 0
    }

    pub fn is_union_closed(&self) -> bool {
        let members: Vec<u8> = self.members().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.has(a | b)))
    }

    pub fn is_intersection_closed(&self) -> bool {
        let members: Vec<u8> = self.members().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.has(a & b)))
    }

    /// `F_x` as a family mask.
    pub fn nbhd(&self, x: usize) -> u32 {
        self.mask & containing(self.n(), x)
    }

    pub fn count_in(&self, x: usize) -> usize {
        self.nbhd(x).count_ones() as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        let u = self.universe();
        (0..self.n()).filter(move |&x| u >> x & 1 == 1)
    }

    pub fn is_separating(&self) -> bool {
        let nb: Vec<u32> = self.elements().map(|x| self.nbhd(x)).collect();
        let distinct: HashSet<u32> = nb.iter().copied().collect();
        distinct.len() == nb.len()
    }

    pub fn is_abundant(&self, x: usize) -> bool {
        2 * self.count_in(x) >= self.len()
    }

    pub fn is_optimal(&self, x: usize) -> bool {
        let fx = self.nbhd(x);
        self.elements().all(|y| {
            let fy = self.nbhd(y);
            !(fx & !fy == 0 && fx != fy)
        })
    }

    /// `A ⊂_c B` in the family.
    pub fn covers(&self, a: u8, b: u8) -> bool {
        if !self.has(a) || !self.has(b) || a == b || a & !b != 0 {
            return false;
        }
        !self
            .members()
            .any(|c| c != a && c != b && a & !c == 0 && c & !b == 0)
    }

    /// Longest chain length.
    pub fn dimension(&self) -> usize {
        let mut height = [0usize; 32];
        let mut best = 0;
        // Every strict subset of s is numerically smaller than s.
        for s in self.members() {
            let h = self
                .members()
                .take_while(|&t| t < s)
                .filter(|&t| t & !s == 0)
                .map(|t| height[t as usize] + 1)
                .max()
                .unwrap_or(0);
            height[s as usize] = h;
            best = best.max(h);
        }
        best
    }

    pub fn permuted(&self, perm: &[usize]) -> SmallFamily {
        let map = |s: u8| -> u8 {
            (0..self.n())
                .filter(|&i| s >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << perm[i])
        };
        SmallFamily::from_subsets(self.n(), self.members().map(map))
    }

    /// Least family mask over all relabelings of `[n]`.
    pub fn canonical(&self) -> SmallFamily {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        let mut best = *self;
        permutations(&mut perm, 0, &mut |p| {
            let f = self.permuted(p);
            if f.mask < best.mask {
                best = f;
            }
        });
        best
    }

    fn label(x: usize) -> String {
        (x + 1).to_string()
    }

    pub fn sets(&self) -> Vec<Vec<String>> {
        self.members()
            .map(|s| {
                (0..self.n())
                    .filter(|&i| s >> i & 1 == 1)
                    .map(Self::label)
                    .collect()
            })
            .collect()
    }

    pub fn to_set_family(&self) -> SetFamily {
        SetFamily::from_sets(self.sets())
    }

    fn subset_in(&self, family: &SetFamily, s: u8) -> ESet {
        (0..self.n())
            .filter(|&i| s >> i & 1 == 1)
            .map(|i| family.element(&Self::label(i)).expect("label present").0)
            .collect()
    }

    fn element_in(&self, family: &SetFamily, x: usize) -> ElementId {
        family.element(&Self::label(x)).expect("label present")
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    pub union_closed: bool,
    pub separating: bool,
    pub nontrivial: bool,
    pub min_dim: Option<usize>,
    pub max_dim: Option<usize>,
}

impl Filters {
    pub fn union_closed_nontrivial() -> Self {
        Filters {
            union_closed: true,
            nontrivial: true,
            ..Default::default()
        }
    }

    pub fn accepts(&self, f: &SmallFamily) -> bool {
        if self.nontrivial && !f.is_nontrivial() {
            return false;
        }
        if self.union_closed && !f.is_union_closed() {
            return false;
        }
        if self.separating && !f.is_separating() {
            return false;
        }
        if self.min_dim.is_some() || self.max_dim.is_some() {
            let d = f.dimension();
            if self.min_dim.is_some_and(|m| d < m) || self.max_dim.is_some_and(|m| d > m) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub count: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub n: usize,
    pub filters: Filters,
    /// Required for `n = 5`; switches any `n` to seeded sampling.
    pub sample: Option<Sampling>,
}

impl EnumerationQuery {
    pub fn exhaustive(n: usize, filters: Filters) -> Self {
        EnumerationQuery {
            n,
            filters,
            sample: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n > MAX_N {
            return Err(Error::Unsupported(format!(
                "universes larger than {MAX_N} are not enumerated (asked for {})",
                self.n
            )));
        }
        if self.n > MAX_EXHAUSTIVE_N && self.sample.is_none() {
            return Err(Error::Unsupported(format!(
                "n = {} needs sampling; exhaustive enumeration stops at {MAX_EXHAUSTIVE_N}",
                self.n
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFinding {
    pub claim: String,
    pub passed: bool,
    /// Families generated (before filtering).
    pub examined: u64,
    /// Families passing the filters.
    pub matched: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, i64>,
}

impl SearchFinding {
    fn new(claim: &str) -> Self {
        SearchFinding {
            claim: claim.to_string(),
            passed: true,
            ..Default::default()
        }
    }

    fn merge(&mut self, other: SearchFinding) {
        self.examined += other.examined;
        self.matched += other.matched;
        self.violations += other.violations;
        if self.counterexample.is_none() && other.counterexample.is_some() {
            self.counterexample = other.counterexample;
            self.detail = other.detail;
        }
        self.passed = self.violations == 0;
    }
}

/// Uniformly random subset of `P([n])`, or, when union-closure is required,
/// the union closure of a few random seed sets.
fn sample_family(rng: &mut ChaCha8Rng, n: usize, union_closed: bool) -> SmallFamily {
    if !union_closed {
        return SmallFamily::new(n, rng.gen());
    }
    let k = rng.gen_range(1..=6);
    let seeds = (0..k).map(|_| rng.gen_range(0..1u32 << n) as u8);
    union_closure_small(SmallFamily::from_subsets(n, seeds))
}

pub fn union_closure_small(f: SmallFamily) -> SmallFamily {
    let mut cur = f;
    loop {
        let members: Vec<u8> = cur.members().collect();
        let mut next = cur.mask;
        for &a in &members {
            for &b in &members {
                next |= 1 << (a | b);
            }
        }
        if next == cur.mask {
            return cur;
        }
        cur = SmallFamily::new(f.n(), next);
    }
}

/// Visit every family the query selects, in mask order (or sample order).
pub fn for_each_family(q: &EnumerationQuery, mut visit: impl FnMut(&SmallFamily)) -> Result<u64> {
    q.validate()?;
    let mut examined = 0;
    match q.sample {
        None => {
            let total = 1u64 << (1u32 << q.n);
            for mask in 0..total {
                examined += 1;
                let f = SmallFamily::new(q.n, mask as u32);
                if q.filters.accepts(&f) {
                    visit(&f);
                }
            }
        }
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            for _ in 0..s.count {
                examined += 1;
                let f = sample_family(&mut rng, q.n, q.filters.union_closed);
                if q.filters.accepts(&f) {
                    visit(&f);
                }
            }
        }
    }
    Ok(examined)
}

/// Apply `predicate` to every selected family. The first failure (in
/// enumeration order) is kept as the counterexample after re-checking it.
pub fn enumerate<P>(q: &EnumerationQuery, claim: &str, predicate: P) -> Result<SearchFinding>
where
    P: Fn(&SmallFamily) -> std::result::Result<(), String>,
{
    let mut finding = SearchFinding::new(claim);
    let mut first: Option<(SmallFamily, String)> = None;
    finding.examined = for_each_family(q, |f| {
        finding.matched += 1;
        if let Err(why) = predicate(f) {
            finding.violations += 1;
            if first.is_none() {
                first = Some((*f, why));
            }
        }
    })?;
    if let Some((f, why)) = first {
        if predicate(&f).is_ok() {
            return Err(Error::Internal(format!(
                "counterexample for {claim} did not reproduce"
            )));
        }
        finding.counterexample = Some(f.sets());
        finding.detail = Some(why);
    }
    finding.passed = finding.violations == 0;
    Ok(finding)
}

/// Exhaustive [`enumerate`] split into mask-prefix partitions evaluated on the
/// rayon pool. Produces the same finding regardless of `partitions`.
pub fn enumerate_parallel<P>(
    q: &EnumerationQuery,
    claim: &str,
    partitions: usize,
    predicate: P,
) -> Result<SearchFinding>
where
    P: Fn(&SmallFamily) -> std::result::Result<(), String> + Sync,
{
    q.validate()?;
    if q.sample.is_some() {
        return enumerate(q, claim, predicate);
    }
    let total = 1u64 << (1u32 << q.n);
    let parts = partitions.clamp(1, total as usize) as u64;
    let chunk = total.div_ceil(parts);
    let partials: Vec<SearchFinding> = (0..parts)
        .into_par_iter()
        .map(|p| {
            let mut part = SearchFinding::new(claim);
            for mask in p * chunk..((p + 1) * chunk).min(total) {
                part.examined += 1;
                let f = SmallFamily::new(q.n, mask as u32);
                if !q.filters.accepts(&f) {
                    continue;
                }
                part.matched += 1;
                if let Err(why) = predicate(&f) {
                    part.violations += 1;
                    if part.counterexample.is_none() {
                        part.counterexample = Some(f.sets());
                        part.detail = Some(why);
                    }
                }
            }
            part
        })
        .collect();
    let mut finding = SearchFinding::new(claim);
    for part in partials {
        finding.merge(part);
    }
    Ok(finding)
}

fn check(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

type Claim = fn(&SmallFamily) -> std::result::Result<(), String>;

/// Every optimal element of a union-closed family of dimension <= 2 is
/// abundant; for separating dimension-two families the library's dim-2
/// witness exists and is made of covers.
fn claim_dim2(f: &SmallFamily) -> std::result::Result<(), String> {
    for x in f.elements().filter(|&x| f.is_optimal(x)) {
        check(f.is_abundant(x), || {
            format!("optimal {} is not abundant", x + 1)
        })?;
    }
    if f.dimension() == 2 && f.is_separating() {
        let fam = f.to_set_family();
        for x in f.elements().filter(|&x| f.is_optimal(x)) {
            let w = dim2_witness(&fam, f.element_in(&fam, x)).map_err(|e| e.to_string())?;
            for (a, b) in &w.pairs {
                let sa = f.members().find(|&s| f.subset_in(&fam, s) == *a);
                let sb = f.members().find(|&s| f.subset_in(&fam, s) == *b);
                let (Some(sa), Some(sb)) = (sa, sb) else {
                    return Err("witness set is not a member".into());
                };
                check(f.covers(sa, sb) && sb >> x & 1 == 1, || {
                    format!("dim-2 pair {sa:#b} -> {sb:#b} is not an x-cover")
                })?;
            }
        }
    }
    Ok(())
}

fn claim_dim_le1(f: &SmallFamily) -> std::result::Result<(), String> {
    for x in f.elements() {
        check(f.is_abundant(x), || format!("{} not abundant", x + 1))?;
        check(f.len() - f.count_in(x) <= 1, || {
            format!("{} misses more than one member", x + 1)
        })?;
    }
    dim_le1_report(&f.to_set_family())
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn claim_covert_min(f: &SmallFamily) -> std::result::Result<(), String> {
    let fam = f.to_set_family();
    for x in f.elements() {
        let full = f
            .members()
            .filter(|&a| a >> x & 1 == 0)
            .all(|a| f.has(a | 1 << x));
        let lib = covert_min_check(&fam, f.element_in(&fam, x)).map_err(|e| e.to_string())?;
        check(lib == full, || {
            format!(
                "min-member check says {lib}, full check says {full} for {}",
                x + 1
            )
        })?;
    }
    Ok(())
}

fn claim_cover_at_most_one(f: &SmallFamily) -> std::result::Result<(), String> {
    let fam = f.to_set_family();
    for x in f.elements() {
        for b in f.members().filter(|&b| b >> x & 1 == 1) {
            let covered = f
                .members()
                .filter(|&a| a >> x & 1 == 0 && f.covers(a, b))
                .count();
            check(covered <= 1, || {
                format!("{b:#b} covers {covered} members avoiding {}", x + 1)
            })?;
        }
        // Total cover maps are self-verified as injections.
        if let CoverOutcome::Injection(_) =
            cover_injection(&fam, f.element_in(&fam, x)).map_err(|e| e.to_string())?
        {}
    }
    Ok(())
}

fn claim_ix(f: &SmallFamily) -> std::result::Result<(), String> {
    let fam = f.to_set_family();
    for x in f.elements().filter(|&x| f.is_optimal(x)) {
        let direct = f
            .members()
            .filter(|&s| s >> x & 1 == 1)
            .fold(u8::MAX, |acc, s| acc & s);
        check(direct == 1 << x, || format!("I_{} = {direct:#b}", x + 1))?;
        let lib = intersection_ix(&fam, f.element_in(&fam, x));
        check(lib == ESet::singleton(f.element_in(&fam, x).0), || {
            format!("library I_{} is {}", x + 1, fam.show(&lib))
        })?;
    }
    Ok(())
}

fn claim_abundant_exists(f: &SmallFamily) -> std::result::Result<(), String> {
    check(f.elements().any(|x| f.is_abundant(x)), || {
        "no abundant element".into()
    })?;
    let fam = f.to_set_family();
    for r in abundant_elements(&fam) {
        let x: usize = r.element.parse::<usize>().map_err(|e| e.to_string())? - 1;
        check(
            r.count_in == f.count_in(x) && r.abundant == f.is_abundant(x),
            || format!("library report for {} disagrees", r.element),
        )?;
        check(r.optimal == f.is_optimal(x), || {
            format!("library optimality for {} disagrees", r.element)
        })?;
    }
    Ok(())
}

fn claim_singleton_abundant(f: &SmallFamily) -> std::result::Result<(), String> {
    for x in f.elements().filter(|&x| f.has(1 << x)) {
        check(f.is_abundant(x), || {
            format!("{{{}}} is a member but not abundant", x + 1)
        })?;
    }
    Ok(())
}

fn claim_optimal_exists(f: &SmallFamily) -> std::result::Result<(), String> {
    check(f.elements().any(|x| f.is_optimal(x)), || {
        "no optimal element".into()
    })?;
    let fam = f.to_set_family();
    let lib = optimal_elements(&fam).len();
    let direct = f.elements().filter(|&x| f.is_optimal(x)).count();
    check(lib == direct, || {
        format!("library finds {lib} optimal, direct {direct}")
    })
}

fn claim_quotient(f: &SmallFamily) -> std::result::Result<(), String> {
    let fam = f.to_set_family();
    let q = separating_quotient(&fam).map_err(|e| e.to_string())?;
    let r = verify_quotient(&fam, &q);
    check(r.passed(), || format!("{r:?}"))?;
    check(dimension(&q.quotient) == f.dimension(), || {
        "quotient changed the dimension".into()
    })
}

const CLAIMS: &[(&str, Filters, Claim)] = &[
    (
        "dim2-optimal-abundant",
        Filters {
            union_closed: true,
            separating: false,
            nontrivial: true,
            min_dim: None,
            max_dim: Some(2),
        },
        claim_dim2,
    ),
    (
        "dim-le1-all-abundant",
        Filters {
            union_closed: true,
            separating: false,
            nontrivial: true,
            min_dim: None,
            max_dim: Some(1),
        },
        claim_dim_le1,
    ),
    ("covert-min-equivalence", UC_NT, claim_covert_min),
    ("cover-at-most-one", UC_NT, claim_cover_at_most_one),
    (
        "ix-singleton",
        Filters {
            union_closed: true,
            separating: true,
            nontrivial: true,
            min_dim: None,
            max_dim: None,
        },
        claim_ix,
    ),
    ("abundant-exists", UC_NT, claim_abundant_exists),
    ("singleton-abundant", UC_NT, claim_singleton_abundant),
    ("optimal-exists", UC_NT, claim_optimal_exists),
];

const UC_NT: Filters = Filters {
    union_closed: true,
    separating: false,
    nontrivial: true,
    min_dim: None,
    max_dim: None,
};

/// Names of the per-family claims checked by [`verify_claims`].
pub fn claim_names() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.0).collect()
}

/// Run one named claim over the families of `[n]` (sampled when `sample`
/// is given).
pub fn verify_one_claim(name: &str, n: usize, sample: Option<Sampling>) -> Result<SearchFinding> {
    let (claim, filters, pred) = CLAIMS
        .iter()
        .find(|c| c.0 == name)
        .ok_or_else(|| Error::Unsupported(format!("unknown claim {name:?}")))?;
    let q = EnumerationQuery {
        n,
        filters: *filters,
        sample,
    };
    enumerate(&q, claim, pred)
}

/// Statistics of separating union-closed families with an optimal element
/// that is not abundant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityStats {
    pub examined: u64,
    pub families: u64,
    pub min_members: Option<usize>,
    pub min_universe: Option<usize>,
    pub min_count_in: Option<usize>,
    pub min_dimension: Option<usize>,
    /// Canonical forms of the families of minimum size.
    pub smallest: Vec<u32>,
}

pub fn optimal_not_abundant_stats(n: usize, sample: Option<Sampling>) -> Result<MinimalityStats> {
    let q = EnumerationQuery {
        n,
        filters: Filters {
            union_closed: true,
            separating: true,
            nontrivial: true,
            ..Default::default()
        },
        sample,
    };
    let mut st = MinimalityStats::default();
    let mut smallest: Vec<SmallFamily> = Vec::new();
    st.examined = for_each_family(&q, |f| {
        let bad: Vec<usize> = f
            .elements()
            .filter(|&x| f.is_optimal(x) && !f.is_abundant(x))
            .collect();
        if bad.is_empty() {
            return;
        }
        st.families += 1;
        let upd = |slot: &mut Option<usize>, v: usize| {
            *slot = Some(slot.map_or(v, |s| s.min(v)));
        };
        upd(&mut st.min_universe, f.universe_size());
        upd(&mut st.min_dimension, f.dimension());
        for &x in &bad {
            upd(&mut st.min_count_in, f.count_in(x));
        }
        match st.min_members {
            Some(m) if f.len() > m => {}
            Some(m) if f.len() == m => smallest.push(*f),
            _ => {
                st.min_members = Some(f.len());
                smallest = vec![*f];
            }
        }
    })?;
    let mut canon: Vec<u32> = smallest.iter().map(|f| f.canonical().mask).collect();
    canon.sort_unstable();
    canon.dedup();
    st.smallest = canon;
    Ok(st)
}

/// The seven-member optimal-not-abundant family, embedded in `[n]`.
pub fn seven_member_reference(n: usize) -> Option<SmallFamily> {
    if n < 3 {
        return None;
    }
    SmallFamily::from_family(n, &crate::fixtures::optimal_not_abundant())
}

fn minimality_finding(n: usize, sample: Option<Sampling>) -> Result<SearchFinding> {
    let st = optimal_not_abundant_stats(n, sample)?;
    let mut f = SearchFinding::new("optimal-not-abundant-minimality");
    f.examined = st.examined;
    f.matched = st.families;
    let below = [
        (st.min_members, 7, "members"),
        (st.min_universe, 3, "universe"),
        (st.min_count_in, 3, "count_in"),
        (st.min_dimension, 3, "dimension"),
    ];
    for (value, bound, what) in below {
        if let Some(v) = value {
            f.stats.insert(format!("min_{what}"), v as i64);
            if v < bound {
                f.violations += 1;
                f.detail = Some(format!("min {what} is {v}, below {bound}"));
            }
        }
    }
    f.stats.insert("families".into(), st.families as i64);
    if n >= 3 && sample.is_none() {
        let attained = below.iter().all(|(v, b, _)| *v == Some(*b));
        let reference = seven_member_reference(n).map(|r| r.canonical().mask);
        let contains_reference = reference.is_some_and(|r| st.smallest.contains(&r));
        f.stats
            .insert("smallest_classes".into(), st.smallest.len() as i64);
        if !attained || !contains_reference {
            f.violations += 1;
            f.detail = Some(format!(
                "bounds not attained with equality (attained={attained}, reference found={contains_reference})"
            ));
        }
    } else if n < 3 && st.families > 0 {
        f.violations += 1;
        f.detail = Some("optimal-not-abundant family on fewer than 3 points".into());
    }
    f.passed = f.violations == 0;
    Ok(f)
}

/// Every per-family claim plus the minimality claim, over `[n]`.
pub fn verify_claims(n: usize) -> Result<Vec<SearchFinding>> {
    verify_claims_with(n, None)
}

pub fn verify_claims_with(n: usize, sample: Option<Sampling>) -> Result<Vec<SearchFinding>> {
    let mut out = Vec::new();
    for (name, _, _) in CLAIMS {
        out.push(verify_one_claim(name, n, sample)?);
    }
    out.push(minimality_finding(n, sample)?);
    Ok(out)
}

/// Quotient checks for every nontrivial family over `[n]`.
pub fn verify_quotients(n: usize, union_closed_only: bool) -> Result<SearchFinding> {
    let q = EnumerationQuery::exhaustive(
        n,
        Filters {
            union_closed: union_closed_only,
            nontrivial: true,
            ..Default::default()
        },
    );
    enumerate(&q, "quotient-preservation", claim_quotient)
}

/// Topologies on `[n]`: families containing `∅` and `[n]`, closed under
/// union and intersection.
pub fn topologies(n: usize) -> Result<Vec<SmallFamily>> {
    let full = ((1u32 << n) - 1) as u8;
    let q = EnumerationQuery::exhaustive(n, Filters::default());
    let mut out = Vec::new();
    for_each_family(&q, |f| {
        if f.has(0) && f.has(full) && f.is_union_closed() && f.is_intersection_closed() {
            out.push(*f);
        }
    })?;
    Ok(out)
}

fn claim_topology(f: &SmallFamily) -> std::result::Result<(), String> {
    let points: Vec<String> = (1..=f.n()).map(|i| i.to_string()).collect();
    let space = validate_topology(&points, f.sets()).map_err(|e| e.to_string())?;
    let opens = space.opens();
    let p = abundant_point(&space).map_err(|e| e.to_string())?;
    let x: usize = opens
        .label(p.point)
        .parse::<usize>()
        .map_err(|e| e.to_string())?
        - 1;
    check(2 * f.count_in(x) >= f.len(), || {
        format!(
            "point {} lies in {} of {} opens",
            x + 1,
            f.count_in(x),
            f.len()
        )
    })?;
    // The chosen class must have an open singleton in the T0 quotient.
    let q = separating_quotient(opens).map_err(|e| e.to_string())?;
    let cls = q.class_of[p.point.0];
    check(q.quotient.contains_member(&ESet::singleton(cls.0)), || {
        format!("{{[{}]}} is not open in the T0 quotient", x + 1)
    })?;
    for a in opens.elements() {
        let u = minimal_neighborhood(&space, a).map_err(|e| e.to_string())?;
        let least = opens.members_with(a).all(|i| u.is_subset(opens.member(i)));
        check(least && opens.contains_member(&u), || {
            format!("least neighborhood of {} is wrong", opens.label(a))
        })?;
    }
    Ok(())
}

/// `abundant_point` on every topology over `[n]`.
pub fn verify_topologies(n: usize) -> Result<SearchFinding> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::Unsupported(format!(
            "topologies are enumerated for 1..={MAX_EXHAUSTIVE_N} points"
        )));
    }
    let spaces = topologies(n)?;
    let mut finding = SearchFinding::new("topology-abundant-point");
    finding.examined = 1u64 << (1u32 << n);
    for f in &spaces {
        finding.matched += 1;
        if let Err(why) = claim_topology(f) {
            finding.violations += 1;
            if finding.counterexample.is_none() {
                finding.counterexample = Some(f.sets());
                finding.detail = Some(why);
            }
        }
    }
    finding.passed = finding.violations == 0;
    Ok(finding)
}

/// Compare the exhaustive union-closed set against two closure-based
/// generators: closures of random seed families, and closures of every
/// family.
pub fn closure_completeness(n: usize, samples: u64, seed: u64) -> Result<SearchFinding> {
    if n > 3 {
        return Err(Error::Unsupported(
            "closure completeness is checked for n <= 3".into(),
        ));
    }
    let mut exhaustive = HashSet::new();
    let examined = for_each_family(
        &EnumerationQuery::exhaustive(
            n,
            Filters {
                union_closed: true,
                ..Default::default()
            },
        ),
        |f| {
            exhaustive.insert(f.mask);
        },
    )?;
    let mut finding = SearchFinding::new("closure-completeness");
    finding.examined = examined;
    finding.matched = exhaustive.len() as u64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = HashSet::new();
    for _ in 0..samples {
        let f = sample_family(&mut rng, n, true);
        sampled.insert(f.mask);
    }
    let mut closed_all = HashSet::new();
    for mask in 0..1u64 << (1u32 << n) {
        closed_all.insert(union_closure_small(SmallFamily::new(n, mask as u32)).mask);
    }
    let missed: Vec<u32> = sampled
        .iter()
        .chain(closed_all.iter())
        .filter(|m| !exhaustive.contains(m))
        .copied()
        .collect();
    finding.violations = missed.len() as u64;
    if let Some(&m) = missed.first() {
        finding.counterexample = Some(SmallFamily::new(n, m).sets());
        finding.detail = Some("closure produced a family the exhaustive pass missed".into());
    }
    if closed_all != exhaustive {
        finding.violations += 1;
        finding.detail = Some("closure of all families differs from the exhaustive set".into());
    }
    finding
        .stats
        .insert("sampled_distinct".into(), sampled.len() as i64);
    finding.passed = finding.violations == 0;
    Ok(finding)
}

/// A random `(F, T)` meeting the tent theorem's hypotheses over at most
/// `max_universe` points: `T` a union-closed α-tent (α >= 2) and every
/// nonempty member of `F` containing a node of `T`. `F` is typically not
/// union-closed.
pub fn sample_tent_instance(rng: &mut impl Rng, max_universe: usize) -> (SetFamily, SetFamily) {
    assert!((2..=16).contains(&max_universe));
    let labels: Vec<String> = (1..=max_universe).map(|i| i.to_string()).collect();
    loop {
        let u = rng.gen_range(2..=max_universe);
        let apex: u32 = loop {
            let a = rng.gen_range(1..1u32 << u);
            if a.count_ones() >= 2 {
                break a;
            }
        };
        let want = rng.gen_range(2..=4);
        let mut nodes: Vec<u32> = Vec::new();
        for _ in 0..64 {
            if nodes.len() == want {
                break;
            }
            let s = rng.gen_range(1..1u32 << u) & apex;
            if s == 0 || s == apex || nodes.contains(&s) {
                continue;
            }
            if nodes.iter().all(|&n| n | s == apex) {
                nodes.push(s);
            }
        }
        if nodes.len() < 2 {
            continue;
        }
        let to_set = |m: u32| -> ESet { ESet::from_word(m as u64) };
        let mut tent: Vec<ESet> = nodes.iter().map(|&n| to_set(n)).collect();
        tent.push(to_set(apex));

        let mut fam = Vec::new();
        for _ in 0..rng.gen_range(0..=8) {
            let node = nodes[rng.gen_range(0..nodes.len())];
            let extra = rng.gen_range(0..1u32 << u);
            fam.push(to_set(node | extra));
        }
        if rng.gen_bool(0.5) {
            fam.push(ESet::empty());
        }
        return (
            SetFamily::from_masks(labels.clone(), fam),
            SetFamily::from_masks(labels.clone(), tent),
        );
    }
}

/// `count` random tent instances: each witness must verify against `F ∪ T`
/// and the returned element must lie in at least half of its members.
pub fn tent_suite(count: u64, seed: u64, max_universe: usize) -> Result<SearchFinding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut finding = SearchFinding::new("tent-random");
    for _ in 0..count {
        let (f, t) = sample_tent_instance(&mut rng, max_universe);
        finding.examined += 1;
        finding.matched += 1;
        let res = tent_abundant(&f, &t)
            .map_err(|e| e.to_string())
            .and_then(|out| {
                out.witness.verify(&out.combined)?;
                let c = &out.combined;
                check(2 * c.count_with(out.element) >= c.len(), || {
                    format!("{} is not abundant in F ∪ T", c.label(out.element))
                })
            });
        if let Err(why) = res {
            finding.violations += 1;
            if finding.counterexample.is_none() {
                finding.counterexample = Some(f.to_file().sets);
                finding.detail = Some(format!("tent {}: {why}", t.to_json()));
            }
        }
    }
    finding.passed = finding.violations == 0;
    Ok(finding)
}
