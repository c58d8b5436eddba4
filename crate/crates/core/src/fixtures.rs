//! Small named families used throughout the tests, the CLI docs and the
//! acceptance suite.

use crate::family::SetFamily;

fn family(sets: &[&[&str]]) -> SetFamily {
    SetFamily::from_sets(sets.iter().map(|s| s.iter().copied()))
}

/// Element 3 is covert: `{3}` is absent yet `A -> A ∪ {3}` maps `F_3^c` into `F`.
pub fn covert_three() -> SetFamily {
    family(&[
        &["1", "2", "3", "4"],
        &["1", "2", "4"],
        &["2", "3", "4"],
        &["1", "2"],
        &["2", "4"],
        &["1", "2", "3"],
    ])
}

/// Separating, union-closed, dimension two. Elements 2 and 3 are optimal;
/// element 1 is abundant but not optimal.
pub fn dim_two() -> SetFamily {
    family(&[
        &["1", "2", "3", "4"],
        &["1", "2", "3"],
        &["2", "3", "4"],
        &["1", "2"],
        &["2", "3"],
        &["3", "4"],
    ])
}

/// Seven members, dimension three: element 1 is optimal but not abundant.
pub fn optimal_not_abundant() -> SetFamily {
    family(&[
        &["1", "2", "3"],
        &["1", "2"],
        &["2", "3"],
        &["1", "3"],
        &["2"],
        &["3"],
        &[],
    ])
}

/// Sixteen members over `[5]`, dimension three. Every element is optimal and
/// abundant, yet every element has a member avoiding it with no cover that
/// contains it (for 1 that member is `{3,4}`).
pub fn no_cover() -> SetFamily {
    family(&[
        &["1", "2", "3", "4", "5"],
        &["1", "2", "3", "5"],
        &["1", "2", "3", "4"],
        &["2", "3", "4", "5"],
        &["1", "3", "4", "5"],
        &["1", "2", "4", "5"],
        &["1", "2", "3"],
        &["1", "2", "5"],
        &["1", "4", "5"],
        &["3", "4", "5"],
        &["2", "3", "4"],
        &["1", "2"],
        &["1", "5"],
        &["3", "4"],
        &["2", "3"],
        &["4", "5"],
    ])
}

/// `{∅, {1,3}, {2,4}}`: not union-closed, but its nonempty members dominate
/// [`two_tent`].
pub fn tent_family() -> SetFamily {
    family(&[&[], &["1", "3"], &["2", "4"]])
}

/// The union-closed 2-tent `{{1}, {2}, {1,2}}`.
pub fn two_tent() -> SetFamily {
    family(&[&["1"], &["2"], &["1", "2"]])
}

/// `{∅, {1}, {1,2}, {1,2,3}}` on `{1,2,3}`.
pub fn chain_topology() -> SetFamily {
    family(&[&[], &["1"], &["1", "2"], &["1", "2", "3"]])
}

/// All subsets of `{1,2}`.
pub fn discrete_pair() -> SetFamily {
    family(&[&[], &["1"], &["2"], &["1", "2"]])
}
