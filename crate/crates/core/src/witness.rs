//! Explicit injections `F_x^c -> F_x` certifying that an element is abundant.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::family::{ElementId, SetFamily};

/// How a witness was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Each `A` goes to an `x`-cover of `A`.
    Cover,
    /// `A -> A ∪ {x}` with `{x}` not a member.
    Covert,
    /// The dimension-two construction.
    Dim2,
    /// Tent pairing of up-sets, with `∅ -> apex` when needed.
    Tent,
    /// Canonical order pairing backed only by the count.
    Padding,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Cover => "cover",
            Method::Covert => "covert",
            Method::Dim2 => "dim2",
            Method::Tent => "tent",
            Method::Padding => "padding",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionWitness {
    pub element: ElementId,
    pub method: Method,
    /// `(A, φ(A))`, sorted by `A` in canonical order.
    pub pairs: Vec<(ESet, ESet)>,
}

impl InjectionWitness {
    pub fn new(element: ElementId, method: Method, mut pairs: Vec<(ESet, ESet)>) -> Self {
        pairs.sort();
        InjectionWitness {
            element,
            method,
            pairs,
        }
    }

    /// Check that the pairs form an injection whose domain is exactly
    /// `F_x^c` and whose image lies in `F_x`.
    pub fn verify(&self, family: &SetFamily) -> Result<(), String> {
        let x = self.element.0;
        if x >= family.universe_size() {
            return Err(format!("element index {x} outside the universe"));
        }
        let mut domain = HashSet::new();
        let mut image = HashSet::new();
        for (a, b) in &self.pairs {
            if !family.contains_member(a) {
                return Err(format!("{} is not a member", family.show(a)));
            }
            if a.contains(x) {
                return Err(format!(
                    "{} contains {}",
                    family.show(a),
                    family.label(self.element)
                ));
            }
            if !domain.insert(a) {
                return Err(format!("{} is mapped twice", family.show(a)));
            }
            if !family.contains_member(b) || !b.contains(x) {
                return Err(format!(
                    "image {} of {} is not a member containing {}",
                    family.show(b),
                    family.show(a),
                    family.label(self.element)
                ));
            }
            if !image.insert(b) {
                return Err(format!("{} is hit twice", family.show(b)));
            }
        }
        let expected = family.members_without(self.element).count();
        if domain.len() != expected {
            return Err(format!(
                "domain has {} sets but {expected} members avoid {}",
                domain.len(),
                family.label(self.element)
            ));
        }
        Ok(())
    }

    /// [`verify`](Self::verify), turning a failure into [`Error::Internal`].
    pub(crate) fn checked(self, family: &SetFamily) -> Result<Self> {
        match self.verify(family) {
            Ok(()) => Ok(self),
            Err(why) => Err(Error::Internal(format!(
                "{} witness for {} failed verification: {why}",
                self.method,
                family.label(self.element)
            ))),
        }
    }

    pub fn to_doc(&self, family: &SetFamily) -> WitnessDoc {
        WitnessDoc {
            element: family.label(self.element).to_string(),
            method: self.method,
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| (family.labels_of(a), family.labels_of(b)))
                .collect(),
        }
    }
}

/// JSON form: `{"element": "3", "method": "covert", "pairs": [[["1","2"],["1","2","3"]], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub element: String,
    pub method: Method,
    pub pairs: Vec<(Vec<String>, Vec<String>)>,
}

impl WitnessDoc {
    /// Rebuild the witness against `family`, failing on unknown labels.
    pub fn resolve(&self, family: &SetFamily) -> Result<InjectionWitness> {
        let element = family.require_element(&self.element)?;
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| Ok((family.set_of(a)?, family.set_of(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(InjectionWitness::new(element, self.method, pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_broken_maps() {
        let f = fixtures::covert_three();
        let x = f.require_element("3").unwrap();
        let s = |l: &[&str]| f.set_of(l).unwrap();
        let good = InjectionWitness::new(
            x,
            Method::Covert,
            vec![
                (s(&["1", "2"]), s(&["1", "2", "3"])),
                (s(&["2", "4"]), s(&["2", "3", "4"])),
                (s(&["1", "2", "4"]), s(&["1", "2", "3", "4"])),
            ],
        );
        assert!(good.verify(&f).is_ok());

        let mut collide = good.clone();
        collide.pairs[1].1 = s(&["1", "2", "3"]);
        assert!(collide.verify(&f).unwrap_err().contains("hit twice"));

        let mut short = good.clone();
        short.pairs.pop();
        assert!(short.verify(&f).unwrap_err().contains("domain"));

        let mut wrong_image = good.clone();
        wrong_image.pairs[0].1 = s(&["1", "2", "4"]);
        assert!(wrong_image.verify(&f).is_err());

        assert!(matches!(collide.checked(&f), Err(Error::Internal(_))));
    }

    #[test]
    fn json_shape() {
        let f = fixtures::covert_three();
        let x = f.require_element("3").unwrap();
        let w = InjectionWitness::new(
            x,
            Method::Covert,
            vec![(
                f.set_of(["1", "2"]).unwrap(),
                f.set_of(["1", "2", "3"]).unwrap(),
            )],
        );
        let json = serde_json::to_string(&w.to_doc(&f)).unwrap();
        assert_eq!(
            json,
            r#"{"element":"3","method":"covert","pairs":[[["1","2"],["1","2","3"]]]}"#
        );
        let back: WitnessDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve(&f).unwrap(), w);
    }
}
