//! Finite formal integer combinations of braid-group elements, canonicalized
//! by Garside normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::garside::{nf_mul, GarsideContext, NormalForm};

/// Element of the integral group ring of a finite-type Artin group. Keys are
/// canonical normal forms; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<NormalForm, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::monomial(NormalForm::identity(), BigInt::from(1))
    }

    pub fn monomial(nf: NormalForm, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(nf, coeff);
        }
        GroupRingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalForm, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, nf: NormalForm, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(nf) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (nf, c) in &other.terms {
            out.add_term(nf.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// Ring product; the left factor multiplies on the left in word order.
    pub fn mul(&self, ctx: &GarsideContext, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(nf_mul(ctx, w, v), a * b);
            }
        }
        out
    }

    pub fn min_delta_power(&self) -> Option<i64> {
        self.terms.keys().map(|nf| nf.delta_power).min()
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(&NormalForm, &BigInt)> = self.terms.iter().collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupRingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(NormalForm, BigInt)> = Vec::deserialize(deserializer)?;
        let mut out = GroupRingElement::zero();
        for (nf, c) in pairs {
            out.add_term(nf, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::coxeter::CoxeterSystem;
    use crate::garside::normal_form;

    #[test]
    fn ring_axioms_on_small_products() {
        let sys = CoxeterSystem::type_a(2);
        let ctx = GarsideContext::new(sys);
        let nf = |s: &str| normal_form(&ctx, &parse_word(s, sys).unwrap());
        // (1 - s1)(1 + s1) = 1 + s1 - s1 - s1^2 = 1 - s1^2
        let mut a = GroupRingElement::one();
        a.add_term(nf("1"), BigInt::from(-1));
        let mut b = GroupRingElement::one();
        b.add_term(nf("1"), BigInt::from(1));
        let prod = a.mul(&ctx, &b);
        let mut expected = GroupRingElement::one();
        expected.add_term(nf("1 1"), BigInt::from(-1));
        assert_eq!(prod, expected);
        // cancellation to zero: (s1 s2 s1) - (s2 s1 s2) = 0
        let mut c = GroupRingElement::monomial(nf("1 2 1"), BigInt::from(1));
        c.add_term(nf("2 1 2"), BigInt::from(-1));
        assert!(c.is_zero());
    }

    #[test]
    fn serde_roundtrip() {
        let sys = CoxeterSystem::type_a(2);
        let ctx = GarsideContext::new(sys);
        let nf = |s: &str| normal_form(&ctx, &parse_word(s, sys).unwrap());
        let mut a = GroupRingElement::one();
        a.add_term(nf("1 2"), BigInt::from(-3));
        a.add_term(nf("-1"), BigInt::from(7));
        let json = serde_json::to_string(&a).unwrap();
        let back: GroupRingElement = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
