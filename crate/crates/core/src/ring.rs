//! Coefficient rings for bracket structures.
//!
//! Downstream code only talks to the [`Ring`] trait. The one concrete
//! implementation is [`FiniteRing`], the integers modulo `m`, whose elements
//! are stored as canonical residues in `0..m`.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A commutative unital ring with cheap, copyable elements.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: Self::Elem) -> bool;
    /// Multiplicative inverse, `None` for non-units.
    fn inverse(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Canonical text form, used in reports and rendered multisets.
    fn render(&self, a: Self::Elem) -> String;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    /// `a^e`; negative exponents require `a` to be a unit.
    fn pow(&self, a: Self::Elem, e: i64) -> Option<Self::Elem> {
        let base = if e < 0 { self.inverse(a)? } else { a };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            exp >>= 1;
        }
        Some(acc)
    }
}

/// The ring `Z_m` of integers modulo `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    modulus: u32,
}

impl FiniteRing {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Domain(format!("ring modulus must be at least 2, got {modulus}")));
        }
        Ok(FiniteRing { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Canonical residue of an arbitrary integer.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.modulus as i64) as u32
    }

    pub fn element(&self, v: i64) -> RingElement {
        RingElement { value: self.reduce(v), modulus: self.modulus }
    }

    /// All residues `0..m` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.modulus
    }

    /// The units of the ring in increasing order.
    pub fn units(&self) -> Vec<u32> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }
}

impl Ring for FiniteRing {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.modulus
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.modulus as u64) as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn is_unit(&self, a: u32) -> bool {
        (a as u64).gcd(&(self.modulus as u64)) == 1
    }

    fn inverse(&self, a: u32) -> Option<u32> {
        let m = self.modulus as i64;
        let eg = (a as i64).extended_gcd(&m);
        if eg.gcd != 1 {
            return None;
        }
        Some(eg.x.rem_euclid(m) as u32)
    }

    fn render(&self, a: u32) -> String {
        a.to_string()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.modulus)
    }
}

/// A residue tagged with the modulus of its ring.
///
/// Arithmetic between elements of different rings is rejected with
/// [`Error::RingMismatch`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    value: u32,
    modulus: u32,
}

impl RingElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn ring(&self) -> FiniteRing {
        FiniteRing { modulus: self.modulus }
    }

    fn same_ring(&self, other: &RingElement) -> Result<FiniteRing> {
        if self.modulus != other.modulus {
            return Err(Error::RingMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(self.ring())
    }

    fn wrap(&self, value: u32) -> RingElement {
        RingElement { value, modulus: self.modulus }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        let r = self.same_ring(other)?;
        Ok(self.wrap(r.add(self.value, other.value)))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        let r = self.same_ring(other)?;
        Ok(self.wrap(r.sub(self.value, other.value)))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        let r = self.same_ring(other)?;
        Ok(self.wrap(r.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(self.ring().neg(self.value))
    }

    pub fn is_unit(&self) -> bool {
        self.ring().is_unit(self.value)
    }

    pub fn inverse(&self) -> Result<RingElement> {
        match self.ring().inverse(self.value) {
            Some(v) => Ok(self.wrap(v)),
            None => Err(Error::Domain(format!("{} is not a unit in Z_{}", self.value, self.modulus))),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn canonical_residues() {
        let z9 = FiniteRing::new(9).unwrap();
        assert_eq!(z9.element(-1).value(), 8);
        let z5 = FiniteRing::new(5).unwrap();
        assert_eq!(z5.mul(3, 3), 4);
        let z6 = FiniteRing::new(6).unwrap();
        assert_eq!(z6.add(5, 5), 4);
    }

    #[test]
    fn small_modulus_rejected() {
        assert!(matches!(FiniteRing::new(1), Err(Error::Domain(_))));
        assert!(matches!(FiniteRing::new(0), Err(Error::Domain(_))));
    }

    #[test]
    fn units() {
        assert!(FiniteRing::new(9).unwrap().element(8).is_unit());
        assert!(!FiniteRing::new(6).unwrap().element(3).is_unit());
        assert!(FiniteRing::new(5).unwrap().element(4).is_unit());
    }

    #[test]
    fn inverses() {
        let inv = |m: u32, a: i64| FiniteRing::new(m).unwrap().element(a).inverse().unwrap().value();
        assert_eq!(inv(9, 8), 8);
        assert_eq!(inv(6, 5), 5);
        // brute force over Z_5
        let expected = (0..5u32).find(|b| (2 * b) % 5 == 1).unwrap();
        assert_eq!(expected, 3);
        assert_eq!(inv(5, 2), expected);
    }

    #[test]
    fn non_unit_inverse_names_element() {
        let err = FiniteRing::new(6).unwrap().element(3).inverse().unwrap_err();
        assert!(err.to_string().contains('3'), "{err}");
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = FiniteRing::new(5).unwrap().element(2);
        let b = FiniteRing::new(7).unwrap().element(2);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { left: 5, right: 7 })));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_sub(&b).is_err());
    }

    #[test]
    fn unit_count_is_euler_phi() {
        for m in 2..=100u32 {
            let phi = (1..=m).filter(|&k| gcd(k, m) == 1).count();
            assert_eq!(FiniteRing::new(m).unwrap().units().len(), phi, "m = {m}");
        }
    }

    #[test]
    fn pow_with_negative_exponent() {
        let z9 = FiniteRing::new(9).unwrap();
        assert_eq!(z9.pow(2, -1), Some(5));
        assert_eq!(z9.pow(2, 3), Some(8));
        assert_eq!(z9.pow(3, 0), Some(1));
        assert_eq!(z9.pow(3, -2), None);
    }

    proptest! {
        #[test]
        fn inverse_is_involutive(m in 2u32..200, a in 0u32..200) {
            let ring = FiniteRing::new(m).unwrap();
            let a = ring.element(a as i64);
            if a.is_unit() {
                let inv = a.inverse().unwrap();
                prop_assert_eq!(a.checked_mul(&inv).unwrap().value(), 1 % m);
                prop_assert_eq!(inv.inverse().unwrap(), a);
            } else {
                prop_assert!(a.inverse().is_err());
            }
        }
    }
}
