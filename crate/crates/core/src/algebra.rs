//! The torus algebra A(T²) over F₂.
//!
//! A(T²) is eight-dimensional: two orthogonal idempotents ι₀, ι₁ and six
//! Reeb-chord elements. A chord ρ_I is an interval `[start, end)` on the
//! boundary circle cut open at the basepoint, with `1 <= start < end <= 4`.
//! Two chords multiply to their concatenation when the first ends where the
//! second starts; every other product of chords vanishes. The algebra has no
//! differential.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idempotent {
    Iota0,
    Iota1,
}

impl Idempotent {
    pub const ALL: [Idempotent; 2] = [Idempotent::Iota0, Idempotent::Iota1];

    pub fn other(self) -> Idempotent {
        match self {
            Idempotent::Iota0 => Idempotent::Iota1,
            Idempotent::Iota1 => Idempotent::Iota0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Idempotent::Iota0 => "iota0",
            Idempotent::Iota1 => "iota1",
        }
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Idempotent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iota0" => Ok(Idempotent::Iota0),
            "iota1" => Ok(Idempotent::Iota1),
            other => Err(Error::UnknownToken(other.to_string())),
        }
    }
}

/// A basis element of A(T²), or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraElement {
    Zero,
    Idem(Idempotent),
    Rho1,
    Rho2,
    Rho3,
    Rho12,
    Rho23,
    Rho123,
}

use AlgebraElement::*;

impl AlgebraElement {
    pub const IOTA0: AlgebraElement = Idem(Idempotent::Iota0);
    pub const IOTA1: AlgebraElement = Idem(Idempotent::Iota1);

    /// The eight basis elements.
    pub const BASIS: [AlgebraElement; 8] = [
        Self::IOTA0,
        Self::IOTA1,
        Rho1,
        Rho2,
        Rho3,
        Rho12,
        Rho23,
        Rho123,
    ];

    /// The six Reeb-chord elements (the basis minus the idempotents).
    pub const CHORDS: [AlgebraElement; 6] = [Rho1, Rho2, Rho3, Rho12, Rho23, Rho123];

    fn interval(self) -> Option<(u8, u8)> {
        match self {
            Rho1 => Some((1, 2)),
            Rho2 => Some((2, 3)),
            Rho3 => Some((3, 4)),
            Rho12 => Some((1, 3)),
            Rho23 => Some((2, 4)),
            Rho123 => Some((1, 4)),
            Zero | Idem(_) => None,
        }
    }

    fn from_interval(start: u8, end: u8) -> AlgebraElement {
        match (start, end) {
            (1, 2) => Rho1,
            (2, 3) => Rho2,
            (3, 4) => Rho3,
            (1, 3) => Rho12,
            (2, 4) => Rho23,
            (1, 4) => Rho123,
            _ => Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Zero
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, Idem(_))
    }

    pub fn is_chord(self) -> bool {
        self.interval().is_some()
    }

    pub fn multiply(self, other: AlgebraElement) -> AlgebraElement {
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Idem(i), Idem(j)) => {
                if i == j {
                    Idem(i)
                } else {
                    Zero
                }
            }
            (Idem(i), b) => {
                if b.left_idem_unchecked() == i {
                    b
                } else {
                    Zero
                }
            }
            (a, Idem(j)) => {
                if a.right_idem_unchecked() == j {
                    a
                } else {
                    Zero
                }
            }
            (a, b) => {
                let (s1, e1) = a.interval().expect("chord");
                let (s2, e2) = b.interval().expect("chord");
                if e1 == s2 {
                    Self::from_interval(s1, e2)
                } else {
                    Zero
                }
            }
        }
    }

    fn left_idem_unchecked(self) -> Idempotent {
        match self {
            Idem(i) => i,
            _ => match self.interval().map(|(s, _)| s) {
                Some(2) => Idempotent::Iota1,
                _ => Idempotent::Iota0,
            },
        }
    }

    fn right_idem_unchecked(self) -> Idempotent {
        match self {
            Idem(i) => i,
            _ => match self.interval().map(|(_, e)| e) {
                Some(3) => Idempotent::Iota0,
                _ => Idempotent::Iota1,
            },
        }
    }

    /// The idempotent ι with ι·a = a.
    pub fn left_idem(self) -> Result<Idempotent, Error> {
        if self.is_zero() {
            return Err(Error::NoIdempotent);
        }
        Ok(self.left_idem_unchecked())
    }

    /// The idempotent ι with a·ι = a.
    pub fn right_idem(self) -> Result<Idempotent, Error> {
        if self.is_zero() {
            return Err(Error::NoIdempotent);
        }
        Ok(self.right_idem_unchecked())
    }

    /// Canonical serialization name.
    pub fn as_str(self) -> &'static str {
        match self {
            Zero => "0",
            Idem(Idempotent::Iota0) => "iota0",
            Idem(Idempotent::Iota1) => "iota1",
            Rho1 => "rho1",
            Rho2 => "rho2",
            Rho3 => "rho3",
            Rho12 => "rho12",
            Rho23 => "rho23",
            Rho123 => "rho123",
        }
    }

    /// All ways to write a chord as a product of two chords.
    pub fn factorizations(self) -> &'static [(AlgebraElement, AlgebraElement)] {
        match self {
            Rho12 => &[(Rho1, Rho2)],
            Rho23 => &[(Rho2, Rho3)],
            Rho123 => &[(Rho1, Rho23), (Rho12, Rho3)],
            _ => &[],
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "0" => Zero,
            "iota0" => Self::IOTA0,
            "iota1" => Self::IOTA1,
            "rho1" => Rho1,
            "rho2" => Rho2,
            "rho3" => Rho3,
            "rho12" => Rho12,
            "rho23" => Rho23,
            "rho123" => Rho123,
            other => return Err(Error::UnknownToken(other.to_string())),
        })
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Idempotent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Idempotent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Product of a non-empty sequence of elements; an empty sequence gives zero.
pub fn product<I: IntoIterator<Item = AlgebraElement>>(factors: I) -> AlgebraElement {
    let mut it = factors.into_iter();
    let first = it.next().unwrap_or(Zero);
    it.fold(first, |acc, x| acc.multiply(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Written out independently of the chord-interval implementation.
    fn table(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement {
        let i0 = AlgebraElement::IOTA0;
        let i1 = AlgebraElement::IOTA1;
        let lr = |x: AlgebraElement| match x {
            Rho1 | Rho3 | Rho123 => (i0, i1),
            Rho2 => (i1, i0),
            Rho12 => (i0, i0),
            Rho23 => (i1, i1),
            other => (other, other),
        };
        if a == Zero || b == Zero {
            return Zero;
        }
        if a.is_idempotent() && b.is_idempotent() {
            return if a == b { a } else { Zero };
        }
        if a.is_idempotent() {
            return if lr(b).0 == a { b } else { Zero };
        }
        if b.is_idempotent() {
            return if lr(a).1 == b { a } else { Zero };
        }
        match (a, b) {
            (Rho1, Rho2) => Rho12,
            (Rho2, Rho3) => Rho23,
            (Rho1, Rho23) => Rho123,
            (Rho12, Rho3) => Rho123,
            _ => Zero,
        }
    }

    #[test]
    fn multiplication_matches_table() {
        for a in AlgebraElement::BASIS {
            for b in AlgebraElement::BASIS {
                assert_eq!(a.multiply(b), table(a, b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn stated_products() {
        assert_eq!(Rho1.multiply(Rho23), Rho123);
        assert_eq!(AlgebraElement::IOTA0.multiply(Rho1), Rho1);
        assert_eq!(Rho1.multiply(AlgebraElement::IOTA1), Rho1);
        assert_eq!(Rho2.multiply(Rho1), Zero);
    }

    #[test]
    fn idempotents_of_chords() {
        use Idempotent::*;
        assert_eq!((Rho2.left_idem().unwrap(), Rho2.right_idem().unwrap()), (Iota1, Iota0));
        assert_eq!((Rho23.left_idem().unwrap(), Rho23.right_idem().unwrap()), (Iota1, Iota1));
        let i0 = AlgebraElement::IOTA0;
        assert_eq!((i0.left_idem().unwrap(), i0.right_idem().unwrap()), (Iota0, Iota0));
        assert!(matches!(Zero.left_idem(), Err(Error::NoIdempotent)));
        assert!(Zero.right_idem().is_err());
    }

    #[test]
    fn associativity_exhaustive() {
        let mut all = AlgebraElement::BASIS.to_vec();
        all.push(Zero);
        for a in &all {
            for b in &all {
                for c in &all {
                    assert_eq!(a.multiply(*b).multiply(*c), a.multiply(b.multiply(*c)));
                }
            }
        }
    }

    #[test]
    fn sandwich_and_inner_idempotents() {
        for a in AlgebraElement::BASIS {
            let l = Idem(a.left_idem().unwrap());
            let r = Idem(a.right_idem().unwrap());
            assert_eq!(l.multiply(a), a);
            assert_eq!(a.multiply(r), a);
            for b in AlgebraElement::BASIS {
                if !a.multiply(b).is_zero() {
                    assert_eq!(a.right_idem().unwrap(), b.left_idem().unwrap());
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        let names = ["iota0", "iota1", "rho1", "rho2", "rho3", "rho12", "rho23", "rho123", "0"];
        for n in names {
            let e: AlgebraElement = n.parse().unwrap();
            assert_eq!(e.as_str(), n);
        }
        match "rho13".parse::<AlgebraElement>() {
            Err(Error::UnknownToken(t)) => assert_eq!(t, "rho13"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factorizations_multiply_back() {
        for a in AlgebraElement::CHORDS {
            for (p, q) in a.factorizations() {
                assert_eq!(p.multiply(*q), a);
            }
            let count = AlgebraElement::CHORDS
                .iter()
                .flat_map(|p| AlgebraElement::CHORDS.iter().map(move |q| (*p, *q)))
                .filter(|(p, q)| p.multiply(*q) == a)
                .count();
            assert_eq!(count, a.factorizations().len());
        }
    }
}
