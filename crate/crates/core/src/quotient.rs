//! The free commutative monoid on `{a_k} u {b_l}`, its swap automorphism,
//! the semidirect product with `Z2`, and the quotient maps onto them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::congruence::generator_word;
use crate::element::{Element, Z2};
use crate::error::{Error, Result};

/// A word in the free commutative monoid: exponent maps `k -> e_k` for the
/// `a` letters and `l -> f_l` for the `b` letters. Stored exponents are
/// positive; the empty word is the unit `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "WordRecord", try_from = "WordRecord")]
pub struct FreeWord {
    a: BTreeMap<u32, u32>,
    b: BTreeMap<u32, u32>,
}

impl FreeWord {
    /// The unit `e`.
    pub fn unit() -> Self {
        FreeWord::default()
    }

    /// Builds a word from `(index, exponent)` pairs; repeated indices add up
    /// and zero exponents are dropped. Index 0 is rejected.
    pub fn from_exponents(
        a: impl IntoIterator<Item = (u32, u32)>,
        b: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        fn collect(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<BTreeMap<u32, u32>> {
            let mut m = BTreeMap::new();
            for (k, e) in pairs {
                if k == 0 {
                    return Err(Error::InvalidGeneratorIndex);
                }
                if e > 0 {
                    *m.entry(k).or_insert(0) += e;
                }
            }
            Ok(m)
        }
        Ok(FreeWord { a: collect(a)?, b: collect(b)? })
    }

    /// The letter `a_k`.
    pub fn a(k: u32) -> Result<Self> {
        FreeWord::from_exponents([(k, 1)], [])
    }

    /// The letter `b_l`.
    pub fn b(l: u32) -> Result<Self> {
        FreeWord::from_exponents([], [(l, 1)])
    }

    pub fn a_exponents(&self) -> &BTreeMap<u32, u32> {
        &self.a
    }

    pub fn b_exponents(&self) -> &BTreeMap<u32, u32> {
        &self.b
    }

    pub fn a_exponent(&self, k: u32) -> u32 {
        self.a.get(&k).copied().unwrap_or(0)
    }

    pub fn b_exponent(&self, l: u32) -> u32 {
        self.b.get(&l).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    /// Number of distinct letters.
    pub fn support_len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Exponent-wise sum.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let add = |x: &BTreeMap<u32, u32>, y: &BTreeMap<u32, u32>| {
            let mut m = x.clone();
            for (&k, &e) in y {
                *m.entry(k).or_insert(0) += e;
            }
            m
        };
        FreeWord { a: add(&self.a, &other.a), b: add(&self.b, &other.b) }
    }

    /// The involution exchanging `a_k` and `b_k`.
    pub fn auto_f(&self) -> FreeWord {
        FreeWord { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("words always serialize")
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        FreeWord::mul(self, rhs)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("e");
        }
        let letters = self.a.iter().map(|(k, e)| ('a', k, e)).chain(self.b.iter().map(|(k, e)| ('b', k, e)));
        for (n, (c, k, e)) in letters.enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}{k}^{e}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordRecord {
    a: Vec<(u32, u32)>,
    b: Vec<(u32, u32)>,
}

impl From<FreeWord> for WordRecord {
    fn from(w: FreeWord) -> Self {
        WordRecord { a: w.a.into_iter().collect(), b: w.b.into_iter().collect() }
    }
}

impl TryFrom<WordRecord> for FreeWord {
    type Error = Error;

    fn try_from(r: WordRecord) -> Result<Self> {
        if r.a.iter().chain(&r.b).any(|&(_, e)| e == 0) {
            return Err(Error::Consistency("stored exponents must be positive".into()));
        }
        FreeWord::from_exponents(r.a, r.b)
    }
}

pub fn word_mul(u: &FreeWord, v: &FreeWord) -> FreeWord {
    u.mul(v)
}

pub fn auto_f(u: &FreeWord) -> FreeWord {
    u.auto_f()
}

/// An element `(u, g)` of the semidirect product, where `Z2` acts by `auto_f`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SemidirectRecord", try_from = "SemidirectRecord")]
pub struct SemidirectElement {
    pub word: FreeWord,
    pub g: Z2,
}

impl SemidirectElement {
    pub fn new(word: FreeWord, g: Z2) -> Self {
        SemidirectElement { word, g }
    }

    pub fn unit() -> Self {
        SemidirectElement::default()
    }

    /// `(u, g)(v, h) = (u * f^g(v), g + h)`.
    pub fn mul(&self, other: &SemidirectElement) -> SemidirectElement {
        let v = if self.g.is_one() { other.word.auto_f() } else { other.word.clone() };
        SemidirectElement { word: self.word.mul(&v), g: self.g + other.g }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("semidirect elements always serialize")
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.word, self.g)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SemidirectRecord {
    a: Vec<(u32, u32)>,
    b: Vec<(u32, u32)>,
    g: u8,
}

impl From<SemidirectElement> for SemidirectRecord {
    fn from(x: SemidirectElement) -> Self {
        let WordRecord { a, b } = x.word.into();
        SemidirectRecord { a, b, g: x.g.as_u8() }
    }
}

impl TryFrom<SemidirectRecord> for SemidirectElement {
    type Error = Error;

    fn try_from(r: SemidirectRecord) -> Result<Self> {
        let g = Z2::from_u8(r.g).ok_or_else(|| Error::Consistency(format!("g must be 0 or 1, got {}", r.g)))?;
        Ok(SemidirectElement { word: WordRecord { a: r.a, b: r.b }.try_into()?, g })
    }
}

pub fn semidirect_mul(x: &SemidirectElement, y: &SemidirectElement) -> SemidirectElement {
    x.mul(y)
}

/// The quotient map onto the free commutative monoid, on orientation-preserving elements.
pub fn h_sigma(a: &Element) -> Result<FreeWord> {
    generator_word(a)
}

/// `alpha -> (h_sigma(alpha+), g)`.
pub fn iota_map(a: &Element) -> SemidirectElement {
    let (plus, g) = a.decompose();
    let word = generator_word(&plus).expect("decompose yields an orientation-preserving element");
    SemidirectElement { word, g }
}

/// `prod_k gamma_k^{e_k} * prod_l upsilon_l^{f_l}` with indices ascending.
pub fn generator_product(word: &FreeWord) -> Element {
    let gammas = word.a.iter().map(|(&k, &e)| Element::gamma(k).unwrap().pow(e));
    let upsilons = word.b.iter().map(|(&l, &f)| Element::upsilon(l).unwrap().pow(f));
    gammas.chain(upsilons).fold(Element::identity(), |acc, x| acc.compose(&x))
}

/// The same factors as [`generator_product`] with all `upsilon` factors first.
pub fn generator_product_reversed(word: &FreeWord) -> Element {
    generator_product(&FreeWord { a: BTreeMap::new(), b: word.b.clone() })
        .compose(&generator_product(&FreeWord { a: word.a.clone(), b: BTreeMap::new() }))
}

/// An element mapped to `x` by [`iota_map`]: the generator product, followed
/// by the swap when `g = 1`.
pub fn preimage(x: &SemidirectElement) -> Element {
    let p = generator_product(&x.word);
    if x.g.is_one() {
        p.compose(&Element::swap())
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: &[(u32, u32)], b: &[(u32, u32)]) -> FreeWord {
        FreeWord::from_exponents(a.iter().copied(), b.iter().copied()).unwrap()
    }

    #[test]
    fn word_multiplication() {
        assert_eq!(word_mul(&w(&[(1, 1)], &[]), &w(&[(1, 2)], &[])), w(&[(1, 3)], &[]));
        let u = w(&[(2, 1)], &[(4, 2)]);
        assert_eq!(word_mul(&FreeWord::unit(), &u), u);
        assert_eq!(word_mul(&w(&[(1, 1)], &[(2, 1)]), &w(&[(3, 1)], &[])), w(&[(1, 1), (3, 1)], &[(2, 1)]));
        assert!(FreeWord::a(0).is_err());
    }

    #[test]
    fn swap_automorphism() {
        let u = w(&[(1, 1), (2, 2)], &[(1, 3)]);
        assert_eq!(auto_f(&u), w(&[(1, 3)], &[(1, 1), (2, 2)]));
        assert_eq!(auto_f(&FreeWord::unit()), FreeWord::unit());
        assert_eq!(auto_f(&auto_f(&u)), u);
    }

    #[test]
    fn semidirect_products() {
        let e1 = SemidirectElement::new(FreeWord::unit(), Z2::One);
        let a1 = SemidirectElement::new(FreeWord::a(1).unwrap(), Z2::Zero);
        assert_eq!(e1.mul(&a1), SemidirectElement::new(FreeWord::b(1).unwrap(), Z2::One));
        let u = SemidirectElement::new(w(&[(1, 2)], &[]), Z2::Zero);
        let v = SemidirectElement::new(w(&[(3, 1)], &[(1, 1)]), Z2::Zero);
        assert_eq!(u.mul(&v), SemidirectElement::new(u.word.mul(&v.word), Z2::Zero));
        assert_eq!(e1.mul(&e1), SemidirectElement::unit());
    }

    #[test]
    fn quotient_maps() {
        assert_eq!(h_sigma(&Element::gamma(2).unwrap()).unwrap(), FreeWord::a(2).unwrap());
        assert_eq!(h_sigma(&Element::upsilon(1).unwrap().pow(3)).unwrap(), w(&[], &[(1, 3)]));
        assert_eq!(h_sigma(&Element::identity()).unwrap(), FreeWord::unit());
        assert!(h_sigma(&Element::swap()).is_err());

        assert_eq!(iota_map(&Element::swap()), SemidirectElement::new(FreeWord::unit(), Z2::One));
        assert_eq!(iota_map(&Element::identity()), SemidirectElement::unit());
        let g1w = Element::gamma(1).unwrap().compose(&Element::swap());
        assert_eq!(iota_map(&g1w), SemidirectElement::new(FreeWord::a(1).unwrap(), Z2::One));
    }

    #[test]
    fn preimages_are_hit() {
        let x = SemidirectElement::new(w(&[(1, 2), (3, 1)], &[(2, 3)]), Z2::One);
        assert_eq!(iota_map(&preimage(&x)), x);
        assert_eq!(preimage(&SemidirectElement::unit()), Element::identity());
    }

    #[test]
    fn json_forms() {
        let u = w(&[(2, 1), (1, 2)], &[(5, 1)]);
        assert_eq!(u.to_json(), r#"{"a":[[1,2],[2,1]],"b":[[5,1]]}"#);
        assert_eq!(serde_json::from_str::<FreeWord>(&u.to_json()).unwrap(), u);
        assert_eq!(SemidirectElement::new(FreeWord::unit(), Z2::One).to_json(), r#"{"a":[],"b":[],"g":1}"#);
        assert!(serde_json::from_str::<FreeWord>(r#"{"a":[[1,0]],"b":[]}"#).is_err());
        assert!(serde_json::from_str::<SemidirectElement>(r#"{"a":[],"b":[],"g":3}"#).is_err());
        assert_eq!(u.to_string(), "a1^2 a2^1 b5^1");
        assert_eq!(FreeWord::unit().to_string(), "e");
    }
}
