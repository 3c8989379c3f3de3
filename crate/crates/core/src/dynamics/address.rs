//! Enumeration of the digit words `𝒟_k`.

use super::digits::DigitSet;
use super::tmap::DynamicsError;
use crate::exactnum::{FieldVector, PolynomialSpec};

/// Default cap on `|𝒟|^k`.
pub const DEFAULT_ADDRESS_LIMIT: u128 = 2_000_000;

/// A word of digit indices `(d_1, …, d_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address {
    pub word: Vec<usize>,
}

impl Address {
    /// `Σ_{j=0}^{k−1} α^j d_j` with `d_j = word[j]` (an element of `𝒟_k`).
    pub fn value(&self, spec: &PolynomialSpec, digits: &DigitSet) -> FieldVector {
        let mut acc = FieldVector::zero(spec.degree);
        for &i in self.word.iter().rev() {
            acc = &acc.mul_alpha(spec) + &digits.vectors[i];
        }
        acc
    }

    /// `Σ_{j=1}^{k} d_j α^{−j}` with `d_j = word[j−1]` (a depth-k point of F).
    pub fn tile_point(&self, spec: &PolynomialSpec, digits: &DigitSet) -> FieldVector {
        let mut acc = FieldVector::zero(spec.degree);
        for &i in self.word.iter().rev() {
            acc = (&acc + &digits.vectors[i]).div_alpha(spec);
        }
        acc
    }

    /// Dot-separated digit indices, e.g. `0.2.1`; empty word is `-`.
    pub fn encode(&self) -> String {
        if self.word.is_empty() {
            return "-".to_string();
        }
        self.word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }

    pub fn decode(s: &str) -> Option<Self> {
        if s == "-" {
            return Some(Address { word: Vec::new() });
        }
        s.split('.').map(|t| t.parse().ok()).collect::<Option<Vec<usize>>>().map(|word| Address { word })
    }
}

impl serde::Serialize for Address {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

/// Lexicographic iterator over all words of length `k`.
pub struct Addresses {
    base: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Addresses {
    type Item = Address;

    fn next(&mut self) -> Option<Address> {
        let out = self.current.clone()?;
        let mut w = out.clone();
        let mut i = w.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < self.base {
                self.current = Some(w);
                break;
            }
            w[i] = 0;
        }
        Some(Address { word: out })
    }
}

/// All `|𝒟|^k` addresses of length `k` in lexicographic order.
pub fn addresses(digits: &DigitSet, k: usize, limit: u128) -> Result<Addresses, DynamicsError> {
    let count = (digits.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > limit {
        return Err(DynamicsError::DepthTooLarge { count, limit });
    }
    Ok(Addresses { base: digits.len(), current: if digits.is_empty() && k > 0 { None } else { Some(vec![0; k]) } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::digits_from_strs;
    use crate::exactnum::validate_spec_i64;
    use num_rational::BigRational;

    #[test]
    fn examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let d = digits_from_strs(&ex1, &["0", "1", "2"]).unwrap();
        let a: Vec<Address> = addresses(&d, 0, DEFAULT_ADDRESS_LIMIT).unwrap().collect();
        assert_eq!(a.len(), 1);
        assert!(a[0].value(&ex1, &d).is_zero());
        let vals: Vec<FieldVector> =
            addresses(&d, 1, DEFAULT_ADDRESS_LIMIT).unwrap().map(|a| a.value(&ex1, &d)).collect();
        assert_eq!(vals, (0..3).map(|c| FieldVector::from_int(1, c)).collect::<Vec<_>>());
        let a: Vec<Address> = addresses(&d, 2, DEFAULT_ADDRESS_LIMIT).unwrap().collect();
        assert_eq!(a.len(), 9);
        assert_eq!(a[5].word, vec![1, 2]);
        assert_eq!(a[5].value(&ex1, &d), FieldVector(vec![BigRational::from_integer(4.into())]));
        assert!(matches!(addresses(&d, 20, DEFAULT_ADDRESS_LIMIT), Err(DynamicsError::DepthTooLarge { .. })));
    }

    #[test]
    fn encode_round_trip() {
        let a = Address { word: vec![0, 2, 1] };
        assert_eq!(a.encode(), "0.2.1");
        assert_eq!(Address::decode("0.2.1"), Some(a));
        assert_eq!(Address::decode("-"), Some(Address { word: vec![] }));
    }
}
