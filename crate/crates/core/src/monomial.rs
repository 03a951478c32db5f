//! Monomials as dense exponent vectors.

use std::fmt;

/// Exponent vector of a monomial. The length always equals the ambient
/// variable count; the derived `Ord` is only a structural tie-break, monomial
/// orders live in [`crate::order::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if the division is exact.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable of the monomial lies outside `block`
    /// (indices `0..block`).
    pub fn free_of_block(&self, block: usize) -> bool {
        self.0[..block].iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exponents(vec![2, 1, 0]);
        let b = Monomial::from_exponents(vec![1, 1, 0]);
        assert!(b.divides(&a));
        assert_eq!(
            b.divide_into(&a).unwrap(),
            Monomial::from_exponents(vec![1, 0, 0])
        );
        assert!(a.divide_into(&b).is_none());
        assert_eq!(
            a.lcm(&Monomial::from_exponents(vec![0, 3, 1])),
            Monomial::from_exponents(vec![2, 3, 1])
        );
        assert!(Monomial::from_exponents(vec![2, 0]).coprime(&Monomial::from_exponents(vec![0, 5])));
    }
}
