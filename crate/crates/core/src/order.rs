//! Monomial orders: lex, graded reverse lex, and block elimination orders.

use std::cmp::Ordering;

use crate::monomial::Monomial;

/// A global monomial order. All variants are total, multiplicative and have 1
/// as the minimum, so Buchberger terminates under any of them.
///
/// `Elimination { block, .. }` ranks any monomial containing one of the first
/// `block` variables above every monomial free of them, which is what the
/// elimination theorem needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Elimination {
        block: usize,
        block_order: Box<MonomialOrder>,
        rest_order: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Standard elimination order for the first `block` variables: grevlex on
    /// the block, grevlex on the rest.
    pub fn elimination(block: usize) -> MonomialOrder {
        MonomialOrder::Elimination {
            block,
            block_order: Box::new(MonomialOrder::GrevLex),
            rest_order: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_slices(a.exponents(), b.exponents())
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // ties: the monomial with the larger exponent in the last
                // differing variable is the smaller one
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination {
                block,
                block_order,
                rest_order,
            } => {
                let k = *block;
                match block_order.cmp_slices(&a[..k], &b[..k]) {
                    Ordering::Equal => rest_order.cmp_slices(&a[k..], &b[k..]),
                    ord => ord,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps.to_vec())
    }

    #[test]
    fn grevlex_ranking_matches_the_textbook_chain() {
        // x > y > z: x^3 > x^2 y > x y^2 > y^3 > x^2 z > x y z > y^2 z > x z^2 > y z^2 > z^3
        let chain = [
            m(&[3, 0, 0]),
            m(&[2, 1, 0]),
            m(&[1, 2, 0]),
            m(&[0, 3, 0]),
            m(&[2, 0, 1]),
            m(&[1, 1, 1]),
            m(&[0, 2, 1]),
            m(&[1, 0, 2]),
            m(&[0, 1, 2]),
            m(&[0, 0, 3]),
        ];
        let o = MonomialOrder::GrevLex;
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn lex_ranks_by_first_variable() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        // first variable is the block: any monomial using it beats any that does not
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 7])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
