//! Finitely presented abelian groups `Z^n / (row span of A)`.

use super::snf::{snf, IntScalar, Matrix, Snf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroupPresentation<T> {
    relations: Matrix<T>,
    snf: Snf<T>,
}

impl<T: IntScalar> AbGroupPresentation<T> {
    pub fn new(num_generators: usize, relations: Vec<Vec<T>>) -> Self {
        let relations = Matrix::from_rows(relations, num_generators);
        let snf = snf(&relations);
        AbGroupPresentation { relations, snf }
    }

    pub fn num_generators(&self) -> usize {
        self.relations.cols()
    }

    pub fn relations(&self) -> &Matrix<T> {
        &self.relations
    }

    pub fn snf(&self) -> &Snf<T> {
        &self.snf
    }

    /// The group as `⊕ Z/d_i`, `d_i ≠ 1`, with `0` for free summands.
    pub fn invariant_factors(&self) -> Vec<T> {
        let diag = self.snf.diagonal();
        let mut out: Vec<T> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        for _ in diag.len()..self.num_generators() {
            out.push(T::zero());
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    /// Coordinates of `v` in the cyclic decomposition, one per diagonal
    /// position plus free tail; entries reduced modulo their factor.
    pub fn coordinates(&self, v: &[T]) -> Vec<T> {
        let w = self.snf.v.vec_mul(v);
        let diag = self.snf.diagonal();
        w.into_iter()
            .enumerate()
            .filter_map(|(i, x)| match diag.get(i) {
                Some(d) if d.is_one() => None,
                Some(d) if !d.is_zero() => Some(x.mod_floor(d)),
                _ => Some(x),
            })
            .collect()
    }

    /// Whether `v` is zero in the group.
    pub fn is_zero(&self, v: &[T]) -> bool {
        self.coordinates(v).iter().all(|x| x.is_zero())
    }

    /// Integer coefficients `c` with `c·A = v`, or `None` when `v` is not in
    /// the row span (`NotInSubgroup`).
    pub fn express_in_relators(&self, v: &[T]) -> Option<Vec<T>> {
        let m = self.relations.rows();
        let w = self.snf.v.vec_mul(v);
        let diag = self.snf.diagonal();
        let mut y = vec![T::zero(); m];
        for (i, wi) in w.iter().enumerate() {
            match diag.get(i) {
                Some(d) if !d.is_zero() => {
                    let (q, r) = wi.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    y[i] = q;
                }
                _ => {
                    if !wi.is_zero() {
                        return None;
                    }
                }
            }
        }
        let c = self.snf.u.vec_mul(&y);
        (self.relations.vec_mul(&c) == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn express_examples() {
        let p = AbGroupPresentation::new(2, vec![vec![b(2), b(4)], vec![b(0), b(6)]]);
        assert_eq!(p.express_in_relators(&[b(2), b(4)]), Some(vec![b(1), b(0)]));
        assert_eq!(p.express_in_relators(&[b(0), b(0)]), Some(vec![b(0), b(0)]));
        assert_eq!(p.express_in_relators(&[b(1), b(0)]), None);
        let c = p.express_in_relators(&[b(4), b(2)]).unwrap();
        assert_eq!(p.relations().vec_mul(&c), vec![b(4), b(2)]);

        let q = AbGroupPresentation::new(1, vec![vec![b(2)]]);
        assert_eq!(q.express_in_relators(&[b(1)]), None);
    }

    #[test]
    fn invariant_factors_and_free_part() {
        let p = AbGroupPresentation::new(3, vec![vec![b(2), b(0), b(0)], vec![b(0), b(3), b(0)]]);
        assert_eq!(p.invariant_factors(), vec![b(6), b(0)]);
        let free = AbGroupPresentation::<BigInt>::new(1, vec![]);
        assert_eq!(free.invariant_factors(), vec![b(0)]);
    }
}
