use crate::scalar::Int;

use super::Matrix;

/// Smith normal form `D = U * M * V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Int> SmithForm<E> {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<E> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks every postcondition against the input matrix.
    pub fn verify(&self, m: &Matrix<E>) -> bool {
        let prod = &(&self.u * m) * &self.v;
        if prod != self.d || !self.d.is_diagonal() {
            return false;
        }
        if !self.u.determinant().abs().is_one() || !self.v.determinant().abs().is_one() {
            return false;
        }
        let diag = self.d.diagonal();
        let mut seen_zero = false;
        for w in diag.windows(2) {
            if w[0].is_zero() {
                seen_zero = true;
            }
            if seen_zero && !w[1].is_zero() {
                return false;
            }
            if !w[0].is_zero() && !w[1].is_zero() && !(w[1].clone() % w[0].clone()).is_zero() {
                return false;
            }
        }
        diag.iter().all(|x| !x.is_negative())
    }
}

/// Computes the Smith normal form with transforms.
///
/// Pivots are chosen with minimal absolute value in the remaining block; a
/// column or row is swept until the pivot divides everything in it, and the
/// divisibility chain is restored by folding an offending row into the pivot
/// row.
pub fn smith_normal_form<E: Int>(m: &Matrix<E>) -> SmithForm<E> {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(r);
    let mut v = Matrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // clear column t
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility with the rest of the block
            let p = d[(t, t)].clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !(d[(i, j)].clone() % p.clone()).is_zero());
            match bad {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &E::one());
                    u.add_row_multiple(t, i, &E::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn min_entry<E: Int>(d: &Matrix<E>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, E)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|b| a < b.2) {
                let one = a.is_one();
                best = Some((i, j, a));
                if one {
                    let b = best.unwrap();
                    return Some((b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn min_in_cross<E: Int>(d: &Matrix<E>, t: usize) -> (usize, usize) {
    let mut best = (t, t, d[(t, t)].abs());
    for i in t + 1..d.rows() {
        let a = d[(i, t)].abs();
        if !a.is_zero() && a < best.2 {
            best = (i, t, a);
        }
    }
    for j in t + 1..d.cols() {
        let a = d[(t, j)].abs();
        if !a.is_zero() && a < best.2 {
            best = (t, j, a);
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn identity_is_fixed() {
        let m: Matrix<BigInt> = Matrix::identity(2);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, m);
        assert!(s.verify(&m));
    }

    #[test]
    fn two_by_two() {
        let m: Matrix<BigInt> = Matrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let m: Matrix<i64> = Matrix::zeros(3, 2);
        let s = smith_normal_form(&m);
        assert!(s.d.is_zero());
        assert!(s.verify(&m));
    }

    #[test]
    fn divisibility_fix() {
        let m: Matrix<i64> = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.d.diagonal(), vec![1, 6]);
    }

    proptest! {
        #[test]
        fn postconditions_hold(entries in proptest::collection::vec(-20i64..20, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<Vec<i128>> = (0..r).map(|i| entries[i * c..(i + 1) * c].iter().map(|&x| x as i128).collect()).collect();
            let m = Matrix::from_rows(rows, c);
            let s = smith_normal_form(&m);
            prop_assert!(s.verify(&m));
        }
    }
}
