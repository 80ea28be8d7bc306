use crate::scalar::Int;

use super::Matrix;

/// Row lattice kept in Hermite normal form while rows are inserted one by one.
///
/// Each stored row has a positive pivot in a distinct column; after
/// [`Lattice::reduce`] the entries above every pivot lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Lattice<E> {
    cols: usize,
    by_pivot: Vec<Option<Vec<E>>>,
}

impl<E: Int> Lattice<E> {
    pub fn new(cols: usize) -> Self {
        Lattice { cols, by_pivot: vec![None; cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.by_pivot.iter().filter(|r| r.is_some()).count()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&[E]> {
        self.by_pivot[col].as_deref()
    }

    pub fn insert(&mut self, mut v: Vec<E>) {
        assert_eq!(v.len(), self.cols);
        let mut col = 0;
        while col < self.cols {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            match self.by_pivot[col].take() {
                None => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::replace(x, E::zero()));
                    }
                    self.by_pivot[col] = Some(v);
                    return;
                }
                Some(b) => {
                    let (a, c) = (b[col].clone(), v[col].clone());
                    if (c.clone() % a.clone()).is_zero() {
                        let q = c / a;
                        for j in col..self.cols {
                            if !b[j].is_zero() {
                                let cur = std::mem::replace(&mut v[j], E::zero());
                                v[j] = cur - q.clone() * b[j].clone();
                            }
                        }
                        self.by_pivot[col] = Some(b);
                    } else {
                        let (g, x, y) = E::ext_gcd(&a, &c);
                        let (ag, cg) = (a / g.clone(), c / g);
                        let mut nb = Vec::with_capacity(self.cols);
                        let mut nv = Vec::with_capacity(self.cols);
                        for j in 0..self.cols {
                            nb.push(x.clone() * b[j].clone() + y.clone() * v[j].clone());
                            nv.push(ag.clone() * v[j].clone() - cg.clone() * b[j].clone());
                        }
                        self.by_pivot[col] = Some(nb);
                        v = nv;
                    }
                    col += 1;
                }
            }
        }
    }

    /// Reduces entries above pivots into `[0, pivot)`.
    pub fn reduce(&mut self) {
        for col in 0..self.cols {
            let Some(p) = self.by_pivot[col].clone() else { continue };
            for other in 0..col {
                let Some(row) = self.by_pivot[other].as_mut() else { continue };
                let q = row[col].div_floor(&p[col]);
                if q.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    if !p[j].is_zero() {
                        let cur = std::mem::replace(&mut row[j], E::zero());
                        row[j] = cur - q.clone() * p[j].clone();
                    }
                }
            }
        }
    }

    /// Reduced rows in pivot order.
    pub fn rows(&self) -> Vec<Vec<E>> {
        self.by_pivot.iter().flatten().cloned().collect()
    }

    /// Pivot columns with their pivot values.
    pub fn pivots(&self) -> Vec<(usize, E)> {
        self.by_pivot
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.as_ref().map(|r| (j, r[j].clone())))
            .collect()
    }

    pub fn contains(&self, v: &[E]) -> bool {
        let mut v = v.to_vec();
        for col in 0..self.cols {
            if v[col].is_zero() {
                continue;
            }
            let Some(b) = &self.by_pivot[col] else { return false };
            if !(v[col].clone() % b[col].clone()).is_zero() {
                return false;
            }
            let q = v[col].clone() / b[col].clone();
            for j in col..self.cols {
                let cur = std::mem::replace(&mut v[j], E::zero());
                v[j] = cur - q.clone() * b[j].clone();
            }
        }
        true
    }
}

/// Row Hermite normal form: nonzero rows only, pivots positive and strictly
/// increasing, entries above each pivot reduced.
pub fn hermite_normal_form<E: Int>(m: &Matrix<E>) -> Matrix<E> {
    let mut lat = Lattice::new(m.cols());
    for i in 0..m.rows() {
        lat.insert(m.row(i).to_vec());
    }
    lat.reduce();
    Matrix::from_rows(lat.rows(), m.cols())
}
