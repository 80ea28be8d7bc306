use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Int;

use super::{smith_normal_form, Matrix};

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug)]
pub struct SparseMatrix<E> {
    cols: usize,
    rows: Vec<BTreeMap<usize, E>>,
}

impl<E: Int> SparseMatrix<E> {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given as (column, value) pairs; repeated columns accumulate.
    pub fn push_row<I: IntoIterator<Item = (usize, E)>>(&mut self, entries: I) {
        let mut row = BTreeMap::new();
        for (j, v) in entries {
            assert!(j < self.cols);
            let e = row.entry(j).or_insert_with(E::zero);
            *e = std::mem::replace(e, E::zero()) + v;
        }
        row.retain(|_, v: &mut E| !v.is_zero());
        self.rows.push(row);
    }

    pub fn to_dense(&self) -> Matrix<E> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Nonzero invariant factors (with multiplicity, including units), i.e.
    /// the nonzero diagonal of the Smith form.
    ///
    /// Unit pivots are eliminated sparsely first; the leftover block, which is
    /// small for the chain complexes this is used on, goes through the dense
    /// Smith form.
    pub fn invariant_factors(&self) -> Vec<E> {
        let mut rows: Vec<BTreeMap<usize, E>> = self.rows.clone();
        let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                col_index[j].insert(i);
            }
        }
        let mut alive: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
        let mut units = 0usize;

        loop {
            // Markowitz-style choice among unit entries
            let mut best: Option<(usize, usize, usize)> = None;
            for &i in &alive {
                let rl = rows[i].len();
                for (&j, v) in &rows[i] {
                    if v.abs().is_one() {
                        let cost = (rl - 1) * (col_index[j].len() - 1);
                        if best.is_none_or(|b| cost < b.2) {
                            best = Some((i, j, cost));
                        }
                    }
                }
                if best.is_some_and(|b| b.2 == 0) {
                    break;
                }
            }
            let Some((pi, pj, _)) = best else { break };
            units += 1;
            let pivot_row = rows[pi].clone();
            let pv = pivot_row[&pj].clone();
            let others: Vec<usize> = col_index[pj].iter().copied().filter(|&k| k != pi).collect();
            for k in others {
                let f = rows[k][&pj].clone() * pv.clone(); // pv = +-1 so this is a / pv
                for (&j, v) in &pivot_row {
                    let e = rows[k].entry(j).or_insert_with(E::zero);
                    let nv = std::mem::replace(e, E::zero()) - f.clone() * v.clone();
                    if nv.is_zero() {
                        rows[k].remove(&j);
                        col_index[j].remove(&k);
                    } else {
                        *rows[k].get_mut(&j).unwrap() = nv;
                        col_index[j].insert(k);
                    }
                }
                if rows[k].is_empty() {
                    alive.remove(&k);
                }
            }
            for &j in pivot_row.keys() {
                col_index[j].remove(&pi);
            }
            rows[pi].clear();
            alive.remove(&pi);
        }

        let mut out = vec![E::one(); units];
        if !alive.is_empty() {
            let used: BTreeSet<usize> = alive.iter().flat_map(|&i| rows[i].keys().copied()).collect();
            let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(n, &j)| (j, n)).collect();
            let mut dense = Matrix::zeros(alive.len(), used.len());
            for (r, &i) in alive.iter().enumerate() {
                for (j, v) in &rows[i] {
                    dense[(r, remap[j])] = v.clone();
                }
            }
            out.extend(smith_normal_form(&dense).invariant_factors());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_dense() {
        let mut s: SparseMatrix<i64> = SparseMatrix::new(3);
        s.push_row([(0, 2), (1, 4)]);
        s.push_row([(0, 6), (1, 8)]);
        s.push_row([(2, 1), (0, 1)]);
        let mut f = s.invariant_factors();
        f.sort();
        let mut g = smith_normal_form(&s.to_dense()).invariant_factors();
        g.sort();
        assert_eq!(f, g);
    }

    #[test]
    fn empty() {
        let s: SparseMatrix<i64> = SparseMatrix::new(4);
        assert!(s.invariant_factors().is_empty());
    }
}
