//! `H₂(G, ℤ)` from the normalized bar resolution.
//!
//! With `C_n` free on `(G∖1)^n`, `∂₂[g|h] = [h] − [gh] + [g]` and
//! `∂₃[g|h|k] = [h|k] − [gh|k] + [g|hk] − [g|h]` (terms containing the
//! identity vanish). Torsion of `H₂` is read off the non-unit invariant
//! factors of `∂₃`; the free rank is `dim ker ∂₂ − rank ∂₃`.

use crate::linalg::{AbelianInvariants, SparseMatrix};

use super::{FiniteError, FiniteGroup};

pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Schur multiplier of a table group of order at most `cap`.
pub fn schur_multiplier_oracle(g: &FiniteGroup, cap: usize) -> Result<AbelianInvariants, FiniteError> {
    let n = g.order();
    if n > cap {
        return Err(FiniteError::CapExceeded { order: n, cap });
    }
    if n == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let e = g.identity();
    // nonidentity elements indexed 0..m
    let idx = |x: usize| -> Option<usize> {
        match x.cmp(&e) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(x),
            std::cmp::Ordering::Greater => Some(x - 1),
        }
    };
    let elems: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let m = elems.len();
    let pair = |x: usize, y: usize| -> Option<usize> { Some(idx(x)? * m + idx(y)?) };

    let mut d2 = SparseMatrix::<i64>::new(m);
    for &x in &elems {
        for &y in &elems {
            let terms = [(idx(y), 1), (idx(g.mul(x, y)), -1), (idx(x), 1)];
            d2.push_row(terms.into_iter().filter_map(|(c, v)| c.map(|c| (c, v))));
        }
    }
    let mut d3 = SparseMatrix::<i64>::new(m * m);
    for &x in &elems {
        for &y in &elems {
            let xy = g.mul(x, y);
            for &z in &elems {
                let yz = g.mul(y, z);
                let terms = [(pair(y, z), 1), (pair(xy, z), -1), (pair(x, yz), 1), (pair(x, y), -1)];
                d3.push_row(terms.into_iter().filter_map(|(c, v)| c.map(|c| (c, v))));
            }
        }
    }
    let rank2 = d2.invariant_factors().len();
    let f3 = d3.invariant_factors();
    let rank3 = f3.len();
    let kernel2 = m * m - rank2;
    let torsion = f3.into_iter().filter(|v| v.abs() != 1).map(|v| v.abs().into());
    let mut h2 = AbelianInvariants::from_cyclic_orders(torsion);
    h2.free_rank = kernel2 - rank3;
    Ok(h2)
}
