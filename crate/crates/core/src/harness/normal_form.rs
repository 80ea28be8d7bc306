//! Normal form in a free product of finite groups relative to the cartesian
//! subgroup (the kernel of the map onto the direct product).

use thiserror::Error;

use crate::finite::FiniteGroup;

/// A letter `(i, x)`: element `x` of factor `i`.
pub type Letter = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("letter ({0}, {1}) names no factor element")]
    Malformed(usize, usize),
}

/// `a = a_{i₁} ⋯ a_{i_m} · c` with `i₁ < … < i_m`, every `a_{i_j} ≠ 1`, and
/// `c` in the cartesian subgroup (stored as a reduced word).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub prefix: Vec<Letter>,
    pub remainder: Vec<Letter>,
}

impl NormalForm {
    pub fn cartesian_is_trivial(&self) -> bool {
        self.remainder.is_empty()
    }

    /// The word `prefix · remainder`, reduced.
    pub fn word(&self, factors: &[FiniteGroup]) -> Vec<Letter> {
        let mut w = self.prefix.clone();
        w.extend(&self.remainder);
        reduce(factors, &w)
    }
}

/// Merges adjacent letters from the same factor and drops identities; the
/// result is the unique reduced form of the element.
pub fn reduce(factors: &[FiniteGroup], word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &(i, x) in word {
        let g = &factors[i];
        match out.last_mut() {
            Some((j, y)) if *j == i => {
                *y = g.mul(*y, x);
                if *y == g.identity() {
                    out.pop();
                }
            }
            _ if x == g.identity() => {}
            _ => out.push((i, x)),
        }
    }
    out
}

fn inverse(factors: &[FiniteGroup], word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&(i, x)| (i, factors[i].inv(x))).collect()
}

/// Image of `word` under the projection onto factor `i`.
pub fn project(factors: &[FiniteGroup], word: &[Letter], i: usize) -> usize {
    let g = &factors[i];
    word.iter().filter(|(j, _)| *j == i).fold(g.identity(), |acc, &(_, x)| g.mul(acc, x))
}

/// The constituents are the projections; the remainder is what is left after
/// dividing them off on the left, which projects trivially everywhere.
pub fn free_product_normal_form(factors: &[FiniteGroup], word: &[Letter]) -> Result<NormalForm, NormalFormError> {
    if let Some(&(i, x)) = word.iter().find(|&&(i, x)| i >= factors.len() || x >= factors[i].order()) {
        return Err(NormalFormError::Malformed(i, x));
    }
    let prefix: Vec<Letter> = (0..factors.len())
        .map(|i| (i, project(factors, word, i)))
        .filter(|&(i, x)| x != factors[i].identity())
        .collect();
    let mut w = inverse(factors, &prefix);
    w.extend_from_slice(word);
    Ok(NormalForm { prefix, remainder: reduce(factors, &w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GenSym;

    fn z2_z3() -> Vec<FiniteGroup> {
        vec![FiniteGroup::cyclic(2, &GenSym::new("a")), FiniteGroup::cyclic(3, &GenSym::new("b"))]
    }

    #[test]
    fn examples() {
        let f = z2_z3();
        let nf = free_product_normal_form(&f, &[(0, 1), (1, 1), (0, 1), (1, 2)]).unwrap();
        assert!(nf.prefix.is_empty());
        assert_eq!(nf.remainder, vec![(0, 1), (1, 1), (0, 1), (1, 2)]);
        let nf = free_product_normal_form(&f, &[(0, 1)]).unwrap();
        assert_eq!(nf.prefix, vec![(0, 1)]);
        assert!(nf.cartesian_is_trivial());
        let nf = free_product_normal_form(&f, &[]).unwrap();
        assert!(nf.prefix.is_empty() && nf.cartesian_is_trivial());
        assert_eq!(free_product_normal_form(&f, &[(2, 0)]), Err(NormalFormError::Malformed(2, 0)));
        assert_eq!(free_product_normal_form(&f, &[(1, 3)]), Err(NormalFormError::Malformed(1, 3)));
    }

    #[test]
    fn remainder_is_cartesian() {
        let f = z2_z3();
        let w = [(1, 1), (0, 1), (1, 1), (1, 1), (0, 1), (0, 1), (1, 2), (0, 1)];
        let nf = free_product_normal_form(&f, &w).unwrap();
        assert_eq!(nf.prefix, vec![(1, 2)]);
        for i in 0..2 {
            assert_eq!(project(&f, &nf.remainder, i), f[i].identity());
        }
        assert_eq!(nf.word(&f), reduce(&f, &w));
    }
}
