use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, LinalgError, Matrix};
use crate::scalar::Int;

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dt` with
/// `d1 | d2 | ... | dt` and every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds the canonical chain from arbitrary cyclic orders (0 = infinite, 1 ignored).
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free_rank = 0;
        let mut primary: Vec<(BigInt, u32)> = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                primary.extend(prime_power_factors(&d));
            }
        }
        AbelianInvariants { free_rank, torsion: chain_from_primary(&primary) }
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Self {
        let mut inv = Self::from_cyclic_orders(torsion.iter().map(|&d| BigInt::from(d)));
        inv.free_rank += free_rank;
        inv
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Multiset of primary cyclic orders as (prime, exponent), sorted.
    pub fn primary_components(&self) -> Vec<(BigInt, u32)> {
        let mut out: Vec<(BigInt, u32)> = self.torsion.iter().flat_map(prime_power_factors).collect();
        out.sort();
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut prim = self.primary_components();
        prim.extend(other.primary_components());
        AbelianInvariants { free_rank: self.free_rank + other.free_rank, torsion: chain_from_primary(&prim) }
    }

    /// Removes one copy of each primary component of `factor`; `None` unless
    /// `factor` is a direct factor.
    pub fn complement(&self, factor: &Self) -> Option<Self> {
        if !is_direct_factor(factor, self) {
            return None;
        }
        let mut prim = self.primary_components();
        for c in factor.primary_components() {
            let pos = prim.iter().position(|x| *x == c)?;
            prim.remove(pos);
        }
        Some(AbelianInvariants { free_rank: self.free_rank - factor.free_rank, torsion: chain_from_primary(&prim) })
    }

    fn partitions(&self) -> BTreeMap<BigInt, Vec<u32>> {
        let mut out: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for (p, e) in self.primary_components() {
            out.entry(p).or_default().push(e);
        }
        for v in out.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn prime_power_factors(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn chain_from_primary(prim: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut by_prime: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for (p, e) in prim {
        by_prime.entry(p.clone()).or_default().push(*e);
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut chain = vec![BigInt::one(); len];
    for (p, mut es) in by_prime {
        es.sort_unstable();
        // largest exponents go to the end of the chain
        let offset = len - es.len();
        for (k, e) in es.into_iter().enumerate() {
            chain[offset + k] *= p.pow(e);
        }
    }
    chain
}

/// Invariants of `Z^n / rowspace(M)` where `n = M.cols()`.
pub fn cokernel_invariants<E: Int>(m: &Matrix<E>) -> AbelianInvariants {
    let s = smith_normal_form(m);
    let factors = s.invariant_factors();
    let free_rank = m.cols() - factors.len();
    let mut inv = AbelianInvariants::from_cyclic_orders(factors.iter().map(|d| d.to_big()));
    inv.free_rank += free_rank;
    inv
}

/// `x` is a direct factor of `y`: primary components of `x` form a
/// sub-multiset of those of `y` and the free rank fits.
pub fn is_direct_factor(x: &AbelianInvariants, y: &AbelianInvariants) -> bool {
    if x.free_rank > y.free_rank {
        return false;
    }
    let mut ys = y.primary_components();
    for c in x.primary_components() {
        match ys.iter().position(|v| *v == c) {
            Some(i) => {
                ys.remove(i);
            }
            None => return false,
        }
    }
    true
}

/// `x` is isomorphic to a subgroup of the finite group `y`.
pub fn embeds_as_subgroup(x: &AbelianInvariants, y: &AbelianInvariants) -> Result<bool, LinalgError> {
    if !x.is_finite() || !y.is_finite() {
        return Err(LinalgError::InfiniteGroup);
    }
    let (px, py) = (x.partitions(), y.partitions());
    Ok(px.iter().all(|(p, lx)| {
        let empty = Vec::new();
        let ly = py.get(p).unwrap_or(&empty);
        lx.len() <= ly.len() && lx.iter().zip(ly).all(|(a, b)| a <= b)
    }))
}

/// `x` is isomorphic to a quotient of the finite group `y`; for finite abelian
/// groups this coincides with being a subgroup.
pub fn is_quotient(x: &AbelianInvariants, y: &AbelianInvariants) -> Result<bool, LinalgError> {
    embeds_as_subgroup(x, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianTests {
    pub is_direct_factor: bool,
    pub embeds_as_subgroup: bool,
    pub is_quotient: bool,
}

pub fn abelian_tests(x: &AbelianInvariants, y: &AbelianInvariants) -> Result<AbelianTests, LinalgError> {
    Ok(AbelianTests {
        is_direct_factor: is_direct_factor(x, y),
        embeds_as_subgroup: embeds_as_subgroup(x, y)?,
        is_quotient: is_quotient(x, y)?,
    })
}

impl AbelianInvariants {
    /// Torsion orders as machine integers, for display and small brute-force checks.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("small invariant")).collect()
    }

    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.last().cloned().unwrap_or_else(BigInt::one))
    }
}
