use super::{commutator, GenSym, Word};

/// One element of a Hall basis. Children are indices into the basis list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicCommutator {
    Gen(usize),
    /// `[u, v]` with `u > v` and, when `u = [s, t]`, `t <= v`.
    Pair(usize, usize),
}

/// Hall basic commutators on `n` generators up to a weight bound.
///
/// Order: by weight, then within a weight by the pair `(u, v)` of child
/// indices, lexicographically. Generators come first in their given order.
#[derive(Clone, Debug)]
pub struct HallBasis {
    pub elements: Vec<BasicCommutator>,
    pub weights: Vec<usize>,
    by_weight: Vec<std::ops::Range<usize>>,
}

impl HallBasis {
    /// Elements of weight `w` (1-based), as index range.
    pub fn of_weight(&self, w: usize) -> std::ops::Range<usize> {
        self.by_weight.get(w - 1).cloned().unwrap_or(0..0)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_weight.iter().map(|r| r.len()).collect()
    }

    pub fn to_word(&self, i: usize, gens: &[GenSym]) -> Word {
        match self.elements[i] {
            BasicCommutator::Gen(g) => Word::gen(&gens[g]),
            BasicCommutator::Pair(u, v) => commutator(&self.to_word(u, gens), &self.to_word(v, gens)),
        }
    }

    pub fn render(&self, i: usize, gens: &[GenSym]) -> String {
        match self.elements[i] {
            BasicCommutator::Gen(g) => gens[g].to_string(),
            BasicCommutator::Pair(u, v) => format!("[{},{}]", self.render(u, gens), self.render(v, gens)),
        }
    }
}

pub fn hall_basis(n: usize, max_weight: usize) -> HallBasis {
    let mut elements: Vec<BasicCommutator> = (0..n).map(BasicCommutator::Gen).collect();
    let mut weights = vec![1; n];
    let mut by_weight = vec![0..n];
    for k in 2..=max_weight {
        let mut new = Vec::new();
        for wv in 1..k {
            let wu = k - wv;
            if wu < wv {
                continue;
            }
            for u in by_weight[wu - 1].clone() {
                for v in by_weight[wv - 1].clone() {
                    if u <= v {
                        continue;
                    }
                    if let BasicCommutator::Pair(_, t) = elements[u] {
                        if t > v {
                            continue;
                        }
                    }
                    new.push((u, v));
                }
            }
        }
        new.sort_unstable();
        let start = elements.len();
        for (u, v) in new {
            elements.push(BasicCommutator::Pair(u, v));
            weights.push(k);
        }
        by_weight.push(start..elements.len());
    }
    HallBasis { elements, weights, by_weight }
}

/// Rank of the weight-`k` factor of the lower central series of the free group
/// of rank `n`: `(1/k) Σ_{d | k} μ(d) n^{k/d}`.
pub fn witt_number(n: u64, k: u64) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=k {
        if k % d == 0 {
            total += mobius(d) as i128 * (n as i128).pow((k / d) as u32);
        }
    }
    (total / k as i128) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(hall_basis(2, 3).counts(), vec![2, 1, 2]);
        assert_eq!(hall_basis(1, 4).counts(), vec![1, 0, 0, 0]);
        assert_eq!(hall_basis(3, 2).counts(), vec![3, 3]);
    }

    #[test]
    fn basis_elements_have_their_weight() {
        let hb = hall_basis(2, 4);
        let gens = super::super::letters(2);
        for i in 0..hb.elements.len() {
            let w = hb.to_word(i, &gens);
            assert!(!w.is_identity());
            assert_eq!(hb.render(i, &gens).matches(['a', 'b']).count(), hb.weights[i]);
        }
    }
}
