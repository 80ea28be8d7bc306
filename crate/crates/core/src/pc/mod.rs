//! Weighted polycyclic presentations of nilpotent groups and collection.
//!
//! Generators `g_0, …, g_{n-1}` carry a weight and a relative order (zero
//! means infinite). Relations are
//!
//! * `g_i^{o_i} = w_i` with `w_i ∈ ⟨g_{i+1}, …⟩` for finite `o_i`,
//! * `[g_j, g_i] = w_{ji}` with `w_{ji} ∈ ⟨g_{j+1}, …⟩` for `j > i`,
//!
//! every right-hand side stored as a sparse normal form. Elements are dense
//! exponent vectors `g_0^{x_0} ⋯ g_{n-1}^{x_{n-1}}` with `0 ≤ x_i < o_i` for
//! finite `o_i`.

mod collect;
mod consistency;

use crate::scalar::Int;

pub use consistency::Overlap;

/// Dense exponent vector.
pub type ExpVec<E> = Vec<E>;

/// Sparse normal form: `(index, exponent)` pairs, indices increasing.
pub type Sparse<E> = Vec<(usize, E)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation<E> {
    weights: Vec<usize>,
    orders: Vec<E>,
    power: Vec<Sparse<E>>,
    comm: Vec<Vec<Sparse<E>>>,
    // derived by `finalize`
    conj: Vec<Vec<Sparse<E>>>,
    iconj: Vec<Vec<Sparse<E>>>,
    ipower: Vec<Sparse<E>>,
    graded: bool,
    ready: bool,
}

impl<E: Int> PcPresentation<E> {
    /// Generators with the given weights and relative orders and all
    /// relations trivial (so, an abelian group until relations are set).
    pub fn new(weights: Vec<usize>, orders: Vec<E>) -> Self {
        assert_eq!(weights.len(), orders.len());
        assert!(orders.iter().all(|o| !o.is_negative() && !o.is_one()), "relative orders are 0 or at least 2");
        let n = weights.len();
        let mut p = PcPresentation {
            weights,
            orders,
            power: vec![Vec::new(); n],
            comm: (0..n).map(|j| vec![Vec::new(); j]).collect(),
            conj: Vec::new(),
            iconj: Vec::new(),
            ipower: Vec::new(),
            graded: false,
            ready: false,
        };
        p.finalize();
        p
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    /// Largest weight, i.e. the class when the presentation refines the lower
    /// central series.
    pub fn class(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn orders(&self) -> &[E] {
        &self.orders
    }

    pub fn order_of(&self, i: usize) -> Option<&E> {
        (!self.orders[i].is_zero()).then(|| &self.orders[i])
    }

    pub fn power(&self, i: usize) -> &Sparse<E> {
        &self.power[i]
    }

    /// `[g_j, g_i]` for `j > i`.
    pub fn comm(&self, j: usize, i: usize) -> &Sparse<E> {
        &self.comm[j][i]
    }

    /// Order of the group, `None` when infinite.
    pub fn group_order(&self) -> Option<E> {
        self.orders.iter().try_fold(E::one(), |acc, o| (!o.is_zero()).then(|| acc * o.clone()))
    }

    fn check_rhs(&self, after: usize, rhs: &Sparse<E>) {
        let mut last = after;
        for (k, e) in rhs {
            assert!(*k > last, "right-hand side must be a normal form after {after}");
            assert!(!e.is_zero(), "zero exponent in sparse normal form");
            if !self.orders[*k].is_zero() {
                assert!(!e.is_negative() && *e < self.orders[*k], "exponent not reduced");
            }
            last = *k;
        }
    }

    pub fn set_power(&mut self, i: usize, rhs: Sparse<E>) {
        assert!(!self.orders[i].is_zero(), "power relation on an infinite generator");
        self.check_rhs(i, &rhs);
        self.power[i] = rhs;
        self.ready = false;
    }

    pub fn set_comm(&mut self, j: usize, i: usize, rhs: Sparse<E>) {
        assert!(j > i);
        self.check_rhs(j, &rhs);
        self.comm[j][i] = rhs;
        self.ready = false;
    }

    /// Precomputes conjugates by inverses and inverse power words. Must run
    /// after the last `set_*` call and before collecting.
    pub fn finalize(&mut self) {
        let n = self.len();
        self.conj = (0..n)
            .map(|j| {
                (0..j)
                    .map(|i| {
                        let mut v = vec![(j, E::one())];
                        v.extend(self.comm[j][i].iter().cloned());
                        v
                    })
                    .collect()
            })
            .collect();
        self.iconj = (0..n).map(|j| vec![Vec::new(); j]).collect();
        self.ipower = vec![Vec::new(); n];
        self.graded = self.weights.windows(2).all(|w| w[0] <= w[1])
            && (0..n).all(|j| (0..j).all(|i| self.comm[j][i].iter().all(|(k, _)| self.weights[*k] >= self.weights[i] + self.weights[j])));
        self.ready = true;
        // φ_i⁻¹(g_j) = g_j · φ_i⁻¹(c_j)⁻¹ where φ_i(g_j) = g_j c_j; this only
        // needs data attached to generators deeper than `i`.
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                let c = &self.comm[j][i];
                let v = if c.is_empty() {
                    vec![(j, E::one())]
                } else {
                    let pre = self.apply_aut(i, false, c);
                    let inv = self.inverse(&self.to_dense(&pre));
                    let mut x = self.gen(j);
                    self.mul_sparse(&mut x, &self.sparse(&inv));
                    self.sparse(&x)
                };
                self.iconj[j][i] = v;
            }
            if !self.power[i].is_empty() {
                let inv = self.inverse(&self.to_dense(&self.power[i]));
                self.ipower[i] = self.sparse(&inv);
            }
        }
    }

    /// True when weights are nondecreasing and `[g_j, g_i]` only involves
    /// generators of weight at least `w(i) + w(j)`. Then the index tails
    /// `W_a = ⟨g_k : w(k) ≥ a⟩` satisfy `[W_a, W_b] ≤ W_{a+b}`.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Whether `[x, y] = 1` follows from the weights alone: both lie in tails
    /// whose weights add up past the class.
    pub fn commute_by_weight(&self, x: &[E], y: &[E]) -> bool {
        let (dx, dy) = (Self::depth(x), Self::depth(y));
        // graded weights are sorted, so the last one is the class
        self.graded && (dx == x.len() || dy == y.len() || self.weights[dx] + self.weights[dy] > *self.weights.last().unwrap_or(&0))
    }

    pub fn is_ready(&self) -> bool {
        self.ready
    }

    pub fn identity(&self) -> ExpVec<E> {
        vec![E::zero(); self.len()]
    }

    pub fn gen(&self, i: usize) -> ExpVec<E> {
        let mut v = self.identity();
        v[i] = E::one();
        v
    }

    pub fn is_identity(x: &[E]) -> bool {
        x.iter().all(|e| e.is_zero())
    }

    pub fn sparse(&self, x: &[E]) -> Sparse<E> {
        x.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (i, e.clone())).collect()
    }

    pub fn to_dense(&self, s: &Sparse<E>) -> ExpVec<E> {
        let mut v = self.identity();
        for (i, e) in s {
            v[*i] = e.clone();
        }
        v
    }

    /// Index of the first nonzero exponent (`len()` for the identity).
    pub fn depth(x: &[E]) -> usize {
        x.iter().position(|e| !e.is_zero()).unwrap_or(x.len())
    }

    /// Direct product `P × Q` on the generators of `P` followed by those of
    /// `Q` (weights are kept, so they need not be sorted). Returns the
    /// presentation and the offset of the second factor.
    pub fn direct_product(p: &Self, q: &Self) -> (Self, usize) {
        let off = p.len();
        let mut weights = p.weights.clone();
        weights.extend(q.weights.iter().copied());
        let mut orders = p.orders.clone();
        orders.extend(q.orders.iter().cloned());
        let mut r = PcPresentation::new(weights, orders);
        for (src, shift) in [(p, 0), (q, off)] {
            let remap = |s: &Sparse<E>| s.iter().map(|(k, e)| (k + shift, e.clone())).collect::<Sparse<E>>();
            for i in 0..src.len() {
                if !src.orders[i].is_zero() {
                    r.set_power(i + shift, remap(&src.power[i]));
                }
                for h in 0..i {
                    r.set_comm(i + shift, h + shift, remap(&src.comm[i][h]));
                }
            }
        }
        r.finalize();
        (r, off)
    }
}

#[cfg(test)]
mod tests;
