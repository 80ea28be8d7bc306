//! Collection to the right: `x · g_k^e` is formed by splitting
//! `x = P·T` at `k`, updating the exponent of `g_k` (absorbing a power
//! relation if needed) and multiplying by `T^{g_k^e}`, which is computed
//! in the subgroup `⟨g_{k+1}, …⟩` by applying the conjugation automorphism.

use super::{ExpVec, PcPresentation, Sparse};
use crate::scalar::Int;

/// Below this exponent, powers are formed by repeated multiplication.
const SMALL_POWER: i64 = 8;

impl<E: Int> PcPresentation<E> {
    /// `x ← x · g_k^e`.
    pub fn mul_gen_pow(&self, x: &mut [E], k: usize, e: &E) {
        if e.is_zero() {
            return;
        }
        let n = x.len();
        let mut tail: Sparse<E> = Vec::new();
        for j in k + 1..n {
            if !x[j].is_zero() {
                tail.push((j, std::mem::replace(&mut x[j], E::zero())));
            }
        }
        let mut q = E::zero();
        let s = x[k].clone() + e.clone();
        if self.orders[k].is_zero() {
            x[k] = s;
        } else {
            let (d, r) = s.div_mod_floor(&self.orders[k]);
            q = d;
            x[k] = r;
        }
        if !q.is_zero() {
            let (w, m) = if q.is_positive() { (&self.power[k], q) } else { (&self.ipower[k], -q) };
            if !w.is_empty() {
                self.mul_sparse_pow(x, w, &m);
            }
        }
        if tail.is_empty() {
            return;
        }
        if tail.iter().all(|(j, _)| self.comm[*j][k].is_empty()) {
            self.mul_sparse(x, &tail);
            return;
        }
        let forward = e.is_positive();
        let reps = e.abs().to_u64().expect("exponent too large for repeated conjugation");
        let mut t = tail;
        for _ in 0..reps {
            t = self.apply_aut(k, forward, &t);
        }
        self.mul_sparse(x, &t);
    }

    /// Image of an element of `⟨g_{k+1}, …⟩` under conjugation by `g_k`
    /// (`forward`) or by `g_k⁻¹`.
    pub(crate) fn apply_aut(&self, k: usize, forward: bool, t: &Sparse<E>) -> Sparse<E> {
        let table = if forward { &self.conj } else { &self.iconj };
        let mut y = self.identity();
        for (j, e) in t {
            let img = &table[*j][k];
            if img.len() == 1 {
                self.mul_gen_pow(&mut y, *j, e);
            } else {
                self.mul_sparse_pow(&mut y, img, e);
            }
        }
        self.sparse(&y)
    }

    /// `x ← x · w` for a sparse normal form `w`.
    pub fn mul_sparse(&self, x: &mut [E], w: &Sparse<E>) {
        for (j, e) in w {
            self.mul_gen_pow(x, *j, e);
        }
    }

    /// `x ← x · w^m`.
    pub fn mul_sparse_pow(&self, x: &mut [E], w: &Sparse<E>, m: &E) {
        if m.is_zero() || w.is_empty() {
            return;
        }
        if w.len() == 1 {
            let (j, e) = &w[0];
            self.mul_gen_pow(x, *j, &(e.clone() * m.clone()));
            return;
        }
        let base: Sparse<E> = if m.is_negative() { self.sparse(&self.inverse(&self.to_dense(w))) } else { w.clone() };
        let m = m.abs();
        if m.to_i64().is_some_and(|m| m <= SMALL_POWER) {
            for _ in 0..m.to_i64().unwrap() {
                self.mul_sparse(x, &base);
            }
        } else {
            let p = self.pow_positive(&self.to_dense(&base), &m);
            self.mul_sparse(x, &self.sparse(&p));
        }
    }

    fn pow_positive(&self, x: &[E], m: &E) -> ExpVec<E> {
        let two = E::one() + E::one();
        let mut result = self.identity();
        let mut base = x.to_vec();
        let mut m = m.clone();
        while !m.is_zero() {
            if m.is_odd() {
                result = self.mul(&result, &base);
            }
            m = m / two.clone();
            if !m.is_zero() {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn mul(&self, x: &[E], y: &[E]) -> ExpVec<E> {
        let mut z = x.to_vec();
        for (j, e) in y.iter().enumerate() {
            if !e.is_zero() {
                self.mul_gen_pow(&mut z, j, e);
            }
        }
        z
    }

    pub fn inverse(&self, x: &[E]) -> ExpVec<E> {
        // solve x·y = 1 from the left
        let mut z = x.to_vec();
        let mut y = self.identity();
        for j in 0..x.len() {
            if z[j].is_zero() {
                continue;
            }
            let e = if self.orders[j].is_zero() { -z[j].clone() } else { self.orders[j].clone() - z[j].clone() };
            self.mul_gen_pow(&mut z, j, &e);
            debug_assert!(z[j].is_zero());
            y[j] = e;
        }
        y
    }

    pub fn pow(&self, x: &[E], m: &E) -> ExpVec<E> {
        if m.is_negative() {
            self.pow_positive(&self.inverse(x), &-m.clone())
        } else {
            self.pow_positive(x, m)
        }
    }

    /// `y⁻¹ x y`.
    pub fn conjugate(&self, x: &[E], y: &[E]) -> ExpVec<E> {
        self.mul(&self.mul(&self.inverse(y), x), y)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: &[E], y: &[E]) -> ExpVec<E> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        // [x,y] = (yx)⁻¹ (xy)
        self.mul(&self.inverse(&yx), &xy)
    }

    /// Collects an arbitrary sequence of generator powers.
    pub fn collect(&self, word: &[(usize, E)]) -> ExpVec<E> {
        let mut x = self.identity();
        for (j, e) in word {
            self.mul_gen_pow(&mut x, *j, e);
        }
        x
    }
}
