//! Subgroups of a group given by a consistent nilpotent pc presentation,
//! stored as canonical induced generating sequences.
//!
//! A sequence is canonical when its elements have strictly increasing depth,
//! each leading exponent is positive (and divides the relative order when
//! that is finite), and the entries of every element at the other leading
//! positions are reduced modulo the corresponding leading exponents. Two
//! subgroups are equal exactly when their canonical sequences are.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{cokernel_invariants, AbelianInvariants, Matrix};
use crate::pc::{ExpVec, PcPresentation};
use crate::scalar::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcGroupError {
    #[error("subgroups live in different ambient presentations")]
    MismatchedAmbient,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotContained,
    #[error("quotient is not abelian")]
    NonAbelianQuotient,
}

#[derive(Clone, Debug)]
pub struct PcSubgroup<E> {
    pc: Arc<PcPresentation<E>>,
    seq: Vec<ExpVec<E>>,
}

impl<E: Int> PartialEq for PcSubgroup<E> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pc, &other.pc) && self.seq == other.seq
    }
}

impl<E: Int> Eq for PcSubgroup<E> {}

/// Sequence under construction: `slots[d]` holds the element of depth `d`.
struct Builder<'a, E> {
    pc: &'a PcPresentation<E>,
    slots: Vec<Option<ExpVec<E>>>,
    fresh: Vec<usize>,
}

impl<'a, E: Int> Builder<'a, E> {
    fn new(pc: &'a PcPresentation<E>) -> Self {
        Builder { pc, slots: vec![None; pc.len()], fresh: Vec::new() }
    }

    fn from_seq(pc: &'a PcPresentation<E>, seq: &[ExpVec<E>]) -> Self {
        let mut b = Self::new(pc);
        for h in seq {
            b.slots[PcPresentation::<E>::depth(h)] = Some(h.clone());
        }
        b
    }

    /// Adds `x` to the generated subgroup, keeping the echelon form; records
    /// every depth whose element changed in `fresh`.
    fn add(&mut self, x: ExpVec<E>) {
        let pc = self.pc;
        let mut queue = VecDeque::from(vec![x]);
        while let Some(mut x) = queue.pop_front() {
            loop {
                let d = PcPresentation::<E>::depth(&x);
                if d == x.len() {
                    break;
                }
                let a = x[d].clone();
                let order = pc.order_of(d).cloned();
                match &self.slots[d] {
                    Some(h) if (a.clone() % h[d].clone()).is_zero() => {
                        let q = a / h[d].clone();
                        x = pc.mul(&x, &pc.pow(h, &-q));
                    }
                    slot => {
                        // gcd-combine with the current element (or with the
                        // relative order, which acts as a virtual element)
                        let (l, h) = match (slot, &order) {
                            (Some(h), _) => (h[d].clone(), Some(h.clone())),
                            (None, Some(o)) => (o.clone(), None),
                            (None, None) => (E::zero(), None),
                        };
                        let (g, u, v) = E::ext_gcd(&l, &a);
                        let mut y = pc.pow(&x, &v);
                        if let Some(h) = &h {
                            y = pc.mul(&pc.pow(h, &u), &y);
                        }
                        debug_assert!(y[d] == g || order.as_ref().is_some_and(|o| (y[d].clone() - g.clone()).mod_floor(o).is_zero()));
                        if let Some(h) = h {
                            queue.push_back(pc.mul(&h, &pc.pow(&y, &-(l / g.clone()))));
                        }
                        queue.push_back(pc.mul(&x, &pc.pow(&y, &-(a / g.clone()))));
                        if let Some(o) = &order {
                            queue.push_back(pc.pow(&y, &(o.clone() / g)));
                        }
                        self.slots[d] = Some(y);
                        self.fresh.push(d);
                        break;
                    }
                }
            }
        }
    }

    /// Closes under commutators among the elements and with `conjugators`
    /// (so the result is normalized by them).
    fn close(&mut self, conjugators: &[ExpVec<E>]) {
        while let Some(d) = self.fresh.pop() {
            let Some(h) = self.slots[d].clone() else { continue };
            let others: Vec<ExpVec<E>> = self.slots.iter().flatten().filter(|o| **o != h).cloned().collect();
            for o in others.iter().chain(conjugators) {
                if self.pc.commute_by_weight(&h, o) {
                    continue;
                }
                let c = self.pc.commutator(&h, o);
                if !PcPresentation::<E>::is_identity(&c) {
                    self.add(c);
                }
            }
        }
    }

    fn finish(self) -> Vec<ExpVec<E>> {
        let pc = self.pc;
        let mut seq: Vec<ExpVec<E>> = self.slots.into_iter().flatten().collect();
        // entries at later pivots reduced into [0, lead)
        for i in 0..seq.len() {
            for k in i + 1..seq.len() {
                let d = PcPresentation::<E>::depth(&seq[k]);
                let lead = seq[k][d].clone();
                let q = seq[i][d].div_floor(&lead);
                if !q.is_zero() {
                    seq[i] = pc.mul(&seq[i], &pc.pow(&seq[k], &-q));
                }
            }
        }
        seq
    }
}

impl<E: Int> PcSubgroup<E> {
    pub fn trivial(pc: Arc<PcPresentation<E>>) -> Self {
        PcSubgroup { pc, seq: Vec::new() }
    }

    pub fn whole(pc: Arc<PcPresentation<E>>) -> Self {
        let seq = (0..pc.len()).map(|i| pc.gen(i)).collect();
        PcSubgroup { pc, seq }
    }

    /// `⟨g_i : w(g_i) ≥ w⟩`, which is `γ_w` when the presentation refines the
    /// lower central series with weights as layers.
    pub fn weight_tail(pc: Arc<PcPresentation<E>>, w: usize) -> Self {
        let seq = (0..pc.len()).filter(|&i| pc.weight(i) >= w).map(|i| pc.gen(i)).collect();
        PcSubgroup { pc, seq }
    }

    /// `⟨g_m, g_{m+1}, …⟩`.
    pub fn index_tail(pc: Arc<PcPresentation<E>>, m: usize) -> Self {
        let seq = (m..pc.len()).map(|i| pc.gen(i)).collect();
        PcSubgroup { pc, seq }
    }

    pub fn generated_by(pc: Arc<PcPresentation<E>>, elems: &[ExpVec<E>]) -> Self {
        Self::closure(pc, &[], elems, &[])
    }

    /// Normal closure in the ambient group.
    pub fn normal_closure_of(pc: Arc<PcPresentation<E>>, elems: &[ExpVec<E>]) -> Self {
        let gens: Vec<ExpVec<E>> = (0..pc.len()).map(|i| pc.gen(i)).collect();
        Self::closure(pc, &[], elems, &gens)
    }

    /// The smallest subgroup containing `elems` and normalized by every
    /// element of `conjugators`.
    pub fn closure_under(pc: Arc<PcPresentation<E>>, elems: &[ExpVec<E>], conjugators: &[ExpVec<E>]) -> Self {
        Self::closure(pc, &[], elems, conjugators)
    }

    fn closure(pc: Arc<PcPresentation<E>>, start: &[ExpVec<E>], elems: &[ExpVec<E>], conjugators: &[ExpVec<E>]) -> Self {
        let seq = {
            // `start` is already a closed sequence, so only what changes needs
            // processing
            let mut b = Builder::from_seq(&pc, start);
            for x in elems {
                b.add(x.clone());
            }
            b.close(conjugators);
            b.finish()
        };
        PcSubgroup { pc, seq }
    }

    pub fn ambient(&self) -> &Arc<PcPresentation<E>> {
        &self.pc
    }

    pub fn gens(&self) -> &[ExpVec<E>] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.seq.iter().map(|h| PcPresentation::<E>::depth(h)).collect()
    }

    /// Relative orders of the induced sequence (zero for infinite).
    pub fn relative_orders(&self) -> Vec<E> {
        self.seq
            .iter()
            .map(|h| {
                let d = PcPresentation::<E>::depth(h);
                match self.pc.order_of(d) {
                    Some(o) => o.clone() / h[d].clone(),
                    None => E::zero(),
                }
            })
            .collect()
    }

    /// Order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.relative_orders().iter().try_fold(BigInt::from(1), |acc, o| (!o.is_zero()).then(|| acc * o.to_big()))
    }

    /// Exponents `c` with `x = ∏ h_i^{c_i}` (in sequence order), or `None`
    /// if `x` is not in the subgroup.
    pub fn sift(&self, x: &[E]) -> Option<Vec<E>> {
        let pc = &self.pc;
        let mut x = x.to_vec();
        let mut coeffs = vec![E::zero(); self.seq.len()];
        for (i, h) in self.seq.iter().enumerate() {
            let d = PcPresentation::<E>::depth(h);
            let dx = PcPresentation::<E>::depth(&x);
            if dx < d {
                return None;
            }
            if dx > d {
                continue;
            }
            if !(x[d].clone() % h[d].clone()).is_zero() {
                return None;
            }
            let q = x[d].clone() / h[d].clone();
            x = pc.mul(&pc.pow(h, &-q.clone()), &x);
            coeffs[i] = q;
        }
        PcPresentation::<E>::is_identity(&x).then_some(coeffs)
    }

    pub fn contains(&self, x: &[E]) -> bool {
        self.sift(x).is_some()
    }

    fn same_ambient(&self, other: &Self) -> Result<(), PcGroupError> {
        if Arc::ptr_eq(&self.pc, &other.pc) {
            Ok(())
        } else {
            Err(PcGroupError::MismatchedAmbient)
        }
    }

    pub fn is_subgroup_of(&self, other: &Self) -> Result<bool, PcGroupError> {
        self.same_ambient(other)?;
        Ok(self.seq.iter().all(|h| other.contains(h)))
    }

    pub fn is_normal(&self) -> bool {
        (0..self.pc.len()).all(|i| self.seq.iter().all(|h| self.contains(&self.pc.conjugate(h, &self.pc.gen(i)))))
    }

    /// `⟨H, K⟩`.
    pub fn join(&self, other: &Self) -> Result<Self, PcGroupError> {
        self.same_ambient(other)?;
        Ok(Self::closure(self.pc.clone(), &self.seq, &other.seq, &[]))
    }

    /// `⟨H, K⟩` for normal `H`, `K` (normal again).
    pub fn normal_join(&self, other: &Self) -> Result<Self, PcGroupError> {
        self.join(other)
    }

    /// Product of several subgroups of the same ambient group.
    pub fn join_all<'b>(pc: Arc<PcPresentation<E>>, parts: impl IntoIterator<Item = &'b Self>) -> Result<Self, PcGroupError>
    where
        E: 'b,
    {
        let mut acc = Self::trivial(pc);
        for p in parts {
            acc = acc.join(p)?;
        }
        Ok(acc)
    }

    /// `[H, K]`: the normal closure of the generator commutators in `⟨H, K⟩`.
    pub fn commutator(&self, other: &Self) -> Result<Self, PcGroupError> {
        self.same_ambient(other)?;
        let pc = &self.pc;
        let mut seeds = Vec::new();
        for h in &self.seq {
            for k in &other.seq {
                let c = pc.commutator(h, k);
                if !PcPresentation::<E>::is_identity(&c) {
                    seeds.push(c);
                }
            }
        }
        let conjugators: Vec<ExpVec<E>> = self.seq.iter().chain(&other.seq).cloned().collect();
        Ok(Self::closure(pc.clone(), &[], &seeds, &conjugators))
    }

    /// `[H, _c K] = [H, K, …, K]` (`c` copies of `K`).
    pub fn iterated_commutator(&self, other: &Self, c: usize) -> Result<Self, PcGroupError> {
        let mut acc = self.clone();
        for _ in 0..c {
            acc = acc.commutator(other)?;
        }
        Ok(acc)
    }

    /// `γ_i` of the ambient group by iterated commutators.
    pub fn lower_central(pc: Arc<PcPresentation<E>>, i: usize) -> Self {
        assert!(i >= 1);
        let g = Self::whole(pc);
        g.iterated_commutator(&g, i - 1).expect("same ambient")
    }

    /// `H ∩ ⟨g_m, …⟩`: the elements of the induced sequence of depth `≥ m`.
    pub fn intersect_index_tail(&self, m: usize) -> Self {
        let seq = self.seq.iter().filter(|h| PcPresentation::<E>::depth(h) >= m).cloned().collect();
        PcSubgroup { pc: self.pc.clone(), seq }
    }

    /// `H ∩ γ_w` via the weight filtration.
    pub fn intersect_weight_tail(&self, w: usize) -> Self {
        let m = (0..self.pc.len()).find(|&i| self.pc.weight(i) >= w).unwrap_or(self.pc.len());
        debug_assert!((m..self.pc.len()).all(|i| self.pc.weight(i) >= w), "weights must be sorted");
        self.intersect_index_tail(m)
    }

    /// `S ∩ N` for normal `N`. In `G × G` the subgroup generated by all
    /// `(s, s)` and `(n, 1)` is `{(sn, s)}`; its elements with trivial first
    /// coordinate are exactly `(1, x)` with `x ∈ S ∩ N`, and with the second
    /// copy placed last they form a tail of the induced sequence.
    pub fn intersect_with_normal(&self, n: &Self) -> Result<Self, PcGroupError> {
        self.same_ambient(n)?;
        if !n.is_normal() {
            return Err(PcGroupError::NotNormal);
        }
        if n.seq.len() == self.pc.len() {
            return Ok(self.clone());
        }
        let (gg, off) = PcPresentation::direct_product(&self.pc, &self.pc);
        let gg = Arc::new(gg);
        let embed = |x: &ExpVec<E>, twice: bool| {
            let mut v = gg.identity();
            for (i, e) in x.iter().enumerate() {
                v[i] = e.clone();
                if twice {
                    v[off + i] = e.clone();
                }
            }
            v
        };
        let mut gens: Vec<ExpVec<E>> = self.seq.iter().map(|s| embed(s, true)).collect();
        gens.extend(n.seq.iter().map(|x| embed(x, false)));
        let l = PcSubgroup::generated_by(gg, &gens);
        let projected: Vec<ExpVec<E>> = l.intersect_index_tail(off).seq.iter().map(|v| v[off..].to_vec()).collect();
        Ok(PcSubgroup::generated_by(self.pc.clone(), &projected))
    }

    /// Invariants of `H/N` for `N ≤ H` with `[H, H] ≤ N`.
    pub fn quotient_invariants(&self, n: &Self) -> Result<AbelianInvariants, PcGroupError> {
        self.same_ambient(n)?;
        if !n.is_subgroup_of(self)? {
            return Err(PcGroupError::NotContained);
        }
        let pc = &self.pc;
        for (i, a) in self.seq.iter().enumerate() {
            for b in &self.seq[..i] {
                if !n.contains(&pc.commutator(a, b)) {
                    return Err(PcGroupError::NonAbelianQuotient);
                }
            }
        }
        let r = self.seq.len();
        let mut rows: Vec<Vec<E>> = Vec::new();
        for (i, o) in self.relative_orders().into_iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let p = pc.pow(&self.seq[i], &o);
            let mut row = self.sift(&p).expect("power of a member is a member");
            row = row.into_iter().map(|e| -e).collect();
            row[i] = row[i].clone() + o;
            rows.push(row);
        }
        for x in &n.seq {
            rows.push(self.sift(x).expect("N ≤ H"));
        }
        Ok(cokernel_invariants(&Matrix::from_rows(rows, r)))
    }
}

#[cfg(test)]
mod tests;
