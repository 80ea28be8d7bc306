//! Coset enumeration (Hasse–Lehmer–Trotter strategy) with a hard cap on the
//! number of cosets defined. Used only to certify that a finite nilpotent
//! quotient is the whole group.

use crate::presentations::FinitePresentation;
use crate::words::Word;

const UNDEF: u32 = u32::MAX;

struct Table {
    cols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
}

struct CapExceeded;

impl Table {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.rows[c as usize * self.cols + x] = v;
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, CapExceeded> {
        let n = self.parent.len();
        if n >= self.cap {
            return Err(CapExceeded);
        }
        let d = n as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, mut k: u32) -> u32 {
        let mut root = k;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x);
                    self.merge(nu, t, &mut queue);
                } else if self.get(nu, x ^ 1) != UNDEF {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t, &mut queue);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn scan_and_fill(&mut self, a: u32, w: &[usize]) -> Result<(), CapExceeded> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

fn letters(p: &FinitePresentation, w: &Word) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, e) in w.letters() {
        let i = p.generators().iter().position(|h| h == g).expect("generator of the presentation");
        let col = if e.sign() == num_bigint::Sign::Minus { 2 * i + 1 } else { 2 * i };
        let k: usize = e.magnitude().try_into().expect("relator exponent fits in memory");
        out.extend(std::iter::repeat_n(col, k));
    }
    out
}

/// Index of the subgroup generated by `subgroup` in the group of `p`, or
/// `None` if more than `max_cosets` cosets get defined.
pub fn coset_enumeration(p: &FinitePresentation, subgroup: &[Word], max_cosets: usize) -> Option<usize> {
    coset_table(p, subgroup, max_cosets).map(|t| t.first().map_or(1, |row| row.len()))
}

/// The permutation action of every generator on the cosets, numbered so that
/// coset 0 is the subgroup itself: `table[g][k]` is the coset `k·g`.
pub fn coset_table(p: &FinitePresentation, subgroup: &[Word], max_cosets: usize) -> Option<Vec<Vec<u32>>> {
    let cols = 2 * p.generators().len();
    let mut t = Table { cols, rows: vec![UNDEF; cols], parent: vec![0], cap: max_cosets.max(1) };
    let rels: Vec<Vec<usize>> = p.relators().iter().map(|r| letters(p, r)).collect();
    for h in subgroup {
        let w = letters(p, h);
        t.scan_and_fill(0, &w).ok()?;
    }
    let mut a = 0u32;
    while (a as usize) < t.parent.len() {
        for r in &rels {
            if !t.alive(a) {
                break;
            }
            t.scan_and_fill(a, r).ok()?;
        }
        for x in 0..cols {
            if !t.alive(a) {
                break;
            }
            if t.get(a, x) == UNDEF {
                t.define(a, x).ok()?;
            }
        }
        a += 1;
    }
    let alive: Vec<u32> = (0..t.parent.len() as u32).filter(|&c| t.alive(c)).collect();
    let mut index = vec![UNDEF; t.parent.len()];
    for (k, &c) in alive.iter().enumerate() {
        index[c as usize] = k as u32;
    }
    let mut out = Vec::with_capacity(cols / 2);
    for g in 0..cols / 2 {
        let row = alive
            .iter()
            .map(|&c| {
                let d = t.get(c, 2 * g);
                index[t.rep(d) as usize]
            })
            .collect();
        out.push(row);
    }
    Some(out)
}
