//! Breadth-first orbit search for matrices over a finite ring.
//!
//! Matrices are index vectors into the ring's element table and are encoded
//! as base-|R| numbers with the first entry most significant, so code order
//! and lexicographic order agree. The group acting on each side is generated
//! by transvections I + sE_ij and diagonal unit matrices; over a ring of
//! stable range 1 (every finite ring) these generate all of GL_k.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::finite::FiniteRing;
use crate::matrix::{index_identity, index_mul};

#[derive(Debug, Clone)]
pub(crate) struct Gen {
    pub(crate) m: Vec<usize>,
    pub(crate) inv: Vec<usize>,
}

pub(crate) fn generators(fr: &FiniteRing, k: usize) -> Vec<Gen> {
    let id = index_identity(fr, k);
    let mut gens = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for s in 1..fr.len() {
                let mut m = id.clone();
                m[i * k + j] = s;
                let mut inv = id.clone();
                inv[i * k + j] = fr.neg(s);
                gens.push(Gen { m, inv });
            }
        }
    }
    for pos in 0..k {
        for &u in fr.units() {
            if u == fr.one() {
                continue;
            }
            let mut m = id.clone();
            m[pos * k + pos] = u;
            let mut inv = id.clone();
            inv[pos * k + pos] = fr.inverse(u).expect("units are invertible");
            gens.push(Gen { m, inv });
        }
    }
    gens
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Left(usize),
    Right(usize),
}

/// Transforms reaching `end = p * start * q`, with their inverses.
#[derive(Debug, Clone)]
pub(crate) struct Path {
    pub(crate) end: Vec<usize>,
    pub(crate) p: Vec<usize>,
    pub(crate) p_inv: Vec<usize>,
    pub(crate) q: Vec<usize>,
    pub(crate) q_inv: Vec<usize>,
}

pub(crate) struct OrbitSpace<'a> {
    pub(crate) fr: &'a FiniteRing,
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    left: Vec<Gen>,
    right: Vec<Gen>,
}

impl<'a> OrbitSpace<'a> {
    pub(crate) fn new(fr: &'a FiniteRing, rows: usize, cols: usize, act_left: bool, act_right: bool) -> Self {
        OrbitSpace {
            fr,
            rows,
            cols,
            left: if act_left { generators(fr, rows) } else { Vec::new() },
            right: if act_right { generators(fr, cols) } else { Vec::new() },
        }
    }

    /// |R|^(rows*cols), if it fits in u64.
    pub(crate) fn state_count(fr: &FiniteRing, rows: usize, cols: usize) -> Option<u64> {
        (fr.len() as u64).checked_pow(u32::try_from(rows * cols).ok()?)
    }

    pub(crate) fn encode(&self, m: &[usize]) -> u64 {
        let n = self.fr.len() as u64;
        m.iter().fold(0, |code, &e| code * n + e as u64)
    }

    pub(crate) fn decode(&self, mut code: u64) -> Vec<usize> {
        let n = self.fr.len() as u64;
        let mut m = vec![0usize; self.rows * self.cols];
        for slot in m.iter_mut().rev() {
            *slot = (code % n) as usize;
            code /= n;
        }
        m
    }

    fn steps(&self) -> impl Iterator<Item = Step> {
        (0..self.left.len())
            .map(Step::Left)
            .chain((0..self.right.len()).map(Step::Right))
    }

    fn apply(&self, m: &[usize], step: Step) -> Vec<usize> {
        let (r, c) = (self.rows, self.cols);
        match step {
            Step::Left(g) => index_mul(self.fr, &self.left[g].m, m, r, r, c),
            Step::Right(g) => index_mul(self.fr, m, &self.right[g].m, r, c, c),
        }
    }

    /// First state in breadth-first order satisfying `target`, or the orbit
    /// size when there is none.
    pub(crate) fn search(&self, start: &[usize], target: impl Fn(&[usize]) -> bool) -> Result<Path, usize> {
        let start_code = self.encode(start);
        let mut parent: HashMap<u64, Option<(u64, Step)>> = HashMap::from([(start_code, None)]);
        let mut queue = VecDeque::from([start_code]);
        while let Some(code) = queue.pop_front() {
            let m = self.decode(code);
            if target(&m) {
                return Ok(self.reconstruct(&parent, code, m));
            }
            for step in self.steps() {
                let next = self.encode(&self.apply(&m, step));
                parent.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    Some((code, step))
                });
            }
        }
        Err(parent.len())
    }

    fn reconstruct(&self, parent: &HashMap<u64, Option<(u64, Step)>>, end_code: u64, end: Vec<usize>) -> Path {
        let mut steps = Vec::new();
        let mut code = end_code;
        while let Some((prev, step)) = parent[&code] {
            steps.push(step);
            code = prev;
        }
        steps.reverse();
        let fr = self.fr;
        let (r, c) = (self.rows, self.cols);
        let mut path = Path {
            end,
            p: index_identity(fr, r),
            p_inv: index_identity(fr, r),
            q: index_identity(fr, c),
            q_inv: index_identity(fr, c),
        };
        for step in steps {
            match step {
                Step::Left(g) => {
                    path.p = index_mul(fr, &self.left[g].m, &path.p, r, r, r);
                    path.p_inv = index_mul(fr, &path.p_inv, &self.left[g].inv, r, r, r);
                }
                Step::Right(g) => {
                    path.q = index_mul(fr, &path.q, &self.right[g].m, c, c, c);
                    path.q_inv = index_mul(fr, &self.right[g].inv, &path.q_inv, c, c, c);
                }
            }
        }
        path
    }

    /// Splits all |R|^(rows*cols) matrices into orbits. Returns, per orbit in
    /// order of its smallest member, that member's code and whether the orbit
    /// meets `target`.
    pub(crate) fn partition(&self, target: impl Fn(&[usize]) -> bool) -> Vec<(u64, bool)> {
        let total = Self::state_count(self.fr, self.rows, self.cols).expect("caller checked the size");
        let mut visited = FixedBitSet::with_capacity(total as usize);
        let mut orbits = Vec::new();
        let mut queue = VecDeque::new();
        for code in 0..total {
            if visited.put(code as usize) {
                continue;
            }
            let mut found = false;
            queue.push_back(code);
            while let Some(c) = queue.pop_front() {
                let m = self.decode(c);
                found = found || target(&m);
                for step in self.steps() {
                    let next = self.encode(&self.apply(&m, step));
                    if !visited.put(next as usize) {
                        queue.push_back(next);
                    }
                }
            }
            orbits.push((code, found));
        }
        orbits
    }
}

/// Off-diagonal entries vanish and consecutive diagonal entries satisfy
/// R d_{i+1} R inside R d_i and d_i R.
pub(crate) fn is_reduced(fr: &FiniteRing, m: &[usize], rows: usize, cols: usize) -> bool {
    for i in 0..rows {
        for j in 0..cols {
            if i != j && m[i * cols + j] != 0 {
                return false;
            }
        }
    }
    let diag: Vec<usize> = (0..rows.min(cols)).map(|i| m[i * cols + i]).collect();
    diag.windows(2).all(|w| chain_step(fr, w[0], w[1]))
}

pub(crate) fn chain_step(fr: &FiniteRing, d: usize, next: usize) -> bool {
    let left = fr.left_ideal(d);
    let right = fr.right_ideal(d);
    fr.two_sided_ideal(next)
        .ones()
        .all(|x| left.contains(x) && right.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::RingDescriptor;

    #[test]
    fn generators_are_invertible_pairs() {
        let fr = FiniteRing::of(&RingDescriptor::matrix(2, RingDescriptor::Modular(2))).unwrap();
        for g in generators(&fr, 2) {
            assert_eq!(index_mul(&fr, &g.m, &g.inv, 2, 2, 2), index_identity(&fr, 2));
            assert_eq!(index_mul(&fr, &g.inv, &g.m, 2, 2, 2), index_identity(&fr, 2));
        }
    }

    #[test]
    fn codes_follow_lexicographic_order() {
        let fr = FiniteRing::of(&RingDescriptor::Modular(3)).unwrap();
        let space = OrbitSpace::new(&fr, 1, 2, false, true);
        assert_eq!(space.encode(&[1, 2]), 5);
        assert_eq!(space.decode(5), vec![1, 2]);
        assert!(space.encode(&[0, 2]) < space.encode(&[1, 0]));
    }

    #[test]
    fn search_transforms_are_consistent() {
        let fr = FiniteRing::of(&RingDescriptor::Modular(6)).unwrap();
        let space = OrbitSpace::new(&fr, 2, 2, true, true);
        let a = vec![2, 4, 0, 3];
        let path = space.search(&a, |m| is_reduced(&fr, m, 2, 2)).unwrap();
        let paq = index_mul(&fr, &index_mul(&fr, &path.p, &a, 2, 2, 2), &path.q, 2, 2, 2);
        assert_eq!(paq, path.end);
        assert_eq!(index_mul(&fr, &path.p, &path.p_inv, 2, 2, 2), index_identity(&fr, 2));
        assert_eq!(index_mul(&fr, &path.q_inv, &path.q, 2, 2, 2), index_identity(&fr, 2));
    }

    #[test]
    fn partition_covers_every_state_once() {
        let fr = FiniteRing::of(&RingDescriptor::Modular(4)).unwrap();
        let space = OrbitSpace::new(&fr, 1, 2, false, true);
        let orbits = space.partition(|m| m[1] == 0);
        // Orbits of Z4^2 under GL2(Z4) acting on the right: {0}, unimodular rows, 2*unimodular rows.
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|&(_, found)| found));
    }
}
