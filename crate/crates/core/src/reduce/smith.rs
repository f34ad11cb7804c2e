//! Smith normal form over Z with explicit unimodular transforms.
//!
//! Two elimination orders are provided. They share nothing beyond the row and
//! column primitives, which makes the agreement of their invariant factors a
//! meaningful check.

use dashu_int::{ops::UnsignedAbs, IBig};

/// Dense integer matrix together with the running transforms: `p * a0 * q == a`
/// at every step, and `p_inv`, `q_inv` are maintained alongside.
#[derive(Debug, Clone)]
pub(crate) struct Elimination {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) a: Vec<IBig>,
    pub(crate) p: Vec<IBig>,
    pub(crate) p_inv: Vec<IBig>,
    pub(crate) q: Vec<IBig>,
    pub(crate) q_inv: Vec<IBig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmithStrategy {
    /// Pivot on the entry of least absolute value and reduce by division.
    #[default]
    MinimalPivot,
    /// Pivot on the first nonzero entry in column-major order and clear with
    /// extended-gcd (Bezout) 2x2 steps.
    BezoutSteps,
}

fn identity(k: usize) -> Vec<IBig> {
    (0..k * k).map(|p| if p / k == p % k { IBig::ONE } else { IBig::ZERO }).collect()
}

/// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
pub(crate) fn extended_gcd(a: &IBig, b: &IBig) -> (IBig, IBig, IBig) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (IBig::ONE, IBig::ZERO);
    let (mut t0, mut t1) = (IBig::ZERO, IBig::ONE);
    while r1 != IBig::ZERO {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0 < IBig::ZERO {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Bezout coefficients for a nonzero pivot a. When a | b the pivot is kept
/// (s = sign a, t = 0), so a step that cannot shrink it changes nothing else.
fn pivot_coeffs(a: &IBig, b: &IBig) -> (IBig, IBig, IBig) {
    if b % a == IBig::ZERO {
        let s = if *a < IBig::ZERO { IBig::NEG_ONE } else { IBig::ONE };
        (&s * a, s, IBig::ZERO)
    } else {
        extended_gcd(a, b)
    }
}

impl Elimination {
    pub(crate) fn new(rows: usize, cols: usize, a: Vec<IBig>) -> Self {
        Elimination {
            rows,
            cols,
            a,
            p: identity(rows),
            p_inv: identity(rows),
            q: identity(cols),
            q_inv: identity(cols),
        }
    }

    fn at(&self, i: usize, j: usize) -> &IBig {
        &self.a[i * self.cols + j]
    }

    /// Rows i, j <- (x*ri + y*rj, z*ri + w*rj) for a unimodular [[x,y],[z,w]].
    /// The inverse [[w,-y],[-z,x]] is applied to the columns of p_inv.
    fn row_mix(&mut self, i: usize, j: usize, x: &IBig, y: &IBig, z: &IBig, w: &IBig) {
        debug_assert_eq!(x * w - y * z, IBig::ONE);
        fn mix(m: &mut [IBig], width: usize, i: usize, j: usize, c: [&IBig; 4]) {
            for k in 0..width {
                let (ri, rj) = (m[i * width + k].clone(), m[j * width + k].clone());
                m[i * width + k] = c[0] * &ri + c[1] * &rj;
                m[j * width + k] = c[2] * &ri + c[3] * &rj;
            }
        }
        fn mix_cols(m: &mut [IBig], height: usize, width: usize, i: usize, j: usize, c: [&IBig; 4]) {
            for k in 0..height {
                let (ci, cj) = (m[k * width + i].clone(), m[k * width + j].clone());
                m[k * width + i] = c[0] * &ci + c[2] * &cj;
                m[k * width + j] = c[1] * &ci + c[3] * &cj;
            }
        }
        let (ny, nz) = (-y, -z);
        mix(&mut self.a, self.cols, i, j, [x, y, z, w]);
        mix(&mut self.p, self.rows, i, j, [x, y, z, w]);
        mix_cols(&mut self.p_inv, self.rows, self.rows, i, j, [w, &ny, &nz, x]);
    }

    /// Columns i, j <- (x*ci + z*cj, y*ci + w*cj), i.e. right multiplication
    /// by [[x,y],[z,w]] on the (i, j) coordinates.
    fn col_mix(&mut self, i: usize, j: usize, x: &IBig, y: &IBig, z: &IBig, w: &IBig) {
        debug_assert_eq!(x * w - y * z, IBig::ONE);
        let (rows, cols) = (self.rows, self.cols);
        let (ny, nz) = (-y, -z);
        for k in 0..rows {
            let (ci, cj) = (self.a[k * cols + i].clone(), self.a[k * cols + j].clone());
            self.a[k * cols + i] = x * &ci + z * &cj;
            self.a[k * cols + j] = y * &ci + w * &cj;
        }
        for k in 0..cols {
            let (ci, cj) = (self.q[k * cols + i].clone(), self.q[k * cols + j].clone());
            self.q[k * cols + i] = x * &ci + z * &cj;
            self.q[k * cols + j] = y * &ci + w * &cj;
        }
        // q_inv <- [[w,-y],[-z,x]] * q_inv on rows i, j.
        for k in 0..cols {
            let (ri, rj) = (self.q_inv[i * cols + k].clone(), self.q_inv[j * cols + k].clone());
            self.q_inv[i * cols + k] = w * &ri + &ny * &rj;
            self.q_inv[j * cols + k] = &nz * &ri + x * &rj;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            // A plain swap has determinant -1; rotate, then flip the sign back.
            self.row_mix(i, j, &IBig::ZERO, &IBig::ONE, &IBig::NEG_ONE, &IBig::ZERO);
            self.negate_row(j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.col_mix(i, j, &IBig::ZERO, &IBig::NEG_ONE, &IBig::ONE, &IBig::ZERO);
            self.negate_col(j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let (rows, cols) = (self.rows, self.cols);
        for k in 0..cols {
            self.a[i * cols + k] = -&self.a[i * cols + k];
        }
        for k in 0..rows {
            self.p[i * rows + k] = -&self.p[i * rows + k];
            self.p_inv[k * rows + i] = -&self.p_inv[k * rows + i];
        }
    }

    fn negate_col(&mut self, j: usize) {
        let (rows, cols) = (self.rows, self.cols);
        for k in 0..rows {
            self.a[k * cols + j] = -&self.a[k * cols + j];
        }
        for k in 0..cols {
            self.q[k * cols + j] = -&self.q[k * cols + j];
            self.q_inv[j * cols + k] = -&self.q_inv[j * cols + k];
        }
    }

    /// row i += c * row j
    fn add_row(&mut self, i: usize, j: usize, c: &IBig) {
        let (rows, cols) = (self.rows, self.cols);
        for k in 0..cols {
            let v = c * &self.a[j * cols + k];
            self.a[i * cols + k] += v;
        }
        for k in 0..rows {
            let v = c * &self.p[j * rows + k];
            self.p[i * rows + k] += v;
            // p_inv <- p_inv * (I - c E_ij): column j -= c * column i
            let w = c * &self.p_inv[k * rows + i];
            self.p_inv[k * rows + j] -= w;
        }
    }

    /// col i += c * col j
    fn add_col(&mut self, i: usize, j: usize, c: &IBig) {
        let (rows, cols) = (self.rows, self.cols);
        for k in 0..rows {
            let v = c * &self.a[k * cols + j];
            self.a[k * cols + i] += v;
        }
        for k in 0..cols {
            let v = c * &self.q[k * cols + j];
            self.q[k * cols + i] += v;
            // q_inv <- (I - c E_ji) * q_inv: row j -= c * row i
            let w = c * &self.q_inv[i * cols + k];
            self.q_inv[j * cols + k] -= w;
        }
    }

    fn find_in_block(&self, t: usize, column_major: bool, pick_min: bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let coords: Vec<(usize, usize)> = if column_major {
            (t..self.cols).flat_map(|j| (t..self.rows).map(move |i| (i, j))).collect()
        } else {
            (t..self.rows).flat_map(|i| (t..self.cols).map(move |j| (i, j))).collect()
        };
        for (i, j) in coords {
            let v = self.at(i, j);
            if *v == IBig::ZERO {
                continue;
            }
            match best {
                None => {
                    best = Some((i, j));
                    if !pick_min {
                        return best;
                    }
                }
                Some((bi, bj)) => {
                    if v.unsigned_abs() < self.at(bi, bj).unsigned_abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn bring_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// First entry of the trailing block not divisible by the pivot.
    fn indivisible(&self, t: usize) -> Option<usize> {
        let d = self.at(t, t).clone();
        for i in t + 1..self.rows {
            for j in t + 1..self.cols {
                if self.at(i, j) % &d != IBig::ZERO {
                    return Some(i);
                }
            }
        }
        None
    }

    fn finish_pivot(&mut self, t: usize) {
        if *self.at(t, t) < IBig::ZERO {
            self.negate_row(t);
        }
    }

    fn min_pivot(&mut self) {
        let k = self.rows.min(self.cols);
        for t in 0..k {
            let Some(pos) = self.find_in_block(t, false, true) else { break };
            self.bring_to(t, pos);
            loop {
                let d = self.at(t, t).clone();
                for i in t + 1..self.rows {
                    let q = self.at(i, t) / &d;
                    if q != IBig::ZERO {
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..self.cols {
                    let q = self.at(t, j) / &d;
                    if q != IBig::ZERO {
                        self.add_col(j, t, &-q);
                    }
                }
                // Smallest remainder left in the pivot row or column becomes the new pivot.
                let rest = (t + 1..self.rows)
                    .map(|i| (i, t))
                    .chain((t + 1..self.cols).map(|j| (t, j)))
                    .filter(|&(i, j)| *self.at(i, j) != IBig::ZERO)
                    .min_by_key(|&(i, j)| self.at(i, j).unsigned_abs());
                if let Some((i, j)) = rest {
                    if i != t {
                        self.swap_rows(t, i);
                    } else {
                        self.swap_cols(t, j);
                    }
                    continue;
                }
                match self.indivisible(t) {
                    Some(i) => self.add_row(t, i, &IBig::ONE),
                    None => break,
                }
            }
            self.finish_pivot(t);
        }
    }

    fn bezout_steps(&mut self) {
        let k = self.rows.min(self.cols);
        for t in 0..k {
            let Some(pos) = self.find_in_block(t, true, false) else { break };
            self.bring_to(t, pos);
            loop {
                for i in t + 1..self.rows {
                    if *self.at(i, t) == IBig::ZERO {
                        continue;
                    }
                    let (a, b) = (self.at(t, t).clone(), self.at(i, t).clone());
                    let (g, s, u) = pivot_coeffs(&a, &b);
                    let (x, y) = (&a / &g, &b / &g);
                    self.row_mix(t, i, &s, &u, &-y, &x);
                }
                for j in t + 1..self.cols {
                    if *self.at(t, j) == IBig::ZERO {
                        continue;
                    }
                    let (a, b) = (self.at(t, t).clone(), self.at(t, j).clone());
                    let (g, s, u) = pivot_coeffs(&a, &b);
                    let (x, y) = (&a / &g, &b / &g);
                    // columns (t, j) <- (s*ct + u*cj, -y*ct + x*cj)
                    self.col_mix(t, j, &s, &-y, &u, &x);
                }
                if (t + 1..self.rows).any(|i| *self.at(i, t) != IBig::ZERO) {
                    continue;
                }
                match self.indivisible(t) {
                    Some(i) => self.add_row(t, i, &IBig::ONE),
                    None => break,
                }
            }
            self.finish_pivot(t);
        }
    }

    pub(crate) fn run(&mut self, strategy: SmithStrategy) {
        match strategy {
            SmithStrategy::MinimalPivot => self.min_pivot(),
            SmithStrategy::BezoutSteps => self.bezout_steps(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[IBig], b: &[IBig], r: usize, k: usize, c: usize) -> Vec<IBig> {
        let mut out = vec![IBig::ZERO; r * c];
        for i in 0..r {
            for j in 0..c {
                for l in 0..k {
                    out[i * c + j] += &a[i * k + l] * &b[l * c + j];
                }
            }
        }
        out
    }

    fn ints(v: &[i64]) -> Vec<IBig> {
        v.iter().map(|&x| IBig::from(x)).collect()
    }

    #[test]
    fn extended_gcd_identity() {
        for (a, b) in [(4, 6), (-4, 6), (0, 5), (5, 0), (0, 0), (17, -5)] {
            let (g, s, t) = extended_gcd(&IBig::from(a), &IBig::from(b));
            assert_eq!(&s * IBig::from(a) + &t * IBig::from(b), g);
            assert!(g >= IBig::ZERO);
        }
    }

    #[test]
    fn both_strategies_keep_the_transform_invariants() {
        let a0 = ints(&[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        for strategy in [SmithStrategy::MinimalPivot, SmithStrategy::BezoutSteps] {
            let mut e = Elimination::new(3, 3, a0.clone());
            e.run(strategy);
            assert_eq!(mul(&mul(&e.p, &a0, 3, 3, 3), &e.q, 3, 3, 3), e.a);
            assert_eq!(mul(&e.p, &e.p_inv, 3, 3, 3), identity(3));
            assert_eq!(mul(&e.q_inv, &e.q, 3, 3, 3), identity(3));
            assert_eq!(e.a, ints(&[2, 0, 0, 0, 6, 0, 0, 0, 12]), "{strategy:?}");
        }
    }
}
