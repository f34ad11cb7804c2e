//! Rectangular matrices over any ring in the zoo.

use std::fmt;

use itertools::Itertools;

use crate::descriptor::RingDescriptor;
use crate::element::{write_rows, Element};
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::ring;

/// Largest matrix ring |R|^(k^2) searched when inverting over a noncommutative base.
pub const MAX_INVERSE_SEARCH: u64 = 1 << 20;

/// Leibniz expansion is used for determinants; keep k! manageable.
const MAX_DETERMINANT_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixOverRing {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl MatrixOverRing {
    pub fn new(
        ring: RingDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<Element>,
    ) -> Result<MatrixOverRing> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrices need at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !ring::contains(&ring, e)) {
            return Err(Error::NotAnElement(bad.to_string(), ring.to_string()));
        }
        Ok(MatrixOverRing {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub(crate) fn from_parts_unchecked(
        ring: RingDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<Element>,
    ) -> MatrixOverRing {
        debug_assert_eq!(entries.len(), rows * cols);
        MatrixOverRing {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: RingDescriptor, k: usize) -> MatrixOverRing {
        let entries = (0..k * k)
            .map(|p| {
                if p / k == p % k {
                    ring::one(&ring)
                } else {
                    ring::zero(&ring)
                }
            })
            .collect();
        MatrixOverRing::from_parts_unchecked(ring, k, k, entries)
    }

    pub fn zeros(ring: RingDescriptor, rows: usize, cols: usize) -> MatrixOverRing {
        let entries = vec![ring::zero(&ring); rows * cols];
        MatrixOverRing::from_parts_unchecked(ring, rows, cols, entries)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Element) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &MatrixOverRing) -> Result<MatrixOverRing> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "rings differ: {} vs {}",
                self.ring, other.ring
            )));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring::zero(&self.ring);
                for l in 0..self.cols {
                    let p = ring::mul(&self.ring, self.get(i, l), other.get(l, j));
                    acc = ring::add(&self.ring, &acc, &p);
                }
                entries.push(acc);
            }
        }
        Ok(MatrixOverRing::from_parts_unchecked(
            self.ring.clone(),
            self.rows,
            other.cols,
            entries,
        ))
    }

    pub fn is_diagonal(&self) -> bool {
        let z = ring::zero(&self.ring);
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || *self.get(i, j) == z))
    }

    /// d_1, ..., d_min(rows, cols).
    pub fn diagonal(&self) -> Vec<Element> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

impl fmt::Display for MatrixOverRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries, self.cols)
    }
}

/// Product of two row-major k x k payloads.
pub(crate) fn mul_square(base: &RingDescriptor, x: &[Element], y: &[Element], k: usize) -> Vec<Element> {
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = ring::zero(base);
            for l in 0..k {
                acc = ring::add(base, &acc, &ring::mul(base, &x[i * k + l], &y[l * k + j]));
            }
            out.push(acc);
        }
    }
    out
}

fn permutation_sign(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Leibniz determinant; meaningful over commutative rings only.
pub(crate) fn determinant(base: &RingDescriptor, entries: &[Element], k: usize) -> Result<Element> {
    if k > MAX_DETERMINANT_SIZE {
        return Err(Error::Unsupported(format!(
            "determinant of size {k} (limit {MAX_DETERMINANT_SIZE})"
        )));
    }
    let mut det = ring::zero(base);
    for perm in (0..k).permutations(k) {
        let mut term = ring::one(base);
        for (i, &j) in perm.iter().enumerate() {
            term = ring::mul(base, &term, &entries[i * k + j]);
        }
        if !permutation_sign(&perm) {
            term = ring::neg(base, &term);
        }
        det = ring::add(base, &det, &term);
    }
    Ok(det)
}

fn minor(entries: &[Element], k: usize, skip_row: usize, skip_col: usize) -> Vec<Element> {
    (0..k)
        .filter(|&i| i != skip_row)
        .flat_map(|i| {
            (0..k)
                .filter(move |&j| j != skip_col)
                .map(move |j| entries[i * k + j].clone())
        })
        .collect()
}

/// det^-1 * adj(M) over a commutative base, or `None` when det is not a unit.
pub(crate) fn adjugate_inverse(
    base: &RingDescriptor,
    entries: &[Element],
    k: usize,
) -> Result<Option<Vec<Element>>> {
    let det = determinant(base, entries, k)?;
    let Some(det_inv) = ring::inverse(base, &det)? else {
        return Ok(None);
    };
    if k == 1 {
        return Ok(Some(vec![det_inv]));
    }
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut cofactor = determinant(base, &minor(entries, k, j, i), k - 1)?;
            if (i + j) % 2 == 1 {
                cofactor = ring::neg(base, &cofactor);
            }
            out.push(ring::mul(base, &det_inv, &cofactor));
        }
    }
    Ok(Some(out))
}

/// Two-sided inverse of a square matrix, if one exists.
///
/// Commutative bases use the determinant and adjugate; other finite bases are
/// searched exhaustively (column by column) within [`MAX_INVERSE_SEARCH`].
pub fn mat_invertible(m: &MatrixOverRing) -> Result<Option<MatrixOverRing>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "only square matrices can be inverted, got {}x{}",
            m.rows, m.cols
        )));
    }
    let k = m.rows;
    let base = &m.ring;
    if base.is_commutative_by_construction() {
        return Ok(adjugate_inverse(base, &m.entries, k)?
            .map(|inv| MatrixOverRing::from_parts_unchecked(base.clone(), k, k, inv)));
    }
    if base.is_finite() {
        let fr = FiniteRing::of(base)?;
        check_search_budget(&fr, k)?;
        let idx = m
            .entries
            .iter()
            .map(|e| fr.index_of(e))
            .collect::<Result<Vec<_>>>()?;
        return Ok(index_inverse(&fr, &idx, k).map(|inv| {
            let entries = inv.iter().map(|&i| fr.element(i).clone()).collect();
            MatrixOverRing::from_parts_unchecked(base.clone(), k, k, entries)
        }));
    }
    Err(Error::Unsupported(format!("matrix inversion over {base}")))
}

pub(crate) fn check_search_budget(fr: &FiniteRing, k: usize) -> Result<()> {
    let space = (fr.len() as f64).powi((k * k) as i32);
    if space > MAX_INVERSE_SEARCH as f64 {
        return Err(Error::BudgetExceeded(format!(
            "inverse search over |R|^{} = {space} candidates exceeds {MAX_INVERSE_SEARCH}",
            k * k
        )));
    }
    Ok(())
}

/// Row-major product of index matrices: (r x inner) * (inner x c).
pub(crate) fn index_mul(
    fr: &FiniteRing,
    a: &[usize],
    b: &[usize],
    r: usize,
    inner: usize,
    c: usize,
) -> Vec<usize> {
    let mut out = vec![0usize; r * c];
    for i in 0..r {
        for j in 0..c {
            let mut acc = 0;
            for l in 0..inner {
                acc = fr.add(acc, fr.mul(a[i * inner + l], b[l * c + j]));
            }
            out[i * c + j] = acc;
        }
    }
    out
}

pub(crate) fn index_identity(fr: &FiniteRing, k: usize) -> Vec<usize> {
    (0..k * k)
        .map(|p| if p / k == p % k { fr.one() } else { 0 })
        .collect()
}

/// Searches each column x of a right inverse (M x = e_j) over R^k, then
/// confirms the left inverse identity. Finite rings are Dedekind-finite, so a
/// right inverse, when it exists, is the two-sided inverse.
pub(crate) fn index_inverse(fr: &FiniteRing, m: &[usize], k: usize) -> Option<Vec<usize>> {
    let n = fr.len();
    let mut inv = vec![0usize; k * k];
    for j in 0..k {
        let mut x = vec![0usize; k];
        let mut found = false;
        'search: loop {
            let ok = (0..k).all(|i| {
                let mut acc = 0;
                for l in 0..k {
                    acc = fr.add(acc, fr.mul(m[i * k + l], x[l]));
                }
                acc == if i == j { fr.one() } else { 0 }
            });
            if ok {
                found = true;
                break;
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'search;
                }
                pos -= 1;
                x[pos] += 1;
                if x[pos] < n {
                    break;
                }
                x[pos] = 0;
            }
        }
        if !found {
            return None;
        }
        for i in 0..k {
            inv[i * k + j] = x[i];
        }
    }
    let left = index_mul(fr, &inv, m, k, k, k);
    (left == index_identity(fr, k)).then_some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmat(rows: usize, cols: usize, v: &[i64]) -> MatrixOverRing {
        MatrixOverRing::new(
            RingDescriptor::Integer,
            rows,
            cols,
            v.iter().map(|&x| Element::int(x)).collect(),
        )
        .unwrap()
    }

    fn modmat(n: u64, k: usize, v: &[u64]) -> MatrixOverRing {
        MatrixOverRing::new(
            RingDescriptor::Modular(n),
            k,
            k,
            v.iter().map(|&x| Element::Residue(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_over_z6_inverts_to_itself() {
        let id = MatrixOverRing::identity(RingDescriptor::Modular(6), 3);
        assert_eq!(mat_invertible(&id).unwrap(), Some(id));
    }

    #[test]
    fn integer_matrix_with_det_minus_eight_is_singular() {
        assert_eq!(mat_invertible(&zmat(2, 2, &[2, 4, 6, 8])).unwrap(), None);
        let u = zmat(2, 2, &[2, 1, 1, 1]);
        let inv = mat_invertible(&u).unwrap().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), MatrixOverRing::identity(RingDescriptor::Integer, 2));
    }

    #[test]
    fn swap_is_an_involution_mod_2() {
        let s = modmat(2, 2, &[0, 1, 1, 0]);
        assert_eq!(mat_invertible(&s).unwrap(), Some(s));
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(
            mat_invertible(&zmat(1, 2, &[1, 0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn noncommutative_base_uses_search() {
        let base = RingDescriptor::matrix(2, RingDescriptor::Modular(2));
        let e = |v: [u64; 4]| Element::Matrix(v.iter().map(|&r| Element::Residue(r)).collect());
        let one = e([1, 0, 0, 1]);
        let zero = e([0, 0, 0, 0]);
        let swap = e([0, 1, 1, 0]);
        // [[1, swap], [0, 1]] is a transvection
        let t = MatrixOverRing::new(base.clone(), 2, 2, vec![one.clone(), swap, zero.clone(), one.clone()]).unwrap();
        let inv = mat_invertible(&t).unwrap().unwrap();
        assert_eq!(t.mul(&inv).unwrap(), MatrixOverRing::identity(base.clone(), 2));
        assert_eq!(inv.mul(&t).unwrap(), MatrixOverRing::identity(base.clone(), 2));
        let e11 = e([1, 0, 0, 0]);
        let singular = MatrixOverRing::new(base, 2, 2, vec![e11, zero.clone(), zero, one]).unwrap();
        assert_eq!(mat_invertible(&singular).unwrap(), None);
    }

    #[test]
    fn invertible_iff_det_is_unit_over_z6() {
        // exhaustive cross-check over all 6^4 matrices
        let ring = RingDescriptor::Modular(6);
        for code in 0..6u64.pow(4) {
            let v: Vec<u64> = (0..4).map(|p| (code / 6u64.pow(3 - p)) % 6).collect();
            let m = modmat(6, 2, &v);
            let det = (v[0] * v[3] + 36 - (v[1] * v[2]) % 6) % 6;
            let det_is_unit = det == 1 || det == 5;
            let inv = mat_invertible(&m).unwrap();
            assert_eq!(inv.is_some(), det_is_unit, "{m}");
            if let Some(inv) = inv {
                assert_eq!(m.mul(&inv).unwrap(), MatrixOverRing::identity(ring.clone(), 2));
                assert_eq!(inv.mul(&m).unwrap(), MatrixOverRing::identity(ring.clone(), 2));
            }
        }
    }
}
