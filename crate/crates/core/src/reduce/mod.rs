//! Hermite and diagonal reduction with certificates that are recomputed, not trusted.
//!
//! Over Z the transforms come from Smith elimination; over Z/nZ the integer
//! lift is reduced and the transforms mapped back; other finite rings are
//! handled by orbit search.

mod orbit;
mod smith;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use dashu_int::IBig;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::matrix::{mat_invertible, MatrixOverRing};
use crate::props::{Meter, PropertyId, PropertyVerdict, Witness};
use crate::ring;

use crate::props::finite::Outcome;
use orbit::{is_reduced, OrbitSpace};
pub use smith::SmithStrategy;

/// Shapes checked by the `edr-small` property.
pub const EDR_SHAPES: [(usize, usize); 3] = [(1, 2), (2, 1), (2, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// (a, b) P = (d, 0)
    Row,
    /// Q (a, b)^T = (d, 0)^T
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteReduction {
    pub orientation: Orientation,
    pub transform: MatrixOverRing,
    pub transform_inverse: MatrixOverRing,
    pub d: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub p: MatrixOverRing,
    pub p_inverse: MatrixOverRing,
    pub q: MatrixOverRing,
    pub q_inverse: MatrixOverRing,
    pub d: MatrixOverRing,
    pub diagonal: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    PInvertible,
    QInvertible,
    ProductEqualsD,
    Diagonal,
    ChainCondition,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::PInvertible => "P invertible",
            Clause::QInvertible => "Q invertible",
            Clause::ProductEqualsD => "PAQ = D",
            Clause::Diagonal => "diagonal",
            Clause::ChainCondition => "chain condition",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    pub p_invertible: bool,
    pub q_invertible: bool,
    pub product_matches: bool,
    pub diagonal: bool,
    pub chain: bool,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<Clause> {
        [
            (self.p_invertible, Clause::PInvertible),
            (self.q_invertible, Clause::QInvertible),
            (self.product_matches, Clause::ProductEqualsD),
            (self.diagonal, Clause::Diagonal),
            (self.chain, Clause::ChainCondition),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, c)| c)
    }
}

fn invertible_with(m: &MatrixOverRing, claimed: &MatrixOverRing) -> bool {
    let k = m.rows();
    let id = MatrixOverRing::identity(m.ring().clone(), k);
    let by_claim = claimed.shape() == (k, k)
        && claimed.ring() == m.ring()
        && m.mul(claimed).is_ok_and(|x| x == id)
        && claimed.mul(m).is_ok_and(|x| x == id);
    by_claim || matches!(mat_invertible(m), Ok(Some(_)))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// R d_{i+1} R inside R d_i and d_i R for consecutive diagonal entries.
fn chain_condition(ring: &RingDescriptor, diag: &[Element]) -> Result<bool> {
    match ring {
        RingDescriptor::Integer => {
            let ds: Vec<&IBig> = diag.iter().map(|e| e.as_integer().expect("integer entries")).collect();
            Ok(ds.iter().all(|d| **d >= IBig::ZERO)
                && ds.windows(2).all(|w| {
                    if *w[0] == IBig::ZERO {
                        *w[1] == IBig::ZERO
                    } else {
                        w[1] % w[0] == IBig::ZERO
                    }
                }))
        }
        RingDescriptor::Modular(n) => Ok(diag.windows(2).all(|w| {
            let (d, next) = (w[0].as_residue().unwrap(), w[1].as_residue().unwrap());
            next % gcd_u64(d, *n) == 0
        })),
        r if r.is_finite() => {
            let fr = FiniteRing::of(r)?;
            let idx = diag.iter().map(|e| fr.index_of(e)).collect::<Result<Vec<_>>>()?;
            Ok(idx.windows(2).all(|w| orbit::chain_step(&fr, w[0], w[1])))
        }
        r => Err(Error::Unsupported(format!("chain condition over {r}"))),
    }
}

/// Recomputes every clause of a certificate for `a`.
pub fn verify_certificate(a: &MatrixOverRing, cert: &ReductionCertificate) -> Result<Verification> {
    let (r, c) = a.shape();
    let ring = a.ring();
    for (name, m, shape) in [
        ("P", &cert.p, (r, r)),
        ("Q", &cert.q, (c, c)),
        ("D", &cert.d, (r, c)),
    ] {
        if m.shape() != shape || m.ring() != ring {
            return Err(Error::DimensionMismatch(format!(
                "{name} is {}x{} over {}, expected {}x{} over {ring}",
                m.rows(),
                m.cols(),
                m.ring(),
                shape.0,
                shape.1
            )));
        }
    }
    let diagonal = cert.d.is_diagonal() && cert.diagonal == cert.d.diagonal();
    Ok(Verification {
        p_invertible: invertible_with(&cert.p, &cert.p_inverse),
        q_invertible: invertible_with(&cert.q, &cert.q_inverse),
        product_matches: cert.p.mul(a)?.mul(&cert.q)? == cert.d,
        diagonal,
        chain: diagonal && chain_condition(ring, &cert.d.diagonal())?,
    })
}

fn checked(a: &MatrixOverRing, cert: ReductionCertificate) -> Result<ReductionCertificate> {
    let v = verify_certificate(a, &cert)?;
    match v.first_failure() {
        None => Ok(cert),
        Some(clause) => Err(Error::InvalidCertificate(format!(
            "reduction of {a} produced a certificate failing '{clause}'"
        ))),
    }
}

fn int_matrix(rows: usize, cols: usize, v: Vec<IBig>) -> MatrixOverRing {
    MatrixOverRing::from_parts_unchecked(
        RingDescriptor::Integer,
        rows,
        cols,
        v.into_iter().map(Element::Integer).collect(),
    )
}

fn smith_raw(rows: usize, cols: usize, entries: Vec<IBig>, strategy: SmithStrategy) -> smith::Elimination {
    let mut e = smith::Elimination::new(rows, cols, entries);
    e.run(strategy);
    e
}

/// Smith normal form over Z: nonnegative d_i with d_i | d_{i+1}, zeros last.
pub fn smith_form_integers(a: &MatrixOverRing) -> Result<ReductionCertificate> {
    smith_form_integers_with(a, SmithStrategy::default())
}

pub fn smith_form_integers_with(a: &MatrixOverRing, strategy: SmithStrategy) -> Result<ReductionCertificate> {
    if *a.ring() != RingDescriptor::Integer {
        return Err(Error::Unsupported(format!("integer Smith form over {}", a.ring())));
    }
    let (r, c) = a.shape();
    let entries = a.entries().iter().map(|e| e.as_integer().unwrap().clone()).collect();
    let e = smith_raw(r, c, entries, strategy);
    let d = int_matrix(r, c, e.a);
    let cert = ReductionCertificate {
        diagonal: d.diagonal(),
        p: int_matrix(r, r, e.p),
        p_inverse: int_matrix(r, r, e.p_inv),
        q: int_matrix(c, c, e.q),
        q_inverse: int_matrix(c, c, e.q_inv),
        d,
    };
    checked(a, cert)
}

fn residue(v: &IBig, n: u64) -> Element {
    let m = IBig::from(n);
    let r = ((v % &m) + &m) % &m;
    Element::Residue(u64::try_from(r).unwrap())
}

fn mod_matrix(n: u64, rows: usize, cols: usize, v: &[IBig]) -> MatrixOverRing {
    MatrixOverRing::from_parts_unchecked(
        RingDescriptor::Modular(n),
        rows,
        cols,
        v.iter().map(|x| residue(x, n)).collect(),
    )
}

fn index_matrix(fr: &FiniteRing, rows: usize, cols: usize, v: &[usize]) -> MatrixOverRing {
    MatrixOverRing::from_parts_unchecked(
        fr.descriptor().clone(),
        rows,
        cols,
        v.iter().map(|&i| fr.element(i).clone()).collect(),
    )
}

fn to_indices(fr: &FiniteRing, m: &MatrixOverRing) -> Result<Vec<usize>> {
    m.entries().iter().map(|e| fr.index_of(e)).collect()
}

fn check_orbit_budget(fr: &FiniteRing, rows: usize, cols: usize) -> Result<()> {
    match OrbitSpace::state_count(fr, rows, cols) {
        Some(s) if s <= crate::props::DEFAULT_BUDGET => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "orbit search over |R|^{} matrices of {} exceeds {}",
            rows * cols,
            fr.descriptor(),
            crate::props::DEFAULT_BUDGET
        ))),
    }
}

/// Invertible P, Q with PAQ diagonal and the chain condition on the diagonal.
pub fn diagonal_reduce(ring: &RingDescriptor, a: &MatrixOverRing) -> Result<ReductionCertificate> {
    if a.ring() != ring {
        return Err(Error::DimensionMismatch(format!("matrix is over {}, not {ring}", a.ring())));
    }
    let (r, c) = a.shape();
    match ring {
        RingDescriptor::Integer => smith_form_integers(a),
        RingDescriptor::Modular(n) => {
            let lift = a.entries().iter().map(|e| IBig::from(e.as_residue().unwrap())).collect();
            let e = smith_raw(r, c, lift, SmithStrategy::default());
            let d = mod_matrix(*n, r, c, &e.a);
            let cert = ReductionCertificate {
                diagonal: d.diagonal(),
                p: mod_matrix(*n, r, r, &e.p),
                p_inverse: mod_matrix(*n, r, r, &e.p_inv),
                q: mod_matrix(*n, c, c, &e.q),
                q_inverse: mod_matrix(*n, c, c, &e.q_inv),
                d,
            };
            checked(a, cert)
        }
        d if d.is_finite() => {
            let fr = FiniteRing::of(d)?;
            check_orbit_budget(&fr, r, c)?;
            let space = OrbitSpace::new(&fr, r, c, true, true);
            let start = to_indices(&fr, a)?;
            let cert = orbit_certificate(&space, &start)?;
            checked(a, cert)
        }
        d => Err(Error::Unsupported(format!("diagonal reduction over {d}"))),
    }
}

fn orbit_certificate(space: &OrbitSpace, start: &[usize]) -> Result<ReductionCertificate> {
    let (fr, r, c) = (space.fr, space.rows, space.cols);
    let path = space
        .search(start, |m| is_reduced(fr, m, r, c))
        .map_err(|orbit| Error::NotReducible { orbit })?;
    let d = index_matrix(fr, r, c, &path.end);
    Ok(ReductionCertificate {
        diagonal: d.diagonal(),
        p: index_matrix(fr, r, r, &path.p),
        p_inverse: index_matrix(fr, r, r, &path.p_inv),
        q: index_matrix(fr, c, c, &path.q),
        q_inverse: index_matrix(fr, c, c, &path.q_inv),
        d,
    })
}

/// Row: invertible P with (a, b) P = (d, 0). Column: Q with Q (a, b)^T = (d, 0)^T.
pub fn hermite_reduce(
    ring: &RingDescriptor,
    a: &Element,
    b: &Element,
    orientation: Orientation,
) -> Result<HermiteReduction> {
    for e in [a, b] {
        if !ring::contains(ring, e) {
            return Err(Error::NotAnElement(e.to_string(), ring.to_string()));
        }
    }
    let lifted = match ring {
        RingDescriptor::Integer => Some((a.as_integer().unwrap().clone(), b.as_integer().unwrap().clone())),
        RingDescriptor::Modular(_) => Some((IBig::from(a.as_residue().unwrap()), IBig::from(b.as_residue().unwrap()))),
        _ => None,
    };
    let (transform, transform_inverse, d) = if let Some((x, y)) = lifted {
        let (p, p_inv, g) = integer_hermite(&x, &y);
        let (p, p_inv) = match orientation {
            Orientation::Row => (p, p_inv),
            Orientation::Column => (transpose2(&p), transpose2(&p_inv)),
        };
        match ring {
            RingDescriptor::Modular(n) => (
                mod_matrix(*n, 2, 2, &p),
                mod_matrix(*n, 2, 2, &p_inv),
                residue(&g, *n),
            ),
            _ => (int_matrix(2, 2, p), int_matrix(2, 2, p_inv), Element::Integer(g)),
        }
    } else if ring.is_finite() {
        let fr = FiniteRing::of(ring)?;
        let start = vec![fr.index_of(a)?, fr.index_of(b)?];
        let (rows, cols, left, right) = match orientation {
            Orientation::Row => (1, 2, false, true),
            Orientation::Column => (2, 1, true, false),
        };
        check_orbit_budget(&fr, rows, cols)?;
        let space = OrbitSpace::new(&fr, rows, cols, left, right);
        let path = space.search(&start, |m| m[1] == 0).map_err(|orbit| Error::NotHermite { orbit })?;
        let (t, t_inv) = match orientation {
            Orientation::Row => (path.q, path.q_inv),
            Orientation::Column => (path.p, path.p_inv),
        };
        (
            index_matrix(&fr, 2, 2, &t),
            index_matrix(&fr, 2, 2, &t_inv),
            fr.element(path.end[0]).clone(),
        )
    } else {
        return Err(Error::Unsupported(format!("Hermite reduction over {ring}")));
    };
    let out = HermiteReduction { orientation, transform, transform_inverse, d };
    verify_hermite(ring, a, b, &out)?;
    Ok(out)
}

fn transpose2(m: &[IBig]) -> Vec<IBig> {
    vec![m[0].clone(), m[2].clone(), m[1].clone(), m[3].clone()]
}

/// P = [[s, -b/g], [t, a/g]] from s a + t b = g; b = 0 gives diag(sign a, 1).
fn integer_hermite(a: &IBig, b: &IBig) -> (Vec<IBig>, Vec<IBig>, IBig) {
    let one = IBig::ONE;
    let zero = IBig::ZERO;
    if *b == zero {
        let s = if *a < zero { IBig::NEG_ONE } else { one.clone() };
        let g = &s * a;
        return (vec![s.clone(), zero.clone(), zero.clone(), one.clone()], vec![s, zero.clone(), zero, one], g);
    }
    let (g, s, t) = smith::extended_gcd(a, b);
    let (x, y) = (a / &g, b / &g);
    let p = vec![s.clone(), -&y, t.clone(), x.clone()];
    let p_inv = vec![x, y, -t, s];
    (p, p_inv, g)
}

fn verify_hermite(ring: &RingDescriptor, a: &Element, b: &Element, h: &HermiteReduction) -> Result<()> {
    let (v, expected) = match h.orientation {
        Orientation::Row => {
            let v = MatrixOverRing::new(ring.clone(), 1, 2, vec![a.clone(), b.clone()])?;
            (v.mul(&h.transform)?, MatrixOverRing::new(ring.clone(), 1, 2, vec![h.d.clone(), ring::zero(ring)])?)
        }
        Orientation::Column => {
            let v = MatrixOverRing::new(ring.clone(), 2, 1, vec![a.clone(), b.clone()])?;
            (h.transform.mul(&v)?, MatrixOverRing::new(ring.clone(), 2, 1, vec![h.d.clone(), ring::zero(ring)])?)
        }
    };
    if v == expected && invertible_with(&h.transform, &h.transform_inverse) {
        Ok(())
    } else {
        Err(Error::InvalidCertificate(format!("Hermite reduction of ({a}, {b}) does not verify")))
    }
}

/// Every (a, b) reduces on the right and every (a, b)^T on the left.
pub(crate) fn hermite_property(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    for (rows, cols, left, right) in [(1, 2, false, true), (2, 1, true, false)] {
        let Some(total) = OrbitSpace::state_count(fr, rows, cols) else { return Ok(Outcome::Exhausted) };
        if !meter.charge(total) {
            return Ok(Outcome::Exhausted);
        }
        let space = OrbitSpace::new(fr, rows, cols, left, right);
        for (code, found) in space.partition(|m| m[1] == 0) {
            if !found {
                let a = index_matrix(fr, rows, cols, &space.decode(code));
                return Ok(Outcome::Fails(vec![Witness::matrix("A", a)]));
            }
        }
    }
    Ok(Outcome::Holds)
}

pub(crate) fn edr_property(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    edr_shapes(fr, meter, &EDR_SHAPES)
}

fn edr_shapes(fr: &FiniteRing, meter: &mut Meter, shapes: &[(usize, usize)]) -> Result<Outcome> {
    for &(rows, cols) in shapes {
        let Some(total) = OrbitSpace::state_count(fr, rows, cols) else { return Ok(Outcome::Exhausted) };
        if !meter.charge(total) {
            return Ok(Outcome::Exhausted);
        }
        if let RingDescriptor::Modular(_) = fr.descriptor() {
            // Every matrix gets its own lifted Smith certificate.
            let space = OrbitSpace::new(fr, rows, cols, false, false);
            for code in 0..total {
                let a = index_matrix(fr, rows, cols, &space.decode(code));
                diagonal_reduce(fr.descriptor(), &a)?;
            }
            continue;
        }
        let space = OrbitSpace::new(fr, rows, cols, true, true);
        for (code, found) in space.partition(|m| is_reduced(fr, m, rows, cols)) {
            let start = space.decode(code);
            let a = index_matrix(fr, rows, cols, &start);
            if !found {
                return Ok(Outcome::Fails(vec![Witness::matrix("A", a)]));
            }
            // One verified certificate per orbit; the rest of the orbit is
            // reached from it by the generators.
            checked(&a, orbit_certificate(&space, &start)?)?;
        }
    }
    Ok(Outcome::Holds)
}

/// `edr-small` restricted to shapes within `max_rows` x `max_cols`.
pub fn check_edr_small(ring: &RingDescriptor, max_rows: usize, max_cols: usize) -> Result<PropertyVerdict> {
    ring.validate()?;
    let shapes: Vec<(usize, usize)> = EDR_SHAPES
        .into_iter()
        .filter(|&(r, c)| r <= max_rows && c <= max_cols)
        .collect();
    if !ring.is_finite() {
        return Err(Error::InfiniteRing(ring.to_string()));
    }
    let fr = FiniteRing::of(ring)?;
    let mut meter = Meter::new(crate::props::DEFAULT_BUDGET);
    let p = PropertyId::EdrSmall;
    Ok(match edr_shapes(&fr, &mut meter, &shapes)? {
        Outcome::Holds => PropertyVerdict::holds(p, ring, meter.used),
        Outcome::Fails(w) => PropertyVerdict::fails(p, ring, w, meter.used),
        Outcome::Exhausted => PropertyVerdict::exhausted(p, ring, meter.used, meter.limit),
    })
}

/// Element-level re-check that no matrix in the orbit of `a` is reduced.
/// With `hermite`, a 1x2 row is acted on from the right only and a 2x1
/// column from the left only, and any (d, 0) counts as reduced.
pub(crate) fn replay_irreducible(a: &MatrixOverRing, hermite: bool) -> Result<bool> {
    let desc = a.ring();
    let all = ring::enumerate_elements(desc)?;
    let (rows, cols) = a.shape();
    let space_size = (all.len() as f64).powi((rows * cols) as i32);
    if space_size > crate::props::DEFAULT_BUDGET as f64 {
        return Err(Error::BudgetExceeded(format!("replay over {space_size} matrices")));
    }
    let one = ring::one(desc);
    let units: Vec<Element> = all
        .iter()
        .filter(|x| all.iter().any(|y| ring::mul(desc, x, y) == one && ring::mul(desc, y, x) == one))
        .cloned()
        .collect();
    let gens = |k: usize| -> Vec<MatrixOverRing> {
        let mut out = Vec::new();
        let id = MatrixOverRing::identity(desc.clone(), k);
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for s in all.iter().skip(1) {
                    let mut m = id.clone();
                    m.set(i, j, s.clone());
                    out.push(m);
                }
            }
            for u in &units {
                let mut m = id.clone();
                m.set(i, i, u.clone());
                out.push(m);
            }
        }
        out
    };
    let (act_left, act_right) = match (hermite, rows, cols) {
        (true, 1, 2) => (false, true),
        (true, 2, 1) => (true, false),
        (true, _, _) => return Err(Error::DimensionMismatch("Hermite witnesses are 1x2 or 2x1".into())),
        (false, _, _) => (true, true),
    };
    let left = if act_left { gens(rows) } else { Vec::new() };
    let right = if act_right { gens(cols) } else { Vec::new() };

    // Left, right and two-sided principal ideals of each diagonal entry.
    type Ideals = (BTreeSet<Element>, BTreeSet<Element>, BTreeSet<Element>);
    let mut ideal_cache: HashMap<Element, Ideals> = HashMap::new();
    let mut ideals = |d: &Element| {
        ideal_cache
            .entry(d.clone())
            .or_insert_with(|| {
                let left: BTreeSet<Element> = all.iter().map(|r| ring::mul(desc, r, d)).collect();
                let right: BTreeSet<Element> = all.iter().map(|r| ring::mul(desc, d, r)).collect();
                let products: BTreeSet<Element> = left.iter().flat_map(|x| all.iter().map(move |s| ring::mul(desc, x, s))).collect();
                let mut closed: BTreeSet<Element> = [ring::zero(desc)].into();
                loop {
                    let grown: BTreeSet<Element> = closed
                        .iter()
                        .flat_map(|x| products.iter().map(move |y| ring::add(desc, x, y)))
                        .chain(closed.iter().cloned())
                        .collect();
                    if grown.len() == closed.len() {
                        break;
                    }
                    closed = grown;
                }
                (left, right, closed)
            })
            .clone()
    };
    let mut reduced = |m: &MatrixOverRing| -> bool {
        if !m.is_diagonal() {
            return false;
        }
        let diag = m.diagonal();
        diag.windows(2).all(|w| {
            let (l, r, _) = ideals(&w[0]);
            let (_, _, two_sided) = ideals(&w[1]);
            two_sided.iter().all(|x| l.contains(x) && r.contains(x))
        })
    };

    let mut seen: HashSet<MatrixOverRing> = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(m) = queue.pop_front() {
        if reduced(&m) {
            return Ok(false);
        }
        let next = left
            .iter()
            .map(|g| g.mul(&m))
            .chain(right.iter().map(|g| m.mul(g)))
            .collect::<Result<Vec<_>>>()?;
        for x in next {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    Ok(true)
}
