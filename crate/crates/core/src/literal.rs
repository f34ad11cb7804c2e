//! Ring-directed parsing of element and matrix literals.
//!
//! The descriptor decides how text is read: `3` is an integer or a residue,
//! `1/2-w` a value of Q(w), `[[1,0],[0,1]]` a matrix-ring element, `(1,2)` a
//! product element and `[0,1]` the polynomial x of S. Whitespace is ignored.

use std::str::FromStr;

use dashu_int::IBig;
use dashu_ratio::RBig;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::MatrixOverRing;
use crate::quadratic::QuadValue;
use crate::ring;
use crate::skew::SkewPolynomial;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_next();
            Err(self.error(format!("found {found}"), &[&format!("'{c}'")]))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn describe_next(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>, expected: &[&str]) -> Error {
        Error::parse(self.pos, message, expected)
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            let found = self.describe_next();
            return Err(self.error(format!("found {found}"), &["digit"]));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub(crate) fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse::<u64>()
            .map_err(|_| Error::parse(start, format!("{d} is too large"), &["natural number"]))
    }

    /// [+|-] digits
    pub(crate) fn integer(&mut self) -> Result<IBig> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let d = self.digits()?;
        let n = IBig::from_str(d).expect("digit run parses");
        Ok(if negative { -n } else { n })
    }

    /// digits [/ digits], unsigned
    fn rational(&mut self) -> Result<RBig> {
        let num = IBig::from_str(self.digits()?).expect("digit run parses");
        if self.eat('/') {
            let at = self.pos;
            let den = IBig::from_str(self.digits()?).expect("digit run parses");
            if den.is_zero() {
                return Err(Error::parse(at, "zero denominator", &["nonzero denominator"]));
            }
            Ok(RBig::from_parts_signed(num, den))
        } else {
            Ok(RBig::from(num))
        }
    }
}

/// Sum of terms `q`, `q*w`, `w` with rational q.
fn quad_literal(cur: &mut Cursor) -> Result<QuadValue> {
    let mut value = QuadValue::zero();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        let (coeff, is_w) = if cur.eat('w') {
            (RBig::ONE, true)
        } else {
            let q = cur.rational().map_err(|_| {
                let found = cur.describe_next();
                cur.error(format!("found {found}"), &["rational", "'w'"])
            })?;
            if cur.eat('*') {
                if !cur.eat('w') {
                    let found = cur.describe_next();
                    return Err(cur.error(format!("found {found}"), &["'w'"]));
                }
                (q, true)
            } else if cur.eat('w') {
                (q, true)
            } else {
                (q, false)
            }
        };
        let coeff = if negative { -coeff } else { coeff };
        if is_w {
            value.im += coeff;
        } else {
            value.re += coeff;
        }
        first = false;
    }
    Ok(value)
}

fn element_list(
    cur: &mut Cursor,
    open: char,
    close: char,
    mut item: impl FnMut(&mut Cursor) -> Result<Element>,
) -> Result<Vec<Element>> {
    cur.expect(open)?;
    let mut out = Vec::new();
    if cur.eat(close) {
        return Ok(out);
    }
    loop {
        out.push(item(cur)?);
        if cur.eat(close) {
            return Ok(out);
        }
        if !cur.eat(',') {
            let found = cur.describe_next();
            return Err(cur.error(format!("found {found}"), &["','", &format!("'{close}'")]));
        }
    }
}

pub(crate) fn element(desc: &RingDescriptor, cur: &mut Cursor) -> Result<Element> {
    let start = cur.pos();
    match desc {
        RingDescriptor::Integer => Ok(Element::Integer(cur.integer()?)),
        RingDescriptor::Modular(n) => {
            let v = cur.integer()?;
            let r = v % IBig::from(*n);
            let r = if r < IBig::ZERO { r + IBig::from(*n) } else { r };
            Ok(Element::Residue(u64::try_from(r).expect("residue below modulus")))
        }
        RingDescriptor::Matrix { size, base } | RingDescriptor::UpperTriangular { size, base } => {
            let rows = element_list(cur, '[', ']', |c| {
                element_list(c, '[', ']', |c| element(base, c)).map(Element::Matrix)
            })?;
            let mut entries = Vec::with_capacity(size * size);
            for row in rows.iter() {
                let Element::Matrix(row) = row else { unreachable!() };
                if row.len() != *size {
                    return Err(Error::parse(start, format!("rows must have {size} entries"), &["square matrix"]));
                }
                entries.extend(row.iter().cloned());
            }
            if rows.len() != *size {
                return Err(Error::parse(start, format!("expected {size} rows"), &["square matrix"]));
            }
            let e = Element::Matrix(entries);
            if !ring::contains(desc, &e) {
                return Err(Error::Semantic(format!("{e} is not upper triangular")));
            }
            Ok(e)
        }
        RingDescriptor::Product(factors) => {
            let mut i = 0;
            let parts = element_list(cur, '(', ')', |c| {
                let f = factors.get(i).ok_or_else(|| {
                    c.error(format!("product has {} factors", factors.len()), &["')'"])
                })?;
                i += 1;
                element(f, c)
            })?;
            if parts.len() != factors.len() {
                return Err(Error::parse(start, format!("expected {} components", factors.len()), &["tuple"]));
            }
            Ok(Element::Tuple(parts))
        }
        RingDescriptor::QuadraticInteger => {
            let q = quad_literal(cur)?;
            let qi = q
                .to_quad_int()
                .ok_or_else(|| Error::NotAnElement(q.to_string(), desc.to_string()))?;
            Ok(Element::QuadInteger(qi))
        }
        RingDescriptor::QuadraticField => Ok(Element::Quadratic(quad_literal(cur)?)),
        RingDescriptor::SkewSubring { .. } => {
            let coeffs = element_list(cur, '[', ']', |c| quad_literal(c).map(Element::Quadratic))?
                .into_iter()
                .map(|e| match e {
                    Element::Quadratic(q) => q,
                    _ => unreachable!(),
                })
                .collect();
            let p = SkewPolynomial::new(coeffs);
            if !p.in_s() {
                return Err(Error::NotInS(p.to_string()));
            }
            Ok(Element::Skew(p))
        }
    }
}

fn finish<T>(cur: &mut Cursor, value: T) -> Result<T> {
    if cur.at_end() {
        Ok(value)
    } else {
        let found = cur.describe_next();
        Err(cur.error(format!("trailing input at {found}"), &["end of input"]))
    }
}

pub fn parse_element(desc: &RingDescriptor, text: &str) -> Result<Element> {
    let mut cur = Cursor::new(text);
    let e = element(desc, &mut cur)?;
    finish(&mut cur, e)
}

/// Comma-separated element literals; brackets nest, so `[[1,0],[0,1]], 0` is two elements.
pub fn parse_elements(desc: &RingDescriptor, text: &str) -> Result<Vec<Element>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        out.push(element(desc, &mut cur)?);
        if cur.at_end() {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}

/// `[[a,b],[c,d]]` with entries in `desc`.
pub fn parse_matrix(desc: &RingDescriptor, text: &str) -> Result<MatrixOverRing> {
    let mut cur = Cursor::new(text);
    let rows = element_list(&mut cur, '[', ']', |c| {
        element_list(c, '[', ']', |c| element(desc, c)).map(Element::Tuple)
    })?;
    finish(&mut cur, ())?;
    let cols = match rows.first() {
        Some(Element::Tuple(r)) => r.len(),
        _ => 0,
    };
    let mut entries = Vec::new();
    for row in &rows {
        let Element::Tuple(row) = row else { unreachable!() };
        if row.len() != cols {
            return Err(Error::DimensionMismatch("rows have different lengths".into()));
        }
        entries.extend(row.iter().cloned());
    }
    MatrixOverRing::new(desc.clone(), rows.len(), cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::QuadInt;

    #[test]
    fn scalars() {
        assert_eq!(parse_element(&RingDescriptor::Integer, " -12 ").unwrap(), Element::int(-12));
        assert_eq!(parse_element(&RingDescriptor::Modular(6), "-1").unwrap(), Element::Residue(5));
        assert_eq!(parse_element(&RingDescriptor::Modular(6), "8").unwrap(), Element::Residue(2));
    }

    #[test]
    fn quadratic_literals() {
        let f = RingDescriptor::QuadraticField;
        assert_eq!(
            parse_element(&f, "1/2 - 2*w").unwrap(),
            Element::Quadratic(QuadValue::from_fractions(1, 2, -2, 1))
        );
        assert_eq!(parse_element(&f, "-w").unwrap(), Element::Quadratic(QuadValue::from_ints(0, -1)));
        assert_eq!(parse_element(&f, "3w+1").unwrap(), Element::Quadratic(QuadValue::from_ints(1, 3)));
        assert_eq!(
            parse_element(&RingDescriptor::QuadraticInteger, "2+w").unwrap(),
            Element::QuadInteger(QuadInt::from_ints(2, 1))
        );
        assert!(matches!(
            parse_element(&RingDescriptor::QuadraticInteger, "1/2"),
            Err(Error::NotAnElement(_, _))
        ));
    }

    #[test]
    fn structured_literals() {
        let m = RingDescriptor::matrix(2, RingDescriptor::Modular(2));
        let e = parse_element(&m, "[[1, 0], [0, 1]]").unwrap();
        assert_eq!(e, ring::one(&m));
        let t = RingDescriptor::upper_triangular(2, RingDescriptor::Modular(2));
        assert!(matches!(parse_element(&t, "[[1,0],[1,1]]"), Err(Error::Semantic(_))));
        let p = RingDescriptor::Product(vec![RingDescriptor::Modular(2), RingDescriptor::Modular(3)]);
        assert_eq!(
            parse_element(&p, "(1,2)").unwrap(),
            Element::Tuple(vec![Element::Residue(1), Element::Residue(2)])
        );
        assert!(parse_element(&p, "(1,2,0)").is_err());
    }

    #[test]
    fn skew_literals() {
        let s = RingDescriptor::skew_subring(3, 2);
        assert_eq!(parse_element(&s, "[0, 1]").unwrap(), Element::Skew(SkewPolynomial::x()));
        assert_eq!(parse_element(&s, "[1, 0, 0]").unwrap(), ring::one(&s));
        assert_eq!(parse_element(&s, "[]").unwrap(), ring::zero(&s));
        assert!(matches!(parse_element(&s, "[1/2]"), Err(Error::NotInS(_))));
        assert!(parse_element(&s, "[2, 1/3*w]").is_ok());
    }

    #[test]
    fn error_offsets() {
        match parse_element(&RingDescriptor::Modular(6), "3 4") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn element_lists_and_matrices() {
        let m = RingDescriptor::matrix(2, RingDescriptor::Modular(2));
        let v = parse_elements(&m, "[[1,0],[0,0]], [[0,1],[1,0]]").unwrap();
        assert_eq!(v.len(), 2);
        let a = parse_matrix(&RingDescriptor::Integer, "[[2,4],[6,8]]").unwrap();
        assert_eq!(a.shape(), (2, 2));
        assert_eq!(a.to_string(), "[[2,4],[6,8]]");
        assert!(parse_matrix(&RingDescriptor::Integer, "[[1,2],[3]]").is_err());
        let row = parse_matrix(&RingDescriptor::Integer, "[[1, 2, 3]]").unwrap();
        assert_eq!(row.shape(), (1, 3));
    }
}
