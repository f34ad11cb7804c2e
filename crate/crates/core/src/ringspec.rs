//! Parser for ring descriptions such as `Mat(2, Zn(2) x Zn(3))`.
//!
//! ```text
//! spec := term { "x" term }
//! term := "Z" | "Zn(" nat ")" | "Mat(" nat "," spec ")" | "Tri(" nat "," spec ")"
//!       | "Zi7" | "Qi7" | "SkewS(" nat "," nat ")"
//! ```
//!
//! Whitespace is insignificant. Keywords are matched longest first, so `Zn`
//! and `Zi7` are never read as `Z` followed by junk.

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::literal::Cursor;

pub const GRAMMAR: &str = "\
spec := term { \"x\" term }
term := \"Z\" | \"Zn(\" nat \")\" | \"Mat(\" nat \",\" spec \")\" | \"Tri(\" nat \",\" spec \")\"
      | \"Zi7\" | \"Qi7\" | \"SkewS(\" nat \",\" nat \")\"";

const TERM_START: &[&str] = &["Z", "Zn(", "Mat(", "Tri(", "Zi7", "Qi7", "SkewS("];

pub fn parse_ring_spec(text: &str) -> Result<RingDescriptor> {
    let mut cur = Cursor::new(text);
    let desc = spec(&mut cur)?;
    if !cur.at_end() {
        let found = cur.describe_next();
        return Err(cur.error(format!("unexpected {found}"), &["\"x\"", "end of input"]));
    }
    Ok(desc)
}

fn spec(cur: &mut Cursor) -> Result<RingDescriptor> {
    let mut factors = vec![term(cur)?];
    while cur.eat('x') {
        factors.push(term(cur)?);
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        Ok(RingDescriptor::Product(factors))
    }
}

fn semantic(desc: RingDescriptor) -> Result<RingDescriptor> {
    match desc.validate() {
        Ok(()) => Ok(desc),
        Err(Error::UnsupportedDescriptor(m)) => Err(Error::Semantic(m)),
        Err(e) => Err(e),
    }
}

fn size(cur: &mut Cursor) -> Result<usize> {
    let start = cur.pos();
    let n = cur.natural()?;
    usize::try_from(n).map_err(|_| Error::parse(start, "size too large", &["natural number"]))
}

fn term(cur: &mut Cursor) -> Result<RingDescriptor> {
    let desc = if cur.eat_str("SkewS") {
        cur.expect('(')?;
        let degree = size(cur)?;
        cur.expect(',')?;
        let height = cur.natural()?;
        cur.expect(')')?;
        RingDescriptor::SkewSubring { max_degree: degree, height }
    } else if cur.eat_str("Zi7") {
        RingDescriptor::QuadraticInteger
    } else if cur.eat_str("Qi7") {
        RingDescriptor::QuadraticField
    } else if cur.eat_str("Zn") {
        cur.expect('(')?;
        let n = cur.natural()?;
        cur.expect(')')?;
        RingDescriptor::Modular(n)
    } else if cur.eat_str("Mat") {
        let (size, base) = sized_base(cur)?;
        RingDescriptor::Matrix { size, base }
    } else if cur.eat_str("Tri") {
        let (size, base) = sized_base(cur)?;
        RingDescriptor::UpperTriangular { size, base }
    } else if cur.eat_str("Z") {
        RingDescriptor::Integer
    } else {
        let found = cur.describe_next();
        return Err(cur.error(format!("found {found}"), TERM_START));
    };
    semantic(desc)
}

fn sized_base(cur: &mut Cursor) -> Result<(usize, Box<RingDescriptor>)> {
    cur.expect('(')?;
    let k = size(cur)?;
    cur.expect(',')?;
    let base = Box::new(spec(cur)?);
    cur.expect(')')?;
    Ok((k, base))
}
