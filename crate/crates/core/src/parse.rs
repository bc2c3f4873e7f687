//! Text forms for polynomials and field elements.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! poly    := [+-]? term ([+-] term)*
//! term    := coef ('*'? var ('^' uint)?)? | var ('^' uint)?
//! coef    := int ('/' int)? | '(' poly-in-t ')'     (parenthesized form
//!                                                    only for O_k coefficients)
//! ```
//!
//! Field polynomials use the variable `x`; elements are polynomials in `t`
//! (the power-basis generator), e.g. `1/2 + 1/2*t`. Errors carry the byte
//! position of the offending token.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::qfield::{FieldElement, NumberField};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.uint()?;
        if self.eat(b'/') {
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::parse(self.pos, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from(num))
        }
    }
}

/// Generic polynomial parser; `coef` produces a coefficient value given an
/// optional parenthesized sub-expression.
fn parse_terms<C, F>(
    cur: &mut Cursor,
    var: char,
    zero: C,
    one: C,
    add: impl Fn(&C, &C) -> C,
    neg: impl Fn(&C) -> C,
    scale: impl Fn(&C, &BigRational) -> C,
    coef: &mut F,
    stop_at_paren: bool,
) -> Result<Vec<C>>
where
    C: Clone,
    F: FnMut(&mut Cursor) -> Result<Option<C>>,
{
    let mut coeffs: Vec<C> = vec![];
    let mut first = true;
    loop {
        let c = cur.peek();
        let negate = match c {
            None => break,
            Some(b')') if stop_at_paren => break,
            Some(b'+') => {
                cur.bump();
                false
            }
            Some(b'-') => {
                cur.bump();
                true
            }
            Some(_) if first => false,
            Some(_) => {
                return Err(Error::parse(cur.pos, "expected '+' or '-'"));
            }
        };
        first = false;

        // term: [coef] [* var [^k]] with at least one part present
        let mut value: Option<C> = None;
        let mut power = 0usize;
        match cur.peek() {
            Some(d) if d.is_ascii_digit() => {
                let q = cur.rational()?;
                value = Some(scale(&one, &q));
            }
            Some(b'(') => {
                cur.bump();
                if let Some(v) = coef(cur)? {
                    if !cur.eat(b')') {
                        return Err(Error::parse(cur.pos, "expected ')'"));
                    }
                    value = Some(v);
                } else {
                    return Err(Error::parse(cur.pos, "parenthesized coefficients not allowed here"));
                }
            }
            _ => {}
        }
        let saw_star = cur.eat(b'*');
        let var_pos = cur.pos;
        if cur.peek() == Some(var as u8) {
            cur.bump();
            power = 1;
            if cur.eat(b'^') {
                let e = cur.uint()?;
                power = e
                    .try_into()
                    .map_err(|_| Error::parse(cur.pos, "exponent too large"))?;
            }
        } else if saw_star {
            return Err(Error::parse(var_pos, format!("expected variable '{}'", var)));
        } else if value.is_none() {
            return Err(Error::parse(var_pos, "expected a term"));
        }
        let mut v = value.unwrap_or_else(|| one.clone());
        if negate {
            v = neg(&v);
        }
        while coeffs.len() <= power {
            coeffs.push(zero.clone());
        }
        coeffs[power] = add(&coeffs[power], &v);
    }
    if first {
        return Err(Error::parse(cur.pos, "empty expression"));
    }
    Ok(coeffs)
}

fn parse_qpoly_inner(cur: &mut Cursor, var: char, stop_at_paren: bool) -> Result<Vec<BigRational>> {
    parse_terms(
        cur,
        var,
        BigRational::zero(),
        BigRational::one(),
        |a, b| a + b,
        |a| -a,
        |a, q| a * q,
        &mut |_| Ok(None),
        stop_at_paren,
    )
}

/// Parse an integer polynomial in `var`, e.g. "x^2 - x - 1".
pub fn parse_zpoly(text: &str, var: char) -> Result<ZPoly> {
    let mut cur = Cursor::new(text);
    let coeffs = parse_qpoly_inner(&mut cur, var, false)?;
    if cur.peek().is_some() {
        return Err(Error::parse(cur.pos, "trailing input"));
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.is_integer() {
            return Err(Error::parse(0, "integer coefficients required"));
        }
        out.push(c.to_integer());
    }
    Ok(ZPoly::new(out))
}

/// Parse a field element as a rational polynomial in `t`, reduced mod g.
pub fn parse_element(k: &NumberField, text: &str) -> Result<FieldElement> {
    let mut cur = Cursor::new(text);
    let coeffs = parse_qpoly_inner(&mut cur, 't', false)?;
    if cur.peek().is_some() {
        return Err(Error::parse(cur.pos, "trailing input"));
    }
    element_from_qcoeffs(k, coeffs)
}

fn element_from_qcoeffs(k: &NumberField, coeffs: Vec<BigRational>) -> Result<FieldElement> {
    let theta = k.theta();
    let els: Vec<FieldElement> = coeffs.into_iter().map(|q| k.from_rational(q)).collect();
    Ok(k.eval_kpoly(&els, &theta))
}

/// Parse a polynomial in `x` with coefficients in O_k: rational literals or
/// parenthesized element expressions like `(1 + 2*t)*x`.
pub fn parse_poly_over_k(k: &NumberField, text: &str) -> Result<Vec<FieldElement>> {
    let mut cur = Cursor::new(text);
    let coeffs = parse_terms(
        &mut cur,
        'x',
        k.zero(),
        k.one(),
        |a, b| k.add(a, b),
        |a| k.neg(a),
        |a, q| k.mul_rational(a, q),
        &mut |cur: &mut Cursor| {
            let inner = parse_qpoly_inner(cur, 't', true)?;
            Ok(Some(element_from_qcoeffs(k, inner)?))
        },
        false,
    )?;
    if cur.peek().is_some() {
        return Err(Error::parse(cur.pos, "trailing input"));
    }
    Ok(coeffs)
}

fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form of an element: rational coordinates against powers
/// of t, zero terms omitted.
pub fn element_to_string(k: &NumberField, a: &FieldElement) -> String {
    if k.is_zero_el(a) {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in a.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = rational_to_string(&c.abs());
        let body = match i {
            0 => mag,
            1 if c.abs().is_one() => "t".to_string(),
            1 => format!("{}*t", mag),
            _ if c.abs().is_one() => format!("t^{}", i),
            _ => format!("{}*t^{}", mag, i),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{}", body)
            } else {
                body
            });
        } else if c.is_negative() {
            parts.push(format!("- {}", body));
        } else {
            parts.push(format!("+ {}", body));
        }
    }
    parts.join(" ")
}

pub fn zpoly_to_string(f: &ZPoly, var: char) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.magnitude().to_string();
        let body = match i {
            0 => mag,
            1 if c.magnitude().is_one() => var.to_string(),
            1 => format!("{}*{}", mag, var),
            _ if c.magnitude().is_one() => format!("{}^{}", var, i),
            _ => format!("{}*{}^{}", mag, var, i),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{}", body)
            } else {
                body
            });
        } else if c.is_negative() {
            parts.push(format!("- {}", body));
        } else {
            parts.push(format!("+ {}", body));
        }
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::make_field;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn zpoly_roundtrip() {
        for (text, expect) in [
            ("x^2 - x - 1", zp(&[-1, -1, 1])),
            ("x^2+1", zp(&[1, 0, 1])),
            ("x - 1", zp(&[-1, 1])),
            ("x", zp(&[0, 1])),
            ("2*x^3 + x", zp(&[0, 1, 0, 2])),
            ("-x + 5", zp(&[5, -1])),
            ("x^2 + x + x", zp(&[0, 2, 1])),
        ] {
            assert_eq!(parse_zpoly(text, 'x').unwrap(), expect, "{}", text);
            // display parses back
            let shown = zpoly_to_string(&expect, 'x');
            assert_eq!(parse_zpoly(&shown, 'x').unwrap(), expect, "{}", shown);
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            parse_zpoly("x^2 + ", 'x'),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_zpoly("x + y", 'x'), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_zpoly("1/2 + x", 'x'),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_zpoly("", 'x'), Err(Error::Parse { .. })));
    }

    #[test]
    fn element_roundtrip() {
        let k = make_field(&zp(&[-1, -1, 1]), 128).unwrap();
        let a = parse_element(&k, "1/2 + 1/2*t").unwrap();
        assert_eq!(
            a.coords,
            vec![
                BigRational::new(BigInt::one(), BigInt::from(2)),
                BigRational::new(BigInt::one(), BigInt::from(2))
            ]
        );
        let shown = element_to_string(&k, &a);
        assert_eq!(parse_element(&k, &shown).unwrap(), a);
        // powers reduce mod g: t^2 = t + 1
        let b = parse_element(&k, "t^2").unwrap();
        assert_eq!(b, k.add(&k.theta(), &k.one()));
    }

    #[test]
    fn poly_over_k_with_element_coefficients() {
        let k = make_field(&zp(&[1, 0, 1]), 128).unwrap();
        let coeffs = parse_poly_over_k(&k, "x^2 + (1 + 2*t)*x + 3").unwrap();
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[2], k.one());
        assert_eq!(coeffs[0], k.from_integer(3));
        let i2 = k.add(&k.one(), &k.mul(&k.theta(), &k.from_integer(2)));
        assert_eq!(coeffs[1], i2);
    }
}
