//! Text syntax for cyclotomic numbers: `c0 + c1*z + c2*z^2`, where `z`
//! stands for `ζ_m`, coefficients are integers or `p/q` rationals, and the
//! conductor `m` is supplied out of band.
//!
//! [`format_literal`] emits a canonical form (ascending powers, zero terms
//! dropped, unit coefficients elided); [`parse_literal`] accepts that form and
//! a slightly looser grammar (repeated or out-of-range powers are folded).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{is_negative, CycScalar};
use super::ExactError;

/// Longest digit run accepted for a single integer in a literal.
const MAX_DIGITS: usize = 4096;

pub fn format_literal(x: &CycScalar) -> String {
    let mut out = String::new();
    for (i, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = is_negative(c);
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match i {
            0 => out.push_str(&abs.to_string()),
            _ => {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push('z');
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// [`format_literal`] after embedding into `Q(ζ_conductor)`, so that `z`
/// means the same root of unity across a whole report.
pub fn format_literal_in(x: &CycScalar, conductor: u32) -> Result<String, ExactError> {
    Ok(format_literal(&x.lift(conductor)?))
}

pub fn parse_literal(text: &str, conductor: u32) -> Result<CycScalar, ExactError> {
    // Validates the conductor before doing any work.
    CycScalar::zeta(conductor)?;
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut coeffs = vec![BigRational::zero(); conductor as usize];
    p.skip_ws();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        if first {
            if let Some(s) = p.sign() {
                sign = s;
                p.skip_ws();
            }
        } else {
            sign = p.sign().ok_or_else(|| p.error("expected '+' or '-'"))?;
            p.skip_ws();
            if let Some(s) = p.sign() {
                sign *= s;
                p.skip_ws();
            }
        }
        let (coef, power) = p.term()?;
        let e = (power % conductor as u64) as usize;
        coeffs[e] += sign * coef;
        first = false;
        p.skip_ws();
        if p.at_end() {
            break;
        }
    }
    CycScalar::from_coeffs(conductor, coeffs)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ExactError {
        ExactError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn sign(&mut self) -> Option<BigRational> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(BigRational::one())
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-BigRational::one())
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Result<&str, ExactError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(self.error("integer too long"));
        }
        // Only ASCII digits were consumed.
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        let s = self.digits()?;
        Ok(s.parse::<BigInt>().expect("ascii digits"))
    }

    fn term(&mut self) -> Result<(BigRational, u64), ExactError> {
        let coef = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.integer()?;
            self.skip_ws();
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b'z') {
                    return Err(self.error("expected 'z' after '*'"));
                }
            } else {
                return Ok((BigRational::new(num, den), 0));
            }
            BigRational::new(num, den)
        } else if self.peek() == Some(b'z') {
            BigRational::one()
        } else {
            return Err(self.error("expected a coefficient or 'z'"));
        };
        // At 'z'.
        self.pos += 1;
        self.skip_ws();
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let s = self.digits()?;
            s.parse::<u64>().map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok((coef, power))
    }
}
