//! Text forms of complex numbers: `0.5`, `-0.8i`, `i`, `0.5+0.5i`, `1e-3-2i`.

use crate::error::{Error, Result};
use crate::numerics::Complex;

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<f64> {
        if self.eat(b'+') {
            Some(1.0)
        } else if self.eat(b'-') {
            Some(-1.0)
        } else {
            None
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// Unsigned decimal with optional fraction and exponent.
    fn number(&mut self) -> Result<Option<f64>> {
        let start = self.pos;
        let mut count = self.digits();
        if self.eat(b'.') {
            count += self.digits();
        }
        if count == 0 {
            self.pos = start;
            return Ok(None);
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.pos += 1;
            self.sign();
            if self.digits() == 0 {
                return Err(self.error("exponent without digits"));
            }
        }
        let value: f64 = self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("malformed number"))?;
        Ok(Some(value))
    }

    fn error(&self, what: &str) -> Error {
        Error::InvalidInput(format!("{what} in complex literal {:?}", self.text))
    }
}

pub fn parse_complex(input: &str) -> Result<Complex> {
    let text = input.trim();
    let mut s = Scanner { text, pos: 0 };
    let lead = s.sign().unwrap_or(1.0);
    let first = s.number()?;

    let value = if s.eat(b'i') {
        Complex::new(0.0, lead * first.unwrap_or(1.0))
    } else {
        let re = lead * first.ok_or_else(|| s.error("expected a number"))?;
        match s.sign() {
            None => Complex::new(re, 0.0),
            Some(sign) => {
                let im = s.number()?.unwrap_or(1.0);
                if !s.eat(b'i') {
                    return Err(s.error("expected 'i' after imaginary part"));
                }
                Complex::new(re, sign * im)
            }
        }
    };
    if s.pos != text.len() {
        return Err(s.error("unexpected trailing characters"));
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(s.error("value out of range"));
    }
    Ok(value)
}

pub fn parse_real(input: &str) -> Result<f64> {
    let z = parse_complex(input)?;
    if z.im != 0.0 {
        return Err(Error::InvalidInput(format!(
            "expected a real number, got {input:?}"
        )));
    }
    Ok(z.re)
}

/// Comma-separated reals such as `0.1,0.2,0.6`.
pub fn parse_real_list(input: &str) -> Result<Vec<f64>> {
    if input.trim().is_empty() {
        return Err(Error::InvalidInput("empty list".into()));
    }
    input.split(',').map(parse_real).collect()
}

/// Shortest text that [`parse_complex`] maps back to exactly `z`.
pub fn format_complex(z: Complex) -> String {
    match (
        z.re == 0.0 && z.re.is_sign_positive(),
        z.im == 0.0 && z.im.is_sign_positive(),
    ) {
        (_, true) => format!("{:?}", z.re),
        (true, false) => format!("{:?}i", z.im),
        _ => {
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            format!("{:?}{sign}{:?}i", z.re, z.im.abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn accepted_forms() {
        for (text, z) in [
            ("0.5", c(0.5, 0.0)),
            ("-2", c(-2.0, 0.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("+i", c(0.0, 1.0)),
            ("-0.8i", c(0.0, -0.8)),
            ("0.5+0.5i", c(0.5, 0.5)),
            ("0.5-0.5i", c(0.5, -0.5)),
            ("1-i", c(1.0, -1.0)),
            (".25", c(0.25, 0.0)),
            ("3.", c(3.0, 0.0)),
            ("1e-3-2E2i", c(1e-3, -200.0)),
            ("  2i ", c(0.0, 2.0)),
        ] {
            assert_eq!(parse_complex(text).unwrap(), z, "{text}");
        }
    }

    #[test]
    fn rejected_forms() {
        for text in [
            "", "+", "-", ".", "ii", "1+", "1+2", "1 + 2i", "2i+1", "1e", "1e+", "nan", "inf",
            "1e999", "0x10", "1+2j", "1,2",
        ] {
            assert!(parse_complex(text).is_err(), "{text:?} accepted");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_real_list("0.1,0.2, 0.6").unwrap(),
            vec![0.1, 0.2, 0.6]
        );
        assert!(parse_real_list("0.1,,0.2").is_err());
        assert!(parse_real_list("0.1,2i").is_err());
        assert!(parse_real_list("").is_err());
    }

    #[test]
    fn format_round_trips() {
        for z in [
            c(0.5, 0.5),
            c(-0.1, -1e-300),
            c(0.0, -0.8),
            c(3.0, 0.0),
            c(0.0, 0.0),
            c(1.0 / 3.0, 2.0),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z, "{z}");
        }
    }
}
