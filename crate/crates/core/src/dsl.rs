//! Text form of an equation, e.g.
//! `D^{7/3} u + 3*D^{4/3} u + 4*D^{1/3} u = 1*t^{3}`.
//!
//! Left side: terms `[coeff [*]] D^q u`, `I^0 u` or `u`, separated by `+`
//! or `-`. Right side: `0`, a sum of `coeff [* t^q]` terms, or
//! `@file:path` naming a `t,w` CSV. Exponents may be braced.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::analysis::{EquationSpec, Rhs};
use crate::error::{Error, Result};
use crate::order::Order;
use crate::power_sum::{PowerSum, Term};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("'{f}'"));
            self.error(self.pos, format!("expected '{c}', found {found}"))
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Unsigned decimal (with optional exponent) or `p/q` literal.
    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let int = self.digits();
        let mut frac = "";
        if self.peek_raw() == Some('.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int.is_empty() && frac.is_empty() {
            return self.error(start, "expected a number");
        }
        if matches!(self.peek_raw(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek_raw(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        let value: f64 = text
            .parse()
            .or_else(|_| self.error(start, format!("bad number '{text}'")))?;
        let save = self.pos;
        self.skip_ws();
        if self.peek_raw() == Some('/') && frac.is_empty() && !text.contains(['e', 'E']) {
            self.pos += 1;
            self.skip_ws();
            let dstart = self.pos;
            let den = self.digits();
            if den.is_empty() {
                return self.error(dstart, "expected a denominator");
            }
            let d: f64 = den.parse().unwrap_or(0.0);
            if d == 0.0 {
                return self.error(dstart, "zero denominator");
            }
            return Ok(value / d);
        }
        self.pos = save;
        Ok(value)
    }

    /// `[sign] int [/ positive-int]`, optionally in braces.
    fn rational(&mut self) -> Result<Order> {
        let braced = self.eat('{');
        self.skip_ws();
        let start = self.pos;
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let num = self.digits();
        if num.is_empty() {
            return self.error(self.pos, "expected an integer exponent");
        }
        let mut den = "1";
        if self.eat('/') {
            self.skip_ws();
            den = self.digits();
            if den.is_empty() {
                return self.error(self.pos, "expected a denominator");
            }
        }
        let (Ok(n), Ok(d)) = (num.parse::<i64>(), den.parse::<i64>()) else {
            return self.error(start, "exponent out of range");
        };
        let order = match Order::new(if negative { -n } else { n }, d) {
            Ok(o) => o,
            Err(_) => return self.error(start, "zero denominator"),
        };
        if braced {
            self.expect('}')?;
        }
        Ok(order)
    }

    /// Optional leading sign; `None` if neither present.
    fn sign(&mut self) -> Option<f64> {
        if self.eat('+') {
            Some(1.0)
        } else if self.eat('-') {
            Some(-1.0)
        } else {
            None
        }
    }

    /// `[number [*]]`, defaulting to 1.
    fn coefficient(&mut self) -> Result<f64> {
        let c = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => self.number()?,
            _ => return Ok(1.0),
        };
        self.eat('*');
        Ok(c)
    }

    fn lhs_term(&mut self) -> Result<(Order, f64)> {
        let coefficient = self.coefficient()?;
        let at = {
            self.skip_ws();
            self.pos
        };
        let order = match self.peek() {
            Some('u') => {
                self.pos += 1;
                return Ok((Order::ZERO, coefficient));
            }
            Some(op @ ('D' | 'I')) => {
                self.pos += 1;
                self.expect('^')?;
                let q = self.rational()?;
                if q.is_negative() {
                    return self.error(at, format!("negative order {q}"));
                }
                if op == 'I' && !q.is_zero() {
                    return self.error(at, "integral terms are not allowed on the left-hand side");
                }
                q
            }
            Some(c) => return self.error(at, format!("expected 'D', 'I' or 'u', found '{c}'")),
            None => return self.error(at, "expected a term"),
        };
        self.expect('u')?;
        Ok((order, coefficient))
    }

    fn rhs_term(&mut self) -> Result<Term> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let explicit = matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.');
        let coefficient = if explicit { self.number()? } else { 1.0 };
        let starred = self.eat('*');
        if self.peek() == Some('t') {
            self.pos += 1;
            let exponent = if self.eat('^') {
                self.rational()?
            } else {
                Order::ONE
            };
            return Ok(Term::new(coefficient, exponent));
        }
        if starred || !explicit {
            return self.error(at, "expected a coefficient or 't'");
        }
        Ok(Term::new(coefficient, Order::ZERO))
    }

    fn equation(&mut self) -> Result<EquationSpec> {
        if self.peek().is_none() {
            return self.error(self.pos, "empty equation");
        }
        let mut lhs: BTreeMap<Order, f64> = BTreeMap::new();
        let mut first = true;
        loop {
            let sign = match self.sign() {
                Some(s) => s,
                None if first => 1.0,
                None => break,
            };
            first = false;
            let (order, c) = self.lhs_term()?;
            *lhs.entry(order).or_insert(0.0) += sign * c;
        }
        self.expect('=')?;
        self.skip_ws();
        let rhs = if self.src[self.pos..].starts_with("@file:") {
            self.pos += "@file:".len();
            let path = self.src[self.pos..].trim();
            if path.is_empty() {
                return self.error(self.pos, "missing file path");
            }
            self.pos = self.src.len();
            Rhs::File(PathBuf::from(path))
        } else {
            let mut terms = Vec::new();
            let mut first = true;
            loop {
                let sign = match self.sign() {
                    Some(s) => s,
                    None if first => 1.0,
                    None => break,
                };
                first = false;
                let t = self.rhs_term()?;
                terms.push(Term::new(sign * t.coefficient, t.exponent));
            }
            let at = self.pos;
            match PowerSum::from_terms(terms) {
                Ok(p) => Rhs::Power(p),
                Err(e) => return self.error(at, e.to_string()),
            }
        };
        if let Some(c) = self.peek() {
            return self.error(self.pos, format!("unexpected '{c}'"));
        }
        let (orders, coefficients): (Vec<Order>, Vec<f64>) = lhs.into_iter().unzip();
        if coefficients.last() == Some(&0.0) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        EquationSpec::new(orders, coefficients, rhs)
    }
}

/// Parses the textual form of an equation. Repeated orders are merged by
/// adding their coefficients; the result is sorted by order.
pub fn parse_equation(text: &str) -> Result<EquationSpec> {
    Parser { src: text, pos: 0 }.equation()
}

fn write_signed(out: &mut String, first: bool, c: f64) -> f64 {
    if first {
        if c < 0.0 {
            out.push('-');
        }
    } else {
        out.push_str(if c < 0.0 { " - " } else { " + " });
    }
    c.abs()
}

/// Inverse of [`parse_equation`] for power-sum and file right-hand sides.
pub fn format_equation(spec: &EquationSpec) -> Result<String> {
    let mut out = String::new();
    for (i, (o, &c)) in spec
        .orders()
        .iter()
        .zip(spec.coefficients())
        .enumerate()
        .rev()
    {
        let c = write_signed(&mut out, i + 1 == spec.orders().len(), c);
        // `{}` on f64 is the shortest round-tripping decimal
        let _ = write!(out, "{c}*D^{{{o}}} u");
    }
    out.push_str(" = ");
    match spec.rhs() {
        Rhs::Power(p) if p.is_zero() => out.push('0'),
        Rhs::Power(p) => {
            for (i, t) in p.terms().iter().enumerate() {
                let c = write_signed(&mut out, i == 0, t.coefficient);
                let _ = write!(out, "{c}*t^{{{}}}", t.exponent);
            }
        }
        Rhs::File(path) => {
            let _ = write!(out, "@file:{}", path.display());
        }
        Rhs::Sampled(_) => {
            return Err(Error::SampledData(
                "sampled right-hand side has no text form".into(),
            ))
        }
    }
    Ok(out)
}
