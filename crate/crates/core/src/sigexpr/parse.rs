use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::SignalExpr;
use crate::scalar::{imag_unit, is_real, Real, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{name} expects {expected}")]
    Arity { name: String, expected: String },
    #[error("parameter domain: {0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Real),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn syntax(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError { offset, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                let (value, end) = lex_number(text, i)?;
                out.push((Tok::Num(value), start));
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => return Err(syntax(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap()))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Decimal literal with optional exponent, converted exactly.
fn lex_number(text: &str, start: usize) -> Result<(Real, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut i = start;
    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        digits.push(bytes[i] as char);
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            digits.push(bytes[i] as char);
            frac_len += 1;
            i += 1;
        }
    }
    if digits.is_empty() {
        return Err(syntax(start, "malformed number"));
    }
    let mut exp: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        let mut sign = 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            if bytes[j] == b'-' {
                sign = -1;
            }
            j += 1;
        }
        let exp_start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j == exp_start {
            return Err(syntax(i, "malformed exponent"));
        }
        exp = sign * text[exp_start..j].parse::<i64>().map_err(|_| syntax(exp_start, "exponent out of range"))?;
        i = j;
    }
    let mantissa: BigInt = digits.parse().map_err(|_| syntax(start, "malformed number"))?;
    let shift = exp - frac_len;
    if shift.unsigned_abs() > 4096 {
        return Err(syntax(start, "exponent out of range"));
    }
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Real::from_integer(mantissa * num_traits::pow(ten, shift as usize))
    } else {
        Real::new(mantissa, num_traits::pow(ten, (-shift) as usize))
    };
    Ok((value, i))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses an expression and returns its canonical AST.
pub fn parse(text: &str) -> Result<SignalExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e.canonical()),
        _ => Err(syntax(p.offset(), "unexpected trailing input")),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<SignalExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(SignalExpr::mul(vec![SignalExpr::int(-1), t]));
                }
                _ => break,
            }
        }
        Ok(SignalExpr::add(terms))
    }

    fn term(&mut self) -> Result<SignalExpr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.unary()?);
                }
                Tok::Slash => {
                    let (_, at) = self.bump();
                    let d = self.unary()?;
                    match d.as_const() {
                        Some(c) if c.is_zero() => {
                            return Err(ParseError {
                                offset: at,
                                kind: ParseErrorKind::Domain("division by zero".into()),
                            })
                        }
                        Some(c) => factors.push(SignalExpr::Const(Scalar::one() / c.clone())),
                        None => factors.push(SignalExpr::recip(d)),
                    }
                }
                _ => break,
            }
        }
        Ok(SignalExpr::mul(factors))
    }

    fn unary(&mut self) -> Result<SignalExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(SignalExpr::mul(vec![SignalExpr::int(-1), inner]));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<SignalExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump().0 {
                Tok::Num(n) if n.is_integer() && n >= Real::zero() => {
                    let k: u32 = n.to_integer().try_into().map_err(|_| syntax(at, "exponent too large"))?;
                    return Ok(SignalExpr::pow(base, k));
                }
                _ => return Err(syntax(at, "expected nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SignalExpr, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(n) => Ok(SignalExpr::real(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "i" => Ok(SignalExpr::Const(imag_unit())),
            Tok::Ident(name) if name == "t" => Ok(SignalExpr::TimeVar),
            Tok::Ident(name) => {
                if *self.peek() != Tok::LParen {
                    return Err(syntax(at, format!("unknown identifier {name:?}")));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.expr()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                call(&name, args, at)
            }
            _ => Err(syntax(at, "expected a number, 'i', 't', a call or '('")),
        }
    }
}

fn arity(name: &str, expected: &str, at: usize) -> ParseError {
    ParseError { offset: at, kind: ParseErrorKind::Arity { name: name.into(), expected: expected.into() } }
}

fn domain(msg: impl Into<String>, at: usize) -> ParseError {
    ParseError { offset: at, kind: ParseErrorKind::Domain(msg.into()) }
}

fn domain_from(e: crate::error::Error, at: usize) -> ParseError {
    match e {
        crate::error::Error::Domain(msg) => domain(msg, at),
        other => domain(other.to_string(), at),
    }
}

fn real_const(name: &str, e: &SignalExpr, at: usize) -> Result<Real, ParseError> {
    match e.as_const() {
        Some(c) if is_real(c) => Ok(c.re.clone()),
        Some(_) => Err(domain(format!("{name} parameters must be real"), at)),
        None => Err(arity(name, "constant arguments", at)),
    }
}

/// Decomposes a canonical expression as `slope·t + offset` with constant coefficients.
fn affine(e: &SignalExpr) -> Option<(Scalar, Scalar)> {
    match e {
        SignalExpr::Const(c) => Some((Scalar::zero(), c.clone())),
        SignalExpr::TimeVar => Some((Scalar::one(), Scalar::zero())),
        SignalExpr::Mul(fs) if fs.len() == 2 && fs[1] == SignalExpr::TimeVar => {
            fs[0].as_const().map(|c| (c.clone(), Scalar::zero()))
        }
        SignalExpr::Add(ts) => {
            let mut slope = Scalar::zero();
            let mut offset = Scalar::zero();
            for t in ts {
                let (s, o) = affine(t)?;
                slope += s;
                offset += o;
            }
            Some((slope, offset))
        }
        _ => None,
    }
}

fn call(name: &str, args: Vec<SignalExpr>, at: usize) -> Result<SignalExpr, ParseError> {
    let one_real = |args: &[SignalExpr]| -> Result<Real, ParseError> {
        if args.len() != 1 {
            return Err(arity(name, "one constant argument", at));
        }
        real_const(name, &args[0], at)
    };
    match name {
        "exp" => {
            if args.len() != 1 {
                return Err(arity(name, "one argument of the form a*t", at));
            }
            match affine(&args[0]) {
                Some((rate, offset)) if offset.is_zero() => Ok(SignalExpr::Exp(rate).canonical()),
                _ => Err(arity(name, "one argument of the form a*t", at)),
            }
        }
        "sin" | "cos" => {
            let (omega, phase) = match args.len() {
                1 => {
                    let (w, p) =
                        affine(&args[0]).ok_or_else(|| arity(name, "an argument of the form w*t + phi", at))?;
                    if !is_real(&w) || !is_real(&p) {
                        return Err(domain(format!("{name} parameters must be real"), at));
                    }
                    (w.re, p.re)
                }
                2 => (real_const(name, &args[0], at)?, real_const(name, &args[1], at)?),
                _ => return Err(arity(name, "(w*t + phi) or (w, phi)", at)),
            };
            Ok(if name == "sin" { SignalExpr::sin(omega, phase) } else { SignalExpr::cos(omega, phase) })
        }
        "sinc" => SignalExpr::sinc(one_real(&args)?).map_err(|e| domain_from(e, at)),
        "rcos" => SignalExpr::raised_cos(one_real(&args)?).map_err(|e| domain_from(e, at)),
        "delay" => Ok(SignalExpr::Delay(one_real(&args)?)),
        "dirac" => {
            if !args.is_empty() {
                return Err(arity(name, "no arguments", at));
            }
            Ok(SignalExpr::Dirac)
        }
        "chirp" => {
            if args.len() != 3 {
                return Err(arity(name, "three constant arguments (a, b, c)", at));
            }
            let a = real_const(name, &args[0], at)?;
            let b = real_const(name, &args[1], at)?;
            let c = real_const(name, &args[2], at)?;
            SignalExpr::chirp(a, b, c).map_err(|e| domain_from(e, at))
        }
        _ => Err(syntax(at, format!("unknown function {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn sine_literal() {
        assert_eq!(parse("sin(2*t)").unwrap(), SignalExpr::sin(int(2), int(0)));
        assert_eq!(parse("sin(2, 0.5)").unwrap(), SignalExpr::sin(int(2), ratio(1, 2)));
        assert_eq!(parse("cos(3*t + 1)").unwrap(), SignalExpr::cos(int(3), int(1)));
    }

    #[test]
    fn polynomial_times_exponential_plus_sinc() {
        let e = parse("3*t^2*exp(-t) + sinc(5)").unwrap();
        let want = SignalExpr::Add(vec![
            SignalExpr::Mul(vec![
                SignalExpr::int(3),
                SignalExpr::Pow(Box::new(SignalExpr::TimeVar), 2),
                SignalExpr::Exp(crate::scalar::cint(-1)),
            ]),
            SignalExpr::Sinc(int(5)),
        ]);
        assert_eq!(e, want);
    }

    #[test]
    fn zero_sinc_is_a_domain_error() {
        let err = parse("sinc(0)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Domain(_)), "{err}");
        assert_eq!(err.offset, 0);
        assert!(matches!(parse("chirp(0, 1, 2)").unwrap_err().kind, ParseErrorKind::Domain(_)));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let err = parse("sin(2*t) + ").unwrap_err();
        assert_eq!(err.offset, 11);
        let err = parse("2 $ t").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(matches!(parse("foo(1)").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("chirp(1, 2)").unwrap_err().kind, ParseErrorKind::Arity { .. }));
        assert!(matches!(parse("exp(t^2)").unwrap_err().kind, ParseErrorKind::Arity { .. }));
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(parse("1.25e-1").unwrap(), SignalExpr::real(ratio(1, 8)));
        assert_eq!(parse("1/3").unwrap(), SignalExpr::real(ratio(1, 3)));
        assert_eq!(parse("(1+2*i)").unwrap(), SignalExpr::Const(num_complex::Complex::new(int(1), int(2))));
    }

    #[test]
    fn dirac_and_delay() {
        assert_eq!(parse("dirac()").unwrap(), SignalExpr::Dirac);
        assert_eq!(parse("delay(-0.5)").unwrap(), SignalExpr::Delay(ratio(-1, 2)));
        assert_eq!(parse("2*dirac()").unwrap(), SignalExpr::Mul(vec![SignalExpr::int(2), SignalExpr::Dirac]));
    }
}
