use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, KernelError, Poly, RatFunc, Rational, Vars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, KernelError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(KernelError::Parse { col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> KernelError {
        KernelError::Parse { col: self.col(), msg: msg.into() }
    }

    fn expr(&mut self) -> Result<RatFunc, KernelError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, KernelError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc
                    .div(&d)
                    .map_err(|_| KernelError::Parse { col, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, KernelError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, KernelError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let e = n.to_u32().filter(|&e| e <= 64).ok_or_else(|| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.err("expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, KernelError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(self.vars, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Sym('(')) {
                    return Err(KernelError::Parse { col, msg: format!("unsupported function `{name}`") });
                }
                RatFunc::var(self.vars, &name).ok_or(KernelError::UnknownParameter { name, col })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a scalar expression over the given parameters.
///
/// Accepts integers, parameter names, `+ - * / ( )` and `^` with a
/// non-negative integer exponent, e.g. `(1+alpha)/(1-alpha)`.
pub fn parse_scalar(text: &str, vars: &Vars) -> Result<RatFunc, KernelError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars, end_col: text.chars().count() + 1 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly, KernelError> {
    let f = parse_scalar(text, vars)?;
    match f.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(KernelError::Parse { col: 1, msg: format!("`{text}` is not a polynomial") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{rat, rat_frac};

    #[test]
    fn fractions_and_parameters() {
        let v = Vars::new(["alpha"]);
        assert_eq!(parse_scalar("-2/4", &v).unwrap().constant_value(), Some(rat_frac(-1, 2)));
        let f = parse_scalar("(1+alpha)/(1-alpha)", &v).unwrap();
        let g = parse_scalar("(alpha+1)/(-alpha+1)", &v).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_scalar("01", &v).unwrap().constant_value(), Some(rat(1)));
    }

    #[test]
    fn precedence() {
        let v = Vars::new(["x"]);
        assert_eq!(parse_scalar("-x^2", &v).unwrap().to_string(), "-x^2");
        assert_eq!(parse_scalar("1/2*x", &v).unwrap().to_string(), "1/2*x");
        assert_eq!(parse_scalar("2*(x+1)-x", &v).unwrap().to_string(), "x+2");
    }

    #[test]
    fn errors_carry_columns() {
        let v = Vars::new(["x"]);
        assert_eq!(parse_scalar("x+y", &v), Err(KernelError::UnknownParameter { name: "y".into(), col: 3 }));
        assert!(matches!(parse_scalar("1/(x-x)", &v), Err(KernelError::Parse { col: 2, .. })));
        assert!(matches!(parse_scalar("(x", &v), Err(KernelError::Parse { col: 3, .. })));
        assert!(matches!(parse_scalar("sqrt(x)", &v), Err(KernelError::Parse { col: 1, .. })));
        assert!(matches!(parse_scalar("x $", &v), Err(KernelError::Parse { col: 3, .. })));
    }

    #[test]
    fn display_reparses() {
        let v = Vars::new(["a", "b"]);
        for s in ["(a^2-b)/(3*a+b)", "a/b^2", "-1/(a*b)", "7/3*a*b-1"] {
            let f = parse_scalar(s, &v).unwrap();
            assert_eq!(parse_scalar(&f.to_string(), &v).unwrap(), f, "{s}");
        }
    }
}
