use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Field, FieldDescriptor, FieldError, PrimeField, RatFunc, UniPoly};

/// A field element tagged with the field it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, p: u32 },
    RationalFunction(RatFunc),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn tag(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Q,
            Scalar::Modular { p, .. } => FieldDescriptor::Fp(*p),
            Scalar::RationalFunction(_) => FieldDescriptor::QU,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::RationalFunction(r) => r.is_zero(),
        }
    }

    /// Parse a scalar string for the given field: `a/b` or an integer for
    /// `q` and `fp:<p>`, an arithmetic expression in `u` for `qu`.
    pub fn parse(s: &str, field: FieldDescriptor) -> Result<Scalar, FieldError> {
        match field {
            FieldDescriptor::Q => Ok(Scalar::Rational(parse_rational(s)?)),
            FieldDescriptor::Fp(p) => {
                let f = PrimeField::new(p as u64)?;
                Ok(Scalar::Modular { value: f.from_rational(&parse_rational(s)?)?, p })
            }
            FieldDescriptor::QU => Ok(Scalar::RationalFunction(parse_ratfunc(s)?)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::RationalFunction(r) => write!(f, "{r}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| FieldError::Parse(s.into()))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| FieldError::Parse(s.into()))?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(t).map_err(|_| FieldError::Parse(s.into()))?),
    };
    Ok(parsed)
}

/// Exact arithmetic on tagged scalars; operands must share a field.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    if a.tag() != b.tag() {
        return Err(FieldError::MixedFieldTags(a.tag().to_string(), b.tag().to_string()));
    }
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => {
                if y.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                x / y
            }
        })),
        (Scalar::Modular { value: x, p }, Scalar::Modular { value: y, .. }) => {
            let f = PrimeField::new(*p as u64)?;
            let value = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => f.div(x, y)?,
            };
            Ok(Scalar::Modular { value, p: *p })
        }
        (Scalar::RationalFunction(x), Scalar::RationalFunction(y)) => {
            Ok(Scalar::RationalFunction(match op {
                ArithOp::Add => x.add(y),
                ArithOp::Sub => x.sub(y),
                ArithOp::Mul => x.mul(y),
                ArithOp::Div => x.div(y)?,
            }))
        }
        _ => unreachable!("tags checked above"),
    }
}

/// Evaluate an element of ℚ(u) at `u = c`.
pub fn specialize_u(x: &Scalar, c: &BigRational) -> Result<Scalar, FieldError> {
    match x {
        Scalar::RationalFunction(r) => Ok(Scalar::Rational(r.eval(c)?)),
        other => Err(FieldError::MixedFieldTags(other.tag().to_string(), "qu".into())),
    }
}

/// Image of a rational number in F_p.
pub fn reduce_mod_p(x: &Scalar, p: u32) -> Result<Scalar, FieldError> {
    let f = PrimeField::new(p as u64)?;
    match x {
        Scalar::Rational(q) => Ok(Scalar::Modular { value: f.from_rational(q)?, p }),
        other => Err(FieldError::MixedFieldTags(other.tag().to_string(), "q".into())),
    }
}

/// Parse an element of ℚ(u) written as an arithmetic expression in `u`:
/// integers, `u`, `+ - * / ^`, parentheses and implicit products like `2u`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, FieldError> {
    let tokens = tokenize(s)?;
    let mut p = ExprParser { tokens: &tokens, pos: 0, src: s };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(FieldError::Parse(s.into()));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    U,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            'u' => {
                out.push(Tok::U);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(FieldError::Parse(s.into())),
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl ExprParser<'_> {
    fn err(&self) -> FieldError {
        FieldError::Parse(self.src.to_string())
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                // implicit product: `2u`, `3(u+1)`, `(u+1)(u-1)`
                Some(Tok::U) | Some(Tok::Op('(')) | Some(Tok::Num(_)) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let n = match self.peek() {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| self.err())?,
                _ => return Err(self.err()),
            };
            self.pos += 1;
            let mut acc = RatFunc::one();
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, FieldError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err())?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(RatFunc::constant(BigRational::from_integer(n))),
            Tok::U => Ok(RatFunc::from_poly(UniPoly::var())),
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err()),
        }
    }
}

impl FromStr for Scalar {
    type Err = FieldError;

    /// Parses a rational number; use [`Scalar::parse`] for other fields.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Scalar::Rational(parse_rational(s)?))
    }
}
