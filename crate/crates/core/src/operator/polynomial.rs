use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{int, Rational};

/// A polynomial in `x1, …, xd` with exact rational coefficients. Keys are
/// exponent vectors of length `d`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    /// The coordinate `x_{i+1}` (0-based `i`).
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(self.dim, Rational::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `∂f/∂x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc + term
        }))
    }

    /// `f(Qx + b)`.
    pub fn compose_affine(&self, q: &RationalMatrix, b: &[Rational]) -> Result<Self> {
        let d = self.dim;
        if q.nrows() != d || q.ncols() != d || b.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: if q.nrows() != d { q.nrows() } else { b.len() },
            });
        }
        let images: Vec<Polynomial> = (0..d)
            .map(|i| {
                let mut p = Self::constant(d, b[i].clone());
                for j in 0..d {
                    p = p.add(&Self::var(d, j).scale(&q[(i, j)]));
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Self::constant(d, Rational::one()), p.clone()])
            .collect();
        let mut out = Self::zero(d);
        for (e, c) in &self.terms {
            let mut term = Self::constant(d, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Parse text such as `3*x1^2*x2 - (x1 + 1/2)^3`. Supports `+ - * / ^`,
    /// parentheses, `·` for multiplication, implicit multiplication
    /// (`2x1`), integer and `a/b` coefficients. Division is only allowed by
    /// constants.
    pub fn parse(src: &str, dim: usize) -> Result<Self> {
        let mut parser = Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            dim,
            src_len: src.len(),
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{}", vars.join("*"))?;
            } else {
                write!(f, "({mag})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    dim: usize,
    src_len: usize,
}

impl Parser {
    fn byte_pos(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src_len, |&(b, _)| b)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.byte_pos(),
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.byte_pos();
                    let den = self.unary()?;
                    let c = constant_value(&den).ok_or(Error::Parse {
                        pos: at,
                        msg: "division by a non-constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(c) if c == '(' || c == 'x' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                Ok(self.unary()?.scale(&-Rational::one()))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('x') => {
                self.pos += 1;
                let at = self.byte_pos();
                let idx = self.integer()?;
                let idx: usize = idx.try_into().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.dim {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("variable x{idx} outside x1..x{}", self.dim),
                    });
                }
                Ok(Polynomial::var(self.dim, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.dim, Rational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<Rational> {
    match p.terms.len() {
        0 => Some(Rational::zero()),
        1 => {
            let (e, c) = p.terms.iter().next().unwrap();
            e.iter().all(|&k| k == 0).then(|| c.clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn parse_and_display() {
        let p = Polynomial::parse("x1^2 + x2^2", 2).unwrap();
        assert_eq!(p.to_string(), "x1^2 + x2^2");
        let q = Polynomial::parse("(x1 + x2)^2 - 2x1*x2", 2).unwrap();
        assert_eq!(q, p);
        let r = Polynomial::parse("-1/2*x1 + 3 · x2^3 / 4 - 7", 2).unwrap();
        assert_eq!(r.eval(&[int(2), int(2)]).unwrap(), int(-2));
        assert_eq!(r.to_string(), "(3/4)*x2^3 - (1/2)*x1 - 7");
        assert_eq!(
            Polynomial::parse("x1 - x1", 1).unwrap(),
            Polynomial::zero(1)
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Polynomial::parse("x3", 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1 / x2", 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("(x1", 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1 +", 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("1/0", 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1 $", 2),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn derivatives() {
        let f = Polynomial::parse("x1^3*x2 + 5x2", 2).unwrap();
        assert_eq!(f.derivative(0), Polynomial::parse("3x1^2*x2", 2).unwrap());
        assert_eq!(f.derivative(1), Polynomial::parse("x1^3 + 5", 2).unwrap());
        assert_eq!(f.total_degree(), Some(4));
    }

    #[test]
    fn affine_composition() {
        let f = Polynomial::parse("x1", 2).unwrap();
        let q = RationalMatrix::identity(2);
        let shifted = f.compose_affine(&q, &[int(1), int(0)]).unwrap();
        assert_eq!(shifted, Polynomial::parse("x1 + 1", 2).unwrap());

        let xy = Polynomial::parse("x1*x2", 2).unwrap();
        let rot = RationalMatrix::from_i64_rows(&[vec![0, -1], vec![1, 0]]);
        let zero = [int(0), int(0)];
        assert_eq!(
            xy.compose_affine(&rot, &zero).unwrap(),
            Polynomial::parse("-x1*x2", 2).unwrap()
        );
        let radial = Polynomial::parse("x1^2 + x2^2", 2).unwrap();
        let q = RationalMatrix::from_rows(
            vec![vec![frac(3, 5), frac(-4, 5)], vec![frac(4, 5), frac(3, 5)]],
            2,
        )
        .unwrap();
        assert_eq!(radial.compose_affine(&q, &zero).unwrap(), radial);
    }
}
