//! Exact scalars: Laurent polynomials in one real parameter `t` with
//! Gaussian-rational coefficients.
//!
//! Every generator entry in this crate is a [`Scalar`]. Coefficients are kept
//! exact so relation checks and rank computations are identities, not
//! approximations. Conjugation negates the imaginary unit and fixes `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num::BigRational;

/// A number `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            if self.re.is_integer() {
                write!(f, "{}", self.re)
            } else {
                write!(f, "({})", self.re)
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: Scalar = s.parse()?;
        value.as_constant().ok_or_else(|| Error::ScalarParse {
            pos: 0,
            msg: format!("`{s}` is not a constant"),
        })
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

/// Laurent polynomial `Σ c_e t^e` with Gaussian-rational coefficients.
///
/// Stored sparsely; no stored coefficient is ever zero, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    coeffs: BTreeMap<i64, GaussianRational>,
}

fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("exponent overflow in Laurent arithmetic")
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The formal parameter `t`.
    pub fn t() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·t^exp`.
    pub fn monomial(c: GaussianRational, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds from `(exponent, coefficient)` terms, merging repeats and
    /// dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GaussianRational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(exp)
            .or_insert_with(GaussianRational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(GaussianRational::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The value if this scalar does not involve `t`.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.coeffs.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// Complex conjugation: negates `i`, fixes `t`.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    /// Formal squared modulus `a·conj(a)`.
    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        Some(Self::monomial(
            c.inv()?,
            e.checked_neg().expect("exponent overflow"),
        ))
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Substitutes `t := p`.
    pub fn eval(&self, p: &GaussianRational) -> Result<GaussianRational, Error> {
        if p.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::EvalAtZero);
        }
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.coeffs {
            let pe = p.pow(*e).ok_or(Error::EvalAtZero)?;
            acc = &acc + &(c * &pe);
        }
        Ok(acc)
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, x)| (*e, x * c)))
    }

    fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (add_exp(*e, by), c.clone()))
                .collect(),
        }
    }

    /// Dense coefficient list of `self / t^min_exponent`, lowest degree first.
    fn normalized_poly(&self) -> (i64, Vec<GaussianRational>) {
        let lo = self.min_exponent().unwrap_or(0);
        let hi = self.max_exponent().unwrap_or(0);
        let len = usize::try_from(hi - lo).expect("degree span") + 1;
        let mut v = vec![GaussianRational::zero(); len];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_poly(shift: i64, coeffs: &[GaussianRational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (add_exp(shift, i as i64), c.clone())),
        )
    }

    /// Exact quotient in the Laurent ring, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.normalized_poly();
        let (sb, b) = other.normalized_poly();
        let (q, r) = poly_div_rem(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_poly(sa - sb, &q))
    }

    /// Greatest common divisor up to units, normalized to a monic polynomial
    /// with nonzero constant term.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        let (_, mut a) = self.normalized_poly();
        let (_, mut b) = other.normalized_poly();
        while b.iter().any(|c| !c.is_zero()) {
            let (_, r) = poly_div_rem(&a, &b);
            a = b;
            b = trim(r);
        }
        Self::from_poly(0, &a).normalize_unit()
    }

    /// Divides out the unit part so the result is monic with lowest exponent 0.
    fn normalize_unit(&self) -> Self {
        match (self.min_exponent(), self.coeffs.values().next_back()) {
            (Some(lo), Some(lead)) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                self.shift(-lo).scale(&inv)
            }
            _ => Self::zero(),
        }
    }
}

fn trim(mut v: Vec<GaussianRational>) -> Vec<GaussianRational> {
    while v.last().is_some_and(GaussianRational::is_zero) {
        v.pop();
    }
    v
}

/// Long division of dense polynomials (lowest degree first).
fn poly_div_rem(
    a: &[GaussianRational],
    b: &[GaussianRational],
) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = b
        .last()
        .and_then(GaussianRational::inv)
        .expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![GaussianRational::zero()], r);
    }
    let mut q = vec![GaussianRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("non-empty") * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(bc * &factor);
        }
        q[shift] = factor;
        r = trim(r);
    }
    (q, r)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c);
        }
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(add_exp(*ea, *eb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

/// Canonical rendering: terms in ascending exponent joined by ` + `, e.g.
/// `(3/2)*t^-1 + 1 + (0+1i)*t^2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let power = if *e == 1 {
                "t".to_string()
            } else {
                format!("t^{e}")
            };
            if *e == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&power)?;
            } else if (-c).is_one() {
                write!(f, "-{power}")?;
            } else {
                write!(f, "{c}*{power}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = ScalarParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(value)
    }
}

/// Recursive-descent parser for scalar expressions.
///
/// Accepts the canonical rendering plus ordinary hand-written forms such as
/// `1 + (t-1)*2`, `3/2*t^-1` or `2i`. Division and negative powers are only
/// allowed by units of the Laurent ring.
struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ScalarParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::ScalarParse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                let inv = rhs.inverse().ok_or(Error::ScalarParse {
                    pos: at,
                    msg: "division by a non-unit".into(),
                })?;
                &acc * &inv
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, Error> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let exp = self.signed_int()?;
            return base.pow(exp).ok_or(Error::ScalarParse {
                pos: at,
                msg: "negative power of a non-unit".into(),
            });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, Error> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self
            .digits()
            .ok_or_else(|| self.err("expected integer exponent"))?;
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// Consumes `/digits` when it is immediately followed by `i`.
    fn fraction_before_i(&mut self) -> Option<BigInt> {
        if self.src.get(self.pos) != Some(&b'/') {
            return None;
        }
        let start = self.pos + 1;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_digit() {
            end += 1;
        }
        if end == start || self.src.get(end) != Some(&b'i') {
            return None;
        }
        let den = std::str::from_utf8(&self.src[start..end])
            .ok()?
            .parse()
            .ok()?;
        self.pos = end;
        Some(den)
    }

    fn primary(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Scalar::t())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Scalar::constant(GaussianRational::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("digit present");
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                let mut r = Rational::from_integer(n);
                // `3/2i` with no spaces is the imaginary literal `(3/2)·i`, as
                // in rendered coefficients like `(0-3/2i)`.
                if let Some(den) = self.fraction_before_i() {
                    if den.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    r = Rational::new(r.numer().clone(), den);
                }
                // `2i` is an imaginary literal.
                if self.src.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(Scalar::constant(GaussianRational::new(Rational::zero(), r)));
                }
                Ok(Scalar::constant(GaussianRational::real(r)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
