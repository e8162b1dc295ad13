//! Exact integer Laurent polynomials in `a` and in `(a, z)`.
//!
//! Both types are sparse maps from an exponent key to a nonzero `i64`
//! coefficient. Every arithmetic routine has a checked form returning
//! [`ArithmeticError::Overflow`] instead of wrapping; the operator impls
//! (`+`, `*`, ...) call the checked forms and panic on overflow, the same
//! way primitive integer arithmetic does in debug builds.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Failure of an exact arithmetic operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("integer overflow in a polynomial coefficient")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("specialization z = -a - a^-1 of `{0}` is not a Laurent polynomial in a")]
    SpecializationNotLaurent(String),
}

/// A syntax error in the polynomial text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial syntax error at position {position}: {message}")]
pub struct PolySyntaxError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

/// Exponent key of a Laurent monomial.
///
/// Monomials form a free abelian group; `meet`/`join` are the
/// componentwise minimum/maximum, used to bound exact quotients.
pub trait Monomial: Copy + Ord + Hash + fmt::Debug {
    fn one() -> Self;
    fn mul(self, other: Self) -> Self;
    fn div(self, other: Self) -> Self;
    fn meet(self, other: Self) -> Self;
    fn join(self, other: Self) -> Self;
    /// Componentwise `self <= other`.
    fn le_all(self, other: Self) -> bool;
    /// Writes the variable factors (`a^i*z^j`), returning `false` when the
    /// monomial is 1 and nothing was written.
    fn write_factors(self, f: &mut fmt::Formatter<'_>) -> Result<bool, fmt::Error>;
}

impl Monomial for i32 {
    fn one() -> Self {
        0
    }
    fn mul(self, other: Self) -> Self {
        self + other
    }
    fn div(self, other: Self) -> Self {
        self - other
    }
    fn meet(self, other: Self) -> Self {
        self.min(other)
    }
    fn join(self, other: Self) -> Self {
        self.max(other)
    }
    fn le_all(self, other: Self) -> bool {
        self <= other
    }
    fn write_factors(self, f: &mut fmt::Formatter<'_>) -> Result<bool, fmt::Error> {
        write_power(f, 'a', self, false)
    }
}

/// `(a-exponent, z-exponent)`; the derived `Ord` is the canonical term order.
impl Monomial for (i32, i32) {
    fn one() -> Self {
        (0, 0)
    }
    fn mul(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn div(self, other: Self) -> Self {
        (self.0 - other.0, self.1 - other.1)
    }
    fn meet(self, other: Self) -> Self {
        (self.0.min(other.0), self.1.min(other.1))
    }
    fn join(self, other: Self) -> Self {
        (self.0.max(other.0), self.1.max(other.1))
    }
    fn le_all(self, other: Self) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }
    fn write_factors(self, f: &mut fmt::Formatter<'_>) -> Result<bool, fmt::Error> {
        let wrote_a = write_power(f, 'a', self.0, false)?;
        let wrote_z = write_power(f, 'z', self.1, wrote_a)?;
        Ok(wrote_a || wrote_z)
    }
}

fn write_power(
    f: &mut fmt::Formatter<'_>,
    var: char,
    exp: i32,
    needs_star: bool,
) -> Result<bool, fmt::Error> {
    if exp == 0 {
        return Ok(false);
    }
    if needs_star {
        f.write_str("*")?;
    }
    if exp == 1 {
        write!(f, "{var}")?;
    } else {
        write!(f, "{var}^{exp}")?;
    }
    Ok(true)
}

/// A sparse Laurent polynomial with integer coefficients.
///
/// No stored coefficient is zero, so equal polynomials have identical maps
/// and the derived `Eq`/`Hash` are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<M: Monomial> {
    terms: BTreeMap<M, i64>,
}

/// Laurent polynomial in `a`: `Z[a, a^-1]`.
pub type LaurentA = Laurent<i32>;
/// Laurent polynomial in `a` and `z`: `Z[a^±1, z^±1]`.
pub type LaurentAZ = Laurent<(i32, i32)>;

impl<M: Monomial> Laurent<M> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(M::one(), 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(M::one(), c)
    }

    /// `c * m`; zero when `c == 0`.
    pub fn term(m: M, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (M, i64)>>(iter: I) -> Result<Self, ArithmeticError> {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&M::one()) == Some(&1)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: M) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (M, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Highest term in monomial order.
    pub fn leading(&self) -> Option<(M, i64)> {
        self.terms.iter().next_back().map(|(&m, &c)| (m, c))
    }

    fn add_term(&mut self, m: M, c: i64) -> Result<(), ArithmeticError> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(c).ok_or(ArithmeticError::Overflow)?;
        if *entry == 0 {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self, ArithmeticError> {
        let terms = self
            .terms()
            .map(|(m, c)| c.checked_neg().map(|c| (m, c)).ok_or(ArithmeticError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.checked_neg().ok_or(ArithmeticError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithmeticError> {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(ArithmeticError::Overflow)?;
                out.add_term(m1.mul(m2), c)?;
            }
        }
        Ok(out)
    }

    /// Multiplies by the single term `c * m`.
    pub fn checked_mul_term(&self, m: M, c: i64) -> Result<Self, ArithmeticError> {
        if c == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms()
            .map(|(m2, c2)| {
                c2.checked_mul(c)
                    .map(|c| (m.mul(m2), c))
                    .ok_or(ArithmeticError::Overflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { terms })
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self, ArithmeticError> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Divides every coefficient by `d`, failing unless all are multiples.
    pub fn divide_scalar_exact(&self, d: i64) -> Result<Self, ArithmeticError> {
        if d == 0 {
            return Err(ArithmeticError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            if c % d != 0 {
                return Err(self.not_divisible(&Self::constant(d)));
            }
            terms.insert(m, c.checked_div(d).ok_or(ArithmeticError::Overflow)?);
        }
        Ok(Self { terms })
    }

    /// Componentwise minimum and maximum exponents; `None` for zero.
    fn corners(&self) -> Option<(M, M)> {
        let mut it = self.terms.keys().copied();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), m| (lo.meet(m), hi.join(m))))
    }

    fn not_divisible(&self, divisor: &Self) -> ArithmeticError {
        ArithmeticError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        }
    }

    /// Returns `r` with `r * divisor == self`, or an error if no such `r`
    /// exists over the integer Laurent ring.
    ///
    /// Runs leading-term division. In an integral domain the extreme
    /// exponents of a product are the sums of the factors' extremes, so
    /// every quotient term must lie in the box
    /// `[min(self) - min(divisor), max(self) - max(divisor)]`; leaving it
    /// proves non-divisibility and bounds the loop.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, ArithmeticError> {
        let (dlo, dhi) = divisor.corners().ok_or(ArithmeticError::DivisionByZero)?;
        let Some((plo, phi)) = self.corners() else {
            return Ok(Self::zero());
        };
        let (lo, hi) = (plo.div(dlo), phi.div(dhi));
        let (lead_m, lead_c) = divisor.leading().expect("nonzero divisor");

        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lead_m);
            if c % lead_c != 0 || !lo.le_all(qm) || !qm.le_all(hi) {
                return Err(self.not_divisible(divisor));
            }
            let qc = c / lead_c;
            rem = rem.checked_sub(&divisor.checked_mul_term(qm, qc)?)?;
            quot.add_term(qm, qc)?;
        }
        Ok(quot)
    }
}

impl LaurentA {
    /// The variable `a`.
    pub fn a() -> Self {
        Self::term(1, 1)
    }

    /// `-a - a^-1`, the value substituted for `z`.
    pub fn z_value() -> Self {
        Self { terms: BTreeMap::from([(-1, -1), (1, -1)]) }
    }

    /// The substitution `a -> a^-1`.
    pub fn invert_a(&self) -> Self {
        Self { terms: self.terms().map(|(e, c)| (-e, c)).collect() }
    }

    /// Embeds into `Z[a^±1, z^±1]`.
    pub fn to_az(&self) -> LaurentAZ {
        LaurentAZ { terms: self.terms().map(|(e, c)| ((e, 0), c)).collect() }
    }
}

impl LaurentAZ {
    pub fn a() -> Self {
        Self::term((1, 0), 1)
    }

    pub fn z() -> Self {
        Self::term((0, 1), 1)
    }

    /// `a^k`.
    pub fn a_pow(k: i32) -> Self {
        Self::term((k, 0), 1)
    }

    /// The split-circle factor `(a + a^-1) z^-1 - 1`.
    pub fn delta() -> Self {
        Self { terms: BTreeMap::from([((-1, -1), 1), ((0, 0), -1), ((1, -1), 1)]) }
    }

    /// The substitution `a -> a^-1`, leaving `z` fixed.
    pub fn invert_a(&self) -> Self {
        Self { terms: self.terms().map(|((a, z), c)| ((-a, z), c)).collect() }
    }

    /// Restricts to `Z[a^±1]`, or `None` when some term involves `z`.
    pub fn to_a(&self) -> Option<LaurentA> {
        self.terms()
            .map(|((a, z), c)| (z == 0).then_some((a, c)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(|terms| LaurentA { terms })
    }

    /// Evaluates at `z = -a - a^-1`.
    ///
    /// Negative powers of `z` are cleared by multiplying through by
    /// `z^N`, the polynomial is substituted termwise, and the result is
    /// divided exactly by `(-a - a^-1)^N`. A failed division means the input
    /// is not in the image of the Kauffman polynomial.
    pub fn substitute_z(&self) -> Result<LaurentA, ArithmeticError> {
        let min_z = self.terms().map(|((_, z), _)| z).min().unwrap_or(0);
        let shift = (-min_z).max(0);
        let z_val = LaurentA::z_value();

        let mut powers = vec![LaurentA::one()];
        let mut acc = LaurentA::zero();
        for ((a, z), c) in self.terms() {
            let k = (z + shift) as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty").checked_mul(&z_val)?;
                powers.push(next);
            }
            acc = acc.checked_add(&powers[k].checked_mul_term(a, c)?)?;
        }
        acc.divide_exact(&z_val.checked_pow(shift as u32)?)
            .map_err(|err| match err {
                ArithmeticError::NotDivisible { .. } => {
                    ArithmeticError::SpecializationNotLaurent(self.to_string())
                }
                other => other,
            })
    }
}

impl<M: Monomial> fmt::Display for Laurent<M> {
    /// Terms ascend in monomial order, e.g. `a^-1*z^-1 - 1 + a*z^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.unsigned_abs();
            if abs == 1 {
                if !m.write_factors(f)? {
                    f.write_str("1")?;
                }
            } else {
                write!(f, "{abs}")?;
                if m != M::one() {
                    f.write_str("*")?;
                    m.write_factors(f)?;
                }
            }
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for Laurent<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

macro_rules! impl_ops {
    ($($tr:ident $method:ident $checked:ident;)*) => {$(
        impl<M: Monomial> $tr<&Laurent<M>> for &Laurent<M> {
            type Output = Laurent<M>;
            fn $method(self, rhs: &Laurent<M>) -> Laurent<M> {
                self.$checked(rhs).expect("polynomial coefficient overflow")
            }
        }
        impl<M: Monomial> $tr for Laurent<M> {
            type Output = Laurent<M>;
            fn $method(self, rhs: Laurent<M>) -> Laurent<M> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

impl_ops! {
    Add add checked_add;
    Sub sub checked_sub;
    Mul mul checked_mul;
}

impl<M: Monomial> Neg for &Laurent<M> {
    type Output = Laurent<M>;
    fn neg(self) -> Laurent<M> {
        self.checked_neg().expect("polynomial coefficient overflow")
    }
}

impl<M: Monomial> Neg for Laurent<M> {
    type Output = Laurent<M>;
    fn neg(self) -> Laurent<M> {
        -&self
    }
}

/// Parses the text grammar: signed monomials `c*a^i*z^j` joined by `+` and
/// `-`, whitespace anywhere between tokens, exponents and coefficient
/// optional.
pub fn parse_poly(text: &str) -> Result<LaurentAZ, PolySyntaxError> {
    PolyParser { chars: text.chars().collect(), pos: 0 }.parse()
}

impl FromStr for LaurentAZ {
    type Err = PolySyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl FromStr for LaurentA {
    type Err = PolySyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)?.to_a().ok_or_else(|| PolySyntaxError {
            position: 0,
            message: "unexpected variable z in a polynomial in a".into(),
        })
    }
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser {
    fn error(&self, message: impl Into<String>) -> PolySyntaxError {
        PolySyntaxError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LaurentAZ, PolySyntaxError> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut acc = LaurentAZ::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{c}'"))),
            };
            first = false;
            let start = self.pos;
            let (m, mut c) = self.parse_term()?;
            if negative {
                c = -c;
            }
            acc.add_term(m, c).map_err(|_| PolySyntaxError {
                position: start,
                message: "coefficient overflow".into(),
            })?;
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<((i32, i32), i64), PolySyntaxError> {
        let mut m = (0, 0);
        let mut c: i64 = 1;
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let start = self.pos;
                    let v = self.parse_digits()?;
                    c = c.checked_mul(v).ok_or(PolySyntaxError {
                        position: start,
                        message: "coefficient overflow".into(),
                    })?;
                }
                Some(var @ ('a' | 'z')) => {
                    self.pos += 1;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.parse_exponent()?
                    } else {
                        1
                    };
                    if var == 'a' {
                        m.0 += e;
                    } else {
                        m.1 += e;
                    }
                }
                Some(other) => return Err(self.error(format!("unexpected '{other}'"))),
                None => return Err(self.error("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((m, c));
            }
        }
    }

    fn parse_digits(&mut self) -> Result<i64, PolySyntaxError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| PolySyntaxError { position: start, message: "integer out of range".into() })
    }

    /// A signed integer token: no space between the sign and the digits.
    fn parse_exponent(&mut self) -> Result<i32, PolySyntaxError> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let v = self.parse_digits()?;
        let v = i32::try_from(v)
            .map_err(|_| PolySyntaxError { position: start, message: "exponent out of range".into() })?;
        Ok(if negative { -v } else { v })
    }
}
