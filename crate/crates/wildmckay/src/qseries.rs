//! Exact arithmetic for sparse Laurent polynomials and rational functions in
//! the formal variable `q`, allowing rational exponents and rational
//! coefficients.
//!
//! Mass polynomials are assembled from monomials `c * q^e` where both `c` and
//! `e` are exact rationals (half-integer exponents occur in intermediate
//! valuations), summed over infinitely many strata via geometric closed forms,
//! and finally evaluated through the `S` functional (evaluation at `q = 1`).
//! Nothing here is approximate: every operation either produces an exact value
//! or a typed error.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar: arbitrary-precision, always reduced, denominator
/// positive. Used for coefficients, exponents, valuations and ages alike.
pub type Rational = num::BigRational;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational. `d` must be nonzero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn bigint_pow(b: &BigInt, mut e: u64) -> BigInt {
    let mut result = BigInt::one();
    let mut base = b.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    result
}

/// `base^e` for integer `e`, exact. `base` must be nonzero when `e < 0`.
pub fn rational_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        Rational::new(bigint_pow(base.numer(), e as u64), bigint_pow(base.denom(), e as u64))
    } else {
        Rational::new(bigint_pow(base.denom(), (-e) as u64), bigint_pow(base.numer(), (-e) as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    /// A geometric series with nonnegative exponent step has no closed form
    /// as a series in `q^{-1}`.
    DivergentSeries { step: Rational },
    ZeroDenominator,
    /// Evaluation at a concrete value requires integer exponents.
    NonIntegerExponent { exponent: Rational },
    /// The polynomial cannot be the Poincaré polynomial of a smooth variety:
    /// a `T^2`-substitution exponent or a coefficient fails to be integral.
    NonIntegralBetti { detail: String },
    Parse { detail: String },
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::DivergentSeries { step } => {
                write!(f, "divergent series: exponent step {step} is not negative")
            }
            QSeriesError::ZeroDenominator => write!(f, "zero denominator"),
            QSeriesError::NonIntegerExponent { exponent } => {
                write!(f, "cannot evaluate: exponent {exponent} is not an integer")
            }
            QSeriesError::NonIntegralBetti { detail } => write!(f, "non-integral Betti data: {detail}"),
            QSeriesError::Parse { detail } => write!(f, "parse error: {detail}"),
        }
    }
}

impl std::error::Error for QSeriesError {}

/// Sparse Laurent polynomial in `q`: a finite map from rational exponents to
/// nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    terms: BTreeMap<Rational, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `c * q^e`.
    pub fn monomial(coeff: Rational, exponent: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        QLaurent { terms }
    }

    /// The variable `q` itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), Rational::one())
    }

    /// `q^e`.
    pub fn qpow(exponent: Rational) -> Self {
        Self::monomial(Rational::one(), exponent)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut out = QLaurent::zero();
        for (coeff, exponent) in terms {
            out.add_term(&coeff, &exponent);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &Rational) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    pub(crate) fn add_term(&mut self, coeff: &Rational, exponent: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(exponent);
        }
    }

    pub fn scale(&self, c: &Rational) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent { terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Multiply by the monomial `q^e`.
    pub fn shift(&self, e: &Rational) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(x, a)| (x + e, a.clone())).collect() }
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn s_value(&self) -> Rational {
        let mut s = Rational::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// Exact evaluation at a concrete nonzero rational `q0`. All exponents
    /// must be integers.
    pub fn eval(&self, q0: &Rational) -> Result<Rational, QSeriesError> {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            if !e.is_integer() {
                return Err(QSeriesError::NonIntegerExponent { exponent: e.clone() });
            }
            let exp = e.to_integer();
            let exp = exp.to_string().parse::<i64>().map_err(|_| QSeriesError::NonIntegerExponent {
                exponent: e.clone(),
            })?;
            s += c * rational_pow(q0, exp);
        }
        Ok(s)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficient list of `f(T^2)` indexed by `T`-degree, when every exponent
    /// of `f` doubles to a nonnegative integer and every coefficient is an
    /// integer. Used to read Betti numbers off a point-count polynomial.
    pub fn substitute_square(&self) -> Result<Vec<BigInt>, QSeriesError> {
        let two = rat(2);
        let mut by_degree: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let t_degree = e * &two;
            if !t_degree.is_integer() || t_degree.is_negative() {
                return Err(QSeriesError::NonIntegralBetti {
                    detail: format!("exponent {e} gives T-degree {t_degree}"),
                });
            }
            if !c.is_integer() {
                return Err(QSeriesError::NonIntegralBetti {
                    detail: format!("coefficient {c} at exponent {e} is not an integer"),
                });
            }
            let d = t_degree.to_integer().to_string().parse::<u64>().map_err(|_| {
                QSeriesError::NonIntegralBetti { detail: format!("T-degree {t_degree} out of range") }
            })?;
            by_degree.insert(d, c.to_integer());
        }
        let top = by_degree.keys().next_back().copied().unwrap_or(0);
        let mut out = vec![BigInt::zero(); top as usize + 1];
        for (d, c) in by_degree {
            out[d as usize] = c;
        }
        Ok(out)
    }
}

impl std::ops::Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c, e);
        }
        out
    }
}

impl std::ops::Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(&(-c), e);
        }
        out
    }
}

impl std::ops::Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl std::ops::Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(&(ca * cb), &(ea + eb));
            }
        }
        out
    }
}

/// Canonical text rendering: terms in descending exponent order, exponents as
/// reduced fractions, e.g. `q^4 + 2*q^3` and `3*q^(5/2)`. This is the golden
/// format for regression tests and machine reports.
impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !coeff_is_one {
                    write!(f, "{abs}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else if e.is_integer() && !e.is_negative() {
                    write!(f, "q^{e}")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Rational, QSeriesError> {
    let s = s.trim();
    let make_err = || QSeriesError::Parse { detail: format!("bad rational `{s}`") };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| make_err())?;
        let d: BigInt = d.trim().parse().map_err(|_| make_err())?;
        if d.is_zero() {
            return Err(make_err());
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| make_err())?;
        Ok(Rational::from_integer(n))
    }
}

/// Parse the canonical rendering back into a `QLaurent`. Inverse of `Display`.
pub fn parse_qlaurent(input: &str) -> Result<QLaurent, QSeriesError> {
    let input = input.trim();
    if input.is_empty() {
        return Err(QSeriesError::Parse { detail: "empty polynomial".into() });
    }
    if input == "0" {
        return Ok(QLaurent::zero());
    }
    // Split on " + " / " - " while keeping a possible leading "-".
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut rest = input;
    let mut sign = if let Some(r) = rest.strip_prefix('-') {
        rest = r.trim_start();
        true
    } else {
        false
    };
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let (cut, next_sign) = match (plus, minus) {
            (Some(p), Some(m)) if p < m => (Some(p), false),
            (Some(_), Some(m)) => (Some(m), true),
            (Some(p), None) => (Some(p), false),
            (None, Some(m)) => (Some(m), true),
            (None, None) => (None, false),
        };
        match cut {
            Some(pos) => {
                terms.push((sign, rest[..pos].trim().to_string()));
                rest = rest[pos + 3..].trim_start();
                sign = next_sign;
            }
            None => {
                terms.push((sign, rest.trim().to_string()));
                break;
            }
        }
    }
    let mut out = QLaurent::zero();
    for (negative, body) in terms {
        let (coeff_str, exp_str) = match body.split_once('*') {
            Some((c, q)) => (Some(c.trim()), q.trim()),
            None => (None, body.as_str()),
        };
        let (coeff, exponent) = if exp_str == "q" {
            (coeff_str, Rational::one())
        } else if let Some(e) = exp_str.strip_prefix("q^") {
            let e = e.trim();
            let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
            (coeff_str, parse_rational(e)?)
        } else {
            // Constant term: the whole body is the coefficient.
            if coeff_str.is_some() {
                return Err(QSeriesError::Parse { detail: format!("bad term `{body}`") });
            }
            (Some(body.as_str()), Rational::zero())
        };
        let mut c = match coeff {
            Some(s) => parse_rational(s)?,
            None => Rational::one(),
        };
        if negative {
            c = -c;
        }
        out.add_term(&c, &exponent);
    }
    Ok(out)
}

/// Sum of the coefficients of `f`, i.e. `f(1)`. A ring homomorphism.
pub fn s_value(f: &QLaurent) -> Rational {
    f.s_value()
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Ratio of two Laurent polynomials. Kept unnormalized until a polynomiality
/// question is asked; equality goes through cross-multiplication.
#[derive(Debug, Clone)]
pub struct QRatFun {
    num: QLaurent,
    den: QLaurent,
}

impl QRatFun {
    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self, QSeriesError> {
        if den.is_zero() {
            return Err(QSeriesError::ZeroDenominator);
        }
        Ok(QRatFun { num, den })
    }

    pub fn from_laurent(p: QLaurent) -> Self {
        QRatFun { num: p, den: QLaurent::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(QLaurent::zero())
    }

    pub fn numerator(&self) -> &QLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &QRatFun) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Exact cancellation. Returns the Laurent polynomial when the reduced
    /// form has trivial denominator, otherwise the reduced rational function.
    pub fn simplify_to_polynomial(&self) -> Result<QLaurent, NotPolynomial> {
        if self.num.is_zero() {
            return Ok(QLaurent::zero());
        }
        if let Some(q) = divide_exact(&self.num, &self.den) {
            return Ok(q);
        }
        Err(NotPolynomial { reduced: self.reduced() })
    }

    /// gcd-cancelled form with the denominator normalized: minimal exponent 0
    /// and leading coefficient 1.
    pub fn reduced(&self) -> QRatFun {
        if self.num.is_zero() {
            return QRatFun { num: QLaurent::zero(), den: QLaurent::one() };
        }
        let (n, d, (shift_n, shift_d), scale) = IntPoly::from_laurent_pair(&self.num, &self.den);
        let g = int_poly_gcd(&n, &d);
        let qn = int_poly_div_exact(&n, &g).expect("gcd divides");
        let qd = int_poly_div_exact(&d, &g).expect("gcd divides");
        // Normalize: denominator gets min exponent 0 and leading coefficient 1.
        let lead = qd.leading_coeff().expect("nonzero");
        let inv_lead = Rational::one() / &lead;
        let qd_min = *qd.0.keys().next().expect("nonzero");
        let num_l = qn.to_laurent(&scale).scale(&inv_lead);
        let den_l = qd.to_laurent(&scale).scale(&inv_lead);
        let num_shift = Rational::new(BigInt::from(shift_n - shift_d - qd_min), scale.clone());
        let den_shift = Rational::new(BigInt::from(-qd_min), scale.clone());
        QRatFun { num: num_l.shift(&num_shift), den: den_l.shift(&den_shift) }
    }
}

impl PartialEq for QRatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl std::ops::Add for &QRatFun {
    type Output = QRatFun;
    fn add(self, rhs: &QRatFun) -> QRatFun {
        QRatFun {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl std::ops::Sub for &QRatFun {
    type Output = QRatFun;
    fn sub(self, rhs: &QRatFun) -> QRatFun {
        QRatFun {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl std::ops::Mul for &QRatFun {
    type Output = QRatFun;
    fn mul(self, rhs: &QRatFun) -> QRatFun {
        QRatFun { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl fmt::Display for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

/// Verdict that a rational function is not a Laurent polynomial, carrying the
/// gcd-reduced form.
#[derive(Debug, Clone)]
pub struct NotPolynomial {
    pub reduced: QRatFun,
}

impl fmt::Display for NotPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a polynomial: {}", self.reduced)
    }
}

/// Closed form of the geometric series `sum_{a >= 0} coeff * q^(e0 + a*step)`,
/// namely `coeff * q^e0 / (1 - q^step)`. The series converges as a formal
/// series in `q^{-1}` only when `step < 0`.
pub fn geometric_closed_form(
    coeff: &Rational,
    e0: &Rational,
    step: &Rational,
) -> Result<QRatFun, QSeriesError> {
    if !step.is_negative() {
        return Err(QSeriesError::DivergentSeries { step: step.clone() });
    }
    let num = QLaurent::monomial(coeff.clone(), e0.clone());
    let den = &QLaurent::one() - &QLaurent::qpow(step.clone());
    QRatFun::new(num, den)
}

// ---------------------------------------------------------------------------
// Internal integer-exponent polynomials for division and gcd
// ---------------------------------------------------------------------------

/// Polynomial with integer exponents >= 0, used after clearing the common
/// denominator of the rational exponents.
#[derive(Debug, Clone, Default)]
struct IntPoly(BTreeMap<i64, Rational>);

impl IntPoly {
    /// Convert a pair (numerator, denominator) into integer-exponent form with
    /// a shared exponent scale, each shifted so its minimal exponent is zero.
    /// Original exponent = (int_exp + shift)/scale.
    fn from_laurent_pair(a: &QLaurent, b: &QLaurent) -> (IntPoly, IntPoly, (i64, i64), BigInt) {
        let mut scale = BigInt::one();
        for e in a.terms.keys().chain(b.terms.keys()) {
            scale = scale.lcm(e.denom());
        }
        let to_int = |f: &QLaurent| -> BTreeMap<i64, Rational> {
            f.terms
                .iter()
                .map(|(e, c)| {
                    let scaled = (e * Rational::from_integer(scale.clone())).to_integer();
                    let exp: i64 = scaled.to_string().parse().expect("exponent fits i64");
                    (exp, c.clone())
                })
                .collect()
        };
        let na = to_int(a);
        let nb = to_int(b);
        let sa = na.keys().next().copied().unwrap_or(0);
        let sb = nb.keys().next().copied().unwrap_or(0);
        let na = na.into_iter().map(|(e, c)| (e - sa, c)).collect();
        let nb = nb.into_iter().map(|(e, c)| (e - sb, c)).collect();
        (IntPoly(na), IntPoly(nb), (sa, sb), scale)
    }

    fn leading(&self) -> Option<(i64, &Rational)> {
        self.0.iter().next_back().map(|(e, c)| (*e, c))
    }

    fn leading_coeff(&self) -> Option<Rational> {
        self.0.values().next_back().cloned()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, exp: i64, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&exp);
        }
    }

    fn to_laurent(&self, scale: &BigInt) -> QLaurent {
        QLaurent {
            terms: self
                .0
                .iter()
                .map(|(e, c)| (Rational::new(BigInt::from(*e), scale.clone()), c.clone()))
                .collect(),
        }
    }
}

/// Long division; returns (quotient, remainder).
fn int_poly_div_rem(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let mut rem = a.clone();
    let mut quo = IntPoly::default();
    let (be, bc) = b.leading().expect("division by zero polynomial");
    let bc = bc.clone();
    while let Some((re, rc)) = rem.leading() {
        if re < be {
            break;
        }
        let t_exp = re - be;
        let t_coeff = rc / &bc;
        quo.add_term(t_exp, &t_coeff);
        let neg = -t_coeff;
        for (e, c) in &b.0 {
            rem.add_term(e + t_exp, &(c * &neg));
        }
    }
    (quo, rem)
}

fn int_poly_div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let (q, r) = int_poly_div_rem(a, b);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

fn int_poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = int_poly_div_rem(&x, &y);
        x = y;
        y = r;
    }
    // Monic normalization for determinism.
    let lead = x.leading_coeff().expect("gcd of nonzero polynomials");
    IntPoly(x.0.into_iter().map(|(e, c)| (e, c / &lead)).collect())
}

/// `Some(num/den)` exactly when the quotient is a Laurent polynomial.
pub(crate) fn divide_exact(num: &QLaurent, den: &QLaurent) -> Option<QLaurent> {
    if num.is_zero() {
        return Some(QLaurent::zero());
    }
    if den.is_zero() {
        return None;
    }
    let (n, d, (shift_n, shift_d), scale) = IntPoly::from_laurent_pair(num, den);
    let q = int_poly_div_exact(&n, &d)?;
    let shift = Rational::new(BigInt::from(shift_n - shift_d), scale.clone());
    Some(q.to_laurent(&scale).shift(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QLaurent {
        QLaurent::var()
    }

    #[test]
    fn geometric_standard_identity() {
        // sum q^{-a} = q/(q-1)
        let g = geometric_closed_form(&rat(1), &rat(0), &rat(-1)).unwrap();
        let expected = QRatFun::new(q(), &q() - &QLaurent::one()).unwrap();
        assert!(g.equals(&expected));
    }

    #[test]
    fn geometric_folded_sum() {
        // (q-1) * sum_{i>=0} 2 q^{2-i} = 2 q^3
        let g = geometric_closed_form(&rat(2), &rat(2), &rat(-1)).unwrap();
        let factor = QRatFun::from_laurent(&q() - &QLaurent::one());
        let product = &g * &factor;
        let p = product.simplify_to_polynomial().unwrap();
        assert_eq!(p, QLaurent::monomial(rat(2), rat(3)));
    }

    #[test]
    fn geometric_divergent() {
        let err = geometric_closed_form(&rat(1), &rat(0), &rat(1)).unwrap_err();
        assert!(matches!(err, QSeriesError::DivergentSeries { .. }));
        let err0 = geometric_closed_form(&rat(1), &rat(0), &rat(0)).unwrap_err();
        assert!(matches!(err0, QSeriesError::DivergentSeries { .. }));
    }

    #[test]
    fn s_value_examples() {
        // q^4 + 2 q^3 -> 3
        let f = QLaurent::from_terms(vec![(rat(1), rat(4)), (rat(2), rat(3))]);
        assert_eq!(s_value(&f), rat(3));
        // 10 q^3 + 4 q^2 -> 14
        let g = QLaurent::from_terms(vec![(rat(10), rat(3)), (rat(4), rat(2))]);
        assert_eq!(s_value(&g), rat(14));
        assert_eq!(s_value(&QLaurent::zero()), rat(0));
    }

    #[test]
    fn simplify_difference_of_squares() {
        let num = &(&q() * &q()) - &QLaurent::one();
        let den = &q() - &QLaurent::one();
        let r = QRatFun::new(num, den).unwrap();
        assert_eq!(r.simplify_to_polynomial().unwrap(), &q() + &QLaurent::one());
    }

    #[test]
    fn simplify_expansion() {
        // q^4 (1 + 2 q^{-1}) = q^4 + 2 q^3
        let inner = &QLaurent::one() + &QLaurent::monomial(rat(2), rat(-1));
        let f = &QLaurent::qpow(rat(4)) * &inner;
        let r = QRatFun::from_laurent(f.clone());
        assert_eq!(r.simplify_to_polynomial().unwrap(), f);
        assert_eq!(f, QLaurent::from_terms(vec![(rat(1), rat(4)), (rat(2), rat(3))]));
    }

    #[test]
    fn simplify_not_polynomial() {
        // 1/(1 - q^{-1})
        let den = &QLaurent::one() - &QLaurent::qpow(rat(-1));
        let r = QRatFun::new(QLaurent::one(), den).unwrap();
        let err = r.simplify_to_polynomial().unwrap_err();
        // Reduced form is still a genuine rational function.
        assert!(!err.reduced.denominator().is_zero());
        assert!(err.reduced.denominator().num_terms() > 1);
    }

    #[test]
    fn substitute_square_examples() {
        // q^4 + 6 q^3 + 3 q^2 -> [0,0,0,0,3,0,6,0,1]
        let f = QLaurent::from_terms(vec![(rat(1), rat(4)), (rat(6), rat(3)), (rat(3), rat(2))]);
        let betti: Vec<i64> = f.substitute_square().unwrap().iter().map(|b| b.to_string().parse().unwrap()).collect();
        assert_eq!(betti, vec![0, 0, 0, 0, 3, 0, 6, 0, 1]);
        assert_eq!(QLaurent::one().substitute_square().unwrap().len(), 1);
        // q^{1/2} -> [0, 1]: T-degree 1 is integral
        let h = QLaurent::qpow(ratio(1, 2));
        let b: Vec<i64> = h.substitute_square().unwrap().iter().map(|x| x.to_string().parse().unwrap()).collect();
        assert_eq!(b, vec![0, 1]);
        // q^{1/3} is not
        assert!(QLaurent::qpow(ratio(1, 3)).substitute_square().is_err());
    }

    #[test]
    fn rendering_canonical() {
        let f = QLaurent::from_terms(vec![(rat(1), rat(4)), (rat(2), rat(3))]);
        assert_eq!(f.to_string(), "q^4 + 2*q^3");
        let g = QLaurent::monomial(rat(3), ratio(5, 2));
        assert_eq!(g.to_string(), "3*q^(5/2)");
        let h = QLaurent::from_terms(vec![(rat(-1), rat(2)), (rat(1), rat(0)), (ratio(1, 2), rat(-1))]);
        assert_eq!(h.to_string(), "-q^2 + 1 + 1/2*q^(-1)");
        assert_eq!(QLaurent::zero().to_string(), "0");
        assert_eq!(QLaurent::var().to_string(), "q");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["q^4 + 2*q^3", "3*q^(5/2)", "-q^2 + 1 + 1/2*q^(-1)", "0", "q", "10*q^3 + 4*q^2"] {
            let f = parse_qlaurent(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn eval_exact() {
        let f = QLaurent::from_terms(vec![(rat(1), rat(2)), (rat(1), rat(-1))]);
        assert_eq!(f.eval(&rat(4)).unwrap(), rat(16) + ratio(1, 4));
        assert!(QLaurent::qpow(ratio(1, 2)).eval(&rat(4)).is_err());
    }

    #[test]
    fn ratfun_equality_cross_multiplication() {
        // q/(q-1) == q^2/(q^2-q)
        let a = QRatFun::new(q(), &q() - &QLaurent::one()).unwrap();
        let b = QRatFun::new(&q() * &q(), &(&q() * &q()) - &q()).unwrap();
        assert!(a.equals(&b));
    }
}
