//! Exact arithmetic in `A_pi = Z[q,q^-1,pi]/(pi^2-1)`, its quotient `R`, and
//! the Gaussian-integer specializations.
//!
//! `R = Z[q,q^-1,pi]/(pi^2-1, 1+q^2 pi)` is represented as `Z[q]/(q^4-1)` with
//! `pi = -q^2`; the two defining relations force `q^4 = 1`, so this is a free
//! rank-4 Z-module and all arithmetic stays integral.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ParseError;

/// Element of `Z[q,q^-1,pi]/(pi^2-1)` as a sparse map `(q-exponent, pi-exponent) -> coeff`.
///
/// Invariants: no zero coefficients are stored; pi-exponents are 0 or 1.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct QPiPoly {
    terms: BTreeMap<(i64, u8), i64>,
}

impl QPiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn pi() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn int(n: i64) -> Self {
        Self::monomial(0, 0, n)
    }

    /// `c * q^a * pi^b` (b reduced mod 2).
    pub fn monomial(q_exp: i64, pi_exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((q_exp, (pi_exp.rem_euclid(2)) as u8), coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, u8), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    fn insert(&mut self, key: (i64, u8), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            out.insert(k, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(qa, pa), &ca) in &self.terms {
            for (&(qb, pb), &cb) in &other.terms {
                out.insert((qa + qb, (pa + pb) % 2), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `pi -> s` (`s = 1` or `-1`), landing in `Z[q,q^-1]` (pi-exponent 0).
    pub fn eval_pi(&self, s: i64) -> Self {
        assert!(s == 1 || s == -1);
        let mut out = Self::zero();
        for (&(qe, pe), &c) in &self.terms {
            let sign = if pe == 1 { s } else { 1 };
            out.insert((qe, 0), c * sign);
        }
        out
    }

    /// True iff every coefficient is a nonnegative integer (membership in `N[q,q^-1,pi]`).
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// The `(q,pi)`-integer `[n] = ((pi q)^n - q^-n)/(pi q - q^-1)`.
    ///
    /// Closed form: `[n] = sum_{k=0..n-1} pi^{n-1-k} q^{n-1-2k}` for `n >= 0`,
    /// and `[-n] = -pi^n [n]`.
    pub fn qint(n: i64) -> Self {
        if n < 0 {
            let pos = Self::qint(-n);
            let sign = if (-n) % 2 == 1 {
                Self::pi().neg()
            } else {
                Self::int(-1)
            };
            return sign.mul(&pos);
        }
        let mut out = Self::zero();
        for k in 0..n {
            out.insert((n - 1 - 2 * k, ((n - 1 - k) % 2) as u8), 1);
        }
        out
    }

    /// `[n]! = [1][2]...[n]`; errors on negative input.
    pub fn qfactorial(n: i64) -> Result<Self, ArithmeticError> {
        if n < 0 {
            return Err(ArithmeticError::NegativeFactorial(n));
        }
        let mut out = Self::one();
        for i in 1..=n {
            out = out.mul(&Self::qint(i));
        }
        Ok(out)
    }

    /// `(q,pi)`-binomial `prod_{i=1..a} [n+i-a] / [a]!`, exact in `Z[q,q^-1,pi]`.
    ///
    /// Non-divisibility is a hard error: it can only indicate an arithmetic bug,
    /// never valid data.
    pub fn qbinomial(n: i64, a: i64) -> Result<Self, ArithmeticError> {
        if a < 0 {
            return Err(ArithmeticError::NegativeFactorial(a));
        }
        let mut num = Self::one();
        for i in 1..=a {
            num = num.mul(&Self::qint(n + i - a));
        }
        let den = Self::qfactorial(a)?;
        num.div_exact(&den)
    }

    /// Exact division, splitting along the idempotents `(1 ± pi)/2` of `Q(q)^pi`
    /// so that each component is an honest Laurent-polynomial division over `Q`.
    pub fn div_exact(&self, den: &Self) -> Result<Self, ArithmeticError> {
        if den.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let up = laurent_div_exact(&self.eval_pi(1), &den.eval_pi(1))?;
        let um = laurent_div_exact(&self.eval_pi(-1), &den.eval_pi(-1))?;
        // recombine: p + pi*r with p = (up+um)/2, r = (up-um)/2
        let two_p = up.add(&um);
        let two_r = up.sub(&um);
        let mut out = Self::zero();
        for (&(qe, _), &c) in &two_p.terms {
            if c % 2 != 0 {
                return Err(ArithmeticError::InexactDivision);
            }
            out.insert((qe, 0), c / 2);
        }
        for (&(qe, _), &c) in &two_r.terms {
            if c % 2 != 0 {
                return Err(ArithmeticError::InexactDivision);
            }
            out.insert((qe, 1), c / 2);
        }
        // confirm: out * den == self
        if out.mul(den) != *self {
            return Err(ArithmeticError::InexactDivision);
        }
        Ok(out)
    }

    /// Projection to `R`: ring homomorphism with `pi -> -q^2`, `q^4 -> 1`.
    pub fn r_project(&self) -> RElt {
        let mut out = RElt::zero();
        for (&(qe, pe), &c) in &self.terms {
            let mut e = qe;
            let mut coeff = c;
            if pe == 1 {
                e += 2;
                coeff = -coeff;
            }
            out.0[e.rem_euclid(4) as usize] += coeff;
        }
        out
    }

    /// Evaluate at a specialization point (ring homomorphism into `Z[i]`).
    pub fn specialize(&self, p: SpecPoint) -> GaussInt {
        let mut out = GaussInt::zero();
        for (&(qe, pe), &c) in &self.terms {
            let mut v = p.q.pow(qe);
            if pe == 1 && p.pi == -1 {
                v = v.neg();
            }
            out = out.add(&v.scale(c));
        }
        out
    }
}

/// Laurent division over one `pi`-component: exact division in `Q[q,q^-1]`,
/// with the result required to have integer coefficients.
fn laurent_div_exact(num: &QPiPoly, den: &QPiPoly) -> Result<QPiPoly, ArithmeticError> {
    if num.is_zero() {
        return Ok(QPiPoly::zero());
    }
    // shift both to ordinary polynomials in q with nonnegative exponents
    let nmin = num.terms.keys().map(|&(e, _)| e).min().unwrap();
    let dmin = den.terms.keys().map(|&(e, _)| e).min().unwrap();
    let ndeg = num.terms.keys().map(|&(e, _)| e).max().unwrap() - nmin;
    let ddeg = den.terms.keys().map(|&(e, _)| e).max().unwrap() - dmin;
    if ddeg > ndeg {
        return Err(ArithmeticError::InexactDivision);
    }
    let mut n: Vec<i128> = vec![0; (ndeg + 1) as usize];
    for (&(e, _), &c) in &num.terms {
        n[(e - nmin) as usize] = c as i128;
    }
    let mut d: Vec<i128> = vec![0; (ddeg + 1) as usize];
    for (&(e, _), &c) in &den.terms {
        d[(e - dmin) as usize] = c as i128;
    }
    // synthetic division from the top, demanding exactness at every step
    let mut quot: Vec<i128> = vec![0; (ndeg - ddeg + 1) as usize];
    let dl = *d.last().unwrap();
    for k in (0..quot.len()).rev() {
        let lead = n[k + ddeg as usize];
        if lead % dl != 0 {
            return Err(ArithmeticError::InexactDivision);
        }
        let qk = lead / dl;
        quot[k] = qk;
        for (j, dj) in d.iter().enumerate() {
            n[k + j] -= qk * dj;
        }
    }
    if n.iter().any(|&c| c != 0) {
        return Err(ArithmeticError::InexactDivision);
    }
    let mut out = QPiPoly::zero();
    for (k, &c) in quot.iter().enumerate() {
        let c64 = i64::try_from(c).map_err(|_| ArithmeticError::Overflow)?;
        out.insert((k as i64 + nmin - dmin, 0), c64);
    }
    Ok(out)
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("factorial/binomial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division in Z[q,q^-1,pi] (arithmetic bug)")]
    InexactDivision,
    #[error("integer overflow")]
    Overflow,
}

/// Element of `R = Z[q]/(q^4-1)`: `c0 + c1 q + c2 q^2 + c3 q^3`, with `pi = -q^2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Hash)]
pub struct RElt(pub [i64; 4]);

impl RElt {
    pub fn zero() -> Self {
        Self([0; 4])
    }

    pub fn one() -> Self {
        Self([1, 0, 0, 0])
    }

    pub fn q_pow(e: i64) -> Self {
        let mut out = Self::zero();
        out.0[e.rem_euclid(4) as usize] = 1;
        out
    }

    pub fn pi() -> Self {
        let mut out = Self::zero();
        out.0[2] = -1;
        out
    }

    pub fn int(n: i64) -> Self {
        Self([n, 0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            out.0[i] += o.0[i];
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[(i + j) % 4] += self.0[i] * o.0[j];
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        Self([self.0[0] * c, self.0[1] * c, self.0[2] * c, self.0[3] * c])
    }

    /// `[n]_R = q^{1-n} delta_{n odd}`.
    pub fn qint(n: i64) -> Self {
        if n.rem_euclid(2) == 1 {
            Self::q_pow(1 - n)
        } else {
            Self::zero()
        }
    }

    /// Specialize at `q = i, pi = 1` (checks `1 + q^2 pi = 0`), landing in `Z[i]`.
    pub fn at_fourth_root(&self) -> GaussInt {
        // q = i: 1, i, -1, -i
        GaussInt {
            re: self.0[0] - self.0[2],
            im: self.0[1] - self.0[3],
        }
    }

    /// Specialize at `q = -1, pi = -1`, landing in `Z`.
    pub fn at_minus_one(&self) -> i64 {
        self.0[0] - self.0[1] + self.0[2] - self.0[3]
    }

    /// Image in `Z[q]/(q^2-1)` (the formal `pi = -1` quotient): pair `(even, odd)` parts.
    pub fn pi_minus1_quotient(&self) -> (i64, i64) {
        (self.0[0] + self.0[2], self.0[1] + self.0[3])
    }
}

impl fmt::Display for RElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => write!(f, "q^{e}")?,
                (_, m) => write!(f, "{m}*q^{e}")?,
            }
        }
        Ok(())
    }
}

/// A Gaussian integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Hash)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub fn zero() -> Self {
        Self { re: 0, im: 0 }
    }

    pub fn one() -> Self {
        Self { re: 1, im: 0 }
    }

    pub fn i() -> Self {
        Self { re: 0, im: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            re: self.re * c,
            im: self.im * c,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        // only used for units, where negative powers are conjugates
        let mut base = *self;
        let mut e = e;
        if e < 0 {
            // unit inverse: conjugate / norm; for units norm = 1
            base = Self {
                re: base.re,
                im: -base.im,
            };
            e = -e;
        }
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(&base);
        }
        out
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, m) => write!(f, "{m}*i"),
            (r, 1) => write!(f, "{r}+i"),
            (r, -1) => write!(f, "{r}-i"),
            (r, m) if m < 0 => write!(f, "{r}{m}*i"),
            (r, m) => write!(f, "{r}+{m}*i"),
        }
    }
}

/// A specialization point: `q` a Gaussian unit, `pi = ±1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpecPoint {
    pub q: GaussInt,
    pub pi: i64,
}

impl SpecPoint {
    pub fn new(q: GaussInt, pi: i64) -> Result<Self, ArithmeticError> {
        let unit = matches!(
            (q.re, q.im),
            (1, 0) | (-1, 0) | (0, 1) | (0, -1)
        );
        if !unit || (pi != 1 && pi != -1) {
            return Err(ArithmeticError::InexactDivision);
        }
        Ok(Self { q, pi })
    }

    /// `1 + q^2 pi = 0`, i.e. the point factors through `R`.
    pub fn is_r_compatible(&self) -> bool {
        let q2 = self.q.mul(&self.q);
        GaussInt::one().add(&q2.scale(self.pi)).is_zero()
    }

    pub fn small_quantum() -> Self {
        Self {
            q: GaussInt::i(),
            pi: 1,
        }
    }

    pub fn sl11() -> Self {
        Self {
            q: GaussInt { re: -1, im: 0 },
            pi: -1,
        }
    }
}

// ---------------------------------------------------------------------------
// text form: signed monomial list, e.g. `q^-1 + pi*q`
// ---------------------------------------------------------------------------

impl fmt::Display for QPiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(qe, pe), &c) in &self.terms {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || (pe == 0 && qe == 0) {
                parts.push(mag.to_string());
            }
            if pe == 1 {
                parts.push("pi".to_string());
            }
            match qe {
                0 => {}
                1 => parts.push("q".to_string()),
                e => parts.push(format!("q^{e}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for QPiPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_qpi(s)
    }
}

fn parse_qpi(s: &str) -> Result<QPiPoly, ParseError> {
    let b = s.as_bytes();
    let mut pos = 0usize;
    let mut out = QPiPoly::zero();
    let skip_ws = |pos: &mut usize| {
        while *pos < b.len() && (b[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };
    let parse_int = |pos: &mut usize| -> Result<i64, ParseError> {
        skip_ws(pos);
        let start = *pos;
        if *pos < b.len() && (b[*pos] == b'-' || b[*pos] == b'+') {
            *pos += 1;
        }
        let digits = *pos;
        while *pos < b.len() && (b[*pos] as char).is_ascii_digit() {
            *pos += 1;
        }
        if *pos == digits {
            return Err(ParseError::at(start, "expected integer"));
        }
        s[start..*pos]
            .parse()
            .map_err(|_| ParseError::at(start, "integer out of range"))
    };
    skip_ws(&mut pos);
    if pos == b.len() {
        return Err(ParseError::at(0, "empty expression"));
    }
    let mut first_term = true;
    while pos < b.len() {
        skip_ws(&mut pos);
        if pos == b.len() {
            break;
        }
        let mut sign = 1i64;
        if b[pos] == b'+' || b[pos] == b'-' {
            if b[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if !first_term {
            return Err(ParseError::at(pos, "expected '+' or '-'"));
        }
        first_term = false;
        // one term: factors separated by '*'
        let mut coeff = sign;
        let mut qe = 0i64;
        let mut pe = 0i64;
        let mut saw_factor = false;
        loop {
            skip_ws(&mut pos);
            if pos >= b.len() {
                break;
            }
            match b[pos] {
                b'0'..=b'9' => {
                    let v = parse_int(&mut pos)?;
                    coeff *= v;
                }
                b'p' => {
                    if s[pos..].starts_with("pi") {
                        pos += 2;
                        skip_ws(&mut pos);
                        let mut e = 1i64;
                        if pos < b.len() && b[pos] == b'^' {
                            pos += 1;
                            e = parse_int(&mut pos)?;
                        }
                        pe += e;
                    } else {
                        return Err(ParseError::at(pos, "unknown symbol (expected 'pi')"));
                    }
                }
                b'q' => {
                    pos += 1;
                    skip_ws(&mut pos);
                    let mut e = 1i64;
                    if pos < b.len() && b[pos] == b'^' {
                        pos += 1;
                        e = parse_int(&mut pos)?;
                    }
                    qe += e;
                }
                _ => return Err(ParseError::at(pos, "unexpected character in term")),
            }
            saw_factor = true;
            skip_ws(&mut pos);
            if pos < b.len() && b[pos] == b'*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(ParseError::at(pos, "empty term"));
        }
        out = out.add(&QPiPoly::monomial(qe, pe.rem_euclid(2), coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(s: &str) -> QPiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn qint_small_values() {
        assert!(QPiPoly::qint(0).is_zero());
        assert_eq!(QPiPoly::qint(1), QPiPoly::one());
        assert_eq!(QPiPoly::qint(2), qp("pi*q + q^-1"));
        assert_eq!(QPiPoly::qint(3), qp("q^2 + pi + q^-2"));
        // defining property: [n] * (pi q - q^-1) = (pi q)^n - q^-n
        for n in 0..=8 {
            let lhs = QPiPoly::qint(n).mul(&qp("pi*q - q^-1"));
            let pq = qp("pi*q").pow(n as u32);
            let qi = QPiPoly::monomial(-n, 0, 1);
            assert_eq!(lhs, pq.sub(&qi), "n = {n}");
        }
    }

    #[test]
    fn qint_negation_rule() {
        // [-n] = -pi^n [n]
        for n in -20..=20 {
            let lhs = QPiPoly::qint(-n);
            let sign = if n.rem_euclid(2) == 1 {
                QPiPoly::pi().neg()
            } else {
                QPiPoly::int(-1)
            };
            assert_eq!(lhs, sign.mul(&QPiPoly::qint(n)), "n = {n}");
        }
        assert_eq!(
            QPiPoly::qint(-3),
            QPiPoly::pi().neg().mul(&qp("q^2 + pi + q^-2"))
        );
    }

    #[test]
    fn qfactorial_small() {
        assert_eq!(QPiPoly::qfactorial(0).unwrap(), QPiPoly::one());
        assert_eq!(QPiPoly::qfactorial(2).unwrap(), qp("pi*q + q^-1"));
        let expected = qp("pi*q + q^-1").mul(&qp("q^2 + pi + q^-2"));
        assert_eq!(QPiPoly::qfactorial(3).unwrap(), expected);
        assert!(QPiPoly::qfactorial(-1).is_err());
    }

    #[test]
    fn qbinomial_examples_and_integrality() {
        assert_eq!(QPiPoly::qbinomial(5, 0).unwrap(), QPiPoly::one());
        assert_eq!(QPiPoly::qbinomial(2, 1).unwrap(), qp("pi*q + q^-1"));
        assert_eq!(QPiPoly::qbinomial(3, 2).unwrap(), qp("q^2 + pi + q^-2"));
        for n in 0..=12 {
            for a in 0..=n {
                let b = QPiPoly::qbinomial(n, a).unwrap();
                // cross-check against [n]!/([a]![n-a]!)
                let n_fact = QPiPoly::qfactorial(n).unwrap();
                let prod = QPiPoly::qfactorial(a)
                    .unwrap()
                    .mul(&QPiPoly::qfactorial(n - a).unwrap());
                assert_eq!(b.mul(&prod), n_fact, "binom({n},{a})");
            }
        }
    }

    #[test]
    fn r_projection() {
        assert!(qp("1 + pi*q^2").r_project().is_zero());
        assert_eq!(qp("q^5").r_project(), RElt::q_pow(1));
        assert!(QPiPoly::qint(2).r_project().is_zero());
        for n in -20..=20 {
            assert_eq!(QPiPoly::qint(n).r_project(), RElt::qint(n), "n = {n}");
        }
    }

    #[test]
    fn specialize_points() {
        let small = SpecPoint::small_quantum();
        assert!(small.is_r_compatible());
        assert!(QPiPoly::qint(2).specialize(small).is_zero());
        let sl11 = SpecPoint::sl11();
        assert!(sl11.is_r_compatible());
        assert_eq!(QPiPoly::qint(3).specialize(sl11), GaussInt::one());
        let classical = SpecPoint::new(GaussInt::one(), 1).unwrap();
        for n in 0..=10 {
            assert_eq!(
                QPiPoly::qint(n).specialize(classical),
                GaussInt { re: n, im: 0 }
            );
        }
    }

    #[test]
    fn display_parse_round_trip() {
        let cases = [
            QPiPoly::qint(5),
            QPiPoly::qint(-4),
            qp("-3*pi*q^-7 + 2 - q"),
            QPiPoly::zero(),
            QPiPoly::qfactorial(4).unwrap(),
        ];
        for x in cases {
            let printed = x.to_string();
            let reparsed: QPiPoly = printed.parse().unwrap();
            assert_eq!(reparsed, x, "round trip of `{printed}`");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "q^".parse::<QPiPoly>().unwrap_err();
        assert!(err.to_string().contains("position"));
        assert!("z + 1".parse::<QPiPoly>().is_err());
    }

    #[test]
    fn relt_specializations_land_correctly() {
        // at (q=i, pi=1): Z[i]; at (q=-1, pi=-1): Z
        let x = RElt([3, -2, 5, 7]);
        let g = x.at_fourth_root();
        assert_eq!(g, GaussInt { re: -2, im: -9 });
        assert_eq!(x.at_minus_one(), 3 + 2 + 5 - 7);
        // pi = -q^2 consistency: r_project(pi) specializes to 1 at pi=1,q=i
        assert_eq!(QPiPoly::pi().r_project().at_fourth_root(), GaussInt::one());
        assert_eq!(QPiPoly::pi().r_project().at_minus_one(), -1);
    }
}
