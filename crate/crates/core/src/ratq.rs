//! Rational functions of `q` over `Q`, and the split form of `Q(q)^pi`.
//!
//! `Q(q)^pi = Q(q)[pi]/(pi^2-1)` decomposes along the idempotents `(1±pi)/2`
//! into two copies of `Q(q)`; carrying both components avoids the zero
//! divisors when dividing by quantum factorials.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;

use crate::qpi::QPiPoly;

/// Dense polynomial over `Q` in the variable `q`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyQ(pub Vec<BigRational>);

impl PolyQ {
    pub fn zero() -> Self {
        Self(vec![])
    }

    pub fn one() -> Self {
        Self(vec![BigRational::one()])
    }

    pub fn monomial(deg: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        Self(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Self(v).trim()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self(v).trim()
    }

    /// Euclidean division; panics on zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(d.0.len() - 1)];
        let dl = d.0.last().unwrap().clone();
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let k = r.0.len() - d.0.len();
            let c = r.0.last().unwrap() / &dl;
            q[k] = c.clone();
            let shifted: Vec<BigRational> = std::iter::repeat(BigRational::zero())
                .take(k)
                .chain(d.0.iter().map(|x| x * &c))
                .collect();
            r = r.sub(&Self(shifted));
        }
        (Self(q).trim(), r)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => Self::zero(),
            Some(l) => {
                let inv = BigRational::one() / l;
                Self(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Lowest nonzero degree, i.e. the exact power of `q` dividing the polynomial.
    pub fn q_valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }
}

/// Rational function `num/den` in `q` over `Q`, normalized (gcd 1, monic den).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatQ {
    pub fn zero() -> Self {
        Self {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: PolyQ::one(),
            den: PolyQ::one(),
        }
    }

    pub fn from_parts(num: PolyQ, den: PolyQ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }.normalize()
    }

    fn normalize(self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let g = self.num.gcd(&self.den);
        let (num, _) = self.num.divrem(&g);
        let (den, _) = self.den.divrem(&g);
        let lead = den.0.last().unwrap().clone();
        let inv = BigRational::one() / lead;
        Self {
            num: PolyQ(num.0.iter().map(|c| c * &inv).collect()),
            den: den.monic(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_parts(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(Self::from_parts(
            self.num.mul(&o.den),
            self.den.mul(&o.num),
        ))
    }

    /// The Laurent-polynomial coefficients, if the denominator is a power of `q`.
    pub fn as_laurent(&self) -> Option<Vec<(i64, BigRational)>> {
        if self.is_zero() {
            return Some(vec![]);
        }
        let v = self.den.q_valuation();
        if self.den.0.len() != v + 1 {
            return None; // more than one denominator term
        }
        // den = q^v (monic)
        Some(
            self.num
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - v as i64, c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &PolyQ| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut parts = vec![];
            for (i, c) in p.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cs = c.to_string();
                match i {
                    0 => parts.push(cs),
                    1 if c.is_one() => parts.push("q".into()),
                    1 => parts.push(format!("{cs}*q")),
                    _ if c.is_one() => parts.push(format!("q^{i}")),
                    _ => parts.push(format!("{cs}*q^{i}")),
                }
            }
            parts.join(" + ")
        };
        if self.den == PolyQ::one() {
            write!(f, "{}", side(&self.num))
        } else {
            write!(f, "({})/({})", side(&self.num), side(&self.den))
        }
    }
}

/// Element of `Q(q)^pi` stored as its `(pi -> 1, pi -> -1)` components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPiScalar {
    pub plus: RatQ,
    pub minus: RatQ,
}

impl QPiScalar {
    pub fn zero() -> Self {
        Self {
            plus: RatQ::zero(),
            minus: RatQ::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            plus: RatQ::one(),
            minus: RatQ::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn from_qpi(x: &QPiPoly) -> Self {
        let mut out = [RatQ::zero(), RatQ::zero()];
        for (s, slot) in [(1i64, 0usize), (-1, 1)] {
            let comp = x.eval_pi(s);
            let mut shift = 0i64;
            let mut coeffs: Vec<(i64, i64)> = comp.terms().map(|((e, _), c)| (e, c)).collect();
            if let Some(min) = coeffs.iter().map(|&(e, _)| e).min() {
                if min < 0 {
                    shift = -min;
                }
            }
            let mut num = PolyQ::zero();
            for (e, c) in coeffs.drain(..) {
                num = num.add(&PolyQ::monomial(
                    (e + shift) as usize,
                    BigRational::from(BigInt::from(c)),
                ));
            }
            let den = PolyQ::monomial(shift as usize, BigRational::one());
            out[slot] = RatQ::from_parts(num, den);
        }
        Self {
            plus: out[0].clone(),
            minus: out[1].clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            plus: self.plus.add(&o.plus),
            minus: self.minus.add(&o.minus),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            plus: self.plus.neg(),
            minus: self.minus.neg(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            plus: self.plus.mul(&o.plus),
            minus: self.minus.mul(&o.minus),
        }
    }

    /// Division; `None` if either component of the divisor vanishes (zero divisor).
    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(Self {
            plus: self.plus.div(&o.plus)?,
            minus: self.minus.div(&o.minus)?,
        })
    }

    /// Recombine into `Z[q,q^-1,pi]` if both components are Laurent and the
    /// half-sum/half-difference coefficients are integers.
    pub fn to_integral(&self) -> Option<QPiPoly> {
        let two = BigRational::from(BigInt::from(2));
        let u = self.plus.as_laurent()?;
        let v = self.minus.as_laurent()?;
        let mut merged: std::collections::BTreeMap<i64, (BigRational, BigRational)> =
            Default::default();
        for (e, c) in u {
            merged.entry(e).or_insert_with(|| (BigRational::zero(), BigRational::zero())).0 = c;
        }
        for (e, c) in v {
            merged.entry(e).or_insert_with(|| (BigRational::zero(), BigRational::zero())).1 = c;
        }
        let mut out = QPiPoly::zero();
        for (e, (up, um)) in merged {
            let p = (&up + &um) / &two;
            let r = (&up - &um) / &two;
            for (part, pe) in [(p, 0i64), (r, 1)] {
                if part.is_zero() {
                    continue;
                }
                if !part.is_integer() {
                    return None;
                }
                let c: i64 = part.to_integer().try_into().ok()?;
                out = out.add(&QPiPoly::monomial(e, pe, c));
            }
        }
        Some(out)
    }
}

impl fmt::Display for QPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integral() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "[pi=1: {} | pi=-1: {}]", self.plus, self.minus),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_ring_homomorphism() {
        let a = QPiPoly::qint(3);
        let b = QPiPoly::qint(-2).mul(&QPiPoly::pi());
        let sa = QPiScalar::from_qpi(&a);
        let sb = QPiScalar::from_qpi(&b);
        assert_eq!(
            sa.mul(&sb),
            QPiScalar::from_qpi(&a.mul(&b)),
            "multiplicative"
        );
        assert_eq!(sa.add(&sb), QPiScalar::from_qpi(&a.add(&b)), "additive");
    }

    #[test]
    fn integrality_round_trip() {
        for x in [
            QPiPoly::qint(7),
            QPiPoly::qfactorial(4).unwrap(),
            QPiPoly::monomial(-3, 1, -5),
            QPiPoly::zero(),
        ] {
            assert_eq!(QPiScalar::from_qpi(&x).to_integral(), Some(x));
        }
    }

    #[test]
    fn transient_division_recovers_integral_results() {
        // [4]! / ([2]! [2]!) = qbinomial(4,2) stays integral through Q(q)^pi
        let f4 = QPiScalar::from_qpi(&QPiPoly::qfactorial(4).unwrap());
        let f2 = QPiScalar::from_qpi(&QPiPoly::qfactorial(2).unwrap());
        let b = f4.div(&f2.mul(&f2)).unwrap();
        assert_eq!(b.to_integral(), Some(QPiPoly::qbinomial(4, 2).unwrap()));
        // while 1/[2] is genuinely non-integral
        let inv = QPiScalar::one().div(&f2).unwrap();
        assert_eq!(inv.to_integral(), None);
    }
}
