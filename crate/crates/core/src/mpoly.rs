//! Multivariate polynomials over `Q` with a degree-lex Groebner engine, plus
//! the coefficient-ring abstraction shared by the diagram calculus.
//!
//! The polynomial systems here are small (tens of variables, degree <= 2), so
//! plain Buchberger with the coprimality criterion is plenty.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring for the diagram engine: integers for concrete runs,
/// polynomials in the derivation symbols for the classification.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn from_int(n: i64) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_int(n: i64) -> Self {
        n
    }
}

/// Monomial: sparse exponent vector, ordered by total degree then lex.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Mono(pub BTreeMap<u32, u32>);

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Self(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (&v, &e) in &o.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Self(out)
    }

    /// Divide, if divisible.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (&v, &e) in &o.0 {
            let slot = out.get_mut(&v)?;
            if *slot < e {
                return None;
            }
            *slot -= e;
            if *slot == 0 {
                out.remove(&v);
            }
        }
        Some(Self(out))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (&v, &e) in &o.0 {
            let slot = out.entry(v).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self(out)
    }

    pub fn coprime(&self, o: &Self) -> bool {
        self.0.keys().all(|v| !o.0.contains_key(v))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded lexicographic with smaller variable index more significant
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let a: Vec<_> = self.0.iter().collect();
                let b: Vec<_> = other.0.iter().collect();
                // lex on the exponent sequences: earlier variables first
                let mut i = 0;
                let mut j = 0;
                loop {
                    match (a.get(i), b.get(j)) {
                        (None, None) => return std::cmp::Ordering::Equal,
                        (None, Some(_)) => return std::cmp::Ordering::Less,
                        (Some(_), None) => return std::cmp::Ordering::Greater,
                        (Some((va, ea)), Some((vb, eb))) => {
                            if va != vb {
                                // smaller variable index is "bigger" in lex
                                return vb.cmp(va);
                            }
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            })
    }
}

/// Polynomial over `Q`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn var(v: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), BigRational::one());
        Self { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Self { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from(BigInt::from(n)))
    }

    fn insert(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Reduce modulo a list of polynomials (multivariate division remainder).
    pub fn reduce(&self, basis: &[MPoly]) -> MPoly {
        let mut rem = MPoly::default();
        let mut work = self.clone();
        'outer: while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
            for g in basis {
                let Some((gm, gc)) = g.leading() else { continue };
                if let Some(q) = m.div(gm) {
                    let factor = &c / gc;
                    // work -= factor * q * g
                    for (tm, tc) in &g.terms {
                        work.insert(q.mul(tm), -(&factor * tc));
                    }
                    continue 'outer;
                }
            }
            work.terms.remove(&m);
            rem.insert(m, c);
        }
        rem
    }
}

impl Scalar for MPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn from_int(n: i64) -> Self {
        Self::int(n)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .map(|(v, e)| {
                        if *e == 1 {
                            format!("v{v}")
                        } else {
                            format!("v{v}^{e}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Buchberger's algorithm (degree-lex, coprimality criterion).
pub fn groebner_basis(gens: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    // normalize leading coefficients
    for g in basis.iter_mut() {
        let lc = g.leading().unwrap().1.clone();
        let inv = BigRational::one() / lc;
        *g = g.mul(&MPoly::constant(inv));
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..i).map(move |j| (j, i)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (gi, gj) = (&basis[i], &basis[j]);
        let (mi, _) = gi.leading().unwrap();
        let (mj, _) = gj.leading().unwrap();
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let qi = l.div(mi).unwrap();
        let qj = l.div(mj).unwrap();
        let mut s = MPoly::default();
        for (m, c) in &gi.terms {
            s.insert(qi.mul(m), c.clone());
        }
        for (m, c) in &gj.terms {
            s.insert(qj.mul(m), -c);
        }
        let r = s.reduce(&basis);
        if !r.is_zero() {
            let lc = r.leading().unwrap().1.clone();
            let r = r.mul(&MPoly::constant(BigRational::one() / lc));
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
        }
    }
    basis
}

/// Two-way ideal equality over `Q`.
pub fn ideals_equal(a: &[MPoly], b: &[MPoly]) -> bool {
    let ga = groebner_basis(a);
    let gb = groebner_basis(b);
    a.iter().all(|f| f.reduce(&gb).is_zero())
        && b.iter().all(|f| f.reduce(&ga).is_zero())
        && ga.iter().all(|f| f.reduce(&gb).is_zero())
        && gb.iter().all(|f| f.reduce(&ga).is_zero())
}

/// Membership of a single polynomial.
pub fn ideal_contains(gens: &[MPoly], f: &MPoly) -> bool {
    let gb = groebner_basis(gens);
    f.reduce(&gb).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn reduction_and_membership() {
        // ideal (x - y, y^2): x^2 is a member, x is not
        let gens = vec![v(0).sub(&v(1)), v(1).mul(&v(1))];
        assert!(ideal_contains(&gens, &v(0).mul(&v(0))));
        assert!(!ideal_contains(&gens, &v(0)));
    }

    #[test]
    fn ideal_equality_detects_difference() {
        let a = vec![v(0).sub(&v(1))];
        let b = vec![v(1).sub(&v(0))];
        assert!(ideals_equal(&a, &b));
        let c = vec![v(0)];
        assert!(!ideals_equal(&a, &c));
    }

    #[test]
    fn s_polynomial_discovery() {
        // (xy - 1, y^2 - 1) must discover x - y (well-known toy example)
        let xy1 = v(0).mul(&v(1)).sub(&MPoly::int(1));
        let y21 = v(1).mul(&v(1)).sub(&MPoly::int(1));
        let gens = vec![xy1, y21];
        assert!(ideal_contains(&gens, &v(0).sub(&v(1))));
    }
}
