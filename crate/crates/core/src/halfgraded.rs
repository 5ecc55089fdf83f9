//! Half-graded complexes: finitely generated `Z x Z_2`-graded modules with a
//! square-zero differential of bidegree (2, 1), and their classes in `R`.
//!
//! Over a field (or after Smith reduction over `Z`) every such complex splits
//! into singles (one generator, zero differential) and two-term pairs
//! `S = (k -> Pi k<2>)`. The class of `S` vanishes in `R` because
//! `1 + q^2 pi = 0`, which is the defining relation of the target ring.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::onh::smith_normal_form;
use crate::qpi::RElt;
use num::{BigInt, One, Signed, Zero};

/// A complex: generator bidegrees plus a sparse integer differential.
///
/// Entry `(i, j, v)` is the `gen_i`-component of `d(gen_j)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HalfComplex {
    pub generators: Vec<(i64, u8)>,
    pub differential: Vec<(usize, usize, i64)>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential entry ({0},{1}) out of range")]
    OutOfRange(usize, usize),
    #[error("entry ({0},{1}) violates bidegree homogeneity: {2:?} vs {3:?} + (2,1)")]
    NotHomogeneous(usize, usize, (i64, u8), (i64, u8)),
    #[error("differential does not square to zero at ({0},{1})")]
    NotSquareZero(usize, usize),
}

/// An indecomposable summand of a decomposed complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    /// One generator in the given bidegree, zero differential.
    Single((i64, u8)),
    /// Pair `gen -> gen<2>Pi` with the given invariant factor (1 = unit).
    Pair((i64, u8), BigInt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K0Class(pub RElt);

impl HalfComplex {
    pub fn parity_ok(p: u8) -> bool {
        p < 2
    }

    /// Check bidegree homogeneity of the differential and `d^2 = 0`.
    pub fn validate(&self) -> Result<(), ComplexError> {
        let n = self.generators.len();
        for &(i, j, _) in &self.differential {
            if i >= n || j >= n {
                return Err(ComplexError::OutOfRange(i, j));
            }
            let (dj, pj) = self.generators[j];
            let (di, pi) = self.generators[i];
            if (di, pi) != (dj + 2, (pj + 1) % 2) {
                return Err(ComplexError::NotHomogeneous(i, j, (di, pi), (dj, pj)));
            }
        }
        // d^2 = 0 entrywise
        let mut m: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(i, j, v) in &self.differential {
            *m.entry((i, j)).or_insert(0) += v;
        }
        for (&(i, j), &v) in &m {
            if v == 0 {
                continue;
            }
            for (&(k, l), &w) in &m {
                if w == 0 || l != i {
                    continue;
                }
                // component of d^2 from j to k
                let mut total = 0i64;
                for (&(a, b), &u) in &m {
                    if b != j {
                        continue;
                    }
                    if let Some(&u2) = m.get(&(k, a)) {
                        total += u2 * u;
                    }
                }
                if total != 0 {
                    return Err(ComplexError::NotSquareZero(k, j));
                }
            }
        }
        Ok(())
    }

    /// Generators grouped by bidegree.
    fn by_bidegree(&self) -> BTreeMap<(i64, u8), Vec<usize>> {
        let mut out: BTreeMap<(i64, u8), Vec<usize>> = BTreeMap::new();
        for (i, &b) in self.generators.iter().enumerate() {
            out.entry(b).or_default().push(i);
        }
        out
    }

    /// The block of the differential leaving bidegree `b`.
    fn block(&self, b: (i64, u8)) -> Vec<Vec<BigInt>> {
        let groups = self.by_bidegree();
        let src = groups.get(&b).cloned().unwrap_or_default();
        let tgt = groups
            .get(&(b.0 + 2, (b.1 + 1) % 2))
            .cloned()
            .unwrap_or_default();
        let mut mat = vec![vec![BigInt::zero(); src.len()]; tgt.len()];
        for &(i, j, v) in &self.differential {
            if let (Some(c), Some(r)) = (
                src.iter().position(|&x| x == j),
                tgt.iter().position(|&x| x == i),
            ) {
                mat[r][c] += BigInt::from(v);
            }
        }
        mat
    }

    /// Decompose into singles and pairs via per-bidegree Smith reduction.
    pub fn decompose(&self) -> Result<Vec<Summand>, ComplexError> {
        self.validate()?;
        let groups = self.by_bidegree();
        let mut out = Vec::new();
        let mut used_as_target: BTreeMap<(i64, u8), usize> = BTreeMap::new();
        let mut used_as_source: BTreeMap<(i64, u8), usize> = BTreeMap::new();
        let mut factors: BTreeMap<(i64, u8), Vec<BigInt>> = BTreeMap::new();
        for (&b, _) in &groups {
            let snf = smith_normal_form(&self.block(b));
            let nonzero: Vec<BigInt> = snf.into_iter().filter(|x| !x.is_zero()).collect();
            used_as_source.insert(b, nonzero.len());
            used_as_target.insert((b.0 + 2, (b.1 + 1) % 2), nonzero.len());
            factors.insert(b, nonzero);
        }
        for (&b, gens) in &groups {
            for f in factors.get(&b).into_iter().flatten() {
                out.push(Summand::Pair(b, f.abs()));
            }
            let singles = gens.len()
                - used_as_source.get(&b).copied().unwrap_or(0)
                - used_as_target.get(&b).copied().unwrap_or(0);
            for _ in 0..singles {
                out.push(Summand::Single(b));
            }
        }
        Ok(out)
    }

    /// Class in `K_0 = R`: the free sum `sum q^d pi^p` over generators
    /// (pair classes cancel automatically since `1 + q^2 pi = 0`).
    pub fn k0_class(&self) -> Result<K0Class, ComplexError> {
        self.validate()?;
        Ok(K0Class(free_sum(self.generators.iter().copied())))
    }

    /// The same class computed from the decomposition: singles contribute,
    /// pairs contribute zero. Used as an independent route.
    pub fn k0_class_via_decomposition(&self) -> Result<K0Class, ComplexError> {
        let mut total = RElt::zero();
        for s in self.decompose()? {
            if let Summand::Single((d, p)) = s {
                total = total.add(&class_of_generator(d, p));
            }
        }
        Ok(K0Class(total))
    }

    /// Shift the quantum grading: `<t>` multiplies the class by `q^t`.
    pub fn shifted(&self, t: i64) -> Self {
        Self {
            generators: self.generators.iter().map(|&(d, p)| (d + t, p)).collect(),
            differential: self.differential.clone(),
        }
    }

    /// Parity shift: `Pi` multiplies the class by `pi`.
    pub fn parity_shifted(&self) -> Self {
        Self {
            generators: self
                .generators
                .iter()
                .map(|&(d, p)| (d, (p + 1) % 2))
                .collect(),
            differential: self.differential.clone(),
        }
    }

    /// Homological shift `[1] = <-2>Pi`; on classes this is multiplication by -1.
    pub fn homological_shift(&self) -> Self {
        self.shifted(-2).parity_shifted()
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let off = self.generators.len();
        let mut generators = self.generators.clone();
        generators.extend(o.generators.iter().copied());
        let mut differential = self.differential.clone();
        differential.extend(o.differential.iter().map(|&(i, j, v)| (i + off, j + off, v)));
        Self {
            generators,
            differential,
        }
    }
}

fn class_of_generator(d: i64, p: u8) -> RElt {
    let mut c = RElt::q_pow(d);
    if p == 1 {
        c = c.mul(&RElt::pi());
    }
    c
}

fn free_sum(gens: impl Iterator<Item = (i64, u8)>) -> RElt {
    let mut total = RElt::zero();
    for (d, p) in gens {
        total = total.add(&class_of_generator(d, p));
    }
    total
}

/// The contractible pair `S = (k<d>Pi^p -> k<d+2>Pi^{p+1})` with unit map.
pub fn s_pair(d: i64, p: u8) -> HalfComplex {
    HalfComplex {
        generators: vec![(d, p), (d + 2, (p + 1) % 2)],
        differential: vec![(1, 0, 1)],
    }
}

/// A single generator in bidegree `(d, p)`.
pub fn single(d: i64, p: u8) -> HalfComplex {
    HalfComplex {
        generators: vec![(d, p)],
        differential: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpi::GaussInt;

    #[test]
    fn validate_catches_errors() {
        let ok = s_pair(0, 0);
        assert!(ok.validate().is_ok());
        let bad_degree = HalfComplex {
            generators: vec![(0, 0), (1, 1)],
            differential: vec![(1, 0, 1)],
        };
        assert!(matches!(
            bad_degree.validate(),
            Err(ComplexError::NotHomogeneous(..))
        ));
        // d^2 != 0: 0 -> 1 -> 2 with unit maps
        let bad_square = HalfComplex {
            generators: vec![(0, 0), (2, 1), (4, 0)],
            differential: vec![(1, 0, 1), (2, 1, 1)],
        };
        assert!(matches!(
            bad_square.validate(),
            Err(ComplexError::NotSquareZero(..))
        ));
    }

    #[test]
    fn classes_of_shifts() {
        // class(S) = 0
        assert_eq!(s_pair(3, 1).k0_class().unwrap().0, RElt::zero());
        // class(k<1>) = q
        assert_eq!(single(1, 0).k0_class().unwrap().0, RElt::q_pow(1));
        // class(k Pi) = pi
        assert_eq!(single(0, 1).k0_class().unwrap().0, RElt::pi());
        // homological shift = multiplication by -1: k[1] = k<-2>Pi -> -1
        assert_eq!(
            single(0, 0).homological_shift().k0_class().unwrap().0,
            RElt::int(-1)
        );
    }

    #[test]
    fn decomposition_counts() {
        let c = single(0, 0)
            .direct_sum(&single(4, 1))
            .direct_sum(&s_pair(2, 0));
        let parts = c.decompose().unwrap();
        let singles = parts
            .iter()
            .filter(|s| matches!(s, Summand::Single(_)))
            .count();
        let pairs = parts
            .iter()
            .filter(|s| matches!(s, Summand::Pair(..)))
            .count();
        assert_eq!((singles, pairs), (2, 1));
        assert_eq!(
            c.k0_class().unwrap(),
            c.k0_class_via_decomposition().unwrap()
        );
    }

    #[test]
    fn nonunit_factor_reported_and_class_still_vanishes() {
        let mut c = s_pair(0, 0);
        c.differential = vec![(1, 0, 2)];
        let parts = c.decompose().unwrap();
        assert_eq!(parts, vec![Summand::Pair((0, 0), BigInt::from(2))]);
        // the classification still forces the pair class to zero
        assert!(c.k0_class().unwrap().0.is_zero());
    }

    #[test]
    fn specializations_land_in_stated_rings() {
        let c = single(3, 1).direct_sum(&single(0, 0)).direct_sum(&s_pair(1, 1));
        let class = c.k0_class().unwrap().0;
        // q = i, pi = 1: a Gaussian integer
        let g = class.at_fourth_root();
        assert_ne!(g, GaussInt::zero());
        // q = -1, pi = -1: a plain integer
        let _z: i64 = class.at_minus_one();
    }
}
