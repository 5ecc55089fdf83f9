//! Slice-encoded string-diagram calculus for the odd 2-category.
//!
//! A 2-morphism is a linear combination of *paths*: vertical stacks of slices,
//! each slice one generator at a horizontal position. Exchanging the heights
//! of two slices with disjoint support costs the super-interchange sign
//! `(-1)^{|a||b|}`, which the engine applies mechanically. Reduction rewrites
//! paths to a canonical spanning set (treated as a basis under the weak
//! nondegeneracy assumption, which is recorded in classification reports).
//!
//! Supported hom families: words of length at most 2 on each side, plus
//! everything those generate internally (sideways crossings, downward dots
//! and crossings, bubbles, curls). Anything else reports an explicit error
//! rather than reducing silently.

pub mod checks;
pub mod engine;
pub mod fantastic;
pub mod parse;
pub mod spec;

pub use checks::{classify_derivations, d_squared, verify_relations, ClassifyOutcome, Residual};
pub use engine::{DiagError, Morph};
pub use fantastic::{fantastic_filtration, k0_identity, FiltrationReport, K0Identity, Order};
pub use spec::{ConcreteAlpha, DerivationCoeffs, SymbolicSpec};

use crate::mpoly::Scalar;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Letter {
    E,
    F,
}

impl Letter {
    pub fn weight_step(self) -> i64 {
        match self {
            Letter::E => 2,
            Letter::F => -2,
        }
    }
}

/// A word in `{E, F}` read left to right (rightmost letter acts first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn parse(s: &str) -> Option<Word> {
        let mut v = Vec::new();
        for t in s.split_whitespace() {
            match t {
                "E" | "e" => v.push(Letter::E),
                "F" | "f" => v.push(Letter::F),
                "1" | "-" => {}
                _ => return None,
            }
        }
        Some(Word(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Net weight change `2 #E - 2 #F`.
    pub fn weight_change(&self) -> i64 {
        self.0.iter().map(|l| l.weight_step()).sum()
    }

    /// Weight of the region just left of position `k` (equivalently right of
    /// position `k-1`) when the rightmost region is `lambda`.
    pub fn region(&self, lambda: i64, k: usize) -> i64 {
        lambda + self.0[k..].iter().map(|l| l.weight_step()).sum::<i64>()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::E => "E",
                Letter::F => "F",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A 1-morphism underlying object: word with its rightmost weight.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Object {
    pub word: Word,
    pub lambda: i64,
}

impl Object {
    pub fn new(word: Word, lambda: i64) -> Self {
        Self { word, lambda }
    }

    pub fn target_weight(&self) -> i64 {
        self.lambda + self.word.weight_change()
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} 1[{}]", self.word, self.lambda)
    }
}

/// Slice generators. Caps and cups are named by the pair they consume or
/// produce when read left to right (`Ccw` touches `F E`, `Cw` touches `E F`);
/// bubble labels are degree-normalized (degree `2j`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Gen {
    /// Dot on an upward strand.
    Dot,
    /// Dot on a downward strand (canonical atom; rotation of `Dot`).
    FDot,
    /// Crossing of two upward strands.
    Cross,
    /// Crossing of two downward strands (canonical atom; rotation of `Cross`).
    FCross,
    /// Sideways crossing `E F -> F E`.
    SideEfFe,
    /// Sideways crossing `F E -> E F`.
    SideFeEf,
    /// Cap consuming `F E`.
    CapCcw,
    /// Cap consuming `E F`.
    CapCw,
    /// Cup producing `F E`.
    CupCcw,
    /// Cup producing `E F`.
    CupCw,
    /// Closed bubble with normalized label `j` (degree `2j`).
    Bub { ccw: bool, j: i64 },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Slice {
    pub gen: Gen,
    pub pos: usize,
}

impl Slice {
    pub fn new(gen: Gen, pos: usize) -> Self {
        Self { gen, pos }
    }

    /// Positions of the strands this slice touches in the word *below* it.
    pub fn support_below(&self) -> std::ops::Range<usize> {
        match self.gen {
            Gen::Dot | Gen::FDot => self.pos..self.pos + 1,
            Gen::Cross | Gen::FCross | Gen::SideEfFe | Gen::SideFeEf => self.pos..self.pos + 2,
            Gen::CapCcw | Gen::CapCw => self.pos..self.pos + 2,
            Gen::CupCcw | Gen::CupCw | Gen::Bub { .. } => self.pos..self.pos,
        }
    }

    /// Number of strands this slice adds (cups) or removes (caps).
    pub fn arity_change(&self) -> i64 {
        match self.gen {
            Gen::CupCcw | Gen::CupCw => 2,
            Gen::CapCcw | Gen::CapCw => -2,
            _ => 0,
        }
    }

    /// Z_2-parity of the generator given its local region weight `r`.
    pub fn parity(&self, r: i64) -> u8 {
        match self.gen {
            Gen::Dot | Gen::FDot | Gen::Cross | Gen::FCross | Gen::SideEfFe | Gen::SideFeEf => 1,
            Gen::CapCw | Gen::CupCcw => 0,
            Gen::CapCcw | Gen::CupCw => ((r + 1).rem_euclid(2)) as u8,
            Gen::Bub { j, .. } => (j.rem_euclid(2)) as u8,
        }
    }

    /// Quantum degree of the generator given its local region weight `r`.
    pub fn degree(&self, r: i64) -> i64 {
        match self.gen {
            Gen::Dot | Gen::FDot => 2,
            Gen::Cross | Gen::FCross => -2,
            Gen::SideEfFe | Gen::SideFeEf => 0,
            Gen::CapCcw | Gen::CupCcw => 1 + r,
            Gen::CapCw | Gen::CupCw => 1 - r,
            Gen::Bub { j, .. } => 2 * j,
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.gen {
            Gen::Dot => "updot".to_string(),
            Gen::FDot => "downdot".to_string(),
            Gen::Cross => "upcross".to_string(),
            Gen::FCross => "downcross".to_string(),
            Gen::SideEfFe => "sideef".to_string(),
            Gen::SideFeEf => "sidefe".to_string(),
            Gen::CapCcw => "capccw".to_string(),
            Gen::CapCw => "capcw".to_string(),
            Gen::CupCcw => "cupccw".to_string(),
            Gen::CupCw => "cupcw".to_string(),
            Gen::Bub { ccw, j } => {
                format!("bub{}({})", if ccw { "ccw" } else { "cw" }, j)
            }
        };
        write!(f, "{}@{}", name, self.pos + 1)
    }
}

/// A single diagram: source object plus slices, bottom to top.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Path {
    pub src: Object,
    pub slices: Vec<Slice>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("slice {0} does not fit the word at its height")]
    BadSlice(usize),
}

impl Path {
    pub fn identity(src: Object) -> Self {
        Self {
            src,
            slices: vec![],
        }
    }

    /// Words at every height: `levels()[k]` is the word below slice `k`; the
    /// last entry is the target word.
    pub fn levels(&self) -> Result<Vec<Word>, PathError> {
        let mut out = vec![self.src.word.clone()];
        for (k, s) in self.slices.iter().enumerate() {
            let w = out.last().unwrap();
            let next = apply_slice_to_word(w, s).ok_or(PathError::BadSlice(k))?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn target(&self) -> Result<Object, PathError> {
        let levels = self.levels()?;
        Ok(Object::new(levels.last().unwrap().clone(), self.src.lambda))
    }

    /// Local region weight of slice `k`: the weight just right of its support.
    pub fn slice_region(&self, levels: &[Word], k: usize) -> i64 {
        let w = &levels[k];
        let s = &self.slices[k];
        w.region(self.src.lambda, s.support_below().end)
    }

    /// Total bidegree (degree, parity) of the path.
    pub fn bidegree(&self) -> Result<(i64, u8), PathError> {
        let levels = self.levels()?;
        let mut deg = 0i64;
        let mut par = 0u8;
        for k in 0..self.slices.len() {
            let r = self.slice_region(&levels, k);
            deg += self.slices[k].degree(r);
            par = (par + self.slices[k].parity(r)) % 2;
        }
        Ok((deg, par))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slices.is_empty() {
            write!(f, "id")?;
        } else {
            let parts: Vec<String> = self.slices.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(" ; "))?;
        }
        write!(f, " | lambda={}, src={}", self.src.lambda, self.src.word)
    }
}

/// The word above a slice, if the slice fits.
pub fn apply_slice_to_word(w: &Word, s: &Slice) -> Option<Word> {
    use Letter::{E, F};
    let p = s.pos;
    let get2 = |w: &Word| -> Option<(Letter, Letter)> {
        if p + 1 < w.0.len() {
            Some((w.0[p], w.0[p + 1]))
        } else {
            None
        }
    };
    match s.gen {
        Gen::Dot => (p < w.0.len() && w.0[p] == E).then(|| w.clone()),
        Gen::FDot => (p < w.0.len() && w.0[p] == F).then(|| w.clone()),
        Gen::Cross => (get2(w) == Some((E, E))).then(|| w.clone()),
        Gen::FCross => (get2(w) == Some((F, F))).then(|| w.clone()),
        Gen::SideEfFe => (get2(w) == Some((E, F))).then(|| {
            let mut v = w.clone();
            v.0[p] = F;
            v.0[p + 1] = E;
            v
        }),
        Gen::SideFeEf => (get2(w) == Some((F, E))).then(|| {
            let mut v = w.clone();
            v.0[p] = E;
            v.0[p + 1] = F;
            v
        }),
        Gen::CapCcw => (get2(w) == Some((F, E))).then(|| {
            let mut v = w.clone();
            v.0.drain(p..=p + 1);
            v
        }),
        Gen::CapCw => (get2(w) == Some((E, F))).then(|| {
            let mut v = w.clone();
            v.0.drain(p..=p + 1);
            v
        }),
        Gen::CupCcw => (p <= w.0.len()).then(|| {
            let mut v = w.clone();
            v.0.splice(p..p, [F, E]);
            v
        }),
        Gen::CupCw => (p <= w.0.len()).then(|| {
            let mut v = w.clone();
            v.0.splice(p..p, [E, F]);
            v
        }),
        Gen::Bub { .. } => (p <= w.0.len()).then(|| w.clone()),
    }
}

/// Convenience: a one-term morphism from slices.
pub fn path<S: Scalar>(src: Object, slices: Vec<Slice>) -> Result<Morph<S>, DiagError> {
    Morph::from_path(Path { src, slices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(w: &str, l: i64) -> Object {
        Object::new(Word::parse(w).unwrap(), l)
    }

    #[test]
    fn degrees_of_generators() {
        let updot = Path {
            src: obj("E", 3),
            slices: vec![Slice::new(Gen::Dot, 0)],
        };
        assert_eq!(updot.bidegree().unwrap(), (2, 1));
        let cupccw = Path {
            src: obj("", 3),
            slices: vec![Slice::new(Gen::CupCcw, 0)],
        };
        assert_eq!(cupccw.bidegree().unwrap(), (1 + 3, 0));
        let capccw = Path {
            src: obj("F E", 3),
            slices: vec![Slice::new(Gen::CapCcw, 0)],
        };
        assert_eq!(capccw.bidegree().unwrap(), (1 + 3, 0)); // parity (3+1) mod 2 = 0
        let capcw = Path {
            src: obj("E F", 3),
            slices: vec![Slice::new(Gen::CapCw, 0)],
        };
        assert_eq!(capcw.bidegree().unwrap(), (1 - 3, 0));
        let cupcw = Path {
            src: obj("", 3),
            slices: vec![Slice::new(Gen::CupCw, 0)],
        };
        assert_eq!(cupcw.bidegree().unwrap(), (1 - 3, 0));
        let cupcw_even = Path {
            src: obj("", 2),
            slices: vec![Slice::new(Gen::CupCw, 0)],
        };
        assert_eq!(cupcw_even.bidegree().unwrap(), (1 - 2, 1));
    }

    #[test]
    fn sideways_degree_is_zero_odd() {
        let side = Path {
            src: obj("E F", 5),
            slices: vec![Slice::new(Gen::SideEfFe, 0)],
        };
        assert_eq!(side.bidegree().unwrap(), (0, 1));
        let side2 = Path {
            src: obj("F E", -4),
            slices: vec![Slice::new(Gen::SideFeEf, 0)],
        };
        assert_eq!(side2.bidegree().unwrap(), (0, 1));
    }

    #[test]
    fn regions() {
        let w = Word::parse("E F E").unwrap();
        assert_eq!(w.region(3, 3), 3);
        assert_eq!(w.region(3, 2), 5);
        assert_eq!(w.region(3, 1), 3);
        assert_eq!(w.region(3, 0), 5);
    }

    #[test]
    fn words_chain() {
        let p = Path {
            src: obj("E", 0),
            slices: vec![
                Slice::new(Gen::CupCw, 1),
                Slice::new(Gen::Cross, 0),
                Slice::new(Gen::CapCw, 1),
            ],
        };
        let levels = p.levels().unwrap();
        assert_eq!(levels[1], Word::parse("E E F").unwrap());
        assert_eq!(levels[3], Word::parse("E").unwrap());
        // right curl on an upward strand: degree 2*0 - 2*lambda = 0 at lambda=0
        assert_eq!(p.bidegree().unwrap(), (0, 0));
    }
}
