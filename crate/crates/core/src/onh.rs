//! The odd nilHecke algebra `ONH_n` as a normal-form rewriting system, with
//! its square-zero differential and integral homology.
//!
//! Defining relations on generators `x_1..x_n` (degree 2) and `phi_1..phi_{n-1}`
//! (degree -2):
//!
//! ```text
//!   phi_i^2 = 0                      phi_i phi_{i+1} phi_i = phi_{i+1} phi_i phi_{i+1}
//!   x_i phi_i + phi_i x_{i+1} = 1    phi_i x_i + x_{i+1} phi_i = 1
//!   x_i x_j + x_j x_i = 0 (i != j)   phi_i phi_j + phi_j phi_i = 0 (|i-j| > 1)
//!   x_i phi_j + phi_j x_i = 0 (i != j, j+1)
//! ```
//!
//! Normal form: `x_1^{a_1} ... x_n^{a_n} phi_w` with `phi_w` the
//! lexicographically minimal reduced word for `w`. Both generators are odd,
//! so a monomial has bidegree `(2 sum(a) - 2 len(w), (sum(a) + len(w)) mod 2)`.

use num::{BigInt, One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::ParseError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum OLetter {
    /// Dot on strand `i` (1-based).
    X(u8),
    /// Crossing of strands `i, i+1` (1-based).
    Phi(u8),
}

impl OLetter {
    fn valid(&self, n: u8) -> bool {
        match *self {
            OLetter::X(i) => 1 <= i && i <= n,
            OLetter::Phi(i) => n >= 2 && 1 <= i && i <= n - 1,
        }
    }
}

/// A word in the generators of `ONH_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ONHWord {
    pub n: u8,
    pub letters: Vec<OLetter>,
}

impl ONHWord {
    pub fn new(n: u8, letters: Vec<OLetter>) -> Result<Self, ParseError> {
        for (k, l) in letters.iter().enumerate() {
            if !l.valid(n) {
                return Err(ParseError::at(k, format!("letter out of range for n={n}")));
            }
        }
        Ok(Self { n, letters })
    }
}

/// Normal-form monomial: dot exponents and the lex-min reduced crossing word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ONHMono {
    pub dots: Vec<u32>,
    pub word: Vec<u8>,
}

impl ONHMono {
    pub fn one(n: u8) -> Self {
        Self {
            dots: vec![0; n as usize],
            word: vec![],
        }
    }

    pub fn bidegree(&self) -> (i64, u8) {
        let d: i64 = self.dots.iter().map(|&a| a as i64).sum();
        let l = self.word.len() as i64;
        (2 * d - 2 * l, ((d + l) % 2) as u8)
    }

    fn letters(&self) -> Vec<OLetter> {
        let mut out = Vec::new();
        for (i, &a) in self.dots.iter().enumerate() {
            out.extend(std::iter::repeat(OLetter::X(i as u8 + 1)).take(a as usize));
        }
        out.extend(self.word.iter().map(|&i| OLetter::Phi(i)));
        out
    }
}

impl fmt::Display for ONHMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.dots.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, a)),
            }
        }
        for &i in &self.word {
            parts.push(format!("p{i}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Element of `ONH_n` on the normal-form basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ONHElt {
    pub n: u8,
    pub terms: BTreeMap<ONHMono, i64>,
}

impl ONHElt {
    pub fn zero(n: u8) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u8) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ONHMono::one(n), 1);
        Self { n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: ONHMono, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.insert(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Product (concatenate and normalize); strand counts must agree.
    pub fn mul(&self, o: &Self) -> Result<Self, OnhError> {
        if self.n != o.n {
            return Err(OnhError::StrandMismatch(self.n, o.n));
        }
        let mut out = Self::zero(self.n);
        for (mx, &cx) in &self.terms {
            for (my, &cy) in &o.terms {
                let mut letters = mx.letters();
                letters.extend(my.letters());
                let norm = normalize_letters(self.n, &letters);
                for (m, c) in norm.terms {
                    out.insert(m, c * cx * cy);
                }
            }
        }
        Ok(out)
    }

    /// The differential `d(x_i) = alpha x_i^2`, `d(phi_i) = alpha`, extended
    /// by the super Leibniz rule (every generator is odd).
    pub fn differential(&self, alpha: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (m, &c) in &self.terms {
            let letters = m.letters();
            for k in 0..letters.len() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let mut child = Vec::with_capacity(letters.len() + 1);
                child.extend_from_slice(&letters[..k]);
                match letters[k] {
                    OLetter::X(i) => {
                        child.push(OLetter::X(i));
                        child.push(OLetter::X(i));
                    }
                    OLetter::Phi(_) => {}
                }
                child.extend_from_slice(&letters[k + 1..]);
                let norm = normalize_letters(self.n, &child);
                for (mm, cc) in norm.terms {
                    out.insert(mm, cc * c * sign * alpha);
                }
            }
        }
        out
    }

    /// Bidegree if homogeneous.
    pub fn bidegree(&self) -> Option<(i64, u8)> {
        let mut it = self.terms.keys();
        let first = it.next()?.bidegree();
        for m in it {
            if m.bidegree() != first {
                return None;
            }
        }
        Some(first)
    }
}

impl fmt::Display for ONHElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in &self.terms {
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
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum OnhError {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(u8, u8),
}

/// Normalize a word to the `x^a phi_w` basis.
pub fn normalize(w: &ONHWord) -> ONHElt {
    normalize_letters(w.n, &w.letters)
}

fn normalize_letters(n: u8, letters: &[OLetter]) -> ONHElt {
    let mut out = ONHElt::zero(n);
    let mut queue: Vec<(i64, Vec<OLetter>)> = vec![(1, letters.to_vec())];
    while let Some((coeff, word)) = queue.pop() {
        // leftmost phi directly followed by an x
        let pos = word
            .windows(2)
            .position(|w| matches!((w[0], w[1]), (OLetter::Phi(_), OLetter::X(_))));
        match pos {
            Some(k) => {
                let (i, j) = match (word[k], word[k + 1]) {
                    (OLetter::Phi(i), OLetter::X(j)) => (i, j),
                    _ => unreachable!(),
                };
                if j == i {
                    // phi_i x_i = 1 - x_{i+1} phi_i
                    let mut dropped = word.clone();
                    dropped.drain(k..=k + 1);
                    queue.push((coeff, dropped));
                    let mut swapped = word.clone();
                    swapped[k] = OLetter::X(i + 1);
                    swapped[k + 1] = OLetter::Phi(i);
                    queue.push((-coeff, swapped));
                } else if j == i + 1 {
                    // phi_i x_{i+1} = 1 - x_i phi_i
                    let mut dropped = word.clone();
                    dropped.drain(k..=k + 1);
                    queue.push((coeff, dropped));
                    let mut swapped = word.clone();
                    swapped[k] = OLetter::X(i);
                    swapped[k + 1] = OLetter::Phi(i);
                    queue.push((-coeff, swapped));
                } else {
                    // disjoint: anticommute
                    let mut swapped = word;
                    swapped.swap(k, k + 1);
                    queue.push((-coeff, swapped));
                }
            }
            None => {
                // word is x-block then phi-block
                let split = word
                    .iter()
                    .position(|l| matches!(l, OLetter::Phi(_)))
                    .unwrap_or(word.len());
                let (xs, phis) = word.split_at(split);
                let mut xv: Vec<u8> = xs
                    .iter()
                    .map(|l| match l {
                        OLetter::X(i) => *i,
                        _ => unreachable!(),
                    })
                    .collect();
                // sort dots by strand index, anticommuting distinct strands
                let mut sign = 1i64;
                for i in 1..xv.len() {
                    let mut j = i;
                    while j > 0 && xv[j - 1] > xv[j] {
                        xv.swap(j - 1, j);
                        sign = -sign;
                        j -= 1;
                    }
                }
                let mut dots = vec![0u32; n as usize];
                for i in xv {
                    dots[(i - 1) as usize] += 1;
                }
                let phiv: Vec<u8> = phis
                    .iter()
                    .map(|l| match l {
                        OLetter::Phi(i) => *i,
                        _ => unreachable!(),
                    })
                    .collect();
                match phi_canonical(&phiv) {
                    None => {} // non-reduced crossing word: zero
                    Some((s, canon)) => {
                        out.insert(ONHMono { dots, word: canon }, coeff * sign * s);
                    }
                }
            }
        }
    }
    out
}

/// Canonicalize a crossing word: `None` if the element is zero (word not
/// reduced), else the sign relating it to the lex-min reduced word.
///
/// Moves: braid (sign-free), far commutation (sign -1), adjacent repeat
/// (zero). Explored by breadth-first closure; words here are tiny.
fn phi_canonical(word: &[u8]) -> Option<(i64, Vec<u8>)> {
    if word.is_empty() {
        return Some((1, vec![]));
    }
    let mut seen: HashMap<Vec<u8>, i64> = HashMap::new();
    seen.insert(word.to_vec(), 1);
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        let s = seen[&w];
        for k in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[k], w[k + 1]);
            if a == b {
                return None;
            }
            if a.abs_diff(b) >= 2 {
                let mut v = w.clone();
                v.swap(k, k + 1);
                push_state(&mut seen, &mut queue, v, -s);
            }
        }
        for k in 0..w.len().saturating_sub(2) {
            let (a, b, c) = (w[k], w[k + 1], w[k + 2]);
            if a == c && a.abs_diff(b) == 1 {
                let mut v = w.clone();
                v[k] = b;
                v[k + 1] = a;
                v[k + 2] = b;
                push_state(&mut seen, &mut queue, v, s);
            }
        }
    }
    let min = seen.keys().min().cloned().unwrap();
    let sign = seen[&min];
    Some((sign, min))
}

fn push_state(
    seen: &mut HashMap<Vec<u8>, i64>,
    queue: &mut VecDeque<Vec<u8>>,
    w: Vec<u8>,
    s: i64,
) {
    match seen.get(&w) {
        Some(&prev) => {
            assert_eq!(prev, s, "inconsistent sign for crossing word {w:?}");
        }
        None => {
            seen.insert(w.clone(), s);
            queue.push_back(w);
        }
    }
}

// ---------------------------------------------------------------------------
// basis enumeration, graded rank, homology
// ---------------------------------------------------------------------------

/// Lex-min reduced words for every element of `S_n`.
pub fn perm_words(n: u8) -> Vec<Vec<u8>> {
    let id: Vec<u8> = (0..n).collect();
    let mut out: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    out.insert(id.clone(), vec![]);
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        let w = out[&p].clone();
        for i in 0..n.saturating_sub(1) {
            let mut p2 = p.clone();
            p2.swap(i as usize, i as usize + 1);
            if !out.contains_key(&p2) {
                let mut w2 = w.clone();
                w2.push(i + 1);
                let (_, canon) = phi_canonical(&w2).expect("reduced by construction");
                out.insert(p2.clone(), canon);
                queue.push_back(p2);
            }
        }
    }
    let mut words: Vec<Vec<u8>> = out.into_values().collect();
    words.sort();
    words
}

/// Normal-form monomials of one exact bidegree.
pub fn basis_of_bidegree(n: u8, degree: i64, parity: u8) -> Vec<ONHMono> {
    let mut out = Vec::new();
    for word in perm_words(n) {
        let l = word.len() as i64;
        let total2 = degree + 2 * l; // = 2 * sum(dots)
        if total2 < 0 || total2 % 2 != 0 {
            continue;
        }
        let total = (total2 / 2) as u32;
        if ((total as i64 + l) % 2) as u8 != parity {
            continue;
        }
        for dots in compositions(total, n as usize) {
            out.push(ONHMono {
                dots,
                word: word.clone(),
            });
        }
    }
    out.sort();
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Free rank of each nonempty bidegree in the window.
pub fn graded_rank(n: u8, degrees: std::ops::RangeInclusive<i64>) -> BTreeMap<(i64, u8), usize> {
    let mut out = BTreeMap::new();
    for d in degrees {
        for p in 0..2u8 {
            let k = basis_of_bidegree(n, d, p).len();
            if k > 0 {
                out.insert((d, p), k);
            }
        }
    }
    out
}

/// Homology table entry: free rank and torsion invariant factors (> 1).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyEntry {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Integral homology of `(ONH_n, d_alpha)` per bidegree in the window.
///
/// The differential has bidegree (2, 1); homology at `(d, p)` uses chains at
/// `(d-2, p+1)` and `(d+2, p+1)`. Only nonzero entries are returned.
pub fn homology(
    n: u8,
    degrees: std::ops::RangeInclusive<i64>,
    alpha: i64,
) -> BTreeMap<(i64, u8), HomologyEntry> {
    let mut out = BTreeMap::new();
    for d in degrees {
        for p in 0..2u8 {
            let basis = basis_of_bidegree(n, d, p);
            if basis.is_empty() {
                continue;
            }
            let incoming =
                differential_matrix(n, &basis_of_bidegree(n, d - 2, (p + 1) % 2), &basis, alpha);
            let outgoing =
                differential_matrix(n, &basis, &basis_of_bidegree(n, d + 2, (p + 1) % 2), alpha);
            let rank_out = rank(&outgoing);
            let snf_in = smith_normal_form(&incoming);
            let rank_in = snf_in.iter().filter(|x| !x.is_zero()).count();
            let free = basis.len() - rank_out - rank_in;
            let torsion: Vec<BigInt> = snf_in
                .iter()
                .filter(|x| !x.is_zero() && !x.abs().is_one())
                .map(|x| x.abs())
                .collect();
            let entry = HomologyEntry {
                free_rank: free,
                torsion,
            };
            if entry.free_rank != 0 || !entry.torsion.is_empty() {
                out.insert((d, p), entry);
            }
        }
    }
    out
}

/// Matrix of `d_alpha` from the `src` basis to the `tgt` basis (rows = tgt).
fn differential_matrix(n: u8, src: &[ONHMono], tgt: &[ONHMono], alpha: i64) -> Vec<Vec<BigInt>> {
    let index: HashMap<&ONHMono, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = vec![vec![BigInt::zero(); src.len()]; tgt.len()];
    for (j, m) in src.iter().enumerate() {
        let mut x = ONHElt::zero(n);
        x.insert(m.clone(), 1);
        let dx = x.differential(alpha);
        for (mm, &c) in &dx.terms {
            let i = *index
                .get(mm)
                .expect("differential image outside target bidegree");
            mat[i][j] = BigInt::from(c);
        }
    }
    mat
}

/// Diagonal of the Smith normal form (integer row/column reduction).
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if !m[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        let mut dirty = true;
        while dirty {
            dirty = false;
            let p = m[top][left].clone();
            for i in top + 1..rows {
                if m[i][left].is_zero() {
                    continue;
                }
                let q = &m[i][left] / &p;
                for j in left..cols {
                    let s = &m[top][j] * &q;
                    m[i][j] = &m[i][j] - &s;
                }
                if !m[i][left].is_zero() {
                    m.swap(top, i);
                    dirty = true;
                }
            }
            let p = m[top][left].clone();
            for j in left + 1..cols {
                if m[top][j].is_zero() {
                    continue;
                }
                let q = &m[top][j] / &p;
                for i in top..rows {
                    let s = &m[i][left] * &q;
                    m[i][j] = &m[i][j] - &s;
                }
                if !m[top][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(left, j);
                    }
                    dirty = true;
                }
            }
        }
        diag.push(m[top][left].clone());
        top += 1;
        left += 1;
    }
    // enforce divisibility d1 | d2 | ...
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len().saturating_sub(1) {
            if diag[i].is_zero() {
                continue;
            }
            if (&diag[i + 1] % &diag[i]).is_zero() {
                continue;
            }
            let a = diag[i].clone();
            let b = diag[i + 1].clone();
            let g = num::integer::gcd(a.clone(), b.clone());
            let l = (&a * &b) / &g;
            diag[i] = g;
            diag[i + 1] = l;
            changed = true;
        }
    }
    diag
}

fn rank(mat: &[Vec<BigInt>]) -> usize {
    smith_normal_form(mat)
        .iter()
        .filter(|x| !x.is_zero())
        .count()
}

// ---------------------------------------------------------------------------
// confluence audit
// ---------------------------------------------------------------------------

/// One critical pair: the superposed word and whether both resolutions agree.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Vec<OLetter>,
    pub agree: bool,
}

/// Rewrite rules of the normal-form system, instantiated for `n` strands.
fn rules(n: u8) -> Vec<(Vec<OLetter>, Vec<(i64, Vec<OLetter>)>)> {
    use OLetter::{Phi, X};
    let mut out = Vec::new();
    for i in 1..n {
        out.push((vec![Phi(i), Phi(i)], vec![]));
        out.push((
            vec![Phi(i), X(i)],
            vec![(1, vec![]), (-1, vec![X(i + 1), Phi(i)])],
        ));
        out.push((
            vec![Phi(i), X(i + 1)],
            vec![(1, vec![]), (-1, vec![X(i), Phi(i)])],
        ));
        for j in 1..=n {
            if j != i && j != i + 1 {
                out.push((vec![Phi(i), X(j)], vec![(-1, vec![X(j), Phi(i)])]));
            }
        }
        for j in 1..n {
            if i >= j + 2 {
                out.push((vec![Phi(i), Phi(j)], vec![(-1, vec![Phi(j), Phi(i)])]));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i > j {
                out.push((vec![X(i), X(j)], vec![(-1, vec![X(j), X(i)])]));
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push((
            vec![Phi(i + 1), Phi(i), Phi(i + 1)],
            vec![(1, vec![Phi(i), Phi(i + 1), Phi(i)])],
        ));
    }
    out
}

/// Enumerate overlapping instantiations of rule left-hand sides up to the
/// length bound, reduce both resolutions to normal form, and compare.
pub fn confluence_report(n: u8, length_bound: usize) -> Vec<CriticalPair> {
    let rules = rules(n);
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (la, ra) in &rules {
        for (lb, rb) in &rules {
            // suffix of A overlapping prefix of B
            for k in 1..la.len().min(lb.len()) {
                if la[la.len() - k..] != lb[..k] {
                    continue;
                }
                let mut word = la.clone();
                word.extend_from_slice(&lb[k..]);
                if word.len() > length_bound || !seen.insert((word.clone(), 0usize)) {
                    continue;
                }
                let left = apply_then_normalize(n, &word, 0, la, ra);
                let right = apply_then_normalize(n, &word, la.len() - k, lb, rb);
                out.push(CriticalPair {
                    agree: left == right,
                    word,
                });
            }
            // B contained strictly inside A
            if lb.len() < la.len() {
                for s in 0..=la.len() - lb.len() {
                    if &la[s..s + lb.len()] != lb.as_slice() {
                        continue;
                    }
                    let word = la.clone();
                    if word.len() > length_bound || !seen.insert((word.clone(), s + 1)) {
                        continue;
                    }
                    let left = apply_then_normalize(n, &word, 0, la, ra);
                    let right = apply_then_normalize(n, &word, s, lb, rb);
                    out.push(CriticalPair {
                        agree: left == right,
                        word,
                    });
                }
            }
        }
    }
    out
}

fn apply_then_normalize(
    n: u8,
    word: &[OLetter],
    at: usize,
    lhs: &[OLetter],
    rhs: &[(i64, Vec<OLetter>)],
) -> ONHElt {
    let mut out = ONHElt::zero(n);
    for (c, rep) in rhs {
        let mut w = Vec::new();
        w.extend_from_slice(&word[..at]);
        w.extend_from_slice(rep);
        w.extend_from_slice(&word[at + lhs.len()..]);
        let norm = normalize_letters(n, &w);
        for (m, cc) in norm.terms {
            out.insert(m, cc * c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// word grammar: `x1 x2 p1`
// ---------------------------------------------------------------------------

/// Parse a word like `x1 x2^3 p1` over `n` strands (inferred when `n == 0`).
pub fn parse_word(s: &str, n: u8) -> Result<ONHWord, ParseError> {
    let mut letters = Vec::new();
    let mut needs = 1u8;
    for (tok_start, tok) in tokens(s) {
        let bytes = tok.as_bytes();
        let kind = bytes[0];
        if kind != b'x' && kind != b'p' {
            return Err(ParseError::at(tok_start, "expected x<i> or p<i>"));
        }
        let rest = &tok[1..];
        let (idx_str, pow_str) = match rest.split_once('^') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let idx: u8 = idx_str
            .parse()
            .map_err(|_| ParseError::at(tok_start, "bad generator index"))?;
        if idx == 0 {
            return Err(ParseError::at(tok_start, "generator indices are 1-based"));
        }
        let pow: u32 = match pow_str {
            Some(p) => p
                .parse()
                .map_err(|_| ParseError::at(tok_start, "bad exponent"))?,
            None => 1,
        };
        let letter = if kind == b'x' {
            needs = needs.max(idx);
            OLetter::X(idx)
        } else {
            needs = needs.max(idx + 1);
            OLetter::Phi(idx)
        };
        letters.extend(std::iter::repeat(letter).take(pow as usize));
    }
    let n = if n == 0 { needs } else { n };
    ONHWord::new(n, letters)
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u8, s: &str) -> ONHElt {
        normalize(&parse_word(s, n).unwrap())
    }

    #[test]
    fn defining_relations_normalize() {
        assert!(w(2, "p1 p1").is_zero());
        // phi_1 x_1 = 1 - x_2 phi_1
        let lhs = w(2, "p1 x1");
        let rhs = ONHElt::one(2).sub(&w(2, "x2 p1"));
        assert_eq!(lhs, rhs);
        assert_eq!(w(2, "x2 x1"), w(2, "x1 x2").neg());
        assert_eq!(w(3, "p2 p1 p2"), w(3, "p1 p2 p1"));
        assert_eq!(w(4, "p3 p1"), w(4, "p1 p3").neg());
        assert_eq!(w(3, "x3 p1"), w(3, "p1 x3").neg());
    }

    #[test]
    fn multiplication_examples() {
        let x1 = w(2, "x1");
        let p1 = w(2, "p1");
        assert_eq!(x1.mul(&p1).unwrap(), w(2, "x1 p1"));
        // phi_1 (x_1 phi_1) = phi_1
        let x1p1 = w(2, "x1 p1");
        assert_eq!(p1.mul(&x1p1).unwrap(), p1);
        // a product realizing the braid move lands on the lex-min key
        let p2 = w(3, "p2");
        let p1p2 = w(3, "p1 p2");
        let prod = p2.mul(&p1p2).unwrap();
        assert_eq!(prod.terms.len(), 1);
        let key = prod.terms.keys().next().unwrap();
        assert_eq!(key.word, vec![1, 2, 1]);
    }

    #[test]
    fn bidegrees() {
        let m = |s: &str, n: u8| {
            let e = w(n, s);
            assert_eq!(e.terms.len(), 1);
            e.terms.keys().next().unwrap().bidegree()
        };
        assert_eq!(m("x1", 1), (2, 1));
        assert_eq!(m("p1", 2), (-2, 1));
        assert_eq!(m("x1 p1", 2), (0, 0));
    }

    #[test]
    fn differential_basics() {
        assert_eq!(w(1, "x1").differential(1), w(1, "x1^2"));
        assert_eq!(w(2, "p1").differential(1), ONHElt::one(2));
        // d(x1 x2) = x1^2 x2 - x1 x2^2
        let d = w(2, "x1 x2").differential(1);
        assert_eq!(d, w(2, "x1^2 x2").sub(&w(2, "x1 x2^2")));
    }

    #[test]
    fn differential_squares_to_zero() {
        for n in 1..=3u8 {
            for d in -4..=10i64 {
                for p in 0..2u8 {
                    for m in basis_of_bidegree(n, d, p) {
                        let mut x = ONHElt::zero(n);
                        x.insert(m.clone(), 1);
                        let dd = x.differential(1).differential(1);
                        assert!(dd.is_zero(), "d^2 != 0 on {m} (n={n})");
                    }
                }
            }
        }
    }

    #[test]
    fn differential_bidegree_is_2_1() {
        for n in 1..=3u8 {
            for d in -4..=8i64 {
                for p in 0..2u8 {
                    for m in basis_of_bidegree(n, d, p) {
                        let mut x = ONHElt::zero(n);
                        x.insert(m.clone(), 1);
                        let dx = x.differential(1);
                        if let Some((dd, dp)) = dx.bidegree() {
                            assert_eq!((dd, dp), (d + 2, (p + 1) % 2), "on {m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn differential_kills_relations() {
        for n in [2u8, 3] {
            for i in 1..n {
                let xi = w(n, &format!("x{i}"));
                let xi1 = w(n, &format!("x{}", i + 1));
                let pi = w(n, &format!("p{i}"));
                let lhs = xi.mul(&pi).unwrap().add(&pi.mul(&xi1).unwrap());
                assert_eq!(lhs, ONHElt::one(n));
                assert!(lhs.differential(1).is_zero());
                let lhs2 = pi.mul(&xi).unwrap().add(&xi1.mul(&pi).unwrap());
                assert_eq!(lhs2, ONHElt::one(n));
                assert!(lhs2.differential(1).is_zero());
            }
        }
        let b = w(3, "p1 p2 p1").sub(&w(3, "p2 p1 p2"));
        assert!(b.is_zero());
    }

    #[test]
    fn graded_rank_examples() {
        for k in 0..5i64 {
            let r = graded_rank(1, 2 * k..=2 * k);
            assert_eq!(r.values().sum::<usize>(), 1, "n=1 degree {}", 2 * k);
        }
        let r = graded_rank(2, -2..=-2);
        assert_eq!(r.values().sum::<usize>(), 1);
        let r = graded_rank(2, 0..=0);
        assert_eq!(r.values().sum::<usize>(), 3);
    }

    #[test]
    fn homology_n1_concentrated_at_zero() {
        let h = homology(1, -2..=10, 1);
        assert_eq!(h.len(), 1);
        let e = &h[&(0, 0)];
        assert_eq!(e.free_rank, 1);
        assert!(e.torsion.is_empty());
    }

    #[test]
    fn homology_n2_acyclic() {
        let h = homology(2, -2..=10, 1);
        assert!(h.is_empty(), "ONH_2 should be acyclic, got {h:?}");
    }

    #[test]
    fn confluence_small() {
        assert!(confluence_report(1, 6).is_empty());
        for pair in confluence_report(2, 6) {
            assert!(pair.agree, "critical pair disagrees: {:?}", pair.word);
        }
        for pair in confluence_report(3, 6) {
            assert!(pair.agree, "critical pair disagrees: {:?}", pair.word);
        }
    }

    #[test]
    fn smith_normal_form_small() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
        ];
        let d = smith_normal_form(&m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }
}
