//! Derivations of bidegree (2,1): coefficient families and the Leibniz-rule
//! action on paths.
//!
//! The general derivation is determined by its values on the generating
//! 2-morphisms; per-weight coefficient families follow the classification
//! ansatz. The square-zero differential `d_alpha` is the one-parameter
//! specialization used everywhere downstream.

use super::engine::{expansion, reduce_into, DiagError, Morph};
use super::{Gen, Path, Slice};
use crate::mpoly::{MPoly, Scalar};

/// Coefficients of a general bidegree-(2,1) derivation, per local weight.
pub trait DerivationCoeffs<S: Scalar> {
    fn alpha1(&self, r: i64) -> S;
    fn alpha2(&self, r: i64) -> S;
    fn alpha3(&self, r: i64) -> S;
    fn beta1(&self, r: i64) -> S;
    fn beta2(&self, r: i64) -> S;
    fn beta3(&self, r: i64) -> S;
    fn beta4(&self, r: i64) -> S;
    /// Coefficient families on the four arc generators.
    fn a(&self, r: i64) -> S;
    fn b(&self, r: i64) -> S;
    fn c(&self, r: i64) -> S;
    fn d(&self, r: i64) -> S;
    fn abar(&self, r: i64) -> S;
    fn bbar(&self, r: i64) -> S;
    fn cbar(&self, r: i64) -> S;
    fn dbar(&self, r: i64) -> S;
}

/// The square-zero differential with parameter `alpha`.
#[derive(Clone, Copy, Debug)]
pub struct ConcreteAlpha(pub i64);

impl DerivationCoeffs<i64> for ConcreteAlpha {
    fn alpha1(&self, _r: i64) -> i64 {
        self.0
    }
    fn alpha2(&self, _r: i64) -> i64 {
        0
    }
    fn alpha3(&self, _r: i64) -> i64 {
        0
    }
    fn beta1(&self, _r: i64) -> i64 {
        self.0
    }
    fn beta2(&self, _r: i64) -> i64 {
        0
    }
    fn beta3(&self, _r: i64) -> i64 {
        0
    }
    fn beta4(&self, _r: i64) -> i64 {
        0
    }
    fn a(&self, r: i64) -> i64 {
        if r.rem_euclid(2) == 0 {
            -self.0
        } else {
            0
        }
    }
    fn b(&self, _r: i64) -> i64 {
        0
    }
    fn c(&self, r: i64) -> i64 {
        if r.rem_euclid(2) == 0 {
            self.0
        } else {
            -self.0
        }
    }
    fn d(&self, _r: i64) -> i64 {
        self.0
    }
    fn abar(&self, r: i64) -> i64 {
        -self.a(r)
    }
    fn bbar(&self, r: i64) -> i64 {
        -self.b(r)
    }
    fn cbar(&self, r: i64) -> i64 {
        if r.rem_euclid(2) == 0 {
            self.c(r)
        } else {
            -self.c(r)
        }
    }
    fn dbar(&self, r: i64) -> i64 {
        -self.d(r)
    }
}

/// Symbol kinds for the fully symbolic classification run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sym {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    B4,
    CoefA,
    CoefB,
    CoefC,
    CoefD,
    CoefAbar,
    CoefBbar,
    CoefCbar,
    CoefDbar,
}

const SYMS: [Sym; 15] = [
    Sym::A1,
    Sym::A2,
    Sym::A3,
    Sym::B1,
    Sym::B2,
    Sym::B3,
    Sym::B4,
    Sym::CoefA,
    Sym::CoefB,
    Sym::CoefC,
    Sym::CoefD,
    Sym::CoefAbar,
    Sym::CoefBbar,
    Sym::CoefCbar,
    Sym::CoefDbar,
];

impl Sym {
    fn index(self) -> u32 {
        SYMS.iter().position(|&s| s == self).unwrap() as u32
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::A1 => "alpha1",
            Sym::A2 => "alpha2",
            Sym::A3 => "alpha3",
            Sym::B1 => "beta1",
            Sym::B2 => "beta2",
            Sym::B3 => "beta3",
            Sym::B4 => "beta4",
            Sym::CoefA => "a",
            Sym::CoefB => "b",
            Sym::CoefC => "c",
            Sym::CoefD => "d",
            Sym::CoefAbar => "abar",
            Sym::CoefBbar => "bbar",
            Sym::CoefCbar => "cbar",
            Sym::CoefDbar => "dbar",
        }
    }
}

/// Fully symbolic coefficients over a weight window: one polynomial variable
/// per (symbol, weight).
#[derive(Clone, Debug)]
pub struct SymbolicSpec;

impl SymbolicSpec {
    pub fn var_id(sym: Sym, weight: i64) -> u32 {
        // weights are small; offset keeps ids positive
        sym.index() * 4096 + (weight + 1024) as u32
    }

    pub fn var(sym: Sym, weight: i64) -> MPoly {
        MPoly::var(Self::var_id(sym, weight))
    }

    pub fn var_name(id: u32) -> String {
        let sym = SYMS[(id / 4096) as usize];
        let w = id as i64 % 4096 - 1024;
        format!("{}({})", sym.name(), w)
    }
}

impl DerivationCoeffs<MPoly> for SymbolicSpec {
    fn alpha1(&self, r: i64) -> MPoly {
        Self::var(Sym::A1, r)
    }
    fn alpha2(&self, r: i64) -> MPoly {
        Self::var(Sym::A2, r)
    }
    fn alpha3(&self, r: i64) -> MPoly {
        Self::var(Sym::A3, r)
    }
    fn beta1(&self, r: i64) -> MPoly {
        Self::var(Sym::B1, r)
    }
    fn beta2(&self, r: i64) -> MPoly {
        Self::var(Sym::B2, r)
    }
    fn beta3(&self, r: i64) -> MPoly {
        Self::var(Sym::B3, r)
    }
    fn beta4(&self, r: i64) -> MPoly {
        Self::var(Sym::B4, r)
    }
    fn a(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefA, r)
    }
    fn b(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefB, r)
    }
    fn c(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefC, r)
    }
    fn d(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefD, r)
    }
    fn abar(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefAbar, r)
    }
    fn bbar(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefBbar, r)
    }
    fn cbar(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefCbar, r)
    }
    fn dbar(&self, r: i64) -> MPoly {
        Self::var(Sym::CoefDbar, r)
    }
}

/// Prepare a path for the Leibniz rule: bubbles are brought to canonical
/// orientation (fake bubbles expand through the Grassmannian recursion, which
/// also defines their image under any derivation), then every bubble becomes
/// an explicit circle and every rotated atom its defining composite.
fn prepare_paths(path: &Path) -> Result<Vec<(i64, Path)>, DiagError> {
    let mut out = Vec::new();
    let mut work = vec![(1i64, path.clone())];
    while let Some((c, p)) = work.pop() {
        let levels = p.levels().map_err(DiagError::Invalid)?;
        let mut fired = false;
        for (k, s) in p.slices.iter().enumerate() {
            let splice1 = |rep: &[Slice]| -> Path {
                let mut slices = Vec::new();
                slices.extend_from_slice(&p.slices[..k]);
                slices.extend_from_slice(rep);
                slices.extend_from_slice(&p.slices[k + 1..]);
                Path {
                    src: p.src.clone(),
                    slices,
                }
            };
            if let Gen::Bub { ccw, j } = s.gen {
                let r = levels[k].region(p.src.lambda, s.pos);
                let canonical = r >= 0;
                fired = true;
                if j < 0 {
                    // zero
                } else if j == 0 {
                    work.push((c, splice1(&[])));
                } else if j == 1 && ccw != canonical {
                    work.push((
                        c,
                        splice1(&[Slice::new(Gen::Bub { ccw: canonical, j: 1 }, s.pos)]),
                    ));
                } else if ccw != canonical {
                    if j % 2 == 1 {
                        work.push((
                            c,
                            splice1(&[
                                Slice::new(Gen::Bub { ccw, j: j - 1 }, s.pos),
                                Slice::new(Gen::Bub { ccw: canonical, j: 1 }, s.pos),
                            ]),
                        ));
                    } else {
                        let t = j / 2;
                        for kk in 1..=t {
                            work.push((
                                -c,
                                splice1(&[
                                    Slice::new(Gen::Bub { ccw: canonical, j: 2 * kk }, s.pos),
                                    Slice::new(Gen::Bub { ccw, j: j - 2 * kk }, s.pos),
                                ]),
                            ));
                        }
                    }
                } else {
                    // canonical orientation: expand into a circle
                    let raw = if ccw { j + r - 1 } else { j - r - 1 };
                    if raw < 0 {
                        return Err(DiagError::Unsupported(format!(
                            "fake bubble with canonical orientation (j={j}, region {r}) in {p}"
                        )));
                    }
                    let (cup, cap, dot_pos) = if ccw {
                        (Gen::CupCw, Gen::CapCw, s.pos)
                    } else {
                        (Gen::CupCcw, Gen::CapCcw, s.pos + 1)
                    };
                    let mut rep = vec![Slice::new(cup, s.pos)];
                    for _ in 0..raw {
                        rep.push(Slice::new(Gen::Dot, dot_pos));
                    }
                    rep.push(Slice::new(cap, s.pos));
                    work.push((c, splice1(&rep)));
                }
                break;
            }
            if let Some(rep) = expansion(s) {
                work.push((c, splice1(&rep)));
                fired = true;
                break;
            }
        }
        if !fired {
            out.push((c, p));
        }
    }
    Ok(out)
}

/// Image of one primitive slice under the derivation, at local region `r`.
fn slice_image<S: Scalar>(spec: &impl DerivationCoeffs<S>, s: &Slice, r: i64) -> Vec<(S, Vec<Slice>)> {
    let p = s.pos;
    let odd = Slice::new(Gen::Bub { ccw: true, j: 1 }, p);
    match s.gen {
        Gen::Dot => vec![
            (
                spec.alpha1(r),
                vec![Slice::new(Gen::Dot, p), Slice::new(Gen::Dot, p)],
            ),
            (
                spec.alpha2(r),
                vec![
                    Slice::new(Gen::Bub { ccw: true, j: 1 }, p + 1),
                    Slice::new(Gen::Dot, p),
                ],
            ),
            (
                spec.alpha3(r),
                vec![Slice::new(Gen::Bub { ccw: true, j: 2 }, p + 1)],
            ),
        ],
        Gen::Cross => vec![
            (spec.beta1(r), vec![]),
            (spec.beta2(r), vec![]),
            (
                spec.beta2(r).neg(),
                vec![Slice::new(Gen::Dot, p + 1), Slice::new(Gen::Cross, p)],
            ),
            (spec.beta3(r), vec![]),
            (
                spec.beta3(r).neg(),
                vec![Slice::new(Gen::Dot, p), Slice::new(Gen::Cross, p)],
            ),
            (
                spec.beta4(r),
                vec![
                    Slice::new(Gen::Bub { ccw: true, j: 1 }, p + 2),
                    Slice::new(Gen::Cross, p),
                ],
            ),
        ],
        Gen::CapCw => vec![
            (
                spec.a(r - 2),
                vec![Slice::new(Gen::Dot, p), Slice::new(Gen::CapCw, p)],
            ),
            (
                spec.b(r - 2),
                vec![Slice::new(Gen::CapCw, p), odd],
            ),
        ],
        Gen::CupCcw => vec![
            (
                spec.abar(r),
                vec![Slice::new(Gen::CupCcw, p), Slice::new(Gen::Dot, p + 1)],
            ),
            (
                spec.bbar(r),
                vec![
                    Slice::new(Gen::CupCcw, p),
                    Slice::new(Gen::Bub { ccw: true, j: 1 }, p + 1),
                ],
            ),
        ],
        Gen::CapCcw => {
            let d_term = if std::env::var("ODDSL2_D_ABOVE").is_ok() {
                vec![Slice::new(Gen::CapCcw, p), Slice::new(Gen::Bub { ccw: true, j: 1 }, p)]
            } else {
                vec![
                    Slice::new(Gen::Bub { ccw: true, j: 1 }, p + 1),
                    Slice::new(Gen::CapCcw, p),
                ]
            };
            vec![
                (
                    spec.c(r),
                    vec![Slice::new(Gen::Dot, p + 1), Slice::new(Gen::CapCcw, p)],
                ),
                (spec.d(r), d_term),
            ]
        }
        Gen::CupCw => {
            let dbar_term = if std::env::var("ODDSL2_DBAR_ABOVE").is_ok() {
                vec![Slice::new(Gen::CupCw, p), Slice::new(Gen::Bub { ccw: true, j: 1 }, p + 2)]
            } else {
                vec![
                    Slice::new(Gen::Bub { ccw: true, j: 1 }, p),
                    Slice::new(Gen::CupCw, p),
                ]
            };
            vec![
                (
                    spec.cbar(r - 2),
                    vec![Slice::new(Gen::CupCw, p), Slice::new(Gen::Dot, p)],
                ),
                (spec.dbar(r - 2), dbar_term),
            ]
        }
        _ => unreachable!("rotated atoms are expanded before differentiation"),
    }
}

/// Apply the derivation to a morphism via the super Leibniz rule.
pub fn apply_derivation<S: Scalar>(
    spec: &impl DerivationCoeffs<S>,
    m: &Morph<S>,
) -> Result<Morph<S>, DiagError> {
    let mut out = Morph::zero(m.src.clone(), m.tgt.clone());
    for (path, coeff) in &m.terms {
        apply_to_path(spec, path, coeff.clone(), &mut out)?;
    }
    Ok(out)
}

/// Apply the derivation to a single weighted path, accumulating into `out`.
pub fn apply_to_path<S: Scalar>(
    spec: &impl DerivationCoeffs<S>,
    path: &Path,
    coeff: S,
    out: &mut Morph<S>,
) -> Result<(), DiagError> {
    for (sg, p) in prepare_paths(path)? {
        apply_to_prepared(spec, &p, coeff.mul(&S::from_int(sg)), out)?;
    }
    Ok(())
}

fn apply_to_prepared<S: Scalar>(
    spec: &impl DerivationCoeffs<S>,
    p: &Path,
    coeff: S,
    out: &mut Morph<S>,
) -> Result<(), DiagError> {
    let levels = p.levels().map_err(DiagError::Invalid)?;
    // parity of everything above slice k
    let mut parities = Vec::with_capacity(p.slices.len());
    for k in 0..p.slices.len() {
        let r = p.slice_region(&levels, k);
        parities.push(p.slices[k].parity(r));
    }
    for k in 0..p.slices.len() {
        let above: u8 = parities[k + 1..].iter().fold(0, |a, b| (a + b) % 2);
        let sign = if above == 0 { 1 } else { -1 };
        let r = p.slice_region(&levels, k);
        for (c, rep) in slice_image(spec, &p.slices[k], r) {
            if c.is_zero() {
                continue;
            }
            let mut slices = Vec::new();
            slices.extend_from_slice(&p.slices[..k]);
            slices.extend_from_slice(&rep);
            slices.extend_from_slice(&p.slices[k + 1..]);
            let child = Path {
                src: p.src.clone(),
                slices,
            };
            reduce_into(out, coeff.mul(&c).mul(&S::from_int(sign)), child)?;
        }
    }
    Ok(())
}
