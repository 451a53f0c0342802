//! The discriminant octic of a conic-bundle section over `P^3`.
//!
//! For `E = O(a) + O(b)` with `a <= b`, an anticanonical section of
//! `Z = P(E)` is a fibrewise quadratic form `s00 x0^2 + s01 x0 x1 + s11 x1^2`
//! with coefficients of degrees `4 - (b-a)`, `4` and `4 + (b-a)`. Its
//! discriminant `s01^2 - 4 s00 s11` is an octic surface; the common zeros of
//! the three coefficients are the points over which the whole fibre lies in `X`
//! and they are singular on the octic.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chow::{Base, BundleSpec};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, monomials_of_degree, Monomial, MultiPoly, Rational};
use crate::invariants::fiber_count;

/// Degrees `(d00, d01, d11)` for a split admissible bundle over `P^3`.
pub fn section_degrees(spec: &BundleSpec) -> Result<[u32; 3]> {
    spec.require_base(Base::P3, "discriminant")?;
    let d = spec.require_split("discriminant")?;
    let gap = d[1] - d[0];
    if gap > 4 {
        return Err(Error::Inadmissible { gap });
    }
    Ok([(4 - gap) as u32, 4, (4 + gap) as u32])
}

/// Coefficients of a section of `-K_Z`, each homogeneous of its prescribed degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSection {
    spec: BundleSpec,
    s00: MultiPoly,
    s01: MultiPoly,
    s11: MultiPoly,
}

impl QuadraticSection {
    /// The zero polynomial is accepted in any slot.
    pub fn new(spec: &BundleSpec, s00: MultiPoly, s01: MultiPoly, s11: MultiPoly) -> Result<Self> {
        let degrees = section_degrees(spec)?;
        for (which, p, d) in [
            ("s00", &s00, degrees[0]),
            ("s01", &s01, degrees[1]),
            ("s11", &s11, degrees[2]),
        ] {
            if !p.is_homogeneous_of(d) {
                return Err(Error::DegreeMismatch {
                    which,
                    expected: d,
                    found: p.homogeneous_degree(),
                });
            }
        }
        Ok(QuadraticSection {
            spec: spec.clone(),
            s00,
            s01,
            s11,
        })
    }

    pub fn spec(&self) -> &BundleSpec {
        &self.spec
    }

    pub fn s00(&self) -> &MultiPoly {
        &self.s00
    }

    pub fn s01(&self) -> &MultiPoly {
        &self.s01
    }

    pub fn s11(&self) -> &MultiPoly {
        &self.s11
    }

    pub fn degrees(&self) -> [u32; 3] {
        section_degrees(&self.spec).expect("validated on construction")
    }

    /// All three coefficients vanish identically.
    pub fn is_zero(&self) -> bool {
        self.s00.is_zero() && self.s01.is_zero() && self.s11.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticSection {
            spec: self.spec.clone(),
            s00: self.s00.scale(r),
            s01: self.s01.scale(r),
            s11: self.s11.scale(r),
        }
    }

    /// Subtract a pure power `c z_j^d` from each coefficient so that all three
    /// vanish at `point`; `j` is the first nonzero coordinate.
    pub fn vanishing_at(&self, point: &[Rational; 4]) -> Result<Self> {
        let j = point
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPoint)?;
        let kill = |p: &MultiPoly, d: u32| {
            let mut e = [0; 4];
            e[j] = d;
            let pj = (0..d).fold(Rational::one(), |acc, _| acc * &point[j]);
            p - &MultiPoly::monomial(e, p.eval(point) / pj)
        };
        let [d00, d01, d11] = self.degrees();
        Ok(QuadraticSection {
            spec: self.spec.clone(),
            s00: kill(&self.s00, d00),
            s01: kill(&self.s01, d01),
            s11: kill(&self.s11, d11),
        })
    }
}

/// A degree-8 form in `z0..z3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octic {
    poly: MultiPoly,
}

impl Octic {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if !poly.is_homogeneous_of(8) {
            return Err(Error::DegreeMismatch {
                which: "octic",
                expected: 8,
                found: poly.homogeneous_degree(),
            });
        }
        Ok(Octic { poly })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Canonical graded-lex text, one line.
    pub fn text(&self) -> String {
        self.poly.to_canonical_string()
    }
}

impl Serialize for Octic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: u32,
            num_terms: usize,
            text: String,
            coefficients: &'a MultiPoly,
        }
        Repr {
            degree: 8,
            num_terms: self.poly.num_terms(),
            text: self.text(),
            coefficients: &self.poly,
        }
        .serialize(s)
    }
}

/// `s01^2 - 4 s00 s11`.
pub fn build_discriminant(q: &QuadraticSection) -> Octic {
    let four_s00_s11 = (&q.s00 * &q.s11).scale(&int(4));
    let poly = &(&q.s01 * &q.s01) - &four_s00_s11;
    Octic::new(poly).expect("a valid section has an octic discriminant")
}

/// `Delta(r q) = r^2 Delta(q)`, compared as polynomials.
pub fn scaling_law_check(q: &QuadraticSection, r: &Rational) -> bool {
    let lhs = build_discriminant(&q.scale(r));
    let rhs = build_discriminant(q).poly.scale(&(r * r));
    lhs.poly == rhs
}

/// `2 s01 grad s01 - 4 s11 grad s00 - 4 s00 grad s11`.
pub fn gradient_by_identity(q: &QuadraticSection) -> [MultiPoly; 4] {
    let (g00, g01, g11) = (q.s00.gradient(), q.s01.gradient(), q.s11.gradient());
    [0, 1, 2, 3].map(|i| {
        let a = (&q.s01 * &g01[i]).scale(&int(2));
        let b = (&q.s11 * &g00[i]).scale(&int(4));
        let c = (&q.s00 * &g11[i]).scale(&int(4));
        &(&a - &b) - &c
    })
}

/// Number of fibres contained in `X`, by Bezout on the three coefficients,
/// checked against the Chern class count.
pub fn base_locus_expected(spec: &BundleSpec) -> Result<i64> {
    let [d00, d01, d11] = section_degrees(spec)?;
    let bezout = (d00 * d01 * d11) as i64;
    let chern = fiber_count(spec)?.value;
    if bezout != chern {
        return Err(Error::OracleMismatch {
            quantity: "base locus".to_string(),
            closed_form: chern.to_string(),
            oracle: bezout.to_string(),
        });
    }
    Ok(bezout)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVerdict {
    /// Common zero of the coefficients; value and gradient of the octic vanish.
    SingularPoint,
    /// On the octic but outside the base locus; smoothness not tested.
    OnDiscriminant,
    OffDiscriminant,
}

/// Evaluation of a section and its discriminant at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub point: [String; 4],
    pub s00: String,
    pub s01: String,
    pub s11: String,
    pub delta: String,
    pub gradient: [String; 4],
    pub in_base_locus: bool,
    pub verdict: WitnessVerdict,
    pub note: &'static str,
}

pub fn singularity_witness(q: &QuadraticSection, point: &[Rational; 4]) -> Result<WitnessRecord> {
    if point.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let delta = build_discriminant(q);
    let vals = [&q.s00, &q.s01, &q.s11].map(|p| p.eval(point));
    let d = delta.poly.eval(point);
    let grad = delta.poly.gradient().map(|g| g.eval(point));
    let in_base_locus = vals.iter().all(Zero::is_zero);
    let flat = d.is_zero() && grad.iter().all(Zero::is_zero);
    let (verdict, note) = if in_base_locus {
        if !flat {
            return Err(Error::OracleMismatch {
                quantity: "discriminant at a base point".to_string(),
                closed_form: "value and gradient zero".to_string(),
                oracle: fmt_rational(&d),
            });
        }
        (WitnessVerdict::SingularPoint, "base point, singular on V")
    } else if d.is_zero() {
        (
            WitnessVerdict::OnDiscriminant,
            "on V, smooth-point test not performed",
        )
    } else {
        (WitnessVerdict::OffDiscriminant, "not on V")
    };
    let [s00, s01, s11] = vals.each_ref().map(fmt_rational);
    Ok(WitnessRecord {
        point: point.each_ref().map(fmt_rational),
        s00,
        s01,
        s11,
        delta: fmt_rational(&d),
        gradient: grad.each_ref().map(fmt_rational),
        in_base_locus,
        verdict,
        note,
    })
}

/// 64-bit linear congruential generator (Knuth's MMIX constants).
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform-ish in `0..n` from the high 32 bits; the low bits of an LCG are weak.
    pub fn below(&mut self, n: u64) -> u64 {
        (self.next_u64() >> 32) % n
    }
}

fn random_form(rng: &mut Lcg, d: u32, bound: u64) -> MultiPoly {
    MultiPoly::from_terms(monomials_of_degree(d).into_iter().map(|Monomial(e)| {
        let den = 1 + rng.below(4);
        let span = bound * den;
        let num = rng.below(2 * span + 1) as i64 - span as i64;
        (e, Rational::new(num.into(), (den as i64).into()))
    }))
}

/// Pseudo-random section with coefficients `n/d`, `1 <= d <= 4`, in
/// `[-bound, bound]`, filled monomial by monomial in descending graded-lex
/// order for `s00`, `s01`, `s11`. `bound = 0` gives the zero section.
pub fn sample_section(spec: &BundleSpec, seed: u64, bound: u64) -> Result<QuadraticSection> {
    let [d00, d01, d11] = section_degrees(spec)?;
    let mut rng = Lcg::new(seed);
    let s00 = random_form(&mut rng, d00, bound);
    let s01 = random_form(&mut rng, d01, bound);
    let s11 = random_form(&mut rng, d11, bound);
    QuadraticSection::new(spec, s00, s01, s11)
}
