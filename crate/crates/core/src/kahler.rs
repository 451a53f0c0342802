//! Kahler cone data for `X` with Picard number 2.
//!
//! `N^1(X)` is spanned by `L1 = O_X(1)` and `L2 = pi^* h`; a class is written
//! `x L1 + y L2`. The cubic form `w(x, y) = (x L1 + y L2)^3` cuts out the
//! locus `D^3 = 0`. A repeated linear factor of `w` is found as
//! `gcd(w, w')` in a dehomogenized chart and is automatically rational.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chow::{anticanonical, Base, BundleSpec, ChowClass};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, poly_gcd, to_i64, Rational, UniPoly};
use crate::invariants::{fiber_count, invariants, picard_number, CyInvariants};

/// `w(x, y) = w30 x^3 + w21 x^2 y + w12 x y^2 + w03 y^3` in the basis
/// `(O_X(1), pi^* h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    pub w30: Rational,
    pub w21: Rational,
    pub w12: Rational,
    pub w03: Rational,
}

impl CubicForm {
    pub fn new(w30: Rational, w21: Rational, w12: Rational, w03: Rational) -> Self {
        CubicForm { w30, w21, w12, w03 }
    }

    pub fn from_ints(w30: i64, w21: i64, w12: i64, w03: i64) -> Self {
        Self::new(int(w30), int(w21), int(w12), int(w03))
    }

    /// Expand `(x L1 + y L2)^3` from the triple products of `X`.
    pub fn from_invariants(inv: &CyInvariants) -> Self {
        Self::from_ints(inv.xi_cubed, 3 * inv.xi2_h, 3 * inv.xi_h2, inv.h_cubed)
    }

    pub fn is_zero(&self) -> bool {
        [&self.w30, &self.w21, &self.w12, &self.w03]
            .iter()
            .all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.w30 * x * x * x
            + &self.w21 * x * x * y
            + &self.w12 * x * y * y
            + &self.w03 * y * y * y
    }

    /// `w(x, 1)` as a polynomial in `x`.
    pub fn chart_y1(&self) -> UniPoly {
        UniPoly::new(vec![
            self.w03.clone(),
            self.w12.clone(),
            self.w21.clone(),
            self.w30.clone(),
        ])
    }

    /// `w(1, y)` as a polynomial in `y`.
    pub fn chart_x1(&self) -> UniPoly {
        UniPoly::new(vec![
            self.w30.clone(),
            self.w21.clone(),
            self.w12.clone(),
            self.w03.clone(),
        ])
    }

    pub fn coefficients(&self) -> [String; 4] {
        [&self.w30, &self.w21, &self.w12, &self.w03].map(fmt_rational)
    }
}

impl Serialize for CubicForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            basis: [&'a str; 2],
            w30: String,
            w21: String,
            w12: String,
            w03: String,
        }
        let [w30, w21, w12, w03] = self.coefficients();
        Repr {
            basis: ["O_X(1)", "pi^*h"],
            w30,
            w21,
            w12,
            w03,
        }
        .serialize(s)
    }
}

/// The cubic form of `X`.
pub fn w_cubic(spec: &BundleSpec) -> Result<CubicForm> {
    Ok(CubicForm::from_invariants(&invariants(spec)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rationality {
    RationalDoubleLine,
    RationalFactors,
    IrrationalOrUnresolved,
}

/// Dehomogenization used to find the repeated factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `y = 1`, polynomial in `x`; misses the direction `(1, 0)`.
    Y1,
    /// `x = 1`, polynomial in `y`; misses the direction `(0, 1)`.
    X1,
}

/// A linear factor of `w`: the line through the primitive integer direction `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line {
    pub x: i64,
    pub y: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    pub verdict: Rationality,
    pub chart: Option<Chart>,
    /// Monic `gcd(w, w')` in `chart`, canonical text.
    pub gcd: Option<String>,
    pub double_line: Option<Line>,
    /// Rational linear factors found, with multiplicity.
    pub lines: Vec<Line>,
}

fn direction(x: &Rational, y: &Rational) -> Option<(i64, i64)> {
    // clear denominators, divide by the gcd, fix the sign
    let lcm = num_integer::lcm(x.denom().clone(), y.denom().clone());
    let xi: BigInt = (x * Rational::from_integer(lcm.clone())).to_integer();
    let yi: BigInt = (y * Rational::from_integer(lcm)).to_integer();
    let g = num_integer::gcd(xi.clone(), yi.clone());
    if g.is_zero() {
        return None;
    }
    let (mut xi, mut yi) = (xi / &g, yi / &g);
    if xi.is_negative() || (xi.is_zero() && yi.is_negative()) {
        xi = -xi;
        yi = -yi;
    }
    Some((xi.to_i64()?, yi.to_i64()?))
}

/// Root of the monic `(x - a)` or `(x - a)^2`.
fn repeated_root(g: &UniPoly) -> Rational {
    match g.degree() {
        Some(1) => -g.coeff(0),
        Some(2) => -g.coeff(1) / int(2),
        _ => unreachable!("gcd of a cubic with its derivative has degree 1 or 2"),
    }
}

/// All linear factors of `w` read from the `y = 1` chart plus the point at
/// infinity. `None` if some factor is irrational or could not be resolved.
fn rational_lines(w: &CubicForm) -> Option<Vec<Line>> {
    let f = w.chart_y1();
    let deg = f.degree().unwrap_or(0);
    let mut lines = Vec::new();
    let mut found = 0;
    if deg < 3 {
        lines.push(Line {
            x: 1,
            y: 0,
            multiplicity: 3 - deg,
        });
        found += 3 - deg;
    }
    for root in f.rational_roots()? {
        let multiplicity = f.root_multiplicity(&root);
        let (x, y) = direction(&root, &Rational::one())?;
        lines.push(Line { x, y, multiplicity });
        found += multiplicity;
    }
    (found == 3).then_some(lines)
}

/// Decide whether `w` splits into rational lines, preferring the repeated
/// factor route.
pub fn rationality_analysis(w: &CubicForm) -> Result<RationalityReport> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    for chart in [Chart::Y1, Chart::X1] {
        let f = match chart {
            Chart::Y1 => w.chart_y1(),
            Chart::X1 => w.chart_x1(),
        };
        let g = poly_gcd(&f, &f.derivative())?;
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let a = repeated_root(&g);
        let (x, y) = match chart {
            Chart::Y1 => direction(&a, &Rational::one()),
            Chart::X1 => direction(&Rational::one(), &a),
        }
        .expect("repeated root direction fits in i64");
        let double_line = Line {
            x,
            y,
            multiplicity: g.degree().unwrap_or(0) + 1,
        };
        let lines = rational_lines(w).expect("a cubic with a rational double root splits over Q");
        return Ok(RationalityReport {
            verdict: Rationality::RationalDoubleLine,
            chart: Some(chart),
            gcd: Some(g.to_string()),
            double_line: Some(double_line),
            lines,
        });
    }
    let (verdict, lines) = match rational_lines(w) {
        Some(lines) => (Rationality::RationalFactors, lines),
        None => (Rationality::IrrationalOrUnresolved, Vec::new()),
    };
    Ok(RationalityReport {
        verdict,
        chart: None,
        gcd: None,
        double_line: None,
        lines,
    })
}

/// `8 gamma + 224 + 44 k`, the value of `(-K_Z|X + k pi^* h) . c2(X)`, as a
/// polynomial in `k`, compared coefficientwise against `56 + 44 k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C2LinearBound {
    pub constant: i64,
    pub slope: i64,
    pub floor_constant: i64,
    pub floor_slope: i64,
    pub dominates_floor: bool,
}

impl C2LinearBound {
    fn new(constant: i64, slope: i64) -> Self {
        let (floor_constant, floor_slope) = (56, 44);
        C2LinearBound {
            constant,
            slope,
            floor_constant,
            floor_slope,
            dominates_floor: constant >= floor_constant
                && slope >= floor_slope
                && floor_constant > 0
                && floor_slope >= 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KahlerReport {
    pub cubic: CubicForm,
    pub rationality: RationalityReport,
    /// Boundary rays `pi^* h = (0, 1)` and `O_X(1) = (1, 0)`.
    pub rays: [[i64; 2]; 2],
    /// `D . c2(X)` for each ray, same order.
    pub c2_values: [i64; 2],
    pub c2_bound: Option<C2LinearBound>,
    pub degeneracy_det: Option<i64>,
    pub basis_det: i64,
}

/// Kahler cone boundary for a normalized split bundle with Picard number 2.
///
/// The cone is the restriction of the nef cone of `Z`, whose rays for a
/// normalized split bundle are `H` and `xi`.
pub fn boundary_rays(spec: &BundleSpec) -> Result<KahlerReport> {
    let rho = picard_number(spec)?;
    if rho.value != 2 {
        let reason = match spec.base() {
            Base::P1 => format!("c1 = {} > 3", spec.c1()),
            Base::P3 => "E = O + O(4) has gamma = 16".to_string(),
        };
        return Err(Error::PicardNotTwo {
            picard: rho.value,
            reason,
        });
    }
    let inv = invariants(spec)?;
    let c2_values = [inv.h_dot_c2, inv.xi_dot_c2];
    for (ray, v) in ["pi^*h", "O_X(1)"].into_iter().zip(c2_values) {
        if v <= 0 {
            return Err(Error::NotPositive {
                quantity: format!("{ray} . c2(X)"),
                value: v,
            });
        }
    }
    let cubic = CubicForm::from_invariants(&inv);
    let rationality = rationality_analysis(&cubic)?;
    let (c2_bound, degeneracy_det) = match spec.base() {
        Base::P3 => (
            Some(C2LinearBound::new(inv.mk_dot_c2, inv.h_dot_c2)),
            Some(degeneracy_determinant(spec)?),
        ),
        Base::P1 => (None, None),
    };
    Ok(KahlerReport {
        cubic,
        rationality,
        rays: [[0, 1], [1, 0]],
        c2_values,
        c2_bound,
        degeneracy_det,
        basis_det: h4_basis_determinant(spec)?,
    })
}

/// Linear conditions `-K_Z . G . H = 0`, `-K_Z . G . xi = 0` on a surface
/// class `G = a xi H + b H^2`, as a matrix in `(a, b)`; entries come from the
/// Chow ring.
pub fn degeneracy_matrix(spec: &BundleSpec) -> Result<[[Rational; 2]; 2]> {
    spec.require_base(Base::P3, "degeneracy_determinant")?;
    let mk = anticanonical(spec);
    let xi = ChowClass::xi(spec);
    let h = ChowClass::h(spec);
    let v1 = &xi * &h;
    let v2 = &h * &h;
    let entry = |g: &ChowClass, d: &ChowClass| (&(&mk * g) * d).integrate();
    Ok([
        [entry(&v1, &h), entry(&v2, &h)],
        [entry(&v1, &xi), entry(&v2, &xi)],
    ])
}

fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn det_to_i64(d: Rational, what: &str) -> Result<i64> {
    to_i64(&d).ok_or_else(|| Error::NotIntegral {
        quantity: what.to_string(),
        value: fmt_rational(&d),
    })
}

/// Vanishes exactly when `gamma = 16`.
pub fn degeneracy_determinant(spec: &BundleSpec) -> Result<i64> {
    det_to_i64(det2(&degeneracy_matrix(spec)?), "degeneracy determinant")
}

/// Gram matrix of the basis `(H^2, xi H)` of `H^4(Z)` over `P^3`, or
/// `(xi H, xi^2)` over `P^1`.
pub fn h4_gram(spec: &BundleSpec) -> [[Rational; 2]; 2] {
    let xi = ChowClass::xi(spec);
    let h = ChowClass::h(spec);
    let basis = match spec.base() {
        Base::P3 => [&h * &h, &xi * &h],
        Base::P1 => [&xi * &h, &xi * &xi],
    };
    let dot = |a: &ChowClass, b: &ChowClass| (a * b).integrate();
    [
        [dot(&basis[0], &basis[0]), dot(&basis[0], &basis[1])],
        [dot(&basis[1], &basis[0]), dot(&basis[1], &basis[1])],
    ]
}

/// Determinant of [`h4_gram`]; `-1` means the basis is unimodular.
pub fn h4_basis_determinant(spec: &BundleSpec) -> Result<i64> {
    det_to_i64(det2(&h4_gram(spec)), "H^4 Gram determinant")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContractionKind {
    #[serde(rename = "DivisorToSurface_P1xPk")]
    DivisorToSurfaceP1xPk,
    RuledOverPoints,
    RuledOverQuartic,
    #[serde(rename = "SixteenCurves_QuinticImage")]
    SixteenCurvesQuinticImage,
    SixtyFourCurves,
    ExcludedByTheorem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractionExtra {
    #[serde(rename = "K_Y_squared", skip_serializing_if = "Option::is_none")]
    pub k_y_squared: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
}

/// The second contraction `X -> X'` for `E` of rank 4 over `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub c1: i64,
    /// Rank of the maximal trivial subbundle (number of degree-0 summands).
    pub rk_trivial: usize,
    pub kind: ContractionKind,
    pub exceptional_locus: String,
    pub counts: Option<i64>,
    pub extra: ContractionExtra,
}

/// Class of `P(F)` in `Z`, `F` the maximal trivial quotient: the product of
/// `xi - a H` over the positive degrees `a`.
fn trivial_part_class(spec: &BundleSpec, degrees: &[i64]) -> ChowClass {
    degrees
        .iter()
        .filter(|&&a| a > 0)
        .fold(ChowClass::one(spec), |acc, &a| {
            &acc * &ChowClass::divisor(spec, 1, -a)
        })
}

pub fn classify_contraction_p1(spec: &BundleSpec) -> Result<ContractionReport> {
    spec.require_base(Base::P1, "classify_contraction_p1")?;
    let degrees = spec.require_split("classify_contraction_p1")?.to_vec();
    let c1 = spec.c1();
    if c1 > 3 {
        return Err(Error::PicardNotTwo {
            picard: picard_number(spec)?.value,
            reason: format!("c1 = {c1} > 3"),
        });
    }
    let rk = degrees.iter().filter(|&&a| a == 0).count();
    let mk = anticanonical(spec);
    let h = ChowClass::h(spec);
    let xi = ChowClass::xi(spec);
    let pf = trivial_part_class(spec, &degrees);
    let mut extra = ContractionExtra::default();
    let (kind, locus, counts) = match (c1, rk) {
        (3, 3) => (
            ContractionKind::ExcludedByTheorem,
            "excluded: the trivial part has rank at most 2 when c1 = 3".to_string(),
            None,
        ),
        (3, _) => (
            ContractionKind::DivisorToSurfaceP1xPk,
            format!("E = P(F) = P^1 x P^{}", rk - 1),
            None,
        ),
        (2, 2) => {
            let n = to_i64(&(&(&mk * &pf) * &h).integrate()).expect("integral count");
            (
                ContractionKind::RuledOverPoints,
                format!("E = P^1 x Y, Y = {n} points"),
                Some(n),
            )
        }
        (2, _) => {
            let d = to_i64(&(&(&(&mk * &pf) * &h) * &xi).integrate()).expect("integral degree");
            extra.quartic_degree = Some(d);
            (
                ContractionKind::RuledOverQuartic,
                "E = P^1 x Y, Y a smooth plane quartic".to_string(),
                None,
            )
        }
        (1, _) => {
            let ky2 = verify_ky_squared(spec)?;
            extra.k_y_squared = Some(ky2);
            extra.image =
                Some("quintic in P^4 with 16 double points on a linearly embedded P^2".to_string());
            let k = 9 - ky2;
            (
                ContractionKind::SixteenCurvesQuinticImage,
                format!("E = union of {k} disjoint P^1"),
                Some(k),
            )
        }
        _ => {
            // Z = P^1 x P^3 seen from the other side: whole fibres over P^3
            let product = BundleSpec::split(Base::P3, &[0, 0])?;
            let n = fiber_count(&product)?.value;
            (
                ContractionKind::SixtyFourCurves,
                format!("E = union of {n} disjoint P^1"),
                Some(n),
            )
        }
    };
    Ok(ContractionReport {
        c1,
        rk_trivial: rk,
        kind,
        exceptional_locus: locus,
        counts,
        extra,
    })
}

/// `K_Y^2 = (-K_Z) . E'^3` with `E' = xi - H` the exceptional divisor of
/// `Z -> P^4`, for `E = O + O + O + O(1)`.
pub fn verify_ky_squared(spec: &BundleSpec) -> Result<i64> {
    spec.require_base(Base::P1, "verify_ky_squared")?;
    if spec.split_degrees() != Some(&[0, 0, 0, 1][..]) {
        return Err(Error::WrongCase {
            op: "verify_ky_squared",
            expected: "E = O + O + O + O(1)",
        });
    }
    let e = ChowClass::divisor(spec, 1, -1);
    let v = (&anticanonical(spec) * &e.pow(3)).integrate();
    det_to_i64(v, "K_Y^2")
}
