//! Numerical invariants of an anticanonical Calabi-Yau threefold `X` in `Z`.
//!
//! Every closed-form value is paired with an oracle computed in the Chow ring
//! of `Z`: the Chern classes of `X` come from `c(T_Z)` and the normal bundle
//! sequence `0 -> T_X -> T_Z|X -> O_X(-K_Z) -> 0`, and a class restricted to
//! `X` is integrated after multiplying by `-K_Z`. A disagreement is reported
//! as [`Error::OracleMismatch`], never silently resolved.

use serde::Serialize;

use crate::chow::{tangent_total_chern, Base, BundleSpec, ChernTotal, ChowClass};
use crate::cohomology::SplitBundle;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, ratio, to_i64, Rational};

/// `gamma(E) = c1^2 - 4 c2`, invariant under twisting.
pub fn gamma(spec: &BundleSpec) -> Result<i64> {
    spec.require_base(Base::P3, "gamma")?;
    Ok(spec.c1() * spec.c1() - 4 * spec.c2())
}

/// `b - a` for a split rank-2 bundle over `P^3`.
fn splitting_gap(spec: &BundleSpec) -> Option<i64> {
    spec.split_degrees().map(|d| d[1] - d[0])
}

fn require_admissible(spec: &BundleSpec) -> Result<()> {
    match splitting_gap(spec) {
        Some(gap) if gap > 4 => Err(Error::Inadmissible { gap }),
        _ => Ok(()),
    }
}

/// Chern classes of `X` as classes on `Z`, before restriction.
#[derive(Clone, Debug)]
pub struct ChernRestriction {
    /// `-K_Z`, the class of `X`.
    pub normal: ChowClass,
    pub tangent_z: ChernTotal,
    /// `c(T_Z) / (1 - K_Z)` truncated to degree 3.
    pub tangent_x: ChernTotal,
}

impl ChernRestriction {
    pub fn new(spec: &BundleSpec) -> Result<Self> {
        let tangent_z = tangent_total_chern(spec)?;
        let normal = tangent_z.component(1).clone();
        let one = ChowClass::one(spec);
        let minus_n = -&normal;
        let mut inverse = one.clone();
        let mut power = one.clone();
        for _ in 0..3 {
            power = &power * &minus_n;
            inverse = &inverse + &power;
        }
        let total = &tangent_z.total() * &inverse;
        let tangent_x = ChernTotal::from_total(&total);
        Ok(ChernRestriction {
            normal,
            tangent_z,
            tangent_x,
        })
    }

    pub fn c2(&self) -> &ChowClass {
        self.tangent_x.component(2)
    }

    pub fn c3(&self) -> &ChowClass {
        self.tangent_x.component(3)
    }

    /// `(D1 . D2 . D3)_X = D1 D2 D3 (-K_Z)` on `Z`.
    pub fn triple(&self, d1: &ChowClass, d2: &ChowClass, d3: &ChowClass) -> Rational {
        (&(&(d1 * d2) * d3) * &self.normal).integrate()
    }

    /// `D . c2(X)`
    pub fn c2_dot(&self, d: &ChowClass) -> Rational {
        (&(d * self.c2()) * &self.normal).integrate()
    }

    /// Topological Euler number `c3(X)`.
    pub fn euler_number(&self) -> Rational {
        (self.c3() * &self.normal).integrate()
    }
}

/// One closed-form value next to its oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub quantity: &'static str,
    #[serde(with = "crate::exact::serde_text")]
    pub closed_form: Rational,
    #[serde(with = "crate::exact::serde_text")]
    pub oracle: Rational,
    pub oracle_ok: bool,
}

impl FieldCheck {
    fn new(quantity: &'static str, closed_form: Rational, oracle: Rational) -> Self {
        let oracle_ok = closed_form == oracle;
        FieldCheck {
            quantity,
            closed_form,
            oracle,
            oracle_ok,
        }
    }

    fn value(&self) -> Result<i64> {
        if !self.oracle_ok {
            return Err(Error::OracleMismatch {
                quantity: self.quantity.to_string(),
                closed_form: fmt_rational(&self.closed_form),
                oracle: fmt_rational(&self.oracle),
            });
        }
        to_i64(&self.closed_form).ok_or_else(|| Error::NotIntegral {
            quantity: self.quantity.to_string(),
            value: fmt_rational(&self.closed_form),
        })
    }
}

/// Whether the Picard number formula rests on hypotheses the crate cannot test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PicardHypotheses {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "hypotheses-not-verified")]
    StabilityNotVerified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PicardNumber {
    pub value: i64,
    pub hypotheses: PicardHypotheses,
}

/// Intersection and Chern numbers of `X`, with `L1 = O_X(1)` and `L2 = pi^* h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyInvariants {
    pub base: Base,
    pub degrees: Option<Vec<i64>>,
    pub c1: i64,
    pub c2: i64,
    pub gamma: Option<i64>,
    pub c3_x: i64,
    pub h_dot_c2: i64,
    pub xi_dot_c2: i64,
    pub mk_dot_c2: i64,
    /// `(pi^* h)^3`
    pub h_cubed: i64,
    /// `O_X(1) . (pi^* h)^2`
    pub xi_h2: i64,
    /// `O_X(1)^2 . pi^* h`
    pub xi2_h: i64,
    /// `O_X(1)^3`
    pub xi_cubed: i64,
    pub fiber_count: Option<i64>,
    pub picard: Option<PicardNumber>,
    /// `(-K_Z|X)^3`
    pub mk_cubed: Option<i64>,
    /// `(-K_Z|X)^2 . pi^* h`
    pub mk_sq_h: Option<i64>,
    pub checks: Vec<FieldCheck>,
}

impl CyInvariants {
    pub fn all_oracles_ok(&self) -> bool {
        self.checks.iter().all(|c| c.oracle_ok)
    }
}

fn checked(checks: &[FieldCheck], quantity: &str) -> Result<i64> {
    checks
        .iter()
        .find(|c| c.quantity == quantity)
        .expect("every quantity is checked")
        .value()
}

/// Closed forms for `E` of rank 2 over `P^3`, all in terms of `gamma` and `c1`.
pub fn closed_forms_p3(spec: &BundleSpec) -> Result<Vec<(&'static str, Rational)>> {
    let g = int(gamma(spec)?);
    let c1 = int(spec.c1());
    let c1sq = &c1 * &c1;
    Ok(vec![
        ("c3_x", int(-8) * &g - int(168)),
        ("h_dot_c2", int(44)),
        ("xi_dot_c2", int(4) * &g + int(22) * &c1 + int(24)),
        ("mk_dot_c2", int(8) * &g + int(224)),
        ("h_cubed", int(2)),
        ("xi_h2", &c1 + int(4)),
        (
            "xi2_h",
            ratio(1, 2) * &g + ratio(1, 2) * &c1sq + int(4) * &c1,
        ),
        (
            "xi_cubed",
            &g + ratio(3, 4) * &g * &c1 + int(3) * &c1sq + ratio(1, 4) * &c1sq * &c1,
        ),
    ])
}

/// Closed forms for `E` of rank 4 over `P^1`. The `xi`/`h` triple products
/// follow from `xi^3 H = 1` and `H^2 = 0`.
pub fn closed_forms_p1(spec: &BundleSpec) -> Result<Vec<(&'static str, Rational)>> {
    spec.require_base(Base::P1, "closed_forms_p1")?;
    let c1 = int(spec.c1());
    Ok(vec![
        ("c3_x", int(-168)),
        ("h_dot_c2", int(24)),
        ("xi_dot_c2", int(6) * &c1 + int(44)),
        ("mk_dot_c2", int(224)),
        ("h_cubed", int(0)),
        ("xi_h2", int(0)),
        ("xi2_h", int(4)),
        ("xi_cubed", int(3) * &c1 + int(2)),
        ("mk_cubed", int(512)),
        ("mk_sq_h", int(64)),
    ])
}

/// Oracle values for every quantity named in the closed-form tables.
pub fn oracle_values(spec: &BundleSpec) -> Result<Vec<(&'static str, Rational)>> {
    let chern = ChernRestriction::new(spec)?;
    let xi = ChowClass::xi(spec);
    let h = ChowClass::h(spec);
    let mk = chern.normal.clone();
    let mut out = vec![
        ("c3_x", chern.euler_number()),
        ("h_dot_c2", chern.c2_dot(&h)),
        ("xi_dot_c2", chern.c2_dot(&xi)),
        ("mk_dot_c2", chern.c2_dot(&mk)),
        ("h_cubed", chern.triple(&h, &h, &h)),
        ("xi_h2", chern.triple(&xi, &h, &h)),
        ("xi2_h", chern.triple(&xi, &xi, &h)),
        ("xi_cubed", chern.triple(&xi, &xi, &xi)),
    ];
    if spec.base() == Base::P1 {
        out.push(("mk_cubed", chern.triple(&mk, &mk, &mk)));
        out.push(("mk_sq_h", chern.triple(&mk, &mk, &h)));
    }
    Ok(out)
}

fn build_checks(
    closed: Vec<(&'static str, Rational)>,
    oracle: Vec<(&'static str, Rational)>,
) -> Vec<FieldCheck> {
    closed
        .into_iter()
        .map(|(name, value)| {
            let o = oracle
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
                .expect("oracle covers every closed form");
            FieldCheck::new(name, value, o)
        })
        .collect()
}

/// Invariants of `X` for a split rank-2 bundle over `P^3`.
pub fn invariants_p3(spec: &BundleSpec) -> Result<CyInvariants> {
    spec.require_base(Base::P3, "invariants_p3")?;
    spec.require_split("invariants_p3")?;
    require_admissible(spec)?;
    let checks = build_checks(closed_forms_p3(spec)?, oracle_values(spec)?);
    let fibers = fiber_count(spec)?;
    Ok(CyInvariants {
        base: Base::P3,
        degrees: spec.split_degrees().map(<[i64]>::to_vec),
        c1: spec.c1(),
        c2: spec.c2(),
        gamma: Some(gamma(spec)?),
        c3_x: checked(&checks, "c3_x")?,
        h_dot_c2: checked(&checks, "h_dot_c2")?,
        xi_dot_c2: checked(&checks, "xi_dot_c2")?,
        mk_dot_c2: checked(&checks, "mk_dot_c2")?,
        h_cubed: checked(&checks, "h_cubed")?,
        xi_h2: checked(&checks, "xi_h2")?,
        xi2_h: checked(&checks, "xi2_h")?,
        xi_cubed: checked(&checks, "xi_cubed")?,
        fiber_count: Some(fibers.value),
        picard: Some(picard_number(spec)?),
        mk_cubed: None,
        mk_sq_h: None,
        checks,
    })
}

/// Invariants of `X` for a split rank-4 bundle over `P^1`.
pub fn invariants_p1(spec: &BundleSpec) -> Result<CyInvariants> {
    spec.require_base(Base::P1, "invariants_p1")?;
    spec.require_split("invariants_p1")?;
    let checks = build_checks(closed_forms_p1(spec)?, oracle_values(spec)?);
    Ok(CyInvariants {
        base: Base::P1,
        degrees: spec.split_degrees().map(<[i64]>::to_vec),
        c1: spec.c1(),
        c2: 0,
        gamma: None,
        c3_x: checked(&checks, "c3_x")?,
        h_dot_c2: checked(&checks, "h_dot_c2")?,
        xi_dot_c2: checked(&checks, "xi_dot_c2")?,
        mk_dot_c2: checked(&checks, "mk_dot_c2")?,
        h_cubed: checked(&checks, "h_cubed")?,
        xi_h2: checked(&checks, "xi_h2")?,
        xi2_h: checked(&checks, "xi2_h")?,
        xi_cubed: checked(&checks, "xi_cubed")?,
        fiber_count: None,
        picard: Some(picard_number(spec)?),
        mk_cubed: Some(checked(&checks, "mk_cubed")?),
        mk_sq_h: Some(checked(&checks, "mk_sq_h")?),
        checks,
    })
}

/// Dispatch on the base.
pub fn invariants(spec: &BundleSpec) -> Result<CyInvariants> {
    match spec.base() {
        Base::P3 => invariants_p3(spec),
        Base::P1 => invariants_p1(spec),
    }
}

/// Number of whole fibres of `Z -> P^3` lying in `X`, by every available route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub value: i64,
    /// `64 - 4 gamma`
    pub closed_form: i64,
    /// `c3(S^2 E (x) O(r))` at `r = 4 - c1`
    pub chern_formula: i64,
    /// `d00 * d01 * d11`, split bundles only
    pub bezout: Option<i64>,
}

/// `c3(S^2 E (x) O(r)) = 4 c2 c1 + 2r(c1^2 + 2 c2) + 3 r^2 c1 + r^3`.
pub fn sym2_twist_c3(c1: i64, c2: i64, r: i64) -> i64 {
    4 * c2 * c1 + 2 * r * (c1 * c1 + 2 * c2) + 3 * r * r * c1 + r * r * r
}

pub fn fiber_count(spec: &BundleSpec) -> Result<FiberCount> {
    spec.require_base(Base::P3, "fiber_count")?;
    require_admissible(spec)?;
    let g = gamma(spec)?;
    if g > 16 {
        return Err(Error::GammaTooLarge(g));
    }
    let closed_form = 64 - 4 * g;
    let chern_formula = sym2_twist_c3(spec.c1(), spec.c2(), 4 - spec.c1());
    let bezout = spec.split_degrees().map(|d| {
        let gap = d[1] - d[0];
        (4 - gap) * 4 * (4 + gap)
    });
    for (name, v) in [("chern_formula", Some(chern_formula)), ("bezout", bezout)] {
        if let Some(v) = v.filter(|&v| v != closed_form) {
            return Err(Error::OracleMismatch {
                quantity: format!("fiber_count/{name}"),
                closed_form: closed_form.to_string(),
                oracle: v.to_string(),
            });
        }
    }
    Ok(FiberCount {
        value: closed_form,
        closed_form,
        chern_formula,
        bezout,
    })
}

/// `chi(E)` for rank 2 over `P^3` by Riemann-Roch:
/// `gamma (c1 + 4) / 8 + c1^3 / 24 + c1^2 / 2 + 11 c1 / 6 + 2`.
pub fn euler_characteristic_rank2_p3(spec: &BundleSpec) -> Result<Rational> {
    let g = int(gamma(spec)?);
    let c1 = int(spec.c1());
    Ok(ratio(1, 8) * g * (&c1 + int(4))
        + ratio(1, 24) * &c1 * &c1 * &c1
        + ratio(1, 2) * &c1 * &c1
        + ratio(11, 6) * &c1
        + int(2))
}

/// `h^0(O(a) + O(b))` on `P^3`, i.e. `C(a+3, 3) + C(b+3, 3)` for nonnegative degrees.
pub fn h0_split(degrees: &[i64]) -> Result<u64> {
    SplitBundle::new(3, degrees)?.cohomology(0)
}

/// Picard number of `X`.
///
/// Over `P^3`: `2 + h^2(End E) - h^3(End E)`. The last term is
/// `h^0(End E (x) O(-4))` by duality and is nonzero in the admissible range
/// only for `O + O(4)`, where it lowers the count to 1. Elsewhere the formula
/// needs stability of `E`, which is not checked.
///
/// Over `P^1`: `2 + h^1(S^4 E (x) O(2 - c1))`, unconditionally.
pub fn picard_number(spec: &BundleSpec) -> Result<PicardNumber> {
    let degrees = spec.require_split("picard_number")?;
    match spec.base() {
        Base::P3 => {
            require_admissible(spec)?;
            let end = SplitBundle::new(3, degrees)?.end_bundle();
            let h2 = end.cohomology(2)? as i64;
            let h3 = end.cohomology(3)? as i64;
            let hypotheses = if h3 > 0 {
                PicardHypotheses::Verified
            } else {
                PicardHypotheses::StabilityNotVerified
            };
            Ok(PicardNumber {
                value: 2 + h2 - h3,
                hypotheses,
            })
        }
        Base::P1 => {
            let s4 = SplitBundle::new(1, degrees)?
                .sym_power(4)
                .twist(2 - spec.c1());
            Ok(PicardNumber {
                value: 2 + s4.cohomology(1)? as i64,
                hypotheses: PicardHypotheses::Verified,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// `b - a`
    pub gap: i64,
    pub gamma: i64,
    /// `(a - b)^2`, the largest `gamma` for this generic splitting type.
    pub gamma_bound: i64,
    pub attains_bound: bool,
}

/// A split `O(a) + O(b)` over `P^3` carries a smooth anticanonical threefold
/// only if `b - a <= 4`.
pub fn admissibility_p3(spec: &BundleSpec) -> Result<Admissibility> {
    spec.require_base(Base::P3, "admissibility_p3")?;
    let gap = splitting_gap(spec).ok_or(Error::NonSplit("admissibility_p3"))?;
    let g = gamma(spec)?;
    Ok(Admissibility {
        admissible: gap <= 4,
        gap,
        gamma: g,
        gamma_bound: gap * gap,
        attains_bound: g == gap * gap,
    })
}

/// `true` when the Picard number is 2 (the case with a two-ray Kahler cone).
pub fn has_picard_two(spec: &BundleSpec) -> Result<bool> {
    Ok(picard_number(spec)?.value == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(d: &[i64]) -> BundleSpec {
        BundleSpec::split(Base::P3, d).unwrap()
    }

    fn p1(d: &[i64]) -> BundleSpec {
        BundleSpec::split(Base::P1, d).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&p3(&[0, 4])).unwrap(), 16);
        assert_eq!(gamma(&p3(&[0, 0])).unwrap(), 0);
        let unnormalized = BundleSpec::from_chern(Base::P3, 2, 1).unwrap();
        assert_eq!(gamma(&unnormalized).unwrap(), 0);
        assert!(matches!(
            gamma(&p1(&[0, 0, 0, 1])),
            Err(Error::WrongCase { .. })
        ));
    }

    #[test]
    fn p3_product_bundle() {
        let inv = invariants_p3(&p3(&[0, 0])).unwrap();
        assert_eq!(inv.c3_x, -168);
        assert_eq!(inv.h_dot_c2, 44);
        assert_eq!(inv.xi_dot_c2, 24);
        assert_eq!(inv.mk_dot_c2, 224);
        assert_eq!(inv.gamma, Some(0));
        assert_eq!(inv.h_cubed, 2);
        assert!(inv.all_oracles_ok());
    }

    #[test]
    fn p3_extremal_bundle() {
        let inv = invariants_p3(&p3(&[0, 4])).unwrap();
        assert_eq!(inv.c3_x, -296);
        assert_eq!(inv.fiber_count, Some(0));
    }

    #[test]
    fn p3_gap_two() {
        // closed forms at gamma = 4, c1 = 2, confirmed by the Chow-ring oracle
        let inv = invariants_p3(&p3(&[0, 2])).unwrap();
        assert_eq!(inv.gamma, Some(4));
        assert_eq!(inv.xi_cubed, 24);
        assert_eq!(inv.xi2_h, 12);
        assert_eq!(inv.xi_h2, 6);
        assert_eq!(inv.c3_x, -200);
    }

    #[test]
    fn chern_restriction_satisfies_normal_sequence() {
        for d in [[0, 0], [0, 3], [0, 4]] {
            let spec = p3(&d);
            let ch = ChernRestriction::new(&spec).unwrap();
            let one = ChowClass::one(&spec);
            let lhs = &ch.tangent_x.total() * &(&one + &ch.normal);
            for k in 0..=3 {
                assert_eq!(lhs.degree_part(k), *ch.tangent_z.component(k));
            }
        }
    }

    #[test]
    fn p1_examples() {
        let inv = invariants_p1(&p1(&[0, 0, 0, 0])).unwrap();
        assert_eq!((inv.xi_dot_c2, inv.xi_cubed), (44, 2));
        let inv = invariants_p1(&p1(&[0, 1, 1, 1])).unwrap();
        assert_eq!(inv.xi_cubed, 11);
        for d in [[0, 0, 0, 0], [0, 2, 3, 5], [0, 0, 1, 6]] {
            let inv = invariants_p1(&p1(&d)).unwrap();
            assert_eq!(inv.mk_cubed, Some(512));
            assert_eq!(inv.mk_dot_c2, 224);
            assert_eq!(inv.c3_x, -168);
        }
    }

    #[test]
    fn fiber_count_examples() {
        assert_eq!(fiber_count(&p3(&[0, 0])).unwrap().value, 64);
        let f = fiber_count(&p3(&[0, 4])).unwrap();
        assert_eq!((f.value, f.chern_formula, f.bezout), (0, 0, Some(0)));
        let f = fiber_count(&p3(&[0, 2])).unwrap();
        assert_eq!((f.value, f.bezout), (48, Some(48)));
        assert_eq!(
            fiber_count(&p3(&[0, 5])),
            Err(Error::Inadmissible { gap: 5 })
        );
        let non_split = BundleSpec::from_chern(Base::P3, 0, -5).unwrap();
        assert_eq!(fiber_count(&non_split), Err(Error::GammaTooLarge(20)));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(
            euler_characteristic_rank2_p3(&p3(&[0, 4])).unwrap(),
            int(36)
        );
        assert_eq!(h0_split(&[0, 4]).unwrap(), 36);
        assert_eq!(euler_characteristic_rank2_p3(&p3(&[0, 0])).unwrap(), int(2));
        let e13 = BundleSpec::from_chern(Base::P3, 4, 3).unwrap();
        assert_eq!(gamma(&e13).unwrap(), 4);
        assert_eq!(euler_characteristic_rank2_p3(&e13).unwrap(), int(24));
        assert_eq!(h0_split(&[1, 3]).unwrap(), 24);
    }

    #[test]
    fn picard_examples() {
        assert_eq!(picard_number(&p1(&[0, 1, 1, 1])).unwrap().value, 2);
        // S^4 of O+O+O(2)+O(2) has five degree-0 summands; twisted by -2
        // each contributes h^1(O(-2)) = 1
        assert_eq!(picard_number(&p1(&[0, 0, 2, 2])).unwrap().value, 7);
        let rho = picard_number(&p3(&[0, 4])).unwrap();
        assert_eq!(rho.value, 1);
        assert_eq!(rho.hypotheses, PicardHypotheses::Verified);
        let rho = picard_number(&p3(&[0, 3])).unwrap();
        assert_eq!(rho.value, 2);
        assert_eq!(rho.hypotheses, PicardHypotheses::StabilityNotVerified);
        assert_eq!(
            picard_number(&BundleSpec::from_chern(Base::P3, 1, 0).unwrap()),
            Err(Error::NonSplit("picard_number"))
        );
    }

    #[test]
    fn admissibility_examples() {
        let a = admissibility_p3(&p3(&[0, 4])).unwrap();
        assert!(a.admissible && a.attains_bound);
        assert_eq!(a.gamma, 16);
        assert!(!admissibility_p3(&p3(&[0, 5])).unwrap().admissible);
        let a = admissibility_p3(&p3(&[0, 0])).unwrap();
        assert!(a.admissible);
        assert_eq!(a.gamma, 0);
    }
}
