//! Chow ring of `Z = P(E)` over `P^m`.
//!
//! With `xi = O_Z(1)` and `H` the pullback of the hyperplane class, the ring is
//! generated by `xi` and `H` subject to `H^(m+1) = 0` and the Grothendieck
//! relation
//!
//! ```text
//! xi^r - c1 H xi^(r-1) + c2 H^2 xi^(r-2) - ... = 0
//! ```
//!
//! Classes are stored in normal form: a grid of coefficients of `xi^i H^j`
//! with `i < r` and `j <= m`. Every product is reduced eagerly, so equality is
//! a grid comparison and integration is reading the coefficient of
//! `xi^(r-1) H^m`, whose degree is one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, Rational};

/// Base of the projective bundle; fixes the rank so that `Z` is a fourfold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    /// Rank 2 over `P^3`.
    P3,
    /// Rank 4 over `P^1`.
    P1,
}

impl Base {
    pub fn dim(self) -> u32 {
        match self {
            Base::P3 => 3,
            Base::P1 => 1,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Base::P3 => 2,
            Base::P1 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::P3 => "p3",
            Base::P1 => "p1",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The bundle `E` defining `Z = P(E)`.
///
/// Only Chern classes that survive on the base are kept (`c1, c2` over `P^3`,
/// `c1` over `P^1`). Split bundles are sorted and twisted so the smallest
/// degree is 0; the twist that was removed is kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct BundleSpec {
    base: Base,
    chern: Vec<i64>,
    split_degrees: Option<Vec<i64>>,
    twist: i64,
}

impl BundleSpec {
    /// Split bundle `O(d_1) + ... + O(d_r)`, normalized to minimum degree 0.
    pub fn split(base: Base, degrees: &[i64]) -> Result<Self> {
        if degrees.len() != base.rank() {
            return Err(Error::InvalidSpec(format!(
                "a bundle over {base} has rank {}, got {} degrees",
                base.rank(),
                degrees.len()
            )));
        }
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        let twist = sorted[0];
        let normalized: Vec<i64> = sorted.iter().map(|d| d - twist).collect();
        let chern = (1..=base.rank().min(base.dim() as usize))
            .map(|k| elementary_symmetric(&normalized, k))
            .collect();
        Ok(BundleSpec {
            base,
            chern,
            split_degrees: Some(normalized),
            twist,
        })
    }

    /// Bundle known only through its Chern numbers. Over `P^1` only `c1`
    /// exists and `c2` must be 0.
    pub fn from_chern(base: Base, c1: i64, c2: i64) -> Result<Self> {
        let chern = match base {
            Base::P3 => vec![c1, c2],
            Base::P1 if c2 == 0 => vec![c1],
            Base::P1 => return Err(Error::InvalidSpec("c2 vanishes on P^1".to_string())),
        };
        Ok(BundleSpec {
            base,
            chern,
            split_degrees: None,
            twist: 0,
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn base_dim(&self) -> u32 {
        self.base.dim()
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// `c_k(E) . h^k` as an integer; zero for `k` beyond the base dimension.
    pub fn chern(&self, k: usize) -> i64 {
        match k {
            0 => 1,
            _ => self.chern.get(k - 1).copied().unwrap_or(0),
        }
    }

    pub fn c1(&self) -> i64 {
        self.chern(1)
    }

    pub fn c2(&self) -> i64 {
        self.chern(2)
    }

    /// Normalized degrees, present iff the bundle is split.
    pub fn split_degrees(&self) -> Option<&[i64]> {
        self.split_degrees.as_deref()
    }

    pub fn is_split(&self) -> bool {
        self.split_degrees.is_some()
    }

    /// Degree subtracted from every summand during normalization.
    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub(crate) fn require_split(&self, op: &'static str) -> Result<&[i64]> {
        self.split_degrees().ok_or(Error::NonSplit(op))
    }

    pub(crate) fn require_base(&self, base: Base, op: &'static str) -> Result<()> {
        if self.base == base {
            Ok(())
        } else {
            Err(Error::WrongCase {
                op,
                expected: match base {
                    Base::P3 => "a rank-2 bundle over P^3",
                    Base::P1 => "a rank-4 bundle over P^1",
                },
            })
        }
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.split_degrees {
            Some(d) => {
                let list: Vec<String> = d.iter().map(i64::to_string).collect();
                write!(f, "{}({})", self.base, list.join(","))
            }
            None => write!(f, "{}[c1={},c2={}]", self.base, self.c1(), self.c2()),
        }
    }
}

fn elementary_symmetric(xs: &[i64], k: usize) -> i64 {
    // e_0..e_k by the usual one-pass recurrence
    let mut e = vec![0i64; k + 1];
    e[0] = 1;
    for &x in xs {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    e[k]
}

/// Polynomial in the symbols `xi` and `H` before any relation is applied.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl FormalPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c * xi^xi_pow * H^h_pow`
    pub fn monomial(xi_pow: u32, h_pow: u32, c: Rational) -> Self {
        Self::new().term(xi_pow, h_pow, c)
    }

    pub fn term(mut self, xi_pow: u32, h_pow: u32, c: Rational) -> Self {
        let slot = self
            .terms
            .entry((xi_pow, h_pow))
            .or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(xi_pow, h_pow));
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }
}

impl Mul for &FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::new();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out = out.term(i + k, j + l, a * b);
            }
        }
        out
    }
}

/// Element of the Chow ring of `Z` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    spec: BundleSpec,
    coeffs: Vec<Vec<Rational>>,
}

impl ChowClass {
    pub fn zero(spec: &BundleSpec) -> Self {
        ChowClass {
            spec: spec.clone(),
            coeffs: vec![vec![Rational::zero(); spec.base_dim() as usize + 1]; spec.rank()],
        }
    }

    pub fn one(spec: &BundleSpec) -> Self {
        Self::from_int(spec, 1)
    }

    pub fn from_int(spec: &BundleSpec, n: i64) -> Self {
        let mut c = Self::zero(spec);
        c.coeffs[0][0] = int(n);
        c
    }

    /// `xi = O_Z(1)`.
    pub fn xi(spec: &BundleSpec) -> Self {
        reduce(spec, &FormalPoly::monomial(1, 0, Rational::one()))
    }

    /// `H = p^* h`.
    pub fn h(spec: &BundleSpec) -> Self {
        reduce(spec, &FormalPoly::monomial(0, 1, Rational::one()))
    }

    /// `a xi + b H`
    pub fn divisor(spec: &BundleSpec, a: i64, b: i64) -> Self {
        reduce(
            spec,
            &FormalPoly::new().term(1, 0, int(a)).term(0, 1, int(b)),
        )
    }

    pub fn spec(&self) -> &BundleSpec {
        &self.spec
    }

    /// Coefficient of `xi^i H^j` in normal form (zero outside the grid).
    pub fn coeff(&self, xi_pow: usize, h_pow: usize) -> Rational {
        self.coeffs
            .get(xi_pow)
            .and_then(|row| row.get(h_pow))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Degree when all nonzero terms share one; `None` for mixed or zero.
    pub fn pure_degree(&self) -> Option<usize> {
        let mut deg = None;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match deg {
                    None => deg = Some(i + j),
                    Some(d) if d != i + j => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Homogeneous component of degree `k`.
    pub fn degree_part(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.spec);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i + j == k {
                    out.coeffs[i][j] = c.clone();
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowClass {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.spec), |acc, _| &acc * self)
    }

    /// Degree of the zero-cycle part.
    pub fn integrate(&self) -> Rational {
        integrate(self)
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.spec, other.spec,
            "classes from different Chow rings cannot be combined"
        );
    }
}

/// Reduce a formal polynomial in `xi`, `H` to normal form.
///
/// Terms with `H^(m+1)` vanish outright; each use of the Grothendieck relation
/// strictly lowers the `xi`-degree, so processing from the top terminates.
pub fn reduce(spec: &BundleSpec, p: &FormalPoly) -> ChowClass {
    let m = spec.base_dim() as usize;
    let top = p.terms().map(|(i, _, _)| i as usize).max().unwrap_or(0);
    let mut rows = vec![vec![Rational::zero(); m + 1]; top.max(spec.rank() - 1) + 1];
    for (i, j, c) in p.terms() {
        if (j as usize) <= m {
            rows[i as usize][j as usize] += c;
        }
    }
    reduce_rows(spec, rows)
}

fn reduce_rows(spec: &BundleSpec, mut rows: Vec<Vec<Rational>>) -> ChowClass {
    let r = spec.rank();
    let m = spec.base_dim() as usize;
    // xi^r = sum_k (-1)^(k+1) c_k H^k xi^(r-k)
    let relation: Vec<Rational> = (0..=r)
        .map(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            int(sign * spec.chern(k))
        })
        .collect();
    for p in (r..rows.len()).rev() {
        let row = std::mem::take(&mut rows[p]);
        for (j, c) in row.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 1..=r {
                if j + k > m || relation[k].is_zero() {
                    continue;
                }
                rows[p - k][j + k] += &c * &relation[k];
            }
        }
    }
    rows.truncate(r);
    ChowClass {
        spec: spec.clone(),
        coeffs: rows,
    }
}

/// Coefficient of the point class `xi^(r-1) H^m`.
pub fn integrate(c: &ChowClass) -> Rational {
    c.coeff(c.spec.rank() - 1, c.spec.base_dim() as usize)
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (row, other) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            for (a, b) in row.iter_mut().zip(other) {
                *a += b;
            }
        }
        out
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&int(-1))
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.assert_same_ring(rhs);
        let r = self.spec.rank();
        let m = self.spec.base_dim() as usize;
        let mut rows = vec![vec![Rational::zero(); m + 1]; 2 * r - 1];
        for (i, row_a) in self.coeffs.iter().enumerate() {
            for (j, a) in row_a.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, row_b) in rhs.coeffs.iter().enumerate() {
                    for (l, b) in row_b.iter().enumerate().take(m + 1 - j) {
                        if !b.is_zero() {
                            rows[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        reduce_rows(&self.spec, rows)
    }
}

/// Full coefficient grid as `[{"xi_pow": i, "h_pow": j, "coeff": "n/d"}, ...]`.
impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Cell {
            xi_pow: usize,
            h_pow: usize,
            coeff: String,
        }
        let mut seq = s.serialize_seq(None)?;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                seq.serialize_element(&Cell {
                    xi_pow: i,
                    h_pow: j,
                    coeff: fmt_rational(c),
                })?;
            }
        }
        seq.end()
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            for (j, c) in row.iter().enumerate().rev() {
                if !c.is_zero() {
                    parts.push(format!("{c}*xi^{i}*H^{j}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// One top-degree intersection number `xi^i H^j`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TopIntersection {
    pub xi_pow: u32,
    pub h_pow: u32,
    pub value: i64,
}

/// The nonvanishing top intersection numbers of `xi` and `H` from their
/// closed forms in the Chern numbers of `E`.
///
/// Over `P^3`: `xi H^3 = 1`, `xi^2 H^2 = c1`, `xi^3 H = c1^2 - c2`,
/// `xi^4 = c1^3 - 2 c1 c2`. Over `P^1`: `xi^3 H = 1`, `xi^4 = c1`.
pub fn closed_form_intersections(spec: &BundleSpec) -> Vec<TopIntersection> {
    let (c1, c2) = (spec.c1(), spec.c2());
    let table: Vec<(u32, u32, i64)> = match spec.base() {
        Base::P3 => vec![
            (1, 3, 1),
            (2, 2, c1),
            (3, 1, c1 * c1 - c2),
            (4, 0, c1 * c1 * c1 - 2 * c1 * c2),
        ],
        Base::P1 => vec![(3, 1, 1), (4, 0, c1)],
    };
    table
        .into_iter()
        .map(|(xi_pow, h_pow, value)| TopIntersection {
            xi_pow,
            h_pow,
            value,
        })
        .collect()
}

/// `-K_Z = r xi + (m + 1 - c1) H`, from Chern data alone.
pub fn anticanonical(spec: &BundleSpec) -> ChowClass {
    ChowClass::divisor(
        spec,
        spec.rank() as i64,
        spec.base_dim() as i64 + 1 - spec.c1(),
    )
}

/// Total Chern class split into graded pieces `c_0..c_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernTotal {
    components: Vec<ChowClass>,
}

impl ChernTotal {
    pub fn from_total(total: &ChowClass) -> Self {
        let dim = total.spec().rank() - 1 + total.spec().base_dim() as usize;
        ChernTotal {
            components: (0..=dim).map(|k| total.degree_part(k)).collect(),
        }
    }

    pub fn component(&self, k: usize) -> &ChowClass {
        &self.components[k]
    }

    pub fn components(&self) -> &[ChowClass] {
        &self.components
    }

    pub fn total(&self) -> ChowClass {
        let mut it = self.components.iter();
        let first = it.next().expect("c0 is always present").clone();
        it.fold(first, |acc, c| &acc + c)
    }
}

/// `c(T_Z)` from the relative and base Euler sequences:
/// `prod_i (1 + xi - a_i H) * (1 + H)^(m+1)`.
pub fn tangent_total_chern(spec: &BundleSpec) -> Result<ChernTotal> {
    let degrees = spec.require_split("tangent_total_chern")?;
    let one = ChowClass::one(spec);
    let mut total = one.clone();
    for &a in degrees {
        total = &total * &(&one + &ChowClass::divisor(spec, 1, -a));
    }
    let base_factor = &one + &ChowClass::h(spec);
    total = &total * &base_factor.pow(spec.base_dim() + 1);
    Ok(ChernTotal::from_total(&total))
}
