use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::rational::{fmt_rational, int, Rational};

/// Exponent vector of `z0^e0 * z1^e1 * z2^e2 * z3^e3`, ordered graded-lex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `z0^2*z1`; the constant monomial is the empty string.
    pub fn text(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => format!("z{i}"),
                _ => format!("z{i}^{e}"),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in four variables, descending graded-lex.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            for e2 in (0..=d - e0 - e1).rev() {
                out.push(Monomial([e0, e1, e2, d - e0 - e1 - e2]));
            }
        }
    }
    out
}

/// Sparse polynomial in `z0..z3` with rational coefficients.
///
/// Zero coefficients are never stored. Homogeneity is a property of the
/// stored terms, queried with [`MultiPoly::homogeneous_degree`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; 4], c)
    }

    /// The coordinate `z_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: [u32; 4], c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ([u32; 4], Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: [u32; 4]) -> Rational {
        self.terms
            .get(&Monomial(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms; `None` if mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// True when every stored term has degree `d` (vacuously for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        // distinct monomials stay distinct after lowering one exponent
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut d = m.0;
                d[i] -= 1;
                (Monomial(d), c * int(m.0[i] as i64))
            })
            .collect();
        MultiPoly { terms }
    }

    pub fn gradient(&self) -> [MultiPoly; 4] {
        [0, 1, 2, 3].map(|i| self.partial(i))
    }

    /// Exact value at `point`, computed over the integers with one final
    /// reduction.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let Some(top) = self.total_degree() else {
            return Rational::zero();
        };
        let top = top as usize;
        let (nums, den) = self.integer_form();
        let d = point
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let powers = |base: BigInt| {
            let mut p = vec![BigInt::one()];
            for k in 0..top {
                let next = &p[k] * &base;
                p.push(next);
            }
            p
        };
        let coords = point
            .each_ref()
            .map(|x| powers(x.numer() * (&d / x.denom())));
        let dpow = powers(d);
        let mut total = BigInt::zero();
        for (m, n) in &nums {
            let mut t = n * &dpow[top - m.degree() as usize];
            for (pw, &e) in coords.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= &pw[e as usize];
                }
            }
            total += t;
        }
        Rational::new(total, den * &dpow[top])
    }

    /// Canonical text: terms in descending graded-lex order joined by ` + `,
    /// each written `num/den*z0^e0*...`; the zero polynomial is `0/1`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0/1".to_string();
        }
        self.terms()
            .map(|(m, c)| {
                let mono = m.text();
                if mono.is_empty() {
                    fmt_rational(c)
                } else {
                    format!("{}*{}", fmt_rational(c), mono)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Exact product.
pub fn multipoly_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a * b
}

/// Formal partials with respect to `z0..z3`.
pub fn multipoly_gradient(p: &MultiPoly) -> [MultiPoly; 4] {
    p.gradient()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl MultiPoly {
    /// Integer numerators over the lcm of all denominators.
    fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    // Products are summed as integers and reduced once per monomial; reducing
    // every partial product is several times slower.
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, da) = self.integer_form();
        let (b, db) = rhs.integer_form();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e = Monomial([0, 1, 2, 3].map(|i| ma.0[i] + mb.0[i]));
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let den = da * db;
        MultiPoly {
            terms: acc
                .into_iter()
                .filter(|(_, n)| !n.is_zero())
                .map(|(m, n)| (m, Rational::new(n, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// JSON coefficient map `{"z0^2*z1": "3/1", ...}` in canonical term order;
/// the constant monomial uses the key `"1"`.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (m, c) in self.terms() {
            let key = m.text();
            let key = if key.is_empty() { "1".to_string() } else { key };
            map.serialize_entry(&key, &fmt_rational(c))?;
        }
        map.end()
    }
}
