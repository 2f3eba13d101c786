use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{frac, parse_scalar, Scalar};

/// Exponents over `x_0..x_k, y_0..y_k, z`, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(k: usize) -> Self {
        Monomial(vec![0; 2 * k + 3])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn k(&self) -> usize {
        (self.0.len() - 3) / 2
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn var_weight(k: usize, v: usize, grading: Grading) -> i64 {
        match grading {
            Grading::Standard => {
                if v == 2 * k + 2 {
                    2
                } else {
                    1
                }
            }
            Grading::Second => {
                if v <= k {
                    v as i64
                } else if v <= 2 * k + 1 {
                    2 - (v - k - 1) as i64
                } else {
                    2
                }
            }
        }
    }

    pub fn weight(&self, grading: Grading) -> i64 {
        let k = self.k();
        self.0
            .iter()
            .enumerate()
            .map(|(v, &e)| e as i64 * Self::var_weight(k, v, grading))
            .sum()
    }
}

/// Graded lexicographic: total degree first, then the exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// `x_i, y_i ↦ 1`, `z ↦ 2`.
    Standard,
    /// `x_i ↦ i`, `y_i ↦ 2 - i`, `z ↦ 2`.
    Second,
}

/// Weight of a polynomial under a grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// The zero polynomial, homogeneous of every weight.
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

impl Weight {
    /// Algebra degree (weight minus 2) of a homogeneous polynomial.
    pub fn degree(self) -> Option<i64> {
        match self {
            Weight::Homogeneous(w) => Some(w - 2),
            _ => None,
        }
    }
}

/// Sparse polynomial in `x_0..x_k, y_0..y_k, z` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPolynomial {
    k: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl WeightedPolynomial {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: Scalar) -> Self {
        Self::from_terms(k, [(Monomial::one(k), c)])
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, Scalar::one())
    }

    /// The variable with index `v` (`x_i = i`, `y_i = k+1+i`, `z = 2k+2`).
    pub fn var(k: usize, v: usize) -> Self {
        let mut m = Monomial::one(k);
        m.0[v] = 1;
        Self::from_terms(k, [(m, Scalar::one())])
    }

    pub fn x(k: usize, i: usize) -> Self {
        assert!(i <= k);
        Self::var(k, i)
    }

    pub fn y(k: usize, i: usize) -> Self {
        assert!(i <= k);
        Self::var(k, k + 1 + i)
    }

    pub fn z(k: usize) -> Self {
        Self::var(k, 2 * k + 2)
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut out = Self::zero(k);
        for (m, c) in terms {
            assert_eq!(m.0.len(), 2 * k + 3, "monomial length does not match k");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nvars(&self) -> usize {
        2 * self.k + 3
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check_k(&self, other: &Self) {
        assert_eq!(self.k, other.k, "polynomials over different variable sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-Scalar::one(), other)
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Self) -> Self {
        self.check_k(other);
        let mut out = self.clone();
        if c.is_zero() {
            return out;
        }
        for (m, x) in &other.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        Self {
            k: self.k,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_k(other);
        let mut out = Self::zero(self.k);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.k), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero(self.k);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[v] -= 1;
            out.add_term(d, c * Scalar::from_integer(e.into()));
        }
        out
    }

    /// `d/dx_i = ∂/∂x_i + (y_i/2) ∂/∂z`.
    pub fn dx(&self, i: usize) -> Self {
        let k = self.k;
        self.partial(i)
            .add(&Self::y(k, i).mul(&self.partial(2 * k + 2)).scale(&frac(1, 2)))
    }

    /// `d/dy_i = ∂/∂y_i - (x_i/2) ∂/∂z`.
    pub fn dy(&self, i: usize) -> Self {
        let k = self.k;
        self.partial(k + 1 + i)
            .sub(&Self::x(k, i).mul(&self.partial(2 * k + 2)).scale(&frac(1, 2)))
    }

    pub fn weight(&self, grading: Grading) -> Weight {
        let mut ws = self.terms.keys().map(|m| m.weight(grading));
        match ws.next() {
            None => Weight::Zero,
            Some(w) => {
                if ws.all(|v| v == w) {
                    Weight::Homogeneous(w)
                } else {
                    Weight::Inhomogeneous
                }
            }
        }
    }

    /// True when no `y` or `z` appears.
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.0[self.k + 1..].iter().all(|&e| e == 0))
    }

    /// Value at a point given by all `2k+3` coordinates.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .filter(|(e, _)| **e > 0)
                    .fold(c.clone(), |acc, (&e, p)| acc * num_traits::pow(p.clone(), e as usize))
            })
            .sum()
    }

    /// Value at a point of `E`: the `x` coordinates, with `y = z = 0`.
    pub fn eval_x(&self, xs: &[Scalar]) -> Scalar {
        assert_eq!(xs.len(), self.k + 1);
        let mut point = xs.to_vec();
        point.resize(self.nvars(), Scalar::zero());
        self.eval(&point)
    }

    pub fn var_name(k: usize, v: usize) -> String {
        if v <= k {
            format!("x{v}")
        } else if v <= 2 * k + 1 {
            format!("y{}", v - k - 1)
        } else {
            "z".to_string()
        }
    }

    fn var_index(k: usize, name: &str) -> Option<usize> {
        if name == "z" {
            return Some(2 * k + 2);
        }
        let (head, tail) = name.split_at(1);
        let i: usize = tail.parse().ok()?;
        if i > k {
            return None;
        }
        match head {
            "x" => Some(i),
            "y" => Some(k + 1 + i),
            _ => None,
        }
    }

    /// Parses the text format produced by `Display`.
    pub fn parse(k: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial `{text}`"));
        if text == "0" {
            return Ok(Self::zero(k));
        }
        let mut out = Self::zero(k);
        for token in text.split_whitespace() {
            let (sign, rest) = match token.chars().next() {
                Some('+') => (Scalar::one(), &token[1..]),
                Some('-') => (-Scalar::one(), &token[1..]),
                _ => return Err(bad("term without sign")),
            };
            let rest = rest.strip_prefix('(').ok_or_else(|| bad("missing `(`"))?;
            let close = rest.find(')').ok_or_else(|| bad("missing `)`"))?;
            let c = parse_scalar(&rest[..close]).ok_or_else(|| bad("bad coefficient"))?;
            let mut m = Monomial::one(k);
            for factor in rest[close + 1..].split(['·', '*']).filter(|f| !f.is_empty()) {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u16>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let v = Self::var_index(k, name).ok_or_else(|| bad("unknown variable"))?;
                m.0[v] += e;
            }
            out.add_term(m, sign * c);
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            k: self.k,
            terms: self
                .terms()
                .map(|(m, c)| PolyTermJson {
                    coeff: c.to_string(),
                    exponents: m
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| (Self::var_name(self.k, v), serde_json::Value::from(e)))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json_value(doc: &PolyJson) -> Result<Self> {
        let k = doc.k;
        let mut out = Self::zero(k);
        for t in &doc.terms {
            let c = parse_scalar(&t.coeff).ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let mut m = Monomial::one(k);
            for (name, e) in &t.exponents {
                let v = Self::var_index(k, name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                let e = e
                    .as_u64()
                    .and_then(|e| u16::try_from(e).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent for `{name}`")))?;
                m.0[v] += e;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyTermJson {
    pub coeff: String,
    pub exponents: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyJson {
    pub k: usize,
    pub terms: Vec<PolyTermJson>,
}

/// `+(2)·x0·x2 -(1)·x1^2`; the zero polynomial prints as `0`.
impl fmt::Display for WeightedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}({})", c.abs())?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·{}", Self::var_name(self.k, v))?,
                    _ => write!(f, "·{}^{e}", Self::var_name(self.k, v))?,
                }
            }
        }
        Ok(())
    }
}
