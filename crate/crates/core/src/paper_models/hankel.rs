use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::families::sign;
use crate::contact_poly::WeightedPolynomial;
use crate::error::{Error, Result};
use crate::exact_linalg::Scalar;

pub fn factorial(n: usize) -> Scalar {
    Scalar::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// Catalecticant matrix with `r+2` rows and `k-r` columns; entry `(i, j)`
/// is `(i+j)!·x_{i+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelMatrix {
    pub k: usize,
    pub r: usize,
}

impl HankelMatrix {
    pub fn rows(&self) -> usize {
        self.r + 2
    }

    pub fn cols(&self) -> usize {
        self.k - self.r
    }

    /// `(coefficient, variable index)` of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> (Scalar, usize) {
        (factorial(i + j), i + j)
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> WeightedPolynomial {
        let (c, v) = self.entry(i, j);
        WeightedPolynomial::x(self.k, v).scale(&c)
    }

    /// The matrix evaluated at a point of `E`.
    pub fn evaluate(&self, xs: &[Scalar]) -> Vec<Vec<Scalar>> {
        (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| {
                        let (c, v) = self.entry(i, j);
                        c * &xs[v]
                    })
                    .collect()
            })
            .collect()
    }

    /// Maximal minor on the given columns (rows in natural order).
    pub fn minor(&self, cols: &[usize]) -> WeightedPolynomial {
        let rows: Vec<usize> = (0..self.rows()).collect();
        self.det(&rows, cols)
    }

    // Laplace expansion along the first row.
    fn det(&self, rows: &[usize], cols: &[usize]) -> WeightedPolynomial {
        if rows.len() == 1 {
            return self.entry_poly(rows[0], cols[0]);
        }
        let mut out = WeightedPolynomial::zero(self.k);
        for (n, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det(&rows[1..], &rest);
            out = out.add_scaled(&sign(n), &self.entry_poly(rows[0], c).mul(&sub));
        }
        out
    }

    /// Column subsets of size `r+2` in lexicographic order.
    pub fn column_subsets(&self) -> Vec<Vec<usize>> {
        combinations(self.cols(), self.rows())
    }
}

pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, m: usize) -> usize {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn hankel(k: usize, r: usize) -> Result<HankelMatrix> {
    if k < r + r + 2 {
        return Err(Error::InvalidParameter(format!(
            "secant index r = {r} out of range for k = {k}"
        )));
    }
    Ok(HankelMatrix { k, r })
}

/// Maximal minors of `hankel(k, r)`, column subsets in lexicographic order.
pub fn secant_ideal(k: usize, r: usize) -> Result<Vec<WeightedPolynomial>> {
    let h = hankel(k, r)?;
    Ok(h.column_subsets().iter().map(|c| h.minor(c)).collect())
}

/// Largest `r` with a nonempty secant ideal, `⌊k/2⌋ - 1`.
pub fn max_secant_index(k: usize) -> Option<usize> {
    (k / 2).checked_sub(1)
}

/// Point `[u^k : u^{k-1}v : ... : v^k/k!]` of the rational normal curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub u: Scalar,
    pub v: Scalar,
    pub coords: Vec<Scalar>,
}

pub fn curve_point(k: usize, u: Scalar, v: Scalar) -> Result<CurvePoint> {
    if u.is_zero() && v.is_zero() {
        return Err(Error::InvalidParameter("curve parameters are both zero".into()));
    }
    let coords = (0..=k)
        .map(|i| num_traits::pow(u.clone(), k - i) * num_traits::pow(v.clone(), i) / factorial(i))
        .collect();
    Ok(CurvePoint { u, v, coords })
}

/// `Σ w_i p_i` for curve points `p_i = curve_point(k, u_i, v_i)`.
pub fn secant_point(k: usize, r: usize, params: &[(Scalar, Scalar, Scalar)]) -> Result<Vec<Scalar>> {
    if params.len() != r + 1 {
        return Err(Error::InvalidParameter(format!(
            "secant point of index {r} needs {} curve points, got {}",
            r + 1,
            params.len()
        )));
    }
    let mut out = vec![Scalar::zero(); k + 1];
    for (u, v, w) in params {
        let p = curve_point(k, u.clone(), v.clone())?;
        for (o, c) in out.iter_mut().zip(p.coords) {
            *o += w * c;
        }
    }
    Ok(out)
}
