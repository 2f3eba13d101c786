use super::WeightedPolynomial;
use crate::error::{Error, Result};
use crate::exact_linalg::frac;

/// `{f,g} = f g_z - g f_z + Σ (df/dx_i dg/dy_i - dg/dx_i df/dy_i)`.
pub fn contact_bracket(f: &WeightedPolynomial, g: &WeightedPolynomial) -> Result<WeightedPolynomial> {
    if f.k() != g.k() {
        return Err(Error::Dimension(format!("bracket of polynomials with k = {} and k = {}", f.k(), g.k())));
    }
    let k = f.k();
    let zi = 2 * k + 2;
    let mut out = f.mul(&g.partial(zi)).sub(&g.mul(&f.partial(zi)));
    for i in 0..=k {
        out = out
            .add(&f.dx(i).mul(&g.dy(i)))
            .sub(&g.dx(i).mul(&f.dy(i)));
    }
    Ok(out)
}

/// `{x_j, g} = ∂g/∂y_j + (x_j/2) ∂g/∂z`.
pub fn bracket_x(j: usize, g: &WeightedPolynomial) -> WeightedPolynomial {
    let k = g.k();
    g.partial(k + 1 + j)
        .add(&WeightedPolynomial::x(k, j).mul(&g.partial(2 * k + 2)).scale(&frac(1, 2)))
}

/// `{y_j, g} = -∂g/∂x_j + (y_j/2) ∂g/∂z`.
pub fn bracket_y(j: usize, g: &WeightedPolynomial) -> WeightedPolynomial {
    let k = g.k();
    g.partial(j)
        .neg()
        .add(&WeightedPolynomial::y(k, j).mul(&g.partial(2 * k + 2)).scale(&frac(1, 2)))
}

/// Contact vector field as a first-order differential operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactField {
    /// Coefficients of `∂/∂x_i`.
    pub dx: Vec<WeightedPolynomial>,
    /// Coefficients of `∂/∂y_i`.
    pub dy: Vec<WeightedPolynomial>,
    /// Coefficient of `∂/∂z`.
    pub dz: WeightedPolynomial,
}

impl ContactField {
    pub fn k(&self) -> usize {
        self.dz.k()
    }

    pub fn apply(&self, g: &WeightedPolynomial) -> WeightedPolynomial {
        let k = self.k();
        let mut out = self.dz.mul(&g.partial(2 * k + 2));
        for i in 0..=k {
            out = out
                .add(&self.dx[i].mul(&g.partial(i)))
                .add(&self.dy[i].mul(&g.partial(k + 1 + i)));
        }
        out
    }

    /// `[A, B]` as vector fields.
    pub fn commutator(&self, other: &ContactField) -> ContactField {
        let lie = |a: &WeightedPolynomial, b: &WeightedPolynomial| self.apply(b).sub(&other.apply(a));
        ContactField {
            dx: self.dx.iter().zip(&other.dx).map(|(a, b)| lie(a, b)).collect(),
            dy: self.dy.iter().zip(&other.dy).map(|(a, b)| lie(a, b)).collect(),
            dz: lie(&self.dz, &other.dz),
        }
    }
}

/// `X_f = Σ (-df/dy_i d/dx_i + df/dx_i d/dy_i) + f ∂/∂z`, expanded into
/// partial derivatives.
pub fn to_field(f: &WeightedPolynomial) -> ContactField {
    let k = f.k();
    let half = frac(1, 2);
    let mut dz = f.clone();
    let mut dx = Vec::with_capacity(k + 1);
    let mut dy = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let a = f.dy(i).neg();
        let b = f.dx(i);
        dz = dz
            .add(&a.mul(&WeightedPolynomial::y(k, i)).scale(&half))
            .sub(&b.mul(&WeightedPolynomial::x(k, i)).scale(&half));
        dx.push(a);
        dy.push(b);
    }
    ContactField { dx, dy, dz }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = WeightedPolynomial;

    #[test]
    fn canonical_pair() {
        let k = 2;
        assert_eq!(contact_bracket(&P::x(k, 0), &P::y(k, 0)).unwrap(), P::one(k));
        assert_eq!(bracket_x(0, &P::y(k, 0)), P::one(k));
        assert_eq!(bracket_y(0, &P::x(k, 0)), P::one(k).neg());
    }

    #[test]
    fn shortcuts_match_the_bracket() {
        let k = 2;
        let g = P::parse(k, "+(1)·x0·y1·z +(3)·y2^2 -(1/2)·z^2 +(1)·x1").unwrap();
        for j in 0..=k {
            assert_eq!(bracket_x(j, &g), contact_bracket(&P::x(k, j), &g).unwrap());
            assert_eq!(bracket_y(j, &g), contact_bracket(&P::y(k, j), &g).unwrap());
        }
    }

    #[test]
    fn unit_acts_as_z_derivative() {
        let k = 1;
        let g = P::parse(k, "+(2)·x0·z^2 +(1)·y1").unwrap();
        assert_eq!(contact_bracket(&P::one(k), &g).unwrap(), g.partial(2 * k + 2));
    }

    #[test]
    fn field_of_z_is_the_grading_flow() {
        let k = 1;
        let f = to_field(&P::z(k));
        assert_eq!(f.dz, P::z(k));
        for i in 0..=k {
            assert_eq!(f.dx[i], P::x(k, i).scale(&crate::exact_linalg::frac(1, 2)));
            assert_eq!(f.dy[i], P::y(k, i).scale(&crate::exact_linalg::frac(1, 2)));
        }
        let one = to_field(&P::one(k));
        assert_eq!(one.dz, P::one(k));
        assert!(one.dx.iter().chain(&one.dy).all(P::is_zero));
    }

    #[test]
    fn field_homomorphism_on_a_pair() {
        let k = 1;
        let f = P::parse(k, "+(1)·x0·y1 -(2)·z").unwrap();
        let g = P::parse(k, "+(1)·x1^2 +(3)·y0").unwrap();
        let lhs = to_field(&contact_bracket(&f, &g).unwrap());
        assert_eq!(lhs, to_field(&f).commutator(&to_field(&g)));
    }

    #[test]
    fn k_mismatch() {
        assert!(contact_bracket(&P::one(2), &P::one(3)).is_err());
    }
}
