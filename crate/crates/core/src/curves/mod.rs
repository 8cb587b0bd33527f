//! Brute-force elliptic curve arithmetic over `F_p` and `F_{p^2}`: models,
//! the group law, point enumeration and counting, torsion structure, and the
//! j-invariant sets attached to the zero polynomials.

mod legendre;
mod sets;

use std::fmt;

use serde::Serialize;

pub use legendre::{
    eq12_set, j_of_legendre, lambdas_with_small_4_torsion, legendre_4torsion_predicted,
    legendre_curve, psi4_quadratics, psi4_roots, thmc_curve_set, weierstrass_full2_no4_set,
};
pub use sets::{
    hessian_j, hessian_proposition_check, hessian_weierstrass, hex_zero_set, supersingular_j_set,
    HessianReport,
};

use crate::error::{Error, Result};
use crate::exact_arith::{FieldCtx, Scalar};

/// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone)]
pub struct Curve<F: FieldCtx> {
    field: F,
    pub a2: F::Elem,
    pub a4: F::Elem,
    pub a6: F::Elem,
}

/// `y^2 = x^3 + a x + b`.
pub type ShortWeierstrass<F> = Curve<F>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

/// `Z/d1 x Z/d2` with `d1 | d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionStructure(pub u64, pub u64);

impl fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl<F: FieldCtx> Curve<F> {
    pub fn new(field: F, a2: F::Elem, a4: F::Elem, a6: F::Elem) -> Result<Self> {
        let c = Self { field, a2, a4, a6 };
        if c.cubic_discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn short(field: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let z = field.zero();
        Self::new(field, z, a, b)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Discriminant of the cubic on the right-hand side.
    pub fn cubic_discriminant(&self) -> F::Elem {
        let f = &self.field;
        let (a, b, c) = (self.a2, self.a4, self.a6);
        a * a * b * b - f.from_int(4) * b * b * b - f.from_int(4) * a * a * a * c
            - f.from_int(27) * c * c
            + f.from_int(18) * a * b * c
    }

    /// `c4^3 / Delta` from the standard invariants.
    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.field;
        let b2 = f.from_int(4) * self.a2;
        let b4 = f.from_int(2) * self.a4;
        let b6 = f.from_int(4) * self.a6;
        let b8 = f.from_int(4) * self.a2 * self.a6 - self.a4 * self.a4;
        let c4 = b2 * b2 - f.from_int(24) * b4;
        let disc = -(b2 * b2 * b8) - f.from_int(8) * b4 * b4 * b4 - f.from_int(27) * b6 * b6
            + f.from_int(9) * b2 * b4 * b6;
        c4 * c4 * c4 * disc.inv().expect("nonsingular curve")
    }

    pub fn rhs(&self, x: F::Elem) -> F::Elem {
        ((x + self.a2) * x + self.a4) * x + self.a6
    }

    pub fn contains(&self, p: &Point<F::Elem>) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine(x, y) => y * y == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, -y),
        }
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let f = &self.field;
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            (f.from_int(3) * x1 * x1 + f.from_int(2) * self.a2 * x1 + self.a4)
                * (f.from_int(2) * y1).inv().expect("nonzero")
        } else {
            (y2 - y1) * (x2 - x1).inv().expect("distinct x")
        };
        let x3 = slope * slope - self.a2 - x1 - x2;
        let y3 = -(y1 + slope * (x3 - x1));
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, p: &Point<F::Elem>, mut n: u64) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        let mut base = *p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Every point, the point at infinity first.
    pub fn points(&self, sqrt: &SquareTable<F>) -> Vec<Point<F::Elem>> {
        let mut out = vec![Point::Infinity];
        for x in self.field.elements() {
            let r = self.rhs(x);
            if let Some(y) = sqrt.sqrt(r) {
                out.push(Point::Affine(x, y));
                if !y.is_zero() {
                    out.push(Point::Affine(x, -y));
                }
            }
        }
        out
    }

    /// `#E = 1 + sum_x (1 + chi(rhs(x)))`.
    pub fn point_count(&self, sqrt: &SquareTable<F>) -> u64 {
        let total: i64 = self
            .field
            .elements()
            .map(|x| 1 + sqrt.chi(self.rhs(x)) as i64)
            .sum();
        (1 + total) as u64
    }

    /// Structure of `E(F)[n]` from the points killed by `n`.
    pub fn n_torsion_structure(&self, n: u64, sqrt: &SquareTable<F>) -> TorsionStructure {
        let pts: Vec<_> = self
            .points(sqrt)
            .into_iter()
            .filter(|p| self.mul(p, n) == Point::Infinity)
            .collect();
        let exponent = pts.iter().map(|p| self.order_dividing(p, n)).max().unwrap_or(1);
        TorsionStructure(pts.len() as u64 / exponent, exponent)
    }

    /// Order of a point known to be killed by `n`.
    fn order_dividing(&self, p: &Point<F::Elem>, n: u64) -> u64 {
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| self.mul(p, d) == Point::Infinity)
            .unwrap_or(n)
    }
}

/// Square roots for every element of a small field, by enumeration.
#[derive(Debug, Clone)]
pub struct SquareTable<F: FieldCtx> {
    field: F,
    roots: Vec<Option<F::Elem>>,
}

impl<F: FieldCtx> SquareTable<F> {
    pub fn new(field: F) -> Self {
        let mut roots = vec![None; field.order() as usize];
        for y in field.elements() {
            let i = field.index_of(&(y * y)) as usize;
            if roots[i].is_none() {
                roots[i] = Some(y);
            }
        }
        Self { field, roots }
    }

    pub fn sqrt(&self, x: F::Elem) -> Option<F::Elem> {
        self.roots[self.field.index_of(&x) as usize]
    }

    /// Quadratic character: `0` at zero, `1` on nonzero squares, `-1` otherwise.
    pub fn chi(&self, x: F::Elem) -> i8 {
        if x.is_zero() {
            0
        } else if self.sqrt(x).is_some() {
            1
        } else {
            -1
        }
    }

    pub fn is_nonzero_square(&self, x: F::Elem) -> bool {
        self.chi(x) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{Fp2Field, PrimeField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counting_small_curves() {
        let f = PrimeField::new(7).unwrap();
        let t = SquareTable::new(f);
        let e = Curve::short(f, f.one(), f.zero()).unwrap();
        assert_eq!(e.point_count(&t), 8);
        assert_eq!(e.points(&t).len(), 8);
        assert!(Curve::short(f, f.zero(), f.zero()).is_err());
    }

    #[test]
    fn hasse_bound_and_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 500 {
            let p = [101u64, 103, 107, 109, 113][rng.gen_range(0..5)];
            let f = PrimeField::new(p).unwrap();
            let t = SquareTable::new(f);
            let (a, b) = (f.elem(rng.gen_range(0..p)), f.elem(rng.gen_range(0..p)));
            let Ok(e) = Curve::short(f, a, b) else { continue };
            let n = e.point_count(&t);
            let dev = (n as f64 - (p + 1) as f64).abs();
            assert!(dev <= 2.0 * (p as f64).sqrt(), "p = {p}");
            if tested % 50 == 0 {
                for pt in e.points(&t).iter().take(10) {
                    assert_eq!(e.mul(pt, n), Point::Infinity);
                    assert!(e.contains(&e.add(pt, pt)));
                }
            }
            tested += 1;
        }
    }

    #[test]
    fn supersingular_1728() {
        for p in [7u64, 11, 19, 23, 31, 43] {
            let f = PrimeField::new(p).unwrap();
            let e = Curve::short(f, f.one(), f.zero()).unwrap();
            assert_eq!(e.point_count(&SquareTable::new(f)), p + 1);
            assert_eq!(e.j_invariant(), f.from_int(1728));
        }
    }

    #[test]
    fn torsion_over_extension() {
        let f = Fp2Field::new(7).unwrap();
        let t = SquareTable::new(f);
        // y^2 = x^3 + x is supersingular at 7: E(F_49) = (Z/8)^2
        let e = Curve::short(f, f.one(), f.zero()).unwrap();
        assert_eq!(e.point_count(&t), 64);
        assert_eq!(e.n_torsion_structure(2, &t), TorsionStructure(2, 2));
        assert_eq!(e.n_torsion_structure(4, &t), TorsionStructure(4, 4));
    }
}
