//! Upper half-space model, its boundary, and the `PSL_2(O_{-m})` action.
//!
//! Points carry exact rational coordinates: an interior point is
//! `(z, r)` stored as `z = x + y*sqrt(m)*i` with rational `x, y` and
//! `t = r^2` rational.  The Moebius convention on the boundary is
//! `z -> (a z - b)/(-c z + d)`, matching the interior formula
//! `(z, r) -> (((conj d - conj c conj z)(a z - b) - r^2 conj(c) a)/D, r/D)`
//! with `D = |c z - d|^2 + r^2 |c|^2`.

use crate::quadring::{QuadInt, RingSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("point is not interior (t = 0)")]
    NotInterior,
}

pub fn rat(n: i128) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i128, d: i128) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Element of `Q(sqrt(-m))` as `x + y*sqrt(m)*i`, `x`, `y` rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KElem {
    pub x: Rat,
    pub y: Rat,
}

impl KElem {
    pub fn new(x: Rat, y: Rat) -> Self {
        KElem { x, y }
    }
    pub fn zero() -> Self {
        KElem::new(Rat::zero(), Rat::zero())
    }
    pub fn one() -> Self {
        KElem::new(Rat::one(), Rat::zero())
    }
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    pub fn add(&self, o: &KElem) -> KElem {
        KElem::new(&self.x + &o.x, &self.y + &o.y)
    }
    pub fn sub(&self, o: &KElem) -> KElem {
        KElem::new(&self.x - &o.x, &self.y - &o.y)
    }
    pub fn neg(&self) -> KElem {
        KElem::new(-self.x.clone(), -self.y.clone())
    }
    pub fn mul(&self, o: &KElem, m: u64) -> KElem {
        let mm = rat(m as i128);
        KElem::new(
            &self.x * &o.x - &mm * &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
        )
    }
    pub fn conj(&self) -> KElem {
        KElem::new(self.x.clone(), -self.y.clone())
    }
    /// `|z|^2 = x^2 + m y^2`.
    pub fn norm(&self, m: u64) -> Rat {
        &self.x * &self.x + rat(m as i128) * &self.y * &self.y
    }
    pub fn scale(&self, s: &Rat) -> KElem {
        KElem::new(&self.x * s, &self.y * s)
    }
    pub fn div(&self, o: &KElem, m: u64) -> KElem {
        let n = o.norm(m);
        let p = self.mul(&o.conj(), m);
        KElem::new(p.x / &n, p.y / n)
    }
    /// The ring element with these coordinates, when there is one.
    pub fn to_quadint(&self, ring: &RingSpec) -> Option<QuadInt> {
        let (a, b) = if ring.half() {
            (&self.x + &self.y, &self.y * rat(2))
        } else {
            (self.x.clone(), self.y.clone())
        };
        if a.is_integer() && b.is_integer() {
            let ai: Option<i128> = int_to_i128(a.numer());
            let bi: Option<i128> = int_to_i128(b.numer());
            Some(QuadInt::new(ai?, bi?))
        } else {
            None
        }
    }
}

fn int_to_i128(n: &BigInt) -> Option<i128> {
    use num_traits::ToPrimitive;
    n.to_i128()
}

pub fn quadint_xy(e: &QuadInt, ring: &RingSpec) -> KElem {
    if ring.half() {
        KElem::new(rat_frac(2 * e.a - e.b, 2), rat_frac(e.b, 2))
    } else {
        KElem::new(rat(e.a), rat(e.b))
    }
}

/// Interior point `(z, r)` of upper half-space, stored with `t = r^2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HPoint {
    pub z: KElem,
    pub t: Rat,
}

impl HPoint {
    pub fn new(z: KElem, t: Rat) -> Self {
        HPoint { z, t }
    }
}

/// Boundary point: infinity or an element of the field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cusp {
    Infinity,
    Finite(KElem),
}

/// Element of `PSL_2(O_{-m})`, stored with a canonical choice of the
/// sign: the first nonzero entry in reading order `(a, b, c, d)` has
/// lexicographically positive ring coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PslMatrix {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

impl PslMatrix {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Self {
        let mut g = PslMatrix { a, b, c, d };
        g.canonicalize();
        g
    }

    pub fn identity() -> Self {
        PslMatrix::new(QuadInt::ONE, QuadInt::ZERO, QuadInt::ZERO, QuadInt::ONE)
    }

    fn canonicalize(&mut self) {
        let flip = [self.a, self.b, self.c, self.d]
            .iter()
            .find(|e| !e.is_zero())
            .map(|e| !e.lex_positive())
            .unwrap_or(false);
        if flip {
            self.a = self.a.neg();
            self.b = self.b.neg();
            self.c = self.c.neg();
            self.d = self.d.neg();
        }
    }

    pub fn det(&self, ring: &RingSpec) -> QuadInt {
        self.a.mul(&self.d, ring).sub(&self.b.mul(&self.c, ring))
    }

    pub fn mul(&self, o: &PslMatrix, ring: &RingSpec) -> PslMatrix {
        PslMatrix::new(
            self.a.mul(&o.a, ring).add(&self.b.mul(&o.c, ring)),
            self.a.mul(&o.b, ring).add(&self.b.mul(&o.d, ring)),
            self.c.mul(&o.a, ring).add(&self.d.mul(&o.c, ring)),
            self.c.mul(&o.b, ring).add(&self.d.mul(&o.d, ring)),
        )
    }

    pub fn inv(&self) -> PslMatrix {
        PslMatrix::new(self.d, self.b.neg(), self.c.neg(), self.a)
    }

    pub fn is_identity(&self) -> bool {
        *self == PslMatrix::identity()
    }

    /// Multiplicative order, or 0 if none up to the given cap.
    pub fn order(&self, ring: &RingSpec, cap: u32) -> u32 {
        let mut h = self.clone();
        for k in 1..=cap {
            if h.is_identity() {
                return k;
            }
            h = h.mul(self, ring);
        }
        0
    }

    /// A lattice translation `z -> z + (j + k*omega)` (as a matrix this is
    /// upper triangular with `b = -(j + k*omega)`).
    pub fn translation(j: i128, k: i128) -> PslMatrix {
        PslMatrix::new(
            QuadInt::ONE,
            QuadInt::new(-j, -k),
            QuadInt::ZERO,
            QuadInt::ONE,
        )
    }
}

/// `D = |c z - d|^2 + t |c|^2` for `g` at the interior point.
pub fn height_denominator(g: &PslMatrix, p: &HPoint, ring: &RingSpec) -> Result<Rat, ActionError> {
    if !p.t.is_positive() {
        return Err(ActionError::NotInterior);
    }
    let m = ring.m;
    let c = quadint_xy(&g.c, ring);
    let d = quadint_xy(&g.d, ring);
    let czd = c.mul(&p.z, m).sub(&d);
    Ok(czd.norm(m) + &p.t * c.norm(m))
}

/// Interior action.
pub fn act_interior(g: &PslMatrix, p: &HPoint, ring: &RingSpec) -> Result<HPoint, ActionError> {
    if !p.t.is_positive() {
        return Err(ActionError::NotInterior);
    }
    let m = ring.m;
    let a = quadint_xy(&g.a, ring);
    let b = quadint_xy(&g.b, ring);
    let c = quadint_xy(&g.c, ring);
    let d = quadint_xy(&g.d, ring);
    let czd = c.mul(&p.z, m).sub(&d);
    let dd = czd.norm(m) + &p.t * c.norm(m);
    let num = d
        .conj()
        .sub(&c.conj().mul(&p.z.conj(), m))
        .mul(&a.mul(&p.z, m).sub(&b), m)
        .sub(&c.conj().mul(&a, m).scale(&p.t));
    Ok(HPoint::new(
        KElem::new(num.x / &dd, num.y / &dd),
        &p.t / (&dd * &dd),
    ))
}

/// Boundary action by Moebius transformations in the same convention.
pub fn act_cusp(g: &PslMatrix, s: &Cusp, ring: &RingSpec) -> Cusp {
    let m = ring.m;
    let a = quadint_xy(&g.a, ring);
    let b = quadint_xy(&g.b, ring);
    let c = quadint_xy(&g.c, ring);
    let d = quadint_xy(&g.d, ring);
    match s {
        Cusp::Infinity => {
            if g.c.is_zero() {
                Cusp::Infinity
            } else {
                Cusp::Finite(a.div(&c.neg(), m))
            }
        }
        Cusp::Finite(z) => {
            let den = c.neg().mul(z, m).add(&d);
            if den.is_zero() {
                Cusp::Infinity
            } else {
                Cusp::Finite(a.mul(z, m).sub(&b).div(&den, m))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m13() -> RingSpec {
        RingSpec::new(13).unwrap()
    }

    #[test]
    fn identity_fixes() {
        let r = m13();
        let p = HPoint::new(KElem::new(rat_frac(1, 3), rat_frac(2, 7)), rat_frac(3, 5));
        assert_eq!(act_interior(&PslMatrix::identity(), &p, &r).unwrap(), p);
    }

    #[test]
    fn u_translates_by_minus_omega() {
        // U = (1, omega; 0, 1) acts as a vertical translation by -omega
        let r = m13();
        let u = PslMatrix::new(QuadInt::ONE, QuadInt::OMEGA, QuadInt::ZERO, QuadInt::ONE);
        let p = HPoint::new(KElem::new(rat_frac(1, 2), rat_frac(1, 3)), rat(2));
        let q = act_interior(&u, &p, &r).unwrap();
        assert_eq!(q.t, p.t);
        assert_eq!(q.z.x, p.z.x);
        assert_eq!(q.z.y, &p.z.y - rat(1));
    }

    #[test]
    fn j_fixes_apex() {
        // J = (0, 1; -1, 0) fixes (0, 0, 1): D = 1 there
        let r = m13();
        let j = PslMatrix::new(
            QuadInt::ZERO,
            QuadInt::ONE,
            QuadInt::new(-1, 0),
            QuadInt::ZERO,
        );
        let p = HPoint::new(KElem::zero(), rat(1));
        assert_eq!(act_interior(&j, &p, &r).unwrap(), p);
    }

    #[test]
    fn group_law_random() {
        let r = RingSpec::new(10).unwrap();
        // random-ish products of generators acting on points
        let gens = [
            PslMatrix::new(QuadInt::ONE, QuadInt::OMEGA, QuadInt::ZERO, QuadInt::ONE),
            PslMatrix::new(QuadInt::ONE, QuadInt::ONE, QuadInt::ZERO, QuadInt::ONE),
            PslMatrix::new(
                QuadInt::ZERO,
                QuadInt::ONE,
                QuadInt::new(-1, 0),
                QuadInt::ZERO,
            ),
        ];
        let mut state = 99u64;
        let mut rnd = |k: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % k
        };
        for _ in 0..500 {
            let mut g = PslMatrix::identity();
            let mut h = PslMatrix::identity();
            for _ in 0..4 {
                g = g.mul(&gens[rnd(3) as usize], &r);
                h = h.mul(&gens[rnd(3) as usize], &r);
            }
            let p = HPoint::new(
                KElem::new(rat_frac(rnd(7) as i128, 5), rat_frac(rnd(7) as i128, 3)),
                rat_frac(1 + rnd(5) as i128, 3),
            );
            let lhs = act_interior(&g, &act_interior(&h, &p, &r).unwrap(), &r).unwrap();
            let rhs = act_interior(&g.mul(&h, &r), &p, &r).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(g.det(&r), QuadInt::ONE);
        }
    }

    #[test]
    fn canonical_sign_idempotent() {
        let r = m13();
        let g = PslMatrix::new(
            QuadInt::new(-2, -1),
            QuadInt::new(2, -1),
            QuadInt::new(-4, 0),
            QuadInt::new(-2, -1),
        );
        let h = PslMatrix::new(g.a.neg(), g.b.neg(), g.c.neg(), g.d.neg());
        assert_eq!(g, h);
        let _ = r;
    }

    #[test]
    fn cusp_action_matches_interior_limit() {
        // act_cusp agrees with the z-part of act_interior as t -> 0 for
        // rational boundary points (checked symbolically: the interior
        // formula at t=0 is (az-b)(conj(d-cz))/|cz-d|^2 = (az-b)/(d-cz))
        let r = m13();
        let g = PslMatrix::new(
            QuadInt::new(1, 0),
            QuadInt::new(0, 1),
            QuadInt::new(1, 0),
            QuadInt::new(1, 1),
        );
        assert_eq!(g.det(&r), QuadInt::ONE);
        for (zx, zy) in [(0i128, 0i128), (1, 2), (-3, 1), (5, -2)] {
            let z = KElem::new(rat_frac(zx, 4), rat_frac(zy, 4));
            let m = r.m;
            let a = quadint_xy(&g.a, &r);
            let b = quadint_xy(&g.b, &r);
            let c = quadint_xy(&g.c, &r);
            let d = quadint_xy(&g.d, &r);
            let den = d.sub(&c.mul(&z, m));
            if den.is_zero() {
                continue;
            }
            let expect = a.mul(&z, m).sub(&b).div(&den, m);
            match act_cusp(&g, &Cusp::Finite(z), &r) {
                Cusp::Finite(w) => assert_eq!(w, expect),
                Cusp::Infinity => panic!(),
            }
        }
    }

    #[test]
    fn upper_triangular_fixes_infinity() {
        let r = m13();
        let u = PslMatrix::new(QuadInt::ONE, QuadInt::OMEGA, QuadInt::ZERO, QuadInt::ONE);
        assert_eq!(act_cusp(&u, &Cusp::Infinity, &r), Cusp::Infinity);
    }

    #[test]
    fn height_denominator_values() {
        let r = RingSpec::new(5).unwrap();
        let p = HPoint::new(KElem::zero(), rat(1));
        // bottom row (1, 0): D = |z|^2 + t = 1 at (0,0,1)
        let g = PslMatrix::new(
            QuadInt::ZERO,
            QuadInt::ONE,
            QuadInt::new(-1, 0),
            QuadInt::ZERO,
        );
        assert_eq!(height_denominator(&g, &p, &r).unwrap(), rat(1));
        // translation: D = 1 always
        let u = PslMatrix::translation(3, -2);
        assert_eq!(height_denominator(&u, &p, &r).unwrap(), rat(1));
    }
}
