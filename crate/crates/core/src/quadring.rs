//! Arithmetic in the imaginary quadratic orders `O_{-m} = Z[omega]` and
//! their ideals.
//!
//! Elements are written `a + b*omega` with `omega = sqrt(-m)` for
//! `m = 1, 2 mod 4` and `omega = -1/2 + sqrt(-m)/2` for `m = 3 mod 4`.
//! Ideals are represented by a Hermite-normal-form Z-basis inside the
//! basis `{1, omega}`; that is enough for the queries the geometry needs
//! (norms, equality, unimodularity, principality of small-norm ideals).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("m must be square-free, got {0}")]
    NotSquareFree(u64),
    #[error("ideal generated by the zero pair")]
    ZeroPair,
}

/// Which generator `omega` the ring uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaKind {
    /// `omega = sqrt(-m)`, for `m = 1, 2 mod 4`.
    SqrtM,
    /// `omega = -1/2 + sqrt(-m)/2`, for `m = 3 mod 4`.
    HalfPlusSqrtM,
}

/// The ring `O_{-m}` itself: `m`, the omega convention and the discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub m: u64,
    pub omega_kind: OmegaKind,
    pub discriminant: i64,
}

fn square_free(mut n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn new(m: u64) -> Result<Self, RingError> {
        if m == 0 || !square_free(m) {
            return Err(RingError::NotSquareFree(m));
        }
        let half = m % 4 == 3;
        Ok(RingSpec {
            m,
            omega_kind: if half {
                OmegaKind::HalfPlusSqrtM
            } else {
                OmegaKind::SqrtM
            },
            discriminant: if half { -(m as i64) } else { -4 * m as i64 },
        })
    }

    pub fn half(&self) -> bool {
        self.omega_kind == OmegaKind::HalfPlusSqrtM
    }

    /// `omega * omega = -m` or `-omega - (1+m)/4`.
    fn omega_sq_coeffs(&self) -> (i128, i128) {
        if self.half() {
            (-((1 + self.m as i128) / 4), -1)
        } else {
            (-(self.m as i128), 0)
        }
    }

    /// norm-form coefficient: `N(a + b w) = a^2 + c b^2` or `a^2 - ab + c b^2`.
    pub fn norm_c(&self) -> i128 {
        if self.half() {
            (1 + self.m as i128) / 4
        } else {
            self.m as i128
        }
    }

    /// All ring elements of the given norm.
    pub fn elements_of_norm(&self, n: i128) -> Vec<QuadInt> {
        let mut out = Vec::new();
        if n < 0 {
            return out;
        }
        if n == 0 {
            out.push(QuadInt::new(0, 0));
            return out;
        }
        let m = self.m as i128;
        if self.half() {
            // 4n = (2a - b)^2 + m b^2
            let bb = int_sqrt(4 * n / m) + 1;
            for b in -bb..=bb {
                let rem = 4 * n - m * b * b;
                if rem < 0 {
                    continue;
                }
                let s = int_sqrt(rem);
                if s * s == rem {
                    for t in [s, -s] {
                        if (t + b) % 2 == 0 {
                            out.push(QuadInt::new((t + b) / 2, b));
                        }
                        if s == 0 {
                            break;
                        }
                    }
                }
            }
        } else {
            let bb = int_sqrt(n / m) + 1;
            for b in -bb..=bb {
                let rem = n - m * b * b;
                if rem < 0 {
                    continue;
                }
                let s = int_sqrt(rem);
                if s * s == rem {
                    for t in [s, -s] {
                        out.push(QuadInt::new(t, b));
                        if s == 0 {
                            break;
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Class number of the maximal order, by counting reduced binary
    /// quadratic forms of the field discriminant.
    pub fn class_group_order(&self) -> u64 {
        let d = self.discriminant;
        let mut count = 0u64;
        let mut a = 1i64;
        while a * a <= -d / 3 + 1 {
            for b in -a + 1..=a {
                let c4 = b * b - d;
                if c4 % (4 * a) == 0 {
                    let c = c4 / (4 * a);
                    if c >= a && !(b < 0 && (b == -a || a == c)) {
                        count += 1;
                    }
                }
            }
            a += 1;
        }
        count
    }
}

pub(crate) fn int_sqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Element `a + b*omega` of `O_{-m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i128,
    pub b: i128,
}

impl QuadInt {
    pub const fn new(a: i128, b: i128) -> Self {
        QuadInt { a, b }
    }
    pub const ZERO: QuadInt = QuadInt::new(0, 0);
    pub const ONE: QuadInt = QuadInt::new(1, 0);
    pub const OMEGA: QuadInt = QuadInt::new(0, 1);

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn norm(&self, ring: &RingSpec) -> i128 {
        let c = ring.norm_c();
        if ring.half() {
            self.a * self.a - self.a * self.b + c * self.b * self.b
        } else {
            self.a * self.a + c * self.b * self.b
        }
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(self.a + o.a, self.b + o.b)
    }
    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(self.a - o.a, self.b - o.b)
    }
    pub fn neg(&self) -> QuadInt {
        QuadInt::new(-self.a, -self.b)
    }

    pub fn mul(&self, o: &QuadInt, ring: &RingSpec) -> QuadInt {
        let (w2c, w2b) = ring.omega_sq_coeffs();
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2
        let bd = self.b * o.b;
        QuadInt::new(
            self.a * o.a + w2c * bd,
            self.a * o.b + self.b * o.a + w2b * bd,
        )
    }

    pub fn conj(&self, ring: &RingSpec) -> QuadInt {
        if ring.half() {
            // conj(omega) = -1 - omega
            QuadInt::new(self.a - self.b, -self.b)
        } else {
            QuadInt::new(self.a, -self.b)
        }
    }

    /// Lexicographic sign canonicalization: true if this element (when it is
    /// the first nonzero entry) already has `(a, b)` lexicographically
    /// positive.
    pub(crate) fn lex_positive(&self) -> bool {
        self.a > 0 || (self.a == 0 && self.b > 0)
    }
}

/// Ideal of `O_{-m}` as an upper-triangular HNF Z-basis `{(g, 0), (h, k)}`
/// meaning the module spanned by `g` and `h + k*omega`, with
/// `g, k > 0` and `0 <= h < g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OIdeal {
    pub g: i128,
    pub h: i128,
    pub k: i128,
}

impl OIdeal {
    pub fn norm(&self) -> i128 {
        self.g * self.k
    }
}

fn hnf_two_generators(vs: &[(i128, i128)]) -> Option<OIdeal> {
    // HNF of the Z-span of the integer pairs (coefficients of 1, omega).
    let mut rows: Vec<(i128, i128)> = vs.iter().copied().filter(|v| *v != (0, 0)).collect();
    if rows.is_empty() {
        return None;
    }
    // reduce second coordinate to a single pivot
    loop {
        let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].1 != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by_key(|&i| rows[i].1.abs());
        let p = nz[0];
        let (pa, pb) = rows[p];
        for &i in &nz[1..] {
            let q = rows[i].1.div_euclid(pb);
            rows[i].0 -= q * pa;
            rows[i].1 -= q * pb;
        }
    }
    let piv2 = (0..rows.len()).find(|&i| rows[i].1 != 0);
    // gcd of first coordinates among omega-free rows
    let mut g: i128 = 0;
    for r in rows.iter().filter(|r| r.1 == 0) {
        g = gcd_i128(g, r.0);
    }
    let (mut h, k) = match piv2 {
        Some(i) => {
            let (mut h, mut k) = rows[i];
            if k < 0 {
                h = -h;
                k = -k;
            }
            (h, k)
        }
        None => return None, // rank-1 module: not an ideal of the order
    };
    if g == 0 {
        return None;
    }
    h = h.rem_euclid(g);
    Some(OIdeal { g, h, k })
}

/// HNF of the ideal `c O + d O`; errors on the zero pair.
pub fn ideal_from_pair(c: &QuadInt, d: &QuadInt, ring: &RingSpec) -> Result<OIdeal, RingError> {
    if c.is_zero() && d.is_zero() {
        return Err(RingError::ZeroPair);
    }
    let mut gens: Vec<(i128, i128)> = Vec::with_capacity(4);
    for e in [c, d] {
        if !e.is_zero() {
            gens.push((e.a, e.b));
            let ew = e.mul(&QuadInt::OMEGA, ring);
            gens.push((ew.a, ew.b));
        }
    }
    hnf_two_generators(&gens).ok_or(RingError::ZeroPair)
}

/// `c O + d O = O`?
pub fn is_unimodular_pair(c: &QuadInt, d: &QuadInt, ring: &RingSpec) -> Result<bool, RingError> {
    Ok(ideal_from_pair(c, d, ring)?.norm() == 1)
}

/// Whether the ideal is principal: exhaustive search over the finitely many
/// elements whose norm equals the ideal norm.
pub fn ideal_class_is_principal(ideal: &OIdeal, ring: &RingSpec) -> bool {
    let n = ideal.norm();
    for x in ring.elements_of_norm(n) {
        if let Ok(i2) = ideal_from_pair(&x, &QuadInt::ZERO, ring) {
            if i2 == *ideal {
                return true;
            }
        }
    }
    false
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Solve `a0*d - b0*c = 1` over the ring; `None` when the pair is not
/// unimodular.
pub fn solve_bezout(c: &QuadInt, d: &QuadInt, ring: &RingSpec) -> Option<(QuadInt, QuadInt)> {
    #[derive(Clone)]
    struct Row {
        v: (i128, i128),
        p: QuadInt, // coefficient of c
        q: QuadInt, // coefficient of d
    }
    let mut rows: Vec<Row> = Vec::new();
    for (e, is_d) in [(c, false), (d, true)] {
        if e.is_zero() {
            continue;
        }
        for coef in [QuadInt::ONE, QuadInt::OMEGA] {
            let v = e.mul(&coef, ring);
            rows.push(Row {
                v: (v.a, v.b),
                p: if is_d { QuadInt::ZERO } else { coef },
                q: if is_d { coef } else { QuadInt::ZERO },
            });
        }
    }
    let addrow = |r1: &mut Row, r2: &Row, qq: i128| {
        r1.v.0 -= qq * r2.v.0;
        r1.v.1 -= qq * r2.v.1;
        r1.p = r1.p.sub(&QuadInt::new(qq * r2.p.a, qq * r2.p.b));
        r1.q = r1.q.sub(&QuadInt::new(qq * r2.q.a, qq * r2.q.b));
    };
    // clear the omega column down to one pivot
    loop {
        let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].v.1 != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by_key(|&i| rows[i].v.1.abs());
        let p = nz[0];
        for &i in &nz[1..] {
            let qq = rows[i].v.1.div_euclid(rows[p].v.1);
            let rp = rows[p].clone();
            addrow(&mut rows[i], &rp, qq);
        }
    }
    // gcd-reduce the integer column among omega-free rows
    loop {
        let mut nz: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].v.1 == 0 && rows[i].v.0 != 0)
            .collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by_key(|&i| rows[i].v.0.abs());
        let p = nz[0];
        for &i in &nz[1..] {
            let qq = rows[i].v.0.div_euclid(rows[p].v.0);
            let rp = rows[p].clone();
            addrow(&mut rows[i], &rp, qq);
        }
    }
    let piv = rows.iter().find(|r| r.v.1 == 0 && r.v.0 != 0)?;
    for sgn in [1i128, -1] {
        if piv.v.0 == sgn {
            // sgn*(P c + Q d) = 1 with P = piv.p, Q = piv.q
            let p = QuadInt::new(sgn * piv.p.a, sgn * piv.p.b);
            let q = QuadInt::new(sgn * piv.q.a, sgn * piv.q.b);
            return Some((q, p.neg()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let r5 = RingSpec::new(5).unwrap();
        assert_eq!(QuadInt::new(1, 0).norm(&r5), 1);
        assert_eq!(QuadInt::new(0, 1).norm(&r5), 5);
        let r15 = RingSpec::new(15).unwrap();
        assert_eq!(QuadInt::new(0, 1).norm(&r15), 4);
    }

    #[test]
    fn square_free_check() {
        assert!(RingSpec::new(4).is_err());
        assert!(RingSpec::new(13).is_ok());
    }

    #[test]
    fn ideal_norms() {
        let r5 = RingSpec::new(5).unwrap();
        let i1 = ideal_from_pair(&QuadInt::new(1, 0), &QuadInt::ZERO, &r5).unwrap();
        assert_eq!(i1.norm(), 1);
        // (2, 1 + omega): the nonprincipal norm-2 ideal
        let i2 = ideal_from_pair(&QuadInt::new(2, 0), &QuadInt::new(1, 1), &r5).unwrap();
        assert_eq!(i2.norm(), 2);
        assert!(!ideal_class_is_principal(&i2, &r5));
        assert!(!is_unimodular_pair(&QuadInt::new(2, 0), &QuadInt::new(1, 1), &r5).unwrap());
        assert!(is_unimodular_pair(&QuadInt::new(2, 0), &QuadInt::new(1, 0), &r5).unwrap());
    }

    #[test]
    fn ideal_m13_pair_from_matrix_e() {
        // the pair (omega, 6) occurring in one of the m=13 matrices
        let r13 = RingSpec::new(13).unwrap();
        let i = ideal_from_pair(&QuadInt::new(0, 1), &QuadInt::new(6, 0), &r13).unwrap();
        // brute-force oracle: row-reduce the 4-generator module directly
        assert_eq!(i.norm(), brute_force_ideal_norm(&QuadInt::new(0, 1), &QuadInt::new(6, 0), &r13));
    }

    fn brute_force_ideal_norm(c: &QuadInt, d: &QuadInt, ring: &RingSpec) -> i128 {
        // count lattice points of the span inside a box modulo a big modulus
        let mut gens = vec![];
        for e in [c, d] {
            gens.push((e.a, e.b));
            let w = e.mul(&QuadInt::OMEGA, ring);
            gens.push((w.a, w.b));
        }
        // index of the sublattice = gcd of 2x2 minors
        let mut g = 0i128;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let det = gens[i].0 * gens[j].1 - gens[i].1 * gens[j].0;
                g = gcd_i128(g, det);
            }
        }
        g
    }

    #[test]
    fn m15_nonprincipal() {
        let r15 = RingSpec::new(15).unwrap();
        let i = ideal_from_pair(&QuadInt::new(2, 0), &QuadInt::new(0, 1), &r15).unwrap();
        assert_eq!(i.norm(), 2);
        assert!(!ideal_class_is_principal(&i, &r15));
    }

    #[test]
    fn class_numbers() {
        assert_eq!(RingSpec::new(1).unwrap().class_group_order(), 1);
        assert_eq!(RingSpec::new(5).unwrap().class_group_order(), 2);
        assert_eq!(RingSpec::new(6).unwrap().class_group_order(), 2);
        assert_eq!(RingSpec::new(10).unwrap().class_group_order(), 2);
        assert_eq!(RingSpec::new(13).unwrap().class_group_order(), 2);
        assert_eq!(RingSpec::new(15).unwrap().class_group_order(), 2);
        assert_eq!(RingSpec::new(23).unwrap().class_group_order(), 3);
    }

    #[test]
    fn bezout_solutions() {
        let r5 = RingSpec::new(5).unwrap();
        for (c, d) in [
            (QuadInt::new(0, 2), QuadInt::new(-4, 1)),
            (QuadInt::new(2, 0), QuadInt::new(0, 1)),
            (QuadInt::new(0, 1), QuadInt::new(3, 0)),
            (QuadInt::new(1, 0), QuadInt::ZERO),
        ] {
            let (a0, b0) = solve_bezout(&c, &d, &r5).unwrap();
            let det = a0.mul(&d, &r5).sub(&b0.mul(&c, &r5));
            assert_eq!(det, QuadInt::ONE);
        }
        assert!(solve_bezout(&QuadInt::new(2, 0), &QuadInt::new(1, 1), &r5).is_none());
    }

    #[test]
    fn norm_multiplicative_random() {
        let r13 = RingSpec::new(13).unwrap();
        let r15 = RingSpec::new(15).unwrap();
        let mut state = 0x2545f4914f6cdd1du64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 201) as i128 - 100
        };
        for _ in 0..500 {
            let x = QuadInt::new(rnd(), rnd());
            let y = QuadInt::new(rnd(), rnd());
            for r in [&r13, &r15] {
                assert_eq!(x.mul(&y, r).norm(r), x.norm(r) * y.norm(r));
            }
        }
    }

    #[test]
    fn ideal_pair_swap_and_unit_invariance() {
        let r = RingSpec::new(13).unwrap();
        let c = QuadInt::new(3, 1);
        let d = QuadInt::new(-2, 2);
        let i1 = ideal_from_pair(&c, &d, &r).unwrap();
        let i2 = ideal_from_pair(&d, &c, &r).unwrap();
        let i3 = ideal_from_pair(&c.neg(), &d, &r).unwrap();
        assert_eq!(i1, i2);
        assert_eq!(i1, i3);
    }

    #[test]
    fn unimodular_implies_principal() {
        let r = RingSpec::new(10).unwrap();
        for a in -4i128..=4 {
            for b in -2i128..=2 {
                let c = QuadInt::new(a, b);
                let d = QuadInt::new(1 - a, b);
                if c.is_zero() && d.is_zero() {
                    continue;
                }
                let ideal = ideal_from_pair(&c, &d, &r).unwrap();
                if ideal.norm() == 1 {
                    assert!(ideal_class_is_principal(&ideal, &r));
                }
            }
        }
    }
}
