//! The hemisphere floor: exact enumeration of unimodular hemispheres,
//! their upper envelope over a fundamental strip as a power diagram, the
//! singular points, and extraction of the raw cell decomposition.
//!
//! All heights are compared through the affine parts of
//! `t_h(x, y) = r^2 - (x - cx)^2 - m (y - cy)^2`: the quadratic terms agree
//! for every hemisphere, so domination regions are convex polygons cut by
//! rational radical lines, and every vertex of the arrangement has exact
//! rational coordinates.
//!
//! Correctness certificate: the computed envelope over the check window is
//! the true floor once (a) every arrangement vertex has height `>= 0`,
//! with equality exactly at singular cusps, and (b) `1/(B+1)` is below the
//! smallest positive vertex height, where `B` is the norm ceiling.  A
//! hemisphere that beats the envelope anywhere must beat it at a vertex,
//! and new hemispheres have height below `1/(B+1)`; at the singular points
//! themselves no unimodular hemisphere is ever positive.

use crate::halfspace::{quadint_xy, rat, rat_frac, KElem, Rat};
use crate::quadring::{ideal_class_is_principal, ideal_from_pair, is_unimodular_pair, QuadInt, RingSpec};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FloorError {
    #[error("norm ceiling {0} exceeded without a stable envelope")]
    BoundExceeded(u64),
    #[error("two hemispheres are tangent at positive height near ({0}, {1})")]
    DegenerateArrangement(String, String),
}

/// Hemisphere `S_{mu,lambda}`: center `lambda/mu`, squared radius
/// `1/N(mu)`, for a unimodular pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hemisphere {
    pub lambda: QuadInt,
    pub mu: QuadInt,
    pub center: KElem,
    pub radius_sq: Rat,
}

impl Hemisphere {
    pub fn new(lambda: QuadInt, mu: QuadInt, ring: &RingSpec) -> Self {
        let n = mu.norm(ring);
        let num = lambda.mul(&mu.conj(ring), ring);
        let nx = quadint_xy(&num, ring);
        Hemisphere {
            lambda,
            mu,
            center: KElem::new(nx.x / rat(n), nx.y / rat(n)),
            radius_sq: rat_frac(1, n),
        }
    }

    /// affine part `(A, B, C)` of the height function
    pub fn carrier(&self, m: u64) -> Carrier {
        Carrier {
            a: rat(2) * &self.center.x,
            b: rat(2 * m as i128) * &self.center.y,
            c: &self.radius_sq - self.center.norm(m),
        }
    }

    pub fn height_at(&self, p: &KElem, m: u64) -> Rat {
        &self.radius_sq - p.sub(&self.center).norm(m)
    }
}

/// `t = a x + b y + c - x^2 - m y^2` on the carrier sphere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Carrier {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Carrier {
    pub fn height_at(&self, p: &KElem, m: u64) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c - p.norm(m)
    }
    /// center and squared radius back from the affine data
    pub fn center(&self, m: u64) -> KElem {
        KElem::new(&self.a / rat(2), &self.b / rat(2 * m as i128))
    }
    pub fn radius_sq(&self, m: u64) -> Rat {
        let c = self.center(m);
        &self.c + c.norm(m)
    }
}

/// Fundamental strip data: the translation period cell and the enlarged
/// enumeration/certificate windows.
#[derive(Clone, Debug)]
pub struct Strip {
    /// period in the y-coordinate (1, or 1/2 when omega is half-integral)
    pub y_period: Rat,
    pub enum_margin: Rat,
    pub cert_margin: Rat,
}

impl Strip {
    pub fn for_ring(ring: &RingSpec) -> Self {
        Strip {
            y_period: if ring.half() { rat_frac(1, 2) } else { rat(1) },
            enum_margin: rat_frac(11, 4),
            cert_margin: rat_frac(15, 8),
        }
    }
    pub fn enum_box(&self) -> (Rat, Rat, Rat, Rat) {
        (
            -self.enum_margin.clone(),
            rat(1) + &self.enum_margin,
            -self.enum_margin.clone(),
            &self.y_period + &self.enum_margin,
        )
    }
    pub fn cert_box(&self) -> (Rat, Rat, Rat, Rat) {
        (
            -self.cert_margin.clone(),
            rat(1) + &self.cert_margin,
            -self.cert_margin.clone(),
            &self.y_period + &self.cert_margin,
        )
    }
}

/// All hemispheres with `N(mu) <= bound` and center inside the box.
pub fn enumerate_hemispheres(
    ring: &RingSpec,
    bound: u64,
    x0: &Rat,
    x1: &Rat,
    y0: &Rat,
    y1: &Rat,
) -> Vec<Hemisphere> {
    let m = ring.m;
    let mut seen: BTreeSet<(Rat, Rat, Rat)> = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=bound as i128 {
        for mu in ring.elements_of_norm(n) {
            if !mu.lex_positive() {
                continue;
            }
            // lambda ranges over the ring-coefficient box of mu * corners
            let mx = quadint_xy(&mu, ring);
            let corners = [
                KElem::new(x0.clone(), y0.clone()),
                KElem::new(x1.clone(), y0.clone()),
                KElem::new(x0.clone(), y1.clone()),
                KElem::new(x1.clone(), y1.clone()),
            ];
            let pts: Vec<KElem> = corners.iter().map(|c| mx.mul(c, m)).collect();
            let (amin, amax, bmin, bmax) = if ring.half() {
                let asv: Vec<Rat> = pts.iter().map(|p| &p.x + &p.y).collect();
                let bsv: Vec<Rat> = pts.iter().map(|p| rat(2) * &p.y).collect();
                (
                    rat_floor(asv.iter().min().unwrap()) - 1,
                    rat_ceil(asv.iter().max().unwrap()) + 1,
                    rat_floor(bsv.iter().min().unwrap()) - 1,
                    rat_ceil(bsv.iter().max().unwrap()) + 1,
                )
            } else {
                let xs: Vec<Rat> = pts.iter().map(|p| p.x.clone()).collect();
                let ys: Vec<Rat> = pts.iter().map(|p| p.y.clone()).collect();
                (
                    rat_floor(xs.iter().min().unwrap()) - 1,
                    rat_ceil(xs.iter().max().unwrap()) + 1,
                    rat_floor(ys.iter().min().unwrap()) - 1,
                    rat_ceil(ys.iter().max().unwrap()) + 1,
                )
            };
            for a in amin..=amax {
                for b in bmin..=bmax {
                    let lam = QuadInt::new(a, b);
                    let h = Hemisphere::new(lam, mu, ring);
                    if &h.center.x < x0 || &h.center.x > x1 || &h.center.y < y0 || &h.center.y > y1
                    {
                        continue;
                    }
                    let key = (h.center.x.clone(), h.center.y.clone(), h.radius_sq.clone());
                    if seen.contains(&key) {
                        continue;
                    }
                    if is_unimodular_pair(&mu, &lam, ring).unwrap_or(false) {
                        seen.insert(key);
                        out.push(h);
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| {
        q.radius_sq
            .cmp(&p.radius_sq)
            .then(p.center.x.cmp(&q.center.x))
            .then(p.center.y.cmp(&q.center.y))
    });
    out
}

pub(crate) fn rat_floor(r: &Rat) -> i128 {
    r.floor().numer().to_i128().expect("coordinate in range")
}
pub(crate) fn rat_ceil(r: &Rat) -> i128 {
    r.ceil().numer().to_i128().expect("coordinate in range")
}

/// convex polygon, counterclockwise
pub type Polygon = Vec<KElem>;

/// clip by the half-plane `a x + b y + c >= 0`
pub fn clip_polygon(poly: &Polygon, a: &Rat, b: &Rat, c: &Rat) -> Polygon {
    if poly.is_empty() {
        return vec![];
    }
    let vals: Vec<Rat> = poly.iter().map(|p| a * &p.x + b * &p.y + c).collect();
    let n = poly.len();
    let mut out: Polygon = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        if !vals[i].is_negative() {
            out.push(poly[i].clone());
        }
        if (vals[i].is_positive() && vals[j].is_negative())
            || (vals[i].is_negative() && vals[j].is_positive())
        {
            let t = &vals[i] / (&vals[i] - &vals[j]);
            out.push(KElem::new(
                &poly[i].x + &t * (&poly[j].x - &poly[i].x),
                &poly[i].y + &t * (&poly[j].y - &poly[i].y),
            ));
        }
    }
    let mut res: Polygon = Vec::new();
    for p in out {
        if res.last() != Some(&p) {
            res.push(p);
        }
    }
    if res.len() > 1 && res.first() == res.last() {
        res.pop();
    }
    if res.len() >= 3 {
        res
    } else {
        vec![]
    }
}

pub fn polygon_area2(poly: &Polygon) -> Rat {
    let mut s = Rat::zero();
    let n = poly.len();
    for i in 0..n {
        let j = (i + 1) % n;
        s += &poly[i].x * &poly[j].y - &poly[j].x * &poly[i].y;
    }
    s
}

/// power-diagram cells of the hemispheres inside the box; only pairs whose
/// influence ellipses overlap can cut each other on the true floor
pub fn compute_cells(
    ring: &RingSpec,
    hemis: &[Hemisphere],
    bx: &(Rat, Rat, Rat, Rat),
) -> Vec<Option<Polygon>> {
    let m = ring.m;
    let carriers: Vec<Carrier> = hemis.iter().map(|h| h.carrier(m)).collect();
    let rat_f = |r: &Rat| -> f64 {
        r.numer().to_f64().unwrap_or(f64::MAX) / r.denom().to_f64().unwrap_or(1.0)
    };
    // float shadows for conservative pruning; exact checks run only for
    // pairs the floats cannot separate
    let fx: Vec<f64> = hemis.iter().map(|h| rat_f(&h.center.x)).collect();
    let fy: Vec<f64> = hemis.iter().map(|h| rat_f(&h.center.y)).collect();
    let fr: Vec<f64> = hemis
        .iter()
        .map(|h| rat_f(&h.radius_sq).sqrt())
        .collect();
    let mf = m as f64;
    // spatial grid on centers
    let cell = 0.5f64;
    let gridkey = |x: f64, y: f64| -> (i64, i64) {
        ((x / cell).floor() as i64, (y / cell).floor() as i64)
    };
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for i in 0..hemis.len() {
        grid.entry(gridkey(fx[i], fy[i])).or_default().push(i);
    }
    let (x0, x1, y0, y1) = bx;
    let base: Polygon = vec![
        KElem::new(x0.clone(), y0.clone()),
        KElem::new(x1.clone(), y0.clone()),
        KElem::new(x1.clone(), y1.clone()),
        KElem::new(x0.clone(), y1.clone()),
    ];
    let mut out: Vec<Option<Polygon>> = Vec::with_capacity(hemis.len());
    let reach = 5i64;
    for (i, h) in hemis.iter().enumerate() {
        let mut poly = base.clone();
        let (gx, gy) = gridkey(fx[i], fy[i]);
        'clip: for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(list) = grid.get(&(gx + dx, gy + dy)) {
                    for &j in list {
                        if j == i {
                            continue;
                        }
                        // float prune: centers clearly farther than the
                        // radius sum cannot interact on the floor
                        let ddx = fx[i] - fx[j];
                        let ddy = fy[i] - fy[j];
                        let dist = (ddx * ddx + mf * ddy * ddy).sqrt();
                        if dist > fr[i] + fr[j] + 1e-6 {
                            continue;
                        }
                        let g = &hemis[j];
                        // exact prefilter
                        let dd = h.center.sub(&g.center).norm(m);
                        let e = &dd - &h.radius_sq - &g.radius_sq;
                        if e.is_positive() && &e * &e > rat(4) * &h.radius_sq * &g.radius_sq {
                            continue;
                        }
                        let a = &carriers[i].a - &carriers[j].a;
                        let b = &carriers[i].b - &carriers[j].b;
                        let c = &carriers[i].c - &carriers[j].c;
                        poly = clip_polygon(&poly, &a, &b, &c);
                        if poly.is_empty() {
                            break 'clip;
                        }
                    }
                }
            }
        }
        if !poly.is_empty() && polygon_area2(&poly).is_positive() {
            out.push(Some(poly));
        } else {
            out.push(None);
        }
    }
    out
}

/// Interpret an exact boundary point as a cusp `lambda/mu` over the ring.
pub fn cusp_pair_of_point(p: &KElem, ring: &RingSpec) -> (QuadInt, QuadInt) {
    // mu = q (a rational integer) with q*p in O
    let mut q: i128 = 1;
    loop {
        let scaled = KElem::new(&p.x * rat(q), &p.y * rat(q));
        if let Some(lam) = scaled.to_quadint(ring) {
            return (lam, QuadInt::new(q, 0));
        }
        q += 1;
        assert!(q < 1_000_000, "cusp denominator too large");
    }
}

/// Smallest nonzero element norm in the ideal (exhaustive search inside
/// the norm bound given by the generators).
pub fn ideal_min_norm(ideal: &crate::quadring::OIdeal, ring: &RingSpec) -> i128 {
    let (g, h, k) = (ideal.g, ideal.h, ideal.k);
    let mut best = QuadInt::new(g, 0)
        .norm(ring)
        .min(QuadInt::new(h, k).norm(ring));
    // lattice elements (u, w) with w = b*k and u = b*h mod g; for each w
    // the norm is an upward parabola in u, so scan the interval where it
    // can still beat the current minimum
    let m = ring.m as i128;
    let bmax = crate::quadring::int_sqrt(4 * best / m) / k + 2;
    for b in -bmax..=bmax {
        let w = b * k;
        // vertex of the parabola: u = 0, or u = w/2 for half-integral omega
        let u2 = if ring.half() { w } else { 0 };
        let reach = crate::quadring::int_sqrt(best) + 1;
        // smallest u = b*h + a*g in [u2/2 - reach - g, ...]
        let lo = (u2 - 1) / 2 - reach - g.abs();
        let hi = (u2 + 1) / 2 + reach + g.abs();
        let mut u = b * h + ((lo - b * h).div_euclid(g)) * g;
        while u <= hi {
            if u >= lo {
                let e = QuadInt::new(u, w);
                if !e.is_zero() {
                    let n = e.norm(ring);
                    if n < best {
                        best = n;
                    }
                }
            }
            u += g;
        }
    }
    best
}

/// Is the boundary point a singular cusp?  Exact test: the class of the
/// cusp ideal is nontrivial and the minimal nonzero norm in the ideal is
/// at least `N(mu)`, which certifies `|c s - d| >= 1` for every
/// unimodular pair.
pub fn is_singular_point(p: &KElem, ring: &RingSpec) -> bool {
    let (lam, mu) = cusp_pair_of_point(p, ring);
    let ideal = ideal_from_pair(&lam, &mu, ring).expect("nonzero cusp pair");
    if ideal.norm() == 1 || ideal_class_is_principal(&ideal, ring) {
        return false;
    }
    ideal_min_norm(&ideal, ring) >= mu.norm(ring)
}

/// All singular points inside the box: cusps of nonprincipal class reduced
/// into the period cell, then translated across the box.
pub fn singular_points_in_box(
    ring: &RingSpec,
    bx: &(Rat, Rat, Rat, Rat),
    norm_bound: i128,
) -> Vec<KElem> {
    let m = ring.m;
    let y_period = if ring.half() { rat_frac(1, 2) } else { rat(1) };
    let mut reps: BTreeSet<(Rat, Rat)> = BTreeSet::new();
    for n in 2..=norm_bound {
        for mu in ring.elements_of_norm(n) {
            if !mu.lex_positive() {
                continue;
            }
            let bb = n + 2;
            for a in -bb..=bb {
                for b in -bb..=bb {
                    let lam = QuadInt::new(a, b);
                    if lam.is_zero() {
                        continue;
                    }
                    let Ok(ideal) = ideal_from_pair(&lam, &mu, ring) else {
                        continue;
                    };
                    if ideal.norm() == 1 || ideal_class_is_principal(&ideal, ring) {
                        continue;
                    }
                    let s = quadint_xy(&lam, ring).div(&quadint_xy(&mu, ring), m);
                    let r = reduce_mod_lattice(&s, ring);
                    if !reps.contains(&(r.x.clone(), r.y.clone())) && is_singular_point(&r, ring) {
                        reps.insert((r.x, r.y));
                    }
                }
            }
        }
    }
    let (x0, x1, y0, y1) = bx;
    let mut out = vec![];
    for (sx, sy) in reps {
        let s = KElem::new(sx, sy);
        let jr = (rat_floor(&(x0 - &s.x)) - 2, rat_ceil(&(x1 - &s.x)) + 2);
        let kr = (
            rat_floor(&((y0 - &s.y) / &y_period)) - 2,
            rat_ceil(&((y1 - &s.y) / &y_period)) + 2,
        );
        for k in kr.0..=kr.1 {
            for j in jr.0..=jr.1 {
                let t = quadint_xy(&QuadInt::new(j, k), ring);
                let p = s.add(&t);
                if &p.x >= x0 && &p.x <= x1 && &p.y >= y0 && &p.y <= y1 {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// translate into the period cell `[0,1) x [0, y_period)`
pub fn reduce_mod_lattice(p: &KElem, ring: &RingSpec) -> KElem {
    let (j, k) = lattice_offset(p, ring);
    p.add(&quadint_xy(&QuadInt::new(j, k), ring))
}

/// translation `(j, k)` with `p + j + k*omega` inside the period cell
pub fn lattice_offset(p: &KElem, ring: &RingSpec) -> (i128, i128) {
    let y_period = if ring.half() { rat_frac(1, 2) } else { rat(1) };
    let k = -rat_floor(&(&p.y / &y_period));
    let x = if ring.half() {
        &p.x - rat_frac(k, 2)
    } else {
        p.x.clone()
    };
    let j = -rat_floor(&x);
    (j, k)
}

/// A face of the raw floor complex: carrier data plus the exact polygon
/// (counterclockwise).
#[derive(Clone, Debug)]
pub struct Face {
    pub carrier: Carrier,
    pub poly: Polygon,
}

impl Face {
    pub fn height_at(&self, p: &KElem, m: u64) -> Rat {
        self.carrier.height_at(p, m)
    }
}

/// Raw strip cell complex: kept faces (hemisphere center in the period
/// cell) with full exact polygons, all their vertices with heights.
#[derive(Clone, Debug)]
pub struct RawCellComplex {
    pub ring: RingSpec,
    pub norm_bound: u64,
    pub faces: Vec<Face>,
    /// vertex -> height (t = r^2), 0 exactly at singular cusps
    pub vertex_heights: BTreeMap<(Rat, Rat), Rat>,
    pub singular: BTreeSet<(Rat, Rat)>,
}

/// Result of the certified floor computation.
pub struct FloorResult {
    pub hemispheres: Vec<Hemisphere>,
    pub cells: Vec<Option<Polygon>>,
    pub strip: Strip,
    pub norm_bound: u64,
    pub min_positive_height: Rat,
    pub singular_in_box: Vec<KElem>,
}

/// Iteratively raise the norm bound until the envelope is certified.
pub fn compute_floor(
    ring: &RingSpec,
    start_bound: u64,
    ceiling: u64,
) -> Result<FloorResult, FloorError> {
    let strip = Strip::for_ring(ring);
    let m = ring.m;
    let ebox = strip.enum_box();
    let cbox = strip.cert_box();
    let sing = singular_points_in_box(ring, &ebox, 20);
    let singset: BTreeSet<(Rat, Rat)> = sing.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let mut bound = start_bound;
    loop {
        let hemis = enumerate_hemispheres(ring, bound, &ebox.0, &ebox.1, &ebox.2, &ebox.3);
        let cells = compute_cells(ring, &hemis, &ebox);
        // collect vertices with heights; consistency across incident cells
        let mut vh: BTreeMap<(Rat, Rat), Rat> = BTreeMap::new();
        let mut consistent = true;
        for (i, c) in cells.iter().enumerate() {
            let Some(poly) = c else { continue };
            let carrier = hemis[i].carrier(m);
            for p in poly {
                let t = carrier.height_at(p, m);
                let key = (p.x.clone(), p.y.clone());
                if let Some(t0) = vh.get(&key) {
                    if *t0 != t {
                        consistent = false;
                    }
                } else {
                    vh.insert(key, t);
                }
            }
        }
        // check inside the certificate window
        let mut minpos: Option<Rat> = None;
        let mut fails = 0usize;
        for ((x, y), t) in &vh {
            if x < &cbox.0 || x > &cbox.1 || y < &cbox.2 || y > &cbox.3 {
                continue;
            }
            if t.is_negative() {
                fails += 1;
            } else if t.is_zero() {
                if !singset.contains(&(x.clone(), y.clone())) {
                    fails += 1;
                }
            } else if minpos.as_ref().map_or(true, |mp| t < mp) {
                minpos = Some(t.clone());
            }
        }
        // every singular point well inside the certificate window must be a
        // vertex at height zero
        let quarter = rat_frac(1, 4);
        let sing_ok = sing.iter().all(|s| {
            let inside = s.x > &cbox.0 + &quarter
                && s.x < &cbox.1 - &quarter
                && s.y > &cbox.2 + &quarter
                && s.y < &cbox.3 - &quarter;
            !inside || vh.get(&(s.x.clone(), s.y.clone())).map(|t| t.is_zero()) == Some(true)
        });
        let bound_rat = rat_frac(1, bound as i128 + 1);
        let certified = consistent
            && fails == 0
            && sing_ok
            && minpos.as_ref().map_or(false, |mp| &bound_rat < mp);
        if certified {
            return Ok(FloorResult {
                hemispheres: hemis,
                cells,
                strip,
                norm_bound: bound,
                min_positive_height: minpos.unwrap(),
                singular_in_box: sing,
            });
        }
        // raise at least geometrically, and enough to clear the observed
        // minimum positive height when that is the only blocker
        let mut next = bound + (bound / 2).max(2);
        if consistent && fails == 0 && sing_ok {
            if let Some(mp) = &minpos {
                let need = (mp.denom() / mp.numer()).to_u64().unwrap_or(next) + 1;
                next = next.max(need);
            }
        }
        bound = next;
        if bound > ceiling {
            return Err(FloorError::BoundExceeded(ceiling));
        }
    }
}

/// Kept faces (center in the period cell) as the raw cell complex.
pub fn extract_cells(ring: &RingSpec, floor: &FloorResult) -> RawCellComplex {
    let m = ring.m;
    let y_period = &floor.strip.y_period;
    let mut faces = vec![];
    for (i, c) in floor.cells.iter().enumerate() {
        let Some(poly) = c else { continue };
        let h = &floor.hemispheres[i];
        let inx = !h.center.x.is_negative() && h.center.x < rat(1);
        let iny = !h.center.y.is_negative() && &h.center.y < y_period;
        if inx && iny {
            faces.push(Face {
                carrier: h.carrier(m),
                poly: poly.clone(),
            });
        }
    }
    let mut vertex_heights = BTreeMap::new();
    let mut singular = BTreeSet::new();
    for f in &faces {
        for p in &f.poly {
            let t = f.height_at(p, m);
            if t.is_zero() {
                singular.insert((p.x.clone(), p.y.clone()));
            }
            vertex_heights.insert((p.x.clone(), p.y.clone()), t);
        }
    }
    RawCellComplex {
        ring: *ring,
        norm_bound: floor.norm_bound,
        faces,
        vertex_heights,
        singular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_hemisphere_enumeration() {
        let ring = RingSpec::new(5).unwrap();
        let hs = enumerate_hemispheres(&ring, 1, &rat(0), &rat(1), &rat(0), &rat(1));
        // unit hemispheres at the four lattice corners of the period square
        assert_eq!(hs.len(), 4);
        assert!(hs.iter().all(|h| h.radius_sq == rat(1)));
    }

    #[test]
    fn nonunimodular_center_excluded() {
        // (1 + omega, 2) is not unimodular for m = 5: no hemisphere at
        // (1/2, 1/2) with radius_sq 1/4; but (omega, 2) gives (0, 1/2)
        let ring = RingSpec::new(5).unwrap();
        let hs = enumerate_hemispheres(&ring, 4, &rat(0), &rat(1), &rat(0), &rat(1));
        assert!(!hs
            .iter()
            .any(|h| h.center == KElem::new(rat_frac(1, 2), rat_frac(1, 2))));
        assert!(hs
            .iter()
            .any(|h| h.center == KElem::new(rat(0), rat_frac(1, 2))
                && h.radius_sq == rat_frac(1, 4)));
    }

    #[test]
    fn singular_points_m5_m15() {
        let r5 = RingSpec::new(5).unwrap();
        let bx = (rat(0), rat(1), rat(0), rat(1));
        let s5 = singular_points_in_box(&r5, &bx, 12);
        assert!(s5.contains(&KElem::new(rat_frac(1, 2), rat_frac(1, 2))));
        let r1 = RingSpec::new(1).unwrap();
        assert!(singular_points_in_box(&r1, &bx, 12).is_empty());
        let r15 = RingSpec::new(15).unwrap();
        let bx15 = (rat(0), rat(1), rat(0), rat_frac(1, 2));
        let s15 = singular_points_in_box(&r15, &bx15, 12);
        // two singular points per period cell, both genuinely singular
        assert_eq!(s15.len(), 2);
        assert!(is_singular_point(&s15[0], &r15));
        assert!(is_singular_point(&s15[1], &r15));
    }

    #[test]
    fn clip_square() {
        let sq: Polygon = vec![
            KElem::new(rat(0), rat(0)),
            KElem::new(rat(2), rat(0)),
            KElem::new(rat(2), rat(2)),
            KElem::new(rat(0), rat(2)),
        ];
        let c = clip_polygon(&sq, &rat(-1), &rat(0), &rat(1));
        assert_eq!(polygon_area2(&c), rat(4));
    }
}
