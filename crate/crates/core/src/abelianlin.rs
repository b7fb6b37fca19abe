//! Finitely generated abelian groups as integer-matrix presentations,
//! Smith normal form with transforms, and the solving/kernel routines the
//! spectral sequence is built from.  All arithmetic is arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("composition of the chain maps is nonzero")]
    NotAComplex,
    #[error("vector lies outside the kernel subgroup")]
    NotInKernel,
}

pub type Int = BigInt;

pub fn int(n: i128) -> Int {
    Int::from(n)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }
    pub fn from_i128(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntMatrix::from_fn(r, c, |i, j| int(rows[i][j]))
    }
    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = IntMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let add = &self[(i, k)] * &o[(k, j)];
                    m[(i, j)] += add;
                }
            }
        }
        m
    }
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }
    pub fn hstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        IntMatrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}
impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: `u * m * v = s` with `u`, `v` unimodular and `s`
/// diagonal with a divisibility chain.
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.s.rows.min(self.s.cols);
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }
    pub fn divisors(&self) -> Vec<Int> {
        let n = self.s.rows.min(self.s.cols);
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m0: &IntMatrix) -> Snf {
    let mut m = m0.clone();
    let (r, c) = (m.rows, m.cols);
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let swap_rows = |m: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        for k in 0..m.cols {
            m.data.swap(i * m.cols + k, j * m.cols + k);
        }
        for k in 0..u.cols {
            u.data.swap(i * u.cols + k, j * u.cols + k);
        }
    };
    let swap_cols = |m: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        for k in 0..m.rows {
            m.data.swap(k * m.cols + i, k * m.cols + j);
        }
        for k in 0..v.rows {
            v.data.swap(k * v.cols + i, k * v.cols + j);
        }
    };
    // row_i -= q * row_j
    let addrow = |m: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, q: &Int| {
        for k in 0..m.cols {
            let t = q * &m[(j, k)];
            m[(i, k)] -= t;
        }
        for k in 0..u.cols {
            let t = q * &u[(j, k)];
            u[(i, k)] -= t;
        }
    };
    let addcol = |m: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, q: &Int| {
        for k in 0..m.rows {
            let t = q * &m[(k, j)];
            m[(k, i)] -= t;
        }
        for k in 0..v.rows {
            let t = q * &v[(k, j)];
            v[(k, i)] -= t;
        }
    };
    let negrow = |m: &mut IntMatrix, u: &mut IntMatrix, i: usize| {
        for k in 0..m.cols {
            let t = -m[(i, k)].clone();
            m[(i, k)] = t;
        }
        for k in 0..u.cols {
            let t = -u[(i, k)].clone();
            u[(i, k)] = t;
        }
    };
    let mut t = 0usize;
    loop {
        // smallest-magnitude pivot in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        let mut best: Option<Int> = None;
        for i in t..r {
            for j in t..c {
                if !m[(i, j)].is_zero() {
                    let a = m[(i, j)].abs();
                    if best.as_ref().map_or(true, |b| &a < b) {
                        best = Some(a);
                        piv = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        if pi != t {
            swap_rows(&mut m, &mut u, t, pi);
        }
        if pj != t {
            swap_cols(&mut m, &mut v, t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !m[(i, t)].is_zero() {
                    let q = m[(i, t)].div_floor(&m[(t, t)]);
                    addrow(&mut m, &mut u, i, t, &q);
                    if !m[(i, t)].is_zero() {
                        swap_rows(&mut m, &mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !m[(t, j)].is_zero() {
                    let q = m[(t, j)].div_floor(&m[(t, t)]);
                    addcol(&mut m, &mut v, j, t, &q);
                    if !m[(t, j)].is_zero() {
                        swap_cols(&mut m, &mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if m[(t, t)].is_negative() {
            negrow(&mut m, &mut u, t);
        }
        t += 1;
        if t >= r.min(c) {
            break;
        }
    }
    // divisibility chain
    let n = r.min(c);
    loop {
        let mut changed = false;
        for i in 0..n.saturating_sub(1) {
            let a = m[(i, i)].clone();
            let b = m[(i + 1, i + 1)].clone();
            if !a.is_zero() && !(&b % &a).is_zero() {
                changed = true;
                // fold the (i+1)st column in and re-diagonalize the 2x2 block
                let one = Int::one();
                addcol(&mut m, &mut v, i, i + 1, &(-&one));
                loop {
                    if m[(i + 1, i)].is_zero() {
                        break;
                    }
                    let q = m[(i + 1, i)].div_floor(&m[(i, i)]);
                    addrow(&mut m, &mut u, i + 1, i, &q);
                    if m[(i + 1, i)].is_zero() {
                        break;
                    }
                    swap_rows(&mut m, &mut u, i, i + 1);
                }
                loop {
                    if m[(i, i + 1)].is_zero() {
                        break;
                    }
                    let q = m[(i, i + 1)].div_floor(&m[(i, i)]);
                    addcol(&mut m, &mut v, i + 1, i, &q);
                    if m[(i, i + 1)].is_zero() {
                        break;
                    }
                    swap_cols(&mut m, &mut v, i, i + 1);
                }
                if m[(i, i)].is_negative() {
                    negrow(&mut m, &mut u, i);
                }
                if m[(i + 1, i + 1)].is_negative() {
                    negrow(&mut m, &mut u, i + 1);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Snf { u, s: m, v }
}

/// Solve `a x = b` over the integers.
pub fn solve_int(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let n = a.cols;
    let mut y = vec![Int::zero(); n];
    for i in 0..a.rows.min(n) {
        let d = &snf.s[(i, i)];
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    for i in a.rows.min(n)..a.rows {
        if !ub[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis (as columns) of the integer kernel of `a`.
pub fn kernel_int(a: &IntMatrix) -> IntMatrix {
    if a.cols == 0 {
        return IntMatrix::zero(0, 0);
    }
    if a.rows == 0 {
        return IntMatrix::identity(a.cols);
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    IntMatrix::from_fn(a.cols, a.cols - r, |i, j| snf.v[(i, r + j)].clone())
}

/// Finitely generated abelian group in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    /// invariant factors, each at least 2, each dividing the next
    pub invariant_factors: Vec<u128>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: vec![],
        }
    }
    pub fn free(n: usize) -> Self {
        FgAbelianGroup {
            free_rank: n,
            invariant_factors: vec![],
        }
    }
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Build the canonical form from an arbitrary list of cyclic orders.
    pub fn from_factors(free_rank: usize, factors: &[u128]) -> Self {
        fn factorize(mut n: u128) -> Vec<(u128, u32)> {
            let mut out = vec![];
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    let mut e = 0;
                    while n % d == 0 {
                        n /= d;
                        e += 1;
                    }
                    out.push((d, e));
                }
                d += 1;
            }
            if n > 1 {
                out.push((n, 1));
            }
            out
        }
        use std::collections::BTreeMap;
        let mut primary: BTreeMap<u128, Vec<u32>> = BTreeMap::new();
        for &f in factors {
            if f <= 1 {
                continue;
            }
            for (p, e) in factorize(f) {
                primary.entry(p).or_default().push(e);
            }
        }
        for v in primary.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        let k = primary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut chain = vec![];
        for i in 0..k {
            let mut val: u128 = 1;
            for (p, es) in &primary {
                if i < es.len() {
                    val *= p.pow(es[i]);
                }
            }
            chain.push(val);
        }
        chain.reverse();
        FgAbelianGroup {
            free_rank,
            invariant_factors: chain,
        }
    }

    pub fn direct_sum(&self, o: &FgAbelianGroup) -> FgAbelianGroup {
        let mut f = self.invariant_factors.clone();
        f.extend_from_slice(&o.invariant_factors);
        FgAbelianGroup::from_factors(self.free_rank + o.free_rank, &f)
    }

    pub fn torsion_order(&self) -> u128 {
        self.invariant_factors.iter().product()
    }

    /// `dim_{F_p} (G tensor Z/p)`.
    pub fn tensor_dim(&self, p: u128) -> usize {
        self.free_rank + self.invariant_factors.iter().filter(|f| *f % p == 0).count()
    }

    /// `dim_{F_p} Tor(G, Z/p)`.
    pub fn tor_dim(&self, p: u128) -> usize {
        self.invariant_factors.iter().filter(|f| *f % p == 0).count()
    }

    /// `|G tensor Z/n|` (finite since tensoring kills the free part to (Z/n)^r).
    pub fn tensor_order(&self, n: u128) -> u128 {
        let mut o = n.pow(self.free_rank as u32);
        for f in &self.invariant_factors {
            o *= gcd_u128(*f, n);
        }
        o
    }

    /// `|Tor(G, Z/n)|`.
    pub fn tor_order(&self, n: u128) -> u128 {
        self.invariant_factors.iter().map(|f| gcd_u128(*f, n)).product()
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl std::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Presentation `Z^n / (column span of rels)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentedGroup {
    pub gens: usize,
    pub rels: IntMatrix, // gens x k
}

impl PresentedGroup {
    pub fn new(gens: usize, rels: IntMatrix) -> Self {
        assert_eq!(rels.rows, gens);
        PresentedGroup { gens, rels }
    }
    pub fn free(n: usize) -> Self {
        PresentedGroup::new(n, IntMatrix::zero(n, 0))
    }
    pub fn with_orders(orders: &[u128]) -> Self {
        let n = orders.len();
        let cols: Vec<usize> = (0..n).filter(|&i| orders[i] != 0).collect();
        let mut rels = IntMatrix::zero(n, cols.len());
        for (j, &i) in cols.iter().enumerate() {
            rels[(i, j)] = Int::from(orders[i]);
        }
        PresentedGroup::new(n, rels)
    }

    pub fn normal_form(&self) -> FgAbelianGroup {
        if self.gens == 0 {
            return FgAbelianGroup::zero();
        }
        if self.rels.cols == 0 {
            return FgAbelianGroup::free(self.gens);
        }
        let snf = smith_normal_form(&self.rels);
        let mut facs = vec![];
        let mut r = 0;
        for i in 0..self.gens.min(self.rels.cols) {
            let d = &snf.s[(i, i)];
            if d.is_zero() {
                break;
            }
            r += 1;
            if *d > Int::one() {
                use num_traits::ToPrimitive;
                facs.push(d.to_u128().expect("invariant factor fits u128"));
            }
        }
        FgAbelianGroup::from_factors(self.gens - r, &facs)
    }

    /// Append relation columns.
    pub fn add_relations(&self, cols: &IntMatrix) -> PresentedGroup {
        PresentedGroup::new(self.gens, self.rels.hstack(cols))
    }

    /// Do the columns of `v` lie in the relation span (i.e. vanish in the
    /// group)?
    pub fn is_zero_vec(&self, v: &[Int]) -> bool {
        solve_int(&self.rels, v).is_some()
    }
}

/// All isomorphism classes of middle groups of abelian extensions
/// `0 -> sub -> E -> quot -> 0`, enumerated through the possible cocycle
/// values on the torsion generators of the quotient.
pub fn group_extension_candidates(
    sub: &FgAbelianGroup,
    quot: &FgAbelianGroup,
) -> Vec<FgAbelianGroup> {
    let ra = sub.free_rank;
    let ta = &sub.invariant_factors;
    let rb = quot.free_rank;
    let tb = &quot.invariant_factors;
    let na = ra + ta.len();
    let n = na + rb + tb.len();
    // ranges of cocycle values per torsion generator of the quotient
    let mut ranges: Vec<Vec<u128>> = vec![];
    for &d in tb {
        let mut dims = vec![];
        for _ in 0..ra {
            dims.push(d);
        }
        for &f in ta {
            dims.push(gcd_u128(d, f));
        }
        ranges.push(dims);
    }
    let mut combos: Vec<Vec<Vec<u128>>> = vec![vec![]];
    for dims in &ranges {
        let mut next = vec![];
        let mut vals: Vec<Vec<u128>> = vec![vec![]];
        for &dim in dims {
            let mut nv = vec![];
            for v in &vals {
                for x in 0..dim.max(1) {
                    let mut w = v.clone();
                    w.push(x);
                    nv.push(w);
                }
            }
            vals = nv;
        }
        for c in &combos {
            for v in &vals {
                let mut w = c.clone();
                w.push(v.clone());
                next.push(w);
            }
        }
        combos = next;
    }
    let mut out = std::collections::BTreeSet::new();
    for combo in combos {
        let mut cols: Vec<Vec<Int>> = vec![];
        for (j, &d) in ta.iter().enumerate() {
            let mut col = vec![Int::zero(); n];
            col[ra + j] = Int::from(d);
            cols.push(col);
        }
        for (i, &d) in tb.iter().enumerate() {
            let mut col = vec![Int::zero(); n];
            col[na + rb + i] = Int::from(d);
            for (t, &v) in combo[i].iter().enumerate() {
                col[t] = -Int::from(v);
            }
            cols.push(col);
        }
        let rels = IntMatrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
        out.insert(PresentedGroup::new(n, rels).normal_form());
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        let m = IntMatrix::from_i128(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.divisors(), vec![int(1), int(6)]);
        let z = IntMatrix::zero(2, 2);
        let s0 = smith_normal_form(&z);
        assert!(s0.s.is_zero());
        assert_eq!(s0.u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_verifies_transform() {
        let mut state = 12345u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 19) as i128 - 9
        };
        for _ in 0..120 {
            let r = 1 + (rnd().unsigned_abs() as usize % 5);
            let c = 1 + (rnd().unsigned_abs() as usize % 5);
            let m = IntMatrix::from_fn(r, c, |_, _| int(rnd()));
            let snf = smith_normal_form(&m);
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
            // diagonal + chain
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        assert!(snf.s[(i, j)].is_zero());
                    }
                }
            }
            let d = snf.divisors();
            for w in d.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn snf_permutation_invariance() {
        let m1 = IntMatrix::from_i128(&[vec![2, 4, 4]]);
        let m2 = IntMatrix::from_i128(&[vec![4, 4, 2]]);
        assert_eq!(
            smith_normal_form(&m1).divisors(),
            smith_normal_form(&m2).divisors()
        );
    }

    #[test]
    fn presented_normal_forms() {
        let g = PresentedGroup::with_orders(&[6, 4]).normal_form();
        assert_eq!(g, FgAbelianGroup::from_factors(0, &[2, 12]));
        let h = PresentedGroup::with_orders(&[2, 0, 3]).normal_form();
        assert_eq!(h, FgAbelianGroup::from_factors(1, &[6]));
        assert_eq!(h.to_string(), "Z + Z/6");
        // idempotence of canonical form
        let nf = FgAbelianGroup::from_factors(h.free_rank, &h.invariant_factors);
        assert_eq!(nf, h);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_i128(&[vec![2, 4], vec![1, 3]]);
        let x = solve_int(&a, &[int(6), int(4)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(6), int(4)]);
        let k = kernel_int(&IntMatrix::from_i128(&[vec![1, 2, 3]]));
        assert_eq!(k.cols, 2);
        for j in 0..2 {
            let col = k.column(j);
            assert_eq!(&col[0] + int(2) * &col[1] + int(3) * &col[2], int(0));
        }
    }

    #[test]
    fn extension_candidates_z2_by_z2() {
        let z2 = FgAbelianGroup::from_factors(0, &[2]);
        let cands = group_extension_candidates(&z2, &z2);
        assert_eq!(
            cands,
            vec![
                FgAbelianGroup::from_factors(0, &[2, 2]),
                FgAbelianGroup::from_factors(0, &[4]),
            ]
        );
    }

    #[test]
    fn extension_candidates_free_parts() {
        let a = FgAbelianGroup::free(2);
        let b = FgAbelianGroup::free(3);
        assert_eq!(group_extension_candidates(&a, &b), vec![FgAbelianGroup::free(5)]);
        // split extension always present
        let t = FgAbelianGroup::from_factors(1, &[2, 2]);
        let q = FgAbelianGroup::from_factors(1, &[2, 3, 3]);
        let cands = group_extension_candidates(&t, &q);
        assert!(cands.contains(&t.direct_sum(&q)));
    }

    #[test]
    fn extension_candidates_m13_shape() {
        // sub = Z + (Z/2)^2, quot = Z + (Z/3)^2 + Z/2: complete enumeration
        // yields six classes (one more than a hand-listed five: the class
        // Z^2 + Z/3 + (Z/2)^2 with a Z/6 absorbed into the free part)
        let sub = FgAbelianGroup::from_factors(1, &[2, 2]);
        let quot = FgAbelianGroup::from_factors(1, &[3, 3, 2]);
        let cands = group_extension_candidates(&sub, &quot);
        assert_eq!(cands.len(), 6);
        assert!(cands.contains(&FgAbelianGroup::from_factors(2, &[2, 3, 3, 4])));
        assert!(cands.contains(&FgAbelianGroup::from_factors(2, &[2, 2, 3])));
    }
}
