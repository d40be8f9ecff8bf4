//! Smoothness certification by reduction modulo a prime.
//!
//! A hypersurface with cyclotomic coefficients is smooth whenever its
//! reduction modulo a good prime is smooth, because the relevant
//! resultants are universal integer polynomials in the coefficients.
//! Working in `F_p` makes the emptiness check for the singular system
//! cheap and exact: eliminate variables by resultants, then certify the
//! final univariate family coprime.  The test is one-sided: `true`
//! certifies smoothness over the original field, `false` only means no
//! certificate was found.

use super::mpoly::MPoly;
use crate::cyclo::CycNum;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverting zero mod p");
    powm(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 17u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let facs = prime_factors(p - 1);
    'outer: for g in 2..p {
        for &q in &facs {
            if powm(g, (p - 1) / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

/// Reduction context: a prime `p = 1 mod order` and a fixed primitive
/// `order`-th root of unity mod `p`.
pub struct FpCtx {
    pub p: u64,
    order: u64,
    zeta: u64,
}

impl FpCtx {
    /// Scans for the `skip`-th prime `p = 1 mod order` above `floor`.
    pub fn new(order: u64, floor: u64, skip: usize) -> FpCtx {
        let order = order.max(1);
        let mut k = floor / order + 1;
        let mut seen = 0usize;
        loop {
            let p = order * k + 1;
            if is_prime(p) {
                if seen == skip {
                    let g = primitive_root(p);
                    let zeta = powm(g, (p - 1) / order, p);
                    return FpCtx { p, order, zeta };
                }
                seen += 1;
            }
            k += 1;
        }
    }

    fn reduce_rat(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let p = BigInt::from(self.p);
        let dm = ((den % &p) + &p) % &p;
        if dm.is_zero() {
            return None;
        }
        let nm = ((num % &p) + &p) % &p;
        let n = nm.to_u64().unwrap();
        let d = dm.to_u64().unwrap();
        Some(mulm(n, invm(d, self.p), self.p))
    }

    /// Reduces a cyclotomic number; fails if its conductor does not
    /// divide the context order or a denominator is divisible by `p`.
    pub fn reduce_cyc(&self, x: &CycNum) -> Option<u64> {
        let r = x.reduced();
        let n = r.conductor() as u64;
        if self.order % n != 0 {
            return None;
        }
        let zn = powm(self.zeta, self.order / n, self.p);
        let mut acc = 0u64;
        let mut zpow = 1u64;
        for c in r.coeffs() {
            let v = self.reduce_rat(&c.numer().clone(), &c.denom().clone())?;
            acc = addm(acc, mulm(v, zpow, self.p), self.p);
            zpow = mulm(zpow, zn, self.p);
        }
        Some(acc)
    }

    pub fn reduce_mpoly(&self, f: &MPoly) -> Option<FpMPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in f.terms() {
            let v = self.reduce_cyc(c)?;
            if v != 0 {
                terms.insert(e.to_vec(), v);
            }
        }
        Some(FpMPoly {
            nvars: f.nvars(),
            p: self.p,
            terms,
        })
    }
}

/// Least common multiple of the reduced conductors in a family.
pub fn conductor_lcm(polys: &[&MPoly]) -> u64 {
    let mut l = 1u64;
    for f in polys {
        for (_, c) in f.terms() {
            let n = c.reduced().conductor() as u64;
            l = num_integer::lcm(l, n);
        }
    }
    l
}

/// Sparse polynomial over `F_p`.
#[derive(Clone, Debug)]
pub struct FpMPoly {
    nvars: usize,
    p: u64,
    terms: BTreeMap<Vec<u16>, u64>,
}

impl FpMPoly {
    fn zero(nvars: usize, p: u64) -> Self {
        FpMPoly {
            nvars,
            p,
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&k| k == 0)
    }

    fn insert_add(&mut self, e: Vec<u16>, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let next = match self.terms.get(&e) {
            Some(&v) => addm(v, c, self.p),
            None => c,
        };
        if next == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|e| e[i] as usize).max().unwrap_or(0)
    }

    /// Substitutes 1 for variable `i`, dropping it.
    fn substitute_one(&self, i: usize) -> FpMPoly {
        let mut out = FpMPoly::zero(self.nvars - 1, self.p);
        for (e, &c) in &self.terms {
            let mut e2: Vec<u16> = e.clone();
            e2.remove(i);
            out.insert_add(e2, c);
        }
        out
    }

    /// Coefficient of `u^k` as a polynomial in the remaining variables
    /// (variable `u` dropped from the exponent vectors).
    fn coeff_of(&self, u: usize, k: usize) -> FpMPoly {
        let mut out = FpMPoly::zero(self.nvars - 1, self.p);
        for (e, &c) in &self.terms {
            if e[u] as usize == k {
                let mut e2 = e.clone();
                e2.remove(u);
                out.insert_add(e2, c);
            }
        }
        out
    }

    fn eval(&self, vals: &[u64]) -> u64 {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = mulm(t, powm(vals[i], k as u64, self.p), self.p);
                }
            }
            acc = addm(acc, t, self.p);
        }
        acc
    }

    /// Dense univariate in `u` after fixing the other variables.
    fn eval_all_but(&self, u: usize, vals: &[u64]) -> Vec<u64> {
        let d = self.degree_in(u);
        let mut out = vec![0u64; d + 1];
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                if i != u && k > 0 {
                    t = mulm(t, powm(vals[i], k as u64, self.p), self.p);
                }
            }
            let k = e[u] as usize;
            out[k] = addm(out[k], t, self.p);
        }
        trim(&mut out);
        out
    }

    fn add_scaled(&self, o: &FpMPoly, t: u64) -> FpMPoly {
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            out.insert_add(e.clone(), mulm(c, t, self.p));
        }
        out
    }

    fn pow(&self, e: usize) -> FpMPoly {
        let mut acc = FpMPoly::zero(self.nvars, self.p);
        acc.insert_add(vec![0; self.nvars], 1);
        for _ in 0..e {
            let mut next = FpMPoly::zero(self.nvars, self.p);
            for (ea, &ca) in &acc.terms {
                for (eb, &cb) in &self.terms {
                    let e2: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    next.insert_add(e2, mulm(ca, cb, self.p));
                }
            }
            acc = next;
        }
        acc
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert!(!b.is_empty() && *b.last().unwrap() != 0);
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let li = invm(b[db], p);
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - b.len();
        let f = mulm(lead, li, p);
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = subm(r[shift + i], mulm(f, bc, p), p);
        }
        // The leading term cancels exactly, so trimming always makes
        // progress.
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = invm(l, p);
        for c in &mut x {
            *c = mulm(*c, li, p);
        }
    }
    x
}

fn poly_resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    fn go(f: &[u64], g: &[u64], p: u64) -> u64 {
        if f.is_empty() {
            return 0;
        }
        if g.is_empty() {
            return if f.len() == 1 { 1 } else { 0 };
        }
        let df = f.len() - 1;
        let dg = g.len() - 1;
        if dg == 0 {
            return powm(g[0], df as u64, p);
        }
        if df == 0 {
            return powm(f[0], dg as u64, p);
        }
        let r = poly_rem(f, g, p);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        let sign = if (df * dg) % 2 == 1 { p - 1 } else { 1 };
        let lead = powm(*g.last().unwrap(), (df - dr) as u64, p);
        mulm(mulm(sign, lead, p), go(g, &r, p), p)
    }
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    go(&f, &g, p)
}

/// Lagrange interpolation from distinct sample points.
fn lagrange(points: &[(u64, u64)], p: u64) -> Vec<u64> {
    let n = points.len();
    let mut acc = vec![0u64; n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // Build prod_{j != i} (x - x_j) / (x_i - x_j).
        let mut num = vec![1u64];
        let mut den = 1u64;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![0u64; num.len() + 1];
            for (k, &c) in num.iter().enumerate() {
                next[k + 1] = addm(next[k + 1], c, p);
                next[k] = subm(next[k], mulm(c, xj, p), p);
            }
            num = next;
            den = mulm(den, subm(xi, xj, p), p);
        }
        let f = mulm(yi, invm(den, p), p);
        for (k, &c) in num.iter().enumerate() {
            acc[k] = addm(acc[k], mulm(c, f, p), p);
        }
    }
    trim(&mut acc);
    acc
}

/// Resultant of `f` and `g` with respect to variable `u`, computed by
/// sample-and-interpolate in the remaining one or two variables.
/// Returns `None` when the resultant vanishes identically or either
/// input is independent of `u` in a degenerate way.
fn elim_resultant(f: &FpMPoly, g: &FpMPoly, u: usize) -> Option<FpMPoly> {
    let p = f.p;
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let m = f.degree_in(u);
    let n = g.degree_in(u);
    if m == 0 && n == 0 {
        return None;
    }
    if m == 0 {
        let r = f.substitute_one(u).pow(n);
        return if r.is_zero() { None } else { Some(r) };
    }
    if n == 0 {
        let r = g.substitute_one(u).pow(m);
        return if r.is_zero() { None } else { Some(r) };
    }
    let lead_f = f.coeff_of(u, m);
    let lead_g = g.coeff_of(u, n);
    let r = f.nvars - 1;
    let bound = f.total_degree() * g.total_degree();
    match r {
        1 => {
            let other = 1 - u;
            let mut pts = Vec::new();
            let mut v = 0u64;
            while pts.len() <= bound {
                if v >= p {
                    return None;
                }
                if lead_f.eval(&[v]) != 0 && lead_g.eval(&[v]) != 0 {
                    let mut vals = vec![0u64; 2];
                    vals[other] = v;
                    let fu = f.eval_all_but(u, &vals);
                    let gu = g.eval_all_but(u, &vals);
                    pts.push((v, poly_resultant(&fu, &gu, p)));
                }
                v += 1;
            }
            let poly = lagrange(&pts, p);
            let mut out = FpMPoly::zero(1, p);
            for (k, &c) in poly.iter().enumerate() {
                out.insert_add(vec![k as u16], c);
            }
            if out.is_zero() {
                None
            } else {
                Some(out)
            }
        }
        2 => {
            // Tensor grid, separable interpolation row-by-row.
            let need = bound + 1;
            let mut vs = Vec::new();
            let mut cand = 0u64;
            while vs.len() < need && cand < p {
                // Accept v when the leading coefficients do not vanish
                // identically on the line v = cand.
                let lf = lead_f.eval_all_but(1, &[cand, 0]);
                let lg = lead_g.eval_all_but(1, &[cand, 0]);
                if !lf.is_empty() && !lg.is_empty() {
                    vs.push(cand);
                }
                cand += 1;
            }
            let mut ws = Vec::new();
            let mut cand = 0u64;
            'wscan: while ws.len() < need && cand < p {
                for &v in &vs {
                    if lead_f.eval(&[v, cand]) == 0 || lead_g.eval(&[v, cand]) == 0 {
                        cand += 1;
                        continue 'wscan;
                    }
                }
                ws.push(cand);
                cand += 1;
            }
            if vs.len() < need || ws.len() < need {
                return None;
            }
            // Rows: for each w, the resultant as a function of v.
            let mut rows = Vec::with_capacity(need);
            for &w in &ws {
                let mut pts = Vec::with_capacity(need);
                for &v in &vs {
                    let mut vals = vec![0u64; f.nvars];
                    let (a, b) = other_two(u, f.nvars);
                    vals[a] = v;
                    vals[b] = w;
                    let fu = f.eval_all_but(u, &vals);
                    let gu = g.eval_all_but(u, &vals);
                    pts.push((v, poly_resultant(&fu, &gu, p)));
                }
                rows.push(lagrange(&pts, p));
            }
            let mut out = FpMPoly::zero(2, p);
            for alpha in 0..=bound {
                let pts: Vec<(u64, u64)> = ws
                    .iter()
                    .zip(rows.iter())
                    .map(|(&w, row)| (w, row.get(alpha).copied().unwrap_or(0)))
                    .collect();
                let q = lagrange(&pts, p);
                for (beta, &c) in q.iter().enumerate() {
                    out.insert_add(vec![alpha as u16, beta as u16], c);
                }
            }
            if out.is_zero() {
                None
            } else {
                Some(out)
            }
        }
        _ => None,
    }
}

fn other_two(u: usize, nvars: usize) -> (usize, usize) {
    let mut it = (0..nvars).filter(|&i| i != u);
    (it.next().unwrap(), it.next().unwrap())
}

/// Certifies that a family of polynomials has no common zero in affine
/// space over the algebraic closure of `F_p`.  One-sided.
fn certify_affine_empty(polys: &[FpMPoly], depth: usize) -> bool {
    let live: Vec<&FpMPoly> = polys.iter().filter(|f| !f.is_zero()).collect();
    if live.iter().any(|f| f.is_nonzero_constant()) {
        return true;
    }
    if live.is_empty() {
        return false;
    }
    let nvars = live[0].nvars;
    if nvars == 0 {
        // Nonzero constants were caught above; a zero-variable
        // polynomial that is not a nonzero constant vanishes.
        return false;
    }
    if nvars == 1 {
        let mut g: Vec<u64> = Vec::new();
        for f in &live {
            let u = f.eval_all_but(0, &[0]);
            g = if g.is_empty() {
                u
            } else {
                poly_gcd(&g, &u, f.p)
            };
        }
        return g.len() == 1;
    }
    if depth == 0 || live.len() < 2 {
        return false;
    }
    for u in 0..nvars {
        let mut reduced: Vec<FpMPoly> = Vec::new();
        for i in 0..live.len() {
            for j in (i + 1)..live.len() {
                if let Some(r) = elim_resultant(live[i], live[j], u) {
                    reduced.push(r);
                }
            }
        }
        // Random-style combinations break coincidental shared roots of
        // the pairwise resultants.
        if live.len() >= 3 {
            for t in [1u64, 2, 3] {
                let combo = live[1].add_scaled(live[2], t);
                if let Some(r) = elim_resultant(live[0], &combo, u) {
                    reduced.push(r);
                }
            }
        }
        if !reduced.is_empty() && certify_affine_empty(&reduced, depth - 1) {
            return true;
        }
    }
    false
}

/// Certifies that weighted-homogeneous polynomials share no common
/// zero away from the origin of the affine cone.  One-sided: `true`
/// is a proof, `false` is only the absence of one.
pub fn certify_cone_empty(polys: &[&MPoly]) -> bool {
    if polys.is_empty() {
        return false;
    }
    let nvars = polys[0].nvars();
    let order = conductor_lcm(polys);
    for attempt in 0..4 {
        let ctx = FpCtx::new(order, 50_000 + 10_000 * attempt as u64, attempt);
        let reduced: Option<Vec<FpMPoly>> = polys.iter().map(|f| ctx.reduce_mpoly(f)).collect();
        let Some(reduced) = reduced else {
            continue;
        };
        let ok = (0..nvars).all(|i| {
            let chart: Vec<FpMPoly> = reduced.iter().map(|f| f.substitute_one(i)).collect();
            certify_affine_empty(&chart, 4)
        });
        if ok {
            return true;
        }
    }
    false
}

/// Certifies smoothness of the hypersurface `f = 0` in a (weighted)
/// projective space by proving its partial derivatives have no common
/// zero on the punctured cone.
pub fn certify_smooth_hypersurface(f: &MPoly, weights: &[usize]) -> bool {
    assert_eq!(weights.len(), f.nvars());
    if f.is_zero() || f.is_weighted_homogeneous(weights).is_none() {
        return false;
    }
    let partials: Vec<MPoly> = (0..f.nvars()).map(|i| f.partial(i)).collect();
    let refs: Vec<&MPoly> = partials.iter().collect();
    certify_cone_empty(&refs)
}
