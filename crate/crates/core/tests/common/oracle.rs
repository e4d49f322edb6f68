//! Independent eigenvalue oracles for normalized Laplacians.
//!
//! The eigenvalues of `L = I - D^{-1/2} A D^{-1/2}` are `1 + v` for the roots
//! `v` of `det(v D + A)`, a polynomial with integer coefficients. We expand it
//! exactly (Leibniz), split it into square-free factors over the rationals
//! (Yun), and locate each simple root by bisection between the roots of the
//! factor's derivative. Nothing here touches the crate's eigensolver.

#![allow(dead_code)]

use num::{BigInt, BigRational, ToPrimitive, Zero};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<Q>);

impl Poly {
    fn from_ints(c: &[i64]) -> Self {
        Poly(c.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    fn lead(&self) -> &Q {
        self.0.last().unwrap()
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    fn derivative(&self) -> Self {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trim()
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Poly(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(Q::zero);
                    a - b
                })
                .collect(),
        )
        .trim()
    }

    fn divmod(&self, d: &Self) -> (Self, Self) {
        let mut rem = self.0.clone();
        if self.0.len() < d.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quot = vec![Q::zero(); self.0.len() - d.0.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d.0.len() - 1] / d.lead();
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * dc;
            }
            quot[i] = c;
        }
        (Poly(quot).trim(), Poly(rem).trim())
    }

    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact division");
        q
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap()).collect()
    }
}

fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

fn deriv_f64(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &k)| k * i as f64).collect()
}

/// Real roots of a real-rooted polynomial with simple roots, all in (lo, hi).
fn simple_real_roots(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let deg = c.len() - 1;
    if deg == 0 {
        return vec![];
    }
    if deg == 1 {
        return vec![-c[0] / c[1]];
    }
    // roots of p' interlace the roots of p
    let mut marks = vec![lo];
    marks.extend(simple_real_roots(&deriv_f64(c), lo, hi));
    marks.push(hi);
    let mut roots = Vec::new();
    for w in marks.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (eval(c, a), eval(c, b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m == a || m == b {
                break;
            }
            if eval(c, m).signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-13);
    roots
}

/// Square-free factors `a_i` with `p = const * prod a_i^i`.
fn yun(p: &Poly) -> Vec<(Poly, usize)> {
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0);
    let c = dp.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_exact(&a);
        let c = d.div_exact(&a);
        d = c.sub(&b.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// `(degree, multiplicity)` of each square-free factor of an integer polynomial
/// given lowest coefficient first.
pub fn square_free_profile(coeffs: &[i64]) -> Vec<(usize, usize)> {
    yun(&Poly::from_ints(coeffs)).iter().map(|(f, m)| (f.degree(), *m)).collect()
}

/// Integer coefficients of `det(v D + A)` in `v`, by Leibniz expansion.
pub fn laplacian_charpoly(n: usize, adj: &[Vec<bool>]) -> Vec<i64> {
    let deg: Vec<i64> = adj.iter().map(|r| r.iter().filter(|&&b| b).count() as i64).collect();
    let mut total = vec![0i64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    // Heap's algorithm, tracking permutation parity
    let mut c = vec![0usize; n];
    let mut add = |perm: &[usize], sign: i64| {
        let mut term = vec![0i64; n + 1];
        term[0] = sign;
        for (i, &j) in perm.iter().enumerate() {
            if i == j {
                // multiply by deg_i * v
                for k in (0..n).rev() {
                    term[k + 1] = term[k] * deg[i];
                }
                term[0] = 0;
            } else if adj[i][j] {
                // multiply by 1
            } else {
                return;
            }
        }
        for (t, x) in total.iter_mut().zip(&term) {
            *t += x;
        }
    };
    add(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            add(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Normalized-Laplacian eigenvalues (ascending, with multiplicity) of a graph
/// without isolated nodes, from its exact characteristic polynomial.
pub fn charpoly_eigenvalues(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let p = Poly::from_ints(&laplacian_charpoly(n, &adj));
    assert_eq!(p.degree(), n);
    let mut out = Vec::with_capacity(n);
    for (factor, mult) in yun(&p) {
        for r in simple_real_roots(&factor.monic().to_f64(), -1.5, 1.5) {
            for _ in 0..mult {
                out.push(1.0 + r);
            }
        }
    }
    assert_eq!(out.len(), n, "lost roots for {edges:?}");
    out.sort_by(f64::total_cmp);
    out
}

pub fn complete_graph_eigenvalues(n: usize) -> Vec<f64> {
    let mut v = vec![n as f64 / (n as f64 - 1.0); n - 1];
    v.insert(0, 0.0);
    v
}

pub fn path_eigenvalues(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|j| 1.0 - (std::f64::consts::PI * j as f64 / (n as f64 - 1.0)).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn cycle_eigenvalues(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|j| 1.0 - (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn complete_bipartite_eigenvalues(m: usize, n: usize) -> Vec<f64> {
    let mut v = vec![1.0; m + n - 2];
    v.insert(0, 0.0);
    v.push(2.0);
    v
}
