//! Exact integer linear algebra used by every per-bidegree computation:
//! Smith and Hermite normal forms, lattice membership, kernels,
//! intersections and quotient groups.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Matrix = Vec<Vec<BigInt>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator {index} of the sublattice is not in the ambient lattice")]
    NotContained { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub p: i32,
    pub q: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { p: 0, q: 0 };

    pub const fn new(p: i32, q: i32) -> Self {
        BiDegree { p, q }
    }

    pub fn scale(self, k: i32) -> Self {
        BiDegree::new(self.p * k, self.q * k)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.p - o.p, self.q - o.q)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.p, -self.q)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t_i` with `t_1 | t_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FgAbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: vec![] }
    }

    /// `Z^rank ⊕ (Z/2)^twos`.
    pub fn with_twos(rank: usize, twos: usize) -> Self {
        FgAbGroup { rank, torsion: vec![BigInt::from(2); twos] }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic torsion summands of order 2.
    pub fn twos(&self) -> usize {
        self.torsion.iter().filter(|t| **t == BigInt::from(2)).count()
    }

    pub fn all_torsion_is_two(&self) -> bool {
        self.torsion.iter().all(|t| *t == BigInt::from(2))
    }

    /// Direct sum, re-normalised into divisibility order.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut diag: Vec<BigInt> = self.torsion.iter().chain(other.torsion.iter()).cloned().collect();
        let k = diag.len();
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for (i, d) in diag.drain(..).enumerate() {
            m[i][i] = d;
        }
        let g = quotient_of_free(k, &m);
        FgAbGroup { rank: self.rank + other.rank + g.rank, torsion: g.torsion }
    }

    pub fn from_parts(rank: usize, torsion: &[u64]) -> Self {
        FgAbGroup { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect();
        let mut st = s.serialize_struct("FgAbGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == *t {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A sublattice of `Z^ambient_rank` given by generators (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    pub ambient_rank: usize,
    pub generators: Matrix,
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| int_vec(r)).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, ncols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `v · m` for a row vector `v`.
pub fn vec_mat(v: &[BigInt], m: &Matrix, ncols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); ncols];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for j in 0..ncols {
            if !m[k][j].is_zero() {
                out[j] += c * &m[k][j];
            }
        }
    }
    out
}

fn row_axpy(rows: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    // rows[target] -= q * rows[src]
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn combine_rows(rows: &mut Matrix, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
    let ri = rows[i].clone();
    let rj = rows[j].clone();
    for k in 0..ri.len() {
        rows[i][k] = a * &ri[k] + b * &rj[k];
        rows[j][k] = c * &ri[k] + d * &rj[k];
    }
}

/// Hermite normal form of the row span of `rows`; if `track`, also returns a
/// unimodular `U` with `U · rows = [H; 0]`.
pub fn hnf_with_transform(rows: &Matrix, ncols: usize, track: bool) -> (Hnf, Option<Matrix>) {
    let m = rows.len();
    let mut a: Matrix = rows.clone();
    let mut u = if track { Some(identity(m)) } else { None };
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if r == m {
            break;
        }
        let mut any = false;
        for i in r..m {
            if !a[i][col].is_zero() {
                any = true;
                if !a[r][col].is_zero() || i == r {
                    continue;
                }
            }
        }
        if !any {
            continue;
        }
        if a[r][col].is_zero() {
            let i = (r + 1..m).find(|&i| !a[i][col].is_zero()).unwrap();
            a.swap(r, i);
            if let Some(u) = u.as_mut() {
                u.swap(r, i);
            }
        }
        for i in r + 1..m {
            if a[i][col].is_zero() {
                continue;
            }
            let x = a[r][col].clone();
            let y = a[i][col].clone();
            let eg = x.extended_gcd(&y);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let c = -(&y / &g);
            let d = &x / &g;
            combine_rows(&mut a, r, i, &s, &t, &c, &d);
            if let Some(u) = u.as_mut() {
                combine_rows(u, r, i, &s, &t, &c, &d);
            }
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
            if let Some(u) = u.as_mut() {
                for x in u[r].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        for k in 0..r {
            let q = a[k][col].div_floor(&a[r][col]);
            if !q.is_zero() {
                row_axpy(&mut a, k, r, &q);
                if let Some(u) = u.as_mut() {
                    row_axpy(u, k, r, &q);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (Hnf { rows: a, pivots }, u)
}

pub fn hnf(rows: &Matrix, ncols: usize) -> Hnf {
    hnf_with_transform(rows, ncols, false).0
}

/// Basis of `{x : x · m = 0}` (row vectors of length `m.len()`).
pub fn left_kernel(m: &Matrix, ncols: usize) -> Matrix {
    let (h, u) = hnf_with_transform(m, ncols, true);
    let u = u.unwrap();
    u[h.rows.len()..].to_vec()
}

/// Basis of `{x : m · x = 0}` (column vectors of length `ncols`).
pub fn right_kernel(m: &Matrix, ncols: usize) -> Matrix {
    left_kernel(&transpose(m, ncols), m.len())
}

impl Hnf {
    /// Canonical representative of `v` modulo the row lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
            coords.push(q);
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Smith normal form `U · M · V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn col_axpy(m: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let d = q * &row[src];
            row[target] -= d;
        }
    }
}

fn snf_core(m: &Matrix, nrows: usize, ncols: usize, track: bool) -> (Vec<BigInt>, Matrix, Matrix) {
    let mut a = m.clone();
    let mut u = if track { identity(nrows) } else { vec![] };
    let mut v = if track { identity(ncols) } else { vec![] };
    let k = nrows.min(ncols);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let diag = (0..k).map(|i| a[i][i].clone()).collect();
                return (diag, u, v);
            };
            a.swap(t, bi);
            swap_cols(&mut a, t, bj);
            if track {
                u.swap(t, bi);
                swap_cols(&mut v, t, bj);
            }
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                if track {
                    row_axpy(&mut u, i, t, &q);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                if track {
                    col_axpy(&mut v, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            if let Some((i, _)) = bad {
                let minus_one = -BigInt::one();
                row_axpy(&mut a, t, i, &minus_one);
                if track {
                    row_axpy(&mut u, t, i, &minus_one);
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    let diag = (0..k).map(|i| a[i][i].clone()).collect();
    (diag, u, v)
}

/// Smith normal form with transforms. The diagonal has length
/// `min(rows, cols)` and satisfies `d_1 | d_2 | …` with nonnegative entries.
pub fn smith_normal_form(m: &Matrix, ncols: usize) -> Snf {
    let nrows = m.len();
    let (diag, u, v) = snf_core(m, nrows, ncols, true);
    Snf { diag, u, v }
}

/// Invariant factors only.
pub fn smith_diagonal(m: &Matrix, ncols: usize) -> Vec<BigInt> {
    snf_core(m, m.len(), ncols, false).0
}

/// `Z^n / span(rows)`.
pub fn quotient_of_free(n: usize, rows: &Matrix) -> FgAbGroup {
    if rows.is_empty() {
        return FgAbGroup::free(n);
    }
    // Reduce to a square-ish echelon form first; SNF then runs on at most n rows.
    let h = hnf(rows, n);
    let diag = smith_diagonal(&h.rows, n);
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    let rank = n - nonzero.len();
    let torsion = nonzero.into_iter().filter(|d| !d.is_one()).collect();
    FgAbGroup { rank, torsion }
}

impl IntLattice {
    pub fn new(ambient_rank: usize, generators: Matrix) -> Self {
        debug_assert!(generators.iter().all(|g| g.len() == ambient_rank));
        IntLattice { ambient_rank, generators }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        IntLattice { ambient_rank, generators: vec![] }
    }

    pub fn full(ambient_rank: usize) -> Self {
        IntLattice { ambient_rank, generators: identity(ambient_rank) }
    }

    pub fn hnf(&self) -> Hnf {
        hnf(&self.generators, self.ambient_rank)
    }

    pub fn rank(&self) -> usize {
        self.hnf().rank()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.hnf().contains(v)
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        let h = self.hnf();
        other.generators.iter().all(|g| h.contains(g))
    }

    pub fn sum(&self, other: &IntLattice) -> IntLattice {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        IntLattice::new(self.ambient_rank, g)
    }

    /// Same lattice with generators replaced by its Hermite basis.
    pub fn canonical(&self) -> IntLattice {
        IntLattice::new(self.ambient_rank, self.hnf().rows)
    }

    pub fn same_as(&self, other: &IntLattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.hnf() == other.hnf()
    }

    /// `(L ⊗ Q) ∩ Z^n`.
    pub fn saturation(&self) -> IntLattice {
        let n = self.ambient_rank;
        let perp = right_kernel(&self.generators, n);
        if perp.is_empty() {
            return IntLattice::full(n);
        }
        let t = transpose(&perp, n);
        IntLattice::new(n, left_kernel(&t, perp.len()))
    }
}

/// Isomorphism type of `ambient / sub`.
pub fn quotient_group(ambient: &IntLattice, sub: &IntLattice) -> Result<FgAbGroup, LatticeError> {
    if ambient.ambient_rank != sub.ambient_rank {
        return Err(LatticeError::RankMismatch(ambient.ambient_rank, sub.ambient_rank));
    }
    let basis = ambient.hnf();
    let mut coords = Vec::with_capacity(sub.generators.len());
    for (index, g) in sub.generators.iter().enumerate() {
        match basis.coordinates(g) {
            Some(c) => coords.push(c),
            None => return Err(LatticeError::NotContained { index }),
        }
    }
    Ok(quotient_of_free(basis.rank(), &coords))
}

pub fn lattice_intersect(a: &IntLattice, b: &IntLattice) -> Result<IntLattice, LatticeError> {
    if a.ambient_rank != b.ambient_rank {
        return Err(LatticeError::RankMismatch(a.ambient_rank, b.ambient_rank));
    }
    let n = a.ambient_rank;
    let mut stacked = a.generators.clone();
    stacked.extend(b.generators.iter().cloned());
    let ker = left_kernel(&stacked, n);
    let ka = a.generators.len();
    let gens: Matrix = ker
        .iter()
        .map(|k| vec_mat(&k[..ka], &a.generators, n))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    Ok(IntLattice::new(n, gens).canonical())
}

/// `{v ∈ Z^rows(map) : v · map ∈ target}` where `map` has `target.ambient_rank` columns.
pub fn preimage(map: &Matrix, target: &IntLattice) -> IntLattice {
    let ns = map.len();
    let nt = target.ambient_rank;
    let mut stacked = map.clone();
    stacked.extend(target.generators.iter().cloned());
    let ker = left_kernel(&stacked, nt);
    let gens: Matrix = ker.iter().map(|k| k[..ns].to_vec()).collect();
    IntLattice::new(ns, gens)
}
