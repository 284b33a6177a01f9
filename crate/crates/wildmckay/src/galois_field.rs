//! Exact arithmetic in `F_q` (`q = p^e`), linear algebra over it, and
//! truncated Laurent-series arithmetic used by the brute-force census oracle.
//!
//! Elements are encoded as integer indices `0..q`: the index digits in base
//! `p` are the coefficients of the element written in the power basis of a
//! fixed modulus polynomial. The modulus per `(p, e)` is pinned in a shipped
//! table; entries not in the table fall back to a deterministic rule (the
//! lexicographically smallest monic irreducible, ordering candidates by their
//! base-`p` coefficient value), so identical `(p, e)` always yields identical
//! element encodings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

const MAX_Q: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 512;

/// Precision sentinel: every coefficient is known.
pub const EXACT: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    NotPrime(u32),
    TooLarge { p: u32, e: u32 },
    /// A series reduction needed a coefficient at or beyond the truncation
    /// precision.
    TruncationExceeded { needed: i64, prec: i64 },
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotPrime(p) => write!(f, "{p} is not prime"),
            GfError::TooLarge { p, e } => write!(f, "field order {p}^{e} exceeds the supported bound"),
            GfError::TruncationExceeded { needed, prec } => {
                write!(f, "series reduction needs the coefficient of t^{needed}, known only below t^{prec}")
            }
        }
    }
}

impl std::error::Error for GfError {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    let n = n as u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Pinned moduli, little-endian coefficients including the leading 1.
/// Each entry equals what the deterministic fallback rule produces; a unit
/// test keeps the table honest.
const SHIPPED_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (5, 1, &[0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 1, &[0, 1]),
    (7, 2, &[1, 0, 1]),
    (11, 1, &[0, 1]),
    (13, 1, &[0, 1]),
];

// --- dense polynomial helpers over F_p (little-endian coefficient vectors) ---

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = dr - db + i;
                let sub = (c as u64 * bc as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p prime, a != 0 mod p
    mod_pow(a, p as u64 - 2, p)
}

fn mod_pow(a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Smallest monic irreducible of degree `e` over `F_p`, candidates ordered by
/// the base-`p` value of their low coefficients.
fn find_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let mut divisors: Vec<Vec<u32>> = Vec::new();
    // All monic polynomials of degree 1..=e/2.
    for d in 1..=(e / 2) {
        let count = (p as u64).pow(d);
        for v in 0..count {
            let mut poly = vec![0u32; d as usize + 1];
            let mut vv = v;
            for c in poly.iter_mut().take(d as usize) {
                *c = (vv % p as u64) as u32;
                vv /= p as u64;
            }
            poly[d as usize] = 1;
            divisors.push(poly);
        }
    }
    let count = (p as u64).pow(e);
    for v in 0..count {
        let mut cand = vec![0u32; e as usize + 1];
        let mut vv = v;
        for c in cand.iter_mut().take(e as usize) {
            *c = (vv % p as u64) as u32;
            vv /= p as u64;
        }
        cand[e as usize] = 1;
        if divisors.iter().all(|d| !poly_rem(&cand, d, p).is_empty()) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// The finite field `F_q`, `q = p^e`, with a fixed deterministic modulus.
/// Immutable and shareable; all operations are pure.
pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    mul_table: Option<Vec<u32>>,
    dlog_table: OnceLock<Vec<u32>>,
    wp_image: OnceLock<Vec<u32>>,
    wp_reps: OnceLock<Vec<u32>>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq(p={}, e={})", self.p, self.e)
    }
}

/// Construct `F_{p^e}` with the pinned modulus for `(p, e)`.
pub fn make_field(p: u32, e: u32) -> Result<Fq, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 || (p as u64).checked_pow(e).map_or(true, |q| q > MAX_Q) {
        return Err(GfError::TooLarge { p, e });
    }
    let q = (p as u64).pow(e) as u32;
    let modulus = SHIPPED_MODULI
        .iter()
        .find(|(tp, te, _)| *tp == p && *te == e)
        .map(|(_, _, m)| m.to_vec())
        .unwrap_or_else(|| find_modulus(p, e));
    let mut field = Fq {
        p,
        e,
        q,
        modulus,
        generator: 0,
        mul_table: None,
        dlog_table: OnceLock::new(),
        wp_image: OnceLock::new(),
        wp_reps: OnceLock::new(),
    };
    if (q as u64) <= TABLE_LIMIT {
        let mut t = vec![0u32; (q as usize) * (q as usize)];
        for a in 0..q {
            for b in a..q {
                let v = field.mul_raw(a, b);
                t[(a as usize) * (q as usize) + b as usize] = v;
                t[(b as usize) * (q as usize) + a as usize] = v;
            }
        }
        field.mul_table = Some(t);
    }
    field.generator = field.find_generator();
    Ok(field)
}

impl Fq {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest element (in encoding order) generating the multiplicative
    /// group. Discrete logarithms and the compatible system of roots of unity
    /// `zeta_m = generator^((q-1)/m)` are taken with respect to it.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    fn decode(&self, a: u32) -> Vec<u32> {
        let mut digits = vec![0u32; self.e as usize];
        let mut v = a;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * self.p as u64 + d as u64;
        }
        v as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let da = self.decode(a);
        let n: Vec<u32> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&n)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % self.p as u64;
            }
        }
        // Reduce by the monic modulus: x^e = -sum modulus[k] x^k.
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for k in 0..e {
                let m = self.modulus[k] as u64;
                if m != 0 {
                    let idx = i - e + k;
                    prod[idx] = (prod[idx] + c * (self.p as u64 - m)) % self.p as u64;
                }
            }
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&x| x as u32).collect();
        self.encode(&digits)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[(a as usize) * (self.q as usize) + b as usize],
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.q as u64 - 2)
    }

    /// Frobenius `x -> x^p`; additive in characteristic `p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// The unique `p`-th root, `x -> x^(p^(e-1))`.
    pub fn pth_root(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 0..self.e.saturating_sub(1) {
            r = self.frobenius(r);
        }
        r
    }

    /// `x^p - x`.
    pub fn wp(&self, a: u32) -> u32 {
        self.sub(self.frobenius(a), a)
    }

    pub fn multiplicative_order(&self, a: u32) -> u64 {
        debug_assert!(a != 0);
        let mut ord = 1u64;
        let mut x = a;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    fn find_generator(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let n = self.q as u64 - 1;
        let mut primes = Vec::new();
        let mut m = n;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for cand in 1..self.q {
            if primes.iter().all(|&ell| self.pow(cand, n / ell) != 1) {
                return cand;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Discrete logarithm to base `generator()`, in `[0, q-1)`.
    pub fn dlog(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "dlog of zero");
        let table = self.dlog_table.get_or_init(|| {
            let mut t = vec![u32::MAX; self.q as usize];
            let mut x = 1u32;
            for i in 0..(self.q - 1) {
                t[x as usize] = i;
                x = self.mul(x, self.generator);
            }
            t
        });
        table[a as usize]
    }

    /// Image of `x -> x^p - x`, sorted. Has `q/p` elements.
    pub fn wp_image(&self) -> &[u32] {
        self.wp_image.get_or_init(|| {
            let mut img: Vec<u32> = (0..self.q).map(|x| self.wp(x)).collect();
            img.sort_unstable();
            img.dedup();
            img
        })
    }

    /// Canonical representative of the coset `a + wp(F_q)`: the smallest
    /// element of the coset in encoding order.
    pub fn wp_coset_rep(&self, a: u32) -> u32 {
        let reps = self.wp_reps.get_or_init(|| {
            let img = self.wp_image().to_vec();
            (0..self.q)
                .map(|c| img.iter().map(|&w| self.add(c, w)).min().unwrap())
                .collect()
        });
        reps[a as usize]
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Square matrix over `F_q`, entries row-major as element indices. The entry
/// vector doubles as the canonical encoding for dedup and orbit hashing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl FqMatrix {
    pub fn zero(n: usize) -> Self {
        FqMatrix { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &FqMatrix, f: &Fq) -> FqMatrix {
        let n = self.n;
        let mut out = FqMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.at(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[u32], f: &Fq) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; n];
        for i in 0..n {
            let mut acc = 0u32;
            for j in 0..n {
                acc = f.add(acc, f.mul(self.at(i, j), v[j]));
            }
            out[i] = acc;
        }
        out
    }

    pub fn pow(&self, mut e: u64, f: &Fq) -> FqMatrix {
        let mut r = FqMatrix::identity(self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, f);
            }
            b = b.mul(&b, f);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order; caller guarantees finiteness.
    pub fn order(&self, f: &Fq) -> u64 {
        let mut ord = 1u64;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.mul(self, f);
            ord += 1;
            assert!(ord < 10_000_000, "matrix order diverges");
        }
        ord
    }

    pub fn det(&self, f: &Fq) -> u32 {
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut det = 1u32;
        let mut col = 0;
        for row in 0..n {
            let pivot = (row..n).find(|&r| rows[r][col] != 0);
            match pivot {
                None => return 0,
                Some(pr) => {
                    if pr != row {
                        rows.swap(pr, row);
                        det = f.neg(det);
                    }
                    let pv = rows[row][col];
                    det = f.mul(det, pv);
                    let pv_inv = f.inv(pv);
                    for r in (row + 1)..n {
                        let factor = f.mul(rows[r][col], pv_inv);
                        if factor == 0 {
                            continue;
                        }
                        for c in col..n {
                            let s = f.mul(factor, rows[row][c]);
                            rows[r][c] = f.sub(rows[r][c], s);
                        }
                    }
                }
            }
            col += 1;
        }
        det
    }

    /// `self - lambda * I`.
    pub fn sub_scalar(&self, lambda: u32, f: &Fq) -> FqMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.at(i, i);
            m.set(i, i, f.sub(v, lambda));
        }
        m
    }

    /// Dimension of the kernel, by exact Gaussian elimination.
    pub fn kernel_dim(&self, f: &Fq) -> usize {
        self.n - rank(&to_rows(self), f)
    }

    /// Basis of the kernel as column vectors.
    pub fn kernel_basis(&self, f: &Fq) -> Vec<Vec<u32>> {
        kernel_of_rows(&to_rows(self), self.n, f)
    }
}

/// `dim ker(M - I)`: the fixed space of the linear map.
pub fn fixed_space_dim(m: &FqMatrix, f: &Fq) -> usize {
    m.sub_scalar(1, f).kernel_dim(f)
}

fn to_rows(m: &FqMatrix) -> Vec<Vec<u32>> {
    (0..m.n).map(|i| m.entries[i * m.n..(i + 1) * m.n].to_vec()).collect()
}

/// Row echelon reduction in place; returns (rank, pivot columns).
pub(crate) fn row_echelon(rows: &mut Vec<Vec<u32>>, f: &Fq) -> (usize, Vec<usize>) {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let pivot = (r..nrows).find(|&i| rows[i][c] != 0);
        let Some(pi) = pivot else { continue };
        rows.swap(r, pi);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..nrows {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let s = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub(crate) fn rank(rows: &[Vec<u32>], f: &Fq) -> usize {
    let mut rows = rows.to_vec();
    row_echelon(&mut rows, f).0
}

/// Kernel basis of the linear map given by `rows` acting on `F_q^ncols`.
pub(crate) fn kernel_of_rows(rows: &[Vec<u32>], ncols: usize, f: &Fq) -> Vec<Vec<u32>> {
    let mut rr = rows.to_vec();
    let (rank, pivots) = row_echelon(&mut rr, f);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            // row r: x_pc + sum_{j free} rr[r][j] x_j = 0
            v[pc] = f.neg(rr[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` for column vector `b`, `A` given by columns. Returns the
/// coordinate vector when `b` lies in the span.
pub(crate) fn solve_in_span(columns: &[Vec<u32>], b: &[u32], f: &Fq) -> Option<Vec<u32>> {
    let nrows = b.len();
    let ncols = columns.len();
    let mut aug: Vec<Vec<u32>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i]).collect();
            row.push(b[i]);
            row
        })
        .collect();
    let (_, pivots) = row_echelon(&mut aug, f);
    if pivots.contains(&ncols) {
        return None; // inconsistent
    }
    let mut x = vec![0u32; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Truncated Laurent series over F_q
// ---------------------------------------------------------------------------

/// Element of `F_q((t))` with exact coefficients below the precision bound:
/// coefficients at exponents `>= prec` are unknown. Arithmetic propagates
/// precision; nothing is silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncLaurent {
    coeffs: BTreeMap<i64, u32>,
    prec: i64,
}

impl TruncLaurent {
    pub fn new(terms: &[(i64, u32)], prec: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(e, c) in terms {
            if c != 0 && e < prec {
                coeffs.insert(e, c);
            }
        }
        TruncLaurent { coeffs, prec }
    }

    /// A finite sum of terms, known exactly at all orders.
    pub fn exact(terms: &[(i64, u32)]) -> Self {
        Self::new(terms, EXACT)
    }

    pub fn zero() -> Self {
        Self::exact(&[])
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> u32 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &u32)> {
        self.coeffs.iter()
    }

    fn insert(&mut self, e: i64, c: u32) {
        if c != 0 && e < self.prec {
            self.coeffs.insert(e, c);
        } else {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &TruncLaurent, f: &Fq) -> TruncLaurent {
        let prec = self.prec.min(other.prec);
        let mut out = TruncLaurent { coeffs: BTreeMap::new(), prec };
        for (&e, &c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if e >= prec {
                continue;
            }
            let cur = out.coefficient(e);
            out.insert(e, f.add(cur, c));
        }
        out
    }

    pub fn neg(&self, f: &Fq) -> TruncLaurent {
        TruncLaurent { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, f.neg(c))).collect(), prec: self.prec }
    }

    pub fn sub(&self, other: &TruncLaurent, f: &Fq) -> TruncLaurent {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &TruncLaurent, f: &Fq) -> TruncLaurent {
        let va = self.min_exponent();
        let vb = other.min_exponent();
        let prec = match (va, vb) {
            (Some(va), Some(vb)) => {
                let pa = self.prec.saturating_add(vb);
                let pb = other.prec.saturating_add(va);
                pa.min(pb)
            }
            // A known-zero factor: product is exactly zero up to the partner's
            // contribution window.
            _ => EXACT,
        };
        let mut out = TruncLaurent { coeffs: BTreeMap::new(), prec };
        for (&ea, &ca) in &self.coeffs {
            for (&eb, &cb) in &other.coeffs {
                let e = ea + eb;
                if e >= prec {
                    continue;
                }
                let cur = out.coefficient(e);
                out.insert(e, f.add(cur, f.mul(ca, cb)));
            }
        }
        out
    }

    /// Coefficient-wise Frobenius lift: `(sum c_i t^i)^p = sum c_i^p t^(p i)`.
    pub fn frobenius_power(&self, f: &Fq) -> TruncLaurent {
        let p = f.p() as i64;
        let prec = if self.prec == EXACT { EXACT } else { self.prec.saturating_mul(p) };
        TruncLaurent {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e * p, f.frobenius(c))).collect(),
            prec,
        }
    }

    /// `x^p - x`, additive in `x`.
    pub fn wp(&self, f: &Fq) -> TruncLaurent {
        self.frobenius_power(f).sub(self, f)
    }

    /// Canonical representative of the class modulo `wp(K)`: supported on
    /// `{0} union {-j : j > 0, p does not divide j}` with the constant term
    /// reduced to its canonical coset representative.
    ///
    /// Terms of strictly positive exponent lie in `wp(t F_q[[t]])` and are
    /// dropped exactly; terms `c t^(-pj)` fold to `c^(1/p) t^(-j)`.
    pub fn artin_schreier_reduce(&self, f: &Fq) -> Result<TruncLaurent, GfError> {
        if self.prec <= 0 {
            return Err(GfError::TruncationExceeded { needed: 0, prec: self.prec });
        }
        let p = f.p() as i64;
        let mut out = TruncLaurent { coeffs: BTreeMap::new(), prec: EXACT };
        for (&e, &c) in &self.coeffs {
            if e <= 0 {
                out.insert(e, c);
            }
        }
        loop {
            let target = out
                .coeffs
                .keys()
                .copied()
                .find(|&e| e < 0 && (-e) % p == 0);
            let Some(e) = target else { break };
            let c = out.coefficient(e);
            out.coeffs.remove(&e);
            let d = f.pth_root(c);
            let e2 = e / p;
            let cur = out.coefficient(e2);
            out.insert(e2, f.add(cur, d));
        }
        let c0 = out.coefficient(0);
        out.coeffs.remove(&0);
        let rep = f.wp_coset_rep(c0);
        out.insert(0, rep);
        Ok(out)
    }

    /// Level of a reduced representative: `j` such that the minimal exponent
    /// is `-j`, or 0 for constants.
    pub fn level(&self) -> u32 {
        match self.min_exponent() {
            Some(e) if e < 0 => (-e) as u32,
            _ => 0,
        }
    }

    /// Canonical key for hashing and dedup.
    pub fn key(&self) -> Vec<(i64, u32)> {
        self.coeffs.iter().map(|(&e, &c)| (e, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_moduli_match_rule() {
        for &(p, e, table) in SHIPPED_MODULI {
            let found = find_modulus(p, e);
            assert_eq!(found.as_slice(), table, "modulus for ({p},{e})");
        }
    }

    #[test]
    fn f4_structure() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        // Every element other than 0, 1 has multiplicative order 3.
        for a in 2..4 {
            assert_eq!(f.multiplicative_order(a), 3);
        }
        assert_eq!(f.multiplicative_order(f.generator()), 3);
    }

    #[test]
    fn f2_and_f9() {
        assert_eq!(make_field(2, 1).unwrap().q(), 2);
        assert_eq!(make_field(3, 2).unwrap().q(), 9);
        assert!(matches!(make_field(4, 1), Err(GfError::NotPrime(4))));
        assert!(matches!(make_field(2, 21), Err(GfError::TooLarge { .. })));
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 1)] {
            let f = make_field(p, e).unwrap();
            let q = f.q();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 {
                        assert_eq!(f.mul(a, f.inv(a)), 1);
                    }
                }
            }
            // Frobenius is additive.
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
            // pth_root inverts frobenius.
            for a in 0..q {
                assert_eq!(f.pth_root(f.frobenius(a)), a);
            }
        }
    }

    #[test]
    fn wp_kernel_is_prime_field() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let f = make_field(p, e).unwrap();
            let kernel = (0..f.q()).filter(|&x| f.wp(x) == 0).count() as u32;
            assert_eq!(kernel, p);
            // Hence q/p cosets, i.e. p classes in F_q / wp(F_q).
            assert_eq!(f.wp_image().len() as u32, f.q() / p);
            let mut reps: Vec<u32> = (0..f.q()).map(|x| f.wp_coset_rep(x)).collect();
            reps.sort_unstable();
            reps.dedup();
            assert_eq!(reps.len() as u32, p);
        }
    }

    #[test]
    fn fixed_space_examples() {
        let f = make_field(2, 2).unwrap();
        // Permutation matrix of (12)(34) over F_4 fixes x1=x2, x3=x4.
        let mut m = FqMatrix::zero(4);
        m.set(0, 1, 1);
        m.set(1, 0, 1);
        m.set(2, 3, 1);
        m.set(3, 2, 1);
        assert_eq!(fixed_space_dim(&m, &f), 2);
        assert_eq!(fixed_space_dim(&FqMatrix::identity(4), &f), 4);
        // diag(z3, z3^2, z3, z3^2) has no eigenvalue 1.
        let z = f.generator();
        let z2 = f.mul(z, z);
        let mut d = FqMatrix::zero(4);
        d.set(0, 0, z);
        d.set(1, 1, z2);
        d.set(2, 2, z);
        d.set(3, 3, z2);
        assert_eq!(fixed_space_dim(&d, &f), 0);
    }

    #[test]
    fn determinant_multiplicative() {
        let f = make_field(3, 1).unwrap();
        let a = FqMatrix { n: 2, entries: vec![1, 2, 0, 1] };
        let b = FqMatrix { n: 2, entries: vec![2, 1, 1, 1] };
        let ab = a.mul(&b, &f);
        assert_eq!(ab.det(&f), f.mul(a.det(&f), b.det(&f)));
    }

    #[test]
    fn artin_schreier_reduce_examples() {
        let f2 = make_field(2, 1).unwrap();
        // t^{-2} = wp(t^{-1}) + t^{-1}
        let a = TruncLaurent::exact(&[(-2, 1)]);
        let r = a.artin_schreier_reduce(&f2).unwrap();
        assert_eq!(r, TruncLaurent::exact(&[(-1, 1)]));
        // wp(F_2) = 0, so 1 is its own class.
        let one = TruncLaurent::exact(&[(0, 1)]);
        assert_eq!(one.artin_schreier_reduce(&f2).unwrap(), one);
        // 0 is the trivial class.
        let zero = TruncLaurent::zero();
        assert_eq!(zero.artin_schreier_reduce(&f2).unwrap(), zero);
    }

    #[test]
    fn reduce_is_idempotent_and_class_invariant() {
        let f = make_field(2, 2).unwrap();
        let a = TruncLaurent::exact(&[(-6, 2), (-3, 3), (-1, 1), (0, 2)]);
        let r = a.artin_schreier_reduce(&f).unwrap();
        assert_eq!(r.artin_schreier_reduce(&f).unwrap(), r);
        // Adding wp(b) does not change the class.
        let b = TruncLaurent::exact(&[(-3, 2), (0, 1), (2, 3)]);
        let shifted = a.add(&b.wp(&f), &f);
        assert_eq!(shifted.artin_schreier_reduce(&f).unwrap(), r);
    }

    #[test]
    fn reduce_needs_constant_term() {
        let f = make_field(2, 1).unwrap();
        let a = TruncLaurent::new(&[(-1, 1)], 0);
        assert!(matches!(a.artin_schreier_reduce(&f), Err(GfError::TruncationExceeded { .. })));
    }
}
