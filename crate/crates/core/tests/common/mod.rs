//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own formulas.
#![allow(dead_code)]

use std::collections::HashMap;

/// Removes square factors, keeping the sign: returns the square-free part.
pub fn square_free(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * (out * m) as i64
}

fn valuation(mut n: i64, p: i64) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Decides whether `z² = a·x² + b·y²` has a nonzero solution over `ℚ_p` by
/// exhaustive search for primitive solutions modulo `p^k`.
///
/// A residue solution `X` is accepted only when some partial derivative has
/// valuation `e` with `2e < k`; Hensel's lemma then lifts it to a true
/// solution. With square-free `a, b`, any true primitive solution has such a
/// derivative with `e ≤ 1` (odd `p`) or `e ≤ 1 + max(v(a), v(b))` (`p = 2`),
/// so the chosen `k` makes the search exact in both directions.
pub struct PadicOracle {
    roots: HashMap<(u64, u32), Vec<Vec<u64>>>,
    memo: HashMap<(i64, i64, u64), bool>,
}

impl Default for PadicOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl PadicOracle {
    pub fn new() -> Self {
        PadicOracle { roots: HashMap::new(), memo: HashMap::new() }
    }

    fn root_table(&mut self, p: u64, k: u32) -> &Vec<Vec<u64>> {
        self.roots.entry((p, k)).or_insert_with(|| {
            let q = p.pow(k);
            let mut table = vec![Vec::new(); q as usize];
            for z in 0..q {
                table[(z * z % q) as usize].push(z);
            }
            table
        })
    }

    /// `+1` when solvable over `ℚ_p`, else `-1`. Rational arguments enter as
    /// `num·den`, which differs from `num/den` by a square.
    pub fn symbol(&mut self, a: (i64, i64), b: (i64, i64), p: u64) -> i8 {
        let a = square_free(a.0 * a.1);
        let b = square_free(b.0 * b.1);
        if let Some(&s) = self.memo.get(&(a, b, p)) {
            return if s { 1 } else { -1 };
        }
        let pi = p as i64;
        let (va, vb) = (valuation(a, pi), valuation(b, pi));
        let k = if p == 2 { 3 + 2 * va.max(vb) } else { 3 };
        let solvable = self.search(a, b, p, k);
        self.memo.insert((a, b, p), solvable);
        if solvable {
            1
        } else {
            -1
        }
    }

    fn search(&mut self, a: i64, b: i64, p: u64, k: u32) -> bool {
        let q = p.pow(k);
        let qi = q as i64;
        let ar = a.rem_euclid(qi) as u64;
        let br = b.rem_euclid(qi) as u64;
        let pi = p as i64;
        // valuation of 2·c·x, capped at k (x taken as a residue)
        let deriv_val = |c: i64, x: u64| -> u32 {
            if x == 0 {
                return k;
            }
            valuation(2, pi) + valuation(c, pi) + valuation(x as i64, pi)
        };
        let liftable = |x: u64, y: u64, z: u64| {
            let e = deriv_val(a, x).min(deriv_val(b, y)).min(deriv_val(1, z));
            2 * e < k
        };
        let table = self.root_table(p, k).clone();
        // first unit coordinate normalized to 1: x = 1
        for y in 0..q {
            let w = (ar + br * (y * y % q)) % q;
            if table[w as usize].iter().any(|&z| liftable(1, y, z)) {
                return true;
            }
        }
        // x ≡ 0 (mod p), y = 1
        for x in (0..q).step_by(p as usize) {
            let w = (ar * (x * x % q) + br) % q;
            if table[w as usize].iter().any(|&z| liftable(x, 1, z)) {
                return true;
            }
        }
        // x ≡ y ≡ 0 (mod p), z = 1
        for x in (0..q).step_by(p as usize) {
            for y in (0..q).step_by(p as usize) {
                let w = (ar * (x * x % q) + br * (y * y % q)) % q;
                if w == 1 && liftable(x, y, 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Solvability over ℝ: the form `z² - a x² - b y²` is isotropic unless
/// `a, b < 0`.
pub fn real_symbol(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// `det(M)` by the Leibniz expansion over all permutations.
pub fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let term: i64 = (0..n).map(|i| m[i][perm[i]]).product();
        total += if inversions % 2 == 0 { term } else { -term };
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Characteristic polynomial `det(λI - A)`, ascending coefficients, from
/// sums of principal minors: the coefficient of `λ^{n-k}` is `(-1)^k E_k`.
pub fn char_poly_by_minors(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[n] = 1;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j]).collect()).collect();
        let k = idx.len();
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        coeffs[n - k] += sign * leibniz_det(&sub);
    }
    coeffs
}

/// Precompiled Leibniz terms for every principal minor of an `n×n` matrix,
/// so exhaustive sweeps need not rebuild submatrices.
pub struct MinorExpansion {
    n: usize,
    /// (power of λ, sign, flattened entry indices)
    terms: Vec<(usize, i64, Vec<usize>)>,
}

impl MinorExpansion {
    pub fn new(n: usize) -> Self {
        let mut terms = Vec::new();
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            let mut perm: Vec<usize> = (0..k).collect();
            loop {
                let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
                let sign = if (inversions + k).is_multiple_of(2) { 1 } else { -1 };
                let entries = (0..k).map(|i| idx[i] * n + idx[perm[i]]).collect();
                terms.push((n - k, sign, entries));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        MinorExpansion { n, terms }
    }

    /// Ascending coefficients for the row-major matrix `flat`.
    pub fn eval(&self, flat: &[i64]) -> Vec<i64> {
        let mut coeffs = vec![0i64; self.n + 1];
        coeffs[self.n] = 1;
        for (power, sign, entries) in &self.terms {
            let mut prod = *sign;
            for &e in entries {
                prod *= flat[e];
                if prod == 0 {
                    break;
                }
            }
            coeffs[*power] += prod;
        }
        coeffs
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
