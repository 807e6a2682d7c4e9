//! Dense univariate polynomials over the prime field F_p.
//!
//! Coefficients are stored constant term first and kept trimmed (no trailing
//! zeros); the zero polynomial is the empty vector.

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn from_signed(coeffs: &[i64], p: u64) -> Poly {
    trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect())
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn is_zero(a: &[u32]) -> bool {
    a.is_empty()
}

pub fn constant(c: u64, p: u64) -> Poly {
    trim(vec![(c % p) as u32])
}

pub fn monomial(deg: usize) -> Poly {
    let mut v = vec![0; deg + 1];
    v[deg] = 1;
    v
}

pub fn add(a: &[u32], b: &[u32], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let c = (0..n)
        .map(|i| {
            let s = *a.get(i).unwrap_or(&0) as u64 + *b.get(i).unwrap_or(&0) as u64;
            (s % p) as u32
        })
        .collect();
    trim(c)
}

pub fn neg(a: &[u32], p: u64) -> Poly {
    a.iter().map(|&c| ((p - c as u64) % p) as u32).collect()
}

pub fn sub(a: &[u32], b: &[u32], p: u64) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u32], s: u64, p: u64) -> Poly {
    trim(a.iter().map(|&c| (c as u64 * s % p) as u32).collect())
}

pub fn mul(a: &[u32], b: &[u32], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(c.into_iter().map(|v| v as u32).collect())
}

pub fn inv_mod_p(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u32], b: &[u32], p: u64) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db] as u64, p);
    if r.len() < b.len() {
        return (Vec::new(), trim(a.to_vec()));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lead_inv % p;
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj as u64 % p) % p;
            }
        }
    }
    r.truncate(db);
    (
        trim(q.into_iter().map(|v| v as u32).collect()),
        trim(r.into_iter().map(|v| v as u32).collect()),
    )
}

pub fn rem(a: &[u32], b: &[u32], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn make_monic(a: &[u32], p: u64) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod_p(l as u64, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u32], b: &[u32], p: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

/// Order of vanishing at x = 0; `None` for the zero polynomial.
pub fn x_adic_order(a: &[u32]) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

/// Inverse of `a` modulo x^k; requires a nonzero constant term.
pub fn inv_series(a: &[u32], k: usize, p: u64) -> Poly {
    assert!(a.first().is_some_and(|&c| c != 0), "series not invertible");
    let c0 = inv_mod_p(a[0] as u64, p);
    let mut inv = vec![0u64; k];
    for n in 0..k {
        // sum_{i=0..n} a_i inv_{n-i} = [n == 0]
        let mut s = if n == 0 { 1 } else { 0 };
        for i in 1..=n.min(a.len().saturating_sub(1)) {
            s = (s + p - (a[i] as u64 * inv[n - i]) % p) % p;
        }
        inv[n] = s * c0 % p;
    }
    trim(inv.into_iter().map(|v| v as u32).collect())
}

pub fn truncate(a: &[u32], k: usize) -> Poly {
    trim(a.iter().take(k).copied().collect())
}

pub fn is_irreducible(f: &[u32], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        let mut found = false;
        for_each_monic(k, p, |g| {
            if !found && rem(f, g, p).is_empty() {
                found = true;
            }
        });
        if found {
            return false;
        }
    }
    true
}

/// Calls `f` on every monic polynomial of degree `d`, in lexicographic order
/// of the lower coefficients (constant term varying fastest).
pub fn for_each_monic(d: usize, p: u64, mut f: impl FnMut(&[u32])) {
    let mut c = vec![0u32; d + 1];
    c[d] = 1;
    loop {
        f(&c);
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            c[i] += 1;
            if c[i] as u64 == p {
                c[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// First monic irreducible of degree `d` in [`for_each_monic`] order.
pub fn first_irreducible(d: usize, p: u64) -> Poly {
    let mut out = None;
    for_each_monic(d, p, |g| {
        if out.is_none() && is_irreducible(g, p) {
            out = Some(g.to_vec());
        }
    });
    out.expect("irreducible polynomials exist in every degree")
}

pub fn format(a: &[u32], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    terms.join("+")
}
