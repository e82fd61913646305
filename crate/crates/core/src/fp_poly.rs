//! Dense univariate polynomials over `F_p` (coefficients `u64`, constant term
//! first): gcds, root finding and distinct-degree factorization patterns.

use crate::field::{Field, PrimeField};

pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|c| *c != 0)
}

pub fn sub(k: PrimeField, a: &[u64], b: &[u64]) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            k.sub(&x, &y)
        })
        .collect();
    trim(out)
}

pub fn mul(k: PrimeField, a: &[u64], b: &[u64]) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `m`.
pub fn rem(k: PrimeField, a: &[u64], m: &[u64]) -> FpPoly {
    let dm = degree(m).expect("division by zero polynomial");
    let inv_lc = k.inv(&m[dm]).unwrap();
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let q = k.mul(&r[dr], &inv_lc);
        for i in 0..=dm {
            let t = k.mul(&q, &m[i]);
            r[dr - dm + i] = k.sub(&r[dr - dm + i], &t);
        }
        r = trim(r);
    }
    r
}

pub fn monic(k: PrimeField, f: FpPoly) -> FpPoly {
    match degree(&f) {
        None => f,
        Some(d) => {
            let inv = k.inv(&f[d]).unwrap();
            f.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

pub fn gcd(k: PrimeField, a: &[u64], b: &[u64]) -> FpPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, a)
}

pub fn derivative(k: PrimeField, f: &[u64]) -> FpPoly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect(),
    )
}

/// `base^e mod m`.
pub fn powmod(k: PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> FpPoly {
    let mut acc: FpPoly = rem(k, &[1], m);
    let mut b = rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(k, &mul(k, &acc, &b), m);
        }
        b = rem(k, &mul(k, &b, &b), m);
        e >>= 1;
    }
    acc
}

pub fn is_squarefree(k: PrimeField, f: &[u64]) -> bool {
    let g = gcd(k, f, &derivative(k, f));
    degree(&g) == Some(0)
}

/// Degrees of the irreducible factors of a squarefree `f`, sorted ascending.
/// Returns `None` when `f` is zero or not squarefree.
pub fn factor_degrees(k: PrimeField, f: &[u64]) -> Option<Vec<usize>> {
    let mut f = monic(k, trim(f.to_vec()));
    degree(&f)?;
    if !is_squarefree(k, &f) {
        return None;
    }
    let x: FpPoly = vec![0, 1];
    let mut xp = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while degree(&f).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&f).unwrap() {
            out.push(degree(&f).unwrap());
            break;
        }
        xp = powmod(k, &xp, k.modulus(), &f);
        let g = gcd(k, &f, &sub(k, &xp, &x));
        let dg = degree(&g).unwrap();
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, dg / d));
            f = quo(k, &f, &g);
            xp = rem(k, &xp, &f);
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Exact quotient `a / b`.
pub fn quo(k: PrimeField, a: &[u64], b: &[u64]) -> FpPoly {
    let db = degree(b).expect("division by zero polynomial");
    let inv_lc = k.inv(&b[db]).unwrap();
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return Vec::new();
    };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![0u64; da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = k.mul(&r[dr], &inv_lc);
        q[dr - db] = c;
        for i in 0..=db {
            let t = k.mul(&c, &b[i]);
            r[dr - db + i] = k.sub(&r[dr - db + i], &t);
        }
        r = trim(r);
    }
    trim(q)
}

/// Distinct roots in `F_p`, via `gcd(f, x^p - x)` and equal-degree splitting.
pub fn roots(k: PrimeField, f: &[u64]) -> Vec<u64> {
    let f = monic(k, trim(f.to_vec()));
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x: FpPoly = vec![0, 1];
    let xp = powmod(k, &x, k.modulus(), &f);
    let g = gcd(k, &f, &sub(k, &xp, &x));
    let mut out = Vec::new();
    split_linear(k, g, 1, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(k: PrimeField, g: FpPoly, mut shift: u64, out: &mut Vec<u64>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(k.neg(&k.mul(&g[0], &k.inv(&g[1]).unwrap()))),
        Some(_) => loop {
            // gcd(g, (x + shift)^((p-1)/2) - 1) is a proper factor for most shifts.
            let h = powmod(k, &[shift % k.modulus(), 1], (k.modulus() - 1) / 2, &g);
            let d = gcd(k, &g, &sub(k, &h, &[1]));
            shift += 1;
            let dd = degree(&d).unwrap_or(0);
            if dd > 0 && dd < degree(&g).unwrap() {
                let other = quo(k, &g, &d);
                split_linear(k, d, shift, out);
                split_linear(k, other, shift, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_match_brute_force() {
        let k = PrimeField::new(101).unwrap();
        // (x-3)(x-7)(x^2+1) over F_101; -1 is a square mod 101 (101 = 1 mod 4)
        let f = mul(k, &mul(k, &[98, 1], &[94, 1]), &[1, 0, 1]);
        let brute: Vec<u64> = (0..101).filter(|x| k.eval_poly(&f, x) == 0).collect();
        assert_eq!(roots(k, &f), brute);
        assert_eq!(brute.len(), 4);
    }

    #[test]
    fn degree_patterns() {
        let k = PrimeField::new(103).unwrap();
        // x^2 + 1 is irreducible mod 103 (103 = 3 mod 4)
        let f = mul(k, &[1, 0, 1], &[5, 1]);
        assert_eq!(factor_degrees(k, &f), Some(vec![1, 2]));
        assert_eq!(factor_degrees(k, &mul(k, &[5, 1], &[5, 1])), None);
        // x^3 - 2: 103 = 1 mod 3 and 2 is not a cube mod 103 -> irreducible
        let cube_free = (1..103u64).all(|x| k.pow(&x, 3) != 2);
        let pat = factor_degrees(k, &[101, 0, 0, 1]).unwrap();
        assert_eq!(pat == vec![3], cube_free);
    }
}
