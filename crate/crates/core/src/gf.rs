//! Small finite fields GF(p^k) with tabulated arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-p digits of the code
//! are the coefficients of a polynomial over F_p, reduced modulo the
//! lexicographically first monic irreducible polynomial of degree k.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GfField {
    pub p: u16,
    pub k: u32,
    pub q: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
    square: Vec<bool>,
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return (m == 1).then_some((p, k));
        }
        p += 1;
    }
    Some((q, 1))
}

impl GfField {
    pub fn new(q: u16) -> Result<GfField> {
        let (p, k) = factor_prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        let p = p as u16;
        let modulus = if k == 1 {
            vec![0u16] // irrelevant: reduction is plain mod p
        } else {
            first_irreducible(p, k)
        };
        let q = q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = add_poly(a as u16, b as u16, p, k);
                mul[a * q + b] = mul_poly(a as u16, b as u16, p, k, &modulus);
            }
        }
        let mut inv = vec![0u16; q];
        let mut neg = vec![0u16; q];
        let mut square = vec![false; q];
        for a in 0..q {
            for b in 0..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
            }
            let sq = mul[a * q + a] as usize;
            square[sq] = true;
        }
        Ok(GfField {
            p,
            k,
            q: q as u16,
            add,
            mul,
            inv,
            neg,
            square,
        })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
    /// Nonzero square test (0 excluded).
    #[inline]
    pub fn is_nonzero_square(&self, a: u16) -> bool {
        a != 0 && self.square[a as usize]
    }
}

fn digits(mut a: u16, p: u16, k: u32) -> Vec<u16> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u16], p: u16) -> u16 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_poly(a: u16, b: u16, p: u16, k: u32) -> u16 {
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let sum: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(&sum, p)
}

/// Multiply two codes as polynomials and reduce mod the degree-k modulus
/// (given as its k low coefficients; leading coefficient 1 implicit).
fn mul_poly(a: u16, b: u16, p: u16, k: u32, modulus: &[u16]) -> u16 {
    let k = k as usize;
    if k == 1 {
        return (a as u32 * b as u32 % p as u32) as u16;
    }
    let da = digits(a, p, k as u32);
    let db = digits(b, p, k as u32);
    let mut prod = vec![0u16; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u32 + x as u32 * y as u32) % p as u32) as u16;
        }
    }
    // x^k = -modulus (mod p), applied from the top down
    for deg in (k..2 * k - 1).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (j, &m) in modulus.iter().enumerate() {
            let idx = deg - k + j;
            let sub = (c as u32 * m as u32) % p as u32;
            prod[idx] = ((prod[idx] as u32 + p as u32 * p as u32 - sub) % p as u32) as u16;
        }
    }
    undigits(&prod[..k], p)
}

/// Low coefficients of the lexicographically first monic irreducible
/// polynomial of degree k over F_p.
fn first_irreducible(p: u16, k: u32) -> Vec<u16> {
    let count = (p as u64).pow(k);
    'cand: for code in 0..count {
        let lows = digits(code as u16, p, k);
        // roots in F_p rule out any factor of degree 1; for k <= 3 (q <= 31
        // has k <= 4 only at q = 16, p = 2) degree-1 freedom suffices except
        // for k = 4 where we also exclude irreducible quadratic factors.
        for x in 0..p {
            if eval_monic(&lows, x, p, k) == 0 {
                continue 'cand;
            }
        }
        if k == 4 {
            // check divisibility by the monic irreducible quadratics
            for b in 0..p {
                for c in 0..p {
                    let quad = [c, b];
                    if (0..p).all(|x| eval_monic(&quad, x, p, 2) != 0)
                        && divides_monic(&quad, 2, &lows, k, p)
                    {
                        continue 'cand;
                    }
                }
            }
        }
        return lows;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn eval_monic(lows: &[u16], x: u16, p: u16, k: u32) -> u16 {
    let mut acc: u32 = 1; // leading monic term
    for &c in lows.iter().rev() {
        acc = (acc * x as u32 + c as u32) % p as u32;
    }
    let _ = k;
    acc as u16
}

/// Does the monic polynomial with low coeffs `d` (degree dk) divide the
/// monic polynomial with low coeffs `n` (degree nk)?
fn divides_monic(d: &[u16], dk: u32, n: &[u16], nk: u32, p: u16) -> bool {
    let mut rem: Vec<u32> = n.iter().map(|&c| c as u32).collect();
    rem.push(1);
    let dk = dk as usize;
    for deg in (dk..=nk as usize).rev() {
        let c = rem[deg];
        if c == 0 {
            continue;
        }
        rem[deg] = 0;
        for (j, &m) in d.iter().enumerate() {
            let idx = deg - dk + j;
            rem[idx] = (rem[idx] + p as u32 * p as u32 - c * m as u32 % p as u32) % p as u32;
        }
    }
    rem.iter().all(|&c| c == 0)
}
