//! PSL(2, q) as projective 2x2 matrices over F_q.
//!
//! A matrix is stored row-major `[a, b, c, d]`, scaled so that its first
//! nonzero entry is 1. Among these projective representatives, PSL(2,q)
//! is exactly the set with determinant a nonzero square: rescaling by λ
//! multiplies the determinant by λ², so squareness is scale-invariant,
//! and matrices of determinant 1 (the image of SL₂) hit every square class.

use crate::gf::GfField;
use crate::group::Elem;

pub fn order(f: &GfField) -> u128 {
    let q = f.q as u128;
    let d = if f.p == 2 { 1 } else { 2 };
    q * (q * q - 1) / d
}

fn canonicalize(f: &GfField, m: [u16; 4]) -> [u16; 4] {
    let lead = m.iter().copied().find(|&x| x != 0).expect("nonzero matrix");
    if lead == 1 {
        return m;
    }
    let s = f.inv(lead);
    [
        f.mul(m[0], s),
        f.mul(m[1], s),
        f.mul(m[2], s),
        f.mul(m[3], s),
    ]
}

fn det(f: &GfField, m: &[u16; 4]) -> u16 {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

pub fn mul(f: &GfField, x: &[u16; 4], y: &[u16; 4]) -> [u16; 4] {
    let m = [
        f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
        f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
        f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
        f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
    ];
    canonicalize(f, m)
}

pub fn inv(f: &GfField, x: &[u16; 4]) -> [u16; 4] {
    // projective adjugate
    let zero = 0u16;
    let m = [x[3], f.sub(zero, x[1]), f.sub(zero, x[2]), x[0]];
    canonicalize(f, m)
}

/// All canonical representatives with square determinant.
pub fn enumerate(f: &GfField) -> Vec<Elem> {
    let q = f.q;
    let mut out = Vec::with_capacity(order(f) as usize);
    let mut push = |m: [u16; 4]| {
        if f.is_nonzero_square(det(f, &m)) {
            out.push(Elem::Mat(m));
        }
    };
    // first nonzero entry 1, by position
    for b in 0..q {
        for c in 0..q {
            for d in 0..q {
                push([1, b, c, d]);
            }
        }
    }
    for c in 0..q {
        for d in 0..q {
            push([0, 1, c, d]);
        }
    }
    for d in 0..q {
        push([0, 0, 1, d]);
    }
    // [0,0,0,1] is singular; skip
    debug_assert_eq!(out.len() as u128, order(f));
    out
}

/// Transvections along a basis of F_q plus the Weyl element: these
/// generate SL(2,q), hence the whole projective image.
pub fn generators(f: &GfField) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut basis_elem = 1u16; // code of x^j is p^j
    for _ in 0..f.k {
        gens.push(Elem::Mat(canonicalize(f, [1, basis_elem, 0, 1])));
        basis_elem = basis_elem.saturating_mul(f.p);
    }
    let neg1 = f.sub(0, 1);
    gens.push(Elem::Mat(canonicalize(f, [0, 1, neg1, 0])));
    gens.dedup();
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (q, expect) in [
            (2u16, 6u128),
            (3, 12),
            (4, 60),
            (5, 60),
            (7, 168),
            (9, 360),
            (11, 660),
            (13, 1092),
        ] {
            let f = GfField::new(q).unwrap();
            assert_eq!(order(&f), expect);
            assert_eq!(enumerate(&f).len() as u128, expect);
        }
    }

    #[test]
    fn canonical_products_stay_canonical() {
        let f = GfField::new(7).unwrap();
        let elems = enumerate(&f);
        let take = |i: usize| match &elems[i] {
            Elem::Mat(m) => *m,
            _ => unreachable!(),
        };
        for i in (0..elems.len()).step_by(17) {
            for j in (0..elems.len()).step_by(13) {
                let p = mul(&f, &take(i), &take(j));
                assert!(f.is_nonzero_square(det(&f, &p)));
                let lead = p.iter().copied().find(|&x| x != 0).unwrap();
                assert_eq!(lead, 1);
            }
        }
    }
}
