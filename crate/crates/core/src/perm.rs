//! Permutations on `{0, .., n-1}` stored as image arrays.
//!
//! Composition is left-to-right: `(a * b)(i) = b(a(i))`. Under this
//! convention the conjugate `a^s = s⁻¹ a s` relabels points by `s`, so
//! `support(a^s) = s(support(a))`.

use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm(pub Vec<u8>);

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if (v as usize) >= n || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.0.len(), other.0.len());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `s⁻¹ * self * s`.
    pub fn conjugate_by(&self, s: &Perm) -> Perm {
        let sinv = s.inverse();
        sinv.compose(self).compose(s)
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<u8> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u8 != v)
            .map(|(i, _)| i as u8)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u8 != v)
            .count()
    }

    /// Cycle lengths as a descending partition of n (fixed points included as 1s).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn is_even(&self) -> bool {
        // parity = (-1)^(n - #cycles)
        let n = self.0.len();
        let cycles = self.cycle_type().len();
        (n - cycles) % 2 == 0
    }

    /// Build from disjoint cycles given as point lists; panics on overlap.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let from = cyc[w] as usize;
                let to = cyc[(w + 1) % cyc.len()];
                assert_eq!(img[from], from as u8, "cycles overlap");
                img[from] = to;
            }
        }
        Perm(img)
    }

    /// Canonical element of the given cycle type: cycles laid out on
    /// `0, 1, 2, ...` in the order the partition lists them.
    pub fn canonical_of_type(n: usize, partition: &[usize]) -> Perm {
        assert_eq!(
            partition.iter().sum::<usize>(),
            n,
            "partition must sum to n"
        );
        let mut img: Vec<u8> = (0..n as u8).collect();
        let mut next = 0u8;
        for &len in partition {
            let pts: Vec<u8> = (next..next + len as u8).collect();
            for w in 0..len {
                img[pts[w] as usize] = pts[(w + 1) % len];
            }
            next += len as u8;
        }
        Perm(img)
    }

    /// Cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.0[i] as usize;
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Uniform random permutation (Fisher–Yates).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            img.swap(i, j);
        }
        Perm(img)
    }

    /// Uniform random even permutation: draw uniformly, transpose two
    /// points if odd (a bijection between the odd and even halves).
    pub fn random_even<R: Rng>(n: usize, rng: &mut R) -> Perm {
        assert!(n >= 2);
        let mut p = Perm::random(n, rng);
        if !p.is_even() {
            p.0.swap(0, 1);
        }
        p
    }
}

/// n! as u128 (valid for n <= 33).
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Advance to the lexicographically next permutation of the slice;
/// false once the descending arrangement is reached.
pub fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All k-subsets of {0..n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<u8>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (n - k + i) as u8 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient as u128.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Size of the S_n conjugacy class with the given cycle type
/// (descending partition of n, 1s included): n! / ∏ k^{m_k} m_k!.
pub fn sn_class_size(n: usize, partition: &[usize]) -> u128 {
    assert_eq!(partition.iter().sum::<usize>(), n);
    let mut centralizer: u128 = 1;
    let mut run = 0usize;
    let mut prev = 0usize;
    for &k in partition {
        if k == prev {
            run += 1;
        } else {
            centralizer *= factorial(run);
            prev = k;
            run = 1;
        }
        centralizer *= k as u128;
    }
    centralizer *= factorial(run);
    factorial(n) / centralizer
}

/// Whether the S_n class of this cycle type splits into two A_n classes
/// (all cycle lengths odd and pairwise distinct, fixed points included).
pub fn sn_class_splits(partition: &[usize]) -> bool {
    partition.iter().all(|&k| k % 2 == 1) && partition.windows(2).all(|w| w[0] != w[1])
}

/// Size of the A_n class of an even element with this cycle type.
pub fn an_class_size(n: usize, partition: &[usize]) -> u128 {
    let s = sn_class_size(n, partition);
    if sn_class_splits(partition) {
        s / 2
    } else {
        s
    }
}
