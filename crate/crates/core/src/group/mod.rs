//! Construction of small finite groups with a fixed, reproducible element
//! indexing: elements are enumerated, canonically encoded, and sorted, so
//! index `i` means the same element in every run.

mod conjugacy;
mod psl2;

pub use conjugacy::{direct_sum_class, ConjClass, ConjClasses};

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: u64 = 100_000;

/// |G|² multiplication tables are kept below this order.
const MUL_TABLE_MAX: usize = 1200;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A group element in its canonical encoding. Equal elements always have
/// identical encodings, so equality and ordering are structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Permutation as an image array.
    Perm(Perm),
    /// Projective 2x2 matrix `[a, b, c, d]` over F_q, scaled so the first
    /// nonzero entry is 1.
    Mat([u16; 4]),
    /// Abstract index into a Cayley table.
    Idx(u32),
}

impl Elem {
    /// Human-readable form: cycle notation, matrix rows, or `#index`.
    pub fn display(&self) -> String {
        match self {
            Elem::Perm(p) => p.cycle_string(),
            Elem::Mat(m) => format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]),
            Elem::Idx(i) => format!("#{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PermFamily {
    Symmetric,
    Alternating,
}

#[derive(Debug, Clone)]
enum GroupKind {
    Permutation { n: usize, family: PermFamily },
    Psl2 { field: GfField },
    Cayley { n: usize, table: Vec<u32> },
}

/// Group construction request. Serialized form matches the group spec
/// file schema: `{"kind": "...", "n": ..., "q": ..., "table": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Symmetric { n: usize },
    Alternating { n: usize },
    Psl2 { q: u16 },
    Cayley { table: Vec<Vec<u32>> },
}

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Alternating { n } => format!("A{n}"),
            GroupSpec::Psl2 { q } => format!("PSL(2,{q})"),
            GroupSpec::Cayley { table } => format!("cayley{}", table.len()),
        }
    }
}

pub struct Group {
    id: u64,
    pub name: String,
    kind: GroupKind,
    elements: Vec<Elem>,
    index: HashMap<Elem, u32>,
    inv: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    identity: u32,
    generators: Vec<u32>,
    classes: OnceLock<Arc<ConjClasses>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Arc<Group>> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: u64) -> Result<Arc<Group>> {
    let (kind, elements) = match spec {
        GroupSpec::Symmetric { n } => {
            check_cap(perm_group_order(*n, PermFamily::Symmetric), cap)?;
            let kind = GroupKind::Permutation {
                n: *n,
                family: PermFamily::Symmetric,
            };
            (kind, enumerate_perms(*n, false))
        }
        GroupSpec::Alternating { n } => {
            check_cap(perm_group_order(*n, PermFamily::Alternating), cap)?;
            let kind = GroupKind::Permutation {
                n: *n,
                family: PermFamily::Alternating,
            };
            (kind, enumerate_perms(*n, true))
        }
        GroupSpec::Psl2 { q } => {
            let field = GfField::new(*q)?;
            check_cap(psl2::order(&field), cap)?;
            let elements = psl2::enumerate(&field);
            (GroupKind::Psl2 { field }, elements)
        }
        GroupSpec::Cayley { table } => {
            check_cap(table.len() as u128, cap)?;
            let flat = validate_cayley(table)?;
            let n = table.len();
            let elements = (0..n as u32).map(Elem::Idx).collect();
            (GroupKind::Cayley { n, table: flat }, elements)
        }
    };
    Group::assemble(spec.name(), kind, elements)
}

fn check_cap(order: u128, cap: u64) -> Result<()> {
    if order > cap as u128 {
        return Err(Error::OrderCapExceeded {
            order: order.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    Ok(())
}

fn perm_group_order(n: usize, family: PermFamily) -> u128 {
    let fact = crate::perm::factorial(n);
    match family {
        PermFamily::Symmetric => fact,
        PermFamily::Alternating => {
            if n < 2 {
                1
            } else {
                fact / 2
            }
        }
    }
}

fn enumerate_perms(n: usize, even_only: bool) -> Vec<Elem> {
    // lexicographic generation via repeated next_permutation
    let mut out = Vec::new();
    let mut img: Vec<u8> = (0..n as u8).collect();
    loop {
        let p = Perm(img.clone());
        if !even_only || p.is_even() {
            out.push(Elem::Perm(p));
        }
        if !crate::perm::next_permutation(&mut img) {
            break;
        }
    }
    out
}

fn validate_cayley(table: &[Vec<u32>]) -> Result<Vec<u32>> {
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidCayleyTable("empty table".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for row in table {
        if row.len() != n {
            return Err(Error::InvalidCayleyTable("table is not square".into()));
        }
        for &v in row {
            if v as usize >= n {
                return Err(Error::InvalidCayleyTable(format!(
                    "entry {v} out of range 0..{n}"
                )));
            }
        }
        flat.extend_from_slice(row);
    }
    // Latin square: every row and column a permutation
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = flat[i * n + j] as usize;
            let c = flat[j * n + i] as usize;
            if row_seen[r] || col_seen[c] {
                return Err(Error::InvalidCayleyTable(format!(
                    "row or column {i} repeats an entry"
                )));
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    // two-sided identity
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| flat[e * n + j] == j as u32 && flat[j * n + e] == j as u32));
    let Some(e) = identity else {
        return Err(Error::InvalidCayleyTable("no two-sided identity".into()));
    };
    // inverses
    for g in 0..n {
        let right = (0..n).find(|&x| flat[g * n + x] == e as u32);
        match right {
            Some(x) if flat[x * n + g] == e as u32 => {}
            _ => {
                return Err(Error::InvalidCayleyTable(format!(
                    "element {g} lacks a two-sided inverse"
                )))
            }
        }
    }
    // associativity on sampled triples (all triples when small)
    let mut rng = ChaCha12Rng::seed_from_u64(0x6173_736f);
    let total = (n as u64).pow(3);
    let samples = 50_000u64.min(total);
    for s in 0..samples {
        let (a, b, c) = if total <= samples {
            let a = (s / (n as u64 * n as u64)) as usize;
            let b = (s / n as u64 % n as u64) as usize;
            let c = (s % n as u64) as usize;
            (a, b, c)
        } else {
            (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            )
        };
        let ab_c = flat[flat[a * n + b] as usize * n + c] as u32;
        let a_bc = flat[a * n + flat[b * n + c] as usize] as u32;
        if ab_c != a_bc {
            return Err(Error::InvalidCayleyTable(format!(
                "associativity fails at ({a},{b},{c})"
            )));
        }
    }
    Ok(flat)
}

impl Group {
    fn assemble(name: String, kind: GroupKind, mut elements: Vec<Elem>) -> Result<Arc<Group>> {
        elements.sort_unstable();
        elements.dedup();
        let order = elements.len();
        let index: HashMap<Elem, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();

        let identity_elem = match &kind {
            GroupKind::Permutation { n, .. } => Elem::Perm(Perm::identity(*n)),
            GroupKind::Psl2 { .. } => Elem::Mat([1, 0, 0, 1]),
            GroupKind::Cayley { n, table } => {
                let e = (0..*n)
                    .find(|&e| (0..*n).all(|j| table[e * n + j] == j as u32))
                    .expect("validated table has an identity");
                Elem::Idx(e as u32)
            }
        };
        let identity = *index.get(&identity_elem).expect("identity enumerated");

        let mut group = Group {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            kind,
            elements,
            index,
            inv: Vec::new(),
            mul_table: None,
            identity,
            generators: Vec::new(),
            classes: OnceLock::new(),
        };

        group.inv = (0..order as u32)
            .map(|i| {
                let e = group.elem_inv(&group.elements[i as usize]);
                group.index[&e]
            })
            .collect();

        if order <= MUL_TABLE_MAX {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    let prod = group.elem_mul(&group.elements[a], &group.elements[b]);
                    table[a * order + b] = group.index[&prod];
                }
            }
            group.mul_table = Some(table);
        }

        group.generators = group.natural_generators();
        let reached = group.closure_of(&group.generators);
        if reached != order {
            return Err(Error::InvalidCayleyTable(format!(
                "generators reach only {reached} of {order} elements"
            )));
        }
        Ok(Arc::new(group))
    }

    fn natural_generators(&self) -> Vec<u32> {
        let mut gens: Vec<Elem> = match &self.kind {
            GroupKind::Permutation { n, family } => {
                let n = *n;
                let mut g = Vec::new();
                match family {
                    PermFamily::Symmetric => {
                        if n >= 2 {
                            g.push(Elem::Perm(Perm::from_cycles(n, &[&[0, 1]])));
                        }
                        if n >= 3 {
                            let cyc: Vec<u8> = (0..n as u8).collect();
                            g.push(Elem::Perm(Perm::from_cycles(n, &[&cyc])));
                        }
                    }
                    PermFamily::Alternating => {
                        if n >= 3 {
                            g.push(Elem::Perm(Perm::from_cycles(n, &[&[0, 1, 2]])));
                        }
                        if n >= 4 {
                            let cyc: Vec<u8> = if n % 2 == 1 {
                                (0..n as u8).collect()
                            } else {
                                (1..n as u8).collect()
                            };
                            g.push(Elem::Perm(Perm::from_cycles(n, &[&cyc])));
                        }
                    }
                }
                g
            }
            GroupKind::Psl2 { field } => psl2::generators(field),
            GroupKind::Cayley { .. } => return self.greedy_generators(),
        };
        gens.dedup();
        gens.into_iter().map(|e| self.index[&e]).collect()
    }

    /// Smallest-index elements that generate, found by repeated closure.
    fn greedy_generators(&self) -> Vec<u32> {
        let order = self.order();
        let mut gens: Vec<u32> = Vec::new();
        let mut in_closure = vec![false; order];
        in_closure[self.identity as usize] = true;
        let mut count = 1usize;
        while count < order {
            let next = (0..order as u32)
                .find(|&i| !in_closure[i as usize])
                .unwrap();
            gens.push(next);
            // rebuild closure from scratch
            in_closure.iter_mut().for_each(|b| *b = false);
            in_closure[self.identity as usize] = true;
            let mut queue = vec![self.identity];
            count = 1;
            while let Some(g) = queue.pop() {
                for &s in &gens {
                    let h = self.mul(g, s);
                    if !in_closure[h as usize] {
                        in_closure[h as usize] = true;
                        count += 1;
                        queue.push(h);
                    }
                }
            }
        }
        gens
    }

    fn closure_of(&self, gens: &[u32]) -> usize {
        let order = self.order();
        let mut seen = vec![false; order];
        seen[self.identity as usize] = true;
        let mut queue = vec![self.identity];
        let mut count = 1usize;
        while let Some(g) = queue.pop() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    count += 1;
                    queue.push(h);
                }
            }
        }
        count
    }

    fn elem_mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (GroupKind::Permutation { .. }, Elem::Perm(x), Elem::Perm(y)) => {
                Elem::Perm(x.compose(y))
            }
            (GroupKind::Psl2 { field }, Elem::Mat(x), Elem::Mat(y)) => {
                Elem::Mat(psl2::mul(field, x, y))
            }
            (GroupKind::Cayley { n, table }, Elem::Idx(x), Elem::Idx(y)) => {
                Elem::Idx(table[*x as usize * n + *y as usize])
            }
            _ => unreachable!("element encoding matches group kind"),
        }
    }

    fn elem_inv(&self, a: &Elem) -> Elem {
        match (&self.kind, a) {
            (GroupKind::Permutation { .. }, Elem::Perm(x)) => Elem::Perm(x.inverse()),
            (GroupKind::Psl2 { field }, Elem::Mat(x)) => Elem::Mat(psl2::inv(field, x)),
            (GroupKind::Cayley { n, table }, Elem::Idx(x)) => {
                let e = self.identity;
                let x = *x as usize;
                let y = (0..*n)
                    .find(|&y| table[x * n + y] == e)
                    .expect("validated table has inverses");
                Elem::Idx(y as u32)
            }
            _ => unreachable!("element encoding matches group kind"),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn element(&self, i: u32) -> &Elem {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, e: &Elem) -> Option<u32> {
        self.index.get(e).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.mul_table {
            t[a as usize * self.elements.len() + b as usize]
        } else {
            let prod = self.elem_mul(&self.elements[a as usize], &self.elements[b as usize]);
            self.index[&prod]
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `s⁻¹ g s`.
    #[inline]
    pub fn conjugate(&self, g: u32, s: u32) -> u32 {
        self.mul(self.mul(self.inv(s), g), s)
    }

    /// Degree n for permutation groups.
    pub fn permutation_degree(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Permutation { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn perm_family(&self) -> Option<PermFamily> {
        match &self.kind {
            GroupKind::Permutation { family, .. } => Some(*family),
            _ => None,
        }
    }

    /// Underlying permutation of an element, for permutation groups.
    pub fn perm(&self, i: u32) -> Result<&Perm> {
        match &self.elements[i as usize] {
            Elem::Perm(p) => Ok(p),
            _ => Err(Error::NotPermutationGroup),
        }
    }

    /// Moved points of a permutation element.
    pub fn support(&self, i: u32) -> Result<Vec<u8>> {
        Ok(self.perm(i)?.support())
    }

    /// Conjugacy classes, computed once and shared.
    pub fn classes(&self) -> Arc<ConjClasses> {
        self.classes
            .get_or_init(|| Arc::new(conjugacy::conjugacy_classes(self)))
            .clone()
    }

    /// Canonical projective scaling of a raw matrix, for PSL(2,q) groups.
    pub fn canonicalize_matrix(&self, m: [u16; 4]) -> Result<Elem> {
        match &self.kind {
            GroupKind::Psl2 { field } => {
                if m.iter().all(|&x| x == 0) || m.iter().any(|&x| x >= field.q) {
                    return Err(Error::IndexOutOfRange {
                        index: 0,
                        order: self.order(),
                    });
                }
                let lead = m.iter().copied().find(|&x| x != 0).unwrap();
                let s = field.inv(lead);
                Ok(Elem::Mat([
                    field.mul(m[0], s),
                    field.mul(m[1], s),
                    field.mul(m[2], s),
                    field.mul(m[3], s),
                ]))
            }
            _ => Err(Error::NotPermutationGroup),
        }
    }
}
