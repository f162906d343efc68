//! Conjugacy classes by breadth-first closure under conjugation by the
//! group's generating set, plus the direct sum of A_n classes with
//! disjoint-support representatives.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, PermFamily};
use crate::perm::Perm;

#[derive(Debug, Clone, Serialize)]
pub struct ConjClass {
    /// Smallest-index member.
    pub rep: u32,
    /// All member indices, ascending.
    pub members: Vec<u32>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjClasses {
    pub group_id: u64,
    /// Sorted by (size, identity first, representative index).
    pub classes: Vec<ConjClass>,
    /// Element index -> class index.
    pub class_of: Vec<u32>,
    pub identity_class: usize,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }

    /// Class index of the class whose members are the inverses of class `c`.
    pub fn inverse_class(&self, group: &Group, c: usize) -> usize {
        self.class_of[group.inv(self.classes[c].rep) as usize] as usize
    }
}

pub(super) fn conjugacy_classes(group: &Group) -> ConjClasses {
    let order = group.order();
    let gens = group.generators();
    let mut class_of = vec![u32::MAX; order];
    let mut classes: Vec<ConjClass> = Vec::new();

    for start in 0..order as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = id;
        let mut queue = vec![start];
        while let Some(g) = queue.pop() {
            for &s in gens {
                let h = group.conjugate(g, s);
                if class_of[h as usize] == u32::MAX {
                    class_of[h as usize] = id;
                    members.push(h);
                    queue.push(h);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass {
            rep: members[0],
            members,
        });
    }

    // canonical order: by size, identity class leading the size-1 block,
    // then by representative (= encoding order)
    let identity = group.identity();
    let mut perm: Vec<usize> = (0..classes.len()).collect();
    perm.sort_by_key(|&i| {
        let c = &classes[i];
        (c.size(), c.rep != identity, c.rep)
    });
    let mut reorder = vec![0u32; classes.len()];
    for (new_idx, &old_idx) in perm.iter().enumerate() {
        reorder[old_idx] = new_idx as u32;
    }
    let classes: Vec<ConjClass> = perm.iter().map(|&i| classes[i].clone()).collect();
    for c in class_of.iter_mut() {
        *c = reorder[*c as usize];
    }
    let identity_class = class_of[identity as usize] as usize;

    ConjClasses {
        group_id: group.id(),
        classes,
        class_of,
        identity_class,
    }
}

/// Direct sum of two A_n conjugacy classes: the class of `σ₁σ₂'` where
/// `σ₂'` is a disjoint-support realization of the second class. Requires
/// support sizes summing to at most n-2, which also guarantees the S_n
/// and A_n classes of both representatives coincide.
pub fn direct_sum_class(
    group: &Group,
    classes: &ConjClasses,
    c1: usize,
    c2: usize,
) -> Result<usize> {
    let n = group
        .permutation_degree()
        .ok_or(Error::NotPermutationGroup)?;
    if group.perm_family() != Some(PermFamily::Alternating) {
        return Err(Error::NotPermutationGroup);
    }
    let rep1 = group.perm(classes.classes[c1].rep)?.clone();
    let rep2 = group.perm(classes.classes[c2].rep)?;
    let m = rep1.support_size();
    let r = rep2.support_size();
    if m + r + 2 > n {
        return Err(Error::SupportSumTooLarge {
            m,
            r,
            limit: n.saturating_sub(2),
        });
    }

    // relabel the nontrivial cycles of rep2 onto fresh points
    let used: Vec<bool> = {
        let mut used = vec![false; n];
        for &p in &rep1.support() {
            used[p as usize] = true;
        }
        used
    };
    let fresh: Vec<u8> = (0..n as u8).filter(|&p| !used[p as usize]).collect();
    let mut relabel = vec![u8::MAX; n];
    let mut next = 0usize;
    for &p in &rep2.support() {
        relabel[p as usize] = fresh[next];
        next += 1;
    }
    let mut img: Vec<u8> = (0..n as u8).collect();
    for p in rep2.support() {
        let q = rep2.apply(p);
        img[relabel[p as usize] as usize] = relabel[q as usize];
    }
    let rep2_disjoint = Perm(img);

    let idx2 = group
        .index_of(&crate::group::Elem::Perm(rep2_disjoint.clone()))
        .expect("relabeled even permutation is in A_n");
    debug_assert_eq!(
        classes.class_of[idx2 as usize] as usize, c2,
        "disjoint realization stays in the same A_n class"
    );

    let product = rep1.compose(&rep2_disjoint);
    let idx = group
        .index_of(&crate::group::Elem::Perm(product))
        .expect("product of even permutations is even");
    Ok(classes.class_of[idx as usize] as usize)
}
