//! Property tests for the group-layer invariants.

use std::sync::Arc;

use proptest::prelude::*;

use growthlab_core::fourier::SubsetG;
use growthlab_core::group::{build_group, Group, GroupSpec};

fn groups() -> Vec<Arc<Group>> {
    vec![
        build_group(&GroupSpec::Symmetric { n: 4 }).unwrap(),
        build_group(&GroupSpec::Alternating { n: 5 }).unwrap(),
        build_group(&GroupSpec::Psl2 { q: 5 }).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_composes(gi in 0usize..3, seed in any::<u64>()) {
        let g = &groups()[gi];
        let order = g.order() as u64;
        let x = (seed % order) as u32;
        let s = (seed / order % order) as u32;
        let t = (seed / order / order % order) as u32;
        let lhs = g.conjugate(g.conjugate(x, s), t);
        let rhs = g.conjugate(x, g.mul(s, t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_sets_preserve_size(gi in 0usize..3, size in 1usize..30, seed in any::<u64>()) {
        let g = &groups()[gi];
        let size = size.min(g.order());
        let a = SubsetG::random(g.clone(), size, seed).unwrap();
        let s = (seed % g.order() as u64) as u32;
        prop_assert_eq!(a.conjugate_set(s).len(), a.len());
    }

    #[test]
    fn support_relabels_under_conjugation(seed in any::<u64>()) {
        let g = build_group(&GroupSpec::Symmetric { n: 5 }).unwrap();
        let order = g.order() as u64;
        let x = (seed % order) as u32;
        let s = (seed / order % order) as u32;
        let conj = g.conjugate(x, s);
        let sp = g.perm(s).unwrap();
        let mut mapped: Vec<u8> =
            g.support(x).unwrap().iter().map(|&p| sp.apply(p)).collect();
        mapped.sort_unstable();
        prop_assert_eq!(g.support(conj).unwrap(), mapped);
    }

    #[test]
    fn inverse_and_identity_laws(gi in 0usize..3, seed in any::<u64>()) {
        let g = &groups()[gi];
        let x = (seed % g.order() as u64) as u32;
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), x), x);
    }
}

#[test]
fn class_equation_across_groups() {
    for g in groups() {
        let cc = g.classes();
        assert_eq!(cc.class_sizes().iter().sum::<usize>(), g.order());
        for c in &cc.classes {
            assert_eq!(g.order() % c.size(), 0);
            // members are exactly the conjugation orbit of the representative
            let mut orbit: Vec<u32> = (0..g.order() as u32)
                .map(|s| g.conjugate(c.rep, s))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            assert_eq!(orbit, c.members);
        }
    }
}
