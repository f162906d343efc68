//! Exact-identity oracles for the Fourier layer: every check computes the
//! two sides through independent code paths.

use std::sync::Arc;

use num_complex::Complex64;

use growthlab_core::chartab::CharacterTable;
use growthlab_core::fourier::{char_autocorrelation, mixed_moment, GroupFunction, SubsetG};
use growthlab_core::group::{build_group, Group, GroupSpec};

fn with_table(spec: &GroupSpec) -> (Arc<Group>, CharacterTable) {
    let g = build_group(spec).unwrap();
    let t = CharacterTable::compute(&g).unwrap();
    (g, t)
}

#[test]
fn projection_onto_trivial_character_is_the_mean() {
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    let f = GroupFunction::random(g.clone(), 9);
    let proj = f.project(&t, t.trivial_char()).unwrap();
    let mean = f.mean();
    for i in 0..g.order() as u32 {
        assert!((proj.value(i) - mean).norm() < 1e-10);
    }
}

#[test]
fn characters_are_projection_eigenfunctions() {
    // f = χ(1)·χ lies in W_χ: project(f, χ) = f and project(f, ψ) = 0
    let (g, t) = with_table(&GroupSpec::Alternating { n: 5 });
    let chi = 2usize;
    let d = t.degrees[chi];
    let f =
        GroupFunction::from_values(g.clone(), t.dense_char(chi).iter().map(|z| z * d).collect())
            .unwrap();
    let same = f.project(&t, chi).unwrap();
    for i in 0..g.order() as u32 {
        assert!((same.value(i) - f.value(i)).norm() < 1e-9);
    }
    for psi in 0..t.num_chars() {
        if psi == chi {
            continue;
        }
        let other = f.project(&t, psi).unwrap();
        assert!(other.norm(2) < 1e-9);
    }
}

#[test]
fn projections_resolve_the_identity_and_parseval_holds() {
    let (g, t) = with_table(&GroupSpec::Alternating { n: 5 });
    for seed in 0..5u64 {
        let f = GroupFunction::random(g.clone(), 40 + seed);
        let mut sum = GroupFunction::constant(g.clone(), Complex64::new(0.0, 0.0));
        let mut mass_sum = 0.0;
        for chi in 0..t.num_chars() {
            let p = f.project(&t, chi).unwrap();
            mass_sum += p.norm(2).powi(2);
            sum = sum.add(&p).unwrap();
        }
        // Σ_χ f^{=χ} = f
        assert!(sum.sub(&f).unwrap().norm(2) < 1e-9);
        // Parseval, both sides independent
        assert!((mass_sum - f.norm(2).powi(2)).abs() < 1e-9);
    }
}

#[test]
fn projections_are_idempotent_and_orthogonal() {
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    let f = GroupFunction::random(g.clone(), 77);
    let projs: Vec<GroupFunction> = (0..t.num_chars())
        .map(|chi| f.project(&t, chi).unwrap())
        .collect();
    for (chi, p) in projs.iter().enumerate() {
        let pp = p.project(&t, chi).unwrap();
        assert!(
            pp.sub(p).unwrap().norm(2) < 1e-9,
            "idempotence at chi={chi}"
        );
        for (psi, q) in projs.iter().enumerate() {
            if psi != chi {
                assert!(p.inner(q).unwrap().norm() < 1e-9, "W_χ orthogonality");
            }
        }
    }
}

#[test]
fn projection_mass_formula_two_paths() {
    // ‖f^{=χ}‖₂² vs χ(1)·Re⟨f′∗f, χ⟩ on random subsets of S_4
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    for seed in 0..10u64 {
        let k = 1 + (seed as usize * 5) % (g.order() - 1);
        let a = SubsetG::random(g.clone(), k, 1000 + seed).unwrap();
        let f = a.density().unwrap();
        let masses = f.projection_masses(&t).unwrap();
        for chi in 0..t.num_chars() {
            let direct = f.project(&t, chi).unwrap().norm(2).powi(2);
            assert!(
                (masses[chi] - direct).abs() < 1e-9,
                "mass mismatch {} vs {direct}",
                masses[chi]
            );
        }
    }
}

#[test]
fn projection_mass_extremes() {
    let (g, t) = with_table(&GroupSpec::Alternating { n: 5 });
    // f = density(G): mass 0 for nontrivial χ
    let full = SubsetG::full(g.clone()).density().unwrap();
    let masses = full.projection_masses(&t).unwrap();
    for chi in 0..t.num_chars() {
        let expect = if chi == t.trivial_char() { 1.0 } else { 0.0 };
        assert!((masses[chi] - expect).abs() < 1e-10);
    }
    // f = density({e}): mass χ(1)² for every χ
    let delta = SubsetG::singleton(g.clone(), g.identity())
        .unwrap()
        .density()
        .unwrap();
    let masses = delta.projection_masses(&t).unwrap();
    for chi in 0..t.num_chars() {
        let d = t.degrees[chi];
        assert!((masses[chi] - d * d).abs() < 1e-9);
    }
}

#[test]
fn projection_mass_bounded_for_densities() {
    // ‖f^{=χ}‖₂² ≤ χ(1)² whenever f is a density
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    for seed in 0..20u64 {
        let k = 1 + (7 * seed as usize) % g.order();
        let a = SubsetG::random(g.clone(), k, 2000 + seed).unwrap();
        let masses = a.density().unwrap().projection_masses(&t).unwrap();
        for chi in 0..t.num_chars() {
            let d = t.degrees[chi];
            assert!(masses[chi] <= d * d + 1e-9);
        }
    }
}

#[test]
fn youngs_bound_on_autocorrelations() {
    // ‖f′∗f‖_∞ ≤ ‖f‖₂²
    let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
    for seed in 0..10u64 {
        let f = GroupFunction::random(g.clone(), 3000 + seed);
        let auto = f.flip().convolve(&f).unwrap();
        assert!(auto.norm_inf() <= f.norm(2).powi(2) + 1e-9);
    }
}

#[test]
fn char_autocorrelation_cases() {
    let (g, t) = with_table(&GroupSpec::Alternating { n: 5 });
    // A = {e}: value χ(1)
    let e = SubsetG::singleton(g.clone(), g.identity()).unwrap();
    for chi in 0..t.num_chars() {
        let v = char_autocorrelation(&e, &t, chi).unwrap();
        assert!((v - Complex64::new(t.degrees[chi], 0.0)).norm() < 1e-10);
    }
    // A = G, χ nontrivial: 0
    let full = SubsetG::full(g.clone());
    for chi in 0..t.num_chars() {
        if chi == t.trivial_char() {
            continue;
        }
        assert!(char_autocorrelation(&full, &t, chi).unwrap().norm() < 1e-10);
    }
    // A = a 3-cycle class, trivial χ: 1
    let classes = g.classes();
    let three = classes
        .classes
        .iter()
        .find(|c| g.perm(c.rep).unwrap().support_size() == 3)
        .unwrap();
    let a = SubsetG::new(g.clone(), three.members.clone()).unwrap();
    let v = char_autocorrelation(&a, &t, t.trivial_char()).unwrap();
    assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn char_autocorrelation_matches_projection_mass() {
    // projection_mass(density(A), χ)/χ(1) = conj(E[χ(y⁻¹x)])
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    for seed in 0..5u64 {
        let a = SubsetG::random(g.clone(), 4 + seed as usize, 4000 + seed).unwrap();
        let f = a.density().unwrap();
        let masses = f.projection_masses(&t).unwrap();
        for chi in 0..t.num_chars() {
            let auto = char_autocorrelation(&a, &t, chi).unwrap();
            let expect = masses[chi] / t.degrees[chi];
            assert!((auto.conj().re - expect).abs() < 1e-9);
            // the mass is real, so the autocorrelation must be too
            assert!(auto.im.abs() < 1e-9);
        }
    }
}

#[test]
fn glps_identity_brute_vs_spectral() {
    for spec in [
        GroupSpec::Symmetric { n: 4 },
        GroupSpec::Alternating { n: 5 },
    ] {
        let (g, t) = with_table(&spec);
        for seed in 0..5u64 {
            let f = GroupFunction::random(g.clone(), 500 + seed);
            let h = GroupFunction::random(g.clone(), 600 + seed);
            let m = mixed_moment(&f, &h, &t, 360).unwrap();
            let brute = m.brute.expect("within the brute cap");
            assert!(
                (brute - m.spectral).abs() <= 1e-6 * m.spectral.max(1e-12),
                "GLPS gap: brute={brute}, spectral={}",
                m.spectral
            );
        }
    }
}

#[test]
fn glps_identity_trivial_cases() {
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    // f = g = 1: both sides are 1
    let one = GroupFunction::constant(g.clone(), Complex64::new(1.0, 0.0));
    let m = mixed_moment(&one, &one, &t, 360).unwrap();
    assert!((m.brute.unwrap() - 1.0).abs() < 1e-10);
    assert!((m.spectral - 1.0).abs() < 1e-10);

    // f = Δ_e: E_σ ‖g-translate‖₂² = ‖g‖₂²
    let delta = SubsetG::singleton(g.clone(), g.identity())
        .unwrap()
        .density()
        .unwrap();
    let h = GroupFunction::random(g.clone(), 123);
    let m = mixed_moment(&delta, &h, &t, 360).unwrap();
    let expect = h.norm(2).powi(2);
    assert!((m.brute.unwrap() - expect).abs() < 1e-9);
    assert!((m.spectral - expect).abs() < 1e-9);
}

#[test]
fn glps_on_random_indicators() {
    let (g, t) = with_table(&GroupSpec::Symmetric { n: 4 });
    for seed in 0..5u64 {
        let a = SubsetG::random(g.clone(), 3 + seed as usize, 700 + seed).unwrap();
        let b = SubsetG::random(g.clone(), 5 + seed as usize, 800 + seed).unwrap();
        let m = mixed_moment(&a.density().unwrap(), &b.density().unwrap(), &t, 360).unwrap();
        assert!(m.relative_gap.unwrap() <= 1e-6);
    }
}

#[test]
fn brute_cap_flags_not_errors() {
    let (g, t) = with_table(&GroupSpec::Alternating { n: 5 });
    let f = GroupFunction::random(g.clone(), 1);
    let m = mixed_moment(&f, &f, &t, 10).unwrap();
    assert!(m.brute.is_none());
    assert!(m.relative_gap.is_none());
    assert!(m.spectral.is_finite());
}
