//! Independent cross-checks between unrelated construction paths: the
//! exceptional isomorphisms PSL(2,4) ≅ PSL(2,5) ≅ A_5 and PSL(2,9) ≅ A_6
//! pit the extension-field matrix arithmetic against permutation
//! enumeration, and a handwritten quaternion Cayley table exercises
//! groups with central nonidentity classes.

use growthlab_core::chartab::CharacterTable;
use growthlab_core::group::{build_group, GroupSpec};

fn table_signature(spec: &GroupSpec) -> (usize, Vec<usize>, Vec<i64>) {
    let g = build_group(spec).unwrap();
    let t = CharacterTable::compute(&g).unwrap();
    assert!(t.verify().pass, "{:?} fails its audit", g.name);
    let degrees = t.degrees.iter().map(|d| d.round() as i64).collect();
    (g.order(), g.classes().class_sizes(), degrees)
}

#[test]
fn psl2_4_and_psl2_5_match_a5() {
    let a5 = table_signature(&GroupSpec::Alternating { n: 5 });
    let p4 = table_signature(&GroupSpec::Psl2 { q: 4 });
    let p5 = table_signature(&GroupSpec::Psl2 { q: 5 });
    assert_eq!(a5, p4);
    assert_eq!(a5, p5);
    assert_eq!(a5.2, vec![1, 3, 3, 4, 5]);
}

#[test]
fn psl2_9_matches_a6() {
    let a6 = table_signature(&GroupSpec::Alternating { n: 6 });
    let p9 = table_signature(&GroupSpec::Psl2 { q: 9 });
    assert_eq!(a6, p9);
    assert_eq!(a6.2, vec![1, 5, 5, 8, 8, 9, 10]);
}

#[test]
fn psl2_2_and_psl2_3_match_s3_and_a4() {
    assert_eq!(
        table_signature(&GroupSpec::Psl2 { q: 2 }),
        table_signature(&GroupSpec::Symmetric { n: 3 })
    );
    assert_eq!(
        table_signature(&GroupSpec::Psl2 { q: 3 }),
        table_signature(&GroupSpec::Alternating { n: 4 })
    );
}

#[test]
fn quaternion_cayley_import() {
    // Q8 = {1, -1, i, -i, j, -j, k, -k} indexed 0..8 in that order
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let mul = |a: &str, b: &str| -> String {
        // sign-tracked quaternion multiplication on unit elements
        let split = |s: &str| -> (i32, char) {
            if let Some(rest) = s.strip_prefix('-') {
                (-1, rest.chars().next().unwrap())
            } else {
                (1, s.chars().next().unwrap())
            }
        };
        let (sa, ua) = split(a);
        let (sb, ub) = split(b);
        let (s, u) = match (ua, ub) {
            ('1', x) => (1, x),
            (x, '1') => (1, x),
            ('i', 'i') | ('j', 'j') | ('k', 'k') => (-1, '1'),
            ('i', 'j') => (1, 'k'),
            ('j', 'i') => (-1, 'k'),
            ('j', 'k') => (1, 'i'),
            ('k', 'j') => (-1, 'i'),
            ('k', 'i') => (1, 'j'),
            ('i', 'k') => (-1, 'j'),
            _ => unreachable!(),
        };
        let sign = sa * sb * s;
        if sign < 0 && u == '1' {
            "-1".into()
        } else if sign < 0 {
            format!("-{u}")
        } else {
            u.to_string()
        }
    };
    let table: Vec<Vec<u32>> = names
        .iter()
        .map(|a| {
            names
                .iter()
                .map(|b| {
                    let prod = mul(a, b);
                    names.iter().position(|n| *n == prod).unwrap() as u32
                })
                .collect()
        })
        .collect();

    let g = build_group(&GroupSpec::Cayley { table }).unwrap();
    assert_eq!(g.order(), 8);
    let classes = g.classes();
    // classes {1}, {-1}, {±i}, {±j}, {±k}; the identity leads the
    // singleton block even though -1 is also central
    assert_eq!(classes.class_sizes(), vec![1, 1, 2, 2, 2]);
    assert_eq!(classes.identity_class, 0);
    assert_eq!(classes.classes[0].rep, g.identity());

    let t = CharacterTable::compute(&g).unwrap();
    assert!(t.verify().pass);
    let degrees: Vec<i64> = t.degrees.iter().map(|d| d.round() as i64).collect();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    // the degree-2 character vanishes off the center
    let two = 4usize;
    for k in 0..classes.len() {
        let v = t.value(two, k);
        if classes.classes[k].size() == 2 {
            assert!(v.norm() < 1e-10);
        }
    }
}
