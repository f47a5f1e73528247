use std::cmp::Ordering;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gordan_core::linalg::coplanar;
use gordan_core::{h3, FieldScalar, FlagSystem, Vec3};

/// A random connected map on `edges ≥ 2` edges. Flags `4e..4e+4` form edge `e`,
/// with s0 and s2 fixed; s1 is a random matching that never pairs two flags
/// of one edge, so both the map and its Petrie dual are valid. Flags are
/// then shuffled.
fn random_map(edges: usize, seed: u64) -> FlagSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 4 * edges;
    let s0: Vec<usize> = (0..n).map(|x| x ^ 1).collect();
    let s2: Vec<usize> = (0..n).map(|x| x ^ 2).collect();
    loop {
        let mut flags: Vec<usize> = (0..n).collect();
        flags.shuffle(&mut rng);
        let mut s1 = vec![usize::MAX; n];
        let mut ok = true;
        while let Some(x) = flags.pop() {
            let Some(pos) = flags.iter().position(|&y| y / 4 != x / 4) else {
                ok = false;
                break;
            };
            let y = flags.swap_remove(pos);
            s1[x] = y;
            s1[y] = x;
        }
        if !ok {
            continue;
        }
        if let Ok(map) = FlagSystem::new(s0.clone(), s1, s2.clone()) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            return map.relabel(&perm);
        }
    }
}

fn scalar() -> impl Strategy<Value = FieldScalar> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(an, ad, bn, bd)| FieldScalar::from_ratios(an, ad, bn, bd))
}

fn point() -> impl Strategy<Value = Vec3> {
    (scalar(), scalar(), scalar()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

/// Random points that often lie on a mirror or rotation axis: a random
/// point is projected onto a coordinate plane or axis with some probability.
fn special_point() -> impl Strategy<Value = Vec3> {
    (point(), 0usize..4, 0usize..3).prop_map(|(p, mode, axis)| {
        let mut c = p.0.clone();
        match mode {
            1 => c[axis] = 0.into(),
            2 => {
                c[axis] = 0.into();
                c[(axis + 1) % 3] = 0.into();
            }
            3 => return gordan_core::symmetry::icosahedron_vertices()[axis].scale(&c[0]),
            _ => {}
        }
        Vec3(c)
    })
}

fn sets(parts: Vec<Vec<usize>>) -> std::collections::BTreeSet<Vec<usize>> {
    parts
        .into_iter()
        .map(|mut o| {
            o.sort();
            o
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dual_and_petrie_are_involutions(edges in 2usize..=12, seed in any::<u64>()) {
        let m = random_map(edges, seed);
        prop_assert_eq!(&m.dual().dual(), &m);
        let p = m.petrie().unwrap();
        prop_assert_eq!(&p.petrie().unwrap(), &m);
        prop_assert_eq!(sets(p.vertices()), sets(m.vertices()));
        prop_assert_eq!(sets(p.edges()), sets(m.edges()));
        prop_assert_eq!(m.dual().f_vector(), { let [a, b, c] = m.f_vector(); [c, b, a] });
        prop_assert_eq!(4 * m.f_vector()[1], m.len());
        let chi = m.euler_characteristic();
        let g = m.genus() as i64;
        prop_assert_eq!(chi, if m.is_orientable() { 2 - 2 * g } else { 2 - g });
    }

    #[test]
    fn relabeling_preserves_the_canonical_form(edges in 2usize..=8, seed in any::<u64>()) {
        let m = random_map(edges, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut perm: Vec<usize> = (0..m.len()).collect();
        perm.shuffle(&mut rng);
        let r = m.relabel(&perm);
        prop_assert!(m.is_isomorphic(&r));
        prop_assert_eq!(m.canonical_form(), r.canonical_form());
        prop_assert_eq!(m.aut_order(), r.aut_order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn orbit_stabilizer(p in special_point()) {
        let g = h3();
        let orbit = g.orbit(&p);
        prop_assert_eq!(orbit.len() * g.stabilizer(&p).order(), g.order());
        prop_assert_eq!(120 % orbit.len(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coplanarity_is_invariant_under_symmetries(
        base in point(),
        u in point(),
        v in point(),
        coeffs in prop::collection::vec((scalar(), scalar()), 2..5),
        extra in point(),
        lift in any::<bool>(),
        shift in point(),
        element in 0usize..120,
    ) {
        let mut pts: Vec<Vec3> =
            coeffs.iter().map(|(a, b)| &(&base + &u.scale(a)) + &v.scale(b)).collect();
        pts.push(base.clone());
        if lift {
            pts.push(extra);
        }
        let g = &h3().elements()[element];
        let moved: Vec<Vec3> = pts.iter().map(|p| &g.apply(p) + &shift).collect();
        prop_assert_eq!(coplanar(&pts), coplanar(&moved));
        if !lift {
            prop_assert!(coplanar(&moved));
        }
    }
}

proptest! {
    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), FieldScalar::one());
        }
    }

    #[test]
    fn order_is_compatible_with_addition_and_reals(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
        } else if x != y {
            prop_assert_ne!(x.cmp(&y), Ordering::Equal);
        }
    }

    #[test]
    fn text_round_trip(x in scalar()) {
        let text = x.to_string();
        let back: FieldScalar = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FieldScalar>(&json).unwrap(), x);
    }
}

#[test]
fn random_maps_are_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let seed: u64 = rng.gen();
    assert_eq!(random_map(6, seed), random_map(6, seed));
}

