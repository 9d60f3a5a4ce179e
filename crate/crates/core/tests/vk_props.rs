use fkt_core::complex::{attach_disk, build_base_block, build_z, full_skeleton, Complex2};
use fkt_core::geometry::{simplex_intersect, Intersection};
use fkt_core::solver::{solve_integer_system, Ring, Solution};
use fkt_core::vk::{
    coboundary_matrix, is_generic, obstruction_verdict, pair_intersection_number,
    sample_generic_map, total_mod2, vk_cocycle, RationalMap, Simplices,
};
use fkt_core::word::Word;

fn kphi(s: &str) -> Complex2 {
    attach_disk(&build_z(), &Word::parse(s).unwrap()).complex
}

fn fixtures() -> Vec<(&'static str, Complex2)> {
    vec![
        ("Z", build_z().complex),
        ("K_[a,b]", kphi("[a,b]")),
        ("delta6", full_skeleton("v", 7)),
        ("X", build_base_block("x")),
    ]
}

#[test]
fn cocycle_class_is_seed_independent() {
    for (name, k) in [("Z", build_z().complex), ("K_[a,b]", kphi("[a,b]"))] {
        let cob = coboundary_matrix(&k);
        for (s1, s2) in [(0, 1), (2, 3), (4, 17), (99, 100), (12345, 54321)] {
            let c1 = vk_cocycle(&sample_generic_map(&k, s1).unwrap(), &k).unwrap().to_vector(&cob.rows);
            let c2 = vk_cocycle(&sample_generic_map(&k, s2).unwrap(), &k).unwrap().to_vector(&cob.rows);
            let diff: Vec<i64> = c1.iter().zip(&c2).map(|(a, b)| a - b).collect();
            match solve_integer_system(&cob.matrix, &diff, Ring::Integers).unwrap() {
                Solution::Witness(x) => assert_eq!(cob.matrix.mul_vec(&x).unwrap(), diff),
                Solution::Refutation(r) => panic!("{name} seeds {s1},{s2}: {r:?}"),
            }
        }
    }
}

#[test]
fn verdict_is_stable_across_seeds() {
    for (name, k) in fixtures() {
        let first = obstruction_verdict(&k, 0).unwrap();
        for seed in 1..10 {
            let v = obstruction_verdict(&k, seed).unwrap();
            assert_eq!(
                (v.vanishes_over_z, v.vanishes_mod_2),
                (first.vanishes_over_z, first.vanishes_mod_2),
                "{name} seed {seed}"
            );
        }
    }
}

#[test]
fn witnesses_reproduce_the_cocycle() {
    for (name, k) in fixtures() {
        let cob = coboundary_matrix(&k);
        let v = obstruction_verdict(&k, 7).unwrap();
        assert!(!v.vanishes_over_z || v.vanishes_mod_2, "{name}");
        if let Some(w) = &v.witness {
            assert_eq!(cob.matrix.mul_vec(w).unwrap(), v.cocycle.to_vector(&cob.rows), "{name}");
        }
    }
}

#[test]
fn known_verdicts() {
    let d6 = obstruction_verdict(&full_skeleton("v", 7), 0).unwrap();
    assert!(!d6.vanishes_mod_2 && !d6.vanishes_over_z);
    assert!(d6.refutation.is_some());
    for s in ["[a,b]", "[b,a]", "[a,[a,b]]"] {
        let v = obstruction_verdict(&kphi(s), 0).unwrap();
        assert!(v.vanishes_over_z && v.vanishes_mod_2, "{s}");
    }
}

#[test]
fn parity_of_total() {
    for seed in 0..20 {
        assert_eq!(total_mod2(&full_skeleton("v", 7), seed).unwrap(), 1, "seed {seed}");
    }
    assert_eq!(total_mod2(&Complex2::default(), 0).unwrap(), 0);
}

/// Without the triangle `v4v5v6` the parity is no longer map independent: it
/// is the full-skeleton parity minus the hits of `v4v5v6` with the boundary
/// of the tetrahedron `v0v1v2v3`.
#[test]
fn base_block_parity_tracks_the_missing_triangle() {
    let k = build_base_block("x");
    let missing = [4, 5, 6];
    let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for seed in 0..20 {
        let f = sample_generic_map(&k, seed).unwrap();
        let hits: i64 =
            faces.iter().map(|t| pair_intersection_number(&f, missing, *t).unwrap().abs()).sum();
        assert_eq!(total_mod2(&k, seed).unwrap() as i64, (1 + hits) % 2, "seed {seed}");
        assert!(obstruction_verdict(&k, seed).unwrap().vanishes_over_z);
    }
    // pulling v4, v5, v6 far away leaves the full-skeleton parity
    let moment = |t: i64| [t, t * t, t * t * t, t * t * t * t];
    let mut points: Vec<[i64; 4]> = [1, 2, 3, 5, 8, 13, 21].iter().map(|&t| moment(t)).collect();
    for p in &mut points[4..] {
        p[0] += 1_000_000;
    }
    let f = RationalMap::from_integers(&points);
    assert!(is_generic(&k, &f).unwrap());
    assert_eq!(vk_cocycle(&f, &k).unwrap().total().rem_euclid(2), 1);
}

/// Cross-checks the determinant-based pair count against the general
/// polytope intersection routine on every disjoint triangle pair.
#[test]
fn intersection_numbers_match_polytope_oracle() {
    let k = full_skeleton("v", 7);
    let s = Simplices::of(&k);
    for seed in 0..3 {
        let f = sample_generic_map(&k, seed).unwrap();
        let mut hits = 0;
        for (i, a) in s.triangles.iter().enumerate() {
            for b in &s.triangles[i + 1..] {
                if a.iter().any(|v| b.contains(v)) {
                    continue;
                }
                let n = pair_intersection_number(&f, *a, *b).unwrap();
                assert_eq!(n, pair_intersection_number(&f, *b, *a).unwrap());
                let pa: Vec<_> = a.iter().map(|&v| f.coordinates[v].clone()).collect();
                let pb: Vec<_> = b.iter().map(|&v| f.coordinates[v].clone()).collect();
                let expected = match simplex_intersect(&pa, &pb) {
                    Intersection::Empty => 0,
                    Intersection::Point { sign: Some(s), .. } => s as i64,
                    other => panic!("not generic: {other:?}"),
                };
                assert_eq!(n, expected);
                hits += n.abs();
            }
        }
        assert_eq!(hits % 2, 1, "van Kampen-Flores parity, seed {seed}");
    }
}
