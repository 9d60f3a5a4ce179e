use fkt_core::complex::{
    attach_disk, build_base_block, build_z, named_subcomplex, quotient_points, validate, Complex2,
    NamedSubcomplex,
};
use fkt_core::word::{free_reduce, Letter, Word};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![Just(Letter::A), Just(Letter::B), Just(Letter::A_INV), Just(Letter::B_INV)],
        1..=max,
    )
    .prop_map(free_reduce)
    .prop_filter("nontrivial", |w| !w.is_identity())
}

fn kphi(s: &str) -> Complex2 {
    attach_disk(&build_z(), &Word::parse(s).unwrap()).complex
}

#[test]
fn builders_validate() {
    assert!(validate(&build_base_block("x")).is_empty());
    assert!(validate(&build_z().complex).is_empty());
    for s in ["[a,b]", "[a,[a,b]]", "[a,b]^2", "ab", "a"] {
        assert_eq!(validate(&kphi(s)), Vec::<String>::new(), "{s}");
    }
}

#[test]
fn base_blocks_agree_under_renaming() {
    let x = build_base_block("x");
    let mut y = build_base_block("y");
    y.vertices = y.vertices.iter().map(|v| v.replacen('y', "x", 1)).collect();
    assert_eq!(x, y);
}

#[test]
fn wedge_halves_are_isomorphic() {
    let z = build_z().complex;
    // swap x_i with y_i; o is fixed
    let swap = |i: usize| match i {
        0..=5 => i + 7,
        6 => 6,
        _ => i - 7,
    };
    let mut t: Vec<[usize; 3]> = z
        .triangles
        .iter()
        .map(|t| {
            let mut s = t.map(swap);
            s.sort();
            s
        })
        .collect();
    t.sort();
    assert_eq!(t, z.triangles.iter().copied().collect::<Vec<_>>());
}

#[test]
fn deleting_an_edge_is_reported() {
    let mut z = build_z().complex;
    let e = *z.edges.iter().next().unwrap();
    z.edges.remove(&e);
    let v = validate(&z);
    assert!(!v.is_empty());
    assert!(v.iter().any(|m| m.contains("missing")), "{v:?}");
}

#[test]
fn quotient_then_h_commutes() {
    let k = kphi("[a,[a,b]]");
    for (p, q) in [("x1", "y1"), ("x2", "y3"), ("x0", "y0")] {
        let a = quotient_points(&named_subcomplex(&k, NamedSubcomplex::H).unwrap(), p, q).unwrap();
        let b = named_subcomplex(&quotient_points(&k, p, q).unwrap(), NamedSubcomplex::H).unwrap();
        assert_eq!(a, b, "{p} {q}");
    }
}

#[test]
fn quotient_counts() {
    let k = kphi("[a,b]");
    let s = quotient_points(&k, "x1", "y1").unwrap();
    assert_eq!(s.vertices.len(), k.vertices.len() - 1);
    assert_eq!(s.triangles.len(), k.triangles.len());
    assert!(validate(&s).is_empty());
    assert!(quotient_points(&k, "x1", "x2").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn boundary_spells_the_word(w in word(12)) {
        let z = build_z();
        let k = attach_disk(&z, &w).complex;
        prop_assert_eq!(k.cells.len(), 1);
        prop_assert_eq!(k.cells[0].boundary.len(), 3 * w.len());
        prop_assert_eq!(z.decode_boundary(&k.cells[0].boundary), Some(w));
        prop_assert!(validate(&k).is_empty());
    }

    #[test]
    fn json_round_trip(w in word(10)) {
        let k = attach_disk(&build_z(), &w).complex;
        prop_assert_eq!(Complex2::from_json(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn disk_is_a_disk(w in word(10)) {
        let k = attach_disk(&build_z(), &w).complex;
        // flattening adds the disk's vertices, edges and triangles: χ grows by χ(D) - χ(∂D) = 1
        prop_assert_eq!(k.euler_characteristic(), build_z().complex.euler_characteristic() + 1);
    }

    #[test]
    fn h_drops_the_open_cells(w in word(10)) {
        let k = attach_disk(&build_z(), &w).complex;
        let h = named_subcomplex(&k, NamedSubcomplex::H).unwrap();
        prop_assert!(h.cells.is_empty());
        prop_assert_eq!(h.triangles.len(), 66);
        prop_assert_eq!(&h.edges, &k.edges);
        prop_assert_eq!(named_subcomplex(&k, NamedSubcomplex::HatX).unwrap().triangles.len(), 18);
        prop_assert_eq!(named_subcomplex(&k, NamedSubcomplex::HatY).unwrap().triangles.len(), 18);
    }
}
