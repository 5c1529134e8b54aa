use q4d_core::algebra::AbelianGroup;
use q4d_core::braid::BraidWord;
use q4d_core::constructions::{crossingless_braid, lens_diagram, mutual_braid_move, spun_diagram, sum, SumMode};
use q4d_core::format::parse_diagram;
use q4d_core::heegaard::h1_3manifold;
use q4d_core::presentation::relators_equivalent;
use q4d_core::surface::build_surface_complex;
use q4d_core::tangle::{FourPlaneDiagram, Tangle, TrivialTangle};
use q4d_core::validate::{validate_diagram, Outcome};

fn spun_trefoil() -> FourPlaneDiagram {
    parse_diagram(include_str!("../fixtures/spun_trefoil.q4d")).unwrap()
}

fn one_bridge() -> FourPlaneDiagram {
    FourPlaneDiagram::from_braids(1, std::array::from_fn(|_| BraidWord::identity(2))).unwrap()
}

fn assert_valid(d: &FourPlaneDiagram) {
    let r = validate_diagram(d).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.check('c').all(|c| c.outcome == Outcome::Pass), "{r}");
}

#[test]
fn spun_generator_matches_fixture() {
    let d = spun_diagram(&BraidWord::from_signed(4, &[2, 2, 2]).unwrap()).unwrap();
    let a = spun_trefoil();
    assert_eq!(d.bridges(), 6);
    for i in 0..4 {
        assert!(
            relators_equivalent(&d.tangle(i).relators(), &a.tangle(i).relators()),
            "tangle {}",
            i + 1
        );
    }
}

#[test]
fn spun_bridge_counts_and_validity() {
    let knots: [(usize, &[i64]); 6] = [
        (2, &[]),
        (4, &[2, 2, 2]),
        (4, &[2, -2, 2, -2]),
        (6, &[2, 2, 2, 4, 4, 4]),
        (6, &[2, -4, 3, 3]),
        (6, &[3, 3, 3]),
    ];
    for (strands, w) in knots {
        let d = spun_diagram(&BraidWord::from_signed(strands, w).unwrap()).unwrap();
        assert_eq!(d.bridges(), 5 * strands / 2 - 4);
        assert_valid(&d);
        let r = validate_diagram(&d).unwrap();
        assert!(r.check('d').all(|c| c.outcome == Outcome::Pass), "{w:?}: {r}");
    }
}

#[test]
fn spun_connected_knots_are_spheres() {
    for w in [&[2, 2, 2][..], &[2, 2, 2, 2, 2]] {
        let d = spun_diagram(&BraidWord::from_signed(4, w).unwrap()).unwrap();
        assert!(h1_3manifold(&d).unwrap().is_trivial());
    }
    let unknot = spun_diagram(&BraidWord::identity(2)).unwrap();
    assert_eq!(unknot.bridges(), 1);
    assert_eq!(build_surface_complex(&unknot).unwrap().euler_characteristic, 2);
}

#[test]
fn lens_family() {
    for p in 1..=6 {
        let d = lens_diagram(p).unwrap();
        assert_eq!(d.bridges(), 2 * p);
        let s = build_surface_complex(&d).unwrap();
        assert!(s.orientable);
        assert_eq!((s.euler_characteristic, s.genus), (0, 1));
        assert_eq!(h1_3manifold(&d).unwrap(), AbelianGroup::cyclic(p as u64));
        assert_valid(&d);
    }
    assert!(lens_diagram(0).is_err());
}

#[test]
fn fixtures_agree_with_generators() {
    let lens3 = parse_diagram(include_str!("../fixtures/lens3.q4d")).unwrap();
    assert_eq!(lens3.braids(), lens_diagram(3).unwrap().braids());
    let rp3 = parse_diagram(include_str!("../fixtures/rp3.q4d")).unwrap();
    assert_eq!(h1_3manifold(&rp3).unwrap(), AbelianGroup::cyclic(2));
    assert_valid(&rp3);
}

#[test]
fn distant_sums() {
    let u = one_bridge();
    let two = sum(&u, &u, SumMode::Distant).unwrap();
    assert_eq!(two.bridges(), 2);
    let s = build_surface_complex(&two).unwrap();
    assert_eq!((s.components, s.euler_characteristic), (2, 4));
    assert!(h1_3manifold(&two).unwrap().is_trivial());
    assert_valid(&two);

    let (l2, l3) = (lens_diagram(2).unwrap(), lens_diagram(3).unwrap());
    let d = sum(&l2, &l3, SumMode::Distant).unwrap();
    assert_eq!(d.bridges(), 10);
    let expected = h1_3manifold(&l2).unwrap().direct_sum(&h1_3manifold(&l3).unwrap());
    assert_eq!(h1_3manifold(&d).unwrap(), expected);
    assert_eq!(build_surface_complex(&d).unwrap().components, 2);
    assert_valid(&d);

    let mixed = sum(&spun_trefoil(), &l2, SumMode::Distant).unwrap();
    assert_eq!(h1_3manifold(&mixed).unwrap(), AbelianGroup::cyclic(2));
    assert_valid(&mixed);
}

#[test]
fn connected_sums() {
    let u = one_bridge();
    let (l2, l3) = (lens_diagram(2).unwrap(), lens_diagram(3).unwrap());
    for d in [&l2, &l3] {
        for merged in [
            sum(d, &u, SumMode::Connected).unwrap(),
            sum(&u, d, SumMode::Connected).unwrap(),
        ] {
            assert_eq!(merged.bridges(), d.bridges());
            assert_eq!(h1_3manifold(&merged).unwrap(), h1_3manifold(d).unwrap());
            assert_valid(&merged);
        }
    }
    let d = sum(&l2, &l3, SumMode::Connected).unwrap();
    assert_eq!(d.bridges(), 9);
    assert_eq!(build_surface_complex(&d).unwrap().components, 1);
    assert_eq!(h1_3manifold(&d).unwrap(), AbelianGroup::cyclic(6));
    assert_valid(&d);
    assert!(sum(&spun_trefoil(), &u, SumMode::Connected).is_err());
}

#[test]
fn identity_move_is_trivial() {
    let d = lens_diagram(2).unwrap();
    let (moved, rho) = mutual_braid_move(&d, &BraidWord::identity(8), None).unwrap();
    assert_eq!(moved.braids(), d.braids());
    assert!(rho.is_none());
    assert!(mutual_braid_move(&d, &BraidWord::identity(4), None).is_err());
}

#[test]
fn corrupted_tangle_is_rejected() {
    let a = spun_trefoil();
    assert_valid(&a);
    let mut t = a.tangles().clone();
    t[0] = Tangle::Plat(TrivialTangle::new(6, BraidWord::from_signed(12, &[1, 2, 3]).unwrap()).unwrap());
    let r = validate_diagram(&FourPlaneDiagram::new(6, t).unwrap()).unwrap();
    assert!(!r.passed());
    assert!(r.check('b').any(|c| c.outcome == Outcome::Fail));
}

#[test]
fn crossingless_braid_roundtrip() {
    let partner = [5, 2, 1, 4, 3, 0, 7, 6];
    let w = crossingless_braid(&partner).unwrap();
    let t = TrivialTangle::new(4, w).unwrap();
    let m = q4d_core::tangle::tangle_matching(&t);
    assert_eq!(m.images(), &partner);
}
