//! Cross-module invariants: symmetry equivariance of the colouring
//! polynomial, cut-point independence, diagram-level identities, and
//! serialization round trips.

use std::sync::Arc;

use knotcolour::colouring::{colouring_polynomial, EngineConfig};
use knotcolour::diagram::{
    connected_sum, load_fixture, pd::export_pd, BraidWord, KnotSymmetry, PdCode, WirtingerCode,
};
use knotcolour::group::{BasepointSpec, PointedGroup, OBVERSION_SEARCH_BOUND};
use knotcolour::ring::RingElement;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn a5() -> Arc<PointedGroup> {
    PointedGroup::alternating(5, &BasepointSpec::Cycles("(1,2,3,4,5)".into())).unwrap()
}

fn poly(code: &WirtingerCode, group: &Arc<PointedGroup>) -> RingElement {
    colouring_polynomial(code, group, &cfg()).unwrap().element
}

fn fixture_poly(name: &str, symmetry: KnotSymmetry, group: &Arc<PointedGroup>) -> RingElement {
    let code = load_fixture(name).unwrap().code(symmetry).unwrap();
    poly(&code, group)
}

#[test]
fn inversion_equivariance_on_all_fixtures() {
    // P(K^inv) = inv(P(K)) over A5 and PSL2(7)
    let groups = [
        a5(),
        PointedGroup::psl2(7, &BasepointSpec::OrderRep(7)).unwrap(),
    ];
    for group in &groups {
        for name in [
            "trefoil_left",
            "trefoil_right",
            "fig8",
            "kinoshita_terasaka",
            "conway",
            "bretzel_3_5_7",
            "8_17",
        ] {
            let p = fixture_poly(name, KnotSymmetry::Identity, group);
            let p_inv = fixture_poly(name, KnotSymmetry::Inverse, group);
            assert_eq!(p_inv, p.apply_inversion(), "{} over {}", name, group.name());
        }
    }
}

#[test]
fn obversion_reversion_equivariance_over_a7() {
    let a7 = PointedGroup::alternating(7, &BasepointSpec::Cycles("(1,2,3,4,5,6,7)".into())).unwrap();
    let pair = a7.find_obversion(OBVERSION_SEARCH_BOUND).unwrap().unwrap();
    for name in ["trefoil_left", "fig8", "kinoshita_terasaka", "conway"] {
        let p = fixture_poly(name, KnotSymmetry::Identity, &a7);
        let p_obv = fixture_poly(name, KnotSymmetry::Obverse, &a7);
        let p_rev = fixture_poly(name, KnotSymmetry::Reverse, &a7);
        assert_eq!(p_obv, p.apply_group_map(&pair.obversion), "obv on {}", name);
        assert_eq!(p_rev, p.apply_group_map(&pair.reversion), "rev on {}", name);
    }
}

#[test]
fn figure_eight_is_reversible_and_amphichiral() {
    let g = a5();
    let p = fixture_poly("fig8", KnotSymmetry::Identity, &g);
    for symmetry in KnotSymmetry::ALL {
        assert_eq!(fixture_poly("fig8", symmetry, &g), p);
    }
}

#[test]
fn cut_point_independence() {
    // the polynomial from pd_to_long_wirtinger does not depend on the
    // cut arc
    let g = a5();
    for name in ["kinoshita_terasaka", "8_17"] {
        let fixture = load_fixture(name).unwrap();
        let pd = PdCode::parse(&fixture.data).unwrap();
        let labels = pd.labels();
        let baseline = poly(
            &pd.to_long_wirtinger(Some(labels[0]), false, false).unwrap(),
            &g,
        );
        for &cut in &labels[1..] {
            let code = pd.to_long_wirtinger(Some(cut), false, false).unwrap();
            assert_eq!(poly(&code, &g), baseline, "{} cut at {}", name, cut);
        }
        // the same sweep through the port-graph interface, mirrored
        let diagram = pd.to_diagram().unwrap();
        let mirror_baseline = poly(&diagram.long_wirtinger(0, true, false).unwrap(), &g);
        for code in diagram.all_cuts(true, false).unwrap() {
            assert_eq!(poly(&code, &g), mirror_baseline);
        }
    }
}

#[test]
fn trivial_colouring_longitude_is_identity() {
    // for every fixture the all-x colouring has trivial longitude
    let g = a5();
    for name in ["trefoil_left", "fig8", "kinoshita_terasaka", "bretzel_3_5_7"] {
        let code = load_fixture(name).unwrap().code(KnotSymmetry::Identity).unwrap();
        let arcs = vec![g.basepoint(); code.crossings() + 1];
        assert_eq!(
            knotcolour::state_sum::assignment_longitude(&code, &g, &arcs),
            g.identity()
        );
    }
}

#[test]
fn longitudes_commute_with_basepoint_and_land_in_lambda() {
    let g = PointedGroup::psl2(7, &BasepointSpec::OrderRep(7)).unwrap();
    let code = load_fixture("conway").unwrap().code(KnotSymmetry::Identity).unwrap();
    let x = g.basepoint();
    let lambda = g.longitude_subgroup();
    for colouring in knotcolour::colouring::enumerate_colourings(&code, &g, &cfg()).unwrap() {
        let l = colouring.longitude;
        assert_eq!(g.mul(l, x), g.mul(x, l));
        assert!(lambda.contains(l));
    }
}

#[test]
fn braid_and_pd_encodings_agree() {
    // the A4 colouring counts of the figure-eight agree between the
    // braid encoding and its PD export
    let a4 = PointedGroup::alternating(4, &BasepointSpec::Cycles("(1,2,3)".into())).unwrap();
    let braid = BraidWord::parse("s1 s2^-1 s1 s2^-1", None).unwrap();
    let from_braid = braid.to_long_wirtinger().unwrap();
    let (diagram, _) = braid.to_diagram().unwrap();
    let pd = export_pd(&diagram).unwrap();
    let from_pd = pd.to_long_wirtinger(None, false, false).unwrap();
    assert_eq!(poly(&from_braid, &a4), poly(&from_pd, &a4));
}

#[test]
fn connected_sum_multiplicativity_mixed() {
    let g = a5();
    let trefoil = load_fixture("trefoil_left").unwrap().code(KnotSymmetry::Identity).unwrap();
    let fig8 = load_fixture("fig8").unwrap().code(KnotSymmetry::Identity).unwrap();
    let sum = connected_sum(&trefoil, &fig8);
    assert_eq!(
        poly(&sum, &g),
        poly(&trefoil, &g).multiply(&poly(&fig8, &g)).unwrap()
    );
}

#[test]
fn bretzel_one_one_one_is_the_left_trefoil() {
    let g = a5();
    let diagram = knotcolour::diagram::tangle::bretzel_diagram(1, 1, 1).unwrap();
    let code = diagram.long_wirtinger(0, false, false).unwrap();
    let trefoil = fixture_poly("trefoil_left", KnotSymmetry::Identity, &g);
    assert_eq!(poly(&code, &g), trefoil);
    // and the mirrored parameters give the obverse
    let diagram = knotcolour::diagram::tangle::bretzel_diagram(-1, -1, -1).unwrap();
    let code = diagram.long_wirtinger(0, false, false).unwrap();
    let right = fixture_poly("trefoil_right", KnotSymmetry::Identity, &g);
    assert_eq!(poly(&code, &g), right);
}

#[test]
fn fox_colouring_normalization() {
    // raw dihedral-quandle count 9 = p × group-colouring count 3
    let d3 = PointedGroup::dihedral(6, &BasepointSpec::Default).unwrap();
    let code = load_fixture("trefoil_left").unwrap().code(KnotSymmetry::Identity).unwrap();
    let group_count =
        knotcolour::colouring::enumerate_colourings(&code, &d3, &cfg()).unwrap().len();
    let quandle = knotcolour::quandle::FiniteQuandle::dihedral(3);
    let raw =
        knotcolour::colouring::quandle_count_total_closed(&code, &quandle, &cfg()).unwrap();
    assert_eq!(group_count, 3);
    assert_eq!(raw, 9);
}

#[test]
fn polynomial_json_round_trip() {
    let g = PointedGroup::mathieu11(&BasepointSpec::Default).unwrap();
    let p = fixture_poly("bretzel_3_5_7", KnotSymmetry::Identity, &g);
    let json = p.to_json();
    let back = RingElement::from_json(g.clone(), &json).unwrap();
    assert_eq!(p, back);
}

#[test]
fn total_colouring_number_of_unknot() {
    for descriptor in ["A5", "PSL2_7"] {
        let g = PointedGroup::build_named(descriptor, &BasepointSpec::Default).unwrap();
        assert_eq!(
            knotcolour::colouring::total_colouring_number(&WirtingerCode::unknot(), &g, &cfg())
                .unwrap(),
            g.order() as i64
        );
    }
}
