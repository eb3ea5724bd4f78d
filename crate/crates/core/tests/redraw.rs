use std::collections::BTreeSet;

use oddplane::fixtures;
use oddplane::redraw::{hanani_tutte_embed, lemma1_redraw, theorem2_transform, OneVertexSketch};
use oddplane::{Drawing, EdgeId, Ending, ParitySketch, RedrawError, Side, VertexId};
use proptest::prelude::*;

/// Cyclic interleaving straight from a rotation, independent of any
/// reference gap.
fn interleaved_oracle(rot: &[Ending], e: EdgeId, f: EdgeId) -> bool {
    let pos = |x: EdgeId| -> Vec<usize> { (0..rot.len()).filter(|&i| rot[i].edge == x).collect() };
    let (pe, pf) = (pos(e), pos(f));
    let between = |p: usize| pe[0] < p && p < pe[1];
    between(pf[0]) != between(pf[1])
}

fn cyclic_eq(a: &[Ending], b: &[Ending]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i])))
}

/// Every cyclic arrangement of the endings of `l` loops, first ending fixed.
fn all_rotations(l: u32) -> Vec<Vec<Ending>> {
    let mut items: Vec<Ending> = (0..l)
        .flat_map(|e| [Ending::new(EdgeId(e), Side::Start), Ending::new(EdgeId(e), Side::End)])
        .collect();
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items.remove(0);
    let mut out = Vec::new();
    permute(&mut items, 0, &mut |p| {
        let mut r = vec![first];
        r.extend_from_slice(p);
        out.push(r);
    });
    out
}

fn permute(v: &mut Vec<Ending>, k: usize, f: &mut dyn FnMut(&[Ending])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn one_vertex_redraw_exhaustive_up_to_four_loops() {
    for l in 0..=4u32 {
        let mut checked = 0;
        for rot in all_rotations(l) {
            let s = OneVertexSketch::new(VertexId(0), rot.clone()).unwrap();
            let d = lemma1_redraw(&s);
            assert!(d.is_valid(), "{rot:?}: {:?}", d.validate());
            assert!(cyclic_eq(&d.rotation_system()[&VertexId(0)], &rot), "{rot:?}");
            let stats = d.crossing_stats();
            assert!(stats.self_crossings.is_empty());
            for e in 0..l {
                for f in e + 1..l {
                    let want = usize::from(interleaved_oracle(&rot, EdgeId(e), EdgeId(f)));
                    assert_eq!(d.crossing_count(EdgeId(e), EdgeId(f)).unwrap(), want, "{rot:?} {e} {f}");
                    assert_eq!(s.interleaved(EdgeId(e), EdgeId(f)), want == 1);
                }
            }
            checked += 1;
        }
        let expected = if l == 0 { 1 } else { (1..2 * l as usize).product::<usize>() };
        assert_eq!(checked, expected);
    }
}

fn g1_properties(input: &Drawing, k: usize) {
    let t = theorem2_transform(input, k).unwrap();
    let out = &t.output;
    assert!(out.is_valid(), "{:?}", out.validate());
    assert_eq!(out.graph(), t.g1.graph());
    let (r_out, r_g1) = (out.rotation_system(), t.g1.rotation_system());
    for (v, r) in &r_g1 {
        assert!(cyclic_eq(&r_out[v], r), "rotation at {v}");
    }
    assert_eq!(ParitySketch::of(out).odd_pairs(), ParitySketch::of(&t.g1).odd_pairs());
    let s = out.crossing_stats();
    assert!(s.pairs.iter().all(|p| p.count == 1));
    assert!(s.self_crossings.is_empty());
    assert!(out.is_k_class(k, oddplane::PlanarityMode::Plane));
    // edges outside G1 are exactly those crossing the forest oddly
    let sk = ParitySketch::of(&t.input);
    for e in input.graph().edges() {
        let odd_to_forest = t.forest.iter().any(|&f| sk.is_odd(e.id, f));
        assert_eq!(t.removed.contains(&e.id), odd_to_forest && !t.forest.contains(&e.id));
    }
    let total: usize = t.components.iter().map(|c| c.vertices.len()).sum();
    assert_eq!(total, input.vertex_count());
}

#[test]
fn pipeline_on_fixtures() {
    for d in [
        fixtures::triangle(),
        fixtures::square(),
        fixtures::k5_one_crossing(),
        fixtures::k33_one_crossing(),
        fixtures::square_double_crossing(),
    ] {
        g1_properties(&d, 1);
    }
}

#[test]
fn pipeline_rejects_too_many_odd_crossings() {
    let d = fixtures::k5_one_crossing();
    assert!(matches!(theorem2_transform(&d, 0), Err(RedrawError::NotKOddPlane { k: 0, .. })));
}

#[test]
fn weak_hanani_tutte_on_double_crossing() {
    let d = fixtures::square_double_crossing();
    let p = hanani_tutte_embed(&d).unwrap();
    assert_eq!(p.crossing_node_count(), 0);
    assert!(p.is_valid());
    assert_eq!(p.graph(), d.graph());
    let k5 = fixtures::k5_one_crossing();
    assert!(matches!(hanani_tutte_embed(&k5), Err(RedrawError::OddPairPresent(..))));
}

/// Applies finger moves and kinks picked by `choices` to a base drawing.
fn perturb(base: &Drawing, choices: &[(usize, usize, usize, bool)]) -> Drawing {
    let mut d = base.clone();
    for &(fi, a, b, kink) in choices {
        if kink {
            d = d.add_kink(a % d.darts().len());
            continue;
        }
        let faces = d.faces();
        let face = &faces[fi % faces.len()];
        let x = face[a % face.len()];
        let y = face[b % face.len()];
        if d.dart(x).edge != d.dart(y).edge {
            d = d.add_double_crossing(x, y);
        }
    }
    d
}

fn base_drawings() -> Vec<Drawing> {
    vec![fixtures::k5_one_crossing(), fixtures::k33_one_crossing(), fixtures::square()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pipeline_properties_on_perturbed_drawings(
        which in 0usize..3,
        moves in prop::collection::vec((0usize..64, 0usize..64, 0usize..64, prop::bool::weighted(0.15)), 0..8),
    ) {
        let d = perturb(&base_drawings()[which], &moves);
        prop_assert!(d.is_valid());
        let k = d.crossing_stats().odd_degree.values().copied().max().unwrap_or(0);
        g1_properties(&d, k);
    }

    #[test]
    fn finger_moves_keep_parity(
        moves in prop::collection::vec((0usize..64, 0usize..64, 0usize..64, Just(false)), 0..10),
    ) {
        let base = fixtures::k5_one_crossing();
        let d = perturb(&base, &moves);
        prop_assert_eq!(ParitySketch::of(&d).odd_pairs(), ParitySketch::of(&base).odd_pairs());
        let t = theorem2_transform(&d, 1).unwrap();
        prop_assert!(t.output.crossing_stats().cr <= 1);
        let removed: BTreeSet<EdgeId> = t.removed.iter().copied().collect();
        prop_assert!(removed.len() <= 1);
    }
}
