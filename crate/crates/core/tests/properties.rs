use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualgraph::action::{validate, ResolvedAction, Subgroup, VoltageGraph};
use dualgraph::arith::divisors;
use dualgraph::blowup::{base_change, oracle_splits};
use dualgraph::constructions::{cayley_graph, construct, GeneratingSet};
use dualgraph::invariants::{index, m_invariant, splits, ExtensionSpec};
use dualgraph::model::CurveModel;
use dualgraph::multigraph::{are_isomorphic, MultiGraph};

fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=8)))
}

fn lifted_model(seed: u64) -> Option<CurveModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, a) = VoltageGraph::random(&mut rng, 4, 6, 8).lift();
    CurveModel::with_unit_components(g, a, None).ok()
}

/// A lifted model pushed through a base change, so that fixed vertices and
/// flipped edges show up.
fn model_with_fixed_points(seed: u64, pick: usize, e: usize) -> Option<CurveModel> {
    let m = lifted_model(seed)?;
    let divs = divisors(m.order());
    let d = divs[pick % divs.len()];
    let blown = base_change(&m, ExtensionSpec::new(d, e)).ok()?;
    CurveModel::with_unit_components(blown.graph, blown.action, None).ok()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn edge_multiset(pairs: &[(usize, usize)], relabel: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (relabel[a], relabel[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort();
    out
}

/// Tries every vertex bijection.
fn brute_force_isomorphic(
    n1: usize,
    p1: &[(usize, usize)],
    n2: usize,
    p2: &[(usize, usize)],
) -> bool {
    if n1 != n2 || p1.len() != p2.len() {
        return false;
    }
    let identity: Vec<usize> = (0..n2).collect();
    let target = edge_multiset(p2, &identity);
    permutations(n1)
        .iter()
        .any(|perm| edge_multiset(p1, perm) == target)
}

fn check_fixed_point_laws(m: &CurveModel) -> Result<(), TestCaseError> {
    let g = m.graph();
    let r = ResolvedAction::new(g, m.action()).unwrap();
    let order = m.order();
    let divs = divisors(order);
    for &d in &divs {
        let h = Subgroup::with_index(d);
        for size in r.orbit_sizes(h).unwrap() {
            prop_assert_eq!((order / d) % size, 0, "orbit size {} under H_{}", size, d);
        }
        let fixed = r.fixed_vertices(h).unwrap();
        let stab = r.stabilized_edges(g, h).unwrap();
        for &(i, flipped) in &stab {
            let edge = &g.edges()[i];
            let [t, hd] = g.incidence(i);
            prop_assert!(
                !(flipped && edge.is_loop()),
                "loop {} flagged flipped",
                edge.id
            );
            if !flipped {
                prop_assert!(
                    fixed.contains(&t) && fixed.contains(&hd),
                    "unflipped {} moves an end",
                    edge.id
                );
            }
        }
        for &d2 in divs.iter().filter(|&&d2| d2 % d == 0) {
            let h2 = Subgroup::with_index(d2);
            let fixed2 = r.fixed_vertices(h2).unwrap();
            prop_assert!(fixed.iter().all(|v| fixed2.contains(v)));
            let stab2: Vec<usize> = r
                .stabilized_edges(g, h2)
                .unwrap()
                .into_iter()
                .map(|s| s.0)
                .collect();
            prop_assert!(stab.iter().all(|s| stab2.contains(&s.0)));
        }
    }
    Ok(())
}

fn check_splitting_laws(m: &CurveModel) -> Result<(), TestCaseError> {
    let order = m.order();
    let divs = divisors(order);
    for &d in &divs {
        for e in 1..=4 {
            let x = ExtensionSpec::new(d, e);
            let verdict = splits(m, x).unwrap();
            prop_assert_eq!(verdict, oracle_splits(m, x).unwrap(), "d={} e={}", d, e);
            prop_assert_eq!(
                verdict,
                splits(m, ExtensionSpec::new(d, 2 - e % 2)).unwrap()
            );
            for &d2 in divs.iter().filter(|&&d2| d2 % d == 0) {
                prop_assert!(!verdict || splits(m, ExtensionSpec::new(d2, e)).unwrap());
            }
        }
    }
    prop_assert!(splits(m, ExtensionSpec::new(order, 1)).unwrap());
    let i = index(m);
    prop_assert_eq!(order % i, 0);
    let mi = m_invariant(m);
    prop_assert!(
        mi.is_multiple_of(i) && mi <= order,
        "m {} index {} order {}",
        mi,
        i,
        order
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn handshake((n, pairs) in small_graph()) {
        let g = MultiGraph::from_index_pairs(n, &pairs).unwrap();
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(g.euler_characteristic(), n as i64 - pairs.len() as i64);
    }

    #[test]
    fn subdivision_keeps_topology((n, pairs) in small_graph(), e in 1usize..=4) {
        let g = MultiGraph::from_index_pairs(n, &pairs).unwrap();
        let s = g.subdivide(e).unwrap();
        prop_assert_eq!(s.euler_characteristic(), g.euler_characteristic());
        prop_assert_eq!(s.is_connected(), g.is_connected());
        prop_assert_eq!(s.arithmetic_genus(), g.arithmetic_genus());
        prop_assert_eq!(s.vertex_count(), n + pairs.len() * (e - 1));
        prop_assert_eq!(s.edge_count(), pairs.len() * e);
        if e > 1 {
            prop_assert!(s.edges().iter().all(|edge| !edge.is_loop()));
        }
    }

    #[test]
    fn relabeled_copies_are_isomorphic(
        (n, pairs) in small_graph(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut moved: Vec<_> = pairs.iter().map(|&(a, b)| (perm[b], perm[a])).collect();
        moved.shuffle(&mut rng);
        let g1 = MultiGraph::from_index_pairs(n, &pairs).unwrap();
        let g2 = MultiGraph::from_index_pairs(n, &moved).unwrap();
        prop_assert!(are_isomorphic(&g1, &g1));
        prop_assert!(are_isomorphic(&g1, &g2));
        prop_assert!(are_isomorphic(&g2, &g1));
    }

    #[test]
    fn isomorphism_matches_brute_force((n1, p1) in small_graph(), (n2, p2) in small_graph()) {
        let g1 = MultiGraph::from_index_pairs(n1, &p1).unwrap();
        let g2 = MultiGraph::from_index_pairs(n2, &p2).unwrap();
        let fast = are_isomorphic(&g1, &g2);
        prop_assert_eq!(fast, brute_force_isomorphic(n1, &p1, n2, &p2));
        prop_assert_eq!(fast, are_isomorphic(&g2, &g1));
    }

    #[test]
    fn graph_json_round_trip((n, pairs) in small_graph()) {
        let g = MultiGraph::from_index_pairs(n, &pairs).unwrap();
        let back: MultiGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn voltage_lifts_are_free_actions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vg = VoltageGraph::random(&mut rng, 4, 6, 8);
        let (g, a) = vg.lift();
        prop_assert!(validate(&g, &a).is_valid());
        prop_assert_eq!(g.euler_characteristic(), vg.order as i64 * vg.quotient.euler_characteristic());
        let r = ResolvedAction::new(&g, &a).unwrap();
        for d in divisors(vg.order).into_iter().filter(|&d| d < vg.order) {
            prop_assert!(r.fixed_vertices(Subgroup::with_index(d)).unwrap().is_empty());
        }
        prop_assert!(r.orbit_sizes(Subgroup::full()).unwrap().iter().all(|&s| s == vg.order));
        for k in divisors(vg.order) {
            prop_assert!(validate(&g, &a.restrict(k).unwrap()).is_valid());
        }
    }

    #[test]
    fn fixed_point_laws(seed in any::<u64>(), pick in 0usize..8, e in 1usize..=3) {
        if let Some(m) = model_with_fixed_points(seed, pick, e) {
            check_fixed_point_laws(&m)?;
        }
        if let Some(m) = lifted_model(seed) {
            check_fixed_point_laws(&m)?;
        }
    }

    #[test]
    fn splitting_laws(seed in any::<u64>(), pick in 0usize..8, e in 1usize..=3) {
        if let Some(m) = model_with_fixed_points(seed, pick, e) {
            check_splitting_laws(&m)?;
        }
        if let Some(m) = lifted_model(seed) {
            check_splitting_laws(&m)?;
        }
    }

    #[test]
    fn model_json_round_trip(seed in any::<u64>(), pick in 0usize..8) {
        if let Some(m) = model_with_fixed_points(seed, pick, 2) {
            let back = CurveModel::from_json(&m.to_json()).unwrap();
            prop_assert_eq!(back, m);
        }
    }

    #[test]
    fn cayley_graphs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = GeneratingSet::random(&mut rng, 24);
        let (g, a) = cayley_graph(&gs);
        prop_assert!(validate(&g, &a).is_valid());
        prop_assert!(g.is_connected());
        prop_assert!(g.degrees().iter().all(|&k| k == gs.len()));
        prop_assert_eq!(2 * g.euler_characteristic(), gs.order() as i64 * (2 - gs.len() as i64));
    }

    #[test]
    fn constructions_realize_their_index(genus in 0usize..=9, pick in 0usize..16) {
        let options: Vec<usize> = match genus {
            0 => vec![1, 2],
            1 => (1..=16).collect(),
            _ => divisors(2 * genus - 2),
        };
        let i = options[pick % options.len()];
        let m = construct(genus, i).unwrap();
        prop_assert_eq!(m.graph().arithmetic_genus(), Ok(genus));
        prop_assert!(m.graph().max_degree() <= 3);
        prop_assert_eq!(index(&m), i);
        let back = CurveModel::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }
}
