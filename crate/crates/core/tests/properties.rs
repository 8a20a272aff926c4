use std::sync::OnceLock;

use proptest::prelude::*;

use ninfty::characters::{permutation_character, CharacterTable};
use ninfty::group::{construct_group, Group};
use ninfty::gset::{sets_of_size, GSet};
use ninfty::indexing::IndexingSystem;

fn groups() -> &'static [Group] {
    static G: OnceLock<Vec<Group>> = OnceLock::new();
    G.get_or_init(|| ["C4", "S3", "D8", "Q8"].iter().map(|n| construct_group(n).unwrap()).collect())
}

/// Random pair seeds `K ≤ H`, drawn as lattice index pairs.
fn seeds(g: &Group, raw: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let l = g.lattice();
    raw.iter()
        .map(|&(a, b)| {
            let h = a % l.len();
            let subs: Vec<usize> = l.subgroups_of(h).collect();
            (h, subs[b % subs.len()])
        })
        .collect()
}

fn gset(g: &Group, raw: &[(usize, usize)]) -> GSet {
    let l = g.lattice();
    let types: Vec<(usize, usize)> = raw.iter().map(|&(k, m)| (k % l.len(), m % 2 + 1)).collect();
    GSet::from_orbit_types(g, &types)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_a_closure_operator(
        gi in 0usize..4,
        a in prop::collection::vec((0usize..64, 0usize..64), 0..4),
        b in prop::collection::vec((0usize..64, 0usize..64), 0..4),
    ) {
        let g = &groups()[gi];
        let sa = seeds(g, &a);
        let mut sab = sa.clone();
        sab.extend(seeds(g, &b));
        let ca = IndexingSystem::closure(g, &sa).unwrap();
        let cab = IndexingSystem::closure(g, &sab).unwrap();
        for &(h, k) in &sa {
            prop_assert!(ca.contains(h, k));
        }
        prop_assert!(ca.is_subset(&cab));
        let again = IndexingSystem::closure(g, &ca.pairs().into_iter().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&again, &ca);
        prop_assert!(ca.validate().valid);
    }

    #[test]
    fn induction_and_coinduction_sizes(
        gi in 0usize..4,
        h in 0usize..64,
        raw in prop::collection::vec((0usize..64, 0usize..4), 1..3),
    ) {
        let g = &groups()[gi];
        let l = g.lattice();
        let h = h % l.len();
        let hg = g.subgroup_group(h);
        let t = gset(&hg, &raw);
        let index = g.order() / hg.order();
        prop_assert_eq!(t.induce(g).unwrap().size(), index * t.size());
        if t.size().pow(index as u32) <= 4096 {
            prop_assert_eq!(t.coinduce(g).unwrap().size(), t.size().pow(index as u32));
        }
        // Frobenius reciprocity for sets: G ×_H res T ≅ G/H × T.
        let big = gset(g, &raw);
        let lhs = big.restrict(&hg).unwrap().induce(g).unwrap();
        let rhs = GSet::coset_space(g, h).product(&big).unwrap();
        prop_assert!(lhs.is_isomorphic(&rhs));
    }

    #[test]
    fn orbit_count_is_burnside_average(gi in 0usize..4, raw in prop::collection::vec((0usize..64, 0usize..4), 1..4)) {
        let g = &groups()[gi];
        let t = gset(g, &raw);
        let fixed: usize = (0..g.order()).map(|x| (0..t.size()).filter(|&p| t.act(x, p) == p).count()).sum();
        prop_assert_eq!(fixed, t.orbits().len() * g.order());
    }

    #[test]
    fn permutation_characters_count_fixed_orbits(gi in 0usize..4, raw in prop::collection::vec((0usize..64, 0usize..4), 1..3)) {
        let g = &groups()[gi];
        let t = gset(g, &raw);
        let table = CharacterTable::for_group(g).unwrap();
        let chi = permutation_character(&t, table.prime());
        for h in 0..g.lattice().len() {
            prop_assert_eq!(chi.fixed_dim(h).unwrap(), t.restrict_to(h).orbits().len());
        }
        prop_assert!(table.decompose(&chi).unwrap().iter().all(|&m| m >= 0));
    }

    #[test]
    fn product_is_multiplicative_on_sizes(gi in 0usize..4, a in prop::collection::vec((0usize..64, 0usize..4), 1..3), b in prop::collection::vec((0usize..64, 0usize..4), 1..3)) {
        let g = &groups()[gi];
        let (x, y) = (gset(g, &a), gset(g, &b));
        let p = x.product(&y).unwrap();
        prop_assert_eq!(p.size(), x.size() * y.size());
        prop_assert!(p.is_isomorphic(&y.product(&x).unwrap()));
    }
}

#[test]
fn sets_of_size_counts() {
    // C2-sets of size n: pairs (fixed points, free orbits), n/2 + 1 of them.
    let c2 = construct_group("C2").unwrap();
    for n in 0..8 {
        assert_eq!(sets_of_size(&c2, n).len(), n / 2 + 1);
    }
}
