use ninfty::characters::CharacterTable;
use ninfty::group::construct_group;
use ninfty::indexing::{enumerate_all, IndexingSystem};
use ninfty::operad::{
    check_family, disks_admissible, disks_system, find_separating_universe, isometries_system, operad_coinduce,
    operad_cotensor, operad_fixed_points, operad_product, realization_census, OperadModel, SeparationMode,
};
use ninfty::universe::{all_universes, Universe};
use ninfty::Error;

#[test]
fn complete_and_trivial_universes() {
    for name in ["C4", "S3", "D8", "A4"] {
        let g = construct_group(name).unwrap();
        let complete = Universe::parse(&g, "complete").unwrap();
        let trivial = Universe::parse(&g, "trivial").unwrap();
        assert!(OperadModel::isometries(&complete).admissibles().is_complete(), "{}", name);
        assert!(OperadModel::disks(&complete).admissibles().is_complete(), "{}", name);
        assert!(OperadModel::disks(&trivial).admissibles().is_trivial(), "{}", name);
        assert!(OperadModel::isometries(&trivial).admissibles().is_trivial(), "{}", name);
    }
}

#[test]
fn steiner_matches_disks() {
    let g = construct_group("D8").unwrap();
    for u in all_universes(&g).unwrap() {
        assert_eq!(OperadModel::steiner(&u).admissibles(), OperadModel::disks(&u).admissibles());
    }
}

#[test]
fn pruned_disks_agree_with_unpruned() {
    for name in ["C4", "S3", "C2xC2", "D8", "Q8", "A4", "C12"] {
        let g = construct_group(name).unwrap();
        for u in all_universes(&g).unwrap() {
            assert_eq!(disks_system(&u, true), disks_system(&u, false), "{} {}", name, u.spec());
        }
    }
}

#[test]
fn containment_and_monotonicity() {
    for name in ["C4", "S3", "D8", "Q8"] {
        let g = construct_group(name).unwrap();
        let us = all_universes(&g).unwrap();
        let d: Vec<IndexingSystem> = us.iter().map(|u| disks_system(u, true)).collect();
        let i: Vec<IndexingSystem> = us.iter().map(isometries_system).collect();
        for a in 0..us.len() {
            assert!(i[a].is_subset(&d[a]));
            assert!(d[a].validate().valid && i[a].validate().valid);
            for b in 0..us.len() {
                if us[a].is_subset(&us[b]) {
                    assert!(d[a].is_subset(&d[b]), "{} disks", name);
                }
            }
        }
    }
}

/// Isometries are not monotone in the universe: over D8, `D8/V4a` is
/// admissible for `1 + χ` with `ker χ = V4a`, since `Ind_{V4a}^{D8} 1 = 1 + χ`,
/// but adding a character that is nontrivial on `V4a` brings in a sign of
/// `V4a` whose induction leaves the universe.
#[test]
fn isometries_not_monotone() {
    let g = construct_group("D8").unwrap();
    let l = g.lattice();
    let table = CharacterTable::for_group(&g).unwrap();
    let v4a = l.find("V4a", None).unwrap();
    let chi = (1..table.len()).find(|&i| table.kernel_contains(i, l.members(v4a))).unwrap();
    let other = (1..table.len()).find(|&i| i != chi && table.degrees()[i] == 1).unwrap();
    let small = Universe::parse(&g, &format!("gen:triv,irr:{}", chi)).unwrap();
    let big = Universe::parse(&g, &format!("gen:triv,irr:{},irr:{}", chi, other)).unwrap();
    assert!(small.is_subset(&big));
    assert!(isometries_system(&small).contains(l.top(), v4a));
    assert!(!isometries_system(&big).contains(l.top(), v4a));
}

#[test]
fn c4_separating_character_arithmetic() {
    let g = construct_group("C4").unwrap();
    let l = g.lattice();
    let u = Universe::parse(&g, "gen:triv,regbar:C2").unwrap();
    let w = u.character();
    let c2 = l.find("C2", None).unwrap();
    let dims: Vec<usize> = [l.bottom(), c2, l.top()].iter().map(|&h| w.fixed_dim(h).unwrap()).collect();
    assert_eq!(dims, vec![3, 1, 1]);
    assert!(disks_admissible(&u, &u, l.top(), l.bottom(), false));
    let iso = OperadModel::isometries(&u).admissibles();
    assert!(!iso.contains(l.top(), l.bottom()));
    // The sign character of C4 is the missing constituent.
    let table = CharacterTable::for_group(&g).unwrap();
    let sign = (0..table.len()).find(|&i| table.degrees()[i] == 1 && i != 0 && table.conjugate_of(i) == i).unwrap();
    assert!(!u.contains(sign));
}

#[test]
fn separation_on_small_groups() {
    for name in ["C1", "C2", "C3"] {
        let g = construct_group(name).unwrap();
        assert!(find_separating_universe(&g, SeparationMode::Pairwise).unwrap().is_none());
    }
    for name in ["C4", "S3", "D8", "Q8", "A4", "C2xC2"] {
        let g = construct_group(name).unwrap();
        let s = find_separating_universe(&g, SeparationMode::Pairwise).unwrap().unwrap();
        assert_ne!(s.disks, s.isometries);
        assert!(s.disks.contains(s.witness.0, s.witness.1));
        assert!(!s.isometries.contains(s.witness.0, s.witness.1));
        assert_eq!(Universe::parse(&g, &s.spec).unwrap().constituents(), s.universe.constituents());
    }
}

#[test]
fn simple_group_branch() {
    let g = construct_group("A5").unwrap();
    let s = find_separating_universe(&g, SeparationMode::Pairwise).unwrap().unwrap();
    assert_ne!(s.disks, s.isometries);
    assert!(find_separating_universe(&g, SeparationMode::AllIsometries).unwrap().is_none());
}

#[test]
fn product_examples() {
    let g = construct_group("C4").unwrap();
    let complete = OperadModel::complete(&g);
    let trivial = OperadModel::trivial(&g);
    assert!(operad_product(&complete, &trivial).unwrap().admissibles().is_trivial());
    let u1 = Universe::parse(&g, "gen:triv,regbar:C2").unwrap();
    let d = OperadModel::disks(&u1);
    assert_eq!(operad_product(&d, &d).unwrap().admissibles(), d.admissibles());
    let iso = OperadModel::isometries(&Universe::parse(&g, "complete").unwrap());
    assert_eq!(operad_product(&d, &iso).unwrap().admissibles(), d.admissibles());
    let s3 = construct_group("S3").unwrap();
    assert!(matches!(operad_product(&d, &OperadModel::trivial(&s3)), Err(Error::GroupMismatch)));
}

#[test]
fn coinduce_examples() {
    let g = construct_group("C4").unwrap();
    let l = g.lattice();
    for s in enumerate_all(&g).systems {
        let m = OperadModel::explicit(s.clone());
        assert_eq!(operad_coinduce(&m, &g).unwrap().admissibles(), s);
    }
    let c2 = l.find("C2", None).unwrap();
    let h = g.subgroup_group(c2);
    assert!(operad_coinduce(&OperadModel::complete(&h), &g).unwrap().admissibles().is_complete());
    // Over a normal subgroup the rule is: K/L admissible iff its restriction
    // to N ∩ K is.
    for s in enumerate_all(&h).systems {
        let up = operad_coinduce(&OperadModel::explicit(s.clone()), &g).unwrap().admissibles();
        assert!(up.validate().valid);
        for (k, ll) in IndexingSystem::complete(&g).pairs() {
            let a = l.meet(c2, k);
            let expected = l.members(k).iter().all(|&x| {
                let b = l.meet(a, l.conjugate(x, ll));
                s.contains(g.restrict_index(a, &h).unwrap(), g.restrict_index(b, &h).unwrap())
            });
            assert_eq!(up.contains(k, ll), expected);
        }
    }
    let s3 = construct_group("S3").unwrap();
    assert!(operad_coinduce(&OperadModel::trivial(&s3), &g).is_err());
}

#[test]
fn coinduce_validates_everywhere() {
    for name in ["S3", "D8", "A4"] {
        let g = construct_group(name).unwrap();
        for class in g.lattice().classes() {
            let h = g.subgroup_group(class[0]);
            for s in enumerate_all(&h).systems.iter().step_by(3) {
                let up = operad_coinduce(&OperadModel::explicit(s.clone()), &g).unwrap().admissibles();
                assert!(up.validate().valid, "{} from {}", name, h.display_name());
            }
        }
    }
}

#[test]
fn cotensor_examples() {
    for name in ["C4", "S3"] {
        let g = construct_group(name).unwrap();
        let all: Vec<usize> = (0..g.lattice().len()).collect();
        for s in enumerate_all(&g).systems {
            let m = OperadModel::explicit(s.clone());
            assert_eq!(operad_cotensor(&m, &all).unwrap().admissibles(), s);
            assert!(operad_cotensor(&m, &[g.lattice().bottom()]).unwrap().admissibles().is_complete());
        }
    }
    let s3 = construct_group("S3").unwrap();
    let c2 = s3.lattice().find("C2", None).unwrap();
    assert!(matches!(operad_cotensor(&OperadModel::trivial(&s3), &[0, c2]), Err(Error::NotAFamily(_))));
    assert!(check_family(&s3, &[]).is_ok());
}

#[test]
fn fixed_point_examples() {
    let g = construct_group("C4").unwrap();
    let l = g.lattice();
    let c2 = l.find("C2", None).unwrap();
    for s in enumerate_all(&g).systems {
        let (_, same) = operad_fixed_points(&OperadModel::explicit(s.clone()), l.bottom()).unwrap();
        assert_eq!(same.admissibles().len(), s.len());
        assert_eq!(same.admissibles().nontrivial_representatives().len(), s.nontrivial_representatives().len());
    }
    let (q, m) = operad_fixed_points(&OperadModel::complete(&g), c2).unwrap();
    assert_eq!(q.group.order(), 2);
    assert!(m.admissibles().is_complete());
    let fixed = OperadModel::disks(&Universe::parse(&g, "fixed:C2").unwrap());
    assert!(operad_fixed_points(&fixed, c2).unwrap().1.admissibles().is_complete());
    let s3 = construct_group("S3").unwrap();
    let sc2 = s3.lattice().find("C2", None).unwrap();
    assert!(matches!(operad_fixed_points(&OperadModel::trivial(&s3), sc2), Err(Error::NotNormal(_))));
}

#[test]
fn fixed_points_of_coinduced_trivial() {
    // Coinducing the only system of e up to G gives the complete system,
    // whose fixed points are complete again.
    for name in ["C4", "S3"] {
        let g = construct_group(name).unwrap();
        let e = g.subgroup_group(g.lattice().bottom());
        let up = operad_coinduce(&OperadModel::trivial(&e), &g).unwrap();
        assert!(up.admissibles().is_complete());
        for n in g.lattice().normal_subgroups() {
            assert!(operad_fixed_points(&up, n).unwrap().1.admissibles().is_complete());
        }
    }
}

#[test]
fn census_fixtures() {
    let g = construct_group("C2").unwrap();
    let c = realization_census(&g).unwrap();
    assert_eq!(c.lattice.len(), 2);
    assert!(c.rows.iter().all(|r| !r.disks.is_empty() && !r.isometries.is_empty()));

    // Frozen from an exhaustive run, cross-checked with the unpruned disks
    // criterion below.
    let g = construct_group("C4").unwrap();
    let c = realization_census(&g).unwrap();
    let marks: Vec<(bool, bool)> = c.rows.iter().map(|r| (!r.disks.is_empty(), !r.isometries.is_empty())).collect();
    assert_eq!(marks, vec![(true, true), (false, true), (true, true), (true, false), (true, true)]);
    for u in all_universes(&g).unwrap() {
        let i = c.lattice.position(&disks_system(&u, false)).unwrap();
        assert!(c.rows[i].disks.contains(&u.spec()));
    }
    for name in ["S3", "D8"] {
        let g = construct_group(name).unwrap();
        let c = realization_census(&g).unwrap();
        let first = &c.rows[0];
        let last = c.rows.last().unwrap();
        assert!(!first.disks.is_empty() && !first.isometries.is_empty());
        assert!(!last.disks.is_empty() && !last.isometries.is_empty());
    }
}
