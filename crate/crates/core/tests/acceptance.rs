//! Acceptance suite: one line per criterion, each run against its time
//! limit. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ninfty::characters::{permutation_character, CharacterTable};
use ninfty::group::{construct_group, Group, PRESETS};
use ninfty::gset::{sets_of_size, GSet};
use ninfty::indexing::{check_composition_closure, enumerate_all, IndexingSystem};
use ninfty::mackey::{verify_all, BurnsideMackey, BurnsideRing};
use ninfty::operad::{
    disks_system, find_separating_universe, isometries_system, operad_coinduce, operad_cotensor,
    operad_fixed_points, operad_product, OperadModel, SeparationMode,
};
use ninfty::universe::{all_universes, Universe};

use common::{oracle_systems, small_presets};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(name: &str) -> Group {
    construct_group(name).expect("preset")
}

fn counts() -> Outcome {
    let mut parts = Vec::new();
    for name in ["C2", "C3"] {
        let start = Instant::now();
        let n = enumerate_all(&group(name)).len();
        let t = start.elapsed();
        ensure(n == 2, || format!("{} has {} systems", name, n))?;
        ensure(t < Duration::from_secs(1), || format!("{} took {:.2?}", name, t))?;
        parts.push(format!("{}: {}", name, n));
    }
    Ok(parts.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    let groups = small_presets();
    for g in &groups {
        let mut mine: Vec<BTreeSet<(usize, usize)>> = enumerate_all(g).systems.iter().map(IndexingSystem::pairs).collect();
        mine.sort();
        let oracle = oracle_systems(g);
        ensure(mine == oracle, || {
            format!("{}: enumeration {} vs oracle {}", g.display_name(), mine.len(), oracle.len())
        })?;
        if g.display_name() == "C4" {
            ensure(oracle.len() == 5, || format!("C4 oracle count {}", oracle.len()))?;
        }
        total += oracle.len();
    }
    Ok(format!("{} groups, {} systems", groups.len(), total))
}

fn fixed_universes() -> Outcome {
    let mut parts = Vec::new();
    for (name, order) in [("C4", 2), ("S3", 3), ("D8", 4)] {
        let g = group(name);
        let l = g.lattice();
        // The cyclic normal subgroup of the given order.
        let n = l
            .normal_subgroups()
            .into_iter()
            .find(|&n| l.order(n) == order && l.generators(n).len() == 1)
            .ok_or_else(|| format!("{}: no normal subgroup of order {}", name, order))?;
        let u = Universe::parse(&g, &format!("fixed:{}", l.label(n))).map_err(|e| e.to_string())?;
        let expected: BTreeSet<(usize, usize)> =
            IndexingSystem::complete(&g).pairs().into_iter().filter(|&(h, k)| l.le(l.meet(n, h), k)).collect();
        let d = OperadModel::disks(&u).admissibles().pairs();
        let i = OperadModel::isometries(&u).admissibles().pairs();
        ensure(d == expected, || format!("{}: disks differ from stabilizer rule", name))?;
        ensure(i == expected, || format!("{}: isometries differ from stabilizer rule", name))?;
        parts.push(format!("{}/{}", name, l.label(n)));
    }
    Ok(parts.join(", "))
}

fn pairwise_separation() -> Outcome {
    let mut parts = Vec::new();
    for name in ["C4", "D8", "Q8", "S3", "A4"] {
        let g = group(name);
        let s = find_separating_universe(&g, SeparationMode::Pairwise)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}: no separating universe", name))?;
        let d = disks_system(&s.universe, false);
        let i = isometries_system(&s.universe);
        ensure(d != i, || format!("{}: systems agree", name))?;
        let (h, k) = s.witness;
        ensure(d.contains(h, k) && !i.contains(h, k), || format!("{}: witness does not separate", name))?;
        parts.push(format!("{} {}", name, s.spec));
    }
    Ok(parts.join("; "))
}

fn all_isometries_separation() -> Outcome {
    let mut parts = Vec::new();
    for name in ["C4", "S3"] {
        let g = group(name);
        let s = find_separating_universe(&g, SeparationMode::AllIsometries)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}: nothing certified", name))?;
        let d = disks_system(&s.universe, false);
        let universes = all_universes(&g).map_err(|e| e.to_string())?;
        for w in &universes {
            ensure(isometries_system(w) != d, || format!("{}: disks({}) = isometries({})", name, s.spec, w.spec()))?;
        }
        parts.push(format!("{} {} vs {} universes", name, s.spec, universes.len()));
    }
    Ok(parts.join("; "))
}

fn containment() -> Outcome {
    let mut total = 0;
    for g in small_presets() {
        for u in all_universes(&g).map_err(|e| e.to_string())? {
            let d = disks_system(&u, true);
            let i = isometries_system(&u);
            ensure(i.is_subset(&d), || format!("{} {}: isometries not below disks", g.display_name(), u.spec()))?;
            total += 1;
        }
    }
    Ok(format!("{} universes", total))
}

/// At most `n` items, evenly spread.
fn sample<T: Clone>(items: &[T], n: usize) -> Vec<T> {
    let step = items.len().div_ceil(n).max(1);
    items.iter().step_by(step).cloned().collect()
}

fn functoriality() -> Outcome {
    let mut checked = 0;
    for name in PRESETS {
        let g = group(name);
        let l = g.lattice();
        let check = |s: &IndexingSystem, what: &str| -> Result<(), String> {
            let r = s.validate();
            ensure(r.valid, || format!("{} {}: {}", name, what, r.summary()))
        };
        let universes = all_universes(&g).map_err(|e| e.to_string())?;
        let mut models = vec![OperadModel::trivial(&g), OperadModel::complete(&g)];
        for u in &universes {
            models.push(OperadModel::disks(u));
            models.push(OperadModel::isometries(u));
        }
        let systems: Vec<IndexingSystem> = models.iter().map(OperadModel::admissibles).collect();
        for (m, s) in models.iter().zip(&systems) {
            check(s, &format!("admissibles of {:?}", m))?;
            checked += 1;
        }
        let few = sample(&models, 6);
        for a in &few {
            for b in &few {
                check(&operad_product(a, b).map_err(|e| e.to_string())?.admissibles(), "product")?;
                checked += 1;
            }
        }
        for class in l.classes() {
            let h = g.subgroup_group(class[0]);
            let mut inner = vec![OperadModel::trivial(&h)];
            for u in sample(&all_universes(&h).map_err(|e| e.to_string())?, 3) {
                inner.push(OperadModel::disks(&u));
                inner.push(OperadModel::isometries(&u));
            }
            for m in &inner {
                check(&operad_coinduce(m, &g).map_err(|e| e.to_string())?.admissibles(), "coinduce")?;
                checked += 1;
            }
        }
        let mut families: Vec<Vec<usize>> = vec![vec![l.bottom()], (0..l.len()).collect()];
        for class in l.classes() {
            let fam: BTreeSet<usize> =
                (0..l.len()).filter(|&b| class.iter().any(|&a| l.le(b, a))).collect();
            families.push(fam.into_iter().collect());
        }
        for fam in &families {
            for m in &few {
                check(&operad_cotensor(m, fam).map_err(|e| e.to_string())?.admissibles(), "cotensor")?;
                checked += 1;
            }
        }
        for n in l.normal_subgroups() {
            for m in &few {
                let (_, fp) = operad_fixed_points(m, n).map_err(|e| e.to_string())?;
                check(&fp.admissibles(), "fixed points")?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} systems over {} presets", checked, PRESETS.len()))
}

fn double_coset_suites() -> Outcome {
    let mut parts = Vec::new();
    for name in ["C4", "S3", "D8"] {
        let g = group(name);
        let ring = Arc::new(BurnsideRing::new(&g));
        let lat = enumerate_all(&g);
        let mut checked = 0;
        for s in &lat.systems {
            let m = BurnsideMackey::over(ring.clone(), s).map_err(|e| e.to_string())?;
            for rep in verify_all(&m) {
                ensure(rep.passed(), || format!("{} {}: {:?}", name, rep.axiom, rep.witnesses.first()))?;
                ensure(rep.skipped == 0, || format!("{} {}: {} skipped", name, rep.axiom, rep.skipped))?;
                checked += rep.checked;
            }
        }
        parts.push(format!("{} {} systems/{} identities", name, lat.len(), checked));
    }
    Ok(parts.join("; "))
}

fn character_checks() -> Outcome {
    let mut pairs = 0;
    for name in PRESETS {
        let g = group(name);
        let t = CharacterTable::for_group(&g).map_err(|e| e.to_string())?;
        ensure(t.row_orthogonality(), || format!("{}: rows", name))?;
        ensure(t.column_orthogonality(), || format!("{}: columns", name))?;
        ensure(t.degree_sum() == g.order(), || format!("{}: Σd² = {}", name, t.degree_sum()))?;
        for n in 1..=8 {
            for types in sets_of_size(&g, n) {
                let set = GSet::from_orbit_types(&g, &types);
                let chi = permutation_character(&set, t.prime());
                for h in 0..g.lattice().len() {
                    let dim = chi.fixed_dim(h).map_err(|e| e.to_string())?;
                    let orbits = set.restrict_to(h).orbits().len();
                    ensure(dim == orbits, || {
                        format!("{}: {} over {} has {} orbits, dim {}", name, set.to_literal(), g.lattice().label(h), orbits, dim)
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{} tables, {} (T, H) pairs", PRESETS.len(), pairs))
}

fn composition_closure() -> Outcome {
    let mut parts = Vec::new();
    for name in ["C4", "S3"] {
        let g = group(name);
        let lat = enumerate_all(&g);
        let mut checked = 0;
        for s in &lat.systems {
            let r = check_composition_closure(s, 6);
            ensure(r.passed, || format!("{}: {:?}", name, r.counterexample))?;
            checked += r.checked;
        }
        parts.push(format!("{} {} systems/{} cases", name, lat.len(), checked));
    }
    Ok(parts.join("; "))
}

fn cotensor_collapse() -> Outcome {
    let mut total = 0;
    for name in ["C4", "S3"] {
        let g = group(name);
        let mut models = vec![OperadModel::trivial(&g), OperadModel::complete(&g)];
        for u in all_universes(&g).map_err(|e| e.to_string())? {
            models.push(OperadModel::disks(&u));
            models.push(OperadModel::steiner(&u));
            models.push(OperadModel::isometries(&u));
        }
        models.extend(enumerate_all(&g).systems.into_iter().map(OperadModel::explicit));
        let e = [g.lattice().bottom()];
        for m in &models {
            let c = operad_cotensor(m, &e).map_err(|e| e.to_string())?.admissibles();
            ensure(c.is_complete(), || format!("{}: cotensor of {:?} is not complete", name, m))?;
            total += 1;
        }
    }
    Ok(format!("{} models", total))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "indexing-system counts for C2 and C3", limit: Duration::from_secs(2), run: counts },
        Criterion { id: 2, name: "enumeration equals oracle, order <= 12", limit: Duration::from_secs(30), run: oracle_equivalence },
        Criterion { id: 3, name: "fixed universes: stabilizers contain N", limit: Duration::from_secs(5), run: fixed_universes },
        Criterion { id: 4, name: "disks vs isometries separation", limit: Duration::from_secs(30), run: pairwise_separation },
        Criterion { id: 5, name: "disks vs all isometries separation", limit: Duration::from_secs(60), run: all_isometries_separation },
        Criterion { id: 6, name: "isometries below disks, order <= 12", limit: Duration::from_secs(60), run: containment },
        Criterion { id: 7, name: "operad constructions validate", limit: Duration::from_secs(60), run: functoriality },
        Criterion { id: 8, name: "double coset and Frobenius suites", limit: Duration::from_secs(120), run: double_coset_suites },
        Criterion { id: 9, name: "character table self-checks", limit: Duration::from_secs(120), run: character_checks },
        Criterion { id: 10, name: "composition closure, n_max = 6", limit: Duration::from_secs(60), run: composition_closure },
        Criterion { id: 11, name: "cotensor with EG is complete", limit: Duration::from_secs(5), run: cotensor_collapse },
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        ran += 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {}", msg))
        });
        let t = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if t <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{} (over the time limit)", d)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{} [{:>2}] {}: {} ({:.2}s / {}s)", status, c.id, c.name, detail, t.as_secs_f64(), c.limit.as_secs());
    }
    println!("{}/{} criteria passed", ran - failed, ran);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
