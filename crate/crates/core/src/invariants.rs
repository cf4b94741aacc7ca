use crate::error::{Error, Result};
use crate::group::{center, commutator_subgroup, ElementId, GroupTable};
use crate::lattice::{generated_subgroup, SubgroupLattice};
use crate::set::ElementSet;

/// Whole-group structural facts the covering checks quantify over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub order: usize,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_dedekind: bool,
    pub is_p_group: Option<u64>,
    pub center_size: usize,
    pub commutator_size: usize,
    pub frattini_size: usize,
    pub fitting_size: usize,
    /// None when the general-case exhaustive search is over budget.
    pub min_generators: Option<usize>,
}

/// An isomorphism-invariant fingerprint. Distinct profiles prove the
/// groups are non-isomorphic; equal profiles are treated as duplicates
/// when deduplicating catalogs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureProfile {
    pub order: usize,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub order_histogram: Vec<(u16, u32)>,
    pub center_size: usize,
    pub commutator_size: usize,
    pub frattini_size: usize,
    pub fitting_size: usize,
    pub conjugacy_classes: usize,
    /// Sorted multiset of (subgroup order, normalizer order, count).
    pub normalizer_profile: Vec<(usize, usize, u32)>,
}

pub fn is_abelian(g: &GroupTable) -> bool {
    let n = g.order() as ElementId;
    (0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)))
}

/// The unique prime p with |G| a power of p, if one exists.
pub fn is_p_group(g: &GroupTable) -> Option<u64> {
    let mut n = g.order() as u64;
    if n <= 1 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return if n == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of p dividing n.
fn p_part(mut n: u64, p: u64) -> u64 {
    let mut q = 1;
    while n.is_multiple_of(p) {
        q *= p;
        n /= p;
    }
    q
}

/// The p-core O_p(G): join of all normal p-subgroups.
fn p_core(g: &GroupTable, lattice: &SubgroupLattice, p: u64) -> ElementSet {
    let mut seed = ElementSet::from_members(g.order(), [0]);
    for s in lattice.normal_subgroups() {
        let o = s.order() as u64;
        if o > 1 && p_part(o, p) == o {
            seed.union_with(&s.members);
        }
    }
    generated_subgroup(g, &seed).expect("nonempty seed")
}

/// The Fitting subgroup: the join of all nilpotent normal subgroups,
/// computed as the product of the p-cores.
pub fn fitting(g: &GroupTable, lattice: &SubgroupLattice) -> ElementSet {
    let mut seed = ElementSet::from_members(g.order(), [0]);
    for p in prime_factors(g.order() as u64) {
        seed.union_with(&p_core(g, lattice, p));
    }
    generated_subgroup(g, &seed).expect("nonempty seed")
}

/// Nilpotency via normal Sylow subgroups, cross-checked against the
/// upper central series. A disagreement would mean a corrupted lattice,
/// so it is a hard error.
pub fn is_nilpotent(g: &GroupTable, lattice: &SubgroupLattice) -> bool {
    let by_sylow = prime_factors(g.order() as u64).into_iter().all(|p| {
        let target = p_part(g.order() as u64, p) as usize;
        let sylows: Vec<_> = lattice
            .subgroups()
            .iter()
            .filter(|s| s.order() == target)
            .collect();
        sylows.len() == 1 && sylows[0].is_normal
    });
    let by_series = is_nilpotent_by_central_series(g);
    assert_eq!(
        by_sylow,
        by_series,
        "nilpotency tests disagree on {}",
        g.name()
    );
    by_sylow
}

/// Upper central series termination test; lattice-free, usable on
/// extracted subgroup tables.
pub fn is_nilpotent_by_central_series(g: &GroupTable) -> bool {
    let n = g.order();
    let mut z = ElementSet::from_members(n, [0]);
    loop {
        // Next term: elements central modulo z.
        let mut next = ElementSet::empty(n);
        for x in 0..n as ElementId {
            if (0..n as ElementId).all(|h| z.contains(g.commutator(x, h))) {
                next.insert(x);
            }
        }
        if next.len() == n {
            return true;
        }
        if next.len() == z.len() {
            return false;
        }
        z = next;
    }
}

/// Derived series reaches the trivial subgroup.
pub fn is_solvable(g: &GroupTable) -> bool {
    let mut current = ElementSet::full(g.order());
    loop {
        let next = derived_of_subset(g, &current);
        if next.len() == 1 {
            return true;
        }
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

/// Commutator subgroup of a subgroup given as a member set.
fn derived_of_subset(g: &GroupTable, h: &ElementSet) -> ElementSet {
    let members = h.members();
    let mut seed = ElementSet::from_members(g.order(), [0]);
    for &a in &members {
        for &b in &members {
            seed.insert(g.commutator(a, b));
        }
    }
    generated_subgroup(g, &seed).expect("nonempty seed")
}

/// Every subgroup normal?
pub fn is_dedekind(lattice: &SubgroupLattice) -> bool {
    lattice.subgroups().iter().all(|s| s.is_normal)
}

/// Fit(G) cyclic and a Hall subgroup (order coprime to index).
pub fn is_cyclic_hall_fitting(g: &GroupTable, lattice: &SubgroupLattice) -> bool {
    let fit = fitting(g, lattice);
    let fo = fit.len();
    let cyclic = fit.iter().any(|x| g.order_of(x) == fo);
    cyclic && gcd(fo as u64, (g.order() / fo) as u64) == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimum number of generators.
///
/// p-groups use the Burnside basis theorem, log_p |G : Phi(G)|; abelian
/// groups use the p-rank maximum; anything else gets an exhaustive
/// search bounded by `max_order_for_search` and tuples of size 4.
pub fn min_generators(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    max_order_for_search: usize,
) -> Result<usize> {
    if g.order() == 1 {
        return Ok(0);
    }
    if let Some(p) = is_p_group(g) {
        let index = g.order() / lattice.frattini().len();
        let mut k = 0;
        let mut v = index as u64;
        while v > 1 {
            v /= p;
            k += 1;
        }
        return Ok(k);
    }
    if is_abelian(g) {
        // Max over primes p of the p-rank, read off the p-torsion count.
        let mut best = 1;
        for p in prime_factors(g.order() as u64) {
            let torsion = (0..g.order() as ElementId)
                .filter(|&x| g.pow(x, p as usize) == 0)
                .count() as u64;
            let mut rank = 0;
            let mut v = torsion;
            while v > 1 {
                v /= p;
                rank += 1;
            }
            best = best.max(rank);
        }
        return Ok(best);
    }
    if g.order() > max_order_for_search {
        return Err(Error::OrderBudgetExceeded {
            required: g.order(),
            budget: max_order_for_search,
        });
    }
    exhaustive_min_generators(g, 4).ok_or(Error::OrderBudgetExceeded {
        required: g.order(),
        budget: max_order_for_search,
    })
}

/// Smallest k <= cap such that some k elements generate G.
///
/// Breadth-first search over subgroup closures: level k holds every
/// subgroup generated by some irredundant k-tuple, so the first level
/// containing G is the answer. Tuples with redundant entries generate
/// the same subgroups as their irredundant subtuples, so nothing is
/// missed. Independent of the Burnside formula, so it doubles as its
/// cross-check.
pub fn exhaustive_min_generators(g: &GroupTable, cap: usize) -> Option<usize> {
    let n = g.order();
    if n == 1 {
        return Some(0);
    }
    let mut seen: std::collections::HashSet<ElementSet> = std::collections::HashSet::new();
    let mut frontier = vec![ElementSet::from_members(n, [0])];
    seen.insert(frontier[0].clone());
    for depth in 1..=cap {
        let mut next = Vec::new();
        for current in &frontier {
            for x in 0..n as ElementId {
                if current.contains(x) {
                    continue;
                }
                let mut seed = current.clone();
                seed.insert(x);
                let closed = generated_subgroup(g, &seed).expect("valid seed");
                if closed.len() == n {
                    return Some(depth);
                }
                if seen.insert(closed.clone()) {
                    next.push(closed);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    None
}

/// Full structure report for one group.
pub fn structure_report(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    min_gen_search_budget: usize,
) -> StructureReport {
    StructureReport {
        order: g.order(),
        is_abelian: is_abelian(g),
        is_nilpotent: is_nilpotent(g, lattice),
        is_solvable: is_solvable(g),
        is_dedekind: is_dedekind(lattice),
        is_p_group: is_p_group(g),
        center_size: center(g).len(),
        commutator_size: commutator_subgroup(g).len(),
        frattini_size: lattice.frattini().len(),
        fitting_size: fitting(g, lattice).len(),
        min_generators: min_generators(g, lattice, min_gen_search_budget).ok(),
    }
}

/// Isomorphism-invariant fingerprint; see `StructureProfile`.
pub fn structure_profile(g: &GroupTable, lattice: &SubgroupLattice) -> StructureProfile {
    let mut normalizer_profile: std::collections::HashMap<(usize, usize), u32> =
        std::collections::HashMap::new();
    for s in lattice.subgroups() {
        *normalizer_profile
            .entry((s.order(), lattice.normalizer_of(s.id).len()))
            .or_insert(0) += 1;
    }
    let mut normalizer_profile: Vec<_> = normalizer_profile
        .into_iter()
        .map(|((a, b), c)| (a, b, c))
        .collect();
    normalizer_profile.sort_unstable();

    StructureProfile {
        order: g.order(),
        is_abelian: is_abelian(g),
        is_nilpotent: is_nilpotent(g, lattice),
        order_histogram: g.order_histogram(),
        center_size: center(g).len(),
        commutator_size: commutator_subgroup(g).len(),
        frattini_size: lattice.frattini().len(),
        fitting_size: fitting(g, lattice).len(),
        conjugacy_classes: g.conjugacy_class_count(),
        normalizer_profile,
    }
}

/// Is x^p = e for all x (elementary abelian when combined with
/// abelianness and p-power order)?
pub fn has_exponent(g: &GroupTable, e: usize) -> bool {
    (0..g.order() as ElementId).all(|x| g.pow(x, e) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, GroupExpr};
    use crate::lattice::enumerate_subgroups;
    use crate::Budgets;

    fn b() -> Budgets {
        Budgets::default()
    }

    fn built(e: GroupExpr) -> (GroupTable, SubgroupLattice) {
        let g = build(&e, &b()).unwrap();
        let l = enumerate_subgroups(&g, &b()).unwrap();
        (g, l)
    }

    #[test]
    fn fitting_of_nilpotent_group_is_whole() {
        let (g, l) = built(GroupExpr::Dihedral(8));
        assert_eq!(fitting(&g, &l).len(), 8);
    }

    #[test]
    fn fitting_of_s3_is_c3() {
        let (g, l) = built(GroupExpr::Symmetric(3));
        // Oracle: join of nilpotent normal subgroups read from the lattice.
        let mut expect = ElementSet::from_members(6, [0]);
        for s in l.normal_subgroups() {
            if s.order() < 6 {
                let (t, _) = crate::lattice::subgroup_table(&g, &s.members, "sub").unwrap();
                if is_nilpotent_by_central_series(&t) {
                    expect.union_with(&s.members);
                }
            }
        }
        let expect = generated_subgroup(&g, &expect).unwrap();
        let fit = fitting(&g, &l);
        assert_eq!(fit, expect);
        assert_eq!(fit.len(), 3);
    }

    #[test]
    fn fitting_of_s4_is_v4() {
        let (g, l) = built(GroupExpr::Symmetric(4));
        let fit = fitting(&g, &l);
        assert_eq!(fit.len(), 4);
        assert!(fit.iter().all(|x| g.order_of(x) <= 2));
    }

    #[test]
    fn fitting_is_normal_nilpotent_and_contains_all_nilpotent_normals() {
        for e in [
            GroupExpr::Symmetric(4),
            GroupExpr::Dihedral(12),
            GroupExpr::Alternating(4),
            GroupExpr::Affine(3, 1),
        ] {
            let (g, l) = built(e);
            let fit = fitting(&g, &l);
            for x in 0..g.order() as ElementId {
                for h in fit.iter() {
                    assert!(fit.contains(g.conj(h, x)), "Fit not normal in {}", g.name());
                }
            }
            let (fit_table, _) = crate::lattice::subgroup_table(&g, &fit, "fit").unwrap();
            assert!(is_nilpotent_by_central_series(&fit_table));
            for s in l.normal_subgroups() {
                let (t, _) = crate::lattice::subgroup_table(&g, &s.members, "sub").unwrap();
                if is_nilpotent_by_central_series(&t) {
                    assert!(
                        s.members.is_subset_of(&fit),
                        "nilpotent normal subgroup outside Fit in {}",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn nilpotency_examples() {
        let (g, l) = built(GroupExpr::Dihedral(8));
        assert!(is_nilpotent(&g, &l));
        let (g, l) = built(GroupExpr::Symmetric(3));
        assert!(!is_nilpotent(&g, &l));
        let (g, l) = built(GroupExpr::Cyclic(6));
        assert!(is_nilpotent(&g, &l));
    }

    #[test]
    fn solvability_examples() {
        let (g, _) = built(GroupExpr::Symmetric(4));
        assert!(is_solvable(&g));
        let (g, _) = built(GroupExpr::Alternating(5));
        assert!(!is_solvable(&g));
        let (g, _) = built(GroupExpr::Abelian(vec![4, 2]));
        assert!(is_solvable(&g));
    }

    #[test]
    fn s4_derived_series_shape() {
        // S4 > A4 > V4 > 1 via the commutator oracle.
        let g = build(&GroupExpr::Symmetric(4), &b()).unwrap();
        let d1 = commutator_subgroup(&g);
        assert_eq!(d1.len(), 12);
        let d2 = derived_of_subset(&g, &d1);
        assert_eq!(d2.len(), 4);
        let d3 = derived_of_subset(&g, &d2);
        assert_eq!(d3.len(), 1);
    }

    #[test]
    fn dedekind_examples() {
        let (_, l) = built(GroupExpr::Dicyclic(8));
        assert!(is_dedekind(&l));
        let (_, l) = built(GroupExpr::Abelian(vec![6]));
        assert!(is_dedekind(&l));
        let (_, l) = built(GroupExpr::Dihedral(8));
        assert!(!is_dedekind(&l));
    }

    #[test]
    fn p_group_detection() {
        assert_eq!(
            is_p_group(&build(&GroupExpr::Abelian(vec![16]), &b()).unwrap()),
            Some(2)
        );
        assert_eq!(
            is_p_group(&build(&GroupExpr::Heisenberg(3), &b()).unwrap()),
            Some(3)
        );
        assert_eq!(
            is_p_group(&build(&GroupExpr::Alternating(4), &b()).unwrap()),
            None
        );
        assert_eq!(
            is_p_group(&build(&GroupExpr::Cyclic(1), &b()).unwrap()),
            None
        );
    }

    #[test]
    fn cyclic_hall_fitting_examples() {
        let (g, l) = built(GroupExpr::Symmetric(3));
        assert!(is_cyclic_hall_fitting(&g, &l));
        let (g, l) = built(GroupExpr::Dihedral(8));
        assert!(!is_cyclic_hall_fitting(&g, &l));
        let (g, l) = built(GroupExpr::Cyclic(6));
        assert!(is_cyclic_hall_fitting(&g, &l));
    }

    #[test]
    fn min_generator_counts() {
        let (g, l) = built(GroupExpr::Cyclic(8));
        assert_eq!(min_generators(&g, &l, 64).unwrap(), 1);
        let (g, l) = built(GroupExpr::Abelian(vec![2, 2, 2]));
        assert_eq!(min_generators(&g, &l, 64).unwrap(), 3);
        let (g, l) = built(GroupExpr::Dihedral(8));
        assert_eq!(min_generators(&g, &l, 64).unwrap(), 2);
        let (g, l) = built(GroupExpr::Symmetric(4));
        assert_eq!(min_generators(&g, &l, 64).unwrap(), 2);
    }

    #[test]
    fn burnside_formula_matches_exhaustive_search() {
        for e in [
            GroupExpr::Dihedral(16),
            GroupExpr::Dicyclic(8),
            GroupExpr::Heisenberg(3),
            GroupExpr::Abelian(vec![4, 2, 2]),
            GroupExpr::Modular2(16),
        ] {
            let (g, l) = built(e);
            let formula = min_generators(&g, &l, 64).unwrap();
            let search = exhaustive_min_generators(&g, 4).unwrap();
            assert_eq!(formula, search, "mismatch on {}", g.name());
        }
    }
}
