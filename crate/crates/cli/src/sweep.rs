//! The built-in group population: every construction expression with
//! order up to the sweep bound over the primitive families, a curated
//! list of semidirect extensions, and binary products of all of those,
//! deduplicated first by normalized expression and then by structure
//! profile.

use std::collections::HashSet;

use grpcover::error::Result;
use grpcover::{build, ActionSpec, Budgets, GroupExpr};

use crate::analysis::{analyze, GroupAnalysis};
use crate::parallel_map;

/// Integer partitions of n in descending-part order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = max.min(n);
        while part >= 1 {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All abelian isomorphism types of order n, as sorted prime-power
/// factor lists.
fn abelian_types(n: u64) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut types: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for lambda in partitions(e) {
            for existing in &types {
                let mut t = existing.clone();
                for part in &lambda {
                    t.push((p as u32).pow(*part));
                }
                next.push(t);
            }
        }
        types = next;
    }
    for t in &mut types {
        t.sort_unstable();
    }
    types.sort();
    types
}

/// Group order implied by an expression, without building it.
pub fn expr_order(e: &GroupExpr) -> u64 {
    match e {
        GroupExpr::Cyclic(n) => *n as u64,
        GroupExpr::Abelian(fs) => fs.iter().map(|&f| f as u64).product(),
        GroupExpr::Dihedral(m) | GroupExpr::Dicyclic(m) | GroupExpr::Modular2(m) => *m as u64,
        GroupExpr::Symmetric(n) => (1..=*n as u64).product(),
        GroupExpr::Alternating(n) => (1..=*n as u64).product::<u64>() / 2,
        GroupExpr::Heisenberg(p) => (*p as u64).pow(3),
        GroupExpr::Affine(p, k) => {
            let q = (*p as u64).pow(*k);
            q * (q - 1)
        }
        GroupExpr::Product(a, b) => expr_order(a) * expr_order(b),
        GroupExpr::Semidirect(base, action) => expr_order(base) * action.adjoined_order as u64,
    }
}

/// Normal form used only for expression-level deduplication: abelian
/// parts become their sorted prime-power decomposition, and product
/// operands are merged or sorted.
fn normalize(e: &GroupExpr) -> GroupExpr {
    fn as_abelian_factors(e: &GroupExpr) -> Option<Vec<u32>> {
        match e {
            GroupExpr::Cyclic(n) => Some(prime_power_parts(*n)),
            GroupExpr::Abelian(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(prime_power_parts(*f));
                }
                Some(out)
            }
            _ => None,
        }
    }
    fn prime_power_parts(n: u32) -> Vec<u32> {
        if n == 1 {
            return Vec::new();
        }
        factorize(n as u64)
            .into_iter()
            .map(|(p, e)| (p as u32).pow(e))
            .collect()
    }

    match e {
        GroupExpr::Product(a, b) => {
            let na = normalize(a);
            let nb = normalize(b);
            if let (Some(mut fa), Some(fb)) = (as_abelian_factors(&na), as_abelian_factors(&nb)) {
                fa.extend(fb);
                fa.sort_unstable();
                if fa.is_empty() {
                    fa.push(1);
                }
                return GroupExpr::Abelian(fa);
            }
            // Abelian factor second; otherwise sort by (order, text).
            let key = |x: &GroupExpr| (expr_order(x), x.to_string());
            if key(&na) <= key(&nb) {
                GroupExpr::Product(Box::new(na), Box::new(nb))
            } else {
                GroupExpr::Product(Box::new(nb), Box::new(na))
            }
        }
        other => {
            if let Some(mut fs) = as_abelian_factors(other) {
                fs.sort_unstable();
                if fs.is_empty() {
                    fs.push(1);
                }
                GroupExpr::Abelian(fs)
            } else {
                other.clone()
            }
        }
    }
}

/// Named extension presets reachable only through `semidirect`.
/// Descriptions are in the README; names stay canonical expressions so
/// every report line can be fed back through --construct.
fn curated_semidirects() -> Vec<GroupExpr> {
    let sd = |base: GroupExpr, images: Vec<(u16, u16)>, m: u32| {
        GroupExpr::Semidirect(
            Box::new(base),
            ActionSpec {
                images,
                adjoined_order: m,
            },
        )
    };
    vec![
        // order 16: semidihedral, C4:C4, (C2xC2):C4, central product D8*C4
        sd(GroupExpr::Cyclic(8), vec![(1, 3)], 2),
        sd(GroupExpr::Cyclic(4), vec![(1, 3)], 4),
        sd(GroupExpr::Abelian(vec![2, 2]), vec![(1, 2), (2, 1)], 4),
        sd(GroupExpr::Abelian(vec![4, 2]), vec![(2, 2), (1, 5)], 2),
        // order 32 extensions
        sd(GroupExpr::Cyclic(16), vec![(1, 7)], 2),
        sd(GroupExpr::Cyclic(16), vec![(1, 9)], 2),
        sd(GroupExpr::Cyclic(8), vec![(1, 3)], 4),
        sd(GroupExpr::Cyclic(8), vec![(1, 5)], 4),
        sd(GroupExpr::Cyclic(8), vec![(1, 7)], 4),
        sd(GroupExpr::Cyclic(4), vec![(1, 3)], 8),
        sd(GroupExpr::Abelian(vec![2, 2]), vec![(1, 2), (2, 1)], 8),
        sd(GroupExpr::Abelian(vec![4, 4]), vec![(1, 4), (4, 1)], 2),
        // order 64
        sd(GroupExpr::Cyclic(16), vec![(1, 7)], 4),
        sd(GroupExpr::Abelian(vec![4, 4]), vec![(1, 4), (4, 1)], 4),
        // odd p-groups: modular M27, M81, C9:C9
        sd(GroupExpr::Cyclic(9), vec![(1, 4)], 3),
        sd(GroupExpr::Cyclic(27), vec![(1, 10)], 3),
        sd(GroupExpr::Cyclic(9), vec![(1, 4)], 9),
        // metacyclic non-nilpotent examples
        sd(GroupExpr::Cyclic(7), vec![(1, 2)], 3),
        sd(GroupExpr::Cyclic(13), vec![(1, 3)], 3),
        sd(GroupExpr::Cyclic(11), vec![(1, 3)], 5),
        sd(GroupExpr::Cyclic(9), vec![(1, 8)], 2), // D18's sibling C9:C2 = D18 (dedup)
        sd(GroupExpr::Abelian(vec![3, 3]), vec![(1, 3), (3, 1)], 2), // (C3xC3):C2 swap
        sd(GroupExpr::Abelian(vec![3, 3]), vec![(1, 2), (3, 6)], 2), // elementwise inversion -> gen. dihedral
        sd(GroupExpr::Abelian(vec![5, 5]), vec![(1, 5), (5, 1)], 2),
        sd(GroupExpr::Abelian(vec![2, 2]), vec![(1, 2), (2, 3)], 3), // A4 again (dedup)
    ]
}

/// Primitive expressions with order <= max_order.
fn primitive_exprs(max_order: u64) -> Vec<GroupExpr> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for t in abelian_types(n) {
            out.push(GroupExpr::Abelian(t));
        }
    }
    let mut m = 6;
    while m <= max_order {
        out.push(GroupExpr::Dihedral(m as u32));
        m += 2;
    }
    let mut m = 8;
    while m <= max_order {
        out.push(GroupExpr::Dicyclic(m as u32));
        m += 4;
    }
    for n in 3.. {
        if (1..=n as u64).product::<u64>() > max_order {
            break;
        }
        out.push(GroupExpr::Symmetric(n));
    }
    for n in 3.. {
        if (1..=n as u64).product::<u64>() / 2 > max_order {
            break;
        }
        out.push(GroupExpr::Alternating(n));
    }
    for p in [3u32, 5, 7] {
        if (p as u64).pow(3) <= max_order {
            out.push(GroupExpr::Heisenberg(p));
        }
    }
    let mut m = 16;
    while m <= max_order {
        out.push(GroupExpr::Modular2(m as u32));
        m *= 2;
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        for k in 1..=4 {
            let q = (p as u64).pow(k);
            if q * (q - 1) <= max_order && q > 1 {
                out.push(GroupExpr::Affine(p, k));
            }
        }
    }
    for e in curated_semidirects() {
        if expr_order(&e) <= max_order {
            out.push(e);
        }
    }
    out
}

/// Preference order when several expressions describe the same group:
/// profile deduplication keeps the first, so classical names win.
fn kind_rank(e: &GroupExpr) -> u8 {
    match e {
        GroupExpr::Cyclic(_) | GroupExpr::Abelian(_) => 0,
        GroupExpr::Symmetric(_) => 1,
        GroupExpr::Alternating(_) => 2,
        GroupExpr::Dihedral(_) => 3,
        GroupExpr::Dicyclic(_) => 4,
        GroupExpr::Heisenberg(_) => 5,
        GroupExpr::Modular2(_) => 6,
        GroupExpr::Affine(_, _) => 7,
        GroupExpr::Semidirect(_, _) => 8,
        GroupExpr::Product(_, _) => 9,
    }
}

/// The full built-in expression list: primitives and binary products,
/// deduplicated by normal form, sorted by (order, kind, text).
pub fn builtin_exprs(max_order: u64) -> Vec<GroupExpr> {
    let primitives = primitive_exprs(max_order);
    let mut seen: HashSet<String> = HashSet::new();
    let mut out: Vec<GroupExpr> = Vec::new();
    let mut push = |e: GroupExpr, out: &mut Vec<GroupExpr>| {
        let key = normalize(&e).to_string();
        if seen.insert(key) {
            out.push(e);
        }
    };
    for e in &primitives {
        push(e.clone(), &mut out);
    }
    for (i, a) in primitives.iter().enumerate() {
        if expr_order(a) < 2 {
            continue;
        }
        for b in &primitives[i..] {
            if expr_order(b) < 2 {
                continue;
            }
            if expr_order(a) * expr_order(b) <= max_order {
                push(
                    GroupExpr::Product(Box::new(a.clone()), Box::new(b.clone())),
                    &mut out,
                );
            }
        }
    }
    out.sort_by_key(|e| (expr_order(e), kind_rank(e), e.to_string()));
    out
}

/// Build and analyze the whole sweep, deduplicating by structure
/// profile (first expression in (order, text) order wins). The result
/// is sorted by (order, name) and independent of `jobs`.
pub fn build_sweep(max_order: u64, budgets: &Budgets, jobs: usize) -> Result<Vec<GroupAnalysis>> {
    let exprs = builtin_exprs(max_order);
    let analyses: Vec<Result<GroupAnalysis>> = parallel_map(exprs, jobs, |expr| {
        let table = build(&expr, budgets)?;
        analyze(table, expr.to_string(), budgets)
    });
    let mut seen_profiles = HashSet::new();
    let mut out = Vec::new();
    for a in analyses {
        let a = a?;
        if seen_profiles.insert(a.profile.clone()) {
            out.push(a);
        }
    }
    out.sort_by(|x, y| (x.order(), &x.name).cmp(&(y.order(), &y.name)));
    Ok(out)
}
