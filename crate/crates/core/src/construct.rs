use std::fmt;

use crate::error::{Error, Result};
use crate::field::gf_field;
use crate::group::{direct_product, group_from_generators, table_from_fn, GroupTable, Permutation};
use crate::Budgets;

/// Automorphism action for `semidirect`: images of a generating subset
/// of the base group (by element index), plus the order of the adjoined
/// generator. The map extends to a unique automorphism or the build
/// fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionSpec {
    pub images: Vec<(u16, u16)>,
    pub adjoined_order: u32,
}

/// Expression tree naming a concrete finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u32),
    Abelian(Vec<u32>),
    /// Argument is the group order 2n.
    Dihedral(u32),
    /// Argument is the group order 4n; dicyclic(8) is Q8.
    Dicyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    /// Unitriangular 3x3 matrices over GF(p), odd p: order p^3, exponent p.
    Heisenberg(u32),
    /// Modular maximal-cyclic 2-group; argument is the order 2^n, n >= 4.
    Modular2(u32),
    /// GF(p^k)+ extended by a field generator acting by multiplication;
    /// order p^k(p^k - 1).
    Affine(u32, u32),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect(Box<GroupExpr>, ActionSpec),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupExpr::Abelian(ns) => {
                write!(f, "abelian(")?;
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, ")")
            }
            GroupExpr::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupExpr::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupExpr::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupExpr::Alternating(n) => write!(f, "alternating({n})"),
            GroupExpr::Heisenberg(p) => write!(f, "heisenberg({p})"),
            GroupExpr::Modular2(n) => write!(f, "modular2({n})"),
            GroupExpr::Affine(p, k) => write!(f, "affine({p},{k})"),
            GroupExpr::Product(a, b) => write!(f, "product({a},{b})"),
            GroupExpr::Semidirect(base, action) => {
                write!(f, "semidirect({base},[")?;
                for (i, (from, to)) in action.images.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{from}->{to}")?;
                }
                write!(f, ";{}])", action.adjoined_order)
            }
        }
    }
}

/// Evaluate an expression to its group table.
pub fn build(expr: &GroupExpr, budgets: &Budgets) -> Result<GroupTable> {
    let name = expr.to_string();
    match expr {
        GroupExpr::Cyclic(n) => {
            let n = require_at_least(*n, 1, "cyclic")? as usize;
            table_from_fn(name, n, budgets, |a, b| (a + b) % n)
        }
        GroupExpr::Abelian(factors) => {
            if factors.is_empty() {
                return Err(Error::BadParameter(
                    "abelian() needs at least one factor".into(),
                ));
            }
            let dims: Vec<usize> = factors
                .iter()
                .map(|&d| require_at_least(d, 1, "abelian").map(|v| v as usize))
                .collect::<Result<_>>()?;
            let n: usize = dims.iter().product();
            if n > budgets.max_order {
                return Err(Error::OrderBudgetExceeded {
                    required: n,
                    budget: budgets.max_order,
                });
            }
            // Mixed-radix tuples, last coordinate fastest.
            let dims2 = dims.clone();
            table_from_fn(name, n, budgets, move |a, b| {
                let mut out = 0;
                let (mut ra, mut rb) = (a, b);
                let mut stride = 1;
                for &d in dims2.iter().rev() {
                    let xa = ra % d;
                    let xb = rb % d;
                    ra /= d;
                    rb /= d;
                    out += ((xa + xb) % d) * stride;
                    stride *= d;
                }
                out
            })
        }
        GroupExpr::Dihedral(order) => {
            if order % 2 != 0 || *order < 2 {
                return Err(Error::BadParameter(format!(
                    "dihedral takes an even order >= 2, got {order}"
                )));
            }
            let half = (*order / 2) as usize;
            let base = build(&GroupExpr::Cyclic(*order / 2), budgets)?;
            let phi: Vec<u16> = (0..half).map(|i| ((half - i) % half) as u16).collect();
            semidirect_table(name, &base, &phi, 2, budgets)
        }
        GroupExpr::Dicyclic(order) => {
            if order % 4 != 0 || *order < 8 {
                return Err(Error::BadParameter(format!(
                    "dicyclic takes an order divisible by 4, at least 8, got {order}"
                )));
            }
            let n = *order as usize;
            let m = n / 2; // |<a>| = 2n in the order-4n group
            table_from_fn(name, n, budgets, move |x, y| {
                let (i, j) = (x / 2, x % 2);
                let (k, l) = (y / 2, y % 2);
                // a^i b^j * a^k b^l with b a b^-1 = a^-1 and b^2 = a^(m/2).
                if j == 0 {
                    ((i + k) % m) * 2 + l
                } else if l == 0 {
                    ((i + m - k % m) % m) * 2 + 1
                } else {
                    ((i + m - k % m + m / 2) % m) * 2
                }
            })
        }
        GroupExpr::Symmetric(n) => {
            let n = require_at_least(*n, 3, "symmetric")? as usize;
            let mut transposition: Vec<u16> = (0..n as u16).collect();
            transposition.swap(0, 1);
            let cycle: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
            let gens = vec![
                Permutation::from_images(transposition)?,
                Permutation::from_images(cycle)?,
            ];
            let mut g = group_from_generators(&gens, &name, budgets)?;
            g.set_name(name);
            Ok(g)
        }
        GroupExpr::Alternating(n) => {
            let n = require_at_least(*n, 3, "alternating")? as usize;
            let mut three_cycle: Vec<u16> = (0..n as u16).collect();
            three_cycle[0] = 1;
            three_cycle[1] = 2;
            three_cycle[2] = 0;
            let mut gens = vec![Permutation::from_images(three_cycle)?];
            if n > 3 {
                // An even big cycle: the n-cycle for odd n, else an
                // (n-1)-cycle fixing point 0.
                let big: Vec<u16> = if n % 2 == 1 {
                    (0..n as u16).map(|i| (i + 1) % n as u16).collect()
                } else {
                    (0..n as u16)
                        .map(|i| {
                            if i == 0 {
                                0
                            } else if i == n as u16 - 1 {
                                1
                            } else {
                                i + 1
                            }
                        })
                        .collect()
                };
                gens.push(Permutation::from_images(big)?);
            }
            let mut g = group_from_generators(&gens, &name, budgets)?;
            g.set_name(name);
            Ok(g)
        }
        GroupExpr::Heisenberg(p) => {
            let p = *p as usize;
            if !is_prime_usize(p) || p == 2 {
                return Err(Error::BadParameter(format!(
                    "heisenberg takes an odd prime, got {p}"
                )));
            }
            let n = p * p * p;
            table_from_fn(name, n, budgets, move |x, y| {
                let (a1, b1, c1) = (x / (p * p), (x / p) % p, x % p);
                let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
                let a = (a1 + a2) % p;
                let b = (b1 + b2) % p;
                let c = (c1 + c2 + a1 * b2) % p;
                a * p * p + b * p + c
            })
        }
        GroupExpr::Modular2(order) => {
            let n = *order as usize;
            if !n.is_power_of_two() || n < 16 {
                return Err(Error::BadParameter(format!(
                    "modular2 takes a power of two >= 16, got {n}"
                )));
            }
            let half = n / 2;
            let t = 1 + n / 4;
            let base = build(&GroupExpr::Cyclic(half as u32), budgets)?;
            let phi: Vec<u16> = (0..half).map(|i| ((i * t) % half) as u16).collect();
            semidirect_table(name, &base, &phi, 2, budgets)
        }
        GroupExpr::Affine(p, k) => {
            if !is_prime_usize(*p as usize) {
                return Err(Error::BadParameter(format!("{p} is not prime")));
            }
            let k = require_at_least(*k, 1, "affine")?;
            let field = gf_field(*p as u64, k, budgets.max_order)?;
            let q = field.size();
            let order = q * (q - 1);
            if order > budgets.max_order {
                return Err(Error::OrderBudgetExceeded {
                    required: order,
                    budget: budgets.max_order,
                });
            }
            // Powers of the field generator.
            let mut tpow = vec![1usize; q.max(2) - 1];
            for i in 1..tpow.len() {
                tpow[i] = field.mul(tpow[i - 1], field.generator);
            }
            let m = q - 1;
            table_from_fn(name, order, budgets, move |x, y| {
                let (h1, i1) = (x / m.max(1), x % m.max(1));
                let (h2, i2) = (y / m.max(1), y % m.max(1));
                let moved = field.mul(h2, tpow[i1]);
                let h = field.add(h1, moved);
                if m == 0 {
                    h
                } else {
                    h * m + (i1 + i2) % m
                }
            })
        }
        GroupExpr::Product(a, b) => {
            let ga = build(a, budgets)?;
            let gb = build(b, budgets)?;
            let mut g = direct_product(&ga, &gb, budgets)?;
            g.set_name(name);
            Ok(g)
        }
        GroupExpr::Semidirect(base_expr, action) => {
            let base = build(base_expr, budgets)?;
            let phi = extend_automorphism(&base, &action.images)?;
            if action.adjoined_order == 0 {
                return Err(Error::BadParameter(
                    "adjoined order must be positive".into(),
                ));
            }
            semidirect_table(name, &base, &phi, action.adjoined_order as usize, budgets)
        }
    }
}

fn require_at_least(v: u32, min: u32, who: &str) -> Result<u32> {
    if v < min {
        Err(Error::BadParameter(format!(
            "{who} takes an argument >= {min}, got {v}"
        )))
    } else {
        Ok(v)
    }
}

fn is_prime_usize(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Extend generator images to the full automorphism by breadth-first
/// word decomposition, then verify the result really is one.
fn extend_automorphism(base: &GroupTable, images: &[(u16, u16)]) -> Result<Vec<u16>> {
    let n = base.order();
    for &(from, to) in images {
        base.check_index(from)?;
        base.check_index(to)?;
    }
    let mut phi: Vec<Option<u16>> = vec![None; n];
    phi[0] = Some(0);
    let mut frontier = vec![0u16];
    let mut head = 0;
    while head < frontier.len() {
        let x = frontier[head];
        head += 1;
        for &(g, img) in images {
            let y = base.mul(x, g);
            if phi[y as usize].is_none() {
                let fy = base.mul(phi[x as usize].unwrap(), img);
                phi[y as usize] = Some(fy);
                frontier.push(y);
            }
        }
    }
    let phi: Vec<u16> = phi.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
        Error::BadParameter("action generators do not generate the base group".into())
    })?;

    let mut seen = vec![false; n];
    for &v in &phi {
        if seen[v as usize] {
            return Err(Error::BadParameter("action is not a bijection".into()));
        }
        seen[v as usize] = true;
    }
    for a in 0..n as u16 {
        for b in 0..n as u16 {
            if phi[base.mul(a, b) as usize] != base.mul(phi[a as usize], phi[b as usize]) {
                return Err(Error::BadParameter(
                    "action does not extend to an automorphism".into(),
                ));
            }
        }
    }
    Ok(phi)
}

/// Base extended by one generator b of order m acting by phi; requires
/// phi^m = identity.
fn semidirect_table(
    name: String,
    base: &GroupTable,
    phi: &[u16],
    m: usize,
    budgets: &Budgets,
) -> Result<GroupTable> {
    let k = base.order();
    // phi powers 0..m
    let mut powers: Vec<Vec<u16>> = vec![(0..k as u16).collect()];
    for i in 1..m {
        let prev = &powers[i - 1];
        powers.push((0..k).map(|x| phi[prev[x] as usize]).collect());
    }
    let full_turn: Vec<u16> = (0..k).map(|x| phi[powers[m - 1][x] as usize]).collect();
    if full_turn.iter().enumerate().any(|(i, &v)| i as u16 != v) {
        return Err(Error::BadParameter(format!(
            "action order does not divide the adjoined order {m}"
        )));
    }

    let order = k * m;
    if order > budgets.max_order {
        return Err(Error::OrderBudgetExceeded {
            required: order,
            budget: budgets.max_order,
        });
    }
    let base = base.clone();
    table_from_fn(name, order, budgets, move |x, y| {
        let (h1, i1) = (x / m, x % m);
        let (h2, i2) = (y / m, y % m);
        let h = base.mul(h1 as u16, powers[i1][h2]) as usize;
        h * m + (i1 + i2) % m
    })
}

/// Parse the expression grammar.
///
/// expr   := name "(" int ("," int)* ")"
///         | "product" "(" expr "," expr ")"
///         | "semidirect" "(" expr "," action ")"
/// action := "[" int "->" int ("," int "->" int)* ";" int "]"
///
/// Whitespace is insignificant. Errors carry the byte offset.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a group constructor name"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::SyntaxError {
                offset: start,
                message: "integer too large".into(),
            })
    }

    fn int_args(&mut self) -> Result<Vec<u32>> {
        self.eat(b'(')?;
        let mut args = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.int()?);
        }
        self.eat(b')')?;
        Ok(args)
    }

    fn action(&mut self) -> Result<ActionSpec> {
        self.eat(b'[')?;
        let mut images = Vec::new();
        loop {
            let from = self.int()?;
            self.skip_ws();
            if !self.bytes[self.pos..].starts_with(b"->") {
                return Err(self.err("expected '->'"));
            }
            self.pos += 2;
            let to = self.int()?;
            if from > u16::MAX as u32 || to > u16::MAX as u32 {
                return Err(self.err("action element index out of range"));
            }
            images.push((from as u16, to as u16));
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                }
                Some(b';') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected ',' or ';' in action")),
            }
        }
        let adjoined_order = self.int()?;
        self.eat(b']')?;
        Ok(ActionSpec {
            images,
            adjoined_order,
        })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let name_start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        match name.as_str() {
            "product" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            "semidirect" => {
                self.eat(b'(')?;
                let base = self.expr()?;
                self.eat(b',')?;
                let action = self.action()?;
                self.eat(b')')?;
                Ok(GroupExpr::Semidirect(Box::new(base), action))
            }
            _ => {
                let args = self.int_args()?;
                let arity_error = |expected: usize| Error::SyntaxError {
                    offset: name_start,
                    message: format!("{name} takes {expected} argument(s), got {}", args.len()),
                };
                match name.as_str() {
                    "abelian" => Ok(GroupExpr::Abelian(args)),
                    "cyclic" | "dihedral" | "dicyclic" | "symmetric" | "alternating"
                    | "heisenberg" | "modular2" => {
                        if args.len() != 1 {
                            return Err(arity_error(1));
                        }
                        Ok(match name.as_str() {
                            "cyclic" => GroupExpr::Cyclic(args[0]),
                            "dihedral" => GroupExpr::Dihedral(args[0]),
                            "dicyclic" => GroupExpr::Dicyclic(args[0]),
                            "symmetric" => GroupExpr::Symmetric(args[0]),
                            "alternating" => GroupExpr::Alternating(args[0]),
                            "heisenberg" => GroupExpr::Heisenberg(args[0]),
                            _ => GroupExpr::Modular2(args[0]),
                        })
                    }
                    "affine" => {
                        if args.len() != 2 {
                            return Err(arity_error(2));
                        }
                        Ok(GroupExpr::Affine(args[0], args[1]))
                    }
                    _ => Err(Error::SyntaxError {
                        offset: name_start,
                        message: format!("unknown group constructor '{name}'"),
                    }),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::center;
    use crate::invariants::has_exponent;

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn dihedral_8_shape() {
        let g = build(&GroupExpr::Dihedral(8), &b()).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!crate::invariants::is_abelian(&g));
        assert_eq!(center(&g).len(), 2);
    }

    #[test]
    fn heisenberg_3_has_exponent_3() {
        let g = build(&GroupExpr::Heisenberg(3), &b()).unwrap();
        assert_eq!(g.order(), 27);
        assert!(has_exponent(&g, 3));
        assert!(!crate::invariants::is_abelian(&g));
    }

    #[test]
    fn symmetric_4_has_trivial_center() {
        let g = build(&GroupExpr::Symmetric(4), &b()).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(center(&g).len(), 1);
    }

    #[test]
    fn alternating_orders() {
        assert_eq!(build(&GroupExpr::Alternating(4), &b()).unwrap().order(), 12);
        assert_eq!(build(&GroupExpr::Alternating(5), &b()).unwrap().order(), 60);
    }

    #[test]
    fn q8_shape() {
        let g = build(&GroupExpr::Dicyclic(8), &b()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 1), (4, 6)]);
    }

    #[test]
    fn q16_and_modular16_shapes() {
        let g = build(&GroupExpr::Dicyclic(16), &b()).unwrap();
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 1), (4, 10), (8, 4)]);
        let g = build(&GroupExpr::Modular2(16), &b()).unwrap();
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 3), (4, 4), (8, 8)]);
        assert_eq!(center(&g).len(), 4);
    }

    #[test]
    fn coprime_cyclic_product_is_cyclic() {
        let g = build(
            &GroupExpr::Product(
                Box::new(GroupExpr::Cyclic(2)),
                Box::new(GroupExpr::Cyclic(3)),
            ),
            &b(),
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|i| g.order_of(i) == 6));
    }

    #[test]
    fn product_center_multiplies() {
        let g = build(
            &GroupExpr::Product(
                Box::new(GroupExpr::Dihedral(8)),
                Box::new(GroupExpr::Cyclic(3)),
            ),
            &b(),
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(center(&g).len(), 6);
    }

    #[test]
    fn q8_times_q8_has_order_64() {
        let g = build(
            &GroupExpr::Product(
                Box::new(GroupExpr::Dicyclic(8)),
                Box::new(GroupExpr::Dicyclic(8)),
            ),
            &b(),
        )
        .unwrap();
        assert_eq!(g.order(), 64);
    }

    #[test]
    fn affine_orders_and_structure() {
        let g = build(&GroupExpr::Affine(2, 2), &b()).unwrap();
        assert_eq!(g.order(), 12);
        let g = build(&GroupExpr::Affine(2, 3), &b()).unwrap();
        assert_eq!(g.order(), 56);
        let g = build(&GroupExpr::Affine(3, 2), &b()).unwrap();
        assert_eq!(g.order(), 72);
    }

    #[test]
    fn semidirect_sd16() {
        // C8 extended by x -> x^3: the semidihedral group of order 16.
        let e = parse_group_expr("semidirect(cyclic(8),[1->3;2])").unwrap();
        let g = build(&e, &b()).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 5), (4, 6), (8, 4)]);
    }

    #[test]
    fn semidirect_rejects_non_automorphism() {
        // x -> x^2 is not injective on C8.
        let e = parse_group_expr("semidirect(cyclic(8),[1->2;2])").unwrap();
        assert!(matches!(build(&e, &b()), Err(Error::BadParameter(_))));
    }

    #[test]
    fn semidirect_rejects_wrong_adjoined_order() {
        // Inversion has order 2, which does not divide 3.
        let e = parse_group_expr("semidirect(cyclic(8),[1->7;3])").unwrap();
        assert!(matches!(build(&e, &b()), Err(Error::BadParameter(_))));
    }

    #[test]
    fn build_is_deterministic() {
        let e = parse_group_expr("product(dihedral(8),cyclic(3))").unwrap();
        let a = build(&e, &b()).unwrap();
        let c = build(&e, &b()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn parser_accepts_spec_examples() {
        assert_eq!(
            parse_group_expr("dihedral(8)").unwrap(),
            GroupExpr::Dihedral(8)
        );
        assert_eq!(
            parse_group_expr("product(dihedral(8), cyclic(3))").unwrap(),
            GroupExpr::Product(
                Box::new(GroupExpr::Dihedral(8)),
                Box::new(GroupExpr::Cyclic(3))
            )
        );
        assert_eq!(
            parse_group_expr("affine(2,3)").unwrap(),
            GroupExpr::Affine(2, 3)
        );
        assert_eq!(
            parse_group_expr("  abelian( 2 , 4 ) ").unwrap(),
            GroupExpr::Abelian(vec![2, 4])
        );
    }

    #[test]
    fn parser_reports_byte_offsets() {
        match parse_group_expr("dihedral(8") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 10),
            other => panic!("unexpected: {other:?}"),
        }
        match parse_group_expr("frobnicate(8)") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected: {other:?}"),
        }
        match parse_group_expr("product(cyclic(2) cyclic(3))") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 18),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn display_parse_roundtrip() {
        for text in [
            "cyclic(12)",
            "abelian(2,2,4)",
            "product(dihedral(8),cyclic(3))",
            "semidirect(cyclic(8),[1->3;2])",
            "semidirect(abelian(4,2),[2->2,1->5;2])",
            "affine(3,2)",
        ] {
            let e = parse_group_expr(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_group_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(build(&GroupExpr::Dihedral(7), &b()).is_err());
        assert!(build(&GroupExpr::Heisenberg(4), &b()).is_err());
        assert!(build(&GroupExpr::Heisenberg(2), &b()).is_err());
        assert!(build(&GroupExpr::Modular2(12), &b()).is_err());
        assert!(build(&GroupExpr::Affine(4, 1), &b()).is_err());
        assert!(build(&GroupExpr::Symmetric(2), &b()).is_err());
    }
}
