use crate::error::{Error, Result};

/// GF(p^n) with dense add/mul tables.
///
/// Field elements are indexed by their coefficient vectors read as
/// base-p integers, constant coefficient least significant. The modulus
/// is the irreducible monic polynomial whose coefficient vector has the
/// smallest such encoding, and the generator is the smallest element of
/// multiplicative order p^n - 1. Everything is deterministic.
#[derive(Clone, Debug)]
pub struct FieldGF {
    pub p: u64,
    pub n: u32,
    /// Coefficients c_0..c_{n-1} of the monic modulus x^n + ... + c_0.
    pub modulus: Vec<u64>,
    pub generator: usize,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply two polynomials over GF(p) and reduce modulo the monic
/// modulus of degree n given by `modulus` (low coefficients).
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len();
    let mut prod = vec![0u64; 2 * n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce: x^n = -(c_{n-1} x^{n-1} + ... + c_0).
    for deg in (n..2 * n).rev() {
        let coeff = prod[deg];
        if coeff == 0 {
            continue;
        }
        prod[deg] = 0;
        for (k, &mk) in modulus.iter().enumerate() {
            let sub = (coeff * mk) % p;
            prod[deg - n + k] = (prod[deg - n + k] + p - sub) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn index_to_poly(mut idx: usize, n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for c in out.iter_mut() {
        *c = (idx as u64) % p;
        idx /= p as usize;
    }
    out
}

fn poly_to_index(poly: &[u64], p: u64) -> usize {
    poly.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Trial division by every lower-degree monic polynomial of degree at
/// most n/2.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let n = modulus.len();
    for d in 1..=n / 2 {
        // All monic divisors of degree d: x^d + (coefficients idx).
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let div_low = index_to_poly(idx, d, p);
            if divides(&div_low, modulus, p) {
                return false;
            }
        }
    }
    true
}

/// Does the monic polynomial x^d + div_low divide x^n + modulus?
fn divides(div_low: &[u64], modulus: &[u64], p: u64) -> bool {
    let d = div_low.len();
    let n = modulus.len();
    // Long division of x^n + modulus by x^d + div_low; track remainder.
    let mut rem = vec![0u64; n + 1];
    rem[..n].copy_from_slice(modulus);
    rem[n] = 1;
    for deg in (d..=n).rev() {
        let coeff = rem[deg];
        if coeff == 0 {
            continue;
        }
        rem[deg] = 0;
        for (k, &dk) in div_low.iter().enumerate() {
            let sub = (coeff * dk) % p;
            rem[deg - d + k] = (rem[deg - d + k] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Construct GF(p^n). `max_size` bounds p^n.
pub fn gf_field(p: u64, n: u32, max_size: usize) -> Result<FieldGF> {
    if !is_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::BadParameter(
            "field degree must be at least 1".into(),
        ));
    }
    let size = (p as usize)
        .checked_pow(n)
        .filter(|&s| s <= max_size)
        .ok_or(Error::OrderBudgetExceeded {
            required: usize::MAX,
            budget: max_size,
        })?;

    let modulus = if n == 1 {
        vec![0u64] // x itself; unused since reduction is plain mod p
    } else {
        let count = (p as usize).pow(n);
        (0..count)
            .map(|idx| index_to_poly(idx, n as usize, p))
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists")
    };

    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    for a in 0..size {
        let pa = index_to_poly(a, n as usize, p);
        for b in 0..size {
            let pb = index_to_poly(b, n as usize, p);
            let sum: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
            add[a * size + b] = poly_to_index(&sum, p) as u16;
            let prod = poly_mulmod(&pa, &pb, &modulus, p);
            mul[a * size + b] = poly_to_index(&prod, p) as u16;
        }
    }

    let mut field = FieldGF {
        p,
        n,
        modulus,
        generator: 0,
        size,
        add,
        mul,
    };
    field.generator = (1..size)
        .find(|&g| field.multiplicative_order(g) == size - 1)
        .expect("the multiplicative group of a finite field is cyclic");
    Ok(field)
}

impl FieldGF {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut acc = a;
        let mut k = 1;
        while acc != 1 {
            acc = self.mul(acc, a);
            k += 1;
            assert!(k <= self.size, "element order overflow");
        }
        k
    }
}
