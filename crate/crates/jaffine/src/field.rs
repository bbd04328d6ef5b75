//! Arithmetic in GF(p^e) for p in {2, 3, 5, 7} and e <= 8.
//!
//! Elements are stored as a `u32` index encoding the polynomial-basis
//! coefficient vector in base p: the element sum(d_i * x^i) has index
//! sum(d_i * p^i).  Every field carries a fixed modulus from a built-in
//! table chosen so that the class of `x` itself generates the
//! multiplicative group; `g` is therefore always `x` (or a fixed primitive
//! root for e = 1), which makes all derived data reproducible.

use crate::error::{precondition, validation, Error, Result};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A field element, represented as its base-p digit index. Only meaningful
/// together with the `FiniteField` that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felt(pub u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Monic modulus coefficients c0..c_{e-1} (x^e = -(c0 + c1 x + ...)) per
/// (p, e); generated offline so that x mod (f, p) has order p^e - 1.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 1]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (5, 1, &[2]),
    (5, 2, &[2, 1]),
    (5, 3, &[2, 3, 0]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 5, &[2, 4, 0, 0, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0]),
    (5, 8, &[3, 2, 1, 0, 0, 0, 0, 0]),
    (7, 1, &[2]),
    (7, 2, &[3, 1]),
    (7, 3, &[2, 3, 0]),
    (7, 4, &[5, 3, 1, 0]),
    (7, 5, &[4, 1, 0, 0, 0]),
    (7, 6, &[5, 1, 3, 0, 0, 0]),
    (7, 7, &[2, 6, 0, 0, 0, 0, 0]),
    (7, 8, &[3, 1, 0, 0, 0, 0, 0, 0]),
];

/// Largest field size for which full exp/log tables are precomputed.
const LOG_TABLE_LIMIT: u64 = 1 << 20;

pub struct FiniteField {
    pub p: u32,
    pub e: u32,
    /// p^e
    pub size: u64,
    modulus: Vec<u32>,
    g: Felt,
    /// exp[i] = g^i for 0 <= i < 2*(size-1); empty above `LOG_TABLE_LIMIT`.
    exp: Vec<u32>,
    /// log[a.0] = discrete log of a, u32::MAX for 0; empty above the limit.
    log: Vec<u32>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "GF({}^{})", self.p, self.e)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for FiniteField {}

static FIELD_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Construct (or fetch the cached) GF(p^e). The modulus comes from the
/// built-in table; the designated generator has verified order p^e - 1.
pub fn make_field(p: u32, e: u32) -> Result<Arc<FiniteField>> {
    if let Some(f) = FIELD_CACHE.lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FiniteField::build(p, e)?);
    FIELD_CACHE
        .lock()
        .unwrap()
        .entry((p, e))
        .or_insert_with(|| f.clone());
    Ok(f)
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FiniteField {
    fn build(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return validation(format!("p not prime: {p}"));
        }
        if e < 1 {
            return validation("extension degree must be >= 1");
        }
        let modulus = MODULI
            .iter()
            .find(|&&(mp, me, _)| mp == p && me == e)
            .map(|&(_, _, c)| c.to_vec())
            .ok_or_else(|| {
                Error::Validation(format!(
                    "no modulus table entry for GF({p}^{e}); supported: p in {{2,3,5,7}}, e <= 8"
                ))
            })?;
        let size = (p as u64).pow(e);
        if size > 1 << 32 {
            return validation(format!("field size {size} exceeds 2^32"));
        }
        let g = if e == 1 {
            Felt((p - modulus[0]) % p)
        } else {
            Felt(p) // the class of x
        };
        let mut field = FiniteField {
            p,
            e,
            size,
            modulus,
            g,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if size <= LOG_TABLE_LIMIT {
            let n = (size - 1) as usize;
            let mut exp = Vec::with_capacity(2 * n);
            let mut log = vec![u32::MAX; size as usize];
            let mut cur = Felt::ONE;
            for i in 0..n {
                if log[cur.0 as usize] != u32::MAX {
                    return validation(format!(
                        "modulus table entry for GF({p}^{e}) is not primitive"
                    ));
                }
                log[cur.0 as usize] = i as u32;
                exp.push(cur.0);
                cur = field.mul_poly(cur, field.g);
            }
            if cur != Felt::ONE {
                return validation(format!("generator order check failed for GF({p}^{e})"));
            }
            exp.extend_from_within(0..n);
            field.exp = exp;
            field.log = log;
        } else {
            // No room for tables: verify the generator order via the prime
            // factorization of size - 1.
            let n = size - 1;
            let mut rem = n;
            let mut primes = Vec::new();
            let mut d = 2u64;
            while d * d <= rem {
                if rem % d == 0 {
                    primes.push(d);
                    while rem % d == 0 {
                        rem /= d;
                    }
                }
                d += 1;
            }
            if rem > 1 {
                primes.push(rem);
            }
            if field.pow_nolog(field.g, n) != Felt::ONE
                || primes.iter().any(|&q| field.pow_nolog(field.g, n / q) == Felt::ONE)
            {
                return validation(format!("generator order check failed for GF({p}^{e})"));
            }
        }
        Ok(field)
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }
    pub fn one(&self) -> Felt {
        Felt::ONE
    }
    /// The designated multiplicative generator.
    pub fn generator(&self) -> Felt {
        self.g
    }

    /// Checked element constructor from a digit index.
    pub fn elt(&self, index: u64) -> Result<Felt> {
        if index < self.size {
            Ok(Felt(index as u32))
        } else {
            validation(format!("element index {index} out of range for {self:?}"))
        }
    }

    /// Element from base-p digit coefficients (lowest degree first).
    pub fn from_digits(&self, digits: &[u32]) -> Felt {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            debug_assert!(d < self.p);
            v = v * self.p as u64 + d as u64;
        }
        Felt(v as u32)
    }

    pub fn digits(&self, a: Felt) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.size).map(|i| Felt(i as u32))
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.e {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * mult;
            x /= self.p;
            y /= self.p;
            mult = mult.wrapping_mul(self.p);
        }
        Felt(out)
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.e {
            let d = x % self.p;
            out += if d == 0 { 0 } else { self.p - d } * mult;
            x /= self.p;
            mult = mult.wrapping_mul(self.p);
        }
        Felt(out)
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    /// Schoolbook polynomial multiply + reduction; used to bootstrap the
    /// exp/log tables and as the fallback for table-less fields.
    fn mul_poly(&self, a: Felt, b: Felt) -> Felt {
        let e = self.e as usize;
        let p = self.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * e - 1];
        for (i, &ai) in da.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        for d in (e..2 * e - 1).rev() {
            let t = prod[d];
            if t != 0 {
                prod[d] = 0;
                for (i, &c) in self.modulus.iter().enumerate() {
                    prod[d - e + i] = (prod[d - e + i] + (p - t % p) * c % p * 1) % p;
                }
            }
        }
        self.from_digits(&prod[..e])
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        if !self.exp.is_empty() {
            let la = self.log[a.0 as usize] as usize;
            let lb = self.log[b.0 as usize] as usize;
            Felt(self.exp[la + lb])
        } else {
            self.mul_poly(a, b)
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return validation("division by zero");
        }
        if !self.exp.is_empty() {
            let la = self.log[a.0 as usize] as u64;
            Ok(Felt(self.exp[((self.size - 1 - la) % (self.size - 1)) as usize]))
        } else {
            Ok(self.pow_nolog(a, self.size - 2))
        }
    }

    fn pow_nolog(&self, a: Felt, mut k: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Felt, k: u64) -> Felt {
        if a.is_zero() {
            // 0^0 = 1 by the evaluation convention used throughout.
            return if k == 0 { Felt::ONE } else { Felt::ZERO };
        }
        if !self.exp.is_empty() {
            let la = self.log[a.0 as usize] as u64;
            let idx = (la % (self.size - 1)) * (k % (self.size - 1)) % (self.size - 1);
            Felt(self.exp[idx as usize])
        } else {
            self.pow_nolog(a, k % (self.size - 1))
        }
    }

    /// Discrete log of a nonzero element with respect to the generator.
    pub fn dlog(&self, a: Felt) -> Result<u64> {
        if a.is_zero() {
            return validation("discrete log of zero");
        }
        if !self.log.is_empty() {
            Ok(self.log[a.0 as usize] as u64)
        } else {
            validation(format!("no discrete-log table for {self:?}"))
        }
    }

    /// x^(p^f), by definition of the Frobenius tower.
    pub fn power_frobenius(&self, a: Felt, f: u32) -> Felt {
        let mut acc = a;
        for _ in 0..f {
            acc = self.pow(acc, self.p as u64);
        }
        acc
    }

    /// Relative trace onto GF(p^f): x + x^(p^f) + ... + x^(p^(f*(e/f-1))).
    /// Requires f | e; the result satisfies t^(p^f) = t.
    pub fn trace_map(&self, a: Felt, f: u32) -> Result<Felt> {
        if f == 0 || self.e % f != 0 {
            return validation(format!("trace target degree {f} does not divide {}", self.e));
        }
        let mut term = a;
        let mut acc = a;
        for _ in 1..self.e / f {
            term = self.power_frobenius(term, f);
            acc = self.add(acc, term);
        }
        Ok(acc)
    }

    /// Membership in the subfield GF(p^f): x^(p^f) = x.
    pub fn in_subfield(&self, a: Felt, f: u32) -> bool {
        self.power_frobenius(a, f) == a
    }

    /// g^((p^e-1)/n), of multiplicative order exactly n. Errors unless
    /// n | p^e - 1.
    pub fn unity_root(&self, n: u64) -> Result<Felt> {
        if n == 0 || (self.size - 1) % n != 0 {
            return precondition(format!(
                "{n} does not divide {} (group order of {self:?})",
                self.size - 1
            ));
        }
        Ok(self.pow(self.g, (self.size - 1) / n))
    }
}

/// Embedding of GF(p^f) into GF(p^e) (f | e), with the inverse partial map.
/// The image of the small field's `x` is chosen as the canonical root of the
/// small modulus inside the big field, so the embedding is a ring
/// homomorphism.
pub struct SubfieldMap {
    pub big: Arc<FiniteField>,
    pub small: Arc<FiniteField>,
    pub f: u32,
    emb: Vec<u32>,
    inv: HashMap<u32, u32>,
}

static SUBFIELD_CACHE: Lazy<Mutex<HashMap<(u32, u32, u32), Arc<SubfieldMap>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Build (or fetch) the embedding GF(p^f) -> GF(p^e).
pub fn subfield_map(big: &Arc<FiniteField>, f: u32) -> Result<Arc<SubfieldMap>> {
    if f == 0 || big.e % f != 0 {
        return validation(format!("subfield degree {f} does not divide {}", big.e));
    }
    let key = (big.p, big.e, f);
    if let Some(m) = SUBFIELD_CACHE.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let small = make_field(big.p, f)?;
    let sub_order = small.size - 1;
    let base_root = big.pow(big.generator(), (big.size - 1) / sub_order);
    // Find the power of base_root that is a root of the small field's
    // modulus, making small.x -> root a homomorphism.
    let mut root = None;
    for j in 0..sub_order {
        if num_gcd(j, sub_order) != 1 && !(sub_order == 1 && j == 0) {
            continue;
        }
        let cand = big.pow(base_root, if sub_order == 1 { 1 } else { j });
        // evaluate x^f + sum c_i x^i at cand
        let mut val = big.pow(cand, small.e as u64);
        let mut xp = Felt::ONE;
        for i in 0..small.e {
            let c = small.modulus[i as usize];
            let term = big.mul(Felt(c), xp); // c is already < p, a base-field digit
            val = big.add(val, term);
            xp = big.mul(xp, cand);
        }
        if val.is_zero() {
            root = Some(cand);
            break;
        }
        if sub_order == 1 {
            break;
        }
    }
    let root = root.ok_or_else(|| {
        Error::Validation(format!(
            "no embedding root for GF({}^{f}) in GF({}^{})",
            big.p, big.p, big.e
        ))
    })?;
    let mut emb = Vec::with_capacity(small.size as usize);
    let mut inv = HashMap::with_capacity(small.size as usize);
    for idx in 0..small.size {
        let digs = small.digits(Felt(idx as u32));
        let mut acc = Felt::ZERO;
        let mut xp = Felt::ONE;
        for d in digs {
            acc = big.add(acc, big.mul(Felt(d), xp));
            xp = big.mul(xp, root);
        }
        emb.push(acc.0);
        inv.insert(acc.0, idx as u32);
    }
    if inv.len() != small.size as usize {
        return validation("subfield embedding is not injective (table bug)");
    }
    let m = Arc::new(SubfieldMap {
        big: big.clone(),
        small,
        f,
        emb,
        inv,
    });
    SUBFIELD_CACHE.lock().unwrap().insert(key, m.clone());
    Ok(m)
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

impl SubfieldMap {
    pub fn embed(&self, a: Felt) -> Felt {
        Felt(self.emb[a.0 as usize])
    }
    /// Inverse of `embed`; None when the element is outside the subfield.
    pub fn project(&self, a: Felt) -> Option<Felt> {
        self.inv.get(&a.0).map(|&i| Felt(i))
    }
}
