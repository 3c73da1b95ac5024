//! Arithmetic in `F_{p^m}` over a power basis.
//!
//! Elements are stored packed: the coordinate vector `(c_0, …, c_{m-1})` with
//! respect to `1, α, …, α^{m-1}` becomes the integer `Σ c_i p^i`, where `α` is a
//! root of the modulus. Comparing packed values is the same as comparing the
//! coordinate tuples `(c_{m-1}, …, c_0)` lexicographically, which is the order
//! used to pick both the modulus and the generator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 32;

/// Default cap on `q` for field construction and brute-force enumeration.
pub const DEFAULT_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    /// Largest `q` that `Field::new` accepts.
    pub cap: u64,
    /// Discrete-log tables are built only when `q` is at most this value.
    pub log_table_cap: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            log_table_cap: DEFAULT_CAP,
        }
    }
}

/// An element of some `F_{p^m}`, packed as described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn from_packed(v: u32) -> Self {
        Elem(v)
    }

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

type Coords = [u32; MAX_DEGREE];

struct LogTables {
    /// `exp[k]` is `g^k` packed, `0 ≤ k < q-1`.
    exp: Vec<u32>,
    /// `log[x]` is the discrete log of packed `x`; entry 0 is unused.
    log: Vec<u32>,
}

/// A finite field `F_q`, `q = p^m`, with a deterministic modulus and generator.
///
/// Immutable once built; share it by reference or `Arc` across workers.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Low coefficients `c_0..c_{m-1}` of the monic modulus.
    modulus: Vec<u32>,
    generator: Elem,
    tables: Option<LogTables>,
    /// `Tr(α^i)` for the basis elements, as residues mod p.
    basis_trace: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl Field {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_config(p, m, FieldConfig::default())
    }

    pub fn with_config(p: u64, m: u32, config: FieldConfig) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = match arith::checked_pow(p, m) {
            Some(q) if q <= config.cap && q <= u32::MAX as u64 && (m as usize) <= MAX_DEGREE => q,
            other => {
                return Err(Error::CapExceeded {
                    what: "field size",
                    size: other.map(u128::from).unwrap_or(u128::MAX),
                    cap: config.cap,
                })
            }
        };

        let mut field = Field {
            p: p as u32,
            m,
            q: q as u32,
            modulus: Vec::new(),
            generator: Elem::ONE,
            tables: None,
            basis_trace: Vec::new(),
        };
        field.modulus = field.smallest_irreducible();
        field.generator = field.smallest_primitive();
        if q <= config.log_table_cap {
            field.tables = Some(field.build_tables());
        }
        field.basis_trace = (0..m)
            .map(|i| field.trace_by_definition(Elem(p.pow(i) as u32)))
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Coefficients `c_0..c_m` of the monic modulus, lowest degree first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut v = self.modulus.clone();
        v.push(1);
        v
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// All elements in enumeration order: `0, g^0, g^1, …, g^{q-2}`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain((0..self.q as u64 - 1).map(move |k| self.gen_pow(k)))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q as u64 - 1).map(move |k| self.gen_pow(k))
    }

    pub fn coords(&self, x: Elem) -> Vec<u32> {
        self.unpack(x)[..self.m as usize].to_vec()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() > self.m as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::BadElement(format!("{coords:?}")));
        }
        let mut c = [0u32; MAX_DEGREE];
        c[..coords.len()].copy_from_slice(coords);
        Ok(self.pack(&c))
    }

    /// The image of the integer `k` in the prime field.
    pub fn from_int(&self, k: u64) -> Elem {
        Elem((k % self.p as u64) as u32)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    fn unpack(&self, x: Elem) -> Coords {
        let mut c = [0u32; MAX_DEGREE];
        let mut v = x.0;
        for slot in c.iter_mut().take(self.m as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
        c
    }

    fn pack(&self, c: &Coords) -> Elem {
        let mut v = 0u32;
        for i in (0..self.m as usize).rev() {
            v = v * self.p + c[i];
        }
        Elem(v)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut c = self.unpack(a);
        for d in c.iter_mut().take(self.m as usize) {
            *d = (self.p - *d) % self.p;
        }
        self.pack(&c)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                Elem(t.exp[(s % (self.q as u64 - 1)) as usize])
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Product by polynomial multiplication and reduction by the modulus.
    /// Independent of the log tables.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        let m = self.m as usize;
        let p = self.p as u64;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mk) in self.modulus.iter().enumerate() {
                prod[d - m + k] = (prod[d - m + k] + (p - c) * mk as u64) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..m {
            out[i] = prod[i] as u32;
        }
        self.pack(&out)
    }

    fn pow_schoolbook(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let order = self.q as u64 - 1;
        match &self.tables {
            Some(t) => {
                let k = (t.log[x.0 as usize] as u128 * e as u128) % order as u128;
                Elem(t.exp[k as usize])
            }
            None => self.pow_schoolbook(x, e % order),
        }
    }

    /// `x^e` for a signed exponent; negative exponents need `x ≠ 0`.
    pub fn pow_signed(&self, x: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            return Ok(self.pow(x, e as u64));
        }
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let order = self.q as i128 - 1;
        let k = (e as i128).rem_euclid(order) as u64;
        Ok(self.pow(x, k))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        self.pow_signed(x, -1)
    }

    /// `g^k` for the fixed generator.
    pub fn gen_pow(&self, k: u64) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.exp[(k % (self.q as u64 - 1)) as usize]),
            None => self.pow_schoolbook(self.generator, k % (self.q as u64 - 1)),
        }
    }

    /// Discrete log base `g`, when the tables exist and `x ≠ 0`.
    pub fn log(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[x.0 as usize] as u64)
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        let e = arith::mod_pow(self.p as u64, k as u64, self.q as u64 - 1);
        // x^{p^k} with p^k ≡ 0 is impossible since gcd(p, q-1) = 1, but
        // q - 1 = 1 (q = 2) makes every residue 0.
        if e == 0 {
            return x;
        }
        self.pow(x, e)
    }

    /// Absolute trace `Tr_{q/p}(x)` as a residue in `[0, p)`.
    pub fn trace(&self, x: Elem) -> u32 {
        let mut v = x.0;
        let mut t = 0u64;
        for &bt in &self.basis_trace {
            t += (v % self.p) as u64 * bt as u64;
            v /= self.p;
        }
        (t % self.p as u64) as u32
    }

    /// `Σ_{i<m} x^{p^i}`, computed directly from the definition.
    pub fn trace_by_definition(&self, x: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow_schoolbook(y, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace left the prime field");
        acc.0
    }

    /// Parses `0`, a decimal integer, `g` or `g^k` (k may be negative).
    pub fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::BadElement(s.to_string());
        if let Some(rest) = s.strip_prefix('g') {
            let rest = rest.trim_start();
            if rest.is_empty() {
                return Ok(self.generator);
            }
            let k: i64 = rest
                .strip_prefix('^')
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())?;
            return self.pow_signed(self.generator, k);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut r = 0u64;
        for b in s.bytes() {
            r = (r * 10 + (b - b'0') as u64) % self.p as u64;
        }
        Ok(self.from_int(r))
    }

    /// Renders `x` as `0` or `g^k` (falls back to coordinates without tables).
    pub fn format_elem(&self, x: Elem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        match self.log(x) {
            Some(k) => format!("g^{k}"),
            None => self.format_coords(x),
        }
    }

    pub fn format_coords(&self, x: Elem) -> String {
        let c = self.coords(x);
        let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// The modulus written as a polynomial in `x`, highest degree first.
    pub fn format_modulus(&self) -> String {
        let mut parts = Vec::new();
        let coeffs = self.modulus();
        for (deg, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "x".into(),
                d => format!("x^{d}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (c, false) => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    fn smallest_irreducible(&self) -> Vec<u32> {
        let m = self.m as usize;
        let count = (self.p as u64).pow(self.m);
        for idx in 0..count {
            let mut tail = Vec::with_capacity(m);
            let mut v = idx;
            for _ in 0..m {
                tail.push((v % self.p as u64) as u32);
                v /= self.p as u64;
            }
            let mut full = tail.clone();
            full.push(1);
            if is_irreducible(&full, self.p) {
                return tail;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    fn smallest_primitive(&self) -> Elem {
        let order = self.q as u64 - 1;
        let primes: Vec<u64> = arith::factorize(order).iter().map(|&(l, _)| l).collect();
        (1..self.q)
            .map(Elem)
            .find(|&x| primes.iter().all(|&l| self.pow_schoolbook(x, order / l) != Elem::ONE))
            .expect("the multiplicative group is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = self.q as usize - 1;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.q as usize];
        let g = self.unpack(self.generator);
        let mut x = Elem::ONE;
        for k in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = k as u32;
            x = self.mul_by_sparse(x, &g);
        }
        debug_assert_eq!(x, Elem::ONE);
        LogTables { exp, log }
    }

    /// `x · y` where `y` usually has few nonzero low coordinates.
    fn mul_by_sparse(&self, x: Elem, y: &Coords) -> Elem {
        let m = self.m as usize;
        let p = self.p;
        let mut shifted = self.unpack(x);
        let mut acc = [0u32; MAX_DEGREE];
        let top = (0..m).rev().find(|&i| y[i] != 0).unwrap_or(0);
        for (i, &yi) in y.iter().enumerate().take(top + 1) {
            if yi != 0 {
                for k in 0..m {
                    acc[k] = (acc[k] + yi * shifted[k]) % p;
                }
            }
            if i < top {
                // shifted ← shifted · α
                let carry = shifted[m - 1];
                for k in (1..m).rev() {
                    shifted[k] = shifted[k - 1];
                }
                shifted[0] = 0;
                if carry != 0 {
                    for (s, &c) in shifted.iter_mut().zip(&self.modulus[..m]) {
                        *s = (*s + (p - carry) * c) % p;
                    }
                }
            }
        }
        self.pack(&acc)
    }
}

/// Irreducibility of a monic polynomial (coefficients lowest first) over `Z_p`
/// by trial division against every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                divisor.push((v % p as u64) as u32);
                v /= p as u64;
            }
            divisor.push(1);
            if remainder_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r: Vec<u32> = num.to_vec();
    let d = monic_div.len() - 1;
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (k, &dk) in monic_div.iter().enumerate() {
            r[i - d + k] = (r[i - d + k] + (p - c) * dk) % p;
        }
    }
    r[..d].iter().all(|&c| c == 0)
}

/// The tower `F_{q^m} / F_q` inside a field of characteristic `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldTower {
    base_q: u64,
    ext_m: u32,
}

impl SubfieldTower {
    pub fn new(base_q: u64, ext_m: u32) -> Result<Self> {
        if arith::prime_power(base_q).is_none() {
            return Err(Error::Tower(format!("{base_q} is not a prime power")));
        }
        if ext_m == 0 {
            return Err(Error::Tower("extension degree must be at least 1".into()));
        }
        Ok(Self { base_q, ext_m })
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    pub fn ext_m(&self) -> u32 {
        self.ext_m
    }

    /// `(p, k)` with `base_q = p^k`.
    pub fn base_parts(&self) -> (u64, u32) {
        arith::prime_power(self.base_q).expect("checked at construction")
    }

    /// Builds the big field `F_{q^m}` for this tower.
    pub fn big_field(&self, config: FieldConfig) -> Result<Field> {
        let (p, k) = self.base_parts();
        let m = k.checked_mul(self.ext_m).ok_or(Error::CapExceeded {
            what: "extension degree",
            size: u128::MAX,
            cap: config.cap,
        })?;
        Field::with_config(p, m, config)
    }

    /// Checks that `field` is the big field of this tower.
    pub fn check(&self, field: &Field) -> Result<()> {
        let (p, k) = self.base_parts();
        if field.p() != p || field.m() != k * self.ext_m {
            return Err(Error::Tower(format!(
                "field F_{}^{} is not F_({})^{}",
                field.p(),
                field.m(),
                self.base_q,
                self.ext_m
            )));
        }
        Ok(())
    }

    /// `Tr_{q^m/q}(x) = Σ_{i<m} x^{q^i}`, an element of the subfield.
    pub fn trace(&self, field: &Field, x: Elem) -> Result<Elem> {
        self.check(field)?;
        let (_, k) = self.base_parts();
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.ext_m {
            acc = field.add(acc, y);
            y = field.frobenius(y, k);
        }
        Ok(acc)
    }

    /// The subfield `F_q` as elements of the big field: `0` and the powers of
    /// `g^{(q^m-1)/(q-1)}`.
    pub fn base_elements(&self, field: &Field) -> Result<Vec<Elem>> {
        self.check(field)?;
        let step = (field.q() - 1) / (self.base_q - 1);
        let mut out = vec![Elem::ZERO];
        out.extend((0..self.base_q - 1).map(|j| field.gen_pow(j * step)));
        Ok(out)
    }

    pub fn in_base(&self, field: &Field, x: Elem) -> bool {
        let (_, k) = self.base_parts();
        field.frobenius(x, k) == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f27_basics() {
        let f = Field::new(3, 3).unwrap();
        assert_eq!(f.q(), 27);
        assert_eq!(f.pow(f.generator(), 26), Elem::ONE);
        assert_eq!(f.parse_element("g^0").unwrap(), Elem::ONE);
        assert_eq!(f.parse_element("g").unwrap(), f.generator());
        assert_eq!(f.parse_element("0").unwrap(), Elem::ZERO);
        assert_eq!(f.parse_element("5").unwrap(), f.from_int(2));
        assert_eq!(f.trace(Elem::ZERO), 0);
        assert_eq!(f.trace(Elem::ONE), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Field::new(2, 23).unwrap_err(), Error::CapExceeded { .. }));
    }

    #[test]
    fn f16_modulus_is_x4_x_1() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.modulus(), vec![1, 1, 0, 0, 1]);
        assert_eq!(f.format_modulus(), "x^4 + x + 1");
    }

    #[test]
    fn element_literals() {
        let f = Field::new(2, 8).unwrap();
        assert_eq!(f.parse_element("g^-1").unwrap(), f.inv(f.generator()).unwrap());
        assert_eq!(f.parse_element("g^255").unwrap(), Elem::ONE);
        assert_eq!(f.parse_element("3").unwrap(), Elem::ONE);
        assert!(f.parse_element("h^2").is_err());
        assert!(f.parse_element("g^").is_err());
        assert!(f.parse_element("").is_err());
        assert_eq!(f.inv(Elem::ZERO).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn tables_match_schoolbook_without_tables() {
        let cfg = FieldConfig {
            log_table_cap: 0,
            ..FieldConfig::default()
        };
        let bare = Field::with_config(3, 3, cfg).unwrap();
        let full = Field::new(3, 3).unwrap();
        assert!(!bare.has_log_tables());
        assert_eq!(bare.generator(), full.generator());
        for a in full.elements() {
            for b in full.elements() {
                assert_eq!(bare.mul(a, b), full.mul(a, b));
            }
            assert_eq!(bare.pow(a, 13), full.pow(a, 13));
            assert_eq!(bare.trace(a), full.trace(a));
        }
        assert_eq!(bare.format_elem(bare.generator()), "[0,1,0]");
    }

    #[test]
    fn prime_field_degree_one() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.generator(), f.from_int(2));
        for x in f.elements() {
            assert_eq!(f.trace(x), x.packed());
        }
    }

    #[test]
    fn tower_checks() {
        let t = SubfieldTower::new(16, 2).unwrap();
        let big = t.big_field(FieldConfig::default()).unwrap();
        assert_eq!(big.q(), 256);
        let base = t.base_elements(&big).unwrap();
        assert_eq!(base.len(), 16);
        assert!(base.iter().all(|&c| t.in_base(&big, c)));
        let f27 = Field::new(3, 3).unwrap();
        assert!(t.trace(&f27, Elem::ONE).is_err());
        assert!(SubfieldTower::new(12, 2).is_err());
    }
}
