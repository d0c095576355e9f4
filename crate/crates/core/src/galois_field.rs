//! Small finite fields `GF(p^r)` with an explicit irreducible modulus.
//!
//! Elements are stored packed: the coefficient vector `(c_{r-1}, ..., c_0)`
//! of the residue class `c_{r-1} x^{r-1} + ... + c_0` is read as the base-`p`
//! integer `c_{r-1} p^{r-1} + ... + c_0`. Packing makes the natural integer
//! order coincide with the lexicographic order on coefficient tuples, so
//! enumeration order is reproducible and zero always comes first.
//!
//! Multiplication goes through discrete log tables built once per field;
//! addition is XOR in characteristic 2 and a digit-wise (or tabulated) sum
//! otherwise.

use std::fmt;

use thiserror::Error;

/// Largest field order we build tables for.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    CompositeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds {MAX_ORDER}")]
    TooLarge { p: u32, r: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("malformed field spec `{0}`")]
    Malformed(String),
}

/// A field element, packed as a base-`p` integer. Only meaningful together
/// with the [`GaloisField`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed value in `0..q`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

/// `GF(p^r)` together with its lookup tables.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length `r + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaloisField({})", self.spec_string())
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^r` with `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

// Polynomial helpers over GF(p), low coefficient first, used only while
// choosing the modulus and building tables.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let dm = m.len() - 1;
    while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p - (lead * mc) % p) % p;
            }
        }
        a.pop();
        poly_trim(&mut a);
    }
    a
}

fn monic_of_degree(digits: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    let mut d = digits;
    for _ in 0..deg {
        v.push(d % p);
        d /= p;
    }
    v.push(1);
    v
}

fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for digits in 0..p.pow(d) {
            let g = monic_of_degree(digits, d, p);
            let rem = poly_rem(f, &g, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds `GF(p^r)` with the lexicographically smallest monic irreducible
    /// modulus of degree `r`, ordering candidates by their packed
    /// lower coefficients `(c_{r-1}, ..., c_0)`.
    pub fn new(p: u32, r: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(r).filter(|&q| q <= MAX_ORDER as u64);
        let q = q.ok_or(FieldError::TooLarge { p, r })? as u32;
        let modulus = (0..q)
            .map(|digits| monic_of_degree(digits, r, p))
            .find(|f| is_irreducible_mod_p(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self::with_modulus(p, r, modulus))
    }

    /// Builds the field for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p as u32, r)
    }

    fn with_modulus(p: u32, r: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(r);
        let mul_slow = |a: u32, b: u32| -> u32 {
            let av = unpack(a, p, r);
            let bv = unpack(b, p, r);
            let mut prod = vec![0u32; (2 * r - 1) as usize];
            for (i, &x) in av.iter().enumerate() {
                for (j, &y) in bv.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let rem = poly_rem(&prod, &modulus, p);
            pack(&rem, p)
        };
        let order_of = |g: u32| -> u32 {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = mul_slow(x, g);
                k += 1;
            }
            k
        };
        let generator = (1..q)
            .find(|&g| order_of(g) == q - 1)
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mul_slow(x, generator);
        }
        let add_digits = |a: u32, b: u32| -> u32 {
            if p == 2 {
                return a ^ b;
            }
            let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
            for _ in 0..r {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let add_table = (p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            t
        });
        let neg_table = (0..q)
            .map(|a| {
                let digits = unpack(a, p, r);
                pack(&digits.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
            })
            .collect();
        GaloisField {
            p,
            r,
            q,
            modulus,
            exp,
            log,
            add_table,
            neg_table,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Fe(t[(a.0 * self.q + b.0) as usize] as u32),
            None => {
                let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
                for _ in 0..self.r {
                    out += ((x % self.p + y % self.p) % self.p) * place;
                    x /= self.p;
                    y /= self.p;
                    place *= self.p;
                }
                Fe(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((n - l) % n) as usize]))
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if a.is_zero() {
            assert!(e >= 0, "zero has no inverse");
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        Fe(self.exp[(l * e).rem_euclid(n) as usize])
    }

    /// Image of an integer under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        Fe(self.exp[1 % self.exp.len()])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as i64)
    }

    /// All `q` elements, zero first, in lexicographic coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.q).map(Fe)
    }

    /// Element with packed value `index`.
    pub fn element(&self, index: u32) -> Fe {
        assert!(
            index < self.q,
            "index {index} out of range for GF({})",
            self.q
        );
        Fe(index)
    }

    /// Elements `c` with `c * x^0 + ...` ranging over an `F_p` basis: the
    /// monomials `1, x, ..., x^{r-1}`.
    pub fn prime_field_basis(&self) -> Vec<Fe> {
        (0..self.r).map(|i| Fe(self.p.pow(i))).collect()
    }

    /// Coefficients `(c_0, ..., c_{r-1})`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        unpack(a.0, self.p, self.r)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        assert!(coeffs.len() <= self.r as usize && coeffs.iter().all(|&c| c < self.p));
        Fe(pack(coeffs, self.p))
    }

    /// Element rendered as `(c_{r-1},...,c_0)`.
    pub fn display(&self, a: Fe) -> String {
        let c = self.coeffs(a);
        let parts: Vec<String> = c.iter().rev().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Spec string `p^r/m_r,...,m_0` with the modulus high coefficient first.
    pub fn spec_string(&self) -> String {
        let m: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.r, m.join(","))
    }

    /// Parses the output of [`GaloisField::spec_string`], checking that the
    /// modulus is monic and irreducible.
    pub fn from_spec_string(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Malformed(s.to_string());
        let (pr, m) = s.split_once('/').ok_or_else(bad)?;
        let (p, r) = pr.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let r: u32 = r.trim().parse().map_err(|_| bad())?;
        if !is_prime(p as u64) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if (p as u64)
            .checked_pow(r)
            .is_none_or(|q| q > MAX_ORDER as u64)
        {
            return Err(FieldError::TooLarge { p, r });
        }
        let mut modulus = m
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        modulus.reverse();
        if modulus.len() != r as usize + 1
            || modulus[r as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible_mod_p(&modulus, p)
        {
            return Err(bad());
        }
        Ok(Self::with_modulus(p, r, modulus))
    }
}

fn unpack(mut a: u32, p: u32, r: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(r as usize);
    for _ in 0..r {
        v.push(a % p);
        a /= p;
    }
    v
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}
