//! Finite fields F_{p^r} with flat lookup tables.
//!
//! An element is stored as its *code*: the coefficient vector
//! `(c_0, .., c_{r-1})` of `Σ c_i x^i mod modulus`, read as a base-`p` integer.
//! Code 0 is zero and code 1 is one. Everything the counting routines need
//! (products, logs, the absolute trace) is tabulated once at construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::guards::DEFAULT_MAX_FIELD;

/// Moduli used when the caller does not supply one. Coefficients low-to-high.
/// Pairs `(p, r)` missing here fall back to the least irreducible monic
/// polynomial in code order.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[1, 1, 1]),
    (7, 2, &[1, 0, 1]),
];

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

/// Distinct prime divisors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    /// Monic irreducible modulus, `modulus[i]` is the coefficient of `x^i`.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.r)
    }

    /// Compact form accepted by [`parse_field_spec`], e.g. `2^3:1,0,1,1`.
    pub fn to_spec_string(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.p, self.r, coeffs.join(","))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p, self.r, poly_to_string(&self.modulus))
    }
}

fn poly_to_string(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[inline]
pub(crate) fn elem_unchecked(code: u32) -> FieldElem {
    FieldElem(code)
}

// Polynomial helpers over F_p on little-endian coefficient vectors.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo a monic `g`.
fn poly_rem_monic(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u32> = a.to_vec();
    poly_trim(&mut rem);
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            let sub = (lead as u64 * gc as u64 % p as u64) as u32;
            rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        poly_trim(&mut rem);
    }
    rem
}

fn digits(code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    let mut c = code;
    for _ in 0..len {
        out.push((c % p as u64) as u32);
        c /= p as u64;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for low in 0..count {
            let mut g = digits(low, p, k);
            g.push(1);
            if poly_rem_monic(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, rr, _)| *pp == p && *rr == r) {
        return m.to_vec();
    }
    if r == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(r);
    (0..count)
        .map(|low| {
            let mut m = digits(low, p, r as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

/// Parse `"p"`, `"p^r"` or `"p^r:c_r,…,c_0"` (modulus high-to-low).
pub fn parse_field_spec(text: &str) -> Result<(u32, u32, Option<Vec<u32>>)> {
    let bad = |reason: &str| Error::BadFieldSpec {
        spec: text.to_string(),
        reason: reason.to_string(),
    };
    let text = text.trim();
    let (head, modulus) = match text.split_once(':') {
        Some((h, m)) => (h, Some(parse_modulus_list(m).map_err(|_| bad("bad modulus list"))?)),
        None => (text, None),
    };
    let (p, r) = match head.split_once('^') {
        Some((p, r)) => (p, r),
        None => (head, "1"),
    };
    let p: u32 = p.trim().parse().map_err(|_| bad("characteristic is not an integer"))?;
    let r: u32 = r.trim().parse().map_err(|_| bad("degree is not an integer"))?;
    Ok((p, r, modulus))
}

/// Parse a comma separated coefficient list given high-to-low, returning it low-to-high.
pub fn parse_modulus_list(text: &str) -> Result<Vec<u32>> {
    let mut out = text
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidModulus(format!("{text:?}: {e}")))?;
    out.reverse();
    Ok(out)
}

/// A fully tabulated finite field with a fixed primitive element ω.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    spec: FieldSpec,
    q: u32,
    omega: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.omega == other.omega
    }
}

impl Eq for FieldCtx {}

const ADD_TABLE_LIMIT: u32 = 256;

impl FieldCtx {
    pub fn build(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::build_guarded(p, r, modulus, DEFAULT_MAX_FIELD)
    }

    /// Build from the textual form understood by [`parse_field_spec`].
    pub fn parse(text: &str, max_field: u64) -> Result<Self> {
        let (p, r, modulus) = parse_field_spec(text)?;
        Self::build_guarded(p, r, modulus.as_deref(), max_field)
    }

    pub fn build_guarded(p: u32, r: u32, modulus: Option<&[u32]>, max_field: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeCharacteristic(p as u64));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        crate::guards::check("max-field", q as u128, max_field as u128)?;
        let q = u32::try_from(q).map_err(|_| Error::Guard {
            guard: "max-field",
            value: q as u128,
            limit: u32::MAX as u128,
        })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {r}, got {}",
                        r + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
                }
                if m[r as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                m.to_vec()
            }
            None => default_modulus(p, r),
        };
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus {
                p,
                modulus: poly_to_string(&modulus),
            });
        }
        let spec = FieldSpec { p, r, modulus };
        Ok(Self::tabulate(spec, q))
    }

    fn slow_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
        let r = spec.r as usize;
        let p = spec.p;
        let da = digits(a as u64, p, r);
        let db = digits(b as u64, p, r);
        let mut prod = vec![0u32; 2 * r];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let mut rem = poly_rem_monic(&prod, &spec.modulus, p);
        rem.resize(r, 0);
        undigits(&rem, p)
    }

    fn slow_pow(spec: &FieldSpec, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = Self::slow_mul(spec, acc, base);
            }
            base = Self::slow_mul(spec, base, base);
            k >>= 1;
        }
        acc
    }

    fn tabulate(spec: FieldSpec, q: u32) -> Self {
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let omega = (1..q)
            .find(|&g| factors.iter().all(|&l| Self::slow_pow(&spec, g, order / l) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = Self::slow_mul(&spec, cur, omega);
        }

        let r = spec.r as usize;
        let p = spec.p;
        let neg = (0..q)
            .map(|c| {
                let ds: Vec<u32> = digits(c as u64, p, r).into_iter().map(|d| (p - d) % p).collect();
                undigits(&ds, p)
            })
            .collect();

        let mut ctx = FieldCtx {
            spec,
            q,
            omega: FieldElem(omega),
            exp,
            log,
            trace: Vec::new(),
            neg,
            add: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(ctx.digit_add(a, b));
                }
            }
            ctx.add = Some(table);
        }
        ctx.trace = (0..q).map(|c| ctx.frobenius_trace(FieldElem(c))).collect();
        ctx
    }

    fn frobenius_trace(&self, a: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut conj = a;
        for _ in 0..self.spec.r {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.spec.p as i64);
        }
        // A broken modulus would leave the prime subfield here.
        assert!(
            acc.0 < self.spec.p,
            "trace of {a} left the prime subfield under {}",
            self.spec
        );
        acc.0
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.spec.r {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn r(&self) -> u32 {
        self.spec.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The primitive element: least code of multiplicative order q−1.
    pub fn omega(&self) -> FieldElem {
        self.omega
    }

    /// Element with the given code; panics if `code >= q`.
    pub fn elem(&self, code: u32) -> FieldElem {
        assert!(code < self.q, "code {code} out of range for q = {}", self.q);
        FieldElem(code)
    }

    pub fn try_elem(&self, code: u32) -> Option<FieldElem> {
        (code < self.q).then_some(FieldElem(code))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Nonzero elements in discrete-log order ω^0, ω^1, …
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.exp.iter().map(|&c| FieldElem(c))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.add {
            Some(t) => FieldElem(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElem(self.digit_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElem(self.exp[s % (self.q as usize - 1)])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.omega_pow(-(self.log[a.0 as usize] as i64)))
    }

    /// `a^k`; negative exponents go through the inverse, so `pow(0, k<0)` panics.
    pub fn pow(&self, a: FieldElem, k: i64) -> FieldElem {
        if a.is_zero() {
            assert!(k >= 0, "zero raised to a negative power");
            return if k == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let n = self.q as i64 - 1;
        let e = (self.log[a.0 as usize] as i64 * k.rem_euclid(n)).rem_euclid(n);
        FieldElem(self.exp[e as usize])
    }

    pub fn try_pow(&self, a: FieldElem, k: i64) -> Result<FieldElem> {
        if a.is_zero() && k < 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, k))
    }

    /// Discrete log base ω, `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// ω^i for any integer `i`.
    #[inline]
    pub fn omega_pow(&self, i: i64) -> FieldElem {
        FieldElem(self.exp[i.rem_euclid(self.q as i64 - 1) as usize])
    }

    /// Absolute trace, as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.trace[a.0 as usize]
    }
}
