//! The additive group algebra Z[F_q^m] ("formal polynomials").
//!
//! An element is a finitely supported function F_q^m → Z, stored sparsely as
//! a map from monomial keys to nonzero integers. The product is convolution
//! over the additive group, so `X^α · X^β = X^{α+β}`. For m = 1 the
//! coefficient at the zero key is the constant term written `c_{-1}`.
//!
//! Keys pack the m exponent codes in base q, component `l` at `q^l`.
//! In characteristic two this packing is a bit packing and key addition is XOR.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::field::{elem_unchecked, FieldCtx, FieldElem};
use crate::ring::Ring;

#[derive(Clone)]
pub struct GroupRingElem {
    ctx: Arc<FieldCtx>,
    m: usize,
    terms: FxHashMap<u64, BigInt>,
}

impl PartialEq for GroupRingElem {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.terms == other.terms && *self.ctx == *other.ctx
    }
}

impl Eq for GroupRingElem {}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Number of keys in F_q^m, refusing key spaces that do not fit a u64.
fn key_space(q: u32, m: usize) -> Result<u64> {
    (q as u64).checked_pow(m as u32).ok_or(Error::Guard {
        guard: "key-space",
        value: (q as f64).powi(m as i32) as u128,
        limit: u64::MAX as u128,
    })
}

/// An integer as an exact JSON number.
pub fn big_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integers are valid JSON numbers"))
}

impl GroupRingElem {
    pub fn zero(ctx: &Arc<FieldCtx>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange {
                what: "arity",
                value: 0,
                range: "m >= 1".into(),
            });
        }
        key_space(ctx.q(), m)?;
        Ok(GroupRingElem {
            ctx: Arc::clone(ctx),
            m,
            terms: FxHashMap::default(),
        })
    }

    pub fn one(ctx: &Arc<FieldCtx>, m: usize) -> Result<Self> {
        let mut e = Self::zero(ctx, m)?;
        e.terms.insert(0, BigInt::one());
        Ok(e)
    }

    /// The basis element `X^α`; the arity is `alpha.len()`.
    pub fn monomial(ctx: &Arc<FieldCtx>, alpha: &[FieldElem]) -> Result<Self> {
        let mut e = Self::zero(ctx, alpha.len())?;
        let key = e.encode(alpha);
        e.terms.insert(key, BigInt::one());
        Ok(e)
    }

    /// Build from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(ctx: &Arc<FieldCtx>, m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<FieldElem>, BigInt)>,
    {
        let mut e = Self::zero(ctx, m)?;
        for (alpha, c) in terms {
            if alpha.len() != m {
                return Err(Error::ArityMismatch {
                    left: m,
                    right: alpha.len(),
                });
            }
            let key = e.encode(&alpha);
            e.accumulate(key, c);
        }
        Ok(e)
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Number of stored (nonzero) coefficients.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn encode(&self, alpha: &[FieldElem]) -> u64 {
        let q = self.ctx.q() as u64;
        alpha.iter().rev().fold(0u64, |acc, a| {
            assert!(a.code() < self.ctx.q(), "exponent {a} outside the field");
            acc * q + a.code() as u64
        })
    }

    fn decode(&self, mut key: u64) -> Vec<FieldElem> {
        let q = self.ctx.q() as u64;
        (0..self.m)
            .map(|_| {
                let c = (key % q) as u32;
                key /= q;
                self.ctx.elem(c)
            })
            .collect()
    }

    #[inline]
    fn key_add(&self, a: u64, b: u64) -> u64 {
        if self.ctx.p() == 2 {
            return a ^ b;
        }
        let q = self.ctx.q() as u64;
        if self.m == 1 {
            return self.ctx.add(elem_unchecked(a as u32), elem_unchecked(b as u32)).code() as u64;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let s = self
                .ctx
                .add(elem_unchecked((a % q) as u32), elem_unchecked((b % q) as u32));
            out += s.code() as u64 * place;
            a /= q;
            b /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    #[inline]
    fn key_neg(&self, a: u64) -> u64 {
        if self.ctx.p() == 2 {
            return a;
        }
        let q = self.ctx.q() as u64;
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += self.ctx.neg(elem_unchecked((a % q) as u32)).code() as u64 * place;
            a /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    fn accumulate(&mut self, key: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ArityMismatch {
                left: self.m,
                right: other.m,
            });
        }
        if *self.ctx != *other.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn coefficient(&self, alpha: &[FieldElem]) -> BigInt {
        if alpha.len() != self.m {
            return BigInt::zero();
        }
        self.terms.get(&self.encode(alpha)).cloned().unwrap_or_default()
    }

    /// Coefficient of `X^0`.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients (the image under the augmentation map).
    pub fn total_mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Terms in ascending key order.
    pub fn terms_sorted(&self) -> Vec<(Vec<FieldElem>, BigInt)> {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(k, _)| **k);
        keys.into_iter().map(|(k, c)| (self.decode(*k), c.clone())).collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.accumulate(k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let mut out = self.clone();
        if n.is_zero() {
            out.terms.clear();
        } else {
            for c in out.terms.values_mut() {
                *c *= n;
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms: FxHashMap<u64, BigInt> = FxHashMap::default();
        terms.reserve(small.terms.len() * large.terms.len());
        for (&ka, ca) in &small.terms {
            for (&kb, cb) in &large.terms {
                let key = self.key_add(ka, kb);
                let prod = ca * cb;
                match terms.get_mut(&key) {
                    Some(slot) => *slot += prod,
                    None => {
                        terms.insert(key, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GroupRingElem {
            ctx: Arc::clone(&self.ctx),
            m: self.m,
            terms,
        }
    }

    /// Constant term of `self · other` without forming the product:
    /// `Σ_β self(β) · other(−β)`.
    pub fn constant_term_of_product(&self, other: &Self) -> Result<BigInt> {
        self.check_compatible(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BigInt::zero();
        for (&k, c) in &small.terms {
            if let Some(d) = large.terms.get(&self.key_neg(k)) {
                acc += c * d;
            }
        }
        Ok(acc)
    }

    fn exponent_label(&self, a: FieldElem) -> String {
        match self.ctx.log(a) {
            None => "0".to_string(),
            Some(0) => format!("w^{}", self.ctx.q() - 1),
            Some(i) => format!("w^{i}"),
        }
    }

    fn display_order(&self, alpha: &[FieldElem]) -> Vec<u32> {
        alpha
            .iter()
            .map(|&a| match self.ctx.log(a) {
                None => 0,
                Some(0) => self.ctx.q() - 1,
                Some(i) => i,
            })
            .collect()
    }

    /// Human-readable form, constant first, then monomials by exponent
    /// (`ω^1 … ω^{q-1}`), e.g. `3 + 1·X^{w^1} + 1·X^{w^2} + 1·X^{w^3}`.
    pub fn render_text(&self) -> String {
        let mut terms = self.terms_sorted();
        terms.sort_by_key(|(alpha, _)| self.display_order(alpha));
        let mut parts = Vec::new();
        for (alpha, c) in terms {
            if alpha.iter().all(|a| a.is_zero()) {
                parts.push(c.to_string());
                continue;
            }
            let labels: Vec<String> = alpha.iter().map(|&a| self.exponent_label(a)).collect();
            let exp = if labels.len() == 1 {
                labels[0].clone()
            } else {
                format!("({})", labels.join(","))
            };
            parts.push(format!("{c}·X^{{{exp}}}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// `{"constant": c, "terms": [{"exp": [codes], "coef": n}, …]}` with
    /// terms in ascending key order and the constant slot split out.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms_sorted()
            .into_iter()
            .filter(|(alpha, _)| alpha.iter().any(|a| !a.is_zero()))
            .map(|(alpha, c)| {
                let codes: Vec<u32> = alpha.iter().map(|a| a.code()).collect();
                json!({ "exp": codes, "coef": big_json(&c) })
            })
            .collect();
        json!({ "constant": big_json(&self.constant_term()), "terms": terms })
    }
}

impl Ring for GroupRingElem {
    fn zero_like(&self) -> Self {
        GroupRingElem {
            ctx: Arc::clone(&self.ctx),
            m: self.m,
            terms: FxHashMap::default(),
        }
    }

    fn add_in_place(&mut self, rhs: &Self) {
        for (&k, c) in &rhs.terms {
            self.accumulate(k, c.clone());
        }
    }

    fn sub_in_place(&mut self, rhs: &Self) {
        for (&k, c) in &rhs.terms {
            self.accumulate(k, -c);
        }
    }

    fn product(&self, rhs: &Self) -> Self {
        self.mul_unchecked(rhs)
    }

    fn scaled(&self, k: &BigInt) -> Self {
        self.scale(k)
    }

    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, rhs: &Self) -> bool {
        self.check_compatible(rhs).is_ok()
    }
}

/// The ring map `X^α ↦ x^{Tr(α)}` into Z[x]/(x^p − 1), which realises the
/// evaluation of a formal polynomial at a primitive p-th root of unity.
pub fn eval_trace_character(ctx: &FieldCtx, a: &GroupRingElem) -> Result<CycloElem> {
    if a.arity() != 1 {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: 1,
        });
    }
    if *a.ctx != *ctx {
        return Err(Error::FieldMismatch);
    }
    let p = ctx.p() as usize;
    let mut coeffs = vec![BigInt::zero(); p];
    for (&k, c) in &a.terms {
        let t = ctx.trace(ctx.elem(k as u32)) as usize;
        coeffs[t] += c;
    }
    Ok(CycloElem::from_coeffs(coeffs))
}
