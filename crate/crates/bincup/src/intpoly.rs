//! The free binomial ring of integer-valued polynomials.
//!
//! Elements are stored in the zeta basis: products `zeta_I = prod_k
//! binom(x_k, i_k)` indexed by finitely supported maps `I` from variable
//! names to positive exponents. Over `Z` this basis is a free module basis;
//! over `Z_p` the basis is the same with every entry below `p`. Products of
//! basis elements sharing a variable are rewritten through
//! `zeta_m(x) zeta_n(x) = sum_k binom(m+k, n) binom(n, k) zeta_{m+k}(x)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("zeta_{n} is undefined over Z_{p}")]
    Domain { n: u64, p: u64 },
    #[error("variable `{0}` has no assigned value")]
    MissingVariable(String),
    #[error("malformed serialized polynomial: {0}")]
    Parse(String),
}

/// Witness that a rational polynomial fails to be integer-valued.
#[derive(Debug, PartialEq)]
pub struct NotIntegerValued {
    pub witness: Vec<(String, BigInt)>,
    pub value: BigRational,
}

impl fmt::Display for NotIntegerValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not integer-valued at {:?}: {}", self.witness, self.value)
    }
}

/// Exact binomial coefficient `binom(a, n) = a(a-1)...(a-n+1)/n!` for any
/// integer `a`, including negative ones.
pub fn zeta_binomial(a: &BigInt, n: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..n {
        c *= a - BigInt::from(i);
        c /= BigInt::from(i + 1); // exact: c is binom(a, i+1) after this step
    }
    c
}

/// `binom(a, n)` in `Z_p`; defined only for `n <= p-1` where `n!` is a unit.
pub fn zeta_binomial_modp(a: &BigInt, n: u64, p: u64) -> Result<BigInt, PolyError> {
    if n >= p {
        return Err(PolyError::Domain { n, p });
    }
    let lifted = Ring::Zp(p).reduce_big(a);
    Ok(Ring::Zp(p).reduce_big(&zeta_binomial(&lifted, n)))
}

/// Finitely supported exponent map; the empty map indexes the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct MultiIndex {
    entries: BTreeMap<String, u32>,
}

impl MultiIndex {
    pub fn new() -> Self {
        MultiIndex::default()
    }

    pub fn single(var: &str, k: u32) -> Self {
        let mut m = MultiIndex::new();
        m.set(var, k);
        m
    }

    pub fn from_pairs(pairs: &[(&str, u32)]) -> Self {
        let mut m = MultiIndex::new();
        for (v, k) in pairs {
            m.set(v, *k);
        }
        m
    }

    pub fn set(&mut self, var: &str, k: u32) {
        if k == 0 {
            self.entries.remove(var);
        } else {
            self.entries.insert(var.to_string(), k);
        }
    }

    pub fn get(&self, var: &str) -> u32 {
        self.entries.get(var).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, u32)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn support(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|&v| v as u64).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = self.clone();
        for (v, k) in other.entries() {
            let cur = out.get(v);
            out.set(v, cur + k);
        }
        out
    }

    /// All decompositions `I = I1 + I2` with both parts nonzero, in a
    /// deterministic order.
    pub fn splits(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let vars: Vec<(&String, u32)> = self.entries.iter().map(|(k, v)| (k, *v)).collect();
        let mut counters = vec![0u32; vars.len()];
        let mut out = Vec::new();
        loop {
            let mut left = MultiIndex::new();
            for (slot, (v, _)) in counters.iter().zip(vars.iter()) {
                left.set(v, *slot);
            }
            if !left.is_empty() && left != *self {
                let mut right = MultiIndex::new();
                for (v, k) in vars.iter() {
                    right.set(v, k - left.get(v));
                }
                out.push((left, right));
            }
            // mixed-radix increment
            let mut pos = 0;
            loop {
                if pos == vars.len() {
                    return out;
                }
                if counters[pos] < vars[pos].1 {
                    counters[pos] += 1;
                    break;
                }
                counters[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, k)| format!("z{k}({v})"))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the free binomial ring in zeta-basis normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZetaPoly {
    ring: Ring,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl ZetaPoly {
    pub fn zero(ring: Ring) -> Self {
        ZetaPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        ZetaPoly::constant(ring, BigInt::one())
    }

    pub fn constant(ring: Ring, c: BigInt) -> Self {
        let mut p = ZetaPoly::zero(ring);
        p.add_term(MultiIndex::new(), c);
        p
    }

    /// `zeta_1(x) = x`.
    pub fn variable(ring: Ring, name: &str) -> Self {
        ZetaPoly::basis(ring, MultiIndex::single(name, 1), BigInt::one())
    }

    pub fn basis(ring: Ring, index: MultiIndex, coeff: BigInt) -> Self {
        let mut p = ZetaPoly::zero(ring);
        p.add_term(index, coeff);
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: &MultiIndex) -> BigInt {
        self.terms.get(index).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(&MultiIndex::new())
    }

    pub fn without_constant(&self) -> ZetaPoly {
        let mut out = self.clone();
        out.terms.remove(&MultiIndex::new());
        out
    }

    /// Normalizing single-term insertion; in `Z_p` an index with an entry
    /// `>= p` is killed by the quotient.
    fn add_term(&mut self, index: MultiIndex, coeff: BigInt) {
        let coeff = self.ring.reduce_big(&coeff);
        if coeff.is_zero() {
            return;
        }
        if let Ring::Zp(p) = self.ring {
            if index.max_entry() as u64 >= p {
                return;
            }
        }
        let entry = self.terms.entry(index.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        *entry = self.ring.reduce_big(entry);
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    fn assert_same_ring(&self, other: &ZetaPoly) {
        assert_eq!(self.ring, other.ring, "ring mismatch in zeta arithmetic");
    }

    pub fn add(&self, other: &ZetaPoly) -> ZetaPoly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ZetaPoly {
        let mut out = ZetaPoly::zero(self.ring);
        for (i, c) in self.terms() {
            out.add_term(i.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZetaPoly) -> ZetaPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> ZetaPoly {
        let mut out = ZetaPoly::zero(self.ring);
        for (i, t) in self.terms() {
            out.add_term(i.clone(), t * c);
        }
        out
    }

    /// Ring product in zeta-basis normal form.
    pub fn mul(&self, other: &ZetaPoly) -> Result<ZetaPoly, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring, other.ring));
        }
        let mut out = ZetaPoly::zero(self.ring);
        for (i, c) in self.terms() {
            for (j, e) in other.terms() {
                for (index, factor) in basis_product(i, j) {
                    out.add_term(index, c * e * factor);
                }
            }
        }
        Ok(out)
    }

    /// Largest exponent of `var` occurring in any term.
    pub fn var_degree(&self, var: &str) -> u32 {
        self.terms.keys().map(|i| i.get(var)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for i in self.terms.keys() {
            for v in i.support() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars.sort();
        vars
    }

    /// Exact evaluation at an integer assignment covering every variable.
    pub fn evaluate(&self, assignment: &BTreeMap<String, BigInt>) -> Result<BigInt, PolyError> {
        let mut acc = BigInt::zero();
        for (i, c) in self.terms() {
            let mut term = c.clone();
            for (v, k) in i.entries() {
                let a = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))?;
                term *= match self.ring {
                    Ring::Z => zeta_binomial(a, k as u64),
                    Ring::Zp(p) => zeta_binomial_modp(a, k as u64, p)?,
                };
            }
            acc += term;
        }
        Ok(self.ring.reduce_big(&acc))
    }

    /// The binomial operation `zeta_n` applied to this element, expanded back
    /// into the zeta basis by Newton interpolation on an integer grid.
    pub fn zeta_apply(&self, n: u64) -> Result<ZetaPoly, PolyError> {
        match self.ring {
            Ring::Z => self.zeta_apply_z(n),
            Ring::Zp(p) => {
                if n >= p {
                    return Err(PolyError::Domain { n, p });
                }
                // canonical lift, compute over Z, reduce; the projection is a
                // map of binomial structures so this is exact
                let lift = ZetaPoly {
                    ring: Ring::Z,
                    terms: self.terms.clone(),
                };
                Ok(lift.zeta_apply_z(n)?.reduce_mod_p(p))
            }
        }
    }

    fn zeta_apply_z(&self, n: u64) -> Result<ZetaPoly, PolyError> {
        if n == 0 {
            return Ok(ZetaPoly::one(self.ring));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let vars = self.variables();
        if vars.is_empty() {
            return Ok(ZetaPoly::constant(
                self.ring,
                zeta_binomial(&self.constant_coeff(), n),
            ));
        }
        // zeta_n(f) has degree at most n * deg_v(f) in each variable v
        let dims: Vec<usize> = vars
            .iter()
            .map(|v| (n as usize) * self.var_degree(v) as usize + 1)
            .collect();
        let total: usize = dims.iter().product();
        let mut values = Vec::with_capacity(total);
        let mut point = vec![0usize; vars.len()];
        let mut assignment: BTreeMap<String, BigInt> = BTreeMap::new();
        for _ in 0..total {
            for (v, c) in vars.iter().zip(point.iter()) {
                assignment.insert(v.clone(), BigInt::from(*c));
            }
            let base = self.evaluate(&assignment)?;
            values.push(zeta_binomial(&base, n));
            // mixed-radix increment with the first variable fastest
            for (pos, d) in point.iter_mut().zip(dims.iter()) {
                *pos += 1;
                if *pos < *d {
                    break;
                }
                *pos = 0;
            }
        }
        let coeffs = newton_coefficients(&dims, values);
        let mut out = ZetaPoly::zero(self.ring);
        let mut point = vec![0usize; vars.len()];
        for c in coeffs {
            if !c.is_zero() {
                let mut index = MultiIndex::new();
                for (v, k) in vars.iter().zip(point.iter()) {
                    index.set(v, *k as u32);
                }
                out.add_term(index, c);
            }
            for (pos, d) in point.iter_mut().zip(dims.iter()) {
                *pos += 1;
                if *pos < *d {
                    break;
                }
                *pos = 0;
            }
        }
        Ok(out)
    }

    /// Projection `Int(Z^X) -> Int(Z_p^X)`: kills every basis index with an
    /// entry `>= p` and reduces coefficients.
    pub fn reduce_mod_p(&self, p: u64) -> ZetaPoly {
        assert_eq!(self.ring, Ring::Z, "reduce_mod_p expects an integral input");
        let mut out = ZetaPoly::zero(Ring::Zp(p));
        for (i, c) in self.terms() {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    /// Expansion in the monomial basis with rational coefficients.
    pub fn to_rational(&self) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (i, c) in self.terms() {
            let mut term = RationalPoly::constant(BigRational::from(c.clone()));
            for (v, k) in i.entries() {
                term = term.mul(&RationalPoly::binomial_in(v, k));
            }
            out = out.add(&term);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let mut idx = serde_json::Map::new();
                for (v, k) in i.entries() {
                    idx.insert(v.clone(), Value::from(k));
                }
                serde_json::json!({ "index": Value::Object(idx), "coeff": c.to_string() })
            })
            .collect();
        serde_json::json!({ "ring": self.ring.to_json(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<ZetaPoly, PolyError> {
        let ring = Ring::from_json(v.get("ring").ok_or_else(|| PolyError::Parse("missing ring".into()))?)
            .map_err(|e| PolyError::Parse(e.to_string()))?;
        let mut out = ZetaPoly::zero(ring);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| PolyError::Parse("missing terms".into()))?;
        for t in terms {
            let idx = t
                .get("index")
                .and_then(Value::as_object)
                .ok_or_else(|| PolyError::Parse("missing index".into()))?;
            let mut index = MultiIndex::new();
            for (var, k) in idx {
                let k = k
                    .as_u64()
                    .ok_or_else(|| PolyError::Parse(format!("bad exponent for {var}")))?;
                index.set(var, k as u32);
            }
            let coeff: BigInt = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| PolyError::Parse("missing coeff".into()))?
                .parse()
                .map_err(|_| PolyError::Parse("bad coeff".into()))?;
            out.add_term(index, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("{c}*{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `zeta_m(x) zeta_n(x)` rewritten in the basis. Returns pairs (exponent,
/// coefficient).
fn single_var_product(m: u32, n: u32) -> Vec<(u32, BigInt)> {
    let (m, n) = if m >= n { (m, n) } else { (n, m) };
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let c = zeta_binomial(&BigInt::from(m + k), n as u64)
            * zeta_binomial(&BigInt::from(n), k as u64);
        out.push((m + k, c));
    }
    out
}

/// Product of two basis monomials as a list of (index, coefficient) pairs,
/// over `Z`; callers working mod `p` reduce afterwards.
pub fn basis_product(i: &MultiIndex, j: &MultiIndex) -> Vec<(MultiIndex, BigInt)> {
    let mut acc: Vec<(MultiIndex, BigInt)> = vec![(MultiIndex::new(), BigInt::one())];
    let mut vars: Vec<&String> = i.support().chain(j.support()).collect();
    vars.sort();
    vars.dedup();
    for v in vars {
        let (a, b) = (i.get(v), j.get(v));
        let expansion: Vec<(u32, BigInt)> = if a == 0 || b == 0 {
            vec![(a + b, BigInt::one())]
        } else {
            single_var_product(a, b)
        };
        let mut next = Vec::with_capacity(acc.len() * expansion.len());
        for (idx, c) in &acc {
            for (k, f) in &expansion {
                let mut nidx = idx.clone();
                nidx.set(v, *k);
                next.push((nidx, c * f));
            }
        }
        acc = next;
    }
    acc
}

/// In-place forward differences along every axis of a dense grid; turns
/// sampled values into Newton (zeta-basis) coefficients.
fn newton_coefficients(dims: &[usize], mut values: Vec<BigInt>) -> Vec<BigInt> {
    let total = values.len();
    let mut stride = 1usize;
    for (axis, &d) in dims.iter().enumerate() {
        let _ = axis;
        if d > 1 {
            // iterate over all lines parallel to this axis
            let block = stride * d;
            let mut base = 0;
            while base < total {
                for line_off in 0..stride {
                    let start = base + line_off;
                    for s in 1..d {
                        for pos in (s..d).rev() {
                            let hi = start + pos * stride;
                            let lo = start + (pos - 1) * stride;
                            let v = values[lo].clone();
                            values[hi] -= v;
                        }
                    }
                }
                base += block;
            }
        }
        stride *= d;
    }
    values
}

/// Multivariate polynomial over the rationals in the monomial basis; the
/// staging format for integrality tests and basis conversions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RationalPoly {
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = RationalPoly::zero();
        p.add_term(MultiIndex::new(), c);
        p
    }

    pub fn variable(name: &str) -> Self {
        let mut p = RationalPoly::zero();
        p.add_term(MultiIndex::single(name, 1), BigRational::one());
        p
    }

    pub fn monomial(index: MultiIndex, c: BigRational) -> Self {
        let mut p = RationalPoly::zero();
        p.add_term(index, c);
        p
    }

    fn add_term(&mut self, index: MultiIndex, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(index.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (i, c) in self.terms() {
            out.add_term(i.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (i, c) in self.terms() {
            for (j, e) in other.terms() {
                out.add_term(i.plus(j), c * e);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (i, t) in self.terms() {
            out.add_term(i.clone(), t * c);
        }
        out
    }

    /// The monomial expansion of `binom(v, k)`.
    pub fn binomial_in(v: &str, k: u32) -> RationalPoly {
        let x = RationalPoly::variable(v);
        let mut acc = RationalPoly::constant(BigRational::one());
        for i in 0..k {
            let shifted = x.sub(&RationalPoly::constant(BigRational::from(BigInt::from(i))));
            acc = acc.mul(&shifted);
            acc = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(i + 1)));
        }
        acc
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for i in self.terms.keys() {
            for v in i.support() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars.sort();
        vars
    }

    pub fn var_degree(&self, var: &str) -> u32 {
        self.terms.keys().map(|i| i.get(var)).max().unwrap_or(0)
    }

    pub fn evaluate(&self, assignment: &BTreeMap<String, BigInt>) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (i, c) in self.terms() {
            let mut term = c.clone();
            for (v, k) in i.entries() {
                let a = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))?;
                let mut pw = BigInt::one();
                for _ in 0..k {
                    pw *= a;
                }
                term *= BigRational::from(pw);
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Unique zeta-basis expansion of an integer-valued rational polynomial, or a
/// witness point where the polynomial takes a non-integer value.
///
/// A polynomial with per-variable degrees `d_v` is integer-valued on all of
/// `Z^X` exactly when it is integer on the box grid `prod {0..d_v}`: the
/// Newton coefficients are integer combinations of the grid values and
/// conversely.
pub fn polya_to_zeta(q: &RationalPoly) -> Result<ZetaPoly, NotIntegerValued> {
    let vars = q.variables();
    let dims: Vec<usize> = vars.iter().map(|v| q.var_degree(v) as usize + 1).collect();
    let total: usize = dims.iter().product::<usize>().max(1);
    let mut values: Vec<BigInt> = Vec::with_capacity(total);
    let mut point = vec![0usize; vars.len()];
    let mut assignment: BTreeMap<String, BigInt> = BTreeMap::new();
    for _ in 0..total {
        for (v, c) in vars.iter().zip(point.iter()) {
            assignment.insert(v.clone(), BigInt::from(*c));
        }
        let val = q.evaluate(&assignment).expect("assignment covers all vars");
        if !val.is_integer() {
            return Err(NotIntegerValued {
                witness: vars
                    .iter()
                    .zip(point.iter())
                    .map(|(v, c)| (v.clone(), BigInt::from(*c)))
                    .collect(),
                value: val,
            });
        }
        values.push(val.to_integer());
        for (pos, d) in point.iter_mut().zip(dims.iter()) {
            *pos += 1;
            if *pos < *d {
                break;
            }
            *pos = 0;
        }
    }
    let coeffs = newton_coefficients(&dims, values);
    let mut out = ZetaPoly::zero(Ring::Z);
    let mut point = vec![0usize; vars.len()];
    for c in coeffs {
        if !c.is_zero() {
            let mut index = MultiIndex::new();
            for (v, k) in vars.iter().zip(point.iter()) {
                index.set(v, *k as u32);
            }
            out.add_term(index, c);
        }
        for (pos, d) in point.iter_mut().zip(dims.iter()) {
            *pos += 1;
            if *pos < *d {
                break;
            }
            *pos = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn z() -> Ring {
        Ring::Z
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(zeta_binomial(&big(5), 2), big(10));
        for a in -7..=7 {
            assert_eq!(zeta_binomial(&big(a), 0), big(1));
        }
        // direct product oracle for a negative argument
        let oracle = (big(-1) * big(-2) * big(-3)) / big(6);
        assert_eq!(zeta_binomial(&big(-1), 3), oracle);
        assert_eq!(zeta_binomial(&big(-1), 3), big(-1));
    }

    #[test]
    fn binomial_modp() {
        assert_eq!(zeta_binomial_modp(&big(3), 2, 5).unwrap(), big(3));
        assert_eq!(zeta_binomial_modp(&big(1), 2, 3).unwrap(), big(0));
        assert_eq!(
            zeta_binomial_modp(&big(2), 7, 7),
            Err(PolyError::Domain { n: 7, p: 7 })
        );
    }

    #[test]
    fn product_single_variable() {
        let x = ZetaPoly::variable(z(), "x");
        let sq = x.mul(&x).unwrap();
        let expected = ZetaPoly::basis(z(), MultiIndex::single("x", 1), big(1))
            .add(&ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(2)));
        assert_eq!(sq, expected);

        // zeta_2(x) * zeta_1(x) = 2 zeta_2 + 3 zeta_3, checked against
        // evaluation at 0..3
        let z2 = ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(1));
        let prod = z2.mul(&x).unwrap();
        let expected = ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(2))
            .add(&ZetaPoly::basis(z(), MultiIndex::single("x", 3), big(3)));
        assert_eq!(prod, expected);
        for v in 0..=3i64 {
            let mut asg = BTreeMap::new();
            asg.insert("x".to_string(), big(v));
            let lhs = z2.evaluate(&asg).unwrap() * x.evaluate(&asg).unwrap();
            assert_eq!(lhs, prod.evaluate(&asg).unwrap());
        }
    }

    #[test]
    fn product_disjoint_supports() {
        let x = ZetaPoly::variable(z(), "x");
        let y = ZetaPoly::variable(z(), "y");
        let p = x.mul(&y).unwrap();
        let expected = ZetaPoly::basis(z(), MultiIndex::from_pairs(&[("x", 1), ("y", 1)]), big(1));
        assert_eq!(p, expected);
    }

    #[test]
    fn ring_mismatch_rejected() {
        let x = ZetaPoly::variable(Ring::Z, "x");
        let y = ZetaPoly::variable(Ring::Zp(5), "x");
        assert!(matches!(x.mul(&y), Err(PolyError::RingMismatch(_, _))));
    }

    #[test]
    fn zeta_apply_basics() {
        let x = ZetaPoly::variable(z(), "x");
        // zeta_n applied to zeta_1 is zeta_n
        assert_eq!(
            x.zeta_apply(2).unwrap(),
            ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(1))
        );
        // zeta_1 is the identity
        let f = x.mul(&x).unwrap().add(&ZetaPoly::constant(z(), big(3)));
        assert_eq!(f.zeta_apply(1).unwrap(), f);
        // interpolation oracle: binom(2x,2) = 2x^2 - x = zeta_1 + 4 zeta_2,
        // recursion by hand from values 0, 1, 6 at x = 0, 1, 2
        let two_x = x.scale(&big(2));
        let expected = ZetaPoly::basis(z(), MultiIndex::single("x", 1), big(1))
            .add(&ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(4)));
        assert_eq!(two_x.zeta_apply(2).unwrap(), expected);
    }

    #[test]
    fn zeta_apply_unit_axiom() {
        let one = ZetaPoly::one(z());
        for n in 2..=5 {
            assert!(one.zeta_apply(n).unwrap().is_zero(), "zeta_{n}(1) != 0");
        }
        assert_eq!(one.zeta_apply(1).unwrap(), one);
    }

    #[test]
    fn zeta_apply_domain_error_mod_p() {
        let x = ZetaPoly::variable(Ring::Zp(3), "x");
        assert!(matches!(
            x.zeta_apply(3),
            Err(PolyError::Domain { n: 3, p: 3 })
        ));
        assert!(x.zeta_apply(2).is_ok());
    }

    #[test]
    fn evaluate_examples() {
        let z2 = ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(1));
        let mut asg = BTreeMap::new();
        asg.insert("x".to_string(), big(5));
        assert_eq!(z2.evaluate(&asg).unwrap(), big(10));

        let z11 = ZetaPoly::basis(z(), MultiIndex::from_pairs(&[("x", 1), ("y", 1)]), big(1));
        asg.insert("x".to_string(), big(3));
        asg.insert("y".to_string(), big(4));
        assert_eq!(z11.evaluate(&asg).unwrap(), big(12));

        let one = ZetaPoly::one(z());
        assert_eq!(one.evaluate(&asg).unwrap(), big(1));

        let missing = z11.evaluate(&BTreeMap::new());
        assert!(matches!(missing, Err(PolyError::MissingVariable(_))));
    }

    #[test]
    fn polya_examples() {
        // x^2 -> zeta_1 + 2 zeta_2; recursion oracle from values 0,1,4:
        // c0 = 0, c1 = 1, c2 = 4 - 2*1 = 2
        let x = RationalPoly::variable("x");
        let sq = x.mul(&x);
        let expanded = polya_to_zeta(&sq).unwrap();
        let expected = ZetaPoly::basis(z(), MultiIndex::single("x", 1), big(1))
            .add(&ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(2)));
        assert_eq!(expanded, expected);

        // x(x-1)/2 = zeta_2
        let half = BigRational::new(big(1), big(2));
        let q = x
            .mul(&x.sub(&RationalPoly::constant(BigRational::one())))
            .scale(&half);
        assert_eq!(
            polya_to_zeta(&q).unwrap(),
            ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(1))
        );

        // x/2 is not integer-valued; witness is x = 1
        let q = x.scale(&half);
        let err = polya_to_zeta(&q).unwrap_err();
        assert_eq!(err.witness, vec![("x".to_string(), big(1))]);
    }

    #[test]
    fn reduce_mod_p_examples() {
        let f = ZetaPoly::basis(z(), MultiIndex::single("x", 3), big(1))
            .add(&ZetaPoly::basis(z(), MultiIndex::single("x", 1), big(5)));
        let r = f.reduce_mod_p(3);
        assert_eq!(
            r,
            ZetaPoly::basis(Ring::Zp(3), MultiIndex::single("x", 1), big(2))
        );

        let g = ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(3));
        assert!(g.reduce_mod_p(3).is_zero());

        let h = ZetaPoly::basis(z(), MultiIndex::single("x", 2), big(1));
        assert_eq!(
            h.reduce_mod_p(5),
            ZetaPoly::basis(Ring::Zp(5), MultiIndex::single("x", 2), big(1))
        );
    }

    fn random_poly(s: &mut Sampler, vars: &[&str], max_idx: u32, terms: usize) -> ZetaPoly {
        let mut p = ZetaPoly::zero(Ring::Z);
        for _ in 0..terms {
            let mut idx = MultiIndex::new();
            for v in vars {
                if s.bool(1, 2) {
                    idx.set(v, s.int(0, max_idx as i128) as u32);
                }
            }
            p = p.add(&ZetaPoly::basis(Ring::Z, idx, BigInt::from(s.int(-9, 9))));
        }
        p
    }

    #[test]
    fn basis_freeness_proxy() {
        // products agree with pointwise evaluation products, exactly
        let mut s = Sampler::new(42);
        let vars = ["u", "w", "x", "y"];
        for trial in 0..25 {
            let f = random_poly(&mut s, &vars, 5, 3);
            let g = random_poly(&mut s, &vars, 5, 3);
            let fg = f.mul(&g).unwrap();
            for _ in 0..20 {
                let mut asg = BTreeMap::new();
                for v in vars {
                    asg.insert(v.to_string(), BigInt::from(s.int(-6, 6)));
                }
                let lhs = fg.evaluate(&asg).unwrap();
                let rhs = f.evaluate(&asg).unwrap() * g.evaluate(&asg).unwrap();
                assert_eq!(lhs, rhs, "trial {trial}");
            }
        }
    }

    #[test]
    fn addition_axiom() {
        // zeta_n(f+g) = sum_{i+j=n} zeta_i(f) zeta_j(g)
        let mut s = Sampler::new(7);
        for _ in 0..4 {
            let f = random_poly(&mut s, &["x", "y"], 2, 2);
            let g = random_poly(&mut s, &["x", "y"], 2, 2);
            let sum = f.add(&g);
            for n in 1..=5u64 {
                let lhs = sum.zeta_apply(n).unwrap();
                let mut rhs = ZetaPoly::zero(Ring::Z);
                for i in 0..=n {
                    let a = f.zeta_apply(i).unwrap();
                    let b = g.zeta_apply(n - i).unwrap();
                    rhs = rhs.add(&a.mul(&b).unwrap());
                }
                assert_eq!(lhs, rhs, "n = {n}");
            }
        }
    }

    #[test]
    fn polya_round_trip() {
        let mut s = Sampler::new(99);
        for _ in 0..30 {
            let f = random_poly(&mut s, &["x", "y", "w"], 4, 4);
            let back = polya_to_zeta(&f.to_rational()).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn reduce_mod_p_is_ring_map() {
        let mut s = Sampler::new(5);
        for p in [3u64, 5] {
            for _ in 0..10 {
                let f = random_poly(&mut s, &["x", "y"], 4, 3);
                let g = random_poly(&mut s, &["x", "y"], 4, 3);
                let lhs = f.mul(&g).unwrap().reduce_mod_p(p);
                let rhs = f.reduce_mod_p(p).mul(&g.reduce_mod_p(p)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let f = random_poly(&mut s, &["x", "y"], 3, 3);
            let back = ZetaPoly::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
        }
        let f = ZetaPoly::basis(
            Ring::Z,
            MultiIndex::from_pairs(&[("x", 2), ("y", 1)]),
            big(-12),
        );
        let text = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"ring":"Z","terms":[{"coeff":"-12","index":{"x":2,"y":1}}]}"#
        );
    }

    #[test]
    fn splits_enumeration() {
        let i = MultiIndex::from_pairs(&[("x", 2), ("y", 1)]);
        let splits = i.splits();
        // (2+1 choices) * (1+1 choices) - 2 endpoints = 4
        assert_eq!(splits.len(), 4);
        for (a, b) in &splits {
            assert_eq!(a.plus(b), i);
            assert!(!a.is_empty() && !b.is_empty());
        }
    }
}
