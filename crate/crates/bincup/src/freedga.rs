//! The free binomial cup-one DGA on a variable set: the tensor algebra on
//! integer-valued polynomials without constant term, with differential
//! `d zeta_I = - sum zeta_{I1} (x) zeta_{I2}` over proper splittings, Hirsch
//! cup-one products, and universal maps into any cup-one DGA target.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::cochain::{Cochain, CochainAlgebra, CochainError};
use crate::intpoly::{basis_product, MultiIndex, ZetaPoly};
use crate::ring::Ring;

#[derive(Debug, Error, PartialEq)]
pub enum DgaError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cup-one is not defined in bidegree ({0}, {1})")]
    UnsupportedBidegree(usize, usize),
    #[error("differential is only defined through degree 2")]
    DifferentialRange,
    #[error("zeta_{n} is unavailable in the target")]
    UnsupportedZeta { n: u64 },
    #[error("variable `{0}` has no image under the map")]
    MissingVariable(String),
    #[error("degree-1 elements cannot carry a constant term")]
    ConstantTerm,
    #[error("cochain arithmetic failed: {0}")]
    Cochain(String),
    #[error("malformed tensor JSON: {0}")]
    Parse(String),
}

impl From<CochainError> for DgaError {
    fn from(e: CochainError) -> Self {
        DgaError::Cochain(e.to_string())
    }
}

/// Homogeneous element of the free binomial graded algebra: a formal sum of
/// tensor words whose slots are zeta-basis monomials. Degree equals word
/// length; scalars are the empty word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    ring: Ring,
    degree: usize,
    terms: BTreeMap<Vec<MultiIndex>, BigInt>,
}

impl TensorElement {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        TensorElement {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ring: Ring, c: BigInt) -> Self {
        let mut t = TensorElement::zero(ring, 0);
        t.add_term(vec![], c);
        t
    }

    /// Basis word from slot monomials; slots must be nonempty indices.
    pub fn word(ring: Ring, slots: Vec<MultiIndex>, coeff: BigInt) -> Result<Self, DgaError> {
        if slots.iter().any(MultiIndex::is_empty) {
            return Err(DgaError::ConstantTerm);
        }
        let degree = slots.len();
        let mut t = TensorElement::zero(ring, degree);
        t.add_term(slots, coeff);
        Ok(t)
    }

    pub fn basis1(ring: Ring, index: MultiIndex) -> Result<Self, DgaError> {
        TensorElement::word(ring, vec![index], BigInt::one())
    }

    pub fn variable(ring: Ring, name: &str) -> Self {
        TensorElement::basis1(ring, MultiIndex::single(name, 1)).expect("nonempty index")
    }

    /// Degree-1 element from an integer-valued polynomial without constant
    /// term.
    pub fn from_poly(p: &ZetaPoly) -> Result<Self, DgaError> {
        if !p.constant_coeff().is_zero() {
            return Err(DgaError::ConstantTerm);
        }
        let mut t = TensorElement::zero(p.ring(), 1);
        for (i, c) in p.terms() {
            t.add_term(vec![i.clone()], c.clone());
        }
        Ok(t)
    }

    /// The degree-1 part as a polynomial.
    pub fn to_poly(&self) -> Result<ZetaPoly, DgaError> {
        if self.degree != 1 {
            return Err(DgaError::DegreeMismatch(self.degree, 1));
        }
        let mut p = ZetaPoly::zero(self.ring);
        for (w, c) in &self.terms {
            p = p.add(&ZetaPoly::basis(self.ring, w[0].clone(), c.clone()));
        }
        Ok(p)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<MultiIndex>, coeff: BigInt) {
        let coeff = self.ring.reduce_big(&coeff);
        if coeff.is_zero() {
            return;
        }
        if let Ring::Zp(p) = self.ring {
            if word.iter().any(|i| i.max_entry() as u64 >= p) {
                return;
            }
        }
        debug_assert_eq!(word.len(), self.degree);
        let entry = self.terms.entry(word.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        *entry = self.ring.reduce_big(entry);
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn compat(&self, other: &TensorElement) -> Result<(), DgaError> {
        if self.ring != other.ring {
            return Err(DgaError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, DgaError> {
        self.compat(other)?;
        if self.degree != other.degree {
            if self.is_zero() {
                return Ok(other.clone());
            }
            if other.is_zero() {
                return Ok(self.clone());
            }
            return Err(DgaError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, DgaError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> TensorElement {
        let mut out = TensorElement::zero(self.ring, self.degree);
        for (w, t) in self.terms() {
            out.add_term(w.clone(), t * c);
        }
        out
    }

    /// Graded product: bilinear word concatenation.
    pub fn cup(&self, other: &TensorElement) -> Result<TensorElement, DgaError> {
        self.compat(other)?;
        let mut out = TensorElement::zero(self.ring, self.degree + other.degree);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Slot product in the coefficient ring, expanded into basis words.
    fn slot_mul(
        &self,
        word: &[MultiIndex],
        slot: usize,
        other: &MultiIndex,
        coeff: &BigInt,
        out: &mut TensorElement,
    ) {
        for (idx, factor) in basis_product(&word[slot], other) {
            if idx.is_empty() {
                // zeta-basis products of nonempty indices never hit the unit
                continue;
            }
            let mut w = word.to_vec();
            w[slot] = idx;
            out.add_term(w, coeff * factor);
        }
    }

    /// Cup-one product in the implemented bidegrees (1,1), (2,1), (1,2).
    pub fn cup_one(&self, other: &TensorElement) -> Result<TensorElement, DgaError> {
        self.compat(other)?;
        match (self.degree, other.degree) {
            (1, 1) => {
                let mut out = TensorElement::zero(self.ring, 1);
                for (w1, c1) in self.terms() {
                    for (w2, c2) in other.terms() {
                        let c = c1 * c2;
                        self.slot_mul(w1, 0, &w2[0], &c, &mut out);
                    }
                }
                Ok(out)
            }
            (2, 1) => {
                // (a (x) b) u1 c = ac (x) b + a (x) bc
                let mut out = TensorElement::zero(self.ring, 2);
                for (w1, c1) in self.terms() {
                    for (w2, c2) in other.terms() {
                        let c = c1 * c2;
                        self.slot_mul(w1, 0, &w2[0], &c, &mut out);
                        self.slot_mul(w1, 1, &w2[0], &c, &mut out);
                    }
                }
                Ok(out)
            }
            (1, 2) => {
                // a u1 beta = d(a) o beta - beta u1 a
                let da = self.differential()?;
                let lhs = da.circ(other)?;
                let rhs = other.cup_one(self)?;
                lhs.sub(&rhs)
            }
            (p, q) => Err(DgaError::UnsupportedBidegree(p, q)),
        }
    }

    /// Slotwise pairing on degree 2.
    pub fn circ(&self, other: &TensorElement) -> Result<TensorElement, DgaError> {
        self.compat(other)?;
        if self.degree != 2 || other.degree != 2 {
            return Err(DgaError::UnsupportedBidegree(self.degree, other.degree));
        }
        let mut out = TensorElement::zero(self.ring, 2);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                let c = c1 * c2;
                for (first, f1) in basis_product(&w1[0], &w2[0]) {
                    if first.is_empty() {
                        continue;
                    }
                    for (second, f2) in basis_product(&w1[1], &w2[1]) {
                        if second.is_empty() {
                            continue;
                        }
                        out.add_term(vec![first.clone(), second], &c * &f1 * f2);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The differential: on a degree-1 basis monomial,
    /// `d zeta_I = - sum_{I1+I2=I} zeta_{I1} (x) zeta_{I2}` over proper
    /// splittings; extended to words by the graded Leibniz rule. Defined
    /// through degree 3, which is enough to watch `dd = 0` on degree-2 words.
    pub fn differential(&self) -> Result<TensorElement, DgaError> {
        if self.degree > 3 {
            return Err(DgaError::DifferentialRange);
        }
        if self.degree == 0 {
            return Ok(TensorElement::zero(self.ring, 1));
        }
        let mut out = TensorElement::zero(self.ring, self.degree + 1);
        for (w, c) in self.terms() {
            for (pos, slot) in w.iter().enumerate() {
                // sign (-1)^pos from the Leibniz rule, an extra -1 from d
                let sign = if pos % 2 == 0 { -1 } else { 1 };
                let coeff = c * BigInt::from(sign);
                for (left, right) in slot.splits() {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend_from_slice(&w[..pos]);
                    nw.push(left);
                    nw.push(right);
                    nw.extend_from_slice(&w[pos + 1..]);
                    out.add_term(nw, coeff.clone());
                }
            }
        }
        Ok(out)
    }

    /// Coefficient reduction `T(X) -> T(X; Z_p)`: kills words with a slot
    /// entry `>= p`.
    pub fn mod_p(&self, p: u64) -> TensorElement {
        assert_eq!(self.ring, Ring::Z, "mod_p expects an integral element");
        let mut out = TensorElement::zero(Ring::Zp(p), self.degree);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<Value> = w
                    .iter()
                    .map(|i| {
                        let mut idx = serde_json::Map::new();
                        for (v, k) in i.entries() {
                            idx.insert(v.clone(), Value::from(k));
                        }
                        Value::Object(idx)
                    })
                    .collect();
                serde_json::json!({ "word": word, "coeff": c.to_string() })
            })
            .collect();
        serde_json::json!({
            "ring": self.ring.to_json(),
            "degree": self.degree,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<TensorElement, DgaError> {
        let ring = Ring::from_json(
            v.get("ring")
                .ok_or_else(|| DgaError::Parse("missing ring".into()))?,
        )
        .map_err(|e| DgaError::Parse(e.to_string()))?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| DgaError::Parse("missing degree".into()))? as usize;
        let mut out = TensorElement::zero(ring, degree);
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| DgaError::Parse("missing terms".into()))?
        {
            let word_json = t
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| DgaError::Parse("missing word".into()))?;
            if word_json.len() != degree {
                return Err(DgaError::Parse("word length must equal degree".into()));
            }
            let mut word = Vec::with_capacity(degree);
            for slot in word_json {
                let obj = slot
                    .as_object()
                    .ok_or_else(|| DgaError::Parse("slot must be an index object".into()))?;
                let mut idx = MultiIndex::new();
                for (var, k) in obj {
                    let k = k
                        .as_u64()
                        .ok_or_else(|| DgaError::Parse(format!("bad exponent for {var}")))?;
                    idx.set(var, k as u32);
                }
                word.push(idx);
            }
            let coeff: BigInt = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| DgaError::Parse("missing coeff".into()))?
                .parse()
                .map_err(|_| DgaError::Parse("bad coeff".into()))?;
            out.add_term(word, coeff);
        }
        Ok(out)
    }
}

/// The operations a binomial cup-one DGA target must provide so that the free
/// algebra can map into it. Cochain algebras and the free algebra itself both
/// qualify.
pub trait DgaTarget {
    type E1: Clone + PartialEq + std::fmt::Debug;
    type E2: Clone + PartialEq + std::fmt::Debug;
    type E3: Clone + PartialEq + std::fmt::Debug;

    fn ring(&self) -> Ring;
    /// Largest available zeta operation on degree 1 (`None` = unbounded).
    fn zeta_bound(&self) -> Option<u64>;

    fn zero1(&self) -> Self::E1;
    fn zero2(&self) -> Self::E2;
    fn add1(&self, a: &Self::E1, b: &Self::E1) -> Self::E1;
    fn add2(&self, a: &Self::E2, b: &Self::E2) -> Self::E2;
    fn scale1(&self, c: &BigInt, a: &Self::E1) -> Self::E1;
    fn scale2(&self, c: &BigInt, a: &Self::E2) -> Self::E2;

    fn cup11(&self, a: &Self::E1, b: &Self::E1) -> Self::E2;
    fn cup1_11(&self, a: &Self::E1, b: &Self::E1) -> Self::E1;
    fn cup1_21(&self, a: &Self::E2, b: &Self::E1) -> Self::E2;
    fn circ(&self, a: &Self::E2, b: &Self::E2) -> Self::E2;
    fn d1(&self, a: &Self::E1) -> Self::E2;
    fn d2(&self, a: &Self::E2) -> Self::E3;
    fn zeta1(&self, a: &Self::E1, n: u64) -> Result<Self::E1, DgaError>;
}

impl DgaTarget for CochainAlgebra {
    type E1 = Cochain;
    type E2 = Cochain;
    type E3 = Cochain;

    fn ring(&self) -> Ring {
        self.ring
    }

    fn zeta_bound(&self) -> Option<u64> {
        self.ring.modulus().map(|p| p - 1)
    }

    fn zero1(&self) -> Cochain {
        self.zero(1)
    }

    fn zero2(&self) -> Cochain {
        self.zero(2)
    }

    fn add1(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.add(b)
    }

    fn add2(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.add(b)
    }

    fn scale1(&self, c: &BigInt, a: &Cochain) -> Cochain {
        a.scale(crate::ring::big_to_i128(&self.ring.reduce_big(c)))
    }

    fn scale2(&self, c: &BigInt, a: &Cochain) -> Cochain {
        self.scale1(c, a)
    }

    fn cup11(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.cup(b).expect("cup in range")
    }

    fn cup1_11(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.cup_one(b).expect("cup-one in range")
    }

    fn cup1_21(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.cup_one(b).expect("cup-one in range")
    }

    fn circ(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.circ(b).expect("circ on 2-cochains")
    }

    fn d1(&self, a: &Cochain) -> Cochain {
        a.coboundary()
    }

    fn d2(&self, a: &Cochain) -> Cochain {
        a.coboundary()
    }

    fn zeta1(&self, a: &Cochain, n: u64) -> Result<Cochain, DgaError> {
        a.zeta(n).map_err(|_| DgaError::UnsupportedZeta { n })
    }
}

/// The free algebra, packaged as a target for universal-map round trips.
#[derive(Clone, Copy, Debug)]
pub struct FreeDga {
    pub ring: Ring,
}

impl DgaTarget for FreeDga {
    type E1 = TensorElement;
    type E2 = TensorElement;
    type E3 = TensorElement;

    fn ring(&self) -> Ring {
        self.ring
    }

    fn zeta_bound(&self) -> Option<u64> {
        self.ring.modulus().map(|p| p - 1)
    }

    fn zero1(&self) -> TensorElement {
        TensorElement::zero(self.ring, 1)
    }

    fn zero2(&self) -> TensorElement {
        TensorElement::zero(self.ring, 2)
    }

    fn add1(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.add(b).expect("degree-1 sum")
    }

    fn add2(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.add(b).expect("degree-2 sum")
    }

    fn scale1(&self, c: &BigInt, a: &TensorElement) -> TensorElement {
        a.scale(c)
    }

    fn scale2(&self, c: &BigInt, a: &TensorElement) -> TensorElement {
        a.scale(c)
    }

    fn cup11(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.cup(b).expect("cup")
    }

    fn cup1_11(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.cup_one(b).expect("cup-one (1,1)")
    }

    fn cup1_21(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.cup_one(b).expect("cup-one (2,1)")
    }

    fn circ(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.circ(b).expect("circ")
    }

    fn d1(&self, a: &TensorElement) -> TensorElement {
        a.differential().expect("d1")
    }

    fn d2(&self, a: &TensorElement) -> TensorElement {
        a.differential().expect("d2")
    }

    fn zeta1(&self, a: &TensorElement, n: u64) -> Result<TensorElement, DgaError> {
        let p = a.to_poly()?;
        let z = p
            .zeta_apply(n)
            .map_err(|_| DgaError::UnsupportedZeta { n })?;
        // zeta of an augmentation-ideal element keeps zero constant term
        TensorElement::from_poly(&z.without_constant())
    }
}

/// Seeded verification of the free-algebra identities; the report mirrors
/// the cochain verifier's shape.
pub fn verify_free_identity(
    tag: &str,
    trials: u64,
    seed: u64,
    ring: Ring,
) -> crate::ncforms::NcReport {
    use serde_json::json;
    let mut s = crate::sampling::Sampler::child(seed, tag, 2);
    let vars = ["x", "y", "w"];
    let indices: Vec<MultiIndex> = {
        let mut out = vec![MultiIndex::new()];
        for v in vars {
            let mut next = Vec::new();
            for idx in &out {
                for k in 0..=(3 - idx.total().min(3)) {
                    let mut nidx = idx.clone();
                    nidx.set(v, k as u32);
                    next.push(nidx);
                }
            }
            out = next;
        }
        out.retain(|i| !i.is_empty());
        if let Ring::Zp(p) = ring {
            out.retain(|i| (i.max_entry() as u64) < p);
        }
        out
    };
    let mut passed = true;
    let mut counterexample = None;
    for _ in 0..trials {
        let pick1 = |s: &mut crate::sampling::Sampler| {
            let idx = s.pick(&indices).clone();
            let c = BigInt::from(s.int(-3, 3));
            TensorElement::basis1(ring, idx).expect("nonempty").scale(&c)
        };
        let bad: Option<serde_json::Value> = match tag {
            "t-dd-zero" => {
                let a = pick1(&mut s);
                let w = a.cup(&pick1(&mut s)).expect("cup");
                let dd1 = a.differential().and_then(|d| d.differential()).expect("dd");
                let dd2 = w.differential().and_then(|d| d.differential()).expect("dd");
                (!dd1.is_zero() || !dd2.is_zero()).then(|| json!({"a": a.to_json()}))
            }
            "t-cup1-d" => {
                let a = pick1(&mut s);
                let b = pick1(&mut s);
                let lhs = a.cup_one(&b).and_then(|x| x.differential()).expect("lhs");
                let da = a.differential().expect("da");
                let db = b.differential().expect("db");
                let rhs = a
                    .cup(&b)
                    .expect("cup")
                    .neg()
                    .sub(&b.cup(&a).expect("cup"))
                    .and_then(|x| x.add(&da.cup_one(&b).expect("cup1")))
                    .and_then(|x| x.add(&db.cup_one(&a).expect("cup1")))
                    .and_then(|x| x.sub(&da.circ(&db).expect("circ")))
                    .expect("rhs");
                (lhs != rhs).then(|| json!({"a": a.to_json(), "b": b.to_json()}))
            }
            "t-left-hirsch" => {
                let a = pick1(&mut s);
                let b = pick1(&mut s);
                let c = pick1(&mut s);
                let lhs = a.cup(&b).and_then(|x| x.cup_one(&c)).expect("lhs");
                let rhs = a
                    .cup(&b.cup_one(&c).expect("cup1"))
                    .and_then(|x| x.add(&a.cup_one(&c).expect("cup1").cup(&b).expect("cup")))
                    .expect("rhs");
                (lhs != rhs).then(|| json!({"a": a.to_json()}))
            }
            _ => {
                passed = false;
                counterexample = Some(json!({"error": format!("unknown identity {tag}")}));
                break;
            }
        };
        if let Some(ce) = bad {
            passed = false;
            counterexample = Some(ce);
            break;
        }
    }
    crate::ncforms::NcReport {
        identity: tag.to_string(),
        trials,
        seed,
        passed,
        counterexample,
    }
}

pub const FREE_IDENTITIES: [&str; 3] = ["t-dd-zero", "t-cup1-d", "t-left-hirsch"];

/// The universal extension of a variable assignment into a target, evaluated
/// lazily on demand.
pub struct Morphism<'a, T: DgaTarget> {
    target: &'a T,
    images: BTreeMap<String, T::E1>,
}

/// Extends `phi` on variables to the morphism handle. The target zeta bound
/// is checked at evaluation time, term by term.
pub fn extend_map<'a, T: DgaTarget>(
    phi: BTreeMap<String, T::E1>,
    target: &'a T,
) -> Morphism<'a, T> {
    Morphism {
        target,
        images: phi,
    }
}

impl<'a, T: DgaTarget> Morphism<'a, T> {
    fn image_of(&self, var: &str) -> Result<&T::E1, DgaError> {
        self.images
            .get(var)
            .ok_or_else(|| DgaError::MissingVariable(var.to_string()))
    }

    /// `zeta_I(phi x_1, ..., phi x_n)` computed in the target: the product of
    /// the target's zeta operations under its degree-1 cup-one ring.
    pub fn eval_basis1(&self, index: &MultiIndex) -> Result<T::E1, DgaError> {
        if let Some(bound) = self.target.zeta_bound() {
            if index.max_entry() as u64 > bound {
                return Err(DgaError::UnsupportedZeta {
                    n: index.max_entry() as u64,
                });
            }
        }
        let mut acc: Option<T::E1> = None;
        for (var, k) in index.entries() {
            let z = self.target.zeta1(self.image_of(var)?, k as u64)?;
            acc = Some(match acc {
                None => z,
                Some(prev) => self.target.cup1_11(&prev, &z),
            });
        }
        acc.ok_or(DgaError::ConstantTerm)
    }

    pub fn eval1(&self, alpha: &TensorElement) -> Result<T::E1, DgaError> {
        if alpha.degree() != 1 {
            return Err(DgaError::DegreeMismatch(alpha.degree(), 1));
        }
        let mut acc = self.target.zero1();
        for (w, c) in alpha.terms() {
            let img = self.eval_basis1(&w[0])?;
            acc = self.target.add1(&acc, &self.target.scale1(c, &img));
        }
        Ok(acc)
    }

    pub fn eval2(&self, alpha: &TensorElement) -> Result<T::E2, DgaError> {
        if alpha.degree() != 2 {
            return Err(DgaError::DegreeMismatch(alpha.degree(), 2));
        }
        let mut acc = self.target.zero2();
        for (w, c) in alpha.terms() {
            let a = self.eval_basis1(&w[0])?;
            let b = self.eval_basis1(&w[1])?;
            let img = self.target.cup11(&a, &b);
            acc = self.target.add2(&acc, &self.target.scale2(c, &img));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::zeta_basis_cochain;
    use crate::delta::build_binomial_test_complex;
    use crate::sampling::Sampler;

    fn zi(pairs: &[(&str, u32)]) -> MultiIndex {
        MultiIndex::from_pairs(pairs)
    }

    fn b1(pairs: &[(&str, u32)]) -> TensorElement {
        TensorElement::basis1(Ring::Z, zi(pairs)).unwrap()
    }

    #[test]
    fn differential_examples() {
        // d x = 0
        let x = TensorElement::variable(Ring::Z, "x");
        assert!(x.differential().unwrap().is_zero());

        // d zeta_2(x) = - zeta_1(x) (x) zeta_1(x)
        let z2 = b1(&[("x", 2)]);
        let expected = TensorElement::word(
            Ring::Z,
            vec![zi(&[("x", 1)]), zi(&[("x", 1)])],
            BigInt::from(-1),
        )
        .unwrap();
        assert_eq!(z2.differential().unwrap(), expected);

        // d zeta_{(1,1)}(x,y) = -x (x) y - y (x) x
        let z11 = b1(&[("x", 1), ("y", 1)]);
        let e1 = TensorElement::word(
            Ring::Z,
            vec![zi(&[("x", 1)]), zi(&[("y", 1)])],
            BigInt::from(-1),
        )
        .unwrap();
        let e2 = TensorElement::word(
            Ring::Z,
            vec![zi(&[("y", 1)]), zi(&[("x", 1)])],
            BigInt::from(-1),
        )
        .unwrap();
        assert_eq!(z11.differential().unwrap(), e1.add(&e2).unwrap());
    }

    fn indices_up_to(vars: &[&str], total: u64) -> Vec<MultiIndex> {
        // all nonempty multi-indices on vars with entry sum <= total
        let mut out = vec![MultiIndex::new()];
        for v in vars {
            let mut next = Vec::new();
            for idx in &out {
                let used = idx.total();
                for k in 0..=(total - used) {
                    let mut nidx = idx.clone();
                    nidx.set(v, k as u32);
                    next.push(nidx);
                }
            }
            out = next;
        }
        out.retain(|i| !i.is_empty());
        out
    }

    #[test]
    fn differential_squares_to_zero() {
        for ring in [Ring::Z, Ring::Zp(5)] {
            for idx in indices_up_to(&["x", "y", "w"], 5) {
                let el = match TensorElement::basis1(ring, idx.clone()) {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                let dd = el
                    .differential()
                    .unwrap()
                    .differential()
                    .unwrap();
                assert!(dd.is_zero(), "dd != 0 on {idx:?} over {ring}");
            }
        }
        // and on random degree-2 words
        let mut s = Sampler::new(17);
        let idxs = indices_up_to(&["x", "y"], 3);
        for _ in 0..20 {
            let a = s.pick(&idxs).clone();
            let b = s.pick(&idxs).clone();
            let w = TensorElement::word(Ring::Z, vec![a, b], BigInt::from(s.int(-3, 3))).unwrap();
            assert!(w.differential().unwrap().differential().unwrap().is_zero());
        }
    }

    #[test]
    fn cup_is_concatenation() {
        let x = TensorElement::variable(Ring::Z, "x");
        let y = TensorElement::variable(Ring::Z, "y");
        let xy = x.cup(&y).unwrap();
        let expected =
            TensorElement::word(Ring::Z, vec![zi(&[("x", 1)]), zi(&[("y", 1)])], BigInt::one())
                .unwrap();
        assert_eq!(xy, expected);
        // associativity
        let z = TensorElement::variable(Ring::Z, "z");
        assert_eq!(
            xy.cup(&z).unwrap(),
            x.cup(&y.cup(&z).unwrap()).unwrap()
        );
        // scalars scale
        let s = TensorElement::scalar(Ring::Z, BigInt::from(3));
        assert_eq!(s.cup(&x).unwrap(), x.scale(&BigInt::from(3)));
    }

    #[test]
    fn cup_one_11_is_the_ring_product() {
        let x = TensorElement::variable(Ring::Z, "x");
        let got = x.cup_one(&x).unwrap();
        let expected = b1(&[("x", 1)])
            .add(&b1(&[("x", 2)]).scale(&BigInt::from(2)))
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn cup_one_21_hirsch_expansion() {
        // (x (x) y) u1 z = xz (x) y + x (x) yz
        let w = TensorElement::word(Ring::Z, vec![zi(&[("x", 1)]), zi(&[("y", 1)])], BigInt::one())
            .unwrap();
        let z = TensorElement::variable(Ring::Z, "z");
        let got = w.cup_one(&z).unwrap();
        let t1 = TensorElement::word(
            Ring::Z,
            vec![zi(&[("x", 1), ("z", 1)]), zi(&[("y", 1)])],
            BigInt::one(),
        )
        .unwrap();
        let t2 = TensorElement::word(
            Ring::Z,
            vec![zi(&[("x", 1)]), zi(&[("y", 1), ("z", 1)])],
            BigInt::one(),
        )
        .unwrap();
        assert_eq!(got, t1.add(&t2).unwrap());
    }

    #[test]
    fn cup_one_d_formula_on_basis_pairs() {
        // d(a u1 b) = -ab - ba + da u1 b + db u1 a - da o db
        let idxs = indices_up_to(&["x", "y"], 3);
        for a_idx in &idxs {
            for b_idx in &idxs {
                let a = TensorElement::basis1(Ring::Z, a_idx.clone()).unwrap();
                let b = TensorElement::basis1(Ring::Z, b_idx.clone()).unwrap();
                let lhs = a.cup_one(&b).unwrap().differential().unwrap();
                let da = a.differential().unwrap();
                let db = b.differential().unwrap();
                let rhs = a
                    .cup(&b)
                    .unwrap()
                    .neg()
                    .sub(&b.cup(&a).unwrap())
                    .unwrap()
                    .add(&da.cup_one(&b).unwrap())
                    .unwrap()
                    .add(&db.cup_one(&a).unwrap())
                    .unwrap()
                    .sub(&da.circ(&db).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "a = {a_idx:?}, b = {b_idx:?}");
            }
        }
    }

    #[test]
    fn left_hirsch_on_basis_triples() {
        // (a b) u1 c = a (b u1 c) + (a u1 c) b, for total index <= 4
        let idxs = indices_up_to(&["x", "y"], 2);
        for a_idx in &idxs {
            for b_idx in &idxs {
                for c_idx in &idxs {
                    if a_idx.total() + b_idx.total() + c_idx.total() > 4 {
                        continue;
                    }
                    let a = TensorElement::basis1(Ring::Z, a_idx.clone()).unwrap();
                    let b = TensorElement::basis1(Ring::Z, b_idx.clone()).unwrap();
                    let c = TensorElement::basis1(Ring::Z, c_idx.clone()).unwrap();
                    let lhs = a.cup(&b).unwrap().cup_one(&c).unwrap();
                    let rhs = a
                        .cup(&b.cup_one(&c).unwrap())
                        .unwrap()
                        .add(&a.cup_one(&c).unwrap().cup(&b).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn zeta_tower_differential() {
        // d zeta_n(x) = - sum_k zeta_k (x) zeta_{n-k}, for n <= 6
        for n in 2..=6u32 {
            let zn = b1(&[("x", n)]);
            let mut expected = TensorElement::zero(Ring::Z, 2);
            for k in 1..n {
                let w = TensorElement::word(
                    Ring::Z,
                    vec![zi(&[("x", k)]), zi(&[("x", n - k)])],
                    BigInt::from(-1),
                )
                .unwrap();
                expected = expected.add(&w).unwrap();
            }
            assert_eq!(zn.differential().unwrap(), expected);
        }
    }

    #[test]
    fn mod_p_commutes_with_differential() {
        // valid on elements supported on the mod-p basis (all entries < p);
        // reduction kills zeta_p itself but not its differential, so the
        // statement cannot extend to killed indices
        for p in [3u64, 5] {
            for idx in indices_up_to(&["x", "y"], 4) {
                if idx.max_entry() as u64 >= p {
                    continue;
                }
                let el = TensorElement::basis1(Ring::Z, idx).unwrap();
                let lhs = el.differential().unwrap().mod_p(p);
                let rhs = el.mod_p(p).differential().unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn test_target() -> (crate::delta::BinomialComplex, CochainAlgebra) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let btc = build_binomial_test_complex(
            &vars,
            &[vec![1, 0], vec![0, 1], vec![2, -1], vec![-1, 3]],
        );
        let alg = CochainAlgebra::new(btc.delta.clone(), Ring::Z);
        (btc, alg)
    }

    /// The evaluation morphism sending each variable to its coordinate
    /// cocycle on the binomial test complex.
    fn coordinate_morphism<'a>(
        btc: &crate::delta::BinomialComplex,
        alg: &'a CochainAlgebra,
    ) -> Morphism<'a, CochainAlgebra> {
        let mut phi = BTreeMap::new();
        for var in btc.vars.iter() {
            let c = zeta_basis_cochain(btc, alg.ring, &MultiIndex::single(var, 1)).unwrap();
            phi.insert(var.clone(), c);
        }
        extend_map(phi, alg)
    }

    #[test]
    fn evaluation_morphism_commutes_with_structure() {
        let (btc, alg) = test_target();
        let phi = coordinate_morphism(&btc, &alg);
        let idxs = indices_up_to(&["x", "y"], 3);
        // basis images match the zeta-basis cochains
        for idx in &idxs {
            let img = phi.eval_basis1(idx).unwrap();
            let direct = zeta_basis_cochain(&btc, Ring::Z, idx).unwrap();
            assert_eq!(img, direct);
        }
        // d, cup, cup-one, circ commute
        for a_idx in idxs.iter().take(6) {
            let a = TensorElement::basis1(Ring::Z, a_idx.clone()).unwrap();
            let lhs = phi.eval2(&a.differential().unwrap()).unwrap();
            let rhs = phi.eval1(&a).unwrap().coboundary();
            assert_eq!(lhs, rhs, "d on {a_idx:?}");
            for b_idx in idxs.iter().take(6) {
                let b = TensorElement::basis1(Ring::Z, b_idx.clone()).unwrap();
                let pa = phi.eval1(&a).unwrap();
                let pb = phi.eval1(&b).unwrap();
                assert_eq!(
                    phi.eval2(&a.cup(&b).unwrap()).unwrap(),
                    pa.cup(&pb).unwrap()
                );
                assert_eq!(
                    phi.eval1(&a.cup_one(&b).unwrap()).unwrap(),
                    pa.cup_one(&pb).unwrap()
                );
                let w1 = a.cup(&b).unwrap();
                let w2 = b.cup(&a).unwrap();
                assert_eq!(
                    phi.eval2(&w1.circ(&w2).unwrap()).unwrap(),
                    phi.eval2(&w1)
                        .unwrap()
                        .circ(&phi.eval2(&w2).unwrap())
                        .unwrap()
                );
                // (2,1) cup-one
                assert_eq!(
                    phi.eval2(&w1.cup_one(&b).unwrap()).unwrap(),
                    phi.eval2(&w1)
                        .unwrap()
                        .cup_one(&pb)
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn cup_one_12_agrees_through_evaluation() {
        // the derived bidegree-(1,2) product maps to the cochain one
        let (btc, alg) = test_target();
        let phi = coordinate_morphism(&btc, &alg);
        let idxs = indices_up_to(&["x", "y"], 2);
        for a_idx in &idxs {
            for b_idx in idxs.iter().take(4) {
                for c_idx in idxs.iter().take(4) {
                    let a = TensorElement::basis1(Ring::Z, a_idx.clone()).unwrap();
                    let bc = TensorElement::basis1(Ring::Z, b_idx.clone())
                        .unwrap()
                        .cup(&TensorElement::basis1(Ring::Z, c_idx.clone()).unwrap())
                        .unwrap();
                    let lhs = phi.eval2(&a.cup_one(&bc).unwrap()).unwrap();
                    let rhs = phi
                        .eval1(&a)
                        .unwrap()
                        .cup_one(&phi.eval2(&bc).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "a = {a_idx:?}, bc = ({b_idx:?}, {c_idx:?})");
                }
            }
        }
    }

    #[test]
    fn torus_target_extension_sends_zeta_to_zeta() {
        let built = crate::delta::build_torus();
        let alg = CochainAlgebra::new(built.delta.clone(), Ring::Z);
        let a1 = alg.from_labeled(&built.labeled["a1"], 1);
        let mut phi = BTreeMap::new();
        phi.insert("x".to_string(), a1.clone());
        let m = extend_map(phi, &alg);
        let z2 = b1(&[("x", 2)]);
        assert_eq!(m.eval1(&z2).unwrap(), a1.zeta(2).unwrap());
        // and the morphism commutes with d on zeta powers of the cocycle
        for n in 1..=4u32 {
            let zn = b1(&[("x", n)]);
            let lhs = m.eval1(&zn).unwrap().coboundary();
            let rhs = m.eval2(&zn.differential().unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn identity_map_acts_as_identity() {
        let free = FreeDga { ring: Ring::Z };
        let mut phi = BTreeMap::new();
        for v in ["x", "y"] {
            phi.insert(v.to_string(), TensorElement::variable(Ring::Z, v));
        }
        let m = extend_map(phi, &free);
        for idx in indices_up_to(&["x", "y"], 4) {
            let el = TensorElement::basis1(Ring::Z, idx).unwrap();
            assert_eq!(m.eval1(&el).unwrap(), el);
        }
    }

    #[test]
    fn morphisms_commute_with_differentials_on_zeta_powers() {
        // phi(x) a cocycle forces commutation on zeta_n(x) for n <= 4
        let (btc, alg) = test_target();
        let phi = coordinate_morphism(&btc, &alg);
        for n in 1..=4u32 {
            let zn = b1(&[("x", n)]);
            let lhs = phi.eval1(&zn).unwrap().coboundary();
            let rhs = phi.eval2(&zn.differential().unwrap()).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn set_map_round_trip() {
        // the bijection between morphisms and variable assignments: restrict
        // then re-extend, images agree on all of degree <= 2
        let (btc, alg) = test_target();
        let mut s = Sampler::new(23);
        let basis = crate::cochain::verify::cocycle_basis(&btc.delta, Ring::Z);
        for _ in 0..20 {
            let mut phi_map = BTreeMap::new();
            for var in &btc.vars {
                let z = crate::cochain::verify::random_cocycle(&btc.delta, Ring::Z, &basis, &mut s);
                phi_map.insert(var.clone(), z);
            }
            let m = extend_map(phi_map.clone(), &alg);
            // restriction to variables returns the set map
            for (var, img) in &phi_map {
                let x = TensorElement::variable(Ring::Z, var);
                assert_eq!(m.eval1(&x).unwrap(), *img);
            }
            // and the re-extension matches on sample elements
            let m2 = extend_map(phi_map, &alg);
            for idx in indices_up_to(&["x", "y"], 3).iter().take(8) {
                let el = TensorElement::basis1(Ring::Z, idx.clone()).unwrap();
                assert_eq!(m.eval1(&el).unwrap(), m2.eval1(&el).unwrap());
            }
        }
    }

    #[test]
    fn zeta_unavailable_in_small_characteristic() {
        // an index needing zeta_3 exists over Z but cannot map into a mod-3
        // target, where only zeta_1 and zeta_2 are defined
        let btc = build_binomial_test_complex(&["x".to_string()], &[vec![1]]);
        let alg = CochainAlgebra::new(btc.delta.clone(), Ring::Zp(3));
        let mut phi = BTreeMap::new();
        phi.insert(
            "x".to_string(),
            zeta_basis_cochain(&btc, Ring::Zp(3), &MultiIndex::single("x", 1)).unwrap(),
        );
        let m = extend_map(phi, &alg);
        assert!(m.eval_basis1(&MultiIndex::single("x", 2)).is_ok());
        assert!(matches!(
            m.eval_basis1(&MultiIndex::single("x", 3)),
            Err(DgaError::UnsupportedZeta { n: 3 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let w = TensorElement::word(
            Ring::Z,
            vec![zi(&[("x", 2)]), zi(&[("y", 1)])],
            BigInt::from(-7),
        )
        .unwrap();
        let back = TensorElement::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn free_identity_suite_passes() {
        for tag in FREE_IDENTITIES {
            for ring in [Ring::Z, Ring::Zp(3), Ring::Zp(5)] {
                let report = verify_free_identity(tag, 40, 13, ring);
                assert!(
                    report.passed,
                    "{tag} failed over {ring}: {:?}",
                    report.counterexample
                );
            }
        }
    }

    #[test]
    fn out_of_range_bidegrees_rejected() {
        let x = TensorElement::variable(Ring::Z, "x");
        let deg2 = x.cup(&x).unwrap();
        let deg3 = deg2.cup(&x).unwrap();
        assert!(matches!(
            deg2.cup_one(&deg2),
            Err(DgaError::UnsupportedBidegree(2, 2))
        ));
        assert!(matches!(
            deg3.cup_one(&x),
            Err(DgaError::UnsupportedBidegree(3, 1))
        ));
        assert!(matches!(
            deg3.cup(&x).unwrap().differential(),
            Err(DgaError::DifferentialRange)
        ));
    }
}
