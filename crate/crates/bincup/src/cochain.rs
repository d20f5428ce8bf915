//! Simplicial cochain algebras: coboundary, cup and cup-one products, the
//! pointwise circ pairing, binomial (zeta) operations, and the mod-p
//! Bockstein. Everything is exact; values are checked 128-bit integers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::delta::{BinomialComplex, DeltaMap, DeltaSet};
use crate::intpoly::{zeta_binomial, MultiIndex};
use crate::ring::{big_to_i128, Ring};

pub mod verify;

#[derive(Debug, Error, PartialEq)]
pub enum CochainError {
    #[error("cochains live on different complexes")]
    ComplexMismatch,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("degree {0} out of range for this operation")]
    Degree(usize),
    #[error("zeta_{n} is undefined over Z_{p}")]
    Domain { n: u64, p: u64 },
    #[error("input is not a cocycle")]
    NotACocycle,
    #[error("integer overflow in cochain arithmetic")]
    Overflow,
    #[error("malformed cochain JSON: {0}")]
    Parse(String),
}

fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cochain value overflow")
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cochain value overflow")
}

/// A ring-valued function on the `n`-simplices of a fixed complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    pub complex: Arc<DeltaSet>,
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<i128>,
}

impl Cochain {
    pub fn zero(complex: Arc<DeltaSet>, ring: Ring, degree: usize) -> Self {
        let n = complex.count(degree);
        Cochain {
            complex,
            degree,
            ring,
            values: vec![0; n],
        }
    }

    pub fn from_values(
        complex: Arc<DeltaSet>,
        ring: Ring,
        degree: usize,
        values: Vec<i128>,
    ) -> Self {
        assert_eq!(values.len(), complex.count(degree), "value vector length");
        let values = values.iter().map(|&v| ring.reduce_i128(v)).collect();
        Cochain {
            complex,
            degree,
            ring,
            values,
        }
    }

    /// The unit: degree-0 cochain with value 1 on every vertex.
    pub fn unit(complex: Arc<DeltaSet>, ring: Ring) -> Self {
        let n = complex.count(0);
        Cochain {
            complex,
            degree: 0,
            ring,
            values: vec![1; n],
        }
    }

    /// Constant degree-1 cochain, the unit of the cup-one ring on degree 1.
    pub fn all_ones(complex: Arc<DeltaSet>, ring: Ring) -> Self {
        let n = complex.count(1);
        Cochain {
            complex,
            degree: 1,
            ring,
            values: vec![ring.reduce_i128(1); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn compat(&self, other: &Cochain) -> Result<(), CochainError> {
        if !Arc::ptr_eq(&self.complex, &other.complex) && self.complex != other.complex {
            return Err(CochainError::ComplexMismatch);
        }
        if self.ring != other.ring {
            return Err(CochainError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.compat(other).expect("cochain addition");
        assert_eq!(self.degree, other.degree);
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| self.ring.reduce_i128(checked_add(a, b)))
            .collect();
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            ring: self.ring,
            values,
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i128) -> Cochain {
        let values = self
            .values
            .iter()
            .map(|&v| self.ring.reduce_i128(checked_mul(v, c)))
            .collect();
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            ring: self.ring,
            values,
        }
    }

    /// `(delta u)(s) = u(boundary s) = sum_i (-1)^i u(d_i s)`.
    pub fn coboundary(&self) -> Cochain {
        assert!(self.degree < crate::delta::MAX_DIM, "degree too high");
        let n = self.degree + 1;
        let count = self.complex.count(n);
        let mut values = vec![0i128; count];
        for (s, value) in values.iter_mut().enumerate() {
            let mut acc = 0i128;
            for i in 0..=n {
                let f = self.complex.face(n, s, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                acc = checked_add(acc, checked_mul(sign, self.values[f]));
            }
            *value = self.ring.reduce_i128(acc);
        }
        Cochain {
            complex: self.complex.clone(),
            degree: n,
            ring: self.ring,
            values,
        }
    }

    /// Cup product: front face times back face.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.compat(other)?;
        let (p, q) = (self.degree, other.degree);
        let n = p + q;
        if n > crate::delta::MAX_DIM {
            return Err(CochainError::Degree(n));
        }
        let count = self.complex.count(n);
        let mut values = vec![0i128; count];
        let front: Vec<usize> = (0..=p).collect();
        let back: Vec<usize> = (p..=n).collect();
        for (s, value) in values.iter_mut().enumerate() {
            let (_, fidx) = self.complex.face_subset(n, s, &front);
            let (_, bidx) = self.complex.face_subset(n, s, &back);
            *value = self
                .ring
                .reduce_i128(checked_mul(self.values[fidx], other.values[bidx]));
        }
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: n,
            ring: self.ring,
            values,
        })
    }

    /// Steenrod cup-one product
    /// `sum_{j=0}^{p-1} (-1)^{(p-j)(q+1)} u([0..j, j+q..]) v([j..j+q])`;
    /// zero when either factor has degree 0.
    pub fn cup_one(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.compat(other)?;
        let (p, q) = (self.degree, other.degree);
        if p == 0 || q == 0 {
            let degree = (p + q).saturating_sub(1);
            return Ok(Cochain::zero(self.complex.clone(), self.ring, degree));
        }
        let n = p + q - 1;
        if n > crate::delta::MAX_DIM {
            return Err(CochainError::Degree(n));
        }
        let count = self.complex.count(n);
        let mut values = vec![0i128; count];
        for j in 0..p {
            let sign = if ((p - j) * (q + 1)) % 2 == 0 { 1 } else { -1 };
            let left: Vec<usize> = (0..=j).chain(j + q..=n).collect();
            let right: Vec<usize> = (j..=j + q).collect();
            for (s, value) in values.iter_mut().enumerate() {
                let (_, li) = self.complex.face_subset(n, s, &left);
                let (_, ri) = self.complex.face_subset(n, s, &right);
                let term = checked_mul(sign, checked_mul(self.values[li], other.values[ri]));
                *value = self.ring.reduce_i128(checked_add(*value, term));
            }
        }
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: n,
            ring: self.ring,
            values,
        })
    }

    /// Pointwise pairing of 2-cochains.
    pub fn circ(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.compat(other)?;
        if self.degree != 2 || other.degree != 2 {
            return Err(CochainError::Degree(self.degree.max(other.degree)));
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| self.ring.reduce_i128(checked_mul(a, b)))
            .collect();
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: 2,
            ring: self.ring,
            values,
        })
    }

    /// Binomial operation on a 1-cochain: `zeta_n(f)(e) = binom(f(e), n)`.
    pub fn zeta(&self, n: u64) -> Result<Cochain, CochainError> {
        assert_eq!(self.degree, 1, "zeta acts on 1-cochains");
        if let Ring::Zp(p) = self.ring {
            if n >= p {
                return Err(CochainError::Domain { n, p });
            }
        }
        let values = self
            .values
            .iter()
            .map(|&v| {
                let b = zeta_binomial(&BigInt::from(v), n);
                self.ring.reduce_i128(big_to_i128(&b))
            })
            .collect();
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: 1,
            ring: self.ring,
            values,
        })
    }

    /// Mod-p Bockstein of a 1-cocycle class: lift to the canonical integer
    /// representative, take the integer coboundary, divide by `p`, reduce.
    pub fn bockstein(&self) -> Result<Cochain, CochainError> {
        let Ring::Zp(p) = self.ring else {
            return Err(CochainError::Degree(0));
        };
        assert_eq!(self.degree, 1);
        let lift = Cochain {
            complex: self.complex.clone(),
            degree: 1,
            ring: Ring::Z,
            values: self.values.clone(), // canonical representatives 0..p-1
        };
        let dlift = lift.coboundary();
        let pm = p as i128;
        let mut values = Vec::with_capacity(dlift.values.len());
        for v in &dlift.values {
            if v % pm != 0 {
                return Err(CochainError::NotACocycle);
            }
            values.push((v / pm).rem_euclid(pm));
        }
        Ok(Cochain {
            complex: self.complex.clone(),
            degree: 2,
            ring: self.ring,
            values,
        })
    }

    /// Pullback along a delta-set map: `(h^# u)(s) = u(h(s))`.
    pub fn pullback(map: &DeltaMap, u: &Cochain) -> Cochain {
        assert!(Arc::ptr_eq(&map.to, &u.complex) || *map.to == *u.complex);
        let count = map.from.count(u.degree);
        let values = (0..count)
            .map(|s| u.values[map.images[u.degree][s]])
            .collect();
        Cochain {
            complex: map.from.clone(),
            degree: u.degree,
            ring: u.ring,
            values,
        }
    }

    pub fn to_json(&self, complex_id: &str) -> String {
        let mut entries: BTreeMap<&str, i128> = BTreeMap::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0 {
                entries.insert(self.complex.name(self.degree, i), v);
            }
        }
        let mut s = String::new();
        write!(
            s,
            "{{\"complex\":{},\"degree\":{},\"ring\":{},\"values\":{{",
            serde_json::to_string(complex_id).unwrap(),
            self.degree,
            self.ring.to_json()
        )
        .unwrap();
        for (i, (name, v)) in entries.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{}:\"{}\"", serde_json::to_string(name).unwrap(), v).unwrap();
        }
        s.push_str("}}");
        s
    }

    /// Reads the cochain JSON against a known complex; simplices not listed
    /// get the value 0.
    pub fn from_json(complex: Arc<DeltaSet>, text: &str) -> Result<Cochain, CochainError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| CochainError::Parse(e.to_string()))?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| CochainError::Parse("missing degree".into()))? as usize;
        if degree > crate::delta::MAX_DIM {
            return Err(CochainError::Parse(format!("degree {degree} too large")));
        }
        let ring = Ring::from_json(
            v.get("ring")
                .ok_or_else(|| CochainError::Parse("missing ring".into()))?,
        )
        .map_err(|e| CochainError::Parse(e.to_string()))?;
        let mut values = vec![0i128; complex.count(degree)];
        if let Some(obj) = v.get("values").and_then(Value::as_object) {
            for (name, val) in obj {
                let idx = complex
                    .index_of(degree, name)
                    .ok_or_else(|| CochainError::Parse(format!("unknown simplex {name}")))?;
                let s = val
                    .as_str()
                    .ok_or_else(|| CochainError::Parse("values must be decimal strings".into()))?;
                let parsed: i128 = s
                    .parse()
                    .map_err(|_| CochainError::Parse(format!("bad value {s}")))?;
                values[idx] = ring.reduce_i128(parsed);
            }
        }
        Ok(Cochain {
            complex,
            degree,
            ring,
            values,
        })
    }
}

/// The cochain algebra of a complex over a ring, packaged for use as a
/// cup-one DGA target.
#[derive(Clone, Debug)]
pub struct CochainAlgebra {
    pub complex: Arc<DeltaSet>,
    pub ring: Ring,
}

impl CochainAlgebra {
    pub fn new(complex: Arc<DeltaSet>, ring: Ring) -> Self {
        CochainAlgebra { complex, ring }
    }

    pub fn zero(&self, degree: usize) -> Cochain {
        Cochain::zero(self.complex.clone(), self.ring, degree)
    }

    pub fn from_labeled(&self, values: &[i128], degree: usize) -> Cochain {
        Cochain::from_values(self.complex.clone(), self.ring, degree, values.to_vec())
    }
}

/// The cochain on a binomial test complex whose value on the 1-simplex `a` is
/// `zeta_I(a)`.
pub fn zeta_basis_cochain(
    btc: &BinomialComplex,
    ring: Ring,
    index: &MultiIndex,
) -> Result<Cochain, CochainError> {
    if let Ring::Zp(p) = ring {
        if index.max_entry() as u64 >= p {
            return Err(CochainError::Domain {
                n: index.max_entry() as u64,
                p,
            });
        }
    }
    let mut values = Vec::with_capacity(btc.functions.len());
    for f in &btc.functions {
        let mut acc: i128 = 1;
        for (var, k) in index.entries() {
            let pos = btc
                .vars
                .iter()
                .position(|v| v == var)
                .expect("index variable must be declared in the complex");
        acc = checked_mul(
                acc,
                big_to_i128(&zeta_binomial(&BigInt::from(f[pos]), k as u64)),
            );
        }
        values.push(ring.reduce_i128(acc));
    }
    Ok(Cochain {
        complex: btc.delta.clone(),
        degree: 1,
        ring,
        values,
    })
}

/// Value of the no-right-Hirsch witness: on the standard 2-simplex with
/// `u1 = [0,1]`-dual, `u2 = [1,2]`-dual, and `u3` taking `n` on `[0,2]`,
/// returns `(u3 cup_1 (u1 cup u2))` evaluated on the triangle. The outcome
/// `-n` depends on `n`, which rules out any universal constant formula.
pub fn no_right_hirsch_witness(n: i128) -> i128 {
    let ds = Arc::new(crate::delta::build_simplex2());
    let e01 = ds.index_of(1, "e01").unwrap();
    let e12 = ds.index_of(1, "e12").unwrap();
    let e02 = ds.index_of(1, "e02").unwrap();
    let mk = |idx: usize, val: i128| {
        let mut values = vec![0i128; 3];
        values[idx] = val;
        Cochain::from_values(ds.clone(), Ring::Z, 1, values)
    };
    let u1 = mk(e01, 1);
    let u2 = mk(e12, 1);
    let u3 = mk(e02, n);
    let cup = u1.cup(&u2).unwrap();
    let res = u3.cup_one(&cup).unwrap();
    res.values[0]
}
