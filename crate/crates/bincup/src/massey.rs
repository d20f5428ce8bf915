//! Ordinary, repeated, and restricted Massey products of degree-one classes,
//! their indeterminacy subgroups, the Bockstein comparison, and the
//! homotopy-type discrimination they afford.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cochain::{Cochain, CochainError};
use crate::delta::{build_presentation_xk, BuiltComplex, DeltaMap, DeltaSet};
use crate::exactla::{cohomology, kernel_z, solve, CohomologyPresentation, FpMat, IntMat, LaError};
use crate::freedga::TensorElement;
use crate::intpoly::{polya_to_zeta, RationalPoly};
use crate::ring::{big_to_i128, Ring};

#[derive(Debug, Error)]
pub enum MasseyError {
    #[error("product undefined: {obstruction} is nonzero in H^2")]
    Undefined { obstruction: String },
    #[error("class coordinates have wrong length: expected {expected}, got {got}")]
    Coordinates { expected: usize, got: usize },
    #[error("n-fold products need n >= 3, got {0}")]
    FoldRange(u64),
    #[error("zeta_{n} is undefined over Z_{p}")]
    Domain { n: u64, p: u64 },
    #[error("cochain error: {0}")]
    Cochain(String),
    #[error("linear algebra error: {0}")]
    La(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl From<CochainError> for MasseyError {
    fn from(e: CochainError) -> Self {
        MasseyError::Cochain(e.to_string())
    }
}

impl From<LaError> for MasseyError {
    fn from(e: LaError) -> Self {
        MasseyError::La(e.to_string())
    }
}

/// Cohomology of a complex in degrees one and two, with the coboundary data
/// every product computation needs.
pub struct CohomologyContext {
    pub complex: Arc<DeltaSet>,
    pub ring: Ring,
    pub h1: CohomologyPresentation,
    pub h2: CohomologyPresentation,
    d1: IntMat,
}

impl CohomologyContext {
    pub fn new(complex: Arc<DeltaSet>, ring: Ring) -> Result<Self, MasseyError> {
        let d0 = complex.coboundary_matrix(0);
        let d1 = complex.coboundary_matrix(1);
        let d2 = complex.coboundary_matrix(2);
        let h1 = cohomology(&d1, &d0, ring, 1)?;
        let h2 = cohomology(&d2, &d1, ring, 2)?;
        Ok(CohomologyContext {
            complex,
            ring,
            h1,
            h2,
            d1,
        })
    }

    /// The canonical cocycle representative of the class with the given
    /// coordinates.
    pub fn cocycle_rep(&self, coords: &[BigInt]) -> Result<Cochain, MasseyError> {
        if coords.len() != self.h1.dim() {
            return Err(MasseyError::Coordinates {
                expected: self.h1.dim(),
                got: coords.len(),
            });
        }
        let n = self.complex.count(1);
        let mut values = vec![0i128; n];
        for (c, basis) in coords.iter().zip(self.h1.cocycle_basis.iter()) {
            if c.is_zero() {
                continue;
            }
            let c = big_to_i128(c);
            for (v, b) in values.iter_mut().zip(basis.iter()) {
                *v += c * big_to_i128(b);
            }
        }
        Ok(Cochain::from_values(
            self.complex.clone(),
            self.ring,
            1,
            values,
        ))
    }

    pub fn project1(&self, c: &Cochain) -> Result<Vec<BigInt>, MasseyError> {
        let vals: Vec<BigInt> = c.values.iter().map(|&v| BigInt::from(v)).collect();
        Ok(self.h1.project(&vals)?)
    }

    pub fn project2(&self, c: &Cochain) -> Result<Vec<BigInt>, MasseyError> {
        let vals: Vec<BigInt> = c.values.iter().map(|&v| BigInt::from(v)).collect();
        Ok(self.h2.project(&vals)?)
    }

    /// Any 1-cochain `x` with `delta x = target`, or `None`.
    pub fn solve_bounding(&self, target: &Cochain) -> Option<Cochain> {
        let b: Vec<BigInt> = target.values.iter().map(|&v| BigInt::from(v)).collect();
        let x = solve(&self.d1, &b, self.ring)?;
        let values: Vec<i128> = x.iter().map(big_to_i128).collect();
        Some(Cochain::from_values(
            self.complex.clone(),
            self.ring,
            1,
            values,
        ))
    }

    /// Class coordinates of a labeled integer cochain shipped by a builder.
    pub fn class_of_labeled(&self, values: &[i128]) -> Result<Vec<BigInt>, MasseyError> {
        let c = Cochain::from_values(self.complex.clone(), self.ring, 1, values.to_vec());
        self.project1(&c)
    }

    fn h1_basis_cochains(&self) -> Vec<Cochain> {
        self.h1
            .cocycle_basis
            .iter()
            .map(|b| {
                let values: Vec<i128> = b.iter().map(big_to_i128).collect();
                Cochain::from_values(self.complex.clone(), self.ring, 1, values)
            })
            .collect()
    }
}

/// A Massey product outcome as a cohomology coset: representative class
/// coordinates plus generators of the indeterminacy subgroup.
#[derive(Clone, Debug)]
pub struct MasseyResult {
    pub product: String,
    pub inputs: Vec<Vec<BigInt>>,
    pub representative: Vec<BigInt>,
    /// `None` marks "not computed" (repeated products beyond n = 3)
    pub indeterminacy: Option<Vec<Vec<BigInt>>>,
    pub contains_zero: Option<bool>,
}

impl MasseyResult {
    pub fn to_json(&self) -> Value {
        let coords = |v: &Vec<BigInt>| -> Value {
            Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
        };
        let mut out = json!({
            "product": self.product,
            "inputs": self.inputs.iter().map(coords).collect::<Vec<_>>(),
            "representative": coords(&self.representative),
        });
        match &self.indeterminacy {
            Some(gens) => {
                out["indeterminacy"] = Value::Array(gens.iter().map(coords).collect());
            }
            None => {
                out["indeterminacy"] = Value::String("not computed".into());
            }
        }
        if let Some(cz) = self.contains_zero {
            out["contains_zero"] = Value::Bool(cz);
        }
        out
    }
}

fn nonzero_gens(gens: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    gens.into_iter()
        .filter(|g| g.iter().any(|c| !c.is_zero()))
        .collect()
}

/// A defining system for the triple product: three cocycles and the two
/// bounding cochains of the triangular recursion.
pub struct TripleSystem {
    pub a1: Cochain,
    pub a2: Cochain,
    pub a3: Cochain,
    pub a12: Cochain,
    pub a23: Cochain,
}

impl TripleSystem {
    pub fn check(&self) -> bool {
        self.a1.coboundary().is_zero()
            && self.a2.coboundary().is_zero()
            && self.a3.coboundary().is_zero()
            && self.a12.coboundary() == self.a1.cup(&self.a2).expect("cup")
            && self.a23.coboundary() == self.a2.cup(&self.a3).expect("cup")
    }

    /// The product cocycle `a1 a23 + a12 a3`.
    pub fn witness(&self) -> Result<Cochain, MasseyError> {
        let w = self.a1.cup(&self.a23)?.add(&self.a12.cup(&self.a3)?);
        if !w.coboundary().is_zero() {
            return Err(MasseyError::Internal("witness must be a cocycle".into()));
        }
        Ok(w)
    }
}

/// The canonical defining system for `<u1, u2, u3>`, or the obstructed pair.
pub fn triple_defining_system(
    ctx: &CohomologyContext,
    u1: &[BigInt],
    u2: &[BigInt],
    u3: &[BigInt],
) -> Result<TripleSystem, MasseyError> {
    let a1 = ctx.cocycle_rep(u1)?;
    let a2 = ctx.cocycle_rep(u2)?;
    let a3 = ctx.cocycle_rep(u3)?;
    let c12 = a1.cup(&a2)?;
    if !ctx.project2(&c12)?.iter().all(Zero::is_zero) {
        return Err(MasseyError::Undefined {
            obstruction: "u1 u2".into(),
        });
    }
    let c23 = a2.cup(&a3)?;
    if !ctx.project2(&c23)?.iter().all(Zero::is_zero) {
        return Err(MasseyError::Undefined {
            obstruction: "u2 u3".into(),
        });
    }
    let a12 = ctx
        .solve_bounding(&c12)
        .ok_or_else(|| MasseyError::Internal("vanishing class must bound".into()))?;
    let a23 = ctx
        .solve_bounding(&c23)
        .ok_or_else(|| MasseyError::Internal("vanishing class must bound".into()))?;
    Ok(TripleSystem {
        a1,
        a2,
        a3,
        a12,
        a23,
    })
}

/// The Massey triple product of degree-one classes, defined when
/// `u1 u2 = u2 u3 = 0`; the result is the class of `a1 a23 + a12 a3` with
/// indeterminacy `u1 H^1 + H^1 u3`.
pub fn triple_massey(
    ctx: &CohomologyContext,
    u1: &[BigInt],
    u2: &[BigInt],
    u3: &[BigInt],
) -> Result<MasseyResult, MasseyError> {
    let sys = triple_defining_system(ctx, u1, u2, u3)?;
    debug_assert!(sys.check());
    let w = sys.witness()?;
    let (a1, a3) = (&sys.a1, &sys.a3);
    let representative = ctx.project2(&w)?;
    let mut gens = Vec::new();
    for b in ctx.h1_basis_cochains() {
        gens.push(ctx.project2(&a1.cup(&b)?)?);
        gens.push(ctx.project2(&b.cup(&a3)?)?);
    }
    let gens = nonzero_gens(gens);
    let contains_zero = ctx.h2.class_in_subgroup(&gens, &representative);
    Ok(MasseyResult {
        product: "triple".into(),
        inputs: vec![u1.to_vec(), u2.to_vec(), u3.to_vec()],
        representative,
        indeterminacy: Some(gens),
        contains_zero: Some(contains_zero),
    })
}

/// The n-fold repeated product along the zeta route: the class of
/// `-sum_k zeta_k(a) zeta_{n-k}(a)`. Indeterminacy is computed only for
/// `n = 3`, where it is the triple-product one.
pub fn nfold_repeated_zeta(
    ctx: &CohomologyContext,
    u: &[BigInt],
    n: u64,
) -> Result<MasseyResult, MasseyError> {
    if n < 3 {
        return Err(MasseyError::FoldRange(n));
    }
    if let Ring::Zp(p) = ctx.ring {
        if n > p {
            return Err(MasseyError::Domain { n, p });
        }
    }
    let a = ctx.cocycle_rep(u)?;
    let mut w = Cochain::zero(ctx.complex.clone(), ctx.ring, 2);
    for k in 1..n {
        let term = a.zeta(k)?.cup(&a.zeta(n - k)?)?;
        w = w.sub(&term);
    }
    if !w.coboundary().is_zero() {
        return Err(MasseyError::Internal("zeta representative must be a cocycle".into()));
    }
    let representative = ctx.project2(&w)?;
    let (indeterminacy, contains_zero) = if n == 3 {
        let mut gens = Vec::new();
        for b in ctx.h1_basis_cochains() {
            gens.push(ctx.project2(&a.cup(&b)?)?);
            gens.push(ctx.project2(&b.cup(&a)?)?);
        }
        let gens = nonzero_gens(gens);
        let cz = ctx.h2.class_in_subgroup(&gens, &representative);
        (Some(gens), Some(cz))
    } else {
        (None, None)
    };
    Ok(MasseyResult {
        product: "nfold-zeta".into(),
        inputs: vec![u.to_vec()],
        representative,
        indeterminacy,
        contains_zero,
    })
}

/// A defining system for the restricted triple product.
pub struct DefiningSystem {
    pub a1: Cochain,
    pub a2: Cochain,
    pub a12: Cochain,
}

impl DefiningSystem {
    /// The recursion the system must satisfy: both classes are cocycles and
    /// `delta a12 = a1 a2`.
    pub fn check(&self) -> bool {
        self.a1.coboundary().is_zero()
            && self.a2.coboundary().is_zero()
            && self.a12.coboundary() == self.a1.cup(&self.a2).expect("cup")
    }

    /// The restricted-product cocycle `a1 a12 - zeta_2(a1) a2`.
    pub fn gamma(&self) -> Result<Cochain, MasseyError> {
        let g = self
            .a1
            .cup(&self.a12)?
            .sub(&self.a1.zeta(2)?.cup(&self.a2)?);
        if !g.coboundary().is_zero() {
            return Err(MasseyError::Internal("gamma must be a cocycle".into()));
        }
        Ok(g)
    }
}

/// The restricted Massey triple product `<u1, u1, u2>_r`, defined when
/// `u1 u2 = 0`; its indeterminacy is `u1 H^1` only.
pub fn restricted_triple(
    ctx: &CohomologyContext,
    u1: &[BigInt],
    u2: &[BigInt],
) -> Result<MasseyResult, MasseyError> {
    let sys = restricted_defining_system(ctx, u1, u2)?;
    let gamma = sys.gamma()?;
    let representative = ctx.project2(&gamma)?;
    let mut gens = Vec::new();
    for b in ctx.h1_basis_cochains() {
        gens.push(ctx.project2(&sys.a1.cup(&b)?)?);
    }
    let gens = nonzero_gens(gens);
    let contains_zero = ctx.h2.class_in_subgroup(&gens, &representative);
    Ok(MasseyResult {
        product: "restricted_triple".into(),
        inputs: vec![u1.to_vec(), u2.to_vec()],
        representative,
        indeterminacy: Some(gens),
        contains_zero: Some(contains_zero),
    })
}

/// The canonical defining system for `<u1, u1, u2>_r`.
pub fn restricted_defining_system(
    ctx: &CohomologyContext,
    u1: &[BigInt],
    u2: &[BigInt],
) -> Result<DefiningSystem, MasseyError> {
    let a1 = ctx.cocycle_rep(u1)?;
    let a2 = ctx.cocycle_rep(u2)?;
    let c12 = a1.cup(&a2)?;
    if !ctx.project2(&c12)?.iter().all(Zero::is_zero) {
        return Err(MasseyError::Undefined {
            obstruction: "u1 u2".into(),
        });
    }
    let a12 = ctx
        .solve_bounding(&c12)
        .ok_or_else(|| MasseyError::Internal("vanishing class must bound".into()))?;
    Ok(DefiningSystem { a1, a2, a12 })
}

/// The subset `<u>_r` of H^2: restricted products against a basis of the
/// annihilator of `u`, generating a subgroup by the additivity law, plus the
/// common indeterminacy `u H^1`.
pub struct RestrictedInvariant {
    pub annihilator_basis: Vec<Vec<BigInt>>,
    /// classes of gamma on the annihilator basis; the invariant subset is
    /// their integer span plus the indeterminacy subgroup
    pub generators: Vec<Vec<BigInt>>,
    pub indeterminacy: Vec<Vec<BigInt>>,
}

impl RestrictedInvariant {
    /// For a rank-one H^2 over `Z`: the invariant subset is `g Z` where `g`
    /// is the gcd of all generator coordinates.
    pub fn cyclic_generator(&self) -> Option<BigInt> {
        let mut g = BigInt::zero();
        for gen in self.generators.iter().chain(self.indeterminacy.iter()) {
            if gen.len() != 1 {
                return None;
            }
            g = g.gcd(&gen[0]);
        }
        Some(g)
    }

    pub fn to_json(&self) -> Value {
        let coords = |v: &Vec<BigInt>| -> Value {
            Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
        };
        json!({
            "product": "u-invariant",
            "annihilator_basis": self.annihilator_basis.iter().map(coords).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(coords).collect::<Vec<_>>(),
            "indeterminacy": self.indeterminacy.iter().map(coords).collect::<Vec<_>>(),
        })
    }
}

/// Basis of `ann(u) = {w : u cup w = 0}` inside H^1, in class coordinates.
pub fn annihilator_basis(
    ctx: &CohomologyContext,
    u: &[BigInt],
) -> Result<Vec<Vec<BigInt>>, MasseyError> {
    let a = ctx.cocycle_rep(u)?;
    let dim1 = ctx.h1.dim();
    let dim2 = ctx.h2.dim();
    // columns: classes of a cup b_j
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for b in ctx.h1_basis_cochains() {
        cols.push(ctx.project2(&a.cup(&b)?)?);
    }
    match ctx.ring {
        Ring::Z => {
            // solve M x = 0 modulo the torsion relations of H^2; unknowns are
            // x (dim1) and the relation multipliers
            let t2 = ctx.h2.torsion.len();
            let mut aug_cols = cols;
            for (t, modulus) in ctx.h2.torsion.iter().enumerate() {
                let mut rel = vec![BigInt::zero(); dim2];
                rel[ctx.h2.free_rank + t] = modulus.clone();
                aug_cols.push(rel);
            }
            let m = IntMat::hcat_cols(&aug_cols, dim2);
            let k = kernel_z(&m);
            let mut basis: Vec<Vec<BigInt>> = Vec::new();
            for j in 0..k.cols {
                let col = k.col(j);
                let x: Vec<BigInt> = col[..dim1].to_vec();
                if x.iter().any(|c| !c.is_zero()) {
                    basis.push(x);
                }
            }
            let _ = t2;
            Ok(basis)
        }
        Ring::Zp(p) => {
            let m = IntMat::hcat_cols(&cols, dim2);
            let k = FpMat::from_int(&m, p).kernel();
            let mut basis = Vec::new();
            for j in 0..k.cols {
                let x: Vec<BigInt> = (0..k.rows).map(|i| BigInt::from(k.get(i, j))).collect();
                if x.iter().any(|c| !c.is_zero()) {
                    basis.push(x);
                }
            }
            Ok(basis)
        }
    }
}

/// Computes `<u>_r` as generators over the annihilator basis.
pub fn u_restricted_invariant(
    ctx: &CohomologyContext,
    u: &[BigInt],
) -> Result<RestrictedInvariant, MasseyError> {
    let ann = annihilator_basis(ctx, u)?;
    let mut generators = Vec::new();
    for w in &ann {
        let r = restricted_triple(ctx, u, w)?;
        generators.push(r.representative);
    }
    let a = ctx.cocycle_rep(u)?;
    let mut ind = Vec::new();
    for b in ctx.h1_basis_cochains() {
        ind.push(ctx.project2(&a.cup(&b)?)?);
    }
    Ok(RestrictedInvariant {
        annihilator_basis: ann,
        generators: nonzero_gens(generators),
        indeterminacy: nonzero_gens(ind),
    })
}

/// Full analysis of one family member: ranks, the cup table on the labeled
/// classes, the classical and restricted products, and the invariant.
pub struct XkAnalysis {
    pub k: usize,
    pub h1_rank: usize,
    pub h2_rank: usize,
    /// cup table entries `[u_i cup u_j]` in the (sign-normalized) generator
    /// coordinate of H^2
    pub cup_table: [[BigInt; 3]; 3],
    pub classical_indeterminacy_is_full: bool,
    /// `<u1,u1,u2>_r` in the normalized generator coordinate
    pub restricted_12: BigInt,
    pub restricted_12_indeterminacy_zero: bool,
    /// `<u1,u1,u3>_r`
    pub restricted_13: BigInt,
    /// nonnegative generator of the invariant subgroup `<u1>_r`
    pub invariant_gen: BigInt,
}

impl XkAnalysis {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "h1_rank": self.h1_rank,
            "h2_rank": self.h2_rank,
            "cup_table": self.cup_table.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "classical_triple_indeterminacy": if self.classical_indeterminacy_is_full { "full H^2" } else { "proper" },
            "restricted_u1_u1_u2": self.restricted_12.to_string(),
            "restricted_indeterminacy_zero": self.restricted_12_indeterminacy_zero,
            "restricted_u1_u1_u3": self.restricted_13.to_string(),
            "u1_invariant": format!("{{ n*{} : n in Z }}", self.invariant_gen),
        })
    }
}

pub fn analyze_xk(k: usize) -> Result<XkAnalysis, MasseyError> {
    let built = build_presentation_xk(k);
    let ctx = CohomologyContext::new(built.delta.clone(), Ring::Z)?;
    let u: Vec<Vec<BigInt>> = (1..=3)
        .map(|i| ctx.class_of_labeled(&built.labeled[&format!("c{i}")]))
        .collect::<Result<_, _>>()?;
    if ctx.h2.dim() != 1 {
        return Err(MasseyError::Internal("family member must have rank-one H^2".into()));
    }
    // sign normalization: make [u2 cup u3] positive
    let reps: Vec<Cochain> = u
        .iter()
        .map(|coords| ctx.cocycle_rep(coords))
        .collect::<Result<_, _>>()?;
    let u23 = ctx.project2(&reps[1].cup(&reps[2])?)?[0].clone();
    let flip = u23.is_negative();
    let norm = |v: BigInt| if flip { -v } else { v };
    let mut cup_table: [[BigInt; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let val = ctx.project2(&reps[i].cup(&reps[j])?)?[0].clone();
            cup_table[i][j] = norm(val);
        }
    }
    let classical = triple_massey(&ctx, &u[0], &u[0], &u[1])?;
    let full = ctx
        .h2
        .class_in_subgroup(&classical.indeterminacy.clone().unwrap(), &[BigInt::one()]);
    let r12 = restricted_triple(&ctx, &u[0], &u[1])?;
    let r13 = restricted_triple(&ctx, &u[0], &u[2])?;
    let inv = u_restricted_invariant(&ctx, &u[0])?;
    Ok(XkAnalysis {
        k,
        h1_rank: ctx.h1.free_rank,
        h2_rank: ctx.h2.free_rank,
        cup_table,
        classical_indeterminacy_is_full: full,
        restricted_12: norm(r12.representative[0].clone()),
        restricted_12_indeterminacy_zero: r12.indeterminacy.unwrap().is_empty(),
        restricted_13: norm(r13.representative[0].clone()),
        invariant_gen: inv
            .cyclic_generator()
            .ok_or_else(|| MasseyError::Internal("rank-one invariant".into()))?
            .abs(),
    })
}

/// Verdict report for a family pair: all classical invariants coincide, and
/// the restricted invariant distinguishes exactly when `k != l`.
pub struct DistinguishReport {
    pub left: XkAnalysis,
    pub right: XkAnalysis,
    pub cohomology_rings_isomorphic: bool,
    pub classical_uninformative: bool,
    pub distinguished: bool,
}

impl DistinguishReport {
    pub fn to_json(&self) -> Value {
        json!({
            "command": "distinguish",
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "cohomology_rings_isomorphic": self.cohomology_rings_isomorphic,
            "classical_triple_products_uninformative": self.classical_uninformative,
            "verdict": if self.distinguished { "distinguished" } else { "not distinguished" },
        })
    }
}

pub fn distinguish_xk(k: usize, l: usize) -> Result<DistinguishReport, MasseyError> {
    let left = analyze_xk(k)?;
    let right = analyze_xk(l)?;
    let rings_iso = left.h1_rank == right.h1_rank
        && left.h2_rank == right.h2_rank
        && left.cup_table == right.cup_table;
    let classical_uninformative =
        left.classical_indeterminacy_is_full && right.classical_indeterminacy_is_full;
    let distinguished = left.invariant_gen != right.invariant_gen;
    Ok(DistinguishReport {
        left,
        right,
        cohomology_rings_isomorphic: rings_iso,
        classical_uninformative,
        distinguished,
    })
}

/// In the sub-DGA of the free algebra on one variable spanned by monomial
/// powers, the square class `[x][x]` has order two in the weight-two slice,
/// so the triple product `<[x],[x],[x]>` is not defined.
pub struct UndefinedTripleReport {
    /// differential of the weight-two power in the word basis
    pub d_x2: TensorElement,
    /// `x (x) x` is a cocycle
    pub square_is_cocycle: bool,
    /// order of `[x (x) x]` in the weight-two quotient
    pub class_order: u64,
    pub triple_defined: bool,
}

impl UndefinedTripleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "example": "undefined-triple",
            "d_x2": self.d_x2.to_json(),
            "square_is_cocycle": self.square_is_cocycle,
            "square_class_order": self.class_order,
            "triple_defined": self.triple_defined,
        })
    }
}

pub fn undefined_cup1_example() -> Result<UndefinedTripleReport, MasseyError> {
    let x = RationalPoly::variable("x");
    let power = |n: u32| -> TensorElement {
        let mut q = RationalPoly::constant(num_rational::BigRational::one());
        for _ in 0..n {
            q = q.mul(&x);
        }
        TensorElement::from_poly(&polya_to_zeta(&q).expect("powers are integer-valued"))
            .expect("no constant term")
    };
    // the differential of the n-th power expands binomially in lower powers
    for n in 2..=4u32 {
        let lhs = power(n)
            .differential()
            .map_err(|e| MasseyError::Internal(e.to_string()))?;
        let mut rhs = TensorElement::zero(Ring::Z, 2);
        for k in 1..n {
            let coeff = crate::intpoly::zeta_binomial(&BigInt::from(n), k as u64);
            let term = power(k)
                .cup(&power(n - k))
                .map_err(|e| MasseyError::Internal(e.to_string()))?
                .scale(&-coeff);
            rhs = rhs
                .add(&term)
                .map_err(|e| MasseyError::Internal(e.to_string()))?;
        }
        if lhs != rhs {
            return Err(MasseyError::Internal(format!(
                "power differential mismatch at n = {n}"
            )));
        }
    }
    let d_x2 = power(2)
        .differential()
        .map_err(|e| MasseyError::Internal(e.to_string()))?;
    let square = power(1)
        .cup(&power(1))
        .map_err(|e| MasseyError::Internal(e.to_string()))?;
    let square_is_cocycle = square
        .differential()
        .map_err(|e| MasseyError::Internal(e.to_string()))?
        .is_zero();
    // weight-two slice: A^1 is spanned by x^2, A^2 by x (x) x, and
    // d(x^2) = -2 x (x) x, so the square class generates Z/2
    let expected = square.scale(&BigInt::from(-2));
    if d_x2 != expected {
        return Err(MasseyError::Internal("weight-two differential".into()));
    }
    Ok(UndefinedTripleReport {
        d_x2,
        square_is_cocycle,
        class_order: 2,
        triple_defined: false,
    })
}

/// Pullback of class coordinates along a delta map (classes of pulled-back
/// canonical representatives).
pub fn pullback_class(
    map: &DeltaMap,
    from_ctx: &CohomologyContext,
    to_ctx: &CohomologyContext,
    u: &[BigInt],
    degree: usize,
) -> Result<Vec<BigInt>, MasseyError> {
    let rep = match degree {
        1 => to_ctx.cocycle_rep(u)?,
        _ => return Err(MasseyError::Internal("degree".into())),
    };
    let pulled = Cochain::pullback(map, &rep);
    from_ctx.project1(&pulled)
}

/// The wrapped complex pair used by functoriality tests.
pub fn xk_context(built: &BuiltComplex, ring: Ring) -> Result<CohomologyContext, MasseyError> {
    CohomologyContext::new(built.delta.clone(), ring)
}
