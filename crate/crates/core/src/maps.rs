//! The SSA and MSA step maps on the ordered simplex
//! B^n = {1 >= x_1 >= ... >= x_n >= 0}, their digit functions, inverse
//! branches, cylinder geometry and the absorbing-set predicate.
//!
//! The subtractive map (SSA) subtracts the smallest coordinate from the
//! largest and re-sorts; the multiplicative map (MSA) subtracts the
//! largest integer multiple k = floor(1/x_n) of the smallest coordinate
//! and rotates. Both are implemented exactly over a shared number field.

use crate::numfield::{NumberField, NumberFieldElement};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("point needs at least one coordinate")]
    EmptyPoint,
    #[error("point needs dimension >= {0}")]
    DimensionTooSmall(usize),
    #[error("coordinates belong to different number fields")]
    MixedFields,
    #[error("coordinates violate the ordering 1 >= x_1 >= ... >= x_n >= 0")]
    NotOrdered,
    #[error("branch divisor is zero")]
    DivisorZero,
    #[error("digit out of range: {0}")]
    BadDigit(String),
    #[error("inverse branch output leaves B^n: point is not in the branch image")]
    OutsideSimplex,
    #[error("inverse branch output lands in cell {actual}, not the requested cell {expected}")]
    BranchMismatch { expected: String, actual: String },
}

/// Which of the two Selmer algorithms an object refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Ssa,
    Msa,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algo::Ssa => write!(f, "ssa"),
            Algo::Msa => write!(f, "msa"),
        }
    }
}

/// Branch index of one expansion step: the sort-insertion index j for
/// SSA (0 <= j <= n), the integer part k >= 1 for MSA.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Digit {
    Ssa(usize),
    Msa(BigInt),
}

impl Digit {
    pub fn algo(&self) -> Algo {
        match self {
            Digit::Ssa(_) => Algo::Ssa,
            Digit::Msa(_) => Algo::Msa,
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Digit::Ssa(j) => write!(f, "{j}"),
            Digit::Msa(k) => write!(f, "{k}"),
        }
    }
}

/// A point of B^n with exact coordinates in a shared number field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointB {
    coords: Vec<NumberFieldElement>,
}

impl PointB {
    /// Validates the simplex ordering 1 >= x_1 >= ... >= x_n >= 0.
    pub fn new(coords: Vec<NumberFieldElement>) -> Result<PointB, MapError> {
        if coords.is_empty() {
            return Err(MapError::EmptyPoint);
        }
        let field = coords[0].field().clone();
        if coords.iter().any(|c| *c.field() != field) {
            return Err(MapError::MixedFields);
        }
        let one = field.one();
        let mut prev = &one;
        for c in &coords {
            if prev.cmp_exact(c).expect("same field") == Ordering::Less {
                return Err(MapError::NotOrdered);
            }
            prev = c;
        }
        if coords.last().unwrap().sign() < 0 {
            return Err(MapError::NotOrdered);
        }
        Ok(PointB { coords })
    }

    /// Rational point in B^n over the degree-1 field Q.
    pub fn from_rationals(coords: Vec<Rational>) -> Result<PointB, MapError> {
        let q = NumberField::rational();
        PointB::new(coords.into_iter().map(|r| q.element_from_rational(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[NumberFieldElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &NumberFieldElement {
        &self.coords[i]
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.coords[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Drops trailing zero coordinates: the explicit "restrict to
    /// B^(n-1)" move offered when an MSA expansion terminates. `None`
    /// when nothing remains.
    pub fn restrict_to_lower_dim(&self) -> Option<PointB> {
        let mut coords = self.coords.clone();
        while coords.last().is_some_and(|c| c.is_zero()) {
            coords.pop();
        }
        if coords.is_empty() {
            None
        } else {
            Some(PointB { coords })
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(|c| c.to_json()).collect())
    }

    /// `(x_1, ..., x_n)` in the exact text form.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_text()).collect();
        format!("({})", parts.join(", "))
    }

    /// Certified decimals, one per coordinate.
    pub fn decimals(&self, places: u32) -> Vec<String> {
        self.coords.iter().map(|c| c.decimal(places)).collect()
    }
}

impl fmt::Debug for PointB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for PointB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Result of one step of either algorithm.
#[derive(Clone, Debug, PartialEq)]
pub enum StepOutcome {
    Step { next: PointB, digit: Digit },
    /// The step's divisor vanished (x_n = 0 for MSA); the expansion stops.
    Terminated,
}

// ---------------------------------------------------------------------------
// SSA
// ---------------------------------------------------------------------------

/// SSA digit: lift x to b = (1, x_1, ..., x_n), form
/// sigma(b) = (1 - x_n, x_1, ..., x_n) and return the insertion index
/// that re-sorts it. Ties insert at the smallest valid index, so the
/// digit is the number of coordinates strictly greater than 1 - x_n.
pub fn ssa_digit(x: &PointB) -> usize {
    let field = x.field().clone();
    let one = field.one();
    let v = one.sub(x.coords.last().unwrap()).expect("same field");
    x.coords
        .iter()
        .take_while(|c| c.cmp_exact(&v).expect("same field") == Ordering::Greater)
        .count()
}

/// One step of the subtractive algorithm. Total on B^n: at the all-zero
/// point the j = 0 branch divides by 1 and fixes the point.
pub fn ssa_step(x: &PointB) -> StepOutcome {
    let field = x.field().clone();
    let one = field.one();
    let n = x.dim();
    let j = ssa_digit(x);
    let last = x.coords.last().unwrap();
    let (divisor, raw): (NumberFieldElement, Vec<NumberFieldElement>) = if j == 0 {
        (one.sub(last).expect("same field"), x.coords.clone())
    } else {
        let complement = one.sub(last).expect("same field");
        let mut raw = Vec::with_capacity(n);
        raw.extend(x.coords[1..j].iter().cloned());
        raw.push(complement);
        raw.extend(x.coords[j..].iter().cloned());
        (x.coords[0].clone(), raw)
    };
    if divisor.is_zero() {
        return StepOutcome::Terminated;
    }
    let inv = divisor.inv().expect("nonzero divisor");
    let coords = raw
        .iter()
        .map(|c| c.mul(&inv).expect("same field"))
        .collect();
    let next = PointB::new(coords).expect("SSA image satisfies the simplex ordering");
    StepOutcome::Step { next, digit: Digit::Ssa(j) }
}

/// Inverse of the SSA branch with digit j: reconstructs the unique
/// x in B(j) with Tx = y, failing when y is not in the branch image.
pub fn ssa_inverse_branch(y: &PointB, j: usize) -> Result<PointB, MapError> {
    let n = y.dim();
    if j > n {
        return Err(MapError::BadDigit(format!("SSA digit {j} exceeds dimension {n}")));
    }
    let field = y.field().clone();
    let one = field.one();
    let coords = if j == 0 {
        // x_k = y_k / (1 + y_n)
        let divisor = one.add(y.coords.last().unwrap()).expect("same field");
        if divisor.is_zero() {
            return Err(MapError::DivisorZero);
        }
        let inv = divisor.inv().expect("nonzero");
        y.coords
            .iter()
            .map(|c| c.mul(&inv).expect("same field"))
            .collect::<Vec<_>>()
    } else {
        // x_1 = 1/(y_j + y_n), x_k = y_{k-1}/(y_j + y_n) for 2 <= k <= j,
        // x_k = y_k/(y_j + y_n) for j+1 <= k <= n  (j = n uses y_{n-1}+y_n,
        // which for n = 1 is the homogeneous coordinate y_0 = 1)
        let pivot = if j == n {
            if n == 1 {
                one.clone()
            } else {
                y.coords[n - 2].clone()
            }
        } else {
            y.coords[j - 1].clone()
        };
        let divisor = pivot.add(y.coords.last().unwrap()).expect("same field");
        if divisor.is_zero() {
            return Err(MapError::DivisorZero);
        }
        let inv = divisor.inv().expect("nonzero");
        let mut coords = Vec::with_capacity(n);
        coords.push(inv.clone());
        for k in 2..=j {
            coords.push(y.coords[k - 2].mul(&inv).expect("same field"));
        }
        for k in (j + 1)..=n {
            coords.push(y.coords[k - 1].mul(&inv).expect("same field"));
        }
        coords
    };
    let x = PointB::new(coords).map_err(|_| MapError::OutsideSimplex)?;
    let actual = ssa_digit(&x);
    if actual != j {
        return Err(MapError::BranchMismatch {
            expected: j.to_string(),
            actual: actual.to_string(),
        });
    }
    Ok(x)
}

/// The absorbing set D = {x in B^n : x_{n-1} + x_n >= 1}; needs n >= 2.
pub fn in_absorbing_set(x: &PointB) -> Result<bool, MapError> {
    let n = x.dim();
    if n < 2 {
        return Err(MapError::DimensionTooSmall(2));
    }
    let s = x.coords[n - 2].add(&x.coords[n - 1]).expect("same field");
    let one = x.field().one();
    Ok(s.cmp_exact(&one).expect("same field") != Ordering::Less)
}

// ---------------------------------------------------------------------------
// MSA
// ---------------------------------------------------------------------------

/// MSA digit k = floor(1/x_n), or `None` when x_n = 0 (the expansion
/// stops). The cell B(k) = {1/(k+1) < x_n <= 1/k} is left-open and
/// right-closed, which floor realizes directly: x_n = 1/k has 1/x_n = k.
pub fn msa_digit(x: &PointB) -> Option<BigInt> {
    let last = x.coords.last().unwrap();
    if last.is_zero() {
        return None;
    }
    Some(last.inv().expect("nonzero").floor())
}

/// One step of the multiplicative algorithm:
/// S(x) = (x_2/x_1, ..., x_n/x_1, (1 - k x_n)/x_1).
pub fn msa_step(x: &PointB) -> StepOutcome {
    let k = match msa_digit(x) {
        Some(k) => k,
        None => return StepOutcome::Terminated,
    };
    let next = msa_branch_image(x, &k).expect("digit branch keeps the point in B^n");
    StepOutcome::Step { next, digit: Digit::Msa(k) }
}

/// The branch map of cell B(k) applied regardless of where x lies; this
/// extends S|B(k) to the closed cell, which is what the cylinder-image
/// vertex computations use. Errors when x_1 = 0 or the image leaves B^n.
pub fn msa_branch_image(x: &PointB, k: &BigInt) -> Result<PointB, MapError> {
    if k < &BigInt::one() {
        return Err(MapError::BadDigit(format!("MSA digit {k} must be >= 1")));
    }
    let x1 = &x.coords[0];
    if x1.is_zero() {
        return Err(MapError::DivisorZero);
    }
    let field = x.field().clone();
    let inv = x1.inv().expect("nonzero");
    let n = x.dim();
    let mut coords = Vec::with_capacity(n);
    for i in 1..n {
        coords.push(x.coords[i].mul(&inv).expect("same field"));
    }
    let kx = x.coords[n - 1].mul_rational(&Rational::from_integer(k.clone()));
    let last = field.one().sub(&kx).expect("same field").mul(&inv).expect("same field");
    coords.push(last);
    PointB::new(coords).map_err(|_| MapError::OutsideSimplex)
}

/// Inverse of the MSA branch with digit k:
/// x_1 = 1/(k y_{n-1} + y_n), x_i = y_{i-1}/(k y_{n-1} + y_n).
/// For n = 1 the homogeneous convention y_0 = 1 applies.
///
/// The result is guaranteed to map back onto (y, k) only when it lies in
/// the cell B(k); membership is checked with [`msa_digit`].
pub fn msa_inverse_branch(y: &PointB, k: &BigInt) -> Result<PointB, MapError> {
    if k < &BigInt::one() {
        return Err(MapError::BadDigit(format!("MSA digit {k} must be >= 1")));
    }
    let n = y.dim();
    let field = y.field().clone();
    let krat = Rational::from_integer(k.clone());
    let ky = if n == 1 {
        field.element_from_rational(krat)
    } else {
        y.coords[n - 2].mul_rational(&krat)
    };
    let divisor = ky.add(y.coords.last().unwrap()).expect("same field");
    match divisor.sign() {
        0 => return Err(MapError::DivisorZero),
        s if s < 0 => return Err(MapError::OutsideSimplex),
        _ => {}
    }
    let inv = divisor.inv().expect("nonzero");
    let mut coords = Vec::with_capacity(n);
    coords.push(inv.clone());
    for i in 2..=n {
        coords.push(y.coords[i - 2].mul(&inv).expect("same field"));
    }
    PointB::new(coords).map_err(|_| MapError::OutsideSimplex)
}

/// True when x lies in the rank-1 cylinder B(k).
pub fn in_cylinder(x: &PointB, k: &BigInt) -> bool {
    msa_digit(x).as_ref() == Some(k)
}

/// The 2n vertices of the closed cell B(k) in dimension n, in the
/// order (1,..,1,1/k), (1,..,1,1/(k+1)), ..., (1/k,..,1/k),
/// (1/(k+1),..,1/(k+1)).
pub fn msa_cylinder_vertices(k: u64, n: usize) -> Vec<Vec<Rational>> {
    assert!(k >= 1 && n >= 1);
    let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
    let inv_k1 = Rational::new(BigInt::one(), BigInt::from(k + 1));
    let mut out = Vec::with_capacity(2 * n);
    for j in 1..=n {
        for v in [&inv_k, &inv_k1] {
            let mut vertex = vec![Rational::one(); n - j];
            vertex.extend(std::iter::repeat_n(v.clone(), j));
            out.push(vertex);
        }
    }
    out
}

/// Vertices of the image S B(k) in dimension 2:
/// (1/k, 0), (1/(k+1), 1/(k+1)), (1, 0), (1, 1).
pub fn msa_cylinder_image_vertices(k: u64) -> Vec<(Rational, Rational)> {
    assert!(k >= 1);
    let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
    let inv_k1 = Rational::new(BigInt::one(), BigInt::from(k + 1));
    vec![
        (inv_k, Rational::zero()),
        (inv_k1.clone(), inv_k1),
        (Rational::one(), Rational::zero()),
        (Rational::one(), Rational::one()),
    ]
}

// ---------------------------------------------------------------------------
// Cone-level maps on Delta^{n+1} (used to test the commutative diagrams)
// ---------------------------------------------------------------------------

/// Is b a member of the cone Delta^{n+1}: b_0 >= b_1 >= ... >= b_n >= 0?
pub fn in_cone(b: &[Rational]) -> bool {
    b.windows(2).all(|w| w[0] >= w[1]) && b.last().is_some_and(|x| !x.is_negative())
}

/// Projection p(b) = (b_1/b_0, ..., b_n/b_0).
pub fn project_cone(b: &[Rational]) -> Vec<Rational> {
    let b0 = &b[0];
    assert!(b0.is_positive(), "projection needs b_0 > 0");
    b[1..].iter().map(|bi| bi / b0).collect()
}

/// One SSA step upstairs: sigma replaces b_0 by b_0 - b_n, pi re-sorts.
/// Returns the new cone vector and the digit i(b).
pub fn ssa_cone_step(b: &[Rational]) -> (Vec<Rational>, usize) {
    let n = b.len() - 1;
    let v = &b[0] - &b[n];
    let i = b[1..].iter().take_while(|bi| **bi > v).count();
    let mut out = Vec::with_capacity(b.len());
    out.extend_from_slice(&b[1..=i]);
    out.push(v);
    out.extend_from_slice(&b[i + 1..]);
    (out, i)
}

/// One MSA step upstairs: delta replaces b_0 by b_0 - k b_n with
/// k = floor(b_0/b_n), pi rotates it to the end. `None` when b_n = 0.
pub fn msa_cone_step(b: &[Rational]) -> Option<(Vec<Rational>, BigInt)> {
    let n = b.len() - 1;
    if b[n].is_zero() {
        return None;
    }
    let k = (&b[0] / &b[n]).floor().to_integer();
    let rest = &b[0] - Rational::from_integer(k.clone()) * &b[n];
    let mut out = Vec::with_capacity(b.len());
    out.extend_from_slice(&b[1..]);
    out.push(rest);
    Some((out, k))
}
