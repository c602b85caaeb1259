//! Exact arithmetic in a real number field Q(α).
//!
//! A field is a minimal polynomial together with an isolating interval
//! selecting one of its real roots. Elements are canonical coefficient
//! vectors over Q, so structural equality is value equality; signs,
//! orderings and floors are decided exactly by refining the root
//! interval with rational interval arithmetic. Purely rational values
//! (degree-1 fields, or elements whose higher coefficients vanish) never
//! touch the interval machinery.

use crate::interval::RatInterval;
use crate::poly::{self, count_roots_in, Polynomial, PolyError};
use crate::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Open interval isolating one real root of a polynomial.
pub type IsolatingInterval = RatInterval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("zero divisor: modulus is not irreducible (gcd degree {0})")]
    ZeroDivisor(usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error(transparent)]
    Factor(#[from] PolyError),
}

/// A real number field Q(α) fixed by a minimal polynomial and an
/// isolating interval for the chosen real root.
///
/// Irreducibility of the minimal polynomial is a caller precondition and
/// is not verified; a reducible modulus surfaces later as a
/// `ZeroDivisor` error from division.
#[derive(Debug)]
pub struct NumberField {
    min_poly: Polynomial,
    degree: usize,
    root: IsolatingInterval,
    /// Square-free part of the modulus; its sign changes across the root,
    /// which drives bisection even when the modulus has repeated factors.
    bisect_poly: Polynomial,
    /// x^degree written in the basis 1, x, ..., x^(degree-1).
    reduction: Vec<Rational>,
    /// Monotonically shrinking refinement of `root`, shared by all
    /// elements of the field.
    refined: Mutex<IsolatingInterval>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.root == other.root
    }
}
impl Eq for NumberField {}

impl Hash for NumberField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.min_poly.hash(state);
    }
}

impl NumberField {
    /// Builds the field from an integer minimal polynomial (made
    /// primitive with positive leading coefficient) and an interval that
    /// must isolate exactly one of its real roots.
    pub fn new(
        min_poly: Polynomial,
        lo: Rational,
        hi: Rational,
    ) -> Result<Arc<NumberField>, NumFieldError> {
        let min_poly = min_poly.primitive();
        let degree = min_poly.degree();
        if min_poly.is_zero() || degree < 1 {
            return Err(NumFieldError::InvalidField(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if lo >= hi {
            return Err(NumFieldError::InvalidField(format!(
                "interval ({lo}, {hi}) is empty"
            )));
        }
        if min_poly.eval_rational(&lo).is_zero() || min_poly.eval_rational(&hi).is_zero() {
            return Err(NumFieldError::InvalidField(
                "interval endpoints must not be roots".into(),
            ));
        }
        let nroots = count_roots_in(&min_poly, &lo, &hi);
        if nroots != 1 {
            return Err(NumFieldError::InvalidField(format!(
                "interval ({lo}, {hi}) contains {nroots} roots, need exactly 1"
            )));
        }
        let lead = Rational::from_integer(min_poly.leading());
        let reduction: Vec<Rational> = (0..degree)
            .map(|i| -Rational::from_integer(min_poly.coeff(i)) / lead.clone())
            .collect();
        let root = RatInterval::new(lo, hi);
        Ok(Arc::new(NumberField {
            bisect_poly: min_poly.square_free_part(),
            reduction,
            degree,
            refined: Mutex::new(root.clone()),
            root,
            min_poly,
        }))
    }

    /// The rational field Q, as the degree-1 field with minimal
    /// polynomial x.
    pub fn rational() -> Arc<NumberField> {
        NumberField::new(
            Polynomial::from_i64(&[0, 1]),
            Rational::from_integer((-1).into()),
            Rational::from_integer(1.into()),
        )
        .expect("rational field is valid")
    }

    pub fn min_poly(&self) -> &Polynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The isolating interval as constructed.
    pub fn root_interval(&self) -> &IsolatingInterval {
        &self.root
    }

    /// Current (possibly refined) isolating interval.
    pub fn current_interval(&self) -> IsolatingInterval {
        self.refined.lock().unwrap().clone()
    }

    /// Halves the root interval, keeping the root inside.
    fn bisect(&self) {
        let mut guard = self.refined.lock().unwrap();
        let lo = guard.lo.clone();
        let hi = guard.hi.clone();
        let mid = guard.midpoint();
        let pm = self.bisect_poly.eval_rational(&mid);
        if pm.is_zero() {
            // The root is exactly `mid`; shrink around it keeping the
            // endpoints off the root. Only reachable with a reducible
            // modulus whose rational roots were not split off.
            let mut w = (&hi - &lo) / Rational::from_integer(8.into());
            while self.bisect_poly.eval_rational(&(&mid - &w)).is_zero()
                || self.bisect_poly.eval_rational(&(&mid + &w)).is_zero()
            {
                w /= Rational::from_integer(2.into());
            }
            *guard = RatInterval::new(&mid - &w, &mid + &w);
            return;
        }
        let plo = self.bisect_poly.eval_rational(&lo);
        if plo.is_positive() != pm.is_positive() {
            *guard = RatInterval::new(lo, mid);
        } else {
            *guard = RatInterval::new(mid, hi);
        }
    }

    /// Refines until the interval is narrower than `eps`.
    pub fn refine_to(&self, eps: &Rational) {
        loop {
            if self.current_interval().width() <= *eps {
                return;
            }
            self.bisect();
        }
    }

    /// Zero element.
    pub fn zero(self: &Arc<Self>) -> NumberFieldElement {
        NumberFieldElement {
            field: Arc::clone(self),
            coeffs: vec![Rational::zero(); self.degree],
        }
    }

    /// Multiplicative identity.
    pub fn one(self: &Arc<Self>) -> NumberFieldElement {
        self.element_from_rational(Rational::one())
    }

    /// The designated root α as an element.
    pub fn generator(self: &Arc<Self>) -> NumberFieldElement {
        if self.degree == 1 {
            // α is the rational root itself
            return self.element_from_rational(self.reduction[0].clone());
        }
        let mut coeffs = vec![Rational::zero(); self.degree];
        coeffs[1] = Rational::one();
        NumberFieldElement { field: Arc::clone(self), coeffs }
    }

    pub fn element_from_rational(self: &Arc<Self>, r: Rational) -> NumberFieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree];
        coeffs[0] = r;
        NumberFieldElement { field: Arc::clone(self), coeffs }
    }

    pub fn element_from_integer(self: &Arc<Self>, n: i64) -> NumberFieldElement {
        self.element_from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Element from coefficients of 1, α, ..., α^(d-1); longer vectors
    /// are reduced modulo the minimal polynomial.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> NumberFieldElement {
        NumberFieldElement::reduce(Arc::clone(self), coeffs)
    }

    /// JSON header with minimal polynomial coefficients and root interval.
    pub fn to_json(&self) -> Value {
        json!({
            "min_poly": self
                .min_poly
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            "root_interval": [
                format_rational(&self.root.lo),
                format_rational(&self.root.hi),
            ],
        })
    }
}

/// Element of a number field: canonical coefficient vector over Q in the
/// power basis of the field generator.
#[derive(Clone)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for NumberFieldElement {}

impl Hash for NumberFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl NumberFieldElement {
    fn reduce(field: Arc<NumberField>, mut coeffs: Vec<Rational>) -> Self {
        let d = field.degree;
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = coeffs.len() - d; // x^(d+k) = x^k * x^d
            for (i, r) in field.reduction.iter().enumerate() {
                let t = r * &top;
                coeffs[k + i] = &coeffs[k + i] + t;
            }
        }
        coeffs.resize(d, Rational::zero());
        NumberFieldElement { field, coeffs }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the value is rational (all higher coefficients vanish).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<(), NumFieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(NumFieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumFieldError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(NumberFieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumFieldError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(NumberFieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn neg(&self) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NumFieldError> {
        self.check_same_field(other)?;
        let mut prod = vec![Rational::zero(); 2 * self.field.degree - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + a * b;
            }
        }
        Ok(NumberFieldElement::reduce(Arc::clone(&self.field), prod))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact inverse via the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inv(&self) -> Result<Self, NumFieldError> {
        if self.is_zero() {
            return Err(NumFieldError::InverseOfZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.element_from_rational(r.recip()));
        }
        let modulus = poly::to_q(self.field.min_poly());
        let mut a = self.coeffs.clone();
        poly::normalize_q(&mut a);
        // extended gcd: s*a + t*modulus = g
        let (g, s) = half_ext_gcd(&a, &modulus);
        let gd = poly::degree_q(&g);
        if gd > 0 {
            return Err(NumFieldError::ZeroDivisor(gd));
        }
        let ginv = g[0].recip();
        let coeffs = s.iter().map(|c| c * &ginv).collect();
        Ok(NumberFieldElement::reduce(Arc::clone(&self.field), coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumFieldError> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Exact sign of the real embedding: -1, 0 or +1.
    ///
    /// Zero is caught on the canonical form; nonzero values are decided
    /// by evaluating the coefficient polynomial over the root interval
    /// and bisecting until the sign is unambiguous.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        loop {
            let iv = self.field.current_interval();
            let v = eval_coeffs_on_interval(&self.coeffs, &iv);
            match v.definite_sign() {
                Some(s) if s != 0 => return s,
                _ => self.field.bisect(),
            }
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, NumFieldError> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let diff = self.sub(other)?;
        Ok(match diff.sign() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        })
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        loop {
            let iv = self.field.current_interval();
            let v = eval_coeffs_on_interval(&self.coeffs, &iv);
            let flo = v.lo.floor().to_integer();
            let fhi = v.hi.floor().to_integer();
            if flo == fhi {
                return flo;
            }
            self.field.bisect();
        }
    }

    /// Certified enclosure of the value with width at most `eps`.
    pub fn enclosure(&self, eps: &Rational) -> RatInterval {
        if let Some(r) = self.as_rational() {
            return RatInterval::point(r.clone());
        }
        loop {
            let iv = self.field.current_interval();
            let v = eval_coeffs_on_interval(&self.coeffs, &iv);
            if v.width() <= *eps {
                return v;
            }
            self.field.bisect();
        }
    }

    /// Absolute value (negates when the embedding is negative).
    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Decimal rendering with `places` fractional digits; the printed
    /// digits are the correct rounding of the true value.
    pub fn decimal(&self, places: u32) -> String {
        use crate::rational::{decimal_string, pow10_neg};
        if let Some(r) = self.as_rational() {
            return decimal_string(r, places);
        }
        let mut eps = pow10_neg(places + 2);
        loop {
            let enc = self.enclosure(&eps);
            let lo = decimal_string(&enc.lo, places);
            let hi = decimal_string(&enc.hi, places);
            if lo == hi {
                return lo;
            }
            // the interval straddles a rounding boundary; tighten
            eps /= Rational::from_integer(16.into());
        }
    }

    /// Integer characteristic polynomial of the multiplication-by-self
    /// map; a degree-d annihilator of the value.
    pub fn annihilator(&self) -> Polynomial {
        let d = self.field.degree;
        // columns: coefficients of self * α^j
        let mut cols = Vec::with_capacity(d);
        let alpha = self.field.generator();
        let mut cur = self.clone();
        for j in 0..d {
            if j > 0 {
                cur = cur.mul(&alpha).expect("same field");
            }
            cols.push(cur.coeffs.clone());
        }
        let mat: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect();
        let cp = poly::charpoly_rational(&mat);
        poly::primitive_from_q(&cp)
    }

    /// Minimal polynomial over Q: the irreducible factor of the
    /// annihilator that vanishes on the value (primitive, positive
    /// leading coefficient).
    pub fn minimal_polynomial(&self) -> Result<Polynomial, NumFieldError> {
        let ann = self.annihilator();
        let factors = poly::factor(&ann)?;
        for f in factors {
            if self.apply_integer_poly(&f).is_zero() {
                return Ok(f);
            }
        }
        unreachable!("annihilator must have a vanishing factor");
    }

    /// Evaluates an integer polynomial at this element.
    pub fn apply_integer_poly(&self, p: &Polynomial) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .expect("same field")
                .add(&self.field.element_from_rational(Rational::from_integer(c.clone())))
                .expect("same field");
        }
        acc
    }

    /// Value equality across (possibly different) fields, decided by
    /// comparing minimal polynomials and matching the designated real
    /// roots.
    pub fn eq_value(&self, other: &Self) -> Result<bool, NumFieldError> {
        if self.field == other.field {
            return Ok(self == other);
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return Ok(a == b),
            (Some(_), None) | (None, Some(_)) => {
                // one side rational, the other not: only equal if the
                // irrational side is actually rational, which canonical
                // forms exclude
                return Ok(false);
            }
            _ => {}
        }
        let ma = self.minimal_polynomial()?;
        let mb = other.minimal_polynomial()?;
        if ma != mb {
            return Ok(false);
        }
        let roots = poly::isolate_real_roots(&ma);
        let mut eps = Rational::new(BigInt::one(), BigInt::from(16));
        loop {
            let ea = self.enclosure(&eps);
            let eb = other.enclosure(&eps);
            if ea.is_disjoint(&eb) {
                return Ok(false);
            }
            let ia = roots.iter().position(|r| encloses(&r.interval, &ea));
            let ib = roots.iter().position(|r| encloses(&r.interval, &eb));
            if let (Some(ia), Some(ib)) = (ia, ib) {
                return Ok(ia == ib);
            }
            eps /= Rational::from_integer(16.into());
        }
    }

    /// Text form `c0 + c1*a + c2*a^2 ...` with exact rationals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                out.push_str(&format_rational(&mag));
            }
            match i {
                0 => {}
                1 => {
                    if show_coeff {
                        out.push_str("*a");
                    } else {
                        out.push('a');
                    }
                }
                _ => {
                    if show_coeff {
                        out.push_str(&format!("*a^{i}"));
                    } else {
                        out.push_str(&format!("a^{i}"));
                    }
                }
            }
        }
        if first {
            out.push('0');
        }
        out
    }

    /// JSON array of exact rational coefficient strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(format_rational(c)))
                .collect(),
        )
    }

    /// Parses the JSON emitted by [`Self::to_json`] back into an element.
    pub fn from_json(field: &Arc<NumberField>, v: &Value) -> Result<Self, String> {
        let arr = v.as_array().ok_or("element JSON must be an array")?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let s = c.as_str().ok_or("coefficient must be a string")?;
            coeffs.push(crate::rational::parse_rational(s)?);
        }
        if coeffs.len() > field.degree() {
            return Err(format!(
                "coefficient vector of length {} in a degree-{} field",
                coeffs.len(),
                field.degree()
            ));
        }
        coeffs.resize(field.degree(), Rational::zero());
        Ok(NumberFieldElement { field: Arc::clone(field), coeffs })
    }
}

fn encloses(outer: &RatInterval, inner: &RatInterval) -> bool {
    outer.lo <= inner.lo && inner.hi <= outer.hi
}

fn eval_coeffs_on_interval(coeffs: &[Rational], x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rational::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}

/// Extended gcd over Q, returning `(g, s)` with `s*a ≡ g (mod m)`.
fn half_ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    poly::normalize_q(&mut r0);
    poly::normalize_q(&mut r1);
    while !poly::is_zero_q(&r1) {
        let (q, r) = poly::div_rem_q(&r0, &r1);
        // s_next = s0 - q*s1
        let qs1 = mul_q(&q, &s1);
        let snext = sub_q(&s0, &qs1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = snext;
    }
    (r0, s0)
}

fn mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if poly::is_zero_q(a) || poly::is_zero_q(b) {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    poly::normalize_q(&mut out);
    out
}

fn sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    poly::normalize_q(&mut out);
    out
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
