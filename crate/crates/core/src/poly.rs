//! Integer polynomials: arithmetic, Sturm-sequence real root isolation,
//! and small-degree factorization over the rationals.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is
//! the empty coefficient vector and nonzero polynomials never carry a
//! zero leading coefficient.

use crate::interval::RatInterval;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("factorization budget exceeded ({0})")]
    FactorBudget(String),
    #[error("cannot certify irreducibility for degree {0} > 7")]
    DegreeTooLarge(usize),
}

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monomial `c * t^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval extension of the evaluation map (Horner with outward
    /// rational interval arithmetic — exact, so "outward" is literal).
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(&Rational::from_integer(c.clone()));
        }
        acc
    }

    /// Content: gcd of coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Polynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division, panicking if `other` does not divide `self` over Q.
    /// Division is carried out over the rationals and the quotient is
    /// required to come out integral.
    pub fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = div_rem_q(&to_q(self), &to_q(other));
        assert!(is_zero_q(&r), "div_exact with nonzero remainder");
        from_q_integral(&q).expect("div_exact quotient not integral")
    }

    /// Square-free part: self / gcd(self, self'), primitive.
    pub fn square_free_part(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = gcd_q(&to_q(self), &to_q(&self.derivative()));
        if degree_q(&g) == 0 {
            return self.primitive();
        }
        let (q, _r) = div_rem_q(&to_q(self), &g);
        primitive_from_q(&q)
    }

    /// Cauchy root bound: every real root has absolute value below the
    /// returned rational.
    pub fn root_bound(&self) -> Rational {
        assert!(!self.is_zero());
        let lead = Rational::from_integer(self.leading().abs());
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = Rational::from_integer(c.abs()) / lead.clone();
            if v > m {
                m = v;
            }
        }
        m + Rational::one()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => {
                    if show_coeff {
                        write!(f, "*t")?;
                    } else {
                        write!(f, "t")?;
                    }
                }
                _ => {
                    if show_coeff {
                        write!(f, "*t^{i}")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers (internal)
// ---------------------------------------------------------------------------

pub(crate) fn to_q(p: &Polynomial) -> Vec<Rational> {
    p.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

pub(crate) fn is_zero_q(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub(crate) fn degree_q(p: &[Rational]) -> usize {
    for i in (0..p.len()).rev() {
        if !p[i].is_zero() {
            return i;
        }
    }
    0
}

pub(crate) fn normalize_q(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn eval_q(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Division with remainder over Q: `a = q*b + r`, deg r < deg b.
pub(crate) fn div_rem_q(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!is_zero_q(b), "polynomial division by zero");
    let db = degree_q(b);
    let lead = b[db].clone();
    let mut rem: Vec<Rational> = a.to_vec();
    normalize_q(&mut rem);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while !rem.is_empty() && rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        quot[shift] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[shift + i] = &rem[shift + i] - t;
        }
        normalize_q(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    (quot, rem)
}

/// Monic gcd over Q.
pub(crate) fn gcd_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    normalize_q(&mut r0);
    normalize_q(&mut r1);
    while !is_zero_q(&r1) {
        let (_, r) = div_rem_q(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if is_zero_q(&r0) {
        return vec![];
    }
    let lead = r0[degree_q(&r0)].clone();
    r0.iter().map(|c| c / &lead).collect()
}

fn from_q_integral(p: &[Rational]) -> Option<Polynomial> {
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(Polynomial::new(out))
}

/// Clear denominators and take the primitive part.
pub fn primitive_from_q(p: &[Rational]) -> Polynomial {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    Polynomial::new(ints).primitive()
}

/// Characteristic polynomial of a square rational matrix by the
/// Faddeev–LeVerrier recursion; monic, lowest degree first.
pub(crate) fn charpoly_rational(mat: &[Vec<Rational>]) -> Vec<Rational> {
    let n = mat.len();
    assert!(n > 0 && mat.iter().all(|row| row.len() == n));
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    // M_1 = M, c_k = -tr(M_k)/k, M_{k+1} = M (M_k + c_k I)
    let mut mk = mat.to_vec();
    for k in 1..=n {
        let tr: Rational = (0..n).map(|i| mk[i][i].clone()).sum();
        let ck = -tr / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = ck.clone();
        if k == n {
            break;
        }
        // M_{k+1} = M * (M_k + c_k I)
        let mut shifted = mk.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = &row[i] + &ck;
        }
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for (l, srow) in shifted.iter().enumerate() {
                    acc += &mat[i][l] * &srow[j];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
    }
    coeffs
}

// ---------------------------------------------------------------------------
// Real root isolation (Sturm)
// ---------------------------------------------------------------------------

/// An isolated real root of a polynomial.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    /// Open interval containing exactly one real root; the polynomial is
    /// nonzero at both endpoints.
    pub interval: RatInterval,
    /// Set when the root is exactly rational.
    pub exact: Option<Rational>,
}

/// Sturm chain of the square-free part, over Q.
pub(crate) fn sturm_chain(p: &Polynomial) -> Vec<Vec<Rational>> {
    let sf = p.square_free_part();
    let mut chain = vec![to_q(&sf), to_q(&sf.derivative())];
    loop {
        let n = chain.len();
        if is_zero_q(&chain[n - 1]) {
            chain.pop();
            break;
        }
        let (_, r) = div_rem_q(&chain[n - 2], &chain[n - 1]);
        if is_zero_q(&r) {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let mut prev = 0i32;
    let mut vars = 0usize;
    for p in chain {
        let v = eval_q(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if prev != 0 && s != prev {
                vars += 1;
            }
            prev = s;
        }
    }
    vars
}

/// Number of distinct real roots in the open interval `(lo, hi)`;
/// endpoints must not be roots of the square-free part.
pub fn count_roots_in(p: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, lo) - sign_variations(&chain, hi)
}

/// Isolates all distinct real roots, returned in increasing order.
pub fn isolate_real_roots(p: &Polynomial) -> Vec<IsolatedRoot> {
    if p.degree() == 0 {
        return vec![];
    }
    let sf = p.square_free_part();
    if sf.degree() == 0 {
        return vec![];
    }
    let chain = sturm_chain(p);
    let bound = sf.root_bound();
    let lo = -&bound - Rational::one();
    let hi = &bound + Rational::one();
    let mut out = Vec::new();
    isolate_rec(&sf, &chain, lo, hi, &mut out);
    out
}

fn isolate_rec(
    sf: &Polynomial,
    chain: &[Vec<Rational>],
    lo: Rational,
    hi: Rational,
    out: &mut Vec<IsolatedRoot>,
) {
    let n = sign_variations(chain, &lo) - sign_variations(chain, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(IsolatedRoot {
            interval: RatInterval::new(lo, hi),
            exact: None,
        });
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    if sf.eval_rational(&mid).is_zero() {
        // mid is an exact rational root; carve out a punctured interval
        // around it that contains no other root.
        let mut eps = (&hi - &lo) / Rational::from_integer(4.into());
        loop {
            let a = &mid - &eps;
            let b = &mid + &eps;
            if !sf.eval_rational(&a).is_zero()
                && !sf.eval_rational(&b).is_zero()
                && sign_variations(chain, &a) - sign_variations(chain, &b) == 1
            {
                isolate_rec(sf, chain, lo, a.clone(), out);
                out.push(IsolatedRoot {
                    interval: RatInterval::new(a, b.clone()),
                    exact: Some(mid),
                });
                isolate_rec(sf, chain, b, hi, out);
                return;
            }
            eps /= Rational::from_integer(2.into());
        }
    }
    isolate_rec(sf, chain, lo, mid.clone(), out);
    isolate_rec(sf, chain, mid, hi, out);
}

/// Bisects an isolating interval of a simple root until its width drops
/// below `eps`. The polynomial must change sign over the interval.
pub fn refine_root(p: &Polynomial, root: &IsolatedRoot, eps: &Rational) -> RatInterval {
    if let Some(x) = &root.exact {
        return RatInterval::point(x.clone());
    }
    let sf = p.square_free_part();
    let mut lo = root.interval.lo.clone();
    let mut hi = root.interval.hi.clone();
    let mut slo = sf.eval_rational(&lo);
    debug_assert!(!slo.is_zero());
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let smid = sf.eval_rational(&mid);
        if smid.is_zero() {
            return RatInterval::point(mid);
        }
        if smid.is_positive() == slo.is_positive() {
            lo = mid;
            slo = smid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

// ---------------------------------------------------------------------------
// Factorization over Q (complete for degree <= 7)
// ---------------------------------------------------------------------------

const DIVISOR_VALUE_LIMIT: u64 = 10_000_000_000_000_000; // 1e16
const CANDIDATE_LIMIT: u64 = 4_000_000;

/// Factors a primitive integer polynomial into irreducible primitive
/// factors over Q (returned with positive leading coefficients, in no
/// particular order, with multiplicity).
///
/// Complete for inputs of degree <= 7: any factorization of such a
/// polynomial contains a factor of degree <= 3, and those are searched
/// exhaustively (rational roots, then Kronecker interpolation for
/// degrees 2 and 3).
pub fn factor(p: &Polynomial) -> Result<Vec<Polynomial>, PolyError> {
    let p = p.primitive();
    if p.degree() == 0 {
        return Ok(vec![]);
    }
    let mut todo = vec![p];
    let mut done = Vec::new();
    while let Some(f) = todo.pop() {
        if f.degree() <= 1 {
            done.push(f);
            continue;
        }
        match find_proper_factor(&f)? {
            Some(g) => {
                let h = f.div_exact(&g).primitive();
                todo.push(g);
                todo.push(h);
            }
            None => {
                if f.degree() > 7 {
                    return Err(PolyError::DegreeTooLarge(f.degree()));
                }
                done.push(f);
            }
        }
    }
    Ok(done)
}

fn find_proper_factor(f: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
    if let Some(g) = rational_root_factor(f)? {
        return Ok(Some(g));
    }
    let half = f.degree() / 2;
    for d in 2..=half.min(3) {
        if let Some(g) = kronecker_factor(f, d)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn divisors_signed(v: &BigInt) -> Result<Vec<BigInt>, PolyError> {
    let a = v.abs();
    if a > BigInt::from(DIVISOR_VALUE_LIMIT) {
        return Err(PolyError::FactorBudget(format!(
            "divisor enumeration of |{v}| too large"
        )));
    }
    let n = a.to_string().parse::<u64>().unwrap_or(u64::MAX);
    let mut divs = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(BigInt::from(d));
        out.push(-BigInt::from(d));
    }
    Ok(out)
}

/// Finds a linear factor `q*t - p` from the rational root theorem.
fn rational_root_factor(f: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Ok(Some(Polynomial::new(vec![BigInt::zero(), BigInt::one()])));
    }
    let num_divs = divisors_signed(&c0)?;
    let den_divs: Vec<BigInt> = divisors_signed(&f.leading())?
        .into_iter()
        .filter(|d| d.is_positive())
        .collect();
    for q in &den_divs {
        for p in &num_divs {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            let r = Rational::new(p.clone(), q.clone());
            if f.eval_rational(&r).is_zero() {
                return Ok(Some(Polynomial::new(vec![-p.clone(), q.clone()]).primitive()));
            }
        }
    }
    Ok(None)
}

/// Kronecker search for a degree-`d` integer factor via interpolation on
/// the points 0, 1, -1, 2, -2, ...
fn kronecker_factor(f: &Polynomial, d: usize) -> Result<Option<Polynomial>, PolyError> {
    let points: Vec<BigInt> = (0..=d as i64)
        .map(|i| {
            // 0, 1, -1, 2, -2, ...
            let k = (i + 1) / 2;
            BigInt::from(if i % 2 == 1 { k } else { -k })
        })
        .collect();
    let mut value_divisors = Vec::with_capacity(points.len());
    let mut total: u64 = 1;
    for x in &points {
        let v = f.eval_bigint(x);
        debug_assert!(!v.is_zero(), "rational roots should be removed first");
        let divs = divisors_signed(&v)?;
        total = total.saturating_mul(divs.len() as u64);
        if total > CANDIDATE_LIMIT {
            return Err(PolyError::FactorBudget(format!(
                "kronecker candidate count {total} exceeds limit"
            )));
        }
        value_divisors.push(divs);
    }
    let mut idx = vec![0usize; points.len()];
    loop {
        let values: Vec<&BigInt> = idx
            .iter()
            .zip(&value_divisors)
            .map(|(&i, divs)| &divs[i])
            .collect();
        if let Some(g) = interpolate_integer(&points, &values, d) {
            // skip trivial constants and make sure it genuinely divides
            if g.degree() == d {
                let (_, r) = div_rem_q(&to_q(f), &to_q(&g));
                if is_zero_q(&r) {
                    return Ok(Some(g.primitive()));
                }
            }
        }
        // next index tuple
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < value_divisors[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Lagrange interpolation; returns the polynomial only if it has integer
/// coefficients and exact degree `d`.
fn interpolate_integer(points: &[BigInt], values: &[&BigInt], d: usize) -> Option<Polynomial> {
    let n = points.len();
    let mut acc: Vec<Rational> = vec![Rational::zero(); n];
    for i in 0..n {
        // basis polynomial for point i
        let mut basis: Vec<Rational> = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            // basis *= (t - x_j)
            let xj = Rational::from_integer(points[j].clone());
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - c * &xj;
            }
            basis = next;
            denom *= Rational::from_integer(&points[i] - &points[j]);
        }
        let scale = Rational::from_integer(values[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] = &acc[k] + c * &scale;
        }
    }
    normalize_q(&mut acc);
    if acc.len() != d + 1 {
        return None;
    }
    let mut ints = Vec::with_capacity(acc.len());
    for c in &acc {
        if !c.denom().is_one() {
            return None;
        }
        ints.push(c.numer().clone());
    }
    Some(Polynomial::new(ints))
}
