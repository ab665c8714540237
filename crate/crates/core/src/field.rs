//! Exact arithmetic in the real field `Q(cos(pi/M))`.
//!
//! Every entry of the Gram matrix of a Coxeter group whose finite edge orders
//! all divide `M` is a polynomial in `c = cos(pi/M)`. Elements are stored as
//! coefficient vectors reduced modulo the minimal polynomial of `c`, so two
//! scalars are equal exactly when their coefficients are. Signs are decided by
//! evaluating the polynomial on a rational enclosure of `c`, refining the
//! enclosure by bisection until the result excludes zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// An element of `Q(c)` in canonical form: `coeffs[i]` is the coefficient of
/// `c^i`, and the vector always has exactly `degree` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldScalar {
    coeffs: Vec<BigRational>,
}

impl FieldScalar {
    pub fn zero(degree: usize) -> Self {
        FieldScalar {
            coeffs: vec![BigRational::zero(); degree],
        }
    }

    pub fn from_rational(degree: usize, q: BigRational) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = q;
        s
    }

    pub fn from_integer(degree: usize, n: i64) -> Self {
        Self::from_rational(degree, BigRational::from_integer(n.into()))
    }

    pub fn one(degree: usize) -> Self {
        Self::from_integer(degree, 1)
    }

    /// Builds a scalar from explicit coefficients. The caller guarantees the
    /// vector is already reduced, i.e. has exactly `degree` entries.
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a field scalar needs at least one coefficient"
        );
        FieldScalar { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldScalar {
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(n.into()))
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        FieldScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        FieldScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for FieldScalar {
    /// Renders as a polynomial in `c`, e.g. `1/2 - 3c^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if wrote {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            } else if a.is_negative() {
                f.write_str("-")?;
            }
            let mono = match i {
                0 => String::new(),
                1 => "c".to_string(),
                _ => format!("c^{i}"),
            };
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&mono)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Rational interval `[lo, hi]`.
#[derive(Debug, Clone)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    fn add_point(&self, q: &BigRational) -> Self {
        Interval {
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    fn mul(&self, other: &Interval) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }
}

/// The field `Q(cos(pi/M))` together with an enclosure of its generator.
#[derive(Debug)]
pub struct FieldContext {
    m: u64,
    /// Monic minimal polynomial of `c`, lowest degree first, length `degree + 1`.
    minpoly: Vec<BigRational>,
    /// Shrinks monotonically; every reader sees an interval containing `c`.
    enclosure: RwLock<Interval>,
}

impl FieldContext {
    /// Field generated by `cos(pi/m)`. `m = 1` gives `Q` with `c = -1`.
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "field modulus must be positive");
        let minpoly = cos_pi_over_minpoly(m);
        let approx = (std::f64::consts::PI / m as f64).cos();
        let enclosure = if minpoly.len() == 2 {
            // Degree one: c is the rational root itself.
            Interval::point(-&minpoly[0])
        } else {
            let delta = 1e-9;
            let lo = BigRational::from_float(approx - delta).expect("finite");
            let hi = BigRational::from_float(approx + delta).expect("finite");
            let slo = Sign::of_rational(&eval_rational(&minpoly, &lo));
            let shi = Sign::of_rational(&eval_rational(&minpoly, &hi));
            assert!(
                slo != Sign::Zero && shi != Sign::Zero && slo != shi,
                "initial enclosure of cos(pi/{m}) does not isolate a root"
            );
            Interval { lo, hi }
        };
        FieldContext {
            m,
            minpoly,
            enclosure: RwLock::new(enclosure),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minpoly
    }

    pub fn zero(&self) -> FieldScalar {
        FieldScalar::zero(self.degree())
    }

    pub fn one(&self) -> FieldScalar {
        FieldScalar::one(self.degree())
    }

    pub fn rational(&self, q: BigRational) -> FieldScalar {
        FieldScalar::from_rational(self.degree(), q)
    }

    pub fn integer(&self, n: i64) -> FieldScalar {
        FieldScalar::from_integer(self.degree(), n)
    }

    /// The generator `c = cos(pi/M)`.
    pub fn generator(&self) -> FieldScalar {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    /// `cos(pi/m)` for a divisor `m` of `M`, via `T_{M/m}(c)`.
    pub fn cos_pi_over(&self, m: u64) -> FieldScalar {
        assert!(
            m >= 1 && self.m % m == 0,
            "cos(pi/{m}) does not lie in Q(cos(pi/{}))",
            self.m
        );
        self.chebyshev((self.m / m) as usize)
    }

    /// `T_j(c)`, the Chebyshev polynomial evaluated at the generator.
    pub fn chebyshev(&self, j: usize) -> FieldScalar {
        let c = self.generator();
        let mut prev = self.one();
        if j == 0 {
            return prev;
        }
        let mut cur = c.clone();
        let two_c = c.scale_int(2);
        for _ in 1..j {
            let next = &self.mul(&two_c, &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> FieldScalar {
        let d = self.degree();
        while poly.len() > d {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (i, a) in self.minpoly[..d].iter().enumerate() {
                poly[shift + i] -= &top * a;
            }
        }
        poly.resize(d, BigRational::zero());
        FieldScalar { coeffs: poly }
    }

    pub fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        if let Some(q) = a.as_rational() {
            return b.scale(q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(q);
        }
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &FieldScalar) -> Option<FieldScalar> {
        if a.is_zero() {
            return None;
        }
        if let Some(q) = a.as_rational() {
            return Some(self.rational(q.recip()));
        }
        // Extended Euclid on (minpoly, a): s*minpoly + t*a = gcd, a nonzero constant.
        let mut r0 = self.minpoly.clone();
        let mut r1 = trim(a.coeffs.clone());
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        let g = r1[0].clone();
        debug_assert!(!g.is_zero(), "minimal polynomial is irreducible");
        let t: Vec<BigRational> = t1.iter().map(|x| x / &g).collect();
        Some(self.reduce(t))
    }

    /// Exact sign. Zero is detected symbolically; otherwise the enclosure of
    /// `c` is refined until interval evaluation excludes zero.
    pub fn sign(&self, a: &FieldScalar) -> Sign {
        if let Some(q) = a.as_rational() {
            return Sign::of_rational(q);
        }
        self.float_sign(a).unwrap_or_else(|| self.exact_sign(a))
    }

    fn exact_sign(&self, a: &FieldScalar) -> Sign {
        if let Some(q) = a.as_rational() {
            return Sign::of_rational(q);
        }
        let mut bits = 16;
        loop {
            let enc = self.enclosure.read().expect("enclosure lock").clone();
            let val = eval_interval(&a.coeffs, &enc);
            if val.lo.is_positive() {
                return Sign::Positive;
            }
            if val.hi.is_negative() {
                return Sign::Negative;
            }
            self.refine_to(&enc, bits);
            bits *= 2;
        }
    }

    /// Sign decided in floating point when the value clears a bound on the
    /// accumulated rounding error of Horner evaluation. `None` means the
    /// value is too close to zero to tell.
    fn float_sign(&self, a: &FieldScalar) -> Option<Sign> {
        let c = (std::f64::consts::PI / self.m as f64).cos();
        let mut val = 0.0f64;
        let mut mag = 0.0f64;
        for q in a.coeffs.iter().rev() {
            let x = q.to_f64()?;
            if !x.is_finite() {
                return None;
            }
            val = val * c + x;
            mag = mag * c.abs() + x.abs();
        }
        let n = a.coeffs.len() as f64;
        let bound = (4.0 * n + 8.0) * f64::EPSILON * mag + f64::MIN_POSITIVE;
        if !val.is_finite() || !bound.is_finite() || val.abs() <= bound {
            None
        } else if val > 0.0 {
            Some(Sign::Positive)
        } else {
            Some(Sign::Negative)
        }
    }

    /// Sign of `a - b`.
    pub fn cmp(&self, a: &FieldScalar, b: &FieldScalar) -> std::cmp::Ordering {
        match self.sign(&(a - b)) {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        }
    }

    /// Bisects the current enclosure `bits` more times, unless another
    /// thread has already refined it past `seen`.
    fn refine_to(&self, seen: &Interval, bits: u32) {
        let mut guard = self.enclosure.write().expect("enclosure lock");
        if (&guard.hi - &guard.lo) < (&seen.hi - &seen.lo) {
            return;
        }
        let lo_sign = Sign::of_rational(&eval_rational(&self.minpoly, &guard.lo));
        let two = BigRational::from_integer(2.into());
        for _ in 0..bits {
            let mid = (&guard.lo + &guard.hi) / &two;
            let mid_sign = Sign::of_rational(&eval_rational(&self.minpoly, &mid));
            if mid_sign == Sign::Zero {
                guard.lo = mid.clone();
                guard.hi = mid;
                return;
            }
            if mid_sign == lo_sign {
                guard.lo = mid;
            } else {
                guard.hi = mid;
            }
        }
    }

    pub fn to_f64(&self, a: &FieldScalar) -> f64 {
        let c = (std::f64::consts::PI / self.m as f64).cos();
        a.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, q| acc * c + q.to_f64().unwrap_or(f64::NAN))
    }
}

fn eval_rational(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn eval_interval(poly: &[BigRational], x: &Interval) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for a in poly.iter().rev() {
        acc = acc.mul(x).add_point(a);
    }
    acc
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &f * y;
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    (trim(q), r)
}

/// Integer cyclotomic polynomial `Phi_n`, lowest degree first.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    // z^n - 1 divided by Phi_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = int_exact_div(&num, &cyclotomic(d));
        }
    }
    num
}

fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero");
    let mut q = vec![BigInt::zero(); a.len() - db];
    for shift in (0..q.len()).rev() {
        let (f, rem) = r[shift + db].div_rem(lead);
        debug_assert!(rem.is_zero());
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &f * y;
        }
        q[shift] = f;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "cyclotomic division is exact");
    q
}

/// Monic minimal polynomial of `cos(pi/m)` over `Q`.
///
/// `2cos(pi/m) = z + 1/z` for a primitive `2m`-th root of unity `z`; the
/// palindromic cyclotomic polynomial `Phi_2m` is rewritten in `x = z + 1/z`
/// using `z^j + z^-j = D_j(x)` with `D_0 = 2`, `D_1 = x`,
/// `D_j = x D_{j-1} - D_{j-2}`, then `x = 2c` is substituted.
pub(crate) fn cos_pi_over_minpoly(m: u64) -> Vec<BigRational> {
    if m == 1 {
        // cos(pi) = -1
        return vec![BigRational::one(), BigRational::one()];
    }
    let n = 2 * m;
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    debug_assert!(deg % 2 == 0);
    let h = deg / 2;
    // D_j as integer polynomials in x.
    let mut d: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for j in 2..=h {
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, a) in d[j - 1].iter().enumerate() {
            next[i + 1] += a;
        }
        for (i, a) in d[j - 2].iter().enumerate() {
            next[i] -= a;
        }
        d.push(next);
    }
    let mut psi = vec![BigInt::zero(); h + 1];
    psi[0] += &phi[h];
    for j in 1..=h {
        for (i, a) in d[j].iter().enumerate() {
            psi[i] += &phi[h + j] * a;
        }
    }
    // x = 2c
    let mut pow = BigInt::one();
    let mut poly: Vec<BigRational> = Vec::with_capacity(h + 1);
    for a in psi {
        poly.push(BigRational::from_integer(a * &pow));
        pow *= 2;
    }
    let lead = poly.last().expect("nonempty").clone();
    poly.iter().map(|a| a / &lead).collect()
}
