//! Dense univariate polynomials with arbitrary-precision integer coefficients,
//! exact sign evaluation at rationals, and Sturm root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficients stored lowest degree first; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Sign of `p(num/den)` for `den > 0`, computed exactly from the
    /// homogenised form `Σ c_i num^i den^(d-i)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        let Some(d) = self.degree() else { return 0 };
        // Horner: acc_{i} = acc_{i+1} * num + c_i * den^(d-i)
        let mut acc = self.coeffs[d].clone();
        let mut den_pow = BigInt::one();
        for i in (0..d).rev() {
            den_pow *= den;
            acc = acc * num + &self.coeffs[i] * &den_pow;
        }
        sign_of(&acc)
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> i8 {
        self.sign_at(x.numer(), x.denom())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Content-free copy with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg p - deg d + 1) * p = q*d + r`.
    pub fn pseudo_div(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(dp) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if dp < dd {
            return (Self::zero(), self.clone());
        }
        let lc = divisor.leading().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); dp - dd + 1];
        for top in (dd..=dp).rev() {
            let t = std::mem::take(&mut r[top]);
            for c in r.iter_mut().take(top) {
                *c *= &lc;
            }
            for c in q.iter_mut() {
                *c *= &lc;
            }
            q[top - dd] = t.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                r[top - dd + i] -= &t * dc;
            }
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// `lc(d)^(deg p - deg d + 1) * p mod d`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        self.pseudo_div(divisor).1
    }

    /// `self / divisor` when the division is exact over the rationals and
    /// the quotient has integer coefficients.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.pseudo_div(divisor);
        if !r.is_zero() {
            return None;
        }
        let e = match (self.degree(), divisor.degree()) {
            (Some(a), Some(b)) if a >= b => a - b + 1,
            _ => return Some(Self::zero()),
        };
        let f = num_traits::pow(divisor.leading().clone(), e);
        let mut out = Vec::with_capacity(q.coeffs.len());
        for c in &q.coeffs {
            let (quot, rem) = c.div_rem(&f);
            if !rem.is_zero() {
                return None;
            }
            out.push(quot);
        }
        Some(Self::new(out))
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive()
    }

    /// Greatest common divisor up to a constant, primitive with positive
    /// leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Sturm sequence `p, p', -rem, ...` of the square-free part, each term
    /// scaled by a positive constant (sign variations are unchanged).
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let head = self.squarefree();
        let deriv = head.derivative();
        let mut chain = vec![head, deriv];
        loop {
            let len = chain.len();
            let (a, b) = (&chain[len - 2], &chain[len - 1]);
            if b.is_zero() {
                chain.pop();
                break;
            }
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // pseudo_rem multiplies by lc^e; undo a negative factor
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let mut neg = neg_poly(&r);
            if b.leading().is_negative() && (da - db + 1) % 2 == 1 {
                neg = neg_poly(&neg);
            }
            chain.push(scale_positive(&neg));
        }
        chain
    }
}

/// Number of distinct real roots of the chain's head in `(lo, hi]`.
/// `lo` must not be a root.
pub fn sturm_count(chain: &[IntPoly], lo: &BigRational, hi: &BigRational) -> usize {
    let v_lo = variations(chain, lo);
    let v_hi = variations(chain, hi);
    v_lo.saturating_sub(v_hi)
}

fn variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = p.sign_at_rational(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn neg_poly(p: &IntPoly) -> IntPoly {
    IntPoly::new(p.coeffs.iter().map(|c| -c).collect())
}

/// Divides by the (positive) content.
fn scale_positive(p: &IntPoly) -> IntPoly {
    let mut g = BigInt::zero();
    for c in &p.coeffs {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return p.clone();
    }
    IntPoly::new(p.coeffs.iter().map(|c| c / &g).collect())
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(if x.is_negative() { f64::MIN } else { f64::MAX })
}

impl fmt::Display for IntPoly {
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
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            match (show_mag, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (true, _) => write!(f, "{mag}x^{i}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}
