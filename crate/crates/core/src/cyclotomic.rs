//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Values are polynomials in `zeta_m` reduced modulo the m-th cyclotomic
//! polynomial, with trailing zero coefficients stripped. That makes the
//! coefficient vector a canonical form: two values are equal iff their
//! vectors match, and zero is always the empty vector regardless of how
//! large the modulus is.

use crate::error::{Error, Result};
use crate::rat::{rat_string, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, std::sync::Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, std::sync::Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Euler's totient by trial-division factoring.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut phi = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut power = 1u64;
            m /= d;
            while m % d == 0 {
                power *= d;
                m /= d;
            }
            phi *= power * (d - 1);
        }
        d += 1;
    }
    if m > 1 {
        phi *= m - 1;
    }
    phi
}

/// Exact division of integer polynomials (ascending coefficients), used on
/// the ladder `x^m - 1 = prod over d | m of Phi_d`. Panics if the division
/// leaves a remainder, which cannot happen on that ladder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(!den.is_empty() && den.last().unwrap().is_one());
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let v = &rem[i + k] - &c * dc;
            rem[i + k] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Coefficients of the m-th cyclotomic polynomial, ascending, memoized.
pub fn cyclotomic_polynomial(m: u64) -> std::sync::Arc<Vec<BigInt>> {
    assert!(m >= 1);
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&m) {
        return hit.clone();
    }
    // x^m - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut poly = num;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    let arc = std::sync::Arc::new(poly);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(m, arc.clone());
    arc
}

/// Element of `Q(zeta_m)` in the canonical power basis `1, zeta, ...,
/// zeta^(phi(m)-1)` with trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycScalar {
    modulus: u64,
    coeffs: Vec<Rat>,
}

impl CycScalar {
    /// Builds from an arbitrary coefficient vector over powers of `zeta_m`
    /// (any length; exponents past `m` are not expected by callers).
    pub fn new(modulus: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("cyclotomic modulus must be positive".into()));
        }
        let mut v = CycScalar { modulus, coeffs };
        v.reduce();
        Ok(v)
    }

    pub fn zero(modulus: u64) -> Self {
        CycScalar { modulus, coeffs: Vec::new() }
    }

    pub fn from_rat(modulus: u64, x: Rat) -> Self {
        let mut v = CycScalar { modulus, coeffs: vec![x] };
        v.strip();
        v
    }

    pub fn from_integer(modulus: u64, x: i64) -> Self {
        Self::from_rat(modulus, crate::rat::rat(x))
    }

    /// `zeta_m^e` for any integer exponent.
    pub fn root_power(modulus: u64, e: i64) -> Self {
        let m = modulus as i64;
        let idx = ((e % m) + m) % m;
        let mut coeffs = vec![Rat::zero(); idx as usize + 1];
        coeffs[idx as usize] = Rat::one();
        let mut v = CycScalar { modulus, coeffs };
        v.reduce();
        v
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(c) when the value lies in `Q`, i.e. only the constant term
    /// survives reduction.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn strip(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn reduce(&mut self) {
        let phi = euler_phi(self.modulus) as usize;
        if self.coeffs.len() > phi {
            let min_poly = cyclotomic_polynomial(self.modulus);
            let deg = min_poly.len() - 1;
            debug_assert_eq!(deg, phi);
            for i in (deg..self.coeffs.len()).rev() {
                let c = std::mem::replace(&mut self.coeffs[i], Rat::zero());
                if c.is_zero() {
                    continue;
                }
                // zeta^i = -c * (lower terms of the minimal polynomial)
                for (k, pc) in min_poly.iter().enumerate().take(deg) {
                    if pc.is_zero() {
                        continue;
                    }
                    let delta = &c * Rat::from(pc.clone());
                    self.coeffs[i - deg + k] -= delta;
                }
            }
            self.coeffs.truncate(deg);
        }
        self.strip();
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidParameter(format!(
                "cyclotomic moduli differ: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        let mut v = CycScalar { modulus: self.modulus, coeffs };
        v.strip();
        Ok(v)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        let mut v = CycScalar { modulus: self.modulus, coeffs };
        v.strip();
        Ok(v)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        let mut v = CycScalar { modulus: self.modulus, coeffs };
        v.reduce();
        Ok(v)
    }

    pub fn scale(&self, by: &Rat) -> Self {
        let mut v = CycScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        };
        v.strip();
        v
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        let m = self.modulus as usize;
        let mut coeffs = vec![Rat::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(m - k) % m] += c;
        }
        let mut v = CycScalar { modulus: self.modulus, coeffs };
        v.reduce();
        v
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("CycScalar", 2)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("coefficients", &CoeffSeq(&self.coeffs))?;
        st.end()
    }
}

struct CoeffSeq<'a>(&'a [Rat]);

impl Serialize for CoeffSeq<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            seq.serialize_element(&rat_string(c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ints(m: u64, v: &[i64]) -> CycScalar {
        CycScalar::new(m, v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), poly(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), poly(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), poly(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), poly(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), poly(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(
            *cyclotomic_polynomial(21),
            poly(&[1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1])
        );
    }

    #[test]
    fn phi_values() {
        for (m, expect) in [(1, 1), (2, 1), (3, 2), (12, 4), (21, 12), (49, 42), (343, 294)] {
            assert_eq!(euler_phi(m), expect, "phi({m})");
        }
    }

    #[test]
    fn root_relations() {
        // 1 + zeta_3 + zeta_3^2 = 0, computed inside Q(zeta_21)
        let z3 = CycScalar::root_power(21, 7);
        let sum = CycScalar::from_integer(21, 1)
            .add(&z3)
            .unwrap()
            .add(&z3.mul(&z3).unwrap())
            .unwrap();
        assert!(sum.is_zero());

        // zeta * conj(zeta) = 1
        let z = CycScalar::root_power(21, 1);
        assert_eq!(z.mul(&z.conj()).unwrap(), CycScalar::from_integer(21, 1));

        // zeta_21^21 = 1 via exponent folding
        assert_eq!(CycScalar::root_power(21, 22), CycScalar::root_power(21, 1));
        assert_eq!(CycScalar::root_power(21, -1), CycScalar::root_power(21, 20));
    }

    #[test]
    fn canonical_zero_stays_small() {
        let big = 3 * 7u64.pow(4);
        let z = CycScalar::zero(big);
        assert!(z.is_zero());
        assert_eq!(z.coefficients().len(), 0);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, format!("{{\"modulus\":{big},\"coefficients\":[]}}"));
    }

    #[test]
    fn arithmetic_mixes() {
        let a = ints(12, &[1, 2]);
        let b = ints(12, &[0, -2, 0, 5]);
        assert_eq!(a.add(&b).unwrap(), ints(12, &[1, 0, 0, 5]));
        assert_eq!(a.sub(&a).unwrap(), CycScalar::zero(12));
        // (1 + 2z)(3) = 3 + 6z
        let three = CycScalar::from_integer(12, 3);
        assert_eq!(a.mul(&three).unwrap(), ints(12, &[3, 6]));
        assert!(a.add(&ints(21, &[1])).is_err());
        // rational detection
        assert_eq!(ints(12, &[5]).as_rational(), Some(rat(5)));
        assert_eq!(a.as_rational(), None);
    }
}
