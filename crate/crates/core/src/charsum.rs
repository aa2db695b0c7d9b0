//! Tame character sums over a p-adic field: power residue symbols, Hilbert
//! symbols, Gauss sums, and the unit-group integrals that feed the
//! Whittaker computation.
//!
//! All sums are evaluated exactly in `Q(zeta_m)`. The additive character is
//! normalized so that the ring of integers is self-dual and carries volume
//! one; an integral over units at conductor `p^-m` is then the plain sum
//! over `(Z/p^m)^*` weighted by `p^-m`, which is what the `q_exp` tag of a
//! [`TaggedCyc`] records.

use crate::cyclotomic::{euler_phi, CycScalar};
use crate::error::{Error, Result};
use crate::rat::{ratio, Rat};
use num_traits::Zero;
use serde::Serialize;

const MAX_RESIDUE_MODULUS: u64 = 1 << 21;

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % modulus) as u128;
    let m = modulus as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// A residue field carrying an n-th order multiplicative character, fixed by
/// choosing the smallest primitive root mod p. Requires odd `n >= 3` with
/// `n | p - 1`, the unramified tame setting.
#[derive(Debug, Clone)]
pub struct LocalFieldSpec {
    p: u64,
    order: u64,
    generator: u64,
    /// chi[e] for e in 1..p: the character exponent of the unit e.
    chi: Vec<u64>,
}

impl LocalFieldSpec {
    pub fn new(p: u64, order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if p > MAX_RESIDUE_MODULUS {
            return Err(Error::Unsupported(format!(
                "residue characteristic {p} above supported bound"
            )));
        }
        if order < 3 || order % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "character order must be odd and at least 3, got {order}"
            )));
        }
        if (p - 1) % order != 0 {
            return Err(Error::InvalidParameter(format!(
                "order {order} does not divide p - 1 = {}",
                p - 1
            )));
        }
        let generator = (2..p)
            .find(|&g| {
                prime_factors(p - 1)
                    .iter()
                    .all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
            })
            .expect("every prime has a primitive root");
        // Discrete log table in the order-n quotient: e^((p-1)/n) lands in
        // the cyclic group generated by omega = g^((p-1)/n).
        let omega = pow_mod(generator, (p - 1) / order, p);
        let mut dlog = vec![u64::MAX; p as usize];
        let mut w = 1u64;
        for k in 0..order {
            dlog[w as usize] = k;
            w = (w as u128 * omega as u128 % p as u128) as u64;
        }
        let mut chi = vec![u64::MAX; p as usize];
        for e in 1..p {
            let v = pow_mod(e, (p - 1) / order, p);
            chi[e as usize] = dlog[v as usize];
        }
        Ok(LocalFieldSpec { p, order, generator, chi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn omega(&self) -> u64 {
        pow_mod(self.generator, (self.p - 1) / self.order, self.p)
    }

    fn unit_mod_p(&self, x: i64) -> Result<u64> {
        let p = self.p as i64;
        let r = ((x % p) + p) % p;
        if r == 0 {
            return Err(Error::InvalidParameter(format!(
                "{x} is not a unit mod {}",
                self.p
            )));
        }
        Ok(r as u64)
    }

    /// Exponent k < order with `x^((p-1)/n) = omega^k` mod p.
    pub fn power_residue(&self, x: i64) -> Result<u64> {
        Ok(self.chi[self.unit_mod_p(x)? as usize])
    }

    /// n-th order Hilbert symbol of `p^v1 * u1` and `p^v2 * u2`, returned as
    /// the exponent of the root of unity: the symbol equals
    /// `chi((-1)^(v1 v2) * u1^v2 * u2^(-v1))`.
    pub fn tame_hilbert(&self, v1: i64, u1: i64, v2: i64, u2: i64) -> Result<u64> {
        let a = self.unit_mod_p(u1)?;
        let b = self.unit_mod_p(u2)?;
        let group = (self.p - 1) as i64;
        let e1 = v2.rem_euclid(group) as u64;
        let e2 = (-v1).rem_euclid(group) as u64;
        let mut val = pow_mod(a, e1, self.p) as u128 * pow_mod(b, e2, self.p) as u128;
        val %= self.p as u128;
        if (v1 & 1) == 1 && (v2 & 1) == 1 {
            val = val * (self.p - 1) as u128 % self.p as u128;
        }
        Ok(self.chi[val as usize])
    }

    /// Gauss sum twisted by the t-th power of the residue character, in
    /// `Q(zeta_np)`. The raw sum over units mod p is tagged with `q_exp =
    /// -1/2`, so the pair represents the normalized sum of absolute value 1.
    pub fn gauss_sum(&self, t: i64) -> Result<TaggedCyc> {
        let value = self.twisted_unit_sum_mod_p(t)?;
        Ok(TaggedCyc { value, q_exp: ratio(-1, 2) })
    }

    /// Integral over units of `chi^t(e) psi(p^-m e)` with the unit group
    /// carrying measure `p^-m` per residue class mod `p^m`. The raw sum is
    /// tagged with `q_exp = -m`. Vanishes identically for `m >= 2`, which the
    /// evaluation confirms rather than assumes.
    pub fn unit_integral(&self, m: u32, t: i64) -> Result<TaggedCyc> {
        if m == 0 {
            return Err(Error::InvalidParameter("conductor exponent must be positive".into()));
        }
        let q_exp = crate::rat::rat(-(m as i64));
        if m == 1 {
            let value = self.twisted_unit_sum_mod_p(t)?;
            return Ok(TaggedCyc { value, q_exp });
        }
        let pm = self
            .p
            .checked_pow(m)
            .ok_or_else(|| Error::Overflow(format!("p^{m} exceeds u64")))?;
        let modulus = self
            .order
            .checked_mul(pm)
            .ok_or_else(|| Error::Overflow("cyclotomic modulus exceeds u64".into()))?;
        if modulus > 8_000_000 {
            return Err(Error::Unsupported(format!(
                "tensor tally at modulus {modulus} above supported bound"
            )));
        }
        if self.crt_sum_is_zero(pm, t) {
            return Ok(TaggedCyc { value: CycScalar::zero(modulus), q_exp });
        }
        Err(Error::Unsupported(format!(
            "nonzero cyclotomic value at modulus {modulus} is beyond the supported size"
        )))
    }

    /// Sum over units mod p of `zeta_n^(t chi(e)) zeta_p^e` in `Q(zeta_np)`,
    /// using `zeta_n = zeta_np^p` and `zeta_p = zeta_np^n`.
    fn twisted_unit_sum_mod_p(&self, t: i64) -> Result<CycScalar> {
        let n = self.order;
        let np = n * self.p;
        if np > 100_000 {
            return Err(Error::Unsupported(format!(
                "cyclotomic arithmetic at modulus {np} above supported bound"
            )));
        }
        let mut coeffs = vec![Rat::zero(); np as usize];
        let t_red = t.rem_euclid(n as i64) as u64;
        for e in 1..self.p {
            let a = t_red * self.chi[e as usize] % n;
            let idx = (self.p * a + n * e) % np;
            coeffs[idx as usize] += Rat::from(num_bigint::BigInt::from(1));
        }
        CycScalar::new(np, coeffs)
    }

    /// Exact zero test of the sum over units mod p^m (m >= 2) of
    /// `zeta_n^(t chi(e)) zeta_(p^m)^e`, working in the tensor basis of
    /// `Q(zeta_n) (x) Q(zeta_(p^m))` with integer tallies. Both reductions
    /// use the respective cyclotomic polynomials, so a zero here is a zero
    /// in `Q(zeta_(n p^m))`.
    fn crt_sum_is_zero(&self, pm: u64, t: i64) -> bool {
        let n = self.order as usize;
        let pm = pm as usize;
        let p = self.p as usize;
        let t_red = t.rem_euclid(self.order as i64) as usize;
        let mut tally = vec![0i64; n * pm];
        for e in 1..pm {
            if e % p == 0 {
                continue;
            }
            let a = t_red * self.chi[e % p] as usize % n;
            tally[a * pm + e] += 1;
        }
        // Reduce the zeta_n exponents modulo Phi_n.
        let phi_n = euler_phi(self.order) as usize;
        let min_poly = crate::cyclotomic::cyclotomic_polynomial(self.order);
        let poly_i64: Vec<i64> = min_poly
            .iter()
            .map(|c| i64::try_from(c).expect("small cyclotomic coefficients"))
            .collect();
        for a in (phi_n..n).rev() {
            for e in 0..pm {
                let c = tally[a * pm + e];
                if c == 0 {
                    continue;
                }
                tally[a * pm + e] = 0;
                for (k, &pc) in poly_i64.iter().enumerate().take(phi_n) {
                    tally[(a - phi_n + k) * pm + e] -= c * pc;
                }
            }
        }
        // Reduce the zeta_(p^m) exponents: x^(phi + d) = -sum_j x^(j s + d)
        // for d < s = p^(m-1), from Phi_(p^m)(x) = sum_j x^(j s).
        let s = pm / p;
        let phi_pm = (p - 1) * s;
        for row in 0..phi_n {
            let base = row * pm;
            for e in phi_pm..pm {
                let c = tally[base + e];
                if c == 0 {
                    continue;
                }
                tally[base + e] = 0;
                let d = e - phi_pm;
                for j in 0..p - 1 {
                    tally[base + j * s + d] -= c;
                }
            }
        }
        tally.iter().all(|&c| c == 0)
    }
}

/// A cyclotomic value together with a power of `q = p` carried as a formal
/// tag: the pair means `q^(q_exp) * value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaggedCyc {
    pub value: CycScalar,
    #[serde(with = "crate::rat::serde_rat")]
    pub q_exp: Rat,
}

impl TaggedCyc {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ints(m: u64, v: &[i64]) -> CycScalar {
        CycScalar::new(m, v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn field_spec_validation() {
        assert!(LocalFieldSpec::new(8, 3).is_err());
        assert!(LocalFieldSpec::new(7, 4).is_err());
        assert!(LocalFieldSpec::new(7, 5).is_err());
        assert!(LocalFieldSpec::new(11, 3).is_err());
        let f = LocalFieldSpec::new(7, 3).unwrap();
        assert_eq!(f.generator(), 3);
        assert_eq!(f.omega(), 2);
        let f13 = LocalFieldSpec::new(13, 3).unwrap();
        assert_eq!(f13.generator(), 2);
        assert_eq!(f13.omega(), 3);
    }

    #[test]
    fn residue_character_table() {
        let f = LocalFieldSpec::new(7, 3).unwrap();
        let expect = [(1, 0), (2, 2), (3, 1), (4, 1), (5, 2), (6, 0)];
        for (e, k) in expect {
            assert_eq!(f.power_residue(e).unwrap(), k, "chi({e})");
        }
        assert_eq!(f.power_residue(2).unwrap(), 2);
        assert_eq!(f.power_residue(9).unwrap(), f.power_residue(2).unwrap());
        assert_eq!(f.power_residue(-5).unwrap(), f.power_residue(2).unwrap());
        assert!(f.power_residue(14).is_err());
    }

    #[test]
    fn residue_character_is_homomorphism() {
        for p in [7u64, 13, 19, 31] {
            let f = LocalFieldSpec::new(p, 3).unwrap();
            for a in 1..p {
                for b in 1..p {
                    let lhs = f.power_residue((a * b) as i64).unwrap();
                    let rhs = (f.power_residue(a as i64).unwrap()
                        + f.power_residue(b as i64).unwrap())
                        % 3;
                    assert_eq!(lhs, rhs, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn hilbert_symbol_values() {
        let f = LocalFieldSpec::new(7, 3).unwrap();
        // (p, p) is trivial here because (p-1)/n is even
        assert_eq!(f.tame_hilbert(1, 1, 1, 1).unwrap(), 0);
        // (u, 1) is always trivial
        for u in 1..7 {
            assert_eq!(f.tame_hilbert(0, u, 0, 1).unwrap(), 0);
        }
        // (u, p) recovers the residue character
        for u in 1..7i64 {
            assert_eq!(
                f.tame_hilbert(0, u, 1, 1).unwrap(),
                f.power_residue(u).unwrap()
            );
        }
        // antisymmetry: (x, y)(y, x) = 1
        for (v1, u1, v2, u2) in [(1, 3, 2, 5), (0, 2, 1, 3), (1, 6, 1, 2), (2, 4, 3, 5)] {
            let fwd = f.tame_hilbert(v1, u1, v2, u2).unwrap();
            let bwd = f.tame_hilbert(v2, u2, v1, u1).unwrap();
            assert_eq!((fwd + bwd) % 3, 0, "({v1},{u1}) vs ({v2},{u2})");
        }
    }

    #[test]
    fn gauss_sum_goldens() {
        let f = LocalFieldSpec::new(7, 3).unwrap();
        let g0 = f.gauss_sum(0).unwrap();
        assert_eq!(g0.value, ints(21, &[-1]));
        assert_eq!(g0.q_exp, ratio(-1, 2));
        let g1 = f.gauss_sum(1).unwrap();
        assert_eq!(g1.value, ints(21, &[2, -1, -2, 3, -2, -2, 1, 1, -1, 0, 1, -3]));
        let g2 = f.gauss_sum(2).unwrap();
        assert_eq!(g2.value, ints(21, &[-1, 1, 2, 0, -1, 2, -1, -1, 1, 0, -1]));
        // index is periodic mod the character order
        assert_eq!(f.gauss_sum(4).unwrap(), g1);
        assert_eq!(f.gauss_sum(-1).unwrap(), g2);
    }

    #[test]
    fn gauss_sum_absolute_value() {
        for p in [7u64, 13] {
            let f = LocalFieldSpec::new(p, 3).unwrap();
            for t in [1i64, 2] {
                let g = f.gauss_sum(t).unwrap();
                let norm = g.value.mul(&g.value.conj()).unwrap();
                assert_eq!(
                    norm,
                    CycScalar::from_integer(3 * p, p as i64),
                    "p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn unit_integral_first_conductor_matches_gauss() {
        let f = LocalFieldSpec::new(7, 3).unwrap();
        for t in [0i64, 1, 2] {
            let ui = f.unit_integral(1, t).unwrap();
            let gs = f.gauss_sum(t).unwrap();
            assert_eq!(ui.value, gs.value);
            assert_eq!(ui.q_exp, rat(-1));
        }
        // trivial twist at conductor one is the Ramanujan value -1
        assert_eq!(f.unit_integral(1, 0).unwrap().value, ints(21, &[-1]));
    }

    #[test]
    fn unit_integral_vanishes_at_higher_conductor() {
        let f = LocalFieldSpec::new(7, 3).unwrap();
        for m in 2..=4u32 {
            for t in [0i64, 1, 2] {
                let v = f.unit_integral(m, t).unwrap();
                assert!(v.is_zero(), "m={m} t={t}");
                assert_eq!(v.q_exp, rat(-(m as i64)));
            }
        }
        let f13 = LocalFieldSpec::new(13, 3).unwrap();
        assert!(f13.unit_integral(2, 1).unwrap().is_zero());
    }
}
