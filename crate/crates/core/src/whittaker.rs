//! Exponent bookkeeping for the unramified spherical computation: pole
//! points and character exponents of the inducing data, the boundary
//! exponent with its independent crosscheck, the three-factor exponent
//! pipeline, and the assembled two-term special value.
//!
//! Scalars are formal sums `coeff * gamma^w * q^e * token`, where `gamma`
//! is the normalized Weil index, `q` the residue cardinality, and `token`
//! an opaque symbol for a Whittaker value at a torus point. Coefficients
//! are exact: rationals, or cyclotomic integers when a character sum is
//! multiplied in.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::charsum::LocalFieldSpec;
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::matgroup::modulus_character_exponent;
use crate::partitions::{dimension_equation_check, unipotent_radical_dim, Partition};
use crate::rat::{rat, rat_string, ratio, Rat};
use num_traits::Zero;

/// Which family of covers the exponent formulas refer to: odd-degree
/// covers of the full group, or the half-integral family attached to
/// double covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    Odd,
    Even,
}

/// The distinguished point where the normalized Eisenstein series is
/// evaluated: a strictly decreasing arithmetic string with step `1/r`.
///
/// Odd kind: `s_i = (rank - i + 1) / r`, so `r * s_rank = 1`.
/// Even kind: `s_i = (rank - i) / r + 1/(2r)`, so `s_rank = 1/(2r)`.
pub fn pole_point(rank: usize, r: u64, kind: CoverKind) -> Result<Vec<Rat>> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("cover degree must be positive".into()));
    }
    let rr = r as i64;
    let s: Vec<Rat> = (1..=rank as i64)
        .map(|i| match kind {
            CoverKind::Odd => ratio(rank as i64 - i + 1, rr),
            CoverKind::Even => ratio(rank as i64 - i, rr) + ratio(1, 2 * rr),
        })
        .collect();
    for w in s.windows(2) {
        debug_assert_eq!(rat(rr) * (&w[0] - &w[1]), rat(1));
    }
    match kind {
        CoverKind::Odd => debug_assert_eq!(rat(rr) * s.last().unwrap(), rat(1)),
        CoverKind::Even => debug_assert_eq!(s.last().unwrap(), &ratio(1, 2 * rr)),
    }
    Ok(s)
}

/// Exponents of the torus character of the theta representation at the
/// pole point: `(1 - s_i)`-type values cleared of the modulus shift.
///
/// Odd kind: `e_i = (rank - i + 1)(r - 1) / r`.
/// Even kind: `e_i = (2(rank - i + 1) r - (2(rank - i + 1) - 1)) / (2r)`.
pub fn theta_character_exponents(rank: usize, r: u64, kind: CoverKind) -> Result<Vec<Rat>> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("cover degree must be positive".into()));
    }
    let rr = r as i64;
    Ok((1..=rank as i64)
        .map(|i| {
            let d = rank as i64 - i + 1;
            match kind {
                CoverKind::Odd => ratio(d * (rr - 1), rr),
                CoverKind::Even => ratio(2 * d * rr - (2 * d - 1), 2 * rr),
            }
        })
        .collect())
}

fn check_cover(n: usize, r: u64) -> Result<u64> {
    if r % 2 == 0 || r < 3 {
        return Err(Error::InvalidParameter(format!(
            "cover degree must be odd and at least 3, got {r}"
        )));
    }
    let rp = (r - 1) / 2;
    if (n as u64) < rp {
        return Err(Error::InvalidParameter(format!(
            "rank {n} too small for cover degree {r}"
        )));
    }
    Ok(rp)
}

/// Exponent of the boundary coefficient attached to a `GL(a)` block:
/// the contribution left over when the descent shrinks the first `a`
/// coordinates. `a = 0` contributes nothing; admissible blocks satisfy
/// `a <= rank - (r-1)/2`.
pub fn beta_exponent(n: usize, r: u64, a: usize) -> Result<Rat> {
    let rp = check_cover(n, r)? as usize;
    if a == 0 {
        return Ok(Rat::zero());
    }
    if a + rp > n {
        return Err(Error::InvalidParameter(format!(
            "block size {a} not admissible: need a <= {}",
            n - rp
        )));
    }
    let b = n - a - rp;
    let (ai, ni, ri, bi) = (a as i64, n as i64, r as i64, b as i64);
    let main = ratio(ai * (ri - 1) * (2 * ni - ai + 1), 2 * ri);
    let half = ratio(ai, 2);
    let hook = rat(ai * (ni - ai - bi - 1));
    Ok(main - half - hook)
}

/// Independent route to [`beta_exponent`]: the sum of the first `a`
/// even-kind character exponents at the reduced rank `(2n - r + 1)/2`.
pub fn beta_crosscheck(n: usize, r: u64, a: usize) -> Result<Rat> {
    let rp = check_cover(n, r)? as usize;
    if a == 0 {
        return Ok(Rat::zero());
    }
    if a + rp > n {
        return Err(Error::InvalidParameter(format!(
            "block size {a} not admissible: need a <= {}",
            n - rp
        )));
    }
    let m = n - rp;
    let exps = theta_character_exponents(m, r, CoverKind::Even)?;
    Ok(exps.iter().take(a).sum())
}

/// Smallest prime `p` with `p = 1 (mod n)`: the cheapest residue field
/// admitting a character of exact order n.
pub fn default_witness_prime(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "character order must be at least 2, got {n}"
        )));
    }
    let mut p = n + 1;
    loop {
        if crate::charsum::is_prime(p) {
            return Ok(p);
        }
        p = p.checked_add(n).ok_or_else(|| {
            Error::Overflow("witness prime search overflowed".into())
        })?;
    }
}

/// The three exponent contributions whose sum is the constant in the
/// two-term special value, plus the vanishing witness for deeper shells.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    /// Count of unit-shell lattice points contributing at depth one.
    #[serde(with = "crate::rat::serde_rat")]
    pub shell_count: Rat,
    /// Normalization exponent of the character sum (one half).
    #[serde(with = "crate::rat::serde_rat")]
    pub gauss_shift: Rat,
    /// Modulus-character exponent of the dilated torus point.
    #[serde(with = "crate::rat::serde_rat")]
    pub modulus_shift: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub total: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub expected: Rat,
    pub matches: bool,
    /// The depth-two sum vanishes exactly at the witness prime.
    pub higher_shells_vanish: bool,
    pub witness_prime: u64,
}

/// Assembles the exponent of the second term: the unit-shell count, the
/// character-sum normalization, and the modulus shift of the dilation,
/// checked against the closed form `-(n-2)(2n-1)/(2n)`, with the deeper
/// shells certified to vanish at a witness prime.
pub fn exponent_pipeline(n: usize) -> Result<PipelineReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "pipeline is defined for odd rank >= 3, got {n}"
        )));
    }
    let ni = n as i64;
    let shell_count = rat(1 + (ni - 1) * (ni - 3) / 2);
    let gauss_shift = ratio(-1, 2);
    let mut pattern = vec![Rat::zero(), Rat::zero()];
    pattern.extend(std::iter::repeat(rat(-1)).take(n - 2));
    let modulus = modulus_character_exponent(n, n, &pattern)?;
    let modulus_shift = ratio(ni - 1, 2 * ni) * modulus;
    let total = &shell_count + &gauss_shift + &modulus_shift;
    let expected = ratio(-(ni - 2) * (2 * ni - 1), 2 * ni);
    let witness_prime = default_witness_prime(n as u64)?;
    let field = LocalFieldSpec::new(witness_prime, n as u64)?;
    let deeper = field.unit_integral(2, ni - 2)?;
    Ok(PipelineReport {
        n,
        shell_count: shell_count.clone(),
        gauss_shift,
        modulus_shift,
        matches: total == expected,
        total,
        expected,
        higher_shells_vanish: deeper.is_zero(),
        witness_prime,
    })
}

// ---------------------------------------------------------------------------
// formal scalars

/// Coefficient of a formal monomial: exact rational, or an element of a
/// cyclotomic ring once a character sum enters.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Rational(Rat),
    Cyclotomic(CycScalar),
}

impl Coefficient {
    pub fn one() -> Self {
        Coefficient::Rational(rat(1))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Cyclotomic(c) => c.is_zero(),
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Coefficient::Rational(a + b)
            }
            (Coefficient::Rational(a), Coefficient::Cyclotomic(b)) => {
                Coefficient::Cyclotomic(CycScalar::from_rat(b.modulus(), a.clone()).add(b)?)
            }
            (Coefficient::Cyclotomic(a), Coefficient::Rational(b)) => {
                Coefficient::Cyclotomic(a.add(&CycScalar::from_rat(a.modulus(), b.clone()))?)
            }
            (Coefficient::Cyclotomic(a), Coefficient::Cyclotomic(b)) => {
                Coefficient::Cyclotomic(a.add(b)?)
            }
        })
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Coefficient::Rational(a * b)
            }
            (Coefficient::Rational(a), Coefficient::Cyclotomic(b)) => {
                Coefficient::Cyclotomic(b.scale(a))
            }
            (Coefficient::Cyclotomic(a), Coefficient::Rational(b)) => {
                Coefficient::Cyclotomic(a.scale(b))
            }
            (Coefficient::Cyclotomic(a), Coefficient::Cyclotomic(b)) => {
                Coefficient::Cyclotomic(a.mul(b)?)
            }
        })
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coefficient::Rational(r) => ser.serialize_str(&rat_string(r)),
            Coefficient::Cyclotomic(c) => c.serialize(ser),
        }
    }
}

/// One term `coeff * gamma^weil_exp * q^q_exp * token`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub weil_exp: i64,
    pub q_exp: Rat,
    pub coeff: Coefficient,
    pub token: Option<String>,
}

impl Monomial {
    pub fn rational(weil_exp: i64, q_exp: Rat, coeff: Rat, token: Option<String>) -> Self {
        Monomial { weil_exp, q_exp, coeff: Coefficient::Rational(coeff), token }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Monomial", 4)?;
        st.serialize_field("weil_exp", &self.weil_exp)?;
        st.serialize_field("q_exp", &rat_string(&self.q_exp))?;
        st.serialize_field("coeff", &self.coeff)?;
        st.serialize_field("token", &self.token)?;
        st.end()
    }
}

/// Formal sum of monomials in canonical order: Weil exponent ascending,
/// then q-exponent descending, then token; like terms merged, zeros
/// dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FormalScalar {
    terms: Vec<Monomial>,
}

fn term_key(m: &Monomial) -> (i64, std::cmp::Reverse<Rat>, Option<String>) {
    (m.weil_exp, std::cmp::Reverse(m.q_exp.clone()), m.token.clone())
}

impl FormalScalar {
    pub fn zero() -> Self {
        FormalScalar::default()
    }

    pub fn from_monomials(terms: Vec<Monomial>) -> Result<Self> {
        let mut acc: Vec<Monomial> = Vec::new();
        for t in terms {
            match acc.iter_mut().find(|u| {
                u.weil_exp == t.weil_exp && u.q_exp == t.q_exp && u.token == t.token
            }) {
                Some(u) => u.coeff = u.coeff.add(&t.coeff)?,
                None => acc.push(t),
            }
        }
        acc.retain(|t| !t.coeff.is_zero());
        acc.sort_by_key(term_key);
        Ok(FormalScalar { terms: acc })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FormalScalar::from_monomials(terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let token = match (&a.token, &b.token) {
                    (None, None) => None,
                    (Some(t), None) | (None, Some(t)) => Some(t.clone()),
                    (Some(_), Some(_)) => {
                        return Err(Error::Unsupported(
                            "product of two opaque Whittaker symbols".into(),
                        ))
                    }
                };
                terms.push(Monomial {
                    weil_exp: a.weil_exp + b.weil_exp,
                    q_exp: &a.q_exp + &b.q_exp,
                    coeff: a.coeff.mul(&b.coeff)?,
                    token,
                });
            }
        }
        FormalScalar::from_monomials(terms)
    }

    /// Multiplies every term by `q^delta`.
    pub fn q_shift(&self, delta: &Rat) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial { q_exp: &t.q_exp + delta, ..t.clone() })
            .collect();
        FormalScalar { terms }
    }
}

impl Serialize for FormalScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

fn torus_token(coords: &[u64]) -> String {
    let inner: Vec<String> = coords.iter().map(u64::to_string).collect();
    format!("T({})", inner.join(","))
}

/// Options for [`special_value_rhs`].
#[derive(Debug, Clone, Default)]
pub struct SpecialValueOptions {
    /// Multiply the depth-one term by the raw order-n character sum at a
    /// witness prime (adds its `q^{-1/2}` normalization to the exponent).
    pub with_gauss_factor: bool,
    /// Residue characteristic for the character sum; defaults to the
    /// smallest prime `= 1 (mod n)`.
    pub witness_prime: Option<u64>,
}

/// The two-term right-hand side of the special-value identity for the
/// degree-n cover of `Sp(2n)` at torus depth `(n1, n2)`:
///
/// `gamma^{n1} q^{-(n1+2n2)(2n-1)/(2n)} ( T(t0) + q^{-(n-2)(2n-1)/(2n)} T(t1) )`
///
/// where `t0 = (n1+n2, n2, 0, ..)` and `t1 = (n1+n2, n2, 1, ..)` list the
/// valuations of the torus coordinates.
pub fn special_value_rhs(
    n: usize,
    n1: u64,
    n2: u64,
    opts: &SpecialValueOptions,
) -> Result<FormalScalar> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "special value is defined for odd rank >= 3, got {n}"
        )));
    }
    let ni = n as i64;
    let slope = ratio(2 * ni - 1, 2 * ni);
    let outer = -rat((n1 + 2 * n2) as i64) * &slope;
    let drop = -rat(ni - 2) * &slope;

    let mut t0 = vec![n1 + n2, n2];
    t0.extend(std::iter::repeat(0).take(n - 2));
    let mut t1 = vec![n1 + n2, n2];
    t1.extend(std::iter::repeat(1).take(n - 2));

    let first = Monomial::rational(n1 as i64, outer.clone(), rat(1), Some(torus_token(&t0)));
    let second = if opts.with_gauss_factor {
        let p = match opts.witness_prime {
            Some(p) => p,
            None => default_witness_prime(n as u64)?,
        };
        let field = LocalFieldSpec::new(p, n as u64)?;
        let gauss = field.gauss_sum(ni - 2)?;
        Monomial {
            weil_exp: n1 as i64,
            q_exp: &outer + &drop + &gauss.q_exp,
            coeff: Coefficient::Cyclotomic(gauss.value),
            token: Some(torus_token(&t1)),
        }
    } else {
        Monomial::rational(n1 as i64, &outer + &drop, rat(1), Some(torus_token(&t1)))
    };
    FormalScalar::from_monomials(vec![first, second])
}

/// Summary of the descent data for one `(n, r)` pair: orbit prediction,
/// dimension check, and the boundary exponent table over all admissible
/// block sizes.
#[derive(Debug, Clone, Serialize)]
pub struct DescentSummary {
    pub n: usize,
    pub r: u64,
    pub r_prime: u64,
    pub radical_dim: u64,
    pub orbit: Partition,
    #[serde(with = "crate::rat::serde_rat")]
    pub gk_dim: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub target_dim: Rat,
    pub satisfied: bool,
    pub beta: Vec<BetaRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaRow {
    pub a: usize,
    #[serde(with = "crate::rat::serde_rat")]
    pub exponent: Rat,
    pub crosscheck_matches: bool,
}

pub fn descent_summary(n: usize, r: u64) -> Result<DescentSummary> {
    let rp = check_cover(n, r)?;
    let report = dimension_equation_check(n as u64, r)?;
    let mut beta = Vec::new();
    for a in 0..=n - rp as usize {
        let exponent = beta_exponent(n, r, a)?;
        let cross = beta_crosscheck(n, r, a)?;
        beta.push(BetaRow {
            a,
            crosscheck_matches: exponent == cross,
            exponent,
        });
    }
    Ok(DescentSummary {
        n,
        r,
        r_prime: rp,
        radical_dim: unipotent_radical_dim(n as u64, rp),
        orbit: report.orbit,
        gk_dim: report.gk_dim,
        target_dim: report.target_dim,
        satisfied: report.satisfied,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_points_step_uniformly() {
        let s = pole_point(3, 3, CoverKind::Odd).unwrap();
        assert_eq!(s, vec![rat(1), ratio(2, 3), ratio(1, 3)]);
        let s = pole_point(2, 3, CoverKind::Even).unwrap();
        assert_eq!(s, vec![ratio(1, 3) + ratio(1, 6), ratio(1, 6)]);
        assert!(pole_point(0, 3, CoverKind::Odd).is_err());
    }

    #[test]
    fn character_exponents_match_known_values() {
        let e = theta_character_exponents(2, 3, CoverKind::Even).unwrap();
        assert_eq!(e, vec![ratio(3, 2), ratio(5, 6)]);
        let e = theta_character_exponents(3, 3, CoverKind::Odd).unwrap();
        assert_eq!(e, vec![rat(2), ratio(4, 3), ratio(2, 3)]);
    }

    #[test]
    fn beta_agrees_with_crosscheck() {
        for n in 1..=8usize {
            for r in (3..2 * n as u64).step_by(2) {
                let rp = ((r - 1) / 2) as usize;
                if rp > n {
                    continue;
                }
                for a in 0..=n - rp {
                    let direct = beta_exponent(n, r, a).unwrap();
                    let cross = beta_crosscheck(n, r, a).unwrap();
                    assert_eq!(direct, cross, "n={n} r={r} a={a}");
                }
            }
        }
        assert_eq!(beta_exponent(3, 3, 1).unwrap(), ratio(3, 2));
        assert_eq!(beta_exponent(3, 3, 2).unwrap(), ratio(7, 3));
    }

    #[test]
    fn witness_primes() {
        for (n, p) in [(3, 7), (5, 11), (7, 29), (9, 19), (11, 23), (13, 53), (15, 31)] {
            assert_eq!(default_witness_prime(n).unwrap(), p, "n={n}");
        }
    }

    #[test]
    fn pipeline_closed_form() {
        let report = exponent_pipeline(3).unwrap();
        assert_eq!(report.total, ratio(-5, 6));
        assert!(report.matches && report.higher_shells_vanish);
        assert_eq!(report.witness_prime, 7);
        let report = exponent_pipeline(5).unwrap();
        assert_eq!(report.total, ratio(-27, 10));
        assert!(report.matches && report.higher_shells_vanish);
    }

    #[test]
    fn special_value_base_point() {
        let v = special_value_rhs(3, 0, 0, &SpecialValueOptions::default()).unwrap();
        let terms = v.terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].weil_exp, 0);
        assert_eq!(terms[0].q_exp, rat(0));
        assert_eq!(terms[0].token.as_deref(), Some("T(0,0,0)"));
        assert_eq!(terms[0].coeff, Coefficient::Rational(rat(1)));
        assert_eq!(terms[1].q_exp, ratio(-5, 6));
        assert_eq!(terms[1].token.as_deref(), Some("T(0,0,1)"));
        // depth shifts multiply in the expected q-power
        let v = special_value_rhs(3, 1, 2, &SpecialValueOptions::default()).unwrap();
        assert_eq!(v.terms()[0].weil_exp, 1);
        assert_eq!(v.terms()[0].q_exp, ratio(-25, 6));
        assert_eq!(v.terms()[0].token.as_deref(), Some("T(3,2,0)"));
    }

    #[test]
    fn special_value_with_character_sum() {
        let opts = SpecialValueOptions { with_gauss_factor: true, witness_prime: None };
        let v = special_value_rhs(3, 0, 0, &opts).unwrap();
        let terms = v.terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[1].q_exp, ratio(-4, 3));
        match &terms[1].coeff {
            Coefficient::Cyclotomic(c) => {
                assert_eq!(c.modulus(), 21);
                assert!(!c.is_zero());
            }
            other => panic!("expected cyclotomic coefficient, got {other:?}"),
        }
    }

    #[test]
    fn formal_scalar_merges_and_orders() {
        let a = Monomial::rational(0, rat(1), rat(2), None);
        let b = Monomial::rational(0, rat(1), rat(3), None);
        let c = Monomial::rational(0, rat(0), rat(1), Some("T(1)".into()));
        let s = FormalScalar::from_monomials(vec![c.clone(), a, b]).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.terms()[0].coeff, Coefficient::Rational(rat(5)));
        assert_eq!(s.terms()[1], c);
        // token-token products are refused
        let t = FormalScalar::from_monomials(vec![c]).unwrap();
        assert!(t.mul(&t).is_err());
    }

    #[test]
    fn descent_summaries() {
        let s = descent_summary(3, 3).unwrap();
        assert!(s.satisfied);
        assert_eq!(s.orbit, "3,3".parse().unwrap());
        assert_eq!(s.beta.len(), 3);
        assert!(s.beta.iter().all(|row| row.crosscheck_matches));
        let s = descent_summary(4, 3).unwrap();
        assert!(!s.satisfied);
    }

    mod algebra_laws {
        use super::*;
        use proptest::prelude::*;

        fn arb_rat() -> impl Strategy<Value = Rat> {
            (-6i64..=6, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
        }

        fn arb_scalar(with_tokens: bool) -> impl Strategy<Value = FormalScalar> {
            let token = proptest::option::of(prop_oneof![
                Just("T(1)".to_string()),
                Just("T(2)".to_string()),
            ]);
            let monomial = (-2i64..=2, arb_rat(), -5i64..=5, token).prop_map(
                move |(w, q, c, tok)| {
                    Monomial::rational(w, q, rat(c), if with_tokens { tok } else { None })
                },
            );
            proptest::collection::vec(monomial, 0..4)
                .prop_map(|ms| FormalScalar::from_monomials(ms).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn formal_scalar_ring_laws(
                a in arb_scalar(true),
                b in arb_scalar(true),
                c in arb_scalar(false),
                d in arb_scalar(false),
            ) {
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(
                    a.add(&b).unwrap().add(&c).unwrap(),
                    a.add(&b.add(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(c.mul(&d).unwrap(), d.mul(&c).unwrap());
                // token-carrying sums stay linear against token-free factors
                prop_assert_eq!(
                    a.add(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
                );
                let s = ratio(1, 3);
                let t = ratio(-1, 2);
                prop_assert_eq!(a.q_shift(&s).q_shift(&t), a.q_shift(&(&s + &t)));
            }
        }
    }
}
