//! Catalog of verified conjugation identities: a Weyl-type element moves a
//! product of coordinate families (with characters) onto another product,
//! and the verifier checks both the span identity and the character
//! transport exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{same_span, span_dimension, RationalMatrix, SymplecticElement};
use crate::rat::{rat_string, Rat};
use num_traits::Zero;

use super::catalog;
use super::{conjugate_family, CharacterFunctional, UnipotentFamily};

/// One conjugation identity: `weyl (source product) weyl^{-1} = target
/// product`, with the source character matching the target character after
/// an optional extra torus normalization on the target side.
pub struct TransportStep {
    pub id: String,
    /// Plain-language statement of what is being conjugated onto what.
    pub statement: String,
    pub weyl: SymplecticElement,
    pub source: Vec<(UnipotentFamily, CharacterFunctional)>,
    pub target: Vec<(UnipotentFamily, CharacterFunctional)>,
    /// Torus element `t` on the target side: the transported source
    /// character is compared against `M -> chi_target(t M t^{-1})`.
    pub normalizer: Option<SymplecticElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransportReport {
    pub id: String,
    pub statement: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub source_independent: bool,
    pub target_independent: bool,
    pub span_match: bool,
    pub character_match: bool,
    pub normalized: bool,
    pub ok: bool,
    pub detail: String,
}

/// Moving the leading `GL(a)` block past the reduced first-rows family:
/// `upper-block-reduced + embedded parabolic radical` conjugates onto
/// `corner + corner-complement + hook`, carrying the chain-plus-corner
/// character onto the interior descent character.
pub fn block_swap_step(n: usize, r: usize, a: usize) -> Result<TransportStep> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "cover degree {r} must be odd and at least 3"
        )));
    }
    let rp = (r - 1) / 2;
    if a == 0 || n < a + rp {
        return Err(Error::InvalidParameter(format!(
            "block size {a} too large: need a + {rp} <= {n}"
        )));
    }
    let b = n - a - rp;
    let source = vec![
        (
            catalog::upper_block_reduced(n, rp)?,
            catalog::reduced_char(n, rp)?,
        ),
        (
            catalog::parabolic_radical(n - rp, a)?.embed(rp)?,
            CharacterFunctional::trivial(n),
        ),
    ];
    let target = vec![
        (catalog::corner(n, a, b)?, CharacterFunctional::trivial(n)),
        (
            catalog::corner_complement(n, a, b)?,
            catalog::descent_char(n, a, b)?,
        ),
        (
            catalog::hook_rows_cut(n, a, b)?,
            CharacterFunctional::trivial(n),
        ),
    ];
    Ok(TransportStep {
        id: format!("block-swap({n},{r},{a})"),
        statement: format!(
            "moving the GL({a}) block inward in rank {n} carries the \
             chain-and-corner character onto the interior descent character"
        ),
        weyl: catalog::block_swap(n, a, b)?,
        source,
        target,
        normalizer: None,
    })
}

/// Interleaving the reduced first-rows family with the embedded Siegel
/// radical: the union conjugates onto the interleaved radical (reduced)
/// plus its lower partner family.
pub fn pair_interleave_step(n: usize, b_param: &Rat) -> Result<TransportStep> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "interleave step needs rank >= 2, got {n}"
        )));
    }
    // covers degree n (odd rank) or n + 1 (even rank)
    let (r, rp) = if n % 2 == 1 {
        (n, (n - 1) / 2)
    } else {
        (n + 1, n / 2)
    };
    let m2 = n - rp;
    let l = if n % 2 == 1 { (n + 1) / 2 } else { n / 2 };
    let inner_char = catalog::siegel_char_ext(m2, b_param)?;
    let source = vec![
        (
            catalog::upper_block_reduced(n, rp)?,
            catalog::reduced_char(n, rp)?,
        ),
        (catalog::siegel(m2)?.embed(rp)?, inner_char.embed(rp)?),
    ];
    let one = crate::rat::rat(1);
    let target = vec![
        (
            catalog::interleaved_reduced(n)?,
            catalog::interleaved_reduced_char(n, &one, b_param)?,
        ),
        (
            catalog::interleave_lower(n)?,
            CharacterFunctional::trivial(n),
        ),
    ];
    Ok(TransportStep {
        id: format!("pair-interleave({n},{r})"),
        statement: format!(
            "interleaving the embedded Siegel radical with the first-rows \
             family in rank {n} yields the interleaved radical"
        ),
        weyl: catalog::pair_interleave(n, l)?,
        source,
        target,
        normalizer: None,
    })
}

/// Splitting rank 4 by parity: the interleaved radical with its skip-one
/// character conjugates onto the reduced Siegel radical (chain character)
/// times the lower triangle. Needs a sign-fixing torus on the target side.
pub fn parity_split_step() -> Result<TransportStep> {
    let n = 4;
    let source = vec![(catalog::interleaved(n)?, catalog::interleaved_full_char(n)?)];
    let target = vec![
        (catalog::siegel_reduced(n)?, catalog::siegel_char(n)?),
        (catalog::lower_triangle(n)?, CharacterFunctional::trivial(n)),
    ];
    let one = crate::rat::rat(1);
    let normalizer = catalog::torus(&[one.clone(), one.clone(), one, crate::rat::rat(-1)])?;
    Ok(TransportStep {
        id: "parity-split(4)".into(),
        statement: "splitting rank 4 coordinates by parity carries the \
                    skip-one character onto the Siegel chain character"
            .into(),
        weyl: catalog::parity_split(n)?,
        source,
        target,
        normalizer: Some(normalizer),
    })
}

/// The embedded parity split in rank 3: same shape as [`parity_split_step`]
/// one rank down, conjugating inside the middle `Sp(4)` block; exact with
/// no normalizer.
pub fn embedded_parity_split_step() -> Result<TransportStep> {
    let n = 3;
    let source = vec![(catalog::interleaved(n)?, catalog::interleaved_full_char(n)?)];
    let target = vec![
        (catalog::siegel_reduced(n)?, catalog::siegel_char(n)?),
        (
            catalog::lower_triangle_embedded(n)?,
            CharacterFunctional::trivial(n),
        ),
    ];
    Ok(TransportStep {
        id: "embedded-parity-split(3)".into(),
        statement: "the embedded parity split in rank 3 carries the mixed \
                    chain character onto the Siegel chain character"
            .into(),
        weyl: catalog::parity_split_embedded(n)?,
        source,
        target,
        normalizer: None,
    })
}

/// The instances exercised by the verification suite.
pub fn builtin_steps() -> Result<Vec<TransportStep>> {
    let b = Rat::zero();
    Ok(vec![
        block_swap_step(3, 3, 1)?,
        block_swap_step(4, 5, 2)?,
        pair_interleave_step(3, &b)?,
        pair_interleave_step(4, &b)?,
        parity_split_step()?,
        embedded_parity_split_step()?,
    ])
}

pub fn builtin_step(id: &str) -> Result<TransportStep> {
    builtin_steps()?
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown transport step '{id}'")))
}

pub fn builtin_step_ids() -> Vec<String> {
    builtin_steps()
        .map(|steps| steps.into_iter().map(|s| s.id).collect())
        .unwrap_or_default()
}

/// Verifies a transport step exactly: conjugated source span equals target
/// span, both sides are independent unions, and the transported character
/// agrees with the (optionally normalized) target character on every
/// target direction.
pub fn verify_integral_transport(step: &TransportStep) -> Result<TransportReport> {
    let n = step.weyl.half_rank();
    let mut source_basis: Vec<RationalMatrix> = Vec::new();
    let mut source_dim = 0;
    let mut chi_source = CharacterFunctional::trivial(n);
    for (fam, chi) in &step.source {
        source_dim += fam.dimension();
        source_basis.extend(fam.basis());
        chi_source = chi_source.add(chi)?;
    }
    let mut target_basis: Vec<RationalMatrix> = Vec::new();
    let mut target_dim = 0;
    let mut chi_target = CharacterFunctional::trivial(n);
    for (fam, chi) in &step.target {
        target_dim += fam.dimension();
        target_basis.extend(fam.basis());
        chi_target = chi_target.add(chi)?;
    }
    let source_independent = span_dimension(&source_basis) == source_dim;
    let target_independent = span_dimension(&target_basis) == target_dim;

    let mut moved: Vec<RationalMatrix> = Vec::new();
    for (fam, _) in &step.source {
        moved.extend(conjugate_family(&step.weyl, fam)?);
    }
    let span_match = same_span(&moved, &target_basis);

    let transported = chi_source.transport(&step.weyl)?;
    let effective_target = match &step.normalizer {
        Some(t0) => chi_target.transport(&t0.inverse())?,
        None => chi_target.clone(),
    };
    let mut character_match = true;
    let mut detail = String::new();
    for (fam, _) in &step.target {
        for &(i, j) in fam.directions() {
            let got = transported.eval_direction(i, j);
            let want = effective_target.eval_direction(i, j);
            if got != want {
                character_match = false;
                if detail.is_empty() {
                    detail = format!(
                        "character mismatch at ({i},{j}): transported {} vs target {}",
                        rat_string(&got),
                        rat_string(&want)
                    );
                }
            }
        }
    }
    if !span_match && detail.is_empty() {
        detail = format!(
            "span mismatch: moved rank {}, target rank {}",
            span_dimension(&moved),
            span_dimension(&target_basis)
        );
    }
    let ok = source_independent && target_independent && span_match && character_match;
    Ok(TransportReport {
        id: step.id.clone(),
        statement: step.statement.clone(),
        source_dim,
        target_dim,
        source_independent,
        target_independent,
        span_match,
        character_match,
        normalized: step.normalizer.is_some(),
        ok,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_verifies() {
        for step in builtin_steps().unwrap() {
            let report = verify_integral_transport(&step).unwrap();
            assert!(
                report.ok,
                "step {} failed: span={} char={} {}",
                report.id, report.span_match, report.character_match, report.detail
            );
            assert_eq!(report.source_dim, report.target_dim, "{}", report.id);
        }
    }

    #[test]
    fn dimensions_match_expected() {
        let step = builtin_step("block-swap(3,3,1)").unwrap();
        let report = verify_integral_transport(&step).unwrap();
        assert_eq!(report.source_dim, 6);
        let step = builtin_step("block-swap(4,5,2)").unwrap();
        let report = verify_integral_transport(&step).unwrap();
        assert_eq!(report.source_dim, 13);
        let step = builtin_step("parity-split(4)").unwrap();
        let report = verify_integral_transport(&step).unwrap();
        assert_eq!(report.source_dim, 14);
        assert!(report.normalized);
    }

    #[test]
    fn normalizer_is_needed_for_the_parity_split() {
        let mut step = parity_split_step().unwrap();
        step.normalizer = None;
        let report = verify_integral_transport(&step).unwrap();
        assert!(report.span_match);
        assert!(!report.character_match, "sign twist should be detected");
    }

    #[test]
    fn interleave_step_carries_parameter() {
        let b = crate::rat::ratio(2, 3);
        let step = pair_interleave_step(4, &b).unwrap();
        let report = verify_integral_transport(&step).unwrap();
        assert!(report.ok, "{}", report.detail);
        let step = pair_interleave_step(3, &b).unwrap();
        let report = verify_integral_transport(&step).unwrap();
        assert!(report.ok, "{}", report.detail);
    }
}
