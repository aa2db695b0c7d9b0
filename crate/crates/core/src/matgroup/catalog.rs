//! Named constructors for the symplectic elements, coordinate families,
//! characters, and Levi bases that the verification suites exercise.
//!
//! Everything is exact: shears have rational entries, permutation-like
//! elements have entries in `{0, 1, -1}`, and every constructor goes
//! through [`SymplecticElement::new`], so form preservation is checked at
//! build time rather than assumed.

use crate::error::{Error, Result};
use crate::matrix::{block_diag, RationalMatrix, SymplecticElement};
use crate::rat::{rat, ratio, Rat};
use num_traits::Zero;

use super::{estar, CharacterFunctional, UnipotentFamily};

fn named(n: usize, name: String, dirs: Vec<(usize, usize)>) -> Result<UnipotentFamily> {
    UnipotentFamily::new(n, name, dirs)
}

/// Removes listed directions from a family; every cut must be present.
pub fn remove_directions(
    fam: &UnipotentFamily,
    cuts: &[(usize, usize)],
    name: impl Into<String>,
) -> Result<UnipotentFamily> {
    let n = fam.half_rank();
    let mut dirs: Vec<(usize, usize)> = fam.directions().to_vec();
    for &(i, j) in cuts {
        let c = super::canonical_direction(n, i, j);
        let before = dirs.len();
        dirs.retain(|&d| d != c);
        if dirs.len() == before {
            return Err(Error::InvalidParameter(format!(
                "cut ({i},{j}) not present in {}",
                fam.name()
            )));
        }
    }
    named(n, name.into(), dirs)
}

// ---------------------------------------------------------------------------
// families

/// Radical of the standard parabolic with Levi `GL(1)^k x Sp(2(n-k))`:
/// all positions in the first `k` rows above the diagonal, up to the
/// mirror. Dimension `k(2n - k)`.
pub fn upper_block(n: usize, k: usize) -> Result<UnipotentFamily> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "block rows {k} outside 1..={n}"
        )));
    }
    let mut dirs = Vec::new();
    for i in 1..=k {
        for j in i + 1..=2 * n + 1 - i {
            dirs.push((i, j));
        }
    }
    named(n, format!("upper-block({n},{k})"), dirs)
}

/// [`upper_block`] with the short row segment `(k, k+1..=n)` removed; this
/// is the shape left after exchanging those roots downward. Equal to the
/// full block when `k = n`.
pub fn upper_block_reduced(n: usize, k: usize) -> Result<UnipotentFamily> {
    let full = upper_block(n, k)?;
    let cuts: Vec<(usize, usize)> = (k + 1..=n).map(|j| (k, j)).collect();
    remove_directions(&full, &cuts, format!("upper-block-reduced({n},{k})"))
}

/// Radical of the parabolic with Levi `GL(a) x Sp(2(n-a))`: first `a` rows
/// outside the `GL(a)` corner.
pub fn parabolic_radical(n: usize, a: usize) -> Result<UnipotentFamily> {
    if a == 0 || a > n {
        return Err(Error::InvalidParameter(format!(
            "block size {a} outside 1..={n}"
        )));
    }
    let mut dirs = Vec::new();
    for i in 1..=a {
        for j in a + 1..=2 * n + 1 - i {
            dirs.push((i, j));
        }
    }
    named(n, format!("parabolic-radical({n},{a})"), dirs)
}

/// [`parabolic_radical`] minus its first column `(1..=a, a+1)`.
pub fn parabolic_radical_cut(n: usize, a: usize) -> Result<UnipotentFamily> {
    let full = parabolic_radical(n, a)?;
    let cuts: Vec<(usize, usize)> = (1..=a).map(|i| (i, a + 1)).collect();
    remove_directions(&full, &cuts, format!("parabolic-radical-cut({n},{a})"))
}

/// Top-right corner block: first `a` rows, columns from `n - b + 1` out to
/// the mirror boundary.
pub fn corner(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    if a == 0 || a + b > n {
        return Err(Error::InvalidParameter(format!(
            "corner block ({a},{b}) does not fit in rank {n}"
        )));
    }
    let mut dirs = Vec::new();
    for i in 1..=a {
        for j in n - b + 1..=2 * n + 1 - i {
            dirs.push((i, j));
        }
    }
    named(n, format!("corner({n},{a},{b})"), dirs)
}

/// Reduced first-rows family of the middle `Sp(2(n-a))`, embedded past the
/// leading `GL(a)` block.
pub fn corner_complement(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    if a == 0 || a + b >= n {
        return Err(Error::InvalidParameter(format!(
            "complement block ({a},{b}) does not fit in rank {n}"
        )));
    }
    upper_block_reduced(n - a, n - a - b)?.embed(a)
}

fn hook_block_check(n: usize, a: usize, b: usize) -> Result<()> {
    if a == 0 || a + b > n {
        return Err(Error::InvalidParameter(format!(
            "hook block ({a},{b}) does not fit in rank {n}"
        )));
    }
    Ok(())
}

/// Rows `a+1 ..` of the first `a` columns; `cut` drops the bottom row.
fn hook_rows_impl(n: usize, a: usize, b: usize, drop_last: bool) -> Result<UnipotentFamily> {
    hook_block_check(n, a, b)?;
    let rows = (n - a - b).saturating_sub(drop_last as usize);
    let mut dirs = Vec::new();
    for i in 1..=rows {
        for j in 1..=a {
            dirs.push((a + i, j));
        }
    }
    let tag = if drop_last { "-cut" } else { "" };
    named(n, format!("hook-rows{tag}({n},{a},{b})"), dirs)
}

pub fn hook_rows(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    hook_rows_impl(n, a, b, false)
}

pub fn hook_rows_cut(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    hook_rows_impl(n, a, b, true)
}

/// First `a` rows against the middle column block (transpose of the hook);
/// `cut` drops the first column.
fn hook_cols_impl(n: usize, a: usize, b: usize, drop_first: bool) -> Result<UnipotentFamily> {
    hook_block_check(n, a, b)?;
    let start = 1 + drop_first as usize;
    let mut dirs = Vec::new();
    for i in 1..=a {
        for j in start..=n - a - b {
            dirs.push((i, a + j));
        }
    }
    let tag = if drop_first { "-cut" } else { "" };
    named(n, format!("hook-cols{tag}({n},{a},{b})"), dirs)
}

pub fn hook_cols(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    hook_cols_impl(n, a, b, false)
}

pub fn hook_cols_cut(n: usize, a: usize, b: usize) -> Result<UnipotentFamily> {
    hook_cols_impl(n, a, b, true)
}

/// shape of the interleaved Levi `GL(1)^s x GL(2)^L`: even rank pairs
/// `(1,2), (3,4), ...`; odd rank keeps coordinate 1 alone and pairs
/// `(2,3), (4,5), ...`. Returns (singleton count, pair count).
fn interleave_shape(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "interleaved families need rank >= 2, got {n}"
        )));
    }
    if n % 2 == 0 {
        Ok((0, n / 2))
    } else {
        Ok((1, (n - 1) / 2))
    }
}

/// Radical of the parabolic with interleaved Levi: all upper directions
/// except the root inside each `GL(2)` pair.
pub fn interleaved(n: usize) -> Result<UnipotentFamily> {
    let (s, blocks) = interleave_shape(n)?;
    let within: Vec<(usize, usize)> =
        (1..=blocks).map(|t| (s + 2 * t - 1, s + 2 * t)).collect();
    let mut dirs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=2 * n + 1 - i {
            if !within.contains(&(i, j)) {
                dirs.push((i, j));
            }
        }
    }
    named(n, format!("interleaved({n})"), dirs)
}

/// The staircase of cross-pair roots that exchange removes from
/// [`interleaved`]: second members of earlier pairs against first members
/// of later ones. Includes `(1,2)` in the odd case; callers that keep that
/// root filter it out.
fn interleave_staircase(n: usize) -> Result<Vec<(usize, usize)>> {
    interleave_shape(n)?;
    let mut out = Vec::new();
    if n % 2 == 0 {
        let l = n / 2;
        for m in 1..l {
            for k in m..l {
                out.push((2 * m, 2 * k + 1));
            }
        }
    } else {
        let l = (n + 1) / 2;
        for m in 1..l {
            for k in m..l {
                out.push((2 * m - 1, 2 * k));
            }
        }
    }
    Ok(out)
}

/// [`interleaved`] minus the exchange staircase.
pub fn interleaved_reduced(n: usize) -> Result<UnipotentFamily> {
    let full = interleaved(n)?;
    let cuts = interleave_staircase(n)?;
    remove_directions(&full, &cuts, format!("interleaved-reduced({n})"))
}

/// [`interleaved`] minus its first chain root; a dimension probe for the
/// expected failure of the product decomposition in the odd case.
pub fn interleaved_cut(n: usize) -> Result<UnipotentFamily> {
    let full = interleaved(n)?;
    remove_directions(&full, &[(1, 2)], format!("interleaved-cut({n})"))
}

/// The staircase itself as a family (the upper side of the exchange). In
/// the odd case the `(1,2)` root stays in the reduced family and is not
/// part of the exchanged set.
pub fn interleave_complement(n: usize) -> Result<UnipotentFamily> {
    let mut cuts = interleave_staircase(n)?;
    if n % 2 == 1 {
        cuts.retain(|&d| d != (1, 2));
    }
    named(n, format!("interleave-complement({n})"), cuts)
}

/// Lower-triangular partners of the staircase (the other side of the
/// exchange pairing).
pub fn interleave_lower(n: usize) -> Result<UnipotentFamily> {
    interleave_shape(n)?;
    let mut dirs = Vec::new();
    if n % 2 == 0 {
        let l = n / 2;
        for m in 1..l {
            for k in m - 1..=l - 2 {
                dirs.push((2 * k + 1, 2 * m));
            }
        }
    } else {
        let l = (n + 1) / 2;
        for m in 1..l {
            for k in (m - 1).max(1)..=l - 2 {
                dirs.push((2 * k, 2 * m - 1));
            }
        }
    }
    named(n, format!("interleave-lower({n})"), dirs)
}

/// Abelian radical of the Siegel parabolic.
pub fn siegel(n: usize) -> Result<UnipotentFamily> {
    let full = upper_block(n, n)?;
    named(n, format!("siegel({n})"), full.directions().to_vec())
}

/// Siegel radical minus the anti-diagonal staircase absorbed by the chain
/// character's stabilizer; the removal pattern depends on the parity of n.
pub fn siegel_reduced(n: usize) -> Result<UnipotentFamily> {
    let full = siegel(n)?;
    let mut cuts = Vec::new();
    if n % 2 == 0 {
        for i in 1..=n {
            for k in 1..=i.min(n + 1 - i) {
                cuts.push((i, n + k));
            }
        }
    } else {
        for i in 2..=n {
            for k in 1..=(i - 1).min(n + 1 - i) {
                cuts.push((i, n + k));
            }
        }
    }
    remove_directions(&full, &cuts, format!("siegel-reduced({n})"))
}

/// Strictly-upper positions of the lower-left `n x n` block, one per
/// mirror orbit: the block position `(i, j)` pairs with `(n+1-j, n+1-i)`.
pub fn lower_triangle(n: usize) -> Result<UnipotentFamily> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "lower triangle needs rank >= 2, got {n}"
        )));
    }
    let mut block: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            let rep = if i + j > n + 1 {
                (n + 1 - j, n + 1 - i)
            } else {
                (i, j)
            };
            if !block.contains(&rep) {
                block.push(rep);
            }
        }
    }
    let dirs = block.into_iter().map(|(i, j)| (n + i, j)).collect();
    named(n, format!("lower-triangle({n})"), dirs)
}

/// [`lower_triangle`] of the middle `Sp(2(n-1))`, embedded.
pub fn lower_triangle_embedded(n: usize) -> Result<UnipotentFamily> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "embedded lower triangle needs rank >= 3, got {n}"
        )));
    }
    lower_triangle(n - 1)?.embed(1)
}

/// Small lower-left wedge `(n+i, j)` with `j <= i + 1`, `i <= (n-3)/2`;
/// empty until rank 5.
pub fn lower_wedge(n: usize) -> Result<UnipotentFamily> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "lower wedge needs rank >= 2, got {n}"
        )));
    }
    let mut dirs = Vec::new();
    for i in 1..=n.saturating_sub(3) / 2 {
        for j in 1..=i + 1 {
            dirs.push((n + i, j));
        }
    }
    named(n, format!("lower-wedge({n})"), dirs)
}

/// One-direction family.
pub fn single_direction(n: usize, i: usize, j: usize) -> Result<UnipotentFamily> {
    named(n, format!("single({n},{i},{j})"), vec![(i, j)])
}

// ---------------------------------------------------------------------------
// characters

/// Chain character `(1,2) + ... + (k-1,k) + b (k,k+1)`.
pub fn chain_char(n: usize, k: usize, b: &Rat) -> Result<CharacterFunctional> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "chain length {k} outside 1..={n}"
        )));
    }
    let mut weights: Vec<(usize, usize, Rat)> = (1..k).map(|i| (i, i + 1, rat(1))).collect();
    if !b.is_zero() {
        weights.push((k, k + 1, b.clone()));
    }
    CharacterFunctional::new(n, weights)
}

/// Single weight on the self-mirrored corner position `(k, 2n+1-k)`.
pub fn corner_char(n: usize, k: usize) -> Result<CharacterFunctional> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "corner row {k} outside 1..={n}"
        )));
    }
    CharacterFunctional::new(n, vec![(k, 2 * n + 1 - k, rat(1))])
}

/// Chain on rows `1..k` plus the corner weight at row k: the generic
/// character carried by [`upper_block_reduced`].
pub fn reduced_char(n: usize, k: usize) -> Result<CharacterFunctional> {
    chain_char(n, k, &Rat::zero())?.add(&corner_char(n, k)?)
}

/// Character of [`corner_complement`]: interior chain closing on the
/// self-mirrored position `(n-b, n+b+1)`.
pub fn descent_char(n: usize, a: usize, b: usize) -> Result<CharacterFunctional> {
    if a == 0 || a + b >= n {
        return Err(Error::InvalidParameter(format!(
            "descent block ({a},{b}) does not fit in rank {n}"
        )));
    }
    let mut weights: Vec<(usize, usize, Rat)> = Vec::new();
    for i in a + 1..n - b {
        weights.push((i, i + 1, rat(1)));
    }
    weights.push((n - b, n + b + 1, rat(1)));
    CharacterFunctional::new(n, weights)
}

/// Generic character on [`interleaved_reduced`]: skip-one chain, then `a`
/// on the long self-mirrored jump and `b` on the middle root.
pub fn interleaved_reduced_char(n: usize, a: &Rat, b: &Rat) -> Result<CharacterFunctional> {
    interleave_shape(n)?;
    let mut weights: Vec<(usize, usize, Rat)> = Vec::new();
    for i in 1..=n - 2 {
        weights.push((i, i + 2, rat(1)));
    }
    if !a.is_zero() {
        weights.push((n - 1, n + 2, a.clone()));
    }
    if !b.is_zero() {
        weights.push((n, n + 1, b.clone()));
    }
    CharacterFunctional::new(n, weights)
}

/// Nondegenerate character on the full [`interleaved`] family: skip-one
/// chain closing with the self-mirrored `(n-1, n+1)`; the odd case starts
/// from the ordinary root `(1,2)`.
pub fn interleaved_full_char(n: usize) -> Result<CharacterFunctional> {
    interleave_shape(n)?;
    let mut weights: Vec<(usize, usize, Rat)> = Vec::new();
    let skip_from = if n % 2 == 0 {
        1
    } else {
        weights.push((1, 2, rat(1)));
        2
    };
    for i in skip_from..=n - 2 {
        weights.push((i, i + 2, rat(1)));
    }
    weights.push((n - 1, n + 1, rat(1)));
    CharacterFunctional::new(n, weights)
}

/// Chain character of the Siegel radical.
pub fn siegel_char(n: usize) -> Result<CharacterFunctional> {
    chain_char(n, n, &Rat::zero())
}

/// Chain character with parameter on the middle root `(n, n+1)`.
pub fn siegel_char_ext(n: usize, b: &Rat) -> Result<CharacterFunctional> {
    chain_char(n, n, b)
}

/// Single simple-root weight at `(a, a+1)`.
pub fn lower_char(n: usize, a: usize) -> Result<CharacterFunctional> {
    if a == 0 || a >= 2 * n {
        return Err(Error::InvalidParameter(format!(
            "root index {a} out of range"
        )));
    }
    CharacterFunctional::new(n, vec![(a, a + 1, rat(1))])
}

/// Four-parameter character used in the rank-3 stabilizer computations:
/// `a1 (1,2) + a2 (1,3) + a3 (3,4) + a4 (2,5)`.
pub fn four_weight_char_sp6(alpha: &[Rat; 4]) -> Result<CharacterFunctional> {
    CharacterFunctional::new(
        3,
        vec![
            (1, 2, alpha[0].clone()),
            (1, 3, alpha[1].clone()),
            (3, 4, alpha[2].clone()),
            (2, 5, alpha[3].clone()),
        ],
    )
}

/// `a (1,2) + (1,3) + (2,4)` on rank 3.
pub fn twisted_pair_char_sp6(alpha: &Rat) -> Result<CharacterFunctional> {
    CharacterFunctional::new(
        3,
        vec![(1, 2, alpha.clone()), (1, 3, rat(1)), (2, 4, rat(1))],
    )
}

/// `(1,3) + (2,4)` on rank 3.
pub fn skip_chain_char_sp6() -> Result<CharacterFunctional> {
    CharacterFunctional::new(3, vec![(1, 3, rat(1)), (2, 4, rat(1))])
}

/// `(1,2) + (2,3)` on rank 3.
pub fn short_chain_char_sp6() -> Result<CharacterFunctional> {
    CharacterFunctional::new(3, vec![(1, 2, rat(1)), (2, 3, rat(1))])
}

// ---------------------------------------------------------------------------
// Levi bases

/// Basis of a Levi subalgebra from generator positions; diagonal positions
/// give torus directions.
pub fn levi_basis(n: usize, dirs: &[(usize, usize)]) -> Vec<RationalMatrix> {
    dirs.iter().map(|&(i, j)| estar(n, i, j)).collect()
}

/// `gl(2) + sl(2)` inside rank 3: the Levi of the `(2)`-block parabolic.
pub fn levi_block_pair() -> Vec<RationalMatrix> {
    levi_basis(3, &[(1, 1), (1, 2), (2, 1), (2, 2), (3, 3), (3, 4), (4, 3)])
}

/// `gl(1) + gl(2)` inside rank 3: the Levi of the `(1,2)`-parabolic.
pub fn levi_line_pair() -> Vec<RationalMatrix> {
    levi_basis(3, &[(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
}

// ---------------------------------------------------------------------------
// elements

fn bad(reason: String) -> Error {
    Error::InvalidParameter(reason)
}

/// Block permutation moving the leading `GL(a)` block past the next
/// `n - a - b` coordinates while fixing the middle `2b`; the bottom half
/// moves by the mirrored rule. All entries are `+1`.
pub fn block_swap(n: usize, a: usize, b: usize) -> Result<SymplecticElement> {
    if a == 0 || a + b > n {
        return Err(bad(format!("swap blocks ({a},{b}) do not fit in rank {n}")));
    }
    let c = n - a - b;
    let dim = 2 * n;
    let mut m = RationalMatrix::zero(dim, dim);
    for col in 1..=dim {
        let row = if col <= c {
            col + a
        } else if col <= c + a {
            col - c
        } else if col <= c + a + 2 * b {
            col
        } else if col <= c + 2 * a + 2 * b {
            col + c
        } else {
            col - a
        };
        m.set(row - 1, col - 1, rat(1));
    }
    SymplecticElement::new(m)
}

/// Permutation `diag(w, w*)` whose top half interleaves the last `2l - 1`
/// coordinates, alternating tail and head positions; `w* = K (w^T)^{-1} K`
/// restores the form on the bottom half.
pub fn pair_interleave(n: usize, l: usize) -> Result<SymplecticElement> {
    if l == 0 || 2 * l - 1 > n {
        return Err(bad(format!("interleave width {l} too large for rank {n}")));
    }
    let fixed = n - (2 * l - 1);
    let mut nu = RationalMatrix::zero(2 * l - 1, 2 * l - 1);
    for t in 1..=l {
        nu.set(2 * t - 2, l + t - 2, rat(1));
    }
    for t in 1..l {
        nu.set(2 * t - 1, t - 1, rat(1));
    }
    let w = block_diag(&[RationalMatrix::identity(fixed), nu]);
    let k = RationalMatrix::antidiagonal_identity(n);
    let w_star = k.mul(&w.transpose().inverse()?).mul(&k);
    SymplecticElement::new(block_diag(&[w, w_star]))
}

/// Signed permutation splitting coordinates by parity: odd original
/// coordinates fill the top half in order, even ones the bottom half. The
/// sign on each even coordinate is forced by form preservation: `-1`
/// while the coordinate sat in the top half, `+1` once past the middle.
pub fn parity_split(n: usize) -> Result<SymplecticElement> {
    if n == 0 {
        return Err(bad("parity split needs positive rank".into()));
    }
    let dim = 2 * n;
    let mut m = RationalMatrix::zero(dim, dim);
    for i in 1..=n {
        m.set(i - 1, 2 * i - 2, rat(1));
    }
    for t in 1..=n {
        let sign = if 2 * t <= n { -1 } else { 1 };
        m.set(n + t - 1, 2 * t - 1, rat(sign));
    }
    SymplecticElement::new(m)
}

/// [`parity_split`] of the middle `Sp(2(n-1))`, extended by the identity
/// on the outer coordinates.
pub fn parity_split_embedded(n: usize) -> Result<SymplecticElement> {
    if n < 2 {
        return Err(bad(format!(
            "embedded parity split needs rank >= 2, got {n}"
        )));
    }
    embed_sp(1, &parity_split(n - 1)?)
}

/// `[[1, 1/2], [-1, 1/2]]`: product of the lower and upper elementary
/// shears `[[1,0],[-1,1]] [[1,1/2],[0,1]]`.
pub fn lower_shear() -> SymplecticElement {
    let m = RationalMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => rat(1),
        (0, 1) => ratio(1, 2),
        (1, 0) => rat(-1),
        (1, 1) => ratio(1, 2),
        _ => unreachable!(),
    });
    SymplecticElement::new(m).expect("constant shear is symplectic")
}

/// `[[1, -1/2], [1, 1/2]]`: the companion of [`lower_shear`] with the
/// opposite off-diagonal signs.
pub fn upper_shear() -> SymplecticElement {
    let m = RationalMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => rat(1),
        (0, 1) => ratio(-1, 2),
        (1, 0) => rat(1),
        (1, 1) => ratio(1, 2),
        _ => unreachable!(),
    });
    SymplecticElement::new(m).expect("constant shear is symplectic")
}

/// Block-diagonal element with a 2x2 block on each consecutive coordinate
/// pair: the first `ceil(n/2)` pairs carry `block`, the rest its
/// form-dual `K (block^T)^{-1} K`.
pub fn diagonal_shear(n: usize, block: &SymplecticElement) -> Result<SymplecticElement> {
    if block.half_rank() != 1 {
        return Err(Error::DimensionMismatch(
            "diagonal shear wants a 2x2 block".into(),
        ));
    }
    if n == 0 {
        return Err(bad("diagonal shear needs positive rank".into()));
    }
    let g = block.matrix().clone();
    let k2 = RationalMatrix::antidiagonal_identity(2);
    let g_star = k2.mul(&g.transpose().inverse()?).mul(&k2);
    let head = (n + 1) / 2;
    let blocks: Vec<RationalMatrix> = (0..n)
        .map(|t| if t < head { g.clone() } else { g_star.clone() })
        .collect();
    SymplecticElement::new(block_diag(&blocks))
}

/// `I + sum_i x_i E(k, k+i)`: a row of shears out of coordinate `k`. The
/// generators annihilate each other, so the sum is the exact exponential.
pub fn row_shear(n: usize, k: usize, xs: &[Rat]) -> Result<SymplecticElement> {
    if k == 0 || k + xs.len() > n {
        return Err(bad(format!(
            "row shear (start {k}, length {}) does not fit in rank {n}",
            xs.len()
        )));
    }
    let mut m = RationalMatrix::identity(2 * n);
    for (idx, x) in xs.iter().enumerate() {
        m = m.add(&estar(n, k, k + idx + 1).scale(x));
    }
    SymplecticElement::new(m)
}

/// `I + sum y_ij E(a+i, j)`: lower hook below the leading `GL(a)` block,
/// with `y` of shape `(n-a-b) x a`.
pub fn hook_lower(n: usize, a: usize, b: usize, y: &RationalMatrix) -> Result<SymplecticElement> {
    hook_block_check(n, a, b)?;
    let rows = n - a - b;
    if y.n_rows() != rows || y.n_cols() != a {
        return Err(Error::DimensionMismatch(format!(
            "hook parameter is {}x{}, expected {rows}x{a}",
            y.n_rows(),
            y.n_cols()
        )));
    }
    let mut m = RationalMatrix::identity(2 * n);
    for i in 1..=rows {
        for j in 1..=a {
            m = m.add(&estar(n, a + i, j).scale(y.get(i - 1, j - 1)));
        }
    }
    SymplecticElement::new(m)
}

/// `I + sum z_ij E(i, a+j)`: the transposed hook, `z` of shape
/// `a x (n-a-b)`.
pub fn hook_upper(n: usize, a: usize, b: usize, z: &RationalMatrix) -> Result<SymplecticElement> {
    hook_block_check(n, a, b)?;
    let cols = n - a - b;
    if z.n_rows() != a || z.n_cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "hook parameter is {}x{}, expected {a}x{cols}",
            z.n_rows(),
            z.n_cols()
        )));
    }
    let mut m = RationalMatrix::identity(2 * n);
    for i in 1..=a {
        for j in 1..=cols {
            m = m.add(&estar(n, i, a + j).scale(z.get(i - 1, j - 1)));
        }
    }
    SymplecticElement::new(m)
}

/// Diagonal torus element `diag(v_1..v_n, v_n^{-1}..v_1^{-1})`.
pub fn torus(vals: &[Rat]) -> Result<SymplecticElement> {
    if vals.is_empty() {
        return Err(bad("torus needs at least one coordinate".into()));
    }
    if vals.iter().any(|v| v.is_zero()) {
        return Err(bad("torus coordinates must be nonzero".into()));
    }
    let n = vals.len();
    let m = RationalMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if r != c {
            Rat::zero()
        } else if r < n {
            vals[r].clone()
        } else {
            rat(1) / vals[2 * n - 1 - r].clone()
        }
    });
    SymplecticElement::new(m)
}

/// `diag(I_2, h^{-1} I_{n-2}, h I_{n-2}, I_2)` as a torus element.
pub fn axis_dilation(n: usize, h: &Rat) -> Result<SymplecticElement> {
    if n < 2 {
        return Err(bad(format!("axis dilation needs rank >= 2, got {n}")));
    }
    if h.is_zero() {
        return Err(bad("dilation parameter must be nonzero".into()));
    }
    let mut vals = vec![rat(1), rat(1)];
    vals.extend(std::iter::repeat(rat(1) / h.clone()).take(n - 2));
    torus(&vals)
}

/// `I + x (e_12 + e_34 - e_56)` on rank 3.
pub fn triple_shear(x: &Rat) -> Result<SymplecticElement> {
    let mut m = RationalMatrix::identity(6);
    m.set(0, 1, x.clone());
    m.set(2, 3, x.clone());
    m.set(4, 5, -x.clone());
    SymplecticElement::new(m)
}

/// `I + k e_34` on rank 3.
pub fn central_shear(k: &Rat) -> Result<SymplecticElement> {
    let mut m = RationalMatrix::identity(6);
    m.set(2, 3, k.clone());
    SymplecticElement::new(m)
}

/// `I + v (e_23 - e_45)` on rank 3.
pub fn middle_shear(v: &Rat) -> Result<SymplecticElement> {
    let m = RationalMatrix::identity(6).add(&estar(3, 2, 3).scale(v));
    SymplecticElement::new(m)
}

/// `I + y E(1,2)` in any rank.
pub fn top_shear(n: usize, y: &Rat) -> Result<SymplecticElement> {
    if n < 2 {
        return Err(bad(format!("top shear needs rank >= 2, got {n}")));
    }
    let m = RationalMatrix::identity(2 * n).add(&estar(n, 1, 2).scale(y));
    SymplecticElement::new(m)
}

/// Unsigned swap of coordinates 1, 2 (and their mirrors 5, 6) in rank 3.
pub fn swap_outer() -> SymplecticElement {
    signed_permutation_rank3(&[(2, 1, 1), (1, 2, 1), (3, 3, 1), (4, 4, 1), (6, 5, 1), (5, 6, 1)])
}

/// Unsigned swap of coordinates 2, 3 (and their mirrors 4, 5) in rank 3.
pub fn swap_inner() -> SymplecticElement {
    signed_permutation_rank3(&[(1, 1, 1), (3, 2, 1), (2, 3, 1), (5, 4, 1), (4, 5, 1), (6, 6, 1)])
}

/// Signed swap of the middle pair in rank 3: `e_3 -> -e_4`, `e_4 -> e_3`.
/// Its square is `torus(1, 1, -1)`.
pub fn signed_middle_swap() -> SymplecticElement {
    signed_permutation_rank3(&[(1, 1, 1), (2, 2, 1), (4, 3, -1), (3, 4, 1), (5, 5, 1), (6, 6, 1)])
}

/// rank-3 signed permutation from (row, col, sign) placements: column c
/// maps to sign * e_row.
fn signed_permutation_rank3(placements: &[(usize, usize, i64)]) -> SymplecticElement {
    let mut m = RationalMatrix::zero(6, 6);
    for &(r, c, s) in placements {
        m.set(r - 1, c - 1, rat(s));
    }
    SymplecticElement::new(m).expect("catalog permutation preserves the form")
}

/// `diag(I_k, g, I_k)` in `Sp(2(m + k))` for `g` in `Sp(2m)`.
pub fn embed_sp(k: usize, inner: &SymplecticElement) -> Result<SymplecticElement> {
    let m = inner.half_rank();
    let n = m + k;
    let g = inner.matrix();
    let out = RationalMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let in_block = (k..k + 2 * m).contains(&r) && (k..k + 2 * m).contains(&c);
        if in_block {
            g.get(r - k, c - k).clone()
        } else if r == c {
            rat(1)
        } else {
            Rat::zero()
        }
    });
    SymplecticElement::new(out)
}

// ---------------------------------------------------------------------------
// string dispatch (CLI / FFI surface)

fn int_arg(params: &[Rat], idx: usize) -> Result<usize> {
    let v = params
        .get(idx)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {idx}")))?;
    crate::rat::as_integer(v)
        .and_then(|b| usize::try_from(b).ok())
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "expected a small nonnegative integer, got {}",
                crate::rat::rat_string(v)
            ))
        })
}

fn first_arg(params: &[Rat]) -> Result<&Rat> {
    params
        .first()
        .ok_or_else(|| Error::InvalidParameter("missing parameter".into()))
}

/// Builds a named element from rational parameters.
pub fn build_named_element(name: &str, n: usize, params: &[Rat]) -> Result<SymplecticElement> {
    match name {
        "block-swap" => block_swap(n, int_arg(params, 0)?, int_arg(params, 1)?),
        "pair-interleave" => pair_interleave(n, int_arg(params, 0)?),
        "parity-split" => parity_split(n),
        "parity-split-embedded" => parity_split_embedded(n),
        "lower-shear" => Ok(lower_shear()),
        "upper-shear" => Ok(upper_shear()),
        "diagonal-shear" => diagonal_shear(n, &lower_shear()),
        "row-shear" => row_shear(n, int_arg(params, 0)?, &params[1..]),
        "axis-dilation" => axis_dilation(n, first_arg(params)?),
        "triple-shear" => triple_shear(first_arg(params)?),
        "central-shear" => central_shear(first_arg(params)?),
        "middle-shear" => middle_shear(first_arg(params)?),
        "top-shear" => top_shear(n, first_arg(params)?),
        "torus" => torus(params),
        "swap-outer" => Ok(swap_outer()),
        "swap-inner" => Ok(swap_inner()),
        "signed-middle-swap" => Ok(signed_middle_swap()),
        other => Err(Error::InvalidParameter(format!("unknown element '{other}'"))),
    }
}

/// Builds a named family from integer parameters.
pub fn build_named_family(name: &str, n: usize, params: &[usize]) -> Result<UnipotentFamily> {
    let p = |idx: usize| -> Result<usize> {
        params
            .get(idx)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {idx}")))
    };
    match name {
        "upper-block" => upper_block(n, p(0)?),
        "upper-block-reduced" => upper_block_reduced(n, p(0)?),
        "parabolic-radical" => parabolic_radical(n, p(0)?),
        "parabolic-radical-cut" => parabolic_radical_cut(n, p(0)?),
        "corner" => corner(n, p(0)?, p(1)?),
        "corner-complement" => corner_complement(n, p(0)?, p(1)?),
        "hook-rows" => hook_rows(n, p(0)?, p(1)?),
        "hook-rows-cut" => hook_rows_cut(n, p(0)?, p(1)?),
        "hook-cols" => hook_cols(n, p(0)?, p(1)?),
        "hook-cols-cut" => hook_cols_cut(n, p(0)?, p(1)?),
        "interleaved" => interleaved(n),
        "interleaved-reduced" => interleaved_reduced(n),
        "interleaved-cut" => interleaved_cut(n),
        "interleave-complement" => interleave_complement(n),
        "interleave-lower" => interleave_lower(n),
        "siegel" => siegel(n),
        "siegel-reduced" => siegel_reduced(n),
        "lower-triangle" => lower_triangle(n),
        "lower-triangle-embedded" => lower_triangle_embedded(n),
        "lower-wedge" => lower_wedge(n),
        "single" => single_direction(n, p(0)?, p(1)?),
        other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_image(g: &SymplecticElement, col: usize) -> (usize, i64) {
        let m = g.matrix();
        for row in 1..=m.n_rows() {
            let v = m.get(row - 1, col - 1);
            if !v.is_zero() {
                let s = if *v == rat(1) { 1 } else { -1 };
                return (row, s);
            }
        }
        panic!("zero column {col}");
    }

    #[test]
    fn block_swap_instances() {
        // rank 3, a = 1, b = 1: exchange coordinates 1 and 2, fix the middle
        let w = block_swap(3, 1, 1).unwrap();
        let images: Vec<usize> = (1..=6).map(|c| perm_image(&w, c).0).collect();
        assert_eq!(images, vec![2, 1, 3, 4, 6, 5]);
        // rank 4, a = 2, b = 0: swap the two leading 2-blocks
        let w = block_swap(4, 2, 0).unwrap();
        let images: Vec<usize> = (1..=8).map(|c| perm_image(&w, c).0).collect();
        assert_eq!(images, vec![3, 4, 1, 2, 7, 8, 5, 6]);
    }

    #[test]
    fn pair_interleave_instances() {
        // rank 3, width 2: swap 1,2 and mirror 5,6
        let w = pair_interleave(3, 2).unwrap();
        let images: Vec<usize> = (1..=6).map(|c| perm_image(&w, c).0).collect();
        assert_eq!(images, vec![2, 1, 3, 4, 6, 5]);
        // rank 4, width 2: swap 2,3 and mirror 6,7
        let w = pair_interleave(4, 2).unwrap();
        let images: Vec<usize> = (1..=8).map(|c| perm_image(&w, c).0).collect();
        assert_eq!(images, vec![1, 3, 2, 4, 5, 7, 6, 8]);
    }

    #[test]
    fn parity_split_signs() {
        let w = parity_split(4).unwrap();
        // odd columns to the top half, all +1
        for i in 1..=4 {
            assert_eq!(perm_image(&w, 2 * i - 1), (i, 1));
        }
        // even columns to the bottom half with the forced signs
        assert_eq!(perm_image(&w, 2), (5, -1));
        assert_eq!(perm_image(&w, 4), (6, -1));
        assert_eq!(perm_image(&w, 6), (7, 1));
        assert_eq!(perm_image(&w, 8), (8, 1));
        // embedded variant keeps the outer coordinates
        let w = parity_split_embedded(3).unwrap();
        assert_eq!(perm_image(&w, 1), (1, 1));
        assert_eq!(perm_image(&w, 2), (2, 1));
        assert_eq!(perm_image(&w, 3), (4, -1));
        assert_eq!(perm_image(&w, 4), (3, 1));
        assert_eq!(perm_image(&w, 5), (5, 1));
        assert_eq!(perm_image(&w, 6), (6, 1));
    }

    #[test]
    fn shear_factorizations() {
        let lower = RationalMatrix::from_i64_rows(&[&[1, 0], &[-1, 1]]);
        let upper_half = RationalMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => ratio(1, 2),
            (r, c) if r == c => rat(1),
            _ => Rat::zero(),
        });
        assert_eq!(lower.mul(&upper_half), *lower_shear().matrix());
        let upper = RationalMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        let neg_half = RationalMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => ratio(-1, 2),
            (r, c) if r == c => rat(1),
            _ => Rat::zero(),
        });
        assert_eq!(upper.mul(&neg_half), *upper_shear().matrix());
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(upper_block(3, 1).unwrap().dimension(), 5);
        assert_eq!(upper_block_reduced(3, 1).unwrap().dimension(), 3);
        assert_eq!(upper_block(4, 2).unwrap().dimension(), 12);
        assert_eq!(upper_block_reduced(4, 2).unwrap().dimension(), 10);
        assert_eq!(siegel(3).unwrap().dimension(), 9);
        assert_eq!(siegel(4).unwrap().dimension(), 16);
        assert_eq!(siegel_reduced(3).unwrap().dimension(), 7);
        assert_eq!(siegel_reduced(4).unwrap().dimension(), 10);
        assert_eq!(interleaved(3).unwrap().dimension(), 8);
        assert_eq!(interleaved(4).unwrap().dimension(), 14);
        assert_eq!(interleaved_reduced(3).unwrap().dimension(), 7);
        assert_eq!(interleaved_reduced(4).unwrap().dimension(), 13);
        assert_eq!(lower_triangle(4).unwrap().dimension(), 4);
        assert_eq!(
            lower_triangle_embedded(3).unwrap().directions(),
            &[(4, 3)]
        );
        assert!(lower_wedge(3).unwrap().dimension() == 0);
        assert_eq!(lower_wedge(5).unwrap().dimension(), 2);
        assert_eq!(corner(3, 1, 1).unwrap().dimension(), 4);
        assert_eq!(
            corner_complement(3, 1, 1).unwrap().directions(),
            &[(2, 4), (2, 5)]
        );
        assert_eq!(
            corner_complement(4, 2, 0).unwrap().directions(),
            &[(3, 4), (3, 5), (3, 6), (4, 5)]
        );
        assert!(hook_rows_cut(3, 1, 1).unwrap().dimension() == 0);
        assert_eq!(hook_rows_cut(4, 2, 0).unwrap().dimension(), 2);
    }

    #[test]
    fn interleave_pieces() {
        assert_eq!(interleave_complement(4).unwrap().directions(), &[(2, 3)]);
        assert_eq!(interleave_lower(4).unwrap().directions(), &[(1, 2)]);
        assert!(interleave_complement(3).unwrap().dimension() == 0);
        assert!(interleave_lower(3).unwrap().dimension() == 0);
        assert_eq!(
            interleave_complement(5).unwrap().directions(),
            &[(1, 4), (3, 4)]
        );
        assert_eq!(
            interleave_lower(5).unwrap().directions(),
            &[(2, 1), (2, 3)]
        );
    }

    #[test]
    fn characters_match_expected_positions() {
        let chi = reduced_char(4, 2).unwrap();
        assert_eq!(chi.eval_direction(1, 2), rat(1));
        // (2,7) is self-paired, so its basis matrix is 2 e_{27}
        assert_eq!(chi.eval_direction(2, 7), rat(2));
        assert_eq!(chi.weights().len(), 2);
        let chi = descent_char(3, 1, 1).unwrap();
        assert_eq!(chi.weights(), &[(2, 5, rat(1))]);
        let chi = interleaved_full_char(3).unwrap();
        assert_eq!(chi.weights(), &[(1, 2, rat(1)), (2, 4, rat(1))]);
        let chi = interleaved_full_char(4).unwrap();
        assert_eq!(
            chi.weights(),
            &[(1, 3, rat(1)), (2, 4, rat(1)), (3, 5, rat(1))]
        );
    }

    #[test]
    fn squared_middle_swap_is_torus() {
        let w = signed_middle_swap();
        let sq = w.mul(&w).unwrap();
        let t = torus(&[rat(1), rat(1), rat(-1)]).unwrap();
        assert_eq!(sq.matrix(), t.matrix());
    }
}
