//! Unipotent subgroups of `Sp(2n)` over the rationals: coordinate families,
//! character functionals, and the exact linear algebra behind conjugation
//! identities, root exchange, stabilizers, and Heisenberg quotients.
//!
//! The symplectic form is antidiagonal: `<x, y> = sum_i x_i y_(2n+1-i) -
//! x_(n+i) y_(n+1-i)`. One-parameter subgroups are indexed by matrix
//! positions `(i, j)` through [`estar`], which pairs the entry with its
//! mirror so the result lies in the Lie algebra.

pub mod catalog;
pub mod transport;

use crate::error::{Error, Result};
use crate::matrix::{span_contains, RationalMatrix, SymplecticElement};
use crate::rat::{rat_string, Rat};
use num_traits::Zero;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

/// Sign attached to coordinate k by the symplectic form: `+1` in the top
/// half, `-1` in the bottom half. Coordinates are 1-based.
fn eps(n: usize, k: usize) -> i64 {
    if k <= n {
        1
    } else {
        -1
    }
}

/// Lie algebra generator at position `(i, j)`, 1-based:
/// `e_(i,j) - eps_i eps_j e_(2n+1-j, 2n+1-i)`.
///
/// A self-mirrored position (`i + j = 2n + 1`) yields twice the unit entry.
/// Diagonal positions (`i = j`) give torus directions and are valid here;
/// unipotent families restrict to `i != j`.
pub fn estar(n: usize, i: usize, j: usize) -> RationalMatrix {
    assert!(
        (1..=2 * n).contains(&i) && (1..=2 * n).contains(&j),
        "estar index out of range"
    );
    let dim = 2 * n;
    let mut m = RationalMatrix::zero(dim, dim);
    m.set(i - 1, j - 1, crate::rat::rat(1));
    let (mi, mj) = (2 * n + 1 - j, 2 * n + 1 - i);
    let sign = eps(n, i) * eps(n, j);
    let cur = m.get(mi - 1, mj - 1).clone();
    m.set(mi - 1, mj - 1, cur - crate::rat::rat(sign));
    m
}

/// Canonical representative of the direction through `(i, j)`: the mirror
/// position spans the same line, and we keep the one with `i + j <= 2n + 1`.
pub fn canonical_direction(n: usize, i: usize, j: usize) -> (usize, usize) {
    if i + j > 2 * n + 1 {
        (2 * n + 1 - j, 2 * n + 1 - i)
    } else {
        (i, j)
    }
}

/// A set of independent one-parameter directions in `Sp(2n)`, closed under
/// nothing in particular: span and bracket structure are checked by the
/// operations that need them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentFamily {
    half_rank: usize,
    name: String,
    dirs: Vec<(usize, usize)>,
}

impl UnipotentFamily {
    pub fn new(half_rank: usize, name: impl Into<String>, dirs: Vec<(usize, usize)>) -> Result<Self> {
        let n = half_rank;
        let mut canon = Vec::with_capacity(dirs.len());
        for (i, j) in dirs {
            if i == 0 || j == 0 || i > 2 * n || j > 2 * n {
                return Err(Error::InvalidParameter(format!(
                    "direction ({i},{j}) out of range for Sp({})",
                    2 * n
                )));
            }
            if i == j {
                return Err(Error::InvalidParameter(format!(
                    "diagonal position ({i},{j}) is not a unipotent direction"
                )));
            }
            let c = canonical_direction(n, i, j);
            if canon.contains(&c) {
                return Err(Error::InvalidParameter(format!(
                    "direction ({i},{j}) repeats {c:?}"
                )));
            }
            canon.push(c);
        }
        Ok(UnipotentFamily { half_rank, name: name.into(), dirs: canon })
    }

    pub fn half_rank(&self) -> usize {
        self.half_rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn directions(&self) -> &[(usize, usize)] {
        &self.dirs
    }

    pub fn dimension(&self) -> usize {
        self.dirs.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.dirs.contains(&canonical_direction(self.half_rank, i, j))
    }

    pub fn basis(&self) -> Vec<RationalMatrix> {
        self.dirs
            .iter()
            .map(|&(i, j)| estar(self.half_rank, i, j))
            .collect()
    }

    /// Union of several families as a plain direction list; errors on rank
    /// mismatch or overlapping directions.
    pub fn union(name: impl Into<String>, parts: &[&UnipotentFamily]) -> Result<Self> {
        let half_rank = parts
            .first()
            .map(|f| f.half_rank)
            .ok_or_else(|| Error::InvalidParameter("union of no families".into()))?;
        let mut dirs = Vec::new();
        for f in parts {
            if f.half_rank != half_rank {
                return Err(Error::DimensionMismatch(
                    "family union across different groups".into(),
                ));
            }
            dirs.extend_from_slice(&f.dirs);
        }
        UnipotentFamily::new(half_rank, name, dirs)
    }

    /// The same directions inside `Sp(2(n + offset))`, shifted to the middle
    /// block of the standard embedding.
    pub fn embed(&self, offset: usize) -> Result<Self> {
        let n = self.half_rank + offset;
        let dirs = self
            .dirs
            .iter()
            .map(|&(i, j)| (i + offset, j + offset))
            .collect();
        UnipotentFamily::new(n, format!("{}+{}", self.name, offset), dirs)
    }
}

impl Serialize for UnipotentFamily {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("UnipotentFamily", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("half_rank", &self.half_rank)?;
        st.serialize_field("directions", &self.dirs)?;
        st.end()
    }
}

/// Linear functional on matrices given by a sparse weight matrix:
/// `chi(M) = sum w_(i,j) M_(i,j)` over 1-based positions. Composing with a
/// unipotent element's off-diagonal part realizes the additive characters
/// used in the integrals; zero weights are dropped so the form is canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterFunctional {
    half_rank: usize,
    weights: Vec<(usize, usize, Rat)>,
}

impl CharacterFunctional {
    pub fn new(half_rank: usize, weights: Vec<(usize, usize, Rat)>) -> Result<Self> {
        let n = half_rank;
        let mut acc: Vec<(usize, usize, Rat)> = Vec::new();
        for (i, j, w) in weights {
            if i == 0 || j == 0 || i > 2 * n || j > 2 * n {
                return Err(Error::InvalidParameter(format!(
                    "weight position ({i},{j}) out of range for Sp({})",
                    2 * n
                )));
            }
            match acc.iter_mut().find(|(a, b, _)| *a == i && *b == j) {
                Some(slot) => slot.2 += w,
                None => acc.push((i, j, w)),
            }
        }
        acc.retain(|(_, _, w)| !w.is_zero());
        acc.sort_by_key(|&(i, j, _)| (i, j));
        Ok(CharacterFunctional { half_rank, weights: acc })
    }

    pub fn trivial(half_rank: usize) -> Self {
        CharacterFunctional { half_rank, weights: Vec::new() }
    }

    pub fn half_rank(&self) -> usize {
        self.half_rank
    }

    pub fn weights(&self) -> &[(usize, usize, Rat)] {
        &self.weights
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn eval(&self, m: &RationalMatrix) -> Rat {
        let mut acc = Rat::zero();
        for (i, j, w) in &self.weights {
            acc += w * m.get(i - 1, j - 1);
        }
        acc
    }

    /// Value on the direction through `(i, j)`.
    pub fn eval_direction(&self, i: usize, j: usize) -> Rat {
        self.eval(&estar(self.half_rank, i, j))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.half_rank != other.half_rank {
            return Err(Error::DimensionMismatch(
                "character sum across different groups".into(),
            ));
        }
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        CharacterFunctional::new(self.half_rank, weights)
    }

    /// Shift to the middle block of `Sp(2(n + offset))`.
    pub fn embed(&self, offset: usize) -> Result<Self> {
        let weights = self
            .weights
            .iter()
            .map(|(i, j, w)| (i + offset, j + offset, w.clone()))
            .collect();
        CharacterFunctional::new(self.half_rank + offset, weights)
    }

    /// Pullback along conjugation: the result sends `M` to
    /// `chi(g^-1 M g)`, so it is the character seen by the conjugated
    /// subgroup `g U g^-1`. On weight matrices this is
    /// `W -> (g^-1)^T W g^T`.
    pub fn transport(&self, g: &SymplecticElement) -> Result<Self> {
        if g.half_rank() != self.half_rank {
            return Err(Error::DimensionMismatch(
                "transport across different groups".into(),
            ));
        }
        let dim = 2 * self.half_rank;
        let mut w = RationalMatrix::zero(dim, dim);
        for (i, j, c) in &self.weights {
            let cur = w.get(i - 1, j - 1).clone();
            w.set(i - 1, j - 1, cur + c);
        }
        let ginv = g.inverse();
        let moved = ginv.matrix().transpose().mul(&w).mul(&g.matrix().transpose());
        let mut weights = Vec::new();
        for i in 1..=dim {
            for j in 1..=dim {
                let c = moved.get(i - 1, j - 1);
                if !c.is_zero() {
                    weights.push((i, j, c.clone()));
                }
            }
        }
        CharacterFunctional::new(self.half_rank, weights)
    }
}

impl Serialize for CharacterFunctional {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Weights<'a>(&'a [(usize, usize, Rat)]);
        impl Serialize for Weights<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = ser.serialize_seq(Some(self.0.len()))?;
                for (i, j, w) in self.0 {
                    seq.serialize_element(&(i, j, rat_string(w)))?;
                }
                seq.end()
            }
        }
        let mut st = ser.serialize_struct("CharacterFunctional", 2)?;
        st.serialize_field("half_rank", &self.half_rank)?;
        st.serialize_field("weights", &Weights(&self.weights))?;
        st.end()
    }
}

/// Images of a family's basis under conjugation by `g`.
pub fn conjugate_family(
    g: &SymplecticElement,
    fam: &UnipotentFamily,
) -> Result<Vec<RationalMatrix>> {
    if g.half_rank() != fam.half_rank() {
        return Err(Error::DimensionMismatch(
            "conjugation across different groups".into(),
        ));
    }
    fam.basis()
        .iter()
        .map(|d| d.conjugate_by(g.matrix()))
        .collect()
}

/// Structure of the quotient of two nested upper-block radicals: the row-k
/// directions of `U(2m, k)` modulo `U(2m, k-1)`.
#[derive(Debug, Clone, Serialize)]
pub struct HeisenbergReport {
    pub m: usize,
    pub k: usize,
    pub dim: usize,
    pub center_dim: usize,
    pub abelian: bool,
    /// All brackets of quotient directions land in the center line.
    pub two_step: bool,
    /// The bracket pairing on the quotient modulo its center has full rank.
    pub nondegenerate: bool,
}

pub fn heisenberg_structure(m: usize, k: usize) -> Result<HeisenbergReport> {
    if k == 0 || k > m {
        return Err(Error::InvalidParameter(format!(
            "row index {k} outside 1..={m}"
        )));
    }
    let dirs: Vec<(usize, usize)> = (k + 1..=2 * m + 1 - k).map(|j| (k, j)).collect();
    let dim = dirs.len();
    debug_assert_eq!(dim, 2 * (m - k) + 1);
    let center = (k, 2 * m + 1 - k);
    let center_mat = estar(m, center.0, center.1);
    let center_span = [center_mat.clone()];
    let others: Vec<(usize, usize)> = dirs.iter().copied().filter(|&d| d != center).collect();
    let mut two_step = true;
    let mut abelian = true;
    let mut pairing = RationalMatrix::zero(others.len(), others.len());
    for (r, &(i1, j1)) in others.iter().enumerate() {
        for (c, &(i2, j2)) in others.iter().enumerate() {
            let br = estar(m, i1, j1).bracket(&estar(m, i2, j2));
            if br.is_zero_matrix() {
                continue;
            }
            abelian = false;
            if !span_contains(&center_span, &br) {
                two_step = false;
                continue;
            }
            // coefficient against the center generator, read off one entry
            let denom = center_mat.get(center.0 - 1, center.1 - 1);
            let coeff = br.get(center.0 - 1, center.1 - 1) / denom;
            pairing.set(r, c, coeff);
        }
    }
    let nondegenerate = pairing.rank() == others.len();
    Ok(HeisenbergReport {
        m,
        k,
        dim,
        center_dim: 1,
        abelian,
        two_step: two_step && !abelian,
        nondegenerate,
    })
}

/// Exchange contract for a pair of abelian families against a character on
/// an ambient family: brackets must stay inside the ambient span, and the
/// bilinear form `(x, y) -> chi([x, y])` must be a perfect pairing.
#[derive(Debug, Clone, Serialize)]
pub struct RootExchangeReport {
    pub x_dim: usize,
    pub y_dim: usize,
    pub x_abelian: bool,
    pub y_abelian: bool,
    pub brackets_in_ambient: bool,
    pub pairing_rank: usize,
    pub nondegenerate: bool,
    pub ok: bool,
}

pub fn root_exchange_check(
    x: &UnipotentFamily,
    y: &UnipotentFamily,
    ambient: &UnipotentFamily,
    chi: &CharacterFunctional,
) -> Result<RootExchangeReport> {
    let n = ambient.half_rank();
    if x.half_rank() != n || y.half_rank() != n || chi.half_rank() != n {
        return Err(Error::DimensionMismatch(
            "exchange data across different groups".into(),
        ));
    }
    let ambient_basis = ambient.basis();
    let in_ambient = |m: &RationalMatrix| span_contains(&ambient_basis, m);
    let is_abelian = |f: &UnipotentFamily| {
        let b = f.basis();
        b.iter()
            .enumerate()
            .all(|(i, d1)| b.iter().skip(i + 1).all(|d2| d1.bracket(d2).is_zero_matrix()))
    };
    let x_abelian = is_abelian(x);
    let y_abelian = is_abelian(y);
    let xb = x.basis();
    let yb = y.basis();
    let mut brackets_in_ambient = true;
    let mut pairing = RationalMatrix::zero(xb.len(), yb.len());
    for (r, dx) in xb.iter().enumerate() {
        for (c, dy) in yb.iter().enumerate() {
            let br = dx.bracket(dy);
            if !br.is_zero_matrix() && !in_ambient(&br) {
                brackets_in_ambient = false;
            }
            pairing.set(r, c, chi.eval(&br));
        }
    }
    let pairing_rank = pairing.rank();
    let nondegenerate = xb.len() == yb.len() && pairing_rank == xb.len() && !xb.is_empty();
    let ok = x_abelian && y_abelian && brackets_in_ambient && nondegenerate;
    Ok(RootExchangeReport {
        x_dim: xb.len(),
        y_dim: yb.len(),
        x_abelian,
        y_abelian,
        brackets_in_ambient,
        pairing_rank,
        nondegenerate,
        ok,
    })
}

/// Dimension of the subalgebra of `span(levi)` annihilating the character
/// on the family: solutions of `chi([l, d]) = 0` for every direction `d`.
pub fn stabilizer_dimension(
    levi: &[RationalMatrix],
    fam: &UnipotentFamily,
    chi: &CharacterFunctional,
) -> Result<usize> {
    if levi.is_empty() {
        return Ok(0);
    }
    let dirs = fam.basis();
    let system = RationalMatrix::from_fn(dirs.len(), levi.len(), |r, c| {
        chi.eval(&levi[c].bracket(&dirs[r]))
    });
    Ok(levi.len() - system.rank())
}

/// Result of comparing a family against the span of a list of claimed
/// complementary pieces.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub whole_dim: usize,
    pub part_dims: Vec<usize>,
    pub dims_add: bool,
    pub parts_independent: bool,
    pub span_equal: bool,
    pub ok: bool,
}

/// Checks `whole = product of parts` on the Lie algebra level: the parts
/// must be independent and their joint span must equal the whole span.
pub fn verify_product_decomposition(
    whole: &UnipotentFamily,
    parts: &[&UnipotentFamily],
) -> Result<DecompositionReport> {
    for p in parts {
        if p.half_rank() != whole.half_rank() {
            return Err(Error::DimensionMismatch(
                "decomposition across different groups".into(),
            ));
        }
    }
    let whole_basis = whole.basis();
    let mut joint = Vec::new();
    let mut part_dims = Vec::new();
    for p in parts {
        part_dims.push(p.dimension());
        joint.extend(p.basis());
    }
    let total: usize = part_dims.iter().sum();
    let dims_add = total == whole.dimension();
    let parts_independent = crate::matrix::span_dimension(&joint) == total;
    let span_equal = crate::matrix::same_span(&whole_basis, &joint);
    let ok = dims_add && parts_independent && span_equal;
    Ok(DecompositionReport {
        whole_dim: whole.dimension(),
        part_dims,
        dims_add,
        parts_independent,
        span_equal,
        ok,
    })
}

/// Sum of the root weights of the lower-parabolic radical with `GL(a)`
/// block, evaluated on a diagonal exponent pattern. `pattern[i]` is the
/// exponent of the i-th torus coordinate (top half); the bottom half is
/// forced by the form. For `diag(t I_a, I, t^-1 I_a)` the result is
/// `a(2n - a + 1)`, the modulus exponent of that parabolic.
pub fn modulus_character_exponent(n: usize, a: usize, pattern: &[Rat]) -> Result<Rat> {
    if a == 0 || a > n {
        return Err(Error::InvalidParameter(format!(
            "block size {a} outside 1..={n}"
        )));
    }
    if pattern.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "pattern length {} != {n}",
            pattern.len()
        )));
    }
    let coord = |idx: usize| -> Rat {
        if idx <= n {
            pattern[idx - 1].clone()
        } else {
            -pattern[2 * n - idx].clone()
        }
    };
    let mut acc = Rat::zero();
    for i in 1..=a {
        for j in a + 1..=2 * n + 1 - i {
            acc += coord(i) - coord(j);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn estar_lies_in_lie_algebra() {
        // X^T J + J X = 0 for every generator
        for n in [2usize, 3, 4] {
            let j = crate::matrix::symplectic_form(n);
            for i in 1..=2 * n {
                for k in 1..=2 * n {
                    let x = estar(n, i, k);
                    let lhs = x.transpose().mul(&j).add(&j.mul(&x));
                    assert!(lhs.is_zero_matrix(), "n={n} ({i},{k})");
                }
            }
        }
    }

    #[test]
    fn estar_self_mirror_doubles() {
        let x = estar(3, 3, 4);
        assert_eq!(*x.get(2, 3), rat(2));
        assert_eq!(x.l1_norm(), rat(2));
        // mirror positions span the same line
        let a = estar(3, 1, 2);
        let b = estar(3, 5, 6);
        assert!(crate::matrix::same_span(&[a], &[b]));
    }

    #[test]
    fn family_canonicalizes_and_rejects() {
        let f = UnipotentFamily::new(3, "t", vec![(5, 6), (1, 3)]).unwrap();
        assert_eq!(f.directions(), &[(1, 2), (1, 3)]);
        assert!(f.contains(5, 6));
        assert!(UnipotentFamily::new(3, "t", vec![(1, 2), (5, 6)]).is_err());
        assert!(UnipotentFamily::new(3, "t", vec![(3, 3)]).is_err());
        assert!(UnipotentFamily::new(3, "t", vec![(0, 2)]).is_err());
    }

    #[test]
    fn character_eval_and_transport() {
        let chi = CharacterFunctional::new(3, vec![(1, 2, rat(1)), (2, 3, rat(1))]).unwrap();
        assert_eq!(chi.eval_direction(1, 2), rat(1));
        assert_eq!(chi.eval_direction(2, 3), rat(1));
        assert_eq!(chi.eval_direction(1, 3), rat(0));
        // transport along a torus element rescales each weight
        let t = catalog::torus(&[rat(2), rat(1), rat(1)]).unwrap();
        let moved = chi.transport(&t).unwrap();
        // chi'(M) = chi(t^-1 M t): weight at (1,2) becomes 1 * (t_2 / t_1)
        assert_eq!(moved.eval_direction(1, 2), ratio(1, 2));
        assert_eq!(moved.eval_direction(2, 3), rat(1));
        // weights with zero coefficient are dropped
        let zero = CharacterFunctional::new(3, vec![(1, 2, rat(1)), (1, 2, rat(-1))]).unwrap();
        assert!(zero.is_trivial());
    }

    #[test]
    fn heisenberg_quotients() {
        let h = heisenberg_structure(2, 1).unwrap();
        assert_eq!((h.dim, h.center_dim), (3, 1));
        assert!(h.two_step && h.nondegenerate && !h.abelian);
        let h = heisenberg_structure(3, 1).unwrap();
        assert_eq!(h.dim, 5);
        assert!(h.two_step && h.nondegenerate);
        let h = heisenberg_structure(3, 2).unwrap();
        assert_eq!(h.dim, 3);
        assert!(h.two_step && h.nondegenerate);
        let degenerate = heisenberg_structure(3, 3).unwrap();
        assert_eq!(degenerate.dim, 1);
        assert!(degenerate.abelian && !degenerate.two_step);
        assert!(heisenberg_structure(3, 4).is_err());
    }

    #[test]
    fn modulus_exponent_examples() {
        for (n, a) in [(3usize, 1usize), (3, 3), (4, 2), (5, 5)] {
            let pattern: Vec<Rat> = (1..=n).map(|i| rat((i <= a) as i64)).collect();
            assert_eq!(
                modulus_character_exponent(n, a, &pattern).unwrap(),
                rat((a * (2 * n - a + 1)) as i64),
                "n={n} a={a}"
            );
        }
        // dilation pattern concentrated away from the first two coordinates
        let mut pat = vec![rat(0), rat(0)];
        pat.extend(std::iter::repeat(rat(-1)).take(1));
        assert_eq!(modulus_character_exponent(3, 3, &pat).unwrap(), rat(-4));
        let mut pat5 = vec![rat(0), rat(0)];
        pat5.extend(std::iter::repeat(rat(-1)).take(3));
        assert_eq!(modulus_character_exponent(5, 5, &pat5).unwrap(), rat(-18));
    }

    #[test]
    fn decomposition_detects_gaps() {
        let whole = UnipotentFamily::new(2, "w", vec![(1, 2), (1, 3), (1, 4)]).unwrap();
        let p1 = UnipotentFamily::new(2, "a", vec![(1, 2)]).unwrap();
        let p2 = UnipotentFamily::new(2, "b", vec![(1, 3), (1, 4)]).unwrap();
        let ok = verify_product_decomposition(&whole, &[&p1, &p2]).unwrap();
        assert!(ok.ok);
        let short = verify_product_decomposition(&whole, &[&p2]).unwrap();
        assert!(!short.ok && !short.dims_add);
        let overlapping = verify_product_decomposition(&whole, &[&p1, &p1, &p2]).unwrap();
        assert!(!overlapping.ok && !overlapping.parts_independent);
    }
}
