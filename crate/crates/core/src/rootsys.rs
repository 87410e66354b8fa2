//! Root system of type C_m and its Weyl group realized as signed permutations.
//!
//! The ambient coordinates are the standard basis of R^m; roots are
//! `e_i ± e_j` (short) and `2e_i` (long), simple roots `α_i = e_i − e_{i+1}`
//! for `i < m` and `α_m = 2e_m`.

use crate::levi::LeviDatum;
use crate::{Error, Rat, Result};
use num_traits::Zero;

/// Hard cap on exhaustive Weyl-group enumeration (|W| = 2^m · m!).
pub const WEYL_ENUM_LIMIT: usize = 7;

/// A root of C_m, stored structurally together with a global sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub kind: RootKind,
    /// `false` for the positive member of the ± pair.
    pub negative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// `e_i ± e_j` with `1 ≤ i < j ≤ m`; `plus` selects `e_i + e_j`.
    Short { i: usize, j: usize, plus: bool },
    /// `2e_i`.
    Long { i: usize },
}

impl Root {
    pub fn short(i: usize, j: usize, plus: bool) -> Root {
        assert!(1 <= i && i < j, "short root requires 1 <= i < j");
        Root {
            kind: RootKind::Short { i, j, plus },
            negative: false,
        }
    }

    pub fn long(i: usize) -> Root {
        assert!(i >= 1, "long root requires i >= 1");
        Root {
            kind: RootKind::Long { i },
            negative: false,
        }
    }

    pub fn negate(self) -> Root {
        Root {
            negative: !self.negative,
            ..self
        }
    }

    /// Coordinate vector in Z^m.
    pub fn to_vec(self, m: usize) -> Vec<i64> {
        let mut v = vec![0i64; m];
        match self.kind {
            RootKind::Short { i, j, plus } => {
                assert!(j <= m);
                v[i - 1] = 1;
                v[j - 1] = if plus { 1 } else { -1 };
            }
            RootKind::Long { i } => {
                assert!(i <= m);
                v[i - 1] = 2;
            }
        }
        if self.negative {
            for c in &mut v {
                *c = -*c;
            }
        }
        v
    }

    /// Reconstruct a root from an integer vector, if it is one.
    pub fn from_vec(v: &[i64]) -> Option<Root> {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        match support.as_slice() {
            [i] if v[*i].abs() == 2 => Some(Root {
                kind: RootKind::Long { i: i + 1 },
                negative: v[*i] < 0,
            }),
            [i, j] if v[*i].abs() == 1 && v[*j].abs() == 1 => {
                let negative = v[*i] < 0;
                let plus = v[*i] == v[*j];
                Some(Root {
                    kind: RootKind::Short {
                        i: i + 1,
                        j: j + 1,
                        plus,
                    },
                    negative,
                })
            }
            _ => None,
        }
    }

    pub fn is_short(self) -> bool {
        matches!(self.kind, RootKind::Short { .. })
    }
}

/// All roots of C_m.
pub fn all_roots(m: usize) -> Vec<Root> {
    positive_roots(m)
        .into_iter()
        .flat_map(|r| [r, r.negate()])
        .collect()
}

/// Positive roots of C_m: `e_i ± e_j` (i < j) and `2e_i`.
pub fn positive_roots(m: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(Root::short(i, j, false));
            out.push(Root::short(i, j, true));
        }
        out.push(Root::long(i));
    }
    out
}

/// The simple root α_i (1-based); α_m is the long one.
pub fn simple_root(m: usize, i: usize) -> Root {
    assert!(1 <= i && i <= m);
    if i < m {
        Root::short(i, i + 1, false)
    } else {
        Root::long(m)
    }
}

/// An integer vector is a positive root expression iff its first nonzero
/// coordinate is positive (valid for vectors known to be roots of C_m).
pub fn is_positive_vec(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Weyl group element of type C_m as a signed permutation.
///
/// `img[i-1] = ±j` means `w(e_i) = ±e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    img: Vec<i64>,
}

impl SignedPerm {
    pub fn new(img: Vec<i64>) -> SignedPerm {
        let m = img.len();
        let mut seen = vec![false; m];
        for &t in &img {
            let a = t.unsigned_abs() as usize;
            assert!(1 <= a && a <= m && !seen[a - 1], "not a signed permutation");
            seen[a - 1] = true;
        }
        SignedPerm { img }
    }

    pub fn identity(m: usize) -> SignedPerm {
        SignedPerm {
            img: (1..=m as i64).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[i64] {
        &self.img
    }

    /// Image of the basis vector `e_i` (1-based): `(target, sign)`.
    pub fn image_of(&self, i: usize) -> (usize, i64) {
        let t = self.img[i - 1];
        (t.unsigned_abs() as usize, t.signum())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &t)| t == i as i64 + 1)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.rank(), other.rank());
        let img = other
            .img
            .iter()
            .map(|&t| {
                let (a, s) = (t.unsigned_abs() as usize, t.signum());
                s * self.img[a - 1]
            })
            .collect();
        SignedPerm { img }
    }

    pub fn inverse(&self) -> SignedPerm {
        let m = self.rank();
        let mut img = vec![0i64; m];
        for i in 1..=m {
            let (a, s) = self.image_of(i);
            img[a - 1] = s * i as i64;
        }
        SignedPerm { img }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Action on an integer vector.
    pub fn act_i64(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rank());
        let mut out = vec![0i64; v.len()];
        for i in 1..=v.len() {
            let (a, s) = self.image_of(i);
            out[a - 1] = s * v[i - 1];
        }
        out
    }

    pub fn act_root(&self, r: Root) -> Root {
        let v = self.act_i64(&r.to_vec(self.rank()));
        Root::from_vec(&v).expect("Weyl action preserves roots")
    }

    /// Length = number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let m = self.rank();
        positive_roots(m)
            .into_iter()
            .filter(|r| !is_positive_vec(&self.act_i64(&r.to_vec(m))))
            .count()
    }
}

/// Standard W-action on rational vectors in 𝔞_0* ≅ R^m.
pub fn weyl_act(w: &SignedPerm, v: &[Rat]) -> Result<Vec<Rat>> {
    if v.len() != w.rank() {
        return Err(Error::DimensionMismatch {
            expected: w.rank(),
            got: v.len(),
        });
    }
    let mut out = vec![Rat::zero(); v.len()];
    for i in 1..=v.len() {
        let (a, s) = w.image_of(i);
        out[a - 1] = if s > 0 {
            v[i - 1].clone()
        } else {
            -v[i - 1].clone()
        };
    }
    Ok(out)
}

/// The reflection s_β as a signed permutation.
pub fn reflect(beta: Root, m: usize) -> SignedPerm {
    let mut w = SignedPerm::identity(m);
    match beta.kind {
        RootKind::Short { i, j, plus } => {
            if plus {
                // s_{e_i+e_j}: e_i ↦ −e_j, e_j ↦ −e_i
                w.img[i - 1] = -(j as i64);
                w.img[j - 1] = -(i as i64);
            } else {
                // s_{e_i−e_j}: transposition
                w.img[i - 1] = j as i64;
                w.img[j - 1] = i as i64;
            }
        }
        RootKind::Long { i } => {
            w.img[i - 1] = -(i as i64);
        }
    }
    w
}

/// ⟨λ, β∨⟩ with the type-C coroot normalization:
/// ⟨λ, (2e_i)∨⟩ = λ_i and ⟨λ, (e_i ± e_j)∨⟩ = λ_i ± λ_j.
pub fn pairing(lambda: &[Rat], beta: Root) -> Rat {
    match beta.kind {
        RootKind::Short { i, j, plus } => {
            let base = if plus {
                &lambda[i - 1] + &lambda[j - 1]
            } else {
                &lambda[i - 1] - &lambda[j - 1]
            };
            if beta.negative {
                -base
            } else {
                base
            }
        }
        RootKind::Long { i } => {
            if beta.negative {
                -lambda[i - 1].clone()
            } else {
                lambda[i - 1].clone()
            }
        }
    }
}

/// True iff neither β1+β2 nor β1−β2 is a root.
pub fn is_strongly_orthogonal(b1: Root, b2: Root, m: usize) -> bool {
    let v1 = b1.to_vec(m);
    let v2 = b2.to_vec(m);
    let sum: Vec<i64> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
    let diff: Vec<i64> = v1.iter().zip(&v2).map(|(a, b)| a - b).collect();
    Root::from_vec(&sum).is_none() && Root::from_vec(&diff).is_none()
}

/// All 2^m · m! elements of W(C_m). Guarded by [`WEYL_ENUM_LIMIT`].
pub fn enumerate_weyl(m: usize) -> Result<Vec<SignedPerm>> {
    if m > WEYL_ENUM_LIMIT {
        return Err(Error::SizeGuard {
            rank: m,
            limit: WEYL_ENUM_LIMIT,
        });
    }
    let mut perms: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &perms {
            for cand in 1..=m as i64 {
                if !p.contains(&cand) {
                    let mut q = p.clone();
                    q.push(cand);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::with_capacity((1usize << m) * perms.len());
    for p in perms {
        for mask in 0..(1u32 << m) {
            let img = p
                .iter()
                .enumerate()
                .map(|(i, &t)| if mask & (1 << i) != 0 { -t } else { t })
                .collect();
            out.push(SignedPerm { img });
        }
    }
    Ok(out)
}

/// Elements of the Weyl group of the Levi `L` (block symmetric groups on the
/// GL blocks, a full hyperoctahedral group on the Sp tail), as ambient
/// signed permutations.
pub fn weyl_of_levi(l: &LeviDatum) -> Result<Vec<SignedPerm>> {
    let m = l.ambient_rank();
    if m > WEYL_ENUM_LIMIT {
        return Err(Error::SizeGuard {
            rank: m,
            limit: WEYL_ENUM_LIMIT,
        });
    }
    let mut elements = vec![SignedPerm::identity(m)];
    let mut offset = 0usize;
    for &b in l.blocks() {
        let local = enumerate_sym(b);
        elements = cross(elements, &local, offset, false);
        offset += b;
    }
    if l.sp_rank() > 0 {
        let local: Vec<Vec<i64>> = enumerate_weyl(l.sp_rank())?
            .into_iter()
            .map(|w| w.img)
            .collect();
        elements = cross(elements, &local, offset, true);
    }
    Ok(elements)
}

fn enumerate_sym(b: usize) -> Vec<Vec<i64>> {
    let mut perms: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..b {
        let mut next = Vec::new();
        for p in &perms {
            for cand in 1..=b as i64 {
                if !p.contains(&cand) {
                    let mut q = p.clone();
                    q.push(cand);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    perms
}

fn cross(
    base: Vec<SignedPerm>,
    local: &[Vec<i64>],
    offset: usize,
    _signed: bool,
) -> Vec<SignedPerm> {
    let mut out = Vec::with_capacity(base.len() * local.len());
    for w in &base {
        for loc in local {
            let mut img = w.img.clone();
            for (i, &t) in loc.iter().enumerate() {
                let a = t.unsigned_abs() as usize;
                img[offset + i] = t.signum() * (offset + a) as i64;
            }
            out.push(SignedPerm { img });
        }
    }
    out
}

/// w_M^L: the element of maximal length in W(M) ∩ W^L.
///
/// Found by enumerating the Weyl group of `L` and filtering for elements
/// that conjugate `M` to a standard Levi and are minimal in their coset
/// `wW^M`; the maximum length is attained exactly once.
pub fn longest_relative(m_levi: &LeviDatum, l_levi: &LeviDatum) -> Result<SignedPerm> {
    if !m_levi.is_contained_in(l_levi) {
        return Err(Error::NotSubLevi);
    }
    let amb = m_levi.ambient_rank();
    let simple_m: Vec<Root> = m_levi
        .internal_simple_indices()
        .iter()
        .map(|&i| simple_root(amb, i))
        .collect();
    let mut best: Option<(usize, SignedPerm)> = None;
    let mut best_count = 0usize;
    for w in weyl_of_levi(l_levi)? {
        // minimal in wW^M: positive on the simple roots of M
        if !simple_m
            .iter()
            .all(|&r| is_positive_vec(&w.act_i64(&r.to_vec(amb))))
        {
            continue;
        }
        if m_levi.conjugate_by(&w).is_none() {
            continue;
        }
        let len = w.length();
        match &best {
            Some((l, _)) if *l > len => {}
            Some((l, _)) if *l == len => best_count += 1,
            _ => {
                best = Some((len, w));
                best_count = 1;
            }
        }
    }
    let (_, w) = best.expect("W(M) ∩ W^L contains the identity");
    debug_assert_eq!(best_count, 1, "maximal length attained more than once");
    Ok(w)
}
