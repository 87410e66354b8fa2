//! Exact matrix realizations: the symplectic form J_n, the block embedding
//! ι_M, the base point ε, the special matrices d_{2s}, d_{p,q}, x_α, y_β,
//! z_γ, η_r of the orbit-representative constructions, and symplectic
//! involutions attached to a Levi.

use crate::levi::LeviDatum;
use crate::linalg;
use crate::rootsys::SignedPerm;
use crate::{rint, Error, Rat, Result};
use num_traits::{One, Signed, Zero};

/// Dense square matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    a: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> ExactMatrix {
        ExactMatrix {
            n,
            a: vec![Rat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> ExactMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        ExactMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rint(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let l = self.get(i, k);
                if l.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let r = other.get(k, j);
                    if r.is_zero() {
                        continue;
                    }
                    let add = l * r;
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let n = self.n;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == ExactMatrix::identity(self.n)
    }

    /// Exact inverse by Gauss–Jordan elimination, if invertible.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        let n = self.n;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i][n + j].clone());
            }
        }
        Some(out)
    }

    /// Conjugate: `self · x · self^{-1}`.
    pub fn conjugate(&self, x: &ExactMatrix) -> ExactMatrix {
        let inv = self
            .inverse()
            .expect("conjugating matrix must be invertible");
        self.mul(x).mul(&inv)
    }

    /// Place `block` at the diagonal position starting at `(offset, offset)`.
    pub fn insert_block(&mut self, offset: usize, block: &ExactMatrix) {
        for i in 0..block.n {
            for j in 0..block.n {
                self.set(offset + i, offset + j, block.get(i, j).clone());
            }
        }
    }
}

impl std::fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The permutation matrix w_n with ones on the antidiagonal.
pub fn w_matrix(n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n);
    for i in 0..n {
        m.set(i, n - 1 - i, Rat::one());
    }
    m
}

/// The symplectic form J_n = [[0, w_n], [−w_n, 0]] of Sp_n ⊂ GL_{2n}.
pub fn j_form(n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n);
    for i in 0..n {
        m.set(i, 2 * n - 1 - i, Rat::one());
        m.set(n + i, n - 1 - i, -Rat::one());
    }
    m
}

/// Is `g` in Sp_n, i.e. ᵗg J_n g = J_n?
pub fn is_symplectic(g: &ExactMatrix) -> bool {
    if !g.dim().is_multiple_of(2) {
        return false;
    }
    let j = j_form(g.dim() / 2);
    g.transpose().mul(&j).mul(g) == j
}

/// The involution g ↦ g* = w_n ᵗg^{-1} w_n of GL_n.
pub fn gl_star(g: &ExactMatrix) -> Result<ExactMatrix> {
    let w = w_matrix(g.dim());
    let inv = g
        .inverse()
        .ok_or_else(|| Error::BadBlockParams("non-invertible GL part".into()))?;
    Ok(w.mul(&inv.transpose()).mul(&w))
}

/// ι_M(g_1,…,g_k; h) = diag(g_1,…,g_k, h, g_k*,…,g_1*).
pub fn iota(
    levi: &LeviDatum,
    gl_parts: &[ExactMatrix],
    sp_part: &ExactMatrix,
) -> Result<ExactMatrix> {
    if gl_parts.len() != levi.num_blocks() {
        return Err(Error::DimensionMismatch {
            expected: levi.num_blocks(),
            got: gl_parts.len(),
        });
    }
    for (i, g) in gl_parts.iter().enumerate() {
        if g.dim() != levi.blocks()[i] {
            return Err(Error::DimensionMismatch {
                expected: levi.blocks()[i],
                got: g.dim(),
            });
        }
    }
    if sp_part.dim() != 2 * levi.sp_rank() {
        return Err(Error::DimensionMismatch {
            expected: 2 * levi.sp_rank(),
            got: sp_part.dim(),
        });
    }
    let n2 = 2 * levi.ambient_rank();
    let mut out = ExactMatrix::zeros(n2);
    let mut offset = 0usize;
    for g in gl_parts {
        out.insert_block(offset, g);
        offset += g.dim();
    }
    out.insert_block(offset, sp_part);
    offset += sp_part.dim();
    for g in gl_parts.iter().rev() {
        out.insert_block(offset, &gl_star(g)?);
        offset += g.dim();
    }
    debug_assert_eq!(offset, n2);
    Ok(out)
}

/// δ_n = diag(1, −1, 1, …, (−1)^{n−1}).
pub fn delta_matrix(n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, if i % 2 == 0 { Rat::one() } else { -Rat::one() });
    }
    m
}

/// The base involution ε = ε_{2n} = diag(δ_{2n}, δ_{2n}*) ∈ Sp_{2n} ⊂ GL_{4n},
/// attached to the minimal Levi.
pub fn epsilon(n: usize) -> SympInvolution {
    assert!(n >= 1);
    let d = delta_matrix(2 * n);
    let mut mat = ExactMatrix::zeros(4 * n);
    mat.insert_block(0, &d);
    mat.insert_block(2 * n, &gl_star(&d).expect("δ is invertible"));
    SympInvolution::attach(&LeviDatum::torus(2 * n), &mat).expect("ε lies over the torus")
}

/// True iff `x` is a symplectic involution of trace 0 in GL_{4n}
/// (equivalently its ±1-eigenspaces both have dimension 2n).
pub fn in_x(x: &ExactMatrix, n: usize) -> bool {
    x.dim() == 4 * n && x.mul(x).is_identity() && is_symplectic(x) && x.trace().is_zero()
}

/// Special matrices from the orbit-representative constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialBlock {
    /// d_{2s} = diag(I_s, −I_s).
    DEven { s: usize },
    /// d_{p,q} = diag(I_p, −I_{2q}, I_p).
    DPq { p: usize, q: usize },
    /// x_α = diag(antidiag(I_{r_1}), …, antidiag(I_{r_k})).
    XAlpha { rs: Vec<usize> },
    /// y_β = diag(I_{p_1}, −I_{q_1}, …, I_{p_l}, −I_{q_l}).
    YBeta { pqs: Vec<(usize, usize)> },
    /// z_γ for γ = (t_1,…,t_m; p, q): antidiagonal d_{t_i} blocks around a
    /// central d_{p,q}; requires every t_i even.
    ZGamma { ts: Vec<usize>, p: usize, q: usize },
    /// η_r = [[I_r, I_r], [I_r, −I_r]].
    Eta { r: usize },
}

pub fn special_block(kind: &SpecialBlock) -> Result<ExactMatrix> {
    match kind {
        SpecialBlock::DEven { s } => {
            let mut m = ExactMatrix::identity(2 * s);
            for i in *s..2 * s {
                m.set(i, i, -Rat::one());
            }
            Ok(m)
        }
        SpecialBlock::DPq { p, q } => {
            let n = 2 * p + 2 * q;
            let mut m = ExactMatrix::identity(n);
            for i in *p..p + 2 * q {
                m.set(i, i, -Rat::one());
            }
            Ok(m)
        }
        SpecialBlock::XAlpha { rs } => {
            let n: usize = rs.iter().map(|r| 2 * r).sum();
            let mut m = ExactMatrix::zeros(n);
            let mut off = 0;
            for &r in rs {
                for i in 0..r {
                    m.set(off + i, off + r + i, Rat::one());
                    m.set(off + r + i, off + i, Rat::one());
                }
                off += 2 * r;
            }
            Ok(m)
        }
        SpecialBlock::YBeta { pqs } => {
            let n: usize = pqs.iter().map(|(p, q)| p + q).sum();
            let mut m = ExactMatrix::identity(n);
            let mut off = 0;
            for &(p, q) in pqs {
                for i in off + p..off + p + q {
                    m.set(i, i, -Rat::one());
                }
                off += p + q;
            }
            Ok(m)
        }
        SpecialBlock::ZGamma { ts, p, q } => {
            if let Some(&t) = ts.iter().find(|&&t| t % 2 != 0) {
                return Err(Error::BadBlockParams(format!("odd t_i = {t} in z_gamma")));
            }
            let u = p + q;
            let v: usize = ts.iter().sum::<usize>() + u;
            let n = 2 * v;
            // block sizes along the diagonal direction: t_1,…,t_m, 2u, t_m,…,t_1
            let mut sizes: Vec<usize> = ts.clone();
            sizes.push(2 * u);
            sizes.extend(ts.iter().rev());
            let starts: Vec<usize> = sizes
                .iter()
                .scan(0usize, |acc, &s| {
                    let out = *acc;
                    *acc += s;
                    Some(out)
                })
                .collect();
            let nb = sizes.len();
            let mut m = ExactMatrix::zeros(n);
            for bi in 0..nb {
                let bj = nb - 1 - bi;
                let block = if bi == ts.len() {
                    special_block(&SpecialBlock::DPq { p: *p, q: *q })?
                } else {
                    let t = sizes[bi];
                    special_block(&SpecialBlock::DEven { s: t / 2 })?
                };
                for i in 0..block.dim() {
                    for j in 0..block.dim() {
                        m.set(starts[bi] + i, starts[bj] + j, block.get(i, j).clone());
                    }
                }
            }
            Ok(m)
        }
        SpecialBlock::Eta { r } => {
            let mut m = ExactMatrix::zeros(2 * r);
            for i in 0..*r {
                m.set(i, i, Rat::one());
                m.set(i, r + i, Rat::one());
                m.set(r + i, i, Rat::one());
                m.set(r + i, r + i, -Rat::one());
            }
            Ok(m)
        }
    }
}

/// An element of N_G(M) ∩ X: a symplectic involution of trace zero which
/// normalizes the standard Levi M, together with its induced Weyl element
/// and the conjugation invariants of its M-orbit.
#[derive(Debug, Clone)]
pub struct SympInvolution {
    mat: ExactMatrix,
    levi: LeviDatum,
    weyl_image: SignedPerm,
    /// Per GL block: image block and sign.
    block_action: Vec<(usize, i64)>,
    /// Signature p_i of the involution induced on each w-fixed GL block.
    gl_signatures: Vec<Option<usize>>,
    /// Signature p of the involution induced on the Sp tail, if any.
    tail_signature: Option<usize>,
}

/// Conjugation-invariant identity of an M-orbit in N_G(M) ∩ X.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitKey {
    pub levi: LeviDatum,
    pub block_action: Vec<(usize, i64)>,
    pub gl_signatures: Vec<Option<usize>>,
    pub tail_signature: Option<usize>,
}

impl SympInvolution {
    /// Attach `x` to the Levi `levi`, verifying x² = 1, ᵗxJx = J, tr x = 0
    /// and that `x` normalizes the Levi (block-monomial structure).
    pub fn attach(levi: &LeviDatum, x: &ExactMatrix) -> Result<SympInvolution> {
        let m = levi.ambient_rank();
        let nn = 2 * m;
        if x.dim() != nn {
            return Err(Error::DimensionMismatch {
                expected: nn,
                got: x.dim(),
            });
        }
        if !x.mul(x).is_identity() {
            return Err(Error::NotInvolution);
        }
        if !is_symplectic(x) || !x.trace().is_zero() {
            return Err(Error::NotInX);
        }

        let k = levi.num_blocks();
        // slots: 0..k GL blocks, k = tail, k+1..2k+1 mirrors of blocks k-1..0
        let slot_range = |s: usize| -> std::ops::Range<usize> {
            if s < k {
                let r = levi.block_range(s);
                r.start..r.end
            } else if s == k {
                let t = levi.tail_range();
                t.start..t.start + 2 * levi.sp_rank()
            } else {
                let b = 2 * k - s; // mirror of block b
                let r = levi.block_range(b);
                nn - r.end..nn - r.start
            }
        };
        let nslots = 2 * k + 1;
        let mut slot_image = vec![usize::MAX; nslots];
        for s in 0..nslots {
            let cols = slot_range(s);
            if cols.is_empty() {
                slot_image[s] = s;
                continue;
            }
            let mut target = None;
            for t in 0..nslots {
                let rows = slot_range(t);
                let nonzero = rows
                    .clone()
                    .any(|i| cols.clone().any(|j| !x.get(i, j).is_zero()));
                if nonzero {
                    if target.is_some() {
                        return Err(Error::NotNormalizing);
                    }
                    target = Some(t);
                }
            }
            slot_image[s] = target.ok_or(Error::NotNormalizing)?;
        }
        if slot_image[k] != k {
            return Err(Error::NotNormalizing);
        }

        let mut block_action = Vec::with_capacity(k);
        for b in 0..k {
            let t = slot_image[b];
            if t == k {
                return Err(Error::NotNormalizing);
            }
            let (img, sign) = if t < k { (t, 1i64) } else { (2 * k - t, -1i64) };
            if levi.blocks()[img] != levi.blocks()[b] {
                return Err(Error::NotNormalizing);
            }
            block_action.push((img, sign));
        }

        // induced ambient Weyl element: order-preserving on + blocks,
        // order-reversing with a sign on − blocks, identity on the tail
        let mut img = vec![0i64; m];
        for b in 0..k {
            let src = levi.block_range(b);
            let (tb, sign) = block_action[b];
            let dst = levi.block_range(tb);
            for (off, c) in src.enumerate() {
                img[c] = if sign > 0 {
                    (dst.start + off + 1) as i64
                } else {
                    -((dst.end - off) as i64)
                };
            }
        }
        for c in levi.tail_range() {
            img[c] = (c + 1) as i64;
        }
        let weyl_image = SignedPerm::new(img);

        // signatures on fixed blocks
        let mut gl_signatures = vec![None; k];
        for b in 0..k {
            if block_action[b] == (b, 1) {
                let r = levi.block_range(b);
                let tr: Rat = r.clone().map(|i| x.get(i, i).clone()).sum();
                let p = (rint(r.len() as i64) + tr) / rint(2);
                if !p.is_integer() || p.is_negative() {
                    return Err(Error::NotInX);
                }
                gl_signatures[b] = Some(rat_to_usize(&p)?);
            }
        }
        let tail_signature = if levi.sp_rank() > 0 {
            let t = levi.tail_range();
            let tr: Rat = (t.start..t.start + 2 * levi.sp_rank())
                .map(|i| x.get(i, i).clone())
                .sum();
            // +1-eigenspace of an involution in Sp_r has dimension 2p
            let plus_dim = (rint(2 * levi.sp_rank() as i64) + tr) / rint(2);
            let p = plus_dim / rint(2);
            if !p.is_integer() || p.is_negative() {
                return Err(Error::NotInX);
            }
            Some(rat_to_usize(&p)?)
        } else {
            None
        };

        Ok(SympInvolution {
            mat: x.clone(),
            levi: levi.clone(),
            weyl_image,
            block_action,
            gl_signatures,
            tail_signature,
        })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn levi(&self) -> &LeviDatum {
        &self.levi
    }

    /// ı_M(x) ∈ W(M, M) as an ambient signed permutation.
    pub fn weyl_image(&self) -> &SignedPerm {
        &self.weyl_image
    }

    pub fn block_action(&self) -> &[(usize, i64)] {
        &self.block_action
    }

    pub fn gl_signatures(&self) -> &[Option<usize>] {
        &self.gl_signatures
    }

    pub fn tail_signature(&self) -> Option<usize> {
        self.tail_signature
    }

    pub fn orbit_key(&self) -> OrbitKey {
        OrbitKey {
            levi: self.levi.clone(),
            block_action: self.block_action.clone(),
            gl_signatures: self.gl_signatures.clone(),
            tail_signature: self.tail_signature,
        }
    }
}

fn rat_to_usize(r: &Rat) -> Result<usize> {
    use num_traits::ToPrimitive;
    r.to_integer()
        .to_usize()
        .ok_or_else(|| Error::Parse(format!("expected small non-negative integer, got {r}")))
}

/// Basis of the Lie algebra piece {Y ∈ sp_{2m} : Y supported on `region`},
/// where `region` lists the allowed (row, col) entries.
pub(crate) fn sp_lie_basis_on(region: &[(usize, usize)], nn: usize) -> Vec<Vec<Rat>> {
    // Y belongs to sp iff ᵗY J + J Y = 0; entries outside the region vanish.
    // Unknowns: the |region| allowed entries.
    let j = j_form(nn / 2);
    let idx_of: std::collections::HashMap<(usize, usize), usize> = region
        .iter()
        .copied()
        .enumerate()
        .map(|(t, rc)| (rc, t))
        .collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // (ᵗY J + J Y)_{ab} = Σ_c Y_{ca} J_{cb} + J_{ac} Y_{cb}
    for a in 0..nn {
        for b in 0..nn {
            let mut row = vec![Rat::zero(); region.len()];
            let mut nontrivial = false;
            for c in 0..nn {
                if let Some(&t) = idx_of.get(&(c, a)) {
                    if !j.get(c, b).is_zero() {
                        row[t] += j.get(c, b);
                        nontrivial = true;
                    }
                }
                if let Some(&t) = idx_of.get(&(c, b)) {
                    if !j.get(a, c).is_zero() {
                        row[t] += j.get(a, c);
                        nontrivial = true;
                    }
                }
            }
            if nontrivial {
                rows.push(row);
            }
        }
    }
    linalg::nullspace_basis(&rows, region.len())
}

/// Entries strictly above the block diagonal of the parabolic attached to
/// `levi` (the support of Lie U).
pub(crate) fn strict_upper_region(levi: &LeviDatum) -> Vec<(usize, usize)> {
    let m = levi.ambient_rank();
    let nn = 2 * m;
    // diagonal block structure of M inside GL_{2m}
    let mut sizes: Vec<usize> = levi.blocks().to_vec();
    sizes.push(2 * levi.sp_rank());
    sizes.extend(levi.blocks().iter().rev());
    let block_of = {
        let mut v = Vec::with_capacity(nn);
        for (b, &s) in sizes.iter().enumerate() {
            v.extend(std::iter::repeat_n(b, s));
        }
        v
    };
    let mut region = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            if block_of[i] < block_of[j] {
                region.push((i, j));
            }
        }
    }
    region
}

/// Basis of {Y ∈ sp supported on `region` : Ad(x)Y = Y}, as coordinate
/// vectors over `region`.
pub(crate) fn ad_fixed_basis(region: &[(usize, usize)], x: &ExactMatrix) -> Vec<Vec<Rat>> {
    let nn = x.dim();
    let lie = sp_lie_basis_on(region, nn);
    if lie.is_empty() {
        return vec![];
    }
    // expand each basis vector to a full matrix once
    let to_matrix = |coeffs: &[Rat]| -> ExactMatrix {
        let mut m = ExactMatrix::zeros(nn);
        for (t, &(i, j)) in region.iter().enumerate() {
            if !coeffs[t].is_zero() {
                m.set(i, j, coeffs[t].clone());
            }
        }
        m
    };
    let mats: Vec<ExactMatrix> = lie.iter().map(|v| to_matrix(v)).collect();
    // rows of the condition x·Y − Y·x = 0 in the coefficients c_t
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let comms: Vec<ExactMatrix> = mats
        .iter()
        .map(|b| {
            let xb = x.mul(b);
            let bx = b.mul(x);
            let mut d = ExactMatrix::zeros(nn);
            for i in 0..nn {
                for j in 0..nn {
                    d.set(i, j, xb.get(i, j) - bx.get(i, j));
                }
            }
            d
        })
        .collect();
    for i in 0..nn {
        for j in 0..nn {
            let row: Vec<Rat> = comms.iter().map(|c| c.get(i, j).clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let coeff_basis = linalg::nullspace_basis(&rows, mats.len());
    // back to region coordinates
    coeff_basis
        .into_iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); region.len()];
            for (t, &(i, j)) in region.iter().enumerate() {
                let mut acc = Rat::zero();
                for (s, m) in mats.iter().enumerate() {
                    if !c[s].is_zero() {
                        acc += &c[s] * m.get(i, j);
                    }
                }
                v[t] = acc;
            }
            v
        })
        .collect()
}

/// Entries inside the block diagonal of `levi` (the support of Lie M).
pub(crate) fn block_diag_region(levi: &LeviDatum) -> Vec<(usize, usize)> {
    let m = levi.ambient_rank();
    let nn = 2 * m;
    let mut sizes: Vec<usize> = levi.blocks().to_vec();
    sizes.push(2 * levi.sp_rank());
    sizes.extend(levi.blocks().iter().rev());
    let block_of = {
        let mut v = Vec::with_capacity(nn);
        for (b, &s) in sizes.iter().enumerate() {
            v.extend(std::iter::repeat_n(b, s));
        }
        v
    };
    let mut region = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            if block_of[i] == block_of[j] {
                region.push((i, j));
            }
        }
    }
    region
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn iota_examples() {
        // γ = (1;0) in Sp_1: g = (2) → diag(2, 1/2)
        let levi = LeviDatum::new(vec![1], 0);
        let g = ExactMatrix::from_rows(vec![vec![rint(2)]]);
        let m = iota(&levi, &[g], &ExactMatrix::zeros(0)).unwrap();
        assert_eq!(m.get(0, 0), &rint(2));
        assert_eq!(m.get(1, 1), &rat(1, 2));

        // γ = (2;0): identity maps to identity
        let levi2 = LeviDatum::new(vec![2], 0);
        let m2 = iota(&levi2, &[ExactMatrix::identity(2)], &ExactMatrix::zeros(0)).unwrap();
        assert!(m2.is_identity());

        // γ = (1,1;0), (1, −1) → diag(1, −1, −1, 1)
        let levi3 = LeviDatum::new(vec![1, 1], 0);
        let one = ExactMatrix::identity(1);
        let neg = ExactMatrix::from_rows(vec![vec![rint(-1)]]);
        let m3 = iota(&levi3, &[one, neg], &ExactMatrix::zeros(0)).unwrap();
        assert_eq!(
            m3,
            ExactMatrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1],])
        );
    }

    /// ι is a homomorphism on each factor.
    #[test]
    fn iota_is_homomorphism() {
        let levi = LeviDatum::new(vec![2], 1);
        let a = ExactMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let b = ExactMatrix::from_i64(&[&[3, 0], &[1, 1]]);
        // a symplectic element of Sp_1
        let h1 = ExactMatrix::from_i64(&[&[1, 5], &[0, 1]]);
        let h2 = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(is_symplectic(&h1) && is_symplectic(&h2));
        let lhs = iota(&levi, &[a.mul(&b)], &h1.mul(&h2)).unwrap();
        let rhs = iota(&levi, &[a.clone()], &h1)
            .unwrap()
            .mul(&iota(&levi, &[b.clone()], &h2).unwrap());
        assert_eq!(lhs, rhs);
        // and lands in Sp
        assert!(is_symplectic(&lhs));
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon(1);
        assert_eq!(
            e.matrix(),
            &ExactMatrix::from_i64(
                &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1],]
            )
        );
        for n in 1..=3 {
            let e = epsilon(n);
            assert!(e.matrix().trace().is_zero());
            assert!(e.matrix().mul(e.matrix()).is_identity());
            assert!(in_x(e.matrix(), n));
        }
    }

    #[test]
    fn in_x_examples() {
        assert!(in_x(epsilon(2).matrix(), 2));
        assert!(!in_x(&ExactMatrix::identity(4), 1));
        // n = 2 diagonal sign pattern of trace 0 built over the torus
        let levi = LeviDatum::torus(4);
        let signs = [1i64, -1, 1, -1];
        let parts: Vec<ExactMatrix> = signs
            .iter()
            .map(|&s| ExactMatrix::from_rows(vec![vec![rint(s)]]))
            .collect();
        let x = iota(&levi, &parts, &ExactMatrix::zeros(0)).unwrap();
        assert!(in_x(&x, 2));
    }

    #[test]
    fn special_blocks_examples() {
        let d = special_block(&SpecialBlock::DPq { p: 1, q: 1 }).unwrap();
        assert_eq!(
            d,
            ExactMatrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1],])
        );

        let eta = special_block(&SpecialBlock::Eta { r: 1 }).unwrap();
        assert_eq!(eta, ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]));

        // z_γ at γ = (;1,1): the central d_{1,1} only
        let z = special_block(&SpecialBlock::ZGamma {
            ts: vec![],
            p: 1,
            q: 1,
        })
        .unwrap();
        assert_eq!(z, d);

        // odd t rejected
        assert!(special_block(&SpecialBlock::ZGamma {
            ts: vec![3],
            p: 0,
            q: 0
        })
        .is_err());

        // z_γ with a t-block and balanced (p, q) is a symplectic involution
        // of trace 0
        let z2 = special_block(&SpecialBlock::ZGamma {
            ts: vec![2],
            p: 1,
            q: 1,
        })
        .unwrap();
        assert!(z2.mul(&z2).is_identity());
        assert!(is_symplectic(&z2));
        assert!(z2.trace().is_zero());
    }

    /// η_r^{-1} C_r η_r is block diagonal, on a sample of C_r elements.
    #[test]
    fn eta_diagonalizes_c_r() {
        for r in 1..=3 {
            let eta = special_block(&SpecialBlock::Eta { r }).unwrap();
            let eta_inv = eta.inverse().unwrap();
            // a few elements of C_r = {[[a, b], [b, a]]}
            let samples: Vec<(i64, i64)> = vec![(1, 0), (2, 1), (3, -2), (0, 1)];
            for (s, t) in samples {
                let mut c = ExactMatrix::zeros(2 * r);
                for i in 0..r {
                    c.set(i, i, rint(s));
                    c.set(i, r + i, rint(t));
                    c.set(r + i, i, rint(t));
                    c.set(r + i, r + i, rint(s));
                }
                let d = eta_inv.mul(&c).mul(&eta);
                for i in 0..2 * r {
                    for j in 0..2 * r {
                        let same_half = (i < r) == (j < r);
                        if !same_half {
                            assert!(d.get(i, j).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn attach_extracts_weyl_image() {
        // pair representative over M = (1,1;0) in C_2
        let levi = LeviDatum::new(vec![1, 1], 0);
        let swap = special_block(&SpecialBlock::XAlpha { rs: vec![1] }).unwrap();
        let full = iota(&LeviDatum::new(vec![2], 0), &[swap], &ExactMatrix::zeros(0)).unwrap();
        let inv = SympInvolution::attach(&levi, &full).unwrap();
        assert_eq!(inv.weyl_image().images(), &[2, 1]);
        assert_eq!(inv.block_action(), &[(1, 1), (0, 1)]);
        assert_eq!(inv.gl_signatures(), &[None, None]);

        // diagonal sign representative
        let signs = iota(
            &levi,
            &[ExactMatrix::identity(1), {
                let mut m = ExactMatrix::zeros(1);
                m.set(0, 0, rint(-1));
                m
            }],
            &ExactMatrix::zeros(0),
        )
        .unwrap();
        let inv2 = SympInvolution::attach(&levi, &signs).unwrap();
        assert!(inv2.weyl_image().is_identity());
        assert_eq!(inv2.gl_signatures(), &[Some(1), Some(0)]);
    }

    #[test]
    fn attach_rejects_bad_inputs() {
        let levi = LeviDatum::new(vec![1, 1], 0);
        assert_eq!(
            SympInvolution::attach(&levi, &ExactMatrix::identity(4)).unwrap_err(),
            Error::NotInX
        );
        let mut not_inv = ExactMatrix::identity(4);
        not_inv.set(0, 1, rint(1));
        assert_eq!(
            SympInvolution::attach(&levi, &not_inv).unwrap_err(),
            Error::NotInvolution
        );
    }
}
