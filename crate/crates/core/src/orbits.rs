//! Orbit classification machinery: Borel-orbit counting, admissibility and
//! minimality of involutions, standard relevant pairs, and the enumeration
//! of standard cuspidal orbits with exact matrix representatives.

use crate::levi::LeviDatum;
use crate::rootsys::{longest_relative, SignedPerm};
use crate::sympmat::{
    ad_fixed_basis, block_diag_region, iota, special_block, ExactMatrix, SpecialBlock,
    SympInvolution,
};
use crate::{rint, Error, Rat, Result};
use num_traits::Zero;

/// Exhaustive enumerations stop at ambient rank 2n = 6.
pub const MAX_ENUM_RANK: usize = 6;

/// If `w` is a product of k reflections in pairwise strongly orthogonal
/// short roots, return k; otherwise (a long reflection occurs in the
/// decomposition) return `None`. Errors when `w` is not an involution.
///
/// An involution in W(C_m) factors uniquely into disjoint 1- and 2-cycles:
/// a negated fixed point is a long reflection, a 2-cycle is a short one.
pub fn classify_involution(w: &SignedPerm) -> Result<Option<usize>> {
    if !w.is_involution() {
        return Err(Error::NotInvolution);
    }
    let mut k = 0usize;
    for i in 1..=w.rank() {
        let (a, s) = w.image_of(i);
        if a == i && s < 0 {
            return Ok(None);
        }
        if a > i {
            k += 1;
        }
    }
    Ok(Some(k))
}

/// Number of T-orbits in w ∩ X for w in the class 𝒲_k: C(2(n−k), n−k).
pub fn t_orbit_count(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Err(Error::Parse(format!("k = {k} out of range 0..={n}")));
    }
    Ok(binomial(2 * (n - k), n - k))
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// True iff wMw⁻¹ = M under the signed-permutation action on blocks.
pub fn is_m_admissible(w: &SignedPerm, m: &LeviDatum) -> bool {
    m.conjugate_by(w) == Some(m.clone())
}

/// If the involution `w ∈ W(M,M)` equals w_M^L for a Levi L ⊇ M and acts
/// as −1 on 𝔞_M^L, return that L.
pub fn is_m_minimal(w: &SignedPerm, m: &LeviDatum) -> Result<Option<LeviDatum>> {
    if !w.is_involution() || !is_m_admissible(w, m) {
        return Err(Error::NotInvolution);
    }
    let action = m.block_action(w).expect("admissible");
    for l in m.coarsenings() {
        if !acts_minus_one_on_relative(&action, m, &l) {
            continue;
        }
        if longest_relative(m, &l)? == *w {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Does the block action negate 𝔞_M^L pointwise?
fn acts_minus_one_on_relative(action: &[(usize, i64)], m: &LeviDatum, l: &LeviDatum) -> bool {
    for v in relative_space_basis(m, l) {
        let mut image = vec![Rat::zero(); v.len()];
        for (b, val) in v.iter().enumerate() {
            let (t, s) = action[b];
            image[t] = if s > 0 { val.clone() } else { -val };
        }
        let neg: Vec<Rat> = v.iter().map(|c| -c).collect();
        if image != neg {
            return false;
        }
    }
    true
}

/// Basis of 𝔞_M^L inside 𝔞_M ≅ R^k (orthogonal complement of 𝔞_L with
/// respect to the block-weighted inner product).
pub(crate) fn relative_space_basis(m: &LeviDatum, l: &LeviDatum) -> Vec<Vec<Rat>> {
    let (groups, tail) = m.grouping_under(l).expect("M ⊆ L");
    let k = m.num_blocks();
    let mut basis = Vec::new();
    for g in &groups {
        for pair in g.windows(2) {
            let (b1, b2) = (pair[0], pair[1]);
            let mut v = vec![Rat::zero(); k];
            v[b1] = rint(m.blocks()[b2] as i64);
            v[b2] = -rint(m.blocks()[b1] as i64);
            basis.push(v);
        }
    }
    for &b in &tail {
        let mut v = vec![Rat::zero(); k];
        v[b] = rint(1);
        basis.push(v);
    }
    basis
}

/// True iff (M, L) is a standard relevant pair: M = (r_1,r_1,…,r_k,r_k,
/// s_1,…,s_l, t_1,…,t_m; u), L = (2r_1,…,2r_k, s_1,…,s_l; v) with every
/// t_i even and v = u + Σt_i.
pub fn is_standard_relevant(m: &LeviDatum, l: &LeviDatum) -> Result<bool> {
    let (groups, tail) = m.grouping_under(l)?;
    let mut pairs_done = false;
    for g in &groups {
        match g.as_slice() {
            [a, b] if m.blocks()[*a] == m.blocks()[*b] && !pairs_done => {}
            [_] => pairs_done = true,
            _ => return Ok(false),
        }
    }
    Ok(tail.iter().all(|&b| m.blocks()[b].is_multiple_of(2)))
}

/// The datum 𝔭 = (p_1, q_1, …, p_l, q_l; p, q) of an orbit over a
/// standard relevant pair, together with the block lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub r_list: Vec<usize>,
    pub s_list: Vec<usize>,
    pub t_list: Vec<usize>,
    pub u: usize,
    pub pq_list: Vec<(usize, usize)>,
    pub p: usize,
    pub q: usize,
}

impl OrbitData {
    /// Signature balance p + Σp_i = q + Σq_i.
    pub fn is_balanced(&self) -> bool {
        let lp: usize = self.p + self.pq_list.iter().map(|&(p, _)| p).sum::<usize>();
        let rq: usize = self.q + self.pq_list.iter().map(|&(_, q)| q).sum::<usize>();
        lp == rq
    }
}

/// Extract the orbit datum of `x` relative to the standard relevant pair
/// (M, L), M = x.levi().
pub fn orbit_data(x: &SympInvolution, l: &LeviDatum) -> Result<OrbitData> {
    let m = x.levi();
    if !is_standard_relevant(m, l)? {
        return Err(Error::NotSubLevi);
    }
    let (groups, tail) = m.grouping_under(l)?;
    let mut r_list = Vec::new();
    let mut s_list = Vec::new();
    let mut pq_list = Vec::new();
    for g in &groups {
        match g.as_slice() {
            [a, _] => r_list.push(m.blocks()[*a]),
            [a] => {
                let size = m.blocks()[*a];
                s_list.push(size);
                let p = x.gl_signatures()[*a].ok_or(Error::NotNormalizing)?;
                pq_list.push((p, size - p));
            }
            _ => unreachable!(),
        }
    }
    let t_list: Vec<usize> = tail.iter().map(|&b| m.blocks()[b]).collect();
    let u = m.sp_rank();
    let p = x.tail_signature().unwrap_or(0);
    let q = u - p;
    Ok(OrbitData {
        r_list,
        s_list,
        t_list,
        u,
        pq_list,
        p,
        q,
    })
}

/// An M-standard-cuspidal orbit: leading (r, r) pairs, then even s-blocks
/// with balanced signature, then GL_1 blocks carrying signs h with
/// #{h = +1} = #{h = −1}.
#[derive(Debug, Clone)]
pub struct CuspidalOrbit {
    pub levi: LeviDatum,
    /// L(x): the Levi of the standard relevant pair (M, L).
    pub pair_levi: LeviDatum,
    pub data: OrbitData,
    pub rep: SympInvolution,
    /// Signs attached to the s_j = 1 blocks, in block order.
    pub h: Vec<i8>,
    /// Number of leading (r, r) pairs.
    pub k: usize,
    /// Number of even s-blocks.
    pub l1: usize,
}

impl CuspidalOrbit {
    pub fn l2(&self) -> usize {
        self.h.len()
    }
}

/// All M-standard-cuspidal orbits. Empty when M has an Sp tail or its block
/// pattern admits no pairing/even/sign split. Guarded at ambient rank 6.
pub fn enumerate_cuspidal_orbits(m: &LeviDatum) -> Result<Vec<CuspidalOrbit>> {
    enumerate_cuspidal_orbits_with_limit(m, MAX_ENUM_RANK)
}

/// Same as [`enumerate_cuspidal_orbits`] with an explicit rank cap.
pub fn enumerate_cuspidal_orbits_with_limit(
    m: &LeviDatum,
    limit: usize,
) -> Result<Vec<CuspidalOrbit>> {
    if m.ambient_rank() > limit {
        return Err(Error::SizeGuard {
            rank: m.ambient_rank(),
            limit,
        });
    }
    let mut out = Vec::new();
    if m.sp_rank() > 0 {
        return Ok(out);
    }
    let blocks = m.blocks();
    let nb = blocks.len();
    for k in 0..=nb / 2 {
        // leading pairs (r_i, r_i)
        if (0..k).any(|i| blocks[2 * i] != blocks[2 * i + 1]) {
            continue;
        }
        let rest = &blocks[2 * k..];
        let l1 = rest.iter().take_while(|&&s| s % 2 == 0).count();
        let l2 = rest.len() - l1;
        if rest[l1..].iter().any(|&s| s != 1) {
            continue;
        }
        if !l2.is_multiple_of(2) {
            continue;
        }
        for h in balanced_signs(l2) {
            out.push(build_cuspidal_orbit(m, k, l1, &h)?);
        }
    }
    Ok(out)
}

/// All sign vectors of length l2 with equally many +1 and −1.
pub(crate) fn balanced_signs(l2: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    if !l2.is_multiple_of(2) {
        return out;
    }
    for mask in 0..(1u32 << l2) {
        if mask.count_ones() as usize == l2 / 2 {
            out.push(
                (0..l2)
                    .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
                    .collect(),
            );
        }
    }
    out.sort();
    out.reverse(); // (+,−,…) before (−,+,…)
    out
}

fn build_cuspidal_orbit(m: &LeviDatum, k: usize, l1: usize, h: &[i8]) -> Result<CuspidalOrbit> {
    let blocks = m.blocks();
    let r_list: Vec<usize> = (0..k).map(|i| blocks[2 * i]).collect();
    let s_list: Vec<usize> = blocks[2 * k..].to_vec();
    let mut pair_blocks: Vec<usize> = r_list.iter().map(|&r| 2 * r).collect();
    pair_blocks.extend(&s_list);
    let pair_levi = LeviDatum::new(pair_blocks, 0);

    // representative: ι_L of antidiagonal pair blocks, antidiagonal even
    // s-blocks, and ±1 scalars on the GL_1 blocks
    let mut parts: Vec<ExactMatrix> = Vec::new();
    for &r in &r_list {
        parts.push(special_block(&SpecialBlock::XAlpha { rs: vec![r] })?);
    }
    for (j, &s) in s_list.iter().enumerate() {
        if j < l1 {
            parts.push(special_block(&SpecialBlock::XAlpha { rs: vec![s / 2] })?);
        } else {
            let sign = h[j - l1] as i64;
            let mut one = ExactMatrix::zeros(1);
            one.set(0, 0, rint(sign));
            parts.push(one);
        }
    }
    let mat = iota(&pair_levi, &parts, &ExactMatrix::zeros(0))?;
    let rep = SympInvolution::attach(m, &mat)?;

    let mut pq_list: Vec<(usize, usize)> = Vec::new();
    for (j, &s) in s_list.iter().enumerate() {
        if j < l1 {
            pq_list.push((s / 2, s / 2));
        } else if h[j - l1] > 0 {
            pq_list.push((1, 0));
        } else {
            pq_list.push((0, 1));
        }
    }
    let data = OrbitData {
        r_list,
        s_list,
        t_list: vec![],
        u: 0,
        pq_list,
        p: 0,
        q: 0,
    };
    debug_assert!(data.is_balanced());
    Ok(CuspidalOrbit {
        levi: m.clone(),
        pair_levi,
        data,
        rep,
        h: h.to_vec(),
        k,
        l1,
    })
}

/// Dimension over Q of {Y ∈ Lie M : Ad(x)Y = Y}.
pub fn centralizer_dim(x: &SympInvolution) -> usize {
    let region = block_diag_region(x.levi());
    ad_fixed_basis(&region, x.matrix()).len()
}

/// Is x M-cuspidal, decided on the conjugation invariants of its orbit:
/// no Sp tail, no block negated in place, and every fixed block either of
/// even size with split signature or of size 1.
pub fn is_cuspidal(x: &SympInvolution) -> bool {
    let m = x.levi();
    if m.sp_rank() > 0 {
        return false;
    }
    for (b, &(t, s)) in x.block_action().iter().enumerate() {
        if t == b && s < 0 {
            return false;
        }
        if t == b && s > 0 {
            let size = m.blocks()[b];
            let p = x.gl_signatures()[b].expect("fixed block has a signature");
            let even_split = size.is_multiple_of(2) && 2 * p == size;
            if !(even_split || size == 1) {
                return false;
            }
        }
    }
    true
}

/// (M, M_x) is a vanishing pair exactly when x is not M-cuspidal.
pub fn is_vanishing_centralizer(x: &SympInvolution) -> bool {
    !is_cuspidal(x)
}
