//! Compositions γ = (n_1,…,n_k; r) parameterizing the standard parabolic and
//! Levi subgroups of Sp, together with the character-space bookkeeping:
//! ρ_0, ρ_P, block projections and simple-root coordinate solvers.

use crate::rootsys::{simple_root, SignedPerm};
use crate::{rint, Error, Rat, Result};
use num_traits::Zero;

/// A standard Levi datum: GL blocks (n_1,…,n_k) followed by an Sp tail of
/// rank r, inside the ambient group of rank m = Σn_i + r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeviDatum {
    blocks: Vec<usize>,
    sp_rank: usize,
}

impl LeviDatum {
    pub fn new(blocks: Vec<usize>, sp_rank: usize) -> LeviDatum {
        assert!(blocks.iter().all(|&b| b > 0), "blocks must be positive");
        LeviDatum { blocks, sp_rank }
    }

    /// The minimal Levi (the torus) of C_m.
    pub fn torus(m: usize) -> LeviDatum {
        LeviDatum::new(vec![1; m], 0)
    }

    /// The full group as a Levi: γ = (;m).
    pub fn full(m: usize) -> LeviDatum {
        LeviDatum::new(vec![], m)
    }

    /// Parse `"n1,n2,...;r"`; a missing `;r` suffix means r = 0.
    pub fn parse(s: &str) -> Result<LeviDatum> {
        let s = s.trim();
        let (blocks_part, tail_part) = match s.split_once(';') {
            Some((b, t)) => (b.trim(), t.trim()),
            None => (s, "0"),
        };
        let sp_rank: usize = tail_part
            .parse()
            .map_err(|_| Error::Parse(format!("invalid sp rank `{tail_part}`")))?;
        let mut blocks = Vec::new();
        if !blocks_part.is_empty() {
            for piece in blocks_part.split(',') {
                let b: usize = piece
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid block `{piece}`")))?;
                if b == 0 {
                    return Err(Error::Parse("zero block size".into()));
                }
                blocks.push(b);
            }
        }
        Ok(LeviDatum::new(blocks, sp_rank))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn sp_rank(&self) -> usize {
        self.sp_rank
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.blocks.iter().sum::<usize>() + self.sp_rank
    }

    /// 0-based coordinate range of block `i`.
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.blocks[..i].iter().sum();
        start..start + self.blocks[i]
    }

    /// 0-based coordinate range of the Sp tail.
    pub fn tail_range(&self) -> std::ops::Range<usize> {
        let start: usize = self.blocks.iter().sum();
        start..start + self.sp_rank
    }

    /// Block index of a 0-based ambient coordinate; `None` for the tail.
    pub fn block_of(&self, coord: usize) -> Option<usize> {
        let mut acc = 0;
        for (i, &b) in self.blocks.iter().enumerate() {
            acc += b;
            if coord < acc {
                return Some(i);
            }
        }
        None
    }

    /// 1-based indices i of the simple roots α_i lying inside M
    /// (internal to a GL block or to the Sp tail).
    pub fn internal_simple_indices(&self) -> Vec<usize> {
        let m = self.ambient_rank();
        let mut out = Vec::new();
        for i in 0..self.num_blocks() {
            let r = self.block_range(i);
            for c in r.start + 1..r.end {
                out.push(c); // α_c = e_c − e_{c+1}, 1-based index c
            }
        }
        if self.sp_rank > 0 {
            let t = self.tail_range();
            for c in t.start + 1..t.end {
                out.push(c);
            }
            out.push(m); // the long simple root lies in the tail
        }
        out.sort_unstable();
        out
    }

    /// True iff every block of `self` refines the blocks of `l` consecutively
    /// and the trailing blocks of `self` are absorbed by the tail of `l`.
    pub fn is_contained_in(&self, l: &LeviDatum) -> bool {
        if self.ambient_rank() != l.ambient_rank() || self.sp_rank > l.sp_rank {
            return false;
        }
        let mut idx = 0usize;
        for &lb in &l.blocks {
            let mut acc = 0usize;
            while acc < lb {
                if idx >= self.blocks.len() {
                    return false;
                }
                acc += self.blocks[idx];
                idx += 1;
            }
            if acc != lb {
                return false;
            }
        }
        // remaining blocks + own tail must exactly fill l's tail
        let rest: usize = self.blocks[idx..].iter().sum::<usize>() + self.sp_rank;
        rest == l.sp_rank
    }

    /// For `self ⊆ l`: the list of consecutive `self`-block groups forming
    /// each GL block of `l`, plus the indices absorbed into the tail.
    pub fn grouping_under(&self, l: &LeviDatum) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
        if !self.is_contained_in(l) {
            return Err(Error::NotSubLevi);
        }
        let mut groups = Vec::new();
        let mut idx = 0usize;
        for &lb in &l.blocks {
            let mut acc = 0usize;
            let mut g = Vec::new();
            while acc < lb {
                acc += self.blocks[idx];
                g.push(idx);
                idx += 1;
            }
            groups.push(g);
        }
        let tail: Vec<usize> = (idx..self.blocks.len()).collect();
        Ok((groups, tail))
    }

    /// All standard Levi subgroups containing `self`.
    pub fn coarsenings(&self) -> Vec<LeviDatum> {
        let k = self.num_blocks();
        let mut out = Vec::new();
        for cut in (0..=k).rev() {
            // blocks[cut..] merge into the tail
            let tail: usize = self.blocks[cut..].iter().sum::<usize>() + self.sp_rank;
            let head = &self.blocks[..cut];
            // ordered partitions of head into consecutive groups
            let splits = 1usize << cut.saturating_sub(1);
            for mask in 0..splits {
                let mut merged = Vec::new();
                let mut acc = 0usize;
                for (i, &b) in head.iter().enumerate() {
                    acc += b;
                    let boundary = i + 1 == cut || mask & (1 << i) != 0;
                    if boundary {
                        merged.push(acc);
                        acc = 0;
                    }
                }
                out.push(LeviDatum::new(merged, tail));
            }
        }
        out
    }

    /// The standard Levi wMw⁻¹ if `w` conjugates `self` to a standard Levi.
    ///
    /// Each GL block must map to a contiguous coordinate range with a uniform
    /// sign, and the tail coordinate set must be preserved.
    pub fn conjugate_by(&self, w: &SignedPerm) -> Option<LeviDatum> {
        let m = self.ambient_rank();
        assert_eq!(w.rank(), m);
        let tail = self.tail_range();
        // tail coordinates must map among themselves
        for c in tail.clone() {
            let (a, _) = w.image_of(c + 1);
            if !tail.contains(&(a - 1)) {
                return None;
            }
        }
        let mut runs: Vec<(usize, usize)> = Vec::new(); // (start coordinate, block size)
        for i in 0..self.num_blocks() {
            let r = self.block_range(i);
            let mut targets: Vec<usize> = Vec::with_capacity(r.len());
            let mut sign = 0i64;
            for c in r.clone() {
                let (a, s) = w.image_of(c + 1);
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    return None;
                }
                targets.push(a - 1);
            }
            targets.sort_unstable();
            if targets.windows(2).any(|p| p[1] != p[0] + 1) {
                return None;
            }
            if targets[0] >= tail.start {
                return None;
            }
            runs.push((targets[0], r.len()));
        }
        runs.sort_unstable();
        Some(LeviDatum::new(
            runs.into_iter().map(|(_, b)| b).collect(),
            self.sp_rank,
        ))
    }

    /// Block-level action of an ambient Weyl element normalizing `self`:
    /// block i ↦ (block j, sign). Requires `conjugate_by(w) == Some(self)`.
    pub fn block_action(&self, w: &SignedPerm) -> Option<Vec<(usize, i64)>> {
        if self.conjugate_by(w)? != *self {
            return None;
        }
        let mut out = Vec::with_capacity(self.num_blocks());
        for i in 0..self.num_blocks() {
            let c = self.block_range(i).start;
            let (a, s) = w.image_of(c + 1);
            let j = self.block_of(a - 1).expect("image block exists");
            out.push((j, s));
        }
        Some(out)
    }

    /// Embed a vector of 𝔞_M* ≅ R^k into 𝔞_0* ≅ R^m by block-constant
    /// extension with a zero tail.
    pub fn embed(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.num_blocks() {
            return Err(Error::DimensionMismatch {
                expected: self.num_blocks(),
                got: v.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.ambient_rank()];
        for (i, val) in v.iter().enumerate() {
            for c in self.block_range(i) {
                out[c] = val.clone();
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for LeviDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({};{})", blocks.join(","), self.sp_rank)
    }
}

/// Which character space a vector lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    /// 𝔞_0* ≅ R^m.
    Ambient(usize),
    /// 𝔞_M* ≅ R^k for a Levi datum M.
    Levi(LeviDatum),
}

/// An exact rational vector tagged with the space it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpVector {
    pub coords: Vec<Rat>,
    pub space: Space,
}

impl ExpVector {
    pub fn ambient(coords: Vec<Rat>) -> ExpVector {
        let m = coords.len();
        ExpVector {
            coords,
            space: Space::Ambient(m),
        }
    }

    pub fn in_levi(coords: Vec<Rat>, levi: LeviDatum) -> ExpVector {
        assert_eq!(coords.len(), levi.num_blocks());
        ExpVector {
            coords,
            space: Space::Levi(levi),
        }
    }

    /// Block-constant ambient extension (identity on ambient vectors).
    pub fn embedded(&self) -> Result<Vec<Rat>> {
        match &self.space {
            Space::Ambient(_) => Ok(self.coords.clone()),
            Space::Levi(levi) => levi.embed(&self.coords),
        }
    }
}

/// ρ_0 for C_m: half-sum of positive roots, equal to (m, m−1, …, 1).
pub fn rho_zero(m: usize) -> ExpVector {
    assert!(m >= 1);
    ExpVector::ambient((0..m).map(|i| rint((m - i) as i64)).collect())
}

/// ρ_P as the orthogonal projection of ρ_0 onto the embedded 𝔞_M*,
/// returned as the block-constant ambient vector.
pub fn rho_p(levi: &LeviDatum) -> ExpVector {
    let m = levi.ambient_rank();
    let rho = rho_zero(m);
    let mut out = vec![Rat::zero(); m];
    for i in 0..levi.num_blocks() {
        let r = levi.block_range(i);
        let avg: Rat = r.clone().map(|c| rho.coords[c].clone()).sum::<Rat>() / rint(r.len() as i64);
        for c in r {
            out[c] = avg.clone();
        }
    }
    ExpVector::ambient(out)
}

/// Coordinates of `v` in the simple-root basis {e_i − e_{i+1}, 2e_m}:
/// c_i = v_1 + … + v_i for i < m and c_m = (v_1 + … + v_m)/2.
pub fn simple_root_coords(v: &[Rat], m: usize) -> Result<Vec<Rat>> {
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: v.len(),
        });
    }
    let mut out = Vec::with_capacity(m);
    let mut acc = Rat::zero();
    for (i, x) in v.iter().enumerate() {
        acc += x;
        if i + 1 < m {
            out.push(acc.clone());
        } else {
            out.push(acc.clone() / rint(2));
        }
    }
    Ok(out)
}

/// Orthogonal projection 𝔞_0* → 𝔞_M*: block averages, tail dropped.
pub fn project_am(v: &ExpVector, levi: &LeviDatum) -> Result<ExpVector> {
    let amb = v.embedded()?;
    if amb.len() != levi.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: levi.ambient_rank(),
            got: amb.len(),
        });
    }
    let coords = (0..levi.num_blocks())
        .map(|i| {
            let r = levi.block_range(i);
            r.clone().map(|c| amb[c].clone()).sum::<Rat>() / rint(r.len() as i64)
        })
        .collect();
    Ok(ExpVector::in_levi(coords, levi.clone()))
}

/// Δ_P: the deduplicated nonzero restrictions of the simple roots to 𝔞_M,
/// written in 𝔞_M* ≅ R^k coordinates (block sums).
pub fn delta_p_elements(levi: &LeviDatum) -> Vec<ExpVector> {
    let m = levi.ambient_rank();
    let k = levi.num_blocks();
    let mut out: Vec<ExpVector> = Vec::new();
    for idx in 1..=m {
        let root = simple_root(m, idx).to_vec(m);
        let mut proj = vec![Rat::zero(); k];
        for (c, &val) in root.iter().enumerate() {
            if let Some(b) = levi.block_of(c) {
                proj[b] += rint(val);
            }
        }
        if proj.iter().all(|c| c.is_zero()) {
            continue;
        }
        let v = ExpVector::in_levi(proj, levi.clone());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::rootsys::{pairing, simple_root};

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rint(x)).collect()
    }

    #[test]
    fn rho_zero_examples() {
        assert_eq!(rho_zero(1).coords, rv(&[1]));
        assert_eq!(rho_zero(2).coords, rv(&[2, 1]));
        assert_eq!(rho_zero(4).coords, rv(&[4, 3, 2, 1]));
        // direct half-sum oracle
        for m in 1..=5 {
            let mut sum = vec![Rat::zero(); m];
            for r in crate::rootsys::positive_roots(m) {
                for (i, c) in r.to_vec(m).iter().enumerate() {
                    sum[i] += rint(*c);
                }
            }
            let half: Vec<Rat> = sum.into_iter().map(|c| c / rint(2)).collect();
            assert_eq!(rho_zero(m).coords, half);
        }
    }

    #[test]
    fn rho_p_examples() {
        let m = LeviDatum::parse("2;2").unwrap();
        assert_eq!(
            rho_p(&m).coords,
            vec![rat(7, 2), rat(7, 2), rint(0), rint(0)]
        );
        let g = LeviDatum::full(3);
        assert_eq!(rho_p(&g).coords, rv(&[0, 0, 0]));
        let t = LeviDatum::parse("1,1;0").unwrap();
        assert_eq!(rho_p(&t).coords, rv(&[2, 1]));
    }

    #[test]
    fn simple_root_coords_examples() {
        assert_eq!(
            simple_root_coords(&rv(&[1, 0, 0, 0]), 4).unwrap(),
            vec![rint(1), rint(1), rint(1), rat(1, 2)]
        );
        assert_eq!(simple_root_coords(&rv(&[0, 0]), 2).unwrap(), rv(&[0, 0]));
        let v = vec![rat(-1, 2), rat(1, 2), rat(-5, 2), rat(-3, 2)];
        assert_eq!(
            simple_root_coords(&v, 4).unwrap(),
            vec![rat(-1, 2), rint(0), rat(-5, 2), rint(-2)]
        );
    }

    /// Round trip: v = Σ c_i α_i exactly.
    #[test]
    fn simple_root_coords_round_trip() {
        let m = 5;
        let v = vec![rat(3, 7), rint(-2), rat(1, 2), rint(0), rat(9, 4)];
        let c = simple_root_coords(&v, m).unwrap();
        let mut back = vec![Rat::zero(); m];
        for i in 1..=m {
            for (pos, coef) in simple_root(m, i).to_vec(m).iter().enumerate() {
                back[pos] += &c[i - 1] * rint(*coef);
            }
        }
        assert_eq!(back, v);
    }

    #[test]
    fn project_am_examples() {
        let m22 = LeviDatum::parse("2,2;0").unwrap();
        let v = ExpVector::ambient(vec![rat(-1, 2), rat(1, 2), rat(-5, 2), rat(-3, 2)]);
        assert_eq!(
            project_am(&v, &m22).unwrap().coords,
            vec![rint(0), rint(-2)]
        );

        // block-constant vectors project to their block values
        let w = ExpVector::ambient(rv(&[3, 3, -1, -1]));
        assert_eq!(project_am(&w, &m22).unwrap().coords, rv(&[3, -1]));

        let m2_2 = LeviDatum::parse("2;2").unwrap();
        let p = project_am(&rho_zero(4), &m2_2).unwrap();
        assert_eq!(p.coords, vec![rat(7, 2)]);
        // consistency with rho_p
        assert_eq!(m2_2.embed(&p.coords).unwrap(), rho_p(&m2_2).coords);
    }

    #[test]
    fn delta_p_examples() {
        let t = LeviDatum::parse("1,1;0").unwrap();
        let d: Vec<Vec<Rat>> = delta_p_elements(&t).into_iter().map(|e| e.coords).collect();
        assert_eq!(d, vec![rv(&[1, -1]), rv(&[0, 2])]);

        assert!(delta_p_elements(&LeviDatum::full(3)).is_empty());

        let m22 = LeviDatum::parse("2,2;0").unwrap();
        let d: Vec<Vec<Rat>> = delta_p_elements(&m22)
            .into_iter()
            .map(|e| e.coords)
            .collect();
        assert_eq!(d, vec![rv(&[1, -1]), rv(&[0, 2])]);

        // k elements for k blocks, with or without a tail
        for s in ["1,2;1", "3,1;0", "1,1,1;2"] {
            let levi = LeviDatum::parse(s).unwrap();
            assert_eq!(delta_p_elements(&levi).len(), levi.num_blocks());
        }
    }

    /// rho_p(M) equals project_am(rho_zero, M) re-embedded, all M up to rank 6.
    #[test]
    fn rho_p_matches_projection() {
        for m in 1..=6 {
            for levi in all_levis(m) {
                let p = project_am(&rho_zero(m), &levi).unwrap();
                assert_eq!(levi.embed(&p.coords).unwrap(), rho_p(&levi).coords);
            }
        }
    }

    /// ⟨ρ_0, α∨⟩ = 1 for every simple root.
    #[test]
    fn rho_pairing_one() {
        for m in 1..=6 {
            let rho = rho_zero(m);
            for i in 1..=m {
                assert_eq!(pairing(&rho.coords, simple_root(m, i)), rint(1));
            }
        }
    }

    #[test]
    fn containment_and_coarsenings() {
        let m = LeviDatum::parse("1,1,2;1").unwrap();
        let l = LeviDatum::parse("2,2;1").unwrap();
        assert!(m.is_contained_in(&l));
        assert!(!l.is_contained_in(&m));
        let l2 = LeviDatum::parse("2;3").unwrap();
        assert!(m.is_contained_in(&l2));
        // every coarsening contains m
        for c in m.coarsenings() {
            assert!(m.is_contained_in(&c), "{c}");
        }
        // coarsenings of the torus in C_3: ordered set partitions + tail cuts
        let t3 = LeviDatum::torus(3);
        let cs = t3.coarsenings();
        assert!(cs.contains(&LeviDatum::parse("1,2;0").unwrap()));
        assert!(cs.contains(&LeviDatum::parse("1;2").unwrap()));
        assert!(cs.contains(&LeviDatum::full(3)));
        let unique: std::collections::HashSet<_> = cs.iter().map(|c| format!("{c}")).collect();
        assert_eq!(unique.len(), cs.len());
    }

    pub(crate) fn all_levis(m: usize) -> Vec<LeviDatum> {
        LeviDatum::torus(m).coarsenings()
    }
}
