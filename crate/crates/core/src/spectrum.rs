//! Decision procedures for distinguished spectral data: the even-Speh
//! classification for (GL_{2n}, Sp_n), H-type data and class domination for
//! (Sp_{2n}, Sp_n×Sp_n), and the two integrability criteria for cuspidal
//! exponents.

use crate::exponents::AffineSubspace;
use crate::levi::{simple_root_coords, LeviDatum};
use crate::orbits::balanced_signs;
use crate::{rat, rint, Error, Rat, Result};
use num_traits::{Signed, Zero};

/// An opaque cuspidal label with the declared analytic properties used by
/// the decision procedures. Equality is by identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspLabel {
    pub id: String,
    pub gl_size: usize,
    pub is_trivial_char: bool,
    pub is_glhalf_distinguished: bool,
    pub is_selfdual: bool,
}

impl CuspLabel {
    pub fn new(
        id: impl Into<String>,
        gl_size: usize,
        is_trivial_char: bool,
        is_glhalf_distinguished: bool,
        is_selfdual: bool,
    ) -> Result<CuspLabel> {
        let id = id.into();
        if is_trivial_char && (gl_size != 1 || !is_selfdual) {
            return Err(Error::LabelMismatch(
                "the trivial character lives on GL_1 and is self-dual".into(),
            ));
        }
        Ok(CuspLabel {
            id,
            gl_size,
            is_trivial_char,
            is_glhalf_distinguished,
            is_selfdual,
        })
    }

    /// The trivial character of GL_1.
    pub fn trivial() -> CuspLabel {
        CuspLabel::new("1", 1, true, false, true).expect("valid")
    }

    pub fn plain(id: impl Into<String>, gl_size: usize) -> CuspLabel {
        CuspLabel::new(id, gl_size, false, false, false).expect("valid")
    }

    /// The contragredient: an involution on identifiers, the identity on
    /// self-dual labels. Flags are preserved.
    pub fn dual(&self) -> CuspLabel {
        if self.is_selfdual {
            return self.clone();
        }
        let id = match self.id.strip_suffix('~') {
            Some(base) => base.to_string(),
            None => format!("{}~", self.id),
        };
        CuspLabel { id, ..self.clone() }
    }
}

/// One Speh factor Speh(τ, r) occupying a GL block of size r · m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpehBlock {
    pub tau: CuspLabel,
    pub r: usize,
}

impl SpehBlock {
    pub fn size(&self) -> usize {
        self.r * self.tau.gl_size
    }
}

/// Discrete datum for GL(2n): a Levi composition with a Speh factor per
/// block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlDiscreteDatum {
    pub blocks: Vec<SpehBlock>,
}

impl GlDiscreteDatum {
    pub fn total_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size()).sum()
    }
}

/// True iff every block has even size and every Speh parameter r is even.
pub fn gl_is_h_dist_datum(d: &GlDiscreteDatum) -> bool {
    d.blocks.iter().all(|b| b.size() % 2 == 0 && b.r % 2 == 0)
}

/// A spectral class (M, π, 𝔖) for GL: a composition, cuspidal labels per
/// block, and an affine subspace of 𝔞_M* ≅ R^k.
#[derive(Debug, Clone, PartialEq)]
pub struct GlSpectralClass {
    pub levi: Vec<usize>,
    pub labels: Vec<CuspLabel>,
    pub subspace: AffineSubspace,
}

/// A spectral class for Sp with M inside the ambient C_{2n}.
#[derive(Debug, Clone, PartialEq)]
pub struct SpSpectralClass {
    pub levi: LeviDatum,
    pub labels: Vec<CuspLabel>,
    pub subspace: AffineSubspace,
}

/// The class [(M_π, π, μ_δ + (𝔞_L^G)*)] attached to a GL discrete datum:
/// each Speh(τ, r) block contributes r copies of τ with exponent string
/// ((r−1)/2, …, (1−r)/2), and the free directions are constant along each
/// original block with weighted trace zero.
pub fn gl_class_of_datum(d: &GlDiscreteDatum) -> GlSpectralClass {
    let mut levi = Vec::new();
    let mut labels = Vec::new();
    let mut base = Vec::new();
    let mut group_sizes = Vec::new(); // (#coords, block size) per original block
    for b in &d.blocks {
        group_sizes.push((b.r, b.size()));
        for i in 0..b.r {
            levi.push(b.tau.gl_size);
            labels.push(b.tau.clone());
            base.push(rat((b.r as i64 - 1) - 2 * i as i64, 2));
        }
    }
    let k = levi.len();
    let l = group_sizes.len();
    // basis of (𝔞_L^G)*: group-constant vectors with Σ N_i c_i = 0
    let mut dirs = Vec::new();
    let mut starts = vec![0usize];
    for (r, _) in &group_sizes {
        starts.push(starts.last().unwrap() + r);
    }
    for i in 0..l.saturating_sub(1) {
        let mut v = vec![Rat::zero(); k];
        for t in starts[i]..starts[i + 1] {
            v[t] = rint(group_sizes[i + 1].1 as i64);
        }
        for t in starts[i + 1]..starts[i + 2] {
            v[t] = -rint(group_sizes[i].1 as i64);
        }
        dirs.push(v);
    }
    GlSpectralClass {
        levi,
        labels,
        subspace: AffineSubspace::new(base, dirs),
    }
}

/// Does the affine functional `coeffs · μ = rhs` hold identically on the
/// subspace?
fn holds_on(subspace: &AffineSubspace, coeffs: &[Rat], rhs: &Rat) -> bool {
    let dot = |v: &[Rat]| -> Rat { coeffs.iter().zip(v).map(|(a, b)| a * b).sum() };
    if &dot(subspace.base()) != rhs {
        return false;
    }
    subspace.directions().iter().all(|d| dot(d).is_zero())
}

/// Is the block coordinate μ_b constant on the subspace? Returns the value.
fn constant_coordinate(subspace: &AffineSubspace, b: usize) -> Option<Rat> {
    if subspace.directions().iter().any(|d| !d[b].is_zero()) {
        return None;
    }
    Some(subspace.base()[b].clone())
}

/// GL classification: true iff the blocks match into (τ, τ) pairs of equal
/// size such that on all of 𝔖 the paired coordinates differ by 1 and the
/// weighted pair-sums vanish (containment in a transported 𝔄-class).
pub fn gl_classify_class(c: &GlSpectralClass) -> bool {
    let k = c.levi.len();
    if !k.is_multiple_of(2) {
        return false;
    }
    let mut used = vec![false; k];
    gl_match(c, &mut used)
}

fn gl_match(c: &GlSpectralClass, used: &mut Vec<bool>) -> bool {
    let Some(a) = used.iter().position(|u| !u) else {
        // all paired: check the weighted trace-zero condition
        let coeffs: Vec<Rat> = c.levi.iter().map(|&n| rint(n as i64)).collect();
        return holds_on(&c.subspace, &coeffs, &Rat::zero());
    };
    used[a] = true;
    for b in a + 1..c.levi.len() {
        if used[b] || c.levi[a] != c.levi[b] || c.labels[a] != c.labels[b] {
            continue;
        }
        // (first, second) gets the exponent pair (ν+1/2, ν−1/2)
        for (first, second) in [(a, b), (b, a)] {
            let mut coeffs = vec![Rat::zero(); c.levi.len()];
            coeffs[first] = Rat::from_integer(1.into());
            coeffs[second] = -Rat::from_integer(1.into());
            if !holds_on(&c.subspace, &coeffs, &rint(1)) {
                continue;
            }
            used[b] = true;
            if gl_match(c, used) {
                used[a] = false;
                used[b] = false;
                return true;
            }
            used[b] = false;
        }
    }
    used[a] = false;
    false
}

/// Sp classification: true iff M sits inside the Siegel Levi and some
/// signed matching of its blocks into (τ, τ) pairs, even distinguished
/// blocks pinned at ½, and trivial-character GL_1 blocks carrying a
/// balanced sign sequence h puts 𝔖 inside the associated singular
/// subspace (free ν on pairs, fixed cuspidal-exponent tail).
pub fn sp_classify_class(c: &SpSpectralClass) -> bool {
    if c.levi.sp_rank() > 0 {
        return false;
    }
    let k = c.levi.num_blocks();
    if c.labels.len() != k || c.subspace.ambient_dim() != k {
        return false;
    }
    let mut assignment = Assignment::default();
    sp_match(c, &mut vec![false; k], &mut assignment)
}

#[derive(Default)]
struct Assignment {
    /// Values ε·μ of the sign-slot blocks (each constant on 𝔖).
    one_values: Vec<Rat>,
}

fn sp_match(c: &SpSpectralClass, used: &mut Vec<bool>, asg: &mut Assignment) -> bool {
    let Some(a) = used.iter().position(|u| !u) else {
        return sign_slots_match(&asg.one_values);
    };
    used[a] = true;
    let sizes = c.levi.blocks();

    // (1) pair a with a later block, either order, either signs
    for b in a + 1..sizes.len() {
        if used[b] || sizes[a] != sizes[b] {
            continue;
        }
        for (first, second) in [(a, b), (b, a)] {
            for ef in [1i64, -1] {
                for es in [1i64, -1] {
                    let la = if ef > 0 {
                        c.labels[first].clone()
                    } else {
                        c.labels[first].dual()
                    };
                    let lb = if es > 0 {
                        c.labels[second].clone()
                    } else {
                        c.labels[second].dual()
                    };
                    if la != lb {
                        continue;
                    }
                    let mut coeffs = vec![Rat::zero(); sizes.len()];
                    coeffs[first] = rint(ef);
                    coeffs[second] = -rint(es);
                    if !holds_on(&c.subspace, &coeffs, &rint(1)) {
                        continue;
                    }
                    used[b] = true;
                    if sp_match(c, used, asg) {
                        used[a] = false;
                        used[b] = false;
                        return true;
                    }
                    used[b] = false;
                }
            }
        }
    }

    // (2) an even glhalf-distinguished block pinned at ε·μ = 1/2
    if sizes[a].is_multiple_of(2) && c.labels[a].is_glhalf_distinguished {
        if let Some(v) = constant_coordinate(&c.subspace, a) {
            for e in [1i64, -1] {
                let val = if e > 0 { v.clone() } else { -v.clone() };
                if val == rat(1, 2) && sp_match(c, used, asg) {
                    used[a] = false;
                    return true;
                }
            }
        }
    }

    // (3) a trivial-character GL_1 block carrying a sign
    if sizes[a] == 1 && c.labels[a].is_trivial_char {
        if let Some(v) = constant_coordinate(&c.subspace, a) {
            asg.one_values.push(v);
            if sp_match(c, used, asg) {
                asg.one_values.pop();
                used[a] = false;
                return true;
            }
            asg.one_values.pop();
        }
    }

    used[a] = false;
    false
}

/// Do the collected sign-slot values ±v match the exponent string λ(h) of
/// some balanced sign vector h?
fn sign_slots_match(values: &[Rat]) -> bool {
    let l2 = values.len();
    if !l2.is_multiple_of(2) {
        return false;
    }
    if l2 == 0 {
        return true;
    }
    for h in balanced_signs(l2) {
        let lambda: Vec<Rat> = (1..=l2)
            .map(|i| {
                let same = (i..=l2).filter(|&j| h[i - 1] == h[j - 1]).count() as i64;
                rint(2 * same - (l2 as i64 + 1 - i as i64))
            })
            .collect();
        if match_with_signs(values, &lambda, &mut vec![false; l2]) {
            return true;
        }
    }
    false
}

fn match_with_signs(values: &[Rat], lambda: &[Rat], used: &mut Vec<bool>) -> bool {
    let slot = used.iter().filter(|u| **u).count();
    if slot == lambda.len() {
        return true;
    }
    for (i, v) in values.iter().enumerate() {
        if used[i] {
            continue;
        }
        if *v == lambda[slot] || -v.clone() == lambda[slot] {
            used[i] = true;
            if match_with_signs(values, lambda, used) {
                return true;
            }
            used[i] = false;
        }
    }
    false
}

/// Cuspidal support of a discrete-spectrum member of Sp_{2m}.
#[derive(Debug, Clone, PartialEq)]
pub struct SpRepDatum {
    pub levi: LeviDatum,
    pub labels: Vec<CuspLabel>,
    pub point: Vec<Rat>,
}

impl SpRepDatum {
    pub fn support_class(&self) -> SpSpectralClass {
        SpSpectralClass {
            levi: self.levi.clone(),
            labels: self.labels.clone(),
            subspace: AffineSubspace::point(self.point.clone()),
        }
    }
}

/// Discrete datum for Sp(2n): even GL blocks with Speh factors and an
/// optional Sp tail factor given by its cuspidal support.
#[derive(Debug, Clone, PartialEq)]
pub struct SpDiscreteDatum {
    pub gl_blocks: Vec<SpehBlock>,
    /// Rank of the Sp tail (an even number 2m).
    pub sp_tail_rank: usize,
    pub sp_factor: Option<SpRepDatum>,
}

/// True iff every GL block is even with even Speh parameter and the Sp
/// factor's support class passes [`sp_classify_class`].
pub fn sp_is_h_type_datum(d: &SpDiscreteDatum) -> Result<bool> {
    if !d
        .gl_blocks
        .iter()
        .all(|b| b.size() % 2 == 0 && b.r % 2 == 0)
    {
        return Ok(false);
    }
    if d.sp_tail_rank == 0 {
        return Ok(true);
    }
    if !d.sp_tail_rank.is_multiple_of(2) {
        return Ok(false);
    }
    let support = d.sp_factor.as_ref().ok_or(Error::MissingSupport)?;
    Ok(sp_classify_class(&support.support_class()))
}

/// Integrability criterion for (GL_{2n}, Sp_n): the coordinates of
/// pr_H(ℜλ) − (1,…,1) in the C_n simple-root basis must be negative
/// outside pr_H(Δ_0^M).
pub fn gl_convergence_check(lambda: &[Rat], gl_blocks: &[usize]) -> Result<bool> {
    let two_n: usize = gl_blocks.iter().sum();
    if lambda.len() != two_n || !two_n.is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: two_n,
            got: lambda.len(),
        });
    }
    let n = two_n / 2;
    // pr_H(x)_i = x_i − x_{2n+1−i}
    let pr: Vec<Rat> = (0..n)
        .map(|i| &lambda[i] - &lambda[two_n - 1 - i])
        .collect();
    let shifted: Vec<Rat> = pr.into_iter().map(|x| x - rint(1)).collect();
    let coords = simple_root_coords(&shifted, n)?;
    // image of the internal simple roots of M under pr_H (1-based indices)
    let mut exempt = std::collections::HashSet::new();
    let block_of = |coord: usize| -> usize {
        let mut acc = 0;
        for (i, &b) in gl_blocks.iter().enumerate() {
            acc += b;
            if coord < acc {
                return i;
            }
        }
        unreachable!()
    };
    for t in 1..two_n {
        if block_of(t - 1) == block_of(t) {
            let idx = if t < n {
                t
            } else if t == n {
                n
            } else {
                two_n - t
            };
            exempt.insert(idx);
        }
    }
    Ok((1..=n).all(|i| exempt.contains(&i) || coords[i - 1].is_negative()))
}

/// Integrability criterion for (Sp_{2n}, Sp_n×Sp_n): the coordinates of
/// ℜλ + (0, 1, …, n−1, −n, …, −1) in the simple-root basis must be
/// negative outside Δ_0^M.
pub fn sp_convergence_check(lambda: &[Rat], m: &LeviDatum) -> Result<bool> {
    let two_n = m.ambient_rank();
    if lambda.len() != two_n || !two_n.is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: two_n,
            got: lambda.len(),
        });
    }
    let n = two_n / 2;
    // the shift vector (0, 1, …, n−1, −n, …, −1)
    let mut shift: Vec<Rat> = (0..n as i64).map(rint).collect();
    shift.extend((0..n as i64).map(|i| rint(i - n as i64)));
    let v: Vec<Rat> = lambda.iter().zip(&shift).map(|(l, s)| l + s).collect();
    let coords = simple_root_coords(&v, two_n)?;
    let exempt: std::collections::HashSet<usize> =
        m.internal_simple_indices().into_iter().collect();
    Ok((1..=two_n).all(|i| exempt.contains(&i) || coords[i - 1].is_negative()))
}

/// Class domination 𝔠' ⪰ 𝔠 for GL classes: a block permutation transports
/// (M', π') onto (M, π) with 𝔖 ⊆ w(𝔖').
pub fn gl_dominates(c_prime: &GlSpectralClass, c: &GlSpectralClass) -> bool {
    let k = c.levi.len();
    if c_prime.levi.len() != k {
        return false;
    }
    let perms = permutations(k);
    'outer: for perm in &perms {
        for (i, &t) in perm.iter().enumerate() {
            if c_prime.levi[i] != c.levi[t] || c_prime.labels[i] != c.labels[t] {
                continue 'outer;
            }
        }
        let signed: Vec<(usize, i64)> = perm.iter().map(|&t| (t, 1)).collect();
        if c_prime
            .subspace
            .signed_permute(&signed)
            .contains(&c.subspace)
        {
            return true;
        }
    }
    false
}

/// Class domination for Sp classes under signed block permutations
/// (a sign flip dualizes the label).
pub fn sp_dominates(c_prime: &SpSpectralClass, c: &SpSpectralClass) -> bool {
    let k = c.levi.num_blocks();
    if c_prime.levi.num_blocks() != k || c_prime.levi.sp_rank() != c.levi.sp_rank() {
        return false;
    }
    let perms = permutations(k);
    for perm in &perms {
        'signs: for mask in 0..(1u32 << k) {
            let mut ok = true;
            for (i, &t) in perm.iter().enumerate() {
                let flip = mask & (1 << i) != 0;
                if c_prime.levi.blocks()[i] != c.levi.blocks()[t] {
                    ok = false;
                    break;
                }
                let lab = if flip {
                    c_prime.labels[i].dual()
                } else {
                    c_prime.labels[i].clone()
                };
                if lab != c.labels[t] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue 'signs;
            }
            let signed: Vec<(usize, i64)> = perm
                .iter()
                .enumerate()
                .map(|(i, &t)| (t, if mask & (1 << i) != 0 { -1 } else { 1 }))
                .collect();
            if c_prime
                .subspace
                .signed_permute(&signed)
                .contains(&c.subspace)
            {
                return true;
            }
        }
    }
    false
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for c in 0..k {
                if !p.contains(&c) {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Transport an Sp class by a signed block permutation (for invariance
/// tests and normal forms): block i moves to `perm[i].0` with sign.
pub fn sp_transport(c: &SpSpectralClass, perm: &[(usize, i64)]) -> SpSpectralClass {
    let k = c.levi.num_blocks();
    assert_eq!(perm.len(), k);
    let mut blocks = vec![0usize; k];
    let mut labels = vec![CuspLabel::trivial(); k];
    for (i, &(t, s)) in perm.iter().enumerate() {
        blocks[t] = c.levi.blocks()[i];
        labels[t] = if s > 0 {
            c.labels[i].clone()
        } else {
            c.labels[i].dual()
        };
    }
    SpSpectralClass {
        levi: LeviDatum::new(blocks, c.levi.sp_rank()),
        labels,
        subspace: c.subspace.signed_permute(perm),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(id: &str) -> CuspLabel {
        CuspLabel::plain(id, 1)
    }

    #[test]
    fn label_invariants() {
        assert!(CuspLabel::new("1", 2, true, false, true).is_err());
        assert!(CuspLabel::new("1", 1, true, false, false).is_err());
        let tau = CuspLabel::plain("tau", 3);
        assert_eq!(tau.dual().dual(), tau);
        assert_ne!(tau.dual(), tau);
        let sd = CuspLabel::new("sigma", 2, false, false, true).unwrap();
        assert_eq!(sd.dual(), sd);
    }

    #[test]
    fn gl_datum_examples() {
        // Speh(τ_{GL_2}, 2) on GL_4: even
        let d = GlDiscreteDatum {
            blocks: vec![SpehBlock {
                tau: CuspLabel::plain("tau", 2),
                r: 2,
            }],
        };
        assert!(gl_is_h_dist_datum(&d));
        // cuspidal π on GL_4: r = 1 odd
        let d2 = GlDiscreteDatum {
            blocks: vec![SpehBlock {
                tau: CuspLabel::plain("pi", 4),
                r: 1,
            }],
        };
        assert!(!gl_is_h_dist_datum(&d2));
        // Speh(χ,2) ⊗ Speh(χ',2) on (2,2)
        let d3 = GlDiscreteDatum {
            blocks: vec![
                SpehBlock {
                    tau: chi("chi"),
                    r: 2,
                },
                SpehBlock {
                    tau: chi("chi'"),
                    r: 2,
                },
            ],
        };
        assert!(gl_is_h_dist_datum(&d3));
    }

    #[test]
    fn gl_classify_examples() {
        // M = (1,1,1,1), π = χ⊗χ⊗χ'⊗χ', 𝔖 = (½,−½,½,−½) + {(a,a,b,b): a+b=0}
        let labels = vec![chi("chi"), chi("chi"), chi("chi'"), chi("chi'")];
        let base = vec![rat(1, 2), rat(-1, 2), rat(1, 2), rat(-1, 2)];
        let dirs = vec![vec![rint(1), rint(1), rint(-1), rint(-1)]];
        let c = GlSpectralClass {
            levi: vec![1, 1, 1, 1],
            labels: labels.clone(),
            subspace: AffineSubspace::new(base, dirs),
        };
        assert!(gl_classify_class(&c));

        // the zero point is not in any 𝔄-class
        let c2 = GlSpectralClass {
            levi: vec![1, 1, 1, 1],
            labels,
            subspace: AffineSubspace::point(vec![rint(0); 4]),
        };
        assert!(!gl_classify_class(&c2));

        // τ ⊗ τ̃ with τ ≠ τ̃ cannot pair
        let tau = CuspLabel::plain("tau", 2);
        let c3 = GlSpectralClass {
            levi: vec![2, 2],
            labels: vec![tau.clone(), tau.dual()],
            subspace: AffineSubspace::new(vec![rat(1, 2), rat(-1, 2)], vec![]),
        };
        assert!(!gl_classify_class(&c3));
    }

    #[test]
    fn datum_class_equivalence_spot_checks() {
        // Speh(χ,2)⊗Speh(τ,2) on (2,4): agree (true)
        let d = GlDiscreteDatum {
            blocks: vec![
                SpehBlock {
                    tau: chi("chi"),
                    r: 2,
                },
                SpehBlock {
                    tau: CuspLabel::plain("tau", 2),
                    r: 2,
                },
            ],
        };
        assert_eq!(
            gl_is_h_dist_datum(&d),
            gl_classify_class(&gl_class_of_datum(&d))
        );
        assert!(gl_is_h_dist_datum(&d));

        // Speh(τ,1)⊗Speh(τ,1): agree (false)
        let tau = CuspLabel::plain("tau", 2);
        let d2 = GlDiscreteDatum {
            blocks: vec![
                SpehBlock {
                    tau: tau.clone(),
                    r: 1,
                },
                SpehBlock {
                    tau: tau.clone(),
                    r: 1,
                },
            ],
        };
        assert_eq!(
            gl_is_h_dist_datum(&d2),
            gl_classify_class(&gl_class_of_datum(&d2))
        );
        assert!(!gl_is_h_dist_datum(&d2));

        // Speh(τ,4) on GL_4 with τ on GL_1: agree (true)
        let d3 = GlDiscreteDatum {
            blocks: vec![SpehBlock {
                tau: chi("tau"),
                r: 4,
            }],
        };
        assert_eq!(
            gl_is_h_dist_datum(&d3),
            gl_classify_class(&gl_class_of_datum(&d3))
        );
        assert!(gl_is_h_dist_datum(&d3));

        // Speh(τ,1)⊗Speh(τ,3): agree (false)
        let d4 = GlDiscreteDatum {
            blocks: vec![
                SpehBlock {
                    tau: chi("tau"),
                    r: 1,
                },
                SpehBlock {
                    tau: chi("tau"),
                    r: 3,
                },
            ],
        };
        assert_eq!(
            gl_is_h_dist_datum(&d4),
            gl_classify_class(&gl_class_of_datum(&d4))
        );
        assert!(!gl_is_h_dist_datum(&d4));
    }

    #[test]
    fn sp_classify_examples() {
        let m = LeviDatum::parse("1,1;0").unwrap();
        let triv = CuspLabel::trivial();

        // 𝔖 = {(0,1)}: the h = (+,−) cuspidal exponent
        let c1 = SpSpectralClass {
            levi: m.clone(),
            labels: vec![triv.clone(), triv.clone()],
            subspace: AffineSubspace::point(vec![rint(0), rint(1)]),
        };
        assert!(sp_classify_class(&c1));

        // σ ⊗ σ with σ self-dual: the pair class {μ_1 + μ_2 = 1}
        let sigma = CuspLabel::new("sigma", 1, false, false, true).unwrap();
        let c2 = SpSpectralClass {
            levi: m.clone(),
            labels: vec![sigma.clone(), sigma],
            subspace: AffineSubspace::new(
                vec![rat(1, 2), rat(1, 2)],
                vec![vec![rint(1), rint(-1)]],
            ),
        };
        assert!(sp_classify_class(&c2));

        // the zero point fails both shapes
        let c3 = SpSpectralClass {
            levi: m,
            labels: vec![triv.clone(), triv],
            subspace: AffineSubspace::point(vec![rint(0), rint(0)]),
        };
        assert!(!sp_classify_class(&c3));
    }

    #[test]
    fn sp_classify_rejects_sp_tail() {
        let c = SpSpectralClass {
            levi: LeviDatum::parse("1;1").unwrap(),
            labels: vec![CuspLabel::trivial()],
            subspace: AffineSubspace::point(vec![rint(1)]),
        };
        assert!(!sp_classify_class(&c));
    }

    /// Every singular subspace generated from a cuspidal orbit, labeled
    /// compatibly (contragredient pair labels, distinguished even blocks,
    /// trivial characters on the sign blocks), is itself classified as
    /// distinguished. The pair subspace {μ_a + μ_b = 1} carries σ ⊗ σ̃;
    /// the sign flip that straightens it into the (ν+½, ν−½) shape
    /// dualizes the second label into σ ⊗ σ.
    #[test]
    fn generated_singular_subspaces_classify_true() {
        use crate::exponents::singular_subspace;
        use crate::orbits::enumerate_cuspidal_orbits;
        for two_n in [2usize, 4] {
            for m in LeviDatum::torus(two_n).coarsenings() {
                for orbit in enumerate_cuspidal_orbits(&m).unwrap() {
                    let mut labels = Vec::new();
                    for i in 0..orbit.k {
                        let sigma = CuspLabel::plain(format!("p{i}"), orbit.data.r_list[i]);
                        labels.push(sigma.dual());
                        labels.push(sigma);
                    }
                    for (j, &s) in orbit.data.s_list.iter().enumerate() {
                        if j < orbit.l1 {
                            labels.push(
                                CuspLabel::new(format!("t{j}"), s, false, true, false).unwrap(),
                            );
                        } else {
                            labels.push(CuspLabel::trivial());
                        }
                    }
                    let class = SpSpectralClass {
                        levi: orbit.levi.clone(),
                        labels,
                        subspace: singular_subspace(&orbit),
                    };
                    assert!(
                        sp_classify_class(&class),
                        "orbit over {} with h = {:?}",
                        orbit.levi,
                        orbit.h
                    );
                }
            }
        }
    }

    #[test]
    fn sp_datum_examples() {
        // L = (2;2) in Sp_4: Speh(χ,2) even, Sp_2 factor with support
        // (T, 1⊗1, (0,1)) passes
        let d = SpDiscreteDatum {
            gl_blocks: vec![SpehBlock {
                tau: chi("chi"),
                r: 2,
            }],
            sp_tail_rank: 2,
            sp_factor: Some(SpRepDatum {
                levi: LeviDatum::parse("1,1;0").unwrap(),
                labels: vec![CuspLabel::trivial(), CuspLabel::trivial()],
                point: vec![rint(0), rint(1)],
            }),
        };
        assert!(sp_is_h_type_datum(&d).unwrap());

        // odd Speh parameter fails
        let d2 = SpDiscreteDatum {
            gl_blocks: vec![SpehBlock {
                tau: CuspLabel::plain("tau", 2),
                r: 1,
            }],
            sp_tail_rank: 0,
            sp_factor: None,
        };
        assert!(!sp_is_h_type_datum(&d2).unwrap());

        // failing support class
        let d3 = SpDiscreteDatum {
            gl_blocks: vec![],
            sp_tail_rank: 2,
            sp_factor: Some(SpRepDatum {
                levi: LeviDatum::parse("1,1;0").unwrap(),
                labels: vec![CuspLabel::trivial(), CuspLabel::trivial()],
                point: vec![rint(0), rint(0)],
            }),
        };
        assert!(!sp_is_h_type_datum(&d3).unwrap());

        // missing support errors
        let d4 = SpDiscreteDatum {
            gl_blocks: vec![],
            sp_tail_rank: 2,
            sp_factor: None,
        };
        assert!(sp_is_h_type_datum(&d4).is_err());
    }

    #[test]
    fn gl_convergence_examples() {
        // n = 1, M = GL_2 itself: no constraints
        assert!(gl_convergence_check(&[rint(0), rint(0)], &[2]).unwrap());
        // n = 1, M = (1,1), λ = 0: coefficient −1/2 < 0
        assert!(gl_convergence_check(&[rint(0), rint(0)], &[1, 1]).unwrap());
        // λ = (1,−1): coefficient 1/2 > 0
        assert!(!gl_convergence_check(&[rint(1), rint(-1)], &[1, 1]).unwrap());
        assert!(gl_convergence_check(&[rint(0)], &[1, 1]).is_err());
    }

    #[test]
    fn sp_convergence_examples() {
        let lam = vec![rat(-1, 2); 4];
        assert!(sp_convergence_check(&lam, &LeviDatum::parse("4;0").unwrap()).unwrap());
        assert!(!sp_convergence_check(&lam, &LeviDatum::parse("2,2;0").unwrap()).unwrap());
        // very dominant-negative λ passes for any M
        let dom: Vec<Rat> = vec![rint(-40), rint(-30), rint(-20), rint(-10)];
        for m in ["1,1,1,1;0", "2,2;0", "1,1;2", "4;0"] {
            assert!(sp_convergence_check(&dom, &LeviDatum::parse(m).unwrap()).unwrap());
        }
    }

    #[test]
    fn domination_is_partial_order_on_samples() {
        let tau = CuspLabel::plain("tau", 1);
        let mk = |base: Vec<Rat>, dirs: Vec<Vec<Rat>>| SpSpectralClass {
            levi: LeviDatum::parse("1,1;0").unwrap(),
            labels: vec![tau.clone(), tau.clone()],
            subspace: AffineSubspace::new(base, dirs),
        };
        let point = mk(vec![rint(0), rint(1)], vec![]);
        let line = mk(vec![rint(0), rint(1)], vec![vec![rint(1), rint(1)]]);
        let plane = mk(
            vec![rint(0), rint(1)],
            vec![vec![rint(1), rint(0)], vec![rint(0), rint(1)]],
        );
        // reflexive
        for c in [&point, &line, &plane] {
            assert!(sp_dominates(c, c));
        }
        // containment chain
        assert!(sp_dominates(&line, &point));
        assert!(sp_dominates(&plane, &point));
        assert!(sp_dominates(&plane, &line));
        assert!(!sp_dominates(&point, &line));
        // antisymmetry on these canonical forms
        assert!(!(sp_dominates(&line, &point) && sp_dominates(&point, &line)));
    }
}
