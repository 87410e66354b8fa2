//! The exponent ρ_x: the closed formula for standard cuspidal orbits, an
//! independent weight-sum oracle on the Lie algebra, the ±1-eigenspace
//! split of 𝔞_M*, and the singular affine subspace ρ_x + (𝔞_M*)_x^−.

use crate::levi::ExpVector;
use crate::linalg;
use crate::orbits::CuspidalOrbit;
use crate::sympmat::{ad_fixed_basis, strict_upper_region, SympInvolution};
use crate::{rat, rint, Error, Rat, Result};
use num_traits::{One, Zero};

/// Rational bases of the ±1 eigenspaces of the ı_M(x)-action on 𝔞_M ≅ R^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSplit {
    pub plus_basis: Vec<Vec<Rat>>,
    pub minus_basis: Vec<Vec<Rat>>,
}

/// Eigenspace split of the block-level involution induced by x on 𝔞_M*.
pub fn eigen_split(x: &SympInvolution) -> EigenSplit {
    let k = x.levi().num_blocks();
    let action = x.block_action();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for b in 0..k {
        let (t, s) = action[b];
        if t == b {
            let mut v = vec![Rat::zero(); k];
            v[b] = Rat::one();
            if s > 0 {
                plus.push(v);
            } else {
                minus.push(v);
            }
        } else if t > b {
            let mut vp = vec![Rat::zero(); k];
            let mut vm = vec![Rat::zero(); k];
            vp[b] = Rat::one();
            vm[b] = Rat::one();
            // 2-cycle with sign s: e_b + s·e_t is fixed, e_b − s·e_t is negated
            vp[t] = if s > 0 { Rat::one() } else { -Rat::one() };
            vm[t] = if s > 0 { -Rat::one() } else { Rat::one() };
            plus.push(vp);
            minus.push(vm);
        }
    }
    EigenSplit {
        plus_basis: plus,
        minus_basis: minus,
    }
}

/// An affine subspace of R^d in canonical form: a base point reduced
/// against a row-reduced direction basis, so equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    base: Vec<Rat>,
    dirs: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl AffineSubspace {
    pub fn new(base: Vec<Rat>, dirs: Vec<Vec<Rat>>) -> AffineSubspace {
        let d = base.len();
        assert!(dirs.iter().all(|v| v.len() == d));
        let mut mat = dirs;
        let pivots = linalg::rref(&mut mat);
        let mut base = base;
        for (row, &p) in mat.iter().zip(&pivots) {
            if !base[p].is_zero() {
                let f = base[p].clone();
                for j in 0..d {
                    let sub = &row[j] * &f;
                    base[j] -= sub;
                }
            }
        }
        AffineSubspace {
            base,
            dirs: mat,
            pivots,
        }
    }

    pub fn point(base: Vec<Rat>) -> AffineSubspace {
        AffineSubspace::new(base, vec![])
    }

    pub fn base(&self) -> &[Rat] {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.dirs
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn contains_point(&self, p: &[Rat]) -> bool {
        if p.len() != self.base.len() {
            return false;
        }
        let diff: Vec<Rat> = p.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        linalg::in_span(&self.dirs, &diff)
    }

    /// Does `self` contain `other` as a subset?
    pub fn contains(&self, other: &AffineSubspace) -> bool {
        other.ambient_dim() == self.ambient_dim()
            && self.contains_point(&other.base)
            && other.dirs.iter().all(|v| linalg::in_span(&self.dirs, v))
    }

    /// Solution set of the affine equations `coeff · x = rhs`; `None` when
    /// the system is inconsistent.
    pub fn from_equations(eqs: &[(Vec<Rat>, Rat)], dim: usize) -> Option<AffineSubspace> {
        let rows: Vec<Vec<Rat>> = eqs.iter().map(|(c, _)| c.clone()).collect();
        let rhs: Vec<Rat> = eqs.iter().map(|(_, r)| r.clone()).collect();
        let base = linalg::solve(&rows, &rhs)?;
        let dirs = linalg::nullspace_basis(&rows, dim);
        Some(AffineSubspace::new(base, dirs))
    }

    /// Transport by a signed coordinate permutation: coordinate `i` of the
    /// input appears (with sign) at position `perm[i].0` of the output.
    pub fn signed_permute(&self, perm: &[(usize, i64)]) -> AffineSubspace {
        let d = self.ambient_dim();
        assert_eq!(perm.len(), d);
        let map = |v: &[Rat]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); d];
            for (i, &(t, s)) in perm.iter().enumerate() {
                out[t] = if s > 0 { v[i].clone() } else { -v[i].clone() };
            }
            out
        };
        AffineSubspace::new(map(&self.base), self.dirs.iter().map(|v| map(v)).collect())
    }
}

/// Closed formula for ρ_x on an M-standard-cuspidal orbit: 2k + l_1
/// leading coordinates ½ followed by λ_i = 2#{j ≥ i : h_i = h_j} − (l_2+1−i).
pub fn rho_x_formula(orbit: &CuspidalOrbit) -> ExpVector {
    let mut coords = vec![rat(1, 2); 2 * orbit.k + orbit.l1];
    let l2 = orbit.l2();
    for i in 1..=l2 {
        let same = (i..=l2)
            .filter(|&j| orbit.h[i - 1] == orbit.h[j - 1])
            .count() as i64;
        coords.push(rint(2 * same - (l2 as i64 + 1 - i as i64)));
    }
    ExpVector::in_levi(coords, orbit.levi.clone())
}

/// First-principles oracle for ρ_x: the sum of the 𝔞_M-weights of
/// Lie U_x = {Y ∈ Lie U : Ad(x)Y = Y}, restricted to (𝔞_M)_x^+, minus the
/// restriction of ρ_P. Fully independent of the case analysis behind
/// [`rho_x_formula`].
pub fn rho_x_oracle(x: &SympInvolution) -> Result<ExpVector> {
    let levi = x.levi();
    let m = levi.ambient_rank();
    let nn = 2 * m;
    let k = levi.num_blocks();

    let region = strict_upper_region(levi);
    let fixed = ad_fixed_basis(&region, x.matrix());
    let split = eigen_split(x);
    let plus = &split.plus_basis;

    // trace of ad(ν) on span(fixed), for ν running over the plus basis
    let gram: Vec<Vec<Rat>> = fixed
        .iter()
        .map(|a| fixed.iter().map(|b| dot(a, b)).collect())
        .collect();
    let mut rhs_values = Vec::with_capacity(plus.len());
    for nu in plus {
        let emb = levi.embed(nu)?; // length m
                                   // diagonal of ad(ν) on matrix entries: d_i − d_j with the mirrored
                                   // torus coordinates d = (emb, −reverse(emb))
        let mut d = vec![Rat::zero(); nn];
        for c in 0..m {
            d[c] = emb[c].clone();
            d[nn - 1 - c] = -emb[c].clone();
        }
        let eig: Vec<Rat> = region.iter().map(|&(i, j)| &d[i] - &d[j]).collect();
        // tr(ad(ν)|V) = tr((GᵀG)^{-1} Gᵀ D G)
        let gdg: Vec<Vec<Rat>> = fixed
            .iter()
            .map(|a| {
                fixed
                    .iter()
                    .map(|b| {
                        a.iter()
                            .zip(b)
                            .zip(&eig)
                            .map(|((p, q), e)| p * q * e)
                            .sum::<Rat>()
                    })
                    .collect()
            })
            .collect();
        let trace = trace_of_solution(&gram, &gdg);
        // subtract ⟨ρ_P, ν⟩
        let rho_p = crate::levi::rho_p(levi);
        let pairing: Rat = rho_p.coords.iter().zip(&emb).map(|(a, b)| a * b).sum();
        rhs_values.push(trace - pairing);
    }

    // solve ⟨ρ_x, ν_t⟩ = c_t for ρ_x in the span of the plus basis
    let plus_emb: Vec<Vec<Rat>> = plus.iter().map(|v| levi.embed(v)).collect::<Result<_>>()?;
    let gram_plus: Vec<Vec<Rat>> = plus_emb
        .iter()
        .map(|a| plus_emb.iter().map(|b| dot(a, b)).collect())
        .collect();
    let coeffs =
        linalg::solve(&gram_plus, &rhs_values).expect("Gram matrix of a basis is invertible");
    let mut ambient = vec![Rat::zero(); m];
    for (c, v) in coeffs.iter().zip(&plus_emb) {
        for (o, val) in ambient.iter_mut().zip(v) {
            *o += c * val;
        }
    }
    // read off block values
    let coords: Vec<Rat> = (0..k)
        .map(|b| ambient[levi.block_range(b).start].clone())
        .collect();
    debug_assert_eq!(levi.embed(&coords)?, ambient, "ρ_x must be block-constant");
    Ok(ExpVector::in_levi(coords, levi.clone()))
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// tr(G⁻¹ W) for square systems G, W (G invertible).
fn trace_of_solution(g: &[Vec<Rat>], w: &[Vec<Rat>]) -> Rat {
    let s = g.len();
    if s == 0 {
        return Rat::zero();
    }
    let mut trace = Rat::zero();
    for col in 0..s {
        let rhs: Vec<Rat> = (0..s).map(|r| w[r][col].clone()).collect();
        let z = linalg::solve(g, &rhs).expect("invertible Gram system");
        trace += z[col].clone();
    }
    trace
}

/// ρ_x + (𝔞_M*)_x^−: base from the closed formula, directions from the
/// minus eigenspace of the orbit representative.
pub fn singular_subspace(orbit: &CuspidalOrbit) -> AffineSubspace {
    let base = rho_x_formula(orbit).coords;
    let split = eigen_split(&orbit.rep);
    AffineSubspace::new(base, split.minus_basis)
}

/// The same subspace as an explicit intersection of the hyperplanes
/// ℋ_{2i−1}^−, ℋ_i, ℋ_i^{(h_i h_{i+1})} and ℋ^+_{2k+l}.
pub fn singular_hyperplane_intersection(orbit: &CuspidalOrbit) -> Result<AffineSubspace> {
    let k = orbit.k;
    let l1 = orbit.l1;
    let l2 = orbit.l2();
    let l = l1 + l2;
    let d = 2 * k + l;
    let mut eqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let unit = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); d];
        v[i] = Rat::one();
        v
    };
    // ℋ_{2i−1}^−: μ_{2i−1} + μ_{2i} = 1 (1-based), for each pair
    for i in 0..k {
        let mut c = vec![Rat::zero(); d];
        c[2 * i] = Rat::one();
        c[2 * i + 1] = Rat::one();
        eqs.push((c, Rat::one()));
    }
    // ℋ_i: μ_i = ½ on the even s-blocks
    for i in 2 * k..2 * k + l1 {
        eqs.push((unit(i), rat(1, 2)));
    }
    // sign-block hyperplanes; the trailing ℋ^+_{2k+l} pins μ_{2k+l} = 1
    // and only applies when sign blocks are present
    if l2 > 0 {
        for i in 0..l2 - 1 {
            let pos = 2 * k + l1 + i;
            let mut c = unit(pos);
            // ℋ^±: μ_i ∓ μ_{i+1} = 1, chosen by the sign product h_i h_{i+1}
            c[pos + 1] = if orbit.h[i] == orbit.h[i + 1] {
                -Rat::one()
            } else {
                Rat::one()
            };
            eqs.push((c, Rat::one()));
        }
        eqs.push((unit(d - 1), Rat::one()));
    }
    AffineSubspace::from_equations(&eqs, d).ok_or(Error::NotCuspidal)
}
