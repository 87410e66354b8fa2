//! Unramified local period factors: trivial-character local L-factors, the
//! rank-one value J_1, the c-function product c_w, the full product J_n,
//! and the symbolic global factor L_σ(λ) attached to a cuspidal orbit.
//!
//! Non-archimedean values are exact rationals whenever every atom argument
//! is an integer (half-integer shifts included); archimedean values are
//! double precision through a Lanczos Γ.

use crate::orbits::CuspidalOrbit;
use crate::{rat, rint, Error, Rat, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A local field: non-archimedean with residue size q, or R, or C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalField {
    NonArch { q: u64 },
    Real,
    Complex,
}

impl LocalField {
    pub fn parse(s: &str) -> Result<LocalField> {
        match s {
            "real" | "R" => Ok(LocalField::Real),
            "complex" | "C" => Ok(LocalField::Complex),
            other => {
                let q: u64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid field `{other}`")))?;
                if q < 2 {
                    return Err(Error::Parse("residue size must be at least 2".into()));
                }
                Ok(LocalField::NonArch { q })
            }
        }
    }
}

/// An exactly-or-approximately evaluated scalar.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rat),
    Approx(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rat_f64(r),
            Value::Approx(x) => *x,
        }
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            (a, b) => Value::Approx(a.as_f64() * b.as_f64()),
        }
    }

    fn div(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a / b),
            (a, b) => Value::Approx(a.as_f64() / b.as_f64()),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx(x) => write!(f, "{x:.14e}"),
        }
    }
}

pub(crate) fn rat_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Γ by the Lanczos approximation (g = 7, n = 9), with reflection for
/// arguments below 1/2.
pub fn gamma(x: f64) -> f64 {
    const P: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.5203681218851,
        -1259.1392167224028,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507343278686905,
        -0.13857109526572012,
        9.984_369_578_019_572e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut t = P[0];
        for (i, &p) in P.iter().enumerate().skip(1) {
            t += p / (x + i as f64);
        }
        let w = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * t
    }
}

/// Γ(t/2)² / Γ(t): the Beta-integral value B(t/2, t/2).
pub fn beta_halves(t: f64) -> f64 {
    gamma(t / 2.0).powi(2) / gamma(t)
}

/// L(s, 1_F): (1 − q^{−s})^{-1} non-archimedean (exact for integer s),
/// π^{−s/2} Γ(s/2) over R, and 2(2π)^{−s} Γ(s) over C.
pub fn local_l_triv(s: &Rat, field: &LocalField) -> Result<Value> {
    match *field {
        LocalField::NonArch { q } => {
            if s.is_zero() {
                return Err(Error::Pole(format!("L(s, 1_F) at s = 0, q = {q}")));
            }
            if s.is_integer() {
                let qs = pow_rat(q, s);
                Ok(Value::Exact((Rat::one() - qs).recip()))
            } else {
                let x = (q as f64).powf(-rat_f64(s));
                Ok(Value::Approx(1.0 / (1.0 - x)))
            }
        }
        LocalField::Real => {
            // poles of Γ(s/2) at s ∈ {0, −2, −4, …}
            if s.is_integer() && !s.is_positive() && (s / rint(2)).is_integer() {
                return Err(Error::Pole(format!("Γ(s/2) at s = {s}")));
            }
            let sf = rat_f64(s);
            Ok(Value::Approx(
                std::f64::consts::PI.powf(-sf / 2.0) * gamma(sf / 2.0),
            ))
        }
        LocalField::Complex => {
            if s.is_integer() && !s.is_positive() {
                return Err(Error::Pole(format!("Γ(s) at s = {s}")));
            }
            let sf = rat_f64(s);
            Ok(Value::Approx(
                2.0 * (2.0 * std::f64::consts::PI).powf(-sf) * gamma(sf),
            ))
        }
    }
}

/// q^{−s} for integer s, exact.
fn pow_rat(q: u64, s: &Rat) -> Rat {
    let e = s.to_integer();
    let mag = e.magnitude().to_u32().expect("small exponent");
    let p = num_bigint::BigInt::from(q).pow(mag);
    if e.is_negative() {
        Rat::from_integer(p)
    } else {
        Rat::new(num_bigint::BigInt::from(1), p)
    }
}

/// J_1(s): non-archimedean closed form (1 + q^{−s−1/2})/(1 − q^{−s−1/2});
/// archimedean L(s+½, 1_F)²/L(2s+1, 1_F).
pub fn j1(s: &Rat, field: &LocalField) -> Result<Value> {
    let t = s + rat(1, 2);
    match *field {
        LocalField::NonArch { q } => {
            if t.is_zero() {
                return Err(Error::Pole("J_1 at s = −1/2".into()));
            }
            if t.is_integer() {
                let x = pow_rat(q, &t);
                Ok(Value::Exact((Rat::one() + &x) / (Rat::one() - &x)))
            } else {
                let x = (q as f64).powf(-rat_f64(&t));
                Ok(Value::Approx((1.0 + x) / (1.0 - x)))
            }
        }
        _ => {
            let num = local_l_triv(&t, field)?;
            let den = local_l_triv(&(rint(2) * s + rint(1)), field)?;
            Ok(num.clone().mul(num).div(den))
        }
    }
}

/// Which variable combination an atom evaluates: λ_i + λ_j (i = j allowed,
/// giving 2λ_i), a single λ_i, or a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comb {
    Single(usize),
    Pair(usize, usize),
    Const,
}

/// One local L-factor atom of a factored product.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub comb: Comb,
    pub shift: Rat,
    pub denominator: bool,
    pub power: u32,
}

impl Atom {
    /// The evaluated argument of this atom at the point λ.
    pub fn argument(&self, lambda: &[Rat]) -> Rat {
        let base = match self.comb {
            Comb::Single(i) => lambda[i].clone(),
            Comb::Pair(i, j) => &lambda[i] + &lambda[j],
            Comb::Const => Rat::zero(),
        };
        base + &self.shift
    }
}

/// A product of trivial-character local L-factor atoms in n variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFactor {
    pub n_vars: usize,
    pub atoms: Vec<Atom>,
}

impl LocalFactor {
    /// Atoms of c_w(λ, −λ) = ∏_{i<j} L(λ_i+λ_j) / L(λ_i+λ_j+1).
    pub fn cw(n: usize) -> LocalFactor {
        let mut atoms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                atoms.push(Atom {
                    comb: Comb::Pair(i, j),
                    shift: Rat::zero(),
                    denominator: false,
                    power: 1,
                });
                atoms.push(Atom {
                    comb: Comb::Pair(i, j),
                    shift: Rat::one(),
                    denominator: true,
                    power: 1,
                });
            }
        }
        LocalFactor { n_vars: n, atoms }
    }

    /// Atoms of J_n(λ) = c_w(λ,−λ) ∏_i L(λ_i+½)² / L(2λ_i+1).
    pub fn jn(n: usize) -> LocalFactor {
        let mut f = LocalFactor::cw(n);
        for i in 0..n {
            f.atoms.push(Atom {
                comb: Comb::Single(i),
                shift: rat(1, 2),
                denominator: false,
                power: 2,
            });
            f.atoms.push(Atom {
                comb: Comb::Pair(i, i),
                shift: Rat::one(),
                denominator: true,
                power: 1,
            });
        }
        f
    }

    /// Exact accounting of the overall pole order at `lambda` over a
    /// non-archimedean field: positive means a pole.
    pub fn pole_order(&self, lambda: &[Rat]) -> i64 {
        let mut order = 0i64;
        for a in &self.atoms {
            if a.argument(lambda).is_zero() {
                let p = a.power as i64;
                order += if a.denominator { -p } else { p };
            }
        }
        order
    }

    /// Evaluate the product at a rational point.
    pub fn eval(&self, lambda: &[Rat], field: &LocalField) -> Result<Value> {
        if lambda.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: lambda.len(),
            });
        }
        if matches!(field, LocalField::NonArch { .. }) {
            let order = self.pole_order(lambda);
            if order > 0 {
                return Err(Error::Pole("numerator atom at its pole".into()));
            }
            if order < 0 {
                return Ok(Value::Exact(Rat::zero()));
            }
            if self.atoms.iter().any(|a| a.argument(lambda).is_zero()) {
                // vanishing atoms cancel in order but not in value
                return Err(Error::Pole("indeterminate atom cancellation".into()));
            }
        }
        let mut acc = Value::Exact(Rat::one());
        for a in &self.atoms {
            let arg = a.argument(lambda);
            let l = local_l_triv(&arg, field)?;
            for _ in 0..a.power {
                acc = if a.denominator {
                    acc.div(l.clone())
                } else {
                    acc.mul(l.clone())
                };
            }
        }
        Ok(acc)
    }
}

/// c_w(λ, −λ) = ∏_{i<j} L(λ_i+λ_j, 1_F)/L(λ_i+λ_j+1, 1_F).
pub fn cw(lambda: &[Rat], field: &LocalField) -> Result<Value> {
    LocalFactor::cw(lambda.len()).eval(lambda, field)
}

/// J_n(λ) = c_w(λ, −λ) ∏_j J_1(λ_j).
pub fn jn(lambda: &[Rat], field: &LocalField) -> Result<Value> {
    match field {
        LocalField::NonArch { .. } => LocalFactor::jn(lambda.len()).eval(lambda, field),
        _ => {
            let mut acc = cw(lambda, field)?;
            for l in lambda {
                acc = acc.mul(j1(l, field)?);
            }
            Ok(acc)
        }
    }
}

/// The convergence domain of the defining integral:
/// ℜλ_i > −½ and ℜλ_i + ℜλ_j > 0 for i < j.
pub fn jn_domain(lambda: &[Rat]) -> bool {
    let half = rat(-1, 2);
    lambda.iter().all(|l| *l > half)
        && lambda.iter().enumerate().all(|(i, a)| {
            lambda[i + 1..]
                .iter()
                .all(|b| !(a + b).is_negative() && !(a + b).is_zero())
        })
}

/// Twists occurring in the global factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    /// ∧² (exterior square).
    Ext2,
    /// Sym² (symmetric square).
    Sym2,
    /// σ × σ̃ (Rankin–Selberg with the contragredient).
    RankinSelbergDual,
}

/// Formal argument c·λ_i + shift (or a constant when `var` is None).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymArg {
    pub coef: i64,
    pub var: Option<usize>,
    pub shift: Rat,
}

impl std::fmt::Display for SymArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.var {
            None => write!(f, "{}", self.shift),
            Some(i) => {
                let v = format!("λ{}", i + 1);
                if self.coef == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{}{v}", self.coef)?;
                }
                if !self.shift.is_zero() {
                    if self.shift.is_negative() {
                        write!(f, "{}", self.shift)?;
                    } else {
                        write!(f, "+{}", self.shift)?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// One named L-function atom; labels are opaque and never evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum SymKind {
    LValue {
        arg: SymArg,
        label: String,
        twist: Option<Twist>,
    },
    /// Res_{s=1} L(s, label, twist).
    Residue { label: String, twist: Option<Twist> },
    /// Res_{s=1} ζ_F(s).
    ResidueZeta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymAtom {
    pub kind: SymKind,
    pub denominator: bool,
    pub power: u32,
}

/// The symbolic product L_σ(λ): structurally comparable, pretty-printable,
/// never numerically evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicLFactor {
    pub atoms: Vec<SymAtom>,
}

impl SymbolicLFactor {
    pub fn numerator_count(&self) -> usize {
        self.atoms.iter().filter(|a| !a.denominator).count()
    }

    pub fn denominator_count(&self) -> usize {
        self.atoms.iter().filter(|a| a.denominator).count()
    }
}

fn twist_str(t: &Option<Twist>) -> String {
    match t {
        None => String::new(),
        Some(Twist::Ext2) => ", ∧²".into(),
        Some(Twist::Sym2) => ", Sym²".into(),
        Some(Twist::RankinSelbergDual) => "×~".into(),
    }
}

impl std::fmt::Display for SymbolicLFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_atom = |a: &SymAtom| -> String {
            let body = match &a.kind {
                SymKind::LValue { arg, label, twist } => match twist {
                    Some(Twist::RankinSelbergDual) => {
                        format!("L({arg}, {label}×~{label})")
                    }
                    t => format!("L({arg}, {label}{})", twist_str(t)),
                },
                SymKind::Residue { label, twist } => match twist {
                    Some(Twist::RankinSelbergDual) => {
                        format!("Res_{{s=1}} L(s, {label}×~{label})")
                    }
                    t => format!("Res_{{s=1}} L(s, {label}{})", twist_str(t)),
                },
                SymKind::ResidueZeta => "Res_{s=1} ζ_F(s)".into(),
            };
            if a.power == 1 {
                body
            } else {
                format!("{body}^{}", a.power)
            }
        };
        let nums: Vec<String> = self
            .atoms
            .iter()
            .filter(|a| !a.denominator)
            .map(fmt_atom)
            .collect();
        let dens: Vec<String> = self
            .atoms
            .iter()
            .filter(|a| a.denominator)
            .map(fmt_atom)
            .collect();
        write!(
            f,
            "{}",
            if nums.is_empty() {
                "1".into()
            } else {
                nums.join(" · ")
            }
        )?;
        if !dens.is_empty() {
            write!(f, " / [{}]", dens.join(" · "))?;
        }
        Ok(())
    }
}

/// Assemble the symbolic factor L_σ(λ) for a standard cuspidal orbit:
/// per pair i the block L(λ_i+½, σ_i)² L(2λ_i, σ_i, ∧²) Res L(s, σ_i×σ̃_i)
/// / L(2λ_i+1, σ_i, Sym²); per s-block Res ζ_F (s_j = 1) or
/// L(½, τ_j) · Res L(s, τ_j, ∧²) (s_j even).
pub fn assemble_l_sigma(
    orbit: &CuspidalOrbit,
    pair_labels: &[String],
    s_labels: &[String],
) -> Result<SymbolicLFactor> {
    if pair_labels.len() != orbit.k {
        return Err(Error::LabelMismatch(format!(
            "expected {} pair labels, got {}",
            orbit.k,
            pair_labels.len()
        )));
    }
    let l = orbit.data.s_list.len();
    if s_labels.len() != l {
        return Err(Error::LabelMismatch(format!(
            "expected {} s-block labels, got {}",
            l,
            s_labels.len()
        )));
    }
    let mut atoms = Vec::new();
    for (i, sigma) in pair_labels.iter().enumerate() {
        atoms.push(SymAtom {
            kind: SymKind::LValue {
                arg: SymArg {
                    coef: 1,
                    var: Some(i),
                    shift: rat(1, 2),
                },
                label: sigma.clone(),
                twist: None,
            },
            denominator: false,
            power: 2,
        });
        atoms.push(SymAtom {
            kind: SymKind::LValue {
                arg: SymArg {
                    coef: 2,
                    var: Some(i),
                    shift: Rat::zero(),
                },
                label: sigma.clone(),
                twist: Some(Twist::Ext2),
            },
            denominator: false,
            power: 1,
        });
        atoms.push(SymAtom {
            kind: SymKind::Residue {
                label: sigma.clone(),
                twist: Some(Twist::RankinSelbergDual),
            },
            denominator: false,
            power: 1,
        });
        atoms.push(SymAtom {
            kind: SymKind::LValue {
                arg: SymArg {
                    coef: 2,
                    var: Some(i),
                    shift: Rat::one(),
                },
                label: sigma.clone(),
                twist: Some(Twist::Sym2),
            },
            denominator: true,
            power: 1,
        });
    }
    for (j, &s) in orbit.data.s_list.iter().enumerate() {
        if s == 1 {
            atoms.push(SymAtom {
                kind: SymKind::ResidueZeta,
                denominator: false,
                power: 1,
            });
        } else {
            atoms.push(SymAtom {
                kind: SymKind::LValue {
                    arg: SymArg {
                        coef: 0,
                        var: None,
                        shift: rat(1, 2),
                    },
                    label: s_labels[j].clone(),
                    twist: None,
                },
                denominator: false,
                power: 1,
            });
            atoms.push(SymAtom {
                kind: SymKind::Residue {
                    label: s_labels[j].clone(),
                    twist: Some(Twist::Ext2),
                },
                denominator: false,
                power: 1,
            });
        }
    }
    Ok(SymbolicLFactor { atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::LeviDatum;
    use crate::orbits::enumerate_cuspidal_orbits;

    fn q(v: u64) -> LocalField {
        LocalField::NonArch { q: v }
    }

    #[test]
    fn local_l_examples() {
        assert_eq!(
            local_l_triv(&rint(1), &q(2)).unwrap(),
            Value::Exact(rint(2))
        );
        assert_eq!(
            local_l_triv(&rint(2), &q(3)).unwrap(),
            Value::Exact(rat(9, 8))
        );
        // real s = 1: π^{-1/2} Γ(1/2) = 1
        match local_l_triv(&rint(1), &LocalField::Real).unwrap() {
            Value::Approx(x) => assert!((x - 1.0).abs() < 1e-12),
            v => panic!("expected approx, got {v:?}"),
        }
        assert!(local_l_triv(&rint(0), &q(5)).is_err());
    }

    #[test]
    fn j1_examples() {
        assert_eq!(j1(&rat(1, 2), &q(4)).unwrap(), Value::Exact(rat(5, 3)));
        assert_eq!(j1(&rat(1, 2), &q(2)).unwrap(), Value::Exact(rint(3)));
        // real s = 0: Γ(1/4)²/Γ(1/2) ≈ 7.41630
        let v = j1(&rint(0), &LocalField::Real).unwrap().as_f64();
        assert!((v - 7.416_298_709_205_487).abs() < 1e-9, "{v}");
        assert!((v - beta_halves(0.5)).abs() < 1e-12);
    }

    /// Geometric-series oracle: J_1(s) = 1 + 2 Σ_{n≥1} q^{−n(s+1/2)},
    /// resummed exactly for integral s + ½.
    #[test]
    fn j1_series_resummation() {
        for qv in [2u64, 3, 5] {
            for s in [rat(1, 2), rat(3, 2), rint(1), rint(2)] {
                let t = &s + rat(1, 2);
                if t.is_integer() {
                    let x = pow_rat(qv, &t);
                    let resummed = Rat::one() + rint(2) * &x / (Rat::one() - &x);
                    assert_eq!(j1(&s, &q(qv)).unwrap(), Value::Exact(resummed));
                }
            }
        }
    }

    #[test]
    fn cw_examples() {
        assert_eq!(cw(&[rint(1)], &q(2)).unwrap(), Value::Exact(rint(1)));
        // λ = (3/2, 1/2): L(2)/L(3) = (8/7)/... = 7/6 at q = 2
        assert_eq!(
            cw(&[rat(3, 2), rat(1, 2)], &q(2)).unwrap(),
            Value::Exact(rat(7, 6))
        );
        // three equal pairs
        let v = cw(&[rint(1), rint(1), rint(1)], &q(3)).unwrap();
        let single = Value::Exact(rat(9, 8)).div(Value::Exact(rat(27, 26)));
        let Value::Exact(s) = single else {
            unreachable!()
        };
        assert_eq!(v, Value::Exact(&s * &s * &s));
        // pole at λ_i + λ_j = 0
        assert!(cw(&[rint(1), rint(-1)], &q(2)).is_err());
    }

    #[test]
    fn jn_examples() {
        // n = 1 reduces to J_1
        assert_eq!(
            jn(&[rat(1, 2)], &q(4)).unwrap(),
            j1(&rat(1, 2), &q(4)).unwrap()
        );
        // the worked value J_2((3/2, 1/2), q = 2) = 35/6
        assert_eq!(
            jn(&[rat(3, 2), rat(1, 2)], &q(2)).unwrap(),
            Value::Exact(rat(35, 6))
        );
        // and its factorization: (7/6) · 5/3 · 3
        let c = cw(&[rat(3, 2), rat(1, 2)], &q(2)).unwrap();
        let a = j1(&rat(3, 2), &q(2)).unwrap();
        let b = j1(&rat(1, 2), &q(2)).unwrap();
        assert_eq!(c.mul(a).mul(b), Value::Exact(rat(35, 6)));
    }

    #[test]
    fn jn_pole_accounting() {
        let f = LocalFactor::jn(2);
        // pole at λ_1 = −1/2
        assert!(f.pole_order(&[rat(-1, 2), rint(3)]) > 0);
        assert!(f.eval(&[rat(-1, 2), rint(3)], &q(2)).is_err());
        // pole at λ_1 + λ_2 = 0
        assert!(f.pole_order(&[rint(2), rint(-2)]) > 0);
        // regular point off the domain still evaluates
        assert_eq!(f.pole_order(&[rint(-2), rint(3)]), 0);
        assert!(f.eval(&[rint(-2), rint(3)], &q(2)).is_ok());
        // denominator atom at its pole forces an exact zero: 2λ+1 = 0 needs
        // λ = −1/2 which is also a numerator pole; use the cw denominator
        let c = LocalFactor::cw(2);
        assert!(c.pole_order(&[rint(2), rint(-3)]) < 0);
        assert_eq!(
            c.eval(&[rint(2), rint(-3)], &q(2)).unwrap(),
            Value::Exact(Rat::zero())
        );
    }

    #[test]
    fn jn_domain_examples() {
        assert!(jn_domain(&[rat(3, 2), rat(1, 2)]));
        assert!(!jn_domain(&[rat(-1, 2), rint(1)]));
        assert!(!jn_domain(&[rint(2), rint(-2)]));
    }

    #[test]
    fn gamma_sanity() {
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!((gamma(5.0) - 24.0).abs() < 1e-10);
        assert!((gamma(1.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn assemble_examples() {
        // k = 1, l = 0: four atoms, three numerator one denominator
        let m = LeviDatum::parse("1,1;0").unwrap();
        let pair = enumerate_cuspidal_orbits(&m)
            .unwrap()
            .into_iter()
            .find(|o| o.k == 1)
            .unwrap();
        let f = assemble_l_sigma(&pair, &["σ1".into()], &[]).unwrap();
        assert_eq!(f.atoms.len(), 4);
        assert_eq!(f.numerator_count(), 3);
        assert_eq!(f.denominator_count(), 1);
        let printed = f.to_string();
        assert!(printed.contains("L(λ1+1/2, σ1)^2"), "{printed}");
        assert!(printed.contains("Sym²"), "{printed}");

        // k = 0, l = 1, s_1 = 1... needs balanced signs, so use l = 2 signs
        let t = LeviDatum::parse("1,1;0").unwrap();
        let signs = enumerate_cuspidal_orbits(&t)
            .unwrap()
            .into_iter()
            .find(|o| o.k == 0)
            .unwrap();
        let f = assemble_l_sigma(&signs, &[], &["τ1".into(), "τ2".into()]).unwrap();
        assert_eq!(f.atoms.len(), 2);
        assert!(f
            .atoms
            .iter()
            .all(|a| matches!(a.kind, SymKind::ResidueZeta)));

        // even s-block: two atoms L(1/2, τ) · Res L(s, τ, ∧²)
        let m2 = LeviDatum::parse("2;0").unwrap();
        let even = enumerate_cuspidal_orbits(&m2)
            .unwrap()
            .into_iter()
            .find(|o| o.k == 0 && o.l1 == 1)
            .unwrap();
        let f = assemble_l_sigma(&even, &[], &["τ".into()]).unwrap();
        assert_eq!(f.atoms.len(), 2);
        assert!(f.to_string().contains("L(1/2, τ)"));

        // label mismatch
        assert!(assemble_l_sigma(&even, &["x".into()], &["τ".into()]).is_err());
    }

    #[test]
    fn assemble_mixed_orbit() {
        // M = (1,1,2,1,1;0) in C_6: one pair, one even s-block, two signs
        let m = LeviDatum::parse("1,1,2,1,1;0").unwrap();
        let orbit = enumerate_cuspidal_orbits(&m)
            .unwrap()
            .into_iter()
            .find(|o| o.k == 1 && o.l1 == 1)
            .unwrap();
        let f =
            assemble_l_sigma(&orbit, &["σ".into()], &["τ".into(), "ζ".into(), "ζ".into()]).unwrap();
        // 4 pair atoms + 2 even-block atoms + 2 residues of ζ_F
        assert_eq!(f.atoms.len(), 8);
        assert_eq!(f.denominator_count(), 1);
        assert_eq!(
            f.atoms
                .iter()
                .filter(|a| matches!(a.kind, SymKind::ResidueZeta))
                .count(),
            2
        );
    }
}
