//! Generalized, basic and multivariable hypergeometric series.
//!
//! Every evaluator walks the terms through their ratio. A vanishing
//! numerator factor ends the series before any denominator factor is looked
//! at, so terminating series never trip over poles that lie past their last
//! term.

use crate::error::{Error, Result};
use crate::pochhammer::pochhammer;
use crate::scalar::{FieldKind, Scalar};
use crate::series::{binomial_power, TruncatedSeries};

/// Number of consecutive negligible terms that ends a truncated sum.
pub const QUIET_TERMS: usize = 5;

/// Cap on the index searched when looking for `a = q^{−m}`.
const MAX_TERMINATION_INDEX: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum HyperKind<S> {
    Ordinary,
    Basic { q: S },
}

/// Parameters of `rFs` or `rφs`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSpec<S> {
    numerators: Vec<S>,
    denominators: Vec<S>,
    /// Pairs `(a, x)` standing for the numerators `a e^{iθ}, a e^{−iθ}` with
    /// `x = cos θ`; basic kind only.
    conjugate_pairs: Vec<(S, S)>,
    kind: HyperKind<S>,
    termination: Option<usize>,
}

impl<S: Scalar> HyperSpec<S> {
    pub fn ordinary(numerators: Vec<S>, denominators: Vec<S>) -> Self {
        let termination = numerators
            .iter()
            .filter_map(|a| a.as_integer())
            .filter(|&m| m <= 0)
            .map(|m| m.unsigned_abs() as usize)
            .min();
        HyperSpec {
            numerators,
            denominators,
            conjugate_pairs: Vec::new(),
            kind: HyperKind::Ordinary,
            termination,
        }
    }

    pub fn basic(numerators: Vec<S>, denominators: Vec<S>, q: S) -> Result<Self> {
        Self::basic_with_pairs(numerators, Vec::new(), denominators, q)
    }

    pub fn basic_with_pairs(
        numerators: Vec<S>,
        conjugate_pairs: Vec<(S, S)>,
        denominators: Vec<S>,
        q: S,
    ) -> Result<Self> {
        let qm = q.modulus();
        if !(qm > 0.0 && qm < 1.0) {
            return Err(Error::invalid("q", "basic series need 0 < |q| < 1"));
        }
        let termination = numerators.iter().filter_map(|a| q_termination_index(a, &q)).min();
        Ok(HyperSpec {
            numerators,
            denominators,
            conjugate_pairs,
            kind: HyperKind::Basic { q },
            termination,
        })
    }

    pub fn numerators(&self) -> &[S] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[S] {
        &self.denominators
    }

    pub fn kind(&self) -> &HyperKind<S> {
        &self.kind
    }

    /// Index of the last possibly nonzero term, when the series terminates.
    pub fn termination(&self) -> Option<usize> {
        self.termination
    }

    /// `t_{k+1}/t_k` at `z = 1`. Returns zero as soon as a numerator factor
    /// vanishes, without touching the denominators.
    pub fn term_ratio(&self, k: usize) -> Result<S> {
        if self.termination == Some(k) {
            return Ok(S::zero());
        }
        let kk = S::from_usize(k);
        match &self.kind {
            HyperKind::Ordinary => {
                let mut num = S::one();
                for a in &self.numerators {
                    num = num * (a.clone() + kk.clone());
                }
                if num.is_zero() {
                    return Ok(S::zero());
                }
                let mut den = S::from_usize(k + 1);
                for b in &self.denominators {
                    let f = b.clone() + kk.clone();
                    if f.is_zero() {
                        return Err(Error::Pole(format!(
                            "denominator parameter {b} reaches zero at term {}",
                            k + 1
                        )));
                    }
                    den = den * f;
                }
                Ok(num / den)
            }
            HyperKind::Basic { q } => {
                let qk = q.powu(k);
                let mut num = S::one();
                for a in &self.numerators {
                    num = num * (S::one() - a.clone() * qk.clone());
                }
                let two = S::from_int(2);
                for (a, x) in &self.conjugate_pairs {
                    let aq = a.clone() * qk.clone();
                    num = num * (S::one() - two.clone() * aq.clone() * x.clone() + aq.clone() * aq);
                }
                if num.is_zero() {
                    return Ok(S::zero());
                }
                let mut den = S::one() - qk.clone() * q.clone();
                for b in &self.denominators {
                    let f = S::one() - b.clone() * qk.clone();
                    if f.is_zero() {
                        return Err(Error::Pole(format!(
                            "denominator parameter {b} gives a vanishing factor at term {}",
                            k + 1
                        )));
                    }
                    den = den * f;
                }
                if den.is_zero() {
                    return Err(Error::Pole(format!("(q;q)_{} vanishes", k + 1)));
                }
                let r = self.numerators.len() + 2 * self.conjugate_pairs.len();
                let s = self.denominators.len();
                let e = 1 + s as i64 - r as i64;
                let extra = (-qk).powi(e)?;
                Ok(num / den * extra)
            }
        }
    }

    /// Coefficients of `z^0..z^n`.
    pub fn terms(&self, n: usize) -> Result<Vec<S>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut term = S::one();
        out.push(term.clone());
        for k in 0..n {
            if !term.is_zero() {
                term = term * self.term_ratio(k)?;
            }
            out.push(term.clone());
        }
        Ok(out)
    }
}

/// `Some(m)` when `a = q^{−m}` for some `m ≥ 0`.
fn q_termination_index<S: Scalar>(a: &S, q: &S) -> Option<usize> {
    match S::KIND {
        FieldKind::Exact => {
            let mut v = a.clone();
            for m in 0..MAX_TERMINATION_INDEX {
                if v == S::one() {
                    return Some(m);
                }
                if v.modulus() > 1.0 {
                    // |a q^m| only shrinks from here
                    v = v * q.clone();
                } else {
                    return None;
                }
            }
            None
        }
        FieldKind::Numeric => {
            let am = a.modulus();
            if am < 1.0 - 1e-12 {
                return None;
            }
            let m = (-am.ln() / q.modulus().ln()).round();
            if !(0.0..MAX_TERMINATION_INDEX as f64).contains(&m) {
                return None;
            }
            let m = m as usize;
            let v = (a.clone() * q.powu(m)).to_complex();
            ((v - 1.0).norm() <= 1e-12).then_some(m)
        }
    }
}

/// How a scalar series is summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumMode {
    /// Sum every term up to the termination index; errors if there is none.
    Terminating,
    /// Stop after `QUIET_TERMS` consecutive terms with `|term| < tol·|sum|`,
    /// or fail after `max_terms`.
    Truncated { max_terms: usize, tol: f64 },
}

/// A summed series together with how it was summed.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperValue<S> {
    pub value: S,
    pub terms_used: usize,
    /// Estimated modulus of the neglected tail; zero for finite sums.
    pub tail_bound: f64,
}

/// Generalized hypergeometric `rFs(a; b; z)`.
pub fn pfq_eval<S: Scalar>(spec: &HyperSpec<S>, z: &S, mode: SumMode) -> Result<HyperValue<S>> {
    if spec.kind != HyperKind::Ordinary {
        return Err(Error::invalid("spec", "pfq_eval takes an ordinary spec"));
    }
    sum_series(spec, z, mode)
}

/// Basic hypergeometric `rφs(a; b; q, z)`.
pub fn rphis_eval<S: Scalar>(spec: &HyperSpec<S>, z: &S, mode: SumMode) -> Result<HyperValue<S>> {
    if spec.kind == HyperKind::Ordinary {
        return Err(Error::invalid("spec", "rphis_eval takes a basic spec"));
    }
    sum_series(spec, z, mode)
}

fn sum_series<S: Scalar>(spec: &HyperSpec<S>, z: &S, mode: SumMode) -> Result<HyperValue<S>> {
    let mut sum = S::one();
    let mut term = S::one();
    match mode {
        SumMode::Terminating => {
            let m = spec
                .termination
                .ok_or_else(|| Error::NotTerminating("no numerator parameter ends the series".into()))?;
            for k in 0..m {
                term = term * spec.term_ratio(k)? * z.clone();
                if term.is_zero() {
                    return Ok(HyperValue {
                        value: sum,
                        terms_used: k + 1,
                        tail_bound: 0.0,
                    });
                }
                sum = sum + term.clone();
            }
            Ok(HyperValue {
                value: sum,
                terms_used: m + 1,
                tail_bound: 0.0,
            })
        }
        SumMode::Truncated { max_terms, tol } => {
            let mut quiet = 0;
            let mut last_ratio = f64::INFINITY;
            for k in 0..max_terms.saturating_sub(1) {
                let r = spec.term_ratio(k)? * z.clone();
                let prev = term.modulus();
                term = term * r;
                if term.is_zero() {
                    return Ok(HyperValue {
                        value: sum,
                        terms_used: k + 1,
                        tail_bound: 0.0,
                    });
                }
                sum = sum + term.clone();
                last_ratio = term.modulus() / prev;
                if term.modulus() < tol * sum.modulus() {
                    quiet += 1;
                    if quiet == QUIET_TERMS {
                        return Ok(HyperValue {
                            value: sum,
                            terms_used: k + 2,
                            tail_bound: geometric_tail(term.modulus(), last_ratio),
                        });
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::NonConvergent {
                terms: max_terms,
                detail: format!(
                    "last term {:.3e}, last term ratio {:.3e}, partial sum {:.3e}",
                    term.modulus(),
                    last_ratio,
                    sum.modulus()
                ),
            })
        }
    }
}

/// Bound on `Σ_{j≥1} |t| ρ^j`; infinite when the ratio is not below one.
pub fn geometric_tail(last: f64, ratio: f64) -> f64 {
    if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}

/// Families of multivariable series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiVarKind {
    /// Appell `F1(a, b, b′; c; x, y)`.
    F1,
    /// Humbert `Φ2(β, β′; γ; x, y)`.
    Phi2,
    /// Lauricella `F_D^{(3)}(a, b1, b2, b3; c; x, y, z)`.
    FD3,
    /// Confluent `Φ2^{(3)}(b1, b2, b3; c; x, y, z)`.
    Phi2_3,
}

impl MultiVarKind {
    pub fn variables(self) -> usize {
        match self {
            MultiVarKind::F1 | MultiVarKind::Phi2 => 2,
            MultiVarKind::FD3 | MultiVarKind::Phi2_3 => 3,
        }
    }

    fn has_shared_numerator(self) -> bool {
        matches!(self, MultiVarKind::F1 | MultiVarKind::FD3)
    }

    pub fn parameter_count(self) -> usize {
        self.variables() + 1 + usize::from(self.has_shared_numerator())
    }
}

/// `Σ_m (a)_{|m|} Π(b_i)_{m_i} / (c)_{|m|} · Π x_i^{m_i}/m_i!`; the shared
/// numerator is absent for the confluent kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVarSpec<S> {
    kind: MultiVarKind,
    shared: Option<S>,
    per_variable: Vec<S>,
    denominator: S,
}

impl<S: Scalar> MultiVarSpec<S> {
    /// Parameters in the displayed order, e.g. `[a, b, b′, c]` for `F1`.
    pub fn new(kind: MultiVarKind, params: Vec<S>) -> Result<Self> {
        if params.len() != kind.parameter_count() {
            return Err(Error::invalid(
                "params",
                format!(
                    "{kind:?} takes {} parameters, got {}",
                    kind.parameter_count(),
                    params.len()
                ),
            ));
        }
        let mut params = params;
        let denominator = params.pop().expect("count checked");
        let shared = if kind.has_shared_numerator() {
            Some(params.remove(0))
        } else {
            None
        };
        Ok(MultiVarSpec {
            kind,
            shared,
            per_variable: params,
            denominator,
        })
    }

    pub fn kind(&self) -> MultiVarKind {
        self.kind
    }

    /// Largest total degree with a possibly nonzero term.
    pub fn termination(&self) -> Option<usize> {
        let neg = |a: &S| a.as_integer().filter(|&m| m <= 0).map(|m| m.unsigned_abs() as usize);
        let by_shared = self.shared.as_ref().and_then(neg);
        let by_each: Option<usize> = self
            .per_variable
            .iter()
            .map(neg)
            .try_fold(0usize, |acc, m| m.map(|m| acc + m));
        match (by_shared, by_each) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Per-variable tables `(b_i)_j/j!`, and `(a)_s`, `(c)_s` for `s ≤ n`.
    fn tables(&self, n: usize) -> (Vec<Vec<S>>, Vec<S>, Vec<S>) {
        let per: Vec<Vec<S>> = self
            .per_variable
            .iter()
            .map(|b| {
                let mut row = Vec::with_capacity(n + 1);
                let mut v = S::one();
                row.push(v.clone());
                for j in 0..n {
                    v = v * (b.clone() + S::from_usize(j)) / S::from_usize(j + 1);
                    row.push(v.clone());
                }
                row
            })
            .collect();
        let shared: Vec<S> = (0..=n)
            .map(|s| match &self.shared {
                Some(a) => pochhammer(a, s),
                None => S::one(),
            })
            .collect();
        let den: Vec<S> = (0..=n).map(|s| pochhammer(&self.denominator, s)).collect();
        (per, shared, den)
    }

    /// Calls `f(m, coefficient)` for every multi-index of total degree `≤ n`,
    /// skipping vanishing terms. The coefficient excludes the `x_i^{m_i}`.
    fn for_each_term(&self, n: usize, mut f: impl FnMut(&[usize], S)) -> Result<()> {
        let (per, shared, den) = self.tables(n);
        let v = self.per_variable.len();
        let mut index = vec![0usize; v];
        for total in 0..=n {
            let mut err = None;
            compositions(total, v, &mut index, 0, &mut |m| {
                if err.is_some() {
                    return;
                }
                let mut num = shared[total].clone();
                for (i, &mi) in m.iter().enumerate() {
                    num = num * per[i][mi].clone();
                }
                if num.is_zero() {
                    return;
                }
                if den[total].is_zero() {
                    err = Some(Error::Pole(format!(
                        "denominator parameter {} reaches zero at total degree {total}",
                        self.denominator
                    )));
                    return;
                }
                f(m, num / den[total].clone());
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(())
    }
}

/// Enumerates `m ∈ ℕ^v` with `|m| = total`.
fn compositions(total: usize, v: usize, index: &mut [usize], pos: usize, f: &mut impl FnMut(&[usize])) {
    if pos + 1 == v {
        index[pos] = total;
        f(index);
        return;
    }
    for first in 0..=total {
        index[pos] = first;
        compositions(total - first, v, index, pos + 1, f);
    }
    index[pos] = 0;
}

/// Sums a multivariable series shell by shell in total degree.
pub fn multivar_eval<S: Scalar>(spec: &MultiVarSpec<S>, args: &[S], mode: SumMode) -> Result<HyperValue<S>> {
    if args.len() != spec.per_variable.len() {
        return Err(Error::invalid(
            "args",
            format!("{:?} takes {} arguments", spec.kind, spec.per_variable.len()),
        ));
    }
    let (limit, tol) = match mode {
        SumMode::Terminating => (
            spec.termination()
                .ok_or_else(|| Error::NotTerminating("no parameter bounds the total degree".into()))?,
            None,
        ),
        SumMode::Truncated { max_terms, tol } => (max_terms.saturating_sub(1), Some(tol)),
    };
    let mut shells = vec![S::zero(); limit + 1];
    // Shells are computed lazily in blocks so a truncated sum can stop early.
    let mut sum = S::zero();
    let mut quiet = 0;
    let mut block_start = 0;
    let mut prev_shell = f64::NAN;
    while block_start <= limit {
        let block_end = if tol.is_some() {
            (block_start + 15).min(limit)
        } else {
            limit
        };
        shells.iter_mut().for_each(|s| *s = S::zero());
        spec.for_each_term(block_end, |m, c| {
            let total: usize = m.iter().sum();
            if total < block_start {
                return;
            }
            let mut term = c;
            for (x, &mi) in args.iter().zip(m) {
                term = term * x.powu(mi);
            }
            shells[total] = shells[total].clone() + term;
        })?;
        for (total, shell) in shells.iter().enumerate().take(block_end + 1).skip(block_start) {
            sum = sum + shell.clone();
            if let Some(tol) = tol {
                if shell.modulus() < tol * sum.modulus() {
                    quiet += 1;
                    if quiet == QUIET_TERMS {
                        return Ok(HyperValue {
                            value: sum,
                            terms_used: total + 1,
                            tail_bound: geometric_tail(shell.modulus(), shell.modulus() / prev_shell),
                        });
                    }
                } else {
                    quiet = 0;
                }
            }
            prev_shell = shell.modulus();
        }
        block_start = block_end + 1;
    }
    match mode {
        SumMode::Terminating => Ok(HyperValue {
            value: sum,
            terms_used: limit + 1,
            tail_bound: 0.0,
        }),
        SumMode::Truncated { max_terms, .. } => Err(Error::NonConvergent {
            terms: max_terms,
            detail: format!("last shell {prev_shell:.3e}, partial sum {:.3e}", sum.modulus()),
        }),
    }
}

/// Shape of a series argument as a function of `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum ArgShape<S> {
    /// `λ t`
    Linear(S),
    /// `λ t/(1 − t)`
    Mobius(S),
}

impl<S: Scalar> ArgShape<S> {
    fn lambda(&self) -> &S {
        match self {
            ArgShape::Linear(l) | ArgShape::Mobius(l) => l,
        }
    }

    fn is_mobius(&self) -> bool {
        matches!(self, ArgShape::Mobius(_))
    }
}

/// Collects `Σ A[d][s] t^d (1−t)^{−s}` into a series of order `n`.
fn assemble<S: Scalar>(grid: Vec<Vec<S>>, n: usize) -> TruncatedSeries<S> {
    let mut out = TruncatedSeries::zero(n);
    let mut binomials: Vec<Option<TruncatedSeries<S>>> = vec![None; n + 1];
    for (d, row) in grid.into_iter().enumerate() {
        for (s, a) in row.into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let piece = binomials[s]
                .get_or_insert_with(|| binomial_power(&S::one(), &S::from_usize(s), n))
                .clone();
            out = out.add(&piece.scale(&a).shift(d));
        }
    }
    out
}

/// A single-variable series with argument `λt` or `λt/(1−t)`, to order `n`.
pub fn hyper_series_in_t<S: Scalar>(spec: &HyperSpec<S>, arg: &ArgShape<S>, n: usize) -> Result<TruncatedSeries<S>> {
    let terms = spec.terms(n)?;
    let lambda = arg.lambda();
    let mut grid = vec![vec![S::zero(); n + 1]; n + 1];
    let mut pow = S::one();
    for (k, c) in terms.into_iter().enumerate() {
        let s = if arg.is_mobius() { k } else { 0 };
        grid[k][s] = c * pow.clone();
        pow = pow * lambda.clone();
    }
    Ok(assemble(grid, n))
}

/// A multivariable series with each argument `λ_i t` or `λ_i t/(1−t)`.
pub fn multivar_series_in_t<S: Scalar>(
    spec: &MultiVarSpec<S>,
    args: &[ArgShape<S>],
    n: usize,
) -> Result<TruncatedSeries<S>> {
    if args.len() != spec.per_variable.len() {
        return Err(Error::invalid(
            "args",
            format!("{:?} takes {} arguments", spec.kind, spec.per_variable.len()),
        ));
    }
    let powers: Vec<Vec<S>> = args
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(n + 1);
            let mut p = S::one();
            for _ in 0..=n {
                row.push(p.clone());
                p = p * a.lambda().clone();
            }
            row
        })
        .collect();
    let mut grid = vec![vec![S::zero(); n + 1]; n + 1];
    spec.for_each_term(n, |m, c| {
        let mut term = c;
        let mut d = 0;
        let mut s = 0;
        for (i, &mi) in m.iter().enumerate() {
            term = term * powers[i][mi].clone();
            d += mi;
            if args[i].is_mobius() {
                s += mi;
            }
        }
        grid[d][s] = grid[d][s].clone() + term;
    })?;
    Ok(assemble(grid, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::{factorial, q_pochhammer, QLength};
    use crate::scalar::{ExactScalar, NumericScalar};
    use crate::series::{compose, exp_series, mobius_argument, CoefficientStream};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    fn num(v: f64) -> NumericScalar {
        NumericScalar::real(v).unwrap()
    }

    const TRUNC: SumMode = SumMode::Truncated {
        max_terms: 500,
        tol: 1e-16,
    };

    #[test]
    fn zero_argument_gives_one() {
        let spec = HyperSpec::ordinary(vec![r(3, 2), r(-2, 7)], vec![r(5, 3)]);
        assert_eq!(pfq_eval(&spec, &r(0, 1), TRUNC).unwrap().value, r(1, 1));
        let spec = HyperSpec::basic(vec![r(1, 5)], vec![r(2, 3)], r(1, 2)).unwrap();
        assert_eq!(rphis_eval(&spec, &r(0, 1), TRUNC).unwrap().value, r(1, 1));
    }

    #[test]
    fn one_f_zero_is_binomial() {
        let a = num(0.75);
        let z = num(0.3);
        let spec = HyperSpec::ordinary(vec![a], vec![]);
        let v = pfq_eval(&spec, &z, TRUNC).unwrap();
        let expected = 0.7f64.powf(-0.75);
        assert!((v.value.re() - expected).abs() < 1e-14, "{v:?}");
        assert!(v.tail_bound < 1e-14);
    }

    #[test]
    fn one_term_two_f_one() {
        let x = r(7, 2);
        let alpha = r(3, 5);
        let z = r(-2, 9);
        let spec = HyperSpec::ordinary(vec![r(-1, 1), -x.clone()], vec![alpha.clone()]);
        let v = pfq_eval(&spec, &z, SumMode::Terminating).unwrap();
        assert_eq!(v.value, r(1, 1) + x * z / alpha);
        assert_eq!(v.terms_used, 2);
    }

    #[test]
    fn terminating_requires_negative_integer() {
        let spec = HyperSpec::ordinary(vec![r(1, 2)], vec![r(3, 1)]);
        assert!(matches!(
            pfq_eval(&spec, &r(1, 2), SumMode::Terminating),
            Err(Error::NotTerminating(_))
        ));
    }

    #[test]
    fn zero_numerator_shields_denominator_pole() {
        // 2F1(−n+k, −x; −x+k−n+1; z) at x = 0, n − k = 3: denominator −2 would
        // hit zero at term 3, but −x = 0 ends the series first.
        let spec = HyperSpec::ordinary(vec![r(-3, 1), r(0, 1)], vec![r(-2, 1)]);
        assert_eq!(pfq_eval(&spec, &r(5, 1), SumMode::Terminating).unwrap().value, r(1, 1));
        let spec = HyperSpec::ordinary(vec![r(-3, 1), r(1, 2)], vec![r(-2, 1)]);
        assert!(matches!(
            pfq_eval(&spec, &r(5, 1), SumMode::Terminating),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn non_convergent_is_reported() {
        let spec = HyperSpec::ordinary(vec![r(1, 1)], vec![]);
        let err = pfq_eval(
            &spec,
            &r(2, 1),
            SumMode::Truncated {
                max_terms: 40,
                tol: 1e-12,
            },
        );
        assert!(matches!(err, Err(Error::NonConvergent { terms: 40, .. })));
    }

    #[test]
    fn q_binomial_theorem_numeric() {
        let (a, q, z) = (num(0.3), num(0.45), num(0.2));
        let spec = HyperSpec::basic(vec![a], vec![], q).unwrap();
        let v = rphis_eval(&spec, &z, TRUNC).unwrap();
        let expected =
            q_pochhammer(&(a * z), &q, QLength::Infinite).unwrap() / q_pochhammer(&z, &q, QLength::Infinite).unwrap();
        assert!((v.value.value() - expected.value()).norm() < 1e-14);
    }

    #[test]
    fn unit_numerator_terminates_immediately() {
        let spec = HyperSpec::basic(vec![r(1, 1), r(2, 3)], vec![r(1, 5)], r(1, 3)).unwrap();
        assert_eq!(spec.termination(), Some(0));
        let v = rphis_eval(&spec, &r(7, 1), SumMode::Terminating).unwrap();
        assert_eq!(v.value, r(1, 1));
        assert_eq!(v.terms_used, 1);
    }

    #[test]
    fn basic_terminating_matches_direct_sum() {
        // 2φ1(q^{−3}, b; c | q; z) against the displayed definition
        let q = r(1, 3);
        let a = r(27, 1);
        let (b, c, z) = (r(2, 5), r(1, 7), r(3, 2));
        let spec = HyperSpec::basic(vec![a.clone(), b.clone()], vec![c.clone()], q.clone()).unwrap();
        assert_eq!(spec.termination(), Some(3));
        let v = rphis_eval(&spec, &z, SumMode::Terminating).unwrap();
        let mut oracle = r(0, 1);
        for k in 0..=3usize {
            let fin = |x: &ExactScalar| q_pochhammer(x, &q, QLength::Finite(k)).unwrap();
            // 1 + s − r = 0 for 2φ1
            oracle = oracle + fin(&a) * fin(&b) / (fin(&q) * fin(&c)) * z.powu(k);
        }
        assert_eq!(v.value, oracle);
        let numeric = HyperSpec::basic(vec![num(27.0), num(0.4)], vec![num(1.0 / 7.0)], num(1.0 / 3.0)).unwrap();
        assert_eq!(numeric.termination(), Some(3));
    }

    #[test]
    fn basic_sign_factor_for_two_phi_zero() {
        // 2φ0 carries ((−1)^k q^{k(k−1)/2})^{−1}
        let q = r(1, 2);
        let (a, b, z) = (r(8, 1), r(3, 1), r(1, 5));
        let spec = HyperSpec::basic(vec![a.clone(), b.clone()], vec![], q.clone()).unwrap();
        let v = rphis_eval(&spec, &z, SumMode::Terminating).unwrap();
        let mut oracle = r(0, 1);
        for k in 0..=3usize {
            let fin = |x: &ExactScalar| q_pochhammer(x, &q, QLength::Finite(k)).unwrap();
            let sign = if k % 2 == 0 { r(1, 1) } else { r(-1, 1) };
            let extra = (sign * q.powu(k * (k.max(1) - 1) / 2)).recip().unwrap();
            oracle = oracle + fin(&a) * fin(&b) / fin(&q) * extra * z.powu(k);
        }
        assert_eq!(v.value, oracle);
    }

    #[test]
    fn conjugate_pairs_match_complex_parameters() {
        let theta: f64 = 1.1;
        let (a, q, z): (f64, f64, f64) = (0.4, 0.3, 0.5);
        let paired = HyperSpec::basic_with_pairs(
            vec![num(q.powi(-4))],
            vec![(num(a), num(theta.cos()))],
            vec![num(0.2), num(0.1)],
            num(q),
        )
        .unwrap();
        let complex = HyperSpec::basic(
            vec![
                num(q.powi(-4)),
                num(a) * NumericScalar::cis(theta),
                num(a) * NumericScalar::cis(-theta),
            ],
            vec![num(0.2), num(0.1)],
            num(q),
        )
        .unwrap();
        let u = rphis_eval(&paired, &num(z), SumMode::Terminating).unwrap();
        let v = rphis_eval(&complex, &num(z), SumMode::Terminating).unwrap();
        assert!((u.value.value() - v.value.value()).norm() < 1e-12);
    }

    #[test]
    fn multivar_zero_arguments() {
        for (kind, params) in [
            (MultiVarKind::F1, vec![r(1, 2), r(1, 3), r(1, 5), r(7, 4)]),
            (MultiVarKind::Phi2, vec![r(1, 3), r(1, 5), r(7, 4)]),
            (MultiVarKind::FD3, vec![r(1, 2), r(1, 3), r(1, 5), r(2, 9), r(7, 4)]),
            (MultiVarKind::Phi2_3, vec![r(1, 3), r(1, 5), r(2, 9), r(7, 4)]),
        ] {
            let spec = MultiVarSpec::new(kind, params).unwrap();
            let zeros = vec![r(0, 1); kind.variables()];
            assert_eq!(multivar_eval(&spec, &zeros, TRUNC).unwrap().value, r(1, 1));
        }
        assert!(MultiVarSpec::new(MultiVarKind::F1, vec![r(1, 1)]).is_err());
    }

    #[test]
    fn phi2_collapses_to_one_f_one() {
        let (b, bp, g, x) = (num(0.7), num(-1.3), num(2.5), num(0.8));
        let spec = MultiVarSpec::new(MultiVarKind::Phi2, vec![b, bp, g]).unwrap();
        let u = multivar_eval(&spec, &[x, num(0.0)], TRUNC).unwrap();
        let v = pfq_eval(&HyperSpec::ordinary(vec![b], vec![g]), &x, TRUNC).unwrap();
        assert!((u.value.value() - v.value.value()).norm() < 1e-14);
    }

    #[test]
    fn f1_on_the_diagonal() {
        // brute-force double sum against the single 2F1 sum at x = 1/10
        let (a, b, bp, c) = (r(1, 2), r(2, 3), r(-5, 4), r(7, 3));
        let x = r(1, 10);
        let terms = 30usize;
        let mut brute = r(0, 1);
        for m in 0..terms {
            for n in 0..terms - m {
                brute = brute
                    + pochhammer(&a, m + n) * pochhammer(&b, m) * pochhammer(&bp, n)
                        / (pochhammer(&c, m + n) * factorial::<ExactScalar>(m) * factorial::<ExactScalar>(n))
                        * x.powu(m + n);
            }
        }
        let mut single = r(0, 1);
        for k in 0..terms {
            single = single
                + pochhammer(&a, k) * pochhammer(&(b.clone() + bp.clone()), k)
                    / (pochhammer(&c, k) * factorial::<ExactScalar>(k))
                    * x.powu(k);
        }
        // shells of total degree k are exactly the single-sum terms
        assert_eq!(brute, single);
        let spec = MultiVarSpec::new(MultiVarKind::F1, vec![a, b, bp, c]).unwrap();
        let v = multivar_eval(
            &spec,
            &[x.clone(), x],
            SumMode::Truncated {
                max_terms: 400,
                tol: 1e-30,
            },
        )
        .unwrap();
        assert!((v.value.to_f64() - single.to_f64()).abs() < 1e-15);
    }

    #[test]
    fn multivar_terminating_and_poles() {
        // F1(−2, b, b′; c; x, y) is a polynomial of total degree 2
        let spec = MultiVarSpec::new(MultiVarKind::F1, vec![r(-2, 1), r(1, 3), r(1, 2), r(5, 2)]).unwrap();
        assert_eq!(spec.termination(), Some(2));
        let (x, y) = (r(2, 1), r(-3, 1));
        let v = multivar_eval(&spec, &[x.clone(), y.clone()], SumMode::Terminating).unwrap();
        let mut oracle = r(0, 1);
        for m in 0..=2usize {
            for n in 0..=(2 - m) {
                oracle = oracle
                    + pochhammer(&r(-2, 1), m + n) * pochhammer(&r(1, 3), m) * pochhammer(&r(1, 2), n)
                        / (pochhammer(&r(5, 2), m + n) * factorial::<ExactScalar>(m) * factorial::<ExactScalar>(n))
                        * x.powu(m)
                        * y.powu(n);
            }
        }
        assert_eq!(v.value, oracle);
        // Φ2(−1, −2; γ; x, y) terminates through its per-variable numerators
        let spec = MultiVarSpec::new(MultiVarKind::Phi2, vec![r(-1, 1), r(-2, 1), r(1, 2)]).unwrap();
        assert_eq!(spec.termination(), Some(3));
        let pole = MultiVarSpec::new(MultiVarKind::F1, vec![r(-3, 1), r(1, 3), r(1, 2), r(-1, 1)]).unwrap();
        assert!(matches!(
            multivar_eval(&pole, &[x, y], SumMode::Terminating),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn one_f_one_series_matches_stream() {
        let x = r(4, 1);
        let alpha = r(3, 2);
        let kappa = r(-5, 7);
        let spec = HyperSpec::ordinary(vec![-x.clone()], vec![alpha.clone()]);
        let s = hyper_series_in_t(&spec, &ArgShape::Linear(kappa.clone()), 10).unwrap();
        let oracle = TruncatedSeries::from_fn(10, |k| {
            pochhammer(&-x.clone(), k) / (pochhammer(&alpha, k) * factorial::<ExactScalar>(k)) * kappa.powu(k)
        });
        assert_eq!(s, oracle);
    }

    #[test]
    fn mobius_argument_uses_composition() {
        let (g, x, alpha) = (r(5, 4), r(4, 1), r(3, 2));
        let lambda = r(3, 2);
        let spec = HyperSpec::ordinary(vec![g.clone(), -x.clone()], vec![alpha]);
        let s = hyper_series_in_t(&spec, &ArgShape::Mobius(lambda.clone()), 9).unwrap();
        let terms = spec.terms(9).unwrap();
        let composed = compose(&CoefficientStream::from_terms(terms), &mobius_argument(&lambda, 9), 9).unwrap();
        assert_eq!(s, composed);
    }

    #[test]
    fn phi2_series_constant_term() {
        let (x, alpha, c, d) = (r(4, 1), r(3, 2), r(2, 5), r(3, 7));
        let spec = MultiVarSpec::new(MultiVarKind::Phi2, vec![x.clone(), -x, alpha]).unwrap();
        let s = multivar_series_in_t(
            &spec,
            &[ArgShape::Linear(r(1, 1) / c), ArgShape::Linear(r(1, 1) / d)],
            8,
        )
        .unwrap();
        assert_eq!(s.coeff(0), r(1, 1));
    }

    #[test]
    fn phi2_equal_arguments_give_exponential_product() {
        // Φ2(β, β′; β+β′; u, u) = e^u
        let (b, bp) = (r(2, 3), r(5, 7));
        let spec = MultiVarSpec::new(MultiVarKind::Phi2, vec![b.clone(), bp.clone(), b + bp]).unwrap();
        let s = multivar_series_in_t(&spec, &[ArgShape::Linear(r(1, 1)), ArgShape::Linear(r(1, 1))], 10).unwrap();
        assert_eq!(s, exp_series(&r(1, 1), 10));
    }

    #[test]
    fn f1_zero_second_argument_is_two_f_one() {
        let (a, b, bp, c) = (r(1, 2), r(-3, 4), r(2, 3), r(9, 5));
        let spec = MultiVarSpec::new(MultiVarKind::F1, vec![a.clone(), b.clone(), bp, c.clone()]).unwrap();
        let s = multivar_series_in_t(&spec, &[ArgShape::Mobius(r(2, 3)), ArgShape::Linear(r(0, 1))], 8).unwrap();
        let t = hyper_series_in_t(&HyperSpec::ordinary(vec![a, b], vec![c]), &ArgShape::Mobius(r(2, 3)), 8).unwrap();
        assert_eq!(s, t);
    }

    fn small_rational() -> impl Strategy<Value = ExactScalar> {
        (-30i64..30, 1i64..8).prop_map(|(n, d)| r(n, d))
    }

    fn non_integer() -> impl Strategy<Value = ExactScalar> {
        (-30i64..30, 2i64..8)
            .prop_filter("non-integer", |(n, d)| n % d != 0)
            .prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn parameter_permutations(
            n in 0i64..7,
            a in small_rational(),
            b in small_rational(),
            c in non_integer(),
            d in non_integer(),
            z in small_rational(),
        ) {
            let one = HyperSpec::ordinary(vec![r(-n, 1), a.clone(), b.clone()], vec![c.clone(), d.clone()]);
            let two = HyperSpec::ordinary(vec![b, r(-n, 1), a], vec![d, c]);
            let u = pfq_eval(&one, &z, SumMode::Terminating).unwrap().value;
            let v = pfq_eval(&two, &z, SumMode::Terminating).unwrap().value;
            prop_assert_eq!(u, v);
        }

        #[test]
        fn series_evaluation_matches_partial_sums(
            a in small_rational(),
            b in non_integer(),
            lambda in small_rational(),
            t0 in (1i64..5).prop_map(|d| r(1, 10 * d)),
        ) {
            let order = 8;
            let spec = HyperSpec::ordinary(vec![a], vec![b]);
            let s = hyper_series_in_t(&spec, &ArgShape::Linear(lambda.clone()), order).unwrap();
            let z = lambda * t0.clone();
            let partial: ExactScalar = spec
                .terms(order)
                .unwrap()
                .into_iter()
                .enumerate()
                .fold(r(0, 1), |acc, (k, c)| acc + c * z.powu(k));
            prop_assert_eq!(s.evaluate_at(&t0), partial);
        }

        #[test]
        fn f1_with_zero_second_argument(
            a in small_rational(),
            b in small_rational(),
            bp in small_rational(),
            c in non_integer(),
            lambda in small_rational(),
        ) {
            let spec = MultiVarSpec::new(MultiVarKind::F1, vec![a.clone(), b.clone(), bp, c.clone()]).unwrap();
            let s = multivar_series_in_t(&spec, &[ArgShape::Linear(lambda.clone()), ArgShape::Linear(r(0, 1))], 7).unwrap();
            let t = hyper_series_in_t(&HyperSpec::ordinary(vec![a, b], vec![c]), &ArgShape::Linear(lambda), 7).unwrap();
            prop_assert_eq!(s, t);
        }
    }
}
