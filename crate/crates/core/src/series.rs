//! Truncated power series in a single variable `t`.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pochhammer::binomial_coefficient;
use crate::scalar::{ExactScalar, FieldKind, NumericScalar, Scalar, Tolerance};

/// `c_0 + c_1 t + … + c_N t^N`; the order `N` is fixed at construction.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Takes `c_0..c_N`. An empty vector is rejected.
    pub fn new(coefficients: Vec<S>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("coefficients", "a series needs at least c_0"));
        }
        Ok(TruncatedSeries { coefficients })
    }

    /// Pads with zeros or drops trailing terms to hit `order` exactly.
    pub fn from_prefix(mut coefficients: Vec<S>, order: usize) -> Self {
        coefficients.resize(order + 1, S::zero());
        TruncatedSeries { coefficients }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> S) -> Self {
        TruncatedSeries {
            coefficients: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(S::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    pub fn constant(c: S, order: usize) -> Self {
        Self::from_prefix(vec![c], order)
    }

    /// `λ t^k` truncated at `order`.
    pub fn monomial(lambda: S, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coefficients[k] = lambda;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn field(&self) -> FieldKind {
        S::KIND
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<S> {
        self.coefficients
    }

    /// Coefficient of `t^n`, zero beyond the order.
    pub fn coeff(&self, n: usize) -> S {
        self.coefficients.get(n).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |k| self.coefficients[k].clone() + rhs.coefficients[k].clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |k| self.coefficients[k].clone() - rhs.coefficients[k].clone())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coefficients.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coefficients: out }
    }

    pub fn scale(&self, lambda: &S) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| c.clone() * lambda.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// `f(λt)`: multiplies `c_n` by `λ^n`.
    pub fn dilate(&self, lambda: &S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coefficients.len());
        for c in &self.coefficients {
            out.push(c.clone() * pow.clone());
            pow = pow * lambda.clone();
        }
        TruncatedSeries { coefficients: out }
    }

    /// `t^k f(t)` at the same order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |j| {
            if j >= k {
                self.coefficients[j - k].clone()
            } else {
                S::zero()
            }
        })
    }

    /// Multiplicative inverse, defined when `c_0 ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coefficients[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = c0.recip()?;
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + self.coefficients[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(TruncatedSeries { coefficients: out })
    }

    /// `f^k` by repeated squaring, at the same order.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[f]_M`: keeps `c_0..c_M`.
    pub fn truncate_to(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::OrderExceeded {
                requested: m,
                available: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coefficients: self.coefficients[..=m].to_vec(),
        })
    }

    /// Horner evaluation of the polynomial `c_0 + … + c_N t^N`.
    pub fn evaluate_at(&self, t: &S) -> S {
        self.coefficients
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(f).collect(),
        }
    }

    pub fn to_numeric(&self) -> TruncatedSeries<NumericScalar> {
        self.map(|c| NumericScalar::from_complex(c.to_complex()).expect("finite coefficient"))
    }

    /// Coefficientwise comparison up to the shared order.
    pub fn compare(&self, other: &Self, tol: Tolerance) -> SeriesComparison {
        let n = self.order().min(other.order());
        let mut deviation: f64 = 0.0;
        let mut first_failing_order = None;
        for k in 0..=n {
            let (a, b) = (&self.coefficients[k], &other.coefficients[k]);
            let ok = match S::KIND {
                FieldKind::Exact => a == b,
                FieldKind::Numeric => a.approx_eq(b, tol),
            };
            if a != b {
                deviation = deviation.max((a.to_complex() - b.to_complex()).norm());
            }
            if !ok && first_failing_order.is_none() {
                first_failing_order = Some(k);
            }
        }
        SeriesComparison {
            order: n,
            deviation,
            first_failing_order,
        }
    }
}

/// Result of [`TruncatedSeries::compare`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesComparison {
    pub order: usize,
    /// Largest coefficient difference modulus.
    pub deviation: f64,
    pub first_failing_order: Option<usize>,
}

impl SeriesComparison {
    pub fn agrees(&self) -> bool {
        self.first_failing_order.is_none()
    }
}

impl<S: fmt::Debug> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(order={}, ", self.coefficients.len() - 1)?;
        f.debug_list().entries(self.coefficients.iter()).finish()?;
        f.write_str(")")
    }
}

impl<S: Scalar> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() && self.order() > 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·t")?,
                _ => write!(f, "({c})·t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<S: Scalar + Serialize> Serialize for TruncatedSeries<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut st = serializer.serialize_struct("TruncatedSeries", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("field", &S::KIND)?;
        st.serialize_field("coefficients", &self.coefficients)?;
        st.end()
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for TruncatedSeries<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw<S> {
            order: usize,
            field: FieldKind,
            coefficients: Vec<S>,
        }
        let raw: Raw<S> = Raw::deserialize(deserializer)?;
        if raw.field != S::KIND {
            return Err(de::Error::custom(format!(
                "series field is {}, expected {}",
                raw.field,
                S::KIND
            )));
        }
        if raw.coefficients.len() != raw.order + 1 {
            return Err(de::Error::custom(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coefficients.len()
            )));
        }
        Ok(TruncatedSeries {
            coefficients: raw.coefficients,
        })
    }
}

/// Arithmetic selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Scale,
}

/// Right operand of [`series_arith`].
#[derive(Debug, Clone)]
pub enum Operand<S> {
    Series(TruncatedSeries<S>),
    Scalar(S),
}

pub fn series_arith<S: Scalar>(op: SeriesOp, lhs: &TruncatedSeries<S>, rhs: &Operand<S>) -> Result<TruncatedSeries<S>> {
    match (op, rhs) {
        (SeriesOp::Add, Operand::Series(r)) => Ok(lhs.add(r)),
        (SeriesOp::Sub, Operand::Series(r)) => Ok(lhs.sub(r)),
        (SeriesOp::Mul, Operand::Series(r)) => Ok(lhs.mul(r)),
        (SeriesOp::Scale | SeriesOp::Mul, Operand::Scalar(c)) => Ok(lhs.scale(c)),
        (SeriesOp::Scale, Operand::Series(_)) => Err(Error::invalid("rhs", "scale takes a scalar operand")),
        (SeriesOp::Add | SeriesOp::Sub, Operand::Scalar(c)) => {
            let c = if op == SeriesOp::Sub { -c.clone() } else { c.clone() };
            Ok(lhs.add(&TruncatedSeries::constant(c, lhs.order())))
        }
    }
}

type NextFn<S> = dyn Fn(usize, &S) -> Result<S> + Send + Sync;

/// A coefficient sequence given by `a_0` and the ratio `a_{k+1}/a_k`.
///
/// Once a term vanishes the ratio is no longer consulted, so terminating
/// series never evaluate a pole past their last term.
#[derive(Clone)]
pub struct CoefficientStream<S> {
    first: S,
    next: Arc<NextFn<S>>,
}

impl<S: Scalar> CoefficientStream<S> {
    pub fn new(first: S, ratio: impl Fn(usize) -> Result<S> + Send + Sync + 'static) -> Self {
        CoefficientStream {
            first,
            next: Arc::new(move |k, term: &S| {
                if term.is_zero() {
                    Ok(S::zero())
                } else {
                    Ok(term.clone() * ratio(k)?)
                }
            }),
        }
    }

    /// Stream of an explicit finite list, zero afterwards.
    pub fn from_terms(terms: Vec<S>) -> Self {
        let first = terms.first().cloned().unwrap_or_else(S::zero);
        CoefficientStream {
            first,
            next: Arc::new(move |k, _: &S| Ok(terms.get(k + 1).cloned().unwrap_or_else(S::zero))),
        }
    }

    /// Geometric stream `1, 1, 1, …`.
    pub fn geometric() -> Self {
        Self::new(S::one(), |_| Ok(S::one()))
    }

    /// The binomial stream `(a)_k/k!` of `(1−u)^{−a}`.
    pub fn binomial(a: S) -> Self {
        Self::new(S::one(), move |k| {
            Ok((a.clone() + S::from_usize(k)) / S::from_usize(k + 1))
        })
    }

    /// `a_k ↦ a_k λ^k`.
    pub fn dilated(&self, lambda: S) -> Self {
        let next = Arc::clone(&self.next);
        CoefficientStream {
            first: self.first.clone(),
            next: Arc::new(move |k, term: &S| {
                // term here is a_k λ^k; undo the scaling to step the base stream
                let power = lambda.powu(k);
                if power.is_zero() {
                    return Ok(S::zero());
                }
                let base = term.clone() / power.clone();
                Ok(next(k, &base)? * power * lambda.clone())
            }),
        }
    }

    /// `a_0..a_n`.
    pub fn terms(&self, n: usize) -> Result<Vec<S>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut term = self.first.clone();
        out.push(term.clone());
        for k in 0..n {
            term = (self.next)(k, &term)?;
            out.push(term.clone());
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Debug for CoefficientStream<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientStream")
            .field("first", &self.first)
            .finish_non_exhaustive()
    }
}

/// `(1 − κt)^{−a}` to order `n`.
pub fn binomial_power<S: Scalar>(kappa: &S, a: &S, n: usize) -> TruncatedSeries<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = S::one();
    out.push(c.clone());
    for k in 0..n {
        c = c * kappa.clone() * (a.clone() + S::from_usize(k)) / S::from_usize(k + 1);
        out.push(c.clone());
    }
    TruncatedSeries { coefficients: out }
}

/// `e^{κt}` to order `n`.
pub fn exp_series<S: Scalar>(kappa: &S, n: usize) -> TruncatedSeries<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = S::one();
    out.push(c.clone());
    for k in 0..n {
        c = c * kappa.clone() / S::from_usize(k + 1);
        out.push(c.clone());
    }
    TruncatedSeries { coefficients: out }
}

/// `Σ_k a_k · inner^k` truncated at `n`, by Horner accumulation.
pub fn compose<S: Scalar>(
    outer: &CoefficientStream<S>,
    inner: &TruncatedSeries<S>,
    n: usize,
) -> Result<TruncatedSeries<S>> {
    if !inner.coeff(0).is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let inner = TruncatedSeries::from_prefix(inner.coefficients.clone(), n);
    let terms = outer.terms(n)?;
    compose_terms(&terms, &inner)
}

/// Horner step shared with callers that already hold the outer terms.
pub fn compose_terms<S: Scalar>(terms: &[S], inner: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>> {
    if !inner.coeff(0).is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let n = inner.order();
    let mut acc = TruncatedSeries::zero(n);
    for a in terms.iter().take(n + 1).rev() {
        acc = acc.mul(inner);
        acc.coefficients[0] = acc.coefficients[0].clone() + a.clone();
    }
    Ok(acc)
}

/// `Π_j (1 − κ_j t)` truncated at `n`.
pub fn linear_factor_product<S: Scalar>(kappas: &[S], n: usize) -> TruncatedSeries<S> {
    let mut acc: TruncatedSeries<S> = TruncatedSeries::one(n);
    for kappa in kappas {
        let mut next = acc.clone();
        for k in 1..=n {
            next.coefficients[k] = next.coefficients[k].clone() - kappa.clone() * acc.coefficients[k - 1].clone();
        }
        acc = next;
    }
    acc
}

/// `Σ_n κ^n (a;q)_n/(q;q)_n t^n`, the expansion of `(aκt;q)_∞/(κt;q)_∞`.
pub fn q_binomial_series<S: Scalar>(a: &S, kappa: &S, q: &S, n: usize) -> Result<TruncatedSeries<S>> {
    if q.is_zero() {
        return Err(Error::invalid("q", "must be nonzero"));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut c = S::one();
    out.push(c.clone());
    let mut qk = S::one();
    for k in 0..n {
        let den = S::one() - qk.clone() * q.clone();
        if den.is_zero() {
            return Err(Error::Pole(format!("(q;q)_{} vanishes", k + 1)));
        }
        c = c * kappa.clone() * (S::one() - a.clone() * qk.clone()) / den;
        out.push(c.clone());
        qk = qk * q.clone();
    }
    Ok(TruncatedSeries { coefficients: out })
}

/// `(κt;q)_∞^{sign}` for `sign = ±1`, from the q-binomial theorem.
pub fn q_infinite_product_series<S: Scalar>(kappa: &S, q: &S, n: usize, inverse: bool) -> Result<TruncatedSeries<S>> {
    if inverse {
        return q_binomial_series(&S::zero(), kappa, q, n);
    }
    // (κt;q)_∞ = Σ (−1)^k q^{k(k−1)/2} κ^k t^k/(q;q)_k.
    let base = q_binomial_series(&S::zero(), kappa, q, n)?;
    let mut sign_q = S::one();
    let mut qk = S::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for c in base.coefficients {
        coeffs.push(c * sign_q.clone());
        sign_q = -(sign_q * qk.clone());
        qk = qk * q.clone();
    }
    Ok(TruncatedSeries { coefficients: coeffs })
}

/// `(κt;q)_m` for a finite length, as a polynomial truncated at `n`.
pub fn q_finite_product_series<S: Scalar>(kappa: &S, q: &S, m: usize, n: usize) -> TruncatedSeries<S> {
    let mut kappas = Vec::with_capacity(m);
    let mut k = kappa.clone();
    for _ in 0..m {
        kappas.push(k.clone());
        k = k * q.clone();
    }
    linear_factor_product(&kappas, n)
}

/// `t/(1−t)` scaled by `λ`, to order `n`.
pub fn mobius_argument<S: Scalar>(lambda: &S, n: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(n, |k| if k == 0 { S::zero() } else { lambda.clone() })
}

/// Binomial expansion of `(1 + u)^m` for a non-negative integer `m`.
pub fn integer_binomial<S: Scalar>(m: usize, n: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(n, |k| binomial_coefficient(m, k))
}

/// A series in whichever field the caller picked at runtime.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AnySeries {
    Exact(TruncatedSeries<ExactScalar>),
    Numeric(TruncatedSeries<NumericScalar>),
}

impl AnySeries {
    pub fn field(&self) -> FieldKind {
        match self {
            AnySeries::Exact(_) => FieldKind::Exact,
            AnySeries::Numeric(_) => FieldKind::Numeric,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnySeries::Exact(s) => s.order(),
            AnySeries::Numeric(s) => s.order(),
        }
    }

    pub fn arith(&self, op: SeriesOp, rhs: &AnySeries) -> Result<AnySeries> {
        match (self, rhs) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => {
                series_arith(op, a, &Operand::Series(b.clone())).map(AnySeries::Exact)
            }
            (AnySeries::Numeric(a), AnySeries::Numeric(b)) => {
                series_arith(op, a, &Operand::Series(b.clone())).map(AnySeries::Numeric)
            }
            _ => Err(Error::FieldMismatch(format!(
                "cannot combine {} and {} series",
                self.field(),
                rhs.field()
            ))),
        }
    }

    /// Coefficients rendered per field: `"p/q"` strings or `[re, im]` pairs.
    pub fn coefficient_strings(&self) -> Vec<String> {
        match self {
            AnySeries::Exact(s) => s.coefficients().iter().map(|c| c.to_string()).collect(),
            AnySeries::Numeric(s) => s.coefficients().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl fmt::Display for AnySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnySeries::Exact(s) => s.fmt(f),
            AnySeries::Numeric(s) => s.fmt(f),
        }
    }
}
