//! Identity verification: generating functions, connection relations and
//! orthogonality sums, checked coefficientwise or by summation.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connection::{closed_form, complete_relation_params, meixner_connection_coeffs, Relation};
use crate::error::{Error, Result};
use crate::families::{krawtchouk, meixner, ParamSet};
use crate::hyper::{hyper_series_in_t, multivar_series_in_t, ArgShape, HyperSpec, MultiVarKind, MultiVarSpec};
use crate::pochhammer::{binomial_coefficient, factorial, pochhammer};
use crate::scalar::{parse_scalar, ExactScalar, FieldKind, FieldTag, NumericScalar, Scalar};
use crate::series::{binomial_power, exp_series, TruncatedSeries};

/// What a registered identity compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// Both sides of a generating-function identity as series in `t`.
    GeneratingFunction,
    /// A specialized right-hand side against the displayed reduced form.
    Chain,
    /// A degenerate connection relation applied to a generating function.
    Invariance,
    /// Reconstruction of the source polynomial from a connection table.
    Connection,
    /// A weighted sum over the orthogonality measure.
    Orthogonality,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub kind: CaseKind,
    pub parameters: &'static [&'static str],
    /// Both sides are rational for rational parameters.
    pub exact: bool,
    pub summary: &'static str,
}

macro_rules! identity {
    ($id:expr, $kind:ident, [$($p:expr),*], $exact:expr, $summary:expr) => {
        IdentityInfo { id: $id, kind: CaseKind::$kind, parameters: &[$($p),*], exact: $exact, summary: $summary }
    };
}

static REGISTRY: &[IdentityInfo] = &[
    identity!(
        "meixner-1f1-beta-d",
        GeneratingFunction,
        ["x", "alpha", "beta", "c", "d"],
        true,
        "1F1(-x;alpha;t(1-c)/c) in M_n(x;beta,d) with 1F1(beta+n;alpha+n;.) coefficients"
    ),
    identity!(
        "meixner-exp-1f1-beta",
        GeneratingFunction,
        ["x", "alpha", "beta", "c"],
        true,
        "e^t 1F1(-x;alpha;t(1-c)/c) in M_n(x;beta,c) with 1F1(alpha-beta;alpha+n;t) coefficients"
    ),
    identity!(
        "meixner-phi2-d",
        GeneratingFunction,
        ["x", "alpha", "c", "d"],
        true,
        "e^t 1F1(-x;alpha;t(1-c)/c) in M_n(x;alpha,d) with Phi2 coefficients"
    ),
    identity!(
        "meixner-phi2-3-beta-d",
        GeneratingFunction,
        ["x", "alpha", "beta", "c", "d"],
        true,
        "e^t 1F1(-x;alpha;t(1-c)/c) in M_n(x;beta,d) with Phi2^(3) coefficients"
    ),
    identity!(
        "meixner-2f1-beta",
        GeneratingFunction,
        ["x", "alpha", "beta", "c", "gamma"],
        true,
        "(1-t)^-gamma 2F1(gamma,-x;alpha;t(1-c)/(c(1-t))) in M_n(x;beta,c)"
    ),
    identity!(
        "meixner-2f1-beta-d",
        GeneratingFunction,
        ["x", "alpha", "beta", "c", "d", "gamma"],
        true,
        "(1-t)^-gamma 2F1(gamma,-x;alpha;t(1-c)/(c(1-t))) in M_n(x;beta,d)"
    ),
    identity!(
        "meixner-f1-d",
        GeneratingFunction,
        ["x", "alpha", "c", "d", "gamma"],
        true,
        "(1-t)^-gamma 2F1(gamma,-x;alpha;.) in M_n(x;alpha,d) with Appell F1 coefficients"
    ),
    identity!(
        "meixner-fd3-beta-d",
        GeneratingFunction,
        ["x", "alpha", "beta", "c", "d", "gamma"],
        true,
        "(1-t)^-gamma 2F1(gamma,-x;alpha;.) in M_n(x;beta,d) with Lauricella F_D^(3) coefficients"
    ),
    identity!(
        "krawtchouk-exp-q-m",
        GeneratingFunction,
        ["x", "p", "q", "N", "M"],
        true,
        "[e^t 1F1(-x;-N;-t/p)]_N in K_n(x;q,M)"
    ),
    identity!(
        "krawtchouk-exp-m",
        GeneratingFunction,
        ["x", "p", "N", "M"],
        true,
        "[e^t 1F1(-x;-N;-t/p)]_N in K_n(x;p,M)"
    ),
    identity!(
        "krawtchouk-exp-q",
        GeneratingFunction,
        ["x", "p", "q", "N"],
        true,
        "[e^t 1F1(-x;-N;-t/p)]_N in K_n(x;q,N)"
    ),
    identity!(
        "krawtchouk-2f1-q-m",
        GeneratingFunction,
        ["x", "p", "q", "N", "M", "gamma"],
        true,
        "[(1-t)^-gamma 2F1(gamma,-x;-N;t/(p(t-1)))]_N in K_n(x;q,M)"
    ),
    identity!(
        "krawtchouk-2f1-m",
        GeneratingFunction,
        ["x", "p", "N", "M", "gamma"],
        true,
        "[(1-t)^-gamma 2F1(gamma,-x;-N;t/(p(t-1)))]_N in K_n(x;p,M)"
    ),
    identity!(
        "krawtchouk-2f1-q",
        GeneratingFunction,
        ["x", "p", "q", "N", "gamma"],
        true,
        "[(1-t)^-gamma 2F1(gamma,-x;-N;t/(p(t-1)))]_N in K_n(x;q,N)"
    ),
    identity!(
        "chain-meixner-1f1-d-equals-c",
        Chain,
        ["x", "alpha", "beta", "c"],
        true,
        "e^t times the d = c right side of meixner-1f1-beta-d equals that of meixner-exp-1f1-beta"
    ),
    identity!(
        "chain-meixner-2f1-d-equals-c",
        Chain,
        ["x", "alpha", "beta", "c", "gamma"],
        true,
        "d = c right side of meixner-2f1-beta-d equals that of meixner-2f1-beta"
    ),
    identity!(
        "chain-krawtchouk-exp-q-equals-p",
        Chain,
        ["x", "p", "N", "M"],
        true,
        "q = p right side of krawtchouk-exp-q-m equals that of krawtchouk-exp-m"
    ),
    identity!(
        "chain-krawtchouk-exp-m-equals-n",
        Chain,
        ["x", "p", "q", "N"],
        true,
        "M = N right side of krawtchouk-exp-q-m equals that of krawtchouk-exp-q"
    ),
    identity!(
        "chain-krawtchouk-2f1-q-equals-p",
        Chain,
        ["x", "p", "N", "M", "gamma"],
        true,
        "q = p right side of krawtchouk-2f1-q-m equals that of krawtchouk-2f1-m"
    ),
    identity!(
        "chain-krawtchouk-2f1-m-equals-n",
        Chain,
        ["x", "p", "q", "N", "gamma"],
        true,
        "M = N right side of krawtchouk-2f1-q-m equals that of krawtchouk-2f1-q"
    ),
    identity!(
        "invariance-meixner-alpha",
        Invariance,
        ["x", "alpha", "c", "gamma", "generating_function"],
        true,
        "alpha_to_beta with beta = alpha applied to a Meixner generating function"
    ),
    identity!(
        "invariance-meixner-c",
        Invariance,
        ["x", "alpha", "c", "gamma", "generating_function"],
        true,
        "type_c_to_d with d = c applied to a Meixner generating function"
    ),
    identity!(
        "invariance-krawtchouk-p",
        Invariance,
        ["x", "p", "N", "gamma", "generating_function"],
        true,
        "p_to_q_same_N with q = p applied to a Krawtchouk generating function"
    ),
    identity!(
        "invariance-krawtchouk-n",
        Invariance,
        ["x", "p", "N", "gamma", "generating_function"],
        true,
        "same_p_N_to_M with M = N applied to a Krawtchouk generating function"
    ),
    identity!(
        "connection-alpha_c_to_beta_d",
        Connection,
        ["alpha", "beta", "c", "d"],
        true,
        "M_n(x;alpha,c) in M_k(x;beta,d)"
    ),
    identity!(
        "connection-same_alpha_c_to_d",
        Connection,
        ["alpha", "c", "d"],
        true,
        "M_n(x;alpha,c) in M_k(x;alpha,d)"
    ),
    identity!(
        "connection-alpha_to_beta",
        Connection,
        ["alpha", "beta", "c"],
        true,
        "M_n(x;alpha,c) in M_k(x;beta,c)"
    ),
    identity!(
        "connection-type_c_to_d",
        Connection,
        ["alpha", "c", "d"],
        true,
        "M_n(x;alpha,c) in M_k(x;alpha,d), x-dependent coefficients"
    ),
    identity!(
        "connection-type_alpha_c",
        Connection,
        ["alpha", "beta", "c", "d"],
        true,
        "M_n(x;alpha,c) in M_k(x;beta,d), x-dependent coefficients"
    ),
    identity!(
        "connection-p_N_to_q_M",
        Connection,
        ["p", "q", "N", "M"],
        true,
        "K_n(x;p,N) in K_k(x;q,M)"
    ),
    identity!(
        "connection-p_to_q_same_N",
        Connection,
        ["p", "q", "N"],
        true,
        "K_n(x;p,N) in K_k(x;q,N)"
    ),
    identity!(
        "connection-same_p_N_to_M",
        Connection,
        ["p", "N", "M"],
        true,
        "K_n(x;p,N) in K_k(x;p,M)"
    ),
    identity!(
        "meixner-orthogonality",
        Orthogonality,
        ["alpha", "c"],
        false,
        "sum_x M_n M_m (alpha)_x c^x/x! = kappa_n delta_nm for n, m <= order"
    ),
    identity!(
        "meixner-exp-sum-beta",
        Orthogonality,
        ["alpha", "beta", "c", "t", "n"],
        false,
        "sum_x 1F1(-x;alpha;t(1-c)/c) M_n(x;beta,c) (beta)_x c^x/x!"
    ),
    identity!(
        "meixner-exp-sum-beta-d",
        Orthogonality,
        ["alpha", "beta", "c", "d", "t", "n"],
        false,
        "sum_x 1F1(-x;alpha;t(1-c)/c) M_n(x;beta,d) (beta)_x d^x/x!"
    ),
    identity!(
        "meixner-2f1-sum-beta",
        Orthogonality,
        ["alpha", "beta", "c", "gamma", "t", "n"],
        false,
        "sum_x 2F1(gamma,-x;alpha;t(1-c)/(c(1-t))) M_n(x;beta,c) (beta)_x c^x/x!"
    ),
    identity!(
        "meixner-2f1-sum-beta-d",
        Orthogonality,
        ["alpha", "beta", "c", "d", "gamma", "t", "n"],
        false,
        "sum_x 2F1(gamma,-x;alpha;t(1-c)/(c(1-t))) M_n(x;beta,d) (beta)_x d^x/x!"
    ),
    identity!(
        "krawtchouk-orthogonality",
        Orthogonality,
        ["p", "N"],
        true,
        "sum_x binom(N,x) p^x (1-p)^(N-x) K_m K_n"
    ),
    identity!(
        "krawtchouk-exp-sum",
        Orthogonality,
        ["p", "q", "N", "M", "t", "n"],
        true,
        "sum_x binom(M,x) q^x (1-q)^(M-x) [e^t 1F1(-x;-N;-t/p)]_N K_n(x;q,M)"
    ),
    identity!(
        "krawtchouk-2f1-sum",
        Orthogonality,
        ["p", "q", "N", "M", "gamma", "t", "n"],
        true,
        "sum_x binom(M,x) q^x (1-q)^(M-x) [(1-t)^-gamma 2F1(gamma,-x;-N;t/(p(t-1)))]_N K_n(x;q,M)"
    ),
];

/// The closed list of verifiable identities.
pub fn registry() -> &'static [IdentityInfo] {
    REGISTRY
}

pub fn identity_info(id: &str) -> Result<&'static IdentityInfo> {
    REGISTRY
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Which right-hand side to build where the displayed statement and the
/// re-derived one differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    #[default]
    Verified,
    AsDisplayed,
}

impl Form {
    fn is_verified(&self) -> bool {
        *self == Form::Verified
    }
}

/// Summation cutoff for infinite sums over `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPolicy {
    pub x_max: usize,
}

impl Default for TailPolicy {
    fn default() -> Self {
        TailPolicy { x_max: 300 }
    }
}

/// One identity instance. Parameter values are literals (`p/q` for the exact
/// field) and are parsed into the case's field when it runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: String,
    pub params: BTreeMap<String, String>,
    /// Series order, degree bound or `n_max`, depending on the kind.
    pub order: usize,
    pub field: FieldTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailPolicy>,
    /// Abscissae for connection cases.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<String>,
    #[serde(default, skip_serializing_if = "Form::is_verified")]
    pub form: Form,
}

impl IdentityCase {
    pub fn new(id: &str, params: &[(&str, &str)], order: usize, field: FieldTag) -> Self {
        IdentityCase {
            id: id.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            order,
            field,
            tail: None,
            samples: Vec::new(),
            form: Form::Verified,
        }
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn with_tail(mut self, x_max: usize) -> Self {
        self.tail = Some(TailPolicy { x_max });
        self
    }

    pub fn with_samples(mut self, samples: &[&str]) -> Self {
        self.samples = samples.iter().map(|s| s.to_string()).collect();
        self
    }

    fn scalar<S: Scalar>(&self, name: &str) -> Result<S> {
        let src = self
            .params
            .get(name)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
        parse_scalar(src).map_err(|e| Error::invalid(name, e.to_string()))
    }

    fn count(&self, name: &str) -> Result<usize> {
        let v: ExactScalar = self.scalar(name)?;
        v.as_nonneg_int()
            .ok_or_else(|| Error::invalid(name, format!("must be a non-negative integer, got {v}")))
    }

    fn text(&self, name: &str) -> Result<&str> {
        self.params
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    /// Checks the id, the parameter names and the field.
    pub fn validate(&self) -> Result<&'static IdentityInfo> {
        let info = identity_info(&self.id)?;
        for name in self.params.keys() {
            if !info.parameters.contains(&name.as_str()) {
                return Err(Error::invalid(
                    name,
                    format!(
                        "not a parameter of {}; expected {}",
                        info.id,
                        info.parameters.join(", ")
                    ),
                ));
            }
        }
        self.field.validate()?;
        if self.field.kind == FieldKind::Exact && !info.exact {
            return Err(Error::UnsupportedMode(format!("{} needs the numeric field", info.id)));
        }
        Ok(info)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: IdentityCase,
    pub status: Status,
    pub deviation: Option<f64>,
    pub first_failing_order: Option<usize>,
    pub terms_summed: Option<usize>,
    pub tail_bound: Option<f64>,
    /// Wall time; left out unless timing was requested so reports compare
    /// byte for byte.
    pub millis: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    fn blank(case: &IdentityCase, status: Status) -> Self {
        VerificationReport {
            case: case.clone(),
            status,
            deviation: None,
            first_failing_order: None,
            terms_summed: None,
            tail_bound: None,
            millis: None,
            error: None,
        }
    }

    fn failed(case: &IdentityCase, err: Error) -> Self {
        VerificationReport {
            error: Some(err.to_string()),
            ..Self::blank(case, Status::Error)
        }
    }
}

/// Runs a case and reports; builder errors become status `error`.
pub fn verify(case: &IdentityCase) -> VerificationReport {
    match case.validate() {
        Err(e) => VerificationReport::failed(case, e),
        Ok(info) => {
            let run = match info.kind {
                CaseKind::GeneratingFunction | CaseKind::Chain | CaseKind::Invariance => verify_gf_identity(case),
                CaseKind::Connection => verify_connection_case(case),
                CaseKind::Orthogonality => verify_orthogonality_sum(case),
            };
            run.unwrap_or_else(|e| VerificationReport::failed(case, e))
        }
    }
}

/// Series comparison of [`build_sides`].
pub fn verify_gf_identity(case: &IdentityCase) -> Result<VerificationReport> {
    case.validate()?;
    match case.field.kind {
        FieldKind::Exact => {
            let (l, r) = build_sides::<ExactScalar>(case)?;
            Ok(compare_sides(case, &l, &r))
        }
        FieldKind::Numeric => {
            let (l, r) = build_sides::<NumericScalar>(case)?;
            Ok(compare_sides(case, &l, &r))
        }
    }
}

/// Coefficientwise verdict for a pair of sides.
pub fn compare_sides<S: Scalar>(
    case: &IdentityCase,
    lhs: &TruncatedSeries<S>,
    rhs: &TruncatedSeries<S>,
) -> VerificationReport {
    let cmp = lhs.compare(rhs, case.field.tolerance());
    VerificationReport {
        deviation: Some(cmp.deviation),
        first_failing_order: cmp.first_failing_order,
        ..VerificationReport::blank(case, if cmp.agrees() { Status::Pass } else { Status::Fail })
    }
}

fn ord<S: Scalar>(nums: Vec<S>, dens: Vec<S>, arg: ArgShape<S>, n: usize) -> Result<TruncatedSeries<S>> {
    hyper_series_in_t(&HyperSpec::ordinary(nums, dens), &arg, n)
}

fn lin<S: Scalar>(l: S) -> ArgShape<S> {
    ArgShape::Linear(l)
}

/// `Σ_{n≤N} t^n · term(n)` where `term(n)` has order `N − n`.
fn graded_sum<S: Scalar>(
    order: usize,
    mut term: impl FnMut(usize) -> Result<TruncatedSeries<S>>,
) -> Result<TruncatedSeries<S>> {
    let mut acc = vec![S::zero(); order + 1];
    for n in 0..=order {
        let s = term(n)?;
        for (j, c) in s.coefficients().iter().enumerate().take(order - n + 1) {
            acc[n + j] = acc[n + j].clone() + c.clone();
        }
    }
    TruncatedSeries::new(acc)
}

struct MeixnerArgs<S> {
    x: S,
    alpha: S,
    beta: S,
    c: S,
    d: S,
    gamma: S,
}

impl<S: Scalar> MeixnerArgs<S> {
    fn read(case: &IdentityCase) -> Result<Self> {
        let get = |name: &str, fallback: Option<&str>| -> Result<S> {
            match (case.params.contains_key(name), fallback) {
                (true, _) | (false, None) => case.scalar(name),
                (false, Some(f)) => case.scalar(f),
            }
        };
        let alpha = get("alpha", None)?;
        let c = get("c", None)?;
        Ok(MeixnerArgs {
            x: get("x", None)?,
            beta: get("beta", Some("alpha"))?,
            d: get("d", Some("c"))?,
            gamma: if case.params.contains_key("gamma") {
                case.scalar("gamma")?
            } else {
                S::one()
            },
            alpha,
            c,
        })
    }

    fn z(&self) -> Result<S> {
        let one = S::one();
        (self.d.clone() * (one.clone() - self.c.clone())).checked_div(&(self.c.clone() * (one - self.d.clone())))
    }

    fn lhs_1f1(&self, n: usize) -> Result<TruncatedSeries<S>> {
        let arg = (S::one() - self.c.clone()).checked_div(&self.c)?;
        ord(vec![-self.x.clone()], vec![self.alpha.clone()], lin(arg), n)
    }

    fn lhs_exp_1f1(&self, n: usize) -> Result<TruncatedSeries<S>> {
        Ok(exp_series(&S::one(), n).mul(&self.lhs_1f1(n)?))
    }

    fn lhs_2f1(&self, n: usize) -> Result<TruncatedSeries<S>> {
        let arg = (S::one() - self.c.clone()).checked_div(&self.c)?;
        let f = ord(
            vec![self.gamma.clone(), -self.x.clone()],
            vec![self.alpha.clone()],
            ArgShape::Mobius(arg),
            n,
        )?;
        Ok(binomial_power(&S::one(), &self.gamma, n).mul(&f))
    }

    fn lhs_binomial(&self, n: usize) -> Result<TruncatedSeries<S>> {
        let a = binomial_power(&self.c.recip()?, &-self.x.clone(), n);
        Ok(a.mul(&binomial_power(&S::one(), &(self.x.clone() + self.alpha.clone()), n)))
    }

    fn m(&self, n: usize, beta: &S, d: &S) -> Result<S> {
        meixner(n, &self.x, beta, d)
    }

    /// `(β)_n/((α)_n n!)`
    fn ratio(&self, n: usize) -> Result<S> {
        let den = pochhammer(&self.alpha, n) * factorial::<S>(n);
        pochhammer(&self.beta, n).checked_div(&den)
    }

    fn rhs_1f1_beta_d(&self, order: usize) -> Result<TruncatedSeries<S>> {
        let z = self.z()?;
        graded_sum(order, |n| {
            let w = self.ratio(n)? * z.powu(n) * self.m(n, &self.beta, &self.d)?;
            let nn = S::from_usize(n);
            let f = ord(
                vec![self.beta.clone() + nn.clone()],
                vec![self.alpha.clone() + nn],
                lin(-z.clone()),
                order - n,
            )?;
            Ok(f.scale(&w))
        })
    }

    fn rhs_exp_1f1_beta(&self, order: usize) -> Result<TruncatedSeries<S>> {
        graded_sum(order, |n| {
            let w = self.ratio(n)? * self.m(n, &self.beta, &self.c)?;
            let f = ord(
                vec![self.alpha.clone() - self.beta.clone()],
                vec![self.alpha.clone() + S::from_usize(n)],
                lin(S::one()),
                order - n,
            )?;
            Ok(f.scale(&w))
        })
    }

    /// `(−x, x)` as verified, `(x, −x)` as displayed.
    fn x_pair(&self, form: Form) -> (S, S) {
        match form {
            Form::Verified => (-self.x.clone(), self.x.clone()),
            Form::AsDisplayed => (self.x.clone(), -self.x.clone()),
        }
    }

    fn inverse_args(&self, with_t: bool) -> Result<Vec<ArgShape<S>>> {
        let mut args = vec![lin(self.c.recip()?), lin(self.d.recip()?)];
        if with_t {
            args.push(lin(S::one()));
        }
        Ok(args)
    }

    fn rhs_phi2_d(&self, order: usize, form: Form) -> Result<TruncatedSeries<S>> {
        let (a, b) = self.x_pair(form);
        graded_sum(order, |n| {
            let w = self.m(n, &self.alpha, &self.d)?.checked_div(&factorial::<S>(n))?;
            let spec = MultiVarSpec::new(
                MultiVarKind::Phi2,
                vec![a.clone(), b.clone(), self.alpha.clone() + S::from_usize(n)],
            )?;
            Ok(multivar_series_in_t(&spec, &self.inverse_args(false)?, order - n)?.scale(&w))
        })
    }

    fn rhs_phi2_3_beta_d(&self, order: usize, form: Form) -> Result<TruncatedSeries<S>> {
        let (a, b) = self.x_pair(form);
        graded_sum(order, |n| {
            let w = self.ratio(n)? * self.m(n, &self.beta, &self.d)?;
            let spec = MultiVarSpec::new(
                MultiVarKind::Phi2_3,
                vec![
                    a.clone(),
                    b.clone(),
                    self.alpha.clone() - self.beta.clone(),
                    self.alpha.clone() + S::from_usize(n),
                ],
            )?;
            Ok(multivar_series_in_t(&spec, &self.inverse_args(true)?, order - n)?.scale(&w))
        })
    }

    fn rhs_2f1_beta(&self, order: usize) -> Result<TruncatedSeries<S>> {
        graded_sum(order, |n| {
            let nn = S::from_usize(n);
            let w = pochhammer(&self.gamma, n) * self.ratio(n)? * self.m(n, &self.beta, &self.c)?;
            let f = ord(
                vec![self.gamma.clone() + nn.clone(), self.alpha.clone() - self.beta.clone()],
                vec![self.alpha.clone() + nn],
                lin(S::one()),
                order - n,
            )?;
            Ok(f.scale(&w))
        })
    }

    /// The displayed form lacks the `(1 − t)^{−γ}` carried by the left side.
    fn rhs_2f1_beta_d(&self, order: usize, form: Form) -> Result<TruncatedSeries<S>> {
        let z = self.z()?;
        graded_sum(order, |n| {
            let nn = S::from_usize(n);
            let w = pochhammer(&self.gamma, n) * self.ratio(n)? * z.powu(n) * self.m(n, &self.beta, &self.d)?;
            let f = ord(
                vec![self.gamma.clone() + nn.clone(), self.beta.clone() + nn.clone()],
                vec![self.alpha.clone() + nn.clone()],
                ArgShape::Mobius(-z.clone()),
                order - n,
            )?;
            let power = match form {
                Form::Verified => self.gamma.clone() + nn,
                Form::AsDisplayed => nn,
            };
            Ok(f.mul(&binomial_power(&S::one(), &power, order - n)).scale(&w))
        })
    }

    fn rhs_f1_d(&self, order: usize, form: Form) -> Result<TruncatedSeries<S>> {
        let (a, b) = self.x_pair(form);
        graded_sum(order, |n| {
            let nn = S::from_usize(n);
            let w = pochhammer(&self.gamma, n) * self.m(n, &self.alpha, &self.d)? / factorial::<S>(n);
            let spec = MultiVarSpec::new(
                MultiVarKind::F1,
                vec![
                    self.gamma.clone() + nn.clone(),
                    a.clone(),
                    b.clone(),
                    self.alpha.clone() + nn,
                ],
            )?;
            Ok(multivar_series_in_t(&spec, &self.inverse_args(false)?, order - n)?.scale(&w))
        })
    }

    fn rhs_fd3_beta_d(&self, order: usize, form: Form) -> Result<TruncatedSeries<S>> {
        let (a, b) = self.x_pair(form);
        graded_sum(order, |n| {
            let nn = S::from_usize(n);
            let w = pochhammer(&self.gamma, n) * self.ratio(n)? * self.m(n, &self.beta, &self.d)?;
            let spec = MultiVarSpec::new(
                MultiVarKind::FD3,
                vec![
                    self.gamma.clone() + nn.clone(),
                    a.clone(),
                    b.clone(),
                    self.alpha.clone() - self.beta.clone(),
                    self.alpha.clone() + nn,
                ],
            )?;
            Ok(multivar_series_in_t(&spec, &self.inverse_args(true)?, order - n)?.scale(&w))
        })
    }

    fn with_d_equal_c(&self) -> Self {
        MeixnerArgs {
            d: self.c.clone(),
            ..self.clone()
        }
    }
}

impl<S: Scalar> Clone for MeixnerArgs<S> {
    fn clone(&self) -> Self {
        MeixnerArgs {
            x: self.x.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
            gamma: self.gamma.clone(),
        }
    }
}

#[derive(Clone)]
struct KrawtchoukArgs<S> {
    x: S,
    p: S,
    q: S,
    big_n: usize,
    big_m: usize,
    gamma: S,
}

impl<S: Scalar> KrawtchoukArgs<S> {
    fn read(case: &IdentityCase) -> Result<Self> {
        let p: S = case.scalar("p")?;
        let big_n = case.count("N")?;
        let big_m = if case.params.contains_key("M") {
            case.count("M")?
        } else {
            big_n
        };
        if big_n > big_m {
            return Err(Error::invalid(
                "M",
                format!("needs N <= M, got N = {big_n}, M = {big_m}"),
            ));
        }
        if p.is_zero() {
            return Err(Error::invalid("p", "must be nonzero"));
        }
        let q = if case.params.contains_key("q") {
            case.scalar("q")?
        } else {
            p.clone()
        };
        if q.is_zero() {
            return Err(Error::invalid("q", "must be nonzero"));
        }
        Ok(KrawtchoukArgs {
            x: if case.params.contains_key("x") {
                case.scalar("x")?
            } else {
                S::zero()
            },
            p,
            q,
            big_n,
            big_m,
            gamma: if case.params.contains_key("gamma") {
                case.scalar("gamma")?
            } else {
                S::one()
            },
        })
    }

    fn neg(m: usize) -> S {
        -S::from_usize(m)
    }

    fn qp(&self) -> Result<S> {
        self.q.checked_div(&self.p)
    }

    fn k(&self, n: usize, q: &S, big_m: usize) -> Result<S> {
        krawtchouk(n, &self.x, q, big_m)
    }

    /// `[e^t 1F1(−x;−N;−t/p)]_N` at `x`.
    fn lhs_exp_at(&self, x: &S) -> Result<TruncatedSeries<S>> {
        let n = self.big_n;
        let f = ord(vec![-x.clone()], vec![Self::neg(n)], lin(-self.p.recip()?), n)?;
        Ok(exp_series(&S::one(), n).mul(&f))
    }

    /// `[(1−t)^{−γ} 2F1(γ,−x;−N;t/(p(t−1)))]_N` at `x`.
    fn lhs_2f1_at(&self, x: &S) -> Result<TruncatedSeries<S>> {
        let n = self.big_n;
        let f = ord(
            vec![self.gamma.clone(), -x.clone()],
            vec![Self::neg(n)],
            ArgShape::Mobius(-self.p.recip()?),
            n,
        )?;
        Ok(binomial_power(&S::one(), &self.gamma, n).mul(&f))
    }

    /// `(1 − ((1−p)/p) t)^x (1+t)^{N−x}` through `t^N`.
    fn lhs_binomial(&self) -> Result<TruncatedSeries<S>> {
        let n = self.big_n;
        let kappa = (S::one() - self.p.clone()).checked_div(&self.p)?;
        let a = binomial_power(&kappa, &-self.x.clone(), n);
        Ok(a.mul(&binomial_power(&-S::one(), &(self.x.clone() - S::from_usize(n)), n)))
    }

    /// Bracket of the exponential identity: `[e^t 1F1(n−M;n−N;−qt/p)]_{N−n}`.
    fn exp_bracket(&self, n: usize) -> Result<TruncatedSeries<S>> {
        let m = self.big_n - n;
        let nn = S::from_usize(n);
        let f = ord(
            vec![nn.clone() + Self::neg(self.big_m)],
            vec![nn + Self::neg(self.big_n)],
            lin(-self.qp()?),
            m,
        )?;
        Ok(exp_series(&S::one(), m).mul(&f))
    }

    /// `[(1−t)^{−γ−n} 2F1(γ+n, n−M; n−N; −qt/(p(1−t)))]_{N−n}`.
    fn hyp_bracket(&self, n: usize) -> Result<TruncatedSeries<S>> {
        let m = self.big_n - n;
        let nn = S::from_usize(n);
        let f = ord(
            vec![self.gamma.clone() + nn.clone(), nn.clone() + Self::neg(self.big_m)],
            vec![nn.clone() + Self::neg(self.big_n)],
            ArgShape::Mobius(-self.qp()?),
            m,
        )?;
        Ok(f.mul(&binomial_power(&S::one(), &(self.gamma.clone() + nn), m)))
    }

    fn weight(&self, n: usize) -> S {
        pochhammer(&Self::neg(self.big_m), n) / (pochhammer(&Self::neg(self.big_n), n) * factorial::<S>(n))
    }

    fn rhs_exp_q_m(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let w = self.weight(n) * self.qp()?.powu(n) * self.k(n, &self.q, self.big_m)?;
            Ok(self.exp_bracket(n)?.scale(&w))
        })
    }

    fn rhs_exp_m(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let w = self.weight(n) * self.k(n, &self.p, self.big_m)?;
            let nn = S::from_usize(n);
            let f = ord(
                vec![S::from_usize(self.big_m - self.big_n)],
                vec![nn + Self::neg(self.big_n)],
                lin(S::one()),
                self.big_n - n,
            )?;
            Ok(f.scale(&w))
        })
    }

    fn rhs_exp_q(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let w = self.qp()?.powu(n) * self.k(n, &self.q, self.big_n)? / factorial::<S>(n);
            Ok(exp_series(&(S::one() - self.qp()?), self.big_n - n).scale(&w))
        })
    }

    fn rhs_2f1_q_m(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let w =
                self.qp()?.powu(n) * self.weight(n) * pochhammer(&self.gamma, n) * self.k(n, &self.q, self.big_m)?;
            Ok(self.hyp_bracket(n)?.scale(&w))
        })
    }

    fn rhs_2f1_m(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let nn = S::from_usize(n);
            let w = self.weight(n) * pochhammer(&self.gamma, n) * self.k(n, &self.p, self.big_m)?;
            let f = ord(
                vec![self.gamma.clone() + nn.clone(), S::from_usize(self.big_m - self.big_n)],
                vec![nn + Self::neg(self.big_n)],
                lin(S::one()),
                self.big_n - n,
            )?;
            Ok(f.scale(&w))
        })
    }

    fn rhs_2f1_q(&self) -> Result<TruncatedSeries<S>> {
        graded_sum(self.big_n, |n| {
            let w =
                pochhammer(&self.gamma, n) / factorial::<S>(n) * self.qp()?.powu(n) * self.k(n, &self.q, self.big_n)?;
            let power = self.gamma.clone() + S::from_usize(n);
            Ok(binomial_power(&(S::one() - self.qp()?), &power, self.big_n - n).scale(&w))
        })
    }

    fn with_q_equal_p(&self) -> Self {
        KrawtchoukArgs {
            q: self.p.clone(),
            ..self.clone()
        }
    }

    fn with_m_equal_n(&self) -> Self {
        KrawtchoukArgs {
            big_m: self.big_n,
            ..self.clone()
        }
    }
}

/// Pads or cuts a Krawtchouk polynomial identity to the case order.
fn at_order<S: Scalar>(s: TruncatedSeries<S>, order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_prefix(s.into_coefficients(), order)
}

/// Left and right sides of a generating-function, chain or invariance case.
pub fn build_sides<S: Scalar>(case: &IdentityCase) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
    let info = case.validate()?;
    let n = case.order;
    let form = case.form;
    if info.kind == CaseKind::Invariance {
        return build_invariance(case);
    }
    if info.id.contains("meixner") {
        let m = MeixnerArgs::<S>::read(case)?;
        check_meixner_domain(&m)?;
        return Ok(match info.id {
            "meixner-1f1-beta-d" => (m.lhs_1f1(n)?, m.rhs_1f1_beta_d(n)?),
            "meixner-exp-1f1-beta" => (m.lhs_exp_1f1(n)?, m.rhs_exp_1f1_beta(n)?),
            "meixner-phi2-d" => (m.lhs_exp_1f1(n)?, m.rhs_phi2_d(n, form)?),
            "meixner-phi2-3-beta-d" => (m.lhs_exp_1f1(n)?, m.rhs_phi2_3_beta_d(n, form)?),
            "meixner-2f1-beta" => (m.lhs_2f1(n)?, m.rhs_2f1_beta(n)?),
            "meixner-2f1-beta-d" => (m.lhs_2f1(n)?, m.rhs_2f1_beta_d(n, form)?),
            "meixner-f1-d" => (m.lhs_2f1(n)?, m.rhs_f1_d(n, form)?),
            "meixner-fd3-beta-d" => (m.lhs_2f1(n)?, m.rhs_fd3_beta_d(n, form)?),
            "chain-meixner-1f1-d-equals-c" => {
                let special = m.with_d_equal_c().rhs_1f1_beta_d(n)?;
                (exp_series(&S::one(), n).mul(&special), m.rhs_exp_1f1_beta(n)?)
            }
            "chain-meixner-2f1-d-equals-c" => (m.with_d_equal_c().rhs_2f1_beta_d(n, form)?, m.rhs_2f1_beta(n)?),
            other => return Err(Error::UnknownIdentity(other.to_string())),
        });
    }
    let k = KrawtchoukArgs::<S>::read(case)?;
    let x = k.x.clone();
    let (l, r) = match info.id {
        "krawtchouk-exp-q-m" => (k.lhs_exp_at(&x)?, k.rhs_exp_q_m()?),
        "krawtchouk-exp-m" => (k.lhs_exp_at(&x)?, k.rhs_exp_m()?),
        "krawtchouk-exp-q" => (k.lhs_exp_at(&x)?, k.rhs_exp_q()?),
        "krawtchouk-2f1-q-m" => (k.lhs_2f1_at(&x)?, k.rhs_2f1_q_m()?),
        "krawtchouk-2f1-m" => (k.lhs_2f1_at(&x)?, k.rhs_2f1_m()?),
        "krawtchouk-2f1-q" => (k.lhs_2f1_at(&x)?, k.rhs_2f1_q()?),
        "chain-krawtchouk-exp-q-equals-p" => (k.with_q_equal_p().rhs_exp_q_m()?, k.rhs_exp_m()?),
        "chain-krawtchouk-exp-m-equals-n" => (k.with_m_equal_n().rhs_exp_q_m()?, k.rhs_exp_q()?),
        "chain-krawtchouk-2f1-q-equals-p" => (k.with_q_equal_p().rhs_2f1_q_m()?, k.rhs_2f1_m()?),
        "chain-krawtchouk-2f1-m-equals-n" => (k.with_m_equal_n().rhs_2f1_q_m()?, k.rhs_2f1_q()?),
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    Ok((at_order(l, n), at_order(r, n)))
}

fn check_meixner_domain<S: Scalar>(m: &MeixnerArgs<S>) -> Result<()> {
    use crate::families::{check_domain, Domain};
    check_domain("alpha", &m.alpha, Domain::NotNonpositiveInteger)?;
    check_domain("beta", &m.beta, Domain::NotNonpositiveInteger)?;
    check_domain("c", &m.c, Domain::NotZeroOne)?;
    check_domain("d", &m.d, Domain::NotZeroOne)
}

/// Generating function `Σ w_n P_n t^n` with each `P_n` replaced by its
/// expansion under a degenerate relation, against the closed form.
fn build_invariance<S: Scalar>(case: &IdentityCase) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
    let which = case.text("generating_function")?;
    let order = case.order;
    if case.id.starts_with("invariance-meixner") {
        let m = MeixnerArgs::<S>::read(case)?;
        check_meixner_domain(&m)?;
        let (lhs, weight): (TruncatedSeries<S>, Box<dyn Fn(usize) -> S>) = match which {
            "binomial" => {
                let a = m.alpha.clone();
                (
                    m.lhs_binomial(order)?,
                    Box::new(move |n| pochhammer(&a, n) / factorial::<S>(n)),
                )
            }
            "exponential" => (m.lhs_exp_1f1(order)?, Box::new(|n| S::one() / factorial::<S>(n))),
            "hypergeometric" => {
                let g = m.gamma.clone();
                (
                    m.lhs_2f1(order)?,
                    Box::new(move |n| pochhammer(&g, n) / factorial::<S>(n)),
                )
            }
            other => return Err(unknown_gf(other)),
        };
        let params = ParamSet::new()
            .with("alpha", m.alpha.clone())
            .with("beta", m.alpha.clone())
            .with("c", m.c.clone())
            .with("d", m.c.clone());
        let (relation, x) = if case.id == "invariance-meixner-alpha" {
            (Relation::AlphaToBeta, None)
        } else {
            (Relation::TypeCToD, Some(&m.x))
        };
        let rhs = graded_sum(order, |n| {
            let mut v = S::zero();
            for k in 0..=n {
                v = v + meixner_connection_coeffs(relation, &params, n, k, x)? * m.m(k, &m.alpha, &m.c)?;
            }
            Ok(TruncatedSeries::constant(weight(n) * v, order - n))
        })?;
        return Ok((lhs, rhs));
    }
    let k = KrawtchoukArgs::<S>::read(case)?;
    let big_n = k.big_n;
    let (lhs, weight): (TruncatedSeries<S>, Box<dyn Fn(usize) -> S>) = match which {
        "binomial" => (
            k.lhs_binomial()?,
            Box::new(move |n| binomial_coefficient::<S>(big_n, n)),
        ),
        "exponential" => (k.lhs_exp_at(&k.x)?, Box::new(|n| S::one() / factorial::<S>(n))),
        "hypergeometric" => {
            let g = k.gamma.clone();
            (
                k.lhs_2f1_at(&k.x)?,
                Box::new(move |n| pochhammer(&g, n) / factorial::<S>(n)),
            )
        }
        other => return Err(unknown_gf(other)),
    };
    let relation = if case.id == "invariance-krawtchouk-p" {
        Relation::PToQSameN
    } else {
        Relation::SamePNToM
    };
    let nn = S::from_usize(big_n);
    let params = complete_relation_params(
        relation,
        &ParamSet::new()
            .with("p", k.p.clone())
            .with("q", k.p.clone())
            .with("N", nn.clone())
            .with("M", nn),
    )?;
    let table = closed_form(relation, &params, big_n)?;
    let rhs = graded_sum(big_n, |n| {
        let mut v = S::zero();
        for j in 0..=n {
            v = v + table.coefficient(j, n, None)? * k.k(j, &k.p, big_n)?;
        }
        Ok(TruncatedSeries::constant(weight(n) * v, big_n - n))
    })?;
    Ok((at_order(lhs, order), at_order(rhs, order)))
}

fn unknown_gf(name: &str) -> Error {
    Error::invalid(
        "generating_function",
        format!("expected binomial | exponential | hypergeometric, got {name}"),
    )
}

/// Default abscissae for connection cases.
pub const CONNECTION_SAMPLES: [&str; 5] = ["0", "1", "5/2", "4", "-3/7"];

/// Exact (or within tolerance) reconstruction of every `P_n`, `n ≤ n_max`, at
/// every sample.
pub fn verify_connection_relation(
    relation: Relation,
    params: &BTreeMap<String, String>,
    n_max: usize,
    samples: &[&str],
    field: FieldTag,
) -> VerificationReport {
    let case = IdentityCase {
        id: format!("connection-{}", relation.id()),
        params: params.clone(),
        order: n_max,
        field,
        tail: None,
        samples: samples.iter().map(|s| s.to_string()).collect(),
        form: Form::Verified,
    };
    verify(&case)
}

fn verify_connection_case(case: &IdentityCase) -> Result<VerificationReport> {
    case.validate()?;
    let relation: Relation = case.id.trim_start_matches("connection-").parse()?;
    match case.field.kind {
        FieldKind::Exact => connection_report::<ExactScalar>(case, relation),
        FieldKind::Numeric => connection_report::<NumericScalar>(case, relation),
    }
}

fn connection_report<S: Scalar>(case: &IdentityCase, relation: Relation) -> Result<VerificationReport> {
    let mut params = ParamSet::new();
    for (k, v) in &case.params {
        params.set(k, parse_scalar::<S>(v).map_err(|e| Error::invalid(k, e.to_string()))?);
    }
    let mut n_max = case.order;
    if relation.family() == "krawtchouk" {
        n_max = n_max.min(params.integer("N")?);
    }
    let expansion = closed_form(relation, &params, n_max)?;
    let samples: Vec<S> = if case.samples.is_empty() {
        CONNECTION_SAMPLES
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<_>>()?
    } else {
        case.samples.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()?
    };
    let tol = case.field.tolerance();
    let mut worst = 0.0f64;
    let mut first_failing = None;
    for n in 0..=n_max {
        for x in &samples {
            let lhs = crate::families::family_eval(&expansion.family, n, x, &expansion.source)?;
            let rhs = expansion.reconstruct(n, x)?;
            let ok = match S::KIND {
                FieldKind::Exact => lhs == rhs,
                FieldKind::Numeric => lhs.approx_eq(&rhs, tol),
            };
            worst = worst.max((lhs - rhs).modulus());
            if !ok && first_failing.is_none() {
                first_failing = Some(n);
            }
        }
    }
    Ok(VerificationReport {
        deviation: Some(worst),
        first_failing_order: first_failing,
        ..VerificationReport::blank(
            case,
            if first_failing.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
        )
    })
}

/// Running sum of `T_x`, `x = 0..=x_max`, with a geometric bound on the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: NumericScalar,
    pub terms: usize,
    pub tail_bound: f64,
}

/// Terms whose ratio has settled below one are summed until the geometric
/// tail estimate drops under machine precision relative to the sum, or up to
/// `x_max`. The tail estimate uses the largest ratio among the last few terms.
pub fn sum_over_x(x_max: usize, mut term: impl FnMut(usize) -> Result<NumericScalar>) -> Result<SeriesSum> {
    const WINDOW: usize = 8;
    let mut sum = NumericScalar::real(0.0)?;
    let mut recent: Vec<f64> = Vec::new();
    let mut tail = f64::INFINITY;
    let mut terms = 0;
    for x in 0..=x_max {
        let t = term(x)?;
        sum = sum + t;
        terms = x + 1;
        recent.push(t.modulus());
        if recent.len() > WINDOW + 1 {
            recent.remove(0);
        }
        if recent.len() == WINDOW + 1 {
            let last = *recent.last().expect("window is full");
            let ratio = recent
                .windows(2)
                .map(|w| {
                    if w[0] == 0.0 {
                        if w[1] == 0.0 {
                            0.0
                        } else {
                            f64::INFINITY
                        }
                    } else {
                        w[1] / w[0]
                    }
                })
                .fold(0.0, f64::max);
            tail = crate::hyper::geometric_tail(last, ratio);
            if tail <= f64::EPSILON * sum.modulus() {
                break;
            }
        }
    }
    Ok(SeriesSum {
        value: sum,
        terms,
        tail_bound: tail,
    })
}

/// Orthogonality cases: Meixner sums run numerically with a tail bound;
/// Krawtchouk sums are finite.
pub fn verify_orthogonality_sum(case: &IdentityCase) -> Result<VerificationReport> {
    case.validate()?;
    if case.id.starts_with("krawtchouk") {
        return match case.field.kind {
            FieldKind::Exact => krawtchouk_sum_report::<ExactScalar>(case),
            FieldKind::Numeric => krawtchouk_sum_report::<NumericScalar>(case),
        };
    }
    meixner_sum_report(case)
}

fn num(case: &IdentityCase, name: &str) -> Result<NumericScalar> {
    case.scalar::<NumericScalar>(name)
}

fn real_power(base: NumericScalar, e: NumericScalar) -> NumericScalar {
    base.powc(&e)
}

fn meixner_sum_report(case: &IdentityCase) -> Result<VerificationReport> {
    let x_max = case.tail.unwrap_or_default().x_max;
    let tol = case.field.tolerance();
    let one = NumericScalar::real(1.0)?;
    let nx = |x: usize| NumericScalar::from_usize(x);
    if case.id == "meixner-orthogonality" {
        let (alpha, c) = (num(case, "alpha")?, num(case, "c")?);
        check_probability("c", &c)?;
        let top = case.order;
        let mut worst = 0.0f64;
        let mut worst_tail = 0.0f64;
        let mut terms = 0;
        let mut inconclusive = false;
        let mut failed = false;
        for n in 0..=top {
            for m in 0..=top {
                let s = sum_over_x(x_max, |x| {
                    let w = pochhammer(&alpha, x) * c.powu(x) / factorial::<NumericScalar>(x);
                    Ok(meixner(n, &nx(x), &alpha, &c)? * meixner(m, &nx(x), &alpha, &c)? * w)
                })?;
                let expected = if n == m {
                    factorial::<NumericScalar>(n) / (c.powu(n) * real_power(one - c, alpha) * pochhammer(&alpha, n))
                } else {
                    NumericScalar::real(0.0)?
                };
                let dev = (s.value - expected).modulus();
                let allowance = tol.allowance(s.value.value(), expected.value());
                worst = worst.max(dev);
                worst_tail = worst_tail.max(s.tail_bound);
                terms = terms.max(s.terms);
                if s.tail_bound > allowance {
                    inconclusive = true;
                } else if dev + s.tail_bound > allowance {
                    failed = true;
                }
            }
        }
        let status = if failed {
            Status::Fail
        } else if inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        return Ok(VerificationReport {
            deviation: Some(worst),
            terms_summed: Some(terms),
            tail_bound: Some(worst_tail),
            ..VerificationReport::blank(case, status)
        });
    }

    let alpha = num(case, "alpha")?;
    let beta = num(case, "beta")?;
    let c = num(case, "c")?;
    let d = if case.params.contains_key("d") {
        num(case, "d")?
    } else {
        c
    };
    let t = num(case, "t")?;
    let n = case.count("n")?;
    check_probability("c", &c)?;
    check_probability("d", &d)?;
    let gamma = if case.params.contains_key("gamma") {
        num(case, "gamma")?
    } else {
        one
    };
    let lhs_arg = t * (one - c) / c;
    let mobius_arg = lhs_arg / (one - t);
    let kernel = |x: usize| -> Result<NumericScalar> {
        let xs = nx(x);
        let spec = match case.id.as_str() {
            "meixner-exp-sum-beta" | "meixner-exp-sum-beta-d" => HyperSpec::ordinary(vec![-xs], vec![alpha]),
            _ => HyperSpec::ordinary(vec![gamma, -xs], vec![alpha]),
        };
        let z = if spec.numerators().len() == 1 {
            lhs_arg
        } else {
            mobius_arg
        };
        Ok(crate::hyper::pfq_eval(&spec, &z, crate::hyper::SumMode::Terminating)?.value)
    };
    let s = sum_over_x(x_max, |x| {
        let w = pochhammer(&beta, x) * d.powu(x) / factorial::<NumericScalar>(x);
        Ok(kernel(x)? * meixner(n, &nx(x), &beta, &d)? * w)
    })?;
    let nn = NumericScalar::from_usize(n);
    let f11 = |a: NumericScalar, b: NumericScalar, z: NumericScalar| -> Result<NumericScalar> {
        let spec = HyperSpec::ordinary(vec![a], vec![b]);
        Ok(crate::hyper::pfq_eval(&spec, &z, truncated())?.value)
    };
    let f21 = |a: NumericScalar, b: NumericScalar, cc: NumericScalar, z: NumericScalar| -> Result<NumericScalar> {
        let spec = HyperSpec::ordinary(vec![a, b], vec![cc]);
        Ok(crate::hyper::pfq_eval(&spec, &z, truncated())?.value)
    };
    let rhs = match case.id.as_str() {
        "meixner-exp-sum-beta" => {
            t.powu(n) * (-t).exp() / (real_power(one - c, beta) * pochhammer(&alpha, n) * c.powu(n))
                * f11(alpha - beta, alpha + nn, t)?
        }
        "meixner-exp-sum-beta-d" => {
            let z = d * t * (one - c) / (c * (one - d));
            let base = t.powu(n) * (one - c).powu(n)
                / (c.powu(n) * real_power(one - d, nn + beta) * pochhammer(&alpha, n))
                * f11(beta + nn, alpha + nn, -z)?;
            match case.form {
                Form::Verified => base,
                Form::AsDisplayed => base * (-t).exp(),
            }
        }
        "meixner-2f1-sum-beta" => {
            real_power(one - t, gamma) * pochhammer(&gamma, n) * t.powu(n)
                / (real_power(one - c, beta) * pochhammer(&alpha, n) * c.powu(n))
                * f21(alpha - beta, gamma + nn, alpha + nn, t)?
        }
        "meixner-2f1-sum-beta-d" => {
            let z = d * t * (one - c) / (c * (one - d) * (one - t));
            pochhammer(&gamma, n) / (real_power(one - d, nn + beta) * pochhammer(&alpha, n))
                * mobius_arg.powu(n)
                * f21(gamma + nn, beta + nn, alpha + nn, -z)?
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    let dev = (s.value - rhs).modulus();
    let allowance = tol.allowance(s.value.value(), rhs.value());
    let status = if s.tail_bound > allowance {
        Status::Inconclusive
    } else if dev + s.tail_bound <= allowance {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        deviation: Some(dev),
        terms_summed: Some(s.terms),
        tail_bound: Some(s.tail_bound),
        ..VerificationReport::blank(case, status)
    })
}

fn truncated() -> crate::hyper::SumMode {
    crate::hyper::SumMode::Truncated {
        max_terms: 2000,
        tol: 1e-17,
    }
}

fn check_probability(name: &str, v: &NumericScalar) -> Result<()> {
    if v.im() != 0.0 || !(v.re() > 0.0 && v.re() < 1.0) {
        return Err(Error::invalid(
            name,
            format!("the weighted sum needs {name} in (0, 1), got {v}"),
        ));
    }
    Ok(())
}

fn krawtchouk_sum_report<S: Scalar>(case: &IdentityCase) -> Result<VerificationReport> {
    let tol = case.field.tolerance();
    let one = S::one();
    let judge = |pairs: Vec<(S, S)>, terms: usize| {
        let mut worst = 0.0f64;
        let mut ok = true;
        for (a, b) in &pairs {
            worst = worst.max((a.clone() - b.clone()).modulus());
            ok &= match S::KIND {
                FieldKind::Exact => a == b,
                FieldKind::Numeric => a.approx_eq(b, tol),
            };
        }
        VerificationReport {
            deviation: Some(worst),
            terms_summed: Some(terms),
            tail_bound: Some(0.0),
            ..VerificationReport::blank(case, if ok { Status::Pass } else { Status::Fail })
        }
    };
    if case.id == "krawtchouk-orthogonality" {
        let p: S = case.scalar("p")?;
        let big_n = case.count("N")?;
        let top = case.order.min(big_n);
        let mut pairs = Vec::new();
        for n in 0..=top {
            for m in 0..=top {
                let mut acc = S::zero();
                for x in 0..=big_n {
                    let xs = S::from_usize(x);
                    let w = binomial_coefficient::<S>(big_n, x) * p.powu(x) * (one.clone() - p.clone()).powu(big_n - x);
                    acc = acc + w * krawtchouk(n, &xs, &p, big_n)? * krawtchouk(m, &xs, &p, big_n)?;
                }
                let expected = if n == m {
                    let sign = if n % 2 == 0 { one.clone() } else { -one.clone() };
                    sign * factorial::<S>(n) / pochhammer(&-S::from_usize(big_n), n)
                        * ((one.clone() - p.clone()).checked_div(&p)?).powu(n)
                } else {
                    S::zero()
                };
                pairs.push((acc, expected));
            }
        }
        return Ok(judge(pairs, big_n + 1));
    }
    let k = KrawtchoukArgs::<S>::read(case)?;
    let t: S = case.scalar("t")?;
    let n = case.count("n")?;
    if n > k.big_n {
        return Err(Error::DegreeOutOfRange { n, max: k.big_n });
    }
    let mut lhs = S::zero();
    for x in 0..=k.big_m {
        let xs = S::from_usize(x);
        let w = binomial_coefficient::<S>(k.big_m, x) * k.q.powu(x) * (one.clone() - k.q.clone()).powu(k.big_m - x);
        let gf = if case.id == "krawtchouk-exp-sum" {
            k.lhs_exp_at(&xs)?
        } else {
            k.lhs_2f1_at(&xs)?
        };
        lhs = lhs + w * gf.evaluate_at(&t) * krawtchouk(n, &xs, &k.q, k.big_m)?;
    }
    let lead =
        (t.clone() * (k.q.clone() - one.clone())).checked_div(&k.p)?.powu(n) / pochhammer(&-S::from_usize(k.big_n), n);
    let rhs = if case.id == "krawtchouk-exp-sum" {
        lead * k.exp_bracket(n)?.evaluate_at(&t)
    } else {
        lead * pochhammer(&k.gamma, n) * k.hyp_bracket(n)?.evaluate_at(&t)
    };
    Ok(judge(vec![(lhs, rhs)], k.big_m + 1))
}

/// Counts by status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub inconclusive: usize,
}

impl BatchSummary {
    pub fn all_pass(&self) -> bool {
        self.pass == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub reports: Vec<VerificationReport>,
    pub summary: BatchSummary,
}

/// Runs cases concurrently; reports come back in input order. `timing`
/// fills in `millis`.
pub fn batch_verify(cases: &[IdentityCase], timing: bool) -> BatchReport {
    let reports: Vec<VerificationReport> = cases
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            let mut r = verify(case);
            if timing {
                r.millis = Some(start.elapsed().as_millis() as u64);
            }
            r
        })
        .collect();
    let mut summary = BatchSummary {
        total: reports.len(),
        ..BatchSummary::default()
    };
    for r in &reports {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Error => summary.error += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
    }
    BatchReport { reports, summary }
}

/// Rational parameter point shared by the Meixner generating-function cases.
pub const CANONICAL_MEIXNER: [(&str, &str); 6] = [
    ("x", "4"),
    ("alpha", "3/2"),
    ("beta", "7/3"),
    ("c", "2/5"),
    ("d", "3/7"),
    ("gamma", "5/4"),
];

/// Krawtchouk point for the polynomial identities.
pub const CANONICAL_KRAWTCHOUK: [(&str, &str); 6] = [
    ("x", "5/2"),
    ("p", "1/2"),
    ("q", "1/3"),
    ("N", "4"),
    ("M", "6"),
    ("gamma", "5/4"),
];

fn restricted(info: &IdentityInfo, point: &[(&str, &str)]) -> Vec<(String, String)> {
    point
        .iter()
        .filter(|(k, _)| info.parameters.contains(k))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn case_at(id: &str, point: &[(&str, &str)], order: usize, field: FieldTag) -> IdentityCase {
    let info = identity_info(id).expect("registered id");
    IdentityCase {
        id: id.to_string(),
        params: restricted(info, point).into_iter().collect(),
        order,
        field,
        tail: None,
        samples: Vec::new(),
        form: Form::Verified,
    }
}

/// Id, parameter point and order of a summation case.
type SumCase = (&'static str, &'static [(&'static str, &'static str)], usize);

/// The built-in acceptance suite. `backend` applies where both sides are
/// rational; the Meixner sums always run numerically.
pub fn acceptance_suite(order: usize, backend: FieldKind) -> Vec<IdentityCase> {
    let field = FieldTag::default_for(backend);
    let numeric = FieldTag::default_for(FieldKind::Numeric);
    let mut cases = Vec::new();

    let relation_point: [(&str, &str); 8] = [
        ("alpha", "3/2"),
        ("beta", "7/3"),
        ("c", "2/5"),
        ("d", "3/7"),
        ("p", "1/2"),
        ("q", "1/3"),
        ("N", "4"),
        ("M", "7"),
    ];
    for rel in Relation::ALL {
        let id = format!("connection-{}", rel.id());
        cases.push(case_at(&id, &relation_point, 8, field).with_samples(&CONNECTION_SAMPLES));
    }

    for info in REGISTRY {
        let krawtchouk = info.id.contains("krawtchouk");
        match info.kind {
            CaseKind::GeneratingFunction | CaseKind::Chain => {
                let (point, n) = if krawtchouk {
                    (&CANONICAL_KRAWTCHOUK[..], 4)
                } else {
                    (&CANONICAL_MEIXNER[..], order)
                };
                cases.push(case_at(info.id, point, n, field));
            }
            CaseKind::Invariance => {
                for gf in ["binomial", "exponential", "hypergeometric"] {
                    let mut point: Vec<(&str, &str)> = if krawtchouk {
                        vec![("x", "5/2"), ("p", "1/2"), ("N", "4"), ("gamma", "5/4")]
                    } else {
                        CANONICAL_MEIXNER.to_vec()
                    };
                    point.push(("generating_function", gf));
                    let n = if krawtchouk { 4 } else { order };
                    cases.push(case_at(info.id, &point, n, field));
                }
            }
            _ => {}
        }
    }

    let sums: [SumCase; 8] = [
        ("meixner-orthogonality", &[("alpha", "2"), ("c", "1/2")], 4),
        (
            "meixner-exp-sum-beta",
            &[("alpha", "2"), ("beta", "3"), ("c", "1/2"), ("t", "1/4"), ("n", "3")],
            0,
        ),
        (
            "meixner-exp-sum-beta-d",
            &[
                ("alpha", "2"),
                ("beta", "3"),
                ("c", "1/2"),
                ("d", "1/3"),
                ("t", "1/4"),
                ("n", "2"),
            ],
            0,
        ),
        (
            "meixner-2f1-sum-beta",
            &[
                ("alpha", "2"),
                ("beta", "3"),
                ("c", "1/2"),
                ("gamma", "5/4"),
                ("t", "1/4"),
                ("n", "2"),
            ],
            0,
        ),
        (
            "meixner-2f1-sum-beta-d",
            &[
                ("alpha", "2"),
                ("beta", "3"),
                ("c", "1/2"),
                ("d", "1/3"),
                ("gamma", "5/4"),
                ("t", "1/8"),
                ("n", "2"),
            ],
            0,
        ),
        ("krawtchouk-orthogonality", &[("p", "1/3"), ("N", "5")], 5),
        (
            "krawtchouk-exp-sum",
            &[
                ("p", "1/2"),
                ("q", "1/3"),
                ("N", "3"),
                ("M", "5"),
                ("t", "1/5"),
                ("n", "2"),
            ],
            0,
        ),
        (
            "krawtchouk-2f1-sum",
            &[
                ("p", "1/2"),
                ("q", "1/3"),
                ("N", "3"),
                ("M", "5"),
                ("gamma", "5/4"),
                ("t", "1/5"),
                ("n", "2"),
            ],
            0,
        ),
    ];
    for (id, point, n) in sums {
        let info = identity_info(id).expect("registered id");
        let f = if info.exact { field } else { numeric };
        let mut case = case_at(id, point, n, f);
        if id == "meixner-orthogonality" {
            case.field = FieldTag::numeric(1e-9).expect("positive tolerance");
        }
        if !info.exact {
            case = case.with_tail(TailPolicy::default().x_max);
        }
        cases.push(case);
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_case(id: &str, point: &[(&str, &str)], order: usize) -> IdentityCase {
        case_at(id, point, order, FieldTag::exact())
    }

    fn assert_pass(r: &VerificationReport) {
        assert_eq!(r.status, Status::Pass, "{}: {r:?}", r.case.id);
    }

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<_> = registry().iter().map(|i| i.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
        for rel in Relation::ALL {
            identity_info(&format!("connection-{}", rel.id())).unwrap();
        }
    }

    #[test]
    fn constant_terms_are_one() {
        let case = exact_case("meixner-1f1-beta-d", &CANONICAL_MEIXNER, 0);
        let (l, r) = build_sides::<ExactScalar>(&case).unwrap();
        assert_eq!(l.coeff(0), ExactScalar::integer(1));
        assert_eq!(r.coeff(0), ExactScalar::integer(1));
    }

    #[test]
    fn exp_1f1_corollary_at_order_12() {
        let r = verify(&exact_case("meixner-exp-1f1-beta", &CANONICAL_MEIXNER, 12));
        assert_pass(&r);
        assert_eq!(r.deviation, Some(0.0));
    }

    #[test]
    fn two_f_one_identity_example() {
        let point = [
            ("x", "3"),
            ("alpha", "5/4"),
            ("beta", "1/2"),
            ("c", "3/7"),
            ("gamma", "5/4"),
        ];
        let r = verify(&exact_case("meixner-2f1-beta", &point, 12));
        assert_pass(&r);
        assert_eq!(r.deviation, Some(0.0));
    }

    #[test]
    fn beta_d_form_with_d_equal_c_is_the_beta_form() {
        let point = [
            ("x", "3"),
            ("alpha", "5/4"),
            ("beta", "1/2"),
            ("c", "3/7"),
            ("d", "3/7"),
            ("gamma", "5/4"),
        ];
        let a = build_sides::<ExactScalar>(&exact_case("meixner-2f1-beta-d", &point, 10)).unwrap();
        let b = build_sides::<ExactScalar>(&exact_case("meixner-2f1-beta", &point, 10)).unwrap();
        assert_eq!(a.1, b.1);
        assert_eq!(a.0, b.0);
    }

    #[test]
    fn perturbed_rhs_reports_first_failing_order() {
        let case = exact_case("meixner-exp-1f1-beta", &CANONICAL_MEIXNER, 8);
        let (l, r) = build_sides::<ExactScalar>(&case).unwrap();
        let mut coeffs = r.into_coefficients();
        coeffs[5] = coeffs[5].clone() + ExactScalar::ratio(1, 1000);
        let report = compare_sides(&case, &l, &TruncatedSeries::new(coeffs).unwrap());
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.first_failing_order, Some(5));
    }

    #[test]
    fn krawtchouk_identity_example() {
        let point = [("x", "5/2"), ("p", "1/2"), ("q", "1/3"), ("N", "4"), ("M", "6")];
        assert_pass(&verify(&exact_case("krawtchouk-exp-q-m", &point, 4)));
        let point = [("x", "2"), ("p", "1/2"), ("q", "1/3"), ("N", "4"), ("M", "6")];
        assert_pass(&verify(&exact_case("krawtchouk-exp-q-m", &point, 4)));
    }

    #[test]
    fn connection_examples() {
        let params: BTreeMap<String, String> = [("alpha", "3/2"), ("beta", "7/3"), ("c", "2/5"), ("d", "3/7")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let r = verify_connection_relation(
            Relation::AlphaCToBetaD,
            &params,
            8,
            &["0", "1", "2", "5/2", "4"],
            FieldTag::exact(),
        );
        assert_pass(&r);
        let params: BTreeMap<String, String> = [("alpha", "3/2"), ("c", "2/5"), ("d", "2/5")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        assert_pass(&verify_connection_relation(
            Relation::SameAlphaCToD,
            &params,
            6,
            &["0", "1", "7/2"],
            FieldTag::exact(),
        ));
        let params: BTreeMap<String, String> = [("p", "1/2"), ("N", "4"), ("M", "7")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        assert_pass(&verify_connection_relation(
            Relation::SamePNToM,
            &params,
            4,
            &["0", "1", "5/2"],
            FieldTag::exact(),
        ));
    }

    #[test]
    fn meixner_sum_at_origin() {
        let case = IdentityCase::new(
            "meixner-exp-sum-beta",
            &[("alpha", "2"), ("beta", "3"), ("c", "1/2"), ("t", "0"), ("n", "0")],
            0,
            FieldTag::default_for(FieldKind::Numeric),
        )
        .with_tail(300);
        let r = verify(&case);
        assert_pass(&r);
    }

    #[test]
    fn meixner_sum_example() {
        let case = IdentityCase::new(
            "meixner-exp-sum-beta",
            &[("alpha", "2"), ("beta", "3"), ("c", "1/2"), ("t", "1/4"), ("n", "3")],
            0,
            FieldTag::default_for(FieldKind::Numeric),
        )
        .with_tail(300);
        let r = verify(&case);
        assert_pass(&r);
        assert!(r.tail_bound.unwrap() < 1e-12);
    }

    #[test]
    fn short_cutoff_is_inconclusive() {
        let case = IdentityCase::new(
            "meixner-exp-sum-beta",
            &[("alpha", "2"), ("beta", "3"), ("c", "1/2"), ("t", "1/4"), ("n", "3")],
            0,
            FieldTag::default_for(FieldKind::Numeric),
        )
        .with_tail(12);
        assert_eq!(verify(&case).status, Status::Inconclusive);
    }

    #[test]
    fn krawtchouk_sum_example() {
        let case = exact_case(
            "krawtchouk-exp-sum",
            &[
                ("p", "1/2"),
                ("q", "1/3"),
                ("N", "3"),
                ("M", "5"),
                ("t", "1/5"),
                ("n", "2"),
            ],
            0,
        );
        let r = verify(&case);
        assert_pass(&r);
        assert_eq!(r.deviation, Some(0.0));
    }

    #[test]
    fn invalid_cases_become_errors() {
        let r = verify(&IdentityCase::new("meixner-nonexistent", &[], 3, FieldTag::exact()));
        assert_eq!(r.status, Status::Error);
        let mut case = exact_case("meixner-exp-1f1-beta", &CANONICAL_MEIXNER, 3);
        case.params.insert("zeta".into(), "1".into());
        assert_eq!(verify(&case).status, Status::Error);
        let case = IdentityCase::new("meixner-exp-sum-beta", &[("alpha", "2")], 0, FieldTag::exact());
        let r = verify(&case);
        assert_eq!(r.status, Status::Error);
        assert!(r.error.unwrap().contains("numeric"));
        let case = exact_case(
            "meixner-exp-1f1-beta",
            &[("x", "4"), ("alpha", "-2"), ("beta", "1"), ("c", "1/2")],
            3,
        );
        assert_eq!(verify(&case).status, Status::Error);
    }

    #[test]
    fn batch_isolates_errors_and_keeps_order() {
        let empty = batch_verify(&[], false);
        assert!(empty.reports.is_empty());
        assert_eq!(empty.summary, BatchSummary::default());

        let good = exact_case("meixner-exp-1f1-beta", &CANONICAL_MEIXNER, 4);
        let bad = IdentityCase::new("no-such-identity", &[], 4, FieldTag::exact());
        let out = batch_verify(&[good.clone(), bad, good], false);
        let statuses: Vec<_> = out.reports.iter().map(|r| r.status).collect();
        assert_eq!(statuses, vec![Status::Pass, Status::Error, Status::Pass]);
        assert_eq!(out.summary.error, 1);
        assert_eq!(out.summary.pass, 2);
        assert!(out.reports.iter().all(|r| r.millis.is_none()));
    }

    #[test]
    fn report_json_round_trips() {
        let r = verify(&exact_case("meixner-exp-1f1-beta", &CANONICAL_MEIXNER, 3));
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(json.contains("\"millis\":null"));
    }
    #[test]
    fn displayed_forms_disagree() {
        for id in [
            "meixner-phi2-d",
            "meixner-phi2-3-beta-d",
            "meixner-2f1-beta-d",
            "meixner-f1-d",
            "meixner-fd3-beta-d",
        ] {
            let case = exact_case(id, &CANONICAL_MEIXNER, 6);
            assert_pass(&verify(&case));
            let r = verify(&case.with_form(Form::AsDisplayed));
            assert_eq!(r.status, Status::Fail, "{id}");
            assert!(r.first_failing_order.is_some());
        }
        let case = IdentityCase::new(
            "meixner-exp-sum-beta-d",
            &[
                ("alpha", "2"),
                ("beta", "3"),
                ("c", "1/2"),
                ("d", "1/3"),
                ("t", "1/4"),
                ("n", "2"),
            ],
            0,
            FieldTag::default_for(FieldKind::Numeric),
        )
        .with_tail(300);
        assert_pass(&verify(&case));
        assert_eq!(verify(&case.with_form(Form::AsDisplayed)).status, Status::Fail);
    }

    #[test]
    fn suite_passes_on_both_fields() {
        for kind in [FieldKind::Exact, FieldKind::Numeric] {
            let out = batch_verify(&acceptance_suite(8, kind), false);
            assert!(out.summary.all_pass(), "{:?}", out.summary);
        }
    }
}
