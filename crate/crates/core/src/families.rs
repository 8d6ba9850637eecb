//! Polynomial families and the generating-function catalog.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::hyper::{hyper_series_in_t, pfq_eval, ArgShape, HyperSpec, SumMode};
use crate::scalar::{FieldKind, NumericScalar, Scalar};
use crate::series::{binomial_power, exp_series, q_finite_product_series, q_infinite_product_series, TruncatedSeries};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// What the polynomial argument `x` means for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    X,
    /// `x = cos θ`; `θ` is bound as `theta`.
    CosTheta,
    /// `x = cos(θ + φ)`; `θ` is bound as `theta`.
    CosThetaPlusPhi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Any,
    Nonzero,
    NotZeroOne,
    NotNonpositiveInteger,
    NonnegativeInteger,
    /// `0 < |q| < 1`
    Base,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub domain: Domain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArgumentShape {
    Linear,
    Mobius,
}

/// One factor of a generating function, with parameter expressions as text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// `(1 − base·t)^power`
    Binomial { base: String, power: String },
    /// `e^{rate·t}`
    Exponential { rate: String },
    /// `(κt;q)_∞`, or its reciprocal when `inverse`.
    QInfinite { kappa: String, q: String, inverse: bool },
    /// `(κt;q)_length`
    QFinite { kappa: String, q: String, length: String },
    /// `pFq(numerators; denominators; argument·t)` or with `t/(1−t)`.
    Hypergeometric {
        numerators: Vec<String>,
        denominators: Vec<String>,
        argument: String,
        shape: ArgumentShape,
    },
    /// `rφs(numerators; denominators; q, argument·t)`
    BasicHypergeometric {
        numerators: Vec<String>,
        denominators: Vec<String>,
        q: String,
        argument: String,
    },
    /// A factor kept as displayed text only.
    Opaque { formula: String, parameters: Vec<String> },
}

impl Factor {
    fn expressions(&self) -> Vec<&str> {
        match self {
            Factor::Binomial { base, power } => vec![base, power],
            Factor::Exponential { rate } => vec![rate],
            Factor::QInfinite { kappa, q, .. } => vec![kappa, q],
            Factor::QFinite { kappa, q, length } => vec![kappa, q, length],
            Factor::Hypergeometric {
                numerators,
                denominators,
                argument,
                ..
            } => numerators
                .iter()
                .chain(denominators)
                .chain(std::iter::once(argument))
                .map(String::as_str)
                .collect(),
            Factor::BasicHypergeometric {
                numerators,
                denominators,
                q,
                argument,
            } => numerators
                .iter()
                .chain(denominators)
                .chain([q, argument])
                .map(String::as_str)
                .collect(),
            Factor::Opaque { .. } => Vec::new(),
        }
    }

    /// Whether the factor mentions `name`, directly or through `theta`.
    pub fn mentions(&self, name: &str) -> Result<bool> {
        if let Factor::Opaque { parameters, .. } = self {
            return Ok(parameters.iter().any(|p| p == name));
        }
        for src in self.expressions() {
            let ids = expr::parse(src)?.identifiers();
            if ids.contains(name) || (name == "x" && ids.contains("theta")) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn describe(&self) -> String {
        match self {
            Factor::Binomial { base, power } => format!("(1-({base})t)^({power})"),
            Factor::Exponential { rate } => format!("exp(({rate})t)"),
            Factor::QInfinite { kappa, q, inverse } => {
                let p = format!("(({kappa})t;{q})_inf");
                if *inverse {
                    format!("1/{p}")
                } else {
                    p
                }
            }
            Factor::QFinite { kappa, q, length } => format!("(({kappa})t;{q})_({length})"),
            Factor::Hypergeometric {
                numerators,
                denominators,
                argument,
                shape,
            } => {
                let arg = match shape {
                    ArgumentShape::Linear => format!("({argument})t"),
                    ArgumentShape::Mobius => format!("({argument})t/(1-t)"),
                };
                format!(
                    "{}F{}({};{};{arg})",
                    numerators.len(),
                    denominators.len(),
                    numerators.join(","),
                    denominators.join(",")
                )
            }
            Factor::BasicHypergeometric {
                numerators,
                denominators,
                q,
                argument,
            } => format!(
                "{}phi{}({};{};{q},({argument})t)",
                numerators.len(),
                denominators.len(),
                numerators.join(","),
                denominators.join(",")
            ),
            Factor::Opaque { formula, .. } => formula.clone(),
        }
    }
}

/// Which field a descriptor's generating function can be expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expandable {
    Exact,
    Numeric,
    Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub id: String,
    pub name: String,
    pub polynomial: String,
    pub variable: Variable,
    pub parameters: Vec<ParamSpec>,
    pub generating_function: String,
    pub factors: Vec<Factor>,
    /// `c_n` as an expression in the parameters and `n`.
    pub normalization: String,
    /// Expression for `N` in `[·]_N`, when the expansion is truncated.
    pub truncation: Option<String>,
    pub expandable: Expandable,
    pub free_parameters: Option<u32>,
    pub known_generating_functions: Option<u32>,
    pub connection_relations: Option<u32>,
    pub symmetric_parameters: Vec<String>,
    pub generalized_generating_functions: bool,
    pub notes: BTreeMap<String, String>,
}

impl FamilyDescriptor {
    pub fn parameter_names(&self) -> impl Iterator<Item = &str> {
        self.parameters.iter().map(|p| p.name.as_str())
    }

    /// `c_n` of the generating function.
    pub fn normalization<S: Scalar>(&self, n: usize, params: &ParamSet<S>) -> Result<S> {
        let mut env = params.0.clone();
        env.insert("n".into(), S::from_usize(n));
        expr::eval_str(&self.normalization, &env)
    }

    /// Parameters that occur in exactly one factor, that factor being a
    /// binomial with the parameter only in its exponent, or an infinite
    /// q-product whose base does not involve `x`.
    pub fn isolated_parameters(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for p in self.parameter_names() {
            if p == "q" {
                continue;
            }
            let mut hits = Vec::new();
            for f in &self.factors {
                if f.mentions(p)? {
                    hits.push(f);
                }
            }
            if let [f] = hits.as_slice() {
                let ok = match f {
                    Factor::Binomial { base, .. } => {
                        let ids = expr::parse(base)?.identifiers();
                        !ids.contains("x") && !ids.contains(p)
                    }
                    Factor::QInfinite { kappa, .. } => {
                        let ids = expr::parse(kappa)?.identifiers();
                        !ids.contains("x") && !ids.contains("theta")
                    }
                    _ => false,
                };
                if ok {
                    out.push(p.to_string());
                }
            }
        }
        Ok(out)
    }
}

/// The shipped catalog, parsed once.
pub fn catalog() -> &'static [FamilyDescriptor] {
    static CATALOG: OnceLock<Vec<FamilyDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid"))
}

pub fn catalog_json() -> &'static str {
    CATALOG_JSON
}

pub fn descriptor(id: &str) -> Result<&'static FamilyDescriptor> {
    catalog()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Named parameter bindings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamSet<S>(BTreeMap<String, S>);

impl<S: Scalar> ParamSet<S> {
    pub fn new() -> Self {
        ParamSet(BTreeMap::new())
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, S)>) -> Self {
        ParamSet(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn with(mut self, name: &str, value: S) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: S) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<S> {
        self.0
            .get(name)
            .cloned()
            .ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn integer(&self, name: &str) -> Result<usize> {
        let v = self.get(name)?;
        v.as_nonneg_int()
            .ok_or_else(|| Error::invalid(name, format!("must be a non-negative integer, got {v}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &S)> {
        self.0.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<String, S> {
        &self.0
    }

    pub fn to_numeric(&self) -> ParamSet<NumericScalar> {
        ParamSet(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), NumericScalar::from_complex(v.to_complex()).expect("finite")))
                .collect(),
        )
    }

    /// Checks that every descriptor parameter is bound and in its domain.
    pub fn validate(&self, desc: &FamilyDescriptor) -> Result<()> {
        for spec in &desc.parameters {
            let v = self.get(&spec.name)?;
            check_domain(&spec.name, &v, spec.domain)?;
        }
        Ok(())
    }
}

pub fn check_domain<S: Scalar>(name: &str, v: &S, domain: Domain) -> Result<()> {
    let bad = |reason: &str| Err(Error::invalid(name, format!("{reason}, got {v}")));
    match domain {
        Domain::Any => Ok(()),
        Domain::Nonzero if v.is_zero() => bad("must be nonzero"),
        Domain::NotZeroOne if v.is_zero() || *v == S::one() => bad("must not be 0 or 1"),
        Domain::NotNonpositiveInteger if v.as_integer().is_some_and(|m| m <= 0) => {
            bad("must not be a non-positive integer")
        }
        Domain::NonnegativeInteger if v.as_nonneg_int().is_none() => bad("must be a non-negative integer"),
        Domain::Base if !(v.modulus() > 0.0 && v.modulus() < 1.0) => bad("needs 0 < |q| < 1"),
        _ => Ok(()),
    }
}

/// `M_n(x;α,c) = 2F1(−n, −x; α; 1 − 1/c)`.
pub fn meixner<S: Scalar>(n: usize, x: &S, alpha: &S, c: &S) -> Result<S> {
    let z = S::one() - c.recip()?;
    let spec = HyperSpec::ordinary(vec![-S::from_usize(n), -x.clone()], vec![alpha.clone()]);
    Ok(pfq_eval(&spec, &z, SumMode::Terminating)?.value)
}

/// `K_n(x;p,N) = 2F1(−n, −x; −N; 1/p)` for `n ≤ N`.
pub fn krawtchouk<S: Scalar>(n: usize, x: &S, p: &S, big_n: usize) -> Result<S> {
    if n > big_n {
        return Err(Error::DegreeOutOfRange { n, max: big_n });
    }
    let spec = HyperSpec::ordinary(vec![-S::from_usize(n), -x.clone()], vec![-S::from_usize(big_n)]);
    Ok(pfq_eval(&spec, &p.recip()?, SumMode::Terminating)?.value)
}

/// `P_n(x)` of a catalog family.
pub fn family_eval<S: Scalar>(family: &str, n: usize, x: &S, params: &ParamSet<S>) -> Result<S> {
    let desc = descriptor(family)?;
    params.validate(desc)?;
    match family {
        "meixner" => meixner(n, x, &params.get("alpha")?, &params.get("c")?),
        "krawtchouk" => krawtchouk(n, x, &params.get("p")?, params.integer("N")?),
        _ => poly_from_gf(desc, n, x, params),
    }
}

fn expand_factor<S: Scalar>(factor: &Factor, env: &BTreeMap<String, S>, order: usize) -> Result<TruncatedSeries<S>> {
    let ev = |src: &str| expr::eval_str::<S>(src, env);
    let evs = |srcs: &[String]| srcs.iter().map(|s| ev(s)).collect::<Result<Vec<S>>>();
    match factor {
        Factor::Binomial { base, power } => Ok(binomial_power(&ev(base)?, &-ev(power)?, order)),
        Factor::Exponential { rate } => Ok(exp_series(&ev(rate)?, order)),
        Factor::QInfinite { kappa, q, inverse } => q_infinite_product_series(&ev(kappa)?, &ev(q)?, order, *inverse),
        Factor::QFinite { kappa, q, length } => {
            let len = ev(length)?;
            let len = len
                .as_nonneg_int()
                .ok_or_else(|| Error::invalid("length", format!("finite q-product length {len} is not a count")))?;
            Ok(q_finite_product_series(&ev(kappa)?, &ev(q)?, len, order))
        }
        Factor::Hypergeometric {
            numerators,
            denominators,
            argument,
            shape,
        } => {
            let spec = HyperSpec::ordinary(evs(numerators)?, evs(denominators)?);
            let lambda = ev(argument)?;
            let arg = match shape {
                ArgumentShape::Linear => ArgShape::Linear(lambda),
                ArgumentShape::Mobius => ArgShape::Mobius(lambda),
            };
            hyper_series_in_t(&spec, &arg, order)
        }
        Factor::BasicHypergeometric {
            numerators,
            denominators,
            q,
            argument,
        } => {
            let spec = HyperSpec::basic(evs(numerators)?, evs(denominators)?, ev(q)?)?;
            hyper_series_in_t(&spec, &ArgShape::Linear(ev(argument)?), order)
        }
        Factor::Opaque { formula, .. } => Err(Error::UnsupportedExpansion(format!("opaque factor {formula}"))),
    }
}

/// Binds the parameters plus `x` and, for the trigonometric variables, `theta`.
fn environment<S: Scalar>(desc: &FamilyDescriptor, x: &S, params: &ParamSet<S>) -> Result<BTreeMap<String, S>> {
    let mut env = params.0.clone();
    env.insert("x".into(), x.clone());
    if desc.variable != Variable::X {
        let xn = NumericScalar::from_complex(x.to_complex())?;
        let mut theta = xn.acos();
        if desc.variable == Variable::CosThetaPlusPhi {
            let phi = NumericScalar::from_complex(params.get("phi")?.to_complex())?;
            theta = theta - phi;
        }
        env.insert("theta".into(), S::from_complex(theta.value())?);
    }
    Ok(env)
}

/// Coefficients of the generating function through `t^order`.
pub fn gf_expand<S: Scalar>(
    desc: &FamilyDescriptor,
    x: &S,
    params: &ParamSet<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    match (desc.expandable, S::KIND) {
        (Expandable::Metadata, _) => return Err(Error::UnsupportedExpansion(desc.id.clone())),
        (Expandable::Numeric, FieldKind::Exact) => {
            return Err(Error::UnsupportedMode(format!(
                "{} expands in the numeric field only",
                desc.id
            )))
        }
        _ => {}
    }
    params.validate(desc)?;
    let env = environment(desc, x, params)?;
    let build_order = match &desc.truncation {
        Some(src) => {
            let n = expr::eval_str::<S>(src, &env)?;
            let n = n
                .as_nonneg_int()
                .ok_or_else(|| Error::invalid(src, "truncation order must be a non-negative integer"))?;
            order.min(n)
        }
        None => order,
    };
    let mut acc = TruncatedSeries::one(build_order);
    for f in &desc.factors {
        acc = acc.mul(&expand_factor(f, &env, build_order)?);
    }
    Ok(TruncatedSeries::from_prefix(acc.into_coefficients(), order))
}

/// `[t^n] f / c_n`.
pub fn poly_from_gf<S: Scalar>(desc: &FamilyDescriptor, n: usize, x: &S, params: &ParamSet<S>) -> Result<S> {
    let series = gf_expand(desc, x, params, n)?;
    let norm = desc.normalization(n, params)?;
    if norm.is_zero() {
        return Err(Error::ZeroNormalization(n));
    }
    Ok(series.coeff(n) / norm)
}

/// Parses an expression once for repeated use by callers outside the module.
pub fn compile(src: &str) -> Result<Expr> {
    expr::parse(src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::{factorial, pochhammer};
    use crate::scalar::{ExactScalar, Tolerance};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    fn meixner_params(alpha: ExactScalar, c: ExactScalar) -> ParamSet<ExactScalar> {
        ParamSet::new().with("alpha", alpha).with("c", c)
    }

    #[test]
    fn catalog_parses_with_all_families() {
        let ids: Vec<_> = catalog().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids.len(), 16);
        for d in catalog() {
            assert!(!d.factors.is_empty(), "{}", d.id);
            for f in &d.factors {
                for src in f.expressions() {
                    expr::parse(src).unwrap_or_else(|e| panic!("{}: {src}: {e}", d.id));
                }
            }
            expr::parse(&d.normalization).unwrap();
            if let (Some(free), Some(rel)) = (d.free_parameters, d.connection_relations) {
                let sym = d.symmetric_parameters.len() as u32;
                if sym > 1 {
                    assert_eq!(rel, (1 << sym) - 1, "{}", d.id);
                    assert_eq!(free, sym, "{}", d.id);
                }
            }
        }
        assert!(matches!(descriptor("hermite"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn expandability_flags() {
        let exact: Vec<_> = catalog()
            .iter()
            .filter(|d| d.expandable == Expandable::Exact)
            .map(|d| d.id.as_str())
            .collect();
        assert_eq!(exact, vec!["meixner", "krawtchouk", "charlier"]);
        let numeric: Vec<_> = catalog()
            .iter()
            .filter(|d| d.expandable == Expandable::Numeric)
            .map(|d| d.id.as_str())
            .collect();
        assert_eq!(
            numeric,
            vec![
                "al-salam-chihara",
                "continuous-big-q-hermite",
                "al-salam-carlitz-1",
                "al-salam-carlitz-2"
            ]
        );
    }

    #[test]
    fn meixner_examples() {
        let p = meixner_params(r(3, 2), r(2, 5));
        assert_eq!(family_eval("meixner", 0, &r(7, 3), &p).unwrap(), r(1, 1));
        let p = meixner_params(r(1, 1), r(1, 2));
        for x in [r(0, 1), r(4, 1), r(-5, 3)] {
            // 1 + x(1 − 1/c)/α at α = 1, c = 1/2
            assert_eq!(family_eval("meixner", 1, &x, &p).unwrap(), r(1, 1) - x.clone());
        }
        assert_eq!(family_eval("meixner", 1, &r(4, 1), &p).unwrap(), r(-3, 1));
        let bad = meixner_params(r(-2, 1), r(1, 2));
        assert!(matches!(
            family_eval("meixner", 1, &r(1, 1), &bad),
            Err(Error::InvalidParameter { .. })
        ));
        let bad = meixner_params(r(1, 2), r(1, 1));
        assert!(family_eval("meixner", 1, &r(1, 1), &bad).is_err());
        assert!(matches!(
            family_eval("meixner", 1, &r(1, 1), &ParamSet::new()),
            Err(Error::MissingParameter(_))
        ));
    }

    #[test]
    fn krawtchouk_examples() {
        for big_n in 1..6usize {
            let p = ParamSet::new().with("p", r(1, 2)).with("N", r(big_n as i64, 1));
            for x in [r(0, 1), r(1, 1), r(5, 2)] {
                let expected = r(1, 1) - r(2, 1) * x.clone() / r(big_n as i64, 1);
                assert_eq!(family_eval("krawtchouk", 1, &x, &p).unwrap(), expected);
            }
        }
        let p = ParamSet::new().with("p", r(1, 2)).with("N", r(3, 1));
        assert_eq!(
            family_eval("krawtchouk", 4, &r(1, 1), &p),
            Err(Error::DegreeOutOfRange { n: 4, max: 3 })
        );
        let p = ParamSet::new().with("p", r(1, 2)).with("N", r(5, 2));
        assert!(family_eval("krawtchouk", 1, &r(1, 1), &p).is_err());
    }

    #[test]
    fn krawtchouk_is_meixner() {
        let pairs = [
            (r(0, 1), r(1, 2)),
            (r(1, 1), r(1, 3)),
            (r(2, 1), r(3, 4)),
            (r(5, 2), r(2, 5)),
            (r(-3, 7), r(1, 2)),
            (r(7, 1), r(5, 3)),
            (r(3, 1), r(-1, 2)),
            (r(11, 3), r(7, 9)),
            (r(4, 1), r(2, 1)),
            (r(-1, 1), r(1, 7)),
        ];
        for big_n in 0..=8usize {
            for n in 0..=big_n {
                for (x, p) in &pairs {
                    let k = krawtchouk(n, x, p, big_n).unwrap();
                    let c = p.clone() / (p.clone() - r(1, 1));
                    let m = meixner(n, x, &-r(big_n as i64, 1), &c).unwrap();
                    assert_eq!(k, m, "n={n} N={big_n} x={x} p={p}");
                }
            }
        }
    }

    #[test]
    fn meixner_gf_first_coefficient() {
        let (x, alpha, c) = (r(4, 1), r(3, 2), r(2, 5));
        let s = gf_expand(
            descriptor("meixner").unwrap(),
            &x,
            &meixner_params(alpha.clone(), c.clone()),
            3,
        )
        .unwrap();
        assert_eq!(s.coeff(0), r(1, 1));
        let expected = alpha.clone() + x.clone() * (r(1, 1) - r(1, 1) / c.clone());
        assert_eq!(s.coeff(1), expected);
        assert_eq!(s.coeff(1), alpha.clone() * meixner(1, &x, &alpha, &c).unwrap());
    }

    #[test]
    fn meixner_gf_matches_evaluator() {
        for (alpha, c) in [(r(3, 2), r(2, 5)), (r(1, 1), r(1, 2)), (r(-7, 3), r(5, 4))] {
            for x in [r(4, 1), r(-3, 7), r(5, 2)] {
                let p = meixner_params(alpha.clone(), c.clone());
                let s = gf_expand(descriptor("meixner").unwrap(), &x, &p, 12).unwrap();
                for n in 0..=12 {
                    let norm = pochhammer(&alpha, n) / factorial::<ExactScalar>(n);
                    assert_eq!(s.coeff(n), norm * meixner(n, &x, &alpha, &c).unwrap());
                }
            }
        }
    }

    #[test]
    fn poly_from_gf_agrees_for_meixner_and_krawtchouk() {
        let p = meixner_params(r(3, 2), r(2, 5));
        let d = descriptor("meixner").unwrap();
        for n in 0..=6 {
            assert_eq!(
                poly_from_gf(d, n, &r(4, 1), &p).unwrap(),
                meixner(n, &r(4, 1), &r(3, 2), &r(2, 5)).unwrap()
            );
        }
        let d = descriptor("krawtchouk").unwrap();
        for big_n in [3usize, 4, 6] {
            let p = ParamSet::new().with("p", r(1, 3)).with("N", r(big_n as i64, 1));
            for x in [r(0, 1), r(1, 1), r(5, 2), r(-3, 7)] {
                let s = gf_expand(d, &x, &p, big_n + 3).unwrap();
                for n in big_n + 1..=big_n + 3 {
                    assert!(s.coeff(n).is_zero());
                }
                for n in 0..=big_n {
                    assert_eq!(
                        poly_from_gf(d, n, &x, &p).unwrap(),
                        krawtchouk(n, &x, &r(1, 3), big_n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn charlier_examples() {
        let d = descriptor("charlier").unwrap();
        let a = r(3, 5);
        let p = ParamSet::new().with("a", a.clone());
        for x in [r(0, 1), r(2, 1), r(-4, 3)] {
            assert_eq!(poly_from_gf(d, 0, &x, &p).unwrap(), r(1, 1));
            assert_eq!(
                family_eval("charlier", 1, &x, &p).unwrap(),
                r(1, 1) - x.clone() / a.clone()
            );
        }
        // C_n(x;a) = 2F0(−n, −x; —; −1/a)
        for n in 0..6usize {
            let x = r(7, 2);
            let spec = HyperSpec::ordinary(vec![-r(n as i64, 1), -x.clone()], vec![]);
            let oracle = pfq_eval(&spec, &(r(-1, 1) / a.clone()), SumMode::Terminating)
                .unwrap()
                .value;
            assert_eq!(family_eval("charlier", n, &x, &p).unwrap(), oracle);
        }
    }

    #[test]
    fn metadata_and_field_errors() {
        let d = descriptor("bessel").unwrap();
        let p = ParamSet::new().with("a", r(1, 2));
        assert_eq!(
            gf_expand(d, &r(1, 1), &p, 3),
            Err(Error::UnsupportedExpansion("bessel".into()))
        );
        let d = descriptor("al-salam-carlitz-1").unwrap();
        let p = ParamSet::new().with("a", r(1, 4)).with("q", r(1, 3));
        assert!(matches!(gf_expand(d, &r(1, 2), &p, 3), Err(Error::UnsupportedMode(_))));
    }

    #[test]
    fn every_expandable_gf_has_unit_constant_term() {
        for d in catalog() {
            let mut p = ParamSet::<NumericScalar>::new();
            for spec in &d.parameters {
                let v = match spec.domain {
                    Domain::NonnegativeInteger => 4.0,
                    Domain::Base => 0.3,
                    _ => 0.45,
                };
                p.set(&spec.name, NumericScalar::real(v).unwrap());
            }
            let x = NumericScalar::real(0.2).unwrap();
            match gf_expand(d, &x, &p, 5) {
                Ok(s) => assert!(s
                    .coeff(0)
                    .approx_eq(&NumericScalar::real(1.0).unwrap(), Tolerance::default())),
                Err(Error::UnsupportedExpansion(id)) => {
                    assert_eq!(id, d.id);
                    assert_eq!(d.expandable, Expandable::Metadata);
                }
                Err(e) => panic!("{}: {e}", d.id),
            }
        }
    }

    #[test]
    fn al_salam_chihara_is_real_for_real_parameters() {
        let d = descriptor("al-salam-chihara").unwrap();
        let n = |v: f64| NumericScalar::real(v).unwrap();
        let p = ParamSet::new()
            .with("a", n(0.25))
            .with("b", n(0.2))
            .with("q", n(1.0 / 3.0));
        let s = gf_expand(d, &n(0.5), &p, 8).unwrap();
        for c in s.coefficients() {
            assert!(c.im().abs() < 1e-14);
        }
    }

    #[test]
    fn isolated_parameters() {
        assert_eq!(
            descriptor("meixner").unwrap().isolated_parameters().unwrap(),
            vec!["alpha"]
        );
        assert!(descriptor("charlier")
            .unwrap()
            .isolated_parameters()
            .unwrap()
            .is_empty());
        assert_eq!(
            descriptor("al-salam-carlitz-1").unwrap().isolated_parameters().unwrap(),
            vec!["a"]
        );
        assert_eq!(
            descriptor("al-salam-chihara").unwrap().isolated_parameters().unwrap(),
            vec!["a", "b"]
        );
        assert_eq!(
            descriptor("dual-hahn").unwrap().isolated_parameters().unwrap(),
            vec!["N"]
        );
        assert_eq!(
            descriptor("continuous-dual-hahn")
                .unwrap()
                .isolated_parameters()
                .unwrap(),
            vec!["c"]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn meixner_has_degree_n(
            n in 0usize..7,
            an in 1i64..20, ad in 1i64..6,
            cn in 1i64..9,
        ) {
            // the (n+1)-th finite difference over n+2 integer abscissae vanishes
            let alpha = r(an, ad);
            let c = r(cn, 10);
            let values: Vec<ExactScalar> = (0..(n + 2) as i64)
                .map(|x| meixner(n, &r(x, 1), &alpha, &c).unwrap())
                .collect();
            let mut diff = values;
            for _ in 0..=n {
                diff = diff.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
            }
            prop_assert!(diff[0].is_zero());
        }
    }
}
