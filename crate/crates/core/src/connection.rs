//! Connection and connection-type coefficients.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;
use crate::families::{check_domain, descriptor, family_eval, Domain, Factor, FamilyDescriptor, ParamSet, Variable};
use crate::hyper::{multivar_eval, pfq_eval, HyperSpec, MultiVarKind, MultiVarSpec, SumMode};
use crate::pochhammer::{binomial_coefficient, factorial, pochhammer};
use crate::scalar::{NumericScalar, Scalar};
use crate::series::{binomial_power, q_binomial_series, q_infinite_product_series, TruncatedSeries};

/// Closed-form relations between members of the Meixner and Krawtchouk
/// families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "alpha_c_to_beta_d")]
    AlphaCToBetaD,
    #[serde(rename = "same_alpha_c_to_d")]
    SameAlphaCToD,
    #[serde(rename = "alpha_to_beta")]
    AlphaToBeta,
    #[serde(rename = "type_c_to_d")]
    TypeCToD,
    #[serde(rename = "type_alpha_c")]
    TypeAlphaC,
    #[serde(rename = "p_N_to_q_M")]
    PNToQM,
    #[serde(rename = "p_to_q_same_N")]
    PToQSameN,
    #[serde(rename = "same_p_N_to_M")]
    SamePNToM,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::AlphaCToBetaD,
        Relation::SameAlphaCToD,
        Relation::AlphaToBeta,
        Relation::TypeCToD,
        Relation::TypeAlphaC,
        Relation::PNToQM,
        Relation::PToQSameN,
        Relation::SamePNToM,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::AlphaCToBetaD => "alpha_c_to_beta_d",
            Relation::SameAlphaCToD => "same_alpha_c_to_d",
            Relation::AlphaToBeta => "alpha_to_beta",
            Relation::TypeCToD => "type_c_to_d",
            Relation::TypeAlphaC => "type_alpha_c",
            Relation::PNToQM => "p_N_to_q_M",
            Relation::PToQSameN => "p_to_q_same_N",
            Relation::SamePNToM => "same_p_N_to_M",
        }
    }

    pub fn family(self) -> &'static str {
        match self {
            Relation::PNToQM | Relation::PToQSameN | Relation::SamePNToM => "krawtchouk",
            _ => "meixner",
        }
    }

    /// Coefficients depend on `x`.
    pub fn is_connection_type(self) -> bool {
        matches!(self, Relation::TypeCToD | Relation::TypeAlphaC)
    }

    /// Relation parameter names, in the order the CLI lists them.
    pub fn parameter_names(self) -> &'static [&'static str] {
        if self.family() == "meixner" {
            &["alpha", "beta", "c", "d"]
        } else {
            &["p", "q", "N", "M"]
        }
    }

    /// Parameter the coefficients do not involve; it may be left unbound,
    /// in which case the table carries no value for it.
    pub fn unused_parameter(self) -> Option<&'static str> {
        match self {
            Relation::AlphaToBeta => Some("c"),
            Relation::SamePNToM => Some("p"),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

/// Fills in the parameter a relation holds fixed (`beta = alpha`, `d = c`,
/// `q = p`, `M = N`) and checks the domains.
pub fn complete_relation_params<S: Scalar>(relation: Relation, params: &ParamSet<S>) -> Result<ParamSet<S>> {
    let mut out = params.clone();
    let optional = relation.unused_parameter();
    let tie = |out: &mut ParamSet<S>, free: &str, fixed: &str| -> Result<()> {
        if optional == Some(fixed) && !params.contains(fixed) {
            if params.contains(free) {
                return Err(Error::invalid(
                    free,
                    format!("{} keeps {free} = {fixed}; bind {fixed} instead", relation.id()),
                ));
            }
            return Ok(());
        }
        let v = params.get(fixed)?;
        match params.get(free) {
            Ok(given) if given != v => Err(Error::invalid(
                free,
                format!("{} keeps {free} = {fixed}, got {given} and {v}", relation.id()),
            )),
            _ => {
                out.set(free, v);
                Ok(())
            }
        }
    };
    match relation {
        Relation::SameAlphaCToD | Relation::TypeCToD => tie(&mut out, "beta", "alpha")?,
        Relation::AlphaToBeta => tie(&mut out, "d", "c")?,
        Relation::PToQSameN => tie(&mut out, "M", "N")?,
        Relation::SamePNToM => tie(&mut out, "q", "p")?,
        Relation::AlphaCToBetaD | Relation::TypeAlphaC | Relation::PNToQM => {}
    }
    let bound = |name: &str| !(optional.is_some() && !out.contains(name) && matches!(name, "c" | "d" | "p" | "q"));
    if relation.family() == "meixner" {
        for name in ["alpha", "beta"] {
            check_domain(name, &out.get(name)?, Domain::NotNonpositiveInteger)?;
        }
        for name in ["c", "d"].into_iter().filter(|n| bound(n)) {
            check_domain(name, &out.get(name)?, Domain::NotZeroOne)?;
        }
    } else {
        for name in ["p", "q"].into_iter().filter(|n| bound(n)) {
            check_domain(name, &out.get(name)?, Domain::Nonzero)?;
        }
        let (big_n, big_m) = (out.integer("N")?, out.integer("M")?);
        if big_n > big_m {
            return Err(Error::invalid(
                "M",
                format!("needs N <= M, got N = {big_n}, M = {big_m}"),
            ));
        }
    }
    Ok(out)
}

/// Source and target parameter sets, named as the family names them. An
/// unbound unused parameter is left out of both.
pub fn relation_endpoints<S: Scalar>(relation: Relation, params: &ParamSet<S>) -> Result<(ParamSet<S>, ParamSet<S>)> {
    let p = complete_relation_params(relation, params)?;
    let pairs: [(&str, &str, &str); 2] = if relation.family() == "meixner" {
        [("alpha", "alpha", "beta"), ("c", "c", "d")]
    } else {
        [("p", "p", "q"), ("N", "N", "M")]
    };
    let (mut source, mut target) = (ParamSet::new(), ParamSet::new());
    for (name, from, to) in pairs {
        if relation.unused_parameter() == Some(from) && !p.contains(from) {
            continue;
        }
        source.set(name, p.get(from)?);
        target.set(name, p.get(to)?);
    }
    Ok((source, target))
}

fn hyp21<S: Scalar>(a: S, b: S, c: S, z: &S) -> Result<S> {
    Ok(pfq_eval(&HyperSpec::ordinary(vec![a, b], vec![c]), z, SumMode::Terminating)?.value)
}

fn check_indices(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::invalid("k", format!("needs k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// `c_{k,n}` of a Meixner relation. `x` is required exactly for the
/// connection-type variants.
pub fn meixner_connection_coeffs<S: Scalar>(
    relation: Relation,
    params: &ParamSet<S>,
    n: usize,
    k: usize,
    x: Option<&S>,
) -> Result<S> {
    if relation.family() != "meixner" {
        return Err(Error::UnknownRelation(format!(
            "{} is not a Meixner relation",
            relation.id()
        )));
    }
    check_indices(n, k)?;
    let p = complete_relation_params(relation, params)?;
    let x = match (relation.is_connection_type(), x) {
        (true, Some(x)) => Some(x),
        (true, None) => return Err(Error::MissingParameter("x".into())),
        (false, Some(_)) => {
            return Err(Error::invalid(
                "x",
                format!("{} has x-independent coefficients", relation.id()),
            ))
        }
        (false, None) => None,
    };
    let (alpha, beta) = (p.get("alpha")?, p.get("beta")?);
    let scales = || -> Result<(S, S)> { Ok((p.get("c")?, p.get("d")?)) };
    let one = S::one();
    let binom = binomial_coefficient::<S>(n, k);
    let (nk, ks) = (S::from_usize(n), S::from_usize(k));
    match relation {
        Relation::AlphaCToBetaD => {
            let (c, d) = scales()?;
            let z = (d.clone() * (one.clone() - c.clone())).checked_div(&(c.clone() * (one - d.clone())))?;
            let f = hyp21(ks.clone() - nk, ks.clone() + beta.clone(), ks + alpha.clone(), &z)?;
            Ok(binom * pochhammer(&beta, k) / pochhammer(&alpha, k) * z.powu(k) * f)
        }
        Relation::SameAlphaCToD => {
            let (c, d) = scales()?;
            let denom = c.clone() * (one.clone() - d.clone());
            let off = (c.clone() - d.clone()).checked_div(&denom)?;
            let on = (d * (one - c)).checked_div(&denom)?;
            Ok(binom * off.powu(n - k) * on.powu(k))
        }
        Relation::AlphaToBeta => Ok(
            binom * pochhammer(&(alpha.clone() - beta.clone()), n - k) * pochhammer(&beta, k)
                / nonzero(pochhammer(&alpha, n), "(alpha)_n")?,
        ),
        Relation::TypeCToD => {
            let (c, d) = scales()?;
            let x = x.expect("checked above");
            // (x)_m 2F1(-m, -x; 1-x-m; d/c) summed with (x)_m / (1-x-m)_j = (-1)^j (x)_{m-j},
            // which stays finite at negative integer x
            let m = n - k;
            let z = d.checked_div(&c)?;
            let mut f = S::zero();
            for j in 0..=m {
                let term = pochhammer(&(-S::from_usize(m)), j) * pochhammer(&(-x.clone()), j) * pochhammer(x, m - j)
                    / factorial::<S>(j)
                    * (-z.clone()).powu(j);
                f = f + term;
            }
            Ok(binom * pochhammer(&alpha, k) / d.powu(m) * f / nonzero(pochhammer(&alpha, n), "(alpha)_n")?)
        }
        Relation::TypeAlphaC => {
            let (c, d) = scales()?;
            let x = x.expect("checked above");
            let shift = beta.clone() - alpha.clone() - nk.clone() + one.clone();
            let pole = pochhammer(&shift, k);
            if pole.is_zero() {
                return Err(Error::SingularConfiguration(format!(
                    "(beta - alpha - n + 1)_k vanishes at n = {n}, k = {k} (beta - alpha = {})",
                    beta.clone() - alpha.clone()
                )));
            }
            let spec = MultiVarSpec::new(
                MultiVarKind::F1,
                vec![ks.clone() - nk.clone(), -x.clone(), x.clone(), shift + ks],
            )?;
            let f1 = multivar_eval(&spec, &[c.recip()?, d.recip()?], SumMode::Terminating)?.value;
            let prefactor =
                pochhammer(&(alpha.clone() - beta.clone()), n) / nonzero(pochhammer(&alpha, n), "(alpha)_n")?;
            Ok(prefactor * pochhammer(&beta, k) * pochhammer(&-nk, k) / (factorial::<S>(k) * pole) * f1)
        }
        _ => unreachable!("family checked above"),
    }
}

fn nonzero<S: Scalar>(v: S, what: &str) -> Result<S> {
    if v.is_zero() {
        Err(Error::Pole(format!("{what} vanishes")))
    } else {
        Ok(v)
    }
}

/// `c_{k,n}` of a Krawtchouk relation.
pub fn krawtchouk_connection_coeffs<S: Scalar>(
    relation: Relation,
    params: &ParamSet<S>,
    n: usize,
    k: usize,
) -> Result<S> {
    if relation.family() != "krawtchouk" {
        return Err(Error::UnknownRelation(format!(
            "{} is not a Krawtchouk relation",
            relation.id()
        )));
    }
    check_indices(n, k)?;
    let prm = complete_relation_params(relation, params)?;
    let probabilities = || -> Result<(S, S)> { Ok((prm.get("p")?, prm.get("q")?)) };
    let (big_n, big_m) = (prm.integer("N")?, prm.integer("M")?);
    if n > big_n {
        return Err(Error::DegreeOutOfRange { n, max: big_n });
    }
    let binom = binomial_coefficient::<S>(n, k);
    let neg = |m: usize| -S::from_usize(m);
    match relation {
        Relation::PNToQM => {
            let (p, q) = probabilities()?;
            let ks = S::from_usize(k);
            let f = hyp21(
                ks.clone() - S::from_usize(n),
                ks.clone() + neg(big_m),
                ks + neg(big_n),
                &q.checked_div(&p)?,
            )?;
            Ok(binom * q.checked_div(&p)?.powu(k) * pochhammer(&neg(big_m), k) / pochhammer(&neg(big_n), k) * f)
        }
        Relation::PToQSameN => {
            let (p, q) = probabilities()?;
            let off = (p.clone() - q.clone()).checked_div(&p)?;
            Ok(binom * off.powu(n - k) * q.checked_div(&p)?.powu(k))
        }
        Relation::SamePNToM => Ok(binom
            * pochhammer(&S::from_usize(big_m - big_n), n - k)
            * pochhammer(&neg(big_m), k)
            / pochhammer(&neg(big_n), n)),
        _ => unreachable!("family checked above"),
    }
}

/// How a table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    PowerCollection,
    LinearSolve,
    Composition,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::PowerCollection => "power-collection",
            Method::LinearSolve => "linear-solve",
            Method::Composition => "composition",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-form" => Ok(Method::ClosedForm),
            "power-collection" => Ok(Method::PowerCollection),
            "linear-solve" => Ok(Method::LinearSolve),
            _ => Err(Error::Parse(format!(
                "unknown method `{s}`, expected closed-form | power-collection | linear-solve"
            ))),
        }
    }
}

/// `P_n(x; source) = Σ_{k≤n} c_{k,n} P_k(x; target)` for `n ≤ n_max`.
///
/// Connection-type tables keep the relation and its parameters and evaluate
/// entries on demand for a given `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct ConnectionExpansion<S> {
    pub family: String,
    pub method: Method,
    pub relation: Option<Relation>,
    pub n_max: usize,
    pub source: ParamSet<S>,
    pub target: ParamSet<S>,
    /// Relation parameters for the closed forms.
    pub params: Option<ParamSet<S>>,
    pub x_dependent: bool,
    /// Rows `n`, entries `k ≤ n`; absent when `x_dependent`.
    pub table: Option<Vec<Vec<S>>>,
}

impl<S: Scalar> ConnectionExpansion<S> {
    fn scalar_table(
        family: &str,
        method: Method,
        relation: Option<Relation>,
        source: ParamSet<S>,
        target: ParamSet<S>,
        params: Option<ParamSet<S>>,
        table: Vec<Vec<S>>,
    ) -> Self {
        ConnectionExpansion {
            family: family.to_string(),
            method,
            relation,
            n_max: table.len() - 1,
            source,
            target,
            params,
            x_dependent: false,
            table: Some(table),
        }
    }

    /// `c_{k,n}`; `x` is needed only for connection-type tables.
    pub fn coefficient(&self, k: usize, n: usize, x: Option<&S>) -> Result<S> {
        if n > self.n_max {
            return Err(Error::DegreeOutOfRange { n, max: self.n_max });
        }
        check_indices(n, k)?;
        match (&self.table, self.relation, &self.params) {
            (Some(t), _, _) => Ok(t[n][k].clone()),
            (None, Some(rel), Some(p)) => meixner_connection_coeffs(rel, p, n, k, x),
            _ => Err(Error::invalid(
                "table",
                "expansion has neither a table nor a defining relation",
            )),
        }
    }

    pub fn table(&self) -> Option<&[Vec<S>]> {
        self.table.as_deref()
    }

    /// `Σ_k c_{k,n} P_k(x; target)`.
    pub fn reconstruct(&self, n: usize, x: &S) -> Result<S> {
        let xarg = self.x_dependent.then_some(x);
        let mut acc = S::zero();
        for k in 0..=n {
            let c = self.coefficient(k, n, xarg)?;
            if !c.is_zero() {
                acc = acc + c * family_eval(&self.family, k, x, &self.target)?;
            }
        }
        Ok(acc)
    }

    /// Largest `|Σ_k c_{k,n} P_k(x; target) − P_n(x; source)|` over the samples and
    /// `n ≤ n_max`.
    pub fn reconstruction_error(&self, xs: &[S]) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in xs {
            for n in 0..=self.n_max {
                let lhs = family_eval(&self.family, n, x, &self.source)?;
                let rhs = self.reconstruct(n, x)?;
                worst = worst.max((lhs - rhs).modulus());
            }
        }
        Ok(worst)
    }

    /// Chains `self: a → b` with `next: b → c` into `a → c`.
    pub fn compose(&self, next: &ConnectionExpansion<S>) -> Result<ConnectionExpansion<S>> {
        let (Some(a), Some(b)) = (self.table(), next.table()) else {
            return Err(Error::UnsupportedMode("connection-type tables do not compose".into()));
        };
        if self.family != next.family {
            return Err(Error::invalid(
                "family",
                format!("{} then {}", self.family, next.family),
            ));
        }
        if self.target != next.source {
            return Err(Error::invalid(
                "source",
                "target of the first table must be the source of the second",
            ));
        }
        let n_max = self.n_max.min(next.n_max);
        let table = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).fold(S::zero(), |acc, j| acc + a[n][j].clone() * b[j][k].clone()))
                    .collect()
            })
            .collect();
        Ok(ConnectionExpansion::scalar_table(
            &self.family,
            Method::Composition,
            None,
            self.source.clone(),
            next.target.clone(),
            None,
            table,
        ))
    }

    /// Rows `n`, columns `k`, entries as strings; connection-type tables are
    /// written as their relation id and parameters.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match (&self.table, &self.params) {
            (Some(t), _) => {
                out.push('n');
                for k in 0..=self.n_max {
                    out.push_str(&format!(",k{k}"));
                }
                out.push('\n');
                for (n, row) in t.iter().enumerate() {
                    out.push_str(&n.to_string());
                    for k in 0..=self.n_max {
                        out.push(',');
                        out.push_str(&row.get(k).map_or("0".to_string(), |c| csv_cell(c)));
                    }
                    out.push('\n');
                }
            }
            (None, params) => {
                out.push_str("key,value\n");
                out.push_str(&format!("relation,{}\n", self.relation.map_or("", |r| r.id())));
                out.push_str(&format!("n_max,{}\n", self.n_max));
                for (k, v) in params.iter().flat_map(|p| p.iter()) {
                    out.push_str(&format!("{k},{}\n", csv_cell(v)));
                }
            }
        }
        out
    }
}

fn csv_cell<S: Scalar>(v: &S) -> String {
    let s = v.to_string();
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s
    }
}

/// Table of a closed-form relation.
pub fn closed_form<S: Scalar>(
    relation: Relation,
    params: &ParamSet<S>,
    n_max: usize,
) -> Result<ConnectionExpansion<S>> {
    let full = complete_relation_params(relation, params)?;
    let (source, target) = relation_endpoints(relation, &full)?;
    if relation.is_connection_type() {
        // fail early on a pole rather than at evaluation time
        let probe = S::zero();
        for n in 0..=n_max {
            for k in 0..=n {
                match meixner_connection_coeffs(relation, &full, n, k, Some(&probe)) {
                    Err(e @ Error::SingularConfiguration(_)) => return Err(e),
                    _ => continue,
                }
            }
        }
        return Ok(ConnectionExpansion {
            family: relation.family().to_string(),
            method: Method::ClosedForm,
            relation: Some(relation),
            n_max,
            source,
            target,
            params: Some(full),
            x_dependent: true,
            table: None,
        });
    }
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = (0..=n)
            .map(|k| match relation.family() {
                "meixner" => meixner_connection_coeffs(relation, &full, n, k, None),
                _ => krawtchouk_connection_coeffs(relation, &full, n, k),
            })
            .collect::<Result<Vec<S>>>()?;
        table.push(row);
    }
    Ok(ConnectionExpansion::scalar_table(
        relation.family(),
        Method::ClosedForm,
        Some(relation),
        source,
        target,
        Some(full),
        table,
    ))
}

fn not_applicable(factor: &Factor, reason: impl Into<String>) -> Error {
    Error::MethodNotApplicable {
        factor: factor.describe(),
        reason: reason.into(),
    }
}

fn environment<S: Scalar>(params: &ParamSet<S>) -> std::collections::BTreeMap<String, S> {
    params.as_map().clone()
}

/// Difference of `e(from) − e(to)` at several `x`, which must be constant.
fn exponent_shift_is_constant(src: &str, from: &ParamSet<NumericScalar>, to: &ParamSet<NumericScalar>) -> Result<bool> {
    let e = expr::parse(src)?;
    let mut seen: Option<NumericScalar> = None;
    for xv in [0.0, 1.0, 2.0] {
        let xs = NumericScalar::real(xv)?;
        let bind = |p: &ParamSet<NumericScalar>| {
            let mut env = p.as_map().clone();
            env.insert("x".into(), xs);
            env.insert("theta".into(), xs);
            env
        };
        let diff = e.eval(&bind(from))? - e.eval(&bind(to))?;
        match &seen {
            None => seen = Some(diff),
            Some(d) if !d.approx_eq(&diff, crate::scalar::Tolerance::default()) => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Ratio series `factor(from)/factor(to)` for one factor.
fn factor_ratio<S: Scalar>(
    factor: &Factor,
    from: &ParamSet<S>,
    to: &ParamSet<S>,
    n_max: usize,
) -> Result<TruncatedSeries<S>> {
    let (ef, et) = (environment(from), environment(to));
    match factor {
        Factor::Binomial { base, power } => {
            let b = expr::parse(base)?;
            if b.depends_on("x") || b.depends_on("theta") {
                return Err(not_applicable(factor, "base depends on x"));
            }
            let (kf, kt) = (b.eval(&ef)?, b.eval(&et)?);
            if kf != kt {
                let pe = expr::parse(power)?;
                let reason = if pe.depends_on("x") {
                    "base differs and the exponent depends on x"
                } else {
                    "base differs between the parameter sets"
                };
                return Err(not_applicable(factor, reason));
            }
            if !exponent_shift_is_constant(power, &from.to_numeric(), &to.to_numeric())? {
                return Err(not_applicable(factor, "exponents differ in their x-dependent part"));
            }
            let pe = expr::parse(power)?;
            let bind_x0 = |mut env: std::collections::BTreeMap<String, S>| {
                env.insert("x".into(), S::zero());
                env.insert("theta".into(), S::zero());
                env
            };
            let (pf, pt) = (pe.eval(&bind_x0(ef))?, pe.eval(&bind_x0(et))?);
            Ok(binomial_power(&kf, &(pt - pf), n_max))
        }
        Factor::QInfinite { kappa, q, inverse } => {
            let ke = expr::parse(kappa)?;
            if ke.depends_on("x") || ke.depends_on("theta") {
                return Err(not_applicable(factor, "base depends on x"));
            }
            let qe = expr::parse(q)?;
            let (qf, qt) = (qe.eval(&ef)?, qe.eval(&et)?);
            if qf != qt {
                return Err(not_applicable(factor, "q differs between the parameter sets"));
            }
            let (kf, kt) = (ke.eval(&ef)?, ke.eval(&et)?);
            // (κ_f t;q)_∞/(κ_t t;q)_∞ = Σ (κ_f/κ_t;q)_j/(q;q)_j (κ_t t)^j
            let (num, den) = if *inverse { (kt, kf) } else { (kf, kt) };
            if den.is_zero() {
                return q_infinite_product_series(&num, &qf, n_max, false);
            }
            q_binomial_series(&num.checked_div(&den)?, &den, &qf, n_max)
        }
        other => Err(not_applicable(
            other,
            "only binomial and infinite q-product factors can be collected",
        )),
    }
}

/// Connection coefficients from the ratio of the generating-function factors
/// that carry the varied parameters.
pub fn power_collect<S: Scalar>(
    desc: &FamilyDescriptor,
    from: &ParamSet<S>,
    to: &ParamSet<S>,
    n_max: usize,
) -> Result<ConnectionExpansion<S>> {
    for spec in &desc.parameters {
        check_domain(&spec.name, &from.get(&spec.name)?, spec.domain)?;
        check_domain(&spec.name, &to.get(&spec.name)?, spec.domain)?;
    }
    let varied: Vec<&str> = desc
        .parameter_names()
        .filter(|p| from.get(p).ok() != to.get(p).ok())
        .collect();
    let mut ratio = TruncatedSeries::one(n_max);
    for factor in &desc.factors {
        let mut hits = Vec::new();
        for p in &varied {
            if factor.mentions(p)? {
                hits.push(*p);
            }
        }
        if hits.is_empty() {
            continue;
        }
        ratio = ratio.mul(&factor_ratio(factor, from, to, n_max).map_err(|e| match e {
            Error::MethodNotApplicable { factor, reason } => Error::MethodNotApplicable {
                factor,
                reason: format!("{reason} (varied: {})", hits.join(", ")),
            },
            other => other,
        })?);
    }
    let norm_to = (0..=n_max)
        .map(|k| desc.normalization(k, to))
        .collect::<Result<Vec<S>>>()?;
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let norm_from = desc.normalization(n, from)?;
        if norm_from.is_zero() {
            return Err(Error::ZeroNormalization(n));
        }
        table.push(
            (0..=n)
                .map(|k| ratio.coeff(n - k) * norm_to[k].clone() / norm_from.clone())
                .collect(),
        );
    }
    Ok(ConnectionExpansion::scalar_table(
        &desc.id,
        Method::PowerCollection,
        None,
        from.clone(),
        to.clone(),
        None,
        table,
    ))
}

/// Default abscissae: integers for `x`-families, Chebyshev nodes for the
/// trigonometric ones.
pub fn default_samples<S: Scalar>(desc: &FamilyDescriptor, count: usize) -> Result<Vec<S>> {
    match desc.variable {
        Variable::X => Ok((0..count).map(S::from_usize).collect()),
        _ => (0..count)
            .map(|i| {
                let theta = std::f64::consts::PI * (i as f64 + 0.5) / count as f64;
                S::from_complex(theta.cos().into())
            })
            .collect(),
    }
}

/// Newton-form coefficients of the interpolant through `(xs[i], ys[i])`.
fn divided_differences<S: Scalar>(xs: &[S], ys: &[S]) -> Result<Vec<S>> {
    let mut d = ys.to_vec();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            let gap = xs[i].clone() - xs[i - level].clone();
            d[i] = (d[i].clone() - d[i - 1].clone())
                .checked_div(&gap)
                .map_err(|_| Error::SingularSamples(format!("abscissae {i} and {} coincide", i - level)))?;
        }
    }
    Ok(d)
}

/// Independent oracle: solves `P_n(x_i; from) = Σ_k c_{k,n} P_k(x_i; to)` on
/// `n_max + 1` abscissae, triangularly by degree.
pub fn connect_linear_solve<S: Scalar>(
    family: &str,
    from: &ParamSet<S>,
    to: &ParamSet<S>,
    n_max: usize,
) -> Result<ConnectionExpansion<S>> {
    let desc = descriptor(family)?;
    let xs = default_samples(desc, n_max + 1)?;
    connect_linear_solve_at(family, from, to, n_max, &xs)
}

pub fn connect_linear_solve_at<S: Scalar>(
    family: &str,
    from: &ParamSet<S>,
    to: &ParamSet<S>,
    n_max: usize,
    xs: &[S],
) -> Result<ConnectionExpansion<S>> {
    if xs.len() != n_max + 1 {
        return Err(Error::invalid(
            "samples",
            format!("need {} abscissae, got {}", n_max + 1, xs.len()),
        ));
    }
    let newton = |params: &ParamSet<S>, n: usize| -> Result<Vec<S>> {
        let ys = xs
            .iter()
            .map(|x| family_eval(family, n, x, params))
            .collect::<Result<Vec<S>>>()?;
        divided_differences(xs, &ys)
    };
    // column k holds P_k(·; to) in the Newton basis; entries above row k vanish
    let basis = (0..=n_max).map(|k| newton(to, k)).collect::<Result<Vec<_>>>()?;
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rhs = newton(from, n)?;
        let mut c = vec![S::zero(); n + 1];
        for j in (0..=n).rev() {
            let mut r = rhs[j].clone();
            for (k, ck) in c.iter().enumerate().skip(j + 1) {
                r = r - ck.clone() * basis[k][j].clone();
            }
            c[j] = r.checked_div(&basis[j][j]).map_err(|_| {
                Error::SingularSamples(format!(
                    "P_{j} has vanishing leading Newton coefficient; try other abscissae"
                ))
            })?;
        }
        table.push(c);
    }
    Ok(ConnectionExpansion::scalar_table(
        family,
        Method::LinearSolve,
        None,
        from.clone(),
        to.clone(),
        None,
        table,
    ))
}
