//! Rising factorials, q-shifted factorials and binomial coefficients.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

/// Factors `|a q^j|` below this are treated as identity in infinite products.
pub const INFINITE_PRODUCT_CUTOFF: f64 = 1e-17;

/// `(a)_n = a(a+1)…(a+n−1)`, with `(a)_0 = 1`.
pub fn pochhammer<S: Scalar>(a: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut factor = a.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return S::zero();
        }
        acc = acc * factor.clone();
        factor = factor + S::one();
    }
    acc
}

/// `(−n)_k = (−1)^k n!/(n−k)!` for `k ≤ n`, zero otherwise.
pub fn neg_int_pochhammer<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * S::from_usize(n - j);
    }
    if k % 2 == 1 {
        -acc
    } else {
        acc
    }
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, j| acc * S::from_usize(j))
}

/// `n!/(k!(n−k)!)`; zero when `k > n`.
pub fn binomial_coefficient<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * S::from_usize(n - j) / S::from_usize(j + 1);
    }
    acc
}

/// Length of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QLength {
    Finite(usize),
    Infinite,
}

/// `(a;q)_n = Π_{j<n} (1 − a q^j)`.
///
/// The infinite product is numeric-only; it stops once `|a q^j|` drops
/// below [`INFINITE_PRODUCT_CUTOFF`].
pub fn q_pochhammer<S: Scalar>(a: &S, q: &S, n: QLength) -> Result<S> {
    match n {
        QLength::Finite(n) => {
            let mut acc = S::one();
            let mut aq = a.clone();
            for _ in 0..n {
                acc = acc * (S::one() - aq.clone());
                aq = aq * q.clone();
            }
            Ok(acc)
        }
        QLength::Infinite => {
            if S::KIND == FieldKind::Exact {
                return Err(Error::UnsupportedMode(
                    "infinite q-products are only available in the numeric field".into(),
                ));
            }
            let qm = q.modulus();
            if !(qm > 0.0 && qm < 1.0) {
                return Err(Error::invalid("q", "infinite products need 0 < |q| < 1"));
            }
            let mut acc = S::one();
            let mut aq = a.clone();
            while aq.modulus() >= INFINITE_PRODUCT_CUTOFF {
                acc = acc * (S::one() - aq.clone());
                aq = aq * q.clone();
            }
            Ok(acc)
        }
    }
}

/// `(a e^{iθ}, a e^{−iθ}; q)_n` for `x = cos θ`, as the real product
/// `Π_{j<n} (1 − 2 a x q^j + a² q^{2j})`.
pub fn conjugate_pair_q_pochhammer<S: Scalar>(a: &S, x: &S, q: &S, n: usize) -> S {
    let two = S::from_int(2);
    let mut acc = S::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - two.clone() * aq.clone() * x.clone() + aq.clone() * aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// Checks of the classical Pochhammer inequalities on parameter grids.
pub mod bounds {
    use super::*;
    use crate::scalar::ExactScalar;

    /// One evaluated inequality instance.
    #[derive(Debug, Clone)]
    pub struct BoundSample {
        pub label: String,
        /// The real parameter of the instance (`Re u`, `v`, `w` or `z`).
        pub parameter: f64,
        pub lhs: f64,
        pub rhs: f64,
    }

    impl BoundSample {
        pub fn holds(&self) -> bool {
            self.lhs <= self.rhs
        }
    }

    #[derive(Debug, Clone)]
    pub struct BoundReport {
        pub name: &'static str,
        pub samples: Vec<BoundSample>,
    }

    impl BoundReport {
        pub fn violations(&self) -> Vec<&BoundSample> {
            self.samples.iter().filter(|s| !s.holds()).collect()
        }
    }

    fn fact_f64(n: usize) -> f64 {
        (1..=n).fold(1.0, |acc, j| acc * j as f64)
    }

    fn exact_poch_f64(a: &ExactScalar, n: usize) -> f64 {
        pochhammer(a, n).to_f64()
    }

    /// `|(u)_j| ≥ (Re u)(j−1)!` for `Re u > 0`, `j ≥ 1`. Stored as
    /// `lhs = (Re u)(j−1)!`, `rhs = |(u)_j|` so that `lhs ≤ rhs` is the claim.
    pub fn modulus_lower(u: Complex64, j: usize) -> BoundSample {
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..j {
            prod *= u + i as f64;
        }
        BoundSample {
            label: format!("u={u}, j={j}"),
            parameter: u.re,
            lhs: u.re * fact_f64(j - 1),
            rhs: prod.norm(),
        }
    }

    /// `(v)_n/n! ≤ (1+n)^v` for `v ≥ 0`.
    pub fn normalized_growth(v: &ExactScalar, n: usize) -> BoundSample {
        BoundSample {
            label: format!("v={v}, n={n}"),
            parameter: v.to_f64(),
            lhs: exact_poch_f64(v, n) / fact_f64(n),
            rhs: (1.0 + n as f64).powf(v.to_f64()),
        }
    }

    /// `(n+w)_k ≤ max{1, 2^w}(n+k)!/n!` for `w > −1`.
    ///
    /// Only true for `w ≤ 1`: for larger `w` the left side grows like
    /// `((n+k)/n)^{w−1}` times the right, e.g. `(4)_3 = 120 > 96`.
    pub fn shifted_growth(w: &ExactScalar, n: usize, k: usize) -> BoundSample {
        let base = ExactScalar::integer(n as i64) + w.clone();
        let ratio: f64 = (n + 1..=n + k).fold(1.0, |acc, j| acc * j as f64);
        BoundSample {
            label: format!("w={w}, n={n}, k={k}"),
            parameter: w.to_f64(),
            lhs: exact_poch_f64(&base, k),
            rhs: 1f64.max(2f64.powf(w.to_f64())) * ratio,
        }
    }

    /// `(z+k)_{n−k} ≤ (n!/k!)(1+n)^{|z|}` for real `z`, `k ≤ n`, checked
    /// with the modulus on the left.
    pub fn tail_growth(z: &ExactScalar, k: usize, n: usize) -> BoundSample {
        let base = z.clone() + ExactScalar::integer(k as i64);
        let ratio: f64 = (k + 1..=n).fold(1.0, |acc, j| acc * j as f64);
        BoundSample {
            label: format!("z={z}, k={k}, n={n}"),
            parameter: z.to_f64(),
            lhs: exact_poch_f64(&base, n - k).abs(),
            rhs: ratio * (1.0 + n as f64).powf(z.to_f64().abs()),
        }
    }

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    /// Runs all four inequalities on grids of at least 100 points each.
    pub fn check_all() -> Vec<BoundReport> {
        let mut reports = Vec::new();

        let mut s = Vec::new();
        for &(re, im) in &[
            (0.1, 0.0),
            (0.5, 2.0),
            (1.0, -1.0),
            (2.5, 0.0),
            (0.01, 5.0),
            (3.0, 3.0),
            (7.0, -0.5),
            (0.3, -10.0),
            (10.0, 1.0),
            (1.5, 0.25),
        ] {
            for j in 1..=12 {
                s.push(modulus_lower(Complex64::new(re, im), j));
            }
        }
        reports.push(BoundReport {
            name: "modulus lower bound",
            samples: s,
        });

        let mut s = Vec::new();
        for v in [
            r(0, 1),
            r(1, 3),
            r(1, 2),
            r(1, 1),
            r(3, 2),
            r(2, 1),
            r(5, 2),
            r(4, 1),
            r(7, 1),
            r(10, 1),
        ] {
            for n in 0..=11 {
                s.push(normalized_growth(&v, n));
            }
        }
        reports.push(BoundReport {
            name: "normalized growth",
            samples: s,
        });

        let mut s = Vec::new();
        for w in [
            r(-9, 10),
            r(-1, 2),
            r(0, 1),
            r(1, 3),
            r(1, 1),
            r(3, 2),
            r(5, 2),
            r(4, 1),
        ] {
            for n in 0..=4 {
                for k in 0..=6 {
                    s.push(shifted_growth(&w, n, k));
                }
            }
        }
        reports.push(BoundReport {
            name: "shifted growth",
            samples: s,
        });

        let mut s = Vec::new();
        for z in [r(-7, 2), r(-1, 1), r(-1, 3), r(0, 1), r(2, 5), r(3, 1), r(11, 2)] {
            for n in 0..=6 {
                for k in 0..=n {
                    s.push(tail_growth(&z, k, n));
                }
            }
        }
        reports.push(BoundReport {
            name: "tail growth",
            samples: s,
        });

        reports
    }
}
