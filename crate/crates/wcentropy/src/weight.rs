//! Weight-function catalog.
//!
//! A weight function phi is a nonnegative function on [0, inf) that
//! modulates where on the support the entropy functionals put emphasis.
//! Each catalog family carries its exact antiderivative
//! Psi(x) = integral of phi over [0, x], which is the only way phi enters
//! the order-statistics estimators, plus an analytic answer to the
//! integrability condition required for almost-sure convergence of the
//! empirical estimator: for some p > 1 and split point a > 0,
//!
//! ```text
//! integral_0^a phi(x) dx < inf   and   integral_a^inf phi(x) x^-p dx < inf
//! ```
//!
//! Parameters are validated at construction so evaluation stays branch-free.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::special::erf;

/// A parametric nonnegative weight function with exact antiderivative.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    /// phi(x) = c, c >= 0
    Constant { c: f64 },
    /// phi(x) = x
    Identity,
    /// phi(x) = sum of `coeffs[i] * x^i`, all coefficients >= 0
    Polynomial { coeffs: Vec<f64> },
    /// phi(x) = exp(-x^2 / (2 sigma^2)), sigma > 0
    Gaussian { sigma: f64 },
    /// phi(x) = exp(t x); t = 0 degenerates to phi = 1
    ExponentialTilt { t: f64 },
}

/// Outcome of the integrability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidityVerdict {
    Valid,
    Invalid { reason: String },
}

impl ValidityVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidityVerdict::Valid)
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            ValidityVerdict::Valid => None,
            ValidityVerdict::Invalid { reason } => Some(reason),
        }
    }
}

impl WeightFunction {
    pub fn constant(c: f64) -> Result<Self> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::Parameter(format!(
                "constant weight requires c >= 0, got {c}"
            )));
        }
        Ok(WeightFunction::Constant { c })
    }

    pub fn identity() -> Self {
        WeightFunction::Identity
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter(
                "polynomial weight requires at least one coefficient".into(),
            ));
        }
        if let Some(bad) = coeffs.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return Err(Error::Parameter(format!(
                "polynomial coefficients must be finite and >= 0, got {bad}"
            )));
        }
        Ok(WeightFunction::Polynomial { coeffs })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::Parameter(format!(
                "gaussian weight requires sigma > 0, got {sigma}"
            )));
        }
        Ok(WeightFunction::Gaussian { sigma })
    }

    pub fn exponential_tilt(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Parameter(format!(
                "exponential tilt requires finite t, got {t}"
            )));
        }
        Ok(WeightFunction::ExponentialTilt { t })
    }

    /// One representative per family, used by the default identity-check
    /// grid and the cross-route test matrices.
    pub fn catalog() -> Vec<WeightFunction> {
        vec![
            WeightFunction::Constant { c: 1.0 },
            WeightFunction::Identity,
            WeightFunction::Polynomial {
                coeffs: vec![1.0, 2.0, 0.5],
            },
            WeightFunction::Gaussian { sigma: 1.0 },
            WeightFunction::ExponentialTilt { t: -0.5 },
        ]
    }

    /// phi(x) without the domain check; callers guarantee x >= 0.
    #[inline]
    pub(crate) fn phi_unchecked(&self, x: f64) -> f64 {
        match self {
            WeightFunction::Constant { c } => *c,
            WeightFunction::Identity => x,
            WeightFunction::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
            }
            WeightFunction::Gaussian { sigma } => (-x * x / (2.0 * sigma * sigma)).exp(),
            WeightFunction::ExponentialTilt { t } => (t * x).exp(),
        }
    }

    /// Psi(x) without the domain check; callers guarantee x >= 0.
    #[inline]
    pub(crate) fn psi_unchecked(&self, x: f64) -> f64 {
        match self {
            WeightFunction::Constant { c } => c * x,
            WeightFunction::Identity => 0.5 * x * x,
            WeightFunction::Polynomial { coeffs } => {
                // sum of a_i x^(i+1) / (i+1), Horner on the integrated form
                let mut acc = 0.0;
                for (i, a) in coeffs.iter().enumerate().rev() {
                    acc = acc * x + a / (i + 1) as f64;
                }
                acc * x
            }
            WeightFunction::Gaussian { sigma } => {
                sigma * (PI / 2.0).sqrt() * erf(x / (sigma * std::f64::consts::SQRT_2))
            }
            WeightFunction::ExponentialTilt { t } => {
                if *t == 0.0 {
                    x
                } else {
                    (t * x).exp_m1() / t
                }
            }
        }
    }

    /// Evaluate phi at `x >= 0`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!(
                "weight functions are defined on [0, inf), got x = {x}"
            )));
        }
        let v = self.phi_unchecked(x);
        if !v.is_finite() {
            return Err(Error::Domain(format!("phi({x}) overflows for {self}")));
        }
        Ok(v)
    }

    /// Evaluate the exact antiderivative Psi at `x >= 0`.
    pub fn antiderivative(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!(
                "weight functions are defined on [0, inf), got x = {x}"
            )));
        }
        let v = self.psi_unchecked(x);
        if !v.is_finite() {
            return Err(Error::Domain(format!("psi({x}) overflows for {self}")));
        }
        Ok(v)
    }

    /// Highest power with a nonzero coefficient; `None` when phi is
    /// identically zero.
    fn effective_degree(&self) -> Option<usize> {
        match self {
            WeightFunction::Constant { c } => (*c != 0.0).then_some(0),
            WeightFunction::Identity => Some(1),
            WeightFunction::Polynomial { coeffs } => coeffs.iter().rposition(|a| *a != 0.0),
            _ => None,
        }
    }

    /// Decide the integrability condition analytically for `p > 1` and
    /// split point `a > 0`.
    ///
    /// The head integral is finite for every catalog member (phi is
    /// continuous), so the verdict hinges on the tail integral of
    /// phi(x) x^-p: polynomial-type families of degree d need p > d + 1,
    /// the Gaussian always passes, and the exponential tilt passes exactly
    /// for t <= 0.
    pub fn check_integrability(&self, p: f64, a: f64) -> Result<ValidityVerdict> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::Parameter(format!(
                "integrability exponent must satisfy p > 1, got {p}"
            )));
        }
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::Parameter(format!(
                "integrability split point must satisfy 0 < a < inf, got {a}"
            )));
        }
        let verdict = match self {
            WeightFunction::Gaussian { .. } => ValidityVerdict::Valid,
            WeightFunction::ExponentialTilt { t } => {
                if *t <= 0.0 {
                    ValidityVerdict::Valid
                } else {
                    ValidityVerdict::Invalid {
                        reason: format!(
                            "exp({t}*x) grows faster than any power, so the tail \
                             integral of phi(x) x^-{p} diverges; t must be <= 0"
                        ),
                    }
                }
            }
            _ => match self.effective_degree() {
                None => ValidityVerdict::Valid, // phi identically zero
                Some(d) => {
                    if p > (d + 1) as f64 {
                        ValidityVerdict::Valid
                    } else {
                        ValidityVerdict::Invalid {
                            reason: format!(
                                "tail integral of x^{d} * x^-{p} diverges; \
                                 degree-{d} weights need p > {}",
                                d + 1
                            ),
                        }
                    }
                }
            },
        };
        Ok(verdict)
    }

    /// Parse the CLI/config form `family:param[,param...]`, e.g.
    /// `gaussian:0.5`, `exptilt:-0.2`, `poly:1,2,0.5`, `constant:1`,
    /// `identity`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (family, params) = match spec.split_once(':') {
            Some((f, p)) => (f.trim(), Some(p.trim())),
            None => (spec, None),
        };
        let parse_params = |raw: Option<&str>| -> Result<Vec<f64>> {
            let raw = raw.unwrap_or("");
            if raw.is_empty() {
                return Ok(Vec::new());
            }
            raw.split(',')
                .map(|tok| {
                    tok.trim().parse::<f64>().map_err(|_| {
                        Error::Parameter(format!(
                            "cannot parse weight-function parameter {tok:?} in {spec:?}"
                        ))
                    })
                })
                .collect()
        };
        let want = |n: usize, params: &[f64]| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "{family} takes {n} parameter(s), got {} in {spec:?}",
                    params.len()
                )))
            }
        };

        let params = parse_params(params)?;
        match family {
            "constant" => {
                want(1, &params)?;
                Self::constant(params[0])
            }
            "identity" => {
                want(0, &params)?;
                Ok(Self::identity())
            }
            "poly" | "polynomial" => {
                if params.is_empty() {
                    return Err(Error::Parameter(format!(
                        "poly takes at least one coefficient in {spec:?}"
                    )));
                }
                Self::polynomial(params)
            }
            "gaussian" => {
                want(1, &params)?;
                Self::gaussian(params[0])
            }
            "exptilt" => {
                want(1, &params)?;
                Self::exponential_tilt(params[0])
            }
            other => Err(Error::Parameter(format!(
                "unknown weight-function family {other:?} \
                 (expected constant, identity, poly, gaussian, exptilt)"
            ))),
        }
    }

    /// Short label for plot legends: `σ=0.5` for Gaussian, `t=-1` for the
    /// exponential tilt, the spec string otherwise.
    pub fn legend_label(&self) -> String {
        match self {
            WeightFunction::Gaussian { sigma } => format!("σ={sigma}"),
            WeightFunction::ExponentialTilt { t } => format!("t={t}"),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFunction::Constant { c } => write!(f, "constant:{c}"),
            WeightFunction::Identity => write!(f, "identity"),
            WeightFunction::Polynomial { coeffs } => {
                write!(f, "poly:")?;
                for (i, a) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
            WeightFunction::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            WeightFunction::ExponentialTilt { t } => write!(f, "exptilt:{t}"),
        }
    }
}
