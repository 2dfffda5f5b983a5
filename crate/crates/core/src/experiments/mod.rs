//! Verification harnesses, one per statement, each producing a [`CheckReport`].

mod lemma1;
mod lemma4;
mod prop1;
mod prop4;
mod sampling;

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dirichlet::ParamSet;
use crate::numerics::zeta::DEFAULT_HEIGHT_CAP;
use crate::numerics::{PanelSummary, ZetaEvaluator};
use crate::statistics::fmt17;
use crate::{Error, Result};

pub use lemma1::{check_lemma1, check_lemma1_with, diagonal_sum, power_coefficients};
pub use lemma4::{check_lemma4, check_lemma4_with, lemma4_main_term};
pub use prop1::{check_prop1, check_prop1_with};
pub use prop4::{check_prop4, check_prop4_with, prop4_main_terms, MainTerms};
pub use sampling::{
    check_clt, check_clt_from, check_prop2, check_prop2_from, check_prop3, check_prop3_from, desk_variance,
    run_clt_sample, run_clt_sample_with,
};

/// Outcome of one check: the two sides of the statement and diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: ParamSet,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub details: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, params: ParamSet, lhs: f64, rhs: f64) -> Self {
        let abs_error = (lhs - rhs).abs();
        Self {
            name: name.into(),
            params,
            lhs,
            rhs,
            abs_error,
            rel_error: abs_error / rhs.abs().max(1e-300),
            details: BTreeMap::new(),
        }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn detail_f64(&self, key: &str) -> Option<f64> {
        self.details.get(key).and_then(Value::as_f64)
    }

    fn with_panels(self, s: &PanelSummary) -> Self {
        self.detail("quad_panels", s.panels)
            .detail("quad_evaluations", s.evaluations)
            .detail("quad_error_sum", s.error_sum)
            .detail("quad_max_panel_error", s.max_panel_error)
            .detail("quad_singular_panels", s.singular_panels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn ledger_header() -> &'static str {
        "name,T,W,X,Y,N,seed,lhs,rhs,rel_error"
    }

    /// One ledger row; `N` and `seed` are blank for seedless checks.
    pub fn ledger_row(&self) -> String {
        let int = |k: &str| {
            self.details
                .get(k)
                .and_then(Value::as_u64)
                .map(|v| v.to_string())
                .unwrap_or_default()
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.name,
            fmt17(self.params.t),
            fmt17(self.params.w),
            fmt17(self.params.x),
            fmt17(self.params.y),
            int("N"),
            int("seed"),
            fmt17(self.lhs),
            fmt17(self.rhs),
            fmt17(self.rel_error)
        )
    }

    /// Appends to a CSV ledger, writing the header when the file is new or empty.
    pub fn append_to_ledger(&self, path: &Path) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        if f.metadata()?.len() == 0 {
            writeln!(f, "{}", Self::ledger_header())?;
        }
        writeln!(f, "{}", self.ledger_row())?;
        Ok(())
    }
}

/// Numerical settings shared by the checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Absolute tolerance requested from the zeta evaluator.
    pub zeta_tol: f64,
    /// Relative tolerance per quadrature panel.
    pub panel_rel_tol: f64,
    /// Absolute tolerance per unit length of a panel, scaled by the
    /// integrand's expected size.
    pub panel_abs_tol: f64,
    /// Evaluation budget per panel.
    pub panel_max_evaluations: usize,
    /// Largest tolerated share of redrawn sample points.
    pub max_rejection_rate: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            zeta_tol: 1e-10,
            panel_rel_tol: 1e-3,
            panel_abs_tol: 1e-6,
            panel_max_evaluations: 20_000,
            max_rejection_rate: 0.01,
        }
    }
}

/// Zeta evaluator whose height cap covers `[T, 2T]` with room to spare.
pub(crate) fn evaluator_for(top: f64) -> ZetaEvaluator {
    ZetaEvaluator::new().with_height_cap(DEFAULT_HEIGHT_CAP.max(2.0 * top))
}

/// Panel width resolving oscillation up to angular frequency `omega`.
pub(crate) fn panel_width(omega: f64, length: f64) -> f64 {
    if omega > 0.0 {
        (8.0 / omega).min(1.0).min(length)
    } else {
        length
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (all cores when `None`).
/// Results of every check are independent of the worker count.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidParams("thread count must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
