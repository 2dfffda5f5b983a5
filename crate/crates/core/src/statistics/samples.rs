use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::fmt17;
use crate::dirichlet::ParamSet;

/// One accepted sample point `s = σ₀ + it`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub t: f64,
    pub log_abs_zeta: f64,
    /// `P₀(s) = Σ_{p≤X} p^{−s}`
    pub p0: Complex<f64>,
    /// `M(s) = M₁(s)·M₂(s)`
    pub m_value: Complex<f64>,
    /// `exp(−P(s))`, `P = P₁ + P₂`
    pub exp_neg_p: Complex<f64>,
    pub p1: Complex<f64>,
    pub p2: Complex<f64>,
    pub m1: Complex<f64>,
    pub m2: Complex<f64>,
    /// Truncated exponentials of `−P₁` and `−P₂`.
    pub trunc_exp1: Complex<f64>,
    pub trunc_exp2: Complex<f64>,
}

impl SampleRecord {
    pub fn re_p0(&self) -> f64 {
        self.p0.re
    }
}

/// The outcome of a seeded sampling run over `t ∈ [T, 2T]`.
///
/// `records` holds the accepted draws in draw order; `rejected` lists the
/// heights discarded because `|ζ|` underflowed there (each was redrawn).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub params: ParamSet,
    pub seed: u64,
    pub records: Vec<SampleRecord>,
    pub rejected: Vec<f64>,
}

const COLUMNS: &str = "t,log_abs_zeta,re_p0,im_p0,re_m,im_m,re_exp_neg_p,im_exp_neg_p,\
re_p1,im_p1,re_p2,im_p2,re_m1,im_m1,re_m2,im_m2,re_exp1,im_exp1,re_exp2,im_exp2";

impl SampleSet {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn log_abs_zeta(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.log_abs_zeta).collect()
    }

    pub fn re_p0(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.p0.re).collect()
    }

    /// Writes one row per record with the fixed column order above.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{COLUMNS}")?;
        for r in &self.records {
            let cols = [
                r.t,
                r.log_abs_zeta,
                r.p0.re,
                r.p0.im,
                r.m_value.re,
                r.m_value.im,
                r.exp_neg_p.re,
                r.exp_neg_p.im,
                r.p1.re,
                r.p1.im,
                r.p2.re,
                r.p2.im,
                r.m1.re,
                r.m1.im,
                r.m2.re,
                r.m2.im,
                r.trunc_exp1.re,
                r.trunc_exp1.im,
                r.trunc_exp2.re,
                r.trunc_exp2.im,
            ];
            let line: Vec<String> = cols.iter().map(|&x| fmt17(x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }
}
