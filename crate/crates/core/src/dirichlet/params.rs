//! Scale-dependent parameters `T, W, X, Y, σ₀` and the mollifier prime caps.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Smallest admissible base height: below `e^e` the triple logarithm is
/// negative and none of the default formulas make sense.
pub const MIN_HEIGHT: f64 = 16.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "W")]
    pub w: f64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    pub sigma0: f64,
    #[serde(rename = "L1")]
    pub l1: u32,
    #[serde(rename = "L2")]
    pub l2: u32,
    /// Set when any default had to be moved away from its asymptotic formula.
    pub clamped: bool,
}

/// Explicit values that replace the defaults derived from `T`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamOverrides {
    pub w: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    /// Sets `W = (σ₀ − ½)·log T`; conflicts with `w`.
    pub sigma0: Option<f64>,
    pub l1: Option<u32>,
    pub l2: Option<u32>,
}

fn loglog(t: f64) -> f64 {
    t.ln().ln()
}

fn logloglog(t: f64) -> f64 {
    t.ln().ln().ln()
}

impl ParamSet {
    /// Defaults for base height `t`:
    /// `W = (log log log T)⁴`, `X = T^{1/(log log log T)²}`,
    /// `Y = T^{1/(log log T)²}`, `L1 = ⌊100 log log T⌋`, `L2 = ⌊100 log log log T⌋`,
    /// clamped to `W ≥ 3`, `X ≤ √T`, `2 ≤ Y ≤ X`, `L1, L2 ≥ 1`.
    pub fn from_height(t: f64) -> Result<Self> {
        Self::resolve(t, &ParamOverrides::default())
    }

    pub fn resolve(t: f64, o: &ParamOverrides) -> Result<Self> {
        if !t.is_finite() || t < MIN_HEIGHT {
            return Err(Error::InvalidParams(format!(
                "T = {t} must be finite and at least {MIN_HEIGHT}"
            )));
        }
        if o.w.is_some() && o.sigma0.is_some() {
            return Err(Error::InvalidParams("give either W or sigma0, not both".into()));
        }
        let log_t = t.ln();
        let ll = loglog(t);
        let lll = logloglog(t);
        let mut clamped = false;

        let w = match (o.w, o.sigma0) {
            (Some(w), _) => w,
            (None, Some(s)) => (s - 0.5) * log_t,
            (None, None) => {
                let formula = lll.powi(4);
                clamped |= formula < 3.0;
                formula.max(3.0)
            }
        };
        let sigma0 = 0.5 + w / log_t;

        let x = match o.x {
            Some(x) => x,
            None => {
                let formula = t.powf(1.0 / (lll * lll));
                let cap = t.sqrt();
                clamped |= !(formula <= cap);
                if formula <= cap { formula } else { cap }
            }
        };
        let y = match o.y {
            Some(y) => y,
            None => {
                let formula = t.powf(1.0 / (ll * ll));
                let v = formula.max(2.0).min(x);
                clamped |= v != formula;
                v
            }
        };
        let l1 = o.l1.unwrap_or_else(|| {
            let f = (100.0 * ll).floor();
            clamped |= f < 1.0;
            f.max(1.0) as u32
        });
        let l2 = o.l2.unwrap_or_else(|| {
            let f = (100.0 * lll).floor();
            clamped |= f < 1.0;
            f.max(1.0) as u32
        });

        let p = Self {
            t,
            w,
            x,
            y,
            sigma0,
            l1,
            l2,
            clamped,
        };
        p.validate()?;
        log::debug!("resolved parameters: {}", p.to_config_line());
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if !(self.w.is_finite() && self.w > 0.0) {
            return bad(format!("W = {} must be positive", self.w));
        }
        if !(self.sigma0 > 0.5 && self.sigma0 <= 3.0) {
            return bad(format!("sigma0 = {} must lie in (1/2, 3]", self.sigma0));
        }
        if !(self.x.is_finite() && self.x > 0.0 && self.x <= self.t) {
            return bad(format!("X = {} must lie in (0, T]", self.x));
        }
        if !(self.y > 0.0 && self.y <= self.x) {
            return bad(format!("Y = {} must lie in (0, X]", self.y));
        }
        if self.x >= 2.0 && self.y < 2.0 {
            return bad(format!("Y = {} must be at least 2 when X ≥ 2", self.y));
        }
        Ok(())
    }

    /// True when there is no prime below `X`, so every prime sum is empty.
    pub fn is_degenerate(&self) -> bool {
        self.x < 2.0
    }

    pub fn log_t(&self) -> f64 {
        self.t.ln()
    }

    /// `log log T`, the natural scale of the variance of `log|ζ|`.
    pub fn loglog_t(&self) -> f64 {
        loglog(self.t)
    }

    pub fn logloglog_t(&self) -> f64 {
        logloglog(self.t)
    }

    /// Upper bound `Y^{L1}·X^{L2}` on the mollifier support.
    pub fn support_bound(&self) -> f64 {
        self.y.powi(self.l1 as i32) * self.x.powi(self.l2 as i32)
    }

    /// A copy at another base height with `W, X, Y, L1, L2` kept (so `σ₀` moves).
    pub fn with_height(&self, t: f64) -> Result<Self> {
        if !t.is_finite() || t < MIN_HEIGHT {
            return Err(Error::InvalidParams(format!("T = {t} must be at least {MIN_HEIGHT}")));
        }
        let p = Self {
            t,
            sigma0: 0.5 + self.w / t.ln(),
            ..self.clone()
        };
        p.validate()?;
        Ok(p)
    }

    fn fields(&self) -> [(&'static str, String); 8] {
        [
            ("T", format!("{}", self.t)),
            ("W", format!("{}", self.w)),
            ("X", format!("{}", self.x)),
            ("Y", format!("{}", self.y)),
            ("sigma0", format!("{}", self.sigma0)),
            ("L1", self.l1.to_string()),
            ("L2", self.l2.to_string()),
            ("clamped", self.clamped.to_string()),
        ]
    }

    /// Flat `key=value` block, one pair per line, fixed key order.
    pub fn to_config_block(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    /// The same pairs on one line, space separated.
    pub fn to_config_line(&self) -> String {
        self.fields()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a block written by [`ParamSet::to_config_block`]. Lines may carry
    /// a leading `#` and surrounding whitespace; unknown keys are rejected.
    pub fn from_config_block(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim().trim_start_matches('#').trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("malformed line `{line}`")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| {
            map.get(k)
                .ok_or_else(|| Error::InvalidParams(format!("missing key {k}")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad value for {k}")))
        };
        let int = |k: &str| -> Result<u32> {
            get(k)?
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad value for {k}")))
        };
        for k in map.keys() {
            if !["T", "W", "X", "Y", "sigma0", "L1", "L2", "clamped"].contains(&k.as_str()) {
                return Err(Error::InvalidParams(format!("unknown key {k}")));
            }
        }
        let p = Self {
            t: num("T")?,
            w: num("W")?,
            x: num("X")?,
            y: num("Y")?,
            sigma0: num("sigma0")?,
            l1: int("L1")?,
            l2: int("L2")?,
            clamped: get("clamped")?
                .parse()
                .map_err(|_| Error::InvalidParams("bad value for clamped".into()))?,
        };
        p.validate()?;
        Ok(p)
    }
}
