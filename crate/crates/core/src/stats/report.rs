use std::fmt;

use serde::{Deserialize, Serialize};

/// Significance level used by the goodness-of-fit decisions.
pub const LEVEL: f64 = 0.01;

/// Outcome of one statistical or numerical check.
///
/// `pass` records the decision rule named in `rule`: either `p_value > tolerance`
/// or `statistic <= tolerance`. Non-blocking reports are informative only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub name: String,
    #[serde(with = "finite_or_null")]
    pub statistic: f64,
    pub p_value: Option<f64>,
    #[serde(with = "finite_or_null")]
    pub tolerance: f64,
    pub pass: bool,
    pub sample_size: usize,
    pub rule: String,
    #[serde(default = "blocking_default")]
    pub blocking: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn blocking_default() -> bool {
    true
}

/// Non-finite numbers have no JSON form; they travel as `null` and come back as NaN.
mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

impl TestReport {
    /// Passes iff `p_value > level`.
    pub fn from_p_value(
        name: impl Into<String>,
        statistic: f64,
        p_value: f64,
        level: f64,
        sample_size: usize,
    ) -> Self {
        Self {
            name: name.into(),
            statistic,
            p_value: Some(p_value),
            tolerance: level,
            pass: p_value > level,
            sample_size,
            rule: "p_value > tolerance".into(),
            blocking: true,
            detail: None,
        }
    }

    /// Passes iff `statistic <= tolerance` (and the statistic is a number).
    pub fn from_bound(
        name: impl Into<String>,
        statistic: f64,
        tolerance: f64,
        sample_size: usize,
    ) -> Self {
        Self {
            name: name.into(),
            statistic,
            p_value: None,
            tolerance,
            pass: statistic <= tolerance,
            sample_size,
            rule: "statistic <= tolerance".into(),
            blocking: true,
            detail: None,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn non_blocking(mut self) -> Self {
        self.blocking = false;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// A failed check that could not be evaluated at all.
    pub fn errored(name: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            statistic: f64::NAN,
            p_value: None,
            tolerance: f64::NAN,
            pass: false,
            sample_size: 0,
            rule: "evaluation error".into(),
            blocking: true,
            detail: Some(message.into()),
        }
    }
}

impl fmt::Display for TestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.pass, self.blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-blocking)",
        };
        write!(
            f,
            "{verdict} {}: statistic={:.6e}",
            self.name, self.statistic
        )?;
        if let Some(p) = self.p_value {
            write!(f, " p={p:.4e}")?;
        }
        write!(
            f,
            " tolerance={:.3e} n={}",
            self.tolerance, self.sample_size
        )?;
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}
