//! Per-`(k, d)` verification record and its JSON encoding.
//!
//! Every integer is written as a decimal string so that consumers without
//! big-integer support never truncate a value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::Form;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EvenOnly,
    Failed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EvenOnly => "even-only",
            Verdict::Failed => "failed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even-only" => Ok(Verdict::EvenOnly),
            "failed" => Ok(Verdict::Failed),
            other => Err(Error::domain(format!("unknown verdict {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// Index into the congruence solutions of the first form of odd order.
    OddOrder(usize),
    /// First odd exponent `m` with `k^m` represented.
    OddExponent(u64),
    NoCongruenceSolutions,
    OrderOverflow,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::OddOrder(i) => write!(f, "odd-order({i})"),
            FailureReason::OddExponent(m) => write!(f, "odd-exponent({m})"),
            FailureReason::NoCongruenceSolutions => f.write_str("no-congruence-solutions"),
            FailureReason::OrderOverflow => f.write_str("order-overflow"),
        }
    }
}

impl FromStr for FailureReason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unknown failure reason {s:?}"));
        let arg = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_suffix(')') };
        match s {
            "no-congruence-solutions" => Ok(FailureReason::NoCongruenceSolutions),
            "order-overflow" => Ok(FailureReason::OrderOverflow),
            _ => {
                if let Some(i) = arg("odd-order(") {
                    Ok(FailureReason::OddOrder(i.parse().map_err(|_| bad())?))
                } else if let Some(m) = arg("odd-exponent(") {
                    Ok(FailureReason::OddExponent(m.parse().map_err(|_| bad())?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Record that `(d^2, 0, 2k - 1)` does (or does not) meet the even-order,
/// even-exponent test for the divisor `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub k: u64,
    pub d: u64,
    /// `D = d^2 (2k - 1)`.
    pub d_value: BigInt,
    /// `-4D`.
    pub discriminant: BigInt,
    pub congruence_solutions: Vec<u64>,
    pub forms: Vec<Form>,
    pub orders: Vec<u64>,
    pub class_number: u64,
    /// Largest order, `M`; zero when there are no forms.
    pub max_order: u64,
    /// Exponents `m` in `[1, M + 1]` with `k^m` primitively represented.
    pub represented_exponents: Vec<u64>,
    pub verdict: Verdict,
    pub failure_reason: Option<FailureReason>,
}

impl Certificate {
    pub fn is_even_only(&self) -> bool {
        self.verdict == Verdict::EvenOnly
    }

    pub fn to_json(&self) -> CertificateJson {
        let s = |v: &dyn ToString| v.to_string();
        CertificateJson {
            k: s(&self.k),
            d: s(&self.d),
            big_d: s(&self.d_value),
            discriminant: s(&self.discriminant),
            congruence_solutions: self.congruence_solutions.iter().map(|v| s(v)).collect(),
            forms: self.forms.iter().map(|f| [s(f.a()), s(f.b()), s(f.c())]).collect(),
            orders: self.orders.iter().map(|v| s(v)).collect(),
            class_number: s(&self.class_number),
            max_order: s(&self.max_order),
            represented_exponents: self.represented_exponents.iter().map(|v| s(v)).collect(),
            verdict: self.verdict.to_string(),
            failure_reason: self.failure_reason.map(|r| r.to_string()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificate serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::domain(format!("invalid certificate JSON: {e}")))?;
        Certificate::try_from(raw)
    }
}

/// Wire form of a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub k: String,
    pub d: String,
    #[serde(rename = "D")]
    pub big_d: String,
    pub discriminant: String,
    pub congruence_solutions: Vec<String>,
    pub forms: Vec<[String; 3]>,
    pub orders: Vec<String>,
    pub class_number: String,
    #[serde(rename = "M")]
    pub max_order: String,
    pub represented_exponents: Vec<String>,
    pub verdict: String,
    pub failure_reason: Option<String>,
}

fn parse<T: FromStr>(field: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::domain(format!("field {field}: cannot parse {v:?}")))
}

fn parse_all<T: FromStr>(field: &str, vs: &[String]) -> Result<Vec<T>> {
    vs.iter().map(|v| parse(field, v)).collect()
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = Error;

    fn try_from(raw: CertificateJson) -> Result<Self> {
        let forms = raw
            .forms
            .iter()
            .map(|[a, b, c]| Form::new(parse("forms", a)?, parse("forms", b)?, parse("forms", c)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            k: parse("k", &raw.k)?,
            d: parse("d", &raw.d)?,
            d_value: parse("D", &raw.big_d)?,
            discriminant: parse("discriminant", &raw.discriminant)?,
            congruence_solutions: parse_all("congruence_solutions", &raw.congruence_solutions)?,
            forms,
            orders: parse_all("orders", &raw.orders)?,
            class_number: parse("class_number", &raw.class_number)?,
            max_order: parse("M", &raw.max_order)?,
            represented_exponents: parse_all("represented_exponents", &raw.represented_exponents)?,
            verdict: raw.verdict.parse()?,
            failure_reason: raw.failure_reason.as_deref().map(str::parse).transpose()?,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        writeln!(f, "k = {}, d = {}", self.k, self.d)?;
        writeln!(f, "  D = {}, discriminant = {}, class number = {}", self.d_value, self.discriminant, self.class_number)?;
        writeln!(f, "  congruence solutions l_i: [{}]", join(&self.congruence_solutions))?;
        for (form, order) in self.forms.iter().zip(&self.orders) {
            writeln!(f, "  f = {form}  order {order}")?;
        }
        if self.orders.len() < self.forms.len() {
            for form in &self.forms[self.orders.len()..] {
                writeln!(f, "  f = {form}  order not computed")?;
            }
        }
        writeln!(f, "  M = {}", self.max_order)?;
        writeln!(f, "  represented exponents m <= M + 1: [{}]", join(&self.represented_exponents))?;
        match self.failure_reason {
            None => write!(f, "  verdict: {}", self.verdict),
            Some(reason) => write!(f, "  verdict: {} ({reason})", self.verdict),
        }
    }
}
