//! Closed-form entanglement values `q0 + Σ c_i log₂(r_i)` with `r_i` from a
//! small fixed set of radicals.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RadicalBase {
    Three,
    ThreeMinusSqrt3,
    TwoMinusSqrt3,
}

impl RadicalBase {
    pub const ALL: [RadicalBase; 3] = [
        RadicalBase::Three,
        RadicalBase::ThreeMinusSqrt3,
        RadicalBase::TwoMinusSqrt3,
    ];

    pub fn value(self) -> f64 {
        let s3 = 3f64.sqrt();
        match self {
            RadicalBase::Three => 3.0,
            // rationalized forms avoid cancellation
            RadicalBase::ThreeMinusSqrt3 => 6.0 / (3.0 + s3),
            RadicalBase::TwoMinusSqrt3 => 1.0 / (2.0 + s3),
        }
    }

    pub fn log2(self) -> f64 {
        self.value().log2()
    }

    fn token(self) -> &'static str {
        match self {
            RadicalBase::Three => "3",
            RadicalBase::ThreeMinusSqrt3 => "3-sqrt3",
            RadicalBase::TwoMinusSqrt3 => "2-sqrt3",
        }
    }
}

/// `q0 + Σ c_i · log₂(base_i)`, kept in normal form: one term per base,
/// sorted, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    q0: Rational64,
    terms: Vec<(Rational64, RadicalBase)>,
}

impl ExactValue {
    pub fn new(q0: Rational64, terms: Vec<(Rational64, RadicalBase)>) -> Result<Self> {
        let mut merged: Vec<(Rational64, RadicalBase)> = Vec::new();
        for base in RadicalBase::ALL {
            let c: Rational64 = terms.iter().filter(|t| t.1 == base).map(|t| t.0).sum();
            if !c.is_zero() {
                merged.push((c, base));
            }
        }
        let v = ExactValue { q0, terms: merged };
        let e = v.eval();
        if !e.is_finite() || e < -1e-12 {
            return Err(Error::ExactValue(format!("{v} evaluates to {e}, not ≥ 0")));
        }
        Ok(v)
    }

    pub fn integer(k: i64) -> Self {
        ExactValue {
            q0: Rational64::from_integer(k),
            terms: Vec::new(),
        }
    }

    pub fn q0(&self) -> Rational64 {
        self.q0
    }

    pub fn terms(&self) -> &[(Rational64, RadicalBase)] {
        &self.terms
    }

    /// Integer value, if the expression has no logarithmic terms.
    pub fn as_integer(&self) -> Option<i64> {
        if self.terms.is_empty() && self.q0.is_integer() {
            Some(self.q0.to_integer())
        } else {
            None
        }
    }

    pub fn eval(&self) -> f64 {
        let r = |q: Rational64| q.to_f64().expect("rational fits f64");
        self.terms
            .iter()
            .fold(r(self.q0), |acc, &(c, b)| acc + r(c) * b.log2())
    }

    /// Simplest expression with integer `q0 ∈ [-8, 16]` and integer coefficients
    /// in `[-3, 3]` that lies within `tol` of `e`. Simplicity is the sum of
    /// absolute coefficients, then the distance to `e`.
    pub fn identify(e: f64, tol: f64) -> Option<ExactValue> {
        let logs = RadicalBase::ALL.map(RadicalBase::log2);
        let mut best: Option<(i64, f64, [i64; 4])> = None;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let rest = a as f64 * logs[0] + b as f64 * logs[1] + c as f64 * logs[2];
                    let q0 = (e - rest).round();
                    if !(-8.0..=16.0).contains(&q0) {
                        continue;
                    }
                    let err = (q0 + rest - e).abs();
                    let cost = a.abs() + b.abs() + c.abs();
                    if err <= tol && best.is_none_or(|(bc, be, _)| (cost, err) < (bc, be)) {
                        best = Some((cost, err, [q0 as i64, a, b, c]));
                    }
                }
            }
        }
        best.map(|(_, _, [q0, a, b, c])| {
            let int = Rational64::from_integer;
            ExactValue::new(
                int(q0),
                vec![
                    (int(a), RadicalBase::Three),
                    (int(b), RadicalBase::ThreeMinusSqrt3),
                    (int(c), RadicalBase::TwoMinusSqrt3),
                ],
            )
            .expect("identified value is finite")
        })
    }
}

/// Evaluates an exact value to double precision.
pub fn exact_value_eval(v: &ExactValue) -> f64 {
    v.eval()
}

fn fmt_rational(q: Rational64) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.q0.is_zero() || self.terms.is_empty() {
            out.push_str(&fmt_rational(self.q0));
        }
        for &(c, b) in &self.terms {
            let sign = if c.is_negative() { "-" } else { "+" };
            if !out.is_empty() || c.is_negative() {
                out.push_str(sign);
            }
            let a = c.abs();
            if a != Rational64::from_integer(1) {
                out.push_str(&fmt_rational(a));
                out.push('*');
            }
            out.push_str(&format!("log2({})", b.token()));
        }
        f.write_str(&out)
    }
}

impl FromStr for ExactValue {
    type Err = Error;

    /// Grammar: a sum of terms, each `q`, `q*log2(r)`, `qlog2(r)` or `log2(r)`,
    /// with `q` an integer or `a/b` and `r ∈ {3, 3-sqrt3, 2-sqrt3}`
    /// (`sqrt(3)` also accepted). Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |m: &str| Error::ExactValue(format!("{m} in {s:?}"));
        if src.is_empty() {
            return Err(err("empty expression"));
        }
        let b = src.as_bytes();
        let mut i = 0;
        let mut q0 = Rational64::zero();
        let mut terms = Vec::new();
        while i < b.len() {
            let mut sign = 1i64;
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return Err(err("expected '+' or '-'"));
            }
            let start = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
                i += 1;
            }
            let coef = if start == i {
                None
            } else {
                let txt = &src[start..i];
                let q = match txt.split_once('/') {
                    Some((n, d)) => {
                        let n: i64 = n.parse().map_err(|_| err("bad numerator"))?;
                        let d: i64 = d.parse().map_err(|_| err("bad denominator"))?;
                        if d == 0 {
                            return Err(err("zero denominator"));
                        }
                        Rational64::new(n, d)
                    }
                    None => Rational64::from_integer(txt.parse().map_err(|_| err("bad integer"))?),
                };
                Some(q)
            };
            if i < b.len() && b[i] == b'*' {
                i += 1;
            }
            if src[i..].starts_with("log2(") {
                i += 5;
                let close = src[i..].find(')').ok_or_else(|| err("unclosed log2("))?;
                let mut arg = &src[i..i + close];
                i += close + 1;
                // "sqrt(3)" contains a ')' of its own
                if arg.ends_with("sqrt(3") {
                    if i < b.len() && b[i] == b')' {
                        i += 1;
                    } else {
                        return Err(err("unclosed log2("));
                    }
                    arg = &arg[..arg.len() - 6];
                    arg = match arg {
                        "3-" => "3-sqrt3",
                        "2-" => "2-sqrt3",
                        _ => return Err(err("unsupported radical")),
                    };
                }
                let base = match arg {
                    "3" => RadicalBase::Three,
                    "3-sqrt3" => RadicalBase::ThreeMinusSqrt3,
                    "2-sqrt3" => RadicalBase::TwoMinusSqrt3,
                    _ => return Err(err("unsupported radical")),
                };
                terms.push((coef.unwrap_or(Rational64::from_integer(1)) * sign, base));
            } else {
                match coef {
                    Some(q) => q0 += q * sign,
                    None => return Err(err("expected a number or log2(...)")),
                }
            }
        }
        ExactValue::new(q0, terms)
    }
}

impl Serialize for ExactValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => ExactValue::new(Rational64::from_integer(k), Vec::new()),
            Raw::Text(t) => t.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}
