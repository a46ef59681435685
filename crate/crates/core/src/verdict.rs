//! Pass/fail reports shared by every real-rootedness test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::poly::UniPoly;
use crate::rational::{Rational, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A hyperbolic input whose image has nonreal zeros.
    Polynomial {
        input: UniPoly,
        output: UniPoly,
        nonreal_zeros: usize,
    },
    /// A violating position in a sequence.
    Index { index: usize, detail: String },
    /// `S_2m(0)` keeps the sign of `capital_p` for every `m >= tail_start`.
    SignTail {
        tail_start: usize,
        sign: Sign,
        capital_p: UniPoly,
        #[serde(with = "crate::rational::fraction_vec")]
        sampled: Vec<Rational>,
    },
    /// A line `y = s x + t` meeting the symbol curve in nonreal points.
    Line {
        #[serde(with = "crate::rational::fraction")]
        s: Rational,
        #[serde(with = "crate::rational::fraction")]
        t: Rational,
        restriction: UniPoly,
        nonreal_zeros: usize,
    },
    /// A Jensen-type polynomial `sum_k C(n,k) gamma_k x^k` with nonreal zeros.
    Jensen {
        n: usize,
        polynomial: UniPoly,
        nonreal_zeros: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub params: BTreeMap<String, String>,
}

impl VerdictReport {
    pub fn pass() -> Self {
        VerdictReport {
            verdict: Verdict::Pass,
            witness: None,
            params: BTreeMap::new(),
        }
    }

    pub fn fail(witness: Witness) -> Self {
        VerdictReport {
            verdict: Verdict::Fail,
            witness: Some(witness),
            params: BTreeMap::new(),
        }
    }

    pub fn inconclusive(witness: Option<Witness>) -> Self {
        VerdictReport {
            verdict: Verdict::Inconclusive,
            witness,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}
