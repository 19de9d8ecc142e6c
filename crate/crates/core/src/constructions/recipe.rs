//! Named example constructions with their parameters and the counts a
//! verification run must reproduce.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::local::SingularityKind;

use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeId {
    X33Nine,
    X24Seven,
    X223Four,
    X6Wps,
    QuarticSixOtp,
}

impl RecipeId {
    pub const ALL: [RecipeId; 5] = [Self::X33Nine, Self::X24Seven, Self::X223Four, Self::X6Wps, Self::QuarticSixOtp];

    pub fn name(self) -> &'static str {
        match self {
            Self::X33Nine => "x33_nine",
            Self::X24Seven => "x24_seven",
            Self::X223Four => "x223_four",
            Self::X6Wps => "x6_wps",
            Self::QuarticSixOtp => "quartic_six_otp",
        }
    }

    /// Parameters a recipe of this kind must carry.
    pub fn required_parameters(self) -> &'static [&'static str] {
        match self {
            Self::X33Nine => &["a", "b", "primes"],
            Self::X24Seven | Self::X223Four | Self::QuarticSixOtp => &["seed", "primes", "cap"],
            Self::X6Wps => &["seed", "primes", "cap", "surface"],
        }
    }
}

impl fmt::Display for RecipeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RecipeId {
    type Err = ConstructionError;

    /// Accepts `x33_nine` and `x33-nine` alike.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|id| id.name() == norm)
            .ok_or_else(|| ConstructionError::InvalidRecipe(format!("unknown recipe id '{s}'")))
    }
}

/// Counts the verification must reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationPlan {
    /// Triple points; ordinary and isolated when `isolated`, otherwise points
    /// of multiplicity exactly 3 on a singular curve.
    pub expected_otps: usize,
    pub isolated: bool,
    /// Expected singular points of other kinds (absent kinds: none).
    pub expected_other: BTreeMap<SingularityKind, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub id: RecipeId,
    pub params: BTreeMap<String, String>,
    pub plan: VerificationPlan,
}

impl ConstructionRecipe {
    /// The recipe with the parameters used throughout the documentation.
    pub fn default_for(id: RecipeId) -> Self {
        let (pairs, otps): (&[(&str, &str)], usize) = match id {
            RecipeId::X33Nine => (&[("a", "1,1,1,1"), ("b", "1,1,-1,-1"), ("primes", "7,13,31")], 9),
            RecipeId::X24Seven => (&[("seed", "1"), ("primes", "11,13,17,19,23,29,31,37"), ("cap", "16")], 7),
            RecipeId::X223Four => (&[("seed", "1"), ("primes", "7,11,13,17,19"), ("cap", "16")], 4),
            RecipeId::X6Wps => (&[("seed", "1"), ("primes", "11,13,17,19,23,29,31,37"), ("cap", "16"), ("surface", "fallback")], 6),
            RecipeId::QuarticSixOtp => (&[("seed", "1"), ("primes", "11,13,17,19,23,29,31,37"), ("cap", "16")], 6),
        };
        Self {
            id,
            params: pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            plan: VerificationPlan { expected_otps: otps, isolated: id != RecipeId::QuarticSixOtp, expected_other: BTreeMap::new() },
        }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        for key in self.id.required_parameters() {
            if !self.params.contains_key(*key) {
                return Err(ConstructionError::InvalidRecipe(format!("{} needs parameter '{key}'", self.id)));
            }
        }
        if self.plan.expected_otps == 0 || self.plan.expected_other.values().any(|&c| c == 0) {
            return Err(ConstructionError::InvalidRecipe("expected counts must be positive".into()));
        }
        self.primes()?;
        self.seed()?;
        Ok(())
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn parse_param<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConstructionError> {
        self.param(key)
            .map(|v| v.trim().parse().map_err(|_| ConstructionError::InvalidRecipe(format!("bad value '{v}' for '{key}'"))))
            .transpose()
    }

    pub fn seed(&self) -> Result<Option<u64>, ConstructionError> {
        self.parse_param("seed")
    }

    pub fn cap(&self) -> Result<Option<usize>, ConstructionError> {
        self.parse_param("cap")
    }

    pub fn primes(&self) -> Result<Vec<u64>, ConstructionError> {
        let Some(list) = self.param("primes") else {
            return Ok(Vec::new());
        };
        list.split(',')
            .map(|p| p.trim().parse().map_err(|_| ConstructionError::InvalidRecipe(format!("bad prime '{p}'"))))
            .collect()
    }
}
