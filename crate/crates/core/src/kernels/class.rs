use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PatternId;
use crate::numeric::{ceil_with_slack, ratio_to_f64};

/// Graph classes with a dedicated kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    General,
    Bull,
    Kt(usize),
    TBull(usize),
    Paw,
    K1t(usize),
    Colored(usize),
    MisKtFree(usize),
}

impl GraphClass {
    /// Registry key of the kernel handling this class.
    pub fn family(self) -> &'static str {
        match self {
            GraphClass::General => "general",
            GraphClass::Bull => "bull",
            GraphClass::Kt(_) => "kt",
            GraphClass::TBull(_) => "tbull",
            GraphClass::Paw => "paw",
            GraphClass::K1t(_) => "k1t",
            GraphClass::Colored(_) => "colored",
            GraphClass::MisKtFree(_) => "mis-ktfree",
        }
    }

    /// The induced subgraph whose absence defines the class.
    pub fn forbidden(self) -> Option<PatternId> {
        match self {
            GraphClass::General | GraphClass::Colored(_) => None,
            GraphClass::Bull => Some(PatternId::Bull),
            GraphClass::Kt(t) | GraphClass::MisKtFree(t) => Some(PatternId::Clique(t)),
            GraphClass::TBull(t) => Some(PatternId::TBull(t)),
            GraphClass::Paw => Some(PatternId::Paw),
            GraphClass::K1t(t) => Some(PatternId::Claw(t)),
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            GraphClass::Kt(t) | GraphClass::TBull(t) | GraphClass::MisKtFree(t) => t >= 3,
            GraphClass::K1t(t) | GraphClass::Colored(t) => t >= 1,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Config(format!("class parameter out of range in '{self}'")))
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::General | GraphClass::Bull | GraphClass::Paw => f.write_str(self.family()),
            GraphClass::Kt(t)
            | GraphClass::TBull(t)
            | GraphClass::K1t(t)
            | GraphClass::Colored(t)
            | GraphClass::MisKtFree(t) => write!(f, "{}:{t}", self.family()),
        }
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => {
                let p = p
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad class parameter in '{s}'")))?;
                (h, Some(p))
            }
            None => (s, None),
        };
        let class = match (head, param) {
            ("general", None) => GraphClass::General,
            ("bull", None) => GraphClass::Bull,
            ("paw", None) => GraphClass::Paw,
            ("kt", Some(t)) => GraphClass::Kt(t),
            ("tbull", Some(t)) => GraphClass::TBull(t),
            ("k1t", Some(t)) => GraphClass::K1t(t),
            ("colored", Some(c)) => GraphClass::Colored(c),
            ("mis-ktfree", Some(t)) => GraphClass::MisKtFree(t),
            _ => return Err(Error::Config(format!("unknown graph class '{s}'"))),
        };
        class.validate()
    }
}

impl Serialize for GraphClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The EH constant of the t-bull-free class: `1/4` for the bull itself,
/// `4/(t+17)` from `t = 4` on.
pub fn tbull_delta(t: usize) -> Rational64 {
    if t == 3 {
        Rational64::new(1, 4)
    } else {
        Rational64::new(4, t as i64 + 17)
    }
}

/// Size bound of the kernel for one class, evaluated exactly where the
/// formula is polynomial with integer coefficients and with a slack-adjusted
/// ceiling where it involves real constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassBound {
    pub class: GraphClass,
    pub delta: Option<Rational64>,
    /// Leading constant `c` of `c·(k−1)^e + (k−1)`, for the EH-based classes.
    pub constant: Option<f64>,
    pub exponent: Option<f64>,
}

impl ClassBound {
    pub fn for_class(class: GraphClass) -> Self {
        let eh = |delta: Rational64, c: f64, e: f64| ClassBound {
            class,
            delta: Some(delta),
            constant: Some(c),
            exponent: Some(e),
        };
        match class {
            GraphClass::Bull => eh(Rational64::new(1, 4), 2.0 / (2f64.powf(0.75) - 1.0), 1.75),
            GraphClass::Kt(t) => {
                let t = t as f64;
                let c = (t - 1.0) / (2f64.powf((t - 2.0) / (t - 1.0)) - 1.0);
                eh(Rational64::new(1, t as i64 - 1), c, (2.0 * t - 3.0) / (t - 1.0))
            }
            GraphClass::TBull(t) => {
                let delta = tbull_delta(t);
                let d = ratio_to_f64(delta);
                let c = (t as f64 - 1.0) / (2f64.powf(1.0 - d) - 1.0);
                eh(delta, c, 2.0 - d)
            }
            GraphClass::Paw => eh(Rational64::new(1, 3), 2.0 / (2f64.powf(2.0 / 3.0) - 1.0), 5.0 / 3.0),
            GraphClass::MisKtFree(t) => ClassBound {
                class,
                delta: Some(Rational64::new(1, t as i64 - 1)),
                constant: None,
                exponent: None,
            },
            GraphClass::General | GraphClass::K1t(_) | GraphClass::Colored(_) => {
                ClassBound { class, delta: None, constant: None, exponent: None }
            }
        }
    }

    /// Largest vertex count a reduced instance may have.
    pub fn bound(&self, k: usize) -> u64 {
        let k = k as u64;
        let km1 = k.saturating_sub(1);
        match self.class {
            GraphClass::General => (k * k).saturating_sub(1),
            GraphClass::K1t(t) => t as u64 * km1,
            GraphClass::Colored(c) => c as u64 * km1,
            GraphClass::MisKtFree(t) => k.saturating_pow(t as u32 - 1).saturating_sub(1),
            _ => {
                let c = self.constant.expect("EH classes carry a constant");
                let e = self.exponent.expect("EH classes carry an exponent");
                ceil_with_slack(c * (km1 as f64).powf(e)) + km1
            }
        }
    }

    /// Human-readable form of [`ClassBound::bound`].
    pub fn formula(&self) -> String {
        match self.class {
            GraphClass::General => "k^2 - 1".into(),
            GraphClass::K1t(t) => format!("{t}(k-1)"),
            GraphClass::Colored(c) => format!("{c}(k-1)"),
            GraphClass::MisKtFree(t) => format!("k^{} - 1", t - 1),
            _ => format!(
                "ceil({:.6} * (k-1)^{:.6}) + (k-1)",
                self.constant.unwrap_or_default(),
                self.exponent.unwrap_or_default()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["general", "bull", "paw", "kt:4", "tbull:5", "k1t:3", "colored:2", "mis-ktfree:3"] {
            assert_eq!(s.parse::<GraphClass>().unwrap().to_string(), s);
        }
        assert!("kt".parse::<GraphClass>().is_err());
        assert!("kt:2".parse::<GraphClass>().is_err());
        assert!("tree".parse::<GraphClass>().is_err());
    }

    #[test]
    fn constants_match_closed_forms() {
        let bull = ClassBound::for_class(GraphClass::Bull);
        assert!(bull.constant.unwrap() < 3.0);
        let tb3 = ClassBound::for_class(GraphClass::TBull(3));
        assert!((tb3.constant.unwrap() - bull.constant.unwrap()).abs() < 1e-12);
        let paw = ClassBound::for_class(GraphClass::Paw);
        assert!(paw.constant.unwrap() < 3.41);
        let k3 = ClassBound::for_class(GraphClass::Kt(3));
        assert!((k3.constant.unwrap() - 2.0 / (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(tbull_delta(4), Rational64::new(4, 21));
    }

    #[test]
    fn bound_values() {
        assert_eq!(ClassBound::for_class(GraphClass::General).bound(3), 8);
        // 4.828… · 3^{3/2} = 25.09…, ceiling 26, plus k−1 = 3.
        assert_eq!(ClassBound::for_class(GraphClass::Kt(3)).bound(4), 29);
        assert_eq!(ClassBound::for_class(GraphClass::K1t(3)).bound(3), 6);
        assert_eq!(ClassBound::for_class(GraphClass::Colored(2)).bound(3), 4);
        assert_eq!(ClassBound::for_class(GraphClass::MisKtFree(3)).bound(3), 8);
        assert_eq!(ClassBound::for_class(GraphClass::Bull).bound(1), 0);
    }
}
