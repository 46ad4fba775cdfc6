//! Campaign configuration and per-campaign defaults.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use zalcman_core::{NormKind, SpaceSpec, ZalcmanOrder};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CampaignKind {
    /// Carathéodory coefficient inequalities over sampled Herglotz measures.
    Caratheodory,
    /// `|a_m a_n - a_{m+n-1}| <= (m-1)(n-1)` over sampled starlike functions.
    Zalcman1d,
    /// Ball-normalized functional of lifted maps.
    ZalcmanBall,
    /// Domain-normalized functional of lifted maps.
    ZalcmanDomain,
    /// Minkowski-functional identities and finite-difference gradients.
    Gradients,
    /// Functional vs. its expression through the coefficients of `h`.
    Reduction,
    /// Extremal mappings attain the bound.
    Sharpness,
    /// Extremal search for `|J_{m,n}|`.
    Search,
}

impl CampaignKind {
    pub const VERIFY: [CampaignKind; 7] = [
        CampaignKind::Caratheodory,
        CampaignKind::Zalcman1d,
        CampaignKind::ZalcmanBall,
        CampaignKind::ZalcmanDomain,
        CampaignKind::Gradients,
        CampaignKind::Reduction,
        CampaignKind::Sharpness,
    ];

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            CampaignKind::Caratheodory => "caratheodory",
            CampaignKind::Zalcman1d => "zalcman1d",
            CampaignKind::ZalcmanBall => "ball",
            CampaignKind::ZalcmanDomain => "domain",
            CampaignKind::Gradients => "gradients",
            CampaignKind::Reduction => "reduction",
            CampaignKind::Sharpness => "sharpness",
            CampaignKind::Search => "search",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            CampaignKind::Caratheodory | CampaignKind::Zalcman1d => 100_000,
            CampaignKind::ZalcmanBall | CampaignKind::ZalcmanDomain | CampaignKind::Reduction => {
                10_000
            }
            CampaignKind::Gradients => 1_000,
            CampaignKind::Sharpness => 64,
            CampaignKind::Search => 1,
        }
    }

    pub fn default_norm(self) -> NormKind {
        match self {
            CampaignKind::ZalcmanDomain | CampaignKind::Sharpness => NormKind::Sup,
            _ => NormKind::EUCLIDEAN,
        }
    }

    /// Slack allowed below zero margin before a sample counts as a violation.
    pub fn default_tolerance(self) -> f64 {
        match self {
            CampaignKind::Reduction => 1e-10,
            CampaignKind::Sharpness => 1e-12,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for CampaignKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "caratheodory" => CampaignKind::Caratheodory,
            "zalcman1d" => CampaignKind::Zalcman1d,
            "ball" | "zalcmanBall" => CampaignKind::ZalcmanBall,
            "domain" | "zalcmanDomain" => CampaignKind::ZalcmanDomain,
            "gradients" => CampaignKind::Gradients,
            "reduction" => CampaignKind::Reduction,
            "sharpness" => CampaignKind::Sharpness,
            "search" => CampaignKind::Search,
            other => return Err(HarnessError::Usage(format!("unknown campaign `{other}`"))),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(HarnessError::Usage(format!(
                "unknown format `{other}` (json|csv)"
            ))),
        }
    }
}

/// Parses `l2`, `sup`, `l1` or `lp:P`.
pub fn parse_norm(s: &str) -> Result<NormKind> {
    match s {
        "l2" => Ok(NormKind::EUCLIDEAN),
        "sup" => Ok(NormKind::Sup),
        "l1" => Ok(NormKind::L1),
        _ => {
            let p = s
                .strip_prefix("lp:")
                .and_then(|p| p.parse::<f64>().ok())
                .ok_or_else(|| {
                    HarnessError::Usage(format!("unknown norm `{s}` (l2|sup|lp:P|l1)"))
                })?;
            if p == 1.0 {
                Ok(NormKind::L1)
            } else if p == f64::INFINITY {
                Ok(NormKind::Sup)
            } else if p > 1.0 {
                Ok(NormKind::Lp(p))
            } else {
                Err(HarnessError::Usage(format!(
                    "lp exponent must be at least 1, got {p}"
                )))
            }
        }
    }
}

pub fn norm_label(kind: NormKind) -> String {
    match kind {
        NormKind::Lp(2.0) => "l2".to_owned(),
        NormKind::Lp(p) => format!("lp:{p}"),
        NormKind::Sup => "sup".to_owned(),
        NormKind::L1 => "l1".to_owned(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub campaign: CampaignKind,
    pub seed: u64,
    pub samples: usize,
    pub dim: usize,
    pub norm: NormKind,
    pub order: (usize, usize),
    pub tolerance: f64,
    /// Refinement budget of the extremal search.
    pub budget: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl CampaignConfig {
    /// Defaults for `campaign`.
    pub fn new(campaign: CampaignKind) -> Self {
        Self {
            campaign,
            seed: 0,
            samples: campaign.default_samples(),
            dim: 3,
            norm: campaign.default_norm(),
            order: (2, 3),
            tolerance: campaign.default_tolerance(),
            budget: 5_000,
            out: None,
            format: OutputFormat::Json,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_space(mut self, dim: usize, norm: NormKind) -> Self {
        self.dim = dim;
        self.norm = norm;
        self
    }

    pub fn with_order(mut self, m: usize, n: usize) -> Self {
        self.order = (m, n);
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(HarnessError::Usage("samples must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(HarnessError::Usage(
                "tolerance must be positive and finite".into(),
            ));
        }
        if self.dim == 0 {
            return Err(HarnessError::Usage("dim must be at least 1".into()));
        }
        if self.campaign == CampaignKind::ZalcmanDomain && self.dim < 2 {
            return Err(HarnessError::Usage(
                "domain campaign needs dim >= 2 (dim 1 is the one-variable case, use zalcman1d)"
                    .into(),
            ));
        }
        self.zalcman_order()?;
        self.space()?;
        Ok(())
    }

    pub fn zalcman_order(&self) -> Result<ZalcmanOrder> {
        ZalcmanOrder::new(self.order.0, self.order.1)
            .map_err(|e| HarnessError::Usage(e.to_string()))
    }

    pub fn space(&self) -> Result<SpaceSpec> {
        SpaceSpec::new(self.dim, self.norm).map_err(|e| HarnessError::Usage(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_parsing() {
        assert_eq!(parse_norm("l2").unwrap(), NormKind::Lp(2.0));
        assert_eq!(parse_norm("lp:3").unwrap(), NormKind::Lp(3.0));
        assert_eq!(parse_norm("lp:1").unwrap(), NormKind::L1);
        assert_eq!(parse_norm("sup").unwrap(), NormKind::Sup);
        assert!(parse_norm("lp:0.5").is_err());
        assert!(parse_norm("l7").is_err());
        assert_eq!(norm_label(NormKind::Lp(3.0)), "lp:3");
    }

    #[test]
    fn inconsistent_configs_are_usage_errors() {
        let cfg = CampaignConfig::new(CampaignKind::ZalcmanDomain).with_space(1, NormKind::Sup);
        assert!(matches!(cfg.validate(), Err(HarnessError::Usage(_))));
        let cfg = CampaignConfig::new(CampaignKind::Zalcman1d).with_samples(0);
        assert!(matches!(cfg.validate(), Err(HarnessError::Usage(_))));
        let cfg = CampaignConfig::new(CampaignKind::Zalcman1d).with_order(2, 5);
        assert!(matches!(cfg.validate(), Err(HarnessError::Usage(_))));
        let mut cfg = CampaignConfig::new(CampaignKind::Zalcman1d);
        cfg.tolerance = 0.0;
        assert!(matches!(cfg.validate(), Err(HarnessError::Usage(_))));
        assert!(CampaignConfig::new(CampaignKind::Search).validate().is_ok());
    }

    #[test]
    fn campaign_names_round_trip() {
        for kind in CampaignKind::VERIFY {
            assert_eq!(kind.cli_name().parse::<CampaignKind>().unwrap(), kind);
        }
    }
}
