//! Bounded-search evidence for membership in `W_r(m,l)` and `W'_r(m,l)`.
//!
//! A finite search cannot decide membership for irrational input, so verdicts
//! separate exact certificates from evidence and always carry the witnesses.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::approx::{best_approximations, rational_certificate, ApproxRecord, ApproxTarget};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WSet {
    #[serde(rename = "W_r")]
    W,
    #[serde(rename = "W'_r")]
    WPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedMember,
    EvidenceMember,
    EvidenceNonmember,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Quality threshold `C` for `W_r` hits.
    pub c: f64,
    /// Number of successive minima below `C` needed for `W_r` evidence.
    pub min_hits: usize,
    /// Required drop of the best quality from the lower to the upper
    /// logarithmic half of the range for `W'_r` evidence.
    pub decay: f64,
    pub budget: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { c: 1.0, min_hits: 3, decay: 10.0, budget: super::approx::DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(flatten)]
    pub record: ApproxRecord,
    pub quality: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: Vec<String>,
    pub q: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiophVerdict {
    pub target: WSet,
    pub r: f64,
    pub qmax: u64,
    pub c: f64,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
}

/// Certified membership for rational `A`, bounded-search evidence otherwise.
pub fn w_probe(a: &ExactMatrix, set: WSet, r: f64, qmax: u64, cfg: &ProbeConfig) -> Result<DiophVerdict> {
    if !(r > 0.0) {
        return Err(Error::invalid("r must be positive"));
    }
    if a.is_rational() {
        let (p, q) = rational_certificate(a)?;
        let show = |v: Vec<BigInt>| v.iter().map(ToString::to_string).collect();
        let target = ApproxTarget::from_exact(a)?;
        let witnesses = witnesses(&best_approximations(&target, qmax, cfg.budget)?, r);
        return Ok(DiophVerdict {
            target: set,
            r,
            qmax,
            c: cfg.c,
            verdict: Verdict::CertifiedMember,
            witnesses,
            certificate: Some(Certificate { p: show(p), q: show(q) }),
        });
    }
    w_evidence(&ApproxTarget::from_exact(a)?, set, r, qmax, cfg)
}

fn witnesses(records: &[ApproxRecord], r: f64) -> Vec<Witness> {
    records.iter().map(|rec| Witness { record: rec.clone(), quality: rec.quality(r) }).collect()
}

/// The search-only half of [`w_probe`]; never returns a certified verdict.
pub fn w_evidence(target: &ApproxTarget, set: WSet, r: f64, qmax: u64, cfg: &ProbeConfig) -> Result<DiophVerdict> {
    if !(r > 0.0) {
        return Err(Error::invalid("r must be positive"));
    }
    let records = best_approximations(target, qmax, cfg.budget)?;
    let ws = witnesses(&records, r);
    let verdict = match set {
        WSet::W => {
            let hits = ws.iter().filter(|w| w.quality <= cfg.c).count();
            if hits >= cfg.min_hits {
                Verdict::EvidenceMember
            } else if ws.len() < cfg.min_hits {
                Verdict::Inconclusive
            } else {
                Verdict::EvidenceNonmember
            }
        }
        WSet::WPrime => prime_verdict(&ws, qmax, cfg),
    };
    Ok(DiophVerdict { target: set, r, qmax, c: cfg.c, verdict, witnesses: ws, certificate: None })
}

fn prime_verdict(ws: &[Witness], qmax: u64, cfg: &ProbeConfig) -> Verdict {
    if ws.iter().any(|w| w.record.residual == 0.0) {
        return Verdict::EvidenceMember;
    }
    if ws.len() < 3 {
        return Verdict::Inconclusive;
    }
    let split = (qmax as f64).sqrt();
    let best = |it: &mut dyn Iterator<Item = &Witness>| it.map(|w| w.quality).fold(f64::INFINITY, f64::min);
    let lower = best(&mut ws.iter().filter(|w| (w.record.qnorm as f64) < split));
    let upper = best(&mut ws.iter().filter(|w| (w.record.qnorm as f64) >= split));
    if !upper.is_finite() || !lower.is_finite() {
        return Verdict::Inconclusive;
    }
    if upper * cfg.decay <= lower && upper <= cfg.c {
        Verdict::EvidenceMember
    } else {
        Verdict::EvidenceNonmember
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    #[test]
    fn rational_is_certified() {
        let a = ExactMatrix::parse("1/2;1/3").unwrap();
        for set in [WSet::W, WSet::WPrime] {
            let v = w_probe(&a, set, 5.0, 100, &ProbeConfig::default()).unwrap();
            assert_eq!(v.verdict, Verdict::CertifiedMember);
            let cert = v.certificate.unwrap();
            assert_eq!(cert.q, vec!["6"]);
            assert_eq!(cert.p, vec!["-3", "-2"]);
        }
    }

    #[test]
    fn badly_approximable_is_not_in_w2() {
        let a = ExactMatrix::from_rows(vec![vec![Scalar::sqrt_of(2).unwrap() - &Scalar::one()]]).unwrap();
        let v = w_probe(&a, WSet::W, 2.0, 10_000, &ProbeConfig::default()).unwrap();
        assert_eq!(v.verdict, Verdict::EvidenceNonmember);
        assert!(!v.witnesses.is_empty());
        let v = w_probe(&a, WSet::WPrime, 2.0, 10_000, &ProbeConfig::default()).unwrap();
        assert_eq!(v.verdict, Verdict::EvidenceNonmember);
    }

    #[test]
    fn verdict_json_shape() {
        let a = ExactMatrix::parse("2/7").unwrap();
        let v = w_probe(&a, WSet::WPrime, 1.0, 10, &ProbeConfig::default()).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["verdict"], "certified-member");
        assert_eq!(json["target"], "W'_r");
        assert!(json["witnesses"][0]["quality"].is_number());
    }
}
