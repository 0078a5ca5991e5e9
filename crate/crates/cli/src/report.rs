use std::fmt::Write as _;
use std::time::Duration;

use terai_core::pipeline::{decompose_squarefree, VerifyReport};
use terai_core::{Certificate, Result};

/// Result for one `k` in a sweep.
#[derive(Debug, Clone)]
pub struct KOutcome {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    /// Divisor reported in the row: the certifying one, else the first tried.
    pub d: Option<u64>,
    pub orders: Vec<u64>,
    pub max_order: u64,
    pub exponents: Vec<u64>,
    pub verified: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl KOutcome {
    fn from_certificate(k: u64, cert: &Certificate, elapsed: Duration) -> Self {
        let (a, b) = decompose_squarefree(k - 1).unwrap_or((0, 0));
        KOutcome {
            k,
            a,
            b,
            d: Some(cert.d),
            orders: cert.orders.clone(),
            max_order: cert.max_order,
            exponents: cert.represented_exponents.clone(),
            verified: cert.is_even_only(),
            detail: match cert.failure_reason {
                Some(r) => r.to_string(),
                None => String::new(),
            },
            elapsed,
        }
    }

    fn from_error(k: u64, err: impl std::fmt::Display, elapsed: Duration) -> Self {
        let (a, b) = decompose_squarefree(k - 1).unwrap_or((0, 0));
        KOutcome {
            k,
            a,
            b,
            d: None,
            orders: Vec::new(),
            max_order: 0,
            exponents: Vec::new(),
            verified: false,
            detail: err.to_string(),
            elapsed,
        }
    }

    pub fn from_verify(k: u64, result: Result<VerifyReport>, elapsed: Duration) -> Self {
        let report = match result {
            Ok(r) => r,
            Err(e) => return Self::from_error(k, e, elapsed),
        };
        if let Some(cert) = report.certificate() {
            return Self::from_certificate(k, cert, elapsed);
        }
        match report.attempts.first() {
            Some(attempt) => match &attempt.outcome {
                Ok(cert) => {
                    let mut o = Self::from_certificate(k, cert, elapsed);
                    o.detail = format!("exhausted {} candidates; d = {}: {}", report.attempts.len(), cert.d, o.detail);
                    o
                }
                Err(e) => Self::from_error(k, e, elapsed),
            },
            None => Self::from_error(k, "no divisor candidates", elapsed),
        }
    }

    pub fn from_conjecture(k: u64, result: Result<Certificate>, elapsed: Duration) -> Self {
        match result {
            Ok(cert) => Self::from_certificate(k, &cert, elapsed),
            Err(e) => Self::from_error(k, e, elapsed),
        }
    }

    fn verdict(&self) -> &'static str {
        if self.verified {
            "even-only"
        } else {
            "failed"
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn abbreviate(v: &[u64]) -> String {
    const SHOWN: usize = 6;
    let head: Vec<String> = v.iter().take(SHOWN).map(u64::to_string).collect();
    if v.len() > SHOWN {
        format!("{},... ({} total)", head.join(","), v.len())
    } else {
        head.join(",")
    }
}

/// Everything a sweep produced, in `k` order.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub from: u64,
    pub to: u64,
    pub outcomes: Vec<KOutcome>,
}

impl RunReport {
    pub fn new(command: &'static str, from: u64, to: u64, mut outcomes: Vec<KOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.k);
        RunReport { command, from, to, outcomes }
    }

    pub fn scanned(&self) -> u64 {
        self.to - self.from + 1
    }

    pub fn verified(&self) -> u64 {
        self.outcomes.iter().filter(|o| o.verified).count() as u64
    }

    pub fn failed(&self) -> u64 {
        self.outcomes.len() as u64 - self.verified()
    }

    pub fn skipped_ineligible(&self) -> u64 {
        self.scanned() - self.outcomes.len() as u64
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>4} {:>6}  {:<24} {:>7}  {:<32} {:<10} {:>9}",
            "k", "a", "b", "d", "orders of f_i", "M", "powers m <= M+1", "verdict", "time"
        );
        for o in &self.outcomes {
            let d = o.d.map_or_else(|| "-".to_string(), |d| d.to_string());
            let _ = write!(
                out,
                "{:>6} {:>6} {:>4} {:>6}  {:<24} {:>7}  {:<32} {:<10} {:>8.2}s",
                o.k,
                o.a,
                o.b,
                d,
                abbreviate(&o.orders),
                o.max_order,
                abbreviate(&o.exponents),
                o.verdict(),
                o.elapsed.as_secs_f64()
            );
            if !o.detail.is_empty() {
                let _ = write!(out, "  [{}]", o.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} {}..={}: scanned {}, verified {}, failed {}, skipped (ineligible) {}",
            self.command,
            self.from,
            self.to,
            self.scanned(),
            self.verified(),
            self.failed(),
            self.skipped_ineligible()
        );
        out
    }

    pub fn to_csv(&self) -> std::result::Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "a", "b", "d", "orders", "M", "exponents", "verdict"])?;
        for o in &self.outcomes {
            w.write_record([
                o.k.to_string(),
                o.a.to_string(),
                o.b.to_string(),
                o.d.map(|d| d.to_string()).unwrap_or_default(),
                join(&o.orders),
                o.max_order.to_string(),
                join(&o.exponents),
                o.verdict().to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(k: u64, verified: bool) -> KOutcome {
        KOutcome {
            k,
            a: 3,
            b: 1,
            d: Some(3),
            orders: vec![2, 4],
            max_order: 4,
            exponents: vec![2, 4],
            verified,
            detail: String::new(),
            elapsed: Duration::from_millis(5),
        }
    }

    #[test]
    fn counts_sum_to_scanned() {
        let r = RunReport::new("range", 4, 20, vec![outcome(12, true), outcome(4, false)]);
        assert_eq!(r.outcomes[0].k, 4);
        assert_eq!(r.verified() + r.failed() + r.skipped_ineligible(), r.scanned());
        assert_eq!(r.scanned(), 17);
    }

    #[test]
    fn csv_layout() {
        let r = RunReport::new("range", 4, 4, vec![outcome(4, true)]);
        let text = r.to_csv().unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,a,b,d,orders,M,exponents,verdict"));
        assert_eq!(lines.next(), Some("4,3,1,3,2;4,4,2;4,even-only"));
    }
}
