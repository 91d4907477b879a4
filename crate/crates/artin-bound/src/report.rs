//! Machine-readable verification reports: one record per checked
//! inequality, a deterministic summary, and CSV/JSON renderers with fixed
//! float formatting so margins are auditable and runs are byte-identical.

use std::fmt::Write as _;

/// 15 significant digits, locale-independent.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.14e}")
}

/// Identifiers for every inequality family the harness can check. Together
/// they cover each in-scope inequality of the proof chain; the report
/// prints which ones a run exercised and which remain for other commands.
pub const CHECKLIST: &[&str] = &[
    "kth_norm_bound",        // main theorem: Norm p_{k+1} <= bound^2
    "psi_main_estimate",     // |g_c psi_C(x) - x| <= sqrt(x)[...]
    "theta1_pi_bound",       // theta_C^(1) <= pi_C x (log x - log(2 log x))
    "psi1_theta1_gap",       // 0 <= psi^(1) - theta^(1) <= 1.43 (2/3) x^(3/2)
    "ramified_gap_theta",    // 0 <= theta(C;x) - theta_C(x) <= log|D|
    "ramified_gap_theta1",   // 0 <= theta^(1) - theta_C^(1) <= (x-1) log|D|
    "chain_bound_smooth",    // x^2/2 - g_c theta^(1)(C;x) <= eq42A rhs
    "chain_bound_unramified",// x^2/2 - g_c theta_C^(1)(x) <= eq43A rhs
    "sufficiency_at_bound",  // eq44A at the theorem's own sqrt(x)
    "final_comparison_lhs",  // eq46 LHS > 0.2 for 1 <= y <= 120
    "final_comparison_rhs",  // eq46 RHS <= 0.2, decreasing, for x >= 30
    "xy_log_lemma",          // (x-y) log y <= x(log x - log(2 log x))
    "f1_at_one",             // f1(1) = log 2
    "r_c_aggregation",       // closed form vs character aggregate
    "g_aux_monotone",        // g decreasing, <= -log 2 beyond 5.3193
    "theta_partition",       // sum over classes of theta(C;p^m) = 1
    "efg_degree",            // e f g = n_L for every prime
    "archimedean_rc_bound",  // -R_C(x) <= (n_L - 1) integral
];

/// One checked inequality instance (or the extremal instance of a sweep).
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check_id: &'static str,
    pub field: String,
    pub class: String,
    /// The sweep parameter at which the record was taken (k, x, y, ...).
    pub param: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

/// Deterministic record of a verification run.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    /// Checklist ids exercised by this run, in CHECKLIST order.
    pub covered: Vec<&'static str>,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn new(tolerance: f64) -> Self {
        VerificationReport {
            records: Vec::new(),
            covered: Vec::new(),
            tolerance,
        }
    }

    /// Pass iff margin clears the tolerance.
    pub fn push(
        &mut self,
        check_id: &'static str,
        field: &str,
        class: &str,
        param: f64,
        lhs: f64,
        rhs: f64,
        margin: f64,
    ) {
        debug_assert!(CHECKLIST.contains(&check_id), "unknown check {check_id}");
        if !self.covered.contains(&check_id) {
            self.covered.push(check_id);
        }
        self.records.push(CheckRecord {
            check_id,
            field: field.to_string(),
            class: class.to_string(),
            param,
            lhs,
            rhs,
            margin,
            pass: margin > self.tolerance,
        });
    }

    /// Exact checks (integers, rationals): pass on true, margin reported as
    /// +1/-1 so the pass rule stays margin-based.
    pub fn push_exact(
        &mut self,
        check_id: &'static str,
        field: &str,
        class: &str,
        param: f64,
        lhs: f64,
        rhs: f64,
        ok: bool,
    ) {
        if !self.covered.contains(&check_id) {
            self.covered.push(check_id);
        }
        self.records.push(CheckRecord {
            check_id,
            field: field.to_string(),
            class: class.to_string(),
            param,
            lhs,
            rhs,
            margin: if ok { 1.0 } else { -1.0 },
            pass: ok,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.records
            .iter()
            .map(|r| r.margin)
            .min_by(|a, b| a.total_cmp(b))
    }

    fn sorted_covered(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = CHECKLIST
            .iter()
            .copied()
            .filter(|id| self.covered.contains(id))
            .collect();
        v.dedup();
        v
    }

    fn uncovered(&self) -> Vec<&'static str> {
        CHECKLIST
            .iter()
            .copied()
            .filter(|id| !self.covered.contains(id))
            .collect()
    }

    /// RFC 4180 CSV: header row, records, then summary comment lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,field,class,param,lhs,rhs,margin,pass\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_quote(r.check_id),
                csv_quote(&r.field),
                csv_quote(&r.class),
                fmt_f64(r.param),
                fmt_f64(r.lhs),
                fmt_f64(r.rhs),
                fmt_f64(r.margin),
                r.pass
            );
        }
        let _ = writeln!(
            out,
            "# summary,checks={},failures={},min_margin={},tolerance={}",
            self.records.len(),
            self.failures().count(),
            self.min_margin().map(fmt_f64).unwrap_or_default(),
            fmt_f64(self.tolerance)
        );
        let _ = writeln!(out, "# covered,{}", self.sorted_covered().join(";"));
        let _ = writeln!(out, "# uncovered,{}", self.uncovered().join(";"));
        out
    }

    /// JSON with stable key order and the same float rendering as CSV.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"records\": [\n");
        for (i, r) in self.records.iter().enumerate() {
            let _ = write!(
                out,
                "    {{\"check_id\": {}, \"field\": {}, \"class\": {}, \"param\": {}, \"lhs\": {}, \"rhs\": {}, \"margin\": {}, \"pass\": {}}}{}\n",
                json_string(r.check_id),
                json_string(&r.field),
                json_string(&r.class),
                fmt_f64(r.param),
                fmt_f64(r.lhs),
                fmt_f64(r.rhs),
                fmt_f64(r.margin),
                r.pass,
                if i + 1 < self.records.len() { "," } else { "" }
            );
        }
        let _ = write!(
            out,
            "  ],\n  \"summary\": {{\"checks\": {}, \"failures\": {}, \"min_margin\": {}, \"tolerance\": {}}},\n",
            self.records.len(),
            self.failures().count(),
            self.min_margin()
                .map(|m| fmt_f64(m))
                .map(|s| format!("\"{s}\""))
                .unwrap_or_else(|| "null".to_string()),
            format_args!("\"{}\"", fmt_f64(self.tolerance)),
        );
        let _ = write!(
            out,
            "  \"covered\": [{}],\n  \"uncovered\": [{}]\n}}\n",
            self.sorted_covered()
                .iter()
                .map(|s| json_string(s))
                .collect::<Vec<_>>()
                .join(", "),
            self.uncovered()
                .iter()
                .map(|s| json_string(s))
                .collect::<Vec<_>>()
                .join(", ")
        );
        out
    }

    pub fn render(&self, format: crate::config::OutputFormat) -> String {
        match format {
            crate::config::OutputFormat::Csv => self.to_csv(),
            crate::config::OutputFormat::Json => self.to_json(),
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
