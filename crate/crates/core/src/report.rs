//! Verification reports: one record per check, a versioned line format
//! and a human rendering.
//!
//! Structured format, one line per item, fields separated by tabs:
//!
//! ```text
//! semiprime-report v1
//! config	ring=cusp	p=2	max=6	suite=tables
//! record	suite=tables	check=M1.row1.fg	params=…	expected=…	got=…	status=pass	skipped=0	witness=
//! summary	pass=…	fail=…	finding=…	info=…	not-instantiable=…	exit=0
//! ```
//!
//! Values escape `\`, tab and newline as `\\`, `\t`, `\n`.

use std::fmt;

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "semiprime-report";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// A mismatch against the classification that is reported rather
    /// than treated as a bug.
    Finding,
    /// Coverage accounting only; does not affect the exit status.
    Info,
    /// The row's parameter conditions have no tuple in the window.
    NotInstantiable,
}

impl Status {
    pub const ALL: [Status; 5] = [Status::Pass, Status::Fail, Status::Finding, Status::Info, Status::NotInstantiable];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
            Status::Info => "info",
            Status::NotInstantiable => "not-instantiable",
        }
    }

    pub fn parse(s: &str) -> Result<Status> {
        Status::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse { input: s.into(), msg: "unknown status".into() })
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Finding)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub params: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
    pub skipped: usize,
    pub witness: Option<String>,
}

impl Record {
    pub fn new(suite: &str, check: impl Into<String>, status: Status) -> Self {
        Record {
            suite: suite.into(),
            check: check.into(),
            params: String::new(),
            expected: String::new(),
            got: String::new(),
            status,
            skipped: 0,
            witness: None,
        }
    }

    pub fn params(mut self, p: impl Into<String>) -> Self {
        self.params = p.into();
        self
    }

    pub fn expected(mut self, e: impl Into<String>) -> Self {
        self.expected = e.into();
        self
    }

    pub fn got(mut self, g: impl Into<String>) -> Self {
        self.got = g.into();
        self
    }

    pub fn skipped(mut self, n: usize) -> Self {
        self.skipped = n;
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    /// Pass when `ok`, otherwise `Fail`.
    pub fn check(suite: &str, check: impl Into<String>, ok: bool) -> Self {
        Record::new(suite, check, if ok { Status::Pass } else { Status::Fail })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// `key=value` pairs describing the run, in insertion order.
    pub config: Vec<(String, String)>,
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
    pub info: usize,
    pub not_instantiable: usize,
}

impl Report {
    pub fn new(config: Vec<(String, String)>) -> Self {
        Report { config, records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Record>) {
        self.records.extend(rs);
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for r in &self.records {
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Finding => c.finding += 1,
                Status::Info => c.info += 1,
                Status::NotInstantiable => c.not_instantiable += 1,
            }
        }
        c
    }

    pub fn passed(&self) -> bool {
        !self.records.iter().any(|r| r.status.is_failure())
    }

    /// Depends only on the records.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }

    pub fn suite<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.suite == name)
    }

    pub fn to_structured(&self) -> String {
        let mut out = format!("{MAGIC} v{FORMAT_VERSION}\n");
        out.push_str("config");
        for (k, v) in &self.config {
            out.push_str(&format!("\t{k}={}", escape(v)));
        }
        out.push('\n');
        for r in &self.records {
            let fields = [
                ("suite", r.suite.as_str()),
                ("check", &r.check),
                ("params", &r.params),
                ("expected", &r.expected),
                ("got", &r.got),
                ("status", r.status.as_str()),
            ];
            out.push_str("record");
            for (k, v) in fields {
                out.push_str(&format!("\t{k}={}", escape(v)));
            }
            out.push_str(&format!("\tskipped={}", r.skipped));
            out.push_str(&format!("\twitness={}\n", escape(r.witness.as_deref().unwrap_or(""))));
        }
        let c = self.counts();
        out.push_str(&format!(
            "summary\tpass={}\tfail={}\tfinding={}\tinfo={}\tnot-instantiable={}\texit={}\n",
            c.pass,
            c.fail,
            c.finding,
            c.info,
            c.not_instantiable,
            self.exit_code()
        ));
        out
    }

    pub fn parse_structured(text: &str) -> Result<Report> {
        let bad = |line: &str, msg: &str| Error::Parse { input: line.into(), msg: msg.into() };
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| bad("", "empty report"))?;
        if head != format!("{MAGIC} v{FORMAT_VERSION}") {
            return Err(bad(head, "unsupported header"));
        }
        let mut report = Report::default();
        let mut summary_seen = false;
        for line in lines {
            let mut parts = line.split('\t');
            let kind = parts.next().unwrap_or("");
            let mut kv = Vec::new();
            for p in parts {
                let (k, v) = p.split_once('=').ok_or_else(|| bad(line, "field without `=`"))?;
                kv.push((k.to_string(), unescape(v).ok_or_else(|| bad(line, "bad escape"))?));
            }
            let get = |k: &str| -> Result<String> {
                kv.iter()
                    .find(|(x, _)| x == k)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| bad(line, &format!("missing field {k}")))
            };
            match kind {
                "config" => report.config = kv.clone(),
                "record" => report.records.push(Record {
                    suite: get("suite")?,
                    check: get("check")?,
                    params: get("params")?,
                    expected: get("expected")?,
                    got: get("got")?,
                    status: Status::parse(&get("status")?)?,
                    skipped: get("skipped")?.parse().map_err(|_| bad(line, "bad skipped count"))?,
                    witness: Some(get("witness")?).filter(|w| !w.is_empty()),
                }),
                "summary" => summary_seen = true,
                _ => return Err(bad(line, "unknown line kind")),
            }
        }
        if !summary_seen {
            return Err(bad(text, "missing summary line"));
        }
        Ok(report)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("semiprime verification ({})\n", cfg.join(", ")));
        let mut suite = "";
        for r in &self.records {
            if r.suite != suite {
                suite = &r.suite;
                out.push_str(&format!("\n== {suite}\n"));
            }
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Finding => "FIND",
                Status::Info => "INFO",
                Status::NotInstantiable => "N/A ",
            };
            out.push_str(&format!("[{tag}] {}", r.check));
            if !r.params.is_empty() {
                out.push_str(&format!(" ({})", r.params));
            }
            if !r.got.is_empty() {
                out.push_str(&format!(": {}", r.got));
            }
            if r.status.is_failure() && !r.expected.is_empty() {
                out.push_str(&format!(", expected {}", r.expected));
            }
            if r.skipped > 0 {
                out.push_str(&format!(" [{} skipped]", r.skipped));
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        let c = self.counts();
        out.push_str(&format!(
            "\n{} pass, {} fail, {} finding, {} info, {} not instantiable\n",
            c.pass, c.fail, c.finding, c.info, c.not_instantiable
        ));
        out
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut it = s.chars();
    while let Some(c) = it.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match it.next()? {
            '\\' => '\\',
            't' => '\t',
            'n' => '\n',
            _ => return None,
        });
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_round_trip() {
        let mut r = Report::new(vec![("ring".into(), "dvr".into()), ("max".into(), "8".into())]);
        r.push(Record::check("axioms", "dvr:f(3).a-d", true).skipped(4));
        r.push(
            Record::new("tables", "M4.row1.fg", Status::Fail)
                .params("n=2\tm=4")
                .expected("op")
                .got("not-closure\n(c)")
                .witness(Some("back\\slash".into())),
        );
        let text = r.to_structured();
        assert!(text.starts_with("semiprime-report v1\n"));
        assert_eq!(Report::parse_structured(&text).unwrap(), r);
        assert_eq!(r.exit_code(), EXIT_FAILED);
    }

    #[test]
    fn info_and_not_instantiable_do_not_fail() {
        let mut r = Report::default();
        r.push(Record::new("tables", "uncovered", Status::Info));
        r.push(Record::new("tables", "M1.row9", Status::NotInstantiable));
        assert_eq!(r.exit_code(), EXIT_OK);
        r.push(Record::new("enumeration", "unexpected", Status::Finding));
        assert_eq!(r.exit_code(), EXIT_FAILED);
    }

    #[test]
    fn rejects_wrong_version() {
        assert!(Report::parse_structured("semiprime-report v2\nsummary\n").is_err());
    }
}
