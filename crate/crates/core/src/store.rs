//! Line-oriented text formats: `.arrs` code lists, `.certs` certificate
//! caches and TSV classification records; plus SVG export of scenes.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::canon::{CanonicalCode, CodeError};
use crate::classifier::ClassificationRecord;
use crate::geom::{Circle, CircleArrangement};
use crate::realizer::{CertError, Certificate};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("certificate does not verify: {0}")]
    Unverified(#[from] CertError),
}

fn parse_err(line: usize, msg: impl ToString) -> StoreError {
    StoreError::Parse { line, msg: msg.to_string() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_code(line: usize, s: &str) -> Result<CanonicalCode, StoreError> {
    s.parse().map_err(|e: CodeError| parse_err(line, e))
}

/// One `.arrs` line: a code and its `key=value` annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrsEntry {
    pub code: CanonicalCode,
    pub props: Vec<(String, String)>,
}

impl ArrsEntry {
    pub fn new(code: CanonicalCode) -> Self {
        ArrsEntry { code, props: Vec::new() }
    }

    pub fn prop(&self, key: &str) -> Option<&str> {
        self.props.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn parse_arrs(text: &str) -> Result<Vec<ArrsEntry>, StoreError> {
    content_lines(text)
        .map(|(no, line)| {
            let mut parts = line.split_whitespace();
            let code = parse_code(no, parts.next().expect("non-empty line"))?;
            let props = parts
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| parse_err(no, format!("annotation `{kv}` is not key=value")))
                })
                .collect::<Result<_, _>>()?;
            Ok(ArrsEntry { code, props })
        })
        .collect()
}

pub fn format_arrs(entries: &[ArrsEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&e.code.to_string());
        for (k, v) in &e.props {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_codes(path: &Path) -> Result<Vec<CanonicalCode>, StoreError> {
    Ok(parse_arrs(&fs::read_to_string(path)?)?.into_iter().map(|e| e.code).collect())
}

pub fn parse_cert_line(no: usize, line: &str) -> Result<Certificate, StoreError> {
    let mut fields = line.split(';').map(str::trim);
    let code = parse_code(no, fields.next().unwrap_or_default())?;
    let circles = fields
        .map(|f| {
            let v: Vec<i64> = f
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(no, format!("bad integer `{t}`"))))
                .collect::<Result<_, _>>()?;
            match v[..] {
                [x, y, r] => Ok(Circle::new(x, y, r)),
                _ => Err(parse_err(no, format!("circle `{f}` needs three integers"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if circles.len() != code.n() {
        return Err(parse_err(no, format!("{} circles for an n={} code", circles.len(), code.n())));
    }
    Ok(Certificate { code, scene: CircleArrangement::new(circles) })
}

/// Parses certificates without verifying them.
pub fn parse_certs(text: &str) -> Result<Vec<Certificate>, StoreError> {
    content_lines(text).map(|(no, line)| parse_cert_line(no, line)).collect()
}

pub fn format_cert(cert: &Certificate) -> String {
    let mut out = cert.code.to_string();
    for c in &cert.scene.circles {
        let _ = write!(out, " ; {} {} {}", c.x, c.y, c.r);
    }
    out
}

pub fn format_certs(certs: &[Certificate]) -> String {
    certs.iter().map(|c| format_cert(c) + "\n").collect()
}

/// Loads a certificate cache, or an empty one if the file does not exist.
pub fn read_certs(path: &Path) -> Result<Vec<Certificate>, StoreError> {
    match fs::read_to_string(path) {
        Ok(text) => parse_certs(&text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

/// Appends certificates to a cache file.
pub fn append_certs(path: &Path, certs: &[Certificate]) -> Result<(), StoreError> {
    use std::io::Write;
    let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(format_certs(certs).as_bytes())?;
    Ok(())
}

pub fn format_records(records: &[ClassificationRecord]) -> String {
    let mut out = String::from("# code\tstatus\treason\n");
    for r in records {
        let _ = writeln!(out, "{}\t{}\t{}", r.code, r.status, r.reason);
    }
    out
}

pub fn parse_records(text: &str) -> Result<Vec<ClassificationRecord>, StoreError> {
    content_lines(text)
        .map(|(no, line)| {
            let cols: Vec<&str> = line.split('\t').collect();
            let [code, status, reason] = cols[..] else {
                return Err(parse_err(no, "expected three tab-separated columns"));
            };
            Ok(ClassificationRecord {
                code: parse_code(no, code)?,
                status: status.parse().map_err(|e| parse_err(no, e))?,
                reason: reason.parse().map_err(|e| parse_err(no, e))?,
            })
        })
        .collect()
}

const PALETTE: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

/// SVG drawing of a verified certificate; the y axis points up.
pub fn svg(cert: &Certificate) -> Result<String, StoreError> {
    cert.verify()?;
    let cs = &cert.scene.circles;
    let min_x = cs.iter().map(|c| c.x - c.r).min().unwrap_or(0);
    let max_x = cs.iter().map(|c| c.x + c.r).max().unwrap_or(1);
    let min_y = cs.iter().map(|c| c.y - c.r).min().unwrap_or(0);
    let max_y = cs.iter().map(|c| c.y + c.r).max().unwrap_or(1);
    let (w, h) = (max_x - min_x, max_y - min_y);
    let pad = (w.max(h) / 20).max(1);
    let stroke = (w.max(h) as f64 / 300.0).max(0.01);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        min_x - pad,
        -max_y - pad,
        w + 2 * pad,
        h + 2 * pad
    );
    for (i, c) in cs.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="{stroke}"/>"#,
            c.x,
            -c.y,
            c.r,
            PALETTE[i % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{Reason, Status};

    #[test]
    fn arrs_round_trip() {
        let text = "# comment\n\nPC1:n=2:2.1.4.3.0.5.7.6.1.2.6.7.5.0.3.4 name=two sym=16\n";
        let entries = parse_arrs(text).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].prop("sym"), Some("16"));
        assert_eq!(parse_arrs(&format_arrs(&entries)).unwrap(), entries);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_arrs("# x\nPC1:n=2:1.2\n").unwrap_err();
        assert!(matches!(err, StoreError::Parse { line: 2, .. }));
        let err = parse_certs("\n\nnot-a-code ; 1 2 3\n").unwrap_err();
        assert!(matches!(err, StoreError::Parse { line: 3, .. }));
    }

    #[test]
    fn records_round_trip() {
        let code: CanonicalCode = "PC1:n=2:2.1.4.3.0.5.7.6.1.2.6.7.5.0.3.4".parse().unwrap();
        let recs = vec![
            ClassificationRecord { code: code.clone(), status: Status::Realized, reason: Reason::Certificate },
            ClassificationRecord {
                code: code.clone(),
                status: Status::NonCirc,
                reason: Reason::ContainsNoncirc("N5^1".into()),
            },
            ClassificationRecord { code, status: Status::Open, reason: Reason::None },
        ];
        assert_eq!(parse_records(&format_records(&recs)).unwrap(), recs);
    }

    #[test]
    fn krupp_svg_has_three_circles() {
        let cert = Certificate::from_scene(CircleArrangement::new(vec![
            Circle::new(0, 0, 2),
            Circle::new(2, 0, 2),
            Circle::new(1, 2, 2),
        ]))
        .unwrap();
        let text = svg(&cert).unwrap();
        assert_eq!(text.matches("<circle").count(), 3);
        let line = format_cert(&cert);
        assert_eq!(parse_cert_line(1, &line).unwrap(), cert);
    }

    #[test]
    fn unverified_scene_is_not_drawn() {
        let two =
            Certificate::from_scene(CircleArrangement::new(vec![Circle::new(0, 0, 2), Circle::new(2, 0, 2)])).unwrap();
        let apart = CircleArrangement::new(vec![Circle::new(0, 0, 1), Circle::new(5, 0, 1)]);
        let bad = Certificate { code: two.code, scene: apart };
        assert!(matches!(svg(&bad), Err(StoreError::Unverified(_))));
    }
}
