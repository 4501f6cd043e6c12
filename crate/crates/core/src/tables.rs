//! Rule tables: generation, rendering, and auditing of published tables.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::numeral::{check_base, format_value};
use crate::params::{classify, enumerate, select_best};
use crate::{Error, ParameterSet, Result, SoundnessClass};

/// `R = u·B + w·b` as text, negated if needed so the first nonzero
/// coefficient is positive: `(u, w) = (−2, 1)` renders as `2B - b`.
pub fn rule_text(u: i64, w: i64) -> String {
    let (u, w) = if u < 0 || (u == 0 && w < 0) {
        (-u, -w)
    } else {
        (u, w)
    };
    let term = |c: i64, sym: &str| match c.unsigned_abs() {
        1 => sym.to_string(),
        m => format!("{m}{sym}"),
    };
    match (u, w) {
        (0, 0) => "0".to_string(),
        (0, w) => term(w, "b"),
        (u, 0) => term(u, "B"),
        (u, w) => format!(
            "{} {} {}",
            term(u, "B"),
            if w < 0 { '-' } else { '+' },
            term(w, "b")
        ),
    }
}

/// Parses rule text such as `2B-3b`, `B + b` or `b` into `(u, w)`.
pub fn parse_rule_text(text: &str) -> Option<(i64, i64)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let (mut u, mut w) = (None, None);
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let digits = body.bytes().take_while(u8::is_ascii_digit).count();
        let magnitude: i64 = if digits == 0 {
            1
        } else {
            body[..digits].parse().ok()?
        };
        let coef = if negative { -magnitude } else { magnitude };
        let slot = match body.as_bytes().get(digits)? {
            b'B' => &mut u,
            b'b' => &mut w,
            _ => return None,
        };
        if slot.replace(coef).is_some() {
            return None;
        }
        rest = &body[digits + 1..];
    }
    Some((u.unwrap_or(0), w.unwrap_or(0)))
}

/// A generated rule for one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowRule {
    pub params: ParameterSet,
    pub rule_text: String,
    pub soundness: SoundnessClass,
}

/// One row of a generated table. `rule` is `None` when no sound parameter
/// set exists within the searched multipliers (e.g. `n = 16` in base 8).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleRow {
    pub n: u64,
    pub base: u32,
    pub rule: Option<RowRule>,
}

/// Default audit window for a row: `n·t²`.
pub fn default_bound(n: u64, base: u32) -> u64 {
    n.saturating_mul(u64::from(base).pow(2))
}

/// One row per divisor, using the preferred sound parameter set.
pub fn generate(base: u32, divisors: RangeInclusive<u64>, q_max: u32) -> Result<Vec<RuleRow>> {
    check_base(base)?;
    if *divisors.start() < 2 {
        return Err(Error::InvalidDivisor(*divisors.start()));
    }
    divisors
        .map(|n| {
            let rule = match select_best(&enumerate(n, base, q_max)?, true) {
                Ok(params) => Some(RowRule {
                    params,
                    rule_text: rule_text(params.u(), params.w()),
                    soundness: classify(&params, default_bound(n, base)),
                }),
                Err(Error::NoSoundCandidate { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(RuleRow { n, base, rule })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected text or csv)")),
        }
    }
}

pub const CSV_HEADER: &str = "n,q,N,u,w,rule,soundness";

const NO_RULE: &str = "none";
const LAST_DIGIT_NOTE: &str = "last-digit";

fn soundness_label(row: &RuleRow) -> String {
    row.rule
        .as_ref()
        .map_or(NO_RULE.to_string(), |r| r.soundness.to_string())
}

pub fn render(rows: &[RuleRow], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => render_csv(rows),
        TableFormat::Text => render_text(rows),
    }
}

fn render_csv(rows: &[RuleRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let line = match &row.rule {
            Some(r) => format!(
                "{},{},{},{},{},{},{}",
                row.n,
                r.params.multiplier(),
                r.params.multiple(),
                r.params.u(),
                r.params.w(),
                r.rule_text,
                r.soundness
            ),
            None => format!("{},,,,,,{NO_RULE}", row.n),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Columns `n q N u w rule soundness note`; `n` and `N` in the table's base,
/// with `N` also given in decimal as `N(=dec)` when the base is not 10.
fn render_text(rows: &[RuleRow]) -> String {
    let header = ["n", "q", "N", "u", "w", "rule", "soundness", "note"].map(String::from);
    let mut cells: Vec<[String; 8]> = vec![header];
    for row in rows {
        let t = row.base;
        let n = format_value(&BigInt::from(row.n), t);
        let line = match &row.rule {
            Some(r) => {
                let big_n = r.params.multiple();
                let mut n_cell = format_value(&BigInt::from(big_n), t);
                if t != 10 {
                    n_cell = format!("{n_cell}(={big_n})");
                }
                [
                    n,
                    r.params.multiplier().to_string(),
                    n_cell,
                    r.params.u().to_string(),
                    r.params.w().to_string(),
                    r.rule_text.clone(),
                    r.soundness.to_string(),
                    if r.params.is_last_digit() {
                        LAST_DIGIT_NOTE.to_string()
                    } else {
                        String::new()
                    },
                ]
            }
            None => {
                let dash = || "-".to_string();
                [
                    n,
                    dash(),
                    dash(),
                    dash(),
                    dash(),
                    dash(),
                    soundness_label(row),
                    String::new(),
                ]
            }
        };
        cells.push(line);
    }
    let mut widths = [0usize; 8];
    for line in &cells {
        for (w, c) in widths.iter_mut().zip(line) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for line in &cells {
        let mut text = String::new();
        for (i, (c, w)) in line.iter().zip(widths).enumerate() {
            if i > 0 {
                text.push_str("  ");
            }
            text.push_str(&format!("{c:<w$}"));
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

/// Which published table a row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PaperTable {
    /// Decimal restricted rules.
    One,
    /// Octal restricted rules; `n` and `N` are printed in octal.
    Two,
}

impl PaperTable {
    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            1 => Some(PaperTable::One),
            2 => Some(PaperTable::Two),
            _ => None,
        }
    }

    pub fn id(self) -> u8 {
        match self {
            PaperTable::One => 1,
            PaperTable::Two => 2,
        }
    }

    pub fn base(self) -> u32 {
        match self {
            PaperTable::One => 10,
            PaperTable::Two => 8,
        }
    }

    pub fn rows(self) -> &'static [PaperRow] {
        match self {
            PaperTable::One => &TABLE_1,
            PaperTable::Two => &TABLE_2,
        }
    }
}

/// A row exactly as printed: `n` and `N` in the table's base, `u` and `w` in
/// decimal, and the rule text (empty where the printed cell is blank).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaperRow {
    pub n: &'static str,
    pub multiple: &'static str,
    pub u: i64,
    pub w: i64,
    pub rule: &'static str,
}

const fn row(
    n: &'static str,
    multiple: &'static str,
    u: i64,
    w: i64,
    rule: &'static str,
) -> PaperRow {
    PaperRow {
        n,
        multiple,
        u,
        w,
        rule,
    }
}

#[rustfmt::skip]
pub static TABLE_1: [PaperRow; 36] = [
    row("3", "9", 1, 1, "B+b"),        row("16", "-32", 2, -3, "2B-3b"), row("29", "29", 1, 3, "B+3b"),
    row("4", "8", 2, 1, "2B+b"),       row("17", "-51", 1, -5, "B-5b"),  row("31", "31", -1, 3, "B-3b"),
    row("5", "5", 5, 1, "5B+b"),       row("18", "18", 2, 2, "2B+2b"),   row("32", "32", -2, 3, "2B-3b"),
    row("6", "12", -2, 1, "2B-b"),     row("19", "19", 1, 2, "B+2b"),    row("33", "-33", 3, -3, "3B-3b"),
    row("7", "-21", 1, -2, "B-2b"),    row("21", "-21", 1, -2, "B-2b"),  row("39", "39", 1, 4, "B+4b"),
    row("8", "8", 2, 1, "2B+b"),       row("22", "-22", 2, -2, "2B-2b"), row("49", "49", 1, 5, "B+5b"),
    row("9", "9", 1, 1, "B+b"),        row("23", "69", 1, 7, "B+7b"),    row("59", "59", 1, 6, "B+6b"),
    row("11", "11", 1, -1, "B-b"),     row("24", "48", 2, 5, "2B+5b"),   row("69", "69", 1, 7, "B+7b"),
    row("12", "-12", 2, -1, "2B-b"),   row("25", "-25", 5, -2, "5B-2b"), row("79", "79", 1, 8, "B+8b"),
    row("13", "39", 1, 4, "B+4b"),     row("26", "-52", 2, -5, "2B-5b"), row("81", "81", -1, 8, "B-8b"),
    row("14", "28", 2, 3, "2B+3b"),    row("27", "27", 3, 3, "3B+3b"),   row("83", "83", -3, 8, "3B-8b"),
    row("15", "-15", 5, -1, "5B-b"),   row("28", "28", 2, 3, "2B+3b"),   row("87", "87", 3, 9, "3B+9b"),
];

#[rustfmt::skip]
pub static TABLE_2: [PaperRow; 24] = [
    row("3", "11", -1, 1, "B-b"),      row("17", "17", 1, 2, "B+2b"),
    row("4", "10", 0, 1, "b"),         row("20", "20", 0, 2, ""),
    row("5", "5", 3, 1, "3B+b"),       row("21", "21", -1, 2, "B-2b"),
    row("6", "6", 2, 1, "2B+b"),       row("22", "22", -2, 2, "2B-2b"),
    row("7", "7", 1, 1, "B+b"),        row("23", "46", 2, 5, "2B+5b"),
    row("10", "10", 0, 1, ""),         row("24", "24", -4, 2, "4B-2b"),
    row("11", "11", -1, 1, "B-b"),     row("25", "25", 3, 3, "3B+3b"),
    row("12", "12", -2, 1, "2B-b"),    row("26", "26", 2, 3, "2B+3b"),
    row("13", "13", -3, 1, "3B-b"),    row("27", "27", 1, 3, "B+3b"),
    row("14", "14", -4, 1, "4B-b"),    row("30", "30", 0, 3, ""),
    row("15", "32", 2, 3, "2B+3b"),    row("31", "31", -1, 3, "B-3b"),
    row("16", "16", 2, 2, "2B+2b"),    row("32", "32", -2, 3, "2B-3b"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FindingKind {
    /// `w·t − u` differs from the listed `N` by more than a sign, or does not
    /// encode a multiple of `n`.
    NEqualityViolation,
    /// `w·t − u = −N`.
    NSignMismatch,
    /// The rule is forward-only; `witness` holds the smallest counterexample.
    UnsoundRow,
    /// No rule is given (or none exists) for this divisor.
    BlankRow,
    /// The printed rule is the global negation of `u·B + w·b`.
    SignFlippedRuleText,
    /// The printed rule matches neither `u·B + w·b` nor its negation.
    RuleTextMismatch,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            FindingKind::NEqualityViolation => "n-equality-violation",
            FindingKind::NSignMismatch => "n-sign-mismatch",
            FindingKind::UnsoundRow => "unsound-row",
            FindingKind::BlankRow => "blank-row",
            FindingKind::SignFlippedRuleText => "sign-flipped-rule-text",
            FindingKind::RuleTextMismatch => "rule-text-mismatch",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuditSource {
    Paper(PaperTable),
    Generated { base: u32 },
}

impl AuditSource {
    pub fn base(&self) -> u32 {
        match *self {
            AuditSource::Paper(t) => t.base(),
            AuditSource::Generated { base } => base,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableAuditFinding {
    pub source: AuditSource,
    pub n: u64,
    pub kind: FindingKind,
    pub detail: String,
    pub witness: Option<u64>,
}

impl fmt::Display for TableAuditFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.source.base();
        match self.source {
            AuditSource::Paper(t) => write!(f, "table={}", t.id())?,
            AuditSource::Generated { base } => write!(f, "table=generated base={base}")?,
        }
        write!(f, " n={}", format_value(&BigInt::from(self.n), base))?;
        if base != 10 {
            write!(f, " n_dec={}", self.n)?;
        }
        write!(f, " kind={}", self.kind)?;
        if let Some(w) = self.witness {
            write!(f, " witness={w}")?;
        }
        write!(f, " detail={}", self.detail)
    }
}

fn parse_in_base(text: &str, base: u32) -> i64 {
    i64::from_str_radix(text, base).expect("embedded table cell is a valid numeral")
}

/// Checks every row of a published table: `N = w·t − u`, the sign of `N`,
/// `n | N`, soundness over `A ∈ [0, bound]` (default `n·t²` per row), and
/// agreement of the printed rule with `(u, w)`.
pub fn audit_paper_table(table: PaperTable, bound: Option<u64>) -> Vec<TableAuditFinding> {
    audit_rows(AuditSource::Paper(table), table.rows(), bound)
}

/// [`audit_paper_table`] over arbitrary rows.
pub fn audit_rows(
    source: AuditSource,
    rows: &[PaperRow],
    bound: Option<u64>,
) -> Vec<TableAuditFinding> {
    let base = source.base();
    let t = i64::from(base);
    let mut sorted: Vec<&PaperRow> = rows.iter().collect();
    sorted.sort_by_key(|r| parse_in_base(r.n, base));
    let mut findings = Vec::new();
    for r in sorted {
        let n = parse_in_base(r.n, base) as u64;
        let listed = parse_in_base(r.multiple, base);
        let encoded = r.w * t - r.u;
        let mut push = |kind, detail: String, witness| {
            findings.push(TableAuditFinding {
                source,
                n,
                kind,
                detail,
                witness,
            })
        };
        let encodes_multiple = encoded != 0 && encoded % n as i64 == 0;
        if encoded != listed {
            let kind = if encoded == -listed {
                FindingKind::NSignMismatch
            } else {
                FindingKind::NEqualityViolation
            };
            let mut detail = format!("listed N={listed} but w*t-u={encoded}");
            if !encodes_multiple {
                detail.push_str(&format!("; {encoded} is not a multiple of {n}"));
            }
            push(kind, detail, None);
        } else if listed % n as i64 != 0 {
            push(
                FindingKind::NEqualityViolation,
                format!("listed N={listed} is not a multiple of {n}"),
                None,
            );
        }
        if r.rule.trim().is_empty() {
            push(
                FindingKind::BlankRow,
                format!("no rule printed (w={}, u={})", r.w, r.u),
                None,
            );
            continue;
        }
        match parse_rule_text(r.rule) {
            Some((u, w)) if (u, w) == (r.u, r.w) => {}
            Some((u, w)) if (u, w) == (-r.u, -r.w) => push(
                FindingKind::SignFlippedRuleText,
                format!(
                    "printed {:?} is the negation of uB+wb with u={}, w={}",
                    r.rule, r.u, r.w
                ),
                None,
            ),
            _ => push(
                FindingKind::RuleTextMismatch,
                format!("printed {:?} does not match u={}, w={}", r.rule, r.u, r.w),
                None,
            ),
        }
        if !encodes_multiple {
            continue;
        }
        let Ok(ps) = ParameterSet::from_pair(n, base, r.w, r.u) else {
            continue;
        };
        let window = bound.unwrap_or_else(|| default_bound(n, base));
        if let SoundnessClass::ForwardOnly { witness } = classify(&ps, window) {
            push(
                FindingKind::UnsoundRow,
                format!(
                    "gcd(|w|, n) = gcd({}, {n}) > 1; R({witness}) is divisible by {n} but {witness} is not",
                    r.w.abs()
                ),
                Some(witness),
            );
        }
    }
    findings
}

/// Audits generated rows: each rule must classify as full over
/// `[0, bound]`; divisors without a rule are reported as blank.
pub fn audit_generated(rows: &[RuleRow], bound: Option<u64>) -> Vec<TableAuditFinding> {
    let mut findings = Vec::new();
    for row in rows {
        let source = AuditSource::Generated { base: row.base };
        match &row.rule {
            None => findings.push(TableAuditFinding {
                source,
                n: row.n,
                kind: FindingKind::BlankRow,
                detail: "no sound parameter set within the searched multipliers".into(),
                witness: None,
            }),
            Some(r) => {
                let window = bound.unwrap_or_else(|| default_bound(row.n, row.base));
                if let SoundnessClass::ForwardOnly { witness } = classify(&r.params, window) {
                    findings.push(TableAuditFinding {
                        source,
                        n: row.n,
                        kind: FindingKind::UnsoundRow,
                        detail: format!("rule {} is forward-only", r.rule_text),
                        witness: Some(witness),
                    });
                }
            }
        }
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::equivalence_audit;

    fn kinds_for(findings: &[TableAuditFinding], kind: FindingKind) -> Vec<(u64, Option<u64>)> {
        findings
            .iter()
            .filter(|f| f.kind == kind)
            .map(|f| (f.n, f.witness))
            .collect()
    }

    #[test]
    fn rule_text_normalization() {
        assert_eq!(rule_text(1, 2), "B + 2b");
        assert_eq!(rule_text(-2, 1), "2B - b");
        assert_eq!(rule_text(1, -2), "B - 2b");
        assert_eq!(rule_text(0, 1), "b");
        assert_eq!(rule_text(0, -3), "3b");
        assert_eq!(rule_text(-5, 0), "5B");
    }

    #[test]
    fn rule_text_parsing() {
        assert_eq!(parse_rule_text("2B-3b"), Some((2, -3)));
        assert_eq!(parse_rule_text("B + 2b"), Some((1, 2)));
        assert_eq!(parse_rule_text("b"), Some((0, 1)));
        assert_eq!(parse_rule_text("-B+b"), Some((-1, 1)));
        assert_eq!(parse_rule_text(""), None);
        assert_eq!(parse_rule_text("B+B"), None);
        assert_eq!(parse_rule_text("2x"), None);
        for (u, w) in [(3, -8), (1, 1), (0, 2), (4, -2)] {
            assert_eq!(parse_rule_text(&rule_text(u, w)), Some((u, w)));
        }
    }

    #[test]
    fn generate_examples() {
        let rows = generate(10, 13..=13, 3).unwrap();
        let r = rows[0].rule.as_ref().unwrap();
        assert_eq!(
            (r.params.w(), r.params.u(), r.params.multiple()),
            (4, 1, 39)
        );
        assert_eq!(r.rule_text, "B + 4b");

        let rows = generate(8, 7..=7, 3).unwrap();
        let r = rows[0].rule.as_ref().unwrap();
        assert_eq!((r.params.w(), r.params.u()), (1, 1));
        assert_eq!(r.rule_text, "B + b");

        let rows = generate(10, 2..=2, 3).unwrap();
        let r = rows[0].rule.as_ref().unwrap();
        assert_eq!(
            equivalence_audit(&r.params, 1000).verdict,
            SoundnessClass::Full
        );
    }

    #[test]
    fn generate_marks_round_numbers() {
        let rows = generate(8, 8..=24, 3).unwrap();
        let blank: Vec<u64> = rows
            .iter()
            .filter(|r| r.rule.is_none())
            .map(|r| r.n)
            .collect();
        assert_eq!(blank, vec![16, 24]);
        let eight = rows[0].rule.as_ref().unwrap();
        assert!(eight.params.is_last_digit());
        assert_eq!(eight.rule_text, "b");
        assert!(generate(10, 1..=5, 3).is_err());
    }

    #[test]
    fn generated_rows_are_full() {
        for base in [8, 10, 16] {
            for row in generate(base, 2..=60, 3).unwrap() {
                if let Some(r) = row.rule {
                    let report = equivalence_audit(&r.params, default_bound(row.n, base));
                    assert_eq!(report.verdict, SoundnessClass::Full, "{}", r.params);
                    assert_eq!(r.soundness, SoundnessClass::Full);
                }
            }
        }
    }

    #[test]
    fn table_one_audit() {
        let findings = audit_paper_table(PaperTable::One, None);
        assert_eq!(
            kinds_for(&findings, FindingKind::NSignMismatch),
            vec![(11, None)]
        );
        assert_eq!(
            kinds_for(&findings, FindingKind::UnsoundRow),
            vec![
                (18, Some(9)),
                (22, Some(11)),
                (27, Some(9)),
                (33, Some(11)),
                (87, Some(29))
            ]
        );
        assert!(kinds_for(&findings, FindingKind::NEqualityViolation).is_empty());
        assert!(kinds_for(&findings, FindingKind::RuleTextMismatch).is_empty());
        let flipped: Vec<u64> = kinds_for(&findings, FindingKind::SignFlippedRuleText)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(flipped, vec![6, 31, 32, 81, 83]);
    }

    #[test]
    fn table_two_audit() {
        let findings = audit_paper_table(PaperTable::Two, None);
        let neq = kinds_for(&findings, FindingKind::NEqualityViolation);
        assert_eq!(neq, vec![(13, None)]);
        let detail = &findings
            .iter()
            .find(|f| f.kind == FindingKind::NEqualityViolation)
            .unwrap()
            .detail;
        assert!(detail.contains("N=26") && detail.contains("=22"));
        let unsound: Vec<u64> = kinds_for(&findings, FindingKind::UnsoundRow)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(unsound, vec![0o16, 0o22, 0o24, 0o25]);
        let blank: Vec<u64> = kinds_for(&findings, FindingKind::BlankRow)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(blank, vec![0o10, 0o20, 0o30]);
        assert!(kinds_for(&findings, FindingKind::NSignMismatch).is_empty());
    }

    #[test]
    fn consistent_table_has_no_findings() {
        let rows = [
            row("7", "-21", 1, -2, "B-2b"),
            row("13", "39", 1, 4, "B + 4b"),
        ];
        assert!(audit_rows(AuditSource::Paper(PaperTable::One), &rows, None).is_empty());
    }

    #[test]
    fn csv_rendering() {
        let rows = generate(10, 19..=19, 3).unwrap();
        assert_eq!(
            render(&rows, TableFormat::Csv),
            format!("{CSV_HEADER}\n19,1,19,1,2,B + 2b,full\n")
        );
        assert_eq!(render(&[], TableFormat::Csv), format!("{CSV_HEADER}\n"));
        let none = generate(8, 16..=16, 3).unwrap();
        assert_eq!(
            render(&none, TableFormat::Csv),
            format!("{CSV_HEADER}\n16,,,,,,none\n")
        );
    }

    #[test]
    fn text_rendering_octal() {
        let ps = ParameterSet::from_pair(0o27, 8, 3, 1).unwrap();
        let rows = [RuleRow {
            n: 0o27,
            base: 8,
            rule: Some(RowRule {
                params: ps,
                rule_text: rule_text(1, 3),
                soundness: SoundnessClass::Full,
            }),
        }];
        let text = render(&rows, TableFormat::Text);
        let line = text.lines().nth(1).unwrap();
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[0], "27");
        assert_eq!(cells[2], "27(=23)");
        assert!(text.is_ascii());
    }

    // Reads the text table back into CSV lines.
    fn text_to_csv(text: &str, base: u32) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for line in text.lines().skip(1) {
            let cells: Vec<&str> = line.split_whitespace().collect();
            let n = u64::from_str_radix(cells[0], base).unwrap();
            if cells[1] == "-" {
                out.push_str(&format!("{n},,,,,,{}\n", cells[6]));
                continue;
            }
            let big_n = cells[2].split("(=").next().unwrap();
            let big_n = i64::from_str_radix(big_n, base).unwrap();
            let end = cells
                .iter()
                .position(|c| *c == "full" || *c == "forward-only")
                .unwrap();
            let rule = cells[5..end].join(" ");
            out.push_str(&format!(
                "{n},{},{big_n},{},{},{rule},{}\n",
                cells[1], cells[3], cells[4], cells[end]
            ));
        }
        out
    }

    #[test]
    fn text_and_csv_carry_same_data() {
        for base in [8, 10, 16] {
            let rows = generate(base, 2..=40, 3).unwrap();
            let csv = render(&rows, TableFormat::Csv);
            let text = render(&rows, TableFormat::Text);
            assert_eq!(text_to_csv(&text, base), csv);
            assert!(csv.is_ascii() && !csv.contains('\r'));
        }
    }

    #[test]
    fn rendering_is_stable() {
        let rows = generate(10, 3..=33, 3).unwrap();
        assert_eq!(
            render(&rows, TableFormat::Text),
            render(&rows, TableFormat::Text)
        );
    }
}
