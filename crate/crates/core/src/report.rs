//! Report values and their screen, CSV and TeX renderings.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Screen,
    Csv,
    Tex,
}

/// One distribution row.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    /// Grouping key for document/sentence granularity.
    pub group: Option<String>,
    pub value: String,
    pub frequency: usize,
    pub proportion: f64,
}

/// Labels shared by every report kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportTitle {
    /// e.g. `Tlink`
    pub tag: String,
    /// e.g. `reltype`
    pub field: String,
    /// e.g. `where reltype is before`
    pub filter: Option<String>,
    /// Header of the grouping column, when grouped.
    pub group_label: Option<String>,
}

impl ReportTitle {
    fn subject(&self) -> String {
        let mut s = format!("{} {}", self.tag, self.field);
        if let Some(f) = &self.filter {
            s.push(' ');
            s.push_str(f);
        }
        s
    }

    fn label(&self, kind: &str) -> String {
        let mut label = format!("tab:{}{}", sanitize_label(&self.tag), sanitize_label(&self.field));
        if let Some(f) = &self.filter {
            for word in f.split_whitespace() {
                label.push('-');
                label.push_str(&sanitize_label(word));
            }
        }
        label.push_str(kind);
        label
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub title: ReportTitle,
    pub rows: Vec<ReportRow>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCounts {
    pub group: Option<String>,
    pub filled: usize,
    pub unfilled: usize,
}

impl StateCounts {
    pub fn total(&self) -> usize {
        self.filled + self.unfilled
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateReport {
    pub title: ReportTitle,
    /// One entry per group; a single ungrouped entry at corpus granularity.
    pub counts: Vec<StateCounts>,
}

impl StateReport {
    pub fn filled(&self) -> usize {
        self.counts.iter().map(|c| c.filled).sum()
    }

    pub fn unfilled(&self) -> usize {
        self.counts.iter().map(|c| c.unfilled).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListReport {
    pub title: ReportTitle,
    /// (group, value), values distinct and sorted within each group.
    pub values: Vec<(Option<String>, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Report {
    List(ListReport),
    Distribution(Distribution),
    State(StateReport),
}

/// `part / whole` as a percentage with three significant digits, e.g.
/// `21.9%`, `9.07%`, `0.0156%`.
pub fn format_percent(part: usize, whole: usize) -> String {
    if whole == 0 {
        return percent(0.0);
    }
    percent(100.0 * part as f64 / whole as f64)
}

/// Renders a percentage value with three significant digits.
pub fn percent(v: f64) -> String {
    if v <= 0.0 {
        return "0%".to_string();
    }
    let mut exp = libm::floor(libm::log10(v)) as i32;
    if v < libm::pow(10.0, exp as f64) {
        exp -= 1;
    } else if v >= libm::pow(10.0, (exp + 1) as f64) {
        exp += 1;
    }
    let mut decimals = (2 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    // rounding can carry into a new digit (9.996 -> 10.00)
    let rounded: f64 = s.parse().unwrap_or(v);
    if decimals > 0 && rounded >= libm::pow(10.0, (exp + 1) as f64) {
        decimals -= 1;
        s = format!("{v:.decimals$}");
    }
    s.push('%');
    s
}

fn sanitize_label(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).collect()
}

/// Escapes TeX special characters.
pub fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            _ => out.push(c),
        }
    }
    out
}

/// Quotes a CSV field when it contains a comma, quote or line break.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[&str]) -> String {
    let mut line: String = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

pub fn format_report(report: &Report, format: Format) -> String {
    match (report, format) {
        (Report::Distribution(d), Format::Screen) => distribution_screen(d),
        (Report::Distribution(d), Format::Csv) => distribution_csv(d),
        (Report::Distribution(d), Format::Tex) => distribution_tex(d),
        (Report::State(s), Format::Screen) => state_screen(s),
        (Report::State(s), Format::Csv) => state_csv(s),
        (Report::State(s), Format::Tex) => state_tex(s),
        (Report::List(l), Format::Screen) => list_screen(l),
        (Report::List(l), Format::Csv) => list_csv(l),
        (Report::List(l), Format::Tex) => list_tex(l),
    }
}

#[derive(Clone, Copy)]
enum Align {
    Left,
    Right,
}

/// Fixed-width table: columns sized to their widest cell.
fn aligned(header: &[&str], align: &[Align], rows: &[Vec<String>], footer: Option<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows.iter().chain(footer.iter()) {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let render = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = widths[i].saturating_sub(cell.chars().count());
            match align[i] {
                Align::Left => {
                    line.push_str(cell);
                    line.extend(core::iter::repeat_n(' ', pad));
                }
                Align::Right => {
                    line.extend(core::iter::repeat_n(' ', pad));
                    line.push_str(cell);
                }
            }
        }
        let mut line = line.trim_end().to_string();
        line.push('\n');
        line
    };
    let rule: String = "=".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1));
    let mut out = render(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    out.push_str(&rule);
    out.push('\n');
    for row in rows {
        out.push_str(&render(row));
    }
    if let Some(f) = footer {
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&render(&f));
    }
    out
}

fn distribution_screen(d: &Distribution) -> String {
    let mut out = format!("Distribution of {}\n", d.title.subject());
    let grouped = d.title.group_label.is_some();
    let mut header = Vec::new();
    let mut align = Vec::new();
    if let Some(g) = &d.title.group_label {
        header.push(g.as_str());
        align.push(Align::Left);
    }
    header.extend(["Value", "Frequency", "Proportion"]);
    align.extend([Align::Left, Align::Right, Align::Right]);
    let rows: Vec<Vec<String>> = d
        .rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            if grouped {
                cells.push(r.group.clone().unwrap_or_default());
            }
            cells.push(r.value.clone());
            cells.push(r.frequency.to_string());
            cells.push(percent_of(r.proportion));
            cells
        })
        .collect();
    let mut footer = Vec::new();
    if grouped {
        footer.push(String::new());
    }
    footer.extend(["Total".to_string(), d.total.to_string(), String::new()]);
    out.push_str(&aligned(&header, &align, &rows, Some(footer)));
    out
}

fn percent_of(proportion: f64) -> String {
    percent(100.0 * proportion)
}

fn distribution_csv(d: &Distribution) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = Vec::new();
    if let Some(g) = &d.title.group_label {
        header.push(g);
    }
    header.extend(["value", "frequency", "proportion"]);
    out.push_str(&csv_line(&header));
    for r in &d.rows {
        let freq = r.frequency.to_string();
        let prop = percent_of(r.proportion);
        let mut fields: Vec<&str> = Vec::new();
        if d.title.group_label.is_some() {
            fields.push(r.group.as_deref().unwrap_or(""));
        }
        fields.extend([r.value.as_str(), freq.as_str(), prop.as_str()]);
        out.push_str(&csv_line(&fields));
    }
    out
}

fn tex_table(
    caption: &str,
    label: &str,
    header: &[String],
    rows: &[Vec<String>],
    total: Option<Vec<String>>,
) -> String {
    let mut out = String::new();
    let cols: Vec<&str> = (0..header.len()).map(|i| if i == 0 { "l" } else { "r" }).collect();
    let _ = writeln!(out, "\\begin{{table}}");
    let _ = writeln!(out, "\\begin{{center}}");
    let _ = writeln!(out, "\\caption{{{}}}", tex_escape(caption));
    let _ = writeln!(out, "\\label{{{label}}}");
    let _ = writeln!(out, "\\begin{{tabular}}{{ | {} | }}", cols.join(" | "));
    let _ = writeln!(out, "\\hline");
    let head: Vec<String> = header
        .iter()
        .map(|h| format!("\\textbf{{{}}}", tex_escape(h)))
        .collect();
    let _ = writeln!(out, "{} \\\\", head.join(" & "));
    let _ = writeln!(out, "\\hline");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| tex_escape(c)).collect();
        let _ = writeln!(out, "{} \\\\", cells.join(" & "));
    }
    let _ = writeln!(out, "\\hline");
    if let Some(t) = total {
        let cells: Vec<String> = t.iter().map(|c| tex_escape(c)).collect();
        let _ = writeln!(out, "{} \\\\", cells.join(" & "));
        let _ = writeln!(out, "\\hline");
    }
    let _ = writeln!(out, "\\end{{tabular}}");
    let _ = writeln!(out, "\\end{{center}}");
    let _ = writeln!(out, "\\end{{table}}");
    out
}

fn distribution_tex(d: &Distribution) -> String {
    let grouped = d.title.group_label.is_some();
    let mut header = Vec::new();
    if let Some(g) = &d.title.group_label {
        header.push(g.clone());
    }
    header.extend([
        format!("{} {}", d.title.tag, d.title.field),
        "Frequency".into(),
        "Proportion".into(),
    ]);
    let rows: Vec<Vec<String>> = d
        .rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            if grouped {
                cells.push(r.group.clone().unwrap_or_default());
            }
            cells.extend([r.value.clone(), r.frequency.to_string(), percent_of(r.proportion)]);
            cells
        })
        .collect();
    let mut total = Vec::new();
    if grouped {
        total.push(String::new());
    }
    total.extend(["Total".to_string(), d.total.to_string(), String::new()]);
    tex_table(
        &format!("Distribution of {}", d.title.subject()),
        &d.title.label("-Frequency-Proportion-distribution"),
        &header,
        &rows,
        Some(total),
    )
}

fn state_screen(s: &StateReport) -> String {
    let field = &s.title.field;
    let mut out = format!("{:>7}  State of {}\n", "Count", s.title.subject());
    out.push(' ');
    out.push_str(&"=".repeat(43));
    out.push('\n');
    for c in &s.counts {
        if let Some(g) = &c.group {
            let _ = writeln!(out, "# {g}");
        }
        let total = c.total();
        let _ = writeln!(
            out,
            "{:>7}  {field} filled   ({})",
            c.filled,
            format_percent(c.filled, total)
        );
        let _ = writeln!(
            out,
            "{:>7}  {field} unfilled ({})",
            c.unfilled,
            format_percent(c.unfilled, total)
        );
    }
    out
}

fn state_csv(s: &StateReport) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = Vec::new();
    if let Some(g) = &s.title.group_label {
        header.push(g);
    }
    header.extend(["state", "count", "proportion"]);
    out.push_str(&csv_line(&header));
    for c in &s.counts {
        for (state, n) in [("filled", c.filled), ("unfilled", c.unfilled)] {
            let count = n.to_string();
            let prop = format_percent(n, c.total());
            let mut fields: Vec<&str> = Vec::new();
            if s.title.group_label.is_some() {
                fields.push(c.group.as_deref().unwrap_or(""));
            }
            fields.extend([state, count.as_str(), prop.as_str()]);
            out.push_str(&csv_line(&fields));
        }
    }
    out
}

fn state_tex(s: &StateReport) -> String {
    let grouped = s.title.group_label.is_some();
    let mut header = Vec::new();
    if let Some(g) = &s.title.group_label {
        header.push(g.clone());
    }
    header.extend([
        format!("{} {}", s.title.tag, s.title.field),
        "Count".into(),
        "Proportion".into(),
    ]);
    let mut rows = Vec::new();
    for c in &s.counts {
        for (state, n) in [("filled", c.filled), ("unfilled", c.unfilled)] {
            let mut cells = Vec::new();
            if grouped {
                cells.push(c.group.clone().unwrap_or_default());
            }
            cells.extend([
                format!("{} {state}", s.title.field),
                n.to_string(),
                format_percent(n, c.total()),
            ]);
            rows.push(cells);
        }
    }
    tex_table(
        &format!("State of {}", s.title.subject()),
        &s.title.label("-Count-Proportion-state"),
        &header,
        &rows,
        None,
    )
}

fn list_screen(l: &ListReport) -> String {
    let mut out = String::new();
    if l.values.is_empty() {
        let _ = writeln!(out, "No values for {}", l.title.subject());
    }
    for (group, value) in &l.values {
        match group {
            Some(g) => {
                let _ = writeln!(out, "{g}  {value}");
            }
            None => {
                let _ = writeln!(out, "{value}");
            }
        }
    }
    out
}

fn list_csv(l: &ListReport) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = Vec::new();
    if let Some(g) = &l.title.group_label {
        header.push(g);
    }
    header.push(&l.title.field);
    out.push_str(&csv_line(&header));
    for (group, value) in &l.values {
        let mut fields: Vec<&str> = Vec::new();
        if l.title.group_label.is_some() {
            fields.push(group.as_deref().unwrap_or(""));
        }
        fields.push(value);
        out.push_str(&csv_line(&fields));
    }
    out
}

fn list_tex(l: &ListReport) -> String {
    let mut header = Vec::new();
    if let Some(g) = &l.title.group_label {
        header.push(g.clone());
    }
    header.push(format!("{} {}", l.title.tag, l.title.field));
    let rows: Vec<Vec<String>> = l
        .values
        .iter()
        .map(|(g, v)| match (&l.title.group_label, g) {
            (Some(_), g) => alloc::vec![g.clone().unwrap_or_default(), v.clone()],
            (None, _) => alloc::vec![v.clone()],
        })
        .collect();
    tex_table(
        &format!("List of {}", l.title.subject()),
        &l.title.label("-list"),
        &header,
        &rows,
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn percentages_have_three_significant_digits() {
        let table3 = [
            (1408, "21.9%"),
            (1357, "21.1%"),
            (897, "14.0%"),
            (743, "11.6%"),
            (671, "10.5%"),
            (582, "9.07%"),
            (302, "4.71%"),
            (177, "2.76%"),
            (76, "1.18%"),
            (70, "1.09%"),
            (39, "0.608%"),
            (1, "0.0156%"),
        ];
        for (n, expected) in table3 {
            assert_eq!(format_percent(n, 6418), expected, "{n}");
        }
        // printed as 0.95 / 0.53 in the published table; 3 s.f. keeps the zero
        assert_eq!(format_percent(61, 6418), "0.950%");
        assert_eq!(format_percent(34, 6418), "0.530%");
        assert_eq!(format_percent(28, 7940), "0.353%");
        assert_eq!(format_percent(5122, 7940), "64.5%");
        assert_eq!(format_percent(2225, 7940), "28.0%");
        assert_eq!(format_percent(718, 6418), "11.2%");
        assert_eq!(format_percent(5700, 6418), "88.8%");
        assert_eq!(format_percent(7, 76), "9.21%");
        assert_eq!(format_percent(1, 1), "100%");
        assert_eq!(format_percent(0, 0), "0%");
        // 99.96% rounds up into a new digit
        assert_eq!(format_percent(9996, 10000), "100%");
        assert_eq!(format_percent(9996, 100000), "10.0%");
    }

    fn title(tag: &str, field: &str) -> ReportTitle {
        ReportTitle {
            tag: tag.into(),
            field: field.into(),
            filter: None,
            group_label: None,
        }
    }

    #[test]
    fn tex_caption_and_label() {
        let d = Distribution {
            title: title("Tlink", "reltype"),
            rows: vec![ReportRow {
                group: None,
                value: "IS_INCLUDED".into(),
                frequency: 2,
                proportion: 1.0,
            }],
            total: 2,
        };
        let tex = format_report(&Report::Distribution(d), Format::Tex);
        assert!(tex.contains("\\caption{Distribution of Tlink reltype}"));
        assert!(tex.contains("\\label{tab:Tlinkreltype-Frequency-Proportion-distribution}"));
        assert!(tex.contains("\\textbf{Tlink reltype} & \\textbf{Frequency} & \\textbf{Proportion} \\\\"));
        assert!(tex.contains("IS\\_INCLUDED & 2 & 100\\% \\\\"));
        assert!(tex.contains("Total & 2 &  \\\\"));
    }

    #[test]
    fn empty_csv_is_header_only() {
        let d = Distribution {
            title: title("Tlink", "reltype"),
            rows: vec![],
            total: 0,
        };
        assert_eq!(
            format_report(&Report::Distribution(d), Format::Csv),
            "value,frequency,proportion\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn one_row_screen() {
        let d = Distribution {
            title: title("Tlink", "reltype"),
            rows: vec![ReportRow {
                group: None,
                value: "BEFORE".into(),
                frequency: 3,
                proportion: 1.0,
            }],
            total: 3,
        };
        let screen = format_report(&Report::Distribution(d), Format::Screen);
        assert_eq!(
            screen,
            "Distribution of Tlink reltype\n\
             Value   Frequency  Proportion\n\
             =============================\n\
             BEFORE          3        100%\n\
             =============================\n\
             Total           3\n"
        );
    }

    #[test]
    fn state_screen_shape() {
        let s = StateReport {
            title: title("Tlink", "signalid"),
            counts: vec![StateCounts {
                group: None,
                filled: 718,
                unfilled: 5700,
            }],
        };
        assert_eq!(
            format_report(&Report::State(s), Format::Screen),
            "  Count  State of Tlink signalid\n \
             ===========================================\n    \
             718  signalid filled   (11.2%)\n   \
             5700  signalid unfilled (88.8%)\n"
        );
    }

    #[test]
    fn tex_escaping() {
        assert_eq!(tex_escape("$1.05 & #10_a%"), "\\$1.05 \\& \\#10\\_a\\%");
    }
}
