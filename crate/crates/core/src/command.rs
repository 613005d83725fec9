//! Command grammar shared by the interactive prompt and batch mode.
//!
//! Keywords are case-insensitive. Values may be quoted with `"` or `'` to
//! keep spaces or to stop a word being read as a keyword.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::browse::TagFormat;
use crate::check::Targets;
use crate::fold::FoldName;
use crate::model::DocKey;
use crate::query::{Granularity, Predicate, Query, ReportKind, Tag};
use crate::report::Format;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CorpusImport {
        dir: String,
        name: Option<String>,
        fold: Option<FoldName>,
    },
    CorpusList,
    CorpusUse(String),
    CorpusInfo,
    CorpusDelete(String),
    Show(Query),
    BrowseDoc(DocKey),
    BrowseTag {
        tag: Tag,
        id: String,
        format: TagFormat,
    },
    CheckList,
    Check {
        name: String,
        targets: Targets,
    },
    Context(String),
    Help(Option<String>),
    Exit,
}

/// Which usage line to print with an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Corpus,
    Show,
    Browse,
    Check,
    Context,
    Any,
}

pub const USAGE_CORPUS: &str =
    "corpus (import <dir> [as <name>] [fold <scheme>] | list | use <name> | info | delete <name>)";
pub const USAGE_SHOW: &str = "show (list|distribution|state) of <tag> <field> [where <field> (is [not] <value> | is [not] filled | is [not] empty | is unfilled)] [by (document|sentence)] [min-freq <n>] [as (screen|csv|tex)]";
pub const USAGE_BROWSE: &str = "browse (doc <id|filename> | <tag> <id> [as (screen|csv|timeml)])";
pub const USAGE_CHECK: &str = "check (list | <name> [in (<id|filename>)+ | in all])";
pub const USAGE_CONTEXT: &str = "context <link id>";

impl Family {
    pub fn usage(self) -> &'static str {
        match self {
            Family::Corpus => USAGE_CORPUS,
            Family::Show => USAGE_SHOW,
            Family::Browse => USAGE_BROWSE,
            Family::Check => USAGE_CHECK,
            Family::Context => USAGE_CONTEXT,
            Family::Any => "corpus | show | browse | check | context | help | exit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character column the error points at.
    pub column: usize,
    pub message: String,
    pub family: Family,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column + 1, self.message)
    }
}

impl ParseError {
    /// The error with the input line, a caret under the offending column and
    /// a usage line.
    pub fn render(&self, line: &str) -> String {
        format!(
            "{}\n  {}\n  {}^\nusage: {}",
            self,
            line,
            " ".repeat(self.column),
            self.family.usage()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Word {
    text: String,
    column: usize,
    quoted: bool,
}

impl Word {
    fn is(&self, keyword: &str) -> bool {
        !self.quoted && self.text.eq_ignore_ascii_case(keyword)
    }
}

fn split_words(line: &str) -> Result<Vec<Word>, ParseError> {
    let mut words = Vec::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some(&(col, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '"' || c == '\'' {
            chars.next();
            let mut text = String::new();
            let mut closed = false;
            for (_, d) in chars.by_ref() {
                if d == c {
                    closed = true;
                    break;
                }
                text.push(d);
            }
            if !closed {
                return Err(ParseError {
                    column: col,
                    message: "unterminated quote".into(),
                    family: Family::Any,
                });
            }
            words.push(Word {
                text,
                column: col,
                quoted: true,
            });
        } else {
            let mut text = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_whitespace() {
                    break;
                }
                text.push(d);
                chars.next();
            }
            words.push(Word {
                text,
                column: col,
                quoted: false,
            });
        }
    }
    Ok(words)
}

struct Parser {
    words: Vec<Word>,
    pos: usize,
    end_column: usize,
    family: Family,
}

impl Parser {
    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            column,
            message: message.into(),
            family: self.family,
        }
    }

    fn peek(&self) -> Option<&Word> {
        self.words.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |w| w.column)
    }

    fn next(&mut self, what: &str) -> Result<Word, ParseError> {
        match self.words.get(self.pos) {
            Some(w) => {
                self.pos += 1;
                Ok(w.clone())
            }
            None => Err(self.error_at(self.end_column, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, keyword: &str) -> Result<(), ParseError> {
        let col = self.column();
        let w = self.next(&format!("`{keyword}`"))?;
        if w.is(keyword) {
            Ok(())
        } else {
            Err(self.error_at(col, format!("expected `{keyword}`, found `{}`", w.text)))
        }
    }

    fn eat(&mut self, keyword: &str) -> bool {
        if self.peek().is_some_and(|w| w.is(keyword)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn one_of<T: Copy>(&mut self, what: &str, options: &[(&str, T)]) -> Result<T, ParseError> {
        let col = self.column();
        let w = self.next(what)?;
        options.iter().find(|(k, _)| w.is(k)).map(|(_, v)| *v).ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(k, _)| *k).collect();
            self.error_at(
                col,
                format!("expected {what} ({}), found `{}`", names.join("|"), w.text),
            )
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(w) => Err(self.error_at(w.column, format!("unexpected `{}`", w.text))),
        }
    }
}

pub fn parse_command(line: &str) -> Result<Command, ParseError> {
    let words = split_words(line)?;
    let mut p = Parser {
        words,
        pos: 0,
        end_column: line.chars().count(),
        family: Family::Any,
    };
    let col = p.column();
    let head = p.next("a command")?;
    let keyword = if head.quoted {
        String::new()
    } else {
        head.text.to_ascii_lowercase()
    };
    let cmd = match keyword.as_str() {
        "corpus" => {
            p.family = Family::Corpus;
            parse_corpus(&mut p)?
        }
        "show" => {
            p.family = Family::Show;
            Command::Show(parse_show(&mut p)?)
        }
        "browse" => {
            p.family = Family::Browse;
            parse_browse(&mut p)?
        }
        "check" => {
            p.family = Family::Check;
            parse_check(&mut p)?
        }
        "context" => {
            p.family = Family::Context;
            Command::Context(p.next("a link id")?.text)
        }
        "help" | "?" => {
            let topic = p.peek().is_some().then(|| p.words[p.pos].text.to_ascii_lowercase());
            p.pos = p.words.len();
            Command::Help(topic)
        }
        "exit" | "quit" => Command::Exit,
        _ => {
            let hint = nearest_family(&keyword);
            let message = match hint {
                Some(f) => format!("unknown command `{}`; did you mean `{}`?", head.text, f),
                None => format!("unknown command `{}`", head.text),
            };
            return Err(ParseError {
                column: col,
                message,
                family: Family::Any,
            });
        }
    };
    p.finish()?;
    Ok(cmd)
}

fn nearest_family(word: &str) -> Option<&'static str> {
    const FAMILIES: [&str; 7] = ["corpus", "show", "browse", "check", "context", "help", "exit"];
    let matches = crate::browse::nearest_matches(word, FAMILIES);
    let first = matches.first()?;
    FAMILIES.iter().copied().find(|f| f == first)
}

fn parse_corpus(p: &mut Parser) -> Result<Command, ParseError> {
    #[derive(Clone, Copy)]
    enum Sub {
        Import,
        List,
        Use,
        Info,
        Delete,
    }
    let sub = p.one_of(
        "a corpus subcommand",
        &[
            ("import", Sub::Import),
            ("list", Sub::List),
            ("use", Sub::Use),
            ("info", Sub::Info),
            ("delete", Sub::Delete),
        ],
    )?;
    Ok(match sub {
        Sub::Import => {
            let dir = p.next("a directory")?.text;
            let mut name = None;
            let mut fold = None;
            loop {
                if name.is_none() && p.eat("as") {
                    name = Some(p.next("a corpus name")?.text);
                } else if fold.is_none() && p.eat("fold") {
                    let col = p.column();
                    let w = p.next("a fold scheme")?;
                    let scheme = w.text.parse::<FoldName>().map_err(|_| {
                        p.error_at(
                            col,
                            format!(
                                "unknown fold scheme `{}`; expected none, cavat, sputlink or compact",
                                w.text
                            ),
                        )
                    })?;
                    fold = Some(scheme);
                } else {
                    break;
                }
            }
            Command::CorpusImport { dir, name, fold }
        }
        Sub::List => Command::CorpusList,
        Sub::Use => Command::CorpusUse(p.next("a corpus name")?.text),
        Sub::Info => Command::CorpusInfo,
        Sub::Delete => Command::CorpusDelete(p.next("a corpus name")?.text),
    })
}

fn parse_tag(p: &mut Parser) -> Result<Tag, ParseError> {
    let col = p.column();
    let w = p.next("a tag")?;
    w.text.parse::<Tag>().map_err(|e| p.error_at(col, e.to_string()))
}

fn parse_field(p: &mut Parser, tag: Tag) -> Result<String, ParseError> {
    let col = p.column();
    let w = p.next("a field")?;
    crate::query::validate_field(tag, &w.text).map_err(|e| p.error_at(col, e.to_string()))
}

fn parse_predicate(p: &mut Parser) -> Result<Predicate, ParseError> {
    p.expect("is")?;
    let negated = p.eat("not");
    let col = p.column();
    let w = p.next("a value, `filled` or `empty`")?;
    let pred = if w.is("filled") {
        if negated {
            Predicate::Unfilled
        } else {
            Predicate::Filled
        }
    } else if w.is("empty") {
        if negated {
            Predicate::Filled
        } else {
            Predicate::Unfilled
        }
    } else if w.is("unfilled") {
        if negated {
            return Err(p.error_at(col, "use `is filled` rather than `is not unfilled`"));
        }
        Predicate::Unfilled
    } else if negated {
        Predicate::IsNot(w.text)
    } else {
        Predicate::Is(w.text)
    };
    Ok(pred)
}

fn parse_show(p: &mut Parser) -> Result<Query, ParseError> {
    let report = p.one_of(
        "a report type",
        &[
            ("list", ReportKind::List),
            ("distribution", ReportKind::Distribution),
            ("state", ReportKind::State),
        ],
    )?;
    p.expect("of")?;
    let tag = parse_tag(p)?;
    let field = parse_field(p, tag)?;
    let mut query = Query::new(report, tag, &field).expect("field validated");
    let mut seen_by = false;
    let mut seen_min = false;
    let mut seen_as = false;
    while let Some(w) = p.peek().cloned() {
        if w.is("where") && query.filter.is_none() {
            p.pos += 1;
            let filter_field = parse_field(p, tag)?;
            let predicate = parse_predicate(p)?;
            query = query.with_filter(&filter_field, predicate).expect("field validated");
        } else if w.is("by") && !seen_by {
            p.pos += 1;
            query.granularity = p.one_of(
                "a granularity",
                &[("document", Granularity::Document), ("sentence", Granularity::Sentence)],
            )?;
            seen_by = true;
        } else if w.is("min-freq") && !seen_min {
            p.pos += 1;
            let col = p.column();
            let n = p.next("a number")?;
            let value = n
                .text
                .parse::<usize>()
                .map_err(|_| p.error_at(col, format!("expected a number, found `{}`", n.text)))?;
            query.min_freq = Some(value);
            seen_min = true;
        } else if w.is("as") && !seen_as {
            p.pos += 1;
            query.format = p.one_of(
                "a format",
                &[("screen", Format::Screen), ("csv", Format::Csv), ("tex", Format::Tex)],
            )?;
            seen_as = true;
        } else {
            break;
        }
    }
    Ok(query)
}

fn parse_browse(p: &mut Parser) -> Result<Command, ParseError> {
    if p.eat("doc") || p.eat("document") {
        let key = p.next("a document id or filename")?;
        return Ok(Command::BrowseDoc(DocKey::parse(&key.text)));
    }
    let tag = parse_tag(p)?;
    let id = p.next("a tag id")?.text;
    let format = if p.eat("as") {
        p.one_of(
            "a format",
            &[
                ("screen", TagFormat::Screen),
                ("csv", TagFormat::Csv),
                ("timeml", TagFormat::Timeml),
            ],
        )?
    } else {
        TagFormat::Screen
    };
    Ok(Command::BrowseTag { tag, id, format })
}

fn parse_check(p: &mut Parser) -> Result<Command, ParseError> {
    let name = p.next("`list` or a check name")?;
    if name.is("list") {
        return Ok(Command::CheckList);
    }
    let targets = if p.eat("in") {
        if p.peek().is_some_and(|w| w.is("all")) {
            p.pos += 1;
            Targets::All
        } else {
            let mut keys = Vec::new();
            while let Some(w) = p.peek() {
                keys.push(DocKey::parse(&w.text));
                p.pos += 1;
            }
            if keys.is_empty() {
                return Err(p.error_at(p.end_column, "expected `all` or at least one document id or filename"));
            }
            Targets::Keys(keys)
        }
    } else {
        Targets::Default
    };
    Ok(Command::Check {
        name: name.text.to_ascii_lowercase(),
        targets,
    })
}

/// Splits a batch command string on `;` outside quotes.
pub fn split_commands(input: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    for c in input.chars() {
        match (quote, c) {
            (None, ';') => {
                out.push(core::mem::take(&mut cur));
                continue;
            }
            (None, '"' | '\'') => quote = Some(c),
            (Some(q), _) if q == c => quote = None,
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}
