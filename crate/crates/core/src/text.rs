//! Tokenization, sentence segmentation and a small English lemmatizer.
//!
//! Positions only need to be stable and monotone; none of this tries to be a
//! linguistically serious pipeline.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::Token;

const LEADING_PUNCT: &[char] = &['(', '[', '"', '\'', '`'];
const TRAILING_PUNCT: &[char] = &[',', ';', ':', '!', '?', '.', ')', ']', '"', '\''];
const TERMINALS: &[&str] = &[".", "?", "!"];

/// Incremental tokenizer fed with successive text chunks of one document.
///
/// Element boundaries always split tokens because each chunk is tokenized on
/// its own; whitespace carried across chunks is tracked so sentence breaks
/// still see it.
#[derive(Debug, Default)]
pub struct Tokenizer {
    tokens: Vec<Token>,
    sentence: u32,
    word: u32,
    pending_space: bool,
    pending_paragraph: bool,
    forced_break: bool,
}

impl Tokenizer {
    pub fn new() -> Self {
        Tokenizer::default()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Forces the next token to start a new sentence (e.g. at an `<s>` element).
    pub fn sentence_break(&mut self) {
        self.forced_break = true;
    }

    pub fn push_text(&mut self, chunk: &str) {
        let mut piece_start: Option<usize> = None;
        let mut newlines = 0usize;
        for (i, c) in chunk.char_indices() {
            if c.is_whitespace() {
                if let Some(start) = piece_start.take() {
                    self.push_piece(&chunk[start..i]);
                    newlines = 0;
                }
                self.pending_space = true;
                if c == '\n' {
                    newlines += 1;
                    if newlines >= 2 {
                        self.pending_paragraph = true;
                    }
                }
            } else if piece_start.is_none() {
                piece_start = Some(i);
            }
        }
        if let Some(start) = piece_start {
            self.push_piece(&chunk[start..]);
        }
    }

    pub fn finish(self) -> Vec<Token> {
        self.tokens
    }

    fn push_piece(&mut self, piece: &str) {
        let parts = split_punctuation(piece);
        for (n, part) in parts.into_iter().enumerate() {
            let spaced = n == 0 && self.pending_space;
            self.push_token(part, spaced);
        }
        self.pending_space = false;
        self.pending_paragraph = false;
    }

    fn push_token(&mut self, surface: &str, spaced: bool) {
        if let Some(prev) = self.tokens.last() {
            let after_terminal = TERMINALS.contains(&prev.surface.as_str());
            let capital = surface.chars().next().is_some_and(|c| c.is_uppercase());
            let boundary =
                (after_terminal && spaced && capital) || (self.pending_paragraph && spaced) || self.forced_break;
            if boundary && self.word > 0 {
                self.sentence += 1;
                self.word = 0;
            }
        }
        self.forced_break = false;
        self.tokens.push(Token {
            sentence: self.sentence,
            word: self.word,
            surface: surface.to_string(),
            lemma: lemmatize(surface),
        });
        self.word += 1;
    }
}

/// Splits a whitespace-free piece into leading punctuation, core and trailing
/// punctuation tokens. Internal punctuation (`39.8`, `U.S.`) stays attached.
fn split_punctuation(piece: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = piece;
    while rest.len() > 1 && rest.starts_with(LEADING_PUNCT) {
        let c = rest.chars().next().unwrap();
        out.push(&rest[..c.len_utf8()]);
        rest = &rest[c.len_utf8()..];
    }
    let mut trailing = Vec::new();
    while rest.len() > 1 && rest.ends_with(TRAILING_PUNCT) {
        let c = rest.chars().next_back().unwrap();
        let core = &rest[..rest.len() - c.len_utf8()];
        // "U.S." keeps its final period
        if c == '.' && core.contains('.') && core.ends_with(char::is_alphabetic) {
            break;
        }
        trailing.push(&rest[core.len()..]);
        rest = core;
    }
    if !rest.is_empty() {
        out.push(rest);
    }
    out.extend(trailing.into_iter().rev());
    out
}

/// Tokenizes a single string from scratch.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut t = Tokenizer::new();
    t.push_text(text);
    t.finish()
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

fn undo_doubling(stem: &str) -> &str {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3 && b[n - 1] == b[n - 2] && !is_vowel(b[n - 1]) && !matches!(b[n - 1], b'l' | b's' | b'z') {
        &stem[..n - 1]
    } else {
        stem
    }
}

/// Rule-based English suffix stripping on the lowercased surface form.
pub fn lemmatize(surface: &str) -> String {
    let lower = surface.to_lowercase();
    if !lower.is_ascii() || !lower.bytes().all(|b| b.is_ascii_alphabetic()) {
        return lower;
    }
    let w = lower.as_str();
    let n = w.len();
    let stem: String = if n > 4 && w.ends_with("ies") {
        let mut s = w[..n - 3].to_string();
        s.push('y');
        s
    } else if w.ends_with("sses")
        || n > 4 && (w.ends_with("ches") || w.ends_with("shes") || w.ends_with("xes") || w.ends_with("zes"))
    {
        w[..n - 2].to_string()
    } else if n > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") {
        w[..n - 1].to_string()
    } else if n > 5 && w.ends_with("ing") {
        undo_doubling(&w[..n - 3]).to_string()
    } else if n > 4 && w.ends_with("ed") && !w.ends_with("eed") {
        undo_doubling(&w[..n - 2]).to_string()
    } else {
        w.to_string()
    };
    stem
}
