//! The `.kg` text format.
//!
//! ```text
//! # one vertex, two commuting loops
//! rank 2
//! vertex v
//! edge f : v <- v color 1
//! edge g : v <- v color 2
//! square f g = g f
//! ```
//!
//! Lines are independent; `#` starts a comment. `rank` comes first. Edges are
//! written `range <- source` so that a square `e f = g h` reads in
//! composition order: `f` first, then `e`.

use kgraph_core::{Skeleton, Square};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraphFile {
    pub skeleton: Skeleton,
    pub squares: Vec<Square>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Colon,
    Arrow,
    Equals,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`<-`".into(),
            Tok::Equals => "`=`".into(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

/// Tokens with their 1-based columns.
fn lex(line: &str, lineno: usize) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    let col = |byte: usize| line[..byte].chars().count() + 1;
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == ':' {
            chars.next();
            out.push((col(i), Tok::Colon));
        } else if c == '=' {
            chars.next();
            out.push((col(i), Tok::Equals));
        } else if c == '<' {
            chars.next();
            if chars.next_if(|&(_, c)| c == '-').is_none() {
                return Err(ParseError {
                    line: lineno,
                    column: col(i),
                    message: "expected `<-`".into(),
                });
            }
            out.push((col(i), Tok::Arrow));
        } else if is_name_char(c) {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if !is_name_char(c) {
                    break;
                }
                end = j + c.len_utf8();
                chars.next();
            }
            out.push((col(i), Tok::Word(&line[i..end])));
        } else {
            return Err(ParseError {
                line: lineno,
                column: col(i),
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Line<'a> {
    no: usize,
    end: usize,
    toks: Vec<(usize, Tok<'a>)>,
    at: usize,
}

impl<'a> Line<'a> {
    fn err_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    fn name(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.toks.get(self.at) {
            Some(&(c, Tok::Word(w))) => {
                self.at += 1;
                Ok((c, w))
            }
            Some((c, t)) => Err(self.err_at(*c, format!("expected {what}, found {}", t.describe()))),
            None => Err(self.err_at(self.end, format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.name(&format!("`{kw}`"))? {
            (_, w) if w == kw => Ok(()),
            (c, w) => Err(self.err_at(c, format!("expected `{kw}`, found `{w}`"))),
        }
    }

    fn punct(&mut self, want: Tok<'static>) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            Some((_, t)) if *t == want => {
                self.at += 1;
                Ok(())
            }
            Some((c, t)) => Err(self.err_at(*c, format!("expected {}, found {}", want.describe(), t.describe()))),
            None => Err(self.err_at(self.end, format!("expected {}", want.describe()))),
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let (c, w) = self.name(what)?;
        w.parse::<usize>()
            .map(|n| (c, n))
            .map_err(|_| self.err_at(c, format!("expected {what}, found `{w}`")))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            Some((c, t)) => Err(self.err_at(*c, format!("unexpected {} at end of line", t.describe()))),
            None => Ok(()),
        }
    }
}

/// Parses a `.kg` file. Structural problems (unknown names, bad colors,
/// squares of the wrong shape) are reported with their position; whether
/// the result is a k-graph is left to validation.
pub fn parse(text: &str) -> Result<KGraphFile, ParseError> {
    let mut skeleton: Option<Skeleton> = None;
    let mut squares = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = lex(content, no)?;
        if toks.is_empty() {
            continue;
        }
        let mut line = Line {
            no,
            end: content.trim_end().chars().count() + 1,
            toks,
            at: 0,
        };
        let (kc, kw) = line.name("a declaration")?;
        if kw == "rank" {
            if skeleton.is_some() {
                return Err(line.err_at(kc, "`rank` declared twice"));
            }
            let (c, k) = line.number("a rank")?;
            line.finish()?;
            skeleton = Some(Skeleton::new(k).map_err(|e| line.err_at(c, e.to_string()))?);
            continue;
        }
        let Some(sk) = skeleton.as_mut() else {
            return Err(line.err_at(kc, "expected `rank` before other declarations"));
        };
        match kw {
            "vertex" => {
                let (c, name) = line.name("a vertex name")?;
                line.finish()?;
                sk.add_vertex(name).map_err(|e| line.err_at(c, e.to_string()))?;
            }
            "edge" => {
                let (nc, name) = line.name("an edge name")?;
                line.punct(Tok::Colon)?;
                let (rc, range) = line.name("a range vertex")?;
                line.punct(Tok::Arrow)?;
                let (sc, source) = line.name("a source vertex")?;
                line.keyword("color")?;
                let (cc, color) = line.number("a color")?;
                line.finish()?;
                let r = sk
                    .vertex(range)
                    .ok_or_else(|| line.err_at(rc, format!("unknown vertex `{range}`")))?;
                let s = sk
                    .vertex(source)
                    .ok_or_else(|| line.err_at(sc, format!("unknown vertex `{source}`")))?;
                if color == 0 || color > sk.rank() {
                    return Err(line.err_at(cc, format!("color {color} is outside 1..={}", sk.rank())));
                }
                sk.add_edge_ids(name, r, s, color)
                    .map_err(|e| line.err_at(nc, e.to_string()))?;
            }
            "square" => {
                let mut ids = Vec::with_capacity(4);
                for i in 0..4 {
                    if i == 2 {
                        line.punct(Tok::Equals)?;
                    }
                    let (c, name) = line.name("an edge name")?;
                    let id = sk
                        .edge_id(name)
                        .ok_or_else(|| line.err_at(c, format!("unknown edge `{name}`")))?;
                    ids.push(id);
                }
                line.finish()?;
                let sq = Square::new(ids[0], ids[1], ids[2], ids[3]);
                sq.check(sk).map_err(|e| line.err_at(kc, e.to_string()))?;
                squares.push(sq);
            }
            other => return Err(line.err_at(kc, format!("unknown declaration `{other}`"))),
        }
    }
    let skeleton = skeleton.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing `rank` declaration".into(),
    })?;
    Ok(KGraphFile { skeleton, squares })
}

/// Prints in the same format; `parse(&print(..))` gives back equal data.
pub fn print(sk: &Skeleton, squares: &[Square]) -> String {
    let mut out = format!("rank {}\n", sk.rank());
    for v in sk.vertices() {
        out += &format!("vertex {}\n", sk.vertex_name(v));
    }
    for (_, e) in sk.edges() {
        out += &format!(
            "edge {} : {} <- {} color {}\n",
            e.name,
            sk.vertex_name(e.range),
            sk.vertex_name(e.source),
            e.color
        );
    }
    for sq in squares {
        out += &format!("square {}\n", sq.display(sk));
    }
    out
}
