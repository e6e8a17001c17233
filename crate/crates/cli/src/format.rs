//! Lexing and block structure of the text format.
//!
//! A file is a sequence of blocks `kind name { … }`. Inside a block, statements are
//! separated by newlines or `;`. `#` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub text: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Sep,
}

fn lex(src: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                out.push((Tok::Sep, pos));
                line += 1;
                col = 1;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '{' | '}' | ';' => {
                chars.next();
                col += 1;
                out.push((
                    match c {
                        '{' => Tok::Open,
                        '}' => Tok::Close,
                        _ => Tok::Sep,
                    },
                    pos,
                ));
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            _ => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "{};#".contains(c) {
                        break;
                    }
                    w.push(c);
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Word(w), pos));
            }
        }
    }
    out
}

/// One statement: its words in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub words: Vec<Word>,
}

impl Stmt {
    pub fn head(&self) -> &str {
        &self.words[0].text
    }

    pub fn pos(&self) -> Pos {
        self.words[0].pos
    }

    pub fn args(&self) -> &[Word] {
        &self.words[1..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: Word,
    pub name: Word,
    pub stmts: Vec<Stmt>,
    pub end: Pos,
}

pub fn parse_blocks(src: &str) -> Result<Vec<Block>, ParseError> {
    let toks = lex(src);
    let eof = toks.last().map_or(Pos { line: 1, col: 1 }, |(_, p)| *p);
    let mut it = toks.into_iter().peekable();
    let mut blocks = Vec::new();
    let skip_seps = |it: &mut std::iter::Peekable<std::vec::IntoIter<(Tok, Pos)>>| {
        while it.peek().is_some_and(|(t, _)| *t == Tok::Sep) {
            it.next();
        }
    };
    loop {
        skip_seps(&mut it);
        let Some((tok, pos)) = it.next() else { break };
        let Tok::Word(kind) = tok else {
            return Err(ParseError::new(pos, "expected a block such as `space <name> { … }`"));
        };
        let kind = Word { text: kind, pos };
        let name = match it.next() {
            Some((Tok::Word(n), p)) => Word { text: n, pos: p },
            Some((_, p)) => return Err(ParseError::new(p, format!("expected a name after `{}`", kind.text))),
            None => return Err(ParseError::new(eof, format!("expected a name after `{}`", kind.text))),
        };
        skip_seps(&mut it);
        match it.next() {
            Some((Tok::Open, _)) => {}
            Some((_, p)) => {
                return Err(ParseError::new(p, format!("expected `{{` after `{} {}`", kind.text, name.text)))
            }
            None => return Err(ParseError::new(eof, format!("expected `{{` after `{} {}`", kind.text, name.text))),
        }
        let mut stmts = Vec::new();
        let mut cur: Vec<Word> = Vec::new();
        let end = loop {
            match it.next() {
                Some((Tok::Word(w), p)) => cur.push(Word { text: w, pos: p }),
                Some((Tok::Sep, _)) => {
                    if !cur.is_empty() {
                        stmts.push(Stmt { words: std::mem::take(&mut cur) });
                    }
                }
                Some((Tok::Close, p)) => {
                    if !cur.is_empty() {
                        stmts.push(Stmt { words: std::mem::take(&mut cur) });
                    }
                    break p;
                }
                Some((Tok::Open, p)) => return Err(ParseError::new(p, "unexpected `{` inside a block")),
                None => {
                    return Err(ParseError::new(kind.pos, format!("block `{} {}` is not closed", kind.text, name.text)))
                }
            }
        };
        blocks.push(Block { kind, name, stmts, end });
    }
    Ok(blocks)
}

/// Whether `s` survives as a single word.
pub fn is_word(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "{};#".contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_statements() {
        let src = "# head\nspace X { quantale B; monad identity\n  carrier a b # tail\n}\nmap f {\n}\n";
        let bs = parse_blocks(src).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].name.text, "X");
        let heads: Vec<&str> = bs[0].stmts.iter().map(|s| s.head()).collect();
        assert_eq!(heads, ["quantale", "monad", "carrier"]);
        assert_eq!(bs[0].stmts[2].words[2].pos, Pos { line: 3, col: 13 });
        assert!(bs[1].stmts.is_empty());
    }

    #[test]
    fn unclosed_block_reports_its_start() {
        let e = parse_blocks("\n  space X {\n carrier a").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
    }

    #[test]
    fn stray_brace() {
        let e = parse_blocks("space X { { }").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 11 });
        assert!(parse_blocks("} x").is_err());
    }
}
