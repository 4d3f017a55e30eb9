//! The PGSolver text format.
//!
//! ```text
//! parity 2;
//! 0 1 1 1,2 "left";
//! 1 2 0 1;
//! 2 3 0 2;
//! ```
//!
//! Each statement is `<id> <priority> <owner> <succ>(,<succ>)* ["name"];`
//! with owner `0` for Even and `1` for Odd. The `parity <maxId>;` header is
//! optional. Vertices are indexed in order of appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::ParseError;
use crate::game::{ParityGame, Player, VertexRecord};

/// A parsed game with the identifiers and names of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameFile {
    pub game: ParityGame,
    /// Input identifier of each vertex index.
    pub ids: Vec<u64>,
    pub names: Vec<Option<String>>,
}

impl GameFile {
    /// Identifiers `0..n`, no names.
    pub fn from_game(game: ParityGame) -> Self {
        let n = game.len();
        GameFile {
            game,
            ids: (0..n as u64).collect(),
            names: vec![None; n],
        }
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.ids.iter().position(|&i| i == id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(u64),
    Word(String),
    Text(String),
    Comma,
    Semicolon,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut j = 0;
        while j < chars.len() {
            let (line, col) = (i + 1, j + 1);
            let c = chars[j];
            let token = if c.is_whitespace() {
                j += 1;
                continue;
            } else if c == '#' {
                break;
            } else if c == ',' {
                j += 1;
                Token::Comma
            } else if c == ';' {
                j += 1;
                Token::Semicolon
            } else if c == '"' {
                let end = chars[j + 1..]
                    .iter()
                    .position(|&c| c == '"')
                    .ok_or_else(|| ParseError::syntax(line, col, "unterminated name"))?;
                let s: String = chars[j + 1..j + 1 + end].iter().collect();
                j += end + 2;
                Token::Text(s)
            } else if c.is_ascii_digit() {
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| ParseError::syntax(line, col, format!("number {s} is too large")))?;
                Token::Number(n)
            } else if c.is_ascii_alphabetic() {
                let start = j;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                Token::Word(chars[start..j].iter().collect())
            } else {
                return Err(ParseError::syntax(line, col, format!("unexpected character {c:?}")));
            };
            out.push(Spanned { token, line, col });
        }
    }
    Ok(out)
}

struct Cursor {
    tokens: Vec<Spanned>,
    at: usize,
    end: (usize, usize),
}

impl Cursor {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.at)
    }

    fn position(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.position();
        ParseError::syntax(line, col, message)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn number(&mut self, what: &str) -> Result<(u64, usize, usize), ParseError> {
        match self.peek() {
            Some(Spanned { token: Token::Number(n), line, col }) => {
                let r = (*n, *line, *col);
                self.at += 1;
                Ok(r)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn semicolon(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Spanned { token: Token::Semicolon, .. }) => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error("expected ';'")),
        }
    }
}

struct Statement {
    id: u64,
    priority: u32,
    owner: Player,
    successors: Vec<(u64, usize, usize)>,
    name: Option<String>,
    line: usize,
    col: usize,
}

/// Parses a game, reporting the first error with its line and column.
pub fn parse_game(text: &str) -> Result<GameFile, ParseError> {
    let tokens = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut cur = Cursor { tokens, at: 0, end: (lines, last_len + 1) };
    if let Some(Spanned { token: Token::Word(w), .. }) = cur.peek() {
        if w != "parity" {
            return Err(cur.error(format!("unknown keyword {w:?}")));
        }
        cur.next();
        cur.number("the maximal vertex id")?;
        cur.semicolon()?;
    }
    let mut statements = Vec::new();
    while cur.peek().is_some() {
        let (id, line, col) = cur.number("a vertex id")?;
        let (priority, pl, pc) = cur.number("a priority")?;
        let priority = u32::try_from(priority)
            .map_err(|_| ParseError::syntax(pl, pc, "priority out of range"))?;
        let (owner, ol, oc) = cur.number("an owner (0 or 1)")?;
        let owner = match owner {
            0 => Player::Even,
            1 => Player::Odd,
            _ => return Err(ParseError::syntax(ol, oc, format!("owner must be 0 or 1, got {owner}"))),
        };
        let mut successors = vec![cur.number("a successor id")?];
        while let Some(Spanned { token: Token::Comma, .. }) = cur.peek() {
            cur.next();
            successors.push(cur.number("a successor id")?);
        }
        let name = match cur.peek() {
            Some(Spanned { token: Token::Text(s), .. }) => {
                let s = s.clone();
                cur.next();
                Some(s)
            }
            _ => None,
        };
        cur.semicolon()?;
        statements.push(Statement { id, priority, owner, successors, name, line, col });
    }
    build(statements)
}

fn build(statements: Vec<Statement>) -> Result<GameFile, ParseError> {
    if statements.is_empty() {
        return Err(ParseError::semantic(1, 1, "the game has no vertices"));
    }
    let mut index: HashMap<u64, usize> = HashMap::new();
    for (i, s) in statements.iter().enumerate() {
        if index.insert(s.id, i).is_some() {
            return Err(ParseError::semantic(s.line, s.col, format!("vertex {} is defined twice", s.id)));
        }
    }
    let mut records = Vec::with_capacity(statements.len());
    for s in &statements {
        let mut successors = Vec::with_capacity(s.successors.len());
        for &(w, line, col) in &s.successors {
            let &j = index
                .get(&w)
                .ok_or_else(|| ParseError::semantic(line, col, format!("successor {w} is not a defined vertex")))?;
            successors.push(j);
        }
        records.push(VertexRecord { priority: s.priority, owner: s.owner, successors });
    }
    let game = ParityGame::new(records).map_err(|e| ParseError::semantic(1, 1, e.to_string()))?;
    Ok(GameFile {
        game,
        ids: statements.iter().map(|s| s.id).collect(),
        names: statements.into_iter().map(|s| s.name).collect(),
    })
}

/// Writes `file` in PGSolver format, with a header and one vertex per line.
pub fn write_game(file: &GameFile) -> String {
    let game = &file.game;
    let max_id = file.ids.iter().copied().max().unwrap_or(0);
    let mut out = format!("parity {max_id};\n");
    for v in game.vertices() {
        let owner = match game.owner(v) {
            Player::Even => 0,
            Player::Odd => 1,
        };
        let succ: Vec<String> = game.successors(v).iter().map(|&w| file.ids[w].to_string()).collect();
        write!(out, "{} {} {} {}", file.ids[v], game.priority(v), owner, succ.join(",")).unwrap();
        if let Some(name) = &file.names[v] {
            write!(out, " \"{name}\"").unwrap();
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::ErrorKind;

    #[test]
    fn single_vertex() {
        let f = parse_game("parity 1;\n0 2 0 0;").unwrap();
        assert_eq!(f.game.len(), 1);
        assert_eq!(f.game.priority(0), 2);
        assert_eq!(f.game.owner(0), Player::Even);
        assert_eq!(f.game.successors(0), [0]);
    }

    #[test]
    fn headerless_two_vertices() {
        let f = parse_game("0 1 1 1;\n1 2 0 1;").unwrap();
        assert_eq!(f.game.owner(0), Player::Odd);
        assert_eq!(f.game.successors(0), [1]);
        assert_eq!(f.game.successors(1), [1]);
    }

    #[test]
    fn sparse_ids_and_names() {
        let f = parse_game("parity 9;\n9 3 1 4,9 \"a b\";\n4 0 0 9;\n").unwrap();
        assert_eq!(f.ids, [9, 4]);
        assert_eq!(f.names, [Some("a b".to_string()), None]);
        assert_eq!(f.game.successors(0), [0, 1]);
        assert_eq!(parse_game(&write_game(&f)).unwrap(), f);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_game("0 2 0 ;").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Syntax, 1, 7));
        let e = parse_game("0 2 5 0;").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Syntax, 1, 5));
        let e = parse_game("parity 1;\n0 2 0 0").unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Syntax, 2));
        let e = parse_game("0 2 0 0 \"x;").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Syntax);
        let e = parse_game("0 2 0 0; @").unwrap_err();
        assert_eq!((e.line, e.col), (1, 10));
    }

    #[test]
    fn semantic_errors() {
        let e = parse_game("0 2 0 1;").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Semantic, 1, 7));
        let e = parse_game("0 2 0 0;\n0 1 0 0;").unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Semantic, 2));
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_game("# a game\nparity 0; # header\n0 2 0 0;\n").unwrap();
        assert_eq!(f.game.len(), 1);
    }
}
