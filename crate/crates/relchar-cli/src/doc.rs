//! The input document format: complexes, maps, and a task block, in a small
//! structured text language with line/column diagnostics.
//!
//! ```text
//! complex M {
//!   vertices 7
//!   simplices [0,1,2] [0,2,3]
//! }
//! complex A { vertices 6 simplices [0,1] }
//! map rho { source A target M vertex_map [1,2,3,4,5,6] }
//! task { command compute theory rel_cs degrees 1..3 }
//! ```
//!
//! `#` starts a comment running to the end of the line. Listed simplices are
//! closed under faces automatically.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaskDecl {
    pub command: Option<String>,
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub complexes: Vec<ComplexDecl>,
    pub maps: Vec<MapDecl>,
    pub task: Option<TaskDecl>,
}

impl InputDocument {
    pub fn complex(&self, name: &str) -> Option<&ComplexDecl> {
        self.complexes.iter().find(|c| c.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// Canonical serialization; parsing it back yields an equal document.
    #[allow(dead_code)]
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for c in &self.complexes {
            out.push_str(&format!("complex {} {{\n  vertices {}\n", c.name, c.vertices));
            if !c.simplices.is_empty() {
                out.push_str("  simplices");
                for s in &c.simplices {
                    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
                    out.push_str(&format!(" [{}]", parts.join(",")));
                }
                out.push('\n');
            }
            out.push_str("}\n");
        }
        for m in &self.maps {
            let parts: Vec<String> = m.vertex_map.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                "map {} {{\n  source {}\n  target {}\n  vertex_map [{}]\n}}\n",
                m.name,
                m.source,
                m.target,
                parts.join(",")
            ));
        }
        if let Some(task) = &self.task {
            out.push_str("task {\n");
            if let Some(cmd) = &task.command {
                out.push_str(&format!("  command {}\n", cmd));
            }
            for (k, v) in &task.options {
                out.push_str(&format!("  {} {}\n", k, v));
            }
            out.push_str("}\n");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    DotDot,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, column: 1 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize, usize)>, ParseError> {
        loop {
            match self.peek() {
                None => return Ok(None),
                Some(b'#') => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let c = self.peek().unwrap();
        let tok = match c {
            b'{' => {
                self.bump();
                Tok::LBrace
            }
            b'}' => {
                self.bump();
                Tok::RBrace
            }
            b'[' => {
                self.bump();
                Tok::LBracket
            }
            b']' => {
                self.bump();
                Tok::RBracket
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b'.' => {
                self.bump();
                if self.peek() == Some(b'.') {
                    self.bump();
                    Tok::DotDot
                } else {
                    return Err(self.error("expected '..'"));
                }
            }
            b'0'..=b'9' => {
                let mut n = String::new();
                while let Some(d) = self.peek() {
                    if d.is_ascii_digit() {
                        n.push(d as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Number(n.parse().map_err(|_| self.error("number too large"))?)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut s = String::new();
                while let Some(d) = self.peek() {
                    if d.is_ascii_alphanumeric() || d == b'_' || d == b'.' {
                        // allow '..' only as a separate token
                        if d == b'.' {
                            break;
                        }
                        s.push(d as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => {
                return Err(self.error(format!("unexpected character '{}'", other as char)));
            }
        };
        Ok(Some((tok, line, column)))
    }
}

pub struct Parser {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    pub fn parse(src: &str) -> Result<InputDocument, ParseError> {
        let mut lexer = Lexer::new(src);
        let mut tokens = Vec::new();
        while let Some(t) = lexer.next_token()? {
            tokens.push(t);
        }
        let mut p = Parser { tokens, pos: 0 };
        p.document()
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, message: message.into() }
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {}", what))),
        }
    }

    fn expect_number(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(format!("expected {}", what))),
        }
    }

    fn expect_tok(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", what)))
        }
    }

    fn number_list(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect_tok(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expect_number("vertex index")?);
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
        Ok(out)
    }

    fn document(&mut self) -> Result<InputDocument, ParseError> {
        let mut doc = InputDocument::default();
        while let Some(tok) = self.peek().cloned() {
            match tok {
                Tok::Ident(kw) if kw == "complex" => {
                    self.pos += 1;
                    doc.complexes.push(self.complex_decl()?);
                }
                Tok::Ident(kw) if kw == "map" => {
                    self.pos += 1;
                    doc.maps.push(self.map_decl()?);
                }
                Tok::Ident(kw) if kw == "task" => {
                    self.pos += 1;
                    if doc.task.is_some() {
                        return Err(self.error("duplicate task block"));
                    }
                    doc.task = Some(self.task_decl()?);
                }
                _ => return Err(self.error("expected 'complex', 'map' or 'task'")),
            }
        }
        Ok(doc)
    }

    fn complex_decl(&mut self) -> Result<ComplexDecl, ParseError> {
        let name = self.expect_ident("complex name")?;
        self.expect_tok(Tok::LBrace, "'{'")?;
        let mut vertices = None;
        let mut simplices = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Ident(kw)) if kw == "vertices" => {
                    self.pos += 1;
                    vertices = Some(self.expect_number("vertex count")?);
                }
                Some(Tok::Ident(kw)) if kw == "simplices" => {
                    self.pos += 1;
                    while self.peek() == Some(&Tok::LBracket) {
                        simplices.push(self.number_list()?);
                    }
                }
                _ => return Err(self.error("expected 'vertices', 'simplices' or '}'")),
            }
        }
        let vertices = vertices.ok_or_else(|| self.error("complex is missing 'vertices'"))?;
        Ok(ComplexDecl { name, vertices, simplices })
    }

    fn map_decl(&mut self) -> Result<MapDecl, ParseError> {
        let name = self.expect_ident("map name")?;
        self.expect_tok(Tok::LBrace, "'{'")?;
        let mut source = None;
        let mut target = None;
        let mut vertex_map = None;
        loop {
            match self.peek().cloned() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Ident(kw)) if kw == "source" => {
                    self.pos += 1;
                    source = Some(self.expect_ident("source complex name")?);
                }
                Some(Tok::Ident(kw)) if kw == "target" => {
                    self.pos += 1;
                    target = Some(self.expect_ident("target complex name")?);
                }
                Some(Tok::Ident(kw)) if kw == "vertex_map" => {
                    self.pos += 1;
                    vertex_map = Some(self.number_list()?);
                }
                _ => return Err(self.error("expected 'source', 'target', 'vertex_map' or '}'")),
            }
        }
        Ok(MapDecl {
            name,
            source: source.ok_or_else(|| self.error("map is missing 'source'"))?,
            target: target.ok_or_else(|| self.error("map is missing 'target'"))?,
            vertex_map: vertex_map.ok_or_else(|| self.error("map is missing 'vertex_map'"))?,
        })
    }

    fn task_decl(&mut self) -> Result<TaskDecl, ParseError> {
        self.expect_tok(Tok::LBrace, "'{'")?;
        let mut task = TaskDecl::default();
        loop {
            match self.peek().cloned() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Ident(kw)) if kw == "command" => {
                    self.pos += 1;
                    task.command = Some(self.expect_ident("command name")?);
                }
                Some(Tok::Ident(kw)) => {
                    self.pos += 1;
                    let value = self.option_value()?;
                    task.options.insert(kw, value);
                }
                _ => return Err(self.error("expected an option or '}'")),
            }
        }
        Ok(task)
    }

    /// Option values: an identifier, or a degree spec `a..b` / `a,b,c` / `a`.
    fn option_value(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Number(n)) => {
                self.pos += 1;
                let mut s = n.to_string();
                loop {
                    match self.peek() {
                        Some(Tok::DotDot) => {
                            self.pos += 1;
                            let hi = self.expect_number("range end")?;
                            s.push_str(&format!("..{}", hi));
                        }
                        Some(Tok::Comma) => {
                            self.pos += 1;
                            let next = self.expect_number("degree")?;
                            s.push_str(&format!(",{}", next));
                        }
                        _ => break,
                    }
                }
                Ok(s)
            }
            _ => Err(self.error("expected an option value")),
        }
    }
}

/// Parse a degree specification: `2`, `1..4`, or `1,2,3`.
pub fn parse_degrees(spec: &str) -> Result<Vec<isize>, String> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: isize = lo.trim().parse().map_err(|_| format!("bad degree '{}'", lo))?;
        let hi: isize = hi.trim().parse().map_err(|_| format!("bad degree '{}'", hi))?;
        if lo > hi {
            return Err(format!("empty degree range {}..{}", lo, hi));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|part| part.trim().parse().map_err(|_| format!("bad degree '{}'", part)))
        .collect()
}
