// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! OpenQASM 2.0 subset reader and writer.
//!
//! Registers are flattened in declaration order. Custom gate definitions,
//! classical control and `reset` are rejected rather than skipped.

use std::fmt::Write as _;

use ftcb_core::circuit::{Gate, GateCircuit};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unsupported gate '{name}'")]
    UnsupportedGate { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unsupported construct '{what}'")]
    UnsupportedConstruct { line: usize, col: usize, what: String },
    #[error("{line}:{col}: unsupported OpenQASM version {version} (expected 2.0)")]
    Version { line: usize, col: usize, version: String },
    #[error("{line}:{col}: {msg}")]
    Range { line: usize, col: usize, msg: String },
}

impl QasmError {
    /// True for inputs that are well formed but outside the supported gate set.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, QasmError::UnsupportedGate { .. } | QasmError::UnsupportedConstruct { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub size: usize,
    /// First flat index.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QasmProgram {
    pub circuit: GateCircuit,
    pub qregs: Vec<Register>,
    pub cregs: Vec<Register>,
}

pub fn parse_qasm(text: &str) -> Result<GateCircuit, QasmError> {
    parse_program(text).map(|p| p.circuit)
}

pub fn parse_program(text: &str) -> Result<QasmProgram, QasmError> {
    let tokens = lex(text)?;
    Parser { toks: tokens, pos: 0, qregs: Vec::new(), cregs: Vec::new(), ops: Vec::new() }.run()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, QasmError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            advance(1, &mut i, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            col += 2;
            loop {
                match chars.get(i) {
                    None => return Err(syntax(l0, c0, "unterminated block comment")),
                    Some('*') if chars.get(i + 1) == Some(&'/') => {
                        i += 2;
                        col += 2;
                        break;
                    }
                    Some('\n') => {
                        i += 1;
                        line += 1;
                        col = 1;
                    }
                    Some(_) => advance(1, &mut i, &mut col),
                }
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i, &mut col);
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                advance(1, &mut i, &mut col);
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let n = j - i;
                    advance(n, &mut i, &mut col);
                }
            }
            out.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if c == '"' {
            let start = i + 1;
            advance(1, &mut i, &mut col);
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                advance(1, &mut i, &mut col);
            }
            if chars.get(i) != Some(&'"') {
                return Err(syntax(l0, c0, "unterminated string"));
            }
            out.push(Token { tok: Tok::Str(chars[start..i].iter().collect()), line: l0, col: c0 });
            advance(1, &mut i, &mut col);
        } else {
            let sym = match (c, chars.get(i + 1)) {
                ('-', Some('>')) => "->",
                ('=', Some('=')) => "==",
                (';', _) => ";",
                (',', _) => ",",
                ('[', _) => "[",
                (']', _) => "]",
                ('(', _) => "(",
                (')', _) => ")",
                ('{', _) => "{",
                ('}', _) => "}",
                ('+', _) => "+",
                ('-', _) => "-",
                ('*', _) => "*",
                ('/', _) => "/",
                ('^', _) => "^",
                _ => return Err(syntax(l0, c0, &format!("unexpected character '{c}'"))),
            };
            advance(sym.len(), &mut i, &mut col);
            out.push(Token { tok: Tok::Sym(sym), line: l0, col: c0 });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

fn syntax(line: usize, col: usize, msg: &str) -> QasmError {
    QasmError::Syntax { line, col, msg: msg.to_string() }
}

/// Operand: a whole register or one element of it.
struct Operand {
    indices: Vec<usize>,
    whole: bool,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    qregs: Vec<Register>,
    cregs: Vec<Register>,
    ops: Vec<(Gate, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> QasmError {
        let t = self.peek();
        syntax(t.line, t.col, msg)
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<(), QasmError> {
        if self.peek().tok == Tok::Sym(s) {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(&format!("expected '{s}'")))
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        if self.peek().tok == Tok::Sym(s) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, QasmError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err_here("expected identifier")),
        }
    }

    fn integer(&mut self) -> Result<usize, QasmError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => {
                let v = s.parse::<usize>().map_err(|_| syntax(t.line, t.col, "expected integer"))?;
                self.next();
                Ok(v)
            }
            _ => Err(self.err_here("expected integer")),
        }
    }

    fn run(mut self) -> Result<QasmProgram, QasmError> {
        let mut first = true;
        loop {
            let t = self.peek().clone();
            let word = match &t.tok {
                Tok::Eof => break,
                Tok::Ident(w) => w.clone(),
                _ => return Err(self.err_here("expected statement")),
            };
            match word.as_str() {
                "OPENQASM" => {
                    self.next();
                    if !first {
                        return Err(syntax(t.line, t.col, "OPENQASM must be the first statement"));
                    }
                    let v = self.peek().clone();
                    let version = match &v.tok {
                        Tok::Num(s) => s.clone(),
                        _ => return Err(self.err_here("expected version number")),
                    };
                    self.next();
                    if version.parse::<f64>().ok() != Some(2.0) {
                        return Err(QasmError::Version { line: v.line, col: v.col, version });
                    }
                    self.expect_sym(";")?;
                }
                "include" => {
                    self.next();
                    match self.next().tok {
                        Tok::Str(_) => {}
                        _ => return Err(syntax(t.line, t.col, "expected file name after include")),
                    }
                    self.expect_sym(";")?;
                }
                "qreg" | "creg" => {
                    self.next();
                    let name = self.ident()?;
                    self.expect_sym("[")?;
                    let size = self.integer()?;
                    self.expect_sym("]")?;
                    self.expect_sym(";")?;
                    if self.qregs.iter().chain(&self.cregs).any(|r| r.name == name) {
                        return Err(syntax(t.line, t.col, &format!("register '{name}' redeclared")));
                    }
                    let regs = if word == "qreg" { &mut self.qregs } else { &mut self.cregs };
                    let offset = regs.iter().map(|r| r.size).sum();
                    regs.push(Register { name, size, offset });
                }
                "gate" | "opaque" | "if" => {
                    return Err(QasmError::UnsupportedConstruct { line: t.line, col: t.col, what: word });
                }
                "measure" => {
                    self.next();
                    let q = self.operand(true)?;
                    self.expect_sym("->")?;
                    let c = self.operand(false)?;
                    self.expect_sym(";")?;
                    if q.indices.len() != c.indices.len() {
                        return Err(QasmError::Range {
                            line: t.line,
                            col: t.col,
                            msg: "measure operands differ in size".into(),
                        });
                    }
                    for (&qubit, &clbit) in q.indices.iter().zip(&c.indices) {
                        self.ops.push((Gate::Measure { qubit, clbit }, t.line, t.col));
                    }
                }
                "barrier" => {
                    self.next();
                    let mut qs: Vec<usize> = Vec::new();
                    loop {
                        for i in self.operand(true)?.indices {
                            if !qs.contains(&i) {
                                qs.push(i);
                            }
                        }
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.expect_sym(";")?;
                    self.ops.push((Gate::Barrier(qs), t.line, t.col));
                }
                _ => self.gate_statement()?,
            }
            first = false;
        }
        let n = self.qregs.iter().map(|r| r.size).sum();
        let m = self.cregs.iter().map(|r| r.size).sum();
        let mut circuit = GateCircuit::new(n, m);
        for (g, line, col) in self.ops {
            circuit
                .push(g)
                .map_err(|e| QasmError::Range { line, col, msg: e.to_string() })?;
        }
        Ok(QasmProgram { circuit, qregs: self.qregs, cregs: self.cregs })
    }

    fn operand(&mut self, quantum: bool) -> Result<Operand, QasmError> {
        let t = self.peek().clone();
        let name = self.ident()?;
        let regs = if quantum { &self.qregs } else { &self.cregs };
        let reg = regs.iter().find(|r| r.name == name).cloned().ok_or_else(|| QasmError::Range {
            line: t.line,
            col: t.col,
            msg: format!("unknown {} register '{name}'", if quantum { "quantum" } else { "classical" }),
        })?;
        if self.eat_sym("[") {
            let it = self.peek().clone();
            let i = self.integer()?;
            self.expect_sym("]")?;
            if i >= reg.size {
                return Err(QasmError::Range {
                    line: it.line,
                    col: it.col,
                    msg: format!("index {i} out of range for {name}[{}]", reg.size),
                });
            }
            Ok(Operand { indices: vec![reg.offset + i], whole: false, line: t.line, col: t.col })
        } else {
            Ok(Operand {
                indices: (reg.offset..reg.offset + reg.size).collect(),
                whole: true,
                line: t.line,
                col: t.col,
            })
        }
    }

    fn gate_statement(&mut self) -> Result<(), QasmError> {
        let t = self.peek().clone();
        let name = self.ident()?;
        let Some((arity, nparams)) = signature(&name) else {
            return Err(QasmError::UnsupportedGate { line: t.line, col: t.col, name });
        };
        let mut params = Vec::new();
        if self.eat_sym("(") {
            if !self.eat_sym(")") {
                loop {
                    params.push(self.expr()?);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
                self.expect_sym(")")?;
            }
        }
        if params.len() != nparams {
            return Err(syntax(
                t.line,
                t.col,
                &format!("'{name}' takes {nparams} parameter(s), got {}", params.len()),
            ));
        }
        let mut args = Vec::new();
        loop {
            args.push(self.operand(true)?);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(";")?;
        if args.len() != arity {
            return Err(syntax(
                t.line,
                t.col,
                &format!("'{name}' acts on {arity} qubit(s), got {}", args.len()),
            ));
        }
        let width = args.iter().filter(|a| a.whole).map(|a| a.indices.len()).max();
        let reps = width.unwrap_or(1);
        if let Some(bad) = args.iter().find(|a| a.whole && a.indices.len() != reps) {
            return Err(QasmError::Range {
                line: bad.line,
                col: bad.col,
                msg: "broadcast registers differ in size".into(),
            });
        }
        for k in 0..reps {
            let qs: Vec<usize> = args.iter().map(|a| if a.whole { a.indices[k] } else { a.indices[0] }).collect();
            if let Some(g) = build_gate(&name, &qs, &params) {
                self.ops.push((g, t.line, t.col));
            }
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<f64, QasmError> {
        let mut v = self.term()?;
        loop {
            if self.eat_sym("+") {
                v += self.term()?;
            } else if self.eat_sym("-") {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64, QasmError> {
        let mut v = self.unary()?;
        loop {
            if self.eat_sym("*") {
                v *= self.unary()?;
            } else if self.eat_sym("/") {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, QasmError> {
        if self.eat_sym("-") {
            return Ok(-self.unary()?);
        }
        if self.eat_sym("+") {
            return self.unary();
        }
        let base = self.primary()?;
        if self.eat_sym("^") {
            return Ok(base.powf(self.unary()?));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<f64, QasmError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => {
                self.next();
                s.parse::<f64>().map_err(|_| syntax(t.line, t.col, &format!("bad number '{s}'")))
            }
            Tok::Ident(w) if w == "pi" => {
                self.next();
                Ok(std::f64::consts::PI)
            }
            Tok::Ident(w) => {
                let f: fn(f64) -> f64 = match w.as_str() {
                    "sin" => f64::sin,
                    "cos" => f64::cos,
                    "tan" => f64::tan,
                    "exp" => f64::exp,
                    "ln" => f64::ln,
                    "sqrt" => f64::sqrt,
                    _ => return Err(syntax(t.line, t.col, &format!("unknown symbol '{w}' in expression"))),
                };
                self.next();
                self.expect_sym("(")?;
                let v = self.expr()?;
                self.expect_sym(")")?;
                Ok(f(v))
            }
            Tok::Sym("(") => {
                self.next();
                let v = self.expr()?;
                self.expect_sym(")")?;
                Ok(v)
            }
            _ => Err(self.err_here("expected expression")),
        }
    }
}

/// `(qubits, params)` for supported names.
fn signature(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg" | "id" => (1, 0),
        "cx" | "CX" | "cz" | "swap" => (2, 0),
        "ccx" => (3, 0),
        "rz" | "rx" | "ry" | "u1" => (1, 1),
        "u2" => (1, 2),
        "u3" | "U" => (1, 3),
        "cu1" | "cp" => (2, 1),
        _ => return None,
    })
}

fn build_gate(name: &str, q: &[usize], p: &[f64]) -> Option<Gate> {
    Some(match name {
        "x" => Gate::X(q[0]),
        "y" => Gate::Y(q[0]),
        "z" => Gate::Z(q[0]),
        "h" => Gate::H(q[0]),
        "s" => Gate::S(q[0]),
        "sdg" => Gate::Sdg(q[0]),
        "t" => Gate::T(q[0]),
        "tdg" => Gate::Tdg(q[0]),
        "id" => return None,
        "cx" | "CX" => Gate::Cx(q[0], q[1]),
        "cz" => Gate::Cz(q[0], q[1]),
        "swap" => Gate::Swap(q[0], q[1]),
        "ccx" => Gate::Ccx(q[0], q[1], q[2]),
        "rz" => Gate::Rz(q[0], p[0]),
        "rx" => Gate::Rx(q[0], p[0]),
        "ry" => Gate::Ry(q[0], p[0]),
        "u1" => Gate::U1(q[0], p[0]),
        "u2" => Gate::U2(q[0], p[0], p[1]),
        "u3" | "U" => Gate::U3(q[0], p[0], p[1], p[2]),
        "cu1" | "cp" => Gate::CPhase(q[0], q[1], p[0]),
        _ => unreachable!("signature() admitted {name}"),
    })
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn format_angle(a: f64) -> String {
    format!("{a:.16e}")
}

pub fn serialize_qasm(c: &GateCircuit) -> String {
    serialize_with_layout(c, None)
}

/// Like [`serialize_qasm`], recording the source register of every flat
/// qubit as `// q[k] = reg[i]` comments.
pub fn serialize_with_layout(c: &GateCircuit, qregs: Option<&[Register]>) -> String {
    let mut s = String::with_capacity(32 + 24 * c.len());
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if let Some(regs) = qregs {
        let trivial = regs.len() == 1 && regs[0].name == "q";
        if !trivial {
            for r in regs {
                for i in 0..r.size {
                    let _ = writeln!(s, "// q[{}] = {}[{}]", r.offset + i, r.name, i);
                }
            }
        }
    }
    let _ = writeln!(s, "qreg q[{}];", c.num_qubits());
    if c.num_clbits() > 0 {
        let _ = writeln!(s, "creg c[{}];", c.num_clbits());
    }
    for g in c.ops() {
        write_gate(&mut s, g);
    }
    s
}

fn write_gate(s: &mut String, g: &Gate) {
    match g {
        Gate::Measure { qubit, clbit } => {
            let _ = writeln!(s, "measure q[{qubit}] -> c[{clbit}];");
        }
        Gate::Barrier(qs) if qs.is_empty() => {}
        _ => {
            s.push_str(g.kind().name());
            let params = g.params();
            if !params.is_empty() {
                s.push('(');
                for (i, p) in params.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&format_angle(*p));
                }
                s.push(')');
            }
            for (i, q) in g.qubits().enumerate() {
                s.push_str(if i == 0 { " " } else { "," });
                let _ = write!(s, "q[{q}]");
            }
            s.push_str(";\n");
        }
    }
}
