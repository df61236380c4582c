//! Recursive-descent parser. The grammar subset is LL(1), so one token of
//! lookahead and no backtracking.

use super::lex::{tokenize, Token, TokenKind};
use super::ParseError;
use crate::circuit::{Circuit, RegisterDecl};
use crate::gates::Gate;

const GATE_MNEMONICS: [&str; 11] = [
    "x", "y", "z", "h", "s", "sdg", "t", "tdg", "id", "u1", "cx",
];

struct Register {
    name: String,
    size: usize,
    offset: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    qregs: Vec<Register>,
    cregs: Vec<Register>,
    circuit_qregs: Vec<RegisterDecl>,
    circuit_cregs: Vec<RegisterDecl>,
    instructions: Vec<crate::circuit::Instruction>,
}

pub fn parse(source: &str) -> Result<Circuit, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        qregs: Vec::new(),
        cregs: Vec::new(),
        circuit_qregs: Vec::new(),
        circuit_cregs: Vec::new(),
        instructions: Vec::new(),
    };
    parser.program()?;
    let mut circuit = Circuit::with_registers(parser.circuit_qregs, parser.circuit_cregs);
    for instruction in parser.instructions {
        circuit.push(instruction);
    }
    Ok(circuit)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error(&self, token: &Token, expected: impl Into<String>) -> ParseError {
        ParseError::new(token.position, expected, token.kind.describe())
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, ParseError> {
        let token = self.advance();
        if token.kind == kind {
            Ok(token)
        } else {
            Err(self.error(&token, expected))
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<(String, Token), ParseError> {
        let token = self.advance();
        match &token.kind {
            TokenKind::Ident(name) => Ok((name.clone(), token.clone())),
            _ => Err(self.error(&token, expected)),
        }
    }

    fn expect_integer(&mut self, expected: &str) -> Result<(u64, Token), ParseError> {
        let token = self.advance();
        match token.kind {
            TokenKind::Integer(v) => Ok((v, token.clone())),
            _ => Err(self.error(&token, expected)),
        }
    }

    fn program(&mut self) -> Result<(), ParseError> {
        self.header()?;
        loop {
            let token = self.peek().clone();
            match &token.kind {
                TokenKind::Eof => return Ok(()),
                TokenKind::Ident(name) => match name.as_str() {
                    "qreg" => self.register_decl(true)?,
                    "creg" => self.register_decl(false)?,
                    "measure" => self.measure_stmt()?,
                    "barrier" => self.barrier_stmt()?,
                    "include" => {
                        return Err(self.error(&token, "at most one include, before statements"))
                    }
                    _ => self.gate_stmt()?,
                },
                _ => return Err(self.error(&token, "a statement")),
            }
        }
    }

    fn header(&mut self) -> Result<(), ParseError> {
        let token = self.advance();
        match &token.kind {
            TokenKind::Ident(word) if word == "OPENQASM" => {}
            _ => return Err(self.error(&token, "'OPENQASM'")),
        }
        let version = self.advance();
        match version.kind {
            TokenKind::Real(v) => {
                if v != 2.0 {
                    return Err(self.error(&version, "version 2.0"));
                }
            }
            _ => return Err(self.error(&version, "version 2.0")),
        }
        self.expect(TokenKind::Semicolon, "';'")?;
        if let TokenKind::Ident(word) = &self.peek().kind {
            if word == "include" {
                self.advance();
                let file = self.advance();
                match &file.kind {
                    TokenKind::Str(name) if name == "qelib1.inc" => {}
                    _ => return Err(self.error(&file, "\"qelib1.inc\"")),
                }
                self.expect(TokenKind::Semicolon, "';'")?;
            }
        }
        Ok(())
    }

    fn register_decl(&mut self, quantum: bool) -> Result<(), ParseError> {
        self.advance(); // qreg / creg
        let (name, name_token) = self.expect_ident("a register name")?;
        if self.qregs.iter().any(|r| r.name == name) || self.cregs.iter().any(|r| r.name == name) {
            return Err(self.error(&name_token, format!("a new register name, '{name}' is already declared")));
        }
        self.expect(TokenKind::LBracket, "'['")?;
        let (size, size_token) = self.expect_integer("a register size")?;
        if size == 0 {
            return Err(self.error(&size_token, "a positive register size"));
        }
        self.expect(TokenKind::RBracket, "']'")?;
        self.expect(TokenKind::Semicolon, "';'")?;
        let size = size as usize;
        if quantum {
            let offset = self.qregs.iter().map(|r| r.size).sum();
            self.qregs.push(Register { name: name.clone(), size, offset });
            self.circuit_qregs.push(RegisterDecl::new(name, size));
        } else {
            let offset = self.cregs.iter().map(|r| r.size).sum();
            self.cregs.push(Register { name: name.clone(), size, offset });
            self.circuit_cregs.push(RegisterDecl::new(name, size));
        }
        Ok(())
    }

    /// `name[i]` resolved to a flat index against the named register set.
    fn indexed_ref(&mut self, quantum: bool) -> Result<usize, ParseError> {
        let what = if quantum { "a qubit reference" } else { "a clbit reference" };
        let (name, name_token) = self.expect_ident(what)?;
        let regs = if quantum { &self.qregs } else { &self.cregs };
        let register = match regs.iter().find(|r| r.name == name) {
            Some(r) => r,
            None => {
                return Err(self.error(
                    &name_token,
                    format!("a declared {} register", if quantum { "quantum" } else { "classical" }),
                ))
            }
        };
        let (offset, size) = (register.offset, register.size);
        self.expect(TokenKind::LBracket, "'['")?;
        let (index, index_token) = self.expect_integer("an index")?;
        if index as usize >= size {
            return Err(self.error(
                &index_token,
                format!("an index below {size} for register '{name}'"),
            ));
        }
        self.expect(TokenKind::RBracket, "']'")?;
        Ok(offset + index as usize)
    }

    fn gate_stmt(&mut self) -> Result<(), ParseError> {
        let (name, name_token) = self.expect_ident("a gate statement")?;
        if !GATE_MNEMONICS.contains(&name.as_str()) {
            return Err(ParseError::new(
                name_token.position,
                "a known gate (x, y, z, h, s, sdg, t, tdg, id, u1, cx)",
                format!("unknown gate '{name}'"),
            ));
        }
        let theta = if name == "u1" {
            self.expect(TokenKind::LParen, "'('")?;
            let value = self.angle()?;
            self.expect(TokenKind::RParen, "')'")?;
            Some(value)
        } else {
            None
        };
        let gate = match Gate::from_mnemonic(&name, theta) {
            Ok(g) => g,
            Err(e) => return Err(ParseError::new(name_token.position, "a valid gate", e.to_string())),
        };
        let mut qubits = vec![self.indexed_ref(true)?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            qubits.push(self.indexed_ref(true)?);
        }
        if qubits.len() != gate.arity() {
            return Err(ParseError::new(
                name_token.position,
                format!("{} qubit argument(s) for '{name}'", gate.arity()),
                format!("{}", qubits.len()),
            ));
        }
        self.expect(TokenKind::Semicolon, "';'")?;
        self.instructions
            .push(crate::circuit::Instruction::Gate { gate, qubits });
        Ok(())
    }

    /// `real | [-] integer | [-] pi [/ k] | [-] k * pi [/ m]`
    fn angle(&mut self) -> Result<f64, ParseError> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.advance();
            true
        } else {
            false
        };
        let token = self.advance();
        let magnitude = match token.kind {
            TokenKind::Real(v) => v,
            TokenKind::Pi => self.pi_tail(std::f64::consts::PI)?,
            TokenKind::Integer(k) => {
                if self.peek().kind == TokenKind::Star {
                    self.advance();
                    let pi_token = self.advance();
                    if pi_token.kind != TokenKind::Pi {
                        return Err(self.error(&pi_token, "'pi'"));
                    }
                    self.pi_tail(k as f64 * std::f64::consts::PI)?
                } else {
                    k as f64
                }
            }
            _ => return Err(self.error(&token, "an angle (real, integer, or pi expression)")),
        };
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn pi_tail(&mut self, numerator: f64) -> Result<f64, ParseError> {
        if self.peek().kind == TokenKind::Slash {
            self.advance();
            let (denominator, token) = self.expect_integer("a divisor")?;
            if denominator == 0 {
                return Err(self.error(&token, "a non-zero divisor"));
            }
            Ok(numerator / denominator as f64)
        } else {
            Ok(numerator)
        }
    }

    fn measure_stmt(&mut self) -> Result<(), ParseError> {
        self.advance(); // measure
        let qubit = self.indexed_ref(true)?;
        self.expect(TokenKind::Arrow, "'->'")?;
        let clbit = self.indexed_ref(false)?;
        self.expect(TokenKind::Semicolon, "';'")?;
        self.instructions
            .push(crate::circuit::Instruction::Measure { qubit, clbit });
        Ok(())
    }

    fn barrier_stmt(&mut self) -> Result<(), ParseError> {
        self.advance(); // barrier
        let mut qubits = Vec::new();
        loop {
            qubits.extend(self.barrier_ref()?);
            if self.peek().kind == TokenKind::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(TokenKind::Semicolon, "';'")?;
        self.instructions
            .push(crate::circuit::Instruction::Barrier { qubits });
        Ok(())
    }

    /// Barrier argument: `name[i]` or a whole register `name`.
    fn barrier_ref(&mut self) -> Result<Vec<usize>, ParseError> {
        let (name, name_token) = self.expect_ident("a qubit or register reference")?;
        let register = match self.qregs.iter().find(|r| r.name == name) {
            Some(r) => (r.offset, r.size),
            None => return Err(self.error(&name_token, "a declared quantum register")),
        };
        if self.peek().kind == TokenKind::LBracket {
            self.advance();
            let (index, index_token) = self.expect_integer("an index")?;
            if index as usize >= register.1 {
                return Err(self.error(
                    &index_token,
                    format!("an index below {} for register '{name}'", register.1),
                ));
            }
            self.expect(TokenKind::RBracket, "']'")?;
            Ok(vec![register.0 + index as usize])
        } else {
            Ok((register.0..register.0 + register.1).collect())
        }
    }
}
