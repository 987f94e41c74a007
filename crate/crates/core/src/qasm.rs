//! Reader and writer for the QASM-like circuit text format.
//!
//! ```text
//! // comment
//! qubits 3;
//! h q[0];
//! rz(pi/4) q[1];
//! cx q[0],q[2];
//! ```
//!
//! Parameters accept decimal literals, `pi`, unary minus, `+ - * /` and
//! parentheses.

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Parses circuit text. Gates come back in source order.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut p = Parser::new(text);
    p.skip_trivia();
    p.expect_word("qubits")?;
    let width = p.integer()?;
    p.expect_char(';')?;
    let mut circuit = Circuit::new(width);
    loop {
        p.skip_trivia();
        if p.at_end() {
            break;
        }
        let (line, column) = (p.line, p.column);
        let name = p.identifier()?;
        if !GateKind::is_known_name(&name) {
            return Err(Error::UnknownGate { name, line });
        }
        let mut params = Vec::new();
        p.skip_trivia();
        if p.peek() == Some('(') {
            p.bump();
            loop {
                params.push(p.expression()?);
                p.skip_trivia();
                match p.bump() {
                    Some(',') => continue,
                    Some(')') => break,
                    _ => return Err(p.error("expected `,` or `)` in parameter list")),
                }
            }
        }
        let kind = GateKind::from_name(&name, &params).ok_or_else(|| Error::Syntax {
            line,
            column,
            message: format!("`{name}` does not take {} parameter(s)", params.len()),
        })?;
        let mut qubits = vec![p.operand()?];
        p.skip_trivia();
        while p.peek() == Some(',') {
            p.bump();
            qubits.push(p.operand()?);
            p.skip_trivia();
        }
        p.expect_char(';')?;
        if qubits.len() != kind.arity() {
            return Err(Error::Syntax {
                line,
                column,
                message: format!(
                    "`{name}` takes {} qubit(s), got {}",
                    kind.arity(),
                    qubits.len()
                ),
            });
        }
        circuit.try_push(Gate::new(kind, &qubits)?)?;
    }
    Ok(circuit)
}

/// Writes a circuit in the text format; `parse_circuit` inverts it exactly.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {};\n", c.width());
    for g in c.gates() {
        out.push_str(&g.to_string());
        out.push_str(";\n");
    }
    out
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.chars.next()?;
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(ch)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// Skips whitespace and `//` comments.
    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(ch) if ch.is_whitespace() => {
                    self.bump();
                }
                Some('/') => {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    if ahead.peek() == Some(&'/') {
                        while let Some(ch) = self.bump() {
                            if ch == '\n' {
                                break;
                            }
                        }
                    } else {
                        return;
                    }
                }
                _ => return,
            }
        }
    }

    fn identifier(&mut self) -> Result<String> {
        self.skip_trivia();
        let mut s = String::new();
        while let Some(ch) = self.peek() {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                if s.is_empty() && ch.is_ascii_digit() {
                    break;
                }
                s.push(ch);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.error("expected identifier"));
        }
        Ok(s)
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        let (line, column) = (self.line, self.column);
        let got = self.identifier()?;
        if got != word {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("expected `{word}`, found `{got}`"),
            });
        }
        Ok(())
    }

    fn expect_char(&mut self, want: char) -> Result<()> {
        self.skip_trivia();
        match self.peek() {
            Some(ch) if ch == want => {
                self.bump();
                Ok(())
            }
            Some(ch) => Err(self.error(format!("expected `{want}`, found `{ch}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_trivia();
        let mut digits = String::new();
        while let Some(ch) = self.peek().filter(char::is_ascii_digit) {
            digits.push(ch);
            self.bump();
        }
        digits
            .parse()
            .map_err(|_| self.error("expected non-negative integer"))
    }

    fn operand(&mut self) -> Result<usize> {
        let (line, column) = (self.line, self.column);
        let reg = self.identifier()?;
        if reg != "q" {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unknown register `{reg}`"),
            });
        }
        self.expect_char('[')?;
        let index = self.integer()?;
        self.expect_char(']')?;
        Ok(index)
    }

    fn expression(&mut self) -> Result<f64> {
        let mut value = self.term()?;
        loop {
            self.skip_trivia();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    value += self.term()?;
                }
                Some('-') => {
                    self.bump();
                    value -= self.term()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut value = self.factor()?;
        loop {
            self.skip_trivia();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    value *= self.factor()?;
                }
                Some('/') => {
                    self.bump();
                    value /= self.factor()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn factor(&mut self) -> Result<f64> {
        self.skip_trivia();
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.factor()?)
            }
            Some('+') => {
                self.bump();
                self.factor()
            }
            Some('(') => {
                self.bump();
                let v = self.expression()?;
                self.expect_char(')')?;
                Ok(v)
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let word = self.identifier()?;
                if word == "pi" {
                    Ok(std::f64::consts::PI)
                } else {
                    Err(self.error(format!("unknown constant `{word}`")))
                }
            }
            Some(ch) if ch.is_ascii_digit() || ch == '.' => self.number(),
            _ => Err(self.error("expected number")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let mut s = String::new();
        while let Some(ch) = self.peek() {
            let exponent_sign =
                (ch == '-' || ch == '+') && matches!(s.chars().last(), Some('e' | 'E'));
            if ch.is_ascii_digit() || ch == '.' || ch == 'e' || ch == 'E' || exponent_sign {
                s.push(ch);
                self.bump();
            } else {
                break;
            }
        }
        s.parse()
            .map_err(|_| self.error(format!("malformed number `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_gate() {
        let c = parse_circuit("qubits 1; h q[0];").unwrap();
        assert_eq!(c.width(), 1);
        assert_eq!(c.gates(), &[Gate::one(GateKind::H, 0)]);
    }

    #[test]
    fn bell_pair() {
        let c = parse_circuit("qubits 2; h q[0]; cx q[0],q[1];").unwrap();
        assert_eq!(
            c.gates(),
            &[Gate::one(GateKind::H, 0), Gate::two(GateKind::CX, 0, 1)]
        );
    }

    #[test]
    fn duplicate_operands() {
        let err = parse_circuit("qubits 2; cx q[0],q[0];").unwrap_err();
        assert!(matches!(err, Error::DuplicateQubit { qubit: 0, .. }), "{err}");
    }

    #[test]
    fn unknown_gate_and_range() {
        assert!(matches!(
            parse_circuit("qubits 2;\nccx q[0],q[1];"),
            Err(Error::UnknownGate { line: 2, .. })
        ));
        assert!(matches!(
            parse_circuit("qubits 2; h q[2];"),
            Err(Error::QubitOutOfRange { index: 2, width: 2 })
        ));
    }

    #[test]
    fn syntax_error_position() {
        match parse_circuit("qubits 2;\nh q[0]\nx q[1];") {
            Err(Error::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (3, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_expressions() {
        let text = "// header\nqubits 2; // two\nrz(-pi/2) q[1];\nu3(pi, 2*(0.5+0.25), 1e-3) q[0];\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.gates()[0].kind, GateKind::RZ(-std::f64::consts::FRAC_PI_2));
        assert_eq!(
            c.gates()[1].kind,
            GateKind::U3(std::f64::consts::PI, 1.5, 1e-3)
        );
    }

    #[test]
    fn serialize_examples() {
        let mut c = Circuit::new(1);
        c.h(0);
        assert_eq!(serialize_circuit(&c), "qubits 1;\nh q[0];\n");
        assert_eq!(serialize_circuit(&Circuit::new(3)), "qubits 3;\n");
    }

    fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
        let angle = -10.0f64..10.0;
        let one = (
            prop_oneof![
                Just(GateKind::H),
                Just(GateKind::X),
                Just(GateKind::Y),
                Just(GateKind::Z),
                Just(GateKind::S),
                Just(GateKind::Sdg),
                Just(GateKind::T),
                Just(GateKind::Tdg),
                angle.clone().prop_map(GateKind::RX),
                angle.clone().prop_map(GateKind::RY),
                angle.clone().prop_map(GateKind::RZ),
                angle.clone().prop_map(GateKind::U1),
                (angle.clone(), angle.clone(), angle).prop_map(|(a, b, c)| GateKind::U3(a, b, c)),
            ],
            0..width,
        )
            .prop_map(|(k, q)| Gate::one(k, q));
        let two = (
            prop_oneof![Just(GateKind::CX), Just(GateKind::CZ), Just(GateKind::Swap)],
            0..width,
            1..width,
        )
            .prop_map(move |(k, a, off)| Gate::two(k, a, (a + off) % width));
        prop_oneof![one, two]
    }

    proptest! {
        #[test]
        fn round_trip(gates in proptest::collection::vec(arb_gate(4), 0..30)) {
            let c = Circuit::from_gates(4, gates).unwrap();
            let back = parse_circuit(&serialize_circuit(&c)).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
