//! Line-oriented circuit text format.
//!
//! ```text
//! CIRCUIT <k> <n>
//! D i j | U i j | H a i | V i | S i | CNS c1,c2,...,cm t | SWAP i j
//! ```
//!
//! `#` starts a comment. Serialization uses single spaces and a trailing
//! newline on every line.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::residue::Modulus;

pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "CIRCUIT {} {}", c.k(), c.n()).unwrap();
    for g in c.gates() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Content lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses a `<KEYWORD> <k> <n>` header line.
pub(crate) fn parse_header(line: usize, text: &str, keyword: &str) -> Result<(Modulus, usize)> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != keyword {
        return Err(parse_err(line, format!("expected header '{keyword} <k> <n>'")));
    }
    let k = Modulus::new(parse_number(line, toks[1], "modulus")?)
        .map_err(|e| parse_err(line, e.to_string()))?;
    let n: usize = parse_number(line, toks[2], "wire count")?;
    if n == 0 {
        return Err(parse_err(line, "wire count must be at least 1"));
    }
    Ok((k, n))
}

fn parse_gate(line: usize, text: &str) -> Result<Gate> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let arity = |want: usize| {
        if toks.len() != want + 1 {
            Err(parse_err(
                line,
                format!("{} takes {want} operands, got {}", toks[0], toks.len() - 1),
            ))
        } else {
            Ok(())
        }
    };
    let wire = |tok: &str| parse_number::<usize>(line, tok, "wire");
    let gate = match toks[0] {
        "D" => {
            arity(2)?;
            Gate::D(wire(toks[1])?, wire(toks[2])?)
        }
        "U" => {
            arity(2)?;
            Gate::U(wire(toks[1])?, wire(toks[2])?)
        }
        "SWAP" => {
            arity(2)?;
            Gate::Swap(wire(toks[1])?, wire(toks[2])?)
        }
        "H" => {
            arity(2)?;
            Gate::H {
                coeff: parse_number(line, toks[1], "coefficient")?,
                wire: wire(toks[2])?,
            }
        }
        "V" => {
            arity(1)?;
            Gate::V(wire(toks[1])?)
        }
        "S" => {
            arity(1)?;
            Gate::S(wire(toks[1])?)
        }
        "CNS" => {
            arity(2)?;
            let controls = toks[1]
                .split(',')
                .map(wire)
                .collect::<Result<Vec<_>>>()?;
            Gate::Cns {
                controls,
                target: wire(toks[2])?,
            }
        }
        other => return Err(parse_err(line, format!("unknown gate '{other}'"))),
    };
    Ok(gate)
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing CIRCUIT header"))?;
    let (k, n) = parse_header(line, header, "CIRCUIT")?;
    let mut circuit = Circuit::new(k, n);
    for (line, text) in lines {
        let gate = parse_gate(line, text)?;
        circuit
            .push(gate)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random_circuit;
    use proptest::prelude::*;

    #[test]
    fn round_trip_simple() {
        let text = "CIRCUIT 3 2\nD 0 1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.gates(), &[Gate::D(0, 1)]);
        assert_eq!(serialize_circuit(&c), text);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# header next\n  CIRCUIT   5 3  # trailing\n\nV 2\n  H 2 1 \nCNS 1,2 0 # ctl\nSWAP 0 2\nU 1 0\nS 1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(
            serialize_circuit(&c),
            "CIRCUIT 5 3\nV 2\nH 2 1\nCNS 1,2 0\nSWAP 0 2\nU 1 0\nS 1\n"
        );
    }

    #[test]
    fn cns_parses_controls() {
        let c = parse_circuit("CIRCUIT 3 3\nCNS 1,2 0\n").unwrap();
        assert_eq!(
            c.gates()[0],
            Gate::Cns {
                controls: vec![1, 2],
                target: 0
            }
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_circuit("CIRCUIT 9 1\nH 3 0\n").unwrap_err();
        match err {
            Error::Parse { line, reason } => {
                assert_eq!(line, 2);
                assert!(reason.contains("not a unit"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
        let cases = [
            ("CIRCUIT 3 2\nX 0\n", 2),
            ("CIRCUIT 3 2\n\nD 0 2\n", 3),
            ("CIRCUIT 3 2\nD 0 0\n", 2),
            ("CIRCUIT 3 2\nV\n", 2),
            ("CIRCUIT 3 2\nCNS  1\n", 2),
            ("CIRCUIT 3 2\nCNS 0,x 1\n", 2),
            ("CIRCUIT 1 2\n", 1),
            ("CIRCUIT 3\n", 1),
            ("D 0 1\n", 1),
            ("", 1),
        ];
        for (text, want) in cases {
            match parse_circuit(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(seed in any::<u64>(), n in 1usize..5, k in 2u32..12) {
            let c = random_circuit(Modulus::new(k).unwrap(), n, 30, seed);
            let text = serialize_circuit(&c);
            let back = parse_circuit(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(serialize_circuit(&back), text);
        }
    }
}
