//! Permutation file format.
//!
//! ```text
//! PERM <k> <n>
//! x1 x2 ... xn -> y1 y2 ... yn
//! ```
//!
//! Inputs that are not listed map to themselves. `#` starts a comment.
//! [`serialize_perm`] always writes every input, in index order.

use std::fmt::Write as _;

use zksynth::{Error, Modulus, PermTable, Result, SizeGuard, Word};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_word(line: usize, text: &str, k: Modulus, n: usize) -> Result<Word> {
    let coords = text
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| parse_err(line, format!("invalid coordinate '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    Word::new(coords, k, n).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_perm(text: &str, guard: SizeGuard) -> Result<PermTable> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    });
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing PERM header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "PERM" {
        return Err(parse_err(hline, "expected header 'PERM <k> <n>'"));
    }
    let k: u32 = toks[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid modulus '{}'", toks[1])))?;
    let k = Modulus::new(k).map_err(|e| parse_err(hline, e.to_string()))?;
    let n: usize = toks[2]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid wire count '{}'", toks[2])))?;
    if n == 0 {
        return Err(parse_err(hline, "wire count must be at least 1"));
    }
    let len = guard.table_len(k, n)?;

    let mut table: Vec<usize> = (0..len).collect();
    let mut defined_on: Vec<Option<usize>> = vec![None; len];
    let mut image_line: Vec<Option<usize>> = vec![None; len];
    for (line, body) in lines {
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| parse_err(line, "expected 'x1 ... xn -> y1 ... yn'"))?;
        let x = parse_word(line, lhs, k, n)?.encode(k);
        let y = parse_word(line, rhs, k, n)?.encode(k);
        if let Some(prev) = defined_on[x] {
            return Err(parse_err(
                line,
                format!("input already mapped on line {prev}"),
            ));
        }
        if let Some(prev) = image_line[y] {
            return Err(parse_err(
                line,
                format!("image already used on line {prev}"),
            ));
        }
        defined_on[x] = Some(line);
        image_line[y] = Some(line);
        table[x] = y;
    }
    // Listed images can still collide with identity defaults.
    PermTable::from_table(k, n, table).map_err(|e| match e {
        Error::InvalidPermutation { image, first, second } => {
            let word = |i| Word::decode(i, k, n).map(|w| w.to_string()).unwrap_or_default();
            let line = image_line[image].unwrap_or(hline);
            parse_err(
                line,
                format!(
                    "not a bijection: [{}] is the image of both [{}] and [{}]",
                    word(image),
                    word(first),
                    word(second)
                ),
            )
        }
        other => other,
    })
}

pub fn serialize_perm(p: &PermTable) -> String {
    let (k, n) = (p.k(), p.n());
    let mut out = String::new();
    writeln!(out, "PERM {k} {n}").unwrap();
    for x in 0..p.len() {
        let from = Word::decode(x, k, n).expect("index in range");
        let to = Word::decode(p.apply(x), k, n).expect("index in range");
        writeln!(out, "{from} -> {to}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn sparse_input_defaults_to_identity() {
        let p = parse_perm("PERM 3 1\n0 -> 1\n1 -> 0\n", guard()).unwrap();
        assert_eq!(p.as_slice(), &[1, 0, 2]);
        let id = parse_perm("# nothing\nPERM 5 2\n", guard()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn canonical_dump() {
        let p = parse_perm("PERM 3 1\n0 -> 1 # swap\n1 -> 0\n", guard()).unwrap();
        assert_eq!(serialize_perm(&p), "PERM 3 1\n0 -> 1\n1 -> 0\n2 -> 2\n");
        let q = parse_perm(&serialize_perm(&p), guard()).unwrap();
        assert_eq!(p, q);
        let r = PermTable::random(Modulus::new(3).unwrap(), 2, 8, guard()).unwrap();
        assert_eq!(parse_perm(&serialize_perm(&r), guard()).unwrap(), r);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("PERM 3 1\n0 -> 1\n0 -> 2\n", 3),
            ("PERM 3 1\n0 -> 1\n2 -> 1\n", 3),
            ("PERM 3 1\n0 -> 1\n", 2),
            ("PERM 3 2\n0 -> 1 1\n", 2),
            ("PERM 3 1\n0 1\n", 2),
            ("PERM 3 1\n3 -> 0\n", 2),
            ("PERM 3\n", 1),
            ("CIRCUIT 3 1\n", 1),
            ("PERM 1 1\n", 1),
        ];
        for (text, want) in cases {
            match parse_perm(text, guard()) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_perm("PERM 10 9\n", guard()),
            Err(Error::SizeGuard { .. })
        ));
    }
}
