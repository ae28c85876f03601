use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("clause {clause}: negative literal {literal} (only monotone formulas are supported)")]
    NegativeLiteral { clause: usize, literal: i64 },
    #[error("clause {clause}: expected exactly 3 literals, found {width}")]
    ClauseWidth { clause: usize, width: usize },
    #[error("clause {clause}: variable {var} repeated")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("clause {clause}: variable {var} out of range 1..={num_vars}")]
    VariableOutOfRange { clause: usize, var: usize, num_vars: usize },
}

/// A monotone NAE-3SAT instance: every clause is three distinct positive
/// variables (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, CnfError> {
        for (j, c) in clauses.iter().enumerate() {
            for (k, &v) in c.iter().enumerate() {
                if v == 0 || v > num_vars {
                    return Err(CnfError::VariableOutOfRange { clause: j + 1, var: v, num_vars });
                }
                if c[..k].contains(&v) {
                    return Err(CnfError::RepeatedVariable { clause: j + 1, var: v });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// The seven lines of the Fano plane; not NAE-satisfiable.
    pub fn fano() -> Self {
        CnfFormula::new(
            7,
            vec![[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]],
        )
        .unwrap()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Parses DIMACS CNF restricted to monotone width-3 clauses. Clauses may
    /// span lines and are terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses: Vec<[usize; 3]> = Vec::new();
        let mut current: Vec<(usize, i64)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('c') || l.starts_with('%') {
                continue;
            }
            if l.starts_with('p') {
                if header.is_some() {
                    return Err(CnfError::Parse { line, msg: "duplicate header".into() });
                }
                let toks: Vec<&str> = l.split_whitespace().collect();
                let bad = || CnfError::Parse { line, msg: "expected \"p cnf <vars> <clauses>\"".into() };
                if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                    return Err(bad());
                }
                let v = toks[2].parse().map_err(|_| bad())?;
                let c = toks[3].parse().map_err(|_| bad())?;
                header = Some((v, c, line));
                continue;
            }
            let Some((num_vars, _, _)) = header else {
                return Err(CnfError::Parse { line, msg: "clause before \"p cnf\" header".into() });
            };
            for tok in l.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| CnfError::Parse {
                    line,
                    msg: format!("not an integer literal: {tok:?}"),
                })?;
                if lit != 0 {
                    current.push((line, lit));
                    continue;
                }
                let clause = clauses.len() + 1;
                if let Some(&(_, neg)) = current.iter().find(|(_, l)| *l < 0) {
                    return Err(CnfError::NegativeLiteral { clause, literal: neg });
                }
                if current.len() != 3 {
                    return Err(CnfError::ClauseWidth { clause, width: current.len() });
                }
                let c = [current[0].1 as usize, current[1].1 as usize, current[2].1 as usize];
                for (k, &v) in c.iter().enumerate() {
                    if v > num_vars {
                        return Err(CnfError::VariableOutOfRange { clause, var: v, num_vars });
                    }
                    if c[..k].contains(&v) {
                        return Err(CnfError::RepeatedVariable { clause, var: v });
                    }
                }
                clauses.push(c);
                current.clear();
            }
        }
        let Some((num_vars, declared, hline)) = header else {
            return Err(CnfError::Parse { line: 0, msg: "missing \"p cnf\" header".into() });
        };
        if let Some(&(line, _)) = current.first() {
            return Err(CnfError::Parse { line, msg: "clause not terminated by 0".into() });
        }
        if clauses.len() != declared {
            return Err(CnfError::Parse {
                line: hline,
                msg: format!("header declares {declared} clauses but {} were given", clauses.len()),
            });
        }
        CnfFormula::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            writeln!(out, "{} {} {} 0", c[0], c[1], c[2]).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_clause() {
        let f = CnfFormula::parse_dimacs("c hello\np cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[[1, 2, 3]]);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = CnfFormula::parse_dimacs("p cnf 4 2\n1 2\n3 0 2 3 4 0").unwrap();
        assert_eq!(f.clauses(), &[[1, 2, 3], [2, 3, 4]]);
    }

    #[test]
    fn rejects_non_monotone_and_malformed() {
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 3 1\n1 -2 3 0"),
            Err(CnfError::NegativeLiteral { literal: -2, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 3 1\n1 1 2 0"),
            Err(CnfError::RepeatedVariable { var: 1, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 3 1\n1 2 0"),
            Err(CnfError::ClauseWidth { width: 2, .. })
        ));
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 3 1\n1 2 4 0"),
            Err(CnfError::VariableOutOfRange { var: 4, .. })
        ));
        assert!(matches!(CnfFormula::parse_dimacs("1 2 3 0"), Err(CnfError::Parse { line: 1, .. })));
        assert!(matches!(CnfFormula::parse_dimacs("p cnf 3 2\n1 2 3 0"), Err(CnfError::Parse { .. })));
        assert!(matches!(CnfFormula::parse_dimacs("p cnf 3 1\n1 2 3"), Err(CnfError::Parse { .. })));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = CnfFormula::fano();
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
