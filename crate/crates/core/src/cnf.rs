//! CNF formulas, DIMACS parsing, and model verification.
//!
//! Variables are positive `u32` indices starting at 1, matching DIMACS.
//! A [`Literal`] packs a variable and a polarity into a single word; a
//! [`Clause`] is a disjunction of literals, deduplicated on construction and
//! flagged when tautological; a [`Formula`] is a conjunction of clauses over
//! a declared variable count.

use std::fmt;

use thiserror::Error;

/// Variable index, 1-based as in DIMACS. Index 0 is never a valid variable.
pub type Var = u32;

/// Largest representable variable index: literals pack `var << 1 | sign`
/// into a `u32` and convert to signed DIMACS integers.
pub const MAX_VAR: Var = (1 << 31) - 1;

/// A boolean literal: a variable together with a polarity.
///
/// Encoded as `var << 1 | negated` so literals index arrays directly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        debug_assert!(var >= 1, "variables are 1-based");
        debug_assert!(var <= MAX_VAR);
        Literal(var << 1 | u32::from(!positive))
    }

    /// Builds a literal from a signed DIMACS integer (nonzero).
    pub fn from_dimacs(lit: i32) -> Literal {
        debug_assert!(lit != 0);
        Literal::new(lit.unsigned_abs(), lit > 0)
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var() as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Dense index usable for watch lists and literal-keyed arrays.
    pub fn code(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;
    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals.
///
/// Duplicate literals are removed on construction, keeping first occurrences
/// in order. A clause containing both `l` and `!l` is kept but flagged as a
/// tautology; the solver skips such clauses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    literals: Vec<Literal>,
    tautology: bool,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Clause {
        let mut seen = std::collections::HashSet::with_capacity(literals.len());
        let mut tautology = false;
        literals.retain(|&l| {
            if !seen.insert(l) {
                return false;
            }
            if seen.contains(&!l) {
                tautology = true;
            }
            true
        });
        Clause { literals, tautology }
    }

    pub fn from_dimacs(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l)).collect())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.tautology
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.literals.iter()
    }
}

/// A CNF formula: a declared variable count plus a conjunction of clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    num_vars: Var,
    clauses: Vec<Clause>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("variable {var} exceeds declared {declared}")]
    VariableOutOfRange { var: Var, declared: Var },
}

impl Formula {
    pub fn new(num_vars: Var, clauses: Vec<Clause>) -> Result<Formula, FormulaError> {
        for clause in &clauses {
            for lit in clause.iter() {
                if lit.var() > num_vars || num_vars > MAX_VAR {
                    return Err(FormulaError::VariableOutOfRange {
                        var: lit.var(),
                        declared: num_vars,
                    });
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> Var {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// True when the input contained an empty clause, which makes the formula
    /// unsatisfiable before any search.
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Serializes back to DIMACS text, one zero-terminated clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p cnf {} {}\n", self.num_vars, self.clauses.len()));
        for clause in &self.clauses {
            for lit in clause.iter() {
                out.push_str(&format!("{} ", lit.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// A total assignment over a formula's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>, // index 0 unused
}

impl Model {
    /// Builds a model from per-variable values, `values[0]` for variable 1.
    pub fn from_values(values: Vec<bool>) -> Model {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(false);
        v.extend(values);
        Model { values: v }
    }

    pub fn num_vars(&self) -> Var {
        (self.values.len() - 1) as Var
    }

    pub fn value(&self, var: Var) -> bool {
        self.values[var as usize]
    }

    pub fn satisfies(&self, lit: Literal) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    /// DIMACS-style signed literals for `v` lines.
    pub fn to_dimacs_lits(&self) -> Vec<i32> {
        (1..=self.num_vars())
            .map(|v| if self.value(v) { v as i32 } else { -(v as i32) })
            .collect()
    }
}

/// True iff every clause of `f` contains at least one literal satisfied by `m`.
pub fn check_model(f: &Formula, m: &Model) -> bool {
    f.clauses()
        .iter()
        .all(|c| c.iter().any(|&lit| m.satisfies(lit)))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: clause data before `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: variable {var} exceeds declared {declared}")]
    VariableOutOfRange { line: usize, var: Var, declared: Var },
    #[error("line {line}: clause missing terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
}

/// A tolerated irregularity found while parsing, e.g. a clause-count mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// Parses DIMACS CNF text. See [`parse_dimacs_with_warnings`] for the
/// variant that reports tolerated irregularities.
pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    parse_dimacs_with_warnings(text).map(|(f, _)| f)
}

/// Parses DIMACS CNF text, returning the formula plus warnings.
///
/// Comment lines start with `c`. Clauses may span lines; each ends with `0`.
/// A clause count differing from the header is tolerated with a warning. A
/// `%` token ends the input (SATLIB convention).
pub fn parse_dimacs_with_warnings(
    text: &str,
) -> Result<(Formula, Vec<ParseWarning>), ParseError> {
    let mut header: Option<(Var, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut warnings = Vec::new();
    let mut last_line = 1;

    'lines: for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line: line_no });
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(ParseError::MalformedHeader {
                    line: line_no,
                    detail: format!("expected `p cnf <vars> <clauses>`, got `{line}`"),
                });
            }
            let vars: Var = fields[1]
                .parse()
                .ok()
                .filter(|&v| v <= MAX_VAR)
                .ok_or_else(|| ParseError::MalformedHeader {
                    line: line_no,
                    detail: format!("bad variable count `{}`", fields[1]),
                })?;
            let count: usize = fields[2].parse().map_err(|_| ParseError::MalformedHeader {
                line: line_no,
                detail: format!("bad clause count `{}`", fields[2]),
            })?;
            header = Some((vars, count));
            continue;
        }
        for token in line.split_whitespace() {
            if token == "%" {
                // SATLIB files end with a `%` marker.
                break 'lines;
            }
            let lit: i32 = token.parse().map_err(|_| ParseError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            let Some((declared, _)) = header else {
                return Err(ParseError::MissingHeader { line: line_no });
            };
            if lit == 0 {
                clauses.push(Clause::from_dimacs(&current));
                current.clear();
            } else {
                let var = lit.unsigned_abs();
                if var > declared {
                    return Err(ParseError::VariableOutOfRange {
                        line: line_no,
                        var,
                        declared,
                    });
                }
                current.push(lit);
            }
        }
    }

    if !current.is_empty() {
        return Err(ParseError::MissingTerminator { line: last_line });
    }
    let (num_vars, declared_clauses) = header.ok_or(ParseError::MalformedHeader {
        line: last_line,
        detail: "no `p cnf` header found".to_string(),
    })?;
    if clauses.len() != declared_clauses {
        warnings.push(ParseWarning {
            line: last_line,
            message: format!(
                "header declares {} clauses but {} were read",
                declared_clauses,
                clauses.len()
            ),
        });
    }
    let formula = Formula { num_vars, clauses };
    Ok((formula, warnings))
}
