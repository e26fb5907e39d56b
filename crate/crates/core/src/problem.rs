//! Initial-value problems `y'' + (k/x) y' + f(x, y) = 0`, `y(0) = A`,
//! `y'(0) = B`, the text file format that describes them, and the builtin
//! registry.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::expr::{format_expr, parse_expr, Expr, ParseError};
use crate::series::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("k = {k} is nonzero but B = {b}; a singular problem needs zero initial slope")]
    InconsistentSlope { k: String, b: String },
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IvpProblem {
    name: String,
    k: Rational,
    f: Expr,
    a: Rational,
    b: Rational,
}

impl IvpProblem {
    pub fn new(
        name: impl Into<String>,
        k: Rational,
        f: Expr,
        a: Rational,
        b: Rational,
    ) -> Result<Self, ProblemError> {
        if !k.is_zero() && !b.is_zero() {
            return Err(ProblemError::InconsistentSlope {
                k: format_rational(&k),
                b: format_rational(&b),
            });
        }
        Ok(IvpProblem {
            name: name.into(),
            k,
            f,
            a,
            b,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Singularity strength in `p(x) = k/x`.
    pub fn k(&self) -> &Rational {
        &self.k
    }

    /// The full `f(x, y) = F(x, y) − g(x)`.
    pub fn f(&self) -> &Expr {
        &self.f
    }

    /// `y(0)`.
    pub fn initial_value(&self) -> &Rational {
        &self.a
    }

    /// `y'(0)`.
    pub fn initial_slope(&self) -> &Rational {
        &self.b
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Renders the problem in the file format read by [`parse_problem_file`].
    pub fn to_file_string(&self) -> String {
        format!(
            "name = {}\nk = {}\nf = {}\nA = {}\nB = {}\n",
            self.name,
            format_rational(&self.k),
            format_expr(&self.f),
            format_rational(&self.a),
            format_rational(&self.b),
        )
    }
}

impl fmt::Display for IvpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: y'' + ({}/x) y' + {} = 0, y(0) = {}, y'(0) = {}",
            self.name,
            format_rational(&self.k),
            self.f,
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

const KEYS: [&str; 5] = ["name", "k", "f", "A", "B"];

/// Reads a problem from `key = value` lines. Keys are `name`, `k`, `f`,
/// `A`, `B`, all required and each given once; `#` starts a comment.
pub fn parse_problem_file(text: &str) -> Result<IvpProblem, ProblemError> {
    let mut values: BTreeMap<&'static str, (usize, &str)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ProblemError::Syntax {
                line,
                message: "expected `key = value`".into(),
            })?;
        let key = key.trim();
        let key = KEYS
            .iter()
            .copied()
            .find(|k| *k == key)
            .ok_or_else(|| ProblemError::Syntax {
                line,
                message: format!("unknown key `{key}`"),
            })?;
        if values.insert(key, (line, value.trim())).is_some() {
            return Err(ProblemError::Syntax {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
    }

    let get = |key: &'static str| {
        values
            .get(key)
            .copied()
            .ok_or(ProblemError::MissingKey(key))
    };
    let constant = |key: &'static str| -> Result<Rational, ProblemError> {
        let (line, text) = get(key)?;
        let e = parse_expr(text).map_err(|source| ProblemError::Parse { line, source })?;
        e.const_value().ok_or_else(|| ProblemError::Syntax {
            line,
            message: format!("`{key}` must be a rational constant"),
        })
    };

    let (_, name) = get("name")?;
    if name.is_empty() {
        return Err(ProblemError::Syntax {
            line: get("name")?.0,
            message: "empty name".into(),
        });
    }
    let k = constant("k")?;
    let (f_line, f_text) = get("f")?;
    let f = parse_expr(f_text).map_err(|source| ProblemError::Parse {
        line: f_line,
        source,
    })?;
    let a = constant("A")?;
    let b = constant("B")?;
    IvpProblem::new(name, k, f, a, b)
}

/// Builtin names in registry order.
pub const BUILTIN_NAMES: [&str; 5] = ["ex1_corrected", "ex1_literal", "ex2", "ex3", "ex4"];

fn builtin_source(name: &str) -> Option<(i64, &'static str)> {
    Some(match name {
        // right side x^5 - x^4 + 44x^2 - 30x, which x^4 - x^3 solves
        "ex1_corrected" => (8, "x*y - (x^5 - x^4 + 44*x^2 - 30*x)"),
        // right side x^5 + 44x^2 - 30x, which x^4 - x^3 does not solve
        "ex1_literal" => (8, "x*y - (x^5 + 44*x^2 - 30*x)"),
        "ex2" => (2, "y - (6 + 12*x + x^2 + x^3)"),
        "ex3" => (2, "y^3 - (6 + x^6)"),
        "ex4" => (2, "exp(x*y^2) - (x + 1)"),
        _ => return None,
    })
}

/// Looks up a builtin problem; `ex1` is an alias for `ex1_corrected`.
pub fn builtin(name: &str) -> Result<IvpProblem, ProblemError> {
    let canonical = if name == "ex1" { "ex1_corrected" } else { name };
    let (k, f) =
        builtin_source(canonical).ok_or_else(|| ProblemError::UnknownProblem(name.to_string()))?;
    let f = parse_expr(f).expect("builtin expressions parse");
    IvpProblem::new(canonical, int(k), f, int(0), int(0))
}

/// All builtins, keyed by name.
#[derive(Debug, Clone)]
pub struct ProblemRegistry {
    problems: BTreeMap<String, IvpProblem>,
}

impl ProblemRegistry {
    pub fn builtins() -> Self {
        let problems = BUILTIN_NAMES
            .iter()
            .map(|n| (n.to_string(), builtin(n).expect("registered builtin")))
            .collect();
        ProblemRegistry { problems }
    }

    pub fn get(&self, name: &str) -> Result<&IvpProblem, ProblemError> {
        let canonical = if name == "ex1" { "ex1_corrected" } else { name };
        self.problems
            .get(canonical)
            .ok_or_else(|| ProblemError::UnknownProblem(name.to_string()))
    }

    /// Replaces (or adds) an entry, keeping `name` as its key.
    pub fn insert(&mut self, name: &str, problem: IvpProblem) {
        self.problems
            .insert(name.to_string(), problem.with_name(name));
    }

    pub fn iter(&self) -> impl Iterator<Item = &IvpProblem> {
        self.problems.values()
    }
}

impl Default for ProblemRegistry {
    fn default() -> Self {
        Self::builtins()
    }
}
