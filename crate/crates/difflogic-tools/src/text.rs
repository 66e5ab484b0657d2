//! Line-oriented text formats for instances, models, tree decompositions and
//! formulas.
//!
//! Instance files:
//!
//! ```text
//! var x y z
//! con x - y in [0,3] | x - z in [0,6)
//! con z - y <= 2          # sugar for z - y in (-inf,2]
//! ```
//!
//! Printing always uses the `in <interval>` form, one `var` line and one
//! `con` line per constraint.

use std::collections::HashMap;
use std::fmt::Write as _;

use difflogic::formula::Formula;
use difflogic::instance::format_rational;
use difflogic::structure::TreeDecomposition;
use difflogic::{Assignment, Atom, Bound, Constraint, Instance, Interval, Rational, VarId};

/// A syntax or name-resolution error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum PrintError {
    #[error("the empty constraint has no text form")]
    EmptyConstraint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Newline,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 14] = ["<=", ">=", "<", ">", "=", "-", "+", "|", "[", "]", "(", ")", ",", "/"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: line_no, col });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let v = digits.parse::<i64>().map_err(|_| ParseError { line: line_no, col, msg: format!("integer {digits} out of range") })?;
                out.push(Token { tok: Tok::Int(v), line: line_no, col });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line: line_no, col });
                    i += s.len();
                }
                None => return Err(ParseError { line: line_no, col, msg: format!("unexpected character {c:?}") }),
            }
        }
        out.push(Token { tok: Tok::Newline, line: line_no, col: chars.len() + 1 });
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Result<Cursor, ParseError> {
        Ok(Cursor { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self.toks.last().map_or((1, 1), |t| (t.line + 1, 1)),
        };
        Err(ParseError { line, col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Newline) => "end of line".into(),
            Some(Tok::Ident(s)) => format!("{s:?}"),
            Some(Tok::Int(v)) => format!("{v}"),
            Some(Tok::Sym(s)) => format!("{s:?}"),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {s:?}, found {}", self.describe()))
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(s));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn uint(&mut self, what: &str) -> Result<i64, ParseError> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym("-");
        if !neg {
            self.eat_sym("+");
        }
        let v = self.uint("an integer")?;
        Ok(if neg { -v } else { v })
    }

    fn at_line_end(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Newline))
    }

    fn end_line(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(Tok::Newline) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected end of line, found {}", self.describe())),
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.pos += 1;
        }
    }

    fn bound(&mut self) -> Result<Bound, ParseError> {
        let sign = if self.eat_sym("-") {
            -1
        } else {
            self.eat_sym("+");
            1
        };
        match self.peek() {
            Some(Tok::Ident(s)) if s == "inf" => {
                self.pos += 1;
                Ok(if sign < 0 { Bound::NegInf } else { Bound::PosInf })
            }
            _ => Ok(Bound::Finite(sign * self.uint("an integer or inf")?)),
        }
    }

    fn interval(&mut self) -> Result<Interval, ParseError> {
        let start = self.pos;
        let lo_open = match self.next() {
            Some(Tok::Sym("[")) => false,
            Some(Tok::Sym("(")) => true,
            _ => {
                self.pos = start;
                return self.err(format!("expected an interval, found {}", self.describe()));
            }
        };
        let lo = self.bound()?;
        self.sym(",")?;
        let hi = self.bound()?;
        let hi_open = match self.peek() {
            Some(Tok::Sym("]")) => false,
            Some(Tok::Sym(")")) => true,
            _ => return self.err(format!("expected \"]\" or \")\", found {}", self.describe())),
        };
        self.pos += 1;
        Interval::new(lo, lo_open, hi, hi_open).or_else(|e| {
            self.pos = start;
            self.err(e.to_string())
        })
    }

    /// `<x> - <y> in <interval>` or `<x> - <y> <op> <int>`.
    fn atom(&mut self, names: &Names) -> Result<Atom, ParseError> {
        let x = self.var(names)?;
        self.sym("-")?;
        let y = self.var(names)?;
        let iv = match self.peek() {
            Some(Tok::Ident(s)) if s == "in" => {
                self.pos += 1;
                self.interval()?
            }
            Some(Tok::Sym(op @ ("<=" | "<" | "=" | ">=" | ">"))) => {
                let op = *op;
                self.pos += 1;
                let c = self.signed()?;
                match op {
                    "<=" => Interval::at_most(c),
                    "<" => Interval::below(c),
                    "=" => Interval::point(c),
                    ">=" => Interval::at_least(c),
                    _ => Interval::above(c),
                }
            }
            _ => return self.err(format!("expected \"in\" or a comparison, found {}", self.describe())),
        };
        Ok(Atom::new(x, y, iv))
    }

    fn var(&mut self, names: &Names) -> Result<VarId, ParseError> {
        let save = self.pos;
        let name = self.ident("a variable name")?;
        match names.ids.get(&name) {
            Some(&v) => Ok(v),
            None => {
                self.pos = save;
                self.err(format!("undeclared variable {name}"))
            }
        }
    }

    /// Names after a `var` keyword, up to the end of the line.
    fn declare(&mut self, names: &mut Names) -> Result<(), ParseError> {
        while !self.at_line_end() {
            let save = self.pos;
            let name = self.ident("a variable name")?;
            if RESERVED.contains(&name.as_str()) {
                self.pos = save;
                return self.err(format!("{name} is reserved"));
            }
            if names.ids.contains_key(&name) {
                self.pos = save;
                return self.err(format!("variable {name} declared twice"));
            }
            names.ids.insert(name.clone(), names.list.len());
            names.list.push(name);
        }
        self.end_line()
    }
}

const RESERVED: [&str; 10] = ["var", "con", "in", "inf", "and", "or", "not", "atom", "false", "true"];

#[derive(Default)]
struct Names {
    ids: HashMap<String, VarId>,
    list: Vec<String>,
}

/// Parses an instance. A self-atom `x - x in I` makes the whole constraint
/// a tautology when `0 in I` (the constraint is dropped) and is rejected
/// otherwise.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut names = Names::default();
    let mut constraints = Vec::new();
    loop {
        cur.skip_newlines();
        let Some(tok) = cur.peek() else { break };
        match tok {
            Tok::Ident(kw) if kw == "var" => {
                cur.pos += 1;
                cur.declare(&mut names)?;
            }
            Tok::Ident(kw) if kw == "con" => {
                cur.pos += 1;
                if cur.at_line_end() {
                    return cur.err("empty constraint");
                }
                let mut atoms = Vec::new();
                let mut tautology = false;
                loop {
                    let at = cur.pos;
                    let a = cur.atom(&names)?;
                    if a.is_self() {
                        if !a.interval.contains_int(0) {
                            cur.pos = at;
                            return cur.err("self-atom without 0 in its interval");
                        }
                        tautology = true;
                    }
                    atoms.push(a);
                    if !cur.eat_sym("|") {
                        break;
                    }
                }
                cur.end_line()?;
                if !tautology {
                    constraints.push(Constraint::new(atoms));
                }
            }
            _ => return cur.err(format!("expected \"var\" or \"con\", found {}", cur.describe())),
        }
    }
    Ok(Instance { var_names: names.list, constraints })
}

fn write_atom(out: &mut String, names: &[String], a: &Atom) {
    let _ = write!(out, "{} - {} in {}", names[a.x], names[a.y], a.interval);
}

pub fn print_instance(inst: &Instance) -> Result<String, PrintError> {
    let mut out = String::new();
    if !inst.var_names.is_empty() {
        out.push_str("var");
        for n in &inst.var_names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for c in &inst.constraints {
        if c.is_empty() {
            return Err(PrintError::EmptyConstraint);
        }
        out.push_str("con ");
        for (i, a) in c.disjuncts.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            write_atom(&mut out, &inst.var_names, a);
        }
        out.push('\n');
    }
    Ok(out)
}

/// `SAT` followed by `name = value` lines, or `UNSAT`.
pub fn print_model(inst: &Instance, model: Option<&Assignment>) -> String {
    let Some(m) = model else { return "UNSAT\n".into() };
    let mut out = String::from("SAT\n");
    for (v, name) in inst.var_names.iter().enumerate() {
        if let Some(val) = m.get(v) {
            let _ = writeln!(out, "{name} = {}", format_rational(val));
        }
    }
    out
}

/// Reads `name = value` lines (an optional leading `SAT` is skipped).
/// Variables the model does not mention stay unassigned.
pub fn parse_model(text: &str, inst: &Instance) -> Result<Assignment, ParseError> {
    let mut cur = Cursor::new(text)?;
    let names = Names {
        ids: inst.var_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect(),
        list: inst.var_names.clone(),
    };
    let mut a = Assignment::new(inst.var_count());
    cur.skip_newlines();
    if matches!(cur.peek(), Some(Tok::Ident(s)) if s == "SAT") {
        cur.pos += 1;
        cur.end_line()?;
    } else if matches!(cur.peek(), Some(Tok::Ident(s)) if s == "UNSAT") {
        return cur.err("the model file reports UNSAT");
    }
    loop {
        cur.skip_newlines();
        if cur.peek().is_none() {
            break;
        }
        let v = cur.var(&names)?;
        if a.get(v).is_some() {
            return cur.err(format!("{} assigned twice", names.list[v]));
        }
        cur.sym("=")?;
        let num = cur.signed()?;
        let den = if cur.eat_sym("/") { cur.uint("a denominator")? } else { 1 };
        if den == 0 {
            return cur.err("zero denominator");
        }
        a.set(v, Rational::new(num.into(), den.into()));
        cur.end_line()?;
    }
    Ok(a)
}

/// `bag <id> <vertex>*` lines, then `edge <parent> <child>` lines; ids are
/// `0..N`.
pub fn print_decomposition(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "bag {i}");
        for v in bag {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (i, p) in td.parent.iter().enumerate() {
        if let Some(p) = p {
            let _ = writeln!(out, "edge {p} {i}");
        }
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    loop {
        cur.skip_newlines();
        if cur.peek().is_none() {
            break;
        }
        let at = cur.pos;
        let kw = cur.ident("\"bag\" or \"edge\"")?;
        match kw.as_str() {
            "bag" => {
                let id = cur.uint("a bag id")? as usize;
                let mut bag = Vec::new();
                while !cur.at_line_end() {
                    bag.push(cur.uint("a vertex")? as usize);
                }
                if bags.len() <= id {
                    bags.resize(id + 1, None);
                }
                if bags[id].is_some() {
                    cur.pos = at;
                    return cur.err(format!("bag {id} defined twice"));
                }
                bags[id] = Some(bag);
            }
            "edge" => {
                let p = cur.uint("a bag id")? as usize;
                let c = cur.uint("a bag id")? as usize;
                edges.push((p, c, at));
            }
            _ => {
                cur.pos = at;
                return cur.err(format!("expected \"bag\" or \"edge\", found {kw:?}"));
            }
        }
        cur.end_line()?;
    }
    if let Some(missing) = bags.iter().position(Option::is_none) {
        return cur.err(format!("bag {missing} is missing"));
    }
    let n = bags.len();
    let mut parent = vec![None; n];
    for &(p, c, at) in &edges {
        cur.pos = at;
        if p >= n || c >= n {
            return cur.err("edge refers to an undefined bag");
        }
        if p == c || parent[c].is_some() {
            return cur.err(format!("bag {c} gets a second parent"));
        }
        parent[c] = Some(p);
    }
    cur.pos = cur.toks.len();
    if n > 0 && parent.iter().filter(|p| p.is_none()).count() != 1 {
        return cur.err("the edges do not form a tree");
    }
    for start in 0..n {
        let (mut v, mut steps) = (start, 0);
        while let Some(p) = parent[v] {
            v = p;
            steps += 1;
            if steps > n {
                return cur.err("the edges contain a cycle");
            }
        }
    }
    Ok(TreeDecomposition::new(bags.into_iter().map(Option::unwrap).collect(), parent))
}

/// A formula together with its declared variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaFile {
    pub var_names: Vec<String>,
    pub formula: Formula,
}

/// `var` lines followed by one s-expression over `(and ...)`, `(or ...)`,
/// `(not f)`, `(atom x - y in I)` and `false`. Self-atoms are rejected.
pub fn parse_formula(text: &str) -> Result<FormulaFile, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut names = Names::default();
    loop {
        cur.skip_newlines();
        match cur.peek() {
            Some(Tok::Ident(kw)) if kw == "var" => {
                cur.pos += 1;
                cur.declare(&mut names)?;
            }
            _ => break,
        }
    }
    let formula = sexpr(&mut cur, &names)?;
    cur.skip_newlines();
    if cur.peek().is_some() {
        return cur.err(format!("trailing input {}", cur.describe()));
    }
    Ok(FormulaFile { var_names: names.list, formula })
}

fn sexpr(cur: &mut Cursor, names: &Names) -> Result<Formula, ParseError> {
    cur.skip_newlines();
    if matches!(cur.peek(), Some(Tok::Ident(s)) if s == "false") {
        cur.pos += 1;
        return Ok(Formula::False);
    }
    cur.sym("(")?;
    cur.skip_newlines();
    let at = cur.pos;
    let head = cur.ident("and, or, not or atom")?;
    let f = match head.as_str() {
        "and" | "or" => {
            let mut children = Vec::new();
            loop {
                cur.skip_newlines();
                if cur.peek() == Some(&Tok::Sym(")")) {
                    break;
                }
                children.push(sexpr(cur, names)?);
            }
            if head == "and" {
                Formula::And(children)
            } else {
                Formula::Or(children)
            }
        }
        "not" => Formula::not(sexpr(cur, names)?),
        "atom" => {
            let start = cur.pos;
            let a = cur.atom(names)?;
            if a.is_self() {
                cur.pos = start;
                return cur.err("self-atoms are not allowed in formulas");
            }
            Formula::Atom(a)
        }
        _ => {
            cur.pos = at;
            return cur.err(format!("unknown connective {head:?}"));
        }
    };
    cur.skip_newlines();
    cur.sym(")")?;
    Ok(f)
}

pub fn print_formula(file: &FormulaFile) -> String {
    let mut out = String::new();
    if !file.var_names.is_empty() {
        out.push_str("var");
        for n in &file.var_names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    write_formula(&mut out, &file.var_names, &file.formula);
    out.push('\n');
    out
}

fn write_formula(out: &mut String, names: &[String], f: &Formula) {
    match f {
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => {
            out.push_str("(atom ");
            write_atom(out, names, a);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            write_formula(out, names, g);
            out.push(')');
        }
        Formula::And(cs) | Formula::Or(cs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for c in cs {
                out.push(' ');
                write_formula(out, names, c);
            }
            out.push(')');
        }
    }
}
