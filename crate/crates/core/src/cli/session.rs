use std::collections::BTreeMap;

use num::{BigInt, ToPrimitive};

use super::lexer::{tokenize, Tok, Token};
use crate::coeff::{Axis, Grid, RationalFunction, Step, Symbol, SymbolKind, SymbolTable, Q};
use crate::diffring::{DiffOrdering, DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::monomial::IndexedVar;
use crate::pdering::{DiffrlPoly, DiffrlRing, SimpleSystem};
use crate::polynomial::Polynomial;
use crate::ranking::{OperatorOrder, Ranking, RankingKind};

/// One equation of the fda block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdaEquation {
    pub poly: DiffPoly,
    /// The equation as written, including annotations.
    pub text: String,
    /// Declared pre-shifts as (axis, amount).
    pub pre_shift: Vec<(usize, i64)>,
}

/// A parsed session file with every expression resolved.
#[derive(Clone, Debug)]
pub struct Session {
    pub symbols: SymbolTable,
    pub diff: DiffRing,
    pub diffrl: DiffrlRing,
    /// The PDE system: top-level equations of the pde block, or the equations
    /// of the first subsystem when there are none.
    pub pde: Vec<DiffrlPoly>,
    pub decomposition: Vec<SimpleSystem>,
    pub fda: Vec<FdaEquation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn err(self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Ident(String, Pos),
    Indexed {
        name: String,
        entries: Vec<(String, i64, Pos)>,
        pos: Pos,
    },
    Deriv {
        name: String,
        parts: Vec<(String, u32, Pos)>,
        pos: Pos,
    },
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, Pos),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug)]
struct RankDecl {
    kind: RankingKind,
    op: OperatorOrder,
    axes: Option<Vec<(String, Pos)>>,
    deps: Option<Vec<(String, Pos)>>,
}

#[derive(Clone, Debug)]
struct RawEq {
    ast: Ast,
    text: String,
    pos: Pos,
    mult: Option<Vec<(String, Pos)>>,
    shift: Vec<(String, i64, Pos)>,
}

#[derive(Clone, Debug, Default)]
struct RawSystem {
    eqs: Vec<RawEq>,
    neqs: Vec<RawEq>,
}

#[derive(Default)]
struct Raw {
    vars: Vec<(String, Pos)>,
    steps: Vec<(Option<String>, Option<BigInt>, u32, Pos)>,
    grid: Option<Vec<(String, Pos)>>,
    deps: Vec<(String, Pos)>,
    consts: Vec<(String, Pos)>,
    ordering: Option<RankDecl>,
    ranking: Option<RankDecl>,
    pde: Vec<RawEq>,
    systems: Vec<RawSystem>,
    fda: Vec<RawEq>,
}

struct Parser<'a> {
    toks: Vec<Token>,
    i: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            i: 0,
            src,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.toks[self.i];
        Pos {
            line: t.line,
            col: t.col,
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self
                .pos()
                .err(format!("expected `{c}`, found {}", Self::describe(self.peek()))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            t => Err(pos.err(format!("expected a name, found {}", Self::describe(&t)))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            t => Err(pos.err(format!("expected an integer, found {}", Self::describe(&t)))),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let pos = self.pos();
        let neg = self.eat('-');
        let n = self.int()?;
        let v = n.to_i64().ok_or_else(|| pos.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn u32_lit(&mut self) -> Result<u32> {
        let pos = self.pos();
        self.int()?.to_u32().ok_or_else(|| pos.err("integer out of range"))
    }

    fn names_until(&mut self, stop: &[&str]) -> Result<Vec<(String, Pos)>> {
        let mut out = Vec::new();
        while let Tok::Ident(s) = self.peek() {
            if stop.contains(&s.as_str()) {
                break;
            }
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn session(&mut self) -> Result<Raw> {
        let mut raw = Raw::default();
        loop {
            let pos = self.pos();
            let (kw, _) = match self.peek() {
                Tok::Eof => break,
                _ => self.ident()?,
            };
            match kw.as_str() {
                "vars" => {
                    raw.vars = self.names_until(&[])?;
                    self.expect(';')?;
                }
                "grid" => {
                    raw.grid = Some(self.names_until(&[])?);
                    self.expect(';')?;
                }
                "deps" => {
                    raw.deps = self.names_until(&[])?;
                    self.expect(';')?;
                }
                "consts" => {
                    raw.consts = self.names_until(&[])?;
                    self.expect(';')?;
                }
                "spacings" => {
                    while *self.peek() != Tok::Punct(';') {
                        let p = self.pos();
                        match self.peek().clone() {
                            Tok::Int(n) => {
                                self.bump();
                                raw.steps.push((None, Some(n), 0, p));
                            }
                            _ => {
                                let (name, _) = self.ident()?;
                                let w = if self.eat(':') { self.u32_lit()? } else { 1 };
                                if w == 0 {
                                    return Err(p.err("spacing weights must be positive"));
                                }
                                raw.steps.push((Some(name), None, w, p));
                            }
                        }
                    }
                    self.expect(';')?;
                }
                "ordering" | "ranking" => {
                    let decl = self.rank_decl()?;
                    if kw == "ordering" {
                        raw.ordering = Some(decl);
                    } else {
                        raw.ranking = Some(decl);
                    }
                }
                "pde" => {
                    self.expect('{')?;
                    while !self.eat('}') {
                        let (k, kp) = self.ident()?;
                        match k.as_str() {
                            "eq" => raw.pde.push(self.equation(kp)?),
                            "system" => raw.systems.push(self.system()?),
                            _ => return Err(kp.err(format!("expected `eq` or `system`, found `{k}`"))),
                        }
                    }
                }
                "fda" => {
                    self.expect('{')?;
                    while !self.eat('}') {
                        let (k, kp) = self.ident()?;
                        if k != "eq" {
                            return Err(kp.err(format!("expected `eq`, found `{k}`")));
                        }
                        raw.fda.push(self.equation(kp)?);
                    }
                }
                _ => return Err(pos.err(format!("unknown declaration `{kw}`"))),
            }
        }
        Ok(raw)
    }

    fn rank_decl(&mut self) -> Result<RankDecl> {
        let (k, kp) = self.ident()?;
        let kind = match k.as_str() {
            "orderly" => RankingKind::Orderly,
            "elimination" => RankingKind::Elimination,
            _ => return Err(kp.err(format!("expected `orderly` or `elimination`, found `{k}`"))),
        };
        let mut decl = RankDecl {
            kind,
            op: OperatorOrder::Graded,
            axes: None,
            deps: None,
        };
        while *self.peek() != Tok::Punct(';') {
            let (w, wp) = self.ident()?;
            match w.as_str() {
                "graded" => decl.op = OperatorOrder::Graded,
                "lex" => decl.op = OperatorOrder::Lex,
                "axes" => decl.axes = Some(self.names_until(&["deps", "graded", "lex"])?),
                "deps" => decl.deps = Some(self.names_until(&["axes", "graded", "lex"])?),
                _ => return Err(wp.err(format!("unexpected `{w}` in ranking declaration"))),
            }
        }
        self.expect(';')?;
        Ok(decl)
    }

    fn system(&mut self) -> Result<RawSystem> {
        self.expect('{')?;
        let mut s = RawSystem::default();
        while !self.eat('}') {
            let (k, kp) = self.ident()?;
            match k.as_str() {
                "eq" => s.eqs.push(self.equation(kp)?),
                "neq" => s.neqs.push(self.equation(kp)?),
                _ => return Err(kp.err(format!("expected `eq` or `neq`, found `{k}`"))),
            }
        }
        Ok(s)
    }

    fn offset_of(&self, p: Pos) -> usize {
        let mut off = 0;
        for (i, l) in self.src.split_inclusive('\n').enumerate() {
            if i + 1 == p.line {
                return off + l.char_indices().nth(p.col - 1).map(|(b, _)| b).unwrap_or(l.len());
            }
            off += l.len();
        }
        self.src.len()
    }

    fn equation(&mut self, kw: Pos) -> Result<RawEq> {
        let pos = self.pos();
        let ast = self.expr()?;
        let mut eq = RawEq {
            ast,
            text: String::new(),
            pos,
            mult: None,
            shift: Vec::new(),
        };
        while self.eat('@') {
            let (a, ap) = self.ident()?;
            match a.as_str() {
                "mult" => eq.mult = Some(self.names_until(&[])?),
                "shift" => {
                    while let Tok::Ident(_) = self.peek() {
                        let (ax, p) = self.ident()?;
                        self.expect(':')?;
                        let n = self.small_int()?;
                        eq.shift.push((ax, n, p));
                    }
                }
                _ => return Err(ap.err(format!("unknown annotation `@{a}`"))),
            }
        }
        let end = self.pos();
        self.expect(';')?;
        let (a, b) = (self.offset_of(kw), self.offset_of(end));
        eq.text = self.src[a..b].trim().to_string();
        Ok(eq)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if *self.peek() == Tok::Punct('/') {
                let p = self.pos();
                self.bump();
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?), p);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.u32_lit()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Ast::Int(n))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "D" && *self.peek() == Tok::Punct('(') {
                    self.bump();
                    let (dep, _) = self.ident()?;
                    let mut parts = Vec::new();
                    while self.eat(',') {
                        let (ax, ap) = self.ident()?;
                        let k = if self.eat(',') {
                            if let Tok::Int(_) = self.peek() {
                                self.u32_lit()?
                            } else {
                                // `D(u, x, y)`: the comma introduced the next axis
                                self.i -= 1;
                                1
                            }
                        } else {
                            1
                        };
                        parts.push((ax, k, ap));
                    }
                    self.expect(')')?;
                    return Ok(Ast::Deriv { name: dep, parts, pos });
                }
                if *self.peek() == Tok::Punct('[') {
                    let open = self.pos();
                    self.bump();
                    let mut entries = Vec::new();
                    loop {
                        let (ix, ip) = self.ident()?;
                        let off = if self.eat('+') {
                            self.small_int()?
                        } else if self.eat('-') {
                            -self.small_int()?
                        } else {
                            0
                        };
                        entries.push((ix, off, ip));
                        if !self.eat(',') {
                            break;
                        }
                    }
                    if !self.eat(']') {
                        return Err(open.err(format!(
                            "unclosed `[`: expected `]`, found {}",
                            Self::describe(self.peek())
                        )));
                    }
                    return Ok(Ast::Indexed { name, entries, pos });
                }
                Ok(Ast::Ident(name, pos))
            }
            t => Err(pos.err(format!("expected an expression, found {}", Self::describe(&t)))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Difference,
    Differential,
}

/// Name resolution shared by session parsing and standalone expressions.
struct Resolver<'a> {
    symbols: &'a SymbolTable,
    diff: &'a DiffRing,
    diffrl: &'a DiffrlRing,
}

impl Resolver<'_> {
    fn axis_by_name(&self, name: &str) -> Option<usize> {
        self.diffrl.axes.iter().position(|a| &*a.name() == name)
    }

    fn split_derivative(&self, name: &str) -> Option<IndexedVar> {
        let (dep, suffix) = name.split_once('_')?;
        let indet = self.diffrl.indet_index(dep)?;
        let mut orders = vec![0u32; self.diffrl.num_axes()];
        let mut rest = suffix;
        while !rest.is_empty() {
            let (i, len) = self
                .diffrl
                .axes
                .iter()
                .enumerate()
                .filter(|(_, a)| rest.starts_with(&*a.name()))
                .map(|(i, a)| (i, a.name().len()))
                .max_by_key(|(_, l)| *l)?;
            orders[i] += 1;
            rest = &rest[len..];
        }
        Some(IndexedVar::new(indet, &orders))
    }

    fn collect_offsets(&self, ast: &Ast, mins: &mut Vec<i64>) {
        match ast {
            Ast::Indexed { entries, .. } => {
                for (i, (_, off, _)) in entries.iter().enumerate() {
                    if i < mins.len() {
                        mins[i] = mins[i].min(*off);
                    }
                }
            }
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
                self.collect_offsets(a, mins);
                self.collect_offsets(b, mins);
            }
            Ast::Neg(a) | Ast::Pow(a, _) => self.collect_offsets(a, mins),
            _ => {}
        }
    }

    fn eval(&self, ast: &Ast, target: Target, bias: &[i64], text: &str) -> Result<Polynomial> {
        let rec = |a: &Ast| self.eval(a, target, bias, text);
        Ok(match ast {
            Ast::Int(n) => Polynomial::constant(RationalFunction::constant(Q::from_integer(n.clone()))),
            Ast::Ident(name, pos) => {
                if let Some((s, _)) = self.symbols.lookup(name) {
                    Polynomial::constant(RationalFunction::var(s))
                } else if target == Target::Differential {
                    if let Some(i) = self.diffrl.indet_index(name) {
                        Polynomial::var(IndexedVar::new(i, &vec![0; self.diffrl.num_axes()]))
                    } else if let Some(v) = self.split_derivative(name) {
                        Polynomial::var(v)
                    } else {
                        return Err(pos.err(format!("undeclared symbol `{name}`")));
                    }
                } else if self.diff.indet_index(name).is_some() {
                    return Err(pos.err(format!("`{name}` needs grid indices, e.g. `{name}[...]`")));
                } else {
                    return Err(pos.err(format!("undeclared symbol `{name}`")));
                }
            }
            Ast::Indexed { name, entries, pos } => {
                if target == Target::Differential {
                    return Err(pos.err("grid-indexed variables are not allowed in a differential expression"));
                }
                let indet = self
                    .diff
                    .indet_index(name)
                    .ok_or_else(|| pos.err(format!("`{name}` is not a dependent variable")))?;
                let n = self.diff.num_axes();
                if entries.len() != n {
                    return Err(pos.err(format!("`{name}` needs {n} grid indices, found {}", entries.len())));
                }
                let mut shift = Vec::with_capacity(n);
                for (i, (ix, off, ip)) in entries.iter().enumerate() {
                    let axis_name = self.diff.grid.axes()[i].var.name();
                    if *ix != self.diff.index_names[i] && *ix != *axis_name {
                        return Err(ip.err(format!(
                            "index {} must be `{}`, found `{ix}`",
                            i + 1,
                            self.diff.index_names[i]
                        )));
                    }
                    let s = off + bias[i];
                    if s < 0 {
                        return Err(Error::NegativeShift(text.to_string()));
                    }
                    shift.push(s as u32);
                }
                Polynomial::var(IndexedVar::new(indet, &shift))
            }
            Ast::Deriv { name, parts, pos } => {
                if target == Target::Difference {
                    return Err(pos.err("derivatives are not allowed in a difference expression"));
                }
                let indet = self
                    .diffrl
                    .indet_index(name)
                    .ok_or_else(|| pos.err(format!("`{name}` is not a dependent variable")))?;
                let mut orders = vec![0u32; self.diffrl.num_axes()];
                for (ax, k, ap) in parts {
                    let i = self
                        .axis_by_name(ax)
                        .ok_or_else(|| ap.err(format!("`{ax}` is not an independent variable")))?;
                    orders[i] += k;
                }
                Polynomial::var(IndexedVar::new(indet, &orders))
            }
            Ast::Add(a, b) => &rec(a)? + &rec(b)?,
            Ast::Sub(a, b) => &rec(a)? - &rec(b)?,
            Ast::Mul(a, b) => &rec(a)? * &rec(b)?,
            Ast::Div(a, b, pos) => {
                let d = rec(b)?;
                let c = match d.terms().next() {
                    None => return Err(pos.err("division by zero")),
                    Some((m, c)) if d.len() == 1 && m.is_one() => c.clone(),
                    _ => return Err(pos.err("division by an expression in dependent variables")),
                };
                rec(a)?.scale(&c.inv()?)
            }
            Ast::Neg(a) => -&rec(a)?,
            Ast::Pow(a, e) => rec(a)?.pow(*e),
        })
    }

    fn difference(&self, eq: &RawEq) -> Result<(DiffPoly, Vec<(usize, i64)>)> {
        let n = self.diff.num_axes();
        let mut mins = vec![0i64; n];
        self.collect_offsets(&eq.ast, &mut mins);
        let mut bias: Vec<i64> = mins.iter().map(|&m| if m < 0 { -m } else { 0 }).collect();
        let mut pre = Vec::new();
        for (ax, k, p) in &eq.shift {
            let i = (0..n)
                .find(|&i| self.diff.index_names[i] == *ax || *self.diff.grid.axes()[i].var.name() == **ax)
                .ok_or_else(|| p.err(format!("`{ax}` is not a grid axis")))?;
            bias[i] = *k;
            pre.push((i, *k));
        }
        Ok((self.eval(&eq.ast, Target::Difference, &bias, &eq.text)?, pre))
    }

    fn differential(&self, eq: &RawEq) -> Result<DiffrlPoly> {
        self.eval(&eq.ast, Target::Differential, &[], &eq.text)
    }
}

fn build_ranking(decl: Option<&RankDecl>, axes: &[(String, Pos)], deps: &[(String, Pos)]) -> Result<Ranking> {
    let Some(d) = decl else {
        return Ranking::new(
            RankingKind::Orderly,
            OperatorOrder::Graded,
            (0..axes.len()).collect(),
            (0..deps.len()).collect(),
        );
    };
    let resolve = |list: &Option<Vec<(String, Pos)>>, universe: &[(String, Pos)], what: &str| -> Result<Vec<usize>> {
        match list {
            None => Ok((0..universe.len()).collect()),
            Some(names) => {
                let mut out = Vec::new();
                for (n, p) in names {
                    let i = universe
                        .iter()
                        .position(|(u, _)| u == n)
                        .ok_or_else(|| p.err(format!("`{n}` is not a declared {what}")))?;
                    out.push(i);
                }
                if out.len() != universe.len() {
                    let p = names.first().map(|x| x.1).unwrap_or(Pos { line: 1, col: 1 });
                    return Err(p.err(format!("the {what} list must name each {what} exactly once")));
                }
                Ok(out)
            }
        }
    };
    let ax = resolve(&d.axes, axes, "independent variable")?;
    let dp = resolve(&d.deps, deps, "dependent variable")?;
    Ranking::new(d.kind, d.op, ax, dp)
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut p = Parser::new(text)?;
    let raw = p.session()?;
    let origin = Pos { line: 1, col: 1 };
    if raw.vars.is_empty() {
        return Err(origin.err("missing `vars` declaration"));
    }
    let mut symbols = SymbolTable::default();
    let declare = |symbols: &mut SymbolTable, (n, p): &(String, Pos), kind| {
        symbols.declare(n, kind).map_err(|e| p.err(e.to_string()))
    };
    for v in &raw.vars {
        declare(&mut symbols, v, SymbolKind::Independent)?;
    }
    if raw.steps.len() != raw.vars.len() {
        let p = raw.steps.first().map(|s| s.3).unwrap_or(origin);
        return Err(p.err(format!(
            "`spacings` needs one entry per independent variable ({}), found {}",
            raw.vars.len(),
            raw.steps.len()
        )));
    }
    let mut weights: BTreeMap<Symbol, u32> = BTreeMap::new();
    let mut axes = Vec::new();
    for ((v, _), (name, fixed, w, p)) in raw.vars.iter().zip(&raw.steps) {
        let step = match (name, fixed) {
            (Some(n), _) => {
                let s = declare(&mut symbols, &(n.clone(), *p), SymbolKind::Spacing)?;
                if let Some(old) = weights.insert(s, *w) {
                    if old != *w {
                        return Err(p.err(format!("conflicting weights for spacing `{n}`")));
                    }
                }
                Step::Spacing(s)
            }
            (None, Some(k)) => Step::Fixed(Q::from_integer(k.clone())),
            (None, None) => unreachable!(),
        };
        axes.push(Axis {
            var: Symbol::new(v),
            step,
        });
    }
    for c in &raw.consts {
        declare(&mut symbols, c, SymbolKind::Constant)?;
    }
    let mut grid = Grid::new(axes);
    for (s, w) in weights {
        grid.set_weight(s, w);
    }
    let mut dep_names: Vec<&str> = Vec::new();
    for (d, p) in &raw.deps {
        if symbols.lookup(d).is_some() || dep_names.contains(&d.as_str()) {
            return Err(p.err(format!("`{d}` is already declared")));
        }
        dep_names.push(d);
    }
    let ordering = DiffOrdering::new(build_ranking(raw.ordering.as_ref(), &raw.vars, &raw.deps)?);
    let mut diff = DiffRing::new(grid, ordering, &dep_names);
    if let Some(g) = &raw.grid {
        if g.len() != raw.vars.len() {
            let p = g.first().map(|x| x.1).unwrap_or(origin);
            return Err(p.err("`grid` needs one index name per independent variable"));
        }
        let names: Vec<&str> = g.iter().map(|x| x.0.as_str()).collect();
        diff = diff.with_index_names(&names);
    }
    let var_names: Vec<&str> = raw.vars.iter().map(|x| x.0.as_str()).collect();
    let diffrl = DiffrlRing::new(
        &var_names,
        build_ranking(raw.ranking.as_ref(), &raw.vars, &raw.deps)?,
        &dep_names,
    );
    let r = Resolver {
        symbols: &symbols,
        diff: &diff,
        diffrl: &diffrl,
    };
    let mut decomposition = Vec::new();
    for s in &raw.systems {
        let eqs = s.eqs.iter().map(|e| r.differential(e)).collect::<Result<Vec<_>>>()?;
        let neqs = s.neqs.iter().map(|e| r.differential(e)).collect::<Result<Vec<_>>>()?;
        let declared: Option<Vec<Vec<usize>>> = if s.eqs.iter().any(|e| e.mult.is_some()) {
            let mut all = Vec::new();
            for e in &s.eqs {
                let Some(m) = &e.mult else {
                    return Err(e
                        .pos
                        .err("either every equation of a system declares `@mult` or none does"));
                };
                let mut axes = Vec::new();
                for (a, ap) in m {
                    axes.push(
                        r.axis_by_name(a)
                            .ok_or_else(|| ap.err(format!("`{a}` is not an independent variable")))?,
                    );
                }
                all.push(axes);
            }
            Some(all)
        } else {
            None
        };
        let first = s.eqs.first().map(|e| e.pos).unwrap_or(origin);
        let sys = match declared {
            Some(d) => SimpleSystem::with_declared_mult_vars(eqs, neqs, &d, &diffrl),
            None => SimpleSystem::new(eqs, neqs, &diffrl),
        }
        .map_err(|e| first.err(e.to_string()))?;
        decomposition.push(sys);
    }
    let mut pde = raw.pde.iter().map(|e| r.differential(e)).collect::<Result<Vec<_>>>()?;
    if pde.is_empty() {
        if let Some(s) = decomposition.first() {
            pde = s.equations.clone();
        }
    }
    let mut fda = Vec::new();
    for e in &raw.fda {
        let (poly, pre_shift) = r.difference(e)?;
        if poly.is_zero() {
            return Err(e.pos.err("difference equation is identically zero"));
        }
        fda.push(FdaEquation {
            poly,
            text: e.text.clone(),
            pre_shift,
        });
    }
    Ok(Session {
        symbols,
        diff,
        diffrl,
        pde,
        decomposition,
        fda,
    })
}

impl Session {
    fn resolver(&self) -> Resolver<'_> {
        Resolver {
            symbols: &self.symbols,
            diff: &self.diff,
            diffrl: &self.diffrl,
        }
    }

    fn standalone(text: &str) -> Result<RawEq> {
        let mut p = Parser::new(text)?;
        let pos = p.pos();
        let ast = p.expr()?;
        if *p.peek() != Tok::Eof {
            return Err(p.pos().err(format!("unexpected {}", Parser::describe(p.peek()))));
        }
        Ok(RawEq {
            ast,
            text: text.trim().to_string(),
            pos,
            mult: None,
            shift: Vec::new(),
        })
    }

    /// Parses a difference expression with this session's declarations.
    /// Axes with negative offsets are moved so their smallest offset is 0.
    pub fn parse_difference(&self, text: &str) -> Result<DiffPoly> {
        Ok(self.resolver().difference(&Self::standalone(text)?)?.0)
    }

    /// Parses a differential expression with this session's declarations.
    pub fn parse_differential(&self, text: &str) -> Result<DiffrlPoly> {
        self.resolver().differential(&Self::standalone(text)?)
    }

    pub fn fda_polys(&self) -> Vec<DiffPoly> {
        self.fda.iter().map(|e| e.poly.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "vars x y t; spacings h:1 h:1 tau:1; grid j k n; deps u v p; consts Re;\n";

    fn session(body: &str) -> Result<Session> {
        parse_session(&format!("{HEADER}{body}"))
    }

    fn parse_error(text: &str) -> (usize, usize, String) {
        match parse_session(text) {
            Err(Error::Parse { line, col, msg }) => (line, col, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn pre_shift_moves_offsets_onto_the_grid() {
        let s = session("fda { eq u[j+1,k,n] - u[j-1,k,n] @shift x:1; }").unwrap();
        let d = &s.diff;
        let want = &d.var("u", &[2, 0, 0]) - &d.var("u", &[0, 0, 0]);
        assert_eq!(s.fda[0].poly, want);
        assert_eq!(s.fda[0].pre_shift, vec![(0, 1)]);
    }

    #[test]
    fn unmentioned_axes_are_normalized() {
        let s = session("fda { eq u[j,k+1,n] - u[j,k-1,n]; }").unwrap();
        let d = &s.diff;
        assert_eq!(s.fda[0].poly, &d.var("u", &[0, 2, 0]) - &d.var("u", &[0, 0, 0]));
    }

    #[test]
    fn insufficient_pre_shift_is_rejected() {
        let err = session("fda { eq u[j+1,k,n] - u[j-2,k,n] @shift x:1; }").unwrap_err();
        assert!(matches!(err, Error::NegativeShift(_)), "{err:?}");
    }

    #[test]
    fn ordinary_example_file() {
        let s = parse_session(
            "vars x; spacings 1; grid j; deps u; ordering orderly lex;\nfda { eq u[j]*u[j+2] - x*u[j+1]; }",
        )
        .unwrap();
        let d = &s.diff;
        let x = RationalFunction::var(Symbol::new("x"));
        let g1 = &(&d.var("u", &[0]) * &d.var("u", &[2])) - &d.var("u", &[1]).scale(&x);
        assert_eq!(s.fda_polys(), vec![g1]);
    }

    #[test]
    fn unclosed_bracket_points_at_the_bracket() {
        let (line, col, msg) = parse_error("vars x; spacings h; grid j; deps u;\nfda { eq u[j+1; }");
        assert_eq!((line, col), (2, 11));
        assert!(msg.contains("unclosed"), "{msg}");
    }

    #[test]
    fn undeclared_symbol() {
        let (line, _, msg) = parse_error("vars x; spacings h; deps u;\npde { eq u_x - w; }");
        assert_eq!(line, 2);
        assert!(msg.contains('w'), "{msg}");
    }

    #[test]
    fn derivative_notations_agree() {
        let s = session("").unwrap();
        let a = s.parse_differential("D(u, x, 2) + D(v, x, y) - u_xx - v_xy").unwrap();
        assert!(a.is_zero());
        let b = s.parse_differential("D(p, t)").unwrap();
        assert_eq!(b, s.diffrl.var("p", &[0, 0, 1]));
    }

    #[test]
    fn comments_and_rational_literals() {
        let s = session("# leading comment\nfda { eq u[j+1,k,n]/2 - 3/4*u[j,k,n]; # trailing\n }").unwrap();
        let d = &s.diff;
        let want = &d.var("u", &[1, 0, 0]).scale(&RationalFunction::rational(1, 2))
            - &d.var("u", &[0, 0, 0]).scale(&RationalFunction::rational(3, 4));
        assert_eq!(s.fda[0].poly, want);
    }

    #[test]
    fn dividing_by_a_dependent_variable_is_rejected() {
        assert!(session("fda { eq 1/u[j,k,n]; }").is_err());
    }

    #[test]
    fn weights_reach_the_grid() {
        let s = parse_session("vars x t; spacings h:1 tau:2; deps u;").unwrap();
        let w: Vec<u32> = s.diff.grid.weights().values().copied().collect();
        let mut sorted = w.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2]);
    }

    #[test]
    fn pde_defaults_to_the_first_system() {
        let s = parse_session("vars x y; spacings h h; deps u; pde { system { eq u_x; eq u_y; } system { eq u; } }")
            .unwrap();
        assert_eq!(s.pde.len(), 2);
        assert_eq!(s.decomposition.len(), 2);
    }

    #[test]
    fn declared_multiplicative_variables_are_checked() {
        let ok = "vars x y; spacings h h; deps u; pde { system { eq u_y @mult y; eq u_x @mult x y; } }";
        assert!(parse_session(ok).is_ok());
        let bad = "vars x y; spacings h h; deps u; pde { system { eq u_y @mult x; eq u_x @mult x; } }";
        assert!(parse_session(bad).is_err());
    }
}
