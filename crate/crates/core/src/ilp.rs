//! Integer programs for the minimum length of a code with locality 1 or 2,
//! their export in LP file format, and an exact search that decides
//! feasibility for each length in turn.
//!
//! Variables: `n` (length), `xP<i>` (multiplicity of point `i`), `yP<i>`
//! (point has multiplicity at least 2), `uP<i>` (point is in the support)
//! and `zL<j>` (line `j` carries three support points).

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::bounds::{default_lambda, griesmer, min_length_no_distance, multiplicity_lower, multiplicity_upper};
use crate::error::{Error, Result};
use crate::geometry::{point_count, Geometry, PointMultiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Integer,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// `(variable index, coefficient)`, variables in ascending index order.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Number of constraints in each family, in model order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub families: Vec<(&'static str, usize)>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.families.iter().map(|(_, c)| c).sum()
    }
}

/// An integer linear program minimizing the length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel {
    pub q: u32,
    pub k: usize,
    pub d: u64,
    pub r: usize,
    pub lambda: u64,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    /// Index of the variable `n`; the objective is `min n`.
    pub objective: usize,
    /// When set, `n` is fixed to this value (feasibility question).
    pub fixed_n: Option<u64>,
    census: Vec<(&'static str, usize)>,
}

struct Builder {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    census: Vec<(&'static str, usize)>,
}

impl Builder {
    fn var(&mut self, name: String, kind: VarKind) -> usize {
        self.variables.push(Variable { name, kind });
        self.variables.len() - 1
    }

    fn family(&mut self, family: &'static str, rows: impl IntoIterator<Item = (String, Vec<(usize, i64)>, Sense, i64)>) {
        let before = self.constraints.len();
        for (name, mut terms, sense, rhs) in rows {
            terms.sort_unstable();
            self.constraints.push(Constraint { name, terms, sense, rhs });
        }
        self.census.push((family, self.constraints.len() - before));
    }
}

fn check_lambda(lambda: u64, min: u64) -> Result<()> {
    if lambda < min {
        return Err(Error::BadLambda { lambda, min });
    }
    Ok(())
}

/// Shared part: `Σ x = n`, unit points in the support, hyperplane caps.
fn base(g: &Geometry, d: u64) -> (Builder, usize, Vec<usize>) {
    let mut b = Builder { variables: Vec::new(), constraints: Vec::new(), census: Vec::new() };
    let n = b.var("n".into(), VarKind::Integer);
    let x: Vec<usize> = (0..g.num_points()).map(|i| b.var(format!("xP{i}"), VarKind::Integer)).collect();
    let mut card: Vec<(usize, i64)> = x.iter().map(|&v| (v, 1)).collect();
    card.push((n, -1));
    b.family("cardinality", [("card".to_string(), card, Sense::Eq, 0)]);
    b.family(
        "unit_support",
        (0..g.dim()).map(|i| (format!("unit{i}"), vec![(x[g.unit_point(i)], 1)], Sense::Ge, 1)),
    );
    b.family(
        "hyperplane",
        (0..g.num_hyperplanes()).map(|h| {
            let mut t: Vec<(usize, i64)> = g.hyperplane_points(h).iter().map(|&p| (x[p as usize], 1)).collect();
            t.push((n, -1));
            (format!("hyp{h}"), t, Sense::Le, -(d as i64))
        }),
    );
    (b, n, x)
}

/// Model for locality 1: every support point has multiplicity at least 2.
pub fn build_model_r1(g: &Geometry, d: u64, lambda: u64) -> Result<IlpModel> {
    check_lambda(lambda, 2)?;
    let (mut b, n, x) = base(g, d);
    let y: Vec<usize> = (0..g.num_points()).map(|i| b.var(format!("yP{i}"), VarKind::Binary)).collect();
    let np = g.num_points();
    b.family("x_ge_2y", (0..np).map(|p| (format!("lo{p}"), vec![(x[p], 1), (y[p], -2)], Sense::Ge, 0)));
    b.family("x_le_lambda_y", (0..np).map(|p| (format!("hi{p}"), vec![(x[p], 1), (y[p], -(lambda as i64))], Sense::Le, 0)));
    Ok(finish(g, d, 1, lambda, b, n))
}

/// Model for locality 2: every point of multiplicity one lies on a line
/// with two further support points.
pub fn build_model_r2(g: &Geometry, d: u64, lambda: u64) -> Result<IlpModel> {
    if g.dim() < 2 {
        return Err(Error::BadK { k: g.dim(), reason: "the locality-2 model needs lines; use the locality-1 model".into() });
    }
    check_lambda(lambda, 1)?;
    let (mut b, n, x) = base(g, d);
    let np = g.num_points();
    let y: Vec<usize> = (0..np).map(|i| b.var(format!("yP{i}"), VarKind::Binary)).collect();
    let u: Vec<usize> = (0..np).map(|i| b.var(format!("uP{i}"), VarKind::Binary)).collect();
    let z: Vec<usize> = (0..g.num_lines()).map(|j| b.var(format!("zL{j}"), VarKind::Binary)).collect();
    b.family("x_ge_u", (0..np).map(|p| (format!("pos{p}"), vec![(x[p], 1), (u[p], -1)], Sense::Ge, 0)));
    b.family("x_le_lambda_u", (0..np).map(|p| (format!("hi{p}"), vec![(x[p], 1), (u[p], -(lambda as i64))], Sense::Le, 0)));
    b.family("x_ge_2y", (0..np).map(|p| (format!("lo{p}"), vec![(x[p], 1), (y[p], -2)], Sense::Ge, 0)));
    b.family(
        "line_support",
        (0..g.num_lines()).map(|l| {
            let mut t: Vec<(usize, i64)> = g.line_points(l).iter().map(|&p| (u[p as usize], 1)).collect();
            t.push((z[l], -3));
            (format!("line{l}"), t, Sense::Ge, 0)
        }),
    );
    b.family(
        "covered",
        (0..np).map(|p| {
            let mut t: Vec<(usize, i64)> = vec![(y[p], 1), (u[p], -1)];
            t.extend(g.lines_through(p).iter().map(|&l| (z[l as usize], 1)));
            (format!("cov{p}"), t, Sense::Ge, 0)
        }),
    );
    Ok(finish(g, d, 2, lambda, b, n))
}

fn finish(g: &Geometry, d: u64, r: usize, lambda: u64, b: Builder, n: usize) -> IlpModel {
    IlpModel {
        q: g.q(),
        k: g.dim(),
        d,
        r,
        lambda,
        variables: b.variables,
        constraints: b.constraints,
        objective: n,
        fixed_n: None,
        census: b.census,
    }
}

impl IlpModel {
    pub fn census(&self) -> Census {
        Census { families: self.census.clone() }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Checks an assignment of all variables against every constraint.
    pub fn is_feasible(&self, values: &[i64]) -> bool {
        if self.fixed_n.is_some_and(|n| values[self.objective] != n as i64) {
            return false;
        }
        for (v, var) in self.variables.iter().enumerate() {
            if values[v] < 0 || (var.kind == VarKind::Binary && values[v] > 1) {
                return false;
            }
        }
        self.constraints.iter().all(|c| {
            let lhs: i64 = c.terms.iter().map(|&(v, a)| a * values[v]).sum();
            match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            }
        })
    }

    /// LP file text.
    pub fn to_lp(&self) -> String {
        let mut s = String::new();
        writeln!(s, "\\ minimum length, locality {}: q={} k={} d={} lambda={}", self.r, self.q, self.k, self.d, self.lambda)
            .unwrap();
        writeln!(s, "Minimize").unwrap();
        writeln!(s, " obj: {}", self.variables[self.objective].name).unwrap();
        writeln!(s, "Subject To").unwrap();
        for c in &self.constraints {
            let mut line = format!(" {}:", c.name);
            for &(v, a) in &c.terms {
                let name = &self.variables[v].name;
                let term = match a {
                    1 => format!(" + {name}"),
                    -1 => format!(" - {name}"),
                    a if a < 0 => format!(" - {} {name}", -a),
                    a => format!(" + {a} {name}"),
                };
                if line.len() + term.len() > 200 {
                    writeln!(s, "{line}").unwrap();
                    line = "   ".to_string();
                }
                line.push_str(&term);
            }
            writeln!(s, "{line} {} {}", c.sense.symbol(), c.rhs).unwrap();
        }
        if let Some(n) = self.fixed_n {
            writeln!(s, "Bounds").unwrap();
            writeln!(s, " {} = {n}", self.variables[self.objective].name).unwrap();
        }
        for (header, kind) in [("General", VarKind::Integer), ("Binary", VarKind::Binary)] {
            writeln!(s, "{header}").unwrap();
            let names: Vec<&str> =
                self.variables.iter().filter(|v| v.kind == kind).map(|v| v.name.as_str()).collect();
            for chunk in names.chunks(16) {
                writeln!(s, " {}", chunk.join(" ")).unwrap();
            }
        }
        writeln!(s, "End").unwrap();
        s
    }
}

/// A parsed LP file, kept by variable name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<(String, i64)>,
    pub constraints: Vec<(String, Vec<(String, i64)>, Sense, i64)>,
    pub fixed: Vec<(String, i64)>,
    pub general: Vec<String>,
    pub binary: Vec<String>,
}

/// Reads the subset of the LP file format written by [`IlpModel::to_lp`].
pub fn parse_lp(text: &str) -> Result<LpProblem> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Constraints,
        Bounds,
        General,
        Binary,
    }
    let mut section = Section::None;
    let mut lp = LpProblem { objective: Vec::new(), constraints: Vec::new(), fixed: Vec::new(), general: Vec::new(), binary: Vec::new() };
    let mut pending = String::new();
    let mut pending_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('\\').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        let next = match lower.as_str() {
            "minimize" | "minimum" | "min" => Some(Section::Objective),
            "subject to" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "general" | "generals" | "gen" => Some(Section::General),
            "binary" | "binaries" | "bin" => Some(Section::Binary),
            "end" => Some(Section::None),
            _ => None,
        };
        if let Some(next) = next {
            if !pending.trim().is_empty() {
                return Err(Error::parse(pending_line, 1, "unterminated constraint"));
            }
            section = next;
            continue;
        }
        match section {
            Section::Objective => {
                let body = line.split_once(':').map_or(line, |(_, b)| b);
                lp.objective = parse_terms(body, ln + 1)?;
            }
            Section::Constraints => {
                if pending.is_empty() {
                    pending_line = ln + 1;
                }
                pending.push(' ');
                pending.push_str(line);
                if let Some((sense, pos, len)) = find_sense(&pending) {
                    let (head, rhs) = (&pending[..pos], pending[pos + len..].trim());
                    let (name, body) = head
                        .split_once(':')
                        .ok_or_else(|| Error::parse(pending_line, 1, "constraint without a name"))?;
                    let rhs: i64 = rhs.parse().map_err(|_| Error::parse(ln + 1, 1, format!("bad right-hand side `{rhs}`")))?;
                    lp.constraints.push((name.trim().to_string(), parse_terms(body, pending_line)?, sense, rhs));
                    pending.clear();
                }
            }
            Section::Bounds => {
                let (name, val) =
                    line.split_once('=').ok_or_else(|| Error::parse(ln + 1, 1, "only fixed bounds `x = v` are supported"))?;
                let val: i64 = val.trim().parse().map_err(|_| Error::parse(ln + 1, 1, "bad bound value"))?;
                lp.fixed.push((name.trim().to_string(), val));
            }
            Section::General => lp.general.extend(line.split_whitespace().map(String::from)),
            Section::Binary => lp.binary.extend(line.split_whitespace().map(String::from)),
            Section::None => return Err(Error::parse(ln + 1, 1, format!("unexpected text `{line}`"))),
        }
    }
    Ok(lp)
}

fn find_sense(s: &str) -> Option<(Sense, usize, usize)> {
    for (pat, sense) in [("<=", Sense::Le), (">=", Sense::Ge), ("=<", Sense::Le), ("=>", Sense::Ge)] {
        if let Some(p) = s.find(pat) {
            return Some((sense, p, 2));
        }
    }
    s.find('=').map(|p| (Sense::Eq, p, 1))
}

fn parse_terms(body: &str, line: usize) -> Result<Vec<(String, i64)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut coef: Option<i64> = None;
    for tok in body.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(c) = tok.parse::<i64>() {
                    coef = Some(c);
                } else {
                    out.push((tok.to_string(), sign * coef.unwrap_or(1)));
                    sign = 1;
                    coef = None;
                }
            }
        }
    }
    if coef.is_some() {
        return Err(Error::parse(line, 1, "dangling coefficient"));
    }
    Ok(out)
}

impl LpProblem {
    /// True if this problem describes exactly the given model.
    pub fn matches(&self, model: &IlpModel) -> bool {
        let name = |v: usize| model.variables[v].name.clone();
        let cons: Vec<(String, Vec<(String, i64)>, Sense, i64)> = model
            .constraints
            .iter()
            .map(|c| (c.name.clone(), c.terms.iter().map(|&(v, a)| (name(v), a)).collect(), c.sense, c.rhs))
            .collect();
        let of = |kind| model.variables.iter().filter(|v| v.kind == kind).map(|v| v.name.clone()).collect::<Vec<_>>();
        self.objective == vec![(name(model.objective), 1)]
            && self.constraints == cons
            && self.general == of(VarKind::Integer)
            && self.binary == of(VarKind::Binary)
            && self.fixed == model.fixed_n.map(|n| (name(model.objective), n as i64)).into_iter().collect::<Vec<_>>()
    }
}

/// Options for [`solve_min_length`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Budget per length; `None` means unlimited.
    pub timeout: Option<Duration>,
    /// Emit a log line every this many search nodes.
    pub log_every: u64,
    /// Multiplicity cap; defaults to [`default_lambda`].
    pub lambda: Option<u64>,
    /// Largest geometry searched.
    pub max_points: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { timeout: Some(Duration::from_secs(300)), log_every: 1 << 22, lambda: None, max_points: 63 }
    }
}

/// Optimum length with a witness and the search log.
#[derive(Debug, Clone)]
pub struct Solution {
    pub n: u64,
    pub witness: PointMultiset,
    /// First length examined.
    pub start: u64,
    pub log: Vec<String>,
}

/// Length of a multiset that always works: `t` copies of every point.
fn simplex_upper(q: u32, k: usize, d: u64, r: usize) -> u64 {
    let t = d.div_ceil((q as u64).pow(k as u32 - 1)).max(if r == 1 { 2 } else { 1 });
    t * point_count(k as u32, q as u64)
}

/// Smallest length of a spanning multiset in `g` with distance at least
/// `d` and locality `r`, by deciding feasibility for increasing lengths.
/// The first feasible length is optimal because feasibility is monotone
/// in the length.
pub fn solve_min_length(g: &Arc<Geometry>, d: u64, r: usize, opts: &SolveOptions) -> Result<Solution> {
    check_instance(g, d, r, opts)?;
    let k = g.dim();
    let q = g.q();
    if k == 1 {
        let n = d.max(2);
        let mut w = PointMultiset::empty(Arc::clone(g));
        w.set(0, n as u32);
        return Ok(Solution { n, witness: w, start: n, log: vec![format!("n={n} closed form for k=1")] });
    }
    let start = griesmer(k, d, q).max(min_length_no_distance(k, r.min(2))? as u64);
    let upper = simplex_upper(q, k, d, r);
    let mut log = Vec::new();
    for n in start..=upper {
        match feasible_at(g, n, d, r, opts, &mut log) {
            Ok(Some(w)) => return Ok(Solution { n, witness: w, start, log }),
            Ok(None) => {}
            Err(Error::Timeout { .. }) => return Err(Error::Timeout { lower: n as usize, upper: Some(upper as usize) }),
            Err(e) => return Err(e),
        }
    }
    Err(Error::VerificationFailed(format!("no multiset up to the simplex length {upper}")))
}

fn check_instance(g: &Geometry, d: u64, r: usize, opts: &SolveOptions) -> Result<()> {
    if !(1..=2).contains(&r) {
        return Err(Error::BadR { r, reason: "the search handles r in {1, 2}".into() });
    }
    if d == 0 {
        return Err(Error::OutOfRange { value: 0, reason: "distance must be positive".into() });
    }
    if g.num_points() > opts.max_points {
        return Err(Error::SizeCap { what: "search points", size: g.num_points() as u128, cap: opts.max_points as u128 });
    }
    Ok(())
}

/// Decides whether a spanning multiset of cardinality `n` with distance at
/// least `d` and locality `r` exists. Returns the lexicographically first
/// witness in search order.
pub fn feasible_at(
    g: &Arc<Geometry>,
    n: u64,
    d: u64,
    r: usize,
    opts: &SolveOptions,
    log: &mut Vec<String>,
) -> Result<Option<PointMultiset>> {
    check_instance(g, d, r, opts)?;
    let k = g.dim();
    let q = g.q();
    if n < d {
        log.push(format!("n={n} infeasible: shorter than d"));
        return Ok(None);
    }
    if k == 1 {
        let ok = n >= d.max(2);
        log.push(format!("n={n} {} closed form for k=1", if ok { "feasible" } else { "infeasible" }));
        let mut w = PointMultiset::empty(Arc::clone(g));
        w.set(0, n as u32);
        return Ok(ok.then_some(w));
    }
    let lambda = opts.lambda.unwrap_or_else(|| default_lambda(k, d, q));
    let mut ub = lambda.min(n - d) as i64;
    if k >= 3 {
        ub = ub.min(multiplicity_upper(n, d, k, q));
    }
    let lb = multiplicity_lower(n, d, q);
    if ub < 1 || (lb as i64) > ub || (r == 1 && ub < 2) {
        log.push(format!("n={n} infeasible: multiplicity range [{lb}, {ub}] empty"));
        return Ok(None);
    }
    let mut s = Search::new(g, n, d, r, lb, ub as u64, opts);
    let start = Instant::now();
    s.log.push(format!("n={n} search: multiplicities in [{lb}, {ub}], cap n-d={}", n - d));
    let found = s.dfs(0);
    let elapsed = start.elapsed().as_secs_f64();
    log.append(&mut s.log);
    if s.timed_out {
        log.push(format!("n={n} timeout after {} nodes, {elapsed:.2}s", s.nodes));
        return Err(Error::Timeout { lower: n as usize, upper: None });
    }
    log.push(format!(
        "n={n} {} after {} nodes, {elapsed:.2}s",
        if found { "feasible" } else { "infeasible" },
        s.nodes
    ));
    if !found {
        return Ok(None);
    }
    let mults = s.x.iter().map(|&v| v as u32).collect();
    Ok(Some(PointMultiset::from_mults(Arc::clone(g), mults)?))
}

struct Search<'a> {
    g: &'a Geometry,
    n: u64,
    r: usize,
    cap: u64,
    ub: u64,
    /// Point visiting order: unit points first.
    order: Vec<usize>,
    units: usize,
    point_lb: Vec<u64>,
    x: Vec<i64>,
    assigned_sum: u64,
    unassigned: usize,
    lb_unassigned: u64,
    hyp_sum: Vec<u64>,
    hyp_unassigned: Vec<usize>,
    hyp_lb_unassigned: Vec<u64>,
    nodes: u64,
    log_every: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    log: Vec<String>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Geometry, n: u64, d: u64, r: usize, lb: u64, ub: u64, opts: &SolveOptions) -> Self {
        let np = g.num_points();
        let k = g.dim();
        let units: Vec<usize> = (0..k).map(|i| g.unit_point(i)).collect();
        let mut order = units.clone();
        order.extend((0..np).filter(|p| !units.contains(p)));
        let unit_min = if r == 1 { 2 } else { 1 };
        let mut point_lb = vec![lb; np];
        for &p in &order[..k] {
            point_lb[p] = point_lb[p].max(unit_min);
        }
        let hyp_unassigned: Vec<usize> = (0..np).map(|h| g.hyperplane_points(h).len()).collect();
        let hyp_lb_unassigned: Vec<u64> =
            (0..np).map(|h| g.hyperplane_points(h).iter().map(|&p| point_lb[p as usize]).sum()).collect();
        Search {
            g,
            n,
            r,
            cap: n - d,
            ub,
            order,
            units: k,
            lb_unassigned: point_lb.iter().sum(),
            point_lb,
            x: vec![-1; np],
            assigned_sum: 0,
            unassigned: np,
            hyp_sum: vec![0; np],
            hyp_unassigned,
            hyp_lb_unassigned,
            nodes: 0,
            log_every: opts.log_every.max(1),
            deadline: opts.timeout.map(|t| Instant::now() + t),
            timed_out: false,
            log: Vec::new(),
        }
    }

    fn assign(&mut self, p: usize, v: u64) {
        self.x[p] = v as i64;
        self.assigned_sum += v;
        self.unassigned -= 1;
        self.lb_unassigned -= self.point_lb[p];
        for &h in self.g.hyperplanes_through(p) {
            let h = h as usize;
            self.hyp_sum[h] += v;
            self.hyp_unassigned[h] -= 1;
            self.hyp_lb_unassigned[h] -= self.point_lb[p];
        }
    }

    fn unassign(&mut self, p: usize) {
        let v = self.x[p] as u64;
        self.x[p] = -1;
        self.assigned_sum -= v;
        self.unassigned += 1;
        self.lb_unassigned += self.point_lb[p];
        for &h in self.g.hyperplanes_through(p) {
            let h = h as usize;
            self.hyp_sum[h] -= v;
            self.hyp_unassigned[h] += 1;
            self.hyp_lb_unassigned[h] += self.point_lb[p];
        }
    }

    /// Mass and hyperplane capacity checks for the current partial assignment.
    fn consistent(&self) -> bool {
        let Some(rest) = self.n.checked_sub(self.assigned_sum) else {
            return false;
        };
        if rest < self.lb_unassigned || rest > self.ub * self.unassigned as u64 {
            return false;
        }
        for h in 0..self.hyp_sum.len() {
            let outside = (self.unassigned - self.hyp_unassigned[h]) as u64;
            let forced = rest.saturating_sub(self.ub * outside).max(self.hyp_lb_unassigned[h]);
            if self.hyp_sum[h] + forced > self.cap {
                return false;
            }
        }
        true
    }

    /// A multiplicity-one point can still get a line with two further
    /// support points.
    fn coverable(&self, p: usize) -> bool {
        self.g.lines_through(p).iter().any(|&l| {
            self.g.line_points(l as usize).iter().filter(|&&o| o as usize != p && self.x[o as usize] != 0).count() >= 2
        })
    }

    fn locality_ok(&self, p: usize, v: u64) -> bool {
        if self.r != 2 {
            return true;
        }
        if v == 1 && !self.coverable(p) {
            return false;
        }
        if v == 0 {
            for &l in self.g.lines_through(p) {
                for &o in self.g.line_points(l as usize) {
                    if self.x[o as usize] == 1 && !self.coverable(o as usize) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.assigned_sum == self.n;
        }
        let p = self.order[depth];
        let rest = self.n - self.assigned_sum;
        let mut hi = self.ub.min(rest - (self.lb_unassigned - self.point_lb[p]));
        if depth > 0 && depth < self.units {
            // unit points may be permuted freely: keep them non-increasing
            hi = hi.min(self.x[self.order[depth - 1]] as u64);
        }
        let lo = self.point_lb[p];
        for v in lo..=hi {
            if self.r == 1 && v == 1 {
                continue;
            }
            self.nodes += 1;
            if self.nodes.is_multiple_of(4096) {
                if let Some(dl) = self.deadline {
                    if Instant::now() >= dl {
                        self.timed_out = true;
                        return false;
                    }
                }
            }
            if self.nodes.is_multiple_of(self.log_every) {
                self.log.push(format!("n={} nodes={} depth={depth}", self.n, self.nodes));
            }
            self.assign(p, v);
            if self.consistent() && self.locality_ok(p, v) && self.dfs(depth + 1) {
                return true;
            }
            self.unassign(p);
            if self.timed_out {
                return false;
            }
        }
        false
    }
}
