//! `validate`, `check` and `compute`.

use std::fmt::Write as _;
use std::path::Path;

use tvspace::generation::{alexandroff_ae, alexandroff_aup, c_generated_structure, cmap_space, enumerate_probes};
use tvspace::quasi::{
    associated_quasi, discrete_quasi, indiscrete_quasi, is_quasi_continuous, reflect_to_cgenerated, validate_quasi,
};
use tvspace::space::{
    compact_witness, continuity_witness, coproduct, expo_witness, exponential_with, hausdorff_witness, product,
    separation_witness, subspace, validate_space,
};
use tvspace::{validate_quantale, Budget, Monad, Quantale, Space, ValidationReport, Value};

use crate::format::Word;
use crate::workspace::{parse_class_words, ClassSpec, Item, Workspace};
use crate::{CliError, Outcome};

pub fn load(path: &Path, budget: Budget) -> Result<Workspace, CliError> {
    let p = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: p.clone(), source })?;
    Workspace::parse(&src, budget).map_err(|err| CliError::Parse { path: p, err })
}

fn item_report(ws: &Workspace, item: &Item) -> Result<ValidationReport, CliError> {
    Ok(match item {
        Item::Quantale(q) => validate_quantale(q).laws,
        Item::Space { space, .. } => validate_space(space),
        Item::Map { dom, cod, map } => {
            let mut rep = ValidationReport::new();
            if let (Ok(x), Ok(y)) = (ws.space(dom), ws.space(cod)) {
                let c = continuity_witness(map, x, y)?.is_none();
                rep.note(format!("continuous {dom} -> {cod}: {c}"));
            } else if let (Ok(x), Ok(y)) = (ws.quasi(dom), ws.quasi(cod)) {
                let c = is_quasi_continuous(map, x, y)?;
                rep.note(format!("quasi-continuous {dom} -> {cod}: {c}"));
            }
            rep
        }
        Item::Quasi { quasi, .. } => validate_quasi(quasi)?,
    })
}

/// Run the validator of every object in file order.
pub fn validate(ws: &Workspace) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let mut failed = false;
    for (name, item) in ws.items() {
        let rep = item_report(ws, item)?;
        failed |= !rep.passed();
        let _ = write!(out, "{} {name}: {rep}", item.kind());
    }
    Ok(Outcome { text: out, code: if failed { crate::EXIT_VIOLATION } else { crate::EXIT_OK } })
}

/// The named space, if it passes its validator; otherwise the violation report.
fn valid_space<'a>(ws: &'a Workspace, name: &str) -> Result<Result<&'a Space, Outcome>, CliError> {
    let s = ws.space(name)?;
    let rep = validate_space(s);
    if rep.passed() {
        Ok(Ok(s))
    } else {
        Ok(Err(Outcome::violation(format!("space {name} is not valid: {rep}"))))
    }
}

macro_rules! valid {
    ($ws:expr, $name:expr) => {
        match valid_space($ws, $name)? {
            Ok(s) => s,
            Err(o) => return Ok(o),
        }
    };
}

fn cli_words(s: &str) -> Vec<Word> {
    s.split([':', ','])
        .filter(|t| !t.is_empty())
        .map(|t| Word { text: t.to_string(), pos: crate::Pos { line: 0, col: 0 } })
        .collect()
}

/// Merge the objects of `other` into `ws`; equal redefinitions are accepted.
fn import(ws: &mut Workspace, other: &Workspace) -> Result<(), CliError> {
    for (name, item) in other.items() {
        match ws.get(name) {
            Some(existing) if existing == item => {}
            Some(_) => return Err(CliError::Usage(format!("class file redefines {name:?} differently"))),
            None => ws.insert(name, item.clone())?,
        }
    }
    Ok(())
}

/// `compact-hausdorff-upto:n`, `sierpinski`, `sierpinski:v,…`, `explicit:S,…`, or a
/// comma-separated list of files whose spaces form an explicit class.
pub fn resolve_class(ws: &mut Workspace, flag: &str, q: &Quantale) -> Result<ClassSpec, CliError> {
    let head = flag.split(':').next().unwrap_or("");
    if matches!(head, "compact-hausdorff-upto" | "explicit") {
        return parse_class_words(&cli_words(flag), q)
            .map_err(|e| CliError::Usage(format!("--class {flag}: {}", e.msg)));
    }
    if head == "sierpinski" {
        let mut ws_ = cli_words(flag);
        if ws_.len() > 1 {
            ws_.insert(1, Word { text: "grid".into(), pos: crate::Pos { line: 0, col: 0 } });
        }
        return parse_class_words(&ws_, q).map_err(|e| CliError::Usage(format!("--class {flag}: {}", e.msg)));
    }
    let mut names = Vec::new();
    for part in flag.split(',') {
        let other = load(Path::new(part), *ws.budget())?;
        import(ws, &other)?;
        names.extend(other.items().iter().filter(|(_, i)| matches!(i, Item::Space { .. })).map(|(n, _)| n.clone()));
    }
    if names.is_empty() {
        return Err(CliError::Usage(format!("--class {flag}: no spaces found")));
    }
    Ok(ClassSpec::Explicit(names))
}

fn parse_grid(flag: Option<&str>, q: &Quantale) -> Result<Option<Vec<Value>>, CliError> {
    flag.map(|g| g.split(',').map(|v| q.parse_value(v).map_err(|m| CliError::Usage(format!("--grid: {m}")))).collect())
        .transpose()
}

#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub class: Option<String>,
    pub grid: Option<String>,
    pub name: Option<String>,
}

fn need_class(flags: &Flags, what: &str) -> Result<String, CliError> {
    flags.class.clone().ok_or_else(|| CliError::Usage(format!("{what} needs --class")))
}

fn verdict(w: Option<String>) -> Outcome {
    match w {
        None => Outcome::ok("true\n"),
        Some(w) => Outcome::violation(format!("false, witness ({w})\n")),
    }
}

fn first_difference(a: &Space, b: &Space) -> Option<String> {
    let q = a.quantale();
    let (ra, rb) = (a.structure(), b.structure());
    (0..ra.dom().len())
        .flat_map(|s| (0..a.len()).map(move |i| (s, i)))
        .find(|&(s, i)| ra.get(s, i) != rb.get(s, i))
        .map(|(s, i)| {
            format!(
                "{}, {}, {}, {}",
                ra.dom().label(s),
                a.carrier().label(i),
                q.format_value(&ra.get(s, i)),
                q.format_value(&rb.get(s, i))
            )
        })
}

pub const PREDICATES: &[&str] =
    &["compact", "hausdorff", "separated", "exponentiable", "c-generated", "alexandroff", "continuous", "c-continuous"];

/// Evaluate a predicate on a space or map; `true` exits 0, `false` exits 1 with a witness.
pub fn check(ws: &mut Workspace, target: &str, predicate: &str, flags: &Flags) -> Result<Outcome, CliError> {
    if let Some(Item::Map { dom, cod, map }) = ws.get(target).cloned() {
        let x = valid!(ws, &dom).clone();
        let y = valid!(ws, &cod).clone();
        return match predicate {
            "continuous" => Ok(verdict(continuity_witness(&map, &x, &y)?.map(|(s, i)| {
                let tx = x.monad().t_carrier(x.carrier());
                format!("{}, {}", tx.label(s), x.carrier().label(i))
            }))),
            "c-continuous" => {
                let spec = resolve_class(ws, &need_class(flags, "c-continuous")?, x.quantale())?;
                let class = ws.build_class(&spec, x.quantale(), x.monad())?;
                for p in enumerate_probes(&class, &x)? {
                    let fp = p.map.then(&map)?;
                    if continuity_witness(&fp, &class.objects()[p.object], &y)?.is_some() {
                        return Ok(verdict(Some(format!("{}, {}", class.describe_object(p.object), p.map))));
                    }
                }
                Ok(verdict(None))
            }
            _ => Err(CliError::Usage(format!(
                "predicate {predicate:?} does not apply to map {target}; use continuous or c-continuous"
            ))),
        };
    }
    let x = valid!(ws, target).clone();
    let q = x.quantale().clone();
    let tx = x.monad().t_carrier(x.carrier());
    let pt = |i: usize| x.carrier().label(i).to_string();
    Ok(match predicate {
        "compact" => verdict(compact_witness(&x).map(|s| tx.label(s).to_string())),
        "hausdorff" => verdict(hausdorff_witness(&x).map(|(i, j, s)| format!("{}, {}, {}", pt(i), pt(j), tx.label(s)))),
        "separated" => verdict(separation_witness(&x).map(|(i, j)| format!("{}, {}", pt(i), pt(j)))),
        "exponentiable" => verdict(expo_witness(&x, ws.budget())?.map(|w| {
            let ttx = x.monad().t_carrier(&tx);
            format!(
                "{}, {}, u={}, v={}, {} < {}",
                ttx.label(w.big),
                pt(w.point),
                q.format_value(&w.u),
                q.format_value(&w.v),
                q.format_value(&w.lhs),
                q.format_value(&w.rhs)
            )
        })),
        "c-generated" => {
            let spec = resolve_class(ws, &need_class(flags, "c-generated")?, &q)?;
            let class = ws.build_class(&spec, &q, x.monad())?;
            verdict(first_difference(&x, &c_generated_structure(&x, &class)?))
        }
        "alexandroff" => {
            let grid = parse_grid(flags.grid.as_deref(), &q)?;
            let class = tvspace::ProbeClass::sierpinski(&q, x.monad(), grid.as_deref())?.with_budget(*ws.budget());
            verdict(first_difference(&x, &c_generated_structure(&x, &class)?))
        }
        "continuous" | "c-continuous" => {
            return Err(CliError::Usage(format!("{predicate} applies to maps, and {target} is a space")))
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown predicate {other:?}; expected one of {}",
                PREDICATES.join(", ")
            )))
        }
    })
}

pub const OPERATIONS: &[&str] = &[
    "coreflect",
    "exponential",
    "cmap",
    "product",
    "coproduct",
    "subspace",
    "Ae",
    "Aup",
    "associate",
    "discrete-quasi",
    "indiscrete-quasi",
    "reflect-quasi",
];

fn arity(op: &str, args: &[String], n: usize) -> Result<(), CliError> {
    if args.len() < n {
        return Err(CliError::Usage(format!("{op} needs {n} argument(s)")));
    }
    Ok(())
}

/// Carry the quantale declaration `qname` (and class spaces) from `ws` into `out`.
fn seed(out: &mut Workspace, ws: &Workspace, qname: &str, spec: Option<&ClassSpec>) -> Result<(), CliError> {
    out.insert(qname, Item::Quantale(ws.quantale(qname)?.clone()))?;
    if let Some(ClassSpec::Explicit(names)) = spec {
        for n in names {
            let qn = ws.quantale_name(n).unwrap_or(qname);
            if out.get(qn).is_none() {
                out.insert(qn, Item::Quantale(ws.quantale(qn)?.clone()))?;
            }
            out.insert(n, Item::Space { quantale: qn.to_string(), space: ws.space(n)?.clone() })?;
        }
    }
    Ok(())
}

/// Run a construction and serialize the result, with the quantale it refers to, in the
/// text format.
pub fn compute(ws: &mut Workspace, op: &str, args: &[String], flags: &Flags) -> Result<Outcome, CliError> {
    arity(op, args, 1)?;
    let first = &args[0];
    let qname =
        ws.quantale_name(first).ok_or_else(|| CliError::Usage(format!("{first:?} is not a space")))?.to_string();
    let name = flags.name.clone().unwrap_or_else(|| {
        let mut n = op.to_string();
        for a in args {
            n.push('_');
            n.push_str(a);
        }
        n
    });
    let mut warnings: Vec<String> = Vec::new();
    let mut out = Workspace::new(*ws.budget());
    let result: Item = match op {
        "reflect-quasi" => {
            let q = ws.quasi(first)?;
            let rep = validate_quasi(q)?;
            if !rep.passed() {
                return Ok(Outcome::violation(format!("quasi {first} is not valid: {rep}")));
            }
            seed(&mut out, ws, &qname, None)?;
            Item::Space { quantale: qname.clone(), space: reflect_to_cgenerated(q)? }
        }
        "associate" | "discrete-quasi" | "indiscrete-quasi" => {
            let x = valid!(ws, first).clone();
            let spec = resolve_class(ws, &need_class(flags, op)?, x.quantale())?;
            let qc = ws.quasi_class(&spec, x.quantale(), x.monad())?;
            let quasi = match op {
                "associate" => associated_quasi(&x, &qc)?,
                "discrete-quasi" => discrete_quasi(x.carrier(), &qc)?,
                _ => indiscrete_quasi(x.carrier(), &qc)?,
            };
            seed(&mut out, ws, &qname, Some(&spec))?;
            Item::Quasi { quantale: qname.clone(), class: spec, quasi }
        }
        _ => {
            let x = valid!(ws, first).clone();
            let second = || -> Result<Space, CliError> {
                arity(op, args, 2)?;
                Ok(ws.space(&args[1])?.clone())
            };
            let space = match op {
                "coreflect" => {
                    let spec = resolve_class(ws, &need_class(flags, op)?, x.quantale())?;
                    let class = ws.build_class(&spec, x.quantale(), x.monad())?;
                    c_generated_structure(&x, &class)?
                }
                "exponential" => {
                    let z = second()?;
                    valid!(ws, &args[1]);
                    exponential_with(&x, &z, ws.budget())?.space
                }
                "cmap" => {
                    let z = second()?;
                    valid!(ws, &args[1]);
                    let spec = resolve_class(ws, &need_class(flags, op)?, x.quantale())?;
                    let class = ws.build_class(&spec, x.quantale(), x.monad())?;
                    let fs = cmap_space(&x, &z, &class)?;
                    warnings = fs.warnings.clone();
                    fs.space
                }
                "product" => {
                    let y = second()?;
                    valid!(ws, &args[1]);
                    product(&x, &y)?
                }
                "coproduct" => {
                    let mut parts = vec![x.clone()];
                    for a in &args[1..] {
                        parts.push(valid!(ws, a).clone());
                    }
                    let refs: Vec<&Space> = parts.iter().collect();
                    coproduct(&refs)?
                }
                "subspace" => {
                    let idx = args[1..]
                        .iter()
                        .map(|l| {
                            x.carrier()
                                .index_of(l)
                                .ok_or_else(|| CliError::Usage(format!("{l:?} is not a point of {first}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    subspace(&x, &idx)?.0
                }
                "Ae" => alexandroff_ae(&x)?,
                "Aup" => {
                    let m = match args.get(1) {
                        None => Monad::UltrafilterFinite,
                        Some(m) => {
                            Monad::from_name(m).ok_or_else(|| CliError::Usage(format!("unknown monad {m:?}")))?
                        }
                    };
                    alexandroff_aup(&x, m)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown operation {other:?}; expected one of {}",
                        OPERATIONS.join(", ")
                    )))
                }
            };
            seed(&mut out, ws, &qname, None)?;
            Item::Space { quantale: qname.clone(), space }
        }
    };
    out.insert(&name, result)?;
    let mut text = String::new();
    for w in &warnings {
        let _ = writeln!(text, "# warning: {w}");
    }
    text.push_str(&out.print()?);
    Ok(Outcome::ok(text))
}

/// `compute`, parsed back into a workspace.
pub fn compute_workspace(ws: &mut Workspace, op: &str, args: &[String], flags: &Flags) -> Result<Workspace, CliError> {
    let o = compute(ws, op, args, flags)?;
    if o.code != crate::EXIT_OK {
        return Err(CliError::Usage(o.text));
    }
    Workspace::parse(&o.text, *ws.budget()).map_err(|err| CliError::Parse { path: "<compute output>".into(), err })
}
