//! Named objects loaded from the text format, and their canonical printing.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use tvspace::quantale::TableOrigin;
use tvspace::quasi::QuasiClass;
use tvspace::{Budget, Carrier, MapArrow, Monad, ProbeClass, Quantale, QuantaleKind, QuasiSpace, Space, Value};

use crate::format::{is_word, parse_blocks, Block, ParseError, Pos, Stmt, Word};

/// How a probe class is specified, in files and on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    CompactHausdorffUpto(usize),
    Sierpinski(Option<Vec<Value>>),
    Explicit(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Quantale(Quantale),
    Space { quantale: String, space: Space },
    Map { dom: String, cod: String, map: MapArrow },
    Quasi { quantale: String, class: ClassSpec, quasi: QuasiSpace },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Quantale(_) => "quantale",
            Item::Space { .. } => "space",
            Item::Map { .. } => "map",
            Item::Quasi { .. } => "quasi",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    items: Vec<(String, Item)>,
    index: HashMap<String, usize>,
    budget: Budget,
    classes: HashMap<(String, String), Arc<QuasiClass>>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

fn err(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new(pos, msg)
}

/// A statement with the rows that follow it, when it opens a matrix.
struct Section<'a> {
    stmt: &'a Stmt,
    rows: Vec<&'a [Word]>,
}

fn sections<'a>(
    b: &'a Block,
    keys: &[&str],
    matrices: &[&str],
    repeatable: &[&str],
) -> Result<Vec<Section<'a>>, ParseError> {
    let mut out: Vec<Section<'a>> = Vec::new();
    for s in &b.stmts {
        let head = s.head();
        if keys.contains(&head) {
            if !repeatable.contains(&head) && out.iter().any(|o| o.stmt.head() == head) {
                return Err(err(s.pos(), format!("`{head}` given twice in {} {}", b.kind.text, b.name.text)));
            }
            let mut sec = Section { stmt: s, rows: Vec::new() };
            if matrices.contains(&head) && !s.args().is_empty() {
                sec.rows.push(s.args());
            }
            out.push(sec);
        } else {
            match out.last_mut() {
                Some(sec) if matrices.contains(&sec.stmt.head()) => sec.rows.push(&s.words),
                _ => {
                    return Err(err(
                        s.pos(),
                        format!(
                            "unknown statement `{head}` in {} {}; expected one of {}",
                            b.kind.text,
                            b.name.text,
                            keys.join(", ")
                        ),
                    ))
                }
            }
        }
    }
    Ok(out)
}

fn find<'s, 'a>(secs: &'s [Section<'a>], key: &str) -> Option<&'s Section<'a>> {
    secs.iter().find(|s| s.stmt.head() == key)
}

fn require<'s, 'a>(secs: &'s [Section<'a>], key: &str, b: &Block) -> Result<&'s Section<'a>, ParseError> {
    find(secs, key).ok_or_else(|| err(b.name.pos, format!("{} {} is missing `{key}`", b.kind.text, b.name.text)))
}

fn single(s: &Stmt) -> Result<&Word, ParseError> {
    match s.args() {
        [w] => Ok(w),
        _ => Err(err(s.pos(), format!("`{}` takes exactly one argument", s.head()))),
    }
}

fn parse_usize(w: &Word) -> Result<usize, ParseError> {
    w.text.parse().map_err(|_| err(w.pos, format!("expected a non-negative integer, got {:?}", w.text)))
}

fn parse_value(q: &Quantale, w: &Word) -> Result<Value, ParseError> {
    q.parse_value(&w.text).map_err(|m| err(w.pos, m))
}

fn core(pos: Pos, e: tvspace::Error) -> ParseError {
    err(pos, e.to_string())
}

/// `kind:arg` on the command line, `kind arg…` in files.
pub fn parse_class_words(words: &[Word], q: &Quantale) -> Result<ClassSpec, ParseError> {
    let Some((head, rest)) = words.split_first() else {
        return Err(err(Pos { line: 0, col: 0 }, "empty class specification"));
    };
    match head.text.as_str() {
        "compact-hausdorff-upto" => match rest {
            [n] => Ok(ClassSpec::CompactHausdorffUpto(parse_usize(n)?)),
            _ => Err(err(head.pos, "compact-hausdorff-upto takes one size")),
        },
        "sierpinski" => match rest {
            [] => Ok(ClassSpec::Sierpinski(None)),
            [g, vals @ ..] if g.text == "grid" => {
                Ok(ClassSpec::Sierpinski(Some(vals.iter().map(|w| parse_value(q, w)).collect::<Result<_, _>>()?)))
            }
            _ => Err(err(head.pos, "expected `sierpinski` or `sierpinski grid v…`")),
        },
        "explicit" => Ok(ClassSpec::Explicit(rest.iter().map(|w| w.text.clone()).collect())),
        other => Err(err(
            head.pos,
            format!("unknown class kind {other:?}; expected compact-hausdorff-upto, sierpinski or explicit"),
        )),
    }
}

impl Workspace {
    pub fn new(budget: Budget) -> Workspace {
        Workspace { budget, ..Default::default() }
    }

    pub fn parse(src: &str, budget: Budget) -> Result<Workspace, ParseError> {
        let mut ws = Workspace::new(budget);
        for b in parse_blocks(src)? {
            let item = match b.kind.text.as_str() {
                "quantale" => ws.load_quantale(&b)?,
                "space" => ws.load_space(&b)?,
                "map" => ws.load_map(&b)?,
                "quasi" => ws.load_quasi(&b)?,
                other => {
                    return Err(err(
                        b.kind.pos,
                        format!("unknown block kind {other:?}; expected quantale, space, map or quasi"),
                    ))
                }
            };
            ws.insert(&b.name.text, item).map_err(|m| err(b.name.pos, m))?;
        }
        Ok(ws)
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn items(&self) -> &[(String, Item)] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.index.get(name).map(|&i| &self.items[i].1)
    }

    pub fn insert(&mut self, name: &str, item: Item) -> Result<(), String> {
        if !is_word(name) {
            return Err(format!("{name:?} is not a valid name"));
        }
        if self.index.contains_key(name) {
            return Err(format!("name {name:?} is already defined"));
        }
        self.index.insert(name.to_string(), self.items.len());
        self.items.push((name.to_string(), item));
        Ok(())
    }

    pub fn quantale(&self, name: &str) -> Result<&Quantale, String> {
        match self.get(name) {
            Some(Item::Quantale(q)) => Ok(q),
            Some(i) => Err(format!("{name:?} is a {}, not a quantale", i.kind())),
            None => Err(format!("unknown quantale {name:?}")),
        }
    }

    pub fn space(&self, name: &str) -> Result<&Space, String> {
        match self.get(name) {
            Some(Item::Space { space, .. }) => Ok(space),
            Some(i) => Err(format!("{name:?} is a {}, not a space", i.kind())),
            None => Err(format!("unknown space {name:?}")),
        }
    }

    /// Name of the quantale declaration a space or quasi-space refers to.
    pub fn quantale_name<'a>(&'a self, name: &'a str) -> Option<&'a str> {
        match self.get(name)? {
            Item::Space { quantale, .. } | Item::Quasi { quantale, .. } => Some(quantale),
            Item::Quantale(_) => Some(name),
            Item::Map { .. } => None,
        }
    }

    pub fn quasi(&self, name: &str) -> Result<&QuasiSpace, String> {
        match self.get(name) {
            Some(Item::Quasi { quasi, .. }) => Ok(quasi),
            Some(i) => Err(format!("{name:?} is a {}, not a quasi-space", i.kind())),
            None => Err(format!("unknown quasi-space {name:?}")),
        }
    }

    fn carrier_of(&self, name: &str) -> Result<&Carrier, String> {
        match self.get(name) {
            Some(Item::Space { space, .. }) => Ok(space.carrier()),
            Some(Item::Quasi { quasi, .. }) => Ok(quasi.carrier()),
            Some(i) => Err(format!("{name:?} is a {}, not a space or quasi-space", i.kind())),
            None => Err(format!("unknown space {name:?}")),
        }
    }

    pub fn build_class(&self, spec: &ClassSpec, q: &Quantale, monad: Monad) -> Result<ProbeClass, tvspace::Error> {
        let class = match spec {
            ClassSpec::CompactHausdorffUpto(n) => ProbeClass::compact_hausdorff_upto(monad, q, *n, &self.budget)?,
            ClassSpec::Sierpinski(grid) => ProbeClass::sierpinski(q, monad, grid.as_deref())?,
            ClassSpec::Explicit(names) => {
                let objs = names
                    .iter()
                    .map(|n| self.space(n).cloned().map_err(tvspace::Error::Type))
                    .collect::<Result<Vec<_>, _>>()?;
                ProbeClass::explicit(objs)?
            }
        };
        Ok(class.with_budget(self.budget))
    }

    /// The quasi class for a spec, shared between quasi-spaces loaded with the same spec.
    pub fn quasi_class(
        &mut self,
        spec: &ClassSpec,
        q: &Quantale,
        monad: Monad,
    ) -> Result<Arc<QuasiClass>, tvspace::Error> {
        let key = (format!("{spec:?}"), format!("{q:?}/{}", monad.name()));
        if let Some(c) = self.classes.get(&key) {
            return Ok(c.clone());
        }
        let c = QuasiClass::new(self.build_class(spec, q, monad)?)?;
        self.classes.insert(key, c.clone());
        Ok(c)
    }

    fn load_quantale(&self, b: &Block) -> Result<Item, ParseError> {
        let secs = sections(b, &["kind", "elements", "order", "tensor", "unit"], &["order", "tensor"], &[])?;
        let kind = require(&secs, "kind", b)?.stmt;
        let args = kind.args();
        let name = args.first().ok_or_else(|| err(kind.pos(), "`kind` needs a quantale kind"))?;
        let n_arg = || match args {
            [_, n] => parse_usize(n),
            _ => Err(err(kind.pos(), format!("`kind {}` takes one size", name.text))),
        };
        let no_arg = || {
            if args.len() == 1 {
                Ok(())
            } else {
                Err(err(kind.pos(), format!("`kind {}` takes no arguments", name.text)))
            }
        };
        let not_table = |secs: &[Section]| match secs.iter().find(|s| s.stmt.head() != "kind") {
            Some(s) => {
                Err(err(s.stmt.pos(), format!("`{}` is only allowed for finite-table quantales", s.stmt.head())))
            }
            None => Ok(()),
        };
        let q = match name.text.as_str() {
            "bool2" => {
                no_arg()?;
                not_table(&secs)?;
                Quantale::bool2()
            }
            "chain" => {
                not_table(&secs)?;
                Quantale::chain(n_arg()?).map_err(|e| core(kind.pos(), e))?
            }
            "cost-plus" => {
                no_arg()?;
                not_table(&secs)?;
                Quantale::cost_plus()
            }
            "cost-max" => {
                no_arg()?;
                not_table(&secs)?;
                Quantale::cost_max()
            }
            "lukasiewicz-grid" => {
                not_table(&secs)?;
                let n = n_arg()?;
                let n = u32::try_from(n).map_err(|_| err(kind.pos(), "grid size too large"))?;
                Quantale::lukasiewicz_grid(n).map_err(|e| core(kind.pos(), e))?
            }
            "finite-table" => {
                no_arg()?;
                let els = require(&secs, "elements", b)?.stmt;
                let labels: Vec<String> = els.args().iter().map(|w| w.text.clone()).collect();
                let idx = |w: &Word| {
                    labels.iter().position(|l| *l == w.text).ok_or_else(|| err(w.pos, format!("unknown element {:?}", w.text)))
                };
                let order_sec = require(&secs, "order", b)?;
                let order = order_sec
                    .rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|w| match w.text.as_str() {
                                "1" => Ok(true),
                                "0" => Ok(false),
                                _ => Err(err(w.pos, format!("order entries are 0 or 1, got {:?}", w.text))),
                            })
                            .collect::<Result<Vec<bool>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let tensor = require(&secs, "tensor", b)?
                    .rows
                    .iter()
                    .map(|r| r.iter().map(idx).collect::<Result<Vec<usize>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let unit = idx(single(require(&secs, "unit", b)?.stmt)?)?;
                Quantale::finite_table(labels.clone(), &order, &tensor, unit).map_err(|e| core(b.name.pos, e))?
            }
            other => {
                return Err(err(
                    name.pos,
                    format!("unknown quantale kind {other:?}; expected bool2, chain, cost-plus, cost-max, lukasiewicz-grid or finite-table"),
                ))
            }
        };
        Ok(Item::Quantale(q))
    }

    fn setting(&self, secs: &[Section], b: &Block) -> Result<(String, Quantale, Monad), ParseError> {
        let qw = single(require(secs, "quantale", b)?.stmt)?;
        let q = self.quantale(&qw.text).map_err(|m| err(qw.pos, m))?.clone();
        let mw = single(require(secs, "monad", b)?.stmt)?;
        let m = Monad::from_name(&mw.text).ok_or_else(|| {
            err(mw.pos, format!("unknown monad {:?}; expected identity or ultrafilter-finite", mw.text))
        })?;
        Ok((qw.text.clone(), q, m))
    }

    fn carrier_words(s: &Stmt) -> Result<Carrier, ParseError> {
        for w in s.args() {
            if w.text.contains("->") {
                return Err(err(w.pos, format!("carrier label {:?} may not contain `->`", w.text)));
            }
        }
        Carrier::new(s.args().iter().map(|w| w.text.clone())).map_err(|e| core(s.pos(), e))
    }

    fn load_space(&self, b: &Block) -> Result<Item, ParseError> {
        let secs = sections(b, &["quantale", "monad", "carrier", "matrix"], &["matrix"], &[])?;
        let (qname, q, monad) = self.setting(&secs, b)?;
        let carrier = Self::carrier_words(require(&secs, "carrier", b)?.stmt)?;
        let m = require(&secs, "matrix", b)?;
        let n = carrier.len();
        if m.rows.len() != n {
            return Err(err(m.stmt.pos(), format!("matrix has {} rows, expected {n}", m.rows.len())));
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in &m.rows {
            if r.len() != n {
                return Err(err(r[0].pos, format!("matrix row has {} entries, expected {n}", r.len())));
            }
            for w in *r {
                entries.push(parse_value(&q, w)?);
            }
        }
        let space = Space::from_matrix(carrier, monad, q, entries).map_err(|e| core(m.stmt.pos(), e))?;
        Ok(Item::Space { quantale: qname, space })
    }

    fn load_map(&self, b: &Block) -> Result<Item, ParseError> {
        let mut dom = None;
        let mut cod = None;
        let mut pairs: Vec<&Word> = Vec::new();
        for s in &b.stmts {
            match s.head() {
                "dom" | "cod" => {
                    let slot = if s.head() == "dom" { &mut dom } else { &mut cod };
                    if slot.is_some() {
                        return Err(err(s.pos(), format!("`{}` given twice in map {}", s.head(), b.name.text)));
                    }
                    *slot = Some(single(s)?);
                }
                _ => pairs.extend(s.words.iter()),
            }
        }
        let dom = dom.ok_or_else(|| err(b.name.pos, format!("map {} is missing `dom`", b.name.text)))?;
        let cod = cod.ok_or_else(|| err(b.name.pos, format!("map {} is missing `cod`", b.name.text)))?;
        let dc = self.carrier_of(&dom.text).map_err(|m| err(dom.pos, m))?;
        let cc = self.carrier_of(&cod.text).map_err(|m| err(cod.pos, m))?;
        let mut table: Vec<Option<usize>> = vec![None; dc.len()];
        for w in pairs {
            let (a, x) =
                w.text.split_once("->").ok_or_else(|| err(w.pos, format!("expected `a->x`, got {:?}", w.text)))?;
            let i = dc.index_of(a).ok_or_else(|| err(w.pos, format!("{a:?} is not a point of {}", dom.text)))?;
            let j = cc.index_of(x).ok_or_else(|| err(w.pos, format!("{x:?} is not a point of {}", cod.text)))?;
            if table[i].replace(j).is_some() {
                return Err(err(w.pos, format!("{a:?} is mapped twice")));
            }
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| err(b.end, format!("map {} does not send {:?} anywhere", b.name.text, dc.label(i))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = MapArrow::new(dc.clone(), cc.clone(), table).map_err(|e| core(b.name.pos, e))?;
        Ok(Item::Map { dom: dom.text.clone(), cod: cod.text.clone(), map })
    }

    fn load_quasi(&mut self, b: &Block) -> Result<Item, ParseError> {
        let secs = sections(b, &["quantale", "monad", "class", "carrier", "adm"], &[], &["adm"])?;
        let (qname, q, monad) = self.setting(&secs, b)?;
        let cs = require(&secs, "class", b)?.stmt;
        let spec =
            parse_class_words(cs.args(), &q).map_err(|e| if e.pos.line == 0 { err(cs.pos(), e.msg) } else { e })?;
        let qc = self.quasi_class(&spec, &q, monad).map_err(|e| core(cs.pos(), e))?;
        let carrier = Self::carrier_words(require(&secs, "carrier", b)?.stmt)?;
        let mut adm: Vec<Vec<MapArrow>> = vec![Vec::new(); qc.len()];
        for s in secs.iter().filter(|s| s.stmt.head() == "adm") {
            let (iw, labels) =
                s.stmt.args().split_first().ok_or_else(|| err(s.stmt.pos(), "`adm` needs a class object index"))?;
            let i = parse_usize(iw)?;
            if i >= qc.len() {
                return Err(err(iw.pos, format!("class has {} objects, no object {i}", qc.len())));
            }
            let dom = qc.object(i).carrier();
            if labels.len() != dom.len() {
                return Err(err(
                    s.stmt.pos(),
                    format!("class object {i} has {} points, got {} images", dom.len(), labels.len()),
                ));
            }
            let table = labels
                .iter()
                .map(|w| {
                    carrier
                        .index_of(&w.text)
                        .ok_or_else(|| err(w.pos, format!("{:?} is not a point of {}", w.text, b.name.text)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            adm[i].push(MapArrow::new(dom.clone(), carrier.clone(), table).map_err(|e| core(s.stmt.pos(), e))?);
        }
        let quasi = QuasiSpace::new(carrier, &qc, adm).map_err(|e| core(b.name.pos, e))?;
        Ok(Item::Quasi { quantale: qname, class: spec, quasi })
    }

    /// Canonical text: blocks in definition order, one blank line between them.
    pub fn print(&self) -> Result<String, String> {
        let mut out = String::new();
        for (i, (name, item)) in self.items.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            print_item(&mut out, name, item, self)?;
        }
        Ok(out)
    }
}

fn word<'a>(s: &'a str, what: &str) -> Result<&'a str, String> {
    if is_word(s) {
        Ok(s)
    } else {
        Err(format!("{what} {s:?} cannot be written as a single word"))
    }
}

fn labels(c: &Carrier) -> Result<String, String> {
    let ws = c
        .labels()
        .iter()
        .map(|l| {
            if l.contains("->") {
                Err(format!("carrier label {l:?} contains `->`"))
            } else {
                word(l, "carrier label")
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ws.join(" "))
}

fn line(out: &mut String, indent: usize, head: &str, rest: &str) {
    let _ = write!(out, "{:indent$}{head}", "");
    if !rest.is_empty() {
        out.push(' ');
        out.push_str(rest);
    }
    out.push('\n');
}

pub fn print_class(spec: &ClassSpec, q: &Quantale) -> String {
    match spec {
        ClassSpec::CompactHausdorffUpto(n) => format!("compact-hausdorff-upto {n}"),
        ClassSpec::Sierpinski(None) => "sierpinski".into(),
        ClassSpec::Sierpinski(Some(g)) => {
            let vals: Vec<String> = g.iter().map(|v| q.format_value(v)).collect();
            format!("sierpinski grid {}", vals.join(" ")).trim_end().to_string()
        }
        ClassSpec::Explicit(names) => format!("explicit {}", names.join(" ")).trim_end().to_string(),
    }
}

fn print_item(out: &mut String, name: &str, item: &Item, ws: &Workspace) -> Result<(), String> {
    line(out, 0, item.kind(), &format!("{} {{", word(name, "name")?));
    match item {
        Item::Quantale(q) => match q.kind() {
            QuantaleKind::Bool2 => line(out, 2, "kind", "bool2"),
            QuantaleKind::CostPlus => line(out, 2, "kind", "cost-plus"),
            QuantaleKind::CostMax => line(out, 2, "kind", "cost-max"),
            QuantaleKind::LukasiewiczGrid(n) => line(out, 2, "kind", &format!("lukasiewicz-grid {n}")),
            QuantaleKind::FiniteTable => {
                let t = q.table().expect("finite table");
                if let TableOrigin::Chain(n) = t.origin() {
                    line(out, 2, "kind", &format!("chain {n}"));
                } else {
                    line(out, 2, "kind", "finite-table");
                    let ls = t.labels().iter().map(|l| word(l, "element")).collect::<Result<Vec<_>, _>>()?;
                    line(out, 2, "elements", &ls.join(" "));
                    line(out, 2, "order", "");
                    for r in t.order_table() {
                        let row: Vec<&str> = r.iter().map(|&b| if b { "1" } else { "0" }).collect();
                        line(out, 4, &row.join(" "), "");
                    }
                    line(out, 2, "tensor", "");
                    for r in t.tensor_table() {
                        let row: Vec<&str> = r.iter().map(|&k| t.labels()[k].as_str()).collect();
                        line(out, 4, &row.join(" "), "");
                    }
                    line(out, 2, "unit", &t.labels()[t.unit_index()]);
                }
            }
        },
        Item::Space { quantale, space } => {
            line(out, 2, "quantale", quantale);
            line(out, 2, "monad", space.monad().name());
            line(out, 2, "carrier", &labels(space.carrier())?);
            line(out, 2, "matrix", "");
            let q = space.quantale();
            let a = space.structure();
            for i in 0..a.dom().len() {
                let row: Vec<String> = a.row(i).iter().map(|v| q.format_value(v)).collect();
                line(out, 4, &row.join(" "), "");
            }
        }
        Item::Map { dom, cod, map } => {
            line(out, 2, "dom", dom);
            line(out, 2, "cod", cod);
            if !map.dom().is_empty() {
                let pairs: Vec<String> = (0..map.dom().len())
                    .map(|i| format!("{}->{}", map.dom().label(i), map.cod().label(map.apply(i))))
                    .collect();
                line(out, 2, &pairs.join(" "), "");
            }
        }
        Item::Quasi { quantale, class, quasi } => {
            let q = ws.quantale(quantale)?;
            line(out, 2, "quantale", quantale);
            line(out, 2, "monad", quasi.class().class().monad().name());
            line(out, 2, "class", &print_class(class, q));
            line(out, 2, "carrier", &labels(quasi.carrier())?);
            let qc = quasi.class();
            for i in 0..qc.len() {
                let _ = writeln!(out, "  # object {i}: {{{}}}", qc.object(i).carrier().labels().join(" "));
                for t in quasi.admissible_tables(i) {
                    let imgs: Vec<&str> = t.iter().map(|&j| quasi.carrier().label(j)).collect();
                    line(out, 2, "adm", format!("{i} {}", imgs.join(" ")).trim_end());
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "\
quantale B { kind bool2 }
quantale T {
  kind finite-table
  elements b k t
  order
    1 1 1
    0 1 1
    0 0 1
  tensor
    b b b
    b k t
    b t t
  unit k
}
space X { quantale B; monad identity; carrier a b; matrix 1 1; 0 1 }
space E { quantale B; monad ultrafilter-finite; carrier; matrix }
map f { dom X; cod X; a->b b->b }
";

    fn round_trip(ws: &Workspace) {
        let text = ws.print().unwrap();
        let back = Workspace::parse(&text, Budget::default()).unwrap();
        assert_eq!(&back, ws);
        assert_eq!(back.print().unwrap(), text);
    }

    #[test]
    fn parse_and_round_trip() {
        let ws = Workspace::parse(SRC, Budget::default()).unwrap();
        assert_eq!(ws.items().len(), 5);
        let x = ws.space("X").unwrap();
        assert_eq!(x.structure().get(1, 0), Quantale::bool2().bottom());
        round_trip(&ws);
    }

    #[test]
    fn quasi_round_trip() {
        let src = "quantale B { kind bool2 }\nquasi Q {\n quantale B; monad identity\n class compact-hausdorff-upto 1\n carrier a\n adm 0\n adm 1 a\n}\n";
        let ws = Workspace::parse(src, Budget::default()).unwrap();
        assert_eq!(ws.quasi("Q").unwrap().admissible(1).len(), 1);
        round_trip(&ws);
    }

    #[test]
    fn malformed_rational_position() {
        let src =
            "quantale P { kind cost-plus }\nspace X {\n  quantale P; monad identity; carrier a\n  matrix\n    3/\n}\n";
        let e = Workspace::parse(src, Budget::default()).unwrap_err();
        assert_eq!(e.pos, Pos { line: 5, col: 5 });
        assert!(e.msg.contains("malformed rational"), "{}", e.msg);
    }

    #[test]
    fn semantic_errors_are_positioned() {
        let cases = [
            ("space X { quantale Q; monad identity; carrier a; matrix 1 }", 1, 20),
            ("quantale B { kind bool2 }\nspace X { quantale B; monad free; carrier a; matrix 1 }", 2, 29),
            ("quantale B { kind bool2 }\nspace X { quantale B; monad identity; carrier a a; matrix 1 1; 1 1 }", 2, 39),
            ("quantale B { kind bool2 }\nspace X { quantale B; monad identity; carrier a b; matrix 1 1 }", 2, 52),
            ("quantale B { kind bool2 }\nquantale B { kind bool2 }", 2, 10),
            ("quantale B { kind bool2 }\nspace X { quantale B; monad identity; carrier a; matrix 1 }\nmap f { dom X; cod X }", 3, 22),
        ];
        for (src, line, col) in cases {
            let e = Workspace::parse(src, Budget::default()).unwrap_err();
            assert_eq!((e.pos.line, e.pos.col), (line, col), "{src}: {e}");
        }
    }
}
