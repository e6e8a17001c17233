//! Property batteries run by `tvcat suite` and by the acceptance target.
//!
//! Each battery counts its checks and keeps the first few failures. Where a quantity has
//! a closed form independent of the library (tensor tables, cost residuation, discrete
//! structures) the battery computes it directly and compares.

use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvspace::enumerate::all_structures;
use tvspace::generation::{
    alexandroff_ae, alexandroff_aup, c_generated_structure, cmap_space, enumerate_probes, is_alexandroff,
    is_c_generated, transpose_cmap, untranspose_cmap,
};
use tvspace::quantale::Cost;
use tvspace::quasi::{
    associated_quasi, discrete_adjunction_report, discrete_quasi, exponential_quasi, indiscrete_adjunction_report,
    indiscrete_quasi, is_quasi_continuous, product2_quasi, reflect_to_cgenerated, validate_quasi,
};
use tvspace::random::{random_relation, random_space};
use tvspace::space::{
    continuity_witness, is_compact, is_continuous, is_hausdorff, product, sierpinski, validate_space,
};
use tvspace::{
    AllMaps, Budget, Carrier, MapArrow, Monad, ProbeClass, Quantale, QuantaleKind, QuasiClass, QuasiSpace, Rational,
    Space, Value,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    fn full(self) -> bool {
        self == Level::Full
    }
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown suite level {s:?}; expected fast or full")),
        }
    }
}

const MAX_LISTED: usize = 5;

/// Checks performed and failures seen by one battery.
#[derive(Debug, Default)]
pub struct Tally {
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }
}

type Run = fn(Level) -> tvspace::Result<Tally>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    run: Run,
}

/// Verdict of one battery, including the wall-clock limit.
#[derive(Debug)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub tally: Tally,
    pub error: Option<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.tally.failed == 0 && self.elapsed <= self.limit
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} checks, {} failed, {:.2}s (limit {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.tally.checks,
            self.tally.failed,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        if let Some(e) = &self.error {
            write!(f, "\n       error: {e}")?;
        }
        for w in &self.tally.failures {
            write!(f, "\n       witness: {w}")?;
        }
        if self.elapsed > self.limit {
            write!(f, "\n       over the time limit")?;
        }
        Ok(())
    }
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "quantale laws", limit: Duration::from_secs(5), run: quantale_laws },
    Criterion { id: 2, name: "closure oracle equivalence", limit: Duration::from_secs(10), run: closure_oracle },
    Criterion { id: 3, name: "constant maps", limit: Duration::from_secs(30), run: constant_maps },
    Criterion {
        id: 4,
        name: "compact Hausdorff = discrete",
        limit: Duration::from_secs(60),
        run: compact_hausdorff_discrete,
    },
    Criterion { id: 5, name: "coreflection", limit: Duration::from_secs(60), run: coreflection },
    Criterion { id: 6, name: "V-Cat_C = Set", limit: Duration::from_secs(60), run: vcat_c_is_set },
    Criterion { id: 7, name: "C-Map cartesian closedness", limit: Duration::from_secs(300), run: cmap_closed },
    Criterion { id: 8, name: "Alexandroff spaces", limit: Duration::from_secs(60), run: alexandroff },
    Criterion { id: 9, name: "quasi axioms and adjoints", limit: Duration::from_secs(60), run: quasi_adjoints },
    Criterion { id: 10, name: "Qs cartesian closedness", limit: Duration::from_secs(300), run: qs_closed },
    Criterion { id: 11, name: "reflection of quasi-spaces", limit: Duration::from_secs(60), run: quasi_reflection },
];

pub fn run_criterion(c: &Criterion, level: Level) -> Verdict {
    let start = Instant::now();
    let result = (c.run)(level);
    let elapsed = start.elapsed();
    let (tally, error) = match result {
        Ok(t) => (t, None),
        Err(e) => (Tally::default(), Some(e.to_string())),
    };
    Verdict { id: c.id, name: c.name, tally, error, elapsed, limit: c.limit }
}

/// Validate every object of each fixture file; one line per file.
pub fn check_fixtures(paths: &[&Path]) -> Vec<(String, Result<(), String>)> {
    paths
        .iter()
        .map(|p| {
            let name = p.display().to_string();
            let r = crate::commands::load(p, Budget::default()).map_err(|e| e.to_string()).and_then(|ws| {
                let o = crate::commands::validate(&ws).map_err(|e| e.to_string())?;
                if o.code == crate::EXIT_OK {
                    Ok(())
                } else {
                    Err(o
                        .text
                        .lines()
                        .filter(|l| l.contains("violation") || l.ends_with("fail"))
                        .collect::<Vec<_>>()
                        .join("; "))
                }
            });
            (name, r)
        })
        .collect()
}

fn small_finite() -> Vec<Quantale> {
    vec![Quantale::bool2(), Quantale::chain(3).expect("chain")]
}

fn structures(n: usize, monad: Monad, q: &Quantale) -> tvspace::Result<Vec<Space>> {
    all_structures(&Carrier::range(n), monad, q, &Budget::default())
}

/// All valid labelled structures on carriers of size `0..=max`.
fn battery(max: usize, monad: Monad, q: &Quantale) -> tvspace::Result<Vec<Space>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(structures(n, monad, q)?);
    }
    Ok(out)
}

/// The discrete structure written out directly: `k` on the diagonal, `⊥` elsewhere.
fn is_discrete_oracle(x: &Space) -> bool {
    let q = x.quantale();
    let a = x.structure();
    (0..x.len()).all(|s| (0..x.len()).all(|i| a.get(s, i) == if s == i { q.unit() } else { q.bottom() }))
}

// ---- 1. quantale laws ------------------------------------------------------------

/// Closed forms for the shipped finite kinds, written against raw indices and rationals.
struct FiniteOracle {
    q: Quantale,
}

impl FiniteOracle {
    fn num(&self, v: Value) -> Rational {
        match v {
            Value::Elem(i) => Rational::from_integer(i as i64),
            Value::Unit(r) => r,
            Value::Cost(_) => unreachable!("finite oracle"),
        }
    }

    fn value_of(&self, r: Rational) -> Value {
        match self.q.kind() {
            QuantaleKind::LukasiewiczGrid(_) => Value::Unit(r),
            _ => Value::Elem(r.to_integer() as usize),
        }
    }

    fn one(&self) -> Rational {
        self.num(self.q.top())
    }

    fn tensor(&self, u: Value, v: Value) -> Value {
        let (a, b) = (self.num(u), self.num(v));
        match self.q.kind() {
            QuantaleKind::LukasiewiczGrid(_) => {
                self.value_of((a + b - Rational::from_integer(1)).max(Rational::from_integer(0)))
            }
            _ => self.value_of(a.min(b)),
        }
    }

    fn hom(&self, v: Value, w: Value) -> Value {
        let (a, b) = (self.num(v), self.num(w));
        match self.q.kind() {
            QuantaleKind::LukasiewiczGrid(_) => self.value_of((Rational::from_integer(1) - a + b).min(self.one())),
            _ => self.value_of(if a <= b { self.one() } else { b }),
        }
    }

    fn imp(&self, v: Value, w: Value) -> Value {
        let (a, b) = (self.num(v), self.num(w));
        self.value_of(if a <= b { self.one() } else { b })
    }
}

fn finite_laws(q: &Quantale, t: &mut Tally) -> tvspace::Result<()> {
    let els = q.elements().expect("finite");
    let o = FiniteOracle { q: q.clone() };
    let name = q.describe();
    let f = |v: &Value| q.format_value(v);
    for &u in &els {
        t.check(q.tensor(q.unit(), u)? == u, || format!("{name}: unit at {}", f(&u)));
        t.check(q.tensor(u, q.bottom())? == q.bottom(), || format!("{name}: u ⊗ ⊥ at {}", f(&u)));
        for &v in &els {
            let uv = q.tensor(u, v)?;
            t.check(uv == o.tensor(u, v), || format!("{name}: tensor {} {}", f(&u), f(&v)));
            t.check(uv == q.tensor(v, u)?, || format!("{name}: commutativity {} {}", f(&u), f(&v)));
            t.check(q.hom(u, v)? == o.hom(u, v), || format!("{name}: hom {} {}", f(&u), f(&v)));
            t.check(q.imp(u, v)? == o.imp(u, v), || format!("{name}: imp {} {}", f(&u), f(&v)));
            let ub: Vec<Value> =
                els.iter().copied().filter(|&x| q.leq(u, x).unwrap() && q.leq(v, x).unwrap()).collect();
            let lb: Vec<Value> =
                els.iter().copied().filter(|&x| q.leq(x, u).unwrap() && q.leq(x, v).unwrap()).collect();
            let j = q.join2(u, v)?;
            let m = q.meet2(u, v)?;
            t.check(ub.contains(&j) && ub.iter().all(|&x| q.leq(j, x).unwrap()), || {
                format!("{name}: join {} {}", f(&u), f(&v))
            });
            t.check(lb.contains(&m) && lb.iter().all(|&x| q.leq(x, m).unwrap()), || {
                format!("{name}: meet {} {}", f(&u), f(&v))
            });
            for &w in &els {
                t.check(q.tensor(uv, w)? == q.tensor(u, q.tensor(v, w)?)?, || {
                    format!("{name}: associativity {} {} {}", f(&u), f(&v), f(&w))
                });
                t.check(q.tensor(u, q.join2(v, w)?)? == q.join2(uv, q.tensor(u, w)?)?, || {
                    format!("{name}: distributivity {} {} {}", f(&u), f(&v), f(&w))
                });
                t.check(q.leq(uv, w)? == q.leq(u, q.hom(v, w)?)?, || {
                    format!("{name}: hom adjunction {} {} {}", f(&u), f(&v), f(&w))
                });
                t.check(q.leq(m, w)? == q.leq(u, q.imp(v, w)?)?, || {
                    format!("{name}: Heyting {} {} {}", f(&u), f(&v), f(&w))
                });
            }
        }
    }
    Ok(())
}

/// Cost values as extended rationals, `None` for `∞`.
fn cost_num(v: Value) -> Option<Rational> {
    match v {
        Value::Cost(Cost::Finite(r)) => Some(r),
        Value::Cost(Cost::Infinite) => None,
        _ => unreachable!("cost value"),
    }
}

fn cost_value(r: Option<Rational>) -> Value {
    match r {
        Some(r) => Value::Cost(Cost::Finite(r)),
        None => Value::INFINITY,
    }
}

/// `a ≥ b` as extended reals.
fn num_ge(a: Option<Rational>, b: Option<Rational>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

fn cost_tensor(plus: bool, a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if plus { x + y } else { x.max(y) }),
        _ => None,
    }
}

const COST_DEN: i64 = 12;

fn sample_cost<R: Rng>(rng: &mut R) -> Option<Rational> {
    if rng.gen_ratio(1, 10) {
        None
    } else {
        Some(Rational::new(rng.gen_range(0..=4 * COST_DEN), COST_DEN))
    }
}

/// `hom(v, w)` as the least `u` on a grid closed under truncated subtraction with
/// `u ⊗ v ≥ w`, the cost order being reversed.
fn brute_hom(plus: bool, v: Option<Rational>, w: Option<Rational>) -> Option<Rational> {
    let grid = (0..=8 * COST_DEN).map(|k| Some(Rational::new(k, COST_DEN))).chain(std::iter::once(None));
    grid.filter(|&u| num_ge(cost_tensor(plus, u, v), w))
        .min_by(|a, b| match (a, b) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, _) => std::cmp::Ordering::Greater,
            (_, None) => std::cmp::Ordering::Less,
            (Some(x), Some(y)) => x.cmp(y),
        })
        .expect("∞ always qualifies")
}

fn quantale_laws(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let mut qs = vec![Quantale::bool2(), Quantale::lukasiewicz_grid(4)?];
    for n in 3..=5 {
        qs.push(Quantale::chain(n)?);
    }
    for q in &qs {
        finite_laws(q, &mut t)?;
    }
    let samples = if level.full() { 2000 } else { 200 };
    for (seed, q) in [(11u64, Quantale::cost_plus()), (12, Quantale::cost_max())] {
        let plus = q.kind() == QuantaleKind::CostPlus;
        let name = q.describe();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (u, v, w) = (sample_cost(&mut rng), sample_cost(&mut rng), sample_cost(&mut rng));
            let (uv, vv, wv) = (cost_value(u), cost_value(v), cost_value(w));
            let h = q.hom(vv, wv)?;
            let show = |x: Value| q.format_value(&x);
            t.check(cost_num(h) == brute_hom(plus, v, w), || {
                format!("{name}: hom {} {} = {}", show(vv), show(wv), show(h))
            });
            t.check(q.tensor(uv, vv)? == cost_value(cost_tensor(plus, u, v)), || {
                format!("{name}: tensor {} {}", show(uv), show(vv))
            });
            t.check(q.leq(q.tensor(uv, vv)?, wv)? == q.leq(uv, h)?, || {
                format!("{name}: adjunction {} {} {}", show(uv), show(vv), show(wv))
            });
            t.check(q.leq(uv, vv)? == num_ge(u, v), || format!("{name}: order {} {}", show(uv), show(vv)));
        }
    }
    Ok(t)
}

// ---- 2. closure ------------------------------------------------------------------

fn closure_oracle(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let per = if level.full() { 210 } else { 35 };
    let qs = [
        Quantale::bool2(),
        Quantale::chain(3)?,
        Quantale::chain(5)?,
        Quantale::lukasiewicz_grid(4)?,
        Quantale::cost_plus(),
        Quantale::cost_max(),
    ];
    for (k, q) in qs.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
        for i in 0..per {
            let n = i % 7;
            let r = random_relation(&mut rng, n, q, 0.3);
            let fw = r.reflexive_transitive_closure()?;
            let naive = r.reflexive_transitive_closure_naive()?;
            t.check(fw == naive, || format!("{}: relation #{i} on {n} points", q.describe()));
        }
    }
    Ok(t)
}

// ---- 3. constant maps -------------------------------------------------------------

/// The three-element table `⊥ < k < ⊤` with unit `k` and `⊤ ⊗ ⊤ = ⊤`.
pub fn non_integral_table() -> tvspace::Result<Quantale> {
    let labels: Vec<String> = ["b", "k", "t"].iter().map(|s| s.to_string()).collect();
    let order: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
    let tensor = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
    Quantale::finite_table(labels, &order, &tensor, 1)
}

fn constant_maps(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 3 } else { 2 };
    for q in small_finite() {
        let bat = battery(max, Monad::Identity, &q)?;
        for x in &bat {
            for y in &bat {
                for c in 0..y.len() {
                    let f = MapArrow::constant(x.carrier(), y.carrier(), c)?;
                    let lib = is_continuous(&f, x, y)?;
                    let direct = (0..x.len()).all(|i| {
                        (0..x.len()).all(|j| q.leq(x.structure().get(i, j), y.structure().get(c, c)).unwrap())
                    });
                    t.check(lib && direct, || {
                        format!("{}: constant {c} on {:?}", q.describe(), x.structure().entries())
                    });
                }
            }
        }
    }
    let q = non_integral_table()?;
    let pt = Carrier::range(1);
    let x = Space::from_matrix(pt.clone(), Monad::Identity, q.clone(), vec![q.top()])?;
    let y = Space::from_matrix(pt.clone(), Monad::Identity, q.clone(), vec![q.unit()])?;
    t.check(validate_space(&x).passed() && validate_space(&y).passed(), || "non-integral spaces are invalid".into());
    let c = MapArrow::constant(&pt, &pt, 0)?;
    t.check(continuity_witness(&c, &x, &y)? == Some((0, 0)), || "non-integral table: no witness discontinuity".into());
    Ok(t)
}

// ---- 4. compact Hausdorff ----------------------------------------------------------

fn compact_hausdorff_discrete(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 3 } else { 2 };
    for q in small_finite() {
        for x in battery(max, Monad::Identity, &q)? {
            let ch = is_compact(&x) && is_hausdorff(&x);
            t.check(ch == is_discrete_oracle(&x), || format!("{}: {:?}", q.describe(), x.structure().entries()));
        }
    }
    Ok(t)
}

// ---- 5. coreflection ---------------------------------------------------------------

fn coreflection_quantales() -> tvspace::Result<Vec<Quantale>> {
    Ok(vec![
        Quantale::bool2(),
        Quantale::chain(3)?,
        Quantale::lukasiewicz_grid(4)?,
        Quantale::cost_plus(),
        Quantale::cost_max(),
    ])
}

fn coreflection(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let per = if level.full() { 100 } else { 15 };
    for (k, q) in coreflection_quantales()?.iter().enumerate() {
        let class = ProbeClass::compact_hausdorff_upto(Monad::Identity, q, 2, &Budget::default())?;
        let mut rng = ChaCha8Rng::seed_from_u64(200 + k as u64);
        for i in 0..per {
            let n = rng.gen_range(1..=4);
            let x = random_space(&mut rng, n, Monad::Identity, q, 0.3)?;
            let m = rng.gen_range(0..=3);
            let w = c_generated_structure(&random_space(&mut rng, m, Monad::Identity, q, 0.3)?, &class)?;
            let xc = c_generated_structure(&x, &class)?;
            let tag = || format!("{} space #{i}", q.describe());
            t.check(xc.structure().leq(x.structure())?, || format!("{}: a^c ≰ a", tag()));
            t.check(c_generated_structure(&xc, &class)? == xc, || format!("{}: not idempotent", tag()));
            for f in AllMaps::new(w.carrier(), x.carrier()) {
                t.check(is_continuous(&f, &w, &x)? == is_continuous(&f, &w, &xc)?, || {
                    format!("{}: factorization of {f}", tag())
                });
            }
        }
    }
    Ok(t)
}

// ---- 6. V-Cat_C ≅ Set --------------------------------------------------------------

fn vcat_c_is_set(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 3 } else { 2 };
    let mut bats: Vec<(Quantale, Vec<Space>)> = Vec::new();
    for q in small_finite() {
        let b = battery(max, Monad::Identity, &q)?;
        bats.push((q, b));
    }
    for (k, q) in [Quantale::lukasiewicz_grid(4)?, Quantale::cost_plus(), Quantale::cost_max()].into_iter().enumerate()
    {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + k as u64);
        let b = (0..if level.full() { 40 } else { 10 })
            .map(|_| {
                let n = rng.gen_range(0..=4);
                random_space(&mut rng, n, Monad::Identity, &q, 0.3)
            })
            .collect::<tvspace::Result<Vec<_>>>()?;
        bats.push((q, b));
    }
    for (q, bat) in &bats {
        let class = ProbeClass::compact_hausdorff_upto(Monad::Identity, q, 2, &Budget::default())?;
        for x in bat {
            let xc = c_generated_structure(x, &class)?;
            t.check(is_discrete_oracle(&xc), || {
                format!("{}: coreflection of {:?} is not discrete", q.describe(), x.structure().entries())
            });
        }
    }
    Ok(t)
}

// ---- 7. C-Map ----------------------------------------------------------------------

fn cmap_closed(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let qs = if level.full() { small_finite() } else { vec![Quantale::bool2()] };
    for q in qs {
        let bat = battery(2, Monad::Identity, &q)?;
        let classes = [
            ProbeClass::sierpinski(&q, Monad::Identity, None)?,
            ProbeClass::compact_hausdorff_upto(Monad::Identity, &q, 2, &Budget::default())?,
        ];
        for class in &classes {
            let cname = format!("{} {:?}", q.describe(), class.mode());
            for y in &bat {
                for z in &bat {
                    let cm = cmap_space(y, z, class)?;
                    for x in &bat {
                        let xy = product(x, y)?;
                        let probes_xy = enumerate_probes(class, &xy)?;
                        let probes_x = enumerate_probes(class, x)?;
                        let c_cont = |f: &MapArrow,
                                      probes: &[tvspace::generation::Probe],
                                      to: &Space|
                         -> tvspace::Result<bool> {
                            for p in probes {
                                if !is_continuous(&p.map.then(f)?, &class.objects()[p.object], to)? {
                                    return Ok(false);
                                }
                            }
                            Ok(true)
                        };
                        for f in AllMaps::new(xy.carrier(), z.carrier()) {
                            let fc = c_cont(&f, &probes_xy, z)?;
                            let tr = transpose_cmap(&f, x.carrier(), y.carrier(), &cm);
                            match tr {
                                Ok(g) => {
                                    t.check(untranspose_cmap(&g, y.carrier(), z.carrier(), &cm)? == f, || {
                                        format!("{cname}: untranspose ∘ transpose ≠ id at {f}")
                                    });
                                    let gc = c_cont(&g, &probes_x, &cm.space)?;
                                    t.check(fc == gc, || {
                                        format!("{cname}: C-continuity of {f} is {fc}, of its transpose {gc}")
                                    });
                                }
                                Err(_) => t.check(!fc, || format!("{cname}: C-continuous {f} has no transpose")),
                            }
                        }
                        for g in AllMaps::new(x.carrier(), cm.space.carrier()) {
                            let f = untranspose_cmap(&g, y.carrier(), z.carrier(), &cm)?;
                            t.check(transpose_cmap(&f, x.carrier(), y.carrier(), &cm)? == g, || {
                                format!("{cname}: transpose ∘ untranspose ≠ id at {g}")
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

// ---- 8. Alexandroff ----------------------------------------------------------------

fn alexandroff(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let b = Quantale::bool2();
    for x in battery(if level.full() { 4 } else { 3 }, Monad::Identity, &b)? {
        t.check(is_alexandroff(&x, None)?, || format!("Ord space {:?} is not Alexandroff", x.structure().entries()));
    }
    for n in 2..=if level.full() { 4 } else { 3 } {
        let q = Quantale::chain(n)?;
        let s = sierpinski(&q, Monad::Identity, None)?;
        let vv = product(&s, &s)?;
        t.check(is_alexandroff(&vv, None)?, || format!("chain {n}: V×V is not Alexandroff"));
    }
    let max = if level.full() { 3 } else { 2 };
    for q in small_finite() {
        for y in battery(max, Monad::Identity, &q)? {
            let back = alexandroff_ae(&alexandroff_aup(&y, Monad::UltrafilterFinite)?)?;
            t.check(back == y, || format!("{}: A_e A° ≠ id on {:?}", q.describe(), y.structure().entries()));
        }
        for x in battery(max, Monad::UltrafilterFinite, &q)? {
            let back = alexandroff_aup(&alexandroff_ae(&x)?, Monad::UltrafilterFinite)?;
            t.check(back == x, || format!("{}: A° A_e ≠ id on {:?}", q.describe(), x.structure().entries()));
        }
    }
    Ok(t)
}

// ---- 9. quasi-spaces ---------------------------------------------------------------

fn ch_quasi_class(q: &Quantale, monad: Monad) -> tvspace::Result<std::sync::Arc<QuasiClass>> {
    QuasiClass::new(ProbeClass::compact_hausdorff_upto(monad, q, 2, &Budget::default())?)
}

fn quasi_adjoints(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 3 } else { 2 };
    for q in small_finite() {
        let qc = ch_quasi_class(&q, Monad::Identity)?;
        let bat = battery(max, Monad::Identity, &q)?;
        let dq = q.describe();
        for x in &bat {
            let tag = || format!("{dq} {:?}", x.structure().entries());
            let assoc = associated_quasi(x, &qc)?;
            for (kind, y) in [
                ("associated", assoc.clone()),
                ("discrete", discrete_quasi(x.carrier(), &qc)?),
                ("indiscrete", indiscrete_quasi(x.carrier(), &qc)?),
            ] {
                let rep = validate_quasi(&y)?;
                t.check(rep.passed(), || format!("{}: {kind} quasi-structure fails: {rep}", tag()));
            }
            for m in 0..=max {
                let c = Carrier::range(m);
                let total = (assoc.len() as u64).pow(m as u32) + (m as u64).pow(assoc.len() as u32);
                let d = discrete_adjunction_report(&c, &assoc)?;
                let i = indiscrete_adjunction_report(&assoc, &c)?;
                t.checks += total;
                t.check(d.passed(), || format!("{}: D ⊣ |-| at {m} points: {d}", tag()));
                t.check(i.passed(), || format!("{}: |-| ⊣ I at {m} points: {i}", tag()));
            }
        }
    }
    Ok(t)
}

// ---- 10. Qs cartesian closedness ----------------------------------------------------

/// Every quasi-structure on `n` points, by filtering all families of admissible sets.
pub fn all_quasi_structures(n: usize, qc: &std::sync::Arc<QuasiClass>) -> tvspace::Result<Vec<QuasiSpace>> {
    let x = Carrier::range(n);
    let per: Vec<Vec<MapArrow>> = (0..qc.len()).map(|i| AllMaps::new(qc.object(i).carrier(), &x).collect()).collect();
    let flat: Vec<(usize, &MapArrow)> =
        per.iter().enumerate().flat_map(|(i, ms)| ms.iter().map(move |m| (i, m))).collect();
    if flat.len() > 16 {
        return Err(tvspace::Error::Resource(format!(
            "{} candidate maps is too many to enumerate families",
            flat.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << flat.len()) {
        let mut adm = vec![Vec::new(); qc.len()];
        for (b, (i, m)) in flat.iter().enumerate() {
            if mask & (1 << b) != 0 {
                adm[*i].push((*m).clone());
            }
        }
        let q = QuasiSpace::new(x.clone(), qc, adm)?;
        if validate_quasi(&q)?.passed() {
            out.push(q);
        }
    }
    Ok(out)
}

fn qs_closed(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 2 } else { 1 };
    for q in small_finite() {
        let qc = ch_quasi_class(&q, Monad::Identity)?;
        let mut bat = Vec::new();
        for n in 0..=max {
            bat.extend(all_quasi_structures(n, &qc)?);
        }
        t.check(!bat.is_empty(), || "no quasi-structures enumerated".into());
        let dq = q.describe();
        for x in &bat {
            for y in &bat {
                let e = exponential_quasi(x, y)?;
                let ex = product2_quasi(&e.quasi, x)?;
                let ev = e.ev(x.carrier(), y.carrier());
                t.check(is_quasi_continuous(&ev, &ex, y)?, || {
                    format!("{dq}: ev not quasi-continuous on {} → {}", x.len(), y.len())
                });
                for z in &bat {
                    let zx = product2_quasi(z, x)?;
                    for f in AllMaps::new(zx.carrier(), y.carrier()) {
                        let fc = is_quasi_continuous(&f, &zx, y)?;
                        match e.transpose(&f, z.carrier(), x.carrier()) {
                            Ok(g) => {
                                t.check(e.untranspose(&g, x.carrier(), y.carrier())? == f, || {
                                    format!("{dq}: round trip at {f}")
                                });
                                let gc = is_quasi_continuous(&g, z, &e.quasi)?;
                                t.check(fc == gc, || format!("{dq}: {f} quasi-continuous {fc}, transpose {gc}"));
                            }
                            Err(_) => t.check(!fc, || format!("{dq}: quasi-continuous {f} has no transpose")),
                        }
                    }
                    for g in AllMaps::new(z.carrier(), e.quasi.carrier()) {
                        let f = e.untranspose(&g, x.carrier(), y.carrier())?;
                        t.check(e.transpose(&f, z.carrier(), x.carrier())? == g, || format!("{dq}: round trip at {g}"));
                    }
                }
            }
        }
    }
    Ok(t)
}

// ---- 11. reflection ----------------------------------------------------------------

fn quasi_reflection(level: Level) -> tvspace::Result<Tally> {
    let mut t = Tally::default();
    let max = if level.full() { 3 } else { 2 };
    let settings = [
        (Quantale::bool2(), Monad::Identity),
        (Quantale::chain(3)?, Monad::Identity),
        (Quantale::bool2(), Monad::UltrafilterFinite),
    ];
    for (q, monad) in settings {
        let qc = ch_quasi_class(&q, monad)?;
        let tag = format!("{} {}", q.describe(), monad.name());
        let bat = battery(max, monad, &q)?;
        let mut generated = Vec::new();
        for x in &bat {
            let ax = associated_quasi(x, &qc)?;
            let r = reflect_to_cgenerated(&ax)?;
            if is_c_generated(x, qc.class())? {
                t.check(&r == x, || format!("{tag}: reflect(associate X) ≠ X on {:?}", x.structure().entries()));
                generated.push((x, ax));
            } else {
                t.check(associated_quasi(&r, &qc)? == ax, || {
                    format!("{tag}: associate ∘ reflect ∘ associate ≠ associate")
                });
            }
        }
        t.check(!generated.is_empty(), || format!("{tag}: no C-generated spaces in the battery"));
        for (x, ax) in &generated {
            for (y, ay) in &generated {
                for f in AllMaps::new(x.carrier(), y.carrier()) {
                    t.check(is_continuous(&f, x, y)? == is_quasi_continuous(&f, ax, ay)?, || {
                        format!("{tag}: hom-sets differ at {f}")
                    });
                }
            }
        }
    }
    Ok(t)
}
