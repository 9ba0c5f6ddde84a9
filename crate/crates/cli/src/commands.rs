use std::path::Path;

use grext::cohomology::{antisymmetrize, is_cohomologous};
use grext::crossed_product::{idempotent_relations, invert_homogeneous, phi, phi_inverse, CrossedProductElement};
use grext::factor_systems::{validate_factor_system, FactorWindow};
use grext::fibers::{evaluate_fiber, fiber_idempotent_scan, Character};
use grext::format::{CocycleJson, CoeffJson, CrossedProductJson, GroupRingJson, ScalarJson, DEFAULT_ORDER};
use grext::oracles::search::preset_grid;
use grext::oracles::{idempotent_search, unit_search, zero_divisor_search, SearchAlgebra, SearchReport, SearchSpace};
use grext::selftest::run_selftest;
use grext::{AlgebraError, CycScalar, Group, GroupRingElement};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::{read_algebra, read_element, read_factor_system, read_grid, AlgebraFile, ElementFile, InputError, Source};
use crate::{Cli, Command, Outcome, SearchArgs};

type Run = Result<Outcome, InputError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ok(verdict: &str, report: Value) -> Run {
    Ok(Outcome { verdict: verdict.into(), violations: false, report })
}

fn checked(violations: bool, pass: &str, fail: &str, report: Value) -> Run {
    let verdict = if violations { fail } else { pass };
    Ok(Outcome { verdict: verdict.into(), violations, report })
}

pub fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::ValidateFs { file, window, n_window } => validate_fs(file, *window, n_window.unwrap_or(*window)),
        Command::Multiply { left, right } => multiply(left, right),
        Command::Phi { file, inverse } => transport(file, *inverse),
        Command::Involute { file } => involute(file),
        Command::Invert { file } => invert(file),
        Command::IdempotentRelations { file } => relations(file),
        Command::SearchZeroDivisors(a) => search(a, zero_divisor_search),
        Command::SearchUnits(a) => search(a, unit_search),
        Command::SearchIdempotents(a) => search(a, idempotent_search),
        Command::CohomologyClass { file } => cohomology(file),
        Command::FiberEval { file, character } => fiber_eval(file, character),
        Command::FiberScan { file, orders } => fiber_scan(file, orders),
        Command::Selftest => {
            let r = run_selftest(cli.common.seed).map_err(|e| InputError::plain(e.to_string()))?;
            checked(!r.passed(), "all-checks-passed", "checks-failed", to_value(&r))
        }
    }
}

fn validate_fs(path: &Path, h_radius: usize, n_radius: usize) -> Run {
    let src = Source::read(path)?;
    let spec = read_factor_system(&src)?;
    let fs = spec.spec().build().map_err(|e| src.algebra(e))?;
    let window = FactorWindow::balls(fs.normal(), fs.quotient(), h_radius, n_radius).map_err(|e| src.algebra(e))?;
    let r = validate_factor_system(&fs, &window).map_err(|e| src.algebra(e))?;
    let report = json!({
        "factor_system": fs.label(),
        "window": {"h_radius": h_radius, "n_radius": n_radius, "h_elements": window.quotient.len(), "n_elements": window.normal.len()},
        "validation": r,
    });
    checked(!r.passed(), "relations-hold", "relations-violated", report)
}

enum Element {
    GroupRing(GroupRingElement),
    Crossed(CrossedProductElement),
}

impl Element {
    fn json(&self) -> Value {
        match self {
            Element::GroupRing(x) => to_value(&GroupRingJson::from_element(x, true)),
            Element::Crossed(x) => match CrossedProductJson::from_element(x) {
                Ok(j) => to_value(&j),
                Err(_) => Value::String(x.to_string()),
            },
        }
    }

    fn text(&self) -> String {
        match self {
            Element::GroupRing(x) => x.to_string(),
            Element::Crossed(x) => x.to_string(),
        }
    }
}

fn load_element(path: &Path) -> Result<(Source, Element), InputError> {
    let src = Source::read(path)?;
    let el = match read_element(&src)? {
        ElementFile::GroupRing(j) => Element::GroupRing(j.build(None).map_err(|e| src.algebra(e))?),
        ElementFile::Crossed(j) => Element::Crossed(j.build().map_err(|e| src.algebra(e))?),
    };
    Ok((src, el))
}

fn element_report(el: &Element) -> Value {
    json!({"element": el.json(), "text": el.text()})
}

fn multiply(left: &Path, right: &Path) -> Run {
    let (_, a) = load_element(left)?;
    let (src, b) = load_element(right)?;
    let product = match (&a, &b) {
        (Element::GroupRing(x), Element::GroupRing(y)) => Element::GroupRing(x.convolve(y).map_err(|e| src.algebra(e))?),
        (Element::Crossed(x), Element::Crossed(y)) => Element::Crossed(x.mul(y).map_err(|e| src.algebra(e))?),
        _ => return Err(InputError::plain("cannot multiply a group-ring element by a crossed-product element")),
    };
    ok("computed", element_report(&product))
}

fn transport(path: &Path, inverse: bool) -> Run {
    let (src, el) = load_element(path)?;
    let out = match (el, inverse) {
        (Element::GroupRing(x), false) => {
            let Group::Extension(fs) = x.group() else {
                return Err(src.algebra(AlgebraError::InvalidArgument(format!("{} is not an extension group", x.group()))));
            };
            Element::Crossed(phi(&fs.lift(), &x).map_err(|e| src.algebra(e))?)
        }
        (Element::Crossed(x), true) => Element::GroupRing(phi_inverse(&x).map_err(|e| src.algebra(e))?),
        (Element::Crossed(_), false) => return Err(InputError::plain("phi expects a group-ring element; use --inverse for crossed-product elements")),
        (Element::GroupRing(_), true) => return Err(InputError::plain("phi --inverse expects a crossed-product element")),
    };
    ok("computed", element_report(&out))
}

fn involute(path: &Path) -> Run {
    let (src, el) = load_element(path)?;
    let out = match el {
        Element::GroupRing(x) => Element::GroupRing(x.involute().map_err(|e| src.algebra(e))?),
        Element::Crossed(x) => Element::Crossed(x.involute().map_err(|e| src.algebra(e))?),
    };
    ok("computed", element_report(&out))
}

fn invert(path: &Path) -> Run {
    let (src, el) = load_element(path)?;
    let result = match &el {
        Element::GroupRing(x) => x.trivial_unit_inverse().map(Element::GroupRing),
        Element::Crossed(x) => match x.as_homogeneous() {
            Some((h, f)) => invert_homogeneous(x.system(), &f, &h).map(Element::Crossed),
            None => Err(AlgebraError::CannotCertify(format!("{x} is not homogeneous"))),
        },
    };
    match result {
        Ok(inv) => ok("inverted", json!({"input": el.text(), "inverse": inv.json(), "text": inv.text(), "verified": true})),
        Err(e @ (AlgebraError::NotInvertible | AlgebraError::CannotCertify(_))) => {
            checked(true, "", "not-invertible", json!({"input": el.text(), "reason": e.to_string()}))
        }
        Err(e) => Err(src.algebra(e)),
    }
}

fn relations(path: &Path) -> Run {
    let (src, el) = load_element(path)?;
    let Element::Crossed(x) = el else {
        return Err(InputError::plain("idempotent-relations expects a crossed-product element"));
    };
    let r = idempotent_relations(&x).map_err(|e| src.algebra(e))?;
    checked(!r.passed(), "relations-hold", "relations-violated", json!({"element": x.to_string(), "relations": r}))
}

fn grid(spec: &str) -> Result<Vec<CycScalar>, InputError> {
    let path = Path::new(spec);
    if !path.exists() {
        return preset_grid(spec)
            .map_err(|_| InputError::plain(format!("--grid {spec:?} is neither a file nor a preset (rational, gaussian, gaussian_half, signs, halves, zero)")));
    }
    let src = Source::read(path)?;
    let raw = read_grid(&src)?;
    let order = raw
        .iter()
        .filter_map(|c| match c {
            CoeffJson::Scalar(s) => Some(s.order),
            _ => None,
        })
        .fold(DEFAULT_ORDER, |acc, q| acc.lcm(&q));
    raw.iter().map(|c| c.to_scalar(order)).collect::<grext::Result<_>>().map_err(|e| src.algebra(e))
}

fn search(args: &SearchArgs, f: fn(&SearchSpace) -> grext::Result<SearchReport>) -> Run {
    let src = Source::read(&args.algebra)?;
    let grid = grid(&args.grid)?;
    let space = match read_algebra(&src)? {
        AlgebraFile::Group(spec) => {
            let g = spec.build().map_err(|e| src.algebra(e))?;
            let window = g.ball(args.window).map_err(|e| src.algebra(e))?;
            SearchSpace::new(SearchAlgebra::GroupRing(g), window, grid, args.max_support)
        }
        AlgebraFile::Crossed(file) => {
            let cs = file.spec().build().map_err(|e| src.algebra(e))?.lift();
            let h = args.h_window.unwrap_or(args.window);
            SearchSpace::crossed_window(&cs, args.window, h)
                .and_then(|w| SearchSpace::new(SearchAlgebra::CrossedProduct(cs), w, grid, args.max_support))
        }
    }
    .map_err(|e| src.algebra(e))?;
    let r = f(&space).map_err(|e| InputError::plain(e.to_string()))?;
    let verdict = r.verdict.clone();
    Ok(Outcome { violations: !r.conjecture_holds(), verdict, report: to_value(&r) })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CohomologyFile {
    Pair { left: CocycleJson, right: CocycleJson },
    Single(CocycleJson),
}

fn cohomology(path: &Path) -> Run {
    let src = Source::read(path)?;
    match src.parse::<CohomologyFile>()? {
        CohomologyFile::Single(c) => {
            let c = c.build().map_err(|e| src.algebra(e))?;
            ok("classified", json!({"cocycle": CocycleJson::from_cocycle(&c), "class": antisymmetrize(&c).to_rows()}))
        }
        CohomologyFile::Pair { left, right } => {
            let (l, r) = (left.build().map_err(|e| src.algebra(e))?, right.build().map_err(|e| src.algebra(e))?);
            let v = is_cohomologous(&l, &r).map_err(|e| src.algebra(e))?;
            let verdict = if v.cohomologous { "cohomologous" } else { "not-cohomologous" };
            ok(verdict, to_value(&v))
        }
    }
}

fn parse_character(spec: &str) -> Result<Character, InputError> {
    let bad = || InputError::plain(format!("--character {spec:?}: expected q:a1,a2,..."));
    let (q, exps) = spec.split_once(':').ok_or_else(bad)?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    let exps = exps.split(',').map(|a| a.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
    Character::new(q, exps).map_err(|e| InputError::plain(format!("--character {spec:?}: {e}")))
}

fn central_element(path: &Path) -> Result<(Source, GroupRingElement), InputError> {
    let (src, el) = load_element(path)?;
    match el {
        Element::GroupRing(x) => Ok((src, x)),
        Element::Crossed(_) => Err(InputError::plain("expected a group-ring element of a central extension")),
    }
}

fn fiber_eval(path: &Path, character: &str) -> Run {
    let chi = parse_character(character)?;
    let (src, x) = central_element(path)?;
    let img = evaluate_fiber(&x, &chi).map_err(|e| src.algebra(e))?;
    let terms: Vec<Value> = img
        .sorted_terms()
        .into_iter()
        .map(|(h, c)| json!({"h": h.to_string(), "coeff": ScalarJson::from_scalar(c)}))
        .collect();
    ok("computed", json!({"character": chi, "order": img.order(), "terms": terms, "text": img.to_string()}))
}

fn fiber_scan(path: &Path, orders: &[u32]) -> Run {
    if orders.contains(&0) {
        return Err(InputError::plain("--orders must be positive"));
    }
    let (src, x) = central_element(path)?;
    let r = fiber_idempotent_scan(&x, orders).map_err(|e| src.algebra(e))?;
    checked(!r.all_idempotent(), "all-fibers-idempotent", "non-idempotent-fiber", json!({"element": x.to_string(), "scan": r}))
}
