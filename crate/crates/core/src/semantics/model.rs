//! Finite models: a carrier per type, truth values for the elements of type
//! `1`, and an extension for every element of a relation type.
//!
//! A model text looks like
//!
//! ```json
//! {
//!   "carriers": {
//!     "0": ["d0", "d1"],
//!     "1": [{"name": "t0", "value": "t"}, {"name": "f0", "value": "f"}],
//!     "(0)": ["r0", "r1"]
//!   },
//!   "rel": {"r0": [], "r1": [["d0"]]},
//!   "objects": {"c": "d0"},
//!   "funs": {"g": [[["d0"], "d1"], [["d1"], "d0"]]}
//! }
//! ```
//!
//! Quantifiers range over carriers. A lambda term evaluates to a closure; when
//! it is passed to a relation it is replaced by the carrier element with the
//! same extension, so relation carriers must contain every extension that the
//! evaluated formulas produce.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::sequent::Sequent;
use crate::syntax::{parse_type, BoundVar, Formula, FreeVar, Signature, Term, Type};

/// Largest carrier a generated relation type may have.
pub const MAX_CARRIER: usize = 1 << 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteModel {
    pub carriers: BTreeMap<Type, Vec<String>>,
    pub truth: BTreeMap<String, bool>,
    pub rel: BTreeMap<String, BTreeSet<Vec<String>>>,
    pub objects: BTreeMap<String, String>,
    pub funs: BTreeMap<String, BTreeMap<Vec<String>, String>>,
}

/// Values of subterms during evaluation.
#[derive(Clone, Debug)]
enum Value {
    Elem(String),
    Truth(bool),
    Closure(Vec<BoundVar>, Term, Locals),
}

type Locals = Vec<(BoundVar, Value)>;

/// Values of free variables.
pub type Assignment = BTreeMap<FreeVar, String>;

fn model_err(msg: impl Into<String>) -> Error {
    Error::Model(msg.into())
}

impl FiniteModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Json = serde_json::from_str(text).map_err(|e| model_err(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Json) -> Result<Self> {
        let mut m = FiniteModel::default();
        let carriers = v
            .get("carriers")
            .and_then(Json::as_object)
            .ok_or_else(|| model_err("missing \"carriers\" object"))?;
        for (ty_text, elems) in carriers {
            let ty = parse_type(ty_text)?;
            let elems = elems
                .as_array()
                .ok_or_else(|| model_err(format!("carrier {ty_text} is not a list")))?;
            let mut names = Vec::new();
            for e in elems {
                let name = match (e, &ty) {
                    (Json::Object(o), Type::One) => {
                        let name = o.get("name").and_then(Json::as_str).ok_or_else(|| model_err("truth element without a name"))?;
                        let value = match o.get("value").and_then(Json::as_str) {
                            Some("t") => true,
                            Some("f") => false,
                            _ => return Err(model_err(format!("element {name} needs \"value\": \"t\" or \"f\""))),
                        };
                        m.truth.insert(name.to_string(), value);
                        name.to_string()
                    }
                    (Json::String(s), Type::One) => return Err(model_err(format!("element {s} of type 1 needs a truth value"))),
                    (Json::String(s), _) => s.clone(),
                    _ => return Err(model_err(format!("bad element in carrier {ty_text}"))),
                };
                names.push(name);
            }
            m.carriers.insert(ty, names);
        }
        if let Some(rel) = v.get("rel").and_then(Json::as_object) {
            for (name, tuples) in rel {
                let tuples = tuples.as_array().ok_or_else(|| model_err(format!("extension of {name} is not a list")))?;
                let mut ext = BTreeSet::new();
                for t in tuples {
                    let t = t.as_array().ok_or_else(|| model_err(format!("tuple of {name} is not a list")))?;
                    let row: Option<Vec<String>> = t.iter().map(|x| x.as_str().map(str::to_string)).collect();
                    ext.insert(row.ok_or_else(|| model_err(format!("tuple of {name} must list element names")))?);
                }
                m.rel.insert(name.clone(), ext);
            }
        }
        if let Some(objs) = v.get("objects").and_then(Json::as_object) {
            for (c, e) in objs {
                let e = e.as_str().ok_or_else(|| model_err(format!("object {c} must name an element")))?;
                m.objects.insert(c.clone(), e.to_string());
            }
        }
        if let Some(funs) = v.get("funs").and_then(Json::as_object) {
            for (f, table) in funs {
                let rows = table.as_array().ok_or_else(|| model_err(format!("table of ${f} is not a list")))?;
                let mut map = BTreeMap::new();
                for row in rows {
                    let pair = row.as_array().filter(|p| p.len() == 2).ok_or_else(|| model_err(format!("row of ${f} must be [args, value]")))?;
                    let args: Option<Vec<String>> = pair[0]
                        .as_array()
                        .and_then(|a| a.iter().map(|x| x.as_str().map(str::to_string)).collect());
                    let val = pair[1].as_str().map(str::to_string);
                    match (args, val) {
                        (Some(a), Some(v)) => {
                            map.insert(a, v);
                        }
                        _ => return Err(model_err(format!("row of ${f} must be [args, value]"))),
                    }
                }
                m.funs.insert(f.clone(), map);
            }
        }
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> Json {
        let carriers: serde_json::Map<String, Json> = self
            .carriers
            .iter()
            .map(|(ty, elems)| {
                let list: Vec<Json> = elems
                    .iter()
                    .map(|e| match ty {
                        Type::One => json!({"name": e, "value": if self.truth[e] { "t" } else { "f" }}),
                        _ => json!(e),
                    })
                    .collect();
                (ty.to_string(), Json::Array(list))
            })
            .collect();
        let rel: serde_json::Map<String, Json> = self.rel.iter().map(|(r, ext)| (r.clone(), json!(ext))).collect();
        let funs: serde_json::Map<String, Json> = self
            .funs
            .iter()
            .map(|(f, t)| (f.clone(), Json::Array(t.iter().map(|(a, v)| json!([a, v])).collect())))
            .collect();
        json!({"carriers": carriers, "rel": rel, "objects": self.objects, "funs": funs})
    }

    fn type_of_elem(&self) -> BTreeMap<&str, &Type> {
        let mut out = BTreeMap::new();
        for (ty, elems) in &self.carriers {
            for e in elems {
                out.insert(e.as_str(), ty);
            }
        }
        out
    }

    /// Checks that the model is well formed.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (ty, elems) in &self.carriers {
            if elems.is_empty() {
                return Err(model_err(format!("carrier of type {ty} is empty")));
            }
            for e in elems {
                if !seen.insert(e) {
                    return Err(model_err(format!("element name {e} is used twice")));
                }
            }
        }
        let owner = self.type_of_elem();
        if let Some(ones) = self.carriers.get(&Type::One) {
            if !ones.iter().any(|e| self.truth.get(e) == Some(&false)) {
                return Err(model_err("the carrier of type 1 needs an element with value f"));
            }
        }
        for (r, ext) in &self.rel {
            let Some(Type::Product(comps)) = owner.get(r.as_str()) else {
                return Err(model_err(format!("{r} is not an element of a relation type")));
            };
            for row in ext {
                let fits = row.len() == comps.len() && row.iter().zip(comps).all(|(e, t)| owner.get(e.as_str()) == Some(&t));
                if !fits {
                    return Err(model_err(format!("tuple {row:?} of {r} does not fit its type")));
                }
            }
        }
        for (c, e) in &self.objects {
            if owner.get(e.as_str()) != Some(&&Type::Zero) {
                return Err(model_err(format!("object {c} is mapped to {e}, not an element of type 0")));
            }
        }
        for (f, table) in &self.funs {
            let zero = self.carriers.get(&Type::Zero).ok_or_else(|| model_err(format!("${f} needs a carrier of type 0")))?;
            let arity = table.keys().next().map_or(0, Vec::len);
            let expected = zero.len().pow(arity as u32);
            let ok = table.len() == expected
                && table.iter().all(|(args, v)| {
                    args.len() == arity && args.iter().chain([v]).all(|e| owner.get(e.as_str()) == Some(&&Type::Zero))
                });
            if !ok {
                return Err(model_err(format!("table of ${f} is not a total function on the carrier of type 0")));
            }
        }
        Ok(())
    }

    fn carrier(&self, ty: &Type) -> Result<&[String]> {
        self.carriers
            .get(ty)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingInterpretation(format!("no carrier for type {ty}")))
    }

    fn eval(&self, t: &Term, asg: &Assignment, locals: &Locals) -> Result<Value> {
        match t {
            Term::Free(v) => asg
                .get(v)
                .map(|e| Value::Elem(e.clone()))
                .ok_or_else(|| Error::MissingInterpretation(format!("free variable {v}"))),
            Term::Bound(x) => locals
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| model_err(format!("unbound variable {x}"))),
            Term::Object(c) => self
                .objects
                .get(c)
                .map(|e| Value::Elem(e.clone()))
                .ok_or_else(|| Error::MissingInterpretation(format!("object '{c}"))),
            Term::Fun(f, args) => {
                let mut row = Vec::new();
                for a in args {
                    row.push(self.to_elem(self.eval(a, asg, locals)?, &Type::Zero, asg)?);
                }
                let table = self.funs.get(f).ok_or_else(|| Error::MissingInterpretation(format!("function ${f}")))?;
                table
                    .get(&row)
                    .map(|e| Value::Elem(e.clone()))
                    .ok_or_else(|| model_err(format!("${f} is undefined at {row:?}")))
            }
            Term::App(h, args) => {
                let head = self.eval(h, asg, locals)?;
                let mut vals = Vec::new();
                for a in args {
                    vals.push(self.eval(a, asg, locals)?);
                }
                self.apply(head, &h.type_of()?, vals, asg).map(Value::Truth)
            }
            Term::Imp(a, b) => {
                let va = self.truth_of(self.eval(a, asg, locals)?)?;
                let vb = self.truth_of(self.eval(b, asg, locals)?)?;
                Ok(Value::Truth(!va || vb))
            }
            Term::All(x, body) => {
                let mut inner = locals.clone();
                for e in self.carrier(&x.ty)? {
                    inner.push((x.clone(), Value::Elem(e.clone())));
                    let v = self.truth_of(self.eval(body, asg, &inner)?)?;
                    inner.pop();
                    if !v {
                        return Ok(Value::Truth(false));
                    }
                }
                Ok(Value::Truth(true))
            }
            Term::Lam(xs, body) => Ok(Value::Closure(xs.clone(), (**body).clone(), locals.clone())),
        }
    }

    fn apply(&self, head: Value, ty: &Type, args: Vec<Value>, asg: &Assignment) -> Result<bool> {
        match head {
            Value::Closure(xs, body, mut locals) => {
                locals.extend(xs.into_iter().zip(args));
                self.truth_of(self.eval(&body, asg, &locals)?)
            }
            Value::Elem(r) => {
                let comps = ty.components().ok_or_else(|| model_err(format!("{r} is not a relation")))?;
                let mut row = Vec::new();
                for (a, t) in args.into_iter().zip(comps) {
                    row.push(self.to_elem(a, t, asg)?);
                }
                Ok(self.rel.get(&r).is_some_and(|ext| ext.contains(&row)))
            }
            Value::Truth(_) => Err(model_err("a truth value cannot be applied")),
        }
    }

    fn truth_of(&self, v: Value) -> Result<bool> {
        match v {
            Value::Truth(b) => Ok(b),
            Value::Elem(e) => self.truth.get(&e).copied().ok_or_else(|| model_err(format!("{e} is not a truth value"))),
            Value::Closure(..) => Err(model_err("a relation is not a formula")),
        }
    }

    /// The carrier element standing for a value of type `ty`.
    fn to_elem(&self, v: Value, ty: &Type, asg: &Assignment) -> Result<String> {
        match v {
            Value::Elem(e) => Ok(e),
            Value::Truth(b) => self
                .carrier(&Type::One)?
                .iter()
                .find(|e| self.truth.get(*e) == Some(&b))
                .cloned()
                .ok_or_else(|| model_err(format!("no element of type 1 with value {}", if b { "t" } else { "f" }))),
            closure @ Value::Closure(..) => {
                let comps = ty.components().ok_or_else(|| model_err("closure of a non-relation type"))?;
                let mut ext = BTreeSet::new();
                for row in self.rows(comps)? {
                    let args = row.iter().map(|e| Value::Elem(e.clone())).collect();
                    if self.apply(closure.clone(), ty, args, asg)? {
                        ext.insert(row);
                    }
                }
                let empty = BTreeSet::new();
                self.carrier(ty)?
                    .iter()
                    .find(|r| *self.rel.get(*r).unwrap_or(&empty) == ext)
                    .cloned()
                    .ok_or_else(|| model_err(format!("the carrier of {ty} has no element with extension {ext:?}")))
            }
        }
    }

    /// All tuples over the carriers of `comps`.
    fn rows(&self, comps: &[Type]) -> Result<Vec<Vec<String>>> {
        let mut rows = vec![vec![]];
        for t in comps {
            let c = self.carrier(t)?;
            rows = rows
                .into_iter()
                .flat_map(|r| {
                    c.iter().map(move |e| {
                        let mut r = r.clone();
                        r.push(e.clone());
                        r
                    })
                })
                .collect();
        }
        Ok(rows)
    }

    /// All assignments of carrier elements to `vars`.
    pub fn assignments(&self, vars: &BTreeSet<FreeVar>) -> Result<Vec<Assignment>> {
        let mut out = vec![Assignment::new()];
        for v in vars {
            let c = self.carrier(&v.ty)?;
            out = out
                .into_iter()
                .flat_map(|a| {
                    c.iter().map(move |e| {
                        let mut a = a.clone();
                        a.insert(v.clone(), e.clone());
                        a
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

/// Truth value of a formula under an assignment of its free variables.
pub fn eval_formula(f: &Formula, model: &FiniteModel, asg: &Assignment) -> Result<bool> {
    let v = model.eval(f, asg, &Locals::new())?;
    model.truth_of(v)
}

/// An assignment under which the sequent is false, if any.
///
/// Variables are assigned one at a time. Each formula is evaluated as soon as
/// its free variables are fixed, and a branch is dropped once a false
/// antecedent or a true succedent formula settles it.
pub fn falsifying_assignment(s: &Sequent, model: &FiniteModel) -> Result<Option<Assignment>> {
    let mut formulas: Vec<(bool, &Formula, BTreeSet<FreeVar>)> = s
        .ante
        .iter()
        .map(|f| (true, f))
        .chain(s.succ.iter().map(|f| (false, f)))
        .map(|(ante, f)| (ante, f, f.free_vars()))
        .collect();
    formulas.sort_by_key(|(_, _, vs)| vs.len());
    let mut order: Vec<FreeVar> = Vec::new();
    for (_, _, vs) in &formulas {
        for v in vs {
            if !order.contains(v) {
                order.push(v.clone());
            }
        }
    }
    // formulas that become closed once the first `k` variables are fixed
    let mut ready: Vec<Vec<(bool, &Formula)>> = vec![Vec::new(); order.len() + 1];
    for (ante, f, vs) in &formulas {
        let k = vs.iter().map(|v| order.iter().position(|w| w == v).unwrap() + 1).max().unwrap_or(0);
        ready[k].push((*ante, f));
    }
    let carriers = order.iter().map(|v| model.carrier(&v.ty).map(|c| c.to_vec())).collect::<Result<Vec<_>>>()?;
    let mut asg = Assignment::new();
    search(model, &order, &carriers, &ready, 0, &mut asg)
}

fn search(
    model: &FiniteModel,
    order: &[FreeVar],
    carriers: &[Vec<String>],
    ready: &[Vec<(bool, &Formula)>],
    k: usize,
    asg: &mut Assignment,
) -> Result<Option<Assignment>> {
    for (ante, f) in &ready[k] {
        if eval_formula(f, model, asg)? != *ante {
            return Ok(None);
        }
    }
    if k == order.len() {
        return Ok(Some(asg.clone()));
    }
    for e in &carriers[k] {
        asg.insert(order[k].clone(), e.clone());
        if let Some(found) = search(model, order, carriers, ready, k + 1, asg)? {
            return Ok(Some(found));
        }
    }
    asg.remove(&order[k]);
    Ok(None)
}

/// A sequent is true in a model when it holds under every assignment.
pub fn sequent_true_in_model(s: &Sequent, model: &FiniteModel) -> Result<bool> {
    Ok(falsifying_assignment(s, model)?.is_none())
}

/// Every type that a subterm or binder of the sequent carries.
pub fn types_of_sequent(s: &Sequent) -> BTreeSet<Type> {
    let mut out = BTreeSet::new();
    for f in s.ante.iter().chain(&s.succ) {
        f.visit(&mut |t| {
            if let Ok(ty) = t.type_of() {
                out.insert(ty);
            }
            match t {
                Term::All(x, _) => {
                    out.insert(x.ty.clone());
                }
                Term::Lam(xs, _) => out.extend(xs.iter().map(|x| x.ty.clone())),
                _ => {}
            }
        });
    }
    out
}

fn add_with_components(ty: &Type, out: &mut BTreeSet<Type>) {
    if let Type::Product(comps) = ty {
        for c in comps {
            add_with_components(c, out);
        }
    }
    out.insert(ty.clone());
}

/// A random model over the given types and their components.
///
/// The carrier of `0` has one to three elements, the carrier of `1` two or
/// three with both truth values present, and each relation type carries the
/// full power set of its tuples.
pub fn random_model<R: Rng>(types: &BTreeSet<Type>, sig: &Signature, rng: &mut R) -> Result<FiniteModel> {
    let mut all = BTreeSet::new();
    for t in types {
        add_with_components(t, &mut all);
    }
    if !sig.objects.is_empty() || !sig.functions.is_empty() {
        all.insert(Type::Zero);
    }
    all.insert(Type::One);
    let mut order: Vec<Type> = all.into_iter().collect();
    order.sort_by_key(Type::weight);

    let mut m = FiniteModel::default();
    for (k, ty) in order.iter().enumerate() {
        let elems: Vec<String> = match ty {
            Type::Zero => (0..rng.gen_range(1..=3)).map(|i| format!("d{i}")).collect(),
            Type::One => {
                let n = rng.gen_range(2..=3);
                let mut names = Vec::new();
                for i in 0..n {
                    let value = match i {
                        0 => true,
                        1 => false,
                        _ => rng.gen_bool(0.5),
                    };
                    let name = format!("{}{i}", if value { "t" } else { "f" });
                    m.truth.insert(name.clone(), value);
                    names.push(name);
                }
                names
            }
            Type::Product(comps) => {
                let rows = m.rows(comps)?;
                if rows.len() > 10 {
                    return Err(model_err(format!("type {ty} would need 2^{} elements", rows.len())));
                }
                let mut names = Vec::new();
                for mask in 0..(1usize << rows.len()) {
                    let name = format!("r{k}_{mask}");
                    let ext = rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone()).collect();
                    m.rel.insert(name.clone(), ext);
                    names.push(name);
                }
                names
            }
        };
        m.carriers.insert(ty.clone(), elems);
    }
    if let Some(zero) = m.carriers.get(&Type::Zero).cloned() {
        for c in &sig.objects {
            m.objects.insert(c.clone(), zero[rng.gen_range(0..zero.len())].clone());
        }
        for (f, &n) in &sig.functions {
            let mut table = BTreeMap::new();
            for row in m.rows(&vec![Type::Zero; n])? {
                table.insert(row, zero[rng.gen_range(0..zero.len())].clone());
            }
            m.funs.insert(f.clone(), table);
        }
    }
    debug_assert!(m.carriers.values().all(|c| c.len() <= MAX_CARRIER));
    m.validate()?;
    Ok(m)
}
