//! Circuit text format, one gate per line in topological order:
//!
//! ```text
//! alphabet: a b
//! 0 input 1 a
//! 1 input 2 b
//! 2 product 0 1
//! 3 union dom 1..2
//! 4 not 2
//! output 4
//! ```
//!
//! Gate ids are arbitrary distinct integers; a gate may only refer to ids
//! defined above it. A childless union takes its domain from the `dom`
//! clause (positions and `i..j` ranges; nothing means the empty domain).

use std::collections::HashMap;

use super::{Circuit, Domain, Gate, GateId};
use crate::error::{Error, Result};
use crate::probword::Alphabet;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_domain(line: usize, toks: &[&str]) -> Result<Domain> {
    let mut d = Domain::empty();
    for t in toks {
        let bad = || syntax(line, format!("bad domain item `{t}`"));
        let part = match t.split_once("..") {
            Some((a, b)) => Domain::range(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None => Domain::singleton(t.parse().map_err(|_| bad())?),
        };
        d = d.union(&part);
    }
    Ok(d)
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut ids: HashMap<String, GateId> = HashMap::new();
    let mut output = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split(';').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("alphabet:") {
            let a = Alphabet::new(rest.split_whitespace()).map_err(|e| syntax(line, e.to_string()))?;
            circuit = Some(Circuit::new(a));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| syntax(line, "missing `alphabet:` header"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "output" {
            let id = toks.get(1).ok_or_else(|| syntax(line, "`output` needs a gate id"))?;
            output = Some(*ids.get(*id).ok_or_else(|| syntax(line, format!("unknown gate `{id}`")))?);
            continue;
        }
        if toks.len() < 2 {
            return Err(syntax(line, "expected `<id> <kind> ...`"));
        }
        if ids.contains_key(toks[0]) {
            return Err(syntax(line, format!("gate `{}` defined twice", toks[0])));
        }
        let (args, dom) = match toks.iter().position(|&t| t == "dom") {
            Some(k) => (&toks[2..k], Some(parse_domain(line, &toks[k + 1..])?)),
            None => (&toks[2..], None),
        };
        let child = |t: &&str| ids.get(*t).copied().ok_or_else(|| syntax(line, format!("unknown gate `{t}`")));
        let gate = match toks[1] {
            "input" => {
                if args.len() != 2 {
                    return Err(syntax(line, "`input` takes a position and a letter"));
                }
                let pos: usize = args[0].parse().map_err(|_| syntax(line, "bad position"))?;
                if pos == 0 {
                    return Err(syntax(line, "positions are 1-based"));
                }
                let letter = c.alphabet().letter(args[1]).map_err(|e| syntax(line, e.to_string()))?;
                Gate::Input(pos, letter)
            }
            "union" => Gate::Union(args.iter().map(child).collect::<Result<_>>()?),
            "product" => Gate::Product(args.iter().map(child).collect::<Result<_>>()?),
            "not" => {
                if args.len() != 1 {
                    return Err(syntax(line, "`not` takes one gate"));
                }
                Gate::Complement(child(&args[0])?)
            }
            k => return Err(syntax(line, format!("unknown gate kind `{k}`"))),
        };
        let id = c.push_unshared(gate, dom).map_err(|e| syntax(line, e.to_string()))?;
        ids.insert(toks[0].to_string(), id);
    }
    let mut c = circuit.ok_or_else(|| syntax(0, "missing `alphabet:` header"))?;
    if let Some(o) = output {
        c.set_output(o)?;
    }
    Ok(c)
}

pub fn write_circuit(c: &Circuit) -> String {
    let a = c.alphabet();
    let mut out = format!("alphabet: {a}\n");
    for (id, g) in c.gates().iter().enumerate() {
        let join = |cs: &[GateId]| cs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let body = match g {
            Gate::Input(pos, l) => format!("input {pos} {}", a.name(*l)),
            Gate::Union(cs) if cs.is_empty() => format!("union dom {}", c.domains[id]),
            Gate::Union(cs) => format!("union {}", join(cs)),
            Gate::Product(cs) => format!("product {}", join(cs)),
            Gate::Complement(x) => format!("not {x}"),
        };
        out += &format!("{id} {}\n", body.trim_end());
    }
    if let Some(o) = c.output {
        out += &format!("output {o}\n");
    }
    out
}
