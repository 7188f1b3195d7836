//! Canonical text syntax for operations.
//!
//! ```text
//! op    := "dvr:" dvr | "ded:" ded | "cusp:" cusp
//! dvr   := "e" | "f(" N ")" | "g(" N ")" | "jump(" N ")"
//! ded   := "box(" NAME "=" (N | "inf") ("," NAME "=" (N | "inf"))* ";zero=" ("closed" | "box") ")"
//! cusp  := "e"
//!        | "int(i=" N ",S=" SET ",T=" SET ")"
//!        | "intsingle(i=" N ")"
//!        | "fpoint(m=" N ",a=" N ",zero=" Z ")"
//!        | "fbox(n=" N ",S=" SET ",T=" SET ",m=" N ",zero=" Z ",exc=" ("true" | "false") ")"
//! Z     := "closed" | "target"
//! SET   := "{" [N ("," N)*] "}"
//! ```
//!
//! Prime names for Dedekind boxes are `P`, `Q`, then `P2`, `P3`, ….
//! Printing is canonical (sets sorted, no spaces), so `parse ∘ print` is
//! the identity and `print ∘ parse` is the identity on canonical text.

use crate::error::{Error, Result};
use crate::field::FieldSet;
use crate::ops::{BoxOp, ClosureOp, CuspOp, DedekindOp, DvrOp, IntOp, PointOp, Zero};
use crate::ring::{prime_name, Ring};

pub fn print(op: &ClosureOp) -> String {
    let zc = |z: Zero| if z == Zero::Closed { "closed" } else { "target" };
    match op {
        ClosureOp::Dvr(o) => match o {
            DvrOp::Identity => "dvr:e".into(),
            DvrOp::F(m) => format!("dvr:f({m})"),
            DvrOp::G(m) => format!("dvr:g({m})"),
            DvrOp::JumpG(n) => format!("dvr:jump({n})"),
        },
        ClosureOp::Dedekind(o) => {
            let parts: Vec<String> = o
                .bounds()
                .iter()
                .enumerate()
                .map(|(l, b)| match b {
                    Some(x) => format!("{}={x}", prime_name(l)),
                    None => format!("{}=inf", prime_name(l)),
                })
                .collect();
            let z = if o.zero() == Zero::Closed { "closed" } else { "box" };
            format!("ded:box({};zero={z})", parts.join(","))
        }
        ClosureOp::Cusp(o) => match o {
            CuspOp::Identity => "cusp:e".into(),
            CuspOp::IntUnbounded(x) => {
                let (i, s, t) = x.params();
                format!("cusp:int(i={i},S={s},T={t})")
            }
            CuspOp::IntSingle(i) => format!("cusp:intsingle(i={i})"),
            CuspOp::BoundedPoint(x) => {
                let (m, a, z) = x.params();
                format!("cusp:fpoint(m={m},a={a},zero={})", zc(z))
            }
            CuspOp::BoundedBox(x) => {
                let (n, s, t, m, z, e) = x.params();
                format!("cusp:fbox(n={n},S={s},T={t},m={m},zero={},exc={e})", zc(z))
            }
        },
    }
}

struct Cx<'a> {
    input: &'a str,
}

impl Cx<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { input: self.input.to_string(), msg: msg.into() })
    }

    fn num(&self, s: &str) -> Result<u32> {
        match s.parse::<u32>() {
            Ok(v) if !s.starts_with('+') && (s == "0" || !s.starts_with('0')) => Ok(v),
            _ => self.err(format!("expected a natural number, got `{s}`")),
        }
    }

    fn set(&self, s: &str) -> Result<FieldSet> {
        let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) else {
            return self.err(format!("expected a set like {{0,1}}, got `{s}`"));
        };
        if inner.is_empty() {
            return Ok(FieldSet::EMPTY);
        }
        let elems = inner.split(',').map(|e| self.num(e)).collect::<Result<Vec<u32>>>()?;
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return self.err("set elements must be strictly increasing");
        }
        if elems.iter().any(|&e| e >= 64) {
            return self.err("set element out of range");
        }
        Ok(FieldSet::from_elems(elems))
    }

    fn zero(&self, s: &str, target: &str) -> Result<Zero> {
        if s == "closed" {
            Ok(Zero::Closed)
        } else if s == target {
            Ok(Zero::ToTarget)
        } else {
            self.err(format!("zero must be `closed` or `{target}`, got `{s}`"))
        }
    }

    fn boolean(&self, s: &str) -> Result<bool> {
        match s {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => self.err(format!("expected true/false, got `{s}`")),
        }
    }

    /// `name(k1=v1,k2=v2,...)` with the exact key sequence `keys`.
    fn call<'b>(&self, body: &'b str, name: &str, keys: &[&str]) -> Result<Vec<&'b str>> {
        let Some(args) = body.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
        else {
            return self.err(format!("expected {name}(...)"));
        };
        let parts = split_top(args);
        if parts.len() != keys.len() {
            return self.err(format!("{name} takes {} arguments", keys.len()));
        }
        parts
            .into_iter()
            .zip(keys)
            .map(|(part, key)| match part.split_once('=') {
                Some((k, v)) if k == *key => Ok(v),
                _ => self.err(format!("expected `{key}=...`, got `{part}`")),
            })
            .collect()
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses the canonical syntax for an operation on `ring`.
pub fn parse(text: &str, ring: Ring) -> Result<ClosureOp> {
    let cx = Cx { input: text };
    let Some((tag, body)) = text.split_once(':') else {
        return cx.err("expected `<ring>:<op>`");
    };
    if tag != ring.name() {
        return Err(Error::MixedInstances(ring.to_string(), text.to_string()));
    }
    let op = match ring {
        Ring::Dvr => ClosureOp::Dvr({
            if body == "e" {
                DvrOp::Identity
            } else {
                let (name, arg) = body
                    .strip_suffix(')')
                    .and_then(|b| b.split_once('('))
                    .map_or_else(|| cx.err("expected e, f(m), g(m) or jump(n)"), Ok)?;
                let v = cx.num(arg)?;
                match name {
                    "f" => DvrOp::F(v),
                    "g" => DvrOp::G(v),
                    "jump" => DvrOp::JumpG(v),
                    _ => return cx.err(format!("unknown DVR operation `{name}`")),
                }
            }
        }),
        Ring::Dedekind { primes } => {
            let Some(args) = body.strip_prefix("box(").and_then(|r| r.strip_suffix(')')) else {
                return cx.err("expected box(...)");
            };
            let Some((bounds, zero)) = args.split_once(';') else {
                return cx.err("expected `;zero=...`");
            };
            let Some(z) = zero.strip_prefix("zero=") else {
                return cx.err("expected `zero=`");
            };
            let z = cx.zero(z, "box")?;
            let parts = split_top(bounds);
            if parts.len() != primes {
                return cx.err(format!("expected {primes} bounds"));
            }
            let mut bs = Vec::new();
            for (l, part) in parts.into_iter().enumerate() {
                let name = prime_name(l);
                match part.split_once('=') {
                    Some((k, "inf")) if k == name => bs.push(None),
                    Some((k, v)) if k == name => bs.push(Some(cx.num(v)?)),
                    _ => return cx.err(format!("expected `{name}=...`, got `{part}`")),
                }
            }
            ClosureOp::Dedekind(DedekindOp::new(bs, z)?)
        }
        Ring::Cusp { p } => {
            let op = if body == "e" {
                CuspOp::Identity
            } else if body.starts_with("intsingle(") {
                let v = cx.call(body, "intsingle", &["i"])?;
                CuspOp::IntSingle(cx.num(v[0])?)
            } else if body.starts_with("int(") {
                let v = cx.call(body, "int", &["i", "S", "T"])?;
                CuspOp::IntUnbounded(IntOp::new(p, cx.num(v[0])?, cx.set(v[1])?, cx.set(v[2])?)?)
            } else if body.starts_with("fpoint(") {
                let v = cx.call(body, "fpoint", &["m", "a", "zero"])?;
                CuspOp::BoundedPoint(PointOp::new(p, cx.num(v[0])?, cx.num(v[1])?, cx.zero(v[2], "target")?)?)
            } else if body.starts_with("fbox(") {
                let v = cx.call(body, "fbox", &["n", "S", "T", "m", "zero", "exc"])?;
                CuspOp::BoundedBox(BoxOp::new(
                    p,
                    cx.num(v[0])?,
                    cx.set(v[1])?,
                    cx.set(v[2])?,
                    cx.num(v[3])?,
                    cx.zero(v[4], "target")?,
                    cx.boolean(v[5])?,
                )?)
            } else {
                return cx.err("unknown cusp operation");
            };
            ClosureOp::Cusp(op)
        }
    };
    op.validate(ring)?;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_literals_round_trip() {
        let cases = [
            ("dvr:f(3)", Ring::Dvr),
            ("dvr:g(3)", Ring::Dvr),
            ("dvr:jump(2)", Ring::Dvr),
            ("dvr:e", Ring::Dvr),
            ("ded:box(P=2,Q=inf;zero=closed)", Ring::dedekind(2)),
            ("ded:box(P=2,Q=1;zero=box)", Ring::dedekind(2)),
            ("cusp:int(i=2,S={0},T={})", Ring::cusp(2)),
            ("cusp:intsingle(i=3)", Ring::cusp(2)),
            ("cusp:fpoint(m=4,a=0,zero=closed)", Ring::cusp(2)),
            ("cusp:fbox(n=2,S={0},T={1},m=5,zero=target,exc=false)", Ring::cusp(2)),
            ("cusp:fbox(n=2,S={0},T={0,1},m=6,zero=target,exc=true)", Ring::cusp(2)),
            ("cusp:e", Ring::cusp(3)),
        ];
        for (text, ring) in cases {
            let op = parse(text, ring).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(print(&op), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let r = Ring::cusp(2);
        for bad in [
            "cusp:int(i=2,S={},T={})",
            "cusp:int(i=2,S={2},T={})",
            "cusp:int(i=2,T={},S={0})",
            "cusp:fbox(n=2,S={0},T={},m=4,zero=closed,exc=false)",
            "cusp:fpoint(m=01,a=0,zero=closed)",
            "cusp:fpoint(m=4,a=0,zero=box)",
            "dvr:f(3)",
            "cusp:int(i=2,S={1,0},T={})",
            "cusp",
        ] {
            assert!(parse(bad, r).is_err(), "{bad}");
        }
        assert!(parse("ded:box(P=2,Q=inf;zero=box)", Ring::dedekind(2)).is_err());
        assert!(parse("ded:box(P=2;zero=closed)", Ring::dedekind(2)).is_err());
        assert!(parse("dvr:jump(1)", Ring::Dvr).is_err());
    }
}
