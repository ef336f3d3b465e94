//! The `ops --pipe` mini-language: `|`-separated verbs, each followed by
//! whitespace-separated integer arguments, applied left to right.
//!
//! Verbs: `dual`, `delete e`, `contract e`, `star e`, `reduce e`,
//! `skeleton i j`, `cone v`, `shift v...` (R∘Φ for R = {v...}),
//! `without e` (the e-free part of Φ||e), `with e` (the part containing e),
//! `drop-loop e`.

use lapint::{Face, Interval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Dual,
    Delete(usize),
    Contract(usize),
    Star(usize),
    Reduce(usize),
    Skeleton(i32, i32),
    Cone(usize),
    Shift(Vec<usize>),
    Without(usize),
    With(usize),
    DropLoop(usize),
}

fn args<T: std::str::FromStr>(verb: &str, words: &[&str], count: Option<usize>) -> Result<Vec<T>, String> {
    if let Some(k) = count {
        if words.len() != k {
            return Err(format!("`{verb}` takes {k} argument(s), got {}", words.len()));
        }
    }
    words.iter().map(|w| w.parse().map_err(|_| format!("`{verb}`: bad argument {w:?}"))).collect()
}

pub fn parse(pipe: &str) -> Result<Vec<Op>, String> {
    let mut ops = Vec::new();
    for stage in pipe.split('|') {
        let words: Vec<&str> = stage.split_whitespace().collect();
        let Some((&verb, rest)) = words.split_first() else {
            return Err("empty stage in pipe".into());
        };
        let one = |rest: &[&str]| args::<usize>(verb, rest, Some(1)).map(|v| v[0]);
        let op = match verb {
            "dual" => {
                args::<usize>(verb, rest, Some(0))?;
                Op::Dual
            }
            "delete" => Op::Delete(one(rest)?),
            "contract" => Op::Contract(one(rest)?),
            "star" => Op::Star(one(rest)?),
            "reduce" => Op::Reduce(one(rest)?),
            "cone" => Op::Cone(one(rest)?),
            "without" => Op::Without(one(rest)?),
            "with" => Op::With(one(rest)?),
            "drop-loop" => Op::DropLoop(one(rest)?),
            "skeleton" => {
                let v = args::<i32>(verb, rest, Some(2))?;
                Op::Skeleton(v[0], v[1])
            }
            "shift" => Op::Shift(args(verb, rest, None)?),
            other => return Err(format!("unknown verb `{other}`")),
        };
        ops.push(op);
    }
    Ok(ops)
}

fn vertex(phi: &Interval, e: usize) -> Result<usize, String> {
    phi.check_vertex(e).map_err(|err| err.to_string())?;
    Ok(e)
}

pub fn apply(phi: &Interval, op: &Op) -> Result<Interval, String> {
    let err = |e: lapint::Error| e.to_string();
    Ok(match op {
        Op::Dual => phi.dual(),
        Op::Delete(e) => phi.delete(vertex(phi, *e)?),
        Op::Contract(e) => phi.contract(vertex(phi, *e)?),
        Op::Star(e) => phi.star(vertex(phi, *e)?),
        Op::Reduce(e) => phi.reduce(vertex(phi, *e)?),
        Op::Without(e) => phi.reduction_components(vertex(phi, *e)?).0,
        Op::With(e) => phi.reduction_components(vertex(phi, *e)?).1,
        Op::Skeleton(i, j) => phi.skeleton(*i, *j).map_err(err)?,
        Op::Cone(v) => phi.cone(*v).map_err(err)?,
        Op::Shift(vs) => {
            let r = Face::from_vertices(vs.iter().copied()).ok_or("shift: vertex out of range")?;
            phi.shift_by_set(r).map_err(err)?
        }
        Op::DropLoop(e) => phi.remove_loop(*e).map_err(err)?,
    })
}

pub fn run(phi: &Interval, pipe: &str) -> Result<Interval, String> {
    parse(pipe)?.iter().try_fold(phi.clone(), |acc, op| apply(&acc, op))
}
