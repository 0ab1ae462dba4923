//! The inspect expression language: named modules from the scenario's
//! registries combined with the functor calculus.
//!
//! Grammar:
//!   expr := atom | func '(' expr {',' expr} ')'
//!   atoms: a registered class name ("1", "1/2", "P(1)", ...), "triv", "reg"
//!   funcs: sum, tensor, ind, res, omega, tau, conj, block, top, rad
//!
//! Expressions are evaluated against a side: the ambient group algebra at the
//! top level, switching to the normal subgroup inside ind(..) and back inside
//! res(..). conj(e) twists by the first nontrivial coset representative;
//! conj(e, i) selects the i-th representative. block(i, e) projects onto the
//! i-th block of the current side.

use modrep::algebra::GroupAlgebra;
use modrep::block::project_to_block;
use modrep::error::{Error, Result};
use modrep::module::{conjugate, induce, restrict, GModule};
use modrep::rng::Rng;
use modrep::verify::ScenarioCtx;

use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Ambient,
    Normal,
}

pub struct Value {
    pub module: GModule,
    pub side: Side,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug)]
enum Ast {
    Atom(String, usize),
    Call(String, usize, Vec<Ast>),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn parse_expr(&mut self) -> Result<Ast> {
        self.skip_ws();
        let start = self.pos;
        let name = self.parse_token()?;
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut args = Vec::new();
            loop {
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    break;
                }
                args.push(self.parse_expr()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::Parse {
                            pos: self.pos,
                            msg: "expected ',' or ')'".into(),
                        })
                    }
                }
            }
            Ok(Ast::Call(name, start, args))
        } else {
            Ok(Ast::Atom(name, start))
        }
    }

    fn parse_token(&mut self) -> Result<String> {
        let bytes = self.text.as_bytes();
        let start = self.pos;
        while self.pos < bytes.len() {
            let c = bytes[self.pos];
            if c == b'(' || c == b')' || c == b',' || c.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse { pos: start, msg: "expected a name".into() });
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(Error::Parse { pos: self.pos, msg: "trailing input".into() });
        }
        Ok(())
    }
}

pub fn evaluate(ctx: &ScenarioCtx, text: &str, rng: &mut Rng) -> Result<Value> {
    let mut parser = Parser::new(text);
    let ast = parser.parse_expr()?;
    parser.finish()?;
    eval(ctx, &ast, Side::Ambient, rng)
}

fn ga_of(ctx: &ScenarioCtx, side: Side) -> &Arc<GroupAlgebra> {
    match side {
        Side::Ambient => &ctx.ga_ambient,
        Side::Normal => &ctx.ga_normal,
    }
}

fn eval(ctx: &ScenarioCtx, ast: &Ast, side: Side, rng: &mut Rng) -> Result<Value> {
    match ast {
        Ast::Atom(name, pos) => {
            let ga = ga_of(ctx, side);
            let module = resolve_name(ga, name).ok_or_else(|| Error::Parse {
                pos: *pos,
                msg: format!("unknown module name '{name}' on this side"),
            })?;
            Ok(Value { module, side })
        }
        Ast::Call(func, pos, args) => {
            let need = |n: usize| -> Result<()> {
                if args.len() != n {
                    Err(Error::Parse {
                        pos: *pos,
                        msg: format!("{func} expects {n} argument(s), got {}", args.len()),
                    })
                } else {
                    Ok(())
                }
            };
            match func.as_str() {
                "sum" => {
                    if args.is_empty() {
                        return Err(Error::Parse { pos: *pos, msg: "sum needs arguments".into() });
                    }
                    let mut acc = eval(ctx, &args[0], side, rng)?;
                    for a in &args[1..] {
                        let v = eval(ctx, a, side, rng)?;
                        if v.side != acc.side {
                            return Err(Error::Parse { pos: *pos, msg: "sum across algebras".into() });
                        }
                        acc.module = acc.module.direct_sum(&v.module)?;
                    }
                    Ok(acc)
                }
                "tensor" => {
                    need(2)?;
                    let a = eval(ctx, &args[0], side, rng)?;
                    let b = eval(ctx, &args[1], side, rng)?;
                    if a.side != b.side {
                        return Err(Error::Parse { pos: *pos, msg: "tensor across algebras".into() });
                    }
                    Ok(Value { module: a.module.tensor(&b.module)?, side: a.side })
                }
                "ind" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], Side::Normal, rng)?;
                    Ok(Value { module: induce(&v.module, &ctx.resolved.normal)?, side: Side::Ambient })
                }
                "res" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], Side::Ambient, rng)?;
                    Ok(Value { module: restrict(&v.module, &ctx.resolved.normal)?, side: Side::Normal })
                }
                "omega" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], side, rng)?;
                    let ga = ga_of(ctx, v.side);
                    Ok(Value { module: ga.syzygy(&v.module, rng)?, side: v.side })
                }
                "tau" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], side, rng)?;
                    let ga = ga_of(ctx, v.side);
                    Ok(Value { module: ga.tau(&v.module, rng)?, side: v.side })
                }
                "top" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], side, rng)?;
                    let ga = ga_of(ctx, v.side);
                    Ok(Value { module: ga.top(&v.module)?, side: v.side })
                }
                "rad" => {
                    need(1)?;
                    let v = eval(ctx, &args[0], side, rng)?;
                    let ga = ga_of(ctx, v.side);
                    let basis = ga.radical_of(&v.module)?;
                    Ok(Value { module: v.module.sub_module(&basis)?.0, side: v.side })
                }
                "conj" => {
                    if args.is_empty() || args.len() > 2 {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: "conj takes a module and an optional coset index".into(),
                        });
                    }
                    let v = eval(ctx, &args[0], Side::Normal, rng)?;
                    let emb = &ctx.resolved.normal;
                    let reps = emb.parent.coset_reps(emb);
                    let which = if args.len() == 2 {
                        match &args[1] {
                            Ast::Atom(s, p) => s.parse::<usize>().map_err(|_| Error::Parse {
                                pos: *p,
                                msg: "coset index must be an integer".into(),
                            })?,
                            Ast::Call(_, p, _) => {
                                return Err(Error::Parse { pos: *p, msg: "coset index must be an integer".into() })
                            }
                        }
                    } else {
                        1
                    };
                    let rep = *reps.get(which).ok_or_else(|| Error::Parse {
                        pos: *pos,
                        msg: format!("coset index {which} out of range (have {})", reps.len()),
                    })?;
                    Ok(Value { module: conjugate(&v.module, emb, rep)?, side: Side::Normal })
                }
                "block" => {
                    need(2)?;
                    let idx = match &args[0] {
                        Ast::Atom(s, p) => s.parse::<usize>().map_err(|_| Error::Parse {
                            pos: *p,
                            msg: "block index must be an integer".into(),
                        })?,
                        Ast::Call(_, p, _) => {
                            return Err(Error::Parse { pos: *p, msg: "block index must be an integer".into() })
                        }
                    };
                    let v = eval(ctx, &args[1], side, rng)?;
                    let blocks = match v.side {
                        Side::Ambient => &ctx.ambient_blocks,
                        Side::Normal => &ctx.normal_blocks,
                    };
                    let b = blocks.get(idx).ok_or_else(|| Error::Parse {
                        pos: *pos,
                        msg: format!("block index {idx} out of range (have {})", blocks.len()),
                    })?;
                    Ok(Value { module: project_to_block(b, &v.module)?, side: v.side })
                }
                other => Err(Error::Parse { pos: *pos, msg: format!("unknown operator '{other}'") }),
            }
        }
    }
}

fn resolve_name(ga: &Arc<GroupAlgebra>, name: &str) -> Option<GModule> {
    match name {
        "triv" => return Some(ga.trivial()),
        "reg" => return Some(ga.regular()),
        "zero" => return Some(ga.zero_module()),
        _ => {}
    }
    for idx in 0..ga.class_count() {
        let info = ga.class_info(modrep::algebra::ClassId(idx));
        if info.name == name || info.display == name {
            return Some(ga.class_rep(info.id));
        }
    }
    None
}
